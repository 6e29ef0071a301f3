//! Truncated power series over a field, used for local expansions at curve
//! points. All series in one computation share a truncation length; products
//! drop terms beyond it.

use crate::field::{Field, FieldElement};
use crate::poly::BiPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Series {
    field: Field,
    c: Vec<FieldElement>,
}

impl Series {
    pub fn zeros(field: &Field, len: usize) -> Series {
        Series { field: field.clone(), c: vec![field.zero(); len] }
    }

    pub fn constant(value: &FieldElement, len: usize) -> Series {
        let mut s = Series::zeros(value.field(), len);
        s.c[0] = value.clone();
        s
    }

    /// c0 + t.
    pub fn linear(c0: &FieldElement, len: usize) -> Series {
        let mut s = Series::constant(c0, len);
        if len > 1 {
            s.c[1] = c0.field().one();
        }
        s
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.c.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn set_coeff(&mut self, k: usize, value: FieldElement) {
        self.c[k] = value;
    }

    pub fn add(&self, other: &Series) -> Series {
        let len = self.c.len().min(other.c.len());
        let c = (0..len).map(|k| self.c[k].add(&other.c[k])).collect();
        Series { field: self.field.clone(), c }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let len = self.c.len().min(other.c.len());
        let mut c = vec![self.field.zero(); len];
        for (i, a) in self.c.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate().take(len - i) {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Series { field: self.field.clone(), c }
    }

    /// First index with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }
}

/// Evaluate a bivariate polynomial on a pair of series (Horner in both
/// variables).
pub(crate) fn eval_bipoly(f: &BiPoly, sx: &Series, sy: &Series) -> Series {
    let field = f.field();
    let len = sx.len().min(sy.len());
    let mut acc = Series::zeros(field, len);
    for row in f.y_coeffs().iter().rev() {
        acc = acc.mul(sy);
        // Horner in x for this y-slice
        let mut slice = Series::zeros(field, len);
        for c in row.coeffs().iter().rev() {
            slice = slice.mul(sx);
            slice.set_coeff(0, slice.coeff(0).add(c));
        }
        acc = acc.add(&slice);
    }
    acc
}
