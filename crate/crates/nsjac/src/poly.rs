//! Dense polynomial arithmetic over a [`Field`]: univariate division, gcd,
//! interpolation, Sylvester resultants in y, and full factorization /
//! root extraction over finite fields.
//!
//! Everything here is exact. Polynomials are dense little-endian coefficient
//! vectors; all degrees in this crate are O(ng + s), so no sparse machinery.

mod factor;
mod resultant;

pub use factor::{factor, irreducible_of_degree, is_irreducible, roots, roots_seeded, Roots};
pub use resultant::resultant_y;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{embed_prime, project_prime, Field, FieldElement};

/// Univariate polynomial, dense little-endian coefficients, trailing zeros
/// trimmed (the zero polynomial has an empty coefficient list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> UniPoly {
        for c in &coeffs {
            assert!(c.field() == field, "coefficient from a different field");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly { field: field.clone(), coeffs: vec![] }
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> UniPoly {
        let field = c.field().clone();
        UniPoly::new(&field, vec![c])
    }

    /// The monomial x.
    pub fn x(field: &Field) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    /// x - r.
    pub fn x_minus(r: &FieldElement) -> UniPoly {
        UniPoly::new(r.field(), vec![r.neg(), r.field().one()])
    }

    /// From raw residues (little-endian), reduced into the field.
    pub fn from_residues(field: &Field, residues: &[u64]) -> UniPoly {
        UniPoly::new(field, residues.iter().map(|&v| field.from_u64(v)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        UniPoly::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        UniPoly::new(&self.field, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(&self.field, out)
    }

    pub fn scale(&self, c: &FieldElement) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut result = UniPoly::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.field.from_u64(i as u64)))
            .collect();
        UniPoly::new(&self.field, coeffs)
    }

    /// Exact quotient and remainder: self = q*b + r with deg r < deg b.
    pub fn divmod(&self, b: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() < b.coeffs.len() {
            return Ok((UniPoly::zero(&self.field), self.clone()));
        }
        let lead_inv = b.lc().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len() - b.coeffs.len() + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + b.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = top.mul(&lead_inv);
            for (j, bc) in b.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&q.mul(bc));
            }
            quot[i] = q;
        }
        Ok((UniPoly::new(&self.field, quot), UniPoly::new(&self.field, rem)))
    }

    pub fn rem(&self, b: &UniPoly) -> Result<UniPoly> {
        Ok(self.divmod(b)?.1)
    }

    /// Quotient of an exact division; error if a remainder is left.
    pub fn div_exact(&self, b: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divmod(b)?;
        if !r.is_zero() {
            return Err(Error::invalid("inexact polynomial division"));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        match other.divmod(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        // lc nonzero by the trim invariant
        self.scale(&self.lc().inv().expect("nonzero leading coefficient"))
    }

    /// Monic gcd; gcd(a, 0) = monic(a).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*other = g, g monic.
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let mut old_r = self.clone();
        let mut r = other.clone();
        let mut old_u = UniPoly::one(&self.field);
        let mut u = UniPoly::zero(&self.field);
        let mut old_v = UniPoly::zero(&self.field);
        let mut v = UniPoly::one(&self.field);
        while !r.is_zero() {
            let (q, rem) = old_r.divmod(&r).expect("nonzero divisor");
            old_r = std::mem::replace(&mut r, rem);
            let nu = old_u.sub(&q.mul(&u));
            old_u = std::mem::replace(&mut u, nu);
            let nv = old_v.sub(&q.mul(&v));
            old_v = std::mem::replace(&mut v, nv);
        }
        if old_r.is_zero() {
            return (old_r, old_u, old_v);
        }
        let scale = old_r.lc().inv().expect("nonzero leading coefficient");
        (old_r.scale(&scale), old_u.scale(&scale), old_v.scale(&scale))
    }

    /// self^e mod m, binary powering.
    pub fn pow_mod(&self, mut e: u128, m: &UniPoly) -> Result<UniPoly> {
        let mut result = UniPoly::one(&self.field).rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(result)
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn interpolate(field: &Field, points: &[(FieldElement, FieldElement)]) -> Result<UniPoly> {
        let mut master = UniPoly::one(field);
        for (xi, _) in points {
            master = master.mul(&UniPoly::x_minus(xi));
        }
        let mut acc = UniPoly::zero(field);
        for (xi, yi) in points {
            let li = master.div_exact(&UniPoly::x_minus(xi))?;
            let denom = li.eval(xi);
            acc = acc.add(&li.scale(&yi.div(&denom)?));
        }
        Ok(acc)
    }

    /// Coefficient-wise canonical inclusion into an extension of the same p.
    pub fn embed(&self, target: &Field) -> Result<UniPoly> {
        let coeffs = self.coeffs.iter().map(|c| embed_prime(c, target)).collect::<Result<_>>()?;
        Ok(UniPoly::new(target, coeffs))
    }

    /// Coefficient-wise projection onto the prime subfield.
    pub fn project(&self, target: &Field) -> Result<UniPoly> {
        let coeffs = self.coeffs.iter().map(|c| project_prime(c, target)).collect::<Result<_>>()?;
        Ok(UniPoly::new(target, coeffs))
    }

    /// Total order for deterministic output: by degree, then coefficients.
    pub fn canonical_cmp(&self, other: &UniPoly) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().zip(&other.coeffs).rev() {
                    let ord = a.canonical_cmp(b);
                    if ord != std::cmp::Ordering::Equal {
                        return ord;
                    }
                }
                std::cmp::Ordering::Equal
            })
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Bivariate polynomial in x and y, stored as y-power slices: entry j is the
/// x-polynomial multiplying y^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    ycoeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn zero(field: &Field) -> BiPoly {
        BiPoly { field: field.clone(), ycoeffs: vec![] }
    }

    pub fn new(field: &Field, mut ycoeffs: Vec<UniPoly>) -> BiPoly {
        while ycoeffs.last().is_some_and(|c| c.is_zero()) {
            ycoeffs.pop();
        }
        for c in &ycoeffs {
            assert!(c.field() == field, "coefficient from a different field");
        }
        BiPoly { field: field.clone(), ycoeffs }
    }

    /// From (x-power, y-power, coefficient) terms; repeated terms accumulate.
    pub fn from_terms(field: &Field, terms: &[(usize, usize, FieldElement)]) -> BiPoly {
        let max_j = terms.iter().map(|t| t.1).max().map_or(0, |j| j + 1);
        let mut rows: Vec<Vec<FieldElement>> = vec![vec![]; max_j];
        for (i, j, c) in terms {
            let row = &mut rows[*j];
            while row.len() <= *i {
                row.push(field.zero());
            }
            row[*i] = row[*i].add(c);
        }
        BiPoly::new(field, rows.into_iter().map(|r| UniPoly::new(field, r)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.ycoeffs.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.ycoeffs.iter().filter_map(|c| c.deg()).max()
    }

    pub fn y_coeff(&self, j: usize) -> UniPoly {
        self.ycoeffs.get(j).cloned().unwrap_or_else(|| UniPoly::zero(&self.field))
    }

    pub fn y_coeffs(&self) -> &[UniPoly] {
        &self.ycoeffs
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.ycoeffs.len().max(other.ycoeffs.len());
        BiPoly::new(&self.field, (0..n).map(|j| self.y_coeff(j).add(&other.y_coeff(j))).collect())
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        let n = self.ycoeffs.len().max(other.ycoeffs.len());
        BiPoly::new(&self.field, (0..n).map(|j| self.y_coeff(j).sub(&other.y_coeff(j))).collect())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { field: self.field.clone(), ycoeffs: self.ycoeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let mut out = vec![UniPoly::zero(&self.field); self.ycoeffs.len() + other.ycoeffs.len() - 1];
        for (i, a) in self.ycoeffs.iter().enumerate() {
            for (j, b) in other.ycoeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(&self.field, out)
    }

    /// Specialize x = x0; the result is a polynomial in y.
    pub fn at_x(&self, x0: &FieldElement) -> UniPoly {
        UniPoly::new(&self.field, self.ycoeffs.iter().map(|c| c.eval(x0)).collect())
    }

    pub fn eval(&self, x0: &FieldElement, y0: &FieldElement) -> FieldElement {
        self.at_x(x0).eval(y0)
    }

    /// Formal partial derivative in x.
    pub fn partial_x(&self) -> BiPoly {
        BiPoly::new(&self.field, self.ycoeffs.iter().map(|c| c.derivative()).collect())
    }

    /// Formal partial derivative in y.
    pub fn partial_y(&self) -> BiPoly {
        if self.ycoeffs.len() <= 1 {
            return BiPoly::zero(&self.field);
        }
        let coeffs = self
            .ycoeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&self.field.from_u64(j as u64)))
            .collect();
        BiPoly::new(&self.field, coeffs)
    }

    pub fn embed(&self, target: &Field) -> Result<BiPoly> {
        let ycoeffs = self.ycoeffs.iter().map(|c| c.embed(target)).collect::<Result<_>>()?;
        Ok(BiPoly::new(target, ycoeffs))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.ycoeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*y")?,
                _ => write!(f, "({c})*y^{j}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    fn poly(field: &Field, residues: &[u64]) -> UniPoly {
        UniPoly::from_residues(field, residues)
    }

    #[test]
    fn divmod_examples() {
        let f = f7();
        // (x^2 - 1) / (x - 1) = x + 1 rem 0
        let (q, r) = poly(&f, &[6, 0, 1]).divmod(&poly(&f, &[6, 1])).unwrap();
        assert_eq!(q, poly(&f, &[1, 1]));
        assert!(r.is_zero());
        // x / x^2 = 0 rem x
        let (q, r) = poly(&f, &[0, 1]).divmod(&poly(&f, &[0, 0, 1])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, poly(&f, &[0, 1]));
        // (x^3 - x^2 - 2x) / (x(x-2)) = x + 1 rem 0; oracle: (x^2-2x)(x+1) = x^3-x^2-2x
        let a = poly(&f, &[0, 5, 6, 1]);
        let b = poly(&f, &[0, 5, 1]);
        assert_eq!(b.mul(&poly(&f, &[1, 1])), a);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q, poly(&f, &[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.divmod(&UniPoly::zero(&f)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn divmod_round_trip_random() {
        let fields = [f7(), Field::prime(1009).unwrap(), Field::extension(7, &[1, 0, 1]).unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let field = &fields[rng.gen_range(0..fields.len())];
            let da = rng.gen_range(0..8);
            let db = rng.gen_range(0..6);
            let a = UniPoly::new(field, (0..=da).map(|_| field.random_element(&mut rng)).collect());
            let b = UniPoly::new(field, (0..=db).map(|_| field.random_element(&mut rng)).collect());
            if b.is_zero() {
                continue;
            }
            let (q, r) = a.divmod(&b).unwrap();
            assert_eq!(q.mul(&b).add(&r), a);
            assert!(r.deg() < b.deg() || r.is_zero());
        }
    }

    #[test]
    fn gcd_examples() {
        let f = f7();
        assert_eq!(poly(&f, &[6, 0, 1]).gcd(&poly(&f, &[6, 1])), poly(&f, &[6, 1]));
        // gcd(a, 0) = monic(a)
        let a = poly(&f, &[2, 4]);
        assert_eq!(a.gcd(&UniPoly::zero(&f)), a.monic());
        // gcd(y^2 - 2, y - 3) = y - 3 since 3^2 = 2 mod 7
        assert_eq!(poly(&f, &[5, 0, 1]).gcd(&poly(&f, &[4, 1])), poly(&f, &[4, 1]));
    }

    #[test]
    fn xgcd_identity() {
        let f = Field::prime(1009).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let a = UniPoly::new(&f, (0..rng.gen_range(1..7)).map(|_| f.random_element(&mut rng)).collect());
            let b = UniPoly::new(&f, (0..rng.gen_range(1..7)).map(|_| f.random_element(&mut rng)).collect());
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let (g, u, v) = a.xgcd(&b);
            assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
            assert_eq!(g, a.gcd(&b));
        }
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = Field::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let d = rng.gen_range(0..6);
            let p = UniPoly::new(&f, (0..=d).map(|_| f.random_element(&mut rng)).collect());
            let pts: Vec<_> =
                (0..=d as u64).map(|i| (f.from_u64(i), p.eval(&f.from_u64(i)))).collect();
            assert_eq!(UniPoly::interpolate(&f, &pts).unwrap(), p);
        }
    }

    #[test]
    fn bipoly_basics() {
        let f = f7();
        // y^2 - x^3 - 1
        let curve = BiPoly::from_terms(
            &f,
            &[(0, 2, f.one()), (3, 0, f.from_i64(-1)), (0, 0, f.from_i64(-1))],
        );
        assert_eq!(curve.deg_y(), Some(2));
        assert_eq!(curve.deg_x(), Some(3));
        assert!(curve.eval(&f.from_u64(2), &f.from_u64(3)).is_zero());
        assert!(!curve.eval(&f.from_u64(0), &f.from_u64(0)).is_zero());
        let fy = curve.partial_y();
        assert_eq!(fy.eval(&f.from_u64(2), &f.from_u64(3)), f.from_u64(6));
        let fx = curve.partial_x();
        // -3x^2 at x=2: -12 = 2 mod 7
        assert_eq!(fx.eval(&f.from_u64(2), &f.from_u64(3)), f.from_u64(2));
    }
}
