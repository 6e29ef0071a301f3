//! Mumford-style divisors: a multiset of affine points standing for the
//! degree-zero class sum(P_i) - deg * w, where w is the place at infinity.
//! The point at infinity itself is never stored; any w in the support would
//! cancel against the -deg * w part anyway.
//!
//! Points are kept sorted in canonical order, so multiset equality is plain
//! slice equality. The empty divisor represents the identity class. A
//! non-special divisor of degree exactly g is the unique effective
//! representative of its class, which is what makes comparing `reduce`
//! outputs a class-equality test; comparing unreduced divisors only compares
//! supports.

use std::fmt;

use crate::curve::{AffinePoint, NsCurve};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    field: Field,
    points: Vec<AffinePoint>,
}

impl Divisor {
    /// The identity class.
    pub fn empty(field: &Field) -> Divisor {
        Divisor { field: field.clone(), points: vec![] }
    }

    /// Canonicalize a multiset of points into a divisor, validating that
    /// each lies on the curve.
    pub fn from_points(
        curve: &NsCurve,
        points: impl IntoIterator<Item = AffinePoint>,
    ) -> Result<Divisor> {
        let mut points: Vec<AffinePoint> = points.into_iter().collect();
        for p in &points {
            if p.field() != curve.field() {
                return Err(Error::FieldMismatch);
            }
            if !curve.is_on_curve(p.x(), p.y()) {
                return Err(Error::PointNotOnCurve(p.x().to_string(), p.y().to_string()));
            }
        }
        points.sort_by(|a, b| a.canonical_cmp(b));
        Ok(Divisor { field: curve.field().clone(), points })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    /// Distinct points with multiplicities, in canonical order.
    pub fn grouped(&self) -> Vec<(AffinePoint, usize)> {
        let mut out: Vec<(AffinePoint, usize)> = vec![];
        for p in &self.points {
            match out.last_mut() {
                Some((q, m)) if q == p => *m += 1,
                _ => out.push((p.clone(), 1)),
            }
        }
        out
    }

    pub fn multiplicity_of(&self, point: &AffinePoint) -> usize {
        self.points.iter().filter(|p| *p == point).count()
    }

    /// Degree <= genus; sufficient for feeding the group operations.
    pub fn is_reduced(&self, curve: &NsCurve) -> bool {
        self.degree() <= curve.genus()
    }

    /// Multiset union (the divisor sum).
    pub fn union(&self, other: &Divisor) -> Result<Divisor> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        points.sort_by(|a, b| a.canonical_cmp(b));
        Ok(Divisor { field: self.field.clone(), points })
    }

    /// The Mumford u-polynomial: product of (x - x(P)) with multiplicity.
    pub fn mumford_u(&self) -> UniPoly {
        let mut u = UniPoly::one(&self.field);
        for p in &self.points {
            u = u.mul(&UniPoly::x_minus(p.x()));
        }
        u
    }

    /// One `x;y` line per point, sorted; empty string for the identity.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return write!(f, "(identity)");
        }
        let parts: Vec<String> = self.points.iter().map(|p| format!("({p})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Random effective divisor built from independently sampled points; the
/// workhorse behind the randomized suites.
pub fn random_points_divisor<R: rand::Rng + ?Sized>(
    curve: &NsCurve,
    rng: &mut R,
    degree: usize,
) -> Result<Divisor> {
    let points: Result<Vec<AffinePoint>> =
        (0..degree).map(|_| curve.random_point(rng)).collect();
    Divisor::from_points(curve, points?)
}

/// Multiset equality of points; errors when the divisors live over
/// different fields.
pub fn divisor_equal(a: &Divisor, b: &Divisor) -> Result<bool> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    Ok(a.points == b.points)
}

/// Parse the divisor file format: one `x;y` point per line, `#` comments,
/// blank lines ignored; an empty file is the identity divisor.
pub fn parse_divisor(curve: &NsCurve, text: &str) -> Result<Divisor> {
    let field = curve.field();
    let mut points = vec![];
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (xs, ys) = line
            .split_once(';')
            .ok_or_else(|| Error::invalid(format!("bad divisor line `{raw}`")))?;
        let x = field.parse_element(xs.trim())?;
        let y = field.parse_element(ys.trim())?;
        points.push(curve.point(x, y)?);
    }
    Divisor::from_points(curve, points)
}
