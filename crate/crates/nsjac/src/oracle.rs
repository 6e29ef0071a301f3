//! Independent, classically-verified group laws used for testing the
//! determinant path: the chord-tangent law on (2,3) curves and Cantor's
//! algorithm in Mumford (u, v) representation on (2,s) hyperelliptic curves
//! with s odd (one point at infinity, matching the (n,s) model).
//!
//! Nothing here touches the interpolation machinery; agreement between the
//! two routes is what the cross-check suites certify.

use crate::curve::{AffinePoint, NsCurve};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::{roots, UniPoly};

/// A point of an elliptic (2,3) curve in the classical affine-plus-infinity
/// picture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EcPoint {
    Affine(FieldElement, FieldElement),
    Infinity,
}

/// The right-hand side f(x) of y^2 = f(x); requires n = 2 and a tail free
/// of y so the classical formulas apply.
fn hyperelliptic_rhs(curve: &NsCurve) -> Result<UniPoly> {
    if curve.n() != 2 {
        return Err(Error::invalid("oracle expects a (2,s) curve"));
    }
    if curve.tail().deg_y().unwrap_or(0) > 0 {
        return Err(Error::invalid("oracle expects a tail free of y"));
    }
    let field = curve.field();
    Ok(UniPoly::x(field).pow(curve.s()).add(&curve.tail().y_coeff(0)))
}

/// Classical lambda-slope addition on a (2,3) curve y^2 = c(x).
pub fn chord_tangent_add(curve: &NsCurve, p: &EcPoint, q: &EcPoint) -> Result<EcPoint> {
    let c = hyperelliptic_rhs(curve)?;
    if curve.s() != 3 {
        return Err(Error::invalid("chord-tangent law expects a (2,3) curve"));
    }
    let (x1, y1, x2, y2) = match (p, q) {
        (EcPoint::Infinity, other) | (other, EcPoint::Infinity) => return Ok(other.clone()),
        (EcPoint::Affine(x1, y1), EcPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
    };
    let lambda = if x1 == x2 {
        if y1.add(y2).is_zero() {
            return Ok(EcPoint::Infinity); // vertical chord or 2-torsion tangent
        }
        c.derivative().eval(x1).div(&y1.add(y1))?
    } else {
        y2.sub(y1).div(&x2.sub(x1))?
    };
    // x1 + x2 + x3 = lambda^2 - c_2 (the x^2 coefficient of c)
    let x3 = lambda.square().sub(&c.coeff(2)).sub(x1).sub(x2);
    let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
    Ok(EcPoint::Affine(x3, y3))
}

pub fn chord_tangent_negate(p: &EcPoint) -> EcPoint {
    match p {
        EcPoint::Infinity => EcPoint::Infinity,
        EcPoint::Affine(x, y) => EcPoint::Affine(x.clone(), y.neg()),
    }
}

/// Double-and-add entirely inside the chord-tangent law.
pub fn chord_tangent_scalar_mul(curve: &NsCurve, k: u64, p: &EcPoint) -> Result<EcPoint> {
    let mut acc = EcPoint::Infinity;
    let mut base = p.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = chord_tangent_add(curve, &acc, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = chord_tangent_add(curve, &base, &base)?;
        }
    }
    Ok(acc)
}

/// Degree <= 1 divisors on a genus-1 curve are exactly classical points.
pub fn divisor_to_ec_point(d: &Divisor) -> Result<EcPoint> {
    match d.points() {
        [] => Ok(EcPoint::Infinity),
        [p] => Ok(EcPoint::Affine(p.x().clone(), p.y().clone())),
        _ => Err(Error::invalid("expected a reduced genus-1 divisor")),
    }
}

pub fn ec_point_to_divisor(curve: &NsCurve, p: &EcPoint) -> Result<Divisor> {
    match p {
        EcPoint::Infinity => Ok(Divisor::empty(curve.field())),
        EcPoint::Affine(x, y) => {
            Divisor::from_points(curve, [curve.point(x.clone(), y.clone())?])
        }
    }
}

/// Mumford representation of a semi-reduced divisor: u monic with the
/// x-coordinates as roots, v the interpolation of the y-values with
/// u | v^2 - f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordPair {
    u: UniPoly,
    v: UniPoly,
}

impl MumfordPair {
    pub fn new(u: UniPoly, v: UniPoly) -> MumfordPair {
        MumfordPair { u, v }
    }

    pub fn identity(curve: &NsCurve) -> MumfordPair {
        let field = curve.field();
        MumfordPair { u: UniPoly::one(field), v: UniPoly::zero(field) }
    }

    pub fn u(&self) -> &UniPoly {
        &self.u
    }

    pub fn v(&self) -> &UniPoly {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.u.deg() == Some(0)
    }

    /// The defining Mumford condition u | v^2 - f, plus shape constraints.
    pub fn is_valid(&self, curve: &NsCurve) -> bool {
        let Ok(f) = hyperelliptic_rhs(curve) else { return false };
        if self.u.is_zero() || !self.u.lc().is_one() {
            return false;
        }
        if !self.v.is_zero() && self.v.deg() >= self.u.deg() {
            return false;
        }
        self.u.divides(&self.v.mul(&self.v).sub(&f))
    }
}

/// Cantor composition and reduction on a (2,s) curve, s odd: the reduced
/// Mumford pair of [a] + [b].
pub fn cantor_add(curve: &NsCurve, a: &MumfordPair, b: &MumfordPair) -> Result<MumfordPair> {
    let f = hyperelliptic_rhs(curve)?;
    if curve.s() % 2 == 0 {
        return Err(Error::invalid("Cantor oracle expects odd s"));
    }
    let g = curve.genus();
    // composition (Cantor): d = gcd(u1, u2, v1 + v2) with Bezout cofactors
    let (d1, e1, e2) = a.u.xgcd(&b.u);
    let (d, c1, c2) = d1.xgcd(&a.v.add(&b.v));
    let s1 = c1.mul(&e1);
    let s2 = c1.mul(&e2);
    let s3 = c2;
    let u = a.u.mul(&b.u).div_exact(&d.mul(&d))?;
    let numerator = s1
        .mul(&a.u)
        .mul(&b.v)
        .add(&s2.mul(&b.u).mul(&a.v))
        .add(&s3.mul(&a.v.mul(&b.v).add(&f)));
    let mut u = u;
    let mut v = numerator.div_exact(&d)?.rem(&u)?;
    // reduction: replace (u, v) by ((f - v^2)/u, -v mod u') until deg u <= g
    while u.deg().unwrap_or(0) > g {
        let u_next = f.sub(&v.mul(&v)).div_exact(&u)?;
        let v_next = v.neg().rem(&u_next)?;
        u = u_next;
        v = v_next;
    }
    Ok(MumfordPair { u: u.monic(), v })
}

pub fn cantor_negate(pair: &MumfordPair) -> Result<MumfordPair> {
    Ok(MumfordPair { u: pair.u.clone(), v: pair.v.neg().rem(&pair.u)? })
}

/// Convert a split semi-reduced divisor to its Mumford pair. Fails with
/// `NotSemiReduced` when the support contains a point together with its
/// hyperelliptic conjugate (including a doubled y = 0 point).
pub fn divisor_to_mumford(curve: &NsCurve, d: &Divisor) -> Result<MumfordPair> {
    hyperelliptic_rhs(curve)?;
    let field = curve.field().clone();
    let groups = d.grouped();
    for (i, (p, m)) in groups.iter().enumerate() {
        if p.y().is_zero() && *m > 1 {
            return Err(Error::NotSemiReduced);
        }
        for (q, _) in groups.iter().skip(i + 1) {
            if p.x() == q.x() && p.y() != q.y() {
                // same fiber, distinct y's: on y^2 = f(x) they are opposite
                return Err(Error::NotSemiReduced);
            }
        }
    }
    let u = d.mumford_u();
    // v interpolates the y-branch at each x to the full multiplicity
    // (Hermite data from the local expansion), then CRT across fibers
    let mut v = UniPoly::zero(&field);
    let mut modulus = UniPoly::one(&field);
    for (p, m) in &groups {
        let mi = UniPoly::x_minus(p.x()).pow(*m);
        let vi = branch_polynomial(curve, p, *m)?;
        // correction t with v + modulus * t = vi mod mi
        let (g, a, _) = modulus.xgcd(&mi);
        debug_assert_eq!(g.deg(), Some(0));
        let t = vi.sub(&v).mul(&a).rem(&mi)?;
        v = v.add(&modulus.mul(&t));
        modulus = modulus.mul(&mi);
    }
    let v = v.rem(&u)?;
    let pair = MumfordPair { u, v };
    debug_assert!(pair.is_valid(curve));
    Ok(pair)
}

/// Truncated y(x) branch at a point, as a polynomial in x of degree < m.
fn branch_polynomial(curve: &NsCurve, p: &AffinePoint, m: usize) -> Result<UniPoly> {
    let field = curve.field().clone();
    if m == 1 {
        return Ok(UniPoly::constant(p.y().clone()));
    }
    let expansion = curve.local_expansion(p, m - 1)?;
    if expansion.parameter() != crate::curve::LocalParameter::XShift {
        // only y = 0 points ramify over x and those were capped at m = 1
        return Err(Error::NotSemiReduced);
    }
    // series in t = x - x0; rewrite as a polynomial in x
    let shift = UniPoly::x_minus(p.x());
    let mut out = UniPoly::zero(&field);
    let mut power = UniPoly::one(&field);
    for c in expansion.series_y() {
        out = out.add(&power.scale(c));
        power = power.mul(&shift);
    }
    Ok(out)
}

/// Expand a Mumford pair back into points; requires u to split over the
/// working field.
pub fn mumford_to_divisor(curve: &NsCurve, pair: &MumfordPair) -> Result<Divisor> {
    let located = roots(&pair.u)?;
    if !located.nonlinear.is_empty() {
        return Err(Error::NonSplitResult(located.nonsplit_degrees()));
    }
    let mut points = vec![];
    for (x0, m) in &located.roots {
        let y0 = pair.v.eval(x0);
        let point = curve.point(x0.clone(), y0)?;
        for _ in 0..*m {
            points.push(point.clone());
        }
    }
    Divisor::from_points(curve, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::jacobian;
    use crate::poly::BiPoly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e7() -> NsCurve {
        let f = Field::prime(7).unwrap();
        let tail = BiPoly::from_terms(&f, &[(0, 0, f.one())]);
        NsCurve::new(&f, 2, 3, tail).unwrap()
    }

    /// y^2 = x^5 + 1 over F_7, genus 2.
    fn g27() -> NsCurve {
        let f = Field::prime(7).unwrap();
        let tail = BiPoly::from_terms(&f, &[(0, 0, f.one())]);
        NsCurve::new(&f, 2, 5, tail).unwrap()
    }

    fn ec(curve: &NsCurve, x: u64, y: u64) -> EcPoint {
        let f = curve.field();
        EcPoint::Affine(f.from_u64(x), f.from_u64(y))
    }

    #[test]
    fn chord_tangent_examples() {
        let curve = e7();
        // (0,1) + (2,3): lambda = 1, x3 = 1 - 0 - 2 = 6, y3 = 1*(0-6) - 1 = 0
        let sum = chord_tangent_add(&curve, &ec(&curve, 0, 1), &ec(&curve, 2, 3)).unwrap();
        assert_eq!(sum, ec(&curve, 6, 0));
        let p = ec(&curve, 2, 3);
        assert_eq!(chord_tangent_add(&curve, &p, &EcPoint::Infinity).unwrap(), p);
        // vertical tangent at a 2-torsion point
        let t = ec(&curve, 6, 0);
        assert_eq!(chord_tangent_add(&curve, &t, &t).unwrap(), EcPoint::Infinity);
    }

    #[test]
    fn chord_tangent_matches_jacobian_on_e7() {
        // exhaustive over all nine affine points of y^2 = x^3 + 1 / F_7
        let curve = e7();
        let f = curve.field().clone();
        let mut points = vec![];
        for x in 0..7u64 {
            for y in 0..7u64 {
                if curve.is_on_curve(&f.from_u64(x), &f.from_u64(y)) {
                    points.push(ec(&curve, x, y));
                }
            }
        }
        assert_eq!(points.len(), 11); // adding w gives the full group of order 12
        for p in &points {
            for q in &points {
                let classical = chord_tangent_add(&curve, p, q).unwrap();
                let dp = ec_point_to_divisor(&curve, p).unwrap();
                let dq = ec_point_to_divisor(&curve, q).unwrap();
                let determinant = jacobian::add(&curve, &dp, &dq).unwrap();
                assert_eq!(divisor_to_ec_point(&determinant).unwrap(), classical);
            }
        }
    }

    #[test]
    fn mumford_conversion_examples() {
        let curve = g27();
        let f = curve.field().clone();
        let empty = Divisor::empty(&f);
        let pair = divisor_to_mumford(&curve, &empty).unwrap();
        assert!(pair.is_identity());
        // [(0,1)] -> u = x, v = 1
        let d = Divisor::from_points(&curve, [curve.point(f.zero(), f.one()).unwrap()]).unwrap();
        let pair = divisor_to_mumford(&curve, &d).unwrap();
        assert_eq!(pair.u(), &UniPoly::x(&f));
        assert_eq!(pair.v(), &UniPoly::one(&f));
        // opposite pair is not semi-reduced
        let opposite = Divisor::from_points(
            &curve,
            [
                curve.point(f.zero(), f.one()).unwrap(),
                curve.point(f.zero(), f.from_u64(6)).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(divisor_to_mumford(&curve, &opposite).unwrap_err(), Error::NotSemiReduced);
    }

    #[test]
    fn mumford_round_trip_with_multiplicity() {
        let curve = g27();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen_double = false;
        for _ in 0..60 {
            let p = curve.random_point(&mut rng).unwrap();
            if p.y().is_zero() {
                continue;
            }
            let d = Divisor::from_points(&curve, [p.clone(), p]).unwrap();
            let pair = divisor_to_mumford(&curve, &d).unwrap();
            assert!(pair.is_valid(&curve));
            assert_eq!(mumford_to_divisor(&curve, &pair).unwrap(), d);
            seen_double = true;
            break;
        }
        assert!(seen_double);
    }

    #[test]
    fn cantor_identity_and_inverse() {
        let curve = g27();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let id = MumfordPair::identity(&curve);
        for _ in 0..25 {
            let d = random_semireduced(&curve, &mut rng, 2);
            let pair = divisor_to_mumford(&curve, &d).unwrap();
            assert!(pair.is_valid(&curve));
            let same = cantor_add(&curve, &pair, &id).unwrap();
            assert_eq!(same, pair);
            let inv = cantor_negate(&pair).unwrap();
            let sum = cantor_add(&curve, &pair, &inv).unwrap();
            assert!(sum.is_identity());
            // output invariants
            let out = cantor_add(&curve, &pair, &pair).unwrap();
            assert!(out.is_valid(&curve));
            assert!(out.u().deg().unwrap_or(0) <= curve.genus());
        }
    }

    /// Certificate that a multiset of distinct points sums to the identity
    /// class: a nonzero function with poles bounded by N*w vanishing at all
    /// N points has exactly those zeros, so the class is principal. Pure
    /// linear algebra on plain evaluations; no interpolation machinery.
    fn principal_certificate(curve: &NsCurve, points: &[AffinePoint]) -> bool {
        let total = points.len();
        let field = curve.field();
        let mut monomials = vec![];
        let mut count = 1;
        loop {
            let basis = curve.basis_prefix(count);
            if basis.last().unwrap().pole > total {
                break;
            }
            monomials = basis;
            count += 1;
        }
        let cols = monomials.len();
        if cols == 0 {
            return false;
        }
        let mut matrix: Vec<Vec<FieldElement>> = points
            .iter()
            .map(|p| {
                monomials
                    .iter()
                    .map(|m| p.x().pow(m.i as u128).mul(&p.y().pow(m.j as u128)))
                    .collect()
            })
            .collect();
        // rank by Gaussian elimination; kernel exists iff rank < cols
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..matrix.len()).find(|&r| !matrix[r][col].is_zero()) else {
                continue;
            };
            matrix.swap(rank, pivot);
            let inv = matrix[rank][col].inv().unwrap();
            for c in 0..cols {
                matrix[rank][c] = matrix[rank][c].mul(&inv);
            }
            for r in 0..matrix.len() {
                if r != rank && !matrix[r][col].is_zero() {
                    let factor = matrix[r][col].clone();
                    for c in 0..cols {
                        let sub = factor.mul(&matrix[rank][c]);
                        matrix[r][c] = matrix[r][c].sub(&sub);
                    }
                }
            }
            rank += 1;
        }
        let _ = field;
        rank < cols
    }

    #[test]
    fn cantor_add_carries_a_principal_function_certificate() {
        // [D1] + [D2] = [E] iff D1 + D2 + conj(E) - (total) w is principal;
        // certify with a brute-force function-space search on distinct
        // supports
        let curve = g27();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut certified = 0;
        'outer: while certified < 20 {
            let d1 = random_semireduced(&curve, &mut rng, 2);
            let d2 = random_semireduced(&curve, &mut rng, 2);
            let (Ok(p1), Ok(p2)) =
                (divisor_to_mumford(&curve, &d1), divisor_to_mumford(&curve, &d2))
            else {
                continue;
            };
            let sum = cantor_add(&curve, &p1, &p2).unwrap();
            let Ok(e) = mumford_to_divisor(&curve, &sum) else { continue };
            // conjugate of E negates it on a hyperelliptic curve
            let mut support: Vec<AffinePoint> = vec![];
            support.extend(d1.points().iter().cloned());
            support.extend(d2.points().iter().cloned());
            for p in e.points() {
                support
                    .push(curve.point(p.x().clone(), p.y().neg()).expect("conjugate on curve"));
            }
            // distinct support only (multiplicity handling would need
            // confluent rows, which the certificate deliberately avoids)
            for i in 0..support.len() {
                for j in i + 1..support.len() {
                    if support[i] == support[j] {
                        continue 'outer;
                    }
                }
            }
            assert!(
                principal_certificate(&curve, &support),
                "no principal function for {d1} + {d2} vs {e}"
            );
            certified += 1;
        }
    }

    #[test]
    fn cantor_agrees_with_determinant_addition() {
        let curve = g27();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut agreed = 0;
        while agreed < 30 {
            let d1 = random_semireduced(&curve, &mut rng, 2);
            let d2 = random_semireduced(&curve, &mut rng, 2);
            let det_sum = match jacobian::add(&curve, &d1, &d2) {
                Ok(s) => s,
                Err(Error::SpecialDivisor(_)) | Err(Error::NonSplitResult(_)) => continue,
                Err(e) => panic!("unexpected error: {e}"),
            };
            let (Ok(p1), Ok(p2)) =
                (divisor_to_mumford(&curve, &d1), divisor_to_mumford(&curve, &d2))
            else {
                continue;
            };
            let cantor_sum = cantor_add(&curve, &p1, &p2).unwrap();
            let Ok(det_pair) = divisor_to_mumford(&curve, &det_sum) else { continue };
            assert_eq!(det_pair, cantor_sum, "disagreement on {d1} + {d2}");
            agreed += 1;
        }
    }

    fn random_semireduced(curve: &NsCurve, rng: &mut ChaCha8Rng, degree: usize) -> Divisor {
        loop {
            let pts: Result<Vec<AffinePoint>> =
                (0..degree).map(|_| curve.random_point(rng)).collect();
            let Ok(pts) = pts else { continue };
            let d = Divisor::from_points(curve, pts).unwrap();
            if divisor_to_mumford(curve, &d).is_ok() {
                return d;
            }
        }
    }
}
