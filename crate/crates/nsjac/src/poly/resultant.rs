//! Resultants: the y-eliminant of two bivariate polynomials.
//!
//! `resultant_y(f, g)` follows the evaluation-interpolation route: specialize
//! x at enough points where neither leading y-coefficient vanishes, take
//! scalar resultants there, and interpolate back. The scalar resultant is the
//! Euclidean remainder-sequence form of the Sylvester determinant (the
//! determinant itself is kept as a cross-check oracle in the tests). When the
//! working field has too few usable points, a prime base field is lifted to a
//! just-large-enough extension and the coefficients descend afterwards; an
//! extension base falls back to fraction-free Bareiss elimination over F[x].

use super::{BiPoly, UniPoly};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::factor::irreducible_of_degree;

/// Sylvester resultant of f and g with respect to y; a polynomial in x.
///
/// Vanishes at x0 exactly when f(x0, .) and g(x0, .) share a root (f and g
/// here always have nonvanishing leading y-coefficient somewhere, and the
/// curve equation this is used with is monic in y).
pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> Result<UniPoly> {
    assert!(f.field() == g.field(), "resultant operands from different fields");
    let field = f.field().clone();
    if f.is_zero() || g.is_zero() {
        return Ok(UniPoly::zero(&field));
    }
    let dyf = f.deg_y().unwrap();
    let dyg = g.deg_y().unwrap();
    if dyf == 0 && dyg == 0 {
        return Ok(UniPoly::one(&field));
    }
    if dyf == 0 {
        return Ok(f.y_coeff(0).pow(dyg));
    }
    if dyg == 0 {
        return Ok(g.y_coeff(0).pow(dyf));
    }
    let dxf = f.deg_x().unwrap_or(0);
    let dxg = g.deg_x().unwrap_or(0);
    let bound = dyf * dxg + dyg * dxf;
    if let Some(r) = by_evaluation(f, g, bound)? {
        return Ok(r);
    }
    // not enough usable specialization points in the working field
    if field.is_prime_field() {
        let p = field.characteristic();
        let bad = f.y_coeff(dyf).deg().unwrap_or(0) + g.y_coeff(dyg).deg().unwrap_or(0);
        let needed = (bound + 1 + bad) as u128;
        let mut k = 2usize;
        let mut size = (p as u128).saturating_mul(p as u128);
        while size < needed {
            k += 1;
            size = size.saturating_mul(p as u128);
        }
        let modulus = irreducible_of_degree(&field, k, 0)?;
        let coords: Vec<u64> = modulus.coeffs().iter().map(|c| c.coords()[0]).collect();
        let ext = Field::extension(p, &coords)?;
        let lifted = by_evaluation(&f.embed(&ext)?, &g.embed(&ext)?, bound)?
            .ok_or_else(|| Error::invalid("resultant extension still too small"))?;
        return lifted.project(&field);
    }
    Ok(bareiss(f, g))
}

/// Evaluation-interpolation; `None` when the field lacks usable points.
fn by_evaluation(f: &BiPoly, g: &BiPoly, bound: usize) -> Result<Option<UniPoly>> {
    let field = f.field().clone();
    let lead_f = f.y_coeff(f.deg_y().unwrap());
    let lead_g = g.y_coeff(g.deg_y().unwrap());
    let mut samples = Vec::with_capacity(bound + 1);
    for x0 in field.elements() {
        if lead_f.eval(&x0).is_zero() || lead_g.eval(&x0).is_zero() {
            continue;
        }
        let value = resultant_scalar(&f.at_x(&x0), &g.at_x(&x0));
        samples.push((x0, value));
        if samples.len() == bound + 1 {
            break;
        }
    }
    if samples.len() < bound + 1 {
        return Ok(None);
    }
    Ok(Some(UniPoly::interpolate(&field, &samples)?))
}

/// Resultant of two univariate polynomials via the Euclidean remainder
/// sequence (Res(a,b) = (-1)^(da*db) lc(b)^(da-dr) Res(b, a mod b)).
pub(crate) fn resultant_scalar(a: &UniPoly, b: &UniPoly) -> FieldElement {
    let field = a.field().clone();
    if a.is_zero() || b.is_zero() {
        return field.zero();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = field.one();
    let mut negate = false;
    loop {
        let da = a.deg().unwrap();
        let db = b.deg().unwrap();
        if da == 0 {
            acc = acc.mul(&a.lc().pow(db as u128));
            break;
        }
        if db == 0 {
            acc = acc.mul(&b.lc().pow(da as u128));
            break;
        }
        if da < db {
            if da & db & 1 == 1 {
                negate = !negate;
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let r = a.rem(&b).expect("nonzero divisor");
        if r.is_zero() {
            return field.zero();
        }
        let dr = r.deg().unwrap();
        if da & db & 1 == 1 {
            negate = !negate;
        }
        acc = acc.mul(&b.lc().pow((da - dr) as u128));
        a = b;
        b = r;
    }
    if negate {
        acc.neg()
    } else {
        acc
    }
}

/// Sylvester-matrix determinant over F[x] by fraction-free Bareiss
/// elimination; no specialization points needed.
fn bareiss(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let field = f.field().clone();
    let dyf = f.deg_y().unwrap();
    let dyg = g.deg_y().unwrap();
    let n = dyf + dyg;
    let mut m = vec![vec![UniPoly::zero(&field); n]; n];
    for row in 0..dyg {
        for (k, col) in (row..=row + dyf).enumerate() {
            m[row][col] = f.y_coeff(dyf - k);
        }
    }
    for row in 0..dyf {
        for (k, col) in (row..=row + dyg).enumerate() {
            m[dyg + row][col] = g.y_coeff(dyg - k);
        }
    }
    let mut sign = false;
    let mut prev = UniPoly::one(&field);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return UniPoly::zero(&field);
            };
            m.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero(&field);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    /// Direct Sylvester determinant over the field, as an independent oracle
    /// for the remainder-sequence form.
    fn sylvester_det_scalar(a: &UniPoly, b: &UniPoly) -> FieldElement {
        let field = a.field().clone();
        if a.is_zero() || b.is_zero() {
            return field.zero();
        }
        let da = a.deg().unwrap();
        let db = b.deg().unwrap();
        if da == 0 {
            return a.lc().pow(db as u128);
        }
        if db == 0 {
            return b.lc().pow(da as u128);
        }
        let n = da + db;
        let mut m = vec![vec![field.zero(); n]; n];
        for row in 0..db {
            for k in 0..=da {
                m[row][row + k] = a.coeff(da - k);
            }
        }
        for row in 0..da {
            for k in 0..=db {
                m[db + row][row + k] = b.coeff(db - k);
            }
        }
        // Gaussian elimination determinant
        let mut det = field.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return field.zero();
            };
            if pivot != col {
                m.swap(pivot, col);
                det = det.neg();
            }
            let inv = m[col][col].inv().unwrap();
            det = det.mul(&m[col][col]);
            for r in col + 1..n {
                let factor = m[r][col].mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = factor.mul(&m[col][c]);
                    m[r][c] = m[r][c].sub(&sub);
                }
            }
        }
        det
    }

    #[test]
    fn scalar_resultant_matches_sylvester_determinant() {
        let fields = [f7(), Field::prime(1009).unwrap(), Field::extension(7, &[1, 0, 1]).unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for field in &fields {
            for _ in 0..300 {
                let da = rng.gen_range(0..6);
                let db = rng.gen_range(0..6);
                let a = UniPoly::new(field, (0..=da).map(|_| field.random_element(&mut rng)).collect());
                let b = UniPoly::new(field, (0..=db).map(|_| field.random_element(&mut rng)).collect());
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                assert_eq!(resultant_scalar(&a, &b), sylvester_det_scalar(&a, &b));
            }
        }
    }

    #[test]
    fn resultant_with_linear_factor_is_substitution() {
        let f = f7();
        // Res_y(y - (x+1), y^2 - x^3 - 1) = (x+1)^2 - x^3 - 1 = 6x^3 + x^2 + 2x
        let r = BiPoly::from_terms(
            &f,
            &[(0, 1, f.one()), (1, 0, f.from_i64(-1)), (0, 0, f.from_i64(-1))],
        );
        let curve = BiPoly::from_terms(
            &f,
            &[(0, 2, f.one()), (3, 0, f.from_i64(-1)), (0, 0, f.from_i64(-1))],
        );
        let res = resultant_y(&r, &curve).unwrap();
        assert_eq!(res, UniPoly::from_residues(&f, &[0, 2, 1, 6]));
    }

    #[test]
    fn resultant_of_two_linear_terms() {
        let f = f7();
        let a = f.from_u64(2);
        let b = f.from_u64(5);
        // Res_y(y - a, y - b) = det [[1, -a], [1, -b]] = a - b
        let fa = BiPoly::from_terms(&f, &[(0, 1, f.one()), (0, 0, a.neg())]);
        let fb = BiPoly::from_terms(&f, &[(0, 1, f.one()), (0, 0, b.neg())]);
        let res = resultant_y(&fa, &fb).unwrap();
        assert_eq!(res, UniPoly::constant(a.sub(&b)));
    }

    #[test]
    fn shared_root_gives_zero() {
        let f = f7();
        // y^2 - 2 and y - 3 share y = 3 (3^2 = 2 mod 7)
        let a = BiPoly::from_terms(&f, &[(0, 2, f.one()), (0, 0, f.from_i64(-2))]);
        let b = BiPoly::from_terms(&f, &[(0, 1, f.one()), (0, 0, f.from_i64(-3))]);
        assert!(resultant_y(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn zero_y_degree_cases() {
        let f = f7();
        let a = BiPoly::from_terms(&f, &[(1, 0, f.one()), (0, 0, f.from_u64(3))]); // x + 3
        let g = BiPoly::from_terms(&f, &[(0, 2, f.one()), (1, 0, f.one())]); // y^2 + x
        let res = resultant_y(&a, &g).unwrap();
        // (x+3)^2
        assert_eq!(res, UniPoly::from_residues(&f, &[2, 6, 1]));
    }

    #[test]
    fn common_factor_gives_identically_zero() {
        let f = Field::prime(101).unwrap();
        // (y - x) * (y + 2) and (y - x) * (y^2 + 5)
        let shared = BiPoly::from_terms(&f, &[(0, 1, f.one()), (1, 0, f.from_i64(-1))]);
        let a = shared.mul(&BiPoly::from_terms(&f, &[(0, 1, f.one()), (0, 0, f.from_u64(2))]));
        let b = shared.mul(&BiPoly::from_terms(&f, &[(0, 2, f.one()), (0, 0, f.from_u64(5))]));
        assert!(resultant_y(&a, &b).unwrap().is_zero());
        // and without the shared factor it is not zero
        let c = BiPoly::from_terms(&f, &[(0, 1, f.one()), (0, 0, f.from_u64(9))]);
        let d = BiPoly::from_terms(&f, &[(0, 2, f.one()), (0, 0, f.from_u64(5))]);
        assert!(!resultant_y(&c, &d).unwrap().is_zero());
    }

    #[test]
    fn small_field_descends_through_extension() {
        // over F_3 the degree bound exceeds the field size, forcing the
        // prime-field lift; Bareiss must agree
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..40 {
            let a = random_bipoly(&f, &mut rng, 3, 2);
            let b = random_bipoly(&f, &mut rng, 4, 3);
            if a.deg_y().unwrap_or(0) == 0 || b.deg_y().unwrap_or(0) == 0 {
                continue;
            }
            assert_eq!(resultant_y(&a, &b).unwrap(), bareiss(&a, &b));
        }
    }

    #[test]
    fn evaluation_matches_bareiss_generally() {
        let f = Field::prime(1009).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..60 {
            let a = random_bipoly(&f, &mut rng, 3, 2);
            let b = random_bipoly(&f, &mut rng, 3, 3);
            if a.deg_y().unwrap_or(0) == 0 || b.deg_y().unwrap_or(0) == 0 {
                continue;
            }
            assert_eq!(resultant_y(&a, &b).unwrap(), bareiss(&a, &b));
        }
    }

    fn random_bipoly(field: &Field, rng: &mut ChaCha8Rng, dx: usize, dy: usize) -> BiPoly {
        let mut terms = vec![];
        for i in 0..=dx {
            for j in 0..=dy {
                terms.push((i, j, field.random_element(rng)));
            }
        }
        BiPoly::from_terms(field, &terms)
    }
}
