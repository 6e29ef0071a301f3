//! Univariate factorization over finite fields: distinct-degree splitting
//! followed by probabilistic equal-degree splitting, with multiplicities
//! recovered by repeated exact division (derivative-free, so the char-p
//! pitfall (x^p)' = 0 never enters).
//!
//! Splitting randomness is a seeded local RNG; the same seed always yields
//! the same factor list (factors are sorted canonically anyway).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::UniPoly;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Fixed default seed for internal factorizations; keeps every library
/// operation deterministic without threading RNG state through callers.
const DEFAULT_SEED: u64 = 0x5eed_cafe;

/// Retry budget for equal-degree splitting attempts.
const SPLIT_BUDGET: usize = 64;

/// Outcome of root extraction over the working field.
#[derive(Clone, Debug)]
pub struct Roots {
    /// Rational roots with multiplicities, in canonical element order.
    pub roots: Vec<(FieldElement, usize)>,
    /// Irreducible factors of degree >= 2 with multiplicities.
    pub nonlinear: Vec<(UniPoly, usize)>,
}

impl Roots {
    /// Degrees of the non-split factors, one entry per distinct factor.
    pub fn nonsplit_degrees(&self) -> Vec<usize> {
        self.nonlinear.iter().filter_map(|(q, _)| q.deg()).collect()
    }

    /// Multiplicity-weighted degree accounted for by rational roots.
    pub fn rational_degree(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// All roots of `a` in its field, plus the leftover irreducible factors.
pub fn roots(a: &UniPoly) -> Result<Roots> {
    roots_seeded(a, DEFAULT_SEED)
}

pub fn roots_seeded(a: &UniPoly, seed: u64) -> Result<Roots> {
    let mut out = Roots { roots: vec![], nonlinear: vec![] };
    for (q, m) in factor(a, seed)? {
        if q.deg() == Some(1) {
            // monic x + c has root -c
            out.roots.push((q.coeff(0).neg(), m));
        } else {
            out.nonlinear.push((q, m));
        }
    }
    out.roots.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with multiplicities, sorted canonically. The unit leading coefficient is
/// dropped. Constants factor into the empty list.
pub fn factor(a: &UniPoly, seed: u64) -> Result<Vec<(UniPoly, usize)>> {
    assert!(!a.is_zero(), "factoring the zero polynomial");
    let field = a.field().clone();
    let mut out: Vec<(UniPoly, usize)> = vec![];
    let mut v = a.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = UniPoly::x(&field);
    // h tracks x^(q^d) mod v across distinct-degree steps; gcd(h - x, v) is
    // the product of the distinct irreducible factors of degree dividing d,
    // each exactly once, which sidesteps squarefree preprocessing entirely.
    let mut h = x.rem(&v)?;
    let mut d = 0usize;
    loop {
        let dv = match v.deg() {
            None | Some(0) => break,
            Some(dv) => dv,
        };
        if 2 * (d + 1) > dv {
            // any repeated factor q^m (m >= 2) satisfies deg q <= dv/2 and
            // would have been peeled at d = deg q, so v is irreducible here
            out.push((v.clone(), 1));
            break;
        }
        d += 1;
        h = frobenius_power(&h, &v)?;
        let g = h.sub(&x).gcd(&v);
        if g.deg().is_some_and(|dg| dg > 0) {
            for q in equal_degree_split(&g, d, &mut rng)? {
                let mut m = 0usize;
                while q.divides(&v) {
                    v = v.div_exact(&q)?;
                    m += 1;
                }
                debug_assert!(m >= 1);
                out.push((q, m));
            }
            h = h.rem(&v)?;
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

/// h^q mod m for the field order q = p^e, via e rounds of p-th powering.
fn frobenius_power(h: &UniPoly, m: &UniPoly) -> Result<UniPoly> {
    let p = h.field().characteristic() as u128;
    let mut out = h.clone();
    for _ in 0..h.field().ext_degree() {
        out = out.pow_mod(p, m)?;
    }
    Ok(out)
}

/// Split a squarefree product of irreducibles of known equal degree `d`.
fn equal_degree_split(g: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<UniPoly>> {
    let field = g.field().clone();
    let p = field.characteristic();
    let e = field.ext_degree();
    let mut done: Vec<UniPoly> = vec![];
    let mut work = vec![g.monic()];
    let mut attempts = 0usize;
    while let Some(f) = work.pop() {
        let df = f.deg().expect("nonconstant factor");
        if df == d {
            done.push(f);
            continue;
        }
        let split = loop {
            attempts += 1;
            if attempts > SPLIT_BUDGET {
                return Err(Error::InternalFactorFailure);
            }
            let h = UniPoly::new(
                &field,
                (0..df).map(|_| field.random_element(rng)).collect(),
            );
            if h.is_zero() {
                continue;
            }
            let g1 = h.gcd(&f);
            if let Some(dg1) = g1.deg() {
                if dg1 > 0 && dg1 < df {
                    break g1;
                }
            }
            // w = h^((q^d - 1)/2) mod f, using (q^d - 1)/2 = (p-1)/2 * sum p^i:
            // multiply the p-power Frobenius orbit of h, then raise to (p-1)/2
            let mut iterate = h.rem(&f)?;
            let mut orbit = iterate.clone();
            for _ in 1..(e * d) {
                iterate = iterate.pow_mod(p as u128, &f)?;
                orbit = orbit.mul(&iterate).rem(&f)?;
            }
            let w = orbit.pow_mod(((p - 1) / 2) as u128, &f)?;
            let g1 = w.sub(&UniPoly::one(&field)).gcd(&f);
            if let Some(dg1) = g1.deg() {
                if dg1 > 0 && dg1 < df {
                    break g1;
                }
            }
        };
        let rest = f.div_exact(&split)?;
        work.push(split);
        work.push(rest);
    }
    Ok(done)
}

/// Rabin irreducibility test: m of degree d is irreducible over F_q iff
/// x^(q^d) = x mod m and gcd(x^(q^(d/l)) - x, m) = 1 for every prime l | d.
pub fn is_irreducible(m: &UniPoly) -> bool {
    let Some(d) = m.deg() else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let field = m.field();
    let x = UniPoly::x(field);
    let mut powers = Vec::with_capacity(d + 1);
    let mut h = match x.rem(m) {
        Ok(h) => h,
        Err(_) => return false,
    };
    powers.push(h.clone()); // x^(q^0)
    for _ in 0..d {
        h = match frobenius_power(&h, m) {
            Ok(h) => h,
            Err(_) => return false,
        };
        powers.push(h.clone());
    }
    if powers[d] != powers[0] {
        return false;
    }
    for l in prime_divisors(d) {
        let g = powers[d / l].sub(&x).gcd(m);
        if g.deg() != Some(0) {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A monic irreducible of exact degree d over the prime field, deterministic
/// for a fixed seed.
pub fn irreducible_of_degree(field: &Field, d: usize, seed: u64) -> Result<UniPoly> {
    if !field.is_prime_field() {
        return Err(Error::invalid("irreducible search runs over a prime field"));
    }
    if d < 2 {
        return Err(Error::invalid("requested degree must be >= 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..(64 * d.max(8)) {
        let mut coeffs: Vec<FieldElement> =
            (0..d).map(|_| field.random_element(&mut rng)).collect();
        coeffs.push(field.one());
        let candidate = UniPoly::new(field, coeffs);
        if is_irreducible(&candidate) {
            return Ok(candidate);
        }
    }
    Err(Error::InternalFactorFailure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    fn poly(field: &Field, residues: &[u64]) -> UniPoly {
        UniPoly::from_residues(field, residues)
    }

    #[test]
    fn roots_examples() {
        let f = f7();
        // x^2 - 1 -> {1, 6}
        let r = roots(&poly(&f, &[6, 0, 1])).unwrap();
        assert_eq!(r.roots, vec![(f.from_u64(1), 1), (f.from_u64(6), 1)]);
        assert!(r.nonlinear.is_empty());
        // x^2 + 1 has no roots mod 7 (-1 is a non-residue: brute check)
        assert!((0..7u64).all(|x| (x * x) % 7 != 6));
        let r = roots(&poly(&f, &[1, 0, 1])).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.nonsplit_degrees(), vec![2]);
        // x(x-2)(x+1) -> {0, 2, 6}; oracle by expansion: x^3 - x^2 - 2x
        let a = poly(&f, &[0, 1]).mul(&poly(&f, &[5, 1])).mul(&poly(&f, &[1, 1]));
        assert_eq!(a, poly(&f, &[0, 5, 6, 1]));
        let r = roots(&a).unwrap();
        assert_eq!(
            r.roots,
            vec![(f.from_u64(0), 1), (f.from_u64(2), 1), (f.from_u64(6), 1)]
        );
    }

    #[test]
    fn multiplicities_by_repeated_division() {
        let f = f7();
        // (x-3)^4 (x^2+1)^2
        let a = poly(&f, &[4, 1]).pow(4).mul(&poly(&f, &[1, 0, 1]).pow(2));
        let r = roots(&a).unwrap();
        assert_eq!(r.roots, vec![(f.from_u64(3), 4)]);
        assert_eq!(r.nonlinear.len(), 1);
        assert_eq!(r.nonlinear[0].1, 2);
        let expanded = r
            .roots
            .iter()
            .fold(UniPoly::one(&f), |acc, (root, m)| acc.mul(&UniPoly::x_minus(root).pow(*m)));
        assert!(expanded.divides(&a));
    }

    #[test]
    fn factor_degree_accounting() {
        // multiplicity sum + leftover degrees = total degree
        let fields = [f7(), Field::prime(1009).unwrap(), Field::extension(7, &[1, 0, 1]).unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for field in &fields {
            for _ in 0..120 {
                let d = rng.gen_range(1..10);
                let mut coeffs: Vec<FieldElement> =
                    (0..d).map(|_| field.random_element(&mut rng)).collect();
                coeffs.push(field.one());
                let a = UniPoly::new(field, coeffs);
                let total: usize = factor(&a, 1)
                    .unwrap()
                    .iter()
                    .map(|(q, m)| q.deg().unwrap() * m)
                    .sum();
                assert_eq!(total, d);
            }
        }
    }

    #[test]
    fn roots_match_brute_force_over_f1009() {
        let f = Field::prime(1009).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..500 {
            let d = rng.gen_range(1..=12);
            let mut coeffs: Vec<FieldElement> =
                (0..d).map(|_| f.random_element(&mut rng)).collect();
            coeffs.push(f.one());
            let a = UniPoly::new(&f, coeffs);
            let found = roots(&a).unwrap();
            let mut brute: Vec<u64> = vec![];
            for v in 0..1009u64 {
                if a.eval(&f.from_u64(v)).is_zero() {
                    brute.push(v);
                }
            }
            let mine: Vec<u64> = found.roots.iter().map(|(r, _)| r.coords()[0]).collect();
            assert_eq!(mine, brute);
            // re-expanding the rational part divides the input exactly
            let expanded = found
                .roots
                .iter()
                .fold(UniPoly::one(&f), |acc, (root, m)| acc.mul(&UniPoly::x_minus(root).pow(*m)));
            assert!(expanded.divides(&a));
            let leftover: usize =
                found.nonlinear.iter().map(|(q, m)| q.deg().unwrap() * m).sum();
            assert_eq!(found.rational_degree() + leftover, d);
        }
    }

    #[test]
    fn factorization_over_extension_field() {
        let f49 = Field::extension(7, &[1, 0, 1]).unwrap();
        // x^2 + 1 splits over F_49: (x - t)(x + t) with t^2 = -1
        let a = poly(&f49, &[1, 0, 1]);
        let r = roots(&a).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.nonlinear.is_empty());
        for (root, m) in &r.roots {
            assert_eq!(*m, 1);
            assert!(root.mul(root).add(&f49.one()).is_zero());
        }
    }

    #[test]
    fn irreducible_search_is_deterministic_and_valid() {
        let f = f7();
        let a = irreducible_of_degree(&f, 2, 4).unwrap();
        let b = irreducible_of_degree(&f, 2, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.deg(), Some(2));
        assert!(a.lc().is_one());
        assert!(is_irreducible(&a));
        // known instances: t^2+1 over F_7, t^2+2 over F_5 (2 a non-residue: {0,1,4})
        assert!(is_irreducible(&poly(&f, &[1, 0, 1])));
        let f5 = Field::prime(5).unwrap();
        assert!((0..5u64).all(|x| (x * x) % 5 != 2));
        assert!(is_irreducible(&poly(&f5, &[2, 0, 1])));
        for d in 2..=6 {
            let q = irreducible_of_degree(&f5, d, 99).unwrap();
            assert_eq!(q.deg(), Some(d));
            assert!(is_irreducible(&q));
        }
    }

    #[test]
    fn reducibles_are_rejected() {
        let f = f7();
        assert!(!is_irreducible(&poly(&f, &[6, 0, 1]))); // (x-1)(x+1)
        assert!(!is_irreducible(&poly(&f, &[0, 0, 1]))); // x^2
        assert!(!is_irreducible(&poly(&f, &[3]))); // constant
        assert!(is_irreducible(&poly(&f, &[3, 1]))); // linear
    }
}
