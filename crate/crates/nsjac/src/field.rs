//! Exact arithmetic in a prime field F_p or one extension F_q = F_p[t]/m(t).
//!
//! Moduli are runtime values. p is restricted to odd machine-word primes
//! (p < 2^62) so widening products fit in u128 without bignum. Elements are
//! fully reduced coefficient vectors, so equality is bytewise and the text
//! serialization is bit-stable: a decimal residue for F_p, a comma-separated
//! little-endian coefficient list (`3,0,5` = 3 + 5t^2) for F_q.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

/// Upper bound (exclusive) for the prime modulus.
pub const MAX_PRIME: u64 = 1 << 62;

type Coeffs = SmallVec<[u64; 2]>;

/// Runtime description of a field: the prime p plus an optional extension
/// modulus m(t), little-endian and including the leading 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub ext_modulus: Option<Vec<u64>>,
}

#[derive(Debug)]
struct FieldRepr {
    p: u64,
    /// Monic modulus of the extension, little-endian, coefficients in [0, p),
    /// last entry 1; `None` for the prime field.
    modulus: Option<Vec<u64>>,
    degree: usize,
}

/// Handle to a field; cheap to clone and share.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl Field {
    /// Build the field described by `spec`.
    pub fn new(spec: &FieldSpec) -> Result<Field> {
        match &spec.ext_modulus {
            None => Field::prime(spec.p),
            Some(m) => Field::extension(spec.p, m),
        }
    }

    /// The prime field F_p, p an odd prime below 2^62.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 3 || p >= MAX_PRIME || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldRepr { p, modulus: None, degree: 1 })))
    }

    /// The extension F_p[t]/m(t) for a monic irreducible m of degree >= 2.
    /// `modulus` is little-endian and includes the leading coefficient.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Field> {
        let base = Field::prime(p)?;
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        while m.last() == Some(&0) {
            m.pop();
        }
        let degree = m.len().saturating_sub(1);
        if degree < 2 {
            return Err(Error::invalid("extension modulus must have degree >= 2"));
        }
        if *m.last().unwrap() != 1 {
            return Err(Error::invalid("extension modulus must be monic"));
        }
        if !crate::poly::is_irreducible(&crate::poly::UniPoly::from_residues(&base, &m)) {
            return Err(Error::ReducibleModulus);
        }
        Ok(Field(Arc::new(FieldRepr { p, modulus: Some(m), degree })))
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.0.p, ext_modulus: self.0.modulus.clone() }
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Extension degree over F_p; 1 for the prime field itself.
    pub fn ext_degree(&self) -> usize {
        self.0.degree
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.modulus.is_none()
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.0.modulus.as_deref()
    }

    /// p^d, if it fits in u128.
    pub fn order(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..self.0.degree {
            acc = acc.checked_mul(self.0.p as u128)?;
        }
        Some(acc)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), c: smallvec![0; self.0.degree] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        let mut c: Coeffs = smallvec![0; self.0.degree];
        c[0] = v % self.0.p;
        FieldElement { field: self.clone(), c }
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.from_u64(v.rem_euclid(self.0.p as i64) as u64)
    }

    /// Element from little-endian coordinates over F_p; shorter slices are
    /// zero-padded, entries are reduced mod p.
    pub fn from_coeffs(&self, coords: &[u64]) -> Result<FieldElement> {
        if coords.len() > self.0.degree {
            return Err(Error::invalid(format!(
                "{} coordinates for a degree-{} field",
                coords.len(),
                self.0.degree
            )));
        }
        let mut c: Coeffs = smallvec![0; self.0.degree];
        for (i, v) in coords.iter().enumerate() {
            c[i] = v % self.0.p;
        }
        Ok(FieldElement { field: self.clone(), c })
    }

    /// Parse the serialized form: decimal for F_p, comma-separated
    /// little-endian coordinates for F_q.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let coords: Vec<u64> = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::invalid(format!("bad field element `{s}`")))
            })
            .collect::<Result<_>>()?;
        if coords.is_empty() {
            return Err(Error::invalid("empty field element"));
        }
        self.from_coeffs(&coords)
    }

    /// Uniform random element; deterministic for a fixed RNG state.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let c: Coeffs = (0..self.0.degree).map(|_| rng.gen_range(0..self.0.p)).collect();
        FieldElement { field: self.clone(), c }
    }

    /// All field elements in canonical order (0, 1, 2, ... by coordinates).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let d = self.0.degree;
        let p = self.0.p;
        let mut digits: Vec<u64> = vec![0; d];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = FieldElement { field: self.clone(), c: digits.iter().copied().collect() };
            let mut i = 0;
            loop {
                if i == d {
                    done = true;
                    break;
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            Some(out)
        })
    }

    fn p(&self) -> u64 {
        self.0.p
    }
}

/// Element of a [`Field`], always in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    c: Coeffs,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.check_field(other);
        let p = self.field.p();
        let c = self.c.iter().zip(&other.c).map(|(&a, &b)| add_mod(a, b, p)).collect();
        FieldElement { field: self.field.clone(), c }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.check_field(other);
        let p = self.field.p();
        let c = self.c.iter().zip(&other.c).map(|(&a, &b)| sub_mod(a, b, p)).collect();
        FieldElement { field: self.field.clone(), c }
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.p();
        let c = self.c.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect();
        FieldElement { field: self.field.clone(), c }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.check_field(other);
        let p = self.field.p();
        match self.field.0.modulus.as_deref() {
            None => FieldElement {
                field: self.field.clone(),
                c: smallvec![mul_mod(self.c[0], other.c[0], p)],
            },
            Some(m) => {
                let c = ext_mul(&self.c, &other.c, m, p);
                FieldElement { field: self.field.clone(), c }
            }
        }
    }

    pub fn square(&self) -> FieldElement {
        self.mul(self)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p();
        let c = match self.field.0.modulus.as_deref() {
            None => smallvec![inv_mod(self.c[0], p)],
            Some(m) => ext_inv(&self.c, m, p)?,
        };
        Ok(FieldElement { field: self.field.clone(), c })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u128) -> FieldElement {
        let mut result = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    /// Total order on elements of one field: little-endian coordinate
    /// comparison with the most significant coordinate deciding first.
    pub fn canonical_cmp(&self, other: &FieldElement) -> Ordering {
        self.check_field(other);
        self.c.iter().rev().cmp(other.c.iter().rev())
    }

    fn check_field(&self, other: &FieldElement) {
        assert!(self.field == other.field, "field mismatch in element arithmetic");
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.c {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// The four basic operations, as a runtime selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic: verifies the operands share a field.
pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Sub => Ok(a.sub(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.div(b),
    }
}

/// Canonical inclusion F_p -> F_{p^d} (constant coefficient vector).
///
/// The source must live in a prime field matching the target's
/// characteristic; embeddings between proper extensions are not supported.
pub fn embed_prime(a: &FieldElement, target: &Field) -> Result<FieldElement> {
    if a.field == *target {
        return Ok(a.clone());
    }
    if !a.field.is_prime_field() || a.field.characteristic() != target.characteristic() {
        return Err(Error::FieldMismatch);
    }
    Ok(target.from_u64(a.c[0]))
}

/// Projection onto the prime subfield, when the element lies in it.
pub fn project_prime(a: &FieldElement, target: &Field) -> Result<FieldElement> {
    if a.field == *target {
        return Ok(a.clone());
    }
    if !target.is_prime_field() || a.field.characteristic() != target.characteristic() {
        return Err(Error::FieldMismatch);
    }
    if a.c[1..].iter().any(|&v| v != 0) {
        return Err(Error::invalid("element does not lie in the prime subfield"));
    }
    Ok(target.from_u64(a.c[0]))
}

// --- u64 modular arithmetic ---

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b; // p < 2^62, no overflow
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p); a != 0, p prime
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin, valid for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// --- raw extension-field arithmetic on coefficient vectors ---

fn ext_mul(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Coeffs {
    let d = m.len() - 1;
    let mut prod: Vec<u64> = vec![0; 2 * d - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                prod[i + j] = add_mod(prod[i + j], mul_mod(ai, bj, p), p);
            }
        }
    }
    // reduce by the monic modulus: t^d = -(m_0 + ... + m_{d-1} t^{d-1})
    for i in (d..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for k in 0..d {
            if m[k] != 0 {
                prod[i - d + k] = sub_mod(prod[i - d + k], mul_mod(c, m[k], p), p);
            }
        }
    }
    prod.truncate(d);
    prod.into_iter().collect()
}

fn ext_inv(a: &[u64], m: &[u64], p: u64) -> Result<Coeffs> {
    let d = m.len() - 1;
    // extended Euclid over F_p[t]: u*a + v*m = g
    let mut old_r: Vec<u64> = a.to_vec();
    trim(&mut old_r);
    let mut r: Vec<u64> = m.to_vec();
    let mut old_u: Vec<u64> = vec![1];
    let mut u: Vec<u64> = vec![];
    while !r.is_empty() {
        let (q, rem) = raw_divmod(&old_r, &r, p);
        old_r = r;
        r = rem;
        let qu = raw_mul(&q, &u, p);
        let new_u = raw_sub(&old_u, &qu, p);
        old_u = u;
        u = new_u;
    }
    if old_r.len() != 1 {
        // m irreducible and a nonzero mod m make this unreachable
        return Err(Error::DivisionByZero);
    }
    let scale = inv_mod(old_r[0], p);
    let mut out: Coeffs = smallvec![0; d];
    for (i, &c) in old_u.iter().enumerate() {
        out[i] = mul_mod(c, scale, p);
    }
    Ok(out)
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn raw_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(ai, bj, p), p);
        }
    }
    trim(&mut out);
    out
}

fn raw_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let av = a.get(i).copied().unwrap_or(0);
        let bv = b.get(i).copied().unwrap_or(0);
        *slot = sub_mod(av, bv, p);
    }
    trim(&mut out);
    out
}

fn raw_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    let mut rem = a.to_vec();
    let mut quot = vec![0u64; a.len() - b.len() + 1];
    for i in (0..quot.len()).rev() {
        let top = rem[i + b.len() - 1];
        if top == 0 {
            continue;
        }
        let q = mul_mod(top, lead_inv, p);
        quot[i] = q;
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] = sub_mod(rem[i + j], mul_mod(q, bj, p), p);
        }
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}
