//! The (n,s) plane model y^n = x^s + p(x,y) with gcd(n,s) = 1: validation,
//! genus and Weierstrass gap sequence at the single place w above infinity,
//! the pole-order-sorted monomial basis, point sampling, and local power
//! series at affine points (the engine behind confluent matrix rows and
//! vanishing-order computations).
//!
//! Pole orders at w are ord(x) = n and ord(y) = s; the coprimality makes
//! (i, j) -> n*i + s*j injective on the strip 0 <= j < n, so the monomials
//! x^i y^j sort strictly by pole order.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{roots, BiPoly, Roots};
use crate::series::{eval_bipoly, Series};

/// Retry budget for rational-point sampling.
const POINT_DRAW_BUDGET: usize = 4096;

/// A basis monomial x^i y^j with its pole order n*i + s*j at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub i: usize,
    pub j: usize,
    pub pole: usize,
}

/// An affine point on the curve. The place at infinity is never represented;
/// divisors store affine support only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePoint {
    x: FieldElement,
    y: FieldElement,
}

impl AffinePoint {
    pub fn new(x: FieldElement, y: FieldElement) -> AffinePoint {
        assert!(x.field() == y.field(), "point coordinates from different fields");
        AffinePoint { x, y }
    }

    pub fn x(&self) -> &FieldElement {
        &self.x
    }

    pub fn y(&self) -> &FieldElement {
        &self.y
    }

    pub fn field(&self) -> &Field {
        self.x.field()
    }

    /// Deterministic total order (x first, then y) used for canonical
    /// divisor storage and serialization.
    pub fn canonical_cmp(&self, other: &AffinePoint) -> Ordering {
        self.x.canonical_cmp(&other.x).then_with(|| self.y.canonical_cmp(&other.y))
    }
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.x, self.y)
    }
}

/// Which coordinate serves as the local parameter of an expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalParameter {
    /// t = x - x0 (the generic, unramified case).
    XShift,
    /// t = y - y0 (used where the x-cover ramifies).
    YShift,
}

/// Truncated power series for both coordinates at an affine point:
/// substituting them into the curve equation gives 0 up to the truncation.
#[derive(Clone, Debug)]
pub struct LocalExpansion {
    center: AffinePoint,
    parameter: LocalParameter,
    series_x: Series,
    series_y: Series,
}

impl LocalExpansion {
    pub fn center(&self) -> &AffinePoint {
        &self.center
    }

    pub fn parameter(&self) -> LocalParameter {
        self.parameter
    }

    /// Coefficients of x(t), lowest order first.
    pub fn series_x(&self) -> &[FieldElement] {
        self.series_x.coeffs()
    }

    /// Coefficients of y(t), lowest order first.
    pub fn series_y(&self) -> &[FieldElement] {
        self.series_y.coeffs()
    }

    pub(crate) fn series_pair(&self) -> (&Series, &Series) {
        (&self.series_x, &self.series_y)
    }
}

/// A validated (n,s) curve over a finite field.
#[derive(Clone, Debug)]
pub struct NsCurve {
    field: Field,
    n: usize,
    s: usize,
    tail: BiPoly,
    equation: BiPoly,
    genus: usize,
    gaps: Vec<usize>,
    basis_cache: Vec<Monomial>,
}

impl NsCurve {
    /// Validate and build the curve y^n = x^s + tail(x, y).
    ///
    /// Requires n >= 2, s > n, gcd(n,s) = 1, deg_x(tail) < s, deg_y(tail) < n,
    /// and a field characteristic not dividing n*s (so the covers stay tame
    /// and Newton lifting at affine points converges).
    pub fn new(field: &Field, n: usize, s: usize, tail: BiPoly) -> Result<NsCurve> {
        if n < 2 || s <= n {
            return Err(Error::BadDegrees(format!("need 2 <= n < s, got n={n}, s={s}")));
        }
        if gcd(n, s) != 1 {
            return Err(Error::NotCoprime);
        }
        let p = field.characteristic() as usize;
        if n % p == 0 || s % p == 0 {
            return Err(Error::BadCharacteristic);
        }
        if tail.field() != field {
            return Err(Error::FieldMismatch);
        }
        if !tail.is_zero() {
            if tail.deg_x().unwrap_or(0) >= s || tail.deg_y().unwrap_or(0) >= n {
                return Err(Error::BadDegrees(format!(
                    "tail degrees must satisfy deg_x < {s} and deg_y < {n}"
                )));
            }
        }
        let genus = (n - 1) * (s - 1) / 2;
        // y^n - x^s - tail
        let mut equation = BiPoly::from_terms(
            field,
            &[(0, n, field.one()), (s, 0, field.one().neg())],
        );
        equation = equation.sub(&tail);
        let gaps = gap_complement(n, s, genus);
        let mut curve = NsCurve {
            field: field.clone(),
            n,
            s,
            tail,
            equation,
            genus,
            gaps,
            basis_cache: vec![],
        };
        curve.basis_cache = curve.enumerate_basis(4 * genus + 2);
        Ok(curve)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn tail(&self) -> &BiPoly {
        &self.tail
    }

    /// The defining polynomial y^n - x^s - tail, monic in y.
    pub fn equation(&self) -> &BiPoly {
        &self.equation
    }

    /// The g Weierstrass gaps at infinity: positive integers that are not
    /// pole orders, all below 2g.
    pub fn gap_sequence(&self) -> &[usize] {
        &self.gaps
    }

    /// First `count` monomials x^i y^j in strictly increasing pole order,
    /// starting with the constant.
    pub fn basis_prefix(&self, count: usize) -> Vec<Monomial> {
        if count <= self.basis_cache.len() {
            return self.basis_cache[..count].to_vec();
        }
        self.enumerate_basis(count)
    }

    fn enumerate_basis(&self, count: usize) -> Vec<Monomial> {
        // j is determined mod n by the pole order; walk orders upwards
        let s_inv = mod_inverse(self.s % self.n, self.n);
        let mut out = Vec::with_capacity(count);
        let mut v = 0usize;
        while out.len() < count {
            let j = (v % self.n) * s_inv % self.n;
            if let Some(rest) = v.checked_sub(j * self.s) {
                debug_assert_eq!(rest % self.n, 0);
                out.push(Monomial { i: rest / self.n, j, pole: v });
            }
            v += 1;
        }
        out
    }

    pub fn is_on_curve(&self, x: &FieldElement, y: &FieldElement) -> bool {
        self.equation.eval(x, y).is_zero()
    }

    /// Validate coordinates into a point of this curve.
    pub fn point(&self, x: FieldElement, y: FieldElement) -> Result<AffinePoint> {
        if x.field() != &self.field || y.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if !self.is_on_curve(&x, &y) {
            return Err(Error::PointNotOnCurve(x.to_string(), y.to_string()));
        }
        Ok(AffinePoint { x, y })
    }

    /// Both plane partial derivatives vanish: the point is singular on the
    /// plane model and is rejected by all expansion machinery.
    pub fn is_singular(&self, point: &AffinePoint) -> bool {
        self.equation.partial_x().eval(&point.x, &point.y).is_zero()
            && self.equation.partial_y().eval(&point.x, &point.y).is_zero()
    }

    /// Rational points above x0, with fiber multiplicities.
    pub fn fiber_roots(&self, x0: &FieldElement) -> Result<Roots> {
        roots(&self.equation.at_x(x0))
    }

    /// Sample a nonsingular affine point: draw x until the fiber has a
    /// rational root, then pick one of the roots. Deterministic for a fixed
    /// RNG state.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<AffinePoint> {
        for _ in 0..POINT_DRAW_BUDGET {
            let x0 = self.field.random_element(rng);
            let fiber = self.fiber_roots(&x0)?;
            if fiber.roots.is_empty() {
                continue;
            }
            let pick = rng.gen_range(0..fiber.roots.len());
            let point = AffinePoint { x: x0, y: fiber.roots[pick].0.clone() };
            if self.is_singular(&point) {
                continue;
            }
            return Ok(point);
        }
        Err(Error::NoRationalPoint)
    }

    /// Power series for both coordinates at a nonsingular point, exact up to
    /// t^order. Where df/dy is nonzero the parameter is t = x - x0 and y(t)
    /// is lifted Newton-style one order at a time; otherwise the roles of x
    /// and y swap.
    pub fn local_expansion(&self, point: &AffinePoint, order: usize) -> Result<LocalExpansion> {
        let len = order + 1;
        let fy = self.equation.partial_y().eval(&point.x, &point.y);
        if !fy.is_zero() {
            let sx = Series::linear(&point.x, len);
            let sy = self.lift_series(&sx, &point.y, &fy, len)?;
            return Ok(LocalExpansion {
                center: point.clone(),
                parameter: LocalParameter::XShift,
                series_x: sx,
                series_y: sy,
            });
        }
        let fx = self.equation.partial_x().eval(&point.x, &point.y);
        if fx.is_zero() {
            return Err(Error::SingularPoint);
        }
        let sy = Series::linear(&point.y, len);
        let sx = self.lift_series_x(&sy, &point.x, &fx, len)?;
        Ok(LocalExpansion {
            center: point.clone(),
            parameter: LocalParameter::YShift,
            series_x: sx,
            series_y: sy,
        })
    }

    /// Solve f(sx, y(t)) = 0 for y(t) with y(0) given and df/dy(P) a unit:
    /// each new coefficient is -[t^k] f(sx, partial sum) / df/dy(P).
    fn lift_series(
        &self,
        sx: &Series,
        y0: &FieldElement,
        fy_unit: &FieldElement,
        len: usize,
    ) -> Result<Series> {
        let step = fy_unit.inv()?.neg();
        let mut sy = Series::constant(y0, len);
        for k in 1..len {
            let value = eval_bipoly(&self.equation, sx, &sy);
            sy.set_coeff(k, value.coeff(k).mul(&step));
        }
        debug_assert!(eval_bipoly(&self.equation, sx, &sy).is_zero());
        Ok(sy)
    }

    fn lift_series_x(
        &self,
        sy: &Series,
        x0: &FieldElement,
        fx_unit: &FieldElement,
        len: usize,
    ) -> Result<Series> {
        let step = fx_unit.inv()?.neg();
        let mut sx = Series::constant(x0, len);
        for k in 1..len {
            let value = eval_bipoly(&self.equation, &sx, sy);
            sx.set_coeff(k, value.coeff(k).mul(&step));
        }
        debug_assert!(eval_bipoly(&self.equation, &sx, sy).is_zero());
        Ok(sx)
    }

    /// Evaluation-functional rows at a point: row k holds the k-th Hasse
    /// derivative (k-th local series coefficient) of each basis monomial.
    /// Row 0 is plain evaluation. Hasse derivatives replace k-th classical
    /// derivatives, which degenerate for k >= char.
    pub fn hasse_rows(
        &self,
        point: &AffinePoint,
        up_to_order: usize,
        basis: &[Monomial],
    ) -> Result<Vec<Vec<FieldElement>>> {
        assert!(up_to_order >= 1);
        let expansion = self.local_expansion(point, up_to_order - 1)?;
        let (sx, sy) = expansion.series_pair();
        let max_i = basis.iter().map(|m| m.i).max().unwrap_or(0);
        let max_j = basis.iter().map(|m| m.j).max().unwrap_or(0);
        let xpow = series_powers(sx, max_i, &self.field, up_to_order);
        let ypow = series_powers(sy, max_j, &self.field, up_to_order);
        let mut rows = vec![Vec::with_capacity(basis.len()); up_to_order];
        for m in basis {
            let series = xpow[m.i].mul(&ypow[m.j]);
            for (k, row) in rows.iter_mut().enumerate() {
                row.push(series.coeff(k));
            }
        }
        Ok(rows)
    }

    /// Order of vanishing of r along the curve at the point, capped: returns
    /// `cap` when every inspected coefficient vanishes (which upstream code
    /// treats as a degeneracy, since cap always exceeds the relevant pole
    /// order).
    pub fn valuation_of(&self, r: &BiPoly, point: &AffinePoint, cap: usize) -> Result<usize> {
        if r.is_zero() {
            return Err(Error::invalid("valuation of the zero polynomial"));
        }
        if cap == 0 {
            return Ok(0);
        }
        let expansion = self.local_expansion(point, cap - 1)?;
        let (sx, sy) = expansion.series_pair();
        let composed = eval_bipoly(r, sx, sy);
        Ok(composed.valuation().unwrap_or(cap))
    }
}

fn series_powers(base: &Series, up_to: usize, field: &Field, len: usize) -> Vec<Series> {
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(Series::constant(&field.one(), len));
    for k in 1..=up_to {
        let next = out[k - 1].mul(base);
        out.push(next);
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of a mod m for coprime a, m (small arguments).
fn mod_inverse(a: usize, m: usize) -> usize {
    for x in 1..m {
        if (a * x) % m == 1 {
            return x;
        }
    }
    debug_assert_eq!(m, 1);
    0
}

/// Positive integers not representable as n*i + s*j; there are exactly g of
/// them and all sit below 2g.
fn gap_complement(n: usize, s: usize, genus: usize) -> Vec<usize> {
    let limit = 2 * genus;
    let mut representable = vec![false; limit + 1];
    let mut i = 0;
    while n * i <= limit {
        let mut j = 0;
        while n * i + s * j <= limit {
            representable[n * i + s * j] = true;
            j += 1;
        }
        i += 1;
    }
    (1..=limit).filter(|&v| !representable[v]).collect()
}

// --- curve file format ---

/// Parse the line-oriented curve description:
/// `p=<prime>`, optional `ext=<c0,...,1>`, `n=<int>`, `s=<int>`, and
/// `c <i> <j> <value>` coefficient lines for the tail; `#` starts a comment.
/// Unknown or duplicate keys are errors.
pub fn parse_curve(text: &str) -> Result<NsCurve> {
    let mut p: Option<u64> = None;
    let mut ext: Option<Vec<u64>> = None;
    let mut n: Option<usize> = None;
    let mut s: Option<usize> = None;
    let mut coeff_lines: Vec<(usize, usize, String)> = vec![];
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("c ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::invalid(format!("bad coefficient line `{raw}`")));
            }
            let i = parts[0].parse().map_err(|_| Error::invalid("bad x-power"))?;
            let j = parts[1].parse().map_err(|_| Error::invalid("bad y-power"))?;
            coeff_lines.push((i, j, parts[2].to_string()));
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("unrecognized line `{raw}`")))?;
        match key.trim() {
            "p" => set_once(&mut p, value.trim().parse().map_err(|_| Error::invalid("bad p"))?)?,
            "n" => set_once(&mut n, value.trim().parse().map_err(|_| Error::invalid("bad n"))?)?,
            "s" => set_once(&mut s, value.trim().parse().map_err(|_| Error::invalid("bad s"))?)?,
            "ext" => {
                let coeffs = value
                    .trim()
                    .split(',')
                    .map(|c| c.trim().parse().map_err(|_| Error::invalid("bad ext coefficient")))
                    .collect::<Result<Vec<u64>>>()?;
                set_once(&mut ext, coeffs)?;
            }
            other => return Err(Error::invalid(format!("unknown key `{other}`"))),
        }
    }
    let p = p.ok_or_else(|| Error::invalid("missing p="))?;
    let n = n.ok_or_else(|| Error::invalid("missing n="))?;
    let s = s.ok_or_else(|| Error::invalid("missing s="))?;
    let field = match ext {
        None => Field::prime(p)?,
        Some(m) => Field::extension(p, &m)?,
    };
    let mut terms = vec![];
    for (i, j, text) in coeff_lines {
        terms.push((i, j, field.parse_element(&text)?));
    }
    NsCurve::new(&field, n, s, BiPoly::from_terms(&field, &terms))
}

fn set_once<T>(slot: &mut Option<T>, value: T) -> Result<()> {
    if slot.is_some() {
        return Err(Error::invalid("duplicate key in curve file"));
    }
    *slot = Some(value);
    Ok(())
}

/// Serialize back into the curve file format (canonical ordering).
pub fn curve_to_text(curve: &NsCurve) -> String {
    let mut out = String::new();
    out.push_str(&format!("p={}\n", curve.field().characteristic()));
    if let Some(m) = curve.field().modulus() {
        let parts: Vec<String> = m.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("ext={}\n", parts.join(",")));
    }
    out.push_str(&format!("n={}\n", curve.n()));
    out.push_str(&format!("s={}\n", curve.s()));
    for (j, row) in curve.tail().y_coeffs().iter().enumerate() {
        for (i, c) in row.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.push_str(&format!("c {i} {j} {c}\n"));
            }
        }
    }
    out
}
