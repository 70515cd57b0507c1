//! Real zero sets of pairs of bivariate polynomials, conic classification,
//! and factoring of degenerate conics into lines.
//!
//! `common_zeros` splits an intersection into a shared curve (the gcd, when
//! nonconstant) and finitely many isolated points found by eliminating `y`
//! with a resultant and solving each vertical fiber.

use thiserror::Error;

use crate::poly::bi::BiPoly;
use crate::poly::uni::UniPoly;
use crate::scalar::{Scalar, POINT_MERGE_TOL};

/// A located common zero; `exact` is false when either coordinate is a
/// numerical approximation of an irrational value.
#[derive(Debug, Clone, PartialEq)]
pub struct VPoint<S> {
    pub x: S,
    pub y: S,
    pub exact: bool,
}

impl<S: Scalar> VPoint<S> {
    pub fn same_location(&self, other: &Self, tol_points: f64) -> bool {
        if S::EXACT && self.exact && other.exact {
            return self.x == other.x && self.y == other.y;
        }
        // At least one coordinate is approximate, so compare numerically even
        // in the exact backend.
        let scale = self
            .x
            .to_f64()
            .abs()
            .max(self.y.to_f64().abs())
            .max(other.x.to_f64().abs())
            .max(other.y.to_f64().abs())
            .max(1.0);
        let dx = (self.x.clone() - other.x.clone()).to_f64().abs();
        let dy = (self.y.clone() - other.y.clone()).to_f64().abs();
        dx <= tol_points * scale && dy <= tol_points * scale
    }
}

pub fn sort_points<S: Scalar>(points: &mut [VPoint<S>]) {
    points.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.y.partial_cmp(&b.y).unwrap_or(std::cmp::Ordering::Equal))
    });
}

pub fn dedupe_points<S: Scalar>(points: &mut Vec<VPoint<S>>, tol_points: f64) {
    sort_points(points);
    let mut out: Vec<VPoint<S>> = Vec::new();
    for p in points.drain(..) {
        if !out.iter().any(|q| q.same_location(&p, tol_points)) {
            out.push(p);
        }
    }
    *points = out;
}

/// Intersection of two plane curves: an optional shared one-dimensional part
/// plus isolated points (zeros of the coprime cofactors).
#[derive(Debug, Clone)]
pub struct CommonZeros<S> {
    pub curve: Option<BiPoly<S>>,
    pub points: Vec<VPoint<S>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum ZeroError {
    #[error("both polynomials are identically zero")]
    BothZero,
}

pub fn common_zeros<S: Scalar>(
    a: &BiPoly<S>,
    b: &BiPoly<S>,
    tol: f64,
) -> Result<CommonZeros<S>, ZeroError> {
    if a.is_zero() && b.is_zero() {
        return Err(ZeroError::BothZero);
    }
    if a.is_zero() || b.is_zero() {
        let nz = if a.is_zero() { b } else { a };
        let curve = if nz.is_constant() { None } else { Some(nz.normalized()) };
        return Ok(CommonZeros { curve, points: Vec::new() });
    }
    let g = BiPoly::gcd(a, b);
    let (curve, ra, rb) = if g.is_constant() {
        (None, a.clone(), b.clone())
    } else {
        let ra = a.div_exact(&g).unwrap_or_else(|| a.clone());
        let rb = b.div_exact(&g).unwrap_or_else(|| b.clone());
        (Some(g), ra, rb)
    };
    let mut points = isolated_common_zeros(&ra, &rb, tol);
    dedupe_points(&mut points, POINT_MERGE_TOL);
    Ok(CommonZeros { curve, points })
}

/// Isolated common zeros of two coprime polynomials.
fn isolated_common_zeros<S: Scalar>(a: &BiPoly<S>, b: &BiPoly<S>, tol: f64) -> Vec<VPoint<S>> {
    if a.is_constant() || b.is_constant() {
        return Vec::new();
    }
    let res = BiPoly::resultant_y(a, b);
    if res.is_zero() {
        // Coprime inputs cannot share a y-positive-degree factor; a zero
        // resultant here means numerical collapse. Report no isolated points.
        return Vec::new();
    }
    let xroots = S::real_roots(res.coeffs(), tol);
    let mut points = Vec::new();
    for xr in &xroots.roots {
        let pa = a.subst_x(&xr.value);
        let pb = b.subst_x(&xr.value);
        let mut fiber: Vec<(S, bool)> = Vec::new();
        if xr.exact && S::EXACT {
            let g = if pa.is_zero() {
                pb.clone()
            } else if pb.is_zero() {
                pa.clone()
            } else {
                UniPoly::gcd(&pa, &pb)
            };
            if g.degree().map_or(true, |d| d == 0) {
                continue;
            }
            for yr in S::real_roots(g.coeffs(), tol).roots {
                fiber.push((yr.value, yr.exact));
            }
        } else {
            // Approximate fiber: candidate y values come from both substituted
            // polynomials. A multiple root of the resultant leaves the x value
            // several digits off, so refine against the original pair before
            // screening residuals; Newton restores transversal intersections
            // to machine precision and leaves spurious candidates large.
            let mut cands: Vec<S> = Vec::new();
            for p in [&pa, &pb] {
                if p.degree().map_or(false, |d| d >= 1) {
                    for yr in S::real_roots(p.coeffs(), tol).roots {
                        cands.push(yr.value);
                    }
                }
            }
            for y in cands {
                let mut pt = VPoint { x: xr.value.clone(), y, exact: false };
                newton_refine(a, b, &mut pt);
                let ra = a.eval(&pt.x, &pt.y).to_f64().abs();
                let rb = b.eval(&pt.x, &pt.y).to_f64().abs();
                let sa = eval_scale(a, &pt.x, &pt.y);
                let sb = eval_scale(b, &pt.x, &pt.y);
                if ra <= 1e-7 * sa && rb <= 1e-7 * sb {
                    points.push(pt);
                }
            }
            continue;
        }
        for (y, y_exact) in fiber {
            let pt = VPoint { x: xr.value.clone(), y, exact: xr.exact && y_exact && S::EXACT };
            points.push(pt);
        }
    }
    points
}

fn scalar_from_f64<S: Scalar>(v: f64) -> S {
    match num_rational::BigRational::from_float(v) {
        Some(r) => S::from_big_rational(&r),
        None => S::zero(),
    }
}

fn eval_scale<S: Scalar>(p: &BiPoly<S>, x: &S, y: &S) -> f64 {
    let (xa, ya) = (x.to_f64().abs(), y.to_f64().abs());
    let mut acc = 0.0f64;
    for (m, c) in p.terms() {
        acc += c.to_f64().abs() * xa.powi(m.i as i32) * ya.powi(m.j as i32);
    }
    acc.max(1.0)
}

/// A few damped Newton steps on the pair (a, b); float mode only.
fn newton_refine<S: Scalar>(a: &BiPoly<S>, b: &BiPoly<S>, pt: &mut VPoint<S>) {
    let (ax, ay, bx, by) = (a.dx(), a.dy(), b.dx(), b.dy());
    for _ in 0..12 {
        let fa = a.eval(&pt.x, &pt.y);
        let fb = b.eval(&pt.x, &pt.y);
        let j11 = ax.eval(&pt.x, &pt.y).to_f64();
        let j12 = ay.eval(&pt.x, &pt.y).to_f64();
        let j21 = bx.eval(&pt.x, &pt.y).to_f64();
        let j22 = by.eval(&pt.x, &pt.y).to_f64();
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-14 {
            return;
        }
        let (fa, fb) = (fa.to_f64(), fb.to_f64());
        let dx = (fa * j22 - fb * j12) / det;
        let dy = (fb * j11 - fa * j21) / det;
        if !dx.is_finite() || !dy.is_finite() {
            return;
        }
        pt.x = pt.x.clone() - scalar_from_f64::<S>(dx);
        pt.y = pt.y.clone() - scalar_from_f64::<S>(dy);
        if dx.abs().max(dy.abs()) < 1e-14 * pt.x.to_f64().abs().max(pt.y.to_f64().abs()).max(1.0) {
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Conics.
// ---------------------------------------------------------------------------

/// Affine classification of a real conic `Ax^2 + Bxy + Cy^2 + Dx + Ey + F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicClass {
    RealEllipse,
    ImaginaryEllipse,
    Hyperbola,
    Parabola,
    IntersectingLines,
    RealParallelLines,
    ImaginaryParallelLines,
    CoincidentLines,
    SinglePoint,
    NotQuadratic,
}

struct ConicCoeffs<S> {
    a: S,
    b: S,
    c: S,
    d: S,
    e: S,
    f: S,
    scale: f64,
}

fn conic_coeffs<S: Scalar>(q: &BiPoly<S>) -> ConicCoeffs<S> {
    let scale = q.terms().fold(0.0f64, |m, (_, c)| m.max(c.to_f64().abs())).max(1.0);
    ConicCoeffs {
        a: q.coeff(2, 0),
        b: q.coeff(1, 1),
        c: q.coeff(0, 2),
        d: q.coeff(1, 0),
        e: q.coeff(0, 1),
        f: q.coeff(0, 0),
        scale,
    }
}

pub fn classify_conic<S: Scalar>(q: &BiPoly<S>, tol: f64) -> ConicClass {
    if q.total_degree() != Some(2) {
        return ConicClass::NotQuadratic;
    }
    let cc = conic_coeffs(q);
    let four = S::from_i64(4);
    let two = S::from_i64(2);
    let delta = cc.b.clone() * cc.b.clone() - four.clone() * cc.a.clone() * cc.c.clone();
    // Determinant of the doubled symmetric matrix [[2A,B,D],[B,2C,E],[D,E,2F]].
    let full = crate::linalg::det_rows(&[
        vec![two.clone() * cc.a.clone(), cc.b.clone(), cc.d.clone()],
        vec![cc.b.clone(), two.clone() * cc.c.clone(), cc.e.clone()],
        vec![cc.d.clone(), cc.e.clone(), two.clone() * cc.f.clone()],
    ]);
    let s2 = cc.scale * cc.scale;
    let s3 = s2 * cc.scale;
    let delta_zero = delta.is_negligible(s2, tol);
    let full_zero = full.is_negligible(s3, tol);
    if !full_zero {
        if delta_zero {
            return ConicClass::Parabola;
        }
        if delta > S::zero() {
            return ConicClass::Hyperbola;
        }
        let orient = (cc.a.clone() + cc.c.clone()) * full;
        return if orient < S::zero() { ConicClass::RealEllipse } else { ConicClass::ImaginaryEllipse };
    }
    if !delta_zero {
        return if delta > S::zero() { ConicClass::IntersectingLines } else { ConicClass::SinglePoint };
    }
    // delta = 0, full = 0: a (possibly empty) pair of parallel lines.
    let theta = if !cc.a.is_negligible(cc.scale, tol) {
        cc.d.clone() * cc.d.clone() - four * cc.a.clone() * cc.f.clone()
    } else if !cc.c.is_negligible(cc.scale, tol) {
        cc.e.clone() * cc.e.clone() - four * cc.c.clone() * cc.f.clone()
    } else {
        return ConicClass::NotQuadratic;
    };
    if theta.is_negligible(s2, tol) {
        ConicClass::CoincidentLines
    } else if theta > S::zero() {
        ConicClass::RealParallelLines
    } else {
        ConicClass::ImaginaryParallelLines
    }
}

/// Center of a central conic (`B^2 - 4AC != 0`), the unique critical point
/// of the quadratic form. For a `SinglePoint` conic this is its only real
/// zero; `None` when the conic is not central or the center misses the curve.
pub fn conic_center<S: Scalar>(q: &BiPoly<S>, tol: f64) -> Option<(S, S)> {
    if q.total_degree() != Some(2) {
        return None;
    }
    let cc = conic_coeffs(q);
    let two = S::from_i64(2);
    let det = S::from_i64(4) * cc.a.clone() * cc.c.clone() - cc.b.clone() * cc.b.clone();
    if det.is_negligible(cc.scale * cc.scale, tol) {
        return None;
    }
    let inv = det.recip();
    let x = (cc.b.clone() * cc.e.clone() - two.clone() * cc.c.clone() * cc.d.clone()) * inv.clone();
    let y = (cc.b.clone() * cc.d.clone() - two * cc.a.clone() * cc.e.clone()) * inv;
    if q.eval(&x, &y).is_negligible(cc.scale, tol) {
        Some((x, y))
    } else {
        None
    }
}

/// Line `a x + b y + c = 0`, scaled so its first significant coefficient
/// among `(a, b)` equals 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Line<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> Line<S> {
    pub fn new(a: S, b: S, c: S, tol: f64) -> Self {
        let scale = a.to_f64().abs().max(b.to_f64().abs()).max(1.0);
        let lead = if !a.is_negligible(scale, tol) { a.clone() } else { b.clone() };
        let inv = lead.recip();
        Line { a: a * inv.clone(), b: b * inv.clone(), c: c * inv }
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        self.a.clone() * x.clone() + self.b.clone() * y.clone() + self.c.clone()
    }

    pub fn poly(&self) -> BiPoly<S> {
        BiPoly::from_terms([
            (1, 0, self.a.clone()),
            (0, 1, self.b.clone()),
            (0, 0, self.c.clone()),
        ])
    }

    pub fn is_parallel(&self, other: &Self, tol: f64) -> bool {
        let d = self.a.clone() * other.b.clone() - other.a.clone() * self.b.clone();
        let scale = self.poly().terms().chain(other.poly().terms()).fold(0.0f64, |m, (_, c)| m.max(c.to_f64().abs()));
        d.is_negligible(scale * scale, tol)
    }

    pub fn intersect(&self, other: &Self, tol: f64) -> Option<(S, S)> {
        let det = self.a.clone() * other.b.clone() - other.a.clone() * self.b.clone();
        let scale = 1.0f64
            .max(self.a.to_f64().abs())
            .max(self.b.to_f64().abs())
            .max(other.a.to_f64().abs())
            .max(other.b.to_f64().abs());
        if det.is_negligible(scale * scale, tol) {
            return None;
        }
        let x = (self.b.clone() * other.c.clone() - other.b.clone() * self.c.clone()) / det.clone();
        let y = (other.a.clone() * self.c.clone() - self.a.clone() * other.c.clone()) / det;
        Some((x, y))
    }
}

/// Real line factors of a degenerate conic.
#[derive(Debug, Clone, PartialEq)]
pub enum LineFactors<S> {
    Distinct(Line<S>, Line<S>),
    Repeated(Line<S>),
    /// The factorization is real but its coefficients are irrational, which
    /// the exact backend cannot represent.
    IrrationalReal,
}

#[derive(Debug, Error, PartialEq)]
pub enum FactorError {
    #[error("conic is not a product of real lines ({0:?})")]
    NotLinePair(ConicClass),
}

/// Factors a degenerate conic into real lines. Only conics classified as
/// intersecting, parallel, or coincident lines succeed.
pub fn factor_line_conic<S: Scalar>(q: &BiPoly<S>, tol: f64) -> Result<LineFactors<S>, FactorError> {
    let class = classify_conic(q, tol);
    match class {
        ConicClass::IntersectingLines | ConicClass::RealParallelLines | ConicClass::CoincidentLines => {}
        other => return Err(FactorError::NotLinePair(other)),
    }
    let cc = conic_coeffs(q);
    let four = S::from_i64(4);
    let two = S::from_i64(2);
    let delta = cc.b.clone() * cc.b.clone() - four.clone() * cc.a.clone() * cc.c.clone();
    if !cc.a.is_negligible(cc.scale, tol) {
        if class == ConicClass::IntersectingLines {
            let Some(s) = delta.sqrt_if_available() else {
                return Ok(LineFactors::IrrationalReal);
            };
            // With full determinant zero, t = (BD - 2AE)/s satisfies
            // t^2 = D^2 - 4AF, and the conic splits as
            // (2Ax + (B-s)y + (D-t)) (2Ax + (B+s)y + (D+t)) / 4A.
            let t = (cc.b.clone() * cc.d.clone() - two.clone() * cc.a.clone() * cc.e.clone()) / s.clone();
            let l1 = Line::new(
                two.clone() * cc.a.clone(),
                cc.b.clone() - s.clone(),
                cc.d.clone() - t.clone(),
                tol,
            );
            let l2 = Line::new(two * cc.a, cc.b + s, cc.d + t, tol);
            return Ok(LineFactors::Distinct(l1, l2));
        }
        // Parallel or coincident: (2Ax + By + D)^2 = theta.
        let theta = cc.d.clone() * cc.d.clone() - four * cc.a.clone() * cc.f.clone();
        if class == ConicClass::CoincidentLines {
            return Ok(LineFactors::Repeated(Line::new(two.clone() * cc.a, cc.b, cc.d, tol)));
        }
        let Some(t) = theta.sqrt_if_available() else {
            return Ok(LineFactors::IrrationalReal);
        };
        let l1 = Line::new(
            two.clone() * cc.a.clone(),
            cc.b.clone(),
            cc.d.clone() - t.clone(),
            tol,
        );
        let l2 = Line::new(two * cc.a, cc.b, cc.d + t, tol);
        return Ok(LineFactors::Distinct(l1, l2));
    }
    if !cc.b.is_negligible(cc.scale, tol) {
        // A = 0, B != 0: q = (By + D)(Bx + Cy + (BE - CD)/B) / B.
        let l1 = Line::new(S::zero(), cc.b.clone(), cc.d.clone(), tol);
        let e2 = (cc.b.clone() * cc.e.clone() - cc.c.clone() * cc.d.clone()) / cc.b.clone();
        let l2 = Line::new(cc.b, cc.c, e2, tol);
        return Ok(LineFactors::Distinct(l1, l2));
    }
    // A = B = 0, C != 0 (guaranteed quadratic): horizontal line pair.
    let theta = cc.e.clone() * cc.e.clone() - four * cc.c.clone() * cc.f.clone();
    if class == ConicClass::CoincidentLines {
        return Ok(LineFactors::Repeated(Line::new(S::zero(), two.clone() * cc.c, cc.e, tol)));
    }
    let Some(t) = theta.sqrt_if_available() else {
        return Ok(LineFactors::IrrationalReal);
    };
    let l1 = Line::new(S::zero(), two.clone() * cc.c.clone(), cc.e.clone() - t.clone(), tol);
    let l2 = Line::new(S::zero(), two * cc.c, cc.e + t, tol);
    Ok(LineFactors::Distinct(l1, l2))
}
