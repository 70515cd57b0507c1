//! Variety attached to a moment matrix: intersection of its column relations,
//! split into one-dimensional components and isolated points, plus the
//! consistency test that a linear functional vanishes on every polynomial
//! vanishing on that variety.

use crate::linalg;
use crate::moments::{basis_eval, MomentMatrix, MomentSequence, Monomial};
use crate::poly::bi::BiPoly;
use crate::poly::uni::UniPoly;
use crate::poly::zeros::{
    classify_conic, common_zeros, conic_center, dedupe_points, factor_line_conic, sort_points,
    CommonZeros, ConicClass, LineFactors, VPoint, ZeroError,
};
use crate::scalar::Scalar;
use num_rational::BigRational;
use std::fmt;

/// Residual tolerance for deciding that an approximate point satisfies a
/// polynomial, relative to the magnitude of the evaluated terms.
const POINT_RESIDUAL_TOL: f64 = 1e-6;

/// Kernel vectors of the moment matrix expressed as polynomials in the
/// monomial basis of its columns.  The kernel basis is reduced to row
/// echelon form first: echelon relations have distinct leading monomials
/// and far fewer cross terms, which keeps the pairwise gcd computations
/// downstream stable for the float backend.
pub fn column_relations<S: Scalar>(mm: &MomentMatrix<S>, tol: f64) -> Vec<BiPoly<S>> {
    let mut basis = linalg::kernel_sym(&mm.mat, tol);
    linalg::rref(&mut basis, tol);
    basis
        .iter()
        .filter(|v| v.iter().any(|x| !x.is_negligible(1.0, tol)))
        .map(|v| {
            // Echelon rows carry elimination noise in float mode; terms far
            // below the row magnitude are artifacts, not relation structure.
            let mag = v.iter().fold(0.0f64, |m, x| m.max(x.to_f64().abs()));
            let cleaned: Vec<S> = v
                .iter()
                .map(|x| if x.is_negligible(mag, tol) { S::zero() } else { x.clone() })
                .collect();
            mm.vector_poly(&cleaned)
        })
        .collect()
}

/// Number of points in a variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cardinality {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(k) => write!(f, "{k}"),
            Cardinality::Infinite => write!(f, "infinite"),
        }
    }
}

/// Common zero set of a family of polynomials.
#[derive(Debug, Clone)]
pub struct Variety<S: Scalar> {
    /// Positive-dimensional components, factored as far as line and conic
    /// splitting allows, normalized and sorted.
    pub components: Vec<BiPoly<S>>,
    /// Points not lying on any component.
    pub points: Vec<VPoint<S>>,
    /// True when no nonzero relation constrained the plane.
    pub whole_plane: bool,
}

impl<S: Scalar> Variety<S> {
    pub fn cardinality(&self) -> Cardinality {
        if self.whole_plane || !self.components.is_empty() {
            Cardinality::Infinite
        } else {
            Cardinality::Finite(self.points.len())
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.whole_plane && self.components.is_empty() && self.points.is_empty()
    }

    /// True when the point satisfies every defining relation within tolerance.
    pub fn contains(&self, x: &S, y: &S, tol: f64) -> bool {
        if self.whole_plane {
            return true;
        }
        self.components.iter().any(|c| poly_vanishes(c, x, y, tol))
            || self
                .points
                .iter()
                .any(|p| p.same_location(&VPoint { x: x.clone(), y: y.clone(), exact: true }, tol))
    }
}

fn poly_vanishes<S: Scalar>(p: &BiPoly<S>, x: &S, y: &S, tol: f64) -> bool {
    let val = p.eval(x, y);
    if S::EXACT {
        return val.is_zero();
    }
    let scale = p
        .terms()
        .map(|(m, c)| {
            let t = c.to_f64().abs()
                * x.to_f64().abs().powi(m.i as i32)
                * y.to_f64().abs().powi(m.j as i32);
            t
        })
        .fold(1.0_f64, f64::max);
    val.to_f64().abs() <= POINT_RESIDUAL_TOL * scale.max(tol)
}

fn point_on_poly<S: Scalar>(p: &BiPoly<S>, pt: &VPoint<S>, tol: f64) -> bool {
    if S::EXACT && pt.exact {
        return p.eval(&pt.x, &pt.y).is_zero();
    }
    poly_vanishes(p, &pt.x, &pt.y, tol)
}

/// Intersect the zero sets of the given polynomials.
///
/// Components are tracked through pairwise gcds; points that fall off a
/// shrinking component are retained only while they satisfy every later
/// relation. Zero polynomials are ignored.
pub fn compute_variety<S: Scalar>(relations: &[BiPoly<S>], tol: f64) -> Variety<S> {
    let mut started = false;
    let mut components: Vec<BiPoly<S>> = Vec::new();
    let mut points: Vec<VPoint<S>> = Vec::new();

    for p in relations.iter().filter(|p| !p.is_zero()) {
        if p.is_constant() {
            return Variety { components: vec![], points: vec![], whole_plane: false };
        }
        if !started {
            components.push(p.normalized());
            started = true;
            continue;
        }
        points.retain(|pt| point_on_poly(p, pt, tol));
        let mut next_components: Vec<BiPoly<S>> = Vec::new();
        let mut new_points: Vec<VPoint<S>> = Vec::new();
        for c in &components {
            match common_zeros_robust(c, p, tol) {
                Ok(cz) => {
                    if let Some(curve) = cz.curve {
                        if !next_components.iter().any(|q| q == &curve) {
                            next_components.push(curve);
                        }
                    }
                    new_points.extend(cz.points);
                }
                Err(_) => {
                    // Both zero is excluded by the filter above.
                }
            }
        }
        points.extend(new_points);
        dedupe_points(&mut points, tol);
        components = next_components;
    }

    if !started {
        return Variety { components: vec![], points: vec![], whole_plane: true };
    }

    let mut split: Vec<BiPoly<S>> = Vec::new();
    for c in components {
        for f in split_component(&c, tol) {
            if !split.iter().any(|q| q == &f) {
                split.push(f);
            }
        }
    }
    // Degree-2 pieces with no real curve are not components: an imaginary
    // conic vanishes nowhere real, a point conic only at its center.
    let mut kept: Vec<BiPoly<S>> = Vec::new();
    for c in split {
        if c.total_degree() == Some(2) {
            match classify_conic(&c, tol) {
                ConicClass::ImaginaryEllipse | ConicClass::ImaginaryParallelLines => continue,
                ConicClass::SinglePoint => {
                    if let Some((x, y)) = conic_center(&c, tol) {
                        points.push(VPoint { x, y, exact: S::EXACT });
                        continue;
                    }
                }
                _ => {}
            }
        }
        kept.push(c);
    }
    kept.sort_by(|a, b| {
        (a.total_degree(), a.to_string()).cmp(&(b.total_degree(), b.to_string()))
    });
    points.retain(|pt| !kept.iter().any(|c| point_on_poly(c, pt, tol)));
    dedupe_points(&mut points, tol);
    sort_points(&mut points);
    Variety { components: kept, points, whole_plane: false }
}

/// Tolerance for declaring a float polynomial division residual negligible
/// relative to the operand coefficient scale.
const DIV_RESIDUAL_TOL: f64 = 1e-7;

/// `common_zeros` with a float fallback: when the exact-cancellation gcd sees
/// noisy inputs as coprime, look for an approximate common factor among the
/// inputs and their split pieces. Candidates must divide both inputs with
/// negligible residual; the largest-degree survivor is the shared curve.
fn common_zeros_robust<S: Scalar>(
    a: &BiPoly<S>,
    b: &BiPoly<S>,
    tol: f64,
) -> Result<CommonZeros<S>, ZeroError> {
    let cz = common_zeros(a, b, tol)?;
    if S::EXACT || cz.curve.is_some() {
        return Ok(cz);
    }
    let Some(g) = approx_common_factor(a, b) else {
        return Ok(cz);
    };
    let (Some(qa), Some(qb)) = (a.div_approx(&g, DIV_RESIDUAL_TOL), b.div_approx(&g, DIV_RESIDUAL_TOL))
    else {
        return Ok(cz);
    };
    let mut points = common_zeros(&qa, &qb, tol).map(|c| c.points).unwrap_or_default();
    dedupe_points(&mut points, tol);
    Ok(CommonZeros { curve: Some(g.normalized()), points })
}

fn approx_common_factor<S: Scalar>(a: &BiPoly<S>, b: &BiPoly<S>) -> Option<BiPoly<S>> {
    let mut cands: Vec<BiPoly<S>> = Vec::new();
    for p in [a, b] {
        let n = p.normalized();
        if !cands.contains(&n) {
            cands.push(n);
        }
        for piece in split_component(p, DIV_RESIDUAL_TOL) {
            if !cands.contains(&piece) {
                cands.push(piece);
            }
        }
    }
    cands.retain(|c| c.total_degree().map_or(false, |d| d >= 1));
    cands.sort_by_key(|c| std::cmp::Reverse(c.total_degree().unwrap_or(0)));
    cands.into_iter().find(|c| {
        a.div_approx(c, DIV_RESIDUAL_TOL).is_some() && b.div_approx(c, DIV_RESIDUAL_TOL).is_some()
    })
}

/// Factor a curve into lines and residual pieces where exact arithmetic can
/// certify the split. Unsplit factors are returned whole.
pub fn split_component<S: Scalar>(c: &BiPoly<S>, tol: f64) -> Vec<BiPoly<S>> {
    let mut parts = Vec::new();
    let mut rest = c.normalized();
    match rest.total_degree().unwrap_or(0) {
        0 => return vec![],
        1 => return vec![rest],
        2 => {
            if let Ok(lines) = factor_line_conic(&rest, tol) {
                match lines {
                    LineFactors::Distinct(l1, l2) => {
                        return vec![l1.poly().normalized(), l2.poly().normalized()]
                    }
                    LineFactors::Repeated(l) => return vec![l.poly().normalized()],
                    LineFactors::IrrationalReal => return vec![rest],
                }
            }
            return vec![rest];
        }
        _ => {}
    }

    loop {
        if rest.total_degree().unwrap_or(0) <= 2 {
            break;
        }
        match extract_one_line(&rest, tol) {
            Some((line, quotient)) => {
                parts.push(line.normalized());
                rest = quotient.normalized();
            }
            None => break,
        }
    }
    match rest.total_degree().unwrap_or(0) {
        0 => {}
        2 => parts.extend(split_component(&rest, tol)),
        _ => parts.push(rest),
    }
    parts
}

/// Find a single linear factor of `p`, returning it with the cofactor.
fn extract_one_line<S: Scalar>(p: &BiPoly<S>, tol: f64) -> Option<(BiPoly<S>, BiPoly<S>)> {
    // Vertical lines x = r divide p exactly when r is a common root of every
    // coefficient of p viewed as a polynomial in y.
    let fibers = p.as_y_polys();
    let mut content = UniPoly::<S>::zero();
    for f in &fibers {
        content = UniPoly::gcd(&content, f);
    }
    if content.degree().unwrap_or(0) >= 1 {
        let roots = S::real_roots(content.coeffs(), tol);
        for r in roots.roots.iter().filter(|r| r.exact || !S::EXACT) {
            let line = BiPoly::x().sub(&BiPoly::constant(r.value.clone()));
            if let Some(q) = p.div_exact(&line) {
                return Some((line, q));
            }
        }
    }

    // Slope lines y = m x + t: substitute and require every coefficient of x
    // to vanish, giving a polynomial system in (m, t).
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut eqs: Vec<BiPoly<S>> = vec![BiPoly::zero(); deg + 1];
    for (mono, coef) in p.terms() {
        let (i, j) = (mono.i as usize, mono.j as usize);
        let mut binom = S::one();
        for l in 0..=j {
            // coefficient of x^{i+j-l}: c * C(j,l) * m^{j-l} * t^l
            eqs[i + j - l].add_term(
                Monomial { i: (j - l) as u32, j: l as u32 },
                coef.clone() * binom.clone(),
            );
            binom = binom * S::from_i64((j - l) as i64) / S::from_i64((l + 1) as i64);
        }
    }
    let mut nonzero: Vec<&BiPoly<S>> = eqs.iter().filter(|e| !e.is_zero()).collect();
    nonzero.sort_by_key(|e| e.terms().count());
    if nonzero.len() < 2 {
        return None;
    }
    // Candidate (m, t) pairs from pairwise intersections. A pair can share a
    // whole curve of the (m, t)-plane; cutting it against the remaining
    // equations recovers the candidates on it. A solution escaping every cut
    // would put a common curve inside all equations, giving infinitely many
    // linear factors of a nonzero polynomial.
    let mut cands: Vec<VPoint<S>> = Vec::new();
    for a in 0..nonzero.len().min(3) {
        for b in a + 1..nonzero.len().min(4) {
            let Ok(cz) = common_zeros(nonzero[a], nonzero[b], tol) else { continue };
            cands.extend(cz.points);
            if let Some(curve) = cz.curve {
                for e in &nonzero {
                    if let Ok(cut) = common_zeros(&curve, e, tol) {
                        cands.extend(cut.points);
                    }
                }
            }
        }
    }
    dedupe_points(&mut cands, POINT_RESIDUAL_TOL);
    for cand in cands {
        if S::EXACT && !cand.exact {
            continue;
        }
        if !nonzero.iter().all(|e| point_on_poly(e, &cand, tol)) {
            continue;
        }
        let line = BiPoly::y()
            .sub(&BiPoly::x().scale(&cand.x))
            .sub(&BiPoly::constant(cand.y.clone()));
        if let Some(q) = p.div_exact(&line) {
            return Some((line, q));
        }
    }
    None
}

/// Outcome of the consistency test.
#[derive(Debug, Clone)]
pub enum Consistency<S: Scalar> {
    /// The functional vanishes on every sampled polynomial that vanishes on
    /// the variety.
    Consistent,
    /// A polynomial vanishing on the variety with nonzero moment value.
    Inconsistent { witness: BiPoly<S>, value: S },
    /// Sampling could not certify either way.
    Inconclusive { reason: String },
}

/// Test that the Riesz functional of `beta` annihilates every polynomial of
/// degree at most 2n vanishing on the variety.
///
/// Each component is sampled in enough points that vanishing on the samples
/// forces vanishing on the component (more than 2n * deg points of a curve
/// meet any nonvanishing polynomial of degree 2n in too many points), so an
/// inconsistency witness is sound in exact arithmetic. Components that cannot
/// be sampled in rational points within budget yield `Inconclusive`.
pub fn consistency_check<S: Scalar>(
    beta: &MomentSequence<S>,
    variety: &Variety<S>,
    tol: f64,
) -> Consistency<S> {
    if variety.whole_plane {
        return Consistency::Consistent;
    }
    let order = beta.order();
    let mut samples: Vec<(S, S)> = variety
        .points
        .iter()
        .map(|p| (p.x.clone(), p.y.clone()))
        .collect();
    for c in &variety.components {
        let need = (2 * order * c.total_degree().unwrap_or(0) + 7) as usize;
        match component_samples(c, need.max(40), tol) {
            Ok(mut pts) => samples.append(&mut pts),
            Err(reason) => return Consistency::Inconclusive { reason },
        }
    }
    if samples.is_empty() {
        // Empty variety: every polynomial vanishes on it, so consistency
        // requires the zero functional.
        if beta.entries().all(|(_, v)| v.is_zero()) {
            return Consistency::Consistent;
        }
        return Consistency::Inconsistent {
            witness: BiPoly::constant(S::one()),
            value: beta.mass().clone(),
        };
    }

    let rows: Vec<Vec<S>> = samples
        .iter()
        .map(|(x, y)| basis_eval(x, y, order))
        .collect();
    let kernel = linalg::kernel_rows(&rows, tol);
    let scale = beta
        .entries()
        .map(|(_, v)| v.to_f64().abs())
        .fold(1.0_f64, f64::max);
    let basis = crate::moments::monomial_basis(order);
    for k in &kernel {
        let mut poly = BiPoly::zero();
        for (idx, c) in k.iter().enumerate() {
            poly.add_term(basis[idx], c.clone());
        }
        let value = beta.riesz(&poly).expect("kernel polynomial within degree");
        let coef_scale = poly
            .terms()
            .map(|(_, c)| c.to_f64().abs())
            .fold(1.0_f64, f64::max);
        if !value.is_negligible(scale * coef_scale, tol) {
            return Consistency::Inconsistent { witness: poly, value };
        }
    }
    Consistency::Consistent
}

/// Rational abscissa search grid used by component sampling.
fn rational_grid<S: Scalar>() -> Vec<S> {
    let mut grid = Vec::new();
    for num in 0..=60_i64 {
        for &den in &[1_i64, 2, 3] {
            for &sign in &[1_i64, -1] {
                let v = S::from_ratio(sign * num, den);
                if !grid.contains(&v) {
                    grid.push(v);
                }
            }
        }
    }
    grid
}

/// Produce `target` distinct points on the curve with scalar coordinates.
///
/// Lines are parameterized directly, conics through a rational point by
/// rational chords, and other curves by a vertical-line scan keeping exact
/// roots. Failure to reach the target within the search budget is an error.
pub fn component_samples<S: Scalar>(
    c: &BiPoly<S>,
    target: usize,
    tol: f64,
) -> Result<Vec<(S, S)>, String> {
    match c.total_degree().unwrap_or(0) {
        0 => return Err("constant component".to_string()),
        1 => return Ok(line_samples(c, target)),
        2 => {
            if let Some(pts) = conic_samples(c, target, tol) {
                return Ok(pts);
            }
            // Fall through to the scan for conics without an accessible
            // rational point; in float mode the scan succeeds anyway.
        }
        _ => {}
    }
    scan_samples(c, target, tol).ok_or_else(|| {
        format!("could not sample {target} rational points on component {c}")
    })
}

fn line_samples<S: Scalar>(c: &BiPoly<S>, target: usize) -> Vec<(S, S)> {
    let a = c.coeff(1, 0);
    let b = c.coeff(0, 1);
    let d = c.coeff(0, 0);
    let mut pts = Vec::new();
    let mut t = 0_i64;
    while pts.len() < target {
        let tv = S::from_i64(t);
        if !b.is_zero() {
            let x = tv.clone();
            let y = (a.clone() * x.clone() + d.clone()).neg() / b.clone();
            pts.push((x, y));
        } else {
            let x = d.clone().neg() / a.clone();
            pts.push((x, tv));
        }
        t = if t >= 0 { -(t + 1) } else { -t };
    }
    pts
}

/// Solve c(x0, y) = 0 for scalar roots, keeping exact ones in exact mode.
fn fiber_roots<S: Scalar>(c: &BiPoly<S>, x0: &S, tol: f64) -> Vec<S> {
    let fiber = c.subst_x(x0);
    if fiber.is_zero() {
        return Vec::new();
    }
    S::real_roots(fiber.coeffs(), tol)
        .roots
        .into_iter()
        .filter(|r| r.exact || !S::EXACT)
        .map(|r| r.value)
        .collect()
}

fn conic_samples<S: Scalar>(c: &BiPoly<S>, target: usize, tol: f64) -> Option<Vec<(S, S)>> {
    // One rational base point.
    let mut base: Option<(S, S)> = None;
    for x0 in rational_grid::<S>() {
        if let Some(y0) = fiber_roots(c, &x0, tol).into_iter().next() {
            base = Some((x0, y0));
            break;
        }
    }
    let (mut x0, mut y0) = base?;
    let a = c.coeff(2, 0);
    let b = c.coeff(1, 1);
    let cc = c.coeff(0, 2);
    let dd = c.coeff(1, 0);
    let mut pts: Vec<(S, S)> = vec![(x0.clone(), y0.clone())];
    // Chord of slope m through the base point: substituting
    // y = y0 + m (x - x0) gives a quadratic in x with known root x0; the
    // second root follows from the sum of roots.
    let push = |x: S, y: S, pts: &mut Vec<(S, S)>| {
        if !pts.iter().any(|(px, py)| px == &x && py == &y) {
            pts.push((x, y));
        }
    };
    let mut k = 0_i64;
    let mut steps = 0;
    let mut switched = false;
    while pts.len() < target && steps < 4000 {
        // Bounded slopes leave the arc opposite the base uncovered; restart
        // the sweep from the sample farthest from the first base so the two
        // chord fans cover the whole curve.
        if !switched && pts.len() >= target / 2 && pts.len() >= 2 {
            switched = true;
            let far = pts
                .iter()
                .skip(1)
                .max_by(|(px, py), (qx, qy)| {
                    let dp = (px.to_f64() - x0.to_f64()).hypot(py.to_f64() - y0.to_f64());
                    let dq = (qx.to_f64() - x0.to_f64()).hypot(qy.to_f64() - y0.to_f64());
                    dp.total_cmp(&dq)
                })
                .cloned();
            if let Some((fx, fy)) = far {
                (x0, y0) = (fx, fy);
                k = 0;
            }
        }
        steps += 1;
        let m = S::from_ratio(k, 1 + (steps % 3));
        k = if k >= 0 { -(k + 1) } else { -k };
        let lead = a.clone() + b.clone() * m.clone() + cc.clone() * m.clone() * m.clone();
        if lead.is_negligible(1.0, tol) {
            continue;
        }
        // Coefficient of x in c(x, y0 + m(x - x0)), over the leading term.
        let off = y0.clone() - m.clone() * x0.clone();
        let lin = b.clone() * off.clone()
            + S::from_i64(2) * cc.clone() * m.clone() * off.clone()
            + dd.clone()
            + c.coeff(0, 1) * m.clone();
        let x1 = (lin / lead).neg() - x0.clone();
        let y1 = off + m * x1.clone();
        if poly_vanishes(c, &x1, &y1, tol) {
            push(x1, y1, &mut pts);
        }
    }
    if pts.len() >= target {
        pts.truncate(target);
        Some(pts)
    } else {
        None
    }
}

fn scan_samples<S: Scalar>(c: &BiPoly<S>, target: usize, tol: f64) -> Option<Vec<(S, S)>> {
    let mut pts: Vec<(S, S)> = Vec::new();
    for x0 in rational_grid::<S>() {
        for y in fiber_roots(c, &x0, tol) {
            if !pts.iter().any(|(px, py)| px == &x0 && py == &y) {
                pts.push((x0.clone(), y));
            }
            if pts.len() >= target {
                return Some(pts);
            }
        }
    }
    None
}

/// Witness that a kernel polynomial times a monomial leaves the kernel.
#[derive(Debug, Clone)]
pub struct RecursiveWitness<S: Scalar> {
    pub relation: BiPoly<S>,
    pub multiplier: Monomial,
}

/// Check that the column space behaves like function evaluation: whenever a
/// polynomial is a column relation, so is every multiple that still fits in
/// the matrix.
pub fn recursively_generated<S: Scalar>(
    mm: &MomentMatrix<S>,
    tol: f64,
) -> Result<(), RecursiveWitness<S>> {
    let n = mm.n;
    let scale = mm.mat.magnitude();
    let size = mm.size();
    // Kernel elements of degree <= d are the null vectors of the column
    // block spanning those monomials; computing them per degree level keeps
    // the check independent of how the kernel basis happens to be presented.
    for d in 1..n {
        let cols = crate::moments::monomial_basis(d).len();
        let block: Vec<Vec<S>> = (0..size)
            .map(|i| (0..cols).map(|j| mm.mat.get(i, j).clone()).collect())
            .collect();
        for v in linalg::kernel_rows(&block, tol) {
            let mut padded = v;
            padded.resize(size, S::zero());
            let rel = mm.vector_poly(&padded);
            if rel.is_zero() {
                continue;
            }
            for m in crate::moments::monomial_basis(n - d).into_iter().skip(1) {
                let prod = rel.mul(&BiPoly::monomial(m.i, m.j, S::one()));
                let mut vec = vec![S::zero(); size];
                for (mono, coef) in prod.terms() {
                    vec[mono.index()] = coef.clone();
                }
                let image = mm.mat.mat_vec(&vec);
                if image.iter().any(|val| !val.is_negligible(scale, tol)) {
                    return Err(RecursiveWitness { relation: rel, multiplier: m });
                }
            }
        }
    }
    Ok(())
}

/// Convenience: exact rational point for tests.
pub fn rational_point(x: (i64, i64), y: (i64, i64)) -> (BigRational, BigRational) {
    (
        BigRational::new(x.0.into(), x.1.into()),
        BigRational::new(y.0.into(), y.1.into()),
    )
}

/// Degenerate-conic split helper reused by the solver: classify, then factor
/// when the class is a line pair.
pub fn degenerate_conic_lines<S: Scalar>(
    p: &BiPoly<S>,
    tol: f64,
) -> Option<LineFactors<S>> {
    match classify_conic(p, tol) {
        ConicClass::IntersectingLines
        | ConicClass::RealParallelLines
        | ConicClass::CoincidentLines => factor_line_conic(p, tol).ok(),
        _ => None,
    }
}

/// Moment matrix wrapper: rank, relations, variety, and the standard
/// necessary checks bundled for the solver.
pub struct VarietyReport<S: Scalar> {
    pub rank: usize,
    pub relations: Vec<BiPoly<S>>,
    pub variety: Variety<S>,
}

pub fn analyze_matrix<S: Scalar>(mm: &MomentMatrix<S>, tol: f64) -> VarietyReport<S> {
    let rank = linalg::sym_rank_report(&mm.mat, tol).rank;
    let relations = column_relations(mm, tol);
    let variety = compute_variety(&relations, tol);
    VarietyReport { rank, relations, variety }
}
