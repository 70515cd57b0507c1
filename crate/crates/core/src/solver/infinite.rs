//! Positive-dimensional varieties.
//!
//! Any representing measure splits into point masses at the isolated variety
//! points plus a part supported on the one-dimensional components. The
//! product `g` of all components vanishes on the latter, so applying the
//! moment functional to `g * h` isolates the point masses; when those
//! equations pin the masses uniquely the problem reduces to the residual
//! sequence on the components alone. Single lines go to the one-dimensional
//! solver, pairs of lines to mass separation in adapted affine coordinates,
//! and anything curved to a density search over sampled support points. The
//! sampling fallback can produce and verify a measure but never refutes one:
//! samples do not exhaust a curve.

use super::separation::{self, Split};
use super::{Certificate, Route, SolveReport};
use crate::hankel::{
    line_restriction, planar_atoms, solve_hankel, HankelOutcome, HankelRefusal, LineParam,
    RestrictError,
};
use crate::linalg::{self, ConsistentSolve};
use crate::moments::{
    basis_eval, monomial_basis, transform_moments, AffineMap, Atom, AtomicMeasure, MomentSequence,
};
use crate::poly::bi::BiPoly;
use crate::poly::zeros::{Line, VPoint};
use crate::scalar::Scalar;
use crate::variety::{component_samples, VarietyReport};

/// Sample points requested per curved component in the fallback search.
const SAMPLES_PER_COMPONENT: usize = 40;

enum Elimination<S: Scalar> {
    /// Masses at the isolated points are uniquely determined and nonnegative.
    Pinned { atoms: Vec<Atom<S>>, exact: bool, residual: MomentSequence<S> },
    Refuse(Certificate<S>),
    Stuck(String),
}

pub fn decide<S: Scalar>(
    beta: &MomentSequence<S>,
    report: &VarietyReport<S>,
    tol: f64,
) -> SolveReport<S> {
    let comps = &report.variety.components;
    let pts = &report.variety.points;
    if comps.is_empty() {
        return SolveReport::inconclusive(
            Route::CurveSampling,
            "internal: infinite variety without components".to_string(),
        );
    }

    match eliminate_isolated(beta, comps, pts, tol) {
        Elimination::Refuse(cert) => SolveReport::no_measure(Route::Preconditions, cert),
        Elimination::Stuck(reason) => {
            // Joint density search over sampled component points plus the
            // isolated points; existence may still be confirmed.
            let extra: Vec<(S, S)> = pts.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
            sample_route(beta, beta, Vec::new(), true, comps, &extra, &reason, tol)
        }
        Elimination::Pinned { atoms, exact, residual } => {
            dispatch(beta, &residual, atoms, exact, comps, tol)
        }
    }
}

fn dispatch<S: Scalar>(
    beta: &MomentSequence<S>,
    residual: &MomentSequence<S>,
    pt_atoms: Vec<Atom<S>>,
    pts_exact: bool,
    comps: &[BiPoly<S>],
    tol: f64,
) -> SolveReport<S> {
    let scale = beta.entries().fold(1.0f64, |m, (_, v)| m.max(v.to_f64().abs()));
    if residual.entries().all(|(_, v)| v.is_negligible(scale, tol)) {
        return super::conclude(beta, pt_atoms, pts_exact, Route::IsolatedMasses, tol);
    }

    let degs: Vec<u32> = comps.iter().map(|c| c.total_degree().unwrap_or(0)).collect();
    if comps.len() == 1 && degs[0] == 1 {
        line_route(beta, residual, pt_atoms, pts_exact, &comps[0], tol)
    } else if comps.len() == 2 && degs[0] == 1 && degs[1] == 1 {
        two_lines_route(beta, residual, pt_atoms, pts_exact, &comps[0], &comps[1], tol)
    } else {
        sample_route(beta, residual, pt_atoms, pts_exact, comps, &[], "", tol)
    }
}

/// Determine the masses at isolated variety points from the equations
/// `L(g * h) = sum_k rho_k g(a_k) h(a_k)` where `g` kills the components.
fn eliminate_isolated<S: Scalar>(
    beta: &MomentSequence<S>,
    comps: &[BiPoly<S>],
    pts: &[VPoint<S>],
    tol: f64,
) -> Elimination<S> {
    if pts.is_empty() {
        return Elimination::Pinned { atoms: Vec::new(), exact: true, residual: beta.clone() };
    }
    let g = comps.iter().fold(BiPoly::constant(S::one()), |acc, c| acc.mul(c));
    let dg = g.total_degree().unwrap_or(0);
    if dg > beta.order() {
        return Elimination::Stuck(
        "the component product exceeds the moment degree, leaving the point masses unconstrained"
                .to_string(),
        );
    }
    let hs = monomial_basis(beta.order() - dg);
    let pts_exact = pts.iter().all(|p| p.exact);

    let cols: Vec<Vec<S>> = pts
        .iter()
        .map(|p| {
            let gv = g.eval(&p.x, &p.y);
            basis_eval(&p.x, &p.y, beta.order() - dg)
                .into_iter()
                .map(|m| m * gv.clone())
                .collect()
        })
        .collect();
    let rows: Vec<Vec<S>> = (0..hs.len())
        .map(|r| cols.iter().map(|c: &Vec<S>| c[r].clone()).collect())
        .collect();
    let b: Vec<S> = hs
        .iter()
        .map(|h| {
            let hp = BiPoly::from_terms([(h.i, h.j, S::one())]);
            beta.riesz(&g.mul(&hp)).expect("degree bounded by construction")
        })
        .collect();

    if linalg::rank_rows(&rows, tol) < pts.len() {
        return Elimination::Stuck(
            "the isolated-point masses are not uniquely determined by the moment data".to_string(),
        );
    }

    match linalg::solve_consistent(&rows, &b, tol) {
        ConsistentSolve::Inconsistent => {
            if S::EXACT && !pts_exact {
                return Elimination::Stuck(
                    "isolated points are irrational, so the exact mass equations cannot certify \
                     a refusal"
                        .to_string(),
                );
            }
            // A left-kernel combination of the equations with nonzero moment
            // value is a polynomial vanishing on the whole variety that the
            // functional fails to kill.
            let bscale = b.iter().fold(1.0f64, |m, v| m.max(v.to_f64().abs()));
            for c in linalg::kernel_rows(&transpose(&rows), tol) {
                let val = linalg::dot(&c, &b);
                if !val.is_negligible(bscale, tol) {
                    let mut comb = BiPoly::zero();
                    for (h, coef) in hs.iter().zip(&c) {
                        comb.add_term(*h, coef.clone());
                    }
                    return Elimination::Refuse(Certificate::InconsistentWithVariety {
                        witness: g.mul(&comb),
                        value: val,
                    });
                }
            }
            Elimination::Stuck(
                "the mass equations are inconsistent but no witness survived the tolerance"
                    .to_string(),
            )
        }
        ConsistentSolve::Solution(rho) => {
            let mscale = beta.mass().to_f64().abs().max(1.0);
            let mut atoms = Vec::new();
            for (p, r) in pts.iter().zip(rho) {
                if r < S::zero() {
                    if r.is_negligible(mscale, tol) {
                        continue;
                    }
                    if S::EXACT && !pts_exact {
                        return Elimination::Stuck(
                            "a negative mass appeared at an irrational isolated point and cannot \
                             be certified exactly"
                                .to_string(),
                        );
                    }
                    return Elimination::Refuse(Certificate::NegativeIsolatedMass {
                        x: p.x.clone(),
                        y: p.y.clone(),
                        value: r,
                    });
                }
                if !r.is_negligible(mscale, tol) {
                    atoms.push(Atom { x: p.x.clone(), y: p.y.clone(), density: r });
                }
            }
            let mu = match AtomicMeasure::new_merged(atoms.clone()) {
                Ok(mu) => mu,
                Err(e) => return Elimination::Stuck(format!("pinned point masses rejected: {e}")),
            };
            let residual = beta.minus(&mu.moments(beta.n()));
            Elimination::Pinned { atoms, exact: pts_exact, residual }
        }
    }
}

fn transpose<S: Clone>(rows: &[Vec<S>]) -> Vec<Vec<S>> {
    let nc = rows.first().map_or(0, |r| r.len());
    (0..nc).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect()
}

fn line_from_poly<S: Scalar>(p: &BiPoly<S>, tol: f64) -> Line<S> {
    Line::new(p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0), tol)
}

fn line_route<S: Scalar>(
    beta: &MomentSequence<S>,
    residual: &MomentSequence<S>,
    pt_atoms: Vec<Atom<S>>,
    pts_exact: bool,
    lpoly: &BiPoly<S>,
    tol: f64,
) -> SolveReport<S> {
    let route = Route::LineSupport;
    let line = line_from_poly(lpoly, tol);
    let lp = LineParam::from_line(&line, tol);
    let h = match line_restriction(residual, &lp, tol) {
        Ok(h) => h,
        Err(RestrictError::Mismatch { i, j, expected, found }) => {
            return SolveReport::no_measure(
                route,
                Certificate::LineMomentMismatch { i, j, expected, found },
            );
        }
    };
    match solve_hankel(&h, tol) {
        HankelOutcome::Measure(atoms1d) => {
            let (mut atoms, aexact) = planar_atoms(&lp, &atoms1d);
            atoms.extend(pt_atoms);
            super::conclude(beta, atoms, pts_exact && aexact, route, tol)
        }
        HankelOutcome::NoMeasure(HankelRefusal::NotPsd { direction }) => {
            SolveReport::no_measure(route, Certificate::HankelNotPsd { direction })
        }
        HankelOutcome::NoMeasure(HankelRefusal::RankJump { rank, previous }) => {
            SolveReport::no_measure(route, Certificate::HankelRankJump { rank, previous })
        }
        HankelOutcome::NoMeasure(HankelRefusal::Extraction { detail }) => SolveReport::inconclusive(
            route,
            format!("root extraction failed on the support line: {detail}"),
        ),
    }
}

fn two_lines_route<S: Scalar>(
    beta: &MomentSequence<S>,
    residual: &MomentSequence<S>,
    pt_atoms: Vec<Atom<S>>,
    pts_exact: bool,
    p1: &BiPoly<S>,
    p2: &BiPoly<S>,
    tol: f64,
) -> SolveReport<S> {
    let l1 = line_from_poly(p1, tol);
    let l2 = line_from_poly(p2, tol);

    if !l1.is_parallel(&l2, tol) {
        // u = l1, v = l2 sends the support onto the coordinate axes u v = 0.
        let route = Route::CrossSeparation;
        let map = AffineMap {
            a: l1.a.clone(),
            b: l1.b.clone(),
            e: l1.c.clone(),
            c: l2.a.clone(),
            d: l2.b.clone(),
            f: l2.c.clone(),
        };
        let Some(inv) = map.inverse() else {
            return SolveReport::inconclusive(
                route,
                "the separating coordinate change is numerically singular".to_string(),
            );
        };
        let tb = match transform_moments(residual, &map) {
            Ok(t) => t,
            Err(e) => return SolveReport::inconclusive(route, format!("transform failed: {e}")),
        };
        let (up, vp) = map.as_polys();
        let sides = (format!("{vp} = 0"), format!("{up} = 0"));
        match separation::cross(&tb, &up, &vp, (&sides.0, &sides.1), tol) {
            Split::Atoms(uv_atoms, sexact) => {
                let mut atoms: Vec<Atom<S>> = uv_atoms
                    .iter()
                    .map(|a| {
                        let (x, y) = inv.apply(&a.x, &a.y);
                        Atom { x, y, density: a.density.clone() }
                    })
                    .collect();
                atoms.extend(pt_atoms);
                super::conclude(beta, atoms, pts_exact && sexact, route, tol)
            }
            Split::Refuse(cert) => SolveReport::no_measure(route, cert),
            Split::Stuck(reason) => SolveReport::inconclusive(route, reason),
        }
    } else {
        // Normalized parallel lines share (a, b); u = l1 / (c1 - c2) is 0 on
        // l1 and 1 on l2. The free coordinate v is x or y, whichever stays
        // independent.
        let route = Route::ParallelSeparation;
        let delta = l1.c.clone() - l2.c.clone();
        let cscale = 1.0f64.max(l1.c.to_f64().abs()).max(l2.c.to_f64().abs());
        if delta.is_negligible(cscale, tol) {
            return SolveReport::inconclusive(
                route,
                "the two support lines are numerically coincident".to_string(),
            );
        }
        let dinv = delta.recip();
        let vertical = l1.b.is_negligible(1.0, tol);
        let (vc, vd) = if vertical { (S::zero(), S::one()) } else { (S::one(), S::zero()) };
        let map = AffineMap {
            a: l1.a.clone() * dinv.clone(),
            b: l1.b.clone() * dinv.clone(),
            e: l1.c.clone() * dinv,
            c: vc,
            d: vd,
            f: S::zero(),
        };
        let Some(inv) = map.inverse() else {
            return SolveReport::inconclusive(
                route,
                "the separating coordinate change is numerically singular".to_string(),
            );
        };
        let tb = match transform_moments(residual, &map) {
            Ok(t) => t,
            Err(e) => return SolveReport::inconclusive(route, format!("transform failed: {e}")),
        };
        let (up, vp) = map.as_polys();
        let sides = (format!("{} = 0", l2.poly()), format!("{} = 0", l1.poly()));
        match separation::parallel(&tb, &up, &vp, (&sides.0, &sides.1), tol) {
            Split::Atoms(uv_atoms, sexact) => {
                let mut atoms: Vec<Atom<S>> = uv_atoms
                    .iter()
                    .map(|a| {
                        let (x, y) = inv.apply(&a.x, &a.y);
                        Atom { x, y, density: a.density.clone() }
                    })
                    .collect();
                atoms.extend(pt_atoms);
                super::conclude(beta, atoms, pts_exact && sexact, route, tol)
            }
            Split::Refuse(cert) => SolveReport::no_measure(route, cert),
            Split::Stuck(reason) => SolveReport::inconclusive(route, reason),
        }
    }
}

/// Density search over sampled component points (plus any extra points).
/// Confirms existence when feasible; inconclusive otherwise.
#[allow(clippy::too_many_arguments)]
fn sample_route<S: Scalar>(
    beta: &MomentSequence<S>,
    target: &MomentSequence<S>,
    pt_atoms: Vec<Atom<S>>,
    atoms_exact: bool,
    comps: &[BiPoly<S>],
    extra_points: &[(S, S)],
    context: &str,
    tol: f64,
) -> SolveReport<S> {
    let route = Route::CurveSampling;
    let mut samples: Vec<(S, S)> = extra_points.to_vec();
    for c in comps {
        match component_samples(c, SAMPLES_PER_COMPONENT, tol) {
            Ok(s) => samples.extend(s),
            Err(e) => {
                return SolveReport::inconclusive(
                    route,
                    join_reason(context, format!("cannot sample component {c}: {e}")),
                )
            }
        }
    }
    let b: Vec<S> = target.entries().map(|(_, v)| v.clone()).collect();
    let cols: Vec<Vec<S>> =
        samples.iter().map(|(x, y)| basis_eval(x, y, target.order())).collect();
    let rows: Vec<Vec<S>> =
        (0..b.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    match linalg::nonneg_solve(&rows, &b, tol) {
        Some(dens) => {
            let scale = target.mass().to_f64().abs().max(1.0);
            let mut atoms = pt_atoms;
            for ((x, y), d) in samples.iter().zip(dens) {
                if !d.is_negligible(scale, tol) {
                    atoms.push(Atom { x: x.clone(), y: y.clone(), density: d });
                }
            }
            super::conclude(beta, atoms, atoms_exact && S::EXACT, route, tol)
        }
        None => SolveReport::inconclusive(
            route,
            join_reason(
                context,
                "no nonnegative densities on the sampled support points; sampling cannot refute \
                 existence"
                    .to_string(),
            ),
        ),
    }
}

fn join_reason(context: &str, msg: String) -> String {
    if context.is_empty() {
        msg
    } else {
        format!("{context}; {msg}")
    }
}
