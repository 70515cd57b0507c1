//! Existence over a finite variety.
//!
//! Once the column relations cut the support down to finitely many points
//! `a_1, ..., a_v`, every representing measure is a combination of point
//! masses at those points, so existence is exactly feasibility of the linear
//! system `sum_k rho_k a_k^alpha = beta_alpha` over all monomials `alpha` of
//! degree at most `2n` with every `rho_k >= 0`. This subsumes the flat and
//! extremal cases: no rank bookkeeping is needed because the density system
//! carries the full strength of the moment equations.

use super::{Certificate, Route, SolveReport};
use crate::linalg;
use crate::moments::{basis_eval, Atom, MomentSequence};
use crate::scalar::Scalar;
use crate::variety::VarietyReport;

pub fn decide<S: Scalar>(
    beta: &MomentSequence<S>,
    report: &VarietyReport<S>,
    flat: bool,
    tol: f64,
) -> SolveReport<S> {
    let pts = &report.variety.points;
    let route = Route::FiniteVariety { rank: report.rank, points: pts.len(), flat };
    let all_exact = pts.iter().all(|p| p.exact);

    let b: Vec<S> = beta.entries().map(|(_, v)| v.clone()).collect();
    let cols: Vec<Vec<S>> = pts.iter().map(|p| basis_eval(&p.x, &p.y, beta.order())).collect();
    let rows: Vec<Vec<S>> = (0..b.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();

    match linalg::nonneg_solve(&rows, &b, tol) {
        Some(dens) => {
            let scale = beta.mass().to_f64().abs().max(1.0);
            let atoms: Vec<Atom<S>> = pts
                .iter()
                .zip(dens)
                .filter(|(_, d)| !d.is_negligible(scale, tol))
                .map(|(p, d)| Atom { x: p.x.clone(), y: p.y.clone(), density: d })
                .collect();
            super::conclude(beta, atoms, all_exact, route, tol)
        }
        None => {
            if S::EXACT && !all_exact {
                return SolveReport::inconclusive(
                    route,
                    "some variety points are irrational, so the exact density system cannot \
                     certify a refusal"
                        .to_string(),
                );
            }
            SolveReport::no_measure(
                route,
                Certificate::NoNonnegativeDensities {
                    points: pts.iter().map(|p| (p.x.clone(), p.y.clone())).collect(),
                },
            )
        }
    }
}
