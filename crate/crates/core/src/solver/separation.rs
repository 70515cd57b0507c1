//! Mass separation across a pair of support lines.
//!
//! Both routines work in coordinates where the pair is in normal form:
//! `cross` assumes the support relation `u v = 0` (the two coordinate axes),
//! `parallel` assumes `u^2 = u` (the lines `u = 0` and `u = 1`). Each branch
//! line then carries a one-dimensional moment sequence that is fully known
//! except for one shared parameter: the split of the total mass for `cross`,
//! the split of the top `v`-moment for `parallel`. Positivity of each branch
//! pins the parameter to an interval whose endpoints make one branch flat, so
//! existence is decided by solving the two one-dimensional problems at the
//! interval endpoints (and midpoint, for robustness).
//!
//! The polynomials `u_poly` and `v_poly` express the normal-form coordinates
//! in the original ones; they appear only inside certificates so that
//! refusals stay checkable against the untransformed input.

use super::Certificate;
use crate::hankel::{solve_hankel, HankelOutcome, HankelSeq, Completion, min_first, min_last};
use crate::moments::{Atom, MomentSequence};
use crate::poly::bi::BiPoly;
use crate::scalar::Scalar;

/// Outcome of a separation attempt, in the normal-form coordinates.
#[derive(Debug, Clone)]
pub enum Split<S: Scalar> {
    /// Candidate atoms (not yet verified) and whether they are exact.
    Atoms(Vec<Atom<S>>, bool),
    /// No measure exists; sound refusal.
    Refuse(Certificate<S>),
    /// Neither found nor refuted.
    Stuck(String),
}

fn moment_scale<S: Scalar>(beta: &MomentSequence<S>) -> f64 {
    beta.entries().fold(1.0f64, |m, (_, v)| m.max(v.to_f64().abs()))
}

fn candidate_values<S: Scalar>(lo: &S, hi: &S) -> Vec<S> {
    let mut out = vec![lo.clone()];
    if hi != lo {
        out.push(hi.clone());
        out.push((lo.clone() + hi.clone()) / S::from_i64(2));
    }
    out
}

/// Decide a sequence supported on `u v = 0`.
///
/// `sides.0` describes the branch `v = 0` (carrying the `u`-moments),
/// `sides.1` the branch `u = 0`, both phrased in original coordinates.
pub fn cross<S: Scalar>(
    beta: &MomentSequence<S>,
    u_poly: &BiPoly<S>,
    v_poly: &BiPoly<S>,
    sides: (&str, &str),
    tol: f64,
) -> Split<S> {
    let order = beta.order();
    let scale = moment_scale(beta);

    // Support on the axes kills every mixed moment.
    for (m, val) in beta.entries() {
        if m.i >= 1 && m.j >= 1 && !val.is_negligible(scale, tol) {
            let relation = u_poly.pow(m.i).mul(&v_poly.pow(m.j));
            return Split::Refuse(Certificate::SupportMomentViolation {
                relation,
                value: val.clone(),
            });
        }
    }

    let tail_u: Vec<S> = (1..=order).map(|k| beta.get(k, 0).clone()).collect();
    let tail_v: Vec<S> = (1..=order).map(|k| beta.get(0, k).clone()).collect();

    // The mass w on {v = 0} must make (w, tail_u) completable, and leave
    // beta_00 - w enough for the other branch.
    let wmin = match min_first(&tail_u, tol) {
        Completion::Value(v) => v,
        Completion::Infeasible => {
            return Split::Refuse(Certificate::SideInfeasible { side: sides.0.to_string() })
        }
    };
    let vmin = match min_first(&tail_v, tol) {
        Completion::Value(v) => v,
        Completion::Infeasible => {
            return Split::Refuse(Certificate::SideInfeasible { side: sides.1.to_string() })
        }
    };
    let wmax = beta.mass().clone() - vmin;
    if wmin > wmax {
        let gap = wmin.clone() - wmax.clone();
        if !gap.is_negligible(scale, tol) {
            return Split::Refuse(Certificate::EmptyMassInterval { lower: wmin, upper: wmax });
        }
    }

    for w in candidate_values(&wmin, &wmax) {
        let mut hu = vec![w.clone()];
        hu.extend(tail_u.iter().cloned());
        let mut hv = vec![beta.mass().clone() - w];
        hv.extend(tail_v.iter().cloned());
        let hu = HankelSeq::new(hu).expect("odd length by construction");
        let hv = HankelSeq::new(hv).expect("odd length by construction");
        if let (HankelOutcome::Measure(au), HankelOutcome::Measure(av)) =
            (solve_hankel(&hu, tol), solve_hankel(&hv, tol))
        {
            let mut exact = true;
            let mut atoms = Vec::new();
            for a in au {
                exact &= a.exact;
                atoms.push(Atom { x: a.t, y: S::zero(), density: a.density });
            }
            for a in av {
                exact &= a.exact;
                atoms.push(Atom { x: S::zero(), y: a.t, density: a.density });
            }
            return Split::Atoms(atoms, exact);
        }
    }
    Split::Stuck("no admissible mass split yields measures on both branch lines".to_string())
}

/// Decide a sequence supported on `u^2 = u`, the parallel lines
/// `u = 0` and `u = 1`.
///
/// `sides.0` describes the branch `u = 1`, `sides.1` the branch `u = 0`.
pub fn parallel<S: Scalar>(
    beta: &MomentSequence<S>,
    u_poly: &BiPoly<S>,
    v_poly: &BiPoly<S>,
    sides: (&str, &str),
    tol: f64,
) -> Split<S> {
    let order = beta.order();
    let scale = moment_scale(beta);

    // On {u = 0} union {u = 1} the function u^i equals u for every i >= 1.
    for (m, val) in beta.entries() {
        if m.i >= 2 {
            let diff = val.clone() - beta.get(1, m.j).clone();
            if !diff.is_negligible(scale, tol) {
                let relation = u_poly.pow(m.i).sub(u_poly).mul(&v_poly.pow(m.j));
                return Split::Refuse(Certificate::SupportMomentViolation {
                    relation,
                    value: diff,
                });
            }
        }
    }

    // v-moments of the {u = 1} branch are beta_{1j}; the {u = 0} branch gets
    // the rest. Only the top v-moment of each branch is undetermined, and the
    // two tops must sum to beta_{0,2n}.
    let c: Vec<S> = (0..order).map(|j| beta.get(1, j).clone()).collect();
    let d: Vec<S> = (0..order).map(|j| beta.get(0, j).clone() - c[j as usize].clone()).collect();
    let top = beta.get(0, order).clone();

    let q1 = match min_last(&c, tol) {
        Completion::Value(v) => v,
        Completion::Infeasible => {
            return Split::Refuse(Certificate::SideInfeasible { side: sides.0.to_string() })
        }
    };
    let dmin = match min_last(&d, tol) {
        Completion::Value(v) => v,
        Completion::Infeasible => {
            return Split::Refuse(Certificate::SideInfeasible { side: sides.1.to_string() })
        }
    };
    let q0 = top.clone() - dmin;
    if q1 > q0 {
        let gap = q1.clone() - q0.clone();
        if !gap.is_negligible(scale, tol) {
            return Split::Refuse(Certificate::EmptyMassInterval { lower: q1, upper: q0 });
        }
    }

    for t in candidate_values(&q1, &q0) {
        let mut h1 = c.clone();
        h1.push(t.clone());
        let mut h0 = d.clone();
        h0.push(top.clone() - t);
        let h1 = HankelSeq::new(h1).expect("odd length by construction");
        let h0 = HankelSeq::new(h0).expect("odd length by construction");
        if let (HankelOutcome::Measure(a1), HankelOutcome::Measure(a0)) =
            (solve_hankel(&h1, tol), solve_hankel(&h0, tol))
        {
            let mut exact = true;
            let mut atoms = Vec::new();
            for a in a1 {
                exact &= a.exact;
                atoms.push(Atom { x: S::one(), y: a.t, density: a.density });
            }
            for a in a0 {
                exact &= a.exact;
                atoms.push(Atom { x: S::zero(), y: a.t, density: a.density });
            }
            return Split::Atoms(atoms, exact);
        }
    }
    Split::Stuck("no admissible top-moment split yields measures on both lines".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::AtomicMeasure;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn axes_polys() -> (BiPoly<BigRational>, BiPoly<BigRational>) {
        (BiPoly::x(), BiPoly::y())
    }

    fn measure(atoms: &[((i64, i64), (i64, i64), (i64, i64))]) -> AtomicMeasure<BigRational> {
        AtomicMeasure::new(
            atoms
                .iter()
                .map(|((xn, xd), (yn, yd), (dn, dd))| Atom {
                    x: rat(*xn, *xd),
                    y: rat(*yn, *yd),
                    density: rat(*dn, *dd),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn cross_recovers_axis_atoms() {
        let mu = measure(&[
            ((1, 1), (0, 1), (1, 2)),
            ((2, 1), (0, 1), (1, 3)),
            ((0, 1), (1, 1), (1, 6)),
        ]);
        let beta = mu.moments(3);
        let (u, v) = axes_polys();
        match cross(&beta, &u, &v, ("y = 0", "x = 0"), 1e-9) {
            Split::Atoms(atoms, exact) => {
                assert!(exact);
                let got = AtomicMeasure::new_merged(atoms).unwrap();
                assert_eq!(got.moments(3), beta);
            }
            other => panic!("expected atoms, got {other:?}"),
        }
    }

    #[test]
    fn cross_splits_origin_mass() {
        // An origin atom can be assigned to either axis; the recovered
        // measure must still reproduce the moments.
        let mu = measure(&[
            ((0, 1), (0, 1), (1, 4)),
            ((1, 1), (0, 1), (1, 2)),
            ((0, 1), (-2, 1), (1, 4)),
        ]);
        let beta = mu.moments(3);
        let (u, v) = axes_polys();
        match cross(&beta, &u, &v, ("y = 0", "x = 0"), 1e-9) {
            Split::Atoms(atoms, _) => {
                let got = AtomicMeasure::new_merged(atoms).unwrap();
                assert_eq!(got.moments(3), beta);
            }
            other => panic!("expected atoms, got {other:?}"),
        }
    }

    #[test]
    fn cross_refuses_mixed_moment_and_short_mass() {
        let mu = measure(&[((1, 1), (0, 1), (1, 2)), ((0, 1), (1, 1), (1, 2))]);
        let mut beta = mu.moments(3);
        let (u, v) = axes_polys();

        // A nonzero mixed moment contradicts support on the axes.
        let mut vals: Vec<BigRational> = beta.entries().map(|(_, c)| c.clone()).collect();
        let idx = beta
            .entries()
            .position(|(m, _)| m.i == 1 && m.j == 1)
            .unwrap();
        vals[idx] = rat(1, 7);
        let doctored = MomentSequence::new(3, vals).unwrap();
        match cross(&doctored, &u, &v, ("y = 0", "x = 0"), 1e-9) {
            Split::Refuse(Certificate::SupportMomentViolation { relation, value }) => {
                assert_eq!(value, rat(1, 7));
                assert_eq!(relation, BiPoly::x().mul(&BiPoly::y()));
            }
            other => panic!("expected violation, got {other:?}"),
        }

        // Shrinking the total mass below the two branch minima empties the
        // admissible interval.
        let mut vals: Vec<BigRational> = beta.entries().map(|(_, c)| c.clone()).collect();
        vals[0] = rat(9, 10);
        beta = MomentSequence::new(3, vals).unwrap();
        match cross(&beta, &u, &v, ("y = 0", "x = 0"), 1e-9) {
            Split::Refuse(Certificate::EmptyMassInterval { lower, upper }) => {
                assert_eq!(lower, rat(1, 2));
                assert_eq!(upper, rat(2, 5));
            }
            other => panic!("expected empty interval, got {other:?}"),
        }
    }

    #[test]
    fn parallel_recovers_two_line_atoms() {
        let mu = measure(&[
            ((1, 1), (2, 1), (1, 2)),
            ((1, 1), (-1, 1), (1, 4)),
            ((0, 1), (3, 1), (1, 4)),
        ]);
        let beta = mu.moments(3);
        let (u, v) = axes_polys();
        match parallel(&beta, &u, &v, ("x = 1", "x = 0"), 1e-9) {
            Split::Atoms(atoms, exact) => {
                assert!(exact);
                let got = AtomicMeasure::new_merged(atoms).unwrap();
                assert_eq!(got.moments(3), beta);
            }
            other => panic!("expected atoms, got {other:?}"),
        }
    }

    #[test]
    fn parallel_refuses_unsupported_moments() {
        // beta_{2j} != beta_{1j} cannot happen on x in {0, 1}.
        let mu = measure(&[((1, 1), (1, 1), (1, 2)), ((0, 1), (2, 1), (1, 2))]);
        let beta = mu.moments(3);
        let mut vals: Vec<BigRational> = beta.entries().map(|(_, c)| c.clone()).collect();
        let idx = beta
            .entries()
            .position(|(m, _)| m.i == 2 && m.j == 0)
            .unwrap();
        vals[idx] += rat(1, 5);
        let doctored = MomentSequence::new(3, vals).unwrap();
        let (u, v) = axes_polys();
        match parallel(&doctored, &u, &v, ("x = 1", "x = 0"), 1e-9) {
            Split::Refuse(Certificate::SupportMomentViolation { relation, value }) => {
                assert_eq!(value, rat(1, 5));
                let expected = BiPoly::x().mul(&BiPoly::x()).sub(&BiPoly::x());
                assert_eq!(relation, expected);
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn float_cross_matches_exact_split() {
        let mu = measure(&[
            ((1, 1), (0, 1), (1, 2)),
            ((2, 1), (0, 1), (1, 3)),
            ((0, 1), (1, 1), (1, 6)),
        ]);
        let beta = mu.moments(3);
        let vals: Vec<f64> = beta.entries().map(|(_, v)| v.to_f64()).collect();
        let fbeta = MomentSequence::new(3, vals).unwrap();
        match cross(&fbeta, &BiPoly::x(), &BiPoly::y(), ("y = 0", "x = 0"), 1e-9) {
            Split::Atoms(atoms, _) => {
                let got = AtomicMeasure::new_merged(atoms).unwrap();
                let back = got.moments(3);
                for ((_, a), (_, b)) in fbeta.entries().zip(back.entries()) {
                    assert!((a - b).abs() < 1e-8, "moment mismatch: {a} vs {b}");
                }
                assert!(!got.total_mass().is_zero());
            }
            other => panic!("expected atoms, got {other:?}"),
        }
    }
}
