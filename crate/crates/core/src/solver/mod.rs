//! Decision procedure for planar truncated moment sequences.
//!
//! Given the moments `beta_{ij} = L(x^i y^j)` for `0 <= i + j <= 2n`, decide
//! whether a finitely atomic measure with nonnegative densities reproduces
//! them. The pipeline screens necessary conditions first (positive
//! semidefiniteness, recursive generation, the rank-variety inequality,
//! consistency with the column relations), then dispatches on the geometry of
//! the variety cut out by those relations: a finite variety reduces to a
//! nonnegative linear system over its points, a positive-dimensional one to
//! one-dimensional moment problems along its components.
//!
//! Every produced measure is re-verified against the input before it is
//! reported, so `Exists` is never asserted on faith; refusals carry a
//! checkable certificate.

pub mod finite;
pub mod infinite;
pub mod r8v9;
pub mod rank7;
pub mod separation;
pub mod verify;

use crate::linalg;
use crate::moments::{Atom, AtomicMeasure, MomentSequence, Monomial};
use crate::poly::bi::BiPoly;
use crate::scalar::{render_scalar, Scalar, DEFAULT_TOL};
use crate::variety::{
    analyze_matrix, consistency_check, recursively_generated, Cardinality, Consistency,
};
use std::fmt;

pub use verify::{verify_measure, VerifyReport, VERIFY_REL_TOL};

/// Tunable knobs for the decision procedure.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Relative tolerance for all numeric rank, sign, and residual decisions.
    /// The exact backend ignores it except where a float shortcut is taken.
    pub tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: DEFAULT_TOL }
    }
}

/// Overall verdict on the input sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// A verified atomic representing measure was produced.
    Exists,
    /// No representing measure exists; see the certificate.
    NoMeasure,
    /// Neither a measure nor a refusal certificate was reached.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Exists => write!(f, "measure exists"),
            Status::NoMeasure => write!(f, "no representing measure"),
            Status::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Which part of the pipeline settled the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Necessary-condition screening: positivity, recursive generation,
    /// rank versus variety size, consistency.
    Preconditions,
    /// Densities over the finitely many variety points.
    FiniteVariety { rank: usize, points: usize, flat: bool },
    /// All mass was pinned at isolated variety points.
    IsolatedMasses,
    /// One-dimensional moment problem along a single support line.
    LineSupport,
    /// Mass split between two intersecting support lines.
    CrossSeparation,
    /// Mass split between two parallel support lines.
    ParallelSeparation,
    /// Nonnegative densities over sampled points of curved components.
    CurveSampling,
    /// Full-rank moment matrix: no relations constrain the support.
    PositiveDefinite,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Preconditions => write!(f, "necessary-condition screening"),
            Route::FiniteVariety { rank, points, flat } => {
                write!(f, "finite variety (rank {rank}, {points} points")?;
                if *flat {
                    write!(f, ", flat")?;
                }
                write!(f, ")")
            }
            Route::IsolatedMasses => write!(f, "isolated-point masses"),
            Route::LineSupport => write!(f, "single-line support"),
            Route::CrossSeparation => write!(f, "intersecting-lines separation"),
            Route::ParallelSeparation => write!(f, "parallel-lines separation"),
            Route::CurveSampling => write!(f, "curve sampling"),
            Route::PositiveDefinite => write!(f, "positive definite"),
        }
    }
}

/// Evidence attached to the verdict. Refusal certificates are checkable
/// against the input sequence without rerunning the solver.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate<S: Scalar> {
    /// A measure was produced and re-verified; no refusal evidence applies.
    Measure,
    /// Direction `v` with `v' M(k) v < 0`.
    NotPsd { order: u32, direction: Vec<S> },
    /// `relation` is a column relation but `relation * multiplier`, which
    /// still fits in the matrix, is not.
    NotRecursivelyGenerated { relation: BiPoly<S>, multiplier: Monomial },
    /// The variety carries fewer points than the matrix rank.
    TooFewVarietyPoints { rank: usize, points: usize },
    /// `witness` vanishes on the whole variety yet `L(witness) = value != 0`.
    InconsistentWithVariety { witness: BiPoly<S>, value: S },
    /// The linear system assigning densities to the variety points has no
    /// nonnegative solution.
    NoNonnegativeDensities { points: Vec<(S, S)> },
    /// The uniquely determined mass at an isolated variety point is negative.
    NegativeIsolatedMass { x: S, y: S, value: S },
    /// `relation` vanishes on the support yet `L(relation) = value != 0`.
    SupportMomentViolation { relation: BiPoly<S>, value: S },
    /// One branch of a separated support admits no measure for any split.
    SideInfeasible { side: String },
    /// The admissible interval for the split parameter is empty.
    EmptyMassInterval { lower: S, upper: S },
    /// Moments restricted to a support line violate its recurrence.
    LineMomentMismatch { i: u32, j: u32, expected: S, found: S },
    /// The one-dimensional moment matrix on the support line is indefinite.
    HankelNotPsd { direction: Vec<S> },
    /// The one-dimensional moment matrix gains rank at its last extension.
    HankelRankJump { rank: usize, previous: usize },
    /// No certificate; the reason explains what blocked the decision.
    Unresolved { reason: String },
}

fn render_vec<S: Scalar>(v: &[S]) -> String {
    let parts: Vec<String> = v.iter().map(render_scalar).collect();
    format!("({})", parts.join(", "))
}

impl<S: Scalar> fmt::Display for Certificate<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Measure => write!(f, "verified atomic representing measure"),
            Certificate::NotPsd { order, direction } => write!(
                f,
                "moment matrix of order {order} is not positive semidefinite: direction {} has negative quadratic form",
                render_vec(direction)
            ),
            Certificate::NotRecursivelyGenerated { relation, multiplier } => write!(
                f,
                "column relation {relation} does not propagate: ({relation}) * {multiplier} is not a column relation"
            ),
            Certificate::TooFewVarietyPoints { rank, points } => write!(
                f,
                "rank {rank} exceeds the {points}-point variety of the column relations"
            ),
            Certificate::InconsistentWithVariety { witness, value } => write!(
                f,
                "{witness} vanishes on the support variety but has moment value {}",
                render_scalar(value)
            ),
            Certificate::NoNonnegativeDensities { points } => write!(
                f,
                "no nonnegative densities on the {} variety points reproduce the moments",
                points.len()
            ),
            Certificate::NegativeIsolatedMass { x, y, value } => write!(
                f,
                "the mass forced at isolated point ({}, {}) is {} < 0",
                render_scalar(x),
                render_scalar(y),
                render_scalar(value)
            ),
            Certificate::SupportMomentViolation { relation, value } => write!(
                f,
                "{relation} vanishes on the support but has moment value {}",
                render_scalar(value)
            ),
            Certificate::SideInfeasible { side } => {
                write!(f, "the branch {side} admits no measure for any mass split")
            }
            Certificate::EmptyMassInterval { lower, upper } => write!(
                f,
                "the split parameter needs at least {} but at most {}",
                render_scalar(lower),
                render_scalar(upper)
            ),
            Certificate::LineMomentMismatch { i, j, expected, found } => write!(
                f,
                "moment x^{i} y^{j} must equal {} on the support line, found {}",
                render_scalar(expected),
                render_scalar(found)
            ),
            Certificate::HankelNotPsd { direction } => write!(
                f,
                "restricted line moments are indefinite in direction {}",
                render_vec(direction)
            ),
            Certificate::HankelRankJump { rank, previous } => write!(
                f,
                "restricted line moments jump in rank ({previous} -> {rank}) at the final extension"
            ),
            Certificate::Unresolved { reason } => write!(f, "{reason}"),
        }
    }
}

/// Outcome of a solve run.
#[derive(Debug, Clone)]
pub struct SolveReport<S: Scalar> {
    pub status: Status,
    pub route: Route,
    pub certificate: Certificate<S>,
    /// Present when `status == Exists`; also kept on a failed verification
    /// for diagnosis.
    pub measure: Option<AtomicMeasure<S>>,
    /// Present whenever a candidate measure was checked.
    pub verification: Option<VerifyReport>,
}

impl<S: Scalar> SolveReport<S> {
    pub(crate) fn no_measure(route: Route, certificate: Certificate<S>) -> Self {
        SolveReport { status: Status::NoMeasure, route, certificate, measure: None, verification: None }
    }

    pub(crate) fn inconclusive(route: Route, reason: String) -> Self {
        SolveReport {
            status: Status::Inconclusive,
            route,
            certificate: Certificate::Unresolved { reason },
            measure: None,
            verification: None,
        }
    }
}

/// Merge candidate atoms into a measure, verify it against the input, and
/// report. A failed verification downgrades to `Inconclusive`: an unverified
/// candidate is never presented as a representing measure.
pub(crate) fn conclude<S: Scalar>(
    beta: &MomentSequence<S>,
    atoms: Vec<Atom<S>>,
    atoms_exact: bool,
    route: Route,
    tol: f64,
) -> SolveReport<S> {
    let mu = match AtomicMeasure::new_merged(atoms) {
        Ok(mu) => mu,
        Err(e) => return SolveReport::inconclusive(route, format!("candidate measure rejected: {e}")),
    };
    let report = verify_measure(beta, &mu, atoms_exact, tol);
    if report.ok {
        SolveReport {
            status: Status::Exists,
            route,
            certificate: Certificate::Measure,
            measure: Some(mu),
            verification: Some(report),
        }
    } else {
        SolveReport {
            status: Status::Inconclusive,
            route,
            certificate: Certificate::Unresolved {
                reason: format!(
                    "candidate measure failed verification (max deviation {:.3e})",
                    report.max_deviation
                ),
            },
            measure: Some(mu),
            verification: Some(report),
        }
    }
}

/// Decide whether `beta` admits an atomic representing measure.
pub fn solve<S: Scalar>(beta: &MomentSequence<S>, opts: &SolveOptions) -> SolveReport<S> {
    let tol = opts.tol;
    let mm = beta.moment_matrix();

    if let Some(direction) = linalg::neg_direction(&mm.mat, tol) {
        return SolveReport::no_measure(
            Route::Preconditions,
            Certificate::NotPsd { order: mm.n, direction },
        );
    }

    if let Err(w) = recursively_generated(&mm, tol) {
        return SolveReport::no_measure(
            Route::Preconditions,
            Certificate::NotRecursivelyGenerated { relation: w.relation, multiplier: w.multiplier },
        );
    }

    let report = analyze_matrix(&mm, tol);
    let rank = report.rank;
    if let Cardinality::Finite(v) = report.variety.cardinality() {
        if v < rank {
            return SolveReport::no_measure(
                Route::Preconditions,
                Certificate::TooFewVarietyPoints { rank, points: v },
            );
        }
    }

    if let Consistency::Inconsistent { witness, value } = consistency_check(beta, &report.variety, tol)
    {
        return SolveReport::no_measure(
            Route::Preconditions,
            Certificate::InconsistentWithVariety { witness, value },
        );
    }

    if report.variety.whole_plane {
        return SolveReport::inconclusive(
            Route::PositiveDefinite,
            "the moment matrix has no column relations; support is unconstrained and existence \
             for the positive definite case is not decided here"
                .to_string(),
        );
    }

    match report.variety.cardinality() {
        Cardinality::Finite(_) => {
            let prev = if mm.n == 0 {
                0
            } else {
                linalg::sym_rank_report(&beta.matrix(mm.n - 1), tol).rank
            };
            finite::decide(beta, &report, rank == prev, tol)
        }
        Cardinality::Infinite => infinite::decide(beta, &report, tol),
    }
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

    fn solve_exact(beta: &MomentSequence<BigRational>) -> SolveReport<BigRational> {
        solve(beta, &SolveOptions::default())
    }

    fn assert_exact_measure(beta: &MomentSequence<BigRational>, report: &SolveReport<BigRational>) {
        assert_eq!(report.status, Status::Exists, "certificate: {}", report.certificate);
        let v = report.verification.as_ref().unwrap();
        assert!(v.ok && v.exact);
        assert_eq!(report.measure.as_ref().unwrap().moments(beta.n()), *beta);
    }

    /// Line and separation routes complete a positive definite Hankel matrix;
    /// the completed measure has algebraic atom coordinates, so even the
    /// rational backend reports them approximately with `exact == false`.
    fn assert_verified_measure(report: &SolveReport<BigRational>) {
        assert_eq!(report.status, Status::Exists, "certificate: {}", report.certificate);
        let v = report.verification.as_ref().unwrap();
        assert!(v.ok, "max deviation {:e}", v.max_deviation);
    }

    /// Moments of the nine-point family: densities at
    /// (+-5,0), (+-4,+-3), (0,+-3), (0,0) linear in the parameter `s`, with
    /// all even moments fixed. Nonnegative exactly for -4/5 <= s <= 4/5.
    fn nine_point_family(s: BigRational) -> MomentSequence<BigRational> {
        let z = BigRational::zero;
        let r = |n: i64| rat(n, 1);
        let vals = vec![
            r(1),
            z(),
            z(),
            r(1),
            z(),
            r(1),
            s.clone(),
            z(),
            -s.clone(),
            z(),
            r(20),
            z(),
            r(5),
            z(),
            r(9),
            r(41) * s.clone(),
            z(),
            r(-16) * s.clone(),
            z(),
            r(-9) * s,
            z(),
            r(420),
            z(),
            r(80),
            z(),
            r(45),
            z(),
            r(81),
        ];
        MomentSequence::new(3, vals).unwrap()
    }

    #[test]
    fn zero_sequence_gets_empty_measure() {
        let beta = MomentSequence::new(3, vec![BigRational::zero(); 28]).unwrap();
        let report = solve_exact(&beta);
        assert_eq!(report.status, Status::Exists);
        assert!(report.measure.unwrap().is_empty());
    }

    #[test]
    fn single_atom_is_recovered_on_flat_route() {
        let mu = measure(&[((1, 2), (-3, 1), (2, 1))]);
        let beta = mu.moments(3);
        let report = solve_exact(&beta);
        assert!(matches!(report.route, Route::FiniteVariety { rank: 1, points: 1, flat: true }));
        assert_exact_measure(&beta, &report);
        assert_eq!(report.measure.unwrap().atoms(), mu.atoms());
    }

    #[test]
    fn negative_mass_is_refused_with_direction() {
        let mut vals = vec![BigRational::zero(); 28];
        vals[0] = rat(-1, 1);
        let beta = MomentSequence::new(3, vals).unwrap();
        let report = solve_exact(&beta);
        assert_eq!(report.status, Status::NoMeasure);
        let Certificate::NotPsd { direction, .. } = &report.certificate else {
            panic!("expected NotPsd, got {}", report.certificate)
        };
        // The witness direction must actually have a negative quadratic form.
        let m = beta.moment_matrix().mat;
        let mut form = BigRational::zero();
        for (i, vi) in direction.iter().enumerate() {
            for (j, vj) in direction.iter().enumerate() {
                form += vi * vj * m.get(i, j);
            }
        }
        assert!(form < BigRational::zero());
    }

    #[test]
    fn nine_point_boundary_parameter_has_eight_atom_measure() {
        let beta = nine_point_family(rat(4, 5));
        let report = solve_exact(&beta);
        assert!(
            matches!(report.route, Route::FiniteVariety { rank: 8, points: 9, .. }),
            "route: {}",
            report.route
        );
        assert_exact_measure(&beta, &report);
        let mu = report.measure.unwrap();
        assert_eq!(mu.len(), 8);
        let density_at = |x: i64, y: i64| {
            mu.atoms()
                .iter()
                .find(|a| a.x == rat(x, 1) && a.y == rat(y, 1))
                .map(|a| a.density.clone())
        };
        assert_eq!(density_at(5, 0), Some(rat(4, 225)));
        assert_eq!(density_at(4, 3), Some(rat(1, 320)));
        assert_eq!(density_at(-4, 3), Some(rat(41, 2880)));
        assert_eq!(density_at(-5, 0), None);
    }

    #[test]
    fn nine_point_inner_parameter_keeps_all_nine_atoms() {
        let beta = nine_point_family(rat(1, 2));
        let report = solve_exact(&beta);
        assert_exact_measure(&beta, &report);
        assert_eq!(report.measure.unwrap().len(), 9);
    }

    #[test]
    fn nine_point_outside_window_is_refused_by_densities() {
        // Positive semidefinite and recursively generated, but the unique
        // candidate densities turn negative at (-5, 0).
        let beta = nine_point_family(rat(9, 10));
        let report = solve_exact(&beta);
        assert_eq!(report.status, Status::NoMeasure, "certificate: {}", report.certificate);
        assert!(
            matches!(report.certificate, Certificate::NoNonnegativeDensities { .. }),
            "certificate: {}",
            report.certificate
        );
        assert!(matches!(report.route, Route::FiniteVariety { rank: 8, points: 9, .. }));
    }

    #[test]
    fn four_collinear_atoms_solve_on_the_line() {
        let mu = measure(&[
            ((0, 1), (1, 1), (1, 4)),
            ((1, 1), (3, 1), (1, 4)),
            ((-1, 1), (-1, 1), (1, 4)),
            ((2, 1), (5, 1), (1, 4)),
        ]);
        let beta = mu.moments(3);
        let report = solve_exact(&beta);
        assert_eq!(report.route, Route::LineSupport);
        assert_verified_measure(&report);
        assert_eq!(report.measure.unwrap().len(), 4);
    }

    #[test]
    fn truncated_relation_is_refused_as_not_recursive() {
        // Collinear moments with the top x^6 moment bumped: the matrix stays
        // psd but the line relation no longer propagates to degree 3.
        let mu = measure(&[
            ((0, 1), (1, 1), (1, 4)),
            ((1, 1), (3, 1), (1, 4)),
            ((-1, 1), (-1, 1), (1, 4)),
            ((2, 1), (5, 1), (1, 4)),
        ]);
        let base = mu.moments(3);
        let mut vals: Vec<BigRational> = base.entries().map(|(_, v)| v.clone()).collect();
        let idx = base.entries().position(|(m, _)| m.i == 6 && m.j == 0).unwrap();
        vals[idx] += rat(1, 1);
        let beta = MomentSequence::new(3, vals).unwrap();
        let report = solve_exact(&beta);
        assert_eq!(report.status, Status::NoMeasure);
        assert!(
            matches!(report.certificate, Certificate::NotRecursivelyGenerated { .. }),
            "certificate: {}",
            report.certificate
        );
    }

    #[test]
    fn crossing_lines_measure_is_separated() {
        // Four atoms on x + y = 0, four on x - y - 2 = 0.
        let mu = measure(&[
            ((1, 1), (-1, 1), (1, 8)),
            ((-1, 1), (1, 1), (1, 8)),
            ((2, 1), (-2, 1), (1, 8)),
            ((-2, 1), (2, 1), (1, 8)),
            ((0, 1), (-2, 1), (1, 8)),
            ((3, 1), (1, 1), (1, 8)),
            ((-1, 1), (-3, 1), (1, 8)),
            ((4, 1), (2, 1), (1, 8)),
        ]);
        let beta = mu.moments(3);
        let report = solve_exact(&beta);
        assert_eq!(report.route, Route::CrossSeparation, "certificate: {}", report.certificate);
        assert_verified_measure(&report);
    }

    #[test]
    fn parallel_lines_measure_is_separated() {
        let mu = measure(&[
            ((0, 1), (0, 1), (1, 8)),
            ((0, 1), (1, 1), (1, 8)),
            ((0, 1), (-1, 1), (1, 8)),
            ((0, 1), (2, 1), (1, 8)),
            ((1, 1), (0, 1), (1, 8)),
            ((1, 1), (2, 1), (1, 8)),
            ((1, 1), (-2, 1), (1, 8)),
            ((1, 1), (3, 1), (1, 8)),
        ]);
        let beta = mu.moments(3);
        let report = solve_exact(&beta);
        assert_eq!(report.route, Route::ParallelSeparation, "certificate: {}", report.certificate);
        assert_verified_measure(&report);
    }

    #[test]
    fn line_with_isolated_point_uses_elimination() {
        let mu = measure(&[
            ((1, 1), (0, 1), (1, 8)),
            ((3, 1), (0, 1), (1, 8)),
            ((-1, 1), (0, 1), (1, 8)),
            ((-2, 1), (0, 1), (1, 8)),
            ((2, 1), (5, 1), (1, 2)),
        ]);
        let beta = mu.moments(3);
        let report = solve_exact(&beta);
        assert_eq!(report.route, Route::LineSupport, "certificate: {}", report.certificate);
        assert_verified_measure(&report);
        let got = report.measure.unwrap();
        assert_eq!(got.len(), 5);
        assert!(got
            .atoms()
            .iter()
            .any(|a| a.x == rat(2, 1) && a.y == rat(5, 1) && a.density == rat(1, 2)));
    }

    #[test]
    fn full_rank_matrix_is_out_of_scope() {
        let mu = measure(&[
            ((0, 1), (0, 1), (1, 10)),
            ((1, 1), (0, 1), (1, 10)),
            ((0, 1), (1, 1), (1, 10)),
            ((-1, 1), (0, 1), (1, 10)),
            ((0, 1), (-1, 1), (1, 10)),
            ((1, 1), (1, 1), (1, 10)),
            ((-1, 1), (-1, 1), (1, 10)),
            ((2, 1), (1, 1), (1, 10)),
            ((1, 1), (2, 1), (1, 10)),
            ((-2, 1), (1, 1), (1, 10)),
        ]);
        let beta = mu.moments(3);
        let report = solve_exact(&beta);
        assert_eq!(report.status, Status::Inconclusive);
        assert_eq!(report.route, Route::PositiveDefinite);
    }

    #[test]
    fn float_circle_atoms_solve_by_sampling() {
        // Eight atoms on x^2 + y^2 = 25; the trigonometric moment matrix is
        // positive definite, so the moment vector is interior and a sampled
        // density search must succeed.
        let pts: [(f64, f64); 8] = [
            (5.0, 0.0),
            (0.0, 5.0),
            (0.0, -5.0),
            (-3.0, 4.0),
            (-3.0, -4.0),
            (-4.0, 3.0),
            (3.0, 4.0),
            (4.0, -3.0),
        ];
        let mu = AtomicMeasure::new(
            pts.iter().map(|&(x, y)| Atom { x, y, density: 0.125f64 }).collect(),
        )
        .unwrap();
        let beta = mu.moments(3);
        let report = solve(&beta, &SolveOptions::default());
        assert_eq!(report.route, Route::CurveSampling, "certificate: {}", report.certificate);
        assert_eq!(report.status, Status::Exists, "certificate: {}", report.certificate);
        assert!(report.verification.unwrap().ok);
    }
}
