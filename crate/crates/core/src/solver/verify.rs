//! Independent check that a candidate measure reproduces the input moments.

use crate::moments::{AtomicMeasure, MomentSequence};
use crate::scalar::Scalar;

/// Relative deviation accepted when the comparison cannot be exact.
pub const VERIFY_REL_TOL: f64 = 1e-8;

/// Result of recomputing all moments of a candidate measure.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    /// The recomputed moments match the input.
    pub ok: bool,
    /// The comparison was exact equality, not a tolerance test.
    pub exact: bool,
    /// Largest absolute entry deviation (infinite when non-finite values
    /// appeared).
    pub max_deviation: f64,
}

/// Recompute every moment of `mu` up to the order of `beta` and compare.
///
/// With the exact backend and exactly represented atoms the comparison is
/// literal equality; otherwise deviations up to [`VERIFY_REL_TOL`] times the
/// magnitude of the input are accepted.
pub fn verify_measure<S: Scalar>(
    beta: &MomentSequence<S>,
    mu: &AtomicMeasure<S>,
    atoms_exact: bool,
    _tol: f64,
) -> VerifyReport {
    let recomputed = mu.moments(beta.n());
    let exact = S::EXACT && atoms_exact;
    let mut equal = true;
    let mut max_dev = 0.0f64;
    let mut scale = 1.0f64;
    for ((_, a), (_, b)) in beta.entries().zip(recomputed.entries()) {
        if a != b {
            equal = false;
        }
        let d = (a.clone() - b.clone()).to_f64().abs();
        if d.is_nan() {
            max_dev = f64::INFINITY;
        } else {
            max_dev = max_dev.max(d);
        }
        scale = scale.max(a.to_f64().abs());
    }
    let ok = if exact { equal } else { max_dev <= VERIFY_REL_TOL * scale };
    VerifyReport { ok, exact, max_deviation: max_dev }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::Atom;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_verification_requires_equality() {
        let mu = AtomicMeasure::new(vec![
            Atom { x: rat(1, 1), y: rat(2, 1), density: rat(1, 3) },
            Atom { x: rat(-1, 2), y: rat(0, 1), density: rat(2, 3) },
        ])
        .unwrap();
        let beta = mu.moments(2);
        let report = verify_measure(&beta, &mu, true, 1e-9);
        assert!(report.ok && report.exact);
        assert_eq!(report.max_deviation, 0.0);

        let other = AtomicMeasure::new(vec![Atom {
            x: rat(1, 1),
            y: rat(2, 1),
            density: rat(1, 1),
        }])
        .unwrap();
        let report = verify_measure(&beta, &other, true, 1e-9);
        assert!(!report.ok);
        assert!(report.max_deviation > 0.0);
    }

    #[test]
    fn float_verification_tolerates_roundoff() {
        let mu = AtomicMeasure::new(vec![
            Atom { x: 0.5f64, y: -1.25, density: 0.75 },
            Atom { x: 2.0, y: 3.0, density: 0.25 },
        ])
        .unwrap();
        let mut beta = mu.moments(3);
        let report = verify_measure(&beta, &mu, false, 1e-9);
        assert!(report.ok && !report.exact);

        // A relative perturbation above the acceptance threshold must fail.
        let bumped: Vec<f64> = beta.entries().map(|(_, v)| v + 1e-4).collect();
        beta = MomentSequence::new(3, bumped).unwrap();
        let report = verify_measure(&beta, &mu, false, 1e-9);
        assert!(!report.ok);
    }
}
