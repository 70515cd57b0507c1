//! Moment problems on the real line, and restrictions of planar moment data
//! to an affine line. A sequence h_0..h_{2n} has an atomic representing
//! measure exactly when its Hankel matrix is positive semidefinite and either
//! nonsingular or rank-stable against the one-size-smaller matrix; atoms are
//! roots of the generating polynomial of the first dependent column.

use crate::linalg::{self, ConsistentSolve, SymMatrix};
use crate::moments::{Atom, MomentSequence};
use crate::poly::uni::UniPoly;
use crate::poly::zeros::Line;
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HankelError {
    #[error("moment list must have odd length 2n+1, got {0}")]
    EvenLength(usize),
}

/// Real-line moments h_0..h_{2n}.
#[derive(Debug, Clone)]
pub struct HankelSeq<S: Scalar> {
    vals: Vec<S>,
}

impl<S: Scalar> HankelSeq<S> {
    pub fn new(vals: Vec<S>) -> Result<Self, HankelError> {
        if vals.is_empty() || vals.len() % 2 == 0 {
            return Err(HankelError::EvenLength(vals.len()));
        }
        Ok(HankelSeq { vals })
    }

    /// Power sums of the given weighted atoms up to degree 2n.
    pub fn from_atoms(atoms: &[(S, S)], n: usize) -> Self {
        let mut vals = Vec::with_capacity(2 * n + 1);
        for s in 0..=2 * n {
            let mut acc = S::zero();
            for (t, rho) in atoms {
                let mut p = rho.clone();
                for _ in 0..s {
                    p = p * t.clone();
                }
                acc += p;
            }
            vals.push(acc);
        }
        HankelSeq { vals }
    }

    pub fn n(&self) -> usize {
        (self.vals.len() - 1) / 2
    }

    pub fn vals(&self) -> &[S] {
        &self.vals
    }

    /// (k+1) x (k+1) matrix [h_{i+j}], requires k <= n.
    pub fn matrix(&self, k: usize) -> SymMatrix<S> {
        assert!(2 * k < self.vals.len(), "matrix order exceeds data");
        SymMatrix::from_fn(k + 1, |i, j| self.vals[i + j].clone())
    }

    pub fn rank(&self, tol: f64) -> usize {
        linalg::sym_rank_report(&self.matrix(self.n()), tol).rank
    }
}

/// One weighted atom on the line; `exact` is false when the coordinate was
/// only isolated numerically (irrational root in exact mode, or float mode).
#[derive(Debug, Clone)]
pub struct Atom1d<S> {
    pub t: S,
    pub density: S,
    pub exact: bool,
}

/// Why a Hankel sequence admits no representing measure.
#[derive(Debug, Clone)]
pub enum HankelRefusal<S> {
    /// Direction with negative quadratic form against the full matrix.
    NotPsd { direction: Vec<S> },
    /// Positive semidefinite but singular with a rank step at the last size,
    /// which no measure can produce.
    RankJump { rank: usize, previous: usize },
    /// Numerical extraction did not reproduce the data (float mode only).
    Extraction { detail: String },
}

#[derive(Debug, Clone)]
pub enum HankelOutcome<S> {
    Measure(Vec<Atom1d<S>>),
    NoMeasure(HankelRefusal<S>),
}

/// Decide existence for a line sequence and produce atoms or a refusal.
pub fn solve_hankel<S: Scalar>(h: &HankelSeq<S>, tol: f64) -> HankelOutcome<S> {
    let n = h.n();
    let full = h.matrix(n);
    if let Some(direction) = linalg::neg_direction(&full, tol) {
        return HankelOutcome::NoMeasure(HankelRefusal::NotPsd { direction });
    }
    let rank = linalg::sym_rank_report(&full, tol).rank;
    if rank == 0 {
        return HankelOutcome::Measure(Vec::new());
    }
    if rank == n + 1 {
        // Positive definite: extend flatly by two degrees with h_{2n+1} = 0
        // and the minimal h_{2n+2}, then extract n+1 atoms.
        let mut ext = h.vals.to_vec();
        ext.push(S::zero());
        let v: Vec<S> = ext[n + 1..=2 * n + 1].to_vec();
        let last = match linalg::solve(&full.rows(), &v, tol) {
            Ok(z) => linalg::dot(&v, &z),
            Err(_) => {
                return HankelOutcome::NoMeasure(HankelRefusal::Extraction {
                    detail: "positive definite matrix failed to invert".into(),
                })
            }
        };
        ext.push(last);
        let extended = HankelSeq { vals: ext };
        return extract_flat(&extended, n + 1, tol);
    }
    let prev = linalg::sym_rank_report(&h.matrix(n - 1), tol).rank;
    if rank != prev {
        return HankelOutcome::NoMeasure(HankelRefusal::RankJump { rank, previous: prev });
    }
    extract_flat(h, rank, tol)
}

/// Extract `r` atoms from a flat psd sequence: the generating polynomial
/// coefficients solve H(r-1) a = (h_r .. h_{2r-1}); its roots are the atom
/// locations and a Vandermonde solve recovers the densities.
fn extract_flat<S: Scalar>(h: &HankelSeq<S>, r: usize, tol: f64) -> HankelOutcome<S> {
    let lead = h.matrix(r - 1);
    let rhs: Vec<S> = h.vals[r..2 * r].to_vec();
    let a = match linalg::solve(&lead.rows(), &rhs, tol) {
        Ok(a) => a,
        Err(_) => {
            return HankelOutcome::NoMeasure(HankelRefusal::Extraction {
                detail: "leading block of a flat matrix was singular".into(),
            })
        }
    };
    // g(t) = t^r - a_{r-1} t^{r-1} - ... - a_0
    let mut coeffs: Vec<S> = a.iter().map(|c| -c.clone()).collect();
    coeffs.push(S::one());
    let roots = S::real_roots(&coeffs, tol);
    if roots.roots.len() != r {
        return HankelOutcome::NoMeasure(HankelRefusal::Extraction {
            detail: format!(
                "generating polynomial yielded {} distinct real roots, expected {}",
                roots.roots.len(),
                r
            ),
        });
    }
    let vrows: Vec<Vec<S>> = (0..r)
        .map(|s| {
            roots
                .roots
                .iter()
                .map(|rt| {
                    let mut p = S::one();
                    for _ in 0..s {
                        p = p * rt.value.clone();
                    }
                    p
                })
                .collect()
        })
        .collect();
    let densities = match linalg::solve(&vrows, &h.vals[0..r].to_vec(), tol) {
        Ok(d) => d,
        Err(_) => {
            return HankelOutcome::NoMeasure(HankelRefusal::Extraction {
                detail: "atom locations collided in the density solve".into(),
            })
        }
    };
    let scale = h.vals.iter().map(|v| v.to_f64().abs()).fold(1.0, f64::max);
    let mut atoms = Vec::with_capacity(r);
    for (rt, d) in roots.roots.iter().zip(densities) {
        let exact = rt.exact && S::EXACT;
        if exact && d <= S::zero() {
            return HankelOutcome::NoMeasure(HankelRefusal::Extraction {
                detail: "nonpositive density in flat extraction".into(),
            });
        }
        if !exact && (d.to_f64() <= 0.0 && !d.is_negligible(scale, tol)) {
            return HankelOutcome::NoMeasure(HankelRefusal::Extraction {
                detail: "nonpositive density in flat extraction".into(),
            });
        }
        atoms.push(Atom1d { t: rt.value.clone(), density: d, exact });
    }
    HankelOutcome::Measure(atoms)
}

/// Outcome of a minimal-entry completion.
#[derive(Debug, Clone, PartialEq)]
pub enum Completion<S> {
    Value(S),
    /// The fixed entries already rule out every completion.
    Infeasible,
}

/// Minimal h_0 making (h_0, tail...) positive semidefinite, where `tail` is
/// h_1..h_{2n}. The minimum is the quadratic form b' P^+ b with P the
/// trailing block [h_{i+j}]_{1<=i,j<=n} and b = (h_1..h_n); it exists exactly
/// when P is psd and b lies in its range.
pub fn min_first<S: Scalar>(tail: &[S], tol: f64) -> Completion<S> {
    assert!(!tail.is_empty() && tail.len() % 2 == 0, "tail must have even length 2n");
    let n = tail.len() / 2;
    let p_rows: Vec<Vec<S>> = (0..n)
        .map(|a| (0..n).map(|b| tail[a + b + 1].clone()).collect())
        .collect();
    let p = SymMatrix::from_rows(p_rows).expect("trailing Hankel block is symmetric");
    if linalg::neg_direction(&p, tol).is_some() {
        return Completion::Infeasible;
    }
    let b: Vec<S> = tail[0..n].to_vec();
    match linalg::solve_consistent(&p.rows(), &b, tol) {
        ConsistentSolve::Solution(z) => Completion::Value(linalg::dot(&b, &z)),
        ConsistentSolve::Inconsistent => Completion::Infeasible,
    }
}

/// Minimal h_{2n} completing `head` = h_0..h_{2n-1} to a psd matrix; by the
/// reversal symmetry of Hankel matrices this is `min_first` on the reversed
/// sequence.
pub fn min_last<S: Scalar>(head: &[S], tol: f64) -> Completion<S> {
    let rev: Vec<S> = head.iter().rev().cloned().collect();
    min_first(&rev, tol)
}

/// Affine parameterization of a line: t -> origin + t * dir.
#[derive(Debug, Clone)]
pub struct LineParam<S> {
    pub origin: (S, S),
    pub dir: (S, S),
}

impl<S: Scalar> LineParam<S> {
    /// Parameterize a x + b y + c = 0 by the coordinate with nonzero slope
    /// coefficient.
    pub fn from_line(line: &Line<S>, tol: f64) -> Self {
        let scale = line.a.to_f64().abs().max(1.0);
        if !line.b.is_negligible(scale, tol) {
            LineParam {
                origin: (S::zero(), -line.c.clone() / line.b.clone()),
                dir: (S::one(), -line.a.clone() / line.b.clone()),
            }
        } else {
            LineParam {
                origin: (-line.c.clone() / line.a.clone(), S::zero()),
                dir: (S::zero(), S::one()),
            }
        }
    }

    pub fn point(&self, t: &S) -> (S, S) {
        (
            self.origin.0.clone() + t.clone() * self.dir.0.clone(),
            self.origin.1.clone() + t.clone() * self.dir.1.clone(),
        )
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum RestrictError<S: Scalar> {
    #[error("moment ({i},{j}) does not match a measure on the line: expected {expected}, found {found}")]
    Mismatch { i: u32, j: u32, expected: S, found: S },
}

/// Restrict planar moments to a line: recover the 1D moments m_s from the
/// pure powers of the parameterizing coordinate and verify every remaining
/// moment against its prediction.
pub fn line_restriction<S: Scalar>(
    beta: &MomentSequence<S>,
    lp: &LineParam<S>,
    tol: f64,
) -> Result<HankelSeq<S>, RestrictError<S>> {
    let order = beta.order() as usize;
    // x(t), y(t) as polynomials in t, with power tables up to the order.
    let xt = UniPoly::from_coeffs(vec![lp.origin.0.clone(), lp.dir.0.clone()]);
    let yt = UniPoly::from_coeffs(vec![lp.origin.1.clone(), lp.dir.1.clone()]);
    let mut xpow = vec![UniPoly::constant(S::one())];
    let mut ypow = vec![UniPoly::constant(S::one())];
    for k in 1..=order {
        xpow.push(xpow[k - 1].mul(&xt));
        ypow.push(ypow[k - 1].mul(&yt));
    }

    let mut m: Vec<S> = Vec::with_capacity(order + 1);
    let along_x = !lp.dir.0.is_zero();
    for s in 0..=order {
        let (beta_s, pw) = if along_x {
            (beta.get(s as u32, 0).clone(), &xpow[s])
        } else {
            (beta.get(0, s as u32).clone(), &ypow[s])
        };
        // beta_s = sum_k c_k m_k with c_s = dir^s != 0.
        let mut acc = beta_s;
        for (k, mk) in m.iter().enumerate() {
            acc = acc - pw.coeff(k) * mk.clone();
        }
        m.push(acc / pw.coeff(s));
    }

    let scale = beta
        .entries()
        .map(|(_, v)| v.to_f64().abs())
        .fold(1.0, f64::max);
    for (mono, actual) in beta.entries() {
        let prod = xpow[mono.i as usize].mul(&ypow[mono.j as usize]);
        let mut pred = S::zero();
        for (k, mk) in m.iter().enumerate() {
            pred += prod.coeff(k) * mk.clone();
        }
        if !(pred.clone() - actual.clone()).is_negligible(scale, tol) {
            return Err(RestrictError::Mismatch {
                i: mono.i,
                j: mono.j,
                expected: pred,
                found: actual.clone(),
            });
        }
    }
    Ok(HankelSeq { vals: m })
}

/// Map line atoms back to weighted planar atoms.
pub fn planar_atoms<S: Scalar>(lp: &LineParam<S>, atoms: &[Atom1d<S>]) -> (Vec<Atom<S>>, bool) {
    let mut exact = true;
    let out = atoms
        .iter()
        .map(|a| {
            exact &= a.exact;
            let (x, y) = lp.point(&a.t);
            Atom { x, y, density: a.density.clone() }
        })
        .collect();
    (out, exact)
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

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&k| rat(k, 1)).collect()
    }

    #[test]
    fn definite_two_moment_problem_extends_to_symmetric_atoms() {
        // h = (1, 0, 1): extension pins h_3 = 0, h_4 = 1; atoms +-1 with
        // density 1/2 each.
        let h = HankelSeq::new(ints(&[1, 0, 1])).unwrap();
        match solve_hankel(&h, 1e-9) {
            HankelOutcome::Measure(atoms) => {
                assert_eq!(atoms.len(), 2);
                assert_eq!(atoms[0].t, rat(-1, 1));
                assert_eq!(atoms[1].t, rat(1, 1));
                assert_eq!(atoms[0].density, rat(1, 2));
                assert_eq!(atoms[1].density, rat(1, 2));
                assert!(atoms.iter().all(|a| a.exact));
            }
            other => panic!("expected measure, got {other:?}"),
        }
    }

    #[test]
    fn flat_sequence_recovers_original_atoms() {
        let atoms = vec![
            (rat(-1, 1), rat(1, 2)),
            (rat(0, 1), rat(1, 4)),
            (rat(2, 1), rat(1, 4)),
        ];
        let h = HankelSeq::from_atoms(&atoms, 3);
        assert_eq!(h.vals()[0], rat(1, 1));
        assert_eq!(h.rank(1e-9), 3);
        match solve_hankel(&h, 1e-9) {
            HankelOutcome::Measure(got) => {
                assert_eq!(got.len(), 3);
                for ((t, d), g) in atoms.iter().zip(&got) {
                    assert_eq!(&g.t, t);
                    assert_eq!(&g.density, d);
                    assert!(g.exact);
                }
            }
            other => panic!("expected measure, got {other:?}"),
        }
    }

    #[test]
    fn definite_sequence_reproduces_all_given_moments() {
        // Five atoms truncated at order 6: the solver returns some 4-atom
        // measure matching h_0..h_6.
        let atoms: Vec<(BigRational, BigRational)> = vec![
            (rat(-2, 1), rat(1, 5)),
            (rat(-1, 1), rat(1, 5)),
            (rat(0, 1), rat(1, 5)),
            (rat(1, 1), rat(1, 5)),
            (rat(2, 1), rat(1, 5)),
        ];
        let h = HankelSeq::from_atoms(&atoms, 3);
        assert_eq!(h.rank(1e-9), 4);
        match solve_hankel(&h, 1e-9) {
            HankelOutcome::Measure(got) => {
                assert_eq!(got.len(), 4);
                let back = HankelSeq::from_atoms(
                    &got.iter().map(|a| (a.t.clone(), a.density.clone())).collect::<Vec<_>>(),
                    3,
                );
                for (a, b) in h.vals().iter().zip(back.vals()) {
                    let diff = a.clone() - b.clone();
                    // Atom locations may be irrational; compare numerically.
                    assert!(diff.to_f64().abs() < 1e-9, "moment mismatch {diff}");
                }
            }
            other => panic!("expected measure, got {other:?}"),
        }
    }

    #[test]
    fn irrational_atoms_are_recovered_approximately_and_flagged() {
        // Measure at +-sqrt(2) with density 1/2: h = (1,0,2,0,4,0,8).
        let h = HankelSeq::new(ints(&[1, 0, 2, 0, 4, 0, 8])).unwrap();
        match solve_hankel(&h, 1e-9) {
            HankelOutcome::Measure(atoms) => {
                assert_eq!(atoms.len(), 2);
                assert!(atoms.iter().all(|a| !a.exact));
                let s2 = 2f64.sqrt();
                assert!((crate::scalar::Scalar::to_f64(&atoms[0].t) + s2).abs() < 1e-12);
                assert!((crate::scalar::Scalar::to_f64(&atoms[1].t) - s2).abs() < 1e-12);
                assert!(
                    (crate::scalar::Scalar::to_f64(&atoms[0].density) - 0.5).abs() < 1e-9
                );
            }
            other => panic!("expected measure, got {other:?}"),
        }
    }

    #[test]
    fn rank_jump_is_refused() {
        // (1,0,0,0,1): psd, rank 2 against rank 1 at the previous size.
        let h = HankelSeq::new(ints(&[1, 0, 0, 0, 1])).unwrap();
        match solve_hankel(&h, 1e-9) {
            HankelOutcome::NoMeasure(HankelRefusal::RankJump { rank, previous }) => {
                assert_eq!((rank, previous), (2, 1));
            }
            other => panic!("expected rank jump refusal, got {other:?}"),
        }
    }

    #[test]
    fn indefinite_matrix_is_refused_with_negative_direction() {
        let h = HankelSeq::new(ints(&[1, 2, 1])).unwrap();
        match solve_hankel(&h, 1e-9) {
            HankelOutcome::NoMeasure(HankelRefusal::NotPsd { direction }) => {
                let m = h.matrix(1);
                let q = m.quadratic_form(&direction);
                assert!(q < BigRational::zero());
            }
            other => panic!("expected psd refusal, got {other:?}"),
        }
    }

    #[test]
    fn minimal_mass_completions() {
        // Tail of two unit atoms at 1 and 2: minimal h_0 is the total mass 2.
        let tail = ints(&[3, 5, 9, 17, 33, 65]);
        assert_eq!(min_first(&tail, 1e-9), Completion::Value(rat(2, 1)));
        // With h_0 = 3 the full sequence gains an origin atom of mass 1.
        let h = HankelSeq::new(ints(&[3, 3, 5, 9, 17, 33, 65])).unwrap();
        match solve_hankel(&h, 1e-9) {
            HankelOutcome::Measure(atoms) => {
                let locs: Vec<BigRational> = atoms.iter().map(|a| a.t.clone()).collect();
                assert_eq!(locs, ints(&[0, 1, 2]));
                let dens: Vec<BigRational> =
                    atoms.iter().map(|a| a.density.clone()).collect();
                assert_eq!(dens, ints(&[1, 1, 1]));
            }
            other => panic!("expected measure, got {other:?}"),
        }
        // Reversal: the head of those two unit atoms at 1 and 2 has singular
        // H(2), so the minimal h_6 is the flat value 1^6 + 2^6.
        let head = ints(&[2, 3, 5, 9, 17, 33]);
        assert_eq!(min_last(&head, 1e-9), Completion::Value(rat(65, 1)));
        // An infeasible tail: negative even moment.
        let bad = ints(&[0, -1, 0, 0, 0, 0]);
        assert_eq!(min_first(&bad, 1e-9), Completion::Infeasible);
    }

    #[test]
    fn line_restriction_round_trip_and_mismatch() {
        // Measure on the line y = 1 - 2x.
        let lp = LineParam::from_line(&Line::new(rat(2, 1), rat(1, 1), rat(-1, 1), 1e-9), 1e-9);
        let atoms1d = vec![
            Atom1d { t: rat(-1, 1), density: rat(1, 3), exact: true },
            Atom1d { t: rat(1, 2), density: rat(1, 6), exact: true },
            Atom1d { t: rat(3, 1), density: rat(1, 2), exact: true },
        ];
        let (planar, exact) = planar_atoms(&lp, &atoms1d);
        assert!(exact);
        let mu = AtomicMeasure::new(planar).unwrap();
        let beta = mu.moments(3);
        let h = line_restriction(&beta, &lp, 1e-9).unwrap();
        let direct = HankelSeq::from_atoms(
            &atoms1d.iter().map(|a| (a.t.clone(), a.density.clone())).collect::<Vec<_>>(),
            3,
        );
        assert_eq!(h.vals(), direct.vals());

        // An off-line atom breaks some predicted moment.
        let mut atoms = mu.atoms().to_vec();
        atoms.push(crate::moments::Atom { x: rat(1, 1), y: rat(1, 1), density: rat(1, 1) });
        let beta_bad = AtomicMeasure::new(atoms).unwrap().moments(3);
        assert!(line_restriction(&beta_bad, &lp, 1e-9).is_err());
    }

    #[test]
    fn vertical_line_restriction() {
        let lp = LineParam::from_line(&Line::new(rat(1, 1), rat(0, 1), rat(-4, 1), 1e-9), 1e-9);
        assert_eq!(lp.origin, (rat(4, 1), rat(0, 1)));
        let atoms1d = vec![
            Atom1d { t: rat(-3, 1), density: rat(1, 2), exact: true },
            Atom1d { t: rat(3, 1), density: rat(1, 2), exact: true },
        ];
        let (planar, _) = planar_atoms(&lp, &atoms1d);
        let beta = AtomicMeasure::new(planar).unwrap().moments(3);
        let h = line_restriction(&beta, &lp, 1e-9).unwrap();
        assert_eq!(h.vals()[0], rat(1, 1));
        assert_eq!(h.vals()[2], rat(9, 1));
        match solve_hankel(&h, 1e-9) {
            HankelOutcome::Measure(atoms) => assert_eq!(atoms.len(), 2),
            other => panic!("expected measure, got {other:?}"),
        }
    }

    #[test]
    fn float_mode_matches_exact_results() {
        let h = HankelSeq::<f64>::new(vec![1.0, 0.0, 2.0, 0.0, 4.0, 0.0, 8.0]).unwrap();
        match solve_hankel(&h, 1e-9) {
            HankelOutcome::Measure(atoms) => {
                assert_eq!(atoms.len(), 2);
                let s2 = 2f64.sqrt();
                assert!((atoms[0].t + s2).abs() < 1e-7);
                assert!((atoms[1].t - s2).abs() < 1e-7);
            }
            other => panic!("expected measure, got {other:?}"),
        }
        let bad = HankelSeq::<f64>::new(vec![1.0, 2.0, 1.0]).unwrap();
        match solve_hankel(&bad, 1e-9) {
            HankelOutcome::NoMeasure(HankelRefusal::NotPsd { direction }) => {
                let q = bad.matrix(1).quadratic_form(&direction);
                assert!(q < 0.0);
            }
            other => panic!("expected psd refusal, got {other:?}"),
        }
        let tail = vec![3.0, 5.0, 9.0, 17.0, 33.0, 65.0];
        match min_first(&tail, 1e-9) {
            Completion::Value(v) => assert!((v - 2.0).abs() < 1e-9),
            other => panic!("expected value, got {other:?}"),
        }
    }
}
