//! Planar moment sequences and their moment matrices.
//!
//! A degree-2n moment sequence assigns a value to every monomial `x^i y^j`
//! with `i + j <= 2n`. Its moment matrix `M(n)` is indexed by the monomials of
//! degree at most `n` in graded order (`1, x, y, x^2, xy, y^2, ...`); the
//! entry at `(p, q)` is the moment of the product of the two basis monomials.
//! An atomic measure is a finite list of weighted points; the solver's task is
//! to connect the two representations.

use std::fmt;

use thiserror::Error;

use crate::linalg::SymMatrix;
use crate::poly::bi::BiPoly;
use crate::scalar::{approx_eq, Scalar, POINT_MERGE_TOL};

/// Monomial `x^i y^j`. Ordered by total degree, then by the `y` exponent, so
/// the degree-3 basis reads `1, x, y, x^2, xy, y^2, x^3, x^2 y, x y^2, y^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub fn new(i: u32, j: u32) -> Self {
        Monomial { i, j }
    }

    pub fn deg(&self) -> u32 {
        self.i + self.j
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.i + other.i, self.j + other.j)
    }

    /// Position in the graded basis: `deg (deg + 1) / 2 + j`.
    pub fn index(&self) -> usize {
        let d = self.deg() as usize;
        d * (d + 1) / 2 + self.j as usize
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.deg(), self.j).cmp(&(other.deg(), other.j))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.j) {
            (0, 0) => write!(f, "1"),
            _ => {
                let mut parts = Vec::new();
                match self.i {
                    0 => {}
                    1 => parts.push("x".to_string()),
                    i => parts.push(format!("x^{i}")),
                }
                match self.j {
                    0 => {}
                    1 => parts.push("y".to_string()),
                    j => parts.push(format!("y^{j}")),
                }
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

/// Evaluations of the degree-`d` monomial basis at a point, in graded order.
pub fn basis_eval<S: Scalar>(x: &S, y: &S, d: u32) -> Vec<S> {
    let mut xp = vec![S::one()];
    let mut yp = vec![S::one()];
    for k in 1..=d as usize {
        let a = xp[k - 1].clone() * x.clone();
        let b = yp[k - 1].clone() * y.clone();
        xp.push(a);
        yp.push(b);
    }
    monomial_basis(d)
        .into_iter()
        .map(|m| xp[m.i as usize].clone() * yp[m.j as usize].clone())
        .collect()
}

/// All monomials of total degree at most `d`, in graded order.
pub fn monomial_basis(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for deg in 0..=d {
        for j in 0..=deg {
            out.push(Monomial::new(deg - j, j));
        }
    }
    out
}

#[derive(Debug, Error, PartialEq)]
pub enum MomentError {
    #[error("moment order must be even and at least 2, got {0}")]
    BadOrder(u32),
    #[error("expected {expected} moments for order {order}, got {got}")]
    WrongLength { order: u32, expected: usize, got: usize },
    #[error("missing moment for x^{0} y^{1}")]
    MissingEntry(u32, u32),
    #[error("duplicate moment for x^{0} y^{1}")]
    DuplicateEntry(u32, u32),
    #[error("polynomial degree {deg} exceeds moment order {order}")]
    DegreeTooHigh { deg: u32, order: u32 },
    #[error("atom density must be positive")]
    NonpositiveDensity,
    #[error("duplicate atom location")]
    DuplicateAtom,
}

/// Full table of moments up to order `2n`, stored in graded-basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence<S> {
    n: u32,
    vals: Vec<S>,
}

impl<S: Scalar> MomentSequence<S> {
    /// Builds from values listed in graded order for all `i + j <= 2n`.
    pub fn new(n: u32, vals: Vec<S>) -> Result<Self, MomentError> {
        if n == 0 {
            return Err(MomentError::BadOrder(0));
        }
        let order = 2 * n;
        let expected = ((order + 1) * (order + 2) / 2) as usize;
        if vals.len() != expected {
            return Err(MomentError::WrongLength { order, expected, got: vals.len() });
        }
        Ok(MomentSequence { n, vals })
    }

    /// Builds from `(i, j, value)` entries; every moment must appear once.
    pub fn from_entries(
        n: u32,
        entries: impl IntoIterator<Item = (u32, u32, S)>,
    ) -> Result<Self, MomentError> {
        if n == 0 {
            return Err(MomentError::BadOrder(0));
        }
        let order = 2 * n;
        let expected = ((order + 1) * (order + 2) / 2) as usize;
        let mut slots: Vec<Option<S>> = vec![None; expected];
        for (i, j, v) in entries {
            if i + j > order {
                return Err(MomentError::DegreeTooHigh { deg: i + j, order });
            }
            let idx = Monomial::new(i, j).index();
            if slots[idx].is_some() {
                return Err(MomentError::DuplicateEntry(i, j));
            }
            slots[idx] = Some(v);
        }
        let mut vals = Vec::with_capacity(expected);
        for (idx, slot) in slots.into_iter().enumerate() {
            match slot {
                Some(v) => vals.push(v),
                None => {
                    let m = monomial_basis(order)[idx];
                    return Err(MomentError::MissingEntry(m.i, m.j));
                }
            }
        }
        Ok(MomentSequence { n, vals })
    }

    /// Half-degree `n`; the sequence covers moments through order `2n`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        2 * self.n
    }

    pub fn get(&self, i: u32, j: u32) -> &S {
        assert!(i + j <= self.order(), "moment x^{i} y^{j} out of range");
        &self.vals[Monomial::new(i, j).index()]
    }

    pub fn mass(&self) -> &S {
        self.get(0, 0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Monomial, &S)> {
        monomial_basis(self.order()).into_iter().zip(self.vals.iter())
    }

    /// Entrywise difference; both sequences must share the same order.
    pub fn minus(&self, other: &MomentSequence<S>) -> MomentSequence<S> {
        assert_eq!(self.n, other.n);
        let vals = self
            .vals
            .iter()
            .zip(other.vals.iter())
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        MomentSequence { n: self.n, vals }
    }

    /// Moment matrix `M(k)` for any `k <= n`.
    pub fn matrix(&self, k: u32) -> SymMatrix<S> {
        assert!(k <= self.n);
        let basis = monomial_basis(k);
        SymMatrix::from_fn(basis.len(), |p, q| {
            let m = basis[p].mul(&basis[q]);
            self.get(m.i, m.j).clone()
        })
    }

    /// The full moment matrix `M(n)`.
    pub fn moment_matrix(&self) -> MomentMatrix<S> {
        MomentMatrix {
            n: self.n,
            basis: monomial_basis(self.n),
            mat: self.matrix(self.n),
        }
    }

    /// Applies the Riesz functional: the linear extension of
    /// `x^i y^j -> beta_{ij}` to polynomials of degree at most `2n`.
    pub fn riesz(&self, p: &BiPoly<S>) -> Result<S, MomentError> {
        if let Some(d) = p.total_degree() {
            if d > self.order() {
                return Err(MomentError::DegreeTooHigh { deg: d, order: self.order() });
            }
        }
        let mut acc = S::zero();
        for (m, c) in p.terms() {
            acc += c.clone() * self.get(m.i, m.j).clone();
        }
        Ok(acc)
    }
}

/// Moment matrix with its monomial labels.
#[derive(Debug, Clone)]
pub struct MomentMatrix<S> {
    pub n: u32,
    pub basis: Vec<Monomial>,
    pub mat: SymMatrix<S>,
}

impl<S: Scalar> MomentMatrix<S> {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    /// Interprets a kernel (or column-relation) vector as the polynomial
    /// `sum_k v[k] * basis[k]`.
    pub fn vector_poly(&self, v: &[S]) -> BiPoly<S> {
        assert_eq!(v.len(), self.basis.len());
        let mut p = BiPoly::zero();
        for (m, c) in self.basis.iter().zip(v) {
            p.add_term(*m, c.clone());
        }
        p
    }
}

/// Point mass: location and positive density.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom<S> {
    pub x: S,
    pub y: S,
    pub density: S,
}

/// Finitely atomic measure. Atoms are kept sorted by location and are
/// pairwise distinct with strictly positive densities.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure<S> {
    atoms: Vec<Atom<S>>,
}

impl<S: Scalar> AtomicMeasure<S> {
    pub fn empty() -> Self {
        AtomicMeasure { atoms: Vec::new() }
    }

    /// Validates densities and distinctness. Distinctness is exact equality
    /// in exact mode and a relative merge tolerance in float mode.
    pub fn new(mut atoms: Vec<Atom<S>>) -> Result<Self, MomentError> {
        for a in &atoms {
            if a.density <= S::zero() {
                return Err(MomentError::NonpositiveDensity);
            }
        }
        sort_atoms(&mut atoms);
        for w in atoms.windows(2) {
            if same_point(&w[0], &w[1]) {
                return Err(MomentError::DuplicateAtom);
            }
        }
        Ok(AtomicMeasure { atoms })
    }

    /// Merges atoms at coinciding locations and drops zero densities;
    /// negative densities still fail.
    pub fn new_merged(atoms: Vec<Atom<S>>) -> Result<Self, MomentError> {
        let mut sorted = atoms;
        sort_atoms(&mut sorted);
        let mut merged: Vec<Atom<S>> = Vec::new();
        for a in sorted {
            match merged.last_mut() {
                Some(prev) if same_point(prev, &a) => prev.density += a.density,
                _ => merged.push(a),
            }
        }
        merged.retain(|a| !a.density.is_zero() && !a.density.is_negligible(1.0, 1e-15));
        Self::new(merged)
    }

    pub fn atoms(&self) -> &[Atom<S>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> S {
        let mut acc = S::zero();
        for a in &self.atoms {
            acc += a.density.clone();
        }
        acc
    }

    /// Moments of this measure through order `2n`.
    pub fn moments(&self, n: u32) -> MomentSequence<S> {
        let basis = monomial_basis(2 * n);
        let vals = basis
            .iter()
            .map(|m| {
                let mut acc = S::zero();
                for a in &self.atoms {
                    let mut t = a.density.clone();
                    for _ in 0..m.i {
                        t *= a.x.clone();
                    }
                    for _ in 0..m.j {
                        t *= a.y.clone();
                    }
                    acc += t;
                }
                acc
            })
            .collect();
        MomentSequence::new(n, vals).expect("basis length matches")
    }
}

fn sort_atoms<S: Scalar>(atoms: &mut [Atom<S>]) {
    atoms.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.y.partial_cmp(&b.y).unwrap_or(std::cmp::Ordering::Equal))
    });
}

fn same_point<S: Scalar>(a: &Atom<S>, b: &Atom<S>) -> bool {
    if S::EXACT {
        a.x == b.x && a.y == b.y
    } else {
        let scale = a.x.to_f64().abs().max(a.y.to_f64().abs());
        approx_eq(&a.x, &b.x, scale, POINT_MERGE_TOL) && approx_eq(&a.y, &b.y, scale, POINT_MERGE_TOL)
    }
}

/// Invertible change of coordinates `(x, y) -> (a x + b y + e, c x + d y + f)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap<S> {
    pub a: S,
    pub b: S,
    pub e: S,
    pub c: S,
    pub d: S,
    pub f: S,
}

impl<S: Scalar> AffineMap<S> {
    pub fn identity() -> Self {
        AffineMap {
            a: S::one(),
            b: S::zero(),
            e: S::zero(),
            c: S::zero(),
            d: S::one(),
            f: S::zero(),
        }
    }

    pub fn det(&self) -> S {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn apply(&self, x: &S, y: &S) -> (S, S) {
        (
            self.a.clone() * x.clone() + self.b.clone() * y.clone() + self.e.clone(),
            self.c.clone() * x.clone() + self.d.clone() * y.clone() + self.f.clone(),
        )
    }

    /// Component polynomials `(phi1, phi2)`.
    pub fn as_polys(&self) -> (BiPoly<S>, BiPoly<S>) {
        let p1 = BiPoly::from_terms([(1, 0, self.a.clone()), (0, 1, self.b.clone()), (0, 0, self.e.clone())]);
        let p2 = BiPoly::from_terms([(1, 0, self.c.clone()), (0, 1, self.d.clone()), (0, 0, self.f.clone())]);
        (p1, p2)
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let inv = det.recip();
        let a = self.d.clone() * inv.clone();
        let b = -self.b.clone() * inv.clone();
        let c = -self.c.clone() * inv.clone();
        let d = self.a.clone() * inv.clone();
        let e = -(a.clone() * self.e.clone() + b.clone() * self.f.clone());
        let f = -(c.clone() * self.e.clone() + d.clone() * self.f.clone());
        Some(AffineMap { a, b, e, c, d, f })
    }

    /// `self` after `first`: the map `p -> self(first(p))`.
    pub fn compose(&self, first: &Self) -> Self {
        AffineMap {
            a: self.a.clone() * first.a.clone() + self.b.clone() * first.c.clone(),
            b: self.a.clone() * first.b.clone() + self.b.clone() * first.d.clone(),
            e: self.a.clone() * first.e.clone() + self.b.clone() * first.f.clone() + self.e.clone(),
            c: self.c.clone() * first.a.clone() + self.d.clone() * first.c.clone(),
            d: self.c.clone() * first.b.clone() + self.d.clone() * first.d.clone(),
            f: self.c.clone() * first.e.clone() + self.d.clone() * first.f.clone() + self.f.clone(),
        }
    }

    /// Transforms an atomic measure by mapping each atom location.
    pub fn push_measure(&self, mu: &AtomicMeasure<S>) -> AtomicMeasure<S> {
        let atoms = mu
            .atoms()
            .iter()
            .map(|at| {
                let (x, y) = self.apply(&at.x, &at.y);
                Atom { x, y, density: at.density.clone() }
            })
            .collect();
        AtomicMeasure::new(atoms).expect("affine image preserves distinctness")
    }
}

/// Pushforward of a moment sequence under an affine map: the new `beta_{ij}`
/// is the Riesz value of `phi1^i phi2^j`, which has degree `i + j`, so no
/// information beyond order `2n` is needed.
pub fn transform_moments<S: Scalar>(
    beta: &MomentSequence<S>,
    map: &AffineMap<S>,
) -> Result<MomentSequence<S>, MomentError> {
    let (p1, p2) = map.as_polys();
    let order = beta.order();
    let basis = monomial_basis(order);
    let mut vals = Vec::with_capacity(basis.len());
    // Reuse power tables rather than recomputing phi^i from scratch.
    let max_pow = order as usize;
    let mut pow1 = Vec::with_capacity(max_pow + 1);
    let mut pow2 = Vec::with_capacity(max_pow + 1);
    pow1.push(BiPoly::constant(S::one()));
    pow2.push(BiPoly::constant(S::one()));
    for k in 1..=max_pow {
        let a = pow1[k - 1].mul(&p1);
        let b = pow2[k - 1].mul(&p2);
        pow1.push(a);
        pow2.push(b);
    }
    for m in &basis {
        let p = pow1[m.i as usize].mul(&pow2[m.j as usize]);
        vals.push(beta.riesz(&p)?);
    }
    MomentSequence::new(beta.n(), vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn qi(v: i64) -> Q {
        <Q as Scalar>::from_i64(v)
    }

    fn qr(n: i64, d: i64) -> Q {
        <Q as Scalar>::from_ratio(n, d)
    }

    #[test]
    fn basis_order_and_index() {
        let b = monomial_basis(3);
        let expect = [
            (0, 0),
            (1, 0),
            (0, 1),
            (2, 0),
            (1, 1),
            (0, 2),
            (3, 0),
            (2, 1),
            (1, 2),
            (0, 3),
        ];
        assert_eq!(b.len(), 10);
        for (k, (i, j)) in expect.iter().enumerate() {
            assert_eq!(b[k], Monomial::new(*i, *j));
            assert_eq!(b[k].index(), k);
        }
        assert_eq!(Monomial::new(2, 1).to_string(), "x^2*y");
        assert_eq!(Monomial::new(0, 0).to_string(), "1");
    }

    #[test]
    fn moment_matrix_of_point_mass() {
        let mu = AtomicMeasure::new(vec![Atom { x: qi(1), y: qi(2), density: qi(3) }]).unwrap();
        let beta = mu.moments(1);
        assert_eq!(*beta.get(0, 0), qi(3));
        assert_eq!(*beta.get(1, 1), qi(6));
        let m = beta.matrix(1);
        // M(1) = 3 * v v^T with v = (1, 1, 2).
        let v = [qi(1), qi(1), qi(2)];
        for p in 0..3 {
            for q in 0..3 {
                assert_eq!(*m.get(p, q), qi(3) * v[p].clone() * v[q].clone());
            }
        }
        assert_eq!(crate::linalg::rank_rows(&m.rows(), 1e-9), 1);
    }

    #[test]
    fn riesz_integrates_polynomials() {
        let mu = AtomicMeasure::new(vec![
            Atom { x: qi(0), y: qi(1), density: qr(1, 2) },
            Atom { x: qi(2), y: qi(-1), density: qi(2) },
        ])
        .unwrap();
        let beta = mu.moments(2);
        let p = BiPoly::from_terms([(2, 1, qi(1)), (0, 0, qi(-4)), (1, 1, qi(5))]);
        // Direct integral: sum rho * p(x, y).
        let direct = qr(1, 2) * p.eval(&qi(0), &qi(1)) + qi(2) * p.eval(&qi(2), &qi(-1));
        assert_eq!(beta.riesz(&p).unwrap(), direct);
        let too_big = BiPoly::monomial(5, 0, qi(1));
        assert!(matches!(beta.riesz(&too_big), Err(MomentError::DegreeTooHigh { .. })));
    }

    #[test]
    fn measure_validation() {
        assert!(matches!(
            AtomicMeasure::new(vec![Atom { x: qi(0), y: qi(0), density: qi(0) }]),
            Err(MomentError::NonpositiveDensity)
        ));
        assert!(matches!(
            AtomicMeasure::new(vec![
                Atom { x: qi(1), y: qi(1), density: qi(1) },
                Atom { x: qi(1), y: qi(1), density: qi(2) },
            ]),
            Err(MomentError::DuplicateAtom)
        ));
        let merged = AtomicMeasure::new_merged(vec![
            Atom { x: qi(1), y: qi(1), density: qi(1) },
            Atom { x: qi(1), y: qi(1), density: qi(2) },
        ])
        .unwrap();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged.atoms()[0].density, qi(3));
    }

    #[test]
    fn sequence_construction_checks() {
        assert!(matches!(
            MomentSequence::<Q>::new(1, vec![qi(1); 5]),
            Err(MomentError::WrongLength { .. })
        ));
        let missing = MomentSequence::from_entries(1, vec![(0u32, 0u32, qi(1))]);
        assert!(matches!(missing, Err(MomentError::MissingEntry(1, 0))));
        let dup = MomentSequence::from_entries(
            1,
            vec![(0, 0, qi(1)), (0, 0, qi(2))],
        );
        assert!(matches!(dup, Err(MomentError::DuplicateEntry(0, 0))));
    }

    #[test]
    fn transform_matches_pushforward_of_atoms() {
        let mu = AtomicMeasure::new(vec![
            Atom { x: qi(1), y: qi(0), density: qi(1) },
            Atom { x: qi(-2), y: qi(3), density: qr(1, 3) },
            Atom { x: qi(0), y: qi(0), density: qi(2) },
        ])
        .unwrap();
        let map = AffineMap {
            a: qi(2),
            b: qi(1),
            e: qi(-1),
            c: qi(0),
            d: qi(1),
            f: qi(4),
        };
        let beta = mu.moments(3);
        let transformed = transform_moments(&beta, &map).unwrap();
        let direct = map.push_measure(&mu).moments(3);
        assert_eq!(transformed, direct);
    }

    #[test]
    fn affine_inverse_and_compose() {
        let map = AffineMap {
            a: qi(2),
            b: qi(1),
            e: qi(-1),
            c: qi(1),
            d: qi(1),
            f: qi(4),
        };
        let inv = map.inverse().unwrap();
        let id = map.compose(&inv);
        assert_eq!(id, AffineMap::identity());
        let (x, y) = map.apply(&qi(3), &qi(-2));
        let (bx, by) = inv.apply(&x, &y);
        assert_eq!((bx, by), (qi(3), qi(-2)));
        let singular = AffineMap { a: qi(1), b: qi(2), e: qi(0), c: qi(2), d: qi(4), f: qi(0) };
        assert!(singular.inverse().is_none());
    }
}
