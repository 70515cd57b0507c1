//! Linear algebra over a `Scalar` backend.
//!
//! Exact mode decides rank, kernels, and definiteness by fraction-free or
//! rational elimination; float mode routes rank/kernel through SVD and
//! definiteness through symmetric eigenvalues (see `Scalar` overrides).
//! Pivot selection is deterministic in both modes so repeated runs agree.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix block is singular")]
    Singular,
    #[error("quadratic form vanished; no finite density")]
    ZeroQuadraticForm,
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// Dense symmetric matrix, full row-major storage. Constructors enforce
/// symmetry; `set_sym` writes both mirror entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<S> {
    n: usize,
    a: Vec<S>,
}

impl<S: Scalar> SymMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, a: vec![S::zero(); n * n] }
    }

    /// Builds from `f(i, j)` evaluated on `i <= j` and mirrored.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.set_sym(i, j, v);
            }
        }
        m
    }

    /// Builds from explicit rows, checking symmetry exactly.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(LinalgError::Shape(format!("row {i} has length {}, want {n}", r.len())));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    return Err(LinalgError::Shape(format!("asymmetric at ({i},{j})")));
                }
            }
        }
        Ok(SymMatrix { n, a: rows.into_iter().flatten().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.a[i * self.n + j]
    }

    pub fn set_sym(&mut self, i: usize, j: usize, v: S) {
        self.a[i * self.n + j] = v.clone();
        self.a[j * self.n + i] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.a[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn compress(&self, idx: &[usize]) -> Self {
        let k = idx.len();
        let mut m = Self::zeros(k);
        for (p, &i) in idx.iter().enumerate() {
            for (q, &j) in idx.iter().enumerate() {
                m.a[p * k + q] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn mat_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.n {
                    acc += self.get(i, j).clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    pub fn quadratic_form(&self, v: &[S]) -> S {
        let av = self.mat_vec(v);
        dot(v, &av)
    }

    /// `self - c * v v^T`.
    pub fn sub_scaled_outer(&self, c: &S, v: &[S]) -> Self {
        assert_eq!(v.len(), self.n);
        let mut m = self.clone();
        for i in 0..self.n {
            for j in i..self.n {
                let upd = self.get(i, j).clone() - c.clone() * v[i].clone() * v[j].clone();
                m.set_sym(i, j, upd);
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut m = self.clone();
        for (x, y) in m.a.iter_mut().zip(other.a.iter()) {
            *x += y.clone();
        }
        m
    }

    /// Largest absolute entry as f64, used to scale float tolerances.
    pub fn magnitude(&self) -> f64 {
        self.a.iter().fold(0.0, |m, v| m.max(v.to_f64().abs()))
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x.clone() * y.clone();
    }
    acc
}

fn rows_magnitude<S: Scalar>(rows: &[Vec<S>]) -> f64 {
    rows.iter()
        .flat_map(|r| r.iter())
        .fold(0.0, |m, v| m.max(v.to_f64().abs()))
}

/// Reduced row echelon form in place; returns pivot column indices.
/// Exact mode takes the first nonzero pivot, float mode the largest.
pub fn rref<S: Scalar>(rows: &mut Vec<Vec<S>>, tol: f64) -> Vec<usize> {
    let nr = rows.len();
    let nc = rows.first().map_or(0, |r| r.len());
    let scale = rows_magnitude(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let pivot_row = if S::EXACT {
            (r..nr).find(|&i| !rows[i][c].is_zero())
        } else {
            (r..nr)
                .filter(|&i| !rows[i][c].is_negligible(scale, tol))
                .max_by(|&i, &j| {
                    rows[i][c].to_f64().abs().partial_cmp(&rows[j][c].to_f64().abs()).unwrap()
                })
        };
        let Some(p) = pivot_row else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].clone().recip();
        for j in c..nc {
            let v = rows[r][j].clone() * inv.clone();
            rows[r][j] = v;
        }
        for i in 0..nr {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..nc {
                let upd = rows[i][j].clone() - f.clone() * rows[r][j].clone();
                rows[i][j] = upd;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of an arbitrary (not necessarily symmetric) matrix.
pub fn rank_rows<S: Scalar>(rows: &[Vec<S>], tol: f64) -> usize {
    if let Some((rank, _, _)) = S::rank_kernel_override(rows, tol) {
        return rank;
    }
    let mut work = rows.to_vec();
    rref(&mut work, tol).len()
}

/// Kernel basis of an arbitrary matrix. Exact mode returns the echelon-form
/// basis: one vector per free column, with coefficient 1 at that column.
pub fn kernel_rows<S: Scalar>(rows: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    let nc = rows.first().map_or(0, |r| r.len());
    if let Some((_, _, kernel)) = S::rank_kernel_override(rows, tol) {
        return kernel;
    }
    let mut work = rows.to_vec();
    let pivots = rref(&mut work, tol);
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; nc];
        for &c in &pivots {
            s[c] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for free in 0..nc {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![S::zero(); nc];
        v[free] = S::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Rank plus a deterministic set of row/column indices whose principal
/// submatrix is invertible with that rank.
#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub rank: usize,
    pub pivot_indices: Vec<usize>,
}

/// Rank and pivot indices of a symmetric matrix.
///
/// Pivots are found by symmetric elimination with diagonal pivoting: repeatedly
/// take the smallest index whose Schur-complement diagonal is nonzero. If the
/// remaining diagonal vanishes but off-diagonal mass is left (possible only for
/// indefinite matrices), a 2x2 block pivot on the smallest such pair is taken.
pub fn sym_rank_report<S: Scalar>(m: &SymMatrix<S>, tol: f64) -> RankReport {
    let rank = rank_rows(&m.rows(), tol);
    let n = m.n();
    let scale = m.magnitude();
    let mut w = m.rows();
    let mut active: Vec<usize> = (0..n).collect();
    let mut chosen: Vec<usize> = Vec::new();

    let eliminate = |w: &mut Vec<Vec<S>>, active: &mut Vec<usize>, p: usize| {
        let d = w[p][p].clone();
        active.retain(|&i| i != p);
        for &i in active.iter() {
            for &j in active.iter() {
                let upd = w[i][j].clone() - w[i][p].clone() * w[p][j].clone() / d.clone();
                w[i][j] = upd;
            }
        }
    };

    while chosen.len() < rank {
        let single = active
            .iter()
            .copied()
            .find(|&i| !w[i][i].is_negligible(scale, tol));
        if let Some(p) = single {
            chosen.push(p);
            eliminate(&mut w, &mut active, p);
            continue;
        }
        // All remaining diagonal entries vanish; take a 2x2 block pivot.
        let mut pair = None;
        'outer: for (a, &i) in active.iter().enumerate() {
            for &j in active.iter().skip(a + 1) {
                if !w[i][j].is_negligible(scale, tol) {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = pair else { break };
        chosen.push(i);
        chosen.push(j);
        // Eliminate the block [[0, c], [c, 0]]: its inverse is [[0, 1/c], [1/c, 0]].
        let c = w[i][j].clone();
        active.retain(|&k| k != i && k != j);
        for &p in active.iter() {
            for &q in active.iter() {
                let upd = w[p][q].clone()
                    - (w[p][i].clone() * w[j][q].clone() + w[p][j].clone() * w[i][q].clone())
                        / c.clone();
                w[p][q] = upd;
            }
        }
    }
    chosen.sort_unstable();
    chosen.truncate(rank);
    RankReport { rank, pivot_indices: chosen }
}

/// Positive semidefiniteness. Exact mode eliminates positive diagonal pivots
/// and requires every zero-diagonal row to vanish; float mode checks the
/// symmetric eigenvalues against `-tol * scale`.
pub fn psd<S: Scalar>(m: &SymMatrix<S>, tol: f64) -> bool {
    if let Some(ans) = S::psd_override(&m.rows(), tol) {
        return ans;
    }
    let mut w = m.rows();
    let mut active: Vec<usize> = (0..m.n()).collect();
    loop {
        if active.is_empty() {
            return true;
        }
        if active.iter().any(|&i| w[i][i] < S::zero()) {
            return false;
        }
        if let Some(pos) = active.iter().position(|&i| w[i][i].is_zero()) {
            let i = active[pos];
            if active.iter().any(|&j| !w[i][j].is_zero()) {
                return false;
            }
            active.remove(pos);
            continue;
        }
        let p = active.remove(0);
        let d = w[p][p].clone();
        for &i in active.iter() {
            for &j in active.iter() {
                let upd = w[i][j].clone() - w[i][p].clone() * w[p][j].clone() / d.clone();
                w[i][j] = upd;
            }
        }
    }
}

/// Kernel basis of a symmetric matrix (column vectors `v` with `Mv = 0`).
pub fn kernel_sym<S: Scalar>(m: &SymMatrix<S>, tol: f64) -> Vec<Vec<S>> {
    kernel_rows(&m.rows(), tol)
}

/// Search for a direction `v` with `v' M v < 0`; `None` certifies psd.
///
/// Exact mode runs symmetric elimination while carrying the accumulated
/// transform rows, so a negative or ill-placed zero pivot converts directly
/// into a witness vector. Float mode delegates to the eigendecomposition.
pub fn neg_direction<S: Scalar>(m: &SymMatrix<S>, tol: f64) -> Option<Vec<S>> {
    if let Some(ans) = S::neg_direction_override(&m.rows(), tol) {
        return ans;
    }
    let n = m.n();
    let mut w = m.rows();
    // trans[i] expresses current row i as a combination of original coordinates.
    let mut trans: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut e = vec![S::zero(); n];
            e[i] = S::one();
            e
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    loop {
        if let Some(&i) = active.iter().find(|&&i| w[i][i] < S::zero()) {
            return Some(trans[i].clone());
        }
        if let Some(pos) = active.iter().position(|&i| w[i][i].is_zero()) {
            let i = active[pos];
            if let Some(&j) = active.iter().find(|&&j| !w[i][j].is_zero()) {
                // Block [[0, c], [c, d]]: with t = (d + 1) / (2c), the vector
                // t e_i - e_j has value -2tc + d = -1.
                let c = w[i][j].clone();
                let d = w[j][j].clone();
                let t = (d + S::one()) / (S::from_i64(2) * c);
                let v: Vec<S> = trans[i]
                    .iter()
                    .zip(&trans[j])
                    .map(|(a, b)| t.clone() * a.clone() - b.clone())
                    .collect();
                return Some(v);
            }
            active.remove(pos);
            continue;
        }
        if active.is_empty() {
            return None;
        }
        let p = active.remove(0);
        let d = w[p][p].clone();
        for &i in active.iter() {
            let f = w[i][p].clone() / d.clone();
            for j in 0..n {
                let upd = trans[i][j].clone() - f.clone() * trans[p][j].clone();
                trans[i][j] = upd;
            }
            for &j in active.iter() {
                let upd = w[i][j].clone() - f.clone() * w[p][j].clone();
                w[i][j] = upd;
            }
        }
        // Keep the eliminated column consistent for later zero-row checks.
        for &i in active.iter() {
            w[i][p] = S::zero();
            w[p][i] = S::zero();
        }
    }
}

/// Determinant by fraction-free (Bareiss) elimination. Over the rationals the
/// intermediate entries stay division-exact, so denominators do not compound.
pub fn det_rows<S: Scalar>(rows: &[Vec<S>]) -> S {
    let n = rows.len();
    if n == 0 {
        return S::one();
    }
    let mut a = rows.to_vec();
    let mut sign = false;
    let mut prev = S::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return S::zero();
            };
            a.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

pub fn det<S: Scalar>(m: &SymMatrix<S>) -> S {
    det_rows(&m.rows())
}

/// Reference determinant by cofactor expansion; exponential, for testing only.
pub fn det_laplace<S: Scalar>(rows: &[Vec<S>]) -> S {
    let n = rows.len();
    if n == 0 {
        return S::one();
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = S::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<S>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = rows[0][j].clone() * det_laplace(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Solves a square nonsingular system by Gaussian elimination.
pub fn solve<S: Scalar>(rows: &[Vec<S>], b: &[S], tol: f64) -> Result<Vec<S>, LinalgError> {
    let n = rows.len();
    if b.len() != n {
        return Err(LinalgError::Shape("rhs length".into()));
    }
    let mut aug: Vec<Vec<S>> = rows
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, tol);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return Err(LinalgError::Singular);
    }
    Ok(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Outcome of solving a possibly singular consistent system.
#[derive(Debug, Clone)]
pub enum ConsistentSolve<S> {
    /// A particular solution (free variables set to zero).
    Solution(Vec<S>),
    Inconsistent,
}

/// Solves `A x = b` allowing a singular `A`; reports inconsistency.
pub fn solve_consistent<S: Scalar>(rows: &[Vec<S>], b: &[S], tol: f64) -> ConsistentSolve<S> {
    let nc = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<S>> = rows
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, tol);
    if pivots.iter().any(|&c| c == nc) {
        return ConsistentSolve::Inconsistent;
    }
    let mut x = vec![S::zero(); nc];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][nc].clone();
    }
    ConsistentSolve::Solution(x)
}

/// Determinant of the bordered matrix via a Schur complement on the last
/// row/column: `det M = det P * (u - t P^{-1} t^T)` with `P` the leading
/// block. Fails when `P` is singular.
pub fn schur_det<S: Scalar>(m: &SymMatrix<S>, tol: f64) -> Result<S, LinalgError> {
    let n = m.n();
    if n == 0 {
        return Ok(S::one());
    }
    let lead: Vec<usize> = (0..n - 1).collect();
    let p = m.compress(&lead);
    let t: Vec<S> = (0..n - 1).map(|i| m.get(i, n - 1).clone()).collect();
    let w = solve(&p.rows(), &t, tol)?;
    let u = m.get(n - 1, n - 1).clone();
    Ok(det(&p) * (u - dot(&t, &w)))
}

/// Density `rho = 1 / (v^T A^{-1} v)` used when peeling a rank-one atom off a
/// positive definite block.
pub fn rank_one_rho<S: Scalar>(a: &SymMatrix<S>, v: &[S], tol: f64) -> Result<S, LinalgError> {
    let w = solve(&a.rows(), v, tol)?;
    let q = dot(v, &w);
    let scale = a.magnitude().max(1.0);
    if q.is_negligible(scale, tol) {
        return Err(LinalgError::ZeroQuadraticForm);
    }
    Ok(q.recip())
}

/// Finds `x >= 0` with `A x = b`, or reports infeasibility. Phase-one simplex
/// with Bland's rule; exact arithmetic makes the answer a certificate.
pub fn nonneg_solve<S: Scalar>(a: &[Vec<S>], b: &[S], tol: f64) -> Option<Vec<S>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if m == 0 {
        return Some(vec![S::zero(); n]);
    }
    let scale = rows_magnitude(a).max(rows_magnitude(&[b.to_vec()]));
    // Tableau columns: n structural, m artificial, then rhs.
    let mut t: Vec<Vec<S>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<S> = a[i].clone();
        let flip = b[i] < S::zero();
        if flip {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row.resize(n + m, S::zero());
        row[n + i] = S::one();
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
        basis.push(n + i);
    }
    // Phase-one objective: minimize the sum of artificials. Reduced-cost row
    // starts as minus the sum of constraint rows over structural columns.
    let mut obj = vec![S::zero(); n + m + 1];
    for row in &t {
        for (o, v) in obj.iter_mut().zip(row.iter()) {
            *o -= v.clone();
        }
    }
    for j in n..n + m {
        obj[j] = S::zero();
    }

    let mut iterations = 0usize;
    loop {
        iterations += 1;
        assert!(iterations < 100_000, "simplex failed to terminate");
        let entering = (0..n + m).find(|&j| obj[j] < S::zero() && !obj[j].is_negligible(scale, tol));
        let Some(e) = entering else { break };
        let mut leave: Option<usize> = None;
        let mut best: Option<S> = None;
        for i in 0..m {
            if t[i][e] > S::zero() && !t[i][e].is_negligible(scale, tol) {
                let ratio = t[i][n + m].clone() / t[i][e].clone();
                let better = match &best {
                    None => true,
                    Some(cur) => {
                        ratio < *cur || (ratio == *cur && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(l) = leave else {
            // Unbounded phase-one objective cannot happen (bounded below by 0).
            return None;
        };
        let pd = t[l][e].clone();
        for v in t[l].iter_mut() {
            *v = v.clone() / pd.clone();
        }
        for i in 0..m {
            if i == l || t[i][e].is_zero() {
                continue;
            }
            let f = t[i][e].clone();
            for j in 0..n + m + 1 {
                let upd = t[i][j].clone() - f.clone() * t[l][j].clone();
                t[i][j] = upd;
            }
        }
        if !obj[e].is_zero() {
            let f = obj[e].clone();
            for j in 0..n + m + 1 {
                let upd = obj[j].clone() - f.clone() * t[l][j].clone();
                obj[j] = upd;
            }
        }
        basis[l] = e;
    }
    let objective = -obj[n + m].clone();
    if !objective.is_negligible(scale, tol * 10.0) && !objective.is_zero() {
        return None;
    }
    let mut x = vec![S::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][n + m].clone();
        }
    }
    Some(x)
}

/// Float-mode engines backed by nalgebra.
pub mod float {
    use nalgebra::DMatrix;

    fn to_dmatrix(rows: &[Vec<f64>]) -> DMatrix<f64> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        DMatrix::from_fn(nr, nc, |i, j| rows[i][j])
    }

    /// Rank, pivot columns, and kernel basis from an SVD with a relative
    /// singular-value cutoff.
    pub fn svd_rank_kernel(rows: &[Vec<f64>], tol: f64) -> (usize, Vec<usize>, Vec<Vec<f64>>) {
        let nc = rows.first().map_or(0, |r| r.len());
        let m = to_dmatrix(rows);
        if m.is_empty() {
            return (0, Vec::new(), (0..nc).map(|k| unit(nc, k)).collect());
        }
        let svd = m.clone().svd(false, true);
        let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
        let cut = tol * smax.max(1.0);
        let rank = svd.singular_values.iter().filter(|&&s| s > cut).count();
        let vt = svd.v_t.as_ref().expect("requested V^T");
        let kernel: Vec<Vec<f64>> = (rank..vt.nrows())
            .map(|r| vt.row(r).iter().cloned().collect())
            .collect();
        // Pivot columns: greedily keep columns that increase numerical rank.
        let mut pivots = Vec::new();
        let mut cols: Vec<usize> = Vec::new();
        for c in 0..nc {
            if pivots.len() == rank {
                break;
            }
            cols.push(c);
            let sub = m.select_columns(cols.iter());
            let s = sub.svd(false, false);
            let r = s.singular_values.iter().filter(|&&x| x > cut).count();
            if r == cols.len() {
                pivots.push(c);
            } else {
                cols.pop();
            }
        }
        (rank, pivots, kernel)
    }

    /// Positive semidefiniteness via symmetric eigenvalues.
    pub fn psd_eigen(rows: &[Vec<f64>], tol: f64) -> bool {
        let m = to_dmatrix(rows);
        if m.is_empty() {
            return true;
        }
        let scale = m.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
        let eig = m.symmetric_eigen();
        eig.eigenvalues.iter().all(|&l| l >= -tol * scale)
    }

    /// Eigenvalues of a symmetric matrix, ascending.
    pub fn sym_eigenvalues(rows: &[Vec<f64>]) -> Vec<f64> {
        let m = to_dmatrix(rows);
        let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().cloned().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }

    /// Direction with negative quadratic form, or `None` when psd within
    /// tolerance. Uses the eigenvector of the most negative eigenvalue.
    pub fn neg_direction(rows: &[Vec<f64>], tol: f64) -> Option<Vec<f64>> {
        let m = to_dmatrix(rows);
        if m.is_empty() {
            return None;
        }
        let scale = m.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
        let eig = m.symmetric_eigen();
        let mut worst = 0usize;
        for (k, &l) in eig.eigenvalues.iter().enumerate() {
            if l < eig.eigenvalues[worst] {
                worst = k;
            }
        }
        if eig.eigenvalues[worst] >= -tol * scale {
            return None;
        }
        Some(eig.eigenvectors.column(worst).iter().cloned().collect())
    }

    fn unit(n: usize, k: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        v
    }
}
