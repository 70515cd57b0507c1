//! Univariate polynomials over a `Scalar` field.
//!
//! Exact mode finds real roots by Sturm-sequence isolation followed by
//! rational-root recognition (simplest rational in the isolating interval);
//! roots that resist recognition are refined by bisection to width 1e-30 and
//! flagged approximate. Float mode uses companion-matrix eigenvalues with
//! Newton polishing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{RealRoots, RootApprox, Scalar, RATIONAL_RECOGNITION_WIDTH};

/// Dense univariate polynomial; `coeffs[k]` multiplies `x^k`. Trailing zero
/// coefficients are stripped, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UniPoly<S> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![S::zero(), S::one()])
    }

    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[S]) -> Self {
        let mut p = Self::constant(S::one());
        for r in roots {
            p = p.mul(&Self::from_coeffs(vec![-r.clone(), S::one()]));
        }
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| S::from_i64(k as i64) * c.clone())
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a.clone() * b.clone();
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.clone().recip()),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some(n) = rem.degree() {
            if n < d {
                break;
            }
            let c = rem.leading().unwrap().clone() / lc.clone();
            let term = Self::constant(c).shift(n - d);
            quo = quo.add(&term);
            rem = rem.sub(&divisor.mul(&term));
            // The leading term cancels by construction; drop any rounding
            // residue so the degree strictly decreases in inexact arithmetic.
            if rem.coeffs.len() > n {
                rem.coeffs.truncate(n);
                while rem.coeffs.last().map_or(false, |c| c.is_zero()) {
                    rem.coeffs.pop();
                }
            }
        }
        (quo, rem)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(p / gcd(p, p'), was_squarefree)`.
    pub fn squarefree_part(&self) -> (Self, bool) {
        if self.degree().map_or(true, |d| d == 0) {
            return (self.clone(), true);
        }
        let g = Self::gcd(self, &self.derivative());
        if g.degree() == Some(0) {
            (self.clone(), true)
        } else {
            (self.divrem(&g).0, false)
        }
    }
}

// ---------------------------------------------------------------------------
// Exact real roots: Sturm isolation + rational recognition.
// ---------------------------------------------------------------------------

type QPoly = UniPoly<BigRational>;
type Q = BigRational;

fn qint(v: i64) -> Q {
    BigRational::from_integer(BigInt::from(v))
}

fn qpow10(k: u32) -> Q {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(k))
}

fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[k - 2].divrem(&chain[k - 1]).1;
        if r.is_zero() {
            return chain;
        }
        chain.push(r.neg());
    }
}

fn sign_variations(chain: &[QPoly], x: &Q) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

/// Strict upper bound on root magnitude (Cauchy bound plus slack).
fn root_bound(p: &QPoly) -> Q {
    let lc = p.leading().expect("nonzero polynomial").clone();
    let mut m = Q::zero();
    for c in p.coeffs() {
        let a = Signed::abs(&(c.clone() / lc.clone()));
        if a > m {
            m = a;
        }
    }
    m + qint(2)
}

/// Simplest rational strictly inside `(lo, hi)` (Stern-Brocot descent).
fn simplest_between(lo: &Q, hi: &Q) -> Q {
    assert!(lo < hi);
    let first_int = lo.floor() + Q::one();
    if first_int < *hi {
        // At least one integer lies strictly inside; pick the one of smallest
        // magnitude, preferring the positive on ties.
        if lo < &Q::zero() && &Q::zero() < hi {
            return Q::zero();
        }
        if lo >= &Q::zero() {
            return first_int;
        }
        return hi.ceil() - Q::one();
    }
    let f = lo.floor();
    let a = lo.clone() - f.clone();
    let b = hi.clone() - f.clone();
    if a.is_zero() {
        // lo is an integer: pick f + 1/k with k the smallest integer > 1/b.
        let k = (Q::one() / b).floor() + Q::one();
        return f + Q::one() / k;
    }
    let inner = simplest_between(&(Q::one() / b), &(Q::one() / a));
    f + Q::one() / inner
}

/// Isolating intervals `(a, b)`, each containing exactly one root of the
/// square-free `p`, endpoints non-roots; plus roots found exactly en route.
fn isolate_roots(p: &QPoly, chain: &[QPoly], bound: &Q) -> (Vec<(Q, Q)>, Vec<Q>) {
    let mut intervals = Vec::new();
    let mut exact = Vec::new();
    let lo = -bound.clone();
    let hi = bound.clone();
    let mut stack = vec![(lo.clone(), hi.clone(), sign_variations(chain, &lo), sign_variations(chain, &hi))];
    while let Some((a, b, va, vb)) = stack.pop() {
        let count = va - vb;
        if count == 0 {
            continue;
        }
        if count == 1 {
            intervals.push((a, b));
            continue;
        }
        let mid = (a.clone() + b.clone()) / qint(2);
        if !p.eval(&mid).is_zero() {
            let vm = sign_variations(chain, &mid);
            stack.push((a, mid.clone(), va, vm));
            stack.push((mid, b, vm, vb));
            continue;
        }
        exact.push(mid.clone());
        // Shrink a gap around the exact root until it contains no other root,
        // then recurse on the two outer pieces.
        let mut delta = (b.clone() - a.clone()) / qint(4);
        loop {
            let m_lo = mid.clone() - delta.clone();
            let m_hi = mid.clone() + delta.clone();
            if !p.eval(&m_lo).is_zero() && !p.eval(&m_hi).is_zero() {
                let v_lo = sign_variations(chain, &m_lo);
                let v_hi = sign_variations(chain, &m_hi);
                if v_lo - v_hi == 1 {
                    stack.push((a, m_lo, va, v_lo));
                    stack.push((m_hi, b, v_hi, vb));
                    break;
                }
            }
            delta = delta / qint(2);
        }
    }
    (intervals, exact)
}

/// Resolves one isolating interval to a root: exact rational when recognized,
/// otherwise a bisection refinement of width below 1e-30.
fn resolve_interval(p: &QPoly, chain: &[QPoly], mut lo: Q, mut hi: Q) -> RootApprox<Q> {
    let recognition_width = {
        // RATIONAL_RECOGNITION_WIDTH as an exact threshold.
        let mut w = Q::one();
        let mut approx = 1.0f64;
        while approx > RATIONAL_RECOGNITION_WIDTH {
            w = w / qint(10);
            approx /= 10.0;
        }
        w
    };
    let mut v_lo = sign_variations(chain, &lo);
    let mut step = 0usize;
    while hi.clone() - lo.clone() >= recognition_width {
        let q = if step % 2 == 0 {
            simplest_between(&lo, &hi)
        } else {
            (lo.clone() + hi.clone()) / qint(2)
        };
        step += 1;
        if p.eval(&q).is_zero() {
            return RootApprox { value: q, exact: true };
        }
        let v_q = sign_variations(chain, &q);
        if v_lo - v_q == 1 {
            hi = q;
        } else {
            lo = q;
            v_lo = v_q;
        }
    }
    // Simple root: signs at the interval ends differ. Bisect to width 1e-30.
    let target = qpow10(30);
    let neg_at_lo = p.eval(&lo).is_negative();
    while hi.clone() - lo.clone() >= target {
        let mid = (lo.clone() + hi.clone()) / qint(2);
        let v = p.eval(&mid);
        if v.is_zero() {
            return RootApprox { value: mid, exact: true };
        }
        if v.is_negative() == neg_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootApprox {
        value: (lo + hi) / qint(2),
        exact: false,
    }
}

/// Distinct real roots of an exact polynomial, ascending.
pub fn real_roots_exact(coeffs: &[Q], _tol: f64) -> RealRoots<Q> {
    let p = UniPoly::from_coeffs(coeffs.to_vec());
    if p.degree().map_or(true, |d| d == 0) {
        return RealRoots { roots: Vec::new(), squarefree: true };
    }
    let (sf, squarefree) = p.squarefree_part();
    if sf.degree() == Some(0) {
        return RealRoots { roots: Vec::new(), squarefree };
    }
    let chain = sturm_chain(&sf);
    let bound = root_bound(&sf);
    let (intervals, exact) = isolate_roots(&sf, &chain, &bound);
    let mut roots: Vec<RootApprox<Q>> = exact
        .into_iter()
        .map(|value| RootApprox { value, exact: true })
        .collect();
    for (lo, hi) in intervals {
        roots.push(resolve_interval(&sf, &chain, lo, hi));
    }
    roots.sort_by(|a, b| a.value.cmp(&b.value));
    RealRoots { roots, squarefree }
}

// ---------------------------------------------------------------------------
// Float real roots: companion matrix + Newton polish.
// ---------------------------------------------------------------------------

fn newton_polish(coeffs: &[f64], deriv: &[f64], mut x: f64) -> f64 {
    for _ in 0..30 {
        let fx = eval_f64(coeffs, x);
        let dx = eval_f64(deriv, x);
        if dx == 0.0 {
            break;
        }
        let step = fx / dx;
        let next = x - step;
        if !next.is_finite() || (next - x).abs() <= 1e-15 * x.abs().max(1.0) {
            x = if next.is_finite() { next } else { x };
            break;
        }
        x = next;
    }
    x
}

fn eval_f64(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

#[derive(Debug, Clone, Copy)]
struct Cx {
    re: f64,
    im: f64,
}

impl Cx {
    fn add(self, o: Cx) -> Cx {
        Cx { re: self.re + o.re, im: self.im + o.im }
    }

    fn sub(self, o: Cx) -> Cx {
        Cx { re: self.re - o.re, im: self.im - o.im }
    }

    fn mul(self, o: Cx) -> Cx {
        Cx { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }

    fn div(self, o: Cx) -> Cx {
        let d = o.re * o.re + o.im * o.im;
        Cx { re: (self.re * o.re + self.im * o.im) / d, im: (self.im * o.re - self.re * o.im) / d }
    }

    fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Horner evaluation of the monic polynomial and its derivative at `z`.
/// `monic` holds the non-leading coefficients c_0..c_{d-1}.
fn ceval(monic: &[f64], z: Cx) -> (Cx, Cx) {
    let mut p = Cx { re: 1.0, im: 0.0 };
    let mut dp = Cx { re: 0.0, im: 0.0 };
    for c in monic.iter().rev() {
        dp = dp.mul(z).add(p);
        p = p.mul(z).add(Cx { re: *c, im: 0.0 });
    }
    (p, dp)
}

/// All complex roots of the monic polynomial by Aberth-Ehrlich iteration.
/// Deterministic starts on a detuned circle inside the Cauchy bound; the
/// iteration count is capped, so garbage coefficients cannot stall it.
fn aberth_roots(monic: &[f64]) -> Vec<Cx> {
    let d = monic.len();
    let radius = 1.0 + monic.iter().fold(0.0f64, |m, c| m.max(f64::abs(*c)));
    let mut z: Vec<Cx> = (0..d)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.4;
            Cx { re: radius * th.cos(), im: radius * th.sin() }
        })
        .collect();
    for _ in 0..400 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = ceval(monic, z[i]);
            if !p.re.is_finite() || !p.im.is_finite() {
                return z;
            }
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() > 1e-290 {
                p.div(dp)
            } else {
                Cx { re: 1e-6 * radius, im: 1e-6 * radius }
            };
            let mut s = Cx { re: 0.0, im: 0.0 };
            for j in 0..d {
                if j != i {
                    let diff = z[i].sub(z[j]);
                    if diff.norm() > 1e-290 {
                        s = s.add(Cx { re: 1.0, im: 0.0 }.div(diff));
                    }
                }
            }
            let denom = Cx { re: 1.0, im: 0.0 }.sub(newton.mul(s));
            let w = if denom.norm() > 1e-290 { newton.div(denom) } else { newton };
            z[i] = z[i].sub(w);
            moved = moved.max(w.norm());
        }
        if moved <= 1e-14 * radius.max(1.0) {
            break;
        }
    }
    z
}

/// Distinct real roots of a float polynomial, ascending. Residual and
/// imaginary-part screening use `tol`-derived thresholds; `squarefree` is
/// false when two eigenvalues polish to the same real root.
pub fn real_roots_float(coeffs: &[f64], tol: f64) -> RealRoots<f64> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(f64::abs(*c)));
    if scale == 0.0 {
        return RealRoots { roots: Vec::new(), squarefree: true };
    }
    let mut cs = coeffs.to_vec();
    while cs.last().map_or(false, |c| f64::abs(*c) <= tol * scale) {
        cs.pop();
    }
    let d = match cs.len().checked_sub(1) {
        None | Some(0) => return RealRoots { roots: Vec::new(), squarefree: true },
        Some(d) => d,
    };
    let lc = *cs.last().unwrap();
    let monic: Vec<f64> = cs.iter().map(|c| c / lc).collect();
    let deriv: Vec<f64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect();

    let mut candidates: Vec<f64> = Vec::new();
    if d == 1 {
        candidates.push(-monic[0]);
    } else if d == 2 {
        let (c, b) = (monic[0], monic[1]);
        let disc = b * b - 4.0 * c;
        let disc_scale = (b * b).abs() + 4.0 * c.abs();
        if disc.abs() <= tol * disc_scale.max(1.0) {
            return RealRoots {
                roots: vec![RootApprox { value: -b / 2.0, exact: false }],
                squarefree: false,
            };
        }
        if disc > 0.0 {
            let sq = disc.sqrt();
            let q = -(b + b.signum() * sq) / 2.0;
            let q = if q == 0.0 { -b / 2.0 + sq / 2.0 } else { q };
            candidates.push(q);
            if q != 0.0 {
                candidates.push(c / q);
            }
        }
    } else {
        for z in aberth_roots(&monic[..d]) {
            if z.im.abs() <= 1e-6 * z.re.abs().max(1.0) {
                candidates.push(z.re);
            }
        }
    }

    let mut polished: Vec<f64> = candidates
        .into_iter()
        .map(|x| newton_polish(&monic, &deriv, x))
        .filter(|x| {
            let residual_scale: f64 = monic
                .iter()
                .enumerate()
                .map(|(k, c)| f64::abs(*c) * f64::abs(*x).powi(k as i32))
                .sum();
            eval_f64(&monic, *x).abs() <= 1e-6 * residual_scale.max(1.0)
        })
        .collect();
    polished.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut roots: Vec<RootApprox<f64>> = Vec::new();
    let mut squarefree = true;
    for x in polished {
        match roots.last() {
            Some(prev) if (x - prev.value).abs() <= 1e-7 * x.abs().max(1.0) => {
                squarefree = false;
            }
            _ => roots.push(RootApprox { value: x, exact: false }),
        }
    }
    RealRoots { roots, squarefree }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn q(n: i64, d: i64) -> Q {
        <Q as Scalar>::from_ratio(n, d)
    }

    fn qp(coeffs: &[i64]) -> QPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| qint(c)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let p = qp(&[-80, -16, 5, 1, 1]);
        let d = qp(&[3, 0, 1]);
        let (quo, rem) = p.divrem(&d);
        assert_eq!(quo.mul(&d).add(&rem), p);
        assert!(rem.degree().unwrap_or(0) < d.degree().unwrap());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = qp(&[-1, 0, 1]).mul(&qp(&[2, 1])); // (x^2-1)(x+2)
        let b = qp(&[1, 1]).mul(&qp(&[5, 1])); // (x+1)(x+5)
        assert_eq!(UniPoly::gcd(&a, &b), qp(&[1, 1]));
    }

    #[test]
    fn quartic_with_integer_roots_resolves_exactly() {
        // x^4 + 5x^3 - 16x^2 - 80x = x(x+5)(x-4)(x+4)
        let p = [qint(0), qint(-80), qint(-16), qint(5), qint(1)];
        let rr = real_roots_exact(&p, 1e-9);
        assert!(rr.squarefree);
        let vals: Vec<Q> = rr.roots.iter().map(|r| r.value.clone()).collect();
        assert_eq!(vals, vec![qint(-5), qint(-4), qint(0), qint(4)]);
        assert!(rr.roots.iter().all(|r| r.exact));
    }

    #[test]
    fn quintic_resultant_roots() {
        // x^5 - 41x^3 + 400x = x(x^2-16)(x^2-25)
        let p = [qint(0), qint(400), qint(0), qint(-41), qint(0), qint(1)];
        let rr = real_roots_exact(&p, 1e-9);
        let vals: Vec<Q> = rr.roots.iter().map(|r| r.value.clone()).collect();
        assert_eq!(vals, vec![qint(-5), qint(-4), qint(0), qint(4), qint(5)]);
    }

    #[test]
    fn rational_roots_with_denominators() {
        let roots = [q(-3, 2), q(1, 3), q(7, 4)];
        let p = UniPoly::from_roots(&roots.to_vec());
        let rr = real_roots_exact(p.coeffs(), 1e-9);
        let vals: Vec<Q> = rr.roots.iter().map(|r| r.value.clone()).collect();
        assert_eq!(vals, roots.to_vec());
        assert!(rr.roots.iter().all(|r| r.exact));
    }

    #[test]
    fn irrational_roots_are_flagged_and_tight() {
        // (x^2 - 2)(x - 1): roots -sqrt(2), 1, sqrt(2)
        let p = qp(&[-2, 0, 1]).mul(&qp(&[-1, 1]));
        let rr = real_roots_exact(p.coeffs(), 1e-9);
        assert_eq!(rr.roots.len(), 3);
        assert!(rr.squarefree);
        assert!(rr.roots[1].exact && rr.roots[1].value == qint(1));
        for r in [&rr.roots[0], &rr.roots[2]] {
            assert!(!r.exact);
            let err = (r.value.clone() * r.value.clone() - qint(2)).to_f64().abs();
            assert!(err < 1e-25, "residual {err}");
        }
    }

    #[test]
    fn repeated_roots_clear_squarefree_flag() {
        // (x-1)^2 (x+2)
        let p = qp(&[-1, 1]).mul(&qp(&[-1, 1])).mul(&qp(&[2, 1]));
        let rr = real_roots_exact(p.coeffs(), 1e-9);
        assert!(!rr.squarefree);
        let vals: Vec<Q> = rr.roots.iter().map(|r| r.value.clone()).collect();
        assert_eq!(vals, vec![qint(-2), qint(1)]);
    }

    #[test]
    fn float_roots_match_exact_on_quintic() {
        let p = [0.0, 400.0, 0.0, -41.0, 0.0, 1.0];
        let rr = real_roots_float(&p, 1e-9);
        assert!(rr.squarefree);
        let expected = [-5.0, -4.0, 0.0, 4.0, 5.0];
        assert_eq!(rr.roots.len(), expected.len());
        for (r, e) in rr.roots.iter().zip(expected) {
            assert!((r.value - e).abs() < 1e-9);
            assert!(!r.exact);
        }
    }

    #[test]
    fn float_quadratic_cases() {
        let two_roots = real_roots_float(&[-2.0, 0.0, 1.0], 1e-9);
        assert_eq!(two_roots.roots.len(), 2);
        assert!((two_roots.roots[1].value - 2f64.sqrt()).abs() < 1e-12);
        let none = real_roots_float(&[1.0, 0.0, 1.0], 1e-9);
        assert!(none.roots.is_empty());
        let double = real_roots_float(&[1.0, -2.0, 1.0], 1e-9);
        assert_eq!(double.roots.len(), 1);
        assert!(!double.squarefree);
    }

    #[test]
    fn simplest_rational_prefers_low_complexity() {
        assert_eq!(simplest_between(&q(1, 3), &q(2, 3)), q(1, 2));
        assert_eq!(simplest_between(&q(-1, 2), &q(1, 2)), Q::zero());
        assert_eq!(simplest_between(&q(5, 2), &q(7, 2)), qint(3));
        assert_eq!(simplest_between(&q(7, 5), &q(3, 2)), q(10, 7));
        let s = simplest_between(&q(-10, 3), &q(-13, 4));
        assert!(q(-10, 3) < s && s < q(-13, 4));
    }
}
