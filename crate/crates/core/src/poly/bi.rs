//! Sparse bivariate polynomials with exact division, gcd, and resultants.
//!
//! The gcd runs a primitive polynomial-remainder sequence in `y` over the ring
//! of univariate polynomials in `x`; the resultant eliminates `y` through the
//! Sylvester matrix. Both are the workhorses behind variety computation.

use std::collections::BTreeMap;
use std::fmt;

use crate::moments::Monomial;
use crate::poly::uni::UniPoly;
use crate::scalar::Scalar;

/// Bivariate polynomial; keys are monomials `x^i y^j`, values are nonzero
/// coefficients. Terms are kept in graded order (total degree, then `y`
/// exponent), making the leading term and iteration order deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly<S> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> BiPoly<S> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(0, 0), c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, S::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, S::one())
    }

    pub fn monomial(i: u32, j: u32, c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(i, j), c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, S)>) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(S::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> S {
        self.terms.get(&Monomial::new(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().map_or(true, |d| d == 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.deg()).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.i).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.j).max()
    }

    /// Leading term in graded order (total degree, then `y` exponent).
    pub fn leading(&self) -> Option<(Monomial, &S)> {
        self.terms.last_key_value().map(|(m, c)| (*m, c))
    }

    /// Scales so the graded-order leading coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&c.clone().recip()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v.clone() * c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(S::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        let mut acc = S::zero();
        for (m, c) in self.terms() {
            let mut t = c.clone();
            for _ in 0..m.i {
                t *= x.clone();
            }
            for _ in 0..m.j {
                t *= y.clone();
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `x = x0`, producing a polynomial in `y`.
    pub fn subst_x(&self, x0: &S) -> UniPoly<S> {
        let dy = self.deg_y().unwrap_or(0) as usize;
        let mut coeffs = vec![S::zero(); dy + 1];
        for (m, c) in self.terms() {
            let mut t = c.clone();
            for _ in 0..m.i {
                t *= x0.clone();
            }
            coeffs[m.j as usize] += t;
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Substitutes `y = y0`, producing a polynomial in `x`.
    pub fn subst_y(&self, y0: &S) -> UniPoly<S> {
        self.swap_xy().subst_x(y0)
    }

    pub fn dx(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            if m.i > 0 {
                out.add_term(Monomial::new(m.i - 1, m.j), S::from_i64(m.i as i64) * c.clone());
            }
        }
        out
    }

    pub fn dy(&self) -> Self {
        self.swap_xy().dx().swap_xy()
    }

    pub fn swap_xy(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (Monomial::new(m.j, m.i), c.clone())).collect(),
        }
    }

    /// Substitutes `x -> px`, `y -> py`.
    pub fn compose(&self, px: &Self, py: &Self) -> Self {
        let dx = self.deg_x().unwrap_or(0);
        let dy = self.deg_y().unwrap_or(0);
        let mut xp = Vec::with_capacity(dx as usize + 1);
        let mut yp = Vec::with_capacity(dy as usize + 1);
        xp.push(Self::constant(S::one()));
        yp.push(Self::constant(S::one()));
        for k in 1..=dx {
            let next = xp[(k - 1) as usize].mul(px);
            xp.push(next);
        }
        for k in 1..=dy {
            let next = yp[(k - 1) as usize].mul(py);
            yp.push(next);
        }
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            let t = xp[m.i as usize].mul(&yp[m.j as usize]).scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Coefficients as polynomials in `x`, indexed by the power of `y`.
    pub fn as_y_polys(&self) -> Vec<UniPoly<S>> {
        let dy = self.deg_y().unwrap_or(0) as usize;
        let mut rows: Vec<Vec<S>> = vec![Vec::new(); dy + 1];
        for (m, c) in self.terms() {
            let row = &mut rows[m.j as usize];
            if row.len() <= m.i as usize {
                row.resize(m.i as usize + 1, S::zero());
            }
            row[m.i as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::from_coeffs).collect()
    }

    pub fn from_y_polys(polys: &[UniPoly<S>]) -> Self {
        let mut out = Self::zero();
        for (j, p) in polys.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                out.add_term(Monomial::new(i as u32, j as u32), c.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    /// Long division on graded-order leading terms; works for any single
    /// divisor because leading terms multiply within the order.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading()?;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some((rm, rc)) = rem.leading() {
            if rm.i < dm.i || rm.j < dm.j {
                return None;
            }
            let qm = Monomial::new(rm.i - dm.i, rm.j - dm.j);
            let qc = rc.clone() / dc.clone();
            quo.add_term(qm, qc.clone());
            let mut sub = d.scale(&qc);
            sub = Self {
                terms: sub
                    .terms
                    .into_iter()
                    .map(|(m, c)| (Monomial::new(m.i + qm.i, m.j + qm.j), c))
                    .collect(),
            };
            rem = rem.sub(&sub);
            // The leading terms cancel exactly by construction; enforce it so
            // float rounding cannot stall the loop.
            rem.terms.remove(&rm);
        }
        Some(quo)
    }

    /// Quotient `self / d` tolerating a residual that is negligible at the
    /// operands' coefficient scale; float counterpart of `div_exact`, where
    /// noisy inputs never cancel exactly. Leading terms not divisible by the
    /// divisor's leading monomial accumulate in the residual instead of
    /// aborting the division.
    pub fn div_approx(&self, d: &Self, tol: f64) -> Option<Self> {
        let (dm, dc) = d.leading()?;
        let dc = dc.clone();
        let scale = self
            .terms()
            .chain(d.terms())
            .fold(0.0f64, |m, (_, c)| m.max(c.to_f64().abs()));
        let mut rem = self.clone();
        let mut quo = Self::zero();
        let mut residual_ok = true;
        while let Some((rm, rc)) = rem.leading() {
            if rm.i < dm.i || rm.j < dm.j {
                residual_ok &= rc.is_negligible(scale, tol);
                rem.terms.remove(&rm);
                continue;
            }
            let qm = Monomial::new(rm.i - dm.i, rm.j - dm.j);
            let qc = rc.clone() / dc.clone();
            quo.add_term(qm, qc.clone());
            let mut sub = d.scale(&qc);
            sub = Self {
                terms: sub
                    .terms
                    .into_iter()
                    .map(|(m, c)| (Monomial::new(m.i + qm.i, m.j + qm.j), c))
                    .collect(),
            };
            rem = rem.sub(&sub);
            rem.terms.remove(&rm);
        }
        if !residual_ok {
            return None;
        }
        // Quotient terms at noise level would leak spurious high-degree
        // monomials into downstream intersections; drop them.
        let qscale = quo.terms().fold(0.0f64, |m, (_, c)| m.max(c.to_f64().abs()));
        Some(Self {
            terms: quo
                .terms
                .into_iter()
                .filter(|(_, c)| !c.is_negligible(qscale, tol))
                .collect(),
        })
    }
}

impl<S: Scalar> fmt::Display for BiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = *c < S::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.deg() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Gcd via primitive remainder sequence in y over polynomials in x.
// ---------------------------------------------------------------------------

fn ytrim<S: Scalar>(f: &mut Vec<UniPoly<S>>) {
    while f.last().map_or(false, |p| p.is_zero()) {
        f.pop();
    }
}

fn ycontent<S: Scalar>(f: &[UniPoly<S>]) -> UniPoly<S> {
    let mut g = UniPoly::zero();
    for p in f {
        g = UniPoly::gcd(&g, p);
    }
    g
}

fn ydiv_coeffs<S: Scalar>(f: &[UniPoly<S>], d: &UniPoly<S>) -> Vec<UniPoly<S>> {
    f.iter().map(|p| p.divrem(d).0).collect()
}

/// Pseudo-remainder of `f` by `g` as polynomials in `y` with coefficients in
/// `x`: repeatedly cancels the leading `y`-term after scaling by `lc(g)`.
fn ypseudo_rem<S: Scalar>(f: &[UniPoly<S>], g: &[UniPoly<S>]) -> Vec<UniPoly<S>> {
    let dg = g.len() - 1;
    let lcg = g.last().unwrap().clone();
    let mut r = f.to_vec();
    loop {
        ytrim(&mut r);
        if r.len() <= dg {
            return r;
        }
        let dr = r.len() - 1;
        let lead = r.pop().unwrap();
        for p in r.iter_mut() {
            *p = p.mul(&lcg);
        }
        for k in 0..=dg.min(dr) {
            if k == dg {
                continue;
            }
            let idx = dr - dg + k;
            let sub = g[k].mul(&lead);
            r[idx] = r[idx].sub(&sub);
        }
    }
}

impl<S: Scalar> BiPoly<S> {
    /// Gcd, normalized so the graded-order leading coefficient is 1. Exact
    /// over rationals; in float mode trusts exact cancellations only, so noisy
    /// inputs typically report a constant gcd.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.normalized();
        }
        if b.is_zero() {
            return a.normalized();
        }
        let dya = a.deg_y().unwrap_or(0);
        let dyb = b.deg_y().unwrap_or(0);
        if dya == 0 && dyb == 0 {
            let g = UniPoly::gcd(&a.subst_y(&S::zero()), &b.subst_y(&S::zero()));
            return Self::from_y_polys(&[g]).normalized();
        }
        if dya == 0 {
            let g = UniPoly::gcd(&a.subst_y(&S::zero()), &ycontent(&b.as_y_polys()));
            return Self::from_y_polys(&[g]).normalized();
        }
        if dyb == 0 {
            return Self::gcd(b, a);
        }
        let (hi, lo) = if dya >= dyb { (a, b) } else { (b, a) };
        let mut f = hi.as_y_polys();
        let mut g = lo.as_y_polys();
        let cf = ycontent(&f);
        let cg = ycontent(&g);
        let content_gcd = UniPoly::gcd(&cf, &cg);
        f = ydiv_coeffs(&f, &cf);
        g = ydiv_coeffs(&g, &cg);
        loop {
            let mut r = ypseudo_rem(&f, &g);
            ytrim(&mut r);
            if r.is_empty() {
                break;
            }
            let cr = ycontent(&r);
            f = g;
            g = ydiv_coeffs(&r, &cr);
        }
        let result = if g.len() == 1 {
            // Coprime in y: only the content gcd survives.
            Self::from_y_polys(&[content_gcd])
        } else {
            Self::from_y_polys(&g).mul(&Self::from_y_polys(&[content_gcd]))
        };
        result.normalized()
    }

    /// Resultant eliminating `y`: determinant of the Sylvester matrix over
    /// polynomials in `x`. When one argument has `y`-degree zero the
    /// convention `res(a, b) = a^{deg_y b}` applies.
    pub fn resultant_y(a: &Self, b: &Self) -> UniPoly<S> {
        let fa = a.as_y_polys();
        let fb = b.as_y_polys();
        let da = fa.len().saturating_sub(1);
        let db = fb.len().saturating_sub(1);
        if a.is_zero() || b.is_zero() {
            return UniPoly::zero();
        }
        if da == 0 {
            let mut acc = UniPoly::constant(S::one());
            for _ in 0..db {
                acc = acc.mul(&fa[0]);
            }
            return acc;
        }
        if db == 0 {
            let mut acc = UniPoly::constant(S::one());
            for _ in 0..da {
                acc = acc.mul(&fb[0]);
            }
            return acc;
        }
        let n = da + db;
        let mut rows: Vec<Vec<UniPoly<S>>> = Vec::with_capacity(n);
        for r in 0..db {
            let mut row = vec![UniPoly::zero(); n];
            for (k, c) in fa.iter().enumerate() {
                row[r + da - k] = c.clone();
            }
            rows.push(row);
        }
        for r in 0..da {
            let mut row = vec![UniPoly::zero(); n];
            for (k, c) in fb.iter().enumerate() {
                row[r + db - k] = c.clone();
            }
            rows.push(row);
        }
        det_unipoly(&rows)
    }
}

/// Cofactor-expansion determinant over univariate polynomials. Matrix order
/// is at most `deg_y a + deg_y b <= 6` here, so the cost stays small.
fn det_unipoly<S: Scalar>(rows: &[Vec<UniPoly<S>>]) -> UniPoly<S> {
    let n = rows.len();
    if n == 0 {
        return UniPoly::constant(S::one());
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = UniPoly::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<UniPoly<S>>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = rows[0][j].mul(&det_unipoly(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Q = BigRational;
    type P = BiPoly<Q>;

    fn qi(v: i64) -> Q {
        <Q as Scalar>::from_i64(v)
    }

    fn p(terms: &[(u32, u32, i64)]) -> P {
        BiPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, qi(c))))
    }

    #[test]
    fn arithmetic_and_eval() {
        // (x + 2y + 1)(x - y) = x^2 + xy - 2y^2 + x - y
        let a = p(&[(1, 0, 1), (0, 1, 2), (0, 0, 1)]);
        let b = p(&[(1, 0, 1), (0, 1, -1)]);
        let prod = a.mul(&b);
        assert_eq!(prod, p(&[(2, 0, 1), (1, 1, 1), (0, 2, -2), (1, 0, 1), (0, 1, -1)]));
        assert_eq!(prod.eval(&qi(2), &qi(3)), a.eval(&qi(2), &qi(3)) * b.eval(&qi(2), &qi(3)));
    }

    #[test]
    fn exact_division_round_trips() {
        let a = p(&[(1, 0, 1), (0, 1, 2), (0, 0, 1)]);
        let b = p(&[(2, 0, 1), (0, 1, -1)]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        let off = prod.add(&BiPoly::constant(qi(1)));
        assert!(off.div_exact(&a).is_none());
    }

    #[test]
    fn substitution_views() {
        let q = p(&[(2, 1, 3), (0, 2, 1), (1, 0, -2)]); // 3x^2 y + y^2 - 2x
        let at_x2 = q.subst_x(&qi(2)); // 12y + y^2 - 4
        assert_eq!(at_x2.coeff(0), qi(-4));
        assert_eq!(at_x2.coeff(1), qi(12));
        assert_eq!(at_x2.coeff(2), qi(1));
        let back = BiPoly::from_y_polys(&q.as_y_polys());
        assert_eq!(back, q);
    }

    #[test]
    fn gcd_extracts_common_line() {
        // (x + y - 1) shared by both factors.
        let line = p(&[(1, 0, 1), (0, 1, 1), (0, 0, -1)]);
        let a = line.mul(&p(&[(2, 0, 1), (0, 2, 1), (0, 0, -25)]));
        let b = line.mul(&p(&[(1, 0, 1), (0, 1, -1)]));
        let g = BiPoly::gcd(&a, &b);
        assert_eq!(g, line.normalized());
        assert_eq!(a.div_exact(&g).unwrap().mul(&g), a);
    }

    #[test]
    fn gcd_of_coprime_is_constant() {
        let a = p(&[(1, 0, 1), (0, 1, 1)]);
        let b = p(&[(1, 0, 1), (0, 1, -1), (0, 0, 2)]);
        assert!(BiPoly::gcd(&a, &b).is_constant());
    }

    #[test]
    fn gcd_with_pure_x_argument() {
        // gcd(x^2 - x, x y) = x
        let a = p(&[(2, 0, 1), (1, 0, -1)]);
        let b = p(&[(1, 1, 1)]);
        assert_eq!(BiPoly::gcd(&a, &b), p(&[(1, 0, 1)]));
    }

    #[test]
    fn resultant_of_parabola_and_line() {
        // res_y(y - x^2, y - x) vanishes exactly at intersections x = 0, 1.
        let a = p(&[(0, 1, 1), (2, 0, -1)]);
        let b = p(&[(0, 1, 1), (1, 0, -1)]);
        let r = BiPoly::resultant_y(&a, &b);
        assert_eq!(r.degree(), Some(2));
        assert!(r.eval(&qi(0)).is_zero());
        assert!(r.eval(&qi(1)).is_zero());
        assert!(!r.eval(&qi(2)).is_zero());
    }

    #[test]
    fn resultant_roots_of_circle_pair_curves() {
        // res_y(x(x^2 + y^2 - 25), y^3 - 9y) vanishes exactly on {0, ±4, ±5}.
        let a = p(&[(3, 0, 1), (1, 2, 1), (1, 0, -25)]);
        let b = p(&[(0, 3, 1), (0, 1, -9)]);
        let r = BiPoly::resultant_y(&a, &b);
        let roots = crate::poly::uni::real_roots_exact(r.coeffs(), 1e-9);
        let vals: Vec<Q> = roots.roots.iter().map(|x| x.value.clone()).collect();
        assert_eq!(vals, vec![qi(-5), qi(-4), qi(0), qi(4), qi(5)]);
    }

    #[test]
    fn compose_matches_pointwise() {
        let q = p(&[(2, 0, 1), (1, 1, -3), (0, 1, 2)]);
        let px = p(&[(1, 0, 2), (0, 0, 1)]); // 2x + 1
        let py = p(&[(0, 1, 1), (1, 0, -1)]); // y - x
        let comp = q.compose(&px, &py);
        for (x, y) in [(0, 0), (1, 2), (-3, 5)] {
            let (x, y) = (qi(x), qi(y));
            let direct = q.eval(&px.eval(&x, &y), &py.eval(&x, &y));
            assert_eq!(comp.eval(&x, &y), direct);
        }
    }

    #[test]
    fn display_is_readable() {
        let q = p(&[(2, 1, 1), (1, 0, -25), (0, 0, 3)]);
        assert_eq!(q.to_string(), "x^2*y - 25*x + 3");
    }
}
