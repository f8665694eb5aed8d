//! Power series truncated by total degree in a designated set of series variables.

use num_traits::{One, Zero};

use super::poly::{MultiPoly, Ring};
use super::rational::Q;
use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    body: MultiPoly,
    vars: Vec<usize>,
    cutoff: u32,
}

impl TruncatedSeries {
    pub fn new(body: MultiPoly, vars: Vec<usize>, cutoff: u32) -> TruncatedSeries {
        let body = body.truncate(&vars, cutoff);
        TruncatedSeries { body, vars, cutoff }
    }

    /// `Σ coeffs[k]·v^k` in the single series variable `var`.
    pub fn univariate(ring: &Ring, var: usize, coeffs: &[Q], cutoff: u32) -> TruncatedSeries {
        let mut body = MultiPoly::zero(ring);
        for (k, c) in coeffs.iter().enumerate().take(cutoff as usize + 1) {
            let mut e = vec![0; ring.len()];
            e[var] = k as u32;
            body.add_term(e, c.clone());
        }
        TruncatedSeries { body, vars: vec![var], cutoff }
    }

    pub fn body(&self) -> &MultiPoly {
        &self.body
    }

    pub fn ring(&self) -> &Ring {
        self.body.ring()
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn with_body(&self, body: MultiPoly) -> TruncatedSeries {
        TruncatedSeries::new(body, self.vars.clone(), self.cutoff)
    }

    fn series_degree(&self, e: &[u32]) -> u32 {
        self.vars.iter().map(|&i| e[i]).sum()
    }

    /// Part of series degree 0.
    pub fn constant_part(&self) -> MultiPoly {
        MultiPoly::from_terms(
            self.ring(),
            self.body
                .terms()
                .filter(|(e, _)| self.series_degree(e) == 0)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.with_body(&self.body + &other.body)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.with_body(&self.body - &other.body)
    }

    pub fn scale(&self, k: &Q) -> TruncatedSeries {
        self.with_body(self.body.scale(k))
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let cut = self.cutoff.min(other.cutoff);
        TruncatedSeries::new(self.body.mul_trunc(&other.body, &self.vars, cut), self.vars.clone(), cut)
    }

    pub fn pow(&self, n: u32) -> TruncatedSeries {
        let mut acc = self.with_body(MultiPoly::one(self.ring()));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the series-degree-0 part must be a nonzero rational.
    pub fn invert(&self) -> Result<TruncatedSeries> {
        let c0 = self.constant_part();
        if !c0.is_constant() || c0.is_zero() {
            return invalid("series_invert: constant term must be a nonzero rational");
        }
        let c = c0.constant_term();
        let inv_c = Q::one() / &c;
        // s = c(1 + r), 1/s = (1/c) Σ (-r)^k
        let r = self.with_body(&self.body.scale(&inv_c) - &MultiPoly::one(self.ring()));
        let minus_r = r.scale(&-Q::one());
        let mut acc = self.with_body(MultiPoly::one(self.ring()));
        let mut power = acc.clone();
        for _ in 0..self.cutoff {
            power = power.mul(&minus_r);
            if power.body.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&inv_c))
    }

    /// Substitutes `var ↦ r` (a series in the same ring and series variables).
    pub fn compose(&self, var: usize, r: &TruncatedSeries) -> TruncatedSeries {
        let mut images: Vec<Option<MultiPoly>> = vec![None; self.ring().len()];
        images[var] = Some(r.body.clone());
        let cut = self.cutoff.min(r.cutoff);
        let body = self.body.substitute_trunc(&images, Some((&self.vars, cut)));
        TruncatedSeries::new(body, self.vars.clone(), cut)
    }

    /// Coefficients of `var^k`, k = 0..=cutoff, for a one-variable series.
    pub fn coefficients(&self, var: usize) -> Vec<MultiPoly> {
        (0..=self.cutoff).map(|k| self.body.coeff_in(var, k)).collect()
    }

    /// Compositional inverse of `s(v) = v + …` in its single series variable.
    pub fn reversion(&self) -> Result<TruncatedSeries> {
        if self.vars.len() != 1 {
            return invalid("series_reversion needs exactly one series variable");
        }
        let v = self.vars[0];
        let coeffs = self.coefficients(v);
        if !coeffs[0].is_zero() {
            return invalid("series_reversion: nonzero constant term");
        }
        if self.cutoff >= 1 && coeffs[1] != MultiPoly::one(self.ring()) {
            return invalid("series_reversion: linear coefficient must be 1");
        }
        let x = self.with_body(MultiPoly::var(self.ring(), v));
        let mut r = x.clone();
        for _ in 0..self.cutoff {
            let sr = self.compose(v, &r);
            r = x.sub(&sr.sub(&r));
        }
        Ok(r)
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
}

/// Plain rational one-variable series helpers, `c[k]` the coefficient of `u^k`.
pub mod uni {
    use super::*;
    use crate::exactalg::rational::factorial;

    pub fn mul(a: &[Q], b: &[Q], cutoff: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); cutoff + 1];
        for (i, x) in a.iter().enumerate().take(cutoff + 1) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(cutoff + 1 - i) {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn invert(a: &[Q], cutoff: usize) -> Result<Vec<Q>> {
        if a.first().is_none_or(|c| c.is_zero()) {
            return invalid("series_invert: zero constant term");
        }
        let mut out = vec![Q::zero(); cutoff + 1];
        out[0] = Q::one() / &a[0];
        for n in 1..=cutoff {
            let mut s = Q::zero();
            for k in 1..=n.min(a.len() - 1) {
                s += &a[k] * &out[n - k];
            }
            out[n] = -s / &a[0];
        }
        Ok(out)
    }

    /// Coefficients of `e^{c·u}`.
    pub fn exp_scaled(c: &Q, cutoff: usize) -> Vec<Q> {
        (0..=cutoff)
            .map(|k| num_traits::pow(c.clone(), k) / Q::from_integer(factorial(k as u32)))
            .collect()
    }

    /// Coefficients of `u / f(u)` for `f = u + …` given as coefficients.
    pub fn x_over(f: &[Q], cutoff: usize) -> Result<Vec<Q>> {
        if f.len() < 2 || !f[0].is_zero() || !f[1].is_one() {
            return invalid("series must be normalized: f(0) = 0, f'(0) = 1");
        }
        invert(&f[1..], cutoff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::q;

    #[test]
    fn geometric_inverse() {
        let ring = Ring::from_names(&["x", "a1"]);
        let s = TruncatedSeries::new(MultiPoly::parse("1 + a1*x", &ring).unwrap(), vec![0], 2);
        assert_eq!(s.invert().unwrap().body().to_text(), "x^2*a1^2 - x*a1 + 1");
        let s = TruncatedSeries::new(MultiPoly::parse("1 + x + x^2", &ring).unwrap(), vec![0], 3);
        assert_eq!(s.invert().unwrap().body().to_text(), "x^3 - x + 1");
        let one = TruncatedSeries::new(MultiPoly::one(&ring), vec![0], 4);
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn zero_constant_rejected() {
        let ring = Ring::from_names(&["x"]);
        let s = TruncatedSeries::new(MultiPoly::parse("x", &ring).unwrap(), vec![0], 2);
        assert!(s.invert().is_err());
    }

    #[test]
    fn reversion_small() {
        let ring = Ring::from_names(&["x", "b1"]);
        let s = TruncatedSeries::new(MultiPoly::parse("x + b1*x^2", &ring).unwrap(), vec![0], 3);
        assert_eq!(s.reversion().unwrap().body().to_text(), "2*x^3*b1^2 - x^2*b1 + x");
        let id = TruncatedSeries::new(MultiPoly::parse("x", &ring).unwrap(), vec![0], 5);
        assert_eq!(id.reversion().unwrap(), id);
        let bad = TruncatedSeries::new(MultiPoly::parse("2*x", &ring).unwrap(), vec![0], 3);
        assert!(bad.reversion().is_err());
    }

    #[test]
    fn uni_helpers() {
        let e = uni::exp_scaled(&q(1), 3);
        let inv = uni::invert(&e, 3).unwrap();
        assert_eq!(uni::mul(&e, &inv, 3), vec![q(1), q(0), q(0), q(0)]);
    }
}
