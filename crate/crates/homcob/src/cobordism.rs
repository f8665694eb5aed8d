//! The formal group law of complex cobordism over symbolic coefficients, its power
//! system, and the dictionary between the `a_i` and `b_n` generators.

use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::exactalg::rational::{q, Q};
use crate::exactalg::series::uni;
use crate::exactalg::{MultiPoly, Ring, TruncatedSeries};

/// `g(u) = u + Σ b_n u^{n+1}`, its compositional inverse, and `F(u1, u2)`.
#[derive(Clone, Debug)]
pub struct FGLData {
    pub cutoff: u32,
    /// `u1..uk, b1..bD`.
    pub ring: Ring,
    pub u: Vec<usize>,
    pub b: Vec<usize>,
    pub log: TruncatedSeries,
    pub exp: TruncatedSeries,
    pub law: TruncatedSeries,
}

impl FGLData {
    fn series(&self, body: MultiPoly) -> TruncatedSeries {
        TruncatedSeries::new(body, self.u.clone(), self.cutoff)
    }

    pub fn var(&self, i: usize) -> TruncatedSeries {
        self.series(MultiPoly::var(&self.ring, self.u[i]))
    }

    /// `g ∘ s`.
    pub fn log_of(&self, s: &TruncatedSeries) -> TruncatedSeries {
        self.log.compose(self.u[0], s)
    }

    /// `g⁻¹ ∘ s`.
    pub fn exp_of(&self, s: &TruncatedSeries) -> TruncatedSeries {
        self.exp.compose(self.u[0], s)
    }

    /// `F(s1, s2) = g⁻¹(g(s1) + g(s2))`.
    pub fn add(&self, s1: &TruncatedSeries, s2: &TruncatedSeries) -> TruncatedSeries {
        self.exp_of(&self.log_of(s1).add(&self.log_of(s2)))
    }

    /// The formal inverse `ī(s)` with `F(s, ī(s)) = 0`.
    pub fn inverse(&self, s: &TruncatedSeries) -> TruncatedSeries {
        self.exp_of(&self.log_of(s).scale(&-Q::one()))
    }

    /// `[n](u_i)` by the recursion `[n](u) = F(u, [n−1](u))`.
    pub fn power_in(&self, n: i64, i: usize) -> TruncatedSeries {
        let base = if n < 0 { self.inverse(&self.var(i)) } else { self.var(i) };
        let mut acc = self.series(MultiPoly::zero(&self.ring));
        for _ in 0..n.unsigned_abs() {
            acc = self.add(&base, &acc);
        }
        acc
    }

    pub fn u_count(&self) -> usize {
        self.u.len()
    }
}

/// The universal law to series degree `d` with `k` formal variables (at least 2).
pub fn formal_group_law_in(d: u32, k: usize) -> Result<FGLData> {
    if d == 0 {
        return invalid("formal_group_law needs a cutoff D ≥ 1");
    }
    let k = k.max(2);
    let mut names = Ring::block("u", k);
    names.extend(Ring::block("b", d as usize));
    let ring = Ring::from_names(&names);
    let u: Vec<usize> = (0..k).collect();
    let b: Vec<usize> = (k..k + d as usize).collect();
    let mut g = MultiPoly::var(&ring, 0);
    for (n, &bi) in b.iter().enumerate() {
        let mut e = vec![0; ring.len()];
        e[0] = n as u32 + 2;
        e[bi] = 1;
        g.add_term(e, Q::one());
    }
    let log1 = TruncatedSeries::new(g, vec![0], d);
    let exp1 = log1.reversion()?;
    let log = TruncatedSeries::new(log1.body().clone(), u.clone(), d);
    let exp = TruncatedSeries::new(exp1.body().clone(), u.clone(), d);
    let mut fgl = FGLData { cutoff: d, ring, u, b, law: log.clone(), log, exp };
    fgl.law = fgl.add(&fgl.var(0), &fgl.var(1));
    Ok(fgl)
}

pub fn formal_group_law(d: u32) -> Result<FGLData> {
    formal_group_law_in(d, 3)
}

/// `[n](u1)`.
pub fn power_system(n: i64, fgl: &FGLData) -> TruncatedSeries {
    fgl.power_in(n, 0)
}

/// `[n](u) = F_q [n_q](u_q)`.
pub fn multi_bracket(n: &[i64], fgl: &FGLData) -> Result<TruncatedSeries> {
    if n.len() > fgl.u_count() {
        return invalid(format!("multi_bracket: {} entries but the law has {} variables", n.len(), fgl.u_count()));
    }
    let mut acc = fgl.series(MultiPoly::zero(&fgl.ring));
    for (i, &ni) in n.iter().enumerate() {
        if ni != 0 {
            acc = fgl.add(&acc, &fgl.power_in(ni, i));
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    AToB,
    BToA,
}

/// Conversion polynomials between `{a_i}` and `{b_n}` from `1 + Σ a_i x^i = x / g⁻¹(x)`.
#[derive(Clone, Debug)]
pub struct BasisMap {
    pub cutoff: u32,
    /// `a1..aD`.
    pub a_ring: Ring,
    /// `b1..bD`.
    pub b_ring: Ring,
    /// `a_i` as polynomials in `b`.
    pub a_in_b: Vec<MultiPoly>,
    /// `b_n` as polynomials in `a`.
    pub b_in_a: Vec<MultiPoly>,
}

impl BasisMap {
    pub fn new(d: u32) -> Result<BasisMap> {
        let dd = d as usize;
        let a_ring = Ring::from_names(&Ring::block("a", dd));
        let b_ring = Ring::from_names(&Ring::block("b", dd));
        // x / g⁻¹(x) in the ring x, b
        let mut names = vec!["x".to_string()];
        names.extend(Ring::block("b", dd));
        let xb = Ring::from_names(&names);
        let a_in_b = x_over_series(&xb, &reversed(&xb, d)?, d)?
            .into_iter()
            .map(|p| p.rebase(&b_ring))
            .collect::<Result<Vec<_>>>()?;
        // g = reversion of x / f(x), f = 1 + Σ a_i x^i
        let mut names = vec!["x".to_string()];
        names.extend(Ring::block("a", dd));
        let xa = Ring::from_names(&names);
        let mut f = MultiPoly::one(&xa);
        for i in 1..=dd {
            let mut e = vec![0; xa.len()];
            e[0] = i as u32;
            e[i] = 1;
            f.add_term(e, Q::one());
        }
        let x = MultiPoly::var(&xa, 0);
        let inv_f = TruncatedSeries::new(f, vec![0], d + 1).invert()?;
        let chd = TruncatedSeries::new(&x * inv_f.body(), vec![0], d + 1);
        let g = chd.reversion()?;
        let b_in_a = (1..=dd)
            .map(|n| g.body().coeff_in(0, n as u32 + 1).rebase(&a_ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(BasisMap { cutoff: d, a_ring, b_ring, a_in_b, b_in_a })
    }

    /// Rewrites `class` (in `a` or `b` variables, any ring containing them) in the other family.
    pub fn convert(&self, class: &MultiPoly, dir: Direction) -> Result<MultiPoly> {
        let (src, images, target) = match dir {
            Direction::AToB => (&self.a_ring, &self.a_in_b, &self.b_ring),
            Direction::BToA => (&self.b_ring, &self.b_in_a, &self.a_ring),
        };
        let p = class.rebase(src)?;
        if p.is_zero() {
            return Ok(MultiPoly::zero(target));
        }
        let deg = p.weighted_degrees().into_iter().max().unwrap_or(0);
        if deg > self.cutoff {
            return invalid(format!("class has degree {deg} above the conversion cutoff {}", self.cutoff));
        }
        let imgs: Vec<Option<MultiPoly>> = images.iter().cloned().map(Some).collect();
        Ok(p.substitute(&imgs))
    }
}

/// `g⁻¹(x)` in the ring `x, b1..bD`.
fn reversed(xb: &Ring, d: u32) -> Result<TruncatedSeries> {
    let mut g = MultiPoly::var(xb, 0);
    for n in 1..=d as usize {
        let mut e = vec![0; xb.len()];
        e[0] = n as u32 + 1;
        e[n] = 1;
        g.add_term(e, Q::one());
    }
    TruncatedSeries::new(g, vec![0], d + 1).reversion()
}

/// Coefficients of `x / s(x)` for `s = x + …`, degrees `1..=d`.
fn x_over_series(ring: &Ring, s: &TruncatedSeries, d: u32) -> Result<Vec<MultiPoly>> {
    let coeffs = s.coefficients(0);
    let mut shifted = MultiPoly::zero(ring);
    for (k, c) in coeffs.iter().enumerate().skip(1) {
        let mut e = vec![0; ring.len()];
        e[0] = k as u32 - 1;
        shifted.add_assign_ref(&(c * &MultiPoly::monomial(ring, e, Q::one())));
    }
    let inv = TruncatedSeries::new(shifted, vec![0], d).invert()?;
    Ok((1..=d).map(|i| inv.body().coeff_in(0, i)).collect())
}

pub fn basis_convert(class: &MultiPoly, dir: Direction, cutoff: u32) -> Result<MultiPoly> {
    BasisMap::new(cutoff)?.convert(class, dir)
}

/// A named genus series `f(u) = u + …` as coefficients up to `u^{d+1}`.
pub fn named_series(name: &str, d: usize) -> Result<Vec<Q>> {
    let c = d + 1;
    let lower = name.to_ascii_lowercase();
    let series = match lower.as_str() {
        "trivial" | "augmentation" | "u" => {
            let mut v = vec![Q::zero(); c + 1];
            v[1] = Q::one();
            v
        }
        "todd" => {
            let mut v = uni::exp_scaled(&q(-1), c).into_iter().map(|x| -x).collect::<Vec<_>>();
            v[0] += Q::one();
            v
        }
        "tanh" | "signature" | "l" => {
            let ep = uni::exp_scaled(&q(1), c);
            let em = uni::exp_scaled(&q(-1), c);
            let sinh: Vec<Q> = ep.iter().zip(&em).map(|(a, b)| (a - b) / q(2)).collect();
            let cosh: Vec<Q> = ep.iter().zip(&em).map(|(a, b)| (a + b) / q(2)).collect();
            uni::mul(&sinh, &uni::invert(&cosh, c)?, c)
        }
        "a-hat" | "ahat" => {
            let ep = uni::exp_scaled(&Q::new(1.into(), 2.into()), c);
            let em = uni::exp_scaled(&Q::new((-1).into(), 2.into()), c);
            ep.iter().zip(&em).map(|(a, b)| a - b).collect()
        }
        _ => {
            if let Some(y) = lower.strip_prefix("chi-y:").or_else(|| lower.strip_prefix("chiy:")) {
                return chi_y_series(&crate::exactalg::rational::parse_q(y)?, d);
            }
            return invalid(format!("unknown genus series {name:?} (todd, tanh, a-hat, trivial, chi-y:<y>)"));
        }
    };
    Ok(series)
}

/// `f_y(u) = (1 − e^{−u(1+y)}) / (1 + y·e^{−u(1+y)})`; `y = −1` gives `u/(1+u)`.
pub fn chi_y_series(y: &Q, d: usize) -> Result<Vec<Q>> {
    let c = d + 1;
    let ys = y + Q::one();
    if ys.is_zero() {
        // u / (1 + u)
        return Ok((0..=c).map(|k| if k == 0 { Q::zero() } else if k % 2 == 1 { Q::one() } else { -Q::one() }).collect());
    }
    let e = uni::exp_scaled(&-ys.clone(), c);
    let mut num: Vec<Q> = e.iter().map(|x| -x).collect();
    num[0] += Q::one();
    let mut den: Vec<Q> = e.iter().map(|x| x * y).collect();
    den[0] += Q::one();
    Ok(uni::mul(&num, &uni::invert(&den, c)?, c))
}

/// Values of `a_1..a_d` solving `1 + Σ a_i x^i = x / f(x)`.
pub fn specialize_genus(f: &[Q], d: usize) -> Result<Vec<Q>> {
    let c = uni::x_over(f, d)?;
    Ok(c[1..=d].to_vec())
}

/// Substitutes `a_i ↦ values[i−1]` into a class polynomial in `a` variables.
pub fn genus_of_class(class: &MultiPoly, values: &[Q]) -> Result<Q> {
    let ring = class.ring();
    let mut assign = Vec::new();
    for i in 0..ring.len() {
        let name = ring.name(i);
        let idx = name.strip_prefix('a').and_then(|s| s.parse::<usize>().ok());
        match idx {
            Some(k) if k >= 1 && k <= values.len() => assign.push((i, values[k - 1].clone())),
            Some(k) if k >= 1 => {
                if class.degree_in(i) > 0 {
                    return invalid(format!("no value for a{k}: genus assignment has length {}", values.len()));
                }
            }
            _ => {
                if class.degree_in(i) > 0 {
                    return invalid(format!("class depends on {name}, not only on the a_i"));
                }
            }
        }
    }
    let r = class.partial_eval(&assign);
    if !r.is_constant() {
        return Err(Error::Math("genus substitution left a non-constant polynomial".into()));
    }
    Ok(r.constant_term())
}

/// `genus_of_class` for a named series.
pub fn genus_of_class_named(class: &MultiPoly, series: &str, d: usize) -> Result<Q> {
    genus_of_class(class, &specialize_genus(&named_series(series, d)?, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::qf;

    #[test]
    fn low_degree_law() {
        let f = formal_group_law(1).unwrap();
        assert_eq!(f.law.body().to_text(), "u1 + u2");
        let f = formal_group_law(2).unwrap();
        assert_eq!(f.law.body().to_text(), "-2*u1*u2*b1 + u1 + u2");
    }

    #[test]
    fn power_system_small() {
        let f = formal_group_law(3).unwrap();
        assert!(power_system(0, &f).is_zero());
        assert_eq!(power_system(1, &f).body().to_text(), "u1");
        let two = power_system(2, &f).body().clone();
        assert_eq!(two.coeff_in(0, 1).to_text(), "2");
        assert_eq!(two.coeff_in(0, 2).to_text(), "-2*b1");
    }

    #[test]
    fn basis_examples() {
        let m = BasisMap::new(4).unwrap();
        assert_eq!(m.a_in_b[0].to_text(), "b1");
        assert_eq!(m.a_in_b[1].to_text(), "-b1^2 + b2");
        let a = Ring::from_names(&Ring::block("a", 4));
        let a1sq = MultiPoly::parse("a1^2", &a).unwrap();
        assert_eq!(m.convert(&a1sq, Direction::AToB).unwrap().to_text(), "b1^2");
        let p = MultiPoly::parse("a1^3 - 3*a1*a2 + 3*a3 + a4", &a).unwrap();
        let back = m.convert(&m.convert(&p, Direction::AToB).unwrap(), Direction::BToA).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn named_assignments() {
        let todd = specialize_genus(&named_series("todd", 4).unwrap(), 4).unwrap();
        assert_eq!(todd, vec![qf(1, 2), qf(1, 12), q(0), qf(-1, 720)]);
        let sig = specialize_genus(&named_series("tanh", 4).unwrap(), 4).unwrap();
        assert_eq!(sig, vec![q(0), qf(1, 3), q(0), qf(-1, 45)]);
        let triv = specialize_genus(&named_series("trivial", 3).unwrap(), 3).unwrap();
        assert!(triv.iter().all(|x| x.is_zero()));
        let euler = specialize_genus(&chi_y_series(&q(-1), 3).unwrap(), 3).unwrap();
        assert_eq!(euler, vec![q(1), q(0), q(0)]);
        assert_eq!(chi_y_series(&q(1), 5).unwrap(), named_series("tanh", 5).unwrap());
        assert_eq!(chi_y_series(&q(0), 5).unwrap(), named_series("todd", 5).unwrap());
        assert!(specialize_genus(&[q(0), q(2)], 2).is_err());
    }

    #[test]
    fn s6_genera() {
        let a = Ring::from_names(&Ring::block("a", 3));
        let s6 = MultiPoly::parse("2*a1^3 - 6*a1*a2 + 6*a3", &a).unwrap();
        assert_eq!(genus_of_class_named(&s6, "todd", 3).unwrap(), q(0));
        assert_eq!(genus_of_class_named(&s6, "tanh", 3).unwrap(), q(0));
        assert_eq!(genus_of_class(&s6, &[q(1), q(0), q(0)]).unwrap(), q(2));
    }
}
