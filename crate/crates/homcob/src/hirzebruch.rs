//! The χ_y genus, signature and Todd genus from fixed-point indices; the rigidity functional
//! `Σ sign(w) Π 1/f(⟨Λ_j(w), u⟩)` with odd-series certification and structure comparison.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::exactalg::rational::{dot, fmt_q, parse_q, q, Q};
use crate::exactalg::{MultiPoly, Ring};
use crate::rootdata::{fmt_root, neg, Ordering, QVec};
use crate::structures::{find_odd_pairing, HomogeneousSpace, StableStructure, Structure};
use crate::toricgenus::{fixed_points, generic_points, FixedPointData, DEFAULT_SEED};

/// `Σ c_k y^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YPolynomial {
    pub coeffs: Vec<Q>,
}

impl YPolynomial {
    fn trimmed(mut coeffs: Vec<Q>) -> YPolynomial {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        YPolynomial { coeffs }
    }

    pub fn eval(&self, y: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * y + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `y ↦ −y`.
    pub fn reflect(&self) -> YPolynomial {
        let c = self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() }).collect();
        YPolynomial { coeffs: c }
    }

    pub fn to_json(&self) -> Value {
        json!(self.coeffs.iter().map(fmt_q).collect::<Vec<_>>())
    }
}

impl fmt::Display for YPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => "y".into(),
                _ => format!("y^{k}"),
            };
            if mono.is_empty() {
                s.push_str(&fmt_q(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{mono}", fmt_q(&a)));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        f.write_str(&s)
    }
}

/// A generic ordering for the space: `(N, …, 1)` when that is generic, otherwise powers of 3.
pub fn generic_ordering(space: &HomogeneousSpace) -> Ordering {
    let d = space.coord_dim();
    let first = Ordering::default_for(d);
    if first.check_generic(&space.g.roots).is_ok() {
        return first;
    }
    Ordering::new((0..d).map(|i| num_traits::pow(q(3), d - i)).collect())
}

fn weight_index(weights: &[QVec], ord: &Ordering) -> Result<usize> {
    let mut k = 0;
    for w in weights {
        let p = dot(w, &ord.v);
        if p.is_zero() {
            return invalid(format!("ordering is not generic: it vanishes on the weight {}", fmt_root(w)));
        }
        if p.is_negative() {
            k += 1;
        }
    }
    Ok(k)
}

/// `ind(w) = ½ Σ (1 − ε_j(w) s_j(w))`, `s_j(w)` the sign of `⟨wβ_j, v⟩ = ⟨β_j, wᵀv⟩`.
fn fast_index(space: &HomogeneousSpace, beta: &[QVec], eps: &[i8], coset: usize, ord: &Ordering) -> usize {
    let m = &space.reps[coset].matrix;
    let wtv: QVec = (0..ord.v.len()).map(|i| (0..ord.v.len()).map(|r| &m[r][i] * &ord.v[r]).sum()).collect();
    beta.iter().zip(eps).filter(|(b, &e)| dot(b, &wtv).is_positive() != (e > 0)).count()
}

/// Number of negative weights at the fixed point `coset`, checked against the sign formula.
pub fn index(space: &HomogeneousSpace, structure: &Structure, coset: usize, ord: &Ordering) -> Result<usize> {
    if coset >= space.euler {
        return invalid(format!("coset {coset} out of range (χ = {})", space.euler));
    }
    ord.check_generic(&space.g.roots)?;
    let st = structure.as_stable(space);
    let direct = weight_index(&st.weights(space, coset), ord)?;
    if fast_index(space, &st.base.roots(space), &st.eps[coset], coset, ord) != direct {
        return Err(Error::Math("index formulas disagree".into()));
    }
    Ok(direct)
}

pub fn indices(space: &HomogeneousSpace, structure: &Structure, ord: &Ordering) -> Result<Vec<usize>> {
    ord.check_generic(&space.g.roots)?;
    let st = structure.as_stable(space);
    let beta = st.base.roots(space);
    Ok((0..space.euler).map(|c| fast_index(space, &beta, &st.eps[c], c, ord)).collect())
}

fn chi_y_from(st: &StableStructure, ind: &[usize], n: usize) -> YPolynomial {
    let mut c = vec![Q::zero(); n + 1];
    for (k, &i) in ind.iter().enumerate() {
        let s = st.sign(k) as i64 * if i % 2 == 1 { -1 } else { 1 };
        c[i] += q(s);
    }
    YPolynomial::trimmed(c)
}

/// `χ_y = Σ_w sign(w) (−y)^{ind(w)}`.
pub fn chi_y(space: &HomogeneousSpace, structure: &Structure, ord: &Ordering) -> Result<YPolynomial> {
    let ind = indices(space, structure, ord)?;
    Ok(chi_y_from(&structure.as_stable(space), &ind, space.n))
}

pub fn signature(space: &HomogeneousSpace, structure: &Structure) -> Result<Q> {
    let ord = generic_ordering(space);
    let st = structure.as_stable(space);
    let ind = indices(space, structure, &ord)?;
    let direct: i64 = ind.iter().enumerate().map(|(k, i)| st.sign(k) as i64 * if i % 2 == 1 { -1 } else { 1 }).sum();
    let via = chi_y_from(&st, &ind, space.n).eval(&Q::one());
    if via != q(direct) {
        return Err(Error::Math("χ_1 differs from the direct signature sum".into()));
    }
    Ok(via)
}

/// `χ_0`, with `0⁰ = 1`.
pub fn todd(space: &HomogeneousSpace, structure: &Structure) -> Result<Q> {
    let ord = generic_ordering(space);
    Ok(chi_y(space, structure, &ord)?.coeffs[0].clone())
}

// ---------------------------------------------------------------------------
// Rigidity

/// `f(u) = p(u)/q(u)` with `f(0) = 0`, `f'(0) = 1`; `truncated` marks a polynomial truncation
/// of a power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigiditySeries {
    pub num: Vec<Q>,
    pub den: Vec<Q>,
    pub truncated: bool,
    pub text: String,
}

fn fmt_upoly(c: &[Q]) -> String {
    let ring = Ring::from_names(&["u"]);
    MultiPoly::from_terms(&ring, c.iter().enumerate().map(|(k, x)| (vec![k as u32], x.clone()))).to_text()
}

fn poly_eval(c: &[Q], z: &Q) -> Q {
    c.iter().rev().fold(Q::zero(), |acc, x| acc * z + x)
}

fn parse_factor(f: &str) -> Result<(Q, usize)> {
    let f = f.trim();
    if f.is_empty() {
        return invalid("empty factor in series text");
    }
    if let Some(rest) = f.strip_prefix('u') {
        let (k, div) = match rest.split_once('/') {
            Some((e, d)) => (e, Some(d)),
            None => (rest, None),
        };
        let e = match k.strip_prefix('^') {
            Some(x) => x.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad exponent in '{f}'")))?,
            None if k.is_empty() => 1,
            None => return invalid(format!("bad factor '{f}'")),
        };
        let c = match div {
            Some(d) => Q::one() / parse_q(d.trim())?,
            None => Q::one(),
        };
        return Ok((c, e));
    }
    Ok((parse_q(f)?, 0))
}

/// Parses a polynomial in `u` such as `1 + u^2/3` or `u - 1/6*u^3`.
pub fn parse_upoly(text: &str) -> Result<Vec<Q>> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.trim_start_matches('(').trim_end_matches(')');
    if t.is_empty() {
        return invalid("empty polynomial");
    }
    let mut out: Vec<Q> = Vec::new();
    let mut start = 0;
    let bytes = t.as_bytes();
    let mut pieces = Vec::new();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'/' && bytes[i - 1] != b'*' {
            pieces.push(&t[start..i]);
            start = i;
        }
    }
    pieces.push(&t[start..]);
    for p in pieces {
        let (sign, body) = match p.as_bytes()[0] {
            b'+' => (Q::one(), &p[1..]),
            b'-' => (-Q::one(), &p[1..]),
            _ => (Q::one(), p),
        };
        let mut c = sign;
        let mut e = 0;
        for f in body.split('*') {
            let (k, d) = parse_factor(f)?;
            c *= k;
            e += d;
        }
        if out.len() <= e {
            out.resize(e + 1, Q::zero());
        }
        out[e] += c;
    }
    Ok(out)
}

impl RigiditySeries {
    pub fn rational(num: Vec<Q>, den: Vec<Q>, text: &str) -> Result<RigiditySeries> {
        let s = RigiditySeries { num, den, truncated: false, text: text.to_string() };
        s.check()?;
        Ok(s)
    }

    /// `f(u) = u + Σ f_k u^{k+1}` kept to the given coefficients.
    pub fn truncated(coeffs: Vec<Q>) -> Result<RigiditySeries> {
        let text = format!("trunc:{}", fmt_upoly(&coeffs));
        let s = RigiditySeries { num: coeffs, den: vec![Q::one()], truncated: true, text };
        s.check()?;
        Ok(s)
    }

    /// `p(u)/(q(u))`, `p(u)`, or `trunc:<polynomial>`.
    pub fn parse(text: &str) -> Result<RigiditySeries> {
        let t = text.trim();
        if let Some(p) = t.strip_prefix("trunc:") {
            return RigiditySeries::truncated(parse_upoly(p)?);
        }
        let clean: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        // the top-level '/' before a parenthesized denominator
        let mut depth = 0;
        let mut split = None;
        for (i, ch) in clean.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 && clean[i + 1..].starts_with('(') => split = Some(i),
                _ => {}
            }
        }
        let (num, den) = match split {
            Some(i) => (parse_upoly(&clean[..i])?, parse_upoly(&clean[i + 1..])?),
            None => (parse_upoly(&clean)?, vec![Q::one()]),
        };
        RigiditySeries::rational(num, den, t)
    }

    fn check(&self) -> Result<()> {
        let at = |c: &[Q], i: usize| c.get(i).cloned().unwrap_or_else(Q::zero);
        if !at(&self.num, 0).is_zero() {
            return invalid(format!("series {} does not vanish at 0", self.text));
        }
        let q0 = at(&self.den, 0);
        if q0.is_zero() || at(&self.num, 1) / q0 != Q::one() {
            return invalid(format!("series {} must satisfy f'(0) = 1", self.text));
        }
        Ok(())
    }

    /// `f(−u) = −f(u)`.
    pub fn is_odd(&self) -> bool {
        let odd = |c: &[Q]| c.iter().enumerate().all(|(k, x)| k % 2 == 1 || x.is_zero());
        let even = |c: &[Q]| c.iter().enumerate().all(|(k, x)| k % 2 == 0 || x.is_zero());
        (odd(&self.num) && even(&self.den)) || (even(&self.num) && odd(&self.den))
    }

    /// `1/f(z)`; `None` when `f(z)` is zero or undefined.
    pub fn recip_at(&self, z: &Q) -> Option<Q> {
        let p = poly_eval(&self.num, z);
        let d = poly_eval(&self.den, z);
        if p.is_zero() || d.is_zero() {
            None
        } else {
            Some(d / p)
        }
    }
}

impl fmt::Display for RigiditySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn eval_points(pts: &[FixedPointData], f: &RigiditySeries, u: &[Q]) -> Result<Q> {
    pts.iter().try_fold(Q::zero(), |acc, p| {
        let mut term = q(p.sign as i64);
        for w in &p.weights {
            let z = dot(w, u);
            if z.is_zero() {
                return invalid(format!("weight {} vanishes at the sample point", fmt_root(w)));
            }
            term *= f
                .recip_at(&z)
                .ok_or_else(|| Error::Invalid(format!("f vanishes or has a pole at ⟨{}, u⟩ = {}", fmt_root(w), fmt_q(&z))))?;
        }
        Ok(acc + term)
    })
}

/// `Σ_w sign(w) Π_j 1/f(⟨Λ_j(w), u⟩)`.
pub fn rigidity_eval(space: &HomogeneousSpace, structure: &Structure, f: &RigiditySeries, u: &[Q]) -> Result<Q> {
    if u.len() != space.coord_dim() {
        return invalid(format!("point has {} coordinates, expected {}", u.len(), space.coord_dim()));
    }
    eval_points(&fixed_points(space, structure), f, u)
}

/// Seeded points in `[−9, 9]^k` avoiding the weight hyperplanes and the poles of `1/f`.
pub fn sample_points(space: &HomogeneousSpace, structure: &Structure, f: &RigiditySeries, count: usize, seed: u64) -> Vec<QVec> {
    let pts = fixed_points(space, structure);
    let mut forms: Vec<QVec> = pts.iter().flat_map(|p| p.weights.iter().cloned()).collect();
    forms.sort();
    forms.dedup();
    let mut out = Vec::new();
    let mut s = seed;
    while out.len() < count {
        for x in generic_points(space.coord_dim(), &forms, count, s) {
            if out.len() < count && eval_points(&pts, f, &x).is_ok() && !out.contains(&x) {
                out.push(x);
            }
        }
        s = s.wrapping_add(1);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Pairwise cancellation verified exactly and all samples vanish.
    CertifiedZero,
    /// Truncated series: samples vanish but only up to the truncation.
    ConsistentToCutoff,
    /// No odd pairing applies; `constant` says whether the samples agree.
    NotCovered { reason: String, constant: bool },
    /// A sample is nonzero despite a pairing.
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct Certification {
    pub verdict: Verdict,
    pub pairing: Option<String>,
    pub pairs_checked: usize,
    pub samples: Vec<(QVec, Q)>,
    pub seed: u64,
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::CertifiedZero
    }

    pub fn to_json(&self) -> Value {
        let verdict = match &self.verdict {
            Verdict::CertifiedZero => json!({"status": "certified-zero"}),
            Verdict::ConsistentToCutoff => json!({"status": "consistent-to-cutoff"}),
            Verdict::NotCovered { reason, constant } => json!({"status": "not-covered", "reason": reason, "constant": constant}),
            Verdict::Failed(m) => json!({"status": "failed", "reason": m}),
        };
        json!({
            "verdict": verdict,
            "pairing": self.pairing,
            "pairs_checked": self.pairs_checked,
            "seed": self.seed,
            "samples": self.samples.iter().map(|(u, v)| json!({"u": u.iter().map(fmt_q).collect::<Vec<_>>(), "value": fmt_q(v)})).collect::<Vec<_>>(),
        })
    }
}

/// The weights at `w` and `w̃` agree up to an odd number of sign changes.
fn odd_match(a: &[QVec], b: &[QVec]) -> bool {
    let mut flips = 0;
    let mut used = vec![false; b.len()];
    for x in a {
        let nx = neg(x);
        if let Some(i) = (0..b.len()).find(|&i| !used[i] && b[i] == *x) {
            used[i] = true;
        } else if let Some(i) = (0..b.len()).find(|&i| !used[i] && b[i] == nx) {
            used[i] = true;
            flips += 1;
        } else {
            return false;
        }
    }
    flips % 2 == 1
}

pub fn rigidity_certify_odd(
    space: &HomogeneousSpace,
    structure: &Structure,
    f: &RigiditySeries,
    sample_count: usize,
    seed: u64,
) -> Result<Certification> {
    if !f.is_odd() {
        return invalid(format!("series {f} is not odd"));
    }
    let points = sample_points(space, structure, f, sample_count, seed);
    let samples: Vec<(QVec, Q)> = points
        .par_iter()
        .map(|u| rigidity_eval(space, structure, f, u).map(|v| (u.clone(), v)))
        .collect::<Result<_>>()?;
    let all_zero = samples.iter().all(|(_, v)| v.is_zero());
    let constant = samples.windows(2).all(|w| w[0].1 == w[1].1);
    let mut cert = Certification { verdict: Verdict::ConsistentToCutoff, pairing: None, pairs_checked: 0, samples, seed };
    let j = match structure {
        Structure::Invariant(j) => Some(j.clone()),
        Structure::Stable(s) if s.is_invariant() => Some(s.base.clone()),
        Structure::Stable(_) => None,
    };
    let Some(j) = j else {
        cert.verdict = Verdict::NotCovered { reason: "pairing applies to invariant structures".into(), constant };
        return Ok(cert);
    };
    let Some((t, report)) = find_odd_pairing(space, &j) else {
        cert.verdict = Verdict::NotCovered { reason: "no Weyl element pairs the fixed points with an odd number of sign changes".into(), constant };
        return Ok(cert);
    };
    cert.pairing = Some(format!("w ↦ w·t, t = {} (α = {})", t.word_text(), fmt_root(&report.alpha)));
    let mut ok = report.coset_involution;
    for row in &report.rows {
        if row.partner == usize::MAX || !odd_match(&row.weights, &row.partner_weights) {
            ok = false;
        }
        cert.pairs_checked += 1;
    }
    cert.pairs_checked /= 2;
    cert.verdict = if !ok {
        Verdict::NotCovered { reason: "pairing does not cancel termwise".into(), constant }
    } else if !all_zero {
        Verdict::Failed("pairing cancels termwise but a sample is nonzero".into())
    } else if f.truncated {
        Verdict::ConsistentToCutoff
    } else {
        Verdict::CertifiedZero
    };
    Ok(cert)
}

#[derive(Clone, Debug)]
pub struct IndependenceReport {
    /// `(u, value for s1, value for s2)`.
    pub values: Vec<(QVec, Q, Q)>,
    pub eps: (i8, i8),
    pub raw_equal: bool,
    /// Equality after multiplying each side by its global sign `ε`.
    pub normalized_equal: bool,
}

impl IndependenceReport {
    pub fn to_json(&self) -> Value {
        json!({
            "raw_equal": self.raw_equal,
            "normalized_equal": self.normalized_equal,
            "eps": [self.eps.0, self.eps.1],
            "values": self.values.iter().map(|(u, a, b)| json!({
                "u": u.iter().map(fmt_q).collect::<Vec<_>>(), "s1": fmt_q(a), "s2": fmt_q(b)
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn structure_independence_check(
    space: &HomogeneousSpace,
    s1: &StableStructure,
    s2: &StableStructure,
    f: &RigiditySeries,
    points: &[QVec],
) -> Result<IndependenceReport> {
    if !f.is_odd() {
        return invalid(format!("series {f} is not odd"));
    }
    let a = Structure::Stable(s1.clone());
    let b = Structure::Stable(s2.clone());
    let values: Vec<(QVec, Q, Q)> = points
        .iter()
        .map(|u| Ok((u.clone(), rigidity_eval(space, &a, f, u)?, rigidity_eval(space, &b, f, u)?)))
        .collect::<Result<_>>()?;
    let raw_equal = values.iter().all(|(_, x, y)| x == y);
    let (e1, e2) = (s1.global, s2.global);
    let normalized_equal = values.iter().all(|(_, x, y)| x * q(e1 as i64) == y * q(e2 as i64));
    Ok(IndependenceReport { values, eps: (e1, e2), raw_equal, normalized_equal })
}

/// `rigidity_eval` at the default seeded sample points.
pub fn default_samples(space: &HomogeneousSpace, structure: &Structure, f: &RigiditySeries, count: usize) -> Vec<QVec> {
    sample_points(space, structure, f, count, DEFAULT_SEED)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::qvec;
    use crate::structures::{enumerate_structures, InvariantStructure};

    fn std(space: &HomogeneousSpace) -> Structure {
        Structure::Invariant(space.standard_structure().unwrap())
    }

    #[test]
    fn grassmann_indices() {
        let g = HomogeneousSpace::from_specs("G42", "U(4)", "U(2)xU(2)").unwrap();
        let ord = Ordering::default_for(4);
        let j = std(&g);
        let ind = indices(&g, &j, &ord).unwrap();
        let mut sorted = ind.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2, 2, 3, 4]);
        assert_eq!(ind[0], 0);
        assert_eq!(signature(&g, &j).unwrap(), q(2));
        let c = Structure::Invariant(g.standard_structure().unwrap().conjugate());
        for k in 0..g.euler {
            assert_eq!(index(&g, &c, k, &ord).unwrap(), g.n - ind[k]);
        }
    }

    #[test]
    fn index_formulas_agree() {
        let u4 = HomogeneousSpace::from_specs("U4", "U(4)", "T").unwrap();
        let ord = Ordering::new(qvec(&[7, -3, 11, 2]));
        for j in enumerate_structures(&u4).unwrap().into_iter().step_by(5) {
            let s = Structure::Invariant(j);
            let ind = indices(&u4, &s, &ord).unwrap();
            for (k, i) in ind.iter().enumerate() {
                assert_eq!(index(&u4, &s, k, &ord).unwrap(), *i);
            }
        }
    }

    #[test]
    fn flag_chi_y_properties() {
        let u3 = HomogeneousSpace::from_specs("U3", "U(3)", "T").unwrap();
        let o1 = Ordering::default_for(3);
        let o2 = Ordering::new(qvec(&[-1, 5, 2]));
        for j in enumerate_structures(&u3).unwrap() {
            let s = Structure::Invariant(j);
            let a = chi_y(&u3, &s, &o1).unwrap();
            assert_eq!(a, chi_y(&u3, &s, &o2).unwrap());
            let r = a.reflect();
            assert!(r.coeffs.iter().all(|c| !c.is_negative()));
            assert_eq!(r.coeffs.iter().sum::<Q>(), q(6));
            assert_eq!(signature(&u3, &s).unwrap(), q(0));
        }
    }

    #[test]
    fn non_generic_ordering_rejected() {
        let u3 = HomogeneousSpace::from_specs("U3", "U(3)", "T").unwrap();
        assert!(chi_y(&u3, &std(&u3), &Ordering::new(qvec(&[1, 1, 0]))).is_err());
    }

    #[test]
    fn series_parsing() {
        let f = RigiditySeries::parse("u/(1+u^2)").unwrap();
        assert!(f.is_odd());
        assert_eq!(f.recip_at(&q(2)), Some(qf(5, 2)));
        let g = RigiditySeries::parse("u/(1+u^2/3)").unwrap();
        assert_eq!(g.den, vec![q(1), q(0), qf(1, 3)]);
        assert!(!RigiditySeries::parse("u/(1+u^3)").unwrap().is_odd());
        assert!(RigiditySeries::parse("2*u/(1+u)").is_err());
        let t = RigiditySeries::parse("trunc:u - 1/6*u^3").unwrap();
        assert!(t.truncated && t.is_odd());
        assert_eq!(t.num, vec![q(0), q(1), q(0), qf(-1, 6)]);
    }

    use crate::exactalg::rational::qf;

    #[test]
    fn grassmann_rigidity_values() {
        let g = HomogeneousSpace::from_specs("G42", "U(4)", "U(2)xU(2)").unwrap();
        let f = RigiditySeries::parse("u/(1+u^2)").unwrap();
        assert_eq!(rigidity_eval(&g, &std(&g), &f, &qvec(&[3, 2, 1, 0])).unwrap(), q(80));
        assert_eq!(rigidity_eval(&g, &std(&g), &f, &qvec(&[4, 2, 1, 0])).unwrap(), q(140));
    }

    #[test]
    fn cubic_series_on_flags() {
        let u3 = HomogeneousSpace::from_specs("U3", "U(3)", "T").unwrap();
        let f = RigiditySeries::parse("u/(1+u^3)").unwrap();
        for u in [qvec(&[7, 3, 0]), qvec(&[5, -2, 9])] {
            let (a, b, c) = (&u[0] - &u[1], &u[0] - &u[2], &u[1] - &u[2]);
            let cube = |x: &Q| x * x * x;
            let delta = &a * &b * &c;
            let partial = q(2) * (cube(&a) - cube(&b) + cube(&c)) / &delta;
            // Π z² over the weights contributes Δ² at each of the six points
            let expect = partial + q(6) * &delta * &delta;
            assert_eq!(rigidity_eval(&u3, &std(&u3), &f, &u).unwrap(), expect);
        }
        let v1 = rigidity_eval(&u3, &std(&u3), &f, &qvec(&[7, 3, 0])).unwrap();
        let v2 = rigidity_eval(&u3, &std(&u3), &f, &qvec(&[5, -2, 9])).unwrap();
        assert_ne!(v1, v2);
    }

    #[test]
    fn odd_certification() {
        let f = RigiditySeries::parse("u/(1+u^2)").unwrap();
        for (g, h) in [("U(3)", "T"), ("U(4)", "T"), ("G2", "SU(3)")] {
            let s = HomogeneousSpace::from_specs("X", g, h).unwrap();
            let c = rigidity_certify_odd(&s, &std(&s), &f, 4, 7).unwrap();
            assert!(c.is_certified(), "{g}/{h}: {:?}", c.verdict);
        }
    }

    #[test]
    fn weight_on_kernel_rejected() {
        let u3 = HomogeneousSpace::from_specs("U3", "U(3)", "T").unwrap();
        let f = RigiditySeries::parse("u/(1+u^2)").unwrap();
        assert!(rigidity_eval(&u3, &std(&u3), &f, &qvec(&[1, 1, 0])).is_err());
    }

    #[test]
    fn conjugation_invariance() {
        let u4 = HomogeneousSpace::from_specs("U4", "U(4)", "T").unwrap();
        let j: InvariantStructure = u4.standard_structure().unwrap();
        let f = RigiditySeries::parse("u/(1+u^2)").unwrap();
        let u = qvec(&[5, 3, -2, 1]);
        let a = rigidity_eval(&u4, &Structure::Invariant(j.clone()), &f, &u).unwrap();
        let b = rigidity_eval(&u4, &Structure::Invariant(j.conjugate()), &f, &u).unwrap();
        assert_eq!(a, b);
    }
}
