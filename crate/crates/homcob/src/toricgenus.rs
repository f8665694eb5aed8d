//! Fixed-point data, the universal toric genus in Chern–Dold form, cobordism classes,
//! characteristic numbers `s_ω`, twisted products over homogeneous fibrations and the
//! quaternionic-base computations.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::exactalg::divdiff::divided_difference_l;
use crate::exactalg::rational::{dot, fmt_q, q, Q};
use crate::exactalg::{MultiPoly, Ring};
use crate::rootdata::{
    self, build_group, fmt_root, is_zero_vec, neg, GroupData, Matrix, QVec, SubgroupData, WeylElement,
};
use crate::structures::{HomogeneousSpace, InvariantStructure, StableStructure, Structure};

/// `ω = (i_1, …, i_n)`: the exponent of `a_j` is `i_j`.
pub type Omega = Vec<u32>;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointData {
    pub coset: usize,
    pub rep: WeylElement,
    /// `Λ_j(w) = ε_j(w)·w(ε_j α_j)`.
    pub weights: Vec<QVec>,
    pub sign: i8,
}

impl FixedPointData {
    /// `Π 1/[Λ_j](u)` as text.
    pub fn u_form(&self) -> String {
        let f: Vec<String> = self
            .weights
            .iter()
            .map(|w| {
                let c: Vec<String> = w.iter().map(fmt_q).collect();
                format!("1/[({})](u)", c.join(","))
            })
            .collect();
        let body = f.join(" * ");
        if self.sign < 0 { format!("-{body}") } else { body }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "coset": self.coset,
            "rep": self.rep.word_text(),
            "sign": self.sign,
            "weights": self.weights.iter().map(|w| fmt_root(w)).collect::<Vec<_>>(),
        })
    }
}

pub fn fixed_points(space: &HomogeneousSpace, structure: &Structure) -> Vec<FixedPointData> {
    let st = structure.as_stable(space);
    stable_fixed_points(space, &st)
}

pub fn stable_fixed_points(space: &HomogeneousSpace, st: &StableStructure) -> Vec<FixedPointData> {
    (0..space.euler)
        .map(|c| FixedPointData { coset: c, rep: space.reps[c].clone(), weights: st.weights(space, c), sign: st.sign(c) })
        .collect()
}

/// Partitions of `d` with at most `max_parts` parts, as multi-indices of length `len`.
pub fn partitions(d: u32, max_parts: usize, len: usize) -> Vec<Omega> {
    fn rec(rem: u32, largest: u32, parts_left: usize, cur: &mut Omega, out: &mut Vec<Omega>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=largest.min(rem)).rev() {
            cur[p as usize - 1] += 1;
            rec(rem - p, p, parts_left - 1, cur, out);
            cur[p as usize - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    if d as usize > len {
        let mut cur = vec![0; d as usize];
        rec(d, d, max_parts, &mut cur, &mut out);
        return out.into_iter().filter(|o| o[len..].iter().all(|&x| x == 0)).map(|o| o[..len].to_vec()).collect();
    }
    let mut cur = vec![0; len];
    rec(d, d, max_parts, &mut cur, &mut out);
    out
}

pub fn omega_norm(omega: &[u32]) -> u32 {
    omega.iter().enumerate().map(|(j, &i)| (j as u32 + 1) * i).sum()
}

pub fn omega_parts(omega: &[u32]) -> u32 {
    omega.iter().sum()
}

pub fn parse_omega(text: &str) -> Result<Omega> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    t.split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| Error::Invalid(format!("bad ω entry {s:?} in {text:?}"))))
        .collect()
}

pub fn fmt_omega(omega: &[u32]) -> String {
    format!("({})", omega.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
}

/// `a^ω` as text, e.g. `a1*a5`.
pub fn omega_monomial(omega: &[u32]) -> String {
    let mut f = Vec::new();
    for (j, &i) in omega.iter().enumerate() {
        match i {
            0 => {}
            1 => f.push(format!("a{}", j + 1)),
            _ => f.push(format!("a{}^{}", j + 1, i)),
        }
    }
    if f.is_empty() { "1".into() } else { f.join("*") }
}

/// `m_ω(λ_1, …, λ_n)`: the coefficient of `a^ω` in `Π_i (1 + Σ_j a_j λ_i^j)`.
fn m_omega<T: Clone>(
    omega: &[u32],
    count: usize,
    power: impl Fn(usize, u32) -> T,
    mul: impl Fn(&T, &T) -> T,
    add: impl Fn(&T, &T) -> T,
    one: T,
) -> Option<T> {
    let parts: Vec<(u32, u32)> =
        omega.iter().enumerate().filter(|(_, &i)| i > 0).map(|(j, &i)| (j as u32 + 1, i)).collect();
    let total: u32 = parts.iter().map(|p| p.1).sum();
    if total as usize > count {
        return None;
    }
    let radix: Vec<usize> = parts.iter().map(|p| p.1 as usize + 1).collect();
    let states: usize = radix.iter().product();
    let decode = |mut s: usize| -> Vec<usize> {
        radix
            .iter()
            .map(|r| {
                let d = s % r;
                s /= r;
                d
            })
            .collect()
    };
    let stride: Vec<usize> = radix.iter().scan(1, |acc, r| {
        let s = *acc;
        *acc *= r;
        Some(s)
    }).collect();
    // dp[s]: parts already used given by digits of s
    let mut dp: Vec<Option<T>> = vec![None; states];
    dp[0] = Some(one);
    for i in 0..count {
        let mut next = dp.clone();
        for s in 0..states {
            let Some(v) = &dp[s] else { continue };
            let used = decode(s);
            let used_total: usize = used.iter().sum();
            if (total as usize - used_total) > count - i {
                continue;
            }
            for (k, &(part, cnt)) in parts.iter().enumerate() {
                if used[k] < cnt as usize {
                    let t = mul(v, &power(i, part));
                    let ns = s + stride[k];
                    next[ns] = Some(match &next[ns] {
                        Some(x) => add(x, &t),
                        None => t,
                    });
                }
            }
        }
        dp = next;
    }
    dp.pop().flatten()
}

/// The distinct weight hyperplanes, each linear form once (first nonzero coordinate positive).
#[derive(Clone, Debug)]
struct Radical {
    forms: Vec<QVec>,
    index: HashMap<QVec, usize>,
}

fn normalize(v: &[Q]) -> (QVec, i8) {
    let first = v.iter().find(|x| !x.is_zero()).expect("zero weight");
    if first.is_negative() { (neg(v), -1) } else { (v.to_vec(), 1) }
}

impl Radical {
    fn of(points: &[FixedPointData]) -> Result<Radical> {
        let mut forms = Vec::new();
        let mut index = HashMap::new();
        for p in points {
            let mut seen = Vec::new();
            for w in &p.weights {
                if is_zero_vec(w) {
                    return Err(Error::Math(format!("zero weight at fixed point {}", p.coset)));
                }
                let (n, _) = normalize(w);
                if seen.contains(&n) {
                    return Err(Error::Math(format!("weight {} has multiplicity > 1 at fixed point {}", fmt_root(w), p.coset)));
                }
                seen.push(n.clone());
                if !index.contains_key(&n) {
                    index.insert(n.clone(), forms.len());
                    forms.push(n);
                }
            }
        }
        Ok(Radical { forms, index })
    }

    /// `(σ, cofactor indices)` with `Π Λ_j = σ·Π_{r ∈ used} r`.
    fn split(&self, weights: &[QVec]) -> (i8, Vec<usize>) {
        let mut sigma = 1;
        let mut used = vec![false; self.forms.len()];
        for w in weights {
            let (n, s) = normalize(w);
            sigma *= s;
            used[self.index[&n]] = true;
        }
        (sigma, (0..self.forms.len()).filter(|&i| !used[i]).collect())
    }
}

fn linear(ring: &Ring, v: &[Q]) -> MultiPoly {
    MultiPoly::linear_form(ring, 0, v)
}

/// `Σ_{|ω| = d} t^d a^ω P_ω(x)` together with the cobordism class.
#[derive(Clone, Debug)]
pub struct GenusExpansion {
    /// `x1..xk, a1..aD, t`.
    pub ring: Ring,
    pub form: MultiPoly,
    pub class: MultiPoly,
    pub n: usize,
    pub cutoff: u32,
}

impl GenusExpansion {
    /// The `t^d` part.
    pub fn degree_part(&self, d: u32) -> MultiPoly {
        let t = self.ring.len() - 1;
        self.form.coeff_in(t, d)
    }

    /// `self · other`, truncated at the smaller cutoff (same ring shape required).
    pub fn product(&self, other: &GenusExpansion) -> Result<MultiPoly> {
        let cut = self.cutoff.min(other.cutoff);
        let ring = Ring::xat(self.ring.len() - 1 - self.cutoff as usize, cut as usize);
        let a = self.form.truncate(&[self.ring.len() - 1], cut).rebase(&ring)?;
        let b = other.form.truncate(&[other.ring.len() - 1], cut).rebase(&ring)?;
        Ok(a.mul_trunc(&b, &[ring.len() - 1], cut))
    }

    pub fn to_json(&self) -> Value {
        json!({ "class": self.class.to_text(), "form": self.form.to_text(), "cutoff": self.cutoff })
    }
}

fn class_ring(n: usize) -> Ring {
    Ring::from_names(&Ring::block("a", n.max(1)))
}

fn x_ring(k: usize) -> Ring {
    Ring::from_names(&Ring::block("x", k))
}

/// `Σ_w sign(w) Π f(t·⟨Λ_j(w), x⟩)/⟨Λ_j(w), x⟩` with poles cleared by exact division.
pub fn chern_dold_genus(space: &HomogeneousSpace, structure: &Structure, cutoff: u32) -> Result<GenusExpansion> {
    let pts = fixed_points(space, structure);
    chern_dold_from_points(space.coord_dim(), space.n, &pts, cutoff)
}

/// The `ω`-component `P_ω(x) = Σ_w sign(w) m_ω(Λ(w)) / Π Λ(w)`, exactly divided.
fn p_omega(xr: &Ring, pts: &[FixedPointData], rad: &Radical, omega: &[u32]) -> Result<MultiPoly> {
    let forms: Vec<MultiPoly> = rad.forms.iter().map(|f| linear(xr, f)).collect();
    let mut num = MultiPoly::zero(xr);
    for p in pts {
        let lin: Vec<MultiPoly> = p.weights.iter().map(|w| linear(xr, w)).collect();
        let Some(m) = m_omega(omega, lin.len(), |i, k| lin[i].pow(k), |a, b| a * b, |a, b| a + b, MultiPoly::one(xr))
        else {
            continue;
        };
        let (sigma, cof) = rad.split(&p.weights);
        let mut term = m.scale(&q((sigma * p.sign) as i64));
        for c in cof {
            term = &term * &forms[c];
        }
        num.add_assign_ref(&term);
    }
    let mut out = num;
    for f in &forms {
        if out.is_zero() {
            break;
        }
        out = out.exact_divide(f).map_err(|_| {
            Error::Math(format!("localization sum has uncancelled pole along {} (ω = {})", f, fmt_omega(omega)))
        })?;
    }
    Ok(out)
}

pub fn chern_dold_from_points(k: usize, n: usize, pts: &[FixedPointData], cutoff: u32) -> Result<GenusExpansion> {
    if (cutoff as usize) < n {
        return invalid(format!("cutoff {cutoff} is below the complex dimension {n}"));
    }
    let rad = Radical::of(pts)?;
    let xr = x_ring(k);
    let ring = Ring::xat(k, cutoff as usize);
    let t = ring.len() - 1;
    let omegas: Vec<(u32, Omega)> = (0..=cutoff)
        .flat_map(|d| partitions(d, n, cutoff as usize).into_iter().map(move |o| (d, o)))
        .collect();
    let parts: Vec<(u32, Omega, MultiPoly)> = omegas
        .par_iter()
        .map(|(d, o)| p_omega(&xr, pts, &rad, o).map(|p| (*d, o.clone(), p)))
        .collect::<Result<_>>()?;
    let mut form = MultiPoly::zero(&ring);
    let cr = class_ring(n);
    let mut class = MultiPoly::zero(&cr);
    for (d, o, p) in parts {
        for (e, c) in p.terms() {
            let mut e2 = vec![0; ring.len()];
            e2[..k].copy_from_slice(e);
            for (j, &i) in o.iter().enumerate() {
                e2[k + j] = i;
            }
            e2[t] = d;
            form.add_term(e2, c.clone());
        }
        if d as usize == n && !p.is_zero() {
            if !p.is_constant() {
                return Err(Error::Math(format!("degree-n part for ω = {} depends on x", fmt_omega(&o))));
            }
            let mut e = vec![0; cr.len()];
            e[..n].copy_from_slice(&o[..n]);
            class.add_term(e, p.constant_term());
        }
    }
    Ok(GenusExpansion { ring, form, class, n, cutoff })
}

/// Exact division of every `P_ω` with `|ω| ≤ max_degree`; returns the number of `ω` checked.
pub fn pole_check(space: &HomogeneousSpace, structure: &Structure, max_degree: u32) -> Result<usize> {
    let pts = fixed_points(space, structure);
    let rad = Radical::of(&pts)?;
    let xr = x_ring(space.coord_dim());
    let omegas: Vec<Omega> =
        (0..=max_degree).flat_map(|d| partitions(d, space.n, max_degree.max(1) as usize)).collect();
    omegas.par_iter().try_for_each(|o| p_omega(&xr, &pts, &rad, o).map(|_| ()))?;
    Ok(omegas.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Symbolic when `n ≤ 6`, evaluation otherwise.
    Auto,
    /// Exact division of the localization numerator.
    Symbolic,
    /// The operator `L` (unitary groups, invariant structures).
    DividedDifference,
    /// Exact evaluation at seeded generic points, checked at two points.
    Evaluation,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        match s {
            "auto" => Ok(Method::Auto),
            "symbolic" => Ok(Method::Symbolic),
            "divdiff" | "L" => Ok(Method::DividedDifference),
            "eval" | "evaluation" => Ok(Method::Evaluation),
            _ => invalid(format!("unknown method {s:?} (auto, symbolic, divdiff, eval)")),
        }
    }
}

const SYMBOLIC_LIMIT: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharNumber {
    pub omega: Omega,
    pub value: Q,
}

impl CharNumber {
    pub fn is_integer(&self) -> bool {
        self.value.is_integer()
    }
}

fn check_omega(space: &HomogeneousSpace, omega: &[u32]) -> Result<Omega> {
    let mut o = omega.to_vec();
    while o.len() > space.n && o.last() == Some(&0) {
        o.pop();
    }
    if o.len() > space.n {
        return invalid(format!("ω has {} entries, expected {}", omega.len(), space.n));
    }
    o.resize(space.n, 0);
    if omega_norm(&o) as usize != space.n {
        return invalid(format!("‖ω‖ = {} but dim_C = {}", omega_norm(&o), space.n));
    }
    Ok(o)
}

pub fn s_omega(space: &HomogeneousSpace, structure: &Structure, omega: &[u32]) -> Result<CharNumber> {
    s_omega_with(space, structure, omega, Method::Auto)
}

pub fn s_omega_with(space: &HomogeneousSpace, structure: &Structure, omega: &[u32], method: Method) -> Result<CharNumber> {
    let o = check_omega(space, omega)?;
    let value = match resolve(space, method) {
        Method::Symbolic => {
            let pts = fixed_points(space, structure);
            let rad = Radical::of(&pts)?;
            let p = p_omega(&x_ring(space.coord_dim()), &pts, &rad, &o)?;
            p.constant_term()
        }
        Method::DividedDifference => s_omega_divdiff(space, structure, &o)?,
        _ => {
            let c = class_by_evaluation(space, structure, DEFAULT_SEED)?;
            c.get(&o).cloned().unwrap_or_else(Q::zero)
        }
    };
    Ok(CharNumber { omega: o, value })
}

fn resolve(space: &HomogeneousSpace, method: Method) -> Method {
    match method {
        Method::Auto if space.n <= SYMBOLIC_LIMIT => Method::Symbolic,
        Method::Auto => Method::Evaluation,
        m => m,
    }
}

pub fn top_s(space: &HomogeneousSpace, structure: &Structure) -> Result<CharNumber> {
    top_s_with(space, structure, Method::Auto)
}

/// `s_{(0,…,0,1)}`; the evaluation route sums `Σ_j Λ_j^n` directly.
pub fn top_s_with(space: &HomogeneousSpace, structure: &Structure, method: Method) -> Result<CharNumber> {
    let mut o = vec![0; space.n];
    o[space.n - 1] = 1;
    let value = match resolve(space, method) {
        Method::Evaluation => top_s_evaluation(space, structure)?,
        m => s_omega_with(space, structure, &o, m)?.value,
    };
    Ok(CharNumber { omega: o, value })
}

/// `s_n = Σ_w sign(w) Σ_j Λ_j^n / Π Λ_j` at two generic points.
fn top_s_evaluation(space: &HomogeneousSpace, structure: &Structure) -> Result<Q> {
    let pts = fixed_points(space, structure);
    let n = space.n as u32;
    let eval = |x: &[Q]| -> Q {
        pts.iter()
            .map(|p| {
                let l: Vec<Q> = p.weights.iter().map(|w| dot(w, x)).collect();
                let s: Q = l.iter().map(|v| num_traits::pow(v.clone(), n as usize)).sum();
                let d: Q = l.iter().product();
                s / d * q(p.sign as i64)
            })
            .sum()
    };
    let (x1, x2) = two_points(space, &pts)?;
    let (v1, v2) = (eval(&x1), eval(&x2));
    if v1 != v2 {
        return Err(Error::Math("top Chern number sum is not constant: uncancelled pole".into()));
    }
    Ok(v1)
}

/// Seeded generic points where no weight vanishes.
pub fn generic_points(dim: usize, forms: &[QVec], count: usize, seed: u64) -> Vec<QVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let x: QVec = (0..dim).map(|_| q(rng.gen_range(-9..=9))).collect();
        if forms.iter().all(|f| !dot(f, &x).is_zero()) {
            out.push(x);
        }
    }
    out
}

fn two_points(space: &HomogeneousSpace, pts: &[FixedPointData]) -> Result<(QVec, QVec)> {
    let rad = Radical::of(pts)?;
    let mut p = generic_points(space.coord_dim(), &rad.forms, 2, DEFAULT_SEED);
    let b = p.pop().unwrap();
    let a = p.pop().unwrap();
    Ok((a, b))
}

/// All `s_ω` with `‖ω‖ = n` from exact values at one generic point.
fn class_at_point(pts: &[FixedPointData], n: usize, x: &[Q]) -> BTreeMap<Omega, Q> {
    pts.par_iter()
        .map(|p| {
            let l: Vec<Q> = p.weights.iter().map(|w| dot(w, x)).collect();
            // generating polynomial Π (1 + Σ a_j λ^j), keyed by ω, weight ≤ n
            let mut acc: BTreeMap<Omega, Q> = BTreeMap::new();
            acc.insert(vec![0; n], Q::one());
            for v in &l {
                let mut next = acc.clone();
                let powers: Vec<Q> = (0..=n).map(|j| num_traits::pow(v.clone(), j)).collect();
                for (o, c) in &acc {
                    let w = omega_norm(o) as usize;
                    for j in 1..=n - w {
                        let mut o2 = o.clone();
                        o2[j - 1] += 1;
                        *next.entry(o2).or_insert_with(Q::zero) += c * &powers[j];
                    }
                }
                acc = next;
            }
            let den: Q = l.iter().product::<Q>() * q(p.sign as i64);
            acc.into_iter()
                .filter(|(o, _)| omega_norm(o) as usize == n)
                .map(|(o, c)| (o, c / &den))
                .collect::<BTreeMap<_, _>>()
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (o, c) in b {
                *a.entry(o).or_insert_with(Q::zero) += c;
            }
            a
        })
}

/// The class by exact evaluation, confirmed at two independent generic points.
pub fn class_by_evaluation(space: &HomogeneousSpace, structure: &Structure, seed: u64) -> Result<BTreeMap<Omega, Q>> {
    let pts = fixed_points(space, structure);
    let rad = Radical::of(&pts)?;
    let xs = generic_points(space.coord_dim(), &rad.forms, 2, seed);
    let a = class_at_point(&pts, space.n, &xs[0]);
    let b = class_at_point(&pts, space.n, &xs[1]);
    let nz = |m: &BTreeMap<Omega, Q>| m.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k.clone(), v.clone())).collect::<BTreeMap<_, _>>();
    let (a, b) = (nz(&a), nz(&b));
    if a != b {
        return Err(Error::Math("localization sum differs between sample points: uncancelled pole".into()));
    }
    Ok(a)
}

/// The cobordism class `Σ s_ω a^ω`.
pub fn cobordism_class(space: &HomogeneousSpace, structure: &Structure, method: Method) -> Result<MultiPoly> {
    let cr = class_ring(space.n);
    match resolve(space, method) {
        Method::Symbolic => Ok(chern_dold_genus(space, structure, space.n as u32)?.class),
        Method::DividedDifference => {
            let mut class = MultiPoly::zero(&cr);
            for o in partitions(space.n as u32, space.n, space.n) {
                let v = s_omega_divdiff(space, structure, &o)?;
                class.add_term(o, v);
            }
            Ok(class)
        }
        _ => {
            let vals = class_by_evaluation(space, structure, DEFAULT_SEED)?;
            Ok(MultiPoly::from_terms(&cr, vals))
        }
    }
}

/// Unitary `G` with `H` a block subgroup: every root has the form `x_i − x_j`.
pub fn is_type_a(space: &HomogeneousSpace) -> bool {
    let ok = |r: &QVec| {
        let nz: Vec<&Q> = r.iter().filter(|x| !x.is_zero()).collect();
        nz.len() == 2 && nz.iter().all(|x| x.abs().is_one()) && (nz[0] + nz[1]).is_zero()
    };
    space.g.label.starts_with("U(") && space.g.positive.iter().all(ok) && space.g.positive.len() == space.coord_dim() * (space.coord_dim() - 1) / 2
}

/// `s_ω = (λ/|W_H|)·L(Δ_H · m_ω(εα))`, `λ = Π ε_i`.
pub fn s_omega_divdiff(space: &HomogeneousSpace, structure: &Structure, omega: &[u32]) -> Result<Q> {
    let Structure::Invariant(j) = structure else {
        return invalid("the L route needs an invariant structure");
    };
    if !is_type_a(space) {
        return invalid("the L route applies to unitary groups only");
    }
    let o = check_omega(space, omega)?;
    let k = space.coord_dim();
    let xr = x_ring(k);
    let beta = j.roots(space);
    let lin: Vec<MultiPoly> = beta.iter().map(|b| linear(&xr, b)).collect();
    let Some(m) = m_omega(&o, lin.len(), |i, e| lin[i].pow(e), |a, b| a * b, |a, b| a + b, MultiPoly::one(&xr)) else {
        return Ok(Q::zero());
    };
    let mut p = m;
    for r in &space.h.positive {
        p = &p * &linear(&xr, r);
    }
    let vars: Vec<usize> = (0..k).collect();
    let l = divided_difference_l(&p, &vars)?;
    if !l.is_constant() {
        return Err(Error::Math("L returned a non-constant value for a degree-n class".into()));
    }
    let lambda: i64 = j.signs.iter().map(|&e| e as i64).product();
    Ok(l.constant_term() * q(lambda) / q(space.wh.len() as i64))
}

// ---------------------------------------------------------------------------
// Fibrations

/// `H/K → G/K → G/H` with all three spaces on the same canonical coordinates.
#[derive(Clone, Debug)]
pub struct Fibration {
    pub total: HomogeneousSpace,
    pub base: HomogeneousSpace,
    pub fiber: HomogeneousSpace,
}

impl Fibration {
    pub fn new(label: &str, g: GroupData, h: SubgroupData, k: SubgroupData) -> Result<Fibration> {
        if k.roots.iter().any(|r| !h.roots.contains(r)) {
            return invalid("fibration needs K ⊂ H: a root of K is not a root of H");
        }
        let hg = h.as_group(&g)?;
        let k_in_h = SubgroupData::from_roots(&hg, &k.label, &k.roots)?;
        let fiber = HomogeneousSpace::new(&format!("{label}:fiber"), hg, k_in_h)?;
        let base = HomogeneousSpace::new(&format!("{label}:base"), g.clone(), h)?;
        let total = HomogeneousSpace::new(label, g, k)?;
        Ok(Fibration { total, base, fiber })
    }

    pub fn from_specs(group: &str, h: &str, k: &str) -> Result<Fibration> {
        let g = build_group(group)?;
        let hs = SubgroupData::from_descriptor(&g, h)?;
        let ks = SubgroupData::from_descriptor(&g, k)?;
        Fibration::new(&format!("{group}/{k} -> {group}/{h}"), g, hs, ks)
    }

    /// The invariant structure on `G/K` whose roots are those of the fiber and base structures.
    pub fn combined(&self, fiber_j: &InvariantStructure, base_j: &InvariantStructure) -> Result<InvariantStructure> {
        let fr = fiber_j.roots(&self.fiber);
        let br = base_j.roots(&self.base);
        let signs = self
            .total
            .comp_roots
            .iter()
            .map(|a| {
                let na = neg(a);
                fr.iter().chain(&br).find_map(|r| {
                    if r == a {
                        Some(1)
                    } else if *r == na {
                        Some(-1)
                    } else {
                        None
                    }
                })
                .ok_or_else(|| Error::Invalid(format!("root {} is neither a fiber nor a base root", fmt_root(a))))
            })
            .collect::<Result<Vec<i8>>>()?;
        InvariantStructure::from_root_signs(&self.total, signs)
    }
}

/// `p(Mᵀx)` for a polynomial whose first `k` variables are `x1..xk`.
fn transport(p: &MultiPoly, m: &Matrix, k: usize) -> MultiPoly {
    let ring = p.ring();
    let images: Vec<Option<MultiPoly>> = (0..ring.len())
        .map(|i| {
            if i < k {
                let col: QVec = (0..k).map(|r| m[r][i].clone()).collect();
                Some(MultiPoly::linear_form(ring, 0, &col))
            } else {
                None
            }
        })
        .collect();
    p.substitute(&images)
}

/// `Σ_{w₁ ∈ W_G/W_H} Π_j f(t·w₁β_j)/(w₁β_j) · w₁(chΦ(H/K))`.
pub fn twisted_product(
    fib: &Fibration,
    fiber_j: &InvariantStructure,
    base_signs: &[i8],
    cutoff: u32,
) -> Result<GenusExpansion> {
    let base_j = InvariantStructure::from_root_signs(&fib.base, base_signs.to_vec()).map_err(|_| {
        Error::Invalid("base roots are not invariant under W_H, so the structure does not descend to the base".into())
    })?;
    if (cutoff as usize) < fib.total.n {
        return invalid(format!("cutoff {cutoff} is below the complex dimension {}", fib.total.n));
    }
    let k = fib.total.coord_dim();
    let fiber = chern_dold_genus(&fib.fiber, &Structure::Invariant(fiber_j.clone()), cutoff)?;
    let ring = fiber.ring.clone();
    let t = ring.len() - 1;
    let beta = base_j.roots(&fib.base);
    let pts: Vec<FixedPointData> = fib
        .base
        .reps
        .iter()
        .enumerate()
        .map(|(c, w)| FixedPointData { coset: c, rep: w.clone(), weights: beta.iter().map(|b| w.apply(b)).collect(), sign: 1 })
        .collect();
    let rad = Radical::of(&pts)?;
    let forms: Vec<MultiPoly> = rad.forms.iter().map(|f| linear(&ring, f)).collect();
    let terms: Vec<MultiPoly> = pts
        .par_iter()
        .map(|p| {
            let mut acc = transport(&fiber.form, &p.rep.matrix, k);
            for w in &p.weights {
                acc = acc.mul_trunc(&f_of(&ring, w, cutoff), &[t], cutoff);
            }
            let (sigma, cof) = rad.split(&p.weights);
            let mut term = acc.scale(&q(sigma as i64));
            for c in cof {
                term = &term * &forms[c];
            }
            term
        })
        .collect();
    let mut num = MultiPoly::zero(&ring);
    for tm in &terms {
        num.add_assign_ref(tm);
    }
    for f in &forms {
        if num.is_zero() {
            break;
        }
        num = num
            .exact_divide(f)
            .map_err(|_| Error::Math(format!("twisted product has uncancelled pole along {f}")))?;
    }
    let cr = class_ring(fib.total.n);
    let top = num.coeff_in(t, fib.total.n as u32);
    let mut class = MultiPoly::zero(&cr);
    for (e, c) in top.terms() {
        if e[..k].iter().any(|&x| x > 0) {
            return Err(Error::Math("degree-n part of the twisted product depends on x".into()));
        }
        let mut e2 = vec![0; cr.len()];
        for j in 0..fib.total.n {
            e2[j] = e[k + j];
        }
        class.add_term(e2, c.clone());
    }
    Ok(GenusExpansion { ring, form: num, class, n: fib.total.n, cutoff })
}

/// `f(t·⟨λ, x⟩) = 1 + Σ_i a_i t^i ⟨λ, x⟩^i` in the ring `x, a, t`.
fn f_of(ring: &Ring, lambda: &[Q], cutoff: u32) -> MultiPoly {
    let k = lambda.len();
    let t = ring.len() - 1;
    let l = linear(ring, lambda);
    let mut out = MultiPoly::one(ring);
    let mut pw = MultiPoly::one(ring);
    for i in 1..=cutoff as usize {
        pw = &pw * &l;
        let mut e = vec![0; ring.len()];
        e[k + i - 1] = 1;
        e[t] = i as u32;
        out.add_assign_ref(&(&pw * &MultiPoly::monomial(ring, e, Q::one())));
    }
    out
}

// ---------------------------------------------------------------------------
// Quaternionic base

#[derive(Clone, Debug)]
pub struct G0Entry {
    pub omega: (u32, u32),
    pub computed: MultiPoly,
    pub claimed: MultiPoly,
}

#[derive(Clone, Debug)]
pub struct HpRestriction {
    pub which: String,
    /// Fiber genus at each fixed point of `ℍP¹`, in the ring `x1, x2, a…, t`.
    pub per_point: Vec<(String, MultiPoly)>,
    /// `2·(…)` as written for the restriction to the fixed points.
    pub doubled: MultiPoly,
    pub g0: Vec<G0Entry>,
    /// Coefficients of `x_j^{2k}` in `doubled`, `k = 0..=max` (cp-odd only).
    pub ch_coefficients: Vec<MultiPoly>,
    pub discrepancy: Option<String>,
}

/// Restriction of the fibration genus over `ℍP¹ = Sp(2)/Sp(1)×Sp(1)` to its fixed points.
pub fn restricted_genus_hp(n: usize, which: &str, max_index: u32) -> Result<HpRestriction> {
    if n != 2 {
        return invalid("restricted_genus_hp is implemented for n = 2 (base ℍP¹) only");
    }
    let kdesc = match which {
        "sp-flag" => "T",
        "cp-odd" => "U(1)xSp(1)",
        _ => return invalid(format!("unknown fibration {which:?} (sp-flag, cp-odd)")),
    };
    let fib = Fibration::from_specs("Sp(2)", "Sp(1)xSp(1)", kdesc)?;
    let cutoff = match which {
        "sp-flag" => 4 * max_index + 2,
        _ => 2 * max_index + 1,
    };
    let fj = fib.fiber.standard_structure()?;
    let form = chern_dold_genus(&fib.fiber, &Structure::Invariant(fj), cutoff)?;
    let t = form.ring.len() - 1;
    // the fiber genus carries no t-grading in the restricted formula
    let ring = Ring::xat(2, cutoff as usize);
    let flat = form.form.partial_eval(&[(t, Q::one())]).rebase(&ring)?;
    let per_point: Vec<(String, MultiPoly)> =
        fib.base.reps.iter().map(|w| (w.word_text(), transport(&flat, &w.matrix, 2))).collect();
    let a = |i: u32| MultiPoly::var_named(&ring, &format!("a{i}"));
    let coeff_x = |p: &MultiPoly, e1: u32, e2: u32| -> MultiPoly {
        p.coeff_in(0, e1).coeff_in(1, e2)
    };
    let pow2 = |e: u32| MultiPoly::constant(&ring, num_traits::pow(q(2), e as usize));
    match which {
        "sp-flag" => {
            let at_e = &per_point[0].1;
            let doubled = at_e.scale(&q(2));
            let mut g0 = Vec::new();
            let mut bad_doubled = false;
            for i1 in 0..=max_index {
                for i2 in 0..=max_index {
                    let claimed = &(&pow2(2 * (i1 + i2 + 1)) * &a(2 * i1 + 1)) * &a(2 * i2 + 1);
                    let computed = coeff_x(at_e, 2 * i1, 2 * i2);
                    if coeff_x(&doubled, 2 * i1, 2 * i2) != claimed {
                        bad_doubled = true;
                    }
                    g0.push(G0Entry { omega: (i1, i2), computed, claimed });
                }
            }
            let discrepancy = bad_doubled.then(|| {
                "the restriction is written as 2·(…) but its stated expansion Σ 2^{2(k+l+1)} … equals (…) without the factor 2; \
                 g₀ is read from a single fixed point"
                    .to_string()
            });
            Ok(HpRestriction { which: which.into(), per_point, doubled, g0, ch_coefficients: vec![], discrepancy })
        }
        _ => {
            // the point whose fiber weight is ±2x2
            let (_, p) = per_point
                .iter()
                .find(|(_, p)| p.degree_in(1) > 0 || max_index == 0)
                .cloned()
                .unwrap_or_else(|| per_point[0].clone());
            let doubled = p.scale(&q(2));
            let ch: Vec<MultiPoly> = (0..=max_index).map(|k| coeff_x(&doubled, 0, 2 * k)).collect();
            let mut g0 = Vec::new();
            let mut mismatch = false;
            for i2 in 0..=max_index {
                let claimed = &pow2(2 * i2) * &a(2 * i2 + 1);
                let computed = ch[i2 as usize].clone();
                if computed != claimed {
                    mismatch = true;
                }
                g0.push(G0Entry { omega: (0, i2), computed, claimed });
            }
            let discrepancy = mismatch.then(|| {
                "stated g₀,(0,k) = 2^{2k}·a_{2k+1} is 1/4 of the ch-expansion coefficient 2^{2k+2}·a_{2k+1}".to_string()
            });
            Ok(HpRestriction { which: which.into(), per_point, doubled, g0, ch_coefficients: ch, discrepancy })
        }
    }
}

#[derive(Clone, Debug)]
pub struct HpObstruction {
    pub n: usize,
    /// Sign symbols in order `e2..e_{n+1}, d2..d_{n+1}` for the roots `x1+x_j`, `x1−x_j`.
    pub symbols: Vec<String>,
    /// The `t¹` numerator, linear in the sign symbols.
    pub numerator: MultiPoly,
    /// One linear equation per `x`-monomial.
    pub equations: Vec<MultiPoly>,
    pub checked: usize,
    /// Assignments satisfying the `t¹` equations.
    pub t1_solutions: Vec<Vec<i8>>,
    /// For each `t¹` solution, the first `(l, ω)` with `0 < l < 2n` whose coefficient is nonzero.
    pub eliminated: Vec<(Vec<i8>, u32, Omega)>,
    pub admissible: Vec<Vec<i8>>,
}

impl HpObstruction {
    pub fn witness(&self) -> String {
        let eqs: Vec<String> = self.equations.iter().map(|e| format!("{e} = 0")).collect();
        let mut out = format!("t^1: {}", eqs.join(", "));
        for (s, l, o) in &self.eliminated {
            out.push_str(&format!("; {} solves t^1 but the t^{l} coefficient of {} is nonzero", self.fmt_signs(s), omega_monomial(o)));
        }
        out.push_str(&format!("; {} of {} assignments admissible", self.admissible.len(), self.checked));
        out
    }

    pub fn fmt_signs(&self, s: &[i8]) -> String {
        let parts: Vec<String> = self.symbols.iter().zip(s).map(|(n, v)| format!("{n}={v:+}")).collect();
        format!("({})", parts.join(","))
    }
}

/// Searches sign choices `ε_j(x1+x_j)`, `δ_j(x1−x_j)` on `ℍPⁿ = Sp(n+1)/Sp(1)×Sp(n)` whose
/// `t¹` localization coefficient vanishes.
pub fn hp_obstruction_search(n: usize) -> Result<HpObstruction> {
    if n == 0 {
        return Ok(HpObstruction {
            n,
            symbols: vec![],
            numerator: MultiPoly::zero(&Ring::from_names(&["x1"])),
            equations: vec![],
            checked: 1,
            t1_solutions: vec![vec![]],
            eliminated: vec![],
            admissible: vec![vec![]],
        });
    }
    if n > 4 {
        return invalid("hp_obstruction_search supports n ≤ 4");
    }
    let m = n + 1;
    let g = build_group(&format!("Sp({m})"))?;
    let mut symbols: Vec<String> = (2..=m).map(|j| format!("e{j}")).collect();
    symbols.extend((2..=m).map(|j| format!("d{j}")));
    let mut names = Ring::block("x", m);
    names.extend(symbols.iter().cloned());
    let ring = Ring::from_names(&names);
    let unit = |i: usize| -> QVec { (0..m).map(|j| if i == j { Q::one() } else { Q::zero() }).collect() };
    // α_j = x1 + x_j (sign e_j), α_{n+j} = x1 − x_j (sign d_j)
    let mut alphas: Vec<(QVec, usize)> = Vec::new();
    for j in 1..m {
        alphas.push((rootdata::add(&unit(0), &unit(j)), m + j - 1));
    }
    for j in 1..m {
        alphas.push((rootdata::sub(&unit(0), &unit(j)), m + n + j - 1));
    }
    // fixed points: the transpositions (1 i)
    let reps: Vec<Matrix> = (0..m)
        .map(|i| {
            let mut p: Vec<usize> = (1..=m).collect();
            p.swap(0, i);
            crate::structures::permutation_matrix(&p)
        })
        .collect();
    for r in &reps {
        if !g.roots.iter().all(|x| g.is_root(&rootdata::mat_vec(r, x))) {
            return Err(Error::Math("transposition is not a Weyl element".into()));
        }
    }
    let pts: Vec<FixedPointData> = reps
        .iter()
        .enumerate()
        .map(|(c, w)| FixedPointData {
            coset: c,
            rep: WeylElement { matrix: w.clone(), word: vec![] },
            weights: alphas.iter().map(|(a, _)| rootdata::mat_vec(w, a)).collect(),
            sign: 1,
        })
        .collect();
    let rad = Radical::of(&pts)?;
    let forms: Vec<MultiPoly> = rad.forms.iter().map(|f| linear(&ring, f)).collect();
    let mut num = MultiPoly::zero(&ring);
    for p in &pts {
        // Σ_j s_j w(α_j), the common factor Π s_j dropped
        let mut s = MultiPoly::zero(&ring);
        for (w, (_, sym)) in p.weights.iter().zip(&alphas) {
            s = &s + &(&linear(&ring, w) * &MultiPoly::var(&ring, *sym));
        }
        let (sigma, cof) = rad.split(&p.weights);
        let mut term = s.scale(&q(sigma as i64));
        for c in cof {
            term = &term * &forms[c];
        }
        num.add_assign_ref(&term);
    }
    // group by x-monomial
    let mut by_x: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
    for (e, c) in num.terms() {
        let xe = e[..m].to_vec();
        let mut se = vec![0; ring.len()];
        se[m..].copy_from_slice(&e[m..]);
        by_x.entry(xe).or_insert_with(|| MultiPoly::zero(&ring)).add_term(se, c.clone());
    }
    let mut equations: Vec<MultiPoly> = Vec::new();
    for eq in by_x.into_values() {
        let content = eq.terms().map(|(_, c)| c.abs()).fold(Q::zero(), |a, b| if b > a { b } else { a });
        let lead_sign = eq.terms().next_back().map(|(_, c)| c.is_negative()).unwrap_or(false);
        let mut e = eq.scale(&(Q::one() / content));
        if lead_sign {
            e = e.scale(&-Q::one());
        }
        if !equations.contains(&e) {
            equations.push(e);
        }
    }
    let k = symbols.len();
    let mut t1_solutions = Vec::new();
    for mask in 0..1u32 << k {
        let s: Vec<i8> = (0..k).map(|i| if mask >> (k - 1 - i) & 1 == 1 { -1 } else { 1 }).collect();
        let assign: Vec<(usize, Q)> = (0..k).map(|i| (m + i, q(s[i] as i64))).collect();
        if num.partial_eval(&assign).is_zero() {
            t1_solutions.push(s);
        }
    }
    let xr = x_ring(m);
    let mut admissible = Vec::new();
    let mut eliminated = Vec::new();
    for s in &t1_solutions {
        let signed: Vec<FixedPointData> = pts
            .iter()
            .map(|p| {
                let weights = p.weights.iter().zip(&alphas).map(|(w, (_, sym))| {
                    if s[sym - m] < 0 { neg(w) } else { w.clone() }
                });
                FixedPointData { weights: weights.collect(), ..p.clone() }
            })
            .collect();
        let srad = Radical::of(&signed)?;
        let hit = (2..2 * n as u32).find_map(|l| {
            partitions(l, 2 * n, l as usize).into_iter().find_map(|o| {
                // a pole also means the coefficient is nonzero
                match p_omega(&xr, &signed, &srad, &o) {
                    Ok(p) if p.is_zero() => None,
                    _ => Some((l, o)),
                }
            })
        });
        match hit {
            Some((l, o)) => eliminated.push((s.clone(), l, o)),
            None => admissible.push(s.clone()),
        }
    }
    Ok(HpObstruction { n, symbols, numerator: num, equations, checked: 1 << k, t1_solutions, eliminated, admissible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::enumerate_structures;

    fn s6() -> HomogeneousSpace {
        HomogeneousSpace::from_specs("S6", "G2", "SU(3)").unwrap()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(6, 6, 6).len(), 11);
        assert_eq!(partitions(6, 2, 6).len(), 4);
        assert_eq!(partitions(4, 4, 2).len(), 3);
        for o in partitions(7, 7, 7) {
            assert_eq!(omega_norm(&o), 7);
        }
    }

    #[test]
    fn m_omega_small() {
        // m_(2,1)(λ1, λ2) = λ1²λ2 + λ1λ2²
        let v = m_omega(&[1, 1], 2, |i, k| num_traits::pow([q(2), q(3)][i].clone(), k as usize), |a, b| a * b, |a, b| a + b, q(1));
        assert_eq!(v, Some(q(4 * 3 + 2 * 9)));
        let v = m_omega(&[2], 2, |i, k| num_traits::pow([q(2), q(3)][i].clone(), k as usize), |a, b| a * b, |a, b| a + b, q(1));
        assert_eq!(v, Some(q(6)));
        assert_eq!(m_omega(&[3], 2, |_, _| q(1), |a, b| a * b, |a, b| a + b, q(1)), None);
    }

    #[test]
    fn sphere_class() {
        let s = s6();
        let j = s.standard_structure().unwrap();
        let g = chern_dold_genus(&s, &Structure::Invariant(j), 3).unwrap();
        assert_eq!(g.class.to_text(), "2*a1^3 - 6*a1*a2 + 6*a3");
        assert!(g.degree_part(0).is_zero() && g.degree_part(2).is_zero());
    }

    #[test]
    fn cp1_class() {
        let s = HomogeneousSpace::from_specs("CP1", "U(2)", "T").unwrap();
        let j = s.standard_structure().unwrap();
        let g = chern_dold_genus(&s, &Structure::Invariant(j), 1).unwrap();
        assert_eq!(g.class.to_text(), "2*a1");
    }

    #[test]
    fn methods_agree_on_flags() {
        let s = HomogeneousSpace::from_specs("U4-flag", "U(4)", "T").unwrap();
        for j in enumerate_structures(&s).unwrap().into_iter().step_by(9) {
            let st = Structure::Invariant(j);
            let a = cobordism_class(&s, &st, Method::Symbolic).unwrap();
            let b = cobordism_class(&s, &st, Method::DividedDifference).unwrap();
            let c = cobordism_class(&s, &st, Method::Evaluation).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, c);
        }
    }

    #[test]
    fn grassmann_top() {
        let g42 = HomogeneousSpace::from_specs("G42", "U(4)", "U(2)xU(2)").unwrap();
        let j = Structure::Invariant(g42.standard_structure().unwrap());
        assert_eq!(top_s(&g42, &j).unwrap().value, q(-20));
        assert_eq!(s_omega_divdiff(&g42, &j, &[0, 0, 0, 1]).unwrap(), q(-20));
    }

    #[test]
    fn rejects_bad_omega() {
        let s = s6();
        let j = Structure::Invariant(s.standard_structure().unwrap());
        assert!(s_omega(&s, &j, &[1, 0, 1]).is_err());
        assert!(s_omega(&s, &j, &[0, 0, 0, 1]).is_err());
    }

    #[test]
    fn uncancelled_pole_detected() {
        let s = HomogeneousSpace::from_specs("CP1", "U(2)", "T").unwrap();
        let pts = vec![FixedPointData { coset: 0, rep: s.reps[0].clone(), weights: vec![s.comp_roots[0].clone()], sign: 1 }];
        let e = chern_dold_from_points(2, 1, &pts, 1).unwrap_err();
        assert!(e.is_math());
    }

    #[test]
    fn hp_obstruction_small() {
        let r = hp_obstruction_search(2).unwrap();
        assert_eq!(r.checked, 16);
        assert!(r.admissible.is_empty());
        assert_eq!(r.t1_solutions, vec![vec![1, -1, 1, -1], vec![-1, 1, -1, 1]]);
        assert!(r.eliminated.iter().all(|e| e.1 == 3));
        assert_eq!(hp_obstruction_search(0).unwrap().admissible.len(), 1);
    }
}
