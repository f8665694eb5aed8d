//! Sparse multivariate polynomials over arbitrary-precision rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{fmt_q, parse_q, Q};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub weight: u32,
}

impl Var {
    /// Weight inferred from the name: `a_i`, `b_i` carry `i`, `y` carries 0, the rest 1.
    pub fn named(name: &str) -> Var {
        let weight = match block_of(name) {
            (2, i) | (3, i) => i,
            (5, _) => 0,
            _ => 1,
        };
        Var { name: name.to_string(), weight }
    }
}

/// Block rank in the canonical order x, u, a, b, t, y, then anything else.
fn block_of(name: &str) -> (u32, u32) {
    let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len()));
    let idx = tail.parse::<u32>().unwrap_or(0);
    let rank = match head {
        "x" => 0,
        "u" => 1,
        "a" => 2,
        "b" => 3,
        "t" => 4,
        "y" => 5,
        _ => 6,
    };
    (rank, idx)
}

/// An ordered list of indeterminates shared by all polynomials of one computation.
#[derive(Clone, Debug)]
pub struct Ring(Arc<Vec<Var>>);

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn new(vars: Vec<Var>) -> Ring {
        Ring(Arc::new(vars))
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Ring {
        Ring::new(names.iter().map(|n| Var::named(n.as_ref())).collect())
    }

    /// `x1..xk, a1..an, t`: the ring of the Chern–Dold form.
    pub fn xat(k: usize, n: usize) -> Ring {
        let mut names: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
        names.extend((1..=n).map(|i| format!("a{i}")));
        names.push("t".into());
        Ring::from_names(&names)
    }

    pub fn block(prefix: &str, count: usize) -> Vec<String> {
        (1..=count).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v.name == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i].name
    }

    /// Indices whose names start with `prefix` followed by a digit.
    pub fn block_indices(&self, prefix: &str) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, v)| {
                v.name.starts_with(prefix)
                    && v.name[prefix.len()..].chars().next().is_some_and(|c| c.is_ascii_digit())
            })
            .map(|(i, _)| i)
            .collect()
    }
}

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, Q>,
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> MultiPoly {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> MultiPoly {
        MultiPoly::constant(ring, Q::one())
    }

    pub fn constant(ring: &Ring, c: Q) -> MultiPoly {
        let mut p = MultiPoly::zero(ring);
        p.add_term(vec![0; ring.len()], c);
        p
    }

    pub fn var(ring: &Ring, i: usize) -> MultiPoly {
        let mut e = vec![0; ring.len()];
        e[i] = 1;
        MultiPoly::monomial(ring, e, Q::one())
    }

    pub fn var_named(ring: &Ring, name: &str) -> MultiPoly {
        let i = ring.index_of(name).unwrap_or_else(|| panic!("no variable {name}"));
        MultiPoly::var(ring, i)
    }

    pub fn monomial(ring: &Ring, exp: Monomial, c: Q) -> MultiPoly {
        assert_eq!(exp.len(), ring.len(), "exponent arity");
        let mut p = MultiPoly::zero(ring);
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Q)>) -> MultiPoly {
        let mut p = MultiPoly::zero(ring);
        for (e, c) in terms {
            assert_eq!(e.len(), ring.len(), "exponent arity");
            p.add_term(e, c);
        }
        p
    }

    /// `Σ coeffs[l]·v_{offset+l}`.
    pub fn linear_form(ring: &Ring, offset: usize, coeffs: &[Q]) -> MultiPoly {
        let mut p = MultiPoly::zero(ring);
        for (l, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; ring.len()];
            e[offset + l] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Q> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&vec![0; self.ring.len()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Adds `c·x^e` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, e: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &MultiPoly) {
        assert!(self.ring == other.ring, "polynomials over different rings");
    }

    pub fn add_assign_ref(&mut self, other: &MultiPoly) {
        self.check_ring(other);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    /// `self += k·other`.
    pub fn add_scaled(&mut self, other: &MultiPoly, k: &Q) {
        self.check_ring(other);
        if k.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * k);
        }
    }

    pub fn scale(&self, k: &Q) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn weighted_degree_of(&self, e: &[u32]) -> u32 {
        e.iter().zip(self.ring.vars()).map(|(x, v)| x * v.weight).sum()
    }

    /// Set of weighted degrees occurring.
    pub fn weighted_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| self.weighted_degree_of(e)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// True if no variable outside `allowed` occurs.
    pub fn only_in(&self, allowed: &[usize]) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().enumerate().all(|(i, &x)| x == 0 || allowed.contains(&i)))
    }

    /// Drops terms whose degree in `vars` exceeds `cutoff`.
    pub fn truncate(&self, vars: &[usize], cutoff: u32) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.iter().map(|&i| e[i]).sum::<u32>() <= cutoff)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product truncated at degree `cutoff` in `vars`.
    pub fn mul_trunc(&self, other: &MultiPoly, vars: &[usize], cutoff: u32) -> MultiPoly {
        self.check_ring(other);
        let deg = |e: &Monomial| vars.iter().map(|&i| e[i]).sum::<u32>();
        let mut out = MultiPoly::zero(&self.ring);
        for (e1, c1) in &self.terms {
            let d1 = deg(e1);
            if d1 > cutoff {
                continue;
            }
            for (e2, c2) in &other.terms {
                if d1 + deg(e2) > cutoff {
                    continue;
                }
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Terms with `e[var] == deg`, with that exponent zeroed.
    pub fn coeff_in(&self, var: usize, deg: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (e, c) in &self.terms {
            if e[var] == deg {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Full evaluation at a point with one value per ring variable.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.ring.len(), "evaluation point arity");
        let maxdeg: Vec<u32> = (0..self.ring.len()).map(|i| self.degree_in(i)).collect();
        let powers: Vec<Vec<Q>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = vec![Q::one()];
                for k in 1..=d as usize {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    t *= &powers[i][x as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Assigns values to some variables, keeping the ring.
    pub fn partial_eval(&self, assign: &[(usize, Q)]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let mut c2 = c.clone();
            for (i, v) in assign {
                let k = e2[*i];
                if k > 0 {
                    c2 *= num_traits::pow(v.clone(), k as usize);
                    e2[*i] = 0;
                }
            }
            out.add_term(e2, c2);
        }
        out
    }

    /// Simultaneous substitution `v_i ↦ images[i]` (or unchanged where `None`).
    pub fn substitute(&self, images: &[Option<MultiPoly>]) -> MultiPoly {
        self.substitute_trunc(images, None)
    }

    /// Substitution with optional truncation `(vars, cutoff)` applied after every product.
    pub fn substitute_trunc(&self, images: &[Option<MultiPoly>], trunc: Option<(&[usize], u32)>) -> MultiPoly {
        assert_eq!(images.len(), self.ring.len(), "substitution arity");
        let target = images
            .iter()
            .flatten()
            .next()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mul = |a: &MultiPoly, b: &MultiPoly| match trunc {
            Some((vars, cut)) => a.mul_trunc(b, vars, cut),
            None => a * b,
        };
        let mut cache: Vec<Vec<MultiPoly>> = images
            .iter()
            .enumerate()
            .map(|(i, img)| {
                vec![
                    MultiPoly::one(&target),
                    img.clone().unwrap_or_else(|| MultiPoly::var(&target, i)),
                ]
            })
            .collect();
        let mut power = |i: usize, k: u32| -> MultiPoly {
            while cache[i].len() <= k as usize {
                let next = mul(cache[i].last().unwrap(), &cache[i][1]);
                cache[i].push(next);
            }
            cache[i][k as usize].clone()
        };
        let mut out = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let pk = power(i, k);
                    t = mul(&t, &pk);
                }
            }
            out.add_assign_ref(&t);
        }
        out
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn rebase(&self, target: &Ring) -> Result<MultiPoly> {
        let map: Vec<Option<usize>> =
            self.ring.vars().iter().map(|v| target.index_of(&v.name)).collect();
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e2[j] += k,
                    None => {
                        return invalid(format!("variable {} missing from target ring", self.ring.name(i)))
                    }
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    /// Division by a single divisor in lex order (first variable most significant).
    pub fn div_rem(&self, d: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        self.check_ring(d);
        let (ld, lc) = match d.leading() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return invalid("division by zero polynomial"),
        };
        let tail: Vec<(Monomial, Q)> =
            d.terms.iter().filter(|(e, _)| **e != ld).map(|(e, c)| (e.clone(), c.clone())).collect();
        let mut p = self.terms.clone();
        let mut quot = MultiPoly::zero(&self.ring);
        let mut rem = MultiPoly::zero(&self.ring);
        while let Some((e, c)) = p.pop_last() {
            if e.iter().zip(&ld).all(|(a, b)| a >= b) {
                let m: Monomial = e.iter().zip(&ld).map(|(a, b)| a - b).collect();
                let k = &c / &lc;
                for (te, tc) in &tail {
                    let key: Monomial = m.iter().zip(te).map(|(a, b)| a + b).collect();
                    let delta = -(&k * tc);
                    match p.entry(key) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(delta);
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            *o.get_mut() += delta;
                            if o.get().is_zero() {
                                o.remove();
                            }
                        }
                    }
                }
                quot.add_term(m, k);
            } else {
                rem.add_term(e, c);
            }
        }
        Ok((quot, rem))
    }

    /// Exact quotient; a nonzero remainder is reported as an uncancelled pole.
    pub fn exact_divide(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Math(format!("pole not cancelled: division by {d} leaves remainder {r}")))
        }
    }

    /// Canonical text form, graded-lex descending.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut s = String::new();
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&k| k == 0);
            if !abs.is_one() || is_const {
                factors.push(fmt_q(&abs));
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.ring.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.name(i), k)),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }

    /// Parses the text form against a given ring.
    pub fn parse(text: &str, ring: &Ring) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(ring);
        for (sign, term) in split_terms(text)? {
            let mut c = Q::from_integer(sign.into());
            let mut e = vec![0u32; ring.len()];
            for f in term.split('*').map(str::trim) {
                if f.is_empty() {
                    return invalid(format!("empty factor in '{text}'"));
                }
                if f.starts_with(|ch: char| ch.is_ascii_digit()) {
                    c *= parse_q(f)?;
                    continue;
                }
                let (name, k) = match f.split_once('^') {
                    Some((n, k)) => (
                        n.trim(),
                        k.trim().parse::<u32>().map_err(|_| Error::Invalid(format!("bad exponent in '{f}'")))?,
                    ),
                    None => (f, 1),
                };
                let i = ring.index_of(name).ok_or_else(|| Error::Invalid(format!("unknown variable '{name}'")))?;
                e[i] += k;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Parses text, building a ring from the variable names in canonical block order.
    pub fn parse_infer(text: &str) -> Result<MultiPoly> {
        let mut names: Vec<String> = Vec::new();
        for (_, term) in split_terms(text)? {
            for f in term.split('*').map(str::trim) {
                if f.starts_with(|ch: char| ch.is_ascii_alphabetic()) {
                    let name = f.split('^').next().unwrap().trim().to_string();
                    if !names.contains(&name) {
                        names.push(name);
                    }
                }
            }
        }
        names.sort_by(|a, b| block_of(a).cmp(&block_of(b)).then_with(|| a.cmp(b)));
        MultiPoly::parse(text, &Ring::from_names(&names))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| serde_json::json!({ "coeff": fmt_q(c), "exp": e }))
            .collect();
        serde_json::json!({ "vars": self.ring.vars(), "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<MultiPoly> {
        #[derive(Deserialize)]
        struct Term {
            #[serde(with = "super::rational::serde_q")]
            coeff: Q,
            exp: Vec<u32>,
        }
        #[derive(Deserialize)]
        struct Doc {
            vars: Vec<Var>,
            terms: Vec<Term>,
        }
        let doc: Doc = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        let ring = Ring::new(doc.vars);
        let mut out = MultiPoly::zero(&ring);
        for t in doc.terms {
            if t.exp.len() != ring.len() {
                return invalid("exponent arity does not match vars");
            }
            out.add_term(t.exp, t.coeff);
        }
        Ok(out)
    }
}

fn split_terms(text: &str) -> Result<Vec<(i64, String)>> {
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    let mut seen_any = false;
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                let prev = cur.trim_end();
                if prev.ends_with('^') {
                    return invalid("negative exponents are not supported");
                }
                if !cur.trim().is_empty() {
                    out.push((sign, cur.trim().to_string()));
                    cur.clear();
                    sign = 1;
                }
                if ch == '-' {
                    sign = -sign;
                }
                seen_any = true;
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    } else if seen_any {
        return invalid(format!("dangling sign in '{text}'"));
    }
    out.retain(|(_, t)| t != "0");
    Ok(out)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = MultiPoly::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{q, qf};

    fn ring2() -> Ring {
        Ring::from_names(&["x1", "x2"])
    }

    #[test]
    fn difference_of_squares_divides() {
        let r = ring2();
        let p = MultiPoly::parse("x1^2 - x2^2", &r).unwrap();
        let d = MultiPoly::parse("x1 - x2", &r).unwrap();
        assert_eq!(p.exact_divide(&d).unwrap().to_text(), "x1 + x2");
        assert_eq!(d.exact_divide(&d).unwrap().to_text(), "1");
    }

    #[test]
    fn remainder_is_a_math_error() {
        let r = ring2();
        let p = MultiPoly::parse("x1^2 + x2^2", &r).unwrap();
        let d = MultiPoly::parse("x1 - x2", &r).unwrap();
        let err = p.exact_divide(&d).unwrap_err();
        assert!(err.is_math());
    }

    #[test]
    fn text_round_trip() {
        let p = MultiPoly::parse_infer("2*a1^3 - 6*a1*a2 + 6*a3").unwrap();
        assert_eq!(p.to_text(), "2*a1^3 - 6*a1*a2 + 6*a3");
        let p2 = MultiPoly::parse("-1/2*x1*a2 + 3 - x2^2", &Ring::from_names(&["x1", "x2", "a1", "a2"])).unwrap();
        assert_eq!(MultiPoly::parse(&p2.to_text(), p2.ring()).unwrap(), p2);
        assert_eq!(p2.coeff(&[1, 0, 0, 1]), qf(-1, 2));
    }

    #[test]
    fn json_round_trip() {
        let p = MultiPoly::parse_infer("2*a1^3 - 6*a1*a2 + 6/7*a3").unwrap();
        let back = MultiPoly::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn evaluation() {
        let r = Ring::from_names(&["x1", "x2", "x3"]);
        let d = MultiPoly::parse("x1 - x2", &r).unwrap();
        let v = MultiPoly::parse("x1-x2", &r).unwrap();
        assert_eq!(d, v);
        let vand = &(&d * &MultiPoly::parse("x1 - x3", &r).unwrap()) * &MultiPoly::parse("x2 - x3", &r).unwrap();
        assert_eq!(vand.eval(&[q(3), q(2), q(1)]), q(2));
    }

    #[test]
    fn substitution_and_weights() {
        let r = Ring::from_names(&["x1", "a1", "a2", "t"]);
        let p = MultiPoly::parse("a2*x1^2*t^2", &r).unwrap();
        assert_eq!(p.weighted_degrees(), vec![6]);
        let img = MultiPoly::parse("x1 + 1", &r).unwrap();
        let s = p.substitute(&[Some(img), None, None, None]);
        assert_eq!(s.to_text(), "x1^2*a2*t^2 + 2*x1*a2*t^2 + a2*t^2");
    }
}
