//! Root systems in canonical coordinates, Weyl groups and coset representatives.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::exactalg::rational::{dot, fmt_q, q, qvec_to_json, value_to_q, Q};

pub type QVec = Vec<Q>;
pub type Matrix = Vec<Vec<Q>>;

pub const DEFAULT_WEYL_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    pub label: String,
    /// Dimension of the maximal torus acting on the canonical coordinates.
    pub rank: usize,
    pub coordinate_dim: usize,
    /// Positive roots under the default ordering, in canonical order.
    pub positive: Vec<QVec>,
    /// `positive` followed by the negatives in the same order.
    pub roots: Vec<QVec>,
    pub simple_roots: Vec<QVec>,
    /// Invariant form used for reflections.
    pub gram: Matrix,
    /// `SU(n)`: trace-zero constraint recorded, not enforced.
    pub trace_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Matrix,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> WeylElement {
        WeylElement { matrix: identity(n), word: vec![] }
    }

    pub fn apply(&self, v: &[Q]) -> QVec {
        mat_vec(&self.matrix, v)
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend(&other.word);
        WeylElement { matrix: mat_mul(&self.matrix, &other.matrix), word }
    }

    /// Word text such as `s1 s3 s2`, `e` for the identity.
    pub fn word_text(&self) -> String {
        if self.word.is_empty() {
            "e".into()
        } else {
            self.word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ")
        }
    }

    /// For permutation matrices: the one-line notation `w(1) w(2) …` (1-based).
    pub fn one_line(&self) -> Option<Vec<usize>> {
        let n = self.matrix.len();
        let mut out = vec![0; n];
        for c in 0..n {
            let mut hit = None;
            for r in 0..n {
                let x = &self.matrix[r][c];
                if x.is_one() && hit.is_none() {
                    hit = Some(r);
                } else if !x.is_zero() {
                    return None;
                }
            }
            out[c] = hit? + 1;
        }
        Some(out)
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn mat_vec(m: &Matrix, v: &[Q]) -> QVec {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Q::zero(), |acc, l| acc + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse, `None` when singular.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = Q::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn neg(v: &[Q]) -> QVec {
    v.iter().map(|x| -x).collect()
}

pub fn add(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(v: &[Q], k: &Q) -> QVec {
    v.iter().map(|x| x * k).collect()
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// `Some(k)` when `a = k·b`.
pub fn multiple_of(a: &[Q], b: &[Q]) -> Option<Q> {
    let i = b.iter().position(|x| !x.is_zero())?;
    let k = &a[i] / &b[i];
    if a.iter().zip(b).all(|(x, y)| *x == &k * y) {
        Some(k)
    } else {
        None
    }
}

fn unit(n: usize, i: usize) -> QVec {
    (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

fn vecs(n: usize, entries: &[(usize, i64)]) -> QVec {
    let mut v = vec![Q::zero(); n];
    for &(i, c) in entries {
        v[i] += q(c);
    }
    v
}

pub fn fmt_root(v: &[Q]) -> String {
    let mut s = String::new();
    for (i, c) in v.iter().enumerate() {
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
            s.push_str(if neg { "-" } else { "+" });
        }
        if !a.is_one() {
            s.push_str(&fmt_q(&a));
        }
        s.push_str(&format!("x{}", i + 1));
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordering {
    pub v: QVec,
}

impl Ordering {
    /// `v = (N, N−1, …, 1)`.
    pub fn default_for(dim: usize) -> Ordering {
        Ordering { v: (0..dim).map(|i| q((dim - i) as i64)).collect() }
    }

    pub fn new(v: QVec) -> Ordering {
        Ordering { v }
    }

    pub fn check_generic(&self, roots: &[QVec]) -> Result<()> {
        for r in roots {
            if dot(r, &self.v).is_zero() {
                return invalid(format!("ordering is not generic: it vanishes on the root {}", fmt_root(r)));
            }
        }
        Ok(())
    }
}

pub fn root_sign(root: &[Q], ord: &Ordering) -> Result<i32> {
    let p = dot(root, &ord.v);
    if p.is_zero() {
        return invalid(format!("non-generic ordering: <{}, v> = 0", fmt_root(root)));
    }
    Ok(if p.is_positive() { 1 } else { -1 })
}

impl GroupData {
    /// Builds a group from positive roots (canonical order) and an invariant form.
    pub fn from_positive(label: &str, dim: usize, positive: Vec<QVec>, gram: Matrix, trace_zero: bool) -> Result<GroupData> {
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| neg(r)));
        let simple_roots = simple_roots_of(&positive);
        let g = GroupData {
            label: label.to_string(),
            rank: if trace_zero { dim - 1 } else { dim },
            coordinate_dim: dim,
            positive,
            roots,
            simple_roots,
            gram,
            trace_zero,
        };
        g.validate()?;
        Ok(g)
    }

    /// Builds from an arbitrary root list, splitting by the default ordering.
    pub fn from_roots(label: &str, dim: usize, roots: &[QVec], gram: Option<Matrix>) -> Result<GroupData> {
        let ord = Ordering::default_for(dim);
        let mut positive: Vec<QVec> = Vec::new();
        for r in roots {
            if r.len() != dim {
                return invalid(format!("root {} has wrong length (dim {dim})", fmt_root(r)));
            }
            if is_zero_vec(r) {
                return invalid("zero vector is not a root");
            }
            let p = if root_sign(r, &ord)? > 0 { r.clone() } else { neg(r) };
            if !positive.contains(&p) {
                positive.push(p);
            }
        }
        let gram = gram.unwrap_or_else(|| identity(dim));
        GroupData::from_positive(label, dim, positive, gram, false)
    }

    pub fn validate(&self) -> Result<()> {
        let set: HashSet<&QVec> = self.roots.iter().collect();
        for r in &self.roots {
            if !set.contains(&neg(r)) {
                return invalid(format!("root set not closed under negation at {}", fmt_root(r)));
            }
        }
        for (i, a) in self.positive.iter().enumerate() {
            for b in &self.positive[i + 1..] {
                if multiple_of(a, b).is_some() {
                    return invalid(format!("roots {} and {} are proportional", fmt_root(a), fmt_root(b)));
                }
            }
        }
        for a in &self.positive {
            let s = self.reflection(a);
            for b in &self.roots {
                if !set.contains(&mat_vec(&s, b)) {
                    return invalid(format!(
                        "reflection in {} does not preserve the root set (check the invariant form)",
                        fmt_root(a)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_root(&self, v: &[Q]) -> bool {
        self.roots.iter().any(|r| r.as_slice() == v)
    }

    fn form(&self, a: &[Q], b: &[Q]) -> Q {
        let ga = mat_vec(&self.gram, b);
        dot(a, &ga)
    }

    /// Matrix of the reflection in `alpha` acting on root vectors.
    pub fn reflection(&self, alpha: &[Q]) -> Matrix {
        let n = self.coordinate_dim;
        let aa = self.form(alpha, alpha);
        let galpha = mat_vec(&self.gram, alpha);
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let d = if r == c { Q::one() } else { Q::zero() };
                        d - q(2) * &alpha[r] * &galpha[c] / &aa
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "roots": self.positive.iter().map(|r| qvec_to_json(r)).collect::<Vec<_>>(),
            "dim": self.coordinate_dim,
            "gram": self.gram.iter().map(|r| qvec_to_json(r)).collect::<Vec<_>>(),
        })
    }
}

/// Positive roots that are not sums of two positive roots.
pub fn simple_roots_of(positive: &[QVec]) -> Vec<QVec> {
    let set: HashSet<&QVec> = positive.iter().collect();
    positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|a| {
                let b = sub(r, a);
                set.contains(&b)
            })
        })
        .cloned()
        .collect()
}

fn parse_arg(spec: &str, head: &str) -> Option<usize> {
    let rest = spec.strip_prefix(head)?;
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    inner.trim().parse().ok()
}

/// Builds a classical group or `G2` from a descriptor such as `"U(3)"`, `"Sp(2)"`, `"SO(5)"`.
pub fn build_group(spec: &str) -> Result<GroupData> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "G2" {
        return g2();
    }
    if let Some(n) = parse_arg(&s, "SU") {
        if n < 2 {
            return invalid(format!("unsupported group '{spec}': SU(n) needs n ≥ 2"));
        }
        let mut g = unitary(n)?;
        g.label = s.clone();
        g.trace_zero = true;
        g.rank = n - 1;
        return Ok(g);
    }
    if let Some(n) = parse_arg(&s, "U") {
        if n < 1 {
            return invalid(format!("unsupported group '{spec}': rank 0"));
        }
        return unitary(n);
    }
    if let Some(n) = parse_arg(&s, "Sp") {
        if n < 1 {
            return invalid(format!("unsupported group '{spec}': rank 0"));
        }
        return symplectic(n);
    }
    if let Some(m) = parse_arg(&s, "SO") {
        if m < 2 {
            return invalid(format!("unsupported group '{spec}': rank 0"));
        }
        return orthogonal(m);
    }
    invalid(format!("unsupported group '{spec}' (expected U(n), SU(n), Sp(n), SO(m) or G2)"))
}

fn unitary(n: usize) -> Result<GroupData> {
    let mut pos = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pos.push(vecs(n, &[(i, 1), (j, -1)]));
        }
    }
    GroupData::from_positive(&format!("U({n})"), n, pos, identity(n), false)
}

fn symplectic(n: usize) -> Result<GroupData> {
    let mut pos = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pos.push(vecs(n, &[(i, 1), (j, -1)]));
            pos.push(vecs(n, &[(i, 1), (j, 1)]));
        }
    }
    for i in 0..n {
        pos.push(vecs(n, &[(i, 2)]));
    }
    GroupData::from_positive(&format!("Sp({n})"), n, pos, identity(n), false)
}

fn orthogonal(m: usize) -> Result<GroupData> {
    let n = m / 2;
    let mut pos = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pos.push(vecs(n, &[(i, 1), (j, -1)]));
            pos.push(vecs(n, &[(i, 1), (j, 1)]));
        }
    }
    if m % 2 == 1 {
        for i in 0..n {
            pos.push(unit(n, i));
        }
    }
    GroupData::from_positive(&format!("SO({m})"), n, pos, identity(n), false)
}

/// `G2` on the torus of `SU(3)` with coordinates `x1, x2` and `x3 = −x1 − x2`.
fn g2() -> Result<GroupData> {
    let pos = vec![
        vecs(2, &[(0, 1)]),
        vecs(2, &[(1, 1)]),
        vecs(2, &[(0, 1), (1, 1)]),
        vecs(2, &[(0, 1), (1, -1)]),
        vecs(2, &[(0, 2), (1, 1)]),
        vecs(2, &[(0, 1), (1, 2)]),
    ];
    let gram = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
    GroupData::from_positive("G2", 2, pos, gram, false)
}

/// Parses the `group` field of the JSON space format.
pub fn group_from_json(v: &Value) -> Result<GroupData> {
    match v {
        Value::String(s) => build_group(s),
        Value::Object(o) => {
            let dim = o.get("dim").and_then(Value::as_u64).ok_or_else(|| Error::Invalid("group needs \"dim\"".into()))?
                as usize;
            let roots = parse_vec_list(o.get("roots").ok_or_else(|| Error::Invalid("group needs \"roots\"".into()))?)?;
            let gram = match o.get("gram") {
                Some(g) => Some(parse_vec_list(g)?),
                None => None,
            };
            let label = o.get("label").and_then(Value::as_str).unwrap_or("custom");
            GroupData::from_roots(label, dim, &roots, gram)
        }
        _ => invalid("group must be a descriptor string or an object"),
    }
}

pub fn parse_vec_list(v: &Value) -> Result<Vec<QVec>> {
    let arr = v.as_array().ok_or_else(|| Error::Invalid("expected a list of vectors".into()))?;
    arr.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Invalid("expected a vector".into()))?
                .iter()
                .map(value_to_q)
                .collect()
        })
        .collect()
}

/// Closure under right multiplication by simple reflections, breadth-first.
pub fn weyl_elements_with_cap(g: &GroupData, cap: usize) -> Result<Vec<WeylElement>> {
    reflection_group(&g.simple_roots.iter().map(|a| g.reflection(a)).collect::<Vec<_>>(), g.coordinate_dim, cap)
}

pub fn weyl_elements(g: &GroupData) -> Result<Vec<WeylElement>> {
    weyl_elements_with_cap(g, DEFAULT_WEYL_CAP)
}

fn reflection_group(gens: &[Matrix], dim: usize, cap: usize) -> Result<Vec<WeylElement>> {
    let mut seen: HashMap<Matrix, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let e = WeylElement::identity(dim);
    seen.insert(e.matrix.clone(), ());
    queue.push_back(e);
    while let Some(w) = queue.pop_front() {
        for (i, s) in gens.iter().enumerate() {
            let m = mat_mul(&w.matrix, s);
            if seen.contains_key(&m) {
                continue;
            }
            if seen.len() >= cap {
                return Err(Error::Limit(format!("Weyl group exceeds the enumeration cap of {cap} elements")));
            }
            seen.insert(m.clone(), ());
            let mut word = w.word.clone();
            word.push(i);
            queue.push_back(WeylElement { matrix: m, word });
        }
        out.push(w);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupData {
    pub label: String,
    /// Positive roots of `H` under the default ordering, in the parent's order.
    pub positive: Vec<QVec>,
    pub roots: Vec<QVec>,
}

impl SubgroupData {
    pub fn torus(parent: &GroupData) -> SubgroupData {
        SubgroupData { label: format!("T{}", parent.rank), positive: vec![], roots: vec![] }
    }

    /// Validates a root subset (negatives added automatically).
    pub fn from_roots(parent: &GroupData, label: &str, roots: &[QVec]) -> Result<SubgroupData> {
        let mut positive = Vec::new();
        for p in &parent.positive {
            let n = neg(p);
            if roots.iter().any(|r| r == p || *r == n) {
                positive.push(p.clone());
            }
        }
        for r in roots {
            if !parent.is_root(r) {
                return invalid(format!("{} is not a root of {}", fmt_root(r), parent.label));
            }
        }
        let mut all = positive.clone();
        all.extend(positive.iter().map(|r| neg(r)));
        if !is_closed_system(&all, parent) {
            return invalid(format!("subgroup roots of '{label}' are not closed under addition"));
        }
        Ok(SubgroupData { label: label.to_string(), positive, roots: all })
    }

    /// Parses descriptors like `T`, `T2xU(2)`, `U(2)xU(2)`, `Sp(1)xSp(1)`, `U(1)xSp(1)`, `SU(3)`.
    pub fn from_descriptor(parent: &GroupData, desc: &str) -> Result<SubgroupData> {
        let d: String = desc.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('×', "x");
        if d == "T" || d == format!("T{}", parent.coordinate_dim) {
            return Ok(SubgroupData::torus(parent));
        }
        if parent.label == "G2" {
            return match d.as_str() {
                "SU(3)" => {
                    let long: Vec<QVec> = parent.positive[3..].to_vec();
                    SubgroupData::from_roots(parent, "SU(3)", &long)
                }
                "A1xA1" | "SO(4)" => {
                    let r = vec![parent.positive[0].clone(), parent.positive[5].clone()];
                    SubgroupData::from_roots(parent, "A1xA1", &r)
                }
                _ => invalid(format!("unsupported G2 subgroup '{desc}' (use SU(3), A1xA1 or T)")),
            };
        }
        let n = parent.coordinate_dim;
        let kind = parent.label.split('(').next().unwrap_or("").to_string();
        let mut roots = Vec::new();
        let mut start = 0;
        for tok in d.split('x') {
            let (head, size) = if let Some(k) = tok.strip_prefix('T') {
                ("T", if k.is_empty() { 1 } else { k.parse().map_err(|_| Error::Invalid(format!("bad block '{tok}'")))? })
            } else if let Some(k) = parse_arg(tok, "U") {
                ("U", k)
            } else if let Some(k) = parse_arg(tok, "Sp") {
                ("Sp", k)
            } else if let Some(k) = parse_arg(tok, "SO") {
                ("SO", k)
            } else {
                return invalid(format!("bad subgroup block '{tok}'"));
            };
            let width = if head == "SO" { size / 2 } else { size };
            if start + width > n {
                return invalid(format!("subgroup '{desc}' uses more than {n} coordinates"));
            }
            let idx: Vec<usize> = (start..start + width).collect();
            match head {
                "T" => {}
                "U" => {
                    for &i in &idx {
                        for &j in &idx {
                            if i < j {
                                roots.push(vecs(n, &[(i, 1), (j, -1)]));
                            }
                        }
                    }
                }
                "Sp" if kind == "Sp" => {
                    for &i in &idx {
                        for &j in &idx {
                            if i < j {
                                roots.push(vecs(n, &[(i, 1), (j, -1)]));
                                roots.push(vecs(n, &[(i, 1), (j, 1)]));
                            }
                        }
                        roots.push(vecs(n, &[(i, 2)]));
                    }
                }
                "SO" if kind == "SO" => {
                    for &i in &idx {
                        for &j in &idx {
                            if i < j {
                                roots.push(vecs(n, &[(i, 1), (j, -1)]));
                                roots.push(vecs(n, &[(i, 1), (j, 1)]));
                            }
                        }
                        if size % 2 == 1 {
                            roots.push(unit(n, i));
                        }
                    }
                }
                _ => return invalid(format!("block '{tok}' does not fit in {}", parent.label)),
            }
            start += width;
        }
        if start != n {
            return invalid(format!("subgroup '{desc}' covers {start} of {n} coordinates; ranks must agree"));
        }
        SubgroupData::from_roots(parent, &d, &roots)
    }

    /// The subsystem viewed as a group on the parent's coordinates.
    pub fn as_group(&self, parent: &GroupData) -> Result<GroupData> {
        GroupData::from_positive(&self.label, parent.coordinate_dim, self.positive.clone(), parent.gram.clone(), false)
    }

    pub fn weyl_elements(&self, parent: &GroupData) -> Result<Vec<WeylElement>> {
        let simple = simple_roots_of(&self.positive);
        let gens: Vec<Matrix> = simple.iter().map(|a| parent.reflection(a)).collect();
        reflection_group(&gens, parent.coordinate_dim, DEFAULT_WEYL_CAP)
    }
}

/// One representative per left coset `wW_H`, minimal in (length, word).
pub fn coset_reps(g: &GroupData, h: &SubgroupData) -> Result<Vec<WeylElement>> {
    let wg = weyl_elements(g)?;
    let wh = h.weyl_elements(g)?;
    coset_reps_from(&wg, &wh)
}

pub fn coset_reps_from(wg: &[WeylElement], wh: &[WeylElement]) -> Result<Vec<WeylElement>> {
    let mut sorted: Vec<&WeylElement> = wg.iter().collect();
    sorted.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then_with(|| a.word.cmp(&b.word)));
    let mut covered: HashSet<Matrix> = HashSet::new();
    let mut reps = Vec::new();
    for w in sorted {
        if covered.contains(&w.matrix) {
            continue;
        }
        for u in wh {
            let m = mat_mul(&w.matrix, &u.matrix);
            if !wg.iter().any(|x| x.matrix == m) {
                return invalid("subgroup Weyl element outside the parent Weyl group");
            }
            covered.insert(m);
        }
        reps.push(w.clone());
    }
    if wg.len() % wh.len() != 0 || reps.len() * wh.len() != wg.len() {
        return invalid("W_H is not a subgroup of W_G");
    }
    Ok(reps)
}

/// Positive roots of `G` that are not roots of `H`, in canonical order.
pub fn complementary_roots(g: &GroupData, h: &SubgroupData) -> Vec<QVec> {
    g.positive.iter().filter(|r| !h.positive.contains(r)).cloned().collect()
}

pub fn is_closed_system(roots: &[QVec], ambient: &GroupData) -> bool {
    let set: HashSet<&QVec> = roots.iter().collect();
    for a in roots {
        for b in roots {
            let s = add(a, b);
            if ambient.is_root(&s) && !set.contains(&s) {
                return false;
            }
        }
    }
    true
}

/// Some `w` with `psi ⊆ w(positive roots)`, i.e. a Weyl chamber in which all of `psi` is positive.
pub fn chamber_containing(g: &GroupData, psi: &[QVec]) -> Result<Option<WeylElement>> {
    for w in weyl_elements(g)? {
        let pos: HashSet<QVec> = g.positive.iter().map(|b| w.apply(b)).collect();
        if psi.iter().all(|b| pos.contains(b)) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_root_counts() {
        assert_eq!(build_group("U(3)").unwrap().roots.len(), 6);
        assert_eq!(build_group("Sp(2)").unwrap().roots.len(), 8);
        assert_eq!(build_group("Sp(3)").unwrap().roots.len(), 18);
        assert_eq!(build_group("SO(5)").unwrap().roots.len(), 8);
        assert_eq!(build_group("SO(8)").unwrap().roots.len(), 24);
        assert_eq!(build_group("G2").unwrap().roots.len(), 12);
        assert!(build_group("U(1)").unwrap().roots.is_empty());
        assert!(build_group("U(0)").is_err());
        assert!(build_group("E8").is_err());
    }

    #[test]
    fn weyl_orders() {
        let order = |s: &str| weyl_elements(&build_group(s).unwrap()).unwrap().len();
        assert_eq!(order("U(3)"), 6);
        assert_eq!(order("U(4)"), 24);
        assert_eq!(order("Sp(2)"), 8);
        assert_eq!(order("Sp(3)"), 48);
        assert_eq!(order("SO(7)"), 48);
        assert_eq!(order("SO(8)"), 192);
        assert_eq!(order("G2"), 12);
    }

    #[test]
    fn weyl_cap_is_enforced() {
        let g = build_group("U(5)").unwrap();
        let err = weyl_elements_with_cap(&g, 50).unwrap_err();
        assert!(err.to_string().contains("50"));
    }

    #[test]
    fn cosets() {
        let g = build_group("U(4)").unwrap();
        assert_eq!(coset_reps(&g, &SubgroupData::torus(&g)).unwrap().len(), 24);
        let h = SubgroupData::from_descriptor(&g, "U(2)xU(2)").unwrap();
        assert_eq!(coset_reps(&g, &h).unwrap().len(), 6);
        let g2 = build_group("G2").unwrap();
        let su3 = SubgroupData::from_descriptor(&g2, "SU(3)").unwrap();
        assert_eq!(coset_reps(&g2, &su3).unwrap().len(), 2);
    }

    #[test]
    fn complementary_g2() {
        let g2 = build_group("G2").unwrap();
        let su3 = SubgroupData::from_descriptor(&g2, "SU(3)").unwrap();
        let c: Vec<String> = complementary_roots(&g2, &su3).iter().map(|r| fmt_root(r)).collect();
        assert_eq!(c, vec!["x1", "x2", "x1+x2"]);
        let sp2 = build_group("Sp(2)").unwrap();
        let h = SubgroupData::from_descriptor(&sp2, "Sp(1)xSp(1)").unwrap();
        let c: Vec<String> = complementary_roots(&sp2, &h).iter().map(|r| fmt_root(r)).collect();
        assert_eq!(c, vec!["x1-x2", "x1+x2"]);
    }

    #[test]
    fn closed_systems() {
        let g = build_group("U(3)").unwrap();
        let v = |a: &[i64]| crate::exactalg::rational::qvec(a);
        assert!(is_closed_system(&[v(&[1, -1, 0]), v(&[0, 1, -1]), v(&[1, 0, -1])], &g));
        assert!(!is_closed_system(&[v(&[1, -1, 0]), v(&[-1, 0, 1]), v(&[0, 1, -1])], &g));
        assert!(is_closed_system(&[], &g));
    }

    #[test]
    fn signs() {
        let ord = Ordering::new(crate::exactalg::rational::qvec(&[4, 3, 2, 1]));
        let v = |a: &[i64]| crate::exactalg::rational::qvec(a);
        assert_eq!(root_sign(&v(&[1, -1, 0, 0]), &ord).unwrap(), 1);
        assert_eq!(root_sign(&v(&[-1, 1, 0, 0]), &ord).unwrap(), -1);
        assert_eq!(root_sign(&v(&[0, 2, 0, 0]), &ord).unwrap(), 1);
        assert!(root_sign(&v(&[1, 0, 0, -4]), &Ordering::new(v(&[4, 0, 0, 1]))).is_err());
    }

    #[test]
    fn rejects_non_subsystem() {
        let g = build_group("U(3)").unwrap();
        let v = |a: &[i64]| crate::exactalg::rational::qvec(a);
        assert!(SubgroupData::from_roots(&g, "bad", &[v(&[1, -1, 0]), v(&[0, 1, -1])]).is_err());
        assert!(SubgroupData::from_roots(&g, "bad", &[v(&[1, 1, 0])]).is_err());
    }

    #[test]
    fn custom_g2_needs_its_form() {
        let g = build_group("G2").unwrap();
        assert!(GroupData::from_roots("g", 2, &g.roots, None).is_err());
        assert!(GroupData::from_roots("g", 2, &g.roots, Some(g.gram.clone())).is_ok());
    }
}
