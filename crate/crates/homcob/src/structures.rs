//! Homogeneous spaces, isotropy summands, invariant and stable almost complex structures.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::exactalg::rational::{is_integer, qvec_to_json, Q};
use crate::rootdata::{
    self, add, chamber_containing, complementary_roots, fmt_root, group_from_json, is_closed_system, mat_mul,
    multiple_of, neg, parse_vec_list, sub, GroupData, Matrix, QVec, SubgroupData, WeylElement,
};

pub const DEFAULT_STRUCTURE_CAP: usize = 20;

/// Roots of one isotropy summand: `(comp-root index, sign relative to the summand orientation)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub members: Vec<(usize, i8)>,
    /// The summand contains both `β` and `−β`: it carries no invariant complex structure.
    pub self_conjugate: bool,
}

#[derive(Clone, Debug)]
pub struct HomogeneousSpace {
    pub label: String,
    pub g: GroupData,
    pub h: SubgroupData,
    pub comp_roots: Vec<QVec>,
    pub reps: Vec<WeylElement>,
    pub wh: Vec<WeylElement>,
    pub euler: usize,
    pub n: usize,
    pub summands: Vec<Summand>,
    coset_of: HashMap<Matrix, usize>,
}

impl HomogeneousSpace {
    pub fn new(label: &str, g: GroupData, h: SubgroupData) -> Result<HomogeneousSpace> {
        let wg = rootdata::weyl_elements(&g)?;
        let wh = h.weyl_elements(&g)?;
        let reps = rootdata::coset_reps_from(&wg, &wh)?;
        let comp_roots = complementary_roots(&g, &h);
        let mut coset_of = HashMap::new();
        for (i, r) in reps.iter().enumerate() {
            for u in &wh {
                coset_of.insert(mat_mul(&r.matrix, &u.matrix), i);
            }
        }
        let summands = summands_of(&comp_roots, &h);
        Ok(HomogeneousSpace {
            label: label.to_string(),
            euler: reps.len(),
            n: comp_roots.len(),
            g,
            h,
            comp_roots,
            reps,
            wh,
            summands,
            coset_of,
        })
    }

    /// `G/H` from descriptors, e.g. `("U(4)", "U(2)xU(2)")`.
    pub fn from_specs(label: &str, group: &str, subgroup: &str) -> Result<HomogeneousSpace> {
        let g = rootdata::build_group(group)?;
        let h = SubgroupData::from_descriptor(&g, subgroup)?;
        HomogeneousSpace::new(label, g, h)
    }

    /// The JSON space format `{ "group": …, "subgroup_roots": [[…]] }`.
    pub fn from_json(label: &str, v: &Value) -> Result<HomogeneousSpace> {
        let g = group_from_json(v.get("group").ok_or_else(|| Error::Invalid("space needs \"group\"".into()))?)?;
        let h = match (v.get("subgroup_roots"), v.get("subgroup")) {
            (Some(r), _) => SubgroupData::from_roots(&g, "H", &parse_vec_list(r)?)?,
            (None, Some(Value::String(d))) => SubgroupData::from_descriptor(&g, d)?,
            _ => SubgroupData::torus(&g),
        };
        HomogeneousSpace::new(label, g, h)
    }

    pub fn to_json(&self) -> Value {
        let group = match rootdata::build_group(&self.g.label) {
            Ok(b) if b == self.g => Value::String(self.g.label.clone()),
            _ => self.g.to_json(),
        };
        json!({
            "group": group,
            "subgroup_roots": self.h.positive.iter().map(|r| qvec_to_json(r)).collect::<Vec<_>>(),
        })
    }

    pub fn coord_dim(&self) -> usize {
        self.g.coordinate_dim
    }

    /// Index of the coset `xW_H`.
    pub fn coset_index(&self, m: &Matrix) -> Option<usize> {
        self.coset_of.get(m).copied()
    }

    pub fn admits_invariant_structure(&self) -> bool {
        self.summands.iter().all(|s| !s.self_conjugate)
    }

    pub fn in_wh(&self, m: &Matrix) -> bool {
        self.wh.iter().any(|u| &u.matrix == m)
    }

    pub fn standard_structure(&self) -> Result<InvariantStructure> {
        InvariantStructure::from_summand_signs(self, &vec![1; self.summands.len()])
    }
}

fn summands_of(comp: &[QVec], h: &SubgroupData) -> Vec<Summand> {
    let n = comp.len();
    let node = |v: &QVec| -> Option<usize> {
        let nv = neg(v);
        comp.iter().position(|c| c == v).map(|i| 2 * i).or_else(|| comp.iter().position(|c| *c == nv).map(|i| 2 * i + 1))
    };
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nxt = p[y];
            p[y] = r;
            y = nxt;
        }
        r
    }
    for k in 0..2 * n {
        let v = if k % 2 == 0 { comp[k / 2].clone() } else { neg(&comp[k / 2]) };
        for gamma in &h.roots {
            if let Some(m) = node(&add(&v, gamma)) {
                let (a, b) = (find(&mut parent, k), find(&mut parent, m));
                parent[a] = b;
            }
        }
    }
    let mut out: Vec<Summand> = Vec::new();
    let mut done = vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        let root = find(&mut parent, 2 * i);
        let mut members = Vec::new();
        let mut self_conj = false;
        for j in 0..n {
            let plus = find(&mut parent, 2 * j) == root;
            let minus = find(&mut parent, 2 * j + 1) == root;
            if plus && minus {
                self_conj = true;
            }
            if plus {
                members.push((j, 1));
                done[j] = true;
            } else if minus {
                members.push((j, -1));
                done[j] = true;
            }
        }
        out.push(Summand { members, self_conjugate: self_conj });
    }
    out
}

/// Partition of the complementary roots into isotropy summands.
pub fn isotropy_summands(space: &HomogeneousSpace) -> &[Summand] {
    &space.summands
}

/// Orbits of the complementary roots under `W_H`, up to sign (used as a cross-check of the summands).
pub fn wh_orbits(space: &HomogeneousSpace) -> Vec<Vec<usize>> {
    let mut seen = vec![false; space.n];
    let mut out = Vec::new();
    for i in 0..space.n {
        if seen[i] {
            continue;
        }
        let mut orbit = Vec::new();
        for u in &space.wh {
            let img = u.apply(&space.comp_roots[i]);
            let ni = neg(&img);
            if let Some(j) = space.comp_roots.iter().position(|c| *c == img || *c == ni) {
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantStructure {
    /// `ε_i` for each complementary root.
    pub signs: Vec<i8>,
}

impl InvariantStructure {
    pub fn from_summand_signs(space: &HomogeneousSpace, s: &[i8]) -> Result<InvariantStructure> {
        if !space.admits_invariant_structure() {
            return invalid(format!("{} admits no invariant almost complex structure", space.label));
        }
        if s.len() != space.summands.len() {
            return invalid(format!("expected {} summand signs, got {}", space.summands.len(), s.len()));
        }
        let mut signs = vec![0i8; space.n];
        for (sm, &e) in space.summands.iter().zip(s) {
            if e != 1 && e != -1 {
                return invalid("signs must be ±1");
            }
            for &(i, r) in &sm.members {
                signs[i] = e * r;
            }
        }
        Ok(InvariantStructure { signs })
    }

    /// Per-root signs, validated to be constant on every summand.
    pub fn from_root_signs(space: &HomogeneousSpace, signs: Vec<i8>) -> Result<InvariantStructure> {
        if signs.len() != space.n {
            return invalid(format!("expected {} root signs, got {}", space.n, signs.len()));
        }
        for sm in &space.summands {
            let (i0, r0) = sm.members[0];
            let e = signs[i0] * r0;
            if sm.members.iter().any(|&(i, r)| signs[i] * r != e) {
                return invalid("root signs are not invariant under the isotropy action (W_H)");
            }
        }
        Ok(InvariantStructure { signs })
    }

    /// Sign string over the canonical summand order, e.g. `"++-"`.
    pub fn parse(space: &HomogeneousSpace, text: &str) -> Result<InvariantStructure> {
        let s: Vec<i8> = text
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => invalid(format!("bad structure character '{c}' (use + and -)")),
            })
            .collect::<Result<_>>()?;
        InvariantStructure::from_summand_signs(space, &s)
    }

    pub fn summand_signs(&self, space: &HomogeneousSpace) -> Vec<i8> {
        space.summands.iter().map(|sm| self.signs[sm.members[0].0] * sm.members[0].1).collect()
    }

    pub fn to_text(&self, space: &HomogeneousSpace) -> String {
        self.summand_signs(space).iter().map(|&e| if e > 0 { '+' } else { '-' }).collect()
    }

    /// The roots `ε_i α_i`.
    pub fn roots(&self, space: &HomogeneousSpace) -> Vec<QVec> {
        space
            .comp_roots
            .iter()
            .zip(&self.signs)
            .map(|(a, &e)| if e > 0 { a.clone() } else { neg(a) })
            .collect()
    }

    pub fn conjugate(&self) -> InvariantStructure {
        InvariantStructure { signs: self.signs.iter().map(|e| -e).collect() }
    }
}

pub fn enumerate_structures(space: &HomogeneousSpace) -> Result<Vec<InvariantStructure>> {
    enumerate_structures_with_cap(space, DEFAULT_STRUCTURE_CAP)
}

pub fn enumerate_structures_with_cap(space: &HomogeneousSpace, cap: usize) -> Result<Vec<InvariantStructure>> {
    if !space.admits_invariant_structure() {
        return Ok(vec![]);
    }
    let s = space.summands.len();
    if s > cap {
        return Err(Error::Limit(format!("{s} isotropy summands exceed the structure cap of {cap}")));
    }
    (0..1u64 << s)
        .map(|m| {
            let signs: Vec<i8> = (0..s).map(|k| if m >> (s - 1 - k) & 1 == 1 { -1 } else { 1 }).collect();
            InvariantStructure::from_summand_signs(space, &signs)
        })
        .collect()
}

/// `c₁ = Σ ε_i α_i`.
pub fn first_chern(space: &HomogeneousSpace, j: &InvariantStructure) -> QVec {
    j.roots(space).iter().fold(vec![Q::zero(); space.coord_dim()], |acc, r| add(&acc, r))
}

pub fn find_su_structures(space: &HomogeneousSpace) -> Result<Vec<InvariantStructure>> {
    Ok(enumerate_structures(space)?
        .into_iter()
        .filter(|j| first_chern(space, j).iter().all(|x| x.is_zero()))
        .collect())
}

/// Every coordinate of `c₁` in the canonical integral basis is divisible by `n`.
pub fn c1_divisibility(space: &HomogeneousSpace, j: &InvariantStructure, n: u64) -> Result<bool> {
    if n == 0 {
        return invalid("N must be positive");
    }
    let nq = Q::from_integer(n.into());
    Ok(first_chern(space, j).iter().all(|c| is_integer(c) && is_integer(&(c / &nq))))
}

pub fn is_integrable(space: &HomogeneousSpace, j: &InvariantStructure) -> Result<bool> {
    let psi = j.roots(space);
    if !is_closed_system(&psi, &space.g) {
        return Ok(false);
    }
    Ok(chamber_containing(&space.g, &psi)?.is_some())
}

/// A stable complex structure given by per-fixed-point sign tables over a reference structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableStructure {
    pub base: InvariantStructure,
    /// `eps[c][j] = ε_j(w_c)` relative to the space's coset representatives.
    pub eps: Vec<Vec<i8>>,
    pub global: i8,
}

impl StableStructure {
    pub fn from_invariant(space: &HomogeneousSpace, j: &InvariantStructure) -> StableStructure {
        StableStructure { base: j.clone(), eps: vec![vec![1; space.n]; space.euler], global: 1 }
    }

    pub fn new(space: &HomogeneousSpace, base: InvariantStructure, eps: Vec<Vec<i8>>, global: i8) -> Result<StableStructure> {
        if eps.len() != space.euler || eps.iter().any(|r| r.len() != space.n) {
            return invalid(format!("sign table must be {} × {}", space.euler, space.n));
        }
        if eps.iter().flatten().chain(std::iter::once(&global)).any(|&e| e != 1 && e != -1) {
            return invalid("stable-structure signs must be ±1");
        }
        Ok(StableStructure { base, eps, global })
    }

    /// Sign tables given against other coset representatives `t_c`; slots are matched by weight.
    pub fn from_reference(
        space: &HomogeneousSpace,
        base: InvariantStructure,
        reference: &[(Matrix, Vec<i8>)],
        global: i8,
    ) -> Result<StableStructure> {
        let beta = base.roots(space);
        let mut eps = vec![vec![0i8; space.n]; space.euler];
        for (t, signs) in reference {
            let c = space.coset_index(t).ok_or_else(|| Error::Invalid("reference element is not in W_G".into()))?;
            let w = &space.reps[c];
            let tref: Vec<QVec> = beta.iter().map(|b| rootdata::mat_vec(t, b)).collect();
            for (k, b) in beta.iter().enumerate() {
                let wb = w.apply(b);
                let jdx = tref
                    .iter()
                    .position(|x| *x == wb)
                    .ok_or_else(|| Error::Invalid("reference representative does not match the structure".into()))?;
                eps[c][k] = signs[jdx];
            }
        }
        if eps.iter().flatten().any(|&e| e == 0) {
            return invalid("reference table does not cover every fixed point");
        }
        StableStructure::new(space, base, eps, global)
    }

    pub fn weights(&self, space: &HomogeneousSpace, c: usize) -> Vec<QVec> {
        let w = &space.reps[c];
        self.base
            .roots(space)
            .iter()
            .zip(&self.eps[c])
            .map(|(b, &e)| {
                let v = w.apply(b);
                if e > 0 { v } else { neg(&v) }
            })
            .collect()
    }

    /// `sign(w) = ε·Π ε_i(w)`.
    pub fn sign(&self, c: usize) -> i8 {
        self.eps[c].iter().fold(self.global, |acc, e| acc * e)
    }

    pub fn is_invariant(&self) -> bool {
        self.global == 1 && self.eps.iter().flatten().all(|&e| e == 1)
    }

    pub fn conjugate(&self, space: &HomogeneousSpace) -> StableStructure {
        let g = if space.n % 2 == 1 { -self.global } else { self.global };
        StableStructure { base: self.base.conjugate(), eps: self.eps.clone(), global: g }
    }
}

/// Either kind of structure, as accepted by the genus computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Invariant(InvariantStructure),
    Stable(StableStructure),
}

impl Structure {
    pub fn as_stable(&self, space: &HomogeneousSpace) -> StableStructure {
        match self {
            Structure::Invariant(j) => StableStructure::from_invariant(space, j),
            Structure::Stable(s) => s.clone(),
        }
    }

    pub fn label(&self, space: &HomogeneousSpace) -> String {
        match self {
            Structure::Invariant(j) => j.to_text(space),
            Structure::Stable(s) => format!("stable[{}]", s.base.to_text(space)),
        }
    }
}

impl From<InvariantStructure> for Structure {
    fn from(j: InvariantStructure) -> Structure {
        Structure::Invariant(j)
    }
}

impl From<StableStructure> for Structure {
    fn from(s: StableStructure) -> Structure {
        Structure::Stable(s)
    }
}

/// How the pairing element acts on one structure root `β_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightGroup {
    /// `tβ_j = β_j`.
    Fixed,
    /// `tβ_j = −β_j`.
    Flipped,
    /// `tβ_j = ±β_i`, `i ≠ j`; `flipped` when the sign is minus, then `β_j + β_i = k·α`.
    Exchanged { partner: usize, flipped: bool, multiple: Option<Q> },
    /// `tβ_j` leaves the weight set; `β_j − tβ_j = k·α`.
    Escaped { multiple: Option<Q> },
}

#[derive(Clone, Debug)]
pub struct PairingRow {
    pub coset: usize,
    pub partner: usize,
    pub weights: Vec<QVec>,
    pub partner_weights: Vec<QVec>,
}

#[derive(Clone, Debug)]
pub struct PairingReport {
    pub alpha: QVec,
    pub groups: Vec<WeightGroup>,
    /// `−w(εα)` occurs among the weights at `w̃`.
    pub minus_alpha_present: bool,
    pub sign_flips: usize,
    /// Weights at `w` and `w̃` differ only by signs.
    pub only_signs: bool,
    pub odd: bool,
    /// Every flipped exchanged pair and every escaped weight differs by an integer multiple of `α`.
    pub multiples_ok: bool,
    /// The pairing `w ↦ wt` is a well-defined involution on cosets.
    pub coset_involution: bool,
    pub rows: Vec<PairingRow>,
}

fn classify(beta: &[QVec], t: &Matrix, alpha: &[Q]) -> Vec<WeightGroup> {
    beta.iter()
        .map(|b| {
            let tb = rootdata::mat_vec(t, b);
            if tb == *b {
                return WeightGroup::Fixed;
            }
            if tb == neg(b) {
                return WeightGroup::Flipped;
            }
            if let Some(i) = beta.iter().position(|x| *x == tb) {
                return WeightGroup::Exchanged { partner: i, flipped: false, multiple: None };
            }
            let ntb = neg(&tb);
            if let Some(i) = beta.iter().position(|x| *x == ntb) {
                return WeightGroup::Exchanged { partner: i, flipped: true, multiple: multiple_of(&add(b, &beta[i]), alpha) };
            }
            WeightGroup::Escaped { multiple: multiple_of(&sub(b, &tb), alpha) }
        })
        .collect()
}

fn is_int_multiple(m: &Option<Q>) -> bool {
    m.as_ref().is_some_and(is_integer)
}

/// Pairs each coset `w` with `w·t`, `t` the reflection in the complementary root `alpha`.
pub fn verify_pairing(space: &HomogeneousSpace, j: &InvariantStructure, alpha: &[Q]) -> Result<PairingReport> {
    let na = neg(alpha);
    if !space.comp_roots.iter().any(|c| c.as_slice() == alpha || *c == na) {
        if space.h.roots.iter().any(|r| r.as_slice() == alpha) {
            return invalid(format!("reflection in {} lies in W_H, not in the coset quotient", fmt_root(alpha)));
        }
        return invalid(format!("{} is not a complementary root", fmt_root(alpha)));
    }
    let t = space.g.reflection(alpha);
    let beta = j.roots(space);
    let groups = classify(&beta, &t, alpha);
    Ok(report_from(space, &beta, &t, alpha, groups))
}

fn report_from(space: &HomogeneousSpace, beta: &[QVec], t: &Matrix, alpha: &[Q], groups: Vec<WeightGroup>) -> PairingReport {
    let only_signs = !groups.iter().any(|g| matches!(g, WeightGroup::Escaped { .. }));
    let sign_flips = groups
        .iter()
        .filter(|g| matches!(g, WeightGroup::Flipped | WeightGroup::Exchanged { flipped: true, .. }))
        .count();
    let multiples_ok = groups.iter().all(|g| match g {
        WeightGroup::Exchanged { flipped: true, multiple, .. } | WeightGroup::Escaped { multiple } => is_int_multiple(multiple),
        _ => true,
    });
    let ea = beta.iter().find(|b| multiple_of(b, alpha).is_some()).cloned();
    let minus_alpha_present = ea.as_ref().is_some_and(|ea| {
        let target = neg(ea);
        beta.iter().any(|b| rootdata::mat_vec(t, b) == target)
    });
    let coset_involution = normalizes(space, t);
    let rows = space
        .reps
        .iter()
        .enumerate()
        .map(|(c, w)| {
            let wt = mat_mul(&w.matrix, t);
            PairingRow {
                coset: c,
                partner: space.coset_index(&wt).unwrap_or(usize::MAX),
                weights: beta.iter().map(|b| w.apply(b)).collect(),
                partner_weights: beta.iter().map(|b| rootdata::mat_vec(&wt, b)).collect(),
            }
        })
        .collect();
    PairingReport {
        alpha: alpha.to_vec(),
        groups,
        minus_alpha_present,
        sign_flips,
        only_signs,
        odd: only_signs && sign_flips % 2 == 1,
        multiples_ok,
        coset_involution,
        rows,
    }
}

/// `t ∉ W_H`, `tW_Ht⁻¹ = W_H` and `t² ∈ W_H`.
fn normalizes(space: &HomogeneousSpace, t: &Matrix) -> bool {
    if space.in_wh(t) {
        return false;
    }
    let Some(tinv) = rootdata::invert(t) else { return false };
    let whs: HashSet<&Matrix> = space.wh.iter().map(|u| &u.matrix).collect();
    space.wh.iter().all(|u| whs.contains(&mat_mul(&mat_mul(t, &u.matrix), &tinv))) && whs.contains(&mat_mul(t, t))
}

/// A Weyl element `t` pairing cosets `w ↔ wt` so that weights differ by an odd number of signs.
pub fn find_odd_pairing(space: &HomogeneousSpace, j: &InvariantStructure) -> Option<(WeylElement, PairingReport)> {
    let beta = j.roots(space);
    let mut candidates: Vec<WeylElement> = Vec::new();
    for a in &space.comp_roots {
        candidates.push(WeylElement { matrix: space.g.reflection(a), word: vec![] });
    }
    if let Ok(all) = rootdata::weyl_elements(&space.g) {
        candidates.extend(all);
    }
    let zero_alpha = vec![Q::zero(); space.coord_dim()];
    for t in candidates {
        if !normalizes(space, &t.matrix) {
            continue;
        }
        let alpha = space
            .comp_roots
            .iter()
            .find(|a| rootdata::mat_vec(&t.matrix, a) == neg(a))
            .cloned()
            .unwrap_or_else(|| zero_alpha.clone());
        let groups = classify(&beta, &t.matrix, &alpha);
        let report = report_from(space, &beta, &t.matrix, &alpha, groups);
        if report.odd {
            return Some((t, report));
        }
    }
    None
}

/// Weyl element as a plain matrix from a 1-based permutation in one-line notation.
pub fn permutation_matrix(one_line: &[usize]) -> Matrix {
    let n = one_line.len();
    let mut m = vec![vec![Q::zero(); n]; n];
    for (c, &r) in one_line.iter().enumerate() {
        m[r - 1][c] = Q::one();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{qvec, Q};

    fn space(g: &str, h: &str) -> HomogeneousSpace {
        HomogeneousSpace::from_specs("t", g, h).unwrap()
    }

    #[test]
    fn summand_counts() {
        assert_eq!(space("U(4)", "T").summands.len(), 6);
        assert_eq!(space("U(6)", "U(2)xU(2)xU(2)").summands.len(), 3);
        assert_eq!(space("Sp(2)", "T").summands.len(), 4);
        assert_eq!(space("Sp(3)", "T").summands.len(), 9);
        assert_eq!(space("G2", "SU(3)").summands.len(), 1);
    }

    #[test]
    fn structure_counts() {
        assert_eq!(enumerate_structures(&space("U(2)", "T")).unwrap().len(), 2);
        assert_eq!(enumerate_structures(&space("U(4)", "U(2)xU(2)")).unwrap().len(), 2);
        assert_eq!(enumerate_structures(&space("U(3)", "T")).unwrap().len(), 8);
    }

    #[test]
    fn quaternionic_spaces_have_none() {
        let hp1 = space("Sp(2)", "Sp(1)xSp(1)");
        assert!(!hp1.admits_invariant_structure());
        assert!(enumerate_structures(&hp1).unwrap().is_empty());
        let hp2 = space("Sp(3)", "Sp(1)xSp(2)");
        assert!(!hp2.admits_invariant_structure());
    }

    #[test]
    fn chern_classes() {
        let s = space("U(3)", "T");
        let std = s.standard_structure().unwrap();
        assert_eq!(first_chern(&s, &std), qvec(&[2, 0, -2]));
        assert!(c1_divisibility(&s, &std, 2).unwrap());
        assert!(!c1_divisibility(&s, &std, 3).unwrap());
        // ε_ij = (−1)^{i+j+1}: x1−x2, x3−x1, x2−x3
        let su = InvariantStructure::from_root_signs(&s, vec![1, -1, 1]).unwrap();
        assert!(first_chern(&s, &su).iter().all(|x| *x == Q::from_integer(0.into())));
        assert!(c1_divisibility(&s, &su, 7).unwrap());
        let s6 = space("G2", "SU(3)");
        let j = InvariantStructure::parse(&s6, "+").unwrap();
        assert_eq!(j.signs, vec![1, 1, -1]);
        assert!(first_chern(&s6, &j).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn integrability() {
        let s = space("U(3)", "T");
        assert!(is_integrable(&s, &s.standard_structure().unwrap()).unwrap());
        let su = InvariantStructure::from_root_signs(&s, vec![1, -1, 1]).unwrap();
        assert!(!is_integrable(&s, &su).unwrap());
        let s6 = space("G2", "SU(3)");
        assert!(!is_integrable(&s6, &s6.standard_structure().unwrap()).unwrap());
    }

    #[test]
    fn su_inventory() {
        assert!(find_su_structures(&space("U(4)", "T")).unwrap().is_empty());
        assert!(find_su_structures(&space("U(2)", "T")).unwrap().is_empty());
        assert!(find_su_structures(&space("U(4)", "T2xU(2)")).unwrap().is_empty());
        assert_eq!(find_su_structures(&space("U(3)", "T")).unwrap().len(), 2);
    }

    #[test]
    fn flag_pairing_is_odd() {
        let s = space("U(3)", "T");
        for j in enumerate_structures(&s).unwrap() {
            let r = verify_pairing(&s, &j, &qvec(&[1, -1, 0])).unwrap();
            assert!(r.odd && r.minus_alpha_present && r.multiples_ok && r.coset_involution);
        }
    }

    #[test]
    fn cp2_pairing_rows() {
        let s = space("U(3)", "T1xU(2)");
        let j = s.standard_structure().unwrap();
        let r = verify_pairing(&s, &j, &qvec(&[1, -1, 0])).unwrap();
        assert!(r.minus_alpha_present);
        assert_eq!(r.rows[0].partner, s.coset_index(&permutation_matrix(&[2, 1, 3])).unwrap());
    }

    #[test]
    fn pairing_rejects_subgroup_root() {
        let s = space("U(4)", "U(2)xU(2)");
        let j = s.standard_structure().unwrap();
        assert!(verify_pairing(&s, &j, &qvec(&[1, -1, 0, 0])).is_err());
        let r = verify_pairing(&s, &j, &qvec(&[1, 0, -1, 0])).unwrap();
        assert!(r.multiples_ok);
    }
}
