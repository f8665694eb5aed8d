//! Built-in spaces with named structure presets.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::rootdata::{identity, Matrix};
use crate::structures::{
    find_su_structures, permutation_matrix, HomogeneousSpace, InvariantStructure, StableStructure, Structure,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresetKind {
    /// Sign string over the summand order.
    Summands(String),
    /// The first structure with vanishing first Chern class.
    Su,
    /// Stable structure on `ℂPⁿ = U(n+1)/U(n)×U(1)` from signs `σ_1..σ_{n+1}` on the summands of
    /// `T ⊕ ℂ = ⊕ Hom(L, ℂ_i)`.
    Projective(Vec<i8>),
}

#[derive(Clone, Debug)]
pub struct Preset {
    pub name: String,
    pub kind: PresetKind,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: String,
    pub subgroup: String,
    pub presets: Vec<Preset>,
    pub provenance: String,
    /// Set when the space carries no invariant almost complex structure.
    pub obstruction: Option<String>,
}

fn preset(name: &str, kind: PresetKind, note: &str) -> Preset {
    Preset { name: name.into(), kind, note: note.into() }
}

fn entry(name: &str, group: &str, subgroup: &str, provenance: &str, presets: Vec<Preset>) -> CatalogEntry {
    let mut p = vec![preset("standard", PresetKind::Summands(String::new()), "all summand signs +")];
    p.extend(presets);
    CatalogEntry {
        name: name.into(),
        group: group.into(),
        subgroup: subgroup.into(),
        presets: p,
        provenance: provenance.into(),
        obstruction: None,
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    use PresetKind::*;
    let su = || vec![preset("su", Su, "first structure with c1 = 0")];
    let mut out = vec![
        entry("S6", "G2", "SU(3)", "six-sphere, roots x1, x2, -x1-x2; SU-manifold", vec![]),
        entry("G2-flag", "G2", "T", "total space of S6 -> fibration with fiber SU(3)/T^2", vec![]),
        entry("CP1", "U(2)", "T", "projective line", vec![]),
        entry("U2-flag", "U(2)", "T", "flag manifold U(2)/T^2", vec![]),
        entry("CP2", "U(3)", "T1xU(2)", "projective plane, roots x1-x2, x1-x3", vec![]),
        entry(
            "CP3",
            "U(4)",
            "U(3)xT1",
            "projective space, roots x1-x4, x2-x4, x3-x4; stable structures from sign relations eps_i(w)",
            vec![
                preset("cp3-standard", Projective(vec![1, 1, 1, 1]), "eps_1(0)=eps_2(0)=eps_3(0)=eps_1(1)=1"),
                preset("cp3-e11-minus", Projective(vec![1, 1, 1, -1]), "eps_1(1)=-1, chi_y = y^2 - y"),
                preset("cp3-e30-minus", Projective(vec![1, 1, -1, 1]), "eps_3(0)=-1, chi_y = y^2 - y"),
                preset("cp3-e30-e11-minus", Projective(vec![1, 1, -1, -1]), "eps_3(0)=eps_1(1)=-1, chi_y = 0"),
            ],
        ),
        entry("U3-flag", "U(3)", "T", "flag manifold; SU-structure eps_ij = (-1)^(i+j+1)", su()),
        entry("U4-flag", "U(4)", "T", "flag manifold; no SU-structure", vec![]),
        entry("U5-flag", "U(5)", "T", "flag manifold; SU-structure eps_ij = (-1)^(i+j+1)", su()),
        entry("G42", "U(4)", "U(2)xU(2)", "Grassmannian G(4,2), two structures", vec![]),
        entry("G52", "U(5)", "U(2)xU(3)", "Grassmannian G(5,2)", vec![]),
        entry("G622", "U(6)", "U(2)xU(2)xU(2)", "3-symmetric space U(6)/U(2)^3, 8 structures", vec![]),
        entry("U3/U1^3", "U(3)", "U(1)xU(1)xU(1)", "3-symmetric space U(3m)/U(m)^3 with m = 1", su()),
        entry("U4/T2xU2", "U(4)", "T2xU(2)", "generalized flag manifold U(4)/(T^2 x U(2))", vec![]),
        entry("Sp2-flag", "Sp(2)", "T", "symplectic flag manifold, 4 summands", vec![]),
        entry("Sp2/U1xSp1", "Sp(2)", "U(1)xSp(1)", "CP3 as Sp(2)/(U(1) x Sp(1)), fibers over HP1", vec![]),
    ];
    let mut hp1 = entry("HP1", "Sp(2)", "Sp(1)xSp(1)", "quaternionic projective line", vec![]);
    hp1.presets.clear();
    hp1.obstruction = Some("no invariant structure (obstruction)".into());
    let mut hp2 = entry("HP2", "Sp(3)", "Sp(1)xSp(2)", "quaternionic projective plane", vec![]);
    hp2.presets.clear();
    hp2.obstruction = Some("no invariant structure (obstruction)".into());
    out.push(hp1);
    out.push(hp2);
    out
}

pub fn names() -> Vec<String> {
    catalog().into_iter().map(|e| e.name).collect()
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Invalid(format!("unknown catalog space '{name}' (see `homcob space list`)")))
}

impl CatalogEntry {
    pub fn space(&self) -> Result<HomogeneousSpace> {
        HomogeneousSpace::from_specs(&self.name, &self.group, &self.subgroup)
    }

    pub fn preset(&self, name: &str) -> Option<&Preset> {
        self.presets.iter().find(|p| p.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "group": self.group,
            "subgroup": self.subgroup,
            "presets": self.presets.iter().map(|p| json!({"name": p.name, "note": p.note})).collect::<Vec<_>>(),
            "provenance": self.provenance,
            "obstruction": self.obstruction,
        })
    }
}

impl Preset {
    pub fn build(&self, space: &HomogeneousSpace) -> Result<Structure> {
        match &self.kind {
            PresetKind::Summands(s) if s.is_empty() => Ok(Structure::Invariant(space.standard_structure()?)),
            PresetKind::Summands(s) => Ok(Structure::Invariant(InvariantStructure::parse(space, s)?)),
            PresetKind::Su => find_su_structures(space)?
                .into_iter()
                .next()
                .map(Structure::Invariant)
                .ok_or_else(|| Error::Invalid(format!("{} has no SU-structure", space.label))),
            PresetKind::Projective(sigma) => Ok(Structure::Stable(projective_stable(space, sigma)?)),
        }
    }
}

/// Stable structure on `U(n+1)/U(n)×U(1)`: at the point `p_k` the weights are `σ_i(x_i − x_k)`,
/// `i ≠ k`, and the orientation sign is `σ_k`.
pub fn projective_stable(space: &HomogeneousSpace, sigma: &[i8]) -> Result<StableStructure> {
    let m = space.coord_dim();
    if sigma.len() != m || space.n != m - 1 || space.euler != m {
        return invalid(format!("{} is not U({m})/U({})xU(1) or σ has the wrong length", space.label, m - 1));
    }
    let base = space.standard_structure()?;
    let beta = base.roots(space);
    // β_i = ±(x_a − x_last); record a for each slot
    let coord: Vec<usize> = beta
        .iter()
        .map(|b| (0..m - 1).find(|&a| !b[a].is_zero()).ok_or_else(|| Error::Invalid("unexpected root shape".into())))
        .collect::<Result<_>>()?;
    let mut reference: Vec<(Matrix, Vec<i8>)> = vec![(identity(m), coord.iter().map(|&a| sigma[a]).collect())];
    for k in 0..m - 1 {
        let mut p: Vec<usize> = (1..=m).collect();
        p.swap(k, m - 1);
        let signs = coord.iter().map(|&a| if a == k { sigma[m - 1] } else { sigma[a] }).collect();
        reference.push((permutation_matrix(&p), signs));
    }
    let global = sigma.iter().product();
    StableStructure::from_reference(space, base, &reference, global)
}

/// A catalog name, or a path to a JSON space file.
pub fn resolve_space(text: &str) -> Result<(HomogeneousSpace, Option<CatalogEntry>)> {
    if let Ok(e) = lookup(text) {
        return Ok((e.space()?, Some(e)));
    }
    let path = std::path::Path::new(text);
    if path.exists() {
        let raw = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {text}: {e}")))?;
        let v: Value = serde_json::from_str(&raw).map_err(|e| Error::Invalid(format!("{text}: {e}")))?;
        let label = v.get("name").and_then(Value::as_str).unwrap_or(text).to_string();
        return Ok((HomogeneousSpace::from_json(&label, &v)?, None));
    }
    invalid(format!("'{text}' is neither a catalog space nor a readable JSON file"))
}

/// `standard`, `su`, a preset name, or a sign string such as `+-+`.
pub fn resolve_structure(space: &HomogeneousSpace, entry: Option<&CatalogEntry>, text: &str) -> Result<Structure> {
    if let Some(p) = entry.and_then(|e| e.preset(text)) {
        return p.build(space);
    }
    match text {
        "standard" => Ok(Structure::Invariant(space.standard_structure()?)),
        "su" => Preset { name: "su".into(), kind: PresetKind::Su, note: String::new() }.build(space),
        s if s.chars().all(|c| c == '+' || c == '-') && !s.is_empty() => {
            Ok(Structure::Invariant(InvariantStructure::parse(space, s)?))
        }
        _ => invalid(format!("unknown structure '{text}' (standard, su, a preset name, or a sign string)")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hirzebruch::{chi_y, generic_ordering, todd};

    #[test]
    fn entries_build_and_round_trip() {
        for e in catalog() {
            let s = e.space().unwrap();
            let back = HomogeneousSpace::from_json(&e.name, &s.to_json()).unwrap();
            assert_eq!(back.comp_roots, s.comp_roots, "{}", e.name);
            assert_eq!(back.euler, s.euler);
            assert_eq!(s.admits_invariant_structure(), e.obstruction.is_none(), "{}", e.name);
            for p in &e.presets {
                p.build(&s).unwrap();
            }
        }
        for n in ["S6", "U3-flag", "G42", "Sp2-flag", "CP3", "G2-flag"] {
            lookup(n).unwrap();
        }
        assert!(lookup("HP2").unwrap().obstruction.unwrap().contains("obstruction"));
    }

    #[test]
    fn cp3_presets() {
        let e = lookup("CP3").unwrap();
        let s = e.space().unwrap();
        let ord = generic_ordering(&s);
        let text = |p: &str| chi_y(&s, &e.preset(p).unwrap().build(&s).unwrap(), &ord).unwrap().to_string();
        assert_eq!(text("cp3-standard"), "1 - y + y^2 - y^3");
        assert_eq!(text("cp3-e11-minus"), "-y + y^2");
        assert_eq!(text("cp3-e30-minus"), "-y + y^2");
        assert_eq!(text("cp3-e30-e11-minus"), "0");
        let st = e.preset("cp3-e11-minus").unwrap().build(&s).unwrap();
        assert_eq!(todd(&s, &st).unwrap(), crate::exactalg::q(0));
        match st {
            Structure::Stable(x) => assert_eq!(x.global, -1),
            _ => panic!(),
        }
    }
}
