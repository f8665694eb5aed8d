use homcob::rootdata::{build_group, coset_reps, weyl_elements, SubgroupData};
use homcob::structures::{enumerate_structures, find_su_structures, is_integrable, HomogeneousSpace};

fn main() -> homcob::Result<()> {
    let g = build_group("U(4)")?;
    let h = SubgroupData::from_descriptor(&g, "U(2)xU(2)")?;
    println!("|W(U(4))| = {}, coset reps: {}", weyl_elements(&g)?.len(), coset_reps(&g, &h)?.len());

    let flag = HomogeneousSpace::from_specs("U3-flag", "U(3)", "T")?;
    for j in enumerate_structures(&flag)? {
        println!("{}  integrable: {}", j.to_text(&flag), is_integrable(&flag, &j)?);
    }
    for j in find_su_structures(&flag)? {
        println!("SU-structure {}", j.to_text(&flag));
    }
    Ok(())
}
