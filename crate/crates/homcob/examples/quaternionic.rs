use homcob::toricgenus::{hp_obstruction_search, restricted_genus_hp};

fn main() -> homcob::Result<()> {
    let r = restricted_genus_hp(2, "sp-flag", 2)?;
    for g in &r.g0 {
        println!("g0{:?} = {}", g.omega, g.computed);
    }
    let cp = restricted_genus_hp(2, "cp-odd", 2)?;
    if let Some(d) = cp.discrepancy {
        println!("cp-odd: {d}");
    }
    let obs = hp_obstruction_search(2)?;
    println!("{}", obs.witness());
    Ok(())
}
