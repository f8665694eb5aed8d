use homcob::catalog::lookup;
use homcob::structures::Structure;
use homcob::toricgenus::{chern_dold_genus, cobordism_class, s_omega_with, top_s, Method};

fn main() -> homcob::Result<()> {
    let s6 = lookup("S6")?.space()?;
    let j = Structure::Invariant(s6.standard_structure()?);
    let g = chern_dold_genus(&s6, &j, 3)?;
    println!("[S6] = {}", g.class);

    let u4 = lookup("U4-flag")?.space()?;
    let j = Structure::Invariant(u4.standard_structure()?);
    for m in [Method::Symbolic, Method::DividedDifference, Method::Evaluation] {
        let v = s_omega_with(&u4, &j, &[1, 0, 0, 0, 1, 0], m)?;
        println!("s(1,0,0,0,1,0) via {m:?}: {}", v.value);
    }
    println!("top number: {}", top_s(&u4, &j)?.value);

    let g42 = lookup("G42")?.space()?;
    let j = Structure::Invariant(g42.standard_structure()?);
    println!("[G(4,2)] = {}", cobordism_class(&g42, &j, Method::Auto)?);
    Ok(())
}
