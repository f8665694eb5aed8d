use homcob::cobordism::{basis_convert, formal_group_law, power_system, Direction};
use homcob::exactalg::{MultiPoly, Ring};

fn main() -> homcob::Result<()> {
    let fgl = formal_group_law(3)?;
    println!("F(u1,u2) = {}", fgl.law.body());
    println!("[2](u) = {}", power_system(2, &fgl).body());
    println!("[-1](u) = {}", power_system(-1, &fgl).body());

    let a = Ring::from_names(&Ring::block("a", 3));
    let s6 = MultiPoly::parse("2*a1^3 - 6*a1*a2 + 6*a3", &a)?;
    println!("[S6] in b: {}", basis_convert(&s6, Direction::AToB, 3)?);
    Ok(())
}
