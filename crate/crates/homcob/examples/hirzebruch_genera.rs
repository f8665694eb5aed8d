use homcob::catalog::lookup;
use homcob::hirzebruch::{chi_y, generic_ordering, signature, todd};

fn main() -> homcob::Result<()> {
    let e = lookup("CP3")?;
    let s = e.space()?;
    let ord = generic_ordering(&s);
    for p in &e.presets {
        let st = p.build(&s)?;
        println!("{:<18} chi_y = {:<20} Td = {}", p.name, chi_y(&s, &st, &ord)?.to_string(), todd(&s, &st)?);
    }
    for name in ["G42", "G622", "U4-flag"] {
        let s = lookup(name)?.space()?;
        let st = s.standard_structure()?.into();
        println!("signature({name}) = {}", signature(&s, &st)?);
    }
    Ok(())
}
