use homcob::structures::Structure;
use homcob::toricgenus::{chern_dold_genus, twisted_product, Fibration};

fn main() -> homcob::Result<()> {
    let fib = Fibration::from_specs("U(3)", "T1xU(2)", "T")?;
    let fj = fib.fiber.standard_structure()?;
    let bj = fib.base.standard_structure()?;
    let tw = twisted_product(&fib, &fj, &bj.signs, 3)?;
    let direct = chern_dold_genus(&fib.total, &Structure::Invariant(fib.combined(&fj, &bj)?), 3)?;
    println!("twisted: {}", tw.class);
    println!("direct:  {}", direct.class);
    println!("forms agree: {}", tw.form == direct.form);
    Ok(())
}
