use homcob::catalog::lookup;
use homcob::exactalg::q;
use homcob::hirzebruch::{rigidity_certify_odd, rigidity_eval, RigiditySeries};
use homcob::toricgenus::DEFAULT_SEED;

fn main() -> homcob::Result<()> {
    let f = RigiditySeries::parse("u/(1+u^2)")?;
    let g42 = lookup("G42")?.space()?;
    let j = g42.standard_structure()?.into();
    for u in [[3, 2, 1, 0], [4, 2, 1, 0]] {
        let u: Vec<_> = u.iter().map(|&x| q(x)).collect();
        println!("G42 at {:?}: {}", u.iter().map(|x| x.to_string()).collect::<Vec<_>>(), rigidity_eval(&g42, &j, &f, &u)?);
    }
    for name in ["U3-flag", "S6", "G622"] {
        let s = lookup(name)?.space()?;
        let c = rigidity_certify_odd(&s, &s.standard_structure()?.into(), &f, 3, DEFAULT_SEED)?;
        println!("{name}: {:?}", c.verdict);
    }
    Ok(())
}
