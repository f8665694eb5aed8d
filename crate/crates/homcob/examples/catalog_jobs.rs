use homcob::catalog::catalog;
use homcob::cli::{reproduce, run, JobSpec, Op};

fn main() -> homcob::Result<()> {
    for e in catalog() {
        println!("{:<12} {} / {}", e.name, e.group, e.subgroup);
    }
    let mut job = JobSpec::on(Op::S, "G52");
    job.omega = Some("0,0,0,0,0,1".into());
    println!("{}", serde_json::to_string_pretty(&run(&job)?.to_json()).unwrap_or_default());
    print!("{}", reproduce(Some("structures"))?.to_plain());
    Ok(())
}
