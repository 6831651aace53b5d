//! Relation counts of the three presentations and one TSR instance in LaTeX.

use erskit::base_system::QebsConfig;
use erskit::presentation::{elliptic_basis, emit_sr, emit_sr_sharp, emit_tsr};

fn main() -> erskit::Result<()> {
    let cfg = QebsConfig::trivial("B3^(1)".parse()?)?;
    for set in [emit_sr(&cfg), emit_sr_sharp(&cfg), emit_tsr(&cfg)] {
        println!("{}: {} relations {:?}", set.preset, set.relations.len(), set.counts());
    }
    let basis = elliptic_basis(&cfg);
    println!("m = {:?}, Π_max = {:?}", basis.m.iter().map(|q| q.to_string()).collect::<Vec<_>>(), basis.pi_max);
    let tsr = emit_tsr(&cfg);
    if let Some(r) = tsr.relations.iter().find(|r| r.tag == "TSR10") {
        println!("{}", r.label);
    }
    Ok(())
}
