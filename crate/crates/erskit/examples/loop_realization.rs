//! Every SR relation vanishes in the loop realization; print κ and counts.

use erskit::base_system::QebsConfig;
use erskit::unfold::verify_pi;

fn main() -> erskit::Result<()> {
    let configs = [
        QebsConfig::trivial("A2^(1)".parse()?)?,
        QebsConfig::from_json(r#"{"type":"D3^(2)","k":{"a0":1,"a1":1,"a2":1},"g":{"a0":"Z"}}"#)?,
    ];
    for cfg in configs {
        let rep = verify_pi(&cfg, None)?;
        println!(
            "{}: height {}, {} relations, κ = {}, pass {}",
            rep.affine_type, rep.height, rep.relations, rep.kappa, rep.pass
        );
        for (tag, n) in &rep.counts {
            println!("  {tag}: {n}");
        }
    }
    Ok(())
}
