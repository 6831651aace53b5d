//! The unfolded index set Ī, its GCM Ā and the HD checks.

use erskit::base_system::QebsConfig;
use erskit::unfold::build_handy;

fn main() -> erskit::Result<()> {
    let cfg = QebsConfig::from_json(r#"{"type":"D3^(2)","k":{"a0":1,"a1":1,"a2":1},"g":{"a0":"2Z+1"}}"#)?;
    let hd = build_handy(&cfg)?;
    println!("k∨ = {:?}", hd.k_vee);
    for (n, ((node, copy), row)) in hd.index.iter().zip(&hd.a).enumerate() {
        let odd = if hd.odd[n] { " odd" } else { "" };
        println!("({node},{copy}) ε={} {row:?}{odd}", hd.eps[n]);
    }
    for c in &hd.checks {
        println!("{} {}", c.axiom, if c.pass { "ok" } else { "FAIL" });
    }
    Ok(())
}
