//! Rank-one and rank-two classification of every node and adjacent pair.

use erskit::base_system::QebsConfig;
use erskit::roots::{classify_rank1, classify_rank2, rank2_pairs, RootWindow};

fn main() -> erskit::Result<()> {
    let cfg = QebsConfig::from_json(r#"{"type":"D3^(2)","k":{"a0":1,"a1":2,"a2":1},"g":{"a0":"4Z"}}"#)?;
    let w = RootWindow::new(6, 6, 2)?;
    for i in 0..cfg.nodes() {
        let r = classify_rank1(&cfg, i, w)?;
        println!("a{i}: case {} name {} p={} ok={}", r.case, r.name, r.parity, r.ok());
    }
    for (a, b) in rank2_pairs(&cfg) {
        match classify_rank2(&cfg, a, b, w) {
            Ok(r) => println!("(a{a},a{b}): case {} γ = {} = {:?} name {} ok={}", r.case, r.gamma_word, r.gamma, r.name, r.ok()),
            Err(e) => println!("(a{a},a{b}): {e}"),
        }
    }
    Ok(())
}
