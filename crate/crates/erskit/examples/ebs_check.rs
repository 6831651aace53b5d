//! The EBS axioms hold for a QEBS and fail, with a witness, once KG3 breaks.

use erskit::base_system::{validate_qebs, GClass, QebsConfig};
use erskit::roots::{check_ebs, generate_pebs, RootWindow};

fn main() -> erskit::Result<()> {
    let good = QebsConfig::trivial("D3^(2)".parse()?)?.with_g(0, GClass::TwoZPlusOne);
    let bad = good.with_k(vec![1, 2, 1])?;
    let w = RootWindow::new(4, 4, 2)?;
    for (name, cfg) in [("valid", &good), ("k(a1) = 2", &bad)] {
        let q = validate_qebs(cfg);
        let rep = check_ebs(&generate_pebs(cfg, w)?);
        println!("{name}: QEBS first failure {:?}, EBS pass {}", q.first_failure().map(|f| f.axiom.clone()), rep.pass);
        if let Some(wit) = rep.witness() {
            println!("  witness: {wit:?}");
        }
    }
    Ok(())
}
