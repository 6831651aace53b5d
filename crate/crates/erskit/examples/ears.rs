//! (X, S, L, E) for D_3^(2), in the B_l and BC_l cases.

use erskit::base_system::{GClass, QebsConfig};
use erskit::roots::{ears_data, RootWindow};

fn main() -> erskit::Result<()> {
    let b = QebsConfig::trivial("D3^(2)".parse()?)?;
    let w = RootWindow::new(4, 4, 2)?;
    for cfg in [b.clone(), b.with_g(0, GClass::TwoZPlusOne)] {
        let d = ears_data(&cfg, w)?;
        println!("X = {}", d.x);
        println!("  S = {:?}", d.s.parts);
        println!("  L = {:?}", d.l.parts);
        println!("  E = {:?}", d.e.parts);
        println!("  agrees with R(k,g) on {} roots: {}", d.compared, d.window_matches);
    }
    Ok(())
}
