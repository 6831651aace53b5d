//! Enumerate R(k,g) for D_3^(2) with g(α_0) = 2Z+1 on a small window.

use erskit::base_system::QebsConfig;
use erskit::roots::{generate, RootWindow};

fn main() -> erskit::Result<()> {
    let cfg = QebsConfig::from_json(r#"{"type":"D3^(2)","k":{"a0":1,"a1":1,"a2":1},"g":{"a0":"2Z+1"}}"#)?;
    let set = generate(&cfg, RootWindow::new(2, 1, 2)?)?;
    let mut rows: Vec<_> = set.roots().iter().filter(|r| set.in_window(&r.lattice())).collect();
    rows.sort_by(|a, b| a.coords.cmp(&b.coords));
    for r in &rows {
        let tag = if r.doubled { " doubled" } else { "" };
        println!("{:?} |α|²={} p={}{tag}", r.lattice(), r.orbit_key, r.parity);
    }
    println!("{} roots", rows.len());
    Ok(())
}
