//! The quantum-torus realization of A_2^(1,1) with formal and numeric q.

use erskit::ambient::Q;
use erskit::base_system::QebsConfig;
use erskit::presentation::RootSym;
use erskit::quantum_torus::{compare_q_one, verify_q, QMode, QRealization};

fn main() -> erskit::Result<()> {
    let cfg = QebsConfig::trivial("A2^(1)".parse()?)?;
    let real = QRealization::new(&cfg)?;
    for sym in [RootSym::plus(0), RootSym::plus(0).neg(), RootSym::plus_star(0), RootSym::plus_star(0).neg()] {
        println!("{} ↦ {}", sym.id(), real.root_image(&sym));
    }
    let formal = verify_q(&cfg, QMode::Formal)?;
    println!("formal q: {} relations, q-modified {:?}, pass {}", formal.relations, formal.q_modified, formal.pass);
    let numeric = verify_q(&cfg, QMode::Numeric(Q::new(-2, 3)))?;
    println!("q = -2/3: pass {}", numeric.pass);
    let s = compare_q_one(&cfg)?;
    println!("q = 1 agrees with the loop realization: {}", s.agree);
    Ok(())
}
