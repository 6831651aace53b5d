//! The 4Z twist carries R(k,g) onto R(k,g') with 4Z+2 in place of 4Z.

use erskit::base_system::QebsConfig;
use erskit::roots::{twist_4z, RootWindow};

fn main() -> erskit::Result<()> {
    let cfg = QebsConfig::from_json(r#"{"type":"D3^(2)","k":{"a0":1,"a1":2,"a2":1},"g":{"a0":"4Z"}}"#)?;
    let t = twist_4z(&cfg, 0, RootWindow::new(6, 6, 2)?)?;
    println!("Λ_α = {}", t.lambda_alpha);
    println!("g' = {:?}", (0..t.config_prime.nodes()).map(|i| t.config_prime.g(i).to_string()).collect::<Vec<_>>());
    println!("{} roots checked, bijective {}", t.checked, t.bijective());
    Ok(())
}
