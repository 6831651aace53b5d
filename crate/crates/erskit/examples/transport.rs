//! Reach every real root of a window by n-words from the generators.

use erskit::base_system::QebsConfig;
use erskit::roots::RootWindow;
use erskit::unfold::transport;

fn main() -> erskit::Result<()> {
    let cfg = QebsConfig::from_json(r#"{"type":"D3^(2)","k":{"a0":1,"a1":1,"a2":1},"g":{"a0":"2Z+1"}}"#)?;
    let rep = transport(&cfg, RootWindow::new(2, 2, 1)?, 1, None)?;
    println!("height {}, {} of {} roots, pass {}", rep.height, rep.reached, rep.targets, rep.pass);
    for w in rep.witnesses.iter().take(8) {
        println!("{:?} from {} via {:?} ({} images compared)", w.root, w.seed, w.path, w.images);
    }
    Ok(())
}
