#![allow(dead_code)]

use erskit::ambient::Q;
use erskit::base_system::{ConfigFile, QebsConfig};
use num_traits::Zero;
use std::collections::HashSet;
use std::path::PathBuf;

pub fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn load_dir(dir: PathBuf) -> Vec<(String, QebsConfig)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&p).unwrap();
            (name, QebsConfig::from_json(&text).unwrap())
        })
        .collect()
}

pub fn suite() -> Vec<(String, QebsConfig)> {
    load_dir(configs_dir())
}

pub fn mutants() -> Vec<(String, QebsConfig)> {
    load_dir(configs_dir().join("mutants"))
}

pub fn config(name: &str) -> QebsConfig {
    let text = std::fs::read_to_string(configs_dir().join(format!("{name}.json"))).unwrap();
    let file: ConfigFile = serde_json::from_str(&text).unwrap();
    QebsConfig::from_file(&file).unwrap()
}

/// Independent model of R(k,g) on a window: the closure of the base sets
/// α + ℤk(α)a and 2α + g(α)k(α)a under simple reflections, computed with
/// the Gram matrix only. Points are lattice coordinates [c_0..c_l, n].
pub fn closure_oracle(cfg: &QebsConfig, m: i64, n: i64, pad: i64) -> HashSet<Vec<i64>> {
    let space = cfg.space();
    let nodes = cfg.nodes();
    let r = space.r();
    let gram = space.gram();
    let (mo, no) = (m + pad, n + pad);
    let inside = |v: &[i64], mm: i64, nn: i64| v[0].abs() <= r * mm && v[nodes].abs() <= nn;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut stack = Vec::new();
    for i in 0..nodes {
        let k = cfg.k(i);
        for t in -no..=no {
            let mut v = vec![0; nodes + 1];
            v[i] = 1;
            v[nodes] = t;
            if t % k == 0 {
                stack.push(v.clone());
            }
            v[i] = 2;
            if t % k == 0 && cfg.g(i).contains(t / k) {
                stack.push(v);
            }
        }
    }
    for v in &stack {
        seen.insert(v.clone());
    }
    while let Some(v) = stack.pop() {
        for i in 0..nodes {
            let mut pair = Q::zero();
            for j in 0..nodes {
                pair += gram[i][j] * Q::from_integer(v[j]);
            }
            let c = Q::from_integer(2) * pair / gram[i][i];
            assert!(c.is_integer());
            let mut w = v.clone();
            w[i] -= c.to_integer();
            if inside(&w, mo, no) && seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    seen.into_iter().filter(|v| inside(v, m, n)).collect()
}
