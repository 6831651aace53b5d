//! The automorphisms n_ν and the root-space sweep they drive: every real
//! root in a window is reached from ℬ (or 2ℬ_odd) by n-words, and its image
//! under π is a nonzero, one-dimensional weight vector.

use super::loop_alg::LoopElement;
use super::realize::Realization;
use crate::ambient::{Vector, Q};
use crate::base_system::QebsConfig;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::presentation::RootSym;
use crate::roots::{self, RootWindow};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// exp(ad x)(y), summed until the terms vanish.
fn exp_ad(real: &Realization, x: &LoopElement, y: &LoopElement) -> Result<LoopElement> {
    let la = real.loop_algebra();
    let mut out = y.clone();
    let mut term = y.clone();
    // x has nonzero 𝔊̄-weight, so the graded height bound stops the series first
    let cap = 4 * real.graded.height() + 8;
    for k in 1..=cap {
        term = la.bracket(x, &term)?.scaled(Cyclotomic::from_q(Q::new(1, k as i64)));
        if term.is_zero() {
            return Ok(out);
        }
        out.add_scaled(Cyclotomic::one(), &term);
    }
    Err(Error::resource(format!("ad x is not nilpotent within {cap} steps")))
}

/// The pair (x, y) with n_ν = exp(ad x) exp(ad y) exp(ad x).
fn n_pair(real: &Realization, nu: &RootSym) -> Result<(LoopElement, LoopElement)> {
    let e = real.root_image(nu).clone();
    let f = real.root_image(&nu.neg()).clone();
    if nu.parity(&real.config) == 0 {
        return Ok((e, f.scaled(-Cyclotomic::one())));
    }
    let la = real.loop_algebra();
    let quarter = Cyclotomic::from_q(Q::new(1, 4));
    Ok((la.bracket(&e, &e)?.scaled(quarter), la.bracket(&f, &f)?.scaled(quarter)))
}

/// n_ν applied to an element of the loop realization.
pub fn aut_n(real: &Realization, nu: &RootSym, target: &LoopElement) -> Result<LoopElement> {
    let (x, y) = n_pair(real, nu)?;
    let t = exp_ad(real, &x, target)?;
    let t = exp_ad(real, &y, &t)?;
    exp_ad(real, &x, &t)
}

/// One root of the window and how it was reached.
#[derive(Clone, Debug, Serialize)]
pub struct RootWitness {
    /// `[c_0, .., c_l, n]`
    pub root: Vec<i64>,
    pub seed: String,
    /// reflections applied to the seed, in order
    pub path: Vec<String>,
    pub nonzero: bool,
    pub weight_ok: bool,
    /// number of n-word images compared for the one-dimensionality check
    pub images: usize,
    pub one_dimensional: bool,
}

impl RootWitness {
    pub fn ok(&self) -> bool {
        self.nonzero && self.weight_ok && self.one_dimensional
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransportReport {
    pub affine_type: String,
    pub window: RootWindow,
    /// extra δ- and a-degree the search may use beyond the window
    pub reach: i64,
    pub height: usize,
    pub targets: usize,
    pub reached: usize,
    pub unreached: Vec<Vec<i64>>,
    pub failures: Vec<Vec<i64>>,
    pub witnesses: Vec<RootWitness>,
    pub pass: bool,
}

struct Node {
    elem: LoopElement,
    seed: String,
    path: Vec<String>,
    others: Vec<LoopElement>,
}

/// Rescaled so a rational leading coefficient becomes 1; long n-words
/// otherwise pile up factorials.
fn normalized(e: LoopElement) -> LoopElement {
    match e.leading().and_then(|c| c.as_rational()) {
        Some(q) if !q.is_zero() => e.scaled(Cyclotomic::from_q(q.recip())),
        _ => e,
    }
}

fn lattice(config: &QebsConfig, v: &Vector) -> Result<Vec<i64>> {
    roots::to_lattice(config.space(), v).ok_or_else(|| Error::internal(format!("{v} is off the root lattice")))
}

/// Seeds: E_μ for μ ∈ ℬ and ¼[E_μ, E_μ] for odd μ with 2μ a root.
fn seeds(real: &Realization) -> Result<Vec<(Vec<i64>, String, LoopElement)>> {
    let cfg = &real.config;
    let la = real.loop_algebra();
    let mut out = Vec::new();
    for sym in crate::presentation::b_set(cfg) {
        let v = sym.vector(cfg);
        out.push((lattice(cfg, &v)?, sym.id(), real.root_image(&sym).clone()));
        let twice = v.scale(Q::from_integer(2));
        if sym.parity(cfg) == 1 && roots::contains(cfg, &twice) {
            let e = real.root_image(&sym);
            let sq = la.bracket(e, e)?.scaled(Cyclotomic::from_q(Q::new(1, 4)));
            out.push((lattice(cfg, &twice)?, format!("[{0},{0}]", sym.id()), sq));
        }
    }
    Ok(out)
}

/// Breadth-first n-word sweep over the roots with δ-degree and a-degree
/// within `window` enlarged by `reach`.
pub fn sweep(real: &Realization, window: RootWindow, reach: i64) -> Result<TransportReport> {
    let cfg = &real.config;
    let space = cfg.space();
    let region = RootWindow { m: window.m + reach, n: window.n + reach, pad: 0 };
    let r = space.r();
    let reflections: Vec<RootSym> = crate::presentation::b_set(cfg).into_iter().filter(|s| !s.negative).collect();

    let mut found: BTreeMap<Vec<i64>, Node> = BTreeMap::new();
    let mut frontier = Vec::new();
    for (lat, id, elem) in seeds(real)? {
        if region.contains(r, &lat) && !found.contains_key(&lat) {
            frontier.push(lat.clone());
            found.insert(lat, Node { elem, seed: id, path: Vec::new(), others: Vec::new() });
        }
    }
    while !frontier.is_empty() {
        let edges: Vec<(Vec<i64>, &RootSym, Vec<i64>)> = frontier
            .iter()
            .flat_map(|lat| reflections.iter().map(move |nu| (lat.clone(), nu)))
            .map(|(lat, nu)| {
                let v = roots::lattice_to_vector(space, &lat);
                let img = space.reflect(&nu.vector(cfg), &v)?;
                Ok((lat, nu, lattice(cfg, &img)?))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(from, _, to)| from != to && region.contains(r, to))
            .collect();
        let images: Vec<LoopElement> = edges
            .par_iter()
            .map(|(from, nu, _)| aut_n(real, nu, &found[from].elem).map(normalized))
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for ((from, nu, to), elem) in edges.into_iter().zip(images) {
            if let Some(node) = found.get_mut(&to) {
                node.others.push(elem);
                continue;
            }
            let parent = &found[&from];
            let mut path = parent.path.clone();
            path.push(format!("n{}", &nu.id()[1..]));
            let seed = parent.seed.clone();
            found.insert(to.clone(), Node { elem, seed, path, others: Vec::new() });
            next.push(to);
        }
        frontier = next;
    }

    let cartan = real.cartan_images()?;
    let targets: Vec<Vec<i64>> = roots::generate(cfg, window)?
        .roots()
        .iter()
        .map(|e| e.lattice())
        .filter(|lat| window.contains(r, lat))
        .collect();
    let mut witnesses = Vec::new();
    let mut unreached = Vec::new();
    for lat in &targets {
        let Some(node) = found.get(lat) else {
            unreached.push(lat.clone());
            continue;
        };
        let want = roots::lattice_to_vector(space, lat);
        let mut weight_ok = true;
        for &(sid, power) in node.elem.terms.keys() {
            if real.component_weight_with(&cartan, sid, power)? != want {
                weight_ok = false;
            }
        }
        let nonzero = !node.elem.is_zero();
        let one_dimensional = nonzero && node.others.iter().all(|o| node.elem.proportional(o));
        witnesses.push(RootWitness {
            root: lat.clone(),
            seed: node.seed.clone(),
            path: node.path.clone(),
            nonzero,
            weight_ok: nonzero && weight_ok,
            images: 1 + node.others.len(),
            one_dimensional,
        });
    }
    let failures: Vec<Vec<i64>> = witnesses.iter().filter(|w| !w.ok()).map(|w| w.root.clone()).collect();
    Ok(TransportReport {
        affine_type: space.affine_type().to_string(),
        window,
        reach,
        height: real.graded.height(),
        targets: targets.len(),
        reached: witnesses.len(),
        pass: unreached.is_empty() && failures.is_empty(),
        unreached,
        failures,
        witnesses,
    })
}

/// Graded height that covers every root of the search region: Σ |c_α| k∨(α).
pub fn sweep_height(config: &QebsConfig, window: RootWindow, reach: i64) -> Result<usize> {
    let hd = super::build_handy(config)?;
    let region = RootWindow { m: window.m + reach, n: window.n + reach, pad: 1 };
    let set = roots::generate(config, region)?;
    let h = set
        .roots()
        .iter()
        .map(|e| e.pi_part().iter().zip(&hd.k_vee).map(|(c, k)| c.unsigned_abs() as usize * *k as usize).sum::<usize>())
        .max()
        .unwrap_or(1);
    Ok(h.max(2))
}

/// `sweep` at the given height, or starting from `sweep_height` and growing
/// on height overflow.
pub fn transport(config: &QebsConfig, window: RootWindow, reach: i64, height: Option<usize>) -> Result<TransportReport> {
    if let Some(h) = height {
        return sweep(&Realization::new(config, h)?, window, reach);
    }
    let mut h = sweep_height(config, window, reach)?;
    loop {
        match sweep(&Realization::new(config, h)?, window, reach) {
            Err(Error::Resource(msg)) if h < 4 * sweep_height(config, window, reach)? && !msg.contains("memory") => {
                h += (h / 4).max(2);
            }
            other => return other,
        }
    }
}
