//! Window-scoped R(k,g): generation, reflection-closure and SER checks, the
//! rank one/two classification tables, the marked reduction, the 4ℤ twist
//! and the EARS data for D_{l+1}^{(2)}.
//!
//! Roots live in ℤΠ ⊕ ℤa, so most code works on *lattice coordinates*
//! `[c_0, .., c_l, n]` (simple-root coefficients followed by the
//! a-coefficient). Full coordinates in the basis of E carry zeros at Λ_δ
//! and Λ_a.

use crate::ambient::{descend, AmbientSpace, Family, Vector, Q};
use crate::base_system::{validate_qebs, GClass, QebsConfig};
use crate::error::{Error, Result};
use crate::lattice::IntLattice;
use crate::linalg;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

/// Reporting window: |δ-degree| ≤ m and |a-coefficient| ≤ n, generated
/// with `pad` extra on both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootWindow {
    pub m: i64,
    pub n: i64,
    pub pad: i64,
}

impl RootWindow {
    pub fn new(m: i64, n: i64, pad: i64) -> Result<Self> {
        if m < 1 || n < 1 || pad < 1 {
            return Err(Error::config(format!("window needs M, N, pad >= 1, got ({m}, {n}, pad {pad})")));
        }
        Ok(RootWindow { m, n, pad })
    }

    pub fn padded(&self) -> RootWindow {
        RootWindow { m: self.m + self.pad, n: self.n + self.pad, pad: 0 }
    }

    /// The δ-degree of a Π-part is c_0 / r, so the bound on c_0 is r·m.
    pub fn contains(&self, r: i64, lat: &[i64]) -> bool {
        let n = lat[lat.len() - 1];
        lat[0].abs() <= r * self.m && n.abs() <= self.n
    }
}

/// What a simple-root coefficient vector is, as far as R(k,g) is concerned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PiPart {
    NotRoot,
    Real { class: usize },
    /// Twice a real root of the given class.
    Doubled { class: usize },
}

pub fn classify_pi(space: &AmbientSpace, pi: &[i64]) -> PiPart {
    if let Some(class) = space.real_root_class(pi) {
        return PiPart::Real { class };
    }
    if pi.iter().all(|x| x % 2 == 0) {
        let half: Vec<i64> = pi.iter().map(|x| x / 2).collect();
        if let Some(class) = space.real_root_class(&half) {
            return PiPart::Doubled { class };
        }
    }
    PiPart::NotRoot
}

/// Whether `part + n a` lies in R(k,g).
pub fn allows(config: &QebsConfig, part: PiPart, n: i64) -> bool {
    match part {
        PiPart::NotRoot => false,
        PiPart::Real { class } => n % config.k(class) == 0,
        PiPart::Doubled { class } => {
            let k = config.k(class);
            n % k == 0 && config.g(class).contains(n / k)
        }
    }
}

/// Exact membership test for lattice coordinates.
pub fn contains_lattice(config: &QebsConfig, lat: &[i64]) -> bool {
    let nodes = config.nodes();
    allows(config, classify_pi(config.space(), &lat[..nodes]), lat[nodes])
}

/// Lattice coordinates of a vector in ℤΠ ⊕ ℤa.
pub fn to_lattice(space: &AmbientSpace, v: &Vector) -> Option<Vec<i64>> {
    let n = space.nodes();
    if !v[n].is_zero() || !v[n + 2].is_zero() {
        return None;
    }
    let ints = v.to_ints()?;
    let mut lat = ints[..n].to_vec();
    lat.push(ints[n + 1]);
    Some(lat)
}

pub fn lattice_to_vector(space: &AmbientSpace, lat: &[i64]) -> Vector {
    let n = space.nodes();
    let mut v = Vector::zero(space.dim());
    for i in 0..n {
        v.0[i] = Q::from_integer(lat[i]);
    }
    v.0[n + 1] = Q::from_integer(lat[n]);
    v
}

/// Exact membership ρ ∈ R(k,g).
pub fn contains(config: &QebsConfig, v: &Vector) -> bool {
    to_lattice(config.space(), v).is_some_and(|lat| contains_lattice(config, &lat))
}

fn full_coords(nodes: usize, lat: &[i64]) -> Vec<i64> {
    let mut v = lat[..nodes].to_vec();
    v.push(0);
    v.push(lat[nodes]);
    v.push(0);
    v
}

/// One root of the window with its orbit data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootEntry {
    /// Coordinates in the basis (α_0..α_l, Λ_δ, a, Λ_a).
    pub coords: Vec<i64>,
    #[serde(serialize_with = "crate::ser_q")]
    pub orbit_key: Q,
    pub orbit_class: usize,
    pub k: i64,
    pub g: GClass,
    pub parity: u8,
    pub doubled: bool,
}

impl RootEntry {
    /// `[c_0, .., c_l, n]`.
    pub fn lattice(&self) -> Vec<i64> {
        let nodes = self.coords.len() - 3;
        let mut v = self.coords[..nodes].to_vec();
        v.push(self.coords[nodes + 1]);
        v
    }

    pub fn pi_part(&self) -> &[i64] {
        &self.coords[..self.coords.len() - 3]
    }

    pub fn a_part(&self) -> i64 {
        self.coords[self.coords.len() - 2]
    }
}

#[derive(Clone, Debug)]
pub struct EllipticRootSet {
    config: QebsConfig,
    window: RootWindow,
    roots: Vec<RootEntry>,
    index: HashSet<Vec<i64>>,
}

impl EllipticRootSet {
    fn from_lattice(config: &QebsConfig, window: RootWindow, lats: impl IntoIterator<Item = Vec<i64>>) -> Self {
        let space = config.space();
        let nodes = config.nodes();
        let mut roots: Vec<RootEntry> = lats
            .into_iter()
            .map(|lat| {
                let part = classify_pi(space, &lat[..nodes]);
                let (class, doubled) = match part {
                    PiPart::Real { class } => (class, false),
                    PiPart::Doubled { class } => (class, true),
                    PiPart::NotRoot => unreachable!("window entry is not a root"),
                };
                let twice: Vec<i64> = lat.iter().map(|x| 2 * x).collect();
                let v = lattice_to_vector(space, &lat);
                RootEntry {
                    coords: full_coords(nodes, &lat),
                    orbit_key: space.norm(&v),
                    orbit_class: class,
                    k: config.k(class),
                    g: config.g(class),
                    parity: contains_lattice(config, &twice) as u8,
                    doubled,
                }
            })
            .collect();
        roots.sort_by(|a, b| a.coords.cmp(&b.coords));
        roots.dedup_by(|a, b| a.coords == b.coords);
        let index = roots.iter().map(|r| r.lattice()).collect();
        EllipticRootSet { config: config.clone(), window, roots, index }
    }

    pub fn config(&self) -> &QebsConfig {
        &self.config
    }

    pub fn window(&self) -> RootWindow {
        self.window
    }

    pub fn roots(&self) -> &[RootEntry] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains_lattice(&self, lat: &[i64]) -> bool {
        self.index.contains(lat)
    }

    pub fn lattice_set(&self) -> BTreeSet<Vec<i64>> {
        self.roots.iter().map(|r| r.lattice()).collect()
    }

    pub fn in_window(&self, lat: &[i64]) -> bool {
        self.window.contains(self.config.space().r(), lat)
    }
}

/// All positive real Π-parts with c_0 ≤ bound, found by climbing from Π.
/// Complete because descent to a simple root only lowers coordinates.
pub fn positive_real_parts(space: &AmbientSpace, c0_bound: i64) -> Vec<Vec<i64>> {
    let n = space.nodes();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if e[0] <= c0_bound && seen.insert(e.clone()) {
            queue.push_back(e);
        }
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let p = space.simple_coroot_pairing(i, &v);
            if p < 0 {
                let mut w = v.clone();
                w[i] -= p;
                if w[0] <= c0_bound && seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort();
    out
}

fn pebs_prerequisites(config: &QebsConfig) -> Result<()> {
    let rep = validate_qebs(config);
    for name in ["k-invariant", "g-invariant", "k-gcd"] {
        let c = rep.check(name).expect("check present");
        if !c.pass {
            return Err(Error::config(format!("not a PEBS: {name} fails ({})", c.detail)));
        }
    }
    Ok(())
}

/// R(k,g) on the window. The config must be a valid QEBS.
pub fn generate(config: &QebsConfig, window: RootWindow) -> Result<EllipticRootSet> {
    let rep = validate_qebs(config);
    if let Some(f) = rep.first_failure() {
        return Err(Error::config(format!("{} fails: {}", f.axiom, f.detail)));
    }
    generate_pebs(config, window)
}

/// R(k,g) on the window for any PEBS (k, g W-invariant, gcd k = 1); used
/// to study KG-violating mutants.
pub fn generate_pebs(config: &QebsConfig, window: RootWindow) -> Result<EllipticRootSet> {
    pebs_prerequisites(config)?;
    let space = config.space();
    let nodes = config.nodes();
    let r = space.r();
    for i in 0..nodes {
        let mut lat = vec![0; nodes + 1];
        lat[i] = config.c_of(i);
        lat[nodes] = config.k(i);
        if !window.contains(r, &lat) {
            return Err(Error::config(format!(
                "window (M={}, N={}) too small to contain a{i}*",
                window.m, window.n
            )));
        }
    }

    let outer = window.padded();
    let padded = padded_roots(config, outer);

    // One more pass of simple reflections must not produce anything new
    // inside the reporting window.
    for lat in &padded {
        for i in 0..nodes {
            let p = space.simple_coroot_pairing(i, &lat[..nodes]);
            let mut img = lat.clone();
            img[i] -= p;
            if window.contains(r, &img) && !padded.contains(&img) {
                return Err(Error::internal(format!(
                    "window closure is not a fixpoint: s_{i} maps {lat:?} to {img:?}"
                )));
            }
        }
    }

    let inner = padded.into_iter().filter(|lat| window.contains(r, lat));
    Ok(EllipticRootSet::from_lattice(config, window, inner))
}

fn padded_roots(config: &QebsConfig, outer: RootWindow) -> HashSet<Vec<i64>> {
    let space = config.space();
    let nodes = config.nodes();
    let r = space.r();
    let mut out = HashSet::new();
    for pos in positive_real_parts(space, r * outer.m) {
        let class = space.real_root_class(&pos).expect("climbed vector is a real root");
        let k = config.k(class);
        let g = config.g(class);
        for sign in [1i64, -1] {
            let pi: Vec<i64> = pos.iter().map(|x| sign * x).collect();
            let mut n = -(outer.n / k) * k;
            while n <= outer.n {
                let mut lat = pi.clone();
                lat.push(n);
                out.insert(lat);
                n += k;
            }
            if !g.is_empty() && 2 * pi[0].abs() <= r * outer.m {
                for n in -outer.n..=outer.n {
                    if n % k == 0 && g.contains(n / k) {
                        let mut lat: Vec<i64> = pi.iter().map(|x| 2 * x).collect();
                        lat.push(n);
                        out.insert(lat);
                    }
                }
            }
        }
    }
    debug_assert!(out.iter().all(|lat| lat.len() == nodes + 1));
    out
}

/// R(k,g)_S: roots supported on S ∪ {a}.
pub fn restrict(rootset: &EllipticRootSet, subset: &[usize]) -> EllipticRootSet {
    let nodes = rootset.config.nodes();
    let keep: Vec<Vec<i64>> = rootset
        .roots
        .iter()
        .filter(|r| (0..nodes).all(|i| r.coords[i] == 0 || subset.contains(&i)))
        .map(|r| r.lattice())
        .collect();
    EllipticRootSet::from_lattice(&rootset.config, rootset.window, keep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureWitness {
    pub beta: Vec<i64>,
    pub gamma: Vec<i64>,
    /// s_β(γ), full coordinates as rationals rendered to strings.
    pub image: Vec<String>,
}

impl fmt::Display for ClosureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s_{:?}({:?}) = [{}] is not a root", self.beta, self.gamma, self.image.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ClosureWitness>,
}

impl Outcome {
    fn new(name: &str, pass: bool, detail: String) -> Self {
        Outcome { name: name.into(), pass, detail, witness: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EbsReport {
    pub affine_type: String,
    pub window: RootWindow,
    pub roots: usize,
    pub checks: Vec<Outcome>,
    pub pass: bool,
}

impl EbsReport {
    pub fn check(&self, name: &str) -> Option<&Outcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn witness(&self) -> Option<&ClosureWitness> {
        self.checks.iter().find_map(|c| c.witness.as_ref())
    }
}

/// Reflection closure plus the SER axioms on the window.
pub fn check_ebs(rootset: &EllipticRootSet) -> EbsReport {
    let config = &rootset.config;
    let space = config.space();
    let nodes = config.nodes();

    // Group the window by Π-part; the a-coordinate transforms as
    // n ↦ n_γ - ⟨β∨, γ⟩ n_β, so pairs of Π-parts carry all the work.
    let mut by_pi: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    {
        let mut map: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        for r in &rootset.roots {
            map.entry(r.pi_part().to_vec()).or_default().push(r.a_part());
        }
        by_pi.extend(map);
        by_pi.sort();
    }
    let sym: Vec<Vec<i64>> = (0..nodes)
        .map(|i| (0..nodes).map(|j| space.symmetrizer()[i] * space.cartan_entry(i, j)).collect())
        .collect();
    let jpair = |x: &[i64], y: &[i64]| -> i64 {
        let mut acc = 0;
        for i in 0..nodes {
            if x[i] == 0 {
                continue;
            }
            for j in 0..nodes {
                acc += x[i] * sym[i][j] * y[j];
            }
        }
        acc
    };

    struct Bad {
        closure: Option<ClosureWitness>,
        ser5: Option<String>,
    }

    let results: Vec<Bad> = by_pi
        .par_iter()
        .map(|(bpi, bas)| {
            let mut out = Bad { closure: None, ser5: None };
            let bn = jpair(bpi, bpi);
            let mut cache: HashMap<Vec<i64>, PiPart> = HashMap::new();
            for (gpi, gas) in &by_pi {
                let p = Q::new(2 * jpair(bpi, gpi), bn);
                if !p.is_integer() && out.ser5.is_none() {
                    out.ser5 = Some(format!("J(b∨, g) = {p} for b = {bpi:?}, g = {gpi:?}"));
                }
                if out.closure.is_some() {
                    continue;
                }
                let img: Vec<Q> = (0..nodes)
                    .map(|i| Q::from_integer(gpi[i]) - p * Q::from_integer(bpi[i]))
                    .collect();
                let part = if img.iter().all(|x| x.is_integer()) {
                    let ints: Vec<i64> = img.iter().map(|x| x.to_integer()).collect();
                    *cache.entry(ints.clone()).or_insert_with(|| classify_pi(space, &ints))
                } else {
                    PiPart::NotRoot
                };
                'pairs: for &nb in bas {
                    for &ng in gas {
                        let na = Q::from_integer(ng) - p * Q::from_integer(nb);
                        let ok = na.is_integer() && allows(config, part, na.to_integer());
                        if !ok {
                            let mut image: Vec<String> = img.iter().map(|x| x.to_string()).collect();
                            image.push("0".into());
                            image.push(na.to_string());
                            image.push("0".into());
                            let mut b = bpi.clone();
                            b.push(nb);
                            let mut g = gpi.clone();
                            g.push(ng);
                            out.closure = Some(ClosureWitness {
                                beta: full_coords(nodes, &b),
                                gamma: full_coords(nodes, &g),
                                image,
                            });
                            break 'pairs;
                        }
                    }
                }
            }
            out
        })
        .collect();

    let mut checks = Vec::new();
    let closure = results.iter().find_map(|b| b.closure.clone());
    checks.push(Outcome {
        name: "closure".into(),
        pass: closure.is_none(),
        detail: closure.as_ref().map(|w| w.to_string()).unwrap_or_default(),
        witness: closure,
    });

    // Lattice-coordinate gram: symmetrized GCM on Π, zero on a.
    let dim = nodes + 1;
    let gram_lat: Vec<Vec<Q>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i < nodes && j < nodes { Q::from_integer(sym[i][j]) } else { Q::zero() })
                .collect()
        })
        .collect();
    let rows: Vec<Vec<Q>> = rootset
        .roots
        .iter()
        .map(|r| r.lattice().iter().map(|&x| Q::from_integer(x)).collect())
        .collect();
    let mut basis = rows.clone();
    let piv = linalg::rref(&mut basis);
    basis.truncate(piv.len());
    let span_dim = basis.len();
    let g_span: Vec<Vec<Q>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| bilinear(&gram_lat, x, y)).collect())
        .collect();

    let psd = is_positive_semidefinite(&g_span);
    let norms_positive = rootset.roots.iter().all(|r| r.orbit_key > Q::zero());
    checks.push(Outcome::new(
        "SER1",
        psd && norms_positive,
        if psd && norms_positive { String::new() } else { "form not semidefinite on the span".into() },
    ));

    let rad = linalg::kernel(&g_span, span_dim);
    let rad_vecs: Vec<Vec<Q>> = rad
        .iter()
        .map(|c| (0..dim).map(|j| c.iter().zip(&basis).map(|(ci, b)| *ci * b[j]).sum()).collect())
        .collect();
    let mut delta_a: Vec<Vec<Q>> = vec![
        space.marks().iter().map(|&m| Q::from_integer(m)).chain([Q::zero()]).collect(),
        (0..dim).map(|j| if j == nodes { Q::one() } else { Q::zero() }).collect(),
    ];
    let rad_rank = linalg::rank(&rad_vecs);
    delta_a.extend(rad_vecs.iter().cloned());
    let ser2 = rad_vecs.len() == 2 && rad_rank == 2 && linalg::rank(&delta_a) == 2;
    checks.push(Outcome::new(
        "SER2",
        ser2,
        if ser2 { String::new() } else { format!("radical has dimension {} and is not span(δ, a)", rad_vecs.len()) },
    ));

    let want = space.rank() + 2;
    let int_lat = IntLattice::from_generators(dim, rootset.roots.iter().map(|r| r.lattice()).collect::<Vec<_>>().iter().map(|v| v.as_slice()));
    let ser3 = span_dim == want && int_lat.rank() == want;
    checks.push(Outcome::new(
        "SER3",
        ser3,
        if ser3 { String::new() } else { format!("span has dimension {span_dim}, expected {want}") },
    ));

    let ser5 = results.iter().find_map(|b| b.ser5.clone());
    checks.push(Outcome::new("SER5", ser5.is_none(), ser5.unwrap_or_default()));

    let connected = pi_parts_connected(&by_pi.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(), &jpair);
    checks.push(Outcome::new(
        "SER6",
        connected,
        if connected { String::new() } else { "root set splits into orthogonal pieces".into() },
    ));

    let pass = checks.iter().all(|c| c.pass);
    EbsReport {
        affine_type: space.affine_type().to_string(),
        window: rootset.window,
        roots: rootset.len(),
        checks,
        pass,
    }
}

fn bilinear(g: &[Vec<Q>], x: &[Q], y: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            acc += xi * g[i][j] * yj;
        }
    }
    acc
}

/// Symmetric elimination; a zero pivot with a nonzero row means indefinite.
fn is_positive_semidefinite(g: &[Vec<Q>]) -> bool {
    let n = g.len();
    let mut m = g.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(pos) = active.iter().position(|&i| !m[i][i].is_zero()) {
        let p = active.remove(pos);
        if m[p][p] < Q::zero() {
            return false;
        }
        let pv = m[p][p];
        for &i in &active {
            let f = m[i][p] / pv;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = f * m[p][j];
                m[i][j] -= v;
            }
        }
    }
    active.iter().all(|&i| active.iter().all(|&j| m[i][j].is_zero()))
}

fn pi_parts_connected(parts: &[Vec<i64>], jpair: &dyn Fn(&[i64], &[i64]) -> i64) -> bool {
    if parts.is_empty() {
        return true;
    }
    let n = parts.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && jpair(&parts[i], &parts[j]) != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

// ---------------------------------------------------------------------------
// Classification tables

/// Names of the rank one and rank two affine subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AffineName {
    A1_1,
    A2_2,
    B1_01,
    C2_2,
    A4_02,
    A2_1,
    C2_1,
    G2_1,
    D3_2,
    D4_3,
    A4_2,
    B1_02,
    A2_03,
    C2_3,
    A4_04,
}

impl AffineName {
    pub fn is_super(self) -> bool {
        matches!(
            self,
            AffineName::B1_01
                | AffineName::C2_2
                | AffineName::A4_02
                | AffineName::B1_02
                | AffineName::A2_03
                | AffineName::C2_3
                | AffineName::A4_04
        )
    }

    /// GCM of the ordinary names.
    pub fn cartan(self) -> Option<Vec<Vec<i64>>> {
        let named = |s: &str| s.parse::<crate::ambient::AffineType>().unwrap().cartan_matrix();
        match self {
            AffineName::A1_1 => Some(vec![vec![2, -2], vec![-2, 2]]),
            AffineName::A2_2 => Some(vec![vec![2, -4], vec![-1, 2]]),
            AffineName::A2_1 => Some(named("A2^(1)")),
            AffineName::C2_1 => Some(named("C2^(1)")),
            AffineName::G2_1 => Some(named("G2^(1)")),
            AffineName::D3_2 => Some(named("D3^(2)")),
            AffineName::D4_3 => Some(named("D4^(3)")),
            AffineName::A4_2 => Some(named("A4^(2)")),
            _ => None,
        }
    }
}

impl fmt::Display for AffineName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AffineName::A1_1 => "A_1^(1)",
            AffineName::A2_2 => "A_2^(2)",
            AffineName::B1_01 => "B^(1)(0,1)",
            AffineName::C2_2 => "C^(2)(2)",
            AffineName::A4_02 => "A^(4)(0,2)",
            AffineName::A2_1 => "A_2^(1)",
            AffineName::C2_1 => "C_2^(1)",
            AffineName::G2_1 => "G_2^(1)",
            AffineName::D3_2 => "D_3^(2)",
            AffineName::D4_3 => "D_4^(3)",
            AffineName::A4_2 => "A_4^(2)",
            AffineName::B1_02 => "B^(1)(0,2)",
            AffineName::A2_03 => "A^(2)(0,3)",
            AffineName::C2_3 => "C^(2)(3)",
            AffineName::A4_04 => "A^(4)(0,4)",
        })
    }
}

impl Serialize for AffineName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The affine root system R^S generated by an affine type subset S, with
/// membership decided by descent in the basis S.
struct SubSystem {
    /// Lattice coordinates of the elements of S.
    basis: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    class: Vec<usize>,
    odd: Vec<bool>,
}

impl SubSystem {
    fn new(config: &QebsConfig, s: &[Vector]) -> Option<SubSystem> {
        let space = config.space();
        let n = s.len();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = space.coroot_pair(&s[i], &s[j]).ok()?;
                if !v.is_integer() {
                    return None;
                }
                cartan[i][j] = v.to_integer();
            }
        }
        let mut class: Vec<usize> = (0..n).collect();
        // tiny n: repeated relaxation is enough
        for _ in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if cartan[i][j] == -1 && cartan[j][i] == -1 {
                        let m = class[i].min(class[j]);
                        class[i] = m;
                        class[j] = m;
                    }
                }
            }
        }
        let odd = s.iter().map(|v| contains(config, &v.scale(Q::from_integer(2)))).collect();
        let basis = s.iter().map(|v| to_lattice(space, v)).collect::<Option<Vec<_>>>()?;
        Some(SubSystem { basis, cartan, class, odd })
    }

    fn coords(&self, lat: &[i64]) -> Option<Vec<i64>> {
        let dim = lat.len();
        let m: Vec<Vec<Q>> = (0..dim)
            .map(|r| self.basis.iter().map(|b| Q::from_integer(b[r])).collect())
            .collect();
        let rhs: Vec<Q> = lat.iter().map(|&x| Q::from_integer(x)).collect();
        let x = linalg::solve(&m, &rhs)?;
        x.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
    }

    fn contains(&self, lat: &[i64]) -> bool {
        let Some(x) = self.coords(lat) else { return false };
        if descend(&self.cartan, &x).is_some() {
            return true;
        }
        if x.iter().all(|v| v % 2 == 0) {
            let half: Vec<i64> = x.iter().map(|v| v / 2).collect();
            if let Some(i) = descend(&self.cartan, &half) {
                return (0..self.odd.len()).any(|j| self.odd[j] && self.class[j] == self.class[i]);
            }
        }
        false
    }

    fn odd_nonempty(&self) -> bool {
        self.odd.iter().any(|&o| o)
    }
}

fn is_affine_gcm(a: &[Vec<i64>]) -> bool {
    let n = a.len();
    let q: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| Q::from_integer(x)).collect()).collect();
    if linalg::rank(&q) != n - 1 {
        return false;
    }
    // proper principal minors positive
    for mask in 1..(1u32 << n) - 1 {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Q>> = idx.iter().map(|&i| idx.iter().map(|&j| q[i][j]).collect()).collect();
        if linalg::det(&sub) <= Q::zero() {
            return false;
        }
    }
    // indecomposable
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && a[i][j] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn equal_up_to_permutation(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|i| (0..n).all(|j| a[perm[i]][perm[j]] == b[i][j])) {
            return true;
        }
        // next permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetCheck {
    pub independent: bool,
    pub affine_gcm: bool,
    /// Ordinary names: A_S equals the named GCM up to relabeling. Super
    /// names: some element of S is odd.
    pub name_consistent: bool,
    /// R(k,g)_{supp} = R^S on the window box.
    pub slice_matches: bool,
}

impl SubsetCheck {
    pub fn ok(&self) -> bool {
        self.independent && self.affine_gcm && self.name_consistent && self.slice_matches
    }
}

fn subset_check(config: &QebsConfig, s: &[Vector], support: &[usize], name: AffineName, window: RootWindow) -> SubsetCheck {
    let space = config.space();
    let lats: Vec<Vec<Q>> = s
        .iter()
        .map(|v| to_lattice(space, v).unwrap().iter().map(|&x| Q::from_integer(x)).collect())
        .collect();
    let independent = linalg::rank(&lats) == s.len();
    let Some(sub) = SubSystem::new(config, s) else {
        return SubsetCheck { independent, affine_gcm: false, name_consistent: false, slice_matches: false };
    };
    let affine_gcm = is_affine_gcm(&sub.cartan);
    let name_consistent = match name.cartan() {
        Some(c) => !sub.odd_nonempty() && equal_up_to_permutation(&sub.cartan, &c),
        None => sub.odd_nonempty(),
    };

    // Box: support coefficients in [-m, m], a-coefficient in [-n, n].
    let nodes = config.nodes();
    let b = window.m;
    let mut slice_matches = true;
    let mut coeffs = vec![-b; support.len()];
    'outer: loop {
        for n in -window.n..=window.n {
            let mut lat = vec![0; nodes + 1];
            for (t, &i) in support.iter().enumerate() {
                lat[i] = coeffs[t];
            }
            lat[nodes] = n;
            if contains_lattice(config, &lat) != sub.contains(&lat) {
                slice_matches = false;
                break 'outer;
            }
        }
        let mut t = 0;
        loop {
            if t == coeffs.len() {
                break 'outer;
            }
            coeffs[t] += 1;
            if coeffs[t] <= b {
                break;
            }
            coeffs[t] = -b;
            t += 1;
        }
    }
    SubsetCheck { independent, affine_gcm, name_consistent, slice_matches }
}

#[derive(Clone, Debug, Serialize)]
pub struct Rank1Case {
    pub node: usize,
    pub case: &'static str,
    pub name: AffineName,
    pub g: GClass,
    /// p(α) from the membership oracle.
    pub parity: u8,
    pub subset: SubsetCheck,
}

pub fn classify_rank1(config: &QebsConfig, alpha: usize, window: RootWindow) -> Result<Rank1Case> {
    let (case, name) = match config.g(alpha) {
        GClass::Empty => ("(i)", AffineName::A1_1),
        GClass::TwoZPlusOne => ("(ii)", AffineName::A2_2),
        GClass::Z => ("(iii)", AffineName::B1_01),
        GClass::TwoZ => ("(iv)", AffineName::C2_2),
        GClass::FourZPlusTwo => ("(v)", AffineName::A4_02),
        GClass::FourZ => ("(vi)", AffineName::A4_02),
    };
    let space = config.space();
    let a = space.alpha(alpha);
    let s = [a.clone(), -&config.alpha_star(alpha)];
    let subset = subset_check(config, &s, &[alpha], name, window);
    let parity = contains(config, &a.scale(Q::from_integer(2))) as u8;
    Ok(Rank1Case { node: alpha, case, name, g: config.g(alpha), parity, subset })
}

#[derive(Clone, Debug, Serialize)]
pub struct Rank2Case {
    pub alpha: usize,
    pub beta: usize,
    pub case: &'static str,
    /// J(α∨, β)
    pub cartan: i64,
    /// k(β)/k(α)
    #[serde(serialize_with = "crate::ser_q")]
    pub k_ratio: Q,
    pub g_alpha: GClass,
    pub gamma_word: &'static str,
    pub gamma: Vec<i64>,
    pub name: AffineName,
    /// γ ∈ R(k,g)_{α,β} ∩ (-k(α)a + ℤ_-Π); with k(α) = 1 this is -a + ℤ_-Π.
    pub gamma_ok: bool,
    pub g_beta_empty: bool,
    pub subset: SubsetCheck,
}

impl Rank2Case {
    pub fn ok(&self) -> bool {
        self.gamma_ok && self.g_beta_empty && self.subset.ok()
    }
}

impl Rank1Case {
    pub fn ok(&self) -> bool {
        self.subset.ok()
    }
}

pub fn classify_rank2(config: &QebsConfig, alpha: usize, beta: usize, window: RootWindow) -> Result<Rank2Case> {
    let space = config.space();
    if alpha == beta || space.cartan_entry(beta, alpha) != -1 {
        return Err(Error::domain(format!(
            "pair (a{alpha}, a{beta}) needs J(a{alpha}, a{beta}∨) = -1; got {}. Swap the arguments or drop the pair",
            space.cartan_entry(beta, alpha)
        )));
    }
    let cartan = space.cartan_entry(alpha, beta);
    let k_ratio = config.k_ratio(beta, alpha);
    let g_alpha = config.g(alpha);
    let one = Q::one();
    let two = Q::from_integer(2);
    let three = Q::from_integer(3);
    use GClass::*;
    let (case, word, name) = match (cartan, k_ratio, g_alpha) {
        (-1, r, Empty) if r == one => ("(i)", "s_a(-b*)", AffineName::A2_1),
        (-2, r, Empty) if r == one => ("(ii)", "s_a(-b*)", AffineName::C2_1),
        (-3, r, Empty) if r == one => ("(iii)", "s_b s_a(-b*)", AffineName::G2_1),
        (-2, r, Empty) if r == two => ("(iv)", "s_b(-a*)", AffineName::D3_2),
        (-3, r, Empty) if r == three => ("(v)", "s_a s_b(-a*)", AffineName::D4_3),
        (-2, r, TwoZPlusOne) if r == one => ("(vi)", "s_b(-a*)", AffineName::A4_2),
        (-2, r, Z) if r == one => ("(vii)", "s_b(-a*)", AffineName::B1_02),
        (-2, r, TwoZ) if r == one => ("(viii)", "s_a(-b*)", AffineName::A2_03),
        (-2, r, TwoZ) if r == two => ("(ix)", "s_b(-a*)", AffineName::C2_3),
        (-2, r, FourZPlusTwo) if r == two => ("(x)", "s_b(-a*)", AffineName::A4_04),
        (-2, r, FourZ) if r == two => ("(xi)", "s_b(-a*)", AffineName::A4_04),
        _ => {
            return Err(Error::domain(format!(
                "no tabulated case for Jkg = {{{cartan}, {k_ratio}, {g_alpha}}} at (a{alpha}, a{beta})"
            )))
        }
    };
    let a = space.alpha(alpha);
    let b = space.alpha(beta);
    let neg_a_star = -&config.alpha_star(alpha);
    let neg_b_star = -&config.alpha_star(beta);
    let refl = |x: &Vector, y: &Vector| space.reflect(x, y).expect("simple roots are non-isotropic");
    let gamma = match word {
        "s_a(-b*)" => refl(&a, &neg_b_star),
        "s_b s_a(-b*)" => refl(&b, &refl(&a, &neg_b_star)),
        "s_b(-a*)" => refl(&b, &neg_a_star),
        _ => refl(&a, &refl(&b, &neg_a_star)),
    };
    let lat = to_lattice(space, &gamma).ok_or_else(|| Error::internal("γ left ℤΠ ⊕ ℤa"))?;
    let nodes = config.nodes();
    let supported = (0..nodes).all(|i| lat[i] == 0 || i == alpha || i == beta);
    let nonpositive = lat[..nodes].iter().all(|&x| x <= 0);
    let gamma_ok = supported && nonpositive && lat[nodes] == -config.k(alpha) && contains_lattice(config, &lat);
    let subset = subset_check(config, &[a, b, gamma.clone()], &[alpha, beta], name, window);
    Ok(Rank2Case {
        alpha,
        beta,
        case,
        cartan,
        k_ratio,
        g_alpha,
        gamma_word: word,
        gamma: full_coords(nodes, &lat),
        name,
        gamma_ok,
        g_beta_empty: config.g(beta).is_empty(),
        subset,
    })
}

/// Ordered pairs (α, β) of simple roots with J(α, β∨) = -1.
pub fn rank2_pairs(config: &QebsConfig) -> Vec<(usize, usize)> {
    let n = config.nodes();
    let space = config.space();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && space.cartan_entry(b, a) == -1 {
                out.push((a, b));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Marked reduction

#[derive(Clone, Debug)]
pub struct MarkedReduction {
    pub r_prime: Vec<RootEntry>,
    pub r_double: Vec<RootEntry>,
    /// (1/2)R'' ⊆ R' + G
    pub halves_in_r_prime: bool,
    /// ℤR' = ℤR on the window
    pub lattices_equal: bool,
}

/// Split R into R' = {α : α/2 ∉ R + ℤa} and R'' = R ∖ R'.
pub fn reduce_marked(rootset: &EllipticRootSet) -> MarkedReduction {
    let space = rootset.config.space();
    let half_is_root = |r: &RootEntry| {
        let pi = r.pi_part();
        pi.iter().all(|x| x % 2 == 0)
            && matches!(classify_pi(space, &pi.iter().map(|x| x / 2).collect::<Vec<_>>()), PiPart::Real { .. })
    };
    let (r_double, r_prime): (Vec<RootEntry>, Vec<RootEntry>) =
        rootset.roots.iter().cloned().partition(half_is_root);
    let prime_pis: HashSet<Vec<i64>> = r_prime.iter().map(|r| r.pi_part().to_vec()).collect();
    let halves_in_r_prime = r_double.iter().all(|r| {
        let half: Vec<i64> = r.pi_part().iter().map(|x| x / 2).collect();
        prime_pis.contains(&half)
    });
    let dim = rootset.config.nodes() + 1;
    let prime_lats: Vec<Vec<i64>> = r_prime.iter().map(|r| r.lattice()).collect();
    let lat = IntLattice::from_generators(dim, prime_lats.iter().map(|v| v.as_slice()));
    let lattices_equal = r_double.iter().all(|r| lat.contains(&r.lattice()));
    MarkedReduction { r_prime, r_double, halves_in_r_prime, lattices_equal }
}

// ---------------------------------------------------------------------------
// The 4ℤ twist

#[derive(Clone, Debug)]
pub struct Twist {
    pub config_prime: QebsConfig,
    pub lambda_alpha: Vector,
    /// The Cartan-side map h_σ ↦ h_{Tσ}, columns are images of basis vectors.
    pub cartan_map: Vec<Vec<Q>>,
    /// The induced map on roots, (T*)^{-1}.
    pub root_map: Vec<Vec<Q>>,
    pub forward_ok: bool,
    pub backward_ok: bool,
    pub checked: usize,
}

impl Twist {
    pub fn bijective(&self) -> bool {
        self.forward_ok && self.backward_ok
    }
}

fn apply(m: &[Vec<Q>], v: &Vector) -> Vector {
    Vector(m.iter().map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum()).collect())
}

fn transpose(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

fn matmul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

/// Λ_α: J(Λ_α, γ) = δ_{αγ} on Π and J(Λ_α, Λ_α) = 0, inside ℂΠ ⊕ ℂΛ_δ.
pub fn fundamental_weight(space: &AmbientSpace, alpha: usize) -> Result<Vector> {
    let n = space.nodes();
    let ld = n;
    // unknowns: x_0..x_l (on Π) and y (on Λ_δ)
    let m: Vec<Vec<Q>> = (0..n)
        .map(|j| {
            let mut row: Vec<Q> = (0..n).map(|i| space.gram()[i][j]).collect();
            row.push(space.gram()[ld][j]);
            row
        })
        .collect();
    let rhs: Vec<Q> = (0..n).map(|j| if j == alpha { Q::one() } else { Q::zero() }).collect();
    let sol = linalg::solve(&m, &rhs).ok_or_else(|| Error::internal("no fundamental weight"))?;
    let mut v = Vector::zero(space.dim());
    for i in 0..n {
        v.0[i] = sol[i];
    }
    v.0[ld] = sol[n];
    // shift by tδ to make it isotropic: norm(v + tδ) = norm(v) + 2t J(v, δ)
    let delta = space.null_root();
    let jd = space.pair(&v, &delta);
    if jd.is_zero() {
        return Err(Error::internal("fundamental weight orthogonal to δ"));
    }
    let t = -space.norm(&v) / (Q::from_integer(2) * jd);
    Ok(&v + &delta.scale(t))
}

pub fn twist_4z(config: &QebsConfig, alpha: usize, window: RootWindow) -> Result<Twist> {
    if config.g(alpha) != GClass::FourZ {
        return Err(Error::domain(format!("twist needs g(a{alpha}) = 4Z, found {}", config.g(alpha))));
    }
    if !config.pi_b().contains(&alpha) {
        return Err(Error::domain(format!("a{alpha} is not in Pi^B")));
    }
    let space = config.space();
    let n = space.nodes();
    let dim = space.dim();
    let config_prime = config.with_g(alpha, GClass::FourZPlusTwo);
    let lam = fundamental_weight(space, alpha)?;

    // Source basis (Π, Λ_α, a, Λ_a) and its images.
    let mut src: Vec<Vector> = (0..n).map(|i| space.alpha(i)).collect();
    src.push(lam.clone());
    src.push(space.a());
    src.push(space.lambda_a());
    let mut img = src.clone();
    img[alpha] = config.alpha_star(alpha);
    img[n + 2] = &space.lambda_a() - &lam;
    let cols = |vs: &[Vector]| -> Vec<Vec<Q>> { (0..dim).map(|r| vs.iter().map(|v| v[r]).collect()).collect() };
    let p = cols(&src);
    let p_inv = linalg::inverse(&p).ok_or_else(|| Error::internal("twist basis is singular"))?;
    let t = matmul(&cols(&img), &p_inv);
    let g = space.gram().to_vec();
    let g_inv = linalg::inverse(&g).expect("gram is nondegenerate");
    let t_adj = matmul(&matmul(&g_inv, &transpose(&t)), &g);
    let root_map = linalg::inverse(&t_adj).ok_or_else(|| Error::internal("twist is not invertible"))?;
    let back = t_adj.clone();

    let src_set = generate(config, window)?;
    let dst_set = generate(&config_prime, window)?;
    let forward_ok = src_set
        .roots
        .iter()
        .all(|r| contains(&config_prime, &apply(&root_map, &lattice_to_vector(space, &r.lattice()))));
    let backward_ok = dst_set
        .roots
        .iter()
        .all(|r| contains(config, &apply(&back, &lattice_to_vector(space, &r.lattice()))));
    Ok(Twist {
        config_prime,
        lambda_alpha: lam,
        cartan_map: t,
        root_map,
        forward_ok,
        backward_ok,
        checked: src_set.len() + dst_set.len(),
    })
}

// ---------------------------------------------------------------------------
// EARS data for D_{l+1}^{(2)}

/// {mδ + na : m ≡ dr (mod dm), n ≡ ar (mod am)}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NullProgression {
    pub delta_mod: i64,
    pub delta_res: i64,
    pub a_mod: i64,
    pub a_res: i64,
}

impl NullProgression {
    pub fn contains(&self, m: i64, n: i64) -> bool {
        m.rem_euclid(self.delta_mod) == self.delta_res && n.rem_euclid(self.a_mod) == self.a_res
    }
}

impl fmt::Display for NullProgression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |m: i64, r: i64| match (m, r) {
            (1, _) => "Z".to_string(),
            (m, 0) => format!("{m}Z"),
            (m, r) => format!("({m}Z+{r})"),
        };
        write!(f, "{}δ+{}a", part(self.delta_mod, self.delta_res), part(self.a_mod, self.a_res))
    }
}

/// A union of null progressions; empty means ∅.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NullSet {
    pub parts: Vec<NullProgression>,
    pub symbolic: String,
}

impl NullSet {
    fn new(parts: Vec<NullProgression>) -> Self {
        let symbolic = if parts.is_empty() {
            "∅".to_string()
        } else {
            parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ∪ ")
        };
        NullSet { parts, symbolic }
    }

    pub fn contains(&self, m: i64, n: i64) -> bool {
        self.parts.iter().any(|p| p.contains(m, n))
    }

    /// Points of the window as (δ-coefficient, a-coefficient).
    pub fn window(&self, w: RootWindow) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for m in -w.m..=w.m {
            for n in -w.n..=w.n {
                if self.contains(m, n) {
                    out.push((m, n));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EarsData {
    pub x: String,
    pub s: NullSet,
    pub l: NullSet,
    pub e: NullSet,
    /// R(X,S,L,E) agrees with R(k,g) on the window.
    pub window_matches: bool,
    pub compared: usize,
}

fn g_progression(delta_mod: i64, delta_res: i64, g: GClass, k: i64) -> Option<NullProgression> {
    let (b, r) = g.progression()?;
    Some(NullProgression { delta_mod, delta_res, a_mod: b * k, a_res: (r * k).rem_euclid(b * k) })
}

pub fn ears_data(config: &QebsConfig, window: RootWindow) -> Result<EarsData> {
    let space = config.space();
    if space.affine_type().family() != Family::D2 {
        return Err(Error::domain(format!("EARS data needs type D_(l+1)^(2), got {}", space.affine_type())));
    }
    if let Some(i) = (0..config.nodes()).find(|&i| !matches!(config.g(i), GClass::Empty | GClass::TwoZPlusOne)) {
        return Err(Error::domain(format!("EARS data needs g in {{empty, 2Z+1}}, g(a{i}) = {}", config.g(i))));
    }
    let l = space.rank();
    let (k0, kl, km) = (config.k(0), config.k(l), config.k(1));
    let (g0, gl) = (config.g(0), config.g(l));
    let x = if g0.is_empty() && gl.is_empty() { format!("B_{l}") } else { format!("BC_{l}") };
    let s = NullSet::new(vec![
        NullProgression { delta_mod: 2, delta_res: 1, a_mod: k0, a_res: 0 },
        NullProgression { delta_mod: 2, delta_res: 0, a_mod: kl, a_res: 0 },
    ]);
    let lset = NullSet::new(vec![NullProgression { delta_mod: 2, delta_res: 0, a_mod: km, a_res: 0 }]);
    let e = NullSet::new(
        [g_progression(4, 2, g0, k0), g_progression(4, 0, gl, kl)].into_iter().flatten().collect(),
    );

    // ε-roots to lattice coordinates: f_1 = c_1 - c_0, f_j = c_j - c_{j-1}, m = c_0.
    let to_lat = |f: &[i64], m: i64, n: i64| -> Vec<i64> {
        let mut c = vec![0i64; l + 2];
        c[0] = m;
        for j in 1..=l {
            c[j] = f[j - 1] + c[j - 1];
        }
        c[l + 1] = n;
        c
    };
    let mut built: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut gradients: Vec<(Vec<i64>, &NullSet)> = Vec::new();
    for i in 0..l {
        for sgn in [1, -1] {
            let mut f = vec![0; l];
            f[i] = sgn;
            gradients.push((f.clone(), &s));
            f[i] = 2 * sgn;
            gradients.push((f, &e));
        }
        for j in i + 1..l {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut f = vec![0; l];
                f[i] = si;
                f[j] = sj;
                gradients.push((f, &lset));
            }
        }
    }
    for m in -window.m..=window.m {
        for n in -window.n..=window.n {
            for (f, set) in &gradients {
                if set.contains(m, n) {
                    built.insert(to_lat(f, m, n));
                }
            }
        }
    }
    let generated = generate(config, window)?.lattice_set();
    Ok(EarsData {
        x,
        s,
        l: lset,
        e,
        window_matches: built == generated,
        compared: built.len().max(generated.len()),
    })
}
