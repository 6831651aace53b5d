//! The base system 𝒟 = (E, Π, a, k, g): configuration, the KG axioms and
//! the per-node quantities c(α), α*, Π_c(α), Π^B.

use crate::ambient::{build_ambient, AffineType, AmbientSpace, Vector, Q};
use crate::error::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// The arithmetic progressions that can occur as g(α).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GClass {
    Empty,
    Z,
    TwoZ,
    TwoZPlusOne,
    FourZ,
    FourZPlusTwo,
}

impl GClass {
    pub const ALL: [GClass; 6] = [
        GClass::Empty,
        GClass::Z,
        GClass::TwoZ,
        GClass::TwoZPlusOne,
        GClass::FourZ,
        GClass::FourZPlusTwo,
    ];

    /// (modulus, residue), or `None` for the empty set.
    pub fn progression(self) -> Option<(i64, i64)> {
        match self {
            GClass::Empty => None,
            GClass::Z => Some((1, 0)),
            GClass::TwoZ => Some((2, 0)),
            GClass::TwoZPlusOne => Some((2, 1)),
            GClass::FourZ => Some((4, 0)),
            GClass::FourZPlusTwo => Some((4, 2)),
        }
    }

    pub fn from_progression(modulus: i64, residue: i64) -> Option<GClass> {
        match (modulus, residue.mod_floor(&modulus.max(1))) {
            (1, 0) => Some(GClass::Z),
            (2, 0) => Some(GClass::TwoZ),
            (2, 1) => Some(GClass::TwoZPlusOne),
            (4, 0) => Some(GClass::FourZ),
            (4, 2) => Some(GClass::FourZPlusTwo),
            _ => None,
        }
    }

    pub fn contains(self, m: i64) -> bool {
        match self.progression() {
            None => false,
            Some((b, r)) => m.mod_floor(&b) == r,
        }
    }

    pub fn is_empty(self) -> bool {
        self == GClass::Empty
    }

    /// The set ρ·g for rational ρ > 0, if it is one of the KG3 targets
    /// ∅, ℤ, 2ℤ, 2ℤ+1. `Err` carries a description of the scaled set.
    pub fn scaled_kg3(self, ratio: Q) -> std::result::Result<GClass, String> {
        let Some((b, r)) = self.progression() else {
            return Ok(GClass::Empty);
        };
        let b2 = ratio * Q::from_integer(b);
        let r2 = ratio * Q::from_integer(r);
        if !b2.is_integer() || !r2.is_integer() {
            return Err(format!("{b2}Z+{r2} is not a set of integers"));
        }
        let (b2, r2) = (b2.to_integer(), r2.to_integer());
        match GClass::from_progression(b2, r2) {
            Some(c @ (GClass::Z | GClass::TwoZ | GClass::TwoZPlusOne)) => Ok(c),
            _ => Err(format!("{b2}Z+{}", r2.mod_floor(&b2))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GClass::Empty => "empty",
            GClass::Z => "Z",
            GClass::TwoZ => "2Z",
            GClass::TwoZPlusOne => "2Z+1",
            GClass::FourZ => "4Z",
            GClass::FourZPlusTwo => "4Z+2",
        }
    }
}

impl fmt::Display for GClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for GClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Ok(match t.as_str() {
            "empty" | "Empty" | "" | "0" => GClass::Empty,
            "Z" => GClass::Z,
            "2Z" => GClass::TwoZ,
            "2Z+1" => GClass::TwoZPlusOne,
            "4Z" => GClass::FourZ,
            "4Z+2" => GClass::FourZPlusTwo,
            _ => return Err(Error::config(format!("unknown g class {s:?}"))),
        })
    }
}

impl Serialize for GClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for GClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Config file shape: `{"type": "D3^(2)", "k": {"a0": 1}, "g": {"a0": "2Z+1"}}`.
///
/// Missing nodes take the value given for another node of the same W-orbit;
/// a missing g defaults to empty.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConfigFile {
    #[serde(rename = "type")]
    pub affine_type: AffineType,
    #[serde(default)]
    pub k: BTreeMap<String, i64>,
    #[serde(default)]
    pub g: BTreeMap<String, GClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// The quintuple 𝒟. Construction checks only shape; axioms are reported by
/// [`validate_qebs`].
#[derive(Clone, Debug)]
pub struct QebsConfig {
    space: AmbientSpace,
    k: Vec<i64>,
    g: Vec<GClass>,
}

fn node_index(key: &str, nodes: usize) -> Result<usize> {
    let idx = key
        .strip_prefix('a')
        .or_else(|| key.strip_prefix("alpha"))
        .and_then(|s| s.trim_start_matches('_').parse::<usize>().ok())
        .ok_or_else(|| Error::config(format!("bad node key {key:?}, expected a0..a{}", nodes - 1)))?;
    if idx >= nodes {
        return Err(Error::config(format!("node key {key:?} out of range a0..a{}", nodes - 1)));
    }
    Ok(idx)
}

impl QebsConfig {
    pub fn new(space: AmbientSpace, k: Vec<i64>, g: Vec<GClass>) -> Result<Self> {
        let n = space.nodes();
        if k.len() != n || g.len() != n {
            return Err(Error::config(format!("k and g must have {n} entries")));
        }
        if let Some(i) = k.iter().position(|&x| x <= 0) {
            return Err(Error::config(format!("k(a{i}) = {} is not a positive integer", k[i])));
        }
        Ok(QebsConfig { space, k, g })
    }

    /// k ≡ 1 and g ≡ ∅.
    pub fn trivial(affine_type: AffineType) -> Result<Self> {
        let space = build_ambient(affine_type)?;
        let n = space.nodes();
        Self::new(space, vec![1; n], vec![GClass::Empty; n])
    }

    pub fn from_file(file: &ConfigFile) -> Result<Self> {
        let space = build_ambient(file.affine_type)?;
        let n = space.nodes();
        let mut k: Vec<Option<i64>> = vec![None; n];
        for (key, &v) in &file.k {
            k[node_index(key, n)?] = Some(v);
        }
        let mut g: Vec<Option<GClass>> = vec![None; n];
        for (key, &v) in &file.g {
            g[node_index(key, n)?] = Some(v);
        }
        let orbit_value = |i: usize| {
            k[i].or_else(|| {
                (0..n)
                    .filter(|&j| space.node_class(j) == space.node_class(i))
                    .find_map(|j| k[j])
            })
        };
        let mut kk = Vec::with_capacity(n);
        for i in 0..n {
            kk.push(orbit_value(i).ok_or_else(|| Error::config(format!("no k value for node a{i} or its orbit")))?);
        }
        let mut gg = Vec::with_capacity(n);
        for i in 0..n {
            let v = g[i].or_else(|| {
                (0..n)
                    .filter(|&j| space.node_class(j) == space.node_class(i))
                    .find_map(|j| g[j])
            });
            gg.push(v.unwrap_or(GClass::Empty));
        }
        Self::new(space, kk, gg)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigFile =
            serde_json::from_str(text).map_err(|e| Error::config(format!("config parse: {e}")))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> ConfigFile {
        let n = self.nodes();
        ConfigFile {
            affine_type: self.space.affine_type(),
            k: (0..n).map(|i| (format!("a{i}"), self.k[i])).collect(),
            g: (0..n).map(|i| (format!("a{i}"), self.g[i])).collect(),
            name: None,
        }
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.space
    }

    pub fn nodes(&self) -> usize {
        self.space.nodes()
    }

    pub fn k(&self, i: usize) -> i64 {
        self.k[i]
    }

    pub fn g(&self, i: usize) -> GClass {
        self.g[i]
    }

    pub fn k_values(&self) -> &[i64] {
        &self.k
    }

    pub fn g_values(&self) -> &[GClass] {
        &self.g
    }

    pub fn with_g(&self, i: usize, g: GClass) -> Self {
        let mut out = self.clone();
        out.g[i] = g;
        out
    }

    /// The same k with g ≡ ∅.
    pub fn special_part(&self) -> Self {
        let mut out = self.clone();
        out.g.iter_mut().for_each(|g| *g = GClass::Empty);
        out
    }

    pub fn with_k(&self, k: Vec<i64>) -> Result<Self> {
        Self::new(self.space.clone(), k, self.g.clone())
    }

    pub fn is_special(&self) -> bool {
        self.g.iter().all(|g| g.is_empty())
    }

    /// GCM is A_l^{(1)} with g ≡ ∅ and k ≡ 1.
    pub fn is_a11(&self) -> bool {
        self.space.affine_type().family() == crate::ambient::Family::A1
            && self.is_special()
            && self.k.iter().all(|&k| k == 1)
    }

    pub fn c_of(&self, i: usize) -> i64 {
        c_of_class(self.g[i])
    }

    /// α* = c(α)α + k(α)a.
    pub fn alpha_star(&self, i: usize) -> Vector {
        let mut v = self.space.alpha(i).scale(Q::from_integer(self.c_of(i)));
        v.0[self.space.a_index()] = Q::from_integer(self.k[i]);
        v
    }

    /// Π_c(α) = {β ≠ α : J(β, α) ≠ 0}.
    pub fn pi_c(&self, i: usize) -> Vec<usize> {
        (0..self.nodes()).filter(|&j| j != i && self.space.cartan_entry(j, i) != 0).collect()
    }

    /// Π^B = {α : J(α∨, β) = -2 for all β ∈ Π_c(α)}.
    pub fn pi_b(&self) -> Vec<usize> {
        (0..self.nodes())
            .filter(|&i| self.pi_c(i).iter().all(|&j| self.space.cartan_entry(i, j) == -2))
            .collect()
    }

    pub fn k_ratio(&self, num: usize, den: usize) -> Q {
        Q::new(self.k[num], self.k[den])
    }
}

pub fn c_of_class(g: GClass) -> i64 {
    if matches!(g, GClass::Z | GClass::TwoZPlusOne) {
        2
    } else {
        1
    }
}

pub fn c_of(config: &QebsConfig, i: usize) -> i64 {
    config.c_of(i)
}

pub fn alpha_star(config: &QebsConfig, i: usize) -> Vector {
    config.alpha_star(i)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: String,
    pub pass: bool,
    /// Failing pair (α, β) as node indices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl AxiomCheck {
    fn pass(axiom: &str) -> Self {
        AxiomCheck { axiom: axiom.into(), pass: true, witness: None, detail: String::new() }
    }

    fn fail(axiom: &str, witness: Option<(usize, usize)>, detail: String) -> Self {
        AxiomCheck { axiom: axiom.into(), pass: false, witness, detail }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QebsReport {
    pub affine_type: String,
    pub checks: Vec<AxiomCheck>,
    pub pi_c: Vec<Vec<usize>>,
    pub pi_b: Vec<usize>,
    pub valid: bool,
}

impl QebsReport {
    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

fn invariance(space: &AmbientSpace, name: &str, same: impl Fn(usize, usize) -> bool) -> AxiomCheck {
    for (i, j) in space.minus_one_edges() {
        if !same(i, j) {
            return AxiomCheck::fail(name, Some((i, j)), format!("differs across the edge a{i}-a{j}"));
        }
    }
    AxiomCheck::pass(name)
}

pub fn validate_qebs(config: &QebsConfig) -> QebsReport {
    let space = config.space();
    let n = config.nodes();
    let mut checks = Vec::new();

    checks.push(invariance(space, "k-invariant", |i, j| config.k(i) == config.k(j)));
    checks.push(invariance(space, "g-invariant", |i, j| config.g(i) == config.g(j)));

    let gcd = config.k.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    checks.push(if gcd == 1 {
        AxiomCheck::pass("k-gcd")
    } else {
        AxiomCheck::fail("k-gcd", None, format!("gcd of k is {gcd}"))
    });

    let mut kg1 = AxiomCheck::pass("KG1");
    'outer: for a in 0..n {
        for b in config.pi_c(a) {
            // J(β∨, α) = a_{βα}
            if space.cartan_entry(b, a) != -1 {
                continue;
            }
            let r1 = config.k_ratio(b, a);
            let r2 = Q::from_integer(space.cartan_entry(a, b)) * config.k_ratio(a, b);
            if !r1.is_integer() || !r2.is_integer() {
                kg1 = AxiomCheck::fail(
                    "KG1",
                    Some((a, b)),
                    format!("k(b)/k(a) = {r1}, J(a∨,b) k(a)/k(b) = {r2}"),
                );
                break 'outer;
            }
        }
    }
    checks.push(kg1);

    let pib = config.pi_b();
    let mut kg2 = AxiomCheck::pass("KG2");
    for a in 0..n {
        if !pib.contains(&a) && !config.g(a).is_empty() {
            kg2 = AxiomCheck::fail("KG2", Some((a, a)), format!("g(a{a}) = {} but a{a} is not in Pi^B", config.g(a)));
            break;
        }
    }
    checks.push(kg2);

    let mut kg3 = AxiomCheck::pass("KG3");
    'kg3: for &a in &pib {
        if config.g(a).is_empty() {
            continue;
        }
        for b in config.pi_c(a) {
            if let Err(set) = config.g(a).scaled_kg3(config.k_ratio(a, b)) {
                kg3 = AxiomCheck::fail("KG3", Some((a, b)), format!("g(a{a}) k(a{a})/k(a{b}) = {set}"));
                break 'kg3;
            }
        }
    }
    checks.push(kg3);

    let valid = checks.iter().all(|c| c.pass);
    QebsReport {
        affine_type: space.affine_type().to_string(),
        checks,
        pi_c: (0..n).map(|i| config.pi_c(i)).collect(),
        pi_b: pib,
        valid,
    }
}

/// p(ρ): 1 iff 2ρ is a root. Errors if ρ is not a root.
pub fn parity(config: &QebsConfig, rho: &Vector) -> Result<u8> {
    if !crate::roots::contains(config, rho) {
        return Err(Error::domain(format!("{rho} is not in R(k,g)")));
    }
    Ok(crate::roots::contains(config, &rho.scale(Q::from_integer(2))) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> QebsConfig {
        QebsConfig::from_json(text).unwrap()
    }

    #[test]
    fn a2_trivial_passes_with_empty_pib() {
        let c = cfg(r#"{"type":"A2^(1)","k":{"a0":1}}"#);
        let r = validate_qebs(&c);
        assert!(r.valid);
        assert!(r.pi_b.is_empty());
    }

    #[test]
    fn d3_odd_doubling_passes() {
        let c = cfg(r#"{"type":"D3^(2)","k":{"a0":1,"a1":1,"a2":1},"g":{"a0":"2Z+1","a1":"empty","a2":"empty"}}"#);
        let r = validate_qebs(&c);
        assert!(r.valid, "{r:?}");
        assert!(r.pi_b.contains(&0));
    }

    #[test]
    fn kg2_catches_middle_node() {
        let c = cfg(r#"{"type":"D3^(2)","k":{"a0":1,"a1":1,"a2":1},"g":{"a1":"Z"}}"#);
        let r = validate_qebs(&c);
        assert!(!r.check("KG2").unwrap().pass);
    }

    #[test]
    fn kg3_mutant() {
        let c = cfg(r#"{"type":"D3^(2)","k":{"a0":1,"a1":2,"a2":1},"g":{"a0":"Z"}}"#);
        let r = validate_qebs(&c);
        let kg3 = r.check("KG3").unwrap();
        assert!(!kg3.pass);
        assert_eq!(kg3.witness, Some((0, 1)));
        assert!(r.check("KG1").unwrap().pass);
    }

    #[test]
    fn invariance_failure_is_reported_not_raised() {
        let c = cfg(r#"{"type":"A2^(1)","k":{"a0":1,"a1":2,"a2":1}}"#);
        let r = validate_qebs(&c);
        assert!(!r.check("k-invariant").unwrap().pass);
    }

    #[test]
    fn orbit_values_fill_missing_nodes() {
        let c = cfg(r#"{"type":"D4^(2)","k":{"a0":1,"a1":2,"a3":1}}"#);
        assert_eq!(c.k_values(), &[1, 2, 2, 1]);
        assert!(QebsConfig::from_json(r#"{"type":"D4^(2)","k":{"a0":1}}"#).is_err());
    }

    #[test]
    fn c_values() {
        assert_eq!(c_of_class(GClass::Z), 2);
        assert_eq!(c_of_class(GClass::TwoZPlusOne), 2);
        assert_eq!(c_of_class(GClass::Empty), 1);
        assert_eq!(c_of_class(GClass::FourZPlusTwo), 1);
    }

    #[test]
    fn alpha_star_formula() {
        let c = cfg(r#"{"type":"D3^(2)","k":{"a0":1,"a1":1,"a2":1},"g":{"a0":"2Z+1"}}"#);
        let s = c.space();
        assert_eq!(c.alpha_star(1), &s.alpha(1) + &s.a());
        assert_eq!(c.alpha_star(0), &s.alpha(0).scale(Q::from_integer(2)) + &s.a());
        for i in 0..3 {
            assert_eq!(s.pair(&c.alpha_star(i), &s.a()), Q::from_integer(0));
            let cc = Q::from_integer(c.c_of(i));
            assert_eq!(s.norm(&c.alpha_star(i)), cc * cc * s.norm(&s.alpha(i)));
        }
    }

    #[test]
    fn gclass_parse_and_scale() {
        for g in GClass::ALL {
            assert_eq!(g.label().parse::<GClass>().unwrap(), g);
        }
        assert!("3Z".parse::<GClass>().is_err());
        assert_eq!(GClass::FourZ.scaled_kg3(Q::new(1, 2)), Ok(GClass::TwoZ));
        assert_eq!(GClass::FourZPlusTwo.scaled_kg3(Q::new(1, 2)), Ok(GClass::TwoZPlusOne));
        assert!(GClass::FourZ.scaled_kg3(Q::from_integer(1)).is_err());
        assert!(GClass::Z.scaled_kg3(Q::new(1, 2)).is_err());
        assert!(GClass::TwoZPlusOne.contains(-3));
        assert!(!GClass::FourZPlusTwo.contains(4));
    }
}
