//! Generators and defining relations: SR2-SR9, the sharp reduction SR5′
//! and the relations TSR for the elliptic root basis.
//!
//! Relations are data. Each one is a list of monomials (coefficient and
//! bracket word) whose sum is declared zero.

use crate::ambient::{Vector, Q};
use crate::base_system::{parity, QebsConfig};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// One of ±α, ±α* for a node α.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSym {
    pub node: usize,
    pub star: bool,
    pub negative: bool,
}

impl RootSym {
    pub fn new(node: usize, star: bool, negative: bool) -> Self {
        RootSym { node, star, negative }
    }

    pub fn plus(node: usize) -> Self {
        Self::new(node, false, false)
    }

    pub fn plus_star(node: usize) -> Self {
        Self::new(node, true, false)
    }

    pub fn neg(self) -> Self {
        RootSym { negative: !self.negative, ..self }
    }

    pub fn with_sign(self, negative: bool) -> Self {
        RootSym { negative, ..self }
    }

    pub fn vector(&self, config: &QebsConfig) -> Vector {
        let v = if self.star { config.alpha_star(self.node) } else { config.space().alpha(self.node) };
        if self.negative {
            -&v
        } else {
            v
        }
    }

    pub fn parity(&self, config: &QebsConfig) -> u8 {
        parity(config, &self.vector(config)).expect("elements of ℬ are roots")
    }

    pub fn id(&self) -> String {
        format!("E[{}a{}{}]", if self.negative { "-" } else { "" }, self.node, if self.star { "*" } else { "" })
    }

    pub fn latex(&self) -> String {
        format!(
            "E_{{{}\\alpha_{{{}}}{}}}",
            if self.negative { "-" } else { "" },
            self.node,
            if self.star { "^*" } else { "" }
        )
    }
}

/// ℬ in a fixed order: α_i, α_i*, then the negatives.
pub fn b_set(config: &QebsConfig) -> Vec<RootSym> {
    let n = config.nodes();
    let mut out = Vec::with_capacity(4 * n);
    for negative in [false, true] {
        for star in [false, true] {
            for i in 0..n {
                out.push(RootSym::new(i, star, negative));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// h_σ for the basis vector σ of E with this index.
    Cartan(usize),
    Root(RootSym),
}

impl Symbol {
    pub fn parity(&self, config: &QebsConfig) -> u8 {
        match self {
            Symbol::Cartan(_) => 0,
            Symbol::Root(r) => r.parity(config),
        }
    }

    pub fn id(&self, config: &QebsConfig) -> String {
        match self {
            Symbol::Cartan(i) => format!("h[{}]", config.space().basis_label(*i)),
            Symbol::Root(r) => r.id(),
        }
    }

    fn latex(&self, config: &QebsConfig) -> String {
        match self {
            Symbol::Cartan(i) => {
                let n = config.nodes();
                let sub = match *i {
                    j if j < n => format!("\\alpha_{{{j}}}"),
                    j if j == n => "\\Lambda_\\delta".into(),
                    j if j == n + 1 => "a".into(),
                    _ => "\\Lambda_a".into(),
                };
                format!("h_{{{sub}}}")
            }
            Symbol::Root(r) => r.latex(),
        }
    }
}

/// A bracket word in generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Word {
    Sym(Symbol),
    Bracket(Box<Word>, Box<Word>),
}

impl Word {
    pub fn root(r: RootSym) -> Self {
        Word::Sym(Symbol::Root(r))
    }

    pub fn cartan(i: usize) -> Self {
        Word::Sym(Symbol::Cartan(i))
    }

    pub fn bracket(x: Word, y: Word) -> Self {
        Word::Bracket(Box::new(x), Box::new(y))
    }

    /// (ad x)^n y
    pub fn ad_pow(x: &Word, n: usize, y: Word) -> Self {
        (0..n).fold(y, |acc, _| Word::bracket(x.clone(), acc))
    }

    pub fn parity(&self, config: &QebsConfig) -> u8 {
        match self {
            Word::Sym(s) => s.parity(config),
            Word::Bracket(x, y) => (x.parity(config) + y.parity(config)) % 2,
        }
    }

    pub fn symbols(&self, out: &mut Vec<Symbol>) {
        match self {
            Word::Sym(s) => out.push(*s),
            Word::Bracket(x, y) => {
                x.symbols(out);
                y.symbols(out);
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Word::Sym(_) => 1,
            Word::Bracket(x, y) => x.len() + y.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn to_json(&self, config: &QebsConfig) -> serde_json::Value {
        match self {
            Word::Sym(s) => serde_json::Value::String(s.id(config)),
            Word::Bracket(x, y) => serde_json::Value::Array(vec![x.to_json(config), y.to_json(config)]),
        }
    }

    fn latex(&self, config: &QebsConfig) -> String {
        match self {
            Word::Sym(s) => s.latex(config),
            Word::Bracket(x, y) => format!("[{},{}]", x.latex(config), y.latex(config)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub coeff: Cyclotomic,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    /// Tag such as "SR5" or "TSR10".
    pub tag: String,
    /// Tag plus instantiating data.
    pub label: String,
    pub parity: u8,
    pub monomials: Vec<Monomial>,
}

impl Relation {
    fn new(config: &QebsConfig, tag: &str, data: String, monomials: Vec<(Q, Word)>) -> Self {
        let parity = monomials.first().map(|(_, w)| w.parity(config)).unwrap_or(0);
        Relation {
            tag: tag.into(),
            label: format!("{tag}({data})"),
            parity,
            monomials: monomials.into_iter().map(|(c, word)| Monomial { coeff: c.into(), word }).collect(),
        }
    }

    /// Every monomial has the declared parity.
    pub fn is_homogeneous(&self, config: &QebsConfig) -> bool {
        self.monomials.iter().all(|m| m.word.parity(config) == self.parity)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut v = Vec::new();
        for m in &self.monomials {
            m.word.symbols(&mut v);
        }
        v.into_iter().collect()
    }

    pub fn latex(&self, config: &QebsConfig) -> String {
        let mut s = String::new();
        for (k, m) in self.monomials.iter().enumerate() {
            let c = m.coeff.as_rational();
            let word = m.word.latex(config);
            match c {
                Some(c) if c == Q::one() => {
                    if k > 0 {
                        s.push_str(" + ");
                    }
                }
                Some(c) if c == -Q::one() => s.push_str(if k > 0 { " - " } else { "-" }),
                Some(c) if c < Q::zero() => s.push_str(&format!("{}{} ", if k > 0 { " - " } else { "-" }, -c)),
                Some(c) => s.push_str(&format!("{}{} ", if k > 0 { " + " } else { "" }, c)),
                None => s.push_str(&format!("{}({}) ", if k > 0 { " + " } else { "" }, m.coeff)),
            }
            s.push_str(&word);
        }
        s.push_str(" = 0");
        s
    }
}

/// A labelled, ordered relation list.
#[derive(Clone, Debug)]
pub struct RelationSet {
    pub config: QebsConfig,
    pub preset: String,
    /// Generators that may appear: the Cartan basis and these root symbols.
    pub generators: Vec<RootSym>,
    pub relations: Vec<Relation>,
}

impl RelationSet {
    pub fn counts(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for r in &self.relations {
            *out.entry(r.tag.clone()).or_insert(0) += 1;
        }
        out
    }

    pub fn count(&self, tag: &str) -> usize {
        self.relations.iter().filter(|r| r.tag == tag).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cfg = &self.config;
        let rels: Vec<serde_json::Value> = self
            .relations
            .iter()
            .map(|r| {
                serde_json::json!({
                    "label": r.label,
                    "parity": r.parity,
                    "monomials": r.monomials.iter().map(|m| serde_json::json!({
                        "coeff": m.coeff,
                        "word": m.word.to_json(cfg),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "type": cfg.space().affine_type().to_string(),
            "preset": self.preset,
            "generators": self.generators.iter().map(|g| g.id()).collect::<Vec<_>>(),
            "counts": self.counts(),
            "relations": rels,
        })
    }

    pub fn to_latex(&self) -> String {
        let mut s = String::new();
        for r in &self.relations {
            s.push_str(&format!("% {}\n{}\\\\\n", r.label, r.latex(&self.config)));
        }
        s
    }
}

impl Serialize for RelationSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Ratio J(μ∨, ν) as a rational.
fn coroot_pairing(config: &QebsConfig, mu: &RootSym, nu: &RootSym) -> Q {
    let space = config.space();
    space.coroot_pair(&mu.vector(config), &nu.vector(config)).expect("ℬ elements are non-isotropic")
}

/// x_{μ,ν} = 1 - J(μ∨,ν) if J(μ∨,ν) < 0, else 0.
pub fn x_coeff(config: &QebsConfig, mu: &RootSym, nu: &RootSym) -> Result<u32> {
    if mu == nu || *mu == nu.neg() {
        return Err(Error::domain(format!("x_(μ,ν) needs μ ≠ ±ν, got {} and {}", mu.id(), nu.id())));
    }
    let p = coroot_pairing(config, mu, nu);
    if !p.is_integer() {
        return Err(Error::internal(format!("J({}∨, {}) = {p} is not integral", mu.id(), nu.id())));
    }
    let p = p.to_integer();
    Ok(if p < 0 { (1 - p) as u32 } else { 0 })
}

/// 𝒜 = {(α, β, y) : α ≠ β, J(α, β∨) = -1, k(α) y = k(β)}.
pub fn triples_a(config: &QebsConfig) -> Vec<(usize, usize, u32)> {
    let space = config.space();
    let n = config.nodes();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && space.cartan_entry(b, a) == -1 && config.k(b) % config.k(a) == 0 {
                out.push((a, b, (config.k(b) / config.k(a)) as u32));
            }
        }
    }
    out
}

fn e(r: RootSym) -> Word {
    Word::root(r)
}

fn sr5_instance(config: &QebsConfig, tag: &str, mu: RootSym, nu: RootSym) -> Relation {
    // x = 0 would assert E_ν = 0; the relation is [E_μ, E_ν] = 0 then.
    let x = x_coeff(config, &mu, &nu).expect("pair in (ℬ×ℬ)′").max(1) as usize;
    Relation::new(
        config,
        tag,
        format!("{},{}", mu.id(), nu.id()),
        vec![(Q::one(), Word::ad_pow(&e(mu), x, e(nu)))],
    )
}

/// h_{μ∨} in the Cartan basis.
pub fn coroot_cartan(config: &QebsConfig, mu: &RootSym) -> Vec<(usize, Q)> {
    let space = config.space();
    let v = mu.vector(config);
    let c = Q::from_integer(2) / space.norm(&v);
    v.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, *x * c)).collect()
}

fn pairs_prime(config: &QebsConfig) -> Vec<(RootSym, RootSym)> {
    let b = b_set(config);
    let mut out = Vec::new();
    for &mu in &b {
        for &nu in &b {
            if mu != nu && mu != nu.neg() {
                out.push((mu, nu));
            }
        }
    }
    out
}

fn emit_sr_with(config: &QebsConfig, preset: &str, sr5: &[(RootSym, RootSym)], tag5: &str) -> RelationSet {
    let space = config.space();
    let dim = space.dim();
    let b = b_set(config);
    let mut rels = Vec::new();

    for s in 0..dim {
        for t in s + 1..dim {
            rels.push(Relation::new(
                config,
                "SR2",
                format!("{},{}", Symbol::Cartan(s).id(config), Symbol::Cartan(t).id(config)),
                vec![(Q::one(), Word::bracket(Word::cartan(s), Word::cartan(t)))],
            ));
        }
    }
    for s in 0..dim {
        let sigma = Vector::basis(dim, s);
        for &mu in &b {
            let j = space.pair(&sigma, &mu.vector(config));
            let mut mons = vec![(Q::one(), Word::bracket(Word::cartan(s), e(mu)))];
            if !j.is_zero() {
                mons.push((-j, e(mu)));
            }
            rels.push(Relation::new(config, "SR3", format!("{},{}", Symbol::Cartan(s).id(config), mu.id()), mons));
        }
    }
    for &mu in b.iter().filter(|m| !m.negative) {
        let mut mons = vec![(Q::one(), Word::bracket(e(mu), e(mu.neg())))];
        for (i, c) in coroot_cartan(config, &mu) {
            mons.push((-c, Word::cartan(i)));
        }
        rels.push(Relation::new(config, "SR4", mu.id(), mons));
    }
    for &(mu, nu) in sr5 {
        rels.push(sr5_instance(config, tag5, mu, nu));
    }
    for (a, bb, y) in triples_a(config) {
        let c = config.c_of(a);
        let y = y as usize;
        let data = format!("a{a},a{bb},{y}");
        let (al, als, be, bes) = (RootSym::plus(a), RootSym::plus_star(a), RootSym::plus(bb), RootSym::plus_star(bb));
        rels.push(Relation::new(
            config,
            "SR6",
            data.clone(),
            vec![
                (Q::from_integer(c), Word::ad_pow(&e(als), y, e(be))),
                (-Q::one(), Word::ad_pow(&e(al), c as usize * y, e(bes))),
            ],
        ));
        let sign = if c % 2 == 1 { 1 } else { -1 }; // (-1)^(c+1)
        rels.push(Relation::new(
            config,
            "SR7",
            data.clone(),
            vec![
                (Q::from_integer(sign * c), Word::ad_pow(&e(als.neg()), y, e(be.neg()))),
                (-Q::one(), Word::ad_pow(&e(al.neg()), c as usize * y, e(bes.neg()))),
            ],
        ));
        for (tag, neg) in [("SR8", false), ("SR9", true)] {
            for i in 1..y {
                let w = Word::ad_pow(&e(al.with_sign(neg)), i, Word::ad_pow(&e(als.with_sign(neg)), y - i, e(be.with_sign(neg))));
                rels.push(Relation::new(config, tag, format!("{data},{i}"), vec![(Q::one(), w)]));
            }
        }
    }
    RelationSet { config: config.clone(), preset: preset.into(), generators: b, relations: rels }
}

/// SR2-SR9. SR1 is carried by the choice of the l+4 basis Cartan
/// generators, so it has no instances.
pub fn emit_sr(config: &QebsConfig) -> RelationSet {
    emit_sr_with(config, "sr", &pairs_prime(config), "SR5")
}

/// ((Π×Π)♯, (ℬ×ℬ)♯)
pub fn sharp_sets(config: &QebsConfig) -> (Vec<(usize, usize)>, BTreeSet<(RootSym, RootSym)>) {
    let space = config.space();
    let n = config.nodes();
    let mut pi_sharp = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let star_pair = space.coroot_pair(&config.alpha_star(a), &space.alpha(b)).unwrap();
            let first = config.k(a) == config.k(b) && star_pair == -Q::one();
            let second = config.k(a) < config.k(b) && space.cartan_entry(b, a) == -1;
            if first || second {
                pi_sharp.push((a, b));
            }
        }
    }
    let pm = |out: &mut BTreeSet<(RootSym, RootSym)>, mu: RootSym, nu: RootSym| {
        for e1 in [false, true] {
            for e2 in [false, true] {
                out.insert((mu.with_sign(e1), nu.with_sign(e2)));
            }
        }
    };
    let mut b_sharp = BTreeSet::new();
    for (mu, nu) in pairs_prime(config) {
        if space.pair(&mu.vector(config), &nu.vector(config)).is_zero() {
            b_sharp.insert((mu, nu));
        }
    }
    for &(a, b) in &pi_sharp {
        let (al, als, be, bes) = (RootSym::plus(a), RootSym::plus_star(a), RootSym::plus(b), RootSym::plus_star(b));
        for (mu, nu) in [(al, be), (be, al), (als, be), (be, als), (al, bes)] {
            pm(&mut b_sharp, mu, nu);
        }
    }
    for a in 0..n {
        pm(&mut b_sharp, RootSym::plus(a), RootSym::plus_star(a));
        pm(&mut b_sharp, RootSym::plus_star(a), RootSym::plus(a));
    }
    (pi_sharp, b_sharp)
}

/// SR1-4, SR5′ on (ℬ×ℬ)♯, SR6-9.
pub fn emit_sr_sharp(config: &QebsConfig) -> RelationSet {
    let (_, sharp) = sharp_sets(config);
    let order: Vec<(RootSym, RootSym)> = pairs_prime(config).into_iter().filter(|p| sharp.contains(p)).collect();
    let set = emit_sr_with(config, "sr-sharp", &order, "SR5'");
    debug_assert!(set.count("SR5'") <= pairs_prime(config).len());
    set
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticBasis {
    /// δ-coefficients x_α.
    pub x: Vec<i64>,
    #[serde(serialize_with = "ser_q_vec")]
    pub m: Vec<Q>,
    #[serde(serialize_with = "crate::ser_q")]
    pub m_max: Q,
    pub pi_max: Vec<usize>,
    /// Π ∪ Π_max*
    pub gamma: Vec<RootSym>,
}

fn ser_q_vec<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&q.to_string())?;
    }
    seq.end()
}

impl EllipticBasis {
    /// Γ(R,G;S) = Γ(R,G) ∩ (S ∪ S*).
    pub fn restricted(&self, subset: &[usize]) -> BTreeSet<RootSym> {
        self.gamma.iter().filter(|r| subset.contains(&r.node)).copied().collect()
    }
}

/// Γ(R,G) with m_α = c(α) J(α,α) x_α / k(α).
pub fn elliptic_basis(config: &QebsConfig) -> EllipticBasis {
    let space = config.space();
    let n = config.nodes();
    let x = space.marks().to_vec();
    let m: Vec<Q> = (0..n)
        .map(|i| {
            let alpha = space.alpha(i);
            Q::from_integer(config.c_of(i)) * space.norm(&alpha) * Q::from_integer(x[i]) / Q::from_integer(config.k(i))
        })
        .collect();
    let m_max = *m.iter().max().unwrap();
    let pi_max: Vec<usize> = (0..n).filter(|&i| m[i] == m_max).collect();
    let mut gamma: Vec<RootSym> = (0..n).map(RootSym::plus).collect();
    gamma.extend(pi_max.iter().map(|&i| RootSym::plus_star(i)));
    EllipticBasis { x, m, m_max, pi_max, gamma }
}

/// TSR1-4, 5′, 6-9 (the SR♯ relations written only in Γ ∪ -Γ) and TSR10-12.
pub fn emit_tsr(config: &QebsConfig) -> RelationSet {
    let basis = elliptic_basis(config);
    let allowed: BTreeSet<RootSym> = basis.gamma.iter().flat_map(|g| [*g, g.neg()]).collect();
    let sharp = emit_sr_sharp(config);
    let mut rels: Vec<Relation> = sharp
        .relations
        .into_iter()
        .filter(|r| {
            r.symbols().iter().all(|s| match s {
                Symbol::Cartan(_) => true,
                Symbol::Root(x) => allowed.contains(x),
            })
        })
        .map(|mut r| {
            r.tag = format!("T{}", r.tag);
            r.label = format!("T{}", r.label);
            r
        })
        .collect();

    let space = config.space();
    let n = config.nodes();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let gs = basis.restricted(&[a, b]);
            let want: BTreeSet<RootSym> = [RootSym::plus(a), RootSym::plus_star(a), RootSym::plus(b)].into_iter().collect();
            if gs != want {
                continue;
            }
            let (jab, jba) = (space.cartan_entry(a, b), space.cartan_entry(b, a));
            if jab == 0 || jba == 0 {
                continue;
            }
            let data = format!("a{a},a{b}");
            let tsr10 = Q::new(jab, jba) == Q::from_integer(config.c_of(a));
            let ratio = Q::new(jba, jab);
            let tsr11 = config.g(a).is_empty() && (ratio == Q::from_integer(2) || ratio == Q::from_integer(3));
            for neg in [false, true] {
                let (al, als, be) = (RootSym::plus(a).with_sign(neg), RootSym::plus_star(a).with_sign(neg), RootSym::plus(b).with_sign(neg));
                let sgn = if neg { "-" } else { "+" };
                let first = Word::bracket(e(als), Word::bracket(e(al), e(be)));
                if tsr10 {
                    rels.push(Relation::new(config, "TSR10", format!("{data},{sgn}"), vec![(Q::one(), first.clone())]));
                }
                if tsr11 {
                    rels.push(Relation::new(config, "TSR11", format!("{data},{sgn},1"), vec![(Q::one(), first.clone())]));
                    let second = Word::bracket(Word::bracket(e(als), e(be)), Word::bracket(e(al), e(be)));
                    rels.push(Relation::new(config, "TSR11", format!("{data},{sgn},2"), vec![(Q::one(), second)]));
                }
            }
        }
    }
    // TSR12 for chains α - β - γ with α ⟂ γ.
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                if space.cartan_entry(a, b) >= 0 || space.cartan_entry(c, b) >= 0 || space.cartan_entry(a, c) != 0 {
                    continue;
                }
                let gs = basis.restricted(&[a, b, c]);
                let want: BTreeSet<RootSym> =
                    [RootSym::plus(a), RootSym::plus(b), RootSym::plus_star(b), RootSym::plus(c)].into_iter().collect();
                if gs != want {
                    continue;
                }
                let p1 = -space.cartan_entry(b, a);
                let p2 = -space.coroot_pair(&config.alpha_star(b), &space.alpha(c)).unwrap();
                let p2 = p2.to_integer();
                for neg in [false, true] {
                    let sgn = if neg { "-" } else { "+" };
                    let left = Word::ad_pow(&e(RootSym::plus(b).with_sign(neg)), p1 as usize, e(RootSym::plus(a).with_sign(neg)));
                    let right = Word::ad_pow(&e(RootSym::plus_star(b).with_sign(neg)), p2 as usize, e(RootSym::plus(c).with_sign(neg)));
                    rels.push(Relation::new(
                        config,
                        "TSR12",
                        format!("a{a},a{b},a{c},{sgn}"),
                        vec![(Q::one(), Word::bracket(left, right))],
                    ));
                }
            }
        }
    }
    RelationSet {
        config: config.clone(),
        preset: "tsr".into(),
        generators: allowed.into_iter().collect(),
        relations: rels,
    }
}

impl Serialize for RootSym {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.id())
    }
}

impl fmt::Display for RootSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> QebsConfig {
        QebsConfig::from_json(text).unwrap()
    }

    fn trivial(t: &str) -> QebsConfig {
        QebsConfig::trivial(t.parse().unwrap()).unwrap()
    }

    #[test]
    fn x_coeff_values() {
        let c = trivial("D3^(2)");
        // J(α_0∨, α_1) = -2
        assert_eq!(x_coeff(&c, &RootSym::plus(0), &RootSym::plus(1)).unwrap(), 3);
        // J(α_1∨, α_0) = -1
        assert_eq!(x_coeff(&c, &RootSym::plus(1), &RootSym::plus(0)).unwrap(), 2);
        assert_eq!(x_coeff(&c, &RootSym::plus(0), &RootSym::plus(2)).unwrap(), 0);
        assert!(x_coeff(&c, &RootSym::plus(0), &RootSym::plus(0).neg()).is_err());
    }

    #[test]
    fn triples_for_a2_and_d3() {
        let a = triples_a(&trivial("A2^(1)"));
        assert_eq!(a.len(), 6);
        assert!(a.iter().all(|t| t.2 == 1));
        let d = triples_a(&cfg(r#"{"type":"D3^(2)","k":{"a0":1,"a1":2,"a2":1}}"#));
        assert!(d.contains(&(0, 1, 2)));
        assert!(d.contains(&(2, 1, 2)));
        assert!(!d.iter().any(|t| t.0 == 1));
    }

    #[test]
    fn sr_counts() {
        let c = trivial("D3^(2)");
        let set = emit_sr(&c);
        assert_eq!(b_set(&c).len(), 12);
        assert_eq!(set.count("SR4"), 6);
        assert_eq!(set.count("SR3"), 6 * 12);
        assert_eq!(set.count("SR2"), 15);
        assert!(set.relations.iter().all(|r| r.is_homogeneous(&c)));
    }

    #[test]
    fn sr6_for_c1_y1() {
        let c = trivial("A2^(1)");
        let set = emit_sr(&c);
        let r = set.relations.iter().find(|r| r.tag == "SR6").unwrap();
        let (a, b) = (RootSym::plus(0), RootSym::plus(1));
        assert_eq!(r.monomials[0].word, Word::bracket(e(a.with_sign(false).into_star()), e(b)));
        assert_eq!(r.monomials[1].word, Word::bracket(e(a), e(RootSym::plus_star(1))));
    }

    #[test]
    fn sharp_is_strictly_smaller_for_d3() {
        let c = trivial("D3^(2)");
        let full = emit_sr(&c).count("SR5");
        let sharp = emit_sr_sharp(&c).count("SR5'");
        assert!(sharp < full, "{sharp} vs {full}");
        let (_, b) = sharp_sets(&c);
        for a in 0..3 {
            assert!(b.contains(&(RootSym::plus(a), RootSym::plus_star(a))));
            assert!(b.contains(&(RootSym::plus_star(a).neg(), RootSym::plus(a))));
        }
    }

    #[test]
    fn elliptic_basis_a2() {
        let b = elliptic_basis(&trivial("A2^(1)"));
        assert_eq!(b.x, vec![1, 1, 1]);
        assert_eq!(b.pi_max, vec![0, 1, 2]);
        assert_eq!(b.gamma.len(), 6);
    }

    #[test]
    fn tsr_instances() {
        // equal m on every node: Γ = Π ∪ Π*, no TSR10-12
        let c = cfg(r#"{"type":"D3^(2)","k":{"a0":1,"a1":2,"a2":1}}"#);
        assert_eq!(elliptic_basis(&c).gamma.len(), 6);
        let t = emit_tsr(&c).counts();
        assert!(!t.contains_key("TSR10") && !t.contains_key("TSR12"), "{t:?}");

        // m = (2,4,2): Γ = Π ∪ {α_1*}
        let d = emit_tsr(&trivial("D3^(2)"));
        assert_eq!(d.count("TSR11"), 8);
        assert_eq!(d.count("TSR12"), 4);

        let b = emit_tsr(&trivial("B3^(1)"));
        assert_eq!(elliptic_basis(&trivial("B3^(1)")).pi_max, vec![2]);
        assert_eq!(b.count("TSR10"), 4);
        assert_eq!(b.count("TSR11"), 4);
    }

    #[test]
    fn json_is_deterministic() {
        let c = trivial("D3^(2)");
        let a = serde_json::to_string(&emit_tsr(&c)).unwrap();
        let b = serde_json::to_string(&emit_tsr(&c)).unwrap();
        assert_eq!(a, b);
    }

    impl RootSym {
        fn into_star(self) -> Self {
            RootSym { star: true, ..self }
        }
    }
}
