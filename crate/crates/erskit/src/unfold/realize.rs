//! The images π(E_{±μ}), π(h_σ) in the loop superalgebra and the check that
//! they satisfy the defining relations.

use super::graded::{GradedAlgebra, CARTAN};
use super::handy::{build_handy, HandyDatum};
use super::loop_alg::{LoopAlgebra, LoopElement};
use crate::ambient::{Vector, Q};
use crate::base_system::{GClass, QebsConfig};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::presentation::{emit_sr, RelationSet, RootSym, Symbol, Word};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

fn cy(q: Q) -> Cyclotomic {
    Cyclotomic::from_q(q)
}

fn cyi(n: i64) -> Cyclotomic {
    Cyclotomic::from_int(n)
}

/// Largest 𝔊̄-height among the components of π(E_{±μ}).
pub fn image_height(config: &QebsConfig, r: &RootSym) -> usize {
    match (config.g(r.node), r.star) {
        (GClass::Empty, _) | (GClass::TwoZ, _) => 1,
        (GClass::Z, false) | (GClass::TwoZPlusOne, false) => 1,
        _ => 2,
    }
}

/// Height bound sufficient to evaluate `word` under π.
pub fn word_height(config: &QebsConfig, word: &Word) -> usize {
    let mut syms = Vec::new();
    word.symbols(&mut syms);
    let (mut pos, mut neg) = (0, 0);
    for s in syms {
        if let Symbol::Root(r) = s {
            if r.negative {
                neg += image_height(config, &r);
            } else {
                pos += image_height(config, &r);
            }
        }
    }
    pos.max(neg).max(2)
}

/// Height bound for a relation set.
pub fn auto_height(set: &RelationSet) -> usize {
    set.relations.iter().flat_map(|r| r.monomials.iter()).map(|m| word_height(&set.config, &m.word)).max().unwrap_or(2)
}

/// π for one configuration, over a graded algebra of fixed height.
pub struct Realization {
    pub config: QebsConfig,
    pub graded: GradedAlgebra,
    kappa: Q,
    kappa_ratios: Vec<(String, String, Q)>,
    lambda_delta: LoopElement,
    lambda_delta_literal: bool,
    roots: HashMap<RootSym, LoopElement>,
}

impl Realization {
    pub fn new(config: &QebsConfig, height: usize) -> Result<Self> {
        let hd = build_handy(config)?;
        Self::with_datum(config, hd, height)
    }

    pub fn with_datum(config: &QebsConfig, hd: HandyDatum, height: usize) -> Result<Self> {
        let graded = GradedAlgebra::build(hd, height)?;
        let mut r = Realization {
            config: config.clone(),
            graded,
            kappa: Q::zero(),
            kappa_ratios: Vec::new(),
            lambda_delta: LoopElement::zero(),
            lambda_delta_literal: true,
            roots: HashMap::new(),
        };
        for node in 0..config.nodes() {
            for star in [false, true] {
                for neg in [false, true] {
                    let sym = RootSym::new(node, star, neg);
                    let img = r.compute_root_image(&sym)?;
                    r.roots.insert(sym, img);
                }
            }
        }
        (r.lambda_delta, r.lambda_delta_literal) = r.compute_lambda_delta();
        r.extract_kappa()?;
        Ok(r)
    }

    pub fn handy(&self) -> &HandyDatum {
        self.graded.handy()
    }

    pub fn kappa(&self) -> Q {
        self.kappa
    }

    pub fn kappa_ratios(&self) -> &[(String, String, Q)] {
        &self.kappa_ratios
    }

    pub fn loop_algebra(&self) -> LoopAlgebra<'_> {
        LoopAlgebra::new(&self.graded)
    }

    /// Ē_{±(α,x)} ⊗ 1
    fn gen(&self, node: usize, x: usize, negative: bool) -> LoopElement {
        let i = self.handy().pos(node, x);
        let s = self.graded.simple(i, if negative { -1 } else { 1 });
        LoopElement::basis(&self.graded, s, 0, 0)
    }

    fn br(&self, a: &LoopElement, b: &LoopElement) -> Result<LoopElement> {
        self.loop_algebra().bracket(a, b)
    }

    fn shift(e: &LoopElement, power: i64) -> LoopElement {
        let mut out = e.clone();
        out.terms = e.terms.iter().map(|(&(s, m), v)| ((s, m + power), v.clone())).collect();
        out
    }

    fn compute_root_image(&self, r: &RootSym) -> Result<LoopElement> {
        let cfg = &self.config;
        let a = r.node;
        let neg = r.negative;
        let kv = self.handy().k_vee[a];
        let pm = if neg { -1 } else { 1 };
        let e = |x: usize| self.gen(a, x, neg);
        let sqrt2 = Cyclotomic::sqrt2();
        let i = Cyclotomic::i();
        let half = Q::new(1, 2);
        let mut out = LoopElement::zero();
        if !r.star {
            match cfg.g(a) {
                GClass::Empty | GClass::Z | GClass::TwoZ => {
                    for x in 1..=kv as usize {
                        out.add_scaled(cyi(1), &e(x));
                    }
                }
                GClass::TwoZPlusOne => {
                    out.add_scaled(sqrt2, &e(1));
                    out.add_scaled(sqrt2, &e(2));
                }
                GClass::FourZPlusTwo => {
                    out.add_scaled(sqrt2, &e(2));
                    out.add_scaled(sqrt2.scale(half * Q::from_integer(pm)), &self.br(&e(1), &e(3))?);
                }
                GClass::FourZ => {
                    out.add_scaled(cyi(1), &e(1));
                    out.add_scaled(cyi(pm), &self.br(&e(3), &e(2))?);
                }
            }
            return Ok(out);
        }
        let zeta = |x: usize| Cyclotomic::exp_pi_i(pm * (2 * x as i64 - 1 - kv), kv);
        let k = cfg.k(a);
        match cfg.g(a) {
            GClass::Empty | GClass::TwoZ => {
                for x in 1..=kv as usize {
                    out.add_scaled(zeta(x), &e(x));
                }
                Ok(Self::shift(&out, pm * k))
            }
            GClass::Z => {
                for x in 1..=kv as usize {
                    out.add_scaled(zeta(x).scale(Q::new(pm, 4)), &self.br(&e(x), &e(x))?);
                }
                Ok(Self::shift(&out, pm * k))
            }
            GClass::TwoZPlusOne => {
                out.add_scaled(i, &self.br(&e(1), &e(2))?);
                Ok(Self::shift(&out, pm))
            }
            GClass::FourZPlusTwo => {
                out.add_scaled(cyi(1), &e(1));
                out.add_scaled(i, &self.br(&e(3), &e(2))?);
                Ok(Self::shift(&out, pm))
            }
            GClass::FourZ => {
                out.add_scaled(sqrt2, &e(2));
                out.add_scaled(sqrt2 * i.scale(half), &self.br(&e(1), &e(3))?);
                Ok(Self::shift(&out, pm))
            }
        }
    }

    /// J(Λ_δ, α_0) Σ_x t̄_{(α_0, x)} when that acts on every π(E_μ) by J(Λ_δ, μ);
    /// otherwise Σ_x c_x t̄_{(α_0, x)} with c solved from those eigenvalues.
    /// The literal sum fails on 4Z and 4Z+2 at α_0, whose images mix weights.
    fn compute_lambda_delta(&self) -> (LoopElement, bool) {
        let space = self.config.space();
        let c = space.pair(&space.lambda_delta(), &space.alpha(0));
        let n = self.handy().len();
        let copies: Vec<usize> = (1..=self.handy().k_vee[0] as usize).map(|x| self.handy().pos(0, x)).collect();
        let build = |coef: &[Q]| {
            let mut out = LoopElement::zero();
            for (&i, q) in copies.iter().zip(coef) {
                out.add_scaled(cy(*q), &LoopElement::basis(&self.graded, CARTAN, n + i, 0));
            }
            out
        };
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut syms: Vec<&RootSym> = self.roots.keys().collect();
        syms.sort_by_key(|s| s.id());
        for sym in syms {
            let j = space.pair(&space.lambda_delta(), &sym.vector(&self.config));
            for &(sid, _) in self.roots[sym].terms.keys() {
                let w = &self.graded.space(sid).weight;
                rows.push(copies.iter().map(|&i| Q::from_integer(w[i].into())).collect::<Vec<_>>());
                rhs.push(j);
            }
        }
        let literal = vec![c; copies.len()];
        let fits = |coef: &[Q]| rows.iter().zip(&rhs).all(|(r, b)| r.iter().zip(coef).map(|(a, x)| *a * *x).sum::<Q>() == *b);
        if fits(&literal) {
            return (build(&literal), true);
        }
        match crate::linalg::solve(&rows, &rhs) {
            Some(coef) => (build(&coef), false),
            None => (build(&literal), true),
        }
    }

    pub fn root_image(&self, r: &RootSym) -> &LoopElement {
        &self.roots[r]
    }

    /// π(h_{α_i}) = (J(α_i,α_i)/2)[π E_{α_i}, π E_{-α_i}]
    fn simple_cartan(&self, node: usize) -> Result<LoopElement> {
        let space = self.config.space();
        let half = space.norm(&space.alpha(node)) / Q::from_integer(2);
        let p = RootSym::plus(node);
        Ok(self.br(self.root_image(&p), self.root_image(&p.neg()))?.scaled(cy(half)))
    }

    /// π(h_σ) for the basis vector σ of E with this index.
    pub fn cartan_image(&self, idx: usize) -> Result<LoopElement> {
        let space = self.config.space();
        let n = space.nodes();
        if idx < n {
            self.simple_cartan(idx)
        } else if idx == n {
            Ok(self.lambda_delta.clone())
        } else if idx == n + 1 {
            Ok(LoopElement::central_v(cy(self.kappa)))
        } else {
            Ok(LoopElement::derivation_w(cyi(1)))
        }
    }

    /// κ from J̄(π h_μ, π h_ν) = κ J(μ,ν) over μ, ν ∈ Π ∪ {Λ_δ}.
    fn extract_kappa(&mut self) -> Result<()> {
        let space = self.config.space().clone();
        let n = space.nodes();
        let imgs: Vec<LoopElement> = (0..=n).map(|i| self.cartan_image(i)).collect::<Result<_>>()?;
        let la = self.loop_algebra();
        let mut ratios = Vec::new();
        for i in 0..=n {
            for j in i..=n {
                let jv = space.gram()[i][j];
                let jb = la.form(&imgs[i], &imgs[j])?;
                if jv.is_zero() {
                    if !jb.is_zero() {
                        return Err(Error::domain(format!(
                            "PD2: J̄(π h_{}, π h_{}) = {jb} but J = 0",
                            space.basis_label(i),
                            space.basis_label(j)
                        )));
                    }
                    continue;
                }
                let r = jb.as_rational().ok_or_else(|| Error::domain(format!("PD2 ratio {jb} is not rational")))?;
                ratios.push((space.basis_label(i), space.basis_label(j), r / jv));
            }
        }
        let kappa = ratios.first().map(|r| r.2).unwrap_or_else(Q::zero);
        self.kappa = kappa;
        self.kappa_ratios = ratios;
        Ok(())
    }

    pub fn kappa_consistent(&self) -> bool {
        !self.kappa.is_zero() && self.kappa_ratios.iter().all(|r| r.2 == self.kappa)
    }

    pub fn eval(&self, word: &Word) -> Result<LoopElement> {
        match word {
            Word::Sym(Symbol::Root(r)) => Ok(self.root_image(r).clone()),
            Word::Sym(Symbol::Cartan(i)) => self.cartan_image(*i),
            Word::Bracket(x, y) => self.br(&self.eval(x)?, &self.eval(y)?),
        }
    }

    /// Σ coeff·π(word); zero iff the relation holds in the realization.
    pub fn eval_relation(&self, rel: &crate::presentation::Relation) -> Result<LoopElement> {
        let mut acc = LoopElement::zero();
        for m in &rel.monomials {
            acc.add_scaled(m.coeff, &self.eval(&m.word)?);
        }
        Ok(acc)
    }

    /// π(h_σ) for every basis vector σ of E.
    pub fn cartan_images(&self) -> Result<Vec<LoopElement>> {
        (0..self.config.space().dim()).map(|s| self.cartan_image(s)).collect()
    }

    /// Weight of a loop component under π(𝔥), as a vector of E.
    pub fn component_weight(&self, space_id: usize, power: i64) -> Result<Vector> {
        self.component_weight_with(&self.cartan_images()?, space_id, power)
    }

    /// As `component_weight`, with the images of `cartan_images` supplied.
    pub fn component_weight_with(&self, cartan: &[LoopElement], space_id: usize, power: i64) -> Result<Vector> {
        let space = self.config.space();
        let w = &self.graded.space(space_id).weight;
        let mut eig = Vec::with_capacity(cartan.len());
        for h in cartan {
            let mut val = h.w.scale(Q::from_integer(power));
            for (&(sid, _), c) in &h.terms {
                debug_assert_eq!(sid, CARTAN);
                for (k, x) in c.iter().enumerate() {
                    if !x.is_zero() {
                        val += x.scale(self.graded.weight_value(w, k));
                    }
                }
            }
            eig.push(val.as_rational().ok_or_else(|| Error::internal("π(𝔥) eigenvalue is not rational"))?);
        }
        // J(σ, ρ) = eig_σ for every basis σ
        let rho = crate::linalg::solve(space.gram(), &eig).ok_or_else(|| Error::internal("gram is singular"))?;
        Ok(Vector(rho))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationStatus {
    pub label: String,
    pub zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PiReport {
    pub affine_type: String,
    pub height: usize,
    pub index_size: usize,
    #[serde(serialize_with = "crate::ser_q")]
    pub kappa: Q,
    pub kappa_pairs: usize,
    pub kappa_consistent: bool,
    pub pd3: bool,
    /// false when π(h_{Λ_δ}) had to be re-solved rather than taken as Σ_x t̄_{(α_0,x)}
    pub lambda_delta_literal: bool,
    pub cartan_nonzero: bool,
    pub parity_consistent: bool,
    pub relations: usize,
    pub counts: std::collections::BTreeMap<String, usize>,
    pub failures: Vec<String>,
    pub statuses: Vec<RelationStatus>,
    pub pass: bool,
}

impl Realization {
    /// Runs every relation of `set` through π.
    pub fn verify(&self, set: &RelationSet) -> Result<PiReport> {
        let statuses: Vec<RelationStatus> = set
            .relations
            .par_iter()
            .map(|r| Ok(RelationStatus { label: r.label.clone(), zero: self.eval_relation(r)?.is_zero() }))
            .collect::<Result<_>>()?;
        let failures: Vec<String> = statuses.iter().filter(|s| !s.zero).map(|s| s.label.clone()).collect();

        let cfg = &self.config;
        let space = cfg.space();
        let n = space.nodes();
        let ld = self.cartan_image(n)?;
        let mut pd3 = self.cartan_image(n + 1)? == LoopElement::central_v(cy(self.kappa))
            && self.cartan_image(n + 2)? == LoopElement::derivation_w(cyi(1));
        // π(h_{Λ_δ}) must act on every π(E_μ) by J(Λ_δ, μ)
        let la = self.loop_algebra();
        for (sym, img) in &self.roots {
            let j = space.pair(&space.lambda_delta(), &sym.vector(cfg));
            let lhs = la.bracket(&ld, img)?;
            if lhs != img.scaled(cy(j)) {
                pd3 = false;
            }
        }
        let cartan_nonzero = (0..space.dim()).map(|s| self.cartan_image(s)).collect::<Result<Vec<_>>>()?.iter().all(|e| !e.is_zero());
        let parity_consistent = self.roots.iter().all(|(sym, img)| img.parities(&self.graded) == vec![sym.parity(cfg)]);
        let kappa_consistent = self.kappa_consistent();
        let pass = failures.is_empty() && kappa_consistent && pd3 && cartan_nonzero && parity_consistent;
        Ok(PiReport {
            affine_type: space.affine_type().to_string(),
            height: self.graded.height(),
            index_size: self.handy().len(),
            kappa: self.kappa,
            kappa_pairs: self.kappa_ratios.len(),
            kappa_consistent,
            pd3,
            lambda_delta_literal: self.lambda_delta_literal,
            cartan_nonzero,
            parity_consistent,
            relations: statuses.len(),
            counts: set.counts(),
            failures,
            statuses,
            pass,
        })
    }
}

/// verify_pi over SR2-SR9 at the given height, or the automatic one.
pub fn verify_pi(config: &QebsConfig, height: Option<usize>) -> Result<PiReport> {
    let set = emit_sr(config);
    let need = auto_height(&set);
    let h = height.unwrap_or(need);
    if h < need {
        return Err(Error::resource(format!("height {h} is below the {need} needed by the longest relation")));
    }
    Realization::new(config, h)?.verify(&set)
}
