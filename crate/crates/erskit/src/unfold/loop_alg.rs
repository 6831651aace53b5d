//! The loop superalgebra 𝔊̄ ⊗ ℂ[t, t⁻¹] ⊕ ℂv ⊕ ℂw with its invariant form.

use super::graded::{GradedAlgebra, Loc};
use crate::ambient::Q;
use crate::cyclotomic::Cyclotomic;
use crate::error::Result;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Σ (𝔊̄ vector ⊗ t^m) + v-coefficient·v + w-coefficient·w.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LoopElement {
    /// (space id, power of t) -> coordinates in that space
    pub terms: BTreeMap<(usize, i64), Vec<Cyclotomic>>,
    pub v: Cyclotomic,
    pub w: Cyclotomic,
}

impl LoopElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(g: &GradedAlgebra, space: usize, idx: usize, power: i64) -> Self {
        let mut c = vec![Cyclotomic::zero(); g.space(space).dim];
        c[idx] = Cyclotomic::from_int(1);
        let mut e = Self::zero();
        e.terms.insert((space, power), c);
        e
    }

    pub fn central_v(c: Cyclotomic) -> Self {
        LoopElement { v: c, ..Self::zero() }
    }

    pub fn derivation_w(c: Cyclotomic) -> Self {
        LoopElement { w: c, ..Self::zero() }
    }

    fn prune(&mut self) {
        self.terms.retain(|_, v| v.iter().any(|c| !c.is_zero()));
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero() && self.w.is_zero() && self.terms.values().all(|v| v.iter().all(|c| c.is_zero()))
    }

    fn add_term(&mut self, space: usize, power: i64, coeff: Cyclotomic, x: &[Q]) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry((space, power)).or_insert_with(|| vec![Cyclotomic::zero(); x.len()]);
        for (a, b) in e.iter_mut().zip(x) {
            if !b.is_zero() {
                *a += coeff.scale(*b);
            }
        }
    }

    pub fn add_scaled(&mut self, c: Cyclotomic, other: &LoopElement) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            let e = self.terms.entry(*k).or_insert_with(|| vec![Cyclotomic::zero(); v.len()]);
            for (a, b) in e.iter_mut().zip(v) {
                *a += c * *b;
            }
        }
        self.v += c * other.v;
        self.w += c * other.w;
        self.prune();
    }

    pub fn scaled(&self, c: Cyclotomic) -> Self {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    /// The first nonzero coefficient, in the order used by `proportional`.
    pub fn leading(&self) -> Option<Cyclotomic> {
        self.terms.values().flat_map(|c| c.iter()).copied().find(|c| !c.is_zero())
    }

    /// Parities of the nonzero components (v and w are even).
    pub fn parities(&self, g: &GradedAlgebra) -> Vec<u8> {
        let mut out: Vec<u8> = self.terms.keys().map(|(s, _)| g.space(*s).parity).collect();
        if !self.v.is_zero() || !self.w.is_zero() {
            out.push(0);
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True when `other` is a scalar multiple of `self` (both nonzero).
    pub fn proportional(&self, other: &LoopElement) -> bool {
        let flat = |e: &LoopElement| {
            let mut v: Vec<((usize, i64, usize), Cyclotomic)> = Vec::new();
            for ((s, m), c) in &e.terms {
                for (k, x) in c.iter().enumerate() {
                    if !x.is_zero() {
                        v.push(((*s, *m, k), *x));
                    }
                }
            }
            if !e.v.is_zero() {
                v.push(((usize::MAX, 0, 0), e.v));
            }
            if !e.w.is_zero() {
                v.push(((usize::MAX, 0, 1), e.w));
            }
            v
        };
        let (a, b) = (flat(self), flat(other));
        if a.is_empty() || a.len() != b.len() || a.iter().zip(&b).any(|(x, y)| x.0 != y.0) {
            return false;
        }
        // x_k b_0 = y_k a_0, which avoids inverting a cyclotomic
        a.iter().zip(&b).all(|(x, y)| x.1 * b[0].1 == y.1 * a[0].1)
    }
}

/// Bracket and form on the loop superalgebra over a fixed graded algebra.
pub struct LoopAlgebra<'a> {
    pub g: &'a GradedAlgebra,
}

impl<'a> LoopAlgebra<'a> {
    pub fn new(g: &'a GradedAlgebra) -> Self {
        LoopAlgebra { g }
    }

    /// [X⊗t^m + a₁v + b₁w, Y⊗t^n + a₂v + b₂w]
    ///   = [X,Y]⊗t^{m+n} + m δ_{m+n,0} J̄(X,Y) v + b₁ n Y⊗t^n − b₂ m X⊗t^m
    pub fn bracket(&self, x: &LoopElement, y: &LoopElement) -> Result<LoopElement> {
        let g = self.g;
        let mut out = LoopElement::zero();
        for (&(s1, m), c1) in &x.terms {
            for (&(s2, n), c2) in &y.terms {
                let opposite = g.space(s1).weight.iter().zip(&g.space(s2).weight).all(|(a, b)| a + b == 0);
                for (a, ca) in c1.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (b, cb) in c2.iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        let c = *ca * *cb;
                        if let (Loc::At(t), v) = g.bracket_basis(s1, a, s2, b)? {
                            out.add_term(t, m + n, c, &v);
                        }
                        if m != 0 && m + n == 0 && opposite {
                            let j = g.form_basis(s1, a, s2, b)?;
                            out.v += c.scale(j * Q::from_integer(m));
                        }
                    }
                }
            }
        }
        if !x.w.is_zero() {
            for (&(s, n), c) in &y.terms {
                let f = x.w.scale(Q::from_integer(n));
                let e = out.terms.entry((s, n)).or_insert_with(|| vec![Cyclotomic::zero(); c.len()]);
                for (a, b) in e.iter_mut().zip(c) {
                    *a += f * *b;
                }
            }
        }
        if !y.w.is_zero() {
            for (&(s, m), c) in &x.terms {
                let f = y.w.scale(Q::from_integer(-m));
                let e = out.terms.entry((s, m)).or_insert_with(|| vec![Cyclotomic::zero(); c.len()]);
                for (a, b) in e.iter_mut().zip(c) {
                    *a += f * *b;
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// δ_{m+n,0} J̄(X,Y) + a₁b₂ + b₁a₂
    pub fn form(&self, x: &LoopElement, y: &LoopElement) -> Result<Cyclotomic> {
        let g = self.g;
        let mut acc = x.v * y.w + x.w * y.v;
        for (&(s1, m), c1) in &x.terms {
            for (&(s2, n), c2) in &y.terms {
                if m + n != 0 {
                    continue;
                }
                for (a, ca) in c1.iter().enumerate() {
                    for (b, cb) in c2.iter().enumerate() {
                        if ca.is_zero() || cb.is_zero() {
                            continue;
                        }
                        let j = g.form_basis(s1, a, s2, b)?;
                        if !j.is_zero() {
                            acc += (*ca * *cb).scale(j);
                        }
                    }
                }
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::super::handy::HandyDatum;
    use super::*;
    use crate::unfold::graded::CARTAN;

    fn a1() -> GradedAlgebra {
        let hd = HandyDatum::from_parts(vec![(0, 1)], vec![1], vec![vec![2]], vec![false]);
        GradedAlgebra::build(hd, 2).unwrap()
    }

    #[test]
    fn central_term_and_derivation() {
        let g = a1();
        let l = LoopAlgebra::new(&g);
        let (e, f) = (g.simple(0, 1), g.simple(0, -1));
        let x = LoopElement::basis(&g, e, 0, 1);
        let y = LoopElement::basis(&g, f, 0, -1);
        // [E⊗t, F⊗t⁻¹] = h⊗1 + J̄(E,F) v
        let r = l.bracket(&x, &y).unwrap();
        let mut expect = LoopElement::basis(&g, CARTAN, 0, 0);
        expect.v = Cyclotomic::from_int(1);
        assert_eq!(r, expect);
        // [w, X⊗t^n] = n X⊗t^n
        let w = LoopElement::derivation_w(Cyclotomic::from_int(1));
        let x3 = LoopElement::basis(&g, e, 0, 3);
        assert_eq!(l.bracket(&w, &x3).unwrap(), x3.scaled(Cyclotomic::from_int(3)));
        // v is central
        let v = LoopElement::central_v(Cyclotomic::from_int(1));
        assert!(l.bracket(&v, &x3).unwrap().is_zero());
        assert!(l.bracket(&x, &v).unwrap().is_zero());
    }

    #[test]
    fn form_pairs_v_with_w() {
        let g = a1();
        let l = LoopAlgebra::new(&g);
        let v = LoopElement::central_v(Cyclotomic::from_int(1));
        let w = LoopElement::derivation_w(Cyclotomic::from_int(1));
        assert_eq!(l.form(&v, &w).unwrap(), Cyclotomic::from_int(1));
        assert!(l.form(&v, &v).unwrap().is_zero());
        let x = LoopElement::basis(&g, g.simple(0, 1), 0, 2);
        let y = LoopElement::basis(&g, g.simple(0, -1), 0, -2);
        assert_eq!(l.form(&x, &y).unwrap(), Cyclotomic::from_int(1));
        let y1 = LoopElement::basis(&g, g.simple(0, -1), 0, -1);
        assert!(l.form(&x, &y1).unwrap().is_zero());
    }
}
