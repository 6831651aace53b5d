//! ℚ(ζ₂₄), stored as polynomials in ζ of degree < 8 modulo
//! Φ₂₄(x) = x⁸ − x⁴ + 1.

use crate::ambient::Q;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

const DEG: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Cyclotomic(pub [Q; DEG]);

impl Cyclotomic {
    pub fn from_q(q: Q) -> Self {
        let mut c = [Q::zero(); DEG];
        c[0] = q;
        Cyclotomic(c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(Q::from_integer(n))
    }

    /// ζ₂₄^k for any integer k.
    pub fn zeta24(k: i64) -> Self {
        // ζ^12 = -1, so reduce to 0 <= e < 12 and track the sign
        let k = k.rem_euclid(24);
        let (e, sign) = if k >= 12 { (k - 12, -1) } else { (k, 1) };
        let mut c = [Q::zero(); DEG];
        if e < 8 {
            c[e as usize] = Q::from_integer(sign);
        } else {
            // ζ^e = ζ^(e-8) ζ^8 = ζ^(e-8) (ζ^4 - 1)
            c[(e - 4) as usize] += Q::from_integer(sign);
            c[(e - 8) as usize] -= Q::from_integer(sign);
        }
        Cyclotomic(c)
    }

    /// √−1 = ζ₂₄⁶.
    pub fn i() -> Self {
        Self::zeta24(6)
    }

    /// √2 = ζ₈ + ζ₈⁻¹.
    pub fn sqrt2() -> Self {
        Self::zeta24(3) + Self::zeta24(21)
    }

    /// exp(π√−1 · e / n) for n dividing 12.
    pub fn exp_pi_i(e: i64, n: i64) -> Self {
        assert!(n > 0 && 12 % n == 0, "exp(πi/{n}) is outside ℚ(ζ₂₄)");
        Self::zeta24(e * (12 / n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, q: Q) -> Self {
        let mut c = self.0;
        for x in c.iter_mut() {
            *x *= q;
        }
        Cyclotomic(c)
    }

    /// The rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Q> {
        self.0[1..].iter().all(|c| c.is_zero()).then_some(self.0[0])
    }

    /// Galois conjugation ζ ↦ ζ⁻¹ (complex conjugation).
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.0.iter().enumerate() {
            if !c.is_zero() {
                out += Self::zeta24(-(e as i64)).scale(*c);
            }
        }
        out
    }

    /// Inverse via the product of the nontrivial Galois conjugates.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut prod = Self::one();
        for k in [5i64, 7, 11, 13, 17, 19, 23] {
            prod *= self.galois(k);
        }
        let norm = (*self * prod).as_rational().expect("field norm is rational");
        Some(prod.scale(Q::one() / norm))
    }

    /// ζ ↦ ζ^k for k coprime to 24.
    pub fn galois(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.0.iter().enumerate() {
            if !c.is_zero() {
                out += Self::zeta24(k * e as i64).scale(*c);
            }
        }
        out
    }

    pub fn coeffs(&self) -> &[Q; DEG] {
        &self.0
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic([Q::zero(); DEG])
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<Q> for Cyclotomic {
    fn from(q: Q) -> Self {
        Self::from_q(q)
    }
}

impl Add for Cyclotomic {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for Cyclotomic {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for Cyclotomic {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for Cyclotomic {
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic(self.0.map(|c| -c))
    }
}

impl Mul for Cyclotomic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut prod = [Q::zero(); 2 * DEG - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // x^8 = x^4 - 1, from the top down
        for d in (DEG..2 * DEG - 1).rev() {
            let c = prod[d];
            if !c.is_zero() {
                prod[d] = Q::zero();
                prod[d - 4] += c;
                prod[d - 8] -= c;
            }
        }
        let mut out = [Q::zero(); DEG];
        out.copy_from_slice(&prod[..DEG]);
        Cyclotomic(out)
    }
}

impl MulAssign for Cyclotomic {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ζ")?,
                _ => write!(f, "({c})ζ^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(DEG))?;
        for c in &self.0 {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn named_constants() {
        let i = Cyclotomic::i();
        assert_eq!(i * i, Cyclotomic::from_int(-1));
        let s = Cyclotomic::sqrt2();
        assert_eq!(s * s, Cyclotomic::from_int(2));
        for n in [1, 2, 3, 4] {
            let z = Cyclotomic::exp_pi_i(1, n);
            let mut p = Cyclotomic::one();
            for _ in 0..n {
                p *= z;
            }
            assert_eq!(p, Cyclotomic::from_int(-1), "exp(πi/{n})^{n}");
        }
        assert_eq!(Cyclotomic::zeta24(24), Cyclotomic::one());
        assert_eq!(Cyclotomic::zeta24(-1) * Cyclotomic::zeta24(1), Cyclotomic::one());
    }

    #[test]
    fn conjugation_and_inverse() {
        let z = Cyclotomic::zeta24(5) + Cyclotomic::from_int(3);
        assert_eq!(z * z.inv().unwrap(), Cyclotomic::one());
        assert_eq!(Cyclotomic::i().conj(), -Cyclotomic::i());
        assert!(Cyclotomic::zero().inv().is_none());
    }

    fn arb() -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec(-5i64..=5, 8).prop_map(|v| {
            let mut c = [Q::zero(); 8];
            for (x, y) in c.iter_mut().zip(v) {
                *x = Q::from_integer(y);
            }
            Cyclotomic(c)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a * b, b * a);
        }

        #[test]
        fn powers_of_zeta_agree(j in -30i64..30, k in -30i64..30) {
            prop_assert_eq!(Cyclotomic::zeta24(j) * Cyclotomic::zeta24(k), Cyclotomic::zeta24(j + k));
        }
    }
}
