//! `GF(15625)` as a cubic extension of `GF(25)`, used to reason about
//! tangent lines at non-rational points of the branch curve. (Over
//! `GF(625)` the curve has no points beyond its 126 rational ones.)

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{Field, Gf25};

/// A non-cube of `GF(25)`; the extension is `GF(25)[u]/(u³ − NU)`.
pub const NU: Gf25 = Gf25::new(1, 1);

/// `a + b·u + c·u²`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf15625(pub [Gf25; 3]);

impl Gf15625 {
    pub fn embed(a: Gf25) -> Self {
        Gf15625([a, Gf25::ZERO, Gf25::ZERO])
    }

    pub fn all() -> impl Iterator<Item = Gf15625> {
        Gf25::all().flat_map(|a| Gf25::all().flat_map(move |b| Gf25::all().map(move |c| Gf15625([a, b, c]))))
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Gf15625::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `x ↦ x²⁵`.
    pub fn frobenius(self) -> Self {
        self.pow(25)
    }

    pub fn in_base_field(self) -> Option<Gf25> {
        if self.0[1].is_zero() && self.0[2].is_zero() {
            Some(self.0[0])
        } else {
            None
        }
    }
}

impl fmt::Debug for Gf15625 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{}|{})", self.0[0], self.0[1], self.0[2])
    }
}

impl Add for Gf15625 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Gf15625([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Gf15625 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Gf15625([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Gf15625 {
    type Output = Self;
    fn neg(self) -> Self {
        Gf15625([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul for Gf15625 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = o.0;
        let c0 = a0 * b0;
        let c1 = a0 * b1 + a1 * b0;
        let c2 = a0 * b2 + a1 * b1 + a2 * b0;
        let c3 = a1 * b2 + a2 * b1;
        let c4 = a2 * b2;
        Gf15625([c0 + c3 * NU, c1 + c4 * NU, c2])
    }
}

impl Zero for Gf15625 {
    fn zero() -> Self {
        Gf15625([Gf25::ZERO; 3])
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

impl One for Gf15625 {
    fn one() -> Self {
        Gf15625::embed(Gf25::ONE)
    }
}

impl Field for Gf15625 {
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.pow(15623))
        }
    }

    fn from_i64(n: i64) -> Self {
        Gf15625::embed(Gf25::new(n, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_is_a_non_cube() {
        assert_ne!(NU.pow(8), Gf25::ONE);
    }

    #[test]
    fn multiplicative_group_has_order_15624() {
        let mut n = 0;
        for x in Gf15625::all().filter(|x| !Zero::is_zero(x)).step_by(97) {
            assert_eq!(x.pow(15624), Gf15625::one());
            assert_eq!(x * x.inverse().unwrap(), Gf15625::one());
            n += 1;
        }
        assert!(n > 100);
        let fixed = Gf15625::all().filter(|x| x.frobenius() == *x).count();
        assert_eq!(fixed, 25);
    }
}
