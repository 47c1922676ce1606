//! Scalar fields used by the polynomial and linear-algebra layers.
//!
//! Everything above this module is written against [`Field`], so the same
//! Gröbner and elimination code runs over `GF(25)`, `GF(5)` and the
//! rationals.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::GfError;

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|r| self.clone() * r)
    }

    fn from_i64(n: i64) -> Self;
}

impl<T> Field for Ratio<T>
where
    T: Clone + num_integer::Integer + num_traits::Signed + Hash + fmt::Debug + Send + Sync + From<i32> + TryFrom<i64>,
{
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        let t = T::try_from(n).ok().expect("integer fits the rational backing type");
        Ratio::from_integer(t)
    }
}

const fn build_mul_table() -> [[u8; 25]; 25] {
    let mut t = [[0u8; 25]; 25];
    let mut i = 0;
    while i < 25 {
        let mut j = 0;
        while j < 25 {
            let (a, b) = (i % 5, i / 5);
            let (c, d) = (j % 5, j / 5);
            let re = (a * c + 2 * b * d) % 5;
            let im = (a * d + b * c) % 5;
            t[i][j] = (re + 5 * im) as u8;
            j += 1;
        }
        i += 1;
    }
    t
}

const fn build_add_table() -> [[u8; 25]; 25] {
    let mut t = [[0u8; 25]; 25];
    let mut i = 0;
    while i < 25 {
        let mut j = 0;
        while j < 25 {
            let re = (i % 5 + j % 5) % 5;
            let im = (i / 5 + j / 5) % 5;
            t[i][j] = (re + 5 * im) as u8;
            j += 1;
        }
        i += 1;
    }
    t
}

const fn build_inv_table(mul: &[[u8; 25]; 25]) -> [u8; 25] {
    let mut t = [0u8; 25];
    let mut i = 1;
    while i < 25 {
        let mut j = 1;
        while j < 25 {
            if mul[i][j] == 1 {
                t[i] = j as u8;
            }
            j += 1;
        }
        i += 1;
    }
    t
}

const MUL: [[u8; 25]; 25] = build_mul_table();
const ADD: [[u8; 25]; 25] = build_add_table();
const INV: [u8; 25] = build_inv_table(&MUL);

/// An element `a + b·√2` of `GF(25) = F_5[t]/(t² − 2)`, stored as `a + 5b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf25(u8);

impl Gf25 {
    pub const ZERO: Gf25 = Gf25(0);
    pub const ONE: Gf25 = Gf25(1);
    /// The chosen square root of 2.
    pub const SQRT2: Gf25 = Gf25(5);

    pub const fn new(a: i64, b: i64) -> Gf25 {
        let a = a.rem_euclid(5) as u8;
        let b = b.rem_euclid(5) as u8;
        Gf25(a + 5 * b)
    }

    pub const fn from_index(i: u8) -> Gf25 {
        assert!(i < 25);
        Gf25(i)
    }

    /// Index in `0..25`; the total order on `GF(25)` compares `(a, b)`
    /// lexicographically, which is *not* the index order.
    pub const fn index(self) -> u8 {
        self.0
    }

    pub const fn re(self) -> u8 {
        self.0 % 5
    }

    pub const fn im(self) -> u8 {
        self.0 / 5
    }

    /// All 25 elements in index order.
    pub fn all() -> impl Iterator<Item = Gf25> {
        (0..25u8).map(Gf25)
    }

    pub fn nonzero() -> impl Iterator<Item = Gf25> {
        (1..25u8).map(Gf25)
    }

    /// `x ↦ x⁵`, i.e. `√2 ↦ −√2`.
    pub const fn frobenius(self) -> Gf25 {
        Gf25::new(self.re() as i64, -(self.im() as i64))
    }

    pub fn pow(self, mut e: u64) -> Gf25 {
        let mut base = self;
        let mut acc = Gf25::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn inv(self) -> Option<Gf25> {
        if self.0 == 0 {
            None
        } else {
            Some(Gf25(INV[self.0 as usize]))
        }
    }

    pub fn is_in_prime_field(self) -> bool {
        self.im() == 0
    }

    /// `x · x⁵`, the norm to `GF(5)`.
    pub fn norm(self) -> Gf25 {
        self * self.frobenius()
    }

    pub fn is_square(self) -> bool {
        self.0 == 0 || self.pow(12) == Gf25::ONE
    }

    /// Square root, returning the root whose `(a, b)` encoding is
    /// lexicographically smaller.
    pub fn sqrt(self) -> Result<Gf25, GfError> {
        let mut best: Option<Gf25> = None;
        for r in Gf25::all() {
            if r * r == self && best.map_or(true, |b| r.lex_key() < b.lex_key()) {
                best = Some(r);
            }
        }
        best.ok_or(GfError::NonSquare(self))
    }

    /// Key of the fixed total order on the field: `(a, b)` lexicographic.
    pub const fn lex_key(self) -> (u8, u8) {
        (self.re(), self.im())
    }
}

impl fmt::Debug for Gf25 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gf25 {
    /// Prints `p+q*r2`, dropping a zero part.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re(), self.im()) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "r2"),
            (0, b) => write!(f, "{b}*r2"),
            (a, 1) => write!(f, "{a}+r2"),
            (a, b) => write!(f, "{a}+{b}*r2"),
        }
    }
}

impl Add for Gf25 {
    type Output = Gf25;
    #[inline]
    fn add(self, rhs: Gf25) -> Gf25 {
        Gf25(ADD[self.0 as usize][rhs.0 as usize])
    }
}

impl Neg for Gf25 {
    type Output = Gf25;
    #[inline]
    fn neg(self) -> Gf25 {
        Gf25::new(-(self.re() as i64), -(self.im() as i64))
    }
}

impl Sub for Gf25 {
    type Output = Gf25;
    #[inline]
    fn sub(self, rhs: Gf25) -> Gf25 {
        self + (-rhs)
    }
}

impl Mul for Gf25 {
    type Output = Gf25;
    #[inline]
    fn mul(self, rhs: Gf25) -> Gf25 {
        Gf25(MUL[self.0 as usize][rhs.0 as usize])
    }
}

impl Zero for Gf25 {
    fn zero() -> Gf25 {
        Gf25::ZERO
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Gf25 {
    fn one() -> Gf25 {
        Gf25::ONE
    }
}

impl Field for Gf25 {
    #[inline]
    fn inverse(&self) -> Option<Gf25> {
        (self.0 != 0).then(|| Gf25(INV[self.0 as usize]))
    }

    fn from_i64(n: i64) -> Gf25 {
        Gf25::new(n, 0)
    }
}

/// The prime field `GF(p)` for a small prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut acc = 1u64;
        let mut base = self.0 as u64;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P as u64;
            }
            base = base * base % P as u64;
            e >>= 1;
        }
        Some(Fp(acc as u32))
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_form_of_one_plus_sqrt2() {
        let a = Gf25::new(1, 1);
        let b = Gf25::new(1, -1);
        assert_eq!(a * b, Gf25::new(4, 0));
        assert_eq!(a.frobenius(), Gf25::new(1, 4));
    }

    #[test]
    fn multiplicative_group_has_exponent_24() {
        for x in Gf25::nonzero() {
            assert_eq!(x.pow(24), Gf25::ONE, "{x}");
            assert_eq!(x * x.inverse().unwrap(), Gf25::ONE);
        }
        assert!(Gf25::ZERO.inverse().is_none());
    }

    #[test]
    fn frobenius_is_fifth_power_and_involution() {
        for x in Gf25::all() {
            assert_eq!(x.frobenius(), x.pow(5));
            assert_eq!(x.frobenius().frobenius(), x);
            for y in Gf25::all() {
                assert_eq!((x * y).frobenius(), x.frobenius() * y.frobenius());
                assert_eq!((x + y).frobenius(), x.frobenius() + y.frobenius());
            }
        }
    }

    #[test]
    fn sqrt_picks_smaller_root() {
        let mut squares = 0;
        for x in Gf25::all() {
            match x.sqrt() {
                Ok(r) => {
                    squares += 1;
                    assert_eq!(r * r, x);
                    assert!(r.lex_key() <= (-r).lex_key());
                }
                Err(GfError::NonSquare(y)) => assert_eq!(y, x),
                Err(e) => panic!("{e}"),
            }
        }
        assert_eq!(squares, 13);
        assert_eq!(Gf25::new(2, 0).sqrt().unwrap(), Gf25::SQRT2);
    }

    #[test]
    fn prime_field_elements_are_squares() {
        for a in 0..5 {
            assert!(Gf25::new(a, 0).is_square());
        }
    }

    #[test]
    fn display_format() {
        assert_eq!(Gf25::new(1, 3).to_string(), "1+3*r2");
        assert_eq!(Gf25::new(0, 1).to_string(), "r2");
        assert_eq!(Gf25::new(0, 2).to_string(), "2*r2");
        assert_eq!(Gf25::new(4, 0).to_string(), "4");
    }

    #[test]
    fn prime_field_inverse() {
        type F7 = Fp<7>;
        for a in 1..7 {
            let x = F7::new(a);
            assert_eq!(x * x.inverse().unwrap(), F7::one());
        }
    }
}
