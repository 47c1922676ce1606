//! Sparse polynomials in the variables `w, x, y, z`.
//!
//! One monomial order is used everywhere: graded reverse lexicographic with
//! `w > x > y > z`. Restricted to polynomials free of `z` it is
//! `grevlex(w, x, y)`, and restricted to polynomials free of `w` it is
//! `grevlex(x, y, z)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, Gf25};

/// Variable indices into a [`Mono`].
pub const W: usize = 0;
pub const X: usize = 1;
pub const Y: usize = 2;
pub const Z: usize = 3;

pub const VAR_NAMES: [&str; 4] = ["w", "x", "y", "z"];

/// A monomial `w^a x^b y^c z^d`, packed so that integer comparison is the
/// monomial order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono::new([0, 0, 0, 0]);

    pub const fn new(e: [u8; 4]) -> Mono {
        let deg = e[0] as u64 + e[1] as u64 + e[2] as u64 + e[3] as u64;
        Mono(
            (deg << 40)
                | ((255 - e[3] as u64) << 24)
                | ((255 - e[2] as u64) << 16)
                | ((255 - e[1] as u64) << 8)
                | e[0] as u64,
        )
    }

    pub fn var(v: usize) -> Mono {
        let mut e = [0u8; 4];
        e[v] = 1;
        Mono::new(e)
    }

    pub fn wxyz(w: u8, x: u8, y: u8, z: u8) -> Mono {
        Mono::new([w, x, y, z])
    }

    #[inline]
    pub const fn exps(self) -> [u8; 4] {
        let k = self.0;
        [
            (k & 0xff) as u8,
            255 - ((k >> 8) & 0xff) as u8,
            255 - ((k >> 16) & 0xff) as u8,
            255 - ((k >> 24) & 0xff) as u8,
        ]
    }

    #[inline]
    pub fn exp(self, v: usize) -> u8 {
        self.exps()[v]
    }

    pub fn degree(self) -> u32 {
        (self.0 >> 40) as u32
    }

    /// Degree with `w` of weight 3.
    pub fn weighted_degree(self) -> u32 {
        let e = self.exps();
        3 * e[0] as u32 + e[1] as u32 + e[2] as u32 + e[3] as u32
    }

    #[inline]
    pub fn mul(self, rhs: Mono) -> Mono {
        let a = self.exps();
        let b = rhs.exps();
        Mono::new([
            a[0].checked_add(b[0]).expect("exponent overflow"),
            a[1].checked_add(b[1]).expect("exponent overflow"),
            a[2].checked_add(b[2]).expect("exponent overflow"),
            a[3].checked_add(b[3]).expect("exponent overflow"),
        ])
    }

    #[inline]
    pub fn divides(self, rhs: Mono) -> bool {
        let a = self.exps();
        let b = rhs.exps();
        a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2] && a[3] <= b[3]
    }

    /// `rhs / self`, assuming divisibility.
    #[inline]
    pub fn quotient_of(self, rhs: Mono) -> Mono {
        let a = self.exps();
        let b = rhs.exps();
        Mono::new([b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3]])
    }

    pub fn lcm(self, rhs: Mono) -> Mono {
        let a = self.exps();
        let b = rhs.exps();
        Mono::new([a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2]), a[3].max(b[3])])
    }

    pub fn is_coprime(self, rhs: Mono) -> bool {
        let a = self.exps();
        let b = rhs.exps();
        (0..4).all(|i| a[i] == 0 || b[i] == 0)
    }

    /// All monomials in the given variables of total degree exactly `deg`,
    /// in descending monomial order.
    pub fn of_degree(vars: &[usize], deg: u8) -> Vec<Mono> {
        let mut out = Vec::new();
        fn rec(vars: &[usize], left: u8, cur: &mut [u8; 4], out: &mut Vec<Mono>) {
            if vars.len() == 1 {
                cur[vars[0]] = left;
                out.push(Mono::new(*cur));
                cur[vars[0]] = 0;
                return;
            }
            for k in 0..=left {
                cur[vars[0]] = k;
                rec(&vars[1..], left - k, cur, out);
            }
            cur[vars[0]] = 0;
        }
        if vars.is_empty() {
            if deg == 0 {
                out.push(Mono::ONE);
            }
            return out;
        }
        rec(vars, deg, &mut [0; 4], &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.exps();
        let mut first = true;
        for (v, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{}", VAR_NAMES[v])?;
            } else {
                write!(f, "{}^{}", VAR_NAMES[v], k)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A polynomial with terms sorted by descending monomial; no zero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    terms: Vec<(Mono, F)>,
}

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::monomial(Mono::ONE, c)
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn monomial(m: Mono, c: F) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: usize) -> Self {
        Poly::monomial(Mono::var(v), F::one())
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Mono, F)>>(terms: I) -> Self {
        let mut map: BTreeMap<Mono, F> = BTreeMap::new();
        for (m, c) in terms {
            let e = map.entry(m).or_insert_with(F::zero);
            *e = e.clone() + c;
        }
        let mut terms: Vec<(Mono, F)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Poly { terms }
    }

    /// Trusted constructor: terms already strictly descending and nonzero.
    pub(crate) fn from_sorted(terms: Vec<(Mono, F)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, F)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, F)> {
        self.terms.first()
    }

    pub fn leading_mono(&self) -> Option<Mono> {
        self.terms.first().map(|t| t.0)
    }

    pub fn coeff(&self, m: Mono) -> F {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn degree_in(&self, v: usize) -> u8 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.weighted_degree()).max()
    }

    /// True when every term has weighted degree `d`.
    pub fn is_weighted_homogeneous(&self, d: u32) -> bool {
        self.terms.iter().all(|t| t.0.weighted_degree() == d)
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.iter().all(|t| t.0.degree() == d)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_term(&self, m: Mono, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone() * c.clone())).collect(),
        }
    }

    /// Monic rescaling; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// `self + c·m·other`, merging in one pass.
    pub fn add_scaled(&self, other: &Poly<F>, m: Mono, c: &F) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let bm = if j < b.len() { Some(b[j].0.mul(m)) } else { None };
            match (a.get(i), bm) {
                (Some(x), Some(y)) if x.0 == y => {
                    let s = x.1.clone() + b[j].1.clone() * c.clone();
                    if !s.is_zero() {
                        out.push((y, s));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x.0 > y => {
                    out.push(x.clone());
                    i += 1;
                }
                (_, Some(y)) => {
                    let s = b[j].1.clone() * c.clone();
                    if !s.is_zero() {
                        out.push((y, s));
                    }
                    j += 1;
                }
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly<F>) -> Self {
        self.add_scaled(other, Mono::ONE, &F::one())
    }

    pub fn sub(&self, other: &Poly<F>) -> Self {
        self.add_scaled(other, Mono::ONE, &(-F::one()))
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-F::one()))
    }

    pub fn mul(&self, other: &Poly<F>) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut map: BTreeMap<Mono, F> = BTreeMap::new();
        for (m, c) in &small.terms {
            for (n, d) in &big.terms {
                let e = map.entry(m.mul(*n)).or_insert_with(F::zero);
                *e = e.clone() + c.clone() * d.clone();
            }
        }
        let mut terms: Vec<(Mono, F)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Poly { terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Evaluates at `(w, x, y, z)`.
    pub fn eval(&self, pt: &[F; 4]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let e = m.exps();
            let mut t = c.clone();
            for v in 0..4 {
                for _ in 0..e[v] {
                    t = t * pt[v].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes polynomial `subs[v]` for variable `v`.
    pub fn substitute(&self, subs: &[Poly<F>; 4]) -> Self {
        let maxe: Vec<u8> = (0..4).map(|v| self.degree_in(v)).collect();
        let mut powers: Vec<Vec<Poly<F>>> = Vec::with_capacity(4);
        for v in 0..4 {
            let mut p = vec![Poly::one()];
            for k in 1..=maxe[v] as usize {
                let next = p[k - 1].mul(&subs[v]);
                p.push(next);
            }
            powers.push(p);
        }
        let mut acc: BTreeMap<Mono, F> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exps();
            let mut t = Poly::constant(c.clone());
            for v in 0..4 {
                if e[v] > 0 {
                    t = t.mul(&powers[v][e[v] as usize]);
                }
            }
            for (n, d) in t.terms {
                let slot = acc.entry(n).or_insert_with(F::zero);
                *slot = slot.clone() + d;
            }
        }
        let mut terms: Vec<(Mono, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Poly { terms }
    }

    /// Sets variable `v` to 1.
    pub fn dehomogenize(&self, v: usize) -> Self {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = m.exps();
            e[v] = 0;
            (Mono::new(e), c.clone())
        }))
    }

    /// Multiplies each term by a power of `v` so that the weighted degree
    /// (w of weight 3) becomes `d`.
    pub fn homogenize_weighted(&self, v: usize, d: u32) -> Self {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let wd = m.weighted_degree();
            assert!(wd <= d, "term {m} exceeds weighted degree {d}");
            let mut e = m.exps();
            e[v] += (d - wd) as u8;
            (Mono::new(e), c.clone())
        }))
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: usize) -> Self {
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.exp(v) > 0).map(|(m, c)| {
            let mut e = m.exps();
            let k = e[v];
            e[v] -= 1;
            (Mono::new(e), c.clone() * F::from_i64(k as i64))
        }))
    }

    /// Swaps the roles of two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = m.exps();
            e.swap(a, b);
            (Mono::new(e), c.clone())
        }))
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }
}

impl Poly<Gf25> {
    /// Coefficientwise Frobenius `√2 ↦ −√2`.
    pub fn conjugate(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.frobenius())).collect() }
    }

    pub fn is_over_prime_field(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_in_prime_field())
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_poly(f, self)
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})*{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<Gf25>;

    fn v(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn mono_pack_roundtrip_and_order() {
        let m = Mono::new([1, 2, 3, 4]);
        assert_eq!(m.exps(), [1, 2, 3, 4]);
        // grevlex(w, x, y): w > x > y, and x*y > z^2 is irrelevant; check x^2 > x*y > y^2 > x*z
        let x2 = Mono::wxyz(0, 2, 0, 0);
        let xy = Mono::wxyz(0, 1, 1, 0);
        let y2 = Mono::wxyz(0, 0, 2, 0);
        let xz = Mono::wxyz(0, 1, 0, 1);
        let w = Mono::wxyz(1, 0, 0, 0);
        assert!(x2 > xy && xy > y2 && y2 > xz);
        assert!(w > Mono::wxyz(0, 1, 0, 0));
        // grevlex: x*z^2 < y^3 (last variable penalized)
        assert!(Mono::wxyz(0, 0, 3, 0) > Mono::wxyz(0, 1, 0, 2));
        // degree dominates
        assert!(Mono::wxyz(0, 0, 0, 3) > Mono::wxyz(0, 2, 0, 0));
    }

    #[test]
    fn sextic_monomial_list_has_28_entries() {
        let ms = Mono::of_degree(&[X, Y, Z], 6);
        assert_eq!(ms.len(), 28);
        assert_eq!(ms[0], Mono::wxyz(0, 6, 0, 0));
        assert_eq!(ms[27], Mono::wxyz(0, 0, 0, 6));
    }

    #[test]
    fn arithmetic() {
        let a = v(X).add(&v(Y));
        let b = v(X).sub(&v(Y));
        let p = a.mul(&b);
        assert_eq!(p, v(X).mul(&v(X)).sub(&v(Y).mul(&v(Y))));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.pow(5), v(X).pow(5).add(&v(Y).pow(5)));
    }

    #[test]
    fn substitute_and_eval() {
        let f = v(X).pow(2).add(&v(Y));
        let g = f.substitute(&[v(W), v(Y), v(X), v(Z)]);
        assert_eq!(g, v(Y).pow(2).add(&v(X)));
        let pt = [Gf25::ZERO, Gf25::new(2, 0), Gf25::new(0, 1), Gf25::ZERO];
        assert_eq!(f.eval(&pt), Gf25::new(4, 1));
    }

    #[test]
    fn derivative_in_char_5() {
        let f = v(X).pow(6).add(&v(Y).pow(5));
        assert_eq!(f.derivative(X), v(X).pow(5));
        assert!(f.derivative(Y).is_zero());
    }

    #[test]
    fn weighted_homogenize() {
        let f = v(W).add(&v(X).pow(2)).add(&P::one());
        let h = f.homogenize_weighted(Z, 3);
        assert!(h.is_weighted_homogeneous(3));
        assert_eq!(h.dehomogenize(Z), f);
    }
}
