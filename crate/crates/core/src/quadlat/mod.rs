//! Integer points of inhomogeneous quadratic sublevel sets, and the two
//! hyperbolic-lattice searches built on them: vectors of fixed norm on an
//! affine slice, and roots separating two positive vectors.

mod apps;
pub mod engine;
pub mod intlin;
pub mod io;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use apps::{separating_roots, separating_roots_stratified, solve_fixed_norm, FixedNorm, SeparatingRoots};
pub use engine::{IntEnumerator, Mode};
pub use intlin::{lll_reduce, AffineSlice, SliceStatus};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("quadratic part is not positive definite")]
    NotPositive,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

/// Exact ordered scalars usable as quadratic-triple coefficients.
pub trait ExactScalar: Clone + PartialOrd + num_traits::Num + Signed + Debug + Send + Sync {
    fn from_i64(n: i64) -> Self;
    /// Numerator and positive denominator.
    fn to_big_ratio(&self) -> (BigInt, BigInt);
}

macro_rules! exact_ratio {
    ($t:ty) => {
        impl ExactScalar for Ratio<$t> {
            fn from_i64(n: i64) -> Self {
                Ratio::from_integer(<$t>::from(n))
            }
            fn to_big_ratio(&self) -> (BigInt, BigInt) {
                (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
        }
    };
}

exact_ratio!(i64);
exact_ratio!(i128);

impl ExactScalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_big_ratio(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }
}

/// `q(x) = x·Q·xᵗ + 2·x·L + c` on `Zⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadTriple<S> {
    q: Vec<Vec<S>>,
    l: Vec<S>,
    c: S,
}

impl<S: ExactScalar> QuadTriple<S> {
    pub fn new(q: Vec<Vec<S>>, l: Vec<S>, c: S) -> Result<Self, QuadError> {
        let n = q.len();
        if l.len() != n {
            return Err(QuadError::Dimension { expected: n, got: l.len() });
        }
        for (i, row) in q.iter().enumerate() {
            if row.len() != n {
                return Err(QuadError::Dimension { expected: n, got: row.len() });
            }
            for j in 0..i {
                if row[j] != q[j][i] {
                    return Err(QuadError::NotSymmetric);
                }
            }
        }
        Ok(QuadTriple { q, l, c })
    }

    pub fn from_ints(q: &[Vec<i64>], l: &[i64], c: i64) -> Result<Self, QuadError> {
        let conv = |v: &[i64]| v.iter().map(|&x| S::from_i64(x)).collect::<Vec<_>>();
        QuadTriple::new(q.iter().map(|r| conv(r)).collect(), conv(l), S::from_i64(c))
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self) -> &[Vec<S>] {
        &self.q
    }

    pub fn l(&self) -> &[S] {
        &self.l
    }

    pub fn c(&self) -> &S {
        &self.c
    }

    pub fn eval(&self, x: &[i64]) -> Result<S, QuadError> {
        let xs: Vec<S> = x.iter().map(|&v| S::from_i64(v)).collect();
        self.eval_exact(&xs)
    }

    pub fn eval_exact(&self, x: &[S]) -> Result<S, QuadError> {
        let n = self.dim();
        if x.len() != n {
            return Err(QuadError::Dimension { expected: n, got: x.len() });
        }
        let two = S::from_i64(2);
        let mut acc = self.c.clone();
        for i in 0..n {
            let mut row = S::zero();
            for j in 0..n {
                row = row + self.q[i][j].clone() * x[j].clone();
            }
            acc = acc + x[i].clone() * row + two.clone() * x[i].clone() * self.l[i].clone();
        }
        Ok(acc)
    }

    /// Leading principal minors of `Q`.
    pub fn leading_minors(&self) -> Vec<S> {
        let n = self.dim();
        let mut m = self.q.clone();
        let mut out = Vec::with_capacity(n);
        let mut det = S::one();
        for k in 0..n {
            // m is kept upper-triangular on its first k columns
            if m[k][k].is_zero() {
                // a zero pivot means the minor vanishes; later minors need
                // pivoting, which we skip since positivity already fails
                out.push(S::zero());
                out.extend(std::iter::repeat(S::zero()).take(n - k - 1));
                return out;
            }
            det = det * m[k][k].clone();
            out.push(det.clone());
            for i in k + 1..n {
                let f = m[i][k].clone() / m[k][k].clone();
                for j in k..n {
                    m[i][j] = m[i][j].clone() - f.clone() * m[k][j].clone();
                }
            }
        }
        out
    }

    /// All leading principal minors are positive.
    pub fn is_positive(&self) -> bool {
        self.leading_minors().iter().all(|m| m.is_positive())
    }

    /// Minimizes out the last variable.
    pub fn project(&self) -> Result<Self, QuadError> {
        let n = self.dim();
        if n < 2 {
            return Err(QuadError::Precondition("projection needs at least two variables".into()));
        }
        let r = self.q[n - 1][n - 1].clone();
        if !r.is_positive() {
            return Err(QuadError::NotPositive);
        }
        let m = self.l[n - 1].clone();
        let p: Vec<S> = self.q[n - 1][..n - 1].to_vec();
        let q = (0..n - 1)
            .map(|i| (0..n - 1).map(|j| self.q[i][j].clone() - p[i].clone() * p[j].clone() / r.clone()).collect())
            .collect();
        let l = (0..n - 1).map(|i| self.l[i].clone() - m.clone() * p[i].clone() / r.clone()).collect();
        let c = self.c.clone() - m.clone() * m / r;
        Ok(QuadTriple { q, l, c })
    }

    /// Pins the first variable to `a`.
    pub fn restrict(&self, a: &S) -> Result<Self, QuadError> {
        let n = self.dim();
        if n < 1 {
            return Err(QuadError::Precondition("restriction needs a variable".into()));
        }
        let q = (1..n).map(|i| self.q[i][1..].to_vec()).collect();
        let l = (1..n).map(|i| a.clone() * self.q[0][i].clone() + self.l[i].clone()).collect();
        let two = S::from_i64(2);
        let c = a.clone() * a.clone() * self.q[0][0].clone() + two * a.clone() * self.l[0].clone() + self.c.clone();
        Ok(QuadTriple { q, l, c })
    }

    /// Integer range of `t` with `Q₀₀t² + 2L₀t + c ≤ 0`, for a one-variable
    /// triple with `Q₀₀ > 0`.
    pub fn one_var_range(&self) -> Option<(BigInt, BigInt)> {
        debug_assert_eq!(self.dim(), 1);
        let (an, ad) = self.q[0][0].to_big_ratio();
        let (bn, bd) = self.l[0].to_big_ratio();
        let (cn, cd) = self.c.to_big_ratio();
        let den = ad.lcm(&bd).lcm(&cd);
        let a = an * (&den / ad);
        let b = bn * (&den / bd);
        let c = cn * (&den / cd);
        interval_for(&a, &b, &c)
    }

    /// Exactly the integer points with `q(x) ≤ 0`, by recursive projection
    /// and restriction. Reference implementation; see [`IntEnumerator`] for
    /// the fast path.
    pub fn enumerate_nonpositive(&self, mut f: impl FnMut(&[i64])) -> Result<(), QuadError> {
        if !self.is_positive() {
            return Err(QuadError::NotPositive);
        }
        let n = self.dim();
        if n == 0 {
            if !self.c.is_positive() {
                f(&[]);
            }
            return Ok(());
        }
        // chain[μ] has μ+1 variables
        let mut chain = vec![self.clone()];
        while chain.last().unwrap().dim() > 1 {
            let p = chain.last().unwrap().project()?;
            chain.push(p);
        }
        chain.reverse();
        let mut x = Vec::with_capacity(n);
        descend(&chain, 0, chain[0].clone(), &mut x, &mut f)?;
        Ok(())
    }

    pub fn collect_nonpositive(&self) -> Result<Vec<Vec<i64>>, QuadError> {
        let mut out = Vec::new();
        self.enumerate_nonpositive(|x| out.push(x.to_vec()))?;
        Ok(out)
    }
}

/// Integer `t` with `a t² + 2 b t + c ≤ 0`, `a > 0`.
pub(crate) fn interval_for(a: &BigInt, b: &BigInt, c: &BigInt) -> Option<(BigInt, BigInt)> {
    debug_assert!(a.is_positive());
    // (a t + b)² ≤ b² − a c
    let r = b * b - a * c;
    if r.is_negative() {
        return None;
    }
    let s = r.sqrt();
    let lo = (-b - &s).div_ceil(a);
    let hi = (-b + &s).div_floor(a);
    if lo > hi {
        None
    } else {
        Some((lo, hi))
    }
}

fn descend<S: ExactScalar>(
    chain: &[QuadTriple<S>],
    level: usize,
    current: QuadTriple<S>,
    x: &mut Vec<i64>,
    f: &mut impl FnMut(&[i64]),
) -> Result<(), QuadError> {
    // `current` is chain[level] restricted at x[0..level], a one-variable triple
    let Some((lo, hi)) = current.one_var_range() else { return Ok(()) };
    let lo = lo.to_i64().ok_or(QuadError::Overflow("enumeration bound"))?;
    let hi = hi.to_i64().ok_or(QuadError::Overflow("enumeration bound"))?;
    for t in lo..=hi {
        x.push(t);
        if level + 1 == chain.len() {
            f(x);
        } else {
            let mut next = chain[level + 1].clone();
            for &v in x.iter() {
                next = next.restrict(&S::from_i64(v))?;
            }
            descend(chain, level + 1, next, x, f)?;
        }
        x.pop();
    }
    Ok(())
}

/// A non-degenerate integral symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeData {
    gram: Vec<Vec<i64>>,
}

impl LatticeData {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, QuadError> {
        let n = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(QuadError::Dimension { expected: n, got: row.len() });
            }
            for j in 0..i {
                if row[j] != gram[j][i] {
                    return Err(QuadError::NotSymmetric);
                }
            }
        }
        let lat = LatticeData { gram };
        if lat.det().is_zero() {
            return Err(QuadError::Precondition("degenerate form".into()));
        }
        Ok(lat)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0i64;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            let row = &self.gram[i];
            let mut s = 0i64;
            for (j, yj) in y.iter().enumerate() {
                s += row[j] * yj;
            }
            acc += xi * s;
        }
        acc
    }

    pub fn norm(&self, x: &[i64]) -> i64 {
        self.pair(x, x)
    }

    /// `x·G`, the functional `y ↦ ⟨x, y⟩`.
    pub fn dual(&self, x: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|j| (0..n).map(|i| x[i] * self.gram[i][j]).sum()).collect()
    }

    pub fn det(&self) -> BigInt {
        let q: Vec<Vec<BigRational>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        let n = q.len();
        let mut m = q;
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return BigInt::zero() };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= m[c][c].clone();
            for i in c + 1..n {
                let f = m[i][c].clone() / m[c][c].clone();
                for k in c..n {
                    let t = f.clone() * m[c][k].clone();
                    m[i][k] -= t;
                }
            }
        }
        det.to_integer()
    }

    /// Numbers of positive and negative eigenvalues.
    pub fn signature(&self) -> (usize, usize) {
        // Sylvester: count sign changes along a diagonalization
        let n = self.rank();
        let mut m: Vec<Vec<BigRational>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        let mut pos = 0;
        let mut neg = 0;
        let mut k = 0;
        while k < n {
            if m[k][k].is_zero() {
                // bring in a row with a nonzero pairing
                let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) else {
                    k += 1;
                    continue;
                };
                // e_k ← e_k + e_j (or e_k − e_j) makes the diagonal nonzero
                let s = if (m[j][j].clone() + m[k][j].clone() * BigRational::from_integer(2.into())).is_zero() {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
                for c in 0..n {
                    let t = s.clone() * m[j][c].clone();
                    m[k][c] += t;
                }
                for r in 0..n {
                    let t = s.clone() * m[r][j].clone();
                    m[r][k] += t;
                }
                continue;
            }
            let p = m[k][k].clone();
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                let f = m[i][k].clone() / p.clone();
                for c in k..n {
                    let t = f.clone() * m[k][c].clone();
                    m[i][c] -= t;
                }
            }
            for i in k + 1..n {
                m[k][i] = BigRational::zero();
            }
            k += 1;
        }
        (pos, neg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Qt = QuadTriple<BigRational>;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn eval_examples() {
        let qt = Qt::from_ints(&[vec![1]], &[0], 0).unwrap();
        assert_eq!(qt.eval(&[3]).unwrap(), r(9, 1));
        let qt = Qt::from_ints(&[vec![1, 0], vec![0, 1]], &[1, 0], -3).unwrap();
        assert_eq!(qt.eval(&[0, 0]).unwrap(), r(-3, 1));
        let qt = Qt::from_ints(&[vec![2, 1], vec![1, 2]], &[0, -1], 1).unwrap();
        // 2x² + 2xy + 2y² − 2y + 1 at (1, −1)
        let (x, y) = (1i64, -1i64);
        let direct = 2 * x * x + 2 * x * y + 2 * y * y - 2 * y + 1;
        assert_eq!(qt.eval(&[x, y]).unwrap(), r(direct, 1));
        assert!(qt.eval(&[1]).is_err());
    }

    #[test]
    fn projection_examples() {
        let qt = Qt::from_ints(&[vec![1, 0], vec![0, 1]], &[0, 0], -4).unwrap();
        let p = qt.project().unwrap();
        assert_eq!(p, Qt::from_ints(&[vec![1]], &[0], -4).unwrap());
        let qt = Qt::from_ints(&[vec![2, 1], vec![1, 2]], &[0, 0], -2).unwrap();
        let p = qt.project().unwrap();
        assert_eq!(p.q()[0][0], r(3, 2));
        assert!(p.is_positive());
    }

    #[test]
    fn restriction_examples() {
        let qt = Qt::from_ints(&[vec![1, 0], vec![0, 1]], &[0, 0], 0).unwrap();
        assert_eq!(qt.restrict(&r(0, 1)).unwrap(), Qt::from_ints(&[vec![1]], &[0], 0).unwrap());
        assert_eq!(*qt.restrict(&r(1, 1)).unwrap().c(), r(1, 1));
        let qt = Qt::from_ints(&[vec![3, 1, 0], vec![1, 2, 1], vec![0, 1, 4]], &[1, -2, 3], -5).unwrap();
        let res = qt.restrict(&r(2, 1)).unwrap();
        assert_eq!(res.eval(&[1, -1]).unwrap(), qt.eval(&[2, 1, -1]).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let qt = Qt::from_ints(&[vec![1, 0], vec![0, 1]], &[0, 0], -2).unwrap();
        let mut got = qt.collect_nonpositive().unwrap();
        got.sort();
        let mut scan = Vec::new();
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                if a * a + b * b <= 2 {
                    scan.push(vec![a, b]);
                }
            }
        }
        assert_eq!(got, scan);
        assert_eq!(got.len(), 9);
        let qt = Qt::from_ints(&[vec![2, 1], vec![1, 2]], &[0, 0], 1).unwrap();
        assert!(qt.collect_nonpositive().unwrap().is_empty());
        let qt = Qt::from_ints(&[vec![1]], &[-1], 0).unwrap();
        assert_eq!(qt.collect_nonpositive().unwrap(), vec![vec![0], vec![1], vec![2]]);
        let bad = Qt::from_ints(&[vec![1, 0], vec![0, -1]], &[0, 0], -1).unwrap();
        assert_eq!(bad.collect_nonpositive(), Err(QuadError::NotPositive));
    }

    #[test]
    fn lattice_data() {
        let lat = LatticeData::new(vec![vec![2, 0], vec![0, -2]]).unwrap();
        assert_eq!(lat.det(), BigInt::from(-4));
        assert_eq!(lat.signature(), (1, 1));
        let u = LatticeData::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(u.signature(), (1, 1));
        assert!(LatticeData::new(vec![vec![1, 1], vec![1, 1]]).is_err());
        assert_eq!(LatticeData::new(vec![vec![1, 2], vec![3, 1]]), Err(QuadError::NotSymmetric));
    }
}
