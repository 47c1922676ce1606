//! Fast exact enumeration for integer triples.
//!
//! Coordinates are fixed in the order `t₀, t₁, …`; the bound for `t_k` comes
//! from the triple with `t_{k+1}, …` minimized out. With `D_k` the
//! determinant of the trailing block `Q[k..n, k..n]` every intermediate value
//! is an integer once scaled by the matching `D`, so the inner loop runs on
//! checked `i128` arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{QuadError, QuadTriple};

/// Which integer points to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `q(t) ≤ 0`.
    Sublevel,
    /// `q(t) = 0`.
    Level,
}

#[derive(Clone, Debug)]
pub struct IntEnumerator {
    n: usize,
    /// `d[k] = det Q[k..n, k..n]`, `d[n] = 1`.
    d: Vec<i128>,
    /// `rows[k][j]` for `j < k` and `lin[k]`: the scaled linear part at level `k`.
    rows: Vec<Vec<i128>>,
    lin: Vec<i128>,
    /// `D_0 · min q`.
    base: i128,
    /// Affine image `x = origin + Σ t_k·basis_k`, if any.
    origin: Vec<i64>,
    basis: Vec<Vec<i64>>,
}

fn to_i128(x: &BigInt) -> Result<i128, QuadError> {
    x.to_i128().ok_or(QuadError::Overflow("enumerator setup"))
}

fn exact(x: BigRational) -> Result<i128, QuadError> {
    if !x.is_integer() {
        return Err(QuadError::Precondition("scaled coefficient is not integral".into()));
    }
    to_i128(&x.to_integer())
}

#[inline]
fn isqrt(r: i128) -> i128 {
    r.isqrt()
}

#[inline]
fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

#[inline]
fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

macro_rules! ck {
    ($e:expr) => {
        match $e {
            Some(v) => v,
            None => return Err(QuadError::Overflow("enumeration")),
        }
    };
}

impl IntEnumerator {
    /// Prepares a positive triple with integer coefficients.
    pub fn new(qt: &QuadTriple<BigRational>) -> Result<Self, QuadError> {
        let n = qt.dim();
        if !qt.is_positive() {
            return Err(QuadError::NotPositive);
        }
        for v in qt.q().iter().flatten().chain(qt.l()).chain(std::iter::once(qt.c())) {
            if !v.is_integer() {
                return Err(QuadError::Precondition("coefficients must be integers".into()));
            }
        }
        // chain[k] has k+1 variables
        let mut chain = vec![qt.clone()];
        while chain.last().unwrap().dim() > 1 {
            let p = chain.last().unwrap().project()?;
            chain.push(p);
        }
        chain.reverse();
        let mut d = vec![0i128; n + 1];
        d[n] = 1;
        // trailing determinants by Schur: d[k] = P_k.q[k][k] · d[k+1]
        for k in (0..n).rev() {
            let a = chain[k].q()[k][k].clone() * BigRational::from_integer(d[k + 1].into());
            d[k] = exact(a)?;
        }
        let mut rows = Vec::with_capacity(n);
        let mut lin = Vec::with_capacity(n);
        for k in 0..n {
            let s = BigRational::from_integer(d[k + 1].into());
            let p = &chain[k];
            rows.push((0..k).map(|j| exact(p.q()[k][j].clone() * s.clone())).collect::<Result<Vec<_>, _>>()?);
            lin.push(exact(p.l()[k].clone() * s)?);
        }
        let base = if n == 0 {
            exact(qt.c().clone())?
        } else {
            let p0 = &chain[0];
            let min = p0.c().clone() - p0.l()[0].clone() * p0.l()[0].clone() / p0.q()[0][0].clone();
            exact(min * BigRational::from_integer(d[0].into()))?
        };
        Ok(IntEnumerator { n, d, rows, lin, base, origin: Vec::new(), basis: Vec::new() })
    }

    pub fn from_ints(q: &[Vec<i64>], l: &[i64], c: i64) -> Result<Self, QuadError> {
        IntEnumerator::new(&QuadTriple::from_ints(q, l, c)?)
    }

    /// Reports `origin + Σ t_k·basis_k` instead of `t`.
    pub fn with_affine_map(mut self, origin: Vec<i64>, basis: Vec<Vec<i64>>) -> Self {
        assert_eq!(basis.len(), self.n, "one basis vector per variable");
        self.origin = origin;
        self.basis = basis;
        self
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Calls `f` on each solution. With an affine map, `f` gets the image.
    pub fn for_each(&self, mode: Mode, mut f: impl FnMut(&[i64])) -> Result<(), QuadError> {
        self.run(mode, None, &mut f)
    }

    pub fn count(&self, mode: Mode) -> Result<u64, QuadError> {
        let mut c = 0u64;
        self.run(mode, None, &mut |_: &[i64]| c += 1)?;
        Ok(c)
    }

    /// Values of `t₀` with a possibly nonempty subtree.
    pub fn first_range(&self) -> Option<(i64, i64)> {
        if self.n == 0 {
            return None;
        }
        let r = -self.d[1] * self.base;
        if r < 0 {
            return None;
        }
        let s = isqrt(r);
        let lo = div_ceil(-self.lin[0] - s, self.d[0]);
        let hi = div_floor(-self.lin[0] + s, self.d[0]);
        if lo > hi {
            None
        } else {
            Some((lo as i64, hi as i64))
        }
    }

    /// Enumerates the subtree with `t₀ = t0` (all of it when `None`).
    pub fn for_each_with_first(&self, mode: Mode, t0: i64, mut f: impl FnMut(&[i64])) -> Result<(), QuadError> {
        self.run(mode, Some(t0), &mut f)
    }

    fn run(&self, mode: Mode, only_first: Option<i64>, f: &mut dyn FnMut(&[i64])) -> Result<(), QuadError> {
        let n = self.n;
        if n == 0 {
            let ok = match mode {
                Mode::Sublevel => self.base <= 0,
                Mode::Level => self.base == 0,
            };
            if ok {
                f(&self.origin);
            }
            return Ok(());
        }
        let affine = !self.basis.is_empty();
        let m = self.origin.len();
        // xs[k] = origin + Σ_{j<k} t_j basis_j
        let mut xs: Vec<Vec<i64>> = if affine { vec![self.origin.clone(); n + 1] } else { Vec::new() };
        let mut t = vec![0i64; n];
        // acc[k][j] = lin[k] + Σ_{i<j} rows[k][i] t_i, kept for j = current level
        let mut beta: Vec<Vec<i128>> = (0..n).map(|k| vec![self.lin[k]; k + 1]).collect();
        let mut val = vec![0i128; n + 1]; // val[k] = scaled value after fixing t_0..t_{k-1}
        val[0] = self.base;
        let mut hi = vec![0i64; n];
        let mut cur = vec![0i64; n];
        let mut k = 0usize;
        // compute range at level k and push
        let range = |k: usize, beta_k: i128, prev: i128| -> Result<Option<(i128, i128, i128)>, QuadError> {
            let r = ck!(self.d[k + 1].checked_mul(prev)).checked_neg();
            let r = ck!(r);
            if r < 0 {
                return Ok(None);
            }
            let s = isqrt(r);
            if mode == Mode::Level && k + 1 == self.n {
                if s * s != r {
                    return Ok(None);
                }
            }
            let lo = div_ceil(-beta_k - s, self.d[k]);
            let hi = div_floor(-beta_k + s, self.d[k]);
            Ok(if lo > hi { None } else { Some((lo, hi, s)) })
        };
        let enter = |k: usize, beta: &Vec<Vec<i128>>, val: &Vec<i128>, cur: &mut Vec<i64>, hi: &mut Vec<i64>| -> Result<bool, QuadError> {
            match range(k, beta[k][k], val[k])? {
                None => Ok(false),
                Some((lo, h, _)) => {
                    cur[k] = lo as i64;
                    hi[k] = h as i64;
                    Ok(true)
                }
            }
        };
        let mut entered = enter(0, &beta, &val, &mut cur, &mut hi)?;
        if let Some(a) = only_first {
            if entered && a >= cur[0] && a <= hi[0] {
                cur[0] = a;
                hi[0] = a;
            } else {
                entered = false;
            }
        }
        if !entered {
            return Ok(());
        }
        loop {
            if cur[k] > hi[k] {
                if k == 0 {
                    return Ok(());
                }
                k -= 1;
                cur[k] += 1;
                continue;
            }
            let tk = cur[k];
            let e = ck!(ck!(self.d[k].checked_mul(tk as i128)).checked_add(beta[k][k]));
            let sq = ck!(e.checked_mul(e));
            let num = ck!(sq.checked_add(ck!(self.d[k + 1].checked_mul(val[k]))));
            let v = num / self.d[k];
            if k + 1 == n {
                let ok = match mode {
                    Mode::Sublevel => v <= 0,
                    Mode::Level => v == 0,
                };
                if ok {
                    t[k] = tk;
                    if affine {
                        let (head, tail) = xs.split_at_mut(k + 1);
                        let src = &head[k];
                        let dst = &mut tail[0];
                        for j in 0..m {
                            dst[j] = src[j] + tk * self.basis[k][j];
                        }
                        f(dst);
                    } else {
                        f(&t);
                    }
                }
                cur[k] += 1;
                continue;
            }
            t[k] = tk;
            val[k + 1] = v;
            if affine {
                let (head, tail) = xs.split_at_mut(k + 1);
                let src = &head[k];
                let dst = &mut tail[0];
                for j in 0..m {
                    dst[j] = src[j] + tk * self.basis[k][j];
                }
            }
            for (kk, b) in beta.iter_mut().enumerate().skip(k + 1) {
                let next = ck!(b[k].checked_add(ck!(self.rows[kk][k].checked_mul(tk as i128))));
                b[k + 1] = next;
            }
            if enter(k + 1, &beta, &val, &mut cur, &mut hi)? {
                k += 1;
            } else {
                cur[k] += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn matches_reference_on_small_cases() {
        let q = vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 2]];
        let qt = QuadTriple::<BigRational>::from_ints(&q, &[1, -2, 0], -9).unwrap();
        let mut a = qt.collect_nonpositive().unwrap();
        let e = IntEnumerator::new(&qt).unwrap();
        let mut b = Vec::new();
        e.for_each(Mode::Sublevel, |x| b.push(x.to_vec())).unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(e.count(Mode::Sublevel).unwrap() as usize, a.len());
        let zeros: Vec<_> = a.iter().filter(|x| qt.eval(x).unwrap().is_zero()).cloned().collect();
        let mut c = Vec::new();
        e.for_each(Mode::Level, |x| c.push(x.to_vec())).unwrap();
        c.sort();
        assert_eq!(c, zeros);
    }

    #[test]
    fn first_coordinate_split_covers_everything() {
        let q = vec![vec![2, 1], vec![1, 2]];
        let e = IntEnumerator::from_ints(&q, &[0, 0], -20).unwrap();
        let total = e.count(Mode::Sublevel).unwrap();
        let (lo, hi) = e.first_range().unwrap();
        let mut sum = 0;
        for a in lo..=hi {
            e.for_each_with_first(Mode::Sublevel, a, |_| sum += 1).unwrap();
        }
        assert_eq!(sum, total);
    }

    #[test]
    fn affine_map_is_applied() {
        let e = IntEnumerator::from_ints(&[vec![1]], &[0], -1).unwrap().with_affine_map(vec![5, 5], vec![vec![1, 2]]);
        let mut got = Vec::new();
        e.for_each(Mode::Sublevel, |x| got.push(x.to_vec())).unwrap();
        assert_eq!(got, vec![vec![4, 3], vec![5, 5], vec![6, 7]]);
    }
}
