use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::engine::{IntEnumerator, Mode};
use super::intlin::{complete_to_basis, congruence, lll_reduce, AffineSlice};
use super::{LatticeData, QuadError, QuadTriple};

fn int_triple(q: Vec<Vec<i64>>, l: Vec<i64>, c: i64) -> Result<QuadTriple<BigRational>, QuadError> {
    QuadTriple::from_ints(&q, &l, c)
}

/// Prepared search for `{x in slice : ⟨x, x⟩ = d}`.
#[derive(Clone, Debug)]
pub struct FixedNorm {
    enumerator: IntEnumerator,
}

impl FixedNorm {
    /// The form must be negative definite on the direction lattice of the
    /// slice (true when some constraint vector has positive norm).
    pub fn new(lat: &LatticeData, slice: &AffineSlice, d: i64) -> Result<Self, QuadError> {
        let k = slice.dim();
        let g = lat.gram();
        let neg: Vec<Vec<i64>> = g.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let q0 = congruence(&slice.basis, &neg);
        let u = lll_reduce(&q0)?;
        let mut s = slice.clone();
        s.transform(&u);
        s.basis.reverse();
        let q = congruence(&s.basis, &neg);
        // recentre the origin at the nearest lattice point to the maximum of the norm
        let l0: Vec<i64> = s.basis.iter().map(|b| -lat.pair(b, &s.origin)).collect();
        let qt = int_triple(q.clone(), l0.clone(), 0)?;
        if k > 0 {
            let center = solve_rational(qt.q(), &l0)?;
            let shift: Vec<i64> = center
                .iter()
                .map(|c| {
                    let two = BigInt::from(2);
                    let r = (c.numer() * &two + c.denom()).div_floor(&(c.denom() * &two));
                    r.to_i64().ok_or(QuadError::Overflow("slice centre"))
                })
                .collect::<Result<_, _>>()?;
            s.origin = s.point(&shift);
        }
        let l: Vec<i64> = s.basis.iter().map(|b| -lat.pair(b, &s.origin)).collect();
        let c = d - lat.norm(&s.origin);
        let enumerator = IntEnumerator::new(&int_triple(q, l, c)?)?.with_affine_map(s.origin.clone(), s.basis.clone());
        Ok(FixedNorm { enumerator })
    }

    pub fn for_each(&self, f: impl FnMut(&[i64])) -> Result<(), QuadError> {
        self.enumerator.for_each(Mode::Level, f)
    }

    pub fn count(&self) -> Result<u64, QuadError> {
        self.enumerator.count(Mode::Level)
    }

    pub fn collect(&self) -> Result<Vec<Vec<i64>>, QuadError> {
        let mut out = Vec::new();
        self.for_each(|x| out.push(x.to_vec()))?;
        Ok(out)
    }

    pub fn enumerator(&self) -> &IntEnumerator {
        &self.enumerator
    }
}

/// `x` with `x·Q = −L`, the centre of the ellipsoid.
fn solve_rational(q: &[Vec<BigRational>], l: &[i64]) -> Result<Vec<BigRational>, QuadError> {
    let n = q.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r = q[i].clone();
            r.push(BigRational::from_integer(BigInt::from(-l[i])));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).ok_or(QuadError::NotPositive)?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let t = f.clone() * m[c][j].clone();
                    m[i][j] -= t;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n].clone()).collect())
}

/// All `x` with `⟨x, vᵢ⟩ = aᵢ` and `⟨x, x⟩ = d`; `None` when the linear
/// system has no integer solution.
pub fn solve_fixed_norm(
    lat: &LatticeData,
    constraints: &[(Vec<i64>, i64)],
    d: i64,
) -> Result<Option<Vec<Vec<i64>>>, QuadError> {
    let Some(slice) = AffineSlice::solve(lat, constraints)?.slice() else { return Ok(None) };
    Ok(Some(FixedNorm::new(lat, &slice, d)?.collect()?))
}

/// Prepared search for `{r : ⟨r,h⟩ > 0, ⟨r,v⟩ < 0, ⟨r,r⟩ = d}`.
#[derive(Clone, Debug)]
pub struct SeparatingRoots {
    enumerator: IntEnumerator,
    lat: LatticeData,
    h: Vec<i64>,
    v: Vec<i64>,
    ch: i64,
    d: i64,
}

impl SeparatingRoots {
    pub fn new(lat: &LatticeData, h: &[i64], v: &[i64], d: i64) -> Result<Self, QuadError> {
        let n = lat.rank();
        if h.len() != n || v.len() != n {
            return Err(QuadError::Dimension { expected: n, got: h.len().min(v.len()) });
        }
        if lat.norm(h) <= 0 || lat.norm(v) <= 0 || lat.pair(h, v) <= 0 {
            return Err(QuadError::Precondition("need ⟨h,h⟩ > 0, ⟨v,v⟩ > 0, ⟨h,v⟩ > 0".into()));
        }
        let g = h.iter().fold(0i64, |acc, x| acc.gcd(x));
        let h0: Vec<i64> = h.iter().map(|x| x / g).collect();
        let basis = complete_to_basis(&h0)?;
        let us = &basis[1..];
        let ch = lat.norm(&h0);
        let a = lat.pair(&h0, v);
        let m = n - 1;
        let uh: Vec<i128> = us.iter().map(|u| lat.pair(u, &h0) as i128).collect();
        let uv: Vec<i128> = us.iter().map(|u| lat.pair(u, v) as i128).collect();
        let (chw, aw) = (ch as i128, a as i128);
        // D·f with D = c_h·a²:  a²(c_h⟨u_i,u_j⟩ − uh_i uh_j) + (c_h uv_i − uh_i a)(c_h uv_j − uh_j a)
        let wv: Vec<i128> = (0..m).map(|i| chw * uv[i] - uh[i] * aw).collect();
        let mut q = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in 0..m {
                let uu = lat.pair(&us[i], &us[j]) as i128;
                let f = aw * aw * (chw * uu - uh[i] * uh[j]) + wv[i] * wv[j];
                q[i][j] = (-f).to_i64().ok_or(QuadError::Overflow("separating-root form"))?;
            }
        }
        let scale = chw * aw * aw;
        let c = (scale * d as i128).to_i64().ok_or(QuadError::Overflow("separating-root bound"))?;
        let u = lll_reduce(&q)?;
        let mut red = congruence(&u, &q);
        let mut rows: Vec<Vec<i64>> = u
            .iter()
            .map(|r| {
                let mut x = vec![0i64; n];
                for (k, ck) in r.iter().enumerate() {
                    for j in 0..n {
                        x[j] += ck * us[k][j];
                    }
                }
                x
            })
            .collect();
        rows.reverse();
        red.reverse();
        for r in red.iter_mut() {
            r.reverse();
        }
        let enumerator = IntEnumerator::new(&int_triple(red, vec![0; m], c)?)?.with_affine_map(vec![0; n], rows);
        Ok(SeparatingRoots { enumerator, lat: lat.clone(), h: h0, v: v.to_vec(), ch, d })
    }

    pub fn for_each(&self, mut f: impl FnMut(&[i64])) -> Result<(), QuadError> {
        let (lat, h0, v, ch, d) = (&self.lat, &self.h, &self.v, self.ch, self.d);
        let hd = lat.dual(h0);
        let mut r = vec![0i64; h0.len()];
        self.enumerator.for_each(Mode::Sublevel, |x| {
            let nx = lat.norm(x) as i128;
            let m: i128 = x.iter().zip(&hd).map(|(a, b)| (*a as i128) * (*b as i128)).sum();
            let big_r = d as i128 * ch as i128 - (ch as i128 * nx - m * m);
            if big_r <= 0 {
                return;
            }
            let s = big_r.isqrt();
            if s * s != big_r || (s - m) % ch as i128 != 0 {
                return;
            }
            let y0 = ((s - m) / ch as i128) as i64;
            for j in 0..r.len() {
                r[j] = y0 * h0[j] + x[j];
            }
            if lat.pair(&r, v) < 0 {
                debug_assert_eq!(lat.norm(&r), d);
                f(&r);
            }
        })
    }

    pub fn collect(&self) -> Result<Vec<Vec<i64>>, QuadError> {
        let mut out = Vec::new();
        self.for_each(|r| out.push(r.to_vec()))?;
        Ok(out)
    }

    /// First member found, if any.
    pub fn any(&self) -> Result<Option<Vec<i64>>, QuadError> {
        // the search is small; stopping early is not worth the plumbing
        Ok(self.collect()?.into_iter().next())
    }
}

/// `{r : ⟨r,h⟩ > 0, ⟨r,v⟩ < 0, ⟨r,r⟩ = d}`.
pub fn separating_roots(lat: &LatticeData, h: &[i64], v: &[i64], d: i64) -> Result<Vec<Vec<i64>>, QuadError> {
    let mut out = SeparatingRoots::new(lat, h, v, d)?.collect()?;
    out.sort();
    Ok(out)
}

/// `{r : ⟨r,h⟩ > 0, ⟨r,v⟩ < 0, ⟨r,r⟩ = d}` for `d < 0`, split by the pair
/// `(⟨r,h⟩, ⟨r,v⟩) = (m, −k)`. Only finitely many pairs are possible: the
/// projection of `r` to the hyperbolic plane spanned by `h, v` has norm at
/// least `d`. Each stratum is a fixed-norm search in the negative definite
/// complement of that plane, which keeps all numbers small where the scaled
/// form of [`SeparatingRoots`] can overflow.
pub fn separating_roots_stratified(
    lat: &LatticeData,
    h: &[i64],
    v: &[i64],
    d: i64,
) -> Result<Vec<Vec<i64>>, QuadError> {
    let (nh, nv, dl) = (lat.norm(h) as i128, lat.norm(v) as i128, lat.pair(h, v) as i128);
    if nh <= 0 || nv <= 0 || dl <= 0 || d >= 0 {
        return Err(QuadError::Precondition("need ⟨h,h⟩ > 0, ⟨v,v⟩ > 0, ⟨h,v⟩ > 0, d < 0".into()));
    }
    let delta = nh * nv - dl * dl;
    if delta == 0 {
        // v is a multiple of h
        return Ok(Vec::new());
    }
    if delta > 0 {
        return Err(QuadError::Precondition("h and v span a positive definite plane".into()));
    }
    // p² = (nv m² + 2 dl m k + nh k²)/Δ ≥ d
    let bound = d as i128 * delta;
    let fits = |m: i128, k: i128| nv * m * m + 2 * dl * m * k + nh * k * k <= bound;
    let mut out = Vec::new();
    let mut m = 1i128;
    while fits(m, 1) {
        let mut k = 1i128;
        while fits(m, k) {
            let cons = [(h.to_vec(), m as i64), (v.to_vec(), -(k as i64))];
            if let Some(slice) = AffineSlice::solve(lat, &cons)?.slice() {
                out.extend(FixedNorm::new(lat, &slice, d)?.collect()?);
            }
            k += 1;
        }
        m += 1;
    }
    out.sort();
    Ok(out)
}
