//! Integer linear algebra: echelon forms with unimodular transforms, affine
//! solution lattices, basis completion and LLL reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{LatticeData, QuadError};

pub type BigMatrix = Vec<Vec<BigInt>>;

fn big(v: &[Vec<i64>]) -> BigMatrix {
    v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn small(v: &[BigInt]) -> Result<Vec<i64>, QuadError> {
    v.iter().map(|x| x.to_i64().ok_or(QuadError::Overflow("integer basis"))).collect()
}

fn identity(n: usize) -> BigMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Row echelon form `H = U·A` with `U` unimodular. Returns `(U, H, rank)`;
/// rows of `H` past the rank are zero and pivots are positive.
pub fn row_echelon(a: &BigMatrix) -> (BigMatrix, BigMatrix, usize) {
    let n = a.len();
    let k = a.first().map_or(0, |r| r.len());
    let mut h = a.clone();
    let mut u = identity(n);
    let mut r = 0;
    for c in 0..k {
        if r == n {
            break;
        }
        // Euclid on column c among rows r..n
        loop {
            let piv = (r..n).filter(|&i| !h[i][c].is_zero()).min_by_key(|&i| h[i][c].abs());
            let Some(p) = piv else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..n {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                for j in 0..k {
                    let t = &q * &h[r][j];
                    h[i][j] -= t;
                }
                for j in 0..n {
                    let t = &q * &u[r][j];
                    u[i][j] -= t;
                }
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -x.clone();
            }
            for x in u[r].iter_mut() {
                *x = -x.clone();
            }
        }
        r += 1;
    }
    (u, h, r)
}

/// Result of solving the integer system defining an affine slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceStatus {
    Ok(AffineSlice),
    /// No integer point satisfies the constraints.
    Empty,
}

impl SliceStatus {
    pub fn slice(self) -> Option<AffineSlice> {
        match self {
            SliceStatus::Ok(s) => Some(s),
            SliceStatus::Empty => None,
        }
    }
}

/// `{x ∈ Zⁿ : ⟨x, vᵢ⟩ = aᵢ}` as `origin + span_Z(basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSlice {
    pub origin: Vec<i64>,
    pub basis: Vec<Vec<i64>>,
    pub constraints: Vec<(Vec<i64>, i64)>,
}

impl AffineSlice {
    /// Solves `⟨x, vᵢ⟩ = aᵢ` for the pairing of `lat`.
    pub fn solve(lat: &LatticeData, constraints: &[(Vec<i64>, i64)]) -> Result<SliceStatus, QuadError> {
        let n = lat.rank();
        let k = constraints.len();
        for (v, _) in constraints {
            if v.len() != n {
                return Err(QuadError::Dimension { expected: n, got: v.len() });
            }
        }
        // A has columns G·vᵢ; x·A = a
        let cols: Vec<Vec<i64>> = constraints.iter().map(|(v, _)| lat.dual(v)).collect();
        let a: BigMatrix = (0..n).map(|i| (0..k).map(|j| BigInt::from(cols[j][i])).collect()).collect();
        let rhs: Vec<BigInt> = constraints.iter().map(|(_, x)| BigInt::from(*x)).collect();
        let (u, h, r) = row_echelon(&a);
        // y·H = rhs with y supported on the first r coordinates
        let mut y = vec![BigInt::zero(); n];
        let mut row = 0;
        for c in 0..k {
            if row == r || h[row][c].is_zero() {
                continue;
            }
            let mut s = rhs[c].clone();
            for i in 0..row {
                s -= &y[i] * &h[i][c];
            }
            let (q, m) = s.div_mod_floor(&h[row][c]);
            if !m.is_zero() {
                return Ok(SliceStatus::Empty);
            }
            y[row] = q;
            row += 1;
        }
        for c in 0..k {
            let mut s = BigInt::zero();
            for i in 0..r {
                s += &y[i] * &h[i][c];
            }
            if s != rhs[c] {
                return Ok(SliceStatus::Empty);
            }
        }
        let mut origin = vec![BigInt::zero(); n];
        for i in 0..r {
            for j in 0..n {
                origin[j] += &y[i] * &u[i][j];
            }
        }
        let basis = u[r..].iter().map(|row| small(row)).collect::<Result<Vec<_>, _>>()?;
        Ok(SliceStatus::Ok(AffineSlice { origin: small(&origin)?, basis, constraints: constraints.to_vec() }))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn point(&self, t: &[i64]) -> Vec<i64> {
        let mut x = self.origin.clone();
        for (ti, b) in t.iter().zip(&self.basis) {
            for (xj, bj) in x.iter_mut().zip(b) {
                *xj += ti * bj;
            }
        }
        x
    }

    /// Replaces the basis by `U·basis` for a unimodular `U`.
    pub fn transform(&mut self, u: &[Vec<i64>]) {
        let n = self.origin.len();
        let nb: Vec<Vec<i64>> = u
            .iter()
            .map(|row| {
                let mut v = vec![0i64; n];
                for (c, b) in row.iter().zip(&self.basis) {
                    for j in 0..n {
                        v[j] += c * b[j];
                    }
                }
                v
            })
            .collect();
        self.basis = nb;
    }
}

/// A unimodular matrix whose first row is the primitive vector `h`.
pub fn complete_to_basis(h: &[i64]) -> Result<Vec<Vec<i64>>, QuadError> {
    let n = h.len();
    let a: BigMatrix = h.iter().map(|&x| vec![BigInt::from(x)]).collect();
    let (u, hh, r) = row_echelon(&a);
    if r != 1 || !hh[0][0].is_one() {
        return Err(QuadError::Precondition("vector is not primitive".into()));
    }
    // U·hᵗ = e₁, so hᵗ is the first column of U⁻¹
    let inv = big_inverse(&u).ok_or(QuadError::Precondition("singular transform".into()))?;
    let out: Vec<Vec<i64>> = (0..n)
        .map(|i| small(&(0..n).map(|j| inv[j][i].clone()).collect::<Vec<_>>()))
        .collect::<Result<_, _>>()?;
    debug_assert_eq!(out[0], h);
    Ok(out)
}

fn big_inverse(u: &BigMatrix) -> Option<BigMatrix> {
    let n = u.len();
    let mut m: Vec<Vec<BigRational>> = u
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..2 * n {
                    let t = f.clone() * m[c][j].clone();
                    m[i][j] -= t;
                }
            }
        }
    }
    m.into_iter()
        .map(|r| r[n..].iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect())
        .collect()
}

fn gso(g: &BigMatrix) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = g.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut b = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = BigRational::from_integer(g[i][j].clone());
            for k in 0..j {
                s -= mu[j][k].clone() * mu[i][k].clone() * b[k].clone();
            }
            mu[i][j] = s / b[j].clone();
        }
        let mut s = BigRational::from_integer(g[i][i].clone());
        for k in 0..i {
            s -= mu[i][k].clone() * mu[i][k].clone() * b[k].clone();
        }
        b[i] = s;
    }
    (mu, b)
}

fn round(x: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * &two))
}

/// LLL reduction (δ = 99/100) of the basis of a positive definite Gram
/// matrix. Returns the unimodular `U` whose rows express the reduced basis
/// in the input basis; the reduced Gram matrix is `U·G·Uᵗ`.
pub fn lll_reduce(gram: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, QuadError> {
    let n = gram.len();
    let mut g = big(gram);
    let mut u = identity(n);
    if n <= 1 {
        return Ok(u.iter().map(|r| small(r)).collect::<Result<_, _>>()?);
    }
    let delta = BigRational::new(99.into(), 100.into());
    let (mut mu, mut b) = gso(&g);
    if b.iter().any(|x| !x.is_positive()) {
        return Err(QuadError::NotPositive);
    }
    let sub_row = |g: &mut BigMatrix, u: &mut BigMatrix, k: usize, j: usize, q: &BigInt| {
        // b_k ← b_k − q b_j
        for c in 0..n {
            let t = q * &u[j][c];
            u[k][c] -= t;
        }
        for c in 0..n {
            let t = q * &g[j][c];
            g[k][c] -= t;
        }
        for r in 0..n {
            let t = q * &g[r][j];
            g[r][k] -= t;
        }
    };
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = round(&mu[k][j]);
            if !q.is_zero() {
                sub_row(&mut g, &mut u, k, j, &q);
                let qr = BigRational::from_integer(q);
                for i in 0..j {
                    let t = qr.clone() * mu[j][i].clone();
                    mu[k][i] -= t;
                }
                mu[k][j] -= qr;
            }
        }
        let lhs = b[k].clone();
        let rhs = (delta.clone() - mu[k][k - 1].clone() * mu[k][k - 1].clone()) * b[k - 1].clone();
        if lhs < rhs {
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            u.swap(k, k - 1);
            let fresh = gso(&g);
            mu = fresh.0;
            b = fresh.1;
            k = (k - 1).max(1);
        } else {
            k += 1;
        }
    }
    u.iter().map(|r| small(r)).collect()
}

/// `U·G·Uᵗ` for integer matrices.
pub fn congruence(u: &[Vec<i64>], g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = g.len();
    let ug: Vec<Vec<i64>> =
        u.iter().map(|r| (0..n).map(|j| (0..n).map(|k| r[k] * g[k][j]).sum()).collect()).collect();
    ug.iter().map(|r| u.iter().map(|s| (0..n).map(|k| r[k] * s[k]).sum()).collect()).collect()
}

/// Integer Hermite normal form of the row span (rows past the rank
/// dropped).
pub fn hermite_rows(rows: &[Vec<i64>]) -> BigMatrix {
    if rows.is_empty() {
        return Vec::new();
    }
    let n = rows[0].len();
    // row-echelon of the transpose acts on columns; work on rows directly
    let a = big(rows);
    let mut h = a;
    let m = h.len();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let piv = (r..m).filter(|&i| !h[i][c].is_zero()).min_by_key(|&i| h[i][c].abs());
            let Some(p) = piv else { break };
            h.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                for j in 0..n {
                    let t = &q * &h[r][j];
                    h[i][j] -= t;
                }
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                for j in 0..n {
                    let t = &q * &h[r][j];
                    h[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    h.truncate(r);
    h
}

/// Whether the integer row span of `rows` is all of `Zⁿ`.
pub fn spans_lattice(rows: &[Vec<i64>], n: usize) -> bool {
    let h = hermite_rows(rows);
    h.len() == n && (0..n).all(|i| h[i][i].is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slice_of_hyperbolic_plane() {
        let lat = LatticeData::new(vec![vec![2, 0], vec![0, -2]]).unwrap();
        let s = AffineSlice::solve(&lat, &[(vec![1, 0], 2)]).unwrap().slice().unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(lat.pair(&s.origin, &[1, 0]), 2);
        let p = s.point(&[5]);
        assert_eq!(lat.pair(&p, &[1, 0]), 2);
        assert_eq!(AffineSlice::solve(&lat, &[(vec![1, 0], 1)]).unwrap(), SliceStatus::Empty);
    }

    #[test]
    fn completion_is_unimodular() {
        let h = vec![3, 5, -7, 2];
        let b = complete_to_basis(&h).unwrap();
        assert_eq!(b[0], h);
        assert!(spans_lattice(&b, 4));
        assert!(complete_to_basis(&[2, 4]).is_err());
    }

    #[test]
    fn lll_shortens() {
        let g = vec![vec![1, 0], vec![0, 1]];
        let skew: Vec<Vec<i64>> = vec![vec![1, 7], vec![2, 15]];
        let gram = congruence(&skew, &g);
        let u = lll_reduce(&gram).unwrap();
        let red = congruence(&u, &gram);
        assert_eq!(red[0][0] + red[1][1], 2);
    }

    #[test]
    fn hermite_span() {
        assert!(spans_lattice(&[vec![2, 1], vec![1, 1]], 2));
        assert!(!spans_lattice(&[vec![2, 0], vec![0, 1]], 2));
        assert!(!spans_lattice(&[vec![1, 1]], 2));
    }
}
