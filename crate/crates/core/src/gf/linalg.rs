//! Dense linear algebra over an exact field.

use super::field::Field;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// A matrix as a list of rows.
pub type Matrix<F> = Vec<Vec<F>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inverse().unwrap();
        for x in m[r].iter_mut().skip(c) {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for k in c..cols {
                if !pivot_row[k].is_zero() {
                    row[k] = row[k].clone() - f.clone() * pivot_row[k].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

pub fn transpose<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Basis of `{x : A·x = 0}` with `ncols` unknowns. Vector `k` has a one in
/// the `k`-th free column and zeros in the other free columns.
pub fn kernel<F: Field>(a: &Matrix<F>, ncols: usize) -> Vec<Vec<F>> {
    let mut m = a.clone();
    if m.iter().any(|r| r.len() != ncols) {
        panic!("row length differs from the number of unknowns");
    }
    let pivots = rref(&mut m);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut out = Vec::new();
    for f in 0..ncols {
        if is_pivot[f].is_some() {
            continue;
        }
        let mut v = vec![F::zero(); ncols];
        v[f] = F::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][f].clone();
        }
        out.push(v);
    }
    out
}

/// One solution of `A·x = b`.
pub fn solve_particular<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<Vec<F>, LinalgError> {
    if a.len() != b.len() {
        return Err(LinalgError::Dimension(format!("{} rows, {} right-hand sides", a.len(), b.len())));
    }
    let ncols = a.first().map_or(0, |r| r.len());
    let mut m: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&ncols) {
        return Err(LinalgError::Inconsistent);
    }
    let mut x = vec![F::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Ok(x)
}

pub fn inverse<F: Field>(a: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
    let n = a.len();
    let mut m: Matrix<F> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(LinalgError::Singular);
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det<F: Field>(a: &Matrix<F>) -> F {
    let n = a.len();
    let mut m = a.clone();
    let mut d = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return F::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d = d * m[c][c].clone();
        let inv = m[c][c].inverse().unwrap();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() * inv.clone();
            for k in c..n {
                m[i][k] = m[i][k].clone() - f.clone() * m[c][k].clone();
            }
        }
    }
    d
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter().zip(b).fold(F::zero(), |acc, (x, br)| acc + x.clone() * br[j].clone())
                })
                .collect()
        })
        .collect()
}

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

/// Incremental echelon basis of a growing set of vectors, used to test
/// membership in a span without recomputing from scratch.
#[derive(Clone, Debug)]
pub struct EchelonSpan<F: Field> {
    rows: Vec<(usize, Vec<F>)>,
    len: usize,
}

impl<F: Field> EchelonSpan<F> {
    pub fn new(len: usize) -> Self {
        EchelonSpan { rows: Vec::new(), len }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for k in *p..self.len {
                    if !r[k].is_zero() {
                        v[k] = v[k].clone() - f.clone() * r[k].clone();
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[p].inverse().unwrap();
        for x in r.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        self.rows.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field::Gf25;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn identity_kernel_is_trivial() {
        let id: Matrix<Gf25> = identity(4);
        assert!(kernel(&id, 4).is_empty());
        let z: Matrix<Gf25> = vec![vec![Gf25::ZERO; 4]; 4];
        assert_eq!(kernel(&z, 4).len(), 4);
    }

    #[test]
    fn particular_and_inconsistent() {
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(solve_particular(&a, &[q(3), q(7)]), Err(LinalgError::Inconsistent));
        let x = solve_particular(&a, &[q(3), q(6)]).unwrap();
        assert_eq!(x[0].clone() + q(2) * x[1].clone(), q(3));
    }

    #[test]
    fn inverse_and_det() {
        let a = vec![vec![q(2), q(1)], vec![q(7), q(4)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert_eq!(det(&a), q(1));
        assert_eq!(inverse(&vec![vec![q(1), q(2)], vec![q(2), q(4)]]), Err(LinalgError::Singular));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a: Matrix<Gf25> = vec![
            vec![Gf25::new(1, 2), Gf25::new(3, 0), Gf25::new(0, 1), Gf25::ONE],
            vec![Gf25::new(2, 4), Gf25::new(1, 0), Gf25::new(0, 2), Gf25::new(2, 0)],
        ];
        let k = kernel(&a, 4);
        assert_eq!(k.len(), 4 - rank(&a));
        for v in &k {
            for row in &a {
                let s = row.iter().zip(v).fold(Gf25::ZERO, |acc, (x, y)| acc + *x * *y);
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn echelon_span_membership() {
        let mut s = EchelonSpan::<Q>::new(3);
        assert!(s.insert(&[q(1), q(2), q(3)]));
        assert!(s.insert(&[q(0), q(1), q(1)]));
        assert!(s.contains(&[q(1), q(3), q(4)]));
        assert!(!s.insert(&[q(2), q(5), q(7)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
    }
}
