//! 3×3 matrices over `GF(25)` acting on row vectors.

use crate::fermat::group::Mat3;
use crate::fermat::points::{colinear, normalize, Point};
use crate::gf::Gf25;

pub const IDENTITY: Mat3 = [
    [Gf25::ONE, Gf25::ZERO, Gf25::ZERO],
    [Gf25::ZERO, Gf25::ONE, Gf25::ZERO],
    [Gf25::ZERO, Gf25::ZERO, Gf25::ONE],
];

pub fn row_times(p: &[Gf25; 3], a: &Mat3) -> [Gf25; 3] {
    let mut out = [Gf25::ZERO; 3];
    for (k, o) in out.iter_mut().enumerate() {
        *o = p[0] * a[0][k] + p[1] * a[1][k] + p[2] * a[2][k];
    }
    out
}

pub fn mul(a: &Mat3, b: &Mat3) -> Mat3 {
    [row_times(&a[0], b), row_times(&a[1], b), row_times(&a[2], b)]
}

pub fn scale(a: &Mat3, c: Gf25) -> Mat3 {
    a.map(|r| r.map(|x| x * c))
}

pub fn conj(a: &Mat3) -> Mat3 {
    a.map(|r| r.map(|x| x.frobenius()))
}

pub fn transpose(a: &Mat3) -> Mat3 {
    let mut t = *a;
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[j][i];
        }
    }
    t
}

pub fn det(a: &Mat3) -> Gf25 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn inverse(a: &Mat3) -> Option<Mat3> {
    let d = det(a).inv()?;
    let c = |i: usize, j: usize| {
        let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
        let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
        a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1]
    };
    let mut out = [[Gf25::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = c(j, i) * d;
        }
    }
    Some(out)
}

/// `Some(ν)` if `a = ν·I`.
pub fn scalar_of(a: &Mat3) -> Option<Gf25> {
    let nu = a[0][0];
    let ok = (0..3).all(|i| (0..3).all(|j| a[i][j] == if i == j { nu } else { Gf25::ZERO }));
    ok.then_some(nu)
}

/// The matrix `B = diag(c)·A` sending `e₀, e₁, e₂, (1,1,1)` to multiples of
/// `q₀, …, q₃` under `x ↦ xB`, where `A` has rows `q₀, q₁, q₂`.
pub fn frame(q: &[Point; 4]) -> Option<Mat3> {
    if colinear(&q[0], &q[1], &q[2]) {
        return None;
    }
    let a: Mat3 = [q[0], q[1], q[2]];
    let c = row_times(&q[3], &inverse(&a)?);
    if c.iter().any(|x| x.is_zero()) {
        return None;
    }
    Some([a[0].map(|x| x * c[0]), a[1].map(|x| x * c[1]), a[2].map(|x| x * c[2])])
}

/// Image of a point under `x ↦ xA`, normalized.
pub fn map_point(p: &Point, a: &Mat3) -> Point {
    normalize(row_times(p, a)).expect("invertible matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_sends_standard_points() {
        let pts = crate::fermat::points::all_points();
        let e = [
            [Gf25::ONE, Gf25::ZERO, Gf25::ZERO],
            [Gf25::ZERO, Gf25::ONE, Gf25::ZERO],
            [Gf25::ZERO, Gf25::ZERO, Gf25::ONE],
            [Gf25::ONE, Gf25::ONE, Gf25::ONE],
        ];
        let mut found = 0;
        for k in 0..200usize {
            let q = [pts[(k * 37 + 5) % 651], pts[(k * 101 + 17) % 651], pts[(k * 211 + 300) % 651], pts[(k * 13 + 77) % 651]];
            let Some(b) = frame(&q) else { continue };
            found += 1;
            for i in 0..4 {
                assert_eq!(map_point(&e[i], &b), q[i]);
            }
            assert_eq!(mul(&b, &inverse(&b).unwrap()), IDENTITY);
        }
        assert!(found > 100);
    }
}
