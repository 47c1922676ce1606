//! Points and lines of the projective plane over `GF(25)`, and tangency to
//! the Hermitian sextic `x⁶ + y⁶ + z⁶`.

use num_traits::{One, Zero};

use crate::gf::ext::Gf15625;
use crate::gf::{Field, Gf25};

use super::FermatError;

/// Homogeneous coordinates, normalized so the first nonzero entry is 1.
pub type Point = [Gf25; 3];

pub fn normalize<F: Field + Copy>(p: [F; 3]) -> Option<[F; 3]> {
    let i = p.iter().position(|c| !c.is_zero())?;
    let inv = p[i].inverse().unwrap();
    Some([p[0] * inv, p[1] * inv, p[2] * inv])
}

/// All 651 points of `P²(GF(25))`: `[1:b:c]`, then `[0:1:c]`, then
/// `[0:0:1]`, with coordinates in index order.
pub fn all_points() -> Vec<Point> {
    let mut out = Vec::with_capacity(651);
    for b in Gf25::all() {
        for c in Gf25::all() {
            out.push([Gf25::ONE, b, c]);
        }
    }
    for c in Gf25::all() {
        out.push([Gf25::ZERO, Gf25::ONE, c]);
    }
    out.push([Gf25::ZERO, Gf25::ZERO, Gf25::ONE]);
    out
}

/// Index of a normalized point in [`all_points`].
pub fn point_index(p: &Point) -> usize {
    if !p[0].is_zero() {
        debug_assert_eq!(p[0], Gf25::ONE);
        25 * p[1].index() as usize + p[2].index() as usize
    } else if !p[1].is_zero() {
        625 + p[2].index() as usize
    } else {
        650
    }
}

pub fn fermat_value<F: Field + Copy>(p: &[F; 3]) -> F {
    let s = |a: F| {
        let a2 = a * a;
        a2 * a2 * a2
    };
    s(p[0]) + s(p[1]) + s(p[2])
}

/// The 126 `GF(25)`-points of `x⁶ + y⁶ + z⁶ = 0`, in [`all_points`] order.
pub fn hermitian_points() -> Vec<Point> {
    all_points().into_iter().filter(|p| fermat_value(p).is_zero()).collect()
}

pub fn conj(p: &Point) -> Point {
    [p[0].frobenius(), p[1].frobenius(), p[2].frobenius()]
}

/// Coefficients `(a, b, c)` of the tangent line `a x + b y + c z = 0` at a
/// point of the curve: the conjugate coordinates.
pub fn tangent_line(p: &Point) -> [Gf25; 3] {
    normalize(conj(p)).unwrap()
}

pub fn on_line<F: Field + Copy>(line: &[F; 3], p: &[F; 3]) -> bool {
    (line[0] * p[0] + line[1] * p[1] + line[2] * p[2]).is_zero()
}

pub fn cross<F: Field + Copy>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn colinear<F: Field + Copy>(a: &[F; 3], b: &[F; 3], c: &[F; 3]) -> bool {
    let n = cross(a, b);
    on_line(&n, c)
}

/// How a tangent line meets the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangentCase {
    /// Contact of order 6 at a `GF(25)`-point.
    Mult6Rational(Point),
    /// Contact of order 5 at a point outside `GF(25)`, plus a transversal
    /// point which is its image under `x ↦ x²⁵`.
    Mult5NonRational { contact: [Gf15625; 3], residual: [Gf15625; 3] },
}

/// Classifies a line by its intersection with the curve. Lines with other
/// contact patterns are rejected.
pub fn classify_tangent(line: &[Gf15625; 3]) -> Result<TangentCase, FermatError> {
    let line = normalize(*line).ok_or(FermatError::NotTangent)?;
    // two points spanning the line
    let basis = line_basis(&line);
    // the restriction t ↦ F(s·p + t·q), found by checking all points of the line
    let mut roots: Vec<([Gf15625; 3], usize)> = Vec::new();
    let sextic = restrict_sextic(&basis);
    let total: usize = 6;
    // roots in the affine chart s = 1 and at s = 0
    for t in Gf15625::all() {
        let m = root_multiplicity(&sextic, t);
        if m > 0 {
            let p = add3(&basis[0], &scale3(&basis[1], t));
            roots.push((normalize(p).unwrap(), m));
        }
    }
    let deg = sextic.iter().rposition(|c| !c.is_zero()).ok_or(FermatError::NotTangent)?;
    if deg < total {
        roots.push((normalize(basis[1]).unwrap(), total - deg));
    }
    roots.sort_by_key(|r| std::cmp::Reverse(r.1));
    match roots.as_slice() {
        [(p, 6)] => {
            let q = [p[0].in_base_field(), p[1].in_base_field(), p[2].in_base_field()];
            match q {
                [Some(a), Some(b), Some(c)] => Ok(TangentCase::Mult6Rational([a, b, c])),
                _ => Err(FermatError::NotTangent),
            }
        }
        [(p, 5), (q, 1)] => Ok(TangentCase::Mult5NonRational { contact: *p, residual: *q }),
        _ => Err(FermatError::NotTangent),
    }
}

fn line_basis(line: &[Gf15625; 3]) -> [[Gf15625; 3]; 2] {
    let z = Gf15625::zero();
    let o = Gf15625::one();
    let i = line.iter().position(|c| !c.is_zero()).unwrap();
    // line[i] = 1 after normalization
    let (j, k) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mut p = [z; 3];
    p[j] = o;
    p[i] = -line[j];
    let mut q = [z; 3];
    q[k] = o;
    q[i] = -line[k];
    [p, q]
}

fn add3(a: &[Gf15625; 3], b: &[Gf15625; 3]) -> [Gf15625; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale3(a: &[Gf15625; 3], t: Gf15625) -> [Gf15625; 3] {
    [a[0] * t, a[1] * t, a[2] * t]
}

/// Coefficients in `t` of `F(p + t q)`.
fn restrict_sextic(b: &[[Gf15625; 3]; 2]) -> Vec<Gf15625> {
    let mut out = vec![Gf15625::zero(); 7];
    for v in 0..3 {
        // (p_v + t q_v)^6
        let lin = [b[0][v], b[1][v]];
        let mut pw = vec![Gf15625::one()];
        for _ in 0..6 {
            let mut next = vec![Gf15625::zero(); pw.len() + 1];
            for (i, c) in pw.iter().enumerate() {
                next[i] = next[i] + *c * lin[0];
                next[i + 1] = next[i + 1] + *c * lin[1];
            }
            pw = next;
        }
        for i in 0..7 {
            out[i] = out[i] + pw[i];
        }
    }
    out
}

fn root_multiplicity(c: &[Gf15625], t: Gf15625) -> usize {
    let mut p: Vec<Gf15625> = c.to_vec();
    while p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
    let mut m = 0;
    loop {
        if p.is_empty() {
            return m;
        }
        // synthetic division by (X − t)
        let n = p.len();
        let mut q = vec![Gf15625::zero(); n - 1];
        let mut acc = Gf15625::zero();
        for i in (0..n).rev() {
            acc = acc * t + p[i];
            if i > 0 {
                q[i - 1] = acc;
            }
        }
        if !acc.is_zero() {
            return m;
        }
        p = q;
        m += 1;
    }
}

pub fn embed_point(p: &Point) -> [Gf15625; 3] {
    [Gf15625::embed(p[0]), Gf15625::embed(p[1]), Gf15625::embed(p[2])]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        let all = all_points();
        assert_eq!(all.len(), 651);
        for (i, p) in all.iter().enumerate() {
            assert_eq!(point_index(p), i);
        }
        let h = hermitian_points();
        assert_eq!(h.len(), 126);
        assert!(h.contains(&[Gf25::ZERO, Gf25::ONE, Gf25::new(1, 1)]));
        assert!(h.iter().all(|p| fermat_value(p).is_zero()));
    }

    #[test]
    fn tangents_at_rational_points_have_contact_six() {
        for p in hermitian_points() {
            let l = embed_point(&tangent_line(&p));
            assert_eq!(classify_tangent(&l).unwrap(), TangentCase::Mult6Rational(p));
        }
    }

    #[test]
    fn tangent_at_a_non_rational_point() {
        // a point of the curve over GF(25³) outside GF(25)
        let one = Gf15625::one();
        let p = Gf15625::all()
            .filter(|b| b.in_base_field().is_none())
            .find_map(|b| {
                let rhs = -(one + b.pow(6));
                Gf15625::all().find(|c| c.pow(6) == rhs).map(|c| [one, b, c])
            })
            .unwrap();
        assert!(fermat_value(&p).is_zero());
        // the tangent line at p is the gradient p⁵ up to the factor 6 = 1
        let line = [p[0].pow(5), p[1].pow(5), p[2].pow(5)];
        match classify_tangent(&line).unwrap() {
            TangentCase::Mult5NonRational { contact, residual } => {
                assert_eq!(contact, normalize(p).unwrap());
                let frob = [p[0].frobenius(), p[1].frobenius(), p[2].frobenius()];
                assert_eq!(residual, normalize(frob).unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn secant_is_rejected() {
        let l = embed_point(&[Gf25::ONE, Gf25::ONE, Gf25::ZERO]);
        // x + y = 0 meets the curve in the points [1:−1:c] with c⁶ = −2
        assert!(classify_tangent(&l).is_err());
    }
}
