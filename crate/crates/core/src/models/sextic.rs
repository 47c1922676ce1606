//! Plane sextics: transformations, singular points, the canonical form,
//! isomorphisms, the Hermitian test and descent to `GF(5)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use crate::fermat::group::Mat3;
use crate::fermat::points::{all_points, colinear, normalize, Point};
use crate::gf::linalg::rank;
use crate::gf::{buchberger, Gf25, Mono, Poly, X, Y, Z};
use crate::nsengine::ade::Letter;
use crate::nsengine::AdeType;

use super::plane::{self, frame, inverse, scalar_of, IDENTITY};
use super::ModelError;

/// The 28 monomials of degree 6 in `x, y, z`, in descending monomial order.
pub fn sextic_monomials() -> &'static [Mono] {
    static M: OnceLock<Vec<Mono>> = OnceLock::new();
    M.get_or_init(|| Mono::of_degree(&[X, Y, Z], 6))
}

/// Position of `x^a y^b z^(6−a−b)` in [`sextic_monomials`].
fn slot(a: usize, b: usize) -> usize {
    static S: OnceLock<[[u8; 7]; 7]> = OnceLock::new();
    S.get_or_init(|| {
        let mut t = [[u8::MAX; 7]; 7];
        for (i, m) in sextic_monomials().iter().enumerate() {
            t[m.exp(X) as usize][m.exp(Y) as usize] = i as u8;
        }
        t
    })[a][b] as usize
}

/// A ternary sextic form by its coefficients over [`sextic_monomials`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SexticForm(pub [Gf25; 28]);

impl SexticForm {
    pub fn from_poly(p: &Poly<Gf25>) -> Result<SexticForm, ModelError> {
        let mut c = [Gf25::ZERO; 28];
        for (m, a) in p.terms() {
            if m.exp(crate::gf::W) > 0 || m.degree() != 6 {
                return Err(ModelError::Precondition(format!("{p} is not a ternary sextic form")));
            }
            c[slot(m.exp(X) as usize, m.exp(Y) as usize)] = *a;
        }
        Ok(SexticForm(c))
    }

    pub fn to_poly(&self) -> Poly<Gf25> {
        Poly::from_terms(sextic_monomials().iter().zip(&self.0).map(|(m, c)| (*m, *c)))
    }

    /// `x⁶ + y⁶ + z⁶`.
    pub fn fermat() -> SexticForm {
        let mut c = [Gf25::ZERO; 28];
        c[slot(6, 0)] = Gf25::ONE;
        c[slot(0, 6)] = Gf25::ONE;
        c[slot(0, 0)] = Gf25::ONE;
        SexticForm(c)
    }

    pub fn coeff(&self, a: usize, b: usize) -> Gf25 {
        self.0[slot(a, b)]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, k: Gf25) -> SexticForm {
        SexticForm(self.0.map(|c| c * k))
    }

    pub fn conjugate(&self) -> SexticForm {
        SexticForm(self.0.map(|c| c.frobenius()))
    }

    pub fn is_over_prime_field(&self) -> bool {
        self.0.iter().all(|c| c.is_in_prime_field())
    }

    pub fn eval(&self, p: &Point) -> Gf25 {
        let mut acc = Gf25::ZERO;
        for (m, c) in sextic_monomials().iter().zip(&self.0) {
            if !c.is_zero() {
                acc = acc + *c * p[0].pow(m.exp(X) as u64) * p[1].pow(m.exp(Y) as u64) * p[2].pow(m.exp(Z) as u64);
            }
        }
        acc
    }

    /// `x ↦ s(xB)`.
    pub fn transform(&self, b: &Mat3) -> SexticForm {
        // powers of the linear forms (xB)_i as dense grids over (a, b)
        let lin: [Dense; 3] = std::array::from_fn(|i| {
            let mut d = Dense::zero(1);
            d.c[1][0] = b[0][i];
            d.c[0][1] = b[1][i];
            d.c[0][0] = b[2][i];
            d
        });
        let powers: [Vec<Dense>; 3] = std::array::from_fn(|i| {
            let mut p = vec![Dense::one()];
            for k in 1..=6 {
                let next = p[k - 1].mul(&lin[i]);
                p.push(next);
            }
            p
        });
        let mut out = Dense::zero(6);
        for (m, c) in sextic_monomials().iter().zip(&self.0) {
            if c.is_zero() {
                continue;
            }
            let (a, bb, cc) = (m.exp(X) as usize, m.exp(Y) as usize, m.exp(Z) as usize);
            let t = powers[0][a].mul(&powers[1][bb]).mul(&powers[2][cc]);
            out.add_scaled(&t, *c);
        }
        let mut res = [Gf25::ZERO; 28];
        for a in 0..=6 {
            for bb in 0..=6 - a {
                res[slot(a, bb)] = out.c[a][bb];
            }
        }
        SexticForm(res)
    }

    /// The representative of `{λ²·s}` whose first nonzero coefficient is
    /// least.
    pub fn normalize_squares(&self) -> SexticForm {
        let Some(first) = self.0.iter().find(|c| !c.is_zero()) else { return *self };
        let best = squares().iter().min_by_key(|k| (**k * *first).lex_key()).unwrap();
        self.scale(*best)
    }
}

impl Ord for SexticForm {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.lex_key().cmp(&b.lex_key()) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for SexticForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SexticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Display for SexticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// A homogeneous ternary form as a grid `c[a][b]` for `x^a y^b z^(k−a−b)`.
#[derive(Clone)]
struct Dense {
    deg: usize,
    c: [[Gf25; 7]; 7],
}

impl Dense {
    fn zero(deg: usize) -> Dense {
        Dense { deg, c: [[Gf25::ZERO; 7]; 7] }
    }

    fn one() -> Dense {
        let mut d = Dense::zero(0);
        d.c[0][0] = Gf25::ONE;
        d
    }

    fn mul(&self, o: &Dense) -> Dense {
        let mut out = Dense::zero(self.deg + o.deg);
        for a1 in 0..=self.deg {
            for b1 in 0..=self.deg - a1 {
                let x = self.c[a1][b1];
                if x.is_zero() {
                    continue;
                }
                for a2 in 0..=o.deg {
                    for b2 in 0..=o.deg - a2 {
                        let y = o.c[a2][b2];
                        if !y.is_zero() {
                            out.c[a1 + a2][b1 + b2] = out.c[a1 + a2][b1 + b2] + x * y;
                        }
                    }
                }
            }
        }
        out
    }

    fn add_scaled(&mut self, o: &Dense, k: Gf25) {
        for a in 0..=o.deg {
            for b in 0..=o.deg - a {
                self.c[a][b] = self.c[a][b] + o.c[a][b] * k;
            }
        }
    }
}

/// The 12 nonzero squares of `GF(25)`.
pub fn squares() -> &'static [Gf25] {
    static S: OnceLock<Vec<Gf25>> = OnceLock::new();
    S.get_or_init(|| {
        let mut v: Vec<Gf25> = Gf25::nonzero().map(|x| x * x).collect();
        v.sort_by_key(|x| x.index());
        v.dedup();
        v
    })
}

/// A singular point of a sextic and the rank of its Hessian there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: Point,
    pub hessian_rank: usize,
}

/// The `GF(25)`-rational singular points. Fails if the curve has a
/// one-dimensional singular locus (a repeated component).
pub fn singular_points(s: &SexticForm) -> Result<Vec<SingularPoint>, ModelError> {
    let p = s.to_poly();
    let grad = [p.derivative(X), p.derivative(Y), p.derivative(Z)];
    for (v, rest) in [(Z, [X, Y]), (Y, [X, Z]), (X, [Y, Z])] {
        let mut gens: Vec<Poly<Gf25>> = grad.iter().map(|g| g.dehomogenize(v)).collect();
        gens.push(p.dehomogenize(v));
        if buchberger(&gens).quotient_dimension_in(&rest).finite().is_none() {
            return Err(ModelError::Precondition(format!("{s} is not reduced")));
        }
    }
    let hess: Vec<Vec<Poly<Gf25>>> =
        grad.iter().map(|g| [X, Y, Z].iter().map(|&v| g.derivative(v)).collect()).collect();
    let at = |q: &Poly<Gf25>, pt: &Point| q.eval(&[Gf25::ZERO, pt[0], pt[1], pt[2]]);
    let mut out = Vec::new();
    for pt in all_points() {
        if !at(&p, &pt).is_zero() || grad.iter().any(|g| !at(g, &pt).is_zero()) {
            continue;
        }
        let h: Vec<Vec<Gf25>> = hess.iter().map(|r| r.iter().map(|q| at(q, &pt)).collect()).collect();
        out.push(SingularPoint { point: pt, hessian_rank: rank(&h) });
    }
    Ok(out)
}

/// Compares singular points with a root type: one point per component,
/// nodes (`A₁`) have Hessian rank 2, other `A_n` rank 1, `D` and `E` rank 0.
pub fn check_against_ade(sing: &[SingularPoint], rt: &AdeType) -> Result<(), ModelError> {
    let mut expect = [0usize; 3];
    for &(l, n) in &rt.0 {
        let r = match (l, n) {
            (Letter::A, 1) => 2,
            (Letter::A, _) => 1,
            _ => 0,
        };
        expect[r] += 1;
    }
    let mut got = [0usize; 3];
    for p in sing {
        got[p.hessian_rank.min(2)] += 1;
    }
    if got != expect {
        return Err(ModelError::Check(format!(
            "singular points by Hessian rank {got:?} do not match the root type {rt} ({expect:?})"
        )));
    }
    Ok(())
}

/// Ordered quadruples of distinct points with no three colinear.
pub fn quadruples(points: &[Point]) -> Vec<[Point; 4]> {
    let n = points.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if b == a {
                continue;
            }
            for c in 0..n {
                if c == a || c == b || colinear(&points[a], &points[b], &points[c]) {
                    continue;
                }
                for d in 0..n {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    let (pa, pb, pc, pd) = (points[a], points[b], points[c], points[d]);
                    if colinear(&pa, &pb, &pd) || colinear(&pa, &pc, &pd) || colinear(&pb, &pc, &pd) {
                        continue;
                    }
                    out.push([pa, pb, pc, pd]);
                }
            }
        }
    }
    out
}

fn points_of(sing: &[SingularPoint]) -> Vec<Point> {
    sing.iter().map(|p| p.point).collect()
}

/// The least of `λ²·s(xB)` over frames `B` of singular quadruples and
/// nonzero `λ`. A smooth Hermitian sextic maps to the normalized Fermat
/// form.
pub fn canonical_sextic(s: &SexticForm, sing: &[SingularPoint]) -> Result<SexticForm, ModelError> {
    let quads = quadruples(&points_of(sing));
    if quads.is_empty() {
        if sing.is_empty() && hermitian_test(s).is_some() {
            return Ok(SexticForm::fermat().normalize_squares());
        }
        return Err(ModelError::Precondition(format!("{s} has no singular quadruple in general position")));
    }
    let mut best: Option<SexticForm> = None;
    for q in &quads {
        let b = frame(q).unwrap();
        let t = s.transform(&b).normalize_squares();
        if best.map_or(true, |x| t < x) {
            best = Some(t);
        }
    }
    Ok(best.unwrap())
}

/// A projective transformation `T` with `s₂(x) = c·s₁(xT)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Isom {
    pub t: Mat3,
    pub c: Gf25,
}

/// `c` with `a = c·b`, if any.
fn proportional(a: &SexticForm, b: &SexticForm) -> Option<Gf25> {
    let i = b.0.iter().position(|x| !x.is_zero())?;
    let c = a.0[i] * b.0[i].inv().unwrap();
    (b.scale(c) == *a).then_some(c)
}

/// All `T` (up to scalars) with `s₂(x) = c·s₁(xT)`, found by fixing a
/// quadruple `R` of singular points of `s₂` and sending it to every
/// quadruple of singular points of `s₁`.
pub fn isom_sextics(s1: &SexticForm, s2: &SexticForm, sing1: &[SingularPoint], sing2: &[SingularPoint]) -> Vec<Isom> {
    isom_from(s1, s2, sing1, sing2, 0)
}

fn isom_from(s1: &SexticForm, s2: &SexticForm, sing1: &[SingularPoint], sing2: &[SingularPoint], which: usize) -> Vec<Isom> {
    if sing1.len() != sing2.len() {
        return Vec::new();
    }
    let q2 = quadruples(&points_of(sing2));
    let Some(r) = q2.get(which) else { return Vec::new() };
    let fr_inv = inverse(&frame(r).unwrap()).unwrap();
    let mut out = Vec::new();
    for q in quadruples(&points_of(sing1)) {
        let t = plane::mul(&fr_inv, &frame(&q).unwrap());
        if let Some(c) = proportional(s2, &s1.transform(&t)) {
            out.push(Isom { t, c });
        }
    }
    out
}

/// `|aut(B)|`: from singular quadruples, or for a smooth Hermitian sextic
/// the order of the projective unitary similitude group.
pub fn aut_order(s: &SexticForm, sing: &[SingularPoint]) -> Result<u64, ModelError> {
    if quadruples(&points_of(sing)).is_empty() {
        if sing.is_empty() && hermitian_test(s).is_some() {
            return Ok(unitary_group_order() / 6);
        }
        return Err(ModelError::Precondition(format!("{s} has no singular quadruple in general position")));
    }
    Ok(isom_sextics(s, s, sing, sing).len() as u64)
}

/// `|aut(B)|` computed from the `k`-th base quadruple instead of the first.
pub fn aut_order_from(s: &SexticForm, sing: &[SingularPoint], k: usize) -> u64 {
    isom_from(s, s, sing, sing, k).len() as u64
}

fn hnorm(a: &[Gf25; 3], b: &[Gf25; 3]) -> Gf25 {
    a[0] * b[0].frobenius() + a[1] * b[1].frobenius() + a[2] * b[2].frobenius()
}

fn all_vectors() -> impl Iterator<Item = [Gf25; 3]> {
    Gf25::all().flat_map(|a| Gf25::all().flat_map(move |b| Gf25::all().map(move |c| [a, b, c])))
}

/// `|U₃(5)|`, counted as ordered orthonormal triples for the standard
/// Hermitian form.
pub fn unitary_group_order() -> u64 {
    let units: Vec<[Gf25; 3]> = all_vectors().filter(|v| hnorm(v, v) == Gf25::ONE).collect();
    let mut total = 0u64;
    for r0 in &units {
        for r1 in &units {
            if !hnorm(r0, r1).is_zero() {
                continue;
            }
            // the orthogonal complement of r0, r1 is a line
            let n = crate::fermat::points::cross(r0, r1).map(|x| x.frobenius());
            total += Gf25::nonzero().filter(|k| {
                let v = n.map(|x| x * *k);
                hnorm(&v, &v) == Gf25::ONE
            })
            .count() as u64;
        }
    }
    total
}

/// `s = λ²·x·H·x̄ᵗ` with `H` conjugate-symmetric and nondegenerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hermitian {
    pub h: Mat3,
    pub lambda: Gf25,
}

/// Decides whether `s` is `λ²·Σ a_ij x_i x_j⁵` with `a_ji = a_ij⁵`.
pub fn hermitian_test(s: &SexticForm) -> Option<Hermitian> {
    let mut c = [[Gf25::ZERO; 3]; 3];
    let e = |i: usize, j: usize| {
        let mut v = [0usize; 3];
        v[i] += 1;
        v[j] += 5;
        v
    };
    let mut covered = [false; 28];
    for i in 0..3 {
        for j in 0..3 {
            let v = e(i, j);
            let k = slot(v[0], v[1]);
            c[i][j] = s.0[k];
            covered[k] = true;
        }
    }
    if s.0.iter().zip(&covered).any(|(x, cov)| !cov && !x.is_zero()) {
        return None;
    }
    for lambda in Gf25::nonzero() {
        let k = (lambda * lambda).inv().unwrap();
        let h = c.map(|r| r.map(|x| x * k));
        let herm = (0..3).all(|i| (0..3).all(|j| h[j][i] == h[i][j].frobenius()));
        if herm && !plane::det(&h).is_zero() {
            return Some(Hermitian { h, lambda });
        }
    }
    None
}

/// `P` with `P·H·P̄ᵗ = I`, by Gram–Schmidt over the rational vectors.
pub fn hermitian_orthonormalize(h: &Mat3) -> Option<Mat3> {
    let form = |a: &[Gf25; 3], b: &[Gf25; 3]| {
        let ha = plane::row_times(a, h);
        hnorm(&ha, b)
    };
    let mut rows: Vec<[Gf25; 3]> = Vec::new();
    for v in all_vectors() {
        if form(&v, &v) == Gf25::ONE && rows.iter().all(|r| form(&v, r).is_zero()) {
            rows.push(v);
            if rows.len() == 3 {
                return Some([rows[0], rows[1], rows[2]]);
            }
        }
    }
    None
}

/// A transformation `T` and scalar `λ` such that `λ²·s(xT)` has all
/// coefficients in `GF(5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Descent {
    pub t: Mat3,
    pub lambda: Gf25,
    pub form: SexticForm,
}

fn descend_scalar(g: &SexticForm) -> Option<Gf25> {
    Gf25::nonzero().find(|l| g.scale(*l * *l).is_over_prime_field())
}

/// Looks for `(M, c)` with `s(xM) = c·s̄(x)`, `M·M̄ = I` and `c³ = 1`, and
/// builds `T` with `T = T̄·M`; then `λ²·s(xT)` is defined over `GF(5)`.
pub fn f5_descent(s: &SexticForm, sing: &[SingularPoint]) -> Option<Descent> {
    if let Some(lambda) = descend_scalar(s) {
        return Some(Descent { t: IDENTITY, lambda, form: s.scale(lambda * lambda) });
    }
    if quadruples(&points_of(sing)).is_empty() {
        let herm = hermitian_test(s)?;
        let p = hermitian_orthonormalize(&herm.h)?;
        let g = s.transform(&p);
        let lambda = descend_scalar(&g)?;
        return Some(Descent { t: p, lambda, form: g.scale(lambda * lambda) });
    }
    let sbar = s.conjugate();
    let sing_bar: Vec<SingularPoint> = sing
        .iter()
        .map(|p| SingularPoint { point: normalize(p.point.map(|x| x.frobenius())).unwrap(), ..*p })
        .collect();
    // s̄(x) = c′·s(xM)
    for iso in isom_sextics(s, &sbar, sing, &sing_bar) {
        let m = iso.t;
        let Some(nu) = scalar_of(&plane::mul(&m, &plane::conj(&m))) else { continue };
        // rescale M by μ with N(μ)·ν = 1
        let Some(mu) = Gf25::nonzero().find(|mu| mu.norm() * nu == Gf25::ONE) else { continue };
        let m = plane::scale(&m, mu);
        let c = (iso.c * mu.pow(6)).inv().unwrap();
        if c.pow(3) != Gf25::ONE {
            continue;
        }
        let Some(t) = solve_t(&m) else { continue };
        let g = s.transform(&t);
        if let Some(lambda) = descend_scalar(&g) {
            return Some(Descent { t, lambda, form: g.scale(lambda * lambda) });
        }
    }
    None
}

/// `S = C + C̄·M` for rows `x` whose images `x + x̄·M` are independent.
fn solve_t(m: &Mat3) -> Option<Mat3> {
    let image = |x: &[Gf25; 3]| {
        let xm = plane::row_times(&x.map(|a| a.frobenius()), m);
        [x[0] + xm[0], x[1] + xm[1], x[2] + xm[2]]
    };
    let mut rows: Vec<[Gf25; 3]> = Vec::new();
    for x in all_vectors() {
        let y = image(&x);
        let independent = match rows.len() {
            0 => y.iter().any(|a| !a.is_zero()),
            1 => crate::fermat::points::cross(&rows[0], &y).iter().any(|a| !a.is_zero()),
            _ => !plane::det(&[rows[0], rows[1], y]).is_zero(),
        };
        if independent {
            rows.push(y);
            if rows.len() == 3 {
                return Some([rows[0], rows[1], rows[2]]);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::parse_poly;

    fn form(s: &str) -> SexticForm {
        SexticForm::from_poly(&parse_poly(s).unwrap()).unwrap()
    }

    #[test]
    fn poly_round_trip() {
        let s = form("x^6 + 2*x^4*y*z + (1+√2)*y^3*z^3 + z^6");
        assert_eq!(SexticForm::from_poly(&s.to_poly()).unwrap(), s);
        assert_eq!(s.coeff(4, 1), Gf25::new(2, 0));
    }

    #[test]
    fn transform_matches_substitution() {
        let s = form("x^6 + 2*x^4*y*z + (1+√2)*y^3*z^3 + z^6 + 3*x*y^5");
        let b: Mat3 = [
            [Gf25::new(1, 1), Gf25::new(2, 0), Gf25::ZERO],
            [Gf25::ZERO, Gf25::new(0, 3), Gf25::ONE],
            [Gf25::new(4, 1), Gf25::ONE, Gf25::new(3, 3)],
        ];
        let lin = |i: usize| {
            Poly::from_terms([(Mono::var(X), b[0][i]), (Mono::var(Y), b[1][i]), (Mono::var(Z), b[2][i])])
        };
        let subs = [Poly::var(crate::gf::W), lin(0), lin(1), lin(2)];
        let direct = SexticForm::from_poly(&s.to_poly().substitute(&subs)).unwrap();
        assert_eq!(s.transform(&b), direct);
        let inv = inverse(&b).unwrap();
        assert_eq!(s.transform(&b).transform(&inv), s);
    }

    #[test]
    fn fermat_is_smooth_and_hermitian() {
        let f = SexticForm::fermat();
        assert!(singular_points(&f).unwrap().is_empty());
        let h = hermitian_test(&f).unwrap();
        assert_eq!(h.h, IDENTITY);
        assert!(f5_descent(&f, &[]).is_some());
    }

    #[test]
    fn non_hermitian_support() {
        let s = form("x^6 + y^6 + z^6 + x^4*y^2");
        assert!(hermitian_test(&s).is_none());
    }

    #[test]
    fn repeated_component_is_rejected() {
        let s = form("x^2*y^2*z^2");
        assert!(singular_points(&s).is_err());
    }

    #[test]
    fn unitary_order() {
        assert_eq!(unitary_group_order(), 2_268_000);
    }

    #[test]
    fn orthonormalize_hermitian_matrix() {
        let a = Gf25::new(1, 2);
        let h: Mat3 = [
            [Gf25::new(2, 0), a, Gf25::ZERO],
            [a.frobenius(), Gf25::new(1, 0), Gf25::ONE],
            [Gf25::ZERO, Gf25::ONE, Gf25::new(4, 0)],
        ];
        let p = hermitian_orthonormalize(&h).unwrap();
        let php = plane::mul(&plane::mul(&p, &h), &plane::transpose(&plane::conj(&p)));
        assert_eq!(php, IDENTITY);
    }

    #[test]
    fn six_lines() {
        // six lines in general position
        let s = form("x*y*z*(x+y+z)*(x+2*y+√2*z)*(x+(1+√2)*y+3*z)");
        let sing = singular_points(&s).unwrap();
        assert_eq!(sing.len(), 15);
        assert!(sing.iter().all(|p| p.hessian_rank == 2));
        let rt = AdeType::parse("15A1").unwrap();
        check_against_ade(&sing, &rt).unwrap();
        let c = canonical_sextic(&s, &sing).unwrap();
        // a transform and a square scalar give the same canonical form
        let b: Mat3 = [
            [Gf25::new(1, 1), Gf25::new(2, 0), Gf25::ZERO],
            [Gf25::ZERO, Gf25::new(0, 3), Gf25::ONE],
            [Gf25::new(4, 1), Gf25::ONE, Gf25::new(3, 3)],
        ];
        let s3 = s.transform(&b).scale(Gf25::new(3, 0));
        let c3 = canonical_sextic(&s3, &singular_points(&s3).unwrap()).unwrap();
        assert_eq!(c, c3);
        let isos = isom_sextics(&s, &s3, &sing, &singular_points(&s3).unwrap());
        assert!(isos.iter().any(|i| plane::scalar_of(&plane::mul(&i.t, &inverse(&b).unwrap())).is_some()));
    }
}
