//! Maps of the Fermat surface to itself given by four polynomials, their
//! action on the lattice, and an involution outside the stabilizer of
//! `h_F`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::fermat::group::{isometry_of, Mat3};
use crate::fermat::points::{all_points, colinear, Point};
use crate::fermat::{Geometry, Group, NsVector, NUM_LINES, RANK};
use crate::gf::linalg::{inverse as q_inverse, mat_mul, rank};
use crate::gf::upoly::UPoly;
use crate::gf::{normal_form_f, BinaryForm, Gf25, Mono, Poly, W, X, Y, Z};
use crate::Rational;

use super::build::{build_double_plane, ModelOptions};
use super::plane::{self, frame, row_times};
use super::sextic::{hermitian_orthonormalize, hermitian_test};
use super::ModelError;

/// `(ω : ξ₀ : ξ₁ : ξ₂)` with affine polynomials in `w, x, y`; `ξ_i` of
/// degree `d` and `ω` of degree `3d` when `w` has weight 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceMap {
    pub d: u32,
    pub omega: Poly<Gf25>,
    pub xi: [Poly<Gf25>; 3],
}

impl SurfaceMap {
    pub fn identity() -> SurfaceMap {
        SurfaceMap { d: 1, omega: Poly::var(W), xi: [Poly::var(X), Poly::var(Y), Poly::one()] }
    }

    /// `(w, x) ↦ (εw, xA)`.
    pub fn linear(a: &Mat3, eps: Gf25) -> SurfaceMap {
        SurfaceMap::identity().then_linear(a, eps)
    }

    /// Composes with `(w, x) ↦ (εw, xA)` on the target.
    pub fn then_linear(&self, a: &Mat3, eps: Gf25) -> SurfaceMap {
        let xi = std::array::from_fn(|k| {
            let mut acc = Poly::zero();
            for i in 0..3 {
                acc = acc.add(&self.xi[i].scale(&a[i][k]));
            }
            acc
        });
        SurfaceMap { d: self.d, omega: self.omega.scale(&eps), xi }
    }

    /// Whether `ω² = ξ₀⁶ + ξ₁⁶ + ξ₂⁶` modulo the surface equation.
    pub fn maps_to_fermat(&self) -> bool {
        let mut rhs = Poly::zero();
        for x in &self.xi {
            rhs = rhs.add(&normal_form_f(&x.pow(6)));
        }
        normal_form_f(&self.omega.pow(2)) == normal_form_f(&rhs)
    }

    fn homogeneous(&self) -> (Poly<Gf25>, [Poly<Gf25>; 3]) {
        (
            self.omega.homogenize_weighted(Z, 3 * self.d),
            std::array::from_fn(|i| self.xi[i].homogenize_weighted(Z, self.d)),
        )
    }
}

/// Restriction of a form to a line, parametrized by the two variables not
/// eliminated by its linear form, as a binary form of degree `deg`.
fn restrict(p: &Poly<Gf25>, line: &crate::fermat::HLine, deg: usize) -> BinaryForm<Gf25> {
    let e = line.elim();
    let free: Vec<usize> = (0..3).filter(|&i| i != e).collect();
    let var = |i: usize| [X, Y, Z][i];
    // s ↦ X, t ↦ Y
    let mut sub_free = [Poly::var(W), Poly::var(X), Poly::var(Y), Poly::var(Z)];
    sub_free[var(free[0])] = Poly::var(X);
    sub_free[var(free[1])] = Poly::var(Y);
    let st = [Poly::var(X), Poly::var(Y)];
    let mut elim = Poly::zero();
    for (k, &i) in free.iter().enumerate() {
        elim = elim.add(&st[k].scale(&-line.linear[i]));
    }
    let cubic = line.cubic.substitute(&sub_free);
    let mut subs = [cubic, Poly::zero(), Poly::zero(), Poly::zero()];
    subs[var(e)] = elim;
    subs[var(free[0])] = st[0].clone();
    subs[var(free[1])] = st[1].clone();
    let r = p.substitute(&subs);
    let mut c = vec![Gf25::ZERO; deg + 1];
    for (m, a) in r.terms() {
        debug_assert_eq!(m.degree() as usize, deg);
        c[m.exp(Y) as usize] = *a;
    }
    BinaryForm::new(deg, UPoly::new(c))
}

fn form_eval(f: &Poly<Gf25>, vals: &[BinaryForm<Gf25>; 3], deg: usize) -> BinaryForm<Gf25> {
    let one = BinaryForm::new(0, UPoly::constant(Gf25::ONE));
    let mut acc = BinaryForm::new(deg, UPoly::zero());
    for (m, c) in f.terms() {
        let mut t = one.clone();
        for (k, v) in [X, Y, Z].iter().enumerate() {
            for _ in 0..m.exp(*v) {
                t = t.mul(&vals[k]);
            }
        }
        acc = acc.add(&t.scale(c));
    }
    acc
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn to_int(x: &Rational) -> Result<i64, ModelError> {
    if !x.is_integer() {
        return Err(ModelError::Check(format!("non-integral entry {x}")));
    }
    x.to_integer().to_i64().ok_or_else(|| ModelError::Check("entry overflows".into()))
}

/// Intersection numbers of the image of line `probe` with the basis lines.
fn image_pairings(geom: &Geometry, map: &SurfaceMap, probe: usize) -> Result<NsVector, ModelError> {
    let (om, xi) = map.homogeneous();
    let line = &geom.lines[probe].line;
    let d = map.d as usize;
    let mut xs: [BinaryForm<Gf25>; 3] = std::array::from_fn(|i| restrict(&xi[i], line, d));
    let mut o = restrict(&om, line, 3 * d);
    let g = xs[0].gcd(&xs[1]).gcd(&xs[2]);
    if g.is_zero() {
        return Err(ModelError::Precondition(format!("the map is undefined along line {probe}")));
    }
    for x in xs.iter_mut() {
        *x = x.div_exact(&g).unwrap();
    }
    let g3 = g.mul(&g).mul(&g);
    o = o.div_exact(&g3).ok_or_else(|| ModelError::Check(format!("ω does not vanish to order 3 at base points of line {probe}")))?;
    let dd = xs[0].degree;
    let mut out = [0i64; RANK];
    for (k, slot) in out.iter_mut().enumerate() {
        let target = &geom.lines[k].line;
        let lin = Poly::from_terms((0..3).map(|i| (Mono::var([X, Y, Z][i]), target.linear[i])));
        let a = form_eval(&lin, &xs, dd);
        let b = o.add(&form_eval(&target.cubic, &xs, 3 * dd).scale(&-Gf25::ONE));
        *slot = if a.is_zero() && b.is_zero() { -2 } else { a.gcd(&b).degree as i64 };
    }
    Ok(out)
}

/// Greedy choice of lines avoiding `exclude` whose classes span the
/// lattice over `Q`.
pub fn probe_lines(geom: &Geometry, exclude: &[usize]) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for j in 0..NUM_LINES {
        if exclude.contains(&j) {
            continue;
        }
        let mut trial = rows.clone();
        trial.push(geom.lines[j].class.iter().map(|&x| q(x)).collect());
        if rank(&trial) > rows.len() {
            rows = trial;
            chosen.push(j);
            if chosen.len() == RANK {
                break;
            }
        }
    }
    chosen
}

/// The matrix `Γ` with `v ↦ vΓ` the push-forward of classes, from the
/// images of the probe lines.
pub fn ns_action_of_map(geom: &Geometry, map: &SurfaceMap, probes: &[usize]) -> Result<Vec<Vec<i64>>, ModelError> {
    if probes.len() != RANK {
        return Err(ModelError::Precondition(format!("{} probe lines, need {RANK}", probes.len())));
    }
    let gram: Vec<Vec<Rational>> = geom.gram.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let gram_inv = q_inverse(&gram).map_err(|_| ModelError::Check("singular Gram matrix".into()))?;
    let mut images: Vec<Vec<Rational>> = Vec::with_capacity(RANK);
    for &p in probes {
        let pr: Vec<Vec<Rational>> = vec![image_pairings(geom, map, p)?.iter().map(|&x| q(x)).collect()];
        let class = mat_mul(&pr, &gram_inv).remove(0);
        for x in &class {
            to_int(x)?;
        }
        images.push(class);
    }
    let probe_rows: Vec<Vec<Rational>> = probes.iter().map(|&p| geom.lines[p].class.iter().map(|&x| q(x)).collect()).collect();
    let pinv = q_inverse(&probe_rows).map_err(|_| ModelError::Precondition("probe classes do not span".into()))?;
    let gamma = mat_mul(&pinv, &images);
    let out: Vec<Vec<i64>> = gamma.iter().map(|r| r.iter().map(to_int).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    let mg = mat_mul_i(&mat_mul_i(&out, &geom.gram), &transpose_i(&out));
    if mg != geom.gram {
        return Err(ModelError::Check("the action is not an isometry".into()));
    }
    Ok(out)
}

fn mat_mul_i(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect()).collect()
}

fn transpose_i(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

fn row_times_i(v: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    (0..m[0].len()).map(|j| v.iter().zip(m).map(|(x, row)| x * row[j]).sum()).collect()
}

/// Recovers `(A, ε)` with `(w, x) ↦ (εw, xA)` inducing the line
/// permutation `perm`.
pub fn linear_lift(geom: &Geometry, perm: &[u8]) -> Result<(Mat3, Gf25), ModelError> {
    let pts: Vec<(Point, Point)> = geom.lines.iter().map(|l| (l.line.point, geom.lines[perm[l.index] as usize].line.point)).collect();
    let mut src: Vec<usize> = Vec::new();
    for (i, (p, _)) in pts.iter().enumerate() {
        if src.iter().any(|&j| pts[j].0 == *p) {
            continue;
        }
        let ok = match src.len() {
            0 | 1 => true,
            2 => !colinear(&pts[src[0]].0, &pts[src[1]].0, p),
            _ => (0..3).all(|a| (a + 1..3).all(|b| !colinear(&pts[src[a]].0, &pts[src[b]].0, p))),
        };
        if ok {
            src.push(i);
            if src.len() == 4 {
                break;
            }
        }
    }
    let from: [Point; 4] = std::array::from_fn(|k| pts[src[k]].0);
    let to: [Point; 4] = std::array::from_fn(|k| pts[src[k]].1);
    let a = plane::mul(&plane::inverse(&frame(&from).unwrap()).unwrap(), &frame(&to).ok_or_else(|| ModelError::Check("image points are degenerate".into()))?);
    // ε from one point with w ≠ 0
    for l in &geom.lines {
        let img = &geom.lines[perm[l.index] as usize].line;
        for qp in all_points() {
            if crate::fermat::points::on_line(&l.line.linear, &qp) && !l.line.w_at(&qp).is_zero() {
                let eps = img.w_at(&row_times(&qp, &a)) * l.line.w_at(&qp).inv().unwrap();
                return Ok((a, eps));
            }
        }
    }
    Err(ModelError::Check("no point with w ≠ 0".into()))
}

/// The involution and the data it was built from.
#[derive(Clone, Debug)]
pub struct Involution {
    pub map: SurfaceMap,
    /// `v ↦ vG` on classes.
    pub matrix: Vec<Vec<i64>>,
    pub probes: Vec<usize>,
    /// Action of the automorphism before composing with the stabilizer
    /// element.
    pub gamma: Vec<Vec<i64>>,
    pub tau: usize,
}

/// From the model of a polarization `h′` with Hermitian branch sextic,
/// builds an automorphism `γ` of the Fermat surface with `γ*h_F = h′`,
/// then composes it with an element `τ` of the stabilizer of `h_F` so that
/// the result has order 2.
pub fn nonprojective_involution(geom: &Geometry, group: &Group, h_prime: &NsVector) -> Result<Involution, ModelError> {
    let model = build_double_plane(geom, h_prime, &ModelOptions::default())?;
    let herm = hermitian_test(&model.sextic).ok_or_else(|| ModelError::Precondition("the branch sextic is not Hermitian".into()))?;
    let p = hermitian_orthonormalize(&herm.h).ok_or_else(|| ModelError::Check("Hermitian form has no orthonormal basis".into()))?;
    let m = plane::inverse(&p).unwrap();
    let gamma_map = SurfaceMap { d: model.expression.d, omega: model.omega.clone(), xi: model.xi.clone() }
        .then_linear(&m, herm.lambda.inv().unwrap());
    if !gamma_map.maps_to_fermat() {
        return Err(ModelError::Check("rescaled map does not land on the Fermat surface".into()));
    }
    let probes = probe_lines(geom, &model.expression.indices());
    let gamma = ns_action_of_map(geom, &gamma_map, &probes)?;
    let hf = geom.h_fermat();
    let a = row_times_i(&hf, &gamma);
    let mut found = None;
    for k in 0..group.order() {
        let b = group.act(geom, k, &a);
        let c = row_times_i(&b, &gamma);
        if group.act(geom, k, &c) != hf {
            continue;
        }
        let n = isometry_of_element(geom, group, k);
        let g = mat_mul_i(&gamma, &n);
        if is_identity_i(&mat_mul_i(&g, &g)) {
            found = Some(k);
            break;
        }
    }
    let tau = found.ok_or_else(|| ModelError::Check("no stabilizer element gives an involution".into()))?;
    let perm = group.full_perm(geom, tau)?;
    let (a_tau, eps) = linear_lift(geom, &perm)?;
    let map = gamma_map.then_linear(&a_tau, eps);
    if !map.maps_to_fermat() {
        return Err(ModelError::Check("composed map does not land on the Fermat surface".into()));
    }
    let matrix = ns_action_of_map(geom, &map, &probes)?;
    let expect = mat_mul_i(&gamma, &isometry_of_element(geom, group, tau));
    if matrix != expect {
        return Err(ModelError::Check("action of the composed map differs from ΓN".into()));
    }
    if !is_identity_i(&mat_mul_i(&matrix, &matrix)) {
        return Err(ModelError::Check("G² ≠ I".into()));
    }
    Ok(Involution { map, matrix, probes, gamma, tau })
}

fn isometry_of_element(geom: &Geometry, group: &Group, k: usize) -> Vec<Vec<i64>> {
    isometry_of(geom, &group.element(k)[..])
}

fn is_identity_i(m: &[Vec<i64>]) -> bool {
    crate::fermat::geometry::is_identity(m)
}

/// `⟨h_F·G, h_F⟩`.
pub fn fermat_degree(geom: &Geometry, g: &[Vec<i64>]) -> i64 {
    let hf = geom.h_fermat();
    geom.pair(&row_times_i(&hf, g), &hf)
}

/// Verifies that `g` is an isometric involution of degree 4 outside the
/// stabilizer of `h_F`.
pub fn check_involution(geom: &Geometry, group: &Group, g: &[Vec<i64>]) -> Result<(), ModelError> {
    if !is_identity_i(&mat_mul_i(g, g)) {
        return Err(ModelError::Check("G² ≠ I".into()));
    }
    if mat_mul_i(&mat_mul_i(g, &geom.gram), &transpose_i(g)) != geom.gram {
        return Err(ModelError::Check("G is not an isometry".into()));
    }
    let deg = fermat_degree(geom, g);
    if deg != 4 {
        return Err(ModelError::Check(format!("⟨h_F·G, h_F⟩ = {deg}, expected 4")));
    }
    if group.contains_matrix(geom, g) {
        return Err(ModelError::Check("G lies in the stabilizer of h_F".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::geometry::tests::geometry;
    use crate::fermat::group::{default_generators, unitary_factor};

    #[test]
    fn identity_acts_trivially() {
        let g = geometry();
        let probes: Vec<usize> = (0..RANK).collect();
        let m = ns_action_of_map(g, &SurfaceMap::identity(), &probes).unwrap();
        assert!(is_identity_i(&m));
    }

    #[test]
    fn unitary_maps_match_group_generators() {
        let g = geometry();
        let gens = default_generators(g).unwrap();
        let probes = probe_lines(g, &[]);
        for perm in &gens[..4] {
            let (a, eps) = linear_lift(g, perm).unwrap();
            assert_eq!(eps * eps, unitary_factor(&a).unwrap());
            let map = SurfaceMap::linear(&a, eps);
            assert!(map.maps_to_fermat());
            assert_eq!(ns_action_of_map(g, &map, &probes).unwrap(), isometry_of(g, perm));
        }
        let deck = SurfaceMap::linear(&plane::IDENTITY, -Gf25::ONE);
        assert_eq!(ns_action_of_map(g, &deck, &probes).unwrap(), isometry_of(g, &gens[4]));
    }

    #[test]
    fn probes_avoid_excluded_lines() {
        let g = geometry();
        let p = probe_lines(g, &[0, 1, 2]);
        assert_eq!(p.len(), RANK);
        assert!(p.iter().all(|&j| j > 2));
    }

    #[test]
    fn involution_of_order_two() {
        let g = geometry();
        let grp = Group::build(g).unwrap();
        let t = std::time::Instant::now();
        let inv = nonprojective_involution(g, &grp, &crate::nsengine::polar::tests::H_F1).unwrap();
        eprintln!("involution in {:?}, tau = {}", t.elapsed(), inv.tau);
        check_involution(g, &grp, &inv.matrix).unwrap();
        assert!(check_involution(g, &grp, &grp.generator_matrices[0]).is_err());
        assert!(is_identity_i(&mat_mul_i(&inv.matrix, &inv.matrix)));
        assert_eq!(fermat_degree(g, &inv.matrix), 4);
        assert!(!grp.contains_matrix(g, &inv.matrix));
        assert_eq!(mat_mul_i(&mat_mul_i(&inv.matrix, &g.gram), &transpose_i(&inv.matrix)), g.gram);
    }
}
