//! The double plane model of a degree-2 polarization: sections `ξ₀, ξ₁, ξ₂`
//! of `h`, a section `ω` of `3h`, and the branch sextic `s_h` with
//! `ω² = s_h(ξ)` on the surface.

use std::collections::HashMap;

use crate::fermat::{Geometry, NsVector};
use crate::gf::linalg::EchelonSpan;
use crate::gf::{kernel, normal_form_f, Gf25, Mono, Poly, X, Y, Z};
use crate::nsengine::{analyze, AdeType};

use super::divisor::{express_divisor, DivisorExpression};
use super::sections::{v_monomials, SectionSolver, DEFAULT_MAX_D};
use super::sextic::{aut_order, canonical_sextic, check_against_ade, singular_points, SexticForm, SingularPoint};
use super::ModelError;

#[derive(Clone, Copy, Debug)]
pub struct ModelOptions {
    /// Largest `d(h)` accepted.
    pub max_d: u32,
    /// Also compute `dim Γ(6h)`.
    pub six_h: bool,
}

impl Default for ModelOptions {
    fn default() -> Self {
        ModelOptions { max_d: DEFAULT_MAX_D, six_h: false }
    }
}

/// The polynomial part of a model.
#[derive(Clone, Debug)]
pub struct DoublePlane {
    pub expression: DivisorExpression,
    /// Affine polynomials in `w, x, y`.
    pub xi: [Poly<Gf25>; 3],
    pub omega: Poly<Gf25>,
    pub sextic: SexticForm,
    /// `dim Γ(h)`, `dim Γ(3h)` and, if computed, `dim Γ(6h)`.
    pub dims: [Option<usize>; 3],
}

#[derive(Clone, Debug)]
pub struct ModelRecord {
    pub h: NsVector,
    pub model: DoublePlane,
    pub singular: Vec<SingularPoint>,
    pub rt: AdeType,
    pub canonical: SexticForm,
    pub aut: u64,
}

/// Coordinates of `p` over `index`.
fn coords(p: &Poly<Gf25>, index: &HashMap<Mono, usize>, n: usize) -> Result<Vec<Gf25>, ModelError> {
    let mut v = vec![Gf25::ZERO; n];
    for (m, c) in p.terms() {
        let i = index.get(m).ok_or_else(|| ModelError::Check(format!("monomial {m} outside the expected space")))?;
        v[*i] = *c;
    }
    Ok(v)
}

fn index_of(d: u32) -> (HashMap<Mono, usize>, usize) {
    let monos = v_monomials(d);
    let n = monos.len();
    (monos.into_iter().enumerate().map(|(i, m)| (m, i)).collect(), n)
}

/// Values `NF(m(ξ))` for ternary monomials `m`, built up one variable at a
/// time.
struct Products<'a> {
    xi: &'a [Poly<Gf25>; 3],
    memo: HashMap<Mono, Poly<Gf25>>,
}

impl<'a> Products<'a> {
    fn new(xi: &'a [Poly<Gf25>; 3]) -> Self {
        Products { xi, memo: HashMap::new() }
    }

    fn get(&mut self, m: Mono) -> Poly<Gf25> {
        if m == Mono::ONE {
            return Poly::one();
        }
        if let Some(p) = self.memo.get(&m) {
            return p.clone();
        }
        let e = m.exps();
        let k = [X, Y, Z].into_iter().position(|v| e[v] > 0).unwrap();
        let mut pe = e;
        pe[[X, Y, Z][k]] -= 1;
        let prev = self.get(Mono::new(pe));
        let p = normal_form_f(&prev.mul(&self.xi[k]));
        self.memo.insert(m, p.clone());
        p
    }

    /// `NF(f(ξ))` for a ternary form `f`.
    fn eval(&mut self, f: &Poly<Gf25>) -> Poly<Gf25> {
        let mut acc = Poly::zero();
        for (m, c) in f.terms() {
            acc = acc.add(&self.get(*m).scale(c));
        }
        acc
    }
}

/// Computes `ξ`, `ω` and `s_h` for a class `h` with `h² = 2`.
pub fn build_double_plane(geom: &Geometry, h: &NsVector, opts: &ModelOptions) -> Result<DoublePlane, ModelError> {
    let expr = express_divisor(geom, h)?;
    if expr.d > opts.max_d {
        return Err(ModelError::Guard { d: expr.d, max: opts.max_d });
    }
    let mut solver = SectionSolver::new();
    let g1 = solver.sections(geom, &expr);
    if g1.dim() != 3 {
        return Err(ModelError::Precondition(format!("dim Γ(h) = {}, expected 3", g1.dim())));
    }
    let xi: [Poly<Gf25>; 3] = [g1.polys[0].clone(), g1.polys[1].clone(), g1.polys[2].clone()];
    let g3 = solver.sections(geom, &expr.scaled(3));
    let mut products = Products::new(&xi);
    let cubics = Mono::of_degree(&[X, Y, Z], 3);
    let sextics = Mono::of_degree(&[X, Y, Z], 6);
    let cubic_vals: Vec<Poly<Gf25>> = cubics.iter().map(|m| products.get(*m)).collect();

    // ω: the first section of 3h outside the span of the cubic products
    let (idx3, n3) = index_of(3 * expr.d);
    let mut span = EchelonSpan::new(n3);
    for p in &cubic_vals {
        if !span.insert(&coords(p, &idx3, n3)?) {
            return Err(ModelError::Check("cubic products of ξ are dependent".into()));
        }
    }
    let mut omega = None;
    for p in &g3.polys {
        if !span.contains(&coords(p, &idx3, n3)?) {
            omega = Some(p.clone());
            break;
        }
    }
    let omega = omega.ok_or_else(|| ModelError::Check("Γ(3h) lies in the span of cubic products".into()))?;

    // the relation a·ω² + b(ξ)·ω + c(ξ) = 0 among 39 normal forms
    let (idx6, n6) = index_of(6 * expr.d);
    let mut cols: Vec<Poly<Gf25>> = vec![normal_form_f(&omega.mul(&omega))];
    cols.extend(cubic_vals.iter().map(|p| normal_form_f(&omega.mul(p))));
    cols.extend(sextics.iter().map(|m| products.get(*m)));
    let vecs: Vec<Vec<Gf25>> = cols.iter().map(|p| coords(p, &idx6, n6)).collect::<Result<_, _>>()?;
    let mat: Vec<Vec<Gf25>> = (0..n6).map(|r| vecs.iter().map(|v| v[r]).collect()).collect();
    let ker = kernel(&mat, cols.len());
    if ker.len() != 1 {
        return Err(ModelError::Check(format!("relation space has dimension {}", ker.len())));
    }
    let rel = &ker[0];
    let a = rel[0].inv().ok_or_else(|| ModelError::Check("relation without ω²".into()))?;
    let b = Poly::from_terms(cubics.iter().enumerate().map(|(k, m)| (*m, rel[1 + k] * a)));
    let c = Poly::from_terms(sextics.iter().enumerate().map(|(k, m)| (*m, rel[11 + k] * a)));
    // (ω + b/2)² = b²/4 − c, and 1/2 = −2, 1/4 = −1 in characteristic 5
    let s = b.mul(&b).neg().sub(&c);
    let omega = omega.add(&products.eval(&b).scale(&Gf25::new(-2, 0)));
    let sextic = SexticForm::from_poly(&s)?;
    if normal_form_f(&omega.mul(&omega)) != products.eval(&s) {
        return Err(ModelError::Check("ω² differs from s_h(ξ) modulo F".into()));
    }
    let dim6 = if opts.six_h { Some(solver.sections(geom, &expr.scaled(6)).dim()) } else { None };
    Ok(DoublePlane { expression: expr, xi, omega, sextic, dims: [Some(g1.dim()), Some(g3.dim()), dim6] })
}

/// The full model record, with singular points checked against the
/// lattice-side root type.
pub fn build_model(geom: &Geometry, h: &NsVector, opts: &ModelOptions) -> Result<ModelRecord, ModelError> {
    let model = build_double_plane(geom, h, opts)?;
    let singular = singular_points(&model.sextic)?;
    let rt = analyze(geom, h)?.rt;
    check_against_ade(&singular, &rt)?;
    let canonical = canonical_sextic(&model.sextic, &singular)?;
    let canon_sing = singular_points(&canonical)?;
    let aut = aut_order(&canonical, &canon_sing)?;
    Ok(ModelRecord { h: *h, model, singular, rt, canonical, aut })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::geometry::tests::geometry;
    use crate::models::sextic::hermitian_test;

    #[test]
    fn fermat_model() {
        let g = geometry();
        let m = build_double_plane(g, &g.h_fermat(), &ModelOptions { six_h: true, ..Default::default() }).unwrap();
        assert_eq!(m.dims, [Some(3), Some(11), Some(38)]);
        assert!(hermitian_test(&m.sextic).is_some());
        assert!(singular_points(&m.sextic).unwrap().is_empty());
    }

    #[test]
    fn second_fermat_polarization() {
        let g = geometry();
        let t = std::time::Instant::now();
        let h = crate::nsengine::polar::tests::H_F1;
        let m = build_double_plane(g, &h, &ModelOptions { six_h: true, ..Default::default() }).unwrap();
        eprintln!("built in {:?}: d = {}, s = {}", t.elapsed(), m.expression.d, m.sextic);
        assert_eq!(m.dims, [Some(3), Some(11), Some(38)]);
        let herm = hermitian_test(&m.sextic).unwrap();
        eprintln!("{herm:?}");
    }
}
