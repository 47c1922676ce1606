//! Spaces of sections `V_d ∩ ⋂ I_j^(c_j)` in the affine chart `z = 1`.

use std::collections::HashMap;

use crate::fermat::{Geometry, NsVector};
use crate::gf::linalg::rref;
use crate::gf::{ideal_power_plus_f, kernel, Gf25, IdealGb, Mono, Poly, W, X, Y, Z};

use super::divisor::{express_divisor, DivisorExpression};
use super::ModelError;

/// Largest `d(h)` accepted by default.
pub const DEFAULT_MAX_D: u32 = 12;

/// A basis of a section space, in reduced echelon form with respect to the
/// monomials of `V_d` in descending order.
#[derive(Clone, Debug)]
pub struct SectionBasis {
    pub expression: DivisorExpression,
    pub polys: Vec<Poly<Gf25>>,
}

impl SectionBasis {
    pub fn dim(&self) -> usize {
        self.polys.len()
    }
}

/// Monomials `w·x^a·y^b` (`a + b ≤ d − 3`) and `x^a·y^b` (`a + b ≤ d`) of
/// `V_d`, in descending order.
pub fn v_monomials(d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push(Mono::wxyz(0, a as u8, b as u8, 0));
            if d >= 3 && a + b <= d - 3 {
                out.push(Mono::wxyz(1, a as u8, b as u8, 0));
            }
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Computes section spaces, caching the Gröbner bases of `I_j^c + (F)`.
#[derive(Default)]
pub struct SectionSolver {
    ideals: HashMap<(usize, u32), IdealGb<Gf25>>,
}

impl SectionSolver {
    pub fn new() -> Self {
        SectionSolver::default()
    }

    pub fn ideal(&mut self, geom: &Geometry, j: usize, c: u32) -> &IdealGb<Gf25> {
        self.ideals.entry((j, c)).or_insert_with(|| {
            let gens: Vec<Poly<Gf25>> = geom.lines[j].line.generators().iter().map(|p| p.dehomogenize(Z)).collect();
            ideal_power_plus_f(&gens, c)
        })
    }

    pub fn sections(&mut self, geom: &Geometry, expr: &DivisorExpression) -> SectionBasis {
        let monos = v_monomials(expr.d);
        let n = monos.len();
        // current basis as coordinate vectors over `monos`
        let mut basis: Vec<Vec<Gf25>> = (0..n)
            .map(|i| {
                let mut v = vec![Gf25::ZERO; n];
                v[i] = Gf25::ONE;
                v
            })
            .collect();
        for &(j, c) in &expr.terms {
            if basis.is_empty() {
                break;
            }
            let gb = self.ideal(geom, j, c);
            let rems = remainders(gb, &monos);
            let mut rows: HashMap<Mono, usize> = HashMap::new();
            let mut images: Vec<Vec<(usize, Gf25)>> = Vec::with_capacity(basis.len());
            for b in &basis {
                let mut acc: HashMap<Mono, Gf25> = HashMap::new();
                for (a, &u) in b.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    for (m, c) in rems[a].terms() {
                        let e = acc.entry(*m).or_insert(Gf25::ZERO);
                        *e = *e + u * *c;
                    }
                }
                let mut img = Vec::new();
                for (m, c) in acc {
                    if !c.is_zero() {
                        let len = rows.len();
                        let r = *rows.entry(m).or_insert(len);
                        img.push((r, c));
                    }
                }
                images.push(img);
            }
            let k = basis.len();
            let mut mat = vec![vec![Gf25::ZERO; k]; rows.len()];
            for (col, img) in images.iter().enumerate() {
                for &(r, c) in img {
                    mat[r][col] = c;
                }
            }
            let ker = kernel(&mat, k);
            basis = ker
                .iter()
                .map(|kv| {
                    let mut v = vec![Gf25::ZERO; n];
                    for (i, &t) in kv.iter().enumerate() {
                        if !t.is_zero() {
                            for (x, &y) in v.iter_mut().zip(&basis[i]) {
                                *x = *x + t * y;
                            }
                        }
                    }
                    v
                })
                .collect();
        }
        rref(&mut basis);
        basis.retain(|v| v.iter().any(|x| !x.is_zero()));
        let polys = basis
            .iter()
            .map(|v| Poly::from_terms(v.iter().zip(&monos).filter(|(c, _)| !c.is_zero()).map(|(c, m)| (*m, *c))))
            .collect();
        SectionBasis { expression: expr.clone(), polys }
    }
}

/// Normal forms of all `monos` modulo `gb`, using `rem(v·m) = rem(v·rem(m))`.
fn remainders(gb: &IdealGb<Gf25>, monos: &[Mono]) -> Vec<Poly<Gf25>> {
    let mut memo: HashMap<Mono, Poly<Gf25>> = HashMap::new();
    let mut order: Vec<Mono> = monos.to_vec();
    order.sort();
    for m in order {
        let r = rem_of(gb, m, &mut memo);
        memo.insert(m, r);
    }
    monos.iter().map(|m| memo[m].clone()).collect()
}

fn rem_of(gb: &IdealGb<Gf25>, m: Mono, memo: &mut HashMap<Mono, Poly<Gf25>>) -> Poly<Gf25> {
    if let Some(r) = memo.get(&m) {
        return r.clone();
    }
    let e = m.exps();
    let Some(v) = [W, X, Y].into_iter().find(|&v| e[v] > 0) else {
        return gb.reduce(&Poly::one());
    };
    let mut pe = e;
    pe[v] -= 1;
    let prev = rem_of(gb, Mono::new(pe), memo);
    let r = gb.reduce(&prev.mul_term(Mono::var(v), &Gf25::ONE));
    memo.insert(m, r.clone());
    r
}

/// Sections of the line bundle of `v`, refusing `d(v) > max_d`.
pub fn section_space(geom: &Geometry, v: &NsVector, max_d: u32) -> Result<SectionBasis, ModelError> {
    let expr = express_divisor(geom, v)?;
    if expr.d > max_d {
        return Err(ModelError::Guard { d: expr.d, max: max_d });
    }
    Ok(SectionSolver::new().sections(geom, &expr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::geometry::tests::geometry;
    use crate::gf::parse_poly;

    #[test]
    fn v_dimension() {
        for d in 0..8 {
            let expect = (d + 1) * (d + 2) / 2 + if d >= 3 { (d - 2) * (d - 1) / 2 } else { 0 };
            assert_eq!(v_monomials(d).len() as u32, expect);
        }
        assert_eq!(v_monomials(6).len(), 6 * 6 + 2);
    }

    #[test]
    fn fermat_polarization_sections() {
        let g = geometry();
        let b = section_space(g, &g.h_fermat(), DEFAULT_MAX_D).unwrap();
        assert_eq!(b.polys, vec![parse_poly("x").unwrap(), parse_poly("y").unwrap(), parse_poly("1").unwrap()]);
    }

    #[test]
    fn sections_vanish_on_lines() {
        let g = geometry();
        let v = crate::nsengine::polar::tests::H_F1;
        let mut solver = SectionSolver::new();
        let expr = express_divisor(g, &v).unwrap();
        let b = solver.sections(g, &expr);
        assert_eq!(b.dim(), 3);
        for &(j, c) in &expr.terms {
            let gb = solver.ideal(g, j, c).clone();
            assert!(b.polys.iter().all(|p| gb.contains(p)));
        }
    }

    #[test]
    fn guard() {
        let g = geometry();
        let v = g.h_fermat().map(|x| 20 * x);
        assert!(matches!(section_space(g, &v, DEFAULT_MAX_D), Err(ModelError::Guard { .. })));
    }
}
