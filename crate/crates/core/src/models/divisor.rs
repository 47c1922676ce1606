//! Writing a class as `d·h_F − Σ c_j [ℓ_j]`.

use std::collections::BTreeMap;

use crate::fermat::{Geometry, NsVector, RANK};

use super::ModelError;

/// `d·h_F − Σ c_j [ℓ_j]` with line indices into [`Geometry::lines`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorExpression {
    pub d: u32,
    /// `(j, c_j)` sorted by line index, all `c_j > 0`.
    pub terms: Vec<(usize, u32)>,
}

impl DivisorExpression {
    pub fn scaled(&self, k: u32) -> DivisorExpression {
        DivisorExpression { d: self.d * k, terms: self.terms.iter().map(|&(j, c)| (j, c * k)).collect() }
    }

    /// The class `d·h_F − Σ c_j [ℓ_j]`.
    pub fn class(&self, geom: &Geometry) -> NsVector {
        let hf = geom.h_fermat();
        let mut v = [0i64; RANK];
        for i in 0..RANK {
            v[i] = self.d as i64 * hf[i];
        }
        for &(j, c) in &self.terms {
            for i in 0..RANK {
                v[i] -= c as i64 * geom.lines[j].class[i];
            }
        }
        v
    }

    pub fn indices(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.0).collect()
    }
}

/// Writes `v` in the basis lines, trades each positive term `a·[ℓ_i]` for
/// `a·h_F − a·[ℓ_i′]` with `ℓ_i′` the deck partner, then cancels deck pairs
/// against `h_F`.
pub fn express_divisor(geom: &Geometry, v: &NsVector) -> Result<DivisorExpression, ModelError> {
    let mut d: i64 = 0;
    let mut terms: BTreeMap<usize, i64> = BTreeMap::new();
    for (i, &a) in v.iter().enumerate() {
        if a > 0 {
            d += a;
            *terms.entry(geom.deck_partner(i)).or_default() += a;
        } else if a < 0 {
            *terms.entry(i).or_default() += -a;
        }
    }
    let keys: Vec<usize> = terms.keys().copied().collect();
    for j in keys {
        let p = geom.deck_partner(j);
        if p <= j {
            continue;
        }
        let (Some(&a), Some(&b)) = (terms.get(&j), terms.get(&p)) else { continue };
        let m = a.min(b);
        d -= m;
        *terms.get_mut(&j).unwrap() -= m;
        *terms.get_mut(&p).unwrap() -= m;
    }
    let expr = DivisorExpression {
        d: d as u32,
        terms: terms.into_iter().filter(|&(_, c)| c > 0).map(|(j, c)| (j, c as u32)).collect(),
    };
    if expr.class(geom) != *v {
        return Err(ModelError::Check(format!("expression {expr:?} does not reproduce {v:?}")));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::geometry::tests::geometry;

    #[test]
    fn small_expressions() {
        let g = geometry();
        let e = express_divisor(g, &g.h_fermat()).unwrap();
        assert_eq!(e, DivisorExpression { d: 1, terms: vec![] });
        let mut v = [0i64; RANK];
        v[0] = -1;
        assert_eq!(express_divisor(g, &v).unwrap(), DivisorExpression { d: 0, terms: vec![(0, 1)] });
        v[0] = 1;
        assert_eq!(express_divisor(g, &v).unwrap(), DivisorExpression { d: 1, terms: vec![(g.deck_partner(0), 1)] });
    }

    #[test]
    fn scaling_preserves_class() {
        let g = geometry();
        let v = crate::nsengine::polar::tests::H_F1;
        let e = express_divisor(g, &v).unwrap();
        let e3 = e.scaled(3);
        let c = e3.class(g);
        assert!(c.iter().zip(&v).all(|(a, b)| *a == 3 * b));
    }
}
