//! The 252 lines with fixed signs and indices, the basis Gram matrix, the
//! classes of all lines and the Frobenius matrix.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::gf::linalg::{det, inverse};
use crate::Rational;

use super::lines::{basis_from_table, intersection_direct, intersection_number, split_line, HLine, Sign};
use super::points::{hermitian_points, point_index, Point};
use super::{FermatError, NsVector, RANK};

/// One of the 252 lines with its index (0-based) and class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub index: usize,
    pub sign: Sign,
    pub line: HLine,
    pub class: NsVector,
}

/// Lines, Gram matrix, pairing table and Frobenius matrix.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub lines: Vec<Line>,
    pub gram: Vec<Vec<i64>>,
    /// `pairing[i][j] = ⟨ℓ_i, ℓ_j⟩`.
    pub pairing: Vec<Vec<i8>>,
    /// Row `i` is the class of the conjugate of line `i`.
    pub frobenius: Vec<Vec<i64>>,
    by_line: HashMap<HLine, usize>,
    by_class: HashMap<NsVector, usize>,
}

pub const NUM_LINES: usize = 252;

/// The base point of the first line, `[0:1:1+√2]`.
pub fn p0() -> Point {
    use crate::gf::Gf25;
    [Gf25::ZERO, Gf25::ONE, Gf25::new(1, 1)]
}

/// The two components over every point, labelled by the rule
/// `⟨ℓ⁺(P), ℓ⁺(P₀)⟩ = 1` and indexed with the basis lines first.
pub fn normalize_signs() -> Result<Vec<(Sign, HLine)>, FermatError> {
    let table = basis_from_table()?;
    let plus0 = table[0].1.clone();
    let mut labelled: Vec<(usize, Sign, HLine)> = Vec::with_capacity(NUM_LINES);
    for p in hermitian_points() {
        let (a, b) = split_line(&p)?;
        let (plus, minus) = if p == plus0.point {
            if a == plus0 {
                (a, b)
            } else {
                (b, a)
            }
        } else {
            let ia = intersection_number(&a, &plus0)?;
            let ib = intersection_number(&b, &plus0)?;
            match (ia, ib) {
                (1, 0) => (a, b),
                (0, 1) => (b, a),
                _ => return Err(FermatError::Check(format!("sign rule fails at {p:?}: {ia}, {ib}"))),
            }
        };
        let k = point_index(&p);
        labelled.push((k, Sign::Plus, plus));
        labelled.push((k, Sign::Minus, minus));
    }
    labelled.sort_by_key(|(k, s, _)| (*k, *s));
    let mut out: Vec<(Sign, HLine)> = Vec::with_capacity(NUM_LINES);
    for (s, l) in &table {
        let found = labelled
            .iter()
            .find(|(_, _, m)| m == l)
            .ok_or_else(|| FermatError::Check(format!("basis line {l:?} not re-derived")))?;
        if found.1 != *s {
            return Err(FermatError::Check(format!("basis line {l:?} has sign {}", found.1)));
        }
        out.push((*s, l.clone()));
    }
    for (_, s, l) in labelled {
        if !table.iter().any(|(_, m)| *m == l) {
            out.push((s, l));
        }
    }
    Ok(out)
}

fn to_i64(x: &Rational) -> Result<i64, FermatError> {
    if !x.is_integer() {
        return Err(FermatError::Check(format!("non-integral class entry {x}")));
    }
    x.to_integer().to_i64().ok_or_else(|| FermatError::Check("class entry overflow".into()))
}

/// `⟨a, b⟩` in the basis with Gram matrix `gram`.
pub fn pair(gram: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..a.len() {
        if a[i] == 0 {
            continue;
        }
        let mut t = 0;
        for j in 0..b.len() {
            t += gram[i][j] * b[j];
        }
        s += a[i] * t;
    }
    s
}

impl Geometry {
    /// Builds everything from the line equations. Intersection numbers with
    /// the basis lines come from Gröbner bases; the rest of the pairing table
    /// from the classes, checked against the plane geometry.
    pub fn build() -> Result<Geometry, FermatError> {
        let labelled = normalize_signs()?;
        let basis_owned: Vec<HLine> = labelled[..RANK].iter().map(|(_, l)| l.clone()).collect();
        let basis: Vec<&HLine> = basis_owned.iter().collect();
        let mut gram = vec![vec![0i64; RANK]; RANK];
        for i in 0..RANK {
            gram[i][i] = -2;
            for j in i + 1..RANK {
                let v = intersection_number(basis[i], basis[j])?;
                gram[i][j] = v;
                gram[j][i] = v;
            }
        }
        let mq: Vec<Vec<Rational>> =
            gram.iter().map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()).collect();
        let minv = inverse(&mq).map_err(|e| FermatError::Check(format!("singular Gram matrix: {e:?}")))?;
        let mut lines = Vec::with_capacity(NUM_LINES);
        for (index, (sign, l)) in labelled.into_iter().enumerate() {
            let mut pv = vec![Rational::zero(); RANK];
            for j in 0..RANK {
                let v = if index == j { -2 } else { intersection_number(&l, basis[j])? };
                pv[j] = Rational::from_integer(BigInt::from(v));
            }
            let mut class = [0i64; RANK];
            for k in 0..RANK {
                let mut s = Rational::zero();
                for j in 0..RANK {
                    if !pv[j].is_zero() {
                        s += &pv[j] * &minv[j][k];
                    }
                }
                class[k] = to_i64(&s)?;
            }
            lines.push(Line { index, sign, line: l, class });
        }
        let mut pairing = vec![vec![0i8; NUM_LINES]; NUM_LINES];
        for a in &lines {
            for b in &lines {
                let v = pair(&gram, &a.class, &b.class);
                if v != intersection_direct(&a.line, &b.line) {
                    return Err(FermatError::Check(format!("pairing of lines {} and {}", a.index, b.index)));
                }
                pairing[a.index][b.index] = v as i8;
            }
        }
        let by_line = lines.iter().map(|l| (l.line.clone(), l.index)).collect();
        let by_class: HashMap<NsVector, usize> = lines.iter().map(|l| (l.class, l.index)).collect();
        if by_class.len() != NUM_LINES {
            return Err(FermatError::Check("line classes are not distinct".into()));
        }
        let mut g = Geometry { lines, gram, pairing, frobenius: Vec::new(), by_line, by_class };
        let mut frob = Vec::with_capacity(RANK);
        for i in 0..RANK {
            let c = g.lines[i].line.conjugate();
            let j = g.index_of(&c).ok_or_else(|| FermatError::Check("conjugate is not a line".into()))?;
            frob.push(g.lines[j].class.to_vec());
        }
        g.frobenius = frob;
        Ok(g)
    }

    /// Reassembles the geometry from cached data, recomputing the indices.
    pub fn from_parts(lines: Vec<Line>, gram: Vec<Vec<i64>>, frobenius: Vec<Vec<i64>>) -> Result<Geometry, FermatError> {
        if lines.len() != NUM_LINES || gram.len() != RANK || frobenius.len() != RANK {
            return Err(FermatError::Check("wrong table sizes".into()));
        }
        let mut pairing = vec![vec![0i8; NUM_LINES]; NUM_LINES];
        for a in &lines {
            for b in &lines {
                pairing[a.index][b.index] = pair(&gram, &a.class, &b.class) as i8;
            }
        }
        let by_line = lines.iter().map(|l| (l.line.clone(), l.index)).collect();
        let by_class = lines.iter().map(|l| (l.class, l.index)).collect();
        Ok(Geometry { lines, gram, pairing, frobenius, by_line, by_class })
    }

    pub fn index_of(&self, l: &HLine) -> Option<usize> {
        self.by_line.get(l).copied()
    }

    pub fn index_of_class(&self, c: &NsVector) -> Option<usize> {
        self.by_class.get(c).copied()
    }

    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        pair(&self.gram, a, b)
    }

    pub fn det(&self) -> i64 {
        let mq: Vec<Vec<Rational>> =
            self.gram.iter().map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()).collect();
        to_i64(&det(&mq)).unwrap()
    }

    /// `h_F = ℓ₁ + ℓ₂`.
    pub fn h_fermat(&self) -> NsVector {
        let mut h = [0i64; RANK];
        h[0] = 1;
        h[1] = 1;
        h
    }

    /// Index of the other component over the same plane line.
    pub fn deck_partner(&self, i: usize) -> usize {
        self.index_of(&self.lines[i].line.deck()).unwrap()
    }

    /// `v ↦ vΓ` for the Frobenius matrix.
    pub fn apply_frobenius(&self, v: &[i64]) -> NsVector {
        apply(&self.frobenius, v)
    }
}

/// Row vector times matrix.
pub fn apply(m: &[Vec<i64>], v: &[i64]) -> NsVector {
    let mut out = [0i64; RANK];
    for (i, &c) in v.iter().enumerate() {
        if c != 0 {
            for k in 0..RANK {
                out[k] += c * m[i][k];
            }
        }
    }
    out
}

pub fn is_identity(m: &[Vec<i64>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == if i == j { 1 } else { 0 }))
}

pub fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().map(|r| apply(b, r).to_vec()).collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use std::sync::OnceLock;

    use super::*;
    use crate::fermat::lines::parse_point;

    pub(crate) fn geometry() -> &'static Geometry {
        static G: OnceLock<Geometry> = OnceLock::new();
        G.get_or_init(|| Geometry::build().unwrap())
    }

    #[test]
    fn determinant_is_minus_25() {
        assert_eq!(geometry().det(), -25);
    }

    #[test]
    fn basis_classes_are_unit_vectors() {
        let g = geometry();
        for i in 0..RANK {
            let mut e = [0i64; RANK];
            e[i] = 1;
            assert_eq!(g.lines[i].class, e);
        }
    }

    #[test]
    fn class_of_the_example_line() {
        let g = geometry();
        let p = parse_point("1:4+4√2:0").unwrap();
        let l = g.lines.iter().find(|l| l.line.point == p && l.sign == Sign::Minus).unwrap();
        assert_eq!(l.class, [-4, -6, 3, 1, 1, 2, 1, -1, 2, 1, 1, 4, 1, 0, -3, 0, 2, -1, 3, -1, -2, -3]);
    }

    #[test]
    fn components_sum_to_the_polarization() {
        let g = geometry();
        let h = g.h_fermat();
        for l in &g.lines {
            assert_eq!(g.pair(&l.class, &l.class), -2);
            assert_eq!(g.pair(&l.class, &h), 1);
            let m = &g.lines[g.deck_partner(l.index)];
            assert_ne!(m.sign, l.sign);
            let s: Vec<i64> = (0..RANK).map(|k| l.class[k] + m.class[k]).collect();
            assert_eq!(s, h.to_vec());
        }
    }

    #[test]
    fn sign_rule_holds() {
        let g = geometry();
        for l in &g.lines[1..] {
            if l.line.point != p0() {
                let want = if l.sign == Sign::Plus { 1 } else { 0 };
                assert_eq!(g.pairing[l.index][0], want);
            }
        }
    }

    #[test]
    fn frobenius_is_an_involutive_isometry_fixing_h() {
        let g = geometry();
        assert!(is_identity(&mat_mul_i64(&g.frobenius, &g.frobenius)));
        let h = g.h_fermat();
        assert_eq!(g.apply_frobenius(&h), h);
        for i in 0..RANK {
            for j in 0..RANK {
                let a = g.apply_frobenius(&g.lines[i].class);
                let b = g.apply_frobenius(&g.lines[j].class);
                assert_eq!(g.pair(&a, &b), g.gram[i][j]);
            }
        }
        // rows of lines defined over GF(5) are fixed
        for i in 0..RANK {
            if g.lines[i].line == g.lines[i].line.conjugate() {
                assert_eq!(g.frobenius[i], g.lines[i].class.to_vec());
            }
        }
    }
}
