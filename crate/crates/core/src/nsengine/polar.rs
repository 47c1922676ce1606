//! Nef and polarization tests, exceptional curves and lines of a
//! polarization.

use std::collections::{BTreeMap, HashSet};

use crate::fermat::{Geometry, NsVector, RANK};
use crate::quadlat::intlin::spans_lattice;
use crate::quadlat::{separating_roots_stratified, AffineSlice, FixedNorm, LatticeData};

use super::shell::lattice;
use super::NsError;

fn to_ns(v: &[i64]) -> NsVector {
    let mut out = [0i64; RANK];
    out.copy_from_slice(v);
    out
}

/// `{x : ⟨x,x⟩ = norm, ⟨x,v⟩ = a}` for `v` of positive norm.
pub fn fixed_norm_slice(lat: &LatticeData, v: &[i64], a: i64, norm: i64) -> Result<Vec<NsVector>, NsError> {
    let Some(slice) = AffineSlice::solve(lat, &[(v.to_vec(), a)])?.slice() else { return Ok(Vec::new()) };
    let mut out = Vec::new();
    FixedNorm::new(lat, &slice, norm)?.for_each(|x| out.push(to_ns(x)))?;
    Ok(out)
}

fn check_positive(geom: &Geometry, v: &[i64]) -> Result<(), NsError> {
    if geom.pair(v, v) <= 0 || geom.pair(v, &geom.h_fermat()) <= 0 {
        return Err(NsError::Precondition("need ⟨v,v⟩ > 0 and ⟨v,h_F⟩ > 0".into()));
    }
    Ok(())
}

/// Outcome of the nef test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nef {
    Nef,
    /// A root of positive `h_F`-degree pairing negatively with `v`.
    NotNef(NsVector),
}

pub fn is_nef(geom: &Geometry, v: &[i64]) -> Result<Nef, NsError> {
    check_positive(geom, v)?;
    if v == geom.h_fermat() {
        return Ok(Nef::Nef);
    }
    let lat = lattice(geom)?;
    let s = separating_roots_stratified(&lat, &geom.h_fermat(), v, -2)?;
    Ok(match s.first() {
        None => Nef::Nef,
        Some(r) => Nef::NotNef(to_ns(r)),
    })
}

/// Why a vector fails to be a polarization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Polarization {
    Yes,
    NotNef(NsVector),
    /// `e` with `⟨e,e⟩ = 0`, `⟨e,v⟩ = 1`: the linear system has a fixed
    /// component.
    FixedComponent(NsVector),
}

impl Polarization {
    pub fn is_yes(&self) -> bool {
        matches!(self, Polarization::Yes)
    }
}

pub fn polarization_test(geom: &Geometry, v: &[i64]) -> Result<Polarization, NsError> {
    if let Nef::NotNef(r) = is_nef(geom, v)? {
        return Ok(Polarization::NotNef(r));
    }
    let lat = lattice(geom)?;
    Ok(match fixed_norm_slice(&lat, v, 1, 0)?.into_iter().next() {
        None => Polarization::Yes,
        Some(e) => Polarization::FixedComponent(e),
    })
}

pub fn is_polarization(geom: &Geometry, v: &[i64]) -> Result<bool, NsError> {
    Ok(polarization_test(geom, v)?.is_yes())
}

/// Roots with `⟨r,h⟩ = a` and positive `h_F`-degree, grouped by degree.
fn strata(geom: &Geometry, h: &[i64], a: i64) -> Result<BTreeMap<i64, Vec<NsVector>>, NsError> {
    let lat = lattice(geom)?;
    let hf = geom.h_fermat();
    let mut out: BTreeMap<i64, Vec<NsVector>> = BTreeMap::new();
    for r in fixed_norm_slice(&lat, h, a, -2)? {
        let m = geom.pair(&r, &hf);
        if m > 0 {
            out.entry(m).or_default().push(r);
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    Ok(out)
}

fn add(a: &NsVector, b: &NsVector) -> NsVector {
    let mut o = *a;
    for k in 0..RANK {
        o[k] += b[k];
    }
    o
}

fn sub(a: &NsVector, b: &NsVector) -> NsVector {
    let mut o = *a;
    for k in 0..RANK {
        o[k] -= b[k];
    }
    o
}

/// Nonempty sums of members of `gens` (by degree), up to degree `max`.
fn sums_by_degree(gens: &BTreeMap<i64, Vec<NsVector>>, max: i64) -> BTreeMap<i64, HashSet<NsVector>> {
    let mut sums: BTreeMap<i64, HashSet<NsVector>> = BTreeMap::new();
    for m in 1..=max {
        let mut s: HashSet<NsVector> = gens.get(&m).map(|v| v.iter().copied().collect()).unwrap_or_default();
        for (&a, ga) in gens.range(1..m) {
            if let Some(rest) = sums.get(&(m - a)) {
                for g in ga {
                    for r in rest {
                        s.insert(add(g, r));
                    }
                }
            }
        }
        sums.insert(m, s);
    }
    sums
}

/// Classes of curves contracted by the polarization: the indecomposable
/// roots orthogonal to `h`.
pub fn exc_set(geom: &Geometry, h: &[i64]) -> Result<Vec<NsVector>, NsError> {
    let r = strata(geom, h, 0)?;
    let max = r.keys().next_back().copied().unwrap_or(0);
    let sums = sums_by_degree(&r, max);
    let mut out = Vec::new();
    for (&m, rm) in &r {
        'roots: for x in rm {
            for (&a, ra) in r.range(1..m) {
                let rest = &sums[&(m - a)];
                for y in ra {
                    if rest.contains(&sub(x, y)) {
                        continue 'roots;
                    }
                }
            }
            out.push(*x);
        }
    }
    Ok(out)
}

/// Classes of curves mapped isomorphically onto lines.
pub fn lin_set(geom: &Geometry, h: &[i64], exc: &[NsVector]) -> Result<Vec<NsVector>, NsError> {
    let l = strata(geom, h, 1)?;
    let hf = geom.h_fermat();
    let mut ex: BTreeMap<i64, Vec<NsVector>> = BTreeMap::new();
    for e in exc {
        ex.entry(geom.pair(e, &hf)).or_default().push(*e);
    }
    let max = l.keys().next_back().copied().unwrap_or(0);
    let sums = sums_by_degree(&ex, max);
    let mut out = Vec::new();
    for (&m, lm) in &l {
        'roots: for x in lm {
            for (&a, la) in l.range(1..m) {
                let Some(rest) = sums.get(&(m - a)) else { continue };
                for y in la {
                    if rest.contains(&sub(x, y)) {
                        continue 'roots;
                    }
                }
            }
            out.push(*x);
        }
    }
    Ok(out)
}

/// Whether the given classes generate the whole lattice.
pub fn spans_ns(classes: &[NsVector]) -> bool {
    let rows: Vec<Vec<i64>> = classes.iter().map(|c| c.to_vec()).collect();
    spans_lattice(&rows, RANK)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fermat::geometry::tests::geometry;

    pub const H_F1: NsVector = [1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, -1, 0, 0, 0, 0, 0, 0, 0];

    #[test]
    fn fermat_polarization() {
        let g = geometry();
        let h = g.h_fermat();
        assert_eq!(polarization_test(g, &h).unwrap(), Polarization::Yes);
        assert!(exc_set(g, &h).unwrap().is_empty());
        let lin = lin_set(g, &h, &[]).unwrap();
        assert_eq!(lin.len(), 252);
        let mut lines: Vec<NsVector> = g.lines.iter().map(|l| l.class).collect();
        lines.sort();
        let mut got = lin.clone();
        got.sort();
        assert_eq!(got, lines);
        assert!(spans_ns(&lin));
    }

    #[test]
    fn second_smooth_polarization() {
        let g = geometry();
        assert_eq!(g.pair(&H_F1, &H_F1), 2);
        assert_eq!(g.pair(&H_F1, &g.h_fermat()), 4);
        assert!(is_polarization(g, &H_F1).unwrap());
        assert!(exc_set(g, &H_F1).unwrap().is_empty());
    }

    #[test]
    fn non_nef_witness() {
        let g = geometry();
        // h_F + ℓ₁ has norm 2 and pairs to −1 with ℓ₁
        let mut v = g.h_fermat();
        v[0] += 1;
        match is_nef(g, &v).unwrap() {
            Nef::NotNef(r) => {
                assert_eq!(g.pair(&r, &r), -2);
                assert!(g.pair(&r, &g.h_fermat()) > 0);
                assert!(g.pair(&r, &v) < 0);
            }
            Nef::Nef => panic!("expected a witness"),
        }
    }
}
