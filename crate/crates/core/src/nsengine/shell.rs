//! The sets `V_δ = {v : ⟨v,v⟩ = 2, ⟨v,h_F⟩ = δ}`.

use crate::fermat::Geometry;
use crate::quadlat::{AffineSlice, FixedNorm, LatticeData};

use super::NsError;

pub fn lattice(geom: &Geometry) -> Result<LatticeData, NsError> {
    Ok(LatticeData::new(geom.gram.clone())?)
}

/// Prepared enumeration of `{v : ⟨v,v⟩ = norm, ⟨v,h_F⟩ = delta}`.
pub fn shell(geom: &Geometry, delta: i64, norm: i64) -> Result<FixedNorm, NsError> {
    let lat = lattice(geom)?;
    let h = geom.h_fermat().to_vec();
    let slice = AffineSlice::solve(&lat, &[(h, delta)])?
        .slice()
        .ok_or_else(|| NsError::Check(format!("no vector of degree {delta}")))?;
    Ok(FixedNorm::new(&lat, &slice, norm)?)
}

pub fn shell_count(geom: &Geometry, delta: i64) -> Result<u64, NsError> {
    Ok(shell(geom, delta, 2)?.count()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::geometry::tests::geometry;

    #[test]
    fn small_shells() {
        let g = geometry();
        // the lines are exactly the roots of degree 1
        assert_eq!(shell(g, 1, -2).unwrap().count().unwrap(), 252);
        let v2 = shell(g, 2, 2).unwrap().collect().unwrap();
        assert_eq!(v2, vec![g.h_fermat().to_vec()]);
        // h_F + ℓ for the 252 lines ℓ, none of them nef
        assert_eq!(shell_count(g, 3).unwrap(), 252);
    }

    #[test]
    fn degree_four_shell() {
        let t = std::time::Instant::now();
        assert_eq!(shell_count(geometry(), 4).unwrap(), 1_020_600);
        eprintln!("V4 count in {:?}", t.elapsed());
    }
}
