//! Orbit classification of a degree shell and the lattice data of each
//! polarization.

use crate::fermat::{Geometry, NsVector, GROUP_ORDER, RANK};

use super::ade::{ade_type, AdeType};
use super::orbits::{galois_partners, orbit_decompose, Action, OrbitRecord, RawOrbit};
use super::polar::{exc_set, lin_set, polarization_test, spans_ns, Polarization};
use super::shell::shell;
use super::NsError;

/// Lattice-side data of one polarization.
#[derive(Clone, Debug)]
pub struct PolarizationData {
    pub h: NsVector,
    pub exc: Vec<NsVector>,
    pub lin: Vec<NsVector>,
    pub rt: AdeType,
    /// Whether `exc ∪ lin` generates the lattice.
    pub spans: bool,
}

pub fn analyze(geom: &Geometry, h: &NsVector) -> Result<PolarizationData, NsError> {
    let exc = exc_set(geom, h)?;
    let lin = lin_set(geom, h, &exc)?;
    let rt = ade_type(geom, &exc)?;
    if rt.rank() != exc.len() {
        return Err(NsError::Check("ADE rank differs from the number of exceptional classes".into()));
    }
    let mut all = exc.clone();
    all.extend(lin.iter().copied());
    let spans = spans_ns(&all);
    Ok(PolarizationData { h: *h, exc, lin, rt, spans })
}

/// All vectors of `V_δ`.
pub fn shell_vectors(geom: &Geometry, delta: i64) -> Result<Vec<NsVector>, NsError> {
    let mut out = Vec::new();
    shell(geom, delta, 2)?.for_each(|x| {
        let mut v = [0i64; RANK];
        v.copy_from_slice(x);
        out.push(v);
    })?;
    Ok(out)
}

/// Attaches polarization flags and ADE types to raw orbits.
pub fn finish_orbits(geom: &Geometry, raw: &[RawOrbit]) -> Result<Vec<OrbitRecord>, NsError> {
    let partners = galois_partners(raw)?;
    let hf = geom.h_fermat();
    let mut out = Vec::with_capacity(raw.len());
    for (o, &partner) in raw.iter().zip(&partners) {
        let pol = polarization_test(geom, &o.representative)?;
        let rt = if pol == Polarization::Yes { Some(ade_type(geom, &exc_set(geom, &o.representative)?)?) } else { None };
        out.push(OrbitRecord {
            representative: o.representative,
            size: o.size,
            stabilizer: GROUP_ORDER as u64 / o.size,
            degree: geom.pair(&o.representative, &hf),
            polarization: pol.is_yes(),
            rt,
            partner,
        });
    }
    Ok(out)
}

/// Orbits of `V_δ` with their lattice data, kept in memory.
pub fn classify_shell(geom: &Geometry, action: &Action, delta: i64) -> Result<Vec<OrbitRecord>, NsError> {
    let v = shell_vectors(geom, delta)?;
    let raw = orbit_decompose(action, &v)?;
    finish_orbits(geom, &raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::geometry::tests::geometry;
    use crate::fermat::Group;

    #[test]
    fn degree_four_orbits() {
        let g = geometry();
        let grp = Group::build(g).unwrap();
        let action = Action::new(g, &grp);
        let orbits = classify_shell(g, &action, 4).unwrap();
        assert_eq!(orbits.len(), 8);
        assert_eq!(orbits.iter().map(|o| o.size).sum::<u64>(), 1_020_600);
        let mut pols: Vec<u64> = orbits.iter().filter(|o| o.polarization).map(|o| o.stabilizer).collect();
        pols.sort_unstable();
        assert_eq!(pols, [2, 3, 4, 9, 12, 20, 720]);
        let other: Vec<u64> = orbits.iter().filter(|o| !o.polarization).map(|o| o.stabilizer).collect();
        assert_eq!(other, [48]);
        assert!(orbits.iter().filter(|o| !o.polarization).all(|o| o.rt.is_none()));
    }
}
