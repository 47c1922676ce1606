//! Orbits of the finite group on sets of lattice vectors.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::fermat::geometry::apply;
use crate::fermat::io::{check_header, header};
use crate::fermat::{Geometry, Group, NsVector, GROUP_ORDER, RANK};

use super::ade::AdeType;
use super::order::total_cmp;
use super::NsError;

/// Compact hash key for vectors with small coordinates.
pub type Key = [i16; RANK];

pub fn key(v: &NsVector) -> Result<Key, NsError> {
    let mut k = [0i16; RANK];
    for i in 0..RANK {
        k[i] = i16::try_from(v[i]).map_err(|_| NsError::Check("coordinate out of key range".into()))?;
    }
    Ok(k)
}

pub fn unkey(k: &Key) -> NsVector {
    let mut v = [0i64; RANK];
    for i in 0..RANK {
        v[i] = k[i] as i64;
    }
    v
}

/// The group action through generator matrices, plus the Frobenius.
#[derive(Clone, Debug)]
pub struct Action {
    pub generators: Vec<Vec<Vec<i64>>>,
    pub frobenius: Vec<Vec<i64>>,
}

impl Action {
    pub fn new(geom: &Geometry, group: &Group) -> Action {
        Action { generators: group.generator_matrices.clone(), frobenius: geom.frobenius.clone() }
    }

    /// The orbit of `v`, in BFS order.
    pub fn orbit(&self, v: &NsVector) -> Result<Vec<NsVector>, NsError> {
        let mut seen: HashMap<Key, ()> = HashMap::new();
        seen.insert(key(v)?, ());
        let mut out = vec![*v];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in &self.generators {
                let y = apply(g, &x);
                if seen.insert(key(&y)?, ()).is_none() {
                    out.push(y);
                }
            }
            i += 1;
        }
        Ok(out)
    }

    /// Minimal member of the orbit of `v`.
    pub fn orbit_min(&self, v: &NsVector) -> Result<NsVector, NsError> {
        let o = self.orbit(v)?;
        Ok(*o.iter().min_by(|a, b| total_cmp(&a[..], &b[..])).unwrap())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub representative: NsVector,
    pub size: u64,
    pub stabilizer: u64,
    pub degree: i64,
    pub polarization: bool,
    /// ADE type, for polarizations.
    pub rt: Option<AdeType>,
    /// Index of the orbit of the conjugate vectors.
    pub partner: usize,
}

/// Decomposition without per-orbit data beyond sizes and conjugates.
#[derive(Clone, Debug)]
pub struct RawOrbit {
    pub representative: NsVector,
    pub size: u64,
    /// Minimal member of the conjugate orbit.
    pub conjugate_min: NsVector,
}

/// Splits a group-stable set into orbits by BFS over generators. Returns
/// orbits sorted by representative.
pub fn orbit_decompose(action: &Action, vectors: &[NsVector]) -> Result<Vec<RawOrbit>, NsError> {
    let mut assigned: HashMap<Key, bool> = HashMap::with_capacity(vectors.len());
    for v in vectors {
        assigned.insert(key(v)?, false);
    }
    let mut out = Vec::new();
    let mut frontier: Vec<NsVector> = Vec::new();
    for v in vectors {
        let k = key(v)?;
        if assigned[&k] {
            continue;
        }
        assigned.insert(k, true);
        frontier.clear();
        frontier.push(*v);
        let mut rep = *v;
        let mut conj = apply(&action.frobenius, v);
        let mut i = 0;
        while i < frontier.len() {
            let x = frontier[i];
            if total_cmp(&x, &rep).is_lt() {
                rep = x;
            }
            let c = apply(&action.frobenius, &x);
            if total_cmp(&c, &conj).is_lt() {
                conj = c;
            }
            for g in &action.generators {
                let y = apply(g, &x);
                match assigned.get_mut(&key(&y)?) {
                    None => return Err(NsError::Check("orbit leaves the input set".into())),
                    Some(true) => {}
                    Some(flag) => {
                        *flag = true;
                        frontier.push(y);
                    }
                }
            }
            i += 1;
        }
        let size = frontier.len() as u64;
        if GROUP_ORDER as u64 % size != 0 {
            return Err(NsError::Check(format!("orbit size {size} does not divide the group order")));
        }
        out.push(RawOrbit { representative: rep, size, conjugate_min: conj });
    }
    out.sort_by(|a, b| total_cmp(&a.representative, &b.representative));
    Ok(out)
}

/// Index of each orbit's conjugate orbit.
pub fn galois_partners(orbits: &[RawOrbit]) -> Result<Vec<usize>, NsError> {
    let by_rep: HashMap<NsVector, usize> = orbits.iter().enumerate().map(|(i, o)| (o.representative, i)).collect();
    orbits
        .iter()
        .map(|o| by_rep.get(&o.conjugate_min).copied().ok_or_else(|| NsError::Check("conjugate orbit not found".into())))
        .collect()
}

/// Representative of the orbit of the conjugate of `rep`.
pub fn galois_partner(action: &Action, rep: &NsVector) -> Result<NsVector, NsError> {
    action.orbit_min(&apply(&action.frobenius, rep))
}

pub fn write_orbits<W: Write>(w: &mut W, orbits: &[OrbitRecord]) -> std::io::Result<()> {
    writeln!(w, "{}", header("orbits"))?;
    for o in orbits {
        let rep: Vec<String> = o.representative.iter().map(|x| x.to_string()).collect();
        let rt = o.rt.as_ref().map(|t| t.to_string()).unwrap_or_else(|| "-".into());
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}",
            rep.join(" "),
            o.size,
            o.stabilizer,
            if o.polarization { 1 } else { 0 },
            rt,
            o.partner
        )?;
    }
    Ok(())
}

pub fn read_orbits<R: BufRead>(r: R, geom: &Geometry) -> Result<Vec<OrbitRecord>, NsError> {
    let bad = |s: &str| NsError::Check(format!("bad orbit record: {s}"));
    let mut out = Vec::new();
    let mut it = r.lines();
    let first = it.next().transpose()?;
    check_header(first.as_deref(), "orbits")?;
    for line in it {
        let line = line?;
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 6 {
            return Err(bad(&line));
        }
        let xs: Vec<i64> = f[0].split_whitespace().map(|t| t.parse()).collect::<Result<_, _>>().map_err(|_| bad(&line))?;
        if xs.len() != RANK {
            return Err(bad(&line));
        }
        let mut rep = [0i64; RANK];
        rep.copy_from_slice(&xs);
        let rt = if f[4] == "-" { None } else { Some(AdeType::parse(f[4])?) };
        out.push(OrbitRecord {
            representative: rep,
            size: f[1].parse().map_err(|_| bad(&line))?,
            stabilizer: f[2].parse().map_err(|_| bad(&line))?,
            degree: geom.pair(&rep, &geom.h_fermat()),
            polarization: f[3] == "1",
            rt,
            partner: f[5].parse().map_err(|_| bad(&line))?,
        });
    }
    Ok(out)
}
