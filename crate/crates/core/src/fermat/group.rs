//! The stabilizer of the Fermat polarization, generated by unitary
//! projective maps lifted to the surface and the deck involution, acting on
//! the 252 lines.

use std::collections::HashMap;

use crate::gf::Gf25;

use super::geometry::{apply, Geometry, NUM_LINES};
use super::points::{cross, normalize, Point};
use super::{FermatError, NsVector, RANK};

pub type Mat3 = [[Gf25; 3]; 3];

/// A permutation of the line indices.
pub type Perm = Vec<u8>;

pub const GROUP_ORDER: usize = 756_000;

/// `μ` with `A·Āᵗ = μ·I`, if `A` is unitary up to a scalar.
pub fn unitary_factor(a: &Mat3) -> Option<Gf25> {
    let mut mu = None;
    for i in 0..3 {
        for j in 0..3 {
            let mut s = Gf25::ZERO;
            for k in 0..3 {
                s = s + a[i][k] * a[j][k].frobenius();
            }
            if i == j {
                match mu {
                    None => mu = Some(s),
                    Some(m) if m == s => {}
                    _ => return None,
                }
            } else if !s.is_zero() {
                return None;
            }
        }
    }
    mu.filter(|m| !m.is_zero())
}

fn row_times(p: &[Gf25; 3], a: &Mat3) -> [Gf25; 3] {
    let mut out = [Gf25::ZERO; 3];
    for (k, o) in out.iter_mut().enumerate() {
        *o = p[0] * a[0][k] + p[1] * a[1][k] + p[2] * a[2][k];
    }
    out
}

/// Line permutation induced by `(x, w) ↦ (xA, εw)` with `ε² = μ`.
pub fn unitary_perm(geom: &Geometry, a: &Mat3) -> Result<Perm, FermatError> {
    let mu = unitary_factor(a).ok_or_else(|| FermatError::Check("matrix is not unitary".into()))?;
    let eps = mu.sqrt().map_err(|_| FermatError::Check("unitary factor is not a square".into()))?;
    let mut over: HashMap<Point, Vec<usize>> = HashMap::new();
    for l in &geom.lines {
        over.entry(l.line.point).or_default().push(l.index);
    }
    let mut perm = Vec::with_capacity(NUM_LINES);
    for l in &geom.lines {
        let p = l.line.point;
        let q = (0..3)
            .map(|k| {
                let mut e = [Gf25::ZERO; 3];
                e[k] = Gf25::ONE;
                cross(&l.line.linear, &e)
            })
            .find(|q| normalize(*q).is_some_and(|n| n != p))
            .unwrap();
        let w = l.line.w_at(&q);
        let q2 = row_times(&q, a);
        let w2 = eps * w;
        let p2 = normalize(row_times(&p, a)).unwrap();
        let cands = over.get(&p2).ok_or(FermatError::NotOnCurve(p2))?;
        let hit: Vec<usize> = cands.iter().copied().filter(|&j| geom.lines[j].line.w_at(&q2) == w2).collect();
        match hit.as_slice() {
            [j] => perm.push(*j as u8),
            _ => return Err(FermatError::Check(format!("image of line {} not unique", l.index))),
        }
    }
    Ok(perm)
}

pub fn deck_perm(geom: &Geometry) -> Perm {
    (0..NUM_LINES).map(|i| geom.deck_partner(i) as u8).collect()
}

/// Permutation induced by the Frobenius on line equations.
pub fn frobenius_perm(geom: &Geometry) -> Perm {
    geom.lines.iter().map(|l| geom.index_of(&l.line.conjugate()).unwrap() as u8).collect()
}

/// A primitive sixth root of unity in `GF(25)`.
pub fn zeta6() -> Gf25 {
    Gf25::all()
        .find(|z| z.pow(6) == Gf25::ONE && z.pow(2) != Gf25::ONE && z.pow(3) != Gf25::ONE)
        .unwrap()
}

/// Coordinate transposition and 3-cycle, a diagonal scaling, the reflection
/// in `(1,1,1)` (which is `I + J`) and the deck involution.
pub fn default_generators(geom: &Geometry) -> Result<Vec<Perm>, FermatError> {
    let (o, z) = (Gf25::ONE, Gf25::ZERO);
    let two = Gf25::new(2, 0);
    let mats: [Mat3; 4] = [
        [[z, o, z], [o, z, z], [z, z, o]],
        [[z, o, z], [z, z, o], [o, z, z]],
        [[zeta6(), z, z], [z, o, z], [z, z, o]],
        [[two, o, o], [o, two, o], [o, o, two]],
    ];
    let mut gens = Vec::new();
    for m in &mats {
        gens.push(unitary_perm(geom, m)?);
    }
    gens.push(deck_perm(geom));
    Ok(gens)
}

/// Whether a line permutation preserves all intersection numbers.
pub fn preserves_pairing(geom: &Geometry, p: &[u8]) -> bool {
    (0..NUM_LINES).all(|i| {
        let pi = p[i] as usize;
        (i..NUM_LINES).all(|j| geom.pairing[pi][p[j] as usize] == geom.pairing[i][j])
    })
}

/// The isometry `T` of an element: row `i` is the class of the image of
/// the `i`-th basis line.
pub fn isometry_of(geom: &Geometry, p: &[u8]) -> Vec<Vec<i64>> {
    (0..RANK).map(|i| geom.lines[p[i] as usize].class.to_vec()).collect()
}

/// The finite group as line permutations. Elements are stored by the
/// images of the 22 basis lines, which determine the isometry.
#[derive(Clone, Debug)]
pub struct Group {
    pub generators: Vec<Perm>,
    /// Isometries of the generators.
    pub generator_matrices: Vec<Vec<Vec<i64>>>,
    elements: Vec<[u8; RANK]>,
    index: HashMap<[u8; RANK], u32>,
}

fn prefix(p: &[u8]) -> [u8; RANK] {
    let mut k = [0u8; RANK];
    k.copy_from_slice(&p[..RANK]);
    k
}

impl Group {
    /// Closes the generators under composition. Fails if two elements
    /// agree on the basis lines but not on all lines (the action on the
    /// lattice would not be faithful) or the order exceeds `limit`.
    pub fn close(geom: &Geometry, generators: Vec<Perm>, limit: usize) -> Result<Group, FermatError> {
        for g in &generators {
            if g.len() != NUM_LINES || !preserves_pairing(geom, g) {
                return Err(FermatError::Check("generator does not preserve intersections".into()));
            }
        }
        let id: Perm = (0..NUM_LINES as u8).collect();
        let mut full: Vec<u8> = id.clone();
        let mut index: HashMap<[u8; RANK], u32> = HashMap::new();
        index.insert(prefix(&id), 0);
        let mut head = 0usize;
        let mut buf = vec![0u8; NUM_LINES];
        while head * NUM_LINES < full.len() {
            for s in &generators {
                {
                    let g = &full[head * NUM_LINES..(head + 1) * NUM_LINES];
                    for j in 0..NUM_LINES {
                        buf[j] = s[g[j] as usize];
                    }
                }
                let key = prefix(&buf);
                match index.get(&key) {
                    Some(&k) => {
                        let k = k as usize;
                        if full[k * NUM_LINES..(k + 1) * NUM_LINES] != buf[..] {
                            return Err(FermatError::Check("action on classes is not faithful".into()));
                        }
                    }
                    None => {
                        let n = index.len();
                        if n >= limit {
                            return Err(FermatError::Check(format!("group order exceeds {limit}")));
                        }
                        index.insert(key, n as u32);
                        full.extend_from_slice(&buf);
                    }
                }
            }
            head += 1;
        }
        let elements = full.chunks(NUM_LINES).map(prefix).collect();
        let generator_matrices = generators.iter().map(|g| isometry_of(geom, g)).collect();
        Ok(Group { generators, generator_matrices, elements, index })
    }

    pub fn build(geom: &Geometry) -> Result<Group, FermatError> {
        let g = Group::close(geom, default_generators(geom)?, GROUP_ORDER)?;
        if g.order() != GROUP_ORDER {
            return Err(FermatError::Check(format!("group order {} != {GROUP_ORDER}", g.order())));
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Images of the basis lines under element `k`.
    pub fn element(&self, k: usize) -> &[u8; RANK] {
        &self.elements[k]
    }

    pub fn position(&self, basis_images: &[u8; RANK]) -> Option<usize> {
        self.index.get(basis_images).map(|&k| k as usize)
    }

    /// `v ↦ vT` for element `k`.
    pub fn act(&self, geom: &Geometry, k: usize, v: &[i64]) -> NsVector {
        let mut out = [0i64; RANK];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                let row = &geom.lines[self.elements[k][i] as usize].class;
                for m in 0..RANK {
                    out[m] += c * row[m];
                }
            }
        }
        out
    }

    /// `v ↦ vT` for generator `s`.
    pub fn act_generator(&self, s: usize, v: &[i64]) -> NsVector {
        apply(&self.generator_matrices[s], v)
    }

    /// Full line permutation of element `k`.
    pub fn full_perm(&self, geom: &Geometry, k: usize) -> Result<Perm, FermatError> {
        geom.lines
            .iter()
            .map(|l| {
                let c = self.act(geom, k, &l.class);
                geom.index_of_class(&c).map(|j| j as u8).ok_or_else(|| FermatError::Check("image is not a line".into()))
            })
            .collect()
    }

    pub fn contains_matrix(&self, geom: &Geometry, t: &[Vec<i64>]) -> bool {
        let mut key = [0u8; RANK];
        for i in 0..RANK {
            let mut row = [0i64; RANK];
            row.copy_from_slice(&t[i][..RANK]);
            match geom.index_of_class(&row) {
                Some(j) => key[i] = j as u8,
                None => return false,
            }
        }
        self.index.contains_key(&key)
    }

    /// The isometry condition `T·M·Tᵗ = M` for every element, read off the
    /// pairing table.
    pub fn all_isometries(&self, geom: &Geometry) -> bool {
        self.elements.iter().all(|e| {
            (0..RANK).all(|i| (i..RANK).all(|j| geom.pairing[e[i] as usize][e[j] as usize] as i64 == geom.gram[i][j]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::geometry::tests::geometry;

    #[test]
    fn generators_are_unitary() {
        assert_eq!(unitary_factor(&[[Gf25::new(2, 0), Gf25::ONE, Gf25::ONE]; 3]), None);
        let g = geometry();
        let gens = default_generators(g).unwrap();
        assert_eq!(gens.len(), 5);
        for p in &gens {
            assert!(preserves_pairing(g, p));
        }
    }

    #[test]
    fn deck_swaps_the_first_two_lines() {
        let g = geometry();
        let d = deck_perm(g);
        assert_eq!((d[0], d[1]), (1, 0));
        let t = isometry_of(g, &d);
        let h = g.h_fermat();
        for l in &g.lines {
            let img = apply(&t, &l.class);
            let expect: Vec<i64> = (0..RANK).map(|k| g.pair(&l.class, &h) * h[k] - l.class[k]).collect();
            assert_eq!(img.to_vec(), expect);
        }
    }

    #[test]
    fn group_has_order_756000() {
        let g = geometry();
        let grp = Group::build(g).unwrap();
        assert_eq!(grp.order(), GROUP_ORDER);
        assert!(grp.all_isometries(g));
        // conjugation by Frobenius normalizes the group
        let c = frobenius_perm(g);
        for s in &grp.generators {
            let conj: Perm = (0..NUM_LINES).map(|i| c[s[c[i] as usize] as usize]).collect();
            assert!(grp.position(&prefix(&conj)).is_some());
        }
    }
}
