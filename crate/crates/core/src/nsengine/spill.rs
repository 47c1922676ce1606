//! Orbit decomposition of a shell too large for memory. Vectors are
//! streamed into bucket files keyed by a group-invariant hash, so each orbit
//! lies in a single bucket; buckets are then decomposed one at a time and the
//! results checkpointed, so an interrupted run resumes where it stopped.

use std::collections::HashSet;
use std::fs::{self, File, OpenOptions};
use std::hash::Hasher;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use fnv::FnvHasher;

use crate::fermat::geometry::apply;
use crate::fermat::{Geometry, NsVector, GROUP_ORDER, RANK};

use super::order::total_cmp;
use super::orbits::{Action, RawOrbit};
use super::shell::shell;
use super::NsError;

const DONE_FILE: &str = "spill.done";
const CHECKPOINT_FILE: &str = "orbits.partial";

#[derive(Clone, Debug)]
pub struct SpillConfig {
    pub dir: PathBuf,
    pub buckets: usize,
}

/// Hashes the distribution of intersection numbers with the lines, which
/// the group permutes.
pub struct BucketHash {
    /// Row `i` is `class(ℓ_i)·M`.
    dual: Vec<NsVector>,
}

const HIST: usize = 257;

impl BucketHash {
    pub fn new(geom: &Geometry) -> BucketHash {
        let dual = geom
            .lines
            .iter()
            .map(|l| {
                let mut r = [0i64; RANK];
                for (k, slot) in r.iter_mut().enumerate() {
                    *slot = (0..RANK).map(|i| l.class[i] * geom.gram[i][k]).sum();
                }
                r
            })
            .collect();
        BucketHash { dual }
    }

    pub fn hash(&self, v: &[i64]) -> u64 {
        let mut hist = [0u16; HIST];
        for d in &self.dual {
            let p: i64 = d.iter().zip(v).map(|(a, b)| a * b).sum();
            let i = (p + (HIST as i64 / 2)).clamp(0, HIST as i64 - 1);
            hist[i as usize] += 1;
        }
        let mut h = FnvHasher::default();
        for (i, c) in hist.iter().enumerate() {
            if *c > 0 {
                h.write_u16(i as u16);
                h.write_u16(*c);
            }
        }
        h.finish()
    }
}

fn bucket_path(dir: &Path, b: usize) -> PathBuf {
    dir.join(format!("bucket-{b:04}.bin"))
}

fn pack(v: &[i64]) -> Result<[u8; RANK], NsError> {
    let mut out = [0u8; RANK];
    for (o, &x) in out.iter_mut().zip(v) {
        *o = i8::try_from(x).map_err(|_| NsError::Check(format!("coordinate {x} does not fit in a byte")))? as u8;
    }
    Ok(out)
}

fn unpack(b: &[u8]) -> NsVector {
    let mut v = [0i64; RANK];
    for (o, &x) in v.iter_mut().zip(b) {
        *o = x as i8 as i64;
    }
    v
}

/// Streams `V_δ` into the bucket files and returns `|V_δ|`. A completed
/// spill is detected by its marker file and not repeated.
pub fn spill_shell(geom: &Geometry, delta: i64, cfg: &SpillConfig) -> Result<u64, NsError> {
    let done = cfg.dir.join(DONE_FILE);
    if let Ok(s) = fs::read_to_string(&done) {
        if let Some(n) = s.trim().strip_prefix(&format!("{delta} {} ", cfg.buckets)) {
            return n.parse().map_err(|_| NsError::Check("bad spill marker".into()));
        }
    }
    fs::create_dir_all(&cfg.dir)?;
    let _ = fs::remove_file(cfg.dir.join(CHECKPOINT_FILE));
    let mut writers = (0..cfg.buckets)
        .map(|b| File::create(bucket_path(&cfg.dir, b)).map(BufWriter::new))
        .collect::<Result<Vec<_>, _>>()?;
    let hasher = BucketHash::new(geom);
    let mut n = 0u64;
    let mut err: Option<NsError> = None;
    shell(geom, delta, 2)?.for_each(|x| {
        if err.is_some() {
            return;
        }
        let b = (hasher.hash(x) % cfg.buckets as u64) as usize;
        match pack(x) {
            Ok(p) => {
                if let Err(e) = writers[b].write_all(&p) {
                    err = Some(e.into());
                }
            }
            Err(e) => err = Some(e),
        }
        n += 1;
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    for w in &mut writers {
        w.flush()?;
    }
    fs::write(&done, format!("{delta} {} {n}\n", cfg.buckets))?;
    Ok(n)
}

fn read_bucket(dir: &Path, b: usize) -> Result<Vec<[u8; RANK]>, NsError> {
    let mut bytes = Vec::new();
    File::open(bucket_path(dir, b))?.read_to_end(&mut bytes)?;
    if bytes.len() % RANK != 0 {
        return Err(NsError::Check(format!("bucket {b} is truncated")));
    }
    Ok(bytes.chunks_exact(RANK).map(|c| c.try_into().unwrap()).collect())
}

/// Orbit decomposition of packed vectors: a sorted array and a visited
/// bitset, about 22 bytes per vector instead of a hash map of wide keys.
pub fn decompose_packed(action: &Action, mut packed: Vec<[u8; RANK]>) -> Result<Vec<RawOrbit>, NsError> {
    packed.sort_unstable();
    let n = packed.len();
    packed.dedup();
    if packed.len() != n {
        return Err(NsError::Check("bucket contains repeated vectors".into()));
    }
    let mut seen = vec![0u64; n.div_ceil(64)];
    let mut mark = |i: usize| -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = seen[w] & b == 0;
        seen[w] |= b;
        fresh
    };
    let mut out = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    for start in 0..n {
        if !mark(start) {
            continue;
        }
        frontier.clear();
        frontier.push(start);
        let first = unpack(&packed[start]);
        let mut rep = first;
        let mut conj = apply(&action.frobenius, &first);
        let mut i = 0;
        while i < frontier.len() {
            let x = unpack(&packed[frontier[i]]);
            if total_cmp(&x, &rep).is_lt() {
                rep = x;
            }
            let c = apply(&action.frobenius, &x);
            if total_cmp(&c, &conj).is_lt() {
                conj = c;
            }
            for g in &action.generators {
                let y = pack(&apply(g, &x))?;
                let j = packed.binary_search(&y).map_err(|_| NsError::Check("orbit leaves the input set".into()))?;
                if mark(j) {
                    frontier.push(j);
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

fn ints(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_vec(s: &str) -> Option<NsVector> {
    let v: Vec<i64> = s.split_whitespace().map(|t| t.parse().ok()).collect::<Option<_>>()?;
    v.try_into().ok()
}

/// Reads the checkpoint: completed buckets and their orbits. A trailing
/// incomplete bucket (no `done` line) is discarded.
fn read_checkpoint(path: &Path) -> Result<(HashSet<usize>, Vec<RawOrbit>), NsError> {
    let mut done = HashSet::new();
    let mut orbits = Vec::new();
    let Ok(f) = File::open(path) else {
        return Ok((done, orbits));
    };
    let mut pending = Vec::new();
    for l in BufReader::new(f).lines() {
        let l = l?;
        let f: Vec<&str> = l.split('\t').collect();
        match f.as_slice() {
            ["orbit", rep, size, conj] => {
                let bad = || NsError::Check(format!("bad checkpoint record {l:?}"));
                pending.push(RawOrbit {
                    representative: parse_vec(rep).ok_or_else(bad)?,
                    size: size.parse().map_err(|_| bad())?,
                    conjugate_min: parse_vec(conj).ok_or_else(bad)?,
                });
            }
            ["done", b] => {
                done.insert(b.parse().map_err(|_| NsError::Check(format!("bad checkpoint record {l:?}")))?);
                orbits.append(&mut pending);
            }
            _ => break,
        }
    }
    Ok((done, orbits))
}

/// Decomposes the spilled shell bucket by bucket. `progress` receives the
/// number of finished buckets after each one.
pub fn decompose_spilled(action: &Action, cfg: &SpillConfig, mut progress: impl FnMut(usize, usize)) -> Result<Vec<RawOrbit>, NsError> {
    let ckpt = cfg.dir.join(CHECKPOINT_FILE);
    let (done, mut orbits) = read_checkpoint(&ckpt)?;
    // rewrite without any partial tail
    {
        let mut w = BufWriter::new(File::create(&ckpt)?);
        let mut by_bucket = done.iter().copied().collect::<Vec<_>>();
        by_bucket.sort_unstable();
        for o in &orbits {
            writeln!(w, "orbit\t{}\t{}\t{}", ints(&o.representative), o.size, ints(&o.conjugate_min))?;
        }
        for b in by_bucket {
            writeln!(w, "done\t{b}")?;
        }
        w.flush()?;
    }
    let mut w = OpenOptions::new().append(true).open(&ckpt)?;
    for b in 0..cfg.buckets {
        if done.contains(&b) {
            continue;
        }
        let raw = decompose_packed(action, read_bucket(&cfg.dir, b)?)?;
        let mut text = String::new();
        for o in &raw {
            text += &format!("orbit\t{}\t{}\t{}\n", ints(&o.representative), o.size, ints(&o.conjugate_min));
        }
        text += &format!("done\t{b}\n");
        w.write_all(text.as_bytes())?;
        w.sync_data()?;
        orbits.extend(raw);
        progress(b + 1, cfg.buckets);
    }
    orbits.sort_by(|a, b| total_cmp(&a.representative, &b.representative));
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::geometry::tests::geometry;
    use crate::fermat::Group;
    use crate::nsengine::orbits::orbit_decompose;
    use crate::nsengine::pipeline::shell_vectors;

    #[test]
    fn bucket_hash_is_invariant() {
        let g = geometry();
        let grp = Group::build(g).unwrap();
        let h = BucketHash::new(g);
        let v = [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1];
        let base = h.hash(&v);
        for k in (0..grp.order()).step_by(9973) {
            assert_eq!(h.hash(&grp.act(g, k, &v)), base);
        }
    }

    #[test]
    fn spilled_decomposition_matches_in_memory() {
        let g = geometry();
        let grp = Group::build(g).unwrap();
        let action = Action::new(g, &grp);
        let dir = tempfile::tempdir().unwrap();
        let cfg = SpillConfig { dir: dir.path().to_path_buf(), buckets: 16 };
        assert_eq!(spill_shell(g, 4, &cfg).unwrap(), 1_020_600);
        // interrupt after a few buckets by truncating the checkpoint
        let full = decompose_spilled(&action, &cfg, |_, _| {}).unwrap();
        let text = fs::read_to_string(dir.path().join(CHECKPOINT_FILE)).unwrap();
        let cut: Vec<&str> = text.lines().collect();
        let keep = cut.iter().position(|l| l.starts_with("done")).unwrap() + 1;
        // plus an orphaned record of the next bucket
        let keep = keep + usize::from(cut[keep].starts_with("orbit"));
        fs::write(dir.path().join(CHECKPOINT_FILE), cut[..keep].join("\n") + "\n").unwrap();
        let mut calls = 0;
        let resumed = decompose_spilled(&action, &cfg, |_, _| calls += 1).unwrap();
        assert_eq!(calls, 15);
        let direct = orbit_decompose(&action, &shell_vectors(g, 4).unwrap()).unwrap();
        for got in [&full, &resumed] {
            assert_eq!(got.len(), 8);
            for (a, b) in got.iter().zip(&direct) {
                assert_eq!((a.representative, a.size, a.conjugate_min), (b.representative, b.size, b.conjugate_min));
            }
        }
        // a second spill is a no-op
        assert_eq!(spill_shell(g, 4, &cfg).unwrap(), 1_020_600);
    }
}
