//! Plain-text caches of the geometry and the group, versioned by a hash of
//! the basis table.

use std::hash::Hasher;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use fnv::FnvHasher;
use tempfile::NamedTempFile;

use crate::gf::{parse_poly, Gf25};

use super::geometry::{Geometry, Line, NUM_LINES};
use super::group::Group;
use super::lines::{parse_point, HLine, Sign, BASIS_TABLE};
use super::{FermatError, NsVector, RANK};

/// FNV-1a hash of the transcribed basis table.
pub fn table_hash() -> u64 {
    let mut h = FnvHasher::default();
    for r in &BASIS_TABLE {
        h.write(r.sign.to_string().as_bytes());
        for s in [r.point, r.gens[0], r.gens[1]] {
            h.write(s.as_bytes());
            h.write_u8(0);
        }
    }
    h.finish()
}

/// First line of every cache file of the given kind.
pub fn header(kind: &str) -> String {
    format!("# {kind} v1 table={:016x}", table_hash())
}

/// Fails unless `line` is the current header for `kind`.
pub fn check_header(line: Option<&str>, kind: &str) -> Result<(), FermatError> {
    match line {
        Some(l) if l == header(kind) => Ok(()),
        Some(l) => Err(FermatError::Check(format!("stale or foreign cache header {l:?}"))),
        None => Err(FermatError::Check("empty cache file".into())),
    }
}

fn point_str(p: &[Gf25; 3]) -> String {
    format!("{}:{}:{}", p[0], p[1], p[2])
}

fn ints(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_ints(s: &str) -> Result<Vec<i64>, FermatError> {
    s.split_whitespace().map(|t| t.parse().map_err(|_| FermatError::Check(format!("bad integer {t:?}")))).collect()
}

pub fn write_lines<W: Write>(w: &mut W, geom: &Geometry) -> std::io::Result<()> {
    writeln!(w, "{}", header("lines"))?;
    for l in &geom.lines {
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}",
            l.index,
            point_str(&l.line.point),
            l.sign,
            point_str(&l.line.linear),
            l.line.cubic,
            ints(&l.class)
        )?;
    }
    Ok(())
}

pub fn read_lines<R: BufRead>(r: R) -> Result<Vec<Line>, FermatError> {
    let mut it = r.lines();
    let first = it.next().transpose()?;
    check_header(first.as_deref(), "lines")?;
    let mut lines = Vec::new();
    for l in it {
        let l = l?;
        let bad = || FermatError::Check(format!("bad line record {l:?}"));
        let f: Vec<&str> = l.split('\t').collect();
        if f.len() != 6 {
            return Err(bad());
        }
        let sign = match f[2] {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => return Err(bad()),
        };
        let cubic = parse_poly(f[4]).map_err(|_| bad())?;
        let class_v = parse_ints(f[5])?;
        if class_v.len() != RANK {
            return Err(bad());
        }
        let mut class: NsVector = [0; RANK];
        class.copy_from_slice(&class_v);
        lines.push(Line {
            index: f[0].parse().map_err(|_| bad())?,
            sign,
            line: HLine { point: parse_point(f[1])?, linear: parse_point(f[3])?, cubic },
            class,
        });
    }
    if lines.len() != NUM_LINES || lines.iter().enumerate().any(|(i, l)| l.index != i) {
        return Err(FermatError::Check("line records missing or out of order".into()));
    }
    Ok(lines)
}

/// A 22×22 integer matrix under a header of the given kind.
pub fn write_matrix<W: Write>(w: &mut W, kind: &str, m: &[Vec<i64>]) -> std::io::Result<()> {
    writeln!(w, "{}", header(kind))?;
    for r in m {
        writeln!(w, "{}", ints(r))?;
    }
    Ok(())
}

pub fn read_matrix<R: BufRead>(r: R, kind: &str) -> Result<Vec<Vec<i64>>, FermatError> {
    let mut it = r.lines();
    let first = it.next().transpose()?;
    check_header(first.as_deref(), kind)?;
    let mut m = Vec::new();
    for l in it {
        let row = parse_ints(&l?)?;
        if row.len() != RANK {
            return Err(FermatError::Check(format!("{kind}: row of length {}", row.len())));
        }
        m.push(row);
    }
    if m.len() != RANK {
        return Err(FermatError::Check(format!("{kind}: {} rows", m.len())));
    }
    Ok(m)
}

/// Writes the generators; the group is re-closed on reading.
pub fn write_group<W: Write>(w: &mut W, group: &Group) -> std::io::Result<()> {
    writeln!(w, "{}", header("group"))?;
    writeln!(w, "order\t{}", group.order())?;
    for g in &group.generators {
        writeln!(w, "generator\t{}", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))?;
    }
    Ok(())
}

pub fn read_group<R: BufRead>(r: R, geom: &Geometry) -> Result<Group, FermatError> {
    let mut lines_in = r.lines();
    let first = lines_in.next().transpose()?;
    check_header(first.as_deref(), "group")?;
    let mut order = None;
    let mut gens = Vec::new();
    for l in lines_in {
        let l = l?;
        let bad = || FermatError::Check(format!("bad group record {l:?}"));
        let (k, v) = l.split_once('\t').ok_or_else(bad)?;
        match k {
            "order" => order = Some(v.parse::<usize>().map_err(|_| bad())?),
            "generator" => {
                let p: Vec<u8> = v.split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
                if p.len() != NUM_LINES {
                    return Err(bad());
                }
                gens.push(p);
            }
            _ => return Err(bad()),
        }
    }
    let order = order.ok_or_else(|| FermatError::Check("group cache without order".into()))?;
    let g = Group::close(geom, gens, order)?;
    if g.order() != order {
        return Err(FermatError::Check(format!("cached group closes to order {} instead of {order}", g.order())));
    }
    Ok(g)
}

pub const LINES_FILE: &str = "lines.txt";
pub const GRAM_FILE: &str = "gram.txt";
pub const FROBENIUS_FILE: &str = "frobenius.txt";
pub const GROUP_FILE: &str = "group.txt";

/// Writes `path` through a temporary file in the same directory, then
/// renames it into place.
pub fn write_atomic<F>(path: &Path, body: F) -> std::io::Result<()>
where
    F: FnOnce(&mut BufWriter<&mut NamedTempFile>) -> std::io::Result<()>,
{
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = NamedTempFile::new_in(dir)?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(fs::Permissions::from_mode(0o644))?;
    }
    {
        let mut w = BufWriter::new(&mut tmp);
        body(&mut w)?;
        w.flush()?;
    }
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn open(path: &Path) -> Result<BufReader<File>, FermatError> {
    Ok(BufReader::new(File::open(path)?))
}

pub fn save_geometry(dir: &Path, geom: &Geometry) -> std::io::Result<()> {
    write_atomic(&dir.join(LINES_FILE), |w| write_lines(w, geom))?;
    write_atomic(&dir.join(GRAM_FILE), |w| write_matrix(w, "gram", &geom.gram))?;
    write_atomic(&dir.join(FROBENIUS_FILE), |w| write_matrix(w, "frobenius", &geom.frobenius))
}

/// Reads the three geometry files; any missing, stale or inconsistent file
/// is an error.
pub fn load_geometry(dir: &Path) -> Result<Geometry, FermatError> {
    let lines = read_lines(open(&dir.join(LINES_FILE))?)?;
    let gram = read_matrix(open(&dir.join(GRAM_FILE))?, "gram")?;
    let frob = read_matrix(open(&dir.join(FROBENIUS_FILE))?, "frobenius")?;
    let g = Geometry::from_parts(lines, gram, frob)?;
    if g.det() != -25 {
        return Err(FermatError::Check("cached Gram matrix has the wrong determinant".into()));
    }
    Ok(g)
}

pub fn save_group(dir: &Path, group: &Group) -> std::io::Result<()> {
    write_atomic(&dir.join(GROUP_FILE), |w| write_group(w, group))
}

pub fn load_group(dir: &Path, geom: &Geometry) -> Result<Group, FermatError> {
    read_group(open(&dir.join(GROUP_FILE))?, geom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::geometry::tests::geometry;
    use crate::fermat::GROUP_ORDER;

    #[test]
    fn geometry_round_trip() {
        let g = geometry();
        let dir = tempfile::tempdir().unwrap();
        save_geometry(dir.path(), g).unwrap();
        let back = load_geometry(dir.path()).unwrap();
        assert_eq!(back.lines, g.lines);
        assert_eq!(back.gram, g.gram);
        assert_eq!(back.frobenius, g.frobenius);
        assert_eq!(back.pairing, g.pairing);
        let before = std::fs::read(dir.path().join(LINES_FILE)).unwrap();
        save_geometry(dir.path(), &back).unwrap();
        assert_eq!(std::fs::read(dir.path().join(LINES_FILE)).unwrap(), before);
    }

    #[test]
    fn stale_header_is_rejected() {
        let text = "# lines v1 table=0000000000000000\n";
        assert!(read_lines(text.as_bytes()).is_err());
        assert!(read_matrix("# gram v1 table=0\n".as_bytes(), "gram").is_err());
    }

    #[test]
    fn group_round_trip() {
        let g = geometry();
        let grp = Group::build(g).unwrap();
        let dir = tempfile::tempdir().unwrap();
        save_group(dir.path(), &grp).unwrap();
        let back = load_group(dir.path(), g).unwrap();
        assert_eq!(back.order(), GROUP_ORDER);
        assert_eq!(back.generators, grp.generators);
        assert_eq!(back.element(12345), grp.element(12345));
    }
}
