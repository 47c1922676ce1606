//! Text files for model records and the involution.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::fermat::io::{check_header, header};
use crate::fermat::lines::parse_point;
use crate::fermat::{NsVector, RANK};
use crate::gf::{parse_poly, Gf25, Poly};
use crate::nsengine::AdeType;

use super::build::{DoublePlane, ModelRecord};
use super::divisor::DivisorExpression;
use super::involution::{Involution, SurfaceMap};
use super::sextic::{SexticForm, SingularPoint};
use super::ModelError;

fn ints<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_ints(s: &str) -> Result<Vec<i64>, ModelError> {
    s.split_whitespace().map(|t| t.parse().map_err(|_| ModelError::Check(format!("bad integer {t:?}")))).collect()
}

fn parse_vector(s: &str) -> Result<NsVector, ModelError> {
    let v = parse_ints(s)?;
    if v.len() != RANK {
        return Err(ModelError::Check(format!("expected {RANK} integers, got {}", v.len())));
    }
    let mut out = [0; RANK];
    out.copy_from_slice(&v);
    Ok(out)
}

fn parse_gf(s: &str) -> Result<Gf25, ModelError> {
    let p = parse_poly(s).map_err(|e| ModelError::Check(format!("bad coefficient {s:?}: {e}")))?;
    match p.terms() {
        [] => Ok(Gf25::ZERO),
        [(m, c)] if m.degree() == 0 => Ok(*c),
        _ => Err(ModelError::Check(format!("bad coefficient {s:?}"))),
    }
}

fn poly(s: &str) -> Result<Poly<Gf25>, ModelError> {
    parse_poly(s).map_err(|e| ModelError::Check(format!("bad polynomial: {e}")))
}

/// Tab-separated `key value` records after the header.
fn fields<R: BufRead>(r: R, kind: &str) -> Result<Vec<(String, String)>, ModelError> {
    let mut it = r.lines();
    let first = it.next().transpose()?;
    check_header(first.as_deref(), kind)?;
    let mut out = Vec::new();
    for l in it {
        let l = l?;
        let (k, v) = l.split_once('\t').ok_or_else(|| ModelError::Check(format!("bad record {l:?}")))?;
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

fn lookup<'a>(map: &'a HashMap<String, String>, k: &str) -> Result<&'a str, ModelError> {
    map.get(k).map(|s| s.as_str()).ok_or_else(|| ModelError::Check(format!("missing field {k}")))
}

/// The 28 coefficients in monomial order, space separated.
pub fn coefficient_line(s: &SexticForm) -> String {
    ints(&s.0)
}

pub fn parse_coefficient_line(line: &str) -> Result<SexticForm, ModelError> {
    let cs: Vec<Gf25> = line.split_whitespace().map(parse_gf).collect::<Result<_, _>>()?;
    let arr: [Gf25; 28] = cs.try_into().map_err(|_| ModelError::Check("expected 28 coefficients".into()))?;
    Ok(SexticForm(arr))
}

fn point_str(p: &[Gf25; 3]) -> String {
    format!("{}:{}:{}", p[0], p[1], p[2])
}

pub fn write_model<W: Write>(w: &mut W, rec: &ModelRecord) -> std::io::Result<()> {
    let m = &rec.model;
    writeln!(w, "{}", header("model"))?;
    writeln!(w, "h\t{}", ints(&rec.h))?;
    writeln!(w, "d\t{}", m.expression.d)?;
    let terms: Vec<String> = m.expression.terms.iter().map(|(i, c)| format!("{i}:{c}")).collect();
    writeln!(w, "terms\t{}", if terms.is_empty() { "-".to_string() } else { terms.join(" ") })?;
    let dims: Vec<String> = m.dims.iter().map(|d| d.map_or("-".to_string(), |x| x.to_string())).collect();
    writeln!(w, "dims\t{}", dims.join(" "))?;
    for (i, x) in m.xi.iter().enumerate() {
        writeln!(w, "xi{i}\t{x}")?;
    }
    writeln!(w, "omega\t{}", m.omega)?;
    writeln!(w, "sextic\t{}", m.sextic.to_poly())?;
    let sing: Vec<String> = rec.singular.iter().map(|s| format!("{}/{}", point_str(&s.point), s.hessian_rank)).collect();
    writeln!(w, "singular\t{}", if sing.is_empty() { "-".to_string() } else { sing.join(" ") })?;
    writeln!(w, "rt\t{}", rec.rt)?;
    writeln!(w, "aut\t{}", rec.aut)?;
    writeln!(w, "canonical\t{}", coefficient_line(&rec.canonical))
}

pub fn read_model<R: BufRead>(r: R) -> Result<ModelRecord, ModelError> {
    let map: HashMap<String, String> = fields(r, "model")?.into_iter().collect();
    let bad = |k: &str| ModelError::Check(format!("bad field {k}"));
    let h = parse_vector(lookup(&map, "h")?)?;
    let d: u32 = lookup(&map, "d")?.parse().map_err(|_| bad("d"))?;
    let terms_s = lookup(&map, "terms")?;
    let mut terms = Vec::new();
    if terms_s != "-" {
        for t in terms_s.split_whitespace() {
            let (i, c) = t.split_once(':').ok_or_else(|| bad("terms"))?;
            terms.push((i.parse().map_err(|_| bad("terms"))?, c.parse().map_err(|_| bad("terms"))?));
        }
    }
    let mut dims = [None; 3];
    for (slot, t) in dims.iter_mut().zip(lookup(&map, "dims")?.split_whitespace()) {
        *slot = if t == "-" { None } else { Some(t.parse().map_err(|_| bad("dims"))?) };
    }
    let xi = [poly(lookup(&map, "xi0")?)?, poly(lookup(&map, "xi1")?)?, poly(lookup(&map, "xi2")?)?];
    let sextic = SexticForm::from_poly(&poly(lookup(&map, "sextic")?)?)?;
    let mut singular = Vec::new();
    let sing_s = lookup(&map, "singular")?;
    if sing_s != "-" {
        for t in sing_s.split_whitespace() {
            let (p, r) = t.split_once('/').ok_or_else(|| bad("singular"))?;
            singular.push(SingularPoint { point: parse_point(p)?, hessian_rank: r.parse().map_err(|_| bad("singular"))? });
        }
    }
    Ok(ModelRecord {
        h,
        model: DoublePlane { expression: DivisorExpression { d, terms }, xi, omega: poly(lookup(&map, "omega")?)?, sextic, dims },
        singular,
        rt: AdeType::parse(lookup(&map, "rt")?)?,
        canonical: parse_coefficient_line(lookup(&map, "canonical")?)?,
        aut: lookup(&map, "aut")?.parse().map_err(|_| bad("aut"))?,
    })
}

pub fn write_involution<W: Write>(w: &mut W, inv: &Involution) -> std::io::Result<()> {
    writeln!(w, "{}", header("involution"))?;
    writeln!(w, "d\t{}", inv.map.d)?;
    writeln!(w, "omega\t{}", inv.map.omega)?;
    for (i, x) in inv.map.xi.iter().enumerate() {
        writeln!(w, "xi{i}\t{x}")?;
    }
    writeln!(w, "tau\t{}", inv.tau)?;
    writeln!(w, "probes\t{}", ints(&inv.probes))?;
    for r in &inv.matrix {
        writeln!(w, "G\t{}", ints(r))?;
    }
    Ok(())
}

/// The map and the matrix `G` of an involution file.
pub fn read_involution<R: BufRead>(r: R) -> Result<(SurfaceMap, Vec<Vec<i64>>), ModelError> {
    let recs = fields(r, "involution")?;
    let mut g = Vec::new();
    let mut map = HashMap::new();
    for (k, v) in recs {
        if k == "G" {
            g.push(parse_vector(&v)?.to_vec());
        } else {
            map.insert(k, v);
        }
    }
    if g.len() != RANK {
        return Err(ModelError::Check(format!("involution matrix has {} rows", g.len())));
    }
    let sm = SurfaceMap {
        d: lookup(&map, "d")?.parse().map_err(|_| ModelError::Check("bad field d".into()))?,
        omega: poly(lookup(&map, "omega")?)?,
        xi: [poly(lookup(&map, "xi0")?)?, poly(lookup(&map, "xi1")?)?, poly(lookup(&map, "xi2")?)?],
    };
    Ok((sm, g))
}
