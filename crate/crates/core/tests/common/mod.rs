//! Checks shared by the property suites and the acceptance report.
#![allow(dead_code)]

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use k3_core::fermat::{intersection_direct, intersection_number, Geometry};
use k3_core::gf::{buchberger, Gf25, Mono, Poly};
use k3_core::quadlat::engine::{IntEnumerator, Mode};
use k3_core::quadlat::QuadTriple;

/// `(Q, L, c)` with `Q = AᵗA + I`, so `xQxᵗ ≥ |x|²`.
pub fn random_triple(rng: &mut impl Rng) -> (Vec<Vec<i64>>, Vec<i64>, i64) {
    let n = rng.gen_range(1..=4);
    let a: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    let q = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[k][i] * a[k][j]).sum::<i64>() + i64::from(i == j)).collect())
        .collect();
    let l = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    (q, l, rng.gen_range(-20..=0))
}

fn eval(q: &[Vec<i64>], l: &[i64], c: i64, x: &[i64]) -> i64 {
    let n = x.len();
    let mut s = c;
    for i in 0..n {
        s += 2 * x[i] * l[i];
        for j in 0..n {
            s += x[i] * q[i][j] * x[j];
        }
    }
    s
}

/// All points of the box `[-r, r]ⁿ` in lexicographic order.
fn box_points(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p: Vec<i64>| (-r..=r).map(move |t| [p.clone(), vec![t]].concat())).collect();
    }
    out
}

/// The enumerators agree with a scan of a box that provably contains the
/// sublevel set: `|x|² − 2|x||L| + c ≤ q(x) ≤ 0` bounds `|x|`.
pub fn enumeration_matches_box(q: &[Vec<i64>], l: &[i64], c: i64) -> Result<(), String> {
    let n = q.len();
    let ln = (l.iter().map(|x| x * x).sum::<i64>() as f64).sqrt();
    let r = (ln + (ln * ln - c as f64).sqrt()).ceil() as i64 + 1;
    let mut sub: Vec<Vec<i64>> = box_points(n, r).into_iter().filter(|x| eval(q, l, c, x) <= 0).collect();
    let mut level: Vec<Vec<i64>> = sub.iter().filter(|x| eval(q, l, c, x) == 0).cloned().collect();
    sub.sort();
    level.sort();
    let e = IntEnumerator::from_ints(q, l, c).map_err(|e| e.to_string())?;
    let mut got = Vec::new();
    e.for_each(Mode::Sublevel, |x| got.push(x.to_vec())).map_err(|e| e.to_string())?;
    got.sort();
    if got != sub {
        return Err(format!("sublevel set differs for {q:?} {l:?} {c}: {} vs {}", got.len(), sub.len()));
    }
    let mut got = Vec::new();
    e.for_each(Mode::Level, |x| got.push(x.to_vec())).map_err(|e| e.to_string())?;
    got.sort();
    if got != level {
        return Err(format!("level set differs for {q:?} {l:?} {c}"));
    }
    let qt = QuadTriple::<BigRational>::from_ints(q, l, c).map_err(|e| e.to_string())?;
    let mut got = qt.collect_nonpositive().map_err(|e| e.to_string())?;
    got.sort();
    if got != sub {
        return Err(format!("rational enumeration differs for {q:?} {l:?} {c}"));
    }
    Ok(())
}

fn random_gf(rng: &mut impl Rng) -> Gf25 {
    Gf25::new(rng.gen_range(0..5), rng.gen_range(0..5))
}

fn random_poly(rng: &mut impl Rng, nvars: usize, max_deg: u8) -> Poly<Gf25> {
    let terms = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut e = [0u8; 4];
            let mut budget = rng.gen_range(0..=max_deg);
            for slot in e.iter_mut().take(nvars) {
                let k = rng.gen_range(0..=budget);
                *slot = k;
                budget -= k;
            }
            (Mono::wxyz(e[0], e[1], e[2], e[3]), random_gf(rng))
        })
        .collect::<Vec<_>>();
    Poly::from_terms(terms)
}

/// Two or three random generators of low degree in three variables.
pub fn random_ideal(rng: &mut impl Rng) -> Vec<Poly<Gf25>> {
    loop {
        let gens: Vec<Poly<Gf25>> = (0..rng.gen_range(2..=3)).map(|_| random_poly(rng, 3, 3)).collect();
        if gens.iter().all(|g| !g.is_zero()) {
            return gens;
        }
    }
}

/// The reduced Gröbner basis is unchanged by shuffling the generators and
/// by adding multiples of one generator to another.
pub fn groebner_is_unique(gens: &[Poly<Gf25>], rng: &mut impl Rng) -> Result<(), String> {
    let base = buchberger(gens);
    for _ in 0..3 {
        let mut g = gens.to_vec();
        g.shuffle(rng);
        let k = rng.gen_range(1..g.len());
        let m = random_poly(rng, 3, 1);
        g[0] = g[0].add(&g[k].mul(&m));
        if g[0].is_zero() {
            g[0] = gens[0].clone();
            g.push(gens[0].clone());
        }
        let other = buchberger(&g);
        if other.basis() != base.basis() {
            return Err(format!("bases differ for {gens:?}"));
        }
    }
    for f in gens {
        if !base.contains(f) {
            return Err(format!("{f} not in its own ideal"));
        }
    }
    Ok(())
}

/// `⟨ℓ_i, ℓ_j⟩ = ⟨ℓ_j, ℓ_i⟩`, by quotient dimension, agreeing with the
/// pairing of the classes.
pub fn line_pair_is_symmetric(geom: &Geometry, i: usize, j: usize) -> Result<(), String> {
    let (a, b) = (&geom.lines[i].line, &geom.lines[j].line);
    let (ab, ba) = if i == j {
        (intersection_direct(a, b), intersection_direct(b, a))
    } else {
        (intersection_number(a, b).map_err(|e| e.to_string())?, intersection_number(b, a).map_err(|e| e.to_string())?)
    };
    let classes = geom.pair(&geom.lines[i].class, &geom.lines[j].class);
    if ab != ba || ab != classes {
        return Err(format!("lines {i}, {j}: {ab} / {ba} / {classes}"));
    }
    Ok(())
}
