//! One line per acceptance criterion; the test fails if any line fails.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use k3_core::fermat::lines::{basis_from_table, parse_point};
use k3_core::fermat::{hermitian_points, split_line, Geometry, Group, Sign, GROUP_ORDER, NUM_LINES};
use k3_core::gf::{normal_form_f, Poly, W};
use k3_core::models::build::{build_model, ModelOptions, ModelRecord};
use k3_core::models::express_divisor;
use k3_core::models::involution::{check_involution, nonprojective_involution};
use k3_core::models::sextic::hermitian_test;
use k3_core::nsengine::{analyze, classify_shell, shell_count, shell_vectors, Action, OrbitRecord};

struct Report {
    lines: Vec<String>,
    failed: usize,
}

impl Report {
    fn run(&mut self, n: u32, name: &str, f: impl FnOnce() -> Result<String, String>) {
        let t = Instant::now();
        let r = f();
        let dt = t.elapsed();
        let line = match r {
            Ok(msg) => format!("PASS {n} {name}: {msg} [{dt:.1?}]"),
            Err(msg) => {
                self.failed += 1;
                format!("FAIL {n} {name}: {msg} [{dt:.1?}]")
            }
        };
        println!("{line}");
        self.lines.push(line);
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(dt: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(dt < limit, format!("{what} took {dt:?}, target {limit:?}"))
}

struct Degree4 {
    orbits: Vec<OrbitRecord>,
    models: Vec<(usize, ModelRecord)>,
}

#[test]
fn acceptance() {
    let mut report = Report { lines: Vec::new(), failed: 0 };
    let mut geom: Option<Geometry> = None;
    let mut group: Option<Group> = None;
    let mut d4: Option<Degree4> = None;

    report.run(1, "geometry", || {
        let t = Instant::now();
        let pts = hermitian_points();
        ensure(pts.len() == 126, format!("{} rational points on the branch curve", pts.len()))?;
        let g = Geometry::build().map_err(|e| e.to_string())?;
        ensure(g.lines.len() == NUM_LINES, format!("{} lines", g.lines.len()))?;
        for (_, l) in basis_from_table().map_err(|e| e.to_string())? {
            let (a, b) = split_line(&l.point).map_err(|e| e.to_string())?;
            ensure(l == a || l == b, format!("table line over {:?} not re-derived", l.point))?;
        }
        ensure(g.det() == -25, format!("det = {}", g.det()))?;
        let p = parse_point("1:4+4√2:0").map_err(|e| e.to_string())?;
        let l = g.lines.iter().find(|l| l.line.point == p && l.sign == Sign::Minus).ok_or("example line missing")?;
        let want = [-4, -6, 3, 1, 1, 2, 1, -1, 2, 1, 1, 4, 1, 0, -3, 0, 2, -1, 3, -1, -2, -3];
        ensure(l.class == want, format!("example class {:?}", l.class))?;
        within(t.elapsed(), Duration::from_secs(60), "geometry")?;
        geom = Some(g);
        Ok("126 points, 252 lines, table re-derived, det −25, example class exact".into())
    });

    let g = geom.as_ref().expect("geometry is required for the remaining criteria");

    report.run(2, "group", || {
        let grp = Group::build(g).map_err(|e| e.to_string())?;
        ensure(grp.order() == GROUP_ORDER, format!("order {}", grp.order()))?;
        ensure(grp.all_isometries(g), "an element is not an isometry")?;
        let distinct: HashSet<_> = (0..grp.order()).map(|k| *grp.element(k)).collect();
        ensure(distinct.len() == grp.order(), "two elements act identically")?;
        group = Some(grp);
        Ok("order 756000, isometries, faithful".into())
    });

    let grp = group.as_ref().expect("group is required for the remaining criteria");
    let action = Action::new(g, grp);

    report.run(3, "degree-4 orbits", || {
        let t = Instant::now();
        let n = shell_vectors(g, 4).map_err(|e| e.to_string())?.len();
        ensure(n == 1_020_600, format!("|V4| = {n}"))?;
        let orbits = classify_shell(g, &action, 4).map_err(|e| e.to_string())?;
        ensure(orbits.len() == 8, format!("{} orbits", orbits.len()))?;
        let pols: Vec<&OrbitRecord> = orbits.iter().filter(|o| o.polarization).collect();
        ensure(pols.len() == 7, format!("{} polarizations", pols.len()))?;
        let mut stabs: Vec<u64> = pols.iter().map(|o| o.stabilizer).collect();
        stabs.sort_unstable();
        ensure(stabs == [2, 3, 4, 9, 12, 20, 720], format!("stabilizers {stabs:?}"))?;
        for o in &pols {
            let data = analyze(g, &o.representative).map_err(|e| e.to_string())?;
            ensure(data.spans, format!("Exc ∪ Lin does not span for {:?}", o.representative))?;
        }
        within(t.elapsed(), Duration::from_secs(600), "degree-4 pipeline")?;
        d4 = Some(Degree4 { orbits, models: Vec::new() });
        Ok("|V4| = 1020600, 8 orbits, 7 polarizations, stabilizers {2,3,4,9,12,20,720}, Exc ∪ Lin spans".into())
    });

    report.run(4, "degree-4 models", || {
        let d = d4.as_mut().ok_or("degree-4 orbits unavailable")?;
        let opts = ModelOptions { six_h: true, ..Default::default() };
        for (i, o) in d.orbits.iter().enumerate().filter(|(_, o)| o.polarization) {
            let m = build_model(g, &o.representative, &opts).map_err(|e| e.to_string())?;
            ensure(m.model.dims == [Some(3), Some(11), Some(38)], format!("dims {:?}", m.model.dims))?;
            let xi = &m.model.xi;
            let s_xi = m.model.sextic.to_poly().substitute(&[Poly::var(W), xi[0].clone(), xi[1].clone(), xi[2].clone()]);
            ensure(normal_form_f(&m.model.omega.pow(2)) == normal_form_f(&s_xi), "ω² ≢ s(ξ)")?;
            d.models.push((i, m));
        }
        let mut rts: Vec<String> = d.models.iter().map(|(_, m)| m.rt.to_string()).collect();
        rts.sort();
        let mut want = vec!["0", "6A1", "6A1", "7A1", "8A1", "9A1", "10A1"];
        want.sort();
        ensure(rts == want, format!("types {rts:?}"))?;
        let classes: BTreeMap<_, u64> = d.models.iter().map(|(_, m)| (m.canonical, m.aut)).collect();
        ensure(classes.len() == 6, format!("{} canonical sextics", classes.len()))?;
        let mut auts: Vec<u64> = classes.values().copied().collect();
        auts.sort_unstable();
        ensure(auts == [6, 8, 9, 12, 20, 378_000], format!("|aut| {auts:?}"))?;
        let smooth = d.models.iter().find(|(_, m)| m.rt.is_empty()).ok_or("no smooth model")?;
        ensure(hermitian_test(&smooth.1.model.sextic).is_some(), "smooth branch sextic is not Hermitian")?;
        Ok("dims (3, 11, 38), ω² ≡ s(ξ), RT {0, 6A1², 7A1, 8A1, 9A1, 10A1}, 6 classes, |aut| {378000, 12, 6, 8, 9, 20}, Hermitian".into())
    });

    report.run(5, "involution", || {
        let d = d4.as_ref().ok_or("degree-4 orbits unavailable")?;
        let h = d.orbits.iter().find(|o| o.polarization && o.rt.as_ref().is_some_and(|t| t.is_empty())).ok_or("no smooth orbit")?;
        let inv = nonprojective_involution(g, grp, &h.representative).map_err(|e| e.to_string())?;
        check_involution(g, grp, &inv.matrix).map_err(|e| e.to_string())?;
        Ok("G² = I, isometry, ⟨h_F·G, h_F⟩ = 4, G outside the 756000-element group".into())
    });

    report.run(6, "degree-5 (count-only part)", || {
        let n = shell_count(g, 5).map_err(|e| e.to_string())?;
        ensure(n == 208_059_000, format!("|V5| = {n}"))?;
        Ok("|V5| = 208059000; full orbit/class run is a long CLI job, not part of this target".into())
    });

    report.run(7, "property suites", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..200 {
            let (q, l, c) = common::random_triple(&mut rng);
            common::enumeration_matches_box(&q, &l, c)?;
        }
        for _ in 0..50 {
            let gens = common::random_ideal(&mut rng);
            common::groebner_is_unique(&gens, &mut rng)?;
        }
        for _ in 0..100 {
            common::line_pair_is_symmetric(g, rng.gen_range(0..NUM_LINES), rng.gen_range(0..NUM_LINES))?;
        }
        let d = d4.as_ref().ok_or("degree-4 orbits unavailable")?;
        for o in &d.orbits {
            ensure(o.size * o.stabilizer == GROUP_ORDER as u64, format!("orbit identity fails for {:?}", o.representative))?;
        }
        let mut checked = 0;
        for (i, m) in &d.models {
            let mut members = action.orbit(&d.orbits[*i].representative).map_err(|e| e.to_string())?;
            members.shuffle(&mut rng);
            let mut by_d: Vec<(u32, _)> = members
                .into_iter()
                .map(|v| express_divisor(g, &v).map(|e| (e.d, v)))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            by_d.sort_by_key(|(d, _)| *d);
            for (_, v) in by_d.into_iter().take(20) {
                let other = build_model(g, &v, &ModelOptions::default()).map_err(|e| e.to_string())?;
                ensure(other.canonical == m.canonical, format!("canonical sextic differs within orbit {i}"))?;
                checked += 1;
            }
        }
        Ok(format!(
            "200 triples vs box scan, 50 Gröbner shuffles, 100 line pairs, orbit identity, canonical equality on {checked} orbit members"
        ))
    });

    println!("{} of {} criteria pass", report.lines.len() - report.failed, report.lines.len());
    assert_eq!(report.failed, 0, "{}", report.lines.join("\n"));
}
