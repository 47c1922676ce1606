//! Pipeline orchestration behind the `k3models` binary: cached geometry and
//! group, shell enumeration, orbits, models, equivalence classes and the
//! involution.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use thiserror::Error;

use k3_core::fermat::io::{check_header, header, load_geometry, load_group, save_geometry, save_group, write_atomic};
use k3_core::fermat::{FermatError, Geometry, Group, NsVector, GROUP_ORDER, RANK};
use k3_core::models::build::{build_model, ModelOptions, ModelRecord};
use k3_core::models::involution::{check_involution, nonprojective_involution};
use k3_core::models::io::{coefficient_line, parse_coefficient_line, read_involution, read_model, write_involution, write_model};
use k3_core::models::sextic::{canonical_sextic, f5_descent, singular_points, SexticForm};
use k3_core::models::{ModelError, DEFAULT_MAX_D};
use k3_core::nsengine::orbits::{read_orbits, write_orbits};
use k3_core::nsengine::spill::{decompose_spilled, spill_shell, SpillConfig};
use k3_core::nsengine::{classify_shell, finish_orbits, is_polarization, shell_count, Action, AdeType, NsError, OrbitRecord};

/// Reference values the pipeline is checked against.
pub mod expected {
    pub const SHELL_SIZES: [(i64, u64); 2] = [(4, 1_020_600), (5, 208_059_000)];
    pub const ORBITS: [(i64, usize); 2] = [(4, 8), (5, 312)];
    pub const POLARIZATIONS: [(i64, usize); 2] = [(4, 7), (5, 224)];
    /// Classes up to degree 4 and up to degree 5.
    pub const CLASSES: [(i64, usize); 2] = [(4, 6), (5, 65)];
    pub const BALL_5_POLARIZATIONS: u64 = 146_945_851;
    pub const RT_D4: [&str; 7] = ["0", "6A1", "6A1", "7A1", "8A1", "9A1", "10A1"];
    pub const AUT_D4: [u64; 6] = [378_000, 12, 6, 8, 9, 20];
    /// Size of the smooth class up to degree 4: `h_F` and an orbit of 1050.
    pub const SMOOTH_D4: u64 = 1 + 756_000 / 720;

    pub fn lookup<T: Copy>(table: &[(i64, T)], d: i64) -> Option<T> {
        table.iter().find(|(k, _)| *k == d).map(|(_, v)| *v)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("resource guard: {0}")]
    Guard(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Other(_) => 1,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Guard { .. } => CliError::Guard(e.to_string()),
            ModelError::Check(_) => CliError::Mismatch(e.to_string()),
            ModelError::Ns(e) => e.into(),
            ModelError::Fermat(e) => e.into(),
            e => CliError::Other(e.to_string()),
        }
    }
}

impl From<NsError> for CliError {
    fn from(e: NsError) -> Self {
        match e {
            NsError::Check(_) => CliError::Mismatch(e.to_string()),
            NsError::Fermat(e) => e.into(),
            e => CliError::Other(e.to_string()),
        }
    }
}

impl From<FermatError> for CliError {
    fn from(e: FermatError) -> Self {
        match e {
            FermatError::Check(_) => CliError::Mismatch(e.to_string()),
            e => CliError::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(format!("i/o: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree5Mode {
    Off,
    CountOnly,
    Full,
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub cache_dir: PathBuf,
    pub max_degree: i64,
    pub degree5: Degree5Mode,
    /// Required for the full degree-5 run.
    pub acknowledge_cost: bool,
    pub threads: usize,
    pub max_d: u32,
    /// Progress messages on stderr.
    pub verbose: bool,
}

impl PipelineConfig {
    pub fn new(cache_dir: impl Into<PathBuf>) -> Self {
        PipelineConfig {
            cache_dir: cache_dir.into(),
            max_degree: 4,
            degree5: Degree5Mode::Off,
            acknowledge_cost: false,
            threads: 1,
            max_d: DEFAULT_MAX_D,
            verbose: false,
        }
    }

    fn log(&self, msg: impl AsRef<str>) {
        if self.verbose {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn require_full_degree5(&self) -> Result<()> {
        if !self.acknowledge_cost {
            return Err(CliError::Guard(
                "the full degree-5 run needs hours and several GB of disk; pass --acknowledge-cost to proceed".into(),
            ));
        }
        Ok(())
    }
}

fn orbits_path(cfg: &PipelineConfig, delta: i64) -> PathBuf {
    cfg.cache_dir.join(format!("orbits-d{delta}.txt"))
}

fn model_path(cfg: &PipelineConfig, delta: i64, idx: usize) -> PathBuf {
    cfg.cache_dir.join(format!("models-d{delta}")).join(format!("orbit-{idx:03}.txt"))
}

const CLASSES_FILE: &str = "classes.txt";
const INVOLUTION_FILE: &str = "involution.txt";

/// The geometry from the cache, rebuilt and rewritten if absent or stale.
pub fn geometry(cfg: &PipelineConfig) -> Result<Geometry> {
    match load_geometry(&cfg.cache_dir) {
        Ok(g) => Ok(g),
        Err(e) => {
            cfg.log(format!("geometry cache unusable ({e}); rebuilding"));
            let g = Geometry::build()?;
            save_geometry(&cfg.cache_dir, &g)?;
            Ok(g)
        }
    }
}

pub fn group(cfg: &PipelineConfig, geom: &Geometry) -> Result<Group> {
    match load_group(&cfg.cache_dir, geom) {
        Ok(g) => Ok(g),
        Err(e) => {
            cfg.log(format!("group cache unusable ({e}); rebuilding"));
            let g = Group::build(geom)?;
            save_group(&cfg.cache_dir, &g)?;
            Ok(g)
        }
    }
}

pub struct GeometrySummary {
    pub lines: usize,
    pub det: i64,
    pub group_order: usize,
}

pub fn cmd_build_geometry(cfg: &PipelineConfig) -> Result<GeometrySummary> {
    let geom = geometry(cfg)?;
    if geom.det() != -25 {
        return Err(CliError::Mismatch(format!("det M_NS = {}", geom.det())));
    }
    let grp = group(cfg, &geom)?;
    if grp.order() != GROUP_ORDER {
        return Err(CliError::Mismatch(format!("group order {}", grp.order())));
    }
    if !grp.all_isometries(&geom) {
        return Err(CliError::Mismatch("a group element is not an isometry".into()));
    }
    Ok(GeometrySummary { lines: geom.lines.len(), det: geom.det(), group_order: grp.order() })
}

fn spill_config(cfg: &PipelineConfig, delta: i64) -> SpillConfig {
    SpillConfig { dir: cfg.cache_dir.join(format!("spill-d{delta}")), buckets: 256 }
}

/// `|V_δ|`, streamed when `count_only`, otherwise materialized (in memory,
/// or spilled to disk for `δ = 5`).
pub fn cmd_enumerate(cfg: &PipelineConfig, delta: i64, count_only: bool) -> Result<u64> {
    let geom = geometry(cfg)?;
    let n = if count_only {
        shell_count(&geom, delta)?
    } else if delta >= 5 {
        cfg.require_full_degree5()?;
        spill_shell(&geom, delta, &spill_config(cfg, delta))?
    } else {
        k3_core::nsengine::shell_vectors(&geom, delta)?.len() as u64
    };
    if let Some(want) = expected::lookup(&expected::SHELL_SIZES, delta) {
        if n != want {
            return Err(CliError::Mismatch(format!("|V_{delta}| = {n}, expected {want}")));
        }
    }
    Ok(n)
}

fn load_orbits(cfg: &PipelineConfig, geom: &Geometry, delta: i64) -> Option<Vec<OrbitRecord>> {
    let f = File::open(orbits_path(cfg, delta)).ok()?;
    read_orbits(BufReader::new(f), geom).ok()
}

/// Orbit records of `V_δ`, cached in `orbits-dδ.txt`.
pub fn orbits(cfg: &PipelineConfig, geom: &Geometry, grp: &Group, delta: i64) -> Result<Vec<OrbitRecord>> {
    if let Some(o) = load_orbits(cfg, geom, delta) {
        return Ok(o);
    }
    let action = Action::new(geom, grp);
    let recs = if delta >= 5 {
        cfg.require_full_degree5()?;
        let sc = spill_config(cfg, delta);
        cfg.log(format!("spilling V_{delta} to {}", sc.dir.display()));
        let n = spill_shell(geom, delta, &sc)?;
        cfg.log(format!("|V_{delta}| = {n}; decomposing"));
        let raw = decompose_spilled(&action, &sc, |b, nb| cfg.log(format!("bucket {b}/{nb}")))?;
        finish_orbits(geom, &raw)?
    } else {
        classify_shell(geom, &action, delta)?
    };
    let total: u64 = recs.iter().map(|o| o.size).sum();
    if recs.iter().any(|o| o.size * o.stabilizer != GROUP_ORDER as u64) {
        return Err(CliError::Mismatch("orbit size times stabilizer differs from the group order".into()));
    }
    write_atomic(&orbits_path(cfg, delta), |w| write_orbits(w, &recs))?;
    if delta >= 5 {
        let _ = fs::remove_dir_all(spill_config(cfg, delta).dir);
    }
    cfg.log(format!("V_{delta}: {} orbits, {total} vectors", recs.len()));
    Ok(recs)
}

pub fn cmd_orbits(cfg: &PipelineConfig, delta: i64) -> Result<Vec<OrbitRecord>> {
    let geom = geometry(cfg)?;
    let grp = group(cfg, &geom)?;
    let recs = orbits(cfg, &geom, &grp, delta)?;
    check_orbit_counts(delta, &recs)?;
    Ok(recs)
}

fn check_orbit_counts(delta: i64, recs: &[OrbitRecord]) -> Result<()> {
    if let Some(want) = expected::lookup(&expected::ORBITS, delta) {
        if recs.len() != want {
            return Err(CliError::Mismatch(format!("{} orbits in V_{delta}, expected {want}", recs.len())));
        }
    }
    let pols = recs.iter().filter(|o| o.polarization).count();
    if let Some(want) = expected::lookup(&expected::POLARIZATIONS, delta) {
        if pols != want {
            return Err(CliError::Mismatch(format!("{pols} polarization orbits in V_{delta}, expected {want}")));
        }
    }
    Ok(())
}

fn model_options(cfg: &PipelineConfig) -> ModelOptions {
    ModelOptions { max_d: cfg.max_d, six_h: true }
}

fn cached_model(path: &Path, h: &NsVector) -> Option<ModelRecord> {
    let rec = read_model(BufReader::new(File::open(path).ok()?)).ok()?;
    (rec.h == *h).then_some(rec)
}

/// Models of the given polarizations, cached per orbit and built on
/// `cfg.threads` workers.
pub fn models(cfg: &PipelineConfig, geom: &Geometry, jobs: &[(i64, usize, NsVector)]) -> Result<Vec<ModelRecord>> {
    let slots: Vec<Mutex<Option<Result<ModelRecord>>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let opts = model_options(cfg);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        let Some((delta, idx, h)) = jobs.get(i) else { break };
        let path = model_path(cfg, *delta, *idx);
        let res = match cached_model(&path, h) {
            Some(r) => Ok(r),
            None => {
                let t = std::time::Instant::now();
                let r = build_model(geom, h, &opts).map_err(CliError::from).and_then(|rec| {
                    write_atomic(&path, |w| write_model(w, &rec))?;
                    Ok(rec)
                });
                if let Ok(rec) = &r {
                    cfg.log(format!("model d{delta}/{idx}: d = {}, {} in {:.1?}", rec.model.expression.d, rec.rt, t.elapsed()));
                }
                r
            }
        };
        *slots[i].lock().unwrap() = Some(res);
    };
    std::thread::scope(|s| {
        for _ in 1..cfg.threads.max(1) {
            s.spawn(work);
        }
        work();
    });
    slots.into_iter().map(|m| m.into_inner().unwrap().unwrap()).collect()
}

/// An equivalence class of polarizations with a common canonical sextic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRow {
    pub rt: AdeType,
    pub aut: u64,
    pub members: u64,
    pub sample: NsVector,
    /// `(δ, orbit index, stabilizer order)`.
    pub orbits: Vec<(i64, usize, u64)>,
    /// Index of the class of the conjugate sextic, if processed.
    pub conjugate: Option<usize>,
    pub canonical: SexticForm,
    /// A form over `GF(5)` equivalent to the canonical one.
    pub descent: Option<SexticForm>,
}

pub struct Classification {
    pub orbits: BTreeMap<i64, Vec<OrbitRecord>>,
    pub classes: Vec<ClassRow>,
}

fn conjugate_canonical(s: &SexticForm) -> Result<SexticForm> {
    let c = s.conjugate();
    let sing = singular_points(&c)?;
    Ok(canonical_sextic(&c, &sing)?)
}

pub fn cmd_classify(cfg: &PipelineConfig) -> Result<Classification> {
    if cfg.max_degree >= 5 && cfg.degree5 != Degree5Mode::Full {
        return Err(CliError::Guard("degree 5 classification needs the full degree-5 mode".into()));
    }
    let geom = geometry(cfg)?;
    let grp = group(cfg, &geom)?;
    let mut all = BTreeMap::new();
    let mut jobs = Vec::new();
    for delta in 2..=cfg.max_degree {
        let recs = orbits(cfg, &geom, &grp, delta)?;
        check_orbit_counts(delta, &recs)?;
        for (i, o) in recs.iter().enumerate() {
            if o.polarization {
                jobs.push((delta, i, o.representative));
            }
        }
        all.insert(delta, recs);
    }
    cfg.log(format!("{} polarization orbits; building models", jobs.len()));
    let recs = models(cfg, &geom, &jobs)?;
    for ((delta, i, _), m) in jobs.iter().zip(&recs) {
        let o = &all[delta][*i];
        if o.rt.as_ref() != Some(&m.rt) {
            return Err(CliError::Mismatch(format!("orbit d{delta}/{i}: lattice type and sextic type differ")));
        }
    }
    let mut by_form: BTreeMap<SexticForm, ClassRow> = BTreeMap::new();
    for ((delta, i, h), m) in jobs.iter().zip(&recs) {
        let o = &all[delta][*i];
        let row = by_form.entry(m.canonical).or_insert_with(|| ClassRow {
            rt: m.rt.clone(),
            aut: m.aut,
            members: 0,
            sample: *h,
            orbits: Vec::new(),
            conjugate: None,
            canonical: m.canonical,
            descent: None,
        });
        if row.rt != m.rt || row.aut != m.aut {
            return Err(CliError::Mismatch("equal canonical sextics with different invariants".into()));
        }
        row.members += o.size;
        row.orbits.push((*delta, *i, o.stabilizer));
    }
    let mut classes: Vec<ClassRow> = by_form.into_values().collect();
    classes.sort_by(|a, b| {
        (a.rt.rank(), a.rt.to_string(), a.orbits[0], a.canonical).cmp(&(b.rt.rank(), b.rt.to_string(), b.orbits[0], b.canonical))
    });
    let index: BTreeMap<SexticForm, usize> = classes.iter().enumerate().map(|(i, c)| (c.canonical, i)).collect();
    for c in &mut classes {
        c.conjugate = index.get(&conjugate_canonical(&c.canonical)?).copied();
        let sing = singular_points(&c.canonical)?;
        c.descent = f5_descent(&c.canonical, &sing).map(|d| d.form);
    }
    write_atomic(&cfg.cache_dir.join(CLASSES_FILE), |w| write_classes(w, &classes))?;
    let out = Classification { orbits: all, classes };
    check_classification(cfg, &out)?;
    Ok(out)
}

fn check_classification(cfg: &PipelineConfig, c: &Classification) -> Result<()> {
    if let Some(want) = expected::lookup(&expected::CLASSES, cfg.max_degree) {
        if c.classes.len() != want {
            return Err(CliError::Mismatch(format!("{} classes, expected {want}", c.classes.len())));
        }
    }
    if cfg.max_degree == 4 {
        let mut rts: Vec<String> = c.orbits[&4].iter().filter_map(|o| o.rt.as_ref().map(|t| t.to_string())).collect();
        let mut want: Vec<String> = expected::RT_D4.iter().map(|s| s.to_string()).collect();
        rts.sort();
        want.sort();
        if rts != want {
            return Err(CliError::Mismatch(format!("degree-4 types {rts:?}, expected {want:?}")));
        }
        let mut auts: Vec<u64> = c.classes.iter().map(|r| r.aut).collect();
        let mut want = expected::AUT_D4.to_vec();
        auts.sort_unstable();
        want.sort_unstable();
        if auts != want {
            return Err(CliError::Mismatch(format!("automorphism orders {auts:?}, expected {want:?}")));
        }
        if c.classes[0].members != expected::SMOOTH_D4 {
            return Err(CliError::Mismatch(format!("smooth class has {} members", c.classes[0].members)));
        }
    }
    if cfg.max_degree == 5 {
        let total: u64 = c.classes.iter().map(|r| r.members).sum();
        if total != expected::BALL_5_POLARIZATIONS {
            return Err(CliError::Mismatch(format!("{total} polarizations in the ball, expected {}", expected::BALL_5_POLARIZATIONS)));
        }
    }
    Ok(())
}

fn ints<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_classes<W: Write>(w: &mut W, classes: &[ClassRow]) -> std::io::Result<()> {
    writeln!(w, "{}", header("classes"))?;
    for c in classes {
        let orbits: Vec<String> = c.orbits.iter().map(|(d, i, s)| format!("{d}/{i}/{s}")).collect();
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            c.rt,
            c.aut,
            c.members,
            ints(&c.sample),
            orbits.join(" "),
            c.conjugate.map_or("-".to_string(), |k| k.to_string()),
            coefficient_line(&c.canonical),
            c.descent.as_ref().map_or("-".to_string(), coefficient_line),
        )?;
    }
    Ok(())
}

pub fn read_classes<R: BufRead>(r: R) -> Result<Vec<ClassRow>> {
    let mut it = r.lines();
    let first = it.next().transpose()?;
    check_header(first.as_deref(), "classes")?;
    let mut out = Vec::new();
    for l in it {
        let l = l?;
        let bad = || CliError::Other(format!("bad class record {l:?}"));
        let f: Vec<&str> = l.split('\t').collect();
        if f.len() != 8 {
            return Err(bad());
        }
        let sample: Vec<i64> = f[3].split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect::<Result<_>>()?;
        let mut orbits = Vec::new();
        for t in f[4].split_whitespace() {
            let p: Vec<&str> = t.split('/').collect();
            if p.len() != 3 {
                return Err(bad());
            }
            orbits.push((p[0].parse().map_err(|_| bad())?, p[1].parse().map_err(|_| bad())?, p[2].parse().map_err(|_| bad())?));
        }
        out.push(ClassRow {
            rt: AdeType::parse(f[0])?,
            aut: f[1].parse().map_err(|_| bad())?,
            members: f[2].parse().map_err(|_| bad())?,
            sample: sample.try_into().map_err(|_| bad())?,
            orbits,
            conjugate: if f[5] == "-" { None } else { Some(f[5].parse().map_err(|_| bad())?) },
            canonical: parse_coefficient_line(f[6])?,
            descent: if f[7] == "-" { None } else { Some(parse_coefficient_line(f[7])?) },
        });
    }
    Ok(out)
}

/// Human-readable table of the classes; every sample is re-checked to be
/// a polarization.
pub fn cmd_table(cfg: &PipelineConfig) -> Result<String> {
    let path = cfg.cache_dir.join(CLASSES_FILE);
    let f = File::open(&path).map_err(|_| CliError::Other(format!("{} missing; run classify first", path.display())))?;
    let classes = read_classes(BufReader::new(f))?;
    let geom = geometry(cfg)?;
    let mut out = String::new();
    let mut total = 0;
    for (i, c) in classes.iter().enumerate() {
        if !is_polarization(&geom, &c.sample)? {
            return Err(CliError::Mismatch(format!("sample of E{i} is not a polarization")));
        }
        total += c.members;
        let orbits: Vec<String> = c.orbits.iter().map(|(d, _, s)| format!("[{s}]_{d}")).collect();
        let conj = match c.conjugate {
            Some(k) if k == i => format!("E{i} = conj(E{i})"),
            Some(k) => format!("E{i} = conj(E{k})"),
            None => "conjugate class not in range".to_string(),
        };
        out += &format!("E{i}: RT = {}, |aut| = {}, N = {}, orbits {}, {conj}\n", c.rt, c.aut, c.members, orbits.join(", "));
        out += &format!("  h = [{}]\n", ints(&c.sample));
        out += &format!("  canonical: {}\n", c.canonical.to_poly());
        match &c.descent {
            Some(d) => out += &format!("  over GF(5): {}\n", d.to_poly()),
            None => out += "  over GF(5): none found\n",
        }
    }
    out += &format!("{} classes, {total} polarizations\n", classes.len());
    Ok(out)
}

fn smooth_degree4(cfg: &PipelineConfig, geom: &Geometry) -> Result<NsVector> {
    let recs = load_orbits(cfg, geom, 4).ok_or_else(|| CliError::Other("orbits-d4.txt missing; run classify first".into()))?;
    recs.iter()
        .find(|o| o.polarization && o.rt.as_ref().is_some_and(|t| t.is_empty()))
        .map(|o| o.representative)
        .ok_or_else(|| CliError::Mismatch("no smooth polarization of degree 4".into()))
}

pub fn cmd_involution(cfg: &PipelineConfig) -> Result<Vec<Vec<i64>>> {
    let geom = geometry(cfg)?;
    let grp = group(cfg, &geom)?;
    let path = cfg.cache_dir.join(INVOLUTION_FILE);
    if let Ok(f) = File::open(&path) {
        if let Ok((_, g)) = read_involution(BufReader::new(f)) {
            check_involution(&geom, &grp, &g)?;
            return Ok(g);
        }
    }
    let h = smooth_degree4(cfg, &geom)?;
    let inv = nonprojective_involution(&geom, &grp, &h)?;
    check_involution(&geom, &grp, &inv.matrix)?;
    write_atomic(&path, |w| write_involution(w, &inv))?;
    Ok(inv.matrix)
}

/// Builds the model of one class `h`, which must be a polarization.
pub fn cmd_model(cfg: &PipelineConfig, h: &[i64]) -> Result<ModelRecord> {
    let h: NsVector = h.try_into().map_err(|_| CliError::Other(format!("expected {RANK} integers")))?;
    let geom = geometry(cfg)?;
    if geom.pair(&h, &h) != 2 {
        return Err(CliError::Other("h² ≠ 2".into()));
    }
    if !is_polarization(&geom, &h)? {
        return Err(CliError::Other("not a polarization".into()));
    }
    Ok(build_model(&geom, &h, &model_options(cfg))?)
}

pub fn render_model(rec: &ModelRecord) -> String {
    let mut buf = Vec::new();
    write_model(&mut buf, rec).expect("writing to memory");
    String::from_utf8(buf).expect("model text is UTF-8")
}
