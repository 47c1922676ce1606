//! Model-level invariants on one polarization of each singular type of
//! degree 4.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use k3_core::fermat::group::Mat3;
use k3_core::fermat::{Geometry, NsVector};
use k3_core::gf::Gf25;
use k3_core::models::build::{build_model, ModelOptions, ModelRecord};
use k3_core::models::plane::{det, inverse, mul, scalar_of};
use k3_core::models::sextic::{
    aut_order_from, canonical_sextic, f5_descent, isom_sextics, quadruples, singular_points,
};

const SAMPLES: [NsVector; 5] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1],
];

fn geometry() -> &'static Geometry {
    static G: OnceLock<Geometry> = OnceLock::new();
    G.get_or_init(|| Geometry::build().unwrap())
}

fn records() -> &'static Vec<ModelRecord> {
    static R: OnceLock<Vec<ModelRecord>> = OnceLock::new();
    R.get_or_init(|| SAMPLES.iter().map(|h| build_model(geometry(), h, &ModelOptions::default()).unwrap()).collect())
}

fn random_mat(rng: &mut impl Rng) -> Mat3 {
    loop {
        let mut m = [[Gf25::ZERO; 3]; 3];
        for r in &mut m {
            for c in r.iter_mut() {
                *c = Gf25::new(rng.gen_range(0..5), rng.gen_range(0..5));
            }
        }
        if det(&m) != Gf25::ZERO {
            return m;
        }
    }
}

#[test]
fn automorphisms_contain_the_identity() {
    for rec in records() {
        let s = rec.model.sextic;
        let aut = isom_sextics(&s, &s, &rec.singular, &rec.singular);
        assert!(aut.iter().any(|i| scalar_of(&i.t).is_some()), "{}", rec.rt);
    }
}

#[test]
fn automorphism_count_is_independent_of_the_base_quadruple() {
    for rec in records() {
        let n = quadruples(&rec.singular.iter().map(|p| p.point).collect::<Vec<_>>()).len();
        assert!(n > 1);
        for k in [1, n / 2, n - 1] {
            assert_eq!(aut_order_from(&rec.canonical, &singular_points(&rec.canonical).unwrap(), k), rec.aut, "{} k={k}", rec.rt);
        }
    }
}

#[test]
fn transport_by_a_projectivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for rec in records() {
        let tau = random_mat(&mut rng);
        let s2 = rec.model.sextic.transform(&tau);
        let sing2 = singular_points(&s2).unwrap();
        let isoms = isom_sextics(&rec.model.sextic, &s2, &rec.singular, &sing2);
        assert!(!isoms.is_empty());
        let tau_inv = inverse(&tau).unwrap();
        assert!(isoms.iter().any(|i| scalar_of(&mul(&i.t, &tau_inv)).is_some()), "{}", rec.rt);
        assert_eq!(canonical_sextic(&s2, &sing2).unwrap(), rec.canonical);
    }
}

#[test]
fn descent_preserves_the_class() {
    for rec in records() {
        let sing = singular_points(&rec.canonical).unwrap();
        let d = f5_descent(&rec.canonical, &sing).expect("descent");
        assert!(d.form.is_over_prime_field());
        let dsing = singular_points(&d.form).unwrap();
        assert_eq!(canonical_sextic(&d.form, &dsing).unwrap(), rec.canonical, "{}", rec.rt);
    }
}

#[test]
fn distinct_types_have_distinct_canonical_forms() {
    let forms: std::collections::BTreeSet<_> = records().iter().map(|r| r.canonical).collect();
    assert_eq!(forms.len(), SAMPLES.len());
    let rts: Vec<String> = records().iter().map(|r| r.rt.to_string()).collect();
    assert_eq!(rts, ["6A1", "7A1", "8A1", "9A1", "10A1"]);
    let auts: Vec<u64> = records().iter().map(|r| r.aut).collect();
    assert_eq!(auts, [12, 6, 8, 9, 20]);
}
