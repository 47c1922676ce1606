use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn k3models(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3models"))
        .arg("--cache-dir")
        .arg(cache)
        .arg("-q")
        .args(args)
        .env_remove("K3MODELS_CACHE")
        .output()
        .expect("k3models runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((p.strip_prefix(dir).unwrap().display().to_string(), fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn degree_four_pipeline() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path();

    let out = stdout(&k3models(cache, &["build-geometry"]));
    assert!(out.contains("252") && out.contains("-25") && out.contains("756000"), "{out}");
    for f in ["lines.txt", "gram.txt", "frobenius.txt", "group.txt"] {
        assert!(cache.join(f).is_file(), "{f} missing");
    }

    let out = stdout(&k3models(cache, &["enumerate", "--degree", "4", "--count-only"]));
    assert!(out.contains("1020600"), "{out}");

    stdout(&k3models(cache, &["classify", "--max-degree", "4"]));
    let classes = fs::read_to_string(cache.join("classes.txt")).unwrap();
    let rows: Vec<&str> = classes.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 6, "{classes}");
    let orbits = fs::read_to_string(cache.join("orbits-d4.txt")).unwrap();
    assert_eq!(orbits.lines().filter(|l| !l.starts_with('#')).count(), 8, "{orbits}");

    let table = stdout(&k3models(cache, &["table"]));
    assert!(table.contains("E0") && table.contains("1051") && table.contains("378000"), "{table}");
    for t in ["6A1", "7A1", "8A1", "9A1", "10A1"] {
        assert!(table.contains(t), "{t} missing from\n{table}");
    }

    stdout(&k3models(cache, &["involution"]));
    assert!(cache.join("involution.txt").is_file());

    let first = snapshot(cache);
    stdout(&k3models(cache, &["classify", "--max-degree", "4"]));
    stdout(&k3models(cache, &["involution"]));
    assert!(first == snapshot(cache), "a warm rerun changed the cache");

    let guarded = k3models(cache, &["classify", "--max-degree", "5"]);
    assert_eq!(guarded.status.code(), Some(3));
    let bad = k3models(cache, &["model", "--h", "1,0"]);
    assert!(!bad.status.success());
}
