use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nexang_core::schema::{self, Payload, WorkbenchFile};
use nexang_core::{fixtures, EquivalenceWitness, PrimeField};
use serde_json::Value;
use tempfile::TempDir;

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// A scratch copy of `fixtures/`, so transports do not write into the repo.
fn scratch() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(fixtures_dir()).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "json") {
            fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
        }
    }
    dir
}

fn nexang(args: &[&str], file: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nexang")).args(args).arg(file).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn edit(path: &Path, f: impl FnOnce(&mut Value)) {
    let mut v: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    f(&mut v);
    fs::write(path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
}

#[test]
fn fixture_jobs_pass() {
    let d = scratch();
    for job in ["triangulated", "split_exangulated", "doubling", "vect_exact", "vect_abelian", "crosscheck"] {
        let o = nexang(&["check"], &d.path().join(format!("{job}.job.json")));
        assert_eq!(code(&o), 0, "{job}:\n{}", stdout(&o));
        assert!(stdout(&o).ends_with("verdict: pass\n"));
    }
}

#[test]
fn structure_files_check_directly() {
    let d = scratch();
    for f in ["triangulated", "doubled", "vect"] {
        assert_eq!(code(&nexang(&["check"], &d.path().join(format!("{f}.json")))), 0, "{f}");
    }
}

#[test]
fn corrupted_generator_fails_and_names_the_axiom() {
    let d = scratch();
    edit(&d.path().join("triangulated.json"), |v| {
        let bad = serde_json::json!({ "objects": [["S"], ["S"], ["S"]], "diffs": [[1], [1]], "last": [1] });
        v["generators"].as_array_mut().unwrap().push(bad);
    });
    let o = nexang(&["check"], &d.path().join("triangulated.job.json"));
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).lines().any(|l| l.trim_start().starts_with("F3") && l.contains("fail")), "{}", stdout(&o));
}

#[test]
fn bound_zero_is_inconclusive() {
    let d = scratch();
    for job in ["triangulated", "vect_abelian"] {
        let o = nexang(&["check", "--universe-bound", "0"], &d.path().join(format!("{job}.job.json")));
        assert_eq!(code(&o), 3, "{job}:\n{}", stdout(&o));
    }
}

#[test]
fn malformed_witness_is_an_input_error() {
    let d = scratch();
    edit(&d.path().join("doubling.json"), |v| {
        v["witness"]["unit"]["S'"] = serde_json::json!([1, 1, 1]);
    });
    let o = nexang(&["transport"], &d.path().join("transport_triangulated.job.json"));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("doubling.json"));
    assert!(!d.path().join("out").exists());
}

#[test]
fn unresolved_names_report_their_location() {
    let d = scratch();
    edit(&d.path().join("triangulated.json"), |v| {
        v["generators"][0]["objects"][0] = serde_json::json!(["T"]);
    });
    let o = nexang(&["check"], &d.path().join("triangulated.job.json"));
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("generator 0") && err.contains("`T`"), "{err}");
}

#[test]
fn missing_files_and_wrong_kinds_are_input_errors() {
    let d = scratch();
    assert_eq!(code(&nexang(&["check"], &d.path().join("nope.json"))), 2);
    assert_eq!(code(&nexang(&["transport"], &d.path().join("triangulated.job.json"))), 2);
    assert_eq!(code(&nexang(&["check"], &d.path().join("identity.functor.json"))), 2);
    edit(&d.path().join("vect.json"), |v| v["schema_version"] = "2".into());
    assert_eq!(code(&nexang(&["check"], &d.path().join("vect.json"))), 2);
}

#[test]
fn skeleton_job_emits_a_skeletal_angulation() {
    let d = scratch();
    let o = nexang(&["transport"], &d.path().join("skeleton.job.json"));
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = d.path().join("out/skeletal.json");
    let f = WorkbenchFile::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(f.category().unwrap().num_objects(), 1);
    let Payload::Angulation { sigma, .. } = &f.payload else { panic!("not an angulation") };
    assert!(sigma.strict);
    assert_eq!(code(&nexang(&["check"], &out)), 0);
}

#[test]
fn emitted_files_reverify_with_the_same_verdict() {
    let d = scratch();
    for (job, out) in [
        ("transport_triangulated", "doubled_triangulated"),
        ("transport_split", "doubled_split"),
        ("transport_vect", "doubled_vect"),
    ] {
        let t = nexang(&["transport"], &d.path().join(format!("{job}.job.json")));
        let c = nexang(&["check"], &d.path().join(format!("out/{out}.json")));
        assert_eq!((code(&t), code(&c)), (0, 0), "{job}:\n{}\n{}", stdout(&t), stdout(&c));
    }
}

#[test]
fn transported_functor_witness_checks() {
    let d = scratch();
    assert_eq!(code(&nexang(&["transport"], &d.path().join("transport_triangulated.job.json"))), 0);
    let job = serde_json::json!({
        "schema_version": "1", "field_char": 2, "kind": "job",
        "job": { "action": "check", "check": "angulated-functor", "source": "triangulated.json",
                 "target": "out/doubled_triangulated.json", "witness": "out/doubled_triangulated.functor.json" }
    });
    let p = d.path().join("functor.job.json");
    fs::write(&p, job.to_string()).unwrap();
    let o = nexang(&["check"], &p);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn identity_transport_reproduces_the_generators() {
    let d = scratch();
    let (cat, _) = fixtures::triangulated();
    let id =
        WorkbenchFile::new(PrimeField::new(2).unwrap(), Some(2), schema::equivalence_payload(&EquivalenceWitness::identity(cat)));
    fs::write(d.path().join("id.json"), id.to_json()).unwrap();
    edit(&d.path().join("transport_triangulated.job.json"), |v| v["job"]["along"] = "id.json".into());
    assert_eq!(code(&nexang(&["transport"], &d.path().join("transport_triangulated.job.json"))), 0);
    let read = |p: PathBuf| WorkbenchFile::parse(&fs::read_to_string(p).unwrap()).unwrap().payload;
    let (Payload::Angulation { generators: a, .. }, Payload::Angulation { generators: b, .. }) =
        (read(d.path().join("triangulated.json")), read(d.path().join("out/doubled_triangulated.json")))
    else {
        panic!("not angulations")
    };
    assert_eq!(a, b);
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let d = scratch();
    for (cmd, job) in [("check", "triangulated.job.json"), ("check", "crosscheck.job.json"), ("transport", "skeleton.job.json")] {
        let a = nexang(&[cmd, "--report", "json"], &d.path().join(job));
        let b = nexang(&[cmd, "--report", "json", "--parallel", "2"], &d.path().join(job));
        assert_eq!(a.stdout, b.stdout, "{job}");
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["seed"], nexang_core::Config::new(2).seed);
    }
}

#[test]
fn invalid_witness_fails_its_check_and_stops_transport() {
    let d = scratch();
    edit(&d.path().join("doubling.json"), |v| {
        v["witness"]["counit"]["S"] = serde_json::json!([0]);
    });
    let full = nexang(&["check", "--report", "json"], &d.path().join("doubling.json"));
    assert_eq!(code(&full), 1);
    let o = nexang(&["transport", "--fail-fast"], &d.path().join("transport_triangulated.job.json"));
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("verdict: fail"));
    assert!(!d.path().join("out").exists());
}
