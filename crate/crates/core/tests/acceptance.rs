//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p nexang-core --test acceptance`. The full report
//! tree is written to `acceptance-report.json` under the cargo target tmpdir.
//! Criterion 4 contains a negative control that cannot hold (vector spaces
//! are 2-abelian), so it prints FAIL; see the README. Any other FAIL makes
//! the process exit nonzero.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use nexang_core::angulated::{check_angulation_axioms, AngulatedFunctorWitness, Angulation};
use nexang_core::complexes::{
    chain_maps, components_from, cone_of_angle_morphism, homotopy_equivalent, is_homotopy_equivalence, left_rotation,
    mapping_cone, sigma_morphism_system, Complex, ComplexMorphism, SigmaSequence,
};
use nexang_core::exangulated::{self as ex, ExactSide, SigmaSide};
use nexang_core::homalg::{check_n_abelian_axioms, check_n_exact_axioms};
use nexang_core::linalg::{self, all_vectors};
use nexang_core::search::Ctx;
use nexang_core::skeleton::check_identity_on;
use nexang_core::transport::{self, transport_to_skeleton};
use nexang_core::{fixtures, AddFunctor, BaseCategory, Check, Config, Matrix, PrimeField, Report, Status, Universe};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x6e65_7861_6e67;

struct Outcome {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
    /// Set when the only failing part is a known-unattainable control.
    unattainable: Option<String>,
    report: Report,
}

fn inconclusive_count(r: &Report) -> u64 {
    r.checks.iter().map(|c| c.inconclusive).sum::<u64>() + r.children.iter().map(inconclusive_count).sum::<u64>()
}

fn failure_count(r: &Report) -> u64 {
    r.checks.iter().map(|c| c.failures).sum::<u64>() + r.children.iter().map(failure_count).sum::<u64>()
}

/// Pass with no inconclusive entry anywhere in the tree.
fn clean(r: &Report) -> bool {
    r.status() == Status::Pass && inconclusive_count(r) == 0
}

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn f3() -> PrimeField {
    PrimeField::new(3).unwrap()
}

fn cfg() -> Config {
    Config::new(2)
}

// ---- 1: linear algebra against enumeration ----

fn mat_from_index(f: PrimeField, rows: usize, cols: usize, mut idx: u64) -> Matrix {
    let p = f.p() as u64;
    let data = (0..rows * cols)
        .map(|_| {
            let v = (idx % p) as u32;
            idx /= p;
            v
        })
        .collect();
    Matrix::new(rows, cols, data).unwrap()
}

fn random_matrix(f: PrimeField, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::new(rows, cols, (0..rows * cols).map(|_| rng.gen_range(0..f.p())).collect()).unwrap()
}

/// Rank and kernel of `m` against the image and kernel found by listing
/// every vector; returns a description of the first disagreement.
fn oracle_rank_kernel(f: PrimeField, m: &Matrix) -> Option<String> {
    let mut image = HashSet::new();
    let mut kernel = 0u64;
    for v in all_vectors(f, m.cols()) {
        let w = m.mul_vec(f, &v);
        if w.iter().all(|&x| x == 0) {
            kernel += 1;
        }
        image.insert(w);
    }
    let r = linalg::rank(f, m);
    if image.len() as u64 != (f.p() as u64).pow(r as u32) {
        return Some(format!("rank {r} but the image has {} elements", image.len()));
    }
    let basis = linalg::kernel_basis(f, m);
    if kernel != (f.p() as u64).pow(basis.len() as u32) {
        return Some(format!("kernel basis of size {} but the kernel has {kernel} elements", basis.len()));
    }
    if basis.iter().any(|b| m.mul_vec(f, b).iter().any(|&x| x != 0)) {
        return Some("a kernel basis vector is not in the kernel".into());
    }
    if !basis.is_empty() && linalg::rank(f, &Matrix::from_columns(m.cols(), &basis)) != basis.len() {
        return Some("the kernel basis is dependent".into());
    }
    None
}

/// `a: U -> V`, `b: V -> W`; exact at `V` by enumeration.
fn oracle_exact(f: PrimeField, a: &Matrix, b: &Matrix) -> bool {
    let image: HashSet<Vec<u32>> = all_vectors(f, a.cols()).map(|u| a.mul_vec(f, &u)).collect();
    all_vectors(f, b.cols()).all(|v| b.mul_vec(f, &v).iter().any(|&x| x != 0) == !image.contains(&v))
}

fn criterion_1(rng: &mut ChaCha8Rng) -> Outcome {
    let mut chk = Check::new("rank and kernel, exhaustive");
    let mut count = 0u64;
    for (f, max) in [(f2(), 4), (f3(), 3)] {
        for rows in 1..=max {
            for cols in 1..=max {
                let total = (f.p() as u64).pow((rows * cols) as u32);
                for idx in 0..total {
                    let m = mat_from_index(f, rows, cols, idx);
                    count += 1;
                    match oracle_rank_kernel(f, &m) {
                        None => chk.pass(),
                        Some(why) => chk.fail(format!("p = {}, {:?}: {why}", f.p(), m.to_rows())),
                    }
                }
            }
        }
    }
    let mut exact = Check::new("exactness, random pairs");
    for i in 0..600 {
        let f = if i % 2 == 0 { f2() } else { f3() };
        let max = if f.p() == 2 { 4 } else { 3 };
        let (u, v, w) = (rng.gen_range(1..=max), rng.gen_range(1..=max), rng.gen_range(1..=max));
        let a = random_matrix(f, v, u, rng);
        // Half of the pairs compose to zero, so exact pairs actually occur.
        let b = if i % 4 < 2 {
            random_matrix(f, w, v, rng)
        } else {
            let left = linalg::kernel_basis(f, &a.transpose());
            let mut b = Matrix::zeros(w, v);
            for r in 0..w {
                let mut row = vec![0; v];
                for k in &left {
                    f.axpy(&mut row, rng.gen_range(0..f.p()), k);
                }
                for (c, x) in row.into_iter().enumerate() {
                    b.set(r, c, x);
                }
            }
            b
        };
        if linalg::exact_pair(f, &a, &b) == oracle_exact(f, &a, &b) {
            exact.pass();
        } else {
            exact.fail(format!("p = {}: a = {:?}, b = {:?}", f.p(), a.to_rows(), b.to_rows()));
        }
    }
    let mut report = Report::new("linear algebra oracle");
    let disagreements = chk.failures + exact.failures;
    let detail = format!("{count} matrices and {} pairs, {disagreements} disagreements", exact.instances);
    report.push(chk);
    report.push(exact);
    Outcome { id: 1, title: "linear algebra oracle", pass: disagreements == 0, detail, unattainable: None, report }
}

// ---- 2: triangulated fixture ----

fn criterion_2() -> Outcome {
    let (cat, t) = fixtures::triangulated();
    let ctx = Ctx::new(cat, cfg());
    let rep = check_angulation_axioms(&ctx, &t);
    let (neg_cat, neg) = fixtures::triangulated_without_identity();
    let neg_rep = check_angulation_axioms(&Ctx::new(neg_cat, cfg()), &neg);
    let f1b = neg_rep.find("F1(b)").map(|c| c.status);
    let pass = clean(&rep) && f1b == Some(Status::Fail);
    let detail = format!(
        "F1-F4 {} with {} inconclusive; without the identity angle F1(b) is {}",
        rep.status(),
        inconclusive_count(&rep),
        f1b.map_or("missing".to_string(), |s| s.to_string())
    );
    let mut report = Report::new("triangulated fixture");
    report.child(rep);
    report.child(neg_rep);
    Outcome { id: 2, title: "triangulated fixture", pass, detail, unattainable: None, report }
}

// ---- 3: split exangulated structures ----

fn criterion_3() -> Outcome {
    let ctx = Ctx::new(fixtures::one_object("k"), cfg());
    let mut report = Report::new("split n-exangulated structures");
    let mut parts = Vec::new();
    let mut pass = true;
    for n in 1..=3 {
        let (e, r) = ex::split_structure(&ctx, n);
        let mut rep = Report::new(format!("n = {n}"));
        rep.child(ex::check_realization(&ctx, &e, &r));
        rep.child(ex::check_exangulated_axioms(&ctx, &e, &r));
        pass &= clean(&rep);
        parts.push(format!("n = {n}: {}", rep.status()));
        report.child(rep);
    }
    Outcome { id: 3, title: "split n-exangulated structures", pass, detail: parts.join(", "), unattainable: None, report }
}

// ---- 4: vector spaces ----

fn criterion_4() -> Outcome {
    let k = fixtures::one_object("k");
    let ctx = Ctx::new(k.clone(), cfg());
    let xs = fixtures::split_exact_structure(&k, 1, 2);
    let exact = check_n_exact_axioms(&ctx, &xs);
    let abelian = check_n_abelian_axioms(&ctx, 1);
    let two = check_n_abelian_axioms(&ctx, 2);
    let a2 = two.find("n-A2").map_or(Status::Inconclusive, |c| c.status);
    // Supplementary negative: modules over the dual numbers fail n-A2 at n = 2.
    let dual = check_n_abelian_axioms(&Ctx::new(fixtures::dual_numbers_modules(), cfg()), 2);
    let dual_a2 = dual.find("n-A2").map_or(Status::Inconclusive, |c| c.status);
    let positive = clean(&exact) && clean(&abelian);
    let negative = a2 == Status::Fail;
    let detail = format!(
        "n = 1: n-exact {}, 1-abelian {}; n = 2: n-A2 on vector spaces {} (expected fail), on dual-number modules {}",
        exact.status(),
        abelian.status(),
        a2,
        dual_a2
    );
    let unattainable = (positive && !negative && dual_a2 == Status::Fail).then(|| {
        "every mono of vector spaces has an exact 2-cokernel (vector spaces are 2-abelian), so n-A2 cannot fail there; \
         the same control fails as intended on dual-number modules"
            .to_string()
    });
    let mut report = Report::new("vector spaces");
    for r in [exact, abelian, two, dual] {
        report.child(r);
    }
    Outcome { id: 4, title: "n-exact and n-abelian fixture", pass: positive && negative, detail, unattainable, report }
}

// ---- 5: transport along the doubling ----

fn transported(name: &str, status: [&Report; 3]) -> Report {
    let mut r = Report::new(name);
    for s in status {
        r.child(s.clone());
    }
    r
}

fn criterion_5() -> Outcome {
    let c = cfg();
    let s_dbl = fixtures::doubling(fixtures::one_object("S"), fixtures::doubled());
    let k_dbl = fixtures::doubling(fixtures::one_object("k"), fixtures::doubled());
    let mut report = Report::new("transport along the doubling");
    let mut parts = Vec::new();
    let mut add = |name: &str, r: Report, parts: &mut Vec<String>| {
        parts.push(format!("{name} {}", r.status()));
        report.child(r);
    };

    let (_, t) = fixtures::triangulated();
    let r = transport::transport_angulation(&t, &s_dbl, &c).unwrap();
    add("angulation", transported("triangulated", [&r.witness_report, &r.verification, &r.functor_report]), &mut parts);

    let k = fixtures::one_object("k");
    let r = transport::transport_exact_structure(&fixtures::split_exact_structure(&k, 1, 2), &k_dbl, &c).unwrap();
    add("1-exact", transported("vector spaces, 1-exact", [&r.witness_report, &r.verification, &r.functor_report]), &mut parts);

    add("1-abelian", transport::transport_abelian(1, &k_dbl, &c).unwrap(), &mut parts);

    let kctx = Ctx::new(k, c.clone());
    for n in 1..=2 {
        let (e, real) = ex::split_structure(&kctx, n);
        let r = transport::transport_exangulated_structure((&e, &real), &k_dbl, &c).unwrap();
        let name = format!("split {n}-exangulated");
        add(&name.clone(), transported(&name, [&r.witness_report, &r.verification, &r.functor_report]), &mut parts);
    }

    let (s, t) = fixtures::triangulated();
    let (e, real) = ex::induced_from_sigma(&Ctx::new(s, c.clone()), &t);
    let r = transport::transport_exangulated_structure((&e, &real), &s_dbl, &c).unwrap();
    add("E_Σ", transported("E_Σ 1-exangulated", [&r.witness_report, &r.verification, &r.functor_report]), &mut parts);

    let pass = report.children.iter().all(clean);
    Outcome { id: 5, title: "transport theorems", pass, detail: parts.join(", "), unattainable: None, report }
}

// ---- 6: skeleton strictness ----

fn doubled_angulation() -> (AngulatedFunctorWitness, Angulation) {
    let (_, t) = fixtures::triangulated();
    let w = fixtures::doubling(fixtures::one_object("S"), fixtures::doubled());
    let r = transport::transport_angulation(&t, &w, &cfg()).unwrap();
    (r.witness, r.target)
}

fn criterion_6() -> Outcome {
    let (_, dbl) = doubled_angulation();
    let r = transport_to_skeleton(&dbl, &cfg()).unwrap();
    let mut report = Report::new("skeleton strictness");
    report.child(r.witness_report.clone());
    report.child(r.verification.clone());
    report.child(r.functor_report.clone());
    let skel = r.target.sigma().src().clone();
    let mut identities = Report::new("exact inverse");
    let inverse_ok = match &r.witness.sigma_inverse {
        Some(inv) => {
            let sigma = r.target.sigma();
            let u = Universe::new(&skel, 2);
            identities.push(check_identity_on("Σ′⁻¹Σ′ = Id", &sigma.then(inv), &u));
            identities.push(check_identity_on("Σ′Σ′⁻¹ = Id", &inv.then(sigma), &u));
            identities.status() == Status::Pass
        }
        None => false,
    };
    report.child(identities);
    let pass = clean(&report) && r.target.sigma.strict && inverse_ok;
    let detail = format!(
        "{} object(s) in the skeleton, Σ′ strict = {}, two-sided inverse verified = {inverse_ok}",
        skel.num_objects(),
        r.target.sigma.strict
    );
    Outcome { id: 6, title: "skeleton strictness", pass, detail, unattainable: None, report }
}

// ---- 7: functor crosschecks ----

fn corrupt_theta(w: &AngulatedFunctorWitness, a: usize) -> AngulatedFunctorWitness {
    let mut w = w.clone();
    let cat = w.functor.tgt().clone();
    let th = &w.theta[a];
    w.theta[a] = cat.zero(&th.src, &th.tgt);
    w
}

fn identity_witness(t: &Angulation) -> AngulatedFunctorWitness {
    let cat = t.sigma().src().clone();
    let theta = (0..cat.num_objects()).map(|a| cat.identity(t.sigma().base_object(a))).collect();
    AngulatedFunctorWitness { functor: Arc::new(AddFunctor::identity(cat)), theta }
}

struct SigmaCase {
    name: &'static str,
    src: Angulation,
    dst: Angulation,
    w: AngulatedFunctorWitness,
    expect: Status,
    corrupt_gamma: bool,
}

fn criterion_7() -> Outcome {
    let c = cfg();
    let (_, tri) = fixtures::triangulated();
    let (_, swp) = fixtures::swapped();
    let (dbl_w, dbl) = doubling_witness_pair();
    let skel = transport_to_skeleton(&dbl, &c).unwrap();
    let swap_cat = swp.sigma().src().clone();
    let swap_functor = AngulatedFunctorWitness {
        functor: Arc::new(swp.sigma().clone()),
        theta: (0..2).map(|a| swap_cat.identity(&[a])).collect(),
    };
    let cases = vec![
        SigmaCase {
            name: "identity, triangulated",
            src: tri.clone(),
            dst: tri.clone(),
            w: identity_witness(&tri),
            expect: Status::Pass,
            corrupt_gamma: false,
        },
        SigmaCase {
            name: "identity, swapped",
            src: swp.clone(),
            dst: swp.clone(),
            w: identity_witness(&swp),
            expect: Status::Pass,
            corrupt_gamma: false,
        },
        SigmaCase {
            name: "identity, doubled",
            src: dbl.clone(),
            dst: dbl.clone(),
            w: identity_witness(&dbl),
            expect: Status::Pass,
            corrupt_gamma: false,
        },
        SigmaCase {
            name: "doubling",
            src: tri.clone(),
            dst: dbl.clone(),
            w: dbl_w.clone(),
            expect: Status::Pass,
            corrupt_gamma: false,
        },
        SigmaCase {
            name: "onto the skeleton",
            src: dbl.clone(),
            dst: skel.target.clone(),
            w: skel.witness.functor.clone(),
            expect: Status::Pass,
            corrupt_gamma: false,
        },
        SigmaCase {
            name: "Σ as a functor, swapped",
            src: swp.clone(),
            dst: swp.clone(),
            w: swap_functor,
            expect: Status::Pass,
            corrupt_gamma: false,
        },
        SigmaCase {
            name: "corrupted Θ, identity",
            src: tri.clone(),
            dst: tri.clone(),
            w: corrupt_theta(&identity_witness(&tri), 0),
            expect: Status::Fail,
            corrupt_gamma: false,
        },
        SigmaCase {
            name: "corrupted Θ, swapped",
            src: swp.clone(),
            dst: swp.clone(),
            w: corrupt_theta(&identity_witness(&swp), 1),
            expect: Status::Fail,
            corrupt_gamma: false,
        },
        SigmaCase {
            name: "corrupted Θ, doubling",
            src: tri.clone(),
            dst: dbl.clone(),
            w: corrupt_theta(&dbl_w, 0),
            expect: Status::Fail,
            corrupt_gamma: false,
        },
        SigmaCase {
            name: "corrupted Θ at S′, doubled",
            src: dbl.clone(),
            dst: dbl.clone(),
            w: corrupt_theta(&identity_witness(&dbl), 1),
            expect: Status::Fail,
            corrupt_gamma: false,
        },
        SigmaCase {
            name: "corrupted Γ, identity",
            src: tri.clone(),
            dst: tri.clone(),
            w: identity_witness(&tri),
            expect: Status::Fail,
            corrupt_gamma: true,
        },
        SigmaCase {
            name: "corrupted Γ, doubling",
            src: tri.clone(),
            dst: dbl.clone(),
            w: dbl_w,
            expect: Status::Fail,
            corrupt_gamma: true,
        },
    ];
    let mut report = Report::new("functor crosschecks");
    let mut agree = 0;
    let mut total = 0;
    let mut lines = Vec::new();
    for case in &cases {
        let sctx = Ctx::new(case.src.sigma().src().clone(), c.clone());
        let dctx = Ctx::new(case.dst.sigma().src().clone(), c.clone());
        let (se, sr) = ex::induced_from_sigma(&sctx, &case.src);
        let (de, dr) = ex::induced_from_sigma(&dctx, &case.dst);
        let src = SigmaSide { angulation: &case.src, e: &se, r: &sr };
        let dst = SigmaSide { angulation: &case.dst, e: &de, r: &dr };
        let mut rep = if case.corrupt_gamma {
            let mut g = ex::gamma_from_theta(&case.w, (&se, case.src.sigma()), (&de, case.dst.sigma()));
            let m = &g.gamma[0][0];
            g.gamma[0][0] = Matrix::zeros(m.rows(), m.cols());
            ex::crosscheck_from_gamma(&dctx, &g, &src, &dst)
        } else {
            ex::crosscheck_from_theta(&dctx, &case.w, &src, &dst)
        };
        rep.subject = format!("{}: {}", case.name, rep.subject);
        let verdicts: Vec<Status> = rep.children.iter().map(Report::status).collect();
        let ok = verdicts.iter().all(|&s| s == case.expect);
        total += 1;
        agree += usize::from(ok);
        lines.push(format!("{} {:?}", case.name, verdicts));
        report.child(rep);
    }

    // E_X side.
    let k = fixtures::one_object("k");
    let vect = fixtures::split_exact_structure(&k, 1, 2);
    let dbl_k = fixtures::doubling(k.clone(), fixtures::doubled());
    let vect_dbl = transport::transport_exact_structure(&vect, &dbl_k, &c).unwrap().target;
    let dn = fixtures::dual_numbers_modules();
    let all = fixtures::dual_numbers_exact(&dn, 2);
    let split = fixtures::split_exact_structure(&dn, 1, 2);
    let id = |cat: &Arc<BaseCategory>| Arc::new(AddFunctor::identity(cat.clone()));
    let exact_cases = vec![
        ("identity, vector spaces", k.clone(), vect.clone(), fixtures::doubled(), vect.clone(), id(&k), Status::Pass, true),
        ("doubling, vector spaces", k.clone(), vect.clone(), fixtures::doubled(), vect_dbl, dbl_k.f.clone(), Status::Pass, false),
        ("identity, dual numbers", dn.clone(), all.clone(), dn.clone(), all.clone(), id(&dn), Status::Pass, false),
        ("split into all, dual numbers", dn.clone(), split.clone(), dn.clone(), all.clone(), id(&dn), Status::Pass, false),
        ("all into split, dual numbers", dn.clone(), all, dn.clone(), split, id(&dn), Status::Fail, false),
    ];
    for (name, scat, sxs, dcat, dxs, f, expect, same) in exact_cases {
        let dcat = if same { scat.clone() } else { dcat };
        let sctx = Ctx::new(scat, c.clone());
        let dctx = Ctx::new(dcat, c.clone());
        let (se, sr, _) = ex::induced_from_exact(&sctx, &sxs).unwrap();
        let (de, dr, _) = ex::induced_from_exact(&dctx, &dxs).unwrap();
        let mut rep =
            ex::crosscheck_exact(&dctx, &f, &ExactSide { xs: &sxs, e: &se, r: &sr }, &ExactSide { xs: &dxs, e: &de, r: &dr });
        rep.subject = format!("{name}: {}", rep.subject);
        let verdicts: Vec<Status> = rep.children.iter().map(Report::status).collect();
        total += 1;
        agree += usize::from(verdicts.iter().all(|&s| s == expect));
        lines.push(format!("{name} {verdicts:?}"));
        report.child(rep);
    }
    let disagreements =
        report.children.iter().filter_map(|r| r.check("verdicts agree")).filter(|c| c.status != Status::Pass).count();
    let pass = agree == total && disagreements == 0;
    let detail = format!("{agree}/{total} witnesses with matching verdicts as expected; {disagreements} disagreements");
    if !pass {
        eprintln!("criterion 7 verdicts: {lines:#?}");
    }
    Outcome { id: 7, title: "functor crosschecks", pass, detail, unattainable: None, report }
}

fn doubling_witness_pair() -> (AngulatedFunctorWitness, Angulation) {
    doubled_angulation()
}

// ---- 8: cone formulas ----

fn random_object(nb: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..nb)).collect()
}

fn random_in_span(f: PrimeField, dim: usize, basis: &[Vec<u32>], rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut v = vec![0; dim];
    for b in basis {
        f.axpy(&mut v, rng.gen_range(0..f.p()), b);
    }
    v
}

/// A random complex with `m` objects: each map is drawn from the maps that
/// compose to zero with the previous one.
fn random_complex(cat: &BaseCategory, m: usize, rng: &mut ChaCha8Rng) -> Complex {
    let f = cat.field();
    let objects: Vec<Vec<usize>> = (0..m).map(|_| random_object(cat.num_objects(), rng)).collect();
    let mut diffs = Vec::new();
    for i in 0..m - 1 {
        let dim = cat.hom_dim(&objects[i], &objects[i + 1]);
        let coords = if i == 0 {
            (0..dim).map(|_| rng.gen_range(0..f.p())).collect()
        } else {
            let basis = linalg::kernel_basis(f, &cat.pre_matrix(&diffs[i - 1], &objects[i + 1]));
            random_in_span(f, dim, &basis, rng)
        };
        diffs.push(cat.morphism(&objects[i], &objects[i + 1], coords));
    }
    Complex::new(objects, diffs).unwrap()
}

/// A random Σ-sequence with Σ = Id that is a complex, last map included.
fn random_sigma_complex(cat: &BaseCategory, n: usize, rng: &mut ChaCha8Rng) -> SigmaSequence {
    let f = cat.field();
    let x = random_complex(cat, n + 2, rng);
    let (first, last) = (&x.objects[0], &x.objects[n + 1]);
    let dim = cat.hom_dim(last, first);
    let a = cat.pre_matrix(&x.diffs[n], first);
    let b = cat.post_matrix(&x.diffs[0], last);
    let basis = linalg::kernel_basis(f, &Matrix::vstack(dim, &[&a, &b]));
    let coords = random_in_span(f, dim, &basis, rng);
    SigmaSequence { objects: x.objects.clone(), diffs: x.diffs.clone(), last: cat.morphism(last, first, coords) }
}

fn random_chain_map(cat: &BaseCategory, x: &Complex, y: &Complex, rng: &mut ChaCha8Rng) -> ComplexMorphism {
    let (space, sys) = chain_maps(cat, x, y, &[]).expect("the zero map is a chain map");
    components_from(&sys, x, y, &space.sample(cat.field(), rng))
}

fn random_sigma_morphism(
    cat: &BaseCategory,
    sigma: &AddFunctor,
    x: &SigmaSequence,
    y: &SigmaSequence,
    rng: &mut ChaCha8Rng,
) -> ComplexMorphism {
    let (sys, vars) = sigma_morphism_system(cat, sigma, x, y);
    let v = sys.solve(cat.field()).expect("homogeneous").sample(cat.field(), rng);
    let components =
        vars.iter().enumerate().map(|(i, &var)| cat.morphism(&x.objects[i], &y.objects[i], v[sys.range(var)].to_vec())).collect();
    ComplexMorphism { components }
}

/// The contractible complex `⊕_i (X^i →1 X^i)` in degrees `i, i+1`.
fn contractible_on(cat: &BaseCategory, x: &Complex) -> Complex {
    let m = x.len() + 1;
    let mut acc = nexang_core::complexes::zero_chain(cat, m);
    for (i, o) in x.objects.iter().enumerate() {
        let mut objects = vec![Vec::new(); m];
        objects[i] = o.clone();
        objects[i + 1] = o.clone();
        let diffs = (0..m - 1).map(|k| if k == i { cat.identity(o) } else { cat.zero(&objects[k], &objects[k + 1]) }).collect();
        acc = acc.direct_sum(cat, &Complex::new(objects, diffs).unwrap());
    }
    acc
}

fn criterion_8(rng: &mut ChaCha8Rng) -> Outcome {
    let k3 =
        Arc::new(BaseCategory::from_fn(f3(), vec!["k".into()], vec![vec![1]], vec![vec![1]], |_, _, _, _, _| vec![1]).unwrap());
    let cats = [k3, fixtures::dual_numbers_modules()];
    let mut cone = Check::new("mapping cone d∘d = 0");
    let mut f4 = Check::new("F4 cone is a complex");
    let mut rot = Check::new("rotation sign");
    let mut idc = Check::new("cone of identity is contractible");
    let search = Config::new(2);
    for n in 1..=3 {
        for i in 0..120 {
            let cat = &cats[i % 2];
            let sigma = AddFunctor::identity(cat.clone());
            let (x, y) = (random_complex(cat, n + 1, rng), random_complex(cat, n + 1, rng));
            let f = random_chain_map(cat, &x, &y, rng);
            let c = mapping_cone(cat, &x, &y, &f).unwrap();
            cone.record(if c.is_complex(cat) && c.len() == n + 2 { Status::Pass } else { Status::Fail }, || {
                format!("n = {n}: cone of {} -> {}", x.show(cat), y.show(cat))
            });

            let (sx, sy) = (random_sigma_complex(cat, n, rng), random_sigma_complex(cat, n, rng));
            let g = random_sigma_morphism(cat, &sigma, &sx, &sy, rng);
            let cc = cone_of_angle_morphism(cat, &sigma, &sx, &sy, &g).unwrap();
            f4.record(if cc.is_complex(cat, &sigma) { Status::Pass } else { Status::Fail }, || {
                format!("n = {n}: {}", sx.show(cat))
            });

            // n + 2 left rotations with Σ = Id scale every map by (-1)^n.
            let sign = if n % 2 == 0 { 1 } else { cat.field().p() - 1 };
            let mut r = sx.clone();
            for _ in 0..n + 2 {
                r = left_rotation(cat, &sigma, &r);
            }
            let scaled = |m: &nexang_core::AddMorphism| cat.scale(sign, m);
            let ok = r.objects == sx.objects
                && r.diffs.iter().zip(&sx.diffs).all(|(a, b)| *a == scaled(b))
                && r.last == scaled(&sx.last)
                && left_rotation(cat, &sigma, &sx).last == scaled(&sx.diffs[0]);
            rot.record(if ok { Status::Pass } else { Status::Fail }, || {
                format!("n = {n}, p = {}: {}", cat.field().p(), sx.show(cat))
            });

            if i % 4 == 0 {
                let id = ComplexMorphism { components: x.objects.iter().map(|o| cat.identity(o)).collect() };
                let c = mapping_cone(cat, &x, &x, &id).unwrap();
                let rep = contractible_on(cat, &x);
                let status = match homotopy_equivalent(cat, &c, &rep, &search) {
                    nexang_core::Search::Found(h) if is_homotopy_equivalence(cat, &c, &rep, &h).unwrap() => Status::Pass,
                    nexang_core::Search::Found(_) | nexang_core::Search::Absent => Status::Fail,
                    nexang_core::Search::Exhausted => Status::Inconclusive,
                };
                idc.record(status, || format!("n = {n}: cone of 1 on {}", x.show(cat)));
            }
        }
    }
    let mut report = Report::new("cone formulas");
    let detail = format!(
        "{} mapping cones, {} F4 cones, {} rotation cycles, {} identity cones; {} failures",
        cone.instances,
        f4.instances,
        rot.instances,
        idc.instances,
        cone.failures + f4.failures + rot.failures + idc.failures
    );
    for c in [cone, f4, rot, idc] {
        report.push(c);
    }
    Outcome { id: 8, title: "formula fidelity", pass: clean(&report), detail, unattainable: None, report }
}

// ---- driver ----

fn suite() -> Vec<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    let steps: Vec<Box<dyn FnOnce(&mut ChaCha8Rng) -> Outcome>> = vec![
        Box::new(criterion_1),
        Box::new(|_| criterion_2()),
        Box::new(|_| criterion_3()),
        Box::new(|_| criterion_4()),
        Box::new(|_| criterion_5()),
        Box::new(|_| criterion_6()),
        Box::new(|_| criterion_7()),
        Box::new(criterion_8),
    ];
    for step in steps {
        let t = Instant::now();
        let o = step(&mut rng);
        eprintln!("criterion {} took {:.1?}", o.id, t.elapsed());
        out.push(o);
    }
    out
}

fn suite_json(outcomes: &[Outcome]) -> String {
    let mut root = Report::new("acceptance");
    for o in outcomes {
        let mut r = o.report.clone();
        r.subject = format!("{}. {}", o.id, r.subject);
        root.child(r);
    }
    serde_json::to_string_pretty(&root).unwrap()
}

fn main() {
    let first = suite();
    let json = suite_json(&first);
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-report.json");
    let _ = std::fs::write(&path, &json);

    let t = Instant::now();
    let second = suite_json(&suite());
    eprintln!("second run took {:.1?}", t.elapsed());
    let same = second == json;

    let mut unexpected = 0;
    for o in &first {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict}  {}: {}", o.id, o.title, o.detail);
        if !o.pass {
            match &o.unattainable {
                Some(why) => println!("    unattainable: {why}"),
                None => unexpected += 1,
            }
        }
        let fails = failure_count(&o.report);
        if !o.pass && fails > 0 && o.unattainable.is_none() {
            eprintln!("{}", o.report.render_text());
        }
    }
    println!(
        "criterion 9: {}  determinism: two runs give {} JSON reports ({} bytes)",
        if same { "PASS" } else { "FAIL" },
        if same { "byte-identical" } else { "different" },
        json.len()
    );
    if !same {
        unexpected += 1;
    }
    println!("report: {}", path.display());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
