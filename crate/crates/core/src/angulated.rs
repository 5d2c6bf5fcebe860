//! Angulations presented by generators, the axioms F1 to F4, and
//! (n+2)-angulated functors.
//!
//! Membership of a Σ-sequence means: isomorphic, as a Σ-sequence, to a
//! finite direct sum of generators. Candidate sums are enumerated through
//! the additive Hom-profile of each degree, filtered by Hom-dimension
//! invariants, and the isomorphism itself is searched in the linear space
//! of Σ-morphisms.

use std::cell::Cell;
use std::sync::Arc;

use rayon::prelude::*;

use crate::category::{AddMorphism, AddObject, BaseCategory};
use crate::complexes::{self, ComplexMorphism, SigmaSequence};
use crate::error::{Error, Result};
use crate::functor::{AddFunctor, EquivalenceWitness, NatTransform};
use crate::homalg;
use crate::linalg::{self, AffineSpace};
use crate::report::{Check, Report, Status};
use crate::search::{self, BlockSystem, Ctx, Search};

/// The suspension Σ together with a quasi-inverse: `witness.f` is Σ and
/// `witness.g` is Σ₋.
#[derive(Clone, Debug)]
pub struct SigmaStructure {
    pub witness: EquivalenceWitness,
    /// Claimed: Σ is an automorphism (the strong case). Verified, never assumed.
    pub strict: bool,
}

impl SigmaStructure {
    pub fn new(witness: EquivalenceWitness, strict: bool) -> Result<Self> {
        if !Arc::ptr_eq(witness.c(), witness.d()) && **witness.c() != **witness.d() {
            return Err(Error::input("Σ must be an endofunctor"));
        }
        Ok(SigmaStructure { witness, strict })
    }

    pub fn identity(cat: Arc<BaseCategory>) -> Self {
        SigmaStructure { witness: EquivalenceWitness::identity(cat), strict: true }
    }

    pub fn sigma(&self) -> &AddFunctor {
        &self.witness.f
    }

    /// Σ is bijective on objects and on every base Hom space.
    pub fn check_strict(&self) -> Check {
        let s = self.sigma();
        let cat = s.src();
        let mut chk = Check::new("Σ automorphism");
        let k = cat.num_objects();
        let mut hit = vec![false; k];
        for a in 0..k {
            let o = s.base_object(a);
            if o.len() != 1 || hit[o[0]] {
                chk.fail(format!("Σ{} = {} breaks object bijectivity", cat.name(a), cat.show_object(o)));
                continue;
            }
            hit[o[0]] = true;
            chk.pass();
        }
        if chk.status == Status::Pass {
            for a in 0..k {
                for b in 0..k {
                    let m = s.base_matrix(a, b);
                    let ok = m.rows() == m.cols() && linalg::rank(cat.field(), m) == m.cols();
                    chk.record(if ok { Status::Pass } else { Status::Fail }, || {
                        format!("Σ is not bijective on Hom({}, {})", cat.name(a), cat.name(b))
                    });
                }
            }
        }
        chk
    }
}

/// A class of (n+2)-Σ-sequences presented by generators.
#[derive(Clone, Debug)]
pub struct Angulation {
    pub n: usize,
    pub sigma: SigmaStructure,
    pub generators: Vec<SigmaSequence>,
}

impl Angulation {
    pub fn new(n: usize, sigma: SigmaStructure, generators: Vec<SigmaSequence>) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("n must be positive"));
        }
        let s = sigma.sigma();
        for (i, g) in generators.iter().enumerate() {
            if g.n() != n {
                return Err(Error::input(format!("generator {i} has length {} instead of {}", g.objects.len(), n + 2)));
            }
            SigmaSequence::new(g.objects.clone(), g.diffs.clone(), g.last.clone(), s)
                .map_err(|e| Error::input(format!("generator {i}: {e}")))?;
        }
        Ok(Angulation { n, sigma, generators })
    }

    pub fn sigma(&self) -> &AddFunctor {
        self.sigma.sigma()
    }
}

/// Hom-profile of a whole sequence, degree after degree; additive in sums.
fn seq_profile(cat: &BaseCategory, s: &SigmaSequence) -> Vec<usize> {
    s.objects.iter().flat_map(|o| cat.profile(o)).collect()
}

/// Dimension of the space of Σ-morphisms `x -> y`.
pub fn sigma_hom_dim(cat: &BaseCategory, sigma: &AddFunctor, x: &SigmaSequence, y: &SigmaSequence) -> usize {
    let (sys, _) = complexes::sigma_morphism_system(cat, sigma, x, y);
    sys.solve(cat.field()).expect("homogeneous").dim()
}

fn sigma_morphism_from(sys_vars: &[usize], parts: &[Vec<u32>], x: &SigmaSequence, y: &SigmaSequence) -> ComplexMorphism {
    ComplexMorphism {
        components: (0..x.objects.len())
            .map(|i| AddMorphism { src: x.objects[i].clone(), tgt: y.objects[i].clone(), coords: parts[sys_vars[i]].clone() })
            .collect(),
    }
}

/// An isomorphism of Σ-sequences `x -> y`.
pub fn find_sigma_iso(ctx: &Ctx, sigma: &AddFunctor, x: &SigmaSequence, y: &SigmaSequence) -> Search<ComplexMorphism> {
    let cat = &ctx.cat;
    if x.objects.len() != y.objects.len() || (0..x.objects.len()).any(|i| !cat.same_profile(&x.objects[i], &y.objects[i])) {
        return Search::Absent;
    }
    let (sys, vars) = complexes::sigma_morphism_system(cat, sigma, x, y);
    let space = sys.solve(cat.field()).expect("homogeneous");
    search::find_iso_point(cat.field(), &space, &ctx.cfg, |v| {
        let parts = sys.split(v);
        vars.iter().enumerate().all(|(i, &var)| {
            cat.is_iso(&AddMorphism { src: x.objects[i].clone(), tgt: y.objects[i].clone(), coords: parts[var].clone() })
        })
    })
    .map(|v| sigma_morphism_from(&vars, &sys.split(&v), x, y))
}

/// Largest number of candidate generator sums tried per membership query.
const SUM_CANDIDATE_CAP: usize = 4096;

/// Multisets of generator indices whose profiles sum to `target`, on the
/// coordinates selected by `mask`.
fn generator_sums(profiles: &[Vec<usize>], target: &[usize], mask: &[bool]) -> Option<Vec<Vec<usize>>> {
    fn rec(
        profiles: &[Vec<usize>],
        mask: &[bool],
        start: usize,
        left: &mut Vec<usize>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        if left.iter().zip(mask).all(|(v, m)| !m || *v == 0) {
            out.push(cur.clone());
            return out.len() <= SUM_CANDIDATE_CAP;
        }
        for g in start..profiles.len() {
            let p = &profiles[g];
            if !p.iter().zip(mask).any(|(v, m)| *m && *v > 0) {
                continue;
            }
            if p.iter().zip(left.iter()).zip(mask).any(|((a, b), m)| *m && a > b) {
                continue;
            }
            for (l, (a, m)) in left.iter_mut().zip(p.iter().zip(mask)) {
                if *m {
                    *l -= a;
                }
            }
            cur.push(g);
            let ok = rec(profiles, mask, g, left, cur, out);
            cur.pop();
            for (l, (a, m)) in left.iter_mut().zip(p.iter().zip(mask)) {
                if *m {
                    *l += a;
                }
            }
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    let mut left = target.to_vec();
    if rec(profiles, mask, 0, &mut left, &mut Vec::new(), &mut out) {
        Some(out)
    } else {
        None
    }
}

/// A membership certificate: the generator multiset and an isomorphism from
/// their direct sum to the queried sequence.
#[derive(Clone, Debug)]
pub struct Membership {
    pub summands: Vec<usize>,
    pub iso: ComplexMorphism,
}

/// Membership in the angulation.
pub fn contains_angle(ctx: &Ctx, t: &Angulation, s: &SigmaSequence) -> Search<Membership> {
    let cat = &ctx.cat;
    let sigma = t.sigma();
    if s.n() != t.n {
        return Search::Absent;
    }
    let profiles: Vec<Vec<usize>> = t.generators.iter().map(|g| seq_profile(cat, g)).collect();
    let target = seq_profile(cat, s);
    let mask = vec![true; target.len()];
    let Some(cands) = generator_sums(&profiles, &target, &mask) else {
        return Search::Exhausted;
    };
    let gen_in: Vec<usize> = t.generators.iter().map(|g| sigma_hom_dim(cat, sigma, g, s)).collect();
    let gen_out: Vec<usize> = t.generators.iter().map(|g| sigma_hom_dim(cat, sigma, s, g)).collect();
    let mut exhausted = false;
    for summands in cands {
        let parts: Vec<&SigmaSequence> = summands.iter().map(|&i| &t.generators[i]).collect();
        let sum = SigmaSequence::direct_sum_all(cat, &parts, t.n, sigma);
        // Hom dimensions against the generators are isomorphism invariants.
        let same =
            t.generators.iter().enumerate().all(|(j, g)| {
                sigma_hom_dim(cat, sigma, g, &sum) == gen_in[j] && sigma_hom_dim(cat, sigma, &sum, g) == gen_out[j]
            });
        if !same {
            continue;
        }
        match find_sigma_iso(ctx, sigma, &sum, s) {
            Search::Found(iso) => return Search::Found(Membership { summands, iso }),
            Search::Exhausted => exhausted = true,
            Search::Absent => {}
        }
    }
    if exhausted {
        Search::Exhausted
    } else {
        Search::Absent
    }
}

/// The right rotation `Σ₋X^{n+1} → X^0 → ... → X^n → ΣΣ₋X^{n+1}`, whose left
/// rotation is isomorphic to `x` through the unit of Σ.
pub fn right_rotation(cat: &BaseCategory, sigma: &SigmaStructure, x: &SigmaSequence) -> Result<SigmaSequence> {
    let n = x.n();
    let fld = cat.field();
    let w = &sigma.witness;
    let s = sigma.sigma();
    let top = &x.objects[n + 1];
    let y0 = w.g.object(top);
    let phi = w.unit_at(top);
    let phi_inv = w.unit_inv_at(top);
    // Σd_Y^0 = (-1)^n d_X^{n+1} Φ⁻¹; Σ is faithful, so d_Y^0 is its unique preimage.
    let want = cat.scale(fld.sign(n), &cat.compose(&x.last, &phi_inv));
    let m = s.hom_matrix(&y0, &x.objects[0]);
    let coords = linalg::solve_linear(fld, &m, &want.coords).ok_or_else(|| Error::input("Σ is not full on this Hom space"))?;
    let d0 = AddMorphism { src: y0.clone(), tgt: x.objects[0].clone(), coords };
    let mut objects = vec![y0];
    objects.extend(x.objects[..=n].iter().cloned());
    let mut diffs = vec![d0];
    diffs.extend(x.diffs[..n].iter().cloned());
    let last = cat.compose(&phi, &x.diffs[n]);
    SigmaSequence::new(objects, diffs, last, s)
}

/// Members whose objects all lie in the universe, as generator sums.
pub fn member_pool(ctx: &Ctx, t: &Angulation) -> Vec<(Vec<usize>, SigmaSequence)> {
    let cat = &ctx.cat;
    let bound = ctx.universe.bound();
    let mut out = Vec::new();
    fn rec(
        ctx: &Ctx,
        t: &Angulation,
        bound: usize,
        start: usize,
        cur: &mut Vec<usize>,
        acc: &SigmaSequence,
        out: &mut Vec<(Vec<usize>, SigmaSequence)>,
    ) {
        out.push((cur.clone(), acc.clone()));
        for g in start..t.generators.len() {
            let gen = &t.generators[g];
            if gen.objects.iter().all(|o| o.is_empty()) {
                continue;
            }
            if acc.objects.iter().zip(&gen.objects).any(|(a, b)| a.len() + b.len() > bound) {
                continue;
            }
            let next = acc.direct_sum(&ctx.cat, gen);
            cur.push(g);
            rec(ctx, t, bound, g, cur, &next, out);
            cur.pop();
        }
    }
    let zero = SigmaSequence::identity_angle(cat, t.sigma(), &[], t.n);
    rec(ctx, t, bound, 0, &mut Vec::new(), &zero, &mut out);
    out
}

fn verdict<T>(s: &Search<T>) -> Status {
    match s {
        Search::Found(_) => Status::Pass,
        Search::Absent => Status::Fail,
        Search::Exhausted => Status::Inconclusive,
    }
}

/// The full axiom report F1 to F4, plus the Σ data.
pub fn check_angulation_axioms(ctx: &Ctx, t: &Angulation) -> Report {
    let cat = &ctx.cat;
    let mut r = Report::new(format!("({})-angulation", t.n + 2));
    let mut sig = t.sigma.witness.validate(Some(&ctx.universe));
    sig.subject = "Σ autoequivalence".into();
    if t.sigma.strict {
        sig.push(t.sigma.check_strict());
    }
    r.child(sig);

    let pool = member_pool(ctx, t);
    r.push(check_f1a_sums(ctx, t, &pool));
    r.push(check_f1a_summands(ctx, t, &pool));

    let mut f1b = Check::new("F1(b)");
    let ids: Vec<Status> = ctx
        .universe
        .objects()
        .par_iter()
        .map(|x| verdict(&contains_angle(ctx, t, &SigmaSequence::identity_angle(cat, t.sigma(), x, t.n))))
        .collect();
    for (x, s) in ctx.universe.objects().iter().zip(ids) {
        f1b.record(s, || format!("identity angle on {} is not a member", cat.show_object(x)));
    }
    r.push(f1b);

    r.push(check_f1c(ctx, t));
    r.push(check_f2(ctx, t));
    let f3 = check_f3(ctx, t, &pool);
    let f4 = check_f4(ctx, t, &pool);
    let mut consistency = Check::new("F4 implies F3");
    consistency.record(if f4.status == Status::Pass && f3.status != Status::Pass { Status::Fail } else { Status::Pass }, || {
        "F4 passed while F3 did not".into()
    });
    r.push(f3);
    r.push(f4);
    r.push(consistency);
    search::flag_vacuous(ctx, &mut r, &["F1(c)", "F3", "F4"]);
    r
}

fn check_f1a_sums(ctx: &Ctx, t: &Angulation, pool: &[(Vec<usize>, SigmaSequence)]) -> Check {
    let cat = &ctx.cat;
    let mut chk = Check::new("F1(a) sums").with_note("finite direct sums; pairs of pool members whose sum stays in the universe");
    let bound = ctx.universe.bound();
    let pairs: Vec<(usize, usize)> = (0..pool.len())
        .flat_map(|i| (i..pool.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| pool[i].1.objects.iter().zip(&pool[j].1.objects).all(|(a, b)| a.len() + b.len() <= bound))
        .collect();
    let res: Vec<Status> =
        pairs.par_iter().map(|&(i, j)| verdict(&contains_angle(ctx, t, &pool[i].1.direct_sum(cat, &pool[j].1)))).collect();
    for (&(i, j), s) in pairs.iter().zip(res) {
        chk.record(s, || format!("sum of members {:?} and {:?} is not a member", pool[i].0, pool[j].0));
    }
    chk
}

/// Summands are images of idempotent Σ-endomorphisms: each idempotent is
/// split degreewise and the image sequence is tested for membership.
fn check_f1a_summands(ctx: &Ctx, t: &Angulation, pool: &[(Vec<usize>, SigmaSequence)]) -> Check {
    let cat = &ctx.cat;
    let fld = cat.field();
    let sigma = t.sigma();
    let mut chk =
        Check::new("F1(a) summands").with_note("summands detected as images of idempotent Σ-endomorphisms of pool members");
    for (label, x) in pool {
        let (sys, vars) = complexes::sigma_morphism_system(cat, sigma, x, x);
        let space = sys.solve(fld).expect("homogeneous");
        let mut idems = Vec::new();
        let complete = search::for_each_point(fld, &space, ctx.cfg.exhaustive_cap, |v| {
            let e = sigma_morphism_from(&vars, &sys.split(v), x, x);
            if e.compose(cat, &e) == e {
                idems.push(e);
            }
            true
        });
        if !complete {
            chk.inconclusive(format!("End of member {label:?} too large to scan"));
            continue;
        }
        let res: Vec<(Status, String)> = idems
            .par_iter()
            .map(|e| match image_sequence(ctx, sigma, x, e) {
                Search::Found(a) => {
                    let s = verdict(&contains_angle(ctx, t, &a));
                    (s, format!("summand {} of member {label:?} is not a member", a.show(cat)))
                }
                Search::Absent => (Status::Fail, format!("an idempotent of member {label:?} does not split")),
                Search::Exhausted => {
                    (Status::Inconclusive, format!("splitting an idempotent of member {label:?} exceeded the bound"))
                }
            })
            .collect();
        for (s, msg) in res {
            chk.record(s, || msg);
        }
    }
    chk
}

/// Splits each component of the idempotent `e` and restricts `x` to the image.
fn image_sequence(ctx: &Ctx, sigma: &AddFunctor, x: &SigmaSequence, e: &ComplexMorphism) -> Search<SigmaSequence> {
    let cat = &ctx.cat;
    let mut rs = Vec::new();
    let mut ss = Vec::new();
    for c in &e.components {
        match homalg::search_idempotent_splitting(ctx, c).expect("components of an idempotent are idempotent") {
            Search::Found((r, s)) => {
                rs.push(r);
                ss.push(s);
            }
            Search::Absent => return Search::Absent,
            Search::Exhausted => return Search::Exhausted,
        }
    }
    let m = x.objects.len();
    let diffs = (0..m - 1).map(|i| cat.compose_all(&[&rs[i + 1], &x.diffs[i], &ss[i]])).collect();
    let last = cat.compose_all(&[&sigma.morphism(&rs[0]), &x.last, &ss[m - 1]]);
    Search::Found(SigmaSequence { objects: rs.iter().map(|r| r.tgt.clone()).collect(), diffs, last })
}

/// Every universe morphism is the first map of a member. Members with the
/// right first two objects are found through the linear system
/// `d_M^0 α = β f` and an invertible solution `(α, β)`.
fn check_f1c(ctx: &Ctx, t: &Angulation) -> Check {
    let cat = &ctx.cat;
    let mut chk = Check::new("F1(c)");
    let morphisms = homalg::universe_morphisms(ctx);
    let res: Vec<Status> = morphisms.par_iter().map(|f| verdict(&first_map_member(ctx, t, f))).collect();
    for (f, s) in morphisms.iter().zip(res) {
        chk.record(s, || format!("{} is not the first map of any member", cat.show_morphism(f)));
    }
    chk
}

/// A member whose first map is exactly `f`.
pub fn first_map_member(ctx: &Ctx, t: &Angulation, f: &AddMorphism) -> Search<SigmaSequence> {
    let cat = &ctx.cat;
    let fld = cat.field();
    let sigma = t.sigma();
    let profiles: Vec<Vec<usize>> = t.generators.iter().map(|g| seq_profile(cat, g)).collect();
    let plen = cat.profile(&[]).len();
    let mut target = vec![0; plen * (t.n + 2)];
    target[..plen].copy_from_slice(&cat.profile(&f.src));
    target[plen..2 * plen].copy_from_slice(&cat.profile(&f.tgt));
    let mask: Vec<bool> = (0..target.len()).map(|i| i < 2 * plen).collect();
    let Some(cands) = generator_sums(&profiles, &target, &mask) else {
        return Search::Exhausted;
    };
    let mut exhausted = false;
    for summands in cands {
        let parts: Vec<&SigmaSequence> = summands.iter().map(|&i| &t.generators[i]).collect();
        let m = SigmaSequence::direct_sum_all(cat, &parts, t.n, sigma);
        let (x, y) = (&f.src, &f.tgt);
        let mut sys = BlockSystem::new();
        let va = sys.var(cat.hom_dim(x, &m.objects[0]));
        let vb = sys.var(cat.hom_dim(y, &m.objects[1]));
        let e = sys.eq(cat.hom_dim(x, &m.objects[1]));
        sys.term(e, va, cat.post_matrix(&m.diffs[0], x));
        sys.term(e, vb, cat.pre_matrix(f, &m.objects[1]).scale(fld, fld.neg(1)));
        let space = sys.solve(fld).expect("homogeneous");
        let build = |v: &[u32]| {
            let p = sys.split(v);
            (
                AddMorphism { src: x.clone(), tgt: m.objects[0].clone(), coords: p[va].clone() },
                AddMorphism { src: y.clone(), tgt: m.objects[1].clone(), coords: p[vb].clone() },
            )
        };
        match search::find_iso_point(fld, &space, &ctx.cfg, |v| {
            let (a, b) = build(v);
            cat.is_iso(&a) && cat.is_iso(&b)
        }) {
            Search::Found(v) => {
                let (a, b) = build(&v);
                let mut phi: Vec<AddMorphism> = m.objects.iter().map(|o| cat.identity(o)).collect();
                phi[0] = cat.inverse(&a).unwrap();
                phi[1] = cat.inverse(&b).unwrap();
                let conj = m.conjugate(cat, sigma, &phi);
                debug_assert_eq!(conj.diffs[0], *f);
                return Search::Found(conj);
            }
            Search::Exhausted => exhausted = true,
            Search::Absent => {}
        }
    }
    if exhausted {
        Search::Exhausted
    } else {
        Search::Absent
    }
}

/// A member `A -> ... -> C -h-> ΣA` whose end terms are exactly `a` and
/// `h.src` and whose last map is exactly `h`.
pub fn last_map_member(ctx: &Ctx, t: &Angulation, a: &[usize], h: &AddMorphism) -> Search<SigmaSequence> {
    let cat = &ctx.cat;
    let fld = cat.field();
    let sigma = t.sigma();
    if h.tgt != sigma.object(a) {
        return Search::Absent;
    }
    let c = &h.src;
    let m = t.n + 2;
    let profiles: Vec<Vec<usize>> = t.generators.iter().map(|g| seq_profile(cat, g)).collect();
    let plen = cat.profile(&[]).len();
    let mut target = vec![0; plen * m];
    target[..plen].copy_from_slice(&cat.profile(a));
    target[plen * (m - 1)..].copy_from_slice(&cat.profile(c));
    let mask: Vec<bool> = (0..target.len()).map(|i| i < plen || i >= plen * (m - 1)).collect();
    let Some(cands) = generator_sums(&profiles, &target, &mask) else {
        return Search::Exhausted;
    };
    let mut exhausted = false;
    for summands in cands {
        let parts: Vec<&SigmaSequence> = summands.iter().map(|&i| &t.generators[i]).collect();
        let mm = SigmaSequence::direct_sum_all(cat, &parts, t.n, sigma);
        let (m0, ml) = (&mm.objects[0], &mm.objects[m - 1]);
        let sm0 = sigma.object(m0);
        let mut sys = BlockSystem::new();
        let va = sys.var(cat.hom_dim(a, m0));
        let vg = sys.var(cat.hom_dim(c, ml));
        // last_M γ - (Σα) h = 0
        let e = sys.eq(cat.hom_dim(c, &sm0));
        sys.term(e, vg, cat.post_matrix(&mm.last, c));
        sys.term(e, va, cat.pre_matrix(h, &sm0).mul(fld, &sigma.hom_matrix(a, m0)).scale(fld, fld.neg(1)));
        let space = sys.solve(fld).expect("homogeneous");
        let build = |v: &[u32]| {
            let p = sys.split(v);
            (
                AddMorphism { src: a.to_vec(), tgt: m0.clone(), coords: p[va].clone() },
                AddMorphism { src: c.clone(), tgt: ml.clone(), coords: p[vg].clone() },
            )
        };
        match search::find_iso_point(fld, &space, &ctx.cfg, |v| {
            let (al, ga) = build(v);
            cat.is_iso(&al) && cat.is_iso(&ga)
        }) {
            Search::Found(v) => {
                let (al, ga) = build(&v);
                let mut phi: Vec<AddMorphism> = mm.objects.iter().map(|o| cat.identity(o)).collect();
                phi[0] = cat.inverse(&al).unwrap();
                phi[m - 1] = cat.inverse(&ga).unwrap();
                let conj = mm.conjugate(cat, sigma, &phi);
                debug_assert_eq!(conj.last, *h);
                return Search::Found(conj);
            }
            Search::Exhausted => exhausted = true,
            Search::Absent => {}
        }
    }
    if exhausted {
        Search::Exhausted
    } else {
        Search::Absent
    }
}

/// Rotation in both directions, on generators: membership is closed under
/// sums and isomorphisms, and both rotations commute with them.
fn check_f2(ctx: &Ctx, t: &Angulation) -> Check {
    let cat = &ctx.cat;
    let mut chk = Check::new("F2").with_note("tested on generators; rotations commute with sums and isomorphisms");
    let res: Vec<(Status, Status)> = t
        .generators
        .par_iter()
        .map(|g| {
            let left = verdict(&contains_angle(ctx, t, &complexes::left_rotation(cat, t.sigma(), g)));
            let right = match right_rotation(cat, &t.sigma, g) {
                Ok(r) => verdict(&contains_angle(ctx, t, &r)),
                Err(_) => Status::Fail,
            };
            (left, right)
        })
        .collect();
    for (i, (l, r)) in res.into_iter().enumerate() {
        chk.record(l, || format!("left rotation of generator {i} is not a member"));
        chk.record(r, || format!("right rotation of generator {i} is not a member"));
    }
    chk
}

/// The linear space of commuting pairs `(f^0, f^1)` with `d_Y^0 f^0 = f^1 d_X^0`.
fn commuting_pairs(cat: &BaseCategory, x: &SigmaSequence, y: &SigmaSequence) -> (BlockSystem, AffineSpace, usize, usize) {
    let fld = cat.field();
    let mut sys = BlockSystem::new();
    let v0 = sys.var(cat.hom_dim(&x.objects[0], &y.objects[0]));
    let v1 = sys.var(cat.hom_dim(&x.objects[1], &y.objects[1]));
    let e = sys.eq(cat.hom_dim(&x.objects[0], &y.objects[1]));
    sys.term(e, v0, cat.post_matrix(&y.diffs[0], &x.objects[0]));
    sys.term(e, v1, cat.pre_matrix(&x.diffs[0], &y.objects[1]).scale(fld, fld.neg(1)));
    let space = sys.solve(fld).expect("homogeneous");
    (sys, space, v0, v1)
}

/// Every commuting pair extends to a Σ-morphism iff the projection of the
/// Σ-morphism space onto `(f^0, f^1)` has the dimension of the pair space.
fn check_f3(ctx: &Ctx, t: &Angulation, pool: &[(Vec<usize>, SigmaSequence)]) -> Check {
    let cat = &ctx.cat;
    let fld = cat.field();
    let sigma = t.sigma();
    let mut chk = Check::new("F3").with_note("pool members represent every member in the universe up to isomorphism");
    let pairs: Vec<(usize, usize)> = (0..pool.len()).flat_map(|i| (0..pool.len()).map(move |j| (i, j))).collect();
    let res: Vec<Status> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (&pool[i].1, &pool[j].1);
            let (sys, vars) = complexes::sigma_morphism_system(cat, sigma, x, y);
            let full = sys.solve(fld).expect("homogeneous");
            let reach = search::projected_rank(fld, &full, &[sys.range(vars[0]), sys.range(vars[1])]);
            let (_, pairs, _, _) = commuting_pairs(cat, x, y);
            if reach == pairs.dim() {
                Status::Pass
            } else {
                Status::Fail
            }
        })
        .collect();
    for (&(i, j), s) in pairs.iter().zip(res) {
        chk.record(s, || format!("some commuting (f^0, f^1) from member {:?} to {:?} has no completion", pool[i].0, pool[j].0));
    }
    chk
}

/// F4: for every commuting pair some completion has its cone in the class.
fn check_f4(ctx: &Ctx, t: &Angulation, pool: &[(Vec<usize>, SigmaSequence)]) -> Check {
    let cat = &ctx.cat;
    let mut chk = Check::new("F4").with_note("pool members represent every member in the universe up to isomorphism");
    let pairs: Vec<(usize, usize)> = (0..pool.len()).flat_map(|i| (0..pool.len()).map(move |j| (i, j))).collect();
    let res: Vec<Vec<(Status, String)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (&pool[i].1, &pool[j].1);
            let (psys, pspace, v0, v1) = commuting_pairs(cat, x, y);
            let mut out = Vec::new();
            let complete = search::for_each_point(cat.field(), &pspace, ctx.cfg.exhaustive_cap, |v| {
                let p = psys.split(v);
                let f0 = AddMorphism { src: x.objects[0].clone(), tgt: y.objects[0].clone(), coords: p[v0].clone() };
                let f1 = AddMorphism { src: x.objects[1].clone(), tgt: y.objects[1].clone(), coords: p[v1].clone() };
                let s = good_completion(ctx, t, x, y, &f0, &f1);
                let msg = format!(
                    "members {:?} -> {:?}, f^0 = {:?}, f^1 = {:?}: no completion with cone in the class",
                    pool[i].0, pool[j].0, f0.coords, f1.coords
                );
                out.push((verdict(&s), msg));
                true
            });
            if !complete {
                out.push((Status::Inconclusive, format!("too many commuting pairs {:?} -> {:?}", pool[i].0, pool[j].0)));
            }
            out
        })
        .collect();
    for (s, msg) in res.into_iter().flatten() {
        chk.record(s, || msg);
    }
    chk
}

/// A completion of `(f0, f1)` whose F4 cone is a member.
pub fn good_completion(
    ctx: &Ctx,
    t: &Angulation,
    x: &SigmaSequence,
    y: &SigmaSequence,
    f0: &AddMorphism,
    f1: &AddMorphism,
) -> Search<ComplexMorphism> {
    let cat = &ctx.cat;
    let fld = cat.field();
    let sigma = t.sigma();
    let (mut sys, vars) = complexes::sigma_morphism_system(cat, sigma, x, y);
    sys.fix(fld, vars[0], &f0.coords);
    sys.fix(fld, vars[1], &f1.coords);
    let Some(space) = sys.solve(fld) else {
        return Search::Absent;
    };
    let undecided = Cell::new(false);
    let found = search::find_point(fld, &space, &ctx.cfg, |v| {
        let f = sigma_morphism_from(&vars, &sys.split(v), x, y);
        let cone = complexes::cone_of_angle_morphism(cat, sigma, x, y, &f).expect("equal lengths");
        match contains_angle(ctx, t, &cone) {
            Search::Found(_) => true,
            Search::Exhausted => {
                undecided.set(true);
                false
            }
            Search::Absent => false,
        }
    });
    match found {
        Search::Found(v) => Search::Found(sigma_morphism_from(&vars, &sys.split(&v), x, y)),
        Search::Absent if undecided.get() => Search::Exhausted,
        other => other.map(|_| unreachable!()),
    }
}

/// An additive functor with a natural isomorphism `Θ: FΣ ⇒ Σ′F`.
#[derive(Clone, Debug)]
pub struct AngulatedFunctorWitness {
    pub functor: Arc<AddFunctor>,
    /// `Θ_a: FΣa -> Σ′Fa` for every base object `a` of the source.
    pub theta: Vec<AddMorphism>,
}

impl AngulatedFunctorWitness {
    /// Θ as a natural transformation between the two composites.
    pub fn theta_transform(&self, src: &Angulation, dst: &Angulation) -> Result<NatTransform> {
        let f_sigma = Arc::new(src.sigma().then(&self.functor));
        let sigma_f = Arc::new(self.functor.then(dst.sigma()));
        NatTransform::new(f_sigma, sigma_f, self.theta.clone())
    }

    /// `FX^0 → ... → FX^{n+1} → Σ′FX^0` with last map `Θ_{X^0} ∘ Fd^{n+1}`.
    pub fn image(&self, dst_cat: &BaseCategory, theta: &NatTransform, x: &SigmaSequence) -> SigmaSequence {
        let f = &self.functor;
        SigmaSequence {
            objects: x.objects.iter().map(|o| f.object(o)).collect(),
            diffs: x.diffs.iter().map(|d| f.morphism(d)).collect(),
            last: dst_cat.compose(&theta.at(&x.objects[0]), &f.morphism(&x.last)),
        }
    }
}

/// Is `(F, Θ)` an (n+2)-angulated functor from `src` to `dst`.
pub fn check_angulated_functor(dst_ctx: &Ctx, w: &AngulatedFunctorWitness, src: &Angulation, dst: &Angulation) -> Report {
    let cat = &dst_ctx.cat;
    let mut r = Report::new("(n+2)-angulated functor");
    let mut laws = w.functor.validate();
    laws.name = "F functor laws".into();
    r.push(laws);
    let theta = match w.theta_transform(src, dst) {
        Ok(th) => th,
        Err(e) => {
            let mut c = Check::new("Θ natural");
            c.fail(e.to_string());
            r.push(c);
            return r;
        }
    };
    let mut nat = theta.validate();
    nat.name = "Θ natural".into();
    r.push(nat);
    let mut inv = theta.invertibility();
    inv.name = "Θ invertible".into();
    r.push(inv);
    let mut img = Check::new("image angles").with_note("generators suffice: F and Θ respect sums and isomorphisms");
    let res: Vec<Status> =
        src.generators.par_iter().map(|g| verdict(&contains_angle(dst_ctx, dst, &w.image(cat, &theta, g)))).collect();
    for (i, s) in res.into_iter().enumerate() {
        img.record(s, || format!("image of generator {i} is not an angle of the target"));
    }
    r.push(img);
    r
}

/// Objects reachable from `x` under Σ, for diagnostics.
pub fn sigma_orbit(sigma: &AddFunctor, x: &[usize], steps: usize) -> Vec<AddObject> {
    let mut out = vec![x.to_vec()];
    for _ in 0..steps {
        let next = sigma.object(out.last().unwrap());
        out.push(next);
    }
    out
}
