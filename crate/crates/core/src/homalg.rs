//! n-kernels, n-cokernels, n-exact sequences, n-pushouts, and the n-exact
//! and n-abelian axiom suites.
//!
//! Hom-exactness is tested against base objects only: `Hom(Z, -)` is
//! additive in `Z`, so exactness for every base `Z` gives it for every
//! object of the additive closure.

use rayon::prelude::*;

use crate::category::{AddMorphism, AddObject, BaseCategory};
use crate::complexes::{self, Complex, ComplexMorphism};
use crate::error::{Error, Result};
use crate::functor::AddFunctor;
use crate::linalg::{self, AffineSpace, LinearSeq};
use crate::report::{Check, Report, Status};
use crate::search::{self, BlockSystem, Ctx, Search};

/// `0 -> Hom(z, X^0) -> ... -> Hom(z, X^m)`.
pub fn covariant_seq(cat: &BaseCategory, z: usize, x: &Complex) -> LinearSeq {
    let mut dims = vec![0];
    dims.extend(x.objects.iter().map(|o| cat.hom_dim(&[z], o)));
    let mut maps = vec![linalg::Matrix::zeros(dims[1], 0)];
    maps.extend(x.diffs.iter().map(|d| cat.post_matrix(d, &[z])));
    LinearSeq::new(dims, maps).expect("Hom sequence shapes are consistent")
}

/// `0 -> Hom(X^m, z) -> ... -> Hom(X^0, z)`.
pub fn contravariant_seq(cat: &BaseCategory, z: usize, x: &Complex) -> LinearSeq {
    let mut dims = vec![0];
    dims.extend(x.objects.iter().rev().map(|o| cat.hom_dim(o, &[z])));
    let mut maps = vec![linalg::Matrix::zeros(dims[1], 0)];
    maps.extend(x.diffs.iter().rev().map(|d| cat.pre_matrix(d, &[z])));
    LinearSeq::new(dims, maps).expect("Hom sequence shapes are consistent")
}

/// `(d^0, ..., d^{m-2})` is an n-kernel of `d^{m-1}`.
pub fn is_n_kernel(cat: &BaseCategory, x: &Complex) -> bool {
    (0..cat.num_objects()).all(|z| covariant_seq(cat, z, x).is_exact(cat.field()))
}

/// `(d^1, ..., d^{m-1})` is an n-cokernel of `d^0`.
pub fn is_n_cokernel(cat: &BaseCategory, x: &Complex) -> bool {
    (0..cat.num_objects()).all(|z| contravariant_seq(cat, z, x).is_exact(cat.field()))
}

pub fn is_n_exact(cat: &BaseCategory, x: &Complex) -> bool {
    x.is_complex(cat) && is_n_kernel(cat, x) && is_n_cokernel(cat, x)
}

/// First failing base object and direction, for witness reports.
pub fn exactness_defect(cat: &BaseCategory, x: &Complex) -> Option<String> {
    let f = cat.field();
    for z in 0..cat.num_objects() {
        if let Some(i) = covariant_seq(cat, z, x).first_inexact(f) {
            return Some(format!("Hom({}, -) inexact at degree {}", cat.name(z), i - 1));
        }
        if let Some(i) = contravariant_seq(cat, z, x).first_inexact(f) {
            return Some(format!("Hom(-, {}) inexact at degree {}", cat.name(z), x.len() - i));
        }
    }
    None
}

/// Is `f: x -> y` (chains `X^0..X^n`) an n-pushout: in `MC(f)` the maps
/// `(d_C^0, ..., d_C^{n-1})` form an n-cokernel of `d_C^{-1}`.
pub fn is_n_pushout(cat: &BaseCategory, x: &Complex, y: &Complex, f: &ComplexMorphism) -> Result<bool> {
    if !complexes::is_chain_map(cat, x, y, f) {
        return Err(Error::input("n-pushout data is not a morphism of complexes"));
    }
    let cone = complexes::mapping_cone(cat, x, y, f)?;
    Ok(is_n_cokernel(cat, &cone))
}

/// Is `g: z -> x` an n-pullback: in `MC(g)` the maps `(d_C^{-1}, ..., d_C^{n-2})`
/// form an n-kernel of `d_C^{n-1}`.
pub fn is_n_pullback(cat: &BaseCategory, z: &Complex, x: &Complex, g: &ComplexMorphism) -> Result<bool> {
    if !complexes::is_chain_map(cat, z, x, g) {
        return Err(Error::input("n-pullback data is not a morphism of complexes"));
    }
    let cone = complexes::mapping_cone(cat, z, x, g)?;
    Ok(is_n_kernel(cat, &cone))
}

/// `dim ker Hom(m, z)` for every base `z`.
fn contra_kernel_dims(cat: &BaseCategory, m: &AddMorphism) -> Vec<usize> {
    (0..cat.num_objects())
        .map(|z| {
            let pm = cat.pre_matrix(m, &[z]);
            pm.cols() - linalg::rank(cat.field(), &pm)
        })
        .collect()
}

fn contra_ranks(cat: &BaseCategory, m: &AddMorphism) -> Vec<usize> {
    (0..cat.num_objects()).map(|z| linalg::rank(cat.field(), &cat.pre_matrix(m, &[z]))).collect()
}

fn contra_profile(cat: &BaseCategory, x: &[usize]) -> Vec<usize> {
    (0..cat.num_objects()).map(|z| cat.hom_dim(x, &[z])).collect()
}

/// Candidate objects whose contravariant profile dominates `need`
/// (equals it when `exact`), in universe order.
fn candidates<'a>(ctx: &'a Ctx, need: &'a [usize], exact: bool) -> impl Iterator<Item = &'a AddObject> + 'a {
    ctx.witness.objects().iter().filter(move |o| {
        let p = contra_profile(&ctx.cat, o);
        if exact {
            p == need
        } else {
            p.iter().zip(need).all(|(a, b)| a >= b)
        }
    })
}

/// Node budget of the depth-first completion searches.
const DFS_BUDGET: usize = 400;

/// Searches an n-cokernel `(d^1, ..., d^n)` of `u` with objects in the
/// witness window, smallest objects first.
pub fn search_n_cokernel(ctx: &Ctx, u: &AddMorphism, n: usize) -> Search<Vec<AddMorphism>> {
    let mut chain = vec![u.clone()];
    let mut budget = DFS_BUDGET;
    match coker_dfs(ctx, &mut chain, n, &mut budget) {
        Search::Found(()) => Search::Found(chain[1..].to_vec()),
        Search::Absent => Search::Absent,
        Search::Exhausted => Search::Exhausted,
    }
}

fn coker_dfs(ctx: &Ctx, chain: &mut Vec<AddMorphism>, remaining: usize, budget: &mut usize) -> Search<()> {
    let cat = &ctx.cat;
    let f = cat.field();
    let last = chain.last().unwrap().clone();
    let need = contra_kernel_dims(cat, &last);
    if need.iter().all(|&d| d == 0) {
        let mut prev = last.tgt.clone();
        for _ in 0..remaining {
            chain.push(cat.zero(&prev, &[]));
            prev = Vec::new();
        }
        return Search::Found(());
    }
    if remaining == 0 {
        return Search::Absent;
    }
    let mut exhausted = false;
    let objs: Vec<AddObject> = candidates(ctx, &need, remaining == 1).cloned().collect();
    for e_obj in objs {
        if *budget == 0 {
            return Search::Exhausted;
        }
        *budget -= 1;
        let m = cat.pre_matrix(&last, &e_obj);
        let space = AffineSpace { particular: vec![0; m.cols()], basis: linalg::kernel_basis(f, &m) };
        let found = search::find_point(f, &space, &ctx.cfg, |v| {
            let e = AddMorphism { src: last.tgt.clone(), tgt: e_obj.clone(), coords: v.to_vec() };
            contra_ranks(cat, &e) == need
        });
        match found {
            Search::Found(v) => {
                let len = chain.len();
                chain.push(AddMorphism { src: last.tgt.clone(), tgt: e_obj.clone(), coords: v });
                match coker_dfs(ctx, chain, remaining - 1, budget) {
                    Search::Found(()) => return Search::Found(()),
                    Search::Exhausted => exhausted = true,
                    Search::Absent => {}
                }
                chain.truncate(len);
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

/// Searches an n-kernel `(d^0, ..., d^{n-1})` of `u`, via the opposite category.
pub fn search_n_kernel(ctx: &Ctx, u: &AddMorphism, n: usize) -> Search<Vec<AddMorphism>> {
    let op = ctx.opposite();
    let u_op = ctx.cat.op_morphism(u);
    search_n_cokernel(&op, &u_op, n).map(|maps| maps.iter().rev().map(|m| op.cat.op_morphism(m)).collect())
}

/// An n-exact structure presented by generators; the admissible class is
/// the closure of the generators under weak-isomorphism zigzags of the
/// configured depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactStructure {
    pub n: usize,
    pub generators: Vec<Complex>,
}

impl ExactStructure {
    pub fn new(n: usize, generators: Vec<Complex>) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("n must be positive"));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.len() != n + 2 {
                return Err(Error::input(format!("generator {i} does not have n + 2 objects")));
            }
        }
        Ok(ExactStructure { n, generators })
    }

    /// Every generator must be an n-exact sequence.
    pub fn validate(&self, cat: &BaseCategory) -> Check {
        let mut chk = Check::new("generators n-exact");
        for (i, g) in self.generators.iter().enumerate() {
            if is_n_exact(cat, g) {
                chk.pass();
            } else {
                chk.fail(format!("generator {i} is not n-exact: {}", exactness_defect(cat, g).unwrap_or_default()));
            }
        }
        chk
    }

    pub fn opposite(&self, cat: &BaseCategory) -> ExactStructure {
        ExactStructure { n: self.n, generators: self.generators.iter().map(|g| g.opposite(cat)).collect() }
    }
}

/// A weak isomorphism between `x` and `y` in either direction.
pub fn weakly_isomorphic(ctx: &Ctx, x: &Complex, y: &Complex) -> Search<ComplexMorphism> {
    let a = weak_iso_directed(ctx, x, y);
    if a.is_found() {
        return a;
    }
    let b = weak_iso_directed(ctx, y, x);
    match (a, b) {
        (_, Search::Found(f)) => Search::Found(f),
        (Search::Exhausted, _) | (_, Search::Exhausted) => Search::Exhausted,
        _ => Search::Absent,
    }
}

fn weak_iso_directed(ctx: &Ctx, x: &Complex, y: &Complex) -> Search<ComplexMorphism> {
    let cat = &ctx.cat;
    let m = x.len();
    if y.len() != m {
        return Search::Absent;
    }
    let same: Vec<bool> = (0..m).map(|i| cat.same_profile(&x.objects[i], &y.objects[i])).collect();
    let pairs: Vec<usize> = (0..m).filter(|&i| same[i] && same[(i + 1) % m]).collect();
    if pairs.is_empty() {
        return Search::Absent;
    }
    let Some((space, sys)) = complexes::chain_maps(cat, x, y, &[]) else {
        return Search::Absent;
    };
    search::find_point(cat.field(), &space, &ctx.cfg, |v| {
        let f = complexes::components_from(&sys, x, y, v);
        pairs.iter().any(|&i| cat.is_iso(&f.components[i]) && cat.is_iso(&f.components[(i + 1) % m]))
    })
    .map(|v| complexes::components_from(&sys, x, y, &v))
}

/// Membership in the admissible class.
pub fn is_admissible(ctx: &Ctx, xs: &ExactStructure, x: &Complex) -> Search<()> {
    if x.len() != xs.n + 2 || !is_n_exact(&ctx.cat, x) {
        return Search::Absent;
    }
    let mut exhausted = false;
    for g in &xs.generators {
        match weakly_isomorphic(ctx, x, g) {
            Search::Found(_) => return Search::Found(()),
            Search::Exhausted => exhausted = true,
            Search::Absent => {}
        }
    }
    if ctx.cfg.zigzag_depth > 1 {
        return zigzag_closure(ctx, xs, x);
    }
    if exhausted {
        Search::Exhausted
    } else {
        Search::Absent
    }
}

/// Largest pool of universe sequences enumerated for zigzags deeper than 1.
const ZIGZAG_POOL_CAP: u64 = 1 << 14;

/// Breadth-first search through n-exact universe sequences connected by
/// weak isomorphisms, up to the configured depth.
fn zigzag_closure(ctx: &Ctx, xs: &ExactStructure, x: &Complex) -> Search<()> {
    let Some(pool) = exact_pool(ctx, xs.n) else {
        return Search::Exhausted;
    };
    let mut reached: Vec<bool> = vec![false; pool.len()];
    let mut frontier: Vec<usize> = Vec::new();
    for (i, p) in pool.iter().enumerate() {
        if xs.generators.iter().any(|g| weakly_isomorphic(ctx, p, g).is_found()) {
            reached[i] = true;
            frontier.push(i);
        }
    }
    for _ in 1..ctx.cfg.zigzag_depth {
        if pool.iter().enumerate().any(|(i, p)| reached[i] && p == x) {
            return Search::Found(());
        }
        let mut next = Vec::new();
        for (j, p) in pool.iter().enumerate() {
            if !reached[j] && frontier.iter().any(|&i| weakly_isomorphic(ctx, &pool[i], p).is_found()) {
                reached[j] = true;
                next.push(j);
            }
        }
        frontier = next;
    }
    if pool.iter().enumerate().any(|(i, p)| reached[i] && weakly_isomorphic(ctx, x, p).is_found()) {
        Search::Found(())
    } else {
        Search::Absent
    }
}

/// All n-exact sequences with objects in the universe, if few enough.
fn exact_pool(ctx: &Ctx, n: usize) -> Option<Vec<Complex>> {
    let cat = &ctx.cat;
    let objs = ctx.universe.objects();
    let mut out = Vec::new();
    let mut total: u64 = 0;
    let mut stack: Vec<Vec<AddMorphism>> = objs
        .iter()
        .flat_map(|a| objs.iter().flat_map(move |b| cat.hom_elements(a, b).map(|f| vec![f]).collect::<Vec<_>>()))
        .collect();
    while let Some(chain) = stack.pop() {
        total += 1;
        if total > ZIGZAG_POOL_CAP {
            return None;
        }
        if chain.len() == n + 1 {
            let c = Complex::from_diffs(chain);
            if is_n_exact(cat, &c) {
                out.push(c);
            }
            continue;
        }
        let last = chain.last().unwrap().tgt.clone();
        for b in objs {
            for g in cat.hom_elements(&last, b) {
                if cat.is_zero(&cat.compose(&g, chain.last().unwrap())) {
                    let mut c = chain.clone();
                    c.push(g);
                    stack.push(c);
                }
            }
        }
    }
    Some(out)
}

/// Is `d` an admissible monomorphism? Completes `d` by an n-cokernel; all
/// such completions are weakly isomorphic, so one suffices.
pub fn is_admissible_mono(ctx: &Ctx, xs: &ExactStructure, d: &AddMorphism) -> Search<Complex> {
    let cat = &ctx.cat;
    if !cat.is_mono(d) {
        return Search::Absent;
    }
    let tail = match search_n_cokernel(ctx, d, xs.n) {
        Search::Found(t) => t,
        _ => return Search::Exhausted,
    };
    let mut diffs = vec![d.clone()];
    diffs.extend(tail);
    let x = Complex::from_diffs(diffs);
    if !is_n_exact(cat, &x) {
        return Search::Absent;
    }
    is_admissible(ctx, xs, &x).map(|_| x)
}

/// Searches an n-pushout of `(d_X^0, ..., d_X^{n-1})` along `f0`, degree by
/// degree; `accept` filters complete candidates.
pub fn search_n_pushout_completion(
    ctx: &Ctx,
    x: &Complex,
    n: usize,
    f0: &AddMorphism,
    accept: &(dyn Fn(&Complex, &ComplexMorphism) -> Search<()> + Sync),
) -> Search<(Complex, ComplexMorphism)> {
    let cat = &ctx.cat;
    if f0.src != x.objects[0] {
        return Search::Absent;
    }
    let neg = cat.neg(&x.diffs[0]);
    let first =
        cat.from_parts(&[x.objects[1].clone(), f0.tgt.clone()], &[x.objects[0].clone()], &[vec![Some(&neg)], vec![Some(f0)]]);
    let mut st = PushoutState { ys: vec![f0.tgt.clone()], dys: Vec::new(), fs: vec![f0.clone()], cone: vec![first] };
    let mut budget = DFS_BUDGET;
    let mut result = None;
    let s = pushout_dfs(ctx, x, n, &mut st, &mut budget, accept, &mut result);
    match s {
        Search::Found(()) => Search::Found(result.expect("found result is recorded")),
        Search::Absent => Search::Absent,
        Search::Exhausted => Search::Exhausted,
    }
}

struct PushoutState {
    ys: Vec<AddObject>,
    dys: Vec<AddMorphism>,
    fs: Vec<AddMorphism>,
    cone: Vec<AddMorphism>,
}

fn pushout_dfs(
    ctx: &Ctx,
    x: &Complex,
    n: usize,
    st: &mut PushoutState,
    budget: &mut usize,
    accept: &(dyn Fn(&Complex, &ComplexMorphism) -> Search<()> + Sync),
    result: &mut Option<(Complex, ComplexMorphism)>,
) -> Search<()> {
    let cat = &ctx.cat;
    let fld = cat.field();
    let k = st.ys.len();
    if k == n + 1 {
        let y = Complex { objects: st.ys.clone(), diffs: st.dys.clone() };
        let f = ComplexMorphism { components: st.fs.clone() };
        return match accept(&y, &f) {
            Search::Found(()) => {
                *result = Some((y, f));
                Search::Found(())
            }
            other => other,
        };
    }
    let prev = st.cone.last().unwrap().clone();
    let need = contra_kernel_dims(cat, &prev);
    let last_step = k == n;
    let mut exhausted = false;
    for yk in ctx.witness.objects() {
        let ck: AddObject = if last_step { yk.clone() } else { [x.objects[k + 1].clone(), yk.clone()].concat() };
        let prof = contra_profile(cat, &ck);
        if last_step && prof != need || prof.iter().zip(&need).any(|(a, b)| a < b) {
            continue;
        }
        if *budget == 0 {
            return Search::Exhausted;
        }
        *budget -= 1;
        let yprev = st.ys[k - 1].clone();
        let mut sys = BlockSystem::new();
        let vf = sys.var(cat.hom_dim(&x.objects[k], yk));
        let vd = sys.var(cat.hom_dim(&yprev, yk));
        // f^k d_X^{k-1} - d f^{k-1} = 0
        let e1 = sys.eq(cat.hom_dim(&x.objects[k - 1], yk));
        sys.term(e1, vf, cat.pre_matrix(&x.diffs[k - 1], yk));
        sys.term(e1, vd, cat.pre_matrix(&st.fs[k - 1], yk).scale(fld, fld.neg(1)));
        if k >= 2 {
            let e2 = sys.eq(cat.hom_dim(&st.ys[k - 2], yk));
            sys.term(e2, vd, cat.pre_matrix(&st.dys[k - 2], yk));
        }
        let space = sys.solve(fld).expect("homogeneous system is solvable");
        let build = |v: &[u32]| {
            let parts = sys.split(v);
            let fk = AddMorphism { src: x.objects[k].clone(), tgt: yk.clone(), coords: parts[vf].clone() };
            let d = AddMorphism { src: yprev.clone(), tgt: yk.clone(), coords: parts[vd].clone() };
            let cone = if last_step {
                cat.from_parts(&[yk.clone()], &[x.objects[k].clone(), yprev.clone()], &[vec![Some(&fk), Some(&d)]])
            } else {
                let neg = cat.neg(&x.diffs[k]);
                cat.from_parts(
                    &[x.objects[k + 1].clone(), yk.clone()],
                    &[x.objects[k].clone(), yprev.clone()],
                    &[vec![Some(&neg), None], vec![Some(&fk), Some(&d)]],
                )
            };
            (fk, d, cone)
        };
        let found = search::find_point(fld, &space, &ctx.cfg, |v| contra_ranks(cat, &build(v).2) == need);
        match found {
            Search::Found(v) => {
                let (fk, d, cone) = build(&v);
                st.ys.push(yk.clone());
                st.fs.push(fk);
                st.dys.push(d);
                st.cone.push(cone);
                match pushout_dfs(ctx, x, n, st, budget, accept, result) {
                    Search::Found(()) => return Search::Found(()),
                    Search::Exhausted => exhausted = true,
                    Search::Absent => {}
                }
                st.ys.pop();
                st.fs.pop();
                st.dys.pop();
                st.cone.pop();
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

/// The truncation `X^0 -> ... -> X^n` of an element of `C^n`.
pub fn truncate(x: &Complex) -> Complex {
    let m = x.len() - 1;
    Complex { objects: x.objects[..m].to_vec(), diffs: x.diffs[..m - 1].to_vec() }
}

/// All morphisms between universe objects, in universe order.
pub fn universe_morphisms(ctx: &Ctx) -> Vec<AddMorphism> {
    let objs = ctx.universe.objects();
    let pairs: Vec<(&AddObject, &AddObject)> = objs.iter().flat_map(|a| objs.iter().map(move |b| (a, b))).collect();
    pairs.into_iter().flat_map(|(a, b)| ctx.cat.hom_elements(a, b).collect::<Vec<_>>()).collect()
}

/// n-E0, n-E1, n-E2 and their duals.
pub fn check_n_exact_axioms(ctx: &Ctx, xs: &ExactStructure) -> Report {
    let mut r = Report::new(format!("{}-exact structure", xs.n));
    r.push(xs.validate(&ctx.cat));
    let mut e0 = Check::new("n-E0");
    let zero = complexes::zero_chain(&ctx.cat, xs.n + 2);
    e0.record(status_of(&is_admissible(ctx, xs, &zero), true), || "zero sequence is not admissible".into());
    r.push(e0);
    let (e1, e2) = exact_half(ctx, xs);
    r.push(e1);
    r.push(e2);
    let op = ctx.opposite();
    let xs_op = xs.opposite(&ctx.cat);
    let (mut e1op, mut e2op) = exact_half(&op, &xs_op);
    e1op.name = "n-E1op".into();
    e2op.name = "n-E2op".into();
    r.push(e1op);
    r.push(e2op);
    search::flag_vacuous(ctx, &mut r, &["n-E2", "n-E2op"]);
    r
}

/// Status of a membership-style search: absent is a failure when `strict`.
fn status_of<T>(s: &Search<T>, strict: bool) -> Status {
    match s {
        Search::Found(_) => Status::Pass,
        Search::Absent if strict => Status::Fail,
        _ => Status::Inconclusive,
    }
}

fn exact_half(ctx: &Ctx, xs: &ExactStructure) -> (Check, Check) {
    let cat = &ctx.cat;
    let morphisms = universe_morphisms(ctx);
    let verdicts: Vec<Search<Complex>> = morphisms.par_iter().map(|d| is_admissible_mono(ctx, xs, d)).collect();
    let mut e1 = Check::new("n-E1");
    let mut monos: Vec<&AddMorphism> = Vec::new();
    let mut undecided: Vec<&AddMorphism> = Vec::new();
    for (d, v) in morphisms.iter().zip(&verdicts) {
        match v {
            Search::Found(_) => monos.push(d),
            Search::Exhausted => undecided.push(d),
            Search::Absent => {}
        }
    }
    for d in &undecided {
        e1.inconclusive(format!("admissibility of {} undecided within bound", cat.show_morphism(d)));
    }
    let pairs: Vec<(&AddMorphism, &AddMorphism)> =
        monos.iter().flat_map(|f| monos.iter().filter(|g| g.src == f.tgt).map(move |g| (*f, *g))).collect();
    let results: Vec<Status> =
        pairs.par_iter().map(|(f, g)| status_of(&is_admissible_mono(ctx, xs, &cat.compose(g, f)), true)).collect();
    for ((f, g), s) in pairs.iter().zip(results) {
        e1.record(s, || format!("composite of {} and {} is not an admissible mono", cat.show_morphism(f), cat.show_morphism(g)));
    }

    let mut e2 =
        Check::new("n-E2").with_note("quantifies over generators within the universe as representatives of the admissible class");
    let n = xs.n;
    let bound = ctx.universe.bound();
    let jobs: Vec<(usize, AddMorphism)> = xs
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| g.objects.iter().all(|o| o.len() <= bound))
        .flat_map(|(gi, g)| {
            ctx.universe.objects().iter().flat_map(move |y0| cat.hom_elements(&g.objects[0], y0).map(move |f0| (gi, f0)))
        })
        .collect();
    let accept = |y: &Complex, _: &ComplexMorphism| is_admissible_mono(ctx, xs, &y.diffs[0]).map(|_| ());
    let results: Vec<Search<(Complex, ComplexMorphism)>> = jobs
        .par_iter()
        .map(|(gi, f0)| search_n_pushout_completion(ctx, &truncate(&xs.generators[*gi]), n, f0, &accept))
        .collect();
    for ((gi, f0), s) in jobs.iter().zip(results) {
        e2.record(status_of(&s, false), || {
            format!("no n-pushout of generator {gi} along {} found within bound", cat.show_morphism(f0))
        });
    }
    (e1, e2)
}

/// Splits an idempotent `e` through a universe object with at most as many
/// summands as its source.
pub fn search_idempotent_splitting(ctx: &Ctx, e: &AddMorphism) -> Result<Search<(AddMorphism, AddMorphism)>> {
    let cat = &ctx.cat;
    let fld = cat.field();
    if e.src != e.tgt || cat.compose(e, e) != *e {
        return Err(Error::input("morphism is not an idempotent endomorphism"));
    }
    let x = &e.src;
    let nb = cat.num_objects();
    let cov: Vec<usize> = (0..nb).map(|z| linalg::rank(fld, &cat.post_matrix(e, &[z]))).collect();
    let con: Vec<usize> = (0..nb).map(|z| linalg::rank(fld, &cat.pre_matrix(e, &[z]))).collect();
    let mut exhausted = false;
    for y in ctx.universe.objects().iter().filter(|y| y.len() <= x.len()) {
        let pc: Vec<usize> = (0..nb).map(|z| cat.hom_dim(&[z], y)).collect();
        let pk: Vec<usize> = (0..nb).map(|z| cat.hom_dim(y, &[z])).collect();
        if pc != cov || pk != con {
            continue;
        }
        // s with e s = s, then r solving r s = 1 and s r = e (linear in r).
        let m = cat.post_matrix(e, y);
        let shifted = m.sub(fld, &linalg::Matrix::identity(m.rows()));
        let space = AffineSpace { particular: vec![0; m.cols()], basis: linalg::kernel_basis(fld, &shifted) };
        let solve_r = |s: &AddMorphism| {
            let mut sys = BlockSystem::new();
            let vr = sys.var(cat.hom_dim(x, y));
            let a = sys.eq(cat.hom_dim(y, y));
            sys.term(a, vr, cat.pre_matrix(s, y));
            sys.rhs(fld, a, &cat.identity(y).coords);
            let b = sys.eq(cat.hom_dim(x, x));
            sys.term(b, vr, cat.post_matrix(s, x));
            sys.rhs(fld, b, &e.coords);
            sys.solve(fld).map(|sol| AddMorphism { src: x.clone(), tgt: y.clone(), coords: sol.particular })
        };
        let found = search::find_point(fld, &space, &ctx.cfg, |v| {
            solve_r(&AddMorphism { src: y.clone(), tgt: x.clone(), coords: v.to_vec() }).is_some()
        });
        match found {
            Search::Found(v) => {
                let s = AddMorphism { src: y.clone(), tgt: x.clone(), coords: v };
                let r = solve_r(&s).unwrap();
                return Ok(Search::Found((r, s)));
            }
            Search::Exhausted => exhausted = true,
            Search::Absent => {}
        }
    }
    Ok(if exhausted { Search::Exhausted } else { Search::Absent })
}

/// Idempotent endomorphisms of `x`, if `End(x)` is small enough to scan.
fn idempotents(ctx: &Ctx, x: &[usize]) -> Option<Vec<AddMorphism>> {
    let cat = &ctx.cat;
    let d = cat.hom_dim(x, x) as u32;
    if (cat.field().p() as u64).checked_pow(d).map_or(true, |s| s > ctx.cfg.exhaustive_cap) {
        return None;
    }
    Some(cat.hom_elements(x, x).filter(|e| cat.compose(e, e) == *e).collect())
}

/// n-A0, n-A1, n-A2 and n-A2op.
pub fn check_n_abelian_axioms(ctx: &Ctx, n: usize) -> Report {
    let cat = &ctx.cat;
    let mut r = Report::new(format!("{n}-abelian"));

    let mut a0 = Check::new("n-A0");
    for x in ctx.universe.objects() {
        match idempotents(ctx, x) {
            None => a0.inconclusive(format!("End({}) too large to scan", cat.show_object(x))),
            Some(es) => {
                let res: Vec<Search<(AddMorphism, AddMorphism)>> =
                    es.par_iter().map(|e| search_idempotent_splitting(ctx, e).expect("idempotent by construction")).collect();
                for (e, s) in es.iter().zip(res) {
                    a0.record(status_of(&s, true), || {
                        format!("idempotent {} does not split in the universe", cat.show_morphism(e))
                    });
                }
            }
        }
    }
    r.push(a0);

    let morphisms = universe_morphisms(ctx);
    let mut a1 = Check::new("n-A1");
    let res: Vec<(Status, Status)> = morphisms
        .par_iter()
        .map(|f| (status_of(&search_n_kernel(ctx, f, n), false), status_of(&search_n_cokernel(ctx, f, n), false)))
        .collect();
    for (f, (k, c)) in morphisms.iter().zip(res) {
        a1.record(k, || format!("no n-kernel of {} within bound", cat.show_morphism(f)));
        a1.record(c, || format!("no n-cokernel of {} within bound", cat.show_morphism(f)));
    }
    r.push(a1);

    r.push(abelian_a2(ctx, n, "n-A2", ""));
    let op = ctx.opposite();
    r.push(abelian_a2(&op, n, "n-A2op", " (in the opposite category)"));
    search::flag_vacuous(ctx, &mut r, &["n-A1", "n-A2", "n-A2op"]);
    r
}

fn abelian_a2(ctx: &Ctx, n: usize, name: &str, side: &str) -> Check {
    let cat = &ctx.cat;
    let monos: Vec<AddMorphism> = universe_morphisms(ctx).into_iter().filter(|f| cat.is_mono(f)).collect();
    let res: Vec<(Status, String)> = monos
        .par_iter()
        .map(|d| match search_n_cokernel(ctx, d, n) {
            Search::Found(tail) => {
                let mut diffs = vec![d.clone()];
                diffs.extend(tail);
                let x = Complex::from_diffs(diffs);
                if is_n_exact(cat, &x) {
                    (Status::Pass, String::new())
                } else {
                    let why = exactness_defect(cat, &x).unwrap_or_default();
                    (
                        Status::Fail,
                        format!("mono {}{side} with n-cokernel {} is not n-exact ({why})", cat.show_morphism(d), x.show(cat)),
                    )
                }
            }
            _ => (Status::Inconclusive, format!("no n-cokernel of mono {}{side} within bound", cat.show_morphism(d))),
        })
        .collect();
    let mut chk = Check::new(name);
    for (s, msg) in res {
        chk.record(s, || msg);
    }
    chk
}

/// Is `F` an n-exact functor: images of the generators are admissible in
/// the target (sums and weak isomorphisms are respected by any additive `F`).
pub fn check_n_exact_functor(dst_ctx: &Ctx, f: &AddFunctor, src: &ExactStructure, dst: &ExactStructure) -> Report {
    let cat = &dst_ctx.cat;
    let mut r = Report::new("n-exact functor");
    let mut laws = f.validate();
    laws.name = "F functor laws".into();
    r.push(laws);
    let res: Vec<Status> = src
        .generators
        .par_iter()
        .map(|g| {
            let y = Complex {
                objects: g.objects.iter().map(|o| f.object(o)).collect(),
                diffs: g.diffs.iter().map(|d| f.morphism(d)).collect(),
            };
            status_of(&is_admissible(dst_ctx, dst, &y), true)
        })
        .collect();
    let mut img = Check::new("image sequences");
    for (g, s) in src.generators.iter().zip(res) {
        img.record(s, || format!("the image of {} is not admissible", g.show(cat)));
    }
    r.push(img);
    r
}
