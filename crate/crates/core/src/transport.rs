//! Moving angulated, n-exact, n-abelian and n-exangulated structure along
//! an equivalence `F: C -> D` (with quasi-inverse `G`), and onto skeletons.
//! Every transport re-runs the full axiom suite on its output.

use std::sync::Arc;

use crate::angulated::{check_angulated_functor, check_angulation_axioms, AngulatedFunctorWitness, Angulation, SigmaStructure};
use crate::category::{AddMorphism, Universe};
use crate::error::{Error, Result};
use crate::exangulated::{
    check_exangulated_axioms, check_exangulated_functor, check_realization, image_complex, BiadditiveE, ExFunctorWitness,
    Extension, Realization, Realizer,
};
use crate::functor::{AddFunctor, EquivalenceWitness};
use crate::homalg::{check_n_abelian_axioms, check_n_exact_axioms, check_n_exact_functor, ExactStructure};
use crate::linalg::Matrix;
use crate::report::{Check, Report, Status};
use crate::search::{Config, Ctx};
use crate::skeleton::{check_identity_on, compute_skeleton, skeletal_inverse};

/// A transported structure with everything that was checked about it.
#[derive(Clone, Debug)]
pub struct TransportResult<T, W> {
    pub target: T,
    /// The structure-functor data for `F` (Θ, Γ, or just `F`).
    pub witness: W,
    pub witness_report: Report,
    /// Full axiom suite on the target.
    pub verification: Report,
    /// `F` as a structure-preserving functor from the source.
    pub functor_report: Report,
}

impl<T, W> TransportResult<T, W> {
    /// Any failure fails the transport; otherwise any inconclusive entry
    /// makes it inconclusive.
    pub fn status(&self) -> Status {
        self.witness_report.status().max(self.verification.status()).max(self.functor_report.status())
    }
}

fn checked_witness(w: &EquivalenceWitness, cfg: &Config) -> Result<Report> {
    let u = Universe::new(w.c(), cfg.universe_bound);
    let r = w.validate(Some(&u));
    if r.status() == Status::Fail {
        return Err(Error::input(format!("the equivalence witness is invalid\n{}", r.render_text())));
    }
    Ok(r)
}

/// `Σ′ = FΣG` with quasi-inverse `Σ′₋ = FΣ₋G`, Θ = `FΣΨ⁻¹` and the images of
/// the generators.
///
/// The unit of `Σ′ ⊣ Σ′₋` at `y` is `FΣ(Ψ⁻¹_{Σ₋Gy}) ∘ F(Φ^Σ_{Gy}) ∘ Φ_y` and
/// the counit is `Φ_y⁻¹ ∘ F(Ψ^Σ_{Gy}) ∘ FΣ₋(Ψ_{ΣGy})`, where `Φ^Σ, Ψ^Σ` belong
/// to the source Σ.
pub fn transport_angulation(
    t: &Angulation,
    w: &EquivalenceWitness,
    cfg: &Config,
) -> Result<TransportResult<Angulation, AngulatedFunctorWitness>> {
    let witness_report = checked_witness(w, cfg)?;
    let (c, d) = (w.c().clone(), w.d().clone());
    let sw = &t.sigma.witness;
    let (sigma, sigma_m) = (&*sw.f, &*sw.g);
    let s1 = Arc::new(w.g.then(sigma).then(&w.f));
    let s1m = Arc::new(w.g.then(sigma_m).then(&w.f));
    let unit: Vec<AddMorphism> = (0..d.num_objects())
        .map(|y| {
            let gy = w.g.base_object(y);
            let back = w.f.morphism(&sigma.morphism(&w.counit_inv_at(&sigma_m.object(gy))));
            let mid = w.f.morphism(&sw.unit_at(gy));
            d.compose_all(&[&back, &mid, &w.unit[y]])
        })
        .collect();
    let counit: Vec<AddMorphism> = (0..d.num_objects())
        .map(|y| {
            let gy = w.g.base_object(y);
            let inner = w.f.morphism(&sigma_m.morphism(&w.counit_at(&sigma.object(gy))));
            let mid = w.f.morphism(&sw.counit_at(gy));
            d.compose_all(&[&w.unit_inv_at(&[y]), &mid, &inner])
        })
        .collect();
    let sigma2 = SigmaStructure::new(EquivalenceWitness::new(s1, s1m, unit, counit)?, false)?;
    let theta = (0..c.num_objects()).map(|x| w.f.morphism(&sigma.morphism(&w.counit_inv_at(&[x])))).collect();
    let fw = AngulatedFunctorWitness { functor: w.f.clone(), theta };
    let bare = Angulation::new(t.n, sigma2, Vec::new())?;
    let theta_nt = fw.theta_transform(t, &bare)?;
    let gens = t.generators.iter().map(|g| fw.image(&d, &theta_nt, g)).collect();
    let target = Angulation::new(t.n, bare.sigma, gens)?;
    let ctx = Ctx::new(d, cfg.clone());
    let verification = check_angulation_axioms(&ctx, &target);
    let functor_report = check_angulated_functor(&ctx, &fw, t, &target);
    Ok(TransportResult { target, witness: fw, witness_report, verification, functor_report })
}

/// `X′` generated by the `F`-images of the generators of `X`.
pub fn transport_exact_structure(
    xs: &ExactStructure,
    w: &EquivalenceWitness,
    cfg: &Config,
) -> Result<TransportResult<ExactStructure, Arc<AddFunctor>>> {
    let witness_report = checked_witness(w, cfg)?;
    let gens = xs.generators.iter().map(|g| image_complex(&w.f, g)).collect();
    let target = ExactStructure::new(xs.n, gens)?;
    let ctx = Ctx::new(w.d().clone(), cfg.clone());
    let verification = check_n_exact_axioms(&ctx, &target);
    let functor_report = check_n_exact_functor(&ctx, &w.f, xs, &target);
    Ok(TransportResult { target, witness: w.f.clone(), witness_report, verification, functor_report })
}

/// n-abelianness is a property, so there is nothing to move: the target
/// category is checked directly.
pub fn transport_abelian(n: usize, w: &EquivalenceWitness, cfg: &Config) -> Result<Report> {
    let mut r = Report::new(format!("transport of {n}-abelian structure"));
    r.child(checked_witness(w, cfg)?);
    r.child(check_n_abelian_axioms(&Ctx::new(w.d().clone(), cfg.clone()), n));
    Ok(r)
}

/// Conversions between `E′(C′, A′)` (blocks over base objects of `D`) and
/// `E(GC′, GA′)` (blocks over base objects of `C`).
#[derive(Clone)]
struct Reindex {
    g: Arc<AddFunctor>,
    e: BiadditiveE,
    e2: BiadditiveE,
}

impl Reindex {
    fn to_src(&self, d: &Extension) -> Extension {
        let g = &self.g;
        let (gc, ga) = (g.object(&d.c), g.object(&d.a));
        let mut out = self.e.zero_ext(&gc, &ga);
        let mut i0 = 0;
        for (i, &ai) in d.a.iter().enumerate() {
            let gai = g.base_object(ai);
            let mut j0 = 0;
            for (j, &cj) in d.c.iter().enumerate() {
                let gcj = g.base_object(cj);
                let sub = Extension { c: gcj.clone(), a: gai.clone(), coords: self.e2.block(d, i, j) };
                self.e.embed_into(&mut out.coords, &gc, &ga, i0, j0, &sub);
                j0 += gcj.len();
            }
            i0 += gai.len();
        }
        out
    }

    /// Inverse of [`Reindex::to_src`] for `s ∈ E(GC′, GA′)`.
    fn from_src(&self, c: &[usize], a: &[usize], s: &Extension) -> Extension {
        let g = &self.g;
        let mut out = self.e2.zero_ext(c, a);
        let mut i0 = 0;
        for (i, &ai) in a.iter().enumerate() {
            let gai = g.base_object(ai);
            let mut j0 = 0;
            for (j, &cj) in c.iter().enumerate() {
                let gcj = g.base_object(cj);
                let mut sub = self.e.zero_ext(gcj, gai);
                for ii in 0..gai.len() {
                    for jj in 0..gcj.len() {
                        let b = Extension { c: vec![gcj[jj]], a: vec![gai[ii]], coords: self.e.block(s, i0 + ii, j0 + jj) };
                        self.e.embed_into(&mut sub.coords, gcj, gai, ii, jj, &b);
                    }
                }
                let blk = Extension { c: vec![cj], a: vec![ai], coords: sub.coords };
                self.e2.embed_into(&mut out.coords, c, a, i, j, &blk);
                j0 += gcj.len();
            }
            i0 += gai.len();
        }
        out
    }
}

/// `E′ = E(G-, G-)` with `s′(δ)` the class of
/// `A →(Fd^0 ∘ Φ_A) FX^1 → … → FX^n →(Φ_C⁻¹ ∘ Fd^n) C` for
/// `s(δ) = [GA → X^1 → … → X^n → GC]`, and `Γ(δ) = (Ψ_A⁻¹)_E (Ψ_C)^E δ`
/// read in `E′(FC, FA) = E(GFC, GFA)`.
pub fn transport_exangulated_structure(
    src: (&BiadditiveE, &Realization),
    w: &EquivalenceWitness,
    cfg: &Config,
) -> Result<TransportResult<(BiadditiveE, Realization), ExFunctorWitness>> {
    let witness_report = checked_witness(w, cfg)?;
    let (e, r) = src;
    let (c, d) = (w.c().clone(), w.d().clone());
    let g = w.g.clone();
    let nb = d.num_objects();
    let dims = (0..nb).map(|x| (0..nb).map(|y| e.dim(g.base_object(x), g.base_object(y))).collect()).collect();
    let e2 = BiadditiveE::from_fn(
        d.clone(),
        dims,
        |x, a, a2, k| e.left_matrix(&g.morphism(&d.basis_morphism(a, a2, k)), g.base_object(x)),
        |x, a, x2, k| e.right_matrix(&g.morphism(&d.basis_morphism(x2, x, k)), g.base_object(a)),
    )?;
    let re = Arc::new(Reindex { g: g.clone(), e: e.clone(), e2: e2.clone() });

    let realizer: Realizer = {
        let (re, r, w, d) = (re.clone(), Arc::new(r.clone()), w.clone(), d.clone());
        Arc::new(move |dd: &Extension| {
            r.realize(&re.e, &re.to_src(dd)).map(|x| {
                let mut y = image_complex(&w.f, &x);
                let l = y.diffs.len() - 1;
                y.objects[0] = dd.a.clone();
                y.objects[l + 1] = dd.c.clone();
                y.diffs[0] = d.compose(&y.diffs[0], &w.unit_at(&dd.a));
                y.diffs[l] = d.compose(&w.unit_inv_at(&dd.c), &y.diffs[l]);
                y
            })
        })
    };
    let ctx = Ctx::new(d.clone(), cfg.clone());
    let r2 = Realization::tabulate(&ctx, &e2, r.n, realizer);

    let gamma = (0..c.num_objects())
        .map(|x| {
            (0..c.num_objects())
                .map(|a| {
                    let (fx, fa) = (w.f.base_object(x).clone(), w.f.base_object(a).clone());
                    let psi_x = w.counit_at(&[x]);
                    let psi_a_inv = w.counit_inv_at(&[a]);
                    let cols: Vec<Vec<u32>> = (0..e.dims()[x][a])
                        .map(|k| {
                            let mut coords = vec![0; e.dims()[x][a]];
                            coords[k] = 1;
                            let dl = Extension { c: vec![x], a: vec![a], coords };
                            let moved = e.act(&dl, Some(&psi_a_inv), Some(&psi_x)).expect("Ψ components fit δ");
                            re.from_src(&fx, &fa, &moved).coords
                        })
                        .collect();
                    Matrix::from_columns(e2.dim(&fx, &fa), &cols)
                })
                .collect()
        })
        .collect();
    let fw = ExFunctorWitness { functor: w.f.clone(), gamma };

    let mut verification = Report::new(format!("transported {}-exangulated structure", r.n));
    verification.child(check_realization(&ctx, &e2, &r2));
    verification.child(check_exangulated_axioms(&ctx, &e2, &r2));
    let functor_report = check_exangulated_functor(&ctx, &fw, (e, r), (&e2, &r2));
    Ok(TransportResult { target: (e2, r2), witness: fw, witness_report, verification, functor_report })
}

/// Θ plus the strict inverse of the transported Σ′, when it exists.
#[derive(Clone, Debug)]
pub struct SkeletonWitness {
    pub functor: AngulatedFunctorWitness,
    pub sigma_inverse: Option<AddFunctor>,
}

/// Transport onto the skeleton, then check that `Σ′` is an automorphism
/// with a two-sided inverse; `strict` is set only when it is.
pub fn transport_to_skeleton(t: &Angulation, cfg: &Config) -> Result<TransportResult<Angulation, SkeletonWitness>> {
    let cat = t.sigma.witness.c().clone();
    let (skel, inc) = compute_skeleton(&cat);
    let res = transport_angulation(t, &inc.reversed(), cfg)?;
    let mut target = res.target;
    let u = Universe::new(&skel, cfg.universe_bound);
    let mut strict = Report::new("strictness");
    let mut auto = target.sigma.check_strict();
    auto.name = "Σ′ automorphism".into();
    strict.push(auto);
    let sigma = target.sigma();
    let inverse = match skeletal_inverse(sigma) {
        Ok(h) => {
            strict.push(check_identity_on("Σ′⁻¹Σ′ = Id", &sigma.then(&h), &u));
            strict.push(check_identity_on("Σ′Σ′⁻¹ = Id", &h.then(sigma), &u));
            Some(h)
        }
        Err(e) => {
            let mut chk = Check::new("Σ′ strict inverse");
            chk.fail(format!("no strict inverse on a skeleton, which cannot happen for a valid transport: {e}"));
            strict.push(chk);
            None
        }
    };
    target.sigma.strict = strict.status() == Status::Pass;
    let mut verification = res.verification;
    verification.child(strict);
    Ok(TransportResult {
        target,
        witness: SkeletonWitness { functor: res.witness, sigma_inverse: inverse },
        witness_report: res.witness_report,
        verification,
        functor_report: res.functor_report,
    })
}
