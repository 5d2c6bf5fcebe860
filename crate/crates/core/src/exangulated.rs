//! Biadditive functors `E`, n-exangles, realizations, the axioms R0 to R2
//! and n-EA1, n-EA2, n-EA2ᵒᵖ, the induced structures `E_Σ` and `E_X`, and
//! n-exangulated functors.
//!
//! `E(C, A)` for objects of the additive closure is the sum of the base
//! blocks `E(c_j, a_i)`, ordered with `i` (over `A`) outermost.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angulated::{self, AngulatedFunctorWitness, Angulation};
use crate::category::{AddMorphism, AddObject, BaseCategory};
use crate::complexes::{self, Complex, ComplexMorphism};
use crate::error::{Error, Result};
use crate::functor::AddFunctor;
use crate::homalg::{self, ExactStructure};
use crate::linalg::{self, LinearSeq, Matrix};
use crate::report::{Check, Report, Status};
use crate::search::{self, BlockSystem, Ctx, Search};

/// An element `δ ∈ E(C, A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Extension {
    pub c: AddObject,
    pub a: AddObject,
    pub coords: Vec<u32>,
}

/// A biadditive functor `E: C^op × C -> mod F_p`, given on base objects by
/// dimensions and the action of basis morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiadditiveE {
    cat: Arc<BaseCategory>,
    dims: Vec<Vec<usize>>,
    /// `left[c][a][a2][k]` is `E(c, e_k)` for the basis morphism `e_k: a -> a2`.
    left: Vec<Vec<Vec<Vec<Matrix>>>>,
    /// `right[c][a][c2][k]` is `E(e_k, a)` for the basis morphism `e_k: c2 -> c`.
    right: Vec<Vec<Vec<Vec<Matrix>>>>,
}

type Actions = Vec<Vec<Vec<Vec<Matrix>>>>;

impl BiadditiveE {
    pub fn new(cat: Arc<BaseCategory>, dims: Vec<Vec<usize>>, left: Actions, right: Actions) -> Result<Self> {
        let nb = cat.num_objects();
        let bad = |what: String| Err(Error::shape(format!("E action data: {what}")));
        if dims.len() != nb || dims.iter().any(|r| r.len() != nb) {
            return bad("dims must be indexed by pairs of base objects".into());
        }
        let at = |t: &Actions, i: usize, j: usize, k: usize| t.get(i).and_then(|x| x.get(j)).and_then(|x| x.get(k)).cloned();
        for c in 0..nb {
            for a in 0..nb {
                for b in 0..nb {
                    let Some(l) = at(&left, c, a, b) else { return bad(format!("missing left action ({c}, {a}, {b})")) };
                    if l.len() != cat.base_dim(a, b) || l.iter().any(|m| m.rows() != dims[c][b] || m.cols() != dims[c][a]) {
                        return bad(format!("left action ({c}, {a}, {b}) has the wrong shape"));
                    }
                    let Some(r) = at(&right, c, a, b) else { return bad(format!("missing right action ({c}, {a}, {b})")) };
                    if r.len() != cat.base_dim(b, c) || r.iter().any(|m| m.rows() != dims[b][a] || m.cols() != dims[c][a]) {
                        return bad(format!("right action ({c}, {a}, {b}) has the wrong shape"));
                    }
                }
            }
        }
        Ok(BiadditiveE { cat, dims, left, right })
    }

    /// Builds the action tables from closures `left(c, a, a2, k)` and
    /// `right(c, a, c2, k)`.
    pub fn from_fn(
        cat: Arc<BaseCategory>,
        dims: Vec<Vec<usize>>,
        mut left: impl FnMut(usize, usize, usize, usize) -> Matrix,
        mut right: impl FnMut(usize, usize, usize, usize) -> Matrix,
    ) -> Result<Self> {
        let nb = cat.num_objects();
        let mut l = vec![vec![vec![Vec::new(); nb]; nb]; nb];
        let mut r = vec![vec![vec![Vec::new(); nb]; nb]; nb];
        for c in 0..nb {
            for a in 0..nb {
                for b in 0..nb {
                    l[c][a][b] = (0..cat.base_dim(a, b)).map(|k| left(c, a, b, k)).collect();
                    r[c][a][b] = (0..cat.base_dim(b, c)).map(|k| right(c, a, b, k)).collect();
                }
            }
        }
        BiadditiveE::new(cat, dims, l, r)
    }

    /// `E = 0`.
    pub fn zero(cat: Arc<BaseCategory>) -> Self {
        let nb = cat.num_objects();
        let dims = vec![vec![0; nb]; nb];
        BiadditiveE::from_fn(cat, dims, |_, _, _, _| Matrix::zeros(0, 0), |_, _, _, _| Matrix::zeros(0, 0))
            .expect("zero actions fit")
    }

    pub fn cat(&self) -> &Arc<BaseCategory> {
        &self.cat
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    pub fn base_left(&self, c: usize, a: usize, a2: usize, k: usize) -> &Matrix {
        &self.left[c][a][a2][k]
    }

    pub fn base_right(&self, c: usize, a: usize, c2: usize, k: usize) -> &Matrix {
        &self.right[c][a][c2][k]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().flatten().all(|&d| d == 0)
    }

    pub fn dim(&self, c: &[usize], a: &[usize]) -> usize {
        a.iter().map(|&ai| c.iter().map(|&cj| self.dims[cj][ai]).sum::<usize>()).sum()
    }

    /// Number of elements of `E(C, A)`, saturating.
    pub fn size(&self, c: &[usize], a: &[usize]) -> u64 {
        (self.cat.field().p() as u64).saturating_pow(self.dim(c, a) as u32)
    }

    fn offsets(&self, c: &[usize], a: &[usize]) -> Vec<usize> {
        let mut off = Vec::with_capacity(a.len() * c.len() + 1);
        let mut acc = 0;
        for &ai in a {
            for &cj in c {
                off.push(acc);
                acc += self.dims[cj][ai];
            }
        }
        off.push(acc);
        off
    }

    pub fn zero_ext(&self, c: &[usize], a: &[usize]) -> Extension {
        Extension { c: c.to_vec(), a: a.to_vec(), coords: vec![0; self.dim(c, a)] }
    }

    /// Every element of `E(C, A)` in coordinate order.
    pub fn elements(&self, c: &[usize], a: &[usize]) -> Vec<Extension> {
        linalg::all_vectors(self.cat.field(), self.dim(c, a))
            .map(|coords| Extension { c: c.to_vec(), a: a.to_vec(), coords })
            .collect()
    }

    pub fn check_ext(&self, d: &Extension) -> Result<()> {
        if d.coords.len() != self.dim(&d.c, &d.a) {
            return Err(Error::shape("extension coordinates do not match dim E(C, A)"));
        }
        Ok(())
    }

    /// The `(i, j)` block of `δ`, an element of `E(c_j, a_i)`.
    pub fn block(&self, d: &Extension, i: usize, j: usize) -> Vec<u32> {
        let off = self.offsets(&d.c, &d.a);
        let o = off[i * d.c.len() + j];
        d.coords[o..o + self.dims[d.c[j]][d.a[i]]].to_vec()
    }

    /// Writes `sub ∈ E(C', A')` into `out ∈ E(C, A)`, where `C'` sits in `C`
    /// from summand `j0` and `A'` in `A` from summand `i0`.
    pub fn embed_into(&self, out: &mut [u32], c: &[usize], a: &[usize], i0: usize, j0: usize, sub: &Extension) {
        let off = self.offsets(c, a);
        let off_s = self.offsets(&sub.c, &sub.a);
        for (i, &ai) in sub.a.iter().enumerate() {
            for (j, &cj) in sub.c.iter().enumerate() {
                let d = self.dims[cj][ai];
                let s = off_s[i * sub.c.len() + j];
                let t = off[(i0 + i) * c.len() + j0 + j];
                out[t..t + d].copy_from_slice(&sub.coords[s..s + d]);
            }
        }
    }

    /// Matrix of `E(C, x): E(C, A) -> E(C, A2)` for `x: A -> A2`.
    pub fn left_matrix(&self, x: &AddMorphism, c: &[usize]) -> Matrix {
        let cat = &self.cat;
        let fld = cat.field();
        let (a, a2) = (&x.src, &x.tgt);
        let off_in = self.offsets(c, a);
        let off_out = self.offsets(c, a2);
        let off_x = cat.offsets(a, a2);
        let mut m = Matrix::zeros(off_out[off_out.len() - 1], off_in[off_in.len() - 1]);
        for (i2, &b) in a2.iter().enumerate() {
            for (i, &ai) in a.iter().enumerate() {
                let o = off_x[i2 * a.len() + i];
                let xb = &x.coords[o..o + cat.base_dim(ai, b)];
                for (j, &cj) in c.iter().enumerate() {
                    let mut blk = Matrix::zeros(self.dims[cj][b], self.dims[cj][ai]);
                    for (k, &xk) in xb.iter().enumerate() {
                        if xk != 0 {
                            blk = blk.add(fld, &self.left[cj][ai][b][k].scale(fld, xk));
                        }
                    }
                    m.set_block(off_out[i2 * c.len() + j], off_in[i * c.len() + j], &blk);
                }
            }
        }
        m
    }

    /// Matrix of `E(z, A): E(C, A) -> E(C2, A)` for `z: C2 -> C`.
    pub fn right_matrix(&self, z: &AddMorphism, a: &[usize]) -> Matrix {
        let cat = &self.cat;
        let fld = cat.field();
        let (c2, c) = (&z.src, &z.tgt);
        let off_in = self.offsets(c, a);
        let off_out = self.offsets(c2, a);
        let off_z = cat.offsets(c2, c);
        let mut m = Matrix::zeros(off_out[off_out.len() - 1], off_in[off_in.len() - 1]);
        for (j, &cj) in c.iter().enumerate() {
            for (j2, &dj) in c2.iter().enumerate() {
                let o = off_z[j * c2.len() + j2];
                let zb = &z.coords[o..o + cat.base_dim(dj, cj)];
                for (i, &ai) in a.iter().enumerate() {
                    let mut blk = Matrix::zeros(self.dims[dj][ai], self.dims[cj][ai]);
                    for (k, &zk) in zb.iter().enumerate() {
                        if zk != 0 {
                            blk = blk.add(fld, &self.right[cj][ai][dj][k].scale(fld, zk));
                        }
                    }
                    m.set_block(off_out[i * c2.len() + j2], off_in[i * c.len() + j], &blk);
                }
            }
        }
        m
    }

    /// `x_E δ` for `x: A -> A2`.
    pub fn push(&self, x: &AddMorphism, d: &Extension) -> Result<Extension> {
        if x.src != d.a {
            return Err(Error::input("x must start at the second object of δ"));
        }
        let coords = self.left_matrix(x, &d.c).mul_vec(self.cat.field(), &d.coords);
        Ok(Extension { c: d.c.clone(), a: x.tgt.clone(), coords })
    }

    /// `z^E δ` for `z: C2 -> C`.
    pub fn pull(&self, z: &AddMorphism, d: &Extension) -> Result<Extension> {
        if z.tgt != d.c {
            return Err(Error::input("z must end at the first object of δ"));
        }
        let coords = self.right_matrix(z, &d.a).mul_vec(self.cat.field(), &d.coords);
        Ok(Extension { c: z.src.clone(), a: d.a.clone(), coords })
    }

    /// `x_E z^E δ` with either side optional.
    pub fn act(&self, d: &Extension, x: Option<&AddMorphism>, z: Option<&AddMorphism>) -> Result<Extension> {
        self.check_ext(d)?;
        let d = match z {
            Some(z) => self.pull(z, d)?,
            None => d.clone(),
        };
        match x {
            Some(x) => self.push(x, &d),
            None => Ok(d),
        }
    }

    /// `(δ^♯)_B: Hom(A, B) -> E(C, B)`, `a ↦ a_E δ`.
    pub fn push_matrix(&self, d: &Extension, b: &[usize]) -> Matrix {
        let cat = &self.cat;
        let fld = cat.field();
        let n = cat.hom_dim(&d.a, b);
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|t| {
                let mut v = vec![0; n];
                v[t] = 1;
                self.left_matrix(&cat.morphism(&d.a, b, v), &d.c).mul_vec(fld, &d.coords)
            })
            .collect();
        Matrix::from_columns(self.dim(&d.c, b), &cols)
    }

    /// `(δ_♯)_D: Hom(D, C) -> E(D, A)`, `c ↦ c^E δ`.
    pub fn pull_matrix(&self, d: &Extension, w: &[usize]) -> Matrix {
        let cat = &self.cat;
        let fld = cat.field();
        let n = cat.hom_dim(w, &d.c);
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|t| {
                let mut v = vec![0; n];
                v[t] = 1;
                self.right_matrix(&cat.morphism(w, &d.c, v), &d.a).mul_vec(fld, &d.coords)
            })
            .collect();
        Matrix::from_columns(self.dim(w, &d.a), &cols)
    }

    /// Functoriality in both variables and commuting actions, on base
    /// basis morphisms.
    pub fn validate(&self) -> Check {
        let cat = &self.cat;
        let fld = cat.field();
        let nb = cat.num_objects();
        let mut chk = Check::new("E biadditive");
        let mut expect = |ok: bool, what: &dyn Fn() -> String| {
            if ok {
                chk.pass()
            } else {
                chk.fail(what())
            }
        };
        for c in 0..nb {
            for a in 0..nb {
                let id = Matrix::identity(self.dims[c][a]);
                expect(self.left_matrix(&cat.identity(&[a]), &[c]) == id, &|| format!("E({c}, 1_{a}) is not the identity"));
                expect(self.right_matrix(&cat.identity(&[c]), &[a]) == id, &|| format!("E(1_{c}, {a}) is not the identity"));
            }
        }
        let basis = |a: usize, b: usize| (0..cat.base_dim(a, b)).map(move |k| cat.basis_morphism(a, b, k));
        for a in 0..nb {
            for b in 0..nb {
                for g in basis(a, b) {
                    for d in 0..nb {
                        for h in basis(b, d) {
                            let hg = cat.compose(&h, &g);
                            for c in 0..nb {
                                let lhs = self.left_matrix(&hg, &[c]);
                                let rhs = self.left_matrix(&h, &[c]).mul(fld, &self.left_matrix(&g, &[c]));
                                expect(lhs == rhs, &|| {
                                    format!("E({c}, -) does not preserve {} ∘ {}", cat.show_morphism(&h), cat.show_morphism(&g))
                                });
                                // g: a -> b and h: b -> d read as maps into the first slot
                                let lhs = self.right_matrix(&hg, &[c]);
                                let rhs = self.right_matrix(&g, &[c]).mul(fld, &self.right_matrix(&h, &[c]));
                                expect(lhs == rhs, &|| {
                                    format!("E(-, {c}) does not reverse {} ∘ {}", cat.show_morphism(&h), cat.show_morphism(&g))
                                });
                            }
                        }
                    }
                    // commuting with every basis morphism z: c2 -> c
                    for c in 0..nb {
                        for c2 in 0..nb {
                            for z in basis(c2, c) {
                                let lhs = self.right_matrix(&z, &[b]).mul(fld, &self.left_matrix(&g, &[c]));
                                let rhs = self.left_matrix(&g, &[c2]).mul(fld, &self.right_matrix(&z, &[a]));
                                expect(lhs == rhs, &|| {
                                    format!("actions of {} and {} do not commute", cat.show_morphism(&g), cat.show_morphism(&z))
                                });
                            }
                        }
                    }
                }
            }
        }
        chk
    }
}

/// `E_Σ(C, A) = Hom(C, ΣA)` with `x_E δ = (Σx) δ` and `z^E δ = δ z`. The base
/// block `E_Σ(c, a)` carries the coordinates of `Hom(c, Σa)`.
pub fn sigma_extensions(cat: &Arc<BaseCategory>, sigma: &AddFunctor) -> BiadditiveE {
    let nb = cat.num_objects();
    let dims = (0..nb).map(|c| (0..nb).map(|a| cat.hom_dim(&[c], sigma.base_object(a))).collect()).collect();
    BiadditiveE::from_fn(
        cat.clone(),
        dims,
        |c, a, a2, k| cat.post_matrix(&sigma.morphism(&cat.basis_morphism(a, a2, k)), &[c]),
        |c, a, c2, k| cat.pre_matrix(&cat.basis_morphism(c2, c, k), sigma.base_object(a)),
    )
    .expect("E_Σ actions have matching shapes")
}

/// The morphism `C -> ΣA` of an element of `E_Σ(C, A)`.
pub fn sigma_to_hom(e: &BiadditiveE, sigma: &AddFunctor, d: &Extension) -> AddMorphism {
    let cat = e.cat();
    let rows: Vec<AddObject> = d.a.iter().map(|&a| sigma.base_object(a).clone()).collect();
    let cols: Vec<AddObject> = d.c.iter().map(|&c| vec![c]).collect();
    let parts: Vec<Vec<AddMorphism>> =
        (0..rows.len()).map(|i| (0..cols.len()).map(|j| cat.morphism(&cols[j], &rows[i], e.block(d, i, j))).collect()).collect();
    let refs: Vec<Vec<Option<&AddMorphism>>> = parts.iter().map(|r| r.iter().map(Some).collect()).collect();
    let h = cat.from_parts(&rows, &cols, &refs);
    AddMorphism { src: d.c.clone(), tgt: sigma.object(&d.a), coords: h.coords }
}

/// Inverse of [`sigma_to_hom`].
pub fn sigma_from_hom(e: &BiadditiveE, sigma: &AddFunctor, a: &[usize], h: &AddMorphism) -> Extension {
    let cat = e.cat();
    let c = h.src.clone();
    let mut d = e.zero_ext(&c, a);
    let mut i0 = 0;
    for (i, &ai) in a.iter().enumerate() {
        let rows = sigma.base_object(ai).len();
        for j in 0..c.len() {
            let part = cat.restrict(h, i0, rows, j, 1);
            let sub = Extension { c: vec![c[j]], a: vec![ai], coords: part.coords };
            e.embed_into(&mut d.coords, &c, a, i, j, &sub);
        }
        i0 += rows;
    }
    d
}

/// Finds a representative for an extension, or reports why it cannot.
pub type Realizer = Arc<dyn Fn(&Extension) -> Search<Complex> + Send + Sync>;

/// A realization stored extensionally over the universe, with an optional
/// rule for extensions between larger objects.
#[derive(Clone)]
pub struct Realization {
    pub n: usize,
    /// One representative for each extension between universe objects.
    pub table: BTreeMap<Extension, Complex>,
    /// Extensions between universe objects left without a representative:
    /// `Fail` if none exists, `Inconclusive` if the search ran out.
    pub gaps: BTreeMap<Extension, Status>,
    /// Universe pairs whose extension space exceeded the enumeration cap.
    pub skipped: Vec<(AddObject, AddObject)>,
    fallback: Option<Realizer>,
    cache: Arc<Mutex<HashMap<Extension, Search<Complex>>>>,
}

impl fmt::Debug for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Realization")
            .field("n", &self.n)
            .field("entries", &self.table.len())
            .field("gaps", &self.gaps.len())
            .field("skipped", &self.skipped)
            .field("fallback", &self.fallback.is_some())
            .finish()
    }
}

impl Realization {
    pub fn from_table(n: usize, table: BTreeMap<Extension, Complex>) -> Self {
        Realization { n, table, gaps: BTreeMap::new(), skipped: Vec::new(), fallback: None, cache: Default::default() }
    }

    pub fn with_fallback(mut self, f: Realizer) -> Self {
        self.fallback = Some(f);
        self
    }

    pub fn has_fallback(&self) -> bool {
        self.fallback.is_some()
    }

    /// Runs `f` on every extension between universe objects and keeps it as
    /// the fallback.
    pub fn tabulate(ctx: &Ctx, e: &BiadditiveE, n: usize, f: Realizer) -> Self {
        let objs = ctx.universe.objects();
        let mut exts = Vec::new();
        let mut skipped = Vec::new();
        for c in objs {
            for a in objs {
                if e.size(c, a) > ctx.cfg.exhaustive_cap {
                    skipped.push((c.clone(), a.clone()));
                } else {
                    exts.extend(e.elements(c, a));
                }
            }
        }
        let res: Vec<Search<Complex>> = exts.par_iter().map(|d| f(d)).collect();
        let mut r = Realization::from_table(n, BTreeMap::new()).with_fallback(f);
        r.skipped = skipped;
        for (d, s) in exts.into_iter().zip(res) {
            match s {
                Search::Found(x) => {
                    r.table.insert(d, x);
                }
                Search::Absent => {
                    r.gaps.insert(d, Status::Fail);
                }
                Search::Exhausted => {
                    r.gaps.insert(d, Status::Inconclusive);
                }
            }
        }
        r
    }

    /// A representative of `s(δ)`: the table, then the table entry for the
    /// canonically reordered objects, then the fallback.
    pub fn realize(&self, e: &BiadditiveE, d: &Extension) -> Search<Complex> {
        if let Some(x) = self.table.get(d) {
            return Search::Found(x.clone());
        }
        match self.gaps.get(d) {
            Some(Status::Fail) => return Search::Absent,
            Some(_) => return Search::Exhausted,
            None => {}
        }
        if let Some(x) = self.via_canonical(e, d) {
            return Search::Found(x);
        }
        if let Some(f) = &self.fallback {
            if let Some(s) = self.cache.lock().expect("cache lock").get(d) {
                return s.clone();
            }
            let s = f(d);
            self.cache.lock().expect("cache lock").insert(d.clone(), s.clone());
            return s;
        }
        Search::Exhausted
    }

    fn via_canonical(&self, e: &BiadditiveE, d: &Extension) -> Option<Complex> {
        let cat = e.cat();
        let pc = cat.canonical_permutation(&d.c);
        let pa = cat.canonical_permutation(&d.a);
        let sorted = |p: &[usize]| p.iter().enumerate().all(|(i, &j)| i == j);
        if sorted(&pc) && sorted(&pa) {
            return None;
        }
        // (pa, pc) is an isomorphism of extensions δ -> δ', so the conjugate of
        // s(δ') by it realizes δ.
        let mc = cat.permutation(&d.c, &pc);
        let ma = cat.permutation(&d.a, &pa);
        let mc_inv = cat.inverse(&mc)?;
        let d2 = e.push(&ma, &e.pull(&mc_inv, d).ok()?).ok()?;
        let x2 = self.table.get(&d2)?;
        let mut x = x2.clone();
        let l = x.diffs.len() - 1;
        x.objects[0] = d.a.clone();
        x.diffs[0] = cat.compose(&x2.diffs[0], &ma);
        x.objects[l + 1] = d.c.clone();
        x.diffs[l] = cat.compose(&mc_inv, &x2.diffs[l]);
        Some(x)
    }
}

/// `A →1 A → 0 → … → 0`, the first R2 shape.
pub fn r2_left(cat: &BaseCategory, a: &[usize], n: usize) -> Complex {
    let mut objects = vec![Vec::new(); n + 2];
    objects[0] = a.to_vec();
    objects[1] = a.to_vec();
    let diffs = (0..=n).map(|i| if i == 0 { cat.identity(a) } else { cat.zero(&objects[i], &objects[i + 1]) }).collect();
    Complex { objects, diffs }
}

/// `0 → … → 0 → C →1 C`, the second R2 shape.
pub fn r2_right(cat: &BaseCategory, c: &[usize], n: usize) -> Complex {
    let mut objects = vec![Vec::new(); n + 2];
    objects[n] = c.to_vec();
    objects[n + 1] = c.to_vec();
    let diffs = (0..=n).map(|i| if i == n { cat.identity(c) } else { cat.zero(&objects[i], &objects[i + 1]) }).collect();
    Complex { objects, diffs }
}

/// The split complex with ends `A` and `C`: the sum of the two R2 shapes.
pub fn split_complex(cat: &BaseCategory, a: &[usize], c: &[usize], n: usize) -> Complex {
    r2_left(cat, a, n).direct_sum(cat, &r2_right(cat, c, n))
}

/// `E = 0` realized by split complexes.
pub fn split_structure(ctx: &Ctx, n: usize) -> (BiadditiveE, Realization) {
    let e = BiadditiveE::zero(ctx.cat.clone());
    let cat = ctx.cat.clone();
    let f: Realizer = Arc::new(move |d: &Extension| Search::Found(split_complex(&cat, &d.a, &d.c, n)));
    let r = Realization::tabulate(ctx, &e, n, f);
    (e, r)
}

/// Why `⟨X, δ⟩` is not an n-exangle, if it is not.
pub fn exangle_defect(e: &BiadditiveE, x: &Complex, d: &Extension) -> Result<Option<String>> {
    let cat = e.cat();
    let fld = cat.field();
    if x.len() < 3 || x.objects[0] != d.a || *x.last() != d.c {
        return Err(Error::input("the complex must run from the second to the first object of δ"));
    }
    e.check_ext(d)?;
    if !x.is_complex(cat) {
        return Ok(Some("consecutive maps do not compose to zero".into()));
    }
    let m = x.len();
    for z in 0..cat.num_objects() {
        let zo = [z];
        let mut dims: Vec<usize> = x.objects.iter().map(|o| cat.hom_dim(&zo, o)).collect();
        dims.push(e.dim(&zo, &d.a));
        let mut maps: Vec<Matrix> = x.diffs.iter().map(|g| cat.post_matrix(g, &zo)).collect();
        maps.push(e.pull_matrix(d, &zo));
        let seq = LinearSeq::new(dims, maps)?;
        for i in 1..m {
            if !seq.is_exact_at(fld, i)? {
                return Ok(Some(format!("Hom({}, -) sequence is not exact at position {i}", cat.name(z))));
            }
        }
        let mut dims: Vec<usize> = x.objects.iter().rev().map(|o| cat.hom_dim(o, &zo)).collect();
        dims.push(e.dim(&d.c, &zo));
        let mut maps: Vec<Matrix> = x.diffs.iter().rev().map(|g| cat.pre_matrix(g, &zo)).collect();
        maps.push(e.push_matrix(d, &zo));
        let seq = LinearSeq::new(dims, maps)?;
        for i in 1..m {
            if !seq.is_exact_at(fld, i)? {
                return Ok(Some(format!("Hom(-, {}) sequence is not exact at position {i}", cat.name(z))));
            }
        }
    }
    Ok(None)
}

pub fn is_n_exangle(e: &BiadditiveE, x: &Complex, d: &Extension) -> Result<bool> {
    exangle_defect(e, x, d).map(|o| o.is_none())
}

fn verdict<T>(s: &Search<T>) -> Status {
    match s {
        Search::Found(_) => Status::Pass,
        Search::Absent => Status::Fail,
        Search::Exhausted => Status::Inconclusive,
    }
}

fn show_ext(cat: &BaseCategory, d: &Extension) -> String {
    format!("δ = {:?} ∈ E({}, {})", d.coords, cat.show_object(&d.c), cat.show_object(&d.a))
}

/// Some lift `X -> Y` of every morphism of extensions `δ -> ε`, decided on
/// a basis of the space of pairs `(a, c)` with `a_E δ = c^E ε`.
fn r0_defect(e: &BiadditiveE, n: usize, (d, x): (&Extension, &Complex), (eps, y): (&Extension, &Complex)) -> Option<String> {
    let cat = e.cat();
    let fld = cat.field();
    let m1 = e.push_matrix(d, &eps.a);
    let m2 = e.pull_matrix(eps, &d.c).scale(fld, fld.neg(1));
    let ha = cat.hom_dim(&d.a, &eps.a);
    let hc = cat.hom_dim(&d.c, &eps.c);
    let ker = if m1.rows() == 0 {
        linalg::kernel_basis(fld, &Matrix::zeros(1, ha + hc))
    } else {
        linalg::kernel_basis(fld, &Matrix::hstack(m1.rows(), &[&m1, &m2]))
    };
    for v in ker {
        let a = cat.morphism(&d.a, &eps.a, v[..ha].to_vec());
        let c = cat.morphism(&d.c, &eps.c, v[ha..].to_vec());
        if complexes::chain_maps(cat, x, y, &[(0, &a), (n + 1, &c)]).is_none() {
            return Some(format!(
                "({}, {}) is a morphism {} -> {} with no lift",
                cat.show_morphism(&a),
                cat.show_morphism(&c),
                show_ext(cat, d),
                show_ext(cat, eps)
            ));
        }
    }
    None
}

/// R0, R1 and R2 for a realization, plus completeness of its table.
pub fn check_realization(ctx: &Ctx, e: &BiadditiveE, r: &Realization) -> Report {
    let cat = &ctx.cat;
    let n = r.n;
    let mut rep = Report::new(format!("realization (n = {n})"));
    rep.push(e.validate());

    let mut table = Check::new("table complete");
    let objs = ctx.universe.objects();
    for c in objs {
        for a in objs {
            if r.skipped.contains(&(c.clone(), a.clone())) {
                table.inconclusive(format!("E({}, {}) is too large to tabulate", cat.show_object(c), cat.show_object(a)));
                continue;
            }
            for d in e.elements(c, a) {
                if r.table.contains_key(&d) {
                    table.pass();
                } else {
                    let s = r.gaps.get(&d).copied().unwrap_or(Status::Fail);
                    table.record(s, || format!("no representative for {}", show_ext(cat, &d)));
                }
            }
        }
    }
    rep.push(table);

    let entries: Vec<(&Extension, &Complex)> = r.table.iter().collect();
    let pairs: Vec<(usize, usize)> = (0..entries.len()).flat_map(|i| (0..entries.len()).map(move |j| (i, j))).collect();
    let res: Vec<Option<String>> = pairs.par_iter().map(|&(i, j)| r0_defect(e, n, entries[i], entries[j])).collect();
    let mut r0 = Check::new("R0").with_note("decided on a basis of the morphisms of extensions");
    for o in res {
        match o {
            None => r0.pass(),
            Some(msg) => r0.fail(msg),
        }
    }
    rep.push(r0);

    let mut r1 = Check::new("R1");
    let res: Vec<Result<Option<String>>> = entries.par_iter().map(|(d, x)| exangle_defect(e, x, d)).collect();
    for ((d, _), o) in entries.iter().zip(res) {
        match o {
            Ok(None) => r1.pass(),
            Ok(Some(why)) => r1.fail(format!("s({}) is not an n-exangle: {why}", show_ext(cat, d))),
            Err(err) => r1.fail(format!("s({}): {err}", show_ext(cat, d))),
        }
    }
    rep.push(r1);

    let mut r2 = Check::new("R2");
    for a in objs {
        for (d, shape) in [(e.zero_ext(&[], a), r2_left(cat, a, n)), (e.zero_ext(a, &[]), r2_right(cat, a, n))] {
            let s = match r.realize(e, &d) {
                Search::Found(x) => verdict(&complexes::homotopy_equivalent(cat, &x, &shape, &ctx.cfg)),
                other => verdict(&other).max(Status::Inconclusive),
            };
            r2.record(s, || format!("s({}) is not the class of {}", show_ext(cat, &d), shape.show(cat)));
        }
    }
    rep.push(r2);
    rep
}

/// Objects `Z` of the witness window with `X ⊕ Z` of the same profile as
/// `B`; just the zero object when no room for a contractible summand.
fn complements(ctx: &Ctx, x: &[usize], b: &[usize], room: bool) -> Vec<AddObject> {
    let cat = &ctx.cat;
    if !room {
        return if cat.same_profile(x, b) { vec![Vec::new()] } else { Vec::new() };
    }
    let (px, pb) = (cat.profile(x), cat.profile(b));
    if px.iter().zip(&pb).any(|(u, v)| u > v) {
        return Vec::new();
    }
    let need: Vec<usize> = pb.iter().zip(&px).map(|(v, u)| v - u).collect();
    ctx.witness.objects().iter().filter(|z| cat.profile(z) == need).cloned().collect()
}

/// Is `h` the first map of a complex homotopy equivalent to `x`: an
/// isomorphism `θ: X^1 ⊕ Z -> B` with `θ (d_X^0; 0) = h`, `Z` contractible
/// in degrees 1 and 2.
fn inflation_through(ctx: &Ctx, x: &Complex, h: &AddMorphism) -> Search<()> {
    let cat = &ctx.cat;
    let fld = cat.field();
    let (b, x1) = (&h.tgt, &x.objects[1]);
    let mut exhausted = false;
    for z in complements(ctx, x1, b, x.n() >= 2) {
        let m: AddObject = [x1.clone(), z.clone()].concat();
        let u = cat.from_parts(&[x1.clone(), z], &[x.objects[0].clone()], &[vec![Some(&x.diffs[0])], vec![None]]);
        let Some(space) = linalg::solve_affine(fld, &cat.pre_matrix(&u, b), &h.coords) else { continue };
        match search::find_iso_point(fld, &space, &ctx.cfg, |v| cat.is_iso(&cat.morphism(&m, b, v.to_vec()))) {
            Search::Found(_) => return Search::Found(()),
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

/// The dual of [`inflation_through`] for the last map.
fn deflation_through(ctx: &Ctx, x: &Complex, h: &AddMorphism) -> Search<()> {
    let cat = &ctx.cat;
    let fld = cat.field();
    let n = x.n();
    let (b, xn) = (&h.src, &x.objects[n]);
    let mut exhausted = false;
    for z in complements(ctx, xn, b, n >= 2) {
        let m: AddObject = [xn.clone(), z.clone()].concat();
        let q = cat.from_parts(&[x.last().clone()], &[xn.clone(), z], &[vec![Some(&x.diffs[n]), None]]);
        let Some(space) = linalg::solve_affine(fld, &cat.post_matrix(&q, b), &h.coords) else { continue };
        match search::find_iso_point(fld, &space, &ctx.cfg, |v| cat.is_iso(&cat.morphism(b, &m, v.to_vec()))) {
            Search::Found(_) => return Search::Found(()),
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

/// An extension whose realization has `h` as s-inflation (or s-deflation),
/// with the third object ranging over the witness window.
pub fn find_conflation_for(ctx: &Ctx, e: &BiadditiveE, r: &Realization, h: &AddMorphism, deflation: bool) -> Search<Extension> {
    let mut exhausted = false;
    for other in ctx.witness.objects() {
        let (c, a) = if deflation { (h.tgt.clone(), other.clone()) } else { (other.clone(), h.src.clone()) };
        if e.size(&c, &a) > ctx.cfg.exhaustive_cap {
            exhausted = true;
            continue;
        }
        for d in e.elements(&c, &a) {
            let x = match r.realize(e, &d) {
                Search::Found(x) => x,
                Search::Exhausted => {
                    exhausted = true;
                    continue;
                }
                Search::Absent => continue,
            };
            let s = if deflation { deflation_through(ctx, &x, h) } else { inflation_through(ctx, &x, h) };
            match s {
                Search::Found(()) => return Search::Found(d),
                Search::Exhausted => exhausted = true,
                Search::Absent => {}
            }
        }
    }
    if exhausted {
        Search::Exhausted
    } else {
        Search::Absent
    }
}

fn ea1(ctx: &Ctx, e: &BiadditiveE, r: &Realization, deflations: bool) -> Check {
    let cat = &ctx.cat;
    let kind = if deflations { "deflations" } else { "inflations" };
    let mut chk = Check::new(format!("n-EA1 {kind}"))
        .with_note("members are searched with the third term in the witness window; a composite not found there is inconclusive");
    let morphisms = homalg::universe_morphisms(ctx);
    let found: Vec<Status> = morphisms.par_iter().map(|h| verdict(&find_conflation_for(ctx, e, r, h, deflations))).collect();
    let member: HashMap<&AddMorphism, Status> = morphisms.iter().zip(found.iter().copied()).collect();
    let ms: Vec<&AddMorphism> = morphisms.iter().filter(|h| member[h] == Status::Pass).collect();
    for f in &ms {
        for g in &ms {
            if g.src != f.tgt {
                continue;
            }
            let gf = cat.compose(g, f);
            let s = member.get(&gf).copied().unwrap_or(Status::Inconclusive);
            chk.record(s.min(Status::Inconclusive), || {
                format!("{} ∘ {} is not shown to be an s-{}", cat.show_morphism(g), cat.show_morphism(f), &kind[..kind.len() - 1])
            });
        }
    }
    chk
}

/// The chain `X^1 -> ... -> X^{n+1}` or `X^0 -> ... -> X^n`.
fn drop_first(x: &Complex) -> Complex {
    Complex { objects: x.objects[1..].to_vec(), diffs: x.diffs[1..].to_vec() }
}

/// Searches a good lift among the chain maps `x -> y` with pinned ends:
/// one whose cone, built by `cone`, realizes `target`.
fn good_lift(
    ctx: &Ctx,
    x: &Complex,
    y: &Complex,
    fixed: &[(usize, &AddMorphism)],
    target: &Complex,
    cone: impl Fn(&ComplexMorphism) -> Complex,
) -> Status {
    let cat = &ctx.cat;
    let Some((space, sys)) = complexes::chain_maps(cat, x, y, fixed) else {
        return Status::Fail;
    };
    let mut undecided = false;
    let found = search::find_point(cat.field(), &space, &ctx.cfg, |v| {
        let f = complexes::components_from(&sys, x, y, v);
        match complexes::homotopy_equivalent(cat, target, &cone(&f), &ctx.cfg) {
            Search::Found(_) => true,
            Search::Exhausted => {
                undecided = true;
                false
            }
            Search::Absent => false,
        }
    });
    match found {
        Search::Found(_) => Status::Pass,
        Search::Absent if undecided => Status::Inconclusive,
        other => verdict(&other),
    }
}

/// n-EA2 for `δ ∈ E(D, A)`, `c: C -> D`.
fn ea2_case(ctx: &Ctx, e: &BiadditiveE, r: &Realization, d: &Extension, y: &Complex, c: &AddMorphism) -> (Status, String) {
    let cat = &ctx.cat;
    let n = r.n;
    let what = || format!("{}, c = {}", show_ext(cat, d), cat.show_morphism(c));
    let cd = e.pull(c, d).expect("c ends at D");
    let x = match r.realize(e, &cd) {
        Search::Found(x) => x,
        other => return (verdict(&other).max(Status::Inconclusive), format!("{}: s(c^E δ) unavailable", what())),
    };
    let eps = e.push(&x.diffs[0], d).expect("d_X^0 starts at A");
    let target = match r.realize(e, &eps) {
        Search::Found(t) => t,
        other => return (verdict(&other).max(Status::Inconclusive), format!("{}: s((d_X^0)_E δ) unavailable", what())),
    };
    let id_a = cat.identity(&d.a);
    let (xs, ys) = (drop_first(&x), drop_first(y));
    let s = good_lift(ctx, &x, y, &[(0, &id_a), (n + 1, c)], &target, |f| {
        let fhat = ComplexMorphism { components: f.components[1..].to_vec() };
        complexes::mapping_cone(cat, &xs, &ys, &fhat).expect("chains of equal length")
    });
    (s, format!("{}: no good lift of (1, c)", what()))
}

/// n-EA2ᵒᵖ for `δ ∈ E(C, A)`, `a: A -> B`.
fn ea2op_case(ctx: &Ctx, e: &BiadditiveE, r: &Realization, d: &Extension, x: &Complex, a: &AddMorphism) -> (Status, String) {
    let cat = &ctx.cat;
    let n = r.n;
    let what = || format!("{}, a = {}", show_ext(cat, d), cat.show_morphism(a));
    let ad = e.push(a, d).expect("a starts at A");
    let y = match r.realize(e, &ad) {
        Search::Found(y) => y,
        other => return (verdict(&other).max(Status::Inconclusive), format!("{}: s(a_E δ) unavailable", what())),
    };
    let eps = e.pull(&y.diffs[n], d).expect("d_Y^n ends at C");
    let target = match r.realize(e, &eps) {
        Search::Found(t) => t,
        other => return (verdict(&other).max(Status::Inconclusive), format!("{}: s((d_Y^n)^E δ) unavailable", what())),
    };
    let id_c = cat.identity(&d.c);
    let (xs, ys) = (homalg::truncate(x), homalg::truncate(&y));
    let s = good_lift(ctx, x, &y, &[(0, a), (n + 1, &id_c)], &target, |f| {
        let fcheck = ComplexMorphism { components: f.components[..=n].to_vec() };
        complexes::mapping_cone(cat, &xs, &ys, &fcheck).expect("chains of equal length")
    });
    (s, format!("{}: no good lift of (a, 1)", what()))
}

/// n-EA1 (both halves), n-EA2 and n-EA2ᵒᵖ over the universe.
pub fn check_exangulated_axioms(ctx: &Ctx, e: &BiadditiveE, r: &Realization) -> Report {
    let cat = &ctx.cat;
    let mut rep = Report::new(format!("{}-exangulated axioms", r.n));
    rep.push(ea1(ctx, e, r, false));
    rep.push(ea1(ctx, e, r, true));

    let objs = ctx.universe.objects();
    let entries: Vec<(&Extension, &Complex)> = r.table.iter().collect();
    let mut jobs2 = Vec::new();
    let mut jobs2op = Vec::new();
    for &(d, x) in &entries {
        for o in objs {
            for c in cat.hom_elements(o, &d.c) {
                jobs2.push((d, x, c));
            }
            for a in cat.hom_elements(&d.a, o) {
                jobs2op.push((d, x, a));
            }
        }
    }
    let res: Vec<(Status, String)> = jobs2.par_iter().map(|(d, y, c)| ea2_case(ctx, e, r, d, y, c)).collect();
    let mut c2 = Check::new("n-EA2");
    for (s, msg) in res {
        c2.record(s, || msg);
    }
    rep.push(c2);
    let res: Vec<(Status, String)> = jobs2op.par_iter().map(|(d, x, a)| ea2op_case(ctx, e, r, d, x, a)).collect();
    let mut c2op = Check::new("n-EA2op");
    for (s, msg) in res {
        c2op.record(s, || msg);
    }
    rep.push(c2op);
    search::flag_vacuous(ctx, &mut rep, &["n-EA2", "n-EA2op"]);
    rep
}

/// `E_Σ` with realizations taken from members ending in the given map.
pub fn induced_from_sigma(ctx: &Ctx, t: &Angulation) -> (BiadditiveE, Realization) {
    let e = sigma_extensions(&ctx.cat, t.sigma());
    let (ctx2, t2, e2) = (ctx.clone(), t.clone(), e.clone());
    let f: Realizer = Arc::new(move |d: &Extension| {
        let h = sigma_to_hom(&e2, t2.sigma(), d);
        angulated::last_map_member(&ctx2, &t2, &d.a, &h).map(|s| s.chain())
    });
    let r = Realization::tabulate(ctx, &e, t.n, f);
    (e, r)
}

/// The last map `Y^n -> C` completing an n-pushout `y` of `truncate(x)`.
fn close_pushout(cat: &BaseCategory, x: &Complex, y: Complex, f: &ComplexMorphism) -> Option<Complex> {
    let fld = cat.field();
    let n = x.n();
    let c = x.last();
    let yn = y.objects[n].clone();
    let mut sys = BlockSystem::new();
    let v = sys.var(cat.hom_dim(&yn, c));
    let e1 = sys.eq(cat.hom_dim(&x.objects[n], c));
    sys.term(e1, v, cat.pre_matrix(&f.components[n], c));
    sys.rhs(fld, e1, &x.diffs[n].coords);
    if n >= 1 {
        let e2 = sys.eq(cat.hom_dim(&y.objects[n - 1], c));
        sys.term(e2, v, cat.pre_matrix(&y.diffs[n - 1], c));
    }
    let sol = sys.solve(fld)?;
    let mut y = y;
    y.diffs.push(cat.morphism(&yn, c, sol.particular));
    y.objects.push(c.clone());
    Some(y)
}

/// The sequence obtained from `x` by n-pushout along `g: X^0 -> A'`.
pub fn pushout_along(ctx: &Ctx, x: &Complex, g: &AddMorphism) -> Search<Complex> {
    let accept = |_: &Complex, _: &ComplexMorphism| Search::Found(());
    match homalg::search_n_pushout_completion(ctx, &homalg::truncate(x), x.n(), g, &accept) {
        Search::Found((y, f)) => close_pushout(&ctx.cat, x, y, &f).map_or(Search::Absent, Search::Found),
        Search::Absent => Search::Absent,
        Search::Exhausted => Search::Exhausted,
    }
}

/// The sequence obtained from `x` by n-pullback along `h: C' -> X^{n+1}`.
pub fn pullback_along(ctx: &Ctx, x: &Complex, h: &AddMorphism) -> Search<Complex> {
    let op = ctx.opposite();
    let xo = x.opposite(&ctx.cat);
    let ho = ctx.cat.op_morphism(h);
    pushout_along(&op, &xo, &ho).map(|y| y.opposite(&op.cat))
}

fn found_or(s: Search<Complex>, what: impl FnOnce() -> String) -> Result<Complex> {
    match s {
        Search::Found(x) => Ok(x),
        Search::Absent => Err(Error::input(format!("{} does not exist", what()))),
        Search::Exhausted => Err(Error::input(format!("{} was not found within the witness window", what()))),
    }
}

/// Index of the class of `x` in `classes`.
fn identify(ctx: &Ctx, classes: &[Complex], x: &Complex) -> Result<Option<usize>> {
    let mut exhausted = false;
    for (i, y) in classes.iter().enumerate() {
        match complexes::homotopy_equivalent(&ctx.cat, y, x, &ctx.cfg) {
            Search::Found(_) => return Ok(Some(i)),
            Search::Exhausted => exhausted = true,
            Search::Absent => {}
        }
    }
    if exhausted {
        return Err(Error::input(format!("could not decide the class of {}", x.show(&ctx.cat))));
    }
    Ok(None)
}

/// Classes of admissible sequences between two base objects, with their
/// coordinates in a basis chosen greedily.
struct BaseClasses {
    classes: Vec<Complex>,
    coords: Vec<Vec<u32>>,
    basis: Vec<usize>,
}

impl BaseClasses {
    fn index_of(&self, ctx: &Ctx, x: &Complex) -> Result<usize> {
        identify(ctx, &self.classes, x)?.ok_or_else(|| Error::input(format!("{} is not an admissible class", x.show(&ctx.cat))))
    }
}

/// Baer sum: pushout of `x ⊕ y` along the codiagonal, then pullback along
/// the diagonal.
pub fn baer_sum(ctx: &Ctx, x: &Complex, y: &Complex) -> Result<Complex> {
    let cat = &ctx.cat;
    let (a, c) = (x.first().clone(), x.last().clone());
    let (ia, ic) = (cat.identity(&a), cat.identity(&c));
    let s = x.direct_sum(cat, y);
    let codiag = cat.from_parts(&[a.clone()], &[a.clone(), a.clone()], &[vec![Some(&ia), Some(&ia)]]);
    let p = found_or(pushout_along(ctx, &s, &codiag), || "pushout along the codiagonal".into())?;
    let diag = cat.from_parts(&[c.clone(), c.clone()], &[c.clone()], &[vec![Some(&ic)], vec![Some(&ic)]]);
    found_or(pullback_along(ctx, &p, &diag), || "pullback along the diagonal".into())
}

fn base_classes(ctx: &Ctx, xs: &ExactStructure, c: usize, a: usize, law: &mut Check) -> Result<BaseClasses> {
    let cat = &ctx.cat;
    let p = cat.field().p();
    let (aa, cc) = (vec![a], vec![c]);
    let mut classes: Vec<Complex> = Vec::new();
    for g in &xs.generators {
        if !cat.same_profile(g.first(), &aa) || !cat.same_profile(g.last(), &cc) {
            continue;
        }
        for al in cat.find_isomorphisms(&aa, g.first()) {
            for be in cat.find_isomorphisms(g.last(), &cc) {
                let x = Complex {
                    objects: vec![aa.clone(), g.objects[1].clone(), cc.clone()],
                    diffs: vec![cat.compose(&g.diffs[0], &al), cat.compose(&be, &g.diffs[1])],
                };
                if identify(ctx, &classes, &x)?.is_none() {
                    classes.push(x);
                }
            }
        }
    }
    let zero = identify(ctx, &classes, &split_complex(cat, &aa, &cc, 1))?
        .ok_or_else(|| Error::input(format!("the split sequence {} -> {} is not admissible", cat.name(a), cat.name(c))))?;
    let mut coords: Vec<Option<Vec<u32>>> = vec![None; classes.len()];
    coords[zero] = Some(Vec::new());
    let mut basis = Vec::new();
    let sum = |i: usize, j: usize, classes: &[Complex]| -> Result<usize> {
        let s = baer_sum(ctx, &classes[i], &classes[j])?;
        identify(ctx, classes, &s)?.ok_or_else(|| Error::input("a Baer sum left the admissible classes"))
    };
    while let Some(b) = coords.iter().position(Option::is_none) {
        basis.push(b);
        let k = basis.len();
        for v in coords.iter_mut().flatten() {
            v.push(0);
        }
        let old: Vec<(usize, Vec<u32>)> = coords.iter().enumerate().filter_map(|(i, v)| v.clone().map(|v| (i, v))).collect();
        let mut mult = vec![(b, 1u32)];
        for lam in 2..p {
            let prev = mult.last().unwrap().0;
            mult.push((sum(prev, b, &classes)?, lam));
        }
        for &(m, lam) in &mult {
            for (s, sv) in &old {
                let idx = if *s == zero { m } else { sum(*s, m, &classes)? };
                let mut v = sv.clone();
                v[k - 1] = lam;
                if coords[idx].as_ref().is_some_and(|w| *w != v) {
                    return Err(Error::input("Baer sums are inconsistent with a vector-space structure"));
                }
                coords[idx] = Some(v);
            }
        }
    }
    let coords: Vec<Vec<u32>> = coords.into_iter().map(|v| v.expect("every class has coordinates")).collect();
    let fld = cat.field();
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            let s = sum(i, j, &classes)?;
            if coords[s] == fld.add_vec(&coords[i], &coords[j]) {
                law.pass();
            } else {
                law.fail(format!("Baer sum of classes {i} and {j} in E({}, {}) is not additive", cat.name(c), cat.name(a)));
            }
        }
    }
    Ok(BaseClasses { classes, coords, basis })
}

/// Coordinates of an admissible `x` with arbitrary ends: block `(i, j)` is
/// the class of `x` pulled back to `c_j` and pushed out to `a_i`.
fn coords_of(ctx: &Ctx, e: &BiadditiveE, base: &[Vec<BaseClasses>], x: &Complex) -> Result<Extension> {
    let cat = &ctx.cat;
    let (a, c) = (x.first().clone(), x.last().clone());
    let mut d = e.zero_ext(&c, &a);
    let (id_a, id_c) = (cat.identity(&a), cat.identity(&c));
    for (j, &cj) in c.iter().enumerate() {
        if a.iter().all(|&ai| e.dims()[cj][ai] == 0) {
            continue;
        }
        let inj = cat.restrict(&id_c, 0, c.len(), j, 1);
        let pb = found_or(pullback_along(ctx, x, &inj), || "pullback to a summand".into())?;
        for (i, &ai) in a.iter().enumerate() {
            if e.dims()[cj][ai] == 0 {
                continue;
            }
            let proj = cat.restrict(&id_a, i, 1, 0, a.len());
            let po = found_or(pushout_along(ctx, &pb, &proj), || "pushout to a summand".into())?;
            let bc = &base[cj][ai];
            let k = bc.index_of(ctx, &po)?;
            let sub = Extension { c: vec![cj], a: vec![ai], coords: bc.coords[k].clone() };
            e.embed_into(&mut d.coords, &c, &a, i, j, &sub);
        }
    }
    Ok(d)
}

/// `E_X` for an exact structure with `n = 1`: homotopy classes of admissible
/// sequences, Baer sums, actions by pushout and pullback, and the table of
/// realizations over the universe. The returned check records the group
/// law of the Baer sum on every pair of base classes.
pub fn induced_from_exact(ctx: &Ctx, xs: &ExactStructure) -> Result<(BiadditiveE, Realization, Check)> {
    if xs.n != 1 {
        return Err(Error::input("E_X is constructed for n = 1 only"));
    }
    let cat = &ctx.cat;
    let fld = cat.field();
    let nb = cat.num_objects();
    let mut law = Check::new("E_X group law").with_note("Baer sums of classes agree with coordinate addition");
    let pairs: Vec<(usize, usize)> = (0..nb).flat_map(|c| (0..nb).map(move |a| (c, a))).collect();
    let built: Vec<Result<(BaseClasses, Check)>> = pairs
        .par_iter()
        .map(|&(c, a)| {
            let mut chk = Check::new("law");
            base_classes(ctx, xs, c, a, &mut chk).map(|b| (b, chk))
        })
        .collect();
    let mut base: Vec<Vec<BaseClasses>> = (0..nb).map(|_| Vec::with_capacity(nb)).collect();
    for ((c, _), b) in pairs.iter().zip(built) {
        let (b, chk) = b?;
        law.absorb(chk);
        base[*c].push(b);
    }
    let dims: Vec<Vec<usize>> = base.iter().map(|row| row.iter().map(|b| b.basis.len()).collect()).collect();

    let mut left: Actions = vec![vec![vec![Vec::new(); nb]; nb]; nb];
    let mut right: Actions = vec![vec![vec![Vec::new(); nb]; nb]; nb];
    for c in 0..nb {
        for a in 0..nb {
            for b in 0..nb {
                for k in 0..cat.base_dim(a, b) {
                    let g = cat.basis_morphism(a, b, k);
                    let mut cols = Vec::new();
                    for &i in &base[c][a].basis {
                        let y =
                            found_or(pushout_along(ctx, &base[c][a].classes[i], &g), || "pushout along a basis morphism".into())?;
                        cols.push(base[c][b].coords[base[c][b].index_of(ctx, &y)?].clone());
                    }
                    left[c][a][b].push(Matrix::from_columns(dims[c][b], &cols));
                }
                for k in 0..cat.base_dim(b, c) {
                    let z = cat.basis_morphism(b, c, k);
                    let mut cols = Vec::new();
                    for &i in &base[c][a].basis {
                        let y = found_or(pullback_along(ctx, &base[c][a].classes[i], &z), || {
                            "pullback along a basis morphism".into()
                        })?;
                        cols.push(base[b][a].coords[base[b][a].index_of(ctx, &y)?].clone());
                    }
                    right[c][a][b].push(Matrix::from_columns(dims[b][a], &cols));
                }
            }
        }
    }
    let e = BiadditiveE::new(cat.clone(), dims, left, right)?;

    let gens: Vec<&Complex> = xs
        .generators
        .iter()
        .filter(|g| g.first().len() <= ctx.cfg.universe_bound && g.last().len() <= ctx.cfg.universe_bound)
        .collect();
    let gcoords: Vec<Result<Extension>> = gens.par_iter().map(|g| coords_of(ctx, &e, &base, g)).collect();
    let gcoords: Vec<Extension> = gcoords.into_iter().collect::<Result<_>>()?;
    let objs = ctx.universe.objects();
    let upairs: Vec<(&AddObject, &AddObject)> = objs.iter().flat_map(|c| objs.iter().map(move |a| (c, a))).collect();
    let tables: Vec<BTreeMap<Vec<u32>, Complex>> = upairs
        .par_iter()
        .map(|&(c, a)| {
            let need = e.size(c, a);
            let mut found: BTreeMap<Vec<u32>, Complex> = BTreeMap::new();
            for (g, dg) in gens.iter().zip(&gcoords) {
                if found.len() as u64 >= need {
                    break;
                }
                if !cat.same_profile(g.first(), a) || !cat.same_profile(g.last(), c) {
                    continue;
                }
                let alphas = cat.find_isomorphisms(a, g.first());
                let betas = cat.find_isomorphisms(g.last(), c);
                // δ' = (α⁻¹)_E (β⁻¹)^E δ_g realized by (d^0 α, β d^1)
                let lefts: Vec<Matrix> = alphas.iter().map(|al| e.left_matrix(&cat.inverse(al).unwrap(), c)).collect();
                for be in &betas {
                    let v = e.right_matrix(&cat.inverse(be).unwrap(), g.first()).mul_vec(fld, &dg.coords);
                    for (al, l) in alphas.iter().zip(&lefts) {
                        let w = l.mul_vec(fld, &v);
                        if !found.contains_key(&w) {
                            let x = Complex {
                                objects: vec![a.clone(), g.objects[1].clone(), c.clone()],
                                diffs: vec![cat.compose(&g.diffs[0], al), cat.compose(be, &g.diffs[1])],
                            };
                            found.insert(w, x);
                        }
                    }
                    if found.len() as u64 >= need {
                        break;
                    }
                }
            }
            found
        })
        .collect();
    let mut r = Realization::from_table(1, BTreeMap::new());
    let mut zeros_realized = true;
    for ((c, a), t) in upairs.into_iter().zip(tables) {
        for d in e.elements(c, a) {
            match t.get(&d.coords) {
                Some(x) => {
                    r.table.insert(d, x.clone());
                }
                None => {
                    zeros_realized &= d.coords.iter().any(|&v| v != 0);
                    r.gaps.insert(d, Status::Inconclusive);
                }
            }
        }
    }
    // Past the universe only zero classes get a representative, the split
    // sequence, and only when the table shows split sequences are admissible.
    if zeros_realized {
        let cat = cat.clone();
        r = r.with_fallback(Arc::new(move |d: &Extension| {
            if d.coords.iter().all(|&v| v == 0) {
                Search::Found(split_complex(&cat, &d.a, &d.c, 1))
            } else {
                Search::Exhausted
            }
        }));
    }
    Ok((e, r, law))
}

/// The image of a complex under an additive functor.
pub fn image_complex(f: &AddFunctor, x: &Complex) -> Complex {
    Complex { objects: x.objects.iter().map(|o| f.object(o)).collect(), diffs: x.diffs.iter().map(|d| f.morphism(d)).collect() }
}

/// An additive functor with a natural transformation
/// `Γ: E(-, -) ⇒ E′(F-, F-)` given on base pairs.
#[derive(Clone, Debug)]
pub struct ExFunctorWitness {
    pub functor: Arc<AddFunctor>,
    /// `gamma[c][a]: E(c, a) -> E′(Fc, Fa)`.
    pub gamma: Vec<Vec<Matrix>>,
}

impl ExFunctorWitness {
    /// `Γ_{(C, A)}(δ)`, blockwise.
    pub fn apply(&self, src: &BiadditiveE, dst: &BiadditiveE, d: &Extension) -> Extension {
        let f = &self.functor;
        let fld = src.cat().field();
        let (fc, fa) = (f.object(&d.c), f.object(&d.a));
        let mut out = dst.zero_ext(&fc, &fa);
        let mut i0 = 0;
        for (i, &ai) in d.a.iter().enumerate() {
            let fai = f.base_object(ai);
            let mut j0 = 0;
            for (j, &cj) in d.c.iter().enumerate() {
                let fcj = f.base_object(cj);
                let v = self.gamma[cj][ai].mul_vec(fld, &src.block(d, i, j));
                dst.embed_into(&mut out.coords, &fc, &fa, i0, j0, &Extension { c: fcj.clone(), a: fai.clone(), coords: v });
                j0 += fcj.len();
            }
            i0 += fai.len();
        }
        out
    }

    /// Shapes of Γ and naturality against every base basis morphism.
    pub fn naturality(&self, src: &BiadditiveE, dst: &BiadditiveE) -> Check {
        let cat = src.cat();
        let fld = cat.field();
        let f = &self.functor;
        let nb = cat.num_objects();
        let mut chk = Check::new("Γ natural");
        let shapes_ok = self.gamma.len() == nb
            && (0..nb).all(|c| {
                self.gamma[c].len() == nb
                    && (0..nb).all(|a| {
                        let g = &self.gamma[c][a];
                        g.cols() == src.dims()[c][a] && g.rows() == dst.dim(f.base_object(c), f.base_object(a))
                    })
            });
        if !shapes_ok {
            chk.fail("Γ does not map E(c, a) to E′(Fc, Fa)");
            return chk;
        }
        for c in 0..nb {
            for a in 0..nb {
                let (fc, fa) = (f.base_object(c), f.base_object(a));
                for b in 0..nb {
                    for k in 0..cat.base_dim(a, b) {
                        let x = cat.basis_morphism(a, b, k);
                        let lhs = self.gamma[c][b].mul(fld, src.base_left(c, a, b, k));
                        let rhs = dst.left_matrix(&f.morphism(&x), fc).mul(fld, &self.gamma[c][a]);
                        chk.record(if lhs == rhs { Status::Pass } else { Status::Fail }, || {
                            format!("Γ is not natural in the second slot at {}", cat.show_morphism(&x))
                        });
                    }
                    for k in 0..cat.base_dim(b, c) {
                        let z = cat.basis_morphism(b, c, k);
                        let lhs = self.gamma[b][a].mul(fld, src.base_right(c, a, b, k));
                        let rhs = dst.right_matrix(&f.morphism(&z), fa).mul(fld, &self.gamma[c][a]);
                        chk.record(if lhs == rhs { Status::Pass } else { Status::Fail }, || {
                            format!("Γ is not natural in the first slot at {}", cat.show_morphism(&z))
                        });
                    }
                }
            }
        }
        chk
    }
}

/// Is `(F, Γ)` an n-exangulated functor: `s′(Γδ) = [F X]` for every stored
/// `X = s(δ)` of the source.
pub fn check_exangulated_functor(
    dst_ctx: &Ctx,
    w: &ExFunctorWitness,
    src: (&BiadditiveE, &Realization),
    dst: (&BiadditiveE, &Realization),
) -> Report {
    let cat = &dst_ctx.cat;
    let mut rep = Report::new("n-exangulated functor");
    let mut laws = w.functor.validate();
    laws.name = "F functor laws".into();
    rep.push(laws);
    let nat = w.naturality(src.0, dst.0);
    let shape_failed = nat.status == Status::Fail
        && nat.instances == 1
        && nat.findings.len() == 1
        && nat.findings[0].detail.starts_with("Γ does not map");
    rep.push(nat);
    if shape_failed {
        return rep;
    }
    let entries: Vec<(&Extension, &Complex)> = src.1.table.iter().collect();
    let res: Vec<Status> = entries
        .par_iter()
        .map(|(d, x)| {
            let fx = image_complex(&w.functor, x);
            match dst.1.realize(dst.0, &w.apply(src.0, dst.0, d)) {
                Search::Found(y) => verdict(&complexes::homotopy_equivalent(cat, &y, &fx, &dst_ctx.cfg)),
                other => verdict(&other).max(Status::Inconclusive),
            }
        })
        .collect();
    let mut img = Check::new("image conflations");
    for ((d, _), s) in entries.iter().zip(res) {
        img.record(s, || format!("s′(Γδ) differs from F s(δ) for {}", show_ext(src.0.cat(), d)));
    }
    rep.push(img);
    rep
}

/// `Γ_{(C, A)}(δ) = Θ_A ∘ F(δ)` on `E_Σ`.
pub fn gamma_from_theta(
    w: &AngulatedFunctorWitness,
    src: (&BiadditiveE, &AddFunctor),
    dst: (&BiadditiveE, &AddFunctor),
) -> ExFunctorWitness {
    let f = &w.functor;
    let (se, ssig) = src;
    let (de, dsig) = dst;
    let cat = se.cat();
    let dcat = de.cat();
    let nb = cat.num_objects();
    let gamma = (0..nb)
        .map(|c| {
            (0..nb)
                .map(|a| {
                    let sa = ssig.base_object(a);
                    let n = cat.hom_dim(&[c], sa);
                    let cols: Vec<Vec<u32>> = (0..n)
                        .map(|t| {
                            let mut v = vec![0; n];
                            v[t] = 1;
                            let img = dcat.compose(&w.theta[a], &f.morphism(&cat.morphism(&[c], sa, v)));
                            sigma_from_hom(de, dsig, f.base_object(a), &img).coords
                        })
                        .collect();
                    Matrix::from_columns(de.dim(f.base_object(c), f.base_object(a)), &cols)
                })
                .collect()
        })
        .collect();
    ExFunctorWitness { functor: f.clone(), gamma }
}

/// `Θ_A = Γ_{(ΣA, A)}(1_{ΣA})` on `E_Σ`.
pub fn theta_from_gamma(
    w: &ExFunctorWitness,
    src: (&BiadditiveE, &AddFunctor),
    dst: (&BiadditiveE, &AddFunctor),
) -> AngulatedFunctorWitness {
    let (se, ssig) = src;
    let (de, dsig) = dst;
    let cat = se.cat();
    let theta = (0..cat.num_objects())
        .map(|a| {
            let one = sigma_from_hom(se, ssig, &[a], &cat.identity(ssig.base_object(a)));
            sigma_to_hom(de, dsig, &w.apply(se, de, &one))
        })
        .collect();
    AngulatedFunctorWitness { functor: w.functor.clone(), theta }
}

/// `Γ([X]) = [F X]` on `E_X`, read off on a basis of each base `E(c, a)`;
/// fails when the image of some realization is not realized in the target.
pub fn gamma_from_exact(
    dst_ctx: &Ctx,
    f: &Arc<AddFunctor>,
    src: (&BiadditiveE, &Realization),
    dst: (&BiadditiveE, &Realization),
) -> Result<ExFunctorWitness> {
    let (se, sr) = src;
    let (de, dr) = dst;
    let cat = se.cat();
    let nb = cat.num_objects();
    let mut gamma = Vec::with_capacity(nb);
    for c in 0..nb {
        let mut row = Vec::with_capacity(nb);
        for a in 0..nb {
            let (fc, fa) = (f.base_object(c), f.base_object(a));
            let k = se.dims()[c][a];
            let mut cols = Vec::with_capacity(k);
            for t in 0..k {
                let mut v = vec![0; k];
                v[t] = 1;
                let d = Extension { c: vec![c], a: vec![a], coords: v };
                let x = match sr.realize(se, &d) {
                    Search::Found(x) => x,
                    _ => return Err(Error::input(format!("no realization of {}", show_ext(cat, &d)))),
                };
                let fx = image_complex(f, &x);
                let hit = de.elements(fc, fa).into_iter().find(|eps| match dr.realize(de, eps) {
                    Search::Found(y) => complexes::homotopy_equivalent(&dst_ctx.cat, &y, &fx, &dst_ctx.cfg).is_found(),
                    _ => false,
                });
                match hit {
                    Some(eps) => cols.push(eps.coords),
                    None => return Err(Error::input(format!("F {} is not a realized conflation of the target", x.show(cat)))),
                }
            }
            row.push(Matrix::from_columns(de.dim(fc, fa), &cols));
        }
        gamma.push(row);
    }
    Ok(ExFunctorWitness { functor: f.clone(), gamma })
}

fn agreement(a: Status, b: Status) -> Check {
    let mut chk = Check::new("verdicts agree");
    if a == b {
        chk.pass();
    } else if a == Status::Inconclusive || b == Status::Inconclusive {
        chk.inconclusive(format!("one verdict is inconclusive ({a} vs {b})"));
    } else {
        chk.fail(format!("the two checks disagree ({a} vs {b})"));
    }
    chk
}

/// An angulated structure on each side together with its `E_Σ`.
pub struct SigmaSide<'a> {
    pub angulation: &'a Angulation,
    pub e: &'a BiadditiveE,
    pub r: &'a Realization,
}

/// From `(F, Θ)`: the (n+2)-angulated verdict against the n-exangulated
/// verdict for `Γ = Θ ∘ F(-)`.
pub fn crosscheck_from_theta(dst_ctx: &Ctx, w: &AngulatedFunctorWitness, src: &SigmaSide, dst: &SigmaSide) -> Report {
    let mut rep = Report::new("functor crosscheck (from Θ)");
    let ang = angulated::check_angulated_functor(dst_ctx, w, src.angulation, dst.angulation);
    let g = gamma_from_theta(w, (src.e, src.angulation.sigma()), (dst.e, dst.angulation.sigma()));
    let ex = check_exangulated_functor(dst_ctx, &g, (src.e, src.r), (dst.e, dst.r));
    rep.push(agreement(ang.status(), ex.status()));
    rep.child(ang);
    rep.child(ex);
    rep
}

/// From `(F, Γ)`: the n-exangulated verdict against the (n+2)-angulated
/// verdict for `Θ_X = Γ(1_{ΣX})`.
pub fn crosscheck_from_gamma(dst_ctx: &Ctx, w: &ExFunctorWitness, src: &SigmaSide, dst: &SigmaSide) -> Report {
    let mut rep = Report::new("functor crosscheck (from Γ)");
    let ex = check_exangulated_functor(dst_ctx, w, (src.e, src.r), (dst.e, dst.r));
    let th = theta_from_gamma(w, (src.e, src.angulation.sigma()), (dst.e, dst.angulation.sigma()));
    let ang = angulated::check_angulated_functor(dst_ctx, &th, src.angulation, dst.angulation);
    rep.push(agreement(ex.status(), ang.status()));
    rep.child(ex);
    rep.child(ang);
    rep
}

/// An exact structure with its `E_X`.
pub struct ExactSide<'a> {
    pub xs: &'a ExactStructure,
    pub e: &'a BiadditiveE,
    pub r: &'a Realization,
}

/// The n-exact verdict for `F` against the n-exangulated verdict for
/// `Γ([X]) = [F X]`.
pub fn crosscheck_exact(dst_ctx: &Ctx, f: &Arc<AddFunctor>, src: &ExactSide, dst: &ExactSide) -> Report {
    let mut rep = Report::new("functor crosscheck (exact)");
    let exact = homalg::check_n_exact_functor(dst_ctx, f, src.xs, dst.xs);
    let ex = match gamma_from_exact(dst_ctx, f, (src.e, src.r), (dst.e, dst.r)) {
        Ok(g) => check_exangulated_functor(dst_ctx, &g, (src.e, src.r), (dst.e, dst.r)),
        Err(err) => {
            let mut r = Report::new("n-exangulated functor");
            let mut c = Check::new("Γ from F");
            c.fail(err.to_string());
            r.push(c);
            r
        }
    };
    rep.push(agreement(exact.status(), ex.status()));
    rep.child(exact);
    rep.child(ex);
    rep
}
