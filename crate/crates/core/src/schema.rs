//! The on-disk format: UTF-8 JSON, one structure per file, objects referred
//! to by name, matrices as row-major lists of rows. See `docs/schema.md`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::angulated::{AngulatedFunctorWitness, Angulation, SigmaStructure};
use crate::category::{AddMorphism, AddObject, BaseCategory};
use crate::complexes::{Complex, SigmaSequence};
use crate::error::{Error, Result};
use crate::exangulated::{self, BiadditiveE, ExFunctorWitness, Extension, Realization};
use crate::fixtures;
use crate::functor::{AddFunctor, EquivalenceWitness};
use crate::homalg::ExactStructure;
use crate::linalg::{Matrix, PrimeField};
use crate::search::{Config, Ctx};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorkbenchFile {
    pub schema_version: String,
    pub field_char: u32,
    /// Default universe bound for checks on this file; the CLI flag wins.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe_bound: Option<usize>,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Category {
        category: CategoryDoc,
    },
    Equivalence {
        source: CategoryDoc,
        target: CategoryDoc,
        witness: WitnessDoc,
    },
    Angulation {
        category: CategoryDoc,
        n: usize,
        sigma: SigmaDoc,
        generators: Vec<SigmaSequenceDoc>,
    },
    ExactStructure {
        category: CategoryDoc,
        n: usize,
        generators: Vec<ComplexDoc>,
    },
    Exangulation {
        category: CategoryDoc,
        n: usize,
        #[serde(default)]
        e: EDoc,
        realization: RealizationDoc,
    },
    /// `(F, Θ)`; the categories come from the structures of the job.
    AngulatedFunctor {
        functor: FunctorDoc,
        theta: BTreeMap<String, Vec<u32>>,
    },
    /// `(F, Γ)`; the categories come from the structures of the job.
    ExangulatedFunctor {
        functor: FunctorDoc,
        gamma: Vec<GammaDoc>,
    },
    Job {
        job: JobDoc,
    },
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Category { .. } => "category",
            Payload::Equivalence { .. } => "equivalence",
            Payload::Angulation { .. } => "angulation",
            Payload::ExactStructure { .. } => "exact_structure",
            Payload::Exangulation { .. } => "exangulation",
            Payload::AngulatedFunctor { .. } => "angulated_functor",
            Payload::ExangulatedFunctor { .. } => "exangulated_functor",
            Payload::Job { .. } => "job",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    /// Pairs left out have `Hom = 0`.
    pub homs: Vec<HomDoc>,
    pub identities: BTreeMap<String, Vec<u32>>,
    /// `products[i][j]` is `e_i ∘ e_j` for `e_i ∈ Hom(b, c)`, `e_j ∈ Hom(a, b)`,
    /// in the basis of `Hom(a, c)`. Triples with a zero Hom may be left out.
    #[serde(default)]
    pub compositions: Vec<CompositionDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomDoc {
    pub src: String,
    pub tgt: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompositionDoc {
    pub a: String,
    pub b: String,
    pub c: String,
    pub products: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub objects: BTreeMap<String, Vec<String>>,
    /// Pairs left out must have `Hom = 0` on one side.
    pub homs: Vec<FunctorHomDoc>,
}

/// The matrix of `Hom(src, tgt) -> Hom(F src, F tgt)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctorHomDoc {
    pub src: String,
    pub tgt: String,
    pub matrix: Vec<Vec<u32>>,
}

/// Unit components `y -> FGy` and counit components `GFx -> x` as
/// coordinates; their endpoints follow from `F` and `G`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub f: FunctorDoc,
    pub g: FunctorDoc,
    pub unit: BTreeMap<String, Vec<u32>>,
    pub counit: BTreeMap<String, Vec<u32>>,
}

/// Σ as `f`, its quasi-inverse as `g`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaDoc {
    #[serde(flatten)]
    pub witness: WitnessDoc,
    #[serde(default)]
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub objects: Vec<Vec<String>>,
    pub diffs: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaSequenceDoc {
    pub objects: Vec<Vec<String>>,
    pub diffs: Vec<Vec<u32>>,
    /// `X^{n+1} -> ΣX^0`.
    pub last: Vec<u32>,
}

/// `E` on base objects; pairs and actions left out are zero.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EDoc {
    #[serde(default)]
    pub dims: Vec<EDimDoc>,
    /// `E(c, e_k)` for the basis morphism `e_k: a -> a2`.
    #[serde(default)]
    pub left: Vec<LeftActionDoc>,
    /// `E(e_k, a)` for the basis morphism `e_k: c2 -> c`.
    #[serde(default)]
    pub right: Vec<RightActionDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EDimDoc {
    pub c: String,
    pub a: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeftActionDoc {
    pub c: String,
    pub a: String,
    pub a2: String,
    pub k: usize,
    pub matrix: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RightActionDoc {
    pub c: String,
    pub a: String,
    pub c2: String,
    pub k: usize,
    pub matrix: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RealizationDoc {
    /// Split complexes; only valid with `E = 0`.
    Split,
    Table {
        entries: Vec<RealizationEntryDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizationEntryDoc {
    pub c: Vec<String>,
    pub a: Vec<String>,
    pub coords: Vec<u32>,
    pub complex: ComplexDoc,
}

/// `Γ_{(c, a)}: E(c, a) -> E′(Fc, Fa)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaDoc {
    pub c: String,
    pub a: String,
    pub matrix: Vec<Vec<u32>>,
}

/// A check or transport request. Paths are relative to the job file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum JobDoc {
    Check {
        check: CheckKind,
        /// The structure (or category, for `n-abelian`) to check; the source
        /// structure for functor checks and crosschecks.
        source: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
    Transport {
        source: String,
        /// An equivalence file, or `"skeleton"`.
        along: String,
        output: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    BaseCategory,
    Equivalence,
    Angulated,
    NExact,
    NAbelian,
    Exangulated,
    AngulatedFunctor,
    ExangulatedFunctor,
    Crosscheck,
}

impl WorkbenchFile {
    pub fn new(field: PrimeField, universe_bound: Option<usize>, payload: Payload) -> Self {
        WorkbenchFile { schema_version: SCHEMA_VERSION.into(), field_char: field.p(), universe_bound, payload }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: WorkbenchFile = serde_json::from_str(text).map_err(|e| Error::input(format!("malformed file: {e}")))?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(Error::input(format!("unsupported schema_version {:?}", f.schema_version)));
        }
        f.field()?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize") + "\n"
    }

    pub fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.field_char).map_err(|_| Error::input(format!("field_char {} is not a prime", self.field_char)))
    }

    /// The category every structure in this file lives on.
    pub fn category(&self) -> Result<Arc<BaseCategory>> {
        let fld = self.field()?;
        match &self.payload {
            Payload::Category { category }
            | Payload::Angulation { category, .. }
            | Payload::ExactStructure { category, .. }
            | Payload::Exangulation { category, .. } => category.build(fld),
            Payload::Equivalence { source, .. } => source.build(fld),
            other => Err(Error::input(format!("a {} file carries no category", other.kind()))),
        }
    }
}

// ---- names ----

fn index(cat: &BaseCategory, name: &str, at: &str) -> Result<usize> {
    cat.index_of(name).ok_or_else(|| Error::input(format!("{at}: unknown object `{name}`")))
}

fn object(cat: &BaseCategory, names: &[String], at: &str) -> Result<AddObject> {
    names.iter().map(|n| index(cat, n, at)).collect()
}

fn names(cat: &BaseCategory, x: &[usize]) -> Vec<String> {
    x.iter().map(|&a| cat.name(a).to_string()).collect()
}

fn coords(cat: &BaseCategory, x: &[usize], y: &[usize], v: &[u32], at: &str) -> Result<AddMorphism> {
    let d = cat.hom_dim(x, y);
    if v.len() != d {
        return Err(Error::input(format!("{at}: expected {d} coordinates, found {}", v.len())));
    }
    let p = cat.field().p();
    Ok(cat.morphism(x, y, v.iter().map(|c| c % p).collect()))
}

fn matrix(rows: usize, cols: usize, m: &[Vec<u32>], p: u32, at: &str) -> Result<Matrix> {
    // An empty list stands for any matrix with no entries.
    if rows * cols == 0 && m.iter().all(|r| r.is_empty()) && (m.is_empty() || m.len() == rows) {
        return Ok(Matrix::zeros(rows, cols));
    }
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::input(format!("{at}: expected a {rows}x{cols} matrix")));
    }
    Matrix::new(rows, cols, m.iter().flatten().map(|c| c % p).collect())
}

fn rows(m: &Matrix) -> Vec<Vec<u32>> {
    if m.cols() == 0 {
        return Vec::new();
    }
    m.to_rows()
}

// ---- categories and functors ----

impl CategoryDoc {
    pub fn build(&self, fld: PrimeField) -> Result<Arc<BaseCategory>> {
        let n = self.objects.len();
        let pos = |s: &str, at: &str| {
            self.objects.iter().position(|o| o == s).ok_or_else(|| Error::input(format!("{at}: unknown object `{s}`")))
        };
        let mut dims = vec![vec![0; n]; n];
        for h in &self.homs {
            dims[pos(&h.src, "homs")?][pos(&h.tgt, "homs")?] = h.dim;
        }
        let mut ids = vec![Vec::new(); n];
        for (a, id) in ids.iter_mut().enumerate() {
            *id = match self.identities.get(&self.objects[a]) {
                Some(v) => v.clone(),
                None if dims[a][a] == 0 => Vec::new(),
                None => return Err(Error::input(format!("identities: missing `{}`", self.objects[a]))),
            };
        }
        let mut comp = vec![Vec::new(); n * n * n];
        let mut given = vec![false; n * n * n];
        for c in &self.compositions {
            let at = format!("compositions ({}, {}, {})", c.a, c.b, c.c);
            let (a, b, cc) = (pos(&c.a, &at)?, pos(&c.b, &at)?, pos(&c.c, &at)?);
            let (dbc, dab, dac) = (dims[b][cc], dims[a][b], dims[a][cc]);
            if c.products.len() != dbc || c.products.iter().any(|r| r.len() != dab || r.iter().any(|v| v.len() != dac)) {
                return Err(Error::input(format!("{at}: expected {dbc}x{dab} products of length {dac}")));
            }
            let t = (a * n + b) * n + cc;
            comp[t] = c.products.iter().flatten().flatten().copied().collect();
            given[t] = true;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let t = (a * n + b) * n + c;
                    let (dbc, dab, dac) = (dims[b][c], dims[a][b], dims[a][c]);
                    if !given[t] {
                        if dbc * dab * dac != 0 {
                            return Err(Error::input(format!(
                                "compositions: missing ({}, {}, {})",
                                self.objects[a], self.objects[b], self.objects[c]
                            )));
                        }
                        comp[t] = vec![0; dbc * dab * dac];
                    }
                }
            }
        }
        Ok(Arc::new(BaseCategory::new(fld, self.objects.clone(), dims, comp, ids)?))
    }

    pub fn from_category(cat: &BaseCategory) -> Self {
        let n = cat.num_objects();
        let nm = |a: usize| cat.name(a).to_string();
        let mut homs = Vec::new();
        let mut identities = BTreeMap::new();
        let mut compositions = Vec::new();
        for a in 0..n {
            identities.insert(nm(a), cat.base_identity(a).to_vec());
            for b in 0..n {
                if cat.base_dim(a, b) > 0 {
                    homs.push(HomDoc { src: nm(a), tgt: nm(b), dim: cat.base_dim(a, b) });
                }
                for c in 0..n {
                    let (dbc, dab, dac) = (cat.base_dim(b, c), cat.base_dim(a, b), cat.base_dim(a, c));
                    if dbc * dab * dac == 0 {
                        continue;
                    }
                    let t = cat.comp_table(a, b, c);
                    let products = (0..dbc)
                        .map(|i| (0..dab).map(|j| t[(i * dab + j) * dac..(i * dab + j + 1) * dac].to_vec()).collect())
                        .collect();
                    compositions.push(CompositionDoc { a: nm(a), b: nm(b), c: nm(c), products });
                }
            }
        }
        CategoryDoc { objects: cat.names().to_vec(), homs, identities, compositions }
    }
}

impl FunctorDoc {
    pub fn build(&self, src: &Arc<BaseCategory>, tgt: &Arc<BaseCategory>, at: &str) -> Result<AddFunctor> {
        let n = src.num_objects();
        let mut objs = Vec::with_capacity(n);
        for a in 0..n {
            let o = self.objects.get(src.name(a)).ok_or_else(|| Error::input(format!("{at}: no image for `{}`", src.name(a))))?;
            objs.push(object(tgt, o, at)?);
        }
        let p = src.field().p();
        let mut homs: Vec<Vec<Option<Matrix>>> = vec![vec![None; n]; n];
        for h in &self.homs {
            let hat = format!("{at}: hom ({}, {})", h.src, h.tgt);
            let (a, b) = (index(src, &h.src, &hat)?, index(src, &h.tgt, &hat)?);
            homs[a][b] = Some(matrix(tgt.hom_dim(&objs[a], &objs[b]), src.base_dim(a, b), &h.matrix, p, &hat)?);
        }
        let mut out = Vec::with_capacity(n);
        for (a, row) in homs.into_iter().enumerate() {
            let mut r = Vec::with_capacity(n);
            for (b, m) in row.into_iter().enumerate() {
                let (rows, cols) = (tgt.hom_dim(&objs[a], &objs[b]), src.base_dim(a, b));
                r.push(match m {
                    Some(m) => m,
                    None if rows * cols == 0 => Matrix::zeros(rows, cols),
                    None => return Err(Error::input(format!("{at}: missing hom ({}, {})", src.name(a), src.name(b)))),
                });
            }
            out.push(r);
        }
        AddFunctor::new(src.clone(), tgt.clone(), objs, out)
    }

    pub fn from_functor(f: &AddFunctor) -> Self {
        let (src, tgt) = (f.src(), f.tgt());
        let n = src.num_objects();
        let objects = (0..n).map(|a| (src.name(a).to_string(), names(tgt, f.base_object(a)))).collect();
        let mut homs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let m = f.base_matrix(a, b);
                if m.rows() * m.cols() > 0 {
                    homs.push(FunctorHomDoc { src: src.name(a).into(), tgt: src.name(b).into(), matrix: rows(m) });
                }
            }
        }
        FunctorDoc { objects, homs }
    }
}

fn components(
    cat: &BaseCategory,
    map: &BTreeMap<String, Vec<u32>>,
    ends: impl Fn(usize) -> (AddObject, AddObject),
    at: &str,
) -> Result<Vec<AddMorphism>> {
    (0..cat.num_objects())
        .map(|a| {
            let (x, y) = ends(a);
            let v = map.get(cat.name(a)).ok_or_else(|| Error::input(format!("{at}: missing component at `{}`", cat.name(a))))?;
            coords(cat, &x, &y, v, &format!("{at} at `{}`", cat.name(a)))
        })
        .collect()
}

fn component_map(cat: &BaseCategory, comps: &[AddMorphism]) -> BTreeMap<String, Vec<u32>> {
    comps.iter().enumerate().map(|(a, m)| (cat.name(a).to_string(), m.coords.clone())).collect()
}

impl WitnessDoc {
    pub fn build(&self, c: &Arc<BaseCategory>, d: &Arc<BaseCategory>) -> Result<EquivalenceWitness> {
        let f = Arc::new(self.f.build(c, d, "witness.f")?);
        let g = Arc::new(self.g.build(d, c, "witness.g")?);
        let unit = components(d, &self.unit, |y| (vec![y], f.object(g.base_object(y))), "witness.unit")?;
        let counit = components(c, &self.counit, |x| (g.object(f.base_object(x)), vec![x]), "witness.counit")?;
        EquivalenceWitness::new(f, g, unit, counit)
    }

    pub fn from_witness(w: &EquivalenceWitness) -> Self {
        WitnessDoc {
            f: FunctorDoc::from_functor(&w.f),
            g: FunctorDoc::from_functor(&w.g),
            unit: component_map(w.d(), &w.unit),
            counit: component_map(w.c(), &w.counit),
        }
    }
}

// ---- complexes and structures ----

impl ComplexDoc {
    pub fn build(&self, cat: &BaseCategory, at: &str) -> Result<Complex> {
        let objs: Vec<AddObject> = self.objects.iter().map(|o| object(cat, o, at)).collect::<Result<_>>()?;
        if objs.len() < 2 || self.diffs.len() + 1 != objs.len() {
            return Err(Error::input(format!(
                "{at}: {} objects need {} differentials",
                objs.len(),
                objs.len().saturating_sub(1)
            )));
        }
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, v)| coords(cat, &objs[i], &objs[i + 1], v, &format!("{at}, d^{i}")))
            .collect::<Result<_>>()?;
        Complex::new(objs, diffs).map_err(|e| Error::input(format!("{at}: {e}")))
    }

    pub fn from_complex(cat: &BaseCategory, x: &Complex) -> Self {
        ComplexDoc {
            objects: x.objects.iter().map(|o| names(cat, o)).collect(),
            diffs: x.diffs.iter().map(|d| d.coords.clone()).collect(),
        }
    }
}

impl SigmaSequenceDoc {
    pub fn build(&self, cat: &BaseCategory, sigma: &AddFunctor, at: &str) -> Result<SigmaSequence> {
        let chain = ComplexDoc { objects: self.objects.clone(), diffs: self.diffs.clone() };
        let objs: Vec<AddObject> = chain.objects.iter().map(|o| object(cat, o, at)).collect::<Result<_>>()?;
        if objs.len() < 3 || self.diffs.len() + 1 != objs.len() {
            return Err(Error::input(format!(
                "{at}: {} objects need {} differentials",
                objs.len(),
                objs.len().saturating_sub(1)
            )));
        }
        let diffs: Vec<AddMorphism> = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, v)| coords(cat, &objs[i], &objs[i + 1], v, &format!("{at}, d^{i}")))
            .collect::<Result<_>>()?;
        let last = coords(cat, &objs[objs.len() - 1], &sigma.object(&objs[0]), &self.last, &format!("{at}, last map"))?;
        SigmaSequence::new(objs, diffs, last, sigma).map_err(|e| Error::input(format!("{at}: {e}")))
    }

    pub fn from_sequence(cat: &BaseCategory, s: &SigmaSequence) -> Self {
        SigmaSequenceDoc {
            objects: s.objects.iter().map(|o| names(cat, o)).collect(),
            diffs: s.diffs.iter().map(|d| d.coords.clone()).collect(),
            last: s.last.coords.clone(),
        }
    }
}

pub fn build_angulation(cat: &Arc<BaseCategory>, n: usize, sigma: &SigmaDoc, gens: &[SigmaSequenceDoc]) -> Result<Angulation> {
    let w = sigma.witness.build(cat, cat)?;
    let s = SigmaStructure::new(w, sigma.strict)?;
    let gens =
        gens.iter().enumerate().map(|(i, g)| g.build(cat, s.sigma(), &format!("generator {i}"))).collect::<Result<Vec<_>>>()?;
    Angulation::new(n, s, gens)
}

pub fn angulation_payload(t: &Angulation) -> Payload {
    let cat = t.sigma().src().clone();
    Payload::Angulation {
        category: CategoryDoc::from_category(&cat),
        n: t.n,
        sigma: SigmaDoc { witness: WitnessDoc::from_witness(&t.sigma.witness), strict: t.sigma.strict },
        generators: t.generators.iter().map(|g| SigmaSequenceDoc::from_sequence(&cat, g)).collect(),
    }
}

pub fn build_exact(cat: &Arc<BaseCategory>, n: usize, gens: &[ComplexDoc]) -> Result<ExactStructure> {
    let gens = gens.iter().enumerate().map(|(i, g)| g.build(cat, &format!("generator {i}"))).collect::<Result<Vec<_>>>()?;
    ExactStructure::new(n, gens)
}

pub fn exact_payload(cat: &BaseCategory, xs: &ExactStructure) -> Payload {
    Payload::ExactStructure {
        category: CategoryDoc::from_category(cat),
        n: xs.n,
        generators: xs.generators.iter().map(|g| ComplexDoc::from_complex(cat, g)).collect(),
    }
}

impl EDoc {
    pub fn build(&self, cat: &Arc<BaseCategory>) -> Result<BiadditiveE> {
        let nb = cat.num_objects();
        let p = cat.field().p();
        let mut dims = vec![vec![0; nb]; nb];
        for d in &self.dims {
            dims[index(cat, &d.c, "e.dims")?][index(cat, &d.a, "e.dims")?] = d.dim;
        }
        let mut left: BTreeMap<(usize, usize, usize, usize), Matrix> = BTreeMap::new();
        for l in &self.left {
            let at = format!("e.left ({}, {}, {}, {})", l.c, l.a, l.a2, l.k);
            let (c, a, a2) = (index(cat, &l.c, &at)?, index(cat, &l.a, &at)?, index(cat, &l.a2, &at)?);
            if l.k >= cat.base_dim(a, a2) {
                return Err(Error::input(format!("{at}: no basis morphism {}", l.k)));
            }
            left.insert((c, a, a2, l.k), matrix(dims[c][a2], dims[c][a], &l.matrix, p, &at)?);
        }
        let mut right: BTreeMap<(usize, usize, usize, usize), Matrix> = BTreeMap::new();
        for r in &self.right {
            let at = format!("e.right ({}, {}, {}, {})", r.c, r.a, r.c2, r.k);
            let (c, a, c2) = (index(cat, &r.c, &at)?, index(cat, &r.a, &at)?, index(cat, &r.c2, &at)?);
            if r.k >= cat.base_dim(c2, c) {
                return Err(Error::input(format!("{at}: no basis morphism {}", r.k)));
            }
            right.insert((c, a, c2, r.k), matrix(dims[c2][a], dims[c][a], &r.matrix, p, &at)?);
        }
        let dl = dims.clone();
        BiadditiveE::from_fn(
            cat.clone(),
            dims,
            |c, a, a2, k| left.get(&(c, a, a2, k)).cloned().unwrap_or_else(|| Matrix::zeros(dl[c][a2], dl[c][a])),
            |c, a, c2, k| right.get(&(c, a, c2, k)).cloned().unwrap_or_else(|| Matrix::zeros(dl[c2][a], dl[c][a])),
        )
    }

    pub fn from_e(e: &BiadditiveE) -> Self {
        let cat = e.cat();
        let nb = cat.num_objects();
        let nm = |a: usize| cat.name(a).to_string();
        let mut doc = EDoc::default();
        for c in 0..nb {
            for a in 0..nb {
                if e.dims()[c][a] > 0 {
                    doc.dims.push(EDimDoc { c: nm(c), a: nm(a), dim: e.dims()[c][a] });
                }
                for b in 0..nb {
                    for k in 0..cat.base_dim(a, b) {
                        let m = e.base_left(c, a, b, k);
                        if !m.is_zero() {
                            doc.left.push(LeftActionDoc { c: nm(c), a: nm(a), a2: nm(b), k, matrix: rows(m) });
                        }
                    }
                    for k in 0..cat.base_dim(b, c) {
                        let m = e.base_right(c, a, b, k);
                        if !m.is_zero() {
                            doc.right.push(RightActionDoc { c: nm(c), a: nm(a), c2: nm(b), k, matrix: rows(m) });
                        }
                    }
                }
            }
        }
        doc
    }
}

/// Builds `(E, s)`; a split realization is tabulated over `ctx`.
pub fn build_exangulation(ctx: &Ctx, n: usize, e: &EDoc, r: &RealizationDoc) -> Result<(BiadditiveE, Realization)> {
    let cat = &ctx.cat;
    let e = e.build(cat)?;
    match r {
        RealizationDoc::Split => {
            if !e.is_zero() {
                return Err(Error::input("a split realization needs E = 0"));
            }
            Ok(exangulated::split_structure(ctx, n))
        }
        RealizationDoc::Table { entries } => {
            let mut table = BTreeMap::new();
            for (i, t) in entries.iter().enumerate() {
                let at = format!("realization entry {i}");
                let (c, a) = (object(cat, &t.c, &at)?, object(cat, &t.a, &at)?);
                let d = Extension { c, a, coords: t.coords.iter().map(|v| v % cat.field().p()).collect() };
                e.check_ext(&d).map_err(|err| Error::input(format!("{at}: {err}")))?;
                let x = t.complex.build(cat, &at)?;
                if x.n() != n || x.objects[0] != d.a || *x.last() != d.c {
                    return Err(Error::input(format!("{at}: the complex does not run from A to C with n = {n}")));
                }
                table.insert(d, x);
            }
            Ok((e, Realization::from_table(n, table)))
        }
    }
}

/// With `E = 0` every realization is the split one, so the table is
/// replaced by `split`; the checker then realizes beyond the universe too.
pub fn exangulation_payload(e: &BiadditiveE, r: &Realization) -> Payload {
    let cat = e.cat();
    if e.is_zero() {
        return Payload::Exangulation {
            category: CategoryDoc::from_category(cat),
            n: r.n,
            e: EDoc::from_e(e),
            realization: RealizationDoc::Split,
        };
    }
    let entries = r
        .table
        .iter()
        .map(|(d, x)| RealizationEntryDoc {
            c: names(cat, &d.c),
            a: names(cat, &d.a),
            coords: d.coords.clone(),
            complex: ComplexDoc::from_complex(cat, x),
        })
        .collect();
    Payload::Exangulation {
        category: CategoryDoc::from_category(cat),
        n: r.n,
        e: EDoc::from_e(e),
        realization: RealizationDoc::Table { entries },
    }
}

pub fn build_angulated_functor(
    functor: &FunctorDoc,
    theta: &BTreeMap<String, Vec<u32>>,
    src: &Angulation,
    dst: &Angulation,
) -> Result<AngulatedFunctorWitness> {
    let (c, d) = (src.sigma().src(), dst.sigma().src());
    let f = Arc::new(functor.build(c, d, "functor")?);
    let theta = components(c, theta, |x| (f.object(src.sigma().base_object(x)), dst.sigma().object(f.base_object(x))), "theta")?;
    Ok(AngulatedFunctorWitness { functor: f, theta })
}

pub fn angulated_functor_payload(w: &AngulatedFunctorWitness) -> Payload {
    Payload::AngulatedFunctor { functor: FunctorDoc::from_functor(&w.functor), theta: component_map(w.functor.src(), &w.theta) }
}

pub fn build_exangulated_functor(
    functor: &FunctorDoc,
    gamma: &[GammaDoc],
    src: &BiadditiveE,
    dst: &BiadditiveE,
) -> Result<ExFunctorWitness> {
    let (c, d) = (src.cat(), dst.cat());
    let f = Arc::new(functor.build(c, d, "functor")?);
    let nb = c.num_objects();
    let p = c.field().p();
    let mut g: Vec<Vec<Option<Matrix>>> = vec![vec![None; nb]; nb];
    for gd in gamma {
        let at = format!("gamma ({}, {})", gd.c, gd.a);
        let (x, a) = (index(c, &gd.c, &at)?, index(c, &gd.a, &at)?);
        g[x][a] = Some(matrix(dst.dim(f.base_object(x), f.base_object(a)), src.dims()[x][a], &gd.matrix, p, &at)?);
    }
    let mut gamma = Vec::with_capacity(nb);
    for (x, row) in g.into_iter().enumerate() {
        let mut r = Vec::with_capacity(nb);
        for (a, m) in row.into_iter().enumerate() {
            let (rows, cols) = (dst.dim(f.base_object(x), f.base_object(a)), src.dims()[x][a]);
            r.push(match m {
                Some(m) => m,
                None if rows * cols == 0 => Matrix::zeros(rows, cols),
                None => return Err(Error::input(format!("gamma: missing ({}, {})", c.name(x), c.name(a)))),
            });
        }
        gamma.push(r);
    }
    Ok(ExFunctorWitness { functor: f, gamma })
}

pub fn exangulated_functor_payload(w: &ExFunctorWitness) -> Payload {
    let c = w.functor.src();
    let nb = c.num_objects();
    let mut gamma = Vec::new();
    for x in 0..nb {
        for a in 0..nb {
            let m = &w.gamma[x][a];
            if m.rows() * m.cols() > 0 {
                gamma.push(GammaDoc { c: c.name(x).into(), a: c.name(a).into(), matrix: rows(m) });
            }
        }
    }
    Payload::ExangulatedFunctor { functor: FunctorDoc::from_functor(&w.functor), gamma }
}

pub fn equivalence_payload(w: &EquivalenceWitness) -> Payload {
    Payload::Equivalence {
        source: CategoryDoc::from_category(w.c()),
        target: CategoryDoc::from_category(w.d()),
        witness: WitnessDoc::from_witness(w),
    }
}

fn job(j: JobDoc) -> Payload {
    Payload::Job { job: j }
}

fn check_job(check: CheckKind, source: &str) -> JobDoc {
    JobDoc::Check { check, source: source.into(), target: None, witness: None, n: None }
}

fn transport_job(source: &str, along: &str, output: &str) -> JobDoc {
    JobDoc::Transport { source: source.into(), along: along.into(), output: output.into(), n: None }
}

/// The files under `fixtures/`, by file name. `emit_fixtures` writes them
/// and a test keeps the checked-in copies in sync.
pub fn shipped_fixtures() -> Vec<(&'static str, WorkbenchFile)> {
    let f2 = PrimeField::new(2).expect("2 is prime");
    let file = |p: Payload| WorkbenchFile::new(f2, Some(2), p);
    let (s, t) = fixtures::triangulated();
    let dbl = fixtures::doubling(s.clone(), fixtures::doubled());
    let doubled_t =
        crate::transport::transport_angulation(&t, &dbl, &Config::new(2)).expect("the doubling witness is valid").target;
    let vect = fixtures::one_object("k");
    let split = Payload::Exangulation {
        category: CategoryDoc::from_category(&s),
        n: 1,
        e: EDoc::default(),
        realization: RealizationDoc::Split,
    };
    let id = AngulatedFunctorWitness { functor: Arc::new(AddFunctor::identity(s.clone())), theta: vec![s.identity(&[0])] };
    let mut abelian = check_job(CheckKind::NAbelian, "vect.json");
    if let JobDoc::Check { n, .. } = &mut abelian {
        *n = Some(1);
    }
    let mut cross = check_job(CheckKind::Crosscheck, "triangulated.json");
    if let JobDoc::Check { target, witness, .. } = &mut cross {
        *target = Some("triangulated.json".into());
        *witness = Some("identity.functor.json".into());
    }
    vec![
        ("triangulated.json", file(angulation_payload(&t))),
        ("split_exangulated.json", file(split)),
        ("doubled.json", file(Payload::Category { category: CategoryDoc::from_category(dbl.d()) })),
        ("doubling.json", file(equivalence_payload(&dbl))),
        ("doubled_triangulated.json", file(angulation_payload(&doubled_t))),
        ("vect.json", file(exact_payload(&vect, &fixtures::split_exact_structure(&vect, 1, 2)))),
        ("vect_doubling.json", file(equivalence_payload(&fixtures::doubling(vect, fixtures::doubled())))),
        ("identity.functor.json", file(angulated_functor_payload(&id))),
        ("triangulated.job.json", file(job(check_job(CheckKind::Angulated, "triangulated.json")))),
        ("split_exangulated.job.json", file(job(check_job(CheckKind::Exangulated, "split_exangulated.json")))),
        ("doubling.job.json", file(job(check_job(CheckKind::Equivalence, "doubling.json")))),
        ("vect_exact.job.json", file(job(check_job(CheckKind::NExact, "vect.json")))),
        ("vect_abelian.job.json", file(job(abelian))),
        ("crosscheck.job.json", file(job(cross))),
        (
            "transport_triangulated.job.json",
            file(job(transport_job("triangulated.json", "doubling.json", "out/doubled_triangulated.json"))),
        ),
        (
            "transport_split.job.json",
            file(job(transport_job("split_exangulated.json", "doubling.json", "out/doubled_split.json"))),
        ),
        ("transport_vect.job.json", file(job(transport_job("vect.json", "vect_doubling.json", "out/doubled_vect.json")))),
        ("skeleton.job.json", file(job(transport_job("doubled_triangulated.json", "skeleton", "out/skeletal.json")))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::search::Config;

    fn round_trip(p: Payload) -> WorkbenchFile {
        let f = WorkbenchFile::new(PrimeField::new(2).unwrap(), Some(2), p);
        let back = WorkbenchFile::parse(&f.to_json()).unwrap();
        assert_eq!(back, f);
        back
    }

    #[test]
    fn categories_round_trip() {
        for c in [fixtures::doubled(), fixtures::dual_numbers_modules(), fixtures::two_simples()] {
            let f = round_trip(Payload::Category { category: CategoryDoc::from_category(&c) });
            assert_eq!(*f.category().unwrap(), *c);
        }
    }

    #[test]
    fn angulations_round_trip() {
        let (cat, t) = fixtures::triangulated();
        let f = round_trip(angulation_payload(&t));
        let Payload::Angulation { n, sigma, generators, .. } = &f.payload else { unreachable!() };
        let back = build_angulation(&cat, *n, sigma, generators).unwrap();
        assert_eq!(back.generators, t.generators);
        assert_eq!(back.sigma.witness.f, t.sigma.witness.f);
    }

    #[test]
    fn exangulations_round_trip() {
        let (cat, t) = fixtures::triangulated();
        let ctx = Ctx::new(cat.clone(), Config::new(1));
        let (e, r) = exangulated::induced_from_sigma(&ctx, &t);
        let f = round_trip(exangulation_payload(&e, &r));
        let Payload::Exangulation { n, e: ed, realization, .. } = &f.payload else { unreachable!() };
        let (e2, r2) = build_exangulation(&ctx, *n, ed, realization).unwrap();
        assert_eq!(e2, e);
        assert_eq!(r2.table, r.table);
    }

    #[test]
    fn unknown_names_are_located() {
        let doc = CategoryDoc {
            objects: vec!["S".into()],
            homs: vec![HomDoc { src: "S".into(), tgt: "T".into(), dim: 1 }],
            identities: BTreeMap::new(),
            compositions: Vec::new(),
        };
        let err = doc.build(PrimeField::new(2).unwrap()).unwrap_err();
        assert!(err.to_string().contains("unknown object `T`"));
    }

    #[test]
    fn wrong_version_is_rejected() {
        let f = WorkbenchFile::new(
            PrimeField::new(2).unwrap(),
            None,
            Payload::Category { category: CategoryDoc::from_category(&fixtures::one_object("S")) },
        );
        let text = f.to_json().replace("\"1\"", "\"2\"");
        assert!(WorkbenchFile::parse(&text).is_err());
    }
}
