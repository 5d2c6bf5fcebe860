//! Complexes concentrated in degrees `0..=m`, Σ-sequences, chain maps,
//! homotopies, mapping cones and rotations.
//!
//! The same [`Complex`] type holds an element of `C^n` (with `n + 2`
//! objects) and the shorter chains in `C^{n-1}` fed to the mapping cone.
//! Signs are computed in `F_p`, so over `F_2` they collapse.

use crate::category::{AddMorphism, AddObject, BaseCategory};
use crate::error::{Error, Result};
use crate::functor::AddFunctor;
use crate::linalg::{AffineSpace, Matrix};
use crate::search::{self, BlockSystem, Config, Search};

/// A chain `X^0 -> X^1 -> ... -> X^m`. Whether consecutive maps compose to
/// zero is checked separately by [`Complex::is_complex`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    pub objects: Vec<AddObject>,
    pub diffs: Vec<AddMorphism>,
}

/// An `(n+2)`-Σ-sequence: a chain `X^0 -> ... -> X^{n+1}` plus the last map
/// `X^{n+1} -> Σ X^0`. The functor Σ is supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaSequence {
    pub objects: Vec<AddObject>,
    pub diffs: Vec<AddMorphism>,
    pub last: AddMorphism,
}

/// A degreewise family of morphisms between chains of equal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexMorphism {
    pub components: Vec<AddMorphism>,
}

impl Complex {
    pub fn new(objects: Vec<AddObject>, diffs: Vec<AddMorphism>) -> Result<Self> {
        if objects.is_empty() || diffs.len() + 1 != objects.len() {
            return Err(Error::shape("a chain with k objects needs k - 1 maps"));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.src != objects[i] || d.tgt != objects[i + 1] {
                return Err(Error::shape(format!("map d^{i} has the wrong endpoints")));
            }
        }
        Ok(Complex { objects, diffs })
    }

    /// Builds the chain from its maps alone.
    pub fn from_diffs(diffs: Vec<AddMorphism>) -> Self {
        let mut objects: Vec<AddObject> = diffs.iter().map(|d| d.src.clone()).collect();
        objects.push(diffs.last().expect("at least one map").tgt.clone());
        Complex { objects, diffs }
    }

    /// For an element of `C^n`: `n = (#objects) - 2`.
    pub fn n(&self) -> usize {
        self.objects.len() - 2
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn first(&self) -> &AddObject {
        &self.objects[0]
    }

    pub fn last(&self) -> &AddObject {
        self.objects.last().unwrap()
    }

    pub fn is_complex(&self, cat: &BaseCategory) -> bool {
        self.diffs.windows(2).all(|w| cat.is_zero(&cat.compose(&w[1], &w[0])))
    }

    pub fn identity(&self, cat: &BaseCategory) -> ComplexMorphism {
        ComplexMorphism { components: self.objects.iter().map(|x| cat.identity(x)).collect() }
    }

    pub fn zero_to(&self, cat: &BaseCategory, other: &Complex) -> ComplexMorphism {
        ComplexMorphism { components: self.objects.iter().zip(&other.objects).map(|(x, y)| cat.zero(x, y)).collect() }
    }

    pub fn direct_sum(&self, cat: &BaseCategory, other: &Complex) -> Complex {
        assert_eq!(self.len(), other.len());
        let diffs = self.diffs.iter().zip(&other.diffs).map(|(a, b)| cat.direct_sum(a, b)).collect();
        let objects = self.objects.iter().zip(&other.objects).map(|(a, b)| [a.clone(), b.clone()].concat()).collect();
        Complex { objects, diffs }
    }

    /// The same chain read in the opposite category: objects reversed.
    pub fn opposite(&self, cat: &BaseCategory) -> Complex {
        let objects: Vec<AddObject> = self.objects.iter().rev().cloned().collect();
        let diffs: Vec<AddMorphism> = self.diffs.iter().rev().map(|d| cat.op_morphism(d)).collect();
        Complex { objects, diffs }
    }

    /// Total summand count, used to order search results.
    pub fn size(&self) -> usize {
        self.objects.iter().map(Vec::len).sum()
    }

    pub fn show(&self, cat: &BaseCategory) -> String {
        let mut s = cat.show_object(&self.objects[0]);
        for (d, x) in self.diffs.iter().zip(&self.objects[1..]) {
            s.push_str(&format!(" -{:?}-> {}", d.coords, cat.show_object(x)));
        }
        s
    }
}

impl ComplexMorphism {
    pub fn compose(&self, cat: &BaseCategory, after: &ComplexMorphism) -> ComplexMorphism {
        // `after ∘ self`
        ComplexMorphism { components: self.components.iter().zip(&after.components).map(|(f, g)| cat.compose(g, f)).collect() }
    }

    pub fn opposite(&self, cat: &BaseCategory) -> ComplexMorphism {
        ComplexMorphism { components: self.components.iter().rev().map(|f| cat.op_morphism(f)).collect() }
    }

    pub fn direct_sum(&self, cat: &BaseCategory, other: &ComplexMorphism) -> ComplexMorphism {
        ComplexMorphism { components: self.components.iter().zip(&other.components).map(|(a, b)| cat.direct_sum(a, b)).collect() }
    }
}

/// Every square `f^{i+1} d_X^i = d_Y^i f^i` commutes.
pub fn is_chain_map(cat: &BaseCategory, x: &Complex, y: &Complex, f: &ComplexMorphism) -> bool {
    (0..x.diffs.len()).all(|i| cat.compose(&f.components[i + 1], &x.diffs[i]) == cat.compose(&y.diffs[i], &f.components[i]))
}

/// Linear system whose solutions are chain maps `x -> y`; components listed
/// in `fixed` are pinned. Returns the system and its unknown ids per degree.
pub fn chain_map_system(
    cat: &BaseCategory,
    x: &Complex,
    y: &Complex,
    fixed: &[(usize, &AddMorphism)],
) -> (BlockSystem, Vec<usize>) {
    let f = cat.field();
    let mut sys = BlockSystem::new();
    let vars: Vec<usize> = (0..x.len()).map(|i| sys.var(cat.hom_dim(&x.objects[i], &y.objects[i]))).collect();
    for i in 0..x.diffs.len() {
        let e = sys.eq(cat.hom_dim(&x.objects[i], &y.objects[i + 1]));
        // f^{i+1} d_X^i - d_Y^i f^i = 0
        sys.term(e, vars[i + 1], cat.pre_matrix(&x.diffs[i], &y.objects[i + 1]));
        sys.term(e, vars[i], cat.post_matrix(&y.diffs[i], &x.objects[i]).scale(f, f.neg(1)));
    }
    for (i, m) in fixed {
        sys.fix(f, vars[*i], &m.coords);
    }
    (sys, vars)
}

/// The affine space of chain maps `x -> y` with pinned components.
pub fn chain_maps(
    cat: &BaseCategory,
    x: &Complex,
    y: &Complex,
    fixed: &[(usize, &AddMorphism)],
) -> Option<(AffineSpace, BlockSystem)> {
    let (sys, _) = chain_map_system(cat, x, y, fixed);
    sys.solve(cat.field()).map(|s| (s, sys))
}

/// Reads a solution vector of [`chain_map_system`] back into components.
pub fn components_from(sys: &BlockSystem, x: &Complex, y: &Complex, sol: &[u32]) -> ComplexMorphism {
    let parts = sys.split(sol);
    ComplexMorphism {
        components: (0..x.len())
            .map(|i| AddMorphism { src: x.objects[i].clone(), tgt: y.objects[i].clone(), coords: parts[i].clone() })
            .collect(),
    }
}

/// Adds the homotopy equations `lhs^i = d_Y^{i-1} h^i + h^{i+1} d_X^i` to a
/// system, where `lhs` is supplied through `rhs_terms`. Returns the unknown
/// ids of `h^1..h^m` (`h^i: X^i -> Y^{i-1}`) and the equation ids per degree.
fn homotopy_block(cat: &BaseCategory, sys: &mut BlockSystem, x: &Complex, y: &Complex) -> (Vec<usize>, Vec<usize>) {
    let m = x.len();
    let hs: Vec<usize> = (1..m).map(|i| sys.var(cat.hom_dim(&x.objects[i], &y.objects[i - 1]))).collect();
    let mut eqs = Vec::with_capacity(m);
    for i in 0..m {
        let e = sys.eq(cat.hom_dim(&x.objects[i], &y.objects[i]));
        if i >= 1 {
            sys.term(e, hs[i - 1], cat.post_matrix(&y.diffs[i - 1], &x.objects[i]));
        }
        if i + 1 < m {
            sys.term(e, hs[i], cat.pre_matrix(&x.diffs[i], &y.objects[i]));
        }
        eqs.push(e);
    }
    (hs, eqs)
}

/// Checks `f^i - g^i = d_Y^{i-1} h^i + h^{i+1} d_X^i` for all degrees.
pub fn verify_homotopy(
    cat: &BaseCategory,
    x: &Complex,
    y: &Complex,
    f: &ComplexMorphism,
    g: &ComplexMorphism,
    h: &[AddMorphism],
) -> bool {
    let m = x.len();
    (0..m).all(|i| {
        let mut acc = cat.zero(&x.objects[i], &y.objects[i]);
        if i >= 1 {
            acc = cat.add(&acc, &cat.compose(&y.diffs[i - 1], &h[i - 1]));
        }
        if i + 1 < m {
            acc = cat.add(&acc, &cat.compose(&h[i], &x.diffs[i]));
        }
        acc == cat.sub(&f.components[i], &g.components[i])
    })
}

/// A homotopy `f ~ g`, re-verified before it is returned.
pub fn find_homotopy(
    cat: &BaseCategory,
    x: &Complex,
    y: &Complex,
    f: &ComplexMorphism,
    g: &ComplexMorphism,
) -> Option<Vec<AddMorphism>> {
    let fld = cat.field();
    let mut sys = BlockSystem::new();
    let (hs, eqs) = homotopy_block(cat, &mut sys, x, y);
    for i in 0..x.len() {
        sys.rhs(fld, eqs[i], &cat.sub(&f.components[i], &g.components[i]).coords);
    }
    let sol = sys.solve(fld)?;
    let parts = sys.split(&sol.particular);
    let h: Vec<AddMorphism> = (1..x.len())
        .map(|i| AddMorphism { src: x.objects[i].clone(), tgt: y.objects[i - 1].clone(), coords: parts[hs[i - 1]].clone() })
        .collect();
    assert!(verify_homotopy(cat, x, y, f, g, &h), "homotopy solver returned an invalid witness");
    Some(h)
}

/// Decides whether `f: x -> y` with identity end components is a homotopy
/// equivalence in `C^n_{(A,C)}`: some `g: y -> x` with identity ends has
/// `g f ~ 1` and `f g ~ 1`. Since `g` enters linearly this is one solve.
pub fn is_homotopy_equivalence(cat: &BaseCategory, x: &Complex, y: &Complex, f: &ComplexMorphism) -> Result<bool> {
    let last = x.len() - 1;
    if f.components[0] != cat.identity(&x.objects[0]) || f.components[last] != cat.identity(&x.objects[last]) {
        return Err(Error::input("end components must be identities"));
    }
    Ok(homotopy_inverse(cat, x, y, f).is_some())
}

/// The inverse `g` of [`is_homotopy_equivalence`], when it exists.
pub fn homotopy_inverse(cat: &BaseCategory, x: &Complex, y: &Complex, f: &ComplexMorphism) -> Option<ComplexMorphism> {
    let fld = cat.field();
    let last = x.len() - 1;
    let id_a = cat.identity(&x.objects[0]);
    let id_c = cat.identity(&x.objects[last]);
    let (mut sys, gv) = chain_map_system(cat, y, x, &[(0, &id_a), (last, &id_c)]);
    // g f - 1_X = d h + h d
    let (_, eq1) = homotopy_block(cat, &mut sys, x, x);
    for i in 0..x.len() {
        let gf = cat.pre_matrix(&f.components[i], &x.objects[i]);
        sys.term(eq1[i], gv[i], gf.scale(fld, fld.neg(1)));
        let id = cat.identity(&x.objects[i]);
        sys.rhs(fld, eq1[i], &cat.neg(&id).coords);
    }
    // f g - 1_Y = d h' + h' d
    let (_, eq2) = homotopy_block(cat, &mut sys, y, y);
    for i in 0..y.len() {
        let fg = cat.post_matrix(&f.components[i], &y.objects[i]);
        sys.term(eq2[i], gv[i], fg.scale(fld, fld.neg(1)));
        let id = cat.identity(&y.objects[i]);
        sys.rhs(fld, eq2[i], &cat.neg(&id).coords);
    }
    let sol = sys.solve(fld)?;
    let parts = sys.split(&sol.particular);
    Some(ComplexMorphism {
        components: (0..x.len())
            .map(|i| AddMorphism { src: y.objects[i].clone(), tgt: x.objects[i].clone(), coords: parts[gv[i]].clone() })
            .collect(),
    })
}

/// Whether `x` and `y` (same end objects) are homotopy equivalent in
/// `C^n_{(A,C)}`: searches chain maps with identity ends, then decides each
/// candidate exactly.
pub fn homotopy_equivalent(cat: &BaseCategory, x: &Complex, y: &Complex, cfg: &Config) -> Search<ComplexMorphism> {
    let last = x.len() - 1;
    if x.len() != y.len() || x.objects[0] != y.objects[0] || x.objects[last] != y.objects[last] {
        return Search::Absent;
    }
    let id_a = cat.identity(&x.objects[0]);
    let id_c = cat.identity(&x.objects[last]);
    let Some((space, sys)) = chain_maps(cat, x, y, &[(0, &id_a), (last, &id_c)]) else {
        return Search::Absent;
    };
    search::find_point(cat.field(), &space, cfg, |v| {
        let f = components_from(&sys, x, y, v);
        homotopy_inverse(cat, x, y, &f).is_some()
    })
    .map(|v| components_from(&sys, x, y, &v))
}

/// `MC(f)` for a chain map `f: x -> y` between chains `X^0..X^n`:
/// `X^0 -> X^1 ⊕ Y^0 -> ... -> X^n ⊕ Y^{n-1} -> Y^n`.
pub fn mapping_cone(cat: &BaseCategory, x: &Complex, y: &Complex, f: &ComplexMorphism) -> Result<Complex> {
    if x.len() != y.len() || f.components.len() != x.len() || x.len() < 2 {
        return Err(Error::shape("mapping cone needs chains of equal length at least 2"));
    }
    let n = x.len() - 1;
    let mut objects = vec![x.objects[0].clone()];
    for i in 0..n {
        objects.push([x.objects[i + 1].clone(), y.objects[i].clone()].concat());
    }
    objects.push(y.objects[n].clone());
    let mut diffs = Vec::with_capacity(n + 1);
    // d_C^{-1} = (-d_X^0; f^0)
    let neg_d0 = cat.neg(&x.diffs[0]);
    diffs.push(cat.from_parts(
        &[x.objects[1].clone(), y.objects[0].clone()],
        &[x.objects[0].clone()],
        &[vec![Some(&neg_d0)], vec![Some(&f.components[0])]],
    ));
    // interior: ((-d_X^{i+1}, 0), (f^{i+1}, d_Y^i)) for i = 0..n-2
    for i in 0..n.saturating_sub(1) {
        let neg = cat.neg(&x.diffs[i + 1]);
        diffs.push(cat.from_parts(
            &[x.objects[i + 2].clone(), y.objects[i + 1].clone()],
            &[x.objects[i + 1].clone(), y.objects[i].clone()],
            &[vec![Some(&neg), None], vec![Some(&f.components[i + 1]), Some(&y.diffs[i])]],
        ));
    }
    // d_C^{n-1} = (f^n, d_Y^{n-1})
    diffs.push(cat.from_parts(
        &[y.objects[n].clone()],
        &[x.objects[n].clone(), y.objects[n - 1].clone()],
        &[vec![Some(&f.components[n]), Some(&y.diffs[n - 1])]],
    ));
    Complex::new(objects, diffs)
}

impl SigmaSequence {
    pub fn new(objects: Vec<AddObject>, diffs: Vec<AddMorphism>, last: AddMorphism, sigma: &AddFunctor) -> Result<Self> {
        let chain = Complex::new(objects, diffs)?;
        if chain.len() < 3 {
            return Err(Error::shape("a Σ-sequence has at least three objects"));
        }
        if last.src != *chain.last() || last.tgt != sigma.object(chain.first()) {
            return Err(Error::shape("last map must run from X^{n+1} to ΣX^0"));
        }
        Ok(SigmaSequence { objects: chain.objects, diffs: chain.diffs, last })
    }

    pub fn n(&self) -> usize {
        self.objects.len() - 2
    }

    pub fn chain(&self) -> Complex {
        Complex { objects: self.objects.clone(), diffs: self.diffs.clone() }
    }

    /// `X →1 X → 0 → ... → 0 → ΣX`.
    pub fn identity_angle(cat: &BaseCategory, sigma: &AddFunctor, x: &[usize], n: usize) -> SigmaSequence {
        let mut objects = vec![x.to_vec(), x.to_vec()];
        objects.extend(std::iter::repeat(Vec::new()).take(n));
        let mut diffs = vec![cat.identity(x)];
        for i in 1..=n {
            diffs.push(cat.zero(&objects[i], &objects[i + 1]));
        }
        let last = cat.zero(&objects[n + 1], &sigma.object(x));
        SigmaSequence { objects, diffs, last }
    }

    /// All maps including the last one, composing consecutively to zero
    /// (including `Σd^0 ∘ d^{n+1}`).
    pub fn is_complex(&self, cat: &BaseCategory, sigma: &AddFunctor) -> bool {
        let chain = self.chain();
        if !chain.is_complex(cat) {
            return false;
        }
        let dn = self.diffs.last().unwrap();
        cat.is_zero(&cat.compose(&self.last, dn)) && cat.is_zero(&cat.compose(&sigma.morphism(&self.diffs[0]), &self.last))
    }

    pub fn direct_sum(&self, cat: &BaseCategory, other: &SigmaSequence) -> SigmaSequence {
        let chain = self.chain().direct_sum(cat, &other.chain());
        SigmaSequence { objects: chain.objects, diffs: chain.diffs, last: cat.direct_sum(&self.last, &other.last) }
    }

    pub fn direct_sum_all(cat: &BaseCategory, parts: &[&SigmaSequence], n: usize, sigma: &AddFunctor) -> SigmaSequence {
        let mut acc = SigmaSequence::identity_angle(cat, sigma, &[], n);
        for p in parts {
            acc = acc.direct_sum(cat, p);
        }
        acc
    }

    /// Conjugates by isomorphisms `phi^i: X^i -> Y^i`; the last map becomes
    /// `Σφ^0 ∘ d^{n+1} ∘ (φ^{n+1})⁻¹`.
    pub fn conjugate(&self, cat: &BaseCategory, sigma: &AddFunctor, phi: &[AddMorphism]) -> SigmaSequence {
        let inv: Vec<AddMorphism> = phi.iter().map(|p| cat.inverse(p).expect("conjugating map must be invertible")).collect();
        let m = self.objects.len();
        let diffs = (0..m - 1).map(|i| cat.compose_all(&[&phi[i + 1], &self.diffs[i], &inv[i]])).collect();
        let last = cat.compose_all(&[&sigma.morphism(&phi[0]), &self.last, &inv[m - 1]]);
        SigmaSequence { objects: phi.iter().map(|p| p.tgt.clone()).collect(), diffs, last }
    }

    pub fn show(&self, cat: &BaseCategory) -> String {
        format!("{} -{:?}-> Σ", self.chain().show(cat), self.last.coords)
    }
}

/// `X^1 → ... → X^{n+1} → ΣX^0 → ΣX^1` with last map `(-1)^n Σd^0`.
pub fn left_rotation(cat: &BaseCategory, sigma: &AddFunctor, s: &SigmaSequence) -> SigmaSequence {
    let n = s.n();
    let fld = cat.field();
    let mut objects: Vec<AddObject> = s.objects[1..].to_vec();
    objects.push(sigma.object(&s.objects[0]));
    let mut diffs: Vec<AddMorphism> = s.diffs[1..].to_vec();
    diffs.push(s.last.clone());
    let last = cat.scale(fld.sign(n), &sigma.morphism(&s.diffs[0]));
    SigmaSequence { objects, diffs, last }
}

/// Is `f` a morphism of Σ-sequences: chain squares plus
/// `(Σf^0) d_X^{n+1} = d_Y^{n+1} f^{n+1}`.
pub fn is_sigma_morphism(
    cat: &BaseCategory,
    sigma: &AddFunctor,
    x: &SigmaSequence,
    y: &SigmaSequence,
    f: &ComplexMorphism,
) -> bool {
    let m = x.objects.len();
    is_chain_map(cat, &x.chain(), &y.chain(), f)
        && cat.compose(&sigma.morphism(&f.components[0]), &x.last) == cat.compose(&y.last, &f.components[m - 1])
}

/// Linear system for morphisms of Σ-sequences `x -> y`; returns the system
/// and the unknown id of each component.
pub fn sigma_morphism_system(
    cat: &BaseCategory,
    sigma: &AddFunctor,
    x: &SigmaSequence,
    y: &SigmaSequence,
) -> (BlockSystem, Vec<usize>) {
    let fld = cat.field();
    let (mut sys, vars) = chain_map_system(cat, &x.chain(), &y.chain(), &[]);
    let m = x.objects.len();
    let sy0 = sigma.object(&y.objects[0]);
    let e = sys.eq(cat.hom_dim(&x.objects[m - 1], &sy0));
    // (Σf^0) d_X^{n+1} - d_Y^{n+1} f^{n+1} = 0; f^0 ↦ Σf^0 is linear.
    let sig = sigma.hom_matrix(&x.objects[0], &y.objects[0]);
    let post_last = cat.pre_matrix(&x.last, &sy0);
    sys.term(e, vars[0], post_last.mul(fld, &sig));
    sys.term(e, vars[m - 1], cat.post_matrix(&y.last, &x.objects[m - 1]).scale(fld, fld.neg(1)));
    (sys, vars)
}

/// The F4 cone of `f: x -> y`: objects `X^{i+1} ⊕ Y^i` for `i = 0..=n+1`,
/// with `X^{n+2} = ΣX^0`, `d_X^{n+2} = Σd_X^0`, `f^{n+2} = Σf^0`.
pub fn cone_of_angle_morphism(
    cat: &BaseCategory,
    sigma: &AddFunctor,
    x: &SigmaSequence,
    y: &SigmaSequence,
    f: &ComplexMorphism,
) -> Result<SigmaSequence> {
    let m = x.objects.len();
    if y.objects.len() != m || f.components.len() != m {
        return Err(Error::shape("cone needs Σ-sequences of equal length"));
    }
    let mut xo: Vec<AddObject> = x.objects.clone();
    xo.push(sigma.object(&x.objects[0]));
    xo.push(sigma.object(&x.objects[1]));
    let mut xd: Vec<AddMorphism> = x.diffs.clone();
    xd.push(x.last.clone());
    xd.push(sigma.morphism(&x.diffs[0]));
    let mut fs: Vec<AddMorphism> = f.components.clone();
    fs.push(sigma.morphism(&f.components[0]));
    let mut yd: Vec<AddMorphism> = y.diffs.clone();
    yd.push(y.last.clone());

    let objects: Vec<AddObject> = (0..m).map(|i| [xo[i + 1].clone(), y.objects[i].clone()].concat()).collect();
    let block = |i: usize| {
        // C^i -> C^{i+1}: ((-d_X^{i+1}, 0), (f^{i+1}, d_Y^i))
        let neg = cat.neg(&xd[i + 1]);
        let tgt_y = if i + 1 < m { y.objects[i + 1].clone() } else { sigma.object(&y.objects[0]) };
        cat.from_parts(
            &[xo[i + 2].clone(), tgt_y],
            &[xo[i + 1].clone(), y.objects[i].clone()],
            &[vec![Some(&neg), None], vec![Some(&fs[i + 1]), Some(&yd[i])]],
        )
    };
    let diffs: Vec<AddMorphism> = (0..m - 1).map(block).collect();
    let last = block(m - 1);
    debug_assert_eq!(last.tgt, sigma.object(&objects[0]));
    Ok(SigmaSequence { objects, diffs, last })
}

/// `f` has two cyclically consecutive invertible components.
pub fn is_weak_isomorphism(cat: &BaseCategory, f: &ComplexMorphism) -> bool {
    let m = f.components.len();
    let inv: Vec<bool> = f.components.iter().map(|c| cat.is_iso(c)).collect();
    (0..m).any(|i| inv[i] && inv[(i + 1) % m])
}

/// A block matrix helper for tests and generators: the zero chain of
/// length `m` on the zero object.
pub fn zero_chain(cat: &BaseCategory, m: usize) -> Complex {
    Complex { objects: vec![Vec::new(); m], diffs: (0..m - 1).map(|_| cat.zero(&[], &[])).collect() }
}

/// Matrix of `φ ↦ Σφ` on a Hom space, exposed for systems built elsewhere.
pub fn sigma_matrix(sigma: &AddFunctor, x: &[usize], y: &[usize]) -> Matrix {
    sigma.hom_matrix(x, y)
}
