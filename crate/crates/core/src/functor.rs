//! Additive functors, natural transformations and equivalence witnesses.
//!
//! Functors are given on base objects and base Hom spaces and extended
//! additively; natural transformations by their base components.

use std::sync::Arc;

use crate::category::{AddMorphism, AddObject, BaseCategory, Universe};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::report::{Check, Report};

/// An additive functor between additive closures of base categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddFunctor {
    src: Arc<BaseCategory>,
    tgt: Arc<BaseCategory>,
    on_objects: Vec<AddObject>,
    /// `on_homs[a][b]`: `Hom(a, b) -> Hom(F a, F b)` in flattened coordinates.
    on_homs: Vec<Vec<Matrix>>,
}

impl AddFunctor {
    pub fn new(
        src: Arc<BaseCategory>,
        tgt: Arc<BaseCategory>,
        on_objects: Vec<AddObject>,
        on_homs: Vec<Vec<Matrix>>,
    ) -> Result<Self> {
        let n = src.num_objects();
        if on_objects.len() != n || on_homs.len() != n || on_homs.iter().any(|r| r.len() != n) {
            return Err(Error::input("functor data must cover every base object and pair"));
        }
        for x in &on_objects {
            if x.iter().any(|&b| b >= tgt.num_objects()) {
                return Err(Error::input("functor sends an object outside the target category"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let m = &on_homs[a][b];
                let rows = tgt.hom_dim(&on_objects[a], &on_objects[b]);
                if m.rows() != rows || m.cols() != src.base_dim(a, b) {
                    return Err(Error::input(format!(
                        "functor matrix on Hom({}, {}) must be {}x{}",
                        src.name(a),
                        src.name(b),
                        rows,
                        src.base_dim(a, b)
                    )));
                }
            }
        }
        Ok(AddFunctor { src, tgt, on_objects, on_homs })
    }

    /// Builds a functor from its action on base basis morphisms.
    pub fn from_fn(
        src: Arc<BaseCategory>,
        tgt: Arc<BaseCategory>,
        on_objects: Vec<AddObject>,
        mut on_basis: impl FnMut(usize, usize, usize) -> AddMorphism,
    ) -> Result<Self> {
        let n = src.num_objects();
        let mut on_homs = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                let rows = tgt.hom_dim(&on_objects[a], &on_objects[b]);
                let cols: Vec<Vec<u32>> = (0..src.base_dim(a, b))
                    .map(|k| {
                        let m = on_basis(a, b, k);
                        assert!(m.src == on_objects[a] && m.tgt == on_objects[b], "basis image has wrong endpoints");
                        m.coords
                    })
                    .collect();
                row.push(Matrix::from_columns(rows, &cols));
            }
            on_homs.push(row);
        }
        AddFunctor::new(src, tgt, on_objects, on_homs)
    }

    pub fn identity(cat: Arc<BaseCategory>) -> Self {
        let n = cat.num_objects();
        let on_objects = (0..n).map(|a| vec![a]).collect();
        let on_homs = (0..n).map(|a| (0..n).map(|b| Matrix::identity(cat.base_dim(a, b))).collect()).collect();
        AddFunctor { src: cat.clone(), tgt: cat, on_objects, on_homs }
    }

    pub fn src(&self) -> &Arc<BaseCategory> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<BaseCategory> {
        &self.tgt
    }

    pub fn base_object(&self, a: usize) -> &AddObject {
        &self.on_objects[a]
    }

    pub fn base_matrix(&self, a: usize, b: usize) -> &Matrix {
        &self.on_homs[a][b]
    }

    pub fn object(&self, x: &[usize]) -> AddObject {
        x.iter().flat_map(|&a| self.on_objects[a].iter().copied()).collect()
    }

    pub fn morphism(&self, f: &AddMorphism) -> AddMorphism {
        let src = &self.src;
        let fld = src.field();
        let off = src.offsets(&f.src, &f.tgt);
        let rows: Vec<AddObject> = f.tgt.iter().map(|&b| self.on_objects[b].clone()).collect();
        let cols: Vec<AddObject> = f.src.iter().map(|&a| self.on_objects[a].clone()).collect();
        let mut parts_owned: Vec<Vec<AddMorphism>> = Vec::with_capacity(rows.len());
        for (i, &b) in f.tgt.iter().enumerate() {
            let mut row = Vec::with_capacity(cols.len());
            for (j, &a) in f.src.iter().enumerate() {
                let o = off[i * f.src.len() + j];
                let v = &f.coords[o..o + src.base_dim(a, b)];
                let w = self.on_homs[a][b].mul_vec(fld, v);
                row.push(AddMorphism { src: cols[j].clone(), tgt: rows[i].clone(), coords: w });
            }
            parts_owned.push(row);
        }
        let parts: Vec<Vec<Option<&AddMorphism>>> = parts_owned.iter().map(|r| r.iter().map(Some).collect()).collect();
        self.tgt.from_parts(&rows, &cols, &parts)
    }

    /// `G ∘ F` for `F = self`.
    pub fn then(&self, g: &AddFunctor) -> AddFunctor {
        assert!(Arc::ptr_eq(&self.tgt, &g.src) || *self.tgt == *g.src, "functors are not composable");
        let n = self.src.num_objects();
        let on_objects: Vec<AddObject> = (0..n).map(|a| g.object(&self.on_objects[a])).collect();
        AddFunctor::from_fn(self.src.clone(), g.tgt.clone(), on_objects, |a, b, k| {
            g.morphism(&self.morphism(&self.src.basis_morphism(a, b, k)))
        })
        .expect("composite of valid functors is well formed")
    }

    /// Linear map `Hom(x, y) -> Hom(F x, F y)`.
    pub fn hom_matrix(&self, x: &[usize], y: &[usize]) -> Matrix {
        let d = self.src.hom_dim(x, y);
        let rows = self.tgt.hom_dim(&self.object(x), &self.object(y));
        let cols: Vec<Vec<u32>> = (0..d)
            .map(|k| {
                let mut c = vec![0; d];
                c[k] = 1;
                self.morphism(&AddMorphism { src: x.to_vec(), tgt: y.to_vec(), coords: c }).coords
            })
            .collect();
        Matrix::from_columns(rows, &cols)
    }

    /// Functor laws on basis morphisms: identities and composition.
    pub fn validate(&self) -> Check {
        let mut chk = Check::new("functor laws");
        let src = &self.src;
        let n = src.num_objects();
        for a in 0..n {
            let id = src.identity(&[a]);
            if self.morphism(&id) != self.tgt.identity(&self.on_objects[a]) {
                chk.fail(format!("F(1_{}) is not an identity", src.name(a)));
            } else {
                chk.pass();
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for i in 0..src.base_dim(b, c) {
                        for j in 0..src.base_dim(a, b) {
                            let g = src.basis_morphism(b, c, i);
                            let f = src.basis_morphism(a, b, j);
                            let lhs = self.morphism(&src.compose(&g, &f));
                            let rhs = self.tgt.compose(&self.morphism(&g), &self.morphism(&f));
                            if lhs != rhs {
                                chk.fail(format!(
                                    "F(e{i} ∘ e{j}) differs from F(e{i}) ∘ F(e{j}) on {} -> {} -> {}",
                                    src.name(a),
                                    src.name(b),
                                    src.name(c)
                                ));
                            } else {
                                chk.pass();
                            }
                        }
                    }
                }
            }
        }
        chk
    }

    /// Injective (faithful) and surjective (full) on every universe Hom space.
    pub fn fully_faithful_on(&self, u: &Universe) -> Check {
        let mut chk = Check::new("fully faithful");
        let fld = self.src.field();
        for x in u.objects() {
            for y in u.objects() {
                let m = self.hom_matrix(x, y);
                let r = linalg::rank(fld, &m);
                if r == m.cols() && r == m.rows() {
                    chk.pass();
                } else {
                    chk.fail(format!(
                        "Hom({}, {}) of dim {} maps with rank {} into dim {}",
                        self.src.show_object(x),
                        self.src.show_object(y),
                        m.cols(),
                        r,
                        m.rows()
                    ));
                }
            }
        }
        chk
    }

    /// The same functor between opposite categories.
    pub fn opposite(&self, src_op: Arc<BaseCategory>, tgt_op: Arc<BaseCategory>) -> AddFunctor {
        AddFunctor::from_fn(src_op.clone(), tgt_op, self.on_objects.clone(), |a, b, k| {
            // e_k ∈ Hom_op(a, b) = Hom(b, a).
            let f = self.src.basis_morphism(b, a, k);
            self.tgt.op_morphism(&self.morphism(&f))
        })
        .expect("opposite functor is well formed")
    }
}

/// Natural transformation `F ⇒ G` given by base components `F a -> G a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransform {
    pub source: Arc<AddFunctor>,
    pub target: Arc<AddFunctor>,
    pub components: Vec<AddMorphism>,
}

impl NatTransform {
    pub fn new(source: Arc<AddFunctor>, target: Arc<AddFunctor>, components: Vec<AddMorphism>) -> Result<Self> {
        let n = source.src.num_objects();
        if components.len() != n {
            return Err(Error::input("one component per base object is required"));
        }
        for (a, c) in components.iter().enumerate() {
            if c.src != source.on_objects[a] || c.tgt != target.on_objects[a] {
                return Err(Error::input(format!("component at {} has the wrong endpoints", source.src.name(a))));
            }
            if c.coords.len() != source.tgt.hom_dim(&c.src, &c.tgt) {
                return Err(Error::input("component coordinates have the wrong length"));
            }
        }
        Ok(NatTransform { source, target, components })
    }

    pub fn identity(f: Arc<AddFunctor>) -> Self {
        let components = (0..f.src.num_objects()).map(|a| f.tgt.identity(&f.on_objects[a])).collect();
        NatTransform { source: f.clone(), target: f, components }
    }

    /// Component at an object of the additive closure (block diagonal).
    pub fn at(&self, x: &[usize]) -> AddMorphism {
        let parts: Vec<AddMorphism> = x.iter().map(|&a| self.components[a].clone()).collect();
        if parts.is_empty() {
            return self.source.tgt.zero(&[], &[]);
        }
        self.source.tgt.direct_sum_all(&parts)
    }

    /// Naturality squares `G(u) η_a = η_b F(u)` for all basis `u: a -> b`.
    pub fn validate(&self) -> Check {
        let mut chk = Check::new("naturality");
        let (src, tgt) = (&self.source.src, &self.source.tgt);
        for a in 0..src.num_objects() {
            for b in 0..src.num_objects() {
                for k in 0..src.base_dim(a, b) {
                    let u = src.basis_morphism(a, b, k);
                    let lhs = tgt.compose(&self.target.morphism(&u), &self.components[a]);
                    let rhs = tgt.compose(&self.components[b], &self.source.morphism(&u));
                    if lhs == rhs {
                        chk.pass();
                    } else {
                        chk.fail(format!("square fails for e{k}: {} -> {}", src.name(a), src.name(b)));
                    }
                }
            }
        }
        chk
    }

    pub fn invertibility(&self) -> Check {
        let mut chk = Check::new("invertible components");
        for (a, c) in self.components.iter().enumerate() {
            if self.source.tgt.is_iso(c) {
                chk.pass();
            } else {
                chk.fail(format!("component at {} is not invertible", self.source.src.name(a)));
            }
        }
        chk
    }

    pub fn inverse(&self) -> Option<NatTransform> {
        let components = self.components.iter().map(|c| self.source.tgt.inverse(c)).collect::<Option<Vec<_>>>()?;
        Some(NatTransform { source: self.target.clone(), target: self.source.clone(), components })
    }
}

/// An adjoint equivalence `F: C -> D`, `G: D -> C` with unit `Φ: Id_D ⇒ FG`
/// and counit `Ψ: GF ⇒ Id_C`, stored by base components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub f: Arc<AddFunctor>,
    pub g: Arc<AddFunctor>,
    /// `Φ_y: y -> F G y` for base objects `y` of `D`.
    pub unit: Vec<AddMorphism>,
    /// `Ψ_x: G F x -> x` for base objects `x` of `C`.
    pub counit: Vec<AddMorphism>,
}

impl EquivalenceWitness {
    pub fn new(f: Arc<AddFunctor>, g: Arc<AddFunctor>, unit: Vec<AddMorphism>, counit: Vec<AddMorphism>) -> Result<Self> {
        if *f.src != *g.tgt || *f.tgt != *g.src {
            return Err(Error::input("F and G must run in opposite directions"));
        }
        let (c, d) = (f.src.clone(), f.tgt.clone());
        if unit.len() != d.num_objects() || counit.len() != c.num_objects() {
            return Err(Error::input("unit and counit need one component per base object"));
        }
        for (y, phi) in unit.iter().enumerate() {
            if phi.src != vec![y] || phi.tgt != f.object(g.base_object(y)) || phi.coords.len() != d.hom_dim(&phi.src, &phi.tgt) {
                return Err(Error::input(format!("unit component at {} has the wrong shape", d.name(y))));
            }
        }
        for (x, psi) in counit.iter().enumerate() {
            if psi.tgt != vec![x] || psi.src != g.object(f.base_object(x)) || psi.coords.len() != c.hom_dim(&psi.src, &psi.tgt) {
                return Err(Error::input(format!("counit component at {} has the wrong shape", c.name(x))));
            }
        }
        Ok(EquivalenceWitness { f, g, unit, counit })
    }

    pub fn identity(cat: Arc<BaseCategory>) -> Self {
        let id = Arc::new(AddFunctor::identity(cat.clone()));
        let comps: Vec<AddMorphism> = (0..cat.num_objects()).map(|a| cat.identity(&[a])).collect();
        EquivalenceWitness { f: id.clone(), g: id, unit: comps.clone(), counit: comps }
    }

    pub fn c(&self) -> &Arc<BaseCategory> {
        &self.f.src
    }

    pub fn d(&self) -> &Arc<BaseCategory> {
        &self.f.tgt
    }

    /// `Φ_y` at an object of the additive closure of `D`.
    pub fn unit_at(&self, y: &[usize]) -> AddMorphism {
        let parts: Vec<AddMorphism> = y.iter().map(|&b| self.unit[b].clone()).collect();
        if parts.is_empty() {
            return self.d().zero(&[], &[]);
        }
        self.d().direct_sum_all(&parts)
    }

    /// `Ψ_x` at an object of the additive closure of `C`.
    pub fn counit_at(&self, x: &[usize]) -> AddMorphism {
        let parts: Vec<AddMorphism> = x.iter().map(|&a| self.counit[a].clone()).collect();
        if parts.is_empty() {
            return self.c().zero(&[], &[]);
        }
        self.c().direct_sum_all(&parts)
    }

    pub fn unit_inv_at(&self, y: &[usize]) -> AddMorphism {
        self.d().inverse(&self.unit_at(y)).expect("unit component is invertible")
    }

    pub fn counit_inv_at(&self, x: &[usize]) -> AddMorphism {
        self.c().inverse(&self.counit_at(x)).expect("counit component is invertible")
    }

    /// Functor laws, naturality, invertibility and both triangle identities;
    /// full faithfulness of `F` is reported as a derived consequence.
    pub fn validate(&self, u: Option<&Universe>) -> Report {
        let mut r = Report::new("equivalence witness");
        let (c, d) = (self.c().clone(), self.d().clone());
        let mut fl = self.f.validate();
        fl.name = "F functor laws".into();
        r.push(fl);
        let mut gl = self.g.validate();
        gl.name = "G functor laws".into();
        r.push(gl);

        let mut nat_phi = Check::new("unit naturality");
        for a in 0..d.num_objects() {
            for b in 0..d.num_objects() {
                for k in 0..d.base_dim(a, b) {
                    let v = d.basis_morphism(a, b, k);
                    let fgv = self.f.morphism(&self.g.morphism(&v));
                    let lhs = d.compose(&fgv, &self.unit[a]);
                    let rhs = d.compose(&self.unit[b], &v);
                    nat_phi.record(if lhs == rhs { crate::Status::Pass } else { crate::Status::Fail }, || {
                        format!("unit square fails for e{k}: {} -> {}", d.name(a), d.name(b))
                    });
                }
            }
        }
        r.push(nat_phi);

        let mut nat_psi = Check::new("counit naturality");
        for a in 0..c.num_objects() {
            for b in 0..c.num_objects() {
                for k in 0..c.base_dim(a, b) {
                    let v = c.basis_morphism(a, b, k);
                    let gfv = self.g.morphism(&self.f.morphism(&v));
                    let lhs = c.compose(&v, &self.counit[a]);
                    let rhs = c.compose(&self.counit[b], &gfv);
                    nat_psi.record(if lhs == rhs { crate::Status::Pass } else { crate::Status::Fail }, || {
                        format!("counit square fails for e{k}: {} -> {}", c.name(a), c.name(b))
                    });
                }
            }
        }
        r.push(nat_psi);

        let mut inv = Check::new("invertible components");
        for (y, phi) in self.unit.iter().enumerate() {
            inv.record(if d.is_iso(phi) { crate::Status::Pass } else { crate::Status::Fail }, || {
                format!("unit at {} is not invertible", d.name(y))
            });
        }
        for (x, psi) in self.counit.iter().enumerate() {
            inv.record(if c.is_iso(psi) { crate::Status::Pass } else { crate::Status::Fail }, || {
                format!("counit at {} is not invertible", c.name(x))
            });
        }
        r.push(inv);

        let mut tri = Check::new("triangle identities");
        for x in 0..c.num_objects() {
            let fx = self.f.base_object(x).clone();
            let lhs = d.compose(&self.f.morphism(&self.counit[x]), &self.unit_at(&fx));
            tri.record(if lhs == d.identity(&fx) { crate::Status::Pass } else { crate::Status::Fail }, || {
                format!("F(Ψ) ∘ Φ_F is not the identity at {}", c.name(x))
            });
        }
        for y in 0..d.num_objects() {
            let gy = self.g.base_object(y).clone();
            let lhs = c.compose(&self.counit_at(&gy), &self.g.morphism(&self.unit[y]));
            tri.record(if lhs == c.identity(&gy) { crate::Status::Pass } else { crate::Status::Fail }, || {
                format!("Ψ_G ∘ G(Φ) is not the identity at {}", d.name(y))
            });
        }
        r.push(tri);

        if let Some(u) = u {
            let mut ff = self.f.fully_faithful_on(u);
            ff.note = Some("derived consequence of a valid witness".into());
            r.push(ff);
        }
        r
    }

    /// `G` then `F` roles swapped: the witness for `G: D -> C`.
    pub fn reversed(&self) -> EquivalenceWitness {
        let (c, d) = (self.c().clone(), self.d().clone());
        // For G: D -> C the unit is Ψ⁻¹: Id_C ⇒ GF and the counit is Φ⁻¹: FG ⇒ Id_D.
        let unit = (0..c.num_objects()).map(|x| c.inverse(&self.counit[x]).expect("counit invertible")).collect();
        let counit = (0..d.num_objects()).map(|y| d.inverse(&self.unit[y]).expect("unit invertible")).collect();
        EquivalenceWitness { f: self.g.clone(), g: self.f.clone(), unit, counit }
    }

    /// The composite `C -> D -> E` of `self: C -> D` and `next: D -> E`, with
    /// `Φ_y = F₂(Φ¹_{G₂y}) ∘ Φ²_y` and `Ψ_x = Ψ¹_x ∘ G₁(Ψ²_{F₁x})`.
    pub fn then(&self, next: &EquivalenceWitness) -> Result<EquivalenceWitness> {
        if **self.d() != **next.c() {
            return Err(Error::input("witnesses are not composable"));
        }
        let (c, e) = (self.c().clone(), next.d().clone());
        let f = Arc::new(self.f.then(&next.f));
        let g = Arc::new(next.g.then(&self.g));
        let unit = (0..e.num_objects())
            .map(|y| e.compose(&next.f.morphism(&self.unit_at(next.g.base_object(y))), &next.unit[y]))
            .collect();
        let counit = (0..c.num_objects())
            .map(|x| c.compose(&self.counit[x], &self.g.morphism(&next.counit_at(self.f.base_object(x)))))
            .collect();
        EquivalenceWitness::new(f, g, unit, counit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    fn one_object() -> Arc<BaseCategory> {
        let f = PrimeField::new(2).unwrap();
        Arc::new(BaseCategory::from_fn(f, vec!["S".into()], vec![vec![1]], vec![vec![1]], |_, _, _, _, _| vec![1]).unwrap())
    }

    #[test]
    fn identity_witness_validates() {
        let c = one_object();
        let w = EquivalenceWitness::identity(c.clone());
        let u = Universe::new(&c, 2);
        assert_eq!(w.validate(Some(&u)).status(), crate::Status::Pass);
    }

    #[test]
    fn zero_counit_is_rejected() {
        let c = one_object();
        let mut w = EquivalenceWitness::identity(c.clone());
        w.counit[0] = c.zero(&[0], &[0]);
        let r = w.validate(None);
        assert_eq!(r.check("invertible components").unwrap().status, crate::Status::Fail);
    }

    #[test]
    fn functor_extends_additively() {
        let c = one_object();
        let f = AddFunctor::identity(c.clone());
        let m = c.morphism(&[0, 0], &[0], vec![1, 1]);
        assert_eq!(f.morphism(&m), m);
    }
}
