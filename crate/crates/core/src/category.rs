//! Finite `F_p`-linear base categories and their additive closures.
//!
//! An object of the additive closure is an ordered list of base objects
//! (a formal direct sum). A morphism `X -> Y` is a block matrix whose block
//! `(i, j)` is a coordinate vector in `Hom(x_j, y_i)`. Blocks are flattened
//! row-major: all blocks of target summand 0 first, then target summand 1,
//! and so on.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, PrimeField};

/// Object of the additive closure: indices of base objects.
pub type AddObject = Vec<usize>;

/// A morphism of the additive closure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AddMorphism {
    pub src: AddObject,
    pub tgt: AddObject,
    pub coords: Vec<u32>,
}

/// A finite `F_p`-linear category given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCategory {
    field: PrimeField,
    names: Vec<String>,
    /// `dims[a][b] = dim Hom(a, b)`.
    dims: Vec<Vec<usize>>,
    /// Composition tensor for `(a, b, c)` at index `(a * n + b) * n + c`.
    /// Entry `((i * dab) + j) * dac + k` is the coefficient of basis element
    /// `k` of `Hom(a, c)` in `e_i ∘ e_j` with `e_i ∈ Hom(b, c)`, `e_j ∈ Hom(a, b)`.
    comp: Vec<Vec<u32>>,
    ids: Vec<Vec<u32>>,
}

/// A violated law found by [`BaseCategory::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub location: String,
}

impl BaseCategory {
    /// Builds a category from raw structure constants, checking shapes only.
    /// Laws are checked by [`BaseCategory::validate`].
    pub fn new(
        field: PrimeField,
        names: Vec<String>,
        dims: Vec<Vec<usize>>,
        comp: Vec<Vec<u32>>,
        ids: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let n = names.len();
        if dims.len() != n || dims.iter().any(|r| r.len() != n) {
            return Err(Error::input(format!("hom_dim table must be {n}x{n}")));
        }
        if comp.len() != n * n * n {
            return Err(Error::input("composition table has the wrong number of triples"));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let want = dims[b][c] * dims[a][b] * dims[a][c];
                    let got = comp[(a * n + b) * n + c].len();
                    if got != want {
                        return Err(Error::input(format!(
                            "composition ({}, {}, {}) has {got} constants, expected {want}",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        if ids.len() != n {
            return Err(Error::input("one identity vector per object is required"));
        }
        for (a, id) in ids.iter().enumerate() {
            if id.len() != dims[a][a] {
                return Err(Error::input(format!("identity of {} has the wrong length", names[a])));
            }
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::input("object names must be distinct"));
        }
        let p = field.p();
        let reduce = |v: Vec<u32>| v.into_iter().map(|x| x % p).collect::<Vec<_>>();
        Ok(BaseCategory {
            field,
            names,
            dims,
            comp: comp.into_iter().map(reduce).collect(),
            ids: ids.into_iter().map(reduce).collect(),
        })
    }

    /// Builds a category from a composition callback `(a, b, c, i, j) -> coords`.
    pub fn from_fn(
        field: PrimeField,
        names: Vec<String>,
        dims: Vec<Vec<usize>>,
        ids: Vec<Vec<u32>>,
        mut comp: impl FnMut(usize, usize, usize, usize, usize) -> Vec<u32>,
    ) -> Result<Self> {
        let n = names.len();
        if dims.len() != n || dims.iter().any(|r| r.len() != n) {
            return Err(Error::input(format!("hom_dim table must be {n}x{n}")));
        }
        let mut table = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (dbc, dab, dac) = (dims[b][c], dims[a][b], dims[a][c]);
                    let mut t = Vec::with_capacity(dbc * dab * dac);
                    for i in 0..dbc {
                        for j in 0..dab {
                            let v = comp(a, b, c, i, j);
                            if v.len() != dac {
                                return Err(Error::input("composition result has the wrong length"));
                            }
                            t.extend(v);
                        }
                    }
                    table.push(t);
                }
            }
        }
        BaseCategory::new(field, names, dims, table, ids)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn num_objects(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn base_dim(&self, a: usize, b: usize) -> usize {
        self.dims[a][b]
    }

    pub fn base_identity(&self, a: usize) -> &[u32] {
        &self.ids[a]
    }

    /// Raw composition constants for `(a, b, c)`.
    pub fn comp_table(&self, a: usize, b: usize, c: usize) -> &[u32] {
        let n = self.num_objects();
        &self.comp[(a * n + b) * n + c]
    }

    /// `acc += g ∘ f` for base vectors `g ∈ Hom(b, c)`, `f ∈ Hom(a, b)`.
    pub fn compose_base_into(&self, a: usize, b: usize, c: usize, g: &[u32], f: &[u32], acc: &mut [u32]) {
        let (dab, dac) = (self.dims[a][b], self.dims[a][c]);
        if dac == 0 {
            return;
        }
        let t = self.comp_table(a, b, c);
        let fld = self.field;
        for (i, &gi) in g.iter().enumerate() {
            if gi == 0 {
                continue;
            }
            for (j, &fj) in f.iter().enumerate() {
                if fj == 0 {
                    continue;
                }
                let off = (i * dab + j) * dac;
                fld.axpy(acc, fld.mul(gi, fj), &t[off..off + dac]);
            }
        }
    }

    pub fn compose_base(&self, a: usize, b: usize, c: usize, g: &[u32], f: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.dims[a][c]];
        self.compose_base_into(a, b, c, g, f, &mut out);
        out
    }

    /// Checks associativity and the unit laws on all basis triples and pairs.
    pub fn validate(&self) -> Vec<LawViolation> {
        let n = self.num_objects();
        let mut out = Vec::new();
        let unit = |d: usize, k: usize| {
            let mut v = vec![0; d];
            v[k] = 1;
            v
        };
        for a in 0..n {
            for b in 0..n {
                for k in 0..self.dims[a][b] {
                    let e = unit(self.dims[a][b], k);
                    if self.compose_base(a, b, b, &self.ids[b], &e) != e {
                        out.push(LawViolation {
                            law: "left unit",
                            location: format!("1_{} ∘ e{k}: {} -> {}", self.names[b], self.names[a], self.names[b]),
                        });
                    }
                    if self.compose_base(a, a, b, &e, &self.ids[a]) != e {
                        out.push(LawViolation {
                            law: "right unit",
                            location: format!("e{k} ∘ 1_{}: {} -> {}", self.names[a], self.names[a], self.names[b]),
                        });
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for i in 0..self.dims[c][d] {
                            for j in 0..self.dims[b][c] {
                                for k in 0..self.dims[a][b] {
                                    let h = unit(self.dims[c][d], i);
                                    let g = unit(self.dims[b][c], j);
                                    let f = unit(self.dims[a][b], k);
                                    let left = self.compose_base(a, c, d, &h, &self.compose_base(a, b, c, &g, &f));
                                    let right = self.compose_base(a, b, d, &self.compose_base(b, c, d, &h, &g), &f);
                                    if left != right {
                                        out.push(LawViolation {
                                            law: "associativity",
                                            location: format!(
                                                "(e{i}, e{j}, e{k}) on {} -> {} -> {} -> {}",
                                                self.names[a], self.names[b], self.names[c], self.names[d]
                                            ),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// The opposite category. `Hom_op(a, b) = Hom(b, a)` with the same basis.
    pub fn opposite(&self) -> BaseCategory {
        let n = self.num_objects();
        let dims: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| self.dims[b][a]).collect()).collect();
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // g ∈ Hom_op(b,c) = Hom(c,b), f ∈ Hom_op(a,b) = Hom(b,a);
                    // g ∘op f = f ∘ g in the original category.
                    let (dcb, dba, dca) = (self.dims[c][b], self.dims[b][a], self.dims[c][a]);
                    let t = self.comp_table(c, b, a);
                    let mut out = vec![0; dcb * dba * dca];
                    for i in 0..dcb {
                        for j in 0..dba {
                            let src = (j * dcb + i) * dca;
                            let dst = (i * dba + j) * dca;
                            out[dst..dst + dca].copy_from_slice(&t[src..src + dca]);
                        }
                    }
                    comp.push(out);
                }
            }
        }
        BaseCategory { field: self.field, names: self.names.clone(), dims, comp, ids: self.ids.clone() }
    }

    // ----- additive closure -----

    pub fn hom_dim(&self, x: &[usize], y: &[usize]) -> usize {
        y.iter().map(|&b| x.iter().map(|&a| self.dims[a][b]).sum::<usize>()).sum()
    }

    /// Block offsets of `Hom(x, y)`: block `(i, j)` starts at `off[i * |x| + j]`.
    pub fn offsets(&self, x: &[usize], y: &[usize]) -> Vec<usize> {
        let mut off = Vec::with_capacity(x.len() * y.len() + 1);
        let mut acc = 0;
        for &b in y {
            for &a in x {
                off.push(acc);
                acc += self.dims[a][b];
            }
        }
        off.push(acc);
        off
    }

    pub fn morphism(&self, x: &[usize], y: &[usize], coords: Vec<u32>) -> AddMorphism {
        assert_eq!(coords.len(), self.hom_dim(x, y), "coordinate length does not match Hom dimension");
        AddMorphism { src: x.to_vec(), tgt: y.to_vec(), coords }
    }

    pub fn zero(&self, x: &[usize], y: &[usize]) -> AddMorphism {
        AddMorphism { src: x.to_vec(), tgt: y.to_vec(), coords: vec![0; self.hom_dim(x, y)] }
    }

    pub fn identity(&self, x: &[usize]) -> AddMorphism {
        let mut f = self.zero(x, x);
        let off = self.offsets(x, x);
        for (i, &a) in x.iter().enumerate() {
            let o = off[i * x.len() + i];
            f.coords[o..o + self.dims[a][a]].copy_from_slice(&self.ids[a]);
        }
        f
    }

    /// The base morphism `e_k ∈ Hom(a, b)` as a morphism `[a] -> [b]`.
    pub fn basis_morphism(&self, a: usize, b: usize, k: usize) -> AddMorphism {
        let mut f = self.zero(&[a], &[b]);
        f.coords[k] = 1;
        f
    }

    pub fn try_compose(&self, g: &AddMorphism, f: &AddMorphism) -> Result<AddMorphism> {
        if f.tgt != g.src {
            return Err(Error::shape(format!(
                "cannot compose: target {} differs from source {}",
                self.show_object(&f.tgt),
                self.show_object(&g.src)
            )));
        }
        Ok(self.compose(g, f))
    }

    /// `g ∘ f`. Panics if the objects do not match.
    pub fn compose(&self, g: &AddMorphism, f: &AddMorphism) -> AddMorphism {
        assert_eq!(f.tgt, g.src, "composition of non-composable morphisms");
        let (x, y, w) = (&f.src, &f.tgt, &g.tgt);
        let off_f = self.offsets(x, y);
        let off_g = self.offsets(y, w);
        let off_h = self.offsets(x, w);
        let mut out = vec![0; off_h[off_h.len() - 1]];
        for (l, &wl) in w.iter().enumerate() {
            for (j, &xj) in x.iter().enumerate() {
                let oh = off_h[l * x.len() + j];
                let acc = &mut out[oh..oh + self.dims[xj][wl]];
                if acc.is_empty() {
                    continue;
                }
                for (i, &yi) in y.iter().enumerate() {
                    let og = off_g[l * y.len() + i];
                    let of = off_f[i * x.len() + j];
                    let gb = &g.coords[og..og + self.dims[yi][wl]];
                    let fb = &f.coords[of..of + self.dims[xj][yi]];
                    self.compose_base_into(xj, yi, wl, gb, fb, acc);
                }
            }
        }
        AddMorphism { src: x.clone(), tgt: w.clone(), coords: out }
    }

    /// Composes a path given right to left: `compose_all(&[h, g, f]) = h ∘ g ∘ f`.
    pub fn compose_all(&self, fs: &[&AddMorphism]) -> AddMorphism {
        let mut it = fs.iter().rev();
        let mut acc = (*it.next().expect("empty composite")).clone();
        for g in it {
            acc = self.compose(g, &acc);
        }
        acc
    }

    pub fn add(&self, f: &AddMorphism, g: &AddMorphism) -> AddMorphism {
        assert!(f.src == g.src && f.tgt == g.tgt, "adding morphisms with different endpoints");
        AddMorphism { src: f.src.clone(), tgt: f.tgt.clone(), coords: self.field.add_vec(&f.coords, &g.coords) }
    }

    pub fn sub(&self, f: &AddMorphism, g: &AddMorphism) -> AddMorphism {
        assert!(f.src == g.src && f.tgt == g.tgt, "subtracting morphisms with different endpoints");
        AddMorphism { src: f.src.clone(), tgt: f.tgt.clone(), coords: self.field.sub_vec(&f.coords, &g.coords) }
    }

    pub fn scale(&self, c: u32, f: &AddMorphism) -> AddMorphism {
        AddMorphism { src: f.src.clone(), tgt: f.tgt.clone(), coords: self.field.scale_vec(c, &f.coords) }
    }

    pub fn neg(&self, f: &AddMorphism) -> AddMorphism {
        self.scale(self.field.neg(1), f)
    }

    pub fn is_zero(&self, f: &AddMorphism) -> bool {
        f.coords.iter().all(|&c| c == 0)
    }

    /// Copies the blocks of `f: x' -> y'` into `out ∈ Hom(x, y)` where `x'` sits
    /// in `x` starting at summand `j0` and `y'` in `y` starting at `i0`.
    fn embed_into(&self, out: &mut [u32], x: &[usize], y: &[usize], i0: usize, j0: usize, f: &AddMorphism) {
        let off = self.offsets(x, y);
        let off_f = self.offsets(&f.src, &f.tgt);
        for (i, &b) in f.tgt.iter().enumerate() {
            for (j, &a) in f.src.iter().enumerate() {
                let d = self.dims[a][b];
                let s = off_f[i * f.src.len() + j];
                let t = off[(i0 + i) * x.len() + j0 + j];
                out[t..t + d].copy_from_slice(&f.coords[s..s + d]);
            }
        }
    }

    /// Assembles a morphism `⊕ cols -> ⊕ rows` from parts; `parts[r][c]`
    /// goes from `cols[c]` to `rows[r]`, `None` meaning zero.
    pub fn from_parts(&self, rows: &[AddObject], cols: &[AddObject], parts: &[Vec<Option<&AddMorphism>>]) -> AddMorphism {
        let x: AddObject = cols.concat();
        let y: AddObject = rows.concat();
        let mut out = vec![0; self.hom_dim(&x, &y)];
        let mut i0 = 0;
        for (r, row) in rows.iter().enumerate() {
            let mut j0 = 0;
            for (c, col) in cols.iter().enumerate() {
                if let Some(f) = parts[r][c] {
                    assert!(f.src == *col && f.tgt == *row, "part ({r}, {c}) has the wrong endpoints");
                    self.embed_into(&mut out, &x, &y, i0, j0, f);
                }
                j0 += col.len();
            }
            i0 += row.len();
        }
        AddMorphism { src: x, tgt: y, coords: out }
    }

    /// The part of `f` from summands `j0..j0+|x'|` to summands `i0..i0+|y'|`.
    pub fn restrict(&self, f: &AddMorphism, i0: usize, rows: usize, j0: usize, cols: usize) -> AddMorphism {
        let x: AddObject = f.src[j0..j0 + cols].to_vec();
        let y: AddObject = f.tgt[i0..i0 + rows].to_vec();
        let off = self.offsets(&f.src, &f.tgt);
        let mut coords = Vec::with_capacity(self.hom_dim(&x, &y));
        for i in 0..rows {
            for j in 0..cols {
                let o = off[(i0 + i) * f.src.len() + j0 + j];
                let d = self.dims[f.src[j0 + j]][f.tgt[i0 + i]];
                coords.extend_from_slice(&f.coords[o..o + d]);
            }
        }
        AddMorphism { src: x, tgt: y, coords }
    }

    /// Block-diagonal sum `f ⊕ g`.
    pub fn direct_sum(&self, f: &AddMorphism, g: &AddMorphism) -> AddMorphism {
        self.from_parts(
            &[f.tgt.clone(), g.tgt.clone()],
            &[f.src.clone(), g.src.clone()],
            &[vec![Some(f), None], vec![None, Some(g)]],
        )
    }

    pub fn direct_sum_all(&self, fs: &[AddMorphism]) -> AddMorphism {
        let rows: Vec<AddObject> = fs.iter().map(|f| f.tgt.clone()).collect();
        let cols: Vec<AddObject> = fs.iter().map(|f| f.src.clone()).collect();
        let parts: Vec<Vec<Option<&AddMorphism>>> =
            (0..fs.len()).map(|r| (0..fs.len()).map(|c| if r == c { Some(&fs[r]) } else { None }).collect()).collect();
        self.from_parts(&rows, &cols, &parts)
    }

    /// Matrix of `Hom(x, y) -> Hom(x, w)`, `f ↦ g ∘ f`, for `g: y -> w`.
    pub fn post_matrix(&self, g: &AddMorphism, x: &[usize]) -> Matrix {
        let (y, w) = (&g.src, &g.tgt);
        let off_in = self.offsets(x, y);
        let off_out = self.offsets(x, w);
        let off_g = self.offsets(y, w);
        let mut m = Matrix::zeros(off_out[off_out.len() - 1], off_in[off_in.len() - 1]);
        for (i, &yi) in y.iter().enumerate() {
            for (j, &xj) in x.iter().enumerate() {
                let d_in = self.dims[xj][yi];
                let col0 = off_in[i * x.len() + j];
                for (l, &wl) in w.iter().enumerate() {
                    let d_out = self.dims[xj][wl];
                    if d_out == 0 {
                        continue;
                    }
                    let og = off_g[l * y.len() + i];
                    let gb = &g.coords[og..og + self.dims[yi][wl]];
                    if gb.iter().all(|&c| c == 0) {
                        continue;
                    }
                    let row0 = off_out[l * x.len() + j];
                    let t = self.comp_table(xj, yi, wl);
                    for t_idx in 0..d_in {
                        let mut col = vec![0; d_out];
                        for (s, &gs) in gb.iter().enumerate() {
                            if gs != 0 {
                                let o = (s * d_in + t_idx) * d_out;
                                self.field.axpy(&mut col, gs, &t[o..o + d_out]);
                            }
                        }
                        for (k, v) in col.into_iter().enumerate() {
                            m.set(row0 + k, col0 + t_idx, v);
                        }
                    }
                }
            }
        }
        m
    }

    /// Matrix of `Hom(y, w) -> Hom(x, w)`, `g ↦ g ∘ f`, for `f: x -> y`.
    pub fn pre_matrix(&self, f: &AddMorphism, w: &[usize]) -> Matrix {
        let (x, y) = (&f.src, &f.tgt);
        let off_in = self.offsets(y, w);
        let off_out = self.offsets(x, w);
        let off_f = self.offsets(x, y);
        let mut m = Matrix::zeros(off_out[off_out.len() - 1], off_in[off_in.len() - 1]);
        for (l, &wl) in w.iter().enumerate() {
            for (i, &yi) in y.iter().enumerate() {
                let d_in = self.dims[yi][wl];
                let col0 = off_in[l * y.len() + i];
                for (j, &xj) in x.iter().enumerate() {
                    let d_out = self.dims[xj][wl];
                    if d_out == 0 {
                        continue;
                    }
                    let of = off_f[i * x.len() + j];
                    let fb = &f.coords[of..of + self.dims[xj][yi]];
                    if fb.iter().all(|&c| c == 0) {
                        continue;
                    }
                    let row0 = off_out[l * x.len() + j];
                    let dxy = self.dims[xj][yi];
                    let t = self.comp_table(xj, yi, wl);
                    for s in 0..d_in {
                        let mut col = vec![0; d_out];
                        for (tt, &ft) in fb.iter().enumerate() {
                            if ft != 0 {
                                let o = (s * dxy + tt) * d_out;
                                self.field.axpy(&mut col, ft, &t[o..o + d_out]);
                            }
                        }
                        for (k, v) in col.into_iter().enumerate() {
                            m.set(row0 + k, col0 + s, v);
                        }
                    }
                }
            }
        }
        m
    }

    /// Two-sided inverse, if `f` is an isomorphism.
    pub fn inverse(&self, f: &AddMorphism) -> Option<AddMorphism> {
        let (x, y) = (&f.src, &f.tgt);
        if !self.same_profile(x, y) {
            return None;
        }
        // g ∘ f = 1_x, solved for g ∈ Hom(y, x).
        let m = self.pre_matrix(f, x);
        let g = linalg::solve_linear(self.field, &m, &self.identity(x).coords)?;
        let g = AddMorphism { src: y.clone(), tgt: x.clone(), coords: g };
        // A left inverse of an isomorphism is its unique inverse.
        (self.compose(f, &g) == self.identity(y)).then_some(g)
    }

    pub fn is_iso(&self, f: &AddMorphism) -> bool {
        self.inverse(f).is_some()
    }

    /// Mono test: `Hom(z, f)` injective for every base `z`.
    pub fn is_mono(&self, f: &AddMorphism) -> bool {
        (0..self.num_objects()).all(|z| {
            let m = self.post_matrix(f, &[z]);
            linalg::rank(self.field, &m) == m.cols()
        })
    }

    /// Epi test: `Hom(f, z)` injective for every base `z`.
    pub fn is_epi(&self, f: &AddMorphism) -> bool {
        (0..self.num_objects()).all(|z| {
            let m = self.pre_matrix(f, &[z]);
            linalg::rank(self.field, &m) == m.cols()
        })
    }

    /// Hom-dimension profile of an object: `dim Hom(z, x)` and `dim Hom(x, z)`
    /// for every base `z`. Isomorphic objects share it.
    pub fn profile(&self, x: &[usize]) -> Vec<usize> {
        let n = self.num_objects();
        let mut v = vec![0; 2 * n];
        for z in 0..n {
            for &a in x {
                v[z] += self.dims[z][a];
                v[n + z] += self.dims[a][z];
            }
        }
        v
    }

    pub fn same_profile(&self, x: &[usize], y: &[usize]) -> bool {
        self.profile(x) == self.profile(y)
    }

    /// All vectors of `Hom(x, y)` in lexicographic order, as morphisms.
    pub fn hom_elements<'a>(&'a self, x: &'a [usize], y: &'a [usize]) -> impl Iterator<Item = AddMorphism> + 'a {
        linalg::all_vectors(self.field, self.hom_dim(x, y)).map(move |c| AddMorphism {
            src: x.to_vec(),
            tgt: y.to_vec(),
            coords: c,
        })
    }

    /// Every isomorphism `x -> y`, by exhaustive scan of `Hom(x, y)`.
    pub fn find_isomorphisms(&self, x: &[usize], y: &[usize]) -> Vec<AddMorphism> {
        if !self.same_profile(x, y) {
            return Vec::new();
        }
        self.hom_elements(x, y).filter(|f| self.is_iso(f)).collect()
    }

    /// The morphism in the opposite category with the same blocks.
    pub fn op_morphism(&self, f: &AddMorphism) -> AddMorphism {
        // Hom_op(y, x) has blocks (j over x, i over y) = Hom(x_j, y_i).
        let (x, y) = (&f.src, &f.tgt);
        let off = self.offsets(x, y);
        let mut coords = Vec::with_capacity(f.coords.len());
        for (j, &xj) in x.iter().enumerate() {
            for (i, &yi) in y.iter().enumerate() {
                let o = off[i * x.len() + j];
                coords.extend_from_slice(&f.coords[o..o + self.dims[xj][yi]]);
            }
        }
        AddMorphism { src: y.clone(), tgt: x.clone(), coords }
    }

    pub fn show_object(&self, x: &[usize]) -> String {
        if x.is_empty() {
            return "0".to_string();
        }
        x.iter().map(|&a| self.names[a].as_str()).collect::<Vec<_>>().join("+")
    }

    pub fn show_morphism(&self, f: &AddMorphism) -> String {
        format!("{} -> {} {:?}", self.show_object(&f.src), self.show_object(&f.tgt), f.coords)
    }

    /// Canonical reordering of an object: summands sorted by name.
    pub fn canonical(&self, x: &[usize]) -> AddObject {
        let mut v = x.to_vec();
        v.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        v
    }

    /// Compares objects by length, then by summand names.
    pub fn cmp_objects(&self, x: &[usize], y: &[usize]) -> std::cmp::Ordering {
        x.len().cmp(&y.len()).then_with(|| {
            let xs: Vec<&str> = x.iter().map(|&a| self.names[a].as_str()).collect();
            let ys: Vec<&str> = y.iter().map(|&a| self.names[a].as_str()).collect();
            xs.cmp(&ys)
        })
    }

    /// Permutation isomorphism `x -> y` when `y` is a reordering of `x`:
    /// `perm[i]` is the summand of `x` placed at position `i` of `y`.
    pub fn permutation(&self, x: &[usize], perm: &[usize]) -> AddMorphism {
        let y: AddObject = perm.iter().map(|&j| x[j]).collect();
        let mut f = self.zero(x, &y);
        let off = self.offsets(x, &y);
        for (i, &j) in perm.iter().enumerate() {
            let o = off[i * x.len() + j];
            f.coords[o..o + self.dims[x[j]][x[j]]].copy_from_slice(&self.ids[x[j]]);
        }
        f
    }

    /// The permutation sorting `x` into canonical order.
    pub fn canonical_permutation(&self, x: &[usize]) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..x.len()).collect();
        perm.sort_by(|&i, &j| self.names[x[i]].cmp(&self.names[x[j]]).then(i.cmp(&j)));
        perm
    }
}

impl fmt::Display for BaseCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "category over {} on {{{}}}", self.field, self.names.join(", "))
    }
}

/// All canonical objects with at most `bound` summands, ordered by summand
/// count and then by names. Always contains the zero object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    bound: usize,
    objects: Vec<AddObject>,
}

impl Universe {
    pub fn new(cat: &BaseCategory, bound: usize) -> Self {
        let mut order: Vec<usize> = (0..cat.num_objects()).collect();
        order.sort_by(|&a, &b| cat.name(a).cmp(cat.name(b)));
        let mut objects = vec![Vec::new()];
        let mut layer: Vec<AddObject> = vec![Vec::new()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for x in &layer {
                // Non-decreasing in name order keeps the list canonical.
                let start = x.last().map(|l| order.iter().position(|o| o == l).unwrap()).unwrap_or(0);
                for &a in &order[start..] {
                    let mut y = x.clone();
                    y.push(a);
                    next.push(y);
                }
            }
            objects.extend(next.iter().cloned());
            layer = next;
        }
        Universe { bound, objects }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn objects(&self) -> &[AddObject] {
        &self.objects
    }

    pub fn contains(&self, cat: &BaseCategory, x: &[usize]) -> bool {
        x.len() <= self.bound && self.objects.binary_search_by(|o| cat.cmp_objects(o, &cat.canonical(x))).is_ok()
    }
}
