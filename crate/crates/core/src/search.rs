//! Bounded searches: configuration, outcomes, block linear systems, and the
//! sample-then-enumerate scan over affine solution spaces.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::category::{BaseCategory, Universe};
use crate::linalg::{self, AffineSpace, Matrix, PrimeField};
use crate::report::{Report, Status};

/// Knobs for every bounded search. Defaults match the acceptance runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Summand bound `B` of the universe that universal quantifiers range over.
    pub universe_bound: usize,
    /// Summand bound for objects produced by existence searches (completions,
    /// cones, kernels). Defaults to `2B`.
    pub witness_bound: usize,
    /// Depth of weak-isomorphism zigzags used for admissible classes.
    pub zigzag_depth: usize,
    /// Seed of the sampling order inside searches.
    pub seed: u64,
    /// Random points tried before falling back to enumeration.
    pub samples: usize,
    /// Random points tried when looking for an isomorphism, where invertible
    /// points can be sparse over small fields.
    pub iso_samples: usize,
    /// Largest solution space enumerated exhaustively.
    pub exhaustive_cap: u64,
}

impl Config {
    pub fn new(universe_bound: usize) -> Self {
        Config {
            universe_bound,
            witness_bound: 2 * universe_bound,
            zigzag_depth: 1,
            seed: 0x6e65_7861_6e67,
            samples: 48,
            iso_samples: 512,
            exhaustive_cap: 1 << 16,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

impl Default for Config {
    fn default() -> Self {
        Config::new(2)
    }
}

/// A category together with the two search windows over it.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub cat: Arc<BaseCategory>,
    pub cfg: Config,
    /// Objects that universal quantifiers range over.
    pub universe: Universe,
    /// Objects that existence searches may produce.
    pub witness: Universe,
}

impl Ctx {
    pub fn new(cat: Arc<BaseCategory>, cfg: Config) -> Self {
        let universe = Universe::new(&cat, cfg.universe_bound);
        let witness = Universe::new(&cat, cfg.witness_bound.max(cfg.universe_bound));
        Ctx { cat, cfg, universe, witness }
    }

    pub fn field(&self) -> PrimeField {
        self.cat.field()
    }

    /// The same windows over the opposite category.
    pub fn opposite(&self) -> Ctx {
        Ctx::new(Arc::new(self.cat.opposite()), self.cfg.clone())
    }
}

/// At universe bound 0 only the zero object is quantified over, so a pass
/// of an existence axiom carries no evidence: such passes are downgraded.
pub fn flag_vacuous(ctx: &Ctx, r: &mut Report, existence: &[&str]) {
    if ctx.cfg.universe_bound > 0 {
        return;
    }
    for c in r.checks.iter_mut().filter(|c| existence.contains(&c.name.as_str()) && c.status == Status::Pass) {
        c.inconclusive("universe bound 0: only the zero object was examined");
    }
}

/// Result of an existence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// Exhaustively ruled out.
    Absent,
    /// The search space exceeded its bound before an answer was found.
    Exhausted,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::Absent => Search::Absent,
            Search::Exhausted => Search::Exhausted,
        }
    }
}

/// Finds a point of `space` satisfying `pred`: seeded random samples first,
/// then a full scan when the space is small enough.
pub fn find_point(f: PrimeField, space: &AffineSpace, cfg: &Config, pred: impl FnMut(&[u32]) -> bool) -> Search<Vec<u32>> {
    find_point_with(f, space, cfg, cfg.samples, pred)
}

/// [`find_point`] with the larger isomorphism sampling budget.
pub fn find_iso_point(f: PrimeField, space: &AffineSpace, cfg: &Config, pred: impl FnMut(&[u32]) -> bool) -> Search<Vec<u32>> {
    find_point_with(f, space, cfg, cfg.iso_samples, pred)
}

fn find_point_with(
    f: PrimeField,
    space: &AffineSpace,
    cfg: &Config,
    samples: usize,
    mut pred: impl FnMut(&[u32]) -> bool,
) -> Search<Vec<u32>> {
    let size = space.size(f);
    if size <= samples as u64 {
        for x in space.points(f) {
            if pred(&x) {
                return Search::Found(x);
            }
        }
        return Search::Absent;
    }
    let mut rng = cfg.rng();
    for _ in 0..samples {
        let x = space.sample(f, &mut rng);
        if pred(&x) {
            return Search::Found(x);
        }
    }
    if size > cfg.exhaustive_cap {
        return Search::Exhausted;
    }
    for x in space.points(f) {
        if pred(&x) {
            return Search::Found(x);
        }
    }
    Search::Absent
}

/// Visits every point of `space` (bounded by the cap). Returns `false` if the
/// space was too large to enumerate; `visit` returning `false` stops early.
pub fn for_each_point(f: PrimeField, space: &AffineSpace, cap: u64, mut visit: impl FnMut(&[u32]) -> bool) -> bool {
    if space.size(f) > cap {
        return false;
    }
    for x in space.points(f) {
        if !visit(&x) {
            break;
        }
    }
    true
}

/// A linear system assembled from blocks: unknowns and equations are grouped
/// into named blocks, and each term contributes a matrix from one unknown
/// block to one equation block.
#[derive(Clone, Debug, Default)]
pub struct BlockSystem {
    var_dims: Vec<usize>,
    eq_dims: Vec<usize>,
    terms: Vec<(usize, usize, Matrix)>,
    rhs: Vec<Vec<u32>>,
}

impl BlockSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn var(&mut self, dim: usize) -> usize {
        self.var_dims.push(dim);
        self.var_dims.len() - 1
    }

    pub fn eq(&mut self, dim: usize) -> usize {
        self.eq_dims.push(dim);
        self.rhs.push(vec![0; dim]);
        self.eq_dims.len() - 1
    }

    pub fn term(&mut self, eq: usize, var: usize, m: Matrix) {
        assert_eq!(m.rows(), self.eq_dims[eq], "term rows do not match the equation block");
        assert_eq!(m.cols(), self.var_dims[var], "term columns do not match the unknown block");
        self.terms.push((eq, var, m));
    }

    /// Adds `c` to the right-hand side of an equation block.
    pub fn rhs(&mut self, f: PrimeField, eq: usize, c: &[u32]) {
        assert_eq!(c.len(), self.eq_dims[eq]);
        self.rhs[eq] = f.add_vec(&self.rhs[eq], c);
    }

    /// Pins an unknown block to a value.
    pub fn fix(&mut self, f: PrimeField, var: usize, value: &[u32]) {
        let d = self.var_dims[var];
        let e = self.eq(d);
        self.term(e, var, Matrix::identity(d));
        self.rhs(f, e, value);
    }

    pub fn num_vars(&self) -> usize {
        self.var_dims.iter().sum()
    }

    fn offsets(dims: &[usize]) -> Vec<usize> {
        let mut off = Vec::with_capacity(dims.len() + 1);
        let mut acc = 0;
        for d in dims {
            off.push(acc);
            acc += d;
        }
        off.push(acc);
        off
    }

    pub fn matrix(&self, f: PrimeField) -> (Matrix, Vec<u32>) {
        let vo = Self::offsets(&self.var_dims);
        let eo = Self::offsets(&self.eq_dims);
        let mut m = Matrix::zeros(eo[eo.len() - 1], vo[vo.len() - 1]);
        for (e, v, t) in &self.terms {
            for r in 0..t.rows() {
                for c in 0..t.cols() {
                    let x = t.get(r, c);
                    if x != 0 {
                        let (rr, cc) = (eo[*e] + r, vo[*v] + c);
                        m.set(rr, cc, f.add(m.get(rr, cc), x));
                    }
                }
            }
        }
        (m, self.rhs.concat())
    }

    pub fn solve(&self, f: PrimeField) -> Option<AffineSpace> {
        let (m, b) = self.matrix(f);
        linalg::solve_affine(f, &m, &b)
    }

    /// Splits a solution vector into its unknown blocks.
    pub fn split(&self, x: &[u32]) -> Vec<Vec<u32>> {
        let vo = Self::offsets(&self.var_dims);
        (0..self.var_dims.len()).map(|v| x[vo[v]..vo[v + 1]].to_vec()).collect()
    }

    /// The coordinate range of an unknown block inside a solution vector.
    pub fn range(&self, var: usize) -> std::ops::Range<usize> {
        let vo = Self::offsets(&self.var_dims);
        vo[var]..vo[var + 1]
    }
}

/// Dimension of the projection of an affine space's direction onto the
/// given coordinate ranges.
pub fn projected_rank(f: PrimeField, space: &AffineSpace, ranges: &[std::ops::Range<usize>]) -> usize {
    if space.basis.is_empty() {
        return 0;
    }
    let cols: Vec<Vec<u32>> =
        space.basis.iter().map(|v| ranges.iter().flat_map(|r| v[r.clone()].iter().copied()).collect()).collect();
    let rows = cols[0].len();
    linalg::rank(f, &Matrix::from_columns(rows, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_system_solves_and_splits() {
        let f = PrimeField::new(3).unwrap();
        let mut s = BlockSystem::new();
        let a = s.var(1);
        let b = s.var(1);
        let e = s.eq(1);
        s.term(e, a, Matrix::identity(1));
        s.term(e, b, Matrix::identity(1));
        s.rhs(f, e, &[2]);
        s.fix(f, a, &[1]);
        let sol = s.solve(f).unwrap();
        assert_eq!(s.split(&sol.particular), vec![vec![1], vec![1]]);
        assert_eq!(sol.dim(), 0);
    }

    #[test]
    fn find_point_scans_small_spaces() {
        let f = PrimeField::new(2).unwrap();
        let space = AffineSpace { particular: vec![0, 0, 0], basis: vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]] };
        let cfg = Config::default();
        assert_eq!(find_point(f, &space, &cfg, |x| x == [1, 1, 0]), Search::Found(vec![1, 1, 0]));
        assert_eq!(find_point(f, &space, &cfg, |_| false), Search::Absent);
    }
}
