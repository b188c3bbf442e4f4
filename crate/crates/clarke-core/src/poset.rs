//! Finite posets, graded sheaves on them and their cohomology.
//!
//! A poset carries the Alexandrov topology whose open sets are up-closed, so
//! a sheaf is a functor with restriction maps `F(x) → F(y)` for `x ⪯ y`.
//! Cohomology is computed from the nerve complex
//! `C^n = ⊕_{x₀≺…≺x_n} F(x_n)` with differential
//!
//! `(δf)(x₀…x_{n+1}) = Σ_{i≤n} (−1)^i f(x₀…x̂_i…x_{n+1}) + (−1)^{n+1} F(x_n→x_{n+1}) f(x₀…x_n)`.
//!
//! A sheaf is stored as a direct sum of blocks. Each block carries a
//! bidegree and an integer sector tag, and restriction maps never mix
//! blocks, so every block is an independent sheaf with its own cochain
//! complex.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::linalg::{rank_and_kernel, sparse_rank, sparse_rat_to_int, Rat, RatMatrix, SparseRow};
use crate::table::{Bidegree, HodgeTable};

/// Errors raised when building posets and sheaves.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SheafError {
    /// The relation is not a partial order.
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(&'static str),
    /// A restriction map was given for an incomparable pair.
    #[error("restriction map given for incomparable elements {0} and {1}")]
    Incomparable(usize, usize),
    /// A restriction map has the wrong shape.
    #[error("restriction map {x}→{y} has the wrong shape")]
    BadShape { x: usize, y: usize },
    /// The composition law fails.
    #[error("composition law fails along {x} ⪯ {y} ⪯ {z} in block {block}")]
    Composition { x: usize, y: usize, z: usize, block: usize },
}

/// A finite partially ordered set on the elements `0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<Vec<bool>>,
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
}

impl FinitePoset {
    /// Builds the poset on `0..n` with `x ⪯ y` iff `leq(x, y)`, checking
    /// reflexivity, antisymmetry and transitivity.
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self, SheafError> {
        let m: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| leq(x, y)).collect()).collect();
        Self::from_matrix(m)
    }

    /// Builds the poset generated by the given strict order pairs (the
    /// reflexive-transitive closure is taken).
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, SheafError> {
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(x, y) in pairs {
            m[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        if m[k][j] {
                            m[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(m)
    }

    fn from_matrix(m: Vec<Vec<bool>>) -> Result<Self, SheafError> {
        let n = m.len();
        for x in 0..n {
            if !m[x][x] {
                return Err(SheafError::NotAPartialOrder("not reflexive"));
            }
            for y in 0..n {
                if x != y && m[x][y] && m[y][x] {
                    return Err(SheafError::NotAPartialOrder("not antisymmetric"));
                }
                if m[x][y] {
                    for z in 0..n {
                        if m[y][z] && !m[x][z] {
                            return Err(SheafError::NotAPartialOrder("not transitive"));
                        }
                    }
                }
            }
        }
        let below = (0..n).map(|y| (0..n).filter(|&x| x != y && m[x][y]).collect()).collect();
        let above = (0..n).map(|x| (0..n).filter(|&y| x != y && m[x][y]).collect()).collect();
        Ok(Self { n, leq: m, below, above })
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.n
    }

    /// True for the empty poset.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `x ⪯ y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// Elements strictly below `y`.
    pub fn strictly_below(&self, y: usize) -> &[usize] {
        &self.below[y]
    }

    /// Elements strictly above `x`.
    pub fn strictly_above(&self, x: usize) -> &[usize] {
        &self.above[x]
    }

    /// The open star `{y : x ⪯ y}` in increasing element order.
    pub fn star(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.leq[x][y]).collect()
    }

    /// The induced subposet on `elements` (listed in the new numbering).
    pub fn restrict(&self, elements: &[usize]) -> FinitePoset {
        let m = elements
            .iter()
            .map(|&x| elements.iter().map(|&y| self.leq[x][y]).collect())
            .collect();
        Self::from_matrix(m).expect("induced subposet of a poset is a poset")
    }

    /// Length of the longest strict chain (number of elements minus one).
    pub fn height(&self) -> usize {
        let mut longest = vec![0usize; self.n];
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| self.below[x].len());
        for &y in &order {
            longest[y] = self.below[y].iter().map(|&x| longest[x] + 1).max().unwrap_or(0);
        }
        longest.into_iter().max().unwrap_or(0)
    }

    /// All strict chains `x₀ ≺ … ≺ x_n`, in lexicographic order.
    pub fn strict_chains(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for y in 0..self.n {
            out.extend(self.chains_ending_at(y, n));
        }
        out.sort();
        out
    }

    /// Strict chains of length `n` whose last element is `y`.
    pub fn chains_ending_at(&self, y: usize, n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![y]];
        }
        let mut out = Vec::new();
        for &x in &self.below[y] {
            for mut c in self.chains_ending_at(x, n - 1) {
                c.push(y);
                out.push(c);
            }
        }
        out
    }
}

/// Key of one direct-summand block of a graded sheaf.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockKey {
    /// Bidegree `(λ, μ)` of every basis vector in the block.
    pub bidegree: Bidegree,
    /// Finer tag that restriction maps preserve.
    pub sector: Vec<i64>,
}

/// A sheaf of finite-dimensional rational vector spaces on a finite poset,
/// decomposed into blocks preserved by all restriction maps.
#[derive(Debug, Clone)]
pub struct GradedSheaf {
    poset: FinitePoset,
    keys: Vec<BlockKey>,
    key_index: BTreeMap<BlockKey, usize>,
    dims: Vec<BTreeMap<usize, usize>>,
    maps: BTreeMap<(usize, usize, usize), RatMatrix>,
}

impl GradedSheaf {
    /// An empty sheaf on `poset`.
    pub fn new(poset: FinitePoset) -> Self {
        let n = poset.len();
        Self {
            poset,
            keys: Vec::new(),
            key_index: BTreeMap::new(),
            dims: vec![BTreeMap::new(); n],
            maps: BTreeMap::new(),
        }
    }

    /// The underlying poset.
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    /// Interns a block key and returns its id.
    pub fn block(&mut self, key: BlockKey) -> usize {
        if let Some(&id) = self.key_index.get(&key) {
            return id;
        }
        let id = self.keys.len();
        self.keys.push(key.clone());
        self.key_index.insert(key, id);
        id
    }

    /// All block keys, indexed by block id.
    pub fn blocks(&self) -> &[BlockKey] {
        &self.keys
    }

    /// Sets the dimension of block `b` at element `x`.
    pub fn set_dim(&mut self, x: usize, b: usize, dim: usize) {
        if dim == 0 {
            self.dims[x].remove(&b);
        } else {
            self.dims[x].insert(b, dim);
        }
    }

    /// Dimension of block `b` at element `x`.
    pub fn dim(&self, x: usize, b: usize) -> usize {
        self.dims[x].get(&b).copied().unwrap_or(0)
    }

    /// Nonzero blocks at `x` with their dimensions.
    pub fn stalk(&self, x: usize) -> &BTreeMap<usize, usize> {
        &self.dims[x]
    }

    /// Sets the restriction `F(x) → F(y)` on block `b` (a `dim(y) × dim(x)`
    /// matrix).
    pub fn set_map(&mut self, x: usize, y: usize, b: usize, m: RatMatrix) -> Result<(), SheafError> {
        if !self.poset.leq(x, y) {
            return Err(SheafError::Incomparable(x, y));
        }
        if m.rows() != self.dim(y, b) || m.cols() != self.dim(x, b) {
            return Err(SheafError::BadShape { x, y });
        }
        self.maps.insert((x, y, b), m);
        Ok(())
    }

    /// Restriction `F(x) → F(y)` on block `b`. Missing maps between nonzero
    /// stalks are zero; `x = y` is the identity.
    pub fn map(&self, x: usize, y: usize, b: usize) -> RatMatrix {
        if x == y {
            return RatMatrix::identity(self.dim(x, b));
        }
        match self.maps.get(&(x, y, b)) {
            Some(m) => m.clone(),
            None => RatMatrix::zeros(self.dim(y, b), self.dim(x, b)),
        }
    }

    fn map_ref(&self, x: usize, y: usize, b: usize) -> Option<&RatMatrix> {
        self.maps.get(&(x, y, b))
    }

    /// Mutable access to a stored restriction map.
    pub fn map_mut(&mut self, x: usize, y: usize, b: usize) -> Option<&mut RatMatrix> {
        self.maps.get_mut(&(x, y, b))
    }

    /// Total dimension of the stalk at `x` in each bidegree.
    pub fn stalk_bidegree_dims(&self, x: usize) -> BTreeMap<Bidegree, usize> {
        let mut out = BTreeMap::new();
        for (&b, &d) in &self.dims[x] {
            *out.entry(self.keys[b].bidegree.clone()).or_insert(0) += d;
        }
        out
    }

    /// Checks `F(y→z)·F(x→y) = F(x→z)` for every triple and block.
    pub fn check_composition(&self) -> Result<(), SheafError> {
        match self.composition_violations().into_iter().next() {
            None => Ok(()),
            Some(e) => Err(e),
        }
    }

    /// Every failure of the composition law.
    pub fn composition_violations(&self) -> Vec<SheafError> {
        let mut out = Vec::new();
        let n = self.poset.len();
        for x in 0..n {
            for &y in self.poset.strictly_above(x) {
                for &z in self.poset.strictly_above(y) {
                    for &b in self.dims[x].keys() {
                        if self.dim(z, b) == 0 {
                            continue;
                        }
                        let lhs = self.map(y, z, b).mul(&self.map(x, y, b));
                        if lhs != self.map(x, z, b) {
                            out.push(SheafError::Composition { x, y, z, block: b });
                        }
                    }
                }
            }
        }
        out
    }

    /// Restriction of the sheaf to the induced subposet on `elements`.
    pub fn restrict(&self, elements: &[usize]) -> GradedSheaf {
        let poset = self.poset.restrict(elements);
        let mut s = GradedSheaf {
            poset,
            keys: self.keys.clone(),
            key_index: self.key_index.clone(),
            dims: elements.iter().map(|&x| self.dims[x].clone()).collect(),
            maps: BTreeMap::new(),
        };
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                if i == j || !self.poset.leq(x, y) {
                    continue;
                }
                for &b in self.dims[x].keys() {
                    if let Some(m) = self.map_ref(x, y, b) {
                        s.maps.insert((i, j, b), m.clone());
                    }
                }
            }
        }
        s
    }

    /// Dimensions of the cochain groups `C^n` of block `b`.
    pub fn cochain_dims(&self, b: usize) -> Vec<usize> {
        let h = self.poset.height();
        (0..=h)
            .map(|n| {
                (0..self.poset.len())
                    .filter(|&y| self.dim(y, b) > 0)
                    .map(|y| self.poset.chains_ending_at(y, n).len() * self.dim(y, b))
                    .sum()
            })
            .collect()
    }

    /// Cohomology dimensions `dim H^n` of block `b`, for `n = 0..=height`.
    pub fn block_cohomology(&self, b: usize) -> Vec<usize> {
        let complex = BlockComplex::build(self, b);
        let ranks: Vec<usize> = (0..complex.chains.len())
            .map(|n| if n + 1 < complex.chains.len() { complex.differential_rank(self, n) } else { 0 })
            .collect();
        (0..complex.chains.len())
            .map(|n| {
                let prev = if n == 0 { 0 } else { ranks[n - 1] };
                complex.dims[n].saturating_sub(ranks[n] + prev)
            })
            .collect()
    }

    /// Cohomology of every block: `(n, bidegree) ↦ dim`.
    pub fn cohomology(&self) -> CohomologyRanks {
        let per_block: Vec<Vec<usize>> =
            (0..self.keys.len()).map(|b| self.block_cohomology(b)).collect();
        self.collect_ranks(&per_block)
    }

    /// Aggregates per-block cohomology (indexed by block id) by bidegree.
    pub fn collect_ranks(&self, per_block: &[Vec<usize>]) -> CohomologyRanks {
        let mut ranks = CohomologyRanks::default();
        for (b, hs) in per_block.iter().enumerate() {
            for (n, &d) in hs.iter().enumerate() {
                if d > 0 {
                    *ranks.entries.entry((n, self.keys[b].bidegree.clone())).or_insert(0) += d as u64;
                }
            }
        }
        ranks
    }

    /// Dimension of the space of compatible families of block `b`, computed
    /// directly as the solution space of `F(x→y) f_x = f_y`.
    pub fn limit_dimension(&self, b: usize) -> usize {
        let n = self.poset.len();
        let mut offset = vec![0usize; n + 1];
        for x in 0..n {
            offset[x + 1] = offset[x] + self.dim(x, b);
        }
        let total = offset[n];
        if total == 0 {
            return 0;
        }
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for x in 0..n {
            for &y in self.poset.strictly_above(x) {
                let m = self.map(x, y, b);
                for i in 0..self.dim(y, b) {
                    let mut row = vec![Rat::zero(); total];
                    for j in 0..self.dim(x, b) {
                        row[offset[x] + j] = m.get(i, j).clone();
                    }
                    row[offset[y] + i] -= Rat::one();
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return total;
        }
        rank_and_kernel(&RatMatrix::from_rows(rows)).1.len()
    }
}

/// Cohomology dimensions keyed by `(degree n, bidegree)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CohomologyRanks {
    /// Nonzero entries.
    pub entries: BTreeMap<(usize, Bidegree), u64>,
}

impl CohomologyRanks {
    /// `dim H^n` in bidegree `b`.
    pub fn get(&self, n: usize, b: &Bidegree) -> u64 {
        self.entries.get(&(n, b.clone())).copied().unwrap_or(0)
    }

    /// The table `f^{λ,μ} = Σ_n dim H^n(F^{λ,μ−n})`.
    pub fn hodge_table(&self) -> HodgeTable {
        HodgeTable::from_entries(self.entries.iter().map(|((n, b), &d)| {
            let shift = Rat::from_integer((*n as i64).into());
            (Bidegree::new(b.lambda.clone(), &b.mu + shift), d)
        }))
    }

    /// Total dimension in degrees `n ≥ 1`.
    pub fn higher_total(&self) -> u64 {
        self.entries.iter().filter(|((n, _), _)| *n > 0).map(|(_, &d)| d).sum()
    }
}

struct BlockComplex {
    block: usize,
    chains: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl BlockComplex {
    fn build(sheaf: &GradedSheaf, block: usize) -> Self {
        let p = &sheaf.poset;
        let support: Vec<usize> = (0..p.len()).filter(|&y| sheaf.dim(y, block) > 0).collect();
        let h = p.height();
        let mut chains = Vec::new();
        let mut index = Vec::new();
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        for n in 0..=h {
            let mut cs: Vec<Vec<usize>> =
                support.iter().flat_map(|&y| p.chains_ending_at(y, n)).collect();
            if cs.is_empty() {
                break;
            }
            cs.sort();
            let mut off = Vec::with_capacity(cs.len());
            let mut total = 0;
            for c in &cs {
                off.push(total);
                total += sheaf.dim(*c.last().expect("chains are nonempty"), block);
            }
            index.push(cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect());
            chains.push(cs);
            offsets.push(off);
            dims.push(total);
        }
        Self { block, chains, index, offsets, dims }
    }

    /// Rank of `δ^n : C^n → C^{n+1}`.
    fn differential_rank(&self, sheaf: &GradedSheaf, n: usize) -> usize {
        sparse_rank(self.rows(sheaf, n), false)
    }

    /// Rows of `δ^n`, one per basis vector of `C^{n+1}`, with integer
    /// entries (each row scaled by a positive constant).
    fn rows(&self, sheaf: &GradedSheaf, n: usize) -> Vec<SparseRow> {
        let b = self.block;
        let mut rows = Vec::with_capacity(self.dims[n + 1]);
        for c in &self.chains[n + 1] {
            let last = c[n + 1];
            let d = sheaf.dim(last, b);
            // Faces deleting x_i for i ≤ n keep the last element.
            let mut identity_faces: Vec<(usize, bool)> = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let mut face = c.clone();
                face.remove(i);
                let col = self.offsets[n][self.index[n][&face]];
                identity_faces.push((col, i % 2 == 0));
            }
            // The last face restricts along x_n → x_{n+1}.
            let mut last_face = c.clone();
            last_face.pop();
            let restriction = self.index[n].get(&last_face).map(|&j| {
                (self.offsets[n][j], sheaf.map(c[n], last, b), (n + 1) % 2 == 0)
            });
            for k in 0..d {
                let mut row: Vec<(usize, Rat)> = Vec::new();
                for &(col, positive) in &identity_faces {
                    row.push((col + k, if positive { Rat::one() } else { -Rat::one() }));
                }
                if let Some((col, m, positive)) = &restriction {
                    for j in 0..m.cols() {
                        let v = m.get(k, j);
                        if !v.is_zero() {
                            row.push((col + j, if *positive { v.clone() } else { -v.clone() }));
                        }
                    }
                }
                row.sort_by_key(|e| e.0);
                let mut merged: Vec<(usize, Rat)> = Vec::with_capacity(row.len());
                for (col, v) in row {
                    match merged.last_mut() {
                        Some(last) if last.0 == col => last.1 += v,
                        _ => merged.push((col, v)),
                    }
                }
                rows.push(sparse_rat_to_int(&merged));
            }
        }
        rows
    }
}

/// Dimensions of the cochain groups of one block, together with the ranks of
/// its differentials computed with two different pivot orders.
pub fn block_complex_profile(sheaf: &GradedSheaf, b: usize) -> (Vec<usize>, Vec<(usize, usize)>) {
    let c = BlockComplex::build(sheaf, b);
    let ranks = (0..c.chains.len().saturating_sub(1))
        .map(|n| {
            let rows = c.rows(sheaf, n);
            (sparse_rank(rows.clone(), false), sparse_rank(rows, true))
        })
        .collect();
    (c.dims, ranks)
}

/// One failure found by [`star_cohomology_audit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditFailure {
    /// `H^0(St(x))` has the wrong dimension in some block.
    StarSections { element: usize, block: usize, expected: usize, found: usize },
    /// Higher cohomology of a star is nonzero.
    StarHigher { element: usize, block: usize, degree: usize, dim: usize },
    /// The composition law fails.
    Composition(SheafError),
}

/// Verifies `H^0(St(x), F) ≅ F(x)` and `H^{>0}(St(x), F) = 0` for every
/// element and the composition law; returns all failures.
pub fn star_cohomology_audit(sheaf: &GradedSheaf) -> Vec<AuditFailure> {
    let mut out: Vec<AuditFailure> =
        sheaf.composition_violations().into_iter().map(AuditFailure::Composition).collect();
    for x in 0..sheaf.poset.len() {
        let star = sheaf.poset.star(x);
        let restricted = sheaf.restrict(&star);
        let mut blocks: BTreeSet<usize> = BTreeSet::new();
        for &y in &star {
            blocks.extend(sheaf.dims[y].keys().copied());
        }
        for b in blocks {
            let h = restricted.block_cohomology(b);
            let expected = sheaf.dim(x, b);
            let found = h.first().copied().unwrap_or(0);
            if found != expected {
                out.push(AuditFailure::StarSections { element: x, block: b, expected, found });
            }
            for (degree, &dim) in h.iter().enumerate().skip(1) {
                if dim != 0 {
                    out.push(AuditFailure::StarHigher { element: x, block: b, degree, dim });
                }
            }
        }
    }
    out
}
