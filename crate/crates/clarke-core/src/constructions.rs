//! Recipes producing Clarke pairs: weak Fano stacks, BHK matrices with
//! groups, nef partitions of reflexive polytopes through the Cayley trick,
//! and stacky hypersurface pairs.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::duality::{ClarkePair, PairError};
use crate::fan::{primitive_with_multiplicity, FanError, StackyFan, SupportFunction};
use crate::linalg::{
    hermite_normal_form, rat, solve_rational, to_rat_vec, Int, IntMatrix, Rat, RatMatrix,
};
use crate::polytope::{vertices_from_halfspaces, Hull};
use crate::tropical::{regular_subdivision, HeightedPoints, RegularSubdivision, TropicalError};

/// Failures of the constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    /// The resulting pair failed validation.
    #[error("pair validation failed: {0}")]
    Pair(#[from] PairError),
    /// A fan could not be built.
    #[error("fan construction failed: {0}")]
    Fan(#[from] FanError),
    /// Tropical machinery failed.
    #[error("{0}")]
    Tropical(#[from] TropicalError),
    /// The BHK matrix is not square, nonnegative and invertible.
    #[error("BHK matrix must be square, nonnegative and invertible")]
    BadMatrix,
    /// A group generator has the wrong length or is not in `S_B`.
    #[error("group generator {0} does not lie in S_B")]
    NotInKernel(usize),
    /// Vertex list problems.
    #[error("polytope vertices are malformed: {0}")]
    BadPolytope(&'static str),
    /// The origin is not an interior point.
    #[error("the origin is not an interior point of the polytope")]
    OriginNotInterior,
    /// The polar dual has non-integral vertices.
    #[error("the polytope is not reflexive")]
    NotReflexive,
    /// The parts do not partition the vertex set.
    #[error("parts do not partition the vertex set")]
    NotAPartition,
    /// Some `φ_j` is not an integral convex piecewise-linear function.
    #[error("part {part} does not give an integral convex support function")]
    NotNef { part: usize },
    /// The dual pieces do not form a nef partition.
    #[error("dual nef partition failed validation: {0}")]
    DualInvalid(&'static str),
    /// No coherent star triangulation was found.
    #[error("point set admits no pulling triangulation at the base")]
    DegeneratePointSet,
    /// Hypersurface data problems.
    #[error("hypersurface data invalid: {0}")]
    BadHypersurfaceData(&'static str),
    /// `P_L` has a non-integral vertex.
    #[error("the polytope P_L is not integral")]
    NonIntegralPolytope,
}

/// The pair `(Σ, {0})` for a convex quasiprojective stacky fan.
pub fn weak_fano_pair(fan: StackyFan) -> Result<ClarkePair, ConstructionError> {
    let rank = fan.rank();
    Ok(ClarkePair::new_strict(fan, StackyFan::trivial(rank))?)
}

/// A BHK matrix with a group of diagonal symmetries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BhkData {
    matrix: Vec<Vec<i64>>,
    group: Vec<Vec<Rat>>,
}

impl BhkData {
    /// Checks that `B` is square, nonnegative and invertible, and that every
    /// generator `q` satisfies `Bᵀq ∈ ℤⁿ`.
    pub fn new(matrix: Vec<Vec<i64>>, group: Vec<Vec<Rat>>) -> Result<Self, ConstructionError> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n || r.iter().any(|&x| x < 0)) {
            return Err(ConstructionError::BadMatrix);
        }
        if IntMatrix::from_i64_rows(&matrix).det().map_or(true, |d| d.is_zero()) {
            return Err(ConstructionError::BadMatrix);
        }
        for (g, q) in group.iter().enumerate() {
            if q.len() != n {
                return Err(ConstructionError::NotInKernel(g));
            }
            for j in 0..n {
                let s: Rat = (0..n).map(|i| rat(matrix[i][j]) * &q[i]).sum();
                if !s.is_integer() {
                    return Err(ConstructionError::NotInKernel(g));
                }
            }
        }
        Ok(Self { matrix, group })
    }

    /// The matrix `B`.
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Generators of `Q_B`.
    pub fn group(&self) -> &[Vec<Rat>] {
        &self.group
    }

    /// Generators of the whole group `S_B` (the columns of `B⁻ᵀ`).
    pub fn maximal_group(matrix: &[Vec<i64>]) -> Result<Vec<Vec<Rat>>, ConstructionError> {
        let bt = RatMatrix::from_i64_rows(matrix).transpose();
        let inv = bt.inverse().map_err(|_| ConstructionError::BadMatrix)?;
        Ok((0..matrix.len()).map(|j| inv.col(j)).collect())
    }
}

/// The factorization `B = Cᵀ·D` through the enlarged lattice `L_Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BhkFactorization {
    /// Standard basis expressed in the chosen basis of `L_Q` (columns).
    pub c: IntMatrix,
    /// The induced map to the target.
    pub d: IntMatrix,
}

/// Computes `C` and `D` from a Hermite basis of
/// `L_Q = ℤⁿ + ℤ·lifts(Q_B)` with lifts in `[0,1)ⁿ`.
pub fn bhk_factorization(data: &BhkData) -> Result<BhkFactorization, ConstructionError> {
    let n = data.matrix.len();
    let lifts: Vec<Vec<Rat>> =
        data.group.iter().map(|q| q.iter().map(|x| x - x.floor()).collect()).collect();
    let mut l = Int::one();
    for q in &lifts {
        for x in q {
            l = l.lcm(x.denom());
        }
    }
    let mut rows: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { l.clone() } else { Int::zero() }).collect())
        .collect();
    for q in &lifts {
        rows.push(q.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect());
    }
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(rows));
    let lr = Rat::from_integer(l);
    // Basis of L_Q as columns of G = Hᵀ / L.
    let mut g = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(j, i, Rat::from_integer(h.get(i, j).clone()) / &lr);
        }
    }
    let c = to_int_matrix(&g.inverse().map_err(|_| ConstructionError::BadMatrix)?)?;
    let d = to_int_matrix(&g.transpose().mul(&RatMatrix::from_i64_rows(&data.matrix)))?;
    debug_assert_eq!(c.transpose().mul(&d), IntMatrix::from_i64_rows(&data.matrix));
    Ok(BhkFactorization { c, d })
}

fn to_int_matrix(m: &RatMatrix) -> Result<IntMatrix, ConstructionError> {
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = m.get(i, j);
            if !x.is_integer() {
                return Err(ConstructionError::BadMatrix);
            }
            out.set(i, j, x.to_integer());
        }
    }
    Ok(out)
}

fn cone_over_columns(m: &IntMatrix) -> Result<StackyFan, ConstructionError> {
    let n = m.rows();
    let mut rays = Vec::with_capacity(m.cols());
    let mut weights = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let col: Vec<i64> = m
            .col(j)
            .iter()
            .map(|x| x.to_i64().ok_or(ConstructionError::BadMatrix))
            .collect::<Result<_, _>>()?;
        let (prim, mult) = primitive_with_multiplicity(&col);
        rays.push(prim);
        weights.push(mult);
    }
    Ok(StackyFan::new(n, rays, weights, vec![(0..m.cols()).collect()])?)
}

/// The pair `(Cone(cols C), Cone(cols D))` of single-cone stacky fans.
pub fn bhk_pair(data: &BhkData) -> Result<ClarkePair, ConstructionError> {
    let f = bhk_factorization(data)?;
    Ok(ClarkePair::new_strict(cone_over_columns(&f.c)?, cone_over_columns(&f.d)?)?)
}

/// A lattice polytope given by its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    rank: usize,
    vertices: Vec<Vec<i64>>,
}

impl LatticePolytope {
    /// Checks that the points are distinct and all are vertices of their
    /// hull.
    pub fn new(rank: usize, vertices: Vec<Vec<i64>>) -> Result<Self, ConstructionError> {
        if vertices.is_empty() {
            return Err(ConstructionError::BadPolytope("no vertices"));
        }
        if vertices.iter().any(|v| v.len() != rank) {
            return Err(ConstructionError::BadPolytope("vertex length differs from rank"));
        }
        if Hull::of_lattice(&vertices).vertices().len() != vertices.len() {
            return Err(ConstructionError::BadPolytope("a point is repeated or not a vertex"));
        }
        Ok(Self { rank, vertices })
    }

    /// Lattice rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Vertices.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// The exact hull.
    pub fn hull(&self) -> Hull {
        Hull::of_lattice(&self.vertices)
    }

    /// All lattice points, lexicographically.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        self.hull().lattice_points()
    }

    /// Index of a vertex.
    pub fn vertex_index(&self, v: &[i64]) -> Option<usize> {
        self.vertices.iter().position(|w| w.as_slice() == v)
    }

    fn sorted_vertices(&self) -> Vec<Vec<i64>> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    /// Same vertex set, in any order.
    pub fn same_as(&self, other: &LatticePolytope) -> bool {
        self.rank == other.rank && self.sorted_vertices() == other.sorted_vertices()
    }
}

/// Result of [`polar_dual`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolarDual {
    /// All vertices are lattice points.
    Reflexive(LatticePolytope),
    /// Some vertex is not integral; all vertices are listed.
    NonReflexive(Vec<Vec<Rat>>),
}

/// `Δ̌ = {n : ⟨n, m⟩ ≥ −1 for all m ∈ Δ}` from the facets of `Δ`.
pub fn polar_dual(p: &LatticePolytope) -> Result<PolarDual, ConstructionError> {
    let hull = p.hull();
    if hull.dim() != p.rank || !hull.contains_in_relative_interior(&vec![rat(0); p.rank]) {
        return Err(ConstructionError::OriginNotInterior);
    }
    let mut verts: Vec<Vec<Rat>> = hull
        .facets()
        .iter()
        .map(|f| {
            let s = -f.offset.clone();
            f.normal.iter().map(|a| a / &s).collect()
        })
        .collect();
    verts.sort();
    verts.dedup();
    if verts.iter().all(|v| v.iter().all(Rat::is_integer)) {
        let lattice = verts.iter().map(|v| v.iter().map(|x| x.to_integer().to_i64().unwrap_or(i64::MAX)).collect()).collect();
        Ok(PolarDual::Reflexive(LatticePolytope::new(p.rank, lattice)?))
    } else {
        Ok(PolarDual::NonReflexive(verts))
    }
}

/// A nef partition `A_1, …, A_{k+1}` of the vertices of a reflexive
/// polytope with the integral concave (min-type) support functions
/// `φ_j` that are linear on each facet cone and satisfy
/// `φ_j(A_i) = −δ_ij`. The last part may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefPartition {
    polytope: LatticePolytope,
    parts: Vec<Vec<usize>>,
    // linear[j][F]: the linear function equal to φ_j on the cone over facet F.
    linear: Vec<Vec<Vec<Int>>>,
}

impl NefPartition {
    /// Validates the partition and computes the support functions.
    pub fn new(polytope: LatticePolytope, parts: Vec<Vec<usize>>) -> Result<Self, ConstructionError> {
        if !matches!(polar_dual(&polytope)?, PolarDual::Reflexive(_)) {
            return Err(ConstructionError::NotReflexive);
        }
        let nv = polytope.vertices.len();
        let mut seen = vec![false; nv];
        for &v in parts.iter().flatten() {
            if v >= nv || seen[v] {
                return Err(ConstructionError::NotAPartition);
            }
            seen[v] = true;
        }
        if parts.is_empty() || seen.iter().any(|s| !s) {
            return Err(ConstructionError::NotAPartition);
        }
        let hull = polytope.hull();
        let d = polytope.rank;
        let mut linear = Vec::with_capacity(parts.len());
        for (j, part) in parts.iter().enumerate() {
            let value = |v: usize| if part.contains(&v) { rat(-1) } else { rat(0) };
            let mut per_facet = Vec::new();
            for f in hull.facets() {
                let m = RatMatrix::from_rows(f.points.iter().map(|&v| to_rat_vec(&polytope.vertices[v])).collect());
                let rhs: Vec<Rat> = f.points.iter().map(|&v| value(v)).collect();
                let n = solve_rational(&m, &rhs).ok_or(ConstructionError::NotNef { part: j })?;
                if m.rank() != d || n.iter().any(|x| !x.is_integer()) {
                    return Err(ConstructionError::NotNef { part: j });
                }
                let lin: Vec<Rat> = n;
                for v in 0..nv {
                    let val: Rat = lin.iter().zip(&polytope.vertices[v]).map(|(a, &b)| a * rat(b)).sum();
                    if val < value(v) {
                        return Err(ConstructionError::NotNef { part: j });
                    }
                }
                per_facet.push(lin.iter().map(Rat::to_integer).collect());
            }
            linear.push(per_facet);
        }
        Ok(Self { polytope, parts, linear })
    }

    /// The polytope.
    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    /// The parts `A_1, …, A_{k+1}` as vertex indices.
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Codimension `k` (number of parts minus one).
    pub fn k(&self) -> usize {
        self.parts.len() - 1
    }

    /// `φ_j(m)` for `j` in `0..=k` (zero-based).
    pub fn phi(&self, j: usize, m: &[i64]) -> Int {
        self.linear[j]
            .iter()
            .map(|lin| lin.iter().zip(m).map(|(a, &b)| a * Int::from(b)).sum::<Int>())
            .min()
            .expect("a full-dimensional polytope has facets")
    }

    /// The part containing a nonzero lattice point of `Δ`: the unique `j`
    /// with `φ_j(m) = −1`.
    pub fn piece(&self, m: &[i64]) -> Option<usize> {
        let hits: Vec<usize> = (0..self.parts.len()).filter(|&j| self.phi(j, m) == Int::from(-1)).collect();
        (hits.len() == 1).then(|| hits[0])
    }

    /// Vertices of the dual pieces `Δ̌_j = {n : ⟨n, m⟩ ≥ φ_j(m)}`.
    pub fn dual_pieces(&self) -> Vec<Vec<Vec<Rat>>> {
        (0..self.parts.len())
            .map(|j| {
                let rows: Vec<(Vec<Rat>, Rat)> = self
                    .polytope
                    .vertices
                    .iter()
                    .map(|v| (to_rat_vec(v), Rat::from_integer(self.phi(j, v))))
                    .collect();
                vertices_from_halfspaces(&rows, self.polytope.rank)
            })
            .collect()
    }

    /// Same polytope and the same parts as vertex sets.
    pub fn same_as(&self, other: &NefPartition) -> bool {
        if !self.polytope.same_as(&other.polytope) || self.parts.len() != other.parts.len() {
            return false;
        }
        self.parts.iter().zip(&other.parts).all(|(a, b)| {
            let sa: BTreeSet<&Vec<i64>> = a.iter().map(|&i| &self.polytope.vertices[i]).collect();
            let sb: BTreeSet<&Vec<i64>> = b.iter().map(|&i| &other.polytope.vertices[i]).collect();
            sa == sb
        })
    }
}

/// The dual nef partition on `∇ = Conv(Δ̌_1 ∪ … ∪ Δ̌_{k+1})`, validated.
pub fn dual_nef_partition(np: &NefPartition) -> Result<NefPartition, ConstructionError> {
    let pieces = np.dual_pieces();
    let mut lattice_pieces: Vec<Vec<Vec<i64>>> = Vec::with_capacity(pieces.len());
    for piece in &pieces {
        let mut lp = Vec::with_capacity(piece.len());
        for v in piece {
            if v.iter().any(|x| !x.is_integer()) {
                return Err(ConstructionError::DualInvalid("a dual piece has a non-integral vertex"));
            }
            lp.push(v.iter().map(|x| x.to_integer().to_i64().unwrap_or(i64::MAX)).collect::<Vec<i64>>());
        }
        lattice_pieces.push(lp);
    }
    let mut all: Vec<Vec<i64>> = lattice_pieces.iter().flatten().cloned().collect();
    all.sort();
    all.dedup();
    let hull = Hull::of_lattice(&all);
    let vertices: Vec<Vec<i64>> = hull.vertices().into_iter().map(|i| all[i].clone()).collect();
    let nabla = LatticePolytope::new(np.polytope.rank, vertices)?;
    let mut parts = vec![Vec::new(); pieces.len()];
    for (vi, v) in nabla.vertices.iter().enumerate() {
        let owners: Vec<usize> = (0..pieces.len()).filter(|&j| lattice_pieces[j].contains(v)).collect();
        if owners.len() != 1 {
            return Err(ConstructionError::DualInvalid("a vertex of the dual lies in several pieces"));
        }
        parts[owners[0]].push(vi);
    }
    NefPartition::new(nabla, parts).map_err(|e| match e {
        ConstructionError::NotReflexive => ConstructionError::DualInvalid("the dual polytope is not reflexive"),
        _ => ConstructionError::DualInvalid("the dual pieces do not give convex support functions"),
    })
}

/// A coherent star triangulation at a base point, with its heights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullingTriangulation {
    /// The points in pulling order (base first, then lexicographic).
    pub points: Vec<Vec<i64>>,
    /// Heights certifying coherence (the base at height 0).
    pub heights: Vec<Rat>,
    /// The triangulation, with point indices into `points`.
    pub subdivision: RegularSubdivision,
}

impl PullingTriangulation {
    /// Maximal simplices as point-index lists.
    pub fn maximal_cells(&self) -> Vec<Vec<usize>> {
        self.subdivision.maximal_cells().map(|c| c.points.clone()).collect()
    }
}

/// Star triangulation at the base by explicit heights. The `j`-th point in
/// pulling order (`j ≥ 1`) gets `t^{2N} + t^N·|p_j − b|² − t^{N−j}`: the
/// first term pulls the base, the strictly convex middle term makes every
/// point a vertex, and the last term pulls the remaining points in order to
/// break ties. `t` is doubled until the lower hull is such a triangulation.
pub fn pulling_triangulation(points: &[Vec<i64>], base: usize) -> Result<PullingTriangulation, ConstructionError> {
    coherent_triangulation(points, base, true)
}

/// Coherent triangulation using every point, with the same heights as
/// [`pulling_triangulation`] but without the term that pulls the base, so
/// the result need not be a star.
pub fn full_triangulation(points: &[Vec<i64>], base: usize) -> Result<PullingTriangulation, ConstructionError> {
    coherent_triangulation(points, base, false)
}

fn coherent_triangulation(points: &[Vec<i64>], base: usize, star: bool) -> Result<PullingTriangulation, ConstructionError> {
    let Some(b) = points.get(base) else { return Err(ConstructionError::DegeneratePointSet) };
    let mut rest: Vec<Vec<i64>> = points.iter().enumerate().filter(|(i, _)| *i != base).map(|(_, p)| p.clone()).collect();
    rest.sort();
    let mut ordered = vec![b.clone()];
    ordered.extend(rest);
    let rank = b.len();
    let shifted: Vec<Vec<i64>> = ordered.iter().map(|p| p.iter().zip(b).map(|(x, y)| x - y).collect()).collect();
    let n = ordered.len();
    let mut t = Int::from(2);
    for _ in 0..24 {
        let lift = if star { num_traits::pow(t.clone(), 2 * n) } else { num_traits::pow(t.clone(), n) };
        let scale = num_traits::pow(t.clone(), n);
        let heights: Vec<Rat> = (0..n)
            .map(|j| {
                if j == 0 {
                    return rat(0);
                }
                let norm: i64 = shifted[j].iter().map(|x| x * x).sum();
                Rat::from_integer(&lift + &scale * Int::from(norm) - num_traits::pow(t.clone(), n - j))
            })
            .collect();
        let hp = HeightedPoints::new(rank, shifted.clone(), heights.clone())?;
        let sd = regular_subdivision(&hp);
        let uses_all = (0..n).all(|i| sd.cells.iter().any(|c| c.dim == 0 && c.points == [i]));
        if sd.is_triangulation() && (!star || sd.is_star_at(0)) && uses_all {
            return Ok(PullingTriangulation { points: ordered, heights, subdivision: sd });
        }
        t *= 2;
    }
    Err(ConstructionError::DegeneratePointSet)
}

/// Which members of a Cayley pair are taken over the open part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CayleyVariant {
    /// `(Σ_A, Σ°_Ǎ)`.
    Compact,
    /// `(Σ°_A, Σ_Ǎ)`.
    OpenSpace,
    /// `(Σ°_A, Σ°_Ǎ)`.
    OpenBoth,
}

/// The Cayley fan of a nef partition in `M × ℤ^k`: rays
/// `(ρ, −φ_1(ρ), …, −φ_k(ρ))` over the nonzero lattice points of `Δ` and
/// `(0, e_j)`, with cones lifted from the pulling triangulation at 0. With
/// `open`, cones meeting the last part are dropped.
pub fn cayley_fan(np: &NefPartition, open: bool) -> Result<StackyFan, ConstructionError> {
    let d = np.polytope.rank;
    let k = np.k();
    let lattice = np.polytope.lattice_points();
    let origin = lattice.iter().position(|p| p.iter().all(|&x| x == 0)).ok_or(ConstructionError::OriginNotInterior)?;
    let tri = pulling_triangulation(&lattice, origin)?;
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut last_part: Vec<bool> = Vec::new();
    for p in &tri.points[1..] {
        let piece = np.piece(p).ok_or(ConstructionError::DualInvalid("a boundary point lies in no single piece"))?;
        let mut r = p.clone();
        for j in 0..k {
            r.push(-np.phi(j, p).to_i64().expect("support values are small"));
        }
        rays.push(r);
        last_part.push(piece == k);
    }
    let base_rays = rays.len();
    for j in 0..k {
        let mut r = vec![0; d + k];
        r[d + j] = 1;
        rays.push(r);
    }
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for cell in tri.maximal_cells() {
        let mut c: Vec<usize> = cell.iter().filter(|&&i| i != 0).map(|&i| i - 1).collect();
        if open {
            c.retain(|&i| !last_part[i]);
        }
        c.extend(base_rays..base_rays + k);
        cones.push(c);
    }
    cones.sort();
    cones.dedup();
    let maximal: Vec<Vec<usize>> = cones
        .iter()
        .filter(|c| !cones.iter().any(|o| o != *c && c.iter().all(|x| o.contains(x))))
        .cloned()
        .collect();
    let mut used = vec![false; rays.len()];
    for &i in maximal.iter().flatten() {
        used[i] = true;
    }
    // Drop rays that no longer lie in any cone.
    let mut remap = vec![usize::MAX; rays.len()];
    let mut kept = Vec::new();
    for (i, r) in rays.into_iter().enumerate() {
        if used[i] {
            remap[i] = kept.len();
            kept.push(r);
        }
    }
    let cones = maximal.into_iter().map(|c| c.into_iter().map(|i| remap[i]).collect()).collect();
    let n = kept.len();
    Ok(StackyFan::new(d + k, kept, vec![1; n], cones)?)
}

/// The Cayley pair of a nef partition and its dual.
pub fn cayley_pair(np: &NefPartition, variant: CayleyVariant) -> Result<ClarkePair, ConstructionError> {
    let dual = dual_nef_partition(np)?;
    let (open_space, open_mirror) = match variant {
        CayleyVariant::Compact => (false, true),
        CayleyVariant::OpenSpace => (true, false),
        CayleyVariant::OpenBoth => (true, true),
    };
    Ok(ClarkePair::new_strict(cayley_fan(np, open_space)?, cayley_fan(&dual, open_mirror)?)?)
}

/// The stacky pair of a line bundle on a smooth complete toric variety:
/// `Σ_L` with rays `(ρ, φ(ρ))` and `(0, 1)` of weight `min φ(ρ)`, and the
/// cone over `P_L × 1` with `P_L = {m : ⟨m, ρ⟩ ≥ −φ(ρ)}` triangulated by
/// pulling at the origin.
pub fn stacky_hypersurface_pair(sigma: &StackyFan, phi: &[i64]) -> Result<ClarkePair, ConstructionError> {
    let d = sigma.rank();
    if phi.len() != sigma.rays().len() {
        return Err(ConstructionError::BadHypersurfaceData("one value per ray is required"));
    }
    if sigma.weights().iter().any(|&w| w != 1)
        || sigma.max_cones().iter().any(|c| crate::boxes::lattice_index(sigma, c) != Int::one())
    {
        return Err(ConstructionError::BadHypersurfaceData("the fan is not unimodular"));
    }
    if phi.iter().any(|&v| v < 1) {
        return Err(ConstructionError::BadHypersurfaceData("values must be at least 1"));
    }
    let support = SupportFunction { values: phi.iter().map(|&v| Int::from(v)).collect() };
    if !sigma.is_convex(&support, false) {
        return Err(ConstructionError::BadHypersurfaceData("the function is not convex"));
    }
    let beta = *phi.iter().min().expect("values are nonempty");
    let mut rays: Vec<Vec<i64>> = sigma
        .rays()
        .iter()
        .zip(phi)
        .map(|(r, &v)| {
            let mut x = r.clone();
            x.push(v);
            x
        })
        .collect();
    let mut weights = vec![1; rays.len()];
    let mut apex = vec![0; d];
    apex.push(1);
    rays.push(apex);
    weights.push(beta);
    let top = rays.len() - 1;
    let cones = sigma
        .max_cones()
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.push(top);
            c
        })
        .collect();
    let fan_m = StackyFan::new(d + 1, rays, weights, cones)?;

    let rows: Vec<(Vec<Rat>, Rat)> =
        sigma.rays().iter().zip(phi).map(|(r, &v)| (to_rat_vec(r), rat(-v))).collect();
    let verts = vertices_from_halfspaces(&rows, d);
    if verts.is_empty() {
        return Err(ConstructionError::BadHypersurfaceData("P_L is empty"));
    }
    if verts.iter().flatten().any(|x| !x.is_integer()) {
        return Err(ConstructionError::NonIntegralPolytope);
    }
    let hull = Hull::new(verts);
    if hull.dim() != d {
        return Err(ConstructionError::BadHypersurfaceData("P_L is not full-dimensional"));
    }
    let lattice = hull.lattice_points();
    let origin = lattice.iter().position(|p| p.iter().all(|&x| x == 0)).ok_or(ConstructionError::OriginNotInterior)?;
    let tri = match pulling_triangulation(&lattice, origin) {
        Err(ConstructionError::DegeneratePointSet) => full_triangulation(&lattice, origin)?,
        other => other?,
    };
    let rays_n: Vec<Vec<i64>> = tri
        .points
        .iter()
        .map(|p| {
            let mut x = p.clone();
            x.push(1);
            x
        })
        .collect();
    let n = rays_n.len();
    let fan_n = StackyFan::new(d + 1, rays_n, vec![1; n], tri.maximal_cells())?;
    Ok(ClarkePair::new_strict(fan_m, fan_n)?)
}

/// Ray/weight pairs and cones (as sets of ray vectors).
pub type FanSignature = (BTreeSet<(Vec<i64>, i64)>, BTreeSet<BTreeSet<Vec<i64>>>);

/// A labelling-independent description of a stacky fan.
pub fn fan_signature(f: &StackyFan) -> FanSignature {
    let rays = f.rays().iter().cloned().zip(f.weights().iter().copied()).collect();
    let cones = f.max_cones().iter().map(|c| c.iter().map(|&i| f.rays()[i].clone()).collect()).collect();
    (rays, cones)
}

/// Checks that a polytope vertex is a primitive lattice vector, as the rays
/// of Cayley fans require.
pub fn is_primitive(v: &[i64]) -> bool {
    primitive_with_multiplicity(v).1 == 1
}

/// Exact `|det|` of an integer matrix.
pub fn abs_det(m: &IntMatrix) -> Int {
    m.det().map(|d| d.abs()).unwrap_or_else(|_| Int::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::Side;
    use crate::fan::tests::p2;
    use crate::linalg::ratio;
    use crate::table::{Bidegree, HodgeTable};

    fn f3(weights: Vec<i64>) -> StackyFan {
        StackyFan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![3, -1]],
            weights,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
    }

    fn poly(v: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::new(v[0].len(), v.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    fn p2_triangle() -> LatticePolytope {
        poly(&[&[1, 0], &[0, 1], &[-1, -1]])
    }

    fn cubic_partition() -> NefPartition {
        NefPartition::new(p2_triangle(), vec![vec![0, 1, 2], vec![]]).unwrap()
    }

    #[test]
    fn weak_fano_examples() {
        assert!(weak_fano_pair(p2()).is_ok());
        assert!(weak_fano_pair(f3(vec![2, 1, 1, 1])).is_ok());
        match weak_fano_pair(f3(vec![1, 1, 1, 1])) {
            Err(ConstructionError::Pair(PairError::NotConvex { deficit, .. })) => assert!(deficit.is_positive()),
            other => panic!("expected a convexity failure, got {other:?}"),
        }
    }

    #[test]
    fn bhk_trivial_group_is_identity() {
        let b = vec![vec![2, 1, 0], vec![0, 3, 1], vec![0, 0, 4]];
        let f = bhk_factorization(&BhkData::new(b.clone(), vec![]).unwrap()).unwrap();
        assert_eq!(f.c, IntMatrix::identity(3));
        assert_eq!(f.d, IntMatrix::from_i64_rows(&b));
    }

    #[test]
    fn bhk_one_variable() {
        let pair = bhk_pair(&BhkData::new(vec![vec![4]], vec![]).unwrap()).unwrap();
        assert_eq!(pair.fan_m().rays(), &[vec![1]]);
        assert_eq!(pair.fan_n().rays(), &[vec![1]]);
        assert_eq!(pair.fan_n().weights(), &[4]);
    }

    #[test]
    fn bhk_fermat_groups() {
        let b = vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]];
        let j = vec![vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)]];
        let f = bhk_factorization(&BhkData::new(b.clone(), j).unwrap()).unwrap();
        assert_eq!(abs_det(&f.c), Int::from(3));
        assert_eq!(abs_det(&f.c) * abs_det(&f.d), Int::from(27));
        assert_eq!(f.c.transpose().mul(&f.d), IntMatrix::from_i64_rows(&b));
        let full = BhkData::maximal_group(&b).unwrap();
        let f = bhk_factorization(&BhkData::new(b.clone(), full).unwrap()).unwrap();
        assert_eq!(f.c, IntMatrix::from_i64_rows(&[vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]));
        assert_eq!(f.d, IntMatrix::identity(3));
        assert!(matches!(
            BhkData::new(b, vec![vec![ratio(1, 2), rat(0), rat(0)]]),
            Err(ConstructionError::NotInKernel(0))
        ));
    }

    #[test]
    fn polar_examples() {
        let cross = poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let PolarDual::Reflexive(sq) = polar_dual(&cross).unwrap() else { panic!("cross-polytope is reflexive") };
        assert!(sq.same_as(&poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])));
        let PolarDual::Reflexive(big) = polar_dual(&p2_triangle()).unwrap() else { panic!("reflexive") };
        assert!(big.same_as(&poly(&[&[2, -1], &[-1, 2], &[-1, -1]])));
        let PolarDual::Reflexive(back) = polar_dual(&big).unwrap() else { panic!("reflexive") };
        assert!(back.same_as(&p2_triangle()));
        let not = poly(&[&[2, 0], &[0, 2], &[-1, -1]]);
        assert!(matches!(polar_dual(&not).unwrap(), PolarDual::NonReflexive(_)));
        assert_eq!(polar_dual(&poly(&[&[1, 0], &[0, 1], &[1, 1]])), Err(ConstructionError::OriginNotInterior));
    }

    #[test]
    fn nef_partition_duals() {
        let np = cubic_partition();
        let dual = dual_nef_partition(&np).unwrap();
        let PolarDual::Reflexive(big) = polar_dual(&p2_triangle()).unwrap() else { panic!("reflexive") };
        assert!(dual.polytope().same_as(&big));
        assert!(dual.parts()[1].is_empty());
        assert!(dual_nef_partition(&dual).unwrap().same_as(&np));

        let k0 = NefPartition::new(p2_triangle(), vec![vec![0, 1, 2]]).unwrap();
        assert!(dual_nef_partition(&k0).unwrap().polytope().same_as(&big));

        let cross = poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let np = NefPartition::new(cross, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let dual = dual_nef_partition(&np).unwrap();
        assert!(dual_nef_partition(&dual).unwrap().same_as(&np));
    }

    #[test]
    fn rejects_non_nef_part() {
        let hexagon = poly(&[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]]);
        assert_eq!(
            NefPartition::new(hexagon, vec![vec![0], vec![1, 2, 3, 4, 5]]),
            Err(ConstructionError::NotNef { part: 0 })
        );
    }

    #[test]
    fn star_impossible_on_long_segment() {
        let pts = vec![vec![0], vec![1], vec![2], vec![-1]];
        assert_eq!(pulling_triangulation(&pts, 0), Err(ConstructionError::DegeneratePointSet));
        assert_eq!(full_triangulation(&pts, 0).unwrap().maximal_cells().len(), 3);
    }

    #[test]
    fn pulling_examples() {
        let tri = pulling_triangulation(&[vec![0, 0], vec![1, 0], vec![0, 1]], 0).unwrap();
        assert_eq!(tri.maximal_cells(), vec![vec![0, 1, 2]]);
        let sq = pulling_triangulation(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]], 0).unwrap();
        // Order: (0,0), (0,1), (1,0), (1,1); both triangles use the diagonal.
        assert_eq!(sq.maximal_cells(), vec![vec![0, 1, 3], vec![0, 2, 3]]);
        let PolarDual::Reflexive(big) = polar_dual(&p2_triangle()).unwrap() else { panic!("reflexive") };
        let pts = big.lattice_points();
        let base = pts.iter().position(|p| p == &vec![0, 0]).unwrap();
        let t = pulling_triangulation(&pts, base).unwrap();
        assert_eq!(t.maximal_cells().len(), 9);
        for c in t.maximal_cells() {
            let v: Vec<Vec<i64>> = c.iter().map(|&i| t.points[i].clone()).collect();
            assert_eq!(crate::linalg::relative_volume(&v).unwrap(), Int::one());
        }
    }

    #[test]
    fn cubic_curve_fans() {
        let np = cubic_partition();
        let fan = cayley_fan(&np, false).unwrap();
        let rays: BTreeSet<Vec<i64>> = fan.rays().iter().cloned().collect();
        let expected: BTreeSet<Vec<i64>> =
            [vec![1, 0, 1], vec![0, 1, 1], vec![-1, -1, 1], vec![0, 0, 1]].into_iter().collect();
        assert_eq!(rays, expected);
        let pair = cayley_pair(&np, CayleyVariant::Compact).unwrap();
        assert_eq!(pair.fan_n().rays().len(), 10);
    }

    #[test]
    fn hypersurface_matches_cayley_at_beta_one() {
        let hyp = stacky_hypersurface_pair(&p2(), &[1, 1, 1]).unwrap();
        let cay = cayley_pair(&cubic_partition(), CayleyVariant::Compact).unwrap();
        assert_eq!(fan_signature(hyp.fan_m()), fan_signature(cay.fan_m()));
        assert_eq!(fan_signature(hyp.fan_n()), fan_signature(cay.fan_n()));
    }

    fn p1() -> StackyFan {
        StackyFan::unweighted(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap()
    }

    #[test]
    fn two_points_on_the_line() {
        let pair = stacky_hypersurface_pair(&p1(), &[1, 1]).unwrap();
        let rays: BTreeSet<Vec<i64>> = pair.fan_n().rays().iter().cloned().collect();
        assert_eq!(rays, [vec![-1, 1], vec![0, 1], vec![1, 1]].into_iter().collect());
        let mirror = pair.hodge_table(Side::Mirror).integer_graded();
        assert_eq!(mirror, HodgeTable::from_entries([(Bidegree::int(1, 1), 2)]));
    }

    #[test]
    fn extra_sectors_for_larger_beta() {
        let pair = stacky_hypersurface_pair(&p1(), &[2, 2]).unwrap();
        let space = pair.hodge_table(Side::Space);
        let twisted: Vec<(Bidegree, u64)> =
            space.iter().filter(|(b, _)| !b.is_integral()).map(|(b, d)| (b.clone(), d)).collect();
        assert_eq!(twisted, vec![(Bidegree::ratio(1, 2, 1, 2), 1), (Bidegree::ratio(3, 2, 3, 2), 1)]);
    }

    #[test]
    fn rejects_bad_hypersurface_data() {
        assert!(stacky_hypersurface_pair(&p1(), &[0, 1]).is_err());
        assert!(stacky_hypersurface_pair(&p1(), &[1]).is_err());
    }
}
