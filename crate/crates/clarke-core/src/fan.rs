//! Simplicial stacky fans and the predicates defining a Clarke dual pair.
//!
//! A cone is a sorted list of ray indices; the empty list is the zero cone.
//! Faces are ordered by reverse inclusion, `σ ⪯ σ′` when `σ′` is a face of
//! `σ`, so the zero cone is the largest element of the face poset.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{
    int, primitive_integer_vector, rat, relative_volume, solve_integer, solve_rational, Int,
    IntMatrix, LinalgError, Rat, RatMatrix,
};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::polytope::Hull;
use crate::poset::FinitePoset;

/// Structural errors in fan data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    /// A ray has the wrong number of coordinates.
    #[error("ray {ray} has {len} coordinates, expected {rank}")]
    RayLength { ray: usize, len: usize, rank: usize },
    /// The weight list does not match the ray list.
    #[error("{weights} weights given for {rays} rays")]
    WeightCount { weights: usize, rays: usize },
    /// A cone refers to a missing ray.
    #[error("cone {cone} refers to ray {ray}, but there are only {rays} rays")]
    RayIndex { cone: usize, ray: usize, rays: usize },
    /// A cone lists the same ray twice.
    #[error("cone {0} repeats a ray")]
    RepeatedRay(usize),
    /// The fan failed validation.
    #[error("invalid fan: {0:?}")]
    Invalid(Vec<FanViolation>),
    /// Linear algebra failure.
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// One violation found by [`StackyFan::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanViolation {
    /// A ray is zero.
    ZeroRay(usize),
    /// A ray is not primitive.
    NotPrimitive(usize),
    /// Two rays are equal.
    DuplicateRay(usize, usize),
    /// A weight is not positive.
    NonPositiveWeight(usize),
    /// A maximal cone has linearly dependent rays.
    NotSimplicial(usize),
    /// Two maximal cones meet in something other than a common face.
    BadIntersection(usize, usize),
}

/// A simplicial fan with positive integer ray weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StackyFan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    weights: Vec<i64>,
    cones: Vec<Vec<usize>>,
}

/// Integer values of a piecewise-linear function on the rays of a fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFunction {
    /// Value at each (unscaled) ray generator.
    pub values: Vec<Int>,
}

/// Outcome of [`StackyFan::convexity_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityReport {
    /// True when `Δ_Σ` is a convex polytope triangulated by the `Δ_c`.
    pub convex: bool,
    /// Sum of normalized volumes of the simplices `Δ_c` of full dimension.
    pub simplex_volume_sum: Int,
    /// Normalized volume of `Conv({0} ∪ Σ[1])`.
    pub hull_volume: Int,
    /// True when every maximal cone has the dimension of the fan's span.
    pub pure: bool,
}

impl ConvexityReport {
    /// `hull_volume − simplex_volume_sum`, the volume missing from `Δ_Σ`.
    pub fn deficit(&self) -> Int {
        &self.hull_volume - &self.simplex_volume_sum
    }
}

/// A codimension-one face shared by two maximal cones, with the unique
/// linear relation `ρ_out = Σ coef_k ρ_k` over the rays of the first cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    /// First maximal cone (index into the cone list).
    pub first: usize,
    /// Second maximal cone.
    pub second: usize,
    /// The ray of the second cone not in the first.
    pub outside: usize,
    /// Coefficients of `ρ_outside` in terms of the first cone's rays.
    pub relation: Vec<(usize, Rat)>,
}

impl StackyFan {
    /// Builds a fan, checking shapes and indices. Cones are stored sorted.
    pub fn new(
        rank: usize,
        rays: Vec<Vec<i64>>,
        weights: Vec<i64>,
        cones: Vec<Vec<usize>>,
    ) -> Result<Self, FanError> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(FanError::RayLength { ray: i, len: r.len(), rank });
            }
        }
        if weights.len() != rays.len() {
            return Err(FanError::WeightCount { weights: weights.len(), rays: rays.len() });
        }
        let mut sorted = Vec::with_capacity(cones.len());
        for (ci, c) in cones.into_iter().enumerate() {
            let mut c = c;
            c.sort_unstable();
            if let Some(&bad) = c.iter().find(|&&r| r >= rays.len()) {
                return Err(FanError::RayIndex { cone: ci, ray: bad, rays: rays.len() });
            }
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(FanError::RepeatedRay(ci));
            }
            sorted.push(c);
        }
        if sorted.is_empty() {
            sorted.push(Vec::new());
        }
        Ok(Self { rank, rays, weights, cones: sorted })
    }

    /// Builds a fan with all weights equal to one.
    pub fn unweighted(rank: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self, FanError> {
        let w = vec![1; rays.len()];
        Self::new(rank, rays, w, cones)
    }

    /// The trivial fan `{0}`.
    pub fn trivial(rank: usize) -> Self {
        Self { rank, rays: Vec::new(), weights: Vec::new(), cones: vec![Vec::new()] }
    }

    /// Lattice rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Primitive ray generators.
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Ray weights.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Maximal cones as sorted ray-index lists.
    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    /// True for the fan `{0}`.
    pub fn is_trivial(&self) -> bool {
        self.cones.iter().all(Vec::is_empty)
    }

    /// Scaled generator `β_ρ·ρ`.
    pub fn scaled_ray(&self, i: usize) -> Vec<i64> {
        self.rays[i].iter().map(|x| x * self.weights[i]).collect()
    }

    /// Scaled generators of a cone.
    pub fn scaled_generators(&self, cone: &[usize]) -> Vec<Vec<i64>> {
        cone.iter().map(|&i| self.scaled_ray(i)).collect()
    }

    /// All cones (faces of maximal cones), sorted by dimension then
    /// lexicographically; the zero cone comes first.
    pub fn cones(&self) -> Vec<Vec<usize>> {
        let mut set: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for c in &self.cones {
            for mask in 0u64..(1u64 << c.len()) {
                let face: Vec<usize> =
                    c.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &r)| r).collect();
                set.insert((face.len(), face));
            }
        }
        set.into_iter().map(|(_, f)| f).collect()
    }

    /// The face poset: all cones with `σ ⪯ σ′` iff `σ′ ⊆ σ`.
    pub fn face_poset(&self) -> (Vec<Vec<usize>>, FinitePoset) {
        let cones = self.cones();
        let p = FinitePoset::from_relation(cones.len(), |x, y| is_subset(&cones[y], &cones[x]))
            .expect("reverse inclusion is a partial order");
        (cones, p)
    }

    /// Checks primitivity, weights, simpliciality and pairwise face
    /// intersection; returns every violation found.
    pub fn validate(&self) -> Vec<FanViolation> {
        let mut out = Vec::new();
        for (i, r) in self.rays.iter().enumerate() {
            if r.iter().all(|&x| x == 0) {
                out.push(FanViolation::ZeroRay(i));
            } else if r.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
                out.push(FanViolation::NotPrimitive(i));
            }
            if self.weights[i] <= 0 {
                out.push(FanViolation::NonPositiveWeight(i));
            }
            for j in 0..i {
                if self.rays[j] == *r {
                    out.push(FanViolation::DuplicateRay(j, i));
                }
            }
        }
        let mut simplicial = vec![true; self.cones.len()];
        for (ci, c) in self.cones.iter().enumerate() {
            if !c.is_empty() && IntMatrix::from_i64_rows(&self.rays_of(c)).rank_fraction_free(false) < c.len() {
                simplicial[ci] = false;
                out.push(FanViolation::NotSimplicial(ci));
            }
        }
        for a in 0..self.cones.len() {
            for b in a + 1..self.cones.len() {
                if simplicial[a] && simplicial[b] && !self.meet_in_common_face(a, b) {
                    out.push(FanViolation::BadIntersection(a, b));
                }
            }
        }
        out
    }

    /// True when [`validate`](Self::validate) finds nothing.
    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn rays_of(&self, c: &[usize]) -> Vec<Vec<i64>> {
        c.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Whether the intersection of two simplicial maximal cones is the cone
    /// over their shared rays: infeasibility of `Σ a_i ρ_i = Σ b_j ρ_j`,
    /// `a, b ≥ 0`, with unit total weight on the first cone's private rays.
    fn meet_in_common_face(&self, a: usize, b: usize) -> bool {
        let (ca, cb) = (&self.cones[a], &self.cones[b]);
        let private: Vec<usize> = ca.iter().copied().filter(|r| !cb.contains(r)).collect();
        if private.is_empty() {
            return true;
        }
        let nv = ca.len() + cb.len();
        let mut lp = LinearProgram::new(nv);
        for k in 0..self.rank {
            let mut row = Vec::with_capacity(nv);
            row.extend(ca.iter().map(|&i| rat(self.rays[i][k])));
            row.extend(cb.iter().map(|&j| rat(-self.rays[j][k])));
            lp.constrain(row, Relation::Eq, rat(0));
        }
        let mut norm = vec![rat(0); nv];
        for (pos, r) in ca.iter().enumerate() {
            if private.contains(r) {
                norm[pos] = rat(1);
            }
        }
        lp.constrain(norm, Relation::Eq, rat(1));
        !lp.is_feasible()
    }

    /// Gorenstein witness: an integral `m` with `⟨β_ρρ, m⟩ = 1` for every
    /// generator of the cone.
    pub fn gorenstein_witness(&self, cone: &[usize]) -> Option<Vec<Int>> {
        if cone.is_empty() {
            return Some(vec![Int::zero(); self.rank]);
        }
        let g = IntMatrix::from_i64_rows(&self.scaled_generators(cone));
        solve_integer(&g, &vec![Int::one(); cone.len()])
    }

    /// Dimension of the linear span of all rays.
    pub fn span_dim(&self) -> usize {
        if self.rays.is_empty() {
            0
        } else {
            IntMatrix::from_i64_rows(&self.rays).rank_fraction_free(false)
        }
    }

    /// Codimension-one faces shared by two maximal cones of equal dimension
    /// whose union lies in one linear span.
    pub fn walls(&self) -> Vec<Wall> {
        let mut out = Vec::new();
        for a in 0..self.cones.len() {
            for b in 0..self.cones.len() {
                if a == b {
                    continue;
                }
                let (ca, cb) = (&self.cones[a], &self.cones[b]);
                if ca.len() != cb.len() || ca.is_empty() {
                    continue;
                }
                let outside: Vec<usize> = cb.iter().copied().filter(|r| !ca.contains(r)).collect();
                if outside.len() != 1 {
                    continue;
                }
                let m = RatMatrix::from_i64_rows(&self.rays_of(ca)).transpose();
                let target: Vec<Rat> = self.rays[outside[0]].iter().map(|&x| rat(x)).collect();
                if let Some(x) = solve_rational(&m, &target) {
                    let relation = ca.iter().copied().zip(x).collect();
                    out.push(Wall { first: a, second: b, outside: outside[0], relation });
                }
            }
        }
        out
    }

    /// Wall-by-wall convexity of a support function: `φ(ρ_out)` is at least
    /// (or, when `strict`, greater than) the linear extension of `φ` from the
    /// neighbouring cone.
    pub fn is_convex(&self, phi: &SupportFunction, strict: bool) -> bool {
        self.walls().iter().all(|w| {
            let ext: Rat = w
                .relation
                .iter()
                .map(|(k, c)| c * Rat::from_integer(phi.values[*k].clone()))
                .sum();
            let val = Rat::from_integer(phi.values[w.outside].clone());
            if strict {
                val > ext
            } else {
                val >= ext
            }
        })
    }

    /// Finds integer ray values whose piecewise-linear extension is convex
    /// (strictly, if requested) across every wall. Without walls the zero
    /// function is returned.
    pub fn find_support_function(&self, strict: bool) -> Option<SupportFunction> {
        let walls = self.walls();
        let n = self.rays.len();
        if walls.is_empty() {
            return Some(SupportFunction { values: vec![Int::zero(); n] });
        }
        let ones = SupportFunction { values: vec![Int::one(); n] };
        if self.is_convex(&ones, true) {
            return Some(ones);
        }
        // Variables: φ⁺, φ⁻ per ray, then t⁺, t⁻. Maximize t subject to
        // t ≤ φ(ρ_out) − ext(ρ_out) on every wall and t ≤ 1.
        let nv = 2 * n + 2;
        let mut lp = LinearProgram::new(nv);
        let mut obj = vec![rat(0); nv];
        obj[2 * n] = rat(1);
        obj[2 * n + 1] = rat(-1);
        lp.maximize(obj);
        for w in &walls {
            let mut row = vec![rat(0); nv];
            row[2 * w.outside] -= rat(1);
            row[2 * w.outside + 1] += rat(1);
            for (k, c) in &w.relation {
                row[2 * k] += c;
                row[2 * k + 1] -= c;
            }
            row[2 * n] = rat(1);
            row[2 * n + 1] = rat(-1);
            lp.constrain(row, Relation::Le, rat(0));
        }
        let mut cap = vec![rat(0); nv];
        cap[2 * n] = rat(1);
        cap[2 * n + 1] = rat(-1);
        lp.constrain(cap, Relation::Le, rat(1));
        let LpOutcome::Optimal { value, x } = lp.solve() else {
            return None;
        };
        if strict && !value.is_positive() {
            return None;
        }
        let phi: Vec<Rat> = (0..n).map(|i| &x[2 * i] - &x[2 * i + 1]).collect();
        let mut l = Int::one();
        for v in &phi {
            l = l.lcm(v.denom());
        }
        let values = phi.iter().map(|v| v.numer() * (&l / v.denom())).collect();
        let out = SupportFunction { values };
        debug_assert!(self.is_convex(&out, strict));
        Some(out)
    }

    /// Convexity of `Δ_Σ`: every maximal cone has the dimension of the span,
    /// and the simplices `Δ_c = Conv({0} ∪ scaled rays of c)` fill the hull
    /// of `{0} ∪ Σ[1]` (equal normalized volumes). Since the `Δ_c` have
    /// disjoint interiors, volume equality forces their union to be the hull,
    /// and then the support is the cone over it.
    pub fn convexity_check(&self) -> Result<ConvexityReport, FanError> {
        let r = self.span_dim();
        let pure = self.cones.iter().all(|c| c.len() == r);
        let mut points: Vec<Vec<i64>> = vec![vec![0; self.rank]];
        for i in 0..self.rays.len() {
            points.push(self.scaled_ray(i));
        }
        let hull_volume = Hull::of_lattice(&points).normalized_volume()?;
        let mut simplex_volume_sum = Int::zero();
        for c in self.cones.iter().filter(|c| c.len() == r) {
            let mut verts = vec![vec![0; self.rank]];
            verts.extend(self.scaled_generators(c));
            simplex_volume_sum += relative_volume(&verts)?;
        }
        let convex = pure && simplex_volume_sum == hull_volume;
        Ok(ConvexityReport { convex, simplex_volume_sum, hull_volume, pure })
    }

    /// Index of the cone (as a sorted ray list) in [`cones`](Self::cones).
    pub fn cone_index(cones: &[Vec<usize>], cone: &[usize]) -> Option<usize> {
        cones.iter().position(|c| c.as_slice() == cone)
    }

    /// The ray-index list of the smallest cone whose relative interior
    /// contains the integer point `x`, if `x` lies in the support.
    pub fn carrier(&self, x: &[i64]) -> Option<Vec<usize>> {
        if x.iter().all(|&v| v == 0) {
            return Some(Vec::new());
        }
        for c in &self.cones {
            if c.is_empty() {
                continue;
            }
            let m = RatMatrix::from_i64_rows(&self.rays_of(c)).transpose();
            let target: Vec<Rat> = x.iter().map(|&v| rat(v)).collect();
            if let Some(coef) = solve_rational(&m, &target) {
                if coef.iter().all(|a| !a.is_negative()) {
                    return Some(
                        c.iter().zip(&coef).filter(|(_, a)| a.is_positive()).map(|(&r, _)| r).collect(),
                    );
                }
            }
        }
        None
    }
}

/// `⟨m, n⟩` for lattice points of dual lattices.
pub fn pairing(m: &[i64], n: &[i64]) -> i64 {
    m.iter().zip(n).map(|(a, b)| a * b).sum()
}

/// Regularity of a candidate pair: `⟨ρ, ρ̌⟩ ≥ 0` for all rays.
pub fn regularity_check(fan_m: &StackyFan, fan_n: &StackyFan) -> bool {
    fan_m.rays.iter().all(|r| fan_n.rays.iter().all(|s| pairing(r, s) >= 0))
}

/// True when `a ⊆ b` for sorted index lists.
pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Primitive vector and multiplicity of a nonzero integer vector.
pub fn primitive_with_multiplicity(v: &[i64]) -> (Vec<i64>, i64) {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    (v.iter().map(|x| x / g).collect(), g)
}

/// Scales a rational vector to its primitive integer direction.
pub fn primitive_direction(v: &[Rat]) -> Vec<i64> {
    primitive_integer_vector(v)
        .iter()
        .map(|x| i64::try_from(x).expect("primitive vector fits in i64"))
        .collect()
}

/// Integer value `⟨v, m⟩` helper for big integers.
pub fn int_pairing(v: &[i64], m: &[Int]) -> Int {
    v.iter().zip(m).map(|(a, b)| int(*a) * b).sum()
}
