//! Regular subdivisions, the 0-part of the tropical cell poset and the
//! tropical Jacobian sheaves.
//!
//! Heights follow the min convention: the tropical polynomial is
//! `x̌ ↦ min_{m∈A} (φ(m) + ⟨m, x̌⟩)` and the cells of `SD(w)` are the
//! argmin loci, i.e. the projections of the lower faces of the lifted
//! points `(m, φ(m))`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::assemble::{assemble_sheaf, PairSheafSpec};
use crate::duality::ClarkePair;
use crate::fan::{is_subset, pairing, primitive_with_multiplicity, StackyFan};
use crate::linalg::{rat, solve_rational, subsets, to_rat_vec, Rat, RatMatrix};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::polytope::{AffineFrame, Hull};
use crate::poset::{FinitePoset, GradedSheaf};
use crate::table::HodgeTable;

/// Failures of the tropical constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TropicalError {
    /// No points were given.
    #[error("point set is empty")]
    Empty,
    /// A point has the wrong length.
    #[error("point {point} has length {len}, expected {rank}")]
    PointLength { point: usize, len: usize, rank: usize },
    /// Heights and points differ in number.
    #[error("{heights} heights for {points} points")]
    HeightCount { heights: usize, points: usize },
    /// A point occurs twice.
    #[error("point {0} is repeated")]
    DuplicatePoint(usize),
    /// The first point is not the origin.
    #[error("the first point must be the origin")]
    OriginNotFirst,
    /// The origin has nonzero height.
    #[error("the origin must have height 0")]
    OriginHeight,
    /// Fan and points live in lattices of different rank.
    #[error("fan rank {fan} differs from point rank {points}")]
    RankMismatch { fan: usize, points: usize },
    /// A maximal cell does not contain the origin.
    #[error("subdivision is not a star at the origin: maximal cell {0:?} misses it")]
    NotStar(Vec<usize>),
    /// A cell containing the origin is not a simplex with the origin as a
    /// vertex.
    #[error("cell {0:?} is not a simplex with the origin as a vertex")]
    NotSimplicial(Vec<usize>),
    /// The support function of a Clarke pair does not induce `Δ_Σ`.
    #[error("the subdivision induced by the support function differs from Δ_Σ")]
    SubdivisionMismatch,
    /// No strictly convex support function exists.
    #[error("no strictly convex support function exists on Σ")]
    NoSupportFunction,
}

/// A finite point set `A ∋ 0` with rational heights, the origin first and
/// at height zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightedPoints {
    rank: usize,
    points: Vec<Vec<i64>>,
    heights: Vec<Rat>,
}

impl HeightedPoints {
    /// Checks shapes, distinctness and the origin conventions.
    pub fn new(rank: usize, points: Vec<Vec<i64>>, heights: Vec<Rat>) -> Result<Self, TropicalError> {
        if points.is_empty() {
            return Err(TropicalError::Empty);
        }
        if heights.len() != points.len() {
            return Err(TropicalError::HeightCount { heights: heights.len(), points: points.len() });
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != rank {
                return Err(TropicalError::PointLength { point: i, len: p.len(), rank });
            }
            if points[..i].contains(p) {
                return Err(TropicalError::DuplicatePoint(i));
            }
        }
        if points[0].iter().any(|&x| x != 0) {
            return Err(TropicalError::OriginNotFirst);
        }
        if !heights[0].is_zero() {
            return Err(TropicalError::OriginHeight);
        }
        Ok(Self { rank, points, heights })
    }

    /// Lattice rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The points, origin first.
    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    /// The heights.
    pub fn heights(&self) -> &[Rat] {
        &self.heights
    }

    fn value(&self, i: usize, x: &[Rat]) -> Rat {
        let mut v = self.heights[i].clone();
        for (a, b) in self.points[i].iter().zip(x) {
            v += rat(*a) * b;
        }
        v
    }
}

/// `min_{m∈A} (φ(m) + ⟨m, x̌⟩)` and the indices attaining it.
pub fn trop_min(hp: &HeightedPoints, x: &[Rat]) -> (Rat, Vec<usize>) {
    let vals: Vec<Rat> = (0..hp.points.len()).map(|i| hp.value(i, x)).collect();
    let min = vals.iter().min().expect("point set is nonempty").clone();
    let argmin = (0..vals.len()).filter(|&i| vals[i] == min).collect();
    (min, argmin)
}

/// A cell of a regular subdivision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// Indices of all points of `A` on the lower face.
    pub points: Vec<usize>,
    /// Indices of the vertices of the cell.
    pub vertices: Vec<usize>,
    /// Dimension of the cell.
    pub dim: usize,
    /// Points of the smallest face `f_τ` of `Conv(A)` containing the cell.
    pub face: Vec<usize>,
}

/// The regular subdivision `SD(w)`: every cell of every dimension, sorted
/// by dimension and then by point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSubdivision {
    /// Dimension of `Conv(A)`.
    pub dim: usize,
    /// All cells.
    pub cells: Vec<Cell>,
}

impl RegularSubdivision {
    /// Cells of maximal dimension.
    pub fn maximal_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(move |c| c.dim == self.dim)
    }

    /// True when every maximal cell contains the point with index `base`.
    pub fn is_star_at(&self, base: usize) -> bool {
        self.maximal_cells().all(|c| c.points.contains(&base))
    }

    /// True when every cell is a simplex whose points are its vertices.
    pub fn is_triangulation(&self) -> bool {
        self.cells.iter().all(|c| c.vertices.len() == c.dim + 1 && c.points == c.vertices)
    }

    /// Index of the cell with the given sorted point set.
    pub fn position(&self, points: &[usize]) -> Option<usize> {
        self.cells.iter().position(|c| c.points == points)
    }
}

/// Computes `SD(w)` by exhaustive search over affinely independent subsets
/// of size `dim Conv(A) + 1` in the lattice span.
pub fn regular_subdivision(hp: &HeightedPoints) -> RegularSubdivision {
    let rat_points: Vec<Vec<Rat>> = hp.points.iter().map(|p| to_rat_vec(p)).collect();
    let frame = AffineFrame::of(&rat_points);
    let r = frame.dim();
    let y: Vec<Vec<Rat>> =
        rat_points.iter().map(|p| frame.coords(p).expect("point lies in its own span")).collect();
    let n = hp.points.len();
    let mut maximal: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in subsets(n, r + 1) {
        let mut m = RatMatrix::zeros(r + 1, r + 1);
        let mut rhs = Vec::with_capacity(r + 1);
        for (row, &i) in s.iter().enumerate() {
            for k in 0..r {
                m.set(row, k, y[i][k].clone());
            }
            m.set(row, r, rat(-1));
            rhs.push(-hp.heights[i].clone());
        }
        if m.rank() != r + 1 {
            continue;
        }
        let sol = solve_rational(&m, &rhs).expect("square system of full rank");
        let (z, v) = (&sol[..r], &sol[r]);
        let vals: Vec<Rat> = (0..n)
            .map(|j| {
                let mut t = hp.heights[j].clone() - v;
                for (a, b) in y[j].iter().zip(z) {
                    t += a * b;
                }
                t
            })
            .collect();
        if vals.iter().any(Signed::is_negative) {
            continue;
        }
        maximal.insert((0..n).filter(|&j| vals[j].is_zero()).collect());
    }
    let global = Hull::new(rat_points.clone());
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cell in &maximal {
        collect_faces(&rat_points, cell, &mut all);
    }
    let mut cells: Vec<Cell> = all
        .into_iter()
        .map(|pts| {
            let hull = Hull::new(pts.iter().map(|&i| rat_points[i].clone()).collect());
            let vertices = hull.vertices().into_iter().map(|k| pts[k]).collect();
            let face = global.minimal_face(&pts);
            Cell { dim: hull.dim(), vertices, face, points: pts }
        })
        .collect();
    cells.sort_by(|a, b| (a.dim, &a.points).cmp(&(b.dim, &b.points)));
    RegularSubdivision { dim: r, cells }
}

fn collect_faces(points: &[Vec<Rat>], idx: &[usize], out: &mut BTreeSet<Vec<usize>>) {
    if !out.insert(idx.to_vec()) {
        return;
    }
    let hull = Hull::new(idx.iter().map(|&i| points[i].clone()).collect());
    for f in hull.facets() {
        let face: Vec<usize> = f.points.iter().map(|&k| idx[k]).collect();
        collect_faces(points, &face, out);
    }
}

/// An exact certificate `(x̌, value)` that `subset` is a cell: the function
/// `φ(m) + ⟨m, x̌⟩` equals `value` on `subset` and exceeds it elsewhere.
/// Returns `None` when `subset` is not a cell.
pub fn cell_certificate(hp: &HeightedPoints, subset: &[usize]) -> Option<(Vec<Rat>, Rat)> {
    if subset.is_empty() {
        return None;
    }
    let d = hp.rank;
    // Variables: x⁺, x⁻ (2d), v⁺, v⁻, t. Maximize t ≤ 1.
    let nv = 2 * d + 3;
    let mut lp = LinearProgram::new(nv);
    let mut obj = vec![rat(0); nv];
    obj[2 * d + 2] = rat(1);
    lp.maximize(obj);
    for (j, p) in hp.points.iter().enumerate() {
        let mut row = vec![rat(0); nv];
        for k in 0..d {
            row[k] = rat(p[k]);
            row[d + k] = rat(-p[k]);
        }
        row[2 * d] = rat(-1);
        row[2 * d + 1] = rat(1);
        let rhs = -hp.heights[j].clone();
        if subset.contains(&j) {
            lp.constrain(row, Relation::Eq, rhs);
        } else {
            row[2 * d + 2] = rat(-1);
            lp.constrain(row, Relation::Ge, rhs);
        }
    }
    let mut cap = vec![rat(0); nv];
    cap[2 * d + 2] = rat(1);
    lp.constrain(cap, Relation::Le, rat(1));
    let LpOutcome::Optimal { value, x } = lp.solve() else {
        return None;
    };
    if subset.len() < hp.points.len() && !value.is_positive() {
        return None;
    }
    let xv: Vec<Rat> = (0..d).map(|k| &x[k] - &x[d + k]).collect();
    Some((xv, &x[2 * d] - &x[2 * d + 1]))
}

/// The 0-part of the tropical cell poset: pairs `(c, τ)` of a cone `c` of a
/// fan over `N` and a cell `τ ∋ 0` with `c ⊆ nc(f_τ)`, ordered by
/// `(c, τ) ⪯ (c′, τ′)` iff `c′ ⊆ c` and `τ′ ⊆ τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalPoset {
    /// The fan over `N`.
    pub fan: StackyFan,
    /// The point set `A`.
    pub points: Vec<Vec<i64>>,
    /// Cells containing the origin, as sorted point-index lists.
    pub cells: Vec<Vec<usize>>,
    /// Vertices of each cell in `cells`.
    pub cell_vertices: Vec<Vec<usize>>,
    /// Elements `(cone, index into cells)`.
    pub elements: Vec<(Vec<usize>, usize)>,
    /// The order.
    pub poset: FinitePoset,
}

/// Builds the 0-part poset of `T(Σ, w)`.
pub fn trop_poset_0(
    fan: &StackyFan,
    hp: &HeightedPoints,
    sd: &RegularSubdivision,
) -> Result<TropicalPoset, TropicalError> {
    if fan.rank() != hp.rank {
        return Err(TropicalError::RankMismatch { fan: fan.rank(), points: hp.rank });
    }
    if let Some(c) = sd.maximal_cells().find(|c| !c.points.contains(&0)) {
        return Err(TropicalError::NotStar(c.points.clone()));
    }
    let zero_cells: Vec<&Cell> = sd.cells.iter().filter(|c| c.points.contains(&0)).collect();
    let cells: Vec<Vec<usize>> = zero_cells.iter().map(|c| c.points.clone()).collect();
    let cell_vertices: Vec<Vec<usize>> = zero_cells.iter().map(|c| c.vertices.clone()).collect();
    let in_normal_cone = |n: &[i64], cell: &[usize]| {
        hp.points.iter().all(|a| pairing(a, n) >= 0) && cell.iter().all(|&v| pairing(&hp.points[v], n) == 0)
    };
    let mut elements = Vec::new();
    for c in fan.cones() {
        for (t, cell) in cells.iter().enumerate() {
            if c.iter().all(|&i| in_normal_cone(&fan.rays()[i], cell)) {
                elements.push((c.clone(), t));
            }
        }
    }
    let poset = FinitePoset::from_relation(elements.len(), |x, y| {
        is_subset(&elements[y].0, &elements[x].0) && is_subset(&cells[elements[y].1], &cells[elements[x].1])
    })
    .expect("componentwise reverse inclusion is a partial order");
    Ok(TropicalPoset { fan: fan.clone(), points: hp.points.clone(), cells, cell_vertices, elements, poset })
}

/// The tropical Jacobian sheaf `J` (or `J_orb` when `orbifold`) on the
/// 0-part poset. Each cell `τ ∋ 0` is treated as the cone over its nonzero
/// vertices with weights given by their lattice content.
pub fn jacobian_sheaf(tp: &TropicalPoset, orbifold: bool) -> Result<GradedSheaf, TropicalError> {
    let d = tp.fan.rank();
    let mut ray_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rays = Vec::new();
    let mut weights = Vec::new();
    let mut cones = Vec::with_capacity(tp.cells.len());
    for (cell, verts) in tp.cells.iter().zip(&tp.cell_vertices) {
        let hull = Hull::of_lattice(&verts.iter().map(|&v| tp.points[v].clone()).collect::<Vec<_>>());
        if !verts.contains(&0) || hull.dim() + 1 != verts.len() {
            return Err(TropicalError::NotSimplicial(cell.clone()));
        }
        let mut cone = Vec::new();
        for &v in verts.iter().filter(|&&v| v != 0) {
            let idx = *ray_of.entry(v).or_insert_with(|| {
                let (prim, mult) = primitive_with_multiplicity(&tp.points[v]);
                rays.push(prim);
                weights.push(mult);
                rays.len() - 1
            });
            cone.push(idx);
        }
        cone.sort_unstable();
        cones.push(cone);
    }
    let vol = StackyFan::new(d, rays, weights, cones.clone()).expect("cells give well-formed cones");
    let elements: Vec<(Vec<usize>, Vec<usize>)> =
        tp.elements.iter().map(|(c, t)| (c.clone(), cones[*t].clone())).collect();
    Ok(assemble_sheaf(&PairSheafSpec {
        host: &tp.fan,
        vol: &vol,
        elements: &elements,
        poset: &tp.poset,
        host_untwisted: !orbifold,
    }))
}

/// `f^{λ,μ} = Σ_n dim H^n(J^{λ,μ−n})` on the 0-part poset.
pub fn trop_hodge(tp: &TropicalPoset, orbifold: bool) -> Result<HodgeTable, TropicalError> {
    Ok(jacobian_sheaf(tp, orbifold)?.cohomology().hodge_table())
}

/// Heights on `{0} ∪ Σ[1]` (scaled generators of the space-side fan) from a
/// strictly convex support function, so that `SD(w_φ) = Δ_Σ`.
pub fn clarke_heights(pair: &ClarkePair) -> Result<HeightedPoints, TropicalError> {
    let fan = pair.fan_m();
    let phi = fan.find_support_function(true).ok_or(TropicalError::NoSupportFunction)?;
    let mut points = vec![vec![0; fan.rank()]];
    let mut heights = vec![rat(0)];
    for i in 0..fan.rays().len() {
        points.push(fan.scaled_ray(i));
        heights.push(Rat::from_integer(&phi.values[i] * fan.weights()[i]));
    }
    HeightedPoints::new(fan.rank(), points, heights)
}

/// The tropical route for a Clarke pair: `SD(w_φ)` is checked to be `Δ_Σ`
/// and the orbifold Jacobian sheaf on the 0-part poset over `Σ̌` is
/// returned together with its poset.
pub fn clarke_tropical_poset(pair: &ClarkePair) -> Result<TropicalPoset, TropicalError> {
    let hp = clarke_heights(pair)?;
    let sd = regular_subdivision(&hp);
    let fan = pair.fan_m();
    let r = fan.span_dim();
    let expected: BTreeSet<Vec<usize>> = fan
        .max_cones()
        .iter()
        .filter(|c| c.len() == r)
        .map(|c| {
            let mut s: Vec<usize> = core::iter::once(0).chain(c.iter().map(|&i| i + 1)).collect();
            s.sort_unstable();
            s
        })
        .collect();
    let found: BTreeSet<Vec<usize>> = sd.maximal_cells().map(|c| c.points.clone()).collect();
    if expected != found {
        return Err(TropicalError::SubdivisionMismatch);
    }
    trop_poset_0(pair.fan_n(), &hp, &sd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::Side;
    use crate::linalg::ratio;
    use crate::poset::star_cohomology_audit;
    use crate::table::Bidegree;

    fn eg_trop() -> HeightedPoints {
        HeightedPoints::new(
            2,
            vec![vec![0, 0], vec![0, 1], vec![1, 1], vec![2, 1]],
            vec![rat(0), rat(0), rat(1), rat(4)],
        )
        .unwrap()
    }

    fn maximal(sd: &RegularSubdivision) -> Vec<Vec<usize>> {
        sd.maximal_cells().map(|c| c.points.clone()).collect()
    }

    #[test]
    fn running_example_cells() {
        let sd = regular_subdivision(&eg_trop());
        assert_eq!(maximal(&sd), vec![vec![0, 1, 2], vec![0, 2, 3]]);
        assert!(sd.is_triangulation());
        assert!(sd.is_star_at(0));
        assert_eq!(sd.cells.len(), 4 + 5 + 2);
    }

    #[test]
    fn certificates_match_cells_exactly() {
        let hp = eg_trop();
        let sd = regular_subdivision(&hp);
        for k in 1..=4 {
            for s in subsets(4, k) {
                let cert = cell_certificate(&hp, &s);
                assert_eq!(cert.is_some(), sd.position(&s).is_some(), "{s:?}");
                if let Some((x, v)) = cert {
                    let (min, argmin) = trop_min(&hp, &x);
                    assert_eq!(min, v);
                    assert_eq!(argmin, s);
                }
            }
        }
    }

    #[test]
    fn trop_min_examples() {
        let hp = eg_trop();
        let (v, arg) = trop_min(&hp, &[rat(-1), rat(0)]);
        assert_eq!(v, rat(0));
        assert_eq!(arg, vec![0, 1, 2]);
        let single = HeightedPoints::new(2, vec![vec![0, 0]], vec![rat(0)]).unwrap();
        assert_eq!(trop_min(&single, &[ratio(7, 3), rat(-5)]).0, rat(0));
    }

    #[test]
    fn constant_heights_give_one_cell() {
        let hp = HeightedPoints::new(2, eg_trop().points().to_vec(), vec![rat(0); 4]).unwrap();
        let sd = regular_subdivision(&hp);
        assert_eq!(maximal(&sd), vec![vec![0, 1, 2, 3]]);
        assert!(!sd.is_triangulation());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            HeightedPoints::new(1, vec![vec![1], vec![0]], vec![rat(0), rat(0)]),
            Err(TropicalError::OriginNotFirst)
        );
        assert_eq!(
            HeightedPoints::new(1, vec![vec![0], vec![0]], vec![rat(0), rat(0)]),
            Err(TropicalError::DuplicatePoint(1))
        );
    }

    #[test]
    fn dual_cell_dimensions() {
        let hp = eg_trop();
        let sd = regular_subdivision(&hp);
        for c in &sd.cells {
            // The locus of x̌ with argmin exactly this cell has dimension d − dim τ.
            let diffs: Vec<Vec<Rat>> = c.points[1..]
                .iter()
                .map(|&i| {
                    hp.points()[i].iter().zip(&hp.points()[c.points[0]]).map(|(a, b)| rat(a - b)).collect()
                })
                .collect();
            let ann = crate::linalg::annihilator(&diffs, 2);
            assert_eq!(ann.len() + c.dim, 2);
        }
    }

    #[test]
    fn second_example_cell() {
        let fan = StackyFan::unweighted(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap();
        let hp = eg_trop();
        let sd = regular_subdivision(&hp);
        let tp = trop_poset_0(&fan, &hp, &sd).unwrap();
        let edge = tp.cells.iter().position(|c| c == &vec![0, 1]).unwrap();
        assert!(tp.elements.contains(&(vec![0], edge)));
        assert!(!tp.elements.contains(&(vec![1], edge)));
    }

    #[test]
    fn trivial_fan_poset_is_star_faces() {
        let hp = eg_trop();
        let sd = regular_subdivision(&hp);
        let tp = trop_poset_0(&StackyFan::trivial(2), &hp, &sd).unwrap();
        // {0}, three edges at 0, two triangles.
        assert_eq!(tp.elements.len(), 6);
    }

    #[test]
    fn rejects_non_star() {
        let hp = HeightedPoints::new(1, vec![vec![0], vec![1], vec![2]], vec![rat(0), rat(-1), rat(0)]).unwrap();
        let sd = regular_subdivision(&hp);
        assert!(matches!(trop_poset_0(&StackyFan::trivial(1), &hp, &sd), Err(TropicalError::NotStar(_))));
    }

    #[test]
    fn unimodular_cells_have_mu_zero() {
        let hp = eg_trop();
        let sd = regular_subdivision(&hp);
        let tp = trop_poset_0(&StackyFan::trivial(2), &hp, &sd).unwrap();
        let sheaf = jacobian_sheaf(&tp, false).unwrap();
        for x in 0..tp.elements.len() {
            let cell = &tp.cells[tp.elements[x].1];
            let dims = sheaf.stalk_bidegree_dims(x);
            if cell == &vec![0, 1, 2] {
                assert!(dims.keys().all(|b| b.mu.is_zero()));
            }
        }
        let t = tp.cells.iter().position(|c| c == &vec![0, 2, 3]).unwrap();
        let x = tp.elements.iter().position(|e| e.1 == t).unwrap();
        // Triangle (0,0),(1,1),(2,1) has index 1 as well.
        assert!(sheaf.stalk_bidegree_dims(x).keys().all(|b| b.mu.is_zero()));
    }

    #[test]
    fn stacky_ray_cell() {
        let fan = StackyFan::new(1, vec![vec![1]], vec![2], vec![vec![0]]).unwrap();
        let pair = ClarkePair::new(fan, StackyFan::trivial(1)).unwrap();
        let tp = clarke_tropical_poset(&pair).unwrap();
        let sheaf = jacobian_sheaf(&tp, true).unwrap();
        let seg = tp.elements.iter().position(|e| tp.cells[e.1].len() == 2).unwrap();
        assert_eq!(sheaf.stalk_bidegree_dims(seg).get(&Bidegree::new(ratio(1, 2), ratio(1, 2))), Some(&1));
    }

    fn check_cross_route(pair: &ClarkePair) {
        let tp = clarke_tropical_poset(pair).unwrap();
        assert_eq!(tp.elements.len(), pair.pair_poset().elements.len());
        let sheaf = jacobian_sheaf(&tp, true).unwrap();
        assert!(star_cohomology_audit(&sheaf).is_empty());
        assert_eq!(sheaf.cohomology().hodge_table(), pair.hodge_table(Side::Mirror));
    }

    #[test]
    fn cross_route_weak_fano() {
        let p2 = StackyFan::unweighted(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]])
            .unwrap();
        check_cross_route(&ClarkePair::new(p2, StackyFan::trivial(2)).unwrap());
        let f3 = StackyFan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![3, -1]],
            vec![2, 1, 1, 1],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap();
        check_cross_route(&ClarkePair::new(f3, StackyFan::trivial(2)).unwrap());
    }

    #[test]
    fn cross_route_two_sided() {
        let m = StackyFan::new(1, vec![vec![1]], vec![1], vec![vec![0]]).unwrap();
        let n = StackyFan::new(1, vec![vec![1]], vec![3], vec![vec![0]]).unwrap();
        check_cross_route(&ClarkePair::new(m, n).unwrap());
    }
}
