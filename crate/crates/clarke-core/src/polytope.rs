//! Exact convex hulls of finite point sets.
//!
//! Facets are found by exhaustive search over affinely independent subsets in
//! the affine hull of the points, which is exact and adequate for the small
//! point sets handled here. Hulls of lower dimension are handled in their own
//! affine frame.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::linalg::{
    primitive_integer_vector, rank_and_kernel, rat, relative_volume, rref, subsets, to_rat_vec,
    Int, LinalgError, Rat, RatMatrix,
};
use crate::lp::{LinearProgram, Relation};

/// An affine coordinate system on the affine hull of a point set.
#[derive(Debug, Clone)]
pub struct AffineFrame {
    base: Vec<Rat>,
    directions: Vec<Vec<Rat>>,
    // Coordinates are read off these ambient positions after subtracting the
    // base and inverting the pivot block.
    pivots: Vec<usize>,
    pivot_inverse: RatMatrix,
}

impl AffineFrame {
    /// The frame of the affine hull of `points` (which must be nonempty).
    pub fn of(points: &[Vec<Rat>]) -> Self {
        let base = points[0].clone();
        let n = base.len();
        let diffs: Vec<Vec<Rat>> =
            points[1..].iter().map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect()).collect();
        let directions: Vec<Vec<Rat>> = if diffs.is_empty() {
            Vec::new()
        } else {
            let (r, piv) = rref(&RatMatrix::from_rows(diffs));
            (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
        };
        let pivots: Vec<usize> = directions
            .iter()
            .map(|d| d.iter().position(|x| !x.is_zero()).expect("rref rows are nonzero"))
            .collect();
        let r = directions.len();
        let mut block = RatMatrix::zeros(r, r);
        for (i, &p) in pivots.iter().enumerate() {
            for (j, d) in directions.iter().enumerate() {
                block.set(i, j, d[p].clone());
            }
        }
        let pivot_inverse = block.inverse().expect("pivot block of rref rows is invertible");
        debug_assert!(n >= r);
        Self { base, directions, pivots, pivot_inverse }
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    /// Frame coordinates of an ambient point, or `None` if it is off the
    /// affine hull.
    pub fn coords(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let y = self.coords_unchecked(x);
        (self.point(&y).as_slice() == x).then_some(y)
    }

    fn coords_unchecked(&self, x: &[Rat]) -> Vec<Rat> {
        let rhs: Vec<Rat> = self.pivots.iter().map(|&p| &x[p] - &self.base[p]).collect();
        self.pivot_inverse.mul_vec(&rhs)
    }

    /// The ambient point with frame coordinates `y`.
    pub fn point(&self, y: &[Rat]) -> Vec<Rat> {
        let mut p = self.base.clone();
        for (c, d) in y.iter().zip(&self.directions) {
            for (pi, di) in p.iter_mut().zip(d) {
                *pi += c * di;
            }
        }
        p
    }

    /// Pulls back a frame functional `a·y ≥ b` to an ambient functional
    /// valid on the affine hull.
    pub fn ambient_inequality(&self, a: &[Rat], b: &Rat) -> (Vec<Rat>, Rat) {
        // y = P (x_piv - base_piv); a·y = (Pᵀ a)·x_piv - (Pᵀ a)·base_piv.
        let pa = self.pivot_inverse.transpose().mul_vec(a);
        let mut normal = vec![Rat::zero(); self.ambient_dim()];
        let mut shift = Rat::zero();
        for (w, &p) in pa.iter().zip(&self.pivots) {
            normal[p] = w.clone();
            shift += w * &self.base[p];
        }
        (normal, b + shift)
    }
}

/// A facet of a point-set hull: `normal·x ≥ offset` on the hull, with
/// equality exactly at the listed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Inner normal (ambient coordinates, valid on the affine hull).
    pub normal: Vec<Rat>,
    /// Offset of the supporting hyperplane.
    pub offset: Rat,
    /// Indices of the input points lying on the facet.
    pub points: Vec<usize>,
}

impl Facet {
    /// Value of `normal·x - offset` (nonnegative on the hull).
    pub fn slack(&self, x: &[Rat]) -> Rat {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum::<Rat>() - &self.offset
    }
}

/// Exact hull of a finite point set.
#[derive(Debug, Clone)]
pub struct Hull {
    points: Vec<Vec<Rat>>,
    frame: AffineFrame,
    frame_points: Vec<Vec<Rat>>,
    facets: Vec<Facet>,
    frame_facets: Vec<(Vec<Rat>, Rat)>,
}

impl Hull {
    /// Hull of rational points (nonempty).
    pub fn new(points: Vec<Vec<Rat>>) -> Self {
        assert!(!points.is_empty(), "hull of an empty point set");
        let frame = AffineFrame::of(&points);
        let frame_points: Vec<Vec<Rat>> =
            points.iter().map(|p| frame.coords_unchecked(p)).collect();
        let r = frame.dim();
        let mut facets = Vec::new();
        let mut frame_facets = Vec::new();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        if r == 1 {
            // Two endpoints of a segment.
            let (lo, hi) = extreme_indices(&frame_points);
            for (idx, sign) in [(lo, 1i64), (hi, -1i64)] {
                let a = vec![rat(sign)];
                let b = &frame_points[idx][0] * rat(sign);
                push_facet(&frame, &frame_points, a, b, &mut seen, &mut facets, &mut frame_facets);
            }
        } else if r >= 2 {
            for subset in subsets(points.len(), r) {
                let diffs: Vec<Vec<Rat>> = subset[1..]
                    .iter()
                    .map(|&i| {
                        frame_points[i]
                            .iter()
                            .zip(&frame_points[subset[0]])
                            .map(|(a, b)| a - b)
                            .collect()
                    })
                    .collect();
                let (rank, kernel) = rank_and_kernel(&RatMatrix::from_rows(diffs));
                if rank != r - 1 {
                    continue;
                }
                let a = &kernel[0];
                let b: Rat = dot(a, &frame_points[subset[0]]);
                let vals: Vec<Rat> = frame_points.iter().map(|p| dot(a, p) - &b).collect();
                let pos = vals.iter().any(Signed::is_positive);
                let neg = vals.iter().any(Signed::is_negative);
                if pos && neg {
                    continue;
                }
                let sign = if neg { rat(-1) } else { rat(1) };
                let a: Vec<Rat> = a.iter().map(|x| x * &sign).collect();
                let b = b * &sign;
                push_facet(&frame, &frame_points, a, b, &mut seen, &mut facets, &mut frame_facets);
            }
        }
        Self { points, frame, frame_points, facets, frame_facets }
    }

    /// Hull of lattice points.
    pub fn of_lattice(points: &[Vec<i64>]) -> Self {
        Self::new(points.iter().map(|p| to_rat_vec(p)).collect())
    }

    /// Input points.
    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    /// Dimension of the hull.
    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// The affine frame of the hull.
    pub fn frame(&self) -> &AffineFrame {
        &self.frame
    }

    /// Facets with deduplicated point sets.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// True when `x` lies in the hull.
    pub fn contains(&self, x: &[Rat]) -> bool {
        let Some(y) = self.frame.coords(x) else { return false };
        self.frame_facets.iter().all(|(a, b)| !(dot(a, &y) - b).is_negative())
    }

    /// True when `x` lies in the relative interior of the hull.
    pub fn contains_in_relative_interior(&self, x: &[Rat]) -> bool {
        let Some(y) = self.frame.coords(x) else { return false };
        self.frame_facets.iter().all(|(a, b)| (dot(a, &y) - b).is_positive())
    }

    /// Indices of the input points that are vertices (first occurrence of
    /// repeated points only).
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..self.points.len() {
            if self.points[..i].contains(&self.points[i]) {
                continue;
            }
            let others: Vec<usize> =
                (0..self.points.len()).filter(|&j| self.points[j] != self.points[i]).collect();
            if !in_convex_hull(&self.frame_points, &others, &self.frame_points[i]) {
                out.push(i);
            }
        }
        out
    }

    /// The smallest face containing the given input points, as the set of
    /// input points on it.
    pub fn minimal_face(&self, subset: &[usize]) -> Vec<usize> {
        let mut face: Vec<usize> = (0..self.points.len()).collect();
        for f in &self.facets {
            if subset.iter().all(|i| f.points.contains(i)) {
                face.retain(|i| f.points.contains(i));
            }
        }
        face
    }

    /// A triangulation of the hull using only input points as vertices,
    /// by recursive pulling from the smallest-index vertex.
    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.points.len()).collect();
        triangulate_subset(&self.points, &all)
    }

    /// Normalized volume `dim!·vol` measured in the lattice of the hull's
    /// linear span direction. Requires lattice points.
    pub fn normalized_volume(&self) -> Result<Int, LinalgError> {
        let pts = self.lattice_points_of_input()?;
        let mut total = Int::zero();
        for s in self.triangulate() {
            let verts: Vec<Vec<i64>> = s.iter().map(|&i| pts[i].clone()).collect();
            total += relative_volume(&verts)?;
        }
        Ok(total)
    }

    fn lattice_points_of_input(&self) -> Result<Vec<Vec<i64>>, LinalgError> {
        self.points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| {
                        if x.is_integer() {
                            i64::try_from(x.numer()).map_err(|_| LinalgError::Shape("coordinate overflow"))
                        } else {
                            Err(LinalgError::Shape("hull vertex is not a lattice point"))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// All lattice points of the hull, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let n = self.frame.ambient_dim();
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for p in &self.points {
            for k in 0..n {
                let f = i64::try_from(p[k].floor().numer()).expect("coordinate fits in i64");
                let c = i64::try_from(p[k].ceil().numer()).expect("coordinate fits in i64");
                lo[k] = lo[k].min(f);
                hi[k] = hi[k].max(c);
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.contains(&to_rat_vec(&cur)) {
                out.push(cur.clone());
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < hi[k] {
                    cur[k] += 1;
                    cur[k + 1..].copy_from_slice(&lo[k + 1..]);
                    break;
                }
            }
        }
    }
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn extreme_indices(frame_points: &[Vec<Rat>]) -> (usize, usize) {
    let mut lo = 0;
    let mut hi = 0;
    for (i, p) in frame_points.iter().enumerate() {
        if p[0] < frame_points[lo][0] {
            lo = i;
        }
        if p[0] > frame_points[hi][0] {
            hi = i;
        }
    }
    (lo, hi)
}

fn push_facet(
    frame: &AffineFrame,
    frame_points: &[Vec<Rat>],
    a: Vec<Rat>,
    b: Rat,
    seen: &mut BTreeSet<Vec<usize>>,
    facets: &mut Vec<Facet>,
    frame_facets: &mut Vec<(Vec<Rat>, Rat)>,
) {
    let on: Vec<usize> =
        (0..frame_points.len()).filter(|&i| dot(&a, &frame_points[i]) == b).collect();
    if !seen.insert(on.clone()) {
        return;
    }
    // Scale to a primitive integral normal in frame coordinates.
    let prim = primitive_integer_vector(&a);
    let scale = if a.iter().all(Zero::is_zero) {
        rat(1)
    } else {
        let k = a.iter().position(|x| !x.is_zero()).expect("nonzero normal");
        Rat::from_integer(prim[k].clone()) / &a[k]
    };
    let a: Vec<Rat> = a.iter().map(|x| x * &scale).collect();
    let b = b * &scale;
    let (normal, offset) = frame.ambient_inequality(&a, &b);
    facets.push(Facet { normal, offset, points: on });
    frame_facets.push((a, b));
}

/// True when `x` is a convex combination of the indexed points.
pub fn in_convex_hull(points: &[Vec<Rat>], idx: &[usize], x: &[Rat]) -> bool {
    if idx.is_empty() {
        return false;
    }
    let n = x.len();
    let mut lp = LinearProgram::new(idx.len());
    for k in 0..n {
        lp.constrain(idx.iter().map(|&i| points[i][k].clone()).collect(), Relation::Eq, x[k].clone());
    }
    lp.constrain(vec![rat(1); idx.len()], Relation::Eq, rat(1));
    lp.is_feasible()
}

fn triangulate_subset(points: &[Vec<Rat>], idx: &[usize]) -> Vec<Vec<usize>> {
    let sub: Vec<Vec<Rat>> = idx.iter().map(|&i| points[i].clone()).collect();
    let hull = Hull::new(sub);
    let r = hull.dim();
    let verts = hull.vertices();
    if r == 0 {
        return vec![vec![idx[verts[0]]]];
    }
    let apex = verts[0];
    let mut out = Vec::new();
    for f in hull.facets() {
        if f.points.contains(&apex) {
            continue;
        }
        let face_idx: Vec<usize> = f.points.iter().map(|&i| idx[i]).collect();
        for mut s in triangulate_subset(points, &face_idx) {
            s.insert(0, idx[apex]);
            out.push(s);
        }
    }
    out
}

/// Vertices of the bounded polyhedron `{x : a·x ≥ b for every row}`.
///
/// Every vertex is the unique solution of `dim` linearly independent active
/// rows, so all such solutions are enumerated and filtered. Returns an empty
/// list for an empty polyhedron.
pub fn vertices_from_halfspaces(rows: &[(Vec<Rat>, Rat)], dim: usize) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = Vec::new();
    for s in subsets(rows.len(), dim) {
        let mut aug = RatMatrix::zeros(dim, dim + 1);
        for (i, &ri) in s.iter().enumerate() {
            for j in 0..dim {
                aug.set(i, j, rows[ri].0[j].clone());
            }
            aug.set(i, dim, rows[ri].1.clone());
        }
        let (r, piv) = rref(&aug);
        if piv.len() != dim || piv.iter().any(|&p| p >= dim) {
            continue;
        }
        let x: Vec<Rat> = (0..dim).map(|i| r.get(i, dim).clone()).collect();
        if rows.iter().all(|(a, b)| !(dot(a, &x) - b).is_negative()) && !out.contains(&x) {
            out.push(x);
        }
    }
    if dim == 0 {
        return vec![Vec::new()];
    }
    out.sort();
    out
}
