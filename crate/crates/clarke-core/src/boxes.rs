//! Box elements of stacky simplicial cones, their ages and face projections.
//!
//! For a cone with scaled generators `g_1, …, g_r` the box is the set of
//! lattice points `Σ a_i g_i` with every `a_i ∈ [0, 1)`. A box element is
//! identified by its lattice point, which is the same point in every cone of
//! the fan whose box contains it.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::fan::StackyFan;
use crate::linalg::{rat, smith_normal_form, solve_rational, Int, IntMatrix, Rat, RatMatrix};

/// A box element of a stacky cone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxElement {
    /// The lattice point `Σ a_ρ β_ρ ρ`.
    pub point: Vec<i64>,
    /// Cone rays (sorted global indices).
    pub cone: Vec<usize>,
    /// Coefficient `a_ρ ∈ [0, 1)` per ray of the cone.
    pub coefficients: Vec<Rat>,
    /// Age `Σ a_ρ`.
    pub age: Rat,
}

impl BoxElement {
    /// True when every coefficient on a ray outside `face` vanishes.
    pub fn supported_on(&self, face: &[usize]) -> bool {
        self.cone
            .iter()
            .zip(&self.coefficients)
            .all(|(r, a)| a.is_zero() || face.binary_search(r).is_ok())
    }

    /// True when every coefficient is positive.
    pub fn is_interior(&self) -> bool {
        self.coefficients.iter().all(Signed::is_positive)
    }
}

/// Scaled generator matrix of a cone with generators as columns.
fn generator_columns(fan: &StackyFan, cone: &[usize]) -> IntMatrix {
    IntMatrix::from_i64_rows(&fan.scaled_generators(cone)).transpose()
}

fn element(fan: &StackyFan, cone: &[usize], coefficients: Vec<Rat>) -> BoxElement {
    let gens = fan.scaled_generators(cone);
    let mut point = vec![Rat::zero(); fan.rank()];
    for (a, g) in coefficients.iter().zip(&gens) {
        for (p, x) in point.iter_mut().zip(g) {
            *p += a * rat(*x);
        }
    }
    let point = point
        .iter()
        .map(|x| {
            debug_assert!(x.is_integer());
            i64::try_from(x.numer()).expect("box point fits in i64")
        })
        .collect();
    let age = coefficients.iter().sum();
    BoxElement { point, cone: cone.to_vec(), coefficients, age }
}

fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

/// All box elements of a cone of `fan`, optionally only those with every
/// coefficient positive, sorted by lattice point.
///
/// With `U·G·V = S` for the generator matrix `G`, the box points are
/// `G·a` with `a = V·b mod 1` and `b_i = k_i / s_i`, `0 ≤ k_i < s_i`.
pub fn box_elements(fan: &StackyFan, cone: &[usize], interior_only: bool) -> Vec<BoxElement> {
    let r = cone.len();
    if r == 0 {
        // The zero element has no coefficients, so it is vacuously interior.
        return vec![element(fan, cone, Vec::new())];
    }
    let g = generator_columns(fan, cone);
    let snf = smith_normal_form(&g);
    let s: Vec<Int> = (0..r).map(|i| snf.s.get(i, i).clone()).collect();
    let vr = snf.v.to_rat();
    let mut out = Vec::new();
    let mut k = vec![Int::zero(); r];
    loop {
        let b: Vec<Rat> = k.iter().zip(&s).map(|(ki, si)| Rat::new(ki.clone(), si.clone())).collect();
        let a: Vec<Rat> = vr.mul_vec(&b).iter().map(frac).collect();
        let e = element(fan, cone, a);
        if !interior_only || e.is_interior() {
            out.push(e);
        }
        let mut i = 0;
        loop {
            if i == r {
                out.sort();
                return out;
            }
            k[i] += Int::one();
            if k[i] < s[i] {
                break;
            }
            k[i] = Int::zero();
            i += 1;
        }
    }
}

/// Independent box enumeration: scan the bounding box of the half-open
/// parallelepiped and keep points whose exact coefficients lie in `[0,1)`.
pub fn brute_force_box(fan: &StackyFan, cone: &[usize]) -> Vec<BoxElement> {
    let d = fan.rank();
    let gens = fan.scaled_generators(cone);
    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    for g in &gens {
        for k in 0..d {
            if g[k] < 0 {
                lo[k] += g[k];
            } else {
                hi[k] += g[k];
            }
        }
    }
    let m = RatMatrix::from_i64_rows(&gens).transpose();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        let target: Vec<Rat> = cur.iter().map(|&x| rat(x)).collect();
        let sol = if cone.is_empty() {
            cur.iter().all(|&x| x == 0).then(Vec::new)
        } else {
            solve_rational(&m, &target)
        };
        if let Some(a) = sol {
            if a.iter().all(|x| !x.is_negative() && x < &Rat::one()) {
                out.push(element(fan, cone, a));
            }
        }
        let mut k = d;
        loop {
            if k == 0 {
                out.sort();
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

/// Lattice index `[span(c) ∩ ℤ^d : ℤ⟨β_ρρ⟩]`, the product of the Smith
/// divisors of the generator matrix.
pub fn lattice_index(fan: &StackyFan, cone: &[usize]) -> Int {
    if cone.is_empty() {
        return Int::one();
    }
    smith_normal_form(&generator_columns(fan, cone)).divisors().iter().product()
}

/// The age-graded space `B_c` of a cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSpace {
    /// Cone rays.
    pub cone: Vec<usize>,
    /// Basis, sorted by lattice point.
    pub basis: Vec<BoxElement>,
}

impl BoxSpace {
    /// The box space of a cone.
    pub fn of(fan: &StackyFan, cone: &[usize]) -> Self {
        Self { cone: cone.to_vec(), basis: box_elements(fan, cone, false) }
    }

    /// Position of the basis element with the given lattice point.
    pub fn position(&self, point: &[i64]) -> Option<usize> {
        self.basis.iter().position(|e| e.point == point)
    }

    /// Basis elements of filtration level `p`: ages at most `dim c − p`.
    pub fn filtration(&self, p: i64) -> Vec<&BoxElement> {
        let bound = rat(self.cone.len() as i64 - p);
        self.basis.iter().filter(|e| e.age <= bound).collect()
    }
}

/// Matrix of the projection `B_big → B_small` for a face `small` of `big`:
/// a basis element maps to the element with the same lattice point when it
/// is supported on the face, and to zero otherwise.
pub fn box_projection(big: &BoxSpace, small: &BoxSpace) -> RatMatrix {
    let mut m = RatMatrix::zeros(small.basis.len(), big.basis.len());
    for (j, e) in big.basis.iter().enumerate() {
        if e.supported_on(&small.cone) {
            let i = small.position(&e.point).expect("supported box element lies in the face box");
            m.set(i, j, Rat::one());
        }
    }
    m
}
