//! Clarke dual pairs, the sheaves Ξ and Ξ̌, their Hodge tables and the
//! duality check.
//!
//! A pair consists of a stacky fan `Σ` in `M` and a stacky fan `Σ̌` in the
//! dual lattice `N`. The poset `(Σ ⊕ Σ̌)₀` has the orthogonal cone pairs as
//! elements, ordered by `(c, č) ⪯ (c′, č′)` iff `c′ ⊆ c` and `č′ ⊆ č`.
//!
//! The space-side sheaf Ξ has stalks
//! `B_c ⊗ B_č ⊗ (∧^{a − dim č} c^⊥) ∧ Vol(L(č)) ⊂ ∧^a N` placed at
//! `(λ, μ) = (a + age g − age ǧ, age g + age ǧ)`; the mirror-side sheaf Ξ̌
//! exchanges the roles of the two fans, with its wedge factor in `∧^a M`.
//! The Hodge tables are `f^{λ,μ} = Σ_n dim H^n(sheaf^{λ, μ−n})`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::assemble::{assemble_sheaf, PairSheafSpec};
use crate::fan::{pairing, regularity_check, FanViolation, StackyFan};
use crate::linalg::Int;
use crate::poset::{FinitePoset, GradedSheaf};
use crate::table::{Bidegree, HodgeTable};

/// Which member of the pair a fan or sheaf belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// Σ in `M`; the sheaf Ξ.
    Space,
    /// Σ̌ in `N`; the sheaf Ξ̌.
    Mirror,
}

impl Side {
    /// Lower-case name.
    pub fn name(self) -> &'static str {
        match self {
            Side::Space => "space",
            Side::Mirror => "mirror",
        }
    }
}

/// Failures when forming or validating a pair.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    /// The two fans have different ranks.
    #[error("fan ranks differ: {0} and {1}")]
    RankMismatch(usize, usize),
    /// A fan failed validation.
    #[error("{} fan is invalid: {violations:?}", side.name())]
    InvalidFan { side: Side, violations: Vec<FanViolation> },
    /// Some ray pairing is negative.
    #[error("regularity fails: ray {ray} of Σ pairs negatively with ray {ray_check} of Σ̌")]
    NotRegular { ray: usize, ray_check: usize },
    /// `Δ` of a fan is not convex.
    #[error("{} fan is not convex (volume deficit {deficit})", side.name())]
    NotConvex { side: Side, deficit: Int },
    /// No strictly convex support function exists.
    #[error("{} fan is not quasiprojective", side.name())]
    NotQuasiprojective { side: Side },
    /// Hull or lattice computation failed.
    #[error("{0}")]
    Geometry(alloc::string::String),
}

/// A regular pair of simplicial stacky fans in dual lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClarkePair {
    fan_m: StackyFan,
    fan_n: StackyFan,
}

/// Predicate results for a pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    /// Validation violations of Σ.
    pub space_violations: Vec<FanViolation>,
    /// Validation violations of Σ̌.
    pub mirror_violations: Vec<FanViolation>,
    /// Regularity.
    pub regular: bool,
    /// Convexity of `Δ_Σ`.
    pub space_convex: bool,
    /// Convexity of `Δ_Σ̌`.
    pub mirror_convex: bool,
    /// Strictly convex support function exists on Σ.
    pub space_quasiprojective: bool,
    /// Strictly convex support function exists on Σ̌.
    pub mirror_quasiprojective: bool,
}

impl PairReport {
    /// Names of the failing predicates; with `strict` the convexity and
    /// quasiprojectivity predicates count as failures.
    pub fn failures(&self, strict: bool) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.space_violations.is_empty() {
            out.push("space fan validity");
        }
        if !self.mirror_violations.is_empty() {
            out.push("mirror fan validity");
        }
        if !self.regular {
            out.push("regularity");
        }
        if strict {
            if !self.space_convex {
                out.push("space convexity");
            }
            if !self.mirror_convex {
                out.push("mirror convexity");
            }
            if !self.space_quasiprojective {
                out.push("space quasiprojectivity");
            }
            if !self.mirror_quasiprojective {
                out.push("mirror quasiprojectivity");
            }
        }
        out
    }
}

impl ClarkePair {
    /// Forms a pair after checking ranks, fan validity and regularity.
    pub fn new(fan_m: StackyFan, fan_n: StackyFan) -> Result<Self, PairError> {
        if fan_m.rank() != fan_n.rank() {
            return Err(PairError::RankMismatch(fan_m.rank(), fan_n.rank()));
        }
        for (side, f) in [(Side::Space, &fan_m), (Side::Mirror, &fan_n)] {
            let v = f.validate();
            if !v.is_empty() {
                return Err(PairError::InvalidFan { side, violations: v });
            }
        }
        for (i, r) in fan_m.rays().iter().enumerate() {
            for (j, s) in fan_n.rays().iter().enumerate() {
                if pairing(r, s) < 0 {
                    return Err(PairError::NotRegular { ray: i, ray_check: j });
                }
            }
        }
        Ok(Self { fan_m, fan_n })
    }

    /// Forms a pair and additionally requires convexity and
    /// quasiprojectivity of both fans.
    pub fn new_strict(fan_m: StackyFan, fan_n: StackyFan) -> Result<Self, PairError> {
        let p = Self::new(fan_m, fan_n)?;
        for side in [Side::Space, Side::Mirror] {
            let f = p.fan(side);
            let r = f.convexity_check().map_err(|e| PairError::Geometry(alloc::format!("{e}")))?;
            if !r.convex {
                return Err(PairError::NotConvex { side, deficit: r.deficit() });
            }
            if f.find_support_function(true).is_none() {
                return Err(PairError::NotQuasiprojective { side });
            }
        }
        Ok(p)
    }

    /// Evaluates every predicate without failing.
    pub fn report(fan_m: &StackyFan, fan_n: &StackyFan) -> PairReport {
        let convex = |f: &StackyFan| f.convexity_check().map(|r| r.convex).unwrap_or(false);
        PairReport {
            space_violations: fan_m.validate(),
            mirror_violations: fan_n.validate(),
            regular: fan_m.rank() == fan_n.rank() && regularity_check(fan_m, fan_n),
            space_convex: convex(fan_m),
            mirror_convex: convex(fan_n),
            space_quasiprojective: fan_m.find_support_function(true).is_some(),
            mirror_quasiprojective: fan_n.find_support_function(true).is_some(),
        }
    }

    /// Lattice rank `d`.
    pub fn rank(&self) -> usize {
        self.fan_m.rank()
    }

    /// Σ (in `M`).
    pub fn fan_m(&self) -> &StackyFan {
        &self.fan_m
    }

    /// Σ̌ (in `N`).
    pub fn fan_n(&self) -> &StackyFan {
        &self.fan_n
    }

    /// The fan of one side.
    pub fn fan(&self, side: Side) -> &StackyFan {
        match side {
            Side::Space => &self.fan_m,
            Side::Mirror => &self.fan_n,
        }
    }

    /// The pair with the two fans exchanged.
    pub fn swapped(&self) -> ClarkePair {
        ClarkePair { fan_m: self.fan_n.clone(), fan_n: self.fan_m.clone() }
    }

    /// The orthogonal pair poset `(Σ ⊕ Σ̌)₀`.
    pub fn pair_poset(&self) -> OrthPairPoset {
        let cm = self.fan_m.cones();
        let cn = self.fan_n.cones();
        let mut elements = Vec::new();
        for c in &cm {
            for cc in &cn {
                let orthogonal = c.iter().all(|&i| {
                    cc.iter().all(|&j| pairing(&self.fan_m.rays()[i], &self.fan_n.rays()[j]) == 0)
                });
                if orthogonal {
                    elements.push((c.clone(), cc.clone()));
                }
            }
        }
        let poset = FinitePoset::from_relation(elements.len(), |x, y| {
            crate::fan::is_subset(&elements[y].0, &elements[x].0)
                && crate::fan::is_subset(&elements[y].1, &elements[x].1)
        })
        .expect("componentwise reverse inclusion is a partial order");
        OrthPairPoset { elements, poset }
    }

    /// The sheaf Ξ (space) or Ξ̌ (mirror) on the pair poset.
    pub fn sheaf(&self, side: Side) -> (OrthPairPoset, GradedSheaf) {
        let pp = self.pair_poset();
        let sheaf = self.sheaf_on(&pp, side);
        (pp, sheaf)
    }

    /// The sheaf of one side on a precomputed pair poset.
    pub fn sheaf_on(&self, pp: &OrthPairPoset, side: Side) -> GradedSheaf {
        match side {
            Side::Space => assemble_sheaf(&PairSheafSpec {
                host: &self.fan_m,
                vol: &self.fan_n,
                elements: &pp.elements,
                poset: &pp.poset,
                host_untwisted: false,
            }),
            Side::Mirror => {
                let swapped: Vec<(Vec<usize>, Vec<usize>)> =
                    pp.elements.iter().map(|(c, cc)| (cc.clone(), c.clone())).collect();
                assemble_sheaf(&PairSheafSpec {
                    host: &self.fan_n,
                    vol: &self.fan_m,
                    elements: &swapped,
                    poset: &pp.poset,
                    host_untwisted: false,
                })
            }
        }
    }

    /// Hodge table of one side.
    pub fn hodge_table(&self, side: Side) -> HodgeTable {
        self.sheaf(side).1.cohomology().hodge_table()
    }

    /// Full duality report: both tables, table duality mismatches and
    /// stalkwise dimension mismatches.
    pub fn duality_check(&self) -> DualityReport {
        let pp = self.pair_poset();
        let xi = self.sheaf_on(&pp, Side::Space);
        let xi_check = self.sheaf_on(&pp, Side::Mirror);
        let space = xi.cohomology().hodge_table();
        let mirror = xi_check.cohomology().hodge_table();
        DualityReport::from_parts(self.rank(), space, mirror, stalk_mismatches(self.rank(), &xi, &xi_check))
    }
}

/// Elements `(x, bidegree, dim Ξ, dim Ξ̌ at the dual bidegree)` where the
/// stalkwise duality `dim Ξ^{λ,μ} = dim Ξ̌^{d−λ,μ}` fails.
pub fn stalk_mismatches(
    d: usize,
    xi: &GradedSheaf,
    xi_check: &GradedSheaf,
) -> Vec<(usize, Bidegree, usize, usize)> {
    let mut out = Vec::new();
    let dd = crate::linalg::rat(d as i64);
    for x in 0..xi.poset().len() {
        let a = xi.stalk_bidegree_dims(x);
        let b: BTreeMap<Bidegree, usize> = xi_check
            .stalk_bidegree_dims(x)
            .into_iter()
            .map(|(k, v)| (Bidegree::new(&dd - &k.lambda, k.mu), v))
            .collect();
        let mut keys: Vec<&Bidegree> = a.keys().chain(b.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let (u, v) = (a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0));
            if u != v {
                out.push((x, k.clone(), u, v));
            }
        }
    }
    out
}

/// The poset `(Σ ⊕ Σ̌)₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthPairPoset {
    /// Elements `(c, č)` as sorted ray-index lists.
    pub elements: Vec<(Vec<usize>, Vec<usize>)>,
    /// Order `(c, č) ⪯ (c′, č′)` iff `c′ ⊆ c` and `č′ ⊆ č`.
    pub poset: FinitePoset,
}

/// Result of [`ClarkePair::duality_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    /// Lattice rank.
    pub rank: usize,
    /// Space-side table.
    pub space: HodgeTable,
    /// Mirror-side table.
    pub mirror: HodgeTable,
    /// Bidegrees `(λ, μ)` with `f_space[λ,μ] ≠ f_mirror[d−λ,μ]`, with both
    /// values.
    pub table_mismatches: Vec<(Bidegree, u64, u64)>,
    /// Stalkwise mismatches `(element, bidegree, dim Ξ, dim Ξ̌)`.
    pub stalk_mismatches: Vec<(usize, Bidegree, usize, usize)>,
}

impl DualityReport {
    /// Assembles a report from both tables and the stalk comparison.
    pub fn from_parts(
        rank: usize,
        space: HodgeTable,
        mirror: HodgeTable,
        stalk_mismatches: Vec<(usize, Bidegree, usize, usize)>,
    ) -> Self {
        let table_mismatches = space.differences(&mirror.reflect(rank));
        Self { rank, space, mirror, table_mismatches, stalk_mismatches }
    }

    /// True when both the table and the stalk duality hold.
    pub fn passed(&self) -> bool {
        self.table_mismatches.is_empty() && self.stalk_mismatches.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;
    use crate::poset::star_cohomology_audit;

    fn p2() -> StackyFan {
        StackyFan::unweighted(2, alloc::vec![alloc::vec![1, 0], alloc::vec![0, 1], alloc::vec![-1, -1]], alloc::vec![alloc::vec![0, 1], alloc::vec![1, 2], alloc::vec![2, 0]])
            .unwrap()
    }

    fn f3_stacky() -> StackyFan {
        StackyFan::new(
            2,
            alloc::vec![alloc::vec![1, 0], alloc::vec![0, 1], alloc::vec![-1, 0], alloc::vec![3, -1]],
            alloc::vec![2, 1, 1, 1],
            alloc::vec![alloc::vec![0, 1], alloc::vec![1, 2], alloc::vec![2, 3], alloc::vec![3, 0]],
        )
        .unwrap()
    }

    fn table(entries: &[((i64, i64, i64, i64), u64)]) -> HodgeTable {
        HodgeTable::from_entries(
            entries.iter().map(|&((a, b, c, d), v)| (Bidegree::ratio(a, b, c, d), v)),
        )
    }

    #[test]
    fn pair_poset_examples() {
        let pair = ClarkePair::new(p2(), StackyFan::trivial(2)).unwrap();
        assert_eq!(pair.pair_poset().elements.len(), 7);
        let e = StackyFan::unweighted(1, alloc::vec![alloc::vec![1]], alloc::vec![alloc::vec![0]]).unwrap();
        let pair = ClarkePair::new(e.clone(), e).unwrap();
        let pp = pair.pair_poset();
        assert_eq!(pp.elements.len(), 3);
        assert!(!pp.elements.contains(&(alloc::vec![0], alloc::vec![0])));
        let pair = ClarkePair::new(f3_stacky(), StackyFan::trivial(2)).unwrap();
        assert_eq!(pair.pair_poset().elements.len(), 9);
    }

    #[test]
    fn rejects_irregular_pair() {
        let e = StackyFan::unweighted(1, alloc::vec![alloc::vec![1]], alloc::vec![alloc::vec![0]]).unwrap();
        let m = StackyFan::unweighted(1, alloc::vec![alloc::vec![-1]], alloc::vec![alloc::vec![0]]).unwrap();
        assert!(matches!(ClarkePair::new(e, m), Err(PairError::NotRegular { .. })));
    }

    #[test]
    fn projective_plane_tables() {
        let pair = ClarkePair::new(p2(), StackyFan::trivial(2)).unwrap();
        let r = pair.duality_check();
        assert_eq!(r.space, table(&[((0, 1, 0, 1), 1), ((1, 1, 1, 1), 1), ((2, 1, 2, 1), 1)]));
        assert!(r.passed());
        assert_eq!(r.mirror.total(), 3);
    }

    #[test]
    fn zero_element_stalk_is_full_exterior_algebra() {
        let pair = ClarkePair::new(p2(), StackyFan::trivial(2)).unwrap();
        let (pp, xi) = pair.sheaf(Side::Space);
        let zero = pp.elements.iter().position(|(c, cc)| c.is_empty() && cc.is_empty()).unwrap();
        let dims = xi.stalk_bidegree_dims(zero);
        for a in 0..=2i64 {
            let expected = [1usize, 2, 1][a as usize];
            assert_eq!(dims.get(&Bidegree::int(a, 0)).copied(), Some(expected));
        }
    }

    #[test]
    fn f3_stacky_tables() {
        let pair = ClarkePair::new(f3_stacky(), StackyFan::trivial(2)).unwrap();
        let r = pair.duality_check();
        let space = table(&[
            ((0, 1, 0, 1), 1),
            ((1, 2, 1, 2), 1),
            ((1, 1, 1, 1), 2),
            ((3, 2, 3, 2), 1),
            ((2, 1, 2, 1), 1),
        ]);
        let mirror = table(&[
            ((2, 1, 0, 1), 1),
            ((3, 2, 1, 2), 1),
            ((1, 1, 1, 1), 2),
            ((1, 2, 3, 2), 1),
            ((0, 1, 2, 1), 1),
        ]);
        assert_eq!(r.space, space);
        assert_eq!(r.mirror, mirror);
        assert!(r.passed());
        // The stacky ray carries a one-dimensional stalk at (1/2, 1/2).
        let (pp, xi) = pair.sheaf(Side::Space);
        let ray = pp.elements.iter().position(|(c, cc)| c == &alloc::vec![0] && cc.is_empty()).unwrap();
        assert_eq!(xi.stalk_bidegree_dims(ray).get(&Bidegree::new(ratio(1, 2), ratio(1, 2))), Some(&1));
        assert!(star_cohomology_audit(&xi).is_empty());
    }
}
