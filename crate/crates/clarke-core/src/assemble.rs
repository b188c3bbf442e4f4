//! Assembly of the bigraded sheaves shared by the duality and tropical
//! routes.
//!
//! Every element of the poset is a pair of cones `(h, v)`: a host cone `h`
//! from one fan and a volume cone `v` from a fan in the dual lattice. The
//! stalk in wedge degree `a` is
//!
//! `B_h ⊗ B_v ⊗ (∧^{a − dim v} h^⊥) ∧ Vol(L(v)) ⊂ ∧^a`
//!
//! and a box pair `(g_h, g_v)` contributes at bidegree
//! `(a + age g_h − age g_v, age g_h + age g_v)`. Restrictions are box
//! projections tensored with inclusion of wedge subspaces, so each triple
//! `(a, g_h, g_v)` spans its own block.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::boxes::{box_elements, BoxElement};
use crate::fan::StackyFan;
use crate::linalg::{annihilator, rat, to_rat_vec, wedge_power_with, Rat, WedgeCoords, WedgeSubspace};
use crate::poset::{BlockKey, FinitePoset, GradedSheaf};
use crate::table::Bidegree;

/// Input for [`assemble_sheaf`].
pub(crate) struct PairSheafSpec<'a> {
    /// Fan of host cones.
    pub host: &'a StackyFan,
    /// Fan of volume cones (in the dual lattice of `host`).
    pub vol: &'a StackyFan,
    /// Poset elements as `(host cone, volume cone)`.
    pub elements: &'a [(Vec<usize>, Vec<usize>)],
    /// Order on the elements.
    pub poset: &'a FinitePoset,
    /// Keep only the zero box element of each host cone.
    pub host_untwisted: bool,
}

/// Wedge factor `(∧^{a − dim v} h^⊥) ∧ Vol(L(v))`, with `Vol(L(v))` the
/// wedge of the primitive rays of `v` in ascending order.
pub(crate) fn wedge_factor(
    coords: &WedgeCoords,
    host: &StackyFan,
    h: &[usize],
    vol: &StackyFan,
    v: &[usize],
    a: usize,
) -> WedgeSubspace {
    let d = coords.rank();
    if a < v.len() || a - v.len() > d {
        return WedgeSubspace::span(d, a.min(d), &[]);
    }
    let host_rays: Vec<Vec<Rat>> = h.iter().map(|&i| to_rat_vec(&host.rays()[i])).collect();
    let perp = annihilator(&host_rays, d);
    let base = wedge_power_with(coords, &perp, a - v.len());
    let vol_rays: Vec<Vec<Rat>> = v.iter().map(|&i| to_rat_vec(&vol.rays()[i])).collect();
    let volume = if v.is_empty() { alloc::vec![rat(1)] } else { coords.wedge_vectors(&vol_rays) };
    base.wedge_with(coords, &volume, v.len())
}

/// Builds the sheaf described by `spec`.
pub(crate) fn assemble_sheaf(spec: &PairSheafSpec<'_>) -> GradedSheaf {
    let d = spec.host.rank();
    let coords = WedgeCoords::new(d);
    let mut sheaf = GradedSheaf::new(spec.poset.clone());
    let mut host_boxes: BTreeMap<Vec<usize>, Vec<BoxElement>> = BTreeMap::new();
    let mut vol_boxes: BTreeMap<Vec<usize>, Vec<BoxElement>> = BTreeMap::new();
    // stalks[x] = list of (block id, wedge subspace).
    let mut stalks: Vec<BTreeMap<usize, WedgeSubspace>> = Vec::with_capacity(spec.elements.len());
    for (h, v) in spec.elements {
        let mut bh = host_boxes.entry(h.clone()).or_insert_with(|| box_elements(spec.host, h, false)).clone();
        if spec.host_untwisted {
            bh.retain(|g| g.point.iter().all(|&x| x == 0));
        }
        let bv = vol_boxes.entry(v.clone()).or_insert_with(|| box_elements(spec.vol, v, false)).clone();
        let mut stalk = BTreeMap::new();
        for a in v.len()..=d.saturating_sub(h.len()) {
            let w = wedge_factor(&coords, spec.host, h, spec.vol, v, a);
            if w.dim() == 0 {
                continue;
            }
            for gh in &bh {
                for gv in &bv {
                    let lambda = rat(a as i64) + &gh.age - &gv.age;
                    let mu = &gh.age + &gv.age;
                    let mut sector = Vec::with_capacity(1 + 2 * d);
                    sector.push(a as i64);
                    sector.extend(&gh.point);
                    sector.extend(&gv.point);
                    let b = sheaf.block(BlockKey { bidegree: Bidegree::new(lambda, mu), sector });
                    stalk.insert(b, w.clone());
                }
            }
        }
        stalks.push(stalk);
    }
    for (x, stalk) in stalks.iter().enumerate() {
        for (&b, w) in stalk {
            sheaf.set_dim(x, b, w.dim());
        }
    }
    for x in 0..spec.elements.len() {
        for &y in spec.poset.strictly_above(x) {
            for (&b, wx) in &stalks[x] {
                if let Some(wy) = stalks[y].get(&b) {
                    let m = wx
                        .inclusion_into(wy)
                        .expect("wedge factor of an element lies in that of its faces");
                    sheaf.set_map(x, y, b, m).expect("shapes match the stalk dimensions");
                }
            }
        }
    }
    sheaf
}
