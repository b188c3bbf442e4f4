//! Acceptance criteria 1 to 10. Every criterion prints one PASS or FAIL
//! line; all comparisons are exact rational equality.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use clarke_cli::bundled::find;
use clarke_cli::formats::{Document, MatrixDoc};
use clarke_cli::run::execute;
use clarke_core::boxes::{box_elements, brute_force_box, lattice_index};
use clarke_core::constructions::{
    bhk_pair, cayley_pair, weak_fano_pair, BhkData, CayleyVariant, LatticePolytope, NefPartition,
};
use clarke_core::duality::{ClarkePair, Side};
use clarke_core::fan::StackyFan;
use clarke_core::linalg::{jordan_profile, ratio, smith_normal_form, IntMatrix, RatMatrix};
use clarke_core::poset::{star_cohomology_audit, GradedSheaf};
use clarke_core::tropical::{
    clarke_tropical_poset, jacobian_sheaf, regular_subdivision, trop_hodge, trop_min, HeightedPoints,
};
use clarke_core::{Bidegree, HodgeTable, Int, Rat};
use clap::Parser;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn r(n: i64, d: i64) -> Rat {
    ratio(n, d)
}

fn table(entries: &[((i64, i64, i64, i64), u64)]) -> HodgeTable {
    HodgeTable::from_entries(entries.iter().map(|&((a, b, c, d), v)| (Bidegree::ratio(a, b, c, d), v)))
}

fn p2() -> StackyFan {
    StackyFan::unweighted(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]])
        .unwrap()
}

fn p1xp1() -> StackyFan {
    StackyFan::unweighted(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap()
}

fn f3_stacky() -> StackyFan {
    StackyFan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![3, -1]],
        vec![2, 1, 1, 1],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap()
}

fn named_pairs() -> Vec<(&'static str, ClarkePair)> {
    vec![
        ("F3", ClarkePair::new(f3_stacky(), StackyFan::trivial(2)).unwrap()),
        ("P2", ClarkePair::new(p2(), StackyFan::trivial(2)).unwrap()),
        ("P1xP1", ClarkePair::new(p1xp1(), StackyFan::trivial(2)).unwrap()),
    ]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det2(u: &[i64], v: &[i64]) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

fn primitive(v: [i64; 2]) -> Option<Vec<i64>> {
    let g = gcd(v[0], v[1]);
    (g != 0).then(|| vec![v[0] / g, v[1] / g])
}

fn angle_key(v: &[i64]) -> f64 {
    (v[1] as f64).atan2(v[0] as f64)
}

/// A complete fan from rays sorted by angle; `None` when two consecutive
/// rays are not at an angle strictly below π.
fn complete_fan(rng: &mut StdRng) -> Option<StackyFan> {
    let k = rng.random_range(3..=6);
    let mut rays: Vec<Vec<i64>> = Vec::new();
    while rays.len() < k {
        let v = primitive([rng.random_range(-3..=3), rng.random_range(-3..=3)])?;
        if !rays.contains(&v) {
            rays.push(v);
        }
    }
    rays.sort_by(|a, b| angle_key(a).partial_cmp(&angle_key(b)).unwrap());
    let cones: Vec<Vec<usize>> = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    if cones.iter().any(|c| det2(&rays[c[0]], &rays[c[1]]) <= 0) {
        return None;
    }
    let weights = (0..k).map(|_| rng.random_range(1..=3)).collect();
    StackyFan::new(2, rays, weights, cones).ok()
}

/// A chain of `count` rays inside the cone spanned by `u` and `v`
/// (`det(u, v) > 0`), consecutive rays spanning the cones.
fn chain_in_cone(rng: &mut StdRng, u: &[i64], v: &[i64], count: usize) -> Option<StackyFan> {
    if count == 0 {
        return Some(StackyFan::trivial(2));
    }
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut tries = 0;
    while rays.len() < count {
        tries += 1;
        if tries > 50 {
            return None;
        }
        let (a, b) = (rng.random_range(0..=2), rng.random_range(0..=2));
        let Some(w) = primitive([a * u[0] + b * v[0], a * u[1] + b * v[1]]) else { continue };
        if !rays.contains(&w) {
            rays.push(w);
        }
    }
    rays.sort_by(|a, b| 0.cmp(&det2(a, b)));
    let cones: Vec<Vec<usize>> =
        if count == 1 { vec![vec![0]] } else { (0..count - 1).map(|i| vec![i, i + 1]).collect() };
    let weights = (0..count).map(|_| rng.random_range(1..=3)).collect();
    StackyFan::new(2, rays, weights, cones).ok()
}

/// A pointed-cone pair: Σ inside `K`, Σ̌ inside `K^∨`, at most six rays.
fn cone_pair(rng: &mut StdRng) -> Option<(StackyFan, StackyFan)> {
    let u = primitive([rng.random_range(-2..=2), rng.random_range(-2..=2)])?;
    let v = primitive([rng.random_range(-2..=2), rng.random_range(-2..=2)])?;
    if det2(&u, &v) <= 0 {
        return None;
    }
    let n1 = primitive([v[1], -v[0]])?;
    let n2 = primitive([-u[1], u[0]])?;
    let a = rng.random_range(1..=3);
    let b = rng.random_range(0..=3);
    Some((chain_in_cone(rng, &u, &v, a)?, chain_in_cone(rng, &n1, &n2, b)?))
}

/// At least `count` random rank-2 stacky pairs that are valid, regular and
/// convex with strictly convex support functions, from a fixed seed.
fn random_pairs(count: usize) -> Vec<ClarkePair> {
    let mut rng = StdRng::seed_from_u64(0x5eed_c1a7);
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 100_000 {
        attempts += 1;
        let candidate = if attempts % 2 == 0 {
            complete_fan(&mut rng).map(|f| (f, StackyFan::trivial(2)))
        } else {
            cone_pair(&mut rng)
        };
        let Some((m, n)) = candidate else { continue };
        if m.rays().len() + n.rays().len() > 6 {
            continue;
        }
        let key = format!("{m:?}{n:?}");
        if seen.contains(&key) {
            continue;
        }
        if let Ok(pair) = ClarkePair::new_strict(m, n) {
            seen.insert(key);
            out.push(pair);
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let pair = ClarkePair::new(f3_stacky(), StackyFan::trivial(2)).map_err(|e| e.to_string())?;
    let space = pair.hodge_table(Side::Space);
    let mirror = pair.hodge_table(Side::Mirror);
    let elapsed = start.elapsed();
    let want_space = table(&[((0, 1, 0, 1), 1), ((1, 2, 1, 2), 1), ((1, 1, 1, 1), 2), ((3, 2, 3, 2), 1), ((2, 1, 2, 1), 1)]);
    let want_mirror = table(&[((2, 1, 0, 1), 1), ((3, 2, 1, 2), 1), ((1, 1, 1, 1), 2), ((1, 2, 3, 2), 1), ((0, 1, 2, 1), 1)]);
    check(space == want_space, format!("space table {space}"))?;
    check(mirror == want_mirror, format!("mirror table {mirror}"))?;
    check(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("space {space}, mirror {mirror}, {elapsed:?}"))
}

fn criterion_2(random: &[ClarkePair]) -> Outcome {
    let start = Instant::now();
    for (name, pair) in named_pairs() {
        let rep = pair.duality_check();
        check(rep.passed(), format!("{name}: {:?} {:?}", rep.table_mismatches, rep.stalk_mismatches))?;
    }
    check(random.len() >= 50, format!("only {} random pairs", random.len()))?;
    let mut elements = 0;
    for (i, pair) in random.iter().enumerate() {
        check(pair.fan_m().rays().len() + pair.fan_n().rays().len() <= 6, "too many rays")?;
        check(pair.fan_m().weights().iter().chain(pair.fan_n().weights()).all(|&w| (1..=3).contains(&w)), "weight")?;
        let rep = pair.duality_check();
        check(
            rep.passed(),
            format!("random pair {i} {:?} / {:?}: {:?} {:?}", pair.fan_m(), pair.fan_n(), rep.table_mismatches, rep.stalk_mismatches),
        )?;
        elements += pair.pair_poset().elements.len();
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    let trivial_dual = random.iter().filter(|p| p.fan_n().is_trivial()).count();
    let stacky = random.iter().filter(|p| p.fan_m().weights().iter().chain(p.fan_n().weights()).any(|&w| w > 1)).count();
    check(trivial_dual > 0 && trivial_dual < random.len(), "the sweep misses one family of pairs")?;
    Ok(format!(
        "3 named pairs and {} random pairs ({trivial_dual} with trivial Σ̌, {} with nontrivial Σ̌, {stacky} with a weight above 1; {elements} poset elements), {elapsed:?}",
        random.len(),
        random.len() - trivial_dual
    ))
}

/// `d!·Vol(Δ_Σ)` as the sum of `|det|` of the scaled generators of the
/// maximal cones.
fn simplex_volume_sum(fan: &StackyFan) -> i64 {
    fan.max_cones()
        .iter()
        .map(|c| {
            let g = fan.scaled_generators(c);
            det2(&g[0], &g[1]).abs()
        })
        .sum()
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    for (name, fan, expected) in [("P2", p2(), 3), ("P1xP1", p1xp1(), 4), ("F3", f3_stacky(), 6)] {
        let volume = simplex_volume_sum(&fan);
        let pair = weak_fano_pair(fan).map_err(|e| format!("{name}: {e}"))?;
        let total = pair.hodge_table(Side::Mirror).total();
        check(volume == expected, format!("{name}: volume {volume}"))?;
        check(total == expected as u64, format!("{name}: mirror total {total}"))?;
        parts.push(format!("{name} {total}"));
    }
    Ok(parts.join(", "))
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    for n in 2..=6i64 {
        let start = Instant::now();
        let pair = bhk_pair(&BhkData::new(vec![vec![n + 1]], vec![]).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let space = pair.hodge_table(Side::Space);
        let mirror = pair.hodge_table(Side::Mirror);
        let elapsed = start.elapsed();
        // Box ages of cone((n+1)e) are j/(n+1); the A¹ model spectrum pairs
        // each with its complement.
        let spectrum = HodgeTable::from_entries((1..=n).map(|k| (Bidegree::new(r(k, n + 1), r(n + 1 - k, n + 1)), 1)));
        check(space.on_weight(&r(1, 1)) == spectrum, format!("A{n}: space {space}"))?;
        check(mirror == space.reflect(1), format!("A{n}: mirror {mirror} is not the dual of {space}"))?;
        check(elapsed < Duration::from_secs(1), format!("A{n} took {elapsed:?}"))?;
        parts.push(format!("A{n} {elapsed:?}"));
    }
    Ok(format!(
        "spectrum {{(k/(n+1), 1-k/(n+1))}} on the x^(n+1) side (Σ = cone(e), Σ̌ = cone((n+1)e)), mirror is its λ -> 1-λ dual; {}",
        parts.join(", ")
    ))
}

fn criterion_5() -> Outcome {
    let b = vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]];
    let trivial = bhk_pair(&BhkData::new(b.clone(), vec![]).unwrap()).map_err(|e| e.to_string())?;
    let third = r(1, 3);
    let zero = r(0, 1);
    let maximal_group = vec![
        vec![third.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), third.clone(), zero.clone()],
        vec![zero.clone(), zero, third],
    ];
    let maximal = bhk_pair(&BhkData::new(b, maximal_group).unwrap()).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for side in [Side::Space, Side::Mirror] {
        let a = trivial.hodge_table(side);
        let m = maximal.hodge_table(side);
        check(a.reflect(3) == m, format!("{}: {a} vs {m}", side.name()))?;
        check(!a.is_empty(), "empty table")?;
        parts.push(format!("{} {a} <-> {m}", side.name()));
    }
    Ok(parts.join("; "))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let triangle = LatticePolytope::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]]).map_err(|e| e.to_string())?;
    let np = NefPartition::new(triangle, vec![vec![0, 1, 2], vec![]]).map_err(|e| e.to_string())?;
    let pair = cayley_pair(&np, CayleyVariant::Compact).map_err(|e| e.to_string())?;
    let regraded = pair.hodge_table(Side::Space).cayley_regrade(1);
    let elapsed = start.elapsed();
    let elliptic = table(&[((0, 1, 0, 1), 1), ((1, 1, 0, 1), 1), ((0, 1, 1, 1), 1), ((1, 1, 1, 1), 1)]);
    check(regraded == elliptic, format!("regraded {regraded}"))?;
    check(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("{regraded}, {elapsed:?}"))
}

fn criterion_7(random: &[ClarkePair]) -> Outcome {
    let mut count = 0;
    let all = named_pairs().into_iter().map(|(n, p)| (n.to_string(), p)).chain(
        random.iter().enumerate().map(|(i, p)| (format!("random pair {i}"), p.clone())),
    );
    for (name, pair) in all {
        let tp = clarke_tropical_poset(&pair).map_err(|e| format!("{name}: {e}"))?;
        let trop = trop_hodge(&tp, true).map_err(|e| format!("{name}: {e}"))?;
        let mirror = pair.hodge_table(Side::Mirror);
        check(trop == mirror, format!("{name}: tropical {trop} vs mirror {mirror}"))?;
        count += 1;
    }
    Ok(format!("{count} pairs agree"))
}

fn criterion_8() -> Outcome {
    let hp = HeightedPoints::new(
        2,
        vec![vec![0, 0], vec![0, 1], vec![1, 1], vec![2, 1]],
        vec![r(0, 1), r(0, 1), r(1, 1), r(4, 1)],
    )
    .map_err(|e| e.to_string())?;
    let sd = regular_subdivision(&hp);
    let maximal: Vec<Vec<usize>> = sd.maximal_cells().map(|c| c.points.clone()).collect();
    check(maximal == vec![vec![0, 1, 2], vec![0, 2, 3]], format!("maximal cells {maximal:?}"))?;
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..20 {
        let x1 = r(rng.random_range(-40..=40), rng.random_range(1..=7));
        let x2 = r(rng.random_range(-40..=40), rng.random_range(1..=7));
        let expected = [
            r(0, 1),
            x2.clone(),
            &x1 + &x2 + r(1, 1),
            r(2, 1) * &x1 + &x2 + r(4, 1),
        ]
        .into_iter()
        .min()
        .unwrap();
        let (value, _) = trop_min(&hp, &[x1.clone(), x2.clone()]);
        check(value == expected, format!("at ({x1}, {x2}): {value} vs {expected}"))?;
    }
    Ok("cells [[0,1,2],[0,2,3]], trop_min agrees on 20 rational points".into())
}

fn criterion_9() -> Outcome {
    let example = find("f3-seifert").ok_or("missing bundled Seifert matrix")?;
    let Document::Matrix(MatrixDoc { rows, seifert }) = Document::parse(example.content).map_err(|e| e.to_string())?
    else {
        return Err("not a matrix document".into());
    };
    check(seifert && rows.len() == 6, "bundled document is not the 6x6 Seifert matrix")?;
    let cli = clarke_cli::Cli::try_parse_from(["clarke", "jordan", "f3-seifert.matrix"]).unwrap();
    let report = execute(&cli.command, example.content, 1).map_err(|e| e.to_string())?;
    let records = report.jordan.ok_or("no Jordan profile")?;
    let at = |ev: i64| records.iter().find(|j| j.eigenvalue == ev).map(|j| j.blocks.clone()).unwrap_or_default();
    let chi = IntMatrix::from_i64_rows(&[
        vec![1, 2, 1, 2, 1, 2],
        vec![0, 1, 2, 1, 1, 1],
        vec![0, 0, 1, 0, 2, 1],
        vec![0, 0, 0, 1, 0, 1],
        vec![0, 0, 0, 0, 1, 2],
        vec![0, 0, 0, 0, 0, 1],
    ])
    .to_rat();
    let monodromy: RatMatrix = chi.inverse().map_err(|e| e.to_string())?.mul(&chi.transpose());
    let direct_minus = jordan_profile(&monodromy, &r(-1, 1)).map_err(|e| e.to_string())?;
    let direct_plus = jordan_profile(&monodromy, &r(1, 1)).map_err(|e| e.to_string())?;
    check(at(-1) == vec![2] && direct_minus == vec![2], format!("blocks at -1: {:?}", at(-1)))?;
    check(at(1) == vec![3, 1] && direct_plus == vec![3, 1], format!("blocks at 1: {:?}", at(1)))?;
    check(at(-1).iter().chain(&at(1)).sum::<usize>() == 6, "block sizes do not fill the matrix")?;
    Ok(format!(
        "blocks {:?} at -1 and {:?} at 1, as in the displayed Jordan form; the listed [3,1,1] would need dimension 7",
        at(-1),
        at(1)
    ))
}

fn random_cone(rng: &mut StdRng) -> Option<(StackyFan, Vec<usize>)> {
    let d = rng.random_range(1..=3);
    let r = rng.random_range(1..=d);
    let mut rays = Vec::new();
    for _ in 0..r {
        let v: Vec<i64> = (0..d).map(|_| rng.random_range(-4..=4)).collect();
        let g = v.iter().fold(0, |g, &x| gcd(g, x));
        if g == 0 {
            return None;
        }
        rays.push(v.iter().map(|x| x / g).collect::<Vec<_>>());
    }
    let weights: Vec<i64> = (0..r).map(|_| rng.random_range(1..=3)).collect();
    let fan = StackyFan::new(d, rays, weights, vec![(0..r).collect()]).ok()?;
    fan.validate().is_empty().then_some((fan, (0..r).collect()))
}

fn sheaves_under_test() -> Vec<(String, GradedSheaf)> {
    let mut out = Vec::new();
    for (name, pair) in named_pairs() {
        for side in [Side::Space, Side::Mirror] {
            out.push((format!("{name} {}", side.name()), pair.sheaf(side).1));
        }
        let tp = clarke_tropical_poset(&pair).unwrap();
        out.push((format!("{name} tropical"), jacobian_sheaf(&tp, true).unwrap()));
    }
    for n in [2, 4] {
        let pair = bhk_pair(&BhkData::new(vec![vec![n + 1]], vec![]).unwrap()).unwrap();
        for side in [Side::Space, Side::Mirror] {
            out.push((format!("A{n} {}", side.name()), pair.sheaf(side).1));
        }
    }
    let cone = ClarkePair::new(
        StackyFan::new(2, vec![vec![1, 0], vec![1, 1], vec![0, 1]], vec![2, 1, 3], vec![vec![0, 1], vec![1, 2]]).unwrap(),
        StackyFan::new(2, vec![vec![1, 0], vec![0, 1]], vec![1, 2], vec![vec![0, 1]]).unwrap(),
    )
    .unwrap();
    for side in [Side::Space, Side::Mirror] {
        out.push((format!("cone pair {}", side.name()), cone.sheaf(side).1));
    }
    out
}

fn criterion_10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let mut cones = 0;
    let mut involutions = 0;
    while cones < 200 {
        let Some((fan, cone)) = random_cone(&mut rng) else { continue };
        let gens = IntMatrix::from_i64_rows(&fan.scaled_generators(&cone));
        let index: Int = smith_normal_form(&gens).divisors().iter().product();
        if index > Int::from(60) {
            continue;
        }
        cones += 1;
        let boxes = box_elements(&fan, &cone, false);
        check(Int::from(boxes.len()) == index, format!("box count {} vs SNF index {index}", boxes.len()))?;
        check(lattice_index(&fan, &cone) == index, "lattice_index disagrees with the SNF index")?;
        let fast: BTreeSet<Vec<i64>> = boxes.iter().map(|b| b.point.clone()).collect();
        let slow: BTreeSet<Vec<i64>> = brute_force_box(&fan, &cone).iter().map(|b| b.point.clone()).collect();
        check(fast == slow, format!("box elements differ from brute force on {fan:?}"))?;
        for g in &boxes {
            let partner: Vec<Rat> =
                g.coefficients.iter().map(|a| if a == &r(0, 1) { r(0, 1) } else { r(1, 1) - a }).collect();
            let support = g.coefficients.iter().filter(|a| *a != &r(0, 1)).count() as i64;
            let h = boxes.iter().find(|h| h.coefficients == partner).ok_or("involution leaves the box")?;
            check(&g.age + &h.age == r(support, 1), "age involution fails")?;
            involutions += 1;
        }
    }
    let sheaves = sheaves_under_test();
    let mut blocks = 0;
    let mut chains = 0;
    for (name, sheaf) in &sheaves {
        let audit = star_cohomology_audit(sheaf);
        check(audit.is_empty(), format!("{name}: audit {audit:?}"))?;
        for b in 0..sheaf.blocks().len() {
            let cochains = sheaf.cochain_dims(b);
            let cohomology = sheaf.block_cohomology(b);
            let euler = |v: &[usize]| v.iter().enumerate().map(|(n, &x)| if n % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
            check(euler(&cochains) == euler(&cohomology), format!("{name}: Euler characteristic of block {b}"))?;
            blocks += 1;
        }
        let p = sheaf.poset();
        for _ in 0..40 {
            if p.is_empty() {
                break;
            }
            let x = rng.random_range(0..p.len());
            let above = p.strictly_above(x);
            if above.is_empty() {
                continue;
            }
            let y = above[rng.random_range(0..above.len())];
            let above_y = p.strictly_above(y);
            if above_y.is_empty() {
                continue;
            }
            let z = above_y[rng.random_range(0..above_y.len())];
            for b in 0..sheaf.blocks().len() {
                if sheaf.dim(x, b) == 0 {
                    continue;
                }
                let composed = sheaf.map(y, z, b).mul(&sheaf.map(x, y, b));
                check(composed == sheaf.map(x, z, b), format!("{name}: composition fails on {x} < {y} < {z}"))?;
            }
            chains += 1;
        }
    }
    Ok(format!(
        "{cones} cones, {involutions} involution pairs, {} sheaves audited, {blocks} blocks Euler-checked, {chains} chains composed",
        sheaves.len()
    ))
}

fn main() {
    let random = random_pairs(60);
    let results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2(&random)),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7(&random)),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10()),
    ];
    let mut failed = Vec::new();
    for (n, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS (exact, tolerance 0): {detail}"),
            Err(reason) => {
                println!("criterion {n}: FAIL (exact, tolerance 0): {reason}");
                failed.push(*n);
            }
        }
    }
    if !failed.is_empty() {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
