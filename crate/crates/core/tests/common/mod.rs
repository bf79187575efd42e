//! Fixtures and independent checkers shared by the integration tests and the
//! acceptance suite.

#![allow(dead_code)]

use maxmin_core::io::{
    generate_maxmin, generate_santa, Instance, InstanceFile, MatroidFamily, MaxMinProfile, SantaProfile, ValueDist,
};
use maxmin_core::matroid::ExchangeGraph;
use maxmin_core::model::AllocationInstance;
use maxmin_core::solver::{TraceEvent, TraceKind};
use maxmin_core::{
    AnyMatroid, ElementId, ElementSet, Matroid, PartitionMatroid, Rational, SantaInstance, TransversalMatroid,
    UniformMatroid,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn mask_set(mask: u32, n: usize) -> ElementSet {
    (0..n).filter(|i| mask >> i & 1 == 1).map(ElementId::from).collect()
}

pub fn set_mask(set: &ElementSet) -> u32 {
    set.iter().fold(0, |m, e| m | 1 << e.index())
}

/// Uniform matroids of every rank on up to `max_n` elements, seeded random
/// partition and transversal matroids, and the duals of all of them.
pub fn matroid_family(max_n: usize) -> Vec<(String, AnyMatroid)> {
    let mut out: Vec<(String, AnyMatroid)> = Vec::new();
    for n in 0..=max_n {
        for r in 0..=n {
            out.push((format!("U({r},{n})"), UniformMatroid::new(r, n).unwrap().into()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_7472);
    for k in 0..24 {
        let n = rng.gen_range(1..=max_n);
        let blocks = rng.gen_range(1..=3usize);
        let of: Vec<usize> = (0..n).map(|_| rng.gen_range(0..blocks)).collect();
        let caps: Vec<usize> = (0..blocks).map(|_| rng.gen_range(0..=3)).collect();
        out.push((format!("partition#{k}"), PartitionMatroid::new(of, caps).unwrap().into()));
    }
    for k in 0..24 {
        let n = rng.gen_range(1..=max_n);
        let right = rng.gen_range(1..=4usize);
        let density = rng.gen_range(0.2..0.8);
        let adjacency = (0..n)
            .map(|_| (0..right).filter(|_| rng.gen_bool(density)).collect())
            .collect();
        out.push((format!("transversal#{k}"), TransversalMatroid::new(n, right, adjacency).unwrap().into()));
    }
    let duals: Vec<(String, AnyMatroid)> =
        out.iter().map(|(name, m)| (format!("dual({name})"), m.clone().dual())).collect();
    out.extend(duals);
    out
}

/// Independence of every subset, by bitmask.
pub fn independence_table<M: Matroid + ?Sized>(m: &M) -> Vec<bool> {
    let n = m.ground_size();
    (0u32..1 << n).map(|mask| m.independent(&mask_set(mask, n))).collect()
}

/// Counterexamples to: for independent `Y`, `Z` with `|Y| ≤ |Z|`, the exchange
/// graph `H(Y, Z)` has a left-perfect matching.
pub fn exchange_lemma_failures<M: Matroid + ?Sized>(m: &M) -> Vec<String> {
    let n = m.ground_size();
    let ind = independence_table(m);
    let sets: Vec<u32> = (0u32..1 << n).filter(|&s| ind[s as usize]).collect();
    let mut failures = Vec::new();
    for &y in &sets {
        for &z in &sets {
            if y.count_ones() > z.count_ones() {
                continue;
            }
            let graph = ExchangeGraph::build(m, &mask_set(y, n), &mask_set(z, n)).unwrap();
            if !graph.has_left_perfect_matching() {
                failures.push(format!("Y = {y:#b}, Z = {z:#b}"));
            }
        }
    }
    failures
}

/// Counterexamples to the swapping bound: for independent `S`, `C ⊆ S`,
/// `D ⊆ (X \ S) ∪ C` with `|D| ≤ |C|` and `(S \ C) ∪ D` independent, the set
/// `U` of elements of `((X \ S) ∪ C) \ D` that extend `(S \ C) ∪ D` has
/// `x(U) ≥ |C| − |D|` at every vertex `x` of the base polytope. `D = ∅` is the
/// weak form.
pub fn swapping_lemma_failures<M: Matroid + ?Sized>(m: &M) -> Vec<String> {
    let n = m.ground_size();
    let full = (1u32 << n) - 1;
    let ind = independence_table(m);
    let rank = (0..=full).filter(|&s| ind[s as usize]).map(|s| s.count_ones()).max().unwrap_or(0);
    let bases: Vec<u32> = (0..=full).filter(|&s| ind[s as usize] && s.count_ones() == rank).collect();
    let mut failures = Vec::new();
    for s in (0..=full).filter(|&s| ind[s as usize]) {
        // C ranges over the submasks of S
        let mut c = s;
        loop {
            let pool = (full & !s) | c;
            let mut d = pool;
            loop {
                let rest = (s & !c) | d;
                if d.count_ones() <= c.count_ones() && ind[rest as usize] {
                    let candidates = pool & !d;
                    let u = (0..n as u32)
                        .filter(|&i| candidates >> i & 1 == 1 && ind[(rest | 1 << i) as usize])
                        .fold(0u32, |m, i| m | 1 << i);
                    let need = c.count_ones() - d.count_ones();
                    if let Some(b) = bases.iter().find(|&&b| (b & u).count_ones() < need) {
                        failures.push(format!("S = {s:#b}, C = {c:#b}, D = {d:#b}, basis {b:#b}"));
                    }
                }
                if d == 0 {
                    break;
                }
                d = (d - 1) & pool;
            }
            if c == 0 {
                break;
            }
            c = (c - 1) & s;
        }
    }
    failures
}

/// Profile of the random Santa suite: up to 8 children and 14 gifts.
pub fn random_santa(seed: u64) -> SantaInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a17a);
    let profile = SantaProfile {
        children: rng.gen_range(1..=8),
        gifts: rng.gen_range(1..=14),
        values: match seed % 3 {
            0 => ValueDist::Uniform { min: 1, max: 100 },
            1 => ValueDist::Uniform { min: 1, max: 10 },
            _ => ValueDist::TwoPoint {
                low: 3,
                high: 40,
                high_prob: 0.3,
            },
        },
        density: rng.gen_range(0.3..0.9),
    };
    match InstanceFile::Santa(generate_santa(seed, &profile)).build().unwrap() {
        Instance::Santa { instance, .. } => instance,
        Instance::MaxMin { .. } => unreachable!(),
    }
}

/// Random matroid max-min instance with 6 elements and 12 resources; four
/// value/target regimes rotate with the seed.
pub fn random_maxmin(seed: u64) -> (AnyMatroid, AllocationInstance) {
    let (min, max, tmin, tmax, density) = match seed % 4 {
        0 => (1, 6, 8, 30, 0.5),
        1 => (1, 3, 4, 15, 0.5),
        2 => (1, 6, 8, 30, 0.7),
        _ => (5, 9, 11, 40, 0.8),
    };
    let profile = MaxMinProfile {
        elements: 6,
        resources: 12,
        values: ValueDist::Uniform { min, max },
        density,
        matroid: MatroidFamily::Mixed,
        target_min: tmin,
        target_max: tmax,
    };
    match InstanceFile::MaxMin(generate_maxmin(seed, &profile)).build().unwrap() {
        Instance::MaxMin { matroid, instance, .. } => (matroid, instance),
        Instance::Santa { .. } => unreachable!(),
    }
}

/// Layer-growth constant `ε²/4` and `γ = 1/(2(k+1))`, `k = ⌈ln(2/c)/ln(1+c)⌉`,
/// recomputed from `ε`.
pub fn growth_and_gamma(epsilon: Rational) -> (Rational, Rational) {
    let c = epsilon * epsilon / Rational::from_integer(4);
    let cf = *c.numer() as f64 / *c.denom() as f64;
    let k = ((2.0 / cf).ln() / cf.ln_1p()).ceil() as i128;
    (c, Rational::new(1, 2 * (k + 1)))
}

/// `⌈ln n / ln(1 + ε²/4)⌉`, or 0 for `n ≤ 1`.
pub fn layer_bound(epsilon: Rational, n: usize) -> usize {
    if n <= 1 {
        return 0;
    }
    let (c, _) = growth_and_gamma(epsilon);
    let cf = *c.numer() as f64 / *c.denom() as f64;
    ((n as f64).ln() / cf.ln_1p()).ceil() as usize
}

/// Progress properties read back from a trace: signatures strictly decrease
/// within a phase (starting below the empty tree's `(∞)`), every collapse
/// removes at least `max(1, ⌈c·γ·|B_{≤ℓ̃}|⌉)` blocking edges, and no event
/// shows more layers than the bound.
#[derive(Default, Debug)]
pub struct TraceAudit {
    pub iterations: usize,
    pub collapses: usize,
    pub max_layers: usize,
    pub signature_failures: Vec<String>,
    pub shrink_failures: Vec<String>,
    pub layer_failures: Vec<String>,
}

impl TraceAudit {
    pub fn absorb(&mut self, events: &[TraceEvent], epsilon: Rational, ground: usize) {
        let (c, gamma) = growth_and_gamma(epsilon);
        let bound = layer_bound(epsilon, ground);
        let mut previous: Option<Vec<i64>> = None;
        for e in events {
            self.max_layers = self.max_layers.max(e.layers);
            if e.layers > bound {
                self.layer_failures.push(format!("phase {} has {} layers, bound {bound}", e.phase, e.layers));
            }
            match e.kind {
                TraceKind::PhaseStart => previous = None,
                TraceKind::Signature => {
                    self.iterations += 1;
                    let sig = e.signature.clone().expect("signature event carries a vector");
                    let before = previous.take().unwrap_or_else(|| vec![*sig.last().unwrap()]);
                    if sig >= before {
                        self.signature_failures.push(format!("{before:?} -> {sig:?}"));
                    }
                    previous = Some(sig);
                }
                TraceKind::Collapse => {
                    self.collapses += 1;
                    let before = e.blocking_before.unwrap();
                    let after = e.blocking_after.unwrap();
                    let need = (c * gamma * Rational::from_integer(before as i128)).ceil().to_integer().max(1);
                    if (before as i128) - (after as i128) < need {
                        self.shrink_failures.push(format!("{before} -> {after}, need a drop of {need}"));
                    }
                }
                _ => {}
            }
        }
    }

    pub fn clean(&self) -> bool {
        self.signature_failures.is_empty() && self.shrink_failures.is_empty() && self.layer_failures.is_empty()
    }
}

/// Edge value guaranteed by the solver: `(1/3 − ε)·T − max_w p_w / 3`.
pub fn guarantee(inst: &AllocationInstance, epsilon: Rational) -> Rational {
    let t = Rational::from_integer(inst.target() as i128);
    let p = Rational::from_integer(inst.max_value() as i128);
    (Rational::new(1, 3) - epsilon) * t - p / Rational::from_integer(3)
}

/// Every inclusion-minimal subset of `avail` reaching `threshold`, by brute
/// force over all subsets.
pub fn minimal_subsets(values: &[u64], avail: u32, threshold: &Rational) -> Vec<u32> {
    let meets = |mask: u32| {
        let v: u64 = (0..values.len()).filter(|i| mask >> i & 1 == 1).map(|i| values[i]).sum();
        Rational::from_integer(v as i128) >= *threshold
    };
    let mut out = Vec::new();
    let mut sub = avail;
    loop {
        if meets(sub) && (0..values.len()).all(|i| sub >> i & 1 == 0 || !meets(sub & !(1 << i))) {
            out.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & avail;
    }
    out
}

/// Compares `build_minimal_edge` for element 0 (neighbourhood `adjacency`,
/// resources in `forbidden` excluded) with exhaustive search: same existence,
/// a minimal subset when found, and value below `threshold + max p`.
pub fn check_minimal_edge(values: &[u64], adjacency: u32, forbidden: u32, threshold: Rational) -> Result<(), String> {
    use maxmin_core::model::build_minimal_edge;
    let n = values.len();
    let neighbors: Vec<usize> = (0..n).filter(|i| adjacency >> i & 1 == 1).collect();
    // a second element so that non-neighbours exist
    let inst = AllocationInstance::new(values.to_vec(), vec![neighbors, (0..n).collect()], 1).map_err(|e| e.to_string())?;
    // zero values are dropped by the instance; map masks onto its dense ids
    let dense: Vec<usize> = (0..n).filter(|&i| values[i] > 0).collect();
    let mut mask = inst.empty_mask();
    for (d, &orig) in dense.iter().enumerate() {
        if forbidden >> orig & 1 == 1 {
            mask.insert(d);
        }
    }
    let positive = dense.iter().fold(0u32, |m, &i| m | 1 << i);
    let avail = adjacency & !forbidden & positive;
    let expected = minimal_subsets(values, avail, &threshold);
    match build_minimal_edge(&inst, ElementId(0), &threshold, &mask).map_err(|e| e.to_string())? {
        None if expected.is_empty() => Ok(()),
        None => Err(format!("no edge built, exhaustive search found {expected:?}")),
        Some(edge) => {
            let got = edge.resources.iter().map(|w| dense[w.index()]).fold(0u32, |m, i| m | 1 << i);
            if !expected.contains(&got) {
                return Err(format!("{got:#b} is not a minimal subset of {avail:#b}"));
            }
            let value: u64 = (0..n).filter(|i| got >> i & 1 == 1).map(|i| values[i]).sum();
            if edge.value != value {
                return Err(format!("edge states value {}, resources sum to {value}", edge.value));
            }
            let max_p = values.iter().copied().max().unwrap_or(0);
            if Rational::from_integer(value as i128) >= threshold + Rational::from_integer(max_p as i128) {
                return Err(format!("value {value} not below threshold plus {max_p}"));
            }
            Ok(())
        }
    }
}
