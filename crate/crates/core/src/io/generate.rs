//! Seeded instance generator.
//!
//! The PRNG is ChaCha8 seeded with `seed_from_u64(seed)`. Draws happen in a
//! fixed order (per item: value, then one Bernoulli draw per child or
//! element in ascending order), so a seed and profile determine the file.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ItemEntry, MatroidSpec, MaxMinFile, SantaFile};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dist", rename_all = "kebab-case")]
pub enum ValueDist {
    /// Uniform integer in `[min, max]`.
    Uniform { min: u64, max: u64 },
    /// `high` with probability `high_prob`, else `low`.
    TwoPoint { low: u64, high: u64, high_prob: f64 },
}

impl ValueDist {
    fn draw(&self, rng: &mut ChaCha8Rng) -> u64 {
        match *self {
            ValueDist::Uniform { min, max } => rng.gen_range(min..=max.max(min)),
            ValueDist::TwoPoint { low, high, high_prob } => {
                if rng.gen_bool(high_prob.clamp(0.0, 1.0)) {
                    high
                } else {
                    low
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SantaProfile {
    pub children: usize,
    pub gifts: usize,
    pub values: ValueDist,
    /// Probability that a child is eligible for a gift.
    pub density: f64,
}

fn items(rng: &mut ChaCha8Rng, count: usize, owners: usize, values: &ValueDist, density: f64) -> Vec<ItemEntry> {
    let density = density.clamp(0.0, 1.0);
    (0..count)
        .map(|id| {
            let value = values.draw(rng);
            let eligible = (0..owners).filter(|_| rng.gen_bool(density)).collect();
            ItemEntry { id, value, eligible }
        })
        .collect()
}

pub fn generate_santa(seed: u64, profile: &SantaProfile) -> SantaFile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SantaFile {
        children: (0..profile.children).collect(),
        gifts: items(&mut rng, profile.gifts, profile.children, &profile.values, profile.density),
        target: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum MatroidFamily {
    Free,
    /// Uniform matroid of random rank in `1..=n`.
    Uniform,
    /// Two or three blocks with random capacities.
    Partition,
    /// Random bipartite graph to `right` vertices.
    Transversal { right: usize, density: f64 },
    /// Dual of a random transversal matroid.
    DualTransversal { right: usize, density: f64 },
    /// One of the above, drawn uniformly.
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxMinProfile {
    pub elements: usize,
    pub resources: usize,
    pub values: ValueDist,
    pub density: f64,
    pub matroid: MatroidFamily,
    /// Target drawn uniformly from `[min, max]`.
    pub target_min: u64,
    pub target_max: u64,
}

fn draw_matroid(rng: &mut ChaCha8Rng, n: usize, family: MatroidFamily) -> MatroidSpec {
    match family {
        MatroidFamily::Free => MatroidSpec::Uniform { rank: n },
        MatroidFamily::Uniform => MatroidSpec::Uniform {
            rank: if n == 0 { 0 } else { rng.gen_range(1..=n) },
        },
        MatroidFamily::Partition => {
            let blocks = rng.gen_range(2..=3usize);
            let of: Vec<usize> = (0..n).map(|_| rng.gen_range(0..blocks)).collect();
            let caps = (0..blocks)
                .map(|b| {
                    let size = of.iter().filter(|&&x| x == b).count();
                    rng.gen_range(0..=size)
                })
                .collect();
            MatroidSpec::Partition {
                blocks: of,
                capacities: caps,
            }
        }
        MatroidFamily::Transversal { right, density } => transversal(rng, n, right, density),
        MatroidFamily::DualTransversal { right, density } => MatroidSpec::Dual {
            of: Box::new(transversal(rng, n, right, density)),
        },
        MatroidFamily::Mixed => {
            let right = n.div_ceil(2).max(1);
            let family = match rng.gen_range(0..5) {
                0 => MatroidFamily::Free,
                1 => MatroidFamily::Uniform,
                2 => MatroidFamily::Partition,
                3 => MatroidFamily::Transversal { right, density: 0.5 },
                _ => MatroidFamily::DualTransversal { right, density: 0.5 },
            };
            draw_matroid(rng, n, family)
        }
    }
}

fn transversal(rng: &mut ChaCha8Rng, n: usize, right: usize, density: f64) -> MatroidSpec {
    let density = density.clamp(0.0, 1.0);
    MatroidSpec::Transversal {
        right,
        adjacency: (0..n)
            .map(|_| (0..right).filter(|_| rng.gen_bool(density)).collect())
            .collect(),
    }
}

pub fn generate_maxmin(seed: u64, profile: &MaxMinProfile) -> MaxMinFile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let matroid = draw_matroid(&mut rng, profile.elements, profile.matroid);
    let resources = items(&mut rng, profile.resources, profile.elements, &profile.values, profile.density);
    let target = rng.gen_range(profile.target_min..=profile.target_max.max(profile.target_min));
    MaxMinFile {
        ground: (0..profile.elements).collect(),
        resources,
        matroid,
        target: Some(target),
    }
}
