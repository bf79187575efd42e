//! Seeded workloads shared by the criterion benchmarks.

use maxmin_core::io::{
    generate_maxmin, generate_santa, Instance, InstanceFile, MatroidFamily, MaxMinProfile, SantaProfile, ValueDist,
};
use maxmin_core::{AllocationInstance, AnyMatroid, SantaInstance};

/// A Santa instance with `children` children and `2 · children` gifts,
/// values in `1..=100`, eligibility density `1/2`.
pub fn santa_instance(seed: u64, children: usize) -> SantaInstance {
    let profile = SantaProfile {
        children,
        gifts: 2 * children,
        values: ValueDist::Uniform { min: 1, max: 100 },
        density: 0.5,
    };
    match InstanceFile::Santa(generate_santa(seed, &profile)).build() {
        Ok(Instance::Santa { instance, .. }) => instance,
        other => panic!("generated santa instance failed to build: {other:?}"),
    }
}

/// A matroid max-min instance on a uniform matroid of rank `elements / 2`
/// with `3 · elements` resources and a target every element can reach.
pub fn maxmin_instance(seed: u64, elements: usize) -> (AnyMatroid, AllocationInstance) {
    let profile = MaxMinProfile {
        elements,
        resources: 3 * elements,
        values: ValueDist::Uniform { min: 1, max: 10 },
        density: 0.5,
        matroid: MatroidFamily::Uniform,
        target_min: 12,
        target_max: 12,
    };
    match InstanceFile::MaxMin(generate_maxmin(seed, &profile)).build() {
        Ok(Instance::MaxMin { matroid, instance, .. }) => (matroid, instance),
        other => panic!("generated max-min instance failed to build: {other:?}"),
    }
}
