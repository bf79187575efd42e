use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::simplex::{LinearProgram, Sense};
use crate::error::{Error, Result};
use crate::matroid::{polytope, ElementId, Matroid};
use crate::model::AllocationInstance;
use crate::rational::Rational;
use crate::santa::{GiftPartition, SantaInstance};

const MAX_COMPACT_VARS: usize = 400;
const MAX_Q_ELEMENTS: usize = 10;

fn big(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The compact relaxation `P(T, δ₁, δ₂)` for an explicit partition.
///
/// One variable per eligible (child, gift) pair among small and large gifts.
/// Constraints: every child collects `T` from small value plus `T` per unit
/// of large gift; every gift is used at most once; a child's share of a small
/// gift is at most the part of it not served by large gifts.
pub fn compact_lp(inst: &SantaInstance, partition: &GiftPartition) -> Result<(LinearProgram, Vec<(usize, usize)>)> {
    let mut pairs = Vec::new();
    for &j in partition.small.iter().chain(&partition.large) {
        for &i in inst.eligible(j) {
            pairs.push((i, j));
        }
    }
    pairs.sort_unstable();
    Error::guard("compact LP variables", pairs.len(), MAX_COMPACT_VARS)?;
    let var = |i: usize, j: usize| pairs.binary_search(&(i, j)).expect("pair");
    let t = partition.target;
    let mut lp = LinearProgram::new(pairs.len());
    let large_of = |i: usize| -> Vec<usize> {
        partition
            .large
            .iter()
            .filter(|&&j| inst.is_eligible(j, i))
            .map(|&j| var(i, j))
            .collect()
    };
    for i in 0..inst.child_count() {
        let mut row: Vec<(usize, BigRational)> = partition
            .small
            .iter()
            .filter(|&&j| inst.is_eligible(j, i))
            .map(|&j| (var(i, j), big(inst.value(j))))
            .collect();
        row.extend(large_of(i).into_iter().map(|v| (v, big(t))));
        lp.add(row, Sense::Ge, big(t));
    }
    for j in 0..inst.gift_count() {
        if !partition.is_large(j) && partition.small.binary_search(&j).is_err() {
            continue;
        }
        let row = inst.eligible(j).iter().map(|&i| (var(i, j), BigRational::one())).collect();
        lp.add(row, Sense::Le, BigRational::one());
    }
    for &j in &partition.small {
        for &i in inst.eligible(j) {
            let mut row = vec![(var(i, j), BigRational::one())];
            row.extend(large_of(i).into_iter().map(|v| (v, BigRational::one())));
            lp.add(row, Sense::Le, BigRational::one());
        }
    }
    Ok((lp, pairs))
}

/// Feasibility of the compact relaxation for an explicit partition.
pub fn lp_feasible_partition(inst: &SantaInstance, partition: &GiftPartition) -> Result<bool> {
    if partition.target == 0 {
        return Ok(true);
    }
    compact_lp(inst, partition)?.0.feasible()
}

/// Feasibility of `P(T, δ₁, δ₂)` with large gifts `p > δ₂T` (values capped
/// at `T`) and small gifts `p ≤ δ₁T`. `T = 0` is always feasible.
pub fn lp_feasible_compact(inst: &SantaInstance, target: u64, delta1: Rational, delta2: Rational) -> Result<bool> {
    if target == 0 {
        return Ok(true);
    }
    let partition = GiftPartition::with_deltas(inst, target, delta1, delta2)?;
    lp_feasible_partition(inst, &partition)
}

/// The relaxation `Q(T)`: variables `x_i` for elements followed by `y_iw`
/// for every edge in element-major order.
///
/// The base polytope is written with the singleton bounds, the rank bound of
/// every dependent flat and `x(X) = rank(X)`; the bound of any other set
/// follows from these.
pub fn q_lp<M: Matroid + ?Sized>(matroid: &M, inst: &AllocationInstance, target: u64) -> Result<LinearProgram> {
    let n = inst.element_count();
    Error::guard("Q(T) elements", n, MAX_Q_ELEMENTS)?;
    if matroid.ground_size() != n {
        return Err(Error::InvalidInput("matroid and instance sizes differ".into()));
    }
    let ranks = polytope::subset_ranks(matroid)?;
    let mut edges = Vec::new();
    for i in 0..n {
        for w in inst.neighbors(ElementId::from(i)) {
            edges.push((i, w.index()));
        }
    }
    let y = |k: usize| n + k;
    let mut lp = LinearProgram::new(n + edges.len());
    let one = BigRational::one;
    let full = (1usize << n) - 1;
    for mask in 1..=full {
        let size = mask.count_ones() as usize;
        let r = ranks[mask];
        let closed = (0..n).all(|e| mask >> e & 1 == 1 || ranks[mask | 1 << e] > r);
        if size == 1 || (closed && r < size && mask != full) {
            let row = (0..n).filter(|e| mask >> e & 1 == 1).map(|e| (e, one())).collect();
            lp.add(row, Sense::Le, big(r as u64));
        }
    }
    lp.add((0..n).map(|e| (e, one())).collect(), Sense::Eq, big(ranks[full] as u64));
    for i in 0..n {
        // T·x_i − Σ p_w y_iw ≤ 0
        let mut row = vec![(i, big(target))];
        for (k, &(owner, w)) in edges.iter().enumerate() {
            if owner == i {
                row.push((y(k), -big(inst.values()[w])));
            }
        }
        lp.add(row, Sense::Le, big(0));
    }
    for w in 0..inst.resource_count() {
        let row: Vec<_> = edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.1 == w)
            .map(|(k, _)| (y(k), one()))
            .collect();
        if !row.is_empty() {
            lp.add(row, Sense::Le, one());
        }
    }
    for (k, &(i, _)) in edges.iter().enumerate() {
        lp.add(vec![(y(k), one()), (i, -one())], Sense::Le, big(0));
    }
    Ok(lp)
}

/// A point of `Q(T)` in the layout of [`q_lp`], if any.
pub fn q_lp_feasible_point<M: Matroid + ?Sized>(
    matroid: &M,
    inst: &AllocationInstance,
    target: u64,
) -> Result<Option<Vec<BigRational>>> {
    q_lp(matroid, inst, target)?.feasible_point()
}

/// Whether `Q(T)` is non-empty, for at most 10 elements.
pub fn lp_feasible_q<M: Matroid + ?Sized>(matroid: &M, inst: &AllocationInstance, target: u64) -> Result<bool> {
    Ok(q_lp_feasible_point(matroid, inst, target)?.is_some())
}
