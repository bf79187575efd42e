//! Matroid and base polytope membership for small ground sets, by subset
//! enumeration, in exact rational arithmetic.
//!
//! These utilities certify existence arguments in tests; the solver never
//! calls them. A polynomial alternative to [`lift_to_base_polytope`] is to add
//! the constraint `x(X) = rank(X)` directly to whatever LP produced `x`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{mask_to_set, Matroid};
use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 16;

/// Rank of every subset of the ground set, indexed by bitmask.
pub fn subset_ranks<M: Matroid + ?Sized>(matroid: &M) -> Result<Vec<usize>> {
    let n = matroid.ground_size();
    Error::guard("ground set size for polytope enumeration", n, MAX_GROUND)?;
    // greedy basis of A = greedy basis of A minus its top element, plus the top
    // element if that stays independent
    let mut ranks = vec![0usize; 1 << n];
    let mut basis = vec![0u32; 1 << n];
    for mask in 1u32..(1 << n) {
        let top = 31 - mask.leading_zeros();
        let rest = mask & !(1 << top);
        let candidate = basis[rest as usize] | 1 << top;
        if matroid.independent(&mask_to_set(candidate, n)) {
            basis[mask as usize] = candidate;
            ranks[mask as usize] = ranks[rest as usize] + 1;
        } else {
            basis[mask as usize] = basis[rest as usize];
            ranks[mask as usize] = ranks[rest as usize];
        }
    }
    Ok(ranks)
}

fn check_len<M: Matroid + ?Sized>(matroid: &M, x: &[BigRational]) -> Result<()> {
    if x.len() != matroid.ground_size() {
        return Err(Error::InvalidInput(format!(
            "vector has {} entries, ground set has {}",
            x.len(),
            matroid.ground_size()
        )));
    }
    Ok(())
}

fn subset_sum(x: &[BigRational], mask: u32) -> BigRational {
    x.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(BigRational::zero(), |acc, (_, v)| acc + v)
}

fn in_matroid_polytope(x: &[BigRational], ranks: &[usize]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && (1..ranks.len() as u32)
            .all(|mask| subset_sum(x, mask) <= BigRational::from_integer(ranks[mask as usize].into()))
}

/// `x ≥ 0` and `x(A) ≤ rank(A)` for every subset `A`.
pub fn matroid_polytope_contains<M: Matroid + ?Sized>(
    matroid: &M,
    x: &[BigRational],
) -> Result<bool> {
    check_len(matroid, x)?;
    let ranks = subset_ranks(matroid)?;
    Ok(in_matroid_polytope(x, &ranks))
}

/// Matroid polytope membership plus `x(X) = rank(X)`.
pub fn base_polytope_contains<M: Matroid + ?Sized>(
    matroid: &M,
    x: &[BigRational],
) -> Result<bool> {
    check_len(matroid, x)?;
    let ranks = subset_ranks(matroid)?;
    let full = BigRational::from_integer(ranks[ranks.len() - 1].into());
    let total: BigRational = x.iter().sum();
    Ok(total == full && in_matroid_polytope(x, &ranks))
}

/// Raises a point of the matroid polytope to a dominating point of the base
/// polytope.
///
/// Repeatedly picks the lowest-index coordinate `i` with positive slack
/// `min_{A ∋ i} rank(A) - x(A)` and raises it by that slack. A raised
/// coordinate sits in a tight set afterwards and tight sets stay tight, so
/// each coordinate moves at most once.
pub fn lift_to_base_polytope<M: Matroid + ?Sized>(
    matroid: &M,
    x: &[BigRational],
) -> Result<Vec<BigRational>> {
    check_len(matroid, x)?;
    let ranks = subset_ranks(matroid)?;
    if !in_matroid_polytope(x, &ranks) {
        return Err(Error::InvalidInput(
            "point is not in the matroid polytope".into(),
        ));
    }
    let n = x.len();
    let full = BigRational::from_integer(ranks[ranks.len() - 1].into());
    let mut x = x.to_vec();
    while x.iter().sum::<BigRational>() < full {
        let raised = (0..n).find_map(|i| {
            let slack = (1u32..1 << n)
                .filter(|mask| mask >> i & 1 == 1)
                .map(|mask| BigRational::from_integer(ranks[mask as usize].into()) - subset_sum(&x, mask))
                .min()
                .expect("some subset contains i");
            slack.is_positive().then_some((i, slack))
        });
        let (i, slack) = raised.ok_or_else(|| {
            Error::Internal("no coordinate admits an increase below full rank".into())
        })?;
        x[i] += slack;
    }
    Ok(x)
}

/// Characteristic vector of a set over `n` elements.
pub fn characteristic(set: &super::ElementSet, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|i| {
            if set.contains(&i.into()) {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect()
}
