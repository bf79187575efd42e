use crate::error::{Error, Result};
use crate::matroid::{bases, ElementId, ElementSet, Matroid};
use crate::model::AllocationInstance;
use crate::santa::SantaInstance;

const MAX_GIFTS: usize = 14;
const MAX_CHILDREN: usize = 8;
const MAX_ELEMENTS: usize = 6;
const MAX_RESOURCES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SantaOptimum {
    pub opt: u64,
    /// Child of each gift in an optimal assignment.
    pub witness: Vec<Option<usize>>,
}

/// Exact optimum of a Santa instance with at most 14 gifts and 8 children.
///
/// Dynamic program over (child, set of unused gifts): the best minimum that
/// children `k..` can reach using only the unused gifts.
pub fn brute_force_santa_opt(inst: &SantaInstance) -> Result<SantaOptimum> {
    Error::guard("gift count", inst.gift_count(), MAX_GIFTS)?;
    Error::guard("child count", inst.child_count(), MAX_CHILDREN)?;
    let eligible: Vec<u32> = inst
        .gifts_by_child()
        .iter()
        .map(|gifts| gifts.iter().fold(0u32, |m, &j| m | 1 << j))
        .collect();
    let (opt, picks) = subset_dp(inst.values(), &eligible)?;
    let mut witness = vec![None; inst.gift_count()];
    for (child, mask) in picks.into_iter().enumerate() {
        for j in bits(mask) {
            witness[j] = Some(child);
        }
    }
    Ok(SantaOptimum {
        opt: if inst.child_count() == 0 { 0 } else { opt },
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxMinOptimum {
    /// `u64::MAX` for a rank-0 matroid, whose empty basis has no minimum.
    pub opt: u64,
    pub basis: ElementSet,
    /// Basis element receiving each (kept) resource.
    pub witness: Vec<Option<ElementId>>,
}

/// Exact optimum of matroid max-min allocation for `|X| ≤ 6`, `|W| ≤ 12`:
/// every basis, each with the same dynamic program as the Santa oracle.
pub fn brute_force_matroid_maxmin<M: Matroid + ?Sized>(
    matroid: &M,
    inst: &AllocationInstance,
) -> Result<MaxMinOptimum> {
    Error::guard("element count", inst.element_count(), MAX_ELEMENTS)?;
    Error::guard("resource count", inst.resource_count(), MAX_RESOURCES)?;
    if matroid.ground_size() != inst.element_count() {
        return Err(Error::InvalidInput("matroid and instance sizes differ".into()));
    }
    let mut best: Option<MaxMinOptimum> = None;
    for basis in bases(matroid)? {
        let eligible: Vec<u32> = basis
            .iter()
            .map(|&i| {
                inst.neighbors(i)
                    .iter()
                    .fold(0u32, |m, w| m | 1 << w.index())
            })
            .collect();
        let (opt, picks) = subset_dp(inst.values(), &eligible)?;
        if best.as_ref().is_none_or(|b| opt > b.opt) {
            let mut witness = vec![None; inst.resource_count()];
            for (&i, mask) in basis.iter().zip(picks) {
                for w in bits(mask) {
                    witness[w] = Some(i);
                }
            }
            best = Some(MaxMinOptimum {
                opt,
                basis: basis.clone(),
                witness,
            });
        }
    }
    best.ok_or_else(|| Error::Internal("matroid without bases".into()))
}

/// `(max over assignments of min received value, chosen set per row)`.
/// Rows are agents with eligibility masks over at most 16 items; with no
/// rows the minimum is `u64::MAX`.
fn subset_dp(values: &[u64], eligible: &[u32]) -> Result<(u64, Vec<u32>)> {
    let items = values.len();
    let full = 1usize << items;
    let mut sums = vec![0u64; full];
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + values[low];
    }
    let rows = eligible.len();
    // best[k][mask]: rows k.. using only items in mask
    let mut best = vec![vec![u64::MAX; full]; rows + 1];
    let mut choice = vec![vec![0u32; full]; rows];
    for k in (0..rows).rev() {
        let allowed = eligible[k] as usize;
        for mask in 0..full {
            let avail = mask & allowed;
            let mut top = 0u64;
            let mut pick = 0usize;
            let mut sub = avail;
            loop {
                let value = sums[sub].min(best[k + 1][mask & !sub]);
                if value > top || (value == top && sub < pick) {
                    top = value;
                    pick = sub;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & avail;
            }
            best[k][mask] = top;
            choice[k][mask] = pick as u32;
        }
    }
    let mut mask = full - 1;
    let mut picks = Vec::with_capacity(rows);
    for row in choice.iter() {
        let pick = row[mask];
        picks.push(pick);
        mask &= !(pick as usize);
    }
    Ok((best[0][full - 1], picks))
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| mask >> b & 1 == 1)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{set_of, UniformMatroid};

    #[test]
    fn three_gift_example() {
        // children a=0, b=1; g1(3,{a,b}), g2(2,{a}), g3(2,{b})
        let inst = SantaInstance::new(2, vec![3, 2, 2], vec![vec![0, 1], vec![0], vec![1]]).unwrap();
        let opt = brute_force_santa_opt(&inst).unwrap();
        assert_eq!(opt.opt, 2);
        // exhaustive over all 3^3 assignments
        let mut best = 0;
        for code in 0..27u32 {
            let mut got = [0u64; 2];
            let mut c = code;
            let mut ok = true;
            for j in 0..3 {
                let who = c % 3;
                c /= 3;
                if who < 2 {
                    if !inst.is_eligible(j, who as usize) {
                        ok = false;
                    }
                    got[who as usize] += inst.value(j);
                }
            }
            if ok {
                best = best.max(got[0].min(got[1]));
            }
        }
        assert_eq!(best, 2);
    }

    #[test]
    fn single_child_takes_everything() {
        let inst = SantaInstance::new(1, vec![5, 7], vec![vec![0], vec![0]]).unwrap();
        let opt = brute_force_santa_opt(&inst).unwrap();
        assert_eq!(opt.opt, 12);
        assert_eq!(opt.witness, vec![Some(0), Some(0)]);
    }

    #[test]
    fn unloved_child_gives_zero() {
        let inst = SantaInstance::new(2, vec![5], vec![vec![0]]).unwrap();
        assert_eq!(brute_force_santa_opt(&inst).unwrap().opt, 0);
    }

    #[test]
    fn witness_achieves_the_optimum() {
        let inst = SantaInstance::new(
            3,
            vec![4, 3, 3, 2, 2, 1],
            vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0], vec![1], vec![2]],
        )
        .unwrap();
        let opt = brute_force_santa_opt(&inst).unwrap();
        let eval = crate::santa::evaluate_assignment(&inst, &opt.witness);
        assert!(eval.is_valid());
        assert_eq!(eval.objective, opt.opt);
    }

    #[test]
    fn guards() {
        let inst = SantaInstance::new(1, vec![1; 15], vec![vec![0]; 15]).unwrap();
        assert!(matches!(
            brute_force_santa_opt(&inst),
            Err(Error::UnsupportedScale { .. })
        ));
        let inst = SantaInstance::new(9, vec![1], vec![vec![0]]).unwrap();
        assert!(brute_force_santa_opt(&inst).is_err());
    }

    #[test]
    fn matroid_rank_one_single_resource() {
        let inst = AllocationInstance::new(vec![9], vec![vec![0]], 9).unwrap();
        let m = UniformMatroid::new(1, 1).unwrap();
        let opt = brute_force_matroid_maxmin(&m, &inst).unwrap();
        assert_eq!(opt.opt, 9);
        assert_eq!(opt.basis, set_of([0]));
    }

    #[test]
    fn matroid_balanced_split() {
        let inst = AllocationInstance::new(vec![5, 4, 3], vec![vec![0, 1, 2], vec![0, 1, 2]], 1).unwrap();
        let m = UniformMatroid::free(2);
        assert_eq!(brute_force_matroid_maxmin(&m, &inst).unwrap().opt, 5);
    }

    #[test]
    fn matroid_uncoverable_basis_gives_zero() {
        let inst = AllocationInstance::new(vec![5], vec![vec![0], vec![]], 1).unwrap();
        let m = UniformMatroid::free(2);
        assert_eq!(brute_force_matroid_maxmin(&m, &inst).unwrap().opt, 0);
    }

    #[test]
    fn matroid_picks_best_basis() {
        // rank 1: element 1 has more value available
        let inst = AllocationInstance::new(vec![2, 6], vec![vec![0], vec![1]], 1).unwrap();
        let m = UniformMatroid::new(1, 2).unwrap();
        let opt = brute_force_matroid_maxmin(&m, &inst).unwrap();
        assert_eq!(opt.opt, 6);
        assert_eq!(opt.basis, set_of([1]));
        assert_eq!(opt.witness, vec![None, Some(ElementId(1))]);
    }
}
