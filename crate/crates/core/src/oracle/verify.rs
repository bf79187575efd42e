use crate::matroid::{ElementSet, Matroid};
use crate::model::{AllocationInstance, HyperEdge};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a matroid max-min solution: `basis` is a basis, `matching` has
/// exactly one edge per basis element, edges are resource-disjoint, lie in
/// their owner's neighbourhood, carry their stated value, and reach
/// `threshold`.
pub fn verify_solution<M: Matroid + ?Sized>(
    matroid: &M,
    inst: &AllocationInstance,
    basis: &ElementSet,
    matching: &[HyperEdge],
    threshold: &Rational,
) -> VerificationReport {
    let mut violations = Vec::new();
    let n = matroid.ground_size();
    if let Some(e) = basis.iter().find(|e| e.index() >= n) {
        violations.push(format!("basis element {e} outside the ground set"));
        return VerificationReport { violations };
    }
    if !matroid.independent(basis) {
        violations.push("basis is dependent".into());
    } else if basis.len() != matroid.full_rank() {
        violations.push(format!(
            "basis has {} elements, rank is {}",
            basis.len(),
            matroid.full_rank()
        ));
    }
    let owners: Vec<_> = matching.iter().map(|e| e.owner).collect();
    let covered: ElementSet = owners.iter().copied().collect();
    if covered.len() != owners.len() {
        violations.push("an element owns two matching edges".into());
    }
    if covered != *basis {
        violations.push("matching does not cover exactly the basis".into());
    }
    let mut used = vec![false; inst.resource_count()];
    for edge in matching {
        if edge.owner.index() >= inst.element_count() {
            violations.push(format!("edge owner {} unknown", edge.owner));
            continue;
        }
        let neighbors = inst.neighbors(edge.owner);
        let mut value = 0u64;
        for w in &edge.resources {
            if w.index() >= inst.resource_count() {
                violations.push(format!("edge of {} uses unknown resource {}", edge.owner, w.0));
                continue;
            }
            if !neighbors.contains(w) {
                violations.push(format!("resource {} not adjacent to {}", w.0, edge.owner));
            }
            if std::mem::replace(&mut used[w.index()], true) {
                violations.push(format!("resource {} used twice", w.0));
            }
            value += inst.value(*w);
        }
        if value != edge.value {
            violations.push(format!(
                "edge of {} states value {} but sums to {value}",
                edge.owner, edge.value
            ));
        }
        if !rational::meets(value, threshold) {
            violations.push(format!(
                "edge of {} has value {value} below threshold {}",
                edge.owner,
                rational::format_rational(threshold)
            ));
        }
    }
    VerificationReport { violations }
}
