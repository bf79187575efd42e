use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row sense of a linear constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// Feasibility problem `{x ≥ 0 : a_r·x (≤|≥|=) b_r}` over exact rationals.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    vars: usize,
    rows: Vec<Row>,
}

/// Sparse coefficients, sense and right-hand side.
type Row = (Vec<(usize, BigRational)>, Sense, BigRational);

const MAX_COLUMNS: usize = 4096;

impl LinearProgram {
    pub fn new(vars: usize) -> Self {
        Self {
            vars,
            rows: Vec::new(),
        }
    }

    pub fn var_count(&self) -> usize {
        self.vars
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Adds `Σ coeff·x_var (sense) rhs`. Repeated variables are summed.
    pub fn add(&mut self, coeffs: Vec<(usize, BigRational)>, sense: Sense, rhs: BigRational) {
        debug_assert!(coeffs.iter().all(|(v, _)| *v < self.vars));
        self.rows.push((coeffs, sense, rhs));
    }

    pub fn add_int(&mut self, coeffs: &[(usize, i64)], sense: Sense, rhs: i64) {
        let coeffs = coeffs.iter().map(|&(v, c)| (v, int(c))).collect();
        self.add(coeffs, sense, int(rhs));
    }

    /// True iff `x` satisfies every constraint and `x ≥ 0`.
    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        if x.len() != self.vars || x.iter().any(|v| v.is_negative()) {
            return false;
        }
        self.rows.iter().all(|(coeffs, sense, rhs)| {
            let lhs: BigRational = coeffs.iter().map(|(v, c)| c * &x[*v]).sum();
            match sense {
                Sense::Le => lhs <= *rhs,
                Sense::Ge => lhs >= *rhs,
                Sense::Eq => lhs == *rhs,
            }
        })
    }

    /// A feasible point, or `None` if the system is infeasible.
    ///
    /// Phase-one simplex on a dense tableau with Bland's rule: rows are
    /// normalized to a non-negative right-hand side, `≤` rows start with
    /// their slack in the basis and the others with an artificial variable;
    /// the system is feasible iff the artificial sum can be driven to zero.
    pub fn feasible_point(&self) -> Result<Option<Vec<BigRational>>> {
        let m = self.rows.len();
        let slack_count = self.rows.iter().filter(|r| r.1 != Sense::Eq).count();
        let mut art_rows = Vec::new();
        let mut dense: Vec<Vec<BigRational>> = Vec::with_capacity(m);
        let mut senses = Vec::with_capacity(m);
        for (coeffs, sense, rhs) in &self.rows {
            let mut row = vec![BigRational::zero(); self.vars];
            for (v, c) in coeffs {
                row[*v] += c;
            }
            let mut rhs = rhs.clone();
            let mut sense = *sense;
            if rhs.is_negative() {
                for c in row.iter_mut() {
                    *c = -c.clone();
                }
                rhs = -rhs;
                sense = match sense {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
            }
            row.push(rhs);
            dense.push(row);
            senses.push(sense);
        }
        for (r, sense) in senses.iter().enumerate() {
            if *sense != Sense::Le {
                art_rows.push(r);
            }
        }
        let cols = self.vars + slack_count + art_rows.len();
        Error::guard("simplex columns", cols, MAX_COLUMNS)?;
        let rhs_col = cols;
        let mut tableau: Vec<Vec<BigRational>> = Vec::with_capacity(m);
        let mut basis = vec![0usize; m];
        let mut slack = self.vars;
        let mut art = self.vars + slack_count;
        for (r, mut row) in dense.into_iter().enumerate() {
            let rhs = row.pop().expect("rhs");
            row.resize(cols + 1, BigRational::zero());
            row[rhs_col] = rhs;
            match senses[r] {
                Sense::Le => {
                    row[slack] = BigRational::one();
                    basis[r] = slack;
                    slack += 1;
                }
                Sense::Ge => {
                    row[slack] = -BigRational::one();
                    slack += 1;
                    row[art] = BigRational::one();
                    basis[r] = art;
                    art += 1;
                }
                Sense::Eq => {
                    row[art] = BigRational::one();
                    basis[r] = art;
                    art += 1;
                }
            }
            tableau.push(row);
        }
        let first_art = self.vars + slack_count;
        // reduced costs of minimizing the artificial sum
        let mut cost = vec![BigRational::zero(); cols + 1];
        for &r in &art_rows {
            for (c, v) in tableau[r].iter().enumerate() {
                if !v.is_zero() && (c < first_art || c == rhs_col) {
                    cost[c] -= v;
                }
            }
        }
        while let Some(enter) = (0..cols).find(|&c| cost[c].is_negative()) {
            let mut leave: Option<(usize, BigRational)> = None;
            for r in 0..m {
                let a = &tableau[r][enter];
                if a.is_positive() {
                    let ratio = &tableau[r][rhs_col] / a;
                    let better = match &leave {
                        None => true,
                        Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((pr, _)) = leave else {
                // unbounded direction cannot occur: the objective is bounded below by 0
                return Err(Error::Internal("phase-one simplex unbounded".into()));
            };
            pivot(&mut tableau, &mut cost, pr, enter);
            basis[pr] = enter;
        }
        if !cost[rhs_col].is_zero() {
            return Ok(None);
        }
        let mut x = vec![BigRational::zero(); self.vars];
        for (r, &b) in basis.iter().enumerate() {
            if b < self.vars {
                x[b] = tableau[r][rhs_col].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn feasible(&self) -> Result<bool> {
        Ok(self.feasible_point()?.is_some())
    }
}

fn pivot(tableau: &mut [Vec<BigRational>], cost: &mut [BigRational], pr: usize, pc: usize) {
    let inv = BigRational::one() / &tableau[pr][pc];
    let nz: Vec<usize> = (0..tableau[pr].len()).filter(|&c| !tableau[pr][c].is_zero()).collect();
    for &c in &nz {
        tableau[pr][c] *= &inv;
    }
    let prow = tableau[pr].clone();
    let eliminate = |row: &mut Vec<BigRational>| {
        let f = row[pc].clone();
        if f.is_zero() {
            return;
        }
        for &c in &nz {
            let delta = &f * &prow[c];
            row[c] -= delta;
        }
    };
    for (r, row) in tableau.iter_mut().enumerate() {
        if r != pr {
            eliminate(row);
        }
    }
    let mut cost_row = cost.to_vec();
    eliminate(&mut cost_row);
    cost.clone_from_slice(&cost_row);
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn simple_feasible_system() {
        // x + y = 1, x - y >= 1/2
        let mut lp = LinearProgram::new(2);
        lp.add_int(&[(0, 1), (1, 1)], Sense::Eq, 1);
        lp.add(vec![(0, q(1, 1)), (1, q(-1, 1))], Sense::Ge, q(1, 2));
        let x = lp.feasible_point().unwrap().unwrap();
        assert!(lp.satisfied_by(&x));
    }

    #[test]
    fn infeasible_system() {
        let mut lp = LinearProgram::new(2);
        lp.add_int(&[(0, 1), (1, 1)], Sense::Le, 1);
        lp.add_int(&[(0, 1), (1, 1)], Sense::Ge, 2);
        assert!(!lp.feasible().unwrap());
    }

    #[test]
    fn negative_rhs_is_normalized() {
        // -x <= -3 means x >= 3; x <= 4
        let mut lp = LinearProgram::new(1);
        lp.add_int(&[(0, -1)], Sense::Le, -3);
        lp.add_int(&[(0, 1)], Sense::Le, 4);
        let x = lp.feasible_point().unwrap().unwrap();
        assert!(x[0] >= q(3, 1) && x[0] <= q(4, 1));
        lp.add_int(&[(0, 1)], Sense::Le, 2);
        assert!(!lp.feasible().unwrap());
    }

    #[test]
    fn empty_system_is_feasible() {
        let lp = LinearProgram::new(3);
        assert_eq!(lp.feasible_point().unwrap().unwrap(), vec![BigRational::zero(); 3]);
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example turned into a feasibility system with an objective
        // cut; Bland's rule must terminate.
        let mut lp = LinearProgram::new(4);
        lp.add(
            vec![(0, q(1, 4)), (1, q(-8, 1)), (2, q(-1, 1)), (3, q(9, 1))],
            Sense::Le,
            q(0, 1),
        );
        lp.add(
            vec![(0, q(1, 2)), (1, q(-12, 1)), (2, q(-1, 2)), (3, q(3, 1))],
            Sense::Le,
            q(0, 1),
        );
        lp.add_int(&[(2, 1)], Sense::Le, 1);
        lp.add(
            vec![(0, q(3, 4)), (1, q(-20, 1)), (2, q(1, 2)), (3, q(-6, 1))],
            Sense::Ge,
            q(1, 20),
        );
        let x = lp.feasible_point().unwrap().unwrap();
        assert!(lp.satisfied_by(&x));
    }

    /// Feasibility of a bounded planar system by vertex enumeration: a
    /// non-empty polygon has a vertex where two boundary lines meet.
    fn planar_feasible(rows: &[([i64; 2], Sense, i64)]) -> bool {
        let mut lines: Vec<([i64; 2], i64)> = rows.iter().map(|(a, _, b)| (*a, *b)).collect();
        lines.push(([1, 0], 0));
        lines.push(([0, 1], 0));
        let holds = |x: &BigRational, y: &BigRational| {
            !x.is_negative()
                && !y.is_negative()
                && rows.iter().all(|(a, sense, b)| {
                    let lhs = q(a[0], 1) * x + q(a[1], 1) * y;
                    let rhs = q(*b, 1);
                    match sense {
                        Sense::Le => lhs <= rhs,
                        Sense::Ge => lhs >= rhs,
                        Sense::Eq => lhs == rhs,
                    }
                })
        };
        for (i, (a1, b1)) in lines.iter().enumerate() {
            for (a2, b2) in &lines[i + 1..] {
                let det = a1[0] * a2[1] - a1[1] * a2[0];
                if det == 0 {
                    continue;
                }
                let x = q(b1 * a2[1] - a1[1] * b2, det);
                let y = q(a1[0] * b2 - b1 * a2[0], det);
                if holds(&x, &y) {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn random_planar_systems_match_vertex_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut feasible_seen = 0;
        for _ in 0..300 {
            let mut rows = vec![([1, 0], Sense::Le, 4), ([0, 1], Sense::Le, 4)];
            for _ in 0..rng.gen_range(1..5) {
                let a = [rng.gen_range(-3..4), rng.gen_range(-3..4)];
                let sense = match rng.gen_range(0..3) {
                    0 => Sense::Le,
                    1 => Sense::Ge,
                    _ => Sense::Eq,
                };
                rows.push((a, sense, rng.gen_range(-4..5)));
            }
            let mut lp = LinearProgram::new(2);
            for (a, sense, b) in &rows {
                lp.add_int(&[(0, a[0]), (1, a[1])], *sense, *b);
            }
            let got = lp.feasible_point().unwrap();
            if let Some(x) = &got {
                assert!(lp.satisfied_by(x));
                feasible_seen += 1;
            }
            assert_eq!(got.is_some(), planar_feasible(&rows), "rows {rows:?}");
        }
        assert!(feasible_seen > 30);
    }
}
