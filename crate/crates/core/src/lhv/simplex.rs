// SPDX-License-Identifier: Apache-2.0

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Hard cap on pivots; Bland's rule cannot cycle, so hitting it is a bug.
pub const MAX_PIVOTS: usize = 200_000;

/// Outcome of a phase-1 solve of `A x = b, x ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    /// `y` with `yᵀA ≤ 0` and `yᵀb > 0`.
    Infeasible(Vec<Rational>),
}

#[derive(Clone, Debug)]
pub struct SimplexResult {
    pub outcome: Feasibility,
    pub pivots: usize,
}

/// Phase-1 simplex over exact rationals with Bland's rule, on a dense
/// tableau carrying one artificial column per row.
pub fn phase_one(a: &[Vec<Rational>], b: &[Rational]) -> Result<SimplexResult> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if b.len() != m || a.iter().any(|r| r.len() != n) {
        return Err(Error::Solver("ragged constraint matrix".into()));
    }
    let width = n + m + 1;
    let rhs = width - 1;
    let mut flipped = vec![false; m];
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rational::zero(); width];
        let neg = b[i].is_negative();
        flipped[i] = neg;
        for j in 0..n {
            row[j] = if neg { -&a[i][j] } else { a[i][j].clone() };
        }
        row[n + i] = Rational::from_integer(1.into());
        row[rhs] = b[i].abs();
        t.push(row);
    }
    // Reduced costs for the all-artificial basis; the last slot is minus the
    // objective value.
    let mut z = vec![Rational::zero(); width];
    for row in &t {
        for j in (0..n).chain([rhs]) {
            if !row[j].is_zero() {
                z[j] -= &row[j];
            }
        }
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut pivots = 0;
    while let Some(enter) = (0..n + m).find(|&j| z[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][rhs] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.ok_or_else(|| Error::Solver("phase-1 objective unbounded".into()))?;
        pivot(&mut t, &mut z, r, enter);
        basis[r] = enter;
        pivots += 1;
        if pivots > MAX_PIVOTS {
            return Err(Error::Solver(format!("no optimum after {MAX_PIVOTS} pivots")));
        }
    }
    let outcome = if z[rhs].is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = t[i][rhs].clone();
            }
        }
        Feasibility::Feasible(x)
    } else {
        let one = Rational::from_integer(1.into());
        let y = (0..m)
            .map(|i| {
                let yi = &one - &z[n + i];
                if flipped[i] {
                    -yi
                } else {
                    yi
                }
            })
            .collect();
        Feasibility::Infeasible(y)
    };
    Ok(SimplexResult { outcome, pivots })
}

fn pivot(t: &mut [Vec<Rational>], z: &mut [Rational], r: usize, c: usize) {
    let p = t[r][c].clone();
    let nz: Vec<usize> = (0..t[r].len()).filter(|&j| !t[r][j].is_zero()).collect();
    for &j in &nz {
        t[r][j] /= &p;
    }
    let prow: Vec<(usize, Rational)> = nz.iter().map(|&j| (j, t[r][j].clone())).collect();
    let eliminate = |row: &mut [Rational]| {
        let f = row[c].clone();
        if f.is_zero() {
            return;
        }
        for (j, v) in &prow {
            row[*j] -= &f * v;
        }
    };
    for (i, row) in t.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    eliminate(z);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn feasible_system() {
        // x0 + x1 = 2, x1 + x2 = 1.
        let a = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]];
        let b = vec![q(2), q(1)];
        let r = phase_one(&a, &b).unwrap();
        let Feasibility::Feasible(x) = r.outcome else { panic!("expected feasible") };
        assert!(x.iter().all(|v| !v.is_negative()));
        assert_eq!(&x[0] + &x[1], q(2));
        assert_eq!(&x[1] + &x[2], q(1));
    }

    #[test]
    fn infeasible_system_has_witness() {
        // x0 + x1 = 1, x0 + x1 = 2.
        let a = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        let b = vec![q(1), q(2)];
        let Feasibility::Infeasible(y) = phase_one(&a, &b).unwrap().outcome else { panic!() };
        for j in 0..2 {
            assert!(!(&y[0] * &a[0][j] + &y[1] * &a[1][j]).is_positive());
        }
        assert!((&y[0] * &b[0] + &y[1] * &b[1]).is_positive());
    }

    #[test]
    fn negative_rhs() {
        // -x0 = -3.
        let r = phase_one(&[vec![q(-1)]], &[q(-3)]).unwrap();
        assert_eq!(r.outcome, Feasibility::Feasible(vec![q(3)]));
        // -x0 = 3 is infeasible for x0 ≥ 0.
        let Feasibility::Infeasible(y) = phase_one(&[vec![q(-1)]], &[q(3)]).unwrap().outcome else { panic!() };
        assert!(!(-&y[0]).is_positive() && (&y[0] * q(3)).is_positive());
    }
}
