// SPDX-License-Identifier: Apache-2.0

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ghz::{AbelianGroupSpec, CorrelationTable, StateKind};

/// Observables entering the parity argument: `X` has the identity and its
/// pair partner as eigenstates, `Y` the remaining two group elements.
pub const PARITY_OBSERVABLES: [&str; 2] = ["X", "Y"];

/// `Σ vars = parity` over GF(2); variable `2·site + k` is the outcome bit of
/// observable `PARITY_OBSERVABLES[k]` at `site`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityEquation {
    pub context: [usize; 3],
    pub vars: Vec<usize>,
    pub parity: u8,
}

impl ParityEquation {
    fn mask(&self) -> u8 {
        self.vars.iter().fold(0, |m, v| m | 1 << v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ctx: Vec<&str> = self.context.iter().map(|&k| PARITY_OBSERVABLES[k]).collect();
        serde_json::json!({ "context": ctx, "vars": self.vars, "parity": self.parity })
    }
}

/// Equations whose GF(2) sum is `0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCertificate {
    pub equations: Vec<ParityEquation>,
}

impl ParityCertificate {
    pub fn verify(&self) -> bool {
        let (mask, parity) = self.equations.iter().fold((0u8, 0u8), |(m, p), e| (m ^ e.mask(), p ^ e.parity));
        !self.equations.is_empty() && mask == 0 && parity == 1
    }

    pub fn contexts(&self) -> Vec<[usize; 3]> {
        self.equations.iter().map(|e| e.context).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let eqs: Vec<_> = self.equations.iter().map(ParityEquation::to_json).collect();
        serde_json::json!({ "equations": eqs, "sum": "0 = 1" })
    }
}

/// Table indices of `[X pair, Y pair]`, each `[bit 0, bit 1]`.
fn parity_states(ct: &CorrelationTable, pg: &AbelianGroupSpec) -> Result<[[usize; 2]; 2]> {
    if pg.order() != 4 {
        return Err(Error::CorrelationTable(format!("phase group of order {}, expected 4", pg.order())));
    }
    let idx = |g: usize| ct.kinds.iter().position(|k| *k == StateKind::Group(g));
    let id = idx(pg.identity).ok_or_else(|| Error::CorrelationTable("identity not in table".into()))?;
    let group: Vec<usize> = (0..pg.order()).map(idx).collect::<Option<_>>().ok_or_else(|| {
        Error::CorrelationTable("phase group elements missing from table".into())
    })?;
    let in_group = |p: &[usize; 2]| p.iter().all(|i| group.contains(i));
    let x = ct
        .eigen_pairs
        .iter()
        .find(|p| in_group(p) && p.contains(&id))
        .ok_or_else(|| Error::CorrelationTable("identity is not in an eigenstate pair".into()))?;
    let x = if x[0] == id { *x } else { [x[1], x[0]] };
    let y = ct
        .eigen_pairs
        .iter()
        .find(|p| in_group(p) && !p.contains(&x[0]) && !p.contains(&x[1]))
        .ok_or_else(|| Error::CorrelationTable("no second eigenstate pair among the group elements".into()))?;
    Ok([x, [y[0].min(y[1]), y[0].max(y[1])]])
}

/// Parity equations from the forbidden triples of each `{X, Y}³` context,
/// then a GF(2) inconsistency proof if one exists. A context yields an
/// equation when its allowed outcomes are exactly a coset `{b : a·b = p}`.
pub fn mermin_certificate(ct: &CorrelationTable, pg: &AbelianGroupSpec) -> Result<Option<ParityCertificate>> {
    let equations = parity_equations(ct, pg)?;
    let Some(subset) = inconsistent_subset(&equations) else { return Ok(None) };
    let cert = ParityCertificate { equations: subset.into_iter().map(|i| equations[i].clone()).collect() };
    debug_assert!(cert.verify());
    Ok(Some(cert))
}

pub fn parity_equations(ct: &CorrelationTable, pg: &AbelianGroupSpec) -> Result<Vec<ParityEquation>> {
    let pairs = parity_states(ct, pg)?;
    let mut out = Vec::new();
    for ctx in (0..3).map(|_| 0..2usize).multi_cartesian_product() {
        let context = [ctx[0], ctx[1], ctx[2]];
        let allowed: Vec<usize> = (0..8usize)
            .filter(|&o| {
                let t = [0, 1, 2].map(|s| pairs[context[s]][(o >> (2 - s)) & 1]);
                !ct.forbidden.contains(&t)
            })
            .collect();
        let coset = (1..8usize).cartesian_product(0..2u8).find(|&(a, p)| {
            let members: Vec<usize> = (0..8).filter(|&b| ((a & b).count_ones() % 2) as u8 == p).collect();
            members == allowed
        });
        if let Some((a, parity)) = coset {
            let vars = (0..3).filter(|&s| a >> (2 - s) & 1 == 1).map(|s| 2 * s + context[s]).collect();
            out.push(ParityEquation { context, vars, parity });
        }
    }
    Ok(out)
}

/// Indices of a minimal inconsistent subset, if the system is inconsistent.
fn inconsistent_subset(eqs: &[ParityEquation]) -> Option<Vec<usize>> {
    let chosen = contradiction(eqs, &(0..eqs.len()).collect::<Vec<_>>())?;
    let mut set = chosen;
    let mut i = 0;
    while i < set.len() {
        let trial: Vec<usize> = set.iter().copied().filter(|&j| j != set[i]).collect();
        match contradiction(eqs, &trial) {
            Some(smaller) => set = smaller,
            None => i += 1,
        }
    }
    Some(set)
}

/// Gaussian elimination over GF(2) tracking which equations were summed.
/// Returns the equations whose sum is `0 = 1`.
fn contradiction(eqs: &[ParityEquation], use_: &[usize]) -> Option<Vec<usize>> {
    let mut rows: Vec<(u8, u8, u64)> = use_.iter().map(|&i| (eqs[i].mask(), eqs[i].parity, 1u64 << i)).collect();
    let mut rank = 0;
    for bit in 0..6 {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].0 >> bit & 1 == 1) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.0 >> bit & 1 == 1 {
                *row = (row.0 ^ pivot.0, row.1 ^ pivot.1, row.2 ^ pivot.2);
            }
        }
        rank += 1;
    }
    rows.iter()
        .find(|r| r.0 == 0 && r.1 == 1)
        .map(|r| (0..eqs.len()).filter(|i| r.2 >> i & 1 == 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ghz::correlations_from_group;

    #[test]
    fn z4_contradiction() {
        let spec = AbelianGroupSpec::cyclic(4);
        let ct = correlations_from_group(&spec, &[[0, 2], [1, 3]]).unwrap();
        let cert = mermin_certificate(&ct, &spec).unwrap().expect("certificate");
        assert!(cert.verify());
        let mut ctx = cert.contexts();
        ctx.sort();
        assert_eq!(ctx, vec![[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]]);
    }

    #[test]
    fn klein_consistent() {
        let spec = AbelianGroupSpec::klein();
        let ct = correlations_from_group(&spec, &[[0, 1], [2, 3]]).unwrap();
        assert!(!parity_equations(&ct, &spec).unwrap().is_empty());
        assert!(mermin_certificate(&ct, &spec).unwrap().is_none());
    }

    #[test]
    fn missing_pairs_is_malformed() {
        let spec = AbelianGroupSpec::cyclic(4);
        let ct = correlations_from_group(&spec, &[]).unwrap();
        assert!(mermin_certificate(&ct, &spec).is_err());
    }

    #[test]
    fn empty_system_has_no_certificate() {
        assert!(inconsistent_subset(&[]).is_none());
    }
}
