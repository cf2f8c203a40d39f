// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use crate::error::{Error, Result};

/// Isomorphism class of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IsoClass {
    Trivial,
    Z4,
    Z2xZ2,
    /// Invariant factors in ascending divisibility order.
    Other { order: usize, factors: Vec<usize> },
}

impl IsoClass {
    pub fn from_factors(factors: &[usize]) -> IsoClass {
        match factors {
            [] => IsoClass::Trivial,
            [4] => IsoClass::Z4,
            [2, 2] => IsoClass::Z2xZ2,
            _ => IsoClass::Other {
                order: factors.iter().product(),
                factors: factors.to_vec(),
            },
        }
    }

    pub fn factors(&self) -> Vec<usize> {
        match self {
            IsoClass::Trivial => vec![],
            IsoClass::Z4 => vec![4],
            IsoClass::Z2xZ2 => vec![2, 2],
            IsoClass::Other { factors, .. } => factors.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.factors().iter().product()
    }
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.factors();
        if factors.is_empty() {
            return f.write_str("trivial");
        }
        let parts: Vec<String> = factors.iter().map(|d| format!("Z{d}")).collect();
        f.write_str(&parts.join("x"))
    }
}

/// A finite abelian group given by its multiplication table over named
/// elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupSpec {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl AbelianGroupSpec {
    /// Validates closure, identity, associativity, commutativity and inverses.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if names.len() != n {
            return Err(Error::NotAGroup(format!("{} names for {n} elements", names.len())));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("table is not an n × n array over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return Err(Error::NotAGroup(format!("{a}·{b} ≠ {b}·{a}")));
                }
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(Error::NotAGroup(format!("element {a} has no inverse")));
            }
        }
        Ok(AbelianGroupSpec {
            names,
            table,
            identity,
        })
    }

    /// `Z_n` with elements named `g^k`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|k| format!("g^{k}")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        AbelianGroupSpec::new(names, table).expect("cyclic group")
    }

    /// The Klein four-group with elements `e, a, b, c`.
    pub fn klein() -> Self {
        let names = ["e", "a", "b", "c"].map(String::from).to_vec();
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        AbelianGroupSpec::new(names, table).expect("klein group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("validated group")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    /// Invariant factors `d_1 | d_2 | …`, all greater than one.
    pub fn invariant_factors(&self) -> Vec<usize> {
        let n = self.order();
        let orders: Vec<usize> = (0..n).map(|a| self.element_order(a)).collect();
        // Per prime: exponents of the cyclic factors of the p-primary part.
        let mut primary: Vec<Vec<usize>> = Vec::new();
        for p in prime_factors(n) {
            let mut ranks = vec![0u32];
            let mut pk = 1;
            loop {
                pk *= p;
                let count = orders.iter().filter(|&&o| pk % o == 0).count();
                let r = count.ilog(p);
                if r == *ranks.last().unwrap() {
                    break;
                }
                ranks.push(r);
            }
            // ranks[k] - ranks[k-1] = number of cyclic factors of order >= p^k.
            let mut powers = Vec::new();
            for k in 1..ranks.len() {
                let ge_k = (ranks[k] - ranks[k - 1]) as usize;
                let ge_next = if k + 1 < ranks.len() {
                    (ranks[k + 1] - ranks[k]) as usize
                } else {
                    0
                };
                powers.extend(std::iter::repeat_n(p.pow(k as u32), ge_k - ge_next));
            }
            powers.sort_unstable_by(|a, b| b.cmp(a));
            primary.push(powers);
        }
        let len = primary.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors: Vec<usize> = (0..len)
            .map(|i| primary.iter().map(|ps| ps.get(i).copied().unwrap_or(1)).product())
            .collect();
        factors.reverse();
        factors
    }

    pub fn iso_class(&self) -> IsoClass {
        IsoClass::from_factors(&self.invariant_factors())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "elements": self.names,
            "identity": self.identity,
            "table": self.table,
            "iso": self.iso_class().to_string(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Json(format!("expected a group spec, found {value}"));
        let names = value
            .get("elements")
            .and_then(|v| v.as_array())
            .ok_or_else(bad)?
            .iter()
            .map(|n| n.as_str().map(String::from).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        let table = value
            .get("table")
            .and_then(|v| v.as_array())
            .ok_or_else(bad)?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(bad))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        AbelianGroupSpec::new(names, table)
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

/// Validates `table` as a finite abelian group and returns its class.
pub fn classify_group(table: &[Vec<usize>]) -> Result<IsoClass> {
    let names = (0..table.len()).map(|i| i.to_string()).collect();
    Ok(AbelianGroupSpec::new(names, table.to_vec())?.iso_class())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(a: &AbelianGroupSpec, b: &AbelianGroupSpec) -> AbelianGroupSpec {
        let (m, n) = (a.order(), b.order());
        let names = (0..m * n).map(|i| i.to_string()).collect();
        let table = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| a.mul(x / n, y / n) * n + b.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        AbelianGroupSpec::new(names, table).unwrap()
    }

    #[test]
    fn small_classes() {
        assert_eq!(AbelianGroupSpec::cyclic(1).iso_class(), IsoClass::Trivial);
        assert_eq!(AbelianGroupSpec::cyclic(4).iso_class(), IsoClass::Z4);
        assert_eq!(AbelianGroupSpec::klein().iso_class(), IsoClass::Z2xZ2);
        assert_eq!(classify_group(&[vec![0]]).unwrap(), IsoClass::Trivial);
    }

    #[test]
    fn invariant_factors_of_products() {
        let z2 = AbelianGroupSpec::cyclic(2);
        let z3 = AbelianGroupSpec::cyclic(3);
        let z4 = AbelianGroupSpec::cyclic(4);
        assert_eq!(product(&z2, &z3).invariant_factors(), vec![6]);
        assert_eq!(product(&z2, &z4).invariant_factors(), vec![2, 4]);
        let z2z2z3 = product(&product(&z2, &z2), &z3);
        assert_eq!(z2z2z3.invariant_factors(), vec![2, 6]);
        assert_eq!(z2z2z3.iso_class().to_string(), "Z2xZ6");
    }

    #[test]
    fn rejects_non_groups() {
        assert!(classify_group(&[vec![0, 0], vec![0, 1]]).is_err());
        assert!(classify_group(&[vec![0, 1], vec![0, 1]]).is_err());
        // Non-abelian S3 table.
        let s3 = [
            [0, 1, 2, 3, 4, 5],
            [1, 0, 4, 5, 2, 3],
            [2, 5, 0, 4, 3, 1],
            [3, 4, 5, 0, 1, 2],
            [4, 3, 1, 2, 5, 0],
            [5, 2, 3, 1, 0, 4],
        ]
        .map(|r| r.to_vec())
        .to_vec();
        assert!(classify_group(&s3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = AbelianGroupSpec::klein();
        assert_eq!(AbelianGroupSpec::from_json(&k.to_json()).unwrap(), k);
    }
}
