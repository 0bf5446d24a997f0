//! Partitions, symmetric-group characters and the framing generating function.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts; zero parts are an error.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `z_mu = |Aut(mu)| prod mu_j`.
pub fn z_mu(mu: &Partition) -> BigInt {
    let mut z = BigInt::one();
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for &p in mu.parts() {
        z *= p;
        *mult.entry(p).or_default() += 1;
    }
    for m in mult.values() {
        for j in 2..=*m {
            z *= j;
        }
    }
    z
}

/// `kappa_mu = sum mu_j (mu_j - 2j + 1)`, with `j` one-based.
pub fn kappa_mu(mu: &Partition) -> i64 {
    mu.parts()
        .iter()
        .enumerate()
        .map(|(j, &p)| {
            let p = i64::from(p);
            p * (p - 2 * (j as i64 + 1) + 1)
        })
        .sum()
}

/// `chi_nu` on the class `mu`, by Murnaghan-Nakayama.
pub fn chi(nu: &Partition, mu: &Partition) -> Result<i64> {
    if nu.size() != mu.size() {
        return Err(Error::Domain(format!(
            "character {nu} of size {} on class {mu} of size {}",
            nu.size(),
            mu.size()
        )));
    }
    Ok(chi_beta(&beta_set(nu), mu.parts(), &mut HashMap::new()))
}

fn beta_set(nu: &Partition) -> Vec<i64> {
    let l = nu.len() as i64;
    nu.parts()
        .iter()
        .enumerate()
        .map(|(j, &p)| i64::from(p) + l - 1 - j as i64)
        .collect()
}

/// Removing a border strip of length `r` moves one bead from `b` to `b - r`; the height is
/// the number of beads strictly between.
fn chi_beta(beta: &[i64], parts: &[u32], memo: &mut HashMap<(Vec<i64>, usize), i64>) -> i64 {
    let Some((&r, rest)) = parts.split_first() else {
        return 1;
    };
    let key = (beta.to_vec(), parts.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = i64::from(r);
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        let target = b - r;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.to_vec();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * chi_beta(&next, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Character table of `S_d`, built once.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    d: u32,
    partitions: Vec<Partition>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(d: u32) -> Self {
        let partitions = Partition::all(d);
        let values = partitions
            .iter()
            .map(|nu| {
                partitions
                    .iter()
                    .map(|mu| chi(nu, mu).expect("equal sizes"))
                    .collect()
            })
            .collect();
        Self { d, partitions, values }
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    fn index(&self, p: &Partition) -> Result<usize> {
        self.partitions
            .iter()
            .position(|q| q == p)
            .ok_or_else(|| Error::Domain(format!("{p} is not a partition of {}", self.d)))
    }

    pub fn get(&self, nu: &Partition, mu: &Partition) -> Result<i64> {
        Ok(self.values[self.index(nu)?][self.index(mu)?])
    }
}

/// `sum c_m t^m`, finitely supported.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HalfLaurent(BTreeMap<i64, Rational>);

impl HalfLaurent {
    pub fn add_term(&mut self, m: i64, c: Rational) {
        let entry = self.0.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn coeff(&self, m: i64) -> Rational {
        self.0.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.0.iter()
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> Rational {
        self.0.values().sum()
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(m, c)| format!("({c})*t^{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `sum_nu t^kappa_nu chi_nu(mu+) chi_nu(mu-) / (z_mu+ z_mu-)`.
pub fn phi_bullet(plus: &Partition, minus: &Partition) -> Result<HalfLaurent> {
    if plus.size() != minus.size() {
        return Err(Error::Domain(format!("{plus} and {minus} differ in size")));
    }
    phi_bullet_with(&CharacterTable::new(plus.size()), plus, minus)
}

/// As [`phi_bullet`], reading characters from `table`.
pub fn phi_bullet_with(table: &CharacterTable, plus: &Partition, minus: &Partition) -> Result<HalfLaurent> {
    let z = Rational::from_integer(z_mu(plus) * z_mu(minus));
    let mut out = HalfLaurent::default();
    for nu in table.partitions() {
        let c = table.get(nu, plus)? * table.get(nu, minus)?;
        if c != 0 {
            out.add_term(kappa_mu(nu), Rational::from_integer(c.into()) / &z);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn spot_values() {
        assert_eq!(z_mu(&p(&[2, 1])), 2.into());
        assert_eq!(z_mu(&p(&[1, 1])), 2.into());
        assert_eq!(kappa_mu(&p(&[2])), 2);
        assert_eq!(kappa_mu(&p(&[1, 1])), -2);
        assert_eq!(kappa_mu(&p(&[1])), 0);
    }

    #[test]
    fn s2_characters() {
        assert_eq!(chi(&p(&[2]), &p(&[1, 1])).unwrap(), 1);
        assert_eq!(chi(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
        assert!(chi(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn s3_table() {
        let t = CharacterTable::new(3);
        assert_eq!(t.get(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(t.get(&p(&[2, 1]), &p(&[2, 1])).unwrap(), 0);
        assert_eq!(t.get(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(t.get(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap(), -1);
    }

    #[test]
    fn trivial_character() {
        for d in 1..=6 {
            for mu in Partition::all(d) {
                assert_eq!(chi(&p(&[d]), &mu).unwrap(), 1);
            }
        }
    }

    #[test]
    fn phi_examples() {
        let one = phi_bullet(&p(&[1]), &p(&[1])).unwrap();
        assert_eq!(one.terms().count(), 1);
        assert_eq!(one.coeff(0), rat(1));
        let two = phi_bullet(&p(&[2]), &p(&[2])).unwrap();
        assert_eq!(two.coeff(2), ratio(1, 4));
        assert_eq!(two.coeff(-2), ratio(1, 4));
        assert_eq!(two.terms().count(), 2);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
    }
}
