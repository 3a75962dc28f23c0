//! Numerical semigroups with an exact finite membership table.
//!
//! A numerical semigroup is stored through its minimal generators, its
//! conductor and a boolean table covering `[0, conductor + n_k]`. Anything
//! past the table is a member because it lies above the conductor.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper limit on the length of the sieve used during construction.
pub const MAX_TABLE_LEN: u64 = 1 << 26;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    conductor: i64,
    membership: Vec<bool>,
}

impl NumericalSemigroup {
    /// The full semigroup `N = <1>`.
    pub fn naturals() -> Self {
        NumericalSemigroup {
            generators: vec![1],
            conductor: 0,
            membership: vec![true, true],
        }
    }

    /// Builds the semigroup generated by `gens`, normalizing to the minimal
    /// generating set.
    pub fn from_generators(gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&bad) = gens.iter().find(|&&g| g < 1) {
            return Err(Error::InvalidEntry(bad));
        }
        let mut gens = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();

        let gcd = gens.iter().fold(0i64, |acc, &g| acc.gcd(&g));
        if gcd != 1 {
            return Err(Error::NonCofinite { gcd });
        }

        let max = *gens.last().unwrap();
        let min = gens[0];
        // Any two coprime generators already have Frobenius number below
        // 2 max^2 + max, so the sieve always finds the conductor inside it.
        let bound = 2u64
            .checked_mul(max as u64)
            .and_then(|v| v.checked_mul(max as u64))
            .and_then(|v| v.checked_add(max as u64 + 1))
            .unwrap_or(u64::MAX);
        let limit = bound.min(MAX_TABLE_LEN);

        let mut table: Vec<bool> = Vec::new();
        let mut run = 0i64;
        let mut conductor = None;
        for x in 0..limit as i64 {
            let member = x == 0
                || gens
                    .iter()
                    .any(|&g| g <= x && table[(x - g) as usize]);
            table.push(member);
            if member {
                run += 1;
                if run == min {
                    conductor = Some(x - min + 1);
                    break;
                }
            } else {
                run = 0;
            }
        }
        let conductor = conductor.ok_or(Error::TooLarge { max, needed: bound })?;

        let generators: Vec<i64> = gens
            .iter()
            .copied()
            .filter(|&g| !(1..g).any(|y| is_member(&table, conductor, y) && is_member(&table, conductor, g - y)))
            .collect();

        Ok(Self::with_table(generators, conductor))
    }

    /// Builds a semigroup from a membership prefix. Every integer at or beyond
    /// `prefix.len()` is treated as a member. Returns `None` when the set is not
    /// closed under addition or misses zero.
    pub fn from_membership(prefix: &[bool]) -> Option<Self> {
        if prefix.first() == Some(&false) {
            return None;
        }
        let conductor = prefix
            .iter()
            .rposition(|&m| !m)
            .map_or(0, |gap| gap as i64 + 1);
        let member = |x: i64| x >= conductor || prefix[x as usize];

        // Sums reaching the conductor are members, so only pairs below it matter.
        for a in 1..conductor {
            if !member(a) {
                continue;
            }
            for b in a..conductor - a {
                if member(b) && !member(a + b) {
                    return None;
                }
            }
        }

        let multiplicity = (1..).find(|&x| member(x)).unwrap();
        let generators: Vec<i64> = (1..=conductor + multiplicity)
            .filter(|&x| member(x) && !(1..x).any(|y| member(y) && member(x - y)))
            .collect();
        Some(Self::with_table(generators, conductor))
    }

    fn with_table(generators: Vec<i64>, conductor: i64) -> Self {
        let max = *generators.last().expect("at least one generator");
        let len = (conductor + max + 1) as usize;
        let mut membership = vec![false; len];
        membership[0] = true;
        for x in 1..len {
            membership[x] = x as i64 >= conductor
                || generators
                    .iter()
                    .any(|&g| g as usize <= x && membership[x - g as usize]);
        }
        NumericalSemigroup {
            generators,
            conductor,
            membership,
        }
    }

    /// Membership test for any integer. Negative values are never members.
    #[inline]
    pub fn contains(&self, s: i64) -> bool {
        if s < 0 {
            false
        } else if (s as u64) < self.membership.len() as u64 {
            self.membership[s as usize]
        } else {
            true
        }
    }

    /// Minimal generators `n_1 < ... < n_k`.
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn minimal_generators(&self) -> Vec<i64> {
        self.generators.clone()
    }

    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    /// Largest integer outside the semigroup, `-1` for `N`.
    pub fn frobenius(&self) -> i64 {
        self.conductor - 1
    }

    pub fn gaps(&self) -> Vec<i64> {
        (1..self.conductor).filter(|&x| !self.contains(x)).collect()
    }

    pub fn genus(&self) -> usize {
        (1..self.conductor).filter(|&x| !self.contains(x)).count()
    }

    pub fn is_naturals(&self) -> bool {
        self.conductor == 0
    }

    /// Members lying in `[lo, hi]`.
    pub fn elements_in(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
        (lo.max(0)..=hi).filter(move |&x| self.contains(x))
    }

    /// Least element of each residue class modulo the multiplicity, indexed by
    /// residue.
    pub fn min_elements_mod_multiplicity(&self) -> Vec<i64> {
        let m = self.multiplicity();
        let mut least = vec![-1i64; m as usize];
        let mut found = 0;
        let mut x = 0;
        while found < m {
            let r = (x % m) as usize;
            if least[r] < 0 && self.contains(x) {
                least[r] = x;
                found += 1;
            }
            x += 1;
        }
        least
    }

    /// Sum of the minimal generators.
    pub fn generator_sum(&self) -> i64 {
        self.generators.iter().sum()
    }

    /// Canonical JSON form.
    pub fn to_json(&self) -> SemigroupJson {
        SemigroupJson {
            generators: self.generators.clone(),
            conductor: self.conductor,
            gaps: self.gaps(),
        }
    }
}

#[inline]
fn is_member(table: &[bool], conductor: i64, x: i64) -> bool {
    x >= 0 && (x >= conductor || table[x as usize])
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, g) in self.generators.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl FromStr for NumericalSemigroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NumericalSemigroup::from_generators(&parse_generators(s)?)
    }
}

/// Parses the canonical comma-separated generator form. Whitespace around
/// entries is ignored.
pub fn parse_generators(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Err(Error::EmptyGenerators);
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<i64>()
                .map_err(|_| Error::Parse(format!("invalid generator `{tok}`")))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupJson {
    pub generators: Vec<i64>,
    pub conductor: i64,
    pub gaps: Vec<i64>,
}
