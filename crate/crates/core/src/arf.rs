//! Arf semigroups: the Arf test, quotients `S(n)`, blowups, Arf closure,
//! multiplicity sequences and enumeration by conductor.

use serde::Serialize;

use crate::error::{Error, PreconditionReason, Result};
use crate::semigroup::NumericalSemigroup;

/// A triple `s, t >= u` of members with `s + t - u` outside the semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArfWitness {
    pub s: i64,
    pub t: i64,
    pub u: i64,
}

impl ArfWitness {
    pub fn value(&self) -> i64 {
        self.s + self.t - self.u
    }
}

/// The translated set `S(n) = { x - n : x in S, x >= n }`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub n: i64,
    /// Membership of `[0, conductor)`; everything beyond is a member.
    pub prefix: Vec<bool>,
    /// A pair of members whose sum is missing, when the set is not closed.
    pub closure_witness: Option<(i64, i64)>,
}

impl Quotient {
    pub fn is_closed(&self) -> bool {
        self.closure_witness.is_none()
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && (x as usize >= self.prefix.len() || self.prefix[x as usize])
    }

    pub fn conductor(&self) -> i64 {
        self.prefix.len() as i64
    }

    /// The semigroup, if the translated set is closed under addition.
    pub fn semigroup(&self) -> Option<NumericalSemigroup> {
        if self.is_closed() {
            NumericalSemigroup::from_membership(&self.prefix)
        } else {
            None
        }
    }
}

pub fn quotient(s: &NumericalSemigroup, n: i64) -> Result<Quotient> {
    if !s.contains(n) {
        return Err(Error::NotMember(n));
    }
    let conductor = (s.conductor() - n).max(0);
    let prefix: Vec<bool> = (0..conductor).map(|x| s.contains(x + n)).collect();
    let member = |x: i64| x >= conductor || prefix[x as usize];
    let mut closure_witness = None;
    'outer: for a in 1..conductor {
        if !member(a) {
            continue;
        }
        for b in a..conductor - a {
            if member(b) && !member(a + b) {
                closure_witness = Some((a, b));
                break 'outer;
            }
        }
    }
    Ok(Quotient {
        n,
        prefix,
        closure_witness,
    })
}

/// First violation of `s + t - u in S` for members `s, t >= u >= 1`, scanning
/// `s <= t` in increasing order and then `u`.
///
/// Only `s, t` below the conductor need checking: otherwise
/// `s + t - u >= max(s, t)` already lies above the conductor.
pub fn arf_violation(s: &NumericalSemigroup) -> Option<ArfWitness> {
    let small: Vec<i64> = s.elements_in(1, s.conductor() - 1).collect();
    for (a_idx, &a) in small.iter().enumerate() {
        for &b in &small[a_idx..] {
            for &u in small.iter().take_while(|&&u| u <= a) {
                if !s.contains(a + b - u) {
                    return Some(ArfWitness { s: a, t: b, u });
                }
            }
        }
    }
    None
}

pub fn is_arf(s: &NumericalSemigroup) -> bool {
    arf_violation(s).is_none()
}

/// Semigroup generated by `n_1` and `n_i - n_1`.
pub fn blowup(s: &NumericalSemigroup) -> NumericalSemigroup {
    let gens = s.generators();
    if gens.len() == 1 {
        return NumericalSemigroup::naturals();
    }
    let n1 = gens[0];
    let mut shifted = vec![n1];
    shifted.extend(gens[1..].iter().map(|&g| g - n1));
    NumericalSemigroup::from_generators(&shifted)
        .expect("blowup generators are positive with gcd 1")
}

/// Whether the blowup keeps the multiplicity.
pub fn same_multiplicity_blowup(s: &NumericalSemigroup) -> bool {
    let direct = blowup(s).multiplicity() == s.multiplicity();
    let gens = s.generators();
    let by_gap = gens.len() < 2 || gens[1] >= 2 * gens[0];
    assert_eq!(direct, by_gap, "multiplicity test disagrees for {s:?}");
    direct
}

/// The theorem precondition: Arf with a blowup of the same multiplicity.
pub fn theorem_precondition(s: &NumericalSemigroup) -> Result<()> {
    if !is_arf(s) {
        return Err(Error::PreconditionFailed(PreconditionReason::NotArf));
    }
    if !same_multiplicity_blowup(s) {
        return Err(Error::PreconditionFailed(PreconditionReason::MultiplicityDrops));
    }
    Ok(())
}

/// Smallest Arf semigroup containing `s`.
pub fn arf_closure(s: &NumericalSemigroup) -> NumericalSemigroup {
    let mut current = s.clone();
    loop {
        let c = current.conductor();
        let mut prefix: Vec<bool> = (0..c).map(|x| current.contains(x)).collect();
        let small: Vec<i64> = current.elements_in(1, c - 1).collect();
        let mut changed = false;
        for (a_idx, &a) in small.iter().enumerate() {
            for &b in &small[a_idx..] {
                for &u in small.iter().take_while(|&&u| u <= a) {
                    let v = a + b - u;
                    if v < c && !prefix[v as usize] {
                        prefix[v as usize] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return current;
        }
        // Inserting violations may break additive closure; close again. `c`
        // and `c + 1` are members already and make the gcd 1.
        let mut gens: Vec<i64> = (1..c).filter(|&x| prefix[x as usize]).collect();
        gens.extend([c, c + 1]);
        current = NumericalSemigroup::from_generators(&gens).expect("c and c + 1 are coprime");
    }
}

/// Multiplicities along the chain of iterated blowups down to `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicitySequence {
    pub entries: Vec<i64>,
}

impl MultiplicitySequence {
    /// Members below the last partial sum are exactly the partial sums.
    pub fn semigroup(&self) -> NumericalSemigroup {
        let total: i64 = self.entries.iter().sum();
        let mut prefix = vec![false; total as usize];
        let mut acc = 0;
        for &m in &self.entries {
            prefix[acc as usize] = true;
            acc += m;
        }
        NumericalSemigroup::from_membership(&prefix).expect("multiplicity sequence of an Arf semigroup")
    }
}

pub fn multiplicity_sequence(s: &NumericalSemigroup) -> Result<MultiplicitySequence> {
    if !is_arf(s) {
        return Err(Error::NotArf);
    }
    let mut entries = Vec::new();
    let mut current = s.clone();
    while !current.is_naturals() {
        let m = current.multiplicity();
        entries.push(m);
        current = quotient(&current, m)?
            .semigroup()
            .expect("quotient of an Arf semigroup by its multiplicity is a semigroup");
    }
    Ok(MultiplicitySequence { entries })
}

/// Depth-first enumeration of all Arf semigroups with conductor at most a
/// bound.
///
/// Every Arf semigroup other than `N` is `{0} ∪ (m + S')` for its blowup `S'`
/// and a nonzero `m in S'`, and every such set is Arf. The conductor of the
/// child is `m + conductor(S')`, which bounds the tree.
pub struct ArfEnumerator {
    bound: i64,
    stack: Vec<NumericalSemigroup>,
}

impl ArfEnumerator {
    pub fn new(conductor_bound: i64) -> Self {
        let stack = if conductor_bound >= 0 {
            vec![NumericalSemigroup::naturals()]
        } else {
            Vec::new()
        };
        ArfEnumerator {
            bound: conductor_bound,
            stack,
        }
    }
}

impl Iterator for ArfEnumerator {
    type Item = NumericalSemigroup;

    fn next(&mut self) -> Option<NumericalSemigroup> {
        let parent = self.stack.pop()?;
        let c = parent.conductor();
        // Children are pushed in reverse so that smaller `m` come out first.
        for m in (1..=self.bound - c).rev() {
            if !parent.contains(m) || (parent.is_naturals() && m == 1) {
                continue;
            }
            let child_conductor = m + c;
            let mut prefix = vec![false; child_conductor as usize];
            prefix[0] = true;
            for x in m..child_conductor {
                prefix[x as usize] = parent.contains(x - m);
            }
            let child = NumericalSemigroup::from_membership(&prefix)
                .expect("{0} ∪ (m + S') is a semigroup for m in S'");
            self.stack.push(child);
        }
        Some(parent)
    }
}

pub fn enumerate_arf(conductor_bound: i64) -> ArfEnumerator {
    ArfEnumerator::new(conductor_bound)
}

/// Which of the three membership equivalences relating `S` to its blowup
/// failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PomocClause {
    /// `x in S <=> x - n_1 in S'` unless `x = 0`.
    ShiftOnce,
    /// `x in S <=> x - 2 n_1 in S'` unless `x = 0` or `x = n_l`.
    ShiftTwice,
    /// `x in S <=> x in S'` unless `x = n_l - n_1`, `l != 1`.
    Unshifted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PomocViolation {
    pub clause: PomocClause,
    pub x: i64,
    pub in_s: bool,
    pub in_blowup: bool,
}

/// Scans the three equivalences over `[0, c(S) + c(S') + 3 n_1]`.
pub fn check_pomoc(s: &NumericalSemigroup) -> Result<Vec<PomocViolation>> {
    theorem_precondition(s)?;
    let b = blowup(s);
    let n1 = s.multiplicity();
    let gens = s.generators();
    let top = s.conductor() + b.conductor() + 3 * n1;

    let mut violations = Vec::new();
    let mut record = |clause, x, in_s, in_blowup| {
        if in_s != in_blowup {
            violations.push(PomocViolation {
                clause,
                x,
                in_s,
                in_blowup,
            });
        }
    };
    for x in 0..=top {
        let in_s = s.contains(x);
        if x != 0 {
            record(PomocClause::ShiftOnce, x, in_s, b.contains(x - n1));
        }
        if x != 0 && !gens.contains(&x) {
            record(PomocClause::ShiftTwice, x, in_s, b.contains(x - 2 * n1));
        }
        if !gens[1..].iter().any(|&g| g - n1 == x) {
            record(PomocClause::Unshifted, x, in_s, b.contains(x));
        }
    }
    Ok(violations)
}
