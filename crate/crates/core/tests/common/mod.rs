//! Brute-force references shared by the integration tests. Nothing here uses
//! the crate's linear algebra, complexes or semigroup tables.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Membership of `[0, limit]` in the monoid generated by `gens`.
pub fn sieve(gens: &[i64], limit: i64) -> Vec<bool> {
    let mut m = vec![false; limit as usize + 1];
    m[0] = true;
    for x in 1..=limit {
        m[x as usize] = gens.iter().any(|&g| g <= x && m[(x - g) as usize]);
    }
    m
}

/// Membership oracle for a cofinite monoid, backed by a sieve up to `limit`;
/// everything beyond `limit` is assumed to be a member.
pub struct Members {
    table: Vec<bool>,
}

impl Members {
    pub fn new(gens: &[i64], limit: i64) -> Self {
        Members {
            table: sieve(gens, limit),
        }
    }

    pub fn from_table(table: Vec<bool>) -> Self {
        Members { table }
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && (x as usize >= self.table.len() || self.table[x as usize])
    }

    pub fn frobenius(&self) -> i64 {
        (0..self.table.len() as i64).rev().find(|&x| !self.contains(x)).unwrap_or(-1)
    }

    pub fn minimal_generators(&self) -> Vec<i64> {
        let top = self.frobenius() + 1 + (1..).find(|&x| self.contains(x)).unwrap();
        (1..=top)
            .filter(|&x| self.contains(x) && !(1..x).any(|y| self.contains(y) && self.contains(x - y)))
            .collect()
    }
}

/// Gaussian elimination over `Q` on a dense matrix.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            for c in col..ncols {
                if !rows[rank][c].is_zero() {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free (Bareiss) elimination in `i128`, skipping columns without a
/// pivot. Every intermediate entry is a minor of the input, so the divisions
/// are exact. `None` if an entry overflows.
pub fn bareiss_rank(rows: &[Vec<i64>]) -> Option<usize> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col];
        for r in rank + 1..nrows {
            let lead = a[r][col];
            for c in col + 1..ncols {
                let v = pivot.checked_mul(a[r][c])?.checked_sub(lead.checked_mul(a[rank][c])?)?;
                a[r][c] = v / prev;
            }
            a[r][col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

/// Subsets of the generators counted by size and sum:
/// `counts[m][σ]` is the coefficient of `x^m t^σ` in `Π (1 + x t^{n_j})`.
pub fn subset_counts(gens: &[i64]) -> Vec<Vec<u64>> {
    let total: i64 = gens.iter().sum();
    let mut counts = vec![vec![0u64; total as usize + 1]; gens.len() + 1];
    counts[0][0] = 1;
    for (used, &g) in gens.iter().enumerate() {
        for m in (0..=used).rev() {
            for sum in (0..=(total - g) as usize).rev() {
                let c = counts[m][sum];
                if c > 0 {
                    counts[m + 1][sum + g as usize] += c;
                }
            }
        }
    }
    counts
}

/// Gaussian elimination over `GF(p)` on a dense matrix.
pub fn mod_p_rank(rows: &[Vec<i64>], p: i64) -> usize {
    let mut rows: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let inv = |a: i64| {
        let (mut base, mut e, mut acc) = (a, p - 2, 1i64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let scale = inv(rows[rank][col]);
        for r in rank + 1..nrows {
            let f = rows[r][col] * scale % p;
            if f != 0 {
                for c in col..ncols {
                    rows[r][c] = (rows[r][c] - f * rows[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Closes a family of vertex sets downward. Returns faces grouped by
/// cardinality, each group sorted.
pub fn close_downward(facets: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for facet in facets {
        let mut f = facet.clone();
        f.sort_unstable();
        f.dedup();
        for mask in 0u32..(1 << f.len()) {
            all.insert((0..f.len()).filter(|&j| mask >> j & 1 == 1).map(|j| f[j]).collect());
        }
    }
    group_by_size(all)
}

fn group_by_size(faces: impl IntoIterator<Item = Vec<usize>>) -> Vec<Vec<Vec<usize>>> {
    let mut groups: Vec<Vec<Vec<usize>>> = Vec::new();
    for f in faces {
        if groups.len() <= f.len() {
            groups.resize(f.len() + 1, Vec::new());
        }
        groups[f.len()].push(f);
    }
    for g in &mut groups {
        g.sort();
    }
    groups
}

/// Boundary of the cardinality-`m` faces into the cardinality-`m - 1` faces,
/// as a dense integer matrix (rows are the smaller faces).
pub fn dense_boundary(groups: &[Vec<Vec<usize>>], m: usize) -> Vec<Vec<i64>> {
    let rows = &groups[m - 1];
    let cols = groups.get(m).map_or(&[][..], Vec::as_slice);
    let index: BTreeMap<&Vec<usize>, usize> = rows.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut mat = vec![vec![0i64; cols.len()]; rows.len()];
    for (c, face) in cols.iter().enumerate() {
        for pos in 0..face.len() {
            let mut sub = face.clone();
            sub.remove(pos);
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            mat[index[&sub]][c] = sign;
        }
    }
    mat
}

fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect()
}

/// `dim H̃_d` for `d = -1..=dim` as kernel minus image dimensions; empty for
/// the void complex. `p = 0` means `Q`.
pub fn reduced_homology(groups: &[Vec<Vec<usize>>], p: i64) -> Vec<usize> {
    if groups.is_empty() {
        return Vec::new();
    }
    let rank = |m: usize| -> usize {
        if m == 0 || m >= groups.len() {
            return 0;
        }
        let mat = dense_boundary(groups, m);
        if p == 0 {
            bareiss_rank(&mat).unwrap_or_else(|| rational_rank(to_rational(&mat)))
        } else {
            mod_p_rank(&mat, p)
        }
    };
    let ranks: Vec<usize> = (0..=groups.len()).map(rank).collect();
    (0..groups.len())
        .map(|m| {
            let kernel = groups[m].len() - ranks[m];
            kernel - ranks[m + 1]
        })
        .collect()
}

/// Faces of `Δ_s`, grouped by cardinality.
pub fn divisor_complex(gens: &[i64], members: &Members, s: i64) -> Vec<Vec<Vec<usize>>> {
    // Depth-first over increasing vertex lists; a non-face has no cofaces.
    fn grow(gens: &[i64], members: &Members, rest: i64, face: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(face.clone());
        let start = face.last().copied().unwrap_or(0);
        for v in start + 1..=gens.len() {
            if members.contains(rest - gens[v - 1]) {
                face.push(v);
                grow(gens, members, rest - gens[v - 1], face, out);
                face.pop();
            }
        }
    }
    let mut faces = Vec::new();
    if members.contains(s) {
        grow(gens, members, s, &mut Vec::new(), &mut faces);
    }
    group_by_size(faces)
}

/// Nonzero `β_{i,s}` for `0 <= s <= bound`, computed from the complexes.
pub fn betti_table(gens: &[i64], bound: i64, p: i64) -> BTreeMap<(usize, i64), usize> {
    let members = Members::new(gens, bound + gens.iter().max().unwrap());
    let mut table = BTreeMap::new();
    for s in 0..=bound {
        let groups = divisor_complex(gens, &members, s);
        for (m, h) in reduced_homology(&groups, p).into_iter().enumerate() {
            if h > 0 {
                table.insert((m, s), h);
            }
        }
    }
    table
}

/// Every numerical semigroup with conductor at most `bound`, found by
/// testing each subset of `[1, bound)` as a gap set. Returned as membership
/// tables of length `bound + 1`.
pub fn all_semigroups(bound: usize) -> Vec<Vec<bool>> {
    let width = bound.saturating_sub(1);
    let mut out = Vec::new();
    for gaps in 0u64..(1 << width) {
        let member = |x: usize| x == 0 || x > width || gaps >> (x - 1) & 1 == 0;
        let closed = (1..=width).all(|a| !member(a) || (a..=width.saturating_sub(a)).all(|b| !member(b) || member(a + b)));
        if closed {
            out.push((0..=bound).map(member).collect());
        }
    }
    out
}

/// `s + t - u ∈ S` for all members `s, t >= u`.
pub fn is_arf(members: &Members, conductor: i64) -> bool {
    let below: Vec<i64> = (0..conductor).filter(|&x| members.contains(x)).collect();
    below.iter().all(|&u| {
        below
            .iter()
            .filter(|&&s| s >= u)
            .all(|&s| below.iter().filter(|&&t| t >= s).all(|&t| members.contains(s + t - u)))
    })
}
