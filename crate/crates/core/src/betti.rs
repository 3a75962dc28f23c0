//! Graded Betti tables `β_{i,s} = dim H̃_{i-1}(Δ_s)`.
//!
//! The homology of `Δ_s` is computed after matching every face `F ∌ 1` with
//! `F ∪ {1}` whenever both are faces. The unmatched faces are the subsets
//! `F ⊆ {2..k}` with `s - Σ_F n_i` in `S` but `s - Σ_F n_i - n_1` not in `S`,
//! that is, with `s - Σ_F n_i` among the least elements of `S` in their
//! residue classes modulo `n_1`. Grouping the subsets of `{2..k}` by their
//! sum once per semigroup makes every degree cheap to assemble.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::complex::{squarefree_divisor_complex, subset_sums, Face, MAX_VERTICES};
use crate::error::{Error, Result};
use std::cell::RefCell;

use crate::homology::{cell_homology_indexed, reduced_homology_dims, CellIndex, FieldSpec};
use crate::semigroup::NumericalSemigroup;
use crate::SCHEMA_VERSION;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    generators: Vec<i64>,
    field: FieldSpec,
    entries: BTreeMap<(usize, i64), usize>,
    degree_bound: i64,
}

impl BettiTable {
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree_bound(&self) -> i64 {
        self.degree_bound
    }

    pub fn get(&self, i: usize, s: i64) -> usize {
        self.entries.get(&(i, s)).copied().unwrap_or(0)
    }

    /// Nonzero entries keyed by `(i, s)`.
    pub fn entries(&self) -> &BTreeMap<(usize, i64), usize> {
        &self.entries
    }

    /// Nonzero entries of homological degree `i`, by degree.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.entries
            .range((i, i64::MIN)..=(i, i64::MAX))
            .map(|(&(_, s), &v)| (s, v))
    }

    /// Largest `i` with a nonzero entry.
    pub fn max_index(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Whether two tables have the same nonzero entries.
    pub fn same_entries(&self, other: &BettiTable) -> bool {
        self.entries == other.entries
    }

    pub fn to_json(&self) -> BettiJson {
        BettiJson {
            schema_version: SCHEMA_VERSION,
            generators: self.generators.clone(),
            field: self.field.to_string(),
            degree_bound: self.degree_bound,
            betti: self
                .entries
                .iter()
                .map(|(&(i, s), &dim)| BettiEntry { i, s, dim })
                .collect(),
            total: total_betti(self).into_iter().map(|(i, v)| BettiTotal { i, dim: v }).collect(),
        }
    }

    /// Rows are homological degrees `i`, columns the degrees `s` carrying a
    /// nonzero entry.
    pub fn render_text(&self) -> String {
        let degrees: Vec<i64> = {
            let mut d: Vec<i64> = self.entries.keys().map(|&(_, s)| s).collect();
            d.sort_unstable();
            d.dedup();
            d
        };
        let width = degrees
            .iter()
            .map(|s| s.to_string().len())
            .chain(self.entries.values().map(|v| v.to_string().len()))
            .max()
            .unwrap_or(1);
        let label = format!("{}", self.max_index()).len() + 1;

        let mut out = String::new();
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(out, "graded Betti numbers of <{}> over {}", gens.join(","), self.field);
        let _ = write!(out, "{:label$} ", "s");
        for s in &degrees {
            let _ = write!(out, " {s:>width$}");
        }
        out.push('\n');
        for i in 0..=self.max_index() {
            let _ = write!(out, "{:>label$} ", format!("{i}:"));
            for &s in &degrees {
                match self.get(i, s) {
                    0 => {
                        let _ = write!(out, " {:>width$}", ".");
                    }
                    v => {
                        let _ = write!(out, " {v:>width$}");
                    }
                }
            }
            out.push('\n');
        }
        let totals: Vec<String> = total_betti(self).values().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "total: {}", totals.join(" "));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub s: i64,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BettiTotal {
    pub i: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BettiJson {
    pub schema_version: u32,
    pub generators: Vec<i64>,
    pub field: String,
    pub degree_bound: i64,
    pub betti: Vec<BettiEntry>,
    pub total: Vec<BettiTotal>,
}

/// Column sums `i -> Σ_s β_{i,s}`.
pub fn total_betti(table: &BettiTable) -> BTreeMap<usize, usize> {
    let mut totals = BTreeMap::new();
    for (&(i, _), &v) in &table.entries {
        *totals.entry(i).or_insert(0) += v;
    }
    totals
}

/// Largest degree that can carry a nonzero Betti number: beyond
/// `F(S) + Σ n_i` every `Δ_s` is the full simplex.
pub fn degree_bound(s: &NumericalSemigroup) -> i64 {
    s.frobenius() + s.generator_sum()
}

/// Subsets of `{2..k}` bucketed by the sum of their generators.
struct SubsetBuckets {
    offsets: Vec<usize>,
    masks: Vec<Face>,
}

impl SubsetBuckets {
    fn new(gens: &[i64]) -> Self {
        let rest = &gens[1..];
        let sums = subset_sums(rest);
        let max_sum = rest.iter().sum::<i64>() as usize;
        let mut offsets = vec![0usize; max_sum + 2];
        for &v in &sums {
            offsets[v as usize + 1] += 1;
        }
        for idx in 1..offsets.len() {
            offsets[idx] += offsets[idx - 1];
        }
        let mut fill = offsets.clone();
        let mut masks = vec![0 as Face; sums.len()];
        for (mask, &v) in sums.iter().enumerate() {
            // vertex j + 2 of the complex is bit j + 1
            masks[fill[v as usize]] = (mask as Face) << 1;
            fill[v as usize] += 1;
        }
        SubsetBuckets { offsets, masks }
    }

    fn with_sum(&self, sum: i64) -> &[Face] {
        if sum < 0 || sum as usize + 1 >= self.offsets.len() {
            return &[];
        }
        let s = sum as usize;
        &self.masks[self.offsets[s]..self.offsets[s + 1]]
    }
}

/// Precomputed data for evaluating `H̃(Δ_s)` of one semigroup at many degrees.
pub struct DegreeHomology<'a> {
    semigroup: &'a NumericalSemigroup,
    buckets: SubsetBuckets,
    apery: Vec<i64>,
    index: RefCell<CellIndex>,
}

impl<'a> DegreeHomology<'a> {
    pub fn new(semigroup: &'a NumericalSemigroup) -> Result<Self> {
        let k = semigroup.embedding_dimension();
        if k > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                vertices: k,
                max: MAX_VERTICES,
            });
        }
        let mut apery = semigroup.min_elements_mod_multiplicity();
        apery.sort_unstable();
        Ok(DegreeHomology {
            semigroup,
            buckets: SubsetBuckets::new(semigroup.generators()),
            apery,
            index: RefCell::new(CellIndex::new(k)),
        })
    }

    /// Critical cells of `Δ_s` grouped by cardinality, each group ascending.
    pub fn critical_cells(&self, degree: i64) -> Vec<Vec<Face>> {
        let k = self.semigroup.embedding_dimension();
        let mut cells: Vec<Vec<Face>> = vec![Vec::new(); k];
        if !self.semigroup.contains(degree) {
            return cells;
        }
        for &w in self.apery.iter().take_while(|&&w| w <= degree) {
            for &f in self.buckets.with_sum(degree - w) {
                cells[f.count_ones() as usize].push(f);
            }
        }
        for group in &mut cells {
            group.sort_unstable();
        }
        cells
    }

    /// `dim H̃_{i-1}(Δ_s)` indexed by `i = 0..k`.
    pub fn betti_column(&self, degree: i64, field: FieldSpec) -> Vec<usize> {
        let cells = self.critical_cells(degree);
        if cells.iter().all(Vec::is_empty) {
            return vec![0; cells.len()];
        }
        cell_homology_indexed(&cells, field, &mut self.index.borrow_mut())
    }
}

pub fn graded_betti(s: &NumericalSemigroup, field: FieldSpec) -> Result<BettiTable> {
    graded_betti_to(s, field, degree_bound(s))
}

/// Scans degrees up to `max(limit, degree_bound(s))`. A smaller limit is
/// ignored because it would drop nonzero entries.
pub fn graded_betti_to(s: &NumericalSemigroup, field: FieldSpec, limit: i64) -> Result<BettiTable> {
    let engine = DegreeHomology::new(s)?;
    let bound = limit.max(degree_bound(s));
    let mut entries = BTreeMap::new();
    for degree in s.elements_in(0, bound) {
        for (i, dim) in engine.betti_column(degree, field).into_iter().enumerate() {
            if dim > 0 {
                entries.insert((i, degree), dim);
            }
        }
    }
    Ok(BettiTable {
        generators: s.generators().to_vec(),
        field,
        entries,
        degree_bound: bound,
    })
}

/// The same table computed from the full complexes `Δ_s` and their boundary
/// matrices, without the matching. Exponential in `k`; meant for cross-checks.
pub fn graded_betti_direct(s: &NumericalSemigroup, field: FieldSpec) -> Result<BettiTable> {
    let bound = degree_bound(s);
    let mut entries = BTreeMap::new();
    for degree in s.elements_in(0, bound) {
        let complex = squarefree_divisor_complex(s, degree)?;
        for (d, dim) in reduced_homology_dims(&complex, field).iter() {
            if dim > 0 {
                entries.insert(((d + 1) as usize, degree), dim);
            }
        }
    }
    Ok(BettiTable {
        generators: s.generators().to_vec(),
        field,
        entries,
        degree_bound: bound,
    })
}
