//! Reduced simplicial homology over `Q` or `GF(p)`.
//!
//! Two routes are provided. [`reduced_homology_dims`] builds every boundary
//! matrix of the augmented chain complex and takes ranks. [`cell_homology`]
//! works on an arbitrary family of cells whose differential is the simplicial
//! boundary restricted to the family; this is what a single-vertex acyclic
//! matching leaves behind (see [`cone_reduced_homology`]) and is what the
//! Betti table computation uses.

use std::fmt;
use std::str::FromStr;

use crate::complex::{face_order_key, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{
    is_prime, rank_mod_p, rank_rational, reduce, EliminationRing, FractionFree, ModP, SparseColumn,
    SparseMatrix,
};

/// Coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn prime_field(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::Parse(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q` or `gf:<p>`, case-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "q" {
            return Ok(FieldSpec::Rationals);
        }
        let Some(p) = lower.strip_prefix("gf:") else {
            return Err(Error::Parse(format!("unknown field `{s}` (expected q or gf:<p>)")));
        };
        let p: u32 = p
            .parse()
            .map_err(|_| Error::Parse(format!("invalid prime in `{s}`")))?;
        FieldSpec::prime_field(p)
    }
}

/// Signed incidence matrix `∂_d` from `d`-faces (columns) to `(d-1)`-faces
/// (rows), both in the order of [`SimplicialComplex::faces_of_dim`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub dim: i32,
    pub rows: Vec<Face>,
    pub cols: Vec<Face>,
    pub matrix: SparseMatrix<i64>,
}

impl BoundaryMatrix {
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        self.matrix.to_dense()
    }
}

/// Sign of removing the vertex at `bit` from `face`: `(-1)^position`.
#[inline]
fn removal_sign(face: Face, bit: u32) -> i64 {
    if (face & ((1u32 << bit) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn boundary_matrix(c: &SimplicialComplex, d: i32) -> BoundaryMatrix {
    let rows = c.faces_of_dim(d - 1).to_vec();
    let cols = c.faces_of_dim(d).to_vec();
    let columns = cols
        .iter()
        .map(|&f| {
            let mut col: SparseColumn<i64> = (0..32u32)
                .filter(|b| f >> b & 1 == 1)
                .map(|b| {
                    let sub = f & !(1 << b);
                    let r = rows
                        .binary_search_by_key(&face_order_key(sub), |&g| face_order_key(g))
                        .expect("complex is downward closed");
                    (r, removal_sign(f, b))
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect();
    BoundaryMatrix {
        dim: d,
        matrix: SparseMatrix::new(rows.len(), columns),
        rows,
        cols,
    }
}

/// Whether `lower ∘ upper` is the zero matrix, where `upper` is `∂_d` and
/// `lower` is `∂_{d-1}`.
pub fn composition_vanishes(lower: &BoundaryMatrix, upper: &BoundaryMatrix) -> bool {
    assert_eq!(lower.cols, upper.rows, "boundary matrices are not consecutive");
    let mut acc: Vec<(usize, i64)> = Vec::new();
    upper.matrix.columns.iter().all(|col| {
        acc.clear();
        for &(mid, a) in col {
            acc.extend(lower.matrix.columns[mid].iter().map(|&(r, b)| (r, a * b)));
        }
        acc.sort_unstable_by_key(|e| e.0);
        acc.chunk_by(|x, y| x.0 == y.0)
            .all(|run| run.iter().map(|e| e.1).sum::<i64>() == 0)
    })
}

pub fn rank(m: &BoundaryMatrix, field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => rank_rational(&m.matrix),
        FieldSpec::PrimeField(p) => rank_mod_p(&m.matrix, p),
    }
}

/// `dim H̃_d` for `d = -1, 0, ..., top`. Empty for the void complex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyDims {
    dims: Vec<usize>,
}

impl HomologyDims {
    pub fn from_vec(dims: Vec<usize>) -> Self {
        HomologyDims { dims }
    }

    pub fn get(&self, d: i32) -> usize {
        if d < -1 {
            return 0;
        }
        self.dims.get((d + 1) as usize).copied().unwrap_or(0)
    }

    /// `(d, dim H̃_d)` for every stored degree, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.dims.iter().enumerate().map(|(i, &h)| (i as i32 - 1, h))
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&h| h == 0)
    }

    /// `Σ (-1)^d dim H̃_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(d, h)| if d.rem_euclid(2) == 0 { h as i64 } else { -(h as i64) })
            .sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }
}

/// `Σ_{d >= -1} (-1)^d f_d`.
pub fn reduced_euler_characteristic(c: &SimplicialComplex) -> i64 {
    c.f_vector()
        .iter()
        .enumerate()
        .map(|(size, &f)| if size % 2 == 1 { f as i64 } else { -(f as i64) })
        .sum()
}

/// `dim H̃_d = f_d - rank ∂_d - rank ∂_{d+1}` for `d` in `[-1, dim C]`.
pub fn reduced_homology_dims(c: &SimplicialComplex, field: FieldSpec) -> HomologyDims {
    let Some(top) = c.dimension() else {
        return HomologyDims::default();
    };
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|d| rank(&boundary_matrix(c, d), field))
        .collect();
    // ranks[d] = rank ∂_d for d >= 0; ∂_{-1} = 0
    let dims = (-1..=top)
        .map(|d| {
            let f = c.faces_of_dim(d).len();
            let down = if d >= 0 { ranks[d as usize] } else { 0 };
            let up = ranks[(d + 1) as usize];
            f - down - up
        })
        .collect();
    HomologyDims { dims }
}

/// Reduced homology after matching `F ↔ F ∪ {v}` whenever both are faces.
///
/// The matching on a single vertex is acyclic, and every gradient path
/// leaving a critical cell ends at a face containing `v`, none of which is
/// critical. The Morse complex is therefore spanned by the faces `F ∌ v` with
/// `F ∪ {v}` not a face, with the simplicial boundary restricted to them.
pub fn cone_reduced_homology(c: &SimplicialComplex, vertex: usize, field: FieldSpec) -> HomologyDims {
    let Some(top) = c.dimension() else {
        return HomologyDims::default();
    };
    let bit: Face = 1 << (vertex - 1);
    let mut cells: Vec<Vec<Face>> = vec![Vec::new(); (top + 2) as usize];
    for f in c.faces() {
        if f & bit == 0 && !c.contains(f | bit) {
            cells[f.count_ones() as usize].push(f);
        }
    }
    for group in &mut cells {
        group.sort_unstable();
    }
    HomologyDims {
        dims: cell_homology(&cells, field),
    }
}

/// Dense map from a face mask to its position within its cardinality group,
/// reused across calls so the table is allocated once.
pub struct CellIndex {
    slots: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl CellIndex {
    pub fn new(vertex_count: usize) -> Self {
        CellIndex {
            slots: vec![ABSENT; 1 << vertex_count],
        }
    }

    fn load(&mut self, cells: &[Vec<Face>]) {
        for group in cells {
            for (pos, &f) in group.iter().enumerate() {
                self.slots[f as usize] = pos as u32;
            }
        }
    }

    fn unload(&mut self, cells: &[Vec<Face>]) {
        for &f in cells.iter().flatten() {
            self.slots[f as usize] = ABSENT;
        }
    }

    #[inline]
    fn get(&self, f: Face) -> Option<usize> {
        match self.slots[f as usize] {
            ABSENT => None,
            pos => Some(pos as usize),
        }
    }
}

/// Homology of the chain complex spanned by `cells` (grouped by cardinality,
/// each group sorted ascending) with the simplicial boundary restricted to
/// the family. Entry `m` of the result is the dimension in cardinality `m`,
/// i.e. in homological degree `m - 1`.
pub fn cell_homology(cells: &[Vec<Face>], field: FieldSpec) -> Vec<usize> {
    let all = cells.iter().flatten().fold(0, |acc, &f| acc | f);
    let mut index = CellIndex::new((32 - all.leading_zeros()) as usize);
    cell_homology_indexed(cells, field, &mut index)
}

/// [`cell_homology`] with a caller-owned index covering every face mask.
pub fn cell_homology_indexed(cells: &[Vec<Face>], field: FieldSpec, index: &mut CellIndex) -> Vec<usize> {
    index.load(cells);
    let dims = match field {
        FieldSpec::Rationals => cell_homology_with(&FractionFree::<i64>::new(), cells, index)
            .or_else(|| cell_homology_with(&FractionFree::<i128>::new(), cells, index))
            .or_else(|| cell_homology_with(&FractionFree::<num_bigint::BigInt>::new(), cells, index))
            .expect("arbitrary precision never overflows"),
        FieldSpec::PrimeField(p) => {
            cell_homology_with(&ModP::new(p), cells, index).expect("modular arithmetic cannot overflow")
        }
    };
    index.unload(cells);
    dims
}

fn restricted_boundary<R: EliminationRing>(ring: &R, face: Face, index: &CellIndex) -> SparseColumn<R::Elem> {
    // Dropping higher bits gives smaller masks, so scan from the top bit down
    // to emit rows in increasing order.
    let mut col = Vec::with_capacity(face.count_ones() as usize);
    let mut rest = face;
    while rest != 0 {
        let b = 31 - rest.leading_zeros();
        rest &= !(1 << b);
        if let Some(r) = index.get(face & !(1 << b)) {
            col.push((r, ring.lift(removal_sign(face, b))));
        }
    }
    col
}

/// Processes cardinalities from the top down so that rows which became pivots
/// of `∂_{m+1}` can be skipped as columns of `∂_m`: such a column is already
/// in the span of the earlier columns of `∂_m`.
fn cell_homology_with<R: EliminationRing>(ring: &R, cells: &[Vec<Face>], index: &CellIndex) -> Option<Vec<usize>> {
    let n = cells.len();
    let mut ranks = vec![0usize; n + 1];
    let mut skip: Option<Vec<bool>> = None;
    for m in (1..n).rev() {
        let rows = &cells[m - 1];
        let columns = cells[m].iter().map(|&f| restricted_boundary(ring, f, index));
        let red = reduce(ring, rows.len(), columns, skip.as_deref())?;
        ranks[m] = red.rank;
        skip = Some(red.pivot_rows);
    }
    Some(
        (0..n)
            .map(|m| cells[m].len() - ranks[m] - ranks[m + 1])
            .collect(),
    )
}
