//! Exact rank of sparse matrices by column reduction.
//!
//! The reduction is generic over an [`EliminationRing`]: fraction-free
//! integer arithmetic over any [`ExactInt`] scalar (rank over `Q`), or
//! arithmetic modulo a prime (rank over `GF(p)`). Integer scalars with fixed
//! width report overflow instead of wrapping, so callers can retry with a
//! wider type.

use std::fmt::Debug;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, FromPrimitive, Signed, Zero};

/// Nonzero entries of a column as `(row, value)`, strictly increasing in row.
pub type SparseColumn<T> = Vec<(usize, T)>;

/// Column-major sparse matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    pub nrows: usize,
    pub columns: Vec<SparseColumn<T>>,
}

impl<T: Clone> SparseMatrix<T> {
    pub fn new(nrows: usize, columns: Vec<SparseColumn<T>>) -> Self {
        SparseMatrix { nrows, columns }
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix {
            nrows: self.nrows,
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, f(v))).collect())
                .collect(),
        }
    }
}

impl<T: Clone + Zero> SparseMatrix<T> {
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut dense = vec![vec![T::zero(); self.columns.len()]; self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                dense[*r][j] = v.clone();
            }
        }
        dense
    }
}

/// Integer scalars usable for fraction-free elimination.
pub trait ExactInt:
    Integer + Signed + Clone + Debug + CheckedMul + CheckedSub + FromPrimitive
{
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + Debug + CheckedMul + CheckedSub + FromPrimitive
{
}

/// Arithmetic needed to cancel the lowest entry of one column against a
/// pivot column with the same lowest row.
pub trait EliminationRing {
    type Elem: Clone + Debug;

    fn lift(&self, v: i64) -> Self::Elem;

    /// Brings a freshly found pivot column into canonical form.
    fn normalize(&self, column: &mut SparseColumn<Self::Elem>);

    /// A nonzero multiple of `target` plus a multiple of `pivot` whose entry
    /// in the shared lowest row vanishes. `None` signals overflow.
    fn cancel(
        &self,
        target: &[(usize, Self::Elem)],
        pivot: &[(usize, Self::Elem)],
    ) -> Option<SparseColumn<Self::Elem>>;
}

/// Integer-preserving elimination: `target <- b * target - a * pivot` scaled
/// by `1 / gcd(a, b)`, followed by removal of the column content.
#[derive(Debug, Clone, Copy, Default)]
pub struct FractionFree<T>(PhantomData<T>);

impl<T> FractionFree<T> {
    pub fn new() -> Self {
        FractionFree(PhantomData)
    }
}

impl<T: ExactInt> EliminationRing for FractionFree<T> {
    type Elem = T;

    fn lift(&self, v: i64) -> T {
        T::from_i64(v).expect("small integer fits every scalar")
    }

    fn normalize(&self, column: &mut SparseColumn<T>) {
        let content = column
            .iter()
            .fold(T::zero(), |acc, (_, v)| acc.gcd(v));
        let flip = column.last().is_some_and(|(_, v)| v.is_negative());
        if content.is_zero() {
            return;
        }
        for (_, v) in column.iter_mut() {
            *v = v.div_floor(&content);
            if flip {
                *v = -v.clone();
            }
        }
    }

    fn cancel(&self, target: &[(usize, T)], pivot: &[(usize, T)]) -> Option<SparseColumn<T>> {
        let a = &target.last()?.1;
        let b = &pivot.last()?.1;
        let g = a.gcd(b);
        let ta = b.div_floor(&g);
        let pa = a.div_floor(&g);
        let mut out = Vec::with_capacity(target.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < target.len() || j < pivot.len() {
            let ri = target.get(i).map_or(usize::MAX, |e| e.0);
            let rj = pivot.get(j).map_or(usize::MAX, |e| e.0);
            let (row, value) = if ri < rj {
                i += 1;
                (ri, target[i - 1].1.checked_mul(&ta)?)
            } else if rj < ri {
                j += 1;
                (rj, T::zero().checked_sub(&pivot[j - 1].1.checked_mul(&pa)?)?)
            } else {
                i += 1;
                j += 1;
                let lhs = target[i - 1].1.checked_mul(&ta)?;
                let rhs = pivot[j - 1].1.checked_mul(&pa)?;
                (ri, lhs.checked_sub(&rhs)?)
            };
            if !value.is_zero() {
                out.push((row, value));
            }
        }
        let content = out.iter().fold(T::zero(), |acc, (_, v)| acc.gcd(v));
        if !content.is_zero() && !content.is_one() {
            for (_, v) in out.iter_mut() {
                *v = v.div_floor(&content);
            }
        }
        Some(out)
    }
}

/// Arithmetic in `GF(p)` for a prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModP {
    p: u64,
}

impl ModP {
    pub fn new(p: u32) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        ModP { p: p as u64 }
    }

    pub fn modulus(&self) -> u32 {
        self.p as u32
    }

    fn inv(&self, a: u32) -> u32 {
        // Fermat: a^(p-2)
        let mut result = 1u64;
        let mut base = a as u64 % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        result as u32
    }
}

impl EliminationRing for ModP {
    type Elem = u32;

    fn lift(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn normalize(&self, column: &mut SparseColumn<u32>) {
        if let Some(&(_, low)) = column.last() {
            if low != 1 {
                let inv = self.inv(low) as u64;
                for (_, v) in column.iter_mut() {
                    *v = (*v as u64 * inv % self.p) as u32;
                }
            }
        }
    }

    fn cancel(&self, target: &[(usize, u32)], pivot: &[(usize, u32)]) -> Option<SparseColumn<u32>> {
        let a = target.last()?.1 as u64;
        let b = pivot.last()?.1 as u64;
        // target - (a / b) pivot
        let factor = if b == 1 { a } else { a * self.inv(b as u32) as u64 % self.p };
        let neg = (self.p - factor) % self.p;
        let mut out = Vec::with_capacity(target.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < target.len() || j < pivot.len() {
            let ri = target.get(i).map_or(usize::MAX, |e| e.0);
            let rj = pivot.get(j).map_or(usize::MAX, |e| e.0);
            let (row, value) = if ri < rj {
                i += 1;
                (ri, target[i - 1].1 as u64)
            } else if rj < ri {
                j += 1;
                (rj, pivot[j - 1].1 as u64 * neg % self.p)
            } else {
                i += 1;
                j += 1;
                (ri, (target[i - 1].1 as u64 + pivot[j - 1].1 as u64 * neg) % self.p)
            };
            if value != 0 {
                out.push((row, value as u32));
            }
        }
        Some(out)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Outcome of reducing the columns of one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub rank: usize,
    /// `pivot_rows[r]` is set when some reduced column has lowest row `r`.
    pub pivot_rows: Vec<bool>,
}

/// Left-to-right column reduction. Columns flagged in `skip` are known to
/// reduce to zero and are not processed. Returns `None` on overflow.
///
/// Pivots are chosen deterministically: each column is reduced against the
/// earlier column owning its lowest nonzero row.
pub fn reduce<R: EliminationRing>(
    ring: &R,
    nrows: usize,
    columns: impl IntoIterator<Item = SparseColumn<R::Elem>>,
    skip: Option<&[bool]>,
) -> Option<Reduction> {
    let mut owner: Vec<Option<usize>> = vec![None; nrows];
    let mut pivots: Vec<SparseColumn<R::Elem>> = Vec::new();
    for (idx, mut col) in columns.into_iter().enumerate() {
        if skip.is_some_and(|s| s[idx]) {
            continue;
        }
        while let Some(&(low, _)) = col.last() {
            match owner[low] {
                Some(p) => col = ring.cancel(&col, &pivots[p])?,
                None => {
                    ring.normalize(&mut col);
                    owner[low] = Some(pivots.len());
                    pivots.push(col);
                    break;
                }
            }
        }
    }
    Some(Reduction {
        rank: pivots.len(),
        pivot_rows: owner.iter().map(Option::is_some).collect(),
    })
}

/// Rank over `GF(p)`.
pub fn rank_mod_p(matrix: &SparseMatrix<i64>, p: u32) -> usize {
    let ring = ModP::new(p);
    let cols = matrix
        .columns
        .iter()
        .map(|c| reduce_entries(c.iter().map(|(r, v)| (*r, ring.lift(*v)))));
    reduce(&ring, matrix.nrows, cols, None)
        .expect("modular arithmetic cannot overflow")
        .rank
}

/// Rank over `Q` with a fixed-width integer scalar; `None` on overflow.
pub fn rank_fraction_free<T: ExactInt>(matrix: &SparseMatrix<T>) -> Option<usize> {
    let ring = FractionFree::<T>::new();
    reduce(&ring, matrix.nrows, matrix.columns.iter().cloned(), None).map(|r| r.rank)
}

/// Rank over `Q`: fraction-free elimination in `i64`, widened to `i128` and
/// then to arbitrary precision if intermediate entries overflow.
pub fn rank_rational(matrix: &SparseMatrix<i64>) -> usize {
    if let Some(r) = rank_fraction_free(matrix) {
        return r;
    }
    if let Some(r) = rank_fraction_free(&matrix.map(|&v| v as i128)) {
        return r;
    }
    rank_fraction_free(&matrix.map(|&v| BigInt::from(v))).expect("arbitrary precision never overflows")
}

fn reduce_entries<T: Zero>(it: impl Iterator<Item = (usize, T)>) -> SparseColumn<T> {
    it.filter(|(_, v)| !v.is_zero()).collect()
}

/// Builds a sparse matrix from dense rows, dropping zeros.
pub fn from_dense(rows: &[Vec<i64>]) -> SparseMatrix<i64> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let columns = (0..ncols)
        .map(|j| (0..nrows).filter(|&i| rows[i][j] != 0).map(|i| (i, rows[i][j])).collect())
        .collect();
    SparseMatrix { nrows, columns }
}
