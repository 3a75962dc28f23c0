//! Squarefree divisor complexes on the minimal generators.

use std::cmp::Reverse;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// Largest vertex count for which complexes are built by full subset scan.
pub const MAX_VERTICES: usize = 24;

/// A face as a bitmask: vertex `j` (1-based) is bit `j - 1`.
pub type Face = u32;

/// Sorted 1-based vertex list of a face.
pub fn face_vertices(face: Face) -> Vec<usize> {
    (0..32).filter(|b| face >> b & 1 == 1).map(|b| b + 1).collect()
}

pub fn face_from_vertices(vertices: &[usize]) -> Face {
    vertices.iter().fold(0, |acc, &v| acc | 1 << (v - 1))
}

/// Sort key realizing lexicographic order of sorted vertex lists among faces
/// of equal cardinality.
pub fn face_order_key(face: Face) -> Reverse<u32> {
    Reverse(face.reverse_bits())
}

/// A downward-closed family of faces on `vertex_count` vertices. A complex
/// with no faces at all is void; the complex `{∅}` is not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// Grouped by cardinality, each group in lexicographic order.
    by_size: Vec<Vec<Face>>,
}

impl SimplicialComplex {
    pub fn void(vertex_count: usize) -> Self {
        SimplicialComplex {
            vertex_count,
            by_size: Vec::new(),
        }
    }

    /// Builds a complex from an arbitrary face list, closing it downward.
    pub fn from_faces(vertex_count: usize, faces: impl IntoIterator<Item = Face>) -> Result<Self> {
        if vertex_count > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                vertices: vertex_count,
                max: MAX_VERTICES,
            });
        }
        let mut present = std::collections::BTreeSet::new();
        for face in faces {
            assert!(
                vertex_count == 32 || face >> vertex_count == 0,
                "face uses vertex beyond {vertex_count}"
            );
            let mut sub = face;
            loop {
                present.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & face;
            }
        }
        Ok(Self::from_sorted_set(vertex_count, present))
    }

    fn from_sorted_set(vertex_count: usize, faces: impl IntoIterator<Item = Face>) -> Self {
        let mut by_size: Vec<Vec<Face>> = Vec::new();
        for f in faces {
            let size = f.count_ones() as usize;
            if by_size.len() <= size {
                by_size.resize(size + 1, Vec::new());
            }
            by_size[size].push(f);
        }
        for group in &mut by_size {
            group.sort_by_key(|&f| face_order_key(f));
        }
        SimplicialComplex {
            vertex_count,
            by_size,
        }
    }

    /// All subsets of the vertex set.
    pub fn full_simplex(vertex_count: usize) -> Result<Self> {
        let full = if vertex_count == 32 {
            u32::MAX
        } else {
            (1u32 << vertex_count) - 1
        };
        Self::from_faces(vertex_count, [full])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn is_void(&self) -> bool {
        self.by_size.is_empty()
    }

    /// Dimension of the largest face; `-1` for `{∅}`, `None` when void.
    pub fn dimension(&self) -> Option<i32> {
        (!self.is_void()).then(|| self.by_size.len() as i32 - 2)
    }

    pub fn contains(&self, face: Face) -> bool {
        let size = face.count_ones() as usize;
        self.by_size
            .get(size)
            .is_some_and(|g| g.binary_search_by_key(&face_order_key(face), |&f| face_order_key(f)).is_ok())
    }

    /// Faces of dimension `d` (cardinality `d + 1`), lexicographic in their
    /// sorted vertex lists.
    pub fn faces_of_dim(&self, d: i32) -> &[Face] {
        if d < -1 {
            return &[];
        }
        self.by_size
            .get((d + 1) as usize)
            .map_or(&[], |g| g.as_slice())
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.by_size.iter().flatten().copied()
    }

    pub fn face_count(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    /// `f_d` for `d = -1, 0, ..., dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_size.iter().map(Vec::len).collect()
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces().all(|f| {
            (0..32)
                .filter(|b| f >> b & 1 == 1)
                .all(|b| self.contains(f & !(1 << b)))
        })
    }

    /// Faces as sorted vertex tuples, ordered by dimension then
    /// lexicographically.
    pub fn face_lists(&self) -> Vec<Vec<usize>> {
        self.faces().map(face_vertices).collect()
    }
}

/// `Δ_s`: faces are the index sets `F` with `s - Σ_{i in F} n_i ∈ S`.
pub fn squarefree_divisor_complex(s: &NumericalSemigroup, degree: i64) -> Result<SimplicialComplex> {
    let gens = s.generators();
    let k = gens.len();
    if k > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            vertices: k,
            max: MAX_VERTICES,
        });
    }
    if !s.contains(degree) {
        return Ok(SimplicialComplex::void(k));
    }
    let sums = subset_sums(gens);
    let faces = (0..sums.len() as u32).filter(|&mask| s.contains(degree - sums[mask as usize]));
    let complex = SimplicialComplex::from_sorted_set(k, faces);
    debug_assert!(complex.is_downward_closed());
    Ok(complex)
}

/// `sums[mask] = Σ_{bit j of mask} values[j]`.
pub fn subset_sums(values: &[i64]) -> Vec<i64> {
    let mut sums = vec![0i64; 1 << values.len()];
    for mask in 1..sums.len() {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + values[low];
    }
    sums
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexJson {
    pub schema_version: u32,
    pub s: i64,
    pub faces: Vec<Vec<usize>>,
}
