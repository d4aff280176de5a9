//! Reduced simplicial homology over an exact field.
//!
//! Chain groups include the empty face in degree -1, so the degree-0 boundary
//! map is the augmentation and all Betti numbers are reduced: a point has
//! none, the circle has β₁ = 1, and the empty complex `{∅}` alone carries
//! β₋₁ = 1 (exposed as a flag rather than a vector entry).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{Face, SimplicialComplex};
use crate::field::{FieldError, FieldOps, FieldSpec, PrimeField, Rationals};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("the void complex has no homology")]
    VoidComplex,
    #[error("chain dimension {k} out of range -1..={dim}")]
    DimensionOutOfRange { k: i32, dim: i32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Reduced Betti numbers `β_0 .. β_dim` over a fixed field, plus the
/// degree -1 flag that is nonzero only for the empty complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector {
    pub field: FieldSpec,
    /// `betti[k]` is the reduced Betti number in degree `k`.
    pub betti: Vec<usize>,
    /// True exactly when the complex is `{∅}`, whose only reduced homology
    /// sits in degree -1.
    pub empty_complex: bool,
}

impl BettiVector {
    /// Betti number in degree `i`; `i = -1` reads the empty-complex flag and
    /// out-of-range degrees are zero.
    pub fn get(&self, i: i32) -> usize {
        if i == -1 {
            return usize::from(self.empty_complex);
        }
        if i < 0 {
            return 0;
        }
        self.betti.get(i as usize).copied().unwrap_or(0)
    }

    /// Alternating sum `Σ (-1)^k β_k` including the degree -1 flag; equals
    /// the reduced Euler characteristic.
    pub fn alternating_sum(&self) -> i64 {
        let mut total: i64 = -(self.empty_complex as i64);
        for (k, b) in self.betti.iter().enumerate() {
            let signed = *b as i64;
            total += if k % 2 == 0 { signed } else { -signed };
        }
        total
    }
}

/// The degree-`k` boundary map as a sparse column matrix. Rows are the
/// (k-1)-faces and columns the k-faces, both in canonical order; `k = 0`
/// gives the augmentation map onto the empty face.
#[derive(Debug, Clone)]
pub struct BoundaryMatrix {
    pub k: i32,
    pub rows: Vec<Face>,
    pub cols: Vec<Face>,
    /// Per column: (row index, coefficient ±1), sorted by row index.
    pub entries: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols.len()
    }
}

/// Builds the boundary matrix from dimension `k` to `k - 1`.
pub fn boundary_matrix(
    complex: &SimplicialComplex,
    k: i32,
) -> Result<BoundaryMatrix, HomologyError> {
    if complex.is_void() {
        return Err(HomologyError::VoidComplex);
    }
    if k < 0 || k > complex.dim() {
        return Err(HomologyError::DimensionOutOfRange { k, dim: complex.dim() });
    }
    let rows = complex.faces(k - 1).to_vec();
    let cols = complex.faces(k).to_vec();
    let row_index: BTreeMap<Face, usize> =
        rows.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut entries = Vec::with_capacity(cols.len());
    for col in &cols {
        let mut column = Vec::with_capacity(col.card());
        for (j, v) in col.vertices().enumerate() {
            let row_face = col.remove(v);
            let sign = if j % 2 == 0 { 1i8 } else { -1i8 };
            let idx = row_index[&row_face];
            column.push((idx, sign));
        }
        column.sort_by_key(|&(idx, _)| idx);
        entries.push(column);
    }
    Ok(BoundaryMatrix { k, rows, cols, entries })
}

/// Rank of a sparse column matrix over `field`. Elimination picks the
/// shortest remaining column as pivot, which keeps fill-in low on boundary
/// matrices.
fn sparse_rank<F: FieldOps>(field: &F, columns: Vec<BTreeMap<usize, F::Elem>>) -> usize {
    let mut cols: Vec<BTreeMap<usize, F::Elem>> =
        columns.into_iter().filter(|c| !c.is_empty()).collect();
    let mut rank = 0;
    while !cols.is_empty() {
        // shortest column, ties broken by position for determinism
        let pivot_idx = (0..cols.len())
            .min_by_key(|&i| (cols[i].len(), i))
            .expect("nonempty");
        let pivot = cols.swap_remove(pivot_idx);
        rank += 1;
        let (&prow, pval) = pivot.iter().next().expect("pivot column is nonzero");
        let pinv = field.inv(pval);
        for col in cols.iter_mut() {
            let Some(cval) = col.get(&prow) else { continue };
            let factor = field.mul(cval, &pinv);
            for (r, pv) in &pivot {
                let delta = field.mul(&factor, pv);
                match col.remove(r) {
                    Some(existing) => {
                        let updated = field.sub(&existing, &delta);
                        if !field.is_zero(&updated) {
                            col.insert(*r, updated);
                        }
                    }
                    None => {
                        let updated = field.neg(&delta);
                        if !field.is_zero(&updated) {
                            col.insert(*r, updated);
                        }
                    }
                }
            }
            debug_assert!(!col.contains_key(&prow));
        }
        cols.retain(|c| !c.is_empty());
    }
    rank
}

fn matrix_rank_over<F: FieldOps>(field: &F, matrix: &BoundaryMatrix) -> usize {
    let columns: Vec<BTreeMap<usize, F::Elem>> = matrix
        .entries
        .iter()
        .map(|col| {
            col.iter()
                .map(|&(row, sign)| (row, field.embed_i64(sign as i64)))
                .collect()
        })
        .collect();
    sparse_rank(field, columns)
}

/// Rank of the degree-`k` boundary map over the given field.
pub fn boundary_rank(
    complex: &SimplicialComplex,
    k: i32,
    field: FieldSpec,
) -> Result<usize, HomologyError> {
    let matrix = boundary_matrix(complex, k)?;
    match field {
        FieldSpec::Rationals => Ok(matrix_rank_over(&Rationals, &matrix)),
        FieldSpec::Prime(p) => Ok(matrix_rank_over(&PrimeField::new(p)?, &matrix)),
    }
}

/// Reduced Betti numbers of the complex over the given field.
pub fn betti_numbers(
    complex: &SimplicialComplex,
    field: FieldSpec,
) -> Result<BettiVector, HomologyError> {
    if complex.is_void() {
        return Err(HomologyError::VoidComplex);
    }
    field.validate()?;
    if complex.is_empty_complex() {
        return Ok(BettiVector { field, betti: Vec::new(), empty_complex: true });
    }
    let dim = complex.dim();
    // ranks[k] = rank of the boundary map leaving degree k; one past the top
    // dimension the map is zero.
    let mut ranks = vec![0usize; (dim + 2) as usize];
    for k in 0..=dim {
        ranks[k as usize] = boundary_rank(complex, k, field)?;
    }
    let mut betti = Vec::with_capacity((dim + 1) as usize);
    for k in 0..=dim {
        let faces = complex.face_count(k);
        let cycles = faces - ranks[k as usize];
        let boundaries = ranks[(k + 1) as usize];
        debug_assert!(cycles >= boundaries);
        betti.push(cycles - boundaries);
    }
    Ok(BettiVector { field, betti, empty_complex: false })
}

/// Reduced Euler characteristic `Σ_{k ≥ -1} (-1)^k f_k`.
pub fn reduced_euler_characteristic(complex: &SimplicialComplex) -> i64 {
    let f = complex.f_vector();
    let mut total: i64 = 0;
    for (slot, count) in f.iter().enumerate() {
        // slot 0 is f_{-1}
        let signed = *count as i64;
        total += if slot % 2 == 1 { signed } else { -signed };
    }
    total
}
