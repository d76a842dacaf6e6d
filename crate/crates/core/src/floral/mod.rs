//! Local orthotopal arrangements: unions of closed orthants at a point.
//!
//! Orthant `s ∈ {+1,-1}^d` is stored at index `Σ 2^j` over the positions `j`
//! (0-based, axis `j + 1`) with `s_{j+1} = -1`. Index 0 is the positive
//! orthant.

mod recognize;
mod vertex;

use std::fmt;

use thiserror::Error;

use crate::spd::{Axis, Sign, SignedSpd, Spd, SpdError};

pub use recognize::{recognize, Recognition};
pub use vertex::{
    boundary_slice, edge_cross_section, edge_direction, facet, geometric_edge_direction, residual_cross_section,
    FloralVertex,
};

/// Largest dimension for which a dense orthant table is built.
pub const MAX_ORTHANT_DIM: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FloralError {
    #[error(transparent)]
    Spd(#[from] SpdError),
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: Axis, dim: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {0} exceeds the orthant-table limit")]
    DimensionTooLarge(usize),
    #[error("edge set of a floral vertex must be exactly 1..={dim}")]
    NotVertex { dim: usize },
}

/// Pointwise operation for [`OrthantSet::combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Intersect,
    Union,
    Complement,
}

/// Membership table over all `2^dim` orthants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrthantSet {
    dim: usize,
    words: Vec<u64>,
}

impl OrthantSet {
    pub fn empty(dim: usize) -> OrthantSet {
        assert!(dim <= MAX_ORTHANT_DIM, "orthant table too large");
        let len = (1usize << dim).div_ceil(64);
        OrthantSet {
            dim,
            words: vec![0; len],
        }
    }

    pub fn full(dim: usize) -> OrthantSet {
        OrthantSet::empty(dim).complement()
    }

    pub fn from_fn(dim: usize, mut member: impl FnMut(usize) -> bool) -> OrthantSet {
        let mut out = OrthantSet::empty(dim);
        for idx in 0..out.size() {
            if member(idx) {
                out.insert(idx);
            }
        }
        out
    }

    pub fn from_members(dim: usize, members: impl IntoIterator<Item = usize>) -> OrthantSet {
        let mut out = OrthantSet::empty(dim);
        members.into_iter().for_each(|idx| out.insert(idx));
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of orthants, `2^dim`.
    pub fn size(&self) -> usize {
        1 << self.dim
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn contains_signs(&self, signs: &[Sign]) -> bool {
        self.contains(index_of(signs))
    }

    pub fn insert(&mut self, idx: usize) {
        assert!(idx < self.size(), "orthant index out of range");
        self.words[idx / 64] |= 1 << (idx % 64);
    }

    pub fn remove(&mut self, idx: usize) {
        self.words[idx / 64] &= !(1 << (idx % 64));
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size()).filter(|&i| self.contains(i))
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.complement().is_empty()
    }

    /// Occupied count `μ_d`.
    pub fn mu(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Signed count `τ_d`: the sum over occupied orthants of `Π s_i`.
    pub fn tau(&self) -> i64 {
        self.members().map(|i| orthant_sign(i).value()).sum()
    }

    pub fn complement(&self) -> OrthantSet {
        let mut out = self.clone();
        out.words.iter_mut().for_each(|w| *w = !*w);
        out.mask_tail();
        out
    }

    fn mask_tail(&mut self) {
        let used = self.size() % 64;
        if used != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << used) - 1;
        }
    }

    pub fn combine(&self, other: &OrthantSet, op: SetOp) -> Result<OrthantSet, FloralError> {
        if op == SetOp::Complement {
            return Ok(self.complement());
        }
        if self.dim != other.dim {
            return Err(FloralError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| if op == SetOp::Union { a | b } else { a & b })
            .collect();
        Ok(OrthantSet { dim: self.dim, words })
    }

    /// The `(dim-1)`-dimensional set of orthants `t` such that `t` with
    /// `side` inserted at `axis` is occupied.
    pub fn slice(&self, axis: Axis, side: Sign) -> Result<OrthantSet, FloralError> {
        self.check_axis(axis)?;
        let pos = axis - 1;
        let bit = usize::from(side == Sign::Neg) << pos;
        Ok(OrthantSet::from_fn(self.dim - 1, |t| {
            self.contains(insert_bit(t, pos) | bit)
        }))
    }

    /// Axis `i` is essential iff flipping `s_i` changes membership somewhere.
    pub fn is_essential(&self, axis: Axis) -> Result<bool, FloralError> {
        self.check_axis(axis)?;
        let flip = 1 << (axis - 1);
        Ok((0..self.size()).any(|i| self.contains(i) != self.contains(i ^ flip)))
    }

    pub fn essential_axes(&self) -> Vec<Axis> {
        (1..=self.dim)
            .filter(|&a| self.is_essential(a).expect("in range"))
            .collect()
    }

    fn check_axis(&self, axis: Axis) -> Result<(), FloralError> {
        if axis == 0 || axis > self.dim {
            Err(FloralError::AxisOutOfRange { axis, dim: self.dim })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for OrthantSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.members().map(|i| format_signs(&signs_of(i, self.dim))).collect();
        write!(f, "OrthantSet(d={}, {{{}}})", self.dim, rows.join(" "))
    }
}

fn format_signs(signs: &[Sign]) -> String {
    signs.iter().map(|s| if *s == Sign::Pos { '+' } else { '-' }).collect()
}

/// Insert a zero bit at position `pos`.
fn insert_bit(t: usize, pos: usize) -> usize {
    let low = t & ((1 << pos) - 1);
    ((t >> pos) << (pos + 1)) | low
}

pub fn index_of(signs: &[Sign]) -> usize {
    signs
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == Sign::Neg)
        .map(|(j, _)| 1 << j)
        .sum()
}

pub fn signs_of(idx: usize, dim: usize) -> Vec<Sign> {
    (0..dim)
        .map(|j| if idx >> j & 1 == 1 { Sign::Neg } else { Sign::Pos })
        .collect()
}

/// `Π s_i` of the orthant at `idx`.
pub fn orthant_sign(idx: usize) -> Sign {
    Sign::parity(idx.count_ones() as usize)
}

/// `(μ_d, τ_d)` of an orthant set.
pub fn orthant_counts(orthants: &OrthantSet) -> (u64, i64) {
    (orthants.mu(), orthants.tau())
}

/// Evaluate a signed diagram on every orthant of `R^dim`; axes outside the
/// edge set are free.
pub fn orthants_of(spd: &SignedSpd, dim: usize) -> Result<OrthantSet, FloralError> {
    if dim > MAX_ORTHANT_DIM {
        return Err(FloralError::DimensionTooLarge(dim));
    }
    if let Some(&axis) = spd.signs().keys().next_back().filter(|&&a| a > dim) {
        return Err(FloralError::AxisOutOfRange { axis, dim });
    }
    // Orthant `idx` satisfies literal `a` iff its bit for `a` matches `neg`.
    let neg: u64 = spd
        .signs()
        .iter()
        .filter(|(_, s)| **s == Sign::Neg)
        .map(|(a, _)| 1u64 << (a - 1))
        .sum();
    Ok(OrthantSet::from_fn(dim, |idx| eval(spd.shape(), idx as u64 ^ neg)))
}

/// Evaluate with literal `a` true iff bit `a - 1` of `flipped` is clear.
fn eval(node: &Spd, flipped: u64) -> bool {
    match node {
        Spd::Leaf(a) => flipped >> (a - 1) & 1 == 0,
        Spd::Series(c) => c.iter().all(|x| eval(x, flipped)),
        Spd::Parallel(c) => c.iter().any(|x| eval(x, flipped)),
    }
}
