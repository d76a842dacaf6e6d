//! Integral and rational orthogonal polytopes.
//!
//! An [`IntegralOrthotope`] is stored as a rectilinear grid: per axis, the
//! sorted coordinates of the hyperplanes that bound some cell, plus an
//! occupancy bit for every grid cell. The grid is kept minimal (no empty
//! border slabs, no breakpoint whose two neighbouring layers agree), so two
//! orthotopes are equal iff they cover the same set at the same scale.
//!
//! Coordinates are integers at the orthotope's scale `n`: the polytope is
//! `(1/n)` times the stored union. Points are addressed on the doubled lattice
//! (half-integers at scale `n` become integers).

mod classify;
mod faces;
mod measure;
mod ops;
mod skeleton;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_rational::Rational64;
use thiserror::Error;

use crate::floral::FloralError;
use crate::spd::Axis;

pub use classify::{GenericCheck, PointClass, VertexCensus};
pub use faces::{Face, FacePoset};
pub use measure::{EulerMethod, VolumeMethod};
pub use ops::LatticeOp;
pub use skeleton::{SkeletonArc, SkeletonGraph, SkeletonNode};

use classify::PointGrid;

/// Largest number of grid points (on the doubled grid) an orthotope may have.
pub const MAX_GRID_POINTS: u128 = 1 << 25;

/// Largest absolute coordinate accepted at working scale.
pub const MAX_COORD: i64 = 1 << 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrthotopeError {
    #[error("box {index} is degenerate: lo must be < hi on every axis")]
    DegenerateBox { index: usize },
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("scale must be a positive integer")]
    InvalidScale,
    #[error("coordinate {0} exceeds the supported range")]
    CoordinateRange(i64),
    #[error("grid of {points} points exceeds the supported size")]
    TooLarge { points: u128 },
    #[error("orthotope is not generic; degenerate point {}", format_point(.witness))]
    NotGeneric { witness: Vec<Rational64> },
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: Axis, dim: usize },
    #[error("point is not on the half-integer lattice at scale {scale}")]
    OffLattice { scale: u64 },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error(transparent)]
    Floral(#[from] FloralError),
}

pub(crate) fn format_point(p: &[Rational64]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// A closed axis-aligned box `[lo, hi]` in integer coordinates.
pub type IntBox = (Vec<i64>, Vec<i64>);

/// A finite union of unit cells, at scale `n`.
#[derive(Clone)]
pub struct IntegralOrthotope {
    dim: usize,
    scale: u64,
    breaks: Vec<Vec<i64>>,
    occupied: Vec<u64>,
    cell_shape: CellShape,
    grid: OnceLock<Arc<PointGrid>>,
}

impl PartialEq for IntegralOrthotope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.scale == other.scale
            && self.breaks == other.breaks
            && self.occupied == other.occupied
    }
}

impl Eq for IntegralOrthotope {}

impl fmt::Debug for IntegralOrthotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegralOrthotope")
            .field("dim", &self.dim)
            .field("scale", &self.scale)
            .field("boxes", &self.boxes())
            .finish()
    }
}

impl IntegralOrthotope {
    pub fn empty(dim: usize, scale: u64) -> IntegralOrthotope {
        IntegralOrthotope::from_boxes(dim, &[], scale).expect("empty orthotope")
    }

    /// Union of closed boxes; each must be full-dimensional.
    pub fn from_boxes(dim: usize, boxes: &[IntBox], scale: u64) -> Result<IntegralOrthotope, OrthotopeError> {
        if scale == 0 {
            return Err(OrthotopeError::InvalidScale);
        }
        for (index, (lo, hi)) in boxes.iter().enumerate() {
            for v in [lo, hi] {
                if v.len() != dim {
                    return Err(OrthotopeError::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
                if let Some(&c) = v.iter().find(|c| c.abs() > MAX_COORD) {
                    return Err(OrthotopeError::CoordinateRange(c));
                }
            }
            if lo.iter().zip(hi).any(|(a, b)| a >= b) {
                return Err(OrthotopeError::DegenerateBox { index });
            }
        }
        let mut breaks: Vec<Vec<i64>> = vec![Vec::new(); dim];
        for (lo, hi) in boxes {
            for j in 0..dim {
                breaks[j].push(lo[j]);
                breaks[j].push(hi[j]);
            }
        }
        for b in &mut breaks {
            b.sort_unstable();
            b.dedup();
        }
        let shape = CellShape::of(&breaks);
        check_size(&breaks)?;
        let mut bits = BitSet::new(shape.total());
        for (lo, hi) in boxes {
            let ranges: Vec<(usize, usize)> = (0..dim)
                .map(|j| (slab_of(&breaks[j], lo[j]), slab_of(&breaks[j], hi[j])))
                .collect();
            for_each_index(&ranges, |idx| bits.set(shape.flat(idx)));
        }
        Ok(IntegralOrthotope::canonical(dim, scale, breaks, bits))
    }

    /// Union of the unit cells with the given min-corners.
    pub fn from_cells(dim: usize, cells: &[Vec<i64>], scale: u64) -> Result<IntegralOrthotope, OrthotopeError> {
        let boxes: Vec<IntBox> = cells
            .iter()
            .map(|c| (c.clone(), c.iter().map(|x| x + 1).collect()))
            .collect();
        IntegralOrthotope::from_boxes(dim, &boxes, scale)
    }

    /// Build from a grid and occupancy predicate over grid cells.
    pub(crate) fn from_grid(
        dim: usize,
        scale: u64,
        breaks: Vec<Vec<i64>>,
        mut member: impl FnMut(&[usize]) -> bool,
    ) -> Result<IntegralOrthotope, OrthotopeError> {
        check_size(&breaks)?;
        let shape = CellShape::of(&breaks);
        let mut bits = BitSet::new(shape.total());
        let ranges: Vec<(usize, usize)> = shape.dims.iter().map(|&n| (0, n)).collect();
        for_each_index(&ranges, |idx| {
            if member(idx) {
                bits.set(shape.flat(idx));
            }
        });
        Ok(IntegralOrthotope::canonical(dim, scale, breaks, bits))
    }

    fn canonical(dim: usize, scale: u64, mut breaks: Vec<Vec<i64>>, mut bits: BitSet) -> IntegralOrthotope {
        if dim > 0 && bits.is_empty() {
            breaks = vec![Vec::new(); dim];
            bits = BitSet::new(0);
        }
        if dim > 0 && !bits.is_empty() {
            for axis in 0..dim {
                let shape = CellShape::of(&breaks);
                let n = shape.dims[axis];
                // Keep a slab if it is occupied somewhere and differs from its
                // kept predecessor; a dropped slab merges into the previous one.
                let used: Vec<bool> = (0..n).map(|k| shape.layer_any(&bits, axis, k)).collect();
                let first = used.iter().position(|u| *u).expect("non-empty");
                let last = used.iter().rposition(|u| *u).expect("non-empty");
                let mut kept = vec![first];
                for k in first + 1..=last {
                    if !shape.layers_equal(&bits, axis, *kept.last().expect("kept"), k) {
                        kept.push(k);
                    }
                }
                let b = &breaks[axis];
                let mut nb: Vec<i64> = kept.iter().map(|&k| b[k]).collect();
                nb.push(b[last + 1]);
                bits = shape.select_layers(&bits, axis, &kept);
                breaks[axis] = nb;
            }
        }
        IntegralOrthotope {
            dim,
            scale,
            cell_shape: CellShape::of(&breaks),
            breaks,
            occupied: bits.words,
            grid: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn is_empty(&self) -> bool {
        self.occupied.iter().all(|w| *w == 0)
    }

    /// Sorted hyperplane coordinates per axis (0-based axis index).
    pub fn breakpoints(&self) -> &[Vec<i64>] {
        &self.breaks
    }

    /// Bounding box `(lo, hi)` at working scale; `None` when empty.
    pub fn bounding_box(&self) -> Option<IntBox> {
        if self.is_empty() {
            return None;
        }
        Some((
            self.breaks.iter().map(|b| b[0]).collect(),
            self.breaks.iter().map(|b| *b.last().expect("breaks")).collect(),
        ))
    }

    pub(crate) fn shape(&self) -> &CellShape {
        &self.cell_shape
    }

    pub fn cell_occupied(&self, idx: &[usize]) -> bool {
        self.flat_occupied(self.cell_shape.flat(idx))
    }

    pub(crate) fn flat_occupied(&self, flat: usize) -> bool {
        self.occupied[flat / 64] >> (flat % 64) & 1 == 1
    }

    /// Occupied grid cells as closed boxes, in lexicographic order.
    pub fn boxes(&self) -> Vec<IntBox> {
        let shape = self.shape();
        let mut out = Vec::new();
        let ranges: Vec<(usize, usize)> = shape.dims.iter().map(|&n| (0, n)).collect();
        for_each_index(&ranges, |idx| {
            if self.cell_occupied(idx) {
                let lo = idx.iter().enumerate().map(|(j, &k)| self.breaks[j][k]).collect();
                let hi = idx.iter().enumerate().map(|(j, &k)| self.breaks[j][k + 1]).collect();
                out.push((lo, hi));
            }
        });
        out
    }

    /// Number of unit cells at working scale.
    pub fn cell_count(&self) -> u128 {
        self.boxes()
            .iter()
            .map(|(lo, hi)| lo.iter().zip(hi).map(|(a, b)| (b - a) as u128).product::<u128>())
            .sum()
    }

    /// Unit cells (min-corners) at working scale, sorted. Expands the grid;
    /// intended for small inputs.
    pub fn cells(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for (lo, hi) in self.boxes() {
            let ranges: Vec<(usize, usize)> = (0..self.dim).map(|j| (0, (hi[j] - lo[j]) as usize)).collect();
            for_each_index(&ranges, |off| {
                out.push(off.iter().zip(&lo).map(|(o, l)| l + *o as i64).collect());
            });
        }
        out.sort();
        out
    }

    /// The same set at scale `scale`, which must be a multiple of the
    /// current one.
    pub fn with_scale(&self, scale: u64) -> Result<IntegralOrthotope, OrthotopeError> {
        if scale == 0 || scale % self.scale != 0 {
            return Err(OrthotopeError::InvalidScale);
        }
        let f = (scale / self.scale) as i64;
        if let Some(c) = self.breaks.iter().flatten().find(|c| c.abs() * f > MAX_COORD) {
            return Err(OrthotopeError::CoordinateRange(*c * f));
        }
        Ok(IntegralOrthotope {
            dim: self.dim,
            scale,
            breaks: self.breaks.iter().map(|b| b.iter().map(|c| c * f).collect()).collect(),
            occupied: self.occupied.clone(),
            cell_shape: self.cell_shape.clone(),
            grid: OnceLock::new(),
        })
    }

    /// True coordinates of a point given on the doubled lattice.
    pub fn point_coords(&self, doubled: &[i64]) -> Vec<Rational64> {
        doubled
            .iter()
            .map(|&p| Rational64::new(p, 2 * self.scale as i64))
            .collect()
    }

    /// Doubled-lattice coordinates of a true point; fails off the lattice.
    pub fn doubled_point(&self, point: &[Rational64]) -> Result<Vec<i64>, OrthotopeError> {
        if point.len() != self.dim {
            return Err(OrthotopeError::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        point
            .iter()
            .map(|x| {
                let v = *x * Rational64::from_integer(2 * self.scale as i64);
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(OrthotopeError::OffLattice { scale: self.scale })
                }
            })
            .collect()
    }

    pub(crate) fn point_grid(&self) -> &PointGrid {
        self.grid.get_or_init(|| Arc::new(PointGrid::build(self)))
    }
}

fn check_size(breaks: &[Vec<i64>]) -> Result<(), OrthotopeError> {
    let points: u128 = breaks
        .iter()
        .map(|b| (2 * b.len()).saturating_sub(1) as u128)
        .try_fold(1u128, |acc, n| acc.checked_mul(n.max(1)))
        .unwrap_or(u128::MAX);
    if points > MAX_GRID_POINTS {
        Err(OrthotopeError::TooLarge { points })
    } else {
        Ok(())
    }
}

/// Index of the slab starting at breakpoint `c`.
fn slab_of(breaks: &[i64], c: i64) -> usize {
    breaks.binary_search(&c).expect("coordinate is a breakpoint")
}

/// Call `f` on every index tuple in the product of half-open ranges, in
/// lexicographic order.
pub fn for_each_index(ranges: &[(usize, usize)], mut f: impl FnMut(&[usize])) {
    if ranges.iter().any(|(a, b)| a >= b) {
        return;
    }
    let mut idx: Vec<usize> = ranges.iter().map(|r| r.0).collect();
    loop {
        f(&idx);
        let mut j = ranges.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < ranges[j].1 {
                break;
            }
            idx[j] = ranges[j].0;
        }
    }
}

#[derive(Clone)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> BitSet {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }
}

/// Row-major layout of grid cells; the last axis varies fastest.
#[derive(Debug, Clone)]
pub(crate) struct CellShape {
    pub(crate) dims: Vec<usize>,
    pub(crate) strides: Vec<usize>,
}

impl CellShape {
    fn of(breaks: &[Vec<i64>]) -> CellShape {
        CellShape::from_dims(breaks.iter().map(|b| b.len().saturating_sub(1)).collect())
    }

    pub(crate) fn from_dims(dims: Vec<usize>) -> CellShape {
        let mut strides = vec![1; dims.len()];
        for j in (0..dims.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * dims[j + 1];
        }
        CellShape { dims, strides }
    }

    pub(crate) fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub(crate) fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    fn layer(&self, axis: usize, k: usize) -> impl Iterator<Item = usize> + '_ {
        let inner = self.strides[axis];
        let outer: usize = self.dims[..axis].iter().product();
        let block = inner * self.dims[axis];
        (0..outer).flat_map(move |o| (0..inner).map(move |i| o * block + k * inner + i))
    }

    fn layer_any(&self, bits: &BitSet, axis: usize, k: usize) -> bool {
        self.layer(axis, k).any(|i| bits.get(i))
    }

    fn layers_equal(&self, bits: &BitSet, axis: usize, a: usize, b: usize) -> bool {
        self.layer(axis, a)
            .zip(self.layer(axis, b))
            .all(|(x, y)| bits.get(x) == bits.get(y))
    }

    fn select_layers(&self, bits: &BitSet, axis: usize, kept: &[usize]) -> BitSet {
        let mut dims = self.dims.clone();
        dims[axis] = kept.len();
        let out_shape = CellShape::from_dims(dims);
        let mut out = BitSet::new(out_shape.total());
        for (new_k, &old_k) in kept.iter().enumerate() {
            for (x, y) in self.layer(axis, old_k).zip(out_shape.layer(axis, new_k)) {
                if bits.get(x) {
                    out.set(y);
                }
            }
        }
        out
    }
}
