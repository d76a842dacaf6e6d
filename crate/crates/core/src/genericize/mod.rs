//! Constructing generic orthotopes: box thickening of unit-cube faces,
//! random unions of boxes with distinct hyperplanes, and the L∞ Hausdorff
//! distance used to bound the approximation error.

mod hausdorff;
mod random;

use num_rational::Rational64;
use thiserror::Error;

use crate::lattice::{IntBox, IntegralOrthotope, OrthotopeError};

pub use hausdorff::{hausdorff_boxes, hausdorff_distance, BoxUnion};
pub use random::{random_generic, random_generic_with_pool, Lcg};

/// Largest working scale `thicken` will choose.
pub const MAX_THICKEN_SCALE: i64 = 1 << 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenericizeError {
    #[error("no faces given")]
    NoFaces,
    #[error("bound must be positive")]
    NonPositiveBound,
    #[error("face {index} is not a face of a unit cube of dimension {dim}")]
    InvalidFace { index: usize, dim: usize },
    #[error("extent {extent} cannot host {needed} distinct coordinates per axis")]
    ExtentTooSmall { needed: usize, extent: i64 },
    #[error("box count must be at least 1")]
    NoBoxes,
    #[error("required scale exceeds {MAX_THICKEN_SCALE}")]
    ScaleOverflow,
    #[error("distance undefined for an empty set")]
    EmptySet,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error(transparent)]
    Orthotope(#[from] OrthotopeError),
}

/// The face `corner + f` of the unit cube at `corner`: coordinate `i` ranges
/// over `[corner_i, corner_i + 1]` when `span[i]`, else is fixed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CubeFace {
    pub corner: Vec<i64>,
    pub span: Vec<bool>,
}

impl CubeFace {
    /// From closed bounds with `hi_i - lo_i ∈ {0, 1}`.
    pub fn from_bounds(lo: &[i64], hi: &[i64]) -> Option<CubeFace> {
        if lo.len() != hi.len() || lo.iter().zip(hi).any(|(a, b)| !(0..=1).contains(&(b - a))) {
            return None;
        }
        Some(CubeFace {
            corner: lo.to_vec(),
            span: lo.iter().zip(hi).map(|(a, b)| b > a).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.span.iter().filter(|s| **s).count()
    }

    pub fn upper(&self) -> Vec<i64> {
        self.corner
            .iter()
            .zip(&self.span)
            .map(|(c, s)| c + i64::from(*s))
            .collect()
    }
}

/// Outward pads of every thickened box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadSchedule {
    /// Working scale of the output.
    pub scale: i64,
    /// Per face, per axis: `(low pad, high pad)` in true units.
    pub pads: Vec<Vec<(Rational64, Rational64)>>,
    /// The thickened boxes at `scale`.
    pub boxes: Vec<IntBox>,
}

impl PadSchedule {
    pub fn max_pad(&self) -> Rational64 {
        self.pads
            .iter()
            .flatten()
            .flat_map(|(a, b)| [*a, *b])
            .max()
            .unwrap_or_else(|| Rational64::from_integer(0))
    }

    /// No two boxes share a supporting hyperplane.
    pub fn hyperplanes_distinct(&self) -> bool {
        let dim = self.boxes.first().map_or(0, |b| b.0.len());
        (0..dim).all(|j| {
            let mut coords: Vec<i64> = self.boxes.iter().flat_map(|(lo, hi)| [lo[j], hi[j]]).collect();
            let n = coords.len();
            coords.sort_unstable();
            coords.dedup();
            coords.len() == n
        })
    }
}

/// Thicken each face into a box whose interior contains it, with pads below
/// `min(ε, 1) / 2` and no supporting hyperplane shared between boxes.
///
/// On each axis the `2N` box sides are ranked by (coordinate, side, face)
/// and the side of rank `r` moves outward by `r / m`, where `m` is the least
/// power of two with `m · min(ε, 1) > 4N`.
#[allow(clippy::needless_range_loop)]
pub fn thicken(
    dim: usize,
    faces: &[CubeFace],
    eps: Rational64,
) -> Result<(IntegralOrthotope, PadSchedule), GenericizeError> {
    if faces.is_empty() {
        return Err(GenericizeError::NoFaces);
    }
    if eps <= Rational64::from_integer(0) {
        return Err(GenericizeError::NonPositiveBound);
    }
    for (index, f) in faces.iter().enumerate() {
        if f.corner.len() != dim || f.span.len() != dim {
            return Err(GenericizeError::InvalidFace { index, dim });
        }
    }
    let e = eps.min(Rational64::from_integer(1));
    let sides = 4 * faces.len() as i64;
    let mut m: i64 = 1;
    while Rational64::from_integer(m) * e <= Rational64::from_integer(sides) {
        m *= 2;
        if m > MAX_THICKEN_SCALE {
            return Err(GenericizeError::ScaleOverflow);
        }
    }
    let mut pads = vec![vec![(Rational64::from_integer(0), Rational64::from_integer(0)); dim]; faces.len()];
    let mut boxes: Vec<IntBox> = faces
        .iter()
        .map(|f| {
            (
                f.corner.iter().map(|c| c * m).collect(),
                f.upper().iter().map(|c| c * m).collect(),
            )
        })
        .collect();
    for j in 0..dim {
        // (coordinate, side, face); side 0 = low, 1 = high.
        let mut planes: Vec<(i64, u8, usize)> = faces
            .iter()
            .enumerate()
            .flat_map(|(i, f)| [(f.corner[j], 0, i), (f.upper()[j], 1, i)])
            .collect();
        planes.sort_unstable();
        for (rank, &(_, side, i)) in planes.iter().enumerate() {
            let r = rank as i64 + 1;
            let pad = Rational64::new(r, m);
            if side == 0 {
                boxes[i].0[j] -= r;
                pads[i][j].0 = pad;
            } else {
                boxes[i].1[j] += r;
                pads[i][j].1 = pad;
            }
        }
    }
    let orthotope = IntegralOrthotope::from_boxes(dim, &boxes, m as u64)?;
    Ok((orthotope, PadSchedule { scale: m, pads, boxes }))
}
