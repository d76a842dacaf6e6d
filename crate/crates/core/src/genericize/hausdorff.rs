use num_integer::Integer;
use num_rational::Rational64;

use crate::lattice::{for_each_index, IntBox, IntegralOrthotope};

use super::{CubeFace, GenericizeError};

/// Finite union of closed boxes (possibly lower-dimensional) at a scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxUnion {
    dim: usize,
    scale: u64,
    boxes: Vec<IntBox>,
}

impl BoxUnion {
    /// Boxes must satisfy `lo <= hi` on every axis.
    pub fn new(dim: usize, scale: u64, boxes: Vec<IntBox>) -> Option<BoxUnion> {
        let ok = scale > 0
            && boxes
                .iter()
                .all(|(lo, hi)| lo.len() == dim && hi.len() == dim && lo.iter().zip(hi).all(|(a, b)| a <= b));
        ok.then_some(BoxUnion { dim, scale, boxes })
    }

    pub fn from_faces(dim: usize, faces: &[CubeFace]) -> Option<BoxUnion> {
        BoxUnion::new(dim, 1, faces.iter().map(|f| (f.corner.clone(), f.upper())).collect())
    }

    /// Greedy decomposition of the occupied grid cells into maximal boxes.
    pub fn from_orthotope(p: &IntegralOrthotope) -> BoxUnion {
        let breaks = p.breakpoints();
        let dims: Vec<usize> = breaks.iter().map(|b| b.len().saturating_sub(1)).collect();
        let total: usize = if p.is_empty() { 0 } else { dims.iter().product() };
        let mut strides = vec![1; dims.len()];
        for j in (0..dims.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * dims[j + 1];
        }
        let flat = |idx: &[usize]| idx.iter().zip(&strides).map(|(i, s)| i * s).sum::<usize>();
        let mut taken = vec![false; total];
        let mut boxes = Vec::new();
        let ranges: Vec<(usize, usize)> = dims.iter().map(|&n| (0, n)).collect();
        if p.dim() == 0 {
            if !p.is_empty() {
                boxes.push((vec![], vec![]));
            }
            return BoxUnion {
                dim: 0,
                scale: p.scale(),
                boxes,
            };
        }
        for_each_index(&ranges, |start| {
            if taken[flat(start)] || !p.cell_occupied(start) {
                return;
            }
            let mut end: Vec<usize> = start.iter().map(|s| s + 1).collect();
            for j in 0..dims.len() {
                while end[j] < dims[j] {
                    let mut slab: Vec<(usize, usize)> = start.iter().zip(&end).map(|(&s, &e)| (s, e)).collect();
                    slab[j] = (end[j], end[j] + 1);
                    let mut free = true;
                    for_each_index(&slab, |c| free &= !taken[flat(c)] && p.cell_occupied(c));
                    if !free {
                        break;
                    }
                    end[j] += 1;
                }
            }
            let block: Vec<(usize, usize)> = start.iter().zip(&end).map(|(&s, &e)| (s, e)).collect();
            for_each_index(&block, |c| taken[flat(c)] = true);
            let lo = start.iter().enumerate().map(|(j, &s)| breaks[j][s]).collect();
            let hi = end.iter().enumerate().map(|(j, &e)| breaks[j][e]).collect();
            boxes.push((lo, hi));
        });
        BoxUnion {
            dim: p.dim(),
            scale: p.scale(),
            boxes,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn boxes(&self) -> &[IntBox] {
        &self.boxes
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    fn rescaled(&self, scale: u64) -> BoxUnion {
        let f = (scale / self.scale) as i64;
        let boxes = self
            .boxes
            .iter()
            .map(|(lo, hi)| (lo.iter().map(|c| c * f).collect(), hi.iter().map(|c| c * f).collect()))
            .collect();
        BoxUnion {
            dim: self.dim,
            scale,
            boxes,
        }
    }
}

/// Exact L∞ Hausdorff distance between two non-empty orthotopes.
pub fn hausdorff_distance(p: &IntegralOrthotope, q: &IntegralOrthotope) -> Result<Rational64, GenericizeError> {
    hausdorff_boxes(&BoxUnion::from_orthotope(p), &BoxUnion::from_orthotope(q))
}

/// Exact L∞ Hausdorff distance between two non-empty box unions.
pub fn hausdorff_boxes(a: &BoxUnion, b: &BoxUnion) -> Result<Rational64, GenericizeError> {
    if a.dim != b.dim {
        return Err(GenericizeError::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    if a.is_empty() || b.is_empty() {
        return Err(GenericizeError::EmptySet);
    }
    let scale = a.scale.lcm(&b.scale);
    let (a, b) = (a.rescaled(scale), b.rescaled(scale));
    let doubled = directed(&a, &b).max(directed(&b, &a));
    Ok(Rational64::new(doubled, 2 * scale as i64))
}

/// `max_{p ∈ A} d(p, B)`, doubled.
fn directed(a: &BoxUnion, b: &BoxUnion) -> i64 {
    a.boxes.iter().map(|x| box_to_union(x, &b.boxes)).max().unwrap_or(0)
}

/// Doubled `sup_{p ∈ x} d(p, B)`.
///
/// This is the least `r` with `x ⊆ ∪ (b ⊕ r)`. Coverage only changes when an
/// inflated side meets a side of `x` or of another inflated box, so `r` is
/// one of those event values; the least covering one is found by binary
/// search.
fn box_to_union(x: &IntBox, boxes: &[IntBox]) -> i64 {
    let d = x.0.len();
    // Radius at which a single box alone swallows x.
    let swallow = |b: &IntBox| -> i64 {
        (0..d)
            .map(|i| (2 * (b.0[i] - x.0[i])).max(2 * (x.1[i] - b.1[i])).max(0))
            .max()
            .unwrap_or(0)
    };
    let upper = boxes.iter().map(swallow).min().expect("non-empty");
    let near: Vec<&IntBox> = boxes.iter().filter(|b| gap(x, b) <= upper).collect();
    let mut candidates = vec![0, upper];
    for i in 0..d {
        let qs: Vec<i64> = near.iter().flat_map(|b| [b.0[i], b.1[i]]).collect();
        for &q in &qs {
            for c in [x.0[i], x.1[i]] {
                candidates.push(2 * (q - c).abs());
            }
            for &q2 in &qs {
                if q > q2 {
                    candidates.push(q - q2);
                }
            }
        }
    }
    candidates.retain(|&r| r <= upper);
    candidates.sort_unstable();
    candidates.dedup();
    // Invariant: candidates[hi] covers.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    if covered(x, &near, candidates[0]) {
        return candidates[0];
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if covered(x, &near, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    candidates[hi]
}

/// Doubled L∞ gap between two boxes.
fn gap(x: &IntBox, b: &IntBox) -> i64 {
    (0..x.0.len())
        .map(|i| (2 * (b.0[i] - x.1[i])).max(2 * (x.0[i] - b.1[i])).max(0))
        .max()
        .unwrap_or(0)
}

/// Whether `x` lies in the union of the boxes inflated by doubled radius `r`.
fn covered(x: &IntBox, boxes: &[&IntBox], r: i64) -> bool {
    let d = x.0.len();
    let grown: Vec<IntBox> = boxes
        .iter()
        .map(|b| {
            let lo: Vec<i64> = b.0.iter().map(|c| 2 * c - r).collect();
            let hi: Vec<i64> = b.1.iter().map(|c| 2 * c + r).collect();
            (lo, hi)
        })
        .filter(|(lo, hi)| (0..d).all(|i| lo[i] <= 2 * x.1[i] && 2 * x.0[i] <= hi[i]))
        .collect();
    if grown.is_empty() {
        return false;
    }
    // Cut x at every inflated side inside it; each open cell of the cut is
    // covered iff some inflated box contains its closure.
    let cuts: Vec<Vec<i64>> = (0..d)
        .map(|i| {
            let (a, z) = (2 * x.0[i], 2 * x.1[i]);
            let mut s: Vec<i64> = grown
                .iter()
                .flat_map(|(lo, hi)| [lo[i], hi[i]])
                .filter(|c| a < *c && *c < z)
                .chain([a, z])
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let ranges: Vec<(usize, usize)> = cuts.iter().map(|s| (0, 2 * s.len() - 1)).collect();
    let mut all = true;
    for_each_index(&ranges, |g| {
        if !all {
            return;
        }
        let hit = grown.iter().any(|(lo, hi)| {
            (0..d).all(|i| {
                let (l, h) = (cuts[i][g[i] / 2], cuts[i][g[i].div_ceil(2)]);
                lo[i] <= l && h <= hi[i]
            })
        });
        all &= hit;
    });
    all
}
