use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Rational64;

use crate::spd::Axis;

use super::{for_each_index, IntegralOrthotope, OrthotopeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Union,
    Intersection,
}

impl IntegralOrthotope {
    /// Slice by the hyperplanes `x_i = λ_i`, with `λ_i` on the doubled
    /// lattice. The fixed axes are dropped; the scale is unchanged.
    ///
    /// A value inside a slab selects that layer of cells; a value on a
    /// breakpoint selects the union of the two adjacent layers.
    pub fn cross_section(&self, fixed: &BTreeMap<Axis, i64>) -> Result<IntegralOrthotope, OrthotopeError> {
        if let Some(&axis) = fixed.keys().find(|&&a| a == 0 || a > self.dim) {
            return Err(OrthotopeError::AxisOutOfRange { axis, dim: self.dim });
        }
        let dim = self.dim - fixed.len();
        let free: Vec<usize> = (0..self.dim).filter(|j| !fixed.contains_key(&(j + 1))).collect();
        if self.is_empty() {
            return Ok(IntegralOrthotope::empty(dim, self.scale));
        }
        let layers: Vec<(usize, Vec<usize>)> = fixed
            .iter()
            .map(|(&axis, &lambda)| (axis - 1, selected_slabs(&self.breaks[axis - 1], lambda)))
            .collect();
        let breaks: Vec<Vec<i64>> = free.iter().map(|&j| self.breaks[j].clone()).collect();
        let ranges: Vec<(usize, usize)> = layers.iter().map(|(_, s)| (0, s.len())).collect();
        let mut full = vec![0; self.dim];
        IntegralOrthotope::from_grid(dim, self.scale, breaks, |idx| {
            for (k, &j) in free.iter().enumerate() {
                full[j] = idx[k];
            }
            let mut hit = false;
            for_each_index(&ranges, |choice| {
                if hit {
                    return;
                }
                for (c, (j, slabs)) in choice.iter().zip(&layers) {
                    full[*j] = slabs[*c];
                }
                hit = self.cell_occupied(&full);
            });
            hit
        })
    }

    /// [`cross_section`](Self::cross_section) with true coordinates.
    pub fn cross_section_at(&self, fixed: &BTreeMap<Axis, Rational64>) -> Result<IntegralOrthotope, OrthotopeError> {
        let twice = Rational64::from_integer(2 * self.scale as i64);
        let doubled = fixed
            .iter()
            .map(|(&a, &x)| {
                let v = x * twice;
                if v.is_integer() {
                    Ok((a, v.to_integer()))
                } else {
                    Err(OrthotopeError::OffLattice { scale: self.scale })
                }
            })
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        self.cross_section(&doubled)
    }

    /// Union or intersection at the least common scale, together with
    /// whether the result is generic.
    pub fn set_op(
        &self,
        other: &IntegralOrthotope,
        op: LatticeOp,
    ) -> Result<(IntegralOrthotope, bool), OrthotopeError> {
        if self.dim != other.dim {
            return Err(OrthotopeError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let scale = self.scale.lcm(&other.scale);
        let a = self.with_scale(scale)?;
        let b = other.with_scale(scale)?;
        let breaks: Vec<Vec<i64>> = (0..self.dim)
            .map(|j| {
                let mut m: Vec<i64> = a.breaks[j].iter().chain(&b.breaks[j]).copied().collect();
                m.sort_unstable();
                m.dedup();
                m
            })
            .collect();
        let map_a: Vec<Vec<Option<usize>>> = (0..self.dim).map(|j| slab_map(&breaks[j], &a.breaks[j])).collect();
        let map_b: Vec<Vec<Option<usize>>> = (0..self.dim).map(|j| slab_map(&breaks[j], &b.breaks[j])).collect();
        let inside = |p: &IntegralOrthotope, map: &[Vec<Option<usize>>], idx: &[usize]| -> bool {
            let cell: Option<Vec<usize>> = idx.iter().enumerate().map(|(j, &k)| map[j][k]).collect();
            cell.is_some_and(|c| p.cell_occupied(&c))
        };
        let result = IntegralOrthotope::from_grid(self.dim, scale, breaks, |idx| {
            let (x, y) = (inside(&a, &map_a, idx), inside(&b, &map_b, idx));
            match op {
                LatticeOp::Union => x || y,
                LatticeOp::Intersection => x && y,
            }
        })?;
        let generic = result.check_generic().is_generic();
        Ok((result, generic))
    }
}

/// Cell layers met by the hyperplane at doubled coordinate `lambda`.
fn selected_slabs(breaks: &[i64], lambda: i64) -> Vec<usize> {
    let slabs = breaks.len().saturating_sub(1);
    match breaks.binary_search_by(|b| (2 * b).cmp(&lambda)) {
        Ok(k) => [k.checked_sub(1), (k < slabs).then_some(k)]
            .into_iter()
            .flatten()
            .collect(),
        Err(0) => vec![],
        Err(k) if k > slabs => vec![],
        Err(k) => vec![k - 1],
    }
}

/// For each slab of the fine grid, the slab of the coarse grid containing it.
fn slab_map(fine: &[i64], coarse: &[i64]) -> Vec<Option<usize>> {
    (0..fine.len().saturating_sub(1))
        .map(|k| {
            let lo = fine[k];
            match coarse.binary_search(&lo) {
                Ok(i) if i + 1 < coarse.len() => Some(i),
                Ok(_) => None,
                Err(0) => None,
                Err(i) if i == coarse.len() => None,
                Err(i) => Some(i - 1),
            }
        })
        .collect()
}
