use std::collections::{BTreeMap, HashMap};

use num_rational::Rational64;

use crate::floral::{recognize, OrthantSet, Recognition};
use crate::spd::{Axis, CanonicalKey};

use super::{for_each_index, IntegralOrthotope, OrthotopeError};

/// Tangent-cone data of one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointClass {
    /// Coordinates on the doubled lattice at working scale.
    pub point: Vec<i64>,
    pub cone: OrthantSet,
    pub essential_axes: Vec<Axis>,
    /// Number of inessential axes; `dim` for interior points, 0 for vertices.
    pub degree: usize,
    pub floral: Recognition,
}

impl PointClass {
    pub fn is_vertex(&self) -> bool {
        self.degree == 0 && !self.cone.is_empty() && !self.cone.is_full()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenericCheck {
    Generic,
    /// The lexicographically first point whose tangent cone is degenerate.
    NotGeneric {
        witness: Vec<Rational64>,
    },
}

impl GenericCheck {
    pub fn is_generic(&self) -> bool {
        *self == GenericCheck::Generic
    }
}

/// Vertex counts by congruence class and by occupied-orthant count.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexCensus {
    pub by_class: BTreeMap<CanonicalKey, u64>,
    pub by_mu: BTreeMap<u64, u64>,
}

impl VertexCensus {
    pub fn total(&self) -> u64 {
        self.by_mu.values().sum()
    }

    pub fn count_mu(&self, mu: u64) -> u64 {
        self.by_mu.get(&mu).copied().unwrap_or(0)
    }
}

/// Recognized cone shared by many grid points.
#[derive(Debug)]
pub(crate) struct ConeInfo {
    pub(crate) cone: OrthantSet,
    pub(crate) essential: Vec<Axis>,
    pub(crate) recognition: Recognition,
}

impl ConeInfo {
    pub(crate) fn degree(&self) -> usize {
        self.cone.dim() - self.essential.len()
    }

    pub(crate) fn is_vertex(&self) -> bool {
        self.essential.len() == self.cone.dim() && self.cone.dim() > 0
    }
}

/// Every point of the doubled grid with its cone.
///
/// Along an axis with breakpoints `b_0 < ... < b_{m-1}`, grid index `2k` is
/// the hyperplane `b_k` and `2k + 1` the open slab `(b_k, b_{k+1})`. Each
/// grid point stands for a genericity cell of the grid; its representative
/// on the doubled lattice is the hyperplane itself or the lowest
/// half-integer point inside the slab.
#[derive(Debug)]
pub(crate) struct PointGrid {
    pub(crate) dims: Vec<usize>,
    strides: Vec<usize>,
    cone_id: Vec<u32>,
    pub(crate) cones: Vec<ConeInfo>,
    breaks: Vec<Vec<i64>>,
}

/// Cell slab reached from a point in the positive and negative direction.
#[derive(Debug, Clone, Copy)]
struct AxisPos {
    pos: Option<usize>,
    neg: Option<usize>,
}

impl PointGrid {
    pub(crate) fn build(p: &IntegralOrthotope) -> PointGrid {
        let dims: Vec<usize> = if p.is_empty() {
            vec![0; p.dim]
        } else {
            p.breaks.iter().map(|b| 2 * b.len() - 1).collect()
        };
        let mut strides = vec![1; dims.len()];
        for j in (0..dims.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * dims[j + 1];
        }
        let total: usize = dims.iter().product();
        let mut cone_id = Vec::with_capacity(total);
        let mut cones = Vec::new();
        let mut interned: HashMap<OrthantSet, u32> = HashMap::new();
        let ranges: Vec<(usize, usize)> = dims.iter().map(|&n| (0, n)).collect();
        let slabs: Vec<usize> = p.shape().dims.clone();
        let mut pos = vec![AxisPos { pos: None, neg: None }; p.dim];
        for_each_index(&ranges, |g| {
            for (j, &gj) in g.iter().enumerate() {
                pos[j] = grid_axis_pos(gj, slabs[j]);
            }
            let cone = cone_at(p, &pos);
            let id = *interned.entry(cone).or_insert_with_key(|cone| {
                cones.push(ConeInfo {
                    essential: cone.essential_axes(),
                    recognition: recognize(cone),
                    cone: cone.clone(),
                });
                (cones.len() - 1) as u32
            });
            cone_id.push(id);
        });
        PointGrid {
            dims,
            strides,
            cone_id,
            cones,
            breaks: p.breaks.clone(),
        }
    }

    pub(crate) fn flat(&self, g: &[usize]) -> usize {
        g.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    pub(crate) fn info(&self, g: &[usize]) -> &ConeInfo {
        &self.cones[self.cone_id[self.flat(g)] as usize]
    }

    pub(crate) fn info_id(&self, g: &[usize]) -> u32 {
        self.cone_id[self.flat(g)]
    }

    /// Visit every grid point in lexicographic order.
    pub(crate) fn for_each(&self, mut f: impl FnMut(&[usize], &ConeInfo)) {
        let ranges: Vec<(usize, usize)> = self.dims.iter().map(|&n| (0, n)).collect();
        let mut flat = 0;
        for_each_index(&ranges, |g| {
            f(g, &self.cones[self.cone_id[flat] as usize]);
            flat += 1;
        });
    }

    /// Doubled-lattice representative of a grid point.
    pub(crate) fn representative(&self, g: &[usize]) -> Vec<i64> {
        g.iter()
            .enumerate()
            .map(|(j, &gj)| {
                let b = self.breaks[j][gj / 2];
                if gj % 2 == 0 {
                    2 * b
                } else {
                    2 * b + 1
                }
            })
            .collect()
    }

    /// Number of points of the integer lattice (at working scale) in the
    /// grid cell of `g`.
    pub(crate) fn lattice_multiplicity(&self, g: &[usize]) -> u128 {
        g.iter()
            .enumerate()
            .map(|(j, &gj)| {
                if gj % 2 == 0 {
                    1
                } else {
                    (self.breaks[j][gj / 2 + 1] - self.breaks[j][gj / 2] - 1) as u128
                }
            })
            .product()
    }

    pub(crate) fn breaks(&self) -> &[Vec<i64>] {
        &self.breaks
    }
}

fn grid_axis_pos(g: usize, slabs: usize) -> AxisPos {
    let k = g / 2;
    if g % 2 == 1 {
        AxisPos {
            pos: Some(k),
            neg: Some(k),
        }
    } else {
        AxisPos {
            pos: (k < slabs).then_some(k),
            neg: k.checked_sub(1),
        }
    }
}

/// Locate a doubled coordinate relative to doubled breakpoints.
fn coord_axis_pos(x: i64, breaks: &[i64]) -> AxisPos {
    let none = AxisPos { pos: None, neg: None };
    if breaks.is_empty() {
        return none;
    }
    match breaks.binary_search_by(|b| (2 * b).cmp(&x)) {
        Ok(k) => grid_axis_pos(2 * k, breaks.len() - 1),
        Err(0) => none,
        Err(k) if k == breaks.len() => none,
        Err(k) => grid_axis_pos(2 * (k - 1) + 1, breaks.len() - 1),
    }
}

fn cone_at(p: &IntegralOrthotope, pos: &[AxisPos]) -> OrthantSet {
    let d = p.dim;
    let strides = &p.shape().strides;
    OrthantSet::from_fn(d, |idx| {
        let mut flat = 0;
        for j in 0..d {
            let slab = if idx >> j & 1 == 1 { pos[j].neg } else { pos[j].pos };
            match slab {
                Some(k) => flat += k * strides[j],
                None => return false,
            }
        }
        p.flat_occupied(flat)
    })
}

impl IntegralOrthotope {
    /// Tangent cone at a point of the doubled lattice.
    pub fn classify_point(&self, doubled: &[i64]) -> Result<PointClass, OrthotopeError> {
        if doubled.len() != self.dim {
            return Err(OrthotopeError::DimensionMismatch {
                expected: self.dim,
                found: doubled.len(),
            });
        }
        let pos: Vec<AxisPos> = doubled
            .iter()
            .zip(&self.breaks)
            .map(|(&x, b)| coord_axis_pos(x, b))
            .collect();
        let cone = cone_at(self, &pos);
        let essential_axes = cone.essential_axes();
        Ok(PointClass {
            point: doubled.to_vec(),
            degree: self.dim - essential_axes.len(),
            floral: recognize(&cone),
            essential_axes,
            cone,
        })
    }

    /// Tangent cone at a point given in true coordinates.
    pub fn classify_at(&self, point: &[Rational64]) -> Result<PointClass, OrthotopeError> {
        self.classify_point(&self.doubled_point(point)?)
    }

    fn class_of(&self, g: &[usize]) -> PointClass {
        let grid = self.point_grid();
        let info = grid.info(g);
        PointClass {
            point: grid.representative(g),
            cone: info.cone.clone(),
            essential_axes: info.essential.clone(),
            degree: info.degree(),
            floral: info.recognition.clone(),
        }
    }

    /// Every point of degree 0 with a non-trivial cone, in lexicographic order.
    pub fn vertices(&self) -> Vec<PointClass> {
        let grid = self.point_grid();
        let mut out = Vec::new();
        grid.for_each(|g, info| {
            if info.is_vertex() {
                out.push(self.class_of(g));
            }
        });
        out
    }

    pub fn check_generic(&self) -> GenericCheck {
        match self.first_degenerate() {
            None => GenericCheck::Generic,
            Some(point) => GenericCheck::NotGeneric {
                witness: self.point_coords(&point),
            },
        }
    }

    fn first_degenerate(&self) -> Option<Vec<i64>> {
        let grid = self.point_grid();
        let mut found = None;
        grid.for_each(|g, info| {
            if found.is_none() && info.recognition == Recognition::Degenerate {
                found = Some(grid.representative(g));
            }
        });
        found
    }

    pub(crate) fn require_generic(&self) -> Result<(), OrthotopeError> {
        match self.check_generic() {
            GenericCheck::Generic => Ok(()),
            GenericCheck::NotGeneric { witness } => Err(OrthotopeError::NotGeneric { witness }),
        }
    }

    pub fn vertex_census(&self) -> Result<VertexCensus, OrthotopeError> {
        self.require_generic()?;
        let mut census = VertexCensus::default();
        self.point_grid().for_each(|_, info| {
            if info.is_vertex() {
                let key = info.recognition.diagram().expect("generic vertex").canonical_key();
                *census.by_class.entry(key).or_default() += 1;
                *census.by_mu.entry(info.cone.mu()).or_default() += 1;
            }
        });
        Ok(census)
    }
}
