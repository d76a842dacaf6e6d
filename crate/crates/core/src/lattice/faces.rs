use std::collections::HashMap;

use crate::spd::Axis;

use super::classify::PointGrid;
use super::{for_each_index, IntBox, IntegralOrthotope, OrthotopeError, PointClass};

/// Closure of a genericity region.
#[derive(Debug, Clone)]
pub struct Face {
    pub dim: usize,
    /// Axes (1-based) along which the face extends.
    pub axes: Vec<Axis>,
    /// Lexicographically first point of the open region.
    pub representative: PointClass,
    /// The closure as a `dim`-dimensional orthotope in the coordinates of
    /// `axes`, at the parent's scale.
    pub closure: IntegralOrthotope,
    region: Vec<usize>,
    closure_points: Vec<usize>,
}

impl Face {
    /// Whether the grid point (flat index) lies in the closure.
    fn closure_contains(&self, flat: usize) -> bool {
        self.closure_points.binary_search(&flat).is_ok()
    }
}

#[derive(Debug, Clone)]
pub struct FacePoset {
    pub faces: Vec<Face>,
    /// Pairs `(a, b)` with face `a` a proper subset of face `b`.
    pub incidence: Vec<(usize, usize)>,
}

impl FacePoset {
    /// Number of faces of each dimension `0..=d`.
    pub fn f_vector(&self, d: usize) -> Vec<usize> {
        let mut f = vec![0; d + 1];
        self.faces.iter().for_each(|x| f[x.dim] += 1);
        f
    }

    /// Indices of the faces containing face `a`, including `a`.
    pub fn faces_containing(&self, a: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .incidence
            .iter()
            .filter(|(x, _)| *x == a)
            .map(|(_, b)| *b)
            .collect();
        out.push(a);
        out.sort_unstable();
        out
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl IntegralOrthotope {
    /// Faces as closures of connected regions of equal tangent cone.
    pub fn face_poset(&self) -> Result<FacePoset, OrthotopeError> {
        self.require_generic()?;
        let grid = self.point_grid();
        let total: usize = grid.dims.iter().product();
        let mut uf = UnionFind((0..total).collect());
        let mut points: Vec<Vec<usize>> = Vec::with_capacity(total);
        grid.for_each(|g, _| points.push(g.to_vec()));
        for (flat, g) in points.iter().enumerate() {
            if grid.cones[grid.info_id(g) as usize].cone.is_empty() {
                continue;
            }
            let mut h = g.clone();
            for j in 0..g.len() {
                if g[j] % 2 == 1 {
                    h[j] = g[j] - 1;
                    if grid.info_id(&h) == grid.info_id(g) {
                        uf.union(flat, grid.flat(&h));
                    }
                    h[j] = g[j] + 1;
                    if grid.info_id(&h) == grid.info_id(g) {
                        uf.union(flat, grid.flat(&h));
                    }
                    h[j] = g[j];
                }
            }
        }
        // Regions in order of their first point.
        let mut region_of_root: HashMap<usize, usize> = HashMap::new();
        let mut regions: Vec<Vec<usize>> = Vec::new();
        let mut region_of = vec![usize::MAX; total];
        for (flat, g) in points.iter().enumerate() {
            if grid.info(g).cone.is_empty() {
                continue;
            }
            let root = uf.find(flat);
            let r = *region_of_root.entry(root).or_insert_with(|| {
                regions.push(Vec::new());
                regions.len() - 1
            });
            regions[r].push(flat);
            region_of[flat] = r;
        }
        let mut faces = Vec::with_capacity(regions.len());
        for region in regions {
            faces.push(self.face_of(grid, &points, region)?);
        }
        let mut incidence = Vec::new();
        for (b, face) in faces.iter().enumerate() {
            let mut hits: HashMap<usize, usize> = HashMap::new();
            for &q in &face.closure_points {
                *hits.entry(region_of[q]).or_default() += 1;
            }
            for (a, n) in hits {
                if a != b && n == faces[a].region.len() {
                    incidence.push((a, b));
                }
            }
        }
        incidence.sort_unstable();
        Ok(FacePoset { faces, incidence })
    }

    fn face_of(&self, grid: &PointGrid, points: &[Vec<usize>], region: Vec<usize>) -> Result<Face, OrthotopeError> {
        let first = &points[region[0]];
        let info = grid.info(first);
        let axes: Vec<Axis> = (1..=self.dim).filter(|a| !info.essential.contains(a)).collect();
        let mut closure_points = Vec::new();
        let mut boxes: Vec<IntBox> = Vec::new();
        for &flat in &region {
            let g = &points[flat];
            let ranges: Vec<(usize, usize)> = g
                .iter()
                .map(|&x| if x % 2 == 1 { (x - 1, x + 2) } else { (x, x + 1) })
                .collect();
            for_each_index(&ranges, |q| closure_points.push(grid.flat(q)));
            if axes.iter().all(|a| g[a - 1] % 2 == 1) {
                let b = grid.breaks();
                let lo = axes.iter().map(|a| b[a - 1][g[a - 1] / 2]).collect();
                let hi = axes.iter().map(|a| b[a - 1][g[a - 1] / 2 + 1]).collect();
                boxes.push((lo, hi));
            }
        }
        closure_points.sort_unstable();
        closure_points.dedup();
        let closure = IntegralOrthotope::from_boxes(axes.len(), &boxes, self.scale)?;
        Ok(Face {
            dim: axes.len(),
            representative: self.classify_point(&grid.representative(first))?,
            axes,
            closure,
            region,
            closure_points,
        })
    }

    /// Number of `k`-faces whose closure contains the vertex at `doubled`,
    /// for `k = 0..=d`.
    pub fn faces_at_vertex(&self, poset: &FacePoset, doubled: &[i64]) -> Vec<usize> {
        let grid = self.point_grid();
        let g: Option<Vec<usize>> = doubled
            .iter()
            .zip(grid.breaks())
            .map(|(&x, b)| b.iter().position(|&c| 2 * c == x).map(|k| 2 * k))
            .collect();
        let mut counts = vec![0; self.dim + 1];
        if let Some(g) = g {
            let flat = grid.flat(&g);
            for face in &poset.faces {
                if face.closure_contains(flat) {
                    counts[face.dim] += 1;
                }
            }
        }
        counts
    }
}
