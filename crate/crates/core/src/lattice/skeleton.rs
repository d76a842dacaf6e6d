use std::collections::{BTreeMap, VecDeque};

use crate::spd::{Axis, Sign};

use super::{IntegralOrthotope, OrthotopeError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonNode {
    /// Doubled-lattice coordinates at working scale.
    pub point: Vec<i64>,
    pub tau: Sign,
}

/// An edge of the polytope joining two vertices along `axis`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SkeletonArc {
    pub from: usize,
    pub to: usize,
    pub axis: Axis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonGraph {
    pub nodes: Vec<SkeletonNode>,
    pub arcs: Vec<SkeletonArc>,
}

impl SkeletonGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for a in &self.arcs {
            deg[a.from] += 1;
            deg[a.to] += 1;
        }
        deg
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.degrees().iter().all(|&k| k == d)
    }

    /// Every arc joins vertices of opposite `τ`.
    pub fn tau_alternates(&self) -> bool {
        self.arcs.iter().all(|a| self.nodes[a.from].tau != self.nodes[a.to].tau)
    }

    /// Two-colourability, by breadth-first search.
    pub fn is_bipartite(&self) -> bool {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for a in &self.arcs {
            adj[a.from].push(a.to);
            adj[a.to].push(a.from);
        }
        let mut colour: Vec<Option<bool>> = vec![None; self.nodes.len()];
        for start in 0..self.nodes.len() {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let c = colour[u].expect("coloured");
                for &w in &adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

impl IntegralOrthotope {
    /// Vertices and the polytope edges between them.
    ///
    /// From each vertex, walk each axis in both directions through grid
    /// points whose only inessential axis is the walking axis, until a vertex
    /// is reached.
    pub fn skeleton(&self) -> Result<SkeletonGraph, OrthotopeError> {
        self.require_generic()?;
        let grid = self.point_grid();
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut nodes = Vec::new();
        grid.for_each(|g, info| {
            if info.is_vertex() {
                index.insert(g.to_vec(), nodes.len());
                nodes.push(SkeletonNode {
                    point: grid.representative(g),
                    tau: if info.cone.tau() > 0 { Sign::Pos } else { Sign::Neg },
                });
            }
        });
        let mut arcs = Vec::new();
        for (g, &from) in &index {
            for j in 0..self.dim {
                // Only the positive direction is walked, so each arc is found once.
                let mut cur = g.clone();
                loop {
                    cur[j] += 1;
                    if cur[j] >= grid.dims[j] {
                        break;
                    }
                    let info = grid.info(&cur);
                    if info.is_vertex() {
                        if cur[j] - g[j] > 1 {
                            arcs.push(SkeletonArc {
                                from,
                                to: index[&cur],
                                axis: j + 1,
                            });
                        }
                        break;
                    }
                    let along_edge = info.degree() == 1 && !info.essential.contains(&(j + 1));
                    if !along_edge {
                        break;
                    }
                }
            }
        }
        arcs.sort();
        Ok(SkeletonGraph { nodes, arcs })
    }
}
