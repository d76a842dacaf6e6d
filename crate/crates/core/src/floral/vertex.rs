use crate::spd::{Axis, Minor, Residual, Sign, SignedSpd, Spd};

use super::{orthants_of, FloralError, OrthantSet, MAX_ORTHANT_DIM};

/// A signed diagram on exactly the edges `1..=d`, with its orthant set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloralVertex {
    diagram: SignedSpd,
    orthants: OrthantSet,
}

impl FloralVertex {
    pub fn new(diagram: SignedSpd) -> Result<FloralVertex, FloralError> {
        let dim = diagram.edge_count();
        if dim > MAX_ORTHANT_DIM {
            return Err(FloralError::DimensionTooLarge(dim));
        }
        if !diagram.edges().into_iter().eq(1..=dim) {
            return Err(FloralError::NotVertex { dim });
        }
        let orthants = orthants_of(&diagram, dim)?;
        debug_assert!(orthants.mu() % 2 == 1);
        Ok(FloralVertex { diagram, orthants })
    }

    pub fn dim(&self) -> usize {
        self.diagram.edge_count()
    }

    pub fn diagram(&self) -> &SignedSpd {
        &self.diagram
    }

    pub fn orthants(&self) -> &OrthantSet {
        &self.orthants
    }

    fn check_axis(&self, axis: Axis) -> Result<(), FloralError> {
        if axis == 0 || axis > self.dim() {
            Err(FloralError::AxisOutOfRange { axis, dim: self.dim() })
        } else {
            Ok(())
        }
    }
}

/// The facet `δ_i` of a floral vertex: the part of its boundary lying in the
/// hyperplane `x_i = 0`, as a diagram on the remaining labels.
///
/// Walks down from the root: the series child containing `i` is replaced by
/// its dual while its siblings are collected, until `i` is reached.
pub fn facet(v: &FloralVertex, axis: Axis) -> Result<Minor<SignedSpd>, FloralError> {
    v.check_axis(axis)?;
    let mut current = match v.diagram.shape() {
        Spd::Parallel(_) => v.diagram.dual(),
        _ => v.diagram.clone(),
    };
    let mut kept = Vec::new();
    while !matches!(current.shape(), Spd::Leaf(_)) {
        // Invariant: `current` is a series node containing `axis`.
        let mut next = None;
        for child in current.children() {
            if child.shape().contains(axis) {
                next = Some(child.dual());
            } else {
                kept.push(child);
            }
        }
        current = next.expect("axis below current node");
    }
    if kept.is_empty() {
        return Ok(Minor::Trivial);
    }
    Ok(Minor::Diagram(SignedSpd::series(kept)?))
}

/// `σ(Δ)·σ(Δ\i)·s_i`: the sign `ε` for which the ray along `ε·e_i` is an edge.
pub fn edge_direction(v: &FloralVertex, axis: Axis) -> Result<Sign, FloralError> {
    v.check_axis(axis)?;
    let deleted = match v.diagram.delete_edge_or_trivial(axis)? {
        Minor::Diagram(d) => d.bouquet().sign,
        Minor::Trivial => Sign::Pos,
    };
    Ok(v.diagram.bouquet().sign * deleted * v.diagram.sign(axis).expect("edge present"))
}

/// Edge direction read off the orthant set: `±e_i` spans an edge iff the
/// slice at `x_i = ±1` is a non-empty arrangement in which every axis is
/// essential (a vertex of the slice).
pub fn geometric_edge_direction(orthants: &OrthantSet, axis: Axis) -> Result<Option<Sign>, FloralError> {
    let is_vertex = |s: &OrthantSet| !s.is_empty() && s.essential_axes().len() == s.dim();
    let pos = is_vertex(&orthants.slice(axis, Sign::Pos)?);
    let neg = is_vertex(&orthants.slice(axis, Sign::Neg)?);
    Ok(match (pos, neg) {
        (true, false) => Some(Sign::Pos),
        (false, true) => Some(Sign::Neg),
        _ => None,
    })
}

/// The slice through the edge: `Δ\i` with inherited signs.
pub fn edge_cross_section(v: &FloralVertex, axis: Axis) -> Result<Minor<SignedSpd>, FloralError> {
    v.check_axis(axis)?;
    Ok(v.diagram.delete_edge_or_trivial(axis)?)
}

/// The slice on the side opposite the edge: `Δ\Δ_i` with inherited signs.
pub fn residual_cross_section(v: &FloralVertex, axis: Axis) -> Result<Residual<SignedSpd>, FloralError> {
    v.check_axis(axis)?;
    Ok(v.diagram.residual(axis)?)
}

/// Orthants of `x_i = 0` that lie on the boundary of the closed
/// arrangement: occupied on exactly one side.
pub fn boundary_slice(orthants: &OrthantSet, axis: Axis) -> Result<OrthantSet, FloralError> {
    let pos = orthants.slice(axis, Sign::Pos)?;
    let neg = orthants.slice(axis, Sign::Neg)?;
    Ok(OrthantSet::from_fn(pos.dim(), |t| pos.contains(t) != neg.contains(t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> FloralVertex {
        FloralVertex::new(s.parse().unwrap()).unwrap()
    }

    fn e(s: &str) -> SignedSpd {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_non_vertices() {
        assert_eq!(FloralVertex::new(e("1&3")), Err(FloralError::NotVertex { dim: 2 }));
    }

    #[test]
    fn facet_examples() {
        assert_eq!(facet(&v("1&2&3"), 1).unwrap(), Minor::Diagram(e("2&3")));
        assert_eq!(facet(&v("1|2"), 1).unwrap(), Minor::Diagram(e("~2")));
        assert_eq!(facet(&v("~1"), 1).unwrap(), Minor::Trivial);
        assert!(facet(&v("1|2"), 3).is_err());
    }

    #[test]
    fn facet_of_nested_chain() {
        // Hand computation: complement the branch holding 4 twice, keeping
        // 5, ~6 and (7|8) and the complemented (1|2)&3 branch.
        let got = facet(&v("(((((1|2)&3)|4)&5)|6)&(7|8)"), 4).unwrap();
        assert_eq!(got, Minor::Diagram(e("((~1&~2)|~3)&5&~6&(7|8)")));
    }

    #[test]
    fn edge_direction_examples() {
        assert_eq!(edge_direction(&v("1&2"), 1), Ok(Sign::Pos));
        assert_eq!(edge_direction(&v("1|2"), 1), Ok(Sign::Neg));
        assert_eq!(edge_direction(&v("~1|2"), 1), Ok(Sign::Pos));
        assert_eq!(edge_direction(&v("~1"), 1), Ok(Sign::Neg));
    }

    #[test]
    fn cross_section_examples() {
        assert_eq!(edge_cross_section(&v("(1|2)&3"), 3).unwrap(), Minor::Diagram(e("1|2")));
        assert_eq!(edge_cross_section(&v("1|2"), 1).unwrap(), Minor::Diagram(e("2")));
        assert_eq!(edge_cross_section(&v("1&2"), 1).unwrap(), Minor::Diagram(e("2")));
        assert_eq!(residual_cross_section(&v("1&2"), 1).unwrap(), Residual::Empty);
        assert_eq!(residual_cross_section(&v("1|2"), 1).unwrap(), Residual::Full);
        assert_eq!(
            residual_cross_section(&v("((1&2)|3)&4"), 1).unwrap(),
            Residual::Diagram(e("3&4"))
        );
    }
}
