//! Series-parallel diagrams (SPDs) and signed SPDs.
//!
//! An [`Spd`] is the parse tree of a read-once Boolean expression: leaves are
//! axis labels, internal nodes are series (intersection) or parallel (union)
//! connections. Trees are always kept in normal form: n-ary nodes, no node
//! with a child of its own kind, children sorted by canonical key and then by
//! smallest axis label. Structural equality is therefore shape equality.
//!
//! A [`SignedSpd`] pairs a shape with a sign for every edge.

mod enumerate;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use thiserror::Error;

pub use enumerate::{enumerate_shapes, enumerate_shapes_bounded, CanonicalKey, DEFAULT_SHAPE_BOUND};
pub use parse::{format_expr, parse_expr};

/// Axis label. Labels are positive; axis `i` is the `i`-th coordinate.
pub type Axis = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpdError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("axis {axis} appears more than once (at position {position}); expressions must be read-once")]
    RepeatedAxis { axis: Axis, position: usize },
    #[error("empty expression")]
    Empty,
    #[error("axis {0} is not an edge of the diagram")]
    AxisMissing(Axis),
    #[error("deleting the only edge leaves the single-vertex diagram")]
    SingleEdge,
    #[error("sign assignment does not match the edge set of the diagram")]
    SignDomain,
    #[error("edge count {requested} outside supported range 1..={bound}")]
    OutOfBounds { requested: usize, bound: usize },
}

/// Sign of an edge, an orthant coordinate, or a valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    /// `(-1)^n`.
    pub fn parity(n: usize) -> Sign {
        if n % 2 == 0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Pos, |a, b| a * b)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+1",
            Sign::Neg => "-1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connection {
    Series,
    Parallel,
}

impl Connection {
    pub fn flip(self) -> Connection {
        match self {
            Connection::Series => Connection::Parallel,
            Connection::Parallel => Connection::Series,
        }
    }
}

/// Whether an edge has a parallel partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Conjunctive,
    Disjunctive,
}

/// Result of an operation that may reduce a diagram to the single-vertex
/// ("honorary") diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Minor<T> {
    Diagram(T),
    Trivial,
}

impl<T> Minor<T> {
    pub fn diagram(self) -> Option<T> {
        match self {
            Minor::Diagram(d) => Some(d),
            Minor::Trivial => None,
        }
    }
}

/// Result of substituting a constant for an edge: either a diagram or one of
/// the two constant arrangements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residual<T> {
    Diagram(T),
    Full,
    Empty,
}

impl<T> Residual<T> {
    pub fn diagram(self) -> Option<T> {
        match self {
            Residual::Diagram(d) => Some(d),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Residual<U> {
        match self {
            Residual::Diagram(d) => Residual::Diagram(f(d)),
            Residual::Full => Residual::Full,
            Residual::Empty => Residual::Empty,
        }
    }
}

/// Bouquet rank `e - v + 1` and bouquet sign `(-1)^rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bouquet {
    pub rank: usize,
    pub sign: Sign,
}

/// An unsigned series-parallel diagram in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Spd {
    Leaf(Axis),
    Series(Vec<Spd>),
    Parallel(Vec<Spd>),
}

impl Spd {
    pub fn leaf(axis: Axis) -> Spd {
        Spd::Leaf(axis)
    }

    /// Series connection of `children`, normalized. Panics on an empty list.
    pub fn series(children: impl IntoIterator<Item = Spd>) -> Spd {
        Spd::join(Connection::Series, children.into_iter().collect())
    }

    /// Parallel connection of `children`, normalized. Panics on an empty list.
    pub fn parallel(children: impl IntoIterator<Item = Spd>) -> Spd {
        Spd::join(Connection::Parallel, children.into_iter().collect())
    }

    fn join(kind: Connection, children: Vec<Spd>) -> Spd {
        assert!(!children.is_empty(), "connection of zero diagrams");
        Spd::node(kind, children).normalize()
    }

    fn node(kind: Connection, children: Vec<Spd>) -> Spd {
        match kind {
            Connection::Series => Spd::Series(children),
            Connection::Parallel => Spd::Parallel(children),
        }
    }

    pub fn connection(&self) -> Option<Connection> {
        match self {
            Spd::Leaf(_) => None,
            Spd::Series(_) => Some(Connection::Series),
            Spd::Parallel(_) => Some(Connection::Parallel),
        }
    }

    pub fn children(&self) -> &[Spd] {
        match self {
            Spd::Leaf(_) => &[],
            Spd::Series(c) | Spd::Parallel(c) => c,
        }
    }

    /// Flatten associativity, collapse unary nodes and sort children.
    pub fn normalize(self) -> Spd {
        match self {
            Spd::Leaf(a) => Spd::Leaf(a),
            Spd::Series(children) => normalize_node(Connection::Series, children),
            Spd::Parallel(children) => normalize_node(Connection::Parallel, children),
        }
    }

    pub fn is_normal(&self) -> bool {
        self.clone().normalize() == *self
    }

    /// Edge labels, ascending.
    pub fn edges(&self) -> Vec<Axis> {
        let mut out = Vec::new();
        self.collect_edges(&mut out);
        out.sort_unstable();
        out
    }

    fn collect_edges(&self, out: &mut Vec<Axis>) {
        match self {
            Spd::Leaf(a) => out.push(*a),
            _ => self.children().iter().for_each(|c| c.collect_edges(out)),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Spd::Leaf(_) => 1,
            _ => self.children().iter().map(Spd::edge_count).sum(),
        }
    }

    /// Number of vertices of the two-terminal graph.
    pub fn vertex_count(&self) -> usize {
        match self {
            Spd::Leaf(_) => 2,
            Spd::Series(c) => c.iter().map(Spd::vertex_count).sum::<usize>() - (c.len() - 1),
            Spd::Parallel(c) => c.iter().map(Spd::vertex_count).sum::<usize>() - 2 * (c.len() - 1),
        }
    }

    pub fn contains(&self, axis: Axis) -> bool {
        match self {
            Spd::Leaf(a) => *a == axis,
            _ => self.children().iter().any(|c| c.contains(axis)),
        }
    }

    pub fn min_axis(&self) -> Axis {
        match self {
            Spd::Leaf(a) => *a,
            _ => self.children().iter().map(Spd::min_axis).min().expect("non-empty node"),
        }
    }

    /// Interchange series and parallel connection throughout.
    pub fn dual(&self) -> Spd {
        match self {
            Spd::Leaf(a) => Spd::Leaf(*a),
            Spd::Series(c) => Spd::Parallel(c.iter().map(Spd::dual).collect()).normalize(),
            Spd::Parallel(c) => Spd::Series(c.iter().map(Spd::dual).collect()).normalize(),
        }
    }

    pub fn bouquet(&self) -> Bouquet {
        let rank = self.bouquet_rank();
        Bouquet {
            rank,
            sign: Sign::parity(rank),
        }
    }

    fn bouquet_rank(&self) -> usize {
        match self {
            Spd::Leaf(_) => 0,
            Spd::Series(c) => c.iter().map(Spd::bouquet_rank).sum(),
            Spd::Parallel(c) => c.iter().map(Spd::bouquet_rank).sum::<usize>() + c.len() - 1,
        }
    }

    /// Local volume valuation: one on a single edge, multiplicative over
    /// series connection, and `mu(dual) + mu = 2^d`.
    ///
    /// Diagrams with more than 127 edges overflow.
    pub fn mu(&self) -> u128 {
        let value = match self {
            Spd::Leaf(_) => 1,
            Spd::Series(c) => c.iter().map(Spd::mu).product(),
            Spd::Parallel(c) => {
                // The dual is a series connection of the children's duals.
                let dual: u128 = c.iter().map(|child| pow2(child.edge_count()) - child.mu()).product();
                pow2(self.edge_count()) - dual
            }
        };
        debug_assert!(value % 2 == 1, "mu must be odd");
        value
    }

    pub fn edge_kind(&self, axis: Axis) -> Result<EdgeKind, SpdError> {
        match self.parent_of(axis) {
            None => Err(SpdError::AxisMissing(axis)),
            Some(Some(Connection::Parallel)) => Ok(EdgeKind::Disjunctive),
            Some(_) => Ok(EdgeKind::Conjunctive),
        }
    }

    /// `Some(None)` when `axis` is the whole diagram.
    fn parent_of(&self, axis: Axis) -> Option<Option<Connection>> {
        match self {
            Spd::Leaf(a) => (*a == axis).then_some(None),
            _ => {
                for child in self.children() {
                    match child {
                        Spd::Leaf(a) if *a == axis => return Some(self.connection()),
                        Spd::Leaf(_) => {}
                        _ => {
                            if let Some(found) = child.parent_of(axis) {
                                return Some(found);
                            }
                        }
                    }
                }
                None
            }
        }
    }

    /// The deletion `Δ\i`. A conjunctive edge is contracted, a disjunctive one
    /// removed; in both cases the leaf disappears from its parent node.
    pub fn delete_edge(&self, axis: Axis) -> Result<Spd, SpdError> {
        match self.delete_edge_or_trivial(axis)? {
            Minor::Diagram(d) => Ok(d),
            Minor::Trivial => Err(SpdError::SingleEdge),
        }
    }

    pub fn delete_edge_or_trivial(&self, axis: Axis) -> Result<Minor<Spd>, SpdError> {
        if !self.contains(axis) {
            return Err(SpdError::AxisMissing(axis));
        }
        Ok(match self.without(&|node| matches!(node, Spd::Leaf(a) if *a == axis)) {
            Some(d) => Minor::Diagram(d),
            None => Minor::Trivial,
        })
    }

    /// The residual diagram `Δ\Δ_i`: the slice of the arrangement on the side
    /// of hyperplane `i` opposite to its edge. The leaf's parent node is
    /// absorbed by the substituted constant (false under a series parent,
    /// true under a parallel one) and disappears from the grandparent.
    pub fn residual(&self, axis: Axis) -> Result<Residual<Spd>, SpdError> {
        let parent = self.parent_of(axis).ok_or(SpdError::AxisMissing(axis))?;
        let absorbed = |node: &Spd| node.children().contains(&Spd::Leaf(axis));
        Ok(match parent {
            None => Residual::Empty,
            Some(kind) => match self.without(&absorbed) {
                Some(d) => Residual::Diagram(d),
                None if kind == Connection::Series => Residual::Empty,
                None => Residual::Full,
            },
        })
    }

    /// Remove the first subtree matching `target`; `None` if the whole tree
    /// matches.
    fn without(&self, target: &dyn Fn(&Spd) -> bool) -> Option<Spd> {
        if target(self) {
            return None;
        }
        match self {
            Spd::Leaf(a) => Some(Spd::Leaf(*a)),
            _ => {
                let kept: Vec<Spd> = self.children().iter().filter_map(|c| c.without(target)).collect();
                Some(Spd::node(self.connection().expect("node"), kept).normalize())
            }
        }
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        CanonicalKey::of(self)
    }

    /// Apply `f` to every label and renormalize.
    pub fn relabel(&self, f: &impl Fn(Axis) -> Axis) -> Spd {
        match self {
            Spd::Leaf(a) => Spd::Leaf(f(*a)),
            Spd::Series(c) => Spd::Series(c.iter().map(|x| x.relabel(f)).collect()).normalize(),
            Spd::Parallel(c) => Spd::Parallel(c.iter().map(|x| x.relabel(f)).collect()).normalize(),
        }
    }

    fn has_distinct_labels(&self) -> bool {
        let edges = self.edges();
        edges.windows(2).all(|w| w[0] != w[1])
    }
}

fn normalize_node(kind: Connection, children: Vec<Spd>) -> Spd {
    let mut flat = Vec::with_capacity(children.len());
    for child in children {
        match child.normalize() {
            Spd::Series(g) if kind == Connection::Series => flat.extend(g),
            Spd::Parallel(g) if kind == Connection::Parallel => flat.extend(g),
            other => flat.push(other),
        }
    }
    if flat.len() == 1 {
        return flat.pop().expect("one child");
    }
    flat.sort_by_cached_key(|c| (c.canonical_key(), c.min_axis()));
    Spd::node(kind, flat)
}

fn pow2(n: usize) -> u128 {
    assert!(n < 128, "diagram too large for 128-bit valuations");
    1u128 << n
}

/// A series-parallel diagram together with a sign on each edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedSpd {
    shape: Spd,
    signs: BTreeMap<Axis, Sign>,
}

impl SignedSpd {
    pub fn new(shape: Spd, signs: BTreeMap<Axis, Sign>) -> Result<Self, SpdError> {
        let shape = shape.normalize();
        if !shape.has_distinct_labels() {
            let edges = shape.edges();
            let dup = edges.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]).unwrap_or(0);
            return Err(SpdError::RepeatedAxis { axis: dup, position: 0 });
        }
        if !shape.edges().into_iter().eq(signs.keys().copied()) {
            return Err(SpdError::SignDomain);
        }
        Ok(SignedSpd { shape, signs })
    }

    /// All edges positive.
    pub fn positive(shape: Spd) -> Self {
        let signs = shape.edges().into_iter().map(|a| (a, Sign::Pos)).collect();
        SignedSpd::new(shape, signs).expect("distinct labels")
    }

    pub fn leaf(axis: Axis, sign: Sign) -> Self {
        SignedSpd {
            shape: Spd::Leaf(axis),
            signs: BTreeMap::from([(axis, sign)]),
        }
    }

    /// Series connection; edge sets must be disjoint.
    pub fn series(parts: impl IntoIterator<Item = SignedSpd>) -> Result<Self, SpdError> {
        Self::join(Connection::Series, parts)
    }

    /// Parallel connection; edge sets must be disjoint.
    pub fn parallel(parts: impl IntoIterator<Item = SignedSpd>) -> Result<Self, SpdError> {
        Self::join(Connection::Parallel, parts)
    }

    fn join(kind: Connection, parts: impl IntoIterator<Item = SignedSpd>) -> Result<Self, SpdError> {
        let mut shapes = Vec::new();
        let mut signs = BTreeMap::new();
        for part in parts {
            for (a, s) in part.signs {
                if signs.insert(a, s).is_some() {
                    return Err(SpdError::RepeatedAxis { axis: a, position: 0 });
                }
            }
            shapes.push(part.shape);
        }
        if shapes.is_empty() {
            return Err(SpdError::Empty);
        }
        SignedSpd::new(Spd::join(kind, shapes), signs)
    }

    pub fn shape(&self) -> &Spd {
        &self.shape
    }

    pub fn signs(&self) -> &BTreeMap<Axis, Sign> {
        &self.signs
    }

    pub fn sign(&self, axis: Axis) -> Option<Sign> {
        self.signs.get(&axis).copied()
    }

    pub fn edges(&self) -> Vec<Axis> {
        self.signs.keys().copied().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.signs.len()
    }

    /// The signed sub-diagrams directly below the root (just `self` for a leaf).
    pub fn children(&self) -> Vec<SignedSpd> {
        match &self.shape {
            Spd::Leaf(_) => vec![self.clone()],
            _ => self.shape.children().iter().map(|c| self.restrict(c.clone())).collect(),
        }
    }

    fn restrict(&self, shape: Spd) -> SignedSpd {
        let signs = shape.edges().into_iter().map(|a| (a, self.signs[&a])).collect();
        SignedSpd { shape, signs }
    }

    /// Dual diagram with every sign negated (DeMorgan).
    pub fn dual(&self) -> SignedSpd {
        SignedSpd {
            shape: self.shape.dual(),
            signs: self.signs.iter().map(|(a, s)| (*a, -*s)).collect(),
        }
    }

    /// Product of the edge signs.
    pub fn sign_product(&self) -> Sign {
        self.signs.values().copied().product()
    }

    pub fn bouquet(&self) -> Bouquet {
        self.shape.bouquet()
    }

    pub fn mu(&self) -> u128 {
        self.shape.mu()
    }

    /// Local signed volume, evaluated by its recursion: the sign on a single
    /// edge, multiplicative over series connection, and negated under
    /// signed duality.
    pub fn tau(&self) -> Sign {
        match &self.shape {
            Spd::Leaf(a) => self.signs[a],
            Spd::Series(_) => self.children().iter().map(SignedSpd::tau).product(),
            Spd::Parallel(_) => {
                // Parallel(c) is the dual of Series(dual c); each dual child
                // contributes -tau(c).
                let series_of_duals: Sign = self.children().iter().map(|c| -c.tau()).product();
                -series_of_duals
            }
        }
    }

    pub fn edge_kind(&self, axis: Axis) -> Result<EdgeKind, SpdError> {
        self.shape.edge_kind(axis)
    }

    pub fn delete_edge(&self, axis: Axis) -> Result<SignedSpd, SpdError> {
        Ok(self.restrict(self.shape.delete_edge(axis)?))
    }

    pub fn delete_edge_or_trivial(&self, axis: Axis) -> Result<Minor<SignedSpd>, SpdError> {
        Ok(match self.shape.delete_edge_or_trivial(axis)? {
            Minor::Diagram(d) => Minor::Diagram(self.restrict(d)),
            Minor::Trivial => Minor::Trivial,
        })
    }

    pub fn residual(&self, axis: Axis) -> Result<Residual<SignedSpd>, SpdError> {
        Ok(self.shape.residual(axis)?.map(|d| self.restrict(d)))
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        self.shape.canonical_key()
    }

    /// Apply an injective relabeling to every edge.
    pub fn relabel(&self, f: impl Fn(Axis) -> Axis) -> SignedSpd {
        SignedSpd {
            shape: self.shape.relabel(&f),
            signs: self.signs.iter().map(|(a, s)| (f(*a), *s)).collect(),
        }
    }

    /// Relabel so that axis `removed` disappears from the numbering: labels
    /// above it shift down by one.
    pub fn close_gap(&self, removed: Axis) -> SignedSpd {
        self.relabel(|a| if a > removed { a - 1 } else { a })
    }
}

impl fmt::Display for SignedSpd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_expr(self))
    }
}

impl std::str::FromStr for SignedSpd {
    type Err = SpdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}
