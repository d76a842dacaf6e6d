use std::collections::HashMap;
use std::fmt;

use super::{Connection, Spd, SpdError};

/// Largest edge count accepted by [`enumerate_shapes`].
pub const DEFAULT_SHAPE_BOUND: usize = 12;

/// Label-free encoding of a diagram's shape.
///
/// A leaf is `x`, a series node `S(...)`, a parallel node `P(...)`, with the
/// children's keys in sorted order. Two diagrams have equal keys iff they are
/// isomorphic up to relabeling. Composite keys sort before `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub(super) fn of(spd: &Spd) -> CanonicalKey {
        let mut out = String::new();
        write_key(spd, &mut out);
        CanonicalKey(out)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Parse a key produced by [`CanonicalKey::as_str`].
    pub fn parse(s: &str) -> Option<CanonicalKey> {
        let (spd, rest) = decode(s.as_bytes(), &mut 1)?;
        (rest.is_empty() && CanonicalKey::of(&spd).0 == s).then(|| CanonicalKey(s.to_string()))
    }

    /// The shape with leaves labeled `1..=d` in depth-first order.
    pub fn representative(&self) -> Spd {
        let (spd, _) = decode(self.0.as_bytes(), &mut 1).expect("valid key");
        spd.normalize()
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn write_key(spd: &Spd, out: &mut String) {
    let tag = match spd {
        Spd::Leaf(_) => {
            out.push('x');
            return;
        }
        Spd::Series(_) => "S(",
        Spd::Parallel(_) => "P(",
    };
    let mut keys: Vec<String> = spd.children().iter().map(|c| CanonicalKey::of(c).0).collect();
    keys.sort_unstable();
    out.push_str(tag);
    keys.iter().for_each(|k| out.push_str(k));
    out.push(')');
}

fn decode<'a>(s: &'a [u8], next: &mut usize) -> Option<(Spd, &'a [u8])> {
    let kind = match s.first()? {
        b'x' => {
            let leaf = Spd::Leaf(*next);
            *next += 1;
            return Some((leaf, &s[1..]));
        }
        b'S' => Connection::Series,
        b'P' => Connection::Parallel,
        _ => return None,
    };
    if s.get(1) != Some(&b'(') {
        return None;
    }
    let mut rest = &s[2..];
    let mut children = Vec::new();
    while rest.first()? != &b')' {
        let (child, r) = decode(rest, next)?;
        children.push(child);
        rest = r;
    }
    if children.len() < 2 {
        return None;
    }
    Some((Spd::node(kind, children), &rest[1..]))
}

/// One representative of every isomorphism class of diagram with `d` edges,
/// sorted by canonical key. Rejects `d` above [`DEFAULT_SHAPE_BOUND`].
pub fn enumerate_shapes(d: usize) -> Result<Vec<Spd>, SpdError> {
    enumerate_shapes_bounded(d, DEFAULT_SHAPE_BOUND)
}

pub fn enumerate_shapes_bounded(d: usize, bound: usize) -> Result<Vec<Spd>, SpdError> {
    if d == 0 || d > bound {
        return Err(SpdError::OutOfBounds { requested: d, bound });
    }
    if d == 1 {
        return Ok(vec![Spd::Leaf(1)]);
    }
    let mut memo = HashMap::new();
    let mut keys = rooted(d, Connection::Series, &mut memo);
    keys.extend(rooted(d, Connection::Parallel, &mut memo));
    keys.sort_unstable();
    Ok(keys.into_iter().map(|k| CanonicalKey(k).representative()).collect())
}

/// Keys of all shapes with `d >= 2` edges whose root has connection `kind`.
fn rooted(d: usize, kind: Connection, memo: &mut HashMap<(usize, Connection), Vec<String>>) -> Vec<String> {
    if let Some(hit) = memo.get(&(d, kind)) {
        return hit.clone();
    }
    // Children are leaves or shapes of the opposite connection.
    let mut candidates: Vec<(usize, String)> = vec![(1, "x".to_string())];
    for m in 2..d {
        for k in rooted(m, kind.flip(), memo) {
            candidates.push((m, k));
        }
    }
    let tag = match kind {
        Connection::Series => "S(",
        Connection::Parallel => "P(",
    };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    multisets(&candidates, 0, d, &mut chosen, &mut |picked| {
        if picked.len() < 2 {
            return;
        }
        let mut keys: Vec<&str> = picked.iter().map(|&i| candidates[i].1.as_str()).collect();
        keys.sort_unstable();
        out.push(format!("{tag}{})", keys.concat()));
    });
    out.sort_unstable();
    memo.insert((d, kind), out.clone());
    out
}

/// Visit every multiset of candidate indices (non-decreasing from `from`)
/// whose sizes sum to `remaining`.
fn multisets(
    candidates: &[(usize, String)],
    from: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        visit(chosen);
        return;
    }
    for i in from..candidates.len() {
        let size = candidates[i].0;
        if size > remaining {
            continue;
        }
        chosen.push(i);
        multisets(candidates, i, remaining - size, chosen, visit);
        chosen.pop();
    }
}
