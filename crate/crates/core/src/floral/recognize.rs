use crate::spd::{Axis, Sign, SignedSpd};

use super::OrthantSet;

/// Outcome of recognizing an orthant set as a signed diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    /// Every axis is essential and the set is read-once.
    Floral(SignedSpd),
    /// The set is a cylinder over `free_axes` on a read-once base.
    Cylinder {
        free_axes: Vec<Axis>,
        diagram: SignedSpd,
    },
    /// Not the evaluation of any read-once diagram.
    Degenerate,
    Empty,
    Full,
}

impl Recognition {
    pub fn diagram(&self) -> Option<&SignedSpd> {
        match self {
            Recognition::Floral(d) | Recognition::Cylinder { diagram: d, .. } => Some(d),
            _ => None,
        }
    }
}

pub fn recognize(orthants: &OrthantSet) -> Recognition {
    if orthants.is_empty() {
        return Recognition::Empty;
    }
    if orthants.is_full() {
        return Recognition::Full;
    }
    let dim = orthants.dim();
    let essential = orthants.essential_axes();
    // Restrict to the essential axes, inessential ones held at +1.
    let table: Vec<bool> = (0..1usize << essential.len())
        .map(|t| orthants.contains(scatter(t, &essential)))
        .collect();
    match recognize_table(&essential, &table) {
        None => Recognition::Degenerate,
        Some(diagram) if essential.len() == dim => Recognition::Floral(diagram),
        Some(diagram) => Recognition::Cylinder {
            free_axes: (1..=dim).filter(|a| !essential.contains(a)).collect(),
            diagram,
        },
    }
}

/// Spread the bits of `t` onto the positions of `axes`.
fn scatter(t: usize, axes: &[Axis]) -> usize {
    axes.iter()
        .enumerate()
        .filter(|(j, _)| t >> j & 1 == 1)
        .map(|(_, a)| 1 << (a - 1))
        .sum()
}

/// `table[t]` is membership with bit `j` of `t` the sign of `axes[j]`; every
/// axis is essential.
fn recognize_table(axes: &[Axis], table: &[bool]) -> Option<SignedSpd> {
    if axes.len() == 1 {
        return match (table[0], table[1]) {
            (true, false) => Some(SignedSpd::leaf(axes[0], Sign::Pos)),
            (false, true) => Some(SignedSpd::leaf(axes[0], Sign::Neg)),
            _ => None,
        };
    }
    if let Some(parts) = factor(axes, table) {
        return SignedSpd::series(parts).ok();
    }
    let complement: Vec<bool> = table.iter().map(|b| !b).collect();
    let parts = factor(axes, &complement)?;
    Some(SignedSpd::series(parts).ok()?.dual())
}

/// Split the set as a product `proj_A × proj_B` and recognize both factors.
/// `A` always contains the first axis, so each split is tried once.
fn factor(axes: &[Axis], table: &[bool]) -> Option<Vec<SignedSpd>> {
    let k = axes.len();
    let all = (1usize << k) - 1;
    let count = table.iter().filter(|b| **b).count();
    for a_mask in (1..all).filter(|m| m & 1 == 1) {
        let b_mask = all ^ a_mask;
        let proj_a = project(table, a_mask, k);
        let proj_b = project(table, b_mask, k);
        let na = proj_a.iter().filter(|b| **b).count();
        let nb = proj_b.iter().filter(|b| **b).count();
        if na * nb != count {
            continue;
        }
        // A product of non-constant factors has every axis essential in its
        // own factor, so both recursive calls see essential axes only.
        let left = recognize_table(&pick(axes, a_mask), &proj_a)?;
        let right = recognize_table(&pick(axes, b_mask), &proj_b)?;
        return Some(vec![left, right]);
    }
    None
}

fn pick(axes: &[Axis], mask: usize) -> Vec<Axis> {
    axes.iter()
        .enumerate()
        .filter(|(j, _)| mask >> j & 1 == 1)
        .map(|(_, a)| *a)
        .collect()
}

/// Existential projection onto the positions in `mask`, compressed.
fn project(table: &[bool], mask: usize, k: usize) -> Vec<bool> {
    let width = mask.count_ones();
    let mut out = vec![false; 1 << width];
    for (t, member) in table.iter().enumerate().take(1 << k) {
        if *member {
            out[compress(t, mask)] = true;
        }
    }
    out
}

fn compress(t: usize, mask: usize) -> usize {
    let mut out = 0;
    let mut bit = 0;
    let mut m = mask;
    while m != 0 {
        let low = m.trailing_zeros();
        out |= (t >> low & 1) << bit;
        bit += 1;
        m &= m - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{index_of, orthants_of};
    use super::*;
    use Sign::{Neg as M, Pos as P};

    fn e(s: &str) -> SignedSpd {
        s.parse().unwrap()
    }

    #[test]
    fn recognizes_corner() {
        let x = OrthantSet::from_members(3, [index_of(&[P, P, P])]);
        assert_eq!(recognize(&x), Recognition::Floral(e("1&2&3")));
    }

    #[test]
    fn two_octants_on_an_edge_are_degenerate() {
        let x = OrthantSet::from_members(3, [index_of(&[P, P, P]), index_of(&[M, M, P])]);
        assert_eq!(recognize(&x), Recognition::Degenerate);
    }

    #[test]
    fn cylinders_and_markers() {
        let x = orthants_of(&e("~2|4"), 4).unwrap();
        assert_eq!(
            recognize(&x),
            Recognition::Cylinder {
                free_axes: vec![1, 3],
                diagram: e("~2|4")
            }
        );
        assert_eq!(recognize(&OrthantSet::empty(3)), Recognition::Empty);
        assert_eq!(recognize(&OrthantSet::full(3)), Recognition::Full);
        assert_eq!(recognize(&OrthantSet::full(0)), Recognition::Full);
        assert_eq!(recognize(&OrthantSet::empty(0)), Recognition::Empty);
    }

    #[test]
    fn round_trip_nested() {
        for s in ["(((((1|2)&3)|4)&5)|6)&(7|8)", "(~1|~2)&5&~6&(7|8)", "((~1&2)|(3&~4))&5"] {
            let x = e(s);
            let d = *x.signs().keys().last().unwrap();
            let got = recognize(&orthants_of(&x, d).unwrap());
            assert_eq!(got.diagram(), Some(&x), "{s}");
        }
    }

    #[test]
    fn compress_bits() {
        assert_eq!(compress(0b1011, 0b1010), 0b11);
        assert_eq!(compress(0b0100, 0b0101), 0b10);
    }
}
