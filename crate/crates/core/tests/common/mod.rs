#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};
use std::path::PathBuf;

use num_rational::Rational64;
use orthotope::genericize::{BoxUnion, Lcg};
use orthotope::io::load_model;
use orthotope::lattice::IntegralOrthotope;
use orthotope::spd::{Sign, SignedSpd, Spd};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn torus() -> IntegralOrthotope {
    load_model(fixture("torus.json")).expect("torus fixture loads")
}

pub fn parse(s: &str) -> SignedSpd {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// A random signed diagram on edges `1..=d`: split a shuffled label list
/// recursively, choosing the connection of each split at random.
pub fn random_spd(d: usize, seed: u64) -> SignedSpd {
    let mut rng = Lcg::new(seed);
    let mut labels: Vec<usize> = (1..=d).collect();
    rng.shuffle(&mut labels);
    let shape = build(&labels, &mut rng);
    let signs: BTreeMap<usize, Sign> = (1..=d)
        .map(|a| (a, if rng.below(2) == 0 { Sign::Pos } else { Sign::Neg }))
        .collect();
    SignedSpd::new(shape, signs).expect("labels match")
}

fn build(labels: &[usize], rng: &mut Lcg) -> Spd {
    if labels.len() == 1 {
        return Spd::leaf(labels[0]);
    }
    let cut = 1 + rng.below(labels.len() as u64 - 1) as usize;
    let (l, r) = (build(&labels[..cut], rng), build(&labels[cut..], rng));
    if rng.below(2) == 0 {
        Spd::series([l, r])
    } else {
        Spd::parallel([l, r])
    }
}

/// Every signed diagram on `1..=d` for each shape: all sign assignments of
/// the shape representative.
pub fn all_signings(shape: &Spd) -> Vec<SignedSpd> {
    let edges = shape.edges();
    (0..1u32 << edges.len())
        .map(|mask| {
            let signs = edges
                .iter()
                .enumerate()
                .map(|(k, &a)| (a, if mask >> k & 1 == 1 { Sign::Neg } else { Sign::Pos }))
                .collect();
            SignedSpd::new(shape.clone(), signs).expect("labels match")
        })
        .collect()
}

/// `L∞` distance from a point to a closed box, all in the same units.
fn point_box(p: &[Rational64], lo: &[Rational64], hi: &[Rational64]) -> Rational64 {
    let zero = Rational64::from_integer(0);
    (0..p.len())
        .map(|i| (lo[i] - p[i]).max(p[i] - hi[i]).max(zero))
        .max()
        .unwrap_or(zero)
}

/// Hausdorff distance by scanning each set on the quarter lattice of the
/// common scale; every vertex of the distance function's linear pieces lies
/// on that lattice for integral boxes.
pub fn brute_hausdorff(a: &BoxUnion, b: &BoxUnion) -> Rational64 {
    let directed = |x: &BoxUnion, y: &BoxUnion| -> Rational64 {
        let to_true = |c: i64, s: u64| Rational64::new(c, s as i64);
        let ybox: Vec<(Vec<Rational64>, Vec<Rational64>)> = y
            .boxes()
            .iter()
            .map(|(lo, hi)| {
                (
                    lo.iter().map(|&c| to_true(c, y.scale())).collect(),
                    hi.iter().map(|&c| to_true(c, y.scale())).collect(),
                )
            })
            .collect();
        let step = 4 * x.scale().max(y.scale()) as i64 * x.scale().min(y.scale()) as i64;
        let mut worst = Rational64::from_integer(0);
        for (lo, hi) in x.boxes() {
            // Quarter-lattice points of the box, in units of 1/step.
            let f = step / x.scale() as i64;
            let ranges: Vec<(i64, i64)> = lo.iter().zip(hi).map(|(l, h)| (l * f, h * f)).collect();
            let mut p = ranges.iter().map(|r| r.0).collect::<Vec<_>>();
            loop {
                let pt: Vec<Rational64> = p.iter().map(|&c| Rational64::new(c, step)).collect();
                let d = ybox.iter().map(|(l, h)| point_box(&pt, l, h)).min().expect("non-empty");
                worst = worst.max(d);
                let mut k = 0;
                while k < p.len() {
                    if p[k] < ranges[k].1 {
                        p[k] += 1;
                        break;
                    }
                    p[k] = ranges[k].0;
                    k += 1;
                }
                if k == p.len() {
                    break;
                }
            }
        }
        worst
    };
    directed(a, b).max(directed(b, a))
}

/// Connected components and holes of a 2D orthogon, by flood fill over the
/// grid cells. Cells meeting at a corner are connected (the set is closed);
/// empty cells are connected only across shared sides.
pub fn components_and_holes(p: &IntegralOrthotope) -> (usize, usize) {
    assert_eq!(p.dim(), 2);
    if p.is_empty() {
        return (0, 0);
    }
    let b = p.breakpoints();
    let (nx, ny) = (b[0].len() as i64 - 1, b[1].len() as i64 - 1);
    // Pad with a ring of empty cells so the outside is one component.
    let occ = |i: i64, j: i64| i >= 0 && j >= 0 && i < nx && j < ny && p.cell_occupied(&[i as usize, j as usize]);
    let flood = |full: bool, diagonal: bool| -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut count = 0;
        for i in -1..=nx {
            for j in -1..=ny {
                if occ(i, j) != full || seen.contains(&(i, j)) {
                    continue;
                }
                count += 1;
                seen.insert((i, j));
                let mut queue = VecDeque::from([(i, j)]);
                while let Some((x, y)) = queue.pop_front() {
                    for dx in -1..=1i64 {
                        for dy in -1..=1i64 {
                            if (dx == 0 && dy == 0) || (!diagonal && dx != 0 && dy != 0) {
                                continue;
                            }
                            let (u, v) = (x + dx, y + dy);
                            if u < -1 || v < -1 || u > nx || v > ny {
                                continue;
                            }
                            if occ(u, v) == full && seen.insert((u, v)) {
                                queue.push_back((u, v));
                            }
                        }
                    }
                }
            }
        }
        count
    };
    (flood(true, true), flood(false, false) - 1)
}

/// Random generic orthotopes for the global suites, at most `max_cells`
/// unit cells each.
pub fn random_suite(count_per_dim: usize, max_cells: u128) -> Vec<IntegralOrthotope> {
    let mut out = Vec::new();
    for (d, extent, max_boxes) in [(2usize, 20i64, 8u64), (3, 9, 5), (4, 5, 3)] {
        let mut seed = 0u64;
        let mut got = 0;
        while got < count_per_dim {
            seed += 1;
            let mut rng = Lcg::new(seed ^ 0x5eed);
            let count = 1 + rng.below(max_boxes) as usize;
            let p = orthotope::genericize::random_generic(d, count, extent, seed).expect("extent fits");
            if p.cell_count() <= max_cells {
                out.push(p);
                got += 1;
            }
        }
    }
    out
}

/// Every half-integer (and, with `integers`, integer) value strictly inside
/// or on the bounding range of `axis`, on the doubled lattice.
pub fn slice_values(p: &IntegralOrthotope, axis: usize, integers: bool) -> Vec<i64> {
    let (lo, hi) = p.bounding_box().expect("non-empty");
    (2 * lo[axis - 1]..=2 * hi[axis - 1])
        .filter(|v| integers || v % 2 != 0)
        .collect()
}

/// Whether `n` is the closed-set intersection of `p` and `q` (all at the
/// same scale). Membership is constant on each open face of the grid cut by
/// every breakpoint of `p` and `q`, so one doubled-lattice point per face is
/// tested. The cell-wise intersection misses lower-dimensional contact.
pub fn is_closed_intersection(p: &IntegralOrthotope, q: &IntegralOrthotope, n: &IntegralOrthotope) -> bool {
    if p.is_empty() || q.is_empty() {
        return n.is_empty();
    }
    let coords: Vec<Vec<i64>> = (0..p.dim())
        .map(|j| {
            let mut b: Vec<i64> = p.breakpoints()[j].iter().chain(&q.breakpoints()[j]).copied().collect();
            b.sort_unstable();
            b.dedup();
            let mut pts: Vec<i64> = b.iter().map(|c| 2 * c).collect();
            pts.extend(b.windows(2).map(|w| w[0] + w[1]));
            pts.sort_unstable();
            pts
        })
        .collect();
    let inside = |x: &IntegralOrthotope, pt: &[i64]| !x.classify_point(pt).expect("on lattice").cone.is_empty();
    let ranges: Vec<(usize, usize)> = coords.iter().map(|c| (0, c.len())).collect();
    let mut ok = true;
    orthotope::lattice::for_each_index(&ranges, |g| {
        if ok {
            let pt: Vec<i64> = g.iter().enumerate().map(|(j, &k)| coords[j][k]).collect();
            ok = (inside(p, &pt) && inside(q, &pt)) == inside(n, &pt);
        }
    });
    ok
}
