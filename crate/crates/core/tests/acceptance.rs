//! Acceptance criteria, run without the libtest harness so that every
//! criterion prints exactly one `PASS`/`FAIL` line with its measurements.
//! The process exits non-zero if any criterion fails. Comparisons are exact;
//! time limits are wall-clock.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::{all_signings, components_and_holes, is_closed_intersection, parse, random_suite, torus};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use orthotope::floral::{
    boundary_slice, edge_cross_section, edge_direction, facet, geometric_edge_direction, orthants_of,
    residual_cross_section, FloralVertex, OrthantSet,
};
use orthotope::genericize::{
    hausdorff_boxes, random_generic, random_generic_with_pool, thicken, BoxUnion, CubeFace, Lcg,
};
use orthotope::lattice::{EulerMethod, GenericCheck, IntegralOrthotope, LatticeOp, VolumeMethod};
use orthotope::spd::{enumerate_shapes, Minor, Residual, SignedSpd};
use orthotope::{recognize, Recognition};

fn report(id: u32, ok: bool, limit: Duration, start: Instant, detail: String) -> bool {
    let elapsed = start.elapsed();
    let pass = ok && elapsed < limit;
    println!(
        "{} criterion {id}: {detail} [{:.3}s, limit {}s]",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    pass
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// All relabelings of a diagram on `1..=d`.
fn relabelings(x: &SignedSpd) -> Vec<SignedSpd> {
    fn perms(items: Vec<usize>) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.clone();
            let head = rest.remove(i);
            for mut p in perms(rest) {
                p.insert(0, head);
                out.push(p);
            }
        }
        out
    }
    let d = x.edge_count();
    perms((1..=d).collect())
        .into_iter()
        .map(|p| x.relabel(|a| p[a - 1]))
        .collect()
}

/// Every floral vertex on `1..=d`, each once.
fn all_vertices(d: usize) -> Vec<SignedSpd> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for shape in enumerate_shapes(d).unwrap() {
        for x in all_signings(&shape) {
            for y in relabelings(&x) {
                if seen.insert(y.to_string()) {
                    out.push(y);
                }
            }
        }
    }
    out
}

fn minor_orthants(m: Minor<SignedSpd>, removed: usize, dim: usize) -> OrthantSet {
    match m {
        Minor::Diagram(x) => orthants_of(&x.close_gap(removed), dim).unwrap(),
        Minor::Trivial => OrthantSet::full(dim),
    }
}

fn criterion_01_torus() -> bool {
    let start = Instant::now();
    let t = torus();
    let generic = t.check_generic() == GenericCheck::Generic;
    let census = t.vertex_census().unwrap();
    let by_mu: Vec<(u64, u64)> = census.by_mu.iter().map(|(k, v)| (*k, *v)).collect();
    let n = |k| census.count_mu(k) as i64;
    let alternating = n(1) - n(3) - n(5) + n(7);
    let euler = [EulerMethod::SigmaSum, EulerMethod::CubicalComplex].map(|m| t.euler(m).unwrap());
    let volume = [
        VolumeMethod::MuSum,
        VolumeMethod::Determinantal,
        VolumeMethod::VoxelCount,
    ]
    .map(|m| t.volume(m).unwrap());
    let skeleton = t.skeleton().unwrap();
    let ok = generic
        && by_mu == vec![(1, 15), (3, 11), (5, 5), (7, 1)]
        && alternating == 0
        && euler == [0, 0]
        && volume.iter().all(|v| *v == rat(28))
        && skeleton.nodes.len() == 32
        && skeleton.is_regular(3)
        && skeleton.is_bipartite();
    let vols: Vec<String> = volume.iter().map(|v| v.to_string()).collect();
    report(
        1,
        ok,
        secs(5),
        start,
        format!(
            "generic={generic} by_mu={by_mu:?} n1-n3-n5+n7={alternating} euler={euler:?} volume={vols:?} skeleton nodes={} arcs={} 3-regular={} bipartite={}",
            skeleton.nodes.len(),
            skeleton.arcs.len(),
            skeleton.is_regular(3),
            skeleton.is_bipartite()
        ),
    )
}

fn criterion_02_facet_golden() -> bool {
    let start = Instant::now();
    let v = FloralVertex::new(parse("(((((1|2)&3)|4)&5)|6)&(7|8)")).unwrap();
    let got = facet(&v, 4).unwrap();
    let expected = parse("(~1|~2)&5&~6&(7|8)");
    let shown = match &got {
        Minor::Diagram(x) => x.to_string(),
        Minor::Trivial => "trivial".to_string(),
    };
    report(
        2,
        got == Minor::Diagram(expected.clone()),
        secs(1),
        start,
        format!("facet_4 = {shown}, expected {expected}"),
    )
}

fn criterion_03_four_dimensional_table() -> bool {
    let start = Instant::now();
    let table = [
        ("1&2&3&4", 1, 1),
        ("(1|2)&3&4", 3, -1),
        ("((1&2)|3)&4", 5, -1),
        ("(1|2|3)&4", 7, 1),
        ("(1|2)&(3|4)", 9, 1),
        ("(1&2)|(3&4)", 7, -1),
        ("(1&2&3)|4", 9, -1),
        ("((1|2)&3)|4", 11, 1),
        ("(1&2)|3|4", 13, 1),
        ("1|2|3|4", 15, -1),
    ];
    let mut bad = Vec::new();
    for (expr, mu, sigma) in table {
        let x = parse(expr);
        let got = (x.mu(), x.bouquet().sign.value());
        if got != (mu, sigma) {
            bad.push(format!("{expr}: got {got:?}, expected ({mu}, {sigma})"));
        }
    }
    let classes = enumerate_shapes(4).unwrap().len();
    report(
        3,
        bad.is_empty() && classes == table.len(),
        secs(1),
        start,
        format!(
            "{} rows, {} mismatches {bad:?}, {classes} shapes",
            table.len(),
            bad.len()
        ),
    )
}

fn criterion_04_enumeration_counts() -> bool {
    let start = Instant::now();
    let counts: Vec<usize> = (1..=10).map(|d| enumerate_shapes(d).unwrap().len()).collect();
    let expected = vec![1, 2, 4, 10, 24, 66, 180, 522, 1532, 4624];
    report(4, counts == expected, secs(30), start, format!("counts {counts:?}"))
}

fn criterion_05_recognition_round_trip() -> bool {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for d in 1..=5 {
        for x in all_vertices(d) {
            let got = recognize(&orthants_of(&x, d).unwrap());
            checked += 1;
            if got != Recognition::Floral(x.clone()) {
                bad.push(x.to_string());
            }
        }
    }
    report(
        5,
        bad.is_empty(),
        secs(60),
        start,
        format!("{checked} signed labeled diagrams, {} failures {bad:?}", bad.len()),
    )
}

fn criterion_06_cross_sections() -> bool {
    let start = Instant::now();
    let (mut checked, mut bad) = (0, Vec::new());
    for d in 1..=5 {
        for x in all_vertices(d) {
            let v = FloralVertex::new(x.clone()).unwrap();
            for axis in 1..=d {
                checked += 1;
                let eps = edge_direction(&v, axis).unwrap();
                let ok_dir = geometric_edge_direction(v.orthants(), axis).unwrap() == Some(eps);
                let through = v.orthants().slice(axis, eps).unwrap();
                let ok_edge = minor_orthants(edge_cross_section(&v, axis).unwrap(), axis, d - 1) == through;
                let opposite = v.orthants().slice(axis, -eps).unwrap();
                let residual = match residual_cross_section(&v, axis).unwrap() {
                    Residual::Diagram(r) => orthants_of(&r.close_gap(axis), d - 1).unwrap(),
                    Residual::Full => OrthantSet::full(d - 1),
                    Residual::Empty => OrthantSet::empty(d - 1),
                };
                let ok_res = residual == opposite;
                let ok_facet = minor_orthants(facet(&v, axis).unwrap(), axis, d - 1)
                    == boundary_slice(v.orthants(), axis).unwrap();
                if !(ok_dir && ok_edge && ok_res && ok_facet) {
                    bad.push(format!("{x} axis {axis}"));
                }
            }
        }
    }
    report(
        6,
        bad.is_empty(),
        secs(120),
        start,
        format!("{checked} (vertex, axis) pairs, {} failures {bad:?}", bad.len()),
    )
}

/// Doubled half-integer values inside the bounding range of `axis`.
fn half_values(p: &IntegralOrthotope, axis: usize) -> Vec<i64> {
    common::slice_values(p, axis, false)
}

/// Every cross-section fixing a non-empty proper subset of axes at
/// half-integer values; returns (sections checked, all generic).
fn check_sections(p: &IntegralOrthotope) -> (usize, bool) {
    let d = p.dim();
    let (mut n, mut ok) = (0, true);
    for mask in 1..(1u32 << d) - 1 {
        let axes: Vec<usize> = (1..=d).filter(|a| mask >> (a - 1) & 1 == 1).collect();
        let values: Vec<Vec<i64>> = axes.iter().map(|&a| half_values(p, a)).collect();
        let ranges: Vec<(usize, usize)> = values.iter().map(|v| (0, v.len())).collect();
        orthotope::lattice::for_each_index(&ranges, |choice| {
            let fixed: BTreeMap<usize, i64> = axes
                .iter()
                .zip(choice)
                .map(|(&a, &c)| (a, values[axes.iter().position(|x| *x == a).unwrap()][c]))
                .collect();
            let s = p.cross_section(&fixed).expect("valid section");
            n += 1;
            ok &= s.check_generic().is_generic();
        });
    }
    (n, ok)
}

fn criterion_07_global_formulas() -> bool {
    let start = Instant::now();
    let suite = random_suite(70, 500);
    let (mut vol_bad, mut euler_bad, mut sections, mut section_bad, mut faces, mut face_bad) = (0, 0, 0, 0, 0, 0);
    for p in &suite {
        let voxel = p.volume(VolumeMethod::VoxelCount).unwrap();
        if p.volume(VolumeMethod::MuSum).unwrap() != voxel || p.volume(VolumeMethod::Determinantal).unwrap() != voxel {
            vol_bad += 1;
        }
        if p.euler(EulerMethod::SigmaSum).unwrap() != p.euler(EulerMethod::CubicalComplex).unwrap() {
            euler_bad += 1;
        }
        let (n, ok) = check_sections(p);
        sections += n;
        section_bad += usize::from(!ok);
        let poset = p.face_poset().unwrap();
        for f in &poset.faces {
            faces += 1;
            face_bad += usize::from(!f.closure.check_generic().is_generic());
        }
    }
    let dims: BTreeMap<usize, usize> = suite.iter().fold(BTreeMap::new(), |mut m, p| {
        *m.entry(p.dim()).or_default() += 1;
        m
    });
    let max_cells = suite.iter().map(|p| p.cell_count()).max().unwrap();
    report(
        7,
        suite.len() >= 200 && vol_bad == 0 && euler_bad == 0 && section_bad == 0 && face_bad == 0,
        secs(600),
        start,
        format!(
            "{} instances by dim {dims:?} (max {max_cells} cells); volume mismatches {vol_bad}, euler mismatches {euler_bad}, {sections} sections with {section_bad} non-generic instances, {faces} face closures with {face_bad} non-generic",
            suite.len()
        ),
    )
}

fn criterion_08_two_dimensional_law() -> bool {
    let start = Instant::now();
    let (mut simple, mut simple_bad, mut general, mut general_bad) = (0, 0, 0, 0);
    for seed in 0..400u64 {
        let count = 1 + (seed % 10) as usize;
        let p = random_generic(2, count, 30, seed).unwrap();
        let census = p.vertex_census().unwrap();
        let diff = census.count_mu(1) as i64 - census.count_mu(3) as i64;
        let chi = p.euler(EulerMethod::SigmaSum).unwrap();
        let (comps, holes) = components_and_holes(&p);
        general += 1;
        if diff != 4 * chi || chi != comps as i64 - holes as i64 {
            general_bad += 1;
        }
        if comps == 1 && holes == 0 {
            simple += 1;
            simple_bad += usize::from(diff != 4);
        }
    }
    report(
        8,
        simple >= 50 && simple_bad == 0 && general_bad == 0,
        secs(60),
        start,
        format!(
            "{simple} simply connected orthogons with {simple_bad} violating n1-n3=4; {general} orthogons with {general_bad} violating n1-n3=4*euler"
        ),
    )
}

fn criterion_09_degeneracy_detection() -> bool {
    let start = Instant::now();
    let q = IntegralOrthotope::from_boxes(
        3,
        &[
            (vec![0, 0, 0], vec![2, 2, 1]),
            (vec![0, 0, 1], vec![1, 1, 2]),
            (vec![1, 1, 1], vec![2, 2, 2]),
        ],
        1,
    )
    .unwrap();
    let got = q.check_generic();
    let expected = GenericCheck::NotGeneric {
        witness: vec![Rational64::from_integer(1); 3],
    };
    let shown = match &got {
        GenericCheck::Generic => "Generic".to_string(),
        GenericCheck::NotGeneric { witness } => {
            let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
            format!("NotGeneric at ({})", w.join(", "))
        }
    };
    report(9, got == expected, secs(1), start, format!("check_generic = {shown}"))
}

fn criterion_10_sigma_valuation() -> bool {
    let start = Instant::now();
    let even: Vec<i64> = (0..14).map(|x| 2 * x).collect();
    let odd: Vec<i64> = (0..14).map(|x| 2 * x + 1).collect();
    let (mut pairs, mut bad, mut skipped) = (0, 0, 0);
    let mut rng = Lcg::new(2024);
    for seed in 0..160u64 {
        let d = 2 + rng.below(3) as usize;
        let count = 1 + rng.below(3) as usize;
        // Half the pairs share no hyperplane. The rest are unconstrained and
        // count only when all four sets are generic orthotopes; in
        // particular the true intersection must have no lower-dimensional
        // part, which the cell-wise intersection would drop.
        let (p, q) = if seed % 2 == 0 {
            (
                random_generic_with_pool(d, count, &even, seed).unwrap(),
                random_generic_with_pool(d, count, &odd, seed + 7).unwrap(),
            )
        } else {
            (
                random_generic(d, count, 10, seed).unwrap(),
                random_generic(d, count, 10, seed + 7).unwrap(),
            )
        };
        let (u, gu) = p.set_op(&q, LatticeOp::Union).unwrap();
        let (n, gn) = p.set_op(&q, LatticeOp::Intersection).unwrap();
        if !(gu && gn && is_closed_intersection(&p, &q, &n)) {
            skipped += 1;
            continue;
        }
        pairs += 1;
        let s = |x: &IntegralOrthotope| x.sigma().unwrap();
        if s(&p) + s(&q) != s(&u) + s(&n) {
            bad += 1;
        }
    }
    report(
        10,
        pairs >= 100 && bad == 0,
        secs(60),
        start,
        format!(
            "{pairs} all-generic pairs ({skipped} skipped), {bad} violating sigma(P)+sigma(Q)=sigma(P∩Q)+sigma(P∪Q)"
        ),
    )
}

fn random_faces(rng: &mut Lcg, d: usize, count: usize) -> Vec<CubeFace> {
    (0..count)
        .map(|_| CubeFace {
            corner: (0..d).map(|_| rng.below(4) as i64).collect(),
            span: (0..d).map(|_| rng.below(2) == 1).collect(),
        })
        .collect()
}

fn criterion_11_density_construction() -> bool {
    let start = Instant::now();
    let mut rng = Lcg::new(7);
    let (mut runs, mut degenerate_inputs, mut bad) = (0, 0, Vec::new());
    let mut worst = Rational64::from_integer(0);
    for eps in [
        Rational64::from_integer(1),
        Rational64::new(1, 2),
        Rational64::new(1, 4),
    ] {
        for d in 1..=3 {
            for _ in 0..12 {
                let count = 1 + rng.below(50) as usize;
                let faces = random_faces(&mut rng, d, count);
                // A face set is degenerate when its thickening-free union,
                // rebuilt from full-dimensional faces only, is not generic
                // or when lower-dimensional faces are present.
                let full: Vec<(Vec<i64>, Vec<i64>)> = faces
                    .iter()
                    .filter(|f| f.dim() == d)
                    .map(|f| (f.corner.clone(), f.upper()))
                    .collect();
                let solid = IntegralOrthotope::from_boxes(d, &full, 1).unwrap();
                if full.len() < faces.len() || !solid.check_generic().is_generic() {
                    degenerate_inputs += 1;
                }
                let (p, _) = thicken(d, &faces, eps).unwrap();
                let dist =
                    hausdorff_boxes(&BoxUnion::from_orthotope(&p), &BoxUnion::from_faces(d, &faces).unwrap()).unwrap();
                worst = worst.max(dist / eps);
                runs += 1;
                if !p.check_generic().is_generic() || dist >= eps {
                    bad.push(format!("d={d} eps={eps} faces={count} dist={dist}"));
                }
            }
        }
    }
    report(
        11,
        bad.is_empty(),
        secs(600),
        start,
        format!(
            "{runs} thickenings ({degenerate_inputs} of degenerate face sets), {} failures {bad:?}, max dist/eps = {worst}",
            bad.len()
        ),
    )
}

fn main() -> std::process::ExitCode {
    let criteria: [(u32, fn() -> bool); 11] = [
        (1, criterion_01_torus),
        (2, criterion_02_facet_golden),
        (3, criterion_03_four_dimensional_table),
        (4, criterion_04_enumeration_counts),
        (5, criterion_05_recognition_round_trip),
        (6, criterion_06_cross_sections),
        (7, criterion_07_global_formulas),
        (8, criterion_08_two_dimensional_law),
        (9, criterion_09_degeneracy_detection),
        (10, criterion_10_sigma_valuation),
        (11, criterion_11_density_construction),
    ];
    let mut failed = Vec::new();
    for (id, run) in criteria {
        let pass = std::panic::catch_unwind(run).unwrap_or_else(|_| {
            println!("FAIL criterion {id}: panicked");
            false
        });
        if !pass {
            failed.push(id);
        }
    }
    println!(
        "acceptance: {} of {} criteria passed; failed {failed:?}",
        criteria.len() - failed.len(),
        criteria.len()
    );
    if failed.is_empty() {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
