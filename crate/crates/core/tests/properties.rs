//! Property tests for the crate's structural invariants: canonicalization is
//! idempotent and scale-invariant, intersections lie on their inputs, the
//! incremental independent-subset routine agrees with full elimination,
//! frames invert exactly, flats contain their intersections, and straight
//! lines embedded as pseudolines behave identically to lines.

use proptest::prelude::*;

use ordinary_core::arrangement2d::{bundles_on_base, find_ordinary_point_2d};
use ordinary_core::oracle::{enumerate_lines, enumerate_pseudolines, rank_by_elimination};
use ordinary_core::plane::{
    base_frame, canonical_line, intersect_lines, side_of_line, Line2, Point2, Side,
};
use ordinary_core::pseudolines::{intersect_pseudolines, Pseudoline};
use ordinary_core::scalar::{frac, int, Scalar};
use ordinary_core::space::{canonical_hyperplane, intersect_flats, maximal_independent_subset};

fn rational() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=9).prop_map(|(p, q)| frac(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    rational().prop_filter("nonzero", |x| !num::Zero::is_zero(x))
}

fn point() -> impl Strategy<Value = Point2> {
    (rational(), rational()).prop_map(|(x, y)| Point2::new(x, y))
}

fn line() -> impl Strategy<Value = Line2> {
    (rational(), rational(), rational())
        .prop_filter("non-degenerate", |(a, b, _)| {
            !(num::Zero::is_zero(a) && num::Zero::is_zero(b))
        })
        .prop_map(|(a, b, c)| canonical_line(a, b, c).unwrap())
}

fn vectors(dim: usize, count: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    proptest::collection::vec(
        proptest::collection::vec((-6i64..=6).prop_map(int), dim),
        1..=count,
    )
}

proptest! {
    #[test]
    fn canonical_line_is_scale_invariant(l in line(), s in nonzero_rational()) {
        let scaled = canonical_line(&l.a * &s, &l.b * &s, &l.c * &s).unwrap();
        prop_assert_eq!(&scaled, &l);
        // Idempotent as well.
        let again = canonical_line(l.a.clone(), l.b.clone(), l.c.clone()).unwrap();
        prop_assert_eq!(&again, &l);
    }

    #[test]
    fn canonical_hyperplane_is_scale_invariant(
        normal in proptest::collection::vec(rational(), 4),
        offset in rational(),
        s in nonzero_rational(),
    ) {
        prop_assume!(normal.iter().any(|x| !num::Zero::is_zero(x)));
        let h = canonical_hyperplane(normal.clone(), offset.clone()).unwrap();
        let scaled_normal: Vec<Scalar> = normal.iter().map(|x| x * &s).collect();
        let scaled = canonical_hyperplane(scaled_normal, &offset * &s).unwrap();
        prop_assert_eq!(scaled, h);
    }

    #[test]
    fn intersection_lies_on_both_lines(l1 in line(), l2 in line()) {
        prop_assume!(l1 != l2);
        if let Some(p) = intersect_lines(&l1, &l2).unwrap() {
            prop_assert_eq!(side_of_line(&l1, &p), Side::On);
            prop_assert_eq!(side_of_line(&l2, &p), Side::On);
        } else {
            prop_assert!(l1.is_parallel(&l2));
        }
    }

    #[test]
    fn independent_subset_matches_full_elimination(vs in (2usize..=6).prop_flat_map(|d| vectors(d, 12))) {
        let chosen = maximal_independent_subset(&vs);
        prop_assert_eq!(chosen.len(), rank_by_elimination(&vs));
        // The chosen vectors are themselves independent.
        let subset: Vec<Vec<Scalar>> = chosen.iter().map(|&i| vs[i].clone()).collect();
        prop_assert_eq!(rank_by_elimination(&subset), subset.len());
        // Adding any other vector never raises the rank.
        for (i, v) in vs.iter().enumerate() {
            if !chosen.contains(&i) {
                let mut extended = subset.clone();
                extended.push(v.clone());
                prop_assert_eq!(rank_by_elimination(&extended), subset.len());
            }
        }
    }

    #[test]
    fn base_frame_round_trips_points(l in line(), w in point(), ps in proptest::collection::vec(point(), 8)) {
        prop_assume!(side_of_line(&l, &w) != Side::On);
        let f = base_frame(&l, &w).unwrap();
        prop_assert!(num::Signed::is_positive(&f.apply(&w).y));
        for p in &ps {
            prop_assert_eq!(f.apply_inverse(&f.apply(p)), p.clone());
            prop_assert_eq!(f.apply(&f.apply_inverse(p)), p.clone());
        }
        // The base line maps onto the x-axis.
        let img = f.transform_line(&l);
        prop_assert_eq!(img, Line2::from_ints(0, 1, 0));
    }

    #[test]
    fn flat_intersections_are_contained(
        n1 in proptest::collection::vec((-5i64..=5).prop_map(int), 4),
        o1 in rational(),
        n2 in proptest::collection::vec((-5i64..=5).prop_map(int), 4),
        o2 in rational(),
    ) {
        prop_assume!(n1.iter().any(|x| !num::Zero::is_zero(x)));
        prop_assume!(n2.iter().any(|x| !num::Zero::is_zero(x)));
        let f1 = ordinary_core::space::hyperplane_flat(&canonical_hyperplane(n1, o1).unwrap());
        let f2 = ordinary_core::space::hyperplane_flat(&canonical_hyperplane(n2, o2).unwrap());
        if let Some(meet) = intersect_flats(&f1, &f2) {
            prop_assert!(f1.contains(&meet.base_point));
            prop_assert!(f2.contains(&meet.base_point));
            for dir in &meet.directions {
                let shifted = ordinary_core::space::PointD::new(
                    meet.base_point
                        .coords
                        .iter()
                        .zip(dir)
                        .map(|(b, d)| b + d)
                        .collect(),
                );
                prop_assert!(f1.contains(&shifted));
                prop_assert!(f2.contains(&shifted));
            }
        }
    }

    #[test]
    fn pseudoline_intersection_is_symmetric(l1 in line(), l2 in line()) {
        prop_assume!(!num::Zero::is_zero(&l1.b) && !num::Zero::is_zero(&l2.b));
        prop_assume!(l1 != l2 && !l1.is_parallel(&l2));
        let p = Pseudoline::from_line(&l1).unwrap();
        let q = Pseudoline::from_line(&l2).unwrap();
        let a = intersect_pseudolines(&p, &q).unwrap();
        let b = intersect_pseudolines(&q, &p).unwrap();
        prop_assert_eq!(a, b);
    }
}

/// Straight lines embedded as pseudolines produce the same incidence map as
/// the line oracle, pointwise and index-wise.
#[test]
fn embedded_lines_match_line_incidence_maps() {
    let mut rng = ordinary_core::SplitMix64::new(0x1eaf);
    for trial in 0..60 {
        let n = 3 + (trial % 10);
        let mut lines: Vec<Line2> = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        while lines.len() < n {
            let a = rng.in_range(-6, 6);
            let b = rng.in_range(1, 6); // keep them non-vertical
            let c = rng.in_range(-6, 6);
            let l = canonical_line(int(a), int(b), int(c)).unwrap();
            // Embedded pseudolines must pairwise cross: skip parallels.
            if seen.insert((l.a.clone(), l.b.clone())) {
                lines.push(l.with_id(lines.len()));
            }
        }
        let ps: Vec<Pseudoline> = lines
            .iter()
            .map(|l| Pseudoline::from_line(l).unwrap())
            .collect();
        let from_lines = enumerate_lines(&lines).unwrap();
        let from_pseudolines = enumerate_pseudolines(&ps).unwrap();
        assert_eq!(from_lines, from_pseudolines, "trial {trial}");
    }
}

/// The bundle partition accounts for every line exactly once.
#[test]
fn bundles_partition_all_lines() {
    let mut rng = ordinary_core::SplitMix64::new(0xb1d5);
    for trial in 0..40 {
        let spec = ordinary_core::GenSpec::new(ordinary_core::GenKind::Random, 6 + trial % 20)
            .with_seed(trial as u64);
        let lines = match ordinary_core::generate(&spec).unwrap() {
            ordinary_core::Arrangement::Lines(v) => v,
            _ => unreachable!(),
        };
        let base = rng.below(lines.len() as u64) as usize;
        // Any witness off the base works.
        let witness = (0..)
            .map(|k| Point2::new(int(k), int(k * k + 1)))
            .find(|w| side_of_line(&lines[base], w) != Side::On)
            .unwrap();
        let frame = base_frame(&lines[base], &witness).unwrap();
        let bb = bundles_on_base(&lines, base, &frame);
        let members: usize = bb.bundles.iter().map(|b| b.members.len()).sum();
        assert_eq!(members + bb.parallels.len() + 1, lines.len());
    }
}

/// Identical inputs give identical outputs, including the provenance.
#[test]
fn ordinary_2d_is_deterministic() {
    for seed in 0..20u64 {
        let spec = ordinary_core::GenSpec::new(ordinary_core::GenKind::Random, 24).with_seed(seed);
        let lines = match ordinary_core::generate(&spec).unwrap() {
            ordinary_core::Arrangement::Lines(v) => v,
            _ => unreachable!(),
        };
        let a = find_ordinary_point_2d(&lines).unwrap();
        let b = find_ordinary_point_2d(&lines).unwrap();
        assert_eq!(a, b);
    }
}

/// The parallelism partition agrees with the O(n²) pairwise oracle: two
/// hyperplanes share a family exactly when they are parallel.
#[test]
fn partition_matches_pairwise_parallelism() {
    for seed in 0..25u64 {
        let spec = ordinary_core::GenSpec::new(ordinary_core::GenKind::Random, 18)
            .with_d(3 + (seed % 3) as usize)
            .with_seed(seed);
        let hs = match ordinary_core::generate(&spec).unwrap() {
            ordinary_core::Arrangement::Hyperplanes(v) => v,
            _ => unreachable!(),
        };
        let partition = ordinary_core::partition_families(&hs).unwrap();
        let mut family_of = vec![usize::MAX; hs.len()];
        for (f, members) in partition.families.iter().enumerate() {
            for &m in members {
                family_of[m] = f;
            }
        }
        for i in 0..hs.len() {
            for j in 0..hs.len() {
                assert_eq!(
                    family_of[i] == family_of[j],
                    hs[i].is_parallel(&hs[j]),
                    "seed {seed}: hyperplanes {i} and {j}"
                );
            }
        }
    }
}

/// Bracket oracle for pseudoline crossings: sampling the difference function
/// at every breakpoint, midpoint and beyond both rays shows exactly one sign
/// change, and the reported crossing lies inside that bracket.
#[test]
fn pseudoline_crossing_lies_in_the_sign_change_bracket() {
    use ordinary_core::Scalar;
    for seed in 0..12u64 {
        let spec = ordinary_core::GenSpec::new(ordinary_core::GenKind::WiringDiagram, 10)
            .with_seed(seed)
            .with_max_bundle(3);
        let ps = match ordinary_core::generate(&spec).unwrap() {
            ordinary_core::Arrangement::Pseudolines(v) => v,
            _ => unreachable!(),
        };
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                let crossing = intersect_pseudolines(&ps[i], &ps[j]).unwrap();
                // Sample grid: all vertex x's, midpoints, and sentinels
                // beyond both rays.
                let mut xs: Vec<Scalar> = ps[i]
                    .vertices
                    .iter()
                    .chain(&ps[j].vertices)
                    .map(|v| v.x.clone())
                    .collect();
                xs.sort();
                xs.dedup();
                let lo = xs.first().unwrap() - int(1000);
                let hi = xs.last().unwrap() + int(1000);
                let mut samples = vec![lo];
                for w in xs.windows(2) {
                    samples.push(w[0].clone());
                    samples.push((&w[0] + &w[1]) / int(2));
                }
                samples.extend_from_slice(&[xs.last().unwrap().clone(), hi]);
                let signs: Vec<i8> = samples
                    .iter()
                    .map(|x| ordinary_core::scalar::sign(&(ps[i].eval_at(x) - ps[j].eval_at(x))))
                    .collect();
                let changes: Vec<usize> = signs
                    .windows(2)
                    .enumerate()
                    .filter(|(_, w)| w[0] * w[1] == -1)
                    .map(|(k, _)| k)
                    .collect();
                let zeros = signs.iter().filter(|&&s| s == 0).count();
                assert!(changes.len() + zeros == 1, "pair ({i},{j}) seed {seed}");
                if let Some(&k) = changes.first() {
                    assert!(samples[k] < crossing.x && crossing.x < samples[k + 1]);
                } else {
                    let k = signs.iter().position(|&s| s == 0).unwrap();
                    assert_eq!(samples[k], crossing.x);
                }
            }
        }
    }
}

/// With the lowest-X provenance, no intersection of two non-base-parallel
/// lines sits strictly lower above the base than the returned point.
#[test]
fn lowest_x_is_the_lowest_above_the_base() {
    use ordinary_core::arrangement2d::find_triple;
    use ordinary_core::oracle::enumerate_lines;
    for seed in 0..15u64 {
        let spec = ordinary_core::GenSpec::new(
            ordinary_core::GenKind::PencilPlus,
            13 + (seed % 9) as usize,
        )
        .with_seed(seed)
        .with_max_bundle(2 + (seed % 2) as usize);
        let lines = match ordinary_core::generate(&spec).unwrap() {
            ordinary_core::Arrangement::Lines(v) => v,
            _ => unreachable!(),
        };
        let r = find_ordinary_point_2d(&lines).unwrap();
        assert_eq!(
            r.provenance,
            ordinary_core::Provenance2D::LowestX,
            "seed {seed}"
        );
        // Rebuild the frame exactly as the search chose it.
        let (base, l1, l2) = find_triple(&lines).unwrap();
        let witness = ordinary_core::intersect_lines(&lines[l1], &lines[l2])
            .unwrap()
            .unwrap();
        let frame = base_frame(&lines[base], &witness).unwrap();
        let x_img = frame.apply(&r.point);
        assert!(num::Signed::is_positive(&x_img.y));
        let map = enumerate_lines(&lines).unwrap();
        for (p, incident) in &map.entries {
            let crossers = incident
                .iter()
                .filter(|&&k| k != base && !lines[k].is_parallel(&lines[base]))
                .count();
            if crossers < 2 {
                continue;
            }
            let img = frame.apply(p);
            if num::Signed::is_positive(&img.y) {
                assert!(
                    (&img.y, &img.x) >= (&x_img.y, &x_img.x),
                    "seed {seed}: {p} sits below the returned X"
                );
            }
        }
    }
}

/// A degenerate five-plane input: three of the hyperplanes share a
/// line, which the exhaustive checker must flag, while the search still
/// produces a genuinely ordinary point.
#[test]
fn hypothesis_checker_flags_what_the_search_survives() {
    use ordinary_core::hyperplanes::NdOutcome;
    use ordinary_core::oracle::check_hypotheses_nd;
    let hs = vec![
        ordinary_core::HyperplaneD::from_ints(&[1, 0, 0], 0),
        ordinary_core::HyperplaneD::from_ints(&[0, 1, 0], 0),
        ordinary_core::HyperplaneD::from_ints(&[1, 1, 0], 1),
        ordinary_core::HyperplaneD::from_ints(&[1, -1, 0], 1),
        ordinary_core::HyperplaneD::from_ints(&[0, 0, 1], 0),
    ];
    // {y=0, x+y=1, x-y=1} all contain the line {x=1, y=0}.
    let report = check_hypotheses_nd(&hs);
    assert!(!report.ok());
    assert_eq!(report.d_through_line, vec![vec![1, 2, 3]]);
    // The hypotheses are sufficient, not necessary: this input still has an
    // ordinary point and the search finds one.
    match ordinary_core::find_ordinary_point_nd(&hs).unwrap() {
        NdOutcome::Ordinary(r) => {
            let on = hs.iter().filter(|h| h.contains(&r.point)).count();
            assert_eq!(on, 3);
        }
        NdOutcome::NoIntersectionPoint => panic!("normals span R³"),
    }
}

/// Reordering the input may change which ordinary point is returned, but
/// never its validity.
#[test]
fn ordinary_searches_survive_input_permutations() {
    let mut rng = ordinary_core::SplitMix64::new(0x9e12);
    for seed in 0..10u64 {
        let spec = ordinary_core::GenSpec::new(ordinary_core::GenKind::Random, 16).with_seed(seed);
        let mut lines = match ordinary_core::generate(&spec).unwrap() {
            ordinary_core::Arrangement::Lines(v) => v,
            _ => unreachable!(),
        };
        for _ in 0..4 {
            // Fisher-Yates with the seeded generator.
            for i in (1..lines.len()).rev() {
                let j = rng.below(i as u64 + 1) as usize;
                lines.swap(i, j);
            }
            let r = find_ordinary_point_2d(&lines).unwrap();
            let on = lines
                .iter()
                .filter(|l| side_of_line(l, &r.point) == Side::On)
                .count();
            assert_eq!(on, 2, "seed {seed}");
            assert!(side_of_line(&lines[r.witnesses.0], &r.point) == Side::On);
            assert!(side_of_line(&lines[r.witnesses.1], &r.point) == Side::On);
        }
    }
}

/// Same for the monochromatic search over colored pseudolines.
#[test]
fn mono_search_survives_input_permutations() {
    use ordinary_core::pseudolines::PseudoOptions;
    let mut rng = ordinary_core::SplitMix64::new(0x51ab);
    for seed in 0..8u64 {
        let spec = ordinary_core::GenSpec::new(ordinary_core::GenKind::Bichromatic, 12)
            .with_seed(seed)
            .with_max_bundle(3);
        let mut ps = match ordinary_core::generate(&spec).unwrap() {
            ordinary_core::Arrangement::Pseudolines(v) => v,
            _ => unreachable!(),
        };
        for _ in 0..4 {
            for i in (1..ps.len()).rev() {
                let j = rng.below(i as u64 + 1) as usize;
                ps.swap(i, j);
            }
            for (i, p) in ps.iter_mut().enumerate() {
                p.id = i;
            }
            let r = ordinary_core::find_monochromatic(&ps, &PseudoOptions::default()).unwrap();
            assert!(r.witnesses.len() >= 2, "seed {seed}");
            for &w in &r.witnesses {
                assert!(ps[w].passes_through(&r.point));
                assert_eq!(ps[w].color, Some(r.color));
            }
            // No differently colored pseudoline sneaks through the point.
            let through = ordinary_core::pseudolines_through(&ps, &r.point);
            assert_eq!(through, r.witnesses, "seed {seed}");
        }
    }
}
