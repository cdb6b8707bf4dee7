use dplane_core::catalog::make_octagon;
use dplane_core::*;
use proptest::prelude::*;

/// Convex disks cut out of the plane by eight half-planes, diameter <= 12.
fn convex_disk() -> impl Strategy<Value = DigitalImage> {
    (0i64..4, 1i64..9, 0i64..4, 1i64..9, 0i64..6, 0i64..6, 0i64..6, 0i64..6).prop_filter_map(
        "not a convex disk",
        |(x0, w, y0, h, s_cut, s_top, d_cut, d_top)| {
            let (x1, y1) = (x0 + w, y0 + h);
            let sum = (x0 + y0 + s_cut, x1 + y1 - s_top);
            let diff = (y0 - x1 + d_cut, y1 - x0 - d_top);
            let x = make_octagon((x0, x1), (y0, y1), sum, diff).ok()?;
            let bbox = x.bounding_box()?;
            let diameter2 = bbox.width().pow(2) + bbox.height().pow(2);
            (diameter2 <= 144 && is_convex(&x).disk().is_some()).then_some(x)
        },
    )
}

fn padded_window(x: &DigitalImage) -> Window {
    let bbox = x.bounding_box().expect("nonempty");
    bbox.padded(bbox.width().max(bbox.height()) + 3)
}

fn small_image() -> impl Strategy<Value = DigitalImage> {
    proptest::collection::btree_set((0i64..3, 0i64..3), 1..=5)
        .prop_map(|set| DigitalImage::c2(set.into_iter().map(|(x, y)| Point::new(x, y))))
}

fn with_boundary() -> VerifyOptions {
    VerifyOptions { boundary: true }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn builders_verify_on_random_disks(x in convex_disk()) {
        let window = padded_window(&x);
        for r in [
            build_axis_retraction(&x).unwrap(),
            build_slanted_retraction(&x, Slope::Plus).unwrap(),
            build_slanted_retraction(&x, Slope::Minus).unwrap(),
        ] {
            let report = verify_retraction_with(&r, &window, with_boundary()).unwrap();
            prop_assert!(report.passed(), "{} on {:?}: {:?}", r.name(), x.point_set(), report.violation);
        }
    }

    #[test]
    fn retractions_are_idempotent(x in convex_disk()) {
        let window = padded_window(&x);
        for r in [build_axis_retraction(&x).unwrap(), build_slanted_retraction(&x, Slope::Minus).unwrap()] {
            for p in window.points() {
                let q = r.eval(p);
                prop_assert_eq!(r.eval(q), q);
            }
        }
    }

    #[test]
    fn anchored_lines_send_their_points_to_the_nearest_face_point(x in convex_disk()) {
        let window = padded_window(&x);
        for slope in [Slope::Plus, Slope::Minus] {
            let r = build_slanted_retraction(&x, slope).unwrap();
            let Scheme::Slanted(scheme) = r.scheme() else { unreachable!("slanted builder") };
            for line in scheme.anchored_lines() {
                let face: Vec<Point> = x.points().filter(|p| line.contains(*p)).collect();
                for p in line.points_in(&window) {
                    // Oracle: brute-force nearest over the face; a face is a
                    // segment on the line, so the nearest point is unique.
                    let nearest = unique_nearest(p, face.iter().copied()).expect("unique on a segment");
                    prop_assert_eq!(r.eval(p), nearest, "line {:?} at {:?}", line, p);
                }
            }
        }
    }

    #[test]
    fn afpp_verdict_is_invariant_under_lattice_symmetries(x in small_image(), k in 0usize..8) {
        let sym = Symmetry::ALL[k];
        let moved = x.map_points(|p| sym.apply(p));
        let a = search_afpp_violation(&x, DEFAULT_BUDGET).unwrap().has_afpp();
        let b = search_afpp_violation(&moved, DEFAULT_BUDGET).unwrap().has_afpp();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn afpp_witnesses_always_verify(x in small_image()) {
        if let AfppCertificate::Witness { map, .. } = search_afpp_violation(&x, DEFAULT_BUDGET).unwrap() {
            prop_assert!(map.is_continuous());
            prop_assert!(verify_no_approx_fixed_point(&x, &map));
        }
    }

    #[test]
    fn map_count_is_translation_invariant(x in small_image(), dx in -5i64..5, dy in -5i64..5) {
        let moved = x.map_points(|p| p.offset(dx, dy));
        prop_assert_eq!(
            count_continuous_self_maps(&x, DEFAULT_BUDGET).unwrap(),
            count_continuous_self_maps(&moved, DEFAULT_BUDGET).unwrap()
        );
    }
}

#[test]
fn at_least_twenty_distinct_disks_are_reachable() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    let strategy = convex_disk();
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..60 {
        seen.insert(strategy.new_tree(&mut runner).unwrap().current().point_set().clone());
    }
    assert!(seen.len() >= 20, "{}", seen.len());
}
