use proptest::prelude::*;
use toric_core::arrangement::{is_essential, ArrangementSpec};
use toric_core::category::{euler_characteristic, nerve_chains};
use toric_core::pi1::{
    abelianize, count_homomorphisms, edge_path_presentation, free_reduce, kill_generators, sigma,
    simplify_presentation, symmetric_group,
};
use toric_core::{Error, GroupPresentation, HomologyGroup, Model, Space};

fn z(b: usize) -> HomologyGroup {
    HomologyGroup { betti: b, torsion: vec![] }
}

/// Essential rank-2 arrangements with small characters and angles.
fn rank_two() -> impl Strategy<Value = ArrangementSpec> {
    let hyp = ((-2i64..=2, -2i64..=2), prop::sample::select(vec!["0", "1/2", "1/3", "1/4", "2/3"]))
        .prop_filter("nonzero character", |((a, b), _)| (*a, *b) != (0, 0));
    prop::collection::vec(hyp, 2..=3).prop_filter_map("essential, no duplicates", |hs| {
        let chars: Vec<[i64; 2]> = hs.iter().map(|((a, b), _)| [*a, *b]).collect();
        let pairs: Vec<(&[i64], &str)> = chars.iter().zip(&hs).map(|(c, (_, q))| (&c[..], *q)).collect();
        ArrangementSpec::from_pairs(2, &pairs).ok().filter(is_essential)
    })
}

/// The model in the smallest window from `[-1, 2]^2` up that suffices.
fn build(spec: &ArrangementSpec) -> Model {
    for k in 1..=3 {
        match Model::build(spec, k) {
            Ok(m) => return m,
            Err(Error::WindowTooSmall(_)) => continue,
            Err(e) => panic!("{spec}: {e}"),
        }
    }
    panic!("{spec}: no window up to k = 3 suffices")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn face_nerve_is_a_torus(spec in rank_two()) {
        let m = build(&spec);
        prop_assert_eq!(m.homology(Space::Face, None).unwrap(), vec![z(1), z(2), z(1)]);
        prop_assert_eq!(m.faces().euler_characteristic(), 0);
    }

    #[test]
    fn boundaries_square_to_zero(spec in rank_two()) {
        let m = build(&spec);
        for space in [Space::Face, Space::Salvetti] {
            prop_assert!(m.chain_complex(space, None).unwrap().is_complex());
        }
    }

    #[test]
    fn cell_and_nerve_euler_characteristics_agree(spec in rank_two()) {
        let m = build(&spec);
        let c = m.salvetti().category();
        let chi = euler_characteristic(&nerve_chains(c, c.max_grade_span()));
        prop_assert_eq!(m.salvetti_census().euler_characteristic, chi);
        // In rank two the complement has one Euler characteristic per chamber.
        prop_assert_eq!(chi, m.face_census()[2] as i64);
    }

    #[test]
    fn first_betti_number_counts_hypersurface_components(spec in rank_two()) {
        let m = build(&spec);
        let h = m.homology(Space::Salvetti, Some(1)).unwrap();
        let divisors = m.layers().unwrap().census()[1];
        prop_assert_eq!(h[1].clone(), z(2 + divisors));
    }

    #[test]
    fn presentation_abelianizes_to_h1(spec in rank_two()) {
        let m = build(&spec);
        let p = m.presentation().unwrap();
        let h = m.homology(Space::Salvetti, Some(1)).unwrap();
        prop_assert_eq!(abelianize(&p), h[1].clone());
        prop_assert_eq!(abelianize(&simplify_presentation(&p)), h[1].clone());
        prop_assert_eq!(abelianize(&kill_generators(&p, |g| g.starts_with('g'))), z(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn presentation_has_the_homomorphisms_of_the_nerve_group(spec in rank_two()) {
        let m = build(&spec);
        let s3 = symmetric_group(3);
        let ours = simplify_presentation(&m.presentation().unwrap());
        let nerve = simplify_presentation(&edge_path_presentation(m.salvetti().category()));
        prop_assert_eq!(count_homomorphisms(&ours, &s3), count_homomorphisms(&nerve, &s3));
    }

    #[test]
    fn censuses_do_not_depend_on_the_window(spec in rank_two()) {
        let a = build(&spec);
        let b = Model::build(&spec, a.window_k() + 1).unwrap();
        prop_assert_eq!(a.face_census(), b.face_census());
        prop_assert_eq!(a.salvetti_census(), b.salvetti_census());
        prop_assert_eq!(a.homology(Space::Salvetti, None).unwrap(), b.homology(Space::Salvetti, None).unwrap());
    }
}

proptest! {
    #[test]
    fn sigma_is_a_fixpoint(keys in prop::collection::vec(0u8..4, 0..24)) {
        let kept = sigma(&keys);
        prop_assert!(kept.windows(2).all(|w| w[0] < w[1]));
        let survivors: Vec<u8> = kept.iter().map(|&i| keys[i]).collect();
        prop_assert_eq!(sigma(&survivors), (0..survivors.len()).collect::<Vec<_>>());
    }

    #[test]
    fn free_reduction_is_idempotent(w in prop::collection::vec(prop::sample::select(vec![-3, -2, -1, 1, 2, 3]), 0..30)) {
        let r = free_reduce(&w);
        prop_assert!(r.windows(2).all(|p| p[0] != -p[1]));
        prop_assert_eq!(free_reduce(&r), r);
    }

    #[test]
    fn simplification_preserves_the_abelianization(
        rels in prop::collection::vec(prop::collection::vec(prop::sample::select(vec![-3, -2, -1, 1, 2, 3]), 1..8), 0..4)
    ) {
        let p = GroupPresentation::new(vec!["a".into(), "b".into(), "c".into()], rels);
        prop_assert_eq!(abelianize(&simplify_presentation(&p)), abelianize(&p));
    }
}
