mod common;

use std::collections::BTreeMap;

use common::absolute;
use proptest::prelude::*;
use rodier_core::arrangement::{Arrangement, Descent, WallSet};
use rodier_core::constituents::decompose_gps;
use rodier_core::levi::{make_levi, relative_weyl_group};
use rodier_core::linalg::{frac, Rational};
use rodier_core::poles::{
    check_regularity_cc, derive_s, phi_s, relative_orbits, verify_linear_independence,
};
use rodier_core::{InducingDatum, PoleSpec};

const TYPES: [&str; 8] = ["A2", "A3", "B2", "B3", "C3", "G2", "D4", "A4"];

fn pick_theta(n: usize, mask: u32) -> Vec<usize> {
    (0..n).filter(|k| mask >> k & 1 == 1).collect()
}

fn pick_walls(positive: &[usize], mask: u32) -> Vec<usize> {
    positive
        .iter()
        .enumerate()
        .filter(|(k, _)| *k < 32 && mask >> k & 1 == 1)
        .map(|(_, &a)| a)
        .take(4)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn galleries_give_the_same_image(t in 0..TYPES.len(), theta in any::<u32>(), walls in any::<u32>(), x in any::<usize>(), y in any::<usize>()) {
        let a = absolute(TYPES[t]);
        let ld = make_levi(&a.rs, &pick_theta(a.rs.rank(), theta)).unwrap();
        let g = relative_weyl_group(&ld, &a.weyl).unwrap();
        let arr = Arrangement::new(&ld, &g).unwrap();
        let s = WallSet::new(&ld, &pick_walls(arr.positive_roots(), walls)).unwrap();
        let (w, w2) = (g.small()[x % g.small().len()], g.small()[y % g.small().len()]);
        let closed = arr.kernel_image_partition(w, w2, &s).jim;
        for choice in [Descent::First, Descent::Last] {
            let word = arr.minimal_gallery_with(w, w2, choice);
            prop_assert_eq!(arr.image_along_gallery(w, &word, &s), closed.clone());
        }
    }

    #[test]
    fn decomposition_is_consistent(t in 0..TYPES.len(), theta in any::<u32>(), walls in any::<u32>()) {
        let a = absolute(TYPES[t]);
        let ld = make_levi(&a.rs, &pick_theta(a.rs.rank(), theta)).unwrap();
        let g = relative_weyl_group(&ld, &a.weyl).unwrap();
        let arr = Arrangement::new(&ld, &g).unwrap();
        let s = WallSet::new(&ld, &pick_walls(arr.positive_roots(), walls)).unwrap();
        let datum = InducingDatum {
            omega: None,
            poles: PoleSpec::Explicit(s.clone()),
            assume_regular: true,
            assume_generic: true,
        };
        let r = decompose_gps(&arr, &s, &datum).unwrap();
        let mut all: Vec<usize> = r.constituents.iter().flat_map(|c| c.jacquet.clone()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.len()).collect::<Vec<_>>());
        prop_assert!(r.length <= 1 << s.len());
        if verify_linear_independence(&s.coroots(&ld)).independent {
            prop_assert_eq!(r.length, 1 << s.len());
        }
        for c in &r.constituents {
            prop_assert_eq!(c.jacquet.len(), g.complement().len() * c.chambers.len());
            prop_assert_eq!(r.constituents[c.aubert_dual].aubert_dual, c.id);
            if !s.is_empty() && r.induced {
                prop_assert_ne!(c.aubert_dual, c.id);
            }
            if c.id != 0 {
                prop_assert_eq!(c.flags, Default::default());
            }
        }
        // Chambers of w and w·v (v ∈ W_M¹) lie in the same Jacquet set.
        let owner: BTreeMap<usize, usize> = r
            .constituents
            .iter()
            .flat_map(|c| c.jacquet.iter().map(move |&w| (w, c.id)))
            .collect();
        for &u in g.small() {
            for &v in g.complement() {
                prop_assert_eq!(owner[&u], owner[&g.product(u, v)]);
            }
        }
    }

    #[test]
    fn regular_walls_are_independent(
        t in 0..TYPES.len(),
        theta in any::<u32>(),
        coords in proptest::collection::vec((0i64..5, 1i64..3), 4),
        picks in proptest::collection::vec(any::<usize>(), 2),
    ) {
        let a = absolute(TYPES[t]);
        let ld = make_levi(&a.rs, &pick_theta(a.rs.rank(), theta)).unwrap();
        let g = relative_weyl_group(&ld, &a.weyl).unwrap();
        let orbits = relative_orbits(&ld, &g);
        prop_assume!(!orbits.is_empty());
        let c: Vec<Rational> = coords.iter().take(ld.iota()).map(|&(p, q)| frac(p, q)).collect();
        prop_assume!(c.len() == ld.iota());
        let omega = ld.from_weight_coordinates(&c).unwrap();
        let mut poles = BTreeMap::new();
        for (k, orbit) in orbits.iter().enumerate() {
            let pos: Vec<usize> = orbit.iter().copied().filter(|&x| ld.is_positive(x)).collect();
            let v = ld.pair(&omega, pos[picks[k % 2] % pos.len()]);
            if v > frac(0, 1) {
                poles.insert(k, v);
            }
        }
        let s = derive_s(&ld, &g, &omega, &poles).unwrap();
        for &x in s.roots() {
            prop_assert!(ld.in_phi_m0(x) && ld.is_positive(x));
        }
        let closure = phi_s(&ld, &g, &s).unwrap();
        if check_regularity_cc(&ld, &omega, &closure) {
            prop_assert!(verify_linear_independence(&s.coroots(&ld)).independent);
            prop_assert!(s.len() <= ld.iota());
        }
    }
}
