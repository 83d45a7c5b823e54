//! Property tests for the order calculus and the set algebras.

use proptest::prelude::*;
use spectra_core::*;

/// Random posets: edges only go numerically upward, so the relation is
/// always acyclic and construction cannot fail.
fn poset_strategy() -> impl Strategy<Value = SpectralPoset> {
    (0usize..=8).prop_flat_map(|n| {
        let pairs = if n < 2 {
            Just(Vec::new()).boxed()
        } else {
            prop::collection::vec(
                (0..n).prop_flat_map(move |a| ((a + 1)..n.max(a + 2)).prop_map(move |b| (a, b))),
                0..=(2 * n),
            )
            .boxed()
        };
        pairs.prop_map(move |ps| {
            let ps: Vec<(usize, usize)> =
                ps.into_iter().filter(|&(a, b)| a < n && b < n).collect();
            SpectralPoset::from_relation(n, &ps, None).unwrap()
        })
    })
}

fn from_mask(n: usize, mask: u32) -> PointSet {
    BitSet::from_iter(n, (0..n).filter(|&i| mask >> i & 1 == 1))
}

proptest! {
    #[test]
    fn closure_is_extensive_monotone_idempotent(
        poset in poset_strategy(),
        seed in any::<u64>(),
    ) {
        let n = poset.size();
        let mask = (seed as u32) & if n == 0 { 0 } else { (1u32 << n) - 1 };
        let bigger = mask | ((seed >> 32) as u32) & if n == 0 { 0 } else { (1u32 << n) - 1 };
        for view in [TopologyView::Zariski, TopologyView::Flat, TopologyView::Patch] {
            let e = from_mask(n, mask);
            let c = poset.closure(view, &e);
            prop_assert!(e.is_subset(&c));
            prop_assert_eq!(poset.closure(view, &c.clone()), c.clone());
            prop_assert!(poset.is_closed(view, &c));
            let f = from_mask(n, bigger);
            prop_assert!(c.is_subset(&poset.closure(view, &f)));
        }
    }

    #[test]
    fn generic_point_recovers_each_point(poset in poset_strategy()) {
        for view in [TopologyView::Zariski, TopologyView::Flat] {
            for p in 0..poset.size() {
                let cl = poset.closure(view, &from_mask(poset.size(), 1 << p));
                prop_assert_eq!(poset.generic_point(view, &cl).unwrap(), Some(p));
            }
        }
    }

    #[test]
    fn irreducible_components_cover_without_containment(poset in poset_strategy()) {
        for view in [TopologyView::Zariski, TopologyView::Flat] {
            let comps = poset.irreducible_components(view);
            let mut union = poset.empty_set();
            for c in &comps {
                union.union_with(c);
            }
            prop_assert_eq!(union, poset.full_set());
            for (i, a) in comps.iter().enumerate() {
                for (j, b) in comps.iter().enumerate() {
                    if i != j {
                        prop_assert!(!a.is_subset(b));
                    }
                }
            }
        }
    }

    #[test]
    fn components_match_clopen_intersection_partition(poset in poset_strategy()) {
        let comps = poset.connected_components();
        let clopens = poset.clopen_sets().unwrap();
        // block of p = intersection of all clopens containing p
        for p in 0..poset.size() {
            let mut block = poset.full_set();
            for c in &clopens {
                if c.contains(p) {
                    block.intersect_with(c);
                }
            }
            let comp = comps.iter().find(|c| c.contains(p)).unwrap();
            prop_assert_eq!(&block, comp);
        }
    }

    #[test]
    fn dual_is_an_involution_and_swaps_families(poset in poset_strategy()) {
        let dual = poset.hochster_dual();
        prop_assert_eq!(dual.hochster_dual(), poset.clone());
        for mask in 0..(1u32 << poset.size().min(8)) {
            let e = from_mask(poset.size(), mask);
            prop_assert_eq!(
                poset.is_closed(TopologyView::Flat, &e),
                dual.is_closed(TopologyView::Zariski, &e)
            );
            // equivalently: the complement is zariski open in the dual
            prop_assert_eq!(
                poset.is_closed(TopologyView::Flat, &e),
                dual.is_open(TopologyView::Zariski, &e.complement())
            );
        }
    }

    #[test]
    fn radical_is_extensive_and_idempotent(
        n in 2usize..=40,
        gen in 0usize..40,
    ) {
        let ring = FiniteRing::zmod(n).unwrap();
        let ideal = Ideal::generated(&ring, &[gen % n]);
        let rad = ideal.radical();
        prop_assert!(ideal.members().is_subset(rad.members()));
        let rad2 = rad.radical();
        prop_assert_eq!(rad2.members(), rad.members());
    }

    #[test]
    fn quotient_map_image_is_v_of_i(n in 2usize..=30, gen in 0usize..30) {
        let ring = FiniteRing::zmod(n).unwrap();
        let ideal = Ideal::generated(&ring, &[gen % n]);
        if ideal.is_proper() {
            let m = induced_spec_map(&ring, SpecMapKind::Quotient(ideal)).unwrap();
            prop_assert!(m.image_matches);
            prop_assert!(m.image_closed_zariski);
            prop_assert!(m.image_closed_patch);
        }
    }
}

fn random_symsets(count: usize) -> Vec<SymSet> {
    // deterministic pseudo-random generator over the Fin/Cofin algebra
    let zz = SymbolicSpectrum::integers();
    let primes: Vec<u64> = zz.enumerate_closed_points(8);
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    (0..count)
        .map(|_| {
            let bits = next();
            let pts: Vec<u64> = primes
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let has_generic = bits >> 8 & 1 == 1;
            if bits >> 9 & 1 == 1 {
                zz.cofinite(&pts, has_generic).unwrap()
            } else {
                zz.finite(&pts, has_generic).unwrap()
            }
        })
        .collect()
}

#[test]
fn symbolic_closure_properties_on_random_sets() {
    for s in random_symsets(200) {
        for view in [TopologyView::Zariski, TopologyView::Flat, TopologyView::Patch] {
            let c = s.closure(view);
            assert!(c.is_closed(view));
            assert_eq!(c.closure(view), c);
            // extensive on representative points
            for p in [SymPoint::Generic, SymPoint::Closed(2), SymPoint::Closed(19)] {
                if s.contains(p) {
                    assert!(c.contains(p));
                }
            }
        }
    }
}

#[test]
fn symbolic_flat_closed_family_is_closed_under_ops() {
    let sets = random_symsets(200);
    let closed: Vec<&SymSet> = sets
        .iter()
        .filter(|s| s.is_closed(TopologyView::Flat))
        .collect();
    for a in &closed {
        for b in &closed {
            assert!(a.union(b).unwrap().is_closed(TopologyView::Flat));
            assert!(a.intersection(b).unwrap().is_closed(TopologyView::Flat));
            for c in closed.iter().take(10) {
                let triple = a
                    .intersection(b)
                    .unwrap()
                    .intersection(c)
                    .unwrap();
                assert!(triple.is_closed(TopologyView::Flat));
            }
        }
    }
}

#[test]
fn symbolic_point_closures() {
    let zz = SymbolicSpectrum::integers();
    // flat closure of a closed point is {generic, p}; the generic point is
    // flat closed on its own and is the unique minimal point
    let p2 = zz.finite(&[2], false).unwrap();
    assert_eq!(p2.closure(TopologyView::Flat), zz.finite(&[2], true).unwrap());
    let generic = zz.finite(&[], true).unwrap();
    assert!(generic.is_closed(TopologyView::Flat));
    assert_eq!(generic.closure(TopologyView::Flat), generic);
}

#[test]
fn symbolic_zariski_family_matches_reversed_order_flat_family() {
    // Zariski-closed here = flat-closed in the order-reversed model, where
    // the generic point becomes the unique maximal point: down-sets of the
    // reversed order are the up-sets of the original.
    let reversed_flat_closed = |s: &SymSet| {
        // patch closed and an up-set of the original order
        let patch = s.is_closed(TopologyView::Patch);
        let up_set = !s.contains(SymPoint::Generic) || s.is_whole_space();
        patch && up_set
    };
    for s in random_symsets(200) {
        assert_eq!(s.is_closed(TopologyView::Zariski), reversed_flat_closed(&s));
    }
}

#[test]
fn symbolic_dcc_on_points() {
    // height <= 1: every chain of points has length <= 2, so the descending
    // chain condition on primes holds structurally
    let zz = SymbolicSpectrum::integers();
    for p in zz.enumerate_closed_points(10) {
        let closure = zz.finite(&[p], false).unwrap().closure(TopologyView::Flat);
        // chain below a closed point: {generic, p}
        assert_eq!(closure.explicit_points(), vec![p]);
        assert!(closure.has_generic());
    }
}
