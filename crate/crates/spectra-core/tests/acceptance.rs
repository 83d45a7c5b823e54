//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectra_core::*;

fn pass(n: usize, what: &str) {
    println!("ACCEPTANCE {n}: PASS - {what}");
}

/// All labeled posets on `n` points, by exhaustive relation enumeration.
fn all_labeled_posets(n: usize) -> Vec<SpectralPoset> {
    let offdiag: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << offdiag.len()) {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (k, &(i, j)) in offdiag.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let antisym = (0..n).all(|i| ((i + 1)..n).all(|j| !(leq[i * n + j] && leq[j * n + i])));
        let trans = (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| !(leq[i * n + j] && leq[j * n + k]) || leq[i * n + k])
            })
        });
        if antisym && trans {
            out.push(SpectralPoset::from_leq(n, |i, j| leq[i * n + j], None).unwrap());
        }
    }
    out
}

fn random_posets(count: usize, max_points: usize, seed: u64) -> Vec<SpectralPoset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=max_points);
            let mut pairs = Vec::new();
            if n >= 2 {
                for _ in 0..rng.gen_range(0..=2 * n) {
                    let a = rng.gen_range(0..n - 1);
                    let b = rng.gen_range(a + 1..n);
                    pairs.push((a, b));
                }
            }
            SpectralPoset::from_relation(n, &pairs, None).unwrap()
        })
        .collect()
}

fn poset_corpus() -> Vec<SpectralPoset> {
    let mut out = Vec::new();
    for n in 0..=4 {
        out.extend(all_labeled_posets(n));
    }
    out.extend(random_posets(1000, 10, 0x5eed));
    out
}

/// The ring corpus: Z/n for 2..=210, a fixed product sample, and all
/// F_p[x]/(f) of size <= 64.
fn ring_corpus() -> Vec<FiniteRing> {
    let mut out: Vec<FiniteRing> = (2..=210).map(|n| FiniteRing::zmod(n).unwrap()).collect();
    let product_shapes: &[&[usize]] = &[
        &[2, 3],
        &[2, 2],
        &[4, 9],
        &[6, 10],
        &[2, 3, 5],
        &[4, 6],
        &[8, 9, 5],
        &[30, 7],
        &[12, 35],
        &[2, 2, 2],
        &[6, 6],
        &[10, 21],
        &[16, 27],
        &[49, 2],
        &[25, 9, 2],
        &[210, 11],
    ];
    for shape in product_shapes {
        let factors: Vec<FiniteRing> =
            shape.iter().map(|&n| FiniteRing::zmod(n).unwrap()).collect();
        out.push(FiniteRing::product(factors).unwrap());
    }
    for &p in &[2usize, 3, 5, 7] {
        let mut size = p;
        let mut deg = 1;
        while size <= 64 {
            // all monic polynomials of this degree: codes p^deg .. 2 p^deg
            for code in size..2 * size {
                let mut coeffs = Vec::new();
                let mut c = code;
                for _ in 0..=deg {
                    coeffs.push(c % p);
                    c /= p;
                }
                out.push(FiniteRing::poly_quotient(p, coeffs).unwrap());
            }
            size *= p;
            deg += 1;
        }
    }
    out
}

fn partition_as_set(blocks: &[PointSet]) -> BTreeSet<Vec<usize>> {
    blocks
        .iter()
        .filter(|b| !b.is_empty())
        .map(|b| b.to_vec())
        .collect()
}

#[test]
fn criterion_01_topology_oracle() {
    let start = Instant::now();
    let corpus = poset_corpus();
    for poset in &corpus {
        let report = brute_force_oracle(poset).unwrap();
        assert!(
            report.passed(),
            "oracle failed on a poset of size {}: {:?}",
            poset.size(),
            report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .collect::<Vec<_>>()
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "oracle corpus took {elapsed:?}, budget is 60 s"
    );
    pass(
        1,
        &format!(
            "closed families = down/up-sets with topology axioms on {} posets in {elapsed:?}",
            corpus.len()
        ),
    );
}

#[test]
fn criterion_02_component_three_way_equivalence() {
    let corpus = ring_corpus();
    for ring in &corpus {
        let (poset, primes) = spec_poset(ring).unwrap();
        let a = partition_as_set(&poset.connected_components());

        // psi fibers
        let max_regular = max_regular_ideals(ring).unwrap();
        let mut fibers = vec![BitSet::new(primes.len()); max_regular.len()];
        for (i, p) in primes.iter().enumerate() {
            let image = psi(ring, p).unwrap();
            let j = max_regular
                .iter()
                .position(|m| m.ideal.members() == image.ideal.members())
                .expect("psi lands in a max-regular ideal");
            fibers[j].insert(i);
        }
        let b = partition_as_set(&fibers);

        let c = partition_as_set(&components_via_pierce(ring).unwrap());

        assert_eq!(a, b, "components != psi fibers on {}", ring.description());
        assert_eq!(a, c, "components != V(J) blocks on {}", ring.description());
    }
    pass(
        2,
        &format!(
            "flat/zariski components = psi fibers = V(max-regular) on {} rings",
            corpus.len()
        ),
    );
}

#[test]
fn criterion_03_z6_ground_case() {
    let ring = FiniteRing::zmod(6).unwrap();
    assert_eq!(ring.idempotents(), vec![0, 1, 3, 4]);

    let max_regular = max_regular_ideals(&ring).unwrap();
    let sets: Vec<Vec<usize>> = max_regular
        .iter()
        .map(|m| m.ideal.members().to_vec())
        .collect();
    assert_eq!(sets, vec![vec![0, 3], vec![0, 2, 4]]);

    // independent route: maximality by enumeration over the ideal lattice
    let regulars = enumerate_regular_ideals(&ring);
    let proper: Vec<&Ideal> = regulars.iter().filter(|i| i.is_proper()).collect();
    let mut maximal: Vec<Vec<usize>> = proper
        .iter()
        .filter(|i| {
            !proper
                .iter()
                .any(|j| j.members() != i.members() && i.members().is_subset(j.members()))
        })
        .map(|i| i.members().to_vec())
        .collect();
    maximal.sort();
    assert_eq!(maximal, vec![vec![0, 2, 4], vec![0, 3]]);

    assert_eq!(pierce_spectrum(&ring).unwrap().points.len(), 2);
    let (poset, _) = spec_poset(&ring).unwrap();
    assert_eq!(poset.connected_components().len(), 2);
    pass(3, "Z/6: idempotents {0,1,3,4}, max-regular {0,3},{0,2,4}, 2 pierce points, 2 components");
}

#[test]
fn criterion_04_z30_ground_case() {
    let ring = FiniteRing::zmod(30).unwrap();
    assert_eq!(ring.idempotents().len(), 8);
    let alg = IdempotentAlgebra::new(&ring);
    assert_eq!(alg.atoms(), vec![6, 10, 15]);

    let max_regular = max_regular_ideals(&ring).unwrap();
    let mut gens: Vec<Vec<usize>> = max_regular
        .iter()
        .map(|m| m.generating_idempotents.clone())
        .collect();
    gens.sort();
    assert_eq!(gens, vec![vec![16], vec![21], vec![25]]);
    let mut labels: Vec<String> = max_regular.iter().map(|m| m.ideal.label()).collect();
    labels.sort();
    assert_eq!(labels, vec!["(2)", "(3)", "(5)"]);

    let sp = pierce_spectrum(&ring).unwrap();
    assert_eq!(sp.points.len(), 3);

    // psi is surjective
    let primes = enumerate_primes(&ring).unwrap();
    let mut hit = vec![false; sp.points.len()];
    for p in &primes {
        let image = psi(&ring, p).unwrap();
        let j = sp
            .points
            .iter()
            .position(|m| m.ideal.members() == image.ideal.members())
            .unwrap();
        hit[j] = true;
    }
    assert!(hit.iter().all(|&h| h));
    pass(4, "Z/30: 8 idempotents, atoms {6,10,15}, max-regular (16),(21),(25), |Sp| = 3, psi onto");
}

/// Independent factorization oracle for the number of distinct prime factors.
fn omega(mut n: usize) -> u32 {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            count += 1;
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

#[test]
fn criterion_05_idempotent_counting_law() {
    let start = Instant::now();
    for n in 2..=1000usize {
        let ring = FiniteRing::zmod(n).unwrap();
        assert_eq!(
            ring.idempotents().len(),
            1usize << omega(n),
            "idempotent count law fails for n = {n}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget is 5 s");
    pass(5, &format!("|idempotents(Z/n)| = 2^omega(n) for n = 2..=1000 in {elapsed:?}"));
}

#[test]
fn criterion_06_max_regular_oracle_equivalence() {
    let corpus: Vec<FiniteRing> = ring_corpus()
        .into_iter()
        .filter(|r| r.size() <= 256)
        .collect();
    let mut checked = 0usize;
    for ring in &corpus {
        let regulars = enumerate_regular_ideals(ring);
        let proper: Vec<&Ideal> = regulars.iter().filter(|i| i.is_proper()).collect();
        for i in &proper {
            let via_quotient = is_max_regular(ring, i).unwrap();
            let via_enumeration = !proper
                .iter()
                .any(|j| j.members() != i.members() && i.members().is_subset(j.members()));
            assert_eq!(
                via_quotient,
                via_enumeration,
                "disagreement on {} at ideal {}",
                ring.description(),
                i.label()
            );
            checked += 1;
        }
    }
    pass(
        6,
        &format!(
            "quotient-idempotent test agrees with maximality-by-enumeration on {checked} regular ideals over {} rings",
            corpus.len()
        ),
    );
}

#[test]
fn criterion_07_hochster_duality() {
    let corpus = poset_corpus();
    for poset in &corpus {
        let dual = poset.hochster_dual();
        assert_eq!(&dual.hochster_dual(), poset, "dual is not an involution");
        let n = poset.size();
        let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
        for mask in 0..=full {
            let e = BitSet::from_iter(n, (0..n).filter(|&i| mask >> i & 1 == 1));
            assert_eq!(
                poset.is_closed(TopologyView::Flat, &e),
                dual.is_closed(TopologyView::Zariski, &e),
                "closed families differ on a poset of size {n}"
            );
            assert_eq!(
                poset.is_closed(TopologyView::Zariski, &e),
                dual.is_closed(TopologyView::Flat, &e),
            );
        }
    }
    pass(
        7,
        &format!("flat-closed(X) = zariski-closed(dual X) and dual^2 = id on {} posets", corpus.len()),
    );
}

#[test]
fn criterion_08_spec_z_suite() {
    let zz = SymbolicSpectrum::integers();

    let fin23 = zz.finite(&[2, 3], false).unwrap();
    assert_eq!(
        fin23.closure(TopologyView::Flat),
        zz.finite(&[2, 3], true).unwrap()
    );

    let comps = sym_irreducible_components(&zz, TopologyView::Flat).materialize(3);
    assert_eq!(
        comps,
        vec![
            zz.finite(&[2], true).unwrap(),
            zz.finite(&[3], true).unwrap(),
            zz.finite(&[5], true).unwrap(),
        ]
    );

    let all_primes = zz.cofinite(&[], false).unwrap();
    assert!(matches!(
        condition_vi_symbolic(&all_primes, SymPoint::Generic).unwrap(),
        ConditionVi::FailsWithWitness { .. }
    ));

    assert!(!sym_noetherian(&zz, TopologyView::Flat));
    assert!(sym_noetherian(&zz, TopologyView::Zariski));
    assert!(noetherian_views_consistent(&zz));
    pass(8, "Spec(Z): flat closures, component family, condition-(vi) witness, noetherian flags");
}

#[test]
fn criterion_09_clopen_bijection() {
    let corpus = ring_corpus();
    for ring in &corpus {
        let (poset, _) = spec_poset(ring).unwrap();
        let idempotents = ring.idempotents();
        let mut images: Vec<Vec<usize>> = idempotents
            .iter()
            .map(|&e| clopen_from_idempotent(ring, e).unwrap().to_vec())
            .collect();
        images.sort();
        let dup_free = {
            let mut d = images.clone();
            d.dedup();
            d.len() == images.len()
        };
        assert!(dup_free, "e -> V(e) not injective on {}", ring.description());
        let mut clopens: Vec<Vec<usize>> = poset
            .clopen_sets()
            .unwrap()
            .iter()
            .map(|s| s.to_vec())
            .collect();
        clopens.sort();
        assert_eq!(images, clopens, "e -> V(e) not onto on {}", ring.description());

        let connected = poset.connected_components().len() <= 1;
        assert_eq!(
            connected,
            idempotents.len() == 2,
            "connectedness vs idempotents fails on {}",
            ring.description()
        );
    }
    pass(
        9,
        &format!(
            "e -> V(e) bijects onto clopens; connected iff trivial idempotents, on {} rings",
            corpus.len()
        ),
    );
}
