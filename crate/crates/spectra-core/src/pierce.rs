//! Idempotents, regular ideals, and the Pierce spectrum.
//!
//! Naming note: the Boolean algebra of idempotents uses the standard
//! convention meet(e, e') = e e' and join(e, e') = e + e' - e e'. With the
//! basis U_e = { J : e not in J } the identities are
//! U_meet = intersection and U_join = union.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::ideal::{enumerate_primes, quotient_ring, Ideal, PrimeIdeal};
use crate::poset::PointSet;
use crate::ring::FiniteRing;

/// The Boolean algebra carried by the idempotents of a ring.
#[derive(Debug, Clone)]
pub struct IdempotentAlgebra {
    ring: FiniteRing,
    elements: Vec<usize>,
}

impl IdempotentAlgebra {
    /// Builds the algebra and asserts the Boolean axioms exhaustively; a
    /// failure here would indicate an arithmetic bug in the ring.
    pub fn new(ring: &FiniteRing) -> IdempotentAlgebra {
        let alg = IdempotentAlgebra {
            ring: ring.clone(),
            elements: ring.idempotents(),
        };
        alg.assert_axioms();
        alg
    }

    fn assert_axioms(&self) {
        let one = self.ring.one();
        let zero = self.ring.zero();
        for &e in &self.elements {
            let c = self.complement(e);
            assert!(self.elements.binary_search(&c).is_ok(), "not closed under complement");
            assert_eq!(self.join(e, c), one, "e v (1-e) = 1 fails");
            assert_eq!(self.meet(e, c), zero, "e ^ (1-e) = 0 fails");
            for &f in &self.elements {
                let m = self.meet(e, f);
                let j = self.join(e, f);
                assert!(self.elements.binary_search(&m).is_ok(), "not closed under meet");
                assert!(self.elements.binary_search(&j).is_ok(), "not closed under join");
                // absorption
                assert_eq!(self.join(e, m), e);
                assert_eq!(self.meet(e, j), e);
                for &g in &self.elements {
                    // distributivity
                    assert_eq!(
                        self.meet(e, self.join(f, g)),
                        self.join(self.meet(e, f), self.meet(e, g))
                    );
                }
            }
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn meet(&self, e: usize, f: usize) -> usize {
        self.ring.mul(e, f)
    }

    pub fn join(&self, e: usize, f: usize) -> usize {
        self.ring.sub(self.ring.add(e, f), self.ring.mul(e, f))
    }

    pub fn complement(&self, e: usize) -> usize {
        self.ring.sub(self.ring.one(), e)
    }

    /// e <= f in the Boolean order: e f = e.
    pub fn leq(&self, e: usize, f: usize) -> bool {
        self.meet(e, f) == e
    }

    /// Minimal nonzero elements of the Boolean order.
    pub fn atoms(&self) -> Vec<usize> {
        let zero = self.ring.zero();
        self.elements
            .iter()
            .copied()
            .filter(|&e| {
                e != zero
                    && !self
                        .elements
                        .iter()
                        .any(|&f| f != zero && f != e && self.leq(f, e))
            })
            .collect()
    }
}

/// A maximal proper ideal generated by idempotents.
#[derive(Debug, Clone)]
pub struct MaxRegularIdeal {
    pub ideal: Ideal,
    pub generating_idempotents: Vec<usize>,
}

/// The ideal generated by a set of idempotents. Post-condition (checked):
/// it is principal, generated by the join of the generators.
pub fn regular_ideal_generated(ring: &FiniteRing, idempotents: &[usize]) -> Result<Ideal> {
    for &e in idempotents {
        if e >= ring.size() || ring.mul(e, e) != e {
            return Err(Error::NotIdempotent(e));
        }
    }
    let ideal = Ideal::generated(ring, idempotents);
    let alg_join = idempotents
        .iter()
        .fold(ring.zero(), |acc, &e| {
            ring.sub(ring.add(acc, e), ring.mul(acc, e))
        });
    debug_assert_eq!(
        Ideal::generated(ring, &[alg_join]).members(),
        ideal.members(),
        "regular ideal is principal on the join of its generators"
    );
    Ok(ideal)
}

/// All regular ideals, reached by extending known regular ideals one
/// idempotent generator at a time; this is the exhaustive oracle route.
pub fn enumerate_regular_ideals(ring: &FiniteRing) -> Vec<Ideal> {
    let idems = ring.idempotents();
    let mut seen: Vec<Ideal> = Vec::new();
    let mut member_sets: std::collections::BTreeSet<BitSet> = Default::default();
    let zero_ideal = Ideal::generated(ring, &[]);
    member_sets.insert(zero_ideal.members().clone());
    let mut queue = vec![zero_ideal.clone()];
    seen.push(zero_ideal);
    while let Some(i) = queue.pop() {
        for &e in &idems {
            let mut gens = i.generators().to_vec();
            gens.push(e);
            let next = Ideal::generated(ring, &gens);
            if member_sets.insert(next.members().clone()) {
                seen.push(next.clone());
                queue.push(next);
            }
        }
    }
    seen.sort_by(|a, b| a.members().cmp(b.members()));
    seen
}

fn check_regular(ring: &FiniteRing, ideal: &Ideal) -> Result<()> {
    let idem_members: Vec<usize> = ideal
        .members()
        .iter()
        .filter(|&e| ring.mul(e, e) == e)
        .collect();
    let regen = Ideal::generated(ring, &idem_members);
    if regen.members() == ideal.members() {
        Ok(())
    } else {
        Err(Error::NotRegular)
    }
}

/// A proper regular ideal is max-regular exactly when the
/// quotient has only the trivial idempotents.
pub fn is_max_regular(ring: &FiniteRing, ideal: &Ideal) -> Result<bool> {
    if !ring.same_ring(ideal.ring()) {
        return Err(Error::MixedRings);
    }
    if !ideal.is_proper() {
        return Err(Error::NotProper);
    }
    check_regular(ring, ideal)?;
    let (q, _) = quotient_ring(ring, ideal)?;
    Ok(q.idempotents().len() == 2)
}

/// All max-regular ideals, computed as `((1 - a))` over the atoms `a` of the
/// idempotent algebra, sorted by member-set encoding.
pub fn max_regular_ideals(ring: &FiniteRing) -> Result<Vec<MaxRegularIdeal>> {
    let alg = IdempotentAlgebra::new(ring);
    let mut out: Vec<MaxRegularIdeal> = alg
        .atoms()
        .into_iter()
        .map(|a| {
            let e = alg.complement(a);
            MaxRegularIdeal {
                ideal: Ideal::generated(ring, &[e]),
                generating_idempotents: vec![e],
            }
        })
        .collect();
    out.sort_by(|a, b| a.ideal.members().cmp(b.ideal.members()));
    Ok(out)
}

/// The Pierce spectrum: max-regular ideals with the basis U_e.
#[derive(Debug, Clone)]
pub struct PierceSpace {
    pub points: Vec<MaxRegularIdeal>,
    /// For each idempotent e, the basis open U_e = { J : e not in J } as a
    /// subset of `points` indices.
    pub basis: Vec<(usize, BitSet)>,
}

pub fn pierce_spectrum(ring: &FiniteRing) -> Result<PierceSpace> {
    let points = max_regular_ideals(ring)?;
    let alg = IdempotentAlgebra::new(ring);
    let basis: Vec<(usize, BitSet)> = alg
        .elements()
        .iter()
        .map(|&e| {
            let u = BitSet::from_iter(
                points.len(),
                (0..points.len()).filter(|&i| !points[i].ideal.contains(e)),
            );
            (e, u)
        })
        .collect();
    let space = PierceSpace { points, basis };
    space.verify_basis_identities(&alg);
    Ok(space)
}

impl PierceSpace {
    pub fn basis_open(&self, e: usize) -> Option<&BitSet> {
        self.basis.iter().find(|(f, _)| *f == e).map(|(_, u)| u)
    }

    fn verify_basis_identities(&self, alg: &IdempotentAlgebra) {
        let ring = alg.ring();
        let all = BitSet::full(self.points.len());
        assert_eq!(*self.basis_open(ring.one()).unwrap(), all, "U_1 covers");
        for &(e, ref ue) in &self.basis {
            assert_eq!(
                self.basis_open(alg.complement(e)).unwrap(),
                &ue.complement(),
                "U_(1-e) is the complement of U_e"
            );
            for &(f, ref uf) in &self.basis {
                assert_eq!(
                    self.basis_open(alg.meet(e, f)).unwrap(),
                    &ue.intersection(uf),
                    "U_ee' = U_e n U_e'"
                );
                assert_eq!(
                    self.basis_open(alg.join(e, f)).unwrap(),
                    &ue.union(uf),
                    "U_join = U_e u U_e'"
                );
            }
        }
    }
}

/// The map psi: Spec(R) -> Sp(R), sending a prime to the regular ideal
/// generated by the idempotents it contains.
pub fn psi(ring: &FiniteRing, prime: &PrimeIdeal) -> Result<MaxRegularIdeal> {
    if !ring.same_ring(prime.ideal.ring()) {
        return Err(Error::MixedRings);
    }
    let idems: Vec<usize> = prime
        .ideal
        .members()
        .iter()
        .filter(|&e| ring.mul(e, e) == e)
        .collect();
    let ideal = regular_ideal_generated(ring, &idems)?;
    debug_assert_eq!(is_max_regular(ring, &ideal), Ok(true));
    Ok(MaxRegularIdeal {
        ideal,
        generating_idempotents: idems,
    })
}

/// The partition of Spec(R) into the sets V(J) over max-regular J.
pub fn components_via_pierce(ring: &FiniteRing) -> Result<Vec<PointSet>> {
    let primes = enumerate_primes(ring)?;
    let max_regular = max_regular_ideals(ring)?;
    Ok(max_regular
        .iter()
        .map(|j| {
            BitSet::from_iter(
                primes.len(),
                (0..primes.len())
                    .filter(|&i| j.ideal.members().is_subset(primes[i].ideal.members())),
            )
        })
        .collect())
}

/// V(e) over the spectrum poset: the primes containing `e`.
pub fn clopen_from_idempotent(ring: &FiniteRing, e: usize) -> Result<PointSet> {
    if e >= ring.size() || ring.mul(e, e) != e {
        return Err(Error::NotIdempotent(e));
    }
    let primes = enumerate_primes(ring)?;
    Ok(BitSet::from_iter(
        primes.len(),
        (0..primes.len()).filter(|&i| primes[i].ideal.contains(e)),
    ))
}
