//! Ideal arithmetic, prime enumeration, quotients, and the spectrum poset.
//!
//! The prime enumeration follows a lattice-first strategy: close the set of
//! principal ideals under sums (a fixpoint), then filter by an exhaustive
//! primality scan. This works uniformly for every ring presentation.

use std::collections::BTreeSet;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::poset::SpectralPoset;
use crate::ring::{FiniteRing, PRIME_ENUM_BOUND};

/// A subset of the carrier closed under addition and ambient multiplication.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: FiniteRing,
    members: BitSet,
    generators: Vec<usize>,
}

impl Ideal {
    /// Smallest ideal containing `generators`, computed as `Rg1 + .. + Rgk`.
    pub fn generated(ring: &FiniteRing, generators: &[usize]) -> Ideal {
        assert!(generators.iter().all(|&g| g < ring.size()));
        let mut members = BitSet::new(ring.size());
        members.insert(ring.zero());
        for &g in generators {
            let principal = principal_members(ring, g);
            members = sumset(ring, &members, &principal);
        }
        let mut gens: Vec<usize> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        Ideal {
            ring: ring.clone(),
            members,
            generators: gens,
        }
    }

    /// Wrap a member set known to be an ideal; generators are recomputed
    /// greedily so the `members = closure(generators)` invariant holds.
    fn from_members(ring: &FiniteRing, members: BitSet) -> Ideal {
        let generators = minimal_generators(ring, &members);
        let ideal = Ideal {
            ring: ring.clone(),
            members,
            generators,
        };
        debug_assert_eq!(
            Ideal::generated(ring, &ideal.generators).members,
            ideal.members
        );
        ideal
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn is_proper(&self) -> bool {
        !self.members.contains(self.ring.one())
    }

    pub fn is_whole_ring(&self) -> bool {
        self.members.count() == self.ring.size()
    }

    fn check_same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        let members = sumset(&self.ring, &self.members, &other.members);
        Ok(Ideal::from_members(&self.ring, members))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        let mut gens = Vec::new();
        for &a in &self.generators {
            for &b in &other.generators {
                gens.push(self.ring.mul(a, b));
            }
        }
        Ok(Ideal::generated(&self.ring, &gens))
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        Ok(Ideal::from_members(
            &self.ring,
            self.members.intersection(&other.members),
        ))
    }

    /// `{a : a^k in I for some k <= |R|}`.
    pub fn radical(&self) -> Ideal {
        let mut members = BitSet::new(self.ring.size());
        for a in 0..self.ring.size() {
            let mut pow = a;
            for _ in 0..self.ring.size() {
                if self.members.contains(pow) {
                    members.insert(a);
                    break;
                }
                pow = self.ring.mul(pow, a);
            }
        }
        Ideal::from_members(&self.ring, members)
    }

    /// Proper, and `ab in I` forces `a in I` or `b in I` (exhaustive scan).
    pub fn is_prime(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        let n = self.ring.size();
        for a in 0..n {
            if self.members.contains(a) {
                continue;
            }
            for b in a..n {
                if self.members.contains(b) {
                    continue;
                }
                if self.members.contains(self.ring.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest generator set found by a greedy ascending scan, used to
    /// label ideals in reports, e.g. `(2)`.
    pub fn label(&self) -> String {
        let gens = minimal_generators(&self.ring, &self.members);
        format!(
            "({})",
            gens.iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// A prime ideal together with its certification flag.
#[derive(Debug, Clone)]
pub struct PrimeIdeal {
    pub ideal: Ideal,
    pub certified: bool,
}

fn principal_members(ring: &FiniteRing, g: usize) -> BitSet {
    let mut s = BitSet::new(ring.size());
    for r in 0..ring.size() {
        s.insert(ring.mul(r, g));
    }
    s
}

fn sumset(ring: &FiniteRing, a: &BitSet, b: &BitSet) -> BitSet {
    let mut out = BitSet::new(ring.size());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(ring.add(x, y));
        }
    }
    out
}

fn minimal_generators(ring: &FiniteRing, members: &BitSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = BitSet::new(ring.size());
    current.insert(ring.zero());
    for e in members.iter() {
        if e == ring.zero() || current.contains(e) {
            continue;
        }
        gens.push(e);
        current = sumset(ring, &current, &principal_members(ring, e));
        if current == *members {
            break;
        }
    }
    gens
}

/// All ideals of the ring: principal ideals closed under sums.
pub fn ideal_lattice(ring: &FiniteRing) -> Result<Vec<Ideal>> {
    if ring.size() > PRIME_ENUM_BOUND {
        return Err(Error::SizeBound(format!(
            "ideal-lattice enumeration requires ring size <= {PRIME_ENUM_BOUND}, got {}",
            ring.size()
        )));
    }
    let mut principals: Vec<BitSet> = Vec::new();
    let mut seen: BTreeSet<BitSet> = BTreeSet::new();
    for g in 0..ring.size() {
        let p = principal_members(ring, g);
        if seen.insert(p.clone()) {
            principals.push(p);
        }
    }
    let mut queue: Vec<BitSet> = seen.iter().cloned().collect();
    while let Some(ideal) = queue.pop() {
        for p in &principals {
            let s = sumset(ring, &ideal, p);
            if seen.insert(s.clone()) {
                queue.push(s);
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|members| Ideal::from_members(ring, members))
        .collect())
}

/// Complete, duplicate-free list of prime ideals, sorted by the bit-vector
/// value of their member sets.
pub fn enumerate_primes(ring: &FiniteRing) -> Result<Vec<PrimeIdeal>> {
    let primes = ideal_lattice(ring)?
        .into_iter()
        .filter(|i| i.is_prime())
        .map(|ideal| PrimeIdeal {
            ideal,
            certified: true,
        })
        .collect();
    Ok(primes)
}

/// The quotient ring `R/I` as a table ring on cosets, together with the
/// projection element -> coset index.
pub fn quotient_ring(ring: &FiniteRing, ideal: &Ideal) -> Result<(FiniteRing, Vec<usize>)> {
    if !ring.same_ring(ideal.ring()) {
        return Err(Error::MixedRings);
    }
    if !ideal.is_proper() {
        return Err(Error::InvalidIdeal(
            "quotient by the unit ideal is the zero ring".into(),
        ));
    }
    let n = ring.size();
    // canonical representative of x + I: the least element of the coset
    let mut rep = vec![usize::MAX; n];
    for x in 0..n {
        let mut r = x;
        for m in ideal.members().iter() {
            r = r.min(ring.add(x, m));
        }
        rep[x] = r;
    }
    let mut reps: Vec<usize> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let coset_of_rep = |r: usize| reps.binary_search(&r).unwrap();
    let projection: Vec<usize> = (0..n).map(|x| coset_of_rep(rep[x])).collect();
    let q = reps.len();
    let mut add = vec![0usize; q * q];
    let mut mul = vec![0usize; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            add[i * q + j] = projection[ring.add(a, b)];
            mul[i * q + j] = projection[ring.mul(a, b)];
        }
    }
    let zero = projection[ring.zero()];
    let one = projection[ring.one()];
    let desc = format!("{} / {}", ring.description(), ideal.label());
    Ok((
        FiniteRing::table_unchecked(q, add, mul, zero, one, desc),
        projection,
    ))
}

/// The spectrum as a poset under inclusion, with its prime labeling.
pub fn spec_poset(ring: &FiniteRing) -> Result<(SpectralPoset, Vec<PrimeIdeal>)> {
    let primes = enumerate_primes(ring)?;
    let labels: Vec<String> = primes.iter().map(|p| p.ideal.label()).collect();
    let poset = SpectralPoset::from_leq(
        primes.len(),
        |i, j| primes[i].ideal.members().is_subset(primes[j].ideal.members()),
        Some(labels),
    )
    .expect("inclusion order is a partial order");
    Ok((poset, primes))
}

/// The spectral maps induced by quotients and idempotent localizations.
#[derive(Debug, Clone)]
pub enum SpecMapKind {
    Quotient(Ideal),
    IdempotentLocalization(usize),
}

#[derive(Debug, Clone)]
pub struct InducedSpecMap {
    /// For each prime of the source spectrum, the index of its preimage
    /// prime in `Spec(R)`.
    pub point_map: Vec<usize>,
    /// Image of the map as a subset of `Spec(R)` point indices.
    pub image: BitSet,
    /// The set the image must equal: `V(I)` for quotients, `D(e)` for
    /// idempotent localizations.
    pub expected_image: BitSet,
    pub image_matches: bool,
    pub image_closed_zariski: bool,
    pub image_closed_flat: bool,
    pub image_closed_patch: bool,
}

pub fn induced_spec_map(ring: &FiniteRing, kind: SpecMapKind) -> Result<InducedSpecMap> {
    let (ideal, expected): (Ideal, Option<usize>) = match kind {
        SpecMapKind::Quotient(i) => {
            if !ring.same_ring(i.ring()) {
                return Err(Error::MixedRings);
            }
            (i, None)
        }
        SpecMapKind::IdempotentLocalization(e) => {
            if e >= ring.size() || ring.mul(e, e) != e {
                return Err(Error::NotIdempotent(e));
            }
            let one_minus_e = ring.sub(ring.one(), e);
            (Ideal::generated(ring, &[one_minus_e]), Some(e))
        }
    };
    if !ideal.is_proper() {
        return Err(Error::InvalidIdeal(
            "quotient by the unit ideal has empty spectrum".into(),
        ));
    }
    let (poset, primes) = spec_poset(ring)?;
    let (quotient, projection) = quotient_ring(ring, &ideal)?;
    let q_primes = enumerate_primes(&quotient)?;

    let mut point_map = Vec::with_capacity(q_primes.len());
    let mut image = BitSet::new(primes.len());
    for qp in &q_primes {
        let mut preimage = BitSet::new(ring.size());
        for x in 0..ring.size() {
            if qp.ideal.contains(projection[x]) {
                preimage.insert(x);
            }
        }
        let idx = primes
            .iter()
            .position(|p| *p.ideal.members() == preimage)
            .expect("preimage of a prime is a prime of R");
        point_map.push(idx);
        image.insert(idx);
    }

    let expected_image = match expected {
        // D(e) = primes not containing e
        Some(e) => BitSet::from_iter(
            primes.len(),
            (0..primes.len()).filter(|&i| !primes[i].ideal.contains(e)),
        ),
        // V(I) = primes containing I
        None => BitSet::from_iter(
            primes.len(),
            (0..primes.len()).filter(|&i| ideal.members().is_subset(primes[i].ideal.members())),
        ),
    };

    use crate::poset::TopologyView;
    Ok(InducedSpecMap {
        image_matches: image == expected_image,
        image_closed_zariski: poset.is_closed(TopologyView::Zariski, &image),
        image_closed_flat: poset.is_closed(TopologyView::Flat, &image),
        image_closed_patch: poset.is_closed(TopologyView::Patch, &image),
        point_map,
        image,
        expected_image,
    })
}

/// Condition-(vi) instance for an explicit finite family:
/// if the intersection of the family lies in `p`, some member must.
pub fn condition_vi_finite(family: &[PrimeIdeal], p: &PrimeIdeal) -> Result<bool> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for q in family {
        if !q.ideal.ring().same_ring(p.ideal.ring()) {
            return Err(Error::MixedRings);
        }
    }
    let mut inter = family[0].ideal.members().clone();
    for q in &family[1..] {
        inter.intersect_with(q.ideal.members());
    }
    if !inter.is_subset(p.ideal.members()) {
        return Ok(true); // hypothesis fails, implication holds vacuously
    }
    Ok(family
        .iter()
        .any(|q| q.ideal.members().is_subset(p.ideal.members())))
}
