//! Exact topology calculus on symbolic one-dimensional spectra: one generic
//! point plus an infinite, enumerable family of closed points. Covers
//! Spec(Z) and Spec(F_p[x]).
//!
//! Subsets are kept in a finite/cofinite representation with an explicit
//! generic-point flag, which keeps every topology question here decidable.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poset::TopologyView;

/// The symbolic spectra supported: the integers, or a univariate polynomial
/// ring over a small prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Integers,
    PolyOverFp(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolicSpectrum {
    pub kind: SpectrumKind,
}

/// A point: the generic point (0), or a closed point encoded as a prime
/// integer / base-p encoding of a monic irreducible polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SymPoint {
    Generic,
    Closed(u64),
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn decode_poly(mut code: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while code > 0 {
        out.push(code % p);
        code /= p;
    }
    out
}

/// Remainder of a mod b over F_p, b nonzero with invertible lead.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db];
    let inv = (1..p).find(|&x| x * lead % p == 1).unwrap();
    while r.len() > db {
        let c = *r.last().unwrap() % p;
        let shift = r.len() - 1 - db;
        if c != 0 {
            let f = c * inv % p;
            for (k, &bc) in b.iter().enumerate() {
                let idx = shift + k;
                r[idx] = (r[idx] + p * p - f * bc % p) % p;
            }
        }
        r.pop();
        while r.len() > db && *r.last().unwrap() == 0 {
            r.pop();
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

impl SymbolicSpectrum {
    pub fn integers() -> Self {
        SymbolicSpectrum {
            kind: SpectrumKind::Integers,
        }
    }

    pub fn poly_over_fp(p: usize) -> Result<Self> {
        if !is_prime_u64(p as u64) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        Ok(SymbolicSpectrum {
            kind: SpectrumKind::PolyOverFp(p),
        })
    }

    /// Membership test for the closed-point domain.
    pub fn is_closed_point(&self, code: u64) -> bool {
        match self.kind {
            SpectrumKind::Integers => is_prime_u64(code),
            SpectrumKind::PolyOverFp(p) => {
                let p = p as u64;
                let coeffs = decode_poly(code, p);
                if coeffs.len() < 2 {
                    return false; // constants are not points
                }
                if *coeffs.last().unwrap() != 1 {
                    return false; // canonical encodings are monic
                }
                let deg = coeffs.len() - 1;
                // trial division by all monic polynomials of degree 1..=deg/2
                for d in 1..=deg / 2 {
                    let lo = p.pow(d as u32);
                    let hi = 2 * lo;
                    for dc in lo..hi {
                        let div = decode_poly(dc, p);
                        if div.last() != Some(&1) {
                            continue;
                        }
                        if poly_rem(&coeffs, &div, p).is_empty() {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }

    /// The first `k` closed points in increasing code order; a witness that
    /// the domain is infinite for any requested `k`.
    pub fn enumerate_closed_points(&self, k: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(k);
        let mut code = 2u64;
        while out.len() < k {
            if self.is_closed_point(code) {
                out.push(code);
            }
            code += 1;
        }
        out
    }

    pub fn point_label(&self, point: SymPoint) -> String {
        match point {
            SymPoint::Generic => "(0)".to_string(),
            SymPoint::Closed(code) => match self.kind {
                SpectrumKind::Integers => code.to_string(),
                SpectrumKind::PolyOverFp(p) => {
                    let coeffs = decode_poly(code, p as u64);
                    let mut terms = Vec::new();
                    for (i, &c) in coeffs.iter().enumerate().rev() {
                        if c == 0 {
                            continue;
                        }
                        let t = match (i, c) {
                            (0, c) => c.to_string(),
                            (1, 1) => "x".to_string(),
                            (1, c) => format!("{c}x"),
                            (i, 1) => format!("x^{i}"),
                            (i, c) => format!("{c}x^{i}"),
                        };
                        terms.push(t);
                    }
                    if terms.is_empty() {
                        "0".to_string()
                    } else {
                        terms.join("+")
                    }
                }
            },
        }
    }

    pub fn whole_space(&self) -> SymSet {
        SymSet {
            spectrum: *self,
            mode: Mode::Cofin(BTreeSet::new()),
            has_generic: true,
        }
    }

    pub fn empty_set(&self) -> SymSet {
        SymSet {
            spectrum: *self,
            mode: Mode::Fin(BTreeSet::new()),
            has_generic: false,
        }
    }

    pub fn finite(&self, closed_points: &[u64], has_generic: bool) -> Result<SymSet> {
        self.make(Mode::Fin(self.validated(closed_points)?), has_generic)
    }

    pub fn cofinite(&self, excluded: &[u64], has_generic: bool) -> Result<SymSet> {
        self.make(Mode::Cofin(self.validated(excluded)?), has_generic)
    }

    fn validated(&self, pts: &[u64]) -> Result<BTreeSet<u64>> {
        for &p in pts {
            if !self.is_closed_point(p) {
                return Err(Error::InvalidParameter(format!(
                    "{p} is not a closed point of this spectrum"
                )));
            }
        }
        Ok(pts.iter().copied().collect())
    }

    fn make(&self, mode: Mode, has_generic: bool) -> Result<SymSet> {
        Ok(SymSet {
            spectrum: *self,
            mode,
            has_generic,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Mode {
    /// Explicit finite set of closed points.
    Fin(BTreeSet<u64>),
    /// All closed points except an explicit finite set.
    Cofin(BTreeSet<u64>),
}

/// A finite-or-cofinite set of closed points, plus the generic-point flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymSet {
    spectrum: SymbolicSpectrum,
    mode: Mode,
    has_generic: bool,
}

impl SymSet {
    pub fn spectrum(&self) -> &SymbolicSpectrum {
        &self.spectrum
    }

    pub fn has_generic(&self) -> bool {
        self.has_generic
    }

    pub fn is_finite_mode(&self) -> bool {
        matches!(self.mode, Mode::Fin(_))
    }

    /// The explicit finite set: members for `Fin`, exclusions for `Cofin`.
    pub fn explicit_points(&self) -> Vec<u64> {
        match &self.mode {
            Mode::Fin(s) | Mode::Cofin(s) => s.iter().copied().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.has_generic && matches!(&self.mode, Mode::Fin(s) if s.is_empty())
    }

    pub fn is_whole_space(&self) -> bool {
        self.has_generic && matches!(&self.mode, Mode::Cofin(s) if s.is_empty())
    }

    pub fn contains(&self, p: SymPoint) -> bool {
        match p {
            SymPoint::Generic => self.has_generic,
            SymPoint::Closed(c) => match &self.mode {
                Mode::Fin(s) => s.contains(&c),
                Mode::Cofin(s) => !s.contains(&c),
            },
        }
    }

    pub fn complement(&self) -> SymSet {
        let mode = match &self.mode {
            Mode::Fin(s) => Mode::Cofin(s.clone()),
            Mode::Cofin(s) => Mode::Fin(s.clone()),
        };
        SymSet {
            spectrum: self.spectrum,
            mode,
            has_generic: !self.has_generic,
        }
    }

    fn check_same(&self, other: &SymSet) -> Result<()> {
        if self.spectrum == other.spectrum {
            Ok(())
        } else {
            Err(Error::MixedSpectra)
        }
    }

    pub fn union(&self, other: &SymSet) -> Result<SymSet> {
        self.check_same(other)?;
        let mode = match (&self.mode, &other.mode) {
            (Mode::Fin(a), Mode::Fin(b)) => Mode::Fin(a.union(b).copied().collect()),
            (Mode::Fin(a), Mode::Cofin(b)) | (Mode::Cofin(b), Mode::Fin(a)) => {
                Mode::Cofin(b.difference(a).copied().collect())
            }
            (Mode::Cofin(a), Mode::Cofin(b)) => {
                Mode::Cofin(a.intersection(b).copied().collect())
            }
        };
        Ok(SymSet {
            spectrum: self.spectrum,
            mode,
            has_generic: self.has_generic || other.has_generic,
        })
    }

    pub fn intersection(&self, other: &SymSet) -> Result<SymSet> {
        self.check_same(other)?;
        Ok(self
            .complement()
            .union(&other.complement())?
            .complement())
    }

    pub fn is_closed(&self, view: TopologyView) -> bool {
        match view {
            // down-sets containing all generalizations: empty or generic in
            TopologyView::Flat => self.is_empty() || self.has_generic,
            // whole space, or a finite set of closed points
            TopologyView::Zariski => {
                self.is_whole_space() || (self.is_finite_mode() && !self.has_generic)
            }
            // one-point compactification: finite without generic, or any
            // set containing the generic point
            TopologyView::Patch => {
                (self.is_finite_mode() && !self.has_generic) || self.has_generic
            }
        }
    }

    pub fn closure(&self, view: TopologyView) -> SymSet {
        if self.is_closed(view) {
            return self.clone();
        }
        match view {
            TopologyView::Flat | TopologyView::Patch => {
                let mut out = self.clone();
                out.has_generic = true;
                out
            }
            TopologyView::Zariski => self.spectrum.whole_space(),
        }
    }
}

/// Flat irreducible components: the family `{generic, p}` indexed by all
/// closed points, returned lazily with a bounded materializer.
#[derive(Debug, Clone)]
pub enum IrreducibleComponents {
    /// Zariski: the whole space is the unique component.
    WholeSpace,
    /// Flat: one component per closed point.
    PerClosedPoint(SymbolicSpectrum),
}

impl IrreducibleComponents {
    pub fn describe(&self) -> String {
        match self {
            IrreducibleComponents::WholeSpace => "the whole space".to_string(),
            IrreducibleComponents::PerClosedPoint(_) => {
                "{generic, p} for every closed point p".to_string()
            }
        }
    }

    /// Materialize the first `limit` components.
    pub fn materialize(&self, limit: usize) -> Vec<SymSet> {
        match self {
            IrreducibleComponents::WholeSpace => vec![],
            IrreducibleComponents::PerClosedPoint(sp) => sp
                .enumerate_closed_points(limit)
                .into_iter()
                .map(|p| sp.finite(&[p], true).unwrap())
                .collect(),
        }
    }
}

pub fn sym_irreducible_components(
    spectrum: &SymbolicSpectrum,
    view: TopologyView,
) -> IrreducibleComponents {
    match view {
        TopologyView::Zariski => IrreducibleComponents::WholeSpace,
        _ => IrreducibleComponents::PerClosedPoint(*spectrum),
    }
}

/// Outcome of a condition-(vi) instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionVi {
    Holds,
    /// The hypothesis holds but no member of the family is contained in the
    /// target prime.
    FailsWithWitness { description: String },
}

/// Decide condition (vi) exactly: the intersection of an
/// infinite family of maximal primes is the zero ideal; a finite family has
/// intersection generated by the product; containments are divisibility.
pub fn condition_vi_symbolic(family: &SymSet, p: SymPoint) -> Result<ConditionVi> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let intersection_is_zero = family.has_generic() || !family.is_finite_mode();
    let hypothesis = match p {
        SymPoint::Generic => intersection_is_zero,
        SymPoint::Closed(q) => {
            // (0) is contained in every ideal; a finite product lands in
            // (q) exactly when q is one of the factors
            intersection_is_zero || family.contains(SymPoint::Closed(q))
        }
    };
    if !hypothesis {
        return Ok(ConditionVi::Holds);
    }
    let conclusion = match p {
        // only the generic prime (0) is contained in (0)
        SymPoint::Generic => family.has_generic(),
        SymPoint::Closed(q) => {
            family.has_generic() || family.contains(SymPoint::Closed(q))
        }
    };
    if conclusion {
        Ok(ConditionVi::Holds)
    } else {
        Ok(ConditionVi::FailsWithWitness {
            description: format!(
                "the intersection of the family is (0), contained in {}, \
                 but no member of the family is",
                family.spectrum().point_label(p)
            ),
        })
    }
}

/// Flat: false, witnessed by condition (vi) on the family of all closed
/// points. Zariski: true (descending chains of closed sets stabilize).
pub fn sym_noetherian(spectrum: &SymbolicSpectrum, view: TopologyView) -> bool {
    match view {
        TopologyView::Flat => {
            let all_primes = spectrum.cofinite(&[], false).unwrap();
            let witness = condition_vi_symbolic(&all_primes, SymPoint::Generic).unwrap();
            debug_assert!(matches!(witness, ConditionVi::FailsWithWitness { .. }));
            false
        }
        TopologyView::Zariski => true,
        TopologyView::Patch => false, // infinite discrete-on-closed-points family
    }
}

/// A spectrum noetherian in both topologies must be finite; this spectrum
/// is infinite, so at most one view may report noetherian.
pub fn noetherian_views_consistent(spectrum: &SymbolicSpectrum) -> bool {
    let infinite = spectrum.enumerate_closed_points(5).len() == 5;
    let flat = sym_noetherian(spectrum, TopologyView::Flat);
    let zariski = sym_noetherian(spectrum, TopologyView::Zariski);
    !(flat && zariski && infinite)
}

/// Result of a finite-subcover search over flat opens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubcoverResult {
    /// Indices into the input cover forming a finite subcover.
    Subcover(Vec<usize>),
    /// The input does not cover; some point is left uncovered.
    NotACover { witness: SymPoint },
}

/// Quasi-compactness of the flat topology in this model: every proper flat
/// open misses the generic point, so a cover must contain the whole space.
pub fn sym_finite_subcover(cover: &[SymSet]) -> Result<SubcoverResult> {
    for s in cover {
        if !s.complement().is_closed(TopologyView::Flat) {
            return Err(Error::NotOpen);
        }
    }
    match cover.iter().position(|s| s.contains(SymPoint::Generic)) {
        Some(i) => {
            debug_assert!(cover[i].is_whole_space());
            Ok(SubcoverResult::Subcover(vec![i]))
        }
        None => Ok(SubcoverResult::NotACover {
            witness: SymPoint::Generic,
        }),
    }
}
