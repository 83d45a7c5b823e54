//! Finite spectral spaces as posets under the specialization order.
//!
//! On a finite spectral space the patch topology is discrete, so a subset is
//! flat closed exactly when it is a down-set and Zariski closed exactly when
//! it is an up-set. Every operation here reduces to order calculus on those
//! two facts; the brute-force oracle re-derives the closed-set families from
//! scratch and checks the fast paths against them.

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// A subset of the points of a poset.
pub type PointSet = BitSet;

/// The three topologies carried by a spectral space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyView {
    Zariski,
    Flat,
    Patch,
}

impl TopologyView {
    pub fn name(self) -> &'static str {
        match self {
            TopologyView::Zariski => "zariski",
            TopologyView::Flat => "flat",
            TopologyView::Patch => "patch",
        }
    }
}

/// A finite poset, `a <= b` meaning `b` specializes `a` (as primes, `a` is
/// contained in `b`).
#[derive(Debug, Clone)]
pub struct SpectralPoset {
    size: usize,
    /// below[p] = { q : q <= p }
    below: Vec<BitSet>,
    /// above[p] = { q : p <= q }
    above: Vec<BitSet>,
    labels: Option<Vec<String>>,
}

impl PartialEq for SpectralPoset {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.below == other.below
    }
}

impl SpectralPoset {
    /// Build from a covering or full relation given as `a <= b` pairs; the
    /// reflexive-transitive closure is computed here.
    pub fn from_relation(
        size: usize,
        pairs: &[(usize, usize)],
        labels: Option<Vec<String>>,
    ) -> Result<SpectralPoset> {
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(Error::InvalidParameter(format!(
                    "relation pair ({a}, {b}) out of range for {size} points"
                )));
            }
        }
        if let Some(l) = &labels {
            if l.len() != size {
                return Err(Error::InvalidParameter("label count mismatch".into()));
            }
        }
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for &(a, b) in pairs {
            leq[a * size + b] = true;
        }
        // Warshall transitive closure
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..size {
            for j in (i + 1)..size {
                if leq[i * size + j] && leq[j * size + i] {
                    return Err(Error::CycleDetected(i, j));
                }
            }
        }
        Ok(Self::from_matrix(size, &leq, labels))
    }

    /// Build from a full order predicate; verifies the poset axioms.
    pub fn from_leq(
        size: usize,
        leq: impl Fn(usize, usize) -> bool,
        labels: Option<Vec<String>>,
    ) -> Result<SpectralPoset> {
        let mut m = vec![false; size * size];
        for i in 0..size {
            for j in 0..size {
                m[i * size + j] = leq(i, j);
            }
        }
        for i in 0..size {
            if !m[i * size + i] {
                return Err(Error::InvalidParameter(format!("{i} <= {i} fails")));
            }
            for j in 0..size {
                if i != j && m[i * size + j] && m[j * size + i] {
                    return Err(Error::CycleDetected(i, j));
                }
                for k in 0..size {
                    if m[i * size + j] && m[j * size + k] && !m[i * size + k] {
                        return Err(Error::InvalidParameter(format!(
                            "transitivity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(Self::from_matrix(size, &m, labels))
    }

    fn from_matrix(size: usize, leq: &[bool], labels: Option<Vec<String>>) -> SpectralPoset {
        let mut below = vec![BitSet::new(size); size];
        let mut above = vec![BitSet::new(size); size];
        for i in 0..size {
            for j in 0..size {
                if leq[i * size + j] {
                    below[j].insert(i);
                    above[i].insert(j);
                }
            }
        }
        SpectralPoset {
            size,
            below,
            above,
            labels,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, p: usize) -> String {
        match &self.labels {
            Some(l) => l[p].clone(),
            None => p.to_string(),
        }
    }

    pub fn empty_set(&self) -> PointSet {
        BitSet::new(self.size)
    }

    pub fn full_set(&self) -> PointSet {
        BitSet::full(self.size)
    }

    pub fn is_closed(&self, view: TopologyView, set: &PointSet) -> bool {
        match view {
            TopologyView::Zariski => set.iter().all(|p| self.above[p].is_subset(set)),
            TopologyView::Flat => set.iter().all(|p| self.below[p].is_subset(set)),
            TopologyView::Patch => true,
        }
    }

    pub fn is_open(&self, view: TopologyView, set: &PointSet) -> bool {
        self.is_closed(view, &set.complement())
    }

    pub fn closure(&self, view: TopologyView, set: &PointSet) -> PointSet {
        let mut out = set.clone();
        match view {
            TopologyView::Zariski => {
                for p in set.iter() {
                    out.union_with(&self.above[p]);
                }
            }
            TopologyView::Flat => {
                for p in set.iter() {
                    out.union_with(&self.below[p]);
                }
            }
            TopologyView::Patch => {}
        }
        out
    }

    pub fn interior(&self, view: TopologyView, set: &PointSet) -> PointSet {
        self.closure(view, &set.complement()).complement()
    }

    /// Flat closure of a single point: the principal down-set `{q : q <= p}`.
    pub fn flat_closure_point(&self, p: usize) -> PointSet {
        self.below[p].clone()
    }

    /// The irreducible closed sets of the view: exactly the principal
    /// down-sets (flat) / up-sets (Zariski), one per point.
    pub fn irreducible_closed_sets(&self, view: TopologyView) -> Vec<PointSet> {
        let sets: Vec<PointSet> = match view {
            TopologyView::Flat => self.below.clone(),
            TopologyView::Zariski => self.above.clone(),
            TopologyView::Patch => (0..self.size)
                .map(|p| BitSet::from_iter(self.size, [p]))
                .collect(),
        };
        let mut sets = sets;
        sets.sort();
        sets
    }

    /// The unique point whose closure is `set`, or `None` when `set` is not
    /// irreducible. Errors when `set` is not closed in the view.
    pub fn generic_point(&self, view: TopologyView, set: &PointSet) -> Result<Option<usize>> {
        if !self.is_closed(view, set) {
            return Err(Error::NotClosed);
        }
        Ok((0..self.size).find(|&p| {
            let single = BitSet::from_iter(self.size, [p]);
            self.closure(view, &single) == *set
        }))
    }

    pub fn maximal_points(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&p| self.above[p].count() == 1)
            .collect()
    }

    pub fn minimal_points(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&p| self.below[p].count() == 1)
            .collect()
    }

    /// Maximal irreducible closed sets: principal down-sets of maximal
    /// points (flat) / principal up-sets of minimal points (Zariski).
    pub fn irreducible_components(&self, view: TopologyView) -> Vec<PointSet> {
        let mut out: Vec<PointSet> = match view {
            TopologyView::Flat => self
                .maximal_points()
                .into_iter()
                .map(|p| self.below[p].clone())
                .collect(),
            TopologyView::Zariski => self
                .minimal_points()
                .into_iter()
                .map(|p| self.above[p].clone())
                .collect(),
            TopologyView::Patch => (0..self.size)
                .map(|p| BitSet::from_iter(self.size, [p]))
                .collect(),
        };
        out.sort();
        out
    }

    /// Components of the comparability graph; serves both the flat and the
    /// Zariski view.
    pub fn connected_components(&self) -> Vec<PointSet> {
        let mut seen = BitSet::new(self.size);
        let mut out = Vec::new();
        for start in 0..self.size {
            if seen.contains(start) {
                continue;
            }
            let mut comp = BitSet::new(self.size);
            let mut stack = vec![start];
            comp.insert(start);
            while let Some(p) = stack.pop() {
                for q in self.below[p].union(&self.above[p]).iter() {
                    if !comp.contains(q) {
                        comp.insert(q);
                        stack.push(q);
                    }
                }
            }
            seen.union_with(&comp);
            out.push(comp);
        }
        // components are produced by least member already, keep that order
        out
    }

    /// All clopen sets: the unions of connected components.
    pub fn clopen_sets(&self) -> Result<Vec<PointSet>> {
        let comps = self.connected_components();
        if comps.len() > 20 {
            return Err(Error::SizeBound(format!(
                "clopen enumeration requires <= 20 components, got {}",
                comps.len()
            )));
        }
        let mut out = Vec::with_capacity(1 << comps.len());
        for mask in 0u32..(1u32 << comps.len()) {
            let mut s = BitSet::new(self.size);
            for (i, c) in comps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s.union_with(c);
                }
            }
            debug_assert!(self.is_closed(TopologyView::Flat, &s));
            debug_assert!(self.is_closed(TopologyView::Zariski, &s));
            out.push(s);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Same points, reversed specialization order.
    pub fn hochster_dual(&self) -> SpectralPoset {
        SpectralPoset {
            size: self.size,
            below: self.above.clone(),
            above: self.below.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn transitive_reduction(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = (0..self.size)
                    .any(|r| r != a && r != b && self.leq(a, r) && self.leq(r, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Hard cap on the exhaustive oracle.
pub const ORACLE_HARD_BOUND: usize = 16;
/// Default exhaustive oracle bound.
pub const ORACLE_DEFAULT_BOUND: usize = 12;

#[derive(Debug, Clone)]
pub struct OracleCheck {
    pub name: &'static str,
    pub pass: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub checks: Vec<OracleCheck>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn brute_force_oracle(poset: &SpectralPoset) -> Result<OracleReport> {
    brute_force_oracle_with_bound(poset, ORACLE_DEFAULT_BOUND)
}

/// Enumerate all `2^size` subsets and re-derive every topology statement
/// from first principles, comparing against the fast-path operations.
pub fn brute_force_oracle_with_bound(poset: &SpectralPoset, bound: usize) -> Result<OracleReport> {
    let bound = bound.min(ORACLE_HARD_BOUND);
    let n = poset.size();
    if n > bound {
        return Err(Error::SizeBound(format!(
            "oracle requires <= {bound} points, got {n}"
        )));
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let down: Vec<u32> = (0..n).map(|p| to_mask(&poset.below[p])).collect();
    let up: Vec<u32> = (0..n).map(|p| to_mask(&poset.above[p])).collect();

    // closed-set families derived from the definitions
    let is_down = |mask: u32| (0..n).all(|p| mask >> p & 1 == 0 || down[p] & !mask == 0);
    let is_up = |mask: u32| (0..n).all(|p| mask >> p & 1 == 0 || up[p] & !mask == 0);
    let mut flat_closed = vec![false; (full as usize) + 1];
    let mut zar_closed = vec![false; (full as usize) + 1];
    let mut flat_family: Vec<u32> = Vec::new();
    let mut zar_family: Vec<u32> = Vec::new();
    for mask in 0..=full {
        if is_down(mask) {
            flat_closed[mask as usize] = true;
            flat_family.push(mask);
        }
        if is_up(mask) {
            zar_closed[mask as usize] = true;
            zar_family.push(mask);
        }
    }

    let mut checks = Vec::new();

    // (a)/(b): the derived families satisfy the closed-set axioms
    for (name, family, closed) in [
        ("flat family is a topology", &flat_family, &flat_closed),
        ("zariski family is a topology", &zar_family, &zar_closed),
    ] {
        let mut pass = closed[0] && closed[full as usize];
        let mut cex = None;
        'outer: for &a in family {
            for &b in family {
                if !closed[(a | b) as usize] || !closed[(a & b) as usize] {
                    pass = false;
                    cex = Some(format!("sets {a:#b} and {b:#b}"));
                    break 'outer;
                }
            }
        }
        checks.push(OracleCheck {
            name,
            pass,
            counterexample: cex,
        });
    }

    // (c): the is_closed predicate agrees with the enumerated families
    {
        let mut pass = true;
        let mut cex = None;
        for mask in 0..=full {
            let set = from_mask(n, mask);
            if poset.is_closed(TopologyView::Flat, &set) != flat_closed[mask as usize]
                || poset.is_closed(TopologyView::Zariski, &set) != zar_closed[mask as usize]
                || !poset.is_closed(TopologyView::Patch, &set)
            {
                pass = false;
                cex = Some(format!("subset {mask:#b}"));
                break;
            }
        }
        checks.push(OracleCheck {
            name: "is_closed agrees with enumerated families",
            pass,
            counterexample: cex,
        });
    }

    // (d)/(e): closure of E = union of point closures = least closed superset
    for (name, family, point_closure, view) in [
        (
            "flat closure equals union of point closures",
            &flat_family,
            &down,
            TopologyView::Flat,
        ),
        (
            "zariski closure equals union of point closures",
            &zar_family,
            &up,
            TopologyView::Zariski,
        ),
    ] {
        let mut pass = true;
        let mut cex = None;
        for mask in 0..=full {
            let mut by_points = mask;
            for p in 0..n {
                if mask >> p & 1 == 1 {
                    by_points |= point_closure[p];
                }
            }
            let mut least = full;
            for &c in family {
                if c & mask == mask {
                    least &= c;
                }
            }
            let fast = to_mask(&poset.closure(view, &from_mask(n, mask)));
            if fast != by_points || fast != least {
                pass = false;
                cex = Some(format!("subset {mask:#b}"));
                break;
            }
        }
        checks.push(OracleCheck {
            name,
            pass,
            counterexample: cex,
        });
    }

    // (f): flat clopens = zariski clopens = unions of connected components
    {
        let flat_clopen: Vec<u32> = (0..=full)
            .filter(|&m| flat_closed[m as usize] && flat_closed[(full & !m) as usize])
            .collect();
        let zar_clopen: Vec<u32> = (0..=full)
            .filter(|&m| zar_closed[m as usize] && zar_closed[(full & !m) as usize])
            .collect();
        let mut listed: Vec<u32> = poset
            .clopen_sets()?
            .iter()
            .map(to_mask)
            .collect();
        listed.sort_unstable();
        let pass = flat_clopen == zar_clopen && flat_clopen == listed;
        checks.push(OracleCheck {
            name: "flat clopens = zariski clopens = component unions",
            pass,
            counterexample: if pass {
                None
            } else {
                Some("clopen families differ".into())
            },
        });
    }

    // (g): irreducible closed sets are exactly the principal closures and
    // the components are the principal closures of extremal points
    for (view, family, closed) in [
        (TopologyView::Flat, &flat_family, &flat_closed),
        (TopologyView::Zariski, &zar_family, &zar_closed),
    ] {
        let mut irreducibles: Vec<u32> = Vec::new();
        for &e in family {
            if e == 0 {
                continue;
            }
            // reducible iff the union of proper closed subsets covers E
            let mut union_proper = 0u32;
            for &c in family {
                if c != e && c & e == c {
                    union_proper |= c;
                }
            }
            if union_proper != e {
                irreducibles.push(e);
            }
        }
        irreducibles.sort_unstable();
        let mut principal: Vec<u32> = poset
            .irreducible_closed_sets(view)
            .iter()
            .map(to_mask)
            .collect();
        principal.sort_unstable();
        principal.dedup();
        let bijection = irreducibles == principal && irreducibles.len() == n;
        // generic points are unique and recovered
        let mut generics_ok = true;
        for p in 0..n {
            let cl = poset.closure(view, &from_mask(n, 1 << p));
            if poset.generic_point(view, &cl) != Ok(Some(p)) {
                generics_ok = false;
            }
        }
        // components = maximal irreducibles
        let mut maximal_irr: Vec<u32> = irreducibles
            .iter()
            .copied()
            .filter(|&e| !irreducibles.iter().any(|&f| f != e && e & f == e))
            .collect();
        maximal_irr.sort_unstable();
        let mut listed_comps: Vec<u32> = poset
            .irreducible_components(view)
            .iter()
            .map(to_mask)
            .collect();
        listed_comps.sort_unstable();
        let pass = bijection && generics_ok && maximal_irr == listed_comps;
        let _ = closed;
        checks.push(OracleCheck {
            name: match view {
                TopologyView::Flat => "flat irreducibles biject with points",
                _ => "zariski irreducibles biject with points",
            },
            pass,
            counterexample: if pass {
                None
            } else {
                Some("irreducible families differ".into())
            },
        });
    }

    // (h): dual swaps the closed families and is an involution
    {
        let dual = poset.hochster_dual();
        let mut pass = dual.hochster_dual() == *poset;
        let mut cex = None;
        for mask in 0..=full {
            let set = from_mask(n, mask);
            if dual.is_closed(TopologyView::Zariski, &set) != flat_closed[mask as usize]
                || dual.is_closed(TopologyView::Flat, &set) != zar_closed[mask as usize]
            {
                pass = false;
                cex = Some(format!("subset {mask:#b}"));
                break;
            }
        }
        checks.push(OracleCheck {
            name: "hochster dual swaps closed families, involution",
            pass,
            counterexample: cex,
        });
    }

    Ok(OracleReport { checks })
}

fn to_mask(set: &BitSet) -> u32 {
    let mut m = 0u32;
    for i in set.iter() {
        m |= 1 << i;
    }
    m
}

fn from_mask(n: usize, mask: u32) -> BitSet {
    BitSet::from_iter(n, (0..n).filter(|&i| mask >> i & 1 == 1))
}

/// Parse the poset text format: one `a < b` relation per line, bare
/// identifiers declare isolated points, `#` starts a comment.
pub fn parse_poset(text: &str) -> Result<SpectralPoset> {
    let mut names: Vec<String> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let index_of = |names: &mut Vec<String>, tok: &str| -> usize {
        match names.iter().position(|n| n == tok) {
            Some(i) => i,
            None => {
                names.push(tok.to_string());
                names.len() - 1
            }
        }
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(pos) = line.find('<') {
            let left = line[..pos].trim();
            let right = line[pos + 1..].trim();
            if left.is_empty() || right.is_empty() || right.contains('<') {
                return Err(Error::ParseError {
                    line: lineno + 1,
                    column: pos + 1,
                    message: "expected `a < b`".into(),
                });
            }
            let a = index_of(&mut names, left);
            let b = index_of(&mut names, right);
            pairs.push((a, b));
        } else if line.split_whitespace().count() == 1 {
            index_of(&mut names, line);
        } else {
            return Err(Error::ParseError {
                line: lineno + 1,
                column: 1,
                message: "expected `a < b` or a bare point name".into(),
            });
        }
    }
    SpectralPoset::from_relation(names.len(), &pairs, Some(names))
}
