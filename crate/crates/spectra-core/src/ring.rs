//! Concretely presented finite commutative unital rings.
//!
//! Elements are canonical indices `0..size`. `Z/n` uses residues directly,
//! `F_p[x]/(f)` encodes coefficient vectors in base `p`, products flatten
//! mixed-radix tuples, and table rings index their carrier rows.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest carrier admitted at construction time.
pub const MAX_RING_SIZE: usize = 1 << 20;
/// Largest carrier for prime/ideal-lattice enumeration.
pub const PRIME_ENUM_BOUND: usize = 4096;
/// Largest carrier for the idempotent scan.
pub const IDEMPOTENT_SCAN_BOUND: usize = 1_000_000;

/// Input presentation for [`FiniteRing::make`].
#[derive(Debug, Clone)]
pub enum Presentation {
    ZMod(usize),
    /// `F_p[x]/(f)` with `f` given by its coefficient list `c0 + c1 x + ..`.
    PolyQuotient { p: usize, coeffs: Vec<usize> },
    Product(Vec<FiniteRing>),
    Table {
        size: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
    },
}

#[derive(Debug)]
enum Repr {
    ZMod {
        n: usize,
    },
    PolyQuot {
        p: usize,
        /// monic modulus, length deg+1, leading coefficient 1
        modulus: Vec<usize>,
    },
    Product {
        factors: Vec<FiniteRing>,
        strides: Vec<usize>,
    },
    Table {
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
    },
}

#[derive(Debug)]
struct RingInner {
    size: usize,
    repr: Repr,
    desc: String,
}

/// A finite commutative unital ring with total operation access.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    inner: Arc<RingInner>,
}

fn is_prime(n: usize) -> bool {
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

impl FiniteRing {
    pub fn make(presentation: Presentation) -> Result<FiniteRing> {
        match presentation {
            Presentation::ZMod(n) => {
                if n < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "zmod modulus must be at least 2, got {n}"
                    )));
                }
                if n > MAX_RING_SIZE {
                    return Err(Error::InvalidParameter(format!(
                        "ring size {n} exceeds maximum {MAX_RING_SIZE}"
                    )));
                }
                Ok(FiniteRing {
                    inner: Arc::new(RingInner {
                        size: n,
                        repr: Repr::ZMod { n },
                        desc: format!("zmod {n}"),
                    }),
                })
            }
            Presentation::PolyQuotient { p, coeffs } => Self::make_polyquot(p, coeffs),
            Presentation::Product(factors) => Self::make_product(factors),
            Presentation::Table {
                size,
                add,
                mul,
                zero,
                one,
            } => Self::make_table(size, add, mul, zero, one),
        }
    }

    pub fn zmod(n: usize) -> Result<FiniteRing> {
        Self::make(Presentation::ZMod(n))
    }

    pub fn poly_quotient(p: usize, coeffs: Vec<usize>) -> Result<FiniteRing> {
        Self::make(Presentation::PolyQuotient { p, coeffs })
    }

    pub fn product(factors: Vec<FiniteRing>) -> Result<FiniteRing> {
        Self::make(Presentation::Product(factors))
    }

    fn make_polyquot(p: usize, mut coeffs: Vec<usize>) -> Result<FiniteRing> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidParameter(
                "polynomial modulus must have degree at least 1".into(),
            ));
        }
        // make monic: multiply by the inverse of the leading coefficient
        let lead = *coeffs.last().unwrap();
        let inv = (1..p).find(|&x| x * lead % p == 1).unwrap();
        for c in coeffs.iter_mut() {
            *c = *c * inv % p;
        }
        let deg = coeffs.len() - 1;
        let mut size: usize = 1;
        for _ in 0..deg {
            size = size.checked_mul(p).filter(|&s| s <= MAX_RING_SIZE).ok_or_else(|| {
                Error::InvalidParameter(format!("ring size {p}^{deg} exceeds maximum"))
            })?;
        }
        let desc = format!(
            "polyquot {p} [{}]",
            coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        Ok(FiniteRing {
            inner: Arc::new(RingInner {
                size,
                repr: Repr::PolyQuot { p, modulus: coeffs },
                desc,
            }),
        })
    }

    fn make_product(factors: Vec<FiniteRing>) -> Result<FiniteRing> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter(
                "product requires at least one factor".into(),
            ));
        }
        let mut size: usize = 1;
        for f in &factors {
            size = size
                .checked_mul(f.size())
                .filter(|&s| s <= MAX_RING_SIZE)
                .ok_or_else(|| {
                    Error::InvalidParameter("product ring size exceeds maximum".into())
                })?;
        }
        // stride[i] = product of the sizes of the factors after i
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].size();
        }
        let desc = format!(
            "product {}",
            factors
                .iter()
                .map(|f| f.description().to_string())
                .collect::<Vec<_>>()
                .join("; ")
        );
        Ok(FiniteRing {
            inner: Arc::new(RingInner {
                size,
                repr: Repr::Product { factors, strides },
                desc,
            }),
        })
    }

    fn make_table(
        size: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
    ) -> Result<FiniteRing> {
        if size < 2 {
            return Err(Error::InvalidParameter(
                "table ring must have at least 2 elements (the zero ring is rejected)".into(),
            ));
        }
        if add.len() != size * size || mul.len() != size * size {
            return Err(Error::InvalidParameter(
                "operation tables must be size x size".into(),
            ));
        }
        if zero >= size || one >= size {
            return Err(Error::InvalidParameter(
                "zero/one index out of range".into(),
            ));
        }
        if add.iter().chain(mul.iter()).any(|&x| x >= size) {
            return Err(Error::InvalidParameter("table entry out of range".into()));
        }
        let ring = FiniteRing {
            inner: Arc::new(RingInner {
                size,
                repr: Repr::Table {
                    add,
                    mul,
                    zero,
                    one,
                },
                desc: format!("table ({size} elements)"),
            }),
        };
        ring.check_axioms()?;
        Ok(ring)
    }

    /// Table ring known correct by construction (used by quotients).
    pub(crate) fn table_unchecked(
        size: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
        desc: String,
    ) -> FiniteRing {
        let ring = FiniteRing {
            inner: Arc::new(RingInner {
                size,
                repr: Repr::Table {
                    add,
                    mul,
                    zero,
                    one,
                },
                desc,
            }),
        };
        debug_assert!(ring.check_axioms().is_ok());
        ring
    }

    /// Exhaustive commutative-unital-ring axiom check over the carrier.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.size();
        let zero = self.zero();
        let one = self.one();
        if zero == one {
            return Err(Error::AxiomViolation("0 = 1 (zero ring)".into()));
        }
        for a in 0..n {
            if self.add(a, zero) != a {
                return Err(Error::AxiomViolation(format!("{a} + 0 != {a}")));
            }
            if self.mul(a, one) != a {
                return Err(Error::AxiomViolation(format!("{a} * 1 != {a}")));
            }
            if !(0..n).any(|b| self.add(a, b) == zero) {
                return Err(Error::AxiomViolation(format!("{a} has no additive inverse")));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::AxiomViolation(format!("{a} + {b} != {b} + {a}")));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::AxiomViolation(format!("{a} * {b} != {b} * {a}")));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(Error::AxiomViolation(format!(
                            "addition not associative at ({a},{b},{c})"
                        )));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::AxiomViolation(format!(
                            "multiplication not associative at ({a},{b},{c})"
                        )));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(Error::AxiomViolation(format!(
                            "distributivity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.inner.size
    }

    pub fn description(&self) -> &str {
        &self.inner.desc
    }

    pub fn same_ring(&self, other: &FiniteRing) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn zero(&self) -> usize {
        match &self.inner.repr {
            Repr::ZMod { .. } | Repr::PolyQuot { .. } | Repr::Product { .. } => 0,
            Repr::Table { zero, .. } => *zero,
        }
    }

    pub fn one(&self) -> usize {
        match &self.inner.repr {
            Repr::ZMod { .. } => 1,
            Repr::PolyQuot { .. } => 1,
            Repr::Product { factors, strides } => {
                let mut idx = 0;
                for (f, s) in factors.iter().zip(strides) {
                    idx += f.one() * s;
                }
                idx
            }
            Repr::Table { one, .. } => *one,
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.inner.repr {
            Repr::ZMod { n } => (a + b) % n,
            Repr::PolyQuot { p, modulus } => {
                let deg = modulus.len() - 1;
                let mut out = 0;
                let mut pw = 1;
                let (mut x, mut y) = (a, b);
                for _ in 0..deg {
                    out += (x % p + y % p) % p * pw;
                    x /= p;
                    y /= p;
                    pw *= p;
                }
                out
            }
            Repr::Product { factors, strides } => {
                let mut out = 0;
                for (f, s) in factors.iter().zip(strides) {
                    let xa = a / s % f.size();
                    let xb = b / s % f.size();
                    out += f.add(xa, xb) * s;
                }
                out
            }
            Repr::Table { add, .. } => add[a * self.inner.size + b],
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.inner.repr {
            Repr::ZMod { n } => a * b % n,
            Repr::PolyQuot { p, modulus } => {
                let deg = modulus.len() - 1;
                let ca = decode_poly(a, *p, deg);
                let cb = decode_poly(b, *p, deg);
                let mut prod = vec![0usize; 2 * deg];
                for (i, &x) in ca.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce modulo the monic modulus
                for i in (deg..2 * deg).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    prod[i] = 0;
                    for (k, &m) in modulus.iter().enumerate().take(deg) {
                        let pos = i - deg + k;
                        prod[pos] = (prod[pos] + p * p - c * m % p) % p;
                    }
                }
                encode_poly(&prod[..deg], *p)
            }
            Repr::Product { factors, strides } => {
                let mut out = 0;
                for (f, s) in factors.iter().zip(strides) {
                    let xa = a / s % f.size();
                    let xb = b / s % f.size();
                    out += f.mul(xa, xb) * s;
                }
                out
            }
            Repr::Table { mul, .. } => mul[a * self.inner.size + b],
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        match &self.inner.repr {
            Repr::ZMod { n } => (n - a) % n,
            _ => {
                let zero = self.zero();
                (0..self.size())
                    .find(|&b| self.add(a, b) == zero)
                    .expect("additive inverse exists")
            }
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// All elements with `e * e = e`, sorted by carrier index.
    pub fn idempotents(&self) -> Vec<usize> {
        assert!(self.size() <= IDEMPOTENT_SCAN_BOUND);
        (0..self.size()).filter(|&e| self.mul(e, e) == e).collect()
    }
}

fn decode_poly(mut idx: usize, p: usize, deg: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(deg);
    for _ in 0..deg {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn encode_poly(coeffs: &[usize], p: usize) -> usize {
    let mut out = 0;
    for &c in coeffs.iter().rev() {
        out = out * p + c;
    }
    out
}
