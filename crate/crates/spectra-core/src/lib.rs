//! Computation and cross-verification of the Zariski, flat, and patch
//! topologies on prime spectra: concretely presented finite commutative
//! rings, finite spectral spaces given as posets, and symbolic
//! one-dimensional infinite spectra.

pub mod bits;
pub mod error;
pub mod ideal;
pub mod pierce;
pub mod poset;
pub mod ring;
pub mod symbolic;

pub use bits::BitSet;
pub use error::{Error, Result};
pub use ideal::{
    condition_vi_finite, enumerate_primes, ideal_lattice, induced_spec_map, quotient_ring,
    spec_poset, Ideal, InducedSpecMap, PrimeIdeal, SpecMapKind,
};
pub use pierce::{
    clopen_from_idempotent, components_via_pierce, enumerate_regular_ideals, is_max_regular,
    max_regular_ideals, pierce_spectrum, psi, regular_ideal_generated, IdempotentAlgebra,
    MaxRegularIdeal, PierceSpace,
};
pub use poset::{
    brute_force_oracle, brute_force_oracle_with_bound, parse_poset, OracleCheck, OracleReport,
    PointSet, SpectralPoset, TopologyView, ORACLE_DEFAULT_BOUND, ORACLE_HARD_BOUND,
};
pub use ring::{FiniteRing, Presentation};
pub use symbolic::{
    condition_vi_symbolic, sym_finite_subcover, sym_irreducible_components, sym_noetherian,
    noetherian_views_consistent, ConditionVi, IrreducibleComponents, SpectrumKind, SubcoverResult,
    SymPoint, SymSet, SymbolicSpectrum,
};
