//! Omega-primality.
//!
//! * [`interval`]: exact omega values of the atoms of `M_q = <[1, q] ∩ Q>` for
//!   `1 < q < 2`, with both witness directions checked by membership.
//! * [`antiprime`]: for `N0[q]` with rational `0 < q < 1`, certificates that
//!   `omega(q^k)` exceeds any given `K`. Divisibility here is never searched
//!   for; it is carried by explicit quotient presentations.

pub mod antiprime;
pub mod interval;

pub use antiprime::{
    antiprime_witness_chain, omega_lower_bound, ChainLink, DivisibilityCertificate, OmegaWitness,
    SoundnessChecks,
};
pub use interval::{conductor, interval_membership, omega_interval_atom, IntervalMonoid, IntervalOmega, WitnessChecks};
