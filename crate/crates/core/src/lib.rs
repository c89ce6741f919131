//! Desk-scale implementation of a non-interactive test of quantumness.
//!
//! A verifier publishes a toy LWE instance that defines a trapdoor claw-free
//! function `f(b, x) = round_msb(A*x + b*y mod q)` together with a one-bit
//! hash `H`. A prover answers with a tuple `(w, m, d)`; the verifier uses the
//! trapdoor to recover the claw `(x0, x1)` of `w` and accepts iff
//!
//! ```text
//! d . (bits(x0) ^ bits(x1)) = m ^ H(0, x0) ^ H(1, x1)   (mod 2)
//! ```
//!
//! A simulated quantum prover ([`protocol::quantum_prove`]) passes with
//! certainty; a classical prover that can only query the hash on one input
//! per round ([`protocol::classical_prove_limited`]) caps out at 1/2.
//! Everything runs at desk scale so the claw-free assumption is also
//! *demonstrably false* here ([`protocol::classical_prove_bruteforce`]):
//! these parameters certify mechanism, not advantage.
//!
//! Modules map onto the moving parts:
//!
//! * [`lattice`] - exact `Z_q` arithmetic, instances, TCF evaluation,
//!   trapdoor inversion and validity checks.
//! * [`hashfn`] - GF(2) polynomial hashes, the counting random oracle, and
//!   phase-gate synthesis.
//! * [`qsim`] - dense statevector simulator with permutation/phase oracles
//!   and Pauli noise.
//! * [`circuits`] / [`optimize`] - gate-level prover circuit, peephole
//!   optimizer, unitary equivalence checks.
//! * [`protocol`] - prover strategies, the verifier, and session batches.
//! * [`stats`] - success rates, `sigma = 1/(2*sqrt(N))`, significance tables.
//! * [`wire`] - the challenge/response/verdict message schema.

pub mod bits;
pub mod circuits;
pub mod error;
pub mod hashfn;
pub mod lattice;
pub mod optimize;
pub mod protocol;
pub mod qsim;
pub mod stats;
pub mod wire;

pub use bits::Bits;
pub use error::{Error, Result};
