//! Exact computation of ramification data for radical extension towers over
//! henselized rational function fields carrying a min-lex monomial valuation.
//!
//! The crate works with three layers:
//!
//! * [`valgroup`] — value groups as canonical full-rank lattices in ℚⁿ;
//! * [`residue`] / [`tower`] / [`parse`] — residue fields, radical towers,
//!   and the expression language describing their elements;
//! * [`ramify`] / [`elimination`] — ramification indices, residual degrees,
//!   tame/wild classification, and the criterion deciding when tame
//!   ramification is eliminated by a finite extension of the base.
//!
//! [`oracle`] holds independent brute-force verifiers used by the test suite
//! and the CLI self-check; [`scenario`] runs declarative scenario files and
//! parameter sweeps.

pub mod elimination;
pub mod oracle;
pub mod parse;
pub mod ramify;
pub mod residue;
pub mod scenario;
pub mod tower;
pub mod valgroup;
pub(crate) mod zmat;
