// SPDX-License-Identifier: Apache-2.0

//! Permanents, immanants, generalized matrix functions and Schur power
//! spectra for positive semidefinite Hermitian matrices, together with a
//! harness that checks the classical permanent inequalities and the
//! published counterexamples to their stronger relatives.
//!
//! Module map:
//!
//! * [`matrices`]: dense complex matrices, Hermitian/PSD validation, a
//!   cyclic Jacobi eigensolver and seeded random PSD sampling.
//! * [`perms`]: permutations, partitions, cycle types and irreducible
//!   characters of the symmetric group (Murnaghan–Nakayama).
//! * [`gmf`]: permanent (Ryser), determinant, diagonal product,
//!   generalized matrix functions, immanants, α-permanents and the
//!   block polynomial `P(λ) = per A_λ`.
//! * [`schur_power`]: the Schur power matrix `π(A)`, its matrix-free
//!   product, the `C_k(A)` compound and its isotypic decomposition.
//! * [`harness`]: conjecture and theorem predicates, the counterexample
//!   corpus, property campaigns and random searches.
//!
//! With the default `parallel` feature the permutation-sum kernels, the
//! Schur power constructions and the campaigns run on rayon. Without it
//! the same chunking runs sequentially, so float results are bit-identical
//! either way.

pub mod error;
pub mod exact;
pub mod gmf;
pub mod harness;
pub mod matrices;
pub mod par;
pub mod perms;
pub mod schur_power;

pub use error::{Error, Result};
pub use exact::ExactValue;
pub use gmf::MatrixFunctionValue;
pub use matrices::{CMatrix, CorrelationMatrix, HermitianMatrix, PsdMatrix, Spectrum};
pub use num_complex::Complex64;
pub use perms::{CharacterSpec, CycleType, Partition, Permutation};
