//! Exact modular representation theory of finite permutation groups over small finite fields.

pub mod block;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod fusion;
pub mod group;
pub mod linalg;
pub mod rep;

pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use linalg::{Mat, Subspace};

/// Seedable generator used by all randomized algorithms.
pub type Rng = rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}
