mod basis;
mod mat;
pub mod packed;
pub mod poly;

pub use basis::Basis;
pub use mat::{spin, Echelon, Mat, RowReducer, Subspace};
pub use poly::{crt_idempotents, Krylov, Poly};
