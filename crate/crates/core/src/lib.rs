//! Numerical toolkit for convex supports of hermitian matrix tuples.
//!
//! A tuple `(F_1, ..., F_k)` of hermitian `d x d` matrices defines the
//! linear pencil `L(u) = u_0 1 + u_1 F_1 + ... + u_k F_k`, the convex
//! support set `W = {(<psi, F_1 psi>, ..., <psi, F_k psi>) : |psi| = 1}`
//! (the numerical range of `F_1 + i F_2` for k = 2), and the spectrahedron
//! `S = {u : L(1, u) >= 0}`. This crate samples the boundary generating
//! curve and hypersurface of W from the eigenvalue branches of the rotated
//! aggregates `u . F`, and certifies numerically that
//!
//! - for k = 2 the convex hull of the curve samples reproduces W
//!   (Kippenhahn's theorem), and
//! - S is the convex dual of W.
//!
//! Grid sweeps run data-parallel under the default `parallel` feature and
//! sequentially without it; results are identical in both modes.

pub mod convsupp;
pub mod error;
pub mod hull2d;
pub mod linalg;
pub mod numrange;
pub mod par;
pub mod pencil;
pub mod render;
pub mod sample;

pub use error::{Error, Result};
pub use linalg::HermitianMatrix;
pub use pencil::Pencil;
