//! p-cone geometry at desk scale.
//!
//! The cone `K_p^{n+1} = {(t, x) | t >= ||x||_p}` is simple to write down
//! and surprisingly rigid: for `p != 2` its linear automorphisms are exactly
//! the positive multiples of generalized permutations fixing the main axis,
//! it is never homogeneous, and no inner product makes it self-dual. This
//! crate implements the computable side of those facts — p-norm calculus
//! with exact smoothness classification, cone membership / projection /
//! extreme rays, structured automorphism decisions with a sampling oracle,
//! self-duality and isomorphism searches, and boundary-manifold diagnostics
//! — each checked against independent numerical oracles.
//!
//! The `pcone` binary exposes the same machinery as a verification CLI with
//! JSON reports; `verify::run_all` runs the full acceptance suite.

pub mod autgroup;
pub mod cone;
pub mod duality;
pub mod error;
pub mod manifold;
pub mod numdiff;
pub mod optim;
pub mod pnorm;
pub mod report;
pub mod verify;

pub use cone::{ConePoint, ConeSpec, Membership, MoreauDecomposition, Ray};
pub use error::{Error, Result};
pub use pnorm::{Exponent, Smoothness};
