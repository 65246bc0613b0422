//! Exact dimensions of the spaces of relative symmetric polynomials of the
//! dihedral group D_n with respect to its irreducible characters.
//!
//! The library computes dim H_d(D_n, chi) three independent ways and keeps
//! them honest against each other:
//!
//! - closed-form divisor sums with Moebius/totient/Ramanujan-sum weights
//!   ([`dims::dim_closed_form`]),
//! - the exact character-sum trace of the isotypic projection, accumulated in
//!   the cyclotomic field Q(zeta_n) ([`dims::dim_char_sum`]),
//! - the rank of the explicit projection matrix over Q(zeta_n), with basis
//!   extraction ([`dims::dim_rank`], [`dims::basis_extract`]).
//!
//! A truncated-power-series layer ([`gfs`]) realizes the dimension generating
//! functions coefficient-exactly, and [`verify`] runs cross-method sweeps.
//! All arithmetic is exact; no floating point touches any certified path.

pub mod cyclo;
pub mod dihedral;
pub mod dims;
pub mod error;
pub mod gfs;
pub mod numtheory;
pub mod verify;

pub use cyclo::CycloPoly;
pub use dihedral::{CharacterId, CycleType, GroupElement};
pub use dims::{DimensionRecord, Method, MonomialBasis};
pub use error::{Error, Result};
pub use gfs::PowerSeries;
