//! Delsarte-theoretic analysis of subsets in P-/Q-polynomial association
//! schemes: inner and dual distributions, zero intervals and their degree
//! bounds, annihilator-polynomial identities, outer distributions and
//! complete-regularity certificates, restricted idempotents and induced
//! Q-polynomial schemes, and the spherical analogue through Gegenbauer
//! moments.

// indexed loops over small dense matrices are the house style here
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod codes;
pub mod distribution;
pub mod gf2;
pub mod matrix;
pub mod named;
pub mod induced;
pub mod io;
pub mod polynomial;
pub mod regularity;
pub mod scheme;
pub mod spherical;
