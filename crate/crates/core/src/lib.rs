//! Exact computation of Elliott invariants for crossed products of the
//! minimal diffeomorphisms of tori and sphere-circle products, together with
//! integer-similarity obstructions to flip conjugacy.

pub mod classify;
pub mod crossed;
pub mod ktheory;
pub mod par;
pub mod theta;
pub mod zlinalg;
