//! Exact invariants of link diagrams: Jones polynomial, Goeritz forms and
//! signatures, lattice correction terms of branched double covers, and
//! quasi-alternating certificates.

#![allow(clippy::needless_range_loop)]

pub mod diagram;
pub mod lattice;
pub mod linalg;
pub mod polynomial;
pub mod qa;
pub mod surfaces;
pub mod verify;
