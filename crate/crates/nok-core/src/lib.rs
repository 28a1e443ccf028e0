//! Exact polyhedral and character-theoretic machinery for lattice polytopes
//! attached to dominant weights of `GL_n`.
//!
//! Everything here is computed over exact arithmetic: arbitrary-precision
//! integers for constraint rows and Laurent coefficients, arbitrary-precision
//! rationals for pivoting, interpolation, and witnesses. There is no floating
//! point anywhere in this crate.
//!
//! The main pipeline:
//!
//! * [`weight`] — dominant weights and tuples of them (one per factor).
//! * [`polytope`] — integer H-representations and affine manipulations.
//! * [`lp`] — exact rational simplex, redundancy removal, Fourier–Motzkin
//!   projection.
//! * [`lattice`] — lattice-point enumeration, Ehrhart interpolation,
//!   normalized volume.
//! * [`fflv`] / [`gz`] — the two polytope models built from a dominant
//!   weight, plus their embeddings into the common ambient space.
//! * [`minkowski`] — Minkowski sums of embedded polytopes: membership,
//!   explicit H-representations, counts.
//! * [`demazure`] — Laurent-polynomial character calculus with Demazure
//!   operators and independent representation-theoretic oracles.
//! * [`verify`] — end-to-end cross-checks of lattice counts against
//!   character dimensions, with structured reports.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization, and the command
//! line live in the companion `nok` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod demazure;
pub mod fflv;
pub mod gz;
pub mod lattice;
pub mod lp;
pub mod minkowski;
pub mod polytope;
pub mod rational;
pub mod verify;
pub mod weight;

pub use rational::{Int, Rational};
