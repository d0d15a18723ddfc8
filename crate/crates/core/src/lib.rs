//! Algorithmic core for corner/cone scattering diagnostics.
//!
//! Everything in this crate is pure computation over `f64`, exact rationals,
//! or certified intervals; no IO, no OS dependencies. The companion crate
//! `cornerfield` adds the volume-potential solver, file formats and the CLI.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cauchy;
pub mod exact;
pub mod fd;
pub mod fmath;
pub mod geometry;
pub mod poly;
pub mod quad;
pub mod series;
pub mod roots;
pub mod specfun;
pub mod spectrum;
