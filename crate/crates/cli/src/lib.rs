//! Std companion to [`cornerfield_core`]: a planar volume-potential
//! transmission-scattering solver with an analytic disk reference solution,
//! wavenumber sweeps, scene/output file formats, and the `cornerfield` CLI.
//!
//! The numerical core (special functions, corner/cone spectra, exact
//! polynomial algebra) lives in `cornerfield-core`; this crate adds
//! everything that needs IO, FFTs, or an operating system.

pub mod scatter;
pub mod scene;
