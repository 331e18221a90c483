//! Exact-rational verification of the cohomology ring calculus of
//! hyperkähler fourfolds whose ring is generated in degree 2.
//!
//! The crate builds the even cohomology ring of such a fourfold from a
//! nondegenerate rational quadratic form and a Fujiki scale, runs the
//! correspondence calculus on the self-product (cup, transpose, composition,
//! actions), and verifies a fixed catalogue of identities: the quadratic
//! equation for the Beauville–Bogomolov class, the Künneth projectors, the
//! Fourier-square spectrum, the incidence-correspondence identities for the
//! Hilbert square of a K3 surface and for the variety of lines on a cubic
//! fourfold, the graph of the degree-16 rational self-map, and the signed
//! exterior-algebra calculus on abelian varieties.
//!
//! All arithmetic is unbounded-precision rational; there is no floating
//! point anywhere. Every check is exact: a residual either is zero or the
//! check fails.

pub mod abvar;
pub mod corr;
pub mod fourier;
pub mod hkring;
pub mod models;
pub mod qform;
pub mod rat;
pub mod report;
pub mod ring;
pub mod rng;
pub mod suites;
pub mod surface;

pub use qform::{InverseForm, QuadraticSpace};
pub use rat::Rat;
pub use report::{Check, Report, Status};
