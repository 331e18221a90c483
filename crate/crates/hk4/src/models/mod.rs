//! Concrete geometric instantiations and their identity suites.

pub mod fano;
pub mod k3;
pub mod k3hilb;
