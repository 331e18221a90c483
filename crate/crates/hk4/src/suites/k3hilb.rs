//! Hilbert square of a K3 surface: the fiber class, the incidence
//! correspondence, and the identities tying both to the
//! Beauville–Bogomolov class.

use super::{Suite, SuiteConfig, SuiteError};
use crate::models::k3::K3Model;
use crate::models::k3hilb::{build_k3hilb_model, verify_k3hilb};
use crate::rat::rat;
use crate::report::Report;

pub struct K3HilbSuite;

impl Suite for K3HilbSuite {
    fn name(&self) -> &'static str {
        "k3hilb"
    }

    fn description(&self) -> &'static str {
        "Hilbert square: fiber-class pairings, L = B, and the incidence square"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
        let (space, _) = cfg.surface_space()?;
        let model = build_k3hilb_model(K3Model::new(space, rat(24)))?;
        Ok(verify_k3hilb(&model))
    }
}
