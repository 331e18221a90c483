//! K3 surface introduction-level identities.

use super::{Suite, SuiteConfig, SuiteError};
use crate::models::k3::{k3_intro_check, K3Model};
use crate::rat::rat;
use crate::report::Report;

pub struct K3Suite;

impl Suite for K3Suite {
    fn name(&self) -> &'static str {
        "k3"
    }

    fn description(&self) -> &'static str {
        "K3 surface: B_S against the diagonal and the middle-projector square"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
        let (space, _) = cfg.surface_space()?;
        let model = K3Model::new(space, rat(24));
        Ok(k3_intro_check(&model))
    }
}
