//! Action-based triple-product vanishing for the powers of the
//! Beauville–Bogomolov class.

use super::{Suite, SuiteConfig, SuiteError};
use crate::fourier::{mck_vanishing, FourierKit};
use crate::hkring::HKRing;
use crate::report::Report;

pub struct MckSuite;

impl Suite for MckSuite {
    fn name(&self) -> &'static str {
        "mck"
    }

    fn description(&self) -> &'static str {
        "triple-product vanishing B^t(B^p α · B^q β) = 0 for t+p+q ≠ 4"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
        let (space, headers) = cfg.fourfold_space()?;
        let ring = HKRing::new(space, cfg.fujiki_scale(&headers))?;
        let kit = FourierKit::new(&ring);
        Ok(mck_vanishing(&kit))
    }
}
