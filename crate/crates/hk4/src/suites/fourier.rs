//! The degree-2-generated fourfold suite: the quadratic identity for the
//! Beauville–Bogomolov class, Künneth projectors, the Fourier-square
//! spectrum, composition constants, and the uniqueness shadow.

use super::{Suite, SuiteConfig, SuiteError};
use crate::fourier::{
    fourier_square_spectrum, verify_bb_square, verify_composition_constants,
    verify_kunneth_projectors, verify_uniqueness, FourierKit,
};
use crate::hkring::HKRing;
use crate::report::Report;

pub struct FourierSuite;

impl Suite for FourierSuite {
    fn name(&self) -> &'static str {
        "fourier"
    }

    fn description(&self) -> &'static str {
        "Beauville–Bogomolov class: quadratic identity, projectors, spectrum, uniqueness"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
        if cfg.samples == 0 {
            return Err(SuiteError::Config("--samples must be at least 1".into()));
        }
        let (space, headers) = cfg.fourfold_space()?;
        let ring = HKRing::new(space, cfg.fujiki_scale(&headers))?;
        let kit = FourierKit::new(&ring);
        let mut rep = Report::new("fourier");
        rep.extend(verify_bb_square(&kit));
        let (_, kn) = verify_kunneth_projectors(&kit);
        rep.extend(kn);
        rep.extend(fourier_square_spectrum(&kit));
        rep.extend(verify_composition_constants(&kit));
        rep.extend(verify_uniqueness(&kit, cfg.samples, cfg.seed));
        Ok(rep)
    }
}
