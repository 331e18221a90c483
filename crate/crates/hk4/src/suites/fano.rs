//! Variety of lines on a cubic fourfold: lattice degrees, incidence
//! identities, and the spectra of the rational self-map (no-plane case).

use super::{Suite, SuiteConfig, SuiteError};
use crate::models::fano::{build_fano_model, verify_fano_incidence, verify_phi};
use crate::qform::default_fano_b0;
use crate::report::Report;

pub struct FanoSuite;

impl Suite for FanoSuite {
    fn name(&self) -> &'static str {
        "fano"
    }

    fn description(&self) -> &'static str {
        "variety of lines: degree checks, incidence identities, self-map spectra"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
        let (b0, headers) = match &cfg.b0 {
            Some(path) => crate::qform::read_gram_file(path)?,
            None => (default_fano_b0(), Default::default()),
        };
        let h2 = cfg.h2_index.or(headers.h2_index).unwrap_or(0);
        let model = build_fano_model(b0, h2)?;
        let mut rep = verify_fano_incidence(&model);
        rep.extend(verify_phi(&model));
        Ok(rep)
    }
}
