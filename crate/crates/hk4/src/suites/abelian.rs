//! Abelian-variety suite: the Poincaré-bundle projector table, the
//! triple-product vanishing, modified diagonals, and the binomial sums.

use super::{Suite, SuiteConfig, SuiteError};
use crate::abvar::{binomial_vanishing, verify_ab_mck, verify_moddiag, verify_poincare_projectors};
use crate::report::Report;

pub struct AbelianSuite;

impl Suite for AbelianSuite {
    fn name(&self) -> &'static str {
        "abelian"
    }

    fn description(&self) -> &'static str {
        "exterior-algebra calculus: projector table, vanishing, modified diagonals"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
        let mut rep = Report::new("abelian");
        let max_d = cfg.dim.clamp(1, 2);
        for d in 1..=max_d {
            rep.extend(verify_poincare_projectors(d));
        }
        if cfg.enable_d3 {
            rep.extend(verify_poincare_projectors(3));
        }
        for d in 1..=max_d {
            rep.extend(verify_ab_mck(d));
        }
        for d in 1..=max_d {
            if 2 * d + 1 <= cfg.max_m {
                rep.extend(verify_moddiag(d)?);
            } else {
                rep.skip(
                    &format!("abelian.moddiag.d{d}"),
                    "modified-diagonal order exceeds --max-m",
                    "skipped by --max-m",
                );
            }
        }
        rep.extend(binomial_vanishing(12));
        Ok(rep)
    }
}
