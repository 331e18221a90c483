//! Named verification suites behind a common trait, registered once and
//! selected by name at runtime.

use crate::abvar::AbvarError;
use crate::models::fano::FanoError;
use crate::qform::{GramHeaders, QformError, QuadraticSpace};
use crate::rat::{rat, Rat};
use crate::report::Report;
use crate::ring::RingError;
use serde::Serialize;
use std::path::PathBuf;
use thiserror::Error;

mod abelian;
mod fano;
mod fourier;
mod k3;
mod k3hilb;
mod mck;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}'; expected one of fourier, k3, k3hilb, fano, abelian, mck, all")]
    UnknownSuite(String),
    #[error(transparent)]
    Qform(#[from] QformError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Fano(#[from] FanoError),
    #[error(transparent)]
    Abvar(#[from] AbvarError),
    #[error("{0}")]
    Config(String),
}

/// Runtime configuration shared by every suite; suite-specific fields are
/// ignored by suites that do not use them.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: String,
    pub rank: Option<usize>,
    pub fujiki: Option<Rat>,
    pub gram: Option<PathBuf>,
    pub b0: Option<PathBuf>,
    pub h2_index: Option<usize>,
    pub dim: u32,
    pub max_m: u32,
    pub seed: u64,
    pub samples: usize,
    pub enable_d3: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: "all".into(),
            rank: None,
            fujiki: None,
            gram: None,
            b0: None,
            h2_index: None,
            dim: 2,
            max_m: 5,
            seed: 1,
            samples: 100,
            enable_d3: false,
        }
    }
}

#[derive(Serialize)]
pub struct ConfigEcho {
    pub suite: String,
    pub rank: Option<usize>,
    pub fujiki: Option<String>,
    pub gram: Option<String>,
    pub b0: Option<String>,
    pub h2_index: Option<usize>,
    pub dim: u32,
    pub max_m: u32,
    pub seed: u64,
    pub samples: usize,
    pub enable_d3: bool,
}

impl SuiteConfig {
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            suite: self.suite.clone(),
            rank: self.rank,
            fujiki: self.fujiki.as_ref().map(crate::rat::render),
            gram: self.gram.as_ref().map(|p| p.display().to_string()),
            b0: self.b0.as_ref().map(|p| p.display().to_string()),
            h2_index: self.h2_index,
            dim: self.dim,
            max_m: self.max_m,
            seed: self.seed,
            samples: self.samples,
            enable_d3: self.enable_d3,
        }
    }

    /// Quadratic space for the fourfold suites: an explicit file wins;
    /// otherwise rank 23 gets the K3-square lattice and other ranks the
    /// identity form.
    pub fn fourfold_space(&self) -> Result<(QuadraticSpace, GramHeaders), SuiteError> {
        if let Some(path) = &self.gram {
            return Ok(crate::qform::read_gram_file(path)?);
        }
        let rank = self.rank.unwrap_or(23);
        if rank == 0 {
            return Err(SuiteError::Qform(QformError::ZeroRank));
        }
        let space = if rank == 23 {
            crate::qform::k3hilb_lattice(&crate::qform::k3_lattice())
        } else {
            crate::qform::identity_space(rank)
        };
        Ok((space, GramHeaders::default()))
    }

    /// Surface space for the K3 suites: file, else the K3 lattice at rank
    /// 22, else the identity form.
    pub fn surface_space(&self) -> Result<(QuadraticSpace, GramHeaders), SuiteError> {
        if let Some(path) = &self.gram {
            return Ok(crate::qform::read_gram_file(path)?);
        }
        let rank = self.rank.unwrap_or(22);
        if rank == 0 {
            return Err(SuiteError::Qform(QformError::ZeroRank));
        }
        let space = if rank == 22 {
            crate::qform::k3_lattice()
        } else {
            crate::qform::identity_space(rank)
        };
        Ok((space, GramHeaders::default()))
    }

    /// Fujiki scale: explicit flag, then file header, then 1.
    pub fn fujiki_scale(&self, headers: &GramHeaders) -> Rat {
        self.fujiki
            .clone()
            .or_else(|| headers.fujiki_scale.clone())
            .unwrap_or_else(|| rat(1))
    }
}

/// One verification suite: a named strategy producing a report.
pub trait Suite: Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, cfg: &SuiteConfig) -> Result<Report, SuiteError>;
}

/// All registered suites, in report order.
pub fn registry() -> Vec<Box<dyn Suite>> {
    vec![
        Box::new(fourier::FourierSuite),
        Box::new(k3::K3Suite),
        Box::new(k3hilb::K3HilbSuite),
        Box::new(fano::FanoSuite),
        Box::new(abelian::AbelianSuite),
        Box::new(mck::MckSuite),
    ]
}

/// Runs the suite named in the config; "all" runs every registered suite
/// in declaration order and concatenates the reports.
pub fn run(cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    let suites = registry();
    if cfg.suite == "all" {
        let mut total = Report::new("all");
        for s in &suites {
            total.extend(s.run(cfg)?);
        }
        return Ok(total);
    }
    let suite = suites
        .iter()
        .find(|s| s.name() == cfg.suite)
        .ok_or_else(|| SuiteError::UnknownSuite(cfg.suite.clone()))?;
    suite.run(cfg)
}

/// The JSON document for one run: config echo, checks, summary counts.
pub fn to_json(cfg: &SuiteConfig, report: &Report) -> serde_json::Value {
    serde_json::json!({
        "suite": report.suite,
        "config": cfg.echo(),
        "checks": report.checks,
        "summary": {
            "pass": report.pass_count(),
            "fail": report.fail_count(),
            "skipped": report.skipped_count(),
        },
    })
}
