//! Cross-method verification: runs the closed-form, character-sum, and rank
//! engines over an (n, d, character) grid and reports any disagreement.
//! The grid is embarrassingly parallel; output ordering is fixed by
//! (n, d, character) regardless of scheduling.

use num::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dihedral::{irreducible_characters, CharacterId};
use crate::dims::{dim_char_sum, dim_closed_form, dim_rank, MonomialBasis};
use crate::error::Result;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerifyFailure {
    pub n: u64,
    pub d: u64,
    #[serde(rename = "char")]
    pub character: String,
    pub expected: String,
    pub got: String,
    pub oracle: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub cells: u64,
    pub rank_cells: u64,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n_range: (u64, u64),
    pub d_range: (u64, u64),
    /// Run the rank oracle on cells whose monomial basis fits under the cap.
    pub with_rank: bool,
    pub rank_cap: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_range: (3, 8),
            d_range: (0, 10),
            with_rank: true,
            rank_cap: 120,
        }
    }
}

/// One cell's worth of checks, with an injectable closed-form provider so the
/// harness itself can be tested against a corrupted engine.
fn check_cell(
    n: u64,
    d: u64,
    chi: &CharacterId,
    cfg: &VerifyConfig,
    closed: &(dyn Fn(u64, u64, &CharacterId) -> Result<BigInt> + Sync),
) -> Result<(u64, Vec<VerifyFailure>)> {
    let mut failures = Vec::new();
    let oracle = dim_char_sum(n, d, chi)?;
    let formula = closed(n, d, chi)?;
    if formula != oracle {
        failures.push(VerifyFailure {
            n,
            d,
            character: chi.name(),
            expected: oracle.to_string(),
            got: formula.to_string(),
            oracle: "char_sum".into(),
        });
    }
    let mut rank_cells = 0;
    if cfg.with_rank && MonomialBasis::size(n, d) <= BigInt::from(cfg.rank_cap) {
        rank_cells = 1;
        let rank = dim_rank(n, d, chi, cfg.rank_cap)?;
        if rank != oracle {
            failures.push(VerifyFailure {
                n,
                d,
                character: chi.name(),
                expected: oracle.to_string(),
                got: rank.to_string(),
                oracle: "rank".into(),
            });
        }
    }
    Ok((rank_cells, failures))
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    run_verify_with(cfg, &dim_closed_form)
}

/// Grid run with a pluggable closed-form engine.
pub fn run_verify_with(
    cfg: &VerifyConfig,
    closed: &(dyn Fn(u64, u64, &CharacterId) -> Result<BigInt> + Sync),
) -> Result<VerifyReport> {
    let mut cells = Vec::new();
    for n in cfg.n_range.0..=cfg.n_range.1 {
        for chi in irreducible_characters(n)? {
            for d in cfg.d_range.0..=cfg.d_range.1 {
                cells.push((n, d, chi));
            }
        }
    }
    cells.sort_by_key(|(n, d, chi)| (*n, *d, chi.name()));
    let results: Vec<Result<(u64, Vec<VerifyFailure>)>> = cells
        .par_iter()
        .map(|(n, d, chi)| check_cell(*n, *d, chi, cfg, closed))
        .collect();
    let mut report = VerifyReport {
        cells: cells.len() as u64,
        rank_cells: 0,
        failures: Vec::new(),
    };
    for r in results {
        let (rank_cells, failures) = r?;
        report.rank_cells += rank_cells;
        report.failures.extend(failures);
    }
    Ok(report)
}

/// Corrupted engine used by the harness self-test: flips the sign of the
/// d = 1, chi1 cell at the low end of the grid.
pub fn corrupted_closed_form(n: u64, d: u64, chi: &CharacterId) -> Result<BigInt> {
    let v = dim_closed_form(n, d, chi)?;
    if d == 1 && chi.name() == "chi1" {
        return Ok(v + BigInt::from(1));
    }
    Ok(v)
}

/// Cells with dimension zero in degree >= 1, per the positivity scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroCell {
    pub n: u64,
    pub d: u64,
    #[serde(rename = "char")]
    pub character: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PositivityReport {
    pub cells: u64,
    pub zeros: Vec<ZeroCell>,
}

pub fn scan_positivity(
    n_range: (u64, u64),
    d_range: (u64, u64),
    char_filter: Option<&str>,
) -> Result<PositivityReport> {
    let d_lo = d_range.0.max(1);
    let mut cells = Vec::new();
    for n in n_range.0..=n_range.1 {
        for chi in irreducible_characters(n)? {
            if let Some(filter) = char_filter {
                if filter != "all" && chi.name() != filter && !(filter == "psi" && chi.name().starts_with("psi:")) {
                    continue;
                }
            }
            for d in d_lo..=d_range.1 {
                cells.push((n, d, chi));
            }
        }
    }
    cells.sort_by_key(|(n, d, chi)| (*n, *d, chi.name()));
    let zeros: Vec<Option<ZeroCell>> = cells
        .par_iter()
        .map(|(n, d, chi)| {
            let v = dim_closed_form(*n, *d, chi)?;
            Ok(if v == BigInt::from(0) {
                Some(ZeroCell { n: *n, d: *d, character: chi.name() })
            } else {
                None
            })
        })
        .collect::<Result<_>>()?;
    Ok(PositivityReport {
        cells: cells.len() as u64,
        zeros: zeros.into_iter().flatten().collect(),
    })
}

/// Helper shared by the CLI and tests: all characters matching a selector.
pub fn select_characters(n: u64, selector: &str) -> Result<Vec<CharacterId>> {
    if selector == "all" {
        return irreducible_characters(n);
    }
    if selector == "psi" {
        return Ok(irreducible_characters(n)?
            .into_iter()
            .filter(|c| c.name().starts_with("psi:"))
            .collect());
    }
    Ok(vec![CharacterId::parse(n, selector)?])
}
