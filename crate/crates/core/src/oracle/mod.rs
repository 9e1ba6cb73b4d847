//! Exponential-time ground truth: cut enumeration, perfect-matching
//! enumeration, induced path/cycle search, induced-subgraph containment and
//! 1-in-3 assignment enumeration.
//!
//! Every entry point takes an [`OracleConfig`] carrying a vertex bound and a
//! wall-clock budget; exceeding either is an error, never a wrong answer.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub(crate) mod cuts;
mod induced;
mod one_in_three;

pub use cuts::{enumerate_matching_cuts, find_cut, find_dpm, has_dpm, has_mc, has_mc_by_matchings, has_pmc, CutKind};
pub use induced::{
    class_report, contains_induced, is_induced_cycle, is_induced_path, longest_induced_cycle, longest_induced_path,
    ClassReport,
};
pub use one_in_three::{enumerate_one_in_three, MAX_ONE_IN_THREE_VARS};

/// Size bound and time budget for a single oracle call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_n: usize,
    pub time_budget: Duration,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_n: 30, time_budget: Duration::from_secs(60) }
    }
}

impl OracleConfig {
    pub fn with_max_n(self, max_n: usize) -> Self {
        OracleConfig { max_n, ..self }
    }

    pub fn with_budget(self, time_budget: Duration) -> Self {
        OracleConfig { time_budget, ..self }
    }

    pub(crate) fn check_size(&self, g: &Graph) -> Result<()> {
        if g.n() > self.max_n {
            Err(Error::OracleBound { size: g.n(), bound: self.max_n })
        } else {
            Ok(())
        }
    }

    pub(crate) fn deadline(&self) -> Deadline {
        Deadline { start: Instant::now(), budget: self.time_budget, ticks: 0 }
    }
}

pub(crate) struct Deadline {
    start: Instant,
    budget: Duration,
    ticks: u32,
}

impl Deadline {
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 1024 == 1 && self.start.elapsed() > self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        Ok(())
    }
}
