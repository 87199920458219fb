use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size caps for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Largest carrier built by products and diagonals.
    pub max_order: usize,
    /// Largest carrier for which subsets are enumerated (ideals, subalgebras).
    pub max_subset_order: usize,
    /// Largest number of candidate self-maps (`n^n`) an operator search may scan.
    pub max_map_candidates: u64,
    /// Largest order accepted by the catalog generator.
    pub max_catalog_order: usize,
    /// Largest order accepted by the brute-force catalog oracle.
    pub max_oracle_order: usize,
    /// Largest carrier whose set partitions are enumerated.
    pub max_partition_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 4096,
            max_subset_order: 20,
            max_map_candidates: 100_000_000,
            max_catalog_order: 6,
            max_oracle_order: 4,
            max_partition_order: 12,
        }
    }
}

impl Limits {
    pub(crate) fn check_order(&self, what: &'static str, order: usize) -> Result<()> {
        cap(what, order as u128, self.max_order as u128)
    }

    pub(crate) fn check_subsets(&self, what: &'static str, order: usize) -> Result<()> {
        cap(what, order as u128, self.max_subset_order as u128)
    }

    pub(crate) fn check_partitions(&self, what: &'static str, order: usize) -> Result<()> {
        cap(what, order as u128, self.max_partition_order as u128)
    }

    pub(crate) fn check_catalog(&self, order: usize) -> Result<()> {
        cap(
            "catalog order",
            order as u128,
            self.max_catalog_order as u128,
        )
    }

    pub(crate) fn check_oracle(&self, order: usize) -> Result<()> {
        cap("oracle order", order as u128, self.max_oracle_order as u128)
    }

    /// Caps `n^n` candidate maps.
    pub(crate) fn check_maps(&self, what: &'static str, order: usize) -> Result<()> {
        let candidates = (order as u128)
            .checked_pow(order as u32)
            .unwrap_or(u128::MAX);
        cap(what, candidates, self.max_map_candidates as u128)
    }
}

fn cap(what: &'static str, requested: u128, limit: u128) -> Result<()> {
    if requested > limit {
        Err(Error::Capacity {
            what,
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}
