use std::time::Duration;

/// Size caps and work budgets shared by every operation that can blow up.
///
/// All fields are public so callers (and the CLI's `--config` loader) can
/// override individual values on top of [`Limits::default`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest n for which a 2^n table may be allocated.
    pub dp_n: u32,
    /// Largest n accepted by the k-base check.
    pub base_n: u32,
    /// Largest vertex count for a bit-row graph.
    pub graph_m: usize,
    /// Largest graph accepted by the exact blow-up finder.
    pub blowup_m: usize,
    /// Largest l accepted by the labeled-graph enumeration.
    pub erdos_l: usize,
    /// Search-tree nodes allowed in clique counting and tuple counting.
    pub work_budget: u64,
    /// Largest number of subsets enumerated by exact-mode experiments.
    pub enumeration_budget: u64,
    /// Node budget for the minimum-generator search.
    pub node_budget: u64,
    /// Wall-clock budget for the minimum-generator search.
    pub time_budget: Duration,
    /// Largest n searched when k = 2.
    pub search_n_k2: u32,
    /// Largest n searched for every other k.
    pub search_n_other: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dp_n: 26,
            base_n: 18,
            graph_m: 1 << 16,
            blowup_m: 64,
            erdos_l: 7,
            work_budget: 10_000_000_000,
            enumeration_budget: 50_000_000,
            node_budget: 1_000_000_000,
            time_budget: Duration::from_secs(600),
            search_n_k2: 6,
            search_n_other: 5,
        }
    }
}

impl Limits {
    pub fn search_cap(&self, k: u32) -> u32 {
        if k == 2 {
            self.search_n_k2
        } else {
            self.search_n_other
        }
    }
}
