//! Exact minimum size of a k-generator for small n.
//!
//! Iterative deepening on the family size m, starting at the counting bound.
//! For each m a branch-and-bound search looks for a generator with at most m
//! members. Every node branches on the numerically smallest mask x that the
//! chosen members cannot yet build: some member still to be added must be a
//! subset of x, so the children add each unused subset of x in turn, and
//! subsets tried in earlier siblings are excluded from later ones. Subtrees are
//! cut when even the most optimistic count of new disjoint tuples cannot cover
//! the masks still missing.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::family::{canonical_generator, canonical_size, trivial_lower_bound, SetFamily, SubsetMask};
use crate::generator::is_k_generator;
use crate::limits::Limits;

const UNREACHED: u8 = u8::MAX;

/// Outcome of [`min_generator_size`].
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub n: u32,
    pub k: u32,
    pub trivial_bound: u64,
    pub canonical_size: u64,
    /// Certified lower bound: no k-generator with fewer members exists.
    pub lower_bound: u64,
    /// Size of the best generator found; the exact minimum when `conclusive`.
    pub minimum: u64,
    /// A verified k-generator of size `minimum`.
    pub witness: SetFamily,
    pub nodes_explored: u64,
    /// False when a node or time budget stopped the search early.
    pub conclusive: bool,
    pub elapsed: Duration,
}

impl SearchReport {
    /// Whether the minimum is at least the canonical size; `None` if inconclusive.
    pub fn conjecture_holds(&self) -> Option<bool> {
        self.conclusive.then_some(self.minimum >= self.canonical_size)
    }
}

enum Outcome {
    Found(Vec<SubsetMask>),
    Exhausted,
    Interrupted,
}

struct Searcher {
    n: u32,
    k: u8,
    target_size: usize,
    /// new_tuple_bound[r][c]: most disjoint tuples (size 1..=k) that can
    /// involve one of r members added to c existing ones.
    new_tuple_bound: Vec<Vec<u64>>,
    nodes: u64,
    node_budget: u64,
    deadline: Instant,
    interrupted: bool,
    chosen: Vec<SubsetMask>,
    excluded: Vec<bool>,
    /// Candidate order for subsets of a mask: descending size, ascending value.
    order: Vec<u64>,
}

fn small_binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

impl Searcher {
    fn new(n: u32, k: u32, target_size: usize, limits: &Limits, started: Instant) -> Self {
        let k = k.min(n);
        let mut new_tuple_bound = vec![vec![0u64; target_size + 1]; target_size + 1];
        for (r, row) in new_tuple_bound.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                let mut total = 0u64;
                for j in 1..=(k as u64).min(r as u64) {
                    let with_old: u64 = (0..=(k as u64 - j)).map(|i| small_binom(c as u64, i)).sum();
                    total = total.saturating_add(small_binom(r as u64, j).saturating_mul(with_old));
                }
                *cell = total;
            }
        }
        let mut order: Vec<u64> = (1..1u64 << n).collect();
        order.sort_by_key(|&x| (std::cmp::Reverse(x.count_ones()), x));
        Searcher {
            n,
            k: k as u8,
            target_size,
            new_tuple_bound,
            nodes: 0,
            node_budget: limits.node_budget,
            deadline: started + limits.time_budget,
            interrupted: false,
            chosen: Vec::new(),
            excluded: vec![false; 1 << n],
            order,
        }
    }

    fn add_member(parts: &[u8], g: u64) -> Vec<u8> {
        let mut next = parts.to_vec();
        for x in 0..parts.len() as u64 {
            if x & g == g {
                let rest = parts[(x ^ g) as usize];
                if rest != UNREACHED && rest + 1 < next[x as usize] {
                    next[x as usize] = rest + 1;
                }
            }
        }
        next
    }

    fn dfs(&mut self, parts: &[u8]) -> bool {
        self.nodes += 1;
        if self.nodes > self.node_budget || (self.nodes & 0x3ff == 0 && Instant::now() > self.deadline) {
            self.interrupted = true;
            return false;
        }
        let k = self.k;
        let mut missing = 0u64;
        let mut first = None;
        for (x, &p) in parts.iter().enumerate() {
            if p > k {
                missing += 1;
                if first.is_none() {
                    first = Some(x as u64);
                }
            }
        }
        let Some(x) = first else {
            return true;
        };
        let c = self.chosen.len();
        if c >= self.target_size {
            return false;
        }
        let r = self.target_size - c;
        if self.new_tuple_bound[r][c] < missing {
            return false;
        }
        let candidates: Vec<u64> = self
            .order
            .iter()
            .copied()
            .filter(|&g| g & !x == 0 && !self.excluded[g as usize] && !self.chosen.contains(&SubsetMask(g)))
            .collect();
        let mut newly_excluded = Vec::with_capacity(candidates.len());
        let mut found = false;
        for g in candidates {
            let next = Self::add_member(parts, g);
            self.chosen.push(SubsetMask(g));
            if self.dfs(&next) {
                found = true;
                break;
            }
            self.chosen.pop();
            if self.interrupted {
                break;
            }
            self.excluded[g as usize] = true;
            newly_excluded.push(g);
        }
        for g in newly_excluded {
            self.excluded[g as usize] = false;
        }
        found
    }

    fn run(&mut self) -> Outcome {
        let mut parts = vec![UNREACHED; 1 << self.n];
        parts[0] = 0;
        if self.dfs(&parts) {
            Outcome::Found(std::mem::take(&mut self.chosen))
        } else if self.interrupted {
            Outcome::Interrupted
        } else {
            Outcome::Exhausted
        }
    }
}

/// Exact minimum size of a k-generator of P[n], with a verified witness.
///
/// Large (n, k) exhaust the node or time budget; the report then carries the
/// bounds established so far with `conclusive = false`.
pub fn min_generator_size(n: u32, k: u32, limits: &Limits) -> Result<SearchReport> {
    let trivial = trivial_lower_bound(n, k)?;
    let cap = limits.search_cap(k);
    if n > cap || n > limits.dp_n {
        return Err(Error::CapExceeded {
            what: "search ground set size",
            value: n as u64,
            cap: cap.min(limits.dp_n) as u64,
        });
    }
    let canonical = canonical_size(n, k)?;
    let started = Instant::now();
    let mut nodes = 0;
    let mut lower = trivial;
    let mut conclusive = true;
    let mut best: Option<(u64, SetFamily)> = None;

    for m in trivial..canonical {
        let mut searcher = Searcher::new(n, k, m as usize, limits, started);
        searcher.node_budget = limits.node_budget.saturating_sub(nodes);
        let outcome = searcher.run();
        nodes += searcher.nodes;
        match outcome {
            Outcome::Found(members) => {
                let (family, _) = SetFamily::new(n, members)?;
                best = Some((family.len() as u64, family));
                break;
            }
            Outcome::Exhausted => lower = m + 1,
            Outcome::Interrupted => {
                conclusive = false;
                break;
            }
        }
    }

    let (minimum, witness) = match best {
        Some(b) => b,
        None => (canonical, canonical_generator(n, k)?),
    };
    if conclusive {
        lower = minimum;
    }
    let verdict = is_k_generator(&witness, k as usize, limits)?;
    assert!(verdict.holds, "search produced a family that is not a {k}-generator");
    Ok(SearchReport {
        n,
        k,
        trivial_bound: trivial,
        canonical_size: canonical,
        lower_bound: lower,
        minimum,
        witness,
        nodes_explored: nodes,
        conclusive,
        elapsed: started.elapsed(),
    })
}

/// Runs [`min_generator_size`] for every k <= k_max and k <= n <= n_max.
/// Inconclusive entries are kept in the table.
pub fn verify_conjecture_range(n_max: u32, k_max: u32, limits: &Limits) -> Result<Vec<SearchReport>> {
    if k_max == 0 {
        return Err(Error::invalid("k_max must be at least 1"));
    }
    for k in 1..=k_max.min(n_max) {
        let cap = limits.search_cap(k);
        if n_max > cap {
            return Err(Error::CapExceeded {
                what: "search ground set size",
                value: n_max as u64,
                cap: cap as u64,
            });
        }
    }
    let mut reports = Vec::new();
    for k in 1..=k_max {
        for n in k..=n_max {
            reports.push(min_generator_size(n, k, limits)?);
        }
    }
    Ok(reports)
}
