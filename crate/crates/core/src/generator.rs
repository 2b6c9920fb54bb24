//! Deciding the k-generator and k-base properties.
//!
//! Both checks fill a table over all 2^n masks holding the least number of
//! members needed to build each mask. Layer j of the table is the set of
//! masks whose entry is at most j. The table is grown breadth first: the masks
//! first reached at layer j-1 are extended by one member each.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::family::{SetFamily, SubsetMask};
use crate::kneser::{clique_counts_upto, disjointness_graph};
use crate::limits::Limits;

const UNREACHED: u8 = u8::MAX;

/// Minimum part counts over all masks of [n]; see the module docs.
#[derive(Clone, Debug)]
pub struct ReachableLayers {
    n: u32,
    k: usize,
    parts: Vec<u8>,
}

impl ReachableLayers {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// The layer count the table was built for.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Least number of parts for `x`, if it is reachable within k parts.
    pub fn min_parts(&self, x: SubsetMask) -> Option<usize> {
        match self.parts[x.0 as usize] {
            UNREACHED => None,
            p => Some(p as usize),
        }
    }

    /// True if `x` is in layer `j` (needs at most j parts). Layers above k
    /// are not computed and report layer k.
    pub fn in_layer(&self, j: usize, x: SubsetMask) -> bool {
        self.min_parts(x).is_some_and(|p| p <= j)
    }

    /// The masks of layer `j`, ascending.
    pub fn layer(&self, j: usize) -> Vec<SubsetMask> {
        (0..self.parts.len() as u64)
            .map(SubsetMask)
            .filter(|&x| self.in_layer(j, x))
            .collect()
    }

    pub fn layer_size(&self, j: usize) -> usize {
        self.parts.iter().filter(|&&p| p != UNREACHED && p as usize <= j).count()
    }

    /// Smallest mask outside layer `j`.
    pub fn first_missing(&self, j: usize) -> Option<SubsetMask> {
        self.parts
            .iter()
            .position(|&p| p == UNREACHED || p as usize > j)
            .map(|x| SubsetMask(x as u64))
    }
}

pub(crate) fn check_dp(n: u32, cap: u32) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "ground set size for a 2^n table",
            value: n as u64,
            cap: cap as u64,
        });
    }
    Ok(())
}

/// Breadth-first layering where one more member is combined per layer.
/// `disjoint` selects disjoint unions (generators) or plain unions (bases).
fn layers(family: &SetFamily, k: usize, disjoint: bool) -> ReachableLayers {
    let n = family.n();
    let members = family.nonempty_members();
    let mut parts = vec![UNREACHED; 1 << n];
    parts[0] = 0;
    let mut frontier = vec![0u64];
    // More than n nonempty disjoint parts never help; overlapping unions of
    // n+1 sets always contain a redundant one too.
    let depth = k.min(n as usize);
    for j in 1..=depth {
        let mut next = Vec::new();
        for &y in &frontier {
            for g in members {
                if disjoint && y & g.0 != 0 {
                    continue;
                }
                let x = (y | g.0) as usize;
                if parts[x] == UNREACHED {
                    parts[x] = j as u8;
                    next.push(x as u64);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    ReachableLayers { n, k, parts }
}

/// Layer j marks the masks that are disjoint unions of at most j members;
/// layer 0 is {∅}. Empty members are ignored.
pub fn reachable_layers(family: &SetFamily, k: usize, limits: &Limits) -> Result<ReachableLayers> {
    check_dp(family.n(), limits.dp_n)?;
    Ok(layers(family, k, true))
}

/// Outcome of a generator or base check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorVerdict {
    pub holds: bool,
    /// Numerically smallest mask that cannot be built; present iff `holds` is false.
    pub counterexample: Option<SubsetMask>,
}

impl GeneratorVerdict {
    fn from_layers(t: &ReachableLayers) -> Self {
        let counterexample = t.first_missing(t.k);
        GeneratorVerdict {
            holds: counterexample.is_none(),
            counterexample,
        }
    }
}

/// Is every subset of [n] a union of at most k pairwise disjoint members?
pub fn is_k_generator(family: &SetFamily, k: usize, limits: &Limits) -> Result<GeneratorVerdict> {
    Ok(GeneratorVerdict::from_layers(&reachable_layers(family, k, limits)?))
}

/// Is every subset of [n] a union (overlaps allowed) of at most k members?
pub fn is_k_base(family: &SetFamily, k: usize, limits: &Limits) -> Result<GeneratorVerdict> {
    check_dp(family.n(), limits.base_n.min(limits.dp_n))?;
    Ok(GeneratorVerdict::from_layers(&layers(family, k, false)))
}

/// Pairwise disjoint members whose union is the target; parts sorted by
/// descending mask value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<SubsetMask>,
}

impl Decomposition {
    pub fn union(&self) -> SubsetMask {
        self.parts.iter().fold(SubsetMask::EMPTY, |acc, &p| acc.union(p))
    }
}

impl ReachableLayers {
    /// Greedy witness: repeatedly takes the largest member inside the
    /// remainder that keeps the rest buildable within the remaining budget.
    pub fn decompose(&self, family: &SetFamily, x: SubsetMask) -> Option<Decomposition> {
        if !self.in_layer(self.k, x) {
            return None;
        }
        let mut parts = Vec::new();
        let mut rest = x;
        let mut budget = self.k;
        while !rest.is_empty() {
            let pick = family.nonempty_members().iter().rev().copied().find(|&g| {
                g.is_subset_of(rest) && self.in_layer(budget - 1, rest.difference(g))
            })?;
            parts.push(pick);
            rest = rest.difference(pick);
            budget -= 1;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Decomposition { parts })
    }
}

/// A witness that `x` is a disjoint union of at most k members, or `None`.
pub fn decompose(
    family: &SetFamily,
    k: usize,
    x: SubsetMask,
    limits: &Limits,
) -> Result<Option<Decomposition>> {
    family.check_mask(x)?;
    let table = reachable_layers(family, k, limits)?;
    Ok(table.decompose(family, x))
}

/// Number of unordered tuples of j pairwise disjoint distinct members summed
/// over 0 <= j <= k, counting the empty tuple.
pub fn count_disjoint_tuples(family: &SetFamily, k: usize, limits: &Limits) -> Result<BigUint> {
    let g = disjointness_graph(family, limits)?;
    let counts = clique_counts_upto(&g, k, limits)?;
    Ok(counts.into_iter().map(BigUint::from).sum())
}
