//! Exact clique counting.
//!
//! Vertices are relabelled along a degeneracy ordering and every edge is
//! oriented forward, so each clique is enumerated exactly once from its
//! earliest vertex. At the last level the remaining candidates are counted
//! with a popcount instead of being expanded.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::kneser::graph::{ones, popcount, Graph};
use crate::limits::Limits;

const FLUSH_EVERY: u64 = 1 << 12;

struct ForwardGraph {
    words: usize,
    rows: Vec<u64>,
}

impl ForwardGraph {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let order = g.degeneracy_order();
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let words = g.words();
        let mut rows = vec![0u64; n * words];
        for u in 0..n {
            let pu = pos[u];
            for v in g.neighbors(u) {
                let pv = pos[v];
                if pv > pu {
                    rows[pu * words + pv / 64] |= 1 << (pv % 64);
                }
            }
        }
        ForwardGraph { words, rows }
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }
}

struct Counter<'a> {
    fwd: &'a ForwardGraph,
    max_size: usize,
    counts: Vec<u128>,
    work: u64,
    shared_work: &'a AtomicU64,
    budget: u64,
}

impl Counter<'_> {
    fn tick(&mut self) -> Result<()> {
        self.work += 1;
        if self.work == FLUSH_EVERY {
            let total = self.shared_work.fetch_add(self.work, Ordering::Relaxed) + self.work;
            self.work = 0;
            if total > self.budget {
                return Err(Error::BudgetExceeded {
                    what: "clique counting",
                    budget: self.budget,
                });
            }
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        let total = self.shared_work.fetch_add(self.work, Ordering::Relaxed) + self.work;
        self.work = 0;
        if total > self.budget {
            return Err(Error::BudgetExceeded {
                what: "clique counting",
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// `scratch[0]` holds the common forward neighbourhood of a clique of
    /// size `size`.
    fn expand(&mut self, size: usize, scratch: &mut [Vec<u64>]) -> Result<()> {
        self.tick()?;
        let (cur, rest) = scratch.split_first_mut().expect("scratch depth");
        self.counts[size + 1] += popcount(cur) as u128;
        if size + 1 == self.max_size {
            return Ok(());
        }
        for v in ones(cur) {
            let row = self.fwd.row(v);
            let mut any = 0u64;
            for ((dst, &a), &b) in rest[0].iter_mut().zip(cur.iter()).zip(row) {
                *dst = a & b;
                any |= *dst;
            }
            if any != 0 {
                self.expand(size + 1, rest)?;
            }
        }
        Ok(())
    }
}

/// Number of cliques of every size `0..=max_size`; entry 0 is the empty clique.
pub fn clique_counts_upto(g: &Graph, max_size: usize, limits: &Limits) -> Result<Vec<u128>> {
    let n = g.vertex_count();
    let mut counts = vec![0u128; max_size + 1];
    counts[0] = 1;
    if max_size == 0 || n == 0 {
        return Ok(counts);
    }
    counts[1] = n as u128;
    if max_size == 1 {
        return Ok(counts);
    }
    let fwd = ForwardGraph::new(g);
    let shared = AtomicU64::new(0);
    let budget = limits.work_budget;
    let partial: Result<Vec<Vec<u128>>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut counter = Counter {
                fwd: &fwd,
                max_size,
                counts: vec![0u128; max_size + 1],
                work: 0,
                shared_work: &shared,
                budget,
            };
            let mut scratch = vec![vec![0u64; fwd.words]; max_size];
            scratch[0].copy_from_slice(fwd.row(v));
            if scratch[0].iter().any(|&w| w != 0) {
                counter.expand(1, &mut scratch)?;
            }
            counter.finish()?;
            Ok(counter.counts)
        })
        .collect();
    for part in partial? {
        for (total, c) in counts.iter_mut().zip(part).skip(2) {
            *total += c;
        }
    }
    Ok(counts)
}

/// Exact number of r-cliques, r >= 1.
pub fn count_cliques(g: &Graph, r: usize, limits: &Limits) -> Result<u128> {
    if r == 0 {
        return Err(Error::invalid("clique size r must be at least 1"));
    }
    Ok(clique_counts_upto(g, r, limits)?[r])
}

/// count_cliques(g, r) / C(m, r) as a reduced fraction.
pub fn clique_density(g: &Graph, r: usize, limits: &Limits) -> Result<BigRational> {
    let m = g.vertex_count();
    if r == 0 || m < r {
        return Err(Error::invalid(format!(
            "clique density needs 1 <= r <= m, got r={r}, m={m}"
        )));
    }
    let count = count_cliques(g, r, limits)?;
    Ok(BigRational::new(
        BigInt::from(count),
        BigInt::from(binomial(m as u64, r as u64)),
    ))
}

#[inline]
pub(crate) fn above(v: u32) -> u64 {
    if v >= 63 {
        0
    } else {
        !0u64 << (v + 1)
    }
}

/// r-cliques inside `cand` for a graph of at most 64 vertices given as
/// one adjacency word per vertex.
pub(crate) fn small_clique_count(rows: &[u64], cand: u64, r: usize) -> u128 {
    match r {
        0 => 1,
        1 => cand.count_ones() as u128,
        _ => {
            let mut total = 0;
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                let next = cand & rows[v as usize] & above(v);
                if next.count_ones() as usize >= r - 1 {
                    total += small_clique_count(rows, next, r - 1);
                }
            }
            total
        }
    }
}

/// True if `cand` contains an r-clique.
pub(crate) fn small_has_clique(rows: &[u64], cand: u64, r: usize) -> bool {
    if r == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < r {
        return false;
    }
    if r == 1 {
        return true;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        if small_has_clique(rows, cand & rows[v as usize] & above(v), r - 1) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::turan::turan_blowup_graph;
    use crate::arith::ratio;

    #[test]
    fn turan_graph_counts() {
        let g = turan_blowup_graph(3, 2, &Limits::default()).unwrap();
        assert_eq!(count_cliques(&g, 2, &Limits::default()).unwrap(), 12);
        assert_eq!(count_cliques(&g, 3, &Limits::default()).unwrap(), 8);
        assert_eq!(count_cliques(&g, 4, &Limits::default()).unwrap(), 0);
        assert_eq!(count_cliques(&g, 1, &Limits::default()).unwrap(), 6);
    }

    #[test]
    fn densities() {
        let l = Limits::default();
        assert_eq!(clique_density(&Graph::complete(5), 3, &l).unwrap(), ratio(1, 1));
        assert_eq!(clique_density(&Graph::new(5), 2, &l).unwrap(), ratio(0, 1));
        assert!(clique_density(&Graph::new(2), 3, &l).is_err());
        assert!(count_cliques(&Graph::new(2), 0, &l).is_err());
    }

    #[test]
    fn budget_guard() {
        let limits = Limits {
            work_budget: 10,
            ..Limits::default()
        };
        let g = Graph::complete(40);
        assert!(matches!(
            count_cliques(&g, 6, &limits),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn small_and_bitrow_counters_agree() {
        let g = Graph::cycle(9);
        let mut g2 = g.clone();
        g2.add_edge(0, 2);
        g2.add_edge(0, 4);
        g2.add_edge(2, 4);
        for graph in [g, g2] {
            let rows = graph.small_rows();
            let all = (1u64 << graph.vertex_count()) - 1;
            for r in 1..=4 {
                assert_eq!(
                    small_clique_count(&rows, all, r),
                    count_cliques(&graph, r, &Limits::default()).unwrap()
                );
            }
        }
    }
}
