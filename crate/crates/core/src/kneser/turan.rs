//! Turán densities, complete multipartite graphs, and the labeled-graph
//! oracle for the maximum number of r-cliques in a K_{s+1}-free graph.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::kneser::cliques::{small_clique_count, small_has_clique};
use crate::kneser::graph::Graph;
use crate::limits::Limits;

/// Parameters (r, s, T): r-cliques in the s-partite Turán graph with parts of size T.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TuranParams {
    r: u32,
    s: u32,
    part_size: u32,
}

impl TuranParams {
    pub fn new(r: u32, s: u32, part_size: u32) -> Result<Self> {
        if r == 0 || r > s || part_size == 0 {
            return Err(Error::invalid(format!(
                "Turán parameters need 1 <= r <= s and T >= 1, got r={r}, s={s}, T={part_size}"
            )));
        }
        Ok(TuranParams { r, s, part_size })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn part_size(&self) -> u32 {
        self.part_size
    }

    pub fn eta(&self) -> BigRational {
        falling_ratio(self.r, self.s)
    }

    pub fn clique_count(&self) -> BigUint {
        turan_clique_closed_form(self.s, self.part_size, self.r)
    }

    /// Exact r-clique density of K_s(T).
    pub fn density(&self) -> BigRational {
        let m = self.s as u64 * self.part_size as u64;
        BigRational::new(
            BigInt::from(self.clique_count()),
            BigInt::from(binomial(m, self.r as u64)),
        )
    }
}

fn falling_ratio(r: u32, s: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..r {
        acc *= BigRational::new(BigInt::from(s - i), BigInt::from(s));
    }
    acc
}

/// s(s-1)...(s-r+1) / s^r, the limiting r-clique density of K_s(T).
pub fn turan_eta(r: u32, s: u32) -> Result<BigRational> {
    if r == 0 || r > s {
        return Err(Error::invalid(format!("eta needs 1 <= r <= s, got r={r}, s={s}")));
    }
    Ok(falling_ratio(r, s))
}

/// Complete multipartite graph with the given part sizes, part-major order.
pub fn complete_multipartite(parts: &[usize], limits: &Limits) -> Result<Graph> {
    let total: usize = parts.iter().sum();
    let mut g = Graph::with_cap(total, limits)?;
    let mut part_of = Vec::with_capacity(total);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, p));
    }
    for u in 0..total {
        for v in u + 1..total {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// K_s(T): s parts of size T.
pub fn turan_blowup_graph(s: usize, part_size: usize, limits: &Limits) -> Result<Graph> {
    if s == 0 || part_size == 0 {
        return Err(Error::invalid("Turán graph needs s >= 1 and T >= 1"));
    }
    let total = s.checked_mul(part_size).ok_or_else(|| Error::invalid("s*T overflows"))?;
    if total > limits.graph_m {
        return Err(Error::CapExceeded {
            what: "graph vertices",
            value: total as u64,
            cap: limits.graph_m as u64,
        });
    }
    complete_multipartite(&vec![part_size; s], limits)
}

/// C(s, r) * T^r; zero when r > s.
pub fn turan_clique_closed_form(s: u32, part_size: u32, r: u32) -> BigUint {
    binomial(s as u64, r as u64) * BigUint::from(part_size).pow(r)
}

/// Part sizes of the balanced s-partite graph on l vertices (larger parts first).
pub fn balanced_parts(l: usize, s: usize) -> Vec<usize> {
    (0..s).map(|i| l / s + usize::from(i < l % s)).collect()
}

/// Number of r-cliques in a complete multipartite graph: the elementary
/// symmetric polynomial e_r of the part sizes.
pub fn multipartite_clique_count(parts: &[usize], r: usize) -> u128 {
    let mut e = vec![0u128; r + 1];
    e[0] = 1;
    for &p in parts {
        for j in (1..=r).rev() {
            e[j] += e[j - 1] * p as u128;
        }
    }
    e[r]
}

/// Result of [`erdos_max_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErdosCheck {
    pub l: usize,
    pub s: usize,
    pub r: usize,
    /// Maximum r-clique count over K_{s+1}-free labeled graphs on l vertices.
    pub max_count: u128,
    /// r-clique count of the balanced s-partite graph on l vertices.
    pub turan_count: u128,
    pub attained_by_turan: bool,
    /// Number of K_{s+1}-free labeled graphs visited.
    pub free_graphs: u64,
}

struct ErdosSearch {
    l: usize,
    s: usize,
    r: usize,
    pairs: Vec<(usize, usize)>,
    best: u128,
    free_graphs: u64,
}

impl ErdosSearch {
    fn run(&mut self, idx: usize, adj: &mut [u64]) {
        if idx == self.pairs.len() {
            self.free_graphs += 1;
            let all = (1u64 << self.l) - 1;
            let c = small_clique_count(adj, all, self.r);
            self.best = self.best.max(c);
            return;
        }
        let (u, v) = self.pairs[idx];
        self.run(idx + 1, adj);
        // Adding uv creates a K_{s+1} iff the common neighbourhood holds a K_{s-1}.
        let common = adj[u] & adj[v];
        if !small_has_clique(adj, common, self.s - 1) {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            self.run(idx + 1, adj);
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
        }
    }
}

/// Brute force over all labeled K_{s+1}-free graphs on l vertices, compared
/// against the balanced s-partite graph.
pub fn erdos_max_check(l: usize, s: usize, r: usize, limits: &Limits) -> Result<ErdosCheck> {
    if l > limits.erdos_l {
        return Err(Error::CapExceeded {
            what: "labeled graph order l",
            value: l as u64,
            cap: limits.erdos_l as u64,
        });
    }
    if s == 0 || r == 0 || r > s {
        return Err(Error::invalid(format!(
            "need 1 <= r <= s, got s={s}, r={r}"
        )));
    }
    // Edges grouped by their larger endpoint, so vertex v's edges are decided
    // together after all edges among 0..v.
    let pairs: Vec<(usize, usize)> = (1..l).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let mut search = ErdosSearch {
        l,
        s,
        r,
        pairs,
        best: 0,
        free_graphs: 0,
    };
    let mut adj = vec![0u64; l];
    search.run(0, &mut adj);
    let turan_count = multipartite_clique_count(&balanced_parts(l, s), r);
    Ok(ErdosCheck {
        l,
        s,
        r,
        max_count: search.best,
        turan_count,
        attained_by_turan: search.best == turan_count,
        free_graphs: search.free_graphs,
    })
}
