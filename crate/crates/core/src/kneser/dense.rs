//! Fraction of l-vertex subsets whose induced r-clique density reaches a
//! threshold, by exact enumeration or seeded sampling.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::kneser::cliques::small_clique_count;
use crate::kneser::graph::Graph;
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenseMode {
    /// Enumerate every l-subset; fails if C(m, l) exceeds the enumeration budget.
    Exact,
    /// Draw `samples` uniformly random l-subsets from a ChaCha8 stream seeded with `seed`.
    Sampled { seed: u64, samples: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum DenseFraction {
    Exact {
        dense: BigUint,
        total: BigUint,
        fraction: BigRational,
    },
    Sampled {
        hits: u64,
        samples: u64,
        estimate: f64,
        std_error: f64,
    },
}

struct Density<'a> {
    g: &'a Graph,
    r: usize,
    // U is dense iff count * den >= num * C(l, r).
    lhs_scale: u128,
    rhs: u128,
}

impl Density<'_> {
    fn is_dense(&self, vertices: &[usize]) -> bool {
        let l = vertices.len();
        let mut rows = vec![0u64; l];
        for i in 0..l {
            for j in i + 1..l {
                if self.g.has_edge(vertices[i], vertices[j]) {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        let all = if l == 64 { !0 } else { (1u64 << l) - 1 };
        let count = small_clique_count(&rows, all, self.r);
        count * self.lhs_scale >= self.rhs
    }
}

/// Counts l-subsets U of the vertices with clique_density(G[U], r) >= threshold.
pub fn dense_subset_fraction(
    g: &Graph,
    l: usize,
    r: usize,
    threshold: &BigRational,
    mode: DenseMode,
    limits: &Limits,
) -> Result<DenseFraction> {
    let m = g.vertex_count();
    if r == 0 || r > l || l > m {
        return Err(Error::invalid(format!(
            "need 1 <= r <= l <= m, got r={r}, l={l}, m={m}"
        )));
    }
    if l > 64 {
        return Err(Error::CapExceeded {
            what: "subset size l",
            value: l as u64,
            cap: 64,
        });
    }
    if threshold.is_negative() {
        return Err(Error::invalid("threshold must be non-negative"));
    }
    let c_lr = binomial(l as u64, r as u64);
    let to_u128 = |b: &BigInt| b.to_u128();
    let (num, den) = (threshold.numer(), threshold.denom());
    let rhs = (BigInt::from(c_lr) * num).to_u128();
    let density = match (rhs, to_u128(den)) {
        (Some(rhs), Some(den)) => Density {
            g,
            r,
            lhs_scale: den,
            rhs,
        },
        _ => return Err(Error::invalid("threshold too large to compare exactly")),
    };

    match mode {
        DenseMode::Exact => {
            let total = binomial(m as u64, l as u64);
            if total > BigUint::from(limits.enumeration_budget) {
                return Err(Error::BudgetExceeded {
                    what: "dense-subset enumeration",
                    budget: limits.enumeration_budget,
                });
            }
            let mut dense = 0u64;
            let mut chosen = Vec::with_capacity(l);
            enumerate(m, l, 0, &mut chosen, &mut |u| {
                if density.is_dense(u) {
                    dense += 1;
                }
            });
            let dense = BigUint::from(dense);
            let fraction = if total.is_zero() {
                BigRational::zero()
            } else {
                BigRational::new(BigInt::from(dense.clone()), BigInt::from(total.clone()))
            };
            Ok(DenseFraction::Exact {
                dense,
                total,
                fraction,
            })
        }
        DenseMode::Sampled { seed, samples } => {
            if samples == 0 {
                return Err(Error::invalid("sampled mode needs at least one sample"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pool: Vec<usize> = (0..m).collect();
            let mut hits = 0u64;
            for _ in 0..samples {
                for i in 0..l {
                    let j = rng.random_range(i..m);
                    pool.swap(i, j);
                }
                if density.is_dense(&pool[..l]) {
                    hits += 1;
                }
            }
            let p = hits as f64 / samples as f64;
            Ok(DenseFraction::Sampled {
                hits,
                samples,
                estimate: p,
                std_error: (p * (1.0 - p) / samples as f64).sqrt(),
            })
        }
    }
}

/// Calls `visit` on every l-subset of 0..m in lexicographic order.
pub(crate) fn enumerate(m: usize, l: usize, start: usize, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if chosen.len() == l {
        visit(chosen);
        return;
    }
    let need = l - chosen.len();
    for v in start..=m - need {
        chosen.push(v);
        enumerate(m, l, v + 1, chosen, visit);
        chosen.pop();
    }
}
