//! Exact evaluation of the counting bounds and the small-union probability
//! experiment behind them.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{self, binomial, binomial_big, factorial, pow2, pow2_rational, Interval};
use crate::error::{Error, Result};
use crate::family::{canonical_size, check_ground, trivial_lower_bound, SetFamily};
use crate::generator::{count_disjoint_tuples, is_k_generator};
use crate::limits::Limits;

/// Parameters of the union-size bound: a family of size m in P[n], t-subsets,
/// and the density excess δ in m >= 2^((1/(k+1) + δ) n).
#[derive(Clone, Debug, PartialEq)]
pub struct BoundParams {
    pub n: u32,
    pub k: u32,
    pub m: u64,
    pub delta: BigRational,
    pub t: u32,
    /// Union-size cutoff, floor(n / (k+1)) unless overridden.
    pub threshold: u32,
}

impl BoundParams {
    pub fn new(n: u32, k: u32, m: u64, delta: BigRational, t: u32) -> Result<Self> {
        let p = BoundParams {
            n,
            k,
            m,
            delta,
            t,
            threshold: n / (k + 1).max(1),
        };
        p.validate()?;
        Ok(p)
    }

    /// Derives δ = log2(m)/n - 1/(k+1); only possible when m is a power of two.
    pub fn from_power_of_two(n: u32, k: u32, m: u64, t: u32) -> Result<Self> {
        if !m.is_power_of_two() {
            return Err(Error::invalid(format!("m={m} is not a power of two; δ would be irrational")));
        }
        let log = m.trailing_zeros() as i64;
        let delta = arith::ratio(log, n as i64) - arith::ratio(1, k as i64 + 1);
        BoundParams::new(n, k, m, delta, t)
    }

    pub fn validate(&self) -> Result<()> {
        check_ground(self.n)?;
        if self.k == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        if self.t == 0 {
            return Err(Error::invalid("t must be at least 1"));
        }
        if self.m == 0 {
            return Err(Error::invalid("m must be at least 1"));
        }
        if self.threshold > self.n {
            return Err(Error::invalid("threshold must not exceed n"));
        }
        if !self.delta.is_positive() {
            return Err(Error::invalid(format!("δ must be positive, got {}", arith::rational_string(&self.delta))));
        }
        Ok(())
    }

    /// Whether m >= 2^((1/(k+1) + δ) n), decided exactly.
    pub fn in_regime(&self) -> bool {
        in_regime(self.n, self.k, self.m, &self.delta)
    }
}

/// m >= 2^(n/(k+1) + δn), compared as m^b >= 2^a for the exponent a/b.
pub fn in_regime(n: u32, k: u32, m: u64, delta: &BigRational) -> bool {
    let e = arith::ratio(n as i64, k as i64 + 1) + delta * BigRational::from_integer(BigInt::from(n));
    if !e.is_positive() {
        return true;
    }
    let (a, b) = (e.numer().to_u64(), e.denom().to_u32());
    match (a, b) {
        (Some(a), Some(b)) => BigUint::from(m).pow(b) >= pow2(a),
        _ => false,
    }
}

/// (k+1) 2^(n(1-δt)) C(m,t)^(k+1) / (k+1)!: the count bound for copies of
/// K_{k+1}(t) in the disjointness graph.
pub fn lemma4_bound(p: &BoundParams) -> Result<Interval> {
    p.validate()?;
    let n = BigRational::from_integer(BigInt::from(p.n));
    let t = BigRational::from_integer(BigInt::from(p.t));
    let exponent = &n * (BigRational::one() - &p.delta * t);
    let power = pow2_rational(&exponent);
    let kp1 = p.k as u64 + 1;
    let coefficient = arith::big_ratio(
        &(BigUint::from(kp1) * binomial(p.m, p.t as u64).pow(kp1 as u32)),
        &factorial(kp1),
    );
    Ok(power.scale(&coefficient))
}

/// 2^n (2^(n/(k+1)) / m)^t = 2^(n + tn/(k+1)) / m^t.
pub fn analytic_union_bound(n: u32, k: u32, m: u64, t: u32) -> Result<Interval> {
    check_ground(n)?;
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    let exponent = arith::ratio(n as i64, 1) + arith::ratio(t as i64 * n as i64, k as i64 + 1);
    let power = pow2_rational(&exponent);
    let inv = arith::big_ratio(&BigUint::one(), &BigUint::from(m).pow(t));
    Ok(power.scale(&inv))
}

/// sum over S ⊆ [n] with |S| <= threshold of C(2^|S|, t) / C(m, t), the
/// union bound before it is simplified.
pub fn subset_union_bound(n: u32, m: u64, t: u32, threshold: u32) -> Result<BigRational> {
    let denom = binomial(m, t as u64);
    if denom.is_zero() {
        return Err(Error::invalid("t exceeds m"));
    }
    let numer: BigUint = (0..=threshold.min(n))
        .map(|s| binomial(n as u64, s as u64) * binomial_big(&pow2(s as u64), t as u64))
        .sum();
    Ok(arith::big_ratio(&numer, &denom))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    Exact,
    /// Monte Carlo with a mandatory seed. Trials are split into fixed chunks,
    /// chunk i using ChaCha8 stream i, so the estimate does not depend on the
    /// number of worker threads.
    Sampled { seed: u64, trials: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub hits: u64,
    pub trials: u64,
    pub estimate: f64,
    pub std_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Probability {
    Exact(BigRational),
    Sampled(Estimate),
}

impl Probability {
    pub fn approx(&self) -> f64 {
        match self {
            Probability::Exact(p) => arith::rational_to_f64(p),
            Probability::Sampled(e) => e.estimate,
        }
    }
}

const CHUNK: u64 = 8192;

fn count_small_unions(members: &[u64], t: usize, threshold: u32, start: usize, union: u64) -> u128 {
    if union.count_ones() > threshold {
        return 0;
    }
    if t == 0 {
        return 1;
    }
    let mut total = 0;
    for i in start..=members.len() - t {
        total += count_small_unions(members, t - 1, threshold, i + 1, union | members[i]);
    }
    total
}

/// Probability that t distinct members drawn uniformly have a union of at
/// most `threshold` elements.
pub fn small_union_probability(
    family: &SetFamily,
    t: u32,
    threshold: u32,
    mode: SampleMode,
    limits: &Limits,
) -> Result<Probability> {
    let m = family.len();
    if t as usize > m {
        return Err(Error::invalid(format!("t={t} exceeds family size {m}")));
    }
    let members: Vec<u64> = family.iter().map(|x| x.bits()).collect();
    match mode {
        SampleMode::Exact => {
            let total = binomial(m as u64, t as u64);
            if total > BigUint::from(limits.enumeration_budget) {
                return Err(Error::BudgetExceeded {
                    what: "t-subset enumeration",
                    budget: limits.enumeration_budget,
                });
            }
            let hits = count_small_unions(&members, t as usize, threshold, 0, 0);
            Ok(Probability::Exact(BigRational::new(
                BigInt::from(hits),
                BigInt::from(total),
            )))
        }
        SampleMode::Sampled { seed, trials } => {
            if trials == 0 {
                return Err(Error::invalid("sampled mode needs at least one trial"));
            }
            let chunks = trials.div_ceil(CHUNK);
            let hits: u64 = (0..chunks)
                .into_par_iter()
                .map(|chunk| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(chunk);
                    let len = CHUNK.min(trials - chunk * CHUNK);
                    let mut pool = members.clone();
                    let mut hits = 0u64;
                    for _ in 0..len {
                        let mut union = 0u64;
                        for i in 0..t as usize {
                            let j = rng.random_range(i..m);
                            pool.swap(i, j);
                            union |= pool[i];
                        }
                        if union.count_ones() <= threshold {
                            hits += 1;
                        }
                    }
                    hits
                })
                .sum();
            let p = hits as f64 / trials as f64;
            Ok(Probability::Sampled(Estimate {
                hits,
                trials,
                estimate: p,
                std_error: (p * (1.0 - p) / trials as f64).sqrt(),
            }))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnionBoundReport {
    pub n: u32,
    pub k: u32,
    pub m: u64,
    pub t: u32,
    pub threshold: u32,
    pub in_regime: bool,
    pub probability: Probability,
    /// The sum over small S, before simplification.
    pub subset_bound: Option<BigRational>,
    pub analytic_bound: Interval,
    pub bound_holds: bool,
}

/// Compares the small-union probability at threshold floor(n/(k+1)) with
/// the analytic bound. Out-of-regime parameters are evaluated and flagged.
pub fn union_bound_check(
    family: &SetFamily,
    k: u32,
    delta: &BigRational,
    t: u32,
    mode: SampleMode,
    limits: &Limits,
) -> Result<UnionBoundReport> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if t == 0 {
        return Err(Error::invalid("t must be at least 1"));
    }
    let n = family.n();
    let m = family.len() as u64;
    let threshold = n / (k + 1);
    let probability = small_union_probability(family, t, threshold, mode, limits)?;
    let analytic_bound = analytic_union_bound(n, k, m, t)?;
    let subset_bound = subset_union_bound(n, m, t, threshold).ok();
    let bound_holds = match &probability {
        // Certified: compare against the lower end of the bracket.
        Probability::Exact(p) => *p <= analytic_bound.lower,
        Probability::Sampled(e) => e.estimate <= analytic_bound.approx(),
    };
    Ok(UnionBoundReport {
        n,
        k,
        m,
        t,
        threshold,
        in_regime: in_regime(n, k, m, delta),
        probability,
        subset_bound,
        analytic_bound,
        bound_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub tuples: BigUint,
    pub two_to_n: BigUint,
    pub holds: bool,
    /// `Some(verdict)` when the generator property was checked, `None` when assumed.
    pub generator_verified: Option<bool>,
}

/// Number of disjoint ≤k-tuples against 2^n.
pub fn coverage_inequality_check(
    family: &SetFamily,
    k: u32,
    verify: bool,
    limits: &Limits,
) -> Result<CoverageReport> {
    let generator_verified = if verify {
        Some(is_k_generator(family, k as usize, limits)?.holds)
    } else {
        None
    };
    let tuples = count_disjoint_tuples(family, k as usize, limits)?;
    let two_to_n = pow2(family.n() as u64);
    Ok(CoverageReport {
        holds: tuples >= two_to_n,
        tuples,
        two_to_n,
        generator_verified,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub n: u32,
    pub k: u32,
    pub trivial_bound: u64,
    /// (k!)^(1/k) 2^(n/k).
    pub factorial_root_bound: f64,
    /// k 2^(n/k).
    pub k_bound: f64,
    pub canonical_size: u64,
}

/// One row per (n, k) with k <= n inside the given ranges.
pub fn bound_table(ns: RangeInclusive<u32>, ks: RangeInclusive<u32>) -> Result<Vec<BoundRow>> {
    let mut rows = Vec::new();
    for n in ns {
        check_ground(n)?;
        for k in ks.clone() {
            if k == 0 || k > n {
                continue;
            }
            let scale = (n as f64 / k as f64) * std::f64::consts::LN_2;
            let ln_fact: f64 = (1..=k).map(|i| (i as f64).ln()).sum();
            rows.push(BoundRow {
                n,
                k,
                trivial_bound: trivial_lower_bound(n, k)?,
                factorial_root_bound: (ln_fact / k as f64 + scale).exp(),
                k_bound: k as f64 * scale.exp(),
                canonical_size: canonical_size(n, k)?,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::family::canonical_generator;

    #[test]
    fn lemma4_example() {
        let p = BoundParams::new(10, 2, 32, ratio(1, 6), 3).unwrap();
        assert!(p.in_regime());
        let v = lemma4_bound(&p).unwrap();
        assert!(v.is_exact());
        assert_eq!(v.lower, ratio(1_952_382_976_000i64, 1));
        assert_eq!(BoundParams::from_power_of_two(10, 2, 32, 3).unwrap().delta, ratio(1, 6));
    }

    #[test]
    fn lemma4_exponent_collapse() {
        // δt = 1 leaves the power of two at 2^0.
        let p = BoundParams::new(10, 2, 32, ratio(1, 3), 3).unwrap();
        let v = lemma4_bound(&p).unwrap();
        let c = binomial(32, 3).pow(3u32) * 3u32 / 6u32;
        assert_eq!(v.lower, arith::big_ratio(&c, &BigUint::one()));
    }

    #[test]
    fn lemma4_k1() {
        // k=1, t=1: 2 * 2^(n(1-δ)) * m^2 / 2.
        let p = BoundParams::new(8, 1, 64, ratio(1, 4), 1).unwrap();
        assert!(p.in_regime());
        let v = lemma4_bound(&p).unwrap();
        assert_eq!(v.lower, ratio(64 * 64 * 64, 1));
    }

    #[test]
    fn lemma4_irrational_exponent() {
        let p = BoundParams::new(7, 2, 32, ratio(1, 5), 2).unwrap();
        let v = lemma4_bound(&p).unwrap();
        assert!(!v.is_exact());
        let expected = 3.0 * 2f64.powf(7.0 * (1.0 - 0.4)) * 496f64.powi(3) / 6.0;
        assert!((v.approx() / expected - 1.0).abs() < 1e-12);
        assert!(v.lower < v.upper);
    }

    #[test]
    fn bound_param_validation() {
        assert!(BoundParams::new(10, 0, 32, ratio(1, 6), 3).is_err());
        assert!(BoundParams::new(10, 2, 32, ratio(1, 6), 0).is_err());
        assert!(BoundParams::new(10, 2, 32, ratio(-1, 6), 3).is_err());
        assert!(BoundParams::from_power_of_two(10, 2, 33, 3).is_err());
        let p = BoundParams::new(10, 2, 31, ratio(1, 6), 3).unwrap();
        assert!(!p.in_regime());
    }

    #[test]
    fn analytic_examples() {
        let v = analytic_union_bound(9, 2, 32, 3).unwrap();
        assert_eq!(v.lower, ratio(8, 1));
        assert!(v.is_exact());
        assert_eq!(analytic_union_bound(9, 2, 32, 0).unwrap().lower, ratio(512, 1));
        for t in 0..5 {
            assert_eq!(analytic_union_bound(9, 2, 8, t).unwrap().lower, ratio(512, 1));
        }
        assert!(!analytic_union_bound(10, 2, 32, 1).unwrap().is_exact());
    }

    #[test]
    fn union_probability_examples() {
        let l = Limits::default();
        let f = canonical_generator(4, 2).unwrap();
        let p = small_union_probability(&f, 2, 2, SampleMode::Exact, &l).unwrap();
        assert_eq!(p, Probability::Exact(ratio(2, 3)));
        let p = small_union_probability(&f, 3, 4, SampleMode::Exact, &l).unwrap();
        assert_eq!(p, Probability::Exact(ratio(1, 1)));
        let p = small_union_probability(&f, 1, 0, SampleMode::Exact, &l).unwrap();
        assert_eq!(p, Probability::Exact(ratio(0, 1)));
        assert!(small_union_probability(&f, 7, 2, SampleMode::Exact, &l).is_err());
    }

    #[test]
    fn sampled_union_probability_is_reproducible() {
        let l = Limits::default();
        let f = canonical_generator(6, 2).unwrap();
        let mode = SampleMode::Sampled { seed: 7, trials: 20_000 };
        let a = small_union_probability(&f, 3, 3, mode, &l).unwrap();
        let b = small_union_probability(&f, 3, 3, mode, &l).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn coverage_examples() {
        let l = Limits::default();
        let r = coverage_inequality_check(&canonical_generator(3, 2).unwrap(), 2, true, &l).unwrap();
        assert_eq!((r.tuples.clone(), r.holds), (BigUint::from(9u32), true));
        assert_eq!(r.generator_verified, Some(true));

        let r = coverage_inequality_check(&canonical_generator(4, 2).unwrap(), 2, false, &l).unwrap();
        // 1 empty tuple + 6 singles + 11 disjoint pairs.
        assert_eq!(r.tuples, BigUint::from(18u32));
        assert!(r.holds);
        assert_eq!(r.generator_verified, None);

        let (f, _) = SetFamily::new(2, [crate::SubsetMask(1)]).unwrap();
        let r = coverage_inequality_check(&f, 2, true, &l).unwrap();
        assert_eq!(r.tuples, BigUint::from(2u32));
        assert!(!r.holds);
        assert_eq!(r.generator_verified, Some(false));
    }

    #[test]
    fn table_rows() {
        let rows = bound_table(12..=12, 2..=2).unwrap();
        assert_eq!(rows[0].canonical_size, 126);
        assert!((rows[0].k_bound - 128.0).abs() < 1e-9);
        for row in bound_table(1..=30, 1..=8).unwrap() {
            assert!(row.trivial_bound <= row.canonical_size);
            assert!(row.factorial_root_bound <= row.k_bound * (1.0 + 1e-12));
            if row.n == row.k {
                assert_eq!(row.canonical_size, row.n as u64);
            }
        }
    }
}
