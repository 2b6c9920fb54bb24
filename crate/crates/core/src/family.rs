//! Subsets of the ground set, set families, and the canonical generator.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Largest supported ground set; one mask must fit in a `u64`.
pub const MAX_GROUND: u32 = 62;

/// Largest family `canonical_generator` will materialize.
pub const MAX_MATERIALIZED: u64 = 1 << 26;

/// A subset of [n]; element `i` is stored in bit `i - 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The whole ground set [n].
    pub fn full(n: u32) -> Self {
        debug_assert!(n <= 63);
        SubsetMask((1u64 << n) - 1)
    }

    pub fn singleton(element: u32) -> Self {
        debug_assert!((1..=63).contains(&element));
        SubsetMask(1 << (element - 1))
    }

    /// Builds a mask from 1-based elements. Elements outside 1..=63 are ignored.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        SubsetMask(
            elements
                .into_iter()
                .filter(|e| (1..=63).contains(e))
                .fold(0, |acc, e| acc | 1 << (e - 1)),
        )
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: SubsetMask) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn difference(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    /// True if no bit at position >= n is set.
    #[inline]
    pub fn fits(self, n: u32) -> bool {
        n >= 64 || self.0 >> n == 0
    }

    /// The 1-based elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros() + 1;
                rest &= rest - 1;
                Some(e)
            }
        })
    }
}

/// `1,3,4`, or `-` for the empty set.
impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for e in self.elements() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for SubsetMask {
    type Err = String;

    /// Strict: elements must be strictly ascending integers in 1..=62.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "-" {
            return Ok(SubsetMask::EMPTY);
        }
        if s.is_empty() {
            return Err("empty set must be written as '-'".into());
        }
        let mut bits = 0u64;
        let mut last = 0u32;
        for tok in s.split(',') {
            let tok = tok.trim();
            let e: u32 = tok
                .parse()
                .map_err(|_| format!("'{tok}' is not an element"))?;
            if e == 0 || e > MAX_GROUND {
                return Err(format!("element {e} out of range"));
            }
            if e <= last {
                return Err(format!("elements not strictly ascending at {e}"));
            }
            last = e;
            bits |= 1 << (e - 1);
        }
        Ok(SubsetMask(bits))
    }
}

/// A duplicate-free family of subsets of [n], sorted by mask value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: u32,
    members: Vec<SubsetMask>,
}

pub(crate) fn check_ground(n: u32) -> Result<()> {
    if (1..=MAX_GROUND).contains(&n) {
        Ok(())
    } else {
        Err(Error::GroundSetSize(n))
    }
}

impl SetFamily {
    /// Validates, sorts and deduplicates. Returns the family and the number of
    /// duplicates dropped.
    pub fn new(n: u32, masks: impl IntoIterator<Item = SubsetMask>) -> Result<(Self, usize)> {
        check_ground(n)?;
        let mut members: Vec<SubsetMask> = masks.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| !m.fits(n)) {
            return Err(Error::MaskOutOfRange { mask: bad.0, n });
        }
        let before = members.len();
        members.sort_unstable();
        members.dedup();
        let dropped = before - members.len();
        Ok((SetFamily { n, members }, dropped))
    }

    /// Caller guarantees the members are valid for `n`, sorted and distinct.
    pub(crate) fn from_sorted_unchecked(n: u32, members: Vec<SubsetMask>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.fits(n)));
        SetFamily { n, members }
    }

    /// Every nonempty subset of [n].
    pub fn all_nonempty(n: u32) -> Result<Self> {
        check_ground(n)?;
        if n > 26 {
            return Err(Error::CapExceeded {
                what: "family size",
                value: (1u64 << n) - 1,
                cap: MAX_MATERIALIZED,
            });
        }
        Ok(SetFamily {
            n,
            members: (1..1u64 << n).map(SubsetMask).collect(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    /// m = |G|.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: SubsetMask) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn contains_empty(&self) -> bool {
        self.members.first() == Some(&SubsetMask::EMPTY)
    }

    /// Members other than the empty set.
    pub fn nonempty_members(&self) -> &[SubsetMask] {
        if self.contains_empty() {
            &self.members[1..]
        } else {
            &self.members
        }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SubsetMask> {
        self.members.iter()
    }

    pub(crate) fn check_mask(&self, x: SubsetMask) -> Result<()> {
        if x.fits(self.n) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange {
                mask: x.0,
                n: self.n,
            })
        }
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a SubsetMask;
    type IntoIter = std::slice::Iter<'a, SubsetMask>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Builds a family from arbitrary masks; see [`SetFamily::new`].
pub fn make_family(n: u32, masks: &[SubsetMask]) -> Result<(SetFamily, usize)> {
    SetFamily::new(n, masks.iter().copied())
}

/// A partition of [n] into k contiguous blocks whose sizes differ by at most one.
///
/// The `n mod k` larger blocks come first, so element 1 always lies in a
/// largest class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPartition {
    pub n: u32,
    pub k: u32,
    pub classes: Vec<SubsetMask>,
}

fn check_nk(n: u32, k: u32) -> Result<()> {
    check_ground(n)?;
    if k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

impl CanonicalPartition {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        check_nk(n, k)?;
        let small = n / k;
        let large = n % k;
        let mut classes = Vec::with_capacity(k as usize);
        let mut offset = 0;
        for i in 0..k {
            let size = if i < large { small + 1 } else { small };
            classes.push(SubsetMask(((1u64 << size) - 1) << offset));
            offset += size;
        }
        Ok(CanonicalPartition { n, k, classes })
    }

    pub fn class_sizes(&self) -> impl Iterator<Item = u32> + '_ {
        self.classes.iter().map(|c| c.len())
    }
}

/// The union of all nonempty subsets of each class of the canonical partition.
pub fn canonical_generator(n: u32, k: u32) -> Result<SetFamily> {
    let size = canonical_size(n, k)?;
    if size > MAX_MATERIALIZED {
        return Err(Error::CapExceeded {
            what: "canonical family size",
            value: size,
            cap: MAX_MATERIALIZED,
        });
    }
    let partition = CanonicalPartition::new(n, k)?;
    let mut members = Vec::with_capacity(size as usize);
    // Blocks are contiguous and in ascending bit order, so every subset of a
    // later block is numerically larger than every subset of an earlier one.
    for class in &partition.classes {
        let offset = class.0.trailing_zeros();
        let width = class.len();
        members.extend((1..1u64 << width).map(|s| SubsetMask(s << offset)));
    }
    Ok(SetFamily::from_sorted_unchecked(n, members))
}

/// |canonical_generator(n, k)| = sum over classes of 2^|V_i| - 1.
pub fn canonical_size(n: u32, k: u32) -> Result<u64> {
    let partition = CanonicalPartition::new(n, k)?;
    Ok(partition.class_sizes().map(|s| (1u64 << s) - 1).sum())
}

/// Number of subfamilies of at most k members from an m-family.
pub fn choose_at_most(m: u64, k: u32) -> BigUint {
    let mut term = BigUint::one();
    let mut total = BigUint::one();
    for i in 0..k as u64 {
        if i >= m {
            break;
        }
        term = term * (m - i) / (i + 1);
        total += &term;
    }
    total
}

/// Smallest m with sum_{i=0..k} C(m, i) >= 2^n.
pub fn trivial_lower_bound(n: u32, k: u32) -> Result<u64> {
    check_nk(n, k)?;
    let target = BigUint::one() << n;
    // m = 2^n - 1 always works: C(m,0) + C(m,1) = 2^n.
    let (mut lo, mut hi) = (0u64, (1u64 << n) - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if choose_at_most(mid, k) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}
