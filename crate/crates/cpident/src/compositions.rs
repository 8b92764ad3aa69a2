//! Bounded compositions: ordered tuples (n_1, ..., n_L) with 0 <= n_j <= N-1
//! and a prescribed sum, enumerated in lexicographic order, plus their
//! prefix/suffix sum data and the counting vector c_m.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A bounded composition with parts in [0, N-1].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
    bound: u32,
}

impl Composition {
    pub fn new(parts: Vec<u32>, n: u32) -> Composition {
        assert!(n >= 2);
        assert!(parts.iter().all(|&p| p <= n - 1), "part out of range");
        Composition { parts, bound: n }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Prefix sums N_j = sum_{l<j} n_l, one entry per site (0-based j).
    pub fn prefix_sums(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len());
        let mut acc = 0;
        for &p in &self.parts {
            out.push(acc);
            acc += p;
        }
        out
    }

    /// Suffix sums Nbar_j = sum_{l>j} n_l.
    pub fn suffix_sums(&self) -> Vec<u32> {
        let total = self.sum();
        let mut out = Vec::with_capacity(self.len());
        let mut acc = 0;
        for &p in &self.parts {
            acc += p;
            out.push(total - acc);
        }
        out
    }
}

/// Prefix/suffix data for a composition and an auxiliary pair (mu, lambda):
/// a_j, abar_j are prefix/suffix sums of mu, b_j, bbar_j of lambda.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixData {
    pub nj: Vec<u32>,
    pub nbar: Vec<u32>,
    pub a: Vec<u32>,
    pub abar: Vec<u32>,
    pub b: Vec<u32>,
    pub bbar: Vec<u32>,
}

pub fn prefix_data(c: &Composition, mu: &Composition, lambda: &Composition) -> PrefixData {
    PrefixData {
        nj: c.prefix_sums(),
        nbar: c.suffix_sums(),
        a: mu.prefix_sums(),
        abar: mu.suffix_sums(),
        b: lambda.prefix_sums(),
        bbar: lambda.suffix_sums(),
    }
}

/// Streaming lexicographic enumeration of all compositions of `m` into `l`
/// parts bounded by N-1. Successors are computed in place.
pub struct CompositionIter {
    state: Option<Vec<u32>>,
    bound: u32,
    fresh: bool,
}

impl CompositionIter {
    pub fn new(l: usize, n: u32, m: u32) -> CompositionIter {
        assert!(l >= 1 && n >= 2);
        let state = first_composition(l, n, m);
        CompositionIter {
            state,
            bound: n,
            fresh: true,
        }
    }
}

/// Lexicographically smallest composition of m into l parts <= n-1, if any.
fn first_composition(l: usize, n: u32, m: u32) -> Option<Vec<u32>> {
    if m > (n - 1) * l as u32 {
        return None;
    }
    // smallest lexicographic: push weight to the rightmost slots
    let mut parts = vec![0u32; l];
    let mut rem = m;
    for j in (0..l).rev() {
        let take = rem.min(n - 1);
        parts[j] = take;
        rem -= take;
    }
    debug_assert_eq!(rem, 0);
    Some(parts)
}

impl Iterator for CompositionIter {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let parts = self.state.as_mut()?;
        if self.fresh {
            self.fresh = false;
            return Some(Composition::new(parts.clone(), self.bound));
        }
        // lexicographic successor with fixed sum and bounded parts: find the
        // rightmost position i that can be incremented while the suffix after
        // it can absorb (suffix_sum - 1) within its capacity
        let l = parts.len();
        let cap = self.bound - 1;
        let mut suffix: u32 = 0;
        let mut found = None;
        for i in (0..l).rev() {
            // suffix = sum of parts after position i
            if i + 1 < l {
                suffix += parts[i + 1];
            }
            let slots_after = (l - 1 - i) as u32;
            // incrementing parts[i] requires the suffix to redistribute suffix-1
            if parts[i] < cap && suffix >= 1 && suffix - 1 <= cap * slots_after {
                found = Some((i, suffix));
                break;
            }
        }
        let (i, suffix) = match found {
            Some(x) => x,
            None => {
                self.state = None;
                return None;
            }
        };
        parts[i] += 1;
        let rest = first_composition(l - 1 - i, self.bound, suffix - 1);
        match rest {
            Some(tail) => {
                parts[i + 1..].copy_from_slice(&tail);
            }
            None => {
                // capacity was checked above
                unreachable!("successor redistribution failed");
            }
        }
        Some(Composition::new(parts.clone(), self.bound))
    }
}

/// All compositions of m into l parts bounded by n-1, lexicographic order.
pub fn enumerate(l: usize, n: u32, m: u32) -> CompositionIter {
    CompositionIter::new(l, n, m)
}

/// Split the enumeration into independent ranges by first-part value, for
/// parallel reduction. Each returned iterator covers the compositions whose
/// first part equals the given value.
pub fn chunks_by_first_part(l: usize, n: u32, m: u32) -> Vec<(u32, Box<dyn Iterator<Item = Composition> + Send>)> {
    assert!(l >= 1);
    let mut out: Vec<(u32, Box<dyn Iterator<Item = Composition> + Send>)> = Vec::new();
    for first in 0..n {
        if first > m {
            break;
        }
        let rem = m - first;
        if rem > (n - 1) * (l as u32 - 1) {
            continue;
        }
        let bound = n;
        if l == 1 {
            if rem == 0 {
                let c = Composition::new(vec![first], n);
                out.push((first, Box::new(std::iter::once(c))));
            }
            continue;
        }
        let inner = CompositionIter::new(l - 1, n, rem).map(move |tail| {
            let mut parts = Vec::with_capacity(tail.len() + 1);
            parts.push(first);
            parts.extend_from_slice(tail.parts());
            Composition::new(parts, bound)
        });
        out.push((first, Box::new(inner)));
    }
    out
}

/// Coefficients c_0..c_{(N-1)L} of ((1 - t^N)/(1 - t))^L = (1 + t + ... + t^{N-1})^L.
pub fn count_cm(l: usize, n: u32) -> Vec<BigInt> {
    assert!(l >= 1 && n >= 2);
    let base: Vec<BigInt> = (0..n).map(|_| BigInt::one()).collect();
    let mut acc = vec![BigInt::one()];
    for _ in 0..l {
        let mut next = vec![BigInt::zero(); acc.len() + base.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in base.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}
