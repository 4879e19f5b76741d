//! Exact combinatorial kernels: big-integer binomials and factorials, the
//! two-row Specht dimension f^{(n-k,k)}, ranked k-subsets of ⟦1,n⟧, and
//! permutations of ⟦1,n⟧ acting on those subsets.
//!
//! Subsets are strictly increasing element vectors ordered lexicographically;
//! `rank`/`unrank` convert between a subset and its position in that order.
//! All counts are `BigInt`, so nothing here overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// C(a,b) with the zero convention: the result is 0 whenever b < 0 or b > a.
///
/// The eigenvalue and symmetrizer sums rely on out-of-range binomials
/// vanishing, so the convention lives here rather than at every call site.
pub fn binomial(a: u64, b: i64) -> BigInt {
    if b < 0 || b as u64 > a {
        return BigInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1; // exact: acc is C(a, i+1) after this step
    }
    acc
}

/// x! as a `BigInt`.
pub fn factorial(x: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=x {
        acc *= i;
    }
    acc
}

/// Double factorial x!! for x ≥ −1, with (−1)!! = 0!! = 1.
pub fn double_factorial(x: i64) -> Result<BigInt> {
    if x < -1 {
        return Err(Error::OutOfRange(format!(
            "double_factorial: argument must be >= -1, got {x}"
        )));
    }
    let mut acc = BigInt::one();
    let mut x = x;
    while x > 1 {
        acc *= x;
        x -= 2;
    }
    Ok(acc)
}

/// Dimension f^{(n-k,k)} of the two-row Specht module, for 0 ≤ 2k ≤ n.
///
/// Computed two ways, hook length formula n!(n-2k+1)/(k!(n-k+1)!) and the
/// binomial difference C(n,k) - C(n,k-1), and asserted equal.
pub fn specht_dimension(n: u64, k: u64) -> Result<BigInt> {
    if 2 * k > n {
        return Err(Error::OutOfRange(format!(
            "specht_dimension: need 2k <= n, got n = {n}, k = {k}"
        )));
    }
    let numerator = factorial(n) * (n - 2 * k + 1);
    let denominator = factorial(k) * factorial(n - k + 1);
    let (hook, rem) = numerator.div_rem(&denominator);
    assert!(rem.is_zero(), "hook length formula divided inexactly");
    let difference = binomial(n, k as i64) - binomial(n, k as i64 - 1);
    assert_eq!(hook, difference, "Specht dimension formulas disagree");
    Ok(hook)
}

/// A k-element subset of ⟦1,n⟧, stored as a strictly increasing vector.
///
/// Ordering is lexicographic on the element vector (within a fixed ambient n),
/// matching the basis order used for intertwining matrices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KSubset {
    n: u32,
    elements: Vec<u32>,
}

impl KSubset {
    /// Fails unless `elements` is strictly increasing and contained in ⟦1,n⟧.
    pub fn new(n: u32, elements: Vec<u32>) -> Result<Self> {
        for (i, &e) in elements.iter().enumerate() {
            if e < 1 || e > n {
                return Err(Error::OutOfRange(format!(
                    "subset element {e} outside ambient set ⟦1,{n}⟧"
                )));
            }
            if i > 0 && elements[i - 1] >= e {
                return Err(Error::OutOfRange(format!(
                    "subset elements must be strictly increasing at position {i}"
                )));
            }
        }
        Ok(KSubset { n, elements })
    }

    fn from_sorted(n: u32, elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.iter().all(|&e| 1 <= e && e <= n));
        KSubset { n, elements }
    }

    /// The reference subset Ω = ⟦n-m+1, n⟧, the lexicographically last m-subset.
    pub fn omega(n: u32, m: u32) -> Result<Self> {
        if m > n {
            return Err(Error::OutOfRange(format!("omega: m = {m} > n = {n}")));
        }
        Ok(Self::from_sorted(n, (n - m + 1..=n).collect()))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Position of this subset in the lexicographic order of all k-subsets.
    pub fn rank(&self) -> usize {
        let n = self.n as u64;
        let k = self.elements.len() as u64;
        let mut acc = BigInt::zero();
        let mut prev = 0u64;
        for (i, &e) in self.elements.iter().enumerate() {
            for x in prev + 1..e as u64 {
                acc += binomial(n - x, k as i64 - i as i64 - 1);
            }
            prev = e as u64;
        }
        acc.to_usize().expect("subset rank exceeds usize")
    }

    /// Inverse of `rank`: the subset at position `rank`, 0 ≤ rank < C(n,k).
    pub fn unrank(n: u32, k: u32, rank: usize) -> Result<Self> {
        if k > n {
            return Err(Error::OutOfRange(format!("unrank: k = {k} > n = {n}")));
        }
        let total = binomial(n as u64, k as i64);
        if BigInt::from(rank) >= total {
            return Err(Error::OutOfRange(format!(
                "unrank: rank {rank} >= C({n},{k}) = {total}"
            )));
        }
        let mut r = BigInt::from(rank);
        let mut elements = Vec::with_capacity(k as usize);
        let mut x = 1u32;
        for i in 0..k {
            loop {
                let block = binomial((n - x) as u64, k as i64 - i as i64 - 1);
                if r < block {
                    break;
                }
                r -= block;
                x += 1;
            }
            elements.push(x);
            x += 1;
        }
        Ok(Self::from_sorted(n, elements))
    }

    /// |self ∩ other|; both subsets must share the ambient set.
    pub fn intersection_size(&self, other: &KSubset) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.elements.len() && j < other.elements.len() {
            match self.elements[i].cmp(&other.elements[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(count)
    }
}

/// All k-subsets of ⟦1,n⟧ in lexicographic order; index agrees with `rank`.
pub fn all_subsets(n: u32, k: u32) -> Result<Vec<KSubset>> {
    if k > n {
        return Err(Error::OutOfRange(format!("all_subsets: k = {k} > n = {n}")));
    }
    let k = k as usize;
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (1..=k as u32).collect();
    loop {
        out.push(KSubset::from_sorted(n, cur.clone()));
        // Advance the rightmost element that is below its maximum.
        let mut i = k;
        while i > 0 && cur[i - 1] == n - (k - i) as u32 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    Ok(out)
}

/// A permutation of ⟦1,n⟧; `images[i-1]` is the image of i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: u32) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Fails unless `images` is a bijection of ⟦1,n⟧ with n = images.len().
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &im in &images {
            if im < 1 || im > n || seen[(im - 1) as usize] {
                return Err(Error::OutOfRange(format!(
                    "images are not a bijection of ⟦1,{n}⟧"
                )));
            }
            seen[(im - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition (a b) in S_n, with a ≠ b.
    pub fn transposition(n: u32, a: u32, b: u32) -> Result<Self> {
        if a < 1 || a > n || b < 1 || b > n || a == b {
            return Err(Error::OutOfRange(format!(
                "transposition ({a} {b}) is not valid in S_{n}"
            )));
        }
        let mut images: Vec<u32> = (1..=n).collect();
        images.swap((a - 1) as usize, (b - 1) as usize);
        Ok(Permutation { images })
    }

    pub fn n(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn apply(&self, x: u32) -> u32 {
        assert!(1 <= x && x <= self.n(), "point {x} outside ⟦1,{}⟧", self.n());
        self.images[(x - 1) as usize]
    }

    /// Composition acts right to left: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::AmbientMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[(im - 1) as usize] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// Parity, +1 or −1, from the cycle decomposition.
    pub fn sign(&self) -> i32 {
        let n = self.images.len();
        let mut visited = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            cycles += 1;
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                cur = (self.images[cur] - 1) as usize;
            }
        }
        if (n - cycles) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Elementwise image of a subset, re-sorted into a subset of ⟦1,n⟧.
    pub fn apply_subset(&self, s: &KSubset) -> Result<KSubset> {
        if self.n() != s.n() {
            return Err(Error::AmbientMismatch {
                left: self.n(),
                right: s.n(),
            });
        }
        let mut elements: Vec<u32> = s.elements().iter().map(|&x| self.apply(x)).collect();
        elements.sort_unstable();
        Ok(KSubset::from_sorted(s.n(), elements))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_values_and_conventions() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(49, 6), BigInt::from(13_983_816));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::one());
        assert_eq!(double_factorial(0).unwrap(), BigInt::one());
        assert_eq!(double_factorial(9).unwrap(), BigInt::from(945));
        assert_eq!(double_factorial(10).unwrap(), BigInt::from(3840));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn specht_dimension_values() {
        assert_eq!(specht_dimension(6, 0).unwrap(), BigInt::one());
        assert_eq!(specht_dimension(6, 2).unwrap(), BigInt::from(9));
        assert_eq!(specht_dimension(10, 5).unwrap(), BigInt::from(42));
        assert!(specht_dimension(5, 3).is_err());
    }

    #[test]
    fn specht_dimensions_sum_to_central_binomial() {
        // Σ_{k=0}^{⌊n/2⌋} f^{(n-k,k)} = C(n, ⌊n/2⌋).
        for n in 0u64..=12 {
            let mut sum = BigInt::zero();
            for k in 0..=n / 2 {
                sum += specht_dimension(n, k).unwrap();
            }
            assert_eq!(sum, binomial(n, (n / 2) as i64), "n = {n}");
        }
    }

    #[test]
    fn subset_construction_and_omega() {
        assert!(KSubset::new(6, vec![1, 1, 2]).is_err());
        assert!(KSubset::new(6, vec![0, 1]).is_err());
        assert!(KSubset::new(6, vec![5, 7]).is_err());
        let omega = KSubset::omega(6, 3).unwrap();
        assert_eq!(omega.elements(), &[4, 5, 6]);
        assert_eq!(omega.rank(), 19);
        assert_eq!(KSubset::omega(5, 0).unwrap().elements(), &[] as &[u32]);
    }

    #[test]
    fn all_subsets_agree_with_rank_and_unrank() {
        for (n, k) in [(6u32, 3u32), (5, 2), (4, 0), (4, 4), (7, 1)] {
            let subsets = all_subsets(n, k).unwrap();
            assert_eq!(
                BigInt::from(subsets.len()),
                binomial(n as u64, k as i64)
            );
            for (i, s) in subsets.iter().enumerate() {
                assert_eq!(s.rank(), i);
                assert_eq!(&KSubset::unrank(n, k, i).unwrap(), s);
            }
            assert!(subsets.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn intersection_size_counts_common_elements() {
        let a = KSubset::new(6, vec![1, 2, 5]).unwrap();
        let b = KSubset::new(6, vec![2, 4, 5]).unwrap();
        assert_eq!(a.intersection_size(&b).unwrap(), 2);
        let c = KSubset::new(7, vec![1, 2, 3]).unwrap();
        assert!(a.intersection_size(&c).is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        // (q ∘ p)(x) = q(p(x)): with p = (1 2), q = (2 3), 1 maps to 3.
        let p = Permutation::transposition(3, 1, 2).unwrap();
        let q = Permutation::transposition(3, 2, 3).unwrap();
        let qp = q.compose(&p).unwrap();
        assert_eq!(qp.apply(1), 3);
        assert_eq!(qp.apply(2), 1);
        assert_eq!(qp.apply(3), 2);
        assert_eq!(qp.sign(), 1);
        assert_eq!(qp.compose(&qp.inverse()).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn transposition_sign_is_negative() {
        assert_eq!(Permutation::transposition(5, 2, 4).unwrap().sign(), -1);
        assert_eq!(Permutation::identity(5).sign(), 1);
        assert!(Permutation::transposition(5, 2, 2).is_err());
    }

    #[test]
    fn apply_subset_maps_elementwise() {
        let g = Permutation::from_images(vec![3, 1, 2, 4]).unwrap();
        let s = KSubset::new(4, vec![1, 2]).unwrap();
        assert_eq!(g.apply_subset(&s).unwrap().elements(), &[1, 3]);
    }

    proptest! {
        #[test]
        fn binomial_pascal_recurrence(a in 1u64..40, b in 0i64..42) {
            let lhs = binomial(a, b);
            let rhs = binomial(a - 1, b - 1) + binomial(a - 1, b);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn double_factorials_interleave_to_factorial(i in 0i64..15) {
            let product = double_factorial(2 * i).unwrap() * double_factorial(2 * i - 1).unwrap();
            prop_assert_eq!(product, factorial(2 * i as u64));
        }

        #[test]
        fn rank_unrank_roundtrip(n in 1u32..12, sel in proptest::collection::vec(any::<bool>(), 12)) {
            let elements: Vec<u32> = (1..=n).filter(|&x| sel[(x - 1) as usize]).collect();
            let k = elements.len() as u32;
            let s = KSubset::new(n, elements).unwrap();
            let r = s.rank();
            prop_assert_eq!(KSubset::unrank(n, k, r).unwrap(), s);
        }

        #[test]
        fn compose_multiplies_signs(
            n in 2u32..8,
            seed_a in any::<u64>(),
            seed_b in any::<u64>(),
        ) {
            let shuffle = |seed: u64| {
                // Fisher-Yates driven by a splitmix step, enough for a test shuffle.
                let mut state = seed;
                let mut next = move || {
                    state = state.wrapping_add(0x9e3779b97f4a7c15);
                    let mut z = state;
                    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
                    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
                    z ^ (z >> 31)
                };
                let mut images: Vec<u32> = (1..=n).collect();
                for i in (1..images.len()).rev() {
                    let j = (next() % (i as u64 + 1)) as usize;
                    images.swap(i, j);
                }
                Permutation::from_images(images).unwrap()
            };
            let a = shuffle(seed_a);
            let b = shuffle(seed_b);
            prop_assert_eq!(a.compose(&b).unwrap().sign(), a.sign() * b.sign());
            prop_assert_eq!(a.inverse().sign(), a.sign());
        }

        #[test]
        fn apply_subset_preserves_cardinality_and_intersections(
            n in 1u32..10,
            sel_a in proptest::collection::vec(any::<bool>(), 10),
            sel_b in proptest::collection::vec(any::<bool>(), 10),
            rot in 0u32..10,
        ) {
            let pick = |sel: &[bool]| {
                KSubset::new(n, (1..=n).filter(|&x| sel[(x - 1) as usize]).collect()).unwrap()
            };
            let a = pick(&sel_a);
            let b = pick(&sel_b);
            let g = Permutation::from_images(
                (0..n).map(|i| (i + rot) % n + 1).collect(),
            ).unwrap();
            let ga = g.apply_subset(&a).unwrap();
            let gb = g.apply_subset(&b).unwrap();
            prop_assert_eq!(ga.k(), a.k());
            // |gσ ∩ gτ| = |σ ∩ τ| for any g.
            prop_assert_eq!(
                ga.intersection_size(&gb).unwrap(),
                a.intersection_size(&b).unwrap()
            );
        }
    }
}
