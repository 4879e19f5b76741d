//! Integer eigenvectors from Young symmetrizers.
//!
//! Let T_k be the maximal standard tableau of shape (n-k,k): row one is
//! ⟦1,n-k⟧, row two is ⟦n-k+1,n⟧, and the columns pair i with n-k+i for
//! i ≤ k. Pushing the symmetrizer c_k = b_k·a_k through the subset
//! representation and evaluating at the reference subset Ω = ⟦n-m+1,n⟧
//! produces an integer eigenvector of B_{(n-m,m)} for the eigenvalue λ_k,
//! normalized so the Ω coordinate is 1.
//!
//! `young_eigenvector` evaluates the collapsed 2^k-term formula over the
//! column group; `young_symmetrizer_image` enumerates the full group sum and
//! exists to gate the collapse. `intersection_cardinality_check` verifies the
//! (V,W) bookkeeping that turns the same group sum into the last-coordinate
//! identity of `b_pi_last_coordinate`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{all_subsets, binomial, factorial, KSubset, Permutation};
use crate::error::{Error, Result};
use crate::intertwiner::{LinearForm, DEFAULT_SIZE_CAP};

/// Cap on n for the full group enumerations; (n-k)!·k!·2^k pairs are walked.
pub const BRUTE_FORCE_MAX_N: u32 = 8;

/// The maximal standard tableau of shape (n-k,k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoRowTableau {
    n: u32,
    k: u32,
}

impl TwoRowTableau {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// First row ⟦1, n-k⟧.
    pub fn row1(&self) -> Vec<u32> {
        (1..=self.n - self.k).collect()
    }

    /// Second row ⟦n-k+1, n⟧.
    pub fn row2(&self) -> Vec<u32> {
        (self.n - self.k + 1..=self.n).collect()
    }

    /// The k two-cell columns (i, n-k+i); remaining columns are singletons.
    pub fn columns(&self) -> Vec<(u32, u32)> {
        (1..=self.k).map(|i| (i, self.n - self.k + i)).collect()
    }
}

/// The maximal standard tableau of shape (n-k,k); requires 2k ≤ n.
pub fn maximal_tableau(n: u32, k: u32) -> Result<TwoRowTableau> {
    if n < 1 || 2 * k > n {
        return Err(Error::OutOfRange(format!(
            "maximal_tableau: need 1 <= n and 2k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(TwoRowTableau { n, k })
}

fn validate_nmk(n: u32, m: u32, k: u32) -> Result<()> {
    if n < 1 || 2 * m > n {
        return Err(Error::OutOfRange(format!(
            "need 1 <= n and 2m <= n, got n = {n}, m = {m}"
        )));
    }
    if k > m {
        return Err(Error::OutOfRange(format!("need k <= m, got k = {k}, m = {m}")));
    }
    Ok(())
}

/// An integer eigenvector of B_{(n-m,m)} for λ_k, indexed like the subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvectorInt {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    /// Coordinates in lexicographic subset order; the Ω coordinate is 1.
    pub coords: Vec<BigInt>,
}

/// The column-group involution q_S = Π_{i∈S} (i, n-k+i) as an image table.
fn column_involution(n: u32, k: u32, mask: u32) -> Vec<u32> {
    let mut images: Vec<u32> = (1..=n).collect();
    for i in 1..=k {
        if mask & (1 << (i - 1)) != 0 {
            images.swap((i - 1) as usize, (n - k + i - 1) as usize);
        }
    }
    images
}

/// The λ_k eigenvector with v_Ω = 1, by the collapsed column-group sum.
pub fn young_eigenvector(n: u32, m: u32, k: u32) -> Result<EigenvectorInt> {
    young_eigenvector_capped(n, m, k, DEFAULT_SIZE_CAP)
}

/// As `young_eigenvector` with an explicit dimension cap.
pub fn young_eigenvector_capped(n: u32, m: u32, k: u32, cap: usize) -> Result<EigenvectorInt> {
    validate_nmk(n, m, k)?;
    let dim = binomial(n as u64, m as i64);
    if dim > BigInt::from(cap) {
        return Err(Error::SizeCapExceeded {
            n,
            m,
            dim: dim.to_string(),
            cap,
        });
    }
    let tableau = maximal_tableau(n, k)?;
    let row2 = tableau.row2();
    let subsets = all_subsets(n, m)?;

    // v_σ is the Ω-normalized σ-coordinate of π(c_k) e_Ω. Expanding
    // c_k = b_k·a_k gives Σ_q Σ_p sgn(q) [q(p(Ω)) = σ] over the column and
    // row groups of T_k. For fixed q this counts p with p(Ω) = q(σ), since
    // q² = id. A row permutation preserves each row setwise and Ω splits as
    // (Ω ∩ row1) ∪ row2 with |Ω ∩ row1| = m-k, so such p exist exactly when
    // q(σ) ⊇ row2 and |q(σ) ∩ row1| = m-k, and then there are
    // (m-k)!·k!·(n-m)! of them: a factor for the row-1 points inside Ω, one
    // for row 2, one for the row-1 points outside Ω. Dividing by that
    // constant leaves the 2^k-term sum below. `young_eigenvector_bruteforce`
    // gates this collapse against the full enumeration.
    let mut coords = Vec::with_capacity(subsets.len());
    for sigma in &subsets {
        let mut v = BigInt::zero();
        for mask in 0u32..1 << k {
            let q = column_involution(n, k, mask);
            let mut tau: Vec<u32> = sigma
                .elements()
                .iter()
                .map(|&x| q[(x - 1) as usize])
                .collect();
            tau.sort_unstable();
            let has_row2 = row2.iter().all(|x| tau.binary_search(x).is_ok());
            let in_row1 = tau.iter().filter(|&&x| x <= n - k).count();
            if has_row2 && in_row1 == (m - k) as usize {
                if mask.count_ones() % 2 == 0 {
                    v += 1;
                } else {
                    v -= 1;
                }
            }
        }
        coords.push(v);
    }
    assert!(coords.last().unwrap().is_one(), "Ω coordinate must be 1");
    Ok(EigenvectorInt { n, m, k, coords })
}

fn permutations_of(points: &[u32]) -> Vec<Vec<u32>> {
    if points.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in points.iter().enumerate() {
        let mut rest = points.to_vec();
        rest.remove(i);
        for tail in permutations_of(&rest) {
            let mut perm = Vec::with_capacity(points.len());
            perm.push(x);
            perm.extend(tail);
            out.push(perm);
        }
    }
    out
}

/// All elements of the row group R(T_k) as image tables on ⟦1,n⟧.
fn row_group(tableau: &TwoRowTableau) -> Vec<Vec<u32>> {
    let row1 = tableau.row1();
    let row2 = tableau.row2();
    let mut out = Vec::new();
    for p1 in permutations_of(&row1) {
        for p2 in permutations_of(&row2) {
            let mut images: Vec<u32> = (1..=tableau.n()).collect();
            for (j, &point) in row1.iter().enumerate() {
                images[(point - 1) as usize] = p1[j];
            }
            for (j, &point) in row2.iter().enumerate() {
                images[(point - 1) as usize] = p2[j];
            }
            out.push(images);
        }
    }
    out
}

/// Raw coordinates of π(c_k) e_Ω by full enumeration of C(T_k) × R(T_k).
///
/// Unnormalized: every coordinate carries the factor (m-k)!·k!·(n-m)!.
/// Restricted to n ≤ `BRUTE_FORCE_MAX_N`.
pub fn young_symmetrizer_image(n: u32, m: u32, k: u32) -> Result<Vec<BigInt>> {
    validate_nmk(n, m, k)?;
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::OutOfRange(format!(
            "young_symmetrizer_image: n = {n} > {BRUTE_FORCE_MAX_N}"
        )));
    }
    let tableau = maximal_tableau(n, k)?;
    let omega = KSubset::omega(n, m)?;
    let d = binomial(n as u64, m as i64);
    let mut coords = vec![BigInt::zero(); usize::try_from(&d).unwrap()];
    for mask in 0u32..1 << k {
        let q = column_involution(n, k, mask);
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        for p in row_group(&tableau) {
            let mut image: Vec<u32> = omega
                .elements()
                .iter()
                .map(|&x| q[(p[(x - 1) as usize] - 1) as usize])
                .collect();
            image.sort_unstable();
            let tau = KSubset::new(n, image)?;
            coords[tau.rank()] += sign;
        }
    }
    Ok(coords)
}

/// The λ_k eigenvector by brute force: the full symmetrizer image divided
/// exactly by (m-k)!·k!·(n-m)!. Must agree with `young_eigenvector`.
pub fn young_eigenvector_bruteforce(n: u32, m: u32, k: u32) -> Result<EigenvectorInt> {
    use num_integer::Integer;
    let raw = young_symmetrizer_image(n, m, k)?;
    let divisor = factorial((m - k) as u64) * factorial(k as u64) * factorial((n - m) as u64);
    let mut coords = Vec::with_capacity(raw.len());
    for (i, c) in raw.iter().enumerate() {
        let (quot, rem) = c.div_rem(&divisor);
        if !rem.is_zero() {
            return Err(Error::InexactDivision(format!(
                "symmetrizer image coordinate {i} = {c} not divisible by {divisor}"
            )));
        }
        coords.push(quot);
    }
    assert!(coords.last().unwrap().is_one(), "Ω coordinate must be 1");
    Ok(EigenvectorInt { n, m, k, coords })
}

/// Number of row permutations p with prescribed (v,w) data:
/// C(n-m-v,w)·w!·C(m-k+v,m-k-w)·(m-k-w)!·k!·(n-m)!. Requires v ≤ k, w ≤ m-k.
pub fn row_count(n: u32, m: u32, k: u32, v: u32, w: u32) -> Result<BigInt> {
    validate_nmk(n, m, k)?;
    if v > k || w > m - k {
        return Err(Error::OutOfRange(format!(
            "row_count: need v <= k and w <= m-k, got v = {v}, w = {w}"
        )));
    }
    let (n, m, k, v, w) = (n as u64, m as u64, k as u64, v as u64, w as u64);
    Ok(binomial(n - m - v, w as i64)
        * factorial(w)
        * binomial(m - k + v, (m - k - w) as i64)
        * factorial(m - k - w)
        * factorial(k)
        * factorial(n - m))
}

/// The Ω coordinate of π(b_π)·π(c_k) e_Ω as a linear form:
/// Σ_{v,w} (-1)^v C(k,v) C(m-k,w) row_count(v,w) b_{m-v-w}.
///
/// Equals (m-k)!·k!·(n-m)!·λ_k; the scaled identity is enforced in tests.
pub fn b_pi_last_coordinate(n: u32, m: u32, k: u32) -> Result<LinearForm> {
    validate_nmk(n, m, k)?;
    let mut form = LinearForm::zero(m);
    for v in 0..=k {
        let sign = if v % 2 == 0 { 1 } else { -1 };
        for w in 0..=m - k {
            let count = binomial(k as u64, v as i64)
                * binomial((m - k) as u64, w as i64)
                * row_count(n, m, k, v, w)?;
            form.add_coeff((m - v - w) as usize, sign * count);
        }
    }
    Ok(form)
}

/// One (v,w) bucket of the pair enumeration against its predicted count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BucketCount {
    pub v: u32,
    pub w: u32,
    pub enumerated: BigInt,
    pub predicted: BigInt,
    pub pass: bool,
}

/// Outcome of enumerating all (q,p) pairs of the symmetrizer for T_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalityReport {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub pairs_checked: u64,
    /// |Ω ∩ q(p(Ω))| = m - |V| - |W| held for every pair.
    pub cardinality_ok: bool,
    /// sgn(q) = (-1)^|V| held for every column element.
    pub sign_ok: bool,
    /// W ⊆ Ω_1 = Ω \ row2 held for every pair.
    pub w_contained_ok: bool,
    /// S ↦ q_S is injective and V(q_S) = S, so V determines q.
    pub unique_q_ok: bool,
    pub buckets: Vec<BucketCount>,
}

impl CardinalityReport {
    pub fn all_pass(&self) -> bool {
        let total: BigInt = self.buckets.iter().map(|b| b.predicted.clone()).sum();
        self.cardinality_ok
            && self.sign_ok
            && self.w_contained_ok
            && self.unique_q_ok
            && self.buckets.iter().all(|b| b.pass)
            && total == BigInt::from(self.pairs_checked)
    }
}

/// Walks every pair (q,p) ∈ C(T_k) × R(T_k) and verifies the bookkeeping
/// behind `row_count` and `b_pi_last_coordinate`: with V = {i ≤ k : q(i) ≠ i}
/// and W = {i ∈ Ω : p(i) ∉ Ω ∪ V}, the intersection |Ω ∩ q(p(Ω))| equals
/// m - |V| - |W|, the sign of q is (-1)^|V|, and the (v,w) bucket sizes match
/// C(k,v)·C(m-k,w)·row_count(v,w). Restricted to n ≤ `BRUTE_FORCE_MAX_N`.
pub fn intersection_cardinality_check(n: u32, m: u32, k: u32) -> Result<CardinalityReport> {
    validate_nmk(n, m, k)?;
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::OutOfRange(format!(
            "intersection_cardinality_check: n = {n} > {BRUTE_FORCE_MAX_N}"
        )));
    }
    let tableau = maximal_tableau(n, k)?;
    let omega = KSubset::omega(n, m)?;
    let row_perms = row_group(&tableau);

    let mut pairs_checked = 0u64;
    let mut cardinality_ok = true;
    let mut sign_ok = true;
    let mut w_contained_ok = true;
    let mut unique_q_ok = true;
    let mut enumerated =
        vec![vec![BigInt::zero(); (m - k + 1) as usize]; (k + 1) as usize];
    let mut seen_v: Vec<u32> = Vec::new();

    for mask in 0u32..1 << k {
        let q_images = column_involution(n, k, mask);
        let q = Permutation::from_images(q_images.clone())?;
        // V recovered from the action, not from the mask that built q.
        let v_set: Vec<u32> = (1..=k).filter(|&i| q.apply(i) != i).collect();
        let v_mask: u32 = v_set.iter().map(|&i| 1 << (i - 1)).sum();
        if v_mask != mask || seen_v.contains(&v_mask) {
            unique_q_ok = false;
        }
        seen_v.push(v_mask);
        let v = v_set.len() as u32;
        if q.sign() != if v % 2 == 0 { 1 } else { -1 } {
            sign_ok = false;
        }

        for p_images in &row_perms {
            // W = points of Ω thrown outside Ω ∪ V by the row permutation.
            let w_set: Vec<u32> = omega
                .elements()
                .iter()
                .copied()
                .filter(|&i| {
                    let pi = p_images[(i - 1) as usize];
                    !(omega.contains(pi) || v_set.contains(&pi))
                })
                .collect();
            // Points of row2 stay in row2 ⊆ Ω, so W lives inside Ω_1.
            if w_set.iter().any(|&i| i > n - k) {
                w_contained_ok = false;
            }
            let w = w_set.len() as u32;

            let mut image: Vec<u32> = omega
                .elements()
                .iter()
                .map(|&x| q_images[(p_images[(x - 1) as usize] - 1) as usize])
                .collect();
            image.sort_unstable();
            let qp_omega = KSubset::new(n, image)?;
            if omega.intersection_size(&qp_omega)? != (m - v - w) as usize {
                cardinality_ok = false;
            }

            enumerated[v as usize][w as usize] += 1;
            pairs_checked += 1;
        }
    }

    let mut buckets = Vec::new();
    for v in 0..=k {
        for w in 0..=m - k {
            let predicted = binomial(k as u64, v as i64)
                * binomial((m - k) as u64, w as i64)
                * row_count(n, m, k, v, w)?;
            let found = enumerated[v as usize][w as usize].clone();
            buckets.push(BucketCount {
                v,
                w,
                pass: found == predicted,
                enumerated: found,
                predicted,
            });
        }
    }

    Ok(CardinalityReport {
        n,
        m,
        k,
        pairs_checked,
        cardinality_ok,
        sign_ok,
        w_contained_ok,
        unique_q_ok,
        buckets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::factorial;
    use crate::intertwiner::build_symbolic;
    use crate::spectrum::eigenvalue_form;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn tableau_rows_and_columns() {
        let t = maximal_tableau(6, 2).unwrap();
        assert_eq!(t.row1(), vec![1, 2, 3, 4]);
        assert_eq!(t.row2(), vec![5, 6]);
        assert_eq!(t.columns(), vec![(1, 5), (2, 6)]);
        assert!(maximal_tableau(5, 3).is_err());
    }

    #[test]
    fn frozen_small_eigenvectors() {
        assert_eq!(young_eigenvector(2, 1, 1).unwrap().coords, ints(&[-1, 1]));
        assert_eq!(
            young_eigenvector(4, 2, 1).unwrap().coords,
            ints(&[-1, -1, 0, 0, 1, 1])
        );
        // Unnormalized brute force carries (m-k)!·k!·(n-m)! = 2.
        assert_eq!(
            young_symmetrizer_image(4, 2, 1).unwrap(),
            ints(&[-2, -2, 0, 0, 2, 2])
        );
        // k = 0 gives the all-ones vector.
        assert!(young_eigenvector(5, 2, 0)
            .unwrap()
            .coords
            .iter()
            .all(|c| c.is_one()));
    }

    #[test]
    fn reduced_formula_matches_brute_force() {
        for n in 2..=7u32 {
            for m in 0..=n / 2 {
                for k in 0..=m {
                    let fast = young_eigenvector(n, m, k).unwrap();
                    let slow = young_eigenvector_bruteforce(n, m, k).unwrap();
                    assert_eq!(fast, slow, "(n,m,k) = ({n},{m},{k})");
                }
            }
        }
    }

    #[test]
    fn eigenvectors_satisfy_the_symbolic_eigen_equation() {
        for (n, m) in [(4u32, 2u32), (5, 2), (6, 3)] {
            let matrix = build_symbolic(n, m).unwrap();
            for k in 0..=m {
                let vector = young_eigenvector(n, m, k).unwrap();
                let image = matrix.apply(&vector.coords).unwrap();
                let lambda = eigenvalue_form(n, m, k).unwrap();
                for (sigma, coordinate) in vector.coords.iter().enumerate() {
                    assert_eq!(
                        image[sigma],
                        lambda.scaled(coordinate),
                        "(n,m,k,σ) = ({n},{m},{k},{sigma})"
                    );
                }
            }
        }
    }

    #[test]
    fn eigenvectors_for_distinct_k_are_orthogonal() {
        let vectors: Vec<_> = (0..=3u32)
            .map(|k| young_eigenvector(6, 3, k).unwrap().coords)
            .collect();
        for j in 0..vectors.len() {
            for k in j + 1..vectors.len() {
                let dot: BigInt = vectors[j]
                    .iter()
                    .zip(&vectors[k])
                    .map(|(a, b)| a * b)
                    .sum();
                assert!(dot.is_zero(), "⟨v_{j}, v_{k}⟩ ≠ 0");
            }
        }
    }

    #[test]
    fn last_coordinate_form_is_scaled_lambda() {
        for (n, m) in [(4u32, 2u32), (6, 3), (7, 3), (8, 4), (11, 5)] {
            for k in 0..=m {
                let scaled = b_pi_last_coordinate(n, m, k).unwrap();
                let factor = factorial((m - k) as u64)
                    * factorial(k as u64)
                    * factorial((n - m) as u64);
                let lambda = eigenvalue_form(n, m, k).unwrap();
                assert_eq!(scaled, lambda.scaled(&factor), "(n,m,k) = ({n},{m},{k})");
            }
        }
    }

    #[test]
    fn row_counts_fill_the_row_group() {
        // Σ_w C(m-k,w)·row_count(v,w) = (n-k)!·k! for every v: each p has
        // exactly one W once V is fixed.
        for (n, m, k) in [(6u32, 3u32, 1u32), (6, 3, 2), (8, 4, 2), (7, 2, 1)] {
            for v in 0..=k {
                let mut total = BigInt::zero();
                for w in 0..=m - k {
                    total += binomial((m - k) as u64, w as i64)
                        * row_count(n, m, k, v, w).unwrap();
                }
                assert_eq!(
                    total,
                    factorial((n - k) as u64) * factorial(k as u64),
                    "(n,m,k,v) = ({n},{m},{k},{v})"
                );
            }
        }
    }

    #[test]
    fn pair_enumeration_matches_predicted_buckets() {
        for (n, m, k) in [(6u32, 3u32, 1u32), (6, 3, 3), (7, 3, 2), (8, 4, 2)] {
            let report = intersection_cardinality_check(n, m, k).unwrap();
            assert!(report.all_pass(), "(n,m,k) = ({n},{m},{k}): {report:?}");
            let expected_pairs = BigInt::from(1u64 << k)
                * factorial((n - k) as u64)
                * factorial(k as u64);
            assert_eq!(BigInt::from(report.pairs_checked), expected_pairs);
        }
        assert!(intersection_cardinality_check(10, 5, 2).is_err());
    }

    #[test]
    fn brute_force_respects_the_n_cap() {
        assert!(young_symmetrizer_image(9, 4, 1).is_err());
        assert!(young_eigenvector_bruteforce(9, 4, 1).is_err());
    }
}
