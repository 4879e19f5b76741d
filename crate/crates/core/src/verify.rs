//! Brute-force exact verification oracle.
//!
//! Everything the closed forms claim is re-derived here from the matrix
//! itself with exact linear algebra: eigen-equations by matrix-vector
//! product, multiplicities as rank defects of B - λI, and power traces
//! against Σ_k f_k λ_k^r. Random parameter vectors come from a seeded
//! ChaCha stream so failures replay exactly.
//!
//! Rank is computed by fraction-free integer elimination. Each row has its
//! denominators cleared and its integer content (the gcd of its entries)
//! stripped after every update; this keeps pivot growth far below plain
//! Bareiss on these matrices while staying exact. Pivoting is deterministic:
//! first nonzero entry in the current column, scanning downward. The
//! elimination rows live on GMP integers since entries reach thousands of
//! bits mid-run; pivots and ranks do not depend on the backend.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, RngExt};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::integer::Order;
use rug::Integer as Mpz;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::intertwiner::{build_specialized_capped, LinearForm};
use crate::spectrum::{eigenvalue_at, multiplicity};
use crate::symmetrizer::young_eigenvector_capped;

/// Dense-matrix work (rank, traces) refuses dimensions above this.
pub const DEFAULT_ORACLE_CAP: usize = 252;

/// Redraw attempts before giving up on finding generic parameters.
pub const GENERIC_RETRY_LIMIT: u32 = 16;

/// The reproducible generator behind every random draw in this crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A vector of positive rationals with numerator and denominator uniform
/// in ⟦1,1000⟧.
pub fn random_rational_vector(rng: &mut impl Rng, len: usize) -> Vec<BigRational> {
    (0..len)
        .map(|_| {
            BigRational::new(
                BigInt::from(rng.random_range(1..=1000u32)),
                BigInt::from(rng.random_range(1..=1000u32)),
            )
        })
        .collect()
}

/// Draws parameter vectors until the m+1 eigenvalue forms take pairwise
/// distinct values, giving up after `GENERIC_RETRY_LIMIT` attempts.
pub fn draw_generic_parameters(n: u32, m: u32, rng: &mut impl Rng) -> Result<Vec<BigRational>> {
    let mut last = Err(Error::OutOfRange("no draw attempted".into()));
    for _ in 0..GENERIC_RETRY_LIMIT {
        let b = random_rational_vector(rng, m as usize + 1);
        match check_generic(n, m, &b) {
            Ok(()) => return Ok(b),
            Err(e) => last = Err(e),
        }
    }
    last
}

/// Errors with `NonGeneric` unless all m+1 eigenvalues at b are distinct.
fn check_generic(n: u32, m: u32, b: &[BigRational]) -> Result<()> {
    let values: Vec<BigRational> = (0..=m)
        .map(|k| eigenvalue_at(n, m, k, b))
        .collect::<Result<_>>()?;
    for k1 in 0..values.len() {
        for k2 in k1 + 1..values.len() {
            if values[k1] == values[k2] {
                return Err(Error::NonGeneric {
                    k1: k1 as u32,
                    k2: k2 as u32,
                });
            }
        }
    }
    Ok(())
}

/// Dense rational matrix-vector product.
pub fn matvec(mat: &[Vec<BigRational>], v: &[BigRational]) -> Result<Vec<BigRational>> {
    let mut out = Vec::with_capacity(mat.len());
    for row in mat {
        if row.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: v.len(),
                actual: row.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (a, x) in row.iter().zip(v) {
            acc += a * x;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Dense matrix-vector product over the form ring with an integer vector.
pub fn matvec_form(mat: &[Vec<LinearForm>], v: &[BigInt]) -> Result<Vec<LinearForm>> {
    let mut out = Vec::with_capacity(mat.len());
    for row in mat {
        if row.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: v.len(),
                actual: row.len(),
            });
        }
        let mut acc = match row.first() {
            Some(form) => LinearForm::zero(form.m()),
            None => LinearForm::from_coeffs(vec![BigInt::zero()])?,
        };
        for (form, x) in row.iter().zip(v) {
            acc = &acc + &form.scaled(x);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Outcome of one exact elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    /// Row count of the input.
    pub dim: usize,
    pub rank: usize,
    /// (original row, column) of each pivot, in elimination order.
    pub pivots: Vec<(usize, usize)>,
}

fn to_mpz(x: &BigInt) -> Mpz {
    let (sign, digits) = x.to_u64_digits();
    let v = Mpz::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

fn strip_content(row: &mut [Mpz], from: usize) {
    let mut g = Mpz::new();
    for x in &row[from..] {
        if *x != 0 {
            g.gcd_mut(x);
            if g == 1 {
                return;
            }
        }
    }
    if g == 0 || g == 1 {
        return;
    }
    for x in &mut row[from..] {
        x.div_exact_mut(&g);
    }
}

/// Exact rank by fraction-free integer elimination with per-row content
/// stripping; see the module notes. Rows may be rectangular-shaped as long
/// as they share one length.
pub fn rank_exact(mat: &[Vec<BigRational>]) -> Result<RankResult> {
    rank_exact_capped(mat, DEFAULT_ORACLE_CAP)
}

/// As `rank_exact` with an explicit cap on the row count.
pub fn rank_exact_capped(mat: &[Vec<BigRational>], cap: usize) -> Result<RankResult> {
    let rows = mat.len();
    if rows > cap {
        return Err(Error::OutOfRange(format!(
            "rank_exact: {rows} rows exceed the oracle cap {cap}"
        )));
    }
    if rows == 0 {
        return Ok(RankResult {
            dim: 0,
            rank: 0,
            pivots: vec![],
        });
    }
    let cols = mat[0].len();
    let mut work: Vec<Vec<Mpz>> = Vec::with_capacity(rows);
    for row in mat {
        if row.len() != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                actual: row.len(),
            });
        }
        let common = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<Mpz> = row
            .iter()
            .map(|x| to_mpz(&(x.numer() * (&common / x.denom()))))
            .collect();
        strip_content(&mut ints, 0);
        work.push(ints);
    }

    let mut origin: Vec<usize> = (0..rows).collect();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pivot_row) = (r..rows).find(|&i| work[i][c] != 0) else {
            continue;
        };
        work.swap(r, pivot_row);
        origin.swap(r, pivot_row);
        pivots.push((origin[r], c));
        let (top, bottom) = work.split_at_mut(r + 1);
        let pivot_line = &top[r];
        let pivot = &pivot_line[c];
        for line in bottom.iter_mut() {
            if line[c] == 0 {
                continue;
            }
            let g = pivot.clone().gcd(&line[c]);
            let scale_line = pivot.clone().div_exact(&g);
            let scale_pivot = line[c].clone().div_exact(&g);
            let plain = scale_line == 1;
            for j in c + 1..cols {
                if !plain {
                    line[j] *= &scale_line;
                }
                line[j] -= &scale_pivot * &pivot_line[j];
            }
            // scale_line·line[c] = scale_pivot·pivot by the choice of scales.
            line[c] = Mpz::new();
            strip_content(line, c + 1);
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    Ok(RankResult {
        dim: rows,
        rank: r,
        pivots,
    })
}

/// Multiplicity of λ_k at generic b as the rank defect of B(b) - λ_k(b)·I.
///
/// Errors with `NonGeneric` when the eigenvalues at b are not pairwise
/// distinct, since the defect then conflates eigenspaces.
pub fn multiplicity_by_rank(n: u32, m: u32, k: u32, b: &[BigRational]) -> Result<BigInt> {
    multiplicity_by_rank_capped(n, m, k, b, DEFAULT_ORACLE_CAP)
}

/// As `multiplicity_by_rank` with an explicit dimension cap.
pub fn multiplicity_by_rank_capped(
    n: u32,
    m: u32,
    k: u32,
    b: &[BigRational],
    cap: usize,
) -> Result<BigInt> {
    if k > m {
        return Err(Error::OutOfRange(format!("need k <= m, got k = {k}, m = {m}")));
    }
    check_generic(n, m, b)?;
    let lambda = eigenvalue_at(n, m, k, b)?;
    let mut mat = build_specialized_capped(n, m, b, cap)?.to_dense();
    for (i, row) in mat.iter_mut().enumerate() {
        row[i] -= &lambda;
    }
    let result = rank_exact_capped(&mat, cap)?;
    Ok(BigInt::from(result.dim - result.rank))
}

/// One named comparison inside a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl CheckRecord {
    fn compare<T: std::fmt::Display + PartialEq>(name: String, expected: T, actual: T) -> Self {
        CheckRecord {
            pass: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
            name,
        }
    }
}

/// Everything one oracle run compared, with the parameters it used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: u32,
    pub m: u32,
    pub b: Vec<BigRational>,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Power traces of B(b) for r = 1..r_max, each compared with Σ_k f_k λ_k^r.
/// Supports r_max ≤ 3.
pub fn trace_power_check(n: u32, m: u32, b: &[BigRational], r_max: u32) -> Result<VerificationReport> {
    if r_max < 1 || r_max > 3 {
        return Err(Error::OutOfRange(format!(
            "trace_power_check: need 1 <= r_max <= 3, got {r_max}"
        )));
    }
    let matrix = build_specialized_capped(n, m, b, DEFAULT_ORACLE_CAP)?;
    let d = matrix.dim();
    // Entries repeat across only m+1 classes, so B^r traces reduce to exact
    // class-index counting; the per-index work stays integer arithmetic.
    let classes: Vec<Vec<usize>> = (0..d)
        .map(|r| (0..d).map(|c| matrix.class_of(r, c)).collect())
        .collect();
    let width = m as usize + 1;

    let mut checks = Vec::new();
    for r in 1..=r_max {
        let actual = match r {
            1 => {
                let mut counts = vec![0u64; width];
                for i in 0..d {
                    counts[classes[i][i]] += 1;
                }
                weighted_sum(&counts, |idx| b[idx].clone())
            }
            2 => {
                let mut counts = vec![0u64; width * width];
                for i in 0..d {
                    for j in 0..d {
                        counts[classes[i][j] * width + classes[j][i]] += 1;
                    }
                }
                weighted_sum(&counts, |idx| &b[idx / width] * &b[idx % width])
            }
            _ => {
                let mut counts = vec![0u64; width * width * width];
                for i in 0..d {
                    for j in 0..d {
                        let base = (classes[i][j] * width) * width;
                        let row = &classes[j];
                        for l in 0..d {
                            counts[base + row[l] * width + classes[l][i]] += 1;
                        }
                    }
                }
                weighted_sum(&counts, |idx| {
                    &(&b[idx / (width * width)] * &b[(idx / width) % width]) * &b[idx % width]
                })
            }
        };
        let mut expected = BigRational::zero();
        for k in 0..=m {
            let lambda = eigenvalue_at(n, m, k, b)?;
            let mut power = BigRational::one();
            for _ in 0..r {
                power *= &lambda;
            }
            expected += BigRational::from(multiplicity(n, k)?) * power;
        }
        checks.push(CheckRecord::compare(
            format!("trace_power_r={r}"),
            expected,
            actual,
        ));
    }
    Ok(VerificationReport {
        n,
        m,
        b: b.to_vec(),
        checks,
    })
}

fn weighted_sum(counts: &[u64], product: impl Fn(usize) -> BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for (idx, &count) in counts.iter().enumerate() {
        if count != 0 {
            acc += product(idx) * BigInt::from(count);
        }
    }
    acc
}

/// The full oracle pass at one parameter vector:
/// every eigen-equation B(b)·v_k = λ_k(b)·v_k with the symmetrizer vectors,
/// every multiplicity as a rank defect against f^{(n-k,k)},
/// power traces for r = 1,2,
/// Σ_k f_k = C(n,m),
/// and pairwise orthogonality of the integer eigenvectors.
pub fn full_spectrum_check(n: u32, m: u32, b: &[BigRational]) -> Result<VerificationReport> {
    check_generic(n, m, b)?;
    let dense = build_specialized_capped(n, m, b, DEFAULT_ORACLE_CAP)?.to_dense();
    let vectors: Vec<_> = (0..=m)
        .map(|k| young_eigenvector_capped(n, m, k, DEFAULT_ORACLE_CAP))
        .collect::<Result<Vec<_>>>()?;

    let mut checks = Vec::new();
    for k in 0..=m {
        let coords: Vec<BigRational> = vectors[k as usize]
            .coords
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let image = matvec(&dense, &coords)?;
        let lambda = eigenvalue_at(n, m, k, b)?;
        let scaled: Vec<BigRational> = coords.iter().map(|c| c * &lambda).collect();
        checks.push(CheckRecord {
            name: format!("eigen_equation_k={k}"),
            expected: "B·v_k = λ_k·v_k".into(),
            actual: if image == scaled { "holds" } else { "violated" }.into(),
            pass: image == scaled,
        });
    }

    let mut mult_total = BigInt::zero();
    for k in 0..=m {
        let by_rank = multiplicity_by_rank(n, m, k, b)?;
        let closed = multiplicity(n, k)?;
        mult_total += &closed;
        checks.push(CheckRecord::compare(
            format!("multiplicity_rank_k={k}"),
            closed,
            by_rank,
        ));
    }

    checks.extend(trace_power_check(n, m, b, 2)?.checks);

    checks.push(CheckRecord::compare(
        "multiplicity_sum".to_string(),
        binomial(n as u64, m as i64),
        mult_total,
    ));

    for j in 0..=m {
        for k in j + 1..=m {
            let dot: BigInt = vectors[j as usize]
                .coords
                .iter()
                .zip(&vectors[k as usize].coords)
                .map(|(a, b)| a * b)
                .sum();
            checks.push(CheckRecord::compare(
                format!("orthogonality_j={j}_k={k}"),
                BigInt::zero(),
                dot,
            ));
        }
    }

    Ok(VerificationReport {
        n,
        m,
        b: b.to_vec(),
        checks,
    })
}

/// `full_spectrum_check` at parameters drawn from the seed, redrawing past
/// non-generic vectors up to `GENERIC_RETRY_LIMIT` times.
pub fn full_spectrum_check_seeded(n: u32, m: u32, seed: u64) -> Result<VerificationReport> {
    let mut rng = seeded_rng(seed);
    let b = draw_generic_parameters(n, m, &mut rng)?;
    full_spectrum_check(n, m, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn rat_mat(rows: &[&[(i64, i64)]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|row| row.iter().map(|&(p, q)| rat(p, q)).collect())
            .collect()
    }

    #[test]
    fn rank_of_simple_matrices() {
        let id = rat_mat(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        let result = rank_exact(&id).unwrap();
        assert_eq!((result.dim, result.rank), (2, 2));
        assert_eq!(result.pivots, vec![(0, 0), (1, 1)]);

        let singular = rat_mat(&[&[(1, 2), (1, 1)], &[(2, 1), (4, 1)]]);
        assert_eq!(rank_exact(&singular).unwrap().rank, 1);

        let zero = rat_mat(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]]);
        assert_eq!(rank_exact(&zero).unwrap().rank, 0);

        // Pivot provenance survives the row swap.
        let swapped = rat_mat(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]);
        assert_eq!(rank_exact(&swapped).unwrap().pivots, vec![(1, 0), (0, 1)]);

        assert_eq!(rank_exact(&[]).unwrap().rank, 0);
        let ragged = vec![vec![rat(1, 1)], vec![rat(1, 1), rat(2, 1)]];
        assert!(rank_exact(&ragged).is_err());
    }

    #[test]
    fn frozen_multiplicity_by_rank() {
        // B_{(4,2)} at b = (1, 1/2, 1/3): λ_1 = -5/3, rank defect 5 = f^{(5,1)}.
        let b = [rat(1, 1), rat(1, 2), rat(1, 3)];
        assert_eq!(eigenvalue_at(6, 2, 1, &b).unwrap(), rat(-5, 3));
        let mut shifted = crate::intertwiner::build_specialized(6, 2, &b)
            .unwrap()
            .to_dense();
        let lambda = rat(-5, 3);
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] -= &lambda;
        }
        assert_eq!(rank_exact(&shifted).unwrap().rank, 10);
        assert_eq!(multiplicity_by_rank(6, 2, 1, &b).unwrap(), BigInt::from(5));
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        // At b = (0,0,1) every eigenvalue equals 1.
        let b = [rat(0, 1), rat(0, 1), rat(1, 1)];
        match multiplicity_by_rank(6, 2, 0, &b) {
            Err(Error::NonGeneric { k1: 0, k2: 1 }) => {}
            other => panic!("expected NonGeneric, got {other:?}"),
        }
    }

    #[test]
    fn frozen_traces() {
        let report = trace_power_check(6, 3, &[rat(1, 1), rat(2, 1), rat(3, 1), rat(4, 1)], 3).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.checks[0].actual, "80");
        assert_eq!(report.checks[1].actual, "2680");
        assert_eq!(report.checks[2].actual, "126080");

        let tiny = trace_power_check(2, 1, &[rat(1, 1), rat(-2, 1)], 2).unwrap();
        assert!(tiny.all_pass());
        assert_eq!(tiny.checks[1].actual, "10");

        let ones = vec![rat(1, 1); 4];
        assert!(trace_power_check(6, 3, &ones, 4).is_err());
    }

    #[test]
    fn full_check_passes_on_fixed_and_seeded_parameters() {
        let b = [rat(3, 7), rat(1, 2), rat(9, 5)];
        let report = full_spectrum_check(5, 2, &b).unwrap();
        assert!(report.all_pass());
        // 3 eigen-equations + 3 rank multiplicities + 2 traces + 1 sum + 3 dots.
        assert_eq!(report.checks.len(), 12);

        let seeded = full_spectrum_check_seeded(6, 3, 42).unwrap();
        assert!(seeded.all_pass());
        assert_eq!(seeded.b.len(), 4);
    }

    #[test]
    fn seeded_draws_replay() {
        let mut rng_a = seeded_rng(7);
        let mut rng_b = seeded_rng(7);
        assert_eq!(
            random_rational_vector(&mut rng_a, 5),
            random_rational_vector(&mut rng_b, 5)
        );
        let mut rng_c = seeded_rng(8);
        assert_ne!(
            random_rational_vector(&mut seeded_rng(7), 5),
            random_rational_vector(&mut rng_c, 5)
        );
    }

    /// Plain rational Gaussian elimination, kept deliberately naive as an
    /// independent reference for the fraction-free rank.
    fn rank_reference(mat: &[Vec<BigRational>]) -> usize {
        let mut work: Vec<Vec<BigRational>> = mat.to_vec();
        let rows = work.len();
        if rows == 0 {
            return 0;
        }
        let cols = work[0].len();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&i| !work[i][c].is_zero()) else {
                continue;
            };
            work.swap(rank, p);
            let pivot = work[rank][c].clone();
            for i in rank + 1..rows {
                if work[i][c].is_zero() {
                    continue;
                }
                let factor = &work[i][c] / &pivot;
                for j in c..cols {
                    let delta = &factor * &work[rank][j];
                    work[i][j] -= delta;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn fraction_free_rank_matches_rational_elimination(
            entries in proptest::collection::vec(-6i64..6, 25),
            dens in proptest::collection::vec(1i64..5, 25),
        ) {
            let mat: Vec<Vec<BigRational>> = (0..5)
                .map(|r| (0..5).map(|c| rat(entries[5 * r + c], dens[5 * r + c])).collect())
                .collect();
            let fast = rank_exact(&mat).unwrap();
            prop_assert_eq!(fast.rank, rank_reference(&mat));
            // Rank is invariant under transposition.
            let transpose: Vec<Vec<BigRational>> = (0..5)
                .map(|c| (0..5).map(|r| mat[r][c].clone()).collect())
                .collect();
            prop_assert_eq!(rank_exact(&transpose).unwrap().rank, fast.rank);
        }

        #[test]
        fn matvec_is_linear(
            entries in proptest::collection::vec(-9i64..9, 9),
            xs in proptest::collection::vec(-9i64..9, 3),
            ys in proptest::collection::vec(-9i64..9, 3),
        ) {
            let mat: Vec<Vec<BigRational>> = (0..3)
                .map(|r| (0..3).map(|c| rat(entries[3 * r + c], 3)).collect())
                .collect();
            let x: Vec<BigRational> = xs.iter().map(|&v| rat(v, 2)).collect();
            let y: Vec<BigRational> = ys.iter().map(|&v| rat(v, 5)).collect();
            let sum: Vec<BigRational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            let lhs = matvec(&mat, &sum).unwrap();
            let rx = matvec(&mat, &x).unwrap();
            let ry = matvec(&mat, &y).unwrap();
            for i in 0..3 {
                prop_assert_eq!(&lhs[i], &(&rx[i] + &ry[i]));
            }
        }
    }
}
