//! Closed-form spectrum of the universal intertwining matrix.
//!
//! B_{(n-m,m)} has m+1 eigenvalues, one per two-row shape (n-k,k) with
//! 0 ≤ k ≤ m, each an integer linear form in the class parameters:
//!
//!   λ_k = Σ_{j=0}^{k} Σ_{p=0}^{m-k} (-1)^{k-j} C(k,j) C(m-j,p) C(n-m-k+j, m-k-p) b_{j+p}
//!
//! with multiplicity f^{(n-k,k)}. Stacking the coefficient vectors over k
//! gives the eigenmatrix P of the association scheme on m-subsets, whose
//! entries are values of Eberlein polynomials: the b_{m-t} coefficient of
//! λ_k equals E_t(k). Both routes are computed here and cross-checked.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::combinatorics::{binomial, specht_dimension};
use crate::error::{Error, Result};
use crate::intertwiner::LinearForm;

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

/// The eigenvalue λ_k of B_{(n-m,m)} as a linear form in b_0, …, b_m.
pub fn eigenvalue_form(n: u32, m: u32, k: u32) -> Result<LinearForm> {
    validate_nmk(n, m, k)?;
    let (n, m, k) = (n as u64, m as u64, k as u64);
    let mut form = LinearForm::zero(m as u32);
    for j in 0..=k {
        let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
        for p in 0..=m - k {
            let term = binomial(k, j as i64)
                * binomial(m - j, p as i64)
                * binomial(n - m - k + j, (m - k - p) as i64);
            form.add_coeff((j + p) as usize, sign * term);
        }
    }
    Ok(form)
}

/// λ_k evaluated at a rational parameter vector of length m+1.
pub fn eigenvalue_at(n: u32, m: u32, k: u32, b: &[BigRational]) -> Result<BigRational> {
    eigenvalue_form(n, m, k)?.evaluate(b)
}

/// Multiplicity of λ_k: the Specht dimension f^{(n-k,k)}.
pub fn multiplicity(n: u32, k: u32) -> Result<BigInt> {
    specht_dimension(n as u64, k as u64)
}

/// The (m+1)×(m+1) eigenmatrix P: row k holds the coefficients of λ_k.
pub fn eigenmatrix_p(n: u32, m: u32) -> Result<Vec<Vec<BigInt>>> {
    (0..=m)
        .map(|k| Ok(eigenvalue_form(n, m, k)?.coeffs().to_vec()))
        .collect()
}

/// The Eberlein polynomial value E_k(u) for the scheme on m-subsets of ⟦1,n⟧:
///
///   E_k(u) = Σ_{j=0}^{k} (-1)^{k-j} C(m-j, k-j) C(m-u, j) C(n-m+j-u, j)
///
/// Requires 0 ≤ k ≤ m and 0 ≤ u ≤ m.
pub fn eberlein(n: u32, m: u32, k: u32, u: u32) -> Result<BigInt> {
    validate_nmk(n, m, k)?;
    if u > m {
        return Err(Error::OutOfRange(format!("eberlein: u = {u} > m = {m}")));
    }
    let (n, m, k, u) = (n as u64, m as u64, k as u64, u as u64);
    let mut acc = BigInt::from(0);
    for j in 0..=k {
        let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
        acc += sign
            * binomial(m - j, (k - j) as i64)
            * binomial(m - u, j as i64)
            * binomial(n - m + j - u, j as i64);
    }
    Ok(acc)
}

/// One cell of the Eberlein cross-check at indices (t,k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryCheck {
    pub t: u32,
    pub k: u32,
    /// E_t(k) from the Eberlein polynomial sum.
    pub eberlein: BigInt,
    /// The binomial sum Σ_j (-1)^{k-j} C(k,j) C(m-j, m-t-j) C(n-m-k+j, n-m-t).
    pub corollary_sum: BigInt,
    /// Coefficient of b_{m-t} in λ_k.
    pub eigen_coeff: BigInt,
    pub pass: bool,
}

/// Three-way identity E_t(k) = corollary sum = [b_{m-t}] λ_k over all t,k ≤ m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    pub n: u32,
    pub m: u32,
    pub checks: Vec<CorollaryCheck>,
}

impl CorollaryReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Evaluates the three-way identity cell by cell.
pub fn verify_corollary(n: u32, m: u32) -> Result<CorollaryReport> {
    validate_nmk(n, m, 0)?;
    let forms: Vec<LinearForm> = (0..=m).map(|k| eigenvalue_form(n, m, k)).collect::<Result<_>>()?;
    let mut checks = Vec::new();
    for t in 0..=m {
        for k in 0..=m {
            let eb = eberlein(n, m, t, k)?;
            let (nn, mm, tt, kk) = (n as u64, m as u64, t as u64, k as u64);
            let mut cor = BigInt::from(0);
            for j in 0..=kk {
                let sign = if (kk - j) % 2 == 0 { 1 } else { -1 };
                cor += sign
                    * binomial(kk, j as i64)
                    * binomial(mm - j, mm as i64 - tt as i64 - j as i64)
                    * binomial(nn - mm - kk + j, (nn - mm - tt) as i64);
            }
            let eigen_coeff = forms[k as usize].coeff((m - t) as usize).clone();
            let pass = eb == cor && cor == eigen_coeff;
            checks.push(CorollaryCheck {
                t,
                k,
                eberlein: eb,
                corollary_sum: cor,
                eigen_coeff,
                pass,
            });
        }
    }
    Ok(CorollaryReport { n, m, checks })
}

/// One eigenvalue row of a spectrum report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumRecord {
    pub k: u32,
    pub eigenvalue: LinearForm,
    pub multiplicity: BigInt,
    /// λ_k(b) when a parameter vector was supplied.
    pub value: Option<BigRational>,
}

/// The full closed-form spectrum of B_{(n-m,m)}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub n: u32,
    pub m: u32,
    pub records: Vec<SpectrumRecord>,
}

/// All m+1 eigenvalues with multiplicities, optionally evaluated at b.
///
/// Multiplicities are asserted to sum to the matrix dimension C(n,m).
pub fn spectrum_report(n: u32, m: u32, b: Option<&[BigRational]>) -> Result<SpectrumReport> {
    validate_nmk(n, m, 0)?;
    let mut records = Vec::with_capacity(m as usize + 1);
    let mut total = BigInt::from(0);
    for k in 0..=m {
        let eigenvalue = eigenvalue_form(n, m, k)?;
        let value = match b {
            Some(b) => Some(eigenvalue.evaluate(b)?),
            None => None,
        };
        let mult = multiplicity(n, k)?;
        total += &mult;
        records.push(SpectrumRecord {
            k,
            eigenvalue,
            multiplicity: mult,
            value,
        });
    }
    assert_eq!(
        total,
        binomial(n as u64, m as i64),
        "multiplicities must fill the representation"
    );
    Ok(SpectrumReport { n, m, records })
}
