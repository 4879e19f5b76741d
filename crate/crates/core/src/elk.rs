//! The ELK specialization at n = 2m.
//!
//! The class parameters
//!
//!   b_i = (-1)^i (2m-2i-1)!!·(2i)!! / (2m-1)!!
//!
//! (with (-1)!! = 0!! = 1, so b_m = (-1)^m (2m)!!/(2m-1)!!) collapse the
//! spectrum of B_{(m,m)} to λ_k = (-1)^m (2m+1)/(2m-2k+1). This module
//! produces the parameters, the closed-form eigenvalues, and a report that
//! pits the closed form against the general eigenvalue formula.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::combinatorics::double_factorial;
use crate::error::{Error, Result};
use crate::spectrum::{eigenvalue_at, multiplicity};

fn validate_m(m: u32) -> Result<()> {
    if m < 1 {
        return Err(Error::OutOfRange("elk: need m >= 1".into()));
    }
    Ok(())
}

/// The ELK parameter vector (b_0, …, b_m).
///
/// The general i formula is used throughout; at i = m it degenerates via
/// (-1)!! = 1 to (-1)^m (2m)!!/(2m-1)!!, and that separate expression is
/// asserted against it.
pub fn elk_parameters(m: u32) -> Result<Vec<BigRational>> {
    validate_m(m)?;
    let m = m as i64;
    let norm = double_factorial(2 * m - 1)?;
    let mut b = Vec::with_capacity(m as usize + 1);
    for i in 0..=m {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let numerator = double_factorial(2 * m - 2 * i - 1)? * double_factorial(2 * i)? * sign;
        b.push(BigRational::new(numerator, norm.clone()));
    }
    let top_sign = if m % 2 == 0 { 1 } else { -1 };
    let top = BigRational::new(double_factorial(2 * m)? * top_sign, norm);
    assert_eq!(b[m as usize], top, "i = m degenerate case must agree");
    Ok(b)
}

/// The collapsed eigenvalue λ_k = (-1)^m (2m+1)/(2m-2k+1) for k ≤ m.
pub fn elk_closed_form(m: u32, k: u32) -> Result<BigRational> {
    validate_m(m)?;
    if k > m {
        return Err(Error::OutOfRange(format!("elk: k = {k} > m = {m}")));
    }
    let (m, k) = (m as i64, k as i64);
    let sign = if m % 2 == 0 { 1 } else { -1 };
    Ok(BigRational::new(
        BigInt::from(sign * (2 * m + 1)),
        BigInt::from(2 * m - 2 * k + 1),
    ))
}

/// One eigenvalue row of an ELK report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElkRow {
    pub k: u32,
    /// λ_k(b) through the general eigenvalue formula at n = 2m.
    pub via_eigenvalue_form: BigRational,
    /// The collapsed closed form.
    pub closed_form: BigRational,
    pub multiplicity: BigInt,
    pub matches: bool,
}

/// The full k = 0..m comparison for one m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElkReport {
    pub m: u32,
    pub b: Vec<BigRational>,
    pub rows: Vec<ElkRow>,
}

impl ElkReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

/// Evaluates the general eigenvalue formula at the ELK parameters and
/// compares with the closed form, for every k ≤ m.
pub fn elk_verify(m: u32) -> Result<ElkReport> {
    let b = elk_parameters(m)?;
    let mut rows = Vec::with_capacity(m as usize + 1);
    for k in 0..=m {
        let via = eigenvalue_at(2 * m, m, k, &b)?;
        let closed = elk_closed_form(m, k)?;
        rows.push(ElkRow {
            k,
            matches: via == closed,
            multiplicity: multiplicity(2 * m, k)?,
            via_eigenvalue_form: via,
            closed_form: closed,
        });
    }
    Ok(ElkReport { m, b, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn parameters_for_m_two() {
        assert_eq!(elk_parameters(2).unwrap(), vec![rat(1, 1), rat(-2, 3), rat(8, 3)]);
        assert!(elk_parameters(0).is_err());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(elk_closed_form(2, 0).unwrap(), rat(1, 1));
        assert_eq!(elk_closed_form(2, 1).unwrap(), rat(5, 3));
        assert_eq!(elk_closed_form(2, 2).unwrap(), rat(5, 1));
        assert_eq!(elk_closed_form(3, 1).unwrap(), rat(-7, 5));
        assert!(elk_closed_form(3, 4).is_err());
    }

    #[test]
    fn general_formula_collapses_for_small_m() {
        for m in 1..=12u32 {
            let report = elk_verify(m).unwrap();
            assert_eq!(report.rows.len(), m as usize + 1);
            assert!(report.all_match(), "ELK mismatch at m = {m}");
        }
    }
}
