//! The universal intertwining matrix of a subset representation.
//!
//! S_n acts on the C(n,m) subsets σ ⊆ ⟦1,n⟧ with |σ| = m. A matrix indexed
//! by these subsets commutes with the whole action iff its entry at (σ,τ)
//! depends only on p = |σ ∩ τ|. The universal such matrix B keeps the m+1
//! class values b_0, …, b_m as formal parameters: entries are `LinearForm`s.
//! Specializing the b_p to rationals gives every concrete intertwiner, and
//! fixing b_p = δ_{p,q} gives the class adjacency matrices A_q.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::{all_subsets, binomial, KSubset, Permutation};
use crate::error::{Error, Result};

/// Largest matrix dimension C(n,m) built without an explicit cap override.
pub const DEFAULT_SIZE_CAP: usize = 3003;

/// An integer linear form c_0·b_0 + … + c_m·b_m in the class parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<BigInt>,
}

impl LinearForm {
    /// The zero form in parameters b_0, …, b_m.
    pub fn zero(m: u32) -> Self {
        LinearForm {
            coeffs: vec![BigInt::zero(); m as usize + 1],
        }
    }

    /// The single parameter b_p as a form in b_0, …, b_m; requires p ≤ m.
    pub fn unit(m: u32, p: u32) -> Result<Self> {
        if p > m {
            return Err(Error::OutOfRange(format!("unit form: p = {p} > m = {m}")));
        }
        let mut form = Self::zero(m);
        form.coeffs[p as usize] = BigInt::one();
        Ok(form)
    }

    /// Form with the given coefficients of b_0, …, b_m; must be non-empty.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::OutOfRange(
                "a linear form needs at least the b_0 coefficient".into(),
            ));
        }
        Ok(LinearForm { coeffs })
    }

    /// m, the largest parameter index carried by this form.
    pub fn m(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, p: usize) -> &BigInt {
        &self.coeffs[p]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &BigInt) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub(crate) fn add_coeff(&mut self, p: usize, c: BigInt) {
        self.coeffs[p] += c;
    }

    /// Value of the form at b = (b_0, …, b_m); b must have length m+1.
    pub fn evaluate(&self, b: &[BigRational]) -> Result<BigRational> {
        if b.len() != self.coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coeffs.len(),
                actual: b.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (c, v) in self.coeffs.iter().zip(b) {
            acc += v * c;
        }
        Ok(acc)
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: &LinearForm) -> LinearForm {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "form length mismatch");
        LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: &LinearForm) -> LinearForm {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "form length mismatch");
        LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (p, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mag = c.abs();
            if mag.is_one() {
                out.push_str(&format!("b{p}"));
            } else {
                out.push_str(&format!("{mag}*b{p}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// An intertwining matrix stored by class values: the (σ,τ) entry is
/// `class_values[|σ ∩ τ|]`. Rows and columns are indexed by the k-subsets in
/// lexicographic order, matching `combinatorics::all_subsets`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwinerMatrix<T> {
    n: u32,
    m: u32,
    subsets: Vec<KSubset>,
    class_values: Vec<T>,
}

fn validate_shape(n: u32, m: u32) -> Result<()> {
    if n < 1 || 2 * m > n {
        return Err(Error::OutOfRange(format!(
            "need 1 <= n and 2m <= n, got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

fn checked_dimension(n: u32, m: u32, cap: usize) -> Result<usize> {
    let dim = binomial(n as u64, m as i64);
    if dim > BigInt::from(cap) {
        return Err(Error::SizeCapExceeded {
            n,
            m,
            dim: dim.to_string(),
            cap,
        });
    }
    Ok(dim.to_usize().expect("dimension fits usize under the cap"))
}

impl<T> IntertwinerMatrix<T> {
    fn assemble(n: u32, m: u32, cap: usize, class_values: Vec<T>) -> Result<Self> {
        validate_shape(n, m)?;
        checked_dimension(n, m, cap)?;
        debug_assert_eq!(class_values.len(), m as usize + 1);
        Ok(IntertwinerMatrix {
            n,
            m,
            subsets: all_subsets(n, m)?,
            class_values,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Matrix dimension d = C(n,m).
    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[KSubset] {
        &self.subsets
    }

    /// The m+1 class values, indexed by intersection size.
    pub fn class_values(&self) -> &[T] {
        &self.class_values
    }

    /// Intersection size |σ_r ∩ σ_c| indexing the (r,c) entry's class.
    pub fn class_of(&self, r: usize, c: usize) -> usize {
        self.subsets[r]
            .intersection_size(&self.subsets[c])
            .expect("rows and columns share the ambient set")
    }

    pub fn entry(&self, r: usize, c: usize) -> &T {
        &self.class_values[self.class_of(r, c)]
    }

    pub fn to_dense(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        let d = self.dim();
        (0..d)
            .map(|r| (0..d).map(|c| self.entry(r, c).clone()).collect())
            .collect()
    }

    /// Row-wise class sums of `v`: output[r][p] = Σ over τ with |σ_r ∩ τ| = p.
    fn bucket<S>(&self, r: usize, v: &[S]) -> Vec<S>
    where
        S: Zero + for<'a> std::ops::AddAssign<&'a S>,
    {
        let mut sums: Vec<S> = (0..=self.m as usize).map(|_| S::zero()).collect();
        for (c, tau) in self.subsets.iter().enumerate() {
            let p = self.subsets[r]
                .intersection_size(tau)
                .expect("shared ambient set");
            sums[p] += &v[c];
        }
        sums
    }
}

impl IntertwinerMatrix<LinearForm> {
    /// Matrix-vector product over the form ring, one row at a time; `v` is an
    /// integer vector of length d. Entries within a row are grouped by class
    /// first, which is exactly the defining entry structure, so this equals
    /// the dense product.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<LinearForm>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: v.len(),
            });
        }
        let mut out = Vec::with_capacity(self.dim());
        for r in 0..self.dim() {
            let sums = self.bucket(r, v);
            let mut acc = LinearForm::zero(self.m);
            for (form, s) in self.class_values.iter().zip(&sums) {
                acc = &acc + &form.scaled(s);
            }
            out.push(acc);
        }
        Ok(out)
    }
}

impl IntertwinerMatrix<BigRational> {
    /// Matrix-vector product over the rationals, grouped by class per row.
    pub fn apply(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: v.len(),
            });
        }
        let mut out = Vec::with_capacity(self.dim());
        for r in 0..self.dim() {
            let sums = self.bucket(r, v);
            let mut acc = BigRational::zero();
            for (value, s) in self.class_values.iter().zip(&sums) {
                acc += value * s;
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// The universal matrix B = Σ_p b_p A_p with formal parameters, capped at
/// `DEFAULT_SIZE_CAP` rows.
pub fn build_symbolic(n: u32, m: u32) -> Result<IntertwinerMatrix<LinearForm>> {
    build_symbolic_capped(n, m, DEFAULT_SIZE_CAP)
}

/// As `build_symbolic` with an explicit dimension cap.
pub fn build_symbolic_capped(n: u32, m: u32, cap: usize) -> Result<IntertwinerMatrix<LinearForm>> {
    validate_shape(n, m)?;
    let class_values = (0..=m).map(|p| LinearForm::unit(m, p)).collect::<Result<_>>()?;
    IntertwinerMatrix::assemble(n, m, cap, class_values)
}

/// B evaluated at the rational parameter vector b = (b_0, …, b_m).
pub fn build_specialized(n: u32, m: u32, b: &[BigRational]) -> Result<IntertwinerMatrix<BigRational>> {
    build_specialized_capped(n, m, b, DEFAULT_SIZE_CAP)
}

/// As `build_specialized` with an explicit dimension cap.
pub fn build_specialized_capped(
    n: u32,
    m: u32,
    b: &[BigRational],
    cap: usize,
) -> Result<IntertwinerMatrix<BigRational>> {
    validate_shape(n, m)?;
    if b.len() != m as usize + 1 {
        return Err(Error::DimensionMismatch {
            expected: m as usize + 1,
            actual: b.len(),
        });
    }
    IntertwinerMatrix::assemble(n, m, cap, b.to_vec())
}

/// The class adjacency matrix A_p: entry 1 where |σ ∩ τ| = p, else 0.
pub fn adjacency(n: u32, m: u32, p: u32) -> Result<IntertwinerMatrix<BigInt>> {
    adjacency_capped(n, m, p, DEFAULT_SIZE_CAP)
}

/// As `adjacency` with an explicit dimension cap.
pub fn adjacency_capped(n: u32, m: u32, p: u32, cap: usize) -> Result<IntertwinerMatrix<BigInt>> {
    validate_shape(n, m)?;
    if p > m {
        return Err(Error::OutOfRange(format!("adjacency: p = {p} > m = {m}")));
    }
    let class_values = (0..=m)
        .map(|q| if q == p { BigInt::one() } else { BigInt::zero() })
        .collect();
    IntertwinerMatrix::assemble(n, m, cap, class_values)
}

/// Does the dense matrix commute with the subset representation of S_n?
///
/// Two independent characterizations are evaluated and asserted to agree:
/// commutation with the permutation matrices of all adjacent transpositions
/// (which generate S_n), and constancy of entries on intersection classes.
pub fn is_intertwining(n: u32, m: u32, mat: &[Vec<BigRational>]) -> Result<bool> {
    validate_shape(n, m)?;
    let subsets = all_subsets(n, m)?;
    let d = subsets.len();
    if mat.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: mat.len(),
        });
    }
    for row in mat {
        if row.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: row.len(),
            });
        }
    }

    // g·M·g⁻¹ = M for every adjacent transposition g, checked as
    // M[gσ][gτ] = M[σ][τ]; these g generate S_n.
    let mut commutes = true;
    'outer: for i in 1..n {
        let g = Permutation::transposition(n, i, i + 1)?;
        let image: Vec<usize> = subsets
            .iter()
            .map(|s| g.apply_subset(s).expect("same ambient set").rank())
            .collect();
        for r in 0..d {
            for c in 0..d {
                if mat[image[r]][image[c]] != mat[r][c] {
                    commutes = false;
                    break 'outer;
                }
            }
        }
    }

    // Entry depends only on |σ ∩ τ|.
    let mut class_constant = true;
    let mut reference: Vec<Option<&BigRational>> = vec![None; m as usize + 1];
    'classes: for r in 0..d {
        for c in 0..d {
            let p = subsets[r]
                .intersection_size(&subsets[c])
                .expect("shared ambient set");
            match reference[p] {
                None => reference[p] = Some(&mat[r][c]),
                Some(v) if *v == mat[r][c] => {}
                Some(_) => {
                    class_constant = false;
                    break 'classes;
                }
            }
        }
    }

    assert_eq!(
        commutes, class_constant,
        "intertwining characterizations disagree"
    );
    Ok(commutes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn form_display_and_arithmetic() {
        let e0 = LinearForm::unit(2, 0).unwrap();
        let e1 = LinearForm::unit(2, 1).unwrap();
        let f = &(&e0 + &e1.scaled(&BigInt::from(2))) - &LinearForm::unit(2, 2).unwrap().scaled(&BigInt::from(3));
        assert_eq!(f.to_string(), "b0 + 2*b1 - 3*b2");
        assert_eq!((-&f).to_string(), "-b0 - 2*b1 + 3*b2");
        assert_eq!(LinearForm::zero(2).to_string(), "0");
        assert!(LinearForm::unit(2, 3).is_err());
        let value = f.evaluate(&[rat(1, 1), rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(value, rat(1, 1));
        assert!(f.evaluate(&[rat(1, 1)]).is_err());
    }

    #[test]
    fn symbolic_matrix_small_cases() {
        let b = build_symbolic(2, 1).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.entry(0, 0).to_string(), "b1");
        assert_eq!(b.entry(0, 1).to_string(), "b0");
        let b = build_symbolic(4, 2).unwrap();
        assert_eq!(b.dim(), 6);
        // Row class profile: one τ with p = 2, four with p = 1, one with p = 0.
        for r in 0..6 {
            let mut counts = [0usize; 3];
            for c in 0..6 {
                counts[b.class_of(r, c)] += 1;
            }
            assert_eq!(counts, [1, 4, 1]);
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        match build_symbolic(20, 10) {
            Err(Error::SizeCapExceeded { dim, cap, .. }) => {
                assert_eq!(dim, "184756");
                assert_eq!(cap, DEFAULT_SIZE_CAP);
            }
            other => panic!("expected SizeCapExceeded, got {other:?}"),
        }
        assert!(build_symbolic_capped(20, 10, 200_000).is_ok());
        assert!(build_specialized(3, 2, &[]).is_err());
    }

    #[test]
    fn specialization_matches_adjacency_decomposition() {
        let n = 5;
        let m = 2;
        let b = [rat(1, 1), rat(-2, 3), rat(7, 5)];
        let specialized = build_specialized(n, m, &b).unwrap();
        let adjacencies: Vec<_> = (0..=m).map(|p| adjacency(n, m, p).unwrap()).collect();
        let d = specialized.dim();
        for r in 0..d {
            for c in 0..d {
                let mut acc = BigRational::zero();
                for (p, a) in adjacencies.iter().enumerate() {
                    acc += &b[p] * a.entry(r, c);
                }
                assert_eq!(&acc, specialized.entry(r, c));
            }
        }
    }

    #[test]
    fn intertwining_check_accepts_and_rejects() {
        let b = [rat(3, 1), rat(-1, 2), rat(5, 7)];
        let mat = build_specialized(5, 2, &b).unwrap().to_dense();
        assert!(is_intertwining(5, 2, &mat).unwrap());
        let mut broken = mat;
        broken[0][3] += rat(1, 1);
        assert!(!is_intertwining(5, 2, &broken).unwrap());
        assert!(is_intertwining(5, 2, &[]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn apply_agrees_with_dense_product(
            seed in proptest::collection::vec(-20i64..20, 10),
            b0 in -9i64..9, b1 in -9i64..9, b2 in -9i64..9,
        ) {
            let b = [rat(b0, 1), rat(b1, 2), rat(b2, 3)];
            let mat = build_specialized(5, 2, &b).unwrap();
            let v: Vec<BigRational> = seed.iter().map(|&x| rat(x, 7)).collect();
            let fast = mat.apply(&v).unwrap();
            let dense = mat.to_dense();
            for (r, row) in dense.iter().enumerate() {
                let mut acc = BigRational::zero();
                for (c, entry) in row.iter().enumerate() {
                    acc += entry * &v[c];
                }
                prop_assert_eq!(&acc, &fast[r]);
            }
        }

        #[test]
        fn symbolic_apply_matches_dense_form_product(
            seed in proptest::collection::vec(-10i64..10, 6),
        ) {
            let mat = build_symbolic(4, 2).unwrap();
            let v: Vec<BigInt> = seed.iter().map(|&x| BigInt::from(x)).collect();
            let fast = mat.apply(&v).unwrap();
            let dense = mat.to_dense();
            for (r, row) in dense.iter().enumerate() {
                let mut acc = LinearForm::zero(2);
                for (c, entry) in row.iter().enumerate() {
                    acc = &acc + &entry.scaled(&v[c]);
                }
                prop_assert_eq!(&acc, &fast[r]);
            }
        }
    }
}
