//! Exact face-vector arithmetic.
//!
//! Conventions, used consistently everywhere: a complex of dimension `dim`
//! has parameter `d = dim + 1`; its f-vector is `(f_{-1}, .., f_{d-1})` with
//! `f_{-1} = 1`, its h-vector `(h_0, .., h_d)` is defined by
//! `Σ h_i t^i = Σ f_{i-1} t^i (1-t)^{d-i}`, and Betti numbers are reduced.
//! The corrected vectors subtract Betti contributions:
//!
//! * `h'_i = h_i − C(d,i) Σ_{k=1}^{i-1} (−1)^{i−k} β_{k−1}` for `0 < i ≤ d`,
//! * `h''_i = h'_i − C(d,i) β_{i−1}` for `i < d`, and `h''_d = h'_d`.
//!
//! `h'_d` always equals the top reduced Betti number; a mismatch means the
//! supplied h-vector and Betti data do not belong to the same complex and is
//! reported as an error rather than silently absorbed.

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::field::FieldSpec;
use crate::homology::{betti_numbers, BettiVector, HomologyError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnumError {
    #[error("the void complex has no face vectors")]
    VoidComplex,
    #[error("f-vector of length {len} does not fit parameter d = {d}")]
    FVectorTooLong { len: usize, d: usize },
    #[error("vector length {got} does not match expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("top corrected entry {got} does not equal the top Betti number {expected}; h-vector and Betti data disagree")]
    BettiInconsistent { got: BigInt, expected: usize },
    #[error("{0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn sign(exponent: i64) -> BigInt {
    if exponent.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// f-vector of a complex as big integers, `(f_{-1}, .., f_{dim})`.
pub fn f_vector(complex: &SimplicialComplex) -> Result<Vec<BigInt>, EnumError> {
    if complex.is_void() {
        return Err(EnumError::VoidComplex);
    }
    Ok(complex.f_vector().into_iter().map(BigInt::from).collect())
}

/// h-vector from an f-vector with parameter `d`; `f` may be shorter than
/// `d + 1` and is zero-padded (a complex of lower dimension viewed with a
/// larger parameter).
pub fn h_from_f(f: &[BigInt], d: usize) -> Result<Vec<BigInt>, EnumError> {
    if f.len() > d + 1 {
        return Err(EnumError::FVectorTooLong { len: f.len(), d });
    }
    let fd = |i: usize| -> BigInt {
        f.get(i).cloned().unwrap_or_else(BigInt::zero)
    };
    let d_i = d as i64;
    let mut h = Vec::with_capacity(d + 1);
    for j in 0..=d as i64 {
        let mut acc = BigInt::zero();
        for i in 0..=j {
            acc += sign(j - i) * binomial(d_i - i, j - i) * fd(i as usize);
        }
        h.push(acc);
    }
    Ok(h)
}

/// Inverse transform: f-vector from an h-vector (parameter `d = h.len() - 1`).
pub fn f_from_h(h: &[BigInt]) -> Vec<BigInt> {
    let d = h.len() as i64 - 1;
    let mut f = Vec::with_capacity(h.len());
    for j in 0..=d {
        let mut acc = BigInt::zero();
        for i in 0..=j {
            acc += binomial(d - i, j - i) * &h[i as usize];
        }
        f.push(acc);
    }
    f
}

/// First corrected h-vector. Fails when the forced identity
/// `h'_d = β_{d-1}` is violated, which signals mismatched inputs.
pub fn h_prime(h: &[BigInt], betti: &BettiVector) -> Result<Vec<BigInt>, EnumError> {
    if h.is_empty() {
        return Err(EnumError::LengthMismatch { expected: 1, got: 0 });
    }
    let d = h.len() - 1;
    let d_i = d as i64;
    let mut out = Vec::with_capacity(h.len());
    for i in 0..=d_i {
        let mut correction = BigInt::zero();
        for k in 1..i {
            correction += sign(i - k) * BigInt::from(betti.get((k - 1) as i32));
        }
        out.push(&h[i as usize] - binomial(d_i, i) * correction);
    }
    let expected_top = betti.get(d as i32 - 1);
    if out[d] != BigInt::from(expected_top) {
        return Err(EnumError::BettiInconsistent { got: out[d].clone(), expected: expected_top });
    }
    Ok(out)
}

/// Second corrected h-vector: `h''_i = h'_i − C(d,i) β_{i-1}` below the top
/// index, and `h''_d = h'_d`.
pub fn h_double_prime(h: &[BigInt], betti: &BettiVector) -> Result<Vec<BigInt>, EnumError> {
    let hp = h_prime(h, betti)?;
    let d = hp.len() - 1;
    let d_i = d as i64;
    let mut out = Vec::with_capacity(hp.len());
    for (i, value) in hp.iter().enumerate() {
        if i == d {
            out.push(value.clone());
        } else {
            let beta = BigInt::from(betti.get(i as i32 - 1));
            out.push(value - binomial(d_i, i as i64) * beta);
        }
    }
    Ok(out)
}

/// Difference vector `g_i = h_i − h_{i-1}` with `g_0 = h_0`.
pub fn g_vector(h: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(h.len());
    for i in 0..h.len() {
        if i == 0 {
            out.push(h[0].clone());
        } else {
            out.push(&h[i] - &h[i - 1]);
        }
    }
    out
}

/// Betti-corrected g-vector `(g̃_0, .., g̃_{⌊d/2⌋})`:
/// `g̃_0 = 1` and
/// `g̃_r = h_r − h_{r-1} − C(d+1, r) Σ_{j=1}^{r} (−1)^{r−j} β_{j−1}`.
pub fn g_tilde(h: &[BigInt], betti: &BettiVector) -> Vec<BigInt> {
    let d = h.len() - 1;
    let d_i = d as i64;
    let mut out = Vec::with_capacity(d / 2 + 1);
    for r in 0..=(d / 2) as i64 {
        if r == 0 {
            out.push(BigInt::one());
            continue;
        }
        let mut correction = BigInt::zero();
        for j in 1..=r {
            correction += sign(r - j) * BigInt::from(betti.get((j - 1) as i32));
        }
        let value =
            &h[r as usize] - &h[(r - 1) as usize] - binomial(d_i + 1, r) * correction;
        out.push(value);
    }
    out
}

/// All face vectors of one complex over one field.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSuite {
    pub field: FieldSpec,
    /// `dim + 1`.
    pub d: usize,
    pub f: Vec<BigInt>,
    pub h: Vec<BigInt>,
    pub h_prime: Vec<BigInt>,
    pub h_double_prime: Vec<BigInt>,
    pub g: Vec<BigInt>,
    pub g_tilde: Vec<BigInt>,
    pub betti: BettiVector,
}

impl VectorSuite {
    pub fn compute(complex: &SimplicialComplex, field: FieldSpec) -> Result<VectorSuite, EnumError> {
        if complex.is_void() {
            return Err(EnumError::VoidComplex);
        }
        let d = (complex.dim() + 1) as usize;
        let f = f_vector(complex)?;
        let h = h_from_f(&f, d)?;
        let betti = betti_numbers(complex, field)?;
        let hp = h_prime(&h, &betti)?;
        let hpp = h_double_prime(&h, &betti)?;
        let g = g_vector(&h);
        let gt = g_tilde(&h, &betti);
        Ok(VectorSuite {
            field,
            d,
            f,
            h,
            h_prime: hp,
            h_double_prime: hpp,
            g,
            g_tilde: gt,
            betti,
        })
    }
}

/// Reduced Euler characteristic from the exact f-vector.
pub fn reduced_euler(f: &[BigInt]) -> BigInt {
    let mut total = BigInt::zero();
    for (slot, value) in f.iter().enumerate() {
        // slot 0 holds f_{-1}
        if slot % 2 == 1 {
            total += value;
        } else {
            total -= value;
        }
    }
    total
}

/// Residuals of the two boundary/interior relations tying a manifold with
/// boundary to its boundary complex. For `Δ` of dimension `d - 1` with
/// boundary `∂Δ`, index `i` runs over `0..d` and both vectors must vanish:
///
/// * relation with the Euler term:
///   `g_i(∂Δ) = h_i(Δ) − h_{d−i}(Δ) + C(d,i) (−1)^{d−1−i} χ̃(Δ)`
/// * relation with the Betti sum:
///   `g_i(∂Δ) = h_i(Δ) − h''_{d−i}(Δ) + C(d,i) Σ_{k=d−i}^{d−1} (−1)^{d−1−i−k} β_k(Δ)`
#[derive(Debug, Clone, PartialEq)]
pub struct DehnSommerville {
    pub eq2_residuals: Vec<BigInt>,
    pub eq3_residuals: Vec<BigInt>,
    pub all_zero: bool,
}

pub fn dehn_sommerville_residuals(
    complex: &SimplicialComplex,
    boundary: &SimplicialComplex,
    field: FieldSpec,
) -> Result<DehnSommerville, EnumError> {
    if complex.is_void() {
        return Err(EnumError::VoidComplex);
    }
    let d = (complex.dim() + 1) as usize;
    if boundary.is_void() || boundary.is_empty_complex() {
        return Err(EnumError::PreconditionFailed(
            "boundary is empty; the boundary relations need a nonempty boundary".into(),
        ));
    }
    if boundary.dim() != complex.dim() - 1 {
        return Err(EnumError::PreconditionFailed(format!(
            "boundary has dimension {} but {} was expected",
            boundary.dim(),
            complex.dim() - 1
        )));
    }
    let suite = VectorSuite::compute(complex, field)?;
    let f_b = f_vector(boundary)?;
    let h_b = h_from_f(&f_b, d - 1)?;
    let g_b = g_vector(&h_b);
    let chi = reduced_euler(&suite.f);
    let d_i = d as i64;
    let mut eq2 = Vec::with_capacity(d);
    let mut eq3 = Vec::with_capacity(d);
    for i in 0..d_i {
        let gi = &g_b[i as usize];
        let lhs2 = &suite.h[i as usize] - &suite.h[(d_i - i) as usize]
            + binomial(d_i, i) * sign(d_i - 1 - i) * &chi;
        eq2.push(gi - lhs2);
        let mut betti_sum = BigInt::zero();
        for k in (d_i - i)..d_i {
            betti_sum += sign(d_i - 1 - i - k) * BigInt::from(suite.betti.get(k as i32));
        }
        let lhs3 = &suite.h[i as usize] - &suite.h_double_prime[(d_i - i) as usize]
            + binomial(d_i, i) * betti_sum;
        eq3.push(gi - lhs3);
    }
    let all_zero = eq2.iter().chain(eq3.iter()).all(|x| x.is_zero());
    Ok(DehnSommerville { eq2_residuals: eq2, eq3_residuals: eq3, all_zero })
}

/// Macaulay pseudopower `a^{<i>}`: write `a` as the greedy sum of binomials
/// `C(a_i, i) + C(a_{i-1}, i-1) + ..` and bump every term to
/// `C(a_j + 1, j + 1)`.
pub fn macaulay_pseudopower(a: &BigInt, i: usize) -> BigInt {
    assert!(i >= 1, "pseudopower index must be positive");
    assert!(!a.is_negative(), "pseudopower argument must be nonnegative");
    if a.is_zero() {
        return BigInt::zero();
    }
    let mut remainder = a.clone();
    let mut j = i as i64;
    let mut bound = BigInt::zero();
    while j >= 1 && remainder.is_positive() {
        // largest m with C(m, j) <= remainder
        let mut m = j;
        if j == 1 {
            // C(m, 1) = m, so the remainder itself is the last coefficient
            return bound + binomial_big(&(remainder + 1), 2);
        }
        while binomial_i64(m + 1, j) <= remainder {
            m += 1;
        }
        remainder -= binomial_i64(m, j);
        bound += binomial_i64(m + 1, j + 1);
        j -= 1;
    }
    bound
}

fn binomial_i64(n: i64, k: i64) -> BigInt {
    binomial(n, k)
}

/// C(n, k) for big n and small k.
fn binomial_big(n: &BigInt, k: i64) -> BigInt {
    if k < 0 || n.is_negative() {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        let factor = n - BigInt::from(j);
        if factor.is_negative() {
            return BigInt::zero();
        }
        acc = acc * factor / BigInt::from(j + 1);
    }
    acc
}

/// Verdict of the Macaulay growth test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MVectorVerdict {
    pub is_m_vector: bool,
    /// Index of the first entry that breaks the growth condition.
    pub first_violation: Option<usize>,
}

/// Tests whether a vector is an M-vector: `v_0 = 1`, all entries
/// nonnegative, and `v_{i+1} <= v_i^{<i>}` for every `i >= 1`.
pub fn is_m_vector(v: &[BigInt]) -> MVectorVerdict {
    if v.is_empty() || v[0] != BigInt::one() {
        return MVectorVerdict { is_m_vector: false, first_violation: Some(0) };
    }
    for (i, value) in v.iter().enumerate() {
        if value.is_negative() {
            return MVectorVerdict { is_m_vector: false, first_violation: Some(i) };
        }
    }
    for i in 1..v.len().saturating_sub(1) {
        let bound = macaulay_pseudopower(&v[i], i);
        if v[i + 1] > bound {
            return MVectorVerdict { is_m_vector: false, first_violation: Some(i + 1) };
        }
    }
    MVectorVerdict { is_m_vector: true, first_violation: None }
}

/// Symmetry and duality identities for closed, connected manifolds that are
/// orientable over the chosen field (top Betti number 1 over that field):
///
/// * `h''_i = h''_{d−i}` for all `i`,
/// * `g̃_i = h''_{d−i} − h'_{d−i+1}` for `i ≤ d/2` (with `h'_{d+1} = 0`),
/// * Poincaré duality `b_{d−i} = b_{i−1}` for `1 ≤ i ≤ d` on unreduced
///   Betti numbers (`b_0 = β_0 + 1`, `b_k = β_k` otherwise).
#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    pub field: FieldSpec,
    pub h_double_prime_palindrome: bool,
    pub h_double_prime_residuals: Vec<BigInt>,
    pub g_tilde_identity: bool,
    pub g_tilde_residuals: Vec<BigInt>,
    pub poincare_duality: bool,
    pub poincare_residuals: Vec<i64>,
    pub all_hold: bool,
}

pub fn symmetry_and_duality_checks(
    complex: &SimplicialComplex,
    field: FieldSpec,
) -> Result<DualityReport, EnumError> {
    let suite = VectorSuite::compute(complex, field)?;
    let d = suite.d;
    if suite.betti.get(d as i32 - 1) != 1 {
        return Err(EnumError::PreconditionFailed(format!(
            "top Betti number over {} is {}, not 1; the duality identities need an \
             orientation class over the chosen field",
            field,
            suite.betti.get(d as i32 - 1)
        )));
    }
    let mut hpp_res = Vec::with_capacity(d + 1);
    for i in 0..=d {
        hpp_res.push(&suite.h_double_prime[i] - &suite.h_double_prime[d - i]);
    }
    let hpp_ok = hpp_res.iter().all(|x| x.is_zero());

    let hp_at = |i: usize| -> BigInt {
        suite.h_prime.get(i).cloned().unwrap_or_else(BigInt::zero)
    };
    let mut gt_res = Vec::with_capacity(suite.g_tilde.len());
    for (i, gt) in suite.g_tilde.iter().enumerate() {
        let rhs = &suite.h_double_prime[d - i] - hp_at(d - i + 1);
        gt_res.push(gt - rhs);
    }
    let gt_ok = gt_res.iter().all(|x| x.is_zero());

    let unreduced = |k: i32| -> i64 {
        let extra = i64::from(k == 0);
        suite.betti.get(k) as i64 + extra
    };
    let mut pd_res = Vec::with_capacity(d);
    for i in 1..=d as i32 {
        pd_res.push(unreduced(d as i32 - i) - unreduced(i - 1));
    }
    let pd_ok = pd_res.iter().all(|&x| x == 0);

    Ok(DualityReport {
        field,
        h_double_prime_palindrome: hpp_ok,
        h_double_prime_residuals: hpp_res,
        g_tilde_identity: gt_ok,
        g_tilde_residuals: gt_res,
        poincare_duality: pd_ok,
        poincare_residuals: pd_res,
        all_hold: hpp_ok && gt_ok && pd_ok,
    })
}

/// Minimum entry of a vector and the index of its first negative entry.
pub fn nonnegativity_probe(v: &[BigInt]) -> (Option<BigInt>, Option<usize>) {
    let min = v.iter().min().cloned();
    let first_negative = v.iter().position(|x| x.is_negative());
    (min, first_negative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn big(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(5, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
    }

    #[test]
    fn h_vector_of_a_simplex_boundary_is_all_ones() {
        // boundary of the tetrahedron: f = (1, 4, 6, 4), d = 3
        let h = h_from_f(&big(&[1, 4, 6, 4]), 3).unwrap();
        assert_eq!(h, big(&[1, 1, 1, 1]));
    }

    #[test]
    fn h_vector_of_a_full_simplex_is_a_delta() {
        // full tetrahedron: f = (1, 4, 6, 4, 1), d = 4
        let h = h_from_f(&big(&[1, 4, 6, 4, 1]), 4).unwrap();
        assert_eq!(h, big(&[1, 0, 0, 0, 0]));
    }

    #[test]
    fn f_and_h_are_inverse_transforms() {
        let f = big(&[1, 7, 14, 7]);
        let h = h_from_f(&f, 3).unwrap();
        assert_eq!(f_from_h(&h), f);
    }

    #[test]
    fn h_from_f_pads_shorter_vectors() {
        // the empty complex viewed with parameter 2: f = (1)
        let h = h_from_f(&big(&[1]), 2).unwrap();
        assert_eq!(h, big(&[1, -2, 1]));
        assert!(h_from_f(&big(&[1, 2, 3]), 1).is_err());
    }

    #[test]
    fn h_prime_rejects_mismatched_betti_data() {
        let fake = BettiVector { field: FieldSpec::Rationals, betti: vec![0, 0, 0], empty_complex: false };
        // h of a 2-sphere, Betti data of a ball: h'_3 = 1 but β_2 = 0
        let err = h_prime(&big(&[1, 1, 1, 1]), &fake).unwrap_err();
        assert!(matches!(err, EnumError::BettiInconsistent { .. }));
    }

    #[test]
    fn g_tilde_starts_at_one() {
        let betti = BettiVector { field: FieldSpec::Rationals, betti: vec![0, 0, 1], empty_complex: false };
        let gt = g_tilde(&big(&[1, 1, 1, 1]), &betti);
        assert_eq!(gt, big(&[1, 0]));
    }

    #[test]
    fn macaulay_growth_verdicts() {
        assert_eq!(
            is_m_vector(&big(&[1, 2, 4])),
            MVectorVerdict { is_m_vector: false, first_violation: Some(2) }
        );
        assert_eq!(
            is_m_vector(&big(&[1, 0, 1])),
            MVectorVerdict { is_m_vector: false, first_violation: Some(2) }
        );
        assert!(is_m_vector(&big(&[1])).is_m_vector);
        assert!(is_m_vector(&big(&[1, 6, 0])).is_m_vector);
        assert!(is_m_vector(&big(&[1, 3, 6, 10])).is_m_vector);
        assert!(is_m_vector(&big(&[1, 2, 3, 3])).is_m_vector);
        assert!(!is_m_vector(&big(&[2, 1])).is_m_vector);
        assert_eq!(
            is_m_vector(&big(&[1, -1])),
            MVectorVerdict { is_m_vector: false, first_violation: Some(1) }
        );
    }

    #[test]
    fn pseudopowers() {
        assert_eq!(macaulay_pseudopower(&BigInt::from(2), 1), BigInt::from(3));
        assert_eq!(macaulay_pseudopower(&BigInt::zero(), 3), BigInt::zero());
        // 4 = C(3,2) + C(1,1) -> C(4,3) + C(2,2) = 5
        assert_eq!(macaulay_pseudopower(&BigInt::from(4), 2), BigInt::from(5));
    }

    #[test]
    fn euler_characteristic_from_f() {
        assert_eq!(reduced_euler(&big(&[1, 4, 6, 4])), BigInt::from(1));
        assert_eq!(reduced_euler(&big(&[1])), BigInt::from(-1));
    }
}
