//! Closed forms for `χ_{T_n}`, `χ_{BT_n}`, their coefficients, the region
//! counts, and the two exponential generating functions.
//!
//! Each function is an independent computation path; the test suites check
//! them against one another and against finite-field counting.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{boxed_chain, boxed_coeffs, odd_chain, signed_odd_coeffs, SequenceTable};
use crate::error::{Error, Result};
use crate::exactmath::{factorial, sign_power, BigInt, BigRational, Polynomial, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyId {
    Threshold,
    BoxedThreshold,
}

/// `S(n, k) + n S(n-1, k)` for `k = 0..=n`, the weight of the `k`-th chain.
fn chain_weights(n: usize) -> Vec<BigInt> {
    debug_assert!(n >= 1);
    let t = SequenceTable::new(n);
    (0..=n)
        .map(|k| t.stirling2(n, k) + BigInt::from(n) * t.stirling2(n - 1, k))
        .collect()
}

/// `χ_{T_n}(t) = Σ_k (S(n,k) + n S(n-1,k)) (t-1)(t-3)...(t-(2k-1))` for
/// `n >= 2`; `n = 0` gives `1` and `n = 1` gives `t` (empty arrangement).
pub fn chi_threshold(n: usize) -> Polynomial {
    match n {
        0 => Polynomial::one(),
        1 => Polynomial::monomial(1),
        _ => chain_weights(n)
            .iter()
            .enumerate()
            .skip(1)
            .fold(Polynomial::zero(), |acc, (k, w)| &acc + &odd_chain(k).scale(w)),
    }
}

/// `χ_{BT_n}(t) = χ_{T_n}(t - 2)`.
pub fn chi_boxed_threshold(n: usize) -> Polynomial {
    chi_threshold(n).shift(&BigInt::from(2))
}

pub fn chi(family: FamilyId, n: usize) -> Polynomial {
    match family {
        FamilyId::Threshold => chi_threshold(n),
        FamilyId::BoxedThreshold => chi_boxed_threshold(n),
    }
}

/// Coefficient of `t^j` in the family's characteristic polynomial, read off
/// the coefficient tables instead of expanding the polynomial:
///
/// * threshold: `Σ_{k>=j} w_k · (-1)^{k-j} a(k, j)`,
/// * boxed: `Σ_{k>=j} w_k · b(k, j)`,
///
/// with `w_k = S(n,k) + n S(n-1,k)`. For `n <= 1` the special-cased
/// polynomials are used.
pub fn chi_coefficient(family: FamilyId, n: usize, j: usize) -> BigInt {
    if j > n {
        return BigInt::zero();
    }
    if n <= 1 {
        return chi(family, n).coeff(j);
    }
    let weights = chain_weights(n);
    (j.max(1)..=n)
        .map(|k| {
            let c = match family {
                FamilyId::Threshold => signed_odd_coeffs(k)[j].clone(),
                FamilyId::BoxedThreshold => boxed_coeffs(k)[j].clone(),
            };
            &weights[k] * c
        })
        .sum()
}

/// `χ_{BT_n}` assembled directly from the boxed chains
/// `(t-3)(t-5)...(t-(2k+1))`, without shifting.
pub fn chi_boxed_threshold_direct(n: usize) -> Polynomial {
    if n <= 1 {
        return chi_boxed_threshold(n);
    }
    chain_weights(n)
        .iter()
        .enumerate()
        .skip(1)
        .fold(Polynomial::zero(), |acc, (k, w)| &acc + &boxed_chain(k).scale(w))
}

/// `r(BT_n) = 4 a(n) + Σ_{k=1}^{n} 4 (k! - (k-1)!) (k S(n,k) - n S(n-1,k-1))`.
///
/// Only valid for `n >= 2` (at `n = 1` the expression gives 4, not 3).
pub fn regions_boxed(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::DomainTooSmall {
            what: "the boxed region formula",
            n,
            min: 2,
        });
    }
    let t = SequenceTable::new(n);
    let four = BigInt::from(4);
    let mut total = &four * t.ordered_bell(n);
    for k in 1..=n {
        let fall = factorial(k) - factorial(k - 1);
        let inner = BigInt::from(k) * t.stirling2(n, k) - BigInt::from(n) * t.stirling2(n - 1, k - 1);
        total += &four * fall * inner;
    }
    Ok(total)
}

/// `r(T_n) = 2 (a(n) - n a(n-1))`; `r(T_0) = r(T_1) = 1`.
pub fn regions_threshold(n: usize) -> BigInt {
    if n < 2 {
        return BigInt::one();
    }
    let t = SequenceTable::new(n);
    BigInt::from(2) * (t.ordered_bell(n) - BigInt::from(n) * t.ordered_bell(n - 1))
}

/// `r(T_n) = Σ_{k=1}^{n-1} 2^k (n-k) A(n-1, k-1)`, for `n >= 2`.
pub fn regions_threshold_eulerian(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::DomainTooSmall {
            what: "the Eulerian region formula",
            n,
            min: 2,
        });
    }
    let t = SequenceTable::new(n - 1);
    Ok((1..n)
        .map(|k| (BigInt::one() << k) * BigInt::from(n - k) * t.eulerian(n - 1, k as i64 - 1))
        .sum())
}

/// Region count for any `n`, falling back to direct values where the closed
/// forms do not apply: `r(T_0) = r(T_1) = 1`, `r(BT_0) = 1`, `r(BT_1) = 3`.
pub fn region_count(family: FamilyId, n: usize) -> BigInt {
    match (family, n) {
        (FamilyId::Threshold, _) => regions_threshold(n),
        (FamilyId::BoxedThreshold, 0) => BigInt::one(),
        (FamilyId::BoxedThreshold, 1) => BigInt::from(3),
        (FamilyId::BoxedThreshold, _) => regions_boxed(n).expect("n >= 2"),
    }
}

/// Bounded-region count `(-1)^n χ(1)` from the closed-form polynomial.
pub fn bounded_region_count(family: FamilyId, n: usize) -> BigInt {
    sign_power(n) * chi(family, n).eval_i64(1)
}

fn egf_to_integers(series: &TruncatedSeries) -> Result<Vec<BigInt>> {
    (0..=series.order())
        .map(|k| {
            let v = series.egf_coeff(k);
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::NonIntegerEGFCoefficient {
                    index: k,
                    value: v.to_string(),
                })
            }
        })
        .collect()
}

/// `r(BT_n)` for `n = 0..=n_max` from `e^{2x} (1 - x) / (2 - e^x)^2`.
pub fn regions_boxed_via_egf(n_max: usize) -> Result<Vec<BigInt>> {
    let x = TruncatedSeries::variable(n_max);
    let one = TruncatedSeries::one(n_max);
    let two = BigRational::from_integer(BigInt::from(2));
    let e_x = x.exp()?;
    let e_2x = x.scale(&two).exp()?;
    let denom = &TruncatedSeries::constant(n_max, two) - &e_x;
    let series = &(&e_2x * &(&one - &x)) * &(&denom * &denom).inv()?;
    egf_to_integers(&series)
}

/// `χ_{BT_n}(t)` for `n = 0..=n_max` from `(1 + x) (2 e^x - 1)^{(t-3)/2}`,
/// for odd `t >= 3`.
pub fn chi_boxed_via_egf(t: i64, n_max: usize) -> Result<Vec<BigInt>> {
    if t < 3 || t % 2 == 0 {
        return Err(Error::InvalidEvaluationPoint(t));
    }
    let x = TruncatedSeries::variable(n_max);
    let one = TruncatedSeries::one(n_max);
    let two = BigRational::from_integer(BigInt::from(2));
    let base = &x.exp()?.scale(&two) - &one;
    let series = &(&one + &x) * &base.pow(((t - 3) / 2) as u64);
    egf_to_integers(&series)
}
