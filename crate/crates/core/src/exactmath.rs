//! Exact arithmetic substrate: big integers and rationals, dense integer
//! polynomials, exact interpolation and truncated power series.
//!
//! No floating point is used anywhere in this crate; every count is carried as
//! a [`BigInt`] and every intermediate fraction as a [`BigRational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(-1)^e` as a big integer.
pub fn sign_power(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Dense univariate polynomial in `t` with big-integer coefficients.
///
/// Coefficients are stored in ascending degree with no trailing zeros, so the
/// zero polynomial is the empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "PolynomialJson", try_from = "PolynomialJson")]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        Polynomial { coeffs }
    }

    /// The linear polynomial `t - r`.
    pub fn linear_root(r: &BigInt) -> Self {
        Self::new(vec![-r.clone(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^j`; zero beyond the degree.
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Horner evaluation at `t`.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        self.eval(&BigInt::from(t))
    }

    /// Returns `q` with `q(t) = p(t - c)`.
    pub fn shift(&self, c: &BigInt) -> Polynomial {
        // Horner in the basis (t - c): q = (..((a_d)(t - c) + a_{d-1})(t - c) + ..)
        let mut out: Vec<BigInt> = Vec::with_capacity(self.coeffs.len());
        for a in self.coeffs.iter().rev() {
            // out <- out * (t - c) + a
            let mut next = vec![BigInt::zero(); out.len() + 1];
            for (k, o) in out.iter().enumerate() {
                next[k + 1] += o;
                next[k] -= o * c;
            }
            next[0] += a;
            out = next;
        }
        Polynomial::new(out)
    }

    /// `∏ (t - r)` over `roots`; the empty product is `1`.
    pub fn product_chain(roots: &[BigInt]) -> Polynomial {
        roots
            .iter()
            .fold(Polynomial::one(), |acc, r| &acc * &Polynomial::linear_root(r))
    }

    /// The unique polynomial of degree `< points.len()` through `points`,
    /// computed by Newton divided differences over exact rationals.
    ///
    /// Fails with [`Error::NonIntegerCoefficient`] if the result does not have
    /// integer coefficients.
    pub fn interpolate(points: &[(BigInt, BigInt)]) -> Result<Polynomial> {
        for (i, (x, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(y, _)| y == x) {
                return Err(Error::DuplicateAbscissa(x.to_string()));
            }
        }
        let xs: Vec<BigRational> = points
            .iter()
            .map(|(x, _)| BigRational::from_integer(x.clone()))
            .collect();
        let mut table: Vec<BigRational> = points
            .iter()
            .map(|(_, y)| BigRational::from_integer(y.clone()))
            .collect();
        let m = points.len();
        for level in 1..m {
            for i in (level..m).rev() {
                table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        // expand sum_k table[k] * prod_{i<k} (t - x_i), nested from the top
        let mut acc: Vec<BigRational> = Vec::new();
        for k in (0..m).rev() {
            let mut next = vec![BigRational::zero(); acc.len() + 1];
            for (d, a) in acc.iter().enumerate() {
                next[d + 1] += a;
                next[d] -= a * &xs[k];
            }
            next[0] += &table[k];
            acc = next;
        }
        let mut coeffs = Vec::with_capacity(acc.len());
        for (degree, c) in acc.into_iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::NonIntegerCoefficient {
                    degree,
                    value: c.to_string(),
                });
            }
            coeffs.push(c.to_integer());
        }
        Ok(Polynomial::new(coeffs))
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Formats descending, e.g. `t^2 - 5t + 6`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = d == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{d}")?,
            }
        }
        Ok(())
    }
}

/// Wire form: `{"coeffs": ["6", "-5", "1"]}`, ascending degree, decimal strings.
#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    coeffs: Vec<String>,
}

impl From<Polynomial> for PolynomialJson {
    fn from(p: Polynomial) -> Self {
        PolynomialJson {
            coeffs: p.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<PolynomialJson> for Polynomial {
    type Error = String;
    fn try_from(j: PolynomialJson) -> std::result::Result<Self, String> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| format!("bad coefficient {s:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

/// Power series truncated after `x^order`, with exact rational coefficients.
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn new(order: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_integers(order: usize, coeffs: &[i64]) -> Self {
        Self::new(
            order,
            coeffs
                .iter()
                .take(order + 1)
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        Self::new(order, vec![c])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    /// The series `x`.
    pub fn variable(order: usize) -> Self {
        Self::from_integers(order, &[0, 1])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `exp(s)` for `s` with zero constant term, via `f' = s' f`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let n = self.order();
        let mut f = vec![BigRational::zero(); n + 1];
        f[0] = BigRational::one();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * BigRational::from_integer(BigInt::from(k)) * &f[m - k];
                }
            }
            f[m] = acc / BigRational::from_integer(BigInt::from(m));
        }
        Ok(TruncatedSeries { coeffs: f })
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let n = self.order();
        let c0_inv = self.coeffs[0].recip();
        let mut g = vec![BigRational::zero(); n + 1];
        g[0] = c0_inv.clone();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                acc += &self.coeffs[k] * &g[m - k];
            }
            g[m] = -acc * &c0_inv;
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// `s^k` by repeated squaring; `s^0 = 1`.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = TruncatedSeries::one(self.order());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `k! · [x^k]`, the EGF reading of coefficient `k`.
    pub fn egf_coeff(&self, k: usize) -> BigRational {
        self.coeff(k) * BigRational::from_integer(factorial(k))
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn eval_examples() {
        let p = Polynomial::from_i64(&[6, -5, 1]);
        assert_eq!(p.eval_i64(-1), big(12));
        assert_eq!(Polynomial::zero().eval_i64(17), big(0));
        let cube = Polynomial::from_i64(&[-27, 27, -9, 1]);
        assert_eq!(cube.eval_i64(1), big(-8));
    }

    #[test]
    fn shift_examples() {
        let cube = Polynomial::product_chain(&[big(1), big(1), big(1)]);
        assert_eq!(cube.shift(&big(2)), Polynomial::from_i64(&[-27, 27, -9, 1]));
        let p = Polynomial::from_i64(&[4, 0, -3, 7]);
        assert_eq!(p.shift(&big(0)), p);
        assert_eq!(Polynomial::monomial(1).shift(&big(2)), Polynomial::from_i64(&[-2, 1]));
        assert_eq!(Polynomial::zero().shift(&big(5)), Polynomial::zero());
    }

    #[test]
    fn product_chain_examples() {
        assert_eq!(Polynomial::product_chain(&[big(1), big(3)]), Polynomial::from_i64(&[3, -4, 1]));
        assert_eq!(Polynomial::product_chain(&[]), Polynomial::one());
        assert_eq!(Polynomial::product_chain(&[big(3), big(5)]), Polynomial::from_i64(&[15, -8, 1]));
    }

    #[test]
    fn interpolate_examples() {
        let pts = [(big(5), big(6)), (big(7), big(20)), (big(9), big(42))];
        assert_eq!(Polynomial::interpolate(&pts).unwrap(), Polynomial::from_i64(&[6, -5, 1]));
        assert_eq!(
            Polynomial::interpolate(&[(big(0), big(-11))]).unwrap(),
            Polynomial::from_i64(&[-11])
        );
        let sq = [(big(1), big(1)), (big(2), big(4)), (big(3), big(9))];
        assert_eq!(Polynomial::interpolate(&sq).unwrap(), Polynomial::monomial(2));
        assert_eq!(Polynomial::interpolate(&[]).unwrap(), Polynomial::zero());
    }

    #[test]
    fn interpolate_errors() {
        let dup = [(big(1), big(1)), (big(1), big(2))];
        assert!(matches!(Polynomial::interpolate(&dup), Err(Error::DuplicateAbscissa(_))));
        // (0,0), (2,1): slope 1/2
        let frac = [(big(0), big(0)), (big(2), big(1))];
        assert!(matches!(
            Polynomial::interpolate(&frac),
            Err(Error::NonIntegerCoefficient { degree: 1, .. })
        ));
    }

    #[test]
    fn display_matches_table_style() {
        let p = Polynomial::from_i64(&[-27, 27, -9, 1]);
        assert_eq!(p.to_string(), "t^3 - 9t^2 + 27t - 27");
        assert_eq!(Polynomial::from_i64(&[0, -1]).to_string(), "-t");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn polynomial_json_uses_decimal_strings() {
        let p = Polynomial::from_i64(&[6, -5, 1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":["6","-5","1"]}"#);
        let back: Polynomial = serde_json::from_str(r#"{"coeffs":["302751327","-1","0"]}"#).unwrap();
        assert_eq!(back, Polynomial::from_i64(&[302751327, -1]));
        assert!(serde_json::from_str::<Polynomial>(r#"{"coeffs":["1.5"]}"#).is_err());
    }

    #[test]
    fn series_examples() {
        let e = TruncatedSeries::variable(3).exp().unwrap();
        assert_eq!(e.coeffs(), &[rat(1, 1), rat(1, 1), rat(1, 2), rat(1, 6)]);
        let geo = TruncatedSeries::from_integers(3, &[1, -1]).inv().unwrap();
        assert_eq!(geo, TruncatedSeries::from_integers(3, &[1, 1, 1, 1]));
        let two_ex_minus_one = &e.scale(&rat(2, 1)) - &TruncatedSeries::one(3);
        assert_eq!(two_ex_minus_one.pow(0), TruncatedSeries::one(3));
    }

    #[test]
    fn series_errors() {
        assert_eq!(
            TruncatedSeries::variable(4).inv().unwrap_err(),
            Error::NonInvertibleSeries
        );
        assert_eq!(
            TruncatedSeries::one(4).exp().unwrap_err(),
            Error::NonZeroConstantTerm
        );
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial(0), big(1));
        assert_eq!(factorial(10), big(3628800));
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(2, 5), big(0));
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-50i64..50, 0..7).prop_map(|c| Polynomial::from_i64(&c))
    }

    fn small_series() -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-6i64..6, 1..7)
            .prop_map(|c| TruncatedSeries::from_integers(6, &c))
    }

    proptest! {
        #[test]
        fn shift_is_invertible(p in small_poly(), c in -20i64..20) {
            prop_assert_eq!(p.shift(&big(c)).shift(&big(-c)), p);
        }

        #[test]
        fn shift_commutes_with_eval(p in small_poly(), c in -20i64..20, t in -30i64..30) {
            prop_assert_eq!(p.shift(&big(c)).eval_i64(t), p.eval_i64(t - c));
        }

        #[test]
        fn interpolation_inverts_sampling(p in small_poly(), start in -10i64..10, step in 1i64..4) {
            let d = p.degree().unwrap_or(0);
            let pts: Vec<_> = (0..=d as i64)
                .map(|k| {
                    let x = start + k * step;
                    (big(x), p.eval_i64(x))
                })
                .collect();
            prop_assert_eq!(Polynomial::interpolate(&pts).unwrap(), p);
        }

        #[test]
        fn exp_of_negation_is_reciprocal(s in small_series()) {
            let mut s = s;
            s.coeffs[0] = BigRational::zero();
            let prod = &s.exp().unwrap() * &(-&s).exp().unwrap();
            prop_assert_eq!(prod, TruncatedSeries::one(6));
        }

        #[test]
        fn inverse_is_two_sided(s in small_series()) {
            prop_assume!(!s.coeff(0).is_zero());
            prop_assert_eq!(&s * &s.inv().unwrap(), TruncatedSeries::one(6));
        }
    }
}
