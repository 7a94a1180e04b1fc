//! Brute-force ground truth: regions as the distinct sign vectors realized by
//! a finite generic point lattice.
//!
//! The lattice uses `n` magnitudes below `1/2` and `n` above, each with both
//! signs, which is enough to realize every sign/magnitude/marker pattern of a
//! `T_n` or `BT_n` region. For other type-C sub-arrangements completeness is
//! not guaranteed and is only trusted where it agrees with Zaslavsky's count.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Hyperplane, TypeCSubarrangement};
use crate::error::{Error, Result};
use crate::exactmath::{BigInt, BigRational};
use crate::sign::Sign;
use num_traits::{Signed, Zero};

/// Default cap on the number of lattice points visited, `(4n)^n`.
pub const DEFAULT_POINT_CAP: u128 = 100_000_000;

/// Side of every hyperplane of a fixed arrangement, in the arrangement's
/// canonical hyperplane order. `+` is the side where the affine form
/// (`x_i + x_j`, `x_i - x_j`, `x_i`, `x_i + 1/2`, `x_i - 1/2`) is positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    bits: Vec<u64>,
    len: usize,
}

impl SignVector {
    pub fn from_signs(signs: impl IntoIterator<Item = Sign>) -> Self {
        let mut bits = Vec::new();
        let mut len = 0;
        for s in signs {
            if len % 64 == 0 {
                bits.push(0);
            }
            if s.is_plus() {
                bits[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        SignVector { bits, len }
    }

    /// Sign vector of an exact point; fails if the point is on a hyperplane.
    pub fn of_point(arr: &TypeCSubarrangement, point: &[BigRational]) -> Result<Self> {
        if point.len() != arr.dim() {
            return Err(Error::DimensionMismatch {
                expected: arr.dim(),
                got: point.len(),
            });
        }
        let mut signs = Vec::with_capacity(arr.len());
        for h in arr.hyperplanes() {
            let v = h.form(point);
            if v.is_zero() {
                return Err(Error::PointOnHyperplane(h.to_string()));
            }
            signs.push(Sign::of_bool(v.is_positive()));
        }
        Ok(Self::from_signs(signs))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, k: usize) -> Sign {
        assert!(k < self.len, "sign index {k} out of range {}", self.len);
        Sign::of_bool(self.bits[k / 64] >> (k % 64) & 1 == 1)
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len).map(|k| self.get(k))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.signs().try_for_each(|s| write!(f, "{s}"))
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

/// Candidate coordinate values `±j/(2n+2)` and `±(1/2 + j/(2n+2))`,
/// `j = 1..=n`, stored as numerators over `2n + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericLattice {
    n: usize,
    numerators: Vec<i64>,
}

impl GenericLattice {
    pub fn new(n: usize) -> Self {
        let half = n as i64 + 1;
        let mut numerators = Vec::with_capacity(4 * n);
        for j in 1..=n as i64 {
            numerators.extend([j, -j, half + j, -(half + j)]);
        }
        numerators.sort_unstable();
        GenericLattice { n, numerators }
    }

    pub fn denominator(&self) -> i64 {
        2 * self.n as i64 + 2
    }

    /// `1/2` in units of the denominator.
    pub fn half(&self) -> i64 {
        self.n as i64 + 1
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn values(&self) -> Vec<BigRational> {
        let d = BigInt::from(self.denominator());
        self.numerators
            .iter()
            .map(|&v| BigRational::new(BigInt::from(v), d.clone()))
            .collect()
    }

    /// Distinct absolute values except for `v, -v` pairs, none equal to `1/2`.
    pub fn is_generic(&self) -> bool {
        let mut mags: Vec<i64> = self.numerators.iter().map(|v| v.abs()).collect();
        mags.sort_unstable();
        let pairs_ok = mags.chunks(2).all(|c| c.len() == 2 && c[0] == c[1])
            && mags.windows(3).all(|w| !(w[0] == w[1] && w[1] == w[2]));
        let no_dupes = {
            let mut v = self.numerators.clone();
            v.dedup();
            v.len() == self.numerators.len()
        };
        pairs_ok && no_dupes && mags.iter().all(|&m| m != self.half() && m != 0)
    }
}

pub fn build_lattice(n: usize) -> GenericLattice {
    GenericLattice::new(n)
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Maximum number of lattice points; `None` removes the cap.
    pub point_cap: Option<u128>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            point_cap: Some(DEFAULT_POINT_CAP),
        }
    }
}

pub fn enumerate_regions(arr: &TypeCSubarrangement) -> Result<BTreeSet<SignVector>> {
    enumerate_regions_with(arr, &OracleOptions::default())
}

/// All sign vectors realized by lattice points off the arrangement. The first
/// coordinate is sharded across the current rayon pool.
pub fn enumerate_regions_with(
    arr: &TypeCSubarrangement,
    opts: &OracleOptions,
) -> Result<BTreeSet<SignVector>> {
    let n = arr.dim();
    let lattice = GenericLattice::new(n);
    let points = (4 * n as u128).pow(n as u32);
    if let Some(cap) = opts.point_cap {
        if points > cap {
            return Err(Error::SearchSpaceTooLarge { points, cap });
        }
    }
    let hs: Vec<Hyperplane> = arr.hyperplanes().copied().collect();
    if n == 0 {
        return Ok(BTreeSet::from([SignVector::from_signs([])]));
    }
    let half = lattice.half();
    let values = lattice.numerators();
    let shards: Vec<HashSet<SignVector>> = values
        .par_iter()
        .map(|&first| {
            let mut seen = HashSet::new();
            let mut idx = vec![0usize; n];
            let mut x = vec![values[0]; n];
            x[0] = first;
            loop {
                if let Some(sv) = sign_vector_scaled(&hs, &x, half) {
                    seen.insert(sv);
                }
                // odometer over coordinates 1..n
                let mut k = 1;
                while k < n {
                    idx[k] += 1;
                    if idx[k] < values.len() {
                        x[k] = values[idx[k]];
                        break;
                    }
                    idx[k] = 0;
                    x[k] = values[0];
                    k += 1;
                }
                if k >= n {
                    break;
                }
            }
            seen
        })
        .collect();
    Ok(shards.into_iter().flatten().collect())
}

fn sign_vector_scaled(hs: &[Hyperplane], x: &[i64], half: i64) -> Option<SignVector> {
    let mut signs = Vec::with_capacity(hs.len());
    for h in hs {
        let v = h.form_scaled(x, half);
        if v == 0 {
            return None;
        }
        signs.push(Sign::of_bool(v > 0));
    }
    Some(SignVector::from_signs(signs))
}

/// True if the sign vector is strictly between both walls in every
/// coordinate. Only meaningful for arrangements containing the walls.
pub fn inside_box(arr: &TypeCSubarrangement, sv: &SignVector) -> bool {
    arr.hyperplanes().enumerate().all(|(k, h)| match h {
        Hyperplane::BoxLow(_) => sv.get(k) == Sign::Plus,
        Hyperplane::BoxHigh(_) => sv.get(k) == Sign::Minus,
        _ => true,
    })
}

/// Outcome of checking a labeling against the oracle's region set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub missing: usize,
    pub duplicates: usize,
    pub extraneous: usize,
    pub ok: bool,
}

pub fn compare_sets(
    regions: &BTreeSet<SignVector>,
    labels: impl IntoIterator<Item = SignVector>,
) -> Report {
    let mut seen = HashSet::new();
    let mut duplicates = 0;
    let mut extraneous = 0;
    for sv in labels {
        if !seen.insert(sv.clone()) {
            duplicates += 1;
        } else if !regions.contains(&sv) {
            extraneous += 1;
        }
    }
    let missing = regions.iter().filter(|r| !seen.contains(*r)).count();
    Report {
        missing,
        duplicates,
        extraneous,
        ok: missing == 0 && duplicates == 0 && extraneous == 0,
    }
}

/// Runs the oracle on `arr` and compares `labels` against it.
pub fn compare_with(
    arr: &TypeCSubarrangement,
    labels: impl IntoIterator<Item = SignVector>,
) -> Result<Report> {
    Ok(compare_sets(&enumerate_regions(arr)?, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::zaslavsky_regions;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn lattice_examples() {
        let l1 = build_lattice(1);
        assert_eq!(l1.denominator(), 4);
        assert_eq!(l1.numerators(), &[-3, -1, 1, 3]);
        let l2 = build_lattice(2);
        assert_eq!(l2.numerators().len(), 8);
        assert!(l2.is_generic());
        assert!(build_lattice(10).is_generic());
        let bad = GenericLattice {
            n: 1,
            numerators: vec![-2, -1, 1, 2],
        };
        assert!(!bad.is_generic());
    }

    #[test]
    fn small_region_sets() {
        assert_eq!(enumerate_regions(&TypeCSubarrangement::threshold(2)).unwrap().len(), 2);
        assert_eq!(enumerate_regions(&TypeCSubarrangement::boxed_threshold(1)).unwrap().len(), 3);
        assert_eq!(enumerate_regions(&TypeCSubarrangement::boxed_threshold(2)).unwrap().len(), 12);
        assert_eq!(enumerate_regions(&TypeCSubarrangement::empty(0)).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let opts = OracleOptions { point_cap: Some(100) };
        assert!(matches!(
            enumerate_regions_with(&TypeCSubarrangement::threshold(3), &opts),
            Err(Error::SearchSpaceTooLarge { points: 1728, cap: 100 })
        ));
    }

    #[test]
    fn sign_vector_basics() {
        let sv = SignVector::from_signs((0..70).map(|k| Sign::of_bool(k % 3 == 0)));
        assert_eq!(sv.len(), 70);
        assert_eq!(sv.get(0), Sign::Plus);
        assert_eq!(sv.get(69), Sign::Plus);
        assert_eq!(sv.get(68), Sign::Minus);
        assert_eq!(SignVector::from_signs([Sign::Plus, Sign::Minus]).to_string(), "+-");
    }

    #[test]
    fn sign_vector_of_point() {
        let bt2 = TypeCSubarrangement::boxed_threshold(2);
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        // order: sum(1,2), low1, low2, high1, high2
        let sv = SignVector::of_point(&bt2, &[r(3, 10), r(2, 5)]).unwrap();
        assert_eq!(sv.to_string(), "+++--");
        assert!(inside_box(&bt2, &sv));
        assert!(matches!(
            SignVector::of_point(&bt2, &[r(1, 2), r(0, 1)]),
            Err(Error::PointOnHyperplane(_))
        ));
        assert!(matches!(
            SignVector::of_point(&bt2, &[r(1, 3)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn compare_harness_self_test() {
        let bt2 = TypeCSubarrangement::boxed_threshold(2);
        let regions = enumerate_regions(&bt2).unwrap();
        let mut labels: Vec<SignVector> = regions.iter().cloned().collect();
        assert!(compare_sets(&regions, labels.clone()).ok);
        labels[0] = labels[1].clone();
        let rep = compare_sets(&regions, labels);
        assert_eq!((rep.missing, rep.duplicates, rep.extraneous, rep.ok), (1, 1, 0, false));
        // x1 + x2 > 0 with x1 < -1/2 and x1 > 1/2 at once is not a region
        let impossible = SignVector::from_signs([Sign::Plus, Sign::Minus, Sign::Plus, Sign::Plus, Sign::Minus]);
        assert!(!regions.contains(&impossible));
        let extra = compare_sets(&regions, [impossible]);
        assert_eq!(extra.extraneous, 1);
        assert_eq!(extra.missing, 12);
    }

    #[test]
    fn oracle_matches_zaslavsky_on_random_type_c_n3() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..12 {
            let a = TypeCSubarrangement::random_type_c(3, &mut rng);
            for arr in [a.clone(), a.boxed().unwrap()] {
                let chi = arr.char_poly().unwrap();
                let oracle = enumerate_regions(&arr).unwrap().len();
                assert_eq!(BigInt::from(oracle), zaslavsky_regions(&chi, 3), "{arr:?}");
            }
        }
    }

    #[test]
    fn bounded_sign_vectors_count() {
        for n in 1..=3 {
            let arr = TypeCSubarrangement::boxed_threshold(n);
            let inside = enumerate_regions(&arr)
                .unwrap()
                .iter()
                .filter(|sv| inside_box(&arr, sv))
                .count();
            assert_eq!(BigInt::from(inside), arr.bounded_regions().unwrap());
        }
    }
}
