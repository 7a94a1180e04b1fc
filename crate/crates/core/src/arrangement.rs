//! Sub-arrangements of the type-C arrangement, optionally boxed by the walls
//! `x_i = ±1/2`, and their characteristic polynomials by finite-field point
//! counting.
//!
//! For odd `q`, the number of points of `Z_q^n` avoiding every hyperplane
//! (reduced mod `q`) agrees with `χ(q)`. [`TypeCSubarrangement::char_poly`]
//! samples that count at `n + 1` odd moduli, interpolates exactly, and checks
//! the result against one more modulus before returning it.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{sign_power, BigInt, BigRational, Polynomial};

/// Default dimension cap for finite-field counting (cost grows like `q^n`).
pub const FINITE_FIELD_N_CAP: usize = 7;

/// One hyperplane of the (boxed) type-C universe. Indices are 1-based and
/// pair kinds satisfy `i < j`.
///
/// The derived ordering sorts by (kind, i, j); sign vectors use it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hyperplane {
    /// `x_i + x_j = 0`
    SumZero(usize, usize),
    /// `x_i - x_j = 0`
    DiffZero(usize, usize),
    /// `x_i = 0`
    CoordZero(usize),
    /// `x_i = -1/2`
    BoxLow(usize),
    /// `x_i = 1/2`
    BoxHigh(usize),
}

impl Hyperplane {
    pub fn is_box(&self) -> bool {
        matches!(self, Hyperplane::BoxLow(_) | Hyperplane::BoxHigh(_))
    }

    fn validate(&self, n: usize) -> Result<()> {
        let ok = match *self {
            Hyperplane::SumZero(i, j) | Hyperplane::DiffZero(i, j) => 1 <= i && i < j && j <= n,
            Hyperplane::CoordZero(i) | Hyperplane::BoxLow(i) | Hyperplane::BoxHigh(i) => {
                1 <= i && i <= n
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidHyperplane(self.to_string(), n))
        }
    }

    /// Value of the affine form at an integer point scaled so that `1/2`
    /// becomes `half`. Positive means the `+` side.
    ///
    /// The forms are `x_i + x_j`, `x_i - x_j`, `x_i`, `x_i + 1/2`, `x_i - 1/2`.
    pub fn form_scaled(&self, x: &[i64], half: i64) -> i64 {
        match *self {
            Hyperplane::SumZero(i, j) => x[i - 1] + x[j - 1],
            Hyperplane::DiffZero(i, j) => x[i - 1] - x[j - 1],
            Hyperplane::CoordZero(i) => x[i - 1],
            Hyperplane::BoxLow(i) => x[i - 1] + half,
            Hyperplane::BoxHigh(i) => x[i - 1] - half,
        }
    }

    /// Same forms at an exact rational point.
    pub fn form(&self, x: &[BigRational]) -> BigRational {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        match *self {
            Hyperplane::SumZero(i, j) => &x[i - 1] + &x[j - 1],
            Hyperplane::DiffZero(i, j) => &x[i - 1] - &x[j - 1],
            Hyperplane::CoordZero(i) => x[i - 1].clone(),
            Hyperplane::BoxLow(i) => &x[i - 1] + half,
            Hyperplane::BoxHigh(i) => &x[i - 1] - half,
        }
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Hyperplane::SumZero(i, j) => write!(f, "x{i}+x{j}=0"),
            Hyperplane::DiffZero(i, j) => write!(f, "x{i}-x{j}=0"),
            Hyperplane::CoordZero(i) => write!(f, "x{i}=0"),
            Hyperplane::BoxLow(i) => write!(f, "x{i}=-1/2"),
            Hyperplane::BoxHigh(i) => write!(f, "x{i}=1/2"),
        }
    }
}

/// A deduplicated set of hyperplanes from the boxed type-C universe in `R^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ArrangementJson", try_from = "ArrangementJson")]
pub struct TypeCSubarrangement {
    n: usize,
    hyperplanes: BTreeSet<Hyperplane>,
}

impl TypeCSubarrangement {
    pub fn new(n: usize, hyperplanes: impl IntoIterator<Item = Hyperplane>) -> Result<Self> {
        let hyperplanes: BTreeSet<Hyperplane> = hyperplanes.into_iter().collect();
        for h in &hyperplanes {
            h.validate(n)?;
        }
        Ok(TypeCSubarrangement { n, hyperplanes })
    }

    pub fn empty(n: usize) -> Self {
        TypeCSubarrangement {
            n,
            hyperplanes: BTreeSet::new(),
        }
    }

    /// `T_n`: all `x_i + x_j = 0`.
    pub fn threshold(n: usize) -> Self {
        let hyperplanes = pairs(n).map(|(i, j)| Hyperplane::SumZero(i, j)).collect();
        TypeCSubarrangement { n, hyperplanes }
    }

    /// `BT_n`: `T_n` with the walls `x_i = ±1/2`.
    pub fn boxed_threshold(n: usize) -> Self {
        Self::threshold(n)
            .boxed()
            .expect("threshold arrangement has no walls")
    }

    /// Every hyperplane of the type-C arrangement (no walls).
    pub fn type_c_universe(n: usize) -> Vec<Hyperplane> {
        let mut out: Vec<Hyperplane> = Vec::new();
        for (i, j) in pairs(n) {
            out.push(Hyperplane::SumZero(i, j));
            out.push(Hyperplane::DiffZero(i, j));
        }
        out.extend((1..=n).map(Hyperplane::CoordZero));
        out
    }

    /// Keeps each type-C hyperplane independently with probability 1/2.
    pub fn random_type_c<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let hyperplanes = Self::type_c_universe(n)
            .into_iter()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        TypeCSubarrangement { n, hyperplanes }
    }

    /// Adds the `2n` walls `x_i = ±1/2`.
    pub fn boxed(&self) -> Result<Self> {
        if self.hyperplanes.iter().any(Hyperplane::is_box) {
            return Err(Error::AlreadyBoxed);
        }
        let mut hyperplanes = self.hyperplanes.clone();
        for i in 1..=self.n {
            hyperplanes.insert(Hyperplane::BoxLow(i));
            hyperplanes.insert(Hyperplane::BoxHigh(i));
        }
        Ok(TypeCSubarrangement {
            n: self.n,
            hyperplanes,
        })
    }

    /// True when all `2n` walls are present.
    pub fn is_boxed(&self) -> bool {
        (1..=self.n).all(|i| {
            self.hyperplanes.contains(&Hyperplane::BoxLow(i))
                && self.hyperplanes.contains(&Hyperplane::BoxHigh(i))
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Hyperplanes in canonical (kind, i, j) order.
    pub fn hyperplanes(&self) -> impl ExactSizeIterator<Item = &Hyperplane> + '_ {
        self.hyperplanes.iter()
    }

    pub fn contains(&self, h: &Hyperplane) -> bool {
        self.hyperplanes.contains(h)
    }

    /// Number of points of `Z_q^n` on none of the hyperplanes reduced mod `q`.
    ///
    /// Walls are the conditions `2 a_i ± 1 ≡ 0 (mod q)`. The iteration is
    /// sharded over the first coordinate on the current rayon pool.
    pub fn count_complement(&self, q: u64) -> Result<BigInt> {
        if q < 3 || q.is_multiple_of(2) {
            return Err(Error::EvenModulus(q));
        }
        let plan = CountPlan::new(self, q as u32);
        Ok(BigInt::from(plan.count()))
    }

    /// Characteristic polynomial by finite-field counting with the default
    /// modulus schedule and dimension cap.
    pub fn char_poly(&self) -> Result<Polynomial> {
        self.char_poly_with(&CharPolyOptions::default())
    }

    pub fn char_poly_with(&self, opts: &CharPolyOptions) -> Result<Polynomial> {
        if let Some(cap) = opts.n_cap {
            if self.n > cap {
                return Err(Error::CapExceeded {
                    what: "finite-field counting",
                    n: self.n,
                    cap,
                });
            }
        }
        let q0 = opts.q0.unwrap_or(2 * self.n as u64 + 3);
        if q0 < 3 || q0.is_multiple_of(2) {
            return Err(Error::EvenModulus(q0));
        }
        let samples = self.n + 1;
        let points = (0..samples)
            .map(|k| {
                let q = q0 + 2 * k as u64;
                Ok((BigInt::from(q), self.count_complement(q)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let chi = Polynomial::interpolate(&points)?;

        let check_q = q0 + 2 * samples as u64;
        let counted = self.count_complement(check_q)?;
        let predicted = chi.eval(&BigInt::from(check_q));
        if counted != predicted {
            return Err(Error::VerificationModulusMismatch {
                modulus: check_q,
                counted: counted.to_string(),
                predicted: predicted.to_string(),
            });
        }
        Ok(chi)
    }

    /// `(-1)^n χ(-1)`.
    pub fn regions(&self) -> Result<BigInt> {
        Ok(zaslavsky_regions(&self.char_poly()?, self.n))
    }

    /// `(-1)^n χ(1)`.
    pub fn bounded_regions(&self) -> Result<BigInt> {
        Ok(zaslavsky_bounded(&self.char_poly()?, self.n))
    }
}

/// `(-1)^n χ(-1)`.
pub fn zaslavsky_regions(chi: &Polynomial, n: usize) -> BigInt {
    sign_power(n) * chi.eval_i64(-1)
}

/// `(-1)^n χ(1)`.
pub fn zaslavsky_bounded(chi: &Polynomial, n: usize) -> BigInt {
    sign_power(n) * chi.eval_i64(1)
}

/// Modulus schedule and cap for [`TypeCSubarrangement::char_poly_with`].
#[derive(Clone, Debug)]
pub struct CharPolyOptions {
    /// First odd modulus; defaults to `2n + 3`.
    pub q0: Option<u64>,
    /// `None` disables the dimension cap.
    pub n_cap: Option<usize>,
}

impl Default for CharPolyOptions {
    fn default() -> Self {
        CharPolyOptions {
            q0: None,
            n_cap: Some(FINITE_FIELD_N_CAP),
        }
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

#[derive(Clone, Copy)]
enum Link {
    /// forbid `-a_j`
    Sum(usize),
    /// forbid `a_j`
    Diff(usize),
}

/// Per-coordinate constraint lists for the odometer kernel. Residues are
/// `0..q`; coordinate `k` only looks at coordinates `< k`.
struct CountPlan {
    q: u32,
    unary: Vec<Vec<u32>>,
    links: Vec<Vec<Link>>,
}

impl CountPlan {
    fn new(arr: &TypeCSubarrangement, q: u32) -> Self {
        let n = arr.n;
        let mut unary = vec![Vec::new(); n];
        let mut links = vec![Vec::new(); n];
        for h in &arr.hyperplanes {
            match *h {
                Hyperplane::SumZero(i, j) => links[j - 1].push(Link::Sum(i - 1)),
                Hyperplane::DiffZero(i, j) => links[j - 1].push(Link::Diff(i - 1)),
                Hyperplane::CoordZero(i) => unary[i - 1].push(0),
                // 2a + 1 = 0  <=>  a = (q - 1) / 2
                Hyperplane::BoxLow(i) => unary[i - 1].push((q - 1) / 2),
                // 2a - 1 = 0  <=>  a = (q + 1) / 2
                Hyperplane::BoxHigh(i) => unary[i - 1].push(q.div_ceil(2)),
            }
        }
        CountPlan { q, unary, links }
    }

    fn forbidden(&self, level: usize, assign: &[u32], out: &mut Vec<u32>) {
        out.clear();
        out.extend_from_slice(&self.unary[level]);
        for link in &self.links[level] {
            out.push(match *link {
                Link::Sum(j) => (self.q - assign[j]) % self.q,
                Link::Diff(j) => assign[j],
            });
        }
        out.sort_unstable();
        out.dedup();
    }

    fn count(&self) -> u128 {
        let n = self.unary.len();
        if n == 0 {
            return 1;
        }
        let mut first = Vec::new();
        self.forbidden(0, &[], &mut first);
        if n == 1 {
            return (self.q as usize - first.len()) as u128;
        }
        let starts: Vec<u32> = (0..self.q).filter(|v| !first.contains(v)).collect();
        starts
            .par_iter()
            .map(|&v| {
                let mut assign = vec![0u32; n];
                assign[0] = v;
                let mut scratch: Vec<Vec<u32>> = vec![Vec::new(); n - 1];
                self.descend(1, &mut assign, &mut scratch)
            })
            .sum()
    }

    /// `scratch[0]` holds this level's forbidden residues; deeper levels use
    /// the rest of the slice.
    fn descend(&self, level: usize, assign: &mut [u32], scratch: &mut [Vec<u32>]) -> u128 {
        let n = assign.len();
        let (forb, deeper) = scratch.split_first_mut().expect("scratch per level");
        self.forbidden(level, assign, forb);
        if level + 1 == n {
            return (self.q as usize - forb.len()) as u128;
        }
        let mut total = 0u128;
        let mut skip = forb.iter().copied().peekable();
        for v in 0..self.q {
            if skip.peek() == Some(&v) {
                skip.next();
                continue;
            }
            assign[level] = v;
            total += self.descend(level + 1, assign, deeper);
        }
        total
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum HyperplaneKind {
    Sum,
    Diff,
    Coord,
    BoxLow,
    BoxHigh,
}

#[derive(Serialize, Deserialize)]
struct HyperplaneJson {
    kind: HyperplaneKind,
    i: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
}

/// Wire form. On input `"boxed": true` adds any missing walls; on output it
/// reports whether all walls are present.
#[derive(Serialize, Deserialize)]
struct ArrangementJson {
    n: usize,
    hyperplanes: Vec<HyperplaneJson>,
    #[serde(default)]
    boxed: bool,
}

impl From<TypeCSubarrangement> for ArrangementJson {
    fn from(arr: TypeCSubarrangement) -> Self {
        let boxed = arr.is_boxed();
        let hyperplanes = arr
            .hyperplanes
            .iter()
            .map(|h| {
                let (kind, i, j) = match *h {
                    Hyperplane::SumZero(i, j) => (HyperplaneKind::Sum, i, Some(j)),
                    Hyperplane::DiffZero(i, j) => (HyperplaneKind::Diff, i, Some(j)),
                    Hyperplane::CoordZero(i) => (HyperplaneKind::Coord, i, None),
                    Hyperplane::BoxLow(i) => (HyperplaneKind::BoxLow, i, None),
                    Hyperplane::BoxHigh(i) => (HyperplaneKind::BoxHigh, i, None),
                };
                HyperplaneJson { kind, i, j }
            })
            .collect();
        ArrangementJson {
            n: arr.n,
            hyperplanes,
            boxed,
        }
    }
}

impl TryFrom<ArrangementJson> for TypeCSubarrangement {
    type Error = String;

    fn try_from(json: ArrangementJson) -> std::result::Result<Self, String> {
        let mut hyperplanes = Vec::with_capacity(json.hyperplanes.len());
        for h in json.hyperplanes {
            let pair = |j: Option<usize>| j.ok_or_else(|| format!("{:?} needs j", h.kind));
            hyperplanes.push(match h.kind {
                HyperplaneKind::Sum => Hyperplane::SumZero(h.i, pair(h.j)?),
                HyperplaneKind::Diff => Hyperplane::DiffZero(h.i, pair(h.j)?),
                HyperplaneKind::Coord => Hyperplane::CoordZero(h.i),
                HyperplaneKind::BoxLow => Hyperplane::BoxLow(h.i),
                HyperplaneKind::BoxHigh => Hyperplane::BoxHigh(h.i),
            });
        }
        if json.boxed {
            for i in 1..=json.n {
                hyperplanes.push(Hyperplane::BoxLow(i));
                hyperplanes.push(Hyperplane::BoxHigh(i));
            }
        }
        TypeCSubarrangement::new(json.n, hyperplanes).map_err(|e| e.to_string())
    }
}
