//! Signed ordered partitions ("half-orders") labeling the regions of `BT_n`.
//!
//! A region determines a total order on the blocks of `±[n]` together with
//! `±1/2`, symmetric under negation, so only the half after the midpoint is
//! kept: blocks `B_1 < ... < B_k` partitioning `[n]`, each with a sign, and the
//! number of blocks that precede `1/2`. Every region yields exactly one of
//! three canonical shapes:
//!
//! * **Form 1**: `1/2 < B_1 < ... < B_k`, signs alternating.
//! * **Form 2**: `B_1 < ... < B_l < 1/2 < B_{l+1} < ... < B_k`, `|B_1| > 1`,
//!   signs alternating on each side of `1/2` (split into 2a when no block
//!   follows `1/2` and 2b otherwise).
//! * **Form 3**: `B_1 < 1/2 < B_2 < ... < B_k`, `|B_1| = 1`, `B_1` and `B_2`
//!   of equal sign, alternating from `B_2` on.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::TypeCSubarrangement;
use crate::combinat::SequenceTable;
use crate::error::{Error, Result};
use crate::exactmath::{factorial, BigInt, BigRational};
use crate::oracle::SignVector;
use crate::sign::Sign;

/// A nonempty subset of `[n]` carrying a sign. Elements are kept ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedBlock {
    pub elements: Vec<usize>,
    pub sign: Sign,
}

impl SignedBlock {
    pub fn new(mut elements: Vec<usize>, sign: Sign) -> Self {
        elements.sort_unstable();
        SignedBlock { elements, sign }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl fmt::Display for SignedBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.sign)?;
        for (k, e) in self.elements.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormTag {
    Form1,
    Form2,
    Form3,
}

/// The second half of a region's block order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "HalfOrderJson")]
pub struct HalfOrder {
    blocks: Vec<SignedBlock>,
    half_position: usize,
}

#[derive(Deserialize)]
struct HalfOrderJson {
    blocks: Vec<SignedBlock>,
    half_position: usize,
}

impl TryFrom<HalfOrderJson> for HalfOrder {
    type Error = String;
    fn try_from(j: HalfOrderJson) -> std::result::Result<Self, String> {
        HalfOrder::new(j.blocks, j.half_position).map_err(|e| e.to_string())
    }
}

impl HalfOrder {
    /// Checks that the blocks partition `[n]` (with `n` the total size) and
    /// that the marker position is in range. Canonical form is not required;
    /// see [`HalfOrder::classify_form`].
    pub fn new(blocks: Vec<SignedBlock>, half_position: usize) -> Result<Self> {
        let blocks: Vec<SignedBlock> = blocks
            .into_iter()
            .map(|b| SignedBlock::new(b.elements, b.sign))
            .collect();
        let n: usize = blocks.iter().map(SignedBlock::len).sum();
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::NotAPartition(n));
            }
            for &e in &b.elements {
                if e == 0 || e > n || seen[e] {
                    return Err(Error::NotAPartition(n));
                }
                seen[e] = true;
            }
        }
        if half_position > blocks.len() {
            return Err(Error::NotCanonical(format!(
                "marker position {half_position} beyond {} blocks",
                blocks.len()
            )));
        }
        Ok(HalfOrder {
            blocks,
            half_position,
        })
    }

    pub fn blocks(&self) -> &[SignedBlock] {
        &self.blocks
    }

    /// Number of blocks strictly before the `1/2` marker.
    pub fn half_position(&self) -> usize {
        self.half_position
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(SignedBlock::len).sum()
    }

    fn alternating(blocks: &[SignedBlock]) -> bool {
        blocks.windows(2).all(|w| w[0].sign != w[1].sign)
    }

    pub fn classify_form(&self) -> Result<FormTag> {
        let b = &self.blocks;
        let m = self.half_position;
        let k = b.len();
        if k > 0 && m == 0 && Self::alternating(b) {
            return Ok(FormTag::Form1);
        }
        if m >= 1 && b[0].len() > 1 && Self::alternating(&b[..m]) && Self::alternating(&b[m..]) {
            return Ok(FormTag::Form2);
        }
        if m == 1 && k >= 2 && b[0].len() == 1 && b[0].sign == b[1].sign && Self::alternating(&b[1..])
        {
            return Ok(FormTag::Form3);
        }
        Err(Error::NotCanonical(self.to_string()))
    }

    /// A representative point: `x_a = ±c_i` for `a` in block `i`, with
    /// `c_i = i/(2n+2)` before the marker and `1/2 + (i-m)/(2n+2)` after it.
    pub fn to_point(&self) -> Vec<BigRational> {
        let n = self.n();
        let denom = BigInt::from(2 * n + 2);
        let mut point = vec![BigRational::zero(); n];
        for (idx, block) in self.blocks.iter().enumerate() {
            let i = idx + 1;
            let numer = if idx < self.half_position {
                i
            } else {
                n + 1 + (i - self.half_position)
            };
            let mut c = BigRational::new(BigInt::from(numer), denom.clone());
            if block.sign == Sign::Minus {
                c = -c;
            }
            for &a in &block.elements {
                point[a - 1] = c.clone();
            }
        }
        point
    }

    /// Sign vector of the labeled region over `BT_n`'s hyperplanes.
    pub fn region(&self) -> SignVector {
        let arr = TypeCSubarrangement::boxed_threshold(self.n());
        SignVector::of_point(&arr, &self.to_point()).expect("representative points are generic")
    }
}

impl fmt::Display for HalfOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (idx, b) in self.blocks.iter().enumerate() {
            if idx == self.half_position {
                write!(f, "1/2 ")?;
            }
            write!(f, "{b}")?;
            if idx + 1 < self.blocks.len() {
                write!(f, " ")?;
            }
        }
        if self.half_position == self.blocks.len() {
            write!(f, " 1/2")?;
        }
        write!(f, "]")
    }
}

pub fn classify_form(h: &HalfOrder) -> Result<FormTag> {
    h.classify_form()
}

pub fn order_to_point(h: &HalfOrder) -> Vec<BigRational> {
    h.to_point()
}

/// All ordered set partitions of `[n]`, deterministic order.
pub fn ordered_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(rest: &[usize], cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let m = rest.len();
        for mask in 1u32..(1 << m) {
            let block: Vec<usize> = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| rest[b]).collect();
            let remaining: Vec<usize> = (0..m).filter(|b| mask >> b & 1 == 0).map(|b| rest[b]).collect();
            cur.push(block);
            go(&remaining, cur, out);
            cur.pop();
        }
    }
    let elements: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    go(&elements, &mut Vec::new(), &mut out);
    out
}

fn signed(parts: &[Vec<usize>], signs: impl Fn(usize) -> Sign) -> Vec<SignedBlock> {
    parts
        .iter()
        .enumerate()
        .map(|(i, p)| SignedBlock::new(p.clone(), signs(i)))
        .collect()
}

fn alternate_from(start: Sign, offset: usize) -> Sign {
    if offset.is_multiple_of(2) {
        start
    } else {
        -start
    }
}

const SIGNS: [Sign; 2] = [Sign::Plus, Sign::Minus];

/// Every canonical half-order on `[n]`, once each, grouped Form 1, Form 2a,
/// Form 2b, Form 3.
pub fn enumerate_half_orders(n: usize) -> Result<impl Iterator<Item = HalfOrder>> {
    if n < 2 {
        return Err(Error::DomainTooSmall {
            what: "half-order enumeration",
            n,
            min: 2,
        });
    }
    let parts = ordered_partitions(n);
    let wide_first: Vec<Vec<Vec<usize>>> = parts.iter().filter(|p| p[0].len() > 1).cloned().collect();
    let single_first: Vec<Vec<Vec<usize>>> = parts.iter().filter(|p| p[0].len() == 1).cloned().collect();

    let form1 = parts.clone().into_iter().flat_map(|p| {
        SIGNS.into_iter().map(move |s| HalfOrder {
            blocks: signed(&p, |i| alternate_from(s, i)),
            half_position: 0,
        })
    });
    let form2a = wide_first.clone().into_iter().flat_map(|p| {
        SIGNS.into_iter().map(move |s| HalfOrder {
            half_position: p.len(),
            blocks: signed(&p, |i| alternate_from(s, i)),
        })
    });
    let form2b = wide_first.into_iter().flat_map(|p| {
        let k = p.len();
        (1..k).flat_map(move |m| {
            let p = p.clone();
            SIGNS.into_iter().flat_map(move |s1| {
                let p = p.clone();
                SIGNS.into_iter().map(move |s2| HalfOrder {
                    blocks: signed(&p, |i| {
                        if i < m {
                            alternate_from(s1, i)
                        } else {
                            alternate_from(s2, i - m)
                        }
                    }),
                    half_position: m,
                })
            })
        })
    });
    let form3 = single_first.into_iter().flat_map(|p| {
        SIGNS.into_iter().map(move |s| HalfOrder {
            blocks: signed(&p, |i| if i == 0 { s } else { alternate_from(s, i - 1) }),
            half_position: 1,
        })
    });
    Ok(form1.chain(form2a).chain(form2b).chain(form3))
}

/// Counts per canonical form, with Form 2 split by whether a block follows
/// the marker.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormCounts {
    pub form1: BigInt,
    pub form2a: BigInt,
    pub form2b: BigInt,
    pub form3: BigInt,
}

impl FormCounts {
    pub fn total(&self) -> BigInt {
        &self.form1 + &self.form2a + &self.form2b + &self.form3
    }
}

/// Closed forms: `2a(n)`, `2(a(n) - n a(n-1))`,
/// `Σ_k 4 (k! - (k-1)!) (k S(n,k) - n S(n-1,k-1))`, and `2n a(n-1)`.
pub fn count_by_form(n: usize) -> Result<FormCounts> {
    if n < 2 {
        return Err(Error::DomainTooSmall {
            what: "form counts",
            n,
            min: 2,
        });
    }
    let t = SequenceTable::new(n);
    let two = BigInt::from(2);
    let nn = BigInt::from(n);
    let form2b = (1..=n)
        .map(|k| {
            BigInt::from(4)
                * (factorial(k) - factorial(k - 1))
                * (BigInt::from(k) * t.stirling2(n, k) - &nn * t.stirling2(n - 1, k - 1))
        })
        .sum();
    Ok(FormCounts {
        form1: &two * t.ordered_bell(n),
        form2a: &two * (t.ordered_bell(n) - &nn * t.ordered_bell(n - 1)),
        form2b,
        form3: &two * &nn * t.ordered_bell(n - 1),
    })
}

/// Tallies the enumeration stream by form.
pub fn tally_by_form(n: usize) -> Result<FormCounts> {
    let mut counts = FormCounts::default();
    for h in enumerate_half_orders(n)? {
        let slot = match h.classify_form()? {
            FormTag::Form1 => &mut counts.form1,
            FormTag::Form2 if h.half_position == h.blocks.len() => &mut counts.form2a,
            FormTag::Form2 => &mut counts.form2b,
            FormTag::Form3 => &mut counts.form3,
        };
        *slot += BigInt::one();
    }
    Ok(counts)
}

/// Recovers the half-order of the `BT_n` region containing `point`.
///
/// Works from the comparison relation only: `u ≺ v` for signed labels of
/// opposite sign and different magnitude when `x_u < x_v`, and against
/// `±1/2`. Blocks are the classes of same-sign labels with nothing between
/// them; they are ordered by reachability. When exactly one coordinate lies
/// strictly inside `(-1/2, 1/2)`, its block takes the sign of the next block.
pub fn point_to_order(point: &[BigRational]) -> Result<HalfOrder> {
    let n = point.len();
    let arr = TypeCSubarrangement::boxed_threshold(n);
    SignVector::of_point(&arr, point)?;

    // node ids: 2(i-1) is +i, 2(i-1)+1 is -i, 2n is -1/2, 2n+1 is +1/2
    let nodes = 2 * n + 2;
    let neg_half = 2 * n;
    let pos_half = 2 * n + 1;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let value = |u: usize| -> BigRational {
        if u == neg_half {
            -half.clone()
        } else if u == pos_half {
            half.clone()
        } else if u.is_multiple_of(2) {
            point[u / 2].clone()
        } else {
            -point[u / 2].clone()
        }
    };
    let is_label = |u: usize| u < 2 * n;
    let comparable = |u: usize, v: usize| -> bool {
        match (is_label(u), is_label(v)) {
            (true, true) => u % 2 != v % 2 && u / 2 != v / 2,
            (true, false) | (false, true) => true,
            (false, false) => u != v,
        }
    };
    let values: Vec<BigRational> = (0..nodes).map(value).collect();
    let mut less = vec![vec![false; nodes]; nodes];
    for u in 0..nodes {
        for v in 0..nodes {
            if comparable(u, v) && values[u] < values[v] {
                less[u][v] = true;
            }
        }
    }

    // blocks: same-sign labels with no element strictly between them
    let mut block_of = vec![usize::MAX; 2 * n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for a in 0..2 * n {
        if block_of[a] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut members = vec![a];
        block_of[a] = id;
        for b in a + 1..2 * n {
            if block_of[b] != usize::MAX || a % 2 != b % 2 {
                continue;
            }
            let separated =
                (0..nodes).any(|c| (less[a][c] && less[c][b]) || (less[b][c] && less[c][a]));
            if !separated {
                block_of[b] = id;
                members.push(b);
            }
        }
        blocks.push(members);
    }

    let mut reach = less.clone();
    for w in 0..nodes {
        for u in 0..nodes {
            if reach[u][w] {
                for v in 0..nodes {
                    if reach[w][v] {
                        reach[u][v] = true;
                    }
                }
            }
        }
    }
    let block_before = |x: &[usize], y: &[usize]| x.iter().any(|&u| y.iter().any(|&v| reach[u][v]));
    let negate = |u: usize| u ^ 1;

    // keep the member of each {B, -B} pair lying after its negation
    let mut second: Vec<Vec<usize>> = Vec::new();
    let mut middle: Option<Vec<usize>> = None;
    for members in &blocks {
        let neg: Vec<usize> = members.iter().map(|&u| negate(u)).collect();
        if block_before(&neg, members) {
            second.push(members.clone());
        } else if !block_before(members, &neg) {
            // incomparable pair {i}, {-i}: keep the positive representative for now
            if members[0] % 2 == 0 {
                middle = Some(members.clone());
            }
        }
    }
    second.sort_by(|x, y| {
        if block_before(x, y) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });

    let to_block = |members: &[usize], sign: Sign| {
        SignedBlock::new(members.iter().map(|&u| u / 2 + 1).collect(), sign)
    };
    let sign_of = |members: &[usize]| Sign::of_bool(members[0].is_multiple_of(2));
    let mut out: Vec<SignedBlock> = second.iter().map(|m| to_block(m, sign_of(m))).collect();
    let mut half_position = second
        .iter()
        .filter(|m| m.iter().any(|&u| reach[u][pos_half]))
        .count();
    if let Some(mid) = middle {
        let sign = out.first().map_or(Sign::Plus, |b| b.sign);
        out.insert(0, to_block(&mid, sign));
        half_position += 1;
    }
    HalfOrder::new(out, half_position)
}

/// Orders labeling the regions of `T_n`: ordered partitions of `[n]` with
/// alternating signs and first block of size at least 2. `n = 1` gives the
/// single order `[-{1}]`, `n = 0` the empty order.
pub fn enumerate_threshold_orders(n: usize) -> Vec<Vec<SignedBlock>> {
    match n {
        0 => vec![Vec::new()],
        1 => vec![vec![SignedBlock::new(vec![1], Sign::Minus)]],
        _ => ordered_partitions(n)
            .into_iter()
            .filter(|p| p[0].len() > 1)
            .flat_map(|p| {
                SIGNS
                    .into_iter()
                    .map(move |s| signed(&p, |i| alternate_from(s, i)))
            })
            .collect(),
    }
}

/// Representative point of a threshold order: `x_a = ±i/(n+1)` for `a` in
/// block `i`.
pub fn threshold_order_to_point(blocks: &[SignedBlock]) -> Vec<BigRational> {
    let n: usize = blocks.iter().map(SignedBlock::len).sum();
    let mut point = vec![BigRational::zero(); n];
    for (idx, b) in blocks.iter().enumerate() {
        let mut c = BigRational::new(BigInt::from(idx + 1), BigInt::from(n + 1));
        if b.sign == Sign::Minus {
            c = -c;
        }
        for &a in &b.elements {
            point[a - 1] = c.clone();
        }
    }
    point
}

/// `true` if every coordinate of `point` is strictly inside `(-1/2, 1/2)`.
pub fn inside_cube(point: &[BigRational]) -> bool {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    point.iter().all(|x| x.abs() < half)
}
