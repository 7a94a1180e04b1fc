//! Labeled threshold graphs and colored threshold graphs as region labels.
//!
//! A signed permutation builds a graph vertex by vertex: a positive entry is
//! joined to every earlier vertex, a negative one is added isolated. With a
//! `1/2` marker, vertices added after it are colored (blue if positive, red
//! if negative). Peeling runs the construction backwards.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Hyperplane, TypeCSubarrangement};
use crate::error::{Error, Result};
use crate::oracle::SignVector;
use crate::orders::{enumerate_half_orders, enumerate_threshold_orders, HalfOrder, SignedBlock};
use crate::sign::Sign;

/// Simple graph on vertices `1..=n`. Edges stored as `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl LabeledGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidGraph(format!("bad edge {a}-{b} on {n} vertices")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(LabeledGraph { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        LabeledGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        LabeledGraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n + 1]; self.n + 1];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }
}

/// Rewinds a threshold graph into its canonical alternating block sequence.
pub fn peel(g: &LabeledGraph) -> Result<Vec<SignedBlock>> {
    let adj = g.adjacency();
    let mut alive: BTreeSet<usize> = (1..=g.n).collect();
    let mut removed: Vec<SignedBlock> = Vec::new();
    let degree = |v: usize, alive: &BTreeSet<usize>| alive.iter().filter(|&&u| adj[v][u]).count();
    while !alive.is_empty() {
        let size = alive.len();
        let degrees: Vec<(usize, usize)> = alive.iter().map(|&v| (v, degree(v, &alive))).collect();
        if degrees.iter().all(|&(_, d)| d == 0) {
            removed.push(SignedBlock::new(alive.iter().copied().collect(), Sign::Minus));
            break;
        }
        if degrees.iter().all(|&(_, d)| d == size - 1) {
            removed.push(SignedBlock::new(alive.iter().copied().collect(), Sign::Plus));
            break;
        }
        let isolated: Vec<usize> = degrees.iter().filter(|&&(_, d)| d == 0).map(|&(v, _)| v).collect();
        let block = if !isolated.is_empty() {
            SignedBlock::new(isolated, Sign::Minus)
        } else {
            let dominating: Vec<usize> =
                degrees.iter().filter(|&&(_, d)| d == size - 1).map(|&(v, _)| v).collect();
            if dominating.is_empty() {
                return Err(Error::NotThreshold);
            }
            SignedBlock::new(dominating, Sign::Plus)
        };
        for v in &block.elements {
            alive.remove(v);
        }
        removed.push(block);
    }
    removed.reverse();
    Ok(removed)
}

pub fn is_threshold(g: &LabeledGraph) -> bool {
    peel(g).is_ok()
}

/// Entries `(label, sign)` with an optional `1/2` marker position in `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    entries: Vec<(usize, Sign)>,
    half_marker: Option<usize>,
}

impl SignedPermutation {
    pub fn new(entries: Vec<(usize, Sign)>, half_marker: Option<usize>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &(a, _) in &entries {
            if a == 0 || a > n || seen[a] {
                return Err(Error::InvalidSignedPermutation(format!("label {a} in length {n}")));
            }
            seen[a] = true;
        }
        if let Some(m) = half_marker {
            if m > n {
                return Err(Error::InvalidSignedPermutation(format!("marker {m} beyond {n}")));
            }
        }
        Ok(SignedPermutation {
            entries,
            half_marker,
        })
    }

    /// Concatenates the blocks of `h`, placing the marker after its first
    /// `half_position` blocks.
    pub fn from_half_order(h: &HalfOrder) -> Self {
        let mut entries = Vec::with_capacity(h.n());
        let mut marker = 0;
        for (idx, b) in h.blocks().iter().enumerate() {
            entries.extend(b.elements.iter().map(|&a| (a, b.sign)));
            if idx < h.half_position() {
                marker += b.len();
            }
        }
        SignedPermutation {
            entries,
            half_marker: Some(marker),
        }
    }

    pub fn from_blocks(blocks: &[SignedBlock]) -> Self {
        let entries = blocks
            .iter()
            .flat_map(|b| b.elements.iter().map(move |&a| (a, b.sign)))
            .collect();
        SignedPermutation {
            entries,
            half_marker: None,
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, with_marker: bool, rng: &mut R) -> Self {
        let mut labels: Vec<usize> = (1..=n).collect();
        labels.shuffle(rng);
        let entries = labels
            .into_iter()
            .map(|a| (a, Sign::of_bool(rng.gen())))
            .collect();
        let half_marker = with_marker.then(|| rng.gen_range(0..=n));
        SignedPermutation {
            entries,
            half_marker,
        }
    }

    pub fn entries(&self) -> &[(usize, Sign)] {
        &self.entries
    }

    pub fn half_marker(&self) -> Option<usize> {
        self.half_marker
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// The underlying graph, ignoring the marker.
    pub fn decode_graph(&self) -> LabeledGraph {
        let mut edges = BTreeSet::new();
        for (k, &(a, s)) in self.entries.iter().enumerate() {
            if s == Sign::Plus {
                for &(b, _) in &self.entries[..k] {
                    edges.insert((a.min(b), a.max(b)));
                }
            }
        }
        LabeledGraph {
            n: self.n(),
            edges,
        }
    }

    pub fn decode(&self) -> ColoredThresholdGraph {
        let n = self.n();
        let mut colors = vec![Color::None; n + 1];
        if let Some(m) = self.half_marker {
            for &(a, s) in &self.entries[m..] {
                colors[a] = match s {
                    Sign::Plus => Color::Blue,
                    Sign::Minus => Color::Red,
                };
            }
        }
        ColoredThresholdGraph {
            graph: self.decode_graph(),
            colors,
        }
    }

    /// Maximal constant-sign runs, a leading singleton run merged into the
    /// next one. For `n = 1` the single block is negative.
    pub fn canonical_blocks(&self) -> Vec<SignedBlock> {
        let mut runs: Vec<(Vec<usize>, Sign)> = Vec::new();
        for &(a, s) in &self.entries {
            match runs.last_mut() {
                Some((members, sign)) if *sign == s => members.push(a),
                _ => runs.push((vec![a], s)),
            }
        }
        if runs.len() == 1 && runs[0].0.len() == 1 {
            runs[0].1 = Sign::Minus;
        }
        if runs.len() >= 2 && runs[0].0.len() == 1 {
            let (first, _) = runs.remove(0);
            runs[0].0.extend(first);
        }
        runs.into_iter().map(|(m, s)| SignedBlock::new(m, s)).collect()
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.entries.iter().map(|(a, s)| format!("{s}{a}")).collect();
        if let Some(m) = self.half_marker {
            parts.insert(m, "1/2".to_string());
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    None,
    Red,
    Blue,
}

/// A threshold graph whose last-built vertices are colored. `colors[0]` is
/// unused.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct ColoredThresholdGraph {
    graph: LabeledGraph,
    colors: Vec<Color>,
}

impl ColoredThresholdGraph {
    /// Accepts the graph iff the colored vertices can be stripped one at a time,
    /// each red and isolated or blue and dominating at removal, leaving a
    /// threshold graph.
    pub fn new(graph: LabeledGraph, colors: BTreeMap<usize, Color>) -> Result<Self> {
        let n = graph.n;
        let mut col = vec![Color::None; n + 1];
        for (v, c) in colors {
            if v == 0 || v > n {
                return Err(Error::InvalidGraph(format!("color on vertex {v} of {n}")));
            }
            col[v] = c;
        }
        let adj = graph.adjacency();
        let mut alive: BTreeSet<usize> = (1..=n).collect();
        let mut pending: BTreeSet<usize> = (1..=n).filter(|&v| col[v] != Color::None).collect();
        while !pending.is_empty() {
            let removable = pending.iter().copied().find(|&v| {
                let d = alive.iter().filter(|&&u| adj[v][u]).count();
                match col[v] {
                    Color::Red => d == 0,
                    Color::Blue => d + 1 == alive.len(),
                    Color::None => false,
                }
            });
            let v = removable.ok_or(Error::InvalidColoring)?;
            pending.remove(&v);
            alive.remove(&v);
        }
        let rest = LabeledGraph {
            n,
            edges: graph.edges.iter().copied().filter(|(a, b)| alive.contains(a) && alive.contains(b)).collect(),
        };
        if !is_threshold(&rest) {
            return Err(Error::NotThreshold);
        }
        Ok(ColoredThresholdGraph { graph, colors: col })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colored_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c != Color::None).count()
    }

    /// Region of `BT_n`: `x_i + x_j > 0` iff `ij` is an edge, `x_i > 1/2` iff
    /// blue, `x_i < -1/2` iff red.
    pub fn region(&self) -> SignVector {
        let arr = TypeCSubarrangement::boxed_threshold(self.n());
        SignVector::from_signs(arr.hyperplanes().map(|h| match *h {
            Hyperplane::SumZero(i, j) => Sign::of_bool(self.graph.has_edge(i, j)),
            Hyperplane::BoxLow(i) => Sign::of_bool(self.colors[i] != Color::Red),
            Hyperplane::BoxHigh(i) => Sign::of_bool(self.colors[i] == Color::Blue),
            _ => unreachable!("boxed threshold arrangement has only sum and wall hyperplanes"),
        }))
    }
}

pub fn graph_to_region(g: &ColoredThresholdGraph) -> SignVector {
    g.region()
}

/// Region of `T_n` assigned to a threshold graph: `x_i + x_j > 0` iff `ij` is
/// an edge.
pub fn threshold_region_dictionary(g: &LabeledGraph) -> Result<SignVector> {
    if !is_threshold(g) {
        return Err(Error::NotThreshold);
    }
    let arr = TypeCSubarrangement::threshold(g.n);
    Ok(SignVector::from_signs(arr.hyperplanes().map(|h| match *h {
        Hyperplane::SumZero(i, j) => Sign::of_bool(g.has_edge(i, j)),
        _ => unreachable!("threshold arrangement has only sum hyperplanes"),
    })))
}

/// Every colored threshold graph on `[n]`, via the half-order enumeration.
pub fn enumerate_colored(n: usize) -> Box<dyn Iterator<Item = ColoredThresholdGraph>> {
    let with_colors = |sp: SignedPermutation| sp.decode();
    match n {
        0 => Box::new(std::iter::once(SignedPermutation { entries: vec![], half_marker: None }).map(with_colors)),
        1 => Box::new(
            [
                (Sign::Plus, 1),
                (Sign::Minus, 0),
                (Sign::Plus, 0),
            ]
            .into_iter()
            .map(move |(s, m)| with_colors(SignedPermutation {
                entries: vec![(1, s)],
                half_marker: Some(m),
            })),
        ),
        _ => Box::new(
            enumerate_half_orders(n)
                .expect("n >= 2")
                .map(move |h| with_colors(SignedPermutation::from_half_order(&h))),
        ),
    }
}

/// Every labeled threshold graph on `[n]`.
pub fn enumerate_threshold_graphs(n: usize) -> impl Iterator<Item = LabeledGraph> {
    enumerate_threshold_orders(n)
        .into_iter()
        .map(|blocks| SignedPermutation::from_blocks(&blocks).decode_graph())
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    colors: BTreeMap<String, Color>,
}

impl From<ColoredThresholdGraph> for GraphJson {
    fn from(g: ColoredThresholdGraph) -> Self {
        GraphJson {
            n: g.graph.n,
            edges: g.graph.edges.iter().map(|&(a, b)| [a, b]).collect(),
            colors: (1..=g.graph.n)
                .filter(|&v| g.colors[v] != Color::None)
                .map(|v| (v.to_string(), g.colors[v]))
                .collect(),
        }
    }
}

impl TryFrom<GraphJson> for ColoredThresholdGraph {
    type Error = String;
    fn try_from(j: GraphJson) -> std::result::Result<Self, String> {
        let graph = LabeledGraph::new(j.n, j.edges.iter().map(|e| (e[0], e[1]))).map_err(|e| e.to_string())?;
        let mut colors = BTreeMap::new();
        for (label, c) in j.colors {
            let v: usize = label.parse().map_err(|_| format!("bad vertex label {label:?}"))?;
            colors.insert(v, c);
        }
        ColoredThresholdGraph::new(graph, colors).map_err(|e| e.to_string())
    }
}
