//! Bit-level combinatorics of the hypercube graph `Q_n`.
//!
//! Vertices are the integers `0..2^n`; the digit sum decides the side (`U` for
//! even, `V` for odd). Edges join labels that differ in exactly one digit.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{invalid, Result};

/// Largest dimension accepted by the default configuration.
pub const DEFAULT_MAX_N: usize = 8;

/// Hard limit from storing labels in machine words.
pub const MAX_SUPPORTED_N: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    U,
    V,
}

pub fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("hypercube dimension must be at least 1"));
    }
    if n > MAX_SUPPORTED_N {
        return Err(invalid(format!("hypercube dimension {n} exceeds {MAX_SUPPORTED_N}")));
    }
    Ok(())
}

pub fn check_label(label: usize, n: usize) -> Result<()> {
    check_dim(n)?;
    if label >> n != 0 {
        return Err(invalid(format!("vertex {label} is not below 2^{n}")));
    }
    Ok(())
}

fn check_direction(k: usize, n: usize) -> Result<()> {
    if k >= n {
        return Err(invalid(format!("direction {k} is not below n = {n}")));
    }
    Ok(())
}

/// Binary digit `k` of `label`.
#[inline]
pub fn digit(label: usize, k: usize) -> usize {
    (label >> k) & 1
}

/// Flips digit `k`. Unchecked; see [`flip`] for the validating version.
#[inline]
pub fn flip_unchecked(label: usize, k: usize) -> usize {
    label ^ (1 << k)
}

pub fn flip(label: usize, k: usize, n: usize) -> Result<usize> {
    check_label(label, n)?;
    check_direction(k, n)?;
    Ok(flip_unchecked(label, k))
}

/// Parity of digits `0..=k` of `label`.
#[inline]
pub fn par(label: usize, k: usize) -> usize {
    let mask = if k + 1 >= usize::BITS as usize { usize::MAX } else { (1usize << (k + 1)) - 1 };
    ((label & mask).count_ones() & 1) as usize
}

#[inline]
pub fn side(label: usize) -> Side {
    if label.count_ones().is_multiple_of(2) {
        Side::U
    } else {
        Side::V
    }
}

/// Both sides of `Q_n`, each ascending.
pub fn vertex_sets(n: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    check_dim(n)?;
    Ok((0..1usize << n).partition(|&x| side(x) == Side::U))
}

pub(crate) fn u_vertices(n: usize) -> Vec<usize> {
    (0..1usize << n).filter(|&x| side(x) == Side::U).collect()
}

/// An edge `{u, v}` of `Q_n` with `u` on the `U` side and `v = u # k`.
///
/// Ordering is by `(u, v)`, which makes `BTreeMap<Edge, _>` iteration
/// deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub k: usize,
}

impl Edge {
    /// Edge between two labels, given in either order.
    pub fn between(n: usize, a: usize, b: usize) -> Result<Self> {
        check_label(a, n)?;
        check_label(b, n)?;
        let diff = a ^ b;
        if diff.count_ones() != 1 {
            return Err(invalid(format!("{a} and {b} are not adjacent in Q_{n}")));
        }
        let k = diff.trailing_zeros() as usize;
        let (u, v) = if side(a) == Side::U { (a, b) } else { (b, a) };
        Ok(Self { u, v, k })
    }

    /// The edge at `x` in direction `k` (unchecked).
    pub fn at(x: usize, k: usize) -> Self {
        let y = flip_unchecked(x, k);
        if side(x) == Side::U {
            Self { u: x, v: y, k }
        } else {
            Self { u: y, v: x, k }
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// All `n * 2^(n-1)` edges, sorted.
pub fn edges(n: usize) -> Result<Vec<Edge>> {
    check_dim(n)?;
    let mut out: Vec<Edge> =
        u_vertices(n).into_iter().flat_map(|u| (0..n).map(move |k| Edge::at(u, k))).collect();
    out.sort();
    Ok(out)
}

/// The direction class `E_n^(k)`, sorted.
pub fn edges_in_direction(n: usize, k: usize) -> Result<Vec<Edge>> {
    check_dim(n)?;
    check_direction(k, n)?;
    Ok(u_vertices(n).into_iter().map(|u| Edge::at(u, k)).collect())
}

/// Common neighbours of two distinct vertices: empty, or the two corners
/// completing a square.
pub fn common_neighbors(n: usize, x: usize, y: usize) -> Result<Vec<usize>> {
    check_label(x, n)?;
    check_label(y, n)?;
    if x == y {
        return Err(invalid("common neighbours need two distinct vertices"));
    }
    let diff = x ^ y;
    if diff.count_ones() != 2 {
        return Ok(Vec::new());
    }
    let low = diff & diff.wrapping_neg();
    let high = diff ^ low;
    let mut out = vec![x ^ low, x ^ high];
    out.sort_unstable();
    Ok(out)
}

/// A square of `Q_n`: base vertex `x` with `[x]_k = [x]_l = 0` and digits `k < l`.
/// Its corners are `x`, `x#k`, `x#l`, `x#k#l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    pub base: usize,
    pub k: usize,
    pub l: usize,
}

impl Square {
    pub fn corners(&self) -> [usize; 4] {
        let x = self.base;
        [x, x ^ (1 << self.k), x ^ (1 << self.l), x ^ (1 << self.k) ^ (1 << self.l)]
    }

    /// Edges in cyclic order: `x - x#k - x#k#l - x#l - x`.
    pub fn edges(&self) -> [Edge; 4] {
        let x = self.base;
        let xk = x ^ (1 << self.k);
        let xl = x ^ (1 << self.l);
        [Edge::at(x, self.k), Edge::at(xk, self.l), Edge::at(xl, self.k), Edge::at(x, self.l)]
    }
}

/// Every square exactly once, in canonical `(base, k, l)` order.
pub fn squares(n: usize) -> Result<Vec<Square>> {
    check_dim(n)?;
    let mut out = Vec::new();
    for base in 0..1usize << n {
        for k in 0..n {
            if digit(base, k) == 1 {
                continue;
            }
            for l in (k + 1)..n {
                if digit(base, l) == 0 {
                    out.push(Square { base, k, l });
                }
            }
        }
    }
    Ok(out)
}

/// A subgraph of `Q_n` given by its kept edges, on the full vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphMask {
    n: usize,
    edges: BTreeSet<Edge>,
}

impl SubgraphMask {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        check_dim(n)?;
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        for e in &edges {
            let valid = e.u >> n == 0
                && e.k < n
                && e.v == flip_unchecked(e.u, e.k)
                && side(e.u) == Side::U;
            if !valid {
                return Err(invalid(format!("{e:?} is not an edge of Q_{n}")));
            }
        }
        Ok(Self { n, edges })
    }

    pub fn full(n: usize) -> Result<Self> {
        Self::new(n, edges(n)?)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// Keeps the direction classes `k` with `keep[k]` set.
    pub fn from_directions(n: usize, keep: &[bool]) -> Result<Self> {
        if keep.len() != n {
            return Err(invalid("direction flags must have length n"));
        }
        Self::new(n, edges(n)?.into_iter().filter(|e| keep[e.k]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Vertices incident to at least one kept edge.
    pub fn touched_vertices(&self) -> BTreeSet<usize> {
        self.edges.iter().flat_map(|e| [e.u, e.v]).collect()
    }

    /// Connected components over all `2^n` vertices (isolated vertices are
    /// singletons), each sorted, ordered by smallest label.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let size = 1usize << self.n;
        let mut parent: Vec<usize> = (0..size).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..size {
            let root = find(&mut parent, x);
            groups.entry(root).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }

    /// Components that carry at least one edge.
    pub fn edge_components(&self) -> Vec<Vec<usize>> {
        self.components().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// Two adjacent edges of a square present implies all four present.
    pub fn is_square_closed(&self) -> bool {
        squares(self.n).expect("dimension validated").into_iter().all(|sq| {
            let es = sq.edges();
            let present: Vec<bool> = es.iter().map(|e| self.edges.contains(e)).collect();
            let adjacent_pair = (0..4).any(|i| present[i] && present[(i + 1) % 4]);
            !adjacent_pair || present.iter().all(|&p| p)
        })
    }

    /// Each component is a sub-hypercube: its vertex set is closed under
    /// flipping every digit it spans, and it contains every such edge.
    pub fn components_are_subhypercubes(&self) -> bool {
        self.components().into_iter().all(|comp| {
            let set: BTreeSet<usize> = comp.iter().copied().collect();
            let span = comp.iter().fold(0usize, |acc, &x| acc | (x ^ comp[0]));
            let closed = comp.iter().all(|&x| {
                (0..self.n)
                    .filter(|&k| digit(span, k) == 1)
                    .all(|k| set.contains(&flip_unchecked(x, k)) && self.edges.contains(&Edge::at(x, k)))
            });
            closed && set.len() == 1usize << span.count_ones()
        })
    }
}

/// Induced subgraph on vertices with digit `l` equal to 1 (`positive`) or 0.
pub fn half_cube(n: usize, l: usize, positive: bool) -> Result<SubgraphMask> {
    check_dim(n)?;
    check_direction(l, n)?;
    let want = usize::from(positive);
    SubgraphMask::new(
        n,
        edges(n)?.into_iter().filter(|e| e.k != l && digit(e.u, l) == want),
    )
}

/// Inserts `bit` at position `l` of the `(n-1)`-digit label `y`.
pub fn insert_digit(y: usize, l: usize, bit: usize, n: usize) -> Result<usize> {
    check_dim(n)?;
    check_direction(l, n)?;
    if y >> (n - 1) != 0 {
        return Err(invalid(format!("{y} is not below 2^{}", n - 1)));
    }
    if bit > 1 {
        return Err(invalid("inserted digit must be 0 or 1"));
    }
    Ok(insert_digit_unchecked(y, l, bit))
}

#[inline]
pub(crate) fn insert_digit_unchecked(y: usize, l: usize, bit: usize) -> usize {
    let low = y & ((1 << l) - 1);
    let high = (y >> l) << (l + 1);
    high | (bit << l) | low
}

/// Deletes digit `l`; inverse of [`insert_digit`].
#[inline]
pub fn remove_digit(x: usize, l: usize) -> usize {
    let low = x & ((1 << l) - 1);
    let high = (x >> (l + 1)) << l;
    high | low
}
