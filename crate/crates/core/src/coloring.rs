//! Complete edge colorings of `K_n`.

use crate::bitset::VertexSet;
use crate::graph::{Adjacency, Graph};
use thiserror::Error;

/// Largest supported color count (colors are stored as bytes).
pub const MAX_COLORS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("a coloring needs at least one color")]
    NoColors,
    #[error("{0} colors requested; at most {MAX_COLORS} are supported")]
    TooManyColors(usize),
    #[error("vertex {vertex} out of range for K_{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("color {color} on pair ({u},{v}) is not below k = {k}")]
    ColorOutOfRange {
        u: usize,
        v: usize,
        color: usize,
        k: usize,
    },
    #[error("pair ({0},{1}) colored twice")]
    DuplicatePair(usize, usize),
    #[error("pair ({0},{1}) has no color")]
    MissingPair(usize, usize),
    #[error("vertex set needs at least 2 members, has {0}")]
    SetTooSmall(usize),
    #[error("vertex {0} is not in the given set")]
    VertexNotInSet(usize),
}

#[inline]
fn pair_index(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

/// A k-coloring of every edge of `K_n`, stored as a dense triangular array
/// plus one adjacency row per (color, vertex).
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    k: usize,
    colors: Vec<u8>,
    class_rows: Vec<Vec<VertexSet>>,
}

impl std::fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EdgeColoring")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("colors", &self.colors)
            .finish()
    }
}

impl EdgeColoring {
    fn check_k(k: usize) -> Result<(), ColoringError> {
        match k {
            0 => Err(ColoringError::NoColors),
            k if k > MAX_COLORS => Err(ColoringError::TooManyColors(k)),
            _ => Ok(()),
        }
    }

    fn from_dense(n: usize, k: usize, colors: Vec<u8>) -> Self {
        let mut class_rows = vec![vec![VertexSet::empty(n); n]; k];
        for v in 1..n {
            for u in 0..v {
                let c = colors[pair_index(u, v)] as usize;
                class_rows[c][u].insert(v);
                class_rows[c][v].insert(u);
            }
        }
        Self {
            n,
            k,
            colors,
            class_rows,
        }
    }

    /// Colors every pair `u < v` with `color(u, v)`.
    pub fn from_fn<F>(n: usize, k: usize, mut color: F) -> Result<Self, ColoringError>
    where
        F: FnMut(usize, usize) -> usize,
    {
        Self::check_k(k)?;
        let mut colors = vec![0u8; n * n.saturating_sub(1) / 2];
        for v in 1..n {
            for u in 0..v {
                let c = color(u, v);
                if c >= k {
                    return Err(ColoringError::ColorOutOfRange { u, v, color: c, k });
                }
                colors[pair_index(u, v)] = c as u8;
            }
        }
        Ok(Self::from_dense(n, k, colors))
    }

    /// Builds a coloring from `(u, v, color)` triples. Every pair must appear
    /// exactly once.
    pub fn from_triples(
        n: usize,
        k: usize,
        triples: &[(usize, usize, usize)],
    ) -> Result<Self, ColoringError> {
        Self::check_k(k)?;
        let mut colors: Vec<Option<u8>> = vec![None; n * n.saturating_sub(1) / 2];
        for &(u, v, c) in triples {
            for w in [u, v] {
                if w >= n {
                    return Err(ColoringError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(ColoringError::SelfLoop(u));
            }
            if c >= k {
                return Err(ColoringError::ColorOutOfRange { u, v, color: c, k });
            }
            let slot = &mut colors[pair_index(u, v)];
            if slot.is_some() {
                return Err(ColoringError::DuplicatePair(u.min(v), u.max(v)));
            }
            *slot = Some(c as u8);
        }
        let mut dense = Vec::with_capacity(colors.len());
        for v in 1..n {
            for u in 0..v {
                match colors[pair_index(u, v)] {
                    Some(c) => dense.push(c),
                    None => return Err(ColoringError::MissingPair(u, v)),
                }
            }
        }
        Ok(Self::from_dense(n, k, dense))
    }

    pub fn monochromatic(n: usize, k: usize, color: usize) -> Result<Self, ColoringError> {
        Self::from_fn(n, k, |_, _| color)
    }

    /// Colors edges of `g` with `color_in` and non-edges with `color_out`.
    pub fn from_graph(
        g: &Graph,
        k: usize,
        color_in: usize,
        color_out: usize,
    ) -> Result<Self, ColoringError> {
        Self::from_fn(g.n(), k, |u, v| {
            if g.has_edge(u, v) {
                color_in
            } else {
                color_out
            }
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Color of the pair `{u, v}`; panics if `u == v`.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> usize {
        assert!(u != v, "no color on a self-pair");
        self.colors[pair_index(u, v)] as usize
    }

    /// Neighbors of `v` in color class `c`.
    #[inline]
    pub fn class_row(&self, c: usize, v: usize) -> &VertexSet {
        &self.class_rows[c][v]
    }

    /// Borrowed view of color class `c` as a graph on `0..n`.
    pub fn class(&self, c: usize) -> ColorClass<'_> {
        assert!(c < self.k, "color {c} out of range");
        ColorClass {
            coloring: self,
            color: c,
        }
    }

    pub fn class_graph(&self, c: usize) -> Graph {
        Graph::from_upper_rows(self.n, &self.class_rows[c])
    }

    /// `(u, v, color)` for every pair `u < v` in lexicographic order.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v, self.color(u, v))))
            .collect()
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edge count of each color inside `s`.
    pub fn color_counts(&self, s: &VertexSet) -> Vec<usize> {
        (0..self.k)
            .map(|c| {
                s.iter()
                    .map(|v| self.class_rows[c][v].intersection_len(s))
                    .sum::<usize>()
                    / 2
            })
            .collect()
    }

    /// A color with the most edges inside `s`, lowest index on ties, with
    /// its edge count.
    pub fn densest_color(&self, s: &VertexSet) -> Result<(usize, usize), ColoringError> {
        let size = s.len();
        if size < 2 {
            return Err(ColoringError::SetTooSmall(size));
        }
        let counts = self.color_counts(s);
        let mut best = 0;
        for (c, &cnt) in counts.iter().enumerate() {
            if cnt > counts[best] {
                best = c;
            }
        }
        Ok((best, counts[best]))
    }

    /// `{u ∈ s \ {v} : color(u, v) = col}`.
    pub fn color_neighborhood(
        &self,
        v: usize,
        col: usize,
        s: &VertexSet,
    ) -> Result<VertexSet, ColoringError> {
        if !s.contains(v) {
            return Err(ColoringError::VertexNotInSet(v));
        }
        Ok(self.class_rows[col][v].intersection(s))
    }

    /// Number of neighbors of `v` inside `s` in color `col`.
    #[inline]
    pub fn color_degree(&self, v: usize, col: usize, s: &VertexSet) -> usize {
        self.class_rows[col][v].intersection_len(s)
    }
}

#[derive(Clone, Copy)]
pub struct ColorClass<'a> {
    coloring: &'a EdgeColoring,
    color: usize,
}

impl ColorClass<'_> {
    pub fn color(&self) -> usize {
        self.color
    }
}

impl Adjacency for ColorClass<'_> {
    #[inline]
    fn order(&self) -> usize {
        self.coloring.n
    }

    #[inline]
    fn row(&self, v: usize) -> &VertexSet {
        &self.coloring.class_rows[self.color][v]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_two_zero_one_one() -> EdgeColoring {
        EdgeColoring::from_triples(3, 2, &[(0, 1, 0), (0, 2, 0), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn densest_color_examples() {
        let c = k3_two_zero_one_one();
        assert_eq!(c.densest_color(&c.full_set()).unwrap(), (0, 2));

        let k2 = EdgeColoring::from_triples(2, 3, &[(0, 1, 2)]).unwrap();
        assert_eq!(k2.densest_color(&k2.full_set()).unwrap(), (2, 1));

        // K_4: color 0 on the path 0-1-2-3, color 1 on its complement (3 edges each).
        let p4 = Graph::path(4);
        let c4 = EdgeColoring::from_graph(&p4, 2, 0, 1).unwrap();
        assert_eq!(c4.color_counts(&c4.full_set()), vec![3, 3]);
        assert_eq!(c4.densest_color(&c4.full_set()).unwrap(), (0, 3));

        let one = VertexSet::from_members(3, [1]).unwrap();
        assert_eq!(c.densest_color(&one), Err(ColoringError::SetTooSmall(1)));
    }

    #[test]
    fn color_neighborhood_examples() {
        let c = k3_two_zero_one_one();
        let all = c.full_set();
        assert_eq!(
            c.color_neighborhood(0, 0, &all).unwrap().to_vec(),
            vec![1, 2]
        );
        assert!(c.color_neighborhood(0, 1, &all).unwrap().is_empty());

        let mono = EdgeColoring::monochromatic(4, 1, 0).unwrap();
        let s = VertexSet::from_members(4, [0, 1, 2]).unwrap();
        assert_eq!(
            mono.color_neighborhood(2, 0, &s).unwrap().to_vec(),
            vec![0, 1]
        );
        assert_eq!(
            mono.color_neighborhood(3, 0, &s),
            Err(ColoringError::VertexNotInSet(3))
        );
    }

    #[test]
    fn completeness_enforced() {
        assert_eq!(
            EdgeColoring::from_triples(3, 2, &[(0, 1, 0), (0, 2, 0)]),
            Err(ColoringError::MissingPair(1, 2))
        );
        assert_eq!(
            EdgeColoring::from_triples(2, 2, &[(0, 1, 0), (1, 0, 1)]),
            Err(ColoringError::DuplicatePair(0, 1))
        );
        assert!(matches!(
            EdgeColoring::from_triples(2, 2, &[(0, 1, 2)]),
            Err(ColoringError::ColorOutOfRange { .. })
        ));
        assert_eq!(
            EdgeColoring::from_fn(3, 0, |_, _| 0),
            Err(ColoringError::NoColors)
        );
    }

    #[test]
    fn class_graph_matches_lookup() {
        let c = EdgeColoring::from_fn(7, 3, |u, v| (u * 5 + v * 3) % 3).unwrap();
        let total: usize = (0..3).map(|col| c.class_graph(col).m()).sum();
        assert_eq!(total, 21);
        for (u, v, col) in c.triples() {
            assert!(c.class_graph(col).has_edge(u, v));
        }
    }
}
