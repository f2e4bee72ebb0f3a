//! Oriented unitrivalent graphs stored as an involution on half-edges.
//!
//! Half-edges `3v, 3v+1, 3v+2` are the slots of trivalent vertex `v`, in
//! cyclic order. Half-edge `3 * verts + i` is leg `i`. Legs carry an
//! attachment key (a skeleton edge or a label) and are stored sorted by key;
//! within one key the storage order is the order along the skeleton edge.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    verts: usize,
    keys: Vec<u16>,
    partner: Vec<u16>,
    loops: u16,
}

impl Graph {
    pub fn new(verts: usize, keys: Vec<u16>, partner: Vec<u16>, loops: u16) -> Result<Graph> {
        let g = Graph {
            verts,
            keys,
            partner,
            loops,
        };
        g.validate()?;
        Ok(g)
    }

    /// The graph with nothing in it.
    pub fn empty() -> Graph {
        Graph {
            verts: 0,
            keys: Vec::new(),
            partner: Vec::new(),
            loops: 0,
        }
    }

    /// Build a graph whose legs are given in arbitrary order.
    ///
    /// `legs[i] = (key, order)` describes the leg at half-edge `3 * verts + i`
    /// of `partner`; legs are re-sorted by `(key, order)` (stable).
    pub fn assemble(
        verts: usize,
        legs: &[(u16, i64)],
        partner: &[usize],
        loops: u16,
    ) -> Result<Graph> {
        let n = 3 * verts + legs.len();
        if partner.len() != n {
            return Err(Error::Structure(format!(
                "expected {n} half-edges, got {}",
                partner.len()
            )));
        }
        let mut order: Vec<usize> = (0..legs.len()).collect();
        order.sort_by_key(|&i| (legs[i].0, legs[i].1));
        let mut new_of_leg = vec![0usize; legs.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_leg[old] = new;
        }
        let base = 3 * verts;
        let map = |h: usize| if h < base { h } else { base + new_of_leg[h - base] };
        let mut p = vec![0u16; n];
        for (h, &q) in partner.iter().enumerate() {
            if q >= n {
                return Err(Error::Structure(format!("half-edge {h} matched to missing {q}")));
            }
            p[map(h)] = map(q) as u16;
        }
        Graph::new(verts, order.iter().map(|&i| legs[i].0).collect(), p, loops)
    }

    fn validate(&self) -> Result<()> {
        let n = 3 * self.verts + self.keys.len();
        if self.partner.len() != n {
            return Err(Error::Structure(format!(
                "expected {n} half-edges, got {}",
                self.partner.len()
            )));
        }
        for (h, &p) in self.partner.iter().enumerate() {
            let p = p as usize;
            if p >= n || p == h || self.partner[p] as usize != h {
                return Err(Error::Structure(format!("half-edge {h} is not matched exactly once")));
            }
        }
        if self.keys.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Structure("legs are not sorted by attachment".into()));
        }
        Ok(())
    }

    pub fn verts(&self) -> usize {
        self.verts
    }

    pub fn legs(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[u16] {
        &self.keys
    }

    pub fn partner(&self) -> &[u16] {
        &self.partner
    }

    pub fn partner_of(&self, h: usize) -> usize {
        self.partner[h] as usize
    }

    pub fn loops(&self) -> u16 {
        self.loops
    }

    pub fn half_edges(&self) -> usize {
        self.partner.len()
    }

    pub fn leg_half(&self, i: usize) -> usize {
        3 * self.verts + i
    }

    /// `Some(v)` if half-edge `h` is a slot of trivalent vertex `v`.
    pub fn vertex_of(&self, h: usize) -> Option<usize> {
        (h < 3 * self.verts).then_some(h / 3)
    }

    pub fn leg_of(&self, h: usize) -> Option<usize> {
        (h >= 3 * self.verts).then(|| h - 3 * self.verts)
    }

    /// Half the number of univalent and trivalent vertices.
    pub fn degree(&self) -> Result<usize> {
        let total = self.verts + self.keys.len();
        if total % 2 != 0 {
            return Err(Error::Structure(format!(
                "odd number of graph vertices ({total})"
            )));
        }
        Ok(total / 2)
    }

    /// Degree of a well-formed graph (the half-edge count forces evenness).
    pub fn deg(&self) -> usize {
        (self.verts + self.keys.len()) / 2
    }

    /// Leg indices attached to `key`, in storage order.
    pub fn legs_on(&self, key: u16) -> std::ops::Range<usize> {
        let lo = self.keys.partition_point(|&k| k < key);
        let hi = self.keys.partition_point(|&k| k <= key);
        lo..hi
    }

    pub fn with_loops(&self, loops: u16) -> Graph {
        Graph {
            loops,
            ..self.clone()
        }
    }

    /// Same graph with every leg key passed through `f` (must stay sorted
    /// after the stable re-sort performed here).
    pub fn rekey(&self, f: impl Fn(u16) -> u16) -> Graph {
        let legs: Vec<(u16, i64)> = self
            .keys
            .iter()
            .enumerate()
            .map(|(i, &k)| (f(k), i as i64))
            .collect();
        let partner: Vec<usize> = self.partner.iter().map(|&p| p as usize).collect();
        Graph::assemble(self.verts, &legs, &partner, self.loops).expect("rekeying keeps matching")
    }

    /// Disjoint union; the legs of `other` get their keys shifted by `offset`.
    pub fn union(&self, other: &Graph, offset: u16) -> Graph {
        let v = self.verts + other.verts;
        let base_a = 3 * self.verts;
        let base_b = 3 * other.verts;
        let la = self.keys.len();
        // new half-edge layout: a slots, b slots, a legs, b legs
        let map_a = |h: usize| if h < base_a { h } else { 3 * v + (h - base_a) };
        let map_b = |h: usize| {
            if h < base_b {
                base_a + h
            } else {
                3 * v + la + (h - base_b)
            }
        };
        let n = 3 * v + la + other.keys.len();
        let mut partner = vec![0usize; n];
        for (h, &p) in self.partner.iter().enumerate() {
            partner[map_a(h)] = map_a(p as usize);
        }
        for (h, &p) in other.partner.iter().enumerate() {
            partner[map_b(h)] = map_b(p as usize);
        }
        let mut legs: Vec<(u16, i64)> = self.keys.iter().enumerate().map(|(i, &k)| (k, i as i64)).collect();
        legs.extend(
            other
                .keys
                .iter()
                .enumerate()
                .map(|(i, &k)| (k + offset, (la + i) as i64)),
        );
        Graph::assemble(v, &legs, &partner, self.loops + other.loops)
            .expect("union of well-formed graphs")
    }

    /// Reverse the storage order of the legs on each key in `keys`.
    pub fn reverse_keys(&self, keys: &[u16]) -> Graph {
        let legs: Vec<(u16, i64)> = self
            .keys
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                if keys.contains(&k) {
                    (k, -(i as i64))
                } else {
                    (k, i as i64)
                }
            })
            .collect();
        let partner: Vec<usize> = self.partner.iter().map(|&p| p as usize).collect();
        Graph::assemble(self.verts, &legs, &partner, self.loops).expect("reordering keeps matching")
    }

    /// Edges as `(min, max)` half-edge pairs, sorted.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter_map(|h| {
                let p = self.partner[h] as usize;
                (h < p).then_some((h, p))
            })
            .collect()
    }

    /// Connected components of the graph, each a sorted list of vertex
    /// indices and leg indices.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.verts + self.keys.len();
        let node = |h: usize| if h < 3 * self.verts { h / 3 } else { self.verts + (h - 3 * self.verts) };
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            let (mut vs, mut ls) = (Vec::new(), Vec::new());
            while let Some(x) = stack.pop() {
                let halves: Vec<usize> = if x < self.verts {
                    vs.push(x);
                    (3 * x..3 * x + 3).collect()
                } else {
                    ls.push(x - self.verts);
                    vec![3 * self.verts + (x - self.verts)]
                };
                for h in halves {
                    let y = node(self.partner[h] as usize);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            vs.sort_unstable();
            ls.sort_unstable();
            out.push((vs, ls));
        }
        out
    }
}

/// Raw, unsorted builder for graphs described half-edge by half-edge.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    verts: usize,
    legs: Vec<(u16, i64)>,
    edges: Vec<(Half, Half)>,
    loops: u16,
}

/// A half-edge reference used by [`GraphBuilder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Half {
    Slot(usize, usize),
    Leg(usize),
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self) -> usize {
        self.verts += 1;
        self.verts - 1
    }

    pub fn leg(&mut self, key: u16, order: i64) -> usize {
        self.legs.push((key, order));
        self.legs.len() - 1
    }

    pub fn edge(&mut self, a: Half, b: Half) -> &mut Self {
        self.edges.push((a, b));
        self
    }

    pub fn loops(&mut self, k: u16) -> &mut Self {
        self.loops = k;
        self
    }

    pub fn build(&self) -> Result<Graph> {
        let n = 3 * self.verts + self.legs.len();
        let idx = |h: Half| -> Result<usize> {
            match h {
                Half::Slot(v, s) if v < self.verts && s < 3 => Ok(3 * v + s),
                Half::Leg(l) if l < self.legs.len() => Ok(3 * self.verts + l),
                other => Err(Error::Structure(format!("unknown half-edge {other:?}"))),
            }
        };
        let mut partner = vec![usize::MAX; n];
        for &(a, b) in &self.edges {
            let (a, b) = (idx(a)?, idx(b)?);
            if a == b || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::Structure(format!(
                    "half-edge {} or {} matched more than once",
                    a.min(b),
                    a.max(b)
                )));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(h) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(Error::Structure(format!("half-edge {h} is unmatched")));
        }
        Graph::assemble(self.verts, &self.legs, &partner, self.loops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn theta() -> Graph {
        let mut b = GraphBuilder::new();
        let (u, v) = (b.vertex(), b.vertex());
        for s in 0..3 {
            b.edge(Half::Slot(u, s), Half::Slot(v, s));
        }
        b.build().unwrap()
    }

    #[test]
    fn theta_has_degree_one() {
        assert_eq!(theta().degree().unwrap(), 1);
        assert_eq!(Graph::empty().degree().unwrap(), 0);
    }

    #[test]
    fn unmatched_slot_is_structural_error() {
        let mut b = GraphBuilder::new();
        let (u, v) = (b.vertex(), b.vertex());
        b.edge(Half::Slot(u, 0), Half::Slot(v, 0));
        b.edge(Half::Slot(u, 1), Half::Slot(v, 1));
        assert!(matches!(b.build(), Err(Error::Structure(_))));
        assert!(Graph::new(1, vec![], vec![1, 0, 2], 0).is_err());
    }

    #[test]
    fn assemble_sorts_legs() {
        // chord from key 1 to key 0
        let g = Graph::assemble(0, &[(1, 0), (0, 0)], &[1, 0], 0).unwrap();
        assert_eq!(g.keys(), &[0, 1]);
        assert_eq!(g.partner(), &[1, 0]);
    }

    #[test]
    fn union_adds_degrees_and_offsets_keys() {
        let chord = Graph::assemble(0, &[(0, 0), (0, 1)], &[1, 0], 0).unwrap();
        let u = theta().union(&chord, 2);
        assert_eq!(u.deg(), 2);
        assert_eq!(u.keys(), &[2, 2]);
        assert_eq!(u.components().len(), 2);
    }
}
