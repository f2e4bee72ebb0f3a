//! Diagrams and exact linear combinations of them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::canon::{canonicalize, KeySym};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::skeleton::{EdgeKind, Skeleton};

pub type Q = BigRational;

/// Where the legs of a graph live: on the edges of a skeleton, or on the
/// labels `1..=g` of a marked graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Frame {
    Skeleton(Arc<Skeleton>),
    Marked(usize),
}

impl Frame {
    pub fn skeleton(s: Skeleton) -> Frame {
        Frame::Skeleton(Arc::new(s))
    }

    pub fn empty() -> Frame {
        Frame::skeleton(Skeleton::empty())
    }

    pub fn as_skeleton(&self) -> Option<&Skeleton> {
        match self {
            Frame::Skeleton(s) => Some(s),
            Frame::Marked(_) => None,
        }
    }

    /// Number of distinct leg keys.
    pub fn key_count(&self) -> usize {
        match self {
            Frame::Skeleton(s) => s.edges().len(),
            Frame::Marked(g) => *g,
        }
    }

    pub fn key_sym(&self, key: u16) -> KeySym {
        match self {
            Frame::Skeleton(s) => {
                if s.edges()[key as usize].kind == EdgeKind::Circle {
                    KeySym::Cyclic
                } else {
                    KeySym::Linear
                }
            }
            Frame::Marked(_) => KeySym::Free,
        }
    }

    /// Canonical representative of `g` in this frame with its sign.
    pub fn canonical(&self, g: &Graph) -> Option<(Graph, i8)> {
        canonicalize(g, |k| self.key_sym(k))
    }

    fn check_keys(&self, g: &Graph) -> Result<()> {
        let n = self.key_count();
        if let Some(&k) = g.keys().iter().find(|&&k| k as usize >= n) {
            return Err(match self {
                Frame::Marked(g) => Error::LabelOutOfRange {
                    label: k as usize + 1,
                    g: *g,
                },
                Frame::Skeleton(_) => Error::UnknownComponent(format!("edge #{k}")),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Frame::Skeleton(s) => write!(f, "{s}"),
            Frame::Marked(g) => write!(f, "marked:g={g}"),
        }
    }
}

/// One chord diagram: a graph in a frame, with a sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub frame: Frame,
    pub graph: Graph,
    pub sign: i8,
}

impl Diagram {
    pub fn new(frame: Frame, graph: Graph) -> Result<Diagram> {
        frame.check_keys(&graph)?;
        Ok(Diagram {
            frame,
            graph,
            sign: 1,
        })
    }

    /// `None` when the diagram is AS-degenerate.
    pub fn canonicalize(&self) -> Option<Diagram> {
        let (graph, s) = self.frame.canonical(&self.graph)?;
        Some(Diagram {
            frame: self.frame.clone(),
            graph,
            sign: self.sign * s,
        })
    }

    pub fn degree(&self) -> Result<usize> {
        self.graph.degree()
    }
}

/// A finite formal sum of canonical diagrams with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinComb {
    frame: Frame,
    terms: BTreeMap<Graph, Q>,
}

impl LinComb {
    pub fn zero(frame: Frame) -> LinComb {
        LinComb {
            frame,
            terms: BTreeMap::new(),
        }
    }

    /// The empty diagram with coefficient one.
    pub fn unit(frame: Frame) -> LinComb {
        let mut x = LinComb::zero(frame);
        x.terms.insert(Graph::empty(), Q::one());
        x
    }

    pub fn from_graph(frame: Frame, g: &Graph, coeff: Q) -> Result<LinComb> {
        let mut x = LinComb::zero(frame);
        x.add_graph(g, &coeff)?;
        Ok(x)
    }

    pub fn from_diagram(d: &Diagram) -> Result<LinComb> {
        LinComb::from_graph(d.frame.clone(), &d.graph, Q::from_integer(d.sign.into()))
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn terms(&self) -> &BTreeMap<Graph, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &Graph) -> Q {
        self.terms.get(g).cloned().unwrap_or_else(Q::zero)
    }

    /// Add `coeff * g`, canonicalizing `g` first.
    pub fn add_graph(&mut self, g: &Graph, coeff: &Q) -> Result<()> {
        self.frame.check_keys(g)?;
        if let Some((c, s)) = self.frame.canonical(g) {
            let v = if s < 0 { -coeff } else { coeff.clone() };
            self.add_canonical(c, v);
        }
        Ok(())
    }

    /// Add a term known to be canonical in this frame.
    pub(crate) fn add_canonical(&mut self, g: Graph, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_frame(&self, other: &LinComb) -> Result<()> {
        if self.frame != other.frame {
            return Err(Error::FrameMismatch(format!(
                "`{}` versus `{}`",
                self.frame, other.frame
            )));
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &Q) -> Result<()> {
        self.same_frame(other)?;
        for (g, v) in &other.terms {
            self.add_canonical(g.clone(), v * c);
        }
        Ok(())
    }

    pub fn add(&self, other: &LinComb) -> Result<LinComb> {
        let mut x = self.clone();
        x.add_scaled(other, &Q::one())?;
        Ok(x)
    }

    pub fn sub(&self, other: &LinComb) -> Result<LinComb> {
        let mut x = self.clone();
        x.add_scaled(other, &-Q::one())?;
        Ok(x)
    }

    pub fn scale(&self, c: &Q) -> LinComb {
        let mut x = LinComb::zero(self.frame.clone());
        if c.is_zero() {
            return x;
        }
        x.terms = self.terms.iter().map(|(g, v)| (g.clone(), v * c)).collect();
        x
    }

    pub fn neg(&self) -> LinComb {
        self.scale(&-Q::one())
    }

    /// Largest degree of a term, 0 for the zero combination.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Graph::deg).max().unwrap_or(0)
    }

    /// The part of degree exactly `n`.
    pub fn homogeneous(&self, n: usize) -> LinComb {
        LinComb {
            frame: self.frame.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| g.deg() == n)
                .map(|(g, v)| (g.clone(), v.clone()))
                .collect(),
        }
    }

    /// Same terms reinterpreted in another frame with the same key layout.
    pub(crate) fn reframe(&self, frame: Frame) -> Result<LinComb> {
        let mut x = LinComb::zero(frame);
        for (g, v) in &self.terms {
            x.add_graph(g, v)?;
        }
        Ok(x)
    }

    /// Bilinear disjoint union. Empty skeleta act on everything; two marked
    /// frames must have the same number of labels.
    pub fn disjoint_union(&self, other: &LinComb) -> Result<LinComb> {
        let (frame, offset) = match (&self.frame, &other.frame) {
            (Frame::Skeleton(a), Frame::Skeleton(b)) => {
                (Frame::skeleton(a.union(b)?), a.edges().len() as u16)
            }
            (Frame::Marked(g), Frame::Skeleton(s)) | (Frame::Skeleton(s), Frame::Marked(g))
                if s.is_empty() =>
            {
                (Frame::Marked(*g), 0)
            }
            (Frame::Marked(g), Frame::Marked(h)) if g == h => (Frame::Marked(*g), 0),
            _ => {
                return Err(Error::FrameMismatch(format!(
                    "cannot take the disjoint union of `{}` and `{}`",
                    self.frame, other.frame
                )))
            }
        };
        let mut out = LinComb::zero(frame);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_graph(&a.union(b, offset), &(x * y))?;
            }
        }
        Ok(out)
    }

    /// Reverse the orientation of skeleton component `ci`; each term picks up
    /// `(-1)^m` for the `m` legs on that component.
    pub fn reverse_component(&self, ci: usize) -> Result<LinComb> {
        let s = self
            .frame
            .as_skeleton()
            .ok_or_else(|| Error::Unsupported("marked graphs have no skeleton".into()))?;
        if ci >= s.components().len() {
            return Err(Error::UnknownComponent(format!("component #{ci}")));
        }
        let keys: Vec<u16> = s.component_edges(ci).map(|e| e as u16).collect();
        let frame = Frame::skeleton(s.with_reversed(ci));
        let mut out = LinComb::zero(frame);
        for (g, v) in &self.terms {
            let m = g.keys().iter().filter(|k| keys.contains(k)).count();
            let c = if m % 2 == 1 { -v } else { v.clone() };
            out.add_graph(&g.reverse_keys(&keys), &c)?;
        }
        Ok(out)
    }

    /// Reverse a component given by name.
    pub fn reverse_named(&self, name: &str) -> Result<LinComb> {
        let ci = self
            .frame
            .as_skeleton()
            .and_then(|s| s.component_index(name))
            .ok_or_else(|| Error::UnknownComponent(name.to_string()))?;
        self.reverse_component(ci)
    }
}

/// Render a rational as `p` or `p/q`.
pub fn fmt_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
