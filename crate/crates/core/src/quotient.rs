//! Quotient spaces of diagrams modulo relations, degree by degree.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use crate::diagram::{Frame, LinComb, Q};
use crate::enumerate::enumerate;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{integer_row, Echelon, Row};
use crate::relations::generate_relations;

pub const DEFAULT_CAP: usize = 3;

/// Enumerated diagrams of one degree with the echelonized relation span.
///
/// Columns are the canonical diagrams in decreasing canonical order, so
/// normal forms prefer diagrams with fewer trivalent vertices.
#[derive(Debug)]
pub struct QuotientBasis {
    frame: Frame,
    degree: usize,
    diagrams: Vec<Graph>,
    index: HashMap<Graph, usize>,
    echelon: Echelon,
    relations: usize,
}

impl QuotientBasis {
    pub fn build(frame: &Frame, degree: usize) -> QuotientBasis {
        let mut diagrams = enumerate(frame, degree);
        diagrams.reverse();
        let index: HashMap<Graph, usize> = diagrams.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let rels = generate_relations(frame, degree);
        let relations = rels.len();
        let mut seen: HashSet<Row> = HashSet::new();
        let mut rows: Vec<Row> = Vec::new();
        for r in rels {
            let row = integer_row(
                r.vector
                    .terms()
                    .iter()
                    .map(|(g, c)| (index[g], c.clone())),
            );
            if seen.insert(row.clone()) {
                rows.push(row);
            }
        }
        rows.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut echelon = Echelon::new();
        for row in rows {
            echelon.insert(row);
        }
        QuotientBasis {
            frame: frame.clone(),
            degree,
            diagrams,
            index,
            echelon,
            relations,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Enumerated canonical diagrams, in column order.
    pub fn diagrams(&self) -> &[Graph] {
        &self.diagrams
    }

    pub fn count(&self) -> usize {
        self.diagrams.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn dim(&self) -> usize {
        self.count() - self.rank()
    }

    pub fn relation_count(&self) -> usize {
        self.relations
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    /// Diagrams spanning the quotient (the non-pivot columns).
    pub fn basis(&self) -> Vec<Graph> {
        (0..self.count())
            .filter(|&c| !self.echelon.is_pivot(c))
            .map(|c| self.diagrams[c].clone())
            .collect()
    }

    pub fn column(&self, g: &Graph) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Coordinates of a homogeneous, loop-free combination.
    pub fn coordinates(&self, x: &LinComb) -> Result<BTreeMap<usize, Q>> {
        let mut v = BTreeMap::new();
        for (g, c) in x.terms() {
            let col = self.column(g).ok_or_else(|| {
                Error::Internal(format!("diagram of degree {} missing from the enumeration", g.deg()))
            })?;
            v.insert(col, c.clone());
        }
        Ok(v)
    }

    pub fn from_coordinates(&self, v: &BTreeMap<usize, Q>) -> LinComb {
        let mut out = LinComb::zero(self.frame.clone());
        for (&c, q) in v {
            out.add_canonical(self.diagrams[c].clone(), q.clone());
        }
        out
    }

    pub fn reduce(&self, x: &LinComb) -> Result<LinComb> {
        let v = self.coordinates(x)?;
        Ok(self.from_coordinates(&self.echelon.normal_form(&v)))
    }
}

/// The graded quotient space of a frame, with bases built on demand.
#[derive(Debug)]
pub struct QuotientSpace {
    frame: Frame,
    cap: usize,
    bases: Vec<OnceLock<Arc<QuotientBasis>>>,
}

impl QuotientSpace {
    pub fn new(frame: Frame, cap: usize) -> QuotientSpace {
        QuotientSpace {
            frame,
            cap,
            bases: (0..=cap).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn basis(&self, n: usize) -> Result<Arc<QuotientBasis>> {
        if n > self.cap {
            return Err(Error::CapExceeded {
                degree: n,
                cap: self.cap,
            });
        }
        Ok(self.bases[n]
            .get_or_init(|| Arc::new(QuotientBasis::build(&self.frame, n)))
            .clone())
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.basis(n)?.dim())
    }

    /// Reduce every degree part; vertex-free loops ride along as a factor.
    pub fn normal_form(&self, x: &LinComb) -> Result<LinComb> {
        if x.frame() != &self.frame {
            return Err(Error::FrameMismatch(format!(
                "`{}` reduced in the quotient of `{}`",
                x.frame(),
                self.frame
            )));
        }
        let mut parts: BTreeMap<(usize, u16), LinComb> = BTreeMap::new();
        for (g, c) in x.terms() {
            parts
                .entry((g.deg(), g.loops()))
                .or_insert_with(|| LinComb::zero(self.frame.clone()))
                .add_canonical(g.with_loops(0), c.clone());
        }
        let mut out = LinComb::zero(self.frame.clone());
        for ((n, loops), part) in parts {
            let reduced = self.basis(n)?.reduce(&part)?;
            for (g, c) in reduced.terms() {
                out.add_canonical(g.with_loops(loops), c.clone());
            }
        }
        Ok(out)
    }

    pub fn equal(&self, x: &LinComb, y: &LinComb) -> Result<bool> {
        Ok(self.normal_form(&x.sub(y)?)?.is_zero())
    }
}
