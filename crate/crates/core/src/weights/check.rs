//! Numerical verification that weight data respects the relations.

use std::fmt;

use super::contract::{eval_circle, eval_closed, eval_closed_graph, eval_marked, eval_marked_graph};
use super::data::{Flavor, WeightData};
use super::rep::CircleRep;
use crate::diagram::{Frame, LinComb};
use crate::enumerate::enumerate;
use crate::error::Result;
use crate::graph::Graph;
use crate::relations::{generate_relations, Move};
use crate::skeleton::Skeleton;
use crate::text::term_line;

/// Outcome of one family of checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub kind: &'static str,
    pub degree: usize,
    pub instances: usize,
    /// Offending instances, rendered as diagram text with their value.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn all_zero(&self) -> bool {
        self.lines.iter().all(|l| l.failures.is_empty())
    }

    pub fn instances(&self) -> usize {
        self.lines.iter().map(|l| l.instances).sum()
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().map(|l| l.failures.len()).sum()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{}\t{}\t{}\t{}", l.kind, l.degree, l.instances, l.failures.len())?;
            for x in &l.failures {
                writeln!(f, "  {x}")?;
            }
        }
        writeln!(f, "total\t{}\t{}", self.instances(), self.failures())
    }
}

fn kind_name(m: &Move) -> &'static str {
    match m {
        Move::Ihx { .. } => "IHX",
        Move::Stu { .. } | Move::StuFromS { .. } => "STU",
        Move::Branching { .. } => "branching",
    }
}

/// The same graph with the last two slots of vertex 0 exchanged.
fn flip_first_vertex(g: &Graph) -> Graph {
    let n = g.half_edges();
    let swap = |h: usize| match h {
        1 => 2,
        2 => 1,
        h => h,
    };
    let partner: Vec<usize> = (0..n).map(|h| swap(g.partner_of(swap(h)))).collect();
    let legs: Vec<(u16, i64)> = g.keys().iter().enumerate().map(|(i, &k)| (k, i as i64)).collect();
    Graph::assemble(g.verts(), &legs, &partner, g.loops()).expect("slot swap keeps the matching")
}

fn push_relations(
    report: &mut Report,
    frame: &Frame,
    degree: usize,
    labelled: bool,
    mut value: impl FnMut(&LinComb) -> Result<Option<String>>,
) -> Result<()> {
    let mut lines: Vec<CheckLine> = Vec::new();
    for r in generate_relations(frame, degree) {
        let kind = match (kind_name(&r.provenance.kind), labelled) {
            ("IHX", true) => "IHX labelled",
            (k, _) => k,
        };
        let idx = match lines.iter().position(|l| l.kind == kind) {
            Some(i) => i,
            None => {
                lines.push(CheckLine {
                    kind,
                    degree,
                    instances: 0,
                    failures: Vec::new(),
                });
                lines.len() - 1
            }
        };
        lines[idx].instances += 1;
        if let Some(v) = value(&r.vector)? {
            let source = term_line(frame, &r.provenance.source, &num_traits::One::one());
            lines[idx].failures.push(format!("{v} from {source}"));
        }
    }
    lines.sort_by_key(|l| l.kind);
    report.lines.extend(lines);
    Ok(())
}

/// Evaluate every generated relation up to degree `n`: IHX in graph
/// cohomology, IHX among labelled graphs for symplectic data, STU and IHX on
/// a circle when a representation is given. AS is checked by flipping a
/// vertex of each enumerated graph.
pub fn check_data(w: &WeightData, n: usize, rep: Option<&CircleRep>) -> Result<Report> {
    let mut report = Report::default();
    let ring = w.ring();
    for k in 1..=n {
        let empty = Frame::empty();
        push_relations(&mut report, &empty, k, false, |v| {
            let e = eval_closed(v, w)?;
            Ok((!e.is_zero()).then(|| ring.display(&e).to_string()))
        })?;
        let mut as_line = CheckLine {
            kind: "AS",
            degree: k,
            instances: 0,
            failures: Vec::new(),
        };
        for g in enumerate(&empty, k) {
            as_line.instances += 1;
            let mut s = eval_closed_graph(w, &g)?;
            s.add_assign(&eval_closed_graph(w, &flip_first_vertex(&g))?);
            if !s.is_zero() {
                as_line.failures.push(term_line(&empty, &g, &num_traits::One::one()));
            }
        }
        report.lines.push(as_line);
        if w.flavor() == Flavor::Symplectic {
            let marked = Frame::Marked(1);
            push_relations(&mut report, &marked, k, true, |v| {
                let t = eval_marked(v, w)?;
                Ok((!t.is_zero()).then(|| format!("{} nonzero components", t.entries().len())))
            })?;
            let mut as_line = CheckLine {
                kind: "AS labelled",
                degree: k,
                instances: 0,
                failures: Vec::new(),
            };
            for g in enumerate(&marked, k).into_iter().filter(|g| g.verts() > 0) {
                as_line.instances += 1;
                let a = eval_marked_graph(w, &g, 1)?;
                let b = eval_marked_graph(w, &flip_first_vertex(&g), 1)?;
                let negated: Vec<_> = b.entries().iter().map(|(k, v)| (k.clone(), v.neg())).collect();
                if a.entries().iter().map(|(k, v)| (k.clone(), v.clone())).collect::<Vec<_>>() != negated {
                    as_line.failures.push(term_line(&marked, &g, &num_traits::One::one()));
                }
            }
            report.lines.push(as_line);
        }
        if let Some(rep) = rep {
            let circle = Frame::skeleton(Skeleton::circles(1));
            push_relations(&mut report, &circle, k, false, |v| {
                let e = eval_circle(v, w, std::slice::from_ref(rep))?;
                Ok((!e.is_zero()).then(|| ring.display(&e).to_string()))
            })?;
        }
    }
    if let Some(rep) = rep {
        let defects = rep.commutator_defects(w);
        report.lines.push(CheckLine {
            kind: "commutator",
            degree: 0,
            instances: w.rank() * w.rank(),
            failures: defects.iter().map(|(a, b)| format!("[rho_{}, rho_{}]", a + 1, b + 1)).collect(),
        });
    }
    Ok(report)
}
