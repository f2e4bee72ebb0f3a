//! State sums: the structure tensor at each trivalent vertex, the edge tensor
//! at each edge, free indices at legs, all indices contracted.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::data::{Flavor, WeightData};
use super::rep::CircleRep;
use super::ring::Elem;
use crate::canon::permutations;
use crate::diagram::{Frame, LinComb, Q};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parity of the permutation listing the half-edges edge by edge.
fn edge_parity(edges: &[(usize, usize)]) -> bool {
    let seq: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut seen = vec![false; seq.len()];
    let mut odd = false;
    for s in 0..seq.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = seq[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

struct Plan<'a> {
    w: &'a WeightData,
    g: &'a Graph,
    edges: Vec<(usize, usize)>,
    /// Vertices whose last slot is fixed by edge `e`.
    completes: Vec<Vec<usize>>,
    nonzero: Vec<(usize, usize, Q)>,
}

/// Sum over all index assignments. `leaf` receives the half-edge indices and
/// the signed product of tensor values.
fn state_sum(w: &WeightData, g: &Graph, mut leaf: impl FnMut(&[usize], Elem)) {
    let edges = g.edge_list();
    let mut last = vec![0usize; g.verts()];
    for (e, &(a, b)) in edges.iter().enumerate() {
        for h in [a, b] {
            if let Some(v) = g.vertex_of(h) {
                last[v] = last[v].max(e);
            }
        }
    }
    let mut completes = vec![Vec::new(); edges.len()];
    for (v, &e) in last.iter().enumerate() {
        completes[e].push(v);
    }
    let d = w.rank();
    let nonzero = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let x = &w.edge()[i][j];
            (!x.is_zero()).then(|| (i, j, x.clone()))
        })
        .collect();
    let plan = Plan {
        w,
        g,
        edges,
        completes,
        nonzero,
    };
    let sign = if w.flavor() == Flavor::Symplectic && edge_parity(&plan.edges) {
        -Q::one()
    } else {
        Q::one()
    };
    let mut idx = vec![0usize; g.half_edges()];
    descend(&plan, 0, &mut idx, sign, &mut leaf);
}

fn descend(plan: &Plan, e: usize, idx: &mut [usize], acc: Q, leaf: &mut impl FnMut(&[usize], Elem)) {
    let w = plan.w;
    if e == plan.edges.len() {
        let ring = w.ring();
        let mut val = ring.scalar(acc);
        for v in 0..plan.g.verts() {
            val = ring.mul(&val, w.t(idx[3 * v], idx[3 * v + 1], idx[3 * v + 2]));
            if val.is_zero() {
                return;
            }
        }
        leaf(idx, val);
        return;
    }
    let (a, b) = plan.edges[e];
    'pairs: for (i, j, x) in &plan.nonzero {
        idx[a] = *i;
        idx[b] = *j;
        for &v in &plan.completes[e] {
            if w.t(idx[3 * v], idx[3 * v + 1], idx[3 * v + 2]).is_zero() {
                continue 'pairs;
            }
        }
        descend(plan, e + 1, idx, &acc * x, leaf);
    }
}

fn loop_factor(w: &WeightData, g: &Graph) -> Q {
    let mut f = Q::one();
    for _ in 0..g.loops() {
        f *= w.loop_value();
    }
    f
}

/// Evaluate a single closed graph given by any representative.
pub fn eval_closed_graph(w: &WeightData, g: &Graph) -> Result<Elem> {
    if g.legs() > 0 {
        return Err(Error::Unsupported("closed evaluation needs a graph without legs".into()));
    }
    let ring = w.ring();
    let mut total = ring.zero();
    state_sum(w, g, |_, v| total.add_assign(&v));
    Ok(total.scale(&loop_factor(w, g)))
}

fn sum_terms(w: &WeightData, parts: Vec<Result<Elem>>) -> Result<Elem> {
    let mut total = w.ring().zero();
    for p in parts {
        total.add_assign(&p?);
    }
    Ok(total)
}

/// Evaluate a combination of closed graphs.
pub fn eval_closed(x: &LinComb, w: &WeightData) -> Result<Elem> {
    if !x.frame().as_skeleton().is_some_and(|s| s.is_empty()) {
        return Err(Error::Unsupported(format!(
            "closed evaluation needs the empty skeleton, got `{}`",
            x.frame()
        )));
    }
    let terms: Vec<(&Graph, &Q)> = x.terms().iter().collect();
    let parts = terms
        .par_iter()
        .map(|(g, c)| Ok(eval_closed_graph(w, g)?.scale(c)))
        .collect();
    sum_terms(w, parts)
}

/// Antisymmetric tensor with one index per leg, legs grouped by label.
///
/// Entries are keyed by the number of legs of each label and the indices of
/// the legs, label 1 first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedTensor {
    labels: usize,
    entries: BTreeMap<(Vec<usize>, Vec<usize>), Elem>,
}

impl MarkedTensor {
    pub fn labels(&self) -> usize {
        self.labels
    }

    pub fn entries(&self) -> &BTreeMap<(Vec<usize>, Vec<usize>), Elem> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The component with the given indices per label.
    pub fn get(&self, groups: &[Vec<usize>]) -> Option<&Elem> {
        let counts = groups.iter().map(Vec::len).collect();
        let idx = groups.iter().flatten().copied().collect();
        self.entries.get(&(counts, idx))
    }

    fn add(&mut self, key: (Vec<usize>, Vec<usize>), v: &Elem) {
        let e = self.entries.entry(key).or_insert_with(|| Elem(vec![Q::zero(); v.0.len()]));
        e.add_assign(v);
    }

    fn prune(&mut self) {
        self.entries.retain(|_, v| !v.is_zero());
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn perm_odd(p: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// Evaluate one labelled graph, raw (leg `l` gets index position `l`).
pub fn eval_marked_graph(w: &WeightData, g: &Graph, labels: usize) -> Result<MarkedTensor> {
    if w.flavor() != Flavor::Symplectic {
        return Err(Error::Unsupported("labelled graphs are evaluated with symplectic data".into()));
    }
    if let Some(&k) = g.keys().iter().find(|&&k| k as usize >= labels) {
        return Err(Error::LabelOutOfRange {
            label: k as usize + 1,
            g: labels,
        });
    }
    let counts: Vec<usize> = (0..labels as u16).map(|k| g.legs_on(k).len()).collect();
    let groups: Vec<Vec<Vec<usize>>> = (0..labels as u16)
        .map(|k| permutations(&(0..g.legs_on(k).len()).collect::<Vec<_>>()))
        .collect();
    let norm = Q::new(BigInt::one(), counts.iter().map(|&c| factorial(c)).product());
    let base = 3 * g.verts();
    let lf = loop_factor(w, g);
    let mut out = MarkedTensor {
        labels,
        entries: BTreeMap::new(),
    };
    state_sum(w, g, |idx, v| {
        let legs = &idx[base..];
        let v = v.scale(&(&lf * &norm));
        // antisymmetrize within each label group
        let mut choice = vec![0usize; labels];
        loop {
            let mut key = Vec::with_capacity(legs.len());
            let mut odd = false;
            for k in 0..labels {
                let r = g.legs_on(k as u16);
                let p = &groups[k][choice[k]];
                odd ^= perm_odd(p);
                key.extend(p.iter().map(|&i| legs[r.start + i]));
            }
            out.add((counts.clone(), key), &if odd { v.neg() } else { v.clone() });
            let mut k = 0;
            while k < labels {
                choice[k] += 1;
                if choice[k] < groups[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == labels {
                break;
            }
        }
    });
    out.prune();
    Ok(out)
}

/// Evaluate a combination of labelled graphs.
pub fn eval_marked(m: &LinComb, w: &WeightData) -> Result<MarkedTensor> {
    let Frame::Marked(labels) = *m.frame() else {
        return Err(Error::Unsupported("eval_marked takes labelled graphs".into()));
    };
    let terms: Vec<(&Graph, &Q)> = m.terms().iter().collect();
    let parts: Vec<Result<MarkedTensor>> = terms
        .par_iter()
        .map(|(g, c)| {
            let mut t = eval_marked_graph(w, g, labels)?;
            for v in t.entries.values_mut() {
                *v = v.scale(c);
            }
            Ok(t)
        })
        .collect();
    let mut out = MarkedTensor {
        labels,
        entries: BTreeMap::new(),
    };
    for p in parts {
        for (k, v) in p?.entries {
            out.add(k, &v);
        }
    }
    out.prune();
    Ok(out)
}

/// Evaluate one graph on circles; legs on circle `k` act through `reps[k]`
/// in circle order and each circle closes into a trace.
pub fn eval_circle_graph(w: &WeightData, g: &Graph, reps: &[&CircleRep]) -> Result<Elem> {
    let base = 3 * g.verts();
    let lf = loop_factor(w, g);
    let ring = w.ring();
    let mut total = ring.zero();
    state_sum(w, g, |idx, v| {
        let mut tr = Q::one();
        for (k, rep) in reps.iter().enumerate() {
            let legs: Vec<usize> = g.legs_on(k as u16).map(|l| idx[base + l]).collect();
            tr *= rep.trace(&legs);
            if tr.is_zero() {
                return;
            }
        }
        total.add_assign(&v.scale(&tr));
    });
    Ok(total.scale(&lf))
}

/// Evaluate a combination on circles with one representation per circle
/// (a single representation is used for every circle).
pub fn eval_circle(x: &LinComb, w: &WeightData, reps: &[CircleRep]) -> Result<Elem> {
    if w.flavor() != Flavor::Lie {
        return Err(Error::Unsupported("circle evaluation needs lie data".into()));
    }
    let s = x
        .frame()
        .as_skeleton()
        .filter(|s| s.all_circles())
        .ok_or_else(|| Error::Unsupported(format!("`{}` is not a union of circles", x.frame())))?;
    let k = s.components().len();
    let reps: Vec<&CircleRep> = match reps.len() {
        1 => vec![&reps[0]; k],
        n if n == k => reps.iter().collect(),
        n => {
            return Err(Error::Weight(format!(
                "{n} representations for {k} circles"
            )))
        }
    };
    for r in &reps {
        if r.algebra_dim() != w.rank() {
            return Err(Error::Weight(format!(
                "representation of a rank {} algebra used with rank {} data",
                r.algebra_dim(),
                w.rank()
            )));
        }
    }
    let terms: Vec<(&Graph, &Q)> = x.terms().iter().collect();
    let parts = terms
        .par_iter()
        .map(|(g, c)| Ok(eval_circle_graph(w, g, &reps)?.scale(c)))
        .collect();
    sum_terms(w, parts)
}
