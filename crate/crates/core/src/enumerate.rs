//! Exhaustive enumeration of canonical diagrams of a fixed degree.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::diagram::Frame;
use crate::graph::Graph;

/// All nonzero canonical graphs of degree exactly `n` in `frame`, sorted.
pub fn enumerate(frame: &Frame, n: usize) -> Vec<Graph> {
    let keys = frame.key_count();
    let mut jobs: Vec<(usize, Vec<u16>)> = Vec::new();
    for legs in 0..=2 * n {
        let t = 2 * n - legs;
        if legs > 0 && keys == 0 {
            continue;
        }
        for dist in multisets(keys, legs) {
            jobs.push((t, dist));
        }
    }
    let found: Vec<BTreeSet<Graph>> = jobs
        .par_iter()
        .map(|(t, dist)| {
            let mut out = BTreeSet::new();
            let n_half = 3 * t + dist.len();
            let mut m = Matcher {
                t: *t,
                partner: vec![u16::MAX; n_half],
                touched: vec![false; *t],
            };
            m.run(&mut |p| {
                let g = Graph::new(*t, dist.clone(), p.to_vec(), 0).expect("complete matching");
                if let Some((c, _)) = frame.canonical(&g) {
                    out.insert(c);
                }
            });
            out
        })
        .collect();
    let mut all = BTreeSet::new();
    for f in found {
        all.extend(f);
    }
    all.into_iter().collect()
}

/// Non-decreasing sequences of length `len` over `0..keys`.
fn multisets(keys: usize, len: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(keys: usize, len: usize, from: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for k in from..keys {
            cur.push(k as u16);
            rec(keys, len, k, cur, out);
            cur.pop();
        }
    }
    rec(keys, len, 0, &mut cur, &mut out);
    out
}

struct Matcher {
    t: usize,
    partner: Vec<u16>,
    touched: Vec<bool>,
}

impl Matcher {
    fn run(&mut self, leaf: &mut dyn FnMut(&[u16])) {
        let Some(h) = self.partner.iter().position(|&p| p == u16::MAX) else {
            leaf(&self.partner);
            return;
        };
        let hv = (h < 3 * self.t).then_some(h / 3);
        let h_was = hv.map(|v| self.touched[v]);
        if let Some(v) = hv {
            self.touched[v] = true;
        }
        // untouched vertices are interchangeable, and so are their slots
        let first_free = (0..self.t).find(|&v| !self.touched[v]);
        for q in h + 1..self.partner.len() {
            if self.partner[q] != u16::MAX {
                continue;
            }
            let qv = (q < 3 * self.t).then_some(q / 3);
            let mut q_was = None;
            if let Some(u) = qv {
                if !self.touched[u] {
                    if Some(u) != first_free || q % 3 != 0 {
                        continue;
                    }
                    q_was = Some(false);
                    self.touched[u] = true;
                }
            }
            self.partner[h] = q as u16;
            self.partner[q] = h as u16;
            self.run(leaf);
            self.partner[h] = u16::MAX;
            self.partner[q] = u16::MAX;
            if let (Some(u), Some(false)) = (qv, q_was) {
                self.touched[u] = false;
            }
        }
        if let (Some(v), Some(was)) = (hv, h_was) {
            self.touched[v] = was;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeleton::Skeleton;

    #[test]
    fn low_degrees_of_graph_cohomology() {
        let f = Frame::empty();
        assert_eq!(enumerate(&f, 0), vec![Graph::empty()]);
        let one = enumerate(&f, 1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].verts(), 2);
    }

    #[test]
    fn chord_diagrams_on_one_interval() {
        let f = Frame::skeleton(Skeleton::intervals(1));
        let one = enumerate(&f, 1);
        // the chord, plus the tripod-free degree-one graphs with legs
        assert!(one.iter().any(|g| g.verts() == 0 && g.legs() == 2));
        let two: Vec<_> = enumerate(&f, 2).into_iter().filter(|g| g.verts() == 0).collect();
        // three chord diagrams with two chords on a line
        assert_eq!(two.len(), 3);
    }
}
