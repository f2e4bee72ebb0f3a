//! Local relations: IHX, STU and branching, each generated around a given
//! diagram and tagged with where it came from. AS is built into the
//! canonical form.

use rayon::prelude::*;

use crate::diagram::{Frame, LinComb, Q};
use crate::enumerate::enumerate;
use crate::graph::Graph;

/// The local move that produced a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// I + H + X = 0 around the edge joining half-edges `half` and its partner.
    Ihx { half: usize },
    /// T - U - S = 0 for the adjacent legs `first`, `second` on one edge.
    Stu { first: usize, second: usize },
    /// The same relation read from the S term: `leg` meets a trivalent vertex.
    StuFromS { leg: usize },
    /// Sum over the edges at skeleton vertex `vertex` of a leg slid off `edge`.
    Branching { vertex: usize, edge: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub source: Graph,
    pub kind: Move,
}

#[derive(Debug, Clone)]
pub struct Relation {
    pub vector: LinComb,
    pub provenance: Provenance,
}

/// Relations of degree `n` generated from every nonzero diagram.
pub fn generate_relations(frame: &Frame, n: usize) -> Vec<Relation> {
    let diagrams = enumerate(frame, n);
    diagrams
        .par_iter()
        .flat_map_iter(|g| relations_of(frame, g))
        .collect()
}

/// All relations that have `g` as one of their terms by construction.
pub fn relations_of(frame: &Frame, g: &Graph) -> Vec<Relation> {
    let mut out = Vec::new();
    let mut push = |terms: Vec<(Graph, i64)>, kind: Move| {
        let mut v = LinComb::zero(frame.clone());
        for (t, c) in &terms {
            v.add_graph(t, &Q::from_integer((*c).into()))
                .expect("relation terms live in the frame");
        }
        if !v.is_zero() {
            out.push(Relation {
                vector: v,
                provenance: Provenance {
                    source: g.clone(),
                    kind,
                },
            });
        }
    };
    for (h, q) in g.edge_list() {
        if let (Some(u), Some(v)) = (g.vertex_of(h), g.vertex_of(q)) {
            if u != v {
                push(ihx_terms(g, h), Move::Ihx { half: h });
            }
        }
    }
    if let Frame::Skeleton(s) = frame {
        for k in 0..s.edges().len() {
            let r = g.legs_on(k as u16);
            let m = r.len();
            for i in r.clone() {
                if i + 1 < r.end {
                    push(stu_terms(g, i, i + 1, false), Move::Stu { first: i, second: i + 1 });
                }
            }
            if s.is_cyclic_edge(k) && m >= 2 {
                push(stu_terms(g, r.end - 1, r.start, true), Move::Stu { first: r.end - 1, second: r.start });
            }
        }
        for l in 0..g.legs() {
            if g.vertex_of(g.partner_of(g.leg_half(l))).is_some() {
                push(stu_from_s(g, l), Move::StuFromS { leg: l });
            }
        }
        for (vi, vert) in s.vertices().iter().enumerate() {
            for &(e, outgoing) in &vert.incident {
                let r = g.legs_on(e as u16);
                if r.is_empty() {
                    continue;
                }
                let leg = if outgoing { r.start } else { r.end - 1 };
                let terms = vert
                    .incident
                    .iter()
                    .map(|&(e2, out2)| (move_leg(g, leg, e2 as u16, out2), if out2 { 1 } else { -1 }))
                    .collect();
                push(terms, Move::Branching { vertex: vi, edge: e });
            }
        }
    }
    out
}

/// Reconnect four stubs around a fresh pair of vertices `u`, `v`: `u` gets
/// `(x, y, e)` and `v` gets `(e, z, r)`. Stubs are the half-edges whose
/// outside partners get re-attached to the new slot positions.
fn rewire_pair(g: &Graph, u: usize, v: usize, stubs: [usize; 4]) -> Graph {
    let n = g.half_edges();
    let mut p: Vec<usize> = g.partner().iter().map(|&x| x as usize).collect();
    let pos = [3 * u, 3 * u + 1, 3 * v + 1, 3 * v + 2];
    let new_of = |s: usize| stubs.iter().position(|&x| x == s).map(|i| pos[i]);
    let outside: Vec<usize> = stubs.iter().map(|&s| g.partner_of(s)).collect();
    for i in 0..4 {
        let o = outside[i];
        let o2 = new_of(o).unwrap_or(o);
        p[pos[i]] = o2;
        if new_of(o).is_none() {
            p[o] = pos[i];
        }
    }
    p[3 * u + 2] = 3 * v;
    p[3 * v] = 3 * u + 2;
    debug_assert_eq!(p.len(), n);
    Graph::new(g.verts(), g.keys().to_vec(), p.iter().map(|&x| x as u16).collect(), g.loops())
        .expect("rewiring keeps a perfect matching")
}

fn next_slot(h: usize, k: usize) -> usize {
    3 * (h / 3) + (h % 3 + k) % 3
}

/// The cyclic Jacobi sum around the edge at half-edge `h`.
pub(crate) fn ihx_terms(g: &Graph, h: usize) -> Vec<(Graph, i64)> {
    let q = g.partner_of(h);
    let (u, v) = (h / 3, q / 3);
    let (a, b) = (next_slot(h, 1), next_slot(h, 2));
    let (c, d) = (next_slot(q, 1), next_slot(q, 2));
    vec![
        (rewire_pair(g, u, v, [a, b, c, d]), 1),
        (rewire_pair(g, u, v, [b, c, a, d]), 1),
        (rewire_pair(g, u, v, [c, a, b, d]), 1),
    ]
}

fn leg_list(g: &Graph) -> Vec<(u16, i64)> {
    g.keys().iter().enumerate().map(|(i, &k)| (k, 2 * i as i64)).collect()
}

/// T - U - S for the legs `a` (earlier) and `b` (later) on one edge.
fn stu_terms(g: &Graph, a: usize, b: usize, wrap: bool) -> Vec<(Graph, i64)> {
    let t = g.verts();
    let (ha, hb) = (g.leg_half(a), g.leg_half(b));
    // U: exchange the attachments of the two legs
    let mut p: Vec<usize> = g.partner().iter().map(|&x| x as usize).collect();
    let (pa, pb) = (p[ha], p[hb]);
    if pa != hb {
        p[ha] = pb;
        p[hb] = pa;
        p[pa] = hb;
        p[pb] = ha;
    }
    let u = Graph::new(t, g.keys().to_vec(), p.iter().map(|&x| x as u16).collect(), g.loops())
        .expect("swapping legs keeps the matching");
    vec![(g.clone(), 1), (u, -1), (merge_legs(g, a, b, wrap), -1)]
}

/// Replace legs `a`, `b` by a new vertex `(side of a, side of b, new leg)`
/// whose leg sits where `a` was (or after everything when wrapping).
fn merge_legs(g: &Graph, a: usize, b: usize, wrap: bool) -> Graph {
    let t = g.verts();
    let base = 3 * t;
    let nbase = 3 * (t + 1);
    let old_legs = leg_list(g);
    let mut legs = Vec::new();
    let mut new_leg_of = vec![usize::MAX; g.legs()];
    for (j, &kl) in old_legs.iter().enumerate() {
        if j != a && j != b {
            new_leg_of[j] = legs.len();
            legs.push(kl);
        }
    }
    let key = old_legs[a].0;
    let order = if wrap { i64::MAX } else { old_legs[a].1 };
    let new_leg = legs.len();
    legs.push((key, order));
    let map = |h: usize| -> usize {
        if h < base {
            h
        } else {
            nbase + new_leg_of[h - base]
        }
    };
    let n = nbase + legs.len();
    let mut p = vec![usize::MAX; n];
    let (ha, hb) = (g.leg_half(a), g.leg_half(b));
    for h in 0..g.half_edges() {
        if h == ha || h == hb {
            continue;
        }
        let q = g.partner_of(h);
        if q != ha && q != hb {
            p[map(h)] = map(q);
        }
    }
    let (w0, w1, w2) = (base, base + 1, base + 2);
    let (pa, pb) = (g.partner_of(ha), g.partner_of(hb));
    if pa == hb {
        p[w0] = w1;
        p[w1] = w0;
    } else {
        p[w0] = map(pa);
        p[map(pa)] = w0;
        p[w1] = map(pb);
        p[map(pb)] = w1;
    }
    p[w2] = nbase + new_leg;
    p[nbase + new_leg] = w2;
    Graph::assemble(t + 1, &legs, &p, g.loops()).expect("merged graph is matched")
}

/// Read `g` as an S term at the vertex carrying leg `l` and return T - U - S.
fn stu_from_s(g: &Graph, l: usize) -> Vec<(Graph, i64)> {
    let t = g.verts();
    let hl = g.leg_half(l);
    let s = g.partner_of(hl);
    let w = s / 3;
    let (x, y) = (next_slot(s, 1), next_slot(s, 2));
    let build = |swap: bool| -> Graph {
        // remove vertex w and leg l; add legs a (from x) and b (from y)
        let old_legs = leg_list(g);
        let mut legs = Vec::new();
        let mut new_leg_of = vec![usize::MAX; g.legs()];
        for (j, &kl) in old_legs.iter().enumerate() {
            if j != l {
                new_leg_of[j] = legs.len();
                legs.push(kl);
            }
        }
        let (key, order) = old_legs[l];
        let (ia, ib) = (legs.len(), legs.len() + 1);
        let (oa, ob) = if swap { (order + 1, order) } else { (order, order + 1) };
        legs.push((key, oa));
        legs.push((key, ob));
        let nb = 3 * (t - 1);
        let map = |h: usize| -> usize {
            if h < 3 * t {
                let v = h / 3;
                let v2 = if v > w { v - 1 } else { v };
                3 * v2 + h % 3
            } else {
                nb + new_leg_of[h - 3 * t]
            }
        };
        let n = nb + legs.len();
        let mut p = vec![usize::MAX; n];
        for h in 0..g.half_edges() {
            if h / 3 == w && h < 3 * t || h == hl {
                continue;
            }
            let q = g.partner_of(h);
            if q / 3 == w && q < 3 * t {
                continue;
            }
            p[map(h)] = map(q);
        }
        let (la, lb) = (nb + ia, nb + ib);
        let (px, py) = (g.partner_of(x), g.partner_of(y));
        if px == y {
            p[la] = lb;
            p[lb] = la;
        } else {
            p[la] = map(px);
            p[map(px)] = la;
            p[lb] = map(py);
            p[map(py)] = lb;
        }
        Graph::assemble(t - 1, &legs, &p, g.loops()).expect("split graph is matched")
    };
    vec![(build(false), 1), (build(true), -1), (g.clone(), -1)]
}

/// Move leg `leg` to the end of edge `key` nearest the vertex it sits at:
/// the start if the edge leaves that vertex, the end otherwise.
pub(crate) fn move_leg(g: &Graph, leg: usize, key: u16, outgoing: bool) -> Graph {
    let mut legs = leg_list(g);
    legs[leg] = (key, if outgoing { i64::MIN } else { i64::MAX });
    let p: Vec<usize> = g.partner().iter().map(|&x| x as usize).collect();
    Graph::assemble(g.verts(), &legs, &p, g.loops()).expect("moving a leg keeps the matching")
}
