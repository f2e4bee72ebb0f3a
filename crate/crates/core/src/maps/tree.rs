//! Attaching a tree to intervals, and the inverse that clears the tree by
//! sliding its legs onto the intervals.

use std::collections::VecDeque;

use num_traits::One;

use crate::diagram::{Frame, LinComb, Q};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::relations::move_leg;
use crate::skeleton::{ClosedGraph, Component, EdgeKind, Skeleton, TreeSpec};

/// A generic point on the tree: on tree edge `edge` (counted among the tree
/// edges of the component), after the first `gap` legs of that edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Root {
    pub edge: usize,
    pub gap: usize,
}

fn interval_components(s: &Skeleton) -> Result<Vec<(String, bool)>> {
    s.components()
        .iter()
        .map(|c| match c {
            Component::Interval { name, reversed } => Ok((name.clone(), *reversed)),
            _ => Err(Error::Unsupported(format!("`{s}` is not a union of intervals"))),
        })
        .collect()
}

/// Close the intervals of `x` with `tree` (default: the chain tree).
///
/// Legs keep their positions; the result lives on one tree-closed component.
pub fn rho(x: &LinComb, tree: Option<TreeSpec>) -> Result<LinComb> {
    let s = x
        .frame()
        .as_skeleton()
        .ok_or_else(|| Error::Unsupported("rho takes diagrams on intervals".into()))?;
    if s.is_empty() {
        return Ok(x.clone());
    }
    let intervals = interval_components(s)?;
    let g = intervals.len();
    let tree = tree.unwrap_or_else(|| TreeSpec::chain(g, "s"));
    let closed = Skeleton::new(vec![Component::Closed(ClosedGraph {
        name: format!("G{g}"),
        intervals,
        tree,
    })])?;
    // interval i keeps edge index i
    x.reframe(Frame::skeleton(closed))
}

struct TreeGeometry {
    g: usize,
    root_edge: usize,
    /// For each tree edge other than the root edge: true if it points away
    /// from the root.
    away: Vec<bool>,
    /// Tree edges on the way from each junction to the root, nearest first.
    paths: Vec<(usize, bool, Vec<usize>)>,
    /// Per junction path: which side of the root edge it reaches.
    side_of_root: Vec<bool>,
}

fn geometry(s: &Skeleton, root: Root) -> Result<TreeGeometry> {
    let [Component::Closed(cg)] = s.components() else {
        return Err(Error::Unsupported(format!(
            "sigma needs a single tree-closed component, got `{s}`"
        )));
    };
    let g = cg.intervals.len();
    let tree_edges = cg.tree.edges.len();
    if root.edge >= tree_edges {
        return Err(Error::Unsupported(format!(
            "the root must lie on one of the {tree_edges} tree edges"
        )));
    }
    let root_edge = g + root.edge;
    let edges = s.edges();
    let nv = s.vertices().len();
    // BFS over tree edges from both ends of the root edge
    let mut parent_edge = vec![usize::MAX; nv];
    let mut side = vec![false; nv];
    let mut seen = vec![false; nv];
    let mut queue = VecDeque::new();
    let (rt, rh) = (edges[root_edge].tail.expect("tree edge"), edges[root_edge].head.expect("tree edge"));
    for (v, head_side) in [(rt, false), (rh, true)] {
        seen[v] = true;
        side[v] = head_side;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for &(e, _) in &s.vertices()[v].incident {
            if e == root_edge || edges[e].kind != EdgeKind::Tree {
                continue;
            }
            let w = if edges[e].tail == Some(v) { edges[e].head } else { edges[e].tail }.expect("tree edge");
            if !seen[w] {
                seen[w] = true;
                side[w] = side[v];
                parent_edge[w] = e;
                queue.push_back(w);
            }
        }
    }
    let mut away = vec![false; edges.len()];
    for v in 0..nv {
        let e = parent_edge[v];
        if e != usize::MAX {
            // e joins v to its parent; it points away from the root if v is its head
            away[e] = edges[e].head == Some(v);
        }
    }
    let mut paths = Vec::new();
    let mut side_of_root = Vec::new();
    for (v, info) in s.vertices().iter().enumerate() {
        let Some(&(iv, outgoing)) = info.incident.iter().find(|(e, _)| *e < g) else {
            continue;
        };
        let mut path = Vec::new();
        let mut u = v;
        while parent_edge[u] != usize::MAX {
            let e = parent_edge[u];
            path.push(e);
            u = if edges[e].tail == Some(u) { edges[e].head } else { edges[e].tail }.expect("tree edge");
        }
        paths.push((iv, outgoing, path));
        side_of_root.push(side[v]);
    }
    Ok(TreeGeometry {
        g,
        root_edge,
        away,
        paths,
        side_of_root,
    })
}

/// Clear the tree part of every term by summing over all ways of sliding
/// its legs onto the intervals, following the paths towards `root`.
pub fn sigma(x: &LinComb, root: Root) -> Result<LinComb> {
    let s = x
        .frame()
        .as_skeleton()
        .ok_or_else(|| Error::Unsupported("sigma takes diagrams on a tree-closed skeleton".into()))?;
    let geo = geometry(s, root)?;
    let [Component::Closed(cg)] = s.components() else { unreachable!("checked by geometry") };
    let target = Skeleton::new(
        cg.intervals
            .iter()
            .map(|(name, reversed)| Component::Interval {
                name: name.clone(),
                reversed: *reversed,
            })
            .collect(),
    )?;
    let mut out = LinComb::zero(Frame::skeleton(target));
    for (graph, c) in x.terms() {
        sigma_term(graph, c, &geo, root.gap, &mut out)?;
    }
    Ok(out)
}

fn sigma_term(graph: &Graph, c: &Q, geo: &TreeGeometry, gap: usize, out: &mut LinComb) -> Result<()> {
    let re = geo.root_edge as u16;
    let on_root = graph.legs_on(re);
    let cut = on_root.start + gap.min(on_root.len());
    // for each junction: tree legs met walking to the root, nearest first
    let mut met: Vec<Vec<usize>> = Vec::with_capacity(geo.paths.len());
    for ((_, _, path), &head_side) in geo.paths.iter().zip(&geo.side_of_root) {
        let mut legs = Vec::new();
        for &e in path {
            let r = graph.legs_on(e as u16);
            if geo.away[e] {
                legs.extend(r.rev());
            } else {
                legs.extend(r);
            }
        }
        if head_side {
            legs.extend((cut..on_root.end).rev());
        } else {
            legs.extend(on_root.start..cut);
        }
        met.push(legs);
    }
    let tree_legs: Vec<usize> = (0..graph.legs()).filter(|&l| graph.keys()[l] as usize >= geo.g).collect();
    let mut tabs: Vec<Vec<usize>> = vec![Vec::new(); graph.legs()];
    for (p, legs) in met.iter().enumerate() {
        for &l in legs {
            tabs[l].push(p);
        }
    }
    // sign contribution of the direction of each tree leg's edge
    let d_leg = |l: usize| -> i64 {
        let e = graph.keys()[l] as usize;
        let away = if e == geo.root_edge { l >= cut } else { geo.away[e] };
        if away {
            1
        } else {
            -1
        }
    };
    let partner: Vec<usize> = graph.partner().iter().map(|&p| p as usize).collect();
    let mut choice = vec![0usize; tree_legs.len()];
    if tree_legs.iter().any(|&l| tabs[l].is_empty()) {
        return Err(Error::Internal("tree leg unreachable from every endpoint".into()));
    }
    loop {
        let mut legs: Vec<(u16, i64)> = graph.keys().iter().enumerate().map(|(i, &k)| (k, i as i64)).collect();
        let mut sign = 1i64;
        for (ti, &l) in tree_legs.iter().enumerate() {
            let p = tabs[l][choice[ti]];
            let (iv, tail, _) = &geo.paths[p];
            let j = met[p].iter().position(|&x| x == l).expect("leg on its path") as i64;
            legs[l] = if *tail {
                (*iv as u16, -1 - j - (1 << 20))
            } else {
                (*iv as u16, (1 << 40) + j)
            };
            sign *= d_leg(l) * if *tail { 1 } else { -1 };
        }
        let placed = Graph::assemble(graph.verts(), &legs, &partner, graph.loops())?;
        out.add_graph(&placed, &(c * Q::from_integer(sign.into())))?;
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < tabs[tree_legs[k]].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    Ok(())
}

/// For a diagram on intervals and one of its legs, the sum over intervals of
/// the leg moved to the start minus the leg moved to the end.
pub fn ends_relation(frame: &Frame, graph: &Graph, leg: usize) -> Result<LinComb> {
    let s = frame
        .as_skeleton()
        .filter(|s| s.all_intervals())
        .ok_or_else(|| Error::Unsupported("the end relation lives on intervals".into()))?;
    let mut out = LinComb::zero(frame.clone());
    for i in 0..s.edges().len() {
        out.add_graph(&move_leg(graph, leg, i as u16, true), &Q::one())?;
        out.add_graph(&move_leg(graph, leg, i as u16, false), &-Q::one())?;
    }
    Ok(out)
}

/// Read diagrams on a one-loop tree-closed component as diagrams on the
/// circle `name`.
pub fn loop_to_circle(x: &LinComb, name: &str) -> Result<LinComb> {
    let s = x
        .frame()
        .as_skeleton()
        .ok_or_else(|| Error::Unsupported("expected a skeleton".into()))?;
    let ok = match s.components() {
        [Component::Closed(cg)] => {
            cg.intervals.len() == 1
                && cg.tree.edges.len() == 1
                && s.vertices().iter().all(|v| v.incident.iter().filter(|(_, o)| *o).count() == 1)
        }
        _ => false,
    };
    if !ok {
        return Err(Error::Unsupported(format!("`{s}` is not a consistently oriented loop")));
    }
    let circle = Skeleton::new(vec![Component::Circle {
        name: name.to_string(),
        reversed: false,
    }])?;
    let mut out = LinComb::zero(Frame::skeleton(circle));
    for (g, c) in x.terms() {
        // the interval is followed by the tree edge around the loop
        let legs: Vec<(u16, i64)> = g
            .keys()
            .iter()
            .enumerate()
            .map(|(i, &k)| (0, i as i64 + if k == 0 { 0 } else { 1 << 20 }))
            .collect();
        let partner: Vec<usize> = g.partner().iter().map(|&p| p as usize).collect();
        out.add_graph(&Graph::assemble(g.verts(), &legs, &partner, g.loops())?, c)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse;

    #[test]
    fn rho_of_empty_interval_is_empty_loop() {
        let x = LinComb::unit(Frame::skeleton(Skeleton::intervals(1)));
        let r = rho(&x, None).unwrap();
        assert_eq!(r.frame().as_skeleton().unwrap().closed_genus(), Some(1));
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn tree_leg_on_the_loop_slides_to_one_end() {
        let x = parse("skeleton: gamma1\n1 ; legs a@c1:0 b@s0:0 ; edges a-b").unwrap();
        for gap in 0..2 {
            let y = sigma(&x, Root { edge: 0, gap }).unwrap();
            assert_eq!(y.len(), 1);
            assert_eq!(y.terms().values().next().unwrap(), &Q::one());
        }
    }

    #[test]
    fn root_on_missing_edge_is_rejected() {
        let x = LinComb::unit(Frame::skeleton(Skeleton::chain(1)));
        assert!(sigma(&x, Root { edge: 3, gap: 0 }).is_err());
        let c = LinComb::unit(Frame::skeleton(Skeleton::circles(1)));
        assert!(matches!(sigma(&c, Root::default()), Err(Error::Unsupported(_))));
    }
}
