//! Oriented one-dimensional skeleta: intervals, circles and graphs closed up
//! by a tree (the chain graphs and their generalizations).

use std::fmt;

use crate::error::{Error, Result};

/// A node of the tree used to close a collection of intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeNode {
    /// Internal tree vertex (valence at least three).
    Internal(usize),
    /// The start point of the i-th interval of the component.
    Start(usize),
    /// The end point of the i-th interval of the component.
    End(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeEdge {
    pub name: String,
    pub from: TreeNode,
    pub to: TreeNode,
}

/// Abstract tree whose leaves are exactly the endpoints of the closed intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeSpec {
    pub internal: usize,
    pub edges: Vec<TreeEdge>,
}

impl TreeSpec {
    /// The tree producing the chain graph with `g` loops.
    ///
    /// For `g = 1` a single edge runs from the end of the interval back to its
    /// start. For larger `g` the tree is a caterpillar `w1 .. w(2g-2)` whose
    /// ends carry both endpoints of the first and last interval and whose
    /// middle vertices alternate between starts and ends of the others.
    pub fn chain(g: usize, prefix: &str) -> TreeSpec {
        assert!(g >= 1, "chain tree needs at least one interval");
        let mut edges = Vec::new();
        let mut k = 0;
        let mut push = |from, to| {
            edges.push(TreeEdge {
                name: format!("{prefix}{k}"),
                from,
                to,
            });
            k += 1;
        };
        if g == 1 {
            push(TreeNode::End(0), TreeNode::Start(0));
            return TreeSpec {
                internal: 0,
                edges,
            };
        }
        let last = 2 * g - 3;
        push(TreeNode::Internal(0), TreeNode::Start(0));
        push(TreeNode::End(0), TreeNode::Internal(0));
        for j in 1..g - 1 {
            push(TreeNode::Internal(2 * j - 1), TreeNode::Start(j));
            push(TreeNode::End(j), TreeNode::Internal(2 * j));
        }
        push(TreeNode::Internal(last), TreeNode::Start(g - 1));
        push(TreeNode::End(g - 1), TreeNode::Internal(last));
        for w in 0..last {
            push(TreeNode::Internal(w), TreeNode::Internal(w + 1));
        }
        TreeSpec {
            internal: 2 * g - 2,
            edges,
        }
    }
}

/// Intervals closed up by a tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedGraph {
    pub name: String,
    /// Interval names with their reversal flags.
    pub intervals: Vec<(String, bool)>,
    pub tree: TreeSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Component {
    Interval { name: String, reversed: bool },
    Circle { name: String, reversed: bool },
    Closed(ClosedGraph),
}

impl Component {
    pub fn name(&self) -> &str {
        match self {
            Component::Interval { name, .. } | Component::Circle { name, .. } => name,
            Component::Closed(c) => &c.name,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Interval,
    Circle,
    /// An interval that belongs to a tree-closed component.
    ClosedInterval,
    Tree,
}

/// One edge of the flattened skeleton graph, with its effective orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeInfo {
    pub name: String,
    pub component: usize,
    pub kind: EdgeKind,
    pub tail: Option<usize>,
    pub head: Option<usize>,
    pub reversed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexInfo {
    pub component: usize,
    pub node: TreeNode,
    /// Incident edges with `true` when the edge leaves the vertex.
    pub incident: Vec<(usize, bool)>,
}

/// An oriented skeleton with its derived edge/vertex tables.
#[derive(Debug, Clone)]
pub struct Skeleton {
    components: Vec<Component>,
    edges: Vec<EdgeInfo>,
    vertices: Vec<VertexInfo>,
}

impl PartialEq for Skeleton {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl Eq for Skeleton {}

impl std::hash::Hash for Skeleton {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.components.hash(state);
    }
}

impl Skeleton {
    pub fn empty() -> Skeleton {
        Skeleton {
            components: Vec::new(),
            edges: Vec::new(),
            vertices: Vec::new(),
        }
    }

    pub fn intervals(g: usize) -> Skeleton {
        let comps = (1..=g)
            .map(|i| Component::Interval {
                name: format!("x{i}"),
                reversed: false,
            })
            .collect();
        Skeleton::new(comps).expect("distinct interval names")
    }

    pub fn circles(k: usize) -> Skeleton {
        let comps = (1..=k)
            .map(|i| Component::Circle {
                name: format!("o{i}"),
                reversed: false,
            })
            .collect();
        Skeleton::new(comps).expect("distinct circle names")
    }

    /// The chain graph with `g` loops; `g = 0` is the empty skeleton.
    pub fn chain(g: usize) -> Skeleton {
        if g == 0 {
            return Skeleton::empty();
        }
        Skeleton::new(vec![Component::Closed(ClosedGraph {
            name: format!("G{g}"),
            intervals: (1..=g).map(|i| (format!("c{i}"), false)).collect(),
            tree: TreeSpec::chain(g, "s"),
        })])
        .expect("chain graph is well formed")
    }

    /// Close `g` unreversed intervals (named as in `intervals`) with `tree`.
    pub fn closed(name: &str, interval_names: &[String], tree: TreeSpec) -> Result<Skeleton> {
        Skeleton::new(vec![Component::Closed(ClosedGraph {
            name: name.to_string(),
            intervals: interval_names.iter().map(|n| (n.clone(), false)).collect(),
            tree,
        })])
    }

    pub fn new(components: Vec<Component>) -> Result<Skeleton> {
        let mut edges = Vec::new();
        let mut vertices = Vec::new();
        for (ci, comp) in components.iter().enumerate() {
            match comp {
                Component::Interval { name, reversed } => edges.push(EdgeInfo {
                    name: name.clone(),
                    component: ci,
                    kind: EdgeKind::Interval,
                    tail: None,
                    head: None,
                    reversed: *reversed,
                }),
                Component::Circle { name, reversed } => edges.push(EdgeInfo {
                    name: name.clone(),
                    component: ci,
                    kind: EdgeKind::Circle,
                    tail: None,
                    head: None,
                    reversed: *reversed,
                }),
                Component::Closed(cg) => {
                    Self::flatten_closed(ci, cg, &mut edges, &mut vertices)?;
                }
            }
        }
        let mut names: Vec<&str> = components.iter().map(|c| c.name()).collect();
        names.extend(edges.iter().filter(|e| e.kind != EdgeKind::Interval && e.kind != EdgeKind::Circle).map(|e| e.name.as_str()));
        let mut sorted = names.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invariant {
                invariant: "unique component ids",
                detail: format!("name `{}` used twice", w[0]),
            });
        }
        Ok(Skeleton {
            components,
            edges,
            vertices,
        })
    }

    fn flatten_closed(
        ci: usize,
        cg: &ClosedGraph,
        edges: &mut Vec<EdgeInfo>,
        vertices: &mut Vec<VertexInfo>,
    ) -> Result<()> {
        let g = cg.intervals.len();
        if g == 0 {
            return Err(Error::Invariant {
                invariant: "tree-closed component",
                detail: format!("`{}` closes no intervals", cg.name),
            });
        }
        let base = vertices.len();
        // junctions first: start_i = base + 2i, end_i = base + 2i + 1, then internals
        let vid = |node: TreeNode| -> Result<usize> {
            match node {
                TreeNode::Start(i) if i < g => Ok(base + 2 * i),
                TreeNode::End(i) if i < g => Ok(base + 2 * i + 1),
                TreeNode::Internal(k) if k < cg.tree.internal => Ok(base + 2 * g + k),
                other => Err(Error::Invariant {
                    invariant: "tree leaf attachment",
                    detail: format!("node {other:?} does not exist in `{}`", cg.name),
                }),
            }
        };
        for i in 0..g {
            vertices.push(VertexInfo {
                component: ci,
                node: TreeNode::Start(i),
                incident: Vec::new(),
            });
            vertices.push(VertexInfo {
                component: ci,
                node: TreeNode::End(i),
                incident: Vec::new(),
            });
        }
        for k in 0..cg.tree.internal {
            vertices.push(VertexInfo {
                component: ci,
                node: TreeNode::Internal(k),
                incident: Vec::new(),
            });
        }
        for (i, (name, reversed)) in cg.intervals.iter().enumerate() {
            let (s, e) = (base + 2 * i, base + 2 * i + 1);
            let (tail, head) = if *reversed { (e, s) } else { (s, e) };
            let idx = edges.len();
            edges.push(EdgeInfo {
                name: name.clone(),
                component: ci,
                kind: EdgeKind::ClosedInterval,
                tail: Some(tail),
                head: Some(head),
                reversed: *reversed,
            });
            vertices[tail].incident.push((idx, true));
            vertices[head].incident.push((idx, false));
        }
        for te in &cg.tree.edges {
            let (tail, head) = (vid(te.from)?, vid(te.to)?);
            if tail == head {
                return Err(Error::Invariant {
                    invariant: "tree is acyclic",
                    detail: format!("tree edge `{}` is a loop", te.name),
                });
            }
            let idx = edges.len();
            edges.push(EdgeInfo {
                name: te.name.clone(),
                component: ci,
                kind: EdgeKind::Tree,
                tail: Some(tail),
                head: Some(head),
                reversed: false,
            });
            vertices[tail].incident.push((idx, true));
            vertices[head].incident.push((idx, false));
        }
        // every junction has exactly one tree edge; internals have valence >= 3
        for v in &vertices[base..] {
            let tree_deg = v
                .incident
                .iter()
                .filter(|(e, _)| edges[*e].kind == EdgeKind::Tree)
                .count();
            match v.node {
                TreeNode::Internal(k) if tree_deg < 3 => {
                    return Err(Error::Invariant {
                        invariant: "internal tree vertices have valence >= 3",
                        detail: format!("vertex #{k} of `{}` has valence {tree_deg}", cg.name),
                    })
                }
                TreeNode::Start(i) | TreeNode::End(i) if tree_deg != 1 => {
                    return Err(Error::Invariant {
                        invariant: "every interval endpoint receives exactly one leaf",
                        detail: format!(
                            "endpoint of interval `{}` meets {tree_deg} tree edges",
                            cg.intervals[i].0
                        ),
                    })
                }
                _ => {}
            }
        }
        // connected + (|E| = |V| - 1) => tree
        let nodes = 2 * g + cg.tree.internal;
        if cg.tree.edges.len() + 1 != nodes {
            return Err(Error::Invariant {
                invariant: "tree is connected and acyclic",
                detail: format!(
                    "`{}` has {} tree edges on {nodes} nodes",
                    cg.name,
                    cg.tree.edges.len()
                ),
            });
        }
        let mut parent: Vec<usize> = (0..nodes).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for te in &cg.tree.edges {
            let a = find(&mut parent, vid(te.from)? - base);
            let b = find(&mut parent, vid(te.to)? - base);
            if a == b {
                return Err(Error::Invariant {
                    invariant: "tree is connected and acyclic",
                    detail: format!("tree edge `{}` closes a cycle", te.name),
                });
            }
            parent[a] = b;
        }
        Ok(())
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn edges(&self) -> &[EdgeInfo] {
        &self.edges
    }

    pub fn vertices(&self) -> &[VertexInfo] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name() == name)
    }

    /// Edges belonging to component `ci`, in skeleton order.
    pub fn component_edges(&self, ci: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.component == ci)
            .map(|(i, _)| i)
    }

    pub fn is_cyclic_edge(&self, e: usize) -> bool {
        self.edges[e].kind == EdgeKind::Circle
    }

    /// Number of loops of a single tree-closed component, if the skeleton is one.
    pub fn closed_genus(&self) -> Option<usize> {
        match self.components.as_slice() {
            [Component::Closed(cg)] => Some(cg.intervals.len()),
            _ => None,
        }
    }

    /// True if every component is a plain interval.
    pub fn all_intervals(&self) -> bool {
        self.components
            .iter()
            .all(|c| matches!(c, Component::Interval { .. }))
    }

    pub fn all_circles(&self) -> bool {
        self.components
            .iter()
            .all(|c| matches!(c, Component::Circle { .. }))
    }

    /// Skeleton with component `ci` reversed.
    pub fn with_reversed(&self, ci: usize) -> Skeleton {
        let mut comps = self.components.clone();
        match &mut comps[ci] {
            Component::Interval { reversed, .. } | Component::Circle { reversed, .. } => {
                *reversed = !*reversed
            }
            Component::Closed(cg) => {
                for iv in &mut cg.intervals {
                    iv.1 = !iv.1;
                }
                for te in &mut cg.tree.edges {
                    std::mem::swap(&mut te.from, &mut te.to);
                }
            }
        }
        Skeleton::new(comps).expect("reversal keeps a skeleton well formed")
    }

    /// Disjoint union; component names must stay distinct.
    pub fn union(&self, other: &Skeleton) -> Result<Skeleton> {
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().cloned());
        Skeleton::new(comps)
    }
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "empty");
        }
        let rev = |r: bool| if r { "~" } else { "" };
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match c {
                Component::Interval { name, reversed } => write!(f, "I:{}{name}", rev(*reversed))?,
                Component::Circle { name, reversed } => write!(f, "C:{}{name}", rev(*reversed))?,
                Component::Closed(cg) => {
                    write!(f, "T:{}[", cg.name)?;
                    for (k, (n, r)) in cg.intervals.iter().enumerate() {
                        if k > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{}{n}", rev(*r))?;
                    }
                    write!(f, ";")?;
                    for (k, te) in cg.tree.edges.iter().enumerate() {
                        if k > 0 {
                            write!(f, ",")?;
                        }
                        write!(
                            f,
                            "{}:{}>{}",
                            te.name,
                            node_text(cg, te.from),
                            node_text(cg, te.to)
                        )?;
                    }
                    write!(f, "]")?;
                }
            }
        }
        Ok(())
    }
}

fn node_text(cg: &ClosedGraph, n: TreeNode) -> String {
    match n {
        TreeNode::Internal(k) => format!("#{k}"),
        TreeNode::Start(i) => format!("{}.s", cg.intervals[i].0),
        TreeNode::End(i) => format!("{}.e", cg.intervals[i].0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_graphs_are_well_formed() {
        for g in 1..=4 {
            let s = Skeleton::chain(g);
            let tree_edges = s.edges().iter().filter(|e| e.kind == EdgeKind::Tree).count();
            let expected = if g == 1 { 1 } else { 4 * g - 3 };
            assert_eq!(tree_edges, expected);
            for v in s.vertices() {
                let valence = v.incident.len();
                match v.node {
                    TreeNode::Internal(_) => assert_eq!(valence, 3),
                    _ => assert_eq!(valence, 2),
                }
            }
        }
    }

    #[test]
    fn chain_one_is_a_consistently_oriented_loop() {
        let s = Skeleton::chain(1);
        for v in s.vertices() {
            let outs = v.incident.iter().filter(|(_, o)| *o).count();
            assert_eq!(outs, 1);
        }
    }

    #[test]
    fn rejects_cycle_in_tree() {
        let tree = TreeSpec {
            internal: 0,
            edges: vec![
                TreeEdge {
                    name: "t0".into(),
                    from: TreeNode::End(0),
                    to: TreeNode::Start(0),
                },
                TreeEdge {
                    name: "t1".into(),
                    from: TreeNode::Start(0),
                    to: TreeNode::End(0),
                },
            ],
        };
        assert!(Skeleton::closed("G", &["a".to_string()], tree).is_err());
    }

    #[test]
    fn rejects_duplicate_names() {
        let comps = vec![
            Component::Interval {
                name: "a".into(),
                reversed: false,
            },
            Component::Circle {
                name: "a".into(),
                reversed: false,
            },
        ];
        assert!(Skeleton::new(comps).is_err());
    }

    #[test]
    fn reversal_is_an_involution() {
        let s = Skeleton::chain(2);
        assert_eq!(s.with_reversed(0).with_reversed(0), s);
        assert_ne!(s.with_reversed(0), s);
    }
}
