//! Wheels, combs and the theta graph.

use num_traits::One;

use crate::diagram::{Frame, LinComb, Q};
use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, Half};
use crate::skeleton::Skeleton;

/// The cycle of `l` vertices, vertex `i` with slots (previous, next, spoke).
fn wheel_graph(l: usize, skeleton_key: u16) -> Result<crate::graph::Graph> {
    if l == 0 {
        return Err(Error::Unsupported("wheels need at least one spoke".into()));
    }
    let mut b = GraphBuilder::new();
    let vs: Vec<usize> = (0..l).map(|_| b.vertex()).collect();
    for i in 0..l {
        let leg = b.leg(skeleton_key, i as i64);
        b.edge(Half::Slot(vs[i], 2), Half::Leg(leg));
        b.edge(Half::Slot(vs[i], 1), Half::Slot(vs[(i + 1) % l], 0));
    }
    b.build()
}

/// Wheel with `l` spokes on a circle; zero for `l = 1`.
pub fn wheel(l: usize) -> Result<LinComb> {
    let g = wheel_graph(l, 0)?;
    LinComb::from_graph(Frame::skeleton(Skeleton::circles(1)), &g, Q::one())
}

/// The wheel broken open: the same graph with its spokes on an interval.
pub fn comb(l: usize) -> Result<LinComb> {
    let g = wheel_graph(l, 0)?;
    LinComb::from_graph(Frame::skeleton(Skeleton::intervals(1)), &g, Q::one())
}

/// The theta graph in graph cohomology.
pub fn theta() -> LinComb {
    let mut b = GraphBuilder::new();
    let (u, v) = (b.vertex(), b.vertex());
    for s in 0..3 {
        b.edge(Half::Slot(u, s), Half::Slot(v, s));
    }
    LinComb::from_graph(Frame::empty(), &b.build().expect("theta is well formed"), Q::one())
        .expect("theta has no legs")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_degrees() {
        assert_eq!(wheel(2).unwrap().max_degree(), 2);
        assert_eq!(wheel(3).unwrap().max_degree(), 3);
        assert!(wheel(0).is_err());
        assert_eq!(theta().max_degree(), 1);
    }

    #[test]
    fn one_spoke_wheel_is_a_tadpole() {
        assert!(wheel(1).unwrap().is_zero());
    }
}
