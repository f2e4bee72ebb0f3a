mod common;

use common::{diagrams_up_to, one, q, rng, single};
use jacobi_core::enumerate::enumerate;
use jacobi_core::maps::{
    chi, chi_inverse, comb, ends_relation, loop_to_circle, perfect_matchings, remove_circles, rho, sigma, theta,
    wheel, Root,
};
use jacobi_core::skeleton::EdgeKind;
use jacobi_core::text::parse;
use jacobi_core::{Frame, Graph, LinComb, QuotientSpace, Skeleton};
use rand::Rng;

fn chain_frame(g: usize) -> Frame {
    Frame::skeleton(Skeleton::chain(g))
}

#[test]
fn sigma_then_rho_is_the_identity_on_chain_graphs() {
    for g in 1..=2 {
        let gq = QuotientSpace::new(chain_frame(g), 2);
        for x in diagrams_up_to(&chain_frame(g), 2) {
            let back = rho(&sigma(&x, Root::default()).unwrap(), None).unwrap();
            assert!(gq.equal(&back, &x).unwrap());
        }
    }
}

#[test]
fn rho_then_sigma_is_the_identity_on_intervals() {
    for g in 1..=2 {
        let frame = Frame::skeleton(Skeleton::intervals(g));
        let iq = QuotientSpace::new(frame.clone(), 2);
        for x in diagrams_up_to(&frame, 2) {
            let r = rho(&x, None).unwrap();
            assert_eq!(r.max_degree(), x.max_degree());
            assert!(iq.equal(&sigma(&r, Root::default()).unwrap(), &x).unwrap());
        }
    }
}

#[test]
fn sigma_does_not_depend_on_the_root() {
    let mut r = rng(7);
    for g in 1..=2 {
        let frame = chain_frame(g);
        let tree_edges = Skeleton::chain(g).edges().len() - g;
        let xs = diagrams_up_to(&frame, 2);
        let target = sigma(&LinComb::unit(frame.clone()), Root::default()).unwrap();
        let iq = QuotientSpace::new(target.frame().clone(), 2);
        for _ in 0..40 {
            let x = &xs[r.gen_range(0..xs.len())];
            let a = Root {
                edge: r.gen_range(0..tree_edges),
                gap: r.gen_range(0..4),
            };
            let b = Root {
                edge: r.gen_range(0..tree_edges),
                gap: r.gen_range(0..4),
            };
            assert!(iq.equal(&sigma(x, a).unwrap(), &sigma(x, b).unwrap()).unwrap());
        }
    }
}

/// Push the only tree leg away from the root one branching move at a time:
/// at a skeleton vertex v, sum over incident edges e of eps_e D_e vanishes,
/// with eps = +1 for edges leaving v and D_e the leg next to v on e.
fn branching_oracle(s: &Skeleton, frame: &Frame, g: &Graph, root_edge: usize) -> LinComb {
    let edges = s.edges();
    let leg = (0..g.legs())
        .find(|&l| edges[g.keys()[l] as usize].kind == EdgeKind::Tree)
        .expect("one tree leg");
    // distance from the root edge, vertex by vertex, through tree edges
    let nv = s.vertices().len();
    let mut dist = vec![usize::MAX; nv];
    let (t, h) = (edges[root_edge].tail.unwrap(), edges[root_edge].head.unwrap());
    dist[t] = 0;
    dist[h] = 0;
    let mut changed = true;
    while changed {
        changed = false;
        for e in edges.iter().filter(|e| e.kind == EdgeKind::Tree) {
            let (a, b) = (e.tail.unwrap(), e.head.unwrap());
            for (x, y) in [(a, b), (b, a)] {
                if dist[x] != usize::MAX && dist[x] + 1 < dist[y] {
                    dist[y] = dist[x] + 1;
                    changed = true;
                }
            }
        }
    }
    let place = |g: &Graph, key: usize, first: bool| -> Graph {
        let legs: Vec<(u16, i64)> = (0..g.legs())
            .map(|l| {
                if l == leg {
                    (key as u16, if first { -1 } else { 1 << 30 })
                } else {
                    (g.keys()[l], 2 * l as i64)
                }
            })
            .collect();
        let partner: Vec<usize> = g.partner().iter().map(|&p| p as usize).collect();
        Graph::assemble(g.verts(), &legs, &partner, g.loops()).unwrap()
    };
    let mut out = LinComb::zero(frame.clone());
    // (graph with the leg on edge e, coefficient, vertex the leg moves through)
    let e0 = g.keys()[leg] as usize;
    let v0 = if e0 == root_edge {
        // a root at gap 0 sits at the tail, so the leg leaves by the head
        h
    } else if dist[edges[e0].head.unwrap()] > dist[edges[e0].tail.unwrap()] {
        edges[e0].head.unwrap()
    } else {
        edges[e0].tail.unwrap()
    };
    let mut stack = vec![(g.clone(), e0, one(), v0)];
    while let Some((d, e, c, v)) = stack.pop() {
        let eps = |edge: usize| if edges[edge].tail == Some(v) { q(1) } else { q(-1) };
        for &(f, outgoing) in &s.vertices()[v].incident {
            if f == e {
                continue;
            }
            let moved = place(&d, f, outgoing);
            let coeff = -(&c * eps(e) * eps(f));
            if edges[f].kind == EdgeKind::Tree {
                let next = if edges[f].tail == Some(v) { edges[f].head } else { edges[f].tail }.unwrap();
                stack.push((moved, f, coeff, next));
            } else {
                out.add_graph(&moved, &coeff).unwrap();
            }
        }
    }
    out
}

#[test]
fn sigma_agrees_with_step_by_step_branching() {
    for g in 1..=2 {
        let s = Skeleton::chain(g);
        let frame = chain_frame(g);
        let iv = sigma(&LinComb::unit(frame.clone()), Root::default()).unwrap();
        let iq = QuotientSpace::new(iv.frame().clone(), 2);
        let mut checked = 0;
        for n in 1..=2 {
            for d in enumerate(&frame, n) {
                let tree_legs = (0..d.legs())
                    .filter(|&l| s.edges()[d.keys()[l] as usize].kind == EdgeKind::Tree)
                    .count();
                if tree_legs != 1 {
                    continue;
                }
                let expected = sigma(&branching_oracle(&s, &frame, &d, g), Root::default()).unwrap();
                let got = sigma(&single(&frame, &d), Root::default()).unwrap();
                assert!(iq.equal(&got, &expected).unwrap(), "{d:?}");
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn chord_from_the_loop_to_its_tree_edge() {
    let x = parse("skeleton: gamma1\n1 ; legs a@c1:0 b@s0:0 ; edges a-b").unwrap();
    // root before the tree leg: the leg leaves through the start of c1
    let early = sigma(&x, Root { edge: 0, gap: 0 }).unwrap();
    let start = parse("skeleton: I:c1\n1 ; legs b@c1:0 a@c1:1 ; edges a-b").unwrap();
    assert_eq!(early, start);
    // root after it: the leg leaves through the end, which is the same chord
    let late = sigma(&x, Root { edge: 0, gap: 1 }).unwrap();
    assert_eq!(late, start);
}

#[test]
fn ends_relation_vanishes_on_intervals() {
    for g in 1..=2 {
        let frame = Frame::skeleton(Skeleton::intervals(g));
        let iq = QuotientSpace::new(frame.clone(), 2);
        for n in 1..=2 {
            for d in enumerate(&frame, n) {
                for leg in 0..d.legs() {
                    let r = ends_relation(&frame, &d, leg).unwrap();
                    assert!(iq.normal_form(&r).unwrap().is_zero(), "{d:?} leg {leg}");
                }
            }
        }
    }
}

#[test]
fn chi_examples() {
    let m = parse("marked: g=1\n1 ; legs a@1 b@1 ; edges a-b").unwrap();
    let x = chi(&m).unwrap();
    assert_eq!(x, parse("skeleton: I:x1\n1 ; legs a@x1:0 b@x1:1 ; edges a-b").unwrap());
    // a tripod with all legs on one label averages to zero by AS
    let three = parse("marked: g=1\n1 ; vertices v ; legs a@1 b@1 c@1 ; edges v.0-a v.1-b v.2-c").unwrap();
    assert!(chi(&three).unwrap().is_zero());
    // with distinct labels there is a single order
    let spread = parse("marked: g=3\n1 ; vertices v ; legs a@1 b@2 c@3 ; edges v.0-a v.1-b v.2-c").unwrap();
    let y = chi(&spread).unwrap();
    assert_eq!(y.len(), 1);
    assert_eq!(y.terms().values().next().unwrap(), &one());
}

#[test]
fn chi_inverse_inverts_chi_on_labelled_bases() {
    for g in 1..=2 {
        let marked = QuotientSpace::new(Frame::Marked(g), 2);
        let iv = QuotientSpace::new(Frame::skeleton(Skeleton::intervals(g)), 2);
        for n in 0..=2 {
            assert_eq!(marked.dim(n).unwrap(), iv.dim(n).unwrap(), "g={g} n={n}");
            for b in marked.basis(n).unwrap().basis() {
                let y = single(&Frame::Marked(g), &b);
                let back = chi_inverse(&chi(&y).unwrap(), &iv, &marked).unwrap();
                assert!(marked.equal(&back, &y).unwrap());
            }
        }
    }
}

#[test]
fn chi_is_a_module_map() {
    let th = theta();
    for y in diagrams_up_to(&Frame::Marked(2), 1) {
        let left = chi(&th.disjoint_union(&y).unwrap()).unwrap();
        let right = th.disjoint_union(&chi(&y).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn circle_with_four_legs_gives_three_pairings() {
    // four chords from a circle to an interval
    let x = parse(
        "skeleton: C:o I:x\n1 ; legs a@o:0 b@o:1 c@o:2 d@o:3 p@x:0 r@x:1 s@x:2 t@x:3 ; edges a-p b-r c-s d-t",
    )
    .unwrap();
    let y = remove_circles(&x, 2).unwrap();
    let expected = parse(
        "skeleton: I:x
         1 ; legs p@x:0 r@x:1 s@x:2 t@x:3 ; edges p-r s-t
         1 ; legs p@x:0 r@x:1 s@x:2 t@x:3 ; edges p-s r-t
         1 ; legs p@x:0 r@x:1 s@x:2 t@x:3 ; edges p-t r-s",
    )
    .unwrap();
    assert_eq!(y, expected);
    assert_eq!(y.len(), 3);
    assert_eq!(perfect_matchings(&[0, 1, 2, 3]).len(), 3);
    assert!(remove_circles(&x, 3).unwrap().is_zero());
}

#[test]
fn circle_removal_forgets_the_order_of_the_legs() {
    // T and U of an STU triple on the circle; S has an odd number of legs there
    let t = parse(
        "skeleton: C:o I:x\n1 ; legs a@o:0 b@o:1 c@o:2 d@o:3 p@x:0 r@x:1 s@x:2 t@x:3 ; edges a-p b-r c-s d-t",
    )
    .unwrap();
    let u = parse(
        "skeleton: C:o I:x\n1 ; legs b@o:0 a@o:1 c@o:2 d@o:3 p@x:0 r@x:1 s@x:2 t@x:3 ; edges a-p b-r c-s d-t",
    )
    .unwrap();
    let diff = t.sub(&u).unwrap();
    assert!(remove_circles(&diff, 2).unwrap().is_zero());
}

#[test]
fn broken_wheel_closes_into_the_wheel() {
    for l in 2..=3 {
        let closed = rho(&comb(l).unwrap(), None).unwrap();
        let on_circle = loop_to_circle(&closed, "o1").unwrap();
        let cq = QuotientSpace::new(Frame::skeleton(Skeleton::circles(1)), 3);
        assert!(cq.equal(&on_circle, &wheel(l).unwrap()).unwrap());
    }
    assert!(wheel(1).unwrap().is_zero());
    assert!(comb(0).is_err());
}

#[test]
fn maps_reject_wrong_frames() {
    let w = wheel(2).unwrap();
    assert!(sigma(&w, Root::default()).is_err());
    assert!(rho(&w, None).is_err());
    assert!(chi(&w).is_err());
}
