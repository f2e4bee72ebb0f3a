//! Circle removal: a circle carrying `2n` legs is replaced by the sum over
//! all ways of joining its legs in pairs.

use crate::diagram::{Frame, LinComb};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::skeleton::{Component, EdgeKind, Skeleton};

/// All perfect matchings of `items`, each as a list of pairs.
pub fn perfect_matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    if items.len() % 2 == 1 {
        return Vec::new();
    }
    let first = items[0];
    let mut out = Vec::new();
    for i in 1..items.len() {
        let rest: Vec<usize> = items[1..]
            .iter()
            .enumerate()
            .filter(|&(j, _)| j + 1 != i)
            .map(|(_, &x)| x)
            .collect();
        for mut m in perfect_matchings(&rest) {
            m.insert(0, (first, items[i]));
            out.push(m);
        }
    }
    out
}

/// Remove every circle of the skeleton with parameter `n`.
///
/// A term with fewer than `2n` legs on some circle vanishes; more than `2n`
/// legs is rejected.
pub fn remove_circles(x: &LinComb, n: usize) -> Result<LinComb> {
    let s = x
        .frame()
        .as_skeleton()
        .ok_or_else(|| Error::Unsupported("circle removal needs a skeleton".into()))?;
    let kept: Vec<Component> = s
        .components()
        .iter()
        .filter(|c| !matches!(c, Component::Circle { .. }))
        .cloned()
        .collect();
    let target = Skeleton::new(kept)?;
    let mut new_key = vec![u16::MAX; s.edges().len()];
    let mut next = 0u16;
    for (i, e) in s.edges().iter().enumerate() {
        if e.kind != EdgeKind::Circle {
            new_key[i] = next;
            next += 1;
        }
    }
    let circles: Vec<u16> = (0..s.edges().len())
        .filter(|&i| s.edges()[i].kind == EdgeKind::Circle)
        .map(|i| i as u16)
        .collect();
    let mut out = LinComb::zero(Frame::skeleton(target));
    'terms: for (g, c) in x.terms() {
        let mut per_circle = Vec::new();
        for &k in &circles {
            let legs: Vec<usize> = g.legs_on(k).collect();
            if legs.len() < 2 * n {
                continue 'terms;
            }
            if legs.len() > 2 * n {
                return Err(Error::Unsupported(format!(
                    "circle `{}` carries {} legs, more than 2n = {}",
                    s.edges()[k as usize].name,
                    legs.len(),
                    2 * n
                )));
            }
            per_circle.push(perfect_matchings(&legs));
        }
        let mut choice = vec![0usize; per_circle.len()];
        loop {
            let mut mate = vec![usize::MAX; g.legs()];
            for (ci, ms) in per_circle.iter().enumerate() {
                for &(a, b) in &ms[choice[ci]] {
                    mate[a] = b;
                    mate[b] = a;
                }
            }
            out.add_graph(&join(g, &mate, &new_key)?, c)?;
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < per_circle[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    Ok(out)
}

/// Delete the legs with a mate, joining through mates; closed chains of
/// deleted legs become vertex-free loops.
fn join(g: &Graph, mate: &[usize], new_key: &[u16]) -> Result<Graph> {
    let t = g.verts();
    let removed = |h: usize| g.leg_of(h).is_some_and(|l| mate[l] != usize::MAX);
    let mut new_leg = vec![usize::MAX; g.legs()];
    let mut legs = Vec::new();
    for l in 0..g.legs() {
        if mate[l] == usize::MAX {
            new_leg[l] = legs.len();
            legs.push((new_key[g.keys()[l] as usize], l as i64));
        }
    }
    let map = |h: usize| match g.leg_of(h) {
        Some(l) => 3 * t + new_leg[l],
        None => h,
    };
    let mut visited = vec![false; g.legs()];
    let mut p = vec![usize::MAX; 3 * t + legs.len()];
    for h in 0..g.half_edges() {
        if removed(h) {
            continue;
        }
        let mut q = g.partner_of(h);
        while removed(q) {
            let l = g.leg_of(q).expect("removed half-edges are legs");
            visited[l] = true;
            visited[mate[l]] = true;
            q = g.partner_of(g.leg_half(mate[l]));
        }
        p[map(h)] = map(q);
    }
    let mut loops = g.loops();
    for l in 0..g.legs() {
        if mate[l] == usize::MAX || visited[l] {
            continue;
        }
        let mut cur = l;
        loop {
            visited[cur] = true;
            visited[mate[cur]] = true;
            let nxt = g.leg_of(g.partner_of(g.leg_half(mate[cur]))).expect("closed chain of legs");
            if nxt == l {
                break;
            }
            cur = nxt;
        }
        loops += 1;
    }
    Graph::assemble(t, &legs, &p, loops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse;

    #[test]
    fn matchings_are_counted_by_double_factorials() {
        assert_eq!(perfect_matchings(&[0, 1, 2, 3]).len(), 3);
        assert_eq!(perfect_matchings(&[0, 1, 2, 3, 4, 5]).len(), 15);
        assert!(perfect_matchings(&[0, 1, 2]).is_empty());
    }

    #[test]
    fn bare_circle_and_short_circles_vanish() {
        let bare = LinComb::unit(Frame::skeleton(Skeleton::circles(1)));
        assert!(remove_circles(&bare, 1).unwrap().is_zero());
        let chord = parse("skeleton: C:o\n1 ; legs a@o:0 b@o:1 ; edges a-b").unwrap();
        assert!(remove_circles(&chord, 2).unwrap().is_zero());
        let r = remove_circles(&chord, 1).unwrap();
        assert_eq!(r.terms().keys().next().unwrap().loops(), 1);
    }

    #[test]
    fn too_many_legs_is_unsupported() {
        let chord = parse("skeleton: C:o\n1 ; legs a@o:0 b@o:1 ; edges a-b").unwrap();
        assert!(matches!(remove_circles(&chord, 0), Err(Error::Unsupported(_))));
    }
}
