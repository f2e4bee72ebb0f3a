//! Symmetrization from labelled graphs to diagrams on intervals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::canon::permutations;
use crate::diagram::{Frame, LinComb, Q};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::solve;
use crate::quotient::QuotientSpace;
use crate::skeleton::Skeleton;

/// Average over all orders of the legs labelled `j` along interval `j`.
pub fn chi(m: &LinComb) -> Result<LinComb> {
    let Frame::Marked(g) = *m.frame() else {
        return Err(Error::Unsupported("chi takes labelled graphs".into()));
    };
    chi_into(m, &Skeleton::intervals(g))
}

/// [`chi`] with an explicit target skeleton of `g` intervals.
pub fn chi_into(m: &LinComb, target: &Skeleton) -> Result<LinComb> {
    let Frame::Marked(g) = *m.frame() else {
        return Err(Error::Unsupported("chi takes labelled graphs".into()));
    };
    if !target.all_intervals() || target.components().len() != g {
        return Err(Error::Unsupported(format!(
            "chi needs {g} intervals, got `{target}`"
        )));
    }
    let mut out = LinComb::zero(Frame::skeleton(target.clone()));
    for (graph, c) in m.terms() {
        let groups: Vec<Vec<Vec<usize>>> = (0..g as u16)
            .map(|k| permutations(&graph.legs_on(k).collect::<Vec<_>>()))
            .collect();
        let count: usize = groups.iter().map(Vec::len).product();
        let coeff = c / Q::from_integer(BigInt::from(count));
        let partner: Vec<usize> = graph.partner().iter().map(|&p| p as usize).collect();
        let mut choice = vec![0usize; g];
        loop {
            let mut legs: Vec<(u16, i64)> = graph.keys().iter().map(|&k| (k, 0)).collect();
            for (k, grp) in groups.iter().enumerate() {
                for (pos, &leg) in grp[choice[k]].iter().enumerate() {
                    legs[leg].1 = pos as i64;
                }
            }
            let placed = Graph::assemble(graph.verts(), &legs, &partner, graph.loops())?;
            out.add_graph(&placed, &coeff)?;
            // advance the mixed-radix counter
            let mut k = 0;
            while k < g {
                choice[k] += 1;
                if choice[k] < groups[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == g {
                break;
            }
        }
    }
    Ok(out)
}

/// Solve `chi(y) = x` in the quotients, degree by degree.
///
/// `intervals` is the quotient of the frame of `x`, `marked` the quotient of
/// labelled graphs with as many labels as `x` has intervals.
pub fn chi_inverse(x: &LinComb, intervals: &QuotientSpace, marked: &QuotientSpace) -> Result<LinComb> {
    let Frame::Marked(g) = *marked.frame() else {
        return Err(Error::Unsupported("the second space must hold labelled graphs".into()));
    };
    let skel = intervals
        .frame()
        .as_skeleton()
        .filter(|s| s.all_intervals() && s.components().len() == g)
        .ok_or_else(|| Error::Unsupported(format!("chi inverse needs {g} intervals")))?
        .clone();
    let x = intervals.normal_form(x)?;
    let mut out = LinComb::zero(marked.frame().clone());
    let mut degrees: Vec<usize> = x.terms().keys().map(Graph::deg).collect();
    degrees.dedup();
    for n in degrees {
        let target_basis = intervals.basis(n)?;
        let source = marked.basis(n)?.basis();
        let mut cols: Vec<BTreeMap<usize, Q>> = Vec::with_capacity(source.len());
        for b in &source {
            let one = LinComb::from_graph(marked.frame().clone(), b, Q::one())?;
            let img = intervals.normal_form(&chi_into(&one, &skel)?)?;
            cols.push(target_basis.coordinates(&img)?);
        }
        let target = target_basis.coordinates(&x.homogeneous(n))?;
        let y = solve(&cols, &target).ok_or_else(|| {
            Error::Internal(format!("chi inverse has no solution in degree {n}"))
        })?;
        for (b, c) in source.iter().zip(y) {
            out.add_canonical(b.clone(), c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse;

    #[test]
    fn edge_with_both_legs_on_one_label_is_the_chord() {
        let m = parse("marked: g=1\n1 ; legs a@1 b@1 ; edges a-b").unwrap();
        let x = chi(&m).unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x.terms().values().next().unwrap(), &Q::one());
    }

    #[test]
    fn edge_between_labels_joins_the_intervals() {
        let m = parse("marked: g=2\n1 ; legs a@1 b@2 ; edges a-b").unwrap();
        let x = chi(&m).unwrap();
        assert_eq!(x.len(), 1);
        let g = x.terms().keys().next().unwrap();
        assert_eq!(g.keys(), &[0, 1]);
    }

    #[test]
    fn empty_maps_to_empty() {
        let m = LinComb::unit(Frame::Marked(2));
        let x = chi(&m).unwrap();
        assert_eq!(x, LinComb::unit(Frame::skeleton(Skeleton::intervals(2))));
    }
}
