//! The diagrammatic TQFT: state spaces on tree-closed skeleta, the inclusion
//! of disjoint unions and the pairing of a state with its reverse.

use std::collections::BTreeSet;

use crate::diagram::{Frame, LinComb};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::maps::{remove_circles, sigma, Root};
use crate::quotient::QuotientSpace;
use crate::skeleton::{Component, Skeleton};

/// A state: a combination on a disjoint union of tree-closed components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TQFTVector {
    value: LinComb,
    profile: Vec<usize>,
}

impl TQFTVector {
    pub fn new(value: LinComb) -> Result<TQFTVector> {
        let s = value
            .frame()
            .as_skeleton()
            .ok_or_else(|| Error::Unsupported("states live on skeleta".into()))?;
        let profile = s
            .components()
            .iter()
            .map(|c| match c {
                Component::Closed(cg) => Ok(cg.intervals.len()),
                _ => Err(Error::Unsupported(format!(
                    "`{}` is not tree-closed",
                    c.name()
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TQFTVector { value, profile })
    }

    /// The empty diagram on the chain graph of genus `g`.
    pub fn vacuum(g: usize) -> TQFTVector {
        let s = if g == 0 {
            Skeleton::empty()
        } else {
            Skeleton::chain(g)
        };
        TQFTVector {
            value: LinComb::unit(Frame::skeleton(s)),
            profile: if g == 0 { vec![] } else { vec![g] },
        }
    }

    pub fn value(&self) -> &LinComb {
        &self.value
    }

    /// Genus of each component.
    pub fn profile(&self) -> &[usize] {
        &self.profile
    }

    pub fn into_value(self) -> LinComb {
        self.value
    }
}

fn names_of(s: &Skeleton) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = s.components().iter().map(|c| c.name().to_string()).collect();
    out.extend(s.edges().iter().map(|e| e.name.clone()));
    out
}

fn rename(c: &Component, suffix: &str) -> Component {
    match c {
        Component::Interval { name, reversed } => Component::Interval {
            name: format!("{name}{suffix}"),
            reversed: *reversed,
        },
        Component::Circle { name, reversed } => Component::Circle {
            name: format!("{name}{suffix}"),
            reversed: *reversed,
        },
        Component::Closed(cg) => {
            let mut cg = cg.clone();
            cg.name.push_str(suffix);
            for iv in &mut cg.intervals {
                iv.0.push_str(suffix);
            }
            for te in &mut cg.tree.edges {
                te.name.push_str(suffix);
            }
            Component::Closed(cg)
        }
    }
}

/// Disjoint union of two states. Names of the second state that clash with
/// the first get primes appended.
pub fn include(v1: &TQFTVector, v2: &TQFTVector) -> Result<TQFTVector> {
    let s1 = v1.value.frame().as_skeleton().expect("states live on skeleta");
    let s2 = v2.value.frame().as_skeleton().expect("states live on skeleta");
    let taken = names_of(s1);
    let mut suffix = String::new();
    while names_of(s2).iter().any(|n| taken.contains(&format!("{n}{suffix}"))) {
        suffix.push('\'');
    }
    let renamed = Skeleton::new(s2.components().iter().map(|c| rename(c, &suffix)).collect())?;
    let second = v2.value.reframe(Frame::skeleton(renamed))?;
    TQFTVector::new(v1.value.disjoint_union(&second)?)
}

/// Pair a state on a genus `g` component with a state on the same genus.
///
/// Both sides are cleared of tree legs, the intervals of the second are
/// reversed, interval `i` of the first is glued to interval `matching[i]` of
/// the second into a circle, and circles are removed with parameter `n`.
/// The result is reduced in `closed`, the quotient of the empty skeleton.
/// Output degree is the sum of the input degrees minus `n * g`.
pub fn pair(
    v1: &TQFTVector,
    v2: &TQFTVector,
    n: usize,
    matching: Option<&[usize]>,
    closed: &QuotientSpace,
) -> Result<LinComb> {
    if closed.frame() != &Frame::empty() {
        return Err(Error::FrameMismatch("pairing values lie in the empty skeleton".into()));
    }
    let g = match (v1.profile(), v2.profile()) {
        ([], []) => 0,
        ([a], [b]) if a == b => *a,
        (a, b) => {
            return Err(Error::FrameMismatch(format!(
                "cannot pair genus profiles {a:?} and {b:?}"
            )))
        }
    };
    if g == 0 {
        return closed.normal_form(&v1.value.disjoint_union(&v2.value)?);
    }
    let identity: Vec<usize> = (0..g).collect();
    let matching = matching.unwrap_or(&identity);
    let mut seen = vec![false; g];
    if matching.len() != g || matching.iter().any(|&j| j >= g || std::mem::replace(&mut seen[j], true)) {
        return Err(Error::Unsupported(format!(
            "{matching:?} is not a permutation of {g} intervals"
        )));
    }
    let mut glued_at = vec![0u16; g];
    for (i, &j) in matching.iter().enumerate() {
        glued_at[j] = i as u16;
    }
    let a = sigma(&v1.value, Root::default())?;
    let b = sigma(&v2.value, Root::default())?;
    let circles = Frame::skeleton(Skeleton::circles(g));
    let mut glued = LinComb::zero(circles);
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            let u = x.union(y, g as u16);
            let legs: Vec<(u16, i64)> = u
                .keys()
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    if (k as usize) < g {
                        (k, i as i64)
                    } else {
                        (glued_at[k as usize - g], (1 << 40) - i as i64)
                    }
                })
                .collect();
            let partner: Vec<usize> = u.partner().iter().map(|&p| p as usize).collect();
            let c = if y.legs() % 2 == 1 { -(cx * cy) } else { cx * cy };
            glued.add_graph(&Graph::assemble(u.verts(), &legs, &partner, u.loops())?, &c)?;
        }
    }
    let removed = remove_circles(&glued, n)?;
    closed.normal_form(&removed.reframe(Frame::empty())?)
}
