//! Matrix representations used to evaluate legs on circles.

use num_traits::Zero;

use super::data::{Matrix, WeightData};
use crate::diagram::{fmt_q, Q};
use crate::error::{Error, Result};
use crate::text::parse_rational;

/// One `r x r` matrix per basis element of the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleRep {
    dim: usize,
    mats: Vec<Matrix>,
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

impl CircleRep {
    pub fn new(mats: Vec<Matrix>) -> Result<CircleRep> {
        let dim = mats.first().map_or(0, Vec::len);
        if mats.is_empty() || mats.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim)) {
            return Err(Error::Weight("representation matrices must be square and of one size".into()));
        }
        Ok(CircleRep { dim, mats })
    }

    /// The adjoint action, `(rho_a)_{cb} = sum_m T(a,b,m) E(m,c)` with `E`
    /// the edge tensor. Needs scalar tensor entries.
    pub fn adjoint(w: &WeightData) -> Result<CircleRep> {
        let d = w.rank();
        let scalar = |a: usize, b: usize, m: usize| -> Result<Q> {
            let t = w.t(a, b, m);
            if t.0[1..].iter().any(|x| !x.is_zero()) {
                return Err(Error::Weight("the adjoint action needs scalar tensor entries".into()));
            }
            Ok(t.0[0].clone())
        };
        let mut mats = vec![vec![vec![Q::zero(); d]; d]; d];
        for (a, mat) in mats.iter_mut().enumerate() {
            for b in 0..d {
                for m in 0..d {
                    let t = scalar(a, b, m)?;
                    if t.is_zero() {
                        continue;
                    }
                    for (c, row) in mat.iter_mut().enumerate() {
                        row[b] += &t * &w.edge()[m][c];
                    }
                }
            }
        }
        CircleRep::new(mats)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of matrices, the rank of the algebra represented.
    pub fn algebra_dim(&self) -> usize {
        self.mats.len()
    }

    pub fn matrix(&self, a: usize) -> &Matrix {
        &self.mats[a]
    }

    /// Trace of the product of the matrices listed, in order.
    pub fn trace(&self, word: &[usize]) -> Q {
        if word.is_empty() {
            return Q::from_integer(self.dim.into());
        }
        let mut m = self.mats[word[0]].clone();
        for &a in &word[1..] {
            m = mat_mul(&m, &self.mats[a]);
        }
        (0..self.dim).map(|i| m[i][i].clone()).sum()
    }

    /// Pairs `(a, b)` for which `[rho_a, rho_b] = sum T(a,b,m) E(m,c) rho_c`
    /// fails. Empty when the matrices represent the algebra of `w`.
    pub fn commutator_defects(&self, w: &WeightData) -> Vec<(usize, usize)> {
        let d = w.rank();
        if self.mats.len() != d {
            return vec![(0, 0)];
        }
        let mut bad = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let ab = mat_mul(&self.mats[a], &self.mats[b]);
                let ba = mat_mul(&self.mats[b], &self.mats[a]);
                let mut lhs: Matrix = ab
                    .iter()
                    .zip(&ba)
                    .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
                    .collect();
                for m in 0..d {
                    let t = &w.t(a, b, m).0;
                    if t.iter().skip(1).any(|x| !x.is_zero()) {
                        bad.push((a, b));
                        continue;
                    }
                    for c in 0..d {
                        let f = &t[0] * &w.edge()[m][c];
                        if f.is_zero() {
                            continue;
                        }
                        for (row, src) in lhs.iter_mut().zip(&self.mats[c]) {
                            for (x, y) in row.iter_mut().zip(src) {
                                *x -= &f * y;
                            }
                        }
                    }
                }
                if lhs.iter().flatten().any(|x| !x.is_zero()) {
                    bad.push((a, b));
                }
            }
        }
        bad.dedup();
        bad
    }

    /// Parse `dim r` followed by blocks `rho a` of `r` rows (a from 1).
    pub fn parse(text: &str) -> Result<CircleRep> {
        let mut dim = None;
        let mut mats: Vec<Option<Matrix>> = Vec::new();
        let mut current: Option<usize> = None;
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["dim", r] => dim = Some(r.parse::<usize>().map_err(|_| Error::syntax(ln, 5, "bad dimension"))?),
                ["rho", a] => {
                    let a = a
                        .parse::<usize>()
                        .ok()
                        .filter(|&a| a >= 1)
                        .ok_or_else(|| Error::syntax(ln, 5, "matrix number counted from 1"))?;
                    if mats.len() < a {
                        mats.resize(a, None);
                    }
                    mats[a - 1] = Some(Vec::new());
                    current = Some(a - 1);
                }
                _ => {
                    let a = current.ok_or_else(|| Error::syntax(ln, 1, "row outside a `rho` block"))?;
                    let row = words
                        .iter()
                        .map(|w| parse_rational(w).map_err(|_| Error::syntax(ln, 1, format!("bad entry `{w}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    mats[a].as_mut().expect("block opened").push(row);
                }
            }
        }
        let dim = dim.ok_or_else(|| Error::syntax(1, 1, "missing `dim`"))?;
        let mats = mats
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| Error::Weight(format!("matrix {} missing", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        let rep = CircleRep::new(mats)?;
        if rep.dim != dim {
            return Err(Error::Weight(format!("matrices are {0}x{0}, not {dim}x{dim}", rep.dim)));
        }
        Ok(rep)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for (a, m) in self.mats.iter().enumerate() {
            out.push_str(&format!("rho {}\n", a + 1));
            for row in m {
                out.push_str(&row.iter().map(fmt_q).collect::<Vec<_>>().join(" "));
                out.push('\n');
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_of_so3_represents_it() {
        let w = WeightData::preset("so3").unwrap();
        let rho = CircleRep::adjoint(&w).unwrap();
        assert!(rho.commutator_defects(&w).is_empty());
        // the Casimir trace: sum_a tr(rho_a rho_a) = -6
        let cas: Q = (0..3).map(|a| rho.trace(&[a, a])).sum();
        assert_eq!(cas, Q::from_integer((-6).into()));
        assert_eq!(CircleRep::parse(&rho.to_text()).unwrap(), rho);
    }

    #[test]
    fn perturbed_tensor_has_no_adjoint_representation() {
        let w = WeightData::preset("so3-perturbed").unwrap();
        let rho = CircleRep::adjoint(&w).unwrap();
        assert!(!rho.commutator_defects(&w).is_empty());
    }
}
