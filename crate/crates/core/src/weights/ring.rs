//! Finite-dimensional graded-commutative coefficient rings given by
//! structure constants on a basis whose first element is the unit.

use std::fmt;

use num_traits::{One, Zero};

use crate::diagram::{fmt_q, Q};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    grades: Vec<u32>,
    /// `table[i][j]` is the product of basis elements `i` and `j`.
    table: Vec<Vec<Vec<(usize, Q)>>>,
}

/// An element of a [`Ring`], dense in the basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub Vec<Q>);

impl Ring {
    /// Build a ring from basis names, grades and the products of non-unit
    /// basis elements. Unlisted products are zero. Fails unless the result
    /// is associative and graded commutative.
    pub fn new(names: Vec<String>, grades: Vec<u32>, products: Vec<(usize, usize, Vec<(usize, Q)>)>) -> Result<Ring> {
        let n = names.len();
        if n == 0 || grades.len() != n || grades[0] != 0 {
            return Err(Error::Weight("the first basis element must be the unit, of grade 0".into()));
        }
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            table[0][i] = vec![(i, Q::one())];
            table[i][0] = vec![(i, Q::one())];
        }
        for (i, j, v) in products {
            if i == 0 || j == 0 || i >= n || j >= n || v.iter().any(|(k, _)| *k >= n) {
                return Err(Error::Weight(format!("bad product entry for basis pair ({i}, {j})")));
            }
            table[i][j] = v.into_iter().filter(|(_, q)| !q.is_zero()).collect();
        }
        let ring = Ring { names, grades, table };
        ring.verify()?;
        Ok(ring)
    }

    /// The rationals.
    pub fn rationals() -> Ring {
        Ring::new(vec!["1".into()], vec![0], vec![]).expect("the rationals form a ring")
    }

    /// Exterior algebra on `k` odd generators `e1 .. ek`.
    pub fn exterior(k: usize) -> Result<Ring> {
        if k > 8 {
            return Err(Error::Weight("at most 8 exterior generators".into()));
        }
        let n = 1usize << k;
        let name = |m: usize| {
            if m == 0 {
                "1".to_string()
            } else {
                (0..k).filter(|b| m >> b & 1 == 1).map(|b| format!("e{}", b + 1)).collect()
            }
        };
        let mut products = Vec::new();
        for a in 1..n {
            for b in 1..n {
                if a & b != 0 {
                    continue;
                }
                // sign of merging the generators of b past those of a
                let mut swaps = 0;
                for j in 0..k {
                    if b >> j & 1 == 1 {
                        swaps += (a >> (j + 1)).count_ones();
                    }
                }
                let s = if swaps % 2 == 0 { Q::one() } else { -Q::one() };
                products.push((a, b, vec![(a | b, s)]));
            }
        }
        Ring::new((0..n).map(name).collect(), (0..n).map(|m| m.count_ones() as u32).collect(), products)
    }

    /// Polynomials in one even generator `b`, truncated above degree `k`.
    pub fn truncated(k: usize) -> Result<Ring> {
        let names = (0..=k)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "b".to_string(),
                _ => format!("b{i}"),
            })
            .collect();
        let mut products = Vec::new();
        for i in 1..=k {
            for j in 1..=k - i {
                products.push((i, j, vec![(i + j, Q::one())]));
            }
        }
        Ring::new(names, (0..=k).map(|i| 2 * i as u32).collect(), products)
    }

    fn verify(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                let ji = self.mul(&self.basis(j), &self.basis(i));
                let sign = self.grades[i] % 2 == 1 && self.grades[j] % 2 == 1;
                let expect = if sign { ji.neg() } else { ji };
                if ij != expect {
                    return Err(Error::Weight(format!(
                        "not graded commutative: {} * {}",
                        self.names[i], self.names[j]
                    )));
                }
                for &(k, _) in &self.table[i][j] {
                    if self.grades[k] != self.grades[i] + self.grades[j] {
                        return Err(Error::Weight(format!(
                            "{} * {} leaves grade {}",
                            self.names[i],
                            self.names[j],
                            self.grades[i] + self.grades[j]
                        )));
                    }
                }
                for k in 0..n {
                    let left = self.mul(&ij, &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.mul(&self.basis(j), &self.basis(k)));
                    if left != right {
                        return Err(Error::Weight(format!(
                            "not associative on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn grades(&self) -> &[u32] {
        &self.grades
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Elem {
        Elem(vec![Q::zero(); self.dim()])
    }

    pub fn one(&self) -> Elem {
        self.basis(0)
    }

    pub fn basis(&self, i: usize) -> Elem {
        let mut v = self.zero();
        v.0[i] = Q::one();
        v
    }

    pub fn scalar(&self, q: Q) -> Elem {
        let mut v = self.zero();
        v.0[0] = q;
        v
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = self.zero();
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                for (k, c) in &self.table[i][j] {
                    out.0[*k] += x * y * c;
                }
            }
        }
        out
    }

    /// True if every nonzero component has odd grade.
    pub fn is_odd(&self, a: &Elem) -> bool {
        a.0.iter().zip(&self.grades).all(|(x, g)| x.is_zero() || g % 2 == 1)
    }

    /// True if every nonzero component has grade `g`.
    pub fn is_homogeneous(&self, a: &Elem, g: u32) -> bool {
        a.0.iter().zip(&self.grades).all(|(x, h)| x.is_zero() || *h == g)
    }

    pub fn display<'a>(&'a self, a: &'a Elem) -> impl fmt::Display + 'a {
        ElemDisplay { ring: self, elem: a }
    }
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Q::is_zero)
    }

    pub fn add_assign(&mut self, other: &Elem) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    pub fn scale(&self, q: &Q) -> Elem {
        Elem(self.0.iter().map(|x| x * q).collect())
    }

    pub fn neg(&self) -> Elem {
        Elem(self.0.iter().map(|x| -x).collect())
    }
}

struct ElemDisplay<'a> {
    ring: &'a Ring,
    elem: &'a Elem,
}

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, x) in self.elem.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", fmt_q(x))?;
            } else {
                write!(f, "{}*{}", fmt_q(x), self.ring.names[i])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_generators_anticommute() {
        let r = Ring::exterior(2).unwrap();
        let (e1, e2) = (r.basis(1), r.basis(2));
        assert_eq!(r.mul(&e1, &e2), r.mul(&e2, &e1).neg());
        assert!(r.mul(&e1, &e1).is_zero());
        assert_eq!(r.display(&r.mul(&e2, &e1)).to_string(), "-1*e1e2");
    }

    #[test]
    fn truncation_kills_high_powers() {
        let r = Ring::truncated(2).unwrap();
        let b = r.basis(1);
        assert_eq!(r.mul(&b, &b), r.basis(2));
        assert!(r.mul(&r.basis(2), &b).is_zero());
    }

    #[test]
    fn non_commutative_table_is_rejected() {
        let names = vec!["1".into(), "x".into(), "y".into(), "z".into()];
        let bad = Ring::new(names, vec![0, 0, 0, 0], vec![(1, 2, vec![(3, Q::one())])]);
        assert!(bad.is_err());
    }
}
