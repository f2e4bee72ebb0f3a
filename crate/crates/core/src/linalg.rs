//! Exact linear algebra: a fraction-free sparse reduced row echelon form over
//! the integers, and a small dense solver over the rationals.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::diagram::Q;

/// Sparse integer row, sorted by column.
pub type Row = Vec<(usize, BigInt)>;

/// Divide by the content and make the leading entry positive.
pub fn normalize(row: &mut Row) {
    let Some(first) = row.first() else { return };
    let neg = first.1.is_negative();
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    for (_, v) in row.iter_mut() {
        if !g.is_one() {
            *v = &*v / &g;
        }
        if neg {
            *v = -&*v;
        }
    }
}

/// Clear denominators of a rational row.
pub fn integer_row(entries: impl IntoIterator<Item = (usize, Q)>) -> Row {
    let entries: Vec<(usize, Q)> = entries.into_iter().collect();
    let mut l = BigInt::one();
    for (_, q) in &entries {
        l = l.lcm(q.denom());
    }
    let mut row: Row = entries
        .into_iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|(c, q)| (c, (q * Q::from_integer(l.clone())).to_integer()))
        .collect();
    row.sort_by_key(|(c, _)| *c);
    normalize(&mut row);
    row
}

fn get(row: &Row, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `a * x - b * y` for sorted sparse rows.
fn combine(a: &BigInt, x: &Row, b: &BigInt, y: &Row) -> Row {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cy = y.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if cx < cy {
            out.push((cx, a * &x[i].1));
            i += 1;
        } else if cy < cx {
            out.push((cy, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((cx, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form, pivots at the leftmost nonzero column.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Eliminate every pivot column from `row`.
    pub fn reduce(&self, mut row: Row) -> Row {
        let pivots: Vec<usize> = row
            .iter()
            .filter(|(c, _)| self.pivot_row.contains_key(c))
            .map(|(c, _)| *c)
            .collect();
        for c in pivots {
            let Some(v) = get(&row, c).cloned() else { continue };
            let p = &self.rows[self.pivot_row[&c]];
            let lead = &p[0].1;
            let g = lead.gcd(&v);
            row = combine(&(lead / &g), &row, &(&v / &g), p);
        }
        normalize(&mut row);
        row
    }

    /// Add a row to the span; returns true if the rank grew.
    pub fn insert(&mut self, row: Row) -> bool {
        let r = self.reduce(row);
        let Some(&(c, ref lead)) = r.first() else {
            return false;
        };
        let lead = lead.clone();
        for i in 0..self.rows.len() {
            if let Some(v) = get(&self.rows[i], c).cloned() {
                let g = lead.gcd(&v);
                let mut nr = combine(&(&lead / &g), &self.rows[i], &(&v / &g), &r);
                normalize(&mut nr);
                self.rows[i] = nr;
            }
        }
        self.pivot_row.insert(c, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Rational normal form: the unique vector congruent to `v` modulo the
    /// row span with no entries in pivot columns.
    pub fn normal_form(&self, v: &BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
        let mut out = v.clone();
        for (&c, x) in v {
            let Some(&ri) = self.pivot_row.get(&c) else { continue };
            let row = &self.rows[ri];
            let f = x / Q::from_integer(row[0].1.clone());
            for (col, e) in row {
                let entry = out.entry(*col).or_insert_with(Q::zero);
                *entry -= &f * Q::from_integer(e.clone());
            }
        }
        out.retain(|_, q| !q.is_zero());
        out
    }
}

/// Solve `sum_j y_j * cols[j] = target` over the rationals, if possible.
pub fn solve(cols: &[BTreeMap<usize, Q>], target: &BTreeMap<usize, Q>) -> Option<Vec<Q>> {
    let m = cols.len();
    // rows indexed by coordinate, columns by unknown plus the target
    let mut coords: Vec<usize> = cols.iter().flat_map(|c| c.keys().copied()).collect();
    coords.extend(target.keys().copied());
    coords.sort_unstable();
    coords.dedup();
    let mut a: Vec<Vec<Q>> = coords
        .iter()
        .map(|k| {
            let mut r: Vec<Q> = cols.iter().map(|c| c.get(k).cloned().unwrap_or_else(Q::zero)).collect();
            r.push(target.get(k).cloned().unwrap_or_else(Q::zero));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=m {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let mut y = vec![Q::zero(); m];
    for (i, &c) in pivots.iter().enumerate() {
        y[c] = a[i][m].clone();
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[(usize, i64)]) -> Row {
        v.iter().map(|&(c, x)| (c, BigInt::from(x))).collect()
    }

    #[test]
    fn reduced_form_is_independent_of_insertion_order() {
        let rs = [row(&[(0, 1), (1, 1), (2, 1)]), row(&[(1, 2), (3, -2)]), row(&[(0, 1), (2, 1), (3, 1)])];
        let mut a = Echelon::new();
        let mut b = Echelon::new();
        for r in &rs {
            a.insert(r.clone());
        }
        for r in rs.iter().rev() {
            b.insert(r.clone());
        }
        let mut ra = a.rows().to_vec();
        let mut rb = b.rows().to_vec();
        ra.sort();
        rb.sort();
        assert_eq!(ra, rb);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn normal_form_kills_the_span() {
        let mut e = Echelon::new();
        e.insert(row(&[(0, 2), (1, -1)]));
        let v: BTreeMap<usize, Q> = [(0, Q::from_integer(2.into())), (1, Q::from_integer((-1).into()))].into();
        assert!(e.normal_form(&v).is_empty());
        let w: BTreeMap<usize, Q> = [(0, Q::one())].into();
        assert_eq!(e.normal_form(&w), [(1, Q::new(1.into(), 2.into()))].into());
    }

    #[test]
    fn solver_finds_or_refuses() {
        let c0: BTreeMap<usize, Q> = [(0, Q::one()), (1, Q::one())].into();
        let c1: BTreeMap<usize, Q> = [(1, Q::one())].into();
        let t: BTreeMap<usize, Q> = [(0, Q::from_integer(3.into()))].into();
        let y = solve(&[c0.clone(), c1.clone()], &t).unwrap();
        assert_eq!(y, vec![Q::from_integer(3.into()), Q::from_integer((-3).into())]);
        let bad: BTreeMap<usize, Q> = [(2, Q::one())].into();
        assert!(solve(&[c0, c1], &bad).is_none());
    }
}
