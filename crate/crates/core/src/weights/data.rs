//! Weight data: a bilinear form and a structure tensor over a coefficient
//! ring, read from a small text format or taken from the built-in presets.

use std::fmt;

use num_traits::{One, Zero};

use super::ring::{Elem, Ring};
use crate::diagram::{fmt_q, Q};
use crate::error::{Error, Result};
use crate::text::parse_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Symmetric form, totally antisymmetric tensor.
    Lie,
    /// Antisymmetric form, totally symmetric tensor with odd entries.
    Symplectic,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Lie => "lie",
            Flavor::Symplectic => "symplectic",
        })
    }
}

pub type Matrix = Vec<Vec<Q>>;

#[derive(Debug, Clone)]
pub struct WeightData {
    flavor: Flavor,
    ring: Ring,
    b: Matrix,
    edge: Matrix,
    t: Vec<Elem>,
    support: Vec<[usize; 3]>,
}

const PRESETS: &[&str] = &["so3", "so3-perturbed", "so3-beta", "sp2-zero", "sp2-toy"];

pub(crate) fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = Q::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn perms3(i: usize, j: usize, k: usize) -> [([usize; 3], bool); 6] {
    [
        ([i, j, k], false),
        ([j, k, i], false),
        ([k, i, j], false),
        ([j, i, k], true),
        ([i, k, j], true),
        ([k, j, i], true),
    ]
}

impl WeightData {
    /// Validate and assemble. `entries` lists one representative per orbit
    /// (0-based indices); the rest is filled in by the symmetry of the flavor.
    pub fn new(flavor: Flavor, ring: Ring, b: Matrix, entries: Vec<([usize; 3], Elem)>) -> Result<WeightData> {
        let d = b.len();
        if d == 0 || b.iter().any(|r| r.len() != d) {
            return Err(Error::Weight("the form must be a nonempty square matrix".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let ok = match flavor {
                    Flavor::Lie => b[i][j] == b[j][i],
                    Flavor::Symplectic => b[i][j] == -b[j][i].clone(),
                };
                if !ok {
                    return Err(Error::Weight(format!(
                        "the form must be {} for {flavor} data",
                        if flavor == Flavor::Lie { "symmetric" } else { "antisymmetric" }
                    )));
                }
            }
        }
        let inv = invert(&b).ok_or_else(|| Error::Weight("the form is not invertible".into()))?;
        let edge = match flavor {
            Flavor::Lie => inv,
            Flavor::Symplectic => inv.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect(),
        };
        let mut t: Vec<Option<Elem>> = vec![None; d * d * d];
        for ([i, j, k], v) in entries {
            if i >= d || j >= d || k >= d {
                return Err(Error::Weight(format!("tensor index out of range 1..={d}")));
            }
            if flavor == Flavor::Symplectic && !ring.is_homogeneous(&v, 1) {
                return Err(Error::Weight("symplectic tensor entries must have grade 1".into()));
            }
            for (p, odd) in perms3(i, j, k) {
                let val = if odd && flavor == Flavor::Lie { v.neg() } else { v.clone() };
                let cell = &mut t[(p[0] * d + p[1]) * d + p[2]];
                match cell {
                    Some(old) if *old != val => {
                        return Err(Error::Weight(format!(
                            "conflicting tensor entries at ({}, {}, {})",
                            p[0] + 1,
                            p[1] + 1,
                            p[2] + 1
                        )))
                    }
                    _ => *cell = Some(val),
                }
            }
        }
        let t: Vec<Elem> = t.into_iter().map(|c| c.unwrap_or_else(|| ring.zero())).collect();
        let mut support = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if !t[(i * d + j) * d + k].is_zero() {
                        support.push([i, j, k]);
                    }
                }
            }
        }
        Ok(WeightData {
            flavor,
            ring,
            b,
            edge,
            t,
            support,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn form(&self) -> &Matrix {
        &self.b
    }

    /// The edge tensor: the inverse form, negated for symplectic data.
    pub fn edge(&self) -> &Matrix {
        &self.edge
    }

    pub fn t(&self, i: usize, j: usize, k: usize) -> &Elem {
        let d = self.rank();
        &self.t[(i * d + j) * d + k]
    }

    /// Index triples with a nonzero tensor entry.
    pub fn support(&self) -> &[[usize; 3]] {
        &self.support
    }

    /// Value of a vertex-free loop: the trace of the edge tensor against the form.
    pub fn loop_value(&self) -> Q {
        let d = Q::from_integer(self.rank().into());
        match self.flavor {
            Flavor::Lie => d,
            Flavor::Symplectic => -d,
        }
    }

    pub fn preset_names() -> &'static [&'static str] {
        PRESETS
    }

    pub fn preset(name: &str) -> Result<WeightData> {
        let q = |n: i64| Q::from_integer(n.into());
        let identity = |d: usize| -> Matrix {
            (0..d).map(|i| (0..d).map(|j| q((i == j) as i64)).collect()).collect()
        };
        let symplectic = vec![vec![q(0), q(1)], vec![q(-1), q(0)]];
        match name {
            "so3" => {
                let r = Ring::rationals();
                let one = r.one();
                WeightData::new(Flavor::Lie, r, identity(3), vec![([0, 1, 2], one)])
            }
            "so3-perturbed" => {
                let r = Ring::rationals();
                let one = r.one();
                WeightData::new(Flavor::Lie, r, identity(5), vec![([0, 1, 2], one.clone()), ([2, 3, 4], one)])
            }
            "so3-beta" => {
                let r = Ring::truncated(4)?;
                let b = r.basis(1);
                WeightData::new(Flavor::Lie, r, identity(3), vec![([0, 1, 2], b)])
            }
            "sp2-zero" => WeightData::new(Flavor::Symplectic, Ring::exterior(1)?, symplectic, vec![]),
            "sp2-toy" => {
                let r = Ring::exterior(4)?;
                let e = |i: usize| r.basis(1 << i);
                let entries = vec![([0, 0, 0], e(0)), ([0, 0, 1], e(1)), ([0, 1, 1], e(2)), ([1, 1, 1], e(3))];
                WeightData::new(Flavor::Symplectic, r, symplectic, entries)
            }
            _ => Err(Error::Weight(format!(
                "unknown preset `{name}` (known: {})",
                PRESETS.join(", ")
            ))),
        }
    }

    /// Parse the data file format.
    pub fn parse(text: &str) -> Result<WeightData> {
        Parser::default().run(text)
    }

    /// Render in the file format; `parse` reads it back.
    pub fn to_text(&self) -> String {
        let d = self.rank();
        let mut out = format!("flavor {}\nrank {d}\n", self.flavor);
        let names = self.ring.names();
        out.push_str("ring custom");
        for (n, g) in names.iter().zip(self.ring.grades()) {
            out.push_str(&format!(" {n}:{g}"));
        }
        out.push('\n');
        for i in 1..names.len() {
            for j in 1..names.len() {
                let p = self.ring.mul(&self.ring.basis(i), &self.ring.basis(j));
                if !p.is_zero() {
                    out.push_str(&format!("mul {} {} : {}\n", names[i], names[j], self.ring.display(&p)));
                }
            }
        }
        out.push_str("B\n");
        for row in &self.b {
            out.push_str(&row.iter().map(fmt_q).collect::<Vec<_>>().join(" "));
            out.push('\n');
        }
        out.push_str("T\n");
        for &[i, j, k] in &self.support {
            if i <= j && j <= k {
                out.push_str(&format!(
                    "{} {} {} : {}\n",
                    i + 1,
                    j + 1,
                    k + 1,
                    self.ring.display(self.t(i, j, k))
                ));
            }
        }
        out
    }
}

#[derive(Default)]
struct Parser {
    flavor: Option<Flavor>,
    rank: Option<usize>,
    ring: Option<Ring>,
    custom: Option<(Vec<String>, Vec<u32>, Vec<(usize, usize, Vec<(usize, Q)>)>)>,
    b: Matrix,
    entries: Vec<([usize; 3], Elem)>,
}

enum Section {
    Header,
    B,
    T,
}

impl Parser {
    fn ring(&mut self) -> Result<&Ring> {
        if self.ring.is_none() {
            self.ring = Some(match self.custom.take() {
                Some((names, grades, products)) => Ring::new(names, grades, products)?,
                None => Ring::rationals(),
            });
        }
        Ok(self.ring.as_ref().expect("set above"))
    }

    fn run(mut self, text: &str) -> Result<WeightData> {
        let mut section = Section::Header;
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line {
                "B" => {
                    self.ring()?;
                    section = Section::B;
                    continue;
                }
                "T" => {
                    self.ring()?;
                    section = Section::T;
                    continue;
                }
                _ => {}
            }
            match section {
                Section::Header => self.header(line, ln)?,
                Section::B => {
                    let row = line
                        .split_whitespace()
                        .map(|w| parse_rational(w).map_err(|_| Error::syntax(ln, 1, format!("bad matrix entry `{w}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    self.b.push(row);
                }
                Section::T => self.tensor_line(line, ln)?,
            }
        }
        let flavor = self.flavor.ok_or_else(|| Error::syntax(1, 1, "missing `flavor`"))?;
        let rank = self.rank.ok_or_else(|| Error::syntax(1, 1, "missing `rank`"))?;
        self.ring()?;
        if self.b.len() != rank || self.b.iter().any(|r| r.len() != rank) {
            return Err(Error::Weight(format!("the form must be {rank}x{rank}")));
        }
        WeightData::new(flavor, self.ring.expect("set above"), self.b, self.entries)
    }

    fn header(&mut self, line: &str, ln: usize) -> Result<()> {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["flavor", "lie"] => self.flavor = Some(Flavor::Lie),
            ["flavor", "symplectic"] => self.flavor = Some(Flavor::Symplectic),
            ["rank", r] => {
                self.rank = Some(r.parse().map_err(|_| Error::syntax(ln, 6, "rank must be a positive integer"))?)
            }
            ["ring", "rationals"] => self.ring = Some(Ring::rationals()),
            ["ring", "exterior", k] => {
                let k = k.parse().map_err(|_| Error::syntax(ln, 15, "expected a generator count"))?;
                self.ring = Some(Ring::exterior(k)?);
            }
            ["ring", "truncated", k] => {
                let k = k.parse().map_err(|_| Error::syntax(ln, 16, "expected a degree"))?;
                self.ring = Some(Ring::truncated(k)?);
            }
            ["ring", "custom", basis @ ..] => {
                let mut names = Vec::new();
                let mut grades = Vec::new();
                for b in basis {
                    let (n, g) = b
                        .split_once(':')
                        .ok_or_else(|| Error::syntax(ln, 1, format!("expected name:grade, got `{b}`")))?;
                    names.push(n.to_string());
                    grades.push(g.parse().map_err(|_| Error::syntax(ln, 1, format!("bad grade in `{b}`")))?);
                }
                self.custom = Some((names, grades, Vec::new()));
            }
            ["mul", a, b, ":", ..] => {
                let rhs = line.split_once(':').expect("matched a colon").1;
                let (names, _, products) = self
                    .custom
                    .as_mut()
                    .ok_or_else(|| Error::syntax(ln, 1, "`mul` needs a custom ring"))?;
                let find = |n: &str| {
                    names
                        .iter()
                        .position(|x| x == n)
                        .ok_or_else(|| Error::syntax(ln, 1, format!("unknown basis element `{n}`")))
                };
                let (i, j) = (find(a)?, find(b)?);
                let mut v = Vec::new();
                for (c, name) in parse_sum(rhs, ln)? {
                    v.push((find(&name)?, c));
                }
                products.push((i, j, v));
            }
            _ => return Err(Error::syntax(ln, 1, format!("unrecognized line `{line}`"))),
        }
        Ok(())
    }

    fn tensor_line(&mut self, line: &str, ln: usize) -> Result<()> {
        let (idx, val) = line
            .split_once(':')
            .ok_or_else(|| Error::syntax(ln, 1, "expected `i j k : value`"))?;
        let idx: Vec<usize> = idx
            .split_whitespace()
            .map(|w| w.parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1))
            .collect::<Option<Vec<_>>>()
            .filter(|v| v.len() == 3)
            .ok_or_else(|| Error::syntax(ln, 1, "expected three indices counted from 1"))?;
        let ring = self.ring()?;
        let mut e = ring.zero();
        for (c, name) in parse_sum(val, ln)? {
            let k = ring
                .index(&name)
                .ok_or_else(|| Error::syntax(ln, 1, format!("unknown ring element `{name}`")))?;
            e.0[k] += c;
        }
        self.entries.push(([idx[0], idx[1], idx[2]], e));
        Ok(())
    }
}

/// Parse `c1*n1 + c2*n2 - ...`; a bare coefficient refers to the unit `1`.
fn parse_sum(s: &str, ln: usize) -> Result<Vec<(Q, String)>> {
    let s = s.trim().replace(" - ", " + -");
    let mut out = Vec::new();
    for term in s.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::syntax(ln, 1, "empty term"));
        }
        let (c, name) = match term.split_once('*') {
            Some((c, n)) => (c.trim(), n.trim()),
            None if term.chars().next().is_some_and(|c| c.is_ascii_digit() || c == '-') => (term, "1"),
            None => ("1", term),
        };
        let c = parse_rational(c).map_err(|_| Error::syntax(ln, 1, format!("bad coefficient `{c}`")))?;
        out.push((c, name.to_string()));
    }
    Ok(out)
}
