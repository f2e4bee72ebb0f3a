//! The line-oriented diagram format and its JSON mirror.
//!
//! ```text
//! skeleton: I:a C:~b T:G1[c1;s0:c1.e>c1.s]
//! 1/2 ; vertices v0 v1 ; legs l0@a:0 l1@b:0 ; edges v0.0-v1.0 v0.1-l0 v1.1-l1 v0.2-v1.2
//! ```
//!
//! Marked graphs use the header `marked: g=2` and place legs with `l0@2`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::diagram::{fmt_q, Frame, LinComb, Q};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::skeleton::{ClosedGraph, Component, Skeleton, TreeEdge, TreeNode, TreeSpec};

struct Tok<'a> {
    text: &'a str,
    col: usize,
}

/// Whitespace-separated tokens of `s` (which starts at 1-based column `col0`).
fn tokens(s: &str, col0: usize) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() && depth <= 0 {
            if let Some(st) = start.take() {
                out.push(Tok {
                    text: &s[st..i],
                    col: col0 + s[..st].chars().count(),
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push(Tok {
            text: &s[st..],
            col: col0 + s[..st].chars().count(),
        });
    }
    out
}

fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Strip a `#` comment; `#k` inside brackets names a tree vertex.
fn strip_comment_outside_brackets(line: &str) -> &str {
    let mut depth = 0i32;
    for (i, ch) in line.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '#' if depth <= 0 => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Parse a frame description: the part after `skeleton:` or `marked:`, or a
/// whole header line.
pub fn parse_frame(s: &str) -> Result<Frame> {
    parse_header(strip_comment_outside_brackets(s), 1)
}

fn parse_header(line: &str, lineno: usize) -> Result<Frame> {
    let trimmed = line.trim_start();
    let lead = line.len() - trimmed.len();
    let col_of = |byte: usize| line[..byte].chars().count() + 1;
    if let Some(rest) = trimmed.strip_prefix("marked:") {
        let at = lead + "marked:".len();
        let body: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
        let g = body
            .strip_prefix("g=")
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| Error::syntax(lineno, col_of(at), "expected `g=<count>`"))?;
        return Ok(Frame::Marked(g));
    }
    let (rest, at) = match trimmed.strip_prefix("skeleton:") {
        Some(r) => (r, lead + "skeleton:".len()),
        None => (trimmed, lead),
    };
    let skel = parse_skeleton(rest, col_of(at), lineno)?;
    Ok(Frame::skeleton(skel))
}

fn parse_skeleton(s: &str, col0: usize, lineno: usize) -> Result<Skeleton> {
    let toks = tokens(s, col0);
    if toks.is_empty() {
        return Err(Error::syntax(lineno, col0, "empty skeleton description"));
    }
    let mut comps = Vec::new();
    for t in &toks {
        let err = |m: &str| Error::syntax(lineno, t.col, m.to_string());
        if t.text == "empty" {
            if toks.len() != 1 {
                return Err(err("`empty` cannot be combined with components"));
            }
            return Ok(Skeleton::empty());
        }
        if let Some(g) = t
            .text
            .strip_prefix("gamma")
            .or_else(|| t.text.strip_prefix("Gamma"))
        {
            let g: usize = g.parse().map_err(|_| err("expected `gamma<g>`"))?;
            comps.extend(Skeleton::chain(g).components().iter().cloned());
            continue;
        }
        let (kind, body) = t
            .text
            .split_once(':')
            .ok_or_else(|| err("expected `I:`, `C:` or `T:` component"))?;
        match kind {
            "I" | "C" => {
                let (reversed, name) = match body.strip_prefix('~') {
                    Some(n) => (true, n),
                    None => (false, body),
                };
                if !is_name(name) {
                    return Err(err("invalid component name"));
                }
                let name = name.to_string();
                comps.push(if kind == "I" {
                    Component::Interval { name, reversed }
                } else {
                    Component::Circle { name, reversed }
                });
            }
            "T" => comps.push(Component::Closed(parse_closed(body, t.col + 2, lineno)?)),
            _ => return Err(err("unknown component kind")),
        }
    }
    Skeleton::new(comps)
}

fn parse_closed(body: &str, col: usize, lineno: usize) -> Result<ClosedGraph> {
    let err = |off: usize, m: &str| Error::syntax(lineno, col + off, m.to_string());
    let open = body.find('[').ok_or_else(|| err(0, "expected `[` after the name"))?;
    if !body.ends_with(']') {
        return Err(err(body.len(), "expected closing `]`"));
    }
    let name = &body[..open];
    if !is_name(name) {
        return Err(err(0, "invalid component name"));
    }
    let inner = &body[open + 1..body.len() - 1];
    let (ivs, tree) = inner
        .split_once(';')
        .ok_or_else(|| err(open + 1, "expected `intervals;tree-edges`"))?;
    let mut intervals = Vec::new();
    for iv in ivs.split(',').map(str::trim) {
        let (rev, n) = match iv.strip_prefix('~') {
            Some(n) => (true, n),
            None => (false, iv),
        };
        if !is_name(n) {
            return Err(err(open + 1, &format!("invalid interval name `{iv}`")));
        }
        intervals.push((n.to_string(), rev));
    }
    let node = |s: &str| -> Result<TreeNode> {
        if let Some(k) = s.strip_prefix('#') {
            return k
                .parse()
                .map(TreeNode::Internal)
                .map_err(|_| err(open + 1, &format!("bad tree vertex `{s}`")));
        }
        let (iv, end) = s
            .rsplit_once('.')
            .ok_or_else(|| err(open + 1, &format!("bad tree node `{s}`")))?;
        let i = intervals
            .iter()
            .position(|(n, _)| n == iv)
            .ok_or_else(|| err(open + 1, &format!("unknown interval `{iv}`")))?;
        match end {
            "s" => Ok(TreeNode::Start(i)),
            "e" => Ok(TreeNode::End(i)),
            _ => Err(err(open + 1, &format!("bad endpoint `{s}`"))),
        }
    };
    let mut edges = Vec::new();
    let mut internal = 0;
    for te in tree.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (ename, ends) = te
            .split_once(':')
            .ok_or_else(|| err(ivs.len() + open + 2, &format!("bad tree edge `{te}`")))?;
        let (a, b) = ends
            .split_once('>')
            .ok_or_else(|| err(ivs.len() + open + 2, &format!("bad tree edge `{te}`")))?;
        let (from, to) = (node(a.trim())?, node(b.trim())?);
        for n in [from, to] {
            if let TreeNode::Internal(k) = n {
                internal = internal.max(k + 1);
            }
        }
        edges.push(TreeEdge {
            name: ename.trim().to_string(),
            from,
            to,
        });
    }
    Ok(ClosedGraph {
        name: name.to_string(),
        intervals,
        tree: TreeSpec { internal, edges },
    })
}

fn parse_coeff(s: &str, lineno: usize, col: usize) -> Result<Q> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    let bad = || Error::syntax(lineno, col, format!("invalid coefficient `{s}`"));
    let q = match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::syntax(lineno, col, "zero denominator"));
            }
            Q::new(p, q)
        }
        None => Q::from_integer(s.parse().map_err(|_| bad())?),
    };
    Ok(q)
}

/// Parse a rational number in `p` or `p/q` form.
pub fn parse_rational(s: &str) -> Result<Q> {
    parse_coeff(s, 1, 1)
}

enum End {
    Slot(usize, usize),
    Leg(usize),
}

fn parse_term(line: &str, lineno: usize, frame: &Frame) -> Result<(Graph, Q)> {
    let mut sections = Vec::new();
    let mut start = 0;
    for (i, ch) in line.char_indices() {
        if ch == ';' {
            sections.push((start, &line[start..i]));
            start = i + 1;
        }
    }
    sections.push((start, &line[start..]));
    let col = |byte: usize| line[..byte].chars().count() + 1;
    let (c0, coeff_text) = sections[0];
    let coeff = parse_coeff(coeff_text, lineno, col(c0 + coeff_text.len() - coeff_text.trim_start().len()))?;

    let mut verts: HashMap<String, usize> = HashMap::new();
    let mut legs: HashMap<String, usize> = HashMap::new();
    let mut leg_place: Vec<(u16, i64)> = Vec::new();
    let mut edge_toks: Vec<(String, String, usize)> = Vec::new();
    let mut loops = 0u16;
    let mut seen = Vec::new();
    for &(off, sec) in &sections[1..] {
        let toks = tokens(sec, col(off));
        let Some(head) = toks.first() else {
            return Err(Error::syntax(lineno, col(off), "empty section"));
        };
        if seen.contains(&head.text) {
            return Err(Error::syntax(lineno, head.col, format!("duplicate `{}` section", head.text)));
        }
        seen.push(head.text);
        match head.text {
            "vertices" => {
                for t in &toks[1..] {
                    if !is_name(t.text) || verts.contains_key(t.text) || legs.contains_key(t.text) {
                        return Err(Error::syntax(lineno, t.col, format!("bad or repeated vertex `{}`", t.text)));
                    }
                    let n = verts.len();
                    verts.insert(t.text.to_string(), n);
                }
            }
            "legs" => {
                for t in &toks[1..] {
                    let (name, place) = t
                        .text
                        .split_once('@')
                        .ok_or_else(|| Error::syntax(lineno, t.col, "expected `leg@place`"))?;
                    if !is_name(name) || legs.contains_key(name) || verts.contains_key(name) {
                        return Err(Error::syntax(lineno, t.col, format!("bad or repeated leg `{name}`")));
                    }
                    let pcol = t.col + name.chars().count() + 1;
                    let (key, pos) = parse_place(place, frame, lineno, pcol)?;
                    legs.insert(name.to_string(), leg_place.len());
                    leg_place.push((key, pos));
                }
            }
            "edges" => {
                for t in &toks[1..] {
                    let (a, b) = t
                        .text
                        .split_once('-')
                        .ok_or_else(|| Error::syntax(lineno, t.col, "expected `end-end`"))?;
                    edge_toks.push((a.to_string(), b.to_string(), t.col));
                }
            }
            "loops" => {
                let t = toks.get(1).ok_or_else(|| Error::syntax(lineno, head.col, "expected a loop count"))?;
                loops = t
                    .text
                    .parse()
                    .map_err(|_| Error::syntax(lineno, t.col, "invalid loop count"))?;
                if toks.len() > 2 {
                    return Err(Error::syntax(lineno, toks[2].col, "unexpected token"));
                }
            }
            other => {
                return Err(Error::syntax(lineno, head.col, format!("unknown section `{other}`")));
            }
        }
    }
    let t = verts.len();
    let resolve = |s: &str, c: usize| -> Result<End> {
        if let Some((v, slot)) = s.rsplit_once('.') {
            if let Some(&vi) = verts.get(v) {
                let slot: usize = slot
                    .parse()
                    .ok()
                    .filter(|&x| x < 3)
                    .ok_or_else(|| Error::syntax(lineno, c, format!("slot must be 0, 1 or 2 in `{s}`")))?;
                return Ok(End::Slot(vi, slot));
            }
            if let Some(&li) = legs.get(v) {
                if slot != "0" {
                    return Err(Error::syntax(lineno, c, format!("legs have the single slot 0 in `{s}`")));
                }
                return Ok(End::Leg(li));
            }
        }
        if let Some(&li) = legs.get(s) {
            return Ok(End::Leg(li));
        }
        Err(Error::syntax(lineno, c, format!("unknown endpoint `{s}`")))
    };
    let n = 3 * t + leg_place.len();
    let mut partner = vec![usize::MAX; n];
    let idx = |e: End| match e {
        End::Slot(v, s) => 3 * v + s,
        End::Leg(l) => 3 * t + l,
    };
    for (a, b, c) in &edge_toks {
        let ha = idx(resolve(a, *c)?);
        let hb = idx(resolve(b, *c + a.chars().count() + 1)?);
        if ha == hb || partner[ha] != usize::MAX || partner[hb] != usize::MAX {
            return Err(Error::Invariant {
                invariant: "every half-edge slot is matched exactly once",
                detail: format!("line {lineno}, column {c}: `{a}-{b}` reuses a slot"),
            });
        }
        partner[ha] = hb;
        partner[hb] = ha;
    }
    if let Some(h) = partner.iter().position(|&p| p == usize::MAX) {
        let what = if h < 3 * t {
            let name = verts.iter().find(|(_, &i)| i == h / 3).map(|(k, _)| k.clone()).unwrap_or_default();
            format!("{name}.{}", h % 3)
        } else {
            legs.iter().find(|(_, &i)| i == h - 3 * t).map(|(k, _)| k.clone()).unwrap_or_default()
        };
        return Err(Error::Invariant {
            invariant: "every half-edge slot is matched exactly once",
            detail: format!("line {lineno}: `{what}` is unmatched"),
        });
    }
    if matches!(frame, Frame::Skeleton(_)) {
        let mut places = leg_place.clone();
        places.sort_unstable();
        if places.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invariant {
                invariant: "positions on each skeleton edge are a strict total order",
                detail: format!("line {lineno}: two legs share a position"),
            });
        }
    }
    if (t + leg_place.len()) % 2 != 0 {
        return Err(Error::Invariant {
            invariant: "total number of graph vertices is even",
            detail: format!("line {lineno}: {} vertices and {} legs", t, leg_place.len()),
        });
    }
    let g = Graph::assemble(t, &leg_place, &partner, loops)?;
    Ok((g, coeff))
}

fn parse_place(place: &str, frame: &Frame, lineno: usize, col: usize) -> Result<(u16, i64)> {
    match frame {
        Frame::Marked(g) => {
            let label: usize = place
                .parse()
                .map_err(|_| Error::syntax(lineno, col, format!("invalid label `{place}`")))?;
            if label == 0 || label > *g {
                return Err(Error::Invariant {
                    invariant: "labels in range",
                    detail: format!("line {lineno}, column {col}: label {label} not in 1..={g}"),
                });
            }
            Ok(((label - 1) as u16, 0))
        }
        Frame::Skeleton(s) => {
            let (edge, pos) = place
                .rsplit_once(':')
                .ok_or_else(|| Error::syntax(lineno, col, "expected `edge:position`"))?;
            let e = s
                .edge_index(edge)
                .ok_or_else(|| Error::syntax(lineno, col, format!("unknown skeleton edge `{edge}`")))?;
            let pos: i64 = pos.parse().map_err(|_| {
                Error::syntax(lineno, col + edge.chars().count() + 1, format!("invalid position `{pos}`"))
            })?;
            Ok((e as u16, pos))
        }
    }
}

/// Parse one linear combination.
pub fn parse(text: &str) -> Result<LinComb> {
    let mut frame = None;
    let mut out: Option<LinComb> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment_outside_brackets(raw);
        if line.trim().is_empty() {
            continue;
        }
        match &frame {
            None => {
                let f = parse_header(line, lineno)?;
                out = Some(LinComb::zero(f.clone()));
                frame = Some(f);
            }
            Some(f) => {
                let (g, c) = parse_term(line, lineno, f)?;
                out.as_mut().expect("frame set").add_graph(&g, &c)?;
            }
        }
    }
    out.ok_or_else(|| Error::syntax(1, 1, "missing `skeleton:` header"))
}

fn half_name(g: &Graph, h: usize) -> String {
    match g.vertex_of(h) {
        Some(v) => format!("v{v}.{}", h % 3),
        None => format!("l{}", g.leg_of(h).expect("leg half-edge")),
    }
}

fn leg_places(frame: &Frame, g: &Graph) -> Vec<String> {
    let keys = g.keys();
    (0..g.legs())
        .map(|i| match frame {
            Frame::Marked(_) => format!("l{i}@{}", keys[i] + 1),
            Frame::Skeleton(s) => {
                let pos = i - g.legs_on(keys[i]).start;
                format!("l{i}@{}:{pos}", s.edges()[keys[i] as usize].name)
            }
        })
        .collect()
}

fn header(frame: &Frame) -> String {
    match frame {
        Frame::Skeleton(s) => format!("skeleton: {s}"),
        Frame::Marked(g) => format!("marked: g={g}"),
    }
}

/// Serialize a single graph term (without coefficient handling of zero).
pub fn term_line(frame: &Frame, g: &Graph, c: &Q) -> String {
    let verts: Vec<String> = (0..g.verts()).map(|v| format!("v{v}")).collect();
    let edges: Vec<String> = g
        .edge_list()
        .into_iter()
        .map(|(a, b)| format!("{}-{}", half_name(g, a), half_name(g, b)))
        .collect();
    let mut line = format!(
        "{} ; vertices{}{} ; legs{}{} ; edges{}{}",
        fmt_q(c),
        if verts.is_empty() { "" } else { " " },
        verts.join(" "),
        if g.legs() == 0 { "" } else { " " },
        leg_places(frame, g).join(" "),
        if edges.is_empty() { "" } else { " " },
        edges.join(" ")
    );
    if g.loops() > 0 {
        line.push_str(&format!(" ; loops {}", g.loops()));
    }
    line
}

/// Canonical text of a linear combination; terms in canonical order.
pub fn serialize(x: &LinComb) -> String {
    let mut s = header(x.frame());
    s.push('\n');
    for (g, c) in x.terms() {
        s.push_str(&term_line(x.frame(), g, c));
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct JsonLeg {
    name: String,
    at: String,
    pos: usize,
}

#[derive(Serialize)]
struct JsonTerm {
    coeff: String,
    vertices: Vec<String>,
    legs: Vec<JsonLeg>,
    edges: Vec<[String; 2]>,
    loops: u16,
}

#[derive(Serialize)]
struct JsonLinComb {
    #[serde(skip_serializing_if = "Option::is_none")]
    skeleton: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    marked: Option<usize>,
    terms: Vec<JsonTerm>,
}

/// JSON document with the same content as [`serialize`].
pub fn to_json(x: &LinComb) -> String {
    let frame = x.frame();
    let terms = x
        .terms()
        .iter()
        .map(|(g, c)| JsonTerm {
            coeff: fmt_q(c),
            vertices: (0..g.verts()).map(|v| format!("v{v}")).collect(),
            legs: (0..g.legs())
                .map(|i| {
                    let k = g.keys()[i];
                    let (at, pos) = match frame {
                        Frame::Marked(_) => ((k + 1).to_string(), 0),
                        Frame::Skeleton(s) => (
                            s.edges()[k as usize].name.clone(),
                            i - g.legs_on(k).start,
                        ),
                    };
                    JsonLeg {
                        name: format!("l{i}"),
                        at,
                        pos,
                    }
                })
                .collect(),
            edges: g
                .edge_list()
                .into_iter()
                .map(|(a, b)| [half_name(g, a), half_name(g, b)])
                .collect(),
            loops: g.loops(),
        })
        .collect();
    let doc = JsonLinComb {
        skeleton: frame.as_skeleton().map(|s| s.to_string()),
        marked: match frame {
            Frame::Marked(g) => Some(*g),
            Frame::Skeleton(_) => None,
        },
        terms,
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA: &str = "skeleton: empty\n1 ; vertices v0 v1 ; legs ; edges v0.0-v1.0 v0.1-v1.1 v0.2-v1.2\n";

    #[test]
    fn theta_round_trips() {
        let x = parse(THETA).unwrap();
        assert_eq!(serialize(&x), THETA);
        assert_eq!(parse(&serialize(&x)).unwrap(), x);
    }

    #[test]
    fn garbage_is_a_syntax_error() {
        assert!(matches!(parse("garbage"), Err(Error::Syntax { .. })));
        let e = parse("skeleton: I:a\n1 ; legs l0@a:0 l1@b:1 ; edges l0-l1").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, .. }), "{e:?}");
    }

    #[test]
    fn unmatched_slot_names_the_invariant() {
        let e = parse("skeleton: empty\n1 ; vertices u v ; edges u.0-v.0 u.1-v.1").unwrap_err();
        assert!(matches!(e, Error::Invariant { .. }));
        assert!(e.is_parse());
    }

    #[test]
    fn tree_closed_header_parses_with_comment() {
        let x = parse("skeleton: T:G[a;t:a.e>a.s] # loop\n2 ; legs p@a:0 q@t:0 ; edges p-q\n").unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x.frame().to_string(), "T:G[a;t:a.e>a.s]");
        assert_eq!(parse(&serialize(&x)).unwrap(), x);
    }

    #[test]
    fn chain_shorthand_and_marked_frames() {
        let f = parse_frame("skeleton: gamma2").unwrap();
        assert_eq!(f.key_count(), 2 + 5);
        let x = parse("marked: g=2\n-1/2 ; legs a@1 b@2 ; edges a-b").unwrap();
        let s = serialize(&x);
        assert!(s.starts_with("marked: g=2\n-1/2 ;"), "{s}");
        assert!(matches!(parse("marked: g=2\n1 ; legs a@3 b@1 ; edges a-b"), Err(Error::Invariant { .. })));
    }
}
