//! Canonical forms of oriented unitrivalent graphs up to relabeling.
//!
//! The canonical representative is the minimal encoding over a family of
//! traversal labelings that is closed under relabeling: legs are visited in
//! every admissible order (fixed on intervals, rotated on circles, permuted
//! within a label), then vertices are numbered breadth-first, branching over
//! the two slot orders that keep the entry slot first and over every start
//! vertex of a leg-free component. Two labelings with the same minimal
//! encoding differ by an automorphism; if their slot permutations have
//! different parity the graph equals minus itself and is zero.

use crate::graph::Graph;

/// How the legs sharing one attachment key may be reordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeySym {
    /// Linear order along an interval or tree edge: fixed.
    Linear,
    /// Cyclic order on a circle: any rotation.
    Cyclic,
    /// Unordered legs of a marked graph: any permutation.
    Free,
}

/// Canonical representative and the sign relating it to the input, or
/// `None` when the graph has an orientation-reversing automorphism.
pub fn canonicalize(g: &Graph, sym: impl Fn(u16) -> KeySym) -> Option<(Graph, i8)> {
    let orders = leg_orders(g, &sym);
    let mut search = Search::new(g);
    for order in &orders {
        search.run(order);
    }
    let best = search.best?;
    if search.conflict {
        return None;
    }
    let canon = Graph::new(g.verts(), g.keys().to_vec(), best, g.loops())
        .expect("relabeling preserves the matching");
    Some((canon, search.best_sign))
}

/// Convenience: true if `g` is AS-degenerate.
pub fn is_zero(g: &Graph, sym: impl Fn(u16) -> KeySym) -> bool {
    canonicalize(g, sym).is_none()
}

fn leg_orders(g: &Graph, sym: &impl Fn(u16) -> KeySym) -> Vec<Vec<usize>> {
    let keys = g.keys();
    let mut groups: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let k = keys[i];
        let j = keys.partition_point(|&x| x <= k);
        let base: Vec<usize> = (i..j).collect();
        let choices = match sym(k) {
            KeySym::Linear => vec![base],
            KeySym::Cyclic => (0..base.len())
                .map(|r| {
                    let mut b = base.clone();
                    b.rotate_left(r);
                    b
                })
                .collect(),
            KeySym::Free => permutations(&base),
        };
        groups.push(choices);
        i = j;
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for choices in groups {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in &choices {
                let mut p = prefix.clone();
                p.extend_from_slice(c);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

pub(crate) fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    g: &'a Graph,
    t: usize,
    legs: usize,
    order: Vec<usize>,
    new_of_leg: Vec<usize>,
    label: Vec<usize>,
    by_label: Vec<usize>,
    perm: Vec<[u8; 3]>,
    sign: i8,
    best: Option<Vec<u16>>,
    best_sign: i8,
    conflict: bool,
    scratch: Vec<u16>,
}

fn parity(p: [u8; 3]) -> i8 {
    // even permutations of (0,1,2) are the rotations
    match p {
        [0, 1, 2] | [1, 2, 0] | [2, 0, 1] => 1,
        _ => -1,
    }
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        let t = g.verts();
        Search {
            g,
            t,
            legs: g.legs(),
            order: Vec::new(),
            new_of_leg: vec![0; g.legs()],
            label: vec![UNSET; t],
            by_label: Vec::with_capacity(t),
            perm: Vec::with_capacity(t),
            sign: 1,
            best: None,
            best_sign: 1,
            conflict: false,
            scratch: vec![0; g.half_edges()],
        }
    }

    fn run(&mut self, order: &[usize]) {
        self.order = order.to_vec();
        for (new, &old) in order.iter().enumerate() {
            self.new_of_leg[old] = new;
        }
        self.dfs(0);
    }

    fn half_at(&self, cursor: usize) -> usize {
        if cursor < self.legs {
            self.g.leg_half(self.order[cursor])
        } else {
            let c = cursor - self.legs;
            let (k, pos) = (c / 3, c % 3);
            3 * self.by_label[k] + self.perm[k][pos] as usize
        }
    }

    fn push_vertex(&mut self, v: usize, p: [u8; 3]) {
        self.label[v] = self.by_label.len();
        self.by_label.push(v);
        self.perm.push(p);
        self.sign *= parity(p);
    }

    fn pop_vertex(&mut self) {
        let v = self.by_label.pop().expect("pop after push");
        let p = self.perm.pop().expect("pop after push");
        self.label[v] = UNSET;
        self.sign *= parity(p);
    }

    fn dfs(&mut self, mut cursor: usize) {
        loop {
            let limit = self.legs + 3 * self.by_label.len();
            if cursor >= limit {
                if self.by_label.len() == self.t {
                    self.leaf();
                    return;
                }
                // start a new leg-free component from every unlabeled vertex
                for v in 0..self.t {
                    if self.label[v] != UNSET {
                        continue;
                    }
                    for p in ALL_ORDERS {
                        self.push_vertex(v, p);
                        self.dfs(cursor);
                        self.pop_vertex();
                    }
                }
                return;
            }
            let h = self.half_at(cursor);
            let q = self.g.partner_of(h);
            if let Some(u) = self.g.vertex_of(q) {
                if self.label[u] == UNSET {
                    let entry = (q % 3) as u8;
                    let (a, b) = match entry {
                        0 => (1, 2),
                        1 => (0, 2),
                        _ => (0, 1),
                    };
                    for p in [[entry, a, b], [entry, b, a]] {
                        self.push_vertex(u, p);
                        self.dfs(cursor + 1);
                        self.pop_vertex();
                    }
                    return;
                }
            }
            cursor += 1;
        }
    }

    fn new_index(&self, h: usize) -> u16 {
        match self.g.vertex_of(h) {
            Some(v) => {
                let k = self.label[v];
                let s = (h % 3) as u8;
                let pos = self.perm[k].iter().position(|&x| x == s).expect("slot in perm");
                (3 * k + pos) as u16
            }
            None => (3 * self.t + self.new_of_leg[h - 3 * self.t]) as u16,
        }
    }

    fn leaf(&mut self) {
        let n = self.g.half_edges();
        let mut enc = std::mem::take(&mut self.scratch);
        for k in 0..self.t {
            let v = self.by_label[k];
            for pos in 0..3 {
                let h = 3 * v + self.perm[k][pos] as usize;
                enc[3 * k + pos] = self.new_index(self.g.partner_of(h));
            }
        }
        for new in 0..self.legs {
            let h = self.g.leg_half(self.order[new]);
            enc[3 * self.t + new] = self.new_index(self.g.partner_of(h));
        }
        debug_assert_eq!(enc.len(), n);
        match &self.best {
            None => {
                self.best = Some(enc.clone());
                self.best_sign = self.sign;
                self.conflict = false;
            }
            Some(b) => match enc.as_slice().cmp(b.as_slice()) {
                std::cmp::Ordering::Less => {
                    self.best = Some(enc.clone());
                    self.best_sign = self.sign;
                    self.conflict = false;
                }
                std::cmp::Ordering::Equal => {
                    if self.sign != self.best_sign {
                        self.conflict = true;
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
        self.scratch = enc;
    }
}

const ALL_ORDERS: [[u8; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];
