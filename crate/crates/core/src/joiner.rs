//! Cycle joining: spanning-tree selection, sequence generation, feedback
//! functions, and the de Bruijn check.
//!
//! Joining two adjacent cycles swaps the successors of a shared conjugate
//! pair, which toggles the linear feedback exactly when the register's last
//! width-1 bits match the pair's common suffix. A spanning tree of the
//! adjacency graph therefore turns the whole state space into one cycle:
//! the feedback becomes the linear rule of f plus one product term per
//! chosen pair, and the output is a de Bruijn sequence of order m+n.
//!
//! Generation always starts from the all-zero state, so the emitted
//! sequence begins with the width-long zero run followed by a one; that is
//! the canonical phase used when comparing cyclic sequences.

use crate::cycles::{CycleId, ProductStructure};
use crate::error::{Error, Result};
use crate::graph::AdjacencyGraph;
use crate::pairs::ConjugatePair;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt;

/// A spanning tree of the adjacency graph with one conjugate pair chosen
/// per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningChoice {
    pub edges: Vec<(CycleId, CycleId, ConjugatePair)>,
}

/// The joined register: the linear base rule plus the toggle patterns
/// (width-1 suffixes) of the chosen pairs.
pub struct JoinedFsr {
    pub width: u32,
    pub taps: u64,
    pub toggles: BTreeSet<u64>,
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn spans(base: &mut Dsu, extra: &[(usize, usize, ConjugatePair)], n: usize) -> bool {
    let mut d = Dsu {
        parent: base.parent.clone(),
    };
    let mut comps = {
        let mut roots = BTreeSet::new();
        for v in 0..n {
            roots.insert(d.find(v));
        }
        roots.len()
    };
    for &(a, b, _) in extra {
        if d.union(a, b) {
            comps -= 1;
            if comps == 1 {
                return true;
            }
        }
    }
    comps == 1
}

/// Deterministic enumeration of spanning trees, multi-edges distinct,
/// stopping after `cap` trees. Edges are consumed in canonical order, so
/// the stream is stable across runs.
pub fn enumerate_trees(g: &AdjacencyGraph, cap: usize) -> Result<Vec<SpanningChoice>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    let edges = g.expanded_edges();
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, usize, ConjugatePair)> = Vec::new();
    let mut dsu = Dsu::new(n);
    recurse(g, &edges, 0, &mut dsu, &mut chosen, &mut out, cap);
    Ok(out)
}

fn recurse(
    g: &AdjacencyGraph,
    edges: &[(usize, usize, ConjugatePair)],
    idx: usize,
    dsu: &mut Dsu,
    chosen: &mut Vec<(usize, usize, ConjugatePair)>,
    out: &mut Vec<SpanningChoice>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    let n = g.vertex_count();
    if chosen.len() == n - 1 {
        out.push(SpanningChoice {
            edges: chosen
                .iter()
                .map(|&(a, b, pr)| (g.order[a], g.order[b], pr))
                .collect(),
        });
        return;
    }
    if idx == edges.len() {
        return;
    }
    let (a, b, pr) = edges[idx];
    // include the edge when it joins two components
    if dsu.find(a) != dsu.find(b) {
        let saved = dsu.parent.clone();
        dsu.union(a, b);
        chosen.push((a, b, pr));
        recurse(g, edges, idx + 1, dsu, chosen, out, cap);
        chosen.pop();
        dsu.parent = saved;
    }
    // exclude it only if the rest can still span
    if spans(dsu, &edges[idx + 1..], n) {
        recurse(g, edges, idx + 1, dsu, chosen, out, cap);
    }
}

/// Seeded randomized-Kruskal sampler. Cheap and reproducible, but not
/// uniform over trees.
pub fn sample_trees(g: &AdjacencyGraph, seed: u64, count: usize) -> Result<Vec<SpanningChoice>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = g.expanded_edges();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        edges.shuffle(&mut rng);
        let mut dsu = Dsu::new(n);
        let mut chosen = Vec::with_capacity(n - 1);
        for &(a, b, pr) in &edges {
            if dsu.union(a, b) {
                chosen.push((g.order[a], g.order[b], pr));
            }
        }
        debug_assert_eq!(chosen.len(), n - 1);
        out.push(SpanningChoice { edges: chosen });
    }
    Ok(out)
}

fn validate_choice(ps: &ProductStructure, choice: &SpanningChoice) -> Result<JoinedFsr> {
    let cycles = ps.cycles();
    let n_vertices = cycles.len();
    if choice.edges.len() != n_vertices - 1 {
        return Err(Error::InvalidTree(format!(
            "{} edges for {} cycles",
            choice.edges.len(),
            n_vertices
        )));
    }
    let index = |id: CycleId| {
        cycles
            .iter()
            .position(|&c| c == id)
            .ok_or_else(|| Error::InvalidTree(format!("unknown cycle {id}")))
    };
    let mut dsu = Dsu::new(n_vertices);
    let mut toggles = BTreeSet::new();
    for &(c1, c2, pr) in &choice.edges {
        if !dsu.union(index(c1)?, index(c2)?) {
            return Err(Error::InvalidTree(format!("cycle among edges at {c1}-{c2}")));
        }
        if !toggles.insert(pr.v >> 1) {
            return Err(Error::InvalidTree("duplicate toggle pattern".into()));
        }
    }
    Ok(JoinedFsr {
        width: ps.m + ps.n,
        taps: ps.product.charpoly().mask() & ((1u64 << (ps.m + ps.n)) - 1),
        toggles,
    })
}

impl JoinedFsr {
    #[inline]
    pub fn step(&self, state: u64) -> u64 {
        let mut fb = ((state & self.taps).count_ones() & 1) as u64;
        if self.toggles.contains(&(state >> 1)) {
            fb ^= 1;
        }
        (state >> 1) | (fb << (self.width - 1))
    }
}

/// Joins the cycles selected by a spanning choice and returns one full
/// period (2^(m+n) bits) starting from the all-zero state.
pub fn join(ps: &ProductStructure, choice: &SpanningChoice) -> Result<Vec<u8>> {
    let fsr = validate_choice(ps, choice)?;
    let total = 1usize << fsr.width;
    let mut out = Vec::with_capacity(total);
    let mut state = 0u64;
    for step in 0..total {
        out.push((state & 1) as u8);
        state = fsr.step(state);
        if state == 0 && step + 1 != total {
            return Err(Error::InvalidTree(format!(
                "period {} instead of {total}",
                step + 1
            )));
        }
    }
    if state != 0 {
        return Err(Error::Internal("register walk did not close".into()));
    }
    Ok(out)
}

/// Boolean feedback function in algebraic normal form: a XOR of monomials,
/// each a mask over the variables x_0 .. x_(width-1); the empty mask is the
/// constant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anf {
    pub width: u32,
    pub monomials: BTreeSet<u64>,
}

impl Anf {
    pub fn eval(&self, state: u64) -> u8 {
        let mut acc = 0u8;
        for &m in &self.monomials {
            acc ^= u8::from(state & m == m);
        }
        acc
    }

    /// Nonsingular means x_0 appears exactly once, as a bare linear term.
    pub fn is_nonsingular(&self) -> bool {
        self.monomials.contains(&1) && self.monomials.iter().all(|&m| m & 1 == 0 || m == 1)
    }
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<u64> = self.monomials.iter().copied().collect();
        ordered.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
        let terms: Vec<String> = ordered
            .iter()
            .map(|&m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..self.width)
                        .filter(|&i| m >> i & 1 == 1)
                        .map(|i| format!("x{i}"))
                        .collect::<Vec<_>>()
                        .join("")
                }
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

/// ANF of the joined feedback: the linear rule of f plus, per chosen pair
/// with suffix bits v_1..v_(w-1), the product of (x_i + v_i + 1).
pub fn feedback_anf(ps: &ProductStructure, choice: &SpanningChoice) -> Result<Anf> {
    let fsr = validate_choice(ps, choice)?;
    let width = fsr.width;
    let mut monomials = BTreeSet::new();
    let flip = |m: u64, set: &mut BTreeSet<u64>| {
        if !set.remove(&m) {
            set.insert(m);
        }
    };
    for i in 0..width {
        if fsr.taps >> i & 1 == 1 {
            flip(1u64 << i, &mut monomials);
        }
    }
    for &suffix in &fsr.toggles {
        // variables x_1..x_(w-1); ones contribute the variable itself,
        // zeros contribute (x_i + 1), expanded over all subsets
        let mut ones = 0u64;
        let mut zeros = 0u64;
        for i in 1..width {
            if suffix >> (i - 1) & 1 == 1 {
                ones |= 1 << i;
            } else {
                zeros |= 1 << i;
            }
        }
        let mut sub = zeros;
        loop {
            flip(ones | sub, &mut monomials);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & zeros;
        }
    }
    Ok(Anf { width, monomials })
}

/// True iff all 2^order cyclic windows of the sequence are distinct.
pub fn verify_debruijn(seq: &[u8], order: u32) -> Result<bool> {
    if order == 0 || order > 31 {
        return Err(Error::DegreeTooLarge(order, 31));
    }
    if seq.len() != 1usize << order {
        return Err(Error::LengthMismatch(seq.len(), order));
    }
    if seq.iter().any(|&b| b > 1) {
        return Err(Error::Parse("sequence bits must be 0 or 1".into()));
    }
    let n = seq.len();
    let mask = (n - 1) as u64;
    let mut window = 0u64;
    for &b in seq.iter().take(order as usize - 1) {
        window = (window << 1 | b as u64) & mask;
    }
    let mut seen = vec![0u64; n.div_ceil(64)];
    for i in 0..n {
        window = (window << 1 | seq[(i + order as usize - 1) % n] as u64) & mask;
        let (w, bit) = ((window / 64) as usize, window % 64);
        if seen[w] >> bit & 1 == 1 {
            return Ok(false);
        }
        seen[w] |= 1 << bit;
    }
    Ok(true)
}

/// Rotates a cyclic sequence to the canonical phase: the width-long zero
/// run followed by a one. None when no such run exists.
pub fn canonical_rotation(seq: &[u8], order: u32) -> Option<Vec<u8>> {
    let n = seq.len();
    'outer: for start in 0..n {
        for j in 0..order as usize {
            if seq[(start + j) % n] != 0 {
                continue 'outer;
            }
        }
        if seq[(start + order as usize) % n] == 1 {
            return Some((0..n).map(|j| seq[(start + j) % n]).collect());
        }
    }
    None
}

/// Cyclic equality up to rotation (via canonical phase).
pub fn cyclic_equal(a: &[u8], b: &[u8], order: u32) -> bool {
    a.len() == b.len() && canonical_rotation(a, order) == canonical_rotation(b, order)
}
