//! Adjacency multigraph of the cycle structure and exact spanning-tree
//! counting.
//!
//! Vertices are the cycles in canonical order; an edge label counts the
//! conjugate pairs the two cycles share, and loop labels are kept aside.
//! The number of de Bruijn sequences reachable by joining is the number of
//! spanning trees (parallel edges distinct), which equals the cofactor of
//! any entry of the matrix M with m_ii = sum of labels at vertex i (loops
//! removed) and m_ij = -label(i, j). The determinant runs fraction-free
//! over arbitrary-precision integers; no floating point touches the exact
//! path.
//!
//! The crude size estimate E = (2^(m+n)/chi)^chi, with chi the number of
//! mixed cycles, is reported alongside in raw and log2 form.

use crate::cycles::{CycleId, ProductStructure};
use crate::error::{Error, Result};
use crate::pairs::{count_closed_form, ConjugatePair, PairEngine};
use crate::{arith, poly2};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

pub struct AdjacencyGraph {
    pub order: Vec<CycleId>,
    /// Symmetric pair counts, loops excluded.
    pub edges: Vec<Vec<u64>>,
    /// Self-pair counts per cycle (each unordered pair counted once).
    pub loops: Vec<u64>,
    /// Conjugate pairs per unordered vertex pair (i <= j), including loops.
    pub pair_lists: BTreeMap<(usize, usize), Vec<ConjugatePair>>,
    pub register_width: u32,
    /// Number of mixed cycles, the chi of the size estimate.
    pub chi: u64,
}

/// Runs the pair search over every unordered cycle pair. Entries that the
/// structural results force to zero (pairs within one factor, the zero
/// cycle away from its unique neighbour, class mismatches) are skipped
/// outright; everything else goes through the subalgorithm engine.
pub fn build_adjacency(ps: &ProductStructure) -> Result<AdjacencyGraph> {
    let order = ps.cycles();
    let count = order.len();
    let mut engine = PairEngine::new(ps);
    engine.prepare_all();

    let mut tasks: Vec<(usize, usize)> = Vec::new();
    for x in 0..count {
        for y in x..count {
            let skip = matches!(
                count_closed_form(ps, order[x], order[y]),
                Some(cf) if cf.count == 0 && matches!(
                    cf.rule,
                    "same-factor" | "special-state" | "unique-pair" | "class-mismatch"
                )
            );
            if !skip {
                tasks.push((x, y));
            }
        }
    }
    let reports: Vec<((usize, usize), Vec<ConjugatePair>)> = tasks
        .par_iter()
        .map(|&(x, y)| {
            let rep = engine.pairs_cached(order[x], order[y])?;
            Ok(((x, y), rep.pairs))
        })
        .collect::<Result<_>>()?;

    let mut edges = vec![vec![0u64; count]; count];
    let mut loops = vec![0u64; count];
    let mut pair_lists = BTreeMap::new();
    for ((x, y), pairs) in reports {
        if pairs.is_empty() {
            continue;
        }
        if x == y {
            loops[x] = pairs.len() as u64;
        } else {
            edges[x][y] = pairs.len() as u64;
            edges[y][x] = pairs.len() as u64;
        }
        pair_lists.insert((x, y), pairs);
    }
    Ok(AdjacencyGraph {
        order,
        edges,
        loops,
        pair_lists,
        register_width: ps.m + ps.n,
        chi: ps.t1 * ps.t2 * ps.r,
    })
}

impl AdjacencyGraph {
    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    pub fn index_of(&self, id: CycleId) -> Option<usize> {
        self.order.iter().position(|&c| c == id)
    }

    /// The matrix M of the counting theorem: degree diagonal, negated
    /// labels off it, loops omitted.
    pub fn count_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count();
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            m[i][i] = self.edges[i].iter().sum::<u64>() as i64;
            for j in 0..n {
                if i != j {
                    m[i][j] = -(self.edges[i][j] as i64);
                }
            }
        }
        m
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if self.edges[v][w] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Multi-edges expanded, canonical order: by vertex pair, then by pair
    /// index within the shared list. Loops are not included.
    pub fn expanded_edges(&self) -> Vec<(usize, usize, ConjugatePair)> {
        let mut out = Vec::new();
        for (&(x, y), pairs) in &self.pair_lists {
            if x == y {
                continue;
            }
            for &pr in pairs {
                out.push((x, y, pr));
            }
        }
        out
    }

    /// DOT rendering; loop labels are drawn as self-edges.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph adjacency {\n");
        for (i, id) in self.order.iter().enumerate() {
            s.push_str(&format!("  v{i} [label=\"{id}\"];\n"));
        }
        for i in 0..self.vertex_count() {
            if self.loops[i] > 0 {
                s.push_str(&format!("  v{i} -- v{i} [label=\"{}\"];\n", self.loops[i]));
            }
            for j in i + 1..self.vertex_count() {
                if self.edges[i][j] > 0 {
                    s.push_str(&format!(
                        "  v{i} -- v{j} [label=\"{}\"];\n",
                        self.edges[i][j]
                    ));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Exact and estimated spanning-tree counts.
#[derive(Debug, Clone)]
pub struct TreeCount {
    pub exact: BigInt,
    pub connected: bool,
    pub chi: u64,
    pub estimate_log2: f64,
    pub estimate: f64,
}

/// Fraction-free determinant (Bareiss); exact over BigInt.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut denom = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => i,
                None => return BigInt::zero(),
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &denom;
            }
        }
        denom = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Cofactor of entry (i, j) of an integer matrix.
pub fn cofactor(m: &[Vec<i64>], i: usize, j: usize) -> BigInt {
    let minor: Vec<Vec<BigInt>> = m
        .iter()
        .enumerate()
        .filter(|&(r, _)| r != i)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(c, _)| c != j)
                .map(|(_, &v)| BigInt::from(v))
                .collect()
        })
        .collect();
    let det = bareiss_det(minor);
    if (i + j) % 2 == 0 {
        det
    } else {
        -det
    }
}

/// Spanning-tree count of the adjacency graph: cofactor of the (0,0) entry
/// of M. A disconnected graph yields zero with `connected` flagged false.
/// On small graphs a second cofactor is cross-checked.
pub fn best_count(g: &AdjacencyGraph) -> TreeCount {
    let chi = g.chi;
    let width = g.register_width;
    let estimate_log2 = if chi == 0 {
        0.0
    } else {
        chi as f64 * (width as f64 - (chi as f64).log2())
    };
    let estimate = if estimate_log2 < f64::MAX.log2() {
        estimate_log2.exp2()
    } else {
        f64::INFINITY
    };
    let connected = g.is_connected();
    let exact = if connected {
        let m = g.count_matrix();
        let c00 = cofactor(&m, 0, 0);
        if m.len() <= 24 {
            debug_assert_eq!(c00, cofactor(&m, 1, 1), "cofactors disagree");
        }
        c00
    } else {
        BigInt::zero()
    };
    TreeCount {
        exact,
        connected,
        chi,
        estimate_log2,
        estimate,
    }
}

/// Exact de Bruijn count per primitive polynomial p of degree n for the
/// register with characteristic polynomial (x^2+x+1) p(x):
/// 3*2^n - 4 for odd n, and for even n
/// 2^(3n) - (9*2^(2n+4) - (-2)^(3n/2+4) - 3*2^(n+6) + 2^6)/27.
pub fn quadratic_factor_count(n: u32) -> Result<BigInt> {
    if n < 3 {
        return Err(Error::OrderTooSmall(3, n));
    }
    if n % 2 == 1 {
        Ok(BigInt::from(3) * (BigInt::one() << n) - 4)
    } else {
        let term = BigInt::from(9) * (BigInt::one() << (2 * n + 4))
            - (-BigInt::from(2)).pow(3 * n / 2 + 4)
            - BigInt::from(3) * (BigInt::one() << (n + 6))
            + (BigInt::one() << 6);
        Ok((BigInt::one() << (3 * n)) - term / 27)
    }
}

/// Total over all primitive p of degree n: the per-polynomial count times
/// phi(2^n - 1)/n.
pub fn quadratic_factor_count_total(n: u32) -> Result<BigInt> {
    let per = quadratic_factor_count(n)?;
    let prim_count = arith::euler_phi((1u64 << n) - 1) / n as u64;
    Ok(per * BigInt::from(prim_count))
}

/// Convenience: the adjacency graph for (x^2+x+1) p(x), p primitive of
/// degree n (the lowest-mask one).
pub fn quadratic_factor_graph(n: u32) -> Result<(ProductStructure, AdjacencyGraph)> {
    let p = poly2::Poly2::from_mask(0b111);
    let q = poly2::lowest_primitive(n)?;
    let ps = ProductStructure::new(p, q)?;
    let g = build_adjacency(&ps)?;
    Ok((ps, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly2::Poly2;

    const P5: Poly2 = Poly2::from_mask(0x1F);
    const Q4: Poly2 = Poly2::from_mask(0x13);

    #[test]
    fn single_multiedge_count() {
        // two vertices joined by a triple edge: 3 spanning trees
        let g = AdjacencyGraph {
            order: vec![CycleId::Zero, CycleId::U(0)],
            edges: vec![vec![0, 3], vec![3, 0]],
            loops: vec![0, 0],
            pair_lists: BTreeMap::new(),
            register_width: 4,
            chi: 1,
        };
        assert_eq!(best_count(&g).exact, BigInt::from(3));
    }

    #[test]
    fn disconnected_flagged() {
        let g = AdjacencyGraph {
            order: vec![CycleId::Zero, CycleId::U(0), CycleId::U(1)],
            edges: vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]],
            loops: vec![0, 0, 0],
            pair_lists: BTreeMap::new(),
            register_width: 4,
            chi: 1,
        };
        let tc = best_count(&g);
        assert!(!tc.connected);
        assert!(tc.exact.is_zero());
    }

    #[test]
    fn worked_example_graph_row_sums() {
        let ps = ProductStructure::new(P5, Q4).unwrap();
        let g = build_adjacency(&ps).unwrap();
        // every state contributes one conjugate pair: edge sums plus twice
        // the loops equal the cycle period
        for (i, &id) in g.order.iter().enumerate() {
            let deg: u64 = g.edges[i].iter().sum();
            assert_eq!(deg + 2 * g.loops[i], ps.period(id), "{id}");
        }
        // global conservation
        let total: u64 =
            g.edges.iter().flatten().sum::<u64>() / 2 + g.loops.iter().sum::<u64>();
        assert_eq!(total, 1 << 7);
    }

    #[test]
    fn worked_example_count() {
        let ps = ProductStructure::new(P5, Q4).unwrap();
        let g = build_adjacency(&ps).unwrap();
        let tc = best_count(&g);
        assert!(tc.connected);
        assert_eq!(tc.exact, BigInt::from(2_003_859_941_621_760_000u64));
        assert!((tc.estimate_log2 - 61.3966).abs() < 1e-3);
    }

    #[test]
    fn permutation_invariance() {
        // shuffling the vertex order must not change the count
        let ps = ProductStructure::new(P5, Q4).unwrap();
        let g = build_adjacency(&ps).unwrap();
        let n = g.vertex_count();
        let perm: Vec<usize> = (0..n).map(|i| (i * 7 + 3) % n).collect();
        let mut shuffled = AdjacencyGraph {
            order: perm.iter().map(|&i| g.order[i]).collect(),
            edges: vec![vec![0; n]; n],
            loops: perm.iter().map(|&i| g.loops[i]).collect(),
            pair_lists: BTreeMap::new(),
            register_width: g.register_width,
            chi: g.chi,
        };
        for x in 0..n {
            for y in 0..n {
                shuffled.edges[x][y] = g.edges[perm[x]][perm[y]];
            }
        }
        assert_eq!(best_count(&shuffled).exact, best_count(&g).exact);
    }

    #[test]
    fn quadratic_factor_closed_forms() {
        let expect: [(u32, u64); 8] = [
            (3, 20),
            (4, 2880),
            (5, 92),
            (6, 240_448),
            (7, 380),
            (8, 16_431_936),
            (9, 1532),
            (10, 1_068_137_280),
        ];
        for (n, count) in expect {
            assert_eq!(quadratic_factor_count(n).unwrap(), BigInt::from(count));
        }
        assert!(quadratic_factor_count(2).is_err());
        // totals: per-polynomial count times the primitive-polynomial count
        assert_eq!(
            quadratic_factor_count_total(3).unwrap(),
            BigInt::from(40u32)
        );
        assert_eq!(
            quadratic_factor_count_total(5).unwrap(),
            BigInt::from(92u32 * 6)
        );
    }

    #[test]
    fn odd_quadratic_graph_shape() {
        // odd degree: 4 vertices, labels 1, 2, 2^n-2 and one loop 2^n-2
        let (ps, g) = quadratic_factor_graph(3).unwrap();
        let u = g.index_of(CycleId::U(0)).unwrap();
        let s = g.index_of(CycleId::S(0)).unwrap();
        let mix = g.index_of(ps.special_cycle()).unwrap();
        let zero = g.index_of(CycleId::Zero).unwrap();
        assert_eq!(g.edges[zero][mix], 1);
        assert_eq!(g.edges[u][s], 1);
        assert_eq!(g.edges[u][mix], 2);
        assert_eq!(g.edges[s][mix], (1 << 3) - 2);
        assert_eq!(g.loops[mix], (1 << 3) - 2);
    }

    #[test]
    fn even_quadratic_graph_shape() {
        // even degree 4: six vertices; with Z = (2^4-1)/3 = 5 and the
        // closed forms A=0, B=2, C=1
        let (ps, g) = quadratic_factor_graph(4).unwrap();
        let zero = g.index_of(CycleId::Zero).unwrap();
        let u = g.index_of(CycleId::U(0)).unwrap();
        let s = g.index_of(CycleId::S(0)).unwrap();
        let c = ps.special.c;
        let mix = |d: u64| {
            g.index_of(CycleId::Mix {
                i: 0,
                j: 0,
                k: (c + d) % 3,
            })
            .unwrap()
        };
        assert_eq!(g.edges[zero][mix(0)], 1);
        assert_eq!(g.edges[u][s], 1);
        assert_eq!(g.edges[u][mix(0)], 0);
        assert_eq!(g.edges[u][mix(1)], 1);
        assert_eq!(g.edges[u][mix(2)], 1);
        assert_eq!(g.edges[s][mix(0)], 4); // Z - 1
        assert_eq!(g.edges[s][mix(1)], 5); // Z
        assert_eq!(g.edges[s][mix(2)], 5);
        assert_eq!(g.loops[mix(0)], 1); // C
        assert_eq!(g.loops[mix(1)], 2); // B
        assert_eq!(g.loops[mix(2)], 2); // B
        assert_eq!(g.edges[mix(0)][mix(1)], 4); // 2B
        assert_eq!(g.edges[mix(0)][mix(2)], 4); // 2B
        assert_eq!(g.edges[mix(1)][mix(2)], 1); // A + C
    }

    #[test]
    fn dot_render_smoke() {
        let ps = ProductStructure::new(Poly2::from_mask(0b111), Poly2::from_mask(0b1011)).unwrap();
        let g = build_adjacency(&ps).unwrap();
        let dot = g.to_dot();
        assert!(dot.contains("graph adjacency"));
        assert!(dot.contains("MIX:0,0,0"));
    }
}
