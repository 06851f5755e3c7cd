//! Cross-module invariants: property tests over random inputs plus the
//! structural identities that tie the independent computation routes
//! together.

use cyclejoin::cycles::{CycleId, FactorDecomposition, ProductStructure};
use cyclejoin::field::FactorField;
use cyclejoin::graph::{best_count, build_adjacency, cofactor};
use cyclejoin::joiner;
use cyclejoin::poly2::{self, Poly2};
use proptest::prelude::*;
use std::collections::BTreeSet;

const P_DEG4: Poly2 = Poly2::from_mask(0x1F);
const Q_DEG4: Poly2 = Poly2::from_mask(0x13);

// ---- polynomial arithmetic against schoolbook oracles ----

fn schoolbook_mul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    for i in 0..64 {
        if b >> i & 1 == 1 {
            acc ^= (a as u128) << i;
        }
    }
    acc
}

fn schoolbook_rem(mut a: u128, m: u64) -> u64 {
    let dm = 63 - m.leading_zeros();
    while a != 0 {
        let da = 127 - a.leading_zeros();
        if da < dm {
            break;
        }
        a ^= (m as u128) << (da - dm);
    }
    a as u64
}

proptest! {
    #[test]
    fn mul_mod_matches_schoolbook(a in 0u64..1 << 20, b in 0u64..1 << 20, m in 2u64..1 << 20) {
        let got = poly2::mul_mod(
            Poly2::from_mask(a),
            Poly2::from_mask(b),
            Poly2::from_mask(m),
        ).unwrap();
        prop_assert_eq!(got.mask(), schoolbook_rem(schoolbook_mul(a, b), m));
    }

    #[test]
    fn gcd_divides_and_is_maximal(a in 1u64..1 << 16, b in 1u64..1 << 16) {
        let g = poly2::gcd(Poly2::from_mask(a), Poly2::from_mask(b)).unwrap();
        prop_assert_eq!(schoolbook_rem(a as u128, g.mask()), 0);
        prop_assert_eq!(schoolbook_rem(b as u128, g.mask()), 0);
        // any common divisor divides g
        for d in 1u64..1 << 8 {
            if schoolbook_rem(a as u128, d) == 0 && schoolbook_rem(b as u128, d) == 0 {
                prop_assert_eq!(schoolbook_rem(g.mask() as u128, d), 0);
            }
        }
    }

    #[test]
    fn poly_print_parse_roundtrip(mask in 1u64..1 << 24) {
        let p = Poly2::from_mask(mask);
        let human: Poly2 = p.to_string().parse().unwrap();
        let hex: Poly2 = format!("{p:x}").parse().unwrap();
        prop_assert_eq!(human, p);
        prop_assert_eq!(hex, p);
    }
}

// ---- sequence-level identities ----

fn sequence_shift_add(seq: &[u8], shift: usize) -> Vec<u8> {
    let e = seq.len();
    (0..e).map(|i| seq[i] ^ seq[(i + shift) % e]).collect()
}

fn rotate(seq: &[u8], shift: usize) -> Vec<u8> {
    let e = seq.len();
    (0..e).map(|i| seq[(i + shift) % e]).collect()
}

/// For a maximal-length sequence, adding a shifted copy rotates the
/// sequence by the Zech logarithm of the shift.
#[test]
fn shift_and_add_property() {
    for k in 2..=10u32 {
        let g = poly2::lowest_primitive(k).unwrap();
        let ff = FactorField::new(g).unwrap();
        let seq = ff.sequence(0);
        let e = ff.order_e();
        for i in 1..e {
            let sum = sequence_shift_add(&seq, i as usize);
            let tau = ff.table().zech_log(i) as usize;
            assert_eq!(sum, rotate(&seq, tau), "degree {k}, shift {i}");
        }
    }
}

/// Sums of shifted class sequences land on the class and shift predicted
/// by the Zech-table route, and the per-class match counts are the
/// cyclotomic numbers.
#[test]
fn shift_sum_classification_matches_sequences() {
    for k in 2..=8u32 {
        for mask in ((1u64 << k) + 1..1 << (k + 1)).step_by(2) {
            let g = Poly2::from_mask(mask);
            if !poly2::is_irreducible(g).unwrap() {
                continue;
            }
            let ff = FactorField::new(g).unwrap();
            let t = ff.classes_t();
            let e = ff.order_e();
            if e == 1 {
                continue;
            }
            let seqs: Vec<Vec<u8>> = (0..t as u32).map(|i| ff.sequence(i)).collect();
            for i1 in 0..t as u32 {
                for i2 in 0..t as u32 {
                    let mut per_class = vec![0u64; t as usize];
                    for w in 0..e {
                        let sum = {
                            let shifted = rotate(&seqs[i2 as usize], w as usize);
                            let mut s = seqs[i1 as usize].clone();
                            for (x, y) in s.iter_mut().zip(shifted.iter()) {
                                *x ^= y;
                            }
                            s
                        };
                        match ff.shift_sum_class(i1, i2, w) {
                            None => assert!(sum.iter().all(|&b| b == 0), "{g} zero sum"),
                            Some((class, shift)) => {
                                per_class[class as usize] += 1;
                                assert_eq!(
                                    sum,
                                    rotate(&seqs[class as usize], shift as usize),
                                    "{g}: u{i1} + L^{w} u{i2}"
                                );
                            }
                        }
                    }
                    // match counts against the cyclotomic numbers
                    for class in 0..t {
                        let expect = cyclejoin::field::cyclotomic_number(
                            ff.table(),
                            t,
                            (i2 as u64 + t - i1 as u64 % t) % t,
                            (class + t - i1 as u64 % t) % t,
                        )
                        .unwrap();
                        assert_eq!(
                            per_class[class as usize], expect,
                            "{g}: counts for u{i1}+L^w u{i2} landing on class {class}"
                        );
                    }
                }
            }
        }
    }
}

/// The class states enumerate the orbits exactly: one representative per
/// orbit, orbits disjoint, together covering every nonzero state.
#[test]
fn class_states_match_orbit_sweep() {
    for k in 2..=8u32 {
        for mask in ((1u64 << k) + 1..1 << (k + 1)).step_by(2) {
            let g = Poly2::from_mask(mask);
            if !poly2::is_irreducible(g).unwrap() {
                continue;
            }
            let dec = FactorDecomposition::new(g).unwrap();
            let mut seen: BTreeSet<u64> = BTreeSet::new();
            for &rep in &dec.states {
                let mut st = rep;
                for _ in 0..dec.e {
                    assert!(seen.insert(st), "{g}: orbits overlap at {st:#x}");
                    st = dec.spec.step(st);
                }
                assert_eq!(st, rep, "{g}: period differs from the root order");
            }
            assert_eq!(seen.len() as u64, (1 << k) - 1, "{g}: orbits must cover");
        }
    }
}

// ---- graph invariants ----

/// Every cofactor of the count matrix gives the same spanning-tree count.
#[test]
fn cofactor_independence() {
    for (p, q) in [(P_DEG4, Q_DEG4), (Poly2::from_mask(0b111), Q_DEG4)] {
        let ps = ProductStructure::new(p, q).unwrap();
        let g = build_adjacency(&ps).unwrap();
        let m = g.count_matrix();
        let reference = cofactor(&m, 0, 0);
        for i in 0..m.len() {
            for j in 0..m.len() {
                assert_eq!(cofactor(&m, i, j), reference, "cofactor ({i},{j})");
            }
        }
    }
}

/// Per-cycle conservation: edge degree plus twice the loop count equals the
/// cycle period, on a batch of instances.
#[test]
fn degree_conservation() {
    for (p, q) in [
        (P_DEG4, Q_DEG4),
        (Poly2::from_mask(0b111), Poly2::from_mask(0b1011)),
        (Poly2::from_mask(0b1011), Poly2::from_mask(0b1101)),
        (Poly2::from_mask(0b1100001), Poly2::from_mask(0b111)),
    ] {
        let ps = ProductStructure::new(p, q).unwrap();
        let g = build_adjacency(&ps).unwrap();
        for (i, &id) in g.order.iter().enumerate() {
            let deg: u64 = g.edges[i].iter().sum();
            assert_eq!(deg + 2 * g.loops[i], ps.period(id), "{id}");
        }
    }
}

/// The estimate follows its definition exactly.
#[test]
fn estimate_formula() {
    let ps = ProductStructure::new(P_DEG4, Q_DEG4).unwrap();
    let g = build_adjacency(&ps).unwrap();
    let tc = best_count(&g);
    let chi = (ps.t1 * ps.t2 * ps.r) as f64;
    assert_eq!(tc.chi as f64, chi);
    let expect = chi * (8.0 - chi.log2());
    assert!((tc.estimate_log2 - expect).abs() < 1e-12);
}

// ---- joined registers ----

/// The feedback function in algebraic normal form defines the same
/// next-state rule as the toggle simulation, on the order-6 instance.
#[test]
fn anf_equals_register_on_order6() {
    let ps = ProductStructure::new(Poly2::from_mask(0b111), Q_DEG4).unwrap();
    let g = build_adjacency(&ps).unwrap();
    let trees = joiner::enumerate_trees(&g, 40).unwrap();
    for t in &trees {
        let anf = joiner::feedback_anf(&ps, t).unwrap();
        assert!(anf.is_nonsingular(), "x0 must appear exactly once, linear");
        let seq = joiner::join(&ps, t).unwrap();
        // drive the register defined by the ANF and compare output
        let mut state = 0u64;
        for (i, &bit) in seq.iter().enumerate() {
            assert_eq!((state & 1) as u8, bit, "bit {i}");
            let fb = anf.eval(state) as u64;
            state = (state >> 1) | (fb << 5);
        }
        assert_eq!(state, 0);
    }
}

/// Joined sequences always come out in canonical phase: a width-long zero
/// run followed by a one.
#[test]
fn joined_sequences_canonical_phase() {
    let ps = ProductStructure::new(Poly2::from_mask(0b111), Poly2::from_mask(0b1011)).unwrap();
    let g = build_adjacency(&ps).unwrap();
    for t in joiner::enumerate_trees(&g, usize::MAX).unwrap() {
        let seq = joiner::join(&ps, &t).unwrap();
        assert!(seq[..5].iter().all(|&b| b == 0));
        assert_eq!(seq[5], 1);
        assert_eq!(joiner::canonical_rotation(&seq, 5).unwrap(), seq);
    }
}

/// Enumerated tree count equals the matrix count whenever enumeration
/// completes.
#[test]
fn enumeration_matches_matrix_count() {
    use num_traits::ToPrimitive;
    for (p, q) in [
        (Poly2::from_mask(0b111), Poly2::from_mask(0b1011)),
        (Poly2::from_mask(0b111), Q_DEG4),
        (Poly2::from_mask(0b1011), Poly2::from_mask(0b1101)),
    ] {
        let ps = ProductStructure::new(p, q).unwrap();
        let g = build_adjacency(&ps).unwrap();
        let expect = best_count(&g).exact.to_usize().unwrap();
        let trees = joiner::enumerate_trees(&g, usize::MAX).unwrap();
        assert_eq!(trees.len(), expect, "{p:x} * {q:x}");
        // all distinct as edge sets
        let distinct: BTreeSet<Vec<u64>> = trees
            .iter()
            .map(|t| {
                let mut edges: Vec<u64> = t.edges.iter().map(|(_, _, pr)| pr.v).collect();
                edges.sort_unstable();
                edges
            })
            .collect();
        assert_eq!(distinct.len(), trees.len());
    }
}

/// Both primitive factors with e1 | e2: the congruence scan and the
/// cyclotomic-number sum agree with the built graph on every shift pair.
#[test]
fn divisible_orders_counts_agree() {
    // degrees 4 and 8: orders 15 | 255, gcd 15
    let ps = ProductStructure::new(Q_DEG4, Poly2::from_mask(0x11d)).unwrap();
    assert_eq!((ps.e1, ps.e2, ps.r), (15, 255, 15));
    let g = build_adjacency(&ps).unwrap();
    let idx = |k: u64| {
        g.order
            .iter()
            .position(|&c| c == CycleId::Mix { i: 0, j: 0, k })
            .unwrap()
    };
    for i in 0..ps.r {
        for j in 0..ps.r {
            let scan = cyclejoin::pairs::count_primitive_pair(&ps, i, j).unwrap();
            let summed = cyclejoin::pairs::count_e1_divides_e2(&ps, i, j).unwrap();
            assert_eq!(scan, summed, "({i},{j})");
            let from_graph = if i == j {
                g.loops[idx(i)]
            } else {
                g.edges[idx(i)][idx(j)]
            };
            assert_eq!(scan, from_graph, "({i},{j}) vs graph");
        }
    }
}

/// A wide instance (width 20, both factors non-primitive) against the
/// exhaustive sweep: cycle partition, pair sets, conservation.
#[test]
fn wide_instance_against_sweep() {
    let find = |deg: u32, order: u64| -> Poly2 {
        ((1u64 << deg) + 1..1 << (deg + 1))
            .step_by(2)
            .map(Poly2::from_mask)
            .find(|&c| {
                poly2::is_irreducible(c).unwrap() && poly2::poly_order(c).unwrap() == order
            })
            .unwrap()
    };
    let p = find(8, 51);
    let q = find(12, 819);
    let ps = ProductStructure::new(p, q).unwrap();
    assert_eq!((ps.t1, ps.t2, ps.r), (5, 5, 3));
    let width = ps.m + ps.n;
    let size = 1usize << width;
    let mut cycle_of = vec![u16::MAX; size];
    let cycles = ps.cycles();
    for (ci, &id) in cycles.iter().enumerate() {
        let start = ps.full_state(id);
        let mut st = start;
        for _ in 0..ps.period(id) {
            assert_eq!(cycle_of[st as usize], u16::MAX);
            cycle_of[st as usize] = ci as u16;
            st = ps.product.step(st);
        }
        assert_eq!(st, start);
    }
    let mut expect = std::collections::BTreeMap::new();
    for suffix in 0..1u64 << (width - 1) {
        let v0 = suffix << 1;
        let c0 = cycle_of[v0 as usize];
        let c1 = cycle_of[(v0 | 1) as usize];
        let key = (c0.min(c1) as usize, c0.max(c1) as usize);
        expect.entry(key).or_insert_with(BTreeSet::new).insert(v0);
    }
    let mut engine = cyclejoin::PairEngine::new(&ps);
    engine.prepare_all();
    let mut total = 0u64;
    for (x, &c1) in cycles.iter().enumerate() {
        for (y, &c2) in cycles.iter().enumerate().skip(x) {
            let rep = engine.pairs_cached(c1, c2).unwrap();
            let got: BTreeSet<u64> = rep.pairs.iter().map(|p| p.v).collect();
            let want = expect.get(&(x, y)).cloned().unwrap_or_default();
            assert_eq!(got, want, "{c1} vs {c2}");
            total += rep.count;
        }
    }
    assert_eq!(total, 1 << (width - 1));
}

/// The pure cycles embed into the product register: any window of a
/// first-factor sequence has a zero second component and vice versa.
#[test]
fn factor_windows_embed() {
    let ps = ProductStructure::new(P_DEG4, Q_DEG4).unwrap();
    for i in 0..ps.t1 as u32 {
        let mut v = ps.full_state(CycleId::U(i));
        for _ in 0..ps.e1 {
            let (_, b) = ps.basis.to_components(v);
            assert_eq!(b, 0);
            v = ps.product.step(v);
        }
    }
    for j in 0..ps.t2 as u32 {
        let mut v = ps.full_state(CycleId::S(j));
        for _ in 0..ps.e2 {
            let (a, _) = ps.basis.to_components(v);
            assert_eq!(a, 0);
            v = ps.product.step(v);
        }
    }
}
