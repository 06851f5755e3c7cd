//! Conjugate pairs between cycles of the product register.
//!
//! A conjugate pair is a state v and its first-bit flip. Two cycles sharing
//! a pair can be joined; the counts label the adjacency graph's edges. The
//! search reduces to the two factor registers: a subalgorithm scans one
//! factor's cycles for all (i, i') with T^i a1 + a3 = T^(-i') a2, where
//! (a3, b3) = S P^inverse comes from the special state, and the main
//! procedure combines one output per side under congruence gates modulo
//! gcd(e1, e2).
//!
//! Every produced pair also has a closed-form route through the Zech table:
//! sums u_i + L^w u_j are located as shifts of the special classes, and the
//! per-shift counts fall out of congruence filters on those shift lists.
//! Both routes are kept separate so each can check the other.
//!
//! Conventions: within a report each unordered pair appears once, with v the
//! first-bit-0 member. A cycle paired with itself produces every pair twice
//! (once per orientation); the report halves that count.

use crate::cycles::{CycleId, LfsrSpec, ProductStructure};
use crate::error::{Error, Result};
use crate::field::{FieldTable, INFINITY};
use crate::{arith, field};
use std::collections::HashMap;

/// A conjugate pair in canonical form: v has first bit 0, v_hat = v + S.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConjugatePair {
    pub v: u64,
    pub v_hat: u64,
}

impl ConjugatePair {
    fn canonical(state: u64) -> ConjugatePair {
        ConjugatePair {
            v: state & !1,
            v_hat: state | 1,
        }
    }
}

/// Closed-form pair count with the rule that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedForm {
    pub count: u64,
    pub rule: &'static str,
}

/// Everything known about the pairs between two cycles.
#[derive(Debug, Clone)]
pub struct PairCountReport {
    pub c1: CycleId,
    pub c2: CycleId,
    pub count: u64,
    pub pairs: Vec<ConjugatePair>,
    pub closed_form: Option<ClosedForm>,
}

/// The shared subalgorithm: all (i, i') with T^i a1 + a3 = T^(-i') a2,
/// i scanning the period of a1's cycle and i' the period of a2's. A zero
/// state has period 1. `quota` stops the outer loop once the predicted
/// number of outputs has been collected.
pub fn subalgorithm(
    spec: &LfsrSpec,
    a1: u64,
    a2: u64,
    a3: u64,
    e: u64,
    quota: Option<u64>,
) -> Vec<(u64, u64)> {
    let e_outer = if a1 == 0 { 1 } else { e };
    let e_inner = if a2 == 0 { 1 } else { e };
    let mut out = Vec::new();
    if quota == Some(0) {
        return out;
    }
    let mut cur = a1;
    for i in 0..e_outer {
        let mut temp = cur ^ a3;
        for i_back in 0..e_inner {
            if temp == a2 {
                out.push((i, i_back));
                break;
            }
            temp = spec.step(temp);
        }
        cur = spec.step(cur);
        if quota.is_some_and(|q| out.len() as u64 == q) {
            break;
        }
    }
    out
}

/// Subalgorithm over the first factor's states.
pub fn subalg1(spec: &LfsrSpec, a1: u64, a2: u64, a3: u64, e1: u64) -> Vec<(u64, u64)> {
    subalgorithm(spec, a1, a2, a3, e1, None)
}

/// Subalgorithm over the second factor's states.
pub fn subalg2(spec: &LfsrSpec, b1: u64, b2: u64, b3: u64, e2: u64) -> Vec<(u64, u64)> {
    subalgorithm(spec, b1, b2, b3, e2, None)
}

/// Fast path for a primitive factor when both cycle states coincide and
/// a3 = T^k a: the shift-and-add property turns the scan into Zech lookups,
/// giving (i, -k - tau(i - k)) for every i != k.
pub fn zech_subalg(ft: &FieldTable, k: u64, e: u64) -> Result<Vec<(u64, u64)>> {
    if ft.order() != e {
        return Err(Error::FastPathNotPrimitive);
    }
    let k = k % e;
    let mut out = Vec::with_capacity(e as usize - 1);
    for i in 0..e {
        if i == k {
            continue;
        }
        let tau = ft.zech_log(arith::submod(i, k, e)) as u64;
        debug_assert_ne!(tau, INFINITY as u64);
        out.push((i, arith::submod(0, k + tau, e)));
    }
    Ok(out)
}

/// Shift-sum list over the first factor: all (w, shift) with
/// u_{i1} + L^w u_{i2} = L^shift u_a, a the special class. Zech-table route.
pub fn u_shift_matches(ps: &ProductStructure, i1: u32, i2: u32) -> Vec<(u64, u64)> {
    let a = ps.special.a;
    (0..ps.e1)
        .filter_map(|w| match ps.p_dec.field.shift_sum_class(i1, i2, w) {
            Some((class, shift)) if class == a => Some((w, shift)),
            _ => None,
        })
        .collect()
}

/// Shift-sum list over the second factor: all (w, shift) with
/// s_{j1} + L^w s_{j2} = L^shift s_b.
pub fn s_shift_matches(ps: &ProductStructure, j1: u32, j2: u32) -> Vec<(u64, u64)> {
    let b = ps.special.b;
    (0..ps.e2)
        .filter_map(|w| match ps.q_dec.field.shift_sum_class(j1, j2, w) {
            Some((class, shift)) if class == b => Some((w, shift)),
            _ => None,
        })
        .collect()
}

/// Exact pair count between two cycles from the closed-form route alone.
pub fn count_closed_form(ps: &ProductStructure, c1: CycleId, c2: CycleId) -> Option<ClosedForm> {
    use CycleId::*;
    let (c1, c2) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
    let sp = &ps.special;
    let r = ps.r;
    let some = |count, rule| Some(ClosedForm { count, rule });
    match (c1, c2) {
        (Zero, Zero) | (U(_), U(_)) | (S(_), S(_)) => some(0, "same-factor"),
        (Zero, Mix { i, j, k }) => some(
            u64::from(i == sp.a && j == sp.b && k == sp.c),
            "special-state",
        ),
        (Zero, _) => some(0, "special-state"),
        (U(i), S(j)) => some(u64::from(i == sp.a && j == sp.b), "unique-pair"),
        (U(i), Mix { i: i2, j: j2, k }) => {
            if j2 != sp.b {
                return some(0, "class-mismatch");
            }
            let list = u_shift_matches(ps, i2, i);
            let count = list
                .iter()
                .filter(|&&(_, kv)| arith::submod(sp.c, kv, r) == k % r)
                .count() as u64;
            some(count, "u-shift-filter")
        }
        (S(i), Mix { i: i2, j: j2, k }) => {
            if i2 != sp.a {
                return some(0, "class-mismatch");
            }
            let list = s_shift_matches(ps, j2, i);
            let count = list
                .iter()
                .filter(|&&(_, kv)| (sp.c + kv) % r == k % r)
                .count() as u64;
            some(count, "s-shift-filter")
        }
        (
            Mix {
                i: i1,
                j: j1,
                k: l1,
            },
            Mix {
                i: i2,
                j: j2,
                k: l2,
            },
        ) => {
            let mu_list = u_shift_matches(ps, i1, i2);
            let lambda_list = s_shift_matches(ps, j1, j2);
            if c1 == c2 {
                let mut doubled = 0u64;
                for &(d, kp) in &mu_list {
                    for &(cj, kj) in &lambda_list {
                        if d % r == cj % r
                            && arith::submod(sp.c + kj, kp, r) == l1 % r
                        {
                            doubled += 1;
                        }
                    }
                }
                debug_assert_eq!(doubled % 2, 0);
                some(doubled / 2, "mix-loop")
            } else {
                let mut count = 0u64;
                for &(d, kp) in &mu_list {
                    for &(cj, kj) in &lambda_list {
                        let base = arith::submod(sp.c + kj, kp, r);
                        if base == l1 % r && (base + d + arith::submod(0, cj, r)) % r == l2 % r {
                            count += 1;
                        }
                    }
                }
                some(count, "mix-congruence")
            }
        }
        _ => unreachable!("canonical ordering covers all cases"),
    }
}

/// Cache key for one subalgorithm side: the class cycle (None = zero state).
type SideKey = (Option<u32>, Option<u32>);

/// Pair search engine with per-side subalgorithm caches. The caches can be
/// filled up front (`prepare_all`) so that lookups afterwards are read-only
/// and safe to share across threads; reversed inputs reuse the stored output
/// through the (i, i') -> (-i', -i) rule.
pub struct PairEngine<'a> {
    ps: &'a ProductStructure,
    cache_u: HashMap<SideKey, Vec<(u64, u64)>>,
    cache_s: HashMap<SideKey, Vec<(u64, u64)>>,
    /// Number of scans executed over pairs of class cycles (zero-state
    /// inputs, reversal reuse, zero-quota skips and the Zech fast path
    /// excluded); bounded by t(t+1)/2.
    pub scans_u: u64,
    pub scans_s: u64,
}

#[derive(Clone, Copy)]
enum Side {
    P,
    Q,
}

impl<'a> PairEngine<'a> {
    pub fn new(ps: &'a ProductStructure) -> PairEngine<'a> {
        PairEngine {
            ps,
            cache_u: HashMap::new(),
            cache_s: HashMap::new(),
            scans_u: 0,
            scans_s: 0,
        }
    }

    pub fn ps(&self) -> &ProductStructure {
        self.ps
    }

    fn side_state(&self, side: Side, class: Option<u32>) -> u64 {
        match (side, class) {
            (_, None) => 0,
            (Side::P, Some(i)) => self.ps.p_dec.states[i as usize],
            (Side::Q, Some(j)) => self.ps.q_dec.states[j as usize],
        }
    }

    /// Predicted output size: the cyclotomic number (i-a, j-a)_t for two
    /// class cycles, membership of the special class for zero inputs.
    fn quota(&self, side: Side, key: SideKey) -> Option<u64> {
        let (dec, special) = match side {
            Side::P => (&self.ps.p_dec, self.ps.special.a),
            Side::Q => (&self.ps.q_dec, self.ps.special.b),
        };
        let t = dec.t;
        match key {
            (None, None) => Some(0),
            (None, Some(j)) => Some(u64::from(j == special)),
            (Some(i), None) => Some(u64::from(i == special)),
            (Some(i), Some(j)) => field::cyclotomic_number(
                dec.field.table(),
                t,
                arith::submod(i as u64, special as u64, t.max(1)),
                arith::submod(j as u64, special as u64, t.max(1)),
            )
            .ok(),
        }
    }

    fn compute(&mut self, side: Side, key: SideKey) -> Vec<(u64, u64)> {
        let (dec, a3, a3_phase) = match side {
            Side::P => (&self.ps.p_dec, self.ps.special.a3, self.ps.special.a3_phase),
            Side::Q => (&self.ps.q_dec, self.ps.special.b3, self.ps.special.b3_phase),
        };
        let e = dec.e;
        // reversal reuse
        let cache = match side {
            Side::P => &self.cache_u,
            Side::Q => &self.cache_s,
        };
        if key.0 != key.1 {
            if let Some(rev) = cache.get(&(key.1, key.0)) {
                let e_first = if key.0.is_some() { e } else { 1 };
                let e_second = if key.1.is_some() { e } else { 1 };
                let mut out: Vec<(u64, u64)> = rev
                    .iter()
                    .map(|&(i, ip)| (arith::submod(0, ip, e_first), arith::submod(0, i, e_second)))
                    .collect();
                out.sort_unstable();
                return out;
            }
        }
        let quota = self.quota(side, key);
        let a1 = self.side_state(side, key.0);
        let a2 = self.side_state(side, key.1);
        // Zech fast path: primitive factor, both states on the same cycle
        if key.0.is_some() && key.0 == key.1 && dec.t == 1 && a1 == a2 {
            if let Ok(out) = zech_subalg(dec.field.table(), a3_phase, e) {
                return out;
            }
        }
        if quota != Some(0) && key.0.is_some() && key.1.is_some() {
            match side {
                Side::P => self.scans_u += 1,
                Side::Q => self.scans_s += 1,
            }
        }
        subalgorithm(&dec.spec, a1, a2, a3, e, quota)
    }

    fn ensure(&mut self, side: Side, key: SideKey) {
        let present = match side {
            Side::P => self.cache_u.contains_key(&key),
            Side::Q => self.cache_s.contains_key(&key),
        };
        if !present {
            let out = self.compute(side, key);
            match side {
                Side::P => self.cache_u.insert(key, out),
                Side::Q => self.cache_s.insert(key, out),
            };
        }
    }

    /// Fills both caches for every component combination, including the
    /// zero-state rows, so that `pairs_cached` never misses.
    pub fn prepare_all(&mut self) {
        let t1 = self.ps.t1 as u32;
        let t2 = self.ps.t2 as u32;
        let keys = |t: u32| -> Vec<Option<u32>> {
            std::iter::once(None).chain((0..t).map(Some)).collect()
        };
        for &x in &keys(t1) {
            for &y in &keys(t1) {
                self.ensure(Side::P, (x, y));
            }
        }
        for &x in &keys(t2) {
            for &y in &keys(t2) {
                self.ensure(Side::Q, (x, y));
            }
        }
    }

    /// All conjugate pairs between c1 and c2, computing missing
    /// subalgorithm outputs on demand.
    pub fn pairs(&mut self, c1: CycleId, c2: CycleId) -> Result<PairCountReport> {
        let ((a1, _), (b1, _)) = self.ps.components(c1);
        let ((a2, _), (b2, _)) = self.ps.components(c2);
        self.ensure(Side::P, (a1, a2));
        self.ensure(Side::Q, (b1, b2));
        self.pairs_cached(c1, c2)
    }

    /// As `pairs`, but requires the caches to be pre-filled; immutable, so
    /// distinct cycle pairs may be processed concurrently.
    pub fn pairs_cached(&self, c1: CycleId, c2: CycleId) -> Result<PairCountReport> {
        let closed_form = count_closed_form(self.ps, c1, c2);
        let pairs = self.pair_list(c1, c2)?;
        Ok(PairCountReport {
            c1,
            c2,
            count: pairs.len() as u64,
            pairs,
            closed_form,
        })
    }

    fn pair_list(&self, c1: CycleId, c2: CycleId) -> Result<Vec<ConjugatePair>> {
        let ps = self.ps;
        let r = ps.r;
        // the zero cycle pairs only with the cycle containing S
        if c1 == CycleId::Zero || c2 == CycleId::Zero {
            let other = if c1 == CycleId::Zero { c2 } else { c1 };
            if other == ps.special_cycle() {
                return Ok(vec![ConjugatePair::canonical(0)]);
            }
            return Ok(Vec::new());
        }
        let ((a1, x1), (b1, x2)) = ps.components(c1);
        let ((a2, x3), (b2, x4)) = ps.components(c2);
        let out1 = self
            .cache_u
            .get(&(a1, a2))
            .ok_or_else(|| Error::Internal("subalgorithm cache miss".into()))?;
        let out2 = self
            .cache_s
            .get(&(b1, b2))
            .ok_or_else(|| Error::Internal("subalgorithm cache miss".into()))?;
        if out1.is_empty() || out2.is_empty() {
            return Ok(Vec::new());
        }
        let zeros = [a1.is_none(), a2.is_none(), b1.is_none(), b2.is_none()]
            .iter()
            .filter(|&&z| z)
            .count();
        let a1_state = a1.map_or(0, |i| ps.p_dec.states[i as usize]);
        let b1_state = b1.map_or(0, |j| ps.q_dec.states[j as usize]);
        let mut emitted: Vec<u64> = Vec::new();
        for &(i, ip) in out1 {
            for &(j, jp) in out2 {
                let admit = match zeros {
                    0 => {
                        arith::submod(i, x1, r) == arith::submod(j, x2, r)
                            && (ip + x3) % r == (jp + x4) % r
                    }
                    1 => {
                        if a1.is_none() || b1.is_none() {
                            (ip + x3) % r == (jp + x4) % r
                        } else {
                            arith::submod(i, x1, r) == arith::submod(j, x2, r)
                        }
                    }
                    _ => true,
                };
                if admit {
                    let a = if a1_state == 0 {
                        0
                    } else {
                        ps.p_dec.spec.step_n(a1_state, i)
                    };
                    let b = if b1_state == 0 {
                        0
                    } else {
                        ps.q_dec.spec.step_n(b1_state, j)
                    };
                    emitted.push(ps.basis.to_state(a, b));
                }
            }
        }
        let mut canon: Vec<ConjugatePair> = emitted
            .iter()
            .map(|&v| ConjugatePair::canonical(v))
            .collect();
        canon.sort_unstable();
        canon.dedup();
        if c1 == c2 && emitted.len() != 2 * canon.len() {
            return Err(Error::Internal(format!(
                "loop emissions not doubled: {} vs {}",
                emitted.len(),
                canon.len()
            )));
        }
        if c1 != c2 && emitted.len() != canon.len() {
            return Err(Error::Internal("duplicate pair between distinct cycles".into()));
        }
        Ok(canon)
    }
}

/// One-shot search between two cycles.
pub fn find_conjugate_pairs(
    ps: &ProductStructure,
    c1: CycleId,
    c2: CycleId,
) -> Result<PairCountReport> {
    let mut engine = PairEngine::new(ps);
    engine.pairs(c1, c2)
}

/// Pair count N(i, j) between the mixed cycles [L^i u + s] and [L^j u + s]
/// when both factors are primitive: scan k over one mixed period, admitting
/// the k with tau_n(k) = tau_m(k + i - j) + j - c (mod r); the Zech
/// sentinels drop the k where either sum degenerates. Halved when i = j.
pub fn count_primitive_pair(ps: &ProductStructure, i: u64, j: u64) -> Result<u64> {
    if ps.t1 != 1 || ps.t2 != 1 {
        return Err(Error::FastPathNotPrimitive);
    }
    let (tm, tn) = (ps.p_dec.field.table(), ps.q_dec.field.table());
    let (r, c) = (ps.r, ps.special.c);
    let mut count = 0u64;
    for k in 0..ps.lcm {
        let zn = tn.zech_log(k % ps.e2);
        let zm = tm.zech_log((k + ps.e1 + i % ps.e1 - j % ps.e1) % ps.e1);
        if zn == INFINITY || zm == INFINITY {
            continue;
        }
        if zn as u64 % r == (zm as u64 + j + arith::submod(0, c, r)) % r {
            count += 1;
        }
    }
    if i % r == j % r {
        debug_assert_eq!(count % 2, 0);
        count /= 2;
    }
    Ok(count)
}

/// N(i, j) as a cyclotomic-number sum when e1 divides e2 (both factors
/// primitive): sum over l != j - i of (l, tau_m(l + i - j) + j - c)_{e1}
/// computed in the second factor's field. Halved when i = j.
pub fn count_e1_divides_e2(ps: &ProductStructure, i: u64, j: u64) -> Result<u64> {
    if ps.t1 != 1 || ps.t2 != 1 {
        return Err(Error::FastPathNotPrimitive);
    }
    if ps.e2 % ps.e1 != 0 {
        return Err(Error::OrderDivisibility(ps.e1, ps.e2));
    }
    let e1 = ps.e1;
    let (tm, tn) = (ps.p_dec.field.table(), ps.q_dec.field.table());
    let c = ps.special.c;
    let skip = arith::submod(j, i, e1);
    let mut total = 0u64;
    for l in 0..e1 {
        if l == skip {
            continue;
        }
        let zm = tm.zech_log((l + e1 + i % e1 - j % e1) % e1) as u64;
        let target = (zm + j + arith::submod(0, c, e1)) % e1;
        total += field::cyclotomic_number(tn, e1, l, target)?;
    }
    if i % e1 == j % e1 {
        debug_assert_eq!(total % 2, 0);
        total /= 2;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly2::Poly2;

    const P5: Poly2 = Poly2::from_mask(0x1F);
    const Q4: Poly2 = Poly2::from_mask(0x13);

    fn worked_example() -> ProductStructure {
        ProductStructure::new(P5, Q4).unwrap()
    }

    #[test]
    fn subalgorithm_outputs() {
        let ps = worked_example();
        let (a3, b3) = (ps.special.a3, ps.special.b3);
        let p = &ps.p_dec;
        let q = &ps.q_dec;
        let expect: [((usize, usize), Vec<(u64, u64)>); 5] = [
            ((0, 0), vec![(1, 1), (4, 4)]),
            ((0, 1), vec![(2, 3), (3, 1)]),
            ((0, 2), vec![(0, 4)]),
            ((1, 2), vec![(0, 3), (1, 0)]),
            ((2, 2), vec![(3, 1), (4, 2)]),
        ];
        for ((i, j), want) in expect {
            let got = subalg1(&p.spec, p.states[i], p.states[j], a3, p.e);
            assert_eq!(got, want, "({i},{j})");
        }
        assert_eq!(subalg1(&p.spec, p.states[1], p.states[1], a3, p.e), vec![]);
        assert_eq!(subalg1(&p.spec, 0, p.states[1], a3, p.e), vec![(0, 2)]);
        // reversal rule
        let rev = subalg1(&p.spec, p.states[1], p.states[0], a3, p.e);
        assert_eq!(rev, vec![(2, 3), (4, 2)]);
        // second factor
        assert_eq!(subalg2(&q.spec, 0, q.states[0], b3, q.e), vec![(0, 6)]);
        assert_eq!(subalg2(&q.spec, q.states[0], 0, b3, q.e), vec![(9, 0)]);
        let qq = subalg2(&q.spec, q.states[0], q.states[0], b3, q.e);
        assert_eq!(qq.len(), 14);
        let tau4 = [4u64, 8, 14, 1, 10, 13, 9, 2, 7, 5, 12, 11, 6, 3];
        for &(j, jp) in &qq {
            let tau = tau4[(arith::submod(j, 9, 15) - 1) as usize];
            assert_eq!(jp, arith::submod(0, 9 + tau, 15), "j={j}");
        }
    }

    #[test]
    fn zech_path_matches_scan() {
        let ps = worked_example();
        let q = &ps.q_dec;
        let fast = zech_subalg(q.field.table(), ps.special.b3_phase, q.e).unwrap();
        let slow = subalg2(&q.spec, q.states[0], q.states[0], ps.special.b3, q.e);
        assert_eq!(fast, slow);
        // gf(4), k = 0
        let pq = ProductStructure::new(Poly2::from_mask(0b111), Q4).unwrap();
        let fast = zech_subalg(pq.p_dec.field.table(), 0, 3).unwrap();
        assert_eq!(fast, vec![(1, 1), (2, 2)]);
        assert!(zech_subalg(ps.p_dec.field.table(), 0, 5).is_err());
    }

    #[test]
    fn quota_truncates_scan() {
        let ps = worked_example();
        let p = &ps.p_dec;
        let full = subalgorithm(&p.spec, p.states[0], p.states[0], ps.special.a3, p.e, None);
        let quota = subalgorithm(
            &p.spec,
            p.states[0],
            p.states[0],
            ps.special.a3,
            p.e,
            Some(2),
        );
        assert_eq!(full, quota);
    }

    #[test]
    fn unique_pair_between_factor_cycles() {
        let ps = worked_example();
        let rep = find_conjugate_pairs(&ps, CycleId::U(1), CycleId::S(0)).unwrap();
        assert_eq!(rep.count, 1);
        // the pair is ((a3, 0) P, (0, b3) P)
        let va = ps.basis.to_state(ps.special.a3, 0);
        let vb = ps.basis.to_state(0, ps.special.b3);
        assert_eq!(va ^ vb, 1, "components of S differ in the first bit");
        assert_eq!(rep.pairs[0], ConjugatePair::canonical(va));
        for i in 0..3u32 {
            for j in 0..3u32 {
                if i == j {
                    continue;
                }
                let rep = find_conjugate_pairs(&ps, CycleId::U(i), CycleId::U(j)).unwrap();
                assert_eq!(rep.count, 0, "U{i} vs U{j}");
            }
        }
    }

    #[test]
    fn zero_cycle_pairs_only_with_special() {
        let ps = worked_example();
        let special = ps.special_cycle();
        assert_eq!(special, CycleId::Mix { i: 1, j: 0, k: 4 });
        let rep = find_conjugate_pairs(&ps, CycleId::Zero, special).unwrap();
        assert_eq!(rep.count, 1);
        assert_eq!(rep.pairs[0], ConjugatePair { v: 0, v_hat: 1 });
        let rep =
            find_conjugate_pairs(&ps, CycleId::Zero, CycleId::Mix { i: 1, j: 0, k: 3 }).unwrap();
        assert_eq!(rep.count, 0);
        let rep = find_conjugate_pairs(&ps, CycleId::Zero, CycleId::U(1)).unwrap();
        assert_eq!(rep.count, 0);
    }

    #[test]
    fn closed_forms_match_search_on_worked_example() {
        let ps = worked_example();
        let mut engine = PairEngine::new(&ps);
        engine.prepare_all();
        let cycles = ps.cycles();
        for (x, &c1) in cycles.iter().enumerate() {
            for &c2 in &cycles[x..] {
                let rep = engine.pairs_cached(c1, c2).unwrap();
                let cf = rep.closed_form.expect("closed form always available");
                assert_eq!(cf.count, rep.count, "{c1} vs {c2} ({})", cf.rule);
            }
        }
    }

    #[test]
    fn scan_bound_respected() {
        let ps = worked_example();
        let mut engine = PairEngine::new(&ps);
        engine.prepare_all();
        let (t1, t2) = (ps.t1, ps.t2);
        assert!(engine.scans_u <= t1 * (t1 + 1) / 2, "{}", engine.scans_u);
        assert!(engine.scans_s <= t2 * (t2 + 1) / 2, "{}", engine.scans_s);
    }

    #[test]
    fn primitive_pair_counts() {
        // (x^2+x+1)(x^4+x+1): r = 3, loops and cross counts from the
        // degree-4 closed forms A=0, B=2, C=1
        let ps = ProductStructure::new(Poly2::from_mask(0b111), Q4).unwrap();
        let c = ps.special.c;
        let n = |i: u64, j: u64| count_primitive_pair(&ps, i, j).unwrap();
        assert_eq!(n(c, c), 1); // C
        assert_eq!(n(c, (c + 1) % 3), 4); // 2B
        assert_eq!(n((c + 1) % 3, (c + 1) % 3), 2); // B
        assert_eq!(n((c + 1) % 3, (c + 2) % 3), 1); // A + C
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(
                    count_e1_divides_e2(&ps, i, j).unwrap(),
                    n(i, j),
                    "({i},{j})"
                );
            }
        }
        assert!(count_primitive_pair(&worked_example(), 0, 0).is_err());
    }

    #[test]
    fn coprime_orders_loop_count() {
        // (x^2+x+1)(x^3+x+1): gcd(3,7) = 1, single mixed cycle with
        // (e1-1)(e2-1)/2 = 6 self-pairs
        let ps = ProductStructure::new(Poly2::from_mask(0b111), Poly2::from_mask(0b1011)).unwrap();
        assert_eq!(count_primitive_pair(&ps, 0, 0).unwrap(), 6);
        let mix = CycleId::Mix { i: 0, j: 0, k: 0 };
        let rep = find_conjugate_pairs(&ps, mix, mix).unwrap();
        assert_eq!(rep.count, 6);
    }
}
