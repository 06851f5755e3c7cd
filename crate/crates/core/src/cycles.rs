//! LFSR simulation and the cycle structure of a product register.
//!
//! For f(x) = p(x) q(x) with p, q distinct irreducibles of degrees m, n and
//! orders e1, e2, the 2^(m+n) states split into
//!
//!   [0]  +  t1 cycles of period e1  +  t2 cycles of period e2
//!        +  t1 * t2 * gcd(e1, e2) mixed cycles of period lcm(e1, e2)
//!
//! where t = (2^deg - 1)/e counts each factor's cyclotomic classes. Every
//! cycle gets a tagged identity and a canonical representative: the class
//! states come from the phi correspondence (so labels match the cyclotomic
//! class indices), and the mixed cycle Mix(i, j, k) is the one containing
//! the state (T^k p_i, q_j) P.

use crate::arith;
use crate::error::{Error, Result};
use crate::field::FactorField;
use crate::poly2::{self, Poly2};
use crate::staterep::{self, SpecialLocation, StateBasis};
use std::fmt;
use std::str::FromStr;

/// A linear register: n stages, feedback taps from the characteristic
/// polynomial's low coefficients. The constant term must be 1 (nonsingular
/// feedback), so x itself is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LfsrSpec {
    charpoly: Poly2,
    n_stages: u32,
    taps: u64,
}

impl LfsrSpec {
    pub fn new(charpoly: Poly2) -> Result<LfsrSpec> {
        let n = match charpoly.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if !charpoly.constant_term() {
            return Err(Error::ZeroConstantTerm(charpoly.to_string()));
        }
        Ok(LfsrSpec {
            charpoly,
            n_stages: n,
            taps: charpoly.mask() & ((1u64 << n) - 1),
        })
    }

    pub fn charpoly(&self) -> Poly2 {
        self.charpoly
    }

    pub fn n_stages(&self) -> u32 {
        self.n_stages
    }

    /// One state-operator application (unchecked width).
    #[inline]
    pub fn step(&self, state: u64) -> u64 {
        let fb = ((state & self.taps).count_ones() & 1) as u64;
        (state >> 1) | (fb << (self.n_stages - 1))
    }

    pub fn step_n(&self, mut state: u64, count: u64) -> u64 {
        for _ in 0..count {
            state = self.step(state);
        }
        state
    }
}

/// Width-checked state step.
pub fn lfsr_next(spec: &LfsrSpec, state: u64) -> Result<u64> {
    if spec.n_stages < 64 && state >> spec.n_stages != 0 {
        return Err(Error::StateWidth {
            state,
            width: spec.n_stages,
        });
    }
    Ok(spec.step(state))
}

/// Tagged cycle identity. The derived order (Zero, U, S, then Mix in
/// lexicographic (i, j, k) order) is the canonical vertex order for every
/// downstream matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CycleId {
    Zero,
    U(u32),
    S(u32),
    Mix { i: u32, j: u32, k: u64 },
}

impl fmt::Display for CycleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleId::Zero => write!(f, "ZERO"),
            CycleId::U(i) => write!(f, "U{i}"),
            CycleId::S(j) => write!(f, "S{j}"),
            CycleId::Mix { i, j, k } => write!(f, "MIX:{i},{j},{k}"),
        }
    }
}

impl FromStr for CycleId {
    type Err = Error;
    fn from_str(s: &str) -> Result<CycleId> {
        let bad = || Error::Parse(format!("bad cycle id {s:?}"));
        if s.eq_ignore_ascii_case("zero") {
            return Ok(CycleId::Zero);
        }
        if let Some(rest) = s.strip_prefix('U').or_else(|| s.strip_prefix('u')) {
            return rest.parse().map(CycleId::U).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix('S').or_else(|| s.strip_prefix('s')) {
            return rest.parse().map(CycleId::S).map_err(|_| bad());
        }
        let rest = s
            .strip_prefix("MIX:")
            .or_else(|| s.strip_prefix("mix:"))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(CycleId::Mix {
            i: parts[0].trim().parse().map_err(|_| bad())?,
            j: parts[1].trim().parse().map_err(|_| bad())?,
            k: parts[2].trim().parse().map_err(|_| bad())?,
        })
    }
}

/// One irreducible factor, fully decomposed: field context, register spec,
/// and the canonical class states phi(alpha^0 .. alpha^(t-1)).
pub struct FactorDecomposition {
    pub field: FactorField,
    pub spec: LfsrSpec,
    pub e: u64,
    pub t: u64,
    pub states: Vec<u64>,
}

impl FactorDecomposition {
    pub fn new(g: Poly2) -> Result<FactorDecomposition> {
        let field = FactorField::new(g)?;
        let spec = LfsrSpec::new(g)?;
        let e = field.order_e();
        let t = field.classes_t();
        let states = (0..t).map(|i| field.phi(i)).collect();
        Ok(FactorDecomposition {
            field,
            spec,
            e,
            t,
            states,
        })
    }

    pub fn degree(&self) -> u32 {
        self.spec.n_stages()
    }

    /// Finds the class cycle containing `target` and its phase relative to
    /// the class state, by walking orbits.
    pub fn locate(&self, target: u64) -> Option<(u32, u64)> {
        if target == 0 {
            return None;
        }
        for (i, &base) in self.states.iter().enumerate() {
            let mut cur = base;
            for phase in 0..self.e {
                if cur == target {
                    return Some((i as u32, phase));
                }
                cur = self.spec.step(cur);
            }
        }
        None
    }
}

/// Representative states of the nonzero cycles of one irreducible factor,
/// in cyclotomic class order.
pub fn decompose_irreducible(g: Poly2) -> Result<Vec<u64>> {
    Ok(FactorDecomposition::new(g)?.states)
}

/// The class-correspondence state of exponent j: the window of the class
/// sequence starting at alpha^j. Identifies cyclotomic class j mod t with
/// the j-th shift class cycle.
pub fn phi_map(ff: &FactorField, j: u64) -> u64 {
    ff.phi(j)
}

/// Full decomposition of the product register.
pub struct ProductStructure {
    pub p_dec: FactorDecomposition,
    pub q_dec: FactorDecomposition,
    pub product: LfsrSpec,
    pub basis: StateBasis,
    pub special: SpecialLocation,
    pub m: u32,
    pub n: u32,
    pub e1: u64,
    pub e2: u64,
    pub t1: u64,
    pub t2: u64,
    pub r: u64,
    pub lcm: u64,
}

pub fn decompose_product(p: Poly2, q: Poly2) -> Result<ProductStructure> {
    ProductStructure::new(p, q)
}

impl ProductStructure {
    pub fn new(p: Poly2, q: Poly2) -> Result<ProductStructure> {
        if p == q {
            return Err(Error::IdenticalFactors);
        }
        let p_dec = FactorDecomposition::new(p)?;
        let q_dec = FactorDecomposition::new(q)?;
        let product = LfsrSpec::new(poly2::mul(p, q)?)?;
        let basis = staterep::build_basis(p, q)?;
        let special = staterep::locate_special(&p_dec, &q_dec, &basis)?;
        let (e1, e2) = (p_dec.e, q_dec.e);
        Ok(ProductStructure {
            m: p_dec.degree(),
            n: q_dec.degree(),
            e1,
            e2,
            t1: p_dec.t,
            t2: q_dec.t,
            r: arith::gcd(e1, e2),
            lcm: arith::lcm(e1, e2),
            p_dec,
            q_dec,
            product,
            basis,
            special,
        })
    }

    pub fn p(&self) -> Poly2 {
        self.p_dec.spec.charpoly()
    }

    pub fn q(&self) -> Poly2 {
        self.q_dec.spec.charpoly()
    }

    pub fn cycle_count(&self) -> u64 {
        1 + self.t1 + self.t2 + self.t1 * self.t2 * self.r
    }

    /// All cycles in canonical order.
    pub fn cycles(&self) -> Vec<CycleId> {
        let mut out = Vec::with_capacity(self.cycle_count() as usize);
        out.push(CycleId::Zero);
        out.extend((0..self.t1 as u32).map(CycleId::U));
        out.extend((0..self.t2 as u32).map(CycleId::S));
        for i in 0..self.t1 as u32 {
            for j in 0..self.t2 as u32 {
                for k in 0..self.r {
                    out.push(CycleId::Mix { i, j, k });
                }
            }
        }
        out
    }

    pub fn period(&self, id: CycleId) -> u64 {
        match id {
            CycleId::Zero => 1,
            CycleId::U(_) => self.e1,
            CycleId::S(_) => self.e2,
            CycleId::Mix { .. } => self.lcm,
        }
    }

    /// Component view of a cycle's canonical representative:
    /// ((p-class, p-phase), (q-class, q-phase)), None for a zero component.
    pub fn components(&self, id: CycleId) -> ((Option<u32>, u64), (Option<u32>, u64)) {
        match id {
            CycleId::Zero => ((None, 0), (None, 0)),
            CycleId::U(i) => ((Some(i), 0), (None, 0)),
            CycleId::S(j) => ((None, 0), (Some(j), 0)),
            CycleId::Mix { i, j, k } => ((Some(i), k), (Some(j), 0)),
        }
    }

    /// Representative as (bits, width): the class state for pure cycles,
    /// the full (T^k p_i, q_j) P state for mixed ones.
    pub fn rep(&self, id: CycleId) -> (u64, u32) {
        match id {
            CycleId::Zero => (0, self.m + self.n),
            CycleId::U(i) => (self.p_dec.states[i as usize], self.m),
            CycleId::S(j) => (self.q_dec.states[j as usize], self.n),
            CycleId::Mix { .. } => (self.full_state(id), self.m + self.n),
        }
    }

    /// The (m+n)-stage representative state on the cycle.
    pub fn full_state(&self, id: CycleId) -> u64 {
        let ((ai, x1), (bj, x2)) = self.components(id);
        let a = ai.map_or(0, |i| {
            self.p_dec
                .spec
                .step_n(self.p_dec.states[i as usize], x1 % self.e1)
        });
        let b = bj.map_or(0, |j| {
            self.q_dec
                .spec
                .step_n(self.q_dec.states[j as usize], x2 % self.e2)
        });
        self.basis.to_state(a, b)
    }

    /// The mixed cycle identity containing S; its unique neighbour of [0].
    pub fn special_cycle(&self) -> CycleId {
        CycleId::Mix {
            i: self.special.a,
            j: self.special.b,
            k: self.special.c,
        }
    }
}
