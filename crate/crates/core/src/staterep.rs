//! State representation for a product register: the basis matrix P built
//! from the two factors, and the conversion between raw (m+n)-stage states
//! and (a, b) component-state pairs.
//!
//! Row i of the top block is the first m+n output bits of the p-register
//! seeded with unit state e_i; the bottom block does the same for q. The
//! first m (resp. n) columns of each block form an identity, and P is
//! full-rank for distinct irreducible factors. A state v of the product
//! register then factors uniquely as v = (a, b) P with a tracking the
//! p-component and b the q-component; the conversion commutes with the
//! register step and with addition.

use crate::arith;
use crate::bitmat::BitMatrix;
use crate::cycles::{FactorDecomposition, LfsrSpec};
use crate::error::{Error, Result};
use crate::poly2::{self, Poly2};

pub struct StateBasis {
    mat: BitMatrix,
    inv: BitMatrix,
    m: u32,
    n: u32,
}

/// Builds P (and its inverse) for the factor pair (p, q).
pub fn build_basis(p: Poly2, q: Poly2) -> Result<StateBasis> {
    if p == q {
        return Err(Error::IdenticalFactors);
    }
    let pspec = LfsrSpec::new(p)?;
    let qspec = LfsrSpec::new(q)?;
    let (m, n) = (pspec.n_stages(), qspec.n_stages());
    if m + n > 63 {
        return Err(Error::DegreeTooLarge(m + n, 63));
    }
    if !poly2::is_irreducible(p)? {
        return Err(Error::Reducible(p.to_string()));
    }
    if !poly2::is_irreducible(q)? {
        return Err(Error::Reducible(q.to_string()));
    }
    let mut rows = Vec::with_capacity((m + n) as usize);
    for i in 0..m {
        rows.push(first_bits(&pspec, 1u64 << i, m + n));
    }
    for j in 0..n {
        rows.push(first_bits(&qspec, 1u64 << j, m + n));
    }
    let mat = BitMatrix::from_rows(rows)?;
    let inv = mat
        .inverse()
        .ok_or_else(|| Error::Internal("basis matrix is singular".into()))?;
    Ok(StateBasis { mat, inv, m, n })
}

fn first_bits(spec: &LfsrSpec, seed: u64, count: u32) -> u64 {
    let mut state = seed;
    let mut out = 0u64;
    for i in 0..count {
        out |= (state & 1) << i;
        state = spec.step(state);
    }
    out
}

impl StateBasis {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &BitMatrix {
        &self.inv
    }

    /// (a, b) -> v = (a, b) P. Unchecked widths.
    pub fn to_state(&self, a: u64, b: u64) -> u64 {
        self.mat.mul_row_vec(a | (b << self.m))
    }

    /// v -> (a, b) = v P^inverse.
    pub fn to_components(&self, v: u64) -> (u64, u64) {
        let ab = self.inv.mul_row_vec(v);
        (ab & ((1 << self.m) - 1), ab >> self.m)
    }
}

/// Width-checked concatenate-and-transform.
pub fn ab_to_state(basis: &StateBasis, a: u64, b: u64) -> Result<u64> {
    if a >> basis.m != 0 {
        return Err(Error::StateWidth {
            state: a,
            width: basis.m,
        });
    }
    if b >> basis.n != 0 {
        return Err(Error::StateWidth {
            state: b,
            width: basis.n,
        });
    }
    Ok(basis.to_state(a, b))
}

/// Width-checked inverse transform.
pub fn state_to_ab(basis: &StateBasis, v: u64) -> Result<(u64, u64)> {
    if v >> (basis.m + basis.n) != 0 {
        return Err(Error::StateWidth {
            state: v,
            width: basis.m + basis.n,
        });
    }
    Ok(basis.to_components(v))
}

/// Location of the special state S = (1, 0, ..., 0): the component states
/// (a3, b3) = S P^inverse, the cycle indices (a, b) they lie on, their
/// phases relative to the canonical class states, and the shift class c of
/// the mixed cycle containing S.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecialLocation {
    pub a: u32,
    pub b: u32,
    pub c: u64,
    pub a3: u64,
    pub b3: u64,
    pub a3_phase: u64,
    pub b3_phase: u64,
}

pub fn locate_special(
    p_dec: &FactorDecomposition,
    q_dec: &FactorDecomposition,
    basis: &StateBasis,
) -> Result<SpecialLocation> {
    let (a3, b3) = basis.to_components(1);
    // neither factor sequence contains m+n-1 consecutive zeros, so S always
    // splits into two nonzero components
    let (a, a3_phase) = p_dec
        .locate(a3)
        .ok_or_else(|| Error::Internal("special state has no p-component".into()))?;
    let (b, b3_phase) = q_dec
        .locate(b3)
        .ok_or_else(|| Error::Internal("special state has no q-component".into()))?;
    let r = arith::gcd(p_dec.e, q_dec.e);
    Ok(SpecialLocation {
        a,
        b,
        c: arith::submod(a3_phase, b3_phase, r),
        a3,
        b3,
        a3_phase,
        b3_phase,
    })
}
