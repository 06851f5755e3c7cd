//! GF(2^k) table machinery: discrete logs, Zech logarithms, cyclotomic
//! classes and numbers, plus the per-factor field context used by the cycle
//! decomposition.
//!
//! With alpha a fixed primitive element, the Zech logarithm tau satisfies
//! 1 + alpha^l = alpha^tau(l). The entry for l = 0 is the INFINITY sentinel
//! (1 + 1 = 0, and alpha^infinity is read as 0); in characteristic 2 tau is
//! an involutive permutation of {1..2^k-2}.
//!
//! The cyclotomic classes for t | 2^k - 1 are C_i = alpha^i <alpha^t>, and
//! the cyclotomic number (i,j)_t counts the xi in C_i with xi + 1 in C_j,
//! which reduces to counting s with tau(i + s*t) = j (mod t).
//!
//! For an irreducible g of degree k and order e, `FactorField` fixes the
//! ambient field (g itself when primitive, otherwise the lowest-mask
//! primitive polynomial of degree k), locates a root beta = alpha^(t*s) of g,
//! and exposes the correspondence between cyclotomic classes and the shift
//! classes of sequences with minimal polynomial g.

use crate::arith;
use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};
use crate::poly2::{self, Poly2};

/// Sentinel for Zech logarithm of 0 (and discrete log of 0).
pub const INFINITY: u32 = u32::MAX;

/// Largest extension degree for which dense tables are built.
pub const MAX_TABLE_DEGREE: u32 = 20;

pub struct FieldTable {
    k: u32,
    modulus: Poly2,
    log: Vec<u32>,     // indexed by element mask; log[0] = INFINITY
    antilog: Vec<u64>, // indexed by exponent 0..2^k-2
    zech: Vec<u32>,    // indexed by exponent; zech[0] = INFINITY
}

impl FieldTable {
    /// Builds log/antilog/Zech tables for a primitive modulus.
    pub fn build(modulus: Poly2) -> Result<FieldTable> {
        let k = match modulus.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(k) => k,
        };
        if k > MAX_TABLE_DEGREE {
            return Err(Error::DegreeTooLarge(k, MAX_TABLE_DEGREE));
        }
        if !poly2::is_primitive(modulus) {
            return Err(Error::NotPrimitive);
        }
        let order = (1u64 << k) - 1;
        let mut log = vec![INFINITY; 1 << k];
        let mut antilog = vec![0u64; order as usize];
        let mut x = Poly2::ONE;
        for exp in 0..order {
            antilog[exp as usize] = x.mask();
            log[x.mask() as usize] = exp as u32;
            x = poly2::mul_mod(x, Poly2::X, modulus)?;
        }
        debug_assert_eq!(x, Poly2::ONE);
        let mut zech = vec![INFINITY; order as usize];
        for l in 1..order {
            zech[l as usize] = log[(antilog[l as usize] ^ 1) as usize];
        }
        Ok(FieldTable {
            k,
            modulus,
            log,
            antilog,
            zech,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> Poly2 {
        self.modulus
    }

    /// Multiplicative group order 2^k - 1.
    pub fn order(&self) -> u64 {
        (1u64 << self.k) - 1
    }

    /// alpha^exp (exponent reduced mod 2^k - 1).
    pub fn element(&self, exp: u64) -> u64 {
        self.antilog[(exp % self.order()) as usize]
    }

    /// Discrete log of a nonzero element; INFINITY for 0.
    pub fn log_of(&self, elem: u64) -> u32 {
        self.log[elem as usize]
    }

    /// Zech logarithm tau(l) with l reduced mod 2^k - 1; INFINITY at l = 0.
    pub fn zech_log(&self, l: u64) -> u32 {
        self.zech[(l % self.order()) as usize]
    }

    pub fn zech_table(&self) -> &[u32] {
        &self.zech
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.antilog[((self.log[a as usize] as u64 + self.log[b as usize] as u64)
            % self.order()) as usize]
    }

    /// Evaluate a GF(2) polynomial at a field element.
    pub fn eval_poly(&self, g: Poly2, y: u64) -> u64 {
        let mut acc = 0u64;
        for i in (0..=g.degree().unwrap_or(0)).rev() {
            acc = self.mul(acc, y);
            if g.mask() >> i & 1 == 1 {
                acc ^= 1;
            }
        }
        acc
    }
}

/// Cyclotomic class data for a divisor t of 2^k - 1: class size e, and the
/// class index of each exponent.
pub struct Cyclotomy {
    pub t: u64,
    pub e: u64,
    pub class_of: Vec<u64>,
}

pub fn cyclotomy(ft: &FieldTable, t: u64) -> Result<Cyclotomy> {
    let order = ft.order();
    if t == 0 || order % t != 0 {
        return Err(Error::NotADivisor(t, order));
    }
    Ok(Cyclotomy {
        t,
        e: order / t,
        class_of: (0..order).map(|j| j % t).collect(),
    })
}

/// Cyclotomic number (i,j)_t: the count of s in [0,e) with
/// tau(i + s*t) = j (mod t). The INFINITY entry never matches, which
/// silently skips the single s where i + s*t = 0.
pub fn cyclotomic_number(ft: &FieldTable, t: u64, i: u64, j: u64) -> Result<u64> {
    let order = ft.order();
    if t == 0 || order % t != 0 {
        return Err(Error::NotADivisor(t, order));
    }
    let e = order / t;
    let (i, j) = (i % t, j % t);
    let mut count = 0;
    for s in 0..e {
        let z = ft.zech_log((i + s * t) % order);
        if z != INFINITY && z as u64 % t == j {
            count += 1;
        }
    }
    Ok(count)
}

/// Closed forms for (i,j)_3 in GF(2^n) with n even:
/// A = (0,0), B = (0,1) = (1,1) = (0,2) = (2,2), C = (1,2), symmetric in
/// (i,j). All three are (2^n + (-2)^(n/2+1 or n/2) + const)/9.
pub fn cyclotomic_t3_even(n: u32, i: u32, j: u32) -> Result<u64> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::OddDegree(n));
    }
    let neg2 = |e: u32| -> i128 { (-2i128).pow(e) };
    let two_n = 1i128 << n;
    let a = (two_n + neg2(n / 2 + 1) - 8) / 9;
    let b = (two_n + neg2(n / 2) - 2) / 9;
    let c = (two_n + neg2(n / 2 + 1) + 1) / 9;
    let (i, j) = (i % 3, j % 3);
    let v = match (i.min(j), i.max(j)) {
        (0, 0) => a,
        (1, 2) => c,
        _ => b,
    };
    u64::try_from(v).map_err(|_| Error::Internal(format!("negative cyclotomic value {v}")))
}

/// Field context for one irreducible factor g of degree k and order e.
///
/// The ambient field modulus is g itself when g is primitive, otherwise the
/// lowest-mask primitive polynomial of degree k. beta = alpha^beta_exp is the
/// first root of g along the exponents t, 2t, 3t, ...; sequences with
/// minimal polynomial g enumerate exponents in steps of beta_exp.
pub struct FactorField {
    g: Poly2,
    k: u32,
    table: FieldTable,
    order_e: u64,
    classes_t: u64,
    beta_exp: u64,
    beta_step_s: u64,
    beta_step_s_inv: u64, // inverse of s mod e
    dual0: u64,           // mask m: a_{l,0} = parity(antilog[l] & m)
    beta_basis_inv: BitMatrix,
}

impl FactorField {
    pub fn new(g: Poly2) -> Result<FactorField> {
        let k = match g.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(k) => k,
        };
        if k > MAX_TABLE_DEGREE {
            return Err(Error::DegreeTooLarge(k, MAX_TABLE_DEGREE));
        }
        if !poly2::is_irreducible(g)? {
            return Err(Error::Reducible(g.to_string()));
        }
        if !g.constant_term() {
            return Err(Error::ZeroConstantTerm(g.to_string()));
        }
        let order_e = poly2::poly_order(g)?;
        let full = (1u64 << k) - 1;
        let classes_t = full / order_e;
        let modulus = if order_e == full {
            g
        } else {
            poly2::lowest_primitive(k)?
        };
        let table = FieldTable::build(modulus)?;
        // locate beta: first multiple of t whose element is a root of g
        let mut step_s = 1u64;
        let beta_exp = loop {
            let exp = (classes_t * step_s) % full.max(1);
            if table.eval_poly(g, table.element(exp)) == 0 {
                break exp;
            }
            step_s += 1;
            if step_s > order_e {
                return Err(Error::Internal(format!("no root of {g} found")));
            }
        };
        let beta_step_s_inv = arith::modinv(step_s % order_e.max(1), order_e.max(1))
            .ok_or_else(|| Error::Internal("beta step not invertible".into()))?;
        // basis matrix: rows beta^0 .. beta^(k-1)
        let rows: Vec<u64> = (0..k as u64).map(|i| table.element(beta_exp * i)).collect();
        let beta_basis = BitMatrix::from_rows(rows)?;
        let beta_basis_inv = beta_basis
            .inverse()
            .ok_or_else(|| Error::Internal("beta powers not a basis".into()))?;
        let dual0 = (0..k as usize).fold(0u64, |acc, i| {
            acc | ((beta_basis_inv.row(i) & 1) << i)
        });
        Ok(FactorField {
            g,
            k,
            table,
            order_e,
            classes_t,
            beta_exp,
            beta_step_s: step_s,
            beta_step_s_inv,
            dual0,
            beta_basis_inv,
        })
    }

    pub fn g(&self) -> Poly2 {
        self.g
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn table(&self) -> &FieldTable {
        &self.table
    }

    pub fn order_e(&self) -> u64 {
        self.order_e
    }

    pub fn classes_t(&self) -> u64 {
        self.classes_t
    }

    pub fn beta_exp(&self) -> u64 {
        self.beta_exp
    }

    /// The index s with beta = alpha^(t*s); 1 whenever alpha^t itself is a
    /// root of g.
    pub fn beta_step(&self) -> u64 {
        self.beta_step_s
    }

    /// Coordinates of alpha^l in the basis {1, beta, ..., beta^(k-1)}.
    pub fn beta_coords(&self, l: u64) -> u64 {
        self.beta_basis_inv.mul_row_vec(self.table.element(l))
    }

    /// a_{l,0}: the beta^0 coordinate of alpha^l.
    pub fn coeff0(&self, l: u64) -> u8 {
        ((self.table.element(l) & self.dual0).count_ones() & 1) as u8
    }

    /// The map phi(alpha^j): the k-stage state whose bits are the beta^0
    /// coordinates of alpha^j, alpha^j * beta, ..., alpha^j * beta^(k-1).
    /// This is the 0th state of the shifted sequence indexed by the class
    /// of j.
    pub fn phi(&self, j: u64) -> u64 {
        let full = self.table.order();
        let mut state = 0u64;
        for i in 0..self.k as u64 {
            state |= (self.coeff0((j + i * self.beta_exp) % full) as u64) << i;
        }
        state
    }

    /// The full period of the class-i sequence: bit j is the beta^0
    /// coordinate of alpha^i * beta^j.
    pub fn sequence(&self, i: u32) -> Vec<u8> {
        let full = self.table.order();
        (0..self.order_e)
            .map(|j| self.coeff0((i as u64 + j * self.beta_exp) % full))
            .collect()
    }

    /// Identify u_{i1} + L^w u_{i2} as L^shift u_class, or None when the sum
    /// is the zero sequence. Runs entirely on the Zech table:
    /// the sum corresponds to alpha^{i1} (1 + alpha^{(i2-i1) + w*beta_exp}).
    pub fn shift_sum_class(&self, i1: u32, i2: u32, w: u64) -> Option<(u32, u64)> {
        let full = self.table.order();
        if full == 1 {
            return None; // degree-1 factor: u + L^w u = 0
        }
        let arg = (arith::submod(i2 as u64, i1 as u64, full) + (w % full) * (self.beta_exp % full))
            % full;
        let z = self.table.zech_log(arg);
        if z == INFINITY {
            return None;
        }
        let total = (i1 as u64 + z as u64) % full;
        let class = (total % self.classes_t) as u32;
        let shift_raw = (total - class as u64) / self.classes_t;
        let shift = (shift_raw % self.order_e) * self.beta_step_s_inv % self.order_e;
        Some((class, shift))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q4: Poly2 = Poly2::from_mask(0x13);
    const P5: Poly2 = Poly2::from_mask(0x1F);

    #[test]
    fn zech_table_gf16() {
        let ft = FieldTable::build(Q4).unwrap();
        let expect = [4, 8, 14, 1, 10, 13, 9, 2, 7, 5, 12, 11, 6, 3];
        for (y, &tau) in (1u64..15).zip(expect.iter()) {
            assert_eq!(ft.zech_log(y), tau, "tau({y})");
        }
        assert_eq!(ft.zech_log(0), INFINITY);
        assert_eq!(ft.zech_log(15), INFINITY); // 15 = 0 mod 15
    }

    #[test]
    fn zech_table_gf4() {
        let ft = FieldTable::build(Poly2::from_mask(0b111)).unwrap();
        assert_eq!(ft.zech_log(1), 2);
        assert_eq!(ft.zech_log(2), 1);
    }

    #[test]
    fn zech_is_involution() {
        for k in 2..=16u32 {
            let ft = FieldTable::build(poly2::lowest_primitive(k).unwrap()).unwrap();
            let mut seen = vec![false; ft.order() as usize];
            for l in 1..ft.order() {
                let z = ft.zech_log(l);
                assert_ne!(z, INFINITY);
                assert!(!seen[z as usize], "not a permutation at {l}");
                seen[z as usize] = true;
                assert_eq!(ft.zech_log(z as u64) as u64, l, "not an involution at {l}");
            }
        }
    }

    #[test]
    fn build_rejects_non_primitive() {
        assert!(matches!(FieldTable::build(P5), Err(Error::NotPrimitive)));
        // 0x11b is irreducible of degree 8 but has order 51
        assert!(matches!(
            FieldTable::build(Poly2::from_mask(0x11b)),
            Err(Error::NotPrimitive)
        ));
    }

    #[test]
    fn cyclotomic_number_examples() {
        let ft = FieldTable::build(Q4).unwrap();
        assert_eq!(cyclotomic_number(&ft, 1, 0, 0).unwrap(), 14);
        assert_eq!(cyclotomic_number(&ft, 3, 1, 2).unwrap(), 1);
        assert_eq!(cyclotomic_number(&ft, 3, 0, 0).unwrap(), 0);
        assert!(cyclotomic_number(&ft, 4, 0, 0).is_err());
    }

    #[test]
    fn cyclotomic_row_sums() {
        for k in 2..=8u32 {
            let ft = FieldTable::build(poly2::lowest_primitive(k).unwrap()).unwrap();
            let order = ft.order();
            for t in 1..=order {
                if order % t != 0 {
                    continue;
                }
                let e = order / t;
                for i in 0..t {
                    let sum: u64 = (0..t)
                        .map(|j| cyclotomic_number(&ft, t, i, j).unwrap())
                        .sum();
                    let expect = if i == 0 { e - 1 } else { e };
                    assert_eq!(sum, expect, "k={k} t={t} i={i}");
                }
            }
        }
    }

    #[test]
    fn t3_closed_forms() {
        assert_eq!(cyclotomic_t3_even(4, 0, 0).unwrap(), 0); // A
        assert_eq!(cyclotomic_t3_even(4, 0, 1).unwrap(), 2); // B
        assert_eq!(cyclotomic_t3_even(4, 1, 2).unwrap(), 1); // C
        assert!(cyclotomic_t3_even(5, 0, 0).is_err());
        // symmetry
        assert_eq!(
            cyclotomic_t3_even(6, 2, 1).unwrap(),
            cyclotomic_t3_even(6, 1, 2).unwrap()
        );
    }

    #[test]
    fn t3_closed_forms_match_tables() {
        for n in [2u32, 4, 6, 8, 10] {
            let ft = FieldTable::build(poly2::lowest_primitive(n).unwrap()).unwrap();
            for i in 0..3u64 {
                for j in 0..3u64 {
                    assert_eq!(
                        cyclotomic_number(&ft, 3, i, j).unwrap(),
                        cyclotomic_t3_even(n, i as u32, j as u32).unwrap(),
                        "n={n} ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn factor_field_worked_example() {
        // non-primitive factor of degree 4: ambient field is x^4+x+1,
        // beta = alpha^3, three classes of order 5
        let ff = FactorField::new(P5).unwrap();
        assert_eq!(ff.table().modulus(), Q4);
        assert_eq!(ff.beta_exp(), 3);
        assert_eq!(ff.order_e(), 5);
        assert_eq!(ff.classes_t(), 3);
        assert_eq!(ff.sequence(0), vec![1, 0, 0, 0, 1]);
        assert_eq!(ff.sequence(1), vec![0, 1, 1, 1, 1]);
        assert_eq!(ff.sequence(2), vec![0, 0, 1, 0, 1]);
        // primitive factor: field is the polynomial itself, beta = alpha
        let fq = FactorField::new(Q4).unwrap();
        assert_eq!(fq.beta_exp(), 1);
        assert_eq!(
            fq.sequence(0),
            vec![1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 1, 0, 1, 1, 1]
        );
    }

    #[test]
    fn phi_images() {
        let ff = FactorField::new(P5).unwrap();
        assert_eq!(ff.phi(0), 0b0001); // (1,0,0,0)
        assert_eq!(ff.phi(7), 0b0111); // (1,1,1,0)
        assert_eq!(ff.phi(13), 0b1101); // (1,0,1,1)
    }

    #[test]
    fn sequences_satisfy_recursion() {
        // every class sequence must obey the linear recursion of g,
        // including factors whose root is not alpha^t itself
        let mut checked_nontrivial_beta = false;
        for k in 2..=8u32 {
            for mask in ((1u64 << k) + 1..1u64 << (k + 1)).step_by(2) {
                let g = Poly2::from_mask(mask);
                if !poly2::is_irreducible(g).unwrap() {
                    continue;
                }
                let ff = FactorField::new(g).unwrap();
                if ff.beta_step_s > 1 {
                    checked_nontrivial_beta = true;
                }
                for i in 0..ff.classes_t() as u32 {
                    let seq = ff.sequence(i);
                    let e = seq.len();
                    for l in 0..e {
                        let mut next = 0u8;
                        for bit in 0..k {
                            if mask >> bit & 1 == 1 {
                                next ^= seq[(l + bit as usize) % e];
                            }
                        }
                        assert_eq!(next, seq[(l + k as usize) % e], "{g} class {i} at {l}");
                    }
                }
            }
        }
        assert!(checked_nontrivial_beta, "no factor with beta != alpha^t seen");
    }
}
