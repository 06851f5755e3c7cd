//! Square bit matrices over GF(2), one u64 word per row.
//!
//! Sized for the state bases in this crate (dimension <= 63). Inversion is
//! Gauss-Jordan with partial pivoting; row-vector-times-matrix is an XOR of
//! selected rows.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<u64>,
    size: u32,
}

impl BitMatrix {
    pub fn from_rows(rows: Vec<u64>) -> Result<BitMatrix> {
        let size = rows.len() as u32;
        if size > 63 {
            return Err(Error::DegreeTooLarge(size, 63));
        }
        let mask = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
        if rows.iter().any(|&r| r & !mask != 0) {
            return Err(Error::Internal("row wider than matrix".into()));
        }
        Ok(BitMatrix { rows, size })
    }

    pub fn identity(size: u32) -> BitMatrix {
        BitMatrix {
            rows: (0..size).map(|i| 1u64 << i).collect(),
            size,
        }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Row vector times matrix: XOR of the rows selected by the bits of `v`.
    pub fn mul_row_vec(&self, mut v: u64) -> u64 {
        let mut acc = 0u64;
        let mut i = 0;
        while v != 0 {
            if v & 1 == 1 {
                acc ^= self.rows[i];
            }
            v >>= 1;
            i += 1;
        }
        acc
    }

    pub fn matmul(&self, other: &BitMatrix) -> BitMatrix {
        debug_assert_eq!(self.size, other.size);
        BitMatrix {
            rows: self.rows.iter().map(|&r| other.mul_row_vec(r)).collect(),
            size: self.size,
        }
    }

    /// Inverse over GF(2), or None when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.size as usize;
        let mut a = self.rows.clone();
        let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        let mut pivot_row = 0;
        for col in 0..n {
            let hit = (pivot_row..n).find(|&i| a[i] >> col & 1 == 1)?;
            a.swap(pivot_row, hit);
            inv.swap(pivot_row, hit);
            for i in 0..n {
                if i != pivot_row && a[i] >> col & 1 == 1 {
                    a[i] ^= a[pivot_row];
                    inv[i] ^= inv[pivot_row];
                }
            }
            pivot_row += 1;
        }
        Some(BitMatrix {
            rows: inv,
            size: self.size,
        })
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.size, self.size)?;
        for r in &self.rows {
            for j in 0..self.size {
                write!(f, "{}", r >> j & 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
