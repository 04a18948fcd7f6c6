//! Prime fields and matrix rank.
//!
//! Ranks over GF(2) use packed bit rows; other primes use dense residue rows.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// The field of integers modulo a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: 2 }
    }
}

impl PrimeField {
    pub const GF2: PrimeField = PrimeField { p: 2 };

    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) && p < (1 << 31) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse by Fermat's little theorem. `a` must be non-zero.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Image of a signed integer.
    pub fn from_i64(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Rank of a dense matrix given as rows of residues in `0..p`.
    pub fn rank(&self, rows: &[Vec<u32>]) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        if self.p == 2 {
            let mut m = BitMatrix::new(cols);
            for row in rows {
                m.push_row(row.iter().map(|&x| x & 1 == 1));
            }
            m.rank()
        } else {
            dense_rank(self, rows.to_vec(), cols)
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn dense_rank(field: &PrimeField, mut rows: Vec<Vec<u32>>, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// A GF(2) matrix stored as packed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix {
            cols,
            words: cols.div_ceil(64).max(1),
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, bits: impl IntoIterator<Item = bool>) {
        let mut row = vec![0u64; self.words];
        for (i, b) in bits.into_iter().enumerate().take(self.cols) {
            if b {
                row[i / 64] |= 1 << (i % 64);
            }
        }
        self.rows.push(row);
    }

    /// Appends a row with ones at the given column indices.
    pub fn push_sparse_row(&mut self, ones: impl IntoIterator<Item = usize>) {
        let mut row = vec![0u64; self.words];
        for i in ones {
            debug_assert!(i < self.cols);
            row[i / 64] ^= 1 << (i % 64);
        }
        self.rows.push(row);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r][c / 64] >> (c % 64) & 1 == 1
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for row in tail.iter_mut() {
                if row[w] & bit != 0 {
                    for (x, y) in row.iter_mut().zip(pivot_row) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}
