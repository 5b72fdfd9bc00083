#![allow(dead_code)]

//! Schoolbook arithmetic over the same polynomial basis as `FieldCtx`,
//! sharing nothing with it but the modulus. Used as an independent oracle.

use powermap_spectra::{FieldCtx, FieldElem};

pub struct NaiveField {
    pub p: u64,
    pub n: usize,
    pub order: u64,
    modulus: Vec<u64>,
}

impl NaiveField {
    pub fn like(ctx: &FieldCtx) -> NaiveField {
        NaiveField {
            p: ctx.p() as u64,
            n: ctx.n() as usize,
            order: ctx.order() as u64,
            modulus: ctx.modulus().iter().map(|&c| c as u64).collect(),
        }
    }

    fn digits(&self, mut v: u64) -> Vec<u64> {
        (0..self.n)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.undigits(&s)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let s: Vec<u64> = self
            .digits(a)
            .iter()
            .map(|u| (self.p - u) % self.p)
            .collect();
        self.undigits(&s)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        let n = self.n;
        let mut prod = vec![0u64; 2 * n];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % self.p;
            }
        }
        for top in (n..2 * n).rev() {
            let c = prod[top];
            prod[top] = 0;
            for i in 0..n {
                prod[top - n + i] =
                    (prod[top - n + i] + self.p * self.p - c * self.modulus[i]) % self.p;
            }
        }
        self.undigits(&prod[..n])
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// x^d for every x, via square-and-multiply.
    pub fn power_table(&self, d: u64) -> Vec<u64> {
        (0..self.order).map(|x| self.pow(x, d)).collect()
    }

    /// delta(1, b) for every b by direct enumeration.
    pub fn derivative_row(&self, table: &[u64]) -> Vec<u64> {
        let mut row = vec![0u64; self.order as usize];
        for x in 0..self.order {
            let b = self.sub(table[self.add(x, 1) as usize], table[x as usize]);
            row[b as usize] += 1;
        }
        row
    }
}

/// Histogram of a row as sorted (multiplicity, count) pairs.
pub fn histogram(row: &[u64]) -> Vec<(u64, u64)> {
    let mut map = std::collections::BTreeMap::new();
    for &v in row {
        *map.entry(v).or_insert(0u64) += 1;
    }
    map.into_iter().collect()
}

pub fn elem(ctx: &FieldCtx, idx: u64) -> FieldElem {
    ctx.element(idx as u32).unwrap()
}
