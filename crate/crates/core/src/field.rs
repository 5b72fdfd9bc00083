//! Table-driven arithmetic in F_{p^n} with n = 2m, together with the
//! subfield F_q (q = p^m) and the unit circle U_{q+1} = {x : x^{q+1} = 1}.
//!
//! Elements are encoded by the integer whose base-p digits are the
//! coefficients of the element in the polynomial basis 1, x, ..., x^{n-1}.
//! Index 0 is zero, indices 0..p are the prime field. Multiplication goes
//! through discrete log / antilog tables built from the canonical generator.

use crate::error::{Error, Result};
use crate::poly::{self, prime_factors};

/// Largest supported field order.
pub const ORDER_CAP: u64 = 1 << 24;

const NO_LOG: u32 = u32::MAX;

/// One element of a field built by [`FieldCtx`], in canonical index form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn idx(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks the (p, m) pair and returns the order p^{2m}.
pub fn checked_order(p: u64, m: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    let n = 2 * m;
    match p.checked_pow(n) {
        Some(order) if order <= ORDER_CAP => Ok(order),
        _ => Err(Error::OrderCap { p, n }),
    }
}

/// Arithmetic context for F_{p^{2m}}. Immutable once built.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    n: u32,
    q: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: FieldElem,
    log: Vec<u32>,
    exp: Vec<u32>,
    // digit-wise addition / negation of half-width (m digit) vectors, odd p only
    half_add: Vec<u32>,
    half_neg: Vec<u32>,
    unit_circle: Vec<FieldElem>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("order", &self.order)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish_non_exhaustive()
    }
}

impl FieldCtx {
    /// Builds F_{p^{2m}} over the lexicographically smallest monic
    /// irreducible modulus (constant coefficient compared first).
    pub fn build(p: u32, m: u32) -> Result<FieldCtx> {
        checked_order(p as u64, m)?;
        let n = 2 * m;
        let modulus = poly::irreducible_polynomials(p as u64, n)
            .next()
            .ok_or(Error::NoIrreducible { p: p as u64, n })?;
        Self::with_modulus(p, m, &modulus)
    }

    /// Builds F_{p^{2m}} over a caller-supplied modulus, given low-to-high
    /// with the leading 1 included.
    pub fn with_modulus(p: u32, m: u32, modulus: &[u32]) -> Result<FieldCtx> {
        let order = checked_order(p as u64, m)? as u32;
        let n = 2 * m;
        let coeffs: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
        if modulus.len() != n as usize + 1 || !poly::is_irreducible(&coeffs, p as u64) {
            return Err(Error::BadModulus(modulus.to_vec()));
        }
        let q = p.pow(m);

        let (half_add, half_neg) = if p == 2 {
            (Vec::new(), Vec::new())
        } else {
            half_tables(p, m)
        };

        let mut ctx = FieldCtx {
            p,
            m,
            n,
            q,
            order,
            modulus: modulus.to_vec(),
            generator: FieldElem::ONE,
            log: Vec::new(),
            exp: Vec::new(),
            half_add,
            half_neg,
            unit_circle: Vec::new(),
        };
        ctx.generator = ctx.find_generator()?;
        ctx.fill_log_tables()?;

        let mut circle: Vec<FieldElem> = (0..=q)
            .map(|j| FieldElem(ctx.exp[(j as u64 * (q as u64 - 1)) as usize % ctx.exp.len()]))
            .collect();
        circle.sort_unstable();
        circle.dedup();
        if circle.len() != q as usize + 1 {
            return Err(Error::Internal(format!(
                "unit circle has {} elements, expected {}",
                circle.len(),
                q + 1
            )));
        }
        ctx.unit_circle = circle;
        Ok(ctx)
    }

    fn digits(&self, idx: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut rest = idx;
        for _ in 0..self.n {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    fn index_of_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    // Schoolbook product reduced modulo the modulus. Only used while the
    // log tables do not exist yet.
    fn slow_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let n = self.n as usize;
        let mut prod = vec![0u64; 2 * n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
            }
        }
        for top in (n..2 * n).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            // x^n = -(f_0 + ... + f_{n-1} x^{n-1})
            for i in 0..n {
                let sub = c * self.modulus[i] as u64 % p;
                prod[top - n + i] = (prod[top - n + i] + p - sub) % p;
            }
        }
        prod.truncate(n);
        prod.into_iter().map(|c| c as u32).collect()
    }

    fn slow_pow(&self, base: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc = self.digits(1);
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(&acc, &b);
            }
            b = self.slow_mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Smallest index whose multiplicative order is p^n - 1.
    fn find_generator(&self) -> Result<FieldElem> {
        let group = self.order as u64 - 1;
        let factors = prime_factors(group);
        let one = self.digits(1);
        for idx in 1..self.order {
            let cand = self.digits(idx);
            if factors
                .iter()
                .all(|&r| self.slow_pow(&cand, group / r) != one)
            {
                return Ok(FieldElem(idx));
            }
        }
        Err(Error::Internal(
            "multiplicative group has no generator".into(),
        ))
    }

    fn fill_log_tables(&mut self) -> Result<()> {
        let group = self.order as usize - 1;
        let mut log = vec![NO_LOG; self.order as usize];
        let mut exp = Vec::with_capacity(group);
        let mut cur = 1u32;
        for i in 0..group {
            if cur == 0 || log[cur as usize] != NO_LOG {
                return Err(Error::Internal(format!(
                    "generator power {i} repeats element {cur}"
                )));
            }
            log[cur as usize] = i as u32;
            exp.push(cur);
            cur = self.mul_by_generator(cur);
        }
        if cur != 1 {
            return Err(Error::Internal("generator order exceeds p^n - 1".into()));
        }
        self.log = log;
        self.exp = exp;
        Ok(())
    }

    fn mul_by_generator(&self, a: u32) -> u32 {
        if self.p == 2 {
            let n = self.n;
            let fbits = self.index_of_digits(&self.modulus[..n as usize]);
            let mut shifted = a;
            let mut acc = 0u32;
            let mut g = self.generator.0;
            while g != 0 {
                if g & 1 == 1 {
                    acc ^= shifted;
                }
                shifted <<= 1;
                if shifted >> n & 1 == 1 {
                    shifted ^= (1 << n) | fbits;
                }
                g >>= 1;
            }
            acc
        } else {
            let g = self.digits(self.generator.0);
            self.index_of_digits(&self.slow_mul(&self.digits(a), &g))
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// q = p^m, the size of the subfield.
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The modulus as low-to-high coefficients, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    /// Element with the given index, if it is in range.
    pub fn element(&self, idx: u32) -> Option<FieldElem> {
        (idx < self.order).then_some(FieldElem(idx))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (1..self.order).map(FieldElem)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> FieldElem {
        FieldElem(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn is_in_prime_field(&self, x: FieldElem) -> bool {
        x.0 < self.p
    }

    /// Discrete log with respect to the canonical generator.
    pub fn log(&self, x: FieldElem) -> Option<u32> {
        let l = self.log[x.0 as usize];
        (l != NO_LOG).then_some(l)
    }

    /// generator^e
    pub fn exp(&self, e: u64) -> FieldElem {
        FieldElem(self.exp[(e % self.exp.len() as u64) as usize])
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let q = self.q;
        let (alo, ahi) = (a.0 % q, a.0 / q);
        let (blo, bhi) = (b.0 % q, b.0 / q);
        let lo = self.half_add[(alo * q + blo) as usize];
        let hi = self.half_add[(ahi * q + bhi) as usize];
        FieldElem(lo + q * hi)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        let q = self.q;
        FieldElem(self.half_neg[(a.0 % q) as usize] + q * self.half_neg[(a.0 / q) as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let group = self.order - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElem(self.exp[(if s >= group { s - group } else { s }) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let l = self.log[a.0 as usize];
        Ok(FieldElem(
            self.exp[((self.order - 1 - l) % (self.order - 1)) as usize],
        ))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// x^e for any integer e. 0^0 is 1; 0^e is 0 for e > 0 and an error
    /// for e < 0.
    pub fn pow(&self, x: FieldElem, e: i64) -> Result<FieldElem> {
        if x.0 == 0 {
            return match e {
                0 => Ok(FieldElem::ONE),
                e if e > 0 => Ok(FieldElem::ZERO),
                _ => Err(Error::ZeroInverse),
            };
        }
        let group = (self.order - 1) as i128;
        let l = self.log[x.0 as usize] as i128;
        let r = (l * e as i128).rem_euclid(group);
        Ok(FieldElem(self.exp[r as usize]))
    }

    /// x^e for a nonnegative exponent; total.
    #[inline]
    pub fn pow_u(&self, x: FieldElem, e: u64) -> FieldElem {
        if x.0 == 0 {
            return if e == 0 {
                FieldElem::ONE
            } else {
                FieldElem::ZERO
            };
        }
        let group = (self.order - 1) as u64;
        let r = (self.log[x.0 as usize] as u64 * (e % group)) % group;
        FieldElem(self.exp[r as usize])
    }

    /// The q-power Frobenius x -> x^q.
    pub fn frobenius_q(&self, x: FieldElem) -> FieldElem {
        self.pow_u(x, self.q as u64)
    }

    /// x^{q+1}, the norm down to F_q.
    pub fn norm(&self, x: FieldElem) -> FieldElem {
        self.pow_u(x, self.q as u64 + 1)
    }

    pub fn is_in_subfield(&self, x: FieldElem) -> bool {
        x.0 == 0 || self.log[x.0 as usize].is_multiple_of(self.q + 1)
    }

    pub fn is_on_unit_circle(&self, x: FieldElem) -> bool {
        x.0 != 0 && self.log[x.0 as usize].is_multiple_of(self.q - 1)
    }

    /// Elements of F_q, in index order.
    pub fn subfield_elements(&self) -> Vec<FieldElem> {
        self.elements()
            .filter(|&x| self.is_in_subfield(x))
            .collect()
    }

    /// U_{q+1} in index order.
    pub fn unit_circle(&self) -> &[FieldElem] {
        &self.unit_circle
    }

    /// Tr_1^m(x) = x + x^p + ... + x^{p^{m-1}} for x in F_q.
    pub fn subfield_trace(&self, x: FieldElem) -> Result<FieldElem> {
        if !self.is_in_subfield(x) {
            return Err(Error::NotInSubfield(x.0));
        }
        let mut acc = FieldElem::ZERO;
        let mut t = x;
        for _ in 0..self.m {
            acc = self.add(acc, t);
            t = self.pow_u(t, self.p as u64);
        }
        debug_assert!(self.is_in_prime_field(acc));
        Ok(acc)
    }

    /// Quadratic character on F_q^*: true iff x^{(q-1)/2} = 1.
    pub fn is_square_subfield(&self, x: FieldElem) -> Result<bool> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if x.is_zero() {
            return Err(Error::ZeroArgument("x"));
        }
        if !self.is_in_subfield(x) {
            return Err(Error::NotInSubfield(x.0));
        }
        Ok(self.pow_u(x, (self.q as u64 - 1) / 2) == FieldElem::ONE)
    }

    /// w = g^{(p^n - 1)/3}.
    pub fn primitive_cube_root(&self) -> Result<FieldElem> {
        if self.p == 3 {
            return Err(Error::NoCubeRoot);
        }
        Ok(self.exp((self.order as u64 - 1) / 3))
    }
}

fn half_tables(p: u32, m: u32) -> (Vec<u32>, Vec<u32>) {
    let q = p.pow(m);
    let digits = |mut v: u32| {
        let mut out = [0u32; 32];
        for d in out.iter_mut().take(m as usize) {
            *d = v % p;
            v /= p;
        }
        out
    };
    let combine = |d: &[u32; 32]| d[..m as usize].iter().rev().fold(0, |acc, &c| acc * p + c);
    let all: Vec<[u32; 32]> = (0..q).map(digits).collect();
    let mut add = Vec::with_capacity((q * q) as usize);
    for a in &all {
        for b in &all {
            let mut s = [0u32; 32];
            for i in 0..m as usize {
                s[i] = (a[i] + b[i]) % p;
            }
            add.push(combine(&s));
        }
    }
    let neg = all
        .iter()
        .map(|a| {
            let mut s = [0u32; 32];
            for i in 0..m as usize {
                s[i] = (p - a[i]) % p;
            }
            combine(&s)
        })
        .collect();
    (add, neg)
}
