//! Exhaustive differential and boomerang rows of power maps x^d over
//! F_{p^n}, their spectra, and naive oracles for arbitrary functions.
//!
//! For a power map the whole DDT (resp. BCT) is determined by its a = 1 row,
//! since delta_F(a, b) = delta_F(1, b / a^d).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx, FieldElem};

/// Fields larger than this are refused by the O(p^{2n}) oracles.
pub const ORACLE_CAP: u32 = 1 << 12;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The map F(x) = x^{k(q-1)} over F_{q^2}, q = p^m, with gcd(k, q+1) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowerMapSpec {
    p: u32,
    m: u32,
    q: u64,
    k: u64,
    d: u64,
}

impl PowerMapSpec {
    /// Validates gcd(k, q+1) = 1 and stores k reduced mod q+1.
    pub fn new(p: u32, m: u32, k: u64) -> Result<PowerMapSpec> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|q| q.checked_mul(*q).is_some())
            .ok_or(Error::OrderCap {
                p: p as u64,
                n: 2 * m,
            })?;
        let modulus = q + 1;
        let g = gcd(k % modulus, modulus);
        if g != 1 {
            return Err(Error::NotCoprime { k, modulus, gcd: g });
        }
        let k = k % modulus;
        Ok(PowerMapSpec {
            p,
            m,
            q,
            k,
            d: k * (q - 1),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        2 * self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// k reduced modulo q+1.
    pub fn k(&self) -> u64 {
        self.k
    }

    /// The exponent d = k(q-1), already reduced mod q^2 - 1.
    pub fn exponent(&self) -> u64 {
        self.d
    }

    /// (p, m) = (2, 1) makes F linear and the q-2 label vacuous; q = 3
    /// collapses the spectrum to {1: 9} with no entry equal to 2.
    pub fn is_degenerate(&self) -> bool {
        self.q <= 3
    }

    pub fn check_field(&self, ctx: &FieldCtx) -> Result<()> {
        if ctx.p() != self.p || ctx.m() != self.m {
            return Err(Error::FieldMismatch {
                map_p: self.p,
                map_n: self.n(),
                field_p: ctx.p(),
                field_n: ctx.n(),
            });
        }
        Ok(())
    }

    /// F(x) for every x in index order.
    pub fn value_table(&self, ctx: &FieldCtx) -> Result<Vec<FieldElem>> {
        self.check_field(ctx)?;
        Ok(ctx.elements().map(|x| ctx.pow_u(x, self.d)).collect())
    }
}

impl fmt::Display for PowerMapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x^{} over F_{}^{} (k = {})",
            self.d,
            self.p,
            self.n(),
            self.k
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    Differential,
    Boomerang,
}

impl SpectrumKind {
    pub fn name(self) -> &'static str {
        match self {
            SpectrumKind::Differential => "differential",
            SpectrumKind::Boomerang => "boomerang",
        }
    }
}

/// Sparse multiset {multiplicity -> number of b hitting it}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    kind: SpectrumKind,
    entries: BTreeMap<u64, u64>,
}

impl SpectrumTable {
    pub fn new(kind: SpectrumKind) -> SpectrumTable {
        SpectrumTable {
            kind,
            entries: BTreeMap::new(),
        }
    }

    /// Histogram of a row of counts.
    pub fn from_row(kind: SpectrumKind, row: &[u64]) -> SpectrumTable {
        let mut table = SpectrumTable::new(kind);
        for &v in row {
            table.add(v, 1);
        }
        table
    }

    /// Strict constructor for canonical pair lists: multiplicities must be
    /// strictly increasing and counts positive.
    pub fn from_pairs(kind: SpectrumKind, pairs: &[(u64, u64)]) -> Result<SpectrumTable> {
        let mut table = SpectrumTable::new(kind);
        let mut prev = None;
        for &(mult, count) in pairs {
            if count == 0 {
                return Err(Error::InvalidSpectrum(format!(
                    "zero count at multiplicity {mult}"
                )));
            }
            if prev.is_some_and(|p| p >= mult) {
                return Err(Error::InvalidSpectrum(format!(
                    "multiplicity {mult} out of order or repeated"
                )));
            }
            prev = Some(mult);
            table.entries.insert(mult, count);
        }
        Ok(table)
    }

    /// Adds `count` b-values at multiplicity `mult`; colliding labels merge.
    pub fn add(&mut self, mult: u64, count: u64) {
        if count > 0 {
            *self.entries.entry(mult).or_insert(0) += count;
        }
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn count(&self, mult: u64) -> u64 {
        self.entries.get(&mult).copied().unwrap_or(0)
    }

    /// (multiplicity, count) pairs sorted by multiplicity.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.entries.iter().map(|(&i, &c)| (i, c)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of counts.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Sum of multiplicity times count.
    pub fn weighted_total(&self) -> u64 {
        self.entries.iter().map(|(&i, &c)| i * c).sum()
    }

    pub fn max_multiplicity(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    /// Checks the totals against a field of `order` elements.
    pub fn validate(&self, order: u64) -> Result<()> {
        if self.entries.values().any(|&c| c == 0) {
            return Err(Error::InvalidSpectrum("zero count present".into()));
        }
        match self.kind {
            SpectrumKind::Differential => {
                if self.total() != order || self.weighted_total() != order {
                    return Err(Error::InvalidSpectrum(format!(
                        "differential totals ({}, {}) differ from field order {order}",
                        self.total(),
                        self.weighted_total()
                    )));
                }
            }
            SpectrumKind::Boomerang => {
                if self.total() != order - 1 {
                    return Err(Error::InvalidSpectrum(format!(
                        "boomerang total {} differs from {}",
                        self.total(),
                        order - 1
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SpectrumTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (mult, count)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{mult}:{count}")?;
        }
        write!(f, "}}")
    }
}

fn check_table(ctx: &FieldCtx, table: &[FieldElem]) -> Result<()> {
    if table.len() != ctx.order() as usize {
        return Err(Error::TableLength {
            got: table.len(),
            expected: ctx.order() as usize,
        });
    }
    Ok(())
}

/// Counts of x with F(x+a) - F(x) = b, indexed by b, for an arbitrary
/// value table.
pub fn derivative_row(ctx: &FieldCtx, table: &[FieldElem], a: FieldElem) -> Result<Vec<u64>> {
    check_table(ctx, table)?;
    let mut row = vec![0u64; ctx.order() as usize];
    for x in ctx.elements() {
        let fx = table[x.idx() as usize];
        let fxa = table[ctx.add(x, a).idx() as usize];
        row[ctx.sub(fxa, fx).idx() as usize] += 1;
    }
    Ok(row)
}

/// delta_F(1, b) for every b in index order.
pub fn derivative_histogram(ctx: &FieldCtx, map: &PowerMapSpec) -> Result<Vec<u64>> {
    let table = map.value_table(ctx)?;
    derivative_row(ctx, &table, FieldElem::ONE)
}

pub fn differential_spectrum(ctx: &FieldCtx, map: &PowerMapSpec) -> Result<SpectrumTable> {
    let row = derivative_histogram(ctx, map)?;
    Ok(SpectrumTable::from_row(SpectrumKind::Differential, &row))
}

/// delta_F(a, b) looked up in a precomputed a = 1 row as delta_F(1, b a^{-d}).
pub fn ddt_entry_in_row(
    ctx: &FieldCtx,
    map: &PowerMapSpec,
    row: &[u64],
    a: FieldElem,
    b: FieldElem,
) -> Result<u64> {
    if a.is_zero() {
        return Err(Error::ZeroArgument("a"));
    }
    map.check_field(ctx)?;
    let ad = ctx.pow_u(a, map.exponent());
    let reduced = ctx.div(b, ad)?;
    Ok(row[reduced.idx() as usize])
}

pub fn ddt_entry(ctx: &FieldCtx, map: &PowerMapSpec, a: FieldElem, b: FieldElem) -> Result<u64> {
    if a.is_zero() {
        return Err(Error::ZeroArgument("a"));
    }
    let row = derivative_histogram(ctx, map)?;
    ddt_entry_in_row(ctx, map, &row, a, b)
}

/// Direct count of {x : F(x+a) - F(x) = b}.
pub fn ddt_oracle_entry(
    ctx: &FieldCtx,
    table: &[FieldElem],
    a: FieldElem,
    b: FieldElem,
) -> Result<u64> {
    check_table(ctx, table)?;
    Ok(ctx
        .elements()
        .filter(|&x| {
            let fxa = table[ctx.add(x, a).idx() as usize];
            ctx.sub(fxa, table[x.idx() as usize]) == b
        })
        .count() as u64)
}

/// beta_F(a, b) for every b != 0, slot i holding b = i + 1.
///
/// The two-equation boomerang system is equivalent to F(x) - F(y) = b
/// together with D_a F(x) = D_a F(y), so x and y are paired only within
/// the fibres of the derivative.
pub fn boomerang_row(ctx: &FieldCtx, table: &[FieldElem], a: FieldElem) -> Result<Vec<u64>> {
    check_table(ctx, table)?;
    let order = ctx.order() as usize;
    let deriv: Vec<u32> = ctx
        .elements()
        .map(|x| {
            let fxa = table[ctx.add(x, a).idx() as usize];
            ctx.sub(fxa, table[x.idx() as usize]).idx()
        })
        .collect();

    // counting sort of x by derivative value
    let mut start = vec![0usize; order + 1];
    for &c in &deriv {
        start[c as usize + 1] += 1;
    }
    for i in 0..order {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut members = vec![0u32; order];
    for (x, &c) in deriv.iter().enumerate() {
        members[fill[c as usize]] = x as u32;
        fill[c as usize] += 1;
    }

    let mut row = vec![0u64; order - 1];
    for c in 0..order {
        let class = &members[start[c]..start[c + 1]];
        if class.len() < 2 {
            continue;
        }
        for &x in class {
            let fx = table[x as usize];
            for &y in class {
                if x == y {
                    continue;
                }
                let b = ctx.sub(fx, table[y as usize]).idx();
                if b != 0 {
                    row[b as usize - 1] += 1;
                }
            }
        }
    }
    Ok(row)
}

/// beta_F(1, b) for b = 1, ..., p^n - 1 (slot i holds b = i + 1).
pub fn boomerang_histogram(ctx: &FieldCtx, map: &PowerMapSpec) -> Result<Vec<u64>> {
    let table = map.value_table(ctx)?;
    boomerang_row(ctx, &table, FieldElem::ONE)
}

pub fn boomerang_spectrum(ctx: &FieldCtx, map: &PowerMapSpec) -> Result<SpectrumTable> {
    let row = boomerang_histogram(ctx, map)?;
    Ok(SpectrumTable::from_row(SpectrumKind::Boomerang, &row))
}

fn check_oracle(ctx: &FieldCtx, table: &[FieldElem]) -> Result<()> {
    check_table(ctx, table)?;
    if ctx.order() > ORACLE_CAP {
        return Err(Error::OracleCap(ctx.order()));
    }
    Ok(())
}

/// Number of ordered pairs (x, y) with F(x) - F(y) = b and
/// F(x+a) - F(y+a) = b, by double loop.
pub fn bct_oracle_entry(
    ctx: &FieldCtx,
    table: &[FieldElem],
    a: FieldElem,
    b: FieldElem,
) -> Result<u64> {
    check_oracle(ctx, table)?;
    if a.is_zero() {
        return Err(Error::ZeroArgument("a"));
    }
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    let shifted: Vec<FieldElem> = ctx
        .elements()
        .map(|x| table[ctx.add(x, a).idx() as usize])
        .collect();
    let mut count = 0;
    for x in ctx.elements() {
        let (fx, fxa) = (table[x.idx() as usize], shifted[x.idx() as usize]);
        for y in ctx.elements() {
            if ctx.sub(fx, table[y.idx() as usize]) == b
                && ctx.sub(fxa, shifted[y.idx() as usize]) == b
            {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The whole a-row of the BCT by the same double loop as
/// [`bct_oracle_entry`], accumulating every b in one pass.
pub fn bct_oracle_row(ctx: &FieldCtx, table: &[FieldElem], a: FieldElem) -> Result<Vec<u64>> {
    check_oracle(ctx, table)?;
    if a.is_zero() {
        return Err(Error::ZeroArgument("a"));
    }
    let shifted: Vec<FieldElem> = ctx
        .elements()
        .map(|x| table[ctx.add(x, a).idx() as usize])
        .collect();
    let mut row = vec![0u64; ctx.order() as usize - 1];
    for x in ctx.elements() {
        let (fx, fxa) = (table[x.idx() as usize], shifted[x.idx() as usize]);
        for y in ctx.elements() {
            let b = ctx.sub(fx, table[y.idx() as usize]);
            if !b.is_zero() && ctx.sub(fxa, shifted[y.idx() as usize]) == b {
                row[b.idx() as usize - 1] += 1;
            }
        }
    }
    Ok(row)
}

fn uniformity(spectrum: &SpectrumTable, kind: SpectrumKind) -> Result<u64> {
    if spectrum.kind() != kind {
        return Err(Error::WrongKind {
            expected: kind.name(),
            got: spectrum.kind().name(),
        });
    }
    spectrum.max_multiplicity().ok_or(Error::EmptySpectrum)
}

pub fn differential_uniformity(spectrum: &SpectrumTable) -> Result<u64> {
    uniformity(spectrum, SpectrumKind::Differential)
}

pub fn boomerang_uniformity(spectrum: &SpectrumTable) -> Result<u64> {
    uniformity(spectrum, SpectrumKind::Boomerang)
}

/// max of delta(1, b) over b outside the prime field.
pub fn max_outside_prime_field(ctx: &FieldCtx, row: &[u64]) -> u64 {
    row.iter()
        .enumerate()
        .skip(ctx.p() as usize)
        .map(|(_, &v)| v)
        .max()
        .unwrap_or(0)
}

/// Locally-APN test on an a = 1 derivative row.
pub fn locally_apn_row(ctx: &FieldCtx, row: &[u64]) -> bool {
    max_outside_prime_field(ctx, row) == 2
}

pub fn locally_apn(ctx: &FieldCtx, map: &PowerMapSpec) -> Result<bool> {
    let row = derivative_histogram(ctx, map)?;
    Ok(locally_apn_row(ctx, &row))
}
