//! Dense polynomials over a prime field F_p, used only to pick and validate
//! the defining modulus of an extension field.
//!
//! Coefficients are stored low-to-high degree; the zero polynomial is the
//! empty vector.

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Remainder of `a` modulo `f` (f nonzero).
fn rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    trim(&mut a);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while a.len() > df {
        let top = a.len() - 1;
        let c = a[top] * lead_inv % p;
        let shift = top - df;
        for (i, &fi) in f.iter().enumerate() {
            let sub = c * fi % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(&mut a);
    }
    a
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    rem(out, f, p)
}

fn pow_poly_mod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(vec![1], f, p);
    let mut b = rem(base.to_vec(), f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out: Vec<u64> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: a monic `f` of degree n is irreducible over F_p iff
/// x^{p^n} = x mod f and gcd(x^{p^{n/r}} - x, f) = 1 for each prime r | n.
/// Equivalently, f has no root in any proper subextension F_{p^{n/r}}.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    if f.len() < 2 || *f.last().unwrap() != 1 || f.iter().any(|&c| c >= p) {
        return false;
    }
    let n = (f.len() - 1) as u64;
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    // frob[j] = x^{p^j} mod f for j = 0..=n
    let mut frob = Vec::with_capacity(n as usize + 1);
    frob.push(rem(x.clone(), f, p));
    for j in 1..=n as usize {
        let next = pow_poly_mod(&frob[j - 1], p, f, p);
        frob.push(next);
    }
    if sub(&frob[n as usize], &x, p) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_factors(n) {
        let h = sub(&frob[(n / r) as usize], &x, p);
        let g = gcd(h, f.to_vec(), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Monic degree-`n` polynomials over F_p in lexicographic order of their
/// coefficient sequences (constant term compared first), filtered to the
/// irreducible ones.
pub fn irreducible_polynomials(p: u64, n: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = p.checked_pow(n).unwrap_or(u64::MAX);
    // c_0 = 0 means x | f, so for n >= 2 the search starts at c_0 = 1
    let first = if n >= 2 { total / p } else { 0 };
    (first..total).filter_map(move |t| {
        // t's most significant base-p digit is c_0
        let mut coeffs = vec![0u64; n as usize + 1];
        let mut rest = t;
        for i in (0..n as usize).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs[n as usize] = 1;
        if is_irreducible(&coeffs, p) {
            Some(coeffs.into_iter().map(|c| c as u32).collect())
        } else {
            None
        }
    })
}
