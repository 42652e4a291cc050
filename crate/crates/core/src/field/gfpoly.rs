//! Dense univariate polynomials over GF(p), stored low degree first.
//!
//! Only what the extension-field code needs: reduction, multiplication
//! modulo a monic polynomial, gcd, and the irreducibility test.

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn mul_mod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod_p(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_p(acc, base, p);
        }
        base = mul_mod_p(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod_p(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod_p(a, p - 2, p))
    }
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod_p(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p).expect("divisor has nonzero leading coefficient");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = mul_mod_p(*r.last().unwrap(), lead_inv, p);
        q[shift] = c;
        for (j, &y) in b.iter().enumerate() {
            let t = mul_mod_p(c, y, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    div_rem(a, b, p).1
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), modulus, p)
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// `x^(p^i) mod modulus` for i = 1..=max_i, by repeated p-th powering.
fn frobenius_powers(modulus: &[u64], p: u64, max_i: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(max_i);
    let mut cur = rem(&[0, 1], modulus, p);
    for _ in 0..max_i {
        cur = pow_mod(&cur, p, modulus, p);
        out.push(cur.clone());
    }
    out
}

pub(crate) fn pow_mod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], modulus, p);
    let mut b = rem(base, modulus, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, modulus, p);
        }
        b = mul_mod(&b, &b, modulus, p);
        exp >>= 1;
    }
    acc
}

/// Irreducibility of a monic polynomial of degree k over GF(p): no factor of
/// degree i <= k/2, i.e. gcd(f, x^(p^i) - x) = 1 for each such i.
pub(crate) fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let k = modulus.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    for frob in frobenius_powers(modulus, p, k / 2) {
        let h = sub(&frob, &[0, 1], p);
        let g = gcd(modulus, &h, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Inverse of `a` modulo an irreducible `modulus` by extended Euclid.
pub(crate) fn inv_mod(a: &[u64], modulus: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 is a nonzero constant when gcd is 1
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod_p(r0[0], p)?;
    let out: Vec<u64> = s0.iter().map(|&x| mul_mod_p(x, c, p)).collect();
    Some(rem(&out, modulus, p))
}
