//! Finite fields F_q, q = p^e, stored as log tables.
//!
//! Elements are `u16` indices in canonical order: `0` is zero, `1` is one and
//! index `k >= 1` is `g^(k-1)` for a fixed primitive element `g`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Dp4Error, Result};

/// Field element as an index into the canonical order.
pub type Fq = u16;

/// Largest supported field order.
pub const MAX_Q: u32 = 1 << 16;

/// Below this order full addition and multiplication tables are kept.
const DENSE_LIMIT: u32 = 256;

#[derive(Debug)]
pub struct FieldTable {
    p: u32,
    e: u32,
    q: u32,
    /// Coefficients of the primitive polynomial, low degree first, monic.
    modulus: Vec<u32>,
    /// `vec_of[idx]` encodes the element as a base-p digit string.
    vec_of: Vec<u32>,
    idx_of: Vec<Fq>,
    /// `zech[k] = 1 + log(1 + g^k)` as an index, or 0 when `1 + g^k = 0`.
    zech: Vec<Fq>,
    add_tab: Vec<Fq>,
    mul_tab: Vec<Fq>,
    neg_one: Fq,
}

fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut r = q;
    let mut e = 0;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Returns `true` when `q` is a prime power within the supported range.
pub fn is_supported_order(q: u32) -> bool {
    q <= MAX_Q && factor_prime_power(q).is_some()
}

fn digits_add(a: u32, b: u32, p: u32, e: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b, mut out, mut w) = (a, b, 0, 1);
    for _ in 0..e {
        out += ((a % p + b % p) % p) * w;
        a /= p;
        b /= p;
        w *= p;
    }
    out
}

/// Multiply the digit vector `v` (an element of F_p[x]/(f)) by `x`.
fn times_x(v: u32, p: u32, e: u32, modulus: &[u32]) -> u32 {
    let mut d: Vec<u32> = (0..e).map(|j| (v / p.pow(j)) % p).collect();
    let top = d[e as usize - 1];
    for j in (1..e as usize).rev() {
        d[j] = d[j - 1];
    }
    d[0] = 0;
    for j in 0..e as usize {
        // x^e = -(m_0 + m_1 x + ... + m_{e-1} x^{e-1})
        d[j] = (d[j] + (p - modulus[j] % p) * top) % p;
    }
    d.iter().enumerate().map(|(j, &c)| c * p.pow(j as u32)).sum()
}

fn find_primitive(p: u32, e: u32) -> Vec<u32> {
    let q = p.pow(e);
    // Degree one: x - c with c a primitive root, encoded as m_0 = -c.
    for code in 0..p.pow(e) {
        let mut modulus: Vec<u32> = (0..e).map(|j| (code / p.pow(j)) % p).collect();
        if modulus[0] == 0 && q > 2 {
            continue;
        }
        modulus.push(1);
        let one = 1u32;
        let mut v = one;
        let mut order = 0;
        loop {
            v = times_x(v, p, e, &modulus);
            order += 1;
            if v == one || v == 0 || order > q - 1 {
                break;
            }
        }
        if v == one && order == q - 1 {
            return modulus;
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

impl FieldTable {
    /// Builds the field of order `q`; see [`FieldTable::get`] for a cached handle.
    pub fn new(q: u32) -> Result<FieldTable> {
        if q > MAX_Q {
            return Err(Dp4Error::Config(format!("field order {q} exceeds {MAX_Q}")));
        }
        let (p, e) = factor_prime_power(q)
            .ok_or_else(|| Dp4Error::Config(format!("{q} is not a prime power")))?;
        let modulus = find_primitive(p, e);
        let n = q as usize;
        let mut vec_of = vec![0u32; n];
        let mut idx_of = vec![0 as Fq; n];
        let mut v = 1u32;
        for k in 0..(q - 1) {
            vec_of[k as usize + 1] = v;
            idx_of[v as usize] = (k + 1) as Fq;
            v = times_x(v, p, e, &modulus);
        }
        let mut zech = vec![0 as Fq; (q - 1) as usize];
        for k in 0..(q - 1) as usize {
            let s = digits_add(1, vec_of[k + 1], p, e);
            zech[k] = idx_of[s as usize];
        }
        let neg_one = if p == 2 { 1 } else { ((q - 1) / 2 + 1) as Fq };
        let mut f = FieldTable {
            p,
            e,
            q,
            modulus,
            vec_of,
            idx_of,
            zech,
            add_tab: Vec::new(),
            mul_tab: Vec::new(),
            neg_one,
        };
        if q <= DENSE_LIMIT {
            let mut add_tab = vec![0 as Fq; n * n];
            let mut mul_tab = vec![0 as Fq; n * n];
            for a in 0..n {
                for b in 0..n {
                    add_tab[a * n + b] = f.add_slow(a as Fq, b as Fq);
                    mul_tab[a * n + b] = f.mul_slow(a as Fq, b as Fq);
                }
            }
            f.add_tab = add_tab;
            f.mul_tab = mul_tab;
        }
        Ok(f)
    }

    /// Shared, lazily built table for `q`.
    pub fn get(q: u32) -> Result<Arc<FieldTable>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&q) {
            return Ok(f.clone());
        }
        let f = Arc::new(FieldTable::new(q)?);
        cache.lock().unwrap().entry(q).or_insert_with(|| f.clone());
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q as Fq
    }

    /// Discrete log of a nonzero element.
    #[inline]
    pub fn log(&self, a: Fq) -> u32 {
        debug_assert!(a != 0);
        a as u32 - 1
    }

    /// `g^k`.
    #[inline]
    pub fn exp(&self, k: u32) -> Fq {
        (k % (self.q - 1) + 1) as Fq
    }

    fn mul_slow(&self, a: Fq, b: Fq) -> Fq {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp(self.log(a) + self.log(b))
    }

    fn add_slow(&self, a: Fq, b: Fq) -> Fq {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let (la, lb) = (self.log(a), self.log(b));
        let d = (lb + self.q - 1 - la) % (self.q - 1);
        let z = self.zech[d as usize];
        if z == 0 {
            0
        } else {
            self.exp(la + z as u32 - 1)
        }
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.add_tab.is_empty() {
            self.add_slow(a, b)
        } else {
            self.add_tab[a as usize * self.q as usize + b as usize]
        }
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.mul_tab.is_empty() {
            self.mul_slow(a, b)
        } else {
            self.mul_tab[a as usize * self.q as usize + b as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.mul(a, self.neg_one)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a != 0, "inverse of zero");
        self.exp(self.q - 1 - self.log(a))
    }

    #[inline]
    pub fn div(&self, a: Fq, b: Fq) -> Fq {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fq, n: u64) -> Fq {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let k = (self.log(a) as u64 * (n % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp(k as u32)
    }

    /// Frobenius `x -> x^p`.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as u64)
    }

    /// Image of the integer `n` under Z -> F_q.
    pub fn from_int(&self, n: i64) -> Fq {
        let r = n.rem_euclid(self.p as i64) as u32;
        self.idx_of[r as usize]
    }

    /// Inverse of [`FieldTable::as_vector`].
    pub fn from_vector(&self, v: u32) -> Result<Fq> {
        self.idx_of
            .get(v as usize)
            .copied()
            .ok_or_else(|| Dp4Error::Config(format!("{v} does not encode an element of F_{}", self.q)))
    }

    /// Base-p digit encoding of an element (its polynomial in the primitive root).
    pub fn as_vector(&self, a: Fq) -> u32 {
        self.vec_of[a as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fq) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}
