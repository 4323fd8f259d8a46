//! Prime-power finite fields `F_q`.
//!
//! Elements are plain integers in `[0, q)`. For `q = p^m` the integer is read
//! as base-`p` digits, digit `i` being the coefficient of `x^i` in the
//! polynomial representation modulo the field's irreducible modulus.
//!
//! The modulus for every `(p, m)` is the lowest irreducible monic polynomial
//! when polynomials are ordered by their base-`p` integer value, so a given
//! `q` always produces the same field. Multiplication goes through log/antilog
//! tables built once per field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Field element, an integer in `[0, q)`.
pub type Elem = u32;

#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

struct Inner {
    q: u32,
    p: u32,
    m: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, doubled to skip a reduction in `mul`.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.q == other.inner.q && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.inner.q)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

/// Splits `q` into `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Smallest prime power `>= lower` (and `>= 2`).
pub fn next_prime_power(lower: u64) -> u64 {
    let mut q = lower.max(2);
    while prime_power(q).is_none() {
        q += 1;
    }
    q
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let (q, p) = (q as u32, p as u32);
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            lowest_irreducible(p, m)
        };
        let mut inner = Inner {
            q,
            p,
            m,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        inner.build_tables();
        Ok(Field {
            inner: Arc::new(inner),
        })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    /// Irreducible modulus, coefficients low-to-high, monic. Prime fields
    /// report `x`.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.inner.q
    }

    pub fn check(&self, a: Elem) -> Result<Elem> {
        if a < self.inner.q {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange {
                value: a,
                q: self.inner.q,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.inner;
        if f.m == 1 {
            let s = a + b;
            if s >= f.q {
                s - f.q
            } else {
                s
            }
        } else if f.p == 2 {
            a ^ b
        } else {
            digitwise(f.p, a, b, |x, y| (x + y) % f.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let f = &*self.inner;
        if a == 0 || f.p == 2 {
            a
        } else if f.m == 1 {
            f.q - a
        } else {
            digitwise(f.p, a, 0, |x, _| (f.p - x) % f.p)
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.inner;
        if f.m == 1 {
            if a >= b {
                a - b
            } else {
                a + f.q - b
            }
        } else if f.p == 2 {
            a ^ b
        } else {
            digitwise(f.p, a, b, |x, y| (x + f.p - y) % f.p)
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.inner;
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nonzero(a))
    }

    /// Inverse of an element known to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        let f = &*self.inner;
        let l = f.log[a as usize];
        if l == 0 {
            1
        } else {
            f.exp[(f.q - 1 - l) as usize]
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.inner;
        let l = (f.log[a as usize] as u64 * (e % (f.q as u64 - 1))) % (f.q as u64 - 1);
        f.exp[l as usize]
    }

    /// `dst[j] -= c * src[j]` for every `j`.
    #[inline]
    pub fn sub_scaled(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        if c == 0 {
            return;
        }
        let f = &*self.inner;
        let lc = f.log[c as usize];
        if f.p == 2 {
            for (d, &s) in dst.iter_mut().zip(src) {
                if s != 0 {
                    *d ^= f.exp[(lc + f.log[s as usize]) as usize];
                }
            }
        } else {
            for (d, &s) in dst.iter_mut().zip(src) {
                if s != 0 {
                    *d = self.sub(*d, f.exp[(lc + f.log[s as usize]) as usize]);
                }
            }
        }
    }

    /// `v[j] *= c` for every `j`.
    #[inline]
    pub fn scale(&self, v: &mut [Elem], c: Elem) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    /// Inner product `sum_j a[j] * b[j]`.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// `a * b` computed by reducing the polynomial product modulo the modulus,
    /// bypassing the tables. Used while building them and in tests.
    pub fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        self.inner.poly_mul(a, b)
    }
}

impl Inner {
    fn digits(&self, a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.m as usize);
        let mut a = a;
        for _ in 0..self.m {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn pack_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let m = self.m as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce with the monic modulus from the top down
        for deg in (m..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (k, &mk) in self.modulus.iter().enumerate().take(m) {
                let idx = deg - m + k;
                prod[idx] = (prod[idx] + p * p - c * mk as u64 % p) % p;
            }
            prod[deg] = 0;
        }
        let out: Vec<u32> = prod[..m].iter().map(|&x| x as u32).collect();
        self.pack_digits(&out)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        if q == 2 {
            self.exp = vec![1, 1];
            self.log = vec![0, 0];
            return;
        }
        for g in 2..self.q {
            let mut exp = Vec::with_capacity(2 * (q - 1));
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..q - 1 {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = self.poly_mul(x, g);
            }
            if !ok || x != 1 {
                continue;
            }
            let mut log = vec![0u32; q];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
            self.exp = doubled;
            self.log = log;
            return;
        }
        unreachable!("every finite field has a primitive element");
    }
}

#[inline]
fn digitwise(p: u32, a: u32, b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    while a > 0 || b > 0 {
        out += op(a % p, b % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

/// Lowest monic irreducible polynomial of degree `m` over `F_p`, as
/// coefficients low-to-high (length `m + 1`).
fn lowest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    (0..count)
        .map(|tail| {
            let mut c = to_digits(tail, p, m as usize);
            c.push(1);
            c
        })
        .find(|c| is_irreducible(c, p))
        .expect("irreducible polynomials exist in every degree")
}

fn to_digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(len + 1);
    for _ in 0..len {
        d.push((v % p as u64) as u32);
        v /= p as u64;
    }
    d
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if poly[0] == 0 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        for tail in 0..(p as u64).pow(d as u32) {
            let mut div = to_digits(tail, p, d);
            div.push(1);
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u32], monic_div: &[u32], p: u32) -> bool {
    let mut r: Vec<u32> = num.to_vec();
    let d = monic_div.len() - 1;
    for deg in (d..r.len()).rev() {
        let c = r[deg];
        if c == 0 {
            continue;
        }
        for (k, &mk) in monic_div.iter().enumerate() {
            let idx = deg - d + k;
            r[idx] = (r[idx] + p - (c * mk) % p) % p;
        }
    }
    r[..d].iter().all(|&x| x == 0)
}
