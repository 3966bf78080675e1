//! Finite fields GF(p^m) with at most 256 elements.
//!
//! Elements are stored as `u8` indices: the element `c_0 + c_1 x + ... + c_{m-1} x^{m-1}`
//! of `GF(p)[x]/(f)` is encoded as `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. In characteristic
//! two this makes addition a plain XOR of the indices.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Elem = u8;

struct FieldData {
    p: u32,
    m: u32,
    q: usize,
    /// Monic defining polynomial, low degree first, length m + 1.
    poly: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    primitive: u8,
}

/// A handle on GF(p^m). Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.m == other.0.m)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.m)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, m)` with `q = p^m`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest == 1 && is_prime(p) {
        Some((p as u32, m))
    } else {
        None
    }
}

impl Field {
    /// GF(p^m), defined by the lexicographically least monic primitive polynomial of degree m.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        if !is_prime(p as u64) || m == 0 {
            return Err(Error::NotPrimePower((p as u64).saturating_pow(m.max(1))));
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > 256 {
            return Err(Error::FieldTooLarge(q));
        }
        let q = q as usize;
        let poly = least_primitive_poly(p, m);
        Ok(Field(Arc::new(build_tables(p, m, q, poly))))
    }

    /// The field with `q` elements.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p, m)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> usize {
        self.0.q
    }

    /// Defining polynomial coefficients, constant term first.
    pub fn defining_polynomial(&self) -> &[u32] {
        &self.0.poly
    }

    pub fn primitive_element(&self) -> Elem {
        self.0.primitive
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        self.0.inv[a as usize]
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of the integer `n` under Z -> GF(p) -> GF(p^m).
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(|x| x as Elem)
    }

    /// The row of the multiplication table for `c`.
    #[inline]
    pub fn mul_row(&self, c: Elem) -> &[u8] {
        let q = self.0.q;
        &self.0.mul[c as usize * q..(c as usize + 1) * q]
    }

    #[inline]
    pub fn is_char2(&self) -> bool {
        self.0.p == 2
    }

    /// `dst += c * src`.
    #[inline]
    pub fn axpy(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        if c == 0 {
            return;
        }
        if self.0.p == 2 {
            if c == 1 {
                for (d, s) in dst.iter_mut().zip(src) {
                    *d ^= *s;
                }
            } else {
                let row = self.mul_row(c);
                for (d, s) in dst.iter_mut().zip(src) {
                    *d ^= row[*s as usize];
                }
            }
        } else {
            let q = self.0.q;
            let row = self.mul_row(c);
            let add = &self.0.add;
            for (d, s) in dst.iter_mut().zip(src) {
                *d = add[*d as usize * q + row[*s as usize] as usize];
            }
        }
    }

    /// `v *= c`.
    #[inline]
    pub fn scale(&self, v: &mut [Elem], c: Elem) {
        if c == 1 {
            return;
        }
        let row = self.mul_row(c);
        for x in v.iter_mut() {
            *x = row[*x as usize];
        }
    }

    /// Coefficients of the element over GF(p), constant term first.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.m as usize);
        let mut x = a as u32;
        for _ in 0..self.0.m {
            out.push(x % self.0.p);
            x /= self.0.p;
        }
        out
    }

    /// The element with the given GF(p) coefficients.
    pub fn from_coefficients(&self, coeffs: &[u32]) -> Elem {
        let mut x = 0u32;
        for c in coeffs.iter().rev() {
            x = x * self.0.p + (c % self.0.p);
        }
        x as Elem
    }
}

fn poly_coeffs(mut code: usize, p: u32, m: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(m as usize + 1);
    for _ in 0..m {
        v.push((code % p as usize) as u32);
        code /= p as usize;
    }
    v.push(1);
    v
}

/// Multiply two elements given as coefficient vectors (length m), reducing modulo `poly`.
fn poly_mulmod(a: &[u32], b: &[u32], poly: &[u32], p: u32) -> Vec<u32> {
    let m = poly.len() - 1;
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (m..2 * m).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, &f) in poly.iter().enumerate() {
            let idx = d - m + i;
            prod[idx] = (prod[idx] + p * p - (c * f) % p) % p;
        }
    }
    prod.truncate(m);
    prod
}

fn least_primitive_poly(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        // x - g for a primitive root g.
        let g = (1..p).find(|&g| mult_order_mod(g, p) == p - 1).unwrap_or(1);
        return vec![(p - g) % p, 1];
    }
    let q = (p as usize).pow(m);
    for code in 0..q {
        let poly = poly_coeffs(code, p, m);
        if poly[0] == 0 {
            continue;
        }
        // order of x modulo poly
        let mut x = vec![0u32; m as usize];
        x[1] = 1;
        let mut cur = x.clone();
        let mut order = 1usize;
        let one: Vec<u32> = {
            let mut o = vec![0u32; m as usize];
            o[0] = 1;
            o
        };
        while cur != one && order < q {
            cur = poly_mulmod(&cur, &x, &poly, p);
            order += 1;
        }
        if cur == one && order == q - 1 {
            return poly;
        }
    }
    unreachable!("a primitive polynomial always exists")
}

fn mult_order_mod(g: u32, p: u32) -> u32 {
    let mut x = g % p;
    let mut k = 1;
    while x != 1 {
        x = (x * g) % p;
        k += 1;
        if k > p {
            return 0;
        }
    }
    k
}

fn build_tables(p: u32, m: u32, q: usize, poly: Vec<u32>) -> FieldData {
    let coeffs = |a: usize| -> Vec<u32> {
        let mut out = Vec::with_capacity(m as usize);
        let mut x = a as u32;
        for _ in 0..m {
            out.push(x % p);
            x /= p;
        }
        out
    };
    let encode = |c: &[u32]| -> u8 {
        let mut x = 0u32;
        for v in c.iter().rev() {
            x = x * p + v;
        }
        x as u8
    };
    let all: Vec<Vec<u32>> = (0..q).map(coeffs).collect();
    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        for b in 0..q {
            let s: Vec<u32> = all[a].iter().zip(&all[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = encode(&s);
            mul[a * q + b] = encode(&poly_mulmod(&all[a], &all[b], &poly, p));
        }
    }
    let mut neg = vec![0u8; q];
    let mut inv = vec![0u8; q];
    for a in 0..q {
        for b in 0..q {
            if add[a * q + b] == 0 {
                neg[a] = b as u8;
            }
            if mul[a * q + b] == 1 {
                inv[a] = b as u8;
            }
        }
    }
    let primitive = (1..q)
        .find(|&g| {
            let mut x = g as u8;
            let mut k = 1;
            while x != 1 {
                x = mul[x as usize * q + g];
                k += 1;
            }
            k == q - 1
        })
        .unwrap_or(1) as u8;
    FieldData {
        p,
        m,
        q,
        poly,
        add,
        mul,
        neg,
        inv,
        primitive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gf4_is_defined_by_x2_x_1() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.defining_polynomial(), &[1, 1, 1]);
        // w = x, w^2 = w + 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(p, m) in &[(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (11, 1), (2, 5), (7, 2)] {
            let f = Field::new(p, m).unwrap();
            let q = f.order();
            for _ in 0..300 {
                let a = rng.gen_range(0..q) as u8;
                let b = rng.gen_range(0..q) as u8;
                let c = rng.gen_range(0..q) as u8;
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
            let g = f.primitive_element();
            assert_eq!(f.pow(g, (q - 1) as u64), 1);
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(11), Some((11, 1)));
        assert_eq!(prime_power(12), None);
        assert!(Field::of_order(6).is_err());
        assert!(Field::of_order(512).is_err());
    }
}
