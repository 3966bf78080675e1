//! Univariate polynomials over a finite field and Krylov minimal polynomials.

use crate::field::{Elem, Field};

/// Coefficients, constant term first, without trailing zeros (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    /// `x - c`.
    pub fn linear(f: &Field, c: Elem) -> Poly {
        Poly::new(vec![f.neg(c), 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c = vec![0; n];
        c[..self.coeffs.len()].copy_from_slice(&self.coeffs);
        f.axpy(&mut c[..o.coeffs.len()], 1, &o.coeffs);
        Poly::new(c)
    }

    pub fn sub(&self, f: &Field, o: &Poly) -> Poly {
        self.add(f, &o.scale(f, f.neg(1)))
    }

    pub fn scale(&self, f: &Field, s: Elem) -> Poly {
        let mut c = self.coeffs.clone();
        f.scale(&mut c, s);
        Poly::new(c)
    }

    pub fn mul(&self, f: &Field, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            f.axpy(&mut c[i..i + o.coeffs.len()], a, &o.coeffs);
        }
        Poly::new(c)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.lead()))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &Field, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), Poly::new(r));
        }
        let inv = f.inv(d.lead());
        let mut q = vec![0; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv);
            if c != 0 {
                q[i] = c;
                f.axpy(&mut r[i..i + dd + 1], f.neg(c), &d.coeffs);
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, f: &Field, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    /// `(g, s, t)` with `s*a + t*b = g = gcd(a, b)` monic.
    pub fn xgcd(f: &Field, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(f, &r1);
            let s2 = s0.sub(f, &q.mul(f, &s1));
            let t2 = t0.sub(f, &q.mul(f, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = f.inv(r0.lead());
        (r0.scale(f, c), s0.scale(f, c), t0.scale(f, c))
    }

    /// Split into `(x - c)^k` parts for the roots `c` in the field plus a root-free cofactor
    /// (returned with `None`, omitted when constant). Input must be nonzero.
    pub fn root_power_split(&self, f: &Field) -> Vec<(Option<Elem>, Poly)> {
        let mut rest = self.monic(f);
        let mut out = Vec::new();
        for c in f.elements() {
            if rest.degree() == Some(0) {
                break;
            }
            let lin = Poly::linear(f, c);
            let mut part = Poly::one();
            loop {
                let (q, r) = rest.divrem(f, &lin);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                part = part.mul(f, &lin);
            }
            if part.degree() > Some(0) {
                out.push((Some(c), part));
            }
        }
        if rest.degree() > Some(0) {
            out.push((None, rest));
        }
        out
    }
}

/// For pairwise coprime factors `f_i` of `mu` (their product), polynomials `e_i` with
/// `e_i(a)` the corresponding primitive idempotents of `k[a] = k[x]/(mu)`.
pub fn crt_idempotents(f: &Field, mu: &Poly, factors: &[Poly]) -> Vec<Poly> {
    factors
        .iter()
        .map(|fi| {
            let (cof, r) = mu.divrem(f, fi);
            debug_assert!(r.is_zero());
            let (g, s, _) = Poly::xgcd(f, &cof, fi);
            debug_assert_eq!(g, Poly::one(), "factors must be coprime");
            s.mul(f, &cof).rem(f, mu)
        })
        .collect()
}

/// The minimal polynomial of the operator `step` relative to the start vector `v0`, together
/// with the Krylov vectors `v0, step(v0), ...` (one per degree below the minimal polynomial's).
pub struct Krylov {
    pub min_poly: Poly,
    pub vectors: Vec<Vec<Elem>>,
}

impl Krylov {
    pub fn new(f: &Field, v0: Vec<Elem>, mut step: impl FnMut(&[Elem]) -> Vec<Elem>) -> Krylov {
        let n = v0.len();
        // rows: reduced vector, combination of Krylov vectors, pivot
        let mut rows: Vec<(Vec<Elem>, Vec<Elem>, usize)> = Vec::new();
        let mut vectors: Vec<Vec<Elem>> = Vec::new();
        let mut cur = v0;
        loop {
            let i = vectors.len();
            let mut v = cur.clone();
            let mut comb = vec![0; i + 1];
            comb[i] = 1;
            for (rv, rc, p) in &rows {
                let c = v[*p];
                if c != 0 {
                    let nc = f.neg(c);
                    f.axpy(&mut v, nc, rv);
                    f.axpy(&mut comb[..rc.len()], nc, rc);
                }
            }
            match v.iter().position(|&x| x != 0) {
                None => {
                    return Krylov {
                        min_poly: Poly::new(comb).monic(f),
                        vectors,
                    };
                }
                Some(p) => {
                    let inv = f.inv(v[p]);
                    f.scale(&mut v, inv);
                    f.scale(&mut comb, inv);
                    rows.push((v, comb, p));
                }
            }
            assert!(i <= n, "Krylov sequence longer than the dimension");
            let next = step(&cur);
            vectors.push(cur);
            cur = next;
        }
    }

    /// `p(a) v0` for a polynomial of degree below that of the minimal polynomial (reduced first).
    pub fn evaluate(&self, f: &Field, p: &Poly) -> Vec<Elem> {
        let p = p.rem(f, &self.min_poly);
        let n = self.vectors.first().map_or(0, |v| v.len());
        let mut out = vec![0; n];
        for (c, v) in p.coeffs.iter().zip(&self.vectors) {
            f.axpy(&mut out, *c, v);
        }
        out
    }
}
