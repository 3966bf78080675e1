//! Bit-packed rows for GF(2) and GF(4).
//!
//! GF(2) rows are a single bitplane. GF(4) rows are two bitplanes `(lo, hi)` holding the
//! coordinates of `lo + hi*w` where `w^2 = w + 1`, which matches the element encoding of
//! [`Field`]. Addition is XOR on both planes and multiplication by `w` maps
//! `(lo, hi)` to `(hi, lo ^ hi)`.

use crate::field::{Elem, Field};

/// A packed row over GF(2) or GF(4).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedRow {
    lo: Vec<u64>,
    hi: Vec<u64>,
}

impl PackedRow {
    pub fn zero(cols: usize, two_planes: bool) -> Self {
        let w = cols.div_ceil(64);
        PackedRow {
            lo: vec![0; w],
            hi: if two_planes { vec![0; w] } else { Vec::new() },
        }
    }

    pub fn pack(v: &[Elem], two_planes: bool) -> Self {
        let mut r = PackedRow::zero(v.len(), two_planes);
        for (i, &x) in v.iter().enumerate() {
            r.set(i, x);
        }
        r
    }

    pub fn unpack(&self, cols: usize) -> Vec<Elem> {
        (0..cols).map(|i| self.get(i)).collect()
    }

    #[inline]
    pub fn get(&self, i: usize) -> Elem {
        let (w, b) = (i / 64, i % 64);
        let lo = ((self.lo[w] >> b) & 1) as u8;
        if self.hi.is_empty() {
            lo
        } else {
            lo | ((((self.hi[w] >> b) & 1) as u8) << 1)
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, x: Elem) {
        let (w, b) = (i / 64, i % 64);
        let m = 1u64 << b;
        self.lo[w] = (self.lo[w] & !m) | (((x & 1) as u64) << b);
        if !self.hi.is_empty() {
            self.hi[w] = (self.hi[w] & !m) | ((((x >> 1) & 1) as u64) << b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lo.iter().all(|&w| w == 0) && self.hi.iter().all(|&w| w == 0)
    }

    /// First nonzero column.
    pub fn leading(&self) -> Option<usize> {
        for w in 0..self.lo.len() {
            let mut bits = self.lo[w];
            if !self.hi.is_empty() {
                bits |= self.hi[w];
            }
            if bits != 0 {
                return Some(w * 64 + bits.trailing_zeros() as usize);
            }
        }
        None
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: Elem, other: &PackedRow) {
        match c {
            0 => {}
            1 => {
                xor_into(&mut self.lo, &other.lo);
                xor_into(&mut self.hi, &other.hi);
            }
            2 => {
                // w*(lo + hi w) = hi + (lo ^ hi) w
                for i in 0..self.lo.len() {
                    let (l, h) = (other.lo[i], other.hi[i]);
                    self.lo[i] ^= h;
                    self.hi[i] ^= l ^ h;
                }
            }
            3 => {
                // w^2*(lo + hi w) = (lo ^ hi) + lo w
                for i in 0..self.lo.len() {
                    let (l, h) = (other.lo[i], other.hi[i]);
                    self.lo[i] ^= l ^ h;
                    self.hi[i] ^= l;
                }
            }
            _ => unreachable!("element outside GF(4)"),
        }
    }

    /// Multiply in place by a nonzero scalar.
    pub fn scale(&mut self, c: Elem) {
        if c <= 1 {
            assert_eq!(c, 1, "scaling by zero");
            return;
        }
        let mut out = PackedRow {
            lo: vec![0; self.lo.len()],
            hi: vec![0; self.hi.len()],
        };
        out.axpy(c, self);
        *self = out;
    }
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// Returns true if `field` has a packed representation.
pub fn supports(field: &Field) -> bool {
    field.characteristic() == 2 && field.degree() <= 2
}

/// Incremental semi-echelon basis over GF(2) or GF(4) with packed rows.
#[derive(Clone, Debug)]
pub struct PackedReducer {
    field: Field,
    cols: usize,
    two_planes: bool,
    rows: Vec<PackedRow>,
    pivots: Vec<usize>,
}

impl PackedReducer {
    pub fn new(field: &Field, cols: usize) -> Self {
        assert!(supports(field), "packed rows need GF(2) or GF(4)");
        PackedReducer {
            field: field.clone(),
            cols,
            two_planes: field.degree() == 2,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pack(&self, v: &[Elem]) -> PackedRow {
        PackedRow::pack(v, self.two_planes)
    }

    pub fn reduce_packed(&self, v: &mut PackedRow) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(pc);
            if c != 0 {
                // characteristic 2: -c = c
                v.axpy(c, row);
            }
        }
    }

    pub fn insert_packed(&mut self, mut v: PackedRow) -> bool {
        self.reduce_packed(&mut v);
        match v.leading() {
            None => false,
            Some(pc) => {
                let inv = self.field.inv(v.get(pc));
                v.scale(inv);
                self.rows.push(v);
                self.pivots.push(pc);
                true
            }
        }
    }

    pub fn insert(&mut self, v: &[Elem]) -> bool {
        let p = self.pack(v);
        self.insert_packed(p)
    }

    pub fn reduce(&self, v: &mut [Elem]) {
        let mut p = self.pack(v);
        self.reduce_packed(&mut p);
        for (i, x) in v.iter_mut().enumerate() {
            *x = p.get(i);
        }
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut p = self.pack(v);
        self.reduce_packed(&mut p);
        p.is_zero()
    }

    pub fn unpacked_rows(&self) -> Vec<Vec<Elem>> {
        self.rows.iter().map(|r| r.unpack(self.cols)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn packed_axpy_matches_field() {
        let f = Field::of_order(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = Mat::random(&f, 1, 130, &mut rng);
        let b = Mat::random(&f, 1, 130, &mut rng);
        for c in 0..4u8 {
            let mut dense = a.row(0).to_vec();
            f.axpy(&mut dense, c, b.row(0));
            let mut p = PackedRow::pack(a.row(0), true);
            p.axpy(c, &PackedRow::pack(b.row(0), true));
            assert_eq!(p.unpack(130), dense);
        }
    }

    #[test]
    fn packed_rank_matches_dense() {
        for q in [2u64, 4] {
            let f = Field::of_order(q).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(q);
            let a = Mat::random(&f, 40, 20, &mut rng);
            let m = a.mul(&Mat::random(&f, 20, 300, &mut rng));
            let mut pr = PackedReducer::new(&f, 300);
            for i in 0..m.rows() {
                pr.insert(m.row(i));
            }
            assert_eq!(pr.rank(), m.echelon().pivots.len());
            assert!(pr.contains(m.row(3)));
        }
    }
}
