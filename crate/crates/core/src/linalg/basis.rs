use crate::field::Elem;

use super::mat::{Mat, Subspace};

/// A chosen (not necessarily echelon) basis of a subspace, with fast coordinate extraction.
#[derive(Clone, Debug)]
pub struct Basis {
    rows: Mat,
    rref: Mat,
    pivots: Vec<usize>,
    /// `transform * rows = rref`
    transform: Mat,
}

impl Basis {
    /// `rows` must be linearly independent.
    pub fn new(rows: Mat) -> Basis {
        let e = rows.echelon();
        assert_eq!(
            e.pivots.len(),
            rows.rows(),
            "basis vectors are linearly dependent"
        );
        Basis {
            rows,
            rref: e.rref,
            pivots: e.pivots,
            transform: e.transform,
        }
    }

    pub fn from_subspace(s: &Subspace) -> Basis {
        Basis::new(s.basis().clone())
    }

    pub fn dim(&self) -> usize {
        self.rows.rows()
    }

    pub fn ambient(&self) -> usize {
        self.rows.cols()
    }

    pub fn rows(&self) -> &Mat {
        &self.rows
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let f = self.rows.field();
        let mut w = v.to_vec();
        for (k, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c != 0 {
                f.axpy(&mut w, f.neg(c), self.rref.row(k));
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` with respect to the basis; `v` must lie in the span.
    pub fn coordinates(&self, v: &[Elem]) -> Vec<Elem> {
        debug_assert!(self.contains(v), "vector outside the span");
        let at_pivots: Vec<Elem> = self.pivots.iter().map(|&p| v[p]).collect();
        self.transform.vec_mul(&at_pivots)
    }

    /// Coordinates, or `None` when `v` is outside the span.
    pub fn try_coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if self.contains(v) {
            Some(self.coordinates(v))
        } else {
            None
        }
    }

    /// Matrix whose rows are the coordinates of the rows of `m`.
    pub fn coordinates_of_rows(&self, m: &Mat) -> Mat {
        let f = self.rows.field();
        let mut out = Mat::zeros(f, m.rows(), self.dim());
        for i in 0..m.rows() {
            let c = self.coordinates(m.row(i));
            out.row_mut(i).copy_from_slice(&c);
        }
        out
    }

    /// Matrix of the linear map `x -> x * a` restricted to the span (which must be invariant).
    pub fn restrict(&self, a: &Mat) -> Mat {
        self.coordinates_of_rows(&self.rows.mul(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coordinates_recover_combination() {
        let f = Field::of_order(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rows = loop {
            let m = Mat::random(&f, 4, 9, &mut rng);
            if m.rank() == 4 {
                break m;
            }
        };
        let b = Basis::new(rows.clone());
        let c = Mat::random(&f, 3, 4, &mut rng);
        let v = c.mul(&rows);
        assert_eq!(b.coordinates_of_rows(&v), c);
    }
}
