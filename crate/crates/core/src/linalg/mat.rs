use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

use super::packed::{self, PackedReducer};

/// Dense matrix over a finite field, row-major.
#[derive(Clone)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}
impl Eq for Mat {}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows.min(16) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(32)])?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with the transformation that produced it.
pub struct Echelon {
    /// `transform * original = rref`, square of size `original.rows()`.
    pub transform: Mat,
    pub rref: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Mat {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Mat::from_vec(field, rows.len(), cols, data)
    }

    /// Permutation matrix of `images` in the row convention: `e_i * P = e_{images[i]}`.
    pub fn permutation(field: &Field, images: &[usize]) -> Mat {
        let n = images.len();
        let mut m = Mat::zeros(field, n, n);
        for (i, &j) in images.iter().enumerate() {
            m.data[i * n + j] = 1;
        }
        m
    }

    pub fn random(field: &Field, rows: usize, cols: usize, rng: &mut impl Rng) -> Mat {
        let q = field.order();
        let data = (0..rows * cols).map(|_| rng.gen_range(0..q) as Elem).collect();
        Mat::from_vec(field, rows, cols, data)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as u8))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(&self.field, self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let dst = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    self.field.axpy(dst, a, &other.data[k * oc..(k + 1) * oc]);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a != 0 {
                self.field.axpy(&mut out, a, self.row(k));
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.axpy(&mut out.data, 1, &other.data);
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        let m1 = self.field.neg(1);
        self.field.axpy(&mut out.data, m1, &other.data);
        out
    }

    pub fn scaled(&self, c: Elem) -> Mat {
        let mut out = self.clone();
        self.field.scale(&mut out.data, c);
        out
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: Elem, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Kronecker product; row index `(i, k) -> i * other.rows + k`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let r = self.rows * other.rows;
        let c = self.cols * other.cols;
        let mut out = Mat::zeros(&self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    let dst_start = (i * other.rows + k) * c + j * other.cols;
                    let dst = &mut out.data[dst_start..dst_start + other.cols];
                    self.field.axpy(dst, a, other.row(k));
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let c = self.cols + other.cols;
        let mut out = Mat::zeros(&self.field, self.rows, c);
        for i in 0..self.rows {
            out.data[i * c..i * c + self.cols].copy_from_slice(self.row(i));
            out.data[i * c + self.cols..(i + 1) * c].copy_from_slice(other.row(i));
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat::from_vec(&self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Mat::from_vec(&self.field, idx.len(), self.cols, data)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(&self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (t, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + t] = self.get(i, j);
            }
        }
        out
    }

    /// Block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        let mut out = Mat::zeros(&self.field, r1 - r0, c1 - c0);
        for i in r0..r1 {
            out.row_mut(i - r0).copy_from_slice(&self.row(i)[c0..c1]);
        }
        out
    }

    pub fn trace(&self) -> Elem {
        assert!(self.is_square());
        (0..self.rows).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// Reduced row echelon form with the accumulated transformation.
    pub fn echelon(&self) -> Echelon {
        let f = &self.field;
        let mut a = self.clone();
        let mut t = Mat::identity(f, self.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            a.swap_rows(r, pr);
            t.swap_rows(r, pr);
            let inv = f.inv(a.get(r, c));
            f.scale(a.row_mut(r), inv);
            f.scale(t.row_mut(r), inv);
            let prow = a.row(r).to_vec();
            let trow = t.row(r).to_vec();
            for i in 0..self.rows {
                if i != r {
                    let x = a.get(i, c);
                    if x != 0 {
                        let nx = f.neg(x);
                        f.axpy(a.row_mut(i), nx, &prow);
                        f.axpy(t.row_mut(i), nx, &trow);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            transform: t,
            rref: a,
            pivots,
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let c = self.cols;
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let (a, b) = self.data.split_at_mut(hi * c);
        a[lo * c..(lo + 1) * c].swap_with_slice(&mut b[..c]);
    }

    pub fn rank(&self) -> usize {
        let mut rr = RowReducer::new(&self.field, self.cols);
        for i in 0..self.rows {
            rr.insert(self.row(i).to_vec());
        }
        rr.rank()
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let e = self.echelon();
        if e.pivots.len() == self.rows {
            Some(e.transform)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// A power `self^N` with `N >= rows`, so that kernel and image give the Fitting decomposition.
    pub fn stable_power(&self) -> Mat {
        let mut m = self.clone();
        let mut n = 1usize;
        while n < self.rows {
            m = m.mul(&m);
            n *= 2;
        }
        m
    }

    /// Basis (as rows) of `{x : x * self = 0}`.
    pub fn left_nullspace(&self) -> Mat {
        let e = self.echelon();
        let r = e.pivots.len();
        e.transform.block(r, self.rows, 0, self.rows)
    }

    /// Basis (as rows, in RREF) of the row space.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_rows(self)
    }

    /// Solve `X * self = b`; `None` if some row of `b` is outside the row space.
    pub fn solve_left(&self, b: &Mat) -> Result<Option<Mat>> {
        if b.cols != self.cols {
            return Err(Error::Shape(format!(
                "solve: right-hand side has {} columns, matrix has {}",
                b.cols, self.cols
            )));
        }
        let e = self.echelon();
        let f = &self.field;
        let mut x = Mat::zeros(f, b.rows, self.rows);
        for i in 0..b.rows {
            let mut v = b.row(i).to_vec();
            let mut coeff = vec![0u8; self.rows];
            for (k, &pc) in e.pivots.iter().enumerate() {
                let c = v[pc];
                if c != 0 {
                    f.axpy(&mut v, f.neg(c), e.rref.row(k));
                    f.axpy(&mut coeff, c, e.transform.row(k));
                }
            }
            if v.iter().any(|&z| z != 0) {
                return Ok(None);
            }
            x.row_mut(i).copy_from_slice(&coeff);
        }
        Ok(Some(x))
    }

    // --- serialization: "MAT1 p m rows cols" header followed by hex rows ---

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "MAT1 {} {} {} {}\n",
            self.field.characteristic(),
            self.field.degree(),
            self.rows,
            self.cols
        );
        for i in 0..self.rows {
            for &x in self.row(i) {
                s.push_str(&format!("{:02x}", x));
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Mat> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 5 || parts[0] != "MAT1" {
            return Err(Error::Parse(format!("bad matrix header `{header}`")));
        }
        let num = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad number `{s}`")))
        };
        let field = Field::new(num(parts[1])? as u32, num(parts[2])? as u32)?;
        let (rows, cols) = (num(parts[3])?, num(parts[4])?);
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing matrix row".into()))?
                .trim();
            if line.len() != 2 * cols {
                return Err(Error::Parse("matrix row has wrong length".into()));
            }
            for k in 0..cols {
                let x = u8::from_str_radix(&line[2 * k..2 * k + 2], 16)
                    .map_err(|_| Error::Parse("bad hex digit".into()))?;
                if x as usize >= field.order() {
                    return Err(Error::Parse("entry outside the field".into()));
                }
                data.push(x);
            }
        }
        Ok(Mat::from_vec(&field, rows, cols, data))
    }
}

/// Incrementally built semi-echelon basis. Rows are normalised so that the pivot entry is 1
/// and every row is zero at the pivots of the rows inserted before it. Wide rows over GF(2)
/// and GF(4) are stored bit-packed.
#[derive(Clone)]
pub struct RowReducer {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
    packed: Option<PackedReducer>,
}

/// Row length from which GF(2)/GF(4) reducers switch to packed storage.
const PACKED_MIN_COLS: usize = 256;

impl RowReducer {
    pub fn new(field: &Field, cols: usize) -> Self {
        let packed = (packed::supports(field) && cols >= PACKED_MIN_COLS)
            .then(|| PackedReducer::new(field, cols));
        RowReducer {
            field: field.clone(),
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
            packed,
        }
    }

    pub fn rank(&self) -> usize {
        match &self.packed {
            Some(p) => p.rank(),
            None => self.rows.len(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn reduce(&self, v: &mut [Elem]) {
        if let Some(p) = &self.packed {
            return p.reduce(v);
        }
        let f = &self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                f.axpy(v, f.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        if let Some(p) = &self.packed {
            return p.contains(v);
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Reduce and insert; returns true when the rank grew.
    pub fn insert(&mut self, mut v: Vec<Elem>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        if let Some(p) = &mut self.packed {
            return p.insert(&v);
        }
        self.reduce(&mut v);
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(pc) => {
                let inv = self.field.inv(v[pc]);
                self.field.scale(&mut v, inv);
                self.rows.push(v);
                self.pivots.push(pc);
                true
            }
        }
    }

    /// The stored (semi-echelon) rows.
    pub fn basis_rows(&self) -> Vec<Vec<Elem>> {
        match &self.packed {
            Some(p) => p.unpacked_rows(),
            None => self.rows.clone(),
        }
    }

    pub fn into_subspace(self) -> Subspace {
        let rows = self.basis_rows();
        let m = Mat::from_rows(&self.field, self.cols, &rows);
        Subspace::from_rows(&m)
    }
}

/// A subspace of `field^ambient`, stored by its reduced echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {})", self.dim(), self.ambient)
    }
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `m`.
    pub fn from_rows(m: &Mat) -> Subspace {
        let e = m.echelon();
        let r = e.pivots.len();
        Subspace {
            ambient: m.cols(),
            basis: e.rref.block(0, r, 0, m.cols()),
            pivots: e.pivots,
        }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Echelon basis, one vector per row.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Reduce `v` modulo the subspace; the result vanishes at every pivot.
    pub fn reduce(&self, v: &mut [Elem]) {
        let f = self.field();
        for (k, &pc) in self.pivots.iter().enumerate() {
            let c = v[pc];
            if c != 0 {
                f.axpy(v, f.neg(c), self.basis.row(k));
            }
        }
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of a vector known to lie in the subspace (its entries at the pivots).
    pub fn coordinates(&self, v: &[Elem]) -> Vec<Elem> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let f = self.field();
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(f, self.ambient);
        }
        // x A = y B  <=>  [x | y] [A; -B] = 0
        let stacked = self.basis.vstack(&other.basis.scaled(f.neg(1)));
        let null = stacked.left_nullspace();
        let coeffs = null.block(0, null.rows(), 0, self.dim());
        Subspace::from_rows(&coeffs.mul(&self.basis))
    }

    /// Image of the subspace under `m` (acting on row vectors).
    pub fn image(&self, m: &Mat) -> Subspace {
        Subspace::from_rows(&self.basis.mul(m))
    }

    /// Indices of a complement spanned by standard basis vectors (the non-pivot columns).
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }
}

/// The smallest subspace containing `seed` and invariant under every matrix in `actions`.
pub fn spin(seed: &Subspace, actions: &[Mat]) -> Subspace {
    let f = seed.field().clone();
    let n = seed.ambient();
    for a in actions {
        assert!(a.rows() == n && a.cols() == n, "spin: action has the wrong shape");
    }
    let mut rr = RowReducer::new(&f, n);
    let mut queue: Vec<Vec<Elem>> = Vec::new();
    for i in 0..seed.dim() {
        let v = seed.basis().row(i).to_vec();
        if rr.insert(v.clone()) {
            queue.push(v);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head].clone();
        head += 1;
        for a in actions {
            let w = a.vec_mul(&v);
            if rr.insert(w.clone()) {
                queue.push(w);
            }
            if rr.rank() == n {
                return Subspace::full(&f, n);
            }
        }
    }
    rr.into_subspace()
}
