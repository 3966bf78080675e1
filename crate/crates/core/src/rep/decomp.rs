//! Indecomposability certificates and direct-sum decompositions via endomorphism rings.

use rand::Rng as _;

use super::hom::hom_space;
use super::Representation;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{Basis, Krylov, Mat, Poly, RowReducer, Subspace};
use crate::Rng;

/// Random endomorphisms tried before concluding that no splitting is visible over the field.
const RANDOM_FITTING_TRIES: usize = 64;

pub fn endomorphism_ring(m: &Representation) -> Result<Vec<Mat>> {
    hom_space(m, m)
}

/// Outcome of looking for a Fitting decomposition of the row-vector action of `e`.
#[derive(Clone, Debug)]
pub enum FittingSplit {
    /// `e - lambda` is nilpotent.
    ScalarPlusNilpotent(Elem),
    /// `V = kernel (+) image` of a stable power of `e - lambda` (or of a root-free factor).
    Split { kernel: Subspace, image: Subspace },
    /// The random Krylov vector saw no eigenvalue in the field and no split.
    NoEigenvalue,
}

fn poly_of_matrix(p: &Poly, e: &Mat) -> Mat {
    let n = e.rows();
    let f = e.field();
    let mut acc = Mat::zeros(f, n, n);
    for &c in p.coeffs.iter().rev() {
        acc = acc.mul(e);
        acc.add_scaled(c, &Mat::identity(f, n));
    }
    acc
}

fn split_by(a: &Mat) -> Option<(Subspace, Subspace)> {
    let s = a.stable_power();
    if s.is_zero() {
        return None;
    }
    let kernel = Subspace::from_rows(&s.left_nullspace());
    if kernel.is_zero() {
        return None;
    }
    Some((kernel, s.row_space()))
}

pub fn fitting_split(e: &Mat, rng: &mut Rng) -> FittingSplit {
    let f = e.field().clone();
    let n = e.rows();
    if n == 0 {
        return FittingSplit::ScalarPlusNilpotent(0);
    }
    let q = f.order();
    let v0: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..q) as Elem).collect();
    let v0 = if v0.iter().all(|&x| x == 0) {
        let mut v = v0;
        v[0] = 1;
        v
    } else {
        v0
    };
    let kr = Krylov::new(&f, v0, |v| e.vec_mul(v));
    let parts = kr.min_poly.root_power_split(&f);
    let id = Mat::identity(&f, n);
    for (root, part) in &parts {
        let a = match root {
            Some(l) => e.sub(&id.scaled(*l)),
            None => poly_of_matrix(part, e),
        };
        match split_by(&a) {
            Some((kernel, image)) => return FittingSplit::Split { kernel, image },
            None => {
                if let Some(l) = root {
                    return FittingSplit::ScalarPlusNilpotent(*l);
                }
            }
        }
    }
    FittingSplit::NoEigenvalue
}

/// Evidence that an endomorphism algebra is local with residue field the base field: every
/// basis element is `lambda_i + n_i`, and the span of the `n_i` is nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCertificate {
    pub end_dim: usize,
    pub eigenvalues: Vec<Elem>,
    pub nilpotency_index: usize,
}

#[derive(Clone, Debug)]
pub enum Locality {
    Local(LocalCertificate),
    Split { kernel: Subspace, image: Subspace },
}

fn flatten(m: &Mat) -> Vec<Elem> {
    m.data().to_vec()
}

/// Is the span of `js` a nilpotent space of matrices (closed or not under products)?
fn nilpotency_index(f: &Field, n: usize, js: &[Mat]) -> Option<usize> {
    let mut level: Vec<Mat> = {
        let mut r = RowReducer::new(f, n * n);
        js.iter().filter(|m| r.insert(flatten(m))).cloned().collect()
    };
    let mut index = 1;
    let bound = n + 1;
    while !level.is_empty() {
        if index > bound {
            return None;
        }
        let mut r = RowReducer::new(f, n * n);
        let mut next = Vec::new();
        for w in &level {
            for j in js {
                let p = w.mul(j);
                if !p.is_zero() && r.insert(flatten(&p)) {
                    next.push(p);
                }
            }
        }
        if next.len() >= level.len() && index > 1 {
            // the products no longer shrink; the powers cannot reach zero
            let mut all = RowReducer::new(f, n * n);
            for w in &level {
                all.insert(flatten(w));
            }
            if next.iter().all(|p| all.contains(&flatten(p))) {
                return None;
            }
        }
        level = next;
        index += 1;
    }
    Some(index - 1)
}

/// Decide locality of the algebra spanned by `basis` (endomorphisms of a `dim`-dimensional
/// module), or exhibit a Fitting splitting of the module.
pub fn local_certificate(field: &Field, dim: usize, basis: &[Mat], rng: &mut Rng) -> Result<Locality> {
    let id = Mat::identity(field, dim);
    let mut eigenvalues = Vec::new();
    let mut js = Vec::new();
    let mut all_scalar_nilpotent = true;
    for e in basis {
        match fitting_split(e, rng) {
            FittingSplit::ScalarPlusNilpotent(l) => {
                eigenvalues.push(l);
                js.push(e.sub(&id.scaled(l)));
            }
            FittingSplit::Split { kernel, image } => return Ok(Locality::Split { kernel, image }),
            FittingSplit::NoEigenvalue => {
                all_scalar_nilpotent = false;
                break;
            }
        }
    }
    if all_scalar_nilpotent {
        if let Some(k) = nilpotency_index(field, dim, &js) {
            return Ok(Locality::Local(LocalCertificate {
                end_dim: basis.len(),
                eigenvalues,
                nilpotency_index: k,
            }));
        }
    }
    let q = field.order();
    for _ in 0..RANDOM_FITTING_TRIES {
        let mut x = Mat::zeros(field, dim, dim);
        for b in basis {
            x.add_scaled(rng.gen_range(0..q) as Elem, b);
        }
        if let FittingSplit::Split { kernel, image } = fitting_split(&x, rng) {
            return Ok(Locality::Split { kernel, image });
        }
    }
    Err(Error::NotSplittingField {
        p: field.characteristic(),
        m: field.degree(),
        suggested: field.degree() * 2,
        what: "endomorphism ring has a residue field larger than the base field".into(),
    })
}

pub fn is_indecomposable(m: &Representation, rng: &mut Rng) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    let end = endomorphism_ring(m)?;
    Ok(matches!(local_certificate(m.field(), m.dim(), &end, rng)?, Locality::Local(_)))
}

/// One summand: the module in its own basis and that basis in ambient coordinates.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub basis: Mat,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.module.dim()).collect()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Projection matrices `dim M x dim S_i` onto each summand along the others.
    pub fn projections(&self, m: &Representation) -> Vec<Mat> {
        let f = m.field();
        let n = m.dim();
        let mut stacked = Mat::zeros(f, 0, n);
        for s in &self.summands {
            stacked = stacked.vstack(&s.basis);
        }
        let inv = stacked.inverse().expect("summand bases form a basis");
        let mut out = Vec::new();
        let mut c0 = 0;
        for s in &self.summands {
            let d = s.module.dim();
            out.push(inv.block(0, n, c0, c0 + d));
            c0 += d;
        }
        out
    }
}

/// Krull-Schmidt decomposition by recursive Fitting splitting, each piece certified local.
pub fn decompose(m: &Representation, rng: &mut Rng) -> Result<Decomposition> {
    let mut out = Vec::new();
    if m.dim() > 0 {
        let id = Mat::identity(m.field(), m.dim());
        split_rec(m.clone(), id, rng, &mut out)?;
    }
    out.sort_by(|a, b| {
        (a.module.dim(), a.basis.data()).cmp(&(b.module.dim(), b.basis.data()))
    });
    Ok(Decomposition { summands: out })
}

fn split_rec(m: Representation, basis: Mat, rng: &mut Rng, out: &mut Vec<Summand>) -> Result<()> {
    let end = endomorphism_ring(&m)?;
    match local_certificate(m.field(), m.dim(), &end, rng)? {
        Locality::Local(_) => {
            out.push(Summand { module: m, basis });
            Ok(())
        }
        Locality::Split { kernel, image } => {
            for part in [kernel, image] {
                let b = Basis::from_subspace(&part);
                let sub = m.restrict_to_basis(&b)?;
                let amb = b.rows().mul(&basis);
                split_rec(sub, amb, rng, out)?;
            }
            Ok(())
        }
    }
}

/// For indecomposable `m`: maps `a: M -> N`, `b: N -> M` with `a b` invertible, when `M | N`.
pub fn is_direct_summand(m: &Representation, n: &Representation, rng: &mut Rng) -> Result<Option<(Mat, Mat)>> {
    if m.dim() == 0 {
        return Ok(Some((Mat::zeros(m.field(), 0, n.dim()), Mat::zeros(m.field(), n.dim(), 0))));
    }
    if m.dim() > n.dim() {
        return Ok(None);
    }
    let a = hom_space(m, n)?;
    if a.is_empty() {
        return Ok(None);
    }
    let b = hom_space(n, m)?;
    for x in &a {
        for y in &b {
            if x.mul(y).is_invertible() {
                return Ok(Some((x.clone(), y.clone())));
            }
        }
    }
    // over a local endomorphism ring the pairwise test is exhaustive; random combinations
    // guard against a non-local input
    let q = m.field().order();
    for _ in 0..16 {
        let mut x = Mat::zeros(m.field(), m.dim(), n.dim());
        for h in &a {
            x.add_scaled(rng.gen_range(0..q) as Elem, h);
        }
        let mut y = Mat::zeros(m.field(), n.dim(), m.dim());
        for h in &b {
            y.add_scaled(rng.gen_range(0..q) as Elem, h);
        }
        if x.mul(&y).is_invertible() {
            return Ok(Some((x, y)));
        }
    }
    Ok(None)
}
