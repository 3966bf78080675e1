//! Module homomorphisms by spinning: a map is fixed by the images of a few generating vectors,
//! and the relations met while spinning cut out the admissible images.

use rand::Rng as _;

use super::Representation;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Mat;
use crate::Rng;

/// How a spin basis vector arose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Seed,
    /// `basis[parent] * generator`.
    Image(usize, usize),
}

/// A relation `basis[j] * generator = sum c_l basis[l]`, found when the basis had `time` vectors.
#[derive(Clone, Debug)]
pub struct Relation {
    pub j: usize,
    pub gen: usize,
    pub coeffs: Vec<(usize, Elem)>,
    pub time: usize,
}

/// A basis of a module obtained by spinning, with the relations closing it.
#[derive(Clone, Debug)]
pub struct SpinTree {
    pub basis: Vec<Vec<Elem>>,
    pub origin: Vec<Origin>,
    pub relations: Vec<Relation>,
}

struct Tracked {
    field: Field,
    rows: Vec<(Vec<Elem>, Vec<Elem>, usize)>,
    count: usize,
}

impl Tracked {
    /// Either the new basis index or the coordinates of `w` in the current basis.
    fn insert(&mut self, w: &[Elem]) -> std::result::Result<usize, Vec<Elem>> {
        let f = &self.field;
        let mut v = w.to_vec();
        let mut acc = vec![0; self.count + 1];
        for (rv, rc, p) in &self.rows {
            let c = v[*p];
            if c != 0 {
                f.axpy(&mut v, f.neg(c), rv);
                f.axpy(&mut acc[..rc.len()], c, rc);
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => {
                acc.pop();
                Err(acc)
            }
            Some(p) => {
                // v = w - acc.b, and w becomes basis vector `count`
                let mut comb: Vec<Elem> = acc.iter().map(|&c| f.neg(c)).collect();
                comb[self.count] = 1;
                let inv = f.inv(v[p]);
                f.scale(&mut v, inv);
                f.scale(&mut comb, inv);
                self.rows.push((v, comb, p));
                self.count += 1;
                Ok(self.count - 1)
            }
        }
    }
}

impl SpinTree {
    /// Spin the whole module, starting from `seeds` and then from standard basis vectors.
    pub fn new(m: &Representation, seeds: &[Vec<Elem>]) -> SpinTree {
        Self::build(m, seeds, true)
    }

    /// Spin only the submodule generated by `seeds`.
    pub fn submodule(m: &Representation, seeds: &[Vec<Elem>]) -> SpinTree {
        Self::build(m, seeds, false)
    }

    fn build(m: &Representation, seeds: &[Vec<Elem>], whole: bool) -> SpinTree {
        let n = m.dim();
        let ngens = m.group().generators().len();
        let mut tr = Tracked {
            field: m.field().clone(),
            rows: Vec::new(),
            count: 0,
        };
        let mut t = SpinTree {
            basis: Vec::new(),
            origin: Vec::new(),
            relations: Vec::new(),
        };
        let mut next_seed = 0;
        let mut next_unit = 0;
        let mut head = 0;
        loop {
            while head < t.basis.len() {
                for gi in 0..ngens {
                    let w = m.act_gen(&t.basis[head], gi);
                    match tr.insert(&w) {
                        Ok(_) => {
                            t.basis.push(w);
                            t.origin.push(Origin::Image(head, gi));
                        }
                        Err(c) => {
                            let coeffs = c.iter().enumerate().filter(|(_, &x)| x != 0).map(|(l, &x)| (l, x)).collect();
                            t.relations.push(Relation {
                                j: head,
                                gen: gi,
                                coeffs,
                                time: t.basis.len(),
                            });
                        }
                    }
                }
                head += 1;
            }
            // next generator vector
            let mut added = false;
            while next_seed < seeds.len() && !added {
                let s = &seeds[next_seed];
                next_seed += 1;
                if tr.insert(s).is_ok() {
                    t.basis.push(s.clone());
                    t.origin.push(Origin::Seed);
                    added = true;
                }
            }
            while whole && !added && next_unit < n && t.basis.len() < n {
                let mut e = vec![0; n];
                e[next_unit] = 1;
                next_unit += 1;
                if tr.insert(&e).is_ok() {
                    t.basis.push(e);
                    t.origin.push(Origin::Seed);
                    added = true;
                }
            }
            if !added {
                break;
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn seed_count(&self) -> usize {
        self.origin.iter().filter(|o| **o == Origin::Seed).count()
    }

    pub fn basis_matrix(&self, f: &Field, ambient: usize) -> Mat {
        Mat::from_rows(f, ambient, &self.basis)
    }
}

/// Multiply every row of `h` by the action of generator `gi` of `n`.
fn act_rows(n: &Representation, h: &Mat, gi: usize) -> Mat {
    if n.permutation_generators().is_some() {
        let rows: Vec<Vec<Elem>> = (0..h.rows()).map(|i| n.act_gen(h.row(i), gi)).collect();
        Mat::from_rows(n.field(), n.dim(), &rows)
    } else {
        h.mul(&n.generators()[gi])
    }
}

/// A basis of `Hom_{kG}(M, N)`; each map is a `dim M x dim N` matrix `X` with
/// `rho_M(g) X = X rho_N(g)`.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<Mat>> {
    if m.group() != n.group() || m.field() != n.field() {
        return Err(Error::InvalidInput("hom between modules of different groups".into()));
    }
    let f = m.field().clone();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let tree = SpinTree::new(m, &[]);
    let free = vec![Mat::identity(&f, dn); tree.seed_count()];
    hom_from_tree(&tree, n, &free, &f, dm, dn)
}

/// Homomorphisms out of a module spanned by `tree`, with the image of the `s`-th seed
/// constrained to the row space of `seed_images[s]`.
pub fn hom_space_seeded(
    m: &Representation,
    tree: &SpinTree,
    n: &Representation,
    seed_images: &[Mat],
) -> Result<Vec<Mat>> {
    if m.group() != n.group() || m.field() != n.field() {
        return Err(Error::InvalidInput("hom between modules of different groups".into()));
    }
    if tree.dim() != m.dim() || seed_images.len() != tree.seed_count() {
        return Err(Error::InvalidInput("spin tree does not span the module".into()));
    }
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(Vec::new());
    }
    hom_from_tree(tree, n, seed_images, m.field(), m.dim(), n.dim())
}

fn hom_from_tree(
    tree: &SpinTree,
    n: &Representation,
    seed_images: &[Mat],
    f: &Field,
    dm: usize,
    dn: usize,
) -> Result<Vec<Mat>> {
    let mut h: Vec<Mat> = Vec::with_capacity(dm);
    let mut d = 0usize;
    let mut rel_idx = 0;
    let mut next_seed = 0;
    let mut rels: Vec<&Relation> = tree.relations.iter().collect();
    rels.sort_by_key(|r| r.time);
    for j in 0..tree.dim() {
        match tree.origin[j] {
            Origin::Seed => {
                let s = &seed_images[next_seed];
                next_seed += 1;
                let r = s.rows();
                for hl in h.iter_mut() {
                    *hl = hl.vstack(&Mat::zeros(f, r, dn));
                }
                h.push(Mat::zeros(f, d, dn).vstack(s));
                d += r;
            }
            Origin::Image(p, gi) => {
                let next = act_rows(n, &h[p], gi);
                h.push(next);
            }
        }
        while rel_idx < rels.len() && rels[rel_idx].time == j + 1 {
            let r = rels[rel_idx];
            rel_idx += 1;
            if d == 0 {
                continue;
            }
            let mut c = act_rows(n, &h[r.j], r.gen);
            for &(l, x) in &r.coeffs {
                c.add_scaled(f.neg(x), &h[l]);
            }
            if c.is_zero() {
                continue;
            }
            let k = c.left_nullspace();
            d = k.rows();
            for hl in h.iter_mut() {
                *hl = k.mul(hl);
            }
        }
    }
    debug_assert_eq!(rel_idx, rels.len());
    let binv = tree
        .basis_matrix(f, dm)
        .inverse()
        .expect("spin basis is a basis");
    let mut out = Vec::with_capacity(d);
    for t in 0..d {
        let mut fm = Mat::zeros(f, dm, dn);
        for (j, hj) in h.iter().enumerate() {
            fm.row_mut(j).copy_from_slice(hj.row(t));
        }
        out.push(binv.mul(&fm));
    }
    Ok(out)
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// The homomorphism sending the seeds of `tree` (a spin of `m`) to `images`, if it exists.
pub fn cyclic_hom(
    m: &Representation,
    tree: &SpinTree,
    n: &Representation,
    images: &[Vec<Elem>],
) -> Option<Mat> {
    let f = m.field();
    let mut img: Vec<Vec<Elem>> = Vec::with_capacity(tree.dim());
    let mut si = 0;
    for j in 0..tree.dim() {
        match tree.origin[j] {
            Origin::Seed => {
                img.push(images.get(si)?.clone());
                si += 1;
            }
            Origin::Image(p, gi) => img.push(n.act_gen(&img[p], gi)),
        }
    }
    for r in &tree.relations {
        let mut lhs = n.act_gen(&img[r.j], r.gen);
        for &(l, x) in &r.coeffs {
            f.axpy(&mut lhs, f.neg(x), &img[l]);
        }
        if lhs.iter().any(|&x| x != 0) {
            return None;
        }
    }
    if tree.dim() != m.dim() {
        return None;
    }
    let binv = tree.basis_matrix(f, m.dim()).inverse()?;
    Some(binv.mul(&Mat::from_rows(f, n.dim(), &img)))
}

/// An isomorphism `M -> N`, searched among random combinations of a hom-space basis.
pub fn isomorphism(m: &Representation, n: &Representation, rng: &mut Rng) -> Result<Option<Mat>> {
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(Mat::zeros(m.field(), 0, 0)));
    }
    let homs = hom_space(m, n)?;
    Ok(invertible_combination(m.field(), &homs, rng))
}

pub(crate) fn invertible_combination(f: &Field, homs: &[Mat], rng: &mut Rng) -> Option<Mat> {
    if homs.is_empty() {
        return None;
    }
    for h in homs {
        if h.is_invertible() {
            return Some(h.clone());
        }
    }
    let q = f.order();
    for _ in 0..48 {
        let mut x = Mat::zeros(f, homs[0].rows(), homs[0].cols());
        for h in homs {
            x.add_scaled(rng.gen_range(0..q) as Elem, h);
        }
        if x.is_invertible() {
            return Some(x);
        }
    }
    None
}

pub fn is_isomorphic(m: &Representation, n: &Representation, rng: &mut Rng) -> Result<bool> {
    Ok(isomorphism(m, n, rng)?.is_some())
}
