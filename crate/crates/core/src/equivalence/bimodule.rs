//! Bimodules as modules for direct products, tensor products over group algebras computed
//! through balanced bilinear forms, and splitting a block off a bimodule.

use rand::Rng as _;

use crate::block::{Block, BlockDecomposition};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::group::{DirectProduct, Perm, PermGroup};
use crate::linalg::{Basis, Mat, Subspace};
use crate::rep::{hom_space, hom_space_seeded, scott_module, Representation, SpinTree};
use crate::Rng;

/// Largest `dim M * dim N` accepted by the direct coinvariant construction.
pub const COINVARIANT_CAP: usize = 1 << 14;
const SPLIT_TRIES: usize = 16;

/// A `(G, G')`-bimodule, stored as the right `k[G x G']`-module with `m (g, h) = g^-1 m h`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    prod: DirectProduct,
    rep: Representation,
}

impl Bimodule {
    pub fn new(prod: &DirectProduct, rep: Representation) -> Result<Bimodule> {
        if rep.group() != prod.group() {
            return Err(Error::InvalidInput("module is not for the direct product".into()));
        }
        Ok(Bimodule {
            prod: prod.clone(),
            rep,
        })
    }

    /// `kG` with left and right multiplication.
    pub fn regular(group: &PermGroup, field: &Field) -> Result<Bimodule> {
        let prod = DirectProduct::new(group, group);
        let t = group.element_table()?;
        let el = t.elements();
        let mut perms = Vec::new();
        for g in group.generators() {
            let gi = g.inverse();
            perms.push(images(el, |x| t.index_of(&gi.mul(x)).expect("closed")));
        }
        for h in group.generators() {
            perms.push(images(el, |x| t.index_of(&x.mul(h)).expect("closed")));
        }
        let rep = Representation::from_permutations(prod.group(), field, el.len(), perms)?;
        Ok(Bimodule { prod, rep })
    }

    /// The Scott module `S(G x G', D)` for a subgroup `D` of the product.
    pub fn scott(prod: &DirectProduct, sub: &PermGroup, field: &Field, rng: &mut Rng) -> Result<Bimodule> {
        let s = scott_module(prod.group(), sub, field, rng)?;
        Bimodule::new(prod, s.module)
    }

    pub fn product(&self) -> &DirectProduct {
        &self.prod
    }

    pub fn left_group(&self) -> &PermGroup {
        self.prod.left()
    }

    pub fn right_group(&self) -> &PermGroup {
        self.prod.right()
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn field(&self) -> &Field {
        self.rep.field()
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    fn split_at(&self) -> usize {
        self.prod.left().generators().len()
    }

    /// Matrices of `(g, 1)` for the generators `g` of the left group.
    pub fn left_generators(&self) -> &[Mat] {
        &self.rep.generators()[..self.split_at()]
    }

    /// Matrices of `(1, h)` for the generators `h` of the right group.
    pub fn right_generators(&self) -> &[Mat] {
        &self.rep.generators()[self.split_at()..]
    }

    /// The left structure as a right module: `m . g = g^-1 m`.
    pub fn restrict_left(&self) -> Result<Representation> {
        Representation::with_dim(self.left_group(), self.field(), self.dim(), self.left_generators().to_vec())
    }

    /// The right module structure.
    pub fn restrict_right(&self) -> Result<Representation> {
        Representation::with_dim(self.right_group(), self.field(), self.dim(), self.right_generators().to_vec())
    }

    /// `Hom_k(M, k)` as a `(G', G)`-bimodule.
    pub fn dual(&self) -> Bimodule {
        let prod = DirectProduct::new(self.right_group(), self.left_group());
        let inv_t = |a: &Mat| a.inverse().expect("invertible").transpose();
        let mut gens: Vec<Mat> = self.right_generators().iter().map(inv_t).collect();
        gens.extend(self.left_generators().iter().map(inv_t));
        let rep = Representation::with_dim(prod.group(), self.field(), self.dim(), gens)
            .expect("generator count matches");
        Bimodule { prod, rep }
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule> {
        if self.prod != other.prod {
            return Err(Error::InvalidInput("bimodules for different groups".into()));
        }
        Ok(Bimodule {
            prod: self.prod.clone(),
            rep: self.rep.direct_sum(&other.rep)?,
        })
    }

    /// The sub-bimodule spanned by an invariant subspace.
    pub fn submodule(&self, u: &Subspace) -> Result<Bimodule> {
        Ok(Bimodule {
            prod: self.prod.clone(),
            rep: self.rep.submodule(u)?,
        })
    }

    /// The same bimodule for subgroups of both factors given on the same points.
    pub fn restrict(&self, left: &PermGroup, right: &PermGroup) -> Result<Bimodule> {
        let prod = DirectProduct::new(left, right);
        let rep = self.rep.restrict(prod.group())?;
        Ok(Bimodule { prod, rep })
    }

    /// Whether the block idempotents act as the identity on both sides. The left action is
    /// through inverses, so the left test uses the contragredient idempotent.
    pub fn lies_in(
        &self,
        left: (&BlockDecomposition, &Block),
        right: (&BlockDecomposition, &Block),
    ) -> Result<bool> {
        let l = left.0.action_on(&left.1.antipode(left.0.classes()), &self.restrict_left()?)?;
        if !l.is_identity() {
            return Ok(false);
        }
        Ok(right.0.action_on(right.1, &self.restrict_right()?)?.is_identity())
    }
}

fn images(el: &[Perm], f: impl Fn(&Perm) -> usize) -> Perm {
    Perm::from_images(el.iter().map(|x| f(x) as u32).collect()).expect("bijection")
}

/// The action of one outer generator on `U (x) V` before balancing: `u (x) v -> u P (x) v S`.
struct OuterAction {
    left: Option<Mat>,
    right: Option<Mat>,
}

/// `U (x)_{kH} V` where `H` acts on `U` on the right by `a` and on `V` on the left through
/// the right-module matrices `c` (so `h v = v c(h)^-1`).
///
/// The dual of the tensor product is the space of balanced forms `u Y v^T`, which is
/// `Hom_{kH}(U, V^*)`; the outer group acts on forms by `Y -> P Y S^T`, and on the tensor
/// product by the transpose of that action.
fn balanced_tensor(
    middle: &PermGroup,
    field: &Field,
    (a, da): (Vec<Mat>, usize),
    (c, dc): (Vec<Mat>, usize),
    outer: &PermGroup,
    actions: Vec<OuterAction>,
) -> Result<Representation> {
    let x = Representation::with_dim(middle, field, da, a)?;
    let z = Representation::with_dim(middle, field, dc, c)?.dual();
    let forms = hom_space(&x, &z)?;
    let n = forms.len();
    if n == 0 {
        return Ok(Representation::zero_module(outer, field));
    }
    let flat = |y: &Mat| y.data().to_vec();
    let basis = Basis::new(Mat::from_rows(field, da * dc, &forms.iter().map(flat).collect::<Vec<_>>()));
    let mut gens = Vec::with_capacity(actions.len());
    for act in actions {
        let moved: Vec<Vec<Elem>> = forms
            .iter()
            .map(|y| {
                let mut w = y.clone();
                if let Some(p) = &act.left {
                    w = p.mul(&w);
                }
                if let Some(s) = &act.right {
                    w = w.mul(&s.transpose());
                }
                flat(&w)
            })
            .collect();
        let r = basis.coordinates_of_rows(&Mat::from_rows(field, da * dc, &moved));
        gens.push(r.transpose());
    }
    Representation::with_dim(outer, field, n, gens)
}

/// `M (x)_{kG'} N` for a `(G, G')`-bimodule `M` and a `(G', G'')`-bimodule `N`.
pub fn tensor_over_group(m: &Bimodule, n: &Bimodule) -> Result<Bimodule> {
    if m.right_group() != n.left_group() || m.field() != n.field() {
        return Err(Error::InvalidInput("middle groups of the bimodules differ".into()));
    }
    let f = m.field();
    let prod = DirectProduct::new(m.left_group(), n.right_group());
    let mut actions: Vec<OuterAction> = m
        .left_generators()
        .iter()
        .map(|p| OuterAction {
            left: Some(p.clone()),
            right: None,
        })
        .collect();
    actions.extend(n.right_generators().iter().map(|s| OuterAction {
        left: None,
        right: Some(s.clone()),
    }));
    let rep = balanced_tensor(
        m.right_group(),
        f,
        (m.right_generators().to_vec(), m.dim()),
        (n.left_generators().to_vec(), n.dim()),
        prod.group(),
        actions,
    )?;
    Ok(Bimodule { prod, rep })
}

/// `M (x)_B N` for a block `B` of the middle group: both factors must lie in `B` on the
/// middle side, where the tensor product over `B` agrees with the one over the group algebra.
pub fn tensor_over_block(m: &Bimodule, n: &Bimodule, dec: &BlockDecomposition, block: &Block) -> Result<Bimodule> {
    if dec.group() != m.right_group() {
        return Err(Error::InvalidInput("block is not a block of the middle group".into()));
    }
    if !dec.action_on(block, &m.restrict_right()?)?.is_identity() {
        return Err(Error::InvalidInput("left factor does not lie in the block".into()));
    }
    let anti = block.antipode(dec.classes());
    if !dec.action_on(&anti, &n.restrict_left()?)?.is_identity() {
        return Err(Error::InvalidInput("right factor does not lie in the block".into()));
    }
    tensor_over_group(m, n)
}

/// `S (x)_{kG} M` as a right `kG'`-module.
pub fn apply_functor(s: &Representation, m: &Bimodule) -> Result<Representation> {
    if s.group() != m.left_group() || s.field() != m.field() {
        return Err(Error::InvalidInput("module is not for the left group of the bimodule".into()));
    }
    let actions = m
        .right_generators()
        .iter()
        .map(|h| OuterAction {
            left: None,
            right: Some(h.clone()),
        })
        .collect();
    balanced_tensor(
        s.group(),
        s.field(),
        (s.generators().to_vec(), s.dim()),
        (m.left_generators().to_vec(), m.dim()),
        m.right_group(),
        actions,
    )
}

/// [`apply_functor`] for a module that must lie in the given block.
pub fn apply_block_functor(
    s: &Representation,
    m: &Bimodule,
    dec: &BlockDecomposition,
    block: &Block,
) -> Result<Representation> {
    if dec.group() != s.group() || !dec.action_on(block, s)?.is_identity() {
        return Err(Error::InvalidInput("module does not lie in the block".into()));
    }
    apply_functor(s, m)
}

/// `M (x)_{kG'} N` as the quotient of `M (x)_k N` by `m h (x) n - m (x) h n`; used as an
/// independent check of [`tensor_over_group`] on small inputs.
pub fn tensor_coinvariants(m: &Bimodule, n: &Bimodule) -> Result<Bimodule> {
    if m.right_group() != n.left_group() || m.field() != n.field() {
        return Err(Error::InvalidInput("middle groups of the bimodules differ".into()));
    }
    let (a, b) = (m.dim(), n.dim());
    if a * b > COINVARIANT_CAP {
        return Err(Error::CapExceeded {
            what: "dimension of the tensor product over the field",
            limit: COINVARIANT_CAP as u128,
            actual: (a * b) as u128,
        });
    }
    let f = m.field();
    let prod = DirectProduct::new(m.left_group(), n.right_group());
    let mut rel = Vec::new();
    for (ah, ch) in m.right_generators().iter().zip(n.left_generators()) {
        // h n = n c(h)^-1
        let hn = ch.inverse().expect("invertible");
        for i in 0..a {
            for j in 0..b {
                let mut v = vec![0; a * b];
                for (k, &x) in ah.row(i).iter().enumerate() {
                    if x != 0 {
                        v[k * b + j] = f.add(v[k * b + j], x);
                    }
                }
                for (l, &y) in hn.row(j).iter().enumerate() {
                    if y != 0 {
                        v[i * b + l] = f.sub(v[i * b + l], y);
                    }
                }
                rel.push(v);
            }
        }
    }
    let u = Subspace::from_rows(&Mat::from_rows(f, a * b, &rel));
    let id_a = Mat::identity(f, a);
    let id_b = Mat::identity(f, b);
    let mut gens: Vec<Mat> = m.left_generators().iter().map(|p| p.kron(&id_b)).collect();
    gens.extend(n.right_generators().iter().map(|s| id_a.kron(s)));
    let full = Representation::with_dim(prod.group(), f, a * b, gens)?;
    Ok(Bimodule {
        rep: full.quotient(&u)?,
        prod,
    })
}

/// A block `eB` of `kG` as a `(G, G)`-bimodule, with the unit `e` and the trace form
/// (coefficient of the identity) in its basis.
#[derive(Clone, Debug)]
pub struct BlockBimodule {
    pub bimodule: Bimodule,
    pub block: Block,
    /// Coordinates of the block idempotent.
    pub unit: Vec<Elem>,
    /// The linear form `b -> coefficient of 1 in b`, as a row of the dual basis.
    pub trace_form: Vec<Elem>,
}

impl BlockBimodule {
    pub fn new(dec: &BlockDecomposition, block: &Block) -> Result<BlockBimodule> {
        let (_, basis) = dec.block_module(block)?;
        let regular = Bimodule::regular(dec.group(), dec.field())?;
        let rep = regular.rep.restrict_to_basis(&basis)?;
        let unit = basis.coordinates(&dec.group_algebra_vector(block));
        let trace_form = (0..basis.dim()).map(|i| basis.rows().get(i, 0)).collect();
        Ok(BlockBimodule {
            bimodule: Bimodule {
                prod: regular.prod,
                rep,
            },
            block: block.clone(),
            unit,
            trace_form,
        })
    }

    pub fn dim(&self) -> usize {
        self.bimodule.dim()
    }

    /// Homomorphisms `B -> T`; each is fixed by the image of `e`, a diagonal fixed point.
    pub fn homs_to(&self, t: &Bimodule) -> Result<Vec<Mat>> {
        let b = &self.bimodule.rep;
        let fixed = diagonal_fixed_points(t, &t.rep)?;
        if fixed.dim() == 0 {
            return Ok(Vec::new());
        }
        let tree = SpinTree::submodule(b, &[self.unit.clone()]);
        if tree.dim() != b.dim() {
            return hom_space(b, &t.rep);
        }
        hom_space_seeded(b, &tree, &t.rep, &[fixed.basis().clone()])
    }

    /// Homomorphisms `T -> B`, as transposes of maps between the duals; the dual of the block
    /// is generated by the trace form.
    pub fn homs_from(&self, t: &Bimodule) -> Result<Vec<Mat>> {
        let bd = self.bimodule.rep.dual();
        let td = t.rep.dual();
        let fixed = diagonal_fixed_points(t, &td)?;
        if fixed.dim() == 0 {
            return Ok(Vec::new());
        }
        let tree = SpinTree::submodule(&bd, &[self.trace_form.clone()]);
        let homs = if tree.dim() == bd.dim() {
            hom_space_seeded(&bd, &tree, &td, &[fixed.basis().clone()])?
        } else {
            hom_space(&bd, &td)?
        };
        Ok(homs.iter().map(|h| h.transpose()).collect())
    }
}

fn diagonal_fixed_points(t: &Bimodule, rep: &Representation) -> Result<Subspace> {
    if t.left_group() != t.right_group() {
        return Err(Error::InvalidInput("a block splits only off a (G, G)-bimodule".into()));
    }
    let diag = t.prod.diagonal_of(t.left_group())?;
    rep.fixed_points(&diag)
}

/// `T = B (+) X` with explicit maps.
#[derive(Clone, Debug)]
pub struct BlockSplit {
    /// `B -> T`.
    pub embedding: Mat,
    /// `T -> B`, with `embedding * retraction = 1`.
    pub retraction: Mat,
    pub complement: Bimodule,
    /// Basis of the complement inside `T`.
    pub complement_basis: Mat,
}

/// Split a copy of the block off `t`, if `t` has one as a summand.
pub fn split_block_summand(t: &Bimodule, b: &BlockBimodule, rng: &mut Rng) -> Result<Option<BlockSplit>> {
    if t.prod != b.bimodule.prod || t.dim() < b.dim() {
        return Ok(None);
    }
    let to = b.homs_to(t)?;
    if to.is_empty() {
        return Ok(None);
    }
    let from = b.homs_from(t)?;
    if from.is_empty() {
        return Ok(None);
    }
    let f = t.field();
    let q = f.order();
    for attempt in 0..SPLIT_TRIES {
        let (x, y) = if attempt == 0 {
            (to[0].clone(), from[0].clone())
        } else {
            let mut x = Mat::zeros(f, b.dim(), t.dim());
            for h in &to {
                x.add_scaled(rng.gen_range(0..q) as Elem, h);
            }
            let mut y = Mat::zeros(f, t.dim(), b.dim());
            for h in &from {
                y.add_scaled(rng.gen_range(0..q) as Elem, h);
            }
            (x, y)
        };
        let Some(uinv) = x.mul(&y).inverse() else {
            continue;
        };
        let retraction = y.mul(&uinv);
        let e = retraction.mul(&x);
        let comp = Mat::identity(f, t.dim()).sub(&e).row_space();
        let complement = t.submodule(&comp)?;
        return Ok(Some(BlockSplit {
            embedding: x,
            retraction,
            complement,
            complement_basis: comp.basis().clone(),
        }));
    }
    Ok(None)
}
