//! Modules over group algebras, given by one matrix (or permutation) per group generator.
//!
//! Modules are right modules and vectors are rows: `v * rho(g)`.

mod decomp;
mod hecke;
mod hom;
mod meataxe;
mod proj;

use std::sync::{Arc, Mutex, OnceLock};

pub use decomp::{
    decompose, endomorphism_ring, fitting_split, is_direct_summand, is_indecomposable,
    local_certificate, Decomposition, FittingSplit, LocalCertificate, Locality, Summand,
};
pub use hecke::{scott_module, HeckeAlgebra, ScottModule};
pub use hom::{
    cyclic_hom, hom_dim, hom_space, hom_space_seeded, is_isomorphic, isomorphism, SpinTree,
};
pub use meataxe::{
    composition_factors, distinct_simples, find_submodule, is_absolutely_irreducible,
    is_irreducible, radical, simple_modules, socle, top,
};
pub use proj::{
    higman_certificate, is_projective, is_relatively_projective, is_summand_of_induced,
    is_trivial_source, relative_trace_endomorphism, sylow_order, vertex, Projectivity,
};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::group::{eval_slp, CosetSpace, Perm, PermGroup};
use crate::linalg::{Basis, Mat, Subspace};

/// A finite-dimensional right module for a permutation group over a finite field.
#[derive(Clone)]
pub struct Representation {
    group: PermGroup,
    field: Field,
    dim: usize,
    perms: Option<Arc<Vec<Perm>>>,
    mats: Arc<OnceLock<Vec<Mat>>>,
    memo: Arc<Mutex<Vec<Option<Mat>>>>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Representation(dim {} of {:?} over {:?})", self.dim, self.group, self.field)
    }
}

impl Representation {
    /// A module from one invertible matrix per generator of `group`.
    pub fn new(group: &PermGroup, field: &Field, gens: Vec<Mat>) -> Result<Representation> {
        if gens.len() != group.generators().len() {
            return Err(Error::InvalidInput(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let dim = gens.first().map_or(0, |m| m.rows());
        for m in &gens {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape("generator matrices must be square of one size".into()));
            }
            if m.field() != field {
                return Err(Error::InvalidInput("matrix over a different field".into()));
            }
        }
        if gens.is_empty() {
            return Err(Error::InvalidInput(
                "a group without generators needs an explicit dimension; use zero_module or trivial".into(),
            ));
        }
        Ok(Self::from_parts(group, field, dim, gens))
    }

    /// Build without validation; `gens` must have the right count and shape.
    pub(crate) fn from_parts(group: &PermGroup, field: &Field, dim: usize, gens: Vec<Mat>) -> Representation {
        let mats = OnceLock::new();
        let _ = mats.set(gens);
        Representation {
            group: group.clone(),
            field: field.clone(),
            dim,
            perms: None,
            mats: Arc::new(mats),
            memo: Arc::new(Mutex::new(Vec::new())),
        }
    }

    /// Like [`Representation::new`] but also accepts generator-free groups by taking the
    /// dimension explicitly.
    pub fn with_dim(group: &PermGroup, field: &Field, dim: usize, gens: Vec<Mat>) -> Result<Representation> {
        if gens.is_empty() && group.generators().is_empty() {
            return Ok(Self::from_parts(group, field, dim, gens));
        }
        let r = Self::new(group, field, gens)?;
        if r.dim != dim {
            return Err(Error::Shape("dimension does not match the matrices".into()));
        }
        Ok(r)
    }

    /// The module with basis permuted by `perms` (one per generator): `e_i * g = e_{g(i)}`.
    pub fn from_permutations(group: &PermGroup, field: &Field, dim: usize, perms: Vec<Perm>) -> Result<Representation> {
        if perms.len() != group.generators().len() {
            return Err(Error::InvalidInput("one permutation per generator expected".into()));
        }
        if perms.iter().any(|p| p.degree() != dim) {
            return Err(Error::Shape("permutation degree differs from the dimension".into()));
        }
        Ok(Representation {
            group: group.clone(),
            field: field.clone(),
            dim,
            perms: Some(Arc::new(perms)),
            mats: Arc::new(OnceLock::new()),
            memo: Arc::new(Mutex::new(Vec::new())),
        })
    }

    pub fn zero_module(group: &PermGroup, field: &Field) -> Representation {
        let gens = vec![Mat::zeros(field, 0, 0); group.generators().len()];
        Self::from_parts(group, field, 0, gens)
    }

    pub fn trivial(group: &PermGroup, field: &Field) -> Representation {
        let gens = vec![Mat::identity(field, 1); group.generators().len()];
        Self::from_parts(group, field, 1, gens)
    }

    /// `k_H` induced to `G`, on the permutation basis of the right cosets of `H`.
    pub fn permutation_module(group: &PermGroup, sub: &PermGroup, field: &Field) -> Result<Representation> {
        let cs = CosetSpace::new(group, sub)?;
        Self::from_permutations(group, field, cs.len(), cs.action_perms())
    }

    /// The right regular module, basis indexed by the element table.
    pub fn regular(group: &PermGroup, field: &Field) -> Result<Representation> {
        let t = group.element_table()?;
        let el = t.elements();
        let perms = group
            .generators()
            .iter()
            .map(|g| {
                let imgs = el
                    .iter()
                    .map(|x| t.index_of(&x.mul(g)).expect("closed") as u32)
                    .collect();
                Perm::from_images(imgs).expect("bijection")
            })
            .collect();
        Self::from_permutations(group, field, el.len(), perms)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Generator matrices (materialised on first use for permutation modules).
    pub fn generators(&self) -> &[Mat] {
        self.mats.get_or_init(|| {
            let perms = self.perms.as_ref().expect("matrix or permutation action");
            perms
                .iter()
                .map(|p| {
                    let imgs: Vec<usize> = p.images().iter().map(|&x| x as usize).collect();
                    Mat::permutation(&self.field, &imgs)
                })
                .collect()
        })
    }

    /// Permutations of the basis, for permutation modules.
    pub fn permutation_generators(&self) -> Option<&[Perm]> {
        self.perms.as_deref().map(|v| v.as_slice())
    }

    /// `v * rho(generator gi)`.
    pub fn act_gen(&self, v: &[Elem], gi: usize) -> Vec<Elem> {
        match &self.perms {
            Some(p) => {
                let mut out = vec![0; self.dim];
                for (i, &x) in v.iter().enumerate() {
                    out[p[gi].apply(i as u32) as usize] = x;
                }
                out
            }
            None => self.generators()[gi].vec_mul(v),
        }
    }

    /// Action of a group element on the basis, for permutation modules.
    pub fn perm_of(&self, x: &Perm) -> Result<Option<Perm>> {
        let Some(perms) = &self.perms else {
            return Ok(None);
        };
        let nodes = self.factor(x)?;
        let chain = self.group.chain();
        let mut memo = Vec::new();
        let mut acc = Perm::identity(self.dim);
        for n in nodes {
            let v = eval_slp(
                chain.slp(),
                n,
                &mut memo,
                &|| Perm::identity(self.dim),
                &|i| perms[i].clone(),
                &|a, b| a.mul(b),
                &|a| a.inverse(),
            );
            acc = acc.mul(&v);
        }
        Ok(Some(acc))
    }

    fn factor(&self, x: &Perm) -> Result<Vec<usize>> {
        self.group.factor(x).ok_or_else(|| {
            Error::NotSubgroup(format!("{} is not an element of the group", x.cycle_string()))
        })
    }

    /// The matrix of an arbitrary group element.
    pub fn matrix_of(&self, x: &Perm) -> Result<Mat> {
        if let Some(p) = self.perm_of(x)? {
            let imgs: Vec<usize> = p.images().iter().map(|&y| y as usize).collect();
            return Ok(Mat::permutation(&self.field, &imgs));
        }
        let nodes = self.factor(x)?;
        let gens = self.generators();
        let chain = self.group.chain();
        let mut memo = self.memo.lock().expect("memo lock");
        let mut acc = Mat::identity(&self.field, self.dim);
        for n in nodes {
            let v = eval_slp(
                chain.slp(),
                n,
                &mut memo,
                &|| Mat::identity(&self.field, self.dim),
                &|i| gens[i].clone(),
                &|a, b| a.mul(b),
                &|a| a.inverse().expect("generator matrices are invertible"),
            );
            acc = acc.mul(&v);
        }
        Ok(acc)
    }

    /// Check that the generator matrices satisfy a defining set of relations of the group.
    pub fn verify_relations(&self) -> bool {
        if self.perms.is_some() {
            return true;
        }
        let gens = self.generators();
        if gens.iter().any(|g| !g.is_invertible()) {
            return false;
        }
        let chain = self.group.chain();
        let mut memo: Vec<Option<Mat>> = Vec::new();
        let mut eval = |nodes: &[usize]| {
            let mut acc = Mat::identity(&self.field, self.dim);
            for &n in nodes {
                let v = eval_slp(
                    chain.slp(),
                    n,
                    &mut memo,
                    &|| Mat::identity(&self.field, self.dim),
                    &|i| gens[i].clone(),
                    &|a, b| a.mul(b),
                    &|a| a.inverse().expect("invertible"),
                );
                acc = acc.mul(&v);
            }
            acc
        };
        // each original generator must agree with its sifted form
        for (gi, g) in self.group.generators().iter().enumerate() {
            let nodes = chain.factor(g).expect("generator is in the group");
            if eval(&nodes) != gens[gi] {
                return false;
            }
        }
        chain
            .presentation_relations()
            .iter()
            .all(|(l, r)| eval(l) == eval(r))
    }

    /// The same vector space as a module for another group, with `map` sending that group's
    /// generators into this module's group.
    pub fn pullback(&self, target: &PermGroup, map: impl Fn(&Perm) -> Perm) -> Result<Representation> {
        let gens = target
            .generators()
            .iter()
            .map(|y| self.matrix_of(&map(y)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(target, &self.field, self.dim, gens))
    }

    pub fn restrict(&self, sub: &PermGroup) -> Result<Representation> {
        if !self.group.contains_group(sub) {
            return Err(Error::NotSubgroup("restriction to a non-subgroup".into()));
        }
        if let Some(_) = &self.perms {
            let perms = sub
                .generators()
                .iter()
                .map(|y| Ok(self.perm_of(y)?.expect("permutation module")))
                .collect::<Result<Vec<_>>>()?;
            return Self::from_permutations(sub, &self.field, self.dim, perms);
        }
        self.pullback(sub, |y| y.clone())
    }

    /// Induction to an overgroup, on blocks indexed by the right cosets of this module's group.
    pub fn induce(&self, overgroup: &PermGroup) -> Result<Representation> {
        let cs = CosetSpace::new(overgroup, &self.group)?;
        let n = cs.len();
        let d = self.dim;
        let f = &self.field;
        let mut gens = Vec::new();
        for (gi, x) in overgroup.generators().iter().enumerate() {
            let mut m = Mat::zeros(f, n * d, n * d);
            let act = cs.generator_action(gi);
            for i in 0..n {
                let j = act[i] as usize;
                let h = cs.reps()[i].mul(x).mul(&cs.reps()[j].inverse());
                let b = self.matrix_of(&h)?;
                for a in 0..d {
                    m.row_mut(i * d + a)[j * d..(j + 1) * d].copy_from_slice(b.row(a));
                }
            }
            gens.push(m);
        }
        Ok(Self::from_parts(overgroup, f, n * d, gens))
    }

    fn same_group(&self, other: &Representation) -> Result<()> {
        if self.group != other.group || self.field != other.field {
            return Err(Error::InvalidInput("modules for different groups or fields".into()));
        }
        Ok(())
    }

    /// Tensor product over the field with the diagonal action.
    pub fn tensor(&self, other: &Representation) -> Result<Representation> {
        self.same_group(other)?;
        let gens = self
            .generators()
            .iter()
            .zip(other.generators())
            .map(|(a, b)| a.kron(b))
            .collect();
        Ok(Self::from_parts(&self.group, &self.field, self.dim * other.dim, gens))
    }

    /// The contragredient module (inverse transpose).
    pub fn dual(&self) -> Representation {
        let gens = self
            .generators()
            .iter()
            .map(|a| a.inverse().expect("invertible").transpose())
            .collect();
        Self::from_parts(&self.group, &self.field, self.dim, gens)
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.same_group(other)?;
        let n = self.dim + other.dim;
        let gens = self
            .generators()
            .iter()
            .zip(other.generators())
            .map(|(a, b)| block_diagonal(a, b))
            .collect::<Vec<_>>();
        Ok(Self::from_parts(&self.group, &self.field, n, gens))
    }

    /// The module in a new basis: rows of `basis` (invertible) become the basis vectors.
    pub fn change_basis(&self, basis: &Mat) -> Result<Representation> {
        let b = Basis::new(basis.clone());
        if b.dim() != self.dim {
            return Err(Error::Shape("change of basis must be square".into()));
        }
        self.restrict_to_basis(&b)
    }

    /// The submodule spanned by a basis (which must be invariant), in that basis.
    pub fn restrict_to_basis(&self, basis: &Basis) -> Result<Representation> {
        let f = &self.field;
        let mut gens = Vec::new();
        for gi in 0..self.group.generators().len() {
            let mut m = Mat::zeros(f, basis.dim(), basis.dim());
            for i in 0..basis.dim() {
                let w = self.act_gen(basis.rows().row(i), gi);
                let c = basis
                    .try_coordinates(&w)
                    .ok_or_else(|| Error::InvalidInput("subspace is not a submodule".into()))?;
                m.row_mut(i).copy_from_slice(&c);
            }
            gens.push(m);
        }
        Ok(Self::from_parts(&self.group, f, basis.dim(), gens))
    }

    pub fn is_submodule(&self, u: &Subspace) -> bool {
        (0..u.dim()).all(|i| {
            (0..self.group.generators().len()).all(|gi| u.contains(&self.act_gen(u.basis().row(i), gi)))
        })
    }

    /// The submodule `u` in its echelon basis.
    pub fn submodule(&self, u: &Subspace) -> Result<Representation> {
        if u.dim() == 0 {
            return Ok(Self::with_dim_unchecked(&self.group, &self.field, 0));
        }
        self.restrict_to_basis(&Basis::from_subspace(u))
    }

    fn with_dim_unchecked(group: &PermGroup, field: &Field, dim: usize) -> Representation {
        let gens = vec![Mat::identity(field, dim); group.generators().len()];
        Self::from_parts(group, field, dim, gens)
    }

    /// `M / u`, with basis the images of the standard vectors at the non-pivot columns of `u`.
    pub fn quotient(&self, u: &Subspace) -> Result<Representation> {
        if !self.is_submodule(u) {
            return Err(Error::InvalidInput("subspace is not a submodule".into()));
        }
        let comp = u.complement_columns();
        let f = &self.field;
        let mut gens = Vec::new();
        for gi in 0..self.group.generators().len() {
            let mut m = Mat::zeros(f, comp.len(), comp.len());
            for (r, &c) in comp.iter().enumerate() {
                let mut e = vec![0; self.dim];
                e[c] = 1;
                let mut w = self.act_gen(&e, gi);
                u.reduce(&mut w);
                for (k, &cc) in comp.iter().enumerate() {
                    m.set(r, k, w[cc]);
                }
            }
            gens.push(m);
        }
        Ok(Self::from_parts(&self.group, f, comp.len(), gens))
    }

    /// The projection `M -> M/u` in the basis used by [`Representation::quotient`].
    pub fn quotient_map(&self, u: &Subspace) -> Mat {
        let comp = u.complement_columns();
        let mut m = Mat::zeros(&self.field, self.dim, comp.len());
        for i in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[i] = 1;
            u.reduce(&mut e);
            for (k, &c) in comp.iter().enumerate() {
                m.set(i, k, e[c]);
            }
        }
        m
    }

    /// `w / u` for submodules `u <= w`.
    pub fn subquotient(&self, w: &Subspace, u: &Subspace) -> Result<Representation> {
        if !w.contains_subspace(u) {
            return Err(Error::InvalidInput("subquotient needs u <= w".into()));
        }
        let wb = Basis::from_subspace(w);
        let wm = self.restrict_to_basis(&wb)?;
        let uc = Subspace::from_rows(&wb.coordinates_of_rows(u.basis()));
        wm.quotient(&uc)
    }

    /// Common fixed points of a subgroup.
    pub fn fixed_points(&self, q: &PermGroup) -> Result<Subspace> {
        if !self.group.contains_group(q) {
            return Err(Error::NotSubgroup("fixed points of a non-subgroup".into()));
        }
        let f = &self.field;
        if q.is_trivial() {
            return Ok(Subspace::full(f, self.dim));
        }
        if self.perms.is_some() {
            let perms = q
                .generators()
                .iter()
                .map(|y| Ok(self.perm_of(y)?.expect("permutation module")))
                .collect::<Result<Vec<_>>>()?;
            let mut rows = Vec::new();
            for orbit in orbits(self.dim, &perms) {
                let mut v = vec![0; self.dim];
                for i in orbit {
                    v[i] = 1;
                }
                rows.push(v);
            }
            return Ok(Subspace::from_rows(&Mat::from_rows(f, self.dim, &rows)));
        }
        let mut stacked: Option<Mat> = None;
        let id = Mat::identity(f, self.dim);
        for y in q.generators() {
            let d = self.matrix_of(y)?.sub(&id);
            stacked = Some(match stacked {
                None => d,
                Some(s) => s.hstack(&d),
            });
        }
        let s = stacked.expect("nontrivial subgroup has generators");
        Ok(Subspace::from_rows(&s.left_nullspace()))
    }

    /// `sum_{x in group} c(x) rho(x)` for a subgroup, accumulated along its element table.
    pub fn algebra_element(&self, sub: &PermGroup, coeff: impl Fn(&Perm) -> Elem) -> Result<Mat> {
        let t = sub.element_table()?;
        let gm: Vec<Mat> = sub
            .generators()
            .iter()
            .map(|y| self.matrix_of(y))
            .collect::<Result<_>>()?;
        let f = &self.field;
        let mut mats: Vec<Mat> = Vec::with_capacity(t.len());
        let mut acc = Mat::zeros(f, self.dim, self.dim);
        for (i, x) in t.elements().iter().enumerate() {
            let m = match t.parent(i) {
                None => Mat::identity(f, self.dim),
                Some((p, g)) => mats[p].mul(&gm[g]),
            };
            let c = coeff(x);
            if c != 0 {
                acc.add_scaled(c, &m);
            }
            mats.push(m);
        }
        Ok(acc)
    }

    /// Image of the relative trace `tr_R^Q` on `M^R`.
    pub fn relative_trace_image(&self, r: &PermGroup, q: &PermGroup) -> Result<Subspace> {
        if !q.contains_group(r) {
            return Err(Error::NotSubgroup("relative trace needs R <= Q".into()));
        }
        let fixed = self.fixed_points(r)?;
        let t = self.trace_matrix(r, q)?;
        Ok(fixed.image(&t))
    }

    /// `sum_{t in [R\Q]} rho(t)`.
    pub fn trace_matrix(&self, r: &PermGroup, q: &PermGroup) -> Result<Mat> {
        let cs = CosetSpace::new(q, r)?;
        let mut t = Mat::zeros(&self.field, self.dim, self.dim);
        for x in cs.reps() {
            t.add_scaled(1, &self.matrix_of(x)?);
        }
        Ok(t)
    }

    /// The Brauer construction `M(Q)` as a module for `N_G(Q)`.
    pub fn brauer_construction(&self, q: &PermGroup) -> Result<BrauerQuotient> {
        let p = self.field.characteristic();
        if !q.is_p_group(p) {
            return Err(Error::NotPGroup { p, order: q.order() });
        }
        let n = self.group.normalizer(q)?;
        self.brauer_construction_over(q, &n)
    }

    /// The Brauer construction as a module for a given subgroup `n <= N_G(Q)`.
    pub fn brauer_construction_over(&self, q: &PermGroup, n: &PermGroup) -> Result<BrauerQuotient> {
        let p = self.field.characteristic();
        if !q.is_p_group(p) {
            return Err(Error::NotPGroup { p, order: q.order() });
        }
        if !self.group.contains_group(n) || !n.generators().iter().all(|x| q.is_normalized_by(x)) {
            return Err(Error::InvalidInput("acting group must normalize Q".into()));
        }
        let fixed = self.fixed_points(q)?;
        let mut traces = Subspace::zero(&self.field, self.dim);
        if !q.is_trivial() {
            for r in q.maximal_subgroups_of_p_group(p)? {
                traces = traces.sum(&self.relative_trace_image(&r, q)?);
            }
        }
        let on_n = self.restrict(n)?;
        let module = on_n.subquotient(&fixed, &traces)?;
        Ok(BrauerQuotient {
            normalizer: n.clone(),
            fixed,
            traces,
            module,
        })
    }
}

/// `M(Q) = M^Q / sum tr_R^Q(M^R)` with the subspaces it was built from.
#[derive(Clone, Debug)]
pub struct BrauerQuotient {
    pub normalizer: PermGroup,
    pub fixed: Subspace,
    pub traces: Subspace,
    pub module: Representation,
}

pub(crate) fn block_diagonal(a: &Mat, b: &Mat) -> Mat {
    let f = a.field();
    let n = a.rows() + b.rows();
    let mut m = Mat::zeros(f, n, n);
    for i in 0..a.rows() {
        m.row_mut(i)[..a.cols()].copy_from_slice(a.row(i));
    }
    for i in 0..b.rows() {
        m.row_mut(a.rows() + i)[a.cols()..].copy_from_slice(b.row(i));
    }
    m
}

/// Orbits of a set of permutations on `0..n`, each sorted, ordered by least element.
pub(crate) fn orbits(n: usize, perms: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut orb = vec![s];
        let mut head = 0;
        while head < orb.len() {
            let x = orb[head];
            head += 1;
            for p in perms {
                let y = p.apply(x as u32) as usize;
                if !seen[y] {
                    seen[y] = true;
                    orb.push(y);
                }
            }
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}
