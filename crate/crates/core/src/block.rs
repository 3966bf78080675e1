//! Blocks of group algebras: primitive central idempotents computed in the class-sum basis of
//! the centre, principal blocks, block membership and blocks as modules.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::group::{ElementTable, PermGroup};
use crate::linalg::{crt_idempotents, Basis, Krylov, Mat};
use crate::rep::{simple_modules, Representation, SpinTree};
use crate::Rng;

/// Conjugacy classes of a group, as index lists into its element table.
pub struct ClassData {
    pub table: Arc<ElementTable>,
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ClassData {
    pub fn new(g: &PermGroup) -> Result<ClassData> {
        let table = g.element_table()?;
        let n = table.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let gens: Vec<_> = g.generators().to_vec();
        for s in 0..n {
            if class_of[s] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[s] = c;
            let mut orb = vec![s];
            let mut head = 0;
            while head < orb.len() {
                let x = &table.elements()[orb[head]];
                head += 1;
                for y in &gens {
                    let j = table.index_of(&x.conj(y)).expect("closed under conjugation");
                    if class_of[j] == usize::MAX {
                        class_of[j] = c;
                        orb.push(j);
                    }
                }
            }
            orb.sort_unstable();
            classes.push(orb);
        }
        Ok(ClassData {
            table,
            classes,
            class_of,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `R_j[i][k]` = coefficient of `C_k` in `C_i C_j`.
    fn right_multiplication(&self, f: &Field) -> Vec<Mat> {
        let r = self.len();
        let el = self.table.elements();
        let inv: Vec<usize> = el
            .iter()
            .map(|x| self.table.index_of(&x.inverse()).expect("closed"))
            .collect();
        let mut counts = vec![vec![vec![0u64; r]; r]; r];
        for (k, cls) in self.classes.iter().enumerate() {
            let z = &el[cls[0]];
            for xi in 0..el.len() {
                let i = self.class_of[xi];
                let y = el[inv[xi]].mul(z);
                let j = self.class_of[self.table.index_of(&y).expect("closed")];
                counts[j][i][k] += 1;
            }
        }
        counts
            .iter()
            .map(|cj| {
                let mut m = Mat::zeros(f, r, r);
                for i in 0..r {
                    for k in 0..r {
                        m.set(i, k, f.from_int((cj[i][k] % f.characteristic() as u64) as i64));
                    }
                }
                m
            })
            .collect()
    }
}

/// A block: a primitive central idempotent given by one coefficient per conjugacy class.
#[derive(Clone, Debug)]
pub struct Block {
    pub index: usize,
    pub coefficients: Vec<Elem>,
    pub is_principal: bool,
}

impl Block {
    /// The image under `x -> x^-1`, the idempotent of the contragredient block.
    pub fn antipode(&self, classes: &ClassData) -> Block {
        let t = &classes.table;
        let mut coefficients = vec![0; self.coefficients.len()];
        for (c, cl) in classes.classes.iter().enumerate() {
            let inv = t.index_of(&t.elements()[cl[0]].inverse()).expect("closed");
            coefficients[classes.class_of[inv]] = self.coefficients[c];
        }
        Block {
            index: self.index,
            coefficients,
            is_principal: self.is_principal,
        }
    }

    /// Number of group elements with nonzero coefficient.
    pub fn support_size(&self, classes: &ClassData) -> usize {
        self.coefficients
            .iter()
            .zip(&classes.classes)
            .filter(|(c, _)| **c != 0)
            .map(|(_, cl)| cl.len())
            .sum()
    }
}

pub struct BlockDecomposition {
    group: PermGroup,
    field: Field,
    classes: ClassData,
    mult: Vec<Mat>,
    pub blocks: Vec<Block>,
}

impl std::fmt::Debug for BlockDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BlockDecomposition({} blocks)", self.blocks.len())
    }
}

const NEWTON_CAP: usize = 16;


pub fn block_decomposition(group: &PermGroup, field: &Field) -> Result<BlockDecomposition> {
    let classes = ClassData::new(group)?;
    let mult = classes.right_multiplication(field);
    let r = classes.len();
    let id_class = classes.class_of[0];
    let mut one = vec![0; r];
    one[id_class] = 1;
    let mut idems = vec![one];
    for rj in &mult {
        let mut next = Vec::new();
        for e in idems {
            let kr = Krylov::new(field, e.clone(), |v| rj.vec_mul(v));
            let parts = kr.min_poly.root_power_split(field);
            if let Some((None, rest)) = parts.iter().find(|(root, _)| root.is_none()) {
                let d = rest.degree().unwrap_or(1) as u32;
                return Err(Error::NotSplittingField {
                    p: field.characteristic(),
                    m: field.degree(),
                    suggested: field.degree() * d,
                    what: "a class sum has eigenvalues outside the field on the centre".into(),
                });
            }
            if parts.len() == 1 {
                next.push(e);
                continue;
            }
            let factors: Vec<_> = parts.iter().map(|(_, p)| p.clone()).collect();
            for c in crt_idempotents(field, &kr.min_poly, &factors) {
                next.push(kr.evaluate(field, &c));
            }
        }
        idems = next;
    }
    let mut dec = BlockDecomposition {
        group: group.clone(),
        field: field.clone(),
        classes,
        mult,
        blocks: Vec::new(),
    };
    let mut blocks: Vec<Block> = idems
        .into_iter()
        .map(|e| {
            let e = dec.newton_polish(e);
            let is_principal = dec.augmentation(&e) == 1;
            Block {
                index: 0,
                coefficients: e,
                is_principal,
            }
        })
        .collect();
    blocks.sort_by(|a, b| {
        b.is_principal
            .cmp(&a.is_principal)
            .then_with(|| first_support(&a.coefficients).cmp(&first_support(&b.coefficients)))
            .then_with(|| a.coefficients.cmp(&b.coefficients))
    });
    for (i, b) in blocks.iter_mut().enumerate() {
        b.index = i;
    }
    dec.blocks = blocks;
    Ok(dec)
}

fn first_support(v: &[Elem]) -> usize {
    v.iter().position(|&x| x != 0).unwrap_or(usize::MAX)
}

pub fn principal_block(group: &PermGroup, field: &Field) -> Result<(BlockDecomposition, usize)> {
    let d = block_decomposition(group, field)?;
    let i = d
        .blocks
        .iter()
        .position(|b| b.is_principal)
        .expect("exactly one block acts on the trivial module");
    Ok((d, i))
}

impl BlockDecomposition {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn classes(&self) -> &ClassData {
        &self.classes
    }

    pub fn principal(&self) -> &Block {
        self.blocks.iter().find(|b| b.is_principal).expect("principal block")
    }

    /// Product in the centre, in the class-sum basis.
    pub fn center_mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; x.len()];
        for (j, &c) in y.iter().enumerate() {
            if c != 0 {
                f.axpy(&mut out, c, &self.mult[j].vec_mul(x));
            }
        }
        out
    }

    /// The scalar by which a central element acts on the trivial module.
    pub fn augmentation(&self, x: &[Elem]) -> Elem {
        let f = &self.field;
        x.iter().zip(&self.classes.classes).fold(0, |acc, (&c, cl)| {
            f.add(acc, f.mul(c, f.from_int(cl.len() as i64)))
        })
    }

    fn newton_polish(&self, mut e: Vec<Elem>) -> Vec<Elem> {
        let f = &self.field;
        for _ in 0..NEWTON_CAP {
            let e2 = self.center_mul(&e, &e);
            if e2 == e {
                break;
            }
            let e3 = self.center_mul(&e2, &e);
            let mut next = vec![0; e.len()];
            f.axpy(&mut next, f.from_int(3), &e2);
            f.axpy(&mut next, f.from_int(-2), &e3);
            e = next;
        }
        e
    }

    /// The idempotent as a vector over the element table.
    pub fn group_algebra_vector(&self, b: &Block) -> Vec<Elem> {
        self.classes
            .class_of
            .iter()
            .map(|&c| b.coefficients[c])
            .collect()
    }

    /// The matrix by which the block idempotent acts on a module.
    pub fn action_on(&self, b: &Block, m: &Representation) -> Result<Mat> {
        let t = &self.classes.table;
        m.algebra_element(&self.group, |x| {
            b.coefficients[self.classes.class_of[t.index_of(x).expect("group element")]]
        })
    }

    /// The block containing a module, if its idempotent acts as the identity; `None` for modules
    /// spread over several blocks.
    pub fn block_of(&self, m: &Representation) -> Result<Option<usize>> {
        for b in &self.blocks {
            let e = self.action_on(b, m)?;
            if e.is_identity() {
                return Ok(Some(b.index));
            }
            if !e.is_zero() {
                return Ok(None);
            }
        }
        Ok(None)
    }

    /// `e kG` as a right `kG`-module, with its basis over the element table.
    pub fn block_module(&self, b: &Block) -> Result<(Representation, Basis)> {
        let reg = Representation::regular(&self.group, &self.field)?;
        let tree = SpinTree::submodule(&reg, &[self.group_algebra_vector(b)]);
        let basis = Basis::new(tree.basis_matrix(&self.field, reg.dim()));
        let m = reg.restrict_to_basis(&basis)?;
        Ok((m, basis))
    }

    pub fn block_dim(&self, b: &Block) -> Result<usize> {
        Ok(self.block_module(b)?.0.dim())
    }

    /// The simple modules of a block, as composition factors of `e kG`.
    pub fn simples(&self, b: &Block, rng: &mut Rng) -> Result<Vec<Representation>> {
        let (m, _) = self.block_module(b)?;
        simple_modules(&m, rng)
    }

    /// The central character of a block at a central element: the scalar `c` with
    /// `(e z)^(q^N) = c e` once `q^N` exceeds the nilpotency index of the radical.
    pub fn central_character(&self, b: &Block, z: &[Elem]) -> Elem {
        let q = self.field.order() as u64;
        let mut y = self.center_mul(&b.coefficients, z);
        let mut reach = 1usize;
        while reach <= self.classes.len() {
            y = self.center_pow(&y, q);
            reach = reach.saturating_mul(q as usize);
        }
        let k = b.coefficients.iter().position(|&c| c != 0).expect("nonzero idempotent");
        self.field.mul(y[k], self.field.inv(b.coefficients[k]))
    }

    fn center_pow(&self, x: &[Elem], mut e: u64) -> Vec<Elem> {
        let mut base = x.to_vec();
        let mut acc: Option<Vec<Elem>> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => self.center_mul(&a, &base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = self.center_mul(&base, &base);
            }
        }
        acc.unwrap_or_else(|| x.to_vec())
    }

    /// A defect group: a Sylow subgroup for the principal block, otherwise a Sylow subgroup of
    /// `C_G(x)` for a defect class `x^G`, one where both the idempotent coefficient and the
    /// central character of the class sum are nonzero.
    pub fn defect_group(&self, b: &Block) -> Result<PermGroup> {
        let g = &self.group;
        let p = self.field.characteristic();
        if b.is_principal {
            return g.sylow_subgroup(p);
        }
        let r = self.classes.len();
        for k in 0..r {
            if b.coefficients[k] == 0 {
                continue;
            }
            let mut sum = vec![0; r];
            sum[k] = 1;
            if self.central_character(b, &sum) != 0 {
                let x = &self.classes.table.elements()[self.classes.classes[k][0]];
                let cx = g.centralizer(&g.subgroup(vec![x.clone()])?)?;
                return cx.sylow_subgroup(p);
            }
        }
        Err(Error::InvalidInput("block without a defect class".into()))
    }

    /// Orthogonality, completeness, centrality and primitivity checks in the centre.
    pub fn verify(&self) -> bool {
        let r = self.classes.len();
        let mut sum = vec![0; r];
        for (i, a) in self.blocks.iter().enumerate() {
            self.field.axpy(&mut sum, 1, &a.coefficients);
            for (j, b) in self.blocks.iter().enumerate() {
                let p = self.center_mul(&a.coefficients, &b.coefficients);
                let expect = if i == j { a.coefficients.clone() } else { vec![0; r] };
                if p != expect {
                    return false;
                }
            }
        }
        let mut one = vec![0; r];
        one[self.classes.class_of[0]] = 1;
        let principal = self.blocks.iter().filter(|b| b.is_principal).count();
        sum == one && principal == 1
    }
}

/// Both sides of the criterion "some simple module of the block has vertex `P n Z(G)`" versus
/// "`P <= Z(G)`", and whether the block then has a unique simple module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralVertexCheck {
    pub simple_with_central_vertex: bool,
    pub defect_group_central: bool,
    pub simple_count: usize,
    pub agree: bool,
}

pub fn central_vertex_check(
    dec: &BlockDecomposition,
    b: &Block,
    defect_group: &PermGroup,
    rng: &mut Rng,
) -> Result<CentralVertexCheck> {
    let g = dec.group();
    let z = g.center()?;
    let pz = defect_group.intersection(&z)?;
    let simples = dec.simples(b, rng)?;
    let mut lhs = false;
    for s in &simples {
        let v = crate::rep::vertex(s, rng)?;
        if v.order() == pz.order() && crate::group::conjugating_element(g, &v, &pz)?.is_some() {
            lhs = true;
        }
    }
    let rhs = z.contains_group(defect_group);
    Ok(CentralVertexCheck {
        simple_with_central_vertex: lhs,
        defect_group_central: rhs,
        simple_count: simples.len(),
        agree: lhs == rhs && (!rhs || simples.len() == 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, sl2, symmetric};
    use crate::rng;

    /// All central idempotents by enumerating the centre (tiny cases only).
    fn central_idempotent_count(dec: &BlockDecomposition) -> usize {
        let r = dec.classes().len();
        let q = dec.field().order();
        let mut count = 0;
        for code in 0..q.pow(r as u32) {
            let mut x = Vec::with_capacity(r);
            let mut c = code;
            for _ in 0..r {
                x.push((c % q) as Elem);
                c /= q;
            }
            if dec.center_mul(&x, &x) == x {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn blocks_of_small_groups() {
        let f4 = Field::of_order(4).unwrap();
        let c3 = cyclic(3);
        let d = block_decomposition(&c3, &f4).unwrap();
        assert_eq!(d.blocks.len(), 3);
        assert!(d.verify());
        assert_eq!(central_idempotent_count(&d), 8);
        for b in &d.blocks {
            assert_eq!(d.block_dim(b).unwrap(), 1);
        }
        let g = sl2(3).unwrap();
        let d = block_decomposition(&g, &Field::of_order(2).unwrap()).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.classes().len(), 7);
        assert_eq!(central_idempotent_count(&d), 2);
        assert_eq!(d.block_dim(&d.blocks[0]).unwrap(), 24);
        // C3 over GF(2) has a block whose centre is GF(4)
        assert!(matches!(
            block_decomposition(&c3, &Field::of_order(2).unwrap()),
            Err(Error::NotSplittingField { .. })
        ));
    }

    #[test]
    fn block_membership_of_simples() {
        let mut r = rng(7);
        let f = Field::of_order(3).unwrap();
        let g = symmetric(4);
        let d = block_decomposition(&g, &f).unwrap();
        assert!(d.verify());
        let triv = Representation::trivial(&g, &f);
        assert_eq!(d.block_of(&triv).unwrap(), Some(d.principal().index));
        let mut total = 0;
        for b in &d.blocks {
            let (m, _) = d.block_module(b).unwrap();
            total += m.dim();
            for s in d.simples(b, &mut r).unwrap() {
                assert_eq!(d.block_of(&s).unwrap(), Some(b.index));
            }
        }
        assert_eq!(total, 24);
    }
}
