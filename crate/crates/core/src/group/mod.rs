//! Permutation groups: stabilizer chains, cosets, subgroup queries and named constructions.

mod chain;
mod cosets;
mod iso;
mod named;
mod perm;
mod product;
mod subgroups;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

pub use chain::{eval_slp, Chain, Level, SlpStep};
pub use cosets::{double_coset_reps, CosetSpace};
pub use iso::{find_isomorphism, GroupIso};
pub use named::{cyclic, dihedral, parse_group, quaternion8, sl2, symmetric, alternating};
pub use perm::{gcd, lcm, Perm};
pub use product::{diagonal_subgroup, DirectProduct, Quotient};
pub use subgroups::{
    conjugating_element, find_common_sylow_identification, is_p_nilpotent, p_part,
    structure_label, subgroups_of_p_group, CommonSylow,
};

use crate::error::{Error, Result};

/// Largest group order for which the element list is materialised.
pub const ELEMENT_TABLE_CAP: u128 = 400_000;

/// All elements of a group with a BFS spanning tree over the generators.
pub struct ElementTable {
    elems: Vec<Perm>,
    index: HashMap<Perm, usize>,
    parent: Vec<(u32, u32)>,
}

impl ElementTable {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elems
    }

    pub fn index_of(&self, x: &Perm) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// BFS parent of element `i` and the generator leading from it (`None` for the identity).
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        (i != 0).then(|| (self.parent[i].0 as usize, self.parent[i].1 as usize))
    }

    /// Generator indices whose product (in order) is element `i`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while i != 0 {
            let (p, g) = self.parent[i];
            w.push(g as usize);
            i = p as usize;
        }
        w.reverse();
        w
    }
}

struct Inner {
    degree: usize,
    gens: Vec<Perm>,
    name: Option<String>,
    chain: OnceLock<Chain>,
    table: OnceLock<Arc<ElementTable>>,
}

/// A finite permutation group given by generators. Cheap to clone; immutable.
/// Subgroups are themselves `PermGroup`s on the same points.
#[derive(Clone)]
pub struct PermGroup(Arc<Inner>);

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "Group(degree {}, {} gens)", self.0.degree, self.0.gens.len()),
        }
    }
}

impl PartialEq for PermGroup {
    /// Structural equality: same degree and same generator list.
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.degree == other.0.degree && self.0.gens == other.0.gens)
    }
}
impl Eq for PermGroup {}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidInput(format!(
                    "generator of degree {} in a group of degree {degree}",
                    g.degree()
                )));
            }
        }
        Ok(PermGroup(Arc::new(Inner {
            degree,
            gens,
            name: None,
            chain: OnceLock::new(),
            table: OnceLock::new(),
        })))
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).expect("valid")
    }

    pub fn with_name(self, name: impl Into<String>) -> PermGroup {
        let inner = Inner {
            degree: self.0.degree,
            gens: self.0.gens.clone(),
            name: Some(name.into()),
            chain: OnceLock::new(),
            table: OnceLock::new(),
        };
        if let Some(c) = self.0.chain.get() {
            let _ = inner.chain.set(c.clone());
        }
        if let Some(t) = self.0.table.get() {
            let _ = inner.table.set(t.clone());
        }
        PermGroup(Arc::new(inner))
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.0.gens
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.0.degree)
    }

    pub fn chain(&self) -> &Chain {
        self.0
            .chain
            .get_or_init(|| Chain::new(self.0.degree, &self.0.gens, &[]))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.gens.iter().all(|g| g.is_identity())
    }

    pub fn contains(&self, x: &Perm) -> bool {
        self.chain().contains(x)
    }

    /// Rewrite `x` as a product of straight-line-program nodes of the chain.
    pub fn factor(&self, x: &Perm) -> Option<Vec<usize>> {
        self.chain().factor(x)
    }

    pub fn element_table(&self) -> Result<Arc<ElementTable>> {
        if let Some(t) = self.0.table.get() {
            return Ok(t.clone());
        }
        let order = self.order();
        if order > ELEMENT_TABLE_CAP {
            return Err(Error::CapExceeded {
                what: "group order for element enumeration",
                limit: ELEMENT_TABLE_CAP,
                actual: order,
            });
        }
        let id = self.identity();
        let mut elems = vec![id.clone()];
        let mut index = HashMap::with_capacity(order as usize);
        index.insert(id, 0usize);
        let mut parent = vec![(0u32, 0u32)];
        let mut head = 0;
        while head < elems.len() {
            for (gi, g) in self.0.gens.iter().enumerate() {
                let y = elems[head].mul(g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                    parent.push((head as u32, gi as u32));
                }
            }
            head += 1;
        }
        debug_assert_eq!(elems.len() as u128, order);
        let t = Arc::new(ElementTable {
            elems,
            index,
            parent,
        });
        let _ = self.0.table.set(t.clone());
        Ok(t)
    }

    /// The subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != self.degree() || !self.contains(g) {
                return Err(Error::NotSubgroup(format!(
                    "{} is not an element of the group",
                    g.cycle_string()
                )));
            }
        }
        PermGroup::new(self.degree(), gens)
    }

    /// Whether every generator of `h` lies in `self`.
    pub fn contains_group(&self, h: &PermGroup) -> bool {
        h.degree() == self.degree() && h.generators().iter().all(|g| self.contains(g))
    }

    /// Same set of elements.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.contains_group(other)
    }

    /// A subgroup generated greedily by elements of `elements` (duplicates and members skipped).
    pub fn generated_by<'a>(degree: usize, elements: impl IntoIterator<Item = &'a Perm>) -> PermGroup {
        let mut gens: Vec<Perm> = Vec::new();
        let mut chain = Chain::new(degree, &gens, &[]);
        for x in elements {
            if !chain.contains(x) {
                gens.push(x.clone());
                chain = Chain::new(degree, &gens, &[]);
            }
        }
        let g = PermGroup::new(degree, gens).expect("consistent degree");
        let _ = g.0.chain.set(chain);
        g
    }

    /// Conjugate subgroup `self^g`.
    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        PermGroup::new(
            self.degree(),
            self.generators().iter().map(|x| x.conj(g)).collect(),
        )
        .expect("same degree")
    }

    /// Whether `self` normalizes... i.e. `h^g = h` for the element `g`.
    pub fn is_normalized_by(&self, g: &Perm) -> bool {
        self.generators().iter().all(|x| self.contains(&x.conj(g)))
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        g.contains_group(self) && g.generators().iter().all(|x| self.is_normalized_by(x))
    }

    pub fn is_abelian(&self) -> bool {
        let gs = self.generators();
        gs.iter()
            .enumerate()
            .all(|(i, a)| gs[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Whether the order is a power of `p` (the trivial group counts).
    pub fn is_p_group(&self, p: u32) -> bool {
        let mut n = self.order();
        while n % p as u128 == 0 {
            n /= p as u128;
        }
        n == 1
    }

    /// Sorted element list; only for small groups.
    pub fn elements(&self) -> Result<Vec<Perm>> {
        Ok(self.element_table()?.elements().to_vec())
    }

    /// Right cosets of `h` in `self`.
    pub fn cosets(&self, h: &PermGroup) -> Result<CosetSpace> {
        CosetSpace::new(self, h)
    }

    /// Exactly one representative of every right coset `H x`.
    pub fn coset_reps(&self, h: &PermGroup) -> Result<Vec<Perm>> {
        Ok(self.cosets(h)?.reps().to_vec())
    }

    pub fn centralizer(&self, s: &PermGroup) -> Result<PermGroup> {
        subgroups::centralizer(self, s)
    }

    pub fn normalizer(&self, s: &PermGroup) -> Result<PermGroup> {
        subgroups::normalizer(self, s)
    }

    pub fn center(&self) -> Result<PermGroup> {
        subgroups::centralizer(self, self)
    }

    pub fn sylow_subgroup(&self, p: u32) -> Result<PermGroup> {
        subgroups::sylow_subgroup(self, p)
    }

    /// Maximal subgroups of a p-group (those of index p).
    pub fn maximal_subgroups_of_p_group(&self, p: u32) -> Result<Vec<PermGroup>> {
        subgroups::maximal_subgroups_of_p_group(self, p)
    }

    pub fn order_of_element(x: &Perm) -> u64 {
        x.order()
    }

    /// Intersection with another subgroup of the same degree (small groups).
    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup> {
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let t = small.element_table()?;
        Ok(PermGroup::generated_by(
            self.degree(),
            t.elements().iter().filter(|x| big.contains(x)),
        ))
    }
}
