use super::cosets::CosetSpace;
use super::iso::GroupIso;
use super::perm::Perm;
use super::PermGroup;
use crate::error::{Error, Result};

/// `G x H` acting on the disjoint union of the two point sets. Generators are those of `G`
/// (acting on the first block) followed by those of `H`.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    group: PermGroup,
    left: PermGroup,
    right: PermGroup,
}

impl PartialEq for DirectProduct {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left && self.right == other.right
    }
}

impl DirectProduct {
    pub fn new(left: &PermGroup, right: &PermGroup) -> DirectProduct {
        let (n1, n2) = (left.degree(), right.degree());
        let id1 = Perm::identity(n1);
        let id2 = Perm::identity(n2);
        let mut gens: Vec<Perm> = left.generators().iter().map(|g| g.direct_sum(&id2)).collect();
        gens.extend(right.generators().iter().map(|h| id1.direct_sum(h)));
        let name = format!(
            "{} x {}",
            left.name().unwrap_or("G"),
            right.name().unwrap_or("H")
        );
        DirectProduct {
            group: PermGroup::new(n1 + n2, gens).expect("degrees agree").with_name(name),
            left: left.clone(),
            right: right.clone(),
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn left(&self) -> &PermGroup {
        &self.left
    }

    pub fn right(&self) -> &PermGroup {
        &self.right
    }

    pub fn pair(&self, x: &Perm, y: &Perm) -> Perm {
        x.direct_sum(y)
    }

    pub fn embed_left(&self, x: &Perm) -> Perm {
        x.direct_sum(&Perm::identity(self.right.degree()))
    }

    pub fn embed_right(&self, y: &Perm) -> Perm {
        Perm::identity(self.left.degree()).direct_sum(y)
    }

    /// Components of an element of the product.
    pub fn split(&self, z: &Perm) -> (Perm, Perm) {
        let n1 = self.left.degree();
        (
            z.restrict_block(0, n1),
            z.restrict_block(n1, self.right.degree()),
        )
    }

    /// `H x K` for subgroups `H <= G`, `K <= H'`.
    pub fn product_subgroup(&self, h: &PermGroup, k: &PermGroup) -> Result<PermGroup> {
        if !self.left.contains_group(h) || !self.right.contains_group(k) {
            return Err(Error::NotSubgroup("factor is not a subgroup".into()));
        }
        let mut gens: Vec<Perm> = h.generators().iter().map(|x| self.embed_left(x)).collect();
        gens.extend(k.generators().iter().map(|y| self.embed_right(y)));
        PermGroup::new(self.group.degree(), gens)
    }

    /// `{(x, x)}` for `H` a subgroup of both factors (same point set required).
    pub fn diagonal_of(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens = h.generators().iter().map(|x| self.pair(x, x)).collect();
        let d = PermGroup::new(self.group.degree(), gens)?;
        if !self.group.contains_group(&d) {
            return Err(Error::NotSubgroup("diagonal outside the product".into()));
        }
        Ok(d)
    }

    /// The components of a subgroup of the product, as subgroups of the factors.
    pub fn projections(&self, s: &PermGroup) -> (PermGroup, PermGroup) {
        let (a, b): (Vec<Perm>, Vec<Perm>) = s.generators().iter().map(|z| self.split(z)).unzip();
        (
            PermGroup::new(self.left.degree(), a).expect("degree"),
            PermGroup::new(self.right.degree(), b).expect("degree"),
        )
    }
}

/// `{(h, iso(h)) : h in H}` inside `G x G'` for an isomorphism `iso: H -> H'`.
pub fn diagonal_subgroup(prod: &DirectProduct, iso: &GroupIso) -> Result<PermGroup> {
    if !prod.left().contains_group(iso.source()) || !prod.right().contains_group(iso.target()) {
        return Err(Error::NotSubgroup("isomorphism between non-subgroups of the factors".into()));
    }
    if !iso.verify() {
        return Err(Error::InvalidInput("identification is not an isomorphism".into()));
    }
    let gens = iso
        .source()
        .generators()
        .iter()
        .zip(iso.generator_images())
        .map(|(x, y)| prod.pair(x, y))
        .collect();
    PermGroup::new(prod.group().degree(), gens)
}

/// `G/N` acting faithfully on the right cosets of `N`.
pub struct Quotient {
    cosets: CosetSpace,
    group: PermGroup,
}

impl Quotient {
    pub fn new(g: &PermGroup, n: &PermGroup) -> Result<Quotient> {
        if !n.is_normal_in(g) {
            return Err(Error::NotNormal);
        }
        let cosets = CosetSpace::new(g, n)?;
        let group = PermGroup::new(cosets.len(), cosets.action_perms())?;
        Ok(Quotient { cosets, group })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// The image of `x` in the quotient.
    pub fn project(&self, x: &Perm) -> Perm {
        self.cosets.perm_of(x)
    }

    /// One preimage per element of the quotient, in coset order.
    pub fn section(&self) -> &[Perm] {
        self.cosets.reps()
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }
}
