use std::sync::Arc;

use super::perm::Perm;
use super::{ElementTable, PermGroup};
use crate::error::{Error, Result};

/// An isomorphism between two small permutation groups, stored as a full element table.
#[derive(Clone)]
pub struct GroupIso {
    source: PermGroup,
    target: PermGroup,
    gen_images: Vec<Perm>,
    source_table: Arc<ElementTable>,
    target_table: Arc<ElementTable>,
    /// `map[i]` = index in the target table of the image of source element `i`.
    map: Vec<usize>,
}

impl std::fmt::Debug for GroupIso {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupIso({:?} -> {:?}, images {:?})", self.source, self.target, self.gen_images)
    }
}

impl GroupIso {
    /// Build from images of the source generators; fails unless this defines a bijective homomorphism.
    pub fn from_generator_images(
        source: &PermGroup,
        target: &PermGroup,
        gen_images: Vec<Perm>,
    ) -> Result<GroupIso> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::InvalidInput("wrong number of generator images".into()));
        }
        if source.order() != target.order() {
            return Err(Error::NoIsomorphism("orders differ".into()));
        }
        for y in &gen_images {
            if !target.contains(y) {
                return Err(Error::NoIsomorphism("image outside the target".into()));
            }
        }
        let st = source.element_table()?;
        let tt = target.element_table()?;
        let map = extend_hom(&st, &tt, source.generators(), &gen_images)
            .ok_or_else(|| Error::NoIsomorphism("generator images do not define an isomorphism".into()))?;
        Ok(GroupIso {
            source: source.clone(),
            target: target.clone(),
            gen_images,
            source_table: st,
            target_table: tt,
            map,
        })
    }

    pub fn identity(g: &PermGroup) -> Result<GroupIso> {
        GroupIso::from_generator_images(g, g, g.generators().to_vec())
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.gen_images
    }

    pub fn apply(&self, x: &Perm) -> Option<Perm> {
        let i = self.source_table.index_of(x)?;
        Some(self.target_table.elements()[self.map[i]].clone())
    }

    pub fn inverse(&self) -> GroupIso {
        let imgs = self
            .target
            .generators()
            .iter()
            .map(|y| {
                let j = self.target_table.index_of(y).expect("target element");
                let i = self.map.iter().position(|&m| m == j).expect("bijective");
                self.source_table.elements()[i].clone()
            })
            .collect();
        GroupIso::from_generator_images(&self.target, &self.source, imgs).expect("inverse of an isomorphism")
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupIso) -> Result<GroupIso> {
        let imgs = self
            .gen_images
            .iter()
            .map(|y| other.apply(y).ok_or_else(|| Error::InvalidInput("isomorphisms do not compose".into())))
            .collect::<Result<Vec<_>>>()?;
        GroupIso::from_generator_images(&self.source, &other.target, imgs)
    }

    /// The image of a subgroup of the source.
    pub fn image_of(&self, h: &PermGroup) -> Option<PermGroup> {
        let gens = h
            .generators()
            .iter()
            .map(|x| self.apply(x))
            .collect::<Option<Vec<_>>>()?;
        Some(PermGroup::new(self.target.degree(), gens).expect("same degree"))
    }

    /// Exhaustive homomorphism and bijectivity check.
    pub fn verify(&self) -> bool {
        let el = self.source_table.elements();
        let n = el.len();
        let mut seen = vec![false; n];
        for &m in &self.map {
            if seen[m] {
                return false;
            }
            seen[m] = true;
        }
        let tel = self.target_table.elements();
        for i in 0..n {
            for (gi, g) in self.source.generators().iter().enumerate() {
                let j = self.source_table.index_of(&el[i].mul(g)).expect("closed");
                if tel[self.map[i]].mul(&self.gen_images[gi]) != tel[self.map[j]] {
                    return false;
                }
            }
        }
        true
    }
}

/// Extend generator images along the Cayley graph; `None` if inconsistent or not injective.
fn extend_hom(
    st: &ElementTable,
    tt: &ElementTable,
    src_gens: &[Perm],
    imgs: &[Perm],
) -> Option<Vec<usize>> {
    let n = st.len();
    let el = st.elements();
    let tel = tt.elements();
    let mut map = vec![usize::MAX; n];
    map[0] = tt.index_of(&tel[0])?;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let i = queue[head];
        head += 1;
        for (gi, g) in src_gens.iter().enumerate() {
            let j = st.index_of(&el[i].mul(g))?;
            let y = tel[map[i]].mul(&imgs[gi]);
            let yj = tt.index_of(&y)?;
            if map[j] == usize::MAX {
                map[j] = yj;
                queue.push(j);
            } else if map[j] != yj {
                return None;
            }
        }
    }
    let mut seen = vec![false; tt.len()];
    for &m in &map {
        if m == usize::MAX || seen[m] {
            return None;
        }
        seen[m] = true;
    }
    Some(map)
}

/// Search for an isomorphism `a -> b` by backtracking over images of a's generators,
/// pruned by element orders.
pub fn find_isomorphism(a: &PermGroup, b: &PermGroup) -> Result<Option<GroupIso>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    let at = a.element_table()?;
    let bt = b.element_table()?;
    if order_profile(&at) != order_profile(&bt) {
        return Ok(None);
    }
    // a small generating set of a
    let small = PermGroup::generated_by(a.degree(), at.elements().iter());
    let gens = small.generators().to_vec();
    let small_t = small.element_table()?;
    let cands: Vec<Vec<&Perm>> = gens
        .iter()
        .map(|g| {
            let o = g.order();
            bt.elements().iter().filter(|y| y.order() == o).collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let imgs: Vec<Perm> = choice.iter().zip(&cands).map(|(&c, v)| v[c].clone()).collect();
        if let Some(map_small) = extend_hom(&small_t, &bt, &gens, &imgs) {
            // translate images of a's own generators
            let own: Vec<Perm> = a
                .generators()
                .iter()
                .map(|x| bt.elements()[map_small[small_t.index_of(x).expect("same group")]].clone())
                .collect();
            return Ok(Some(GroupIso::from_generator_images(a, b, own)?));
        }
        // advance odometer
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(None);
            }
            choice[k] += 1;
            if choice[k] < cands[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn order_profile(t: &ElementTable) -> Vec<u64> {
    let mut v: Vec<u64> = t.elements().iter().map(|x| x.order()).collect();
    v.sort_unstable();
    v
}
