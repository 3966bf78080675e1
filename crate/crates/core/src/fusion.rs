//! The fusion system of a group on a p-subgroup: all subgroups of `P` with the conjugation maps
//! induced by the ambient group.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{subgroups_of_p_group, ElementTable, GroupIso, Perm, PermGroup};

/// Largest `|P|` handled (subgroups are stored as bit masks over the elements of `P`).
pub const FUSION_P_CAP: u128 = 64;

/// An injective map between subgroups of `P`: `images[i]` is the `P`-index of the image of the
/// `i`-th element of the source (source elements in increasing `P`-index order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FusionMap {
    pub source: usize,
    pub images: Vec<usize>,
}

/// A conjugation map together with one element inducing it.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub map: FusionMap,
    pub target_mask: u128,
    pub witness: Perm,
}

#[derive(Clone, Debug)]
pub struct FusionMorphismSet {
    pub source: usize,
    pub target: usize,
    pub morphisms: Vec<Morphism>,
}

pub struct FusionSystem {
    group: PermGroup,
    p_sub: PermGroup,
    prime: u32,
    table: Arc<ElementTable>,
    subgroups: Vec<PermGroup>,
    masks: Vec<u128>,
    by_mask: HashMap<u128, usize>,
    /// Per subgroup: all distinct conjugation maps into `P`.
    transports: Vec<Vec<Morphism>>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl std::fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FusionSystem(|P| = {}, {} subgroups, {} classes)",
            self.p_sub.order(),
            self.subgroups.len(),
            self.classes.len()
        )
    }
}

fn p_of(order: u128) -> Option<u32> {
    if order <= 1 {
        return None;
    }
    let mut p = 2u128;
    while order % p != 0 {
        p += 1;
    }
    let mut n = order;
    while n % p == 0 {
        n /= p;
    }
    (n == 1).then_some(p as u32)
}

pub fn fusion_system(group: &PermGroup, p_sub: &PermGroup) -> Result<FusionSystem> {
    if !group.contains_group(p_sub) {
        return Err(Error::NotSubgroup("P is not a subgroup of G".into()));
    }
    let order = p_sub.order();
    if order > FUSION_P_CAP {
        return Err(Error::CapExceeded {
            what: "order of P for subgroup enumeration",
            limit: FUSION_P_CAP,
            actual: order,
        });
    }
    let prime = match p_of(order) {
        Some(p) => p,
        None if order == 1 => 2,
        None => return Err(Error::NotPGroup { p: 0, order }),
    };
    let table = p_sub.element_table()?;
    let subgroups = subgroups_of_p_group(p_sub)?;
    let masks: Vec<u128> = subgroups
        .iter()
        .map(|q| {
            q.element_table()
                .expect("small")
                .elements()
                .iter()
                .fold(0u128, |m, x| m | 1u128 << table.index_of(x).expect("in P"))
        })
        .collect();
    let by_mask = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let gt = group.element_table()?;
    let mut transports = Vec::with_capacity(subgroups.len());
    for (qi, &mask) in masks.iter().enumerate() {
        let elems: Vec<usize> = (0..table.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut list = Vec::new();
        'g: for g in gt.elements() {
            let mut images = Vec::with_capacity(elems.len());
            let mut tm = 0u128;
            for &i in &elems {
                match table.index_of(&table.elements()[i].conj(g)) {
                    Some(j) => {
                        images.push(j);
                        tm |= 1u128 << j;
                    }
                    None => continue 'g,
                }
            }
            if seen.insert(images.clone()) {
                list.push(Morphism {
                    map: FusionMap { source: qi, images },
                    target_mask: tm,
                    witness: g.clone(),
                });
            }
        }
        list.sort_by(|a, b| a.map.cmp(&b.map));
        transports.push(list);
    }
    // F-conjugacy classes: the image masks of all maps from each subgroup
    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut classes = Vec::new();
    for qi in 0..subgroups.len() {
        if class_of[qi] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = transports[qi]
            .iter()
            .map(|m| by_mask_get(&masks, m.target_mask))
            .collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    Ok(FusionSystem {
        group: group.clone(),
        p_sub: p_sub.clone(),
        prime,
        table,
        subgroups,
        masks,
        by_mask,
        transports,
        classes,
        class_of,
    })
}

fn by_mask_get(masks: &[u128], m: u128) -> usize {
    masks.iter().position(|&x| x == m).expect("image of a subgroup is a subgroup")
}

/// Outcome of the saturation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationReport {
    /// `Some(true)` when `P` is Sylow in `G`, which forces saturation.
    pub sylow_fast_path: Option<bool>,
    pub definitional: bool,
    /// F-classes (by representative index) lacking a fully automized receptive member.
    pub failing_classes: Vec<usize>,
}

impl SaturationReport {
    pub fn saturated(&self) -> bool {
        self.definitional
    }
}

/// First difference found when comparing two fusion systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionDivergence {
    pub source: usize,
    pub target: usize,
    /// Map in the first system (transported) missing from the second, or vice versa.
    pub only_in_first: bool,
    pub map: Vec<usize>,
}

impl FusionSystem {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn p_subgroup(&self) -> &PermGroup {
        &self.p_sub
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn subgroups(&self) -> &[PermGroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &PermGroup {
        &self.subgroups[i]
    }

    pub fn mask(&self, i: usize) -> u128 {
        self.masks[i]
    }

    /// Index of a subgroup of `P` in the subgroup table.
    pub fn index_of(&self, q: &PermGroup) -> Option<usize> {
        let t = q.element_table().ok()?;
        let mut m = 0u128;
        for x in t.elements() {
            m |= 1u128 << self.table.index_of(x)?;
        }
        self.by_mask.get(&m).copied()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Elements of a subgroup as `P`-indices, increasing.
    pub fn elements_of(&self, i: usize) -> Vec<usize> {
        (0..self.table.len()).filter(|&j| self.masks[i] >> j & 1 == 1).collect()
    }

    pub fn p_element(&self, j: usize) -> &Perm {
        &self.table.elements()[j]
    }

    /// `Hom_F(Q, R)`.
    pub fn hom_f(&self, q: usize, r: usize) -> FusionMorphismSet {
        let rm = self.masks[r];
        FusionMorphismSet {
            source: q,
            target: r,
            morphisms: self.transports[q]
                .iter()
                .filter(|m| m.target_mask & !rm == 0)
                .cloned()
                .collect(),
        }
    }

    /// `Aut_F(Q)` as maps.
    pub fn aut_f(&self, q: usize) -> Vec<FusionMap> {
        self.hom_f(q, q).morphisms.into_iter().map(|m| m.map).collect()
    }

    /// `Aut_P(Q)`: maps induced by `N_P(Q)`.
    pub fn aut_p(&self, q: usize) -> Result<Vec<FusionMap>> {
        let n = self.p_sub.normalizer(&self.subgroups[q])?;
        let elems = self.elements_of(q);
        let mut set: Vec<FusionMap> = n
            .elements()?
            .iter()
            .map(|y| FusionMap {
                source: q,
                images: elems
                    .iter()
                    .map(|&i| self.table.index_of(&self.p_element(i).conj(y)).expect("normalized"))
                    .collect(),
            })
            .collect();
        set.sort();
        set.dedup();
        Ok(set)
    }

    pub fn normalizer_in_p_order(&self, q: usize) -> Result<u128> {
        Ok(self.p_sub.normalizer(&self.subgroups[q])?.order())
    }

    pub fn is_fully_normalized(&self, q: usize) -> Result<bool> {
        let own = self.normalizer_in_p_order(q)?;
        for &r in &self.classes[self.class_of[q]] {
            if self.normalizer_in_p_order(r)? > own {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_fully_automized(&self, q: usize) -> Result<bool> {
        let a = self.aut_f(q).len() as u128;
        let b = self.aut_p(q)?.len() as u128;
        Ok((a / b) % self.prime as u128 != 0)
    }

    /// For every `F`-isomorphism `phi: R -> Q`, some conjugation map defined on `N_phi` extends it.
    pub fn is_receptive(&self, q: usize) -> Result<bool> {
        let aut_p: HashSet<Vec<usize>> = self.aut_p(q)?.into_iter().map(|m| m.images).collect();
        let qm = self.masks[q];
        let q_elems = self.elements_of(q);
        let gt = self.group.element_table()?;
        for &r in &self.classes[self.class_of[q]] {
            let r_elems = self.elements_of(r);
            let np_r = self.p_sub.normalizer(&self.subgroups[r])?.elements()?;
            let c_r: Vec<&Perm> = gt
                .elements()
                .iter()
                .filter(|c| r_elems.iter().all(|&i| self.p_element(i).commutes_with(c)))
                .collect();
            for phi in self.transports[r].iter().filter(|m| m.target_mask == qm) {
                let g0 = &phi.witness;
                let g0i = g0.inverse();
                // N_phi: g in N_P(R) with phi^-1 c_g phi in Aut_P(Q)
                let n_phi: Vec<&Perm> = np_r
                    .iter()
                    .filter(|g| {
                        let h = g0i.mul(g).mul(g0);
                        let images: Vec<usize> = q_elems
                            .iter()
                            .map(|&i| self.table.index_of(&self.p_element(i).conj(&h)).expect("normalizes Q"))
                            .collect();
                        aut_p.contains(&images)
                    })
                    .collect();
                // extensions of phi: conjugation by c g0 with c centralizing R
                let extends = c_r.iter().any(|c| {
                    let h = c.mul(g0);
                    n_phi.iter().all(|x| self.p_sub.contains(&x.conj(&h)))
                });
                if !extends {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The fully normalized member of each class with the least index, for nontrivial classes
    /// when `nontrivial_only`.
    pub fn class_representatives(&self, nontrivial_only: bool) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for cls in &self.classes {
            if nontrivial_only && self.subgroups[cls[0]].is_trivial() {
                continue;
            }
            let mut best = cls[0];
            let mut best_n = self.normalizer_in_p_order(best)?;
            for &r in &cls[1..] {
                let n = self.normalizer_in_p_order(r)?;
                if n > best_n {
                    best = r;
                    best_n = n;
                }
            }
            out.push(best);
        }
        out.sort_by_key(|&i| std::cmp::Reverse((self.subgroups[i].order(), std::cmp::Reverse(i))));
        Ok(out)
    }

    pub fn is_saturated(&self) -> Result<SaturationReport> {
        let index = self.group.order() / self.p_sub.order();
        let sylow_fast_path = (index % self.prime as u128 != 0).then_some(true);
        let mut failing = Vec::new();
        for (ci, cls) in self.classes.iter().enumerate() {
            let mut ok = false;
            for &q in cls {
                if self.is_fully_automized(q)? && self.is_receptive(q)? {
                    ok = true;
                    break;
                }
            }
            if !ok {
                failing.push(ci);
            }
        }
        Ok(SaturationReport {
            sylow_fast_path,
            definitional: failing.is_empty(),
            failing_classes: failing,
        })
    }

    /// `|Hom_F(Q, R)|` for all pairs, by subgroup index.
    pub fn hom_counts(&self) -> Vec<Vec<usize>> {
        (0..self.subgroups.len())
            .map(|q| (0..self.subgroups.len()).map(|r| self.hom_f(q, r).morphisms.len()).collect())
            .collect()
    }

    /// Check closure of hom sets under composition.
    pub fn composition_closed(&self) -> bool {
        let map_sets: Vec<HashSet<Vec<usize>>> = self
            .transports
            .iter()
            .map(|l| l.iter().map(|m| m.map.images.clone()).collect())
            .collect();
        for list in &self.transports {
            for a in list {
                let r = by_mask_get(&self.masks, a.target_mask);
                let r_elems = self.elements_of(r);
                for b in &self.transports[r] {
                    // b after a
                    let composite: Vec<usize> = a
                        .map
                        .images
                        .iter()
                        .map(|j| b.map.images[r_elems.binary_search(j).expect("in R")])
                        .collect();
                    if !map_sets[a.map.source].contains(&composite) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Outcome of comparing two fusion systems through an identification of their `P`s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionComparison {
    pub equal: bool,
    pub witness: Option<FusionDivergence>,
}

/// Do `F` and `F'` agree after transporting every hom set through `ident: P -> P'`?
pub fn fusion_equal(f1: &FusionSystem, f2: &FusionSystem, ident: &GroupIso) -> Result<FusionComparison> {
    if !ident.source().same_elements(&f1.p_sub) || !ident.target().same_elements(&f2.p_sub) {
        return Err(Error::Hypothesis("identification does not match the two P's".into()));
    }
    if !ident.verify() {
        return Err(Error::Hypothesis("identification is not an isomorphism".into()));
    }
    // P-index in F to P'-index in F'
    let to2: Vec<usize> = f1
        .table
        .elements()
        .iter()
        .map(|x| f2.table.index_of(&ident.apply(x).expect("in P")).expect("in P'"))
        .collect();
    let sub_map: Vec<usize> = f1
        .masks
        .iter()
        .map(|&m| {
            let m2 = (0..f1.table.len())
                .filter(|&i| m >> i & 1 == 1)
                .fold(0u128, |acc, i| acc | 1u128 << to2[i]);
            f2.by_mask[&m2]
        })
        .collect();
    let n = f1.subgroups.len();
    for q in 0..n {
        let q2 = sub_map[q];
        let q_elems = f1.elements_of(q);
        let q2_elems = f2.elements_of(q2);
        // position in Q' list -> position in Q list
        let pos: BTreeMap<usize, usize> = q_elems.iter().enumerate().map(|(k, &i)| (to2[i], k)).collect();
        for r in 0..n {
            let r2 = sub_map[r];
            let transported: HashSet<Vec<usize>> = f1
                .hom_f(q, r)
                .morphisms
                .iter()
                .map(|m| q2_elems.iter().map(|j| to2[m.map.images[pos[j]]]).collect())
                .collect();
            let other: HashSet<Vec<usize>> =
                f2.hom_f(q2, r2).morphisms.iter().map(|m| m.map.images.clone()).collect();
            if transported != other {
                let (only_in_first, map) = match transported.difference(&other).min() {
                    Some(m) => (true, m.clone()),
                    None => (false, other.difference(&transported).min().expect("sets differ").clone()),
                };
                return Ok(FusionComparison {
                    equal: false,
                    witness: Some(FusionDivergence {
                        source: q,
                        target: r,
                        only_in_first,
                        map,
                    }),
                });
            }
        }
    }
    Ok(FusionComparison {
        equal: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{find_common_sylow_identification, quaternion8, sl2, symmetric};

    #[test]
    fn fusion_of_q8_in_sl2_3() {
        let g = sl2(3).unwrap();
        let p = g.sylow_subgroup(2).unwrap();
        let f = fusion_system(&g, &p).unwrap();
        assert_eq!(f.subgroups().len(), 6);
        let orders: Vec<Vec<u128>> = f
            .classes()
            .iter()
            .map(|c| c.iter().map(|&i| f.subgroup(i).order()).collect())
            .collect();
        assert!(orders.contains(&vec![4, 4, 4]));
        let reps = f.class_representatives(true).unwrap();
        let rep_orders: Vec<u128> = reps.iter().map(|&i| f.subgroup(i).order()).collect();
        assert_eq!(rep_orders, vec![8, 4, 2]);
        for i in 0..f.subgroups().len() {
            assert!(f.is_fully_normalized(i).unwrap());
            assert!(f.is_fully_automized(i).unwrap());
            assert!(f.is_receptive(i).unwrap());
        }
        let sat = f.is_saturated().unwrap();
        assert_eq!(sat.sylow_fast_path, Some(true));
        assert!(sat.definitional);
        assert!(f.composition_closed());
        // |Aut_F(Q)| = |N_G(Q)| / |C_G(Q)|
        for (i, q) in f.subgroups().iter().enumerate() {
            let n = g.normalizer(q).unwrap().order();
            let c = g.centralizer(q).unwrap().order();
            assert_eq!(f.aut_f(i).len() as u128, n / c);
        }
    }

    #[test]
    fn q8_alone_does_not_fuse_its_cyclic_subgroups() {
        let g = sl2(3).unwrap();
        let q8 = quaternion8();
        let id = find_common_sylow_identification(&q8, &g, 2).unwrap();
        let f1 = fusion_system(&q8, &id.in_first).unwrap();
        let f2 = fusion_system(&g, &id.in_second).unwrap();
        let cmp = fusion_equal(&f1, &f2, &id.iso).unwrap();
        assert!(!cmp.equal);
        assert!(cmp.witness.is_some());
        assert!(fusion_equal(&f2, &f2, &GroupIso::identity(&id.in_second).unwrap()).unwrap().equal);
    }

    #[test]
    fn non_fully_normalized_subgroup_of_d8_in_s4() {
        let g = symmetric(4);
        let p = g.sylow_subgroup(2).unwrap();
        let f = fusion_system(&g, &p).unwrap();
        let not_fn: Vec<usize> = (0..f.subgroups().len())
            .filter(|&i| !f.is_fully_normalized(i).unwrap())
            .collect();
        assert!(!not_fn.is_empty());
        assert!(not_fn.iter().all(|&i| f.subgroup(i).order() == 2));
        assert!(f.is_saturated().unwrap().definitional);
    }
}
