use std::collections::HashMap;

use super::chain::Chain;
use super::perm::Perm;
use super::PermGroup;
use crate::error::{Error, Result};

/// Largest number of cosets that will be enumerated.
pub const COSET_CAP: u128 = 1_000_000;

/// The right cosets `H x` of a subgroup, with canonical representatives and the
/// permutation action of the ambient generators.
pub struct CosetSpace {
    group: PermGroup,
    sub: PermGroup,
    hchain: Chain,
    gbase: Vec<u32>,
    reps: Vec<Perm>,
    labels: HashMap<Vec<u32>, usize>,
    action: Vec<Vec<u32>>,
}

impl CosetSpace {
    pub fn new(group: &PermGroup, sub: &PermGroup) -> Result<CosetSpace> {
        if !group.contains_group(sub) {
            return Err(Error::NotSubgroup("coset space of a non-subgroup".into()));
        }
        let index = group.order() / sub.order();
        if index > COSET_CAP {
            return Err(Error::CapExceeded {
                what: "number of cosets",
                limit: COSET_CAP,
                actual: index,
            });
        }
        let gbase = group.chain().base();
        let hchain = Chain::new(group.degree(), sub.generators(), &gbase);
        let mut cs = CosetSpace {
            group: group.clone(),
            sub: sub.clone(),
            hchain,
            gbase,
            reps: Vec::new(),
            labels: HashMap::new(),
            action: vec![Vec::with_capacity(index as usize); group.generators().len()],
        };
        let id = group.identity();
        let (r, l) = cs.canonical(&id);
        cs.labels.insert(l, 0);
        cs.reps.push(r);
        let mut head = 0;
        while head < cs.reps.len() {
            for gi in 0..group.generators().len() {
                let y = cs.reps[head].mul(&group.generators()[gi]);
                let (r, l) = cs.canonical(&y);
                let n = cs.reps.len();
                let j = *cs.labels.entry(l).or_insert(n);
                if j == n {
                    cs.reps.push(r);
                }
                cs.action[gi].push(j as u32);
            }
            head += 1;
        }
        debug_assert_eq!(cs.reps.len() as u128, index);
        Ok(cs)
    }

    /// Lexicographically least element of `H x` by base images, and its base image.
    fn canonical(&self, x: &Perm) -> (Perm, Vec<u32>) {
        let mut x = x.clone();
        for lv in self.hchain.levels() {
            if lv.orbit().len() == 1 {
                continue;
            }
            let best = lv
                .orbit()
                .iter()
                .copied()
                .min_by_key(|&g| x.apply(g))
                .expect("orbit nonempty");
            if best != lv.base() {
                x = lv.transversal(best).expect("in orbit").mul(&x);
            }
        }
        let label = self.gbase.iter().map(|&b| x.apply(b)).collect();
        (x, label)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.sub
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Canonical coset representatives; index 0 is the subgroup itself.
    pub fn reps(&self) -> &[Perm] {
        &self.reps
    }

    /// Index of the coset `H x`.
    pub fn coset_of(&self, x: &Perm) -> usize {
        let (_, l) = self.canonical(x);
        *self.labels.get(&l).expect("element of the ambient group")
    }

    /// Index of `(H r_i) x`.
    pub fn act(&self, i: usize, x: &Perm) -> usize {
        self.coset_of(&self.reps[i].mul(x))
    }

    /// Images of cosets under generator `gi`.
    pub fn generator_action(&self, gi: usize) -> &[u32] {
        &self.action[gi]
    }

    /// The action of the ambient generators as permutations of the cosets.
    pub fn action_perms(&self) -> Vec<Perm> {
        self.action
            .iter()
            .map(|a| Perm::from_images(a.clone()).expect("coset action is a bijection"))
            .collect()
    }

    /// The action of an arbitrary element of the ambient group on the cosets.
    pub fn perm_of(&self, x: &Perm) -> Perm {
        let imgs = (0..self.len()).map(|i| self.act(i, x) as u32).collect();
        Perm::from_images(imgs).expect("coset action is a bijection")
    }
}

/// Representatives of the double cosets `H t K`, each with the size of its double coset.
pub fn double_coset_reps(
    group: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
) -> Result<Vec<(Perm, u128)>> {
    if !group.contains_group(k) {
        return Err(Error::NotSubgroup("double cosets with a non-subgroup".into()));
    }
    let cs = CosetSpace::new(group, h)?;
    let kperms: Vec<Perm> = k.generators().iter().map(|x| cs.perm_of(x)).collect();
    let mut seen = vec![false; cs.len()];
    let mut out = Vec::new();
    for s in 0..cs.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut orbit = vec![s];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for kp in &kperms {
                let y = kp.apply(x as u32) as usize;
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        out.push((cs.reps()[s].clone(), h.order() * orbit.len() as u128));
    }
    Ok(out)
}
