//! Deterministic Schreier–Sims stabilizer chains with straight-line programs.
//!
//! Every strong generator and transversal element carries a node of a straight-line program
//! over the original generators, so any group element can be rewritten as a product of
//! nodes and evaluated in another group (for instance as matrices of a representation).

use super::perm::Perm;

/// One step of a straight-line program over the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlpStep {
    Identity,
    Gen(usize),
    Mul(usize, usize),
    Inv(usize),
}

/// Evaluate node `target` of `slp` in some group, memoising into `memo`.
pub fn eval_slp<T: Clone>(
    slp: &[SlpStep],
    target: usize,
    memo: &mut Vec<Option<T>>,
    identity: &dyn Fn() -> T,
    gen: &dyn Fn(usize) -> T,
    mul: &dyn Fn(&T, &T) -> T,
    inv: &dyn Fn(&T) -> T,
) -> T {
    if memo.len() < slp.len() {
        memo.resize(slp.len(), None);
    }
    // iterative post-order evaluation to avoid deep recursion
    let mut stack = vec![target];
    while let Some(&n) = stack.last() {
        if memo[n].is_some() {
            stack.pop();
            continue;
        }
        let ready = match slp[n] {
            SlpStep::Identity => Some(identity()),
            SlpStep::Gen(i) => Some(gen(i)),
            SlpStep::Mul(a, b) => match (&memo[a], &memo[b]) {
                (Some(x), Some(y)) => Some(mul(x, y)),
                (None, _) => {
                    stack.push(a);
                    None
                }
                (_, None) => {
                    stack.push(b);
                    None
                }
            },
            SlpStep::Inv(a) => match &memo[a] {
                Some(x) => Some(inv(x)),
                None => {
                    stack.push(a);
                    None
                }
            },
        };
        if let Some(v) = ready {
            memo[n] = Some(v);
            stack.pop();
        }
    }
    memo[target].clone().expect("evaluated")
}

#[derive(Clone, Debug)]
struct TransElem {
    perm: Perm,
    inv: Perm,
    node: usize,
}

#[derive(Clone, Debug)]
pub struct Level {
    base: u32,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    slot: Vec<u32>,
    trans: Vec<TransElem>,
}

const NONE: u32 = u32::MAX;

impl Level {
    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn in_orbit(&self, x: u32) -> bool {
        self.slot[x as usize] != NONE
    }

    /// Transversal element mapping the base point to `x`.
    pub fn transversal(&self, x: u32) -> Option<&Perm> {
        let s = self.slot[x as usize];
        (s != NONE).then(|| &self.trans[s as usize].perm)
    }

    pub fn transversal_inverse(&self, x: u32) -> Option<&Perm> {
        let s = self.slot[x as usize];
        (s != NONE).then(|| &self.trans[s as usize].inv)
    }

    pub fn transversal_node(&self, x: u32) -> Option<usize> {
        let s = self.slot[x as usize];
        (s != NONE).then(|| self.trans[s as usize].node)
    }

    /// Indices into the chain's strong generators that fix all earlier base points.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gens
    }
}

/// A stabilizer chain for the group generated by `gens`.
#[derive(Clone, Debug)]
pub struct Chain {
    degree: usize,
    slp: Vec<SlpStep>,
    strong: Vec<(Perm, usize)>,
    levels: Vec<Level>,
}

impl Chain {
    /// Build a chain whose base starts with `base_prefix`.
    pub fn new(degree: usize, gens: &[Perm], base_prefix: &[u32]) -> Chain {
        let mut c = Chain {
            degree,
            slp: vec![SlpStep::Identity],
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for &b in base_prefix {
            c.push_level(b);
        }
        for (i, g) in gens.iter().enumerate() {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if g.is_identity() {
                continue;
            }
            c.slp.push(SlpStep::Gen(i));
            let node = c.slp.len() - 1;
            c.add_strong(g.clone(), node);
        }
        c.run();
        c
    }

    fn push_level(&mut self, b: u32) {
        self.levels.push(Level {
            base: b,
            gens: Vec::new(),
            orbit: Vec::new(),
            slot: vec![NONE; self.degree],
            trans: Vec::new(),
        });
    }

    fn add_strong(&mut self, g: Perm, node: usize) {
        if !self.levels.iter().any(|l| g.apply(l.base) != l.base) {
            let moved = (0..self.degree as u32)
                .find(|&x| g.apply(x) != x)
                .expect("non-identity");
            self.push_level(moved);
        }
        self.strong.push((g, node));
    }

    fn recompute(&mut self, l: usize) {
        let fixes_prefix = |g: &Perm, levels: &[Level]| levels[..l].iter().all(|lv| g.apply(lv.base) == lv.base);
        let gens: Vec<usize> = (0..self.strong.len())
            .filter(|&i| fixes_prefix(&self.strong[i].0, &self.levels))
            .collect();
        let base = self.levels[l].base;
        let degree = self.degree;
        let mut slot = vec![NONE; degree];
        let mut trans = Vec::new();
        let mut orbit = vec![base];
        slot[base as usize] = 0;
        trans.push(TransElem {
            perm: Perm::identity(degree),
            inv: Perm::identity(degree),
            node: 0,
        });
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            let xs = slot[x as usize] as usize;
            head += 1;
            for &gi in &gens {
                let (g, gnode) = &self.strong[gi];
                let y = g.apply(x);
                if slot[y as usize] == NONE {
                    let perm = trans[xs].perm.mul(g);
                    let inv = perm.inverse();
                    self.slp.push(SlpStep::Mul(trans[xs].node, *gnode));
                    let node = self.slp.len() - 1;
                    slot[y as usize] = trans.len() as u32;
                    trans.push(TransElem { perm, inv, node });
                    orbit.push(y);
                }
            }
        }
        let lv = &mut self.levels[l];
        lv.gens = gens;
        lv.orbit = orbit;
        lv.slot = slot;
        lv.trans = trans;
    }

    /// Sift starting at level `from`; returns residue, the level where sifting stopped, and
    /// the transversal nodes divided off.
    fn sift_from(&self, mut h: Perm, from: usize) -> (Perm, usize, Vec<usize>) {
        let mut used = Vec::new();
        for l in from..self.levels.len() {
            let lv = &self.levels[l];
            let b = h.apply(lv.base);
            let s = lv.slot[b as usize];
            if s == NONE {
                return (h, l, used);
            }
            let t = &lv.trans[s as usize];
            h = h.mul(&t.inv);
            used.push(t.node);
        }
        (h, self.levels.len(), used)
    }

    fn run(&mut self) {
        for l in 0..self.levels.len() {
            self.recompute(l);
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            self.recompute(li);
            let mut jumped = None;
            let orbit = self.levels[li].orbit.clone();
            let gens = self.levels[li].gens.clone();
            'outer: for &beta in &orbit {
                for &gi in &gens {
                    let lv = &self.levels[li];
                    let ub = &lv.trans[lv.slot[beta as usize] as usize];
                    let s = &self.strong[gi].0;
                    let gamma = s.apply(beta);
                    let ug = &lv.trans[lv.slot[gamma as usize] as usize];
                    let prod = ub.perm.mul(s);
                    if prod == ug.perm {
                        continue;
                    }
                    let h = prod.mul(&ug.inv);
                    let (res, j, used) = self.sift_from(h, li + 1);
                    if res.is_identity() {
                        continue;
                    }
                    let (ubn, ugn, sn) = (ub.node, ug.node, self.strong[gi].1);
                    self.slp.push(SlpStep::Mul(ubn, sn));
                    let mut node = self.slp.len() - 1;
                    self.slp.push(SlpStep::Inv(ugn));
                    self.slp.push(SlpStep::Mul(node, self.slp.len() - 1));
                    node = self.slp.len() - 1;
                    for u in used {
                        self.slp.push(SlpStep::Inv(u));
                        self.slp.push(SlpStep::Mul(node, self.slp.len() - 1));
                        node = self.slp.len() - 1;
                    }
                    let before = self.levels.len();
                    self.add_strong(res, node);
                    let top = if self.levels.len() > before { before } else { j };
                    for l in li + 1..=top.min(self.levels.len() - 1) {
                        self.recompute(l);
                    }
                    jumped = Some(top.min(self.levels.len() - 1));
                    break 'outer;
                }
            }
            match jumped {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn slp(&self) -> &[SlpStep] {
        &self.slp
    }

    pub fn strong_generators(&self) -> impl Iterator<Item = &Perm> {
        self.strong.iter().map(|(p, _)| p)
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, x: &Perm) -> bool {
        x.degree() == self.degree && {
            let (res, j, _) = self.sift_from(x.clone(), 0);
            j == self.levels.len() && res.is_identity()
        }
    }

    /// Nodes `[n_k, .., n_1]` with `x` equal to their product in this order.
    pub fn factor(&self, x: &Perm) -> Option<Vec<usize>> {
        let (res, j, mut used) = self.sift_from(x.clone(), 0);
        if j != self.levels.len() || !res.is_identity() {
            return None;
        }
        used.reverse();
        Some(used)
    }

    /// Relations of the chain presentation: pairs of node products that must agree,
    /// `u_beta * s = (sifted word) * u_{beta^s}`, listed as (lhs nodes, rhs nodes).
    pub fn presentation_relations(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        for (li, lv) in self.levels.iter().enumerate() {
            for &beta in &lv.orbit {
                for &gi in &lv.gens {
                    let ub = &lv.trans[lv.slot[beta as usize] as usize];
                    let (s, sn) = &self.strong[gi];
                    let gamma = s.apply(beta);
                    let ug = &lv.trans[lv.slot[gamma as usize] as usize];
                    let h = ub.perm.mul(s).mul(&ug.inv);
                    let (res, j, mut used) = self.sift_from(h, li + 1);
                    debug_assert!(res.is_identity() && j == self.levels.len());
                    used.reverse();
                    used.push(ug.node);
                    out.push((vec![ub.node, *sn], used));
                }
            }
        }
        out
    }

    /// Evaluate the product of `nodes` (in order) as a permutation; used to check SLPs.
    pub fn eval_perm(&self, gens: &[Perm], nodes: &[usize]) -> Perm {
        let mut memo = Vec::new();
        let mut acc = Perm::identity(self.degree);
        for &n in nodes {
            let v = eval_slp(
                &self.slp,
                n,
                &mut memo,
                &|| Perm::identity(self.degree),
                &|i| gens[i].clone(),
                &|a, b| a.mul(b),
                &|a| a.inverse(),
            );
            acc = acc.mul(&v);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Perm> {
        let cyc: Vec<u32> = (0..n as u32).collect();
        vec![
            Perm::from_cycles(n, &[cyc]).unwrap(),
            Perm::from_cycles(n, &[vec![0, 1]]).unwrap(),
        ]
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..8 {
            let c = Chain::new(n, &sym(n), &[]);
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(c.order(), fact);
        }
    }

    #[test]
    fn factorization_evaluates_back() {
        let gens = sym(6);
        let c = Chain::new(6, &gens, &[5, 4]);
        assert_eq!(&c.base()[..2], &[5, 4]);
        let x = Perm::from_cycles(6, &[vec![0, 3, 2], vec![1, 5]]).unwrap();
        let nodes = c.factor(&x).unwrap();
        assert_eq!(c.eval_perm(&gens, &nodes), x);
        for (lhs, rhs) in c.presentation_relations() {
            assert_eq!(c.eval_perm(&gens, &lhs), c.eval_perm(&gens, &rhs));
        }
    }

    #[test]
    fn membership() {
        // A4 inside S4
        let a4 = vec![
            Perm::from_cycles(4, &[vec![0, 1, 2]]).unwrap(),
            Perm::from_cycles(4, &[vec![1, 2, 3]]).unwrap(),
        ];
        let c = Chain::new(4, &a4, &[]);
        assert_eq!(c.order(), 12);
        assert!(!c.contains(&Perm::from_cycles(4, &[vec![0, 1]]).unwrap()));
        assert!(c.contains(&Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap()));
    }
}
