//! Mackey decomposition, Higman's criterion against a direct-summand oracle, and
//! well-definedness of Scott modules.

mod support;

use modrep::group::{double_coset_reps, PermGroup};
use modrep::rep::{
    decompose, is_isomorphic, is_relatively_projective, scott_module, Decomposition, Representation,
};
use modrep::{rng, Rng};
use proptest::prelude::*;
use rand::Rng as _;
use support::{config, conjugate_into, curated_up_to, random_p_subgroup, random_subgroup};

/// Whether two decompositions have the same summands up to isomorphism and multiplicity.
fn same_multiset(a: &Decomposition, b: &Decomposition, r: &mut Rng) -> bool {
    if a.dims() != b.dims() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for s in &a.summands {
        for (j, t) in b.summands.iter().enumerate() {
            if !used[j] && is_isomorphic(&s.module, &t.module, r).unwrap() {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn random_indecomposable(c: &support::Case, r: &mut Rng) -> Representation {
    let h = if r.gen_bool(0.5) {
        random_p_subgroup(&c.group, c.p(), r)
    } else {
        random_subgroup(&c.group, r)
    };
    let mut m = Representation::permutation_module(&c.group, &h, &c.field).unwrap();
    if r.gen_bool(0.3) {
        let s = random_subgroup(&c.group, r);
        let n = Representation::permutation_module(&c.group, &s, &c.field).unwrap();
        if m.dim() * n.dim() <= 48 {
            m = m.tensor(&n).unwrap();
        }
    }
    let d = decompose(&m, r).unwrap();
    d.summands[r.gen_range(0..d.len())].module.clone()
}

/// Oracle for relative projectivity: `M | M restricted to Q then induced back`.
fn summand_of_induced(m: &Representation, q: &PermGroup, r: &mut Rng) -> bool {
    let ind = m.restrict(q).unwrap().induce(m.group()).unwrap();
    let d = decompose(&ind, r).unwrap();
    d.summands.iter().any(|s| is_isomorphic(&s.module, m, r).unwrap())
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn mackey_formula(i in 0usize..64, seed in any::<u64>()) {
        let cases = curated_up_to(60);
        let c = cases[i % cases.len()];
        let g = &c.group;
        let mut r = rng(seed);
        let h = random_subgroup(g, &mut r);
        let k = random_subgroup(g, &mut r);
        let lhs = Representation::permutation_module(g, &h, &c.field).unwrap().restrict(&k).unwrap();
        let mut rhs = Representation::zero_module(&k, &c.field);
        let mut total = 0u128;
        for (t, size) in double_coset_reps(g, &h, &k).unwrap() {
            let stab = h.conjugate(&t).intersection(&k).unwrap();
            rhs = rhs.direct_sum(&Representation::permutation_module(&k, &stab, &c.field).unwrap()).unwrap();
            total += size;
        }
        prop_assert_eq!(total, g.order());
        let a = decompose(&lhs, &mut r).unwrap();
        let b = decompose(&rhs, &mut r).unwrap();
        prop_assert!(same_multiset(&a, &b, &mut r));
    }

    #[test]
    fn higman_agrees_with_summand_oracle(i in 0usize..64, seed in any::<u64>()) {
        let cases = curated_up_to(60);
        let c = cases[i % cases.len()];
        let mut r = rng(seed);
        let m = random_indecomposable(c, &mut r);
        let q = if r.gen_bool(0.7) {
            random_p_subgroup(&c.group, c.p(), &mut r)
        } else {
            random_subgroup(&c.group, &mut r)
        };
        let index = (c.group.order() / q.order()) as usize;
        prop_assume!(m.dim() * index <= 160);
        let h = is_relatively_projective(&m, &q).unwrap();
        prop_assert_eq!(h.projective, summand_of_induced(&m, &q, &mut r));
    }

    #[test]
    fn scott_module_depends_on_sylow_class(i in 0usize..64, seed in any::<u64>()) {
        let cases = curated_up_to(60);
        let c = cases[i % cases.len()];
        let g = &c.group;
        let mut r = rng(seed);
        let h = random_subgroup(g, &mut r);
        let h2 = random_subgroup(g, &mut r);
        let s = scott_module(g, &h, &c.field, &mut r).unwrap().module;
        let sq = scott_module(g, &h.sylow_subgroup(c.p()).unwrap(), &c.field, &mut r).unwrap().module;
        prop_assert!(is_isomorphic(&s, &sq, &mut r).unwrap());
        let s2 = scott_module(g, &h2, &c.field, &mut r).unwrap().module;
        let (p1, p2) = (h.sylow_subgroup(c.p()).unwrap(), h2.sylow_subgroup(c.p()).unwrap());
        let conjugate = p1.order() == p2.order() && conjugate_into(g, &p1, &p2);
        prop_assert_eq!(is_isomorphic(&s, &s2, &mut r).unwrap(), conjugate);
        // the trivial module lies in the top of the permutation module summand
        let triv = Representation::trivial(g, &c.field);
        prop_assert!(modrep::rep::hom_dim(&s, &triv).unwrap() == 1);
    }
}
