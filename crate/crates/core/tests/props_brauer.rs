//! Brauer constructions of trivial source modules: central subgroups of a vertex act trivially
//! and `M(Q)` is nonzero exactly when `Q` is conjugate into a vertex.

mod support;

use modrep::rep::{decompose, vertex, Representation};
use modrep::group::PermGroup;
use modrep::rng;
use proptest::prelude::*;
use rand::Rng as _;
use support::{config, conjugate_into, curated_up_to, random_p_subgroup, random_subgroup};

/// A random indecomposable summand of the permutation module on `h`, with its vertex.
fn random_trivial_source(
    c: &support::Case,
    h: &PermGroup,
    r: &mut modrep::Rng,
) -> (Representation, PermGroup) {
    let m = Representation::permutation_module(&c.group, h, &c.field).unwrap();
    let d = decompose(&m, r).unwrap();
    let s = d.summands[r.gen_range(0..d.len())].module.clone();
    let v = vertex(&s, r).unwrap();
    (s, v)
}

fn central_p_part(c: &support::Case) -> PermGroup {
    c.group.center().unwrap().sylow_subgroup(c.p()).unwrap()
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn brauer_construction_nonzero_iff_subgroup_of_vertex(i in 0usize..64, seed in any::<u64>()) {
        let cases = curated_up_to(60);
        let c = cases[i % cases.len()];
        let mut r = rng(seed);
        let h = if r.gen_bool(0.5) {
            random_p_subgroup(&c.group, c.p(), &mut r)
        } else {
            random_subgroup(&c.group, &mut r)
        };
        let (m, v) = random_trivial_source(c, &h, &mut r);
        let q = random_p_subgroup(&c.group, c.p(), &mut r);
        let bq = m.brauer_construction(&q).unwrap();
        prop_assert_eq!(bq.module.dim() > 0, conjugate_into(&c.group, &q, &v));
    }

    #[test]
    fn central_subgroup_of_vertex_acts_trivially(i in 0usize..64, seed in any::<u64>()) {
        let cases: Vec<_> = curated_up_to(60)
            .into_iter()
            .filter(|c| !central_p_part(c).is_trivial())
            .collect();
        let c = cases[i % cases.len()];
        let mut r = rng(seed);
        let z = central_p_part(c);
        let zp = random_subgroup(&z, &mut r);
        let mut gens = zp.generators().to_vec();
        gens.push(support::random_element(&c.group, &mut r));
        let h = c.group.subgroup(gens).unwrap();
        let (m, v) = random_trivial_source(c, &h, &mut r);
        prop_assert!(v.contains_group(&zp));
        let bq = m.brauer_construction(&zp).unwrap();
        prop_assert_eq!(bq.module.dim(), m.dim());
    }
}
