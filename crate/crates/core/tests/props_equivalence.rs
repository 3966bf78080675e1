//! Tensoring with Scott bimodules between groups with equal fusion preserves relative
//! projectivity and satisfies the tensor-hom adjunction. The block splits off `M (x) M*`
//! with a diagonally projective trivial source remainder.

mod support;

use std::sync::OnceLock;

use modrep::equivalence::{apply_functor, split_block_summand, tensor_over_block, BlockBimodule, BlockContext, ScottSetting};
use modrep::group::{find_common_sylow_identification, parse_group, PermGroup};
use modrep::rep::{decompose, hom_dim, higman_certificate, is_isomorphic, vertex, Representation};
use modrep::{rng, Field};
use proptest::prelude::*;
use rand::Rng as _;
use support::{config, conjugate_into, random_subgroup};

/// Pairs of groups with a common Sylow subgroup and the same fusion on it.
const PAIRS: &[(&str, &str, u64)] = &[
    ("S3", "C2", 4),
    ("C6", "C2", 4),
    ("A4", "A4", 4),
    ("A5", "A4", 4),
    ("S3", "S3", 9),
    ("S4", "S3", 9),
    ("D10", "D10", 5),
];

fn settings() -> &'static [ScottSetting] {
    static S: OnceLock<Vec<ScottSetting>> = OnceLock::new();
    S.get_or_init(|| {
        let mut r = rng(1);
        PAIRS
            .iter()
            .map(|&(a, b, q)| {
                let (g, h) = (parse_group(a).unwrap(), parse_group(b).unwrap());
                let f = Field::of_order(q).unwrap();
                let cs = find_common_sylow_identification(&g, &h, f.characteristic()).unwrap();
                ScottSetting::new(&g, &h, cs, &f, &mut r).unwrap()
            })
            .collect()
    })
}

/// A random module of `G` with at most `cap` dimensions: a permutation module, possibly
/// tensored with another one.
fn random_module(g: &PermGroup, f: &Field, cap: usize, r: &mut modrep::Rng) -> Representation {
    loop {
        let h = random_subgroup(g, r);
        let m = Representation::permutation_module(g, &h, f).unwrap();
        if m.dim() <= cap {
            return m;
        }
    }
}

/// The vertices of the summands of `m` restricted to a Sylow subgroup `S`, or `None` when `m` is
/// not a `p`-permutation module. Over `S` every indecomposable summand of a `p`-permutation module
/// is `k_R` induced from its vertex `R`.
fn sylow_vertices(m: &Representation, r: &mut modrep::Rng) -> Option<Vec<PermGroup>> {
    let s = m.group().sylow_subgroup(m.field().characteristic()).unwrap();
    let res = m.restrict(&s).unwrap();
    let mut out = Vec::new();
    for part in decompose(&res, r).unwrap().summands {
        let v = vertex(&part.module, r).unwrap();
        let perm = Representation::permutation_module(&s, &v, m.field()).unwrap();
        if !is_isomorphic(&part.module, &perm, r).unwrap() {
            return None;
        }
        out.push(v);
    }
    Some(out)
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn functor_preserves_relative_projectivity(i in 0usize..64, seed in any::<u64>()) {
        let s = &settings()[i % PAIRS.len()];
        let mut r = rng(seed);
        let g = s.left();
        let q = random_subgroup(&s.common.in_first, &mut r);
        let sub = random_subgroup(&q, &mut r);
        let mut u = Representation::permutation_module(g, &sub, &s.field).unwrap();
        if r.gen_bool(0.5) {
            let v = random_module(g, &s.field, 6, &mut r);
            if u.dim() * v.dim() <= 60 {
                u = u.tensor(&v).unwrap();
            }
        }
        prop_assert!(higman_certificate(&u, &q).unwrap().is_some());
        let image = apply_functor(&u, &s.scott).unwrap();
        let q2 = s.image(&q).unwrap();
        prop_assert!(higman_certificate(&image, &q2).unwrap().is_some());
    }

    #[test]
    fn tensor_hom_adjunction(i in 0usize..64, seed in any::<u64>()) {
        let s = &settings()[i % PAIRS.len()];
        let mut r = rng(seed);
        let u = random_module(s.left(), &s.field, 30, &mut r);
        let v = random_module(s.right(), &s.field, 30, &mut r);
        let lhs = hom_dim(&apply_functor(&u, &s.scott).unwrap(), &v).unwrap();
        let rhs = hom_dim(&u, &apply_functor(&v, &s.scott.dual()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn principal_block_splits_off_scott_tensor_its_dual() {
    let mut r = rng(3);
    for s in settings() {
        let b = BlockContext::principal(s.left(), &s.field).unwrap();
        let b2 = BlockContext::principal(s.right(), &s.field).unwrap();
        let t = tensor_over_block(&s.scott, &s.scott.dual(), &b2.decomposition, &b2.block).unwrap();
        let bb = BlockBimodule::new(&b.decomposition, &b.block).unwrap();
        let split = split_block_summand(&t, &bb, &mut r).unwrap().expect("block is a summand");
        let x = split.complement.representation();
        assert_eq!(x.dim() + bb.dim(), t.dim());
        // For a p-permutation module, projectivity relative to the diagonal is visible on the
        // Sylow restriction: every summand vertex must be conjugate into the diagonal.
        let vertices = sylow_vertices(x, &mut r).expect("remainder is p-permutation");
        let dp = t.product().diagonal_of(&s.common.in_first).unwrap();
        for v in &vertices {
            assert!(conjugate_into(x.group(), v, &dp));
        }
    }
}
