//! Negative controls for the equivalence checkers and small instances of the Brauer
//! construction checks.

use modrep::equivalence::{
    brauer_of_scott_summand_check, check_gluing_theorem, check_hypotheses, check_morita_lift,
    check_relative_stable_equivalence, is_rel_brauer_indecomposable, scott_summand_of_functor_image,
    theorem_brauer_criterion, vertex_shape_check, Bimodule, BlockContext, ScottSetting, Verdict,
};
use modrep::fusion::fusion_system;
use modrep::group::{cyclic, find_common_sylow_identification, parse_group, sl2, DirectProduct, Perm, PermGroup};
use modrep::rep::{scott_module, Representation};
use modrep::{rng, Error, Field};

fn setting(a: &PermGroup, b: &PermGroup, q: u64) -> ScottSetting {
    let f = Field::of_order(q).unwrap();
    let cs = find_common_sylow_identification(a, b, f.characteristic()).unwrap();
    ScottSetting::new(a, b, cs, &f, &mut rng(1)).unwrap()
}

fn s3_c2() -> ScottSetting {
    setting(&parse_group("S3").unwrap(), &parse_group("C2").unwrap(), 4)
}

#[test]
fn non_isomorphic_sylows_are_refused() {
    let (g, h) = (parse_group("S4").unwrap(), parse_group("S3").unwrap());
    let err = find_common_sylow_identification(&g, &h, 2).unwrap_err();
    assert!(matches!(err, Error::NoIsomorphism(_)));
}

#[test]
fn mismatched_fusion_is_refused_by_the_gluing_gate() {
    let v4 = DirectProduct::new(&cyclic(2), &cyclic(2)).group().clone();
    let s = setting(&parse_group("A4").unwrap(), &v4, 4);
    let z = PermGroup::trivial(s.left().degree());
    let hyp = check_hypotheses(&s, &z).unwrap();
    assert!(hyp.central_in_first && hyp.central_in_second && !hyp.fusion_equal);
    let b = BlockContext::principal(s.left(), &s.field).unwrap();
    let b2 = BlockContext::principal(s.right(), &s.field).unwrap();
    let err = check_gluing_theorem(&s, &z, &b, &b2, &mut rng(2)).unwrap_err();
    assert!(matches!(err, Error::Hypothesis(_)));
}

#[test]
fn scott_module_padded_with_a_free_bimodule_is_not_morita() {
    let s = s3_c2();
    let mut r = rng(3);
    let b = BlockContext::principal(s.left(), &s.field).unwrap();
    let b2 = BlockContext::principal(s.right(), &s.field).unwrap();
    let one = PermGroup::trivial(s.left().degree());
    let one2 = PermGroup::trivial(s.right().degree());
    let honest = check_morita_lift(&s.scott, &b, &b2, (&one, &one2), &mut r).unwrap();
    assert_eq!(honest.verdict, Verdict::Morita);

    let free = Bimodule::new(&s.product, Representation::regular(s.product.group(), &s.field).unwrap()).unwrap();
    let padded = s.scott.direct_sum(&free).unwrap();
    let lift = check_morita_lift(&padded, &b, &b2, (&one, &one2), &mut r).unwrap();
    assert_ne!(lift.verdict, Verdict::Morita);
    assert!(!lift.all_images_simple && !lift.remainders_zero && lift.agree);
}

#[test]
fn doubled_scott_module_is_not_even_stably_equivalent() {
    let s = s3_c2();
    let b = BlockContext::principal(s.left(), &s.field).unwrap();
    let b2 = BlockContext::principal(s.right(), &s.field).unwrap();
    let one = PermGroup::trivial(s.left().degree());
    let one2 = PermGroup::trivial(s.right().degree());
    let doubled = s.scott.direct_sum(&s.scott).unwrap();
    let rep = check_relative_stable_equivalence(&doubled, &doubled.dual(), &b, &b2, (&one, &one2), &mut rng(4)).unwrap();
    assert_eq!(rep.verdict, Verdict::None);
}

#[test]
fn scott_of_normalizer_is_a_summand_of_the_brauer_construction() {
    let f = Field::of_order(4).unwrap();
    let g = sl2(3).unwrap();
    let p = g.sylow_subgroup(2).unwrap();
    let fs = fusion_system(&g, &p).unwrap();
    let mut r = rng(5);
    for i in fs.class_representatives(true).unwrap() {
        let q = fs.subgroup(i);
        if fs.is_fully_normalized(i).unwrap() {
            assert!(brauer_of_scott_summand_check(&g, &p, q, &f, &mut r).unwrap());
        }
    }
}

#[test]
fn brauer_construction_summands_have_vertices_normalizing_q() {
    let f = Field::of_order(4).unwrap();
    let g = parse_group("S4").unwrap();
    let mut r = rng(6);
    let v = g
        .subgroup(vec![
            Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
            Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
        ])
        .unwrap();
    let m = scott_module(&g, &v, &f, &mut r).unwrap().module;
    let fs = fusion_system(&g, &v).unwrap();
    for i in 0..fs.subgroups().len() {
        let q = fs.subgroup(i);
        if q.order() < v.order() {
            let rep = vertex_shape_check(&m, &v, q, &mut r).unwrap();
            assert!(rep.brauer_dim > 0 && !rep.summands.is_empty() && rep.holds, "{rep:?}");
        }
    }
    assert!(matches!(vertex_shape_check(&m, &v, &v, &mut r), Err(Error::Hypothesis(_))));
}

#[test]
fn scott_summands_of_the_functor_image_match_the_bimodule() {
    let s = s3_c2();
    let mut r = rng(7);
    let p = s.common.in_first.clone();
    let one = PermGroup::trivial(s.left().degree());
    let plain = scott_summand_of_functor_image(&s, &s.scott, &p, &mut r).unwrap();
    assert!(plain.in_functor_image && plain.in_bimodule);
    let plain1 = scott_summand_of_functor_image(&s, &s.scott, &one, &mut r).unwrap();
    assert!(!plain1.in_functor_image && !plain1.in_bimodule);
    let free = Bimodule::new(&s.product, Representation::regular(s.product.group(), &s.field).unwrap()).unwrap();
    let padded = s.scott.direct_sum(&free).unwrap();
    let padded1 = scott_summand_of_functor_image(&s, &padded, &one, &mut r).unwrap();
    assert!(padded1.in_functor_image && padded1.in_bimodule);
}

#[test]
fn diagonal_scott_modules_are_brauer_indecomposable() {
    for (a, b, q) in [("S3", "C2", 4), ("S4", "S3", 9), ("A4", "A4", 4)] {
        let s = setting(&parse_group(a).unwrap(), &parse_group(b).unwrap(), q);
        let mut r = rng(8);
        let one = PermGroup::trivial(s.product.group().degree());
        let rep = is_rel_brauer_indecomposable(s.scott.representation(), &s.diagonal, &one, &mut r).unwrap();
        assert!(rep.holds, "{a} x {b}");
        let crit = theorem_brauer_criterion(s.product.group(), &s.diagonal, &one, &s.field, &mut r).unwrap();
        assert!(crit.saturated && crit.agree && crit.normalizer_clause, "{a} x {b}");
    }
}
