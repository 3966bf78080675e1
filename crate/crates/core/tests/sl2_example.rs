//! `SL2(11)` and `SL2(3)` in characteristic 2: the Scott module of `G x G'` with vertex the
//! diagonal quaternion subgroup induces a Morita equivalence between the principal blocks.

use std::sync::OnceLock;

use modrep::equivalence::{
    check_gluing_theorem, check_hypotheses, check_morita_lift, is_rel_brauer_indecomposable,
    theorem_brauer_criterion_for, BlockContext, ScottSetting, Verdict,
};
use modrep::fusion::{fusion_equal, fusion_system};
use modrep::group::{find_common_sylow_identification, sl2, structure_label, PermGroup};
use modrep::rep::{decompose, vertex};
use modrep::{rng, Field};

struct Example {
    setting: ScottSetting,
    z: PermGroup,
}

fn example() -> &'static Example {
    static E: OnceLock<Example> = OnceLock::new();
    E.get_or_init(|| {
        let f = Field::of_order(4).unwrap();
        let (g, h) = (sl2(11).unwrap(), sl2(3).unwrap());
        let cs = find_common_sylow_identification(&g, &h, 2).unwrap();
        let z = cs.in_first.intersection(&g.center().unwrap()).unwrap();
        let setting = ScottSetting::new(&g, &h, cs, &f, &mut rng(1)).unwrap();
        Example { setting, z }
    })
}

#[test]
fn groups_sylow_and_center() {
    let e = example();
    let s = &e.setting;
    assert_eq!(s.left().order(), 1320);
    assert_eq!(s.right().order(), 24);
    assert_eq!(structure_label(&s.common.in_first), "Q8");
    assert!(s.common.iso.verify());
    assert_eq!(e.z.order(), 2);
    let z2 = s.image(&e.z).unwrap();
    assert!(s.right().center().unwrap().intersection(&s.common.in_second).unwrap().same_elements(&z2));
}

#[test]
fn fusion_classes_and_centralizers() {
    let e = example();
    let s = &e.setting;
    let p = &s.common.in_first;
    let f1 = fusion_system(s.left(), p).unwrap();
    let f2 = fusion_system(s.right(), &s.common.in_second).unwrap();
    assert!(fusion_equal(&f1, &f2, &s.common.iso).unwrap().equal);
    assert!(f1.is_saturated().unwrap().saturated());
    let reps = f1.class_representatives(true).unwrap();
    let mut rows: Vec<(u128, u128, u128)> = reps
        .iter()
        .map(|&i| {
            let q = f1.subgroup(i);
            let q2 = s.image(q).unwrap();
            let c1 = s.left().centralizer(q).unwrap().order();
            let c2 = s.right().centralizer(&q2).unwrap().order();
            (q.order(), c1, c2)
        })
        .collect();
    rows.sort();
    assert_eq!(rows, vec![(2, 1320, 24), (4, 12, 4), (8, 2, 2)]);
    for &i in &reps {
        let q = f1.subgroup(i);
        if q.order() == 4 {
            assert_eq!(structure_label(&s.left().centralizer(q).unwrap()), "C12");
        }
    }
}

#[test]
fn scott_module_is_relatively_brauer_indecomposable() {
    let e = example();
    let s = &e.setting;
    assert_eq!(s.scott.dim(), 88);
    let mut r = rng(2);
    let dz = s.diagonal_image(&e.z).unwrap();
    let rep = is_rel_brauer_indecomposable(s.scott.representation(), &s.diagonal, &dz, &mut r).unwrap();
    assert!(rep.holds);
    let mut dims: Vec<(u128, usize)> = rep.entries.iter().map(|x| (x.subgroup_order, x.brauer_dim)).collect();
    dims.sort();
    assert_eq!(dims, vec![(2, 88), (4, 4), (8, 2)]);
    assert!(rep.entries.iter().all(|x| x.indecomposable_or_zero));
}

#[test]
fn brauer_criterion_clauses_agree() {
    let e = example();
    let s = &e.setting;
    let dz = s.diagonal_image(&e.z).unwrap();
    let rep = theorem_brauer_criterion_for(s.scott.representation(), &s.diagonal, &dz, &mut rng(3)).unwrap();
    assert!(rep.saturated && rep.brauer_indecomposable.holds && rep.normalizer_clause && rep.agree);
    let mut rows: Vec<(u128, u128)> =
        rep.normalizer_scott.iter().map(|x| (x.subgroup_order, x.normalizer_order)).collect();
    rows.sort();
    assert_eq!(rows, vec![(2, 31680), (4, 96), (4, 96), (4, 96), (8, 48)]);
    assert!(rep.normalizer_scott.iter().all(|x| x.brauer_isomorphic == Some(true)));
}

#[test]
fn gluing_and_morita_lift() {
    let e = example();
    let s = &e.setting;
    let mut r = rng(4);
    assert!(check_hypotheses(s, &e.z).unwrap().holds());
    let b = BlockContext::principal(s.left(), &s.field).unwrap();
    let b2 = BlockContext::principal(s.right(), &s.field).unwrap();
    let glue = check_gluing_theorem(s, &e.z, &b, &b2, &mut r).unwrap();
    assert!(glue.centralizer_clause && glue.stable_clause && glue.agree);
    assert!(glue.centralizer_checks.iter().all(|c| c.verdict == Verdict::Morita));
    let z2 = s.image(&e.z).unwrap();
    let lift = check_morita_lift(&s.scott, &b, &b2, (&e.z, &z2), &mut r).unwrap();
    assert!(lift.precondition && lift.all_images_simple && lift.remainders_zero && lift.agree);
    assert_eq!(lift.verdict, Verdict::Morita);
}

#[test]
fn principal_simples_restricted_to_the_sylow() {
    let e = example();
    let s = &e.setting;
    let mut r = rng(5);
    let b = BlockContext::principal(s.left(), &s.field).unwrap();
    let mut rows = Vec::new();
    for m in b.decomposition.simples(&b.block, &mut r).unwrap() {
        let d = decompose(&m.restrict(&s.common.in_first).unwrap(), &mut r).unwrap();
        let mut parts: Vec<(usize, u128)> = d
            .summands
            .iter()
            .map(|x| (x.module.dim(), vertex(&x.module, &mut r).unwrap().order()))
            .collect();
        parts.sort();
        rows.push((m.dim(), parts));
    }
    rows.sort();
    assert_eq!(
        rows,
        vec![(1, vec![(1, 8)]), (5, vec![(1, 8), (4, 2)]), (5, vec![(1, 8), (4, 2)])]
    );
}
