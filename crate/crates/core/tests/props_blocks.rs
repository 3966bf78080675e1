//! Block idempotents against a group-algebra oracle, block membership of indecomposables,
//! defect groups and the central-vertex criterion.

mod support;

use modrep::block::{block_decomposition, central_vertex_check, BlockDecomposition};
use modrep::equivalence::BlockBimodule;
use modrep::group::{conjugating_element, PermGroup};
use modrep::rep::{decompose, vertex, Representation};
use modrep::{rng, Elem, Field};
use proptest::prelude::*;
use rand::Rng as _;
use support::{config, curated, random_product, random_subgroup};

/// Product in `kG` over the element table.
fn convolve(g: &PermGroup, f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let t = g.element_table().unwrap();
    let el = t.elements();
    let mut out = vec![0; el.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                let k = t.index_of(&el[i].mul(&el[j])).unwrap();
                out[k] = f.add(out[k], f.mul(x, y));
            }
        }
    }
    out
}

fn check_axioms(g: &PermGroup, f: &Field, d: &BlockDecomposition) -> Result<(), TestCaseError> {
    let t = g.element_table().unwrap();
    let n = t.len();
    let es: Vec<Vec<Elem>> = d.blocks.iter().map(|b| d.group_algebra_vector(b)).collect();
    let mut sum = vec![0; n];
    for (i, e) in es.iter().enumerate() {
        for (s, &x) in sum.iter_mut().zip(e) {
            *s = f.add(*s, x);
        }
        for (j, e2) in es.iter().enumerate() {
            let prod = convolve(g, f, e, e2);
            if i == j {
                prop_assert_eq!(&prod, e);
            } else {
                prop_assert!(prod.iter().all(|&x| x == 0));
            }
        }
        for x in g.generators() {
            let mut gx = vec![0; n];
            gx[t.index_of(x).unwrap()] = 1;
            prop_assert_eq!(convolve(g, f, e, &gx), convolve(g, f, &gx, e));
        }
    }
    let mut one = vec![0; n];
    one[t.index_of(&g.identity()).unwrap()] = 1;
    prop_assert_eq!(sum, one);
    Ok(())
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn block_idempotents_are_orthogonal_central_and_complete(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g, f) = random_product(200, &mut r);
        let d = block_decomposition(&g, &f).unwrap();
        prop_assert!(d.verify());
        check_axioms(&g, &f, &d)?;
        // primitivity: every element of e Z(kG) is a scalar multiple of e plus a nilpotent
        for b in &d.blocks {
            let z: Vec<Elem> = (0..b.coefficients.len()).map(|_| r.gen_range(0..f.order()) as Elem).collect();
            let c = d.central_character(b, &z);
            let mut y = d.center_mul(&b.coefficients, &z);
            let scalar: Vec<Elem> = b.coefficients.iter().map(|&x| f.mul(c, x)).collect();
            for (a, s) in y.iter_mut().zip(&scalar) {
                *a = f.sub(*a, *s);
            }
            let mut pw = y.clone();
            for _ in 0..b.coefficients.len() {
                pw = d.center_mul(&pw, &y);
            }
            prop_assert!(pw.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn indecomposables_lie_in_exactly_one_block(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g, f) = random_product(60, &mut r);
        let d = block_decomposition(&g, &f).unwrap();
        let h = random_subgroup(&g, &mut r);
        let m = Representation::permutation_module(&g, &h, &f).unwrap();
        for s in decompose(&m, &mut r).unwrap().summands {
            let mut identity = 0;
            for b in &d.blocks {
                let e = d.action_on(b, &s.module).unwrap();
                if e.is_identity() {
                    identity += 1;
                } else {
                    prop_assert!(e.is_zero());
                }
            }
            prop_assert_eq!(identity, 1);
        }
    }

    #[test]
    fn central_vertex_criterion(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g, f) = random_product(48, &mut r);
        let d = block_decomposition(&g, &f).unwrap();
        for b in &d.blocks {
            let dg = d.defect_group(b).unwrap();
            let c = central_vertex_check(&d, b, &dg, &mut r).unwrap();
            prop_assert!(c.agree, "{:?}", c);
        }
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn defect_group_matches_vertex_of_block_bimodule(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g, f) = random_product(24, &mut r);
        prop_assume!(modrep::rep::sylow_order(&g, f.characteristic()) <= 8);
        let d = block_decomposition(&g, &f).unwrap();
        for b in &d.blocks {
            let dg = d.defect_group(b).unwrap();
            let bb = BlockBimodule::new(&d, b).unwrap();
            let v = vertex(bb.bimodule.representation(), &mut r).unwrap();
            let left = bb.bimodule.product().projections(&v).0;
            prop_assert_eq!(v.order(), dg.order());
            prop_assert!(conjugating_element(&g, &left, &dg).unwrap().is_some());
        }
    }
}

#[test]
fn central_vertex_criterion_on_curated_groups() {
    let mut r = rng(5);
    for c in curated() {
        let d = block_decomposition(&c.group, &c.field).unwrap();
        for b in &d.blocks {
            let dg = d.defect_group(b).unwrap();
            let chk = central_vertex_check(&d, b, &dg, &mut r).unwrap();
            assert!(chk.agree, "{} block {}: {:?}", c.name, b.index, chk);
        }
    }
}
