use super::*;
use crate::block::principal_block;
use crate::group::{diagonal_subgroup, find_common_sylow_identification, sl2, symmetric, DirectProduct};
use crate::rep::{is_isomorphic, Representation};
use crate::{rng, Field};

fn gf(q: u64) -> Field {
    Field::of_order(q).unwrap()
}

#[test]
fn tensor_agrees_with_coinvariants() {
    let mut r = rng(11);
    let f = gf(2);
    let g = symmetric(3);
    let (dec, bi) = principal_block(&g, &f).unwrap();
    let b = BlockBimodule::new(&dec, &dec.blocks[bi]).unwrap();
    let reg = Bimodule::regular(&g, &f).unwrap();
    let d = tensor_over_group(&reg, &reg).unwrap();
    let o = tensor_coinvariants(&reg, &reg).unwrap();
    assert_eq!(d.dim(), 6);
    assert!(is_isomorphic(d.representation(), o.representation(), &mut r).unwrap());
    assert!(is_isomorphic(d.representation(), reg.representation(), &mut r).unwrap());
    let bb = tensor_over_group(&b.bimodule, &b.bimodule.dual()).unwrap();
    let ob = tensor_coinvariants(&b.bimodule, &b.bimodule.dual()).unwrap();
    assert_eq!(bb.dim(), ob.dim());
    assert!(is_isomorphic(bb.representation(), ob.representation(), &mut r).unwrap());
    // Scott bimodule of S3 x S3 over the diagonal Sylow
    let prod = DirectProduct::new(&g, &g);
    let cs = find_common_sylow_identification(&g, &g, 2).unwrap();
    let dp = diagonal_subgroup(&prod, &cs.iso).unwrap();
    let m = Bimodule::scott(&prod, &dp, &f, &mut r).unwrap();
    let t = tensor_over_group(&m, &m.dual()).unwrap();
    let o = tensor_coinvariants(&m, &m.dual()).unwrap();
    assert!(is_isomorphic(t.representation(), o.representation(), &mut r).unwrap());
    // functor against the bimodule tensor with a one-sided module
    let triv = Representation::trivial(&g, &f);
    let img = apply_functor(&triv, &m).unwrap();
    assert_eq!(img.dim(), 1);
}

#[test]
fn block_splits_off_regular_tensor() {
    let mut r = rng(12);
    let f = gf(4);
    let g = sl2(3).unwrap();
    let (dec, bi) = principal_block(&g, &f).unwrap();
    let b = BlockBimodule::new(&dec, &dec.blocks[bi]).unwrap();
    assert_eq!(b.dim(), 24);
    let t = tensor_over_block(&b.bimodule, &b.bimodule.dual(), &dec, &dec.blocks[bi]).unwrap();
    let s = split_block_summand(&t, &b, &mut r).unwrap().unwrap();
    assert_eq!(s.complement.dim(), 0);
    assert!(s.embedding.mul(&s.retraction).is_identity());
    // B (+) B has a complement isomorphic to B
    let bb = b.bimodule.direct_sum(&b.bimodule).unwrap();
    let s = split_block_summand(&bb, &b, &mut r).unwrap().unwrap();
    assert!(is_isomorphic(s.complement.representation(), b.bimodule.representation(), &mut r).unwrap());
}
