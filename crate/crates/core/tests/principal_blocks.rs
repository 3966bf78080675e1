use modrep::block::block_decomposition;
use modrep::group::sl2;
use modrep::rep::{decompose, Representation};
use modrep::{rng, Field};

#[test]
fn principal_block_of_sl2_11_over_gf4() {
    let f = Field::of_order(4).unwrap();
    let g = sl2(11).unwrap();
    let d = block_decomposition(&g, &f).unwrap();
    assert!(d.verify());
    let b0 = d.principal();
    assert_eq!(d.block_dim(b0).unwrap(), 344);
    let mut r = rng(11);
    let dims: Vec<usize> = d.simples(b0, &mut r).unwrap().iter().map(|s| s.dim()).collect();
    assert_eq!(dims, vec![1, 5, 5]);
}

#[test]
fn principal_block_of_sl2_3_and_sylow_permutation_module() {
    let f = Field::of_order(4).unwrap();
    let g = sl2(3).unwrap();
    let d = block_decomposition(&g, &f).unwrap();
    let mut r = rng(3);
    let dims: Vec<usize> = d.simples(d.principal(), &mut r).unwrap().iter().map(|s| s.dim()).collect();
    assert_eq!(dims, vec![1, 1, 1]);
    let p = g.sylow_subgroup(2).unwrap();
    let m = Representation::permutation_module(&g, &p, &f).unwrap();
    assert_eq!(decompose(&m, &mut r).unwrap().dims(), vec![1, 1, 1]);
}
