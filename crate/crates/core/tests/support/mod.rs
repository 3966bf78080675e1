//! Shared fixtures for the integration and property suites: a curated list of small groups with
//! a splitting field in each relevant characteristic, and seeded random subgroups.
#![allow(dead_code)]

use std::sync::OnceLock;

use modrep::group::{parse_group, PermGroup, Perm};
use modrep::{Field, Rng};
use rand::Rng as _;

pub struct Case {
    pub name: &'static str,
    pub group: PermGroup,
    pub field: Field,
}

impl Case {
    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }
}

const CURATED: &[(&str, u64)] = &[
    ("C2", 2),
    ("C4", 2),
    ("C6", 4),
    ("S3", 4),
    ("S3", 9),
    ("D8", 2),
    ("Q8", 2),
    ("A4", 4),
    ("A4", 9),
    ("D12", 4),
    ("S4", 4),
    ("S4", 9),
    ("SL2(3)", 4),
    ("D10", 5),
    ("A5", 16),
];

/// Groups of order at most 120 paired with a splitting field.
pub fn curated() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        CURATED
            .iter()
            .map(|&(name, q)| Case {
                name,
                group: parse_group(name).unwrap(),
                field: Field::of_order(q).unwrap(),
            })
            .collect()
    })
}

/// The curated cases with order at most `max_order`.
pub fn curated_up_to(max_order: u128) -> Vec<&'static Case> {
    curated().iter().filter(|c| c.group.order() <= max_order).collect()
}

pub fn random_element(g: &PermGroup, rng: &mut Rng) -> Perm {
    let t = g.element_table().unwrap();
    t.elements()[rng.gen_range(0..t.len())].clone()
}

/// The subgroup generated by one or two random elements.
pub fn random_subgroup(g: &PermGroup, rng: &mut Rng) -> PermGroup {
    let k = rng.gen_range(1..=2);
    let gens: Vec<Perm> = (0..k).map(|_| random_element(g, rng)).collect();
    g.subgroup(gens).unwrap()
}

/// A random subgroup of a Sylow `p`-subgroup.
pub fn random_p_subgroup(g: &PermGroup, p: u32, rng: &mut Rng) -> PermGroup {
    let s = g.sylow_subgroup(p).unwrap();
    random_subgroup(&s, rng)
}

/// Fixed-seed configuration so property runs are reproducible.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed),
        max_shrink_iters: 32,
        ..Default::default()
    }
}

/// Whether some `G`-conjugate of `q` lies in `v`, by scanning all elements.
pub fn conjugate_into(g: &PermGroup, q: &PermGroup, v: &PermGroup) -> bool {
    let t = g.element_table().unwrap();
    t.elements()
        .iter()
        .any(|x| q.generators().iter().all(|y| v.contains(&y.conj(x))))
}

const FACTORS: &[&str] = &["C2", "C3", "C4", "C5", "S3", "D8", "Q8", "A4", "D10", "SL2(3)"];

/// A random direct product of two small factors of order at most `max_order`, with a prime
/// dividing the order and a field that splits every subgroup in question.
pub fn random_product(max_order: u128, rng: &mut Rng) -> (String, PermGroup, Field) {
    loop {
        let a = FACTORS[rng.gen_range(0..FACTORS.len())];
        let b = FACTORS[rng.gen_range(0..FACTORS.len())];
        let (ga, gb) = (parse_group(a).unwrap(), parse_group(b).unwrap());
        if ga.order() * gb.order() > max_order {
            continue;
        }
        let g = modrep::group::DirectProduct::new(&ga, &gb).group().clone();
        let primes: Vec<u32> = [2, 3, 5].into_iter().filter(|&p| g.order() % p as u128 == 0).collect();
        let p = primes[rng.gen_range(0..primes.len())];
        let q = match p {
            2 => 16,
            3 => 81,
            _ => 25,
        };
        return (format!("{a}x{b}"), g, Field::of_order(q).unwrap());
    }
}
