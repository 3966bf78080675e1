use std::collections::{HashMap, HashSet};

use super::iso::{find_isomorphism, GroupIso};
use super::perm::Perm;
use super::PermGroup;
use crate::error::{Error, Result};

fn require_subgroup(g: &PermGroup, s: &PermGroup) -> Result<()> {
    if g.contains_group(s) {
        Ok(())
    } else {
        Err(Error::NotSubgroup("subgroup is not contained in the group".into()))
    }
}

pub(super) fn centralizer(g: &PermGroup, s: &PermGroup) -> Result<PermGroup> {
    require_subgroup(g, s)?;
    let t = g.element_table()?;
    let gens = s.generators();
    Ok(PermGroup::generated_by(
        g.degree(),
        t.elements()
            .iter()
            .filter(|x| gens.iter().all(|y| x.commutes_with(y))),
    ))
}

pub(super) fn normalizer(g: &PermGroup, s: &PermGroup) -> Result<PermGroup> {
    require_subgroup(g, s)?;
    let t = g.element_table()?;
    Ok(PermGroup::generated_by(
        g.degree(),
        t.elements().iter().filter(|x| s.is_normalized_by(x)),
    ))
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: u128, p: u32) -> u128 {
    let mut r = 1;
    while n % p as u128 == 0 {
        n /= p as u128;
        r *= p as u128;
    }
    r
}

pub(super) fn sylow_subgroup(g: &PermGroup, p: u32) -> Result<PermGroup> {
    if !crate::field::is_prime(p as u64) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let target = p_part(g.order(), p);
    let mut sub = PermGroup::trivial(g.degree());
    if target == 1 {
        return Ok(sub);
    }
    let t = g.element_table()?;
    while sub.order() < target {
        // an element of N_G(P) \ P whose p-th power lies in P extends P
        let x = t
            .elements()
            .iter()
            .find(|x| {
                !sub.contains(x) && sub.is_normalized_by(x) && sub.contains(&x.pow(p as i64))
            })
            .expect("Sylow theorem guarantees an extension")
            .clone();
        let mut gens = sub.generators().to_vec();
        gens.push(x);
        sub = PermGroup::new(g.degree(), gens)?;
    }
    Ok(sub)
}

/// An element `x` with `h^x = k`, if any.
pub fn conjugating_element(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<Option<Perm>> {
    require_subgroup(g, h)?;
    require_subgroup(g, k)?;
    if h.order() != k.order() {
        return Ok(None);
    }
    if h.same_elements(k) {
        return Ok(Some(g.identity()));
    }
    let t = g.element_table()?;
    Ok(t
        .elements()
        .iter()
        .find(|x| h.generators().iter().all(|y| k.contains(&y.conj(x))))
        .cloned())
}

/// Whether `g` has a normal p-complement.
pub fn is_p_nilpotent(g: &PermGroup, p: u32) -> Result<bool> {
    let n = g.order();
    let comp = n / p_part(n, p);
    let t = g.element_table()?;
    let pprime: Vec<&Perm> = t
        .elements()
        .iter()
        .filter(|x| x.order() % p as u64 != 0)
        .collect();
    if pprime.len() as u128 != comp {
        return Ok(false);
    }
    let k = PermGroup::generated_by(g.degree(), pprime.iter().copied());
    Ok(k.order() == comp)
}

/// All subgroups of a group with at most 128 elements, smallest first; each subgroup is
/// generated greedily from its elements.
pub fn subgroups_of_p_group(p_group: &PermGroup) -> Result<Vec<PermGroup>> {
    let order = p_group.order();
    if order > 128 {
        return Err(Error::CapExceeded {
            what: "order of group for subgroup enumeration",
            limit: 128,
            actual: order,
        });
    }
    let t = p_group.element_table()?;
    let el = t.elements();
    let n = el.len();
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| t.index_of(&el[i].mul(&el[j])).expect("closed")).collect())
        .collect();
    let close = |mut set: u128| -> u128 {
        loop {
            let mut next = set;
            for i in 0..n {
                if set >> i & 1 == 0 {
                    continue;
                }
                for j in 0..n {
                    if set >> j & 1 == 1 {
                        next |= 1u128 << mul[i][j];
                    }
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    };
    let mut seen: HashSet<u128> = HashSet::new();
    let mut order_list = vec![1u128];
    seen.insert(1);
    let mut head = 0;
    while head < order_list.len() {
        let s = order_list[head];
        head += 1;
        for x in 0..n {
            if s >> x & 1 == 0 {
                let c = close(s | 1u128 << x);
                if seen.insert(c) {
                    order_list.push(c);
                }
            }
        }
    }
    order_list.sort_by_key(|s| (s.count_ones(), *s));
    Ok(order_list
        .into_iter()
        .map(|s| {
            PermGroup::generated_by(
                p_group.degree(),
                (0..n).filter(|&i| s >> i & 1 == 1).map(|i| &el[i]),
            )
        })
        .collect())
}

pub(super) fn maximal_subgroups_of_p_group(g: &PermGroup, p: u32) -> Result<Vec<PermGroup>> {
    if !g.is_p_group(p) {
        return Err(Error::NotPGroup { p, order: g.order() });
    }
    let n = g.order();
    Ok(subgroups_of_p_group(g)?
        .into_iter()
        .filter(|h| h.order() * p as u128 == n)
        .collect())
}

/// A short isomorphism-type label for small groups (`1`, `C12`, `Q8`, `C2xC2`, `D8`, ...).
pub fn structure_label(h: &PermGroup) -> String {
    let n = h.order();
    if n == 1 {
        return "1".into();
    }
    let Ok(t) = h.element_table() else {
        return format!("order {n}");
    };
    let orders: Vec<u64> = t.elements().iter().map(|x| x.order()).collect();
    let mut counts: HashMap<u64, usize> = HashMap::new();
    for &o in &orders {
        *counts.entry(o).or_default() += 1;
    }
    if orders.iter().any(|&o| o as u128 == n) {
        return format!("C{n}");
    }
    let abelian = h.is_abelian();
    if n == 8 && !abelian {
        return if counts.get(&2) == Some(&1) { "Q8".into() } else { "D8".into() };
    }
    if abelian {
        let inv = abelian_invariants(&t.elements().iter().collect::<Vec<_>>(), n);
        return inv
            .iter()
            .map(|d| format!("C{d}"))
            .collect::<Vec<_>>()
            .join("x");
    }
    match n {
        6 => "S3".into(),
        12 if counts.get(&2) == Some(&3) && counts.get(&3) == Some(&8) => "A4".into(),
        24 if counts.get(&2) == Some(&1) => "SL(2,3)".into(),
        24 if counts.get(&2) == Some(&9) => "S4".into(),
        _ => format!("nonabelian of order {n}"),
    }
}

/// A common Sylow subgroup identified across two groups.
#[derive(Clone, Debug)]
pub struct CommonSylow {
    pub p: u32,
    pub in_first: PermGroup,
    pub in_second: PermGroup,
    /// Isomorphism from `in_first` to `in_second`.
    pub iso: GroupIso,
}

/// Sylow p-subgroups of both groups and an explicit isomorphism between them.
pub fn find_common_sylow_identification(g: &PermGroup, h: &PermGroup, p: u32) -> Result<CommonSylow> {
    let pg = g.sylow_subgroup(p)?;
    let ph = h.sylow_subgroup(p)?;
    let iso = if g == h && pg.same_elements(&ph) {
        GroupIso::identity(&pg)?
    } else {
        find_isomorphism(&pg, &ph)?.ok_or_else(|| {
            Error::NoIsomorphism(format!(
                "Sylow {p}-subgroups {} and {} are not isomorphic",
                structure_label(&pg),
                structure_label(&ph)
            ))
        })?
    };
    let ph = iso.target().clone();
    Ok(CommonSylow {
        p,
        in_first: pg,
        in_second: ph,
        iso,
    })
}

/// Invariant factors (largest first) of an abelian group given by its elements.
fn abelian_invariants(elems: &[&Perm], n: u128) -> Vec<u128> {
    let mut m = n;
    let mut primes = Vec::new();
    let mut q = 2u128;
    while m > 1 {
        if m % q == 0 {
            primes.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    // per prime: partition of exponents, from counts of elements killed by p^k
    let mut factors: Vec<u128> = Vec::new();
    for p in primes {
        let mut logs = Vec::new(); // logs[k-1] = log_p #{x : x^(p^k) = 1}
        let mut k = 1u32;
        loop {
            let e = p.pow(k);
            // count elements whose order divides p^k
            let c = elems.iter().filter(|x| e % x.order() as u128 == 0).count() as u128;
            let mut l = 0;
            let mut cc = c;
            while cc > 1 {
                cc /= p;
                l += 1;
            }
            logs.push(l);
            if c == p_part(n, p as u32) {
                break;
            }
            k += 1;
        }
        // number of cyclic factors of exponent >= k is logs[k-1] - logs[k-2]
        let mut ge = Vec::new();
        for i in 0..logs.len() {
            let prev = if i == 0 { 0 } else { logs[i - 1] };
            ge.push(logs[i] - prev);
        }
        // exponents: factor j (0-based, largest first) has exponent #{k : ge[k-1] > j}
        let count = ge.first().copied().unwrap_or(0);
        let mut exps: Vec<u32> = (0..count)
            .map(|j| ge.iter().filter(|&&g| g > j).count() as u32)
            .collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (j, e) in exps.iter().enumerate() {
            if factors.len() <= j {
                factors.push(1);
            }
            factors[j] *= p.pow(*e);
        }
    }
    factors
}
