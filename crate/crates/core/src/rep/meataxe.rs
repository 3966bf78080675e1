//! Submodule search with Norton's irreducibility test, composition factors, radical and socle.

use rand::Rng as _;

use super::hom::hom_space;
use super::Representation;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{spin, Krylov, Mat, Subspace};
use crate::Rng;

const MEATAXE_TRIES: usize = 400;
/// Largest number of projective points of a null space we are willing to spin.
const MAX_POINTS: usize = 400;

fn projective_points(f: &Field, k: &Mat) -> Vec<Vec<Elem>> {
    let d = k.rows();
    let q = f.order();
    let mut out = Vec::new();
    let total = q.pow(d as u32);
    for code in 1..total {
        let mut c = Vec::with_capacity(d);
        let mut x = code;
        for _ in 0..d {
            c.push((x % q) as Elem);
            x /= q;
        }
        // normalized: last nonzero coordinate equals 1
        if c.iter().rev().find(|&&v| v != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0; k.cols()];
        for (i, &ci) in c.iter().enumerate() {
            f.axpy(&mut v, ci, k.row(i));
        }
        out.push(v);
    }
    out
}

fn random_vector(f: &Field, n: usize, rng: &mut Rng) -> Vec<Elem> {
    let q = f.order();
    let mut v: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..q) as Elem).collect();
    if v.iter().all(|&x| x == 0) {
        v[0] = 1;
    }
    v
}

/// A proper nonzero submodule, or `None` when the module is irreducible.
pub fn find_submodule(m: &Representation, rng: &mut Rng) -> Result<Option<Subspace>> {
    let n = m.dim();
    if n <= 1 {
        return Ok(None);
    }
    let f = m.field().clone();
    let gens = m.generators();
    if gens.is_empty() {
        let mut e = vec![0; n];
        e[0] = 1;
        return Ok(Some(Subspace::from_rows(&Mat::from_rows(&f, n, &[e]))));
    }
    let q = f.order();
    let transposes: Vec<Mat> = gens.iter().map(|g| g.transpose()).collect();
    let mut a = gens[0].clone();
    for _ in 0..MEATAXE_TRIES {
        // random walk in the algebra: a <- a * g_i + c * g_j
        let i = rng.gen_range(0..gens.len());
        let j = rng.gen_range(0..gens.len());
        let c = rng.gen_range(0..q) as Elem;
        a = a.mul(&gens[i]);
        a.add_scaled(c, &gens[j]);
        let kr = Krylov::new(&f, random_vector(&f, n, rng), |v| a.vec_mul(v));
        for (root, _) in kr.min_poly.root_power_split(&f) {
            let Some(l) = root else { continue };
            let theta = a.sub(&Mat::identity(&f, n).scaled(l));
            let k = theta.left_nullspace();
            let d = k.rows();
            if d == 0 {
                continue;
            }
            // a random null vector usually already generates a proper submodule
            for _ in 0..2 {
                let c = random_vector(&f, d, rng);
                let v = k.vec_mul(&c);
                let s = spin(&Subspace::from_rows(&Mat::from_rows(&f, n, &[v])), gens);
                if s.dim() < n {
                    return Ok(Some(s));
                }
            }
            if (q as f64).powi(d as i32) > (MAX_POINTS * (q - 1) + 1) as f64 {
                continue;
            }
            for v in projective_points(&f, &k) {
                let s = spin(&Subspace::from_rows(&Mat::from_rows(&f, n, &[v])), gens);
                if s.dim() < n {
                    return Ok(Some(s));
                }
            }
            // every null vector generates: check the dual side
            let kt = theta.transpose().left_nullspace();
            let w = kt.row_vecs().swap_remove(0);
            let u = spin(&Subspace::from_rows(&Mat::from_rows(&f, n, &[w])), &transposes);
            if u.dim() == n {
                return Ok(None);
            }
            // the annihilator of a proper submodule of the dual
            let ann = Subspace::from_rows(&u.basis().transpose().left_nullspace());
            debug_assert!(m.is_submodule(&ann));
            return Ok(Some(ann));
        }
    }
    Err(Error::CapExceeded {
        what: "random algebra elements without a usable null space",
        limit: MEATAXE_TRIES as u128,
        actual: MEATAXE_TRIES as u128,
    })
}

pub fn is_irreducible(m: &Representation, rng: &mut Rng) -> Result<bool> {
    Ok(m.dim() > 0 && find_submodule(m, rng)?.is_none())
}

/// Irreducible with endomorphism ring equal to the field.
pub fn is_absolutely_irreducible(m: &Representation, rng: &mut Rng) -> Result<bool> {
    Ok(is_irreducible(m, rng)? && hom_space(m, m)?.len() == 1)
}

/// Composition factors from the bottom of a composition series upwards.
pub fn composition_factors(m: &Representation, rng: &mut Rng) -> Result<Vec<Representation>> {
    let mut out = Vec::new();
    factors_rec(m.clone(), rng, &mut out)?;
    Ok(out)
}

fn factors_rec(m: Representation, rng: &mut Rng, out: &mut Vec<Representation>) -> Result<()> {
    if m.dim() == 0 {
        return Ok(());
    }
    match find_submodule(&m, rng)? {
        None => out.push(m),
        Some(u) => {
            factors_rec(m.submodule(&u)?, rng, out)?;
            factors_rec(m.quotient(&u)?, rng, out)?;
        }
    }
    Ok(())
}

/// One representative per isomorphism class of simple modules, sorted by dimension (stable).
pub fn distinct_simples(list: &[Representation]) -> Result<Vec<Representation>> {
    let mut out: Vec<Representation> = Vec::new();
    for s in list {
        let mut seen = false;
        for t in &out {
            if t.dim() == s.dim() && !hom_space(s, t)?.is_empty() {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(s.clone());
        }
    }
    out.sort_by_key(|s| s.dim());
    Ok(out)
}

/// The simple modules of a group, as the distinct composition factors of the regular module,
/// each checked to be absolutely irreducible.
pub fn simple_modules(m: &Representation, rng: &mut Rng) -> Result<Vec<Representation>> {
    let simples = distinct_simples(&composition_factors(m, rng)?)?;
    for s in &simples {
        let e = hom_space(s, s)?.len() as u32;
        if e != 1 {
            let f = s.field();
            return Err(Error::NotSplittingField {
                p: f.characteristic(),
                m: f.degree(),
                suggested: f.degree() * e,
                what: format!("a simple module of dimension {} is not absolutely irreducible", s.dim()),
            });
        }
    }
    Ok(simples)
}

/// Intersection of the kernels of all maps to simple modules.
pub fn radical(m: &Representation, rng: &mut Rng) -> Result<Subspace> {
    let simples = distinct_simples(&composition_factors(m, rng)?)?;
    let mut rad = Subspace::full(m.field(), m.dim());
    for s in &simples {
        for h in hom_space(m, s)? {
            rad = rad.intersection(&Subspace::from_rows(&h.left_nullspace()));
        }
    }
    Ok(rad)
}

/// Sum of the images of all maps from simple modules.
pub fn socle(m: &Representation, rng: &mut Rng) -> Result<Subspace> {
    let simples = distinct_simples(&composition_factors(m, rng)?)?;
    let mut soc = Subspace::zero(m.field(), m.dim());
    for s in &simples {
        for h in hom_space(s, m)? {
            soc = soc.sum(&h.row_space());
        }
    }
    Ok(soc)
}

/// `M / rad M`.
pub fn top(m: &Representation, rng: &mut Rng) -> Result<Representation> {
    let r = radical(m, rng)?;
    m.quotient(&r)
}
