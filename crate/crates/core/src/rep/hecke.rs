//! The endomorphism algebra of a transitive permutation module in its double-coset basis, and
//! Scott modules cut out by primitive idempotents of that algebra.

use rand::Rng as _;

use super::decomp::{decompose, endomorphism_ring, local_certificate, Locality};
use super::hom::SpinTree;
use super::{orbits, Representation};
use crate::error::Result;
use crate::field::{Elem, Field};
use crate::group::{CosetSpace, PermGroup};
use crate::linalg::{crt_idempotents, Basis, Krylov, Mat};
use crate::Rng;

/// Consecutive random elements of `eAe` found to be scalar plus nilpotent before `e` is
/// accepted as primitive.
const NILPOTENT_STREAK: usize = 8;
const MAX_ROUNDS: usize = 400;

/// `End_{kG}(k[H\G])` with basis the suborbit sums; an element `x` is stored by its
/// coefficients, so that `omega_0 x = sum_i x_i * (sum of the points of suborbit i)`.
/// Products are composites of right actions: `x y` applies `x` first.
pub struct HeckeAlgebra {
    field: Field,
    cosets: CosetSpace,
    sub_of: Vec<u32>,
    suborbits: Vec<Vec<usize>>,
    /// `table[k * degree + w]` = suborbit of `r_k rep(w)^-1`, `r_k` the least point of suborbit `k`.
    table: Vec<u32>,
}

impl HeckeAlgebra {
    pub fn new(group: &PermGroup, sub: &PermGroup, field: &Field) -> Result<HeckeAlgebra> {
        let cosets = CosetSpace::new(group, sub)?;
        let deg = cosets.len();
        let hperms: Vec<_> = sub.generators().iter().map(|h| cosets.perm_of(h)).collect();
        let suborbits = orbits(deg, &hperms);
        let mut sub_of = vec![0u32; deg];
        for (i, o) in suborbits.iter().enumerate() {
            for &w in o {
                sub_of[w] = i as u32;
            }
        }
        let inv_reps: Vec<_> = cosets.reps().iter().map(|r| r.inverse()).collect();
        let n = suborbits.len();
        let mut table = vec![0u32; n * deg];
        for k in 0..n {
            let rk = &cosets.reps()[suborbits[k][0]];
            for w in 0..deg {
                table[k * deg + w] = sub_of[cosets.coset_of(&rk.mul(&inv_reps[w]))];
            }
        }
        Ok(HeckeAlgebra {
            field: field.clone(),
            cosets,
            sub_of,
            suborbits,
            table,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Number of suborbits, the dimension of the algebra.
    pub fn dim(&self) -> usize {
        self.suborbits.len()
    }

    /// Number of cosets.
    pub fn degree(&self) -> usize {
        self.cosets.len()
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }

    pub fn suborbit_sizes(&self) -> Vec<usize> {
        self.suborbits.iter().map(|o| o.len()).collect()
    }

    pub fn suborbit_of(&self, point: usize) -> usize {
        self.sub_of[point] as usize
    }

    pub fn unit(&self) -> Vec<Elem> {
        let mut e = vec![0; self.dim()];
        e[self.suborbit_of(0)] = 1;
        e
    }

    pub fn mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let deg = self.degree();
        let mut out = vec![0; self.dim()];
        for (k, o) in out.iter_mut().enumerate() {
            let row = &self.table[k * deg..(k + 1) * deg];
            let mut acc = 0;
            for w in 0..deg {
                let a = x[self.sub_of[w] as usize];
                if a != 0 {
                    let b = y[row[w] as usize];
                    if b != 0 {
                        acc = f.add(acc, f.mul(a, b));
                    }
                }
            }
            *o = acc;
        }
        out
    }

    /// The matrix of `v -> v y` on coefficient row vectors.
    pub fn right_mul_matrix(&self, y: &[Elem]) -> Mat {
        let f = &self.field;
        let n = self.dim();
        let deg = self.degree();
        let mut m = Mat::zeros(f, n, n);
        for k in 0..n {
            let row = &self.table[k * deg..(k + 1) * deg];
            for w in 0..deg {
                let b = y[row[w] as usize];
                if b != 0 {
                    let i = self.sub_of[w] as usize;
                    m.set(i, k, f.add(m.get(i, k), b));
                }
            }
        }
        m
    }

    /// The scalar by which `x` acts on the sum of all points.
    pub fn augmentation(&self, x: &[Elem]) -> Elem {
        let f = &self.field;
        x.iter().zip(&self.suborbits).fold(0, |acc, (&c, o)| {
            f.add(acc, f.mul(c, f.from_int(o.len() as i64)))
        })
    }

    /// `omega_0 x` as a vector on the points.
    pub fn point_vector(&self, x: &[Elem]) -> Vec<Elem> {
        self.sub_of.iter().map(|&s| x[s as usize]).collect()
    }

    /// The full `degree x degree` matrix of `x` (for cross-checks on small cases).
    pub fn dense_matrix(&self, x: &[Elem]) -> Mat {
        let deg = self.degree();
        let v = self.point_vector(x);
        let mut m = Mat::zeros(&self.field, deg, deg);
        for w in 0..deg {
            let g = &self.cosets.reps()[w];
            for (u, &c) in v.iter().enumerate() {
                if c != 0 {
                    m.set(w, self.cosets.act(u, g), c);
                }
            }
        }
        m
    }

    pub fn random_element(&self, rng: &mut Rng) -> Vec<Elem> {
        let q = self.field.order();
        (0..self.dim()).map(|_| rng.gen_range(0..q) as Elem).collect()
    }

    /// The permutation module on the cosets, in the point basis used here.
    pub fn permutation_module(&self) -> Result<Representation> {
        Representation::from_permutations(
            self.cosets.group(),
            &self.field,
            self.degree(),
            self.cosets.action_perms(),
        )
    }
}

/// A Scott module as a submodule of the permutation module it was cut from.
#[derive(Clone, Debug)]
pub struct ScottModule {
    pub module: Representation,
    /// Basis rows in the point basis of the permutation module.
    pub basis: Mat,
    pub hecke_dim: usize,
    pub idempotent: Vec<Elem>,
    pub end_dim: usize,
}

/// A primitive idempotent with augmentation 1, refined from the unit by splitting random
/// elements of the corner algebra through their minimal polynomials.
fn scott_idempotent(h: &HeckeAlgebra, rng: &mut Rng) -> Vec<Elem> {
    let f = h.field().clone();
    let mut e = h.unit();
    let mut streak = 0;
    for _ in 0..MAX_ROUNDS {
        if streak >= NILPOTENT_STREAK {
            break;
        }
        let r = h.random_element(rng);
        let a = h.mul(&h.mul(&e, &r), &e);
        let ra = h.right_mul_matrix(&a);
        let kr = Krylov::new(&f, e.clone(), |v| ra.vec_mul(v));
        let parts = kr.min_poly.root_power_split(&f);
        if parts.len() <= 1 {
            streak += 1;
            continue;
        }
        streak = 0;
        let factors: Vec<_> = parts.iter().map(|(_, p)| p.clone()).collect();
        let idems = crt_idempotents(&f, &kr.min_poly, &factors);
        let chi = h.augmentation(&a);
        let pick = parts
            .iter()
            .position(|(root, _)| *root == Some(chi))
            .expect("the augmentation is an eigenvalue");
        e = kr.evaluate(&f, &idems[pick]);
    }
    e
}

/// The Scott module `S(G, H)`: the summand of `k[H\G]` containing the trivial submodule.
pub fn scott_module(group: &PermGroup, sub: &PermGroup, field: &Field, rng: &mut Rng) -> Result<ScottModule> {
    let h = HeckeAlgebra::new(group, sub, field)?;
    let e = scott_idempotent(&h, rng);
    debug_assert_eq!(h.mul(&e, &e), e);
    let perm = h.permutation_module()?;
    let tree = SpinTree::submodule(&perm, &[h.point_vector(&e)]);
    let basis = Basis::new(tree.basis_matrix(field, perm.dim()));
    let mut module = perm.restrict_to_basis(&basis)?;
    let mut basis_rows = basis.rows().clone();
    let mut end = endomorphism_ring(&module)?;
    if let Locality::Split { .. } = local_certificate(field, module.dim(), &end, rng)? {
        // the idempotent was not primitive: keep the summand containing the all-ones vector
        let ones = vec![1; perm.dim()];
        let coords = basis.coordinates(&ones);
        let d = decompose(&module, rng)?;
        let proj = d.projections(&module);
        let s = d
            .summands
            .iter()
            .zip(&proj)
            .find(|(_, p)| p.vec_mul(&coords).iter().any(|&x| x != 0))
            .map(|(s, _)| s)
            .expect("the all-ones vector lies in the image");
        basis_rows = s.basis.mul(&basis_rows);
        module = s.module.clone();
        end = endomorphism_ring(&module)?;
    }
    Ok(ScottModule {
        module,
        basis: basis_rows,
        hecke_dim: h.dim(),
        idempotent: e,
        end_dim: end.len(),
    })
}
