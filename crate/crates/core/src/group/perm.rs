use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, .., degree-1}`, acting on the right: `i^(ab) = (i^a)^b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Box<[u32]>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidInput(format!(
                    "image list is not a bijection on {n} points"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    /// Build from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for c in cycles {
            for &x in c {
                if x as usize >= degree || used[x as usize] {
                    return Err(Error::InvalidInput(format!(
                        "cycle point {} repeated or out of range",
                        x + 1
                    )));
                }
                used[x as usize] = true;
            }
            for k in 0..c.len() {
                images[c[k] as usize] = c[(k + 1) % c.len()];
            }
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Apply `self`, then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `g^-1 * self * g`.
    pub fn conj(&self, g: &Perm) -> Perm {
        g.inverse().mul(self).mul(g)
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| other.images[x as usize] == self.images[other.images[i] as usize])
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.images[s] as usize == s {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Cycle notation with 1-based points, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let cs = self.cycles();
        if cs.is_empty() {
            return "()".to_string();
        }
        cs.iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", pts.join(","))
            })
            .collect()
    }

    /// Parse 1-based cycle notation such as `(1,2,3)(4,5)`; the degree is given explicitly.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "()" {
            return Ok(Perm::identity(degree));
        }
        let mut cycles = Vec::new();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let body_end = rest
                .find(')')
                .filter(|_| rest.starts_with('('))
                .ok_or_else(|| Error::Parse(format!("malformed cycle notation `{text}`")))?;
            let body = &rest[1..body_end];
            let mut c = Vec::new();
            for part in body.split(',') {
                let x: u32 = part
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point `{part}` in `{text}`")))?;
                if x == 0 {
                    return Err(Error::Parse("points are 1-based".into()));
                }
                c.push(x - 1);
            }
            cycles.push(c);
            rest = &rest[body_end + 1..];
        }
        Perm::from_cycles(degree, &cycles)
    }

    /// Largest point moved (1-based) in a cycle string, used to infer a degree.
    pub fn max_point_in(text: &str) -> u32 {
        text.split(|c: char| !c.is_ascii_digit())
            .filter_map(|s| s.parse::<u32>().ok())
            .max()
            .unwrap_or(0)
    }

    /// Extend to a larger degree by fixing the new points.
    pub fn extend(&self, degree: usize) -> Perm {
        assert!(degree >= self.degree());
        let mut v = self.images.to_vec();
        v.extend(self.degree() as u32..degree as u32);
        Perm {
            images: v.into_boxed_slice(),
        }
    }

    /// The permutation acting as `self` on the first block and `other` on a shifted copy.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let n = self.degree() as u32;
        let mut v = self.images.to_vec();
        v.extend(other.images.iter().map(|&x| x + n));
        Perm {
            images: v.into_boxed_slice(),
        }
    }

    /// Restrict to points `range`, shifting them to start at 0; the range must be invariant.
    pub fn restrict_block(&self, start: usize, len: usize) -> Perm {
        let v: Vec<u32> = self.images[start..start + len]
            .iter()
            .map(|&x| x - start as u32)
            .collect();
        Perm {
            images: v.into_boxed_slice(),
        }
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
