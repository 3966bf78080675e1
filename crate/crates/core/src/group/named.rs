use super::perm::Perm;
use super::PermGroup;
use crate::error::{Error, Result};
use crate::field::Field;

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> PermGroup {
    let gens = if n <= 1 {
        Vec::new()
    } else {
        vec![Perm::from_cycles(n, &[(0..n as u32).collect()]).expect("valid")]
    };
    PermGroup::new(n.max(1), gens)
        .expect("valid")
        .with_name(format!("C{n}"))
}

/// Dihedral group of order `2n` on `n` points (`n >= 3`).
pub fn dihedral(n: usize) -> PermGroup {
    let rot = Perm::from_cycles(n, &[(0..n as u32).collect()]).expect("valid");
    let refl = Perm::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())
        .expect("valid");
    PermGroup::new(n, vec![rot, refl])
        .expect("valid")
        .with_name(format!("D{}", 2 * n))
}

pub fn symmetric(n: usize) -> PermGroup {
    let gens = if n <= 1 {
        Vec::new()
    } else if n == 2 {
        vec![Perm::from_cycles(2, &[vec![0, 1]]).expect("valid")]
    } else {
        vec![
            Perm::from_cycles(n, &[(0..n as u32).collect()]).expect("valid"),
            Perm::from_cycles(n, &[vec![0, 1]]).expect("valid"),
        ]
    };
    PermGroup::new(n.max(1), gens)
        .expect("valid")
        .with_name(format!("S{n}"))
}

pub fn alternating(n: usize) -> PermGroup {
    let gens = (2..n as u32)
        .map(|k| Perm::from_cycles(n, &[vec![0, 1, k]]).expect("valid"))
        .collect();
    PermGroup::new(n.max(1), gens)
        .expect("valid")
        .with_name(format!("A{n}"))
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion8() -> PermGroup {
    // element index = 4*sign + unit, units 1,i,j,k
    let unit_mul = |a: usize, b: usize| -> (usize, usize) {
        // returns (sign, unit) of unit a times unit b
        match (a, b) {
            (0, x) | (x, 0) => (0, x),
            (x, y) if x == y => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let mul = |x: usize, y: usize| -> usize {
        let (s, u) = unit_mul(x % 4, y % 4);
        4 * ((x / 4 + y / 4 + s) % 2) + u
    };
    let right = |g: usize| Perm::from_images((0..8).map(|x| mul(x, g) as u32).collect()).expect("valid");
    PermGroup::new(8, vec![right(1), right(2)])
        .expect("valid")
        .with_name("Q8")
}

/// SL(2, q) acting on the `q^2 - 1` nonzero row vectors of `GF(q)^2`, so the centre `{1, -1}`
/// acts faithfully.
pub fn sl2(q: u64) -> Result<PermGroup> {
    let f = Field::of_order(q)?;
    if q > 32 {
        return Err(Error::InvalidInput(format!("SL2({q}) is outside the supported range q <= 32")));
    }
    let qq = q as usize;
    let index = |a: u8, b: u8| a as usize + b as usize * qq - 1;
    let perm_of = |m: [[u8; 2]; 2]| {
        let mut images = vec![0u32; qq * qq - 1];
        for a in 0..qq as u8 {
            for b in 0..qq as u8 {
                if a == 0 && b == 0 {
                    continue;
                }
                let x = f.add(f.mul(a, m[0][0]), f.mul(b, m[1][0]));
                let y = f.add(f.mul(a, m[0][1]), f.mul(b, m[1][1]));
                images[index(a, b)] = index(x, y) as u32;
            }
        }
        Perm::from_images(images).expect("invertible matrix")
    };
    let one = 1u8;
    let mut gens = vec![
        perm_of([[one, one], [0, one]]),
        perm_of([[0, one], [f.neg(one), 0]]),
    ];
    if f.degree() > 1 {
        let z = f.primitive_element();
        gens.push(perm_of([[z, 0], [0, f.inv(z)]]));
    }
    Ok(PermGroup::new(qq * qq - 1, gens)?.with_name(format!("SL2({q})")))
}

/// Parse a group: a named shorthand (`SL2(q)`, `Cn`, `Dn`, `Sn`, `An`, `Q8`) or one permutation
/// per line (or separated by `;`) in 1-based cycle notation.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let t = text.trim();
    let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let upper = compact.to_ascii_uppercase();
    let num = |s: &str| -> Result<u64> {
        s.parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad group size in `{t}`")))
    };
    if let Some(rest) = upper.strip_prefix("SL2(").or_else(|| upper.strip_prefix("SL(2,")) {
        let q = num(rest.trim_end_matches(')'))?;
        return sl2(q);
    }
    if upper == "Q8" {
        return Ok(quaternion8());
    }
    if !upper.is_empty() && !upper.starts_with('(') {
        let (head, tail) = upper.split_at(1);
        if tail.chars().all(|c| c.is_ascii_digit()) && !tail.is_empty() {
            let n = num(tail)? as usize;
            return match head {
                "C" => Ok(cyclic(n)),
                "S" => Ok(symmetric(n)),
                "A" => Ok(alternating(n)),
                "D" if n % 2 == 0 && n >= 6 => Ok(dihedral(n / 2)),
                "D" if n == 4 => {
                    let a = Perm::parse_cycles("(1,2)(3,4)", 4)?;
                    let b = Perm::parse_cycles("(1,3)(2,4)", 4)?;
                    Ok(PermGroup::new(4, vec![a, b])?.with_name("D4"))
                }
                _ => Err(Error::Parse(format!("unknown group name `{t}`"))),
            };
        }
        return Err(Error::Parse(format!("unknown group name `{t}`")));
    }
    let parts: Vec<&str> = t
        .split(['\n', ';'])
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('#'))
        .collect();
    let degree = parts
        .iter()
        .map(|p| Perm::max_point_in(p))
        .max()
        .unwrap_or(1)
        .max(1) as usize;
    let gens = parts
        .iter()
        .map(|p| Perm::parse_cycles(p, degree))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(degree, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_orders() {
        assert_eq!(cyclic(12).order(), 12);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(quaternion8().order(), 8);
        assert_eq!(sl2(2).unwrap().order(), 6);
        assert_eq!(sl2(3).unwrap().order(), 24);
        assert_eq!(sl2(4).unwrap().order(), 60);
        assert_eq!(sl2(5).unwrap().order(), 120);
        assert_eq!(sl2(9).unwrap().order(), 720);
        assert!(sl2(6).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_group("SL2(3)").unwrap().order(), 24);
        assert_eq!(parse_group("c5").unwrap().order(), 5);
        assert_eq!(parse_group("D8").unwrap().order(), 8);
        let g = parse_group("(1,2,3,4)\n(1,3)").unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.degree(), 4);
        assert!(parse_group("X7").is_err());
        assert!(parse_group("(1,2").is_err());
    }
}
