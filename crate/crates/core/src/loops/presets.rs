use super::{build_bruck_loop, chein_double, GroupTable, Loop};
use crate::error::{Error, Result};
use crate::ring::ring_preset;

pub const PRESETS: &[&str] = &[
    "paper-z4", "paper-z3", "c3", "c4", "s3", "d4", "heis27", "cml81", "nassoc5", "chein-s3",
];

const NASSOC5: [usize; 25] = [
    0, 1, 2, 3, 4, //
    1, 0, 3, 4, 2, //
    2, 3, 4, 0, 1, //
    3, 4, 1, 2, 0, //
    4, 2, 0, 1, 3,
];

pub fn preset(name: &str) -> Result<Loop> {
    let lp = match name {
        "paper-z4" | "paper-z3" => build_bruck_loop(&ring_preset(name)?)?,
        "c3" => cyclic(3)?,
        "c4" => cyclic(4)?,
        "s3" => symmetric3()?,
        "d4" => dihedral4()?,
        "heis27" => heisenberg27()?,
        "cml81" => cml81()?,
        "nassoc5" => Loop::from_table(name, 5, &NASSOC5)?,
        "chein-s3" => chein_double(&GroupTable::verify(symmetric3()?, None)?, name)?,
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(lp.with_name(name))
}

fn table(name: &str, n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Loop> {
    let entries: Vec<usize> = (0..n * n).map(|i| f(i / n, i % n)).collect();
    Loop::from_table(name, n, &entries)
}

fn cyclic(n: usize) -> Result<Loop> {
    table(&format!("c{n}"), n, |x, y| (x + y) % n)
}

/// Permutations of three points in lexicographic order, composed left to right.
fn symmetric3() -> Result<Loop> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    table("s3", 6, |x, y| {
        let p = [
            perms[y][perms[x][0]],
            perms[y][perms[x][1]],
            perms[y][perms[x][2]],
        ];
        perms.iter().position(|q| *q == p).expect("closed")
    })
}

/// `rⁱsʲ ↦ i + 4j`, with `s r = r⁻¹ s`.
fn dihedral4() -> Result<Loop> {
    table("d4", 8, |x, y| {
        let (i, j) = (x % 4, x / 4);
        let (k, l) = (y % 4, y / 4);
        let k = if j == 1 { (4 - k) % 4 } else { k };
        (i + k) % 4 + 4 * ((j + l) % 2)
    })
}

/// Upper unitriangular 3×3 matrices over Z₃; `(x, y, z) ↦ 9x + 3y + z` for
/// the matrix with entries `x` (1,2), `y` (2,3), `z` (1,3).
fn heisenberg27() -> Result<Loop> {
    table("heis27", 27, |p, q| {
        let (x, y, z) = (p / 9, (p / 3) % 3, p % 3);
        let (x2, y2, z2) = (q / 9, (q / 3) % 3, q % 3);
        ((x + x2) % 3) * 9 + ((y + y2) % 3) * 3 + (z + z2 + x * y2) % 3
    })
}

/// `Z₃⁴` with `x∘y = x + y + (0,0,0,(x₁−y₁)(x₂y₃−x₃y₂))`; the defining
/// properties are checked here rather than assumed.
fn cml81() -> Result<Loop> {
    let digits = |v: usize| [v / 27, (v / 9) % 3, (v / 3) % 3, v % 3];
    let lp = table("cml81", 81, |p, q| {
        let (x, y) = (digits(p), digits(q));
        let t = (3 + x[0] - y[0]) * (x[1] * y[2] + 2 * x[2] * y[1]);
        let w = [
            (x[0] + y[0]) % 3,
            (x[1] + y[1]) % 3,
            (x[2] + y[2]) % 3,
            (x[3] + y[3] + t) % 3,
        ];
        w[0] * 27 + w[1] * 9 + w[2] * 3 + w[3]
    })?;
    let n = lp.order();
    let mut nonassociative = false;
    for x in 0..n {
        for y in 0..n {
            if lp.mul(x, y) != lp.mul(y, x) {
                return Err(Error::Refused(format!(
                    "cml81 not commutative at ({x},{y})"
                )));
            }
            for z in 0..n {
                let left = lp.mul(x, lp.mul(y, lp.mul(x, z)));
                let right = lp.mul(lp.mul(lp.mul(x, y), x), z);
                if left != right {
                    return Err(Error::Refused(format!(
                        "cml81 not Moufang at ({x},{y},{z})"
                    )));
                }
                nonassociative |= lp.mul(lp.mul(x, y), z) != lp.mul(x, lp.mul(y, z));
            }
        }
    }
    if !nonassociative {
        return Err(Error::Refused("cml81 is associative".into()));
    }
    Ok(lp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_builds() {
        for name in PRESETS {
            let lp = preset(name).unwrap();
            assert_eq!(lp.name(), *name);
        }
        assert!(matches!(preset("q8"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn orders() {
        let orders: Vec<usize> = PRESETS.iter().map(|n| preset(n).unwrap().order()).collect();
        assert_eq!(orders, vec![16384, 2187, 3, 4, 6, 8, 27, 81, 5, 12]);
    }

    #[test]
    fn c4_arithmetic() {
        assert_eq!(preset("c4").unwrap().mul(3, 3), 2);
    }

    #[test]
    fn groups_are_groups() {
        for name in ["c3", "c4", "s3", "d4", "heis27"] {
            assert!(
                GroupTable::verify(preset(name).unwrap(), None).is_ok(),
                "{name}"
            );
        }
        assert!(GroupTable::verify(preset("nassoc5").unwrap(), None).is_err());
        assert!(GroupTable::verify(preset("chein-s3").unwrap(), None).is_err());
    }

    #[test]
    fn s3_and_d4_are_nonabelian() {
        for name in ["s3", "d4", "heis27"] {
            let lp = preset(name).unwrap();
            let n = lp.order();
            let commutative = (0..n).all(|x| (0..n).all(|y| lp.mul(x, y) == lp.mul(y, x)));
            assert!(!commutative, "{name}");
        }
    }
}
