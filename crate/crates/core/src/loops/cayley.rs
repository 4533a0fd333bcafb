use crate::error::{Error, Result};

/// Hard upper bound on Cayley-backed orders (entries are stored as `u16`).
pub const MAX_CAYLEY_ORDER: usize = 1 << 16;

/// A dense multiplication table with precomputed division tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyLoop {
    n: usize,
    table: Vec<u16>,
    ldiv: Vec<u16>,
    rdiv: Vec<u16>,
}

impl CayleyLoop {
    /// Validates a row-major table: entries in range, element 0 neutral,
    /// every row and column a permutation.
    pub fn from_table(n: usize, entries: &[usize]) -> Result<CayleyLoop> {
        if n == 0 {
            return Err(Error::InvalidTable("order must be at least 1".into()));
        }
        if n > MAX_CAYLEY_ORDER {
            return Err(Error::CapExceeded {
                order: n,
                cap: MAX_CAYLEY_ORDER,
            });
        }
        if entries.len() != n * n {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|&v| v >= n) {
            return Err(Error::InvalidTable(format!(
                "row {}: entry {} outside [0,{n})",
                pos / n,
                entries[pos]
            )));
        }
        for x in 0..n {
            if entries[x] != x || entries[x * n] != x {
                return Err(Error::InvalidTable(format!(
                    "element 0 is not neutral (fails at {x})"
                )));
            }
        }
        let mut ldiv = vec![0u16; n * n];
        let mut rdiv = vec![0u16; n * n];
        let mut seen = vec![false; n];
        for x in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for y in 0..n {
                let v = entries[x * n + y];
                if seen[v] {
                    return Err(Error::InvalidTable(format!(
                        "row {x} is not a permutation: {v} appears twice"
                    )));
                }
                seen[v] = true;
                ldiv[x * n + v] = y as u16;
            }
        }
        for y in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for x in 0..n {
                let v = entries[x * n + y];
                if seen[v] {
                    return Err(Error::InvalidTable(format!(
                        "column {y} is not a permutation: {v} appears twice"
                    )));
                }
                seen[v] = true;
                rdiv[v * n + y] = x as u16;
            }
        }
        Ok(CayleyLoop {
            n,
            table: entries.iter().map(|&v| v as u16).collect(),
            ldiv,
            rdiv,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y] as usize
    }

    /// `x \ y`, the solution `q` of `x·q = y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.n + y] as usize
    }

    /// `y / x`, the solution `p` of `p·x = y`.
    #[inline]
    pub fn rdiv(&self, y: usize, x: usize) -> usize {
        self.rdiv[y * self.n + x] as usize
    }

    pub fn row(&self, x: usize) -> &[u16] {
        &self.table[x * self.n..(x + 1) * self.n]
    }

    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.table.iter().map(|&v| v as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Vec<usize> {
        (0..n * n).map(|i| (i / n + i % n) % n).collect()
    }

    #[test]
    fn divisions_invert_multiplication() {
        let c = CayleyLoop::from_table(5, &cyclic(5)).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(c.mul(x, c.ldiv(x, y)), y);
                assert_eq!(c.mul(c.rdiv(y, x), x), y);
            }
        }
    }

    #[test]
    fn rejects_duplicate_in_row() {
        let mut t = cyclic(3);
        t[5] = 2; // row 1: [1, 2, 2]
        let err = CayleyLoop::from_table(3, &t).unwrap_err().to_string();
        assert!(err.contains("row 1"), "{err}");
    }

    #[test]
    fn rejects_duplicate_in_column() {
        // Every row is a permutation; column 1 reads 1, 2, 1.
        let t = vec![0, 1, 2, 1, 2, 0, 2, 1, 0];
        let err = CayleyLoop::from_table(3, &t).unwrap_err().to_string();
        assert!(err.contains("column 1"), "{err}");
    }

    #[test]
    fn rejects_non_neutral_zero() {
        let t = vec![1, 0, 0, 1];
        let err = CayleyLoop::from_table(2, &t).unwrap_err().to_string();
        assert!(err.contains("neutral"), "{err}");
    }
}
