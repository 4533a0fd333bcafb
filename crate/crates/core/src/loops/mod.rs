//! Finite loops behind one interface.
//!
//! Elements are indices `0..n` and index `0` is always the neutral element.
//! Two backends exist: a dense [`CayleyLoop`] for small orders and the
//! formula-driven [`TripleLoop`], which is never materialized as a table.

mod cayley;
mod group;
mod presets;
mod triple;

pub use cayley::{CayleyLoop, MAX_CAYLEY_ORDER};
pub use group::{chein_double, GroupTable};
pub use presets::{preset, PRESETS};
pub use triple::{build_bruck_loop, TripleElement, TripleLoop};

use crate::error::{Error, Result};

/// Default largest order written by [`save_cayley`].
pub const DEFAULT_EXPORT_CAP: usize = 4096;

/// Budget on `Σ ord(x)²` for the exhaustive power-associativity check.
const POWER_CHECK_BUDGET: usize = 1 << 27;

#[derive(Clone, Debug)]
pub enum Backend {
    Cayley(CayleyLoop),
    Triple(TripleLoop),
}

#[derive(Clone, Debug)]
pub struct Loop {
    name: String,
    backend: Backend,
    power_associative: bool,
}

impl Loop {
    pub fn cayley(name: impl Into<String>, table: CayleyLoop) -> Loop {
        Loop {
            name: name.into(),
            backend: Backend::Cayley(table),
            power_associative: false,
        }
    }

    pub fn triple(name: impl Into<String>, tl: TripleLoop) -> Loop {
        Loop {
            name: name.into(),
            backend: Backend::Triple(tl),
            power_associative: false,
        }
    }

    pub fn from_table(name: impl Into<String>, n: usize, entries: &[usize]) -> Result<Loop> {
        Ok(Loop::cayley(name, CayleyLoop::from_table(n, entries)?))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Loop {
        self.name = name.into();
        self
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn as_triple(&self) -> Option<&TripleLoop> {
        match &self.backend {
            Backend::Triple(t) => Some(t),
            Backend::Cayley(_) => None,
        }
    }

    pub fn as_cayley(&self) -> Option<&CayleyLoop> {
        match &self.backend {
            Backend::Cayley(c) => Some(c),
            Backend::Triple(_) => None,
        }
    }

    pub fn order(&self) -> usize {
        match &self.backend {
            Backend::Cayley(c) => c.order(),
            Backend::Triple(t) => t.order(),
        }
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.backend {
            Backend::Cayley(c) => c.mul(x, y),
            Backend::Triple(t) => t.mul(x, y),
        }
    }

    /// `x \ y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        match &self.backend {
            Backend::Cayley(c) => c.ldiv(x, y),
            Backend::Triple(t) => t.ldiv(x, y),
        }
    }

    /// `y / x`.
    #[inline]
    pub fn rdiv(&self, y: usize, x: usize) -> usize {
        match &self.backend {
            Backend::Cayley(c) => c.rdiv(y, x),
            Backend::Triple(t) => t.rdiv(y, x),
        }
    }

    /// Two-sided inverse, if `x\1 = 1/x`.
    pub fn inverse(&self, x: usize) -> Result<usize> {
        let right = self.ldiv(x, 0);
        if self.rdiv(0, x) == right {
            Ok(right)
        } else {
            Err(Error::NoTwoSidedInverse(x))
        }
    }

    /// Infallible inverse for loops known to have two-sided inverses.
    #[inline]
    pub(crate) fn inv(&self, x: usize) -> usize {
        self.ldiv(x, 0)
    }

    /// `x^k`. Without verified power-associativity powers are built as
    /// `x(x(x…))`; negative exponents need a two-sided inverse.
    pub fn power(&self, x: usize, k: i64) -> Result<usize> {
        let base = if k < 0 { self.inverse(x)? } else { x };
        Ok(self.pow_unsigned(base, k.unsigned_abs()))
    }

    fn pow_unsigned(&self, x: usize, k: u64) -> usize {
        if self.power_associative {
            let (mut acc, mut sq, mut k) = (0, x, k);
            while k > 0 {
                if k & 1 == 1 {
                    acc = self.mul(acc, sq);
                }
                sq = self.mul(sq, sq);
                k >>= 1;
            }
            acc
        } else {
            (0..k).fold(0, |acc, _| self.mul(x, acc))
        }
    }

    /// `x^k` with the inverse taken as `x\1`; for Moufang inputs.
    #[inline]
    pub(crate) fn pw(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        self.pow_unsigned(base, k.unsigned_abs())
    }

    pub fn is_power_associative_verified(&self) -> bool {
        self.power_associative
    }

    /// Least `k ≥ 1` with `x(x(…x)) = 1`, if any within `n` steps.
    pub fn element_order(&self, x: usize) -> Option<usize> {
        let mut acc = x;
        for k in 1..=self.order() {
            if acc == 0 {
                return Some(k);
            }
            acc = self.mul(x, acc);
        }
        None
    }

    /// Exhaustive check that every cyclic subloop `⟨x⟩` is associative:
    /// `xⁱ·xʲ = xⁱ⁺ʲ` for all `i, j < ord(x)`. `None` if over budget.
    pub fn check_power_associative(&self) -> Option<bool> {
        let n = self.order();
        let mut spent = 0usize;
        for x in 0..n {
            let powers = {
                let mut p = vec![0usize];
                let mut acc = x;
                while acc != 0 {
                    if p.len() > n {
                        return Some(false);
                    }
                    p.push(acc);
                    acc = self.mul(x, acc);
                }
                p
            };
            let ord = powers.len();
            spent += ord * ord;
            if spent > POWER_CHECK_BUDGET {
                return None;
            }
            for i in 0..ord {
                for j in 0..ord {
                    if self.mul(powers[i], powers[j]) != powers[(i + j) % ord] {
                        return Some(false);
                    }
                }
            }
        }
        Some(true)
    }

    /// Enables fast powering once power-associativity is verified.
    pub fn with_power_associativity(mut self) -> Loop {
        self.power_associative = self.check_power_associative() == Some(true);
        self
    }

    /// Materializes a Cayley backend, refused above `cap`.
    pub fn to_cayley(&self, cap: usize) -> Result<Loop> {
        match &self.backend {
            Backend::Cayley(_) => Ok(self.clone()),
            Backend::Triple(t) => {
                let n = t.order();
                if n > cap {
                    return Err(Error::CapExceeded { order: n, cap });
                }
                let entries: Vec<usize> = (0..n * n).map(|i| t.mul(i / n, i % n)).collect();
                Loop::from_table(self.name.clone(), n, &entries)
            }
        }
    }

    pub fn render(&self, x: usize) -> String {
        match &self.backend {
            Backend::Triple(t) => t.render(x),
            Backend::Cayley(_) => x.to_string(),
        }
    }
}

/// Parses the `loop <n>` Cayley format.
pub fn load_cayley(text: &str) -> Result<Loop> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 0,
        msg: "empty document".into(),
    })?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["loop", n] => n.parse::<usize>().map_err(|_| Error::Parse {
            line: hline,
            msg: format!("bad order `{n}`"),
        })?,
        _ => {
            return Err(Error::Parse {
                line: hline,
                msg: "expected `loop <n>` header".into(),
            })
        }
    };
    if n > MAX_CAYLEY_ORDER {
        return Err(Error::CapExceeded {
            order: n,
            cap: MAX_CAYLEY_ORDER,
        });
    }
    let mut entries = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (lineno, line) in lines {
        if rows == n {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("more than {n} rows"),
            });
        }
        let before = entries.len();
        for f in line.split_whitespace() {
            entries.push(f.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("`{f}` is not an element index"),
            })?);
        }
        if entries.len() - before != n {
            return Err(Error::Parse {
                line: lineno,
                msg: format!(
                    "row {rows} has {} entries, expected {n}",
                    entries.len() - before
                ),
            });
        }
        rows += 1;
    }
    if rows != n {
        return Err(Error::Parse {
            line: 0,
            msg: format!("found {rows} rows, expected {n}"),
        });
    }
    Loop::from_table("table", n, &entries)
}

/// Writes the `loop <n>` Cayley format; refused above `cap`.
pub fn save_cayley(lp: &Loop, cap: usize) -> Result<String> {
    let n = lp.order();
    if n > cap {
        return Err(Error::CapExceeded { order: n, cap });
    }
    let mut out = String::with_capacity(n * n * 5 + 16);
    out.push_str(&format!("loop {n}\n"));
    for x in 0..n {
        for y in 0..n {
            if y > 0 {
                out.push(' ');
            }
            out.push_str(&lp.mul(x, y).to_string());
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const C4: &str = "# cyclic group of order 4\nloop 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n";

    #[test]
    fn load_c4() {
        let lp = load_cayley(C4).unwrap();
        assert_eq!(lp.order(), 4);
        assert_eq!(lp.mul(3, 3), 2);
        assert_eq!(lp.ldiv(1, 1), 0);
    }

    #[test]
    fn load_rejects_duplicate_in_row() {
        let bad = "loop 3\n0 1 2\n1 1 0\n2 0 1\n";
        let err = load_cayley(bad).unwrap_err().to_string();
        assert!(err.contains("row 1"), "{err}");
    }

    #[test]
    fn load_rejects_bad_shapes() {
        assert!(load_cayley("loop 2\n0 1\n").is_err());
        assert!(load_cayley("loop 2\n0 1\n1 0\n0 1\n").is_err());
        assert!(load_cayley("loop 2\n0 1 1\n1 0\n").is_err());
        assert!(load_cayley("table 2\n").is_err());
        assert!(load_cayley("loop 2\n1 0\n0 1\n").is_err());
    }

    #[test]
    fn save_round_trips() {
        let lp = load_cayley(C4).unwrap();
        let text = save_cayley(&lp, DEFAULT_EXPORT_CAP).unwrap();
        assert_eq!(text, "loop 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
        let again = load_cayley(&text).unwrap();
        assert_eq!(again.as_cayley(), lp.as_cayley());
    }

    #[test]
    fn save_refuses_over_cap() {
        let lp = load_cayley(C4).unwrap();
        assert!(matches!(
            save_cayley(&lp, 3),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn powers_with_and_without_fast_path() {
        let lp = load_cayley(C4).unwrap();
        assert_eq!(lp.power(1, 3).unwrap(), 3);
        assert_eq!(lp.power(1, -1).unwrap(), 3);
        assert_eq!(lp.power(3, 0).unwrap(), 0);
        let fast = lp.clone().with_power_associativity();
        assert!(fast.is_power_associative_verified());
        for x in 0..4 {
            for k in -9..9 {
                assert_eq!(fast.power(x, k).unwrap(), lp.power(x, k).unwrap());
            }
        }
        assert_eq!(lp.element_order(1), Some(4));
        assert_eq!(lp.element_order(2), Some(2));
        assert_eq!(lp.element_order(0), Some(1));
    }

    #[test]
    fn missing_two_sided_inverse_is_an_error() {
        // nassoc5: element 2 has right inverse 3 but left inverse 4.
        let t = [
            0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 3, 4, 0, 1, 3, 4, 1, 2, 0, 4, 2, 0, 1, 3,
        ];
        let lp = Loop::from_table("nassoc5", 5, &t).unwrap();
        let mut errors = 0;
        for x in 0..5 {
            if lp.inverse(x).is_err() {
                errors += 1;
            }
        }
        assert!(errors > 0);
        assert!(matches!(lp.inverse(2), Err(Error::NoTwoSidedInverse(2))));
    }
}
