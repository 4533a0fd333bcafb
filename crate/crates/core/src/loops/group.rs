use super::Loop;
use crate::analysis::{extend_subloop, subloop_generated};
use crate::error::{Error, Result};

/// Orders up to this are checked on all `n³` triples.
pub const EXHAUSTIVE_ASSOCIATIVITY_MAX: usize = 512;

/// A loop verified to be associative.
#[derive(Clone, Debug)]
pub struct GroupTable {
    lp: Loop,
    generators: Vec<usize>,
}

impl GroupTable {
    /// Verifies associativity: exhaustively for small orders, otherwise by
    /// Light's test `(xg)y = x(gy)` over a generating set, which is either
    /// `generators` (checked to generate) or chosen greedily.
    pub fn verify(lp: Loop, generators: Option<&[usize]>) -> Result<GroupTable> {
        let n = lp.order();
        let gens = match generators {
            Some(g) => {
                let h = subloop_generated(&lp, g);
                if h.len() != n {
                    return Err(Error::Refused(format!(
                        "declared generators span only {} of {n} elements",
                        h.len()
                    )));
                }
                g.to_vec()
            }
            None => greedy_generators(&lp),
        };
        let checked: Box<dyn Iterator<Item = usize>> = if n <= EXHAUSTIVE_ASSOCIATIVITY_MAX {
            Box::new(0..n)
        } else {
            Box::new(gens.clone().into_iter())
        };
        for g in checked {
            for x in 0..n {
                let xg = lp.mul(x, g);
                for y in 0..n {
                    if lp.mul(xg, y) != lp.mul(x, lp.mul(g, y)) {
                        return Err(Error::Refused(format!(
                            "not associative: ({x}·{g})·{y} ≠ {x}·({g}·{y})"
                        )));
                    }
                }
            }
        }
        Ok(GroupTable {
            lp: lp.with_power_associativity(),
            generators: gens,
        })
    }

    pub fn as_loop(&self) -> &Loop {
        &self.lp
    }

    pub fn into_loop(self) -> Loop {
        self.lp
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.lp.order()
    }
}

fn greedy_generators(lp: &Loop) -> Vec<usize> {
    let n = lp.order();
    let mut gens = Vec::new();
    let mut span = subloop_generated(lp, &gens);
    for x in 0..n {
        if span.len() == n {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = extend_subloop(lp, &span, &[x]);
        }
    }
    gens
}

/// The Chein double `M(G, 2)` on `G ∪ Gu`, with `g ↦ g` and `gu ↦ |G| + g`.
pub fn chein_double(group: &GroupTable, name: &str) -> Result<Loop> {
    let g = group.as_loop();
    let n = g.order();
    let inv: Vec<usize> = (0..n).map(|x| g.inv(x)).collect();
    let mut entries = vec![0usize; 4 * n * n];
    for x in 0..2 * n {
        for y in 0..2 * n {
            let v = match (x < n, y < n) {
                (true, true) => g.mul(x, y),
                (true, false) => n + g.mul(y - n, x),
                (false, true) => n + g.mul(x - n, inv[y]),
                (false, false) => g.mul(inv[y - n], x - n),
            };
            entries[x * 2 * n + y] = v;
        }
    }
    Loop::from_table(name, 2 * n, &entries)
}
