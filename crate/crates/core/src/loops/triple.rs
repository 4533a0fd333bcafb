//! The triple loop `X₁ × X₂ × X₃` with product
//! `(a,b,c)(a',b',c') = (a+a', b+b'+aa', c+c'+ba')`.
//!
//! Components are stored as indices into the sorted enumerations of the
//! graded parts; additions and the three cross products needed by the
//! multiplication, its divisions and the inner-mapping formulas are
//! precomputed as small index tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{check_ring_axioms, graded_parts, GradedParts, RingElement, RingSpec};

/// Largest `|Xᵢ|·|Xⱼ|` product table the construction will allocate.
const MAX_TABLE: usize = 1 << 24;

/// Flat index of `(a, b, c)` is `a·|X₂|·|X₃| + b·|X₃| + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TripleElement {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

#[derive(Clone, Debug)]
pub struct TripleLoop {
    spec: RingSpec,
    parts: GradedParts,
    n1: usize,
    n2: usize,
    n3: usize,
    add1: Vec<u16>,
    neg1: Vec<u16>,
    add2: Vec<u16>,
    neg2: Vec<u16>,
    add3: Vec<u16>,
    neg3: Vec<u16>,
    /// `a·a'` as an `X₂` index, `[a * n1 + a']`.
    prod11: Vec<u16>,
    /// `b·a'` as an `X₃` index, `[b * n1 + a']`.
    prod21: Vec<u16>,
    /// `a·b'` as an `X₃` index, `[a * n2 + b']`.
    prod12: Vec<u16>,
}

fn add_table(spec: &RingSpec, part: &crate::ring::Part) -> (Vec<u16>, Vec<u16>) {
    let n = part.len();
    let mut add = vec![0u16; n * n];
    let mut neg = vec![0u16; n];
    for i in 0..n {
        neg[i] = part
            .index_of(&spec.neg(part.get(i)))
            .expect("closed under negation") as u16;
        for j in 0..n {
            add[i * n + j] = part
                .index_of(&spec.add(part.get(i), part.get(j)))
                .expect("closed under addition") as u16;
        }
    }
    (add, neg)
}

fn prod_table(
    spec: &RingSpec,
    left: &crate::ring::Part,
    right: &crate::ring::Part,
    target: &crate::ring::Part,
    what: &str,
) -> Result<Vec<u16>> {
    let mut out = vec![0u16; left.len() * right.len()];
    for (i, x) in left.elements().iter().enumerate() {
        for (j, y) in right.elements().iter().enumerate() {
            let p = spec.mul(x, y);
            out[i * right.len() + j] = target.index_of(&p).ok_or_else(|| {
                Error::RingAxioms(format!("{what} product ({x})({y}) = {p} leaves its part"))
            })? as u16;
        }
    }
    Ok(out)
}

impl TripleLoop {
    /// Builds the loop after checking the ring axioms.
    pub fn new(spec: &RingSpec) -> Result<TripleLoop> {
        let axioms = check_ring_axioms(spec);
        if let Some(bad) = axioms.failing().next() {
            return Err(Error::RingAxioms(format!(
                "{} fails{}",
                bad.name,
                bad.note
                    .as_ref()
                    .map(|n| format!(": {n}"))
                    .unwrap_or_default()
            )));
        }
        let parts = graded_parts(spec)?;
        let (n1, n2, n3) = (parts.x1.len(), parts.x2.len(), parts.x3.len());
        if n1 * n1 > MAX_TABLE || n1 * n2 > MAX_TABLE || n2 * n2 > MAX_TABLE {
            return Err(Error::Refused(format!(
                "graded parts of sizes {n1}, {n2}, {n3} are too large"
            )));
        }
        if n1
            .checked_mul(n2)
            .and_then(|v| v.checked_mul(n3))
            .is_none_or(|n| n > 1 << 30)
        {
            return Err(Error::Refused("loop order too large".into()));
        }
        let (add1, neg1) = add_table(spec, &parts.x1);
        let (add2, neg2) = add_table(spec, &parts.x2);
        let (add3, neg3) = add_table(spec, &parts.x3);
        let prod11 = prod_table(spec, &parts.x1, &parts.x1, &parts.x2, "X1·X1")?;
        let prod21 = prod_table(spec, &parts.x2, &parts.x1, &parts.x3, "X2·X1")?;
        let prod12 = prod_table(spec, &parts.x1, &parts.x2, &parts.x3, "X1·X2")?;
        Ok(TripleLoop {
            spec: spec.clone(),
            parts,
            n1,
            n2,
            n3,
            add1,
            neg1,
            add2,
            neg2,
            add3,
            neg3,
            prod11,
            prod21,
            prod12,
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn parts(&self) -> &GradedParts {
        &self.parts
    }

    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.n1, self.n2, self.n3)
    }

    pub fn order(&self) -> usize {
        self.n1 * self.n2 * self.n3
    }

    #[inline]
    pub fn decode(&self, x: usize) -> TripleElement {
        TripleElement {
            a: x / (self.n2 * self.n3),
            b: (x / self.n3) % self.n2,
            c: x % self.n3,
        }
    }

    #[inline]
    pub fn encode(&self, e: TripleElement) -> usize {
        (e.a * self.n2 + e.b) * self.n3 + e.c
    }

    /// Flat index of the element with the given ring components.
    pub fn element(&self, a: &RingElement, b: &RingElement, c: &RingElement) -> Option<usize> {
        Some(self.encode(TripleElement {
            a: self.parts.x1.index_of(a)?,
            b: self.parts.x2.index_of(b)?,
            c: self.parts.x3.index_of(c)?,
        }))
    }

    pub fn components(&self, x: usize) -> (&RingElement, &RingElement, &RingElement) {
        let e = self.decode(x);
        (
            self.parts.x1.get(e.a),
            self.parts.x2.get(e.b),
            self.parts.x3.get(e.c),
        )
    }

    pub fn render(&self, x: usize) -> String {
        let (a, b, c) = self.components(x);
        format!("({a},{b},{c})")
    }

    // Component arithmetic on part indices.

    #[inline]
    pub fn add1(&self, a: usize, b: usize) -> usize {
        self.add1[a * self.n1 + b] as usize
    }
    #[inline]
    pub fn neg1(&self, a: usize) -> usize {
        self.neg1[a] as usize
    }
    #[inline]
    pub fn add2(&self, a: usize, b: usize) -> usize {
        self.add2[a * self.n2 + b] as usize
    }
    #[inline]
    pub fn neg2(&self, a: usize) -> usize {
        self.neg2[a] as usize
    }
    #[inline]
    pub fn add3(&self, a: usize, b: usize) -> usize {
        self.add3[a * self.n3 + b] as usize
    }
    #[inline]
    pub fn neg3(&self, a: usize) -> usize {
        self.neg3[a] as usize
    }
    /// `a·a'` for `a, a' ∈ X₁`, in `X₂`.
    #[inline]
    pub fn prod11(&self, a: usize, a2: usize) -> usize {
        self.prod11[a * self.n1 + a2] as usize
    }
    /// `b·a'` for `b ∈ X₂, a' ∈ X₁`, in `X₃`.
    #[inline]
    pub fn prod21(&self, b: usize, a: usize) -> usize {
        self.prod21[b * self.n1 + a] as usize
    }
    /// `a·b'` for `a ∈ X₁, b' ∈ X₂`, in `X₃`.
    #[inline]
    pub fn prod12(&self, a: usize, b: usize) -> usize {
        self.prod12[a * self.n2 + b] as usize
    }
    #[inline]
    pub fn sub2(&self, a: usize, b: usize) -> usize {
        self.add2(a, self.neg2(b))
    }
    #[inline]
    pub fn sub3(&self, a: usize, b: usize) -> usize {
        self.add3(a, self.neg3(b))
    }

    /// Product on decoded elements.
    #[inline]
    pub fn mul_e(&self, p: TripleElement, q: TripleElement) -> TripleElement {
        TripleElement {
            a: self.add1(p.a, q.a),
            b: self.add2(self.add2(p.b, q.b), self.prod11(p.a, q.a)),
            c: self.add3(self.add3(p.c, q.c), self.prod21(p.b, q.a)),
        }
    }

    /// `p \ r` on decoded elements.
    #[inline]
    pub fn ldiv_e(&self, p: TripleElement, r: TripleElement) -> TripleElement {
        let qa = self.add1(r.a, self.neg1(p.a));
        let qb = self.sub2(self.sub2(r.b, p.b), self.prod11(p.a, qa));
        let qc = self.sub3(self.sub3(r.c, p.c), self.prod21(p.b, qa));
        TripleElement {
            a: qa,
            b: qb,
            c: qc,
        }
    }

    /// `r / q` on decoded elements.
    #[inline]
    pub fn rdiv_e(&self, r: TripleElement, q: TripleElement) -> TripleElement {
        let pa = self.add1(r.a, self.neg1(q.a));
        let pb = self.sub2(self.sub2(r.b, q.b), self.prod11(pa, q.a));
        let pc = self.sub3(self.sub3(r.c, q.c), self.prod21(pb, q.a));
        TripleElement {
            a: pa,
            b: pb,
            c: pc,
        }
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.encode(self.mul_e(self.decode(x), self.decode(y)))
    }

    /// `x \ y`: `q` with `x·q = y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.encode(self.ldiv_e(self.decode(x), self.decode(y)))
    }

    /// `y / x`: `p` with `p·x = y`.
    #[inline]
    pub fn rdiv(&self, y: usize, x: usize) -> usize {
        self.encode(self.rdiv_e(self.decode(y), self.decode(x)))
    }

    /// Closed-form inverse `(a,b,c)⁻¹ = (−a, −b, −c + ba)`.
    pub fn inverse_formula(&self, x: usize) -> usize {
        let e = self.decode(x);
        self.encode(TripleElement {
            a: self.neg1(e.a),
            b: self.neg2(e.b),
            c: self.add3(self.neg3(e.c), self.prod21(e.b, e.a)),
        })
    }

    /// Image of `x` under `S(u, v)`: `(a, b + 2au, c + av + bu)`.
    #[inline]
    pub fn s_map(&self, u: usize, v: usize, x: usize) -> usize {
        self.encode(self.s_map_e(u, v, self.decode(x)))
    }

    #[inline]
    pub fn s_map_e(&self, u: usize, v: usize, e: TripleElement) -> TripleElement {
        let au = self.prod11(e.a, u);
        TripleElement {
            a: e.a,
            b: self.add2(e.b, self.add2(au, au)),
            c: self.add3(self.add3(e.c, self.prod12(e.a, v)), self.prod21(e.b, u)),
        }
    }

    /// Product in `H = X₁ × X₂`: `(u,v)(u',v') = (u+u', v+v'+2uu')`.
    #[inline]
    pub fn h_mul(&self, h: (usize, usize), k: (usize, usize)) -> (usize, usize) {
        let uu = self.prod11(h.0, k.0);
        (
            self.add1(h.0, k.0),
            self.add2(self.add2(h.1, k.1), self.add2(uu, uu)),
        )
    }
}

impl fmt::Display for TripleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

/// Builds the triple loop of `spec` as a [`Loop`](super::Loop).
pub fn build_bruck_loop(spec: &RingSpec) -> Result<super::Loop> {
    Ok(super::Loop::triple("bruck", TripleLoop::new(spec)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ring_preset;

    fn z4() -> TripleLoop {
        TripleLoop::new(&ring_preset("paper-z4").unwrap()).unwrap()
    }

    fn elem(tl: &TripleLoop, a: &[u32], b: &[u32], c: &[u32]) -> usize {
        let s = tl.spec();
        tl.element(
            &s.element(a).unwrap(),
            &s.element(b).unwrap(),
            &s.element(c).unwrap(),
        )
        .unwrap()
    }

    const Z: [u32; 7] = [0; 7];

    fn e(i: usize, k: u32) -> [u32; 7] {
        let mut v = [0; 7];
        v[i - 1] = k;
        v
    }

    #[test]
    fn order_and_neutral() {
        let tl = z4();
        assert_eq!(tl.order(), 16384);
        assert_eq!(elem(&tl, &Z, &Z, &Z), 0);
        for x in [0, 1, 77, 16383] {
            assert_eq!(tl.mul(0, x), x);
            assert_eq!(tl.mul(x, 0), x);
            assert_eq!(tl.encode(tl.decode(x)), x);
        }
    }

    #[test]
    fn product_of_e1_and_e2() {
        let tl = z4();
        let x = elem(&tl, &e(1, 1), &Z, &Z);
        let y = elem(&tl, &e(2, 1), &Z, &Z);
        let mut a = e(1, 1);
        a[1] = 1;
        assert_eq!(tl.mul(x, y), elem(&tl, &a, &e(4, 1), &Z));
        assert_eq!(tl.render(tl.mul(x, y)), "(e1+e2,e4,0)");
    }

    #[test]
    fn inverse_of_e1_e4() {
        let tl = z4();
        let x = elem(&tl, &e(1, 1), &e(4, 1), &Z);
        let inv = tl.inverse_formula(x);
        assert_eq!(inv, elem(&tl, &e(1, 3), &e(4, 3), &Z));
        assert_eq!(tl.mul(x, inv), 0);
        assert_eq!(tl.mul(inv, x), 0);
    }

    #[test]
    fn division_example() {
        let tl = z4();
        let x = elem(&tl, &e(1, 1), &Z, &Z);
        let mut a = e(1, 1);
        a[1] = 1;
        let y = elem(&tl, &a, &e(4, 1), &Z);
        assert_eq!(tl.ldiv(x, y), elem(&tl, &e(2, 1), &Z, &Z));
    }

    #[test]
    fn inverse_formula_matches_divisions_everywhere() {
        let tl = z4();
        for x in 0..tl.order() {
            let inv = tl.inverse_formula(x);
            assert_eq!(tl.mul(x, inv), 0, "x = {}", tl.render(x));
            assert_eq!(tl.mul(inv, x), 0, "x = {}", tl.render(x));
            assert_eq!(tl.ldiv(x, 0), inv);
            assert_eq!(tl.rdiv(0, x), inv);
        }
    }

    #[test]
    fn refuses_ring_failing_axioms() {
        let broken = ring_preset("paper-z4").unwrap().without_product(1, 2);
        assert!(matches!(
            TripleLoop::new(&broken),
            Err(Error::RingAxioms(_))
        ));
    }

    #[test]
    fn paper_z3_order() {
        let tl = TripleLoop::new(&ring_preset("paper-z3").unwrap()).unwrap();
        assert_eq!(tl.order(), 2187);
        assert_eq!(tl.sizes(), (27, 27, 3));
    }
}
