//! Structure-constant rings over `Z_m`.
//!
//! A ring is a free `Z_m`-module with basis `e_1, …, e_d` and a product table
//! on basis pairs, extended bilinearly. One additive subgroup `X₁` is
//! designated by a list of basis vectors; the graded parts `X₂`, `X₃` are the
//! additive closures of two- and three-fold products of `X₁` elements.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::report::{ItemReport, Mode, SuiteReport};

/// Largest graded part the crate will enumerate.
pub const MAX_PART: usize = 1 << 16;

/// The paper-z4 ring preset.
pub const PAPER_Z4: &str = "\
ring
modulus 4
dim 7
x1 1 2 3
prod 1 2 4 1
prod 2 1 4 3
prod 1 3 5 1
prod 3 1 5 3
prod 2 3 6 1
prod 3 2 6 3
prod 1 6 7 1
prod 6 1 7 1
prod 2 5 7 3
prod 5 2 7 3
prod 3 4 7 1
prod 4 3 7 1
";

/// Names accepted by [`ring_preset`].
pub const RING_PRESETS: &[&str] = &["paper-z4", "paper-z3"];

/// Text of a shipped ring preset.
pub fn ring_preset_text(name: &str) -> Option<String> {
    match name {
        "paper-z4" => Some(PAPER_Z4.to_string()),
        // Same table with every `-1` (written 3) rewritten for modulus 3.
        "paper-z3" => {
            let mut out = String::new();
            for line in PAPER_Z4.lines() {
                let fields: Vec<&str> = line.split_whitespace().collect();
                match fields.as_slice() {
                    ["modulus", _] => out.push_str("modulus 3"),
                    ["prod", i, j, k, "3"] => out.push_str(&format!("prod {i} {j} {k} 2")),
                    _ => out.push_str(line),
                }
                out.push('\n');
            }
            Some(out)
        }
        _ => None,
    }
}

pub fn ring_preset(name: &str) -> Result<RingSpec> {
    let text = ring_preset_text(name).ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
    parse_ring_spec(&text)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    coords: Vec<u32>,
}

impl RingElement {
    pub fn new(coords: Vec<u32>) -> Self {
        RingElement { coords }
    }

    pub fn zero(dim: usize) -> Self {
        RingElement {
            coords: vec![0; dim],
        }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for RingElement {
    /// Renders as a sum of basis terms, e.g. `e1+3e4`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "e{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    modulus: u32,
    dim: usize,
    /// 1-based `(i, j)` to merged `(k, coefficient)` terms, sorted by `k`.
    products: BTreeMap<(usize, usize), Vec<(usize, u32)>>,
    x1_basis: Vec<usize>,
    /// Dense structure constants, `constants[(i*d + j)*d + k]`, 0-based.
    constants: Vec<u32>,
}

impl RingSpec {
    /// Builds and validates a spec. Repeated `(i, j, k)` terms accumulate.
    pub fn new(
        modulus: u32,
        dim: usize,
        terms: &[(usize, usize, usize, u32)],
        x1_basis: &[usize],
    ) -> Result<RingSpec> {
        if modulus < 2 {
            return Err(Error::InvalidRing(format!("modulus {modulus} is below 2")));
        }
        if dim == 0 {
            return Err(Error::InvalidRing("dim must be at least 1".into()));
        }
        let in_range = |i: usize| (1..=dim).contains(&i);
        for &b in x1_basis {
            if !in_range(b) {
                return Err(Error::InvalidRing(format!(
                    "x1 basis index {b} outside [1,{dim}]"
                )));
            }
        }
        let mut constants = vec![0u32; dim * dim * dim];
        for &(i, j, k, c) in terms {
            for idx in [i, j, k] {
                if !in_range(idx) {
                    return Err(Error::InvalidRing(format!(
                        "product index {idx} outside [1,{dim}]"
                    )));
                }
            }
            if c >= modulus {
                return Err(Error::InvalidRing(format!(
                    "coefficient {c} outside [0,{modulus})"
                )));
            }
            let slot = &mut constants[((i - 1) * dim + (j - 1)) * dim + (k - 1)];
            *slot = (*slot + c) % modulus;
        }
        let mut products = BTreeMap::new();
        for i in 0..dim {
            for j in 0..dim {
                let row: Vec<(usize, u32)> = (0..dim)
                    .filter_map(|k| {
                        let c = constants[(i * dim + j) * dim + k];
                        (c != 0).then_some((k + 1, c))
                    })
                    .collect();
                if !row.is_empty() {
                    products.insert((i + 1, j + 1), row);
                }
            }
        }
        let mut basis = x1_basis.to_vec();
        basis.sort_unstable();
        basis.dedup();
        Ok(RingSpec {
            modulus,
            dim,
            products,
            x1_basis: basis,
            constants,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x1_basis(&self) -> &[usize] {
        &self.x1_basis
    }

    /// Merged terms of `e_i · e_j` (1-based); empty for a zero product.
    pub fn products(&self, i: usize, j: usize) -> &[(usize, u32)] {
        self.products.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All nonzero basis products as `(i, j, k, c)` terms.
    pub fn terms(&self) -> Vec<(usize, usize, usize, u32)> {
        self.products
            .iter()
            .flat_map(|(&(i, j), row)| row.iter().map(move |&(k, c)| (i, j, k, c)))
            .collect()
    }

    /// A copy with the basis product `e_i · e_j` set to zero.
    pub fn without_product(&self, i: usize, j: usize) -> RingSpec {
        let terms: Vec<_> = self
            .terms()
            .into_iter()
            .filter(|&(a, b, _, _)| (a, b) != (i, j))
            .collect();
        RingSpec::new(self.modulus, self.dim, &terms, &self.x1_basis).expect("valid subset")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ring\nmodulus {}\ndim {}\n", self.modulus, self.dim);
        if !self.x1_basis.is_empty() {
            out.push_str("x1");
            for b in &self.x1_basis {
                out.push_str(&format!(" {b}"));
            }
            out.push('\n');
        }
        for (i, j, k, c) in self.terms() {
            out.push_str(&format!("prod {i} {j} {k} {c}\n"));
        }
        out
    }

    pub fn zero(&self) -> RingElement {
        RingElement::zero(self.dim)
    }

    /// The basis vector `e_i`, 1-based.
    pub fn basis(&self, i: usize) -> RingElement {
        let mut e = self.zero();
        e.coords[i - 1] = 1;
        e
    }

    pub fn element(&self, coords: &[u32]) -> Result<RingElement> {
        if coords.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: coords.len(),
            });
        }
        Ok(RingElement::new(
            coords.iter().map(|c| c % self.modulus).collect(),
        ))
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        RingElement::new(
            x.coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| (a + b) % self.modulus)
                .collect(),
        )
    }

    pub fn neg(&self, x: &RingElement) -> RingElement {
        RingElement::new(
            x.coords
                .iter()
                .map(|&a| (self.modulus - a) % self.modulus)
                .collect(),
        )
    }

    pub fn sub(&self, x: &RingElement, y: &RingElement) -> RingElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, k: u32, x: &RingElement) -> RingElement {
        let k = k % self.modulus;
        RingElement::new(x.coords.iter().map(|&a| (a * k) % self.modulus).collect())
    }

    /// Bilinear product. Panics on a dimension mismatch; see [`ring_mul`].
    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let d = self.dim;
        let m = self.modulus as u64;
        let mut acc = vec![0u64; d];
        for (i, &xi) in x.coords.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coords.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let w = (xi as u64 * yj as u64) % m;
                let row = &self.constants[(i * d + j) * d..(i * d + j + 1) * d];
                for (k, &c) in row.iter().enumerate() {
                    if c != 0 {
                        acc[k] = (acc[k] + w * c as u64) % m;
                    }
                }
            }
        }
        RingElement::new(acc.into_iter().map(|v| v as u32).collect())
    }
}

/// Checked bilinear product of two elements of `spec`.
pub fn ring_mul(spec: &RingSpec, x: &RingElement, y: &RingElement) -> Result<RingElement> {
    for e in [x, y] {
        if e.dim() != spec.dim() {
            return Err(Error::Dimension {
                expected: spec.dim(),
                got: e.dim(),
            });
        }
    }
    Ok(spec.mul(x, y))
}

/// Parses the line-oriented ring-spec format.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let mut saw_header = false;
    let mut modulus = None;
    let mut dim = None;
    let mut x1: Option<Vec<usize>> = None;
    let mut terms = Vec::new();
    let mut term_lines = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |msg: String| Error::Parse { line: line_no, msg };
        let mut fields = line.split_whitespace();
        let keyword = fields.next().expect("non-empty line");
        let nums: Vec<u64> = fields
            .map(|f| {
                f.parse::<u64>()
                    .map_err(|_| parse_err(format!("`{f}` is not a non-negative integer")))
            })
            .collect::<Result<_>>()?;
        if !saw_header {
            if keyword != "ring" || !nums.is_empty() {
                return Err(parse_err("expected `ring` header".into()));
            }
            saw_header = true;
            continue;
        }
        match keyword {
            "modulus" | "dim" => {
                let [v] = nums.as_slice() else {
                    return Err(parse_err(format!("`{keyword}` takes one integer")));
                };
                let slot = if keyword == "modulus" {
                    &mut modulus
                } else {
                    &mut dim
                };
                if slot.replace(*v).is_some() {
                    return Err(parse_err(format!("duplicate `{keyword}` line")));
                }
            }
            "x1" => {
                if x1.is_some() {
                    return Err(parse_err("duplicate `x1` line".into()));
                }
                x1 = Some(nums.iter().map(|&v| v as usize).collect());
            }
            "prod" => {
                let [i, j, k, c] = nums.as_slice() else {
                    return Err(parse_err("`prod` takes four integers: i j k c".into()));
                };
                terms.push((*i as usize, *j as usize, *k as usize, *c as u32));
                term_lines.push(line_no);
            }
            "ring" => return Err(parse_err("duplicate `ring` header".into())),
            other => return Err(parse_err(format!("unknown keyword `{other}`"))),
        }
    }
    if !saw_header {
        return Err(Error::Parse {
            line: 0,
            msg: "empty document".into(),
        });
    }
    let modulus = modulus.ok_or_else(|| Error::InvalidRing("missing `modulus` line".into()))?;
    let dim = dim.ok_or_else(|| Error::InvalidRing("missing `dim` line".into()))?;
    if modulus > u16::MAX as u64 {
        return Err(Error::InvalidRing(format!("modulus {modulus} too large")));
    }
    if dim > 64 {
        return Err(Error::InvalidRing(format!("dim {dim} too large")));
    }
    // Report the offending line for index and coefficient errors.
    for (&(i, j, k, c), &line) in terms.iter().zip(&term_lines) {
        if [i, j, k].iter().any(|&v| v == 0 || v > dim as usize) {
            return Err(Error::InvalidRing(format!(
                "line {line}: product index outside [1,{dim}]"
            )));
        }
        if c as u64 >= modulus {
            return Err(Error::InvalidRing(format!(
                "line {line}: coefficient {c} outside [0,{modulus})"
            )));
        }
    }
    RingSpec::new(
        modulus as u32,
        dim as usize,
        &terms,
        &x1.unwrap_or_default(),
    )
}

/// Verifies basis associativity, the alternating conditions on `X₁`, and
/// `m·X = 0`.
pub fn check_ring_axioms(spec: &RingSpec) -> SuiteReport {
    let mut report = SuiteReport::new("ring-axioms");
    let d = spec.dim();

    let mut assoc = ItemReport::new("associativity", Mode::Exhaustive);
    let mut first_note = None;
    for i in 1..=d {
        for j in 1..=d {
            for k in 1..=d {
                let (ei, ej, ek) = (spec.basis(i), spec.basis(j), spec.basis(k));
                let left = spec.mul(&ei, &spec.mul(&ej, &ek));
                let right = spec.mul(&spec.mul(&ei, &ej), &ek);
                let ok = left == right;
                if !ok && first_note.is_none() {
                    first_note = Some(format!(
                        "e{i}(e{j}e{k}) = {left} but (e{i}e{j})e{k} = {right}"
                    ));
                }
                assoc.record(ok, || vec![i, j, k]);
            }
        }
    }
    if let Some(note) = first_note {
        assoc.note = Some(note);
    }
    report.push(assoc);

    match additive_closure(
        spec,
        spec.x1_basis().iter().map(|&b| spec.basis(b)).collect(),
    ) {
        Ok(x1) => {
            let mut square = ItemReport::new("x1.square_zero", Mode::Exhaustive);
            let mut anti = ItemReport::new("x1.anticommute", Mode::Exhaustive);
            let mut square_note = None;
            let mut anti_note = None;
            for (p, u) in x1.elements.iter().enumerate() {
                let uu = spec.mul(u, u);
                if !uu.is_zero() && square_note.is_none() {
                    square_note = Some(format!("({u})({u}) = {uu}"));
                }
                square.record(uu.is_zero(), || vec![p]);
                for (q, v) in x1.elements.iter().enumerate() {
                    let s = spec.add(&spec.mul(u, v), &spec.mul(v, u));
                    if !s.is_zero() && anti_note.is_none() {
                        anti_note = Some(format!("({u})({v}) + ({v})({u}) = {s}"));
                    }
                    anti.record(s.is_zero(), || vec![p, q]);
                }
            }
            square.note = square_note;
            anti.note = anti_note;
            report.push(square);
            report.push(anti);
        }
        Err(e) => {
            let mut item = ItemReport::new("x1.enumeration", Mode::Exhaustive);
            item.record(false, Vec::new);
            item.note = Some(e.to_string());
            report.push(item);
        }
    }

    // Coordinates live in Z_m, so m·x = 0 for every x by construction.
    let mut modulus = ItemReport::new("modulus.annihilates", Mode::Exhaustive);
    for i in 1..=d {
        let e = spec.basis(i);
        let mut acc = spec.zero();
        for _ in 0..spec.modulus() {
            acc = spec.add(&acc, &e);
        }
        modulus.record(acc.is_zero(), || vec![i]);
    }
    report.push(modulus);
    report
}

/// A sorted enumeration of an additive subgroup.
#[derive(Clone, Debug)]
pub struct Part {
    elements: Vec<RingElement>,
    index: HashMap<RingElement, usize>,
}

impl Part {
    fn from_set(set: HashSet<RingElement>) -> Part {
        let mut elements: Vec<RingElement> = set.into_iter().collect();
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Part { elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &RingElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[RingElement] {
        &self.elements
    }

    pub fn index_of(&self, e: &RingElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &RingElement) -> bool {
        self.index.contains_key(e)
    }
}

/// Breadth-first additive closure of `generators`, sorted ascending.
pub fn additive_closure(spec: &RingSpec, generators: Vec<RingElement>) -> Result<Part> {
    let mut gens: Vec<RingElement> = generators.into_iter().filter(|g| !g.is_zero()).collect();
    gens.sort();
    gens.dedup();
    let zero = spec.zero();
    let mut seen = HashSet::new();
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let s = spec.add(&x, g);
            if seen.insert(s.clone()) {
                if seen.len() > MAX_PART {
                    return Err(Error::Refused(format!(
                        "additive closure exceeds {MAX_PART} elements"
                    )));
                }
                queue.push_back(s);
            }
        }
    }
    Ok(Part::from_set(seen))
}

#[derive(Clone, Debug)]
pub struct GradedParts {
    pub x1: Part,
    pub x2: Part,
    pub x3: Part,
    /// Nonzero elements shared by `X₁, X₂` and by `X₂, X₃`.
    pub overlap_x1_x2: usize,
    pub overlap_x2_x3: usize,
}

/// Enumerates `X₁`, `X₂ = ⟨X₁X₁⟩` and `X₃ = ⟨X₁X₁X₁⟩`.
pub fn graded_parts(spec: &RingSpec) -> Result<GradedParts> {
    let x1 = additive_closure(
        spec,
        spec.x1_basis().iter().map(|&b| spec.basis(b)).collect(),
    )?;
    let mut pairs = HashSet::new();
    for u in x1.elements() {
        for v in x1.elements() {
            pairs.insert(spec.mul(u, v));
        }
    }
    let mut triples = HashSet::new();
    for p in &pairs {
        for w in x1.elements() {
            triples.insert(spec.mul(p, w));
        }
    }
    let x2 = additive_closure(spec, pairs.into_iter().collect())?;
    let x3 = additive_closure(spec, triples.into_iter().collect())?;
    let shared = |a: &Part, b: &Part| {
        a.elements()
            .iter()
            .filter(|e| !e.is_zero() && b.contains(e))
            .count()
    };
    Ok(GradedParts {
        overlap_x1_x2: shared(&x1, &x2),
        overlap_x2_x3: shared(&x2, &x3),
        x1,
        x2,
        x3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> RingSpec {
        ring_preset("paper-z4").unwrap()
    }

    #[test]
    fn preset_products() {
        let r = z4();
        assert_eq!(r.modulus(), 4);
        assert_eq!(r.dim(), 7);
        assert_eq!(r.x1_basis(), &[1, 2, 3]);
        assert_eq!(r.products(1, 2), &[(4, 1)]);
        assert_eq!(r.products(2, 1), &[(4, 3)]);
        assert_eq!(r.products(7, 7), &[]);
        let z3 = ring_preset("paper-z3").unwrap();
        assert_eq!(z3.modulus(), 3);
        assert_eq!(z3.products(2, 1), &[(4, 2)]);
        assert_eq!(z3.products(6, 1), &[(7, 1)]);
    }

    #[test]
    fn preset_text_round_trips() {
        let r = z4();
        assert_eq!(parse_ring_spec(&r.to_text()).unwrap(), r);
    }

    #[test]
    fn omitted_products_give_zero_ring() {
        let r = parse_ring_spec("ring\nmodulus 5\ndim 3\nx1 1\n").unwrap();
        let x = r.element(&[1, 2, 3]).unwrap();
        assert!(r.mul(&x, &x).is_zero());
        assert!(check_ring_axioms(&r).passed());
    }

    #[test]
    fn repeated_terms_accumulate() {
        let r = parse_ring_spec("ring\nmodulus 4\ndim 2\nprod 1 1 2 3\nprod 1 1 2 3\n").unwrap();
        assert_eq!(r.products(1, 1), &[(2, 2)]);
        let r = parse_ring_spec("ring\nmodulus 4\ndim 2\nprod 1 1 2 1\nprod 1 1 2 3\n").unwrap();
        assert_eq!(r.products(1, 1), &[]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_ring_spec("ring\nmodulus 4\n# c\nbogus 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_ring_spec("ring\nmodulus 4\ndim 3\nprod 1 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_ring_spec("modulus 4\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_ring_spec("ring\nmodulus 4\ndim 3\nprod 1 2 9 1\n"),
            Err(Error::InvalidRing(_))
        ));
        assert!(matches!(
            parse_ring_spec("ring\nmodulus 4\ndim 3\nprod 1 2 3 4\n"),
            Err(Error::InvalidRing(_))
        ));
        assert!(matches!(
            parse_ring_spec("ring\nmodulus 4\ndim 3\nx1 0\n"),
            Err(Error::InvalidRing(_))
        ));
    }

    #[test]
    fn ring_mul_examples() {
        let r = z4();
        let (e1, e2, e3) = (r.basis(1), r.basis(2), r.basis(3));
        assert_eq!(ring_mul(&r, &e1, &e2).unwrap(), r.basis(4));
        assert!(ring_mul(&r, &r.zero(), &e3).unwrap().is_zero());
        let lhs = ring_mul(&r, &r.add(&e1, &e2), &e3).unwrap();
        assert_eq!(lhs, r.add(&r.basis(5), &r.basis(6)));
        let short = RingElement::new(vec![1, 0]);
        assert!(matches!(
            ring_mul(&r, &short, &e1),
            Err(Error::Dimension {
                expected: 7,
                got: 2
            })
        ));
    }

    #[test]
    fn axioms_hold_for_presets() {
        let rep = check_ring_axioms(&z4());
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.item("associativity").unwrap().checked, 343);
        assert_eq!(rep.item("x1.anticommute").unwrap().checked, 64 * 64);
        assert!(check_ring_axioms(&ring_preset("paper-z3").unwrap()).passed());
    }

    #[test]
    fn deleted_product_breaks_associativity_at_e123() {
        let broken = z4().without_product(4, 3);
        let rep = check_ring_axioms(&broken);
        let assoc = rep.item("associativity").unwrap();
        assert!(!assoc.passed());
        assert_eq!(assoc.witnesses[0], vec![1, 2, 3]);
    }

    #[test]
    fn graded_part_sizes() {
        let g = graded_parts(&z4()).unwrap();
        assert_eq!((g.x1.len(), g.x2.len(), g.x3.len()), (64, 64, 4));
        assert!(g.x1.get(0).is_zero() && g.x2.get(0).is_zero() && g.x3.get(0).is_zero());
        assert_eq!(g.overlap_x1_x2, 0);
        let g = graded_parts(&ring_preset("paper-z3").unwrap()).unwrap();
        assert_eq!((g.x1.len(), g.x2.len(), g.x3.len()), (27, 27, 3));
        let zero = parse_ring_spec("ring\nmodulus 4\ndim 2\nx1 1\n").unwrap();
        let g = graded_parts(&zero).unwrap();
        assert_eq!((g.x1.len(), g.x2.len(), g.x3.len()), (4, 1, 1));
    }

    #[test]
    fn graded_parts_span_the_right_coordinates() {
        let r = z4();
        let g = graded_parts(&r).unwrap();
        for e in g.x2.elements() {
            assert!(e.coords()[..3].iter().all(|&c| c == 0) && e.coords()[6] == 0);
        }
        assert!(g.x3.contains(&r.basis(7)));
        let nonzero: Vec<_> = g.x3.elements().iter().filter(|e| !e.is_zero()).collect();
        assert!(nonzero
            .iter()
            .all(|e| e.coords()[..6].iter().all(|&c| c == 0)));
    }

    #[test]
    fn graded_parts_are_subgroups_and_products_nest() {
        let r = z4();
        let g = graded_parts(&r).unwrap();
        for part in [&g.x1, &g.x2, &g.x3] {
            for a in part.elements() {
                assert!(part.contains(&r.neg(a)));
                for b in part.elements() {
                    assert!(part.contains(&r.add(a, b)));
                }
            }
        }
        for a in g.x1.elements() {
            for b in g.x2.elements() {
                assert!(g.x3.contains(&r.mul(a, b)));
                assert!(g.x3.contains(&r.mul(b, a)));
            }
        }
        for c in g.x3.elements() {
            for i in 1..=7 {
                assert!(r.mul(c, &r.basis(i)).is_zero());
                assert!(r.mul(&r.basis(i), c).is_zero());
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic_with_e1_most_significant() {
        let g = graded_parts(&z4()).unwrap();
        let els = g.x1.elements();
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        // After zero the smallest nonzero X1 element is e3.
        assert_eq!(els[1].to_string(), "e3");
        assert_eq!(els[63].to_string(), "3e1+3e2+3e3");
    }

    #[test]
    fn display_formats_terms() {
        let r = z4();
        let x = r.element(&[1, 0, 0, 3, 0, 0, 2]).unwrap();
        assert_eq!(x.to_string(), "e1+3e4+2e7");
        assert_eq!(r.zero().to_string(), "0");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coords() -> impl Strategy<Value = Vec<u32>> {
            proptest::collection::vec(0u32..4, 7)
        }

        proptest! {
            #[test]
            fn mul_is_bilinear(x in coords(), x2 in coords(), y in coords()) {
                let r = z4();
                let (x, x2, y) = (r.element(&x).unwrap(), r.element(&x2).unwrap(), r.element(&y).unwrap());
                prop_assert_eq!(r.mul(&r.add(&x, &x2), &y), r.add(&r.mul(&x, &y), &r.mul(&x2, &y)));
                prop_assert_eq!(r.mul(&y, &r.add(&x, &x2)), r.add(&r.mul(&y, &x), &r.mul(&y, &x2)));
            }

            #[test]
            fn mul_is_associative(x in coords(), y in coords(), z in coords()) {
                let r = z4();
                let (x, y, z) = (r.element(&x).unwrap(), r.element(&y).unwrap(), r.element(&z).unwrap());
                prop_assert_eq!(r.mul(&x, &r.mul(&y, &z)), r.mul(&r.mul(&x, &y), &z));
            }
        }
    }
}
