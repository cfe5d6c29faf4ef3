//! Free graded-commutative algebras given by generators, differentials and
//! (optionally) homogeneous relations.
//!
//! Generators are ordered by degree, then name, so bases do not depend on
//! declaration order. Monomials are exponent vectors in that order.
//! Odd generators appear with exponent at most one, and reordering two odd
//! generators costs a sign. Relations are imposed by plain degreewise linear
//! reduction: in each degree the relation ideal is the span of
//! `relation * monomial`, and the surviving basis is the set of monomials at
//! the non-pivot columns of that span.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, GradedAlgebra};
use crate::error::Error;
use crate::linalg::{fmt_rational, quotient_basis, Projector, Rational, RationalMatrix, SparseVec};

/// `coeff * f_1^{e_1} f_2^{e_2} ...`, factors multiplied left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<(String, u32)>,
}

/// A rational-coefficient polynomial in named generators, kept exactly as
/// written (terms are not merged).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    pub terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            terms: vec![Term {
                coeff: c,
                factors: Vec::new(),
            }],
        }
    }

    pub fn generator(name: &str) -> Self {
        Self::monomial(Rational::one(), &[(name, 1)])
    }

    pub fn monomial(coeff: Rational, factors: &[(&str, u32)]) -> Self {
        Self {
            terms: vec![Term {
                coeff,
                factors: factors.iter().map(|&(n, e)| (n.to_string(), e)).collect(),
            }],
        }
    }

    pub fn plus(mut self, other: Polynomial) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn is_zero_syntactically(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff < Rational::zero();
            let abs = if neg { -t.coeff.clone() } else { t.coeff.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            if !abs.is_one() || t.factors.is_empty() {
                parts.push(fmt_rational(&abs));
            }
            for (name, e) in &t.factors {
                parts.push(if *e == 1 { name.clone() } else { format!("{name}^{e}") });
            }
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Generators, their differentials and relations. Input to [`build_free`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorPresentation {
    pub name: String,
    pub generators: Vec<Generator>,
    /// `d g = p`; generators without an entry are cocycles.
    pub differentials: Vec<(String, Polynomial)>,
    pub relations: Vec<Polynomial>,
}

impl GeneratorPresentation {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn generator(mut self, name: &str, degree: usize) -> Self {
        self.generators.push(Generator {
            name: name.to_string(),
            degree,
        });
        self
    }

    pub fn differential(mut self, name: &str, image: Polynomial) -> Self {
        self.differentials.push((name.to_string(), image));
        self
    }

    pub fn relation(mut self, rel: Polynomial) -> Self {
        self.relations.push(rel);
        self
    }

    fn index_of(&self, name: &str) -> Result<usize, Error> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator { name: name.to_string() })
    }

    /// Degrees of the terms of `p`, as written.
    pub fn term_degrees(&self, p: &Polynomial) -> Result<Vec<usize>, Error> {
        p.terms
            .iter()
            .map(|t| {
                t.factors.iter().try_fold(0usize, |acc, (n, e)| {
                    Ok(acc + self.generators[self.index_of(n)?].degree * *e as usize)
                })
            })
            .collect()
    }
}

type Monomial = Vec<u32>;
type FreePoly = BTreeMap<Monomial, Rational>;

/// Arithmetic in the free graded-commutative algebra on a list of generator
/// degrees, with no truncation.
#[derive(Clone, Debug)]
struct FreeEngine {
    degrees: Vec<usize>,
    dgen: Vec<FreePoly>,
}

impl FreeEngine {
    fn one(&self) -> Monomial {
        vec![0; self.degrees.len()]
    }

    /// `a * b = sign * normal form`, or `None` when an odd generator would
    /// be squared.
    fn mul_monomials(&self, a: &[u32], b: &[u32]) -> Option<(bool, Monomial)> {
        let mut out = Vec::with_capacity(a.len());
        let mut swaps = 0usize;
        let mut odd_in_a_after = 0usize;
        // walk from the last generator to the first: an odd factor of b at
        // index j passes every odd factor of a with index > j
        for idx in (0..a.len()).rev() {
            let odd = self.degrees[idx] % 2 == 1;
            if odd && a[idx] > 0 && b[idx] > 0 {
                return None;
            }
            if odd && b[idx] > 0 {
                swaps += odd_in_a_after;
            }
            if odd && a[idx] > 0 {
                odd_in_a_after += 1;
            }
        }
        for idx in 0..a.len() {
            out.push(a[idx] + b[idx]);
        }
        Some((swaps % 2 == 1, out))
    }

    fn mul(&self, a: &FreePoly, b: &FreePoly) -> FreePoly {
        let mut out = FreePoly::new();
        for (ma, xa) in a {
            for (mb, xb) in b {
                if let Some((neg, m)) = self.mul_monomials(ma, mb) {
                    let c = if neg { -(xa * xb) } else { xa * xb };
                    add_term(&mut out, m, c);
                }
            }
        }
        out
    }

    fn d_monomial(&self, m: &[u32], memo: &mut HashMap<Monomial, FreePoly>) -> FreePoly {
        if let Some(p) = memo.get(m) {
            return p.clone();
        }
        let Some(first) = m.iter().position(|&e| e > 0) else {
            return FreePoly::new();
        };
        let mut g = self.one();
        g[first] = 1;
        let mut rest = m.to_vec();
        rest[first] -= 1;
        let rest_poly: FreePoly = [(rest.clone(), Rational::one())].into_iter().collect();
        let g_poly: FreePoly = [(g, Rational::one())].into_iter().collect();
        let mut out = self.mul(&self.dgen[first], &rest_poly);
        let d_rest = self.d_monomial(&rest, memo);
        let tail = self.mul(&g_poly, &d_rest);
        let s = if self.degrees[first] % 2 == 1 {
            -Rational::one()
        } else {
            Rational::one()
        };
        for (mon, c) in tail {
            add_term(&mut out, mon, c * &s);
        }
        memo.insert(m.to_vec(), out.clone());
        out
    }

    fn d(&self, p: &FreePoly, memo: &mut HashMap<Monomial, FreePoly>) -> FreePoly {
        let mut out = FreePoly::new();
        for (m, c) in p {
            for (mon, x) in self.d_monomial(m, memo) {
                add_term(&mut out, mon, x * c);
            }
        }
        out
    }
}

fn add_term(p: &mut FreePoly, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(m.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&m);
    }
}

/// Generator bookkeeping kept on algebras built by [`build_free`], so that
/// polynomials can be evaluated and morphisms extended from generators.
#[derive(Clone, Debug)]
pub(crate) struct FreeData {
    generators: Vec<Generator>,
    engine: FreeEngine,
    free_index: Vec<HashMap<Monomial, usize>>,
    projectors: Vec<Projector>,
    basis: Vec<Vec<Monomial>>,
    relation_free: bool,
}

impl FreeData {
    pub(crate) fn empty(top: usize) -> Self {
        let engine = FreeEngine {
            degrees: Vec::new(),
            dgen: Vec::new(),
        };
        let mut free_index = vec![HashMap::new(); top + 1];
        free_index[0].insert(Vec::new(), 0);
        let projectors = (0..=top).map(|n| quotient_basis(&[], usize::from(n == 0)).1).collect();
        let mut basis = vec![Vec::new(); top + 1];
        basis[0].push(Vec::new());
        Self {
            generators: Vec::new(),
            engine,
            free_index,
            projectors,
            basis,
            relation_free: true,
        }
    }

    fn reduce(&self, p: &FreePoly, degree: usize) -> SparseVec {
        let free: SparseVec = p.iter().map(|(m, c)| (self.free_index[degree][m], c.clone())).collect();
        self.projectors[degree]
            .project(&free)
            .expect("quotient projector is total")
    }
}

fn enumerate_monomials(degrees: &[usize], top: usize) -> Vec<Vec<Monomial>> {
    fn go(degrees: &[usize], top: usize, idx: usize, cur: &mut Monomial, deg: usize, out: &mut Vec<Vec<Monomial>>) {
        if idx == degrees.len() {
            out[deg].push(cur.clone());
            return;
        }
        let d = degrees[idx];
        let max_e = if d % 2 == 1 { 1 } else { u32::MAX };
        let mut e = 0u32;
        loop {
            let nd = deg + d * e as usize;
            if nd > top {
                break;
            }
            cur[idx] = e;
            go(degrees, top, idx + 1, cur, nd, out);
            if e == max_e {
                break;
            }
            e += 1;
        }
        cur[idx] = 0;
    }
    let mut out = vec![Vec::new(); top + 1];
    let mut cur = vec![0; degrees.len()];
    go(degrees, top, 0, &mut cur, 0, &mut out);
    for v in &mut out {
        // higher powers of earlier generators first
        v.sort_by(|a, b| b.cmp(a));
    }
    out
}

fn monomial_label(gens: &[Generator], m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(gens)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, g)| {
            if e == 1 {
                g.name.clone()
            } else {
                format!("{}^{}", g.name, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

fn eval_polynomial(engine: &FreeEngine, pres: &GeneratorPresentation, p: &Polynomial) -> Result<FreePoly, Error> {
    let mut out = FreePoly::new();
    for t in &p.terms {
        let mut acc: FreePoly = [(engine.one(), t.coeff.clone())].into_iter().collect();
        for (name, e) in &t.factors {
            let idx = pres.index_of(name)?;
            let mut g = engine.one();
            g[idx] = 1;
            let g_poly: FreePoly = [(g, Rational::one())].into_iter().collect();
            for _ in 0..*e {
                acc = engine.mul(&acc, &g_poly);
            }
        }
        for (m, c) in acc {
            add_term(&mut out, m, c);
        }
    }
    Ok(out)
}

fn check_homogeneous(
    pres: &GeneratorPresentation,
    p: &Polynomial,
    expected: Option<usize>,
    context: impl Fn() -> String,
) -> Result<Option<usize>, Error> {
    let degs = pres.term_degrees(p)?;
    let target = expected.or_else(|| degs.first().copied());
    if let Some(t) = target {
        if let Some(&bad) = degs.iter().find(|&&d| d != t) {
            return Err(Error::Inhomogeneous {
                context: context(),
                expected: t,
                found: bad,
            });
        }
    }
    Ok(target)
}

/// Builds the truncated algebra presented by `pres` in degrees `0..=top`.
pub fn build_free(pres: &GeneratorPresentation, top: usize) -> Result<GradedAlgebra, Error> {
    for (k, g) in pres.generators.iter().enumerate() {
        if g.degree == 0 {
            return Err(Error::GeneratorDegree {
                name: g.name.clone(),
                degree: 0,
            });
        }
        if pres.generators[..k].iter().any(|h| h.name == g.name) {
            return Err(Error::DuplicateGenerator { name: g.name.clone() });
        }
    }
    // the basis must not depend on declaration order
    let mut sorted = pres.clone();
    sorted
        .generators
        .sort_by(|a, b| (a.degree, &a.name).cmp(&(b.degree, &b.name)));
    let pres = &sorted;
    let degrees: Vec<usize> = pres.generators.iter().map(|g| g.degree).collect();
    let mut engine = FreeEngine {
        degrees: degrees.clone(),
        dgen: vec![FreePoly::new(); degrees.len()],
    };
    for (name, image) in &pres.differentials {
        let idx = pres.index_of(name)?;
        let expected = degrees[idx] + 1;
        check_homogeneous(pres, image, Some(expected), || format!("d {name}"))?;
        engine.dgen[idx] = eval_polynomial(&engine, pres, image)?;
    }
    let mut relations = Vec::new();
    for (k, rel) in pres.relations.iter().enumerate() {
        let deg = check_homogeneous(pres, rel, None, || format!("relation {k}"))
            .map_err(|_| Error::InhomogeneousRelation { index: k })?;
        let value = eval_polynomial(&engine, pres, rel)?;
        if let Some(deg) = deg {
            if !value.is_empty() {
                relations.push((deg, value));
            }
        }
    }

    let free_basis = enumerate_monomials(&degrees, top);
    let free_index: Vec<HashMap<Monomial, usize>> = free_basis
        .iter()
        .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
        .collect();

    let mut projectors = Vec::with_capacity(top + 1);
    let mut basis = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut ideal = Vec::new();
        for (deg, rel) in &relations {
            if *deg > n {
                continue;
            }
            for m in &free_basis[n - deg] {
                let single: FreePoly = [(m.clone(), Rational::one())].into_iter().collect();
                let prod = engine.mul(rel, &single);
                ideal.push(
                    prod.iter()
                        .map(|(mon, c)| (free_index[n][mon], c.clone()))
                        .collect::<SparseVec>(),
                );
            }
        }
        let (reps, proj) = quotient_basis(&ideal, free_basis[n].len());
        basis.push(
            reps.iter()
                .map(|r| free_basis[n][r.leading().expect("unit vector").0].clone())
                .collect::<Vec<_>>(),
        );
        projectors.push(proj);
    }
    let relation_free = basis.iter().zip(&free_basis).all(|(b, f)| b.len() == f.len());
    let data = FreeData {
        generators: pres.generators.clone(),
        engine,
        free_index,
        projectors,
        basis,
        relation_free,
    };
    let engine = &data.engine;
    let mut memo = HashMap::new();

    // differential must respect the ideal and square to zero on generators
    for (k, (deg, rel)) in relations.iter().enumerate() {
        if *deg < top && !data.reduce(&engine.d(rel, &mut memo), deg + 1).is_zero() {
            return Err(Error::DifferentialNotCompatible { index: k });
        }
    }
    for (idx, g) in pres.generators.iter().enumerate() {
        let dd = engine.d(&engine.dgen[idx], &mut memo);
        // above the window only the relation-free case is decidable
        let vanishes = if g.degree + 2 <= top {
            data.reduce(&dd, g.degree + 2).is_zero()
        } else {
            dd.is_empty() || !relations.is_empty()
        };
        if !vanishes {
            return Err(Error::DSquareNonzero {
                generator: g.name.clone(),
            });
        }
    }

    let labels: Vec<Vec<String>> = data
        .basis
        .iter()
        .map(|ms| ms.iter().map(|m| monomial_label(&data.generators, m)).collect())
        .collect();
    let mut mult = vec![vec![Vec::new(); top + 1]; top + 1];
    for p in 0..=top {
        for q in 0..=top - p {
            let mut block = Vec::with_capacity(data.basis[p].len() * data.basis[q].len());
            for a in &data.basis[p] {
                for b in &data.basis[q] {
                    let prod = match engine.mul_monomials(a, b) {
                        Some((neg, m)) => {
                            let c = if neg { -Rational::one() } else { Rational::one() };
                            [(m, c)].into_iter().collect()
                        }
                        None => FreePoly::new(),
                    };
                    block.push(data.reduce(&prod, p + q));
                }
            }
            mult[p][q] = block;
        }
    }
    let diff = (0..top)
        .map(|n| {
            let cols: Vec<SparseVec> = data.basis[n]
                .iter()
                .map(|m| data.reduce(&engine.d_monomial(m, &mut memo), n + 1))
                .collect();
            RationalMatrix::from_columns(data.basis[n + 1].len(), &cols)
        })
        .collect();
    let alg = GradedAlgebra::from_tables_unchecked(pres.name.clone(), top, labels, mult, diff, Some(data))?;
    alg.ensure_valid()?;
    Ok(alg)
}

impl GradedAlgebra {
    /// Generator names and degrees, when the algebra came from a
    /// presentation.
    pub fn generators(&self) -> Option<&[Generator]> {
        self.free.as_ref().map(|f| f.generators.as_slice())
    }

    /// Whether the algebra is free graded-commutative on its generators
    /// (no relation cuts down any degree of the window).
    pub fn is_relation_free(&self) -> bool {
        self.free.as_ref().is_some_and(|f| f.relation_free)
    }

    /// Evaluates a homogeneous polynomial in the algebra's generators.
    /// Terms above the truncation degree are rejected.
    pub fn evaluate(&self, p: &Polynomial) -> Result<Element, Error> {
        let data = self.free.as_ref().ok_or_else(|| Error::UnknownGenerator {
            name: format!("<{} has no generators>", self.name()),
        })?;
        let pres = GeneratorPresentation {
            name: self.name().to_string(),
            generators: data.generators.clone(),
            differentials: Vec::new(),
            relations: Vec::new(),
        };
        let degree = check_homogeneous(&pres, p, None, || format!("{p}"))?.unwrap_or(0);
        if degree > self.top() {
            return Err(Error::Truncation {
                context: "polynomial degree exceeds the truncation",
                expected: degree,
                found: self.top(),
            });
        }
        let value = eval_polynomial(&data.engine, &pres, p)?;
        Ok((degree, data.reduce(&value, degree)))
    }

    /// Element of a generator, `None` if its degree is above the window.
    pub fn generator_element(&self, name: &str) -> Result<Option<Element>, Error> {
        let gens = self
            .generators()
            .ok_or_else(|| Error::UnknownGenerator { name: name.to_string() })?;
        let g = gens
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator { name: name.to_string() })?;
        if g.degree > self.top() {
            return Ok(None);
        }
        self.evaluate(&Polynomial::generator(name)).map(Some)
    }
}

/// Matrices of the multiplicative extension of generator images.
pub(crate) fn extend_on_generators(
    source: &Arc<GradedAlgebra>,
    target: &Arc<GradedAlgebra>,
    images: &[(String, Element)],
) -> Result<Vec<RationalMatrix>, Error> {
    let data = source.free.as_ref().ok_or_else(|| Error::UnknownGenerator {
        name: format!("<{} has no generators>", source.name()),
    })?;
    if source.top() != target.top() {
        return Err(Error::Truncation {
            context: "morphism endpoints",
            expected: source.top(),
            found: target.top(),
        });
    }
    let mut gen_images: Vec<Option<Element>> = vec![None; data.generators.len()];
    for (name, img) in images {
        let idx = data
            .generators
            .iter()
            .position(|g| &g.name == name)
            .ok_or_else(|| Error::UnknownGenerator { name: name.clone() })?;
        let deg = data.generators[idx].degree;
        if img.0 != deg && !img.1.is_zero() {
            return Err(Error::Inhomogeneous {
                context: format!("image of {name}"),
                expected: deg,
                found: img.0,
            });
        }
        gen_images[idx] = Some((deg, img.1.clone()));
    }
    let maps = (0..=source.top())
        .map(|n| {
            let cols: Vec<SparseVec> = data.basis[n]
                .iter()
                .map(|m| {
                    let mut acc: Element = target.unit();
                    for (idx, &e) in m.iter().enumerate() {
                        for _ in 0..e {
                            let (d, v) = gen_images[idx]
                                .clone()
                                .unwrap_or((data.generators[idx].degree, SparseVec::new()));
                            let prod = target.multiply(acc.0, &acc.1, d, &v).expect("degree bounded by n");
                            acc = (acc.0 + d, prod);
                        }
                    }
                    acc.1
                })
                .collect();
            RationalMatrix::from_columns(target.dim(n), &cols)
        })
        .collect();
    Ok(maps)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::{check_morphism, AlgebraMorphism};
    use crate::linalg::int;

    pub(crate) fn sphere3() -> GeneratorPresentation {
        GeneratorPresentation::new("S3").generator("x", 3)
    }

    pub(crate) fn poly_t2() -> GeneratorPresentation {
        GeneratorPresentation::new("Qt").generator("t", 2)
    }

    pub(crate) fn minimal_s2() -> GeneratorPresentation {
        GeneratorPresentation::new("MS2")
            .generator("e2", 2)
            .generator("e3", 3)
            .differential("e3", Polynomial::monomial(int(1), &[("e2", 2)]))
    }

    #[test]
    fn exterior_on_one_odd_generator() {
        let a = build_free(&sphere3(), 6).unwrap();
        assert_eq!(a.dims(), vec![1, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn polynomial_on_even_generator() {
        let a = build_free(&poly_t2(), 6).unwrap();
        assert_eq!(a.dims(), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(a.label(6, 0), "t^3");
    }

    #[test]
    fn minimal_model_of_two_sphere() {
        let a = build_free(&minimal_s2(), 6).unwrap();
        assert_eq!(a.dims(), vec![1, 0, 1, 1, 1, 1, 1]);
        assert_eq!(a.label(5, 0), "e2 e3");
        // d(e2 e3) = e2^3
        assert_eq!(a.diff(5).unwrap().apply(&SparseVec::unit(0)), SparseVec::unit(0));
        assert_eq!(a.label(6, 0), "e2^3");
        // d(e3) = e2^2
        assert_eq!(a.diff(3).unwrap().apply(&SparseVec::unit(0)), SparseVec::unit(0));
    }

    #[test]
    fn odd_squares_never_appear() {
        let pres = GeneratorPresentation::new("L")
            .generator("x", 3)
            .generator("y", 5)
            .generator("t", 2);
        let a = build_free(&pres, 16).unwrap();
        for n in 0..=16 {
            for l in a.labels(n) {
                assert!(!l.contains("x^") && !l.contains("y^"), "{l}");
            }
        }
    }

    #[test]
    fn odd_generators_anticommute() {
        let pres = GeneratorPresentation::new("L").generator("x", 3).generator("y", 5);
        let a = build_free(&pres, 8).unwrap();
        let (_, xy) = a
            .evaluate(&Polynomial::monomial(int(1), &[("x", 1), ("y", 1)]))
            .unwrap();
        let (_, yx) = a
            .evaluate(&Polynomial::monomial(int(1), &[("y", 1), ("x", 1)]))
            .unwrap();
        assert_eq!(xy, yx.scaled(&-Rational::one()));
    }

    #[test]
    fn relation_truncates_polynomial_ring() {
        let pres = GeneratorPresentation::new("HS2")
            .generator("x", 2)
            .relation(Polynomial::monomial(int(1), &[("x", 2)]));
        let a = build_free(&pres, 6).unwrap();
        assert_eq!(a.dims(), vec![1, 0, 1, 0, 0, 0, 0]);
        assert!(a.basis_product(2, 0, 2, 0).unwrap().is_zero());
    }

    #[test]
    fn binomial_relation() {
        // Q[a2, b2] / (a^2 - b^2): degree 4 has a^2, ab, b^2 modulo one relation
        let pres = GeneratorPresentation::new("R")
            .generator("a", 2)
            .generator("b", 2)
            .relation(Polynomial::monomial(int(1), &[("a", 2)]).plus(Polynomial::monomial(int(-1), &[("b", 2)])));
        let a = build_free(&pres, 6).unwrap();
        assert_eq!(a.dims(), vec![1, 0, 2, 0, 2, 0, 2]);
        let (_, a2) = a.evaluate(&Polynomial::monomial(int(1), &[("a", 2)])).unwrap();
        let (_, b2) = a.evaluate(&Polynomial::monomial(int(1), &[("b", 2)])).unwrap();
        assert_eq!(a2, b2);
    }

    #[test]
    fn d_squared_nonzero_is_rejected() {
        let pres = GeneratorPresentation::new("bad")
            .generator("a", 2)
            .generator("b", 3)
            .generator("c", 4)
            .differential("b", Polynomial::monomial(int(1), &[("c", 1)]))
            .differential("a", Polynomial::generator("b"));
        assert!(matches!(build_free(&pres, 6), Err(Error::DSquareNonzero { .. })));
    }

    #[test]
    fn inhomogeneous_differential_is_rejected() {
        let pres = GeneratorPresentation::new("bad")
            .generator("e2", 2)
            .generator("e3", 3)
            .differential("e2", Polynomial::monomial(int(1), &[("e3", 2)]));
        assert!(matches!(
            build_free(&pres, 6),
            Err(Error::Inhomogeneous {
                expected: 3,
                found: 6,
                ..
            })
        ));
    }

    #[test]
    fn inhomogeneous_relation_is_rejected() {
        let pres = GeneratorPresentation::new("bad")
            .generator("x", 2)
            .generator("y", 3)
            .relation(Polynomial::generator("x").plus(Polynomial::generator("y")));
        assert!(matches!(
            build_free(&pres, 6),
            Err(Error::InhomogeneousRelation { index: 0 })
        ));
    }

    #[test]
    fn degree_zero_generator_is_rejected() {
        let pres = GeneratorPresentation::new("bad").generator("u", 0);
        assert!(matches!(build_free(&pres, 4), Err(Error::GeneratorDegree { .. })));
    }

    #[test]
    fn leibniz_and_d_squared_on_full_basis() {
        let pres = GeneratorPresentation::new("K")
            .generator("a", 2)
            .generator("b", 2)
            .generator("u", 3)
            .generator("v", 5)
            .differential("u", Polynomial::monomial(int(1), &[("a", 1), ("b", 1)]))
            .differential(
                "v",
                Polynomial::monomial(int(1), &[("a", 2), ("b", 1)]).plus(Polynomial::monomial(int(2), &[("b", 3)])),
            );
        let a = build_free(&pres, 14).unwrap();
        assert!(a.validate().is_empty());
    }

    #[test]
    fn power_map_is_a_morphism() {
        let c = Arc::new(build_free(&GeneratorPresentation::new("Qc").generator("c", 4), 8).unwrap());
        let t = Arc::new(build_free(&poly_t2(), 8).unwrap());
        let img = t.evaluate(&Polynomial::monomial(int(1), &[("t", 2)])).unwrap();
        let phi = AlgebraMorphism::from_generator_images("sq", c, t, &[("c".into(), img)]).unwrap();
        assert!(check_morphism(&phi).is_empty());
        assert_eq!(phi.apply(8, &SparseVec::unit(0)), SparseVec::unit(0));
    }
}
