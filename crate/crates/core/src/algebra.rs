//! Truncated commutative differential graded algebras over the rationals,
//! their morphisms, and their cohomology algebras.
//!
//! A [`GradedAlgebra`] stores a basis per degree `0..=top`, a full table of
//! structure constants for products that stay inside the window, and the
//! differential as one matrix per degree. Degree zero is always spanned by
//! the unit, which is basis element `0`; the augmentation is the coefficient
//! of that element.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{cohomology_at, int, sign, Cohomology, Rational, RationalMatrix, SparseVec};
use crate::presentation::FreeData;

/// A homogeneous element: degree plus coordinates on that degree's basis.
pub type Element = (usize, SparseVec);

/// Commutative differential graded algebra truncated at degree `top`.
#[derive(Clone)]
pub struct GradedAlgebra {
    name: String,
    top: usize,
    labels: Vec<Vec<String>>,
    // mult[p][q] has dim(p) * dim(q) entries when p + q <= top, none otherwise
    mult: Vec<Vec<Vec<SparseVec>>>,
    // diff[n] maps degree n to degree n + 1, for n < top
    diff: Vec<RationalMatrix>,
    pub(crate) free: Option<FreeData>,
}

/// One broken algebra axiom, with the basis elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlgebraViolation {
    DegreeZero,
    Unit {
        degree: usize,
        index: usize,
    },
    Commutativity {
        left: (usize, usize),
        right: (usize, usize),
    },
    Associativity {
        a: (usize, usize),
        b: (usize, usize),
        c: (usize, usize),
    },
    Leibniz {
        left: (usize, usize),
        right: (usize, usize),
    },
    DSquare {
        degree: usize,
    },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl GradedAlgebra {
    /// Assembles an algebra from raw tables and validates every axiom.
    ///
    /// `mult[p][q][i * dim(q) + j]` is the product of basis element `i` in
    /// degree `p` with basis element `j` in degree `q`.
    pub fn from_tables(
        name: impl Into<String>,
        top: usize,
        labels: Vec<Vec<String>>,
        mult: Vec<Vec<Vec<SparseVec>>>,
        diff: Vec<RationalMatrix>,
    ) -> Result<Self, Error> {
        let alg = Self::from_tables_unchecked(name.into(), top, labels, mult, diff, None)?;
        alg.ensure_valid()?;
        Ok(alg)
    }

    pub(crate) fn from_tables_unchecked(
        name: String,
        top: usize,
        labels: Vec<Vec<String>>,
        mult: Vec<Vec<Vec<SparseVec>>>,
        diff: Vec<RationalMatrix>,
        free: Option<FreeData>,
    ) -> Result<Self, Error> {
        if labels.len() != top + 1 || mult.len() != top + 1 || diff.len() != top {
            return Err(Error::DimensionMismatch {
                context: "algebra tables",
                expected: top + 1,
                found: labels.len(),
            });
        }
        for p in 0..=top {
            if mult[p].len() != top + 1 {
                return Err(Error::DimensionMismatch {
                    context: "multiplication table",
                    expected: top + 1,
                    found: mult[p].len(),
                });
            }
            for q in 0..=top {
                let expected = if p + q <= top {
                    labels[p].len() * labels[q].len()
                } else {
                    0
                };
                if mult[p][q].len() != expected {
                    return Err(Error::DimensionMismatch {
                        context: "multiplication block",
                        expected,
                        found: mult[p][q].len(),
                    });
                }
            }
        }
        for (n, d) in diff.iter().enumerate() {
            if d.cols() != labels[n].len() || d.rows() != labels[n + 1].len() {
                return Err(Error::DimensionMismatch {
                    context: "differential",
                    expected: labels[n].len(),
                    found: d.cols(),
                });
            }
        }
        Ok(Self {
            name,
            top,
            labels,
            mult,
            diff,
            free,
        })
    }

    /// The ground field `Q`, concentrated in degree zero.
    pub fn ground_field(top: usize) -> Self {
        let mut labels = vec![Vec::new(); top + 1];
        labels[0].push("1".to_string());
        let mut mult = vec![vec![Vec::new(); top + 1]; top + 1];
        mult[0][0].push(SparseVec::unit(0));
        let diff = (0..top)
            .map(|n| RationalMatrix::zeros(0, usize::from(n == 0)))
            .collect();
        Self {
            name: "Q".to_string(),
            top,
            labels,
            mult,
            diff,
            free: Some(FreeData::empty(top)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Truncation degree: the algebra is known in degrees `0..=top`.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.labels.get(degree).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn label(&self, degree: usize, index: usize) -> &str {
        &self.labels[degree][index]
    }

    pub fn labels(&self, degree: usize) -> &[String] {
        &self.labels[degree]
    }

    /// Product of two basis elements; `None` when `p + q > top`.
    pub fn basis_product(&self, p: usize, i: usize, q: usize, j: usize) -> Option<&SparseVec> {
        if p + q > self.top {
            return None;
        }
        Some(&self.mult[p][q][i * self.dim(q) + j])
    }

    /// Bilinear product of homogeneous elements; `None` outside the window.
    pub fn multiply(&self, p: usize, a: &SparseVec, q: usize, b: &SparseVec) -> Option<SparseVec> {
        if p + q > self.top {
            return None;
        }
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(&self.mult[p][q][i * self.dim(q) + j], &(x * y));
            }
        }
        Some(out)
    }

    /// Differential out of degree `n`; `None` for `n >= top`.
    pub fn diff(&self, n: usize) -> Option<&RationalMatrix> {
        self.diff.get(n)
    }

    /// Matrix of the differential into degree `n` (zero map from nothing at
    /// `n = 0`).
    pub fn diff_into(&self, n: usize) -> RationalMatrix {
        if n == 0 {
            RationalMatrix::zeros(self.dim(0), 0)
        } else {
            self.diff[n - 1].clone()
        }
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diff.iter().all(RationalMatrix::is_zero)
    }

    /// Coefficient of the unit; zero in positive degrees.
    pub fn augmentation(&self, degree: usize, v: &SparseVec) -> Rational {
        if degree == 0 {
            v.get(0)
        } else {
            Rational::zero()
        }
    }

    pub fn unit(&self) -> Element {
        (0, SparseVec::unit(0))
    }

    /// Cohomology in degree `n < top`.
    pub fn cohomology_in_degree(&self, n: usize) -> Result<Cohomology, Error> {
        if n >= self.top {
            return Err(Error::Truncation {
                context: "cohomology is only known below the truncation degree",
                expected: n + 1,
                found: self.top,
            });
        }
        cohomology_at(&self.diff_into(n), &self.diff[n])
    }

    /// Checks every axiom on the full basis.
    pub fn validate(&self) -> Vec<AlgebraViolation> {
        let mut out = Vec::new();
        let top = self.top;
        if self.dim(0) != 1 {
            out.push(AlgebraViolation::DegreeZero);
            return out;
        }
        for p in 0..=top {
            for i in 0..self.dim(p) {
                let e = SparseVec::unit(i);
                if self.basis_product(0, 0, p, i) != Some(&e) || self.basis_product(p, i, 0, 0) != Some(&e) {
                    out.push(AlgebraViolation::Unit { degree: p, index: i });
                }
            }
        }
        for p in 0..=top {
            for q in p..=top - p {
                for i in 0..self.dim(p) {
                    for j in 0..self.dim(q) {
                        let ab = self.basis_product(p, i, q, j).unwrap();
                        let ba = self.basis_product(q, j, p, i).unwrap();
                        if *ab != ba.scaled(&sign(p * q)) {
                            out.push(AlgebraViolation::Commutativity {
                                left: (p, i),
                                right: (q, j),
                            });
                        }
                    }
                }
            }
        }
        for p in 1..=top {
            for q in 1..=top.saturating_sub(p) {
                for r in 1..=top.saturating_sub(p + q) {
                    for i in 0..self.dim(p) {
                        for j in 0..self.dim(q) {
                            let ab = self.basis_product(p, i, q, j).unwrap();
                            for k in 0..self.dim(r) {
                                let c = SparseVec::unit(k);
                                let left = self.multiply(p + q, ab, r, &c).unwrap();
                                let bc = self.basis_product(q, j, r, k).unwrap();
                                let right = self.multiply(p, &SparseVec::unit(i), q + r, bc).unwrap();
                                if left != right {
                                    out.push(AlgebraViolation::Associativity {
                                        a: (p, i),
                                        b: (q, j),
                                        c: (r, k),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        for p in 0..top {
            for q in 0..top - p {
                for i in 0..self.dim(p) {
                    for j in 0..self.dim(q) {
                        let ab = self.basis_product(p, i, q, j).unwrap();
                        let lhs = self.diff[p + q].apply(ab);
                        let da = self.diff[p].apply(&SparseVec::unit(i));
                        let db = self.diff[q].apply(&SparseVec::unit(j));
                        let mut rhs = self.multiply(p + 1, &da, q, &SparseVec::unit(j)).unwrap();
                        rhs.add_scaled(&self.multiply(p, &SparseVec::unit(i), q + 1, &db).unwrap(), &sign(p));
                        if lhs != rhs {
                            out.push(AlgebraViolation::Leibniz {
                                left: (p, i),
                                right: (q, j),
                            });
                        }
                    }
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            if !self.diff[n + 1].mul(&self.diff[n]).expect("shapes checked").is_zero() {
                out.push(AlgebraViolation::DSquare { degree: n });
            }
        }
        out
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), Error> {
        match self.validate().into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidAlgebra {
                name: self.name.clone(),
                violation: v.to_string(),
            }),
        }
    }

    /// Human readable form of a homogeneous element, e.g. `2 x y - z`.
    pub fn render(&self, degree: usize, v: &SparseVec) -> String {
        render_combination(v.iter().map(|(i, x)| (x.clone(), self.labels[degree][i].clone())))
    }
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("name", &self.name)
            .field("top", &self.top)
            .field("dims", &self.dims())
            .finish()
    }
}

pub(crate) fn render_combination(terms: impl Iterator<Item = (Rational, String)>) -> String {
    let mut out = String::new();
    for (k, (c, label)) in terms.enumerate() {
        let neg = c < Rational::zero();
        let abs = if neg { -c } else { c };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if label == "1" {
            out.push_str(&crate::linalg::fmt_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&label);
        } else {
            out.push_str(&format!("{} {}", crate::linalg::fmt_rational(&abs), label));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Degree preserving multiplicative chain map between algebras truncated at
/// the same degree.
#[derive(Clone)]
pub struct AlgebraMorphism {
    name: String,
    source: Arc<GradedAlgebra>,
    target: Arc<GradedAlgebra>,
    maps: Vec<RationalMatrix>,
}

/// One broken morphism axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MorphismViolation {
    TruncationMismatch {
        source: usize,
        target: usize,
    },
    Shape {
        degree: usize,
    },
    Unit,
    ChainMap {
        degree: usize,
    },
    Multiplicative {
        left: (usize, usize),
        right: (usize, usize),
    },
}

impl AlgebraMorphism {
    /// Wraps raw per-degree matrices. Use [`check_morphism`] to validate.
    pub fn from_matrices(
        name: impl Into<String>,
        source: Arc<GradedAlgebra>,
        target: Arc<GradedAlgebra>,
        maps: Vec<RationalMatrix>,
    ) -> Self {
        Self {
            name: name.into(),
            source,
            target,
            maps,
        }
    }

    /// Like [`from_matrices`](Self::from_matrices) but rejects invalid maps.
    pub fn new(
        name: impl Into<String>,
        source: Arc<GradedAlgebra>,
        target: Arc<GradedAlgebra>,
        maps: Vec<RationalMatrix>,
    ) -> Result<Self, Error> {
        Self::from_matrices(name, source, target, maps).validated()
    }

    pub fn identity(alg: Arc<GradedAlgebra>) -> Self {
        let maps = (0..=alg.top()).map(|n| RationalMatrix::identity(alg.dim(n))).collect();
        Self::from_matrices(format!("id_{}", alg.name()), alg.clone(), alg, maps)
    }

    /// The unit map `Q -> target`.
    pub fn unit_map(target: Arc<GradedAlgebra>) -> Self {
        let source = Arc::new(GradedAlgebra::ground_field(target.top()));
        let maps = (0..=target.top())
            .map(|n| {
                let mut m = RationalMatrix::zeros(target.dim(n), source.dim(n));
                if n == 0 {
                    m.set(0, 0, Rational::one());
                }
                m
            })
            .collect();
        Self::from_matrices(format!("unit_{}", target.name()), source, target, maps)
    }

    /// The augmentation `source -> Q`.
    pub fn augmentation_map(source: Arc<GradedAlgebra>) -> Self {
        let target = Arc::new(GradedAlgebra::ground_field(source.top()));
        let maps = (0..=source.top())
            .map(|n| {
                let mut m = RationalMatrix::zeros(target.dim(n), source.dim(n));
                if n == 0 {
                    m.set(0, 0, Rational::one());
                }
                m
            })
            .collect();
        Self::from_matrices(format!("aug_{}", source.name()), source, target, maps)
    }

    /// The zero map in every degree (never a valid morphism on a nonzero
    /// algebra since it drops the unit).
    pub fn zero(source: Arc<GradedAlgebra>, target: Arc<GradedAlgebra>) -> Self {
        let maps = (0..=source.top().min(target.top()))
            .map(|n| RationalMatrix::zeros(target.dim(n), source.dim(n)))
            .collect();
        Self::from_matrices("zero", source, target, maps)
    }

    /// Extends images of the source's generators multiplicatively. The
    /// source must come from [`build_free`](crate::presentation::build_free).
    pub fn from_generator_images(
        name: impl Into<String>,
        source: Arc<GradedAlgebra>,
        target: Arc<GradedAlgebra>,
        images: &[(String, Element)],
    ) -> Result<Self, Error> {
        let maps = crate::presentation::extend_on_generators(&source, &target, images)?;
        Self::from_matrices(name, source, target, maps).validated()
    }

    fn validated(self) -> Result<Self, Error> {
        let report = check_morphism(&self);
        if report.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidMorphism {
                name: self.name,
                violations: report,
            })
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Arc<GradedAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedAlgebra> {
        &self.target
    }

    pub fn matrix(&self, degree: usize) -> &RationalMatrix {
        &self.maps[degree]
    }

    pub fn apply(&self, degree: usize, v: &SparseVec) -> SparseVec {
        self.maps[degree].apply(v)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism, Error> {
        if self.maps.len() != other.maps.len() {
            return Err(Error::Truncation {
                context: "composition",
                expected: self.maps.len(),
                found: other.maps.len(),
            });
        }
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| b.mul(a))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_matrices(
            format!("{}.{}", other.name, self.name),
            self.source.clone(),
            other.target.clone(),
            maps,
        ))
    }

    /// First degree where the two maps differ, if any.
    pub fn first_difference(&self, other: &AlgebraMorphism) -> Option<usize> {
        (0..self.maps.len().max(other.maps.len())).find(|&n| self.maps.get(n) != other.maps.get(n))
    }
}

impl fmt::Debug for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraMorphism")
            .field("name", &self.name)
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .finish()
    }
}

/// Lists every violated morphism axiom; empty iff `phi` is a valid morphism.
pub fn check_morphism(phi: &AlgebraMorphism) -> Vec<MorphismViolation> {
    let (s, t) = (&phi.source, &phi.target);
    let mut out = Vec::new();
    if s.top() != t.top() || phi.maps.len() != s.top() + 1 {
        out.push(MorphismViolation::TruncationMismatch {
            source: s.top(),
            target: t.top(),
        });
        return out;
    }
    for (n, m) in phi.maps.iter().enumerate() {
        if m.rows() != t.dim(n) || m.cols() != s.dim(n) {
            out.push(MorphismViolation::Shape { degree: n });
        }
    }
    if !out.is_empty() {
        return out;
    }
    if phi.apply(0, &SparseVec::unit(0)) != SparseVec::unit(0) {
        out.push(MorphismViolation::Unit);
    }
    for n in 0..s.top() {
        let lhs = phi.maps[n + 1].mul(s.diff(n).unwrap()).expect("shapes checked");
        let rhs = t.diff(n).unwrap().mul(&phi.maps[n]).expect("shapes checked");
        if lhs != rhs {
            out.push(MorphismViolation::ChainMap { degree: n });
        }
    }
    for p in 1..=s.top() {
        for q in p..=s.top() - p {
            for i in 0..s.dim(p) {
                let fi = phi.apply(p, &SparseVec::unit(i));
                for j in 0..s.dim(q) {
                    let fj = phi.apply(q, &SparseVec::unit(j));
                    let lhs = phi.apply(p + q, s.basis_product(p, i, q, j).unwrap());
                    let rhs = t.multiply(p, &fi, q, &fj).unwrap();
                    if lhs != rhs {
                        out.push(MorphismViolation::Multiplicative {
                            left: (p, i),
                            right: (q, j),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Outcome of [`is_quasi_iso`]: bijectivity is only decidable in degrees
/// below the truncation, so the report carries that bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiIsoReport {
    pub quasi_iso: bool,
    pub valid_up_to: usize,
    /// Degrees where the induced map fails to be bijective.
    pub failures: Vec<usize>,
}

/// Whether `phi` induces isomorphisms `H^n(source) -> H^n(target)` for all
/// `n <= top - 1`.
pub fn is_quasi_iso(phi: &AlgebraMorphism) -> Result<QuasiIsoReport, Error> {
    let top = phi.source.top();
    let mut failures = Vec::new();
    for n in 0..top {
        let hs = phi.source.cohomology_in_degree(n)?;
        let ht = phi.target.cohomology_in_degree(n)?;
        if hs.dim != ht.dim || induced_rank(phi, n, &hs, &ht)? != hs.dim {
            failures.push(n);
        }
    }
    Ok(QuasiIsoReport {
        quasi_iso: failures.is_empty(),
        valid_up_to: top.saturating_sub(1),
        failures,
    })
}

fn induced_rank(phi: &AlgebraMorphism, n: usize, hs: &Cohomology, ht: &Cohomology) -> Result<usize, Error> {
    let cols = hs
        .reps
        .iter()
        .map(|z| {
            ht.projector
                .project(&phi.apply(n, z))
                .ok_or_else(|| Error::Consistency(format!("image of a cocycle is not a cocycle in degree {n}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RationalMatrix::from_columns(ht.dim, &cols).rank())
}

/// `H(A)` as an algebra with zero differential, together with the cocycle
/// representatives and projectors used to build it.
#[derive(Clone, Debug)]
pub struct CohomologyAlgebra {
    pub algebra: GradedAlgebra,
    groups: Vec<Cohomology>,
}

impl CohomologyAlgebra {
    /// Representative cocycle of class `index` in degree `degree`.
    pub fn representative(&self, degree: usize, index: usize) -> &SparseVec {
        &self.groups[degree].reps[index]
    }

    /// Class of a cocycle of `A`; `None` if it is not a cocycle.
    pub fn class_of(&self, degree: usize, cocycle: &SparseVec) -> Option<SparseVec> {
        self.groups.get(degree)?.projector.project(cocycle)
    }
}

/// Computes `H(A)` with its induced product. The result is truncated at
/// `A.top() - 1`, the last degree where cohomology is determined.
pub fn cohomology_algebra(a: &GradedAlgebra) -> Result<CohomologyAlgebra, Error> {
    if a.top() == 0 {
        return Err(Error::Truncation {
            context: "cohomology algebra needs at least one degree of differential",
            expected: 1,
            found: 0,
        });
    }
    let top = a.top() - 1;
    let groups = (0..=top)
        .map(|n| a.cohomology_in_degree(n))
        .collect::<Result<Vec<_>, _>>()?;
    let labels: Vec<Vec<String>> = groups
        .iter()
        .enumerate()
        .map(|(n, h)| {
            h.reps
                .iter()
                .map(|z| {
                    if n == 0 && *z == SparseVec::unit(0) {
                        "1".to_string()
                    } else {
                        format!("[{}]", a.render(n, z))
                    }
                })
                .collect()
        })
        .collect();
    let mut mult = vec![vec![Vec::new(); top + 1]; top + 1];
    for p in 0..=top {
        for q in 0..=top - p {
            let mut block = Vec::with_capacity(groups[p].dim * groups[q].dim);
            for zi in &groups[p].reps {
                for zj in &groups[q].reps {
                    let prod = a.multiply(p, zi, q, zj).expect("inside window");
                    let class = groups[p + q].projector.project(&prod).ok_or_else(|| {
                        Error::Consistency(format!("product of cocycles is not a cocycle in degree {}", p + q))
                    })?;
                    block.push(class);
                }
            }
            mult[p][q] = block;
        }
    }
    let diff = (0..top)
        .map(|n| RationalMatrix::zeros(groups[n + 1].dim, groups[n].dim))
        .collect();
    let algebra = GradedAlgebra::from_tables_unchecked(format!("H({})", a.name()), top, labels, mult, diff, None)?;
    algebra.ensure_valid()?;
    Ok(CohomologyAlgebra { algebra, groups })
}

/// `x · 1`: the structure map of `Q` into any algebra, as an element.
pub fn scalar(x: i64) -> Element {
    let mut v = SparseVec::new();
    v.set(0, int(x));
    (0, v)
}
