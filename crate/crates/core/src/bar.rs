//! The two-sided normalized bar complex `B(A, B, C)` of a pair of maps
//! `f: B -> A`, `g: B -> C`.
//!
//! A basis word is `(α; ω₁, …, ω_k; β)` with `α`, `β`, `ωᵢ` basis elements.
//! Each middle entry is suspended, so it contributes `deg ωᵢ - 1` to the
//! total degree. The bar degree is `-k`.
//!
//! Normalization is structural. The middle algebra must have `B⁰ = Q·1` and
//! `B¹ = 0`, and middle entries are restricted to degree at least two. The
//! span of such words is a complement of the degenerate subcomplex generated
//! by insertions of degree-zero elements, so it is canonically isomorphic to
//! the normalized quotient and nothing has to be quotiented out.
//!
//! Truncation: a window of top degree `N` is assembled from algebras known
//! up to degree `N + 1`. A middle entry of degree `N + 1` contributes `N` to
//! the total degree, so this is exactly what makes the word basis complete in
//! every total degree `<= N`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{check_morphism, AlgebraMorphism, Element, GradedAlgebra};
use crate::error::Error;
use crate::linalg::{sign, Rational, RationalMatrix, SparseVec};

/// A basis element of one of the input algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis {
    pub degree: usize,
    pub index: usize,
}

impl Basis {
    pub const UNIT: Basis = Basis { degree: 0, index: 0 };

    pub fn new(degree: usize, index: usize) -> Self {
        Self { degree, index }
    }
}

/// `(α; ω₁, …, ω_k; β)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarWord {
    pub left: Basis,
    pub middle: Vec<Basis>,
    pub right: Basis,
}

impl BarWord {
    pub fn new(left: Basis, middle: Vec<Basis>, right: Basis) -> Self {
        Self { left, middle, right }
    }

    /// `(1;;1)`.
    pub fn unit() -> Self {
        Self::new(Basis::UNIT, Vec::new(), Basis::UNIT)
    }

    /// Number of middle entries.
    pub fn length(&self) -> usize {
        self.middle.len()
    }

    pub fn total_degree(&self) -> usize {
        self.left.degree + self.middle.iter().map(|w| w.degree - 1).sum::<usize>() + self.right.degree
    }

    pub fn bar_degree(&self) -> i64 {
        -(self.middle.len() as i64)
    }

    pub fn tensor_degree(&self) -> usize {
        self.left.degree + self.middle.iter().map(|w| w.degree).sum::<usize>() + self.right.degree
    }

    /// `ε_i = deg α + deg ω₁ + … + deg ω_i − i`.
    fn epsilon(&self, i: usize) -> usize {
        self.left.degree + self.middle[..i].iter().map(|w| w.degree - 1).sum::<usize>()
    }
}

impl fmt::Debug for BarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mid: Vec<String> = self
            .middle
            .iter()
            .map(|b| format!("{}.{}", b.degree, b.index))
            .collect();
        write!(
            f,
            "({}.{}; {}; {}.{})",
            self.left.degree,
            self.left.index,
            mid.join(", "),
            self.right.degree,
            self.right.index
        )
    }
}

/// Rational linear combination of words of one total degree.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct BarChain {
    terms: BTreeMap<BarWord, Rational>,
}

impl BarChain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn word(w: BarWord) -> Self {
        let mut c = Self::new();
        c.add(w, Rational::one());
        c
    }

    pub fn add(&mut self, w: BarWord, x: Rational) {
        if x.is_zero() {
            return;
        }
        debug_assert!(
            self.terms
                .keys()
                .next()
                .is_none_or(|v| v.total_degree() == w.total_degree()),
            "chains are homogeneous"
        );
        let entry = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *entry += x;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_chain(&mut self, other: &BarChain, c: &Rational) {
        for (w, x) in &other.terms {
            self.add(w.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> BarChain {
        let mut out = BarChain::new();
        out.add_chain(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &BarWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BarWord, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree of the (homogeneous) chain; `None` for zero.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(BarWord::total_degree)
    }
}

impl fmt::Debug for BarChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(w, x)| (w, x.to_string())))
            .finish()
    }
}

/// Inputs `A <-f- B -g-> C` of a bar construction.
#[derive(Clone, Debug)]
pub struct BarTriple {
    pub left: Arc<GradedAlgebra>,
    pub middle: Arc<GradedAlgebra>,
    pub right: Arc<GradedAlgebra>,
    /// `B -> A`.
    pub f: AlgebraMorphism,
    /// `B -> C`.
    pub g: AlgebraMorphism,
}

fn same_algebra(a: &GradedAlgebra, b: &GradedAlgebra) -> bool {
    a.top() == b.top() && a.dims() == b.dims() && a.name() == b.name()
}

impl BarTriple {
    /// Validates the two morphisms and the connectivity of the middle
    /// algebra.
    pub fn new(f: AlgebraMorphism, g: AlgebraMorphism) -> Result<Self, Error> {
        for phi in [&f, &g] {
            let report = check_morphism(phi);
            if !report.is_empty() {
                return Err(Error::InvalidMorphism {
                    name: phi.name().to_string(),
                    violations: report,
                });
            }
        }
        if !same_algebra(f.source(), g.source()) {
            return Err(Error::Consistency(format!(
                "`{}` and `{}` have different sources",
                f.name(),
                g.name()
            )));
        }
        let middle = f.source().clone();
        if middle.dim(0) != 1 {
            return Err(Error::MiddleAlgebraNotSimplyConnected { degree: 0 });
        }
        if middle.dim(1) != 0 {
            return Err(Error::MiddleAlgebraNotSimplyConnected { degree: 1 });
        }
        Ok(Self {
            left: f.target().clone(),
            right: g.target().clone(),
            middle,
            f,
            g,
        })
    }

    /// Common truncation degree of the three algebras.
    pub fn top(&self) -> usize {
        self.middle.top()
    }

    /// Whether all three algebras have zero differential, in which case the
    /// bar differential alone is the total differential.
    pub fn is_cohomology_triple(&self) -> bool {
        self.left.has_zero_differential() && self.middle.has_zero_differential() && self.right.has_zero_differential()
    }

    /// Every word of total degree `n`, sorted.
    pub fn enumerate_words(&self, n: usize) -> Vec<BarWord> {
        let mut out = Vec::new();
        let (a, b, c) = (&self.left, &self.middle, &self.right);
        for da in 0..=n.min(a.top()) {
            for dc in 0..=(n - da).min(c.top()) {
                let rest = n - da - dc;
                let mut middles = Vec::new();
                compositions(b, rest, &mut Vec::new(), &mut middles);
                for ia in 0..a.dim(da) {
                    for ic in 0..c.dim(dc) {
                        for m in &middles {
                            out.push(BarWord::new(Basis::new(da, ia), m.clone(), Basis::new(dc, ic)));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Internal differential `d`: keeps the bar degree, raises the tensor
    /// degree by one.
    pub fn bar_d(&self, w: &BarWord) -> Result<BarChain, Error> {
        let mut out = BarChain::new();
        let k = w.length();
        let da = apply_diff(&self.left, w.left)?;
        for (i, x) in da.iter() {
            out.add(
                BarWord::new(Basis::new(w.left.degree + 1, i), w.middle.clone(), w.right),
                x.clone(),
            );
        }
        for pos in 0..k {
            let s = sign(w.epsilon(pos) + 1);
            let dw = apply_diff(&self.middle, w.middle[pos])?;
            for (i, x) in dw.iter() {
                let mut mid = w.middle.clone();
                mid[pos] = Basis::new(w.middle[pos].degree + 1, i);
                out.add(BarWord::new(w.left, mid, w.right), x * &s);
            }
        }
        let s = sign(w.epsilon(k));
        let dc = apply_diff(&self.right, w.right)?;
        for (i, x) in dc.iter() {
            out.add(
                BarWord::new(w.left, w.middle.clone(), Basis::new(w.right.degree + 1, i)),
                x * &s,
            );
        }
        Ok(out)
    }

    /// Bar differential `δ`: contracts adjacent entries, raising the bar
    /// degree by one. The left action is `α·f(ω₁)`, the right one `g(ω_k)·β`.
    ///
    /// The sum below is `-δ(w)`; the result is its negation.
    pub fn bar_delta(&self, w: &BarWord) -> Result<BarChain, Error> {
        let k = w.length();
        let mut neg = BarChain::new();
        if k == 0 {
            return Ok(neg);
        }
        // (α ω₁, ω₂, …, β)
        let w1 = w.middle[0];
        let fw = self.f.apply(w1.degree, &SparseVec::unit(w1.index));
        let prod = self
            .left
            .multiply(w.left.degree, &SparseVec::unit(w.left.index), w1.degree, &fw)
            .ok_or(Error::DegreeOverflow {
                degree: w.left.degree + w1.degree,
                top: self.left.top(),
            })?;
        let s = sign(w.epsilon(0));
        for (i, x) in prod.iter() {
            let left = Basis::new(w.left.degree + w1.degree, i);
            neg.add(BarWord::new(left, w.middle[1..].to_vec(), w.right), x * &s);
        }
        // (…, ω_i ω_{i+1}, …)
        for pos in 1..k {
            let (a, b) = (w.middle[pos - 1], w.middle[pos]);
            let prod =
                self.middle
                    .basis_product(a.degree, a.index, b.degree, b.index)
                    .ok_or(Error::DegreeOverflow {
                        degree: a.degree + b.degree,
                        top: self.middle.top(),
                    })?;
            let s = sign(w.epsilon(pos));
            for (i, x) in prod.iter() {
                let mut mid = w.middle[..pos - 1].to_vec();
                mid.push(Basis::new(a.degree + b.degree, i));
                mid.extend_from_slice(&w.middle[pos + 1..]);
                neg.add(BarWord::new(w.left, mid, w.right), x * &s);
            }
        }
        // (α, …, ω_k β)
        let wk = w.middle[k - 1];
        let gw = self.g.apply(wk.degree, &SparseVec::unit(wk.index));
        let prod = self
            .right
            .multiply(wk.degree, &gw, w.right.degree, &SparseVec::unit(w.right.index))
            .ok_or(Error::DegreeOverflow {
                degree: wk.degree + w.right.degree,
                top: self.right.top(),
            })?;
        let s = sign(w.epsilon(k - 1) + 1);
        for (i, x) in prod.iter() {
            let right = Basis::new(wk.degree + w.right.degree, i);
            neg.add(BarWord::new(w.left, w.middle[..k - 1].to_vec(), right), x * &s);
        }
        Ok(neg.scaled(&-Rational::one()))
    }

    /// `D = d + δ`.
    pub fn bar_total(&self, w: &BarWord) -> Result<BarChain, Error> {
        let mut out = self.bar_d(w)?;
        out.add_chain(&self.bar_delta(w)?, &Rational::one());
        Ok(out)
    }
}

fn apply_diff(alg: &GradedAlgebra, b: Basis) -> Result<SparseVec, Error> {
    alg.diff(b.degree)
        .map(|d| d.apply(&SparseVec::unit(b.index)))
        .ok_or(Error::DegreeOverflow {
            degree: b.degree + 1,
            top: alg.top(),
        })
}

/// All middle sequences whose suspended degrees sum to `rest`.
fn compositions(b: &GradedAlgebra, rest: usize, cur: &mut Vec<Basis>, out: &mut Vec<Vec<Basis>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for part in 1..=rest {
        let deg = part + 1;
        if deg > b.top() {
            break;
        }
        for i in 0..b.dim(deg) {
            cur.push(Basis::new(deg, i));
            compositions(b, rest - part, cur, out);
            cur.pop();
        }
    }
}

/// Which identity of the double complex to check.
const IDENTITIES: [&str; 4] = ["d^2 = 0", "delta^2 = 0", "d delta + delta d = 0", "D^2 = 0"];

/// The bar complex in total degrees `0..=top`, with the matrices of `d`,
/// `δ` and `D` between consecutive degrees.
#[derive(Clone, Debug)]
pub struct BarWindow {
    triple: BarTriple,
    top: usize,
    words: Vec<Vec<BarWord>>,
    index: Vec<HashMap<BarWord, usize>>,
    d: Vec<RationalMatrix>,
    delta: Vec<RationalMatrix>,
    total: Vec<RationalMatrix>,
}

impl BarWindow {
    /// Enumerates words and assembles all differentials up to total degree
    /// `top`, then verifies `d² = 0`, `δ² = 0`, `dδ + δd = 0` and `D² = 0`
    /// on every degree where both composites fit.
    ///
    /// The three algebras must be truncated at `top + 1` or higher.
    pub fn build(triple: BarTriple, top: usize) -> Result<Self, Error> {
        if triple.top() < top + 1 {
            return Err(Error::Truncation {
                context: "a bar window of top degree N needs algebras known up to N + 1",
                expected: top + 1,
                found: triple.top(),
            });
        }
        let words: Vec<Vec<BarWord>> = (0..=top).map(|n| triple.enumerate_words(n)).collect();
        let index: Vec<HashMap<BarWord, usize>> = words
            .iter()
            .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
            .collect();
        let mut window = Self {
            triple,
            top,
            words,
            index,
            d: Vec::new(),
            delta: Vec::new(),
            total: Vec::new(),
        };
        for n in 0..top {
            let mut d_cols = Vec::with_capacity(window.words[n].len());
            let mut delta_cols = Vec::with_capacity(window.words[n].len());
            for w in &window.words[n] {
                d_cols.push(window.coordinates(n + 1, &window.triple.bar_d(w)?)?);
                delta_cols.push(window.coordinates(n + 1, &window.triple.bar_delta(w)?)?);
            }
            let rows = window.words[n + 1].len();
            let d = RationalMatrix::from_columns(rows, &d_cols);
            let delta = RationalMatrix::from_columns(rows, &delta_cols);
            window.total.push(d.add(&delta)?);
            window.d.push(d);
            window.delta.push(delta);
        }
        window.verify_double_complex()?;
        Ok(window)
    }

    fn verify_double_complex(&self) -> Result<(), Error> {
        for n in 0..self.top.saturating_sub(1) {
            let dd = self.d[n + 1].mul(&self.d[n])?;
            let ee = self.delta[n + 1].mul(&self.delta[n])?;
            let de = self.d[n + 1]
                .mul(&self.delta[n])?
                .add(&self.delta[n + 1].mul(&self.d[n])?)?;
            let tt = self.total[n + 1].mul(&self.total[n])?;
            for (name, m) in IDENTITIES.iter().zip([dd, ee, de, tt]) {
                if !m.is_zero() {
                    return Err(Error::SignInconsistency {
                        identity: name,
                        degree: n,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn triple(&self) -> &BarTriple {
        &self.triple
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn words(&self, n: usize) -> &[BarWord] {
        &self.words[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.words.get(n).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.words.iter().map(Vec::len).collect()
    }

    /// Word counts per `(bar degree, total degree)`.
    pub fn bigraded_dims(&self) -> BTreeMap<(i64, usize), usize> {
        let mut out = BTreeMap::new();
        for (n, ws) in self.words.iter().enumerate() {
            for w in ws {
                *out.entry((w.bar_degree(), n)).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn index_of(&self, w: &BarWord) -> Option<usize> {
        self.index.get(w.total_degree())?.get(w).copied()
    }

    /// `d`, `δ`, `D` out of total degree `n < top`.
    pub fn d(&self, n: usize) -> &RationalMatrix {
        &self.d[n]
    }

    pub fn delta(&self, n: usize) -> &RationalMatrix {
        &self.delta[n]
    }

    pub fn total(&self, n: usize) -> &RationalMatrix {
        &self.total[n]
    }

    /// Matrix of `D` into degree `n` (empty source at `n = 0`).
    pub fn total_into(&self, n: usize) -> RationalMatrix {
        if n == 0 {
            RationalMatrix::zeros(self.dim(0), 0)
        } else {
            self.total[n - 1].clone()
        }
    }

    /// Coordinates of a chain of total degree `n` on the word basis.
    pub fn coordinates(&self, n: usize, c: &BarChain) -> Result<SparseVec, Error> {
        let mut v = SparseVec::new();
        for (w, x) in c.terms() {
            let i = self.index[n].get(w).ok_or_else(|| {
                Error::Consistency(format!(
                    "word {w:?} of degree {} is missing from the window",
                    w.total_degree()
                ))
            })?;
            v.set(*i, x.clone());
        }
        Ok(v)
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn chain(&self, n: usize, v: &SparseVec) -> BarChain {
        let mut c = BarChain::new();
        for (i, x) in v.iter() {
            c.add(self.words[n][i].clone(), x.clone());
        }
        c
    }

    /// `D` applied to a chain of total degree `n < top`.
    pub fn apply_total(&self, n: usize, c: &BarChain) -> Result<BarChain, Error> {
        let v = self.coordinates(n, c)?;
        Ok(self.chain(n + 1, &self.total[n].apply(&v)))
    }
}

/// `(1;;1) ↦ 1`, everything of positive total degree to zero.
pub fn bar_augmentation(c: &BarChain) -> Rational {
    // degree-0 words are exactly multiples of (1;;1) since A⁰ = C⁰ = Q·1
    c.coefficient(&BarWord::unit())
}

/// The map `θ: B(A, B, C) -> T`, zero on words with middle entries and
/// `α ⊗ β ↦ u(α)·v(β)` on the rest.
#[derive(Clone, Debug)]
pub struct Theta {
    u: AlgebraMorphism,
    v: AlgebraMorphism,
}

impl Theta {
    /// Requires `u ∘ f = v ∘ g` as maps `B -> T`.
    pub fn new(triple: &BarTriple, u: AlgebraMorphism, v: AlgebraMorphism) -> Result<Self, Error> {
        for phi in [&u, &v] {
            let report = check_morphism(phi);
            if !report.is_empty() {
                return Err(Error::InvalidMorphism {
                    name: phi.name().to_string(),
                    violations: report,
                });
            }
        }
        let uf = triple.f.then(&u)?;
        let vg = triple.g.then(&v)?;
        if let Some(degree) = uf.first_difference(&vg) {
            return Err(Error::SquareNotCommuting { degree });
        }
        Ok(Self { u, v })
    }

    pub fn target(&self) -> &Arc<GradedAlgebra> {
        self.u.target()
    }

    pub fn apply_word(&self, w: &BarWord) -> Element {
        let t = self.target();
        let n = w.total_degree();
        if w.length() > 0 {
            return (n, SparseVec::new());
        }
        let a = self.u.apply(w.left.degree, &SparseVec::unit(w.left.index));
        let c = self.v.apply(w.right.degree, &SparseVec::unit(w.right.index));
        let prod = t
            .multiply(w.left.degree, &a, w.right.degree, &c)
            .expect("degree within the target");
        (n, prod)
    }

    pub fn apply(&self, c: &BarChain) -> SparseVec {
        let mut out = SparseVec::new();
        for (w, x) in c.terms() {
            out.add_scaled(&self.apply_word(w).1, x);
        }
        out
    }

    /// Matrix of `θ` from total degree `n` of the window into `T^n`.
    pub fn matrix(&self, window: &BarWindow, n: usize) -> RationalMatrix {
        let cols: Vec<SparseVec> = window.words(n).iter().map(|w| self.apply_word(w).1).collect();
        RationalMatrix::from_columns(self.target().dim(n), &cols)
    }

    /// First total degree `n < top` where `θ ∘ D ≠ d_T ∘ θ`.
    pub fn chain_map_failure(&self, window: &BarWindow) -> Option<usize> {
        let t = self.target();
        (0..window.top().min(t.top())).find(|&n| {
            let lhs = self.matrix(window, n + 1).mul(window.total(n)).expect("shapes");
            let rhs = t
                .diff(n)
                .expect("below top")
                .mul(&self.matrix(window, n))
                .expect("shapes");
            lhs != rhs
        })
    }
}

/// Three vertical maps between two triples, forming two commuting squares.
#[derive(Clone, Debug)]
pub struct BarLadder {
    pub left: AlgebraMorphism,
    pub middle: AlgebraMorphism,
    pub right: AlgebraMorphism,
}

impl BarLadder {
    pub fn identity(triple: &BarTriple) -> Self {
        Self {
            left: AlgebraMorphism::identity(triple.left.clone()),
            middle: AlgebraMorphism::identity(triple.middle.clone()),
            right: AlgebraMorphism::identity(triple.right.clone()),
        }
    }

    fn validate(&self, from: &BarTriple, to: &BarTriple) -> Result<(), Error> {
        for phi in [&self.left, &self.middle, &self.right] {
            let report = check_morphism(phi);
            if !report.is_empty() {
                return Err(Error::InvalidMorphism {
                    name: phi.name().to_string(),
                    violations: report,
                });
            }
        }
        let ends = [
            (&self.left, &from.left, &to.left),
            (&self.middle, &from.middle, &to.middle),
            (&self.right, &from.right, &to.right),
        ];
        for (phi, s, t) in ends {
            if !same_algebra(phi.source(), s) || !same_algebra(phi.target(), t) {
                return Err(Error::Consistency(format!(
                    "ladder map `{}` has the wrong endpoints",
                    phi.name()
                )));
            }
        }
        let left_a = from.f.then(&self.left)?;
        let left_b = self.middle.then(&to.f)?;
        if let Some(degree) = left_a.first_difference(&left_b) {
            return Err(Error::LadderNotCommuting { side: "left", degree });
        }
        let right_a = from.g.then(&self.right)?;
        let right_b = self.middle.then(&to.g)?;
        if let Some(degree) = right_a.first_difference(&right_b) {
            return Err(Error::LadderNotCommuting { side: "right", degree });
        }
        Ok(())
    }

    fn apply_word(&self, w: &BarWord) -> BarChain {
        let image = |phi: &AlgebraMorphism, b: Basis| -> Vec<(Basis, Rational)> {
            phi.apply(b.degree, &SparseVec::unit(b.index))
                .iter()
                .map(|(i, x)| (Basis::new(b.degree, i), x.clone()))
                .collect()
        };
        // multilinear expansion, no signs since every map has degree zero
        let mut partial: Vec<(Vec<Basis>, Rational)> = vec![(Vec::new(), Rational::one())];
        for &b in &w.middle {
            let img = image(&self.middle, b);
            let mut next = Vec::with_capacity(partial.len() * img.len());
            for (mid, x) in &partial {
                for (nb, y) in &img {
                    let mut m = mid.clone();
                    m.push(*nb);
                    next.push((m, x * y));
                }
            }
            partial = next;
        }
        let mut out = BarChain::new();
        for (a, xa) in image(&self.left, w.left) {
            for (c, xc) in image(&self.right, w.right) {
                for (mid, xm) in &partial {
                    out.add(BarWord::new(a, mid.clone(), c), &(&xa * &xc) * xm);
                }
            }
        }
        out
    }
}

/// The chain map between windows induced by a commuting ladder: one matrix
/// per total degree `0..=top`, checked against both total differentials.
pub fn induced_bar_map(ladder: &BarLadder, from: &BarWindow, to: &BarWindow) -> Result<Vec<RationalMatrix>, Error> {
    if from.top() != to.top() {
        return Err(Error::Truncation {
            context: "windows of a ladder must share the top degree",
            expected: from.top(),
            found: to.top(),
        });
    }
    ladder.validate(from.triple(), to.triple())?;
    let maps = (0..=from.top())
        .map(|n| {
            let cols = from
                .words(n)
                .iter()
                .map(|w| to.coordinates(n, &ladder.apply_word(w)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(RationalMatrix::from_columns(to.dim(n), &cols))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    for n in 0..from.top() {
        if maps[n + 1].mul(from.total(n))? != to.total(n).mul(&maps[n])? {
            return Err(Error::Consistency(format!(
                "induced bar map is not a chain map in degree {n}"
            )));
        }
    }
    Ok(maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::presentation::{build_free, GeneratorPresentation, Polynomial};

    fn over_field(middle: GeneratorPresentation, top: usize) -> BarTriple {
        let b = Arc::new(build_free(&middle, top).unwrap());
        let f = AlgebraMorphism::augmentation_map(b.clone());
        let g = AlgebraMorphism::augmentation_map(b);
        BarTriple::new(f, g).unwrap()
    }

    fn s3() -> GeneratorPresentation {
        GeneratorPresentation::new("S3").generator("x", 3)
    }

    fn hs2() -> GeneratorPresentation {
        GeneratorPresentation::new("HS2")
            .generator("x", 2)
            .relation(Polynomial::monomial(int(1), &[("x", 2)]))
    }

    fn ms2() -> GeneratorPresentation {
        GeneratorPresentation::new("MS2")
            .generator("e2", 2)
            .generator("e3", 3)
            .differential("e3", Polynomial::monomial(int(1), &[("e2", 2)]))
    }

    #[test]
    fn trivial_triple_has_one_word() {
        let t = over_field(GeneratorPresentation::new("Q"), 4);
        assert_eq!(t.enumerate_words(0), vec![BarWord::unit()]);
        let w = BarWindow::build(t, 3).unwrap();
        assert_eq!(w.dims(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn exterior_middle_words() {
        let t = over_field(s3(), 11);
        let x = Basis::new(3, 0);
        assert_eq!(
            t.enumerate_words(4),
            vec![BarWord::new(Basis::UNIT, vec![x, x], Basis::UNIT)]
        );
        assert!(t.enumerate_words(1).is_empty());
        let w = BarWindow::build(t, 10).unwrap();
        assert_eq!(w.dims(), vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn exterior_middle_has_zero_delta() {
        let t = over_field(s3(), 7);
        let x = Basis::new(3, 0);
        let w = BarWord::new(Basis::UNIT, vec![x, x], Basis::UNIT);
        assert!(t.bar_delta(&w).unwrap().is_zero());
        assert!(t.bar_d(&w).unwrap().is_zero());
    }

    #[test]
    fn cohomology_sphere_words() {
        let t = over_field(hs2(), 7);
        let w = BarWindow::build(t, 6).unwrap();
        assert_eq!(w.dims(), vec![1; 7]);
    }

    #[test]
    fn internal_differential_of_minimal_model() {
        let t = over_field(ms2(), 6);
        let w = BarWord::new(Basis::UNIT, vec![Basis::new(3, 0)], Basis::UNIT);
        let mut expected = BarChain::new();
        expected.add(BarWord::new(Basis::UNIT, vec![Basis::new(4, 0)], Basis::UNIT), int(-1));
        assert_eq!(t.bar_d(&w).unwrap(), expected);
    }

    #[test]
    fn k_zero_internal_differential() {
        // A = C = MS2 with identity maps: d(α;;β) = (dα;;β) + (-1)^{|α|}(α;;dβ)
        let b = Arc::new(build_free(&ms2(), 8).unwrap());
        let id = AlgebraMorphism::identity(b.clone());
        let t = BarTriple::new(id.clone(), id).unwrap();
        let e3 = Basis::new(3, 0);
        let w = BarWord::new(e3, vec![], e3);
        let mut expected = BarChain::new();
        expected.add(BarWord::new(Basis::new(4, 0), vec![], e3), int(1));
        expected.add(BarWord::new(e3, vec![], Basis::new(4, 0)), int(-1));
        assert_eq!(t.bar_d(&w).unwrap(), expected);
    }

    #[test]
    fn delta_with_power_map() {
        // A = Q[t], B = Q[c], f(c) = t^2, C = Q via augmentation
        let top = 9;
        let b = Arc::new(build_free(&GeneratorPresentation::new("Qc").generator("c", 4), top).unwrap());
        let a = Arc::new(build_free(&GeneratorPresentation::new("Qt").generator("t", 2), top).unwrap());
        let t2 = a.evaluate(&Polynomial::monomial(int(1), &[("t", 2)])).unwrap();
        let f = AlgebraMorphism::from_generator_images("f", b.clone(), a, &[("c".into(), t2)]).unwrap();
        let g = AlgebraMorphism::augmentation_map(b);
        let t = BarTriple::new(f, g).unwrap();
        let w = BarWord::new(Basis::UNIT, vec![Basis::new(4, 0)], Basis::UNIT);
        // -δw = (+1)(t²;;1) + (-1)^{0+1}(1;;g(c)) and g(c) = 0
        let mut expected = BarChain::new();
        expected.add(BarWord::new(Basis::new(4, 0), vec![], Basis::UNIT), int(-1));
        assert_eq!(t.bar_delta(&w).unwrap(), expected);
        // bar degree goes up by one, total degree by one
        assert_eq!(expected.total_degree(), Some(w.total_degree() + 1));
        BarWindow::build(t, 8).unwrap();
    }

    #[test]
    fn window_needs_one_extra_degree() {
        let t = over_field(s3(), 6);
        assert!(matches!(BarWindow::build(t, 6), Err(Error::Truncation { .. })));
    }

    #[test]
    fn degree_one_middle_is_rejected() {
        let b = Arc::new(build_free(&GeneratorPresentation::new("S1").generator("y", 1), 4).unwrap());
        let f = AlgebraMorphism::augmentation_map(b.clone());
        let g = AlgebraMorphism::augmentation_map(b);
        assert!(matches!(
            BarTriple::new(f, g),
            Err(Error::MiddleAlgebraNotSimplyConnected { degree: 1 })
        ));
    }

    #[test]
    fn augmentation_values() {
        assert_eq!(bar_augmentation(&BarChain::word(BarWord::unit())), int(1));
        assert_eq!(
            bar_augmentation(&BarChain::word(BarWord::unit()).scaled(&int(3))),
            int(3)
        );
        let x = Basis::new(3, 0);
        let w = BarChain::word(BarWord::new(Basis::UNIT, vec![x], Basis::UNIT));
        assert_eq!(bar_augmentation(&w), int(0));
    }

    #[test]
    fn theta_kills_positive_bar_degree() {
        let top = 8;
        let t = over_field(ms2(), top);
        let q = Arc::new(GradedAlgebra::ground_field(top));
        let theta = Theta::new(&t, AlgebraMorphism::identity(q.clone()), AlgebraMorphism::identity(q)).unwrap();
        assert_eq!(theta.apply_word(&BarWord::unit()).1, SparseVec::unit(0));
        let w = BarWord::new(Basis::UNIT, vec![Basis::new(2, 0)], Basis::UNIT);
        assert!(theta.apply_word(&w).1.is_zero());
        let window = BarWindow::build(t, 7).unwrap();
        assert_eq!(theta.chain_map_failure(&window), None);
    }

    #[test]
    fn theta_rejects_noncommuting_square() {
        // f = identity on Q[c], g = augmentation; T = Q[c] with u = id, v = unit
        let top = 9;
        let b = Arc::new(build_free(&GeneratorPresentation::new("Qc").generator("c", 4), top).unwrap());
        let f = AlgebraMorphism::identity(b.clone());
        let g = AlgebraMorphism::augmentation_map(b.clone());
        let t = BarTriple::new(f, g).unwrap();
        let u = AlgebraMorphism::identity(b.clone());
        let v = AlgebraMorphism::unit_map(b);
        assert!(matches!(
            Theta::new(&t, u, v),
            Err(Error::SquareNotCommuting { degree: 4 })
        ));
    }

    #[test]
    fn identity_ladder_is_identity() {
        let t = over_field(ms2(), 8);
        let w = BarWindow::build(t.clone(), 7).unwrap();
        let maps = induced_bar_map(&BarLadder::identity(&t), &w, &w).unwrap();
        for (n, m) in maps.iter().enumerate() {
            assert_eq!(*m, RationalMatrix::identity(w.dim(n)));
        }
    }

    #[test]
    fn zero_vertical_map_is_rejected() {
        let t = over_field(ms2(), 8);
        let w = BarWindow::build(t.clone(), 7).unwrap();
        let mut ladder = BarLadder::identity(&t);
        ladder.middle = AlgebraMorphism::zero(t.middle.clone(), t.middle.clone());
        assert!(matches!(
            induced_bar_map(&ladder, &w, &w),
            Err(Error::InvalidMorphism { .. })
        ));
    }
}
