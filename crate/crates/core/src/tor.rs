//! Cohomology of bar windows and the Tor algebra.
//!
//! For a triple of algebras with zero differential the total differential
//! is the bar differential alone. It is homogeneous for the bar degree, so
//! the cohomology splits into bigrades `(-k, m)` (bar degree, tensor degree)
//! and is `Tor_{H(B)}(H(X), H(E))`, the `E₂` page of the Eilenberg–Moore
//! spectral sequence. The algebra structure comes from multiplying cocycle
//! representatives with the shuffle product and projecting back.
//!
//! [`koszul_tor_oracle`] recomputes Tor dimensions over a free base from a
//! small Koszul-type complex, independently of the bar construction.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{AlgebraMorphism, GradedAlgebra};
use crate::bar::{induced_bar_map, BarLadder, BarTriple, BarWindow};
use crate::error::Error;
use crate::linalg::{cohomology_at, sign, Projector, Rational, RationalMatrix, SparseVec};

/// A cohomology class of a bar window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorClass {
    pub total_degree: usize,
    /// `(bar degree, tensor degree)` when the window is bigraded.
    pub bigrade: Option<(i64, usize)>,
    pub label: String,
}

/// Cohomology of a bar window up to `valid_up_to`, with its product.
#[derive(Clone, Debug)]
pub struct TorResult {
    top: usize,
    total_dims: Vec<usize>,
    bigraded: Option<BTreeMap<(i64, usize), usize>>,
    classes: Vec<Vec<TorClass>>,
    reps: Vec<Vec<SparseVec>>,
    projectors: Vec<Projector>,
    products: BTreeMap<(usize, usize, usize, usize), SparseVec>,
}

impl TorResult {
    /// Top degree of the window the result was computed from.
    pub fn window_top(&self) -> usize {
        self.top
    }

    /// Last degree with determined cohomology.
    pub fn valid_up_to(&self) -> usize {
        self.top - 1
    }

    /// Dimensions in total degrees `0..=valid_up_to`.
    pub fn total_dims(&self) -> &[usize] {
        &self.total_dims
    }

    pub fn total_dim(&self, n: usize) -> usize {
        self.total_dims.get(n).copied().unwrap_or(0)
    }

    /// Dimensions per `(bar degree, tensor degree)`, present only for
    /// cohomology triples. Bigrades with zero dimension are omitted.
    pub fn bigraded_dims(&self) -> Option<&BTreeMap<(i64, usize), usize>> {
        self.bigraded.as_ref()
    }

    pub fn is_bigraded(&self) -> bool {
        self.bigraded.is_some()
    }

    pub fn classes(&self, n: usize) -> &[TorClass] {
        &self.classes[n]
    }

    pub fn representative(&self, n: usize, i: usize) -> &SparseVec {
        &self.reps[n][i]
    }

    /// Class of a cocycle of the window; `None` if it is not a cocycle.
    pub fn class_of(&self, n: usize, cocycle: &SparseVec) -> Option<SparseVec> {
        self.projectors.get(n)?.project(cocycle)
    }

    /// Structure constants of `class(p, i) · class(q, j)`, or `None` when
    /// the product lands above the valid range (unknown, not zero).
    pub fn product(&self, p: usize, i: usize, q: usize, j: usize) -> Option<&SparseVec> {
        self.products.get(&(p, i, q, j))
    }

    /// All computed products, keyed by `(p, i, q, j)`.
    pub fn products(&self) -> &BTreeMap<(usize, usize, usize, usize), SparseVec> {
        &self.products
    }

    /// Class of the product of two arbitrary cocycles.
    pub fn multiply_cocycles(
        &self,
        window: &BarWindow,
        p: usize,
        z1: &SparseVec,
        q: usize,
        z2: &SparseVec,
    ) -> Result<SparseVec, Error> {
        if p + q > self.valid_up_to() {
            return Err(Error::DegreeOverflow {
                degree: p + q,
                top: self.valid_up_to(),
            });
        }
        let prod = window.product_vectors(p, z1, q, z2)?;
        self.class_of(p + q, &prod)
            .ok_or_else(|| Error::Consistency(format!("product of cocycles is not a cocycle in degree {}", p + q)))
    }
}

/// Word indices of total degree `n`, grouped by number of middle entries.
fn blocks(window: &BarWindow, n: usize) -> BTreeMap<usize, Vec<usize>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    if n > window.top() {
        return out;
    }
    for (i, w) in window.words(n).iter().enumerate() {
        out.entry(w.length()).or_default().push(i);
    }
    out
}

/// Cohomology of `D` in total degrees `0..top`, with products.
pub fn bar_cohomology(window: &BarWindow) -> Result<TorResult, Error> {
    let top = window.top();
    if top == 0 {
        return Err(Error::Truncation {
            context: "bar cohomology needs a window of top degree at least 1",
            expected: 1,
            found: 0,
        });
    }
    let bigraded = window.triple().is_cohomology_triple();
    let mut total_dims = Vec::with_capacity(top);
    let mut classes = Vec::with_capacity(top);
    let mut reps_all = Vec::with_capacity(top);
    let mut projectors = Vec::with_capacity(top);
    let mut bidims = BTreeMap::new();
    for n in 0..top {
        let d_in = window.total_into(n);
        let d_out = window.total(n);
        if bigraded {
            let here = blocks(window, n);
            let below = blocks(window, n.wrapping_sub(1));
            let above = blocks(window, n + 1);
            let mut reps = Vec::new();
            let mut cls = Vec::new();
            for (&k, idx) in &here {
                let empty = Vec::new();
                let src = if n == 0 {
                    &empty
                } else {
                    below.get(&(k + 1)).unwrap_or(&empty)
                };
                let dst = if k == 0 {
                    &empty
                } else {
                    above.get(&(k - 1)).unwrap_or(&empty)
                };
                let block_in = d_in.submatrix(idx, src);
                let block_out = d_out.submatrix(dst, idx);
                let h = cohomology_at(&block_in, &block_out)?;
                if h.dim > 0 {
                    let w = &window.words(n)[idx[0]];
                    let m = n + k;
                    bidims.insert((w.bar_degree(), m), h.dim);
                    for (c, z) in h.reps.iter().enumerate() {
                        let lifted: SparseVec = z.iter().map(|(i, x)| (idx[i], x.clone())).collect();
                        reps.push(lifted);
                        cls.push(TorClass {
                            total_degree: n,
                            bigrade: Some((w.bar_degree(), m)),
                            label: format!("u({},{})#{}", w.bar_degree(), m, c),
                        });
                    }
                }
            }
            let boundaries = d_in.columns();
            projectors.push(Projector::new(&boundaries, &reps)?);
            total_dims.push(reps.len());
            reps_all.push(reps);
            classes.push(cls);
        } else {
            let h = cohomology_at(&d_in, d_out)?;
            total_dims.push(h.dim);
            classes.push(
                (0..h.dim)
                    .map(|c| TorClass {
                        total_degree: n,
                        bigrade: None,
                        label: format!("u{n}#{c}"),
                    })
                    .collect(),
            );
            reps_all.push(h.reps);
            projectors.push(h.projector);
        }
    }
    let mut result = TorResult {
        top,
        total_dims,
        bigraded: bigraded.then_some(bidims),
        classes,
        reps: reps_all,
        projectors,
        products: BTreeMap::new(),
    };
    let valid = result.valid_up_to();
    let mut products = BTreeMap::new();
    for p in 0..=valid {
        for q in 0..=valid - p {
            for i in 0..result.total_dim(p) {
                for j in 0..result.total_dim(q) {
                    let class = result.multiply_cocycles(window, p, &result.reps[p][i], q, &result.reps[q][j])?;
                    products.insert((p, i, q, j), class);
                }
            }
        }
    }
    result.products = products;
    Ok(result)
}

/// `Tor_{H_B}(H_X, H_E)` for a triple of algebras with zero differential,
/// computed on a window of top degree `top`.
pub fn tor_algebra(triple: &BarTriple, top: usize) -> Result<TorResult, Error> {
    for alg in [&triple.left, &triple.middle, &triple.right] {
        if let Some(degree) = (0..alg.top()).find(|&n| !alg.diff(n).expect("below top").is_zero()) {
            return Err(Error::NonzeroDifferential {
                name: alg.name().to_string(),
                degree,
            });
        }
    }
    let window = BarWindow::build(triple.clone(), top)?;
    bar_cohomology(&window)
}

/// Dimensions produced by [`koszul_tor_oracle`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleDims {
    pub valid_up_to: usize,
    pub total_dims: Vec<usize>,
    /// `(bar degree, tensor degree) -> dim`, zero entries omitted.
    pub bigraded: BTreeMap<(i64, usize), usize>,
}

/// Basis element of the Koszul complex: `α ⊗ β ⊗ y^(a)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct KoszulWord {
    left: (usize, usize),
    right: (usize, usize),
    exps: Vec<u32>,
}

/// Tor dimensions over a free graded-commutative base `H_B` with zero
/// differential, from the complex `(H_X ⊗ H_E) ⊗ Γ(y₁, …, y_r)`.
///
/// There is one variable `yᵢ` of degree `|xᵢ| - 1` per base generator `xᵢ`:
/// an exterior variable when `xᵢ` is even, a divided power variable when it
/// is odd. The differential is the derivation with
/// `d yᵢ = f(xᵢ) ⊗ 1 - 1 ⊗ g(xᵢ)`. Results are valid up to `top - 1`; the
/// module algebras must be known up to `top`.
pub fn koszul_tor_oracle(f: &AlgebraMorphism, g: &AlgebraMorphism, top: usize) -> Result<OracleDims, Error> {
    let base = f.source();
    let (hx, he) = (f.target(), g.target());
    let gens = base
        .generators()
        .filter(|_| base.is_relation_free())
        .ok_or_else(|| Error::NotPolynomialBase {
            reason: format!("`{}` is not given by relation-free generators", base.name()),
        })?
        .to_vec();
    if !base.has_zero_differential() {
        return Err(Error::NotPolynomialBase {
            reason: format!("`{}` has a nonzero differential", base.name()),
        });
    }
    for alg in [hx, he] {
        if !alg.has_zero_differential() {
            return Err(Error::NotPolynomialBase {
                reason: format!("module `{}` has a nonzero differential", alg.name()),
            });
        }
        if alg.top() < top {
            return Err(Error::Truncation {
                context: "Koszul oracle modules",
                expected: top,
                found: alg.top(),
            });
        }
    }
    let degs: Vec<usize> = gens.iter().map(|g| g.degree).collect();
    // images of the generators in H_X and H_E
    let mut fx = Vec::new();
    let mut gx = Vec::new();
    for gen in &gens {
        let (d, v) = base
            .generator_element(&gen.name)?
            .unwrap_or((gen.degree, SparseVec::new()));
        let fv = if d <= hx.top() {
            f.apply(d, &v)
        } else {
            SparseVec::new()
        };
        let gv = if d <= he.top() {
            g.apply(d, &v)
        } else {
            SparseVec::new()
        };
        fx.push(fv);
        gx.push(gv);
    }

    let words: Vec<Vec<KoszulWord>> = (0..=top).map(|n| koszul_words(hx, he, &degs, n)).collect();
    let index: Vec<std::collections::HashMap<KoszulWord, usize>> = words
        .iter()
        .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
        .collect();
    let mut diffs = Vec::with_capacity(top);
    for n in 0..top {
        let cols: Vec<SparseVec> = words[n]
            .iter()
            .map(|w| {
                let mut out = SparseVec::new();
                let base_sign = w.left.0 + w.right.0;
                let mut passed = 0usize;
                for i in 0..degs.len() {
                    if w.exps[i] > 0 {
                        let s = sign(base_sign + (1 + degs[i]) * passed);
                        let mut exps = w.exps.clone();
                        exps[i] -= 1;
                        // (α ⊗ β)(f(x) ⊗ 1) = (-1)^{|β||x|} αf(x) ⊗ β
                        let ax = hx
                            .multiply(w.left.0, &SparseVec::unit(w.left.1), degs[i], &fx[i])
                            .expect("inside window");
                        let s_left = &s * sign(w.right.0 * degs[i]);
                        for (j, c) in ax.iter() {
                            let nw = KoszulWord {
                                left: (w.left.0 + degs[i], j),
                                right: w.right,
                                exps: exps.clone(),
                            };
                            out.add_at(index[n + 1][&nw], &(c * &s_left));
                        }
                        // -(α ⊗ β)(1 ⊗ g(x)) = -α ⊗ βg(x)
                        let bg = he
                            .multiply(w.right.0, &SparseVec::unit(w.right.1), degs[i], &gx[i])
                            .expect("inside window");
                        for (j, c) in bg.iter() {
                            let nw = KoszulWord {
                                left: w.left,
                                right: (w.right.0 + degs[i], j),
                                exps: exps.clone(),
                            };
                            out.add_at(index[n + 1][&nw], &-(c * &s));
                        }
                    }
                    passed += w.exps[i] as usize * (degs[i] - 1);
                }
                out
            })
            .collect();
        diffs.push(RationalMatrix::from_columns(words[n + 1].len(), &cols));
    }
    for n in 0..top.saturating_sub(1) {
        if !diffs[n + 1].mul(&diffs[n])?.is_zero() {
            return Err(Error::SignInconsistency {
                identity: "Koszul d^2 = 0",
                degree: n,
            });
        }
    }
    let hom = |w: &KoszulWord| w.exps.iter().sum::<u32>() as usize;
    let mut total_dims = Vec::with_capacity(top);
    let mut bigraded = BTreeMap::new();
    for n in 0..top {
        let mut by_k: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, w) in words[n].iter().enumerate() {
            by_k.entry(hom(w)).or_default().push(i);
        }
        let group = |deg: usize, k: usize| -> Vec<usize> {
            words[deg]
                .iter()
                .enumerate()
                .filter(|(_, w)| hom(w) == k)
                .map(|(i, _)| i)
                .collect()
        };
        let mut total = 0;
        for (&k, idx) in &by_k {
            let src = if n == 0 { Vec::new() } else { group(n - 1, k + 1) };
            let dst = if k == 0 { Vec::new() } else { group(n + 1, k - 1) };
            let d_in = if n == 0 {
                RationalMatrix::zeros(idx.len(), 0)
            } else {
                diffs[n - 1].submatrix(idx, &src)
            };
            let d_out = diffs[n].submatrix(&dst, idx);
            let h = cohomology_at(&d_in, &d_out)?;
            if h.dim > 0 {
                bigraded.insert((-(k as i64), n + k), h.dim);
                total += h.dim;
            }
        }
        total_dims.push(total);
    }
    Ok(OracleDims {
        valid_up_to: top - 1,
        total_dims,
        bigraded,
    })
}

fn koszul_words(hx: &GradedAlgebra, he: &GradedAlgebra, degs: &[usize], n: usize) -> Vec<KoszulWord> {
    fn exps(degs: &[usize], idx: usize, rest: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx == degs.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let step = degs[idx] - 1;
        let max = if degs[idx].is_multiple_of(2) { 1 } else { u32::MAX };
        let mut e = 0u32;
        loop {
            let used = step * e as usize;
            if used > rest {
                break;
            }
            cur.push(e);
            exps(degs, idx + 1, rest - used, cur, out);
            cur.pop();
            if e == max || step == 0 {
                break;
            }
            e += 1;
        }
    }
    let mut out = Vec::new();
    for a in 0..=n.min(hx.top()) {
        for b in 0..=(n - a).min(he.top()) {
            let mut es = Vec::new();
            exps(degs, 0, n - a - b, &mut Vec::new(), &mut es);
            for i in 0..hx.dim(a) {
                for j in 0..he.dim(b) {
                    for e in &es {
                        out.push(KoszulWord {
                            left: (a, i),
                            right: (b, j),
                            exps: e.clone(),
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Degreewise comparison of two windows' cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub valid_up_to: usize,
    /// `(degree, dim of first, dim of second)`.
    pub rows: Vec<(usize, usize, usize)>,
    pub equal: bool,
    /// Whether the ladder-induced map is an isomorphism in every degree,
    /// when a ladder was supplied.
    pub induced_isomorphism: Option<bool>,
}

/// Compares cohomology dimensions of two windows of the same top degree
/// and, given a ladder, checks that the induced map is an isomorphism.
pub fn compare_windows(w1: &BarWindow, w2: &BarWindow, ladder: Option<&BarLadder>) -> Result<CompareReport, Error> {
    if w1.top() != w2.top() {
        return Err(Error::Truncation {
            context: "compared windows must share the top degree",
            expected: w1.top(),
            found: w2.top(),
        });
    }
    let h1 = bar_cohomology(w1)?;
    let h2 = bar_cohomology(w2)?;
    let rows: Vec<(usize, usize, usize)> = (0..=h1.valid_up_to())
        .map(|n| (n, h1.total_dim(n), h2.total_dim(n)))
        .collect();
    let equal = rows.iter().all(|&(_, a, b)| a == b);
    let induced_isomorphism = match ladder {
        None => None,
        Some(l) => {
            let maps = induced_bar_map(l, w1, w2)?;
            let mut iso = true;
            for n in 0..=h1.valid_up_to() {
                let cols = (0..h1.total_dim(n))
                    .map(|i| {
                        h2.class_of(n, &maps[n].apply(h1.representative(n, i)))
                            .ok_or_else(|| Error::Consistency(format!("ladder image is not a cocycle in degree {n}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let m = RationalMatrix::from_columns(h2.total_dim(n), &cols);
                if h1.total_dim(n) != h2.total_dim(n) || m.rank() != h1.total_dim(n) {
                    iso = false;
                }
            }
            Some(iso)
        }
    };
    Ok(CompareReport {
        valid_up_to: h1.valid_up_to(),
        rows,
        equal,
        induced_isomorphism,
    })
}

/// Renders structure constants as `a u1 + b u2`.
pub fn render_class(result: &TorResult, n: usize, v: &SparseVec) -> String {
    crate::algebra::render_combination(
        v.iter()
            .map(|(i, x): (usize, &Rational)| (x.clone(), result.classes(n)[i].label.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::presentation::{build_free, GeneratorPresentation, Polynomial};
    use std::sync::Arc;

    fn over_field(middle: GeneratorPresentation, alg_top: usize) -> BarTriple {
        let b = Arc::new(build_free(&middle, alg_top).unwrap());
        BarTriple::new(
            AlgebraMorphism::augmentation_map(b.clone()),
            AlgebraMorphism::augmentation_map(b),
        )
        .unwrap()
    }

    #[test]
    fn trivial_triple() {
        let t = over_field(GeneratorPresentation::new("Q"), 6);
        let r = tor_algebra(&t, 5).unwrap();
        assert_eq!(r.total_dims(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn loop_space_of_three_sphere() {
        let t = over_field(GeneratorPresentation::new("S3").generator("x", 3), 11);
        let window = BarWindow::build(t, 10).unwrap();
        let r = bar_cohomology(&window).unwrap();
        assert_eq!(r.total_dims(), &[1, 0, 1, 0, 1, 0, 1, 0, 1, 0]);
        // u2 · u2 = 2 u4 when classes are represented by (1;x;1), (1;x,x;1)
        let w2 = window.index_of(&window.words(2)[0]).unwrap();
        let w4 = window.index_of(&window.words(4)[0]).unwrap();
        assert_eq!(r.representative(2, 0), &SparseVec::unit(w2));
        assert_eq!(r.representative(4, 0), &SparseVec::unit(w4));
        assert_eq!(r.product(2, 0, 2, 0), Some(&SparseVec::from_dense(&[int(2)])));
        assert_eq!(r.product(6, 0, 4, 0), None);
    }

    #[test]
    fn koszul_over_even_generator() {
        let b = Arc::new(build_free(&GeneratorPresentation::new("Qc").generator("c", 2), 8).unwrap());
        let f = AlgebraMorphism::augmentation_map(b.clone());
        let g = AlgebraMorphism::augmentation_map(b);
        let o = koszul_tor_oracle(&f, &g, 8).unwrap();
        assert_eq!(o.total_dims, vec![1, 1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn koszul_over_two_even_generators() {
        let pres = GeneratorPresentation::new("BSp").generator("c4", 4).generator("c8", 8);
        let b = Arc::new(build_free(&pres, 12).unwrap());
        let f = AlgebraMorphism::augmentation_map(b.clone());
        let g = AlgebraMorphism::augmentation_map(b);
        let o = koszul_tor_oracle(&f, &g, 12).unwrap();
        // Λ(x3, x7): degrees 0, 3, 7, 10
        let mut expected = vec![0; 12];
        for d in [0, 3, 7, 10] {
            expected[d] = 1;
        }
        assert_eq!(o.total_dims, expected);
    }

    #[test]
    fn koszul_over_odd_generator_is_divided_powers() {
        let b = Arc::new(build_free(&GeneratorPresentation::new("S3").generator("x", 3), 10).unwrap());
        let f = AlgebraMorphism::augmentation_map(b.clone());
        let g = AlgebraMorphism::augmentation_map(b);
        let o = koszul_tor_oracle(&f, &g, 10).unwrap();
        assert_eq!(o.total_dims, vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn koszul_rejects_relations() {
        let pres = GeneratorPresentation::new("HS2")
            .generator("x", 2)
            .relation(Polynomial::monomial(int(1), &[("x", 2)]));
        let b = Arc::new(build_free(&pres, 6).unwrap());
        let f = AlgebraMorphism::augmentation_map(b.clone());
        let g = AlgebraMorphism::augmentation_map(b);
        assert!(matches!(
            koszul_tor_oracle(&f, &g, 6),
            Err(Error::NotPolynomialBase { .. })
        ));
    }

    #[test]
    fn nonzero_differential_rejected_by_tor_algebra() {
        let pres = GeneratorPresentation::new("MS2")
            .generator("e2", 2)
            .generator("e3", 3)
            .differential("e3", Polynomial::monomial(int(1), &[("e2", 2)]));
        let t = over_field(pres, 7);
        assert!(matches!(tor_algebra(&t, 6), Err(Error::NonzeroDifferential { .. })));
    }

    fn hs2() -> GeneratorPresentation {
        GeneratorPresentation::new("HS2")
            .generator("x", 2)
            .relation(Polynomial::monomial(int(1), &[("x", 2)]))
    }

    #[test]
    fn loop_space_of_two_sphere_from_cohomology() {
        let t = over_field(hs2(), 9);
        let r = tor_algebra(&t, 8).unwrap();
        assert_eq!(r.total_dims(), &[1; 8]);
        for &(k, m) in r.bigraded_dims().unwrap().keys() {
            assert!(m >= (-2 * k) as usize, "vanishing line violated at ({k},{m})");
        }
    }

    #[test]
    fn pullback_of_square_map() {
        let c = Arc::new(build_free(&GeneratorPresentation::new("Qc").generator("c", 4), 9).unwrap());
        let t = Arc::new(build_free(&GeneratorPresentation::new("Qt").generator("t", 2), 9).unwrap());
        let t2 = t.evaluate(&Polynomial::monomial(int(1), &[("t", 2)])).unwrap();
        let f = AlgebraMorphism::from_generator_images("sq", c.clone(), t, &[("c".into(), t2)]).unwrap();
        let g = AlgebraMorphism::augmentation_map(c);
        let oracle = koszul_tor_oracle(&f, &g, 8).unwrap();
        let triple = BarTriple::new(f, g).unwrap();
        let r = tor_algebra(&triple, 8).unwrap();
        assert_eq!(r.total_dims(), &[1, 0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(r.total_dims(), oracle.total_dims.as_slice());
        assert_eq!(r.bigraded_dims().unwrap(), &oracle.bigraded);
        assert!(r.product(2, 0, 2, 0).unwrap().is_zero());
    }

    #[test]
    fn minimal_model_and_cohomology_agree_through_ladder() {
        let ms2 = Arc::new(build_free(&crate::presentation::tests::minimal_s2(), 8).unwrap());
        let hs2 = Arc::new(build_free(&hs2(), 8).unwrap());
        let x = hs2.generator_element("x").unwrap().unwrap();
        let collapse = AlgebraMorphism::from_generator_images(
            "collapse",
            ms2.clone(),
            hs2.clone(),
            &[("e2".into(), x), ("e3".into(), (3, SparseVec::new()))],
        )
        .unwrap();
        let t1 = BarTriple::new(
            AlgebraMorphism::augmentation_map(ms2.clone()),
            AlgebraMorphism::augmentation_map(ms2),
        )
        .unwrap();
        let t2 = BarTriple::new(
            AlgebraMorphism::augmentation_map(hs2.clone()),
            AlgebraMorphism::augmentation_map(hs2),
        )
        .unwrap();
        let ladder = BarLadder {
            left: AlgebraMorphism::identity(t1.left.clone()),
            middle: collapse,
            right: AlgebraMorphism::identity(t1.right.clone()),
        };
        let w1 = BarWindow::build(t1, 7).unwrap();
        let w2 = BarWindow::build(t2, 7).unwrap();
        let report = compare_windows(&w1, &w2, Some(&ladder)).unwrap();
        assert!(report.equal);
        assert_eq!(report.induced_isomorphism, Some(true));
    }

    #[test]
    fn different_bases_are_told_apart() {
        let w1 = BarWindow::build(over_field(crate::presentation::tests::sphere3(), 7), 6).unwrap();
        let w2 = BarWindow::build(over_field(hs2(), 7), 6).unwrap();
        let report = compare_windows(&w1, &w2, None).unwrap();
        assert!(!report.equal);
        assert_eq!(report.rows[1], (1, 0, 1));
    }
}
