//! Shuffle product on the normalized bar complex.
//!
//! `(a; b₁…b_k; c) • (x; y₁…y_l; z) = Σ_σ (-1)^{η + n_σ} (ax; σ(b; y); cz)`
//! where `η = |c||x| + |x|(Σ|bᵢ| - k) + |c|(Σ|yⱼ| - l)` and `n_σ` sums
//! `(|bᵢ| - 1)(|yⱼ| - 1)` over the pairs where `bᵢ` is moved past `yⱼ`.
//!
//! The product only interleaves middle entries and never multiplies them, so
//! the product of two normalized words is again normalized.

use serde::{Deserialize, Serialize};

use crate::bar::{BarChain, BarTriple, BarWindow, BarWord, Basis, Theta};
use crate::error::Error;
use crate::linalg::{sign, SparseVec};

/// One `(p, q)` shuffle: the positions taken by the first block, and the
/// pairs `(i, j)` (zero based) such that the `i`-th entry of the first block
/// ends up after the `j`-th entry of the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub first: Vec<usize>,
    pub moved: Vec<(usize, usize)>,
}

impl Shuffle {
    /// Interleaves two sequences according to the shuffle.
    pub fn merge<T: Clone>(&self, a: &[T], b: &[T]) -> Vec<T> {
        let n = a.len() + b.len();
        let mut out = Vec::with_capacity(n);
        let (mut i, mut j) = (0, 0);
        for pos in 0..n {
            if i < a.len() && self.first[i] == pos {
                out.push(a[i].clone());
                i += 1;
            } else {
                out.push(b[j].clone());
                j += 1;
            }
        }
        out
    }
}

/// All `C(p + q, p)` shuffles, ordered lexicographically by the positions
/// of the first block.
pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    fn go(p: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        let remaining = p - cur.len();
        for pos in start..=n - remaining {
            cur.push(pos);
            go(p, n, pos + 1, cur, out);
            cur.pop();
        }
    }
    let mut subsets = Vec::new();
    go(p, p + q, 0, &mut Vec::new(), &mut subsets);
    subsets
        .into_iter()
        .map(|first| {
            let moved = first
                .iter()
                .enumerate()
                .flat_map(|(i, &pos)| (0..pos - i).map(move |j| (i, j)))
                .collect();
            Shuffle { first, moved }
        })
        .collect()
}

impl BarTriple {
    /// Shuffle product of two words, without any window bound.
    pub fn shuffle_product(&self, w1: &BarWord, w2: &BarWord) -> Result<BarChain, Error> {
        let (a, c) = (w1.left, w1.right);
        let (x, z) = (w2.left, w2.right);
        let ax = self
            .left
            .basis_product(a.degree, a.index, x.degree, x.index)
            .ok_or(Error::DegreeOverflow {
                degree: a.degree + x.degree,
                top: self.left.top(),
            })?;
        let cz = self
            .right
            .basis_product(c.degree, c.index, z.degree, z.index)
            .ok_or(Error::DegreeOverflow {
                degree: c.degree + z.degree,
                top: self.right.top(),
            })?;
        let mut out = BarChain::new();
        if ax.is_zero() || cz.is_zero() {
            return Ok(out);
        }
        let susp_b: usize = w1.middle.iter().map(|b| b.degree - 1).sum();
        let susp_y: usize = w2.middle.iter().map(|y| y.degree - 1).sum();
        let eta = c.degree * x.degree + x.degree * susp_b + c.degree * susp_y;
        for s in shuffles(w1.middle.len(), w2.middle.len()) {
            let n_sigma: usize = s
                .moved
                .iter()
                .map(|&(i, j)| (w1.middle[i].degree - 1) * (w2.middle[j].degree - 1))
                .sum();
            let sg = sign(eta + n_sigma);
            let middle = s.merge(&w1.middle, &w2.middle);
            for (i, xi) in ax.iter() {
                for (j, xj) in cz.iter() {
                    let w = BarWord::new(
                        Basis::new(a.degree + x.degree, i),
                        middle.clone(),
                        Basis::new(c.degree + z.degree, j),
                    );
                    out.add(w, &(xi * xj) * &sg);
                }
            }
        }
        Ok(out)
    }

    /// Bilinear extension of [`shuffle_product`](Self::shuffle_product).
    pub fn shuffle_product_chains(&self, c1: &BarChain, c2: &BarChain) -> Result<BarChain, Error> {
        let mut out = BarChain::new();
        for (w1, x1) in c1.terms() {
            for (w2, x2) in c2.terms() {
                out.add_chain(&self.shuffle_product(w1, w2)?, &(x1 * x2));
            }
        }
        Ok(out)
    }
}

impl BarWindow {
    /// Shuffle product inside the window. Products that would land above
    /// the top degree are reported as [`Error::DegreeOverflow`].
    pub fn product(&self, w1: &BarWord, w2: &BarWord) -> Result<BarChain, Error> {
        let degree = w1.total_degree() + w2.total_degree();
        if degree > self.top() {
            return Err(Error::DegreeOverflow {
                degree,
                top: self.top(),
            });
        }
        self.triple().shuffle_product(w1, w2)
    }

    pub fn product_chains(&self, c1: &BarChain, c2: &BarChain) -> Result<BarChain, Error> {
        if let (Some(p), Some(q)) = (c1.total_degree(), c2.total_degree()) {
            if p + q > self.top() {
                return Err(Error::DegreeOverflow {
                    degree: p + q,
                    top: self.top(),
                });
            }
        }
        self.triple().shuffle_product_chains(c1, c2)
    }

    /// Product of coordinate vectors in degrees `p` and `q`.
    pub fn product_vectors(&self, p: usize, v1: &SparseVec, q: usize, v2: &SparseVec) -> Result<SparseVec, Error> {
        let prod = self.product_chains(&self.chain(p, v1), &self.chain(q, v2))?;
        self.coordinates(p + q, &prod)
    }
}

impl Theta {
    /// First pair of words with `θ(w1 • w2) ≠ θ(w1) θ(w2)`, over every pair
    /// whose product fits in the window.
    pub fn multiplicative_failure(&self, window: &BarWindow) -> Result<Option<(BarWord, BarWord)>, Error> {
        let t = self.target();
        let top = window.top().min(t.top());
        for p in 0..=top {
            for q in 0..=top - p {
                for w1 in window.words(p) {
                    let (_, a) = self.apply_word(w1);
                    for w2 in window.words(q) {
                        let lhs = self.apply(&window.product(w1, w2)?);
                        let (_, b) = self.apply_word(w2);
                        let rhs = t.multiply(p, &a, q, &b).expect("inside the target");
                        if lhs != rhs {
                            return Ok(Some((w1.clone(), w2.clone())));
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// First failure found by [`check_cdga_structure`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CdgaViolation {
    Unit { word: String },
    Normalization { left: String, right: String },
    Commutativity { left: String, right: String },
    Associativity { a: String, b: String, c: String },
    Leibniz { left: String, right: String },
}

/// Exhaustively checks the unit law, normalization of products, graded
/// commutativity, associativity and the Leibniz rule for `D` on all basis
/// words whose degrees fit in the window. `None` means all hold.
pub fn check_cdga_structure(window: &BarWindow) -> Result<Option<CdgaViolation>, Error> {
    let top = window.top();
    let name = |w: &BarWord| format!("{w:?}");
    let unit = BarWord::unit();
    for n in 0..=top {
        for w in window.words(n) {
            let expected = BarChain::word(w.clone());
            if window.product(&unit, w)? != expected || window.product(w, &unit)? != expected {
                return Ok(Some(CdgaViolation::Unit { word: name(w) }));
            }
        }
    }
    for p in 1..=top {
        for q in p..=top - p {
            for w1 in window.words(p) {
                for w2 in window.words(q) {
                    let ab = window.product(w1, w2)?;
                    if ab.terms().any(|(w, _)| w.middle.iter().any(|b| b.degree < 2)) {
                        return Ok(Some(CdgaViolation::Normalization {
                            left: name(w1),
                            right: name(w2),
                        }));
                    }
                    let ba = window.product(w2, w1)?;
                    if ab != ba.scaled(&sign(p * q)) {
                        return Ok(Some(CdgaViolation::Commutativity {
                            left: name(w1),
                            right: name(w2),
                        }));
                    }
                }
            }
        }
    }
    for p in 1..=top {
        for q in 1..=top.saturating_sub(p) {
            for r in 1..=top.saturating_sub(p + q) {
                for w1 in window.words(p) {
                    for w2 in window.words(q) {
                        let ab = window.product(w1, w2)?;
                        for w3 in window.words(r) {
                            let left = window.product_chains(&ab, &BarChain::word(w3.clone()))?;
                            let bc = window.product(w2, w3)?;
                            let right = window.product_chains(&BarChain::word(w1.clone()), &bc)?;
                            if left != right {
                                return Ok(Some(CdgaViolation::Associativity {
                                    a: name(w1),
                                    b: name(w2),
                                    c: name(w3),
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    for p in 0..top {
        for q in 0..top - p {
            for w1 in window.words(p) {
                let d1 = window.apply_total(p, &BarChain::word(w1.clone()))?;
                for w2 in window.words(q) {
                    let d2 = window.apply_total(q, &BarChain::word(w2.clone()))?;
                    let lhs = window.apply_total(p + q, &window.product(w1, w2)?)?;
                    let mut rhs = window.product_chains(&d1, &BarChain::word(w2.clone()))?;
                    rhs.add_chain(&window.product_chains(&BarChain::word(w1.clone()), &d2)?, &sign(p));
                    if lhs != rhs {
                        return Ok(Some(CdgaViolation::Leibniz {
                            left: name(w1),
                            right: name(w2),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraMorphism, GradedAlgebra};
    use crate::linalg::int;
    use crate::presentation::{build_free, GeneratorPresentation, Polynomial};
    use std::sync::Arc;

    fn over_field(middle: GeneratorPresentation, top: usize) -> BarTriple {
        let b = Arc::new(build_free(&middle, top).unwrap());
        BarTriple::new(
            AlgebraMorphism::augmentation_map(b.clone()),
            AlgebraMorphism::augmentation_map(b),
        )
        .unwrap()
    }

    #[test]
    fn shuffle_counts() {
        let s = shuffles(0, 3);
        assert_eq!(s.len(), 1);
        assert!(s[0].moved.is_empty());
        let s = shuffles(1, 1);
        assert_eq!(s.len(), 2);
        assert!(s[0].moved.is_empty());
        assert_eq!(s[1].moved, vec![(0, 0)]);
        assert_eq!(shuffles(2, 2).len(), 6);
        assert_eq!(shuffles(3, 4).len(), 35);
    }

    #[test]
    fn merge_respects_block_order() {
        for s in shuffles(2, 3) {
            let m = s.merge(&["a1", "a2"], &["b1", "b2", "b3"]);
            let pa: Vec<_> = m.iter().filter(|x| x.starts_with('a')).collect();
            let pb: Vec<_> = m.iter().filter(|x| x.starts_with('b')).collect();
            assert_eq!(pa, vec![&"a1", &"a2"]);
            assert_eq!(pb, vec![&"b1", &"b2", &"b3"]);
        }
    }

    #[test]
    fn two_entry_shuffle() {
        let t = over_field(GeneratorPresentation::new("B").generator("u", 3).generator("v", 4), 12);
        let (u, v) = (Basis::new(3, 0), Basis::new(4, 0));
        let w1 = BarWord::new(Basis::UNIT, vec![u], Basis::UNIT);
        let w2 = BarWord::new(Basis::UNIT, vec![v], Basis::UNIT);
        let mut expected = BarChain::new();
        expected.add(BarWord::new(Basis::UNIT, vec![u, v], Basis::UNIT), int(1));
        // (|u|-1)(|v|-1) = 6
        expected.add(BarWord::new(Basis::UNIT, vec![v, u], Basis::UNIT), int(1));
        assert_eq!(t.shuffle_product(&w1, &w2).unwrap(), expected);
    }

    #[test]
    fn square_of_odd_sphere_class() {
        let t = over_field(GeneratorPresentation::new("S3").generator("x", 3), 11);
        let x = Basis::new(3, 0);
        let w = BarWord::new(Basis::UNIT, vec![x], Basis::UNIT);
        let mut expected = BarChain::new();
        expected.add(BarWord::new(Basis::UNIT, vec![x, x], Basis::UNIT), int(2));
        assert_eq!(t.shuffle_product(&w, &w).unwrap(), expected);
    }

    #[test]
    fn square_of_even_sphere_class_vanishes() {
        let hs2 = GeneratorPresentation::new("HS2")
            .generator("x", 2)
            .relation(Polynomial::monomial(int(1), &[("x", 2)]));
        let t = over_field(hs2, 7);
        let w = BarWord::new(Basis::UNIT, vec![Basis::new(2, 0)], Basis::UNIT);
        assert!(t.shuffle_product(&w, &w).unwrap().is_zero());
    }

    #[test]
    fn end_factors_pick_up_koszul_sign() {
        // (α;;β)•(x;;z) = (-1)^{|β||x|} (αx;;βz) with α = 1, β = x3, x = y3, z = 1
        let l = Arc::new(build_free(&GeneratorPresentation::new("L").generator("y", 3), 8).unwrap());
        let r = Arc::new(build_free(&GeneratorPresentation::new("R").generator("x", 3), 8).unwrap());
        let b = Arc::new(GradedAlgebra::ground_field(8));
        let f = AlgebraMorphism::unit_map(l.clone());
        let g = AlgebraMorphism::unit_map(r.clone());
        let f = AlgebraMorphism::from_matrices("f", b.clone(), l, (0..=8).map(|n| f.matrix(n).clone()).collect());
        let g = AlgebraMorphism::from_matrices("g", b, r, (0..=8).map(|n| g.matrix(n).clone()).collect());
        let t = BarTriple::new(f, g).unwrap();
        let w1 = BarWord::new(Basis::UNIT, vec![], Basis::new(3, 0));
        let w2 = BarWord::new(Basis::new(3, 0), vec![], Basis::UNIT);
        let mut expected = BarChain::new();
        expected.add(BarWord::new(Basis::new(3, 0), vec![], Basis::new(3, 0)), int(-1));
        assert_eq!(t.shuffle_product(&w1, &w2).unwrap(), expected);
    }

    #[test]
    fn overflow_is_reported() {
        let t = over_field(GeneratorPresentation::new("S3").generator("x", 3), 7);
        let window = BarWindow::build(t, 6).unwrap();
        let x = Basis::new(3, 0);
        let w = BarWord::new(Basis::UNIT, vec![x, x], Basis::UNIT);
        assert!(matches!(
            window.product(&w, &w),
            Err(Error::DegreeOverflow { degree: 8, top: 6 })
        ));
    }

    #[test]
    fn trivial_window_is_a_cdga() {
        let t = over_field(GeneratorPresentation::new("Q"), 5);
        let window = BarWindow::build(t, 4).unwrap();
        assert_eq!(check_cdga_structure(&window).unwrap(), None);
    }

    #[test]
    fn exterior_window_is_a_cdga() {
        let t = over_field(GeneratorPresentation::new("S3").generator("x", 3), 11);
        let window = BarWindow::build(t, 10).unwrap();
        assert_eq!(check_cdga_structure(&window).unwrap(), None);
    }
}
