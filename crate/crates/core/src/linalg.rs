//! Exact sparse linear algebra over the rationals.
//!
//! Every cohomology group in the crate is computed here: a differential is a
//! [`RationalMatrix`], kernels come out of a canonical reduced echelon form,
//! and quotients `ker / im` are tracked by a [`Projector`] that sends a vector
//! to its coordinates on a chosen set of representatives.
//!
//! Nothing in this module uses floating point.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary precision fraction, kept in lowest terms with a positive
/// denominator by `num_rational`.
pub type Rational = num_rational::BigRational;

/// `n / 1`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^e` as a rational.
pub fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Sparse vector: index to nonzero coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec(BTreeMap<usize, Rational>);

impl SparseVec {
    pub fn new() -> Self {
        Self(BTreeMap::new())
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::new();
        v.0.insert(i, Rational::one());
        v
    }

    pub fn from_dense(entries: &[Rational]) -> Self {
        let mut v = Self::new();
        for (i, x) in entries.iter().enumerate() {
            v.set(i, x.clone());
        }
        v
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        let mut v = Self::new();
        for (i, &x) in entries.iter().enumerate() {
            v.set(i, int(x));
        }
        v
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (&i, x) in &self.0 {
            out[i] = x.clone();
        }
        out
    }

    pub fn get(&self, i: usize) -> Rational {
        self.0.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, x: Rational) {
        if x.is_zero() {
            self.0.remove(&i);
        } else {
            self.0.insert(i, x);
        }
    }

    /// `self[i] += x`.
    pub fn add_at(&mut self, i: usize, x: &Rational) {
        if x.is_zero() {
            return;
        }
        match self.0.get_mut(&i) {
            Some(y) => {
                *y += x;
                if y.is_zero() {
                    self.0.remove(&i);
                }
            }
            None => {
                self.0.insert(i, x.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SparseVec, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.0 {
            self.add_at(i, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(&i, x)| (i, x * c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.0.iter().map(|(&i, x)| (i, x))
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.0.iter().next().map(|(&i, x)| (i, x))
    }

    /// Largest stored index plus one (zero for the zero vector).
    pub fn support_bound(&self) -> usize {
        self.0.keys().next_back().map_or(0, |&i| i + 1)
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Rational::zero();
        for (&i, x) in &small.0 {
            if let Some(y) = large.0.get(&i) {
                acc += x * y;
            }
        }
        acc
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.0.iter().map(|(i, x)| (i, x.to_string())))
            .finish()
    }
}

impl FromIterator<(usize, Rational)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Rational)>>(iter: T) -> Self {
        let mut v = SparseVec::new();
        for (i, x) in iter {
            v.add_at(i, &x);
        }
        v
    }
}

/// Sparse `rows x cols` matrix stored by rows. No zero entries are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i] = SparseVec::unit(i);
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter() {
                assert!(i < rows, "column entry {i} out of bounds for {rows} rows");
                m.data[i].set(j, x.clone());
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        for r in &rows {
            assert!(r.support_bound() <= cols, "row entry out of bounds");
        }
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Dense integer constructor, mostly for tests and examples.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix");
                SparseVec::from_i64(r)
            })
            .collect();
        Self::from_rows(cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i].set(j, x);
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &Rational) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i].add_at(j, x);
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row.iter() {
                t.data[j].0.insert(i, x.clone());
            }
        }
        t
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    /// `M v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        debug_assert!(v.support_bound() <= self.cols);
        let mut out = SparseVec::new();
        for (i, row) in self.data.iter().enumerate() {
            let x = row.dot(v);
            out.set(i, x);
        }
        out
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, x) in row.iter() {
                acc.add_scaled(&rhs.data[k], x);
            }
            out.data[i] = acc;
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix sum",
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        let mut out = self.clone();
        for (i, row) in rhs.data.iter().enumerate() {
            out.data[i].add_scaled(row, &Rational::one());
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        rank_and_kernel(self).0
    }

    /// Rows in canonical reduced echelon form (pivot entries equal to one).
    pub fn rref(&self) -> Vec<SparseVec> {
        let mut ech = Echelon::new();
        for row in &self.data {
            ech.insert(row.clone(), SparseVec::new());
        }
        ech.into_reduced_rows()
    }

    /// The block with the given rows and columns, renumbered in the order
    /// given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            col_pos[c] = k;
        }
        let data = rows
            .iter()
            .map(|&r| {
                self.data[r]
                    .iter()
                    .filter(|(c, _)| col_pos[*c] != usize::MAX)
                    .map(|(c, x)| (col_pos[c], x.clone()))
                    .collect()
            })
            .collect();
        Self::from_rows(cols.len(), data)
    }

    /// Same matrix with rows reordered by `perm` (`new[i] = old[perm[i]]`).
    pub fn permute_rows(&self, perm: &[usize]) -> RationalMatrix {
        assert_eq!(perm.len(), self.rows);
        Self::from_rows(self.cols, perm.iter().map(|&p| self.data[p].clone()).collect())
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let dense: Vec<String> = row.to_dense(self.cols).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", dense.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug)]
struct EchelonRow {
    vec: SparseVec,
    tag: SparseVec,
}

/// Incrementally built echelon basis of a subspace.
///
/// Each stored row has leading coefficient one and a unique pivot column.
/// Rows carry a *tag*: the combination of tagged inputs that produced them,
/// which is what turns an echelon basis into a coordinate projector.
#[derive(Clone, Debug, Default)]
struct Echelon {
    rows: BTreeMap<usize, EchelonRow>,
}

impl Echelon {
    fn new() -> Self {
        Self::default()
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residual and the tag of
    /// the part that was removed.
    fn reduce(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
        let mut tag = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = v.0.range(cursor..).map(|(&c, _)| c).find(|c| self.rows.contains_key(c));
            let Some(c) = next else { break };
            let coef = v.get(c);
            let row = &self.rows[&c];
            v.add_scaled(&row.vec, &-coef.clone());
            tag.add_scaled(&row.tag, &coef);
            cursor = c + 1;
        }
        (v, tag)
    }

    /// Inserts `v` carrying `tag`; returns the new pivot if `v` was
    /// independent of the current span.
    fn insert(&mut self, v: SparseVec, tag: SparseVec) -> Option<usize> {
        let (residual, removed) = self.reduce(v);
        let (pivot, lead) = residual.leading().map(|(c, x)| (c, x.clone()))?;
        let mut t = tag;
        t.add_scaled(&removed, &-Rational::one());
        let inv = lead.recip();
        self.rows.insert(
            pivot,
            EchelonRow {
                vec: residual.scaled(&inv),
                tag: t.scaled(&inv),
            },
        );
        Some(pivot)
    }

    fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    fn into_reduced_rows(mut self) -> Vec<SparseVec> {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &p in &pivots {
            let mut row = self.rows.remove(&p).expect("pivot present");
            let targets: Vec<usize> = row
                .vec
                .iter()
                .map(|(c, _)| c)
                .filter(|&c| c != p && self.rows.contains_key(&c))
                .collect();
            for c in targets {
                let coef = row.vec.get(c);
                let other = &self.rows[&c];
                row.vec.add_scaled(&other.vec, &-coef.clone());
                row.tag.add_scaled(&other.tag, &-coef);
            }
            self.rows.insert(p, row);
        }
        self.rows.into_values().map(|r| r.vec).collect()
    }
}

/// Sends a vector to its coordinates on a list of representatives, modulo a
/// subspace. Built by [`quotient_basis`] and [`cohomology_at`].
#[derive(Clone, Debug)]
pub struct Projector {
    ech: Echelon,
    dim: usize,
}

impl Projector {
    /// Projector onto `span(reps)` modulo `span(sub)`. The reps must be
    /// independent modulo `sub`.
    pub fn new(sub: &[SparseVec], reps: &[SparseVec]) -> Result<Self, Error> {
        let mut ech = Echelon::new();
        for v in sub {
            ech.insert(v.clone(), SparseVec::new());
        }
        for (j, r) in reps.iter().enumerate() {
            if ech.insert(r.clone(), SparseVec::unit(j)).is_none() {
                return Err(Error::DependentRepresentatives { index: j });
            }
        }
        Ok(Self { ech, dim: reps.len() })
    }

    /// Number of representatives (dimension of the quotient).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `v` on the representatives, or `None` when `v` lies
    /// outside `span(sub) + span(reps)`.
    pub fn project(&self, v: &SparseVec) -> Option<SparseVec> {
        let (residual, tag) = self.ech.reduce(v.clone());
        residual.is_zero().then_some(tag)
    }
}

/// Rank and canonical kernel basis of `m`.
///
/// The kernel basis is read off the reduced echelon form: one vector per
/// free column, in increasing column order, with a one in that column.
pub fn rank_and_kernel(m: &RationalMatrix) -> (usize, Vec<SparseVec>) {
    let rref = m.rref();
    let pivots: Vec<usize> = rref.iter().map(|r| r.leading().expect("nonzero row").0).collect();
    let is_pivot = {
        let mut flags = vec![false; m.cols()];
        for &p in &pivots {
            flags[p] = true;
        }
        flags
    };
    // column -> (row index, coefficient) for the non-pivot entries
    let mut by_col: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for (r, row) in rref.iter().enumerate() {
        for (c, x) in row.iter() {
            if !is_pivot[c] {
                by_col.entry(c).or_default().push((r, x.clone()));
            }
        }
    }
    let kernel = (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|c| {
            let mut v = SparseVec::unit(c);
            if let Some(entries) = by_col.get(&c) {
                for (r, x) in entries {
                    v.set(pivots[*r], -x.clone());
                }
            }
            v
        })
        .collect();
    (pivots.len(), kernel)
}

/// Extends a basis of `span(sub)` to the ambient space by standard unit
/// vectors at the non-pivot columns, and returns the projector onto them.
pub fn quotient_basis(sub: &[SparseVec], ambient_dim: usize) -> (Vec<SparseVec>, Projector) {
    let mut ech = Echelon::new();
    for v in sub {
        assert!(v.support_bound() <= ambient_dim, "vector longer than ambient space");
        ech.insert(v.clone(), SparseVec::new());
    }
    let pivots: Vec<usize> = ech.pivots().collect();
    let reps: Vec<SparseVec> = (0..ambient_dim)
        .filter(|c| pivots.binary_search(c).is_err())
        .map(SparseVec::unit)
        .collect();
    for (j, r) in reps.iter().enumerate() {
        let fresh = ech.insert(r.clone(), SparseVec::unit(j));
        debug_assert!(fresh.is_some());
    }
    let dim = reps.len();
    (reps, Projector { ech, dim })
}

/// Result of [`cohomology_at`].
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub dim: usize,
    /// Cocycles whose classes form a basis.
    pub reps: Vec<SparseVec>,
    pub projector: Projector,
}

/// Cohomology `ker(d_out) / im(d_in)` at the middle slot of
/// `. --d_in--> V --d_out--> .`.
///
/// Representatives are the first kernel basis vectors (in canonical order)
/// that are independent modulo the boundaries.
pub fn cohomology_at(d_in: &RationalMatrix, d_out: &RationalMatrix) -> Result<Cohomology, Error> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch {
            context: "cohomology_at",
            expected: d_out.cols(),
            found: d_in.rows(),
        });
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::CompositionNonzero {
            rows: d_out.rows(),
            cols: d_in.cols(),
        });
    }
    let (_, kernel) = rank_and_kernel(d_out);
    let mut ech = Echelon::new();
    for col in d_in.columns() {
        ech.insert(col, SparseVec::new());
    }
    let boundaries = ech.rank();
    let mut reps = Vec::new();
    for z in kernel {
        if ech.insert(z.clone(), SparseVec::unit(reps.len())).is_some() {
            reps.push(z);
        }
    }
    debug_assert_eq!(ech.rank(), boundaries + reps.len());
    let dim = reps.len();
    Ok(Cohomology {
        dim,
        reps,
        projector: Projector { ech, dim },
    })
}

/// Renders a rational the way the text formats expect (`3`, `-1/2`).
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `true` when the rational is a (possibly negative) integer of absolute
/// value one.
pub fn is_unit_coefficient(x: &Rational) -> bool {
    x.is_integer() && x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_matrix_has_full_kernel() {
        let m = RationalMatrix::zeros(3, 3);
        let (rank, ker) = rank_and_kernel(&m);
        assert_eq!(rank, 0);
        assert_eq!(ker.len(), 3);
        assert_eq!(ker, vec![SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(2)]);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let (rank, ker) = rank_and_kernel(&RationalMatrix::identity(4));
        assert_eq!(rank, 4);
        assert!(ker.is_empty());
    }

    #[test]
    fn rank_one_kernel_is_canonical() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let (rank, ker) = rank_and_kernel(&m);
        assert_eq!(rank, 1);
        assert_eq!(ker, vec![SparseVec::from_i64(&[-2, 1])]);
        assert!(m.apply(&ker[0]).is_zero());
    }

    #[test]
    fn empty_matrix() {
        let (rank, ker) = rank_and_kernel(&RationalMatrix::zeros(0, 0));
        assert_eq!(rank, 0);
        assert!(ker.is_empty());
        let (rank, ker) = rank_and_kernel(&RationalMatrix::zeros(0, 2));
        assert_eq!(rank, 0);
        assert_eq!(ker.len(), 2);
    }

    #[test]
    fn quotient_of_nothing_is_everything() {
        let (reps, proj) = quotient_basis(&[], 2);
        assert_eq!(reps, vec![SparseVec::unit(0), SparseVec::unit(1)]);
        assert_eq!(
            proj.project(&SparseVec::from_i64(&[3, 5])),
            Some(SparseVec::from_i64(&[3, 5]))
        );
    }

    #[test]
    fn quotient_by_first_axis() {
        let (reps, proj) = quotient_basis(&[SparseVec::from_i64(&[1, 0])], 2);
        assert_eq!(reps, vec![SparseVec::unit(1)]);
        assert_eq!(
            proj.project(&SparseVec::from_i64(&[7, 2])),
            Some(SparseVec::from_i64(&[2]))
        );
    }

    #[test]
    fn quotient_by_everything() {
        let sub = [SparseVec::from_i64(&[1, 1]), SparseVec::from_i64(&[1, -1])];
        let (reps, proj) = quotient_basis(&sub, 2);
        assert!(reps.is_empty());
        assert_eq!(proj.project(&SparseVec::from_i64(&[4, 9])), Some(SparseVec::new()));
    }

    #[test]
    fn quotient_with_skew_subspace() {
        // span{(1,1,0)} in Q^3: reps are e1, e2 and (a,b,c) ~ (0, b-a, c)
        let (reps, proj) = quotient_basis(&[SparseVec::from_i64(&[1, 1, 0])], 3);
        assert_eq!(reps, vec![SparseVec::unit(1), SparseVec::unit(2)]);
        assert_eq!(
            proj.project(&SparseVec::from_i64(&[2, 5, 1])),
            Some(SparseVec::from_i64(&[3, 1]))
        );
    }

    #[test]
    fn submatrix_picks_block() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(
            m.submatrix(&[2, 0], &[1, 2]),
            RationalMatrix::from_i64(&[&[8, 9], &[2, 3]])
        );
    }

    #[test]
    fn cohomology_of_single_class() {
        let h = cohomology_at(&RationalMatrix::zeros(1, 0), &RationalMatrix::zeros(0, 1)).unwrap();
        assert_eq!(h.dim, 1);
        assert_eq!(h.reps, vec![SparseVec::unit(0)]);
    }

    #[test]
    fn identity_kills_cohomology() {
        let h = cohomology_at(&RationalMatrix::identity(1), &RationalMatrix::zeros(1, 1)).unwrap();
        assert_eq!(h.dim, 0);
    }

    #[test]
    fn injective_outgoing_map() {
        let d_in = RationalMatrix::from_i64(&[&[0]]);
        let d_out = RationalMatrix::from_i64(&[&[2]]);
        let h = cohomology_at(&d_in, &d_out).unwrap();
        assert_eq!(h.dim, 0);
    }

    #[test]
    fn nonzero_composite_is_rejected() {
        let d = RationalMatrix::identity(2);
        assert!(matches!(cohomology_at(&d, &d), Err(Error::CompositionNonzero { .. })));
    }

    #[test]
    fn projector_ignores_boundaries() {
        // Q --(1,1)--> Q^2 --(1,-1)--> Q : H = 0 ... make d_out zero instead
        let d_in = RationalMatrix::from_i64(&[&[1], &[1]]);
        let d_out = RationalMatrix::zeros(0, 2);
        let h = cohomology_at(&d_in, &d_out).unwrap();
        assert_eq!(h.dim, 1);
        let class = h.projector.project(&h.reps[0]).unwrap();
        let shifted = {
            let mut v = h.reps[0].clone();
            v.add_scaled(&SparseVec::from_i64(&[1, 1]), &int(5));
            v
        };
        assert_eq!(h.projector.project(&shifted).unwrap(), class);
        assert_eq!(
            h.projector.project(&SparseVec::from_i64(&[1, 1])).unwrap(),
            SparseVec::new()
        );
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RationalMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
                let data = rows.iter().map(|row| SparseVec::from_i64(row)).collect();
                RationalMatrix::from_rows(c, data)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(6, 7)) {
            let (rank, ker) = rank_and_kernel(&m);
            prop_assert_eq!(rank + ker.len(), m.cols());
            for v in &ker {
                prop_assert!(m.apply(v).is_zero());
            }
        }

        #[test]
        fn rank_of_transpose(m in arb_matrix(6, 6)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn row_order_does_not_matter(m in arb_matrix(6, 6), seed in any::<u64>()) {
            let mut perm: Vec<usize> = (0..m.rows()).collect();
            // cheap deterministic shuffle
            let mut s = seed;
            for i in (1..perm.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let p = m.permute_rows(&perm);
            prop_assert_eq!(rank_and_kernel(&m), rank_and_kernel(&p));
        }

        #[test]
        fn cohomology_bookkeeping(a in arb_matrix(5, 4), b in arb_matrix(4, 5)) {
            // force d_out * d_in = 0 by taking d_in = columns of ker(b)-combinations of a's image
            let d_out = b;
            let (_, ker) = rank_and_kernel(&d_out);
            let cols: Vec<SparseVec> = (0..a.cols())
                .map(|j| {
                    let mut v = SparseVec::new();
                    for (i, z) in ker.iter().enumerate() {
                        v.add_scaled(z, &a.get(i % a.rows(), j));
                    }
                    v
                })
                .collect();
            let d_in = RationalMatrix::from_columns(d_out.cols(), &cols);
            let h = cohomology_at(&d_in, &d_out).unwrap();
            let (_, k) = rank_and_kernel(&d_out);
            prop_assert_eq!(k.len(), d_in.rank() + h.dim);
            for z in &h.reps {
                prop_assert!(d_out.apply(z).is_zero());
            }
        }
    }
}
