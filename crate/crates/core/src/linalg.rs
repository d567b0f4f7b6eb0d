//! Exact linear algebra over the rationals.
//!
//! Everything here is built on [`Echelon`], an incrementally maintained
//! reduced row-echelon basis of sparse rows. The dense [`Matrix`] front end
//! exists for small, explicit computations; the graded machinery elsewhere in
//! the crate works with [`SparseVec`] directly.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// The ground field.
pub type Scalar = BigRational;

/// Sparse vector: strictly increasing column indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// `a + c * b`.
pub fn axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = c * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &[(usize, Scalar)], c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

pub fn entry(v: &[(usize, Scalar)], col: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&col, |(i, _)| *i)
        .ok()
        .map(|k| &v[k].1)
}

/// Builds a sparse vector from unsorted `(index, value)` pairs, summing
/// repeated indices.
pub fn collect_sparse<I: IntoIterator<Item = (usize, Scalar)>>(items: I) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, x) in items {
        let slot = acc.entry(i).or_insert_with(Scalar::zero);
        *slot += x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

pub fn to_dense(v: &[(usize, Scalar)], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// A subspace held as a fully reduced row-echelon basis.
///
/// Every row has leading coefficient 1 at its pivot column and zeros in all
/// other pivot columns, so the basis is the unique RREF of the span.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Rows ordered by pivot column, i.e. the RREF basis top to bottom.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.pivots.values().map(move |&r| &self.rows[r])
    }

    pub fn row_for_pivot(&self, col: usize) -> Option<&SparseVec> {
        self.pivots.get(&col).map(|&r| &self.rows[r])
    }

    /// Subtracts the span from `v`: the result vanishes on every pivot column
    /// and is zero exactly when `v` lies in the span.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let hits: Vec<(usize, &Scalar)> = v
            .iter()
            .filter_map(|(c, x)| self.pivots.get(c).map(|&r| (r, x)))
            .collect();
        match hits.len() {
            0 => v.to_vec(),
            1 => axpy(v, &-hits[0].1, &self.rows[hits[0].0]),
            _ => {
                let mut acc: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
                for (r, x) in hits {
                    for (c, y) in &self.rows[r] {
                        let slot = acc.entry(*c).or_insert_with(Scalar::zero);
                        *slot -= x * y;
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            }
        }
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns the new pivot column, or `None` if `v`
    /// was already in the span.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> Option<usize> {
        let w = self.reduce(v);
        let (pivot, lead) = w.first()?.clone();
        let w = scale(&w, &lead.recip());
        for row in &mut self.rows {
            if let Some(c) = entry(row, pivot).cloned() {
                *row = axpy(row, &-c, &w);
            }
        }
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(w);
        Some(pivot)
    }

    /// Kernel of the linear map whose matrix has these rows, over `ncols`
    /// variables, in free-variable form: one vector per non-pivot column `f`
    /// with a 1 at `f` and zeros at every other free column.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseVec> {
        let mut basis: BTreeMap<usize, Vec<(usize, Scalar)>> = (0..ncols)
            .filter(|c| !self.is_pivot(*c))
            .map(|c| (c, vec![(c, Scalar::one())]))
            .collect();
        for (&p, &r) in &self.pivots {
            for (c, x) in &self.rows[r] {
                if *c != p {
                    if let Some(v) = basis.get_mut(c) {
                        v.push((p, -x.clone()));
                    }
                }
            }
        }
        basis
            .into_values()
            .map(|mut v| {
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect()
    }
}

/// Kernel of a map given column by column: `images[j]` is the image of the
/// `j`-th source basis vector, expressed in target coordinates.
pub fn kernel_of_images(images: &[SparseVec]) -> Vec<SparseVec> {
    let mut rows: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for (j, img) in images.iter().enumerate() {
        for (t, x) in img {
            rows.entry(*t).or_default().push((j, x.clone()));
        }
    }
    let mut ech = Echelon::new();
    for row in rows.values() {
        ech.insert(row);
    }
    ech.kernel(images.len())
}

/// Canonical complement representatives for `sub ⊆ span(ambient)`:
/// the RREF basis of `span(ambient)` intersected with the coordinate
/// subspace vanishing on the pivots of `sub`.
pub fn quotient_representatives(sub: &Echelon, ambient: &[SparseVec]) -> Echelon {
    let mut reps = Echelon::new();
    for v in ambient {
        let r = sub.reduce(v);
        if !r.is_empty() {
            reps.insert(&r);
        }
    }
    reps
}

/// Dense rectangular matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|r| from_dense(self.row(r))).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new();
        for row in self.sparse_rows() {
            ech.insert(&row);
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for x in self.row(r) {
                write!(f, "{x:>6} ")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form and the strictly increasing pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let ech = m.echelon();
    let mut out = Matrix::zeros(m.rows, m.cols);
    for (r, row) in ech.rows().enumerate() {
        for (c, x) in row {
            out.set(r, *c, x.clone());
        }
    }
    (out, ech.pivot_columns().collect())
}

/// Null space basis in free-variable form.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.echelon()
        .kernel(m.cols)
        .iter()
        .map(|v| to_dense(v, m.cols))
        .collect()
}

/// Sparse form of [`solve_in_span`]: coefficients `c` with
/// `Σ c[i] * basis[i] = target`, or `None` when `target` is outside the span.
/// Dependent basis vectors receive coefficient zero.
pub fn solve_sparse(basis: &[SparseVec], target: &[(usize, Scalar)]) -> Option<Vec<Scalar>> {
    // Augment each basis vector with a marker coordinate past the last data
    // column; after reduction the marker part of the target records -c.
    let offset = basis
        .iter()
        .chain(core::iter::once(&target.to_vec()))
        .filter_map(|v| v.last().map(|(i, _)| i + 1))
        .max()
        .unwrap_or(0);
    let mut ech = Echelon::new();
    for (i, b) in basis.iter().enumerate() {
        let mut aug = b.clone();
        aug.push((offset + i, Scalar::one()));
        ech.insert(&aug);
    }
    let rest = ech.reduce(target);
    if rest.iter().any(|(i, _)| *i < offset) {
        return None;
    }
    let mut coeffs = vec![Scalar::zero(); basis.len()];
    for (i, x) in rest {
        coeffs[i - offset] = -x;
    }
    Some(coeffs)
}

pub fn solve_in_span(
    basis: &[Vec<Scalar>],
    target: &[Scalar],
) -> Result<Option<Vec<Scalar>>, Error> {
    if let Some(bad) = basis.iter().find(|b| b.len() != target.len()) {
        return Err(Error::DimensionMismatch {
            expected: target.len(),
            found: bad.len(),
        });
    }
    let sparse: Vec<SparseVec> = basis.iter().map(|b| from_dense(b)).collect();
    Ok(solve_sparse(&sparse, &from_dense(target)))
}

/// Least common denominator of a set of coefficients, always positive.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Scalar>>(xs: I) -> BigInt {
    use num_integer::Integer;
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
        .abs()
}
