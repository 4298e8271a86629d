//! Exact rational linear algebra: vectors, matrices and canonical subspaces.
//!
//! Everything here works over arbitrary-precision rationals. Subspaces are
//! always kept in reduced row echelon form so that two equal subspaces have
//! identical stored bases.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn int_to_rat(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn scale(v: &[Rat], s: &Rat) -> Vec<Rat> {
    v.iter().map(|x| x * s).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

/// Positive rescaling of `v` to a primitive integer vector (gcd of entries 1).
/// The zero vector maps to the zero integer vector.
pub fn primitive(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Scales `v` so its first nonzero entry is one.
pub fn monic(v: &[Rat]) -> Vec<Rat> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.recip();
            scale(v, &inv)
        }
        None => v.to_vec(),
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds from rows; `cols` is needed to describe matrices with no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Self {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
        }
        RatMatrix { rows: n_rows, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| rat_vec(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Row-major flattening, used as `vec(N)` when stacking matrices as columns.
    pub fn flatten(&self) -> Vec<Rat> {
        self.data.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::AmbientMismatch { expected: self.cols, found: other.rows });
        }
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scaled(&self, s: &Rat) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn pow(&self, k: u32) -> RatMatrix {
        assert_eq!(self.rows, self.cols);
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = rref_in_place(&mut rows, self.cols);
        rows.truncate(pivots.len());
        (RatMatrix::from_rows(self.cols, rows), pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        rref_in_place(&mut rows, self.cols).len()
    }

    pub fn kernel(&self) -> Subspace {
        kernel(self)
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, &self.columns())
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(RatMatrix::zeros(0, 0));
        }
        let mut aug: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(RatMatrix::from_rows(n, aug.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// A left inverse `L` with `L * self = I`, for matrices with full column rank.
    pub fn left_inverse(&self) -> Option<RatMatrix> {
        let t = self.transpose();
        let gram = t.mul(self);
        gram.inverse().map(|g| g.mul(&t))
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(format_rat).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Gauss-Jordan elimination on `rows` (each of length `cols`). Leaves the
/// nonzero rows first, returns the pivot columns.
fn rref_in_place(rows: &mut [Vec<Rat>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Linear subspace of `Q^ambient`, stored as a canonical reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &RatMatrix::identity(ambient).row_vecs())
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Self {
        let mut rows: Vec<Vec<Rat>> = vectors.to_vec();
        for v in &rows {
            assert_eq!(v.len(), ambient, "vector length mismatch");
        }
        let n = rref_in_place(&mut rows, ambient).len();
        rows.truncate(n);
        Subspace { ambient, basis: rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.ambient, self.basis.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // Reduce v against the echelon basis; pivots are the leading ones.
        let mut r = v.to_vec();
        for b in &self.basis {
            let p = b.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero");
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        is_zero_vec(&r)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, &v))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        intersect_subspaces(self, other)
    }

    /// Orthogonal complement with respect to the standard inner product.
    pub fn orthogonal_complement(&self) -> Subspace {
        kernel(&self.basis_matrix())
    }

    /// Image of the subspace under `m` (a map from `Q^ambient`).
    pub fn image(&self, m: &RatMatrix) -> Subspace {
        let imgs: Vec<Vec<Rat>> = self.basis.iter().map(|b| m.apply(b)).collect();
        Subspace::span(m.rows(), &imgs)
    }

    /// `{x : m x ∈ self}`.
    pub fn preimage(&self, m: &RatMatrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        let q = quotient_map(self.ambient, self).expect("same ambient");
        kernel(&q.mul(m))
    }

    /// Matrix of the orthogonal projection onto this subspace.
    pub fn orthogonal_projector(&self) -> RatMatrix {
        if self.basis.is_empty() {
            return RatMatrix::zeros(self.ambient, self.ambient);
        }
        let b = self.basis_matrix();
        let bt = b.transpose();
        let gram_inv = b.mul(&bt).inverse().expect("basis is independent");
        bt.mul(&gram_inv).mul(&b)
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }
}

/// Null space of `m` in canonical form.
pub fn kernel(m: &RatMatrix) -> Subspace {
    let (r, pivots) = m.rref();
    let n = m.cols();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, free).clone();
        }
        basis.push(v);
    }
    Subspace::span(n, &basis)
}

pub fn intersect_subspaces(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check(b)?;
    let mut rows = a.orthogonal_complement().basis;
    rows.extend(b.orthogonal_complement().basis);
    Ok(kernel(&RatMatrix::from_rows(a.ambient, rows)))
}

/// Pivot layout of `k` when eliminated from the last coordinate backwards.
/// Returns `(pivots, reduced basis)` where each basis vector has a one at its
/// pivot and zeros at every other pivot.
fn reverse_echelon(n: usize, k: &Subspace) -> (Vec<usize>, Vec<Vec<Rat>>) {
    let mut rows: Vec<Vec<Rat>> = k.basis.iter().map(|b| b.iter().rev().cloned().collect()).collect();
    let piv = rref_in_place(&mut rows, n);
    rows.truncate(piv.len());
    let pivots = piv.iter().map(|p| n - 1 - p).collect();
    let basis = rows.into_iter().map(|r| r.into_iter().rev().collect()).collect();
    (pivots, basis)
}

/// Deterministic projection `Q^n -> Q^{n - dim k}` with kernel exactly `k`.
///
/// The basis of `k` is reduced with pivots taken from the last coordinates;
/// the remaining (leading) standard coordinates complete it, and the map
/// returns the coefficients on those completing coordinates.
pub fn quotient_map(ambient_dim: usize, k: &Subspace) -> Result<RatMatrix> {
    if k.ambient != ambient_dim {
        return Err(Error::AmbientMismatch { expected: ambient_dim, found: k.ambient });
    }
    let n = ambient_dim;
    let (pivots, basis) = reverse_echelon(n, k);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut q = RatMatrix::zeros(free.len(), n);
    for (r, &j) in free.iter().enumerate() {
        q.set(r, j, Rat::one());
        for (v, &p) in basis.iter().zip(&pivots) {
            if !v[j].is_zero() {
                q.set(r, p, -v[j].clone());
            }
        }
    }
    Ok(q)
}

/// Right inverse of [`quotient_map`]: includes the completing coordinates.
pub fn quotient_section(ambient_dim: usize, k: &Subspace) -> Result<RatMatrix> {
    if k.ambient != ambient_dim {
        return Err(Error::AmbientMismatch { expected: ambient_dim, found: k.ambient });
    }
    let (pivots, _) = reverse_echelon(ambient_dim, k);
    let free: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
    let mut s = RatMatrix::zeros(ambient_dim, free.len());
    for (r, &j) in free.iter().enumerate() {
        s.set(j, r, Rat::one());
    }
    Ok(s)
}

pub fn rat_sign(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
