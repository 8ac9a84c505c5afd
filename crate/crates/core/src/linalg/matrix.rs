//! Dense exact matrices and the elimination kernels built on them.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use super::scalar::{common_radicand, Scalar};
use crate::error::{Error, Result};

/// Row-major dense matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Descriptions of the standard building blocks.
#[derive(Clone, Debug)]
pub enum Block {
    /// Upper shift `J_k` (`J_0` is the empty matrix).
    Jordan(usize),
    /// `e_{i,j}(n)`, one-based indices.
    Unit {
        row: usize,
        col: usize,
        size: usize,
    },
    Identity(usize),
    Zero {
        rows: usize,
        cols: usize,
    },
    Diagonal(Vec<Block>),
    /// A `rows × cols` zero matrix with sub-blocks placed at zero-based offsets.
    Placed {
        rows: usize,
        cols: usize,
        parts: Vec<(usize, usize, Block)>,
    },
}

/// Builds a standard block.
pub fn standard_blocks(spec: &Block) -> Result<Mat> {
    match spec {
        Block::Jordan(k) => Ok(Mat::jordan(*k)),
        Block::Unit { row, col, size } => {
            if *row == 0 || *col == 0 || row > size || col > size {
                return Err(Error::Index(format!("e_({row},{col}) in size {size}")));
            }
            Ok(Mat::unit(row - 1, col - 1, *size))
        }
        Block::Identity(n) => Ok(Mat::identity(*n)),
        Block::Zero { rows, cols } => Ok(Mat::zeros(*rows, *cols)),
        Block::Diagonal(parts) => {
            let mats = parts
                .iter()
                .map(standard_blocks)
                .collect::<Result<Vec<_>>>()?;
            Ok(Mat::block_diag(&mats))
        }
        Block::Placed { rows, cols, parts } => {
            let mut out = Mat::zeros(*rows, *cols);
            for (r, c, part) in parts {
                out.place(*r, *c, &standard_blocks(part)?)?;
            }
            Ok(out)
        }
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn jordan(k: usize) -> Mat {
        let mut m = Mat::zeros(k, k);
        for i in 1..k {
            m[(i - 1, i)] = Scalar::one();
        }
        m
    }

    /// Zero-based unit matrix.
    pub fn unit(i: usize, j: usize, n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = Scalar::one();
        m
    }

    pub fn diag(entries: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let m = Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        };
        m.radicand()?;
        Ok(m)
    }

    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Mat {
        Mat::from_fn(rows.len(), C, |i, j| Scalar::from_int(rows[i][j]))
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Mat {
        Mat::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn column_vector(v: &[Scalar]) -> Mat {
        Mat {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// The quadratic extension the entries live in, if any.
    pub fn radicand(&self) -> Result<Option<i64>> {
        common_radicand(&self.data)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn scale(&self, k: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Mat {
        let mut out = Mat::identity(self.rows);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                dot(row, v)
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &v[i] * &self[(i, j)]).sum())
            .collect()
    }

    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.place(r, c, b).expect("block fits by construction");
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r, c)`.
    pub fn place(&mut self, r: usize, c: usize, block: &Mat) -> Result<()> {
        if r + block.rows > self.rows || c + block.cols > self.cols {
            return Err(Error::Index(format!(
                "{}x{} block at ({r},{c}) in {}x{}",
                block.rows, block.cols, self.rows, self.cols
            )));
        }
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
        Ok(())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Mat::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn commutator(&self, other: &Mat) -> Mat {
        &(self * other) - &(other * self)
    }

    /// Row echelon form by fraction-free elimination.
    pub fn echelon(&self) -> Echelon {
        bareiss(self)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let ech = self.echelon();
        if ech.pivots.len() < self.rows {
            return Ok(Scalar::zero());
        }
        if self.rows == 0 {
            return Ok(Scalar::one());
        }
        let last = &ech.reduced[(self.rows - 1, self.rows - 1)];
        let scale = Scalar::from_rational(num_rational::BigRational::from_integer(
            ech.row_scale.clone(),
        ));
        let det = last / &scale;
        Ok(if ech.swaps % 2 == 1 { -det } else { det })
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let ech = self.echelon();
        let n = self.cols;
        let pivots = &ech.pivots;
        let mut out = Vec::new();
        let mut is_pivot = vec![false; n];
        for &p in pivots {
            is_pivot[p] = true;
        }
        for free in (0..n).filter(|&j| !is_pivot[j]) {
            let mut x = vec![Scalar::zero(); n];
            x[free] = Scalar::one();
            for (t, &p) in pivots.iter().enumerate().rev() {
                let acc: Scalar = ((p + 1)..n)
                    .filter(|&j| !x[j].is_zero() && !ech.reduced[(t, j)].is_zero())
                    .map(|j| &ech.reduced[(t, j)] * &x[j])
                    .sum();
                x[p] = -(acc / &ech.reduced[(t, p)]);
            }
            out.push(x);
        }
        out
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[(r, c)].is_zero())
                .ok_or_else(|| Error::Singular("matrix is not invertible".into()))?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = a[(c, c)].inv().expect("nonzero pivot");
            a.scale_row(c, &piv);
            inv.scale_row(c, &piv);
            for r in 0..n {
                if r != c && !a[(r, c)].is_zero() {
                    let f = a[(r, c)].clone();
                    a.axpy_row(r, c, &f);
                    inv.axpy_row(r, c, &f);
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self · x = b` for square invertible `self`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        Ok(self.inverse()?.mul_vec(b))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, k: &Scalar) {
        for j in 0..self.cols {
            let v = &self[(r, j)] * k;
            self[(r, j)] = v;
        }
    }

    /// row[target] -= f · row[source]
    fn axpy_row(&mut self, target: usize, source: usize, f: &Scalar) {
        for j in 0..self.cols {
            if !self[(source, j)].is_zero() {
                let v = &self[(target, j)] - &(f * &self[(source, j)]);
                self[(target, j)] = v;
            }
        }
    }

    /// Flattens row-major into one column.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Result of fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Echelon form of the row-scaled input.
    pub reduced: Mat,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
    /// Product of the integer factors used to clear denominators.
    pub row_scale: BigInt,
    pub swaps: usize,
}

fn bareiss(m: &Mat) -> Echelon {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut row_scale = BigInt::one();
    for i in 0..rows {
        let l = (0..cols).fold(BigInt::one(), |acc, j| {
            acc.lcm(&a[(i, j)].denominator_lcm())
        });
        if !l.is_one() {
            for j in 0..cols {
                a[(i, j)] = a[(i, j)].scale_int(&l);
            }
            row_scale *= l;
        }
    }
    if let Some(ints) = a
        .data
        .iter()
        .map(|x| x.as_rational().map(|q| q.numer().clone()))
        .collect::<Option<Vec<_>>>()
    {
        return integer_bareiss(rows, cols, ints, row_scale);
    }
    let mut prev = Scalar::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap_rows(p, r);
            swaps += 1;
        }
        let piv = a[(r, c)].clone();
        for i in (r + 1)..rows {
            let lead = a[(i, c)].clone();
            for j in (c + 1)..cols {
                let top = &a[(r, j)];
                let cur = &a[(i, j)];
                let num = if lead.is_zero() || top.is_zero() {
                    &piv * cur
                } else {
                    &(&piv * cur) - &(&lead * top)
                };
                a[(i, j)] = if prev.is_one() { num } else { num / &prev };
            }
            a[(i, c)] = Scalar::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon {
        reduced: a,
        pivots,
        row_scale,
        swaps,
    }
}

/// Bareiss elimination on an integer matrix; every division is exact.
fn integer_bareiss(rows: usize, cols: usize, mut a: Vec<BigInt>, row_scale: BigInt) -> Echelon {
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
            swaps += 1;
        }
        let piv = a[r * cols + c].clone();
        for i in (r + 1)..rows {
            let lead = std::mem::take(&mut a[i * cols + c]);
            for j in (c + 1)..cols {
                let mut num = &piv * &a[i * cols + j];
                let top = &a[r * cols + j];
                if !lead.is_zero() && !top.is_zero() {
                    num -= &lead * top;
                }
                a[i * cols + j] = if prev.is_one() { num } else { num / &prev };
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    let data = a
        .into_iter()
        .map(|n| Scalar::from_rational(BigRational::from_integer(n)))
        .collect();
    Echelon {
        reduced: Mat { rows, cols, data },
        pivots,
        row_scale,
        swaps,
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Entries of a rational matrix over a common denominator.
fn integral_form(m: &Mat) -> Option<(Vec<BigInt>, BigInt)> {
    let mut den = BigInt::one();
    for x in &m.data {
        let d = x.as_rational()?.denom();
        if !d.is_one() {
            den = den.lcm(d);
        }
    }
    let nums = m
        .data
        .iter()
        .map(|x| {
            let q = x.as_rational().expect("checked rational");
            if q.is_zero() {
                BigInt::zero()
            } else if q.denom() == &den {
                q.numer().clone()
            } else {
                q.numer() * (&den / q.denom())
            }
        })
        .collect();
    Some((nums, den))
}

/// Product of rational matrices with one reduction per output entry.
fn rational_product(a: &Mat, b: &Mat) -> Option<Mat> {
    let (an, ad) = integral_form(a)?;
    let (bn, bd) = integral_form(b)?;
    let mut acc = vec![BigInt::zero(); a.rows * b.cols];
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = &an[i * a.cols + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let y = &bn[k * b.cols + j];
                if !y.is_zero() {
                    acc[i * b.cols + j] += x * y;
                }
            }
        }
    }
    let den = ad * bd;
    let data = acc
        .into_iter()
        .map(|n| {
            if n.is_zero() {
                Scalar::zero()
            } else if den.is_one() {
                Scalar::from_rational(BigRational::from_integer(n))
            } else {
                Scalar::from_rational(BigRational::new(n, den.clone()))
            }
        })
        .collect();
    Some(Mat {
        rows: a.rows,
        cols: b.cols,
        data,
    })
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        if let Some(out) = rational_product(self, rhs) {
            return out;
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Mul for Mat {
    type Output = Mat;
    fn mul(self, rhs: Mat) -> Mat {
        &self * &rhs
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape mismatch"
        );
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference shape mismatch"
        );
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Mat, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(deserializer)?;
        Mat::from_rows(rows).map_err(de::Error::custom)
    }
}
