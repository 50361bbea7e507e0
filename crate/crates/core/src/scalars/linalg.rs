use std::collections::BTreeMap;

use super::field::Field;
use crate::error::{Error, Result};

/// Sparse vector keyed by coordinate; never stores zeros.
pub type SparseVec<F> = BTreeMap<usize, F>;

/// `dst += c * src`, dropping cancelled entries.
pub fn axpy<F: Field>(dst: &mut SparseVec<F>, c: &F, src: &SparseVec<F>) {
    if c.is_zero() {
        return;
    }
    for (&k, v) in src {
        let term = c.mul(v);
        match dst.get_mut(&k) {
            Some(slot) => {
                let sum = slot.add(&term);
                if sum.is_zero() {
                    dst.remove(&k);
                } else {
                    *slot = sum;
                }
            }
            None => {
                dst.insert(k, term);
            }
        }
    }
}

pub fn scale_sparse<F: Field>(v: &SparseVec<F>, c: &F) -> SparseVec<F> {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&k, x)| (k, x.mul(c))).collect()
}

/// Adds `c` at coordinate `k`, removing the entry if it cancels.
pub fn add_entry<F: Field>(v: &mut SparseVec<F>, k: usize, c: F) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&k) {
        Some(slot) => {
            let sum = slot.add(&c);
            if sum.is_zero() {
                v.remove(&k);
            } else {
                *slot = sum;
            }
        }
        None => {
            v.insert(k, c);
        }
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeError("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Matrix<G>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeError(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeError("cannot add matrices of different shapes".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn apply(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::ShapeError("vector length does not match column count".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect())
    }

    /// Reduced row echelon form; returns pivot columns.
    fn rref(&mut self) -> Result<Vec<usize>> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let best = (r..self.rows)
                .filter(|&i| !self.get(i, c).is_zero())
                .min_by_key(|&i| self.get(i, c).cost());
            let Some(p) = best else { continue };
            self.swap_rows(p, r);
            let inv = self.get(r, c).inv()?;
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pr = self.get(r, j);
                    if pr.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j).sub(&f.mul(pr));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.clone().rref()?.len())
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Result<Vec<Vec<F>>> {
        let mut m = self.clone();
        let pivots = m.rref()?;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = m.get(r, free).neg();
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// Solves `self * x = b` for one particular solution.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeError("right-hand side length mismatch".into()));
        }
        let mut aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref()?;
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeError("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let pivots = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::ShapeError(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(F::one());
        }
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = F::one();
        for k in 0..n - 1 {
            let best = (k..n)
                .filter(|&i| !m.get(i, k).is_zero())
                .min_by_key(|&i| m.get(i, k).cost());
            let Some(p) = best else { return Ok(F::zero()) };
            if p != k {
                m.swap_rows(p, k);
                sign_flip = !sign_flip;
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                let lead = m.get(i, k).clone();
                for j in k + 1..n {
                    let a = m.get(i, j).mul(&pivot);
                    let b = lead.mul(m.get(k, j));
                    let v = a.sub(&b).div_exact(&prev)?;
                    m.set(i, j, v);
                }
                m.set(i, k, F::zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if sign_flip { d.neg() } else { d })
    }
}

/// Outcome of [`Echelon::insert_with`].
#[derive(Clone, Debug, PartialEq)]
pub enum Insert<F> {
    Added(usize),
    Dependent(SparseVec<F>),
}

/// Incremental row echelon basis of sparse vectors.
///
/// Each stored row has leading entry 1 at its largest coordinate. Rows may carry a
/// companion vector that is transformed alongside, so dependencies among inserted
/// vectors can be read off.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: BTreeMap<usize, (SparseVec<F>, SparseVec<F>)>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self { rows: BTreeMap::new() }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, k: usize) -> bool {
        self.rows.contains_key(&k)
    }

    /// Pivot rows (vector part), in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec<F>)> {
        self.rows.iter().map(|(&k, (v, _))| (k, v))
    }

    /// Reduces `v` (and `comp` alongside) against the stored rows.
    pub fn reduce_with(&self, v: &mut SparseVec<F>, comp: &mut SparseVec<F>) {
        let mut bound = usize::MAX;
        loop {
            let next = if bound == usize::MAX {
                v.keys().next_back().copied()
            } else {
                v.range(..bound).next_back().map(|(&k, _)| k)
            };
            let Some(k) = next else { break };
            if let Some((row, rc)) = self.rows.get(&k) {
                let c = v[&k].neg();
                axpy(v, &c, row);
                axpy(comp, &c, rc);
            }
            bound = k;
        }
    }

    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut v = v.clone();
        let mut comp = SparseVec::new();
        self.reduce_with(&mut v, &mut comp);
        v
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v` with its companion. If `v` is already in the span, returns the
    /// reduced companion instead.
    pub fn insert_with(&mut self, v: SparseVec<F>, comp: SparseVec<F>) -> Result<Insert<F>> {
        let mut v = v;
        let mut comp = comp;
        self.reduce_with(&mut v, &mut comp);
        let Some((&k, lead)) = v.iter().next_back() else {
            return Ok(Insert::Dependent(comp));
        };
        let inv = lead.inv()?;
        let v = scale_sparse(&v, &inv);
        let comp = scale_sparse(&comp, &inv);
        self.rows.insert(k, (v, comp));
        Ok(Insert::Added(k))
    }

    /// Inserts `v`; true if the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> Result<bool> {
        Ok(matches!(self.insert_with(v, SparseVec::new())?, Insert::Added(_)))
    }

    /// Stored row and companion at a pivot.
    pub fn row(&self, pivot: usize) -> Option<(&SparseVec<F>, &SparseVec<F>)> {
        self.rows.get(&pivot).map(|(v, c)| (v, c))
    }

    pub fn companion(&self, pivot: usize) -> Option<&SparseVec<F>> {
        self.rows.get(&pivot).map(|(_, c)| c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{GaussRational, Scalar};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn t(e: i64) -> Scalar {
        Scalar::t_pow(e)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(Matrix::<Scalar>::identity(3).nullspace().unwrap().is_empty());
    }

    #[test]
    fn zero_matrix_kernel() {
        assert_eq!(Matrix::<Scalar>::zeros(2, 3).nullspace().unwrap().len(), 3);
    }

    #[test]
    fn rank_one_kernel() {
        let a = Matrix::from_rows(vec![vec![s(1), t(1)], vec![t(1), t(2)]]).unwrap();
        let k = a.nullspace().unwrap();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let ratio = v[0].div(&v[1]).unwrap();
        assert_eq!(ratio, t(1).neg());
    }

    #[test]
    fn determinants() {
        assert_eq!(Matrix::<Scalar>::identity(4).determinant().unwrap(), s(1));
        let d = Matrix::from_rows(vec![vec![t(1), s(0)], vec![s(0), t(-1)]]).unwrap();
        assert_eq!(d.determinant().unwrap(), s(1));
        let z = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(1), s(1)]]).unwrap();
        assert!(z.determinant().unwrap().is_zero());
        let r = Matrix::<Scalar>::zeros(2, 3);
        assert!(matches!(r.determinant(), Err(Error::ShapeError(_))));
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::from_rows(vec![vec![t(1), s(1)], vec![s(2), t(-1)]]).unwrap();
        let prod = a.mul(&a.inverse().unwrap()).unwrap();
        assert_eq!(prod, Matrix::identity(2));
    }

    #[test]
    fn echelon_reports_dependencies() {
        let mut e = Echelon::<GaussRational>::new();
        let v = |xs: &[(usize, i64)]| -> SparseVec<GaussRational> {
            xs.iter().map(|&(k, c)| (k, GaussRational::from_int(c))).collect()
        };
        let c = |k: usize| v(&[(k, 1)]);
        assert_eq!(e.insert_with(v(&[(0, 1), (2, 1)]), c(0)).unwrap(), Insert::Added(2));
        assert_eq!(e.insert_with(v(&[(1, 1), (2, 2)]), c(1)).unwrap(), Insert::Added(1));
        let dep = e.insert_with(v(&[(0, 2), (1, 1), (2, 4)]), c(2)).unwrap();
        assert_eq!(dep, Insert::Dependent(v(&[(0, -2), (1, -1), (2, 1)])));
        assert_eq!(e.rank(), 2);
    }
}
