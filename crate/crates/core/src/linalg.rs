//! Small dense linear algebra used internally: LU factorization for cone
//! generator matrices, a symmetric tridiagonal eigensolver for Golub-Welsch
//! quadrature nodes, and Hermitian Jacobi / Cholesky routines for the
//! Carleson generalized eigenproblem. Everything here targets matrices of a
//! few dozen rows at most; no attempt is made at blocking or pivoted
//! rank-revealing factorizations.

use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};
use num_traits::Float;

/// Dense row-major real matrix.
#[derive(Clone, Debug)]
pub struct Mat<T> {
    pub n_rows: usize,
    pub n_cols: usize,
    pub data: Vec<T>,
}

impl<T: Real> Mat<T> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Mat { n_rows, n_cols, data: vec![T::zero(); n_rows * n_cols] }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let n_rows = rows.len();
        let n_cols = if n_rows == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for r in rows {
            assert_eq!(r.len(), n_cols);
            data.extend_from_slice(r);
        }
        Mat { n_rows, n_cols, data }
    }

    /// Build from a list of column vectors.
    pub fn from_cols(cols: &[Vec<T>]) -> Self {
        let n_cols = cols.len();
        let n_rows = if n_cols == 0 { 0 } else { cols[0].len() };
        let mut m = Mat::zeros(n_rows, n_cols);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n_rows);
            for i in 0..n_rows {
                *m.at_mut(i, j) = c[i];
            }
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> T {
        self.data[i * self.n_cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.n_cols + j]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.n_rows).map(|i| self.at(i, j)).collect()
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.n_cols);
        (0..self.n_rows)
            .map(|i| {
                let mut s = T::zero();
                for j in 0..self.n_cols {
                    s = s + self.at(i, j) * x[j];
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat<T> {
        let mut t = Mat::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                *t.at_mut(j, i) = self.at(i, j);
            }
        }
        t
    }

    /// Determinant and inverse via LU with partial pivoting.
    /// Errors with `SingularGenerators` when a pivot falls below `tol`.
    pub fn det_inverse(&self, tol: T) -> Result<(T, Mat<T>)> {
        assert_eq!(self.n_rows, self.n_cols);
        let n = self.n_rows;
        let mut a = self.clone();
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            *inv.at_mut(i, i) = T::one();
        }
        let mut det = T::one();
        for k in 0..n {
            // partial pivot
            let mut p = k;
            let mut best = Float::abs(a.at(k, k));
            for i in (k + 1)..n {
                let v = Float::abs(a.at(i, k));
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= tol {
                return Err(Error::SingularGenerators { det: 0.0 });
            }
            if p != k {
                for j in 0..n {
                    let tmp = a.at(k, j);
                    *a.at_mut(k, j) = a.at(p, j);
                    *a.at_mut(p, j) = tmp;
                    let tmp = inv.at(k, j);
                    *inv.at_mut(k, j) = inv.at(p, j);
                    *inv.at_mut(p, j) = tmp;
                }
                det = -det;
            }
            let piv = a.at(k, k);
            det = det * piv;
            let piv_inv = T::one() / piv;
            for j in 0..n {
                *a.at_mut(k, j) = a.at(k, j) * piv_inv;
                *inv.at_mut(k, j) = inv.at(k, j) * piv_inv;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a.at(i, k);
                if f != T::zero() {
                    for j in 0..n {
                        *a.at_mut(i, j) = a.at(i, j) - f * a.at(k, j);
                        *inv.at_mut(i, j) = inv.at(i, j) - f * inv.at(k, j);
                    }
                }
            }
        }
        Ok((det, inv))
    }
}

/// Eigen-decomposition of a symmetric tridiagonal matrix by the implicit QL
/// algorithm with Wilkinson shifts (the classic `tql2` routine). Returns
/// eigenvalues (ascending) and the first component of each normalized
/// eigenvector, which is all Golub-Welsch needs.
pub fn tridiag_eigen_first_components<T: Real>(
    diag: &[T],
    offdiag: &[T],
) -> Result<(Vec<T>, Vec<T>)> {
    let n = diag.len();
    assert_eq!(offdiag.len(), n.saturating_sub(1));
    let mut d = diag.to_vec();
    let mut e = vec![T::zero(); n];
    e[..n - 1].copy_from_slice(offdiag);
    // z starts as the first row of the identity; rotations accumulate the
    // first row of the eigenvector matrix.
    let mut z = vec![T::zero(); n];
    z[0] = T::one();

    let two = T::of(2.0);
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = Float::abs(d[m]) + Float::abs(d[m + 1]);
                if Float::abs(e[m]) <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = Float::hypot(g, T::one());
            let sign_r = if g >= T::zero() { Float::abs(r) } else { -Float::abs(r) };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = Float::hypot(f, g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // accumulate first-row components
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if r == T::zero() && m > l {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    // sort ascending, carrying first components
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap());
    let dv: Vec<T> = idx.iter().map(|&i| d[i]).collect();
    let zv: Vec<T> = idx.iter().map(|&i| z[i]).collect();
    Ok((dv, zv))
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug)]
pub struct CMat<T> {
    pub n: usize,
    pub data: Vec<Cx<T>>,
}

impl<T: Real> CMat<T> {
    pub fn zeros(n: usize) -> Self {
        CMat { n, data: vec![Cx::new(T::zero(), T::zero()); n * n] }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Cx<T> {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Cx<T> {
        &mut self.data[i * self.n + j]
    }

    pub fn trace_real(&self) -> T {
        let mut s = T::zero();
        for i in 0..self.n {
            s = s + self.at(i, i).re;
        }
        s
    }

    /// Hermitize in place: A <- (A + A*)/2. Assembly noise on the skew part
    /// is discarded before factorizations.
    pub fn hermitize(&mut self) {
        let half = T::of(0.5);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let avg = (self.at(i, j) + self.at(j, i).conj()) * half;
                *self.at_mut(i, j) = avg;
                *self.at_mut(j, i) = avg.conj();
            }
            let dii = self.at(i, i).re;
            *self.at_mut(i, i) = Cx::new(dii, T::zero());
        }
    }

    /// Cholesky factorization A = L L* of a Hermitian positive definite
    /// matrix; returns lower-triangular L.
    pub fn cholesky(&self) -> Result<CMat<T>> {
        let n = self.n;
        let mut l = CMat::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = self.at(i, j);
                for k in 0..j {
                    s = s - l.at(i, k) * l.at(j, k).conj();
                }
                if i == j {
                    let re = s.re;
                    if re <= T::zero() {
                        return Err(Error::GramIllConditioned { cond: f64::INFINITY });
                    }
                    *l.at_mut(i, i) = Cx::new(Float::sqrt(re), T::zero());
                } else {
                    *l.at_mut(i, j) = s / l.at(j, j);
                }
            }
        }
        Ok(l)
    }

    /// Solve L x = b with L lower triangular.
    pub fn solve_lower(&self, b: &[Cx<T>]) -> Vec<Cx<T>> {
        let n = self.n;
        let mut x = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let lik = self.at(i, k);
                x[i] = x[i] - lik * x[k];
            }
            x[i] = x[i] / self.at(i, i);
        }
        x
    }

    /// Solve L* x = b with L lower triangular (conjugate-transpose solve).
    pub fn solve_lower_conj_transpose(&self, b: &[Cx<T>]) -> Vec<Cx<T>> {
        let n = self.n;
        let mut x = b.to_vec();
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let lki = self.at(k, i).conj();
                x[i] = x[i] - lki * x[k];
            }
            x[i] = x[i] / self.at(i, i).conj();
        }
        x
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Returns eigenvalues in ascending order. Matrices here are tiny (frames of
/// at most a dozen kernels), so the O(n^3)-per-sweep cost is irrelevant.
pub fn hermitian_eigenvalues<T: Real>(a: &CMat<T>) -> Result<Vec<T>> {
    let n = a.n;
    let mut m = a.clone();
    m.hermitize();
    if n == 1 {
        return Ok(vec![m.at(0, 0).re]);
    }
    let max_sweeps = 60;
    for _ in 0..max_sweeps {
        // off-diagonal Frobenius norm
        let mut off = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off = off + m.at(i, j).norm_sqr();
                }
            }
        }
        let scale = Float::max(m.trace_real().abs(), T::one());
        if Float::sqrt(off) <= T::epsilon() * scale * T::of(n as f64) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.at(p, q);
                if apq.norm() <= T::epsilon() * scale {
                    continue;
                }
                let app = m.at(p, p).re;
                let aqq = m.at(q, q).re;
                // unitary 2x2 diagonalization: phase then real rotation
                let phase = apq / Cx::new(apq.norm(), T::zero());
                let tau = (aqq - app) / (T::of(2.0) * apq.norm());
                let t = {
                    let s = if tau >= T::zero() { T::one() } else { -T::one() };
                    s / (Float::abs(tau) + Float::sqrt(T::one() + tau * tau))
                };
                let c = T::one() / Float::sqrt(T::one() + t * t);
                let s = t * c;
                // columns p,q update: G = [[c, s*phase],[-s*conj(phase), c]]
                let cs = Cx::new(c, T::zero());
                let sp = phase * s;
                for i in 0..n {
                    let aip = m.at(i, p);
                    let aiq = m.at(i, q);
                    *m.at_mut(i, p) = aip * cs - aiq * sp.conj();
                    *m.at_mut(i, q) = aip * sp + aiq * cs;
                }
                for j in 0..n {
                    let apj = m.at(p, j);
                    let aqj = m.at(q, j);
                    *m.at_mut(p, j) = apj * cs - aqj * sp;
                    *m.at_mut(q, j) = apj * sp.conj() + aqj * cs;
                }
                m.hermitize();
            }
        }
    }
    let mut vals: Vec<T> = (0..n).map(|i| m.at(i, i).re).collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(vals)
}

/// Largest generalized eigenvalue of `M v = lambda G v` with `M` Hermitian
/// PSD and `G` Hermitian positive definite. `G` is Tikhonov-shifted by
/// `eps_scale * trace(G) / n` before the Cholesky reduction.
pub fn generalized_eigen_max<T: Real>(m: &CMat<T>, g: &CMat<T>, eps_scale: T) -> Result<T> {
    let n = g.n;
    assert_eq!(m.n, n);
    let mut greg = g.clone();
    greg.hermitize();
    let shift = eps_scale * greg.trace_real() / T::of(n as f64);
    for i in 0..n {
        let d = greg.at(i, i).re + shift;
        *greg.at_mut(i, i) = Cx::new(d, T::zero());
    }
    // condition estimate from the eigenvalues of G
    let gvals = hermitian_eigenvalues(&greg)?;
    let gmin = gvals[0];
    let gmax = gvals[n - 1];
    if gmin <= T::zero() || gmax / gmin > T::of(1e12) {
        return Err(Error::GramIllConditioned { cond: (gmax / Float::max(gmin, T::epsilon())).as_f64() });
    }
    let l = greg.cholesky()?;
    // A = L^{-1} M L^{-*}
    let mut a = CMat::zeros(n);
    for j in 0..n {
        let col: Vec<Cx<T>> = (0..n).map(|i| m.at(i, j)).collect();
        let y = l.solve_lower(&col);
        for i in 0..n {
            *a.at_mut(i, j) = y[i];
        }
    }
    // right-multiply by L^{-*}: solve row-wise (A L^{-*})^* = L^{-1} A^*
    let mut b = CMat::zeros(n);
    for i in 0..n {
        let row: Vec<Cx<T>> = (0..n).map(|j| a.at(i, j).conj()).collect();
        let y = l.solve_lower(&row);
        for j in 0..n {
            *b.at_mut(i, j) = y[j].conj();
        }
    }
    let vals = hermitian_eigenvalues(&b)?;
    Ok(vals[n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lu_inverse_2x2() {
        let m = Mat::from_cols(&[vec![1.0, 0.0], vec![1.0, 1.0]]);
        let (det, inv) = m.det_inverse(1e-12).unwrap();
        assert_relative_eq!(det, 1.0, epsilon = 1e-14);
        // inverse of [[1,1],[0,1]] is [[1,-1],[0,1]]
        assert_relative_eq!(inv.at(0, 1), -1.0, epsilon = 1e-14);
    }

    #[test]
    fn lu_rejects_singular() {
        let m = Mat::from_cols(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(m.det_inverse(1e-12).is_err());
    }

    #[test]
    fn tridiag_eigen_2x2() {
        // [[0,1],[1,0]] has eigenvalues -1, 1 and eigenvectors (1,+-1)/sqrt2
        let (vals, z) = tridiag_eigen_first_components(&[0.0, 0.0], &[1.0]).unwrap();
        assert_relative_eq!(vals[0], -1.0, epsilon = 1e-12);
        assert_relative_eq!(vals[1], 1.0, epsilon = 1e-12);
        assert_relative_eq!(z[0] * z[0], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn hermitian_eigen_known() {
        let mut a = CMat::<f64>::zeros(2);
        *a.at_mut(0, 0) = Cx::new(2.0, 0.0);
        *a.at_mut(1, 1) = Cx::new(3.0, 0.0);
        *a.at_mut(0, 1) = Cx::new(0.0, 1.0);
        *a.at_mut(1, 0) = Cx::new(0.0, -1.0);
        let vals = hermitian_eigenvalues(&a).unwrap();
        // eigenvalues of [[2, i],[-i, 3]]: (5 +- sqrt(5))/2
        assert_relative_eq!(vals[0], (5.0 - 5.0_f64.sqrt()) / 2.0, epsilon = 1e-10);
        assert_relative_eq!(vals[1], (5.0 + 5.0_f64.sqrt()) / 2.0, epsilon = 1e-10);
    }

    #[test]
    fn generalized_eigen_1x1() {
        let mut m = CMat::<f64>::zeros(1);
        *m.at_mut(0, 0) = Cx::new(0.25, 0.0);
        let mut g = CMat::<f64>::zeros(1);
        *g.at_mut(0, 0) = Cx::new(0.5, 0.0);
        let lam = generalized_eigen_max(&m, &g, 1e-12).unwrap();
        assert_relative_eq!(lam, 0.5, epsilon = 1e-9);
    }
}
