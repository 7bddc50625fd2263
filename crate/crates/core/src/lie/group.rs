//! The group R^n ⋊ M_n with law `(v, A)(u, B) = (v + (A^{-1})^T u, AB)`.

use std::fmt::Debug;

use num_traits::{Num, Signed};
use thiserror::Error;

use super::Basis;

/// Field scalars the group law is generic over: exact rationals or `f64`.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed {}

impl<T: Clone + Debug + PartialOrd + Num + Signed> Scalar for T {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("last row must be (0, ..., 0, 1)")]
    NotMirabolic,
    #[error("matrix is singular")]
    Singular,
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("no closed-form one-parameter subgroup for direction {0}")]
    UnsupportedDirection(Basis),
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(n: usize, data: Vec<T>) -> Result<Self, GroupError> {
        if data.len() != n * n {
            return Err(GroupError::Shape {
                expected: n * n,
                got: data.len(),
            });
        }
        Ok(Matrix { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Matrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.data[row * self.n + col]
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for k in 0..n {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                data.push(acc);
            }
        }
        Matrix { n, data }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(T::zero(), |acc, k| acc + self.get(i, k).clone() * v[k].clone())
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix<T> {
        let n = self.n;
        let data = (0..n * n).map(|idx| self.get(idx % n, idx / n).clone()).collect();
        Matrix { n, data }
    }

    /// Gauss–Jordan with partial pivoting; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix<T>> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Matrix::<T>::identity(n).data;
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r * n + col].is_zero())
                .max_by(|&r, &s| {
                    a[r * n + col]
                        .abs()
                        .partial_cmp(&a[s * n + col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })?;
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let p = a[col * n + col].clone();
            for k in 0..n {
                a[col * n + k] = a[col * n + k].clone() / p.clone();
                inv[col * n + k] = inv[col * n + k].clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for k in 0..n {
                    a[r * n + k] = a[r * n + k].clone() - factor.clone() * a[col * n + k].clone();
                    inv[r * n + k] = inv[r * n + k].clone() - factor.clone() * inv[col * n + k].clone();
                }
            }
        }
        Some(Matrix { n, data: inv })
    }
}

/// Element `(v, A)` of R^n ⋊ M_n.
#[derive(Debug, Clone, PartialEq)]
pub struct MirabolicElement<T> {
    v: Vec<T>,
    a: Matrix<T>,
}

impl<T: Scalar> MirabolicElement<T> {
    pub fn new(v: Vec<T>, a: Matrix<T>) -> Result<Self, GroupError> {
        let n = a.n();
        if v.len() != n {
            return Err(GroupError::DimensionMismatch {
                left: v.len(),
                right: n,
            });
        }
        let last_row_ok = (0..n).all(|j| {
            let want = if j + 1 == n { T::one() } else { T::zero() };
            *a.get(n - 1, j) == want
        });
        if !last_row_ok {
            return Err(GroupError::NotMirabolic);
        }
        if a.inverse().is_none() {
            return Err(GroupError::Singular);
        }
        Ok(MirabolicElement { v, a })
    }

    pub fn identity(n: usize) -> Self {
        MirabolicElement {
            v: vec![T::zero(); n],
            a: Matrix::identity(n),
        }
    }

    /// R²⋊M₂ element `((v1, v2), [[a, b], [0, 1]])`.
    pub fn planar(v1: T, v2: T, a: T, b: T) -> Result<Self, GroupError> {
        let m = Matrix::from_rows(2, vec![a, b, T::zero(), T::one()])?;
        Self::new(vec![v1, v2], m)
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn translation(&self) -> &[T] {
        &self.v
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn product(&self, other: &Self) -> Result<Self, GroupError> {
        if self.n() != other.n() {
            return Err(GroupError::DimensionMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let a_inv_t = self.a.inverse().ok_or(GroupError::Singular)?.transpose();
        let shifted = a_inv_t.mul_vec(&other.v);
        let v = self
            .v
            .iter()
            .zip(shifted)
            .map(|(x, y)| x.clone() + y)
            .collect();
        Ok(MirabolicElement {
            v,
            a: self.a.mul(&other.a),
        })
    }

    /// `(−A^T v, A^{-1})`.
    pub fn inverse(&self) -> Result<Self, GroupError> {
        let a_inv = self.a.inverse().ok_or(GroupError::Singular)?;
        let v = self.a.transpose().mul_vec(&self.v).into_iter().map(|x| -x).collect();
        Ok(MirabolicElement { v, a: a_inv })
    }
}

impl MirabolicElement<f64> {
    /// `(v1, v2, a, b)` for n = 2.
    pub fn planar_coords(&self) -> Option<(f64, f64, f64, f64)> {
        (self.n() == 2).then(|| (self.v[0], self.v[1], *self.a.get(0, 0), *self.a.get(0, 1)))
    }
}

/// Closed-form one-parameter subgroups of R²⋊M₂.
///
/// `e_11` and `e_12` exponentiate inside M₂; `e_21`, `e_22` are translations of R².
pub fn exp_basis(direction: Basis, t: f64) -> Result<MirabolicElement<f64>, GroupError> {
    match direction {
        Basis::E11 => MirabolicElement::planar(0.0, 0.0, t.exp(), 0.0),
        Basis::E12 => MirabolicElement::planar(0.0, 0.0, 1.0, t),
        Basis::E21 => MirabolicElement::planar(t, 0.0, 1.0, 0.0),
        Basis::E22 => MirabolicElement::planar(0.0, t, 1.0, 0.0),
        other => Err(GroupError::UnsupportedDirection(other)),
    }
}

/// Element of GL₂(R), `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gl2Element {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Gl2Element {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, GroupError> {
        let g = Gl2Element { a, b, c, d };
        if g.det() == 0.0 {
            return Err(GroupError::Singular);
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        Gl2Element {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn product(&self, o: &Gl2Element) -> Gl2Element {
        Gl2Element {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// `exp(t e_ij)` in GL₂(R).
pub fn exp_gl2(direction: Basis, t: f64) -> Result<Gl2Element, GroupError> {
    Ok(match direction {
        Basis::E11 => Gl2Element::new(t.exp(), 0.0, 0.0, 1.0)?,
        Basis::E12 => Gl2Element::new(1.0, t, 0.0, 1.0)?,
        Basis::E21 => Gl2Element::new(1.0, 0.0, t, 1.0)?,
        Basis::E22 => Gl2Element::new(1.0, 0.0, 0.0, t.exp())?,
        other => return Err(GroupError::UnsupportedDirection(other)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, Rational};

    fn exact(v: [i64; 2], a: [(i64, i64); 4]) -> MirabolicElement<Rational> {
        let m = Matrix::from_rows(2, a.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap();
        MirabolicElement::new(v.iter().map(|&x| int(x)).collect(), m).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let g = exact([3, -1], [(2, 3), (1, 1), (0, 1), (1, 1)]);
        let e = MirabolicElement::identity(2);
        assert_eq!(e.product(&g).unwrap(), g);
        assert_eq!(g.product(&e).unwrap(), g);
    }

    #[test]
    fn translations_add() {
        let g = exact([1, 0], [(1, 1), (0, 1), (0, 1), (1, 1)]);
        let h = exact([0, 1], [(1, 1), (0, 1), (0, 1), (1, 1)]);
        assert_eq!(g.product(&h).unwrap(), exact([1, 1], [(1, 1), (0, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn inverse_is_two_sided() {
        let g = exact([2, 5], [(-3, 4), (7, 2), (0, 1), (1, 1)]);
        let e = MirabolicElement::identity(2);
        assert_eq!(g.product(&g.inverse().unwrap()).unwrap(), e);
        assert_eq!(g.inverse().unwrap().product(&g).unwrap(), e);
    }

    #[test]
    fn rejects_non_mirabolic_and_singular() {
        let bad_row = Matrix::from_rows(2, vec![int(1), int(0), int(1), int(1)]).unwrap();
        assert_eq!(
            MirabolicElement::new(vec![int(0), int(0)], bad_row),
            Err(GroupError::NotMirabolic)
        );
        let singular = Matrix::from_rows(2, vec![int(0), int(1), int(0), int(1)]).unwrap();
        assert_eq!(
            MirabolicElement::new(vec![int(0), int(0)], singular),
            Err(GroupError::Singular)
        );
    }

    #[test]
    fn exp_basis_examples() {
        let e = MirabolicElement::<f64>::identity(2);
        assert_eq!(exp_basis(Basis::E12, 0.0).unwrap(), e);
        assert_eq!(
            exp_basis(Basis::E21, 1.0).unwrap(),
            MirabolicElement::planar(1.0, 0.0, 1.0, 0.0).unwrap()
        );
        let (t, s) = (0.3, -1.1);
        let lhs = exp_basis(Basis::E11, t).unwrap().product(&exp_basis(Basis::E11, s).unwrap()).unwrap();
        let (_, _, a, b) = lhs.planar_coords().unwrap();
        assert!((a - (t + s).exp()).abs() < 1e-15 && b == 0.0);
        assert!(exp_basis(Basis::new(1, 3), 0.1).is_err());
    }

    #[test]
    fn gl2_one_parameter_subgroups_compose() {
        for dir in Basis::GL2 {
            let lhs = exp_gl2(dir, 0.25).unwrap().product(&exp_gl2(dir, 0.5).unwrap());
            let rhs = exp_gl2(dir, 0.75).unwrap();
            for (x, y) in [(lhs.a, rhs.a), (lhs.b, rhs.b), (lhs.c, rhs.c), (lhs.d, rhs.d)] {
                assert!((x - y).abs() < 1e-14);
            }
        }
    }
}
