//! Dense exact matrices, just enough for the 21×21 operator on Λ².

use num_traits::{One, Zero};

use crate::polyring::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.n + c] = v;
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// self + c·I
    pub fn shift(&self, c: &Rational) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] += c;
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else {
                continue;
            };
            for j in 0..n {
                a.swap(rank * n + j, p * n + j);
            }
            let pivot = a[rank * n + col].clone();
            for r in 0..n {
                if r == rank || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] / &pivot;
                for j in col..n {
                    let sub = &factor * &a[rank * n + j];
                    a[r * n + j] -= sub;
                }
            }
            rank += 1;
        }
        rank
    }

    /// det(self), exact Gaussian elimination.
    pub fn determinant(&self) -> Rational {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                for j in 0..n {
                    a.swap(col * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] / &pivot;
                for j in col..n {
                    let sub = &factor * &a[col * n + j];
                    a[r * n + j] -= sub;
                }
            }
        }
        det
    }

    /// Characteristic polynomial det(xI − A), coefficients in ascending
    /// degree, by the Faddeev–LeVerrier recursion.
    pub fn characteristic_polynomial(&self) -> Vec<Rational> {
        let n = self.n;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Matrix::zeros(n);
        for k in 1..=n {
            m = self.mul(&m).shift(&coeffs[n + 1 - k]);
            let am = self.mul(&m);
            coeffs[n - k] = -am.trace() / Rational::from_integer((k as i64).into());
        }
        coeffs
    }
}

/// Product of polynomials given as ascending coefficient vectors.
pub fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Π (x − rᵢ)^{mᵢ}.
pub fn poly_from_roots(roots: &[(i64, usize)]) -> Vec<Rational> {
    let mut p = vec![Rational::one()];
    for &(r, m) in roots {
        for _ in 0..m {
            p = poly_mul(&p, &[Rational::from_integer((-r).into()), Rational::one()]);
        }
    }
    p
}

/// Multiplicity of `root` in `p`, by repeated synthetic division.
pub fn root_multiplicity(p: &[Rational], root: i64) -> usize {
    let r = Rational::from_integer(root.into());
    let mut p = p.to_vec();
    let mut mult = 0;
    while p.len() > 1 {
        // Horner: quotient and remainder of p / (x − r)
        let deg = p.len() - 1;
        let mut q = vec![Rational::zero(); deg];
        let mut acc = Rational::zero();
        for i in (0..=deg).rev() {
            acc = &acc * &r + &p[i];
            if i > 0 {
                q[i - 1] = acc.clone();
            }
        }
        if !acc.is_zero() {
            break;
        }
        p = q;
        mult += 1;
    }
    mult
}
