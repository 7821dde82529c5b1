//! Dense univariate polynomials in `X = p^{-s}` and the exact linear algebra
//! behind tensoring local factors.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, Ring};

/// Coefficients stored constant term first. No trimming: the declared degree
/// is `coeffs.len() - 1` even if the top coefficient happens to vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Polynomial<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![R::one()] }
    }

    /// `1 - r X`
    pub fn linear_factor(r: R) -> Self {
        Self { coeffs: vec![R::one(), -r] }
    }

    /// `prod (1 - r_i X)`
    pub fn from_inverse_roots<I: IntoIterator<Item = R>>(roots: I) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| acc.mul(&Self::linear_factor(r)))
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coeffs: out }
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Polynomial<S> {
        Polynomial { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

/// Square matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![R::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.n + j] = v;
    }

    /// Companion matrix `C` with `det(1 - X C) = f(X)` for `f(0) = 1`:
    /// ones on the subdiagonal, last column `-(c_d, ..., c_1)`.
    pub fn companion(f: &Polynomial<R>) -> Self {
        let d = f.degree();
        let mut m = Self::zeros(d);
        for i in 1..d {
            m.set(i, i - 1, R::one());
        }
        for i in 0..d {
            m.set(i, d - 1, -f.coeff(d - i));
        }
        m
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        let (a, b) = (self.n, other.n);
        let mut m = Self::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        m.set(i * b + k, j * b + l, x.clone() * other.get(k, l).clone());
                    }
                }
            }
        }
        m
    }

    /// Characteristic polynomial `det(t - M)` by Berkowitz's division-free
    /// recursion, returned leading coefficient first. The same vector read as
    /// constant term first is `det(1 - X M)`.
    pub fn charpoly(&self) -> Vec<R> {
        let mut poly = vec![R::one()];
        for r in 0..self.n {
            // A_{r+1} = [[A_r, C], [R, a]]
            let a = self.get(r, r).clone();
            let col: Vec<R> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let row: Vec<R> = (0..r).map(|j| self.get(r, j).clone()).collect();

            // q = (1, -a, -R C, -R A C, ..., -R A^{r-1} C)
            let mut q = Vec::with_capacity(r + 2);
            q.push(R::one());
            q.push(-a);
            let mut v = col;
            for _ in 0..r {
                let dot = row
                    .iter()
                    .zip(&v)
                    .fold(R::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
                q.push(-dot);
                v = (0..r)
                    .map(|i| {
                        (0..r).fold(R::zero(), |acc, j| {
                            acc + self.get(i, j).clone() * v[j].clone()
                        })
                    })
                    .collect();
            }

            let mut next = vec![R::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, pj) in poly.iter().enumerate().take(i.min(r) + 1) {
                    *slot = slot.clone() + q[i - j].clone() * pj.clone();
                }
            }
            poly = next;
        }
        poly
    }

    /// `det(1 - X M)`, constant term first.
    pub fn det_one_minus_x(&self) -> Polynomial<R> {
        Polynomial::new(self.charpoly())
    }
}

/// Power sums `p_1..=p_m` of the inverse roots of `f = prod (1 - r_i X)`,
/// from `m c_m = -sum_{j=1}^m p_j c_{m-j}`.
pub fn power_sums(f: &Polynomial<BigInt>, m: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = Vec::with_capacity(m);
    for k in 1..=m {
        let mut acc = -BigInt::from(k) * f.coeff(k);
        for j in 1..k {
            acc -= &p[j - 1] * f.coeff(k - j);
        }
        p.push(acc);
    }
    p
}

/// Inverse of [`power_sums`]: rebuilds `1 + c_1 X + ... + c_d X^d` from
/// `p_1..=p_d`. Every division must be exact, otherwise the power sums do not
/// come from an integral polynomial.
pub fn from_power_sums(p: &[BigInt], degree: usize) -> Result<Polynomial<BigInt>> {
    let mut c = vec![BigInt::one()];
    for k in 1..=degree {
        let mut acc = BigInt::zero();
        for j in 1..=k {
            acc += &p[j - 1] * &c[k - j];
        }
        let (q, r) = (-acc).div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Defect(format!(
                "power sums are not integral at degree {k}"
            )));
        }
        c.push(q);
    }
    Ok(Polynomial::new(c))
}

/// Inverse roots of `f(X) = 1 + c_1 X + ... + c_d X^d`, i.e. the roots of the
/// monic reversal `t^d + c_1 t^{d-1} + ... + c_d`, by Durand-Kerner iteration
/// after rescaling to unit root radius.
pub fn inverse_roots<T: Real>(f: &Polynomial<Complex<T>>) -> Vec<Complex<T>> {
    let d = f.degree();
    if d == 0 {
        return Vec::new();
    }
    let c = f.coeffs();
    // geometric-mean-ish radius from the largest |c_i|^{1/i}
    let mut radius = T::zero();
    for (i, ci) in c.iter().enumerate().skip(1) {
        let n = ci.norm();
        if n > T::zero() {
            radius = radius.max(n.powf(T::one() / T::of(i as f64)));
        }
    }
    if radius == T::zero() {
        return vec![Complex::new(T::zero(), T::zero()); d];
    }
    // monic in u = t / radius: u^d + sum_i (c_i / radius^i) u^{d-i}
    let scaled: Vec<Complex<T>> = (0..=d)
        .map(|i| c[i] / radius.powi(i as i32))
        .collect();
    let eval = |z: Complex<T>| {
        scaled
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, ci| acc * z + ci)
    };

    let seed = Complex::new(T::of(0.4), T::of(0.9));
    let mut z: Vec<Complex<T>> = (0..d).map(|i| seed.powu(i as u32 + 1)).collect();
    let tol = T::epsilon() * T::of(16.0);
    for _ in 0..2000 {
        let mut change = T::zero();
        for i in 0..d {
            let mut denom = Complex::new(T::one(), T::zero());
            for j in 0..d {
                if i != j {
                    denom = denom * (z[i] - z[j]);
                }
            }
            if denom.norm() == T::zero() {
                denom = Complex::new(T::epsilon(), T::zero());
            }
            let step = eval(z[i]) / denom;
            z[i] = z[i] - step;
            change = change.max(step.norm());
        }
        if change <= tol {
            break;
        }
    }
    z.into_iter().map(|u| u * radius).collect()
}
