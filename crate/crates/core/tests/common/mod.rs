// Reference computations written independently of the library.

#![allow(dead_code)]

use num_complex::Complex64;

/// `exp(1/(u²−1))` on the affine image of `[lo, hi]`, with its first two derivatives in `x`.
#[derive(Debug, Clone, Copy)]
pub struct Bump {
    pub lo: f64,
    pub hi: f64,
}

impl Bump {
    pub fn jet(&self, x: f64) -> (f64, f64, f64) {
        let k = 2.0 / (self.hi - self.lo);
        let u = k * (x - self.lo) - 1.0;
        if u <= -1.0 || u >= 1.0 {
            return (0.0, 0.0, 0.0);
        }
        let w = u * u - 1.0;
        let g = 1.0 / w;
        let dg = -2.0 * u * g * g;
        let ddg = (6.0 * u * u + 2.0) * g * g * g;
        let phi = g.exp();
        (phi, k * phi * dg, k * k * phi * (dg * dg + ddg))
    }
}

/// Composite Simpson rule with `n` (even) subintervals.
pub fn simpson(lo: f64, hi: f64, n: usize, g: impl Fn(f64) -> f64) -> f64 {
    let h = (hi - lo) / n as f64;
    let mut s = g(lo) + g(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * g(lo + h * i as f64);
    }
    s * h / 3.0
}

const SIMPSON_INTERVALS: usize = 20_000;

/// `‖g‖` in `L²(dx)` over the bump's support.
pub fn norm_dx(b: Bump, g: impl Fn(f64) -> Complex64) -> f64 {
    simpson(b.lo, b.hi, SIMPSON_INTERVALS, |x| g(x).norm_sqr()).sqrt()
}

/// `‖g‖` in `L²(dx/|x|)` over the bump's support.
pub fn norm_dx_over_x(b: Bump, g: impl Fn(f64) -> Complex64) -> f64 {
    simpson(b.lo, b.hi, SIMPSON_INTERVALS, |x| g(x).norm_sqr() / x.abs()).sqrt()
}

pub fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

pub fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

/// n×n rational matrices as dense row-major vectors, with `[X, Y] = XY − YX`.
pub mod matrix {
    use num_rational::BigRational;
    use num_traits::Zero;

    pub type Mat = Vec<BigRational>;

    pub fn unit(n: usize, i: usize, j: usize) -> Mat {
        let mut m = vec![BigRational::zero(); n * n];
        m[(i - 1) * n + (j - 1)] = BigRational::from_integer(1.into());
        m
    }

    pub fn mul(n: usize, a: &Mat, b: &Mat) -> Mat {
        let mut out = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += &a[i * n + k] * &b[k * n + j];
                }
            }
        }
        out
    }

    pub fn commutator(n: usize, a: &Mat, b: &Mat) -> Mat {
        let ab = mul(n, a, b);
        let ba = mul(n, b, a);
        ab.iter().zip(&ba).map(|(p, q)| p - q).collect()
    }

    /// Scales the last row by `s`.
    pub fn scale_last_row(n: usize, a: &Mat, s: &BigRational) -> Mat {
        let mut out = a.clone();
        for j in 0..n {
            out[(n - 1) * n + j] = &out[(n - 1) * n + j] * s;
        }
        out
    }
}
