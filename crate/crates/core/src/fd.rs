//! Central finite differences on 16-dimensional chart coordinates.

use nalgebra::SMatrix;

use crate::error::Result;

pub type Matrix16 = SMatrix<f64, 16, 16>;

/// Jacobian of `f` at `x`; column `k` is the central difference along `x_k`.
pub fn jacobian<F>(f: F, x: &[f64; 16], h: f64) -> Result<Matrix16>
where
    F: Fn(&[f64; 16]) -> Result<[f64; 16]>,
{
    let mut jac = Matrix16::zeros();
    for k in 0..16 {
        let mut plus = *x;
        let mut minus = *x;
        plus[k] += h;
        minus[k] -= h;
        let fp = f(&plus)?;
        let fm = f(&minus)?;
        for i in 0..16 {
            jac[(i, k)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// Central first derivative of a matrix-valued `f` along coordinate `k`.
pub fn partial<F>(f: &F, x: &[f64; 16], k: usize, h: f64) -> Matrix16
where
    F: Fn(&[f64; 16]) -> Matrix16,
{
    let mut plus = *x;
    let mut minus = *x;
    plus[k] += h;
    minus[k] -= h;
    (f(&plus) - f(&minus)) / (2.0 * h)
}

/// Central second derivative along coordinates `a` and `b`.
pub fn second_partial<F>(f: &F, x: &[f64; 16], a: usize, b: usize, h: f64) -> Matrix16
where
    F: Fn(&[f64; 16]) -> Matrix16,
{
    if a == b {
        let mut plus = *x;
        let mut minus = *x;
        plus[a] += h;
        minus[a] -= h;
        (f(&plus) - 2.0 * f(x) + f(&minus)) / (h * h)
    } else {
        let shifted = |sa: f64, sb: f64| {
            let mut y = *x;
            y[a] += sa * h;
            y[b] += sb * h;
            f(&y)
        };
        (shifted(1.0, 1.0) - shifted(1.0, -1.0) - shifted(-1.0, 1.0) + shifted(-1.0, -1.0)) / (4.0 * h * h)
    }
}

/// One Richardson level on top of [`second_partial`]: `(4 D(h/2) - D(h)) / 3`.
pub fn second_partial_richardson<F>(f: &F, x: &[f64; 16], a: usize, b: usize, h: f64) -> Matrix16
where
    F: Fn(&[f64; 16]) -> Matrix16,
{
    let coarse = second_partial(f, x, a, b, h);
    let fine = second_partial(f, x, a, b, h / 2.0);
    (fine * 4.0 - coarse) / 3.0
}
