//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Matrices here are at most 16x16, so a Jacobi sweep is cheap and gives
//! eigenvectors that are orthonormal to machine precision.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{Operator, STRUCT_TOL, ZERO};

const MAX_SWEEPS: usize = 64;

/// `A = V diag(values) V^dagger`, eigenvalues ascending, eigenvectors in the
/// columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Operator,
}

impl HermitianEigen {
    /// Rebuild `V f(diag) V^dagger` for a scalar function of the eigenvalues.
    pub fn map_values(&self, f: impl Fn(f64) -> Complex64) -> Operator {
        let n = self.values.len();
        let weights: Vec<Complex64> = self.values.iter().map(|&v| f(v)).collect();
        let v = &self.vectors;
        let mut out = Operator::zeros(n).expect("dimension already validated");
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for (k, w) in weights.iter().enumerate() {
                    acc += v.get(i, k) * w * v.get(j, k).conj();
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    libm::sqrt(s)
}

/// Eigendecomposition of a Hermitian operator.
pub fn eigh(h: &Operator) -> Result<HermitianEigen> {
    h.ensure_hermitian(STRUCT_TOL * (1.0 + h.max_abs()))?;
    let n = h.dim();
    let mut a: Vec<Complex64> = h.hermitian_part().as_slice().to_vec();
    let mut v: Vec<Complex64> = Operator::identity(n)?.as_slice().to_vec();

    let scale = h.norm().max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // Phase that makes the (p, q) entry real and positive.
                let phase = apq / mag;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                // W restricted to (p, q) = diag(1, conj(phase)) * [[c, s], [-s, c]].
                let w_pp = Complex64::new(c, 0.0);
                let w_pq = Complex64::new(s, 0.0);
                let w_qp = -phase.conj() * s;
                let w_qq = phase.conj() * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * w_pp + akq * w_qp;
                    a[k * n + q] = akp * w_pq + akq * w_qq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = w_pp.conj() * apk + w_qp.conj() * aqk;
                    a[q * n + k] = w_pq.conj() * apk + w_qq.conj() * aqk;
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * w_pp + vkq * w_qp;
                    v[k * n + q] = vkp * w_pq + vkq * w_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vectors = Operator::zeros(n)?;
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, v[row * n + src]);
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues of a Hermitian operator, ascending.
pub fn eigvalsh(h: &Operator) -> Result<Vec<f64>> {
    Ok(eigh(h)?.values)
}

/// `exp(-i h t)` for Hermitian `h`.
pub fn herm_exp(h: &Operator, t: f64) -> Result<Operator> {
    let deviation = h.hermitian_deviation();
    if deviation > STRUCT_TOL * (1.0 + h.max_abs()) {
        return Err(Error::NotHermitian { deviation });
    }
    if t == 0.0 {
        return Operator::identity(h.dim());
    }
    let eig = eigh(h)?;
    Ok(eig.map_values(|lambda| {
        let phi = -lambda * t;
        Complex64::new(libm::cos(phi), libm::sin(phi))
    }))
}
