//! Dense complex Hermitian eigensolver, eigenvalues only.
//!
//! Two classical stages: a complex Householder reduction to tridiagonal form
//! (the subdiagonal phases are irrelevant for the spectrum, so only the
//! moduli are kept, leaving a real symmetric tridiagonal matrix) followed by
//! the implicit-shift QL iteration.  Eigenvectors are never accumulated;
//! the entropy pipeline only consumes spectra.
//!
//! The row loops of the reduction are data-parallel and write disjoint
//! outputs, so the result is independent of the thread count.

use num_complex::Complex64 as C64;

use crate::cmat::CMat;
use crate::par;
use crate::{Error, Result};

/// Hermiticity tolerance relative to the largest entry modulus.
const HERMITICITY_TOL: f64 = 1e-10;

/// Trailing-block size above which the reduction parallelizes its row loops.
const PAR_THRESHOLD: usize = 192;

/// Full ascending spectrum of a Hermitian matrix.
///
/// Rejects inputs whose hermiticity defect exceeds `1e-10` relative to the
/// largest entry.
pub fn hermitian_eigenvalues(h: &CMat) -> Result<Vec<f64>> {
    let scale = h.max_abs().max(1.0);
    let defect = h.hermiticity_defect();
    if defect > HERMITICITY_TOL * scale {
        return Err(Error::NotHermitian {
            deviation: defect,
            tolerance: HERMITICITY_TOL * scale,
        });
    }
    let (mut d, mut e) = tridiagonalize(h);
    tql_implicit(&mut d, &mut e)?;
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

/// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
/// form; returns (diagonal, subdiagonal moduli).
fn tridiagonalize(h: &CMat) -> (Vec<f64>, Vec<f64>) {
    let n = h.dim();
    let mut a: Vec<C64> = h.data().to_vec();
    let mut e = vec![0.0f64; n.saturating_sub(1)];
    if n < 2 {
        let d = (0..n).map(|i| a[i * n + i].re).collect();
        return (d, e);
    }
    let parallel = par::default_parallel();
    let mut v = vec![C64::new(0.0, 0.0); n];
    let mut p = vec![C64::new(0.0, 0.0); n];

    for k in 0..n - 2 {
        let k1 = k + 1;
        let m = n - k1;
        // column k below the diagonal
        let sigma = {
            let mut s = 0.0;
            for i in 0..m {
                s += a[(k1 + i) * n + k].norm_sqr();
            }
            s.sqrt()
        };
        if sigma == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let x0 = a[k1 * n + k];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..m {
            v[i] = a[(k1 + i) * n + k];
        }
        v[0] += phase * sigma;
        let beta = 1.0 / (sigma * (sigma + x0.norm()));
        // p = β · A[k1.., k1..] · v, rows independent
        {
            let av = &a;
            let vv = &v;
            let run_par = parallel && m >= PAR_THRESHOLD;
            par::chunks_mut_indexed(&mut p[..m], 1, run_par, |i, out| {
                let row = &av[(k1 + i) * n + k1..(k1 + i) * n + k1 + m];
                let mut acc = C64::new(0.0, 0.0);
                for j in 0..m {
                    acc += row[j] * vv[j];
                }
                out[0] = acc * beta;
            });
        }
        // w = p - (β/2)(v†p)·v ; v†p is real for Hermitian A
        let vp: f64 = (0..m).map(|i| (v[i].conj() * p[i]).re).sum();
        let kappa = 0.5 * beta * vp;
        for i in 0..m {
            p[i] -= kappa * v[i];
        }
        // rank-2 update A -= v·w† + w·v† on the trailing block
        {
            let vv = &v;
            let ww = &p;
            let run_par = parallel && m >= PAR_THRESHOLD;
            par::chunks_mut_indexed(&mut a[k1 * n..], n, run_par, |i, row| {
                if i >= m {
                    return;
                }
                let vi = vv[i];
                let wi = ww[i];
                let block = &mut row[k1..k1 + m];
                for j in 0..m {
                    block[j] -= vi * ww[j].conj() + wi * vv[j].conj();
                }
            });
        }
        e[k] = sigma;
    }
    e[n - 2] = a[(n - 1) * n + (n - 2)].norm();
    let d = (0..n).map(|i| a[i * n + i].re).collect();
    (d, e)
}

/// Implicit-shift QL iteration on a real symmetric tridiagonal matrix.
/// `d` holds the diagonal, `e[i]` couples `d[i]` and `d[i+1]`.
fn tql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n < 2 {
        return Ok(());
    }
    // trailing scratch slot, standard trick so e[m] is always addressable
    let mut e = {
        let mut t = e.to_vec();
        t.push(0.0);
        t
    };
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::EigenNoConvergence(l));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            let denom = g + if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / denom;
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut underflow_restart = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow_restart = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow_restart {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
