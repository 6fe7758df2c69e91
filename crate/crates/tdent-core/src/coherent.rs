//! Coherent-state families on the torus and their exactness oracles.
//!
//! Three families indexed by torus points:
//!
//! 1. `|C¹(x)⟩ = W(⌊Nx⌋)|C⟩ ∈ C^N` with the binomial fundamental vector
//!    `C(j) = 2^{-(N-1)/2}·√binom(N-1, j)`: a genuine coherent-state family
//!    (normalized, overcomplete, localized).
//! 2. `|β(x)⟩ ∈ C^{N²}`: a cosine blend of the four basis vectors at the
//!    corners of x's cell.  Exactly normalized but *not* overcomplete — its
//!    overlap matrix converges to the banded product Γ⊗Γ with
//!    `Γ_{p,q} = δ_{q,p} + (1/π)(δ_{q,p+1} + δ_{q+1,p})` (periodic deltas),
//!    which this module exposes as a positive numerical oracle.
//! 3. `|C³(x)⟩ ∈ C^{N²}`: the basis vector at the nearest lattice point;
//!    overcomplete with deviation exactly zero by cell geometry.
//!
//! Binomials are handled in log space: `binom(127, 63)` overflows any naive
//! integer path long before the N = 128 ladder ends.

use num_complex::Complex64 as C64;

use crate::torus::{nearest_lattice, torus_distance, LatticePoint, TorusPoint};
use crate::weyl::{weyl_apply_vec, RepPhases, WeylIndex};
use crate::{cmat::CMat, Error, Result};

/// Binary entropy η(t) = -t·log₂t - (1-t)·log₂(1-t), with η(0) = η(1) = 0.
pub fn binary_entropy(t: f64) -> f64 {
    assert!((0.0..=1.0).contains(&t));
    if t == 0.0 || t == 1.0 {
        return 0.0;
    }
    -(t * t.log2()) - (1.0 - t) * (1.0 - t).log2()
}

/// ln(k!) for k = 0..=n as a cumulative table.
fn ln_factorials(n: usize) -> Vec<f64> {
    let mut t = vec![0.0; n + 1];
    for k in 1..=n {
        t[k] = t[k - 1] + (k as f64).ln();
    }
    t
}

/// ln binom(n, k) in log space.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    assert!(k <= n);
    let t = ln_factorials(n);
    t[n] - t[k] - t[n - k]
}

/// The fundamental vector C(j) = 2^{-(N-1)/2}·√binom(N-1, j), unit norm.
pub fn cs1_fundamental(n: usize) -> Vec<f64> {
    assert!(n >= 1);
    let lf = ln_factorials(n - 1);
    let ln2 = std::f64::consts::LN_2;
    let mut v: Vec<f64> = (0..n)
        .map(|j| (0.5 * (lf[n - 1] - lf[j] - lf[n - 1 - j] - (n - 1) as f64 * ln2)).exp())
        .collect();
    let norm: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    for c in &mut v {
        *c /= norm;
    }
    v
}

/// The first coherent-state family.
#[derive(Debug, Clone)]
pub struct Cs1Family {
    n: usize,
    phases: RepPhases,
    fundamental: Vec<f64>,
}

impl Cs1Family {
    pub fn new(n: usize, phases: RepPhases) -> Self {
        Self {
            n,
            phases,
            fundamental: cs1_fundamental(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn phases(&self) -> &RepPhases {
        &self.phases
    }

    pub fn fundamental(&self) -> &[f64] {
        &self.fundamental
    }

    /// |C¹(x)⟩ = W(⌊Nx⌋)|C⟩; piecewise constant on 1/N cells.
    pub fn state(&self, x: TorusPoint) -> Vec<C64> {
        self.state_at_cell(self.cell_of(x))
    }

    /// State attached to the floor cell ℓ.
    pub fn state_at_cell(&self, l: LatticePoint) -> Vec<C64> {
        let base: Vec<C64> = self
            .fundamental
            .iter()
            .map(|&c| C64::new(c, 0.0))
            .collect();
        weyl_apply_vec(self.n, &self.phases, WeylIndex::new(l.l1, l.l2), &base)
    }

    /// Floor cell label ⌊Nx⌋.
    pub fn cell_of(&self, x: TorusPoint) -> LatticePoint {
        let nf = self.n as f64;
        LatticePoint::new(
            crate::torus::floor12(nf * x.x1) as i64,
            crate::torus::floor12(nf * x.x2) as i64,
            self.n,
        )
    }

    /// ⟨C, W(n)·C⟩ with the label reduced mod N first; the exact finite sum.
    pub fn weyl_expectation(&self, idx: WeylIndex) -> C64 {
        let idx = idx.reduce(self.n);
        let base: Vec<C64> = self
            .fundamental
            .iter()
            .map(|&c| C64::new(c, 0.0))
            .collect();
        let w = weyl_apply_vec(self.n, &self.phases, idx, &base);
        (0..self.n)
            .map(|j| C64::new(self.fundamental[j], 0.0) * w[j])
            .sum()
    }
}

/// Max entrywise deviation of the resolution of identity,
/// ‖(1/N)·Σ_p W(p)|C⟩⟨C|W(p)† - Id‖_∞.  The integral over the torus reduces
/// to this finite sum because the state is constant on 1/N cells.
pub fn cs1_resolution_check(fam: &Cs1Family) -> f64 {
    let n = fam.dim();
    let mut acc = CMat::zeros(n);
    let weight = C64::new(1.0 / n as f64, 0.0);
    for l1 in 0..n as i64 {
        for l2 in 0..n as i64 {
            let s = fam.state_at_cell(LatticePoint::new(l1, l2, n));
            acc.add_outer(weight, &s, &s);
        }
    }
    acc.sub(&CMat::identity(n)).max_abs()
}

/// Max over well-separated cell pairs of N·|⟨C(x), C(y)⟩|².  The overlap
/// modulus depends only on the cell difference, so the scan runs over
/// differences.  `d0` must exceed the diameter 2√2/N below which neighbor
/// cells cannot be excluded.
pub fn localization_scan(fam: &Cs1Family, d0: f64) -> Result<f64> {
    let n = fam.dim();
    if !(0.0..=0.5).contains(&d0) || d0 <= 2.0 * 2.0f64.sqrt() / n as f64 {
        return Err(Error::InvalidInput(format!(
            "d0={d0} cannot exclude neighbor cells at N={n}"
        )));
    }
    let origin = TorusPoint::new(0.0, 0.0);
    let mut worst = 0.0f64;
    for d1 in 0..n as i64 {
        for d2 in 0..n as i64 {
            if (d1, d2) == (0, 0) {
                continue;
            }
            let delta = LatticePoint::new(d1, d2, n);
            if torus_distance(delta.to_torus(n), origin) < d0 {
                continue;
            }
            let e = fam.weyl_expectation(WeylIndex::new(d1, d2)).norm_sqr();
            worst = worst.max(n as f64 * e);
        }
    }
    Ok(worst)
}

/// |C³(x)⟩ is the basis vector at the nearest lattice point.
pub fn cs3_state(n: usize, x: TorusPoint) -> LatticePoint {
    nearest_lattice(x, n)
}

/// Max |I_{ℓ,m} - δ^(N)_{ℓ,m}| for the third family, with the defining
/// integral evaluated exactly: the x̂-preimage of each lattice point is a
/// square cell, so I factorizes into products of circular interval overlaps.
pub fn cs3_overcompleteness_check(n: usize) -> f64 {
    let nf = n as f64;
    // arc(k) = [(k - 1/2)/N, (k + 1/2)/N) on the circle
    let overlap = |k: usize, m: usize| -> f64 {
        let a = crate::torus::frac((k as f64 - 0.5) / nf);
        let b = crate::torus::frac((m as f64 - 0.5) / nf);
        let len = 1.0 / nf;
        let mut total = 0.0;
        for shift in [-1.0, 0.0, 1.0] {
            let lo = a.max(b + shift);
            let hi = (a + len).min(b + shift + len);
            if hi > lo {
                total += hi - lo;
            }
        }
        total
    };
    let mut worst = 0.0f64;
    for l1 in 0..n {
        for m1 in 0..n {
            let o1 = overlap(l1, m1);
            for l2 in 0..n {
                for m2 in 0..n {
                    let i_val = nf * nf * o1 * overlap(l2, m2);
                    let delta = if l1 == m1 && l2 == m2 { 1.0 } else { 0.0 };
                    worst = worst.max((i_val - delta).abs());
                }
            }
        }
    }
    worst
}

/// Sparse β state: at most four weighted cell corners, exactly unit norm.
#[derive(Debug, Clone)]
pub struct BetaState {
    pub entries: Vec<(LatticePoint, f64)>,
}

impl BetaState {
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|(_, w)| w * w).sum()
    }
}

/// |β(x)⟩, the cosine blend over the corners of x's floor cell with
/// coefficients cos/sin(π⟨Nxᵢ⟩/2).
pub fn beta_state(n: usize, x: TorusPoint) -> BetaState {
    let nf = n as f64;
    let f1 = crate::torus::frac(nf * x.x1);
    let f2 = crate::torus::frac(nf * x.x2);
    let b1 = crate::torus::floor12(nf * x.x1) as i64;
    let b2 = crate::torus::floor12(nf * x.x2) as i64;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let (c1, s1) = ((half_pi * f1).cos(), (half_pi * f1).sin());
    let (c2, s2) = ((half_pi * f2).cos(), (half_pi * f2).sin());
    let mut entries = Vec::with_capacity(4);
    for (mu, w1) in [(0, c1), (1, s1)] {
        for (nu, w2) in [(0, c2), (1, s2)] {
            let w = w1 * w2;
            if w != 0.0 {
                entries.push((LatticePoint::new(b1 + mu, b2 + nu, n), w));
            }
        }
    }
    BetaState { entries }
}

/// The closed-form overlap factor Γ_{p,q} = δ^(N)_{q,p} +
/// (1/π)(δ^(N)_{q,p+1} + δ^(N)_{q+1,p}); the full overlap is
/// I_{ℓ,m} = Γ_{ℓ₁,m₁}·Γ_{ℓ₂,m₂}.
pub fn beta_gamma_formula(p: i64, q: i64, n: usize) -> f64 {
    let n = n as i64;
    let delta = |a: i64, b: i64| {
        if (a - b).rem_euclid(n) == 0 {
            1.0
        } else {
            0.0
        }
    };
    delta(q, p) + (delta(q, p + 1) + delta(q + 1, p)) / std::f64::consts::PI
}

/// Overlap matrix I_{ℓ,m} = N²·∫⟨ℓ|β(x)⟩⟨β(x)|m⟩dx by an M×M midpoint rule
/// per cell; row-major N²×N², indexed `ℓ.index(N)·N² + m.index(N)`.
pub fn beta_overlap_matrix(n: usize, quadrature_per_cell: usize) -> Result<Vec<f64>> {
    if quadrature_per_cell < 8 {
        return Err(Error::InvalidInput(
            "quadrature resolution must be at least 8 per cell side".into(),
        ));
    }
    let m = quadrature_per_cell;
    let dim = n * n;
    let mut out = vec![0.0f64; dim * dim];
    let nf = n as f64;
    let weight = 1.0 / (m * m) as f64;
    for c1 in 0..n {
        for c2 in 0..n {
            for i in 0..m {
                for j in 0..m {
                    let x = TorusPoint::new(
                        (c1 as f64 + (i as f64 + 0.5) / m as f64) / nf,
                        (c2 as f64 + (j as f64 + 0.5) / m as f64) / nf,
                    );
                    let beta = beta_state(n, x);
                    for (la, wa) in &beta.entries {
                        for (lb, wb) in &beta.entries {
                            out[la.index(n) * dim + lb.index(n)] += wa * wb * weight;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
