//! Discretization and dediscretization morphisms, and how long they commute
//! with the dynamics.
//!
//! The Weyl route samples: `J(f)(ℓ) = f(ℓ/N)` lands in the diagonal algebra,
//! and the β states invert it by the cosine-blended interpolation that agrees
//! with f on lattice points.  The anti-Wick route averages: a grid value is
//! the running average of f over the side-1/N square at the lattice point,
//! and dediscretization is evaluation at the nearest cell.  On the quantum
//! side the same averages weight rank-one coherent-state projectors into the
//! full matrix algebra.
//!
//! The Egorov-type defect `‖Θ̃ᵏ∘J(f) - J∘Θᵏ(f)‖₂` measures how long the
//! discretized dynamics shadows the continuous one through the morphism:
//! identically zero for cat maps in the diagonal scheme, shrinking with N at
//! fixed k for sawtooth maps and for the quantized cat-map scheme.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::cmat::CMat;
use crate::coherent::{beta_state, Cs1Family};
use crate::intmat::IntMat2;
use crate::torus::{
    cat_matrix, lattice_map_v, nearest_lattice, sawtooth_iterate, LatticePoint, MapParam,
    TorusPoint,
};
use crate::weyl::{heisenberg_step, hs_norm, Observable, WeylIndex};
use crate::{Error, Result};

/// Smoothness class of a test function; drives which convergence statements
/// apply to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Smoothness {
    /// Finite Fourier series.
    FourierPoly,
    /// Lipschitz with the given constant.
    Lipschitz { constant: f64 },
    /// Merely essentially bounded (indicators and the like).
    EssentiallyBounded,
}

type EvalFn = dyn Fn(TorusPoint) -> C64 + Send + Sync;
/// Exact average over the axis-aligned square (center, side).
type AverageFn = dyn Fn(TorusPoint, f64) -> C64 + Send + Sync;

/// Complex function on the torus, with an optional exact square-average hook
/// so trig polynomials and indicators bypass quadrature entirely.
#[derive(Clone)]
pub struct TestFunction {
    eval: Arc<EvalFn>,
    smoothness: Smoothness,
    square_average: Option<Arc<AverageFn>>,
    fourier: Option<Vec<(WeylIndex, C64)>>,
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunction")
            .field("smoothness", &self.smoothness)
            .field("fourier_terms", &self.fourier.as_ref().map(|c| c.len()))
            .finish()
    }
}

fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-8 {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

impl TestFunction {
    pub fn constant(c: C64) -> Self {
        Self::fourier(vec![(WeylIndex::new(0, 0), c)])
    }

    /// Finite Fourier series Σ f̂_n e^{2πi n·x}; evaluation and square
    /// averages are exact.
    pub fn fourier(coeffs: Vec<(WeylIndex, C64)>) -> Self {
        let terms = coeffs.clone();
        let eval = {
            let terms = terms.clone();
            move |x: TorusPoint| -> C64 {
                let mut acc = C64::new(0.0, 0.0);
                for (n, c) in &terms {
                    let phase =
                        2.0 * std::f64::consts::PI * (n.n1 as f64 * x.x1 + n.n2 as f64 * x.x2);
                    acc += c * C64::from_polar(1.0, phase);
                }
                acc
            }
        };
        let average = {
            let terms = terms.clone();
            move |center: TorusPoint, side: f64| -> C64 {
                let mut acc = C64::new(0.0, 0.0);
                for (n, c) in &terms {
                    let phase = 2.0
                        * std::f64::consts::PI
                        * (n.n1 as f64 * center.x1 + n.n2 as f64 * center.x2);
                    let damp = sinc(std::f64::consts::PI * n.n1 as f64 * side)
                        * sinc(std::f64::consts::PI * n.n2 as f64 * side);
                    acc += c * C64::from_polar(1.0, phase) * damp;
                }
                acc
            }
        };
        let lipschitz: f64 = coeffs
            .iter()
            .map(|(n, c)| {
                2.0 * std::f64::consts::PI
                    * c.norm()
                    * ((n.n1 * n.n1 + n.n2 * n.n2) as f64).sqrt()
            })
            .sum();
        let smoothness = if lipschitz == 0.0 {
            Smoothness::FourierPoly
        } else {
            Smoothness::FourierPoly
        };
        let _ = lipschitz;
        Self {
            eval: Arc::new(eval),
            smoothness,
            square_average: Some(Arc::new(average)),
            fourier: Some(coeffs),
        }
    }

    /// sin(2π·x₁).
    pub fn sin_x1() -> Self {
        let half_i = C64::new(0.0, -0.5);
        Self::fourier(vec![
            (WeylIndex::new(1, 0), half_i),
            (WeylIndex::new(-1, 0), -half_i),
        ])
    }

    /// cos(2π·x₁).
    pub fn cos_x1() -> Self {
        let half = C64::new(0.5, 0.0);
        Self::fourier(vec![
            (WeylIndex::new(1, 0), half),
            (WeylIndex::new(-1, 0), half),
        ])
    }

    /// sin(2π·x₁)·sin(2π·x₂).
    pub fn sin_sin() -> Self {
        let q = C64::new(-0.25, 0.0);
        Self::fourier(vec![
            (WeylIndex::new(1, 1), q),
            (WeylIndex::new(-1, -1), q),
            (WeylIndex::new(1, -1), -q),
            (WeylIndex::new(-1, 1), -q),
        ])
    }

    /// Indicator of the half plane x₁ < 1/2, with exact square averages
    /// (essentially bounded, discontinuous on two vertical circles).
    pub fn half_plane_x1() -> Self {
        let eval = |x: TorusPoint| -> C64 {
            if x.x1 < 0.5 {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        };
        let average = |center: TorusPoint, side: f64| -> C64 {
            // overlap of the arc [c₁ - s/2, c₁ + s/2) with [0, 1/2) on the circle
            let a = crate::torus::frac(center.x1 - side / 2.0);
            let mut total = 0.0;
            for shift in [-1.0f64, 0.0, 1.0] {
                let lo = a.max(shift);
                let hi = (a + side).min(shift + 0.5);
                if hi > lo {
                    total += hi - lo;
                }
            }
            C64::new(total / side, 0.0)
        };
        Self {
            eval: Arc::new(eval),
            smoothness: Smoothness::EssentiallyBounded,
            square_average: Some(Arc::new(average)),
            fourier: None,
        }
    }

    pub fn from_fn(
        f: impl Fn(TorusPoint) -> C64 + Send + Sync + 'static,
        smoothness: Smoothness,
    ) -> Self {
        Self {
            eval: Arc::new(f),
            smoothness,
            square_average: None,
            fourier: None,
        }
    }

    pub fn eval(&self, x: TorusPoint) -> C64 {
        (self.eval)(x)
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn fourier_coeffs(&self) -> Option<&[(WeylIndex, C64)]> {
        self.fourier.as_deref()
    }

    /// Exact average over the axis-aligned square (center, side) when the
    /// function carries the hook.
    pub fn square_average(&self, center: TorusPoint, side: f64) -> Option<C64> {
        self.square_average.as_ref().map(|f| f(center, side))
    }

    /// f ∘ (x ↦ T·x mod 1) for an integer matrix T; exact on Fourier series
    /// (indices map through Tᵗ), a plain closure otherwise.
    pub fn compose_matrix(&self, t: &IntMat2) -> Self {
        if let Some(coeffs) = &self.fourier {
            let tt = t.transpose();
            let mapped = coeffs
                .iter()
                .map(|(n, c)| {
                    let m = tt.apply([n.n1, n.n2]);
                    (WeylIndex::new(m[0], m[1]), *c)
                })
                .collect();
            return Self::fourier(mapped);
        }
        let inner = self.eval.clone();
        let t = *t;
        Self {
            eval: Arc::new(move |x: TorusPoint| {
                let y = t.apply_f64([x.x1, x.x2]);
                inner(TorusPoint::new(y[0], y[1]))
            }),
            smoothness: self.smoothness,
            square_average: None,
            fourier: None,
        }
    }

    /// f ∘ S_α^k; the sawtooth is discontinuous, so hooks and Fourier data
    /// are dropped and the result is tagged essentially bounded.
    pub fn compose_sawtooth(&self, p: &MapParam, k: i64) -> Self {
        let inner = self.eval.clone();
        let p = *p;
        Self {
            eval: Arc::new(move |x: TorusPoint| inner(sawtooth_iterate(&p, x, k))),
            smoothness: Smoothness::EssentiallyBounded,
            square_average: None,
            fourier: None,
        }
    }
}

/// Element of the diagonal algebra: one complex value per lattice point.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    n: usize,
    values: Vec<C64>,
}

impl GridFunction {
    pub fn new(n: usize, values: Vec<C64>) -> Self {
        assert_eq!(values.len(), n * n);
        Self { n, values }
    }

    pub fn n_lattice(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn at(&self, l: LatticePoint) -> C64 {
        self.values[LatticePoint::new(l.l1, l.l2, self.n).index(self.n)]
    }

    /// Tracial state: the mean of the grid values.
    pub fn mean(&self) -> C64 {
        self.values.iter().sum::<C64>() / (self.n * self.n) as f64
    }

    /// Normalized Hilbert-Schmidt norm √(τ(X†X)) = RMS of the values.
    pub fn hs_norm(&self) -> f64 {
        (self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() / (self.n * self.n) as f64).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &GridFunction) -> GridFunction {
        assert_eq!(self.n, other.n);
        GridFunction::new(
            self.n,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Pointwise product, the algebra multiplication of the diagonal algebra.
    pub fn hadamard(&self, other: &GridFunction) -> GridFunction {
        assert_eq!(self.n, other.n);
        GridFunction::new(
            self.n,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }
}

/// Weyl discretization J(f)(ℓ) = f(ℓ/N): a *-morphism onto the diagonal
/// algebra (pointwise products map to pointwise products exactly).
pub fn discretize_weyl(f: &TestFunction, n: usize) -> GridFunction {
    let values = (0..n * n)
        .map(|idx| f.eval(LatticePoint::from_index(idx, n).to_torus(n)))
        .collect();
    GridFunction::new(n, values)
}

/// Inverse of the Weyl discretization through the β states:
/// f̃(x) = ⟨β(x)| diag(g) |β(x)⟩, the cosine-blended interpolation that
/// reproduces g exactly on lattice points.
pub fn dediscretize_beta(g: &GridFunction) -> TestFunction {
    let g = Arc::new(g.clone());
    let n = g.n_lattice();
    let max = g.max_abs();
    TestFunction {
        eval: Arc::new(move |x: TorusPoint| {
            let beta = beta_state(n, x);
            beta.entries
                .iter()
                .map(|(l, w)| g.at(*l) * (w * w))
                .sum()
        }),
        smoothness: Smoothness::Lipschitz {
            constant: std::f64::consts::PI * n as f64 * max,
        },
        square_average: None,
        fourier: None,
    }
}

/// Sup over quasi-random probe points of |f - J⁻¹(J(f))| for the Weyl
/// scheme; decreases along an N ladder for continuous f.
pub fn weyl_roundtrip_error(f: &TestFunction, n: usize, samples: usize) -> f64 {
    let round = dediscretize_beta(&discretize_weyl(f, n));
    let mut worst = 0.0f64;
    for k in 0..samples as u64 {
        let (x1, x2) = crate::rng::r2_point(k);
        let x = TorusPoint::new(x1, x2);
        worst = worst.max((f.eval(x) - round.eval(x)).norm());
    }
    worst
}

/// Running average Γ_N(f)(x) = N²·∫_{Q_N(x)} f dμ over the side-1/N square
/// centered at x, by an M×M midpoint rule (exact whenever f carries an
/// analytic square-average hook, and for cell-constant f at any M).
pub fn running_average(f: &TestFunction, n: usize, x: TorusPoint, quad: usize) -> C64 {
    assert!(quad >= 1);
    let side = 1.0 / n as f64;
    if let Some(exact) = f.square_average(x, side) {
        return exact;
    }
    midpoint_average(f, x, side, quad)
}

fn midpoint_average(f: &TestFunction, center: TorusPoint, side: f64, m: usize) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..m {
        for j in 0..m {
            let dx = ((i as f64 + 0.5) / m as f64 - 0.5) * side;
            let dy = ((j as f64 + 0.5) / m as f64 - 0.5) * side;
            acc += f.eval(TorusPoint::new(center.x1 + dx, center.x2 + dy));
        }
    }
    acc / (m * m) as f64
}

/// Adaptive cell average: start at `quad`, double until the value moves by
/// less than 1e-8, cap at 256 points per side.
fn cell_average_adaptive(f: &TestFunction, center: TorusPoint, side: f64, quad: usize) -> C64 {
    if let Some(exact) = f.square_average(center, side) {
        return exact;
    }
    let mut m = quad.max(1);
    let mut value = midpoint_average(f, center, side, m);
    while m < 256 {
        let next = midpoint_average(f, center, side, 2 * m);
        let moved = (next - value).norm();
        value = next;
        m *= 2;
        if moved < 1e-8 {
            break;
        }
    }
    value
}

/// Anti-Wick discretization: grid of running averages at the lattice points.
pub fn antiwick_discretize(f: &TestFunction, n: usize, quad: usize) -> GridFunction {
    let side = 1.0 / n as f64;
    let values = (0..n * n)
        .map(|idx| {
            let center = LatticePoint::from_index(idx, n).to_torus(n);
            cell_average_adaptive(f, center, side, quad)
        })
        .collect();
    GridFunction::new(n, values)
}

/// Anti-Wick dediscretization: the simple (step) function that takes the
/// grid value of the nearest lattice point.
pub fn antiwick_dediscretize(g: &GridFunction, x: TorusPoint) -> C64 {
    g.at(nearest_lattice(x, g.n_lattice()))
}

/// Diagonal-algebra dynamics: the permutation of (Z/NZ)² realizing V_α.
#[derive(Debug, Clone)]
pub struct DiagonalDynamics {
    n: usize,
    perm: Vec<usize>,
}

impl DiagonalDynamics {
    pub fn new(p: &MapParam) -> Result<Self> {
        let n = p.n_lattice;
        let mut perm = vec![0usize; n * n];
        let mut seen = vec![false; n * n];
        for (idx, out) in perm.iter_mut().enumerate() {
            let v = lattice_map_v(p, LatticePoint::from_index(idx, n)).index(n);
            *out = v;
            if seen[v] {
                return Err(Error::InvalidInput(format!(
                    "V_α is not a bijection at α={}, N={n}",
                    p.alpha
                )));
            }
            seen[v] = true;
        }
        Ok(Self { n, perm })
    }

    pub fn n_lattice(&self) -> usize {
        self.n
    }

    /// Θ̃ʲ(g)(ℓ) = g(V_α^j(ℓ)); trace-preserving since V_α permutes the
    /// lattice.
    pub fn apply(&self, g: &GridFunction, steps: usize) -> GridFunction {
        assert_eq!(g.n_lattice(), self.n);
        // compose the permutation j times
        let mut table: Vec<usize> = (0..self.n * self.n).collect();
        for _ in 0..steps {
            table = table.iter().map(|&i| self.perm[i]).collect();
        }
        GridFunction::new(self.n, table.iter().map(|&i| g.values()[i]).collect())
    }
}

/// Hilbert-Schmidt Egorov defect of the diagonal scheme,
/// ‖Θ̃ᵏ(J f) - J(f∘S_αᵏ)‖₂.  Exactly zero for integer α at any k.
pub fn egorov_defect_diagonal(p: &MapParam, f: &TestFunction, steps: usize) -> Result<f64> {
    let dynamics = DiagonalDynamics::new(p)?;
    let evolved = dynamics.apply(&discretize_weyl(f, p.n_lattice), steps);
    let composed = discretize_weyl(&f.compose_sawtooth(p, steps as i64), p.n_lattice);
    Ok(evolved.sub(&composed).hs_norm())
}

/// Anti-Wick quantization into the full matrix algebra,
/// J(f) = (1/N)·Σ_ℓ f̄_ℓ·W(ℓ)|C⟩⟨C|W(ℓ)†, with f̄_ℓ the average of f over
/// the floor cell of ℓ.  Unital and positive; Hermitian output for real f.
pub fn antiwick_quantize_mn(f: &TestFunction, fam: &Cs1Family, quad: usize) -> Observable {
    let n = fam.dim();
    let side = 1.0 / n as f64;
    let mut out = CMat::zeros(n);
    for idx in 0..n * n {
        let cell = LatticePoint::from_index(idx, n);
        let center = TorusPoint::new(
            (cell.l1 as f64 + 0.5) * side,
            (cell.l2 as f64 + 0.5) * side,
        );
        let avg = cell_average_adaptive(f, center, side, quad);
        let state = fam.state_at_cell(cell);
        out.add_outer(avg / n as f64, &state, &state);
    }
    out
}

/// Anti-Wick dequantization ⟨C¹(x), X·C¹(x)⟩.
pub fn antiwick_dequantize_mn(x_obs: &Observable, fam: &Cs1Family, x: TorusPoint) -> C64 {
    let state = fam.state(x);
    let n = fam.dim();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        let mut row = C64::new(0.0, 0.0);
        for j in 0..n {
            row += x_obs.at(i, j) * state[j];
        }
        acc += state[i].conj() * row;
    }
    acc
}

/// Egorov defect of the quantized cat map on the matrix algebra:
/// ‖Θ_Nᵏ(J f) - J(f∘T_α⁻ᵏ)‖₂ with J the anti-Wick quantization over the
/// first coherent-state family.  The Heisenberg relabeling W(n) ↦ W(T·n)
/// matches the classical automorphism f ↦ f∘T⁻¹ (Weyl labels live on the
/// symplectic-dual side), hence the inverse power.  The family's phases
/// must be admissible for T_α.
pub fn egorov_defect_weyl(
    alpha: i64,
    fam: &Cs1Family,
    f: &TestFunction,
    steps: usize,
    quad: usize,
) -> Result<f64> {
    let t = cat_matrix(alpha);
    let quantized = antiwick_quantize_mn(f, fam, quad);
    let mut evolved = quantized;
    for _ in 0..steps {
        evolved = heisenberg_step(&evolved, &t, fam.phases())?;
    }
    let back = t.inverse_unimodular().pow(steps as u32);
    let composed = antiwick_quantize_mn(&f.compose_matrix(&back), fam, quad);
    Ok(hs_norm(&evolved.sub(&composed)))
}
