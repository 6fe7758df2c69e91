//! Finite-dimensional Weyl algebra on C^N.
//!
//! With shift and clock generators folded by `U^N = e^{2πiu}·Id`,
//! `V^N = e^{2πiv}·Id`, the Weyl operator labeled by an integer vector
//! n = (n₁, n₂) acts on the computational basis as
//!
//! ```text
//! W(n)|j⟩ = exp(iπ/N·(-n₁n₂ + 2n₁u + 2n₂v)) · exp(-2πi·j·n₂/N) · |j+n₁⟩
//! ```
//!
//! and satisfies the composition law `W(n)W(m) = e^{iπσ(n,m)/N}·W(n+m)` with
//! the symplectic form σ(n,m) = n₁m₂ - n₂m₁.  `W(N·n)` is the scalar
//! `e^{iπ(Nn₁n₂ + 2n₁u + 2n₂v)}` times the identity.
//!
//! Representation phases (u, v) are kept as exact rationals so the
//! admissibility condition `(Tᵗ - 1)(u,v) ≡ (N/2)(ac, bd) (mod 1)` for a
//! dynamics T = [[a,b],[c,d]] can be tested exactly; floats appear only when
//! a matrix is actually built.  Dynamics never constructs the propagator:
//! a Heisenberg step expands X in the Weyl basis and relabels, Θ(W(n)) = W(T·n).

use num_complex::Complex64 as C64;

use crate::cmat::CMat;
use crate::intmat::IntMat2;
use crate::{Error, Result};

/// Dense N×N complex observable.
pub type Observable = CMat;

/// Integer Weyl label; unbounded, reduced mod N only where the algebra does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylIndex {
    pub n1: i64,
    pub n2: i64,
}

impl WeylIndex {
    pub const fn new(n1: i64, n2: i64) -> Self {
        Self { n1, n2 }
    }

    pub fn reduce(&self, n: usize) -> Self {
        let n = n as i64;
        Self::new(self.n1.rem_euclid(n), self.n2.rem_euclid(n))
    }
}

/// Symplectic form σ(n, m) = n₁m₂ - n₂m₁.
pub fn symplectic(n: WeylIndex, m: WeylIndex) -> i64 {
    n.n1 * m.n2 - n.n2 * m.n1
}

/// Exact rational in [0, 1), the 2π-multiple of a representation phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac {
    num: i64,
    den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl Frac {
    /// num/den reduced mod 1.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "denominator must be nonzero");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let num = num.rem_euclid(den);
        let g = gcd(num, den);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub const ZERO: Frac = Frac { num: 0, den: 1 };

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Representation phases (u, v), both in [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepPhases {
    pub u: Frac,
    pub v: Frac,
}

impl RepPhases {
    pub fn new(u: Frac, v: Frac) -> Self {
        Self { u, v }
    }

    /// The (0, 0) representation.
    pub fn zero() -> Self {
        Self::new(Frac::ZERO, Frac::ZERO)
    }

    /// Exact test of `(Tᵗ - 1)(u,v) ≡ (N/2)(ac, bd) (mod 1)`.
    pub fn is_admissible_for(&self, t: &IntMat2, n: usize) -> bool {
        let n = n as i128;
        let (a, b, c, d) = (t.a as i128, t.b as i128, t.c as i128, t.d as i128);
        let (un, ud) = (self.u.num as i128, self.u.den as i128);
        let (vn, vd) = (self.v.num as i128, self.v.den as i128);
        // rows of Tᵗ - Id are (a-1, c) and (b, d-1)
        let integral = |p: i128, q: i128, rhs_half: i128| -> bool {
            // p·u + q·v - rhs_half/2 ∈ Z, over the common denominator 2·ud·vd
            let num = 2 * p * un * vd + 2 * q * vn * ud - rhs_half * ud * vd;
            num.rem_euclid(2 * ud * vd) == 0
        };
        integral(a - 1, c, n * a * c) && integral(b, d - 1, n * b * d)
    }
}

/// All admissible phase pairs for the dynamics T on C^N, from
/// `(u,v) = (Tr T - 2)⁻¹ [[1-d, c], [b, 1-a]] (p + m) mod 1` with
/// m ranging over {0, …, |Tr T - 2| - 1}² and p the half-integer vector
/// `(N·ac/2, N·bd/2) mod 1`.
pub fn admissible_phases(t: &IntMat2, n: usize) -> Result<Vec<RepPhases>> {
    if t.det() != 1 {
        return Err(Error::InvalidInput(format!(
            "dynamics must have determinant 1, got {}",
            t.det()
        )));
    }
    let tr = t.trace();
    if tr == 2 {
        return Err(Error::ParabolicTrace);
    }
    let (a, b, c, d) = (t.a, t.b, t.c, t.d);
    let denom = tr - 2;
    // p + m over the common denominator 2: p·2 = (N·a·c mod 2, N·b·d mod 2)
    let p2 = [
        (n as i64 * a * c).rem_euclid(2),
        (n as i64 * b * d).rem_euclid(2),
    ];
    let range = denom.unsigned_abs();
    let mut out = Vec::new();
    for m1 in 0..range {
        for m2 in 0..range {
            let q1 = p2[0] + 2 * m1 as i64;
            let q2 = p2[1] + 2 * m2 as i64;
            let u = Frac::new((1 - d) * q1 + c * q2, 2 * denom);
            let v = Frac::new(b * q1 + (1 - a) * q2, 2 * denom);
            let phases = RepPhases::new(u, v);
            debug_assert!(phases.is_admissible_for(t, n));
            if !out.contains(&phases) {
                out.push(phases);
            }
        }
    }
    Ok(out)
}

/// Phase prefactor of W(n): exp(iπ/N·(-n₁n₂ + 2n₁u + 2n₂v)), reduced
/// exactly mod 2π before evaluation.
fn weyl_prefactor(n: usize, phases: &RepPhases, idx: WeylIndex) -> C64 {
    let nn = n as i128;
    let (un, ud) = (phases.u.num as i128, phases.u.den as i128);
    let (vn, vd) = (phases.v.num as i128, phases.v.den as i128);
    let q = ud * vd;
    // (-n1·n2 + 2·n1·u + 2·n2·v) over denominator q, reduced mod 2N
    let mut num = -(idx.n1 as i128) * (idx.n2 as i128) * q
        + 2 * (idx.n1 as i128) * un * vd
        + 2 * (idx.n2 as i128) * vn * ud;
    num = num.rem_euclid(2 * nn * q);
    let angle = std::f64::consts::PI * (num as f64) / (q as f64) / (n as f64);
    C64::from_polar(1.0, angle)
}

/// Table of the N-th roots exp(-2πi·k/N), k = 0..N.
fn conj_roots(n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| C64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect()
}

/// Dense matrix of the Weyl operator W(n).
pub fn weyl_matrix(n: usize, phases: &RepPhases, idx: WeylIndex) -> Observable {
    let pref = weyl_prefactor(n, phases, idx);
    let roots = conj_roots(n);
    let mut m = CMat::zeros(n);
    for j in 0..n {
        let r = (j as i64 + idx.n1).rem_euclid(n as i64) as usize;
        let tw = roots[((j as i64 * idx.n2).rem_euclid(n as i64)) as usize];
        m[(r, j)] = pref * tw;
    }
    m
}

/// Sparse action of W(n) on a vector, O(N).
pub fn weyl_apply_vec(n: usize, phases: &RepPhases, idx: WeylIndex, v: &[C64]) -> Vec<C64> {
    assert_eq!(v.len(), n);
    let pref = weyl_prefactor(n, phases, idx);
    let roots = conj_roots(n);
    let mut out = vec![C64::new(0.0, 0.0); n];
    for j in 0..n {
        let r = (j as i64 + idx.n1).rem_euclid(n as i64) as usize;
        let tw = roots[((j as i64 * idx.n2).rem_euclid(n as i64)) as usize];
        out[r] = pref * tw * v[j];
    }
    out
}

/// Composition phase exp(iπ·σ(n,m)/N) in W(n)W(m) = phase·W(n+m).
pub fn weyl_compose_phase(n: usize, a: WeylIndex, b: WeylIndex) -> C64 {
    let s = symplectic(a, b).rem_euclid(2 * n as i64);
    C64::from_polar(1.0, std::f64::consts::PI * s as f64 / n as f64)
}

/// τ_N(W(n)) in closed form: the prefactor times the periodic Kronecker
/// delta δ^(N)_{n,0}.
pub fn weyl_trace(n: usize, phases: &RepPhases, idx: WeylIndex) -> C64 {
    if idx.n1.rem_euclid(n as i64) == 0 && idx.n2.rem_euclid(n as i64) == 0 {
        weyl_prefactor(n, phases, idx)
    } else {
        C64::new(0.0, 0.0)
    }
}

/// Weyl coefficients c_p = τ_N(X·W(-p)) for p in [0,N)², indexed p₁·N + p₂.
/// Reconstruction as Σ c_p W(p) recovers X.
pub fn weyl_expand(x: &Observable, phases: &RepPhases) -> Vec<C64> {
    let n = x.dim();
    let roots: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let mut coeffs = vec![C64::new(0.0, 0.0); n * n];
    for p1 in 0..n as i64 {
        // diagonal of X·(shift part): X[k][(k - p1) mod N]
        let diag: Vec<C64> = (0..n)
            .map(|k| x.at(k, (k as i64 - p1).rem_euclid(n as i64) as usize))
            .collect();
        for p2 in 0..n as i64 {
            let pref = weyl_prefactor(n, phases, WeylIndex::new(-p1, -p2));
            let mut acc = C64::new(0.0, 0.0);
            for (k, &d) in diag.iter().enumerate() {
                acc += d * roots[((k as i64 * p2).rem_euclid(n as i64)) as usize];
            }
            coeffs[p1 as usize * n + p2 as usize] = pref * acc / n as f64;
        }
    }
    coeffs
}

/// Σ_p c_p W(L·p) with an integer relabeling L applied to the indices;
/// L = identity reconstructs X from its coefficients.
pub fn weyl_reconstruct_mapped(
    coeffs: &[C64],
    n: usize,
    phases: &RepPhases,
    relabel: &IntMat2,
) -> Observable {
    let mut out = CMat::zeros(n);
    let roots = conj_roots(n);
    for p1 in 0..n as i64 {
        for p2 in 0..n as i64 {
            let c = coeffs[p1 as usize * n + p2 as usize];
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let q = relabel.apply([p1, p2]);
            let idx = WeylIndex::new(q[0], q[1]);
            let pref = weyl_prefactor(n, phases, idx) * c;
            for j in 0..n {
                let r = (j as i64 + idx.n1).rem_euclid(n as i64) as usize;
                let tw = roots[((j as i64 * idx.n2).rem_euclid(n as i64)) as usize];
                out[(r, j)] += pref * tw;
            }
        }
    }
    out
}

/// Reconstruction Σ_p c_p W(p).
pub fn weyl_reconstruct(coeffs: &[C64], n: usize, phases: &RepPhases) -> Observable {
    weyl_reconstruct_mapped(coeffs, n, phases, &IntMat2::identity())
}

/// One Heisenberg step of the quantized dynamics, Θ(X) = Σ_p c_p W(T·p)
/// where c is the Weyl expansion of X.  The phases must be admissible for T,
/// otherwise the relabeling is not an automorphism.
pub fn heisenberg_step(x: &Observable, t: &IntMat2, phases: &RepPhases) -> Result<Observable> {
    if t.det() != 1 {
        return Err(Error::InvalidInput(format!(
            "Heisenberg step needs det T = 1, got {}",
            t.det()
        )));
    }
    if !phases.is_admissible_for(t, x.dim()) {
        return Err(Error::InadmissiblePhases {
            u: phases.u.to_f64(),
            v: phases.v.to_f64(),
        });
    }
    let coeffs = weyl_expand(x, phases);
    Ok(weyl_reconstruct_mapped(&coeffs, x.dim(), phases, t))
}

/// Normalized Hilbert-Schmidt norm √(τ_N(X†X)); the identity has norm 1.
pub fn hs_norm(x: &Observable) -> f64 {
    x.frobenius() / (x.dim() as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn random_hermitian(n: usize, seed: u64) -> Observable {
        let mut g = SplitMix64::new(seed);
        let mut m = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = C64::new(g.next_f64() - 0.5, g.next_f64() - 0.5);
            }
        }
        let d = m.dagger();
        m.add(&d).scale(C64::new(0.5, 0.0))
    }

    #[test]
    fn weyl_zero_is_identity() {
        for n in 2..=6 {
            let w = weyl_matrix(n, &RepPhases::zero(), WeylIndex::new(0, 0));
            assert!(w.sub(&CMat::identity(n)).max_abs() < 1e-15);
        }
    }

    #[test]
    fn weyl_shift_and_clock_at_n2() {
        let w = weyl_matrix(2, &RepPhases::zero(), WeylIndex::new(1, 0));
        // plain permutation, phase 1
        assert!((w.at(1, 0) - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((w.at(0, 1) - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(w.at(0, 0).norm() < 1e-15 && w.at(1, 1).norm() < 1e-15);

        let w = weyl_matrix(2, &RepPhases::zero(), WeylIndex::new(0, 1));
        assert!((w.at(0, 0) - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((w.at(1, 1) - C64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn adjoint_is_negated_index() {
        let phases = RepPhases::new(Frac::new(1, 3), Frac::new(2, 5));
        for &(n1, n2) in &[(1i64, 0i64), (0, 1), (3, 2), (-2, 5), (7, -4)] {
            let w = weyl_matrix(5, &phases, WeylIndex::new(n1, n2));
            let wneg = weyl_matrix(5, &phases, WeylIndex::new(-n1, -n2));
            assert!(w.dagger().sub(&wneg).max_abs() < 1e-13);
        }
    }

    #[test]
    fn unitarity_over_index_window() {
        // W(n)†W(n) = Id for all |n_i| < 2N, sparse structure makes this a
        // cheap exact check.
        for n in [2usize, 3, 5, 8, 16, 32] {
            let phases = RepPhases::new(Frac::new(1, 2), Frac::new(1, 2));
            let lim = 2 * n as i64;
            for n1 in -lim + 1..lim {
                for n2 in -lim + 1..lim {
                    let w = weyl_matrix(n, &phases, WeylIndex::new(n1, n2));
                    let err = w.dagger().matmul(&w).sub(&CMat::identity(n)).max_abs();
                    assert!(err < 1e-12, "N={n} n=({n1},{n2}) err={err}");
                }
            }
        }
    }

    #[test]
    fn composition_law() {
        let phases = RepPhases::new(Frac::new(1, 4), Frac::ZERO);
        for n in [2usize, 3, 4, 7, 12, 16] {
            let mut g = SplitMix64::new(n as u64);
            for _ in 0..40 {
                let a = WeylIndex::new(
                    g.next_below(4 * n as u64) as i64 - 2 * n as i64,
                    g.next_below(4 * n as u64) as i64 - 2 * n as i64,
                );
                let b = WeylIndex::new(
                    g.next_below(4 * n as u64) as i64 - 2 * n as i64,
                    g.next_below(4 * n as u64) as i64 - 2 * n as i64,
                );
                let wa = weyl_matrix(n, &phases, a);
                let wb = weyl_matrix(n, &phases, b);
                let wc = weyl_matrix(n, &phases, WeylIndex::new(a.n1 + b.n1, a.n2 + b.n2));
                let lhs = wa.matmul(&wb);
                let rhs = wc.scale(weyl_compose_phase(n, a, b));
                assert!(lhs.sub(&rhs).max_abs() < 1e-12, "N={n} a={a:?} b={b:?}");
            }
        }
    }

    #[test]
    fn compose_phase_examples() {
        let n = WeylIndex::new(3, -1);
        assert!((weyl_compose_phase(4, n, n) - C64::new(1.0, 0.0)).norm() < 1e-15);
        let e1 = WeylIndex::new(1, 0);
        let e2 = WeylIndex::new(0, 1);
        let expect = C64::from_polar(1.0, std::f64::consts::PI / 4.0);
        assert!((weyl_compose_phase(4, e1, e2) - expect).norm() < 1e-15);
        assert!((weyl_compose_phase(4, e2, e1) - expect.conj()).norm() < 1e-15);
    }

    #[test]
    fn commutator_identity() {
        let phases = RepPhases::zero();
        let n = 6usize;
        let mut g = SplitMix64::new(99);
        for _ in 0..30 {
            let a = WeylIndex::new(g.next_below(12) as i64 - 6, g.next_below(12) as i64 - 6);
            let b = WeylIndex::new(g.next_below(12) as i64 - 6, g.next_below(12) as i64 - 6);
            let wa = weyl_matrix(n, &phases, a);
            let wb = weyl_matrix(n, &phases, b);
            let comm = wa.matmul(&wb).sub(&wb.matmul(&wa));
            let s = std::f64::consts::PI * symplectic(a, b) as f64 / n as f64;
            let factor = C64::new(0.0, 2.0 * s.sin());
            let rhs =
                weyl_matrix(n, &phases, WeylIndex::new(a.n1 + b.n1, a.n2 + b.n2)).scale(factor);
            assert!(comm.sub(&rhs).max_abs() < 1e-12);
        }
    }

    #[test]
    fn trace_closed_form_matches_matrix_trace() {
        for n in [3usize, 5, 8] {
            let phases = RepPhases::new(Frac::new(2, 7), Frac::new(1, 3));
            for n1 in -(n as i64)..=(2 * n as i64) {
                for n2 in -(n as i64)..=(2 * n as i64) {
                    let idx = WeylIndex::new(n1, n2);
                    let analytic = weyl_trace(n, &phases, idx);
                    let direct = weyl_matrix(n, &phases, idx).normalized_trace();
                    assert!((analytic - direct).norm() < 1e-12, "N={n} {idx:?}");
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        assert!(
            (weyl_trace(5, &RepPhases::zero(), WeylIndex::new(0, 0)) - C64::new(1.0, 0.0)).norm()
                < 1e-15
        );
        assert_eq!(
            weyl_trace(5, &RepPhases::zero(), WeylIndex::new(2, 3)),
            C64::new(0.0, 0.0)
        );
        let t = weyl_trace(3, &RepPhases::zero(), WeylIndex::new(3, 0));
        assert!((t - C64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn averaging_identity() {
        // (1/N) Σ_p W(-p) W(n) W(p) = Tr(W(n))·Id
        let n = 5usize;
        let phases = RepPhases::new(Frac::new(1, 2), Frac::new(3, 4));
        for &(n1, n2) in &[(0i64, 0i64), (1, 2), (5, 0), (5, 5), (3, 4)] {
            let idx = WeylIndex::new(n1, n2);
            let wn = weyl_matrix(n, &phases, idx);
            let mut acc = CMat::zeros(n);
            for p1 in 0..n as i64 {
                for p2 in 0..n as i64 {
                    let p = WeylIndex::new(p1, p2);
                    let wp = weyl_matrix(n, &phases, p);
                    let wmp = weyl_matrix(n, &phases, WeylIndex::new(-p1, -p2));
                    acc = acc.add(&wmp.matmul(&wn).matmul(&wp));
                }
            }
            acc = acc.scale(C64::new(1.0 / n as f64, 0.0));
            let rhs = CMat::identity(n).scale(wn.trace());
            assert!(acc.sub(&rhs).max_abs() < 1e-10, "n=({n1},{n2})");
        }
    }

    #[test]
    fn expand_identity_and_single_weyl() {
        let n = 5usize;
        let phases = RepPhases::zero();
        let c = weyl_expand(&CMat::identity(n), &phases);
        for (idx, &v) in c.iter().enumerate() {
            if idx == 0 {
                assert!((v - C64::new(1.0, 0.0)).norm() < 1e-13);
            } else {
                assert!(v.norm() < 1e-13);
            }
        }
        // X = W(q): the only nonzero coefficient sits at q, with unit modulus
        let q = WeylIndex::new(2, 4);
        let c = weyl_expand(&weyl_matrix(n, &phases, q), &phases);
        for p1 in 0..n {
            for p2 in 0..n {
                let v = c[p1 * n + p2];
                if (p1, p2) == (2, 4) {
                    assert!((v.norm() - 1.0).abs() < 1e-13);
                } else {
                    assert!(v.norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn expand_reconstruct_round_trip() {
        let n = 6usize;
        let phases = RepPhases::new(Frac::new(1, 2), Frac::new(1, 6));
        let x = random_hermitian(n, 7);
        let c = weyl_expand(&x, &phases);
        let back = weyl_reconstruct(&c, n, &phases);
        assert!(back.sub(&x).max_abs() < 1e-10);
    }

    #[test]
    fn admissible_phases_cat_map() {
        let t = crate::torus::cat_matrix(1);
        // even N: the Berry-Hannay representation (0,0)
        let ps = admissible_phases(&t, 8).unwrap();
        assert!(ps.contains(&RepPhases::zero()));
        // odd N: (1/2, 1/2)
        let ps = admissible_phases(&t, 7).unwrap();
        assert!(ps.contains(&RepPhases::new(Frac::new(1, 2), Frac::new(1, 2))));
        for p in &ps {
            assert!(p.is_admissible_for(&t, 7));
        }
    }

    #[test]
    fn admissible_phases_parabolic_rejected() {
        let t = crate::torus::cat_matrix(0); // trace 2
        assert!(matches!(
            admissible_phases(&t, 8),
            Err(Error::ParabolicTrace)
        ));
    }

    #[test]
    fn folding_condition_from_admissible_phases() {
        // W(e_i)^N = e^{2πi·u or v}·Id in every admissible representation
        for n in [6usize, 7, 9] {
            let t = crate::torus::cat_matrix(1);
            for phases in admissible_phases(&t, n).unwrap() {
                for (idx, frac) in [
                    (WeylIndex::new(1, 0), phases.u),
                    (WeylIndex::new(0, 1), phases.v),
                ] {
                    let w = weyl_matrix(n, &phases, idx);
                    let mut acc = CMat::identity(n);
                    for _ in 0..n {
                        acc = w.matmul(&acc);
                    }
                    let expect = CMat::identity(n).scale(C64::from_polar(
                        1.0,
                        2.0 * std::f64::consts::PI * frac.to_f64(),
                    ));
                    assert!(acc.sub(&expect).max_abs() < 1e-11, "N={n}");
                }
            }
        }
    }

    #[test]
    fn heisenberg_maps_generators() {
        let n = 8usize;
        let t = crate::torus::cat_matrix(1);
        let phases = RepPhases::zero();
        for &(a, b) in &[(1i64, 0i64), (0, 1), (3, 2), (5, 7)] {
            let w = weyl_matrix(n, &phases, WeylIndex::new(a, b));
            let stepped = heisenberg_step(&w, &t, &phases).unwrap();
            let q = t.apply([a, b]);
            let expect = weyl_matrix(n, &phases, WeylIndex::new(q[0], q[1]));
            assert!(stepped.sub(&expect).max_abs() < 1e-11);
        }
    }

    #[test]
    fn heisenberg_is_star_automorphism() {
        let n = 4usize;
        let t = crate::torus::cat_matrix(1);
        let phases = RepPhases::zero();
        let x = random_hermitian(n, 13);
        let y = heisenberg_step(&x, &t, &phases).unwrap();
        assert!((y.normalized_trace() - x.normalized_trace()).norm() < 1e-12);
        assert!(y.hermiticity_defect() < 1e-11);
        assert!((hs_norm(&y) - hs_norm(&x)).abs() < 1e-10);
        // identity fixed
        let id = CMat::identity(n);
        let idm = heisenberg_step(&id, &t, &phases).unwrap();
        assert!(idm.sub(&id).max_abs() < 1e-11);
    }

    #[test]
    fn heisenberg_multiplicative_on_generators() {
        let n = 6usize;
        let t = crate::torus::cat_matrix(1);
        let phases = RepPhases::zero();
        let a = WeylIndex::new(2, 1);
        let b = WeylIndex::new(4, 3);
        let wa = weyl_matrix(n, &phases, a);
        let wb = weyl_matrix(n, &phases, b);
        let lhs = heisenberg_step(&wa.matmul(&wb), &t, &phases).unwrap();
        let rhs = heisenberg_step(&wa, &t, &phases)
            .unwrap()
            .matmul(&heisenberg_step(&wb, &t, &phases).unwrap());
        assert!(lhs.sub(&rhs).max_abs() < 1e-10);
    }

    #[test]
    fn heisenberg_rejects_inadmissible_phases() {
        let t = crate::torus::cat_matrix(1);
        // N odd: (0,0) is not admissible for T_1
        let x = CMat::identity(7);
        assert!(matches!(
            heisenberg_step(&x, &t, &RepPhases::zero()),
            Err(Error::InadmissiblePhases { .. })
        ));
    }

    #[test]
    fn hs_norm_examples() {
        assert!((hs_norm(&CMat::identity(9)) - 1.0).abs() < 1e-15);
        assert!(hs_norm(&CMat::zeros(5)) < 1e-15);
        let w = weyl_matrix(7, &RepPhases::zero(), WeylIndex::new(3, 4));
        assert!((hs_norm(&w) - 1.0).abs() < 1e-13);
    }
}
