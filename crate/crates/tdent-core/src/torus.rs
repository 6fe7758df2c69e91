//! Torus arithmetic, cat/sawtooth map dynamics, and lattice discretizations.
//!
//! The phase space is T² = R²/Z².  The sawtooth map with parameter α acts as
//!
//! ```text
//! S_α(x₁, x₂) = ( (1+α)·⟨x₁⟩ + x₂ ,  α·⟨x₁⟩ + x₂ )   (mod 1)
//! ```
//!
//! with ⟨·⟩ the fractional part; for integer α this is the matrix action of
//! the cat map T_α = [[1+α, 1], [α, 1]] mod 1.  The lattice companions are
//! `U_α(y) = N·S_α(y/N)` on [0,N)² and `V_α = ⌊U_α⌋`, a bijection of
//! (Z/NZ)².
//!
//! Floor and fractional part are taken on values rounded at the 12th decimal
//! digit so that exact lattice inputs map exactly instead of falling into the
//! neighboring cell through float noise.

use crate::intmat::IntMat2;
use crate::{Error, Result};

const SNAP: f64 = 1e-12;

/// Largest integer ≤ t, with a 1e-12 snap toward the nearest integer from
/// below: floor12(k - 1e-13) = k.
#[inline]
pub fn floor12(t: f64) -> f64 {
    (t + SNAP).floor()
}

/// Fractional part in [0, 1): t - floor(t), snapped like [`floor12`].
#[inline]
pub fn frac(t: f64) -> f64 {
    let f = t - floor12(t);
    if f < 0.0 {
        0.0
    } else {
        f
    }
}

/// t mod period, in [0, period), with the same snapping.
#[inline]
fn wrap(t: f64, period: f64) -> f64 {
    let mut r = t - period * floor12(t / period);
    if r < 0.0 {
        r = 0.0;
    } else if r >= period {
        r -= period;
    }
    r
}

/// Point of the 2-torus, both coordinates in [0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    pub x1: f64,
    pub x2: f64,
}

impl TorusPoint {
    /// Reduces both coordinates mod 1.
    pub fn new(x1: f64, x2: f64) -> Self {
        Self {
            x1: frac(x1),
            x2: frac(x2),
        }
    }
}

/// Point of the lattice (Z/NZ)².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub l1: i64,
    pub l2: i64,
}

impl LatticePoint {
    /// Reduces both components mod N.
    pub fn new(l1: i64, l2: i64, n: usize) -> Self {
        let n = n as i64;
        Self {
            l1: l1.rem_euclid(n),
            l2: l2.rem_euclid(n),
        }
    }

    /// The torus point ℓ/N.
    pub fn to_torus(&self, n: usize) -> TorusPoint {
        TorusPoint::new(self.l1 as f64 / n as f64, self.l2 as f64 / n as f64)
    }

    /// Row-major index l1·N + l2.
    pub fn index(&self, n: usize) -> usize {
        self.l1 as usize * n + self.l2 as usize
    }

    pub fn from_index(idx: usize, n: usize) -> Self {
        Self {
            l1: (idx / n) as i64,
            l2: (idx % n) as i64,
        }
    }
}

/// Map parameter: the sawtooth parameter α and the lattice size N.
#[derive(Debug, Clone, Copy)]
pub struct MapParam {
    pub alpha: f64,
    pub n_lattice: usize,
}

impl MapParam {
    pub fn new(alpha: f64, n_lattice: usize) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidInput(format!("alpha must be finite: {alpha}")));
        }
        if n_lattice < 2 {
            return Err(Error::InvalidInput(format!(
                "lattice size must be at least 2: {n_lattice}"
            )));
        }
        Ok(Self { alpha, n_lattice })
    }

    /// α rounded to the nearest integer if within 1e-9, else None.
    pub fn integer_alpha(&self) -> Option<i64> {
        let r = self.alpha.round();
        ((self.alpha - r).abs() < 1e-9).then_some(r as i64)
    }
}

/// Eigenvalue regime of the linearization [[1+α, 1], [α, 1]].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeClass {
    Hyperbolic,
    Elliptic,
    Parabolic,
}

/// Regime from the discriminant (α+2)² - 4: elliptic for α in (-4, 0),
/// parabolic at the boundary {0, -4}, hyperbolic otherwise.
pub fn classify_regime(alpha: f64) -> RegimeClass {
    let disc = (alpha + 2.0) * (alpha + 2.0) - 4.0;
    if disc > 0.0 {
        RegimeClass::Hyperbolic
    } else if disc < 0.0 {
        RegimeClass::Elliptic
    } else {
        RegimeClass::Parabolic
    }
}

/// Distance on the torus: min over integer shifts of the Euclidean norm.
/// The 3×3 shift window is exhaustive since reduced coordinates differ by
/// less than 1 per component.
pub fn torus_distance(a: TorusPoint, b: TorusPoint) -> f64 {
    let mut best = f64::INFINITY;
    for s1 in -1..=1 {
        for s2 in -1..=1 {
            let d1 = a.x1 - b.x1 + s1 as f64;
            let d2 = a.x2 - b.x2 + s2 as f64;
            best = best.min(d1 * d1 + d2 * d2);
        }
    }
    best.sqrt()
}

/// One step of the sawtooth map S_α.
pub fn sawtooth_apply(p: &MapParam, x: TorusPoint) -> TorusPoint {
    let f1 = frac(x.x1);
    TorusPoint::new((1.0 + p.alpha) * f1 + x.x2, p.alpha * f1 + x.x2)
}

/// One step of S_α⁻¹ = [[1,0],[-α,1]] ∘ ⟨[[1,-1],[0,1]]·x⟩.
pub fn sawtooth_inverse(p: &MapParam, x: TorusPoint) -> TorusPoint {
    let y = frac(x.x1 - x.x2);
    TorusPoint::new(y, x.x2 - p.alpha * y)
}

/// j-th sawtooth iterate (j may be negative).
pub fn sawtooth_iterate(p: &MapParam, x: TorusPoint, j: i64) -> TorusPoint {
    let mut y = x;
    if j >= 0 {
        for _ in 0..j {
            y = sawtooth_apply(p, y);
        }
    } else {
        for _ in 0..(-j) {
            y = sawtooth_inverse(p, y);
        }
    }
    y
}

/// Cat map matrix T_α = [[1+α, 1], [α, 1]]; determinant 1.
pub fn cat_matrix(alpha: i64) -> IntMat2 {
    IntMat2::new(1 + alpha, 1, alpha, 1)
}

/// Lattice companion U_α(y) = N·S_α(y/N) on the rescaled torus [0, N)².
pub fn lattice_map_u(p: &MapParam, y: [f64; 2]) -> [f64; 2] {
    let n = p.n_lattice as f64;
    let f1 = wrap(y[0], n);
    [
        wrap((1.0 + p.alpha) * f1 + y[1], n),
        wrap(p.alpha * f1 + y[1], n),
    ]
}

/// q-th iterate of U_α.
pub fn lattice_map_u_iterate(p: &MapParam, y: [f64; 2], q: usize) -> [f64; 2] {
    let mut v = y;
    for _ in 0..q {
        v = lattice_map_u(p, v);
    }
    v
}

/// V_α(ℓ) = ⌊U_α(ℓ)⌋, a bijection of (Z/NZ)²; for integer α this is the
/// matrix action T_α·ℓ mod N.
pub fn lattice_map_v(p: &MapParam, l: LatticePoint) -> LatticePoint {
    let u = lattice_map_u(p, [l.l1 as f64, l.l2 as f64]);
    LatticePoint::new(floor12(u[0]) as i64, floor12(u[1]) as i64, p.n_lattice)
}

/// j-th iterate of V_α (iterated floor-of-U, not U followed by one floor).
pub fn lattice_map_v_iterate(p: &MapParam, l: LatticePoint, j: usize) -> LatticePoint {
    let mut v = l;
    for _ in 0..j {
        v = lattice_map_v(p, v);
    }
    v
}

/// Nearest lattice point x̂_N = (⌊N·x₁ + 1/2⌋, ⌊N·x₂ + 1/2⌋) mod N.
pub fn nearest_lattice(x: TorusPoint, n: usize) -> LatticePoint {
    let nf = n as f64;
    LatticePoint::new(
        floor12(nf * x.x1 + 0.5) as i64,
        floor12(nf * x.x2 + 0.5) as i64,
        n,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x1: f64, x2: f64) -> TorusPoint {
        TorusPoint::new(x1, x2)
    }

    #[test]
    fn frac_examples() {
        assert_eq!(frac(1.25), 0.25);
        assert_eq!(frac(-0.25), 0.75);
        assert_eq!(frac(3.0), 0.0);
        // snap: a value a hair below an integer counts as that integer
        assert_eq!(frac(2.0 - 1e-13), 0.0);
    }

    #[test]
    fn torus_distance_examples() {
        assert_eq!(torus_distance(pt(0.0, 0.0), pt(0.0, 0.0)), 0.0);
        // minimized over the 9 shifts by hand: Δ = (-0.2, 0.2) after wrap
        let d = torus_distance(pt(0.9, 0.1), pt(0.1, 0.9));
        assert!((d - 0.08f64.sqrt()).abs() < 1e-14);
        let d = torus_distance(pt(0.0, 0.0), pt(0.5, 0.5));
        assert!((d - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn sawtooth_examples() {
        let p = MapParam::new(0.5, 2).unwrap();
        let y = sawtooth_apply(&p, pt(0.5, 0.25));
        assert!((y.x1 - 0.0).abs() < 1e-12 && (y.x2 - 0.5).abs() < 1e-12);

        let p = MapParam::new(1.0, 2).unwrap();
        let y = sawtooth_apply(&p, pt(0.2, 0.3));
        assert!((y.x1 - 0.7).abs() < 1e-12 && (y.x2 - 0.5).abs() < 1e-12);

        let y = sawtooth_apply(&p, pt(0.0, 0.0));
        assert_eq!((y.x1, y.x2), (0.0, 0.0));
    }

    #[test]
    fn sawtooth_inverse_examples() {
        let p = MapParam::new(1.0, 2).unwrap();
        let y = sawtooth_inverse(&p, pt(0.7, 0.5));
        assert!((y.x1 - 0.2).abs() < 1e-12 && (y.x2 - 0.3).abs() < 1e-12);

        let y = sawtooth_inverse(&p, pt(0.0, 0.0));
        assert_eq!((y.x1, y.x2), (0.0, 0.0));

        let p = MapParam::new(0.5, 2).unwrap();
        let y = sawtooth_inverse(&p, pt(0.0, 0.5));
        assert!((y.x1 - 0.5).abs() < 1e-12 && (y.x2 - 0.25).abs() < 1e-12);
    }

    #[test]
    fn cat_matrix_examples() {
        assert_eq!(cat_matrix(1), IntMat2::new(2, 1, 1, 1));
        assert_eq!(cat_matrix(0), IntMat2::new(1, 1, 0, 1));
        assert_eq!(cat_matrix(-2), IntMat2::new(-1, 1, -2, 1));
        for a in -5..=5 {
            assert_eq!(cat_matrix(a).det(), 1);
        }
    }

    #[test]
    fn lattice_map_u_examples() {
        let p = MapParam::new(2.0, 5).unwrap();
        let u = lattice_map_u(&p, [1.0, 1.0]);
        assert!((u[0] - 4.0).abs() < 1e-12 && (u[1] - 3.0).abs() < 1e-12);

        let u = lattice_map_u(&p, [0.0, 0.0]);
        assert_eq!(u, [0.0, 0.0]);

        let p = MapParam::new(0.5, 4).unwrap();
        let u = lattice_map_u(&p, [2.0, 1.0]);
        assert!((u[0] - 0.0).abs() < 1e-12 && (u[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn lattice_map_v_examples() {
        let p = MapParam::new(2.0, 5).unwrap();
        assert_eq!(
            lattice_map_v(&p, LatticePoint::new(1, 1, 5)),
            LatticePoint::new(4, 3, 5)
        );
        let p = MapParam::new(1.0, 3).unwrap();
        assert_eq!(
            lattice_map_v(&p, LatticePoint::new(1, 0, 3)),
            LatticePoint::new(2, 1, 3)
        );
    }

    #[test]
    fn lattice_map_v_is_bijection_non_integer_alpha() {
        let p = MapParam::new(0.3, 7).unwrap();
        let mut seen = vec![false; 49];
        for idx in 0..49 {
            let l = LatticePoint::from_index(idx, 7);
            let v = lattice_map_v(&p, l);
            let vi = v.index(7);
            assert!(!seen[vi], "collision at {l:?} -> {v:?}");
            seen[vi] = true;
        }
    }

    #[test]
    fn lattice_map_v_bijective_for_sampled_alpha_all_small_n() {
        for &alpha in &[0.3, 0.5, 1.0, 2.7, -1.3] {
            for n in 2..=64usize {
                let p = MapParam::new(alpha, n).unwrap();
                let mut seen = vec![false; n * n];
                for idx in 0..n * n {
                    let v = lattice_map_v(&p, LatticePoint::from_index(idx, n));
                    let vi = v.index(n);
                    assert!(!seen[vi], "alpha={alpha} N={n} collision");
                    seen[vi] = true;
                }
            }
        }
    }

    #[test]
    fn integer_alpha_matches_matrix_action() {
        for &alpha in &[-3i64, -1, 0, 1, 2, 5] {
            let n = 11usize;
            let p = MapParam::new(alpha as f64, n).unwrap();
            let t = cat_matrix(alpha);
            for idx in 0..n * n {
                let l = LatticePoint::from_index(idx, n);
                let v = lattice_map_v(&p, l);
                let w = t.apply_mod([l.l1, l.l2], n as i64);
                assert_eq!([v.l1, v.l2], w, "alpha={alpha} l={l:?}");
            }
        }
    }

    #[test]
    fn nearest_lattice_examples() {
        assert_eq!(nearest_lattice(pt(0.5, 0.5), 4), LatticePoint::new(2, 2, 4));
        assert_eq!(
            nearest_lattice(pt(0.9, 0.1), 10),
            LatticePoint::new(9, 1, 10)
        );
        assert_eq!(
            nearest_lattice(pt(0.96, 0.01), 10),
            LatticePoint::new(0, 0, 10)
        );
    }

    #[test]
    fn nearest_lattice_within_half_cell_diagonal() {
        // d(x, x̂/N) ≤ 1/(√2·N)... the bound from the half-cell geometry is
        // √2/(2N); probe quasi-random points.
        let n = 16;
        for k in 0..2000u64 {
            let (x1, x2) = crate::rng::r2_point(k);
            let x = pt(x1, x2);
            let l = nearest_lattice(x, n);
            let d = torus_distance(x, l.to_torus(n));
            assert!(d <= 1.0 / (2.0f64.sqrt() * (n as f64)) + 1e-12);
        }
    }

    #[test]
    fn classify_regime_examples() {
        assert_eq!(classify_regime(1.0), RegimeClass::Hyperbolic);
        assert_eq!(classify_regime(-2.0), RegimeClass::Elliptic);
        assert_eq!(classify_regime(0.0), RegimeClass::Parabolic);
        assert_eq!(classify_regime(-4.0), RegimeClass::Parabolic);
        assert_eq!(classify_regime(-4.5), RegimeClass::Hyperbolic);
    }

    #[test]
    fn map_param_validation() {
        assert!(MapParam::new(f64::NAN, 4).is_err());
        assert!(MapParam::new(1.0, 1).is_err());
        assert!(MapParam::new(1.0, 2).is_ok());
    }

    proptest! {
        #[test]
        fn round_trip_inverse(x1 in 0.0f64..1.0, x2 in 0.0f64..1.0, alpha in -5.0f64..5.0) {
            let p = MapParam::new(alpha, 8).unwrap();
            let x = pt(x1, x2);
            let fwd = sawtooth_apply(&p, x);
            let back = sawtooth_inverse(&p, fwd);
            prop_assert!(torus_distance(back, x) <= 1e-12);
            let back2 = sawtooth_apply(&p, sawtooth_inverse(&p, x));
            prop_assert!(torus_distance(back2, x) <= 1e-12);
        }

        #[test]
        fn distance_symmetric_and_bounded(a1 in 0.0f64..1.0, a2 in 0.0f64..1.0,
                                          b1 in 0.0f64..1.0, b2 in 0.0f64..1.0) {
            let a = pt(a1, a2);
            let b = pt(b1, b2);
            let d1 = torus_distance(a, b);
            let d2 = torus_distance(b, a);
            prop_assert!((d1 - d2).abs() < 1e-15);
            prop_assert!(d1 <= 2.0f64.sqrt() / 2.0 + 1e-15);
        }
    }

    #[test]
    fn measure_preservation_chi_square() {
        // Push 10⁶ uniform points through S_α for hyperbolic α and bin the
        // images on a 16×16 grid; χ² with 255 dof should stay below the
        // 1e-3 significance cutoff (≈ 330.5).
        let p = MapParam::new(1.7, 16).unwrap();
        let mut g = crate::rng::SplitMix64::new(20240601);
        let bins = 16usize;
        let mut counts = vec![0u64; bins * bins];
        let total = 1_000_000u64;
        for _ in 0..total {
            let x = pt(g.next_f64(), g.next_f64());
            let y = sawtooth_apply(&p, x);
            let b1 = (y.x1 * bins as f64) as usize % bins;
            let b2 = (y.x2 * bins as f64) as usize % bins;
            counts[b1 * bins + b2] += 1;
        }
        let expected = total as f64 / (bins * bins) as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        // 1e-3 quantile of chi2 with 255 dof
        assert!(chi2 < 330.5, "chi2 = {chi2}");
    }
}
