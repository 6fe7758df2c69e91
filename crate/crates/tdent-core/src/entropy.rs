//! Entropy production of Weyl partitions of unity under lattice dynamics.
//!
//! A partition is a set Λ = {r₁ … r_D} of lattice labels; the associated
//! partition of unity refines under the dynamics, and after n steps its
//! multitime correlation state has Von Neumann entropy H(n).  Two routes
//! compute it:
//!
//! - the N²×N² Gram matrix of the string vectors,
//!
//!   ```text
//!   G(n)_{ℓ,ℓ'} = (1/N²)·Π_{p<n} c_p(ℓ,ℓ'),
//!   c_p(ℓ,ℓ') = (1/D)·Σ_j exp(2πi/N · r_j·(V_α^p(ℓ) - V_α^p(ℓ')))
//!   ```
//!
//!   (the D^n-term string sum factorizes over time slots), diagonalized for
//!   H = -Σ η ln η; and
//!
//! - for integer α only, the frequency field ν: the distribution over
//!   (Z/NZ)² of f(i) = Σ_p (T_αᵗ)^p·r_{i_p} mod N across all D^n strings,
//!   whose Shannon entropy equals H(n).  The field is built by dynamic
//!   programming with exact big-integer counts, so Σν = 1 holds in rational
//!   arithmetic.
//!
//! Brute-force oracles (`gram_from_strings`, `rho_full`, `frequencies_brute`)
//! rebuild everything from explicit string enumeration on small instances.

use num_bigint::BigUint;
use num_complex::Complex64 as C64;
use num_traits::{ToPrimitive, Zero};

use crate::cmat::CMat;
use crate::eigen::hermitian_eigenvalues;
use crate::par;
use crate::torus::{cat_matrix, lattice_map_v, LatticePoint, MapParam};
use crate::{Error, Result};

/// Work budget for a Gram build, measured as n·D·N⁴ inner operations.
const GRAM_WORK_BUDGET: u128 = 200_000_000_000;
/// Memory budget for the dense N²×N² Gram matrix.
const GRAM_MEM_BUDGET: u128 = 2 << 30;
/// String-count limits for the explicit oracles.
const STRINGS_LIMIT: u128 = 4096;
const RHO_LIMIT: u128 = 512;
const BRUTE_LIMIT: u128 = 1_000_000;
/// Largest string-space dimension the spectral route will diagonalize in
/// place of the Gram matrix when D^n < N².
const DUAL_ROUTE_LIMIT: u128 = 4096;

/// Eigenvalues in [-1e-10, 0) are clipped to zero; anything lower signals a
/// broken build rather than roundoff.
const PSD_CLIP: f64 = 1e-10;

/// Partition labels Λ = {r₁ … r_D} on the (Z/NZ)² lattice.
#[derive(Debug, Clone)]
pub struct PartitionSpec {
    n_lattice: usize,
    labels: Vec<LatticePoint>,
}

impl PartitionSpec {
    pub fn new(n_lattice: usize, labels: Vec<LatticePoint>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidInput("partition needs at least one label".into()));
        }
        if labels.len() > n_lattice * n_lattice {
            return Err(Error::InvalidInput(format!(
                "{} labels exceed the N² = {} lattice points",
                labels.len(),
                n_lattice * n_lattice
            )));
        }
        let labels = labels
            .into_iter()
            .map(|l| LatticePoint::new(l.l1, l.l2, n_lattice))
            .collect();
        Ok(Self { n_lattice, labels })
    }

    /// D labels drawn uniformly without replacement.
    pub fn random(n_lattice: usize, d: usize, seed: u64) -> Result<Self> {
        if d > n_lattice * n_lattice {
            return Err(Error::InvalidInput(format!(
                "cannot draw {d} distinct labels from {} lattice points",
                n_lattice * n_lattice
            )));
        }
        let mut g = crate::rng::SplitMix64::new(seed);
        let mut chosen = Vec::with_capacity(d);
        while chosen.len() < d {
            let l = LatticePoint::from_index(
                g.next_below((n_lattice * n_lattice) as u64) as usize,
                n_lattice,
            );
            if !chosen.contains(&l) {
                chosen.push(l);
            }
        }
        Self::new(n_lattice, chosen)
    }

    pub fn n_lattice(&self) -> usize {
        self.n_lattice
    }

    pub fn d(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[LatticePoint] {
        &self.labels
    }

    /// Duplicate labels are legal but usually a configuration mistake.
    pub fn has_duplicates(&self) -> bool {
        let mut seen = self.labels.clone();
        seen.sort();
        seen.windows(2).any(|w| w[0] == w[1])
    }
}

/// N²×N² Hermitian unit-trace correlation matrix G(n).
#[derive(Debug, Clone)]
pub struct GramMatrix {
    pub n_steps: usize,
    pub n_lattice: usize,
    mat: CMat,
}

impl GramMatrix {
    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

/// Roots-of-unity table with exact conjugate symmetry: ω[N-k] = conj(ω[k]).
fn unity_roots(n: usize) -> Vec<C64> {
    let mut w = vec![C64::new(1.0, 0.0); n];
    for k in 1..=n / 2 {
        let z = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
        w[k] = z;
        if k != n - k {
            w[n - k] = z.conj();
        } else {
            w[k] = C64::new(-1.0, 0.0);
        }
    }
    w
}

/// V_α orbit table: orbit[p][cell] = index of V_α^p(cell), p = 0..n.
fn v_orbit_table(p: &MapParam, n_steps: usize) -> Vec<Vec<usize>> {
    let n = p.n_lattice;
    let cells = n * n;
    let mut orbit = Vec::with_capacity(n_steps);
    let mut current: Vec<usize> = (0..cells).collect();
    orbit.push(current.clone());
    for _ in 1..n_steps {
        let next: Vec<usize> = current
            .iter()
            .map(|&idx| lattice_map_v(p, LatticePoint::from_index(idx, n)).index(n))
            .collect();
        orbit.push(next.clone());
        current = next;
    }
    orbit
}

/// Per-slot phase index table u[p][j][cell] = r_j·V^p(cell) mod N.
fn phase_index_table(p: &MapParam, part: &PartitionSpec, n_steps: usize) -> Vec<Vec<Vec<usize>>> {
    let n = p.n_lattice;
    let cells = n * n;
    let orbit = v_orbit_table(p, n_steps);
    let mut table = vec![vec![vec![0usize; cells]; part.d()]; n_steps];
    for (step, slot) in table.iter_mut().enumerate() {
        for (j, rows) in slot.iter_mut().enumerate() {
            let r = part.labels()[j];
            for (cell, out) in rows.iter_mut().enumerate() {
                let v = LatticePoint::from_index(orbit[step][cell], n);
                *out = (r.l1 * v.l1 + r.l2 * v.l2).rem_euclid(n as i64) as usize;
            }
        }
    }
    table
}

fn check_gram_budget(p: &MapParam, part: &PartitionSpec, n_steps: usize) -> Result<()> {
    let n = p.n_lattice as u128;
    let work = n_steps as u128 * part.d() as u128 * n.pow(4);
    if work > GRAM_WORK_BUDGET {
        return Err(Error::InstanceTooLarge(format!(
            "Gram build work n·D·N⁴ = {work} exceeds budget {GRAM_WORK_BUDGET}"
        )));
    }
    let mem = 16 * n.pow(4);
    if mem > GRAM_MEM_BUDGET {
        return Err(Error::InstanceTooLarge(format!(
            "Gram matrix needs {mem} bytes, budget is {GRAM_MEM_BUDGET}"
        )));
    }
    Ok(())
}

/// G(n) through the factorized product of single-slot correlation factors.
///
/// For integer α the factor c_p depends only on the cell difference
/// (V^p is the matrix action mod N), cutting the precomputation to
/// O(N²·n·D); assembly of the dense matrix is O(N⁴·n) either way.
pub fn build_gram(p: &MapParam, part: &PartitionSpec, n_steps: usize) -> Result<GramMatrix> {
    build_gram_impl(p, part, n_steps, par::default_parallel())
}

#[doc(hidden)]
pub fn build_gram_with_parallelism(
    p: &MapParam,
    part: &PartitionSpec,
    n_steps: usize,
    parallel: bool,
) -> Result<GramMatrix> {
    build_gram_impl(p, part, n_steps, parallel)
}

fn build_gram_impl(
    p: &MapParam,
    part: &PartitionSpec,
    n_steps: usize,
    parallel: bool,
) -> Result<GramMatrix> {
    if n_steps == 0 {
        return Err(Error::InvalidInput("need at least one time step".into()));
    }
    if part.n_lattice() != p.n_lattice {
        return Err(Error::InvalidInput(
            "partition and map disagree on the lattice size".into(),
        ));
    }
    check_gram_budget(p, part, n_steps)?;
    let n = p.n_lattice;
    let cells = n * n;
    let d = part.d();
    let roots = unity_roots(n);
    let inv_d = 1.0 / d as f64;
    let inv_cells = 1.0 / cells as f64;

    let mut data = vec![C64::new(0.0, 0.0); cells * cells];

    if let Some(alpha) = p.integer_alpha() {
        // c_p tables over cell differences: slot_factor[p][delta]
        let t = cat_matrix(alpha);
        let mut slot_factor = vec![vec![C64::new(0.0, 0.0); cells]; n_steps];
        for (step, out) in slot_factor.iter_mut().enumerate() {
            let tp = t.pow_mod(step as u32, n as i64);
            for (delta_idx, slot) in out.iter_mut().enumerate() {
                let delta = LatticePoint::from_index(delta_idx, n);
                let moved = tp.apply_mod([delta.l1, delta.l2], n as i64);
                let mut acc = C64::new(0.0, 0.0);
                for r in part.labels() {
                    let e = (r.l1 * moved[0] + r.l2 * moved[1]).rem_euclid(n as i64) as usize;
                    acc += roots[e];
                }
                *slot = acc * inv_d;
            }
        }
        par::chunks_mut_indexed(&mut data, cells, parallel, |a, row| {
            let la = LatticePoint::from_index(a, n);
            for (b, out) in row.iter_mut().enumerate() {
                let lb = LatticePoint::from_index(b, n);
                let delta = LatticePoint::new(la.l1 - lb.l1, la.l2 - lb.l2, n).index(n);
                let mut prod = C64::new(inv_cells, 0.0);
                for slot in &slot_factor {
                    prod *= slot[delta];
                }
                *out = prod;
            }
        });
    } else {
        let table = phase_index_table(p, part, n_steps);
        par::chunks_mut_indexed(&mut data, cells, parallel, |a, row| {
            for (b, out) in row.iter_mut().enumerate() {
                let mut prod = C64::new(inv_cells, 0.0);
                for slot in &table {
                    let mut acc = C64::new(0.0, 0.0);
                    for uj in slot {
                        let e = (uj[a] + n - uj[b]) % n;
                        acc += roots[e];
                    }
                    prod *= acc * inv_d;
                }
                *out = prod;
            }
        });
    }

    let mat = CMat::from_vec(cells, data);
    debug_assert!(mat.hermiticity_defect() < 1e-12);
    debug_assert!((mat.trace().re - 1.0).abs() < 1e-12);
    Ok(GramMatrix {
        n_steps,
        n_lattice: n,
        mat,
    })
}

fn checked_string_count(d: usize, n_steps: usize, limit: u128, what: &str) -> Result<u128> {
    let mut total: u128 = 1;
    for _ in 0..n_steps {
        total = total.checked_mul(d as u128).ok_or_else(|| {
            Error::InstanceTooLarge(format!("{what}: D^n overflows the counter"))
        })?;
        if total > limit {
            return Err(Error::InstanceTooLarge(format!(
                "{what}: D^n = D^{n_steps} exceeds limit {limit}"
            )));
        }
    }
    Ok(total)
}

/// String vectors g_ℓ ∈ C^{D^n}, normalized by 1/(N·D^{n/2}); the exponent
/// of entry i is Σ_p r_{i_p}·V^p(ℓ).
fn string_vectors(p: &MapParam, part: &PartitionSpec, n_steps: usize, limit: u128) -> Result<Vec<Vec<C64>>> {
    let total = checked_string_count(part.d(), n_steps, limit, "string enumeration")? as usize;
    let n = p.n_lattice;
    let cells = n * n;
    if 16 * cells as u128 * total as u128 > 512 << 20 {
        return Err(Error::InstanceTooLarge(
            "string vector table exceeds 512 MiB".into(),
        ));
    }
    let table = phase_index_table(p, part, n_steps);
    let roots = unity_roots(n);
    let d = part.d();
    let scale = 1.0 / (n as f64 * (d as f64).powf(n_steps as f64 / 2.0));
    let mut vectors = Vec::with_capacity(cells);
    for cell in 0..cells {
        let mut v = Vec::with_capacity(total);
        for string in 0..total {
            let mut digits = string;
            let mut e = 0usize;
            for slot in table.iter() {
                e += slot[digits % d][cell];
                digits /= d;
            }
            v.push(roots[e % n] * scale);
        }
        vectors.push(v);
    }
    Ok(vectors)
}

/// Oracle: G(n) built directly from the D^n-dimensional string vectors,
/// G_{ℓ,ℓ'} = ⟨g_{ℓ'}|g_ℓ⟩.  Guarded to D^n ≤ 4096.
pub fn gram_from_strings(p: &MapParam, part: &PartitionSpec, n_steps: usize) -> Result<GramMatrix> {
    let vectors = string_vectors(p, part, n_steps, STRINGS_LIMIT)?;
    let cells = p.n_lattice * p.n_lattice;
    let mut mat = CMat::zeros(cells);
    for a in 0..cells {
        for b in 0..cells {
            let mut acc = C64::new(0.0, 0.0);
            for (x, y) in vectors[a].iter().zip(vectors[b].iter()) {
                acc += y.conj() * x;
            }
            mat[(a, b)] = acc;
        }
    }
    Ok(GramMatrix {
        n_steps,
        n_lattice: p.n_lattice,
        mat,
    })
}

/// Oracle: the D^n×D^n multitime density matrix ρ = Σ_ℓ |g_ℓ⟩⟨g_ℓ|, whose
/// nonzero spectrum equals that of G(n).  Guarded to D^n ≤ 512.
pub fn rho_full(p: &MapParam, part: &PartitionSpec, n_steps: usize) -> Result<CMat> {
    checked_string_count(part.d(), n_steps, RHO_LIMIT, "density matrix")?;
    rho_of_strings(p, part, n_steps, RHO_LIMIT, par::default_parallel())
}

fn rho_of_strings(
    p: &MapParam,
    part: &PartitionSpec,
    n_steps: usize,
    limit: u128,
    parallel: bool,
) -> Result<CMat> {
    let vectors = string_vectors(p, part, n_steps, limit)?;
    let cells = p.n_lattice * p.n_lattice;
    let dim = vectors[0].len();
    let mut data = vec![C64::new(0.0, 0.0); dim * dim];
    par::chunks_mut_indexed(&mut data, dim, parallel, |i, row| {
        for (j, out) in row.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for v in vectors.iter().take(cells) {
                acc += v[i] * v[j].conj();
            }
            *out = acc;
        }
    });
    Ok(CMat::from_vec(dim, data))
}

/// Frequency field ν on (Z/NZ)²: exact big-integer counts over D^n strings.
#[derive(Debug, Clone)]
pub struct FrequencyField {
    n_lattice: usize,
    counts: Vec<BigUint>,
    total: BigUint,
}

impl FrequencyField {
    pub fn n_lattice(&self) -> usize {
        self.n_lattice
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// ν as floating probabilities, scaled once from the exact counts.
    pub fn values(&self) -> Vec<f64> {
        let total = self.total.to_f64().unwrap_or(f64::INFINITY);
        self.counts
            .iter()
            .map(|c| c.to_f64().unwrap_or(0.0) / total)
            .collect()
    }

    pub fn value_at(&self, l: LatticePoint) -> f64 {
        let idx = LatticePoint::new(l.l1, l.l2, self.n_lattice).index(self.n_lattice);
        self.counts[idx].to_f64().unwrap_or(0.0) / self.total.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Shannon entropy -Σ ν ln ν computed as ln(total) - (Σ c·ln c)/total
    /// from the exact counts, compensated summation in lattice order.
    pub fn shannon(&self) -> f64 {
        let total = self.total.to_f64().expect("finite total");
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for c in &self.counts {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64().expect("finite count");
            let term = cf * cf.ln();
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        total.ln() - sum / total
    }
}

/// Support {ℓ : ν(ℓ) > 0} and its cardinality.
pub fn support_set(nu: &FrequencyField) -> (Vec<LatticePoint>, usize) {
    let n = nu.n_lattice;
    let pts: Vec<LatticePoint> = nu
        .counts
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(idx, _)| LatticePoint::from_index(idx, n))
        .collect();
    let card = pts.len();
    (pts, card)
}

/// Shannon entropy of a probability vector; 0·ln 0 = 0, negative entries
/// rejected.
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    let mut h = 0.0f64;
    let mut comp = 0.0f64;
    for &p in probs {
        if p < 0.0 {
            return Err(Error::InvalidInput(format!("negative probability {p}")));
        }
        if p == 0.0 {
            continue;
        }
        let term = -p * p.ln();
        let y = term - comp;
        let t = h + y;
        comp = (t - h) - y;
        h = t;
    }
    Ok(h)
}

/// Frequency field by dynamic-programming convolution: start from δ at the
/// origin and convolve, slot by slot, with the uniform measure on
/// {(T_αᵗ)^p·r_j mod N}.  Integer α only.
pub fn frequency_field(p: &MapParam, part: &PartitionSpec, n_steps: usize) -> Result<FrequencyField> {
    let alpha = p
        .integer_alpha()
        .ok_or(Error::NonIntegerAlpha(p.alpha))?;
    if part.n_lattice() != p.n_lattice {
        return Err(Error::InvalidInput(
            "partition and map disagree on the lattice size".into(),
        ));
    }
    let mut state = FrequencyDp::new(alpha, part, p.n_lattice);
    for _ in 0..n_steps {
        state.advance();
    }
    Ok(state.field())
}

/// Incremental DP state; `advance` appends one time slot.
pub(crate) struct FrequencyDp {
    n: usize,
    step: usize,
    t_transpose: crate::intmat::IntMat2,
    labels: Vec<LatticePoint>,
    counts: Vec<BigUint>,
}

impl FrequencyDp {
    pub(crate) fn new(alpha: i64, part: &PartitionSpec, n: usize) -> Self {
        let mut counts = vec![BigUint::zero(); n * n];
        counts[0] = BigUint::from(1u32);
        Self {
            n,
            step: 0,
            t_transpose: cat_matrix(alpha).transpose(),
            labels: part.labels().to_vec(),
            counts,
        }
    }

    pub(crate) fn advance(&mut self) {
        let n = self.n;
        let tp = self.t_transpose.pow_mod(self.step as u32, n as i64);
        let shifts: Vec<usize> = self
            .labels
            .iter()
            .map(|r| {
                let s = tp.apply_mod([r.l1, r.l2], n as i64);
                LatticePoint::new(s[0], s[1], n).index(n)
            })
            .collect();
        let mut next = vec![BigUint::zero(); n * n];
        for (idx, c) in self.counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let l = LatticePoint::from_index(idx, n);
            for &s in &shifts {
                let sp = LatticePoint::from_index(s, n);
                let target = LatticePoint::new(l.l1 + sp.l1, l.l2 + sp.l2, n).index(n);
                next[target] += c;
            }
        }
        self.counts = next;
        self.step += 1;
    }

    pub(crate) fn field(&self) -> FrequencyField {
        let total = BigUint::from(self.labels.len()).pow(self.step as u32);
        debug_assert_eq!(self.counts.iter().sum::<BigUint>(), total);
        FrequencyField {
            n_lattice: self.n,
            counts: self.counts.clone(),
            total,
        }
    }
}

/// Oracle: the frequency field by explicit enumeration of all D^n strings.
pub fn frequencies_brute(p: &MapParam, part: &PartitionSpec, n_steps: usize) -> Result<FrequencyField> {
    let alpha = p
        .integer_alpha()
        .ok_or(Error::NonIntegerAlpha(p.alpha))?;
    let total = checked_string_count(part.d(), n_steps, BRUTE_LIMIT, "string enumeration")?;
    let n = p.n_lattice;
    let t_tr = cat_matrix(alpha).transpose();
    let d = part.d();
    // shift of label j in slot p
    let shifts: Vec<Vec<LatticePoint>> = (0..n_steps)
        .map(|step| {
            let tp = t_tr.pow_mod(step as u32, n as i64);
            part.labels()
                .iter()
                .map(|r| {
                    let s = tp.apply_mod([r.l1, r.l2], n as i64);
                    LatticePoint::new(s[0], s[1], n)
                })
                .collect()
        })
        .collect();
    let mut counts = vec![BigUint::zero(); n * n];
    for string in 0..total {
        let mut digits = string;
        let mut acc = LatticePoint::new(0, 0, n);
        for slot in shifts.iter() {
            let s = slot[(digits % d as u128) as usize];
            acc = LatticePoint::new(acc.l1 + s.l1, acc.l2 + s.l2, n);
            digits /= d as u128;
        }
        counts[acc.index(n)] += BigUint::from(1u32);
    }
    Ok(FrequencyField {
        n_lattice: n,
        counts,
        total: BigUint::from(d).pow(n_steps as u32),
    })
}

/// Entropy -Σ max(η,0)·ln η of a spectrum, clipping the [-1e-10, 0) window
/// to zero and rejecting anything more negative.
pub fn entropy_from_spectrum(spectrum: &[f64]) -> Result<f64> {
    let mut h = 0.0f64;
    let mut comp = 0.0f64;
    for &l in spectrum {
        if l < -PSD_CLIP {
            return Err(Error::PsdViolation {
                value: l,
                window: PSD_CLIP,
            });
        }
        if l <= 0.0 {
            continue;
        }
        let term = -l * l.ln();
        let y = term - comp;
        let t = h + y;
        comp = (t - h) - y;
        h = t;
    }
    Ok(h)
}

/// Von Neumann entropy -Tr G ln G by full diagonalization.
pub fn vn_entropy(g: &GramMatrix) -> Result<f64> {
    let spectrum = hermitian_eigenvalues(g.matrix())?;
    entropy_from_spectrum(&spectrum)
}

/// How H(n) is computed per step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyMethod {
    /// Frequency for integer α, otherwise spectral.
    Auto,
    /// Diagonalization of the multitime correlation state.
    Spectral,
    /// Frequency-field Shannon entropy; integer α only.
    Frequency,
}

/// One step of the entropy series: H(n) and the production h(n) = H(n)/n.
#[derive(Debug, Clone, Copy)]
pub struct EntropyStep {
    pub n: usize,
    pub total: f64,
    pub production: f64,
}

/// Per-timestep Von Neumann entropies of the refined partition.
#[derive(Debug, Clone)]
pub struct EntropySeries {
    pub n_lattice: usize,
    pub steps: Vec<EntropyStep>,
}

impl EntropySeries {
    pub fn productions(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.production).collect()
    }

    pub fn totals(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.total).collect()
    }
}

/// H(n), h(n) for n = 1…n_max.
pub fn entropy_series(
    p: &MapParam,
    part: &PartitionSpec,
    n_max: usize,
    method: EntropyMethod,
) -> Result<EntropySeries> {
    if n_max == 0 {
        return Err(Error::InvalidInput("need n_max ≥ 1".into()));
    }
    let use_frequency = match method {
        EntropyMethod::Frequency => {
            if p.integer_alpha().is_none() {
                return Err(Error::NonIntegerAlpha(p.alpha));
            }
            true
        }
        EntropyMethod::Auto => p.integer_alpha().is_some(),
        EntropyMethod::Spectral => false,
    };
    let mut steps = Vec::with_capacity(n_max);
    if use_frequency {
        let alpha = p.integer_alpha().unwrap();
        let mut dp = FrequencyDp::new(alpha, part, p.n_lattice);
        for n in 1..=n_max {
            dp.advance();
            let total = dp.field().shannon();
            steps.push(EntropyStep {
                n,
                total,
                production: total / n as f64,
            });
        }
    } else {
        for n in 1..=n_max {
            let total = spectral_entropy_step(p, part, n)?;
            steps.push(EntropyStep {
                n,
                total,
                production: total / n as f64,
            });
        }
    }
    Ok(EntropySeries {
        n_lattice: p.n_lattice,
        steps,
    })
}

/// One spectral entropy value.  The nonzero spectrum of G(n) equals that of
/// the D^n-dimensional string-space state, so whichever matrix is smaller
/// gets diagonalized; the equality itself is covered by the `rho_full`
/// oracle tests.
fn spectral_entropy_step(p: &MapParam, part: &PartitionSpec, n_steps: usize) -> Result<f64> {
    let cells = (p.n_lattice * p.n_lattice) as u128;
    let string_dim = checked_string_count(part.d(), n_steps, u128::MAX / 2, "spectral route").unwrap_or(u128::MAX);
    if string_dim < cells && string_dim <= DUAL_ROUTE_LIMIT {
        let rho = rho_of_strings(p, part, n_steps, DUAL_ROUTE_LIMIT, par::default_parallel())?;
        let spectrum = hermitian_eigenvalues(&rho)?;
        entropy_from_spectrum(&spectrum)
    } else {
        vn_entropy(&build_gram(p, part, n_steps)?)
    }
}
