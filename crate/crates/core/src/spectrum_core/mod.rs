//! Domain types for potentials, states and local spectra, plus the inner
//! products and matrix elements every other module is built from.
//!
//! Wavefunctions are real throughout: one-dimensional bound states can be
//! chosen real, and the continuum families used here are standing waves.

pub mod quad;

use std::sync::Arc;

use crate::error::{Error, Result};
pub use quad::{PanelRule, QuadratureSpec, PANEL_BUDGET};

/// Physical constants threading the kinetic term. Natural units
/// (`hbar = m = 1`) are the default; every formula depends on the
/// combinations `m gamma / hbar^2` and `hbar^2 q^2 / 2m` only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub hbar: f64,
    pub mass: f64,
}

impl Default for Units {
    fn default() -> Self {
        Units::natural()
    }
}

impl Units {
    pub fn natural() -> Self {
        Units {
            hbar: 1.0,
            mass: 1.0,
        }
    }

    pub fn new(hbar: f64, mass: f64) -> Self {
        assert!(hbar > 0.0 && mass > 0.0, "units must be strictly positive");
        Units { hbar, mass }
    }

    /// Inverse decay length `m gamma / hbar^2` of a delta well of strength
    /// `gamma`.
    pub fn kappa(&self, gamma: f64) -> f64 {
        self.mass * gamma / (self.hbar * self.hbar)
    }

    /// Continuum dispersion `hbar^2 q^2 / 2m`.
    pub fn kinetic_energy(&self, q: f64) -> f64 {
        self.hbar * self.hbar * q * q / (2.0 * self.mass)
    }
}

/// Relative amplitude below which wavefunction tails are considered gone.
pub const TAIL_TOL: f64 = 1e-12;

/// One localized potential term.
///
/// A `DeltaSpike` is `V(x) = -strength * delta(x - center)`; a `Sampled`
/// profile is `V(x) = -strength * s(x - center)` with `s` linearly
/// interpolated from samples on a compact support.
#[derive(Clone)]
pub enum Potential {
    DeltaSpike {
        strength: f64,
        center: f64,
    },
    Sampled {
        strength: f64,
        center: f64,
        /// `(offset from center, profile value)`, strictly increasing offsets.
        profile: Arc<Vec<(f64, f64)>>,
    },
}

impl std::fmt::Debug for Potential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Potential::DeltaSpike { strength, center } => f
                .debug_struct("DeltaSpike")
                .field("strength", strength)
                .field("center", center)
                .finish(),
            Potential::Sampled {
                strength, center, ..
            } => f
                .debug_struct("Sampled")
                .field("strength", strength)
                .field("center", center)
                .finish(),
        }
    }
}

impl Potential {
    pub fn delta(strength: f64, center: f64) -> Self {
        assert!(strength != 0.0, "delta spike strength must be nonzero");
        Potential::DeltaSpike { strength, center }
    }

    pub fn sampled(strength: f64, center: f64, profile: Vec<(f64, f64)>) -> Self {
        assert!(profile.len() >= 2, "sampled profile needs at least 2 points");
        assert!(
            profile.windows(2).all(|w| w[0].0 < w[1].0),
            "profile offsets must be strictly increasing"
        );
        Potential::Sampled {
            strength,
            center,
            profile: Arc::new(profile),
        }
    }

    pub fn center(&self) -> f64 {
        match self {
            Potential::DeltaSpike { center, .. } | Potential::Sampled { center, .. } => *center,
        }
    }

    pub fn strength(&self) -> f64 {
        match self {
            Potential::DeltaSpike { strength, .. } | Potential::Sampled { strength, .. } => {
                *strength
            }
        }
    }

    /// Pointwise value; meaningful for `Sampled` only (a delta has no
    /// pointwise value and evaluates to 0 away from its center).
    pub fn value_at(&self, x: f64) -> f64 {
        match self {
            Potential::DeltaSpike { .. } => 0.0,
            Potential::Sampled {
                strength,
                center,
                profile,
            } => {
                let xi = x - center;
                let pts = profile.as_slice();
                if xi < pts[0].0 || xi > pts[pts.len() - 1].0 {
                    return 0.0;
                }
                let idx = pts.partition_point(|p| p.0 <= xi).min(pts.len() - 1);
                let (x1, v1) = pts[idx - 1];
                let (x2, v2) = pts[idx];
                let t = (xi - x1) / (x2 - x1);
                -strength * (v1 + t * (v2 - v1))
            }
        }
    }

    /// Declared support of the potential term.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Potential::DeltaSpike { center, .. } => (*center, *center),
            Potential::Sampled {
                center, profile, ..
            } => (
                center + profile[0].0,
                center + profile[profile.len() - 1].0,
            ),
        }
    }
}

/// A real-valued wavefunction with a support hint: outside the hinted
/// interval the amplitude stays below `TAIL_TOL` of the peak.
#[derive(Clone)]
pub struct StateFunction {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    support: (f64, f64),
}

impl std::fmt::Debug for StateFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StateFunction[{:.3}, {:.3}]", self.support.0, self.support.1)
    }
}

impl StateFunction {
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(support: (f64, f64), f: F) -> Self {
        assert!(support.0 < support.1, "support interval must be nonempty");
        StateFunction {
            f: Arc::new(f),
            support,
        }
    }

    pub fn zero() -> Self {
        StateFunction {
            f: Arc::new(|_| 0.0),
            support: (-1.0, 1.0),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn support_hint(&self) -> (f64, f64) {
        self.support
    }

    /// `sum_i c_i f_i` with the union of support hints.
    pub fn linear_combination(terms: Vec<(f64, StateFunction)>) -> Self {
        assert!(!terms.is_empty());
        let lo = terms
            .iter()
            .map(|(_, t)| t.support.0)
            .fold(f64::INFINITY, f64::min);
        let hi = terms
            .iter()
            .map(|(_, t)| t.support.1)
            .fold(f64::NEG_INFINITY, f64::max);
        StateFunction {
            f: Arc::new(move |x| terms.iter().map(|(c, t)| c * t.eval(x)).sum()),
            support: (lo, hi),
        }
    }

    /// Memoize on a uniform grid over `[a, b]` with cubic interpolation,
    /// never interpolating across the listed break points (kink locations).
    /// Outside `[a, b]` the sampled function evaluates to zero, so choose
    /// the window to cover the support hint.
    pub fn sampled(&self, a: f64, b: f64, n: usize, breaks: &[f64]) -> Self {
        assert!(n >= 8 && b > a);
        let h = (b - a) / (n - 1) as f64;
        // Snap breaks onto node indices so segments share nodes.
        let mut seg_edges: Vec<usize> = vec![0, n - 1];
        for &br in breaks {
            if br > a && br < b {
                let i = ((br - a) / h).round() as usize;
                if i > 0 && i < n - 1 {
                    seg_edges.push(i);
                }
            }
        }
        seg_edges.sort_unstable();
        seg_edges.dedup();
        let values: Vec<f64> = (0..n).map(|i| self.eval(a + i as f64 * h)).collect();
        let support = self.support;
        StateFunction {
            f: Arc::new(move |x| {
                if x < a || x > b {
                    return 0.0;
                }
                let pos = (x - a) / h;
                let i = (pos.floor() as usize).min(n - 2);
                // segment containing [i, i+1]
                let seg = seg_edges.windows(2).find(|w| w[0] <= i && i < w[1]);
                let (lo, hi) = match seg {
                    Some(w) => (w[0], w[1]),
                    None => (0, n - 1),
                };
                // 4-node Lagrange stencil clamped into the segment
                let mut s = i.saturating_sub(1).max(lo);
                if s + 3 > hi {
                    s = hi.saturating_sub(3).max(lo);
                }
                let m = (hi - lo + 1).min(4);
                let t = pos - s as f64;
                let mut acc = 0.0;
                for j in 0..m {
                    let mut lj = 1.0;
                    for k in 0..m {
                        if k != j {
                            lj *= (t - k as f64) / (j as f64 - k as f64);
                        }
                    }
                    acc += lj * values[s + j];
                }
                acc
            }),
            support,
        }
    }
}

/// A weighted point mass `weight * delta(x - position)`: what a delta spike
/// turns a smooth state into.
#[derive(Debug, Clone, Copy)]
pub struct PointSource {
    pub weight: f64,
    pub position: f64,
}

/// Result of applying a potential to a state: either still a function, or a
/// sum of point masses. Point masses keep every subsequent inner product
/// exact (plain point evaluation instead of quadrature).
#[derive(Debug, Clone)]
pub enum Source {
    Function(StateFunction),
    Points(Vec<PointSource>),
}

impl Source {
    pub fn is_negligible(&self) -> bool {
        match self {
            Source::Points(p) => p.iter().all(|p| p.weight == 0.0),
            Source::Function(_) => false,
        }
    }
}

/// `V |f>` as a [`Source`].
pub fn apply_potential(v: &Potential, f: &StateFunction) -> Source {
    match v {
        Potential::DeltaSpike { strength, center } => Source::Points(vec![PointSource {
            weight: -strength * f.eval(*center),
            position: *center,
        }]),
        Potential::Sampled { .. } => {
            let v = v.clone();
            let f = f.clone();
            let (lo, hi) = v.support();
            Source::Function(StateFunction::new((lo, hi), move |x| {
                v.value_at(x) * f.eval(x)
            }))
        }
    }
}

/// `<f | g>` by adaptive quadrature over the intersection of support hints.
pub fn inner_product(f: &StateFunction, g: &StateFunction, spec: &QuadratureSpec) -> Result<f64> {
    let lo = f.support_hint().0.max(g.support_hint().0);
    let hi = f.support_hint().1.min(g.support_hint().1);
    if lo >= hi {
        return Ok(0.0);
    }
    quad::integrate(
        |x| f.eval(x) * g.eval(x),
        lo,
        hi,
        spec.abs_tol,
        spec.rel_tol,
        PANEL_BUDGET,
    )
}

/// `<f | src>`: exact point evaluation for point masses.
pub fn source_overlap(f: &StateFunction, src: &Source, spec: &QuadratureSpec) -> Result<f64> {
    match src {
        Source::Points(pts) => Ok(pts.iter().map(|p| p.weight * f.eval(p.position)).sum()),
        Source::Function(g) => inner_product(f, g, spec),
    }
}

/// `<bra | V | ket>`. Delta spikes evaluate exactly; sampled profiles go
/// through quadrature. The product is formed as `(bra * ket) * V` so the
/// result is bit-identical under bra/ket exchange.
pub fn matrix_element(
    bra: &StateFunction,
    v: &Potential,
    ket: &StateFunction,
    spec: &QuadratureSpec,
) -> Result<f64> {
    match v {
        Potential::DeltaSpike { strength, center } => {
            Ok(-strength * (bra.eval(*center) * ket.eval(*center)))
        }
        Potential::Sampled { .. } => {
            let (lo, hi) = v.support();
            quad::integrate(
                |x| (bra.eval(x) * ket.eval(x)) * v.value_at(x),
                lo,
                hi,
                spec.abs_tol,
                spec.rel_tol,
                PANEL_BUDGET,
            )
        }
    }
}

/// A bound state of a local Hamiltonian.
#[derive(Debug, Clone)]
pub struct BoundState {
    pub label: String,
    pub energy: f64,
    pub wavefunction: StateFunction,
}

/// Which trigonometric shape a continuum family takes around its center.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    /// `A(q) cos(q |x - c| + Theta(q))`
    Cos,
    /// `A(q) sin(q (x - c))`
    Sin,
}

/// Exact standing-wave structure of a continuum family. Knowing amplitude
/// and phase lets spectral integrals split into envelope-times-cosine
/// components whose oscillatory tails can be accelerated.
#[derive(Clone)]
pub struct TrigForm {
    pub kind: TrigKind,
    pub amplitude: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub phase: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

/// One parameterized family of delta-normalized positive-energy states.
#[derive(Clone)]
pub struct ContinuumFamily {
    pub label: String,
    pub center: f64,
    pub units: Units,
    eval: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    trig: Option<TrigForm>,
}

impl std::fmt::Debug for ContinuumFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ContinuumFamily({})", self.label)
    }
}

impl ContinuumFamily {
    pub fn new<F: Fn(f64, f64) -> f64 + Send + Sync + 'static>(
        label: impl Into<String>,
        center: f64,
        units: Units,
        eval: F,
    ) -> Self {
        ContinuumFamily {
            label: label.into(),
            center,
            units,
            eval: Arc::new(eval),
            trig: None,
        }
    }

    pub fn with_trig_form(mut self, trig: TrigForm) -> Self {
        self.trig = Some(trig);
        self
    }

    pub fn wavefunction_at(&self, q: f64, x: f64) -> f64 {
        (self.eval)(q, x)
    }

    pub fn energy_of(&self, q: f64) -> f64 {
        self.units.kinetic_energy(q)
    }

    pub fn trig_form(&self) -> Option<&TrigForm> {
        self.trig.as_ref()
    }

    /// Large-`x` amplitude `A(q)` when the family declares one.
    pub fn asymptotic_amplitude(&self, q: f64) -> Option<f64> {
        self.trig.as_ref().map(|t| (t.amplitude)(q))
    }

    /// Large-`x` phase shift when the family declares one.
    pub fn asymptotic_phase(&self, q: f64) -> Option<f64> {
        self.trig.as_ref().map(|t| (t.phase)(q))
    }
}

/// The complete eigen-decomposition of one local Hamiltonian.
#[derive(Debug, Clone)]
pub struct LocalSpectrum {
    pub bound: Vec<BoundState>,
    pub continuum: Vec<ContinuumFamily>,
    pub potential: Potential,
    pub units: Units,
}

impl LocalSpectrum {
    pub fn new(
        bound: Vec<BoundState>,
        continuum: Vec<ContinuumFamily>,
        potential: Potential,
        units: Units,
    ) -> Self {
        assert!(
            bound.windows(2).all(|w| w[0].energy < w[1].energy),
            "bound energies must be strictly increasing"
        );
        assert!(
            bound.iter().all(|b| b.energy < 0.0),
            "bound energies must sit below the continuum threshold"
        );
        LocalSpectrum {
            bound,
            continuum,
            potential,
            units,
        }
    }

    pub fn bound_by_label(&self, label: &str) -> Option<&BoundState> {
        self.bound.iter().find(|b| b.label == label)
    }
}

/// Fixed composite Gauss-Kronrod nodes over `[0, q_max]`, used when a
/// continuum transform must be sampled once and reused for many targets.
#[derive(Debug, Clone)]
pub struct QGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub q_max: f64,
}

impl QGrid {
    /// Composite grid resolving oscillations `cos(q r)` up to spatial
    /// radius `r_scale`.
    pub fn build(q_max: f64, r_scale: f64) -> Self {
        let width = (3.0 / r_scale.max(0.5)).min(1.0);
        let n_panels = (q_max / width).ceil() as usize;
        let mut nodes = Vec::with_capacity(15 * n_panels);
        let mut weights = Vec::with_capacity(15 * n_panels);
        for p in 0..n_panels {
            let a = q_max * p as f64 / n_panels as f64;
            let b = q_max * (p + 1) as f64 / n_panels as f64;
            let c = 0.5 * (a + b);
            let h = 0.5 * (b - a);
            for j in 0..8 {
                let wk = quad::kronrod_weight(j) * h;
                if j == 7 {
                    nodes.push(c);
                    weights.push(wk);
                } else {
                    let dx = h * quad::kronrod_node(j);
                    nodes.push(c - dx);
                    weights.push(wk);
                    nodes.push(c + dx);
                    weights.push(wk);
                }
            }
        }
        QGrid {
            nodes,
            weights,
            q_max,
        }
    }
}

/// `f~(q) = <q|f>` for every node of a fixed grid.
pub fn family_transform(
    family: &ContinuumFamily,
    f: &StateFunction,
    grid: &QGrid,
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    let (lo, hi) = f.support_hint();
    let mut out = Vec::with_capacity(grid.nodes.len());
    for &q in &grid.nodes {
        // seed panels at the oscillation scale of psi_q
        let n_seed = (((hi - lo) * q / std::f64::consts::PI).ceil() as usize).clamp(1, 600);
        let edges: Vec<f64> = (0..=n_seed)
            .map(|i| lo + (hi - lo) * i as f64 / n_seed as f64)
            .collect();
        let v = quad::integrate_seeded(
            &|x| family.wavefunction_at(q, x) * f.eval(x),
            &edges,
            spec.abs_tol,
            spec.rel_tol,
            PANEL_BUDGET + n_seed,
        )?;
        out.push(v);
    }
    Ok(out)
}

/// `x -> int dq psi_q(x) c(q)` assembled from grid samples of `c`.
pub fn family_assemble(
    family: &ContinuumFamily,
    grid: &QGrid,
    coeffs: &[f64],
    support: (f64, f64),
) -> StateFunction {
    let family = family.clone();
    let grid = grid.clone();
    let coeffs = coeffs.to_vec();
    StateFunction::new(support, move |x| {
        grid.nodes
            .iter()
            .zip(&grid.weights)
            .zip(&coeffs)
            .map(|((&q, &w), &c)| w * c * family.wavefunction_at(q, x))
            .sum()
    })
}

/// L2 norm of `f - sum_bound |n><n|f> - sum_families int dq |q><q|f>`.
///
/// Continuum sums are truncated at `spec.q_max` (hard cutoff): the residual
/// then decreases monotonically as `q_max` grows, which the property tests
/// rely on.
pub fn check_completeness(
    spectrum: &LocalSpectrum,
    test_fn: &StateFunction,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let (lo, hi) = test_fn.support_hint();
    let bound_coeffs: Vec<f64> = spectrum
        .bound
        .iter()
        .map(|b| inner_product(&b.wavefunction, test_fn, spec))
        .collect::<Result<_>>()?;

    let r_scale = (lo - spectrum.potential.center())
        .abs()
        .max((hi - spectrum.potential.center()).abs())
        .max(1.0);
    let grid = QGrid::build(spec.q_max, r_scale);
    let mut transforms = Vec::new();
    for fam in &spectrum.continuum {
        transforms.push(family_transform(fam, test_fn, &grid, spec)?);
    }

    let residual = |x: f64| -> f64 {
        let mut r = test_fn.eval(x);
        for (b, c) in spectrum.bound.iter().zip(&bound_coeffs) {
            r -= c * b.wavefunction.eval(x);
        }
        for (fam, tr) in spectrum.continuum.iter().zip(&transforms) {
            let mut acc = 0.0;
            for ((&q, &w), &c) in grid.nodes.iter().zip(&grid.weights).zip(tr) {
                acc += w * c * fam.wavefunction_at(q, x);
            }
            r -= acc;
        }
        r
    };

    let norm2 = quad::integrate(
        |x| {
            let r = residual(x);
            r * r
        },
        lo,
        hi,
        spec.abs_tol,
        spec.rel_tol.max(1e-6),
        600,
    )
    .or_else(|_| {
        // The residual is quadrature noise at convergence; a trapezoid pass
        // is enough when adaptive refinement chases that noise.
        let n = 801;
        let h = (hi - lo) / (n - 1) as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let r = residual(lo + i as f64 * h);
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            acc += w * r * r * h;
        }
        Ok::<f64, Error>(acc)
    })?;
    Ok(norm2.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(center: f64, sigma: f64) -> StateFunction {
        let norm = 1.0 / (sigma * sigma * std::f64::consts::PI).powf(0.25);
        StateFunction::new((center - 9.0 * sigma, center + 9.0 * sigma), move |x| {
            let t = (x - center) / sigma;
            norm * (-0.5 * t * t).exp()
        })
    }

    #[test]
    fn gaussian_normalization() {
        let spec = QuadratureSpec::default();
        let g = gaussian(0.3, 0.8);
        let n = inner_product(&g, &g, &spec).unwrap();
        assert!((n - 1.0).abs() < 1e-10);
    }

    #[test]
    fn disjoint_supports_give_zero() {
        let spec = QuadratureSpec::default();
        let f = StateFunction::new((-1.0, 1.0), |_| 1.0);
        let g = StateFunction::new((2.0, 3.0), |_| 1.0);
        assert_eq!(inner_product(&f, &g, &spec).unwrap(), 0.0);
    }

    #[test]
    fn delta_matrix_element_is_point_evaluation() {
        let spec = QuadratureSpec::default();
        let f = gaussian(0.0, 1.0);
        let g = gaussian(0.5, 1.0);
        let v = Potential::delta(2.0, 0.25);
        let me = matrix_element(&f, &v, &g, &spec).unwrap();
        assert_eq!(me, -2.0 * (f.eval(0.25) * g.eval(0.25)));
        // bit-identical under exchange
        let swapped = matrix_element(&g, &v, &f, &spec).unwrap();
        assert_eq!(me.to_bits(), swapped.to_bits());
    }

    #[test]
    fn zero_strength_sampled_vanishes() {
        let spec = QuadratureSpec::default();
        let f = gaussian(0.0, 1.0);
        let v = Potential::sampled(0.0, 0.0, vec![(-1.0, 0.0), (0.0, 1.0), (1.0, 0.0)]);
        assert_eq!(matrix_element(&f, &v, &f, &spec).unwrap(), 0.0);
    }

    #[test]
    fn sampled_profile_interpolates() {
        let v = Potential::sampled(3.0, 1.0, vec![(-1.0, 0.0), (0.0, 1.0), (1.0, 0.0)]);
        assert_eq!(v.value_at(1.0), -3.0);
        assert!((v.value_at(0.5) - -1.5).abs() < 1e-15);
        assert_eq!(v.value_at(2.5), 0.0);
    }

    #[test]
    fn apply_delta_gives_point_source() {
        let f = gaussian(0.0, 1.0);
        let v = Potential::delta(1.5, 0.4);
        match apply_potential(&v, &f) {
            Source::Points(p) => {
                assert_eq!(p.len(), 1);
                assert_eq!(p[0].position, 0.4);
                assert!((p[0].weight - -1.5 * f.eval(0.4)).abs() < 1e-15);
            }
            Source::Function(_) => panic!("delta must yield point sources"),
        }
    }

    #[test]
    fn sampled_state_function_matches_original() {
        let g = gaussian(0.0, 1.0);
        let s = g.sampled(-6.0, 6.0, 2001, &[]);
        for i in 0..100 {
            let x = -5.5 + 11.0 * i as f64 / 99.0;
            assert!((s.eval(x) - g.eval(x)).abs() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn sampled_respects_breaks() {
        // |x| has a kink at 0; interpolation must not smear it.
        let f = StateFunction::new((-2.0, 2.0), |x: f64| (-x.abs()).exp());
        let s = f.sampled(-2.0, 2.0, 4001, &[0.0]);
        for i in 0..200 {
            let x = -1.9 + 3.8 * i as f64 / 199.0;
            assert!((s.eval(x) - f.eval(x)).abs() < 1e-9, "x = {x}");
        }
    }
}
