//! Second-minor method on the globe: an `M × N` cylinder (periodic in `x`)
//! whose bottom and top rows are joined by spokes `s` to poles `O` and `O'`.
//!
//! Deleting both poles leaves the second minor `r⁻¹ L_per(N) ⊗ I + s⁻¹ I ⊗ L_DD(M)`,
//! with modes `Λ_{m,n} = 2r⁻¹(1 − cos 2θₙ) + 2s⁻¹(1 − cos 2φₘ)` and
//! `ψ = √(2/(N(M+1))) e^{2ixθₙ} sin(2yφₘ)`. Eliminating `V_O` (with `V_{O'} = 0`)
//! adds a rank-one correction that collapses to `s (y₂ − y₁)² / (N (M+1))`:
//!
//! ```text
//! R = s (y₂ − y₁)² / (N (M+1)) + Σ_{m,n} |ψ_a − ψ_b|² / Λ_{m,n}
//! ```
//!
//! Summing over `n` in closed form, with `sinh Λₘ = √h sin φₘ` and `h = r/s`,
//! leaves one sum over the `M` latitudinal modes; that is [`GlobeModeData`].

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::lattice::{node_index, LatticeSpec, LatticeTopology, NodeRef};
use crate::oracle::PotentialSolution;
use crate::spectra1d::BoundaryKind;

use super::hyperbolic::{cosh_shift_over_sinh, coth, sinh_product_over_sinh_sum};
use super::{same_node, Method, ProductSpectrum, ResistanceResult};

fn require_globe(spec: &LatticeSpec) -> Result<()> {
    spec.validate()?;
    if spec.topology != LatticeTopology::Globe {
        return invalid(format!("expected a globe lattice, got {}", spec.topology));
    }
    Ok(())
}

/// Periodic(N) ⊗ Dirichlet-Dirichlet(M) spectrum of the globe's second minor.
pub fn second_minor_spectrum(spec: &LatticeSpec) -> Result<ProductSpectrum> {
    require_globe(spec)?;
    ProductSpectrum::new(spec, BoundaryKind::Periodic, BoundaryKind::DirichletDirichlet)
}

/// `s (y₂ − y₁)² / (N (M+1))`, the pole-elimination correction. With `y = 0`
/// standing for `O` and `y = M+1` for `O'` it also covers pole endpoints.
fn pole_correction(spec: &LatticeSpec, y1: usize, y2: usize) -> f64 {
    let dy = y2 as f64 - y1 as f64;
    spec.s * dy * dy / (spec.n as f64 * (spec.m as f64 + 1.0))
}

/// Resolves a pole pair or pole-grid pair to `O ↔ (x, y')`, mirroring `O'`
/// onto `O` through `y → M + 1 − y`.
enum PolePair {
    Poles,
    SouthToGrid { x: usize, y: usize },
}

fn classify_pole_pair(spec: &LatticeSpec, a: NodeRef, b: NodeRef) -> Result<PolePair> {
    use NodeRef::*;
    match (a, b) {
        (PoleSouth, PoleNorth) | (PoleNorth, PoleSouth) => Ok(PolePair::Poles),
        (PoleSouth, Grid { x, y }) | (Grid { x, y }, PoleSouth) => Ok(PolePair::SouthToGrid { x, y }),
        (PoleNorth, Grid { x, y }) | (Grid { x, y }, PoleNorth) => Ok(PolePair::SouthToGrid { x, y: spec.m + 1 - y }),
        _ => invalid("expected at least one pole endpoint"),
    }
}

/// Mode sum reference path (`O(MN)` per pair).
#[derive(Debug, Clone)]
pub struct GlobeDoubleSum {
    spec: LatticeSpec,
    spectrum: ProductSpectrum,
}

impl GlobeDoubleSum {
    pub fn new(spec: &LatticeSpec) -> Result<Self> {
        Ok(GlobeDoubleSum {
            spec: *spec,
            spectrum: second_minor_spectrum(spec)?,
        })
    }

    pub fn spectrum(&self) -> &ProductSpectrum {
        &self.spectrum
    }

    pub fn grid_resistance(&self, a: (usize, usize), b: (usize, usize)) -> f64 {
        pole_correction(&self.spec, a.1, b.1) + self.spectrum.mode_sum_resistance(a, b)
    }

    /// `R(O, (x, y)) = s y² / (N(M+1)) + 𝓛⁻¹_{(x,y),(x,y)}`.
    pub fn south_pole_resistance(&self, x: usize, y: usize) -> f64 {
        pole_correction(&self.spec, 0, y) + self.spectrum.green((x, y), (x, y))
    }

    pub fn resistance(&self, a: NodeRef, b: NodeRef) -> Result<f64> {
        if same_node(&self.spec, a, b)? {
            return Ok(0.0);
        }
        match (a, b) {
            (NodeRef::Grid { x: xa, y: ya }, NodeRef::Grid { x: xb, y: yb }) => {
                Ok(self.grid_resistance((xa, ya), (xb, yb)))
            }
            _ => Ok(match classify_pole_pair(&self.spec, a, b)? {
                PolePair::Poles => pole_correction(&self.spec, 0, self.spec.m + 1),
                PolePair::SouthToGrid { x, y } => self.south_pole_resistance(x, y),
            }),
        }
    }
}

/// Per-latitudinal-mode data for the single-sum path.
#[derive(Debug, Clone)]
pub struct GlobeModeData {
    spec: LatticeSpec,
    /// φₘ = π(m+1) / (2(M+1))
    phi: Vec<f64>,
    /// Λₘ with sinh Λₘ = √h sin φₘ
    var_lambda: Vec<f64>,
    /// sinh 2Λₘ
    sinh_2l: Vec<f64>,
    /// coth NΛₘ
    coth_nl: Vec<f64>,
}

impl GlobeModeData {
    pub fn new(spec: &LatticeSpec) -> Result<Self> {
        require_globe(spec)?;
        let m = spec.m;
        let nf = spec.n as f64;
        let sqrt_h = spec.h().sqrt();
        let phi: Vec<f64> = (0..m)
            .map(|k| PI * (k as f64 + 1.0) / (2.0 * (m as f64 + 1.0)))
            .collect();
        let shl: Vec<f64> = phi.iter().map(|p| sqrt_h * p.sin()).collect();
        let var_lambda = shl.iter().map(|v| v.asinh()).collect::<Vec<_>>();
        // sinh 2Λ = 2 sinh Λ cosh Λ, exact from the defining relation
        let sinh_2l = shl.iter().map(|v| 2.0 * v * (1.0 + v * v).sqrt()).collect();
        let coth_nl = var_lambda.iter().map(|l| coth(nf * l)).collect();
        Ok(GlobeModeData {
            spec: *spec,
            phi,
            var_lambda,
            sinh_2l,
            coth_nl,
        })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn var_lambda(&self) -> &[f64] {
        &self.var_lambda
    }

    pub fn sinh_two_lambda(&self) -> &[f64] {
        &self.sinh_2l
    }

    pub fn coth_n_lambda(&self) -> &[f64] {
        &self.coth_nl
    }

    /// sin(2yφₘ)
    fn sine(&self, m: usize, y: usize) -> f64 {
        (2.0 * y as f64 * self.phi[m]).sin()
    }

    fn prefactor(&self) -> f64 {
        self.spec.r / (self.spec.m as f64 + 1.0)
    }

    /// General single sum over `m` for grid endpoints, with `ℓ = |x₁ − x₂|`
    /// unreduced. No special-case dispatch.
    pub fn general_single_sum(&self, a: (usize, usize), b: (usize, usize)) -> f64 {
        let (x1, y1) = a;
        let (x2, y2) = b;
        let ell = x1.abs_diff(x2) as f64;
        let nf = self.spec.n as f64;
        let sum: f64 = (0..self.spec.m)
            .map(|m| {
                let s1 = self.sine(m, y1);
                let s2 = self.sine(m, y2);
                let cross = cosh_shift_over_sinh(nf, ell, self.var_lambda[m]);
                ((s1 * s1 + s2 * s2) * self.coth_nl[m] - 2.0 * s1 * s2 * cross) / self.sinh_2l[m]
            })
            .sum();
        pole_correction(&self.spec, y1, y2) + self.prefactor() * sum
    }

    /// Both endpoints in column `x`.
    pub fn same_column(&self, y1: usize, y2: usize) -> f64 {
        let sum: f64 = (0..self.spec.m)
            .map(|m| {
                let d = self.sine(m, y1) - self.sine(m, y2);
                self.coth_nl[m] / self.sinh_2l[m] * d * d
            })
            .sum();
        pole_correction(&self.spec, y1, y2) + self.prefactor() * sum
    }

    /// Both endpoints in row `y`, `ℓ = |x₁ − x₂|` apart.
    pub fn same_row(&self, ell: usize, y: usize) -> f64 {
        let ell = ell as f64;
        let rest = self.spec.n as f64 - ell;
        let sum: f64 = (0..self.spec.m)
            .map(|m| {
                let l = self.var_lambda[m];
                let s = self.sine(m, y);
                sinh_product_over_sinh_sum(ell * l, rest * l) / self.sinh_2l[m] * s * s
            })
            .sum();
        4.0 * self.prefactor() * sum
    }

    /// Grid-grid resistance, dispatching to the column/row forms when they apply.
    pub fn grid_resistance(&self, a: (usize, usize), b: (usize, usize)) -> f64 {
        let (x1, y1) = a;
        let (x2, y2) = b;
        if a == b {
            0.0
        } else if x1 == x2 {
            self.same_column(y1, y2)
        } else if y1 == y2 {
            self.same_row(x1.abs_diff(x2), y1)
        } else {
            self.general_single_sum(a, b)
        }
    }

    /// `R(O, (x, y))`; independent of `x` by rotational symmetry.
    pub fn south_pole_resistance(&self, y: usize) -> f64 {
        // the column form with O sitting at y = 0, where sin(0) = 0
        let sum: f64 = (0..self.spec.m)
            .map(|m| {
                let s = self.sine(m, y);
                self.coth_nl[m] / self.sinh_2l[m] * s * s
            })
            .sum();
        pole_correction(&self.spec, 0, y) + self.prefactor() * sum
    }

    /// Entry `𝓛⁻¹_{a,b}` of the inverse second minor as a single sum.
    pub fn green(&self, a: (usize, usize), b: (usize, usize)) -> f64 {
        let ell = a.0.abs_diff(b.0) as f64;
        let nf = self.spec.n as f64;
        let sum: f64 = (0..self.spec.m)
            .map(|m| {
                self.sine(m, a.1) * self.sine(m, b.1) * cosh_shift_over_sinh(nf, ell, self.var_lambda[m])
                    / self.sinh_2l[m]
            })
            .sum();
        self.prefactor() * sum
    }

    pub fn resistance(&self, a: NodeRef, b: NodeRef) -> Result<f64> {
        if same_node(&self.spec, a, b)? {
            return Ok(0.0);
        }
        match (a, b) {
            (NodeRef::Grid { x: xa, y: ya }, NodeRef::Grid { x: xb, y: yb }) => {
                Ok(self.grid_resistance((xa, ya), (xb, yb)))
            }
            _ => Ok(match classify_pole_pair(&self.spec, a, b)? {
                PolePair::Poles => pole_correction(&self.spec, 0, self.spec.m + 1),
                PolePair::SouthToGrid { y, .. } => self.south_pole_resistance(y),
            }),
        }
    }
}

fn wrap(spec: &LatticeSpec, a: NodeRef, b: NodeRef, ohms: f64, method: Method) -> ResistanceResult {
    ResistanceResult {
        ohms,
        method,
        spec: *spec,
        from: a,
        to: b,
    }
}

/// Double-sum reference path. Pole endpoints go through [`resistance_globe_pole`]'s
/// double-sum variant.
pub fn resistance_globe(spec: &LatticeSpec, a: NodeRef, b: NodeRef) -> Result<ResistanceResult> {
    let ohms = GlobeDoubleSum::new(spec)?.resistance(a, b)?;
    Ok(wrap(spec, a, b, ohms, Method::GlobeDoubleSum))
}

/// Single-sum path, `O(M)` per pair.
pub fn resistance_globe_fast(spec: &LatticeSpec, a: NodeRef, b: NodeRef) -> Result<ResistanceResult> {
    let ohms = GlobeModeData::new(spec)?.resistance(a, b)?;
    Ok(wrap(spec, a, b, ohms, Method::GlobeSingleSum))
}

/// Resistances with at least one pole endpoint: `O ↔ O'` is `s(M+1)/N`;
/// `O ↔ (x, y)` is `s y²/(N(M+1)) + 𝓛⁻¹_{(x,y),(x,y)}`; `O'` mirrors `O`.
pub fn resistance_globe_pole(spec: &LatticeSpec, a: NodeRef, b: NodeRef) -> Result<ResistanceResult> {
    let modes = GlobeModeData::new(spec)?;
    if same_node(spec, a, b)? {
        return Ok(wrap(spec, a, b, 0.0, Method::GlobeSingleSum));
    }
    let ohms = match classify_pole_pair(spec, a, b)? {
        PolePair::Poles => spec.s * (spec.m as f64 + 1.0) / spec.n as f64,
        PolePair::SouthToGrid { y, .. } => modes.south_pole_resistance(y),
    };
    Ok(wrap(spec, a, b, ohms, Method::GlobeSingleSum))
}

/// Node potentials for `current` injected at `a` and extracted at `b`, grounded
/// at `O'`. `V_O` is eliminated through the second minor: with `B(y) = Σ_{bottom i} 𝓛⁻¹_{i,(x,y)} = s(M+1−y)/(M+1)`,
///
/// ```text
/// V_O = (I_O + s⁻¹ Σ_j B(y_j) I_j) / (N s⁻¹ − s⁻² S₁),    S₁ = MNs/(M+1)
/// V_k = V_O B(y_k)/s + Σ_j 𝓛⁻¹_{k,j} I_j
/// ```
pub fn potentials_second_minor(spec: &LatticeSpec, a: NodeRef, b: NodeRef, current: f64) -> Result<PotentialSolution> {
    let modes = GlobeModeData::new(spec)?;
    if same_node(spec, a, b)? {
        return invalid("source and sink must differ");
    }
    let (m, n, s) = (spec.m, spec.n, spec.s);
    let mf = m as f64;
    let t = spec.node_count();
    let north = m * n + 1;

    let mut injected = vec![0.0; t];
    injected[node_index(spec, a)?] += current;
    injected[node_index(spec, b)?] -= current;

    let grid_sources: Vec<((usize, usize), f64)> = [(a, current), (b, -current)]
        .into_iter()
        .filter_map(|(node, i)| match node {
            NodeRef::Grid { x, y } => Some(((x, y), i)),
            _ => None,
        })
        .collect();

    let bottom_sum = |y: usize| s * (mf + 1.0 - y as f64) / (mf + 1.0);
    let sum_s1 = mf * n as f64 * s / (mf + 1.0);
    let denom = n as f64 / s - sum_s1 / (s * s);
    let numer = injected[0] + grid_sources.iter().map(|&((_, y), i)| bottom_sum(y) * i).sum::<f64>() / s;
    let v0 = numer / denom;

    let mut potentials = vec![0.0; t];
    potentials[0] = v0;
    for y in 1..=m {
        for x in 1..=n {
            let k = (y - 1) * n + x;
            let driven: f64 = grid_sources.iter().map(|&(src, i)| modes.green((x, y), src) * i).sum();
            potentials[k] = v0 * bottom_sum(y) / s + driven;
        }
    }
    potentials[north] = 0.0;
    Ok(PotentialSolution {
        potentials,
        injected,
        grounded_node: north,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_network;
    use crate::oracle::{resistance_direct, solve_potentials};
    use nalgebra::DMatrix;

    fn globe(m: usize, n: usize, r: f64, s: f64) -> LatticeSpec {
        LatticeSpec::new(LatticeTopology::Globe, m, n, r, s).unwrap()
    }

    fn oracle(spec: &LatticeSpec, a: NodeRef, b: NodeRef) -> f64 {
        let net = build_network(spec).unwrap();
        resistance_direct(&net, node_index(spec, a).unwrap(), node_index(spec, b).unwrap()).unwrap()
    }

    /// The single-sum expression exactly as the textbook form writes it, with
    /// naive cosh/sinh; only safe for small `NΛ`.
    fn literal_single_sum(spec: &LatticeSpec, a: (usize, usize), b: (usize, usize)) -> f64 {
        let (m, n, r, s) = (spec.m, spec.n as f64, spec.r, spec.s);
        let h = r / s;
        let ell = a.0.abs_diff(b.0) as f64;
        let mut acc = 0.0;
        for k in 0..m {
            let phi = PI * (k as f64 + 1.0) / (2.0 * (m as f64 + 1.0));
            let lam = (h.sqrt() * phi.sin()).asinh();
            let s1 = (2.0 * a.1 as f64 * phi).sin();
            let s2 = (2.0 * b.1 as f64 * phi).sin();
            let coth = (n * lam).cosh() / (n * lam).sinh();
            acc += (s1 * s1 + s2 * s2 - 2.0 * s1 * s2 * (2.0 * ell * lam).cosh()) / (2.0 * lam).sinh() * coth;
            acc += 2.0 * s1 * s2 * (2.0 * ell * lam).sinh() / (2.0 * lam).sinh();
        }
        let dy = b.1 as f64 - a.1 as f64;
        r / (m as f64 + 1.0) * acc + s * dy * dy / (n * (m as f64 + 1.0))
    }

    #[test]
    fn second_minor_single_mode() {
        let ps = second_minor_spectrum(&globe(1, 1, 1.0, 1.0)).unwrap();
        assert!((ps.eigenvalue(0, 0) - 2.0).abs() < 1e-15);
        assert!((ps.eigenvector(0, 0, 1, 1).re - 1.0).abs() < 1e-15);
        assert!(ps.eigenvector(0, 0, 1, 1).im.abs() < 1e-15);
    }

    #[test]
    fn second_minor_two_columns() {
        let ps = second_minor_spectrum(&globe(1, 2, 1.0, 1.0)).unwrap();
        let mut vals = [ps.eigenvalue(0, 0), ps.eigenvalue(0, 1)];
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - 2.0).abs() < 1e-14 && (vals[1] - 6.0).abs() < 1e-14);
    }

    #[test]
    fn second_minor_matches_network_minor() {
        for (m, n) in [(2, 2), (3, 4), (5, 3)] {
            let sp = globe(m, n, 2.0, 3.0);
            let ps = second_minor_spectrum(&sp).unwrap();
            let assembled = ps.assemble().unwrap();
            let lap = build_network(&sp).unwrap().laplacian();
            let t = sp.node_count();
            let minor = lap
                .remove_row(t - 1)
                .remove_column(t - 1)
                .remove_row(0)
                .remove_column(0);
            assert!((assembled - minor).amax() < 1e-15);
        }
        assert!(second_minor_spectrum(&LatticeSpec::new(LatticeTopology::Torus, 2, 2, 1.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn mode_data_definition() {
        let sp = globe(7, 5, 2.0, 3.0);
        let md = GlobeModeData::new(&sp).unwrap();
        for (phi, lam) in md.phi().iter().zip(md.var_lambda()) {
            assert!((lam.sinh() - (sp.h().sqrt() * phi.sin())).abs() < 1e-14);
            assert!(*lam > 0.0);
            assert!((md.sinh_two_lambda()[0] - (2.0 * md.var_lambda()[0]).sinh()).abs() < 1e-14);
        }
    }

    #[test]
    fn literal_form_agrees_with_stable_form() {
        for (m, n) in [(1, 3), (3, 4), (4, 5), (9, 7)] {
            let sp = globe(m, n, 2.0, 3.0);
            let md = GlobeModeData::new(&sp).unwrap();
            for a in sp.nodes() {
                for b in sp.nodes() {
                    if let (NodeRef::Grid { x: x1, y: y1 }, NodeRef::Grid { x: x2, y: y2 }) = (a, b) {
                        let lit = literal_single_sum(&sp, (x1, y1), (x2, y2));
                        let got = md.general_single_sum((x1, y1), (x2, y2));
                        assert!((lit - got).abs() <= 1e-12 * lit.abs().max(1e-3), "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn pole_examples() {
        let r = resistance_globe_pole(&globe(1, 3, 1.0, 1.0), NodeRef::PoleSouth, NodeRef::PoleNorth).unwrap();
        assert!((r.ohms - 2.0 / 3.0).abs() < 1e-15);
        let sp = globe(4, 5, 2.0, 3.0);
        let r = resistance_globe_pole(&sp, NodeRef::PoleNorth, NodeRef::PoleSouth).unwrap();
        assert!((r.ohms - 3.0).abs() < 1e-15);
        assert!((oracle(&sp, NodeRef::PoleSouth, NodeRef::PoleNorth) - 3.0).abs() < 1e-10);
        let sp = globe(2, 3, 1.0, 1.0);
        let got = resistance_globe_pole(&sp, NodeRef::PoleSouth, NodeRef::grid(1, 1))
            .unwrap()
            .ohms;
        assert!((got - oracle(&sp, NodeRef::PoleSouth, NodeRef::grid(1, 1))).abs() < 1e-10);
        assert_eq!(
            resistance_globe_pole(&sp, NodeRef::PoleNorth, NodeRef::PoleNorth)
                .unwrap()
                .ohms,
            0.0
        );
        assert!(resistance_globe_pole(&sp, NodeRef::grid(1, 1), NodeRef::grid(2, 1)).is_err());
    }

    #[test]
    fn grid_examples() {
        let sp = globe(1, 3, 1.0, 1.0);
        let (a, b) = (NodeRef::grid(1, 1), NodeRef::grid(2, 1));
        let want = oracle(&sp, a, b);
        assert!((resistance_globe(&sp, a, b).unwrap().ohms - want).abs() < 1e-12);
        assert!((resistance_globe_fast(&sp, a, b).unwrap().ohms - want).abs() < 1e-12);
        assert_eq!(resistance_globe(&sp, a, a).unwrap().ohms, 0.0);
        assert_eq!(resistance_globe_fast(&sp, b, b).unwrap().ohms, 0.0);

        let sp = globe(4, 5, 2.0, 3.0);
        let (a, b) = (NodeRef::grid(1, 1), NodeRef::grid(3, 4));
        let want = oracle(&sp, a, b);
        assert!((resistance_globe(&sp, a, b).unwrap().ohms - want).abs() < 1e-10);

        let sp = globe(9, 7, 1.0, 1.0);
        let (a, b) = (NodeRef::grid(1, 1), NodeRef::grid(4, 5));
        let want = oracle(&sp, a, b);
        assert!((resistance_globe_fast(&sp, a, b).unwrap().ohms - want).abs() < 1e-10);
    }

    #[test]
    fn special_forms_match_general() {
        let sp = globe(9, 7, 1.0, 1.0);
        let md = GlobeModeData::new(&sp).unwrap();
        for y1 in 1..=9 {
            for y2 in 1..=9 {
                let g = md.general_single_sum((3, y1), (3, y2));
                assert!((g - md.same_column(y1, y2)).abs() < 1e-12);
            }
        }
        for ell in 0..7 {
            for y in 1..=9 {
                let g = md.general_single_sum((1, y), (1 + ell, y));
                assert!((g - md.same_row(ell, y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unreduced_offset_is_symmetric() {
        let sp = globe(5, 8, 1.5, 0.7);
        let md = GlobeModeData::new(&sp).unwrap();
        for ell in 1..8 {
            let a = md.general_single_sum((1, 2), (1 + ell, 4));
            let b = md.general_single_sum((1, 2), (1 + (8 - ell), 4));
            assert!((a - b).abs() < 1e-12 * a);
        }
    }

    #[test]
    fn single_sum_green_matches_mode_sum_and_dense_inverse() {
        let sp = globe(4, 5, 2.0, 3.0);
        let md = GlobeModeData::new(&sp).unwrap();
        let ps = second_minor_spectrum(&sp).unwrap();
        let inv = ps.assemble().unwrap().try_inverse().unwrap();
        let n = sp.n;
        for i in 0..sp.m * n {
            for j in 0..sp.m * n {
                let a = (i % n + 1, i / n + 1);
                let b = (j % n + 1, j / n + 1);
                assert!((md.green(a, b) - inv[(i, j)]).abs() < 1e-12);
                assert!((ps.green(a, b) - inv[(i, j)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn second_minor_sums() {
        for m in 1..=8 {
            for n in 1..=8 {
                for s in [1.0, 3.0] {
                    let sp = globe(m, n, 2.0, s);
                    let inv: DMatrix<f64> = second_minor_spectrum(&sp)
                        .unwrap()
                        .assemble()
                        .unwrap()
                        .try_inverse()
                        .unwrap();
                    let bottom: f64 = (0..n)
                        .flat_map(|i| (0..n).map(move |j| (i, j)))
                        .map(|(i, j)| inv[(i, j)])
                        .sum();
                    let want = (m * n) as f64 * s / (m as f64 + 1.0);
                    assert!((bottom - want).abs() < 1e-9, "{m}x{n}");
                    for k in 0..m * n {
                        let col: f64 = (0..n).map(|i| inv[(i, k)]).sum();
                        let y = k / n + 1;
                        assert!((col - s * (m + 1 - y) as f64 / (m as f64 + 1.0)).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn potentials_match_oracle() {
        for (m, n) in [(1, 1), (2, 3), (3, 3), (5, 4), (4, 5)] {
            let sp = globe(m, n, 2.0, 3.0);
            let net = build_network(&sp).unwrap();
            let north = sp.node_count() - 1;
            let pairs = [
                (NodeRef::grid(1, 1), NodeRef::grid(n, m)),
                (NodeRef::PoleSouth, NodeRef::grid(1, m)),
                (NodeRef::grid(1, 1), NodeRef::PoleNorth),
                (NodeRef::PoleSouth, NodeRef::PoleNorth),
            ];
            for (a, b) in pairs {
                if a == b {
                    continue;
                }
                let sol = potentials_second_minor(&sp, a, b, 2.5).unwrap();
                assert_eq!(sol.potentials[north], 0.0);
                assert!(sol.injected.iter().sum::<f64>().abs() < 1e-15);
                let want = solve_potentials(&net, &sol.injected, north).unwrap();
                for (g, w) in sol.potentials.iter().zip(&want.potentials) {
                    assert!((g - w).abs() < 1e-9, "{m}x{n} {a}->{b}");
                }
                let ia = node_index(&sp, a).unwrap();
                let ib = node_index(&sp, b).unwrap();
                let r = (sol.potentials[ia] - sol.potentials[ib]) / 2.5;
                let engine = GlobeModeData::new(&sp).unwrap().resistance(a, b).unwrap();
                assert!((r - engine).abs() < 1e-10);
            }
        }
        let sp = globe(2, 2, 1.0, 1.0);
        assert!(potentials_second_minor(&sp, NodeRef::PoleSouth, NodeRef::PoleSouth, 1.0).is_err());
    }
}
