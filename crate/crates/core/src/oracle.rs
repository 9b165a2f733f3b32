//! Ground truth by brute force: the Kirchhoff system `L V = I` on the explicit
//! network, solved with one node grounded, plus the full-spectrum resistance
//! formula and the Kirchhoff index.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{invalid, Error, Result};
use crate::lattice::ResistorNetwork;

/// Relative threshold below which a Laplacian eigenvalue counts as zero.
pub const ZERO_EIGENVALUE_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSolution {
    pub potentials: Vec<f64>,
    pub injected: Vec<f64>,
    pub grounded_node: usize,
}

impl PotentialSolution {
    /// Max |(L V − I)_i| over non-grounded nodes, relative to the largest injection.
    pub fn residual(&self, network: &ResistorNetwork) -> f64 {
        let lap = network.laplacian();
        let v = DVector::from_column_slice(&self.potentials);
        let lv = &lap * v;
        let scale = self.injected.iter().fold(1e-300_f64, |a, &b| a.max(b.abs()));
        (0..network.node_count())
            .filter(|&i| i != self.grounded_node)
            .map(|i| (lv[i] - self.injected[i]).abs() / scale)
            .fold(0.0, f64::max)
    }
}

fn check_connected(network: &ResistorNetwork) -> Result<()> {
    if network.is_connected() {
        Ok(())
    } else {
        Err(Error::DisconnectedNetwork)
    }
}

/// Laplacian with the grounded row and column deleted.
fn reduced_laplacian(network: &ResistorNetwork, grounded: usize) -> DMatrix<f64> {
    let lap = network.laplacian();
    lap.remove_row(grounded).remove_column(grounded)
}

pub fn solve_potentials(network: &ResistorNetwork, injections: &[f64], grounded: usize) -> Result<PotentialSolution> {
    let t = network.node_count();
    if injections.len() != t {
        return invalid(format!("expected {t} injections, got {}", injections.len()));
    }
    if grounded >= t {
        return invalid(format!("grounded node {grounded} out of range 0..{t}"));
    }
    let total: f64 = injections.iter().sum();
    let scale = injections.iter().fold(1.0_f64, |a, &b| a.max(b.abs()));
    if total.abs() > 1e-12 * scale {
        return invalid(format!("injected currents must sum to zero, got {total:e}"));
    }
    check_connected(network)?;

    let mut potentials = vec![0.0; t];
    if t > 1 {
        let reduced = reduced_laplacian(network, grounded);
        let chol = reduced.cholesky().ok_or(Error::DisconnectedNetwork)?;
        let rhs = DVector::from_iterator(
            t - 1,
            injections
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != grounded)
                .map(|(_, &c)| c),
        );
        let sol = chol.solve(&rhs);
        for (k, i) in (0..t).filter(|&i| i != grounded).enumerate() {
            potentials[i] = sol[k];
        }
    }
    Ok(PotentialSolution {
        potentials,
        injected: injections.to_vec(),
        grounded_node: grounded,
    })
}

/// Two-point resistance from a unit current injected at `a`, extracted at `b`.
pub fn resistance_direct(network: &ResistorNetwork, a: usize, b: usize) -> Result<f64> {
    let t = network.node_count();
    if a >= t || b >= t {
        return invalid(format!("node index out of range 0..{t}"));
    }
    if a == b {
        return Ok(0.0);
    }
    let mut inj = vec![0.0; t];
    inj[a] = 1.0;
    inj[b] = -1.0;
    let sol = solve_potentials(network, &inj, b)?;
    Ok(sol.potentials[a] - sol.potentials[b])
}

/// All-pairs resistance matrix from a single factorization:
/// `R_ab = G_aa + G_bb − 2 G_ab` where `G` inverts the Laplacian grounded at node 0.
pub fn resistance_matrix(network: &ResistorNetwork) -> Result<DMatrix<f64>> {
    check_connected(network)?;
    let t = network.node_count();
    let mut g = DMatrix::zeros(t, t);
    if t > 1 {
        let reduced = reduced_laplacian(network, 0);
        let inv = reduced.cholesky().ok_or(Error::DisconnectedNetwork)?.inverse();
        g.view_mut((1, 1), (t - 1, t - 1)).copy_from(&inv);
    }
    let mut r = DMatrix::zeros(t, t);
    for a in 0..t {
        for b in (a + 1)..t {
            let v = g[(a, a)] + g[(b, b)] - 2.0 * g[(a, b)];
            r[(a, b)] = v;
            r[(b, a)] = v;
        }
    }
    Ok(r)
}

/// Eigen-decomposition of the network Laplacian with the single zero mode identified.
#[derive(Debug, Clone)]
pub struct LaplacianSpectrum {
    eigen: SymmetricEigen<f64, nalgebra::Dyn>,
    zero_mode: usize,
}

impl LaplacianSpectrum {
    pub fn new(network: &ResistorNetwork) -> Result<Self> {
        let eigen = network.laplacian().symmetric_eigen();
        let max = eigen.eigenvalues.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
        let tol = ZERO_EIGENVALUE_REL_TOL * max.max(f64::MIN_POSITIVE);
        let zeros: Vec<usize> = (0..eigen.eigenvalues.len())
            .filter(|&i| eigen.eigenvalues[i] < tol)
            .collect();
        match zeros.as_slice() {
            [z] => Ok(LaplacianSpectrum { eigen, zero_mode: *z }),
            _ => Err(Error::DisconnectedNetwork),
        }
    }

    fn nonzero_modes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.eigen.eigenvalues.len()).filter(move |&i| i != self.zero_mode)
    }

    pub fn resistance(&self, a: usize, b: usize) -> f64 {
        if a == b {
            return 0.0;
        }
        let vecs = &self.eigen.eigenvectors;
        self.nonzero_modes()
            .map(|i| {
                let d = vecs[(a, i)] - vecs[(b, i)];
                d * d / self.eigen.eigenvalues[i]
            })
            .sum()
    }

    /// `T · Σ 1/λ_i` over nonzero eigenvalues.
    pub fn kirchhoff_index(&self) -> f64 {
        let t = self.eigen.eigenvalues.len() as f64;
        t * self
            .nonzero_modes()
            .map(|i| 1.0 / self.eigen.eigenvalues[i])
            .sum::<f64>()
    }
}

pub fn resistance_spectral_full(network: &ResistorNetwork, a: usize, b: usize) -> Result<f64> {
    let t = network.node_count();
    if a >= t || b >= t {
        return invalid(format!("node index out of range 0..{t}"));
    }
    check_connected(network)?;
    Ok(LaplacianSpectrum::new(network)?.resistance(a, b))
}

pub fn kirchhoff_index(network: &ResistorNetwork) -> Result<f64> {
    check_connected(network)?;
    if network.node_count() == 1 {
        return Ok(0.0);
    }
    Ok(LaplacianSpectrum::new(network)?.kirchhoff_index())
}

/// Kirchhoff index as the explicit sum of `R_ij` over unordered pairs.
pub fn kirchhoff_index_pairwise(network: &ResistorNetwork) -> Result<f64> {
    let r = resistance_matrix(network)?;
    let t = network.node_count();
    Ok((0..t)
        .flat_map(|a| ((a + 1)..t).map(move |b| (a, b)))
        .map(|(a, b)| r[(a, b)])
        .sum())
}
