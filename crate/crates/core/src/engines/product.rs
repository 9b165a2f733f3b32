use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Result;
use crate::lattice::LatticeSpec;
use crate::spectra1d::{kronecker_sum, laplacian_matrix, BoundaryKind, Spectrum1D};

/// Spectrum of `r⁻¹ Lₓ ⊗ I + s⁻¹ I ⊗ L_y`, the operator each closed-form engine
/// diagonalizes. Modes are `(m, n)` with `m` the `y`-chain mode and `n` the
/// `x`-chain mode; `Λ_{m,n} = r⁻¹ λₙ + s⁻¹ λₘ` and
/// `ψ_{(m,n);(x,y)} = fₙ(x) fₘ(y)`.
#[derive(Debug, Clone)]
pub struct ProductSpectrum {
    m: usize,
    n: usize,
    r: f64,
    s: f64,
    x_chain: Spectrum1D,
    y_chain: Spectrum1D,
    x_table: Vec<Vec<Complex64>>,
    y_table: Vec<Vec<Complex64>>,
}

impl ProductSpectrum {
    pub fn new(spec: &LatticeSpec, x_kind: BoundaryKind, y_kind: BoundaryKind) -> Result<Self> {
        spec.validate()?;
        let x_chain = Spectrum1D::new(x_kind, spec.n)?;
        let y_chain = Spectrum1D::new(y_kind, spec.m)?;
        Ok(ProductSpectrum {
            m: spec.m,
            n: spec.n,
            r: spec.r,
            s: spec.s,
            x_table: x_chain.eigenvector_table(),
            y_table: y_chain.eigenvector_table(),
            x_chain,
            y_chain,
        })
    }

    /// The operator matching the lattice's topology.
    pub fn for_lattice(spec: &LatticeSpec) -> Result<Self> {
        Self::new(spec, spec.topology.x_boundary(), spec.topology.y_boundary())
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn x_chain(&self) -> &Spectrum1D {
        &self.x_chain
    }

    pub fn y_chain(&self) -> &Spectrum1D {
        &self.y_chain
    }

    pub fn eigenvalue(&self, m: usize, n: usize) -> f64 {
        self.x_chain.eigenvalues()[n] / self.r + self.y_chain.eigenvalues()[m] / self.s
    }

    pub fn eigenvector(&self, m: usize, n: usize, x: usize, y: usize) -> Complex64 {
        self.x_table[n][x - 1] * self.y_table[m][y - 1]
    }

    /// The constant mode `(0, 0)`, present only when both chains carry one.
    pub fn is_zero_mode(&self, m: usize, n: usize) -> bool {
        m == 0 && n == 0 && self.x_chain.kind().has_zero_mode() && self.y_chain.kind().has_zero_mode()
    }

    pub fn modes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.m)
            .flat_map(move |m| (0..self.n).map(move |n| (m, n)))
            .filter(move |&(m, n)| !self.is_zero_mode(m, n))
    }

    /// `Σ |ψ_a − ψ_b|² / Λ` over all non-zero modes.
    pub fn mode_sum_resistance(&self, a: (usize, usize), b: (usize, usize)) -> f64 {
        let (xa, ya) = a;
        let (xb, yb) = b;
        let mut acc = 0.0;
        for m in 0..self.m {
            let fa_y = self.y_table[m][ya - 1];
            let fb_y = self.y_table[m][yb - 1];
            let lam_y = self.y_chain.eigenvalues()[m] / self.s;
            for n in 0..self.n {
                if self.is_zero_mode(m, n) {
                    continue;
                }
                let d = self.x_table[n][xa - 1] * fa_y - self.x_table[n][xb - 1] * fb_y;
                acc += d.norm_sqr() / (self.x_chain.eigenvalues()[n] / self.r + lam_y);
            }
        }
        acc
    }

    /// `Σ ψ_a ψ_b* / Λ` over non-zero modes: the inverse of the operator when it is
    /// nonsingular, its pseudo-inverse otherwise.
    pub fn green(&self, a: (usize, usize), b: (usize, usize)) -> f64 {
        let mut acc = 0.0;
        for (m, n) in self.modes() {
            let v = self.eigenvector(m, n, a.0, a.1) * self.eigenvector(m, n, b.0, b.1).conj();
            acc += v.re / self.eigenvalue(m, n);
        }
        acc
    }

    /// The operator assembled from the explicit 1D matrices, grid-ordered with
    /// `x` fastest.
    pub fn assemble(&self) -> Result<DMatrix<f64>> {
        let ly = laplacian_matrix(self.y_chain.kind(), self.m)?;
        let lx = laplacian_matrix(self.x_chain.kind(), self.n)?;
        Ok(kronecker_sum(&ly, 1.0 / self.s, &lx, 1.0 / self.r))
    }
}
