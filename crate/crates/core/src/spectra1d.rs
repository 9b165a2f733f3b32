//! Eigen-systems of the 1D chain Laplacian `L f(x) = 2 f(x) - f(x+1) - f(x-1)`
//! on sites `x = 1..=N` under four boundary conditions.
//!
//! | kind                | boundary                     | angle                     | eigenvalue       |
//! |---------------------|------------------------------|---------------------------|------------------|
//! | `Periodic`          | f(1) = f(N+1)                | θₙ = πn/N                 | 2 − 2cos 2θₙ     |
//! | `Free`              | f(0) = f(1), f(N) = f(N+1)   | θₙ = πn/N                 | 2 − 2cos θₙ      |
//! | `DirichletDirichlet`| f(0) = f(N+1) = 0            | φₙ = π(n+1)/(2(N+1))      | 2 − 2cos 2φₙ     |
//! | `DirichletNeumann`  | f(0) = 0, f(N) = f(N+1)      | φₙ = π(n+½)/(2N+1)        | 2 − 2cos 2φₙ     |
//!
//! Modes are indexed `n = 0..N` in the order above, never sorted.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    Periodic,
    Free,
    DirichletDirichlet,
    DirichletNeumann,
}

impl BoundaryKind {
    pub const ALL: [BoundaryKind; 4] = [
        BoundaryKind::Periodic,
        BoundaryKind::Free,
        BoundaryKind::DirichletDirichlet,
        BoundaryKind::DirichletNeumann,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundaryKind::Periodic => "periodic",
            BoundaryKind::Free => "free",
            BoundaryKind::DirichletDirichlet => "dd",
            BoundaryKind::DirichletNeumann => "dn",
        }
    }

    /// Whether mode 0 is the constant zero mode.
    pub fn has_zero_mode(self) -> bool {
        matches!(self, BoundaryKind::Periodic | BoundaryKind::Free)
    }
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundaryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "periodic" | "per" => Ok(BoundaryKind::Periodic),
            "free" | "neumann" | "nn" => Ok(BoundaryKind::Free),
            "dd" | "dirichlet" | "dirichlet-dirichlet" => Ok(BoundaryKind::DirichletDirichlet),
            "dn" | "dirichlet-neumann" => Ok(BoundaryKind::DirichletNeumann),
            other => invalid(format!("unknown boundary kind '{other}'")),
        }
    }
}

/// Full eigen-system of one 1D chain Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum1D {
    kind: BoundaryKind,
    size: usize,
    angles: Vec<f64>,
    eigenvalues: Vec<f64>,
}

pub fn spectrum(kind: BoundaryKind, size: usize) -> Result<Spectrum1D> {
    Spectrum1D::new(kind, size)
}

impl Spectrum1D {
    pub fn new(kind: BoundaryKind, size: usize) -> Result<Self> {
        if size == 0 {
            return invalid("chain size must be at least 1");
        }
        let nf = size as f64;
        let angles: Vec<f64> = (0..size)
            .map(|n| {
                let n = n as f64;
                match kind {
                    BoundaryKind::Periodic | BoundaryKind::Free => PI * n / nf,
                    BoundaryKind::DirichletDirichlet => PI * (n + 1.0) / (2.0 * (nf + 1.0)),
                    BoundaryKind::DirichletNeumann => PI * (n + 0.5) / (2.0 * nf + 1.0),
                }
            })
            .collect();
        let eigenvalues = angles
            .iter()
            .map(|&a| match kind {
                BoundaryKind::Free => 2.0 - 2.0 * a.cos(),
                _ => 2.0 - 2.0 * (2.0 * a).cos(),
            })
            .collect();
        Ok(Spectrum1D {
            kind,
            size,
            angles,
            eigenvalues,
        })
    }

    pub fn kind(&self) -> BoundaryKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Component `x` (1-based site) of the normalized eigenvector of mode `n`.
    pub fn eigenvector(&self, n: usize, x: usize) -> Complex64 {
        debug_assert!(n < self.size && (1..=self.size).contains(&x));
        let nf = self.size as f64;
        let xf = x as f64;
        let a = self.angles[n];
        match self.kind {
            BoundaryKind::Periodic => Complex64::from_polar((1.0 / nf).sqrt(), 2.0 * a * xf),
            BoundaryKind::Free => {
                if n == 0 {
                    Complex64::new(1.0 / nf.sqrt(), 0.0)
                } else {
                    Complex64::new((2.0 / nf).sqrt() * ((xf - 0.5) * a).cos(), 0.0)
                }
            }
            BoundaryKind::DirichletDirichlet => Complex64::new((2.0 / (nf + 1.0)).sqrt() * (2.0 * xf * a).sin(), 0.0),
            BoundaryKind::DirichletNeumann => Complex64::new(2.0 / (2.0 * nf + 1.0).sqrt() * (2.0 * xf * a).sin(), 0.0),
        }
    }

    /// All eigenvectors, `table[n][x - 1]`.
    pub fn eigenvector_table(&self) -> Vec<Vec<Complex64>> {
        (0..self.size)
            .map(|n| (1..=self.size).map(|x| self.eigenvector(n, x)).collect())
            .collect()
    }
}

/// Explicit matrix of the 1D Laplacian, for residual checks and minor assembly.
pub fn laplacian_matrix(kind: BoundaryKind, size: usize) -> Result<DMatrix<f64>> {
    if size == 0 {
        return invalid("chain size must be at least 1");
    }
    let mut mat = DMatrix::zeros(size, size);
    match kind {
        BoundaryKind::Periodic => {
            // Wrap-around neighbours; N = 1 cancels to [0] and N = 2 doubles the coupling.
            for i in 0..size {
                mat[(i, i)] += 2.0;
                mat[(i, (i + 1) % size)] -= 1.0;
                mat[(i, (i + size - 1) % size)] -= 1.0;
            }
        }
        BoundaryKind::Free => {
            for i in 0..size.saturating_sub(1) {
                mat[(i, i)] += 1.0;
                mat[(i + 1, i + 1)] += 1.0;
                mat[(i, i + 1)] -= 1.0;
                mat[(i + 1, i)] -= 1.0;
            }
        }
        BoundaryKind::DirichletDirichlet | BoundaryKind::DirichletNeumann => {
            for i in 0..size {
                mat[(i, i)] = 2.0;
                if i + 1 < size {
                    mat[(i, i + 1)] = -1.0;
                    mat[(i + 1, i)] = -1.0;
                }
            }
            if kind == BoundaryKind::DirichletNeumann {
                mat[(size - 1, size - 1)] = 1.0;
            }
        }
    }
    Ok(mat)
}

/// `slow_weight · (A ⊗ I) + fast_weight · (I ⊗ B)` where the fast factor indexes
/// the inner (contiguous) coordinate: flat index = slow * dim(B) + fast.
pub fn kronecker_sum(slow: &DMatrix<f64>, slow_weight: f64, fast: &DMatrix<f64>, fast_weight: f64) -> DMatrix<f64> {
    let ns = slow.nrows();
    let nf = fast.nrows();
    let mut out = DMatrix::zeros(ns * nf, ns * nf);
    for a in 0..ns {
        for b in 0..ns {
            let w = slow_weight * slow[(a, b)];
            if w != 0.0 {
                for k in 0..nf {
                    out[(a * nf + k, b * nf + k)] += w;
                }
            }
        }
    }
    for a in 0..ns {
        for i in 0..nf {
            for j in 0..nf {
                out[(a * nf + i, a * nf + j)] += fast_weight * fast[(i, j)];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn max_residual(spec: &Spectrum1D) -> f64 {
        let mat = laplacian_matrix(spec.kind(), spec.size()).unwrap();
        let n = spec.size();
        let mut worst: f64 = 0.0;
        for mode in 0..n {
            for row in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for col in 0..n {
                    acc += mat[(row, col)] * spec.eigenvector(mode, col + 1);
                }
                let res = acc - spec.eigenvalues()[mode] * spec.eigenvector(mode, row + 1);
                worst = worst.max(res.norm());
            }
        }
        worst
    }

    fn max_orthonormality_error(spec: &Spectrum1D) -> f64 {
        let table = spec.eigenvector_table();
        let mut worst: f64 = 0.0;
        for (n, fa) in table.iter().enumerate() {
            for (k, fb) in table.iter().enumerate() {
                let dot: Complex64 = fa.iter().zip(fb).map(|(a, b)| a * b.conj()).sum();
                let target = if n == k { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    #[test]
    fn periodic_four() {
        let s = spectrum(BoundaryKind::Periodic, 4).unwrap();
        for (got, want) in s.eigenvalues().iter().zip([0.0, 2.0, 4.0, 2.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn single_site_chains() {
        let dd = spectrum(BoundaryKind::DirichletDirichlet, 1).unwrap();
        assert_abs_diff_eq!(dd.eigenvalues()[0], 2.0, epsilon = 1e-15);
        let dn = spectrum(BoundaryKind::DirichletNeumann, 1).unwrap();
        assert_abs_diff_eq!(dn.eigenvalues()[0], 1.0, epsilon = 1e-15);
        assert_eq!(
            laplacian_matrix(BoundaryKind::DirichletNeumann, 1).unwrap()[(0, 0)],
            1.0
        );
        assert_eq!(laplacian_matrix(BoundaryKind::Periodic, 1).unwrap()[(0, 0)], 0.0);
        assert_eq!(laplacian_matrix(BoundaryKind::Free, 1).unwrap()[(0, 0)], 0.0);
    }

    #[test]
    fn free_two() {
        let s = spectrum(BoundaryKind::Free, 2).unwrap();
        assert_abs_diff_eq!(s.eigenvalues()[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.eigenvalues()[1], 2.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_size_rejected() {
        for kind in BoundaryKind::ALL {
            assert!(matches!(spectrum(kind, 0), Err(Error::InvalidArgument(_))));
            assert!(laplacian_matrix(kind, 0).is_err());
        }
    }

    #[test]
    fn displayed_matrices() {
        let dd = laplacian_matrix(BoundaryKind::DirichletDirichlet, 2).unwrap();
        assert_eq!(dd, DMatrix::from_row_slice(2, 2, &[2.0, -1.0, -1.0, 2.0]));
        let per = laplacian_matrix(BoundaryKind::Periodic, 3).unwrap();
        assert_eq!(
            per,
            DMatrix::from_row_slice(3, 3, &[2.0, -1.0, -1.0, -1.0, 2.0, -1.0, -1.0, -1.0, 2.0])
        );
        let free = laplacian_matrix(BoundaryKind::Free, 3).unwrap();
        assert_eq!(
            free,
            DMatrix::from_row_slice(3, 3, &[1.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 1.0])
        );
        let per2 = laplacian_matrix(BoundaryKind::Periodic, 2).unwrap();
        assert_eq!(per2, DMatrix::from_row_slice(2, 2, &[2.0, -2.0, -2.0, 2.0]));
    }

    #[test]
    fn row_sums() {
        for n in 1..=12 {
            let sums = |k| -> Vec<f64> {
                let m = laplacian_matrix(k, n).unwrap();
                (0..n).map(|i| m.row(i).sum()).collect()
            };
            assert!(sums(BoundaryKind::Periodic).iter().all(|&s| s == 0.0));
            assert!(sums(BoundaryKind::Free).iter().all(|&s| s == 0.0));
            let dd = sums(BoundaryKind::DirichletDirichlet);
            for (i, s) in dd.iter().enumerate() {
                let want = if n == 1 {
                    2.0
                } else if i == 0 || i == n - 1 {
                    1.0
                } else {
                    0.0
                };
                assert_eq!(*s, want);
            }
            let dn = sums(BoundaryKind::DirichletNeumann);
            for (i, s) in dn.iter().enumerate() {
                assert_eq!(*s, if i == 0 { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn zero_mode_counts() {
        for n in 1..=16 {
            for kind in BoundaryKind::ALL {
                let s = spectrum(kind, n).unwrap();
                let zeros: Vec<usize> = s
                    .eigenvalues()
                    .iter()
                    .enumerate()
                    .filter(|(_, &l)| l.abs() < 1e-12)
                    .map(|(i, _)| i)
                    .collect();
                if kind.has_zero_mode() {
                    assert_eq!(zeros, vec![0], "{kind} N={n}");
                } else {
                    assert!(zeros.is_empty(), "{kind} N={n}");
                }
            }
        }
    }

    #[test]
    fn orthonormal_and_residual_up_to_64() {
        for kind in BoundaryKind::ALL {
            for n in 1..=64 {
                let s = spectrum(kind, n).unwrap();
                let ortho = max_orthonormality_error(&s);
                let res = max_residual(&s);
                assert!(ortho < 1e-12, "{kind} N={n} orthonormality {ortho:e}");
                assert!(res < 1e-12, "{kind} N={n} residual {res:e}");
            }
        }
    }

    #[test]
    fn kronecker_composition() {
        for (ka, na) in [(BoundaryKind::Periodic, 4), (BoundaryKind::Free, 3)] {
            for (kb, nb) in [
                (BoundaryKind::DirichletNeumann, 3),
                (BoundaryKind::DirichletDirichlet, 5),
            ] {
                let sa = spectrum(ka, na).unwrap();
                let sb = spectrum(kb, nb).unwrap();
                let mat = kronecker_sum(
                    &laplacian_matrix(ka, na).unwrap(),
                    1.0,
                    &laplacian_matrix(kb, nb).unwrap(),
                    1.0,
                );
                for i in 0..na {
                    for j in 0..nb {
                        let lam = sa.eigenvalues()[i] + sb.eigenvalues()[j];
                        let v: Vec<Complex64> = (0..na * nb)
                            .map(|f| sa.eigenvector(i, f / nb + 1) * sb.eigenvector(j, f % nb + 1))
                            .collect();
                        for row in 0..na * nb {
                            let mv: Complex64 = (0..na * nb).map(|c| mat[(row, c)] * v[c]).sum();
                            assert!((mv - lam * v[row]).norm() < 1e-10);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parse_kinds() {
        assert_eq!("periodic".parse::<BoundaryKind>().unwrap(), BoundaryKind::Periodic);
        assert_eq!("DD".parse::<BoundaryKind>().unwrap(), BoundaryKind::DirichletDirichlet);
        assert!("mixed".parse::<BoundaryKind>().is_err());
    }
}
