use crate::error::{invalid, Result};
use crate::lattice::{LatticeSpec, NodeRef};

use super::{same_node, Method, ProductSpectrum, ResistanceResult};

/// Full-Laplacian mode sum on free, cylindrical and toroidal lattices. The
/// single constant mode is skipped by index.
#[derive(Debug, Clone)]
pub struct WuEngine {
    spec: LatticeSpec,
    spectrum: ProductSpectrum,
}

impl WuEngine {
    pub fn new(spec: &LatticeSpec) -> Result<Self> {
        if !spec.topology.is_regular() {
            return invalid(format!("{} is not a regular lattice", spec.topology));
        }
        Ok(WuEngine {
            spec: *spec,
            spectrum: ProductSpectrum::for_lattice(spec)?,
        })
    }

    pub fn spectrum(&self) -> &ProductSpectrum {
        &self.spectrum
    }

    pub fn resistance(&self, a: NodeRef, b: NodeRef) -> Result<f64> {
        if same_node(&self.spec, a, b)? {
            return Ok(0.0);
        }
        match (a, b) {
            (NodeRef::Grid { x: xa, y: ya }, NodeRef::Grid { x: xb, y: yb }) => {
                Ok(self.spectrum.mode_sum_resistance((xa, ya), (xb, yb)))
            }
            _ => invalid("regular lattices have no pole nodes"),
        }
    }
}

pub fn resistance_regular(spec: &LatticeSpec, a: NodeRef, b: NodeRef) -> Result<ResistanceResult> {
    let ohms = WuEngine::new(spec)?.resistance(a, b)?;
    Ok(ResistanceResult {
        ohms,
        method: Method::WuDoubleSum,
        spec: *spec,
        from: a,
        to: b,
    })
}
