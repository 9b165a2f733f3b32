use crate::error::{invalid, Result};
use crate::lattice::{LatticeSpec, LatticeTopology, NodeRef};

use super::{same_node, Method, ProductSpectrum, ResistanceResult};

/// First-minor mode sum for cobweb (periodic ⊗ DN) and fan (free ⊗ DN)
/// networks. The hub is the deleted node, so it acts as ground: the minor is
/// nonsingular and its inverse gives every resistance directly.
#[derive(Debug, Clone)]
pub struct FirstMinorEngine {
    spec: LatticeSpec,
    spectrum: ProductSpectrum,
}

impl FirstMinorEngine {
    pub fn new(spec: &LatticeSpec) -> Result<Self> {
        if !matches!(spec.topology, LatticeTopology::Cobweb | LatticeTopology::Fan) {
            return invalid(format!(
                "first-minor engine needs a cobweb or fan, got {}",
                spec.topology
            ));
        }
        Ok(FirstMinorEngine {
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
            (NodeRef::PoleSouth, NodeRef::Grid { x, y }) | (NodeRef::Grid { x, y }, NodeRef::PoleSouth) => {
                Ok(self.spectrum.green((x, y), (x, y)))
            }
            _ => invalid("cobweb and fan networks have a single hub O"),
        }
    }
}

pub fn resistance_first_minor(spec: &LatticeSpec, a: NodeRef, b: NodeRef) -> Result<ResistanceResult> {
    let ohms = FirstMinorEngine::new(spec)?.resistance(a, b)?;
    Ok(ResistanceResult {
        ohms,
        method: Method::FirstMinor,
        spec: *spec,
        from: a,
        to: b,
    })
}
