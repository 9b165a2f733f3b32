//! Closed-form resistance engines.
//!
//! * [`regular`]: full-Laplacian mode sum for free, cylindrical and toroidal lattices.
//! * [`first_minor`]: first-minor mode sum for cobweb and fan networks (hub deleted).
//! * [`globe`]: second-minor method for the globe (both poles deleted), with the
//!   double mode sum, the single sum over latitudinal modes, and pole formulas.
//!
//! [`Solver`] picks the right engine for a [`LatticeSpec`] and keeps its
//! precomputed mode data for repeated queries.

use std::fmt;
use std::sync::OnceLock;

use crate::error::Result;
use crate::lattice::{build_network, node_index, LatticeSpec, LatticeTopology, NodeRef, ResistorNetwork};
use crate::oracle;

pub mod first_minor;
pub mod globe;
pub mod hyperbolic;
pub mod product;
pub mod regular;

pub use first_minor::{resistance_first_minor, FirstMinorEngine};
pub use globe::{
    potentials_second_minor, resistance_globe, resistance_globe_fast, resistance_globe_pole, second_minor_spectrum,
    GlobeDoubleSum, GlobeModeData,
};
pub use product::ProductSpectrum;
pub use regular::{resistance_regular, WuEngine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    WuDoubleSum,
    FirstMinor,
    GlobeDoubleSum,
    GlobeSingleSum,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::WuDoubleSum => "wu-double-sum",
            Method::FirstMinor => "first-minor",
            Method::GlobeDoubleSum => "globe-double-sum",
            Method::GlobeSingleSum => "globe-single-sum",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResistanceResult {
    pub ohms: f64,
    pub method: Method,
    pub spec: LatticeSpec,
    pub from: NodeRef,
    pub to: NodeRef,
}

/// Which evaluation route to use for a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Cheapest closed form (single sum on the globe).
    Fast,
    /// Mode double sum (identical to `Fast` off the globe).
    Double,
    /// Dense Kirchhoff solve on the explicit network.
    Oracle,
}

impl Strategy {
    /// Distinct routes available for a topology.
    pub fn all_for(topology: LatticeTopology) -> Vec<Strategy> {
        if topology == LatticeTopology::Globe {
            vec![Strategy::Fast, Strategy::Double, Strategy::Oracle]
        } else {
            vec![Strategy::Fast, Strategy::Oracle]
        }
    }
}

#[derive(Debug)]
enum ClosedForm {
    Wu(WuEngine),
    FirstMinor(FirstMinorEngine),
    Globe(GlobeModeData),
}

/// Per-lattice query engine. Cheap mode data is built up front; the globe
/// double-sum spectrum and the explicit network are built on first use.
#[derive(Debug)]
pub struct Solver {
    spec: LatticeSpec,
    closed: ClosedForm,
    globe_double: OnceLock<GlobeDoubleSum>,
    network: OnceLock<ResistorNetwork>,
}

impl Solver {
    pub fn new(spec: LatticeSpec) -> Result<Self> {
        spec.validate()?;
        let closed = match spec.topology {
            LatticeTopology::FreeRect | LatticeTopology::Cylinder | LatticeTopology::Torus => {
                ClosedForm::Wu(WuEngine::new(&spec)?)
            }
            LatticeTopology::Cobweb | LatticeTopology::Fan => ClosedForm::FirstMinor(FirstMinorEngine::new(&spec)?),
            LatticeTopology::Globe => ClosedForm::Globe(GlobeModeData::new(&spec)?),
        };
        Ok(Solver {
            spec,
            closed,
            globe_double: OnceLock::new(),
            network: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn network(&self) -> &ResistorNetwork {
        self.network
            .get_or_init(|| build_network(&self.spec).expect("spec validated at construction"))
    }

    fn globe_double(&self) -> &GlobeDoubleSum {
        self.globe_double
            .get_or_init(|| GlobeDoubleSum::new(&self.spec).expect("spec validated at construction"))
    }

    pub fn resistance(&self, a: NodeRef, b: NodeRef, strategy: Strategy) -> Result<ResistanceResult> {
        self.spec.check_node(a)?;
        self.spec.check_node(b)?;
        let (ohms, method) = match strategy {
            Strategy::Oracle => {
                let ia = node_index(&self.spec, a)?;
                let ib = node_index(&self.spec, b)?;
                (oracle::resistance_direct(self.network(), ia, ib)?, Method::Oracle)
            }
            Strategy::Fast | Strategy::Double => match &self.closed {
                ClosedForm::Wu(e) => (e.resistance(a, b)?, Method::WuDoubleSum),
                ClosedForm::FirstMinor(e) => (e.resistance(a, b)?, Method::FirstMinor),
                ClosedForm::Globe(modes) if strategy == Strategy::Fast => {
                    (modes.resistance(a, b)?, Method::GlobeSingleSum)
                }
                ClosedForm::Globe(_) => (self.globe_double().resistance(a, b)?, Method::GlobeDoubleSum),
            },
        };
        Ok(ResistanceResult {
            ohms,
            method,
            spec: self.spec,
            from: a,
            to: b,
        })
    }
}

/// Validates both endpoints; `true` when they coincide.
pub(crate) fn same_node(spec: &LatticeSpec, a: NodeRef, b: NodeRef) -> Result<bool> {
    spec.check_node(a)?;
    spec.check_node(b)?;
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solver_agrees_across_strategies() {
        for topo in LatticeTopology::ALL {
            let sp = LatticeSpec::new(topo, 3, 4, 2.0, 3.0).unwrap();
            let solver = Solver::new(sp).unwrap();
            let nodes = sp.nodes();
            for &a in &nodes {
                for &b in &nodes {
                    let vals: Vec<f64> = Strategy::all_for(topo)
                        .into_iter()
                        .map(|st| solver.resistance(a, b, st).unwrap().ohms)
                        .collect();
                    for v in &vals {
                        assert!((v - vals[0]).abs() <= 1e-9 * vals[0].abs(), "{topo} {a} {b} {vals:?}");
                    }
                    if a == b {
                        assert_eq!(vals[0], 0.0);
                    } else {
                        assert!(vals[0] > 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn method_tags() {
        let g = Solver::new(LatticeSpec::new(LatticeTopology::Globe, 2, 2, 1.0, 1.0).unwrap()).unwrap();
        let a = NodeRef::grid(1, 1);
        let b = NodeRef::grid(2, 2);
        assert_eq!(
            g.resistance(a, b, Strategy::Fast).unwrap().method,
            Method::GlobeSingleSum
        );
        assert_eq!(
            g.resistance(a, b, Strategy::Double).unwrap().method,
            Method::GlobeDoubleSum
        );
        assert_eq!(g.resistance(a, b, Strategy::Oracle).unwrap().method, Method::Oracle);
        let c = Solver::new(LatticeSpec::new(LatticeTopology::Fan, 2, 2, 1.0, 1.0).unwrap()).unwrap();
        assert_eq!(c.resistance(a, b, Strategy::Double).unwrap().method, Method::FirstMinor);
        assert!(c.resistance(NodeRef::PoleNorth, b, Strategy::Fast).is_err());
    }
}
