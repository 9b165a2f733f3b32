//! Explicit resistor networks for the supported lattice families.
//!
//! Grid sites are addressed by 1-based `(x, y)` with `x = 1..=N` along the
//! latitudinal direction (bond resistance `r`) and `y = 1..=M` along the
//! longitudinal direction (bond resistance `s`). Flat indices are row-major with
//! `x` fastest. Topologies with a south pole / hub put it at index 0, so a grid
//! site sits at `(y - 1) * N + x`; the globe's north pole is `M * N + 1`.
//! Pole-free lattices start the grid at index 0.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::spectra1d::BoundaryKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeTopology {
    FreeRect,
    Cylinder,
    Torus,
    Cobweb,
    Fan,
    Globe,
}

impl LatticeTopology {
    pub const ALL: [LatticeTopology; 6] = [
        LatticeTopology::FreeRect,
        LatticeTopology::Cylinder,
        LatticeTopology::Torus,
        LatticeTopology::Cobweb,
        LatticeTopology::Fan,
        LatticeTopology::Globe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LatticeTopology::FreeRect => "free",
            LatticeTopology::Cylinder => "cylinder",
            LatticeTopology::Torus => "torus",
            LatticeTopology::Cobweb => "cobweb",
            LatticeTopology::Fan => "fan",
            LatticeTopology::Globe => "globe",
        }
    }

    /// Boundary condition of the `x` chain (bonds `r`).
    pub fn x_boundary(self) -> BoundaryKind {
        match self {
            LatticeTopology::Torus | LatticeTopology::Cobweb | LatticeTopology::Globe => BoundaryKind::Periodic,
            _ => BoundaryKind::Free,
        }
    }

    /// Boundary condition of the `y` chain (bonds `s`) in the operator the
    /// closed-form engines diagonalize: the full Laplacian for pole-free
    /// lattices, the first minor for cobweb/fan, the second minor for the globe.
    pub fn y_boundary(self) -> BoundaryKind {
        match self {
            LatticeTopology::FreeRect => BoundaryKind::Free,
            LatticeTopology::Cylinder | LatticeTopology::Torus => BoundaryKind::Periodic,
            LatticeTopology::Cobweb | LatticeTopology::Fan => BoundaryKind::DirichletNeumann,
            LatticeTopology::Globe => BoundaryKind::DirichletDirichlet,
        }
    }

    pub fn has_south_pole(self) -> bool {
        matches!(
            self,
            LatticeTopology::Cobweb | LatticeTopology::Fan | LatticeTopology::Globe
        )
    }

    pub fn has_north_pole(self) -> bool {
        self == LatticeTopology::Globe
    }

    pub fn is_regular(self) -> bool {
        !self.has_south_pole()
    }
}

impl fmt::Display for LatticeTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LatticeTopology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "free" | "freerect" | "free-rect" | "rect" => Ok(LatticeTopology::FreeRect),
            "cylinder" | "cyl" => Ok(LatticeTopology::Cylinder),
            "torus" => Ok(LatticeTopology::Torus),
            "cobweb" => Ok(LatticeTopology::Cobweb),
            "fan" => Ok(LatticeTopology::Fan),
            "globe" => Ok(LatticeTopology::Globe),
            other => invalid(format!("unknown topology '{other}'")),
        }
    }
}

/// Topology, dimensions, and the two bond resistances of a lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    pub topology: LatticeTopology,
    /// Number of `y` rows.
    pub m: usize,
    /// Number of `x` columns.
    pub n: usize,
    /// Latitudinal (`x`) bond resistance.
    pub r: f64,
    /// Longitudinal (`y`) bond resistance.
    pub s: f64,
}

impl LatticeSpec {
    pub fn new(topology: LatticeTopology, m: usize, n: usize, r: f64, s: f64) -> Result<Self> {
        let spec = LatticeSpec { topology, m, n, r, s };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return invalid(format!(
                "lattice dimensions must be positive (M={}, N={})",
                self.m, self.n
            ));
        }
        if !(self.r.is_finite() && self.r > 0.0) {
            return invalid(format!("r must be a positive finite resistance, got {}", self.r));
        }
        if !(self.s.is_finite() && self.s > 0.0) {
            return invalid(format!("s must be a positive finite resistance, got {}", self.s));
        }
        Ok(())
    }

    /// Anisotropy ratio `h = r / s`.
    pub fn h(&self) -> f64 {
        self.r / self.s
    }

    pub fn node_count(&self) -> usize {
        let poles = usize::from(self.topology.has_south_pole()) + usize::from(self.topology.has_north_pole());
        self.m * self.n + poles
    }

    fn grid_offset(&self) -> usize {
        usize::from(self.topology.has_south_pole())
    }

    /// Every node in flat-index order.
    pub fn nodes(&self) -> Vec<NodeRef> {
        let mut out = Vec::with_capacity(self.node_count());
        if self.topology.has_south_pole() {
            out.push(NodeRef::PoleSouth);
        }
        for y in 1..=self.m {
            for x in 1..=self.n {
                out.push(NodeRef::Grid { x, y });
            }
        }
        if self.topology.has_north_pole() {
            out.push(NodeRef::PoleNorth);
        }
        out
    }

    pub fn check_node(&self, node: NodeRef) -> Result<()> {
        match node {
            NodeRef::PoleSouth if !self.topology.has_south_pole() => {
                invalid(format!("{} lattice has no pole O", self.topology))
            }
            NodeRef::PoleNorth if !self.topology.has_north_pole() => {
                invalid(format!("{} lattice has no pole O'", self.topology))
            }
            NodeRef::Grid { x, y } if x == 0 || x > self.n || y == 0 || y > self.m => invalid(format!(
                "site ({x},{y}) outside {}x{} grid (x<=N={}, y<=M={})",
                self.n, self.m, self.n, self.m
            )),
            _ => Ok(()),
        }
    }
}

/// Symbolic node address.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeRef {
    /// Pole `O` (globe) or hub (cobweb, fan).
    PoleSouth,
    /// Pole `O'` (globe only).
    PoleNorth,
    Grid {
        x: usize,
        y: usize,
    },
}

impl NodeRef {
    pub fn grid(x: usize, y: usize) -> Self {
        NodeRef::Grid { x, y }
    }

    pub fn is_pole(self) -> bool {
        !matches!(self, NodeRef::Grid { .. })
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeRef::PoleSouth => f.write_str("O"),
            NodeRef::PoleNorth => f.write_str("O'"),
            NodeRef::Grid { x, y } => write!(f, "{x},{y}"),
        }
    }
}

impl FromStr for NodeRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "O" | "o" | "hub" | "south" => return Ok(NodeRef::PoleSouth),
            "O'" | "o'" | "north" => return Ok(NodeRef::PoleNorth),
            _ => {}
        }
        let (xs, ys) = t
            .split_once(',')
            .ok_or_else(|| Error::InvalidArgument(format!("bad node '{s}': expected O, O' or x,y")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad node coordinate '{v}' in '{s}'")))
        };
        Ok(NodeRef::Grid {
            x: parse(xs)?,
            y: parse(ys)?,
        })
    }
}

pub fn node_index(spec: &LatticeSpec, node: NodeRef) -> Result<usize> {
    spec.check_node(node)?;
    Ok(match node {
        NodeRef::PoleSouth => 0,
        NodeRef::PoleNorth => spec.m * spec.n + 1,
        NodeRef::Grid { x, y } => spec.grid_offset() + (y - 1) * spec.n + (x - 1),
    })
}

pub fn node_at(spec: &LatticeSpec, index: usize) -> Result<NodeRef> {
    if index >= spec.node_count() {
        return invalid(format!(
            "node index {index} out of range for {} nodes",
            spec.node_count()
        ));
    }
    let off = spec.grid_offset();
    if spec.topology.has_south_pole() && index == 0 {
        return Ok(NodeRef::PoleSouth);
    }
    if spec.topology.has_north_pole() && index == spec.m * spec.n + 1 {
        return Ok(NodeRef::PoleNorth);
    }
    let g = index - off;
    Ok(NodeRef::Grid {
        x: g % spec.n + 1,
        y: g / spec.n + 1,
    })
}

/// Weighted undirected graph with a symmetric conductance table.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResistorNetwork {
    node_count: usize,
    // keyed (i, j) with i < j
    bonds: BTreeMap<(usize, usize), f64>,
}

impl ResistorNetwork {
    pub fn new(node_count: usize) -> Self {
        ResistorNetwork {
            node_count,
            bonds: BTreeMap::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Adds a resistor of the given conductance. Parallel bonds aggregate;
    /// self-loops carry no current and are dropped.
    pub fn add_conductance(&mut self, i: usize, j: usize, siemens: f64) -> Result<()> {
        if i >= self.node_count || j >= self.node_count {
            return invalid(format!("bond {i}-{j} references a node outside 0..{}", self.node_count));
        }
        if !(siemens.is_finite() && siemens >= 0.0) {
            return invalid(format!("conductance {siemens} on bond {i}-{j} must be finite and >= 0"));
        }
        if i == j || siemens == 0.0 {
            return Ok(());
        }
        let key = (i.min(j), i.max(j));
        *self.bonds.entry(key).or_insert(0.0) += siemens;
        Ok(())
    }

    pub fn conductance(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        self.bonds.get(&(i.min(j), i.max(j))).copied().unwrap_or(0.0)
    }

    /// Bonds as `(i, j, conductance)` with `i < j`, sorted.
    pub fn bonds(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.bonds.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn bond_count(&self) -> usize {
        self.bonds.len()
    }

    /// Node conductance totals `c_i = Σ_{j≠i} c_ij`.
    pub fn node_totals(&self) -> Vec<f64> {
        let mut totals = vec![0.0; self.node_count];
        for (i, j, c) in self.bonds() {
            totals[i] += c;
            totals[j] += c;
        }
        totals
    }

    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut lap = DMatrix::zeros(self.node_count, self.node_count);
        for (i, j, c) in self.bonds() {
            lap[(i, i)] += c;
            lap[(j, j)] += c;
            lap[(i, j)] -= c;
            lap[(j, i)] -= c;
        }
        lap
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); self.node_count];
        for (i, j, _) in self.bonds() {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; self.node_count];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.node_count
    }

    /// Edge-list text: a `T=<nodes>` header, then one `i j conductance` line per bond.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("T={}\n", self.node_count);
        for (i, j, c) in self.bonds() {
            let _ = writeln!(out, "{i} {j} {c:.16e}");
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut net: Option<ResistorNetwork> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            match net.as_mut() {
                None => {
                    let count = line
                        .strip_prefix("T=")
                        .ok_or_else(|| perr(format!("expected header 'T=<node_count>', got '{line}'")))?
                        .trim()
                        .parse::<usize>()
                        .map_err(|e| perr(format!("bad node count: {e}")))?;
                    if count == 0 {
                        return Err(perr("node count must be positive".into()));
                    }
                    net = Some(ResistorNetwork::new(count));
                }
                Some(net) => {
                    let fields: Vec<&str> = line.split_whitespace().collect();
                    if fields.len() != 3 {
                        return Err(perr(format!("expected 'i j conductance', got '{line}'")));
                    }
                    let i = fields[0]
                        .parse::<usize>()
                        .map_err(|e| perr(format!("bad node '{}': {e}", fields[0])))?;
                    let j = fields[1]
                        .parse::<usize>()
                        .map_err(|e| perr(format!("bad node '{}': {e}", fields[1])))?;
                    let c = fields[2]
                        .parse::<f64>()
                        .map_err(|e| perr(format!("bad conductance '{}': {e}", fields[2])))?;
                    net.add_conductance(i, j, c).map_err(|e| perr(e.to_string()))?;
                }
            }
        }
        net.ok_or(Error::Parse {
            line: 0,
            message: "empty edge list".into(),
        })
    }
}

pub fn build_network(spec: &LatticeSpec) -> Result<ResistorNetwork> {
    spec.validate()?;
    let (m, n) = (spec.m, spec.n);
    let g = 1.0 / spec.r;
    let h = 1.0 / spec.s;
    let topo = spec.topology;
    let idx = |x: usize, y: usize| spec.grid_offset() + (y - 1) * n + (x - 1);
    let mut net = ResistorNetwork::new(spec.node_count());

    let x_periodic = topo.x_boundary() == BoundaryKind::Periodic;
    let y_periodic = matches!(topo, LatticeTopology::Cylinder | LatticeTopology::Torus);
    for y in 1..=m {
        for x in 1..=n {
            if x < n {
                net.add_conductance(idx(x, y), idx(x + 1, y), g)?;
            } else if x_periodic {
                net.add_conductance(idx(x, y), idx(1, y), g)?;
            }
            if y < m {
                net.add_conductance(idx(x, y), idx(x, y + 1), h)?;
            } else if y_periodic {
                net.add_conductance(idx(x, y), idx(x, 1), h)?;
            }
        }
    }
    if topo.has_south_pole() {
        for x in 1..=n {
            net.add_conductance(0, idx(x, 1), h)?;
        }
    }
    if topo.has_north_pole() {
        let north = m * n + 1;
        for x in 1..=n {
            net.add_conductance(north, idx(x, m), h)?;
        }
    }
    Ok(net)
}
