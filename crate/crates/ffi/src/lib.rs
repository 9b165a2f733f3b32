//! C ABI over `latres`.
//!
//! Every fallible call returns a [`LatresStatus`] and writes its result through
//! an out-pointer. On failure, [`latres_last_error_message`] describes the most
//! recent error on the calling thread. Lattices are opaque heap handles created
//! by [`latres_lattice_new`] and released with [`latres_lattice_free`]; a handle
//! may be shared between threads for read-only queries.
//!
//! Enum arguments must hold one of their declared enumerators; other integer
//! values are undefined behaviour, as with any Rust `repr(C)` enum.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use latres::{oracle, BoundaryKind, Error, LatticeSpec, LatticeTopology, NodeRef, ResistorNetwork, Solver, Strategy};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatresStatus {
    Ok = 0,
    InvalidArgument = 1,
    Disconnected = 2,
    ParseError = 3,
    NullPointer = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatresTopology {
    FreeRect = 0,
    Cylinder = 1,
    Torus = 2,
    Cobweb = 3,
    Fan = 4,
    Globe = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatresBoundary {
    Periodic = 0,
    Free = 1,
    DirichletDirichlet = 2,
    DirichletNeumann = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatresMethod {
    /// Cheapest closed form.
    Fast = 0,
    /// Mode double sum.
    Double = 1,
    /// Dense Kirchhoff solve.
    Oracle = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatresNodeKind {
    Grid = 0,
    /// Hub of a cobweb or fan, or the globe's pole O.
    PoleSouth = 1,
    /// The globe's pole O'.
    PoleNorth = 2,
}

/// A node reference. `x` and `y` are 1-based and only read for grid nodes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatresNode {
    pub kind: LatresNodeKind,
    pub x: usize,
    pub y: usize,
}

/// Opaque lattice handle.
pub struct LatresLattice {
    solver: Solver,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: LatresStatus, msg: &str) -> LatresStatus {
    set_last_error(msg);
    status
}

fn from_error(e: Error) -> LatresStatus {
    let status = match e {
        Error::InvalidArgument(_) => LatresStatus::InvalidArgument,
        Error::DisconnectedNetwork => LatresStatus::Disconnected,
        Error::Parse { .. } => LatresStatus::ParseError,
    };
    fail(status, &e.to_string())
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), LatresStatus>) -> LatresStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LatresStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(LatresStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: latres::Result<T>) -> Result<T, LatresStatus> {
    r.map_err(from_error)
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), LatresStatus> {
    if p.is_null() {
        Err(fail(LatresStatus::NullPointer, &format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// # Safety
/// `lattice` must be null or a live handle from [`latres_lattice_new`].
unsafe fn lattice_ref<'a>(lattice: *const LatresLattice) -> Result<&'a LatresLattice, LatresStatus> {
    non_null(lattice, "lattice")?;
    Ok(&*lattice)
}

impl From<LatresTopology> for LatticeTopology {
    fn from(t: LatresTopology) -> Self {
        match t {
            LatresTopology::FreeRect => LatticeTopology::FreeRect,
            LatresTopology::Cylinder => LatticeTopology::Cylinder,
            LatresTopology::Torus => LatticeTopology::Torus,
            LatresTopology::Cobweb => LatticeTopology::Cobweb,
            LatresTopology::Fan => LatticeTopology::Fan,
            LatresTopology::Globe => LatticeTopology::Globe,
        }
    }
}

impl From<LatresBoundary> for BoundaryKind {
    fn from(b: LatresBoundary) -> Self {
        match b {
            LatresBoundary::Periodic => BoundaryKind::Periodic,
            LatresBoundary::Free => BoundaryKind::Free,
            LatresBoundary::DirichletDirichlet => BoundaryKind::DirichletDirichlet,
            LatresBoundary::DirichletNeumann => BoundaryKind::DirichletNeumann,
        }
    }
}

impl From<LatresMethod> for Strategy {
    fn from(m: LatresMethod) -> Self {
        match m {
            LatresMethod::Fast => Strategy::Fast,
            LatresMethod::Double => Strategy::Double,
            LatresMethod::Oracle => Strategy::Oracle,
        }
    }
}

impl From<LatresNode> for NodeRef {
    fn from(n: LatresNode) -> Self {
        match n.kind {
            LatresNodeKind::Grid => NodeRef::Grid { x: n.x, y: n.y },
            LatresNodeKind::PoleSouth => NodeRef::PoleSouth,
            LatresNodeKind::PoleNorth => NodeRef::PoleNorth,
        }
    }
}

impl From<NodeRef> for LatresNode {
    fn from(n: NodeRef) -> Self {
        match n {
            NodeRef::Grid { x, y } => LatresNode {
                kind: LatresNodeKind::Grid,
                x,
                y,
            },
            NodeRef::PoleSouth => LatresNode {
                kind: LatresNodeKind::PoleSouth,
                x: 0,
                y: 0,
            },
            NodeRef::PoleNorth => LatresNode {
                kind: LatresNodeKind::PoleNorth,
                x: 0,
                y: 0,
            },
        }
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn latres_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn latres_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates a lattice handle. `m` rows, `n` columns, bond resistances `r`
/// (x direction) and `s` (y direction) in ohms.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn latres_lattice_new(
    topology: LatresTopology,
    m: usize,
    n: usize,
    r: f64,
    s: f64,
    out: *mut *mut LatresLattice,
) -> LatresStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let spec = lift(LatticeSpec::new(topology.into(), m, n, r, s))?;
        let solver = lift(Solver::new(spec))?;
        *out = Box::into_raw(Box::new(LatresLattice { solver }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `lattice` must be null or a handle from [`latres_lattice_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn latres_lattice_free(lattice: *mut LatresLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Number of nodes, poles included.
///
/// # Safety
/// `lattice` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latres_lattice_node_count(lattice: *const LatresLattice, out: *mut usize) -> LatresStatus {
    guard(|| {
        let lat = lattice_ref(lattice)?;
        non_null(out, "out")?;
        *out = lat.solver.spec().node_count();
        Ok(())
    })
}

/// Flat node index used by edge-list export.
///
/// # Safety
/// `lattice` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latres_node_index(
    lattice: *const LatresLattice,
    node: LatresNode,
    out: *mut usize,
) -> LatresStatus {
    guard(|| {
        let lat = lattice_ref(lattice)?;
        non_null(out, "out")?;
        *out = lift(latres::node_index(lat.solver.spec(), node.into()))?;
        Ok(())
    })
}

/// Inverse of [`latres_node_index`].
///
/// # Safety
/// `lattice` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latres_node_at(
    lattice: *const LatresLattice,
    index: usize,
    out: *mut LatresNode,
) -> LatresStatus {
    guard(|| {
        let lat = lattice_ref(lattice)?;
        non_null(out, "out")?;
        *out = lift(latres::node_at(lat.solver.spec(), index))?.into();
        Ok(())
    })
}

/// Two-point resistance in ohms between `a` and `b`.
///
/// # Safety
/// `lattice` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latres_resistance(
    lattice: *const LatresLattice,
    a: LatresNode,
    b: LatresNode,
    method: LatresMethod,
    out: *mut f64,
) -> LatresStatus {
    guard(|| {
        let lat = lattice_ref(lattice)?;
        non_null(out, "out")?;
        *out = lift(lat.solver.resistance(a.into(), b.into(), method.into()))?.ohms;
        Ok(())
    })
}

/// Kirchhoff index of the lattice (sum of resistances over node pairs).
///
/// # Safety
/// `lattice` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latres_kirchhoff_index(lattice: *const LatresLattice, out: *mut f64) -> LatresStatus {
    guard(|| {
        let lat = lattice_ref(lattice)?;
        non_null(out, "out")?;
        *out = lift(oracle::kirchhoff_index(lat.solver.network()))?;
        Ok(())
    })
}

/// Kirchhoff index of an arbitrary network given as edge-list text
/// (`T=<n>` header, then `i j conductance` lines).
///
/// # Safety
/// `edge_list` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn latres_kirchhoff_index_edge_list(edge_list: *const c_char, out: *mut f64) -> LatresStatus {
    guard(|| {
        non_null(edge_list, "edge_list")?;
        non_null(out, "out")?;
        let text = CStr::from_ptr(edge_list)
            .to_str()
            .map_err(|_| fail(LatresStatus::ParseError, "edge list is not valid UTF-8"))?;
        let net = lift(ResistorNetwork::from_edge_list(text))?;
        *out = lift(oracle::kirchhoff_index(&net))?;
        Ok(())
    })
}

/// Eigenvalues of the `size`-site chain Laplacian, in mode order. Writes
/// `size` values to `buf` when `capacity >= size`; `required` (if non-null)
/// always receives `size`. Returns `BufferTooSmall` otherwise.
///
/// # Safety
/// `buf` must be valid for `capacity` writes; `required` null or writable.
#[no_mangle]
pub unsafe extern "C" fn latres_spectrum_eigenvalues(
    kind: LatresBoundary,
    size: usize,
    buf: *mut f64,
    capacity: usize,
    required: *mut usize,
) -> LatresStatus {
    guard(|| {
        let sp = lift(latres::spectrum(kind.into(), size))?;
        if !required.is_null() {
            *required = size;
        }
        if capacity < size {
            return Err(fail(
                LatresStatus::BufferTooSmall,
                &format!("buffer holds {capacity} values, {size} needed"),
            ));
        }
        non_null(buf, "buf")?;
        std::slice::from_raw_parts_mut(buf, size).copy_from_slice(sp.eigenvalues());
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn message() -> String {
        let p = latres_last_error_message();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }

    #[test]
    fn version_is_nul_terminated() {
        let v = unsafe { CStr::from_ptr(latres_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn errors_map_to_codes() {
        assert_eq!(from_error(Error::DisconnectedNetwork), LatresStatus::Disconnected);
        assert_eq!(
            from_error(Error::Parse {
                line: 3,
                message: "bad".into()
            }),
            LatresStatus::ParseError
        );
        assert!(message().contains("line 3"));
        assert_eq!(
            from_error(Error::InvalidArgument("x".into())),
            LatresStatus::InvalidArgument
        );
    }

    #[test]
    fn panics_become_status() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, LatresStatus::Panic);
    }

    #[test]
    fn node_conversion_round_trips() {
        for node in [NodeRef::PoleSouth, NodeRef::PoleNorth, NodeRef::grid(3, 2)] {
            assert_eq!(NodeRef::from(LatresNode::from(node)), node);
        }
    }
}
