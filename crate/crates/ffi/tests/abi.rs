use std::ffi::{CStr, CString};
use std::ptr;

use latres_ffi::*;

fn grid(x: usize, y: usize) -> LatresNode {
    LatresNode {
        kind: LatresNodeKind::Grid,
        x,
        y,
    }
}

const SOUTH: LatresNode = LatresNode {
    kind: LatresNodeKind::PoleSouth,
    x: 0,
    y: 0,
};
const NORTH: LatresNode = LatresNode {
    kind: LatresNodeKind::PoleNorth,
    x: 0,
    y: 0,
};

fn new_lattice(t: LatresTopology, m: usize, n: usize, r: f64, s: f64) -> *mut LatresLattice {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { latres_lattice_new(t, m, n, r, s, &mut h) }, LatresStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error() -> String {
    let p = latres_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn globe_pole_to_pole() {
    let h = new_lattice(LatresTopology::Globe, 1, 3, 1.0, 1.0);
    let mut count = 0;
    assert_eq!(unsafe { latres_lattice_node_count(h, &mut count) }, LatresStatus::Ok);
    assert_eq!(count, 5);
    for method in [LatresMethod::Fast, LatresMethod::Double, LatresMethod::Oracle] {
        let mut r = f64::NAN;
        assert_eq!(
            unsafe { latres_resistance(h, SOUTH, NORTH, method, &mut r) },
            LatresStatus::Ok
        );
        assert!((r - 2.0 / 3.0).abs() < 1e-12, "{method:?} {r}");
    }
    unsafe { latres_lattice_free(h) };
}

#[test]
fn methods_agree_on_every_topology() {
    use LatresTopology::*;
    for t in [FreeRect, Cylinder, Torus, Cobweb, Fan, Globe] {
        let h = new_lattice(t, 3, 4, 2.0, 3.0);
        let (mut fast, mut oracle) = (0.0, 0.0);
        unsafe {
            assert_eq!(
                latres_resistance(h, grid(1, 1), grid(3, 2), LatresMethod::Fast, &mut fast),
                LatresStatus::Ok
            );
            assert_eq!(
                latres_resistance(h, grid(1, 1), grid(3, 2), LatresMethod::Oracle, &mut oracle),
                LatresStatus::Ok
            );
            latres_lattice_free(h);
        }
        assert!((fast - oracle).abs() < 1e-9 * oracle, "{t:?}");
    }
}

#[test]
fn node_index_round_trip() {
    let h = new_lattice(LatresTopology::Globe, 2, 3, 1.0, 1.0);
    for i in 0..8 {
        let mut node = grid(0, 0);
        let mut back = usize::MAX;
        unsafe {
            assert_eq!(latres_node_at(h, i, &mut node), LatresStatus::Ok);
            assert_eq!(latres_node_index(h, node, &mut back), LatresStatus::Ok);
        }
        assert_eq!(back, i);
    }
    let mut idx = 0;
    assert_eq!(unsafe { latres_node_index(h, NORTH, &mut idx) }, LatresStatus::Ok);
    assert_eq!(idx, 7);
    let mut node = grid(0, 0);
    assert_eq!(
        unsafe { latres_node_at(h, 8, &mut node) },
        LatresStatus::InvalidArgument
    );
    unsafe { latres_lattice_free(h) };
}

#[test]
fn error_codes_and_messages() {
    let mut h = ptr::null_mut();
    let status = unsafe { latres_lattice_new(LatresTopology::Globe, 0, 3, 1.0, 1.0, &mut h) };
    assert_eq!(status, LatresStatus::InvalidArgument);
    assert!(h.is_null());
    assert!(!last_error().is_empty());

    let status = unsafe { latres_lattice_new(LatresTopology::Globe, 2, 3, -1.0, 1.0, &mut h) };
    assert_eq!(status, LatresStatus::InvalidArgument);

    let torus = new_lattice(LatresTopology::Torus, 2, 2, 1.0, 1.0);
    let mut r = 0.0;
    assert_eq!(
        unsafe { latres_resistance(torus, SOUTH, grid(1, 1), LatresMethod::Fast, &mut r) },
        LatresStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { latres_resistance(torus, grid(1, 1), grid(2, 1), LatresMethod::Fast, ptr::null_mut()) },
        LatresStatus::NullPointer
    );
    assert_eq!(
        unsafe { latres_resistance(ptr::null(), grid(1, 1), grid(2, 1), LatresMethod::Fast, &mut r) },
        LatresStatus::NullPointer
    );
    assert!(last_error().contains("lattice"));
    unsafe { latres_lattice_free(torus) };
    unsafe { latres_lattice_free(ptr::null_mut()) };
}

#[test]
fn kirchhoff_from_handle_and_text() {
    let h = new_lattice(LatresTopology::FreeRect, 1, 2, 1.0, 1.0);
    let mut k = 0.0;
    assert_eq!(unsafe { latres_kirchhoff_index(h, &mut k) }, LatresStatus::Ok);
    assert!((k - 1.0).abs() < 1e-12);
    unsafe { latres_lattice_free(h) };

    let tri = CString::new("T=3\n0 1 1\n1 2 1\n0 2 1\n").unwrap();
    assert_eq!(
        unsafe { latres_kirchhoff_index_edge_list(tri.as_ptr(), &mut k) },
        LatresStatus::Ok
    );
    assert!((k - 2.0).abs() < 1e-12);

    let split = CString::new("T=4\n0 1 1\n2 3 1\n").unwrap();
    assert_eq!(
        unsafe { latres_kirchhoff_index_edge_list(split.as_ptr(), &mut k) },
        LatresStatus::Disconnected
    );
    let junk = CString::new("T=2\n0 x 1\n").unwrap();
    assert_eq!(
        unsafe { latres_kirchhoff_index_edge_list(junk.as_ptr(), &mut k) },
        LatresStatus::ParseError
    );
}

#[test]
fn spectrum_buffer_protocol() {
    let mut need = 0;
    let status = unsafe { latres_spectrum_eigenvalues(LatresBoundary::Periodic, 4, ptr::null_mut(), 0, &mut need) };
    assert_eq!(status, LatresStatus::BufferTooSmall);
    assert_eq!(need, 4);
    let mut buf = vec![f64::NAN; need];
    let status = unsafe {
        latres_spectrum_eigenvalues(
            LatresBoundary::Periodic,
            4,
            buf.as_mut_ptr(),
            buf.len(),
            ptr::null_mut(),
        )
    };
    assert_eq!(status, LatresStatus::Ok);
    for (got, want) in buf.iter().zip([0.0, 2.0, 4.0, 2.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    let status = unsafe {
        latres_spectrum_eigenvalues(
            LatresBoundary::DirichletDirichlet,
            0,
            buf.as_mut_ptr(),
            4,
            ptr::null_mut(),
        )
    };
    assert_eq!(status, LatresStatus::InvalidArgument);
}

#[test]
fn handle_shared_across_threads() {
    struct Shared(*const LatresLattice);
    unsafe impl Sync for Shared {}
    let h = new_lattice(LatresTopology::Globe, 6, 6, 1.0, 1.0);
    let shared = Shared(h);
    let values: Vec<f64> = std::thread::scope(|s| {
        let shared = &shared;
        let handles: Vec<_> = (1..=6)
            .map(|x| {
                s.spawn(move || {
                    let mut r = 0.0;
                    assert_eq!(
                        unsafe { latres_resistance(shared.0, grid(1, 1), grid(x, 6), LatresMethod::Double, &mut r) },
                        LatresStatus::Ok
                    );
                    r
                })
            })
            .collect();
        handles.into_iter().map(|t| t.join().unwrap()).collect()
    });
    assert!(values.iter().all(|v| v.is_finite() && *v > 0.0));
    unsafe { latres_lattice_free(h) };
}
