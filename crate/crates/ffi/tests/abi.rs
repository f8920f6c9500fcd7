use std::ffi::{CStr, CString};
use std::ptr;

use cheeger_ffi::*;

fn parse(text: &str) -> *mut CheegerGraph {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    let status = unsafe { cheeger_graph_parse(text.as_ptr(), &mut g) };
    assert_eq!(status, CheegerStatus::Ok);
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    let p = cheeger_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

const C4: &str = r#"{"n":4,"edges":[{"u":0,"v":1,"w":1},{"u":1,"v":2,"w":1},{"u":2,"v":3,"w":1},{"u":3,"v":0,"w":1}]}"#;

#[test]
fn c4_through_the_abi() {
    let g = parse(C4);
    unsafe {
        assert_eq!(cheeger_graph_vertex_count(g), 4);
        assert_eq!(cheeger_graph_edge_count(g), 4);
        let mut ell = 0;
        assert_eq!(cheeger_graph_cyclomatic(g, &mut ell), CheegerStatus::Ok);
        assert_eq!(ell, 1);

        let mut values = [0.0; 4];
        assert_eq!(
            cheeger_laplacian_spectrum(g, values.as_mut_ptr(), 4),
            CheegerStatus::Ok
        );
        for (v, want) in values.iter().zip([0.0, 1.0, 1.0, 2.0]) {
            assert!((v - want).abs() < 1e-10);
        }

        let mut phi = 0.0;
        let set = [0usize, 1];
        assert_eq!(
            cheeger_conductance(g, set.as_ptr(), 2, &mut phi),
            CheegerStatus::Ok
        );
        assert_eq!(phi, 0.5);

        let mut rho = 0.0;
        let mut labels = [9u32; 4];
        assert_eq!(
            cheeger_rho(g, 2, 0, &mut rho, labels.as_mut_ptr()),
            CheegerStatus::Ok
        );
        assert_eq!(rho, 0.5);
        assert_eq!(labels, [1, 1, 2, 2]);

        let f = [1.0, 1.0, -1.0, -1.0];
        let mut count = 0;
        assert_eq!(
            cheeger_strong_nodal_count(g, f.as_ptr(), 4, &mut count),
            CheegerStatus::Ok
        );
        assert_eq!(count, 2);
        cheeger_graph_free(g);
    }
}

#[test]
fn signed_triangle() {
    let g = parse("n 3 mu degree\n0 1 1 -1\n1 2 1\n0 2 1\n");
    unsafe {
        let mut rho = 0.0;
        let mut labels = [0u32; 3];
        assert_eq!(
            cheeger_rho_signed(g, 1, 0, &mut rho, labels.as_mut_ptr()),
            CheegerStatus::Ok
        );
        assert!((rho - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(labels, [1, 1, 1]);
        cheeger_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = CString::new("{\"n\":2,\"edges\":[{\"u\":0,\"v\":0,\"w\":1}]}").unwrap();
        assert_eq!(
            cheeger_graph_parse(bad.as_ptr(), &mut g),
            CheegerStatus::InvalidGraph
        );
        assert!(g.is_null());
        assert!(last_error().contains("self-loop"), "{}", last_error());

        let junk = CString::new("{").unwrap();
        assert_eq!(
            cheeger_graph_parse(junk.as_ptr(), &mut g),
            CheegerStatus::Parse
        );
        assert_eq!(
            cheeger_graph_parse(ptr::null(), &mut g),
            CheegerStatus::NullPointer
        );

        let family = CString::new("cycle").unwrap();
        assert_eq!(
            cheeger_graph_generate(family.as_ptr(), 6, 0, &mut g),
            CheegerStatus::Ok
        );
        assert!(cheeger_last_error_message().is_null());

        let mut small = [0.0; 2];
        assert_eq!(
            cheeger_laplacian_spectrum(g, small.as_mut_ptr(), 2),
            CheegerStatus::BufferTooSmall
        );
        let mut rho = 0.0;
        assert_eq!(
            cheeger_rho(g, 7, 0, &mut rho, ptr::null_mut()),
            CheegerStatus::InvalidArgument
        );
        assert_eq!(
            cheeger_rho(g, 3, 2, &mut rho, ptr::null_mut()),
            CheegerStatus::BudgetExceeded
        );
        assert!(last_error().contains("budget"));
        assert_eq!(
            cheeger_rho(ptr::null(), 1, 0, &mut rho, ptr::null_mut()),
            CheegerStatus::NullPointer
        );
        assert_eq!(cheeger_graph_vertex_count(ptr::null()), 0);

        let unknown = CString::new("hypercube").unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(
            cheeger_graph_generate(unknown.as_ptr(), 4, 0, &mut h),
            CheegerStatus::InvalidArgument
        );
        cheeger_graph_free(g);
        cheeger_graph_free(ptr::null_mut());
    }
}
