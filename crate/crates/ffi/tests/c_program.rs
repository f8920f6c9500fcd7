//! Compiles a small C program against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "cheeger.h"

int main(void) {
    CheegerGraph *g = NULL;
    if (cheeger_graph_generate("cycle", 4, 0, &g) != CHEEGER_STATUS_OK) return 10;
    double rho = 0.0;
    uint32_t labels[4];
    if (cheeger_rho(g, 2, 0, &rho, labels) != CHEEGER_STATUS_OK) return 11;
    double values[4];
    if (cheeger_laplacian_spectrum(g, values, 4) != CHEEGER_STATUS_OK) return 12;
    if (cheeger_rho(g, 9, 0, &rho, NULL) != CHEEGER_STATUS_INVALID_ARGUMENT) return 13;
    printf("%.3f %u%u%u%u %.3f %s\n", rho, labels[0], labels[1], labels[2], labels[3], values[3],
           cheeger_last_error_message() != NULL ? "err" : "none");
    cheeger_graph_free(g);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // .../target/<profile>/deps/c_program-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("cheeger.h").exists());
    let lib = target_dir().join("libcheeger_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "0.500 1122 2.000 err\n"
    );
}
