//! Compiles a C program against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "extweyl.h"

int main(void) {
    int64_t arms[] = {1, 1};
    ExtweylDiagram *d = NULL;
    if (extweyl_diagram_new(arms, 2, &d) != EXTWEYL_STATUS_OK) return 10;
    ExtweylType ty;
    size_t p, m, z;
    if (extweyl_diagram_classify(d, &ty, &p, &m, &z) != EXTWEYL_STATUS_OK) return 11;
    if (ty != EXTWEYL_TYPE_DOMESTIC || p != 3 || m != 0 || z != 1) return 12;
    ExtweylFactorization *std = NULL, *moved = NULL;
    if (extweyl_standard_factorization(d, &std) != EXTWEYL_STATUS_OK) return 13;
    int32_t word[] = {1, -2, 3};
    if (extweyl_factorization_apply_braid(d, std, word, 3, &moved) != EXTWEYL_STATUS_OK) return 14;
    char *result = NULL;
    if (extweyl_connect(d, moved, std, 100000, &result) != EXTWEYL_STATUS_OK) return 15;
    if (strstr(result, "\"connected\"") == NULL) return 16;
    printf("%s\n", result);
    extweyl_string_free(result);
    int32_t bad[] = {9};
    ExtweylFactorization *none = NULL;
    if (extweyl_factorization_apply_braid(d, std, bad, 1, &none) != EXTWEYL_STATUS_INVALID_ARGUMENT) return 17;
    if (strlen(extweyl_last_error_message()) == 0) return 18;
    extweyl_factorization_free(moved);
    extweyl_factorization_free(std);
    extweyl_diagram_free(d);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"))
        .join(if cfg!(debug_assertions) {
            "debug"
        } else {
            "release"
        })
}

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libextweyl_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let work = std::env::temp_dir().join(format!("extweyl-c-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("main.c");
    let exe = work.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"letters\""));
}
