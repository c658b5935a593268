//! The generated header compiles as C and as C++, and a small C program
//! linked against the static library gets the right answers.

use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn have(tool: &str) -> bool {
    Command::new(tool).arg("--version").output().is_ok()
}

fn compile(tool: &str, lang: &str, src: &Path) {
    let out = Command::new(tool)
        .args(["-x", lang, "-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(root().join("include"))
        .arg(src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{tool}: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn header_is_valid_c_and_cpp() {
    if !have("cc") {
        eprintln!("no C compiler; skipped");
        return;
    }
    let dir = std::env::temp_dir().join(format!("cubrig-header-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("probe.c");
    std::fs::write(&src, "#include \"cubrig.h\"\nint main(void) { return CUBRIG_STATUS_OK; }\n").unwrap();
    compile("cc", "c", &src);
    if have("c++") {
        compile("c++", "c++", &src);
    }
}

/// `target/<profile>` next to this test binary.
fn profile_dir() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    exe.parent()?.parent().map(Path::to_path_buf)
}

#[test]
fn c_program_links() {
    let Some(lib) = profile_dir().map(|d| d.join("libcubrig_ffi.a")).filter(|p| p.exists()) else {
        eprintln!("static library not built; skipped");
        return;
    };
    if !have("cc") {
        eprintln!("no C compiler; skipped");
        return;
    }
    let dir = std::env::temp_dir().join(format!("cubrig-link-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "cubrig.h"
int main(void) {
    CubrigComplex *c = NULL;
    size_t n = 0;
    if (cubrig_complex_build("cube:4", &c) != CUBRIG_STATUS_OK) return 1;
    if (cubrig_complex_path_count(c, "alpha", "omega", &n) != CUBRIG_STATUS_OK) return 2;
    cubrig_complex_free(c);
    if (cubrig_complex_build("nope", &c) != CUBRIG_STATUS_INVALID_INPUT) return 3;
    printf("%zu %s\n", n, cubrig_last_error() ? "error-set" : "no-error");
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("main");
    let out = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(root().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "link: {}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status);
    assert_eq!(String::from_utf8_lossy(&run.stdout), "24 error-set\n");
}
