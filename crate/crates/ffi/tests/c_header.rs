use std::path::Path;
use std::process::Command;

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/poset_assoc.h");
    assert!(header.exists(), "header not generated");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "pa_poset_from_json",
        "pa_f_vector",
        "pa_flip_tubing_json",
        "PA_STATUS_NOT_AUTONOMOUS",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(out) = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("c/smoke.c"))
        .output()
    else {
        eprintln!("no C compiler found; skipping compile check");
        return;
    };
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
