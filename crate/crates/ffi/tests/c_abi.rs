use std::path::{Path, PathBuf};
use std::process::Command;

fn manifest() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

/// `target/<profile>`, two levels above this test executable.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(manifest().join("include/iugehp.h")).unwrap();
    for name in [
        "iugehp_last_error",
        "iugehp_clear_error",
        "iugehp_version",
        "iugehp_system_new",
        "iugehp_system_from_json",
        "iugehp_system_free",
        "iugehp_energy",
        "iugehp_epsilon",
        "iugehp_bound_count",
        "iugehp_partition",
        "iugehp_thermo",
        "iugehp_erf",
        "typedef struct IugehpSystem IugehpSystem;",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn c_program_links_and_runs() {
    let lib = profile_dir().join("libiugehp_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest().join("include"))
        .arg(manifest().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let value = |key: &str| -> String {
        text.lines()
            .find_map(|l| l.strip_prefix(key).map(|v| v.trim().to_owned()))
            .unwrap_or_else(|| panic!("{key} missing in {text}"))
    };
    let s = iugehp::fixtures::bound(1);
    let e = iugehp::spectrum::energy(2, -1, &s, iugehp::EnergyVariant::Rescaled).unwrap().energy;
    assert_eq!(value("energy ").parse::<f64>().unwrap(), e);
    assert!(value("z ").parse::<f64>().unwrap() > 0.0);
    assert!(value("error ").contains("unknown energy variant"));
    assert_eq!(value("version "), env!("CARGO_PKG_VERSION"));
}
