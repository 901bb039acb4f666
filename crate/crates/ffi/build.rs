use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = env::var("CARGO_MANIFEST_DIR").expect("manifest dir");
    let out_dir = PathBuf::from(env::var("OUT_DIR").expect("out dir"));
    let header = out_dir.join("satnorm.h");
    cbindgen::generate(&crate_dir)
        .expect("cbindgen header generation")
        .write_to_file(&header);
    // Keep a copy in the crate for consumers that vendor the source.
    let tracked = PathBuf::from(&crate_dir).join("include").join("satnorm.h");
    std::fs::create_dir_all(tracked.parent().unwrap()).expect("include dir");
    std::fs::copy(&header, &tracked).expect("copy header");
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
