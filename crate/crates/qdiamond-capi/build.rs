use std::env;

// Regenerates include/qdiamond.h from the public items in src/lib.rs.
// The checked-in header is the build artifact consumers include.
fn main() {
    let crate_dir = env::var("CARGO_MANIFEST_DIR").unwrap();

    cbindgen::generate(&crate_dir)
        .expect("cbindgen failed to generate bindings")
        .write_to_file("include/qdiamond.h");

    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
