fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    // The committed header is regenerated in place so it can never go stale;
    // write_to_file leaves the file untouched when the content is unchanged.
    let bindings = cbindgen::generate(&crate_dir).expect("header generation failed");
    bindings.write_to_file(format!("{crate_dir}/include/rstacked.h"));
}
