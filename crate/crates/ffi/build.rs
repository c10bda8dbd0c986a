fn main() {
    #[cfg(feature = "gen-header")]
    {
        let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
        cbindgen::generate(&crate_dir)
            .expect("cbindgen generates the header")
            .write_to_file(format!("{crate_dir}/include/dca.h"));
    }
}
