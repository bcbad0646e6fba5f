//! Re-derives the base-case library: `derive_goldens <dir> [id ...]`.
//! With ids, only those cases are replaced in the library found in `<dir>`.

use std::path::Path;

use rsps_core::basecase::{derive_all, derive_base, BaseCaseLibrary};

fn main() {
    let mut args = std::env::args().skip(1);
    let dir = args.next().expect("output directory");
    let ids: Vec<String> = args.collect();
    let dir = Path::new(&dir);
    let lib = if ids.is_empty() {
        derive_all(|id, secs| eprintln!("{id}: {secs:.2}s")).unwrap()
    } else {
        let mut lib = BaseCaseLibrary::load_dir(dir).unwrap();
        for id in &ids {
            lib.insert(derive_base(id).unwrap());
            eprintln!("{id}: done");
        }
        lib
    };
    lib.write_dir(dir).unwrap();
}
