//! Rewrites the frozen builtin documents from the oracles.

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for name in anglecat::builtin::NAMES {
        let text = anglecat::builtin::regenerate(name).expect("builtin");
        std::fs::write(dir.join(format!("{name}.json")), text).expect("write");
        println!("wrote {name}.json");
    }
}
