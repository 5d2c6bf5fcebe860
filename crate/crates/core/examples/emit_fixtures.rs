//! Regenerates `fixtures/`: `cargo run -p nexang-core --example emit_fixtures [DIR]`.

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("fixtures"));
    std::fs::create_dir_all(&dir)?;
    for (name, file) in nexang_core::schema::shipped_fixtures() {
        std::fs::write(dir.join(name), file.to_json())?;
    }
    Ok(())
}
