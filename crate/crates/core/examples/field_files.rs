//! Writing and reading sampled fields and windowed spectra.

use woclct::field_io::{
    decode_field, encode_field, read_field, read_result, write_field, write_result,
};
use woclct::transform::woclct_forward;
use woclct::{generate_signal, RunConfig, SignalSpec};

fn main() -> woclct::Result<()> {
    let dir = std::env::temp_dir().join("woclct-field-files");
    std::fs::create_dir_all(&dir)?;
    let config = RunConfig::default();
    let spec = SignalSpec::RandomOctonion {
        seed: 3,
        center: [0.0; 3],
        widths: [1.0; 3],
    };
    let f = generate_signal(&spec, &config.grids.t)?;

    let bytes = encode_field(&f);
    println!(
        "binary field: {} bytes, round trip equal: {}",
        bytes.len(),
        decode_field(&bytes)? == f
    );
    for name in ["f.oct", "f.json"] {
        let path = dir.join(name);
        write_field(&path, &f)?;
        println!(
            "{}: equal after reading: {}",
            path.display(),
            read_field(&path)? == f
        );
    }

    let p = config.prepare()?;
    let g = woclct_forward(&p.f, &p.w, &config.params, &p.grids.omega, &p.grids.mu)?;
    let path = dir.join("g.ocw");
    write_result(&path, &g)?;
    println!(
        "{}: {} values, equal: {}",
        path.display(),
        g.values.len(),
        read_result(&path)? == g
    );
    Ok(())
}
