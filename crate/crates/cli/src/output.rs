//! CSV output with exact real values.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

pub const VERDICT_COLUMNS: [&str; 12] = [
    "scheme",
    "eps_inf",
    "eps_s",
    "t_r_or_omega1",
    "nu",
    "k",
    "h",
    "xi",
    "q",
    "stable",
    "argument",
    "max_root_modulus",
];

pub const GROWTH_COLUMNS: [&str; 3] = ["step", "norm", "ratio"];

/// Scientific notation with 17 significant digits, which reads back as the
/// same double.
pub fn real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Relative output paths are placed under `FDTD_STAB_OUT_DIR` when set.
pub fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os("FDTD_STAB_OUT_DIR") {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Writes a header and rows to `path`, or to stdout when there is no path.
pub fn emit_csv(header: &[&str], rows: &[Vec<String>], path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let p = resolve(p);
            let io = |source| CliError::Io { path: p.clone(), source };
            let file = std::fs::File::create(&p).map_err(io)?;
            write_rows(file, header, rows).map_err(io)
        }
        None => write_rows(std::io::stdout().lock(), header, rows)
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
    }
}

fn write_rows<W: Write>(w: W, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for r in rows {
        out.write_record(r)?;
    }
    out.flush()
}
