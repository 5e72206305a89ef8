//! Input files: a Hermitian tuple in JSON object notation.
//!
//! ```json
//! {
//!   "d": 2,
//!   "k": 2,
//!   "matrices": [
//!     { "re": [[0.0, 0.5], [0.5, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]] },
//!     ...
//!   ]
//! }
//! ```
//!
//! Each matrix is given as separate `d x d` real and imaginary parts
//! (entry `re[i][j] + i*im[i][j]`) and must be Hermitian within a relative
//! tolerance of 1e-9; anything worse is rejected rather than symmetrized,
//! since a visibly non-Hermitian input is almost always a transposition bug
//! on the caller's side.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use numrange::linalg::Complex64;
use numrange::{HermitianMatrix, Pencil};
use serde::Deserialize;
use sha2::{Digest, Sha256};

/// Hermiticity tolerance applied to input matrices (relative to the largest
/// entry). Looser than the library default so that inputs printed with ~10
/// significant digits still load.
pub const INPUT_HERMITIAN_TOL: f64 = 1e-9;

#[derive(Deserialize)]
struct MatrixFile {
    d: usize,
    k: usize,
    matrices: Vec<MatrixEntry>,
}

#[derive(Deserialize)]
struct MatrixEntry {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// A parsed input: the Hermitian tuple plus provenance for the run report.
#[derive(Debug)]
pub struct LoadedInput {
    pub pencil: Pencil,
    /// SHA-256 of the raw file bytes, hex-encoded.
    pub digest: String,
    pub path: PathBuf,
}

/// Reads and validates a tuple file. Parse errors keep serde_json's
/// line/column context; shape and Hermiticity errors name the offending
/// matrix.
pub fn load(path: &Path) -> Result<LoadedInput> {
    let bytes =
        fs::read(path).with_context(|| format!("cannot read input file {}", path.display()))?;
    let parsed: MatrixFile = serde_json::from_slice(&bytes)
        .with_context(|| format!("invalid input file {}", path.display()))?;

    if parsed.d == 0 {
        bail!("{}: matrix order d must be positive", path.display());
    }
    if parsed.k == 0 {
        bail!("{}: tuple length k must be positive", path.display());
    }
    if parsed.matrices.len() != parsed.k {
        bail!(
            "{}: expected k = {} matrices, found {}",
            path.display(),
            parsed.k,
            parsed.matrices.len()
        );
    }

    let mut coeffs = Vec::with_capacity(parsed.k);
    for (index, entry) in parsed.matrices.iter().enumerate() {
        let matrix = build_matrix(parsed.d, entry)
            .with_context(|| format!("{}: matrix {}", path.display(), index + 1))?;
        coeffs.push(matrix);
    }

    let pencil = Pencil::new(coeffs)?;
    Ok(LoadedInput {
        pencil,
        digest: hex_digest(&bytes),
        path: path.to_path_buf(),
    })
}

fn build_matrix(d: usize, entry: &MatrixEntry) -> Result<HermitianMatrix> {
    check_shape(d, &entry.re, "re")?;
    check_shape(d, &entry.im, "im")?;
    let mut data = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            data.push(Complex64::new(entry.re[i][j], entry.im[i][j]));
        }
    }
    HermitianMatrix::with_tolerance(d, data, INPUT_HERMITIAN_TOL)
        .map_err(|e| anyhow::anyhow!("not Hermitian within {INPUT_HERMITIAN_TOL:.0e}: {e}"))
}

fn check_shape(d: usize, part: &[Vec<f64>], name: &str) -> Result<()> {
    if part.len() != d {
        bail!("field `{name}` has {} rows, expected {d}", part.len());
    }
    for (i, row) in part.iter().enumerate() {
        if row.len() != d {
            bail!("field `{name}` row {} has {} entries, expected {d}", i + 1, row.len());
        }
    }
    Ok(())
}

fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for byte in digest {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(contents: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(contents.as_bytes()).unwrap();
        file
    }

    #[test]
    fn loads_a_pair_and_digests_the_bytes() {
        let file = write_temp(
            r#"{"d":2,"k":2,"matrices":[
                {"re":[[1.0,0.0],[0.0,-1.0]],"im":[[0.0,0.0],[0.0,0.0]]},
                {"re":[[0.0,0.5],[0.5,0.0]],"im":[[0.0,-0.5],[0.5,0.0]]}
            ]}"#,
        );
        let loaded = load(file.path()).unwrap();
        assert_eq!(loaded.pencil.order(), 2);
        assert_eq!(loaded.pencil.arity(), 2);
        assert_eq!(loaded.digest.len(), 64);
        assert!(loaded.digest.chars().all(|c| c.is_ascii_hexdigit()));
        // Identical bytes hash identically; a different file does not.
        let again = load(file.path()).unwrap();
        assert_eq!(loaded.digest, again.digest);
    }

    #[test]
    fn missing_file_error_names_the_path() {
        let err = load(Path::new("/nonexistent/tuple.json")).unwrap_err();
        assert!(format!("{err:#}").contains("/nonexistent/tuple.json"));
    }

    #[test]
    fn parse_error_reports_line_context() {
        let file = write_temp("{\n  \"d\": 2,\n  \"k\": oops\n}");
        let err = load(file.path()).unwrap_err();
        let text = format!("{err:#}");
        assert!(text.contains("line 3"), "no line context in: {text}");
    }

    #[test]
    fn wrong_matrix_count_is_rejected() {
        let file = write_temp(
            r#"{"d":1,"k":2,"matrices":[{"re":[[1.0]],"im":[[0.0]]}]}"#,
        );
        let err = load(file.path()).unwrap_err();
        assert!(format!("{err:#}").contains("expected k = 2"));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let file = write_temp(
            r#"{"d":2,"k":1,"matrices":[{"re":[[1.0,0.0],[0.0]],"im":[[0.0,0.0],[0.0,0.0]]}]}"#,
        );
        let err = load(file.path()).unwrap_err();
        let text = format!("{err:#}");
        assert!(text.contains("matrix 1") && text.contains("row 2"), "got: {text}");
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let file = write_temp(
            r#"{"d":2,"k":1,"matrices":[{"re":[[0.0,1.0],[0.0,0.0]],"im":[[0.0,0.0],[0.0,0.0]]}]}"#,
        );
        let err = load(file.path()).unwrap_err();
        assert!(format!("{err:#}").contains("not Hermitian"));
    }

    #[test]
    fn hermitian_within_loose_tolerance_is_accepted() {
        // Off by 1e-10 relative: inside the 1e-9 input tolerance, outside the
        // strict library default.
        let file = write_temp(
            r#"{"d":2,"k":1,"matrices":[{"re":[[0.0,0.5],[0.5000000001,0.0]],"im":[[0.0,0.0],[0.0,0.0]]}]}"#,
        );
        assert!(load(file.path()).is_ok());
    }
}
