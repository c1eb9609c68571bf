//! JSON interchange for states, POVMs, and channels, plus atomic file
//! replacement for reports.
//!
//! Operator files carry a labeled dimension profile and row-major real and
//! imaginary grids; the writer emits 17 significant digits so values survive
//! a round trip bit-exactly.  The state reader checks hermiticity and unit
//! trace but deliberately not positivity: a near-physical input should load
//! and fail honestly during evaluation, not be rejected at the door.

use std::io::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::channel::{isometry_from_kraus, ChannelPair, ChannelSide};
use crate::measurement::Povm;
use crate::operator::{sup_norm, CMat, DensityOperator, DimsProfile, C64};
use crate::{Error, Result};

/// Residual allowed on hermiticity and trace when reading a state file.
pub const TOL_READ: f64 = 1e-8;

#[derive(Serialize, Deserialize)]
struct OperatorFile {
    dims: Vec<(String, usize)>,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct PovmFile {
    subsystem: String,
    elements: Vec<OperatorFile>,
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct ChannelFile {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<MatrixFile>,
}

/// Emits floating-point values with 17 significant digits instead of the
/// shortest round-trip form.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W: ?Sized + std::io::Write>(
        &mut self,
        writer: &mut W,
        value: f64,
    ) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

fn to_sci_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Format(e.to_string()))?;
    let mut text = String::from_utf8(buf).expect("serializer output is utf-8");
    text.push('\n');
    Ok(text)
}

fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

fn grids(m: &CMat) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let re = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].re).collect())
        .collect();
    let im = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].im).collect())
        .collect();
    (re, im)
}

fn matrix_from_grids(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<CMat> {
    let rows = re.len();
    if rows == 0 {
        return Err(Error::Format("matrix with no rows".into()));
    }
    let cols = re[0].len();
    if cols == 0 {
        return Err(Error::Format("matrix with no columns".into()));
    }
    if im.len() != rows
        || re.iter().any(|r| r.len() != cols)
        || im.iter().any(|r| r.len() != cols)
    {
        return Err(Error::Format(
            "real and imaginary grids must be rectangular and of equal shape".into(),
        ));
    }
    Ok(CMat::from_fn(rows, cols, |i, j| {
        C64::new(re[i][j], im[i][j])
    }))
}

fn operator_file(m: &CMat, dims: &DimsProfile) -> OperatorFile {
    let (re, im) = grids(m);
    OperatorFile {
        dims: dims.parts().to_vec(),
        re,
        im,
    }
}

pub fn write_state(path: &Path, rho: &DensityOperator) -> Result<()> {
    atomic_write(path, &to_sci_json(&operator_file(rho.mat(), rho.dims()))?)
}

/// Reads a density operator, accepting anything hermitian with unit trace.
pub fn read_state(path: &Path) -> Result<DensityOperator> {
    let file: OperatorFile = parse_json(&std::fs::read_to_string(path)?)?;
    let dims = DimsProfile::from_vec(file.dims)?;
    let mat = matrix_from_grids(&file.re, &file.im)?;
    if mat.nrows() != mat.ncols() {
        return Err(Error::Format(format!(
            "state matrix is {}x{}, expected square",
            mat.nrows(),
            mat.ncols()
        )));
    }
    if mat.nrows() != dims.total() {
        return Err(Error::DimMismatch(format!(
            "state matrix has dimension {} but the dims profile gives {}",
            mat.nrows(),
            dims.total()
        )));
    }
    let herm = sup_norm(&(&mat - mat.adjoint()));
    if herm > TOL_READ {
        return Err(Error::Format(format!(
            "state file is not hermitian (residual {herm:.3e})"
        )));
    }
    let trace = mat.trace();
    if (trace.re - 1.0).abs() > TOL_READ || trace.im.abs() > TOL_READ {
        return Err(Error::Format(format!(
            "state file has trace {trace}, expected 1"
        )));
    }
    Ok(DensityOperator::new_unvalidated(mat, dims))
}

pub fn write_povm(path: &Path, povm: &Povm) -> Result<()> {
    let dims = DimsProfile::single(povm.label(), povm.dim())?;
    let file = PovmFile {
        subsystem: povm.label().into(),
        elements: povm
            .elements()
            .iter()
            .map(|e| operator_file(e, &dims))
            .collect(),
    };
    atomic_write(path, &to_sci_json(&file)?)
}

/// Reads a POVM; elements must share the subsystem label and pass the full
/// positivity and completeness checks.
pub fn read_povm(path: &Path) -> Result<Povm> {
    let file: PovmFile = parse_json(&std::fs::read_to_string(path)?)?;
    let mut mats = Vec::with_capacity(file.elements.len());
    let mut dim = None;
    for (j, element) in file.elements.iter().enumerate() {
        let dims = DimsProfile::from_vec(element.dims.clone())?;
        if dims.len() != 1 || dims.labels().next() != Some(file.subsystem.as_str()) {
            return Err(Error::Format(format!(
                "POVM element {j} is labeled [{dims}], expected the subsystem `{}`",
                file.subsystem
            )));
        }
        let mat = matrix_from_grids(&element.re, &element.im)?;
        if mat.nrows() != mat.ncols() || mat.nrows() != dims.total() {
            return Err(Error::DimMismatch(format!(
                "POVM element {j} is {}x{} under a profile of dimension {}",
                mat.nrows(),
                mat.ncols(),
                dims.total()
            )));
        }
        match dim {
            None => dim = Some(mat.nrows()),
            Some(d) if d != mat.nrows() => {
                return Err(Error::DimMismatch(format!(
                    "POVM elements disagree on dimension ({d} vs {})",
                    mat.nrows()
                )));
            }
            Some(_) => {}
        }
        mats.push(mat);
    }
    let dim = dim.ok_or_else(|| Error::Format("POVM file with no elements".into()))?;
    Povm::new(&file.subsystem, dim, mats)
}

/// Writes the direct-side Kraus operators; the complementary side is
/// recovered on load from the same dilation.
pub fn write_channel(path: &Path, pair: &ChannelPair) -> Result<()> {
    let direct = pair.side(ChannelSide::Direct);
    let file = ChannelFile {
        dim_in: direct.dim_in(),
        dim_out: direct.dim_out(),
        kraus: direct
            .kraus()
            .iter()
            .map(|k| {
                let (re, im) = grids(k);
                MatrixFile { re, im }
            })
            .collect(),
    };
    atomic_write(path, &to_sci_json(&file)?)
}

/// Reads a channel as its Kraus operators and rebuilds the canonical
/// dilation, checking trace preservation.
pub fn read_channel(path: &Path) -> Result<ChannelPair> {
    let file: ChannelFile = parse_json(&std::fs::read_to_string(path)?)?;
    let mut kraus = Vec::with_capacity(file.kraus.len());
    for (l, k) in file.kraus.iter().enumerate() {
        let mat = matrix_from_grids(&k.re, &k.im)?;
        if mat.nrows() != file.dim_out || mat.ncols() != file.dim_in {
            return Err(Error::DimMismatch(format!(
                "Kraus operator {l} is {}x{}, expected {}x{}",
                mat.nrows(),
                mat.ncols(),
                file.dim_out,
                file.dim_in
            )));
        }
        kraus.push(mat);
    }
    Ok(ChannelPair::from_isometry(isometry_from_kraus(kraus)?))
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never observe a partial file.
pub fn atomic_write(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::random_isometry;
    use crate::measurement::random_rank1_povm;
    use crate::rng::{random_density, seeded};

    fn dir() -> tempfile::TempDir {
        tempfile::tempdir().unwrap()
    }

    #[test]
    fn state_round_trip_is_bit_exact() {
        let d = dir();
        let path = d.path().join("state.json");
        let dims = DimsProfile::new(&[("a", 2), ("b", 3)]).unwrap();
        let rho = random_density(&mut seeded(5), dims);
        write_state(&path, &rho).unwrap();
        let back = read_state(&path).unwrap();
        assert_eq!(rho.dims(), back.dims());
        assert_eq!(rho.mat(), back.mat());
    }

    #[test]
    fn state_reader_validates_shape_hermiticity_and_trace() {
        let d = dir();
        let path = d.path().join("bad.json");
        let write = |text: &str| std::fs::write(&path, text).unwrap();

        write("{not json");
        assert!(matches!(read_state(&path), Err(Error::Format(_))));

        write(r#"{"dims": [["a", 3]], "re": [[1.0, 0.0], [0.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#);
        assert!(matches!(read_state(&path), Err(Error::DimMismatch(_))));

        write(r#"{"dims": [["a", 2]], "re": [[1.0, 0.5], [0.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#);
        assert!(matches!(read_state(&path), Err(Error::Format(_))));

        write(r#"{"dims": [["a", 2]], "re": [[1.0, 0.0], [0.0, 1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#);
        assert!(matches!(read_state(&path), Err(Error::Format(_))));
    }

    #[test]
    fn state_reader_accepts_non_positive_hermitian_input() {
        let d = dir();
        let path = d.path().join("sharp.json");
        std::fs::write(
            &path,
            r#"{"dims": [["a", 2]], "re": [[1.1, 0.0], [0.0, -0.1]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#,
        )
        .unwrap();
        let rho = read_state(&path).unwrap();
        assert!((rho.mat()[(1, 1)].re + 0.1).abs() < 1e-15);
    }

    #[test]
    fn povm_round_trip_preserves_elements() {
        let d = dir();
        let path = d.path().join("povm.json");
        let povm = random_rank1_povm("a", 3, 5, 11).unwrap();
        write_povm(&path, &povm).unwrap();
        let back = read_povm(&path).unwrap();
        assert_eq!(back.label(), "a");
        assert_eq!(back.len(), povm.len());
        for (x, y) in povm.elements().iter().zip(back.elements()) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn povm_reader_rejects_mislabeled_elements() {
        let d = dir();
        let path = d.path().join("povm.json");
        std::fs::write(
            &path,
            r#"{"subsystem": "a", "elements": [
                {"dims": [["b", 2]], "re": [[1.0, 0.0], [0.0, 1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}
            ]}"#,
        )
        .unwrap();
        assert!(matches!(read_povm(&path), Err(Error::Format(_))));
    }

    #[test]
    fn channel_round_trip_preserves_the_dilation() {
        let d = dir();
        let path = d.path().join("channel.json");
        let pair = ChannelPair::from_isometry(random_isometry(2, 3, 4, 3).unwrap());
        write_channel(&path, &pair).unwrap();
        let back = read_channel(&path).unwrap();
        assert_eq!(pair.isometry().mat(), back.isometry().mat());
    }

    #[test]
    fn channel_reader_rejects_non_trace_preserving_kraus() {
        let d = dir();
        let path = d.path().join("channel.json");
        std::fs::write(
            &path,
            r#"{"dim_in": 2, "dim_out": 2, "kraus": [
                {"re": [[1.0, 0.0], [0.0, 0.5]], "im": [[0.0, 0.0], [0.0, 0.0]]}
            ]}"#,
        )
        .unwrap();
        assert!(read_channel(&path).is_err());
    }

    #[test]
    fn atomic_write_replaces_existing_content() {
        let d = dir();
        let path = d.path().join("report.json");
        atomic_write(&path, "first\n").unwrap();
        atomic_write(&path, "second\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second\n");
        assert_eq!(std::fs::read_dir(d.path()).unwrap().count(), 1);
    }
}
