//! CSV table formats and small argument parsers.
//!
//! Function tables: `point_encoding,re,im`. Spectra: `index,re,im`.
//! Maximal fields: `point_encoding,value,tail_bound` (the tail bound is a
//! property of the whole field, repeated per row for plot-ready flatness).
//! Floats are written in Rust's shortest round-trip form, so identical runs
//! produce identical bytes.

use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use vilenkin_core::hardy::DivergenceReport;
use vilenkin_core::means::{MaximalField, Weight};
use vilenkin_core::{Complex64, GroupFunction, GroupSpec, Spectrum};

fn read_complex_table(
    path: &Path,
    spec: &Arc<GroupSpec>,
    key_column: &str,
) -> Result<Vec<Complex64>> {
    let mut reader =
        csv::Reader::from_path(path).with_context(|| format!("cannot open {}", path.display()))?;
    {
        let headers = reader.headers()?;
        let expected = [key_column, "re", "im"];
        if headers.len() != 3 || headers.iter().zip(expected).any(|(h, e)| h != e) {
            bail!(
                "{}: expected header {}, got {:?}",
                path.display(),
                expected.join(","),
                headers
            );
        }
    }
    let total = spec.point_count();
    let mut values = vec![None; total as usize];
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let key: u64 = record[0]
            .parse()
            .with_context(|| format!("row {line}: bad key"))?;
        if key >= total {
            bail!("row {line}: {key_column} {key} out of range 0..{total}");
        }
        let re: f64 = record[1]
            .parse()
            .with_context(|| format!("row {line}: bad re"))?;
        let im: f64 = record[2]
            .parse()
            .with_context(|| format!("row {line}: bad im"))?;
        if values[key as usize]
            .replace(Complex64::new(re, im))
            .is_some()
        {
            bail!("row {line}: duplicate {key_column} {key}");
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.with_context(|| format!("missing {key_column} {i}")))
        .collect()
}

pub fn read_group_function(path: &Path, spec: &Arc<GroupSpec>) -> Result<GroupFunction> {
    let values = read_complex_table(path, spec, "point_encoding")?;
    Ok(GroupFunction::new(spec.clone(), values)?)
}

pub fn read_spectrum(path: &Path, spec: &Arc<GroupSpec>) -> Result<Spectrum> {
    let values = read_complex_table(path, spec, "index")?;
    Ok(Spectrum::new(spec.clone(), values)?)
}

fn write_complex_table(path: &Path, key_column: &str, values: &[Complex64]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    writer.write_record([key_column, "re", "im"])?;
    for (i, v) in values.iter().enumerate() {
        writer.write_record([i.to_string(), v.re.to_string(), v.im.to_string()])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_group_function(path: &Path, f: &GroupFunction) -> Result<()> {
    write_complex_table(path, "point_encoding", f.values())
}

pub fn write_spectrum(path: &Path, s: &Spectrum) -> Result<()> {
    write_complex_table(path, "index", s.coeffs())
}

pub fn write_maximal_field(path: &Path, field: &MaximalField) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["point_encoding", "value", "tail_bound"])?;
    let tail = field.tail_bound().to_string();
    for (i, v) in field.values().iter().enumerate() {
        writer.write_record([&i.to_string(), &v.to_string(), &tail])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_divergence_table(path: &Path, reports: &[DivergenceReport]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["n_k", "q_nk", "H12_norm", "L12_integral", "ratio"])?;
    for r in reports {
        writer.write_record([
            r.index.to_string(),
            r.q.to_string(),
            r.h12.to_string(),
            r.l12_integral.to_string(),
            r.ratio.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

pub struct AtomRow {
    pub sample: u64,
    pub integral_lo: f64,
    pub integral_hi: f64,
}

pub fn write_atom_table(path: &Path, rows: &[AtomRow]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["sample", "integral_lo", "integral_hi"])?;
    for r in rows {
        writer.write_record([
            r.sample.to_string(),
            r.integral_lo.to_string(),
            r.integral_hi.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Weight names: `one`, `log2sq`, `logpow:GAMMA`.
pub fn parse_weight(text: &str) -> Result<Weight> {
    if text == "one" {
        return Ok(Weight::One);
    }
    if text == "log2sq" {
        return Ok(Weight::log_squared());
    }
    if let Some(gamma) = text.strip_prefix("logpow:") {
        let gamma: f64 = gamma.parse().context("bad exponent in logpow:GAMMA")?;
        if !gamma.is_finite() || gamma < 0.0 {
            bail!("logpow exponent must be a nonnegative number");
        }
        return Ok(Weight::log_power(gamma));
    }
    bail!("unknown weight {text:?}; expected one | log2sq | logpow:GAMMA")
}

/// Inclusive index range "a..b".
pub fn parse_index_range(text: &str) -> Result<(usize, usize)> {
    let (a, b) = text.split_once("..").context("range must look like a..b")?;
    let a: usize = a.trim().parse().context("bad range start")?;
    let b: usize = b.trim().parse().context("bad range end")?;
    if a == 0 || b < a {
        bail!("range must satisfy 1 <= a <= b, got {a}..{b}");
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_names() {
        assert!(matches!(parse_weight("one").unwrap(), Weight::One));
        assert!(parse_weight("log2sq").is_ok());
        assert!(parse_weight("logpow:1.5").is_ok());
        assert!(parse_weight("logpow:x").is_err());
        assert!(parse_weight("banana").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_index_range("1..5").unwrap(), (1, 5));
        assert_eq!(parse_index_range("3..3").unwrap(), (3, 3));
        assert!(parse_index_range("0..2").is_err());
        assert!(parse_index_range("5..2").is_err());
        assert!(parse_index_range("5").is_err());
    }

    #[test]
    fn malformed_tables_are_rejected() {
        use std::io::Write;
        let spec = Arc::new(vilenkin_core::GroupSpec::new(&[2, 2], 2).unwrap());
        let dir = std::env::temp_dir();

        let bad_header = dir.join("vilenkin_io_test_bad_header.csv");
        let mut f = std::fs::File::create(&bad_header).unwrap();
        writeln!(f, "idx,re,im\n0,1,0\n1,0,0\n2,0,0\n3,0,0").unwrap();
        assert!(read_group_function(&bad_header, &spec).is_err());

        let missing_row = dir.join("vilenkin_io_test_missing_row.csv");
        let mut f = std::fs::File::create(&missing_row).unwrap();
        writeln!(f, "point_encoding,re,im\n0,1,0\n1,0,0\n2,0,0").unwrap();
        assert!(read_group_function(&missing_row, &spec).is_err());

        let duplicate = dir.join("vilenkin_io_test_duplicate.csv");
        let mut f = std::fs::File::create(&duplicate).unwrap();
        writeln!(f, "point_encoding,re,im\n0,1,0\n0,1,0\n2,0,0\n3,0,0").unwrap();
        assert!(read_group_function(&duplicate, &spec).is_err());

        for path in [bad_header, missing_row, duplicate] {
            let _ = std::fs::remove_file(path);
        }
    }
}
