use std::fs;
use std::io::Write;
use std::path::Path;

use super::{Dataset, Value};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CsvOptions {
    pub delimiter: u8,
    /// Columns given the `ignored` role during schema inference.
    pub ignored: Vec<String>,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            delimiter: b',',
            ignored: Vec::new(),
        }
    }
}

pub fn load_csv(path: impl AsRef<Path>, options: &CsvOptions) -> Result<Dataset> {
    let bytes = fs::read(path.as_ref())?;
    parse_csv(&bytes, options)
}

/// Parse CSV text in two passes: the first counts and validates records, the
/// second fills a matrix created at its final size.
pub fn parse_csv(bytes: &[u8], options: &CsvOptions) -> Result<Dataset> {
    let builder = {
        let mut b = ::csv::ReaderBuilder::new();
        b.delimiter(options.delimiter)
            .has_headers(true)
            .flexible(true)
            .trim(::csv::Trim::All);
        b
    };

    let mut reader = builder.from_reader(bytes);
    let header: Vec<String> = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_string)
        .collect();
    if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
        return Err(Error::Parse {
            line: 1,
            message: "missing header record".into(),
        });
    }

    let mut n_rows = 0usize;
    let mut record = ::csv::StringRecord::new();
    while reader.read_record(&mut record).map_err(csv_error)? {
        if record.len() != header.len() {
            return Err(Error::Parse {
                line: record.position().map_or(0, |p| p.line()),
                message: format!(
                    "record has {} fields, header has {}",
                    record.len(),
                    header.len()
                ),
            });
        }
        n_rows += 1;
    }

    let mut dataset = Dataset::create(n_rows, header.len())?;
    dataset.set_header(header)?;

    let mut reader = builder.from_reader(bytes);
    let mut i = 0;
    while reader.read_record(&mut record).map_err(csv_error)? {
        dataset.set_row(i, record.iter().map(Value::parse).collect())?;
        i += 1;
    }
    debug_assert_eq!(i, n_rows);

    for name in &options.ignored {
        dataset.ignore_column(name)?;
    }
    Ok(dataset)
}

pub fn write_csv<W: Write>(dataset: &Dataset, out: W, delimiter: u8) -> Result<()> {
    let mut writer = ::csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_writer(out);
    writer.write_record(dataset.header()).map_err(csv_error)?;
    for i in 0..dataset.n_rows() {
        let row = dataset.row(i)?;
        writer
            .write_record(row.iter().map(|v| v.to_string()))
            .map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

fn csv_error(err: ::csv::Error) -> Error {
    let line = err.position().map_or(0, |p| p.line());
    match err.into_kind() {
        ::csv::ErrorKind::Io(e) => Error::Io(e),
        kind => Error::Parse {
            line,
            message: format!("{kind:?}"),
        },
    }
}
