//! CSV and plot-data files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::SweepError;
use crate::sweep::SweepRecord;

pub const CSV_HEADER: [&str; 14] = [
    "theta_over_pi",
    "phi_over_pi",
    "s",
    "t",
    "u",
    "v",
    "trace_norm",
    "deg_corr",
    "separable",
    "sep_degree",
    "one_minus_S",
    "p",
    "nbar",
    "n_max",
];

/// 17 significant digits, enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn row(r: &SweepRecord) -> [String; 14] {
    [
        num(r.theta_over_pi),
        num(r.phi_over_pi),
        num(r.s),
        num(r.t),
        num(r.u),
        num(r.v),
        num(r.trace_norm),
        num(r.deg_corr),
        u8::from(r.separable).to_string(),
        num(r.sep_degree),
        num(r.one_minus_s),
        num(r.p),
        num(r.nbar),
        r.n_max.to_string(),
    ]
}

pub fn write_csv_to<W: Write>(w: W, records: &[SweepRecord]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in records {
        out.write_record(row(r))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv(path: &Path, records: &[SweepRecord]) -> Result<(), SweepError> {
    let file = File::create(path).map_err(|source| SweepError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv_to(BufWriter::new(file), records).map_err(|source| SweepError::Csv {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRecord>, SweepError> {
    let csv_err = |source| SweepError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let parse_err = |reason: String| SweepError::Parse {
        path: path.to_path_buf(),
        reason,
    };
    let mut reader = csv::Reader::from_path(path).map_err(csv_err)?;
    let header = reader.headers().map_err(csv_err)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(parse_err(format!("unexpected header {header:?}")));
    }
    let mut out = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let field = |i: usize| -> Result<f64, SweepError> {
            rec.get(i)
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| parse_err(format!("row {}: bad {}", line + 1, CSV_HEADER[i])))
        };
        let separable = match rec.get(8) {
            Some("0") => false,
            Some("1") => true,
            _ => return Err(parse_err(format!("row {}: bad separable", line + 1))),
        };
        let n_max = rec
            .get(13)
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| parse_err(format!("row {}: bad n_max", line + 1)))?;
        out.push(SweepRecord {
            theta_over_pi: field(0)?,
            phi_over_pi: field(1)?,
            s: field(2)?,
            t: field(3)?,
            u: field(4)?,
            v: field(5)?,
            trace_norm: field(6)?,
            deg_corr: field(7)?,
            separable,
            sep_degree: field(9)?,
            one_minus_s: field(10)?,
            p: field(11)?,
            nbar: field(12)?,
            n_max,
        });
    }
    Ok(out)
}

/// Two whitespace-separated blocks for plotting tools: `θ/π` against the
/// trace norm, then `θ/π` against `1 − S`.
pub fn write_plot_data_to<W: Write>(mut w: W, records: &[SweepRecord]) -> std::io::Result<()> {
    writeln!(w, "# theta_over_pi trace_norm")?;
    for r in records {
        writeln!(w, "{} {}", num(r.theta_over_pi), num(r.trace_norm))?;
    }
    writeln!(w)?;
    writeln!(w)?;
    writeln!(w, "# theta_over_pi one_minus_S")?;
    for r in records {
        writeln!(w, "{} {}", num(r.theta_over_pi), num(r.one_minus_s))?;
    }
    w.flush()
}

pub fn write_plot_data(path: &Path, records: &[SweepRecord]) -> Result<(), SweepError> {
    let io_err = |source| SweepError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    write_plot_data_to(BufWriter::new(file), records).map_err(io_err)
}
