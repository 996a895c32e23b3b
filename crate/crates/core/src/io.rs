//! CSV and word-file formats, plus atomic file output.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use num_bigint::BigUint;

use crate::correlation::CorrelationSample;
use crate::energy::EnergyReport;
use crate::fixed::decimal_string;
use crate::gaps::GapProfile;
use crate::rational::to_f64;
use crate::stoneham::TernaryRational;
use crate::words::Word;
use crate::{Error, PointSet, Result};

/// Significant digits of the informational `decimal` column.
pub const DECIMAL_DIGITS: usize = 20;

/// Points CSV: `index,numerator,scale_bits,decimal`, indices from 1.
pub fn write_points<W: Write>(out: W, ps: &PointSet) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "numerator", "scale_bits", "decimal"])?;
    let bits = ps.scale_bits().to_string();
    for (i, x) in ps.numerators().iter().enumerate() {
        w.write_record([
            (i + 1).to_string(),
            x.to_string(),
            bits.clone(),
            decimal_string(x, ps.scale_bits(), DECIMAL_DIGITS),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a points CSV back. The `decimal` column is ignored.
pub fn read_points<R: Read>(input: R, provenance: &str) -> Result<PointSet> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    let expected = ["index", "numerator", "scale_bits", "decimal"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(Error::Parse(format!("points CSV header must be `{}`", expected.join(","))));
    }
    let mut bits: Option<u32> = None;
    let mut points = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        let field = |i: usize| rec.get(i).unwrap_or("");
        let bad = |what: &str| Error::Parse(format!("row {}: bad {what}", row + 1));
        let index: usize = field(0).parse().map_err(|_| bad("index"))?;
        if index != row + 1 {
            return Err(bad("index (rows must be numbered 1..N)"));
        }
        let x: BigUint = field(1).parse().map_err(|_| bad("numerator"))?;
        let b: u32 = field(2).parse().map_err(|_| bad("scale_bits"))?;
        match bits {
            None => bits = Some(b),
            Some(p) if p != b => return Err(Error::PrecisionMismatch { left: p, right: b }),
            _ => {}
        }
        points.push(x);
    }
    let bits = bits.ok_or_else(|| Error::DegenerateInput("points CSV has no rows".into()))?;
    PointSet::new(bits, points, provenance)
}

pub fn read_points_file(path: &Path) -> Result<PointSet> {
    read_points(fs::File::open(path)?, &path.display().to_string())
}

/// Correlation CSV: `s,count,f`.
pub fn write_correlation<W: Write>(out: W, samples: &[CorrelationSample]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["s", "count", "f"])?;
    for c in samples {
        w.write_record([to_f64(&c.s).to_string(), c.count.to_string(), c.f64().to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Gap CSV: `length_numerator,scale_bits,multiplicity`.
pub fn write_gaps<W: Write>(out: W, profile: &GapProfile) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["length_numerator", "scale_bits", "multiplicity"])?;
    for g in &profile.gaps {
        w.write_record([g.length.to_string(), profile.scale_bits.to_string(), g.multiplicity.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Scan CSV: `N,distinct_gaps`.
pub fn write_scan<W: Write>(out: W, rows: &[(usize, usize)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["N", "distinct_gaps"])?;
    for (n, d) in rows {
        w.write_record([n.to_string(), d.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Energy CSV: `N,energy,ratio`.
pub fn write_energy<W: Write>(out: W, reports: &[EnergyReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["N", "energy", "ratio"])?;
    for r in reports {
        w.write_record([r.n.to_string(), r.energy.to_string(), to_f64(&r.ratio).to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// z-sequence CSV: `n,numerator,exponent`.
pub fn write_z<W: Write>(out: W, zs: &[TernaryRational]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "numerator", "exponent"])?;
    for (n, z) in zs.iter().enumerate() {
        w.write_record([n.to_string(), z.numerator().to_string(), z.exponent().to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Word file: `k m` on the first line, then the symbols, contiguous for
/// `k <= 10` and space-separated otherwise. `m` is the de Bruijn order the
/// word was built for.
pub fn format_word(w: &Word, order: u32) -> String {
    let body = if w.alphabet() <= 10 {
        w.to_string()
    } else {
        w.symbols().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
    };
    format!("{} {}\n{}\n", w.alphabet(), order, body)
}

/// Parses a word file, returning the word and its declared order.
pub fn parse_word(text: &str) -> Result<(Word, u32)> {
    let mut lines = text.lines();
    let head = lines.next().ok_or_else(|| Error::Parse("empty word file".into()))?;
    let nums: Vec<u32> = head
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad word header `{head}`"))))
        .collect::<Result<_>>()?;
    let [k, m] = nums[..] else {
        return Err(Error::Parse(format!("word header must be `k m`, got `{head}`")));
    };
    let body: String = lines.collect::<Vec<_>>().join(" ");
    let body = body.trim();
    let symbols: Vec<u32> = if body.contains(char::is_whitespace) || k > 10 {
        body.split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad symbol `{t}`"))))
            .collect::<Result<_>>()?
    } else {
        body.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad symbol `{c}`"))))
            .collect::<Result<_>>()?
    };
    Ok((Word::new(k, symbols)?, m))
}

pub fn read_word_file(path: &Path) -> Result<Word> {
    Ok(parse_word(&fs::read_to_string(path)?)?.0)
}

/// Writes `bytes` to a temporary sibling of `path`, then renames it into
/// place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path.file_name().ok_or_else(|| Error::InvalidParams(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}
