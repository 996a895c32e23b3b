//! Textual generator descriptors such as `kronecker:golden`, `ls:1,1` or
//! `shift:debruijn:6,3`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{Num, Zero};

use crate::generators::{
    digital_sequence, golden, kronecker, ls_sequence, random_points, shift_sequence, sqrt_frac, sqrt_sequence,
    van_der_corput, DigitalParams, LSParams,
};
use crate::stoneham::stoneham_bits;
use crate::words::{champernowne_stream, infinite_de_bruijn_prefix, periodic_stream, word_stream, DigitStream};
use crate::{Error, FixedPoint, PointSet, Result, DEFAULT_GUARD_DIGITS, DEFAULT_SCALE_BITS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaSpec {
    Golden,
    Sqrt(u64),
    Ratio(BigUint, BigUint),
    /// Hex digits after the radix point.
    Bits(String),
}

impl AlphaSpec {
    /// `alpha` on the `2^-bits` grid; irrational values are truncated.
    pub fn value(&self, bits: u32) -> Result<FixedPoint> {
        match self {
            AlphaSpec::Golden => Ok(golden(bits)),
            AlphaSpec::Sqrt(k) => Ok(sqrt_frac(*k, bits)),
            AlphaSpec::Ratio(p, q) => FixedPoint::from_ratio(p, q, bits),
            AlphaSpec::Bits(hex) => {
                let value = BigUint::from_str_radix(hex, 16).map_err(|_| Error::Parse(format!("bad hex `{hex}`")))?;
                let have = 4 * hex.len() as u32;
                FixedPoint::new(value, have).map(|f| f.rescale(bits))
            }
        }
    }
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSpec::Golden => write!(f, "golden"),
            AlphaSpec::Sqrt(k) => write!(f, "sqrt:{k}"),
            AlphaSpec::Ratio(p, q) => write!(f, "ratio:{p}/{q}"),
            AlphaSpec::Bits(h) => write!(f, "bits:{h}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixSpec {
    Identity,
    DuplicatedRow,
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StreamSpec {
    Champernowne,
    /// Prefix of the infinite de Bruijn word up to the given order.
    DeBruijn(u32),
    Stoneham,
    Periodic(Vec<u32>),
    WordFile(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Kronecker(AlphaSpec),
    Vdc(u32),
    Ls(u32, u32),
    Digital(u32, MatrixSpec),
    Shift(StreamSpec, u32),
    Random(u64),
    /// `{sqrt n}` over non-square `n`.
    SqrtN,
}

fn num<T: FromStr>(text: &str, what: &str) -> Result<T> {
    text.trim().parse().map_err(|_| Error::Parse(format!("bad {what} `{text}`")))
}

fn parse_alpha(text: &str) -> Result<AlphaSpec> {
    match text.split_once(':') {
        None if text == "golden" => Ok(AlphaSpec::Golden),
        Some(("sqrt", k)) => {
            let k: u64 = num(k, "sqrt argument")?;
            let r = num_integer::Roots::sqrt(&k);
            if r * r == k {
                return Err(Error::InvalidParams(format!("sqrt:{k} is rational")));
            }
            Ok(AlphaSpec::Sqrt(k))
        }
        Some(("ratio", pq)) => {
            let (p, q) = pq.split_once('/').ok_or_else(|| Error::Parse(format!("ratio needs p/q, got `{pq}`")))?;
            let (p, q): (BigUint, BigUint) = (num(p, "numerator")?, num(q, "denominator")?);
            if q.is_zero() {
                return Err(Error::InvalidParams("zero denominator".into()));
            }
            Ok(AlphaSpec::Ratio(p, q))
        }
        Some(("bits", hex)) => {
            if hex.is_empty() || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
                return Err(Error::Parse(format!("bad hex `{hex}`")));
            }
            Ok(AlphaSpec::Bits(hex.to_ascii_lowercase()))
        }
        _ => Err(Error::Parse(format!("unknown alpha spec `{text}`"))),
    }
}

fn parse_digits(text: &str) -> Result<Vec<u32>> {
    text.chars()
        .map(|c| c.to_digit(36).ok_or_else(|| Error::Parse(format!("bad digit `{c}`"))))
        .collect()
}

fn parse_stream(text: &str) -> Result<StreamSpec> {
    match text.split_once(':') {
        None if text == "champernowne" => Ok(StreamSpec::Champernowne),
        None if text == "stoneham" => Ok(StreamSpec::Stoneham),
        Some(("debruijn", m)) => Ok(StreamSpec::DeBruijn(num(m, "order")?)),
        Some(("periodic", d)) => Ok(StreamSpec::Periodic(parse_digits(d)?)),
        Some(("word", path)) => Ok(StreamSpec::WordFile(PathBuf::from(path))),
        _ => Err(Error::Parse(format!("unknown stream spec `{text}`"))),
    }
}

impl FromStr for Descriptor {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
        let d = match kind {
            "kronecker" => Descriptor::Kronecker(parse_alpha(rest)?),
            "vdc" => Descriptor::Vdc(num(rest, "base")?),
            "ls" => {
                let (l, s) = rest.split_once(',').ok_or_else(|| Error::Parse("ls needs L,S".into()))?;
                Descriptor::Ls(num(l, "L")?, num(s, "S")?)
            }
            "digital" => {
                let (b, m) = rest.split_once(',').ok_or_else(|| Error::Parse("digital needs b,<matrix>".into()))?;
                let spec = match m {
                    "identity" => MatrixSpec::Identity,
                    "duprow" => MatrixSpec::DuplicatedRow,
                    path => MatrixSpec::File(PathBuf::from(path)),
                };
                Descriptor::Digital(num(b, "base")?, spec)
            }
            "shift" => {
                let (s, b) = rest.rsplit_once(',').ok_or_else(|| Error::Parse("shift needs <stream>,b".into()))?;
                Descriptor::Shift(parse_stream(s)?, num(b, "base")?)
            }
            "random" => Descriptor::Random(num(rest, "seed")?),
            "sqrtn" if rest.is_empty() => Descriptor::SqrtN,
            _ => return Err(Error::Parse(format!("unknown generator `{text}`"))),
        };
        match &d {
            Descriptor::Vdc(b) | Descriptor::Digital(b, _) | Descriptor::Shift(_, b) if *b < 2 => {
                Err(Error::InvalidParams(format!("base must be >= 2, got {b}")))
            }
            _ => Ok(d),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Kronecker(a) => write!(f, "kronecker:{a}"),
            Descriptor::Vdc(b) => write!(f, "vdc:{b}"),
            Descriptor::Ls(l, s) => write!(f, "ls:{l},{s}"),
            Descriptor::Digital(b, m) => match m {
                MatrixSpec::Identity => write!(f, "digital:{b},identity"),
                MatrixSpec::DuplicatedRow => write!(f, "digital:{b},duprow"),
                MatrixSpec::File(p) => write!(f, "digital:{b},{}", p.display()),
            },
            Descriptor::Shift(s, b) => {
                let s = match s {
                    StreamSpec::Champernowne => "champernowne".to_string(),
                    StreamSpec::DeBruijn(m) => format!("debruijn:{m}"),
                    StreamSpec::Stoneham => "stoneham".to_string(),
                    StreamSpec::Periodic(d) => {
                        format!("periodic:{}", d.iter().map(|x| char::from_digit(*x, 36).unwrap_or('?')).collect::<String>())
                    }
                    StreamSpec::WordFile(p) => format!("word:{}", p.display()),
                };
                write!(f, "shift:{s},{b}")
            }
            Descriptor::Random(seed) => write!(f, "random:{seed}"),
            Descriptor::SqrtN => write!(f, "sqrtn"),
        }
    }
}

/// Smallest `m >= min` with `b^m >= n`.
fn digits_for(b: u32, n: usize, min: usize) -> usize {
    let mut m = min;
    while (u128::from(b)).pow(m as u32) < n as u128 {
        m += 1;
    }
    m
}

impl Descriptor {
    pub fn generate(&self, n: usize) -> Result<PointSet> {
        self.generate_with_bits(n, DEFAULT_SCALE_BITS)
    }

    /// First `n` points on the `2^-bits` grid, with this descriptor and the
    /// precision as provenance.
    pub fn generate_with_bits(&self, n: usize, bits: u32) -> Result<PointSet> {
        if n == 0 {
            return Err(Error::InvalidParams("N must be positive".into()));
        }
        let ps = match self {
            Descriptor::Kronecker(a) => kronecker(&a.value(bits)?, n)?,
            Descriptor::Vdc(b) => van_der_corput(*b, n, bits)?,
            Descriptor::Ls(l, s) => ls_sequence(&LSParams::new(*l, *s, bits)?, n)?,
            Descriptor::Digital(b, spec) => {
                let p = match spec {
                    MatrixSpec::Identity => DigitalParams::identity(*b, digits_for(*b, n, 1))?,
                    MatrixSpec::DuplicatedRow => DigitalParams::duplicated_row(*b, digits_for(*b, n, 2))?,
                    MatrixSpec::File(path) => DigitalParams::from_file(*b, path)?,
                };
                digital_sequence(&p, n, bits)?
            }
            Descriptor::Shift(spec, b) => {
                let stream = self.stream(spec, *b, n, bits)?;
                if stream.base() != *b {
                    return Err(Error::InvalidParams(format!(
                        "stream `{}` has base {}, descriptor says {b}",
                        stream.descriptor(),
                        stream.base()
                    )));
                }
                shift_sequence(stream.as_ref(), n, DEFAULT_GUARD_DIGITS, bits)?
            }
            Descriptor::Random(seed) => random_points(n, *seed, bits)?,
            Descriptor::SqrtN => sqrt_sequence(n, bits)?,
        };
        PointSet::new(bits, ps.into_numerators(), format!("{self} @ {bits} bits"))
    }

    fn stream(&self, spec: &StreamSpec, b: u32, n: usize, bits: u32) -> Result<Box<dyn DigitStream>> {
        Ok(match spec {
            StreamSpec::Champernowne => Box::new(champernowne_stream(b)?),
            StreamSpec::DeBruijn(m) => {
                let w = infinite_de_bruijn_prefix(b, *m)?;
                Box::new(word_stream(w, 0)?.with_label(format!("debruijn:{b}:{m}")))
            }
            StreamSpec::Stoneham => {
                if b != 2 {
                    return Err(Error::InvalidParams("the Stoneham stream is binary".into()));
                }
                let need = n + crate::generators::shift_digits_needed(2, bits, DEFAULT_GUARD_DIGITS) + 8;
                let need = u32::try_from(need).map_err(|_| Error::ResourceLimit("too many Stoneham bits".into()))?;
                Box::new(stoneham_bits(need)?)
            }
            StreamSpec::Periodic(d) => Box::new(periodic_stream(b, d.clone())?),
            StreamSpec::WordFile(path) => {
                let w = crate::io::read_word_file(path)?;
                Box::new(word_stream(w, 0)?.with_label(format!("word:{}", path.display())))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_text() {
        for text in [
            "kronecker:golden",
            "kronecker:sqrt:2",
            "kronecker:ratio:1/3",
            "kronecker:bits:9e3779b9",
            "vdc:2",
            "ls:1,2",
            "digital:2,identity",
            "digital:3,duprow",
            "digital:2,m.txt",
            "shift:champernowne,10",
            "shift:debruijn:5,3",
            "shift:stoneham,2",
            "shift:periodic:01,2",
            "shift:word:w.txt,3",
            "random:42",
            "sqrtn",
        ] {
            let d: Descriptor = text.parse().unwrap();
            assert_eq!(d.to_string(), text);
        }
    }

    #[test]
    fn rejects_malformed() {
        for text in ["", "kronecker:pi", "kronecker:sqrt:4", "vdc:1", "ls:1", "shift:champernowne", "digital:x,identity", "random:-1", "bogus:3"] {
            assert!(text.parse::<Descriptor>().is_err(), "{text}");
        }
    }

    #[test]
    fn generates() {
        let ps = "vdc:2".parse::<Descriptor>().unwrap().generate_with_bits(3, 8).unwrap();
        assert_eq!(ps.numerators(), &[128u32, 64, 192].map(BigUint::from));
        assert!(ps.provenance().starts_with("vdc:2"));
        let d: Descriptor = "digital:2,identity".parse().unwrap();
        assert_eq!(d.generate_with_bits(4, 8).unwrap().numerators(), &[0u32, 128, 64, 192].map(BigUint::from));
        let p = "shift:periodic:01,2".parse::<Descriptor>().unwrap().generate_with_bits(2, 16).unwrap();
        assert_eq!(p.numerators(), &[43690u32, 21845].map(BigUint::from));
        let s = "shift:stoneham,2".parse::<Descriptor>().unwrap().generate(10).unwrap();
        assert_eq!(s.len(), 10);
        let dbr: Descriptor = "shift:debruijn:3,3".parse().unwrap();
        assert_eq!(dbr.generate(27).unwrap().len(), 27);
        let bad: Descriptor = "shift:debruijn:2,2".parse().unwrap();
        assert!(bad.generate(4).is_err());
        let k = "kronecker:ratio:1/3".parse::<Descriptor>().unwrap().generate_with_bits(3, 8).unwrap();
        assert_eq!(k.numerators()[2], BigUint::from(255u32));
    }
}
