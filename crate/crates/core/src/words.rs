//! de Bruijn words (finite and infinite prefixes) and the digit streams that
//! define `alpha = 0.a_1 a_2 ...` for digit-shift sequences.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Largest `k^m` the word constructions will allocate for.
pub const MAX_WINDOWS: u64 = 1 << 28;

/// A finite word over `{0, ..., k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    alphabet: u32,
    symbols: Vec<u32>,
}

impl Word {
    pub fn new(alphabet: u32, symbols: Vec<u32>) -> Result<Self> {
        if alphabet < 2 {
            return Err(Error::InvalidParams(format!("alphabet size must be >= 2, got {alphabet}")));
        }
        if let Some(bad) = symbols.iter().find(|&&s| s >= alphabet) {
            return Err(Error::InvalidParams(format!("symbol {bad} outside alphabet of size {alphabet}")));
        }
        Ok(Self { alphabet, symbols })
    }

    /// Parses contiguous digits, e.g. `"00110"` (alphabets up to 10).
    pub fn from_digits(alphabet: u32, digits: &str) -> Result<Self> {
        let symbols = digits
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad symbol `{c}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, symbols)
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word { alphabet: self.alphabet, symbols: self.symbols[..len.min(self.len())].to_vec() }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet <= 10 {
            for s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

/// `k^m + m - 1`, the length of a de Bruijn word of order `m`.
pub fn de_bruijn_length(k: u32, m: u32) -> Result<usize> {
    let windows = window_count(k, m)?;
    Ok(windows as usize + m as usize - 1)
}

fn window_count(k: u32, m: u32) -> Result<u64> {
    let windows = u64::from(k)
        .checked_pow(m)
        .filter(|&w| w <= MAX_WINDOWS)
        .ok_or_else(|| Error::ResourceLimit(format!("{k}^{m} windows exceed the limit of {MAX_WINDOWS}")))?;
    Ok(windows)
}

/// Integer code of each length-`m` window, most significant symbol first.
fn window_codes(symbols: &[u32], k: u32, m: usize) -> impl Iterator<Item = u64> + '_ {
    let k = u64::from(k);
    let top = k.pow(m.saturating_sub(1) as u32);
    let mut code = 0u64;
    symbols.iter().enumerate().filter_map(move |(i, &s)| {
        if i >= m {
            code -= u64::from(symbols[i - m]) * top;
        }
        code = code * k + u64::from(s);
        (i + 1 >= m).then_some(code)
    })
}

/// True iff `w` has length `k^m + m - 1` and every length-`m` word occurs
/// exactly once as a window.
pub fn verify_de_bruijn(w: &Word, m: u32) -> bool {
    if m == 0 {
        return false;
    }
    let Ok(expected) = de_bruijn_length(w.alphabet, m) else {
        return false;
    };
    if w.len() != expected {
        return false;
    }
    let mut seen = vec![false; expected + 1 - m as usize];
    for code in window_codes(&w.symbols, w.alphabet, m as usize) {
        let slot = &mut seen[code as usize];
        if *slot {
            return false;
        }
        *slot = true;
    }
    true
}

/// Edge-marking Hierholzer walk on the de Bruijn graph whose vertices are the
/// length-`order` words (edges are the length-`order + 1` words). Starting at
/// `start`, it consumes every unused edge reachable from there, always trying
/// the smallest symbol first, and returns the symbols of the traversed edges.
fn eulerian_symbols(k: u32, order: u32, used: &mut [bool], start: u64) -> Vec<u32> {
    let k64 = u64::from(k);
    let vertices = k64.pow(order);
    let mut next_symbol = vec![0u32; vertices as usize];
    // (vertex, symbol of the edge that entered it)
    let mut stack: Vec<(u64, Option<u32>)> = vec![(start, None)];
    let mut out = Vec::new();
    while let Some(&(v, _)) = stack.last() {
        let slot = &mut next_symbol[v as usize];
        if *slot < k {
            let c = *slot;
            *slot += 1;
            let edge = v * k64 + u64::from(c);
            if used[edge as usize] {
                continue;
            }
            used[edge as usize] = true;
            stack.push((edge % vertices, Some(c)));
        } else if let Some((_, Some(c))) = stack.pop() {
            out.push(c);
        }
    }
    out.reverse();
    out
}

/// Non-cyclic de Bruijn word of order `m`: an Eulerian circuit of the
/// order-`m-1` de Bruijn graph from the all-zero vertex, smallest edge first.
pub fn de_bruijn_word(k: u32, m: u32) -> Result<Word> {
    if k < 2 || m == 0 {
        return Err(Error::InvalidParams(format!("need k >= 2 and m >= 1, got k={k}, m={m}")));
    }
    let edges = window_count(k, m)?;
    let mut used = vec![false; edges as usize];
    let mut symbols = vec![0u32; m as usize - 1];
    symbols.extend(eulerian_symbols(k, m - 1, &mut used, 0));
    Word::new(k, symbols)
}

/// Extends a de Bruijn word of order `from` to one of order `to > from` that
/// keeps it as a prefix, by walking the unused edges of the order-`to` graph
/// from the word's last vertex.
pub fn extend_de_bruijn(w: &Word, from: u32, to: u32) -> Result<Word> {
    if to <= from || !verify_de_bruijn(w, from) {
        return Err(Error::InvalidParams(format!("cannot extend from order {from} to order {to}")));
    }
    let k = w.alphabet;
    let edges = window_count(k, to)?;
    let mut used = vec![false; edges as usize];
    for code in window_codes(&w.symbols, k, to as usize) {
        used[code as usize] = true;
    }
    let tail = &w.symbols[w.len() - (to as usize - 1)..];
    let start = tail.iter().fold(0u64, |acc, &s| acc * u64::from(k) + u64::from(s));
    let mut symbols = w.symbols.clone();
    symbols.extend(eulerian_symbols(k, to - 1, &mut used, start));
    let out = Word::new(k, symbols)?;
    if out.len() != de_bruijn_length(k, to)? {
        return Err(Error::ConstructionFailed(format!(
            "order-{from} word does not extend to order {to}: unused edges are disconnected"
        )));
    }
    Ok(out)
}

/// Prefix of an infinite de Bruijn word, of length `k^M + M - 1`. For `k >= 3`
/// every prefix of length `k^m + m - 1`, `m <= M`, is de Bruijn of order `m`;
/// for `k = 2` this holds for odd `m` and `M` must be odd.
pub fn infinite_de_bruijn_prefix(k: u32, max_order: u32) -> Result<Word> {
    if k < 2 || max_order == 0 {
        return Err(Error::InvalidParams(format!("need k >= 2 and M >= 1, got k={k}, M={max_order}")));
    }
    let step = if k == 2 { 2 } else { 1 };
    if k == 2 && max_order.is_multiple_of(2) {
        return Err(Error::InvalidParams("binary infinite de Bruijn prefixes need an odd order".into()));
    }
    window_count(k, max_order)?;
    let mut word = de_bruijn_word(k, 1)?;
    let mut order = 1;
    while order < max_order {
        word = extend_de_bruijn(&word, order, order + step)?;
        order += step;
    }
    Ok(word)
}

/// Orders `m <= max_order` at which an infinite de Bruijn prefix is constrained.
pub fn applicable_orders(k: u32, max_order: u32) -> Vec<u32> {
    (1..=max_order).filter(|m| k >= 3 || m % 2 == 1).collect()
}

/// A base-`b` digit source for `alpha = 0.a_1 a_2 ...`. `digit(i)` returns
/// `a_{i+1}` and is a pure function of `i`; `None` means the source is finite
/// and exhausted.
pub trait DigitStream: Send + Sync {
    fn base(&self) -> u32;
    fn digit(&self, index: usize) -> Option<u32>;
    fn descriptor(&self) -> String;
}

/// Base-`b` Champernowne constant: the representations of 1, 2, 3, ...
/// concatenated.
#[derive(Clone, Debug)]
pub struct Champernowne {
    base: u32,
}

pub fn champernowne_stream(b: u32) -> Result<Champernowne> {
    if b < 2 {
        return Err(Error::InvalidParams(format!("base must be >= 2, got {b}")));
    }
    Ok(Champernowne { base: b })
}

impl DigitStream for Champernowne {
    fn base(&self) -> u32 {
        self.base
    }

    fn digit(&self, index: usize) -> Option<u32> {
        let b = u128::from(self.base);
        let mut index = index as u128;
        let mut width = 1u32;
        let mut first = 1u128; // smallest number with `width` digits
        loop {
            let block = (b - 1) * first * u128::from(width);
            if index < block {
                let number = first + index / u128::from(width);
                let pos = (index % u128::from(width)) as u32; // from the most significant digit
                let shift = width - 1 - pos;
                return Some(((number / b.pow(shift)) % b) as u32);
            }
            index -= block;
            first *= b;
            width += 1;
        }
    }

    fn descriptor(&self) -> String {
        format!("champernowne:{}", self.base)
    }
}

/// A finite word followed by a pad symbol forever.
#[derive(Clone, Debug)]
pub struct WordStream {
    word: Arc<Word>,
    pad: u32,
    label: String,
}

pub fn word_stream(w: Word, pad: u32) -> Result<WordStream> {
    if pad >= w.alphabet {
        return Err(Error::InvalidParams(format!("pad {pad} outside alphabet of size {}", w.alphabet)));
    }
    let label = format!("word:{}:{}", w.alphabet, w.len());
    Ok(WordStream { word: Arc::new(w), pad, label })
}

impl WordStream {
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

impl DigitStream for WordStream {
    fn base(&self) -> u32 {
        self.word.alphabet
    }

    fn digit(&self, index: usize) -> Option<u32> {
        Some(self.word.symbols.get(index).copied().unwrap_or(self.pad))
    }

    fn descriptor(&self) -> String {
        self.label.clone()
    }
}

/// A purely periodic expansion, e.g. `01` repeating for 1/3 in base 2.
#[derive(Clone, Debug)]
pub struct PeriodicStream {
    base: u32,
    period: Vec<u32>,
}

pub fn periodic_stream(base: u32, period: Vec<u32>) -> Result<PeriodicStream> {
    if period.is_empty() {
        return Err(Error::InvalidParams("empty period".into()));
    }
    Word::new(base, period.clone())?;
    Ok(PeriodicStream { base, period })
}

impl DigitStream for PeriodicStream {
    fn base(&self) -> u32 {
        self.base
    }

    fn digit(&self, index: usize) -> Option<u32> {
        Some(self.period[index % self.period.len()])
    }

    fn descriptor(&self) -> String {
        let digits: Vec<String> = self.period.iter().map(|d| d.to_string()).collect();
        format!("periodic:{}", digits.join(""))
    }
}

/// A finite literal expansion; reading past its end is an error for consumers.
#[derive(Clone, Debug)]
pub struct LiteralStream {
    base: u32,
    digits: Arc<Vec<u32>>,
    label: String,
}

pub fn literal_stream(base: u32, digits: Vec<u32>, label: impl Into<String>) -> Result<LiteralStream> {
    Word::new(base, digits.clone())?;
    Ok(LiteralStream { base, digits: Arc::new(digits), label: label.into() })
}

impl DigitStream for LiteralStream {
    fn base(&self) -> u32 {
        self.base
    }

    fn digit(&self, index: usize) -> Option<u32> {
        self.digits.get(index).copied()
    }

    fn descriptor(&self) -> String {
        self.label.clone()
    }
}
