use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Cell marker for an erased observation.
pub const ERASED: u8 = u8::MAX;

/// An `m × n` matrix of observed states; erased cells hold [`ERASED`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSet {
    arities: Vec<usize>,
    cells: Vec<u8>,
    seed: u64,
}

impl SampleSet {
    /// Builds a sample set from row-major cells (`cells.len()` must be a
    /// multiple of `arities.len()`).
    pub fn new(arities: Vec<usize>, cells: Vec<u8>, seed: u64) -> Result<Self> {
        let n = arities.len();
        if n == 0 {
            return Err(Error::InvalidArgument("sample set with no nodes".into()));
        }
        if !cells.len().is_multiple_of(n) {
            return Err(Error::InvalidArgument(format!(
                "{} cells do not form rows of {n}",
                cells.len()
            )));
        }
        for (i, &c) in cells.iter().enumerate() {
            let node = i % n;
            if c != ERASED && c as usize >= arities[node] {
                return Err(Error::StateOutOfRange { node, state: c as usize, arity: arities[node] });
            }
        }
        Ok(Self { arities, cells, seed })
    }

    pub(crate) fn from_parts_unchecked(arities: Vec<usize>, cells: Vec<u8>, seed: u64) -> Self {
        Self { arities, cells, seed }
    }

    pub fn m(&self) -> usize {
        self.cells.len() / self.arities.len()
    }

    pub fn n(&self) -> usize {
        self.arities.len()
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn row(&self, i: usize) -> &[u8] {
        let n = self.n();
        &self.cells[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, u8> {
        self.cells.chunks_exact(self.n())
    }

    pub fn get(&self, sample: usize, node: usize) -> Option<usize> {
        match self.cells[sample * self.n() + node] {
            ERASED => None,
            s => Some(s as usize),
        }
    }

    pub fn has_erasures(&self) -> bool {
        self.cells.contains(&ERASED)
    }

    /// Fraction of non-erased cells.
    pub fn observed_fraction(&self) -> f64 {
        if self.cells.is_empty() {
            return 0.0;
        }
        self.cells.iter().filter(|&&c| c != ERASED).count() as f64 / self.cells.len() as f64
    }

    /// Text form: a header `n=<n> arities=<csv> seed=<u64>` then one
    /// comma-separated row per sample with 1-based states and `?` for erased.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.cells.len() * 2 + 64);
        let arities = self.arities.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        writeln!(out, "n={} arities={} seed={}", self.n(), arities, self.seed).unwrap();
        for row in self.rows() {
            for (j, &c) in row.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                if c == ERASED {
                    out.push('?');
                } else {
                    write!(out, "{}", c as usize + 1).unwrap();
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty sample file".into()))?;
        let mut n = None;
        let mut arities = None;
        let mut seed = None;
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field {field:?}")))?;
            let bad = |_| Error::Parse(format!("bad header value {field:?}"));
            match key {
                "n" => n = Some(value.parse::<usize>().map_err(bad)?),
                "arities" => {
                    arities = Some(
                        value
                            .split(',')
                            .map(|a| a.parse::<usize>().map_err(bad))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                "seed" => seed = Some(value.parse::<u64>().map_err(bad)?),
                _ => return Err(Error::Parse(format!("unknown header field {key:?}"))),
            }
        }
        let (n, arities, seed) = match (n, arities, seed) {
            (Some(n), Some(a), Some(s)) => (n, a, s),
            _ => return Err(Error::Parse("header needs n, arities and seed".into())),
        };
        if arities.len() != n {
            return Err(Error::Parse(format!("n={n} but {} arities", arities.len())));
        }
        let mut cells = Vec::new();
        for (lineno, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let before = cells.len();
            for tok in line.split(',') {
                let tok = tok.trim();
                if tok == "?" {
                    cells.push(ERASED);
                } else {
                    let s: usize = tok
                        .parse()
                        .map_err(|_| Error::Parse(format!("row {}: bad state {tok:?}", lineno + 1)))?;
                    if s == 0 || s > 254 {
                        return Err(Error::Parse(format!("row {}: state {s} not 1-based", lineno + 1)));
                    }
                    cells.push((s - 1) as u8);
                }
            }
            if cells.len() - before != n {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {n}",
                    lineno + 1,
                    cells.len() - before
                )));
            }
        }
        Self::new(arities, cells, seed)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format() {
        let s = SampleSet::new(vec![2, 3], vec![0, 2, ERASED, 1], 42).unwrap();
        let text = s.to_text();
        assert_eq!(text, "n=2 arities=2,3 seed=42\n1,3\n?,2\n");
        assert_eq!(SampleSet::from_text(&text).unwrap(), s);
    }

    #[test]
    fn parse_errors() {
        assert!(SampleSet::from_text("").is_err());
        assert!(SampleSet::from_text("n=2 arities=2,2\n1,1\n").is_err());
        assert!(SampleSet::from_text("n=2 arities=2,2 seed=1\n1\n").is_err());
        assert!(SampleSet::from_text("n=2 arities=2,2 seed=1\n0,1\n").is_err());
        assert!(SampleSet::from_text("n=2 arities=2,2 seed=1\n3,1\n").is_err());
    }

    #[test]
    fn accessors() {
        let s = SampleSet::new(vec![2, 2], vec![0, 1, ERASED, 1], 0).unwrap();
        assert_eq!(s.m(), 2);
        assert_eq!(s.get(0, 1), Some(1));
        assert_eq!(s.get(1, 0), None);
        assert_eq!(s.observed_fraction(), 0.75);
        assert!(SampleSet::new(vec![2, 2], vec![0, 2], 0).is_err());
    }
}
