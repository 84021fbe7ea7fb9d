//! The binary code matrix and its text file format.
//!
//! A code file is a header line `"n M"` followed by exactly `n` rows of `M`
//! characters from `{0,1}`, every line newline-terminated and nothing after
//! the last row. Parsing is strict so that saving a loaded file reproduces it
//! byte for byte.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An `n x M` binary matrix; column `j` is the fingerprint of user `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    n: usize,
    m: usize,
    // row-major, one byte per entry
    bits: Vec<u8>,
}

impl BinaryCode {
    pub fn new(n: usize, m: usize, bits: Vec<u8>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::EmptyCode { n, m });
        }
        if bits.len() != n * m {
            return Err(Error::BitCount {
                expected: n * m,
                found: bits.len(),
            });
        }
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::NonBinary {
                row: pos / m,
                col: pos % m,
                value: bits[pos],
            });
        }
        Ok(BinaryCode { n, m, bits })
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        let mut bits = Vec::with_capacity(n * m);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m {
                return Err(Error::WrongRowLength {
                    row: i + 1,
                    expected: m,
                    found: row.len(),
                });
            }
            bits.extend_from_slice(row);
        }
        BinaryCode::new(n, m, bits)
    }

    /// Build from columns given as fingerprints, each of length `n`.
    pub fn from_columns<C: AsRef<[u8]>>(cols: &[C]) -> Result<Self> {
        let m = cols.len();
        let n = cols.first().map_or(0, |c| c.as_ref().len());
        if n == 0 || m == 0 {
            return Err(Error::EmptyCode { n, m });
        }
        let mut bits = vec![0u8; n * m];
        for (j, col) in cols.iter().enumerate() {
            let col = col.as_ref();
            if col.len() != n {
                return Err(Error::Dimension(format!(
                    "column {} has length {}, expected {n}",
                    j + 1,
                    col.len()
                )));
            }
            for (i, &b) in col.iter().enumerate() {
                bits[i * m + j] = b;
            }
        }
        BinaryCode::new(n, m, bits)
    }

    /// Row count (code length).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Column count (number of users).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Entry at 0-based `(row, col)`.
    #[inline]
    pub fn bit(&self, row: usize, col: usize) -> u8 {
        self.bits[row * self.m + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.bits[row * self.m..(row + 1) * self.m]
    }

    /// Column of 0-based index `col`, top to bottom.
    pub fn column(&self, col: usize) -> Vec<u8> {
        (0..self.n).map(|i| self.bit(i, col)).collect()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// `log2(M) / n`.
    pub fn rate(&self) -> f64 {
        (self.m as f64).log2() / self.n as f64
    }

    /// Copy with `extra` all-zero rows appended.
    pub fn pad_rows(&self, extra: usize) -> BinaryCode {
        let mut bits = self.bits.clone();
        bits.resize((self.n + extra) * self.m, 0);
        BinaryCode {
            n: self.n + extra,
            m: self.m,
            bits,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.n * (self.m + 1));
        out.push_str(&format!("{} {}\n", self.n, self.m));
        for i in 0..self.n {
            out.extend(self.row(i).iter().map(|&b| if b == 1 { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').ok_or(Error::MissingNewline)?;
        let mut lines = body.split('\n');
        let header = lines.next().unwrap_or_default();
        let (n, m) = parse_header(header)?;

        let mut bits = Vec::with_capacity(n * m);
        let mut rows = 0;
        for line in lines {
            rows += 1;
            if rows > n {
                return Err(if line.is_empty() {
                    Error::TrailingData
                } else {
                    Error::WrongRowCount {
                        expected: n,
                        found: rows,
                    }
                });
            }
            let len = line.chars().count();
            if len != m {
                return Err(Error::WrongRowLength {
                    row: rows,
                    expected: m,
                    found: len,
                });
            }
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => bits.push(0),
                    '1' => bits.push(1),
                    _ => {
                        return Err(Error::IllegalCharacter {
                            row: rows,
                            col: j + 1,
                            ch,
                        })
                    }
                }
            }
        }
        if rows != n {
            return Err(Error::WrongRowCount {
                expected: n,
                found: rows,
            });
        }
        BinaryCode::new(n, m, bits)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        BinaryCode::parse(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let bad = |why: &str| Error::MalformedHeader(format!("{why} in {line:?}"));
    let (a, b) = line.split_once(' ').ok_or_else(|| bad("expected \"n M\""))?;
    let dim = |s: &str| -> Result<usize> {
        let canonical = !s.is_empty()
            && s.bytes().all(|c| c.is_ascii_digit())
            && !(s.len() > 1 && s.starts_with('0'));
        if !canonical {
            return Err(bad("dimensions must be plain decimal integers"));
        }
        let v: usize = s.parse().map_err(|_| bad("dimension too large"))?;
        if v == 0 {
            return Err(bad("dimensions must be positive"));
        }
        Ok(v)
    };
    Ok((dim(a)?, dim(b)?))
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for BinaryCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BinaryCode::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let code = BinaryCode::parse("2 3\n101\n010\n").unwrap();
        assert_eq!((code.n(), code.m()), (2, 3));
        assert_eq!(code.row(0), &[1, 0, 1]);
        assert_eq!(code.column(1), vec![0, 1]);
    }

    #[test]
    fn round_trips_bytes() {
        let text = "3 4\n1010\n0110\n1111\n";
        assert_eq!(BinaryCode::parse(text).unwrap().to_text(), text);
    }

    #[test]
    fn rejects_short_row() {
        let err = BinaryCode::parse("2 3\n10\n010\n").unwrap_err();
        assert!(matches!(err, Error::WrongRowLength { row: 1, expected: 3, found: 2 }));
        assert!(err.to_string().contains("wrong row length"));
    }

    #[test]
    fn rejects_bad_characters_and_headers() {
        assert!(matches!(
            BinaryCode::parse("1 3\n1x1\n"),
            Err(Error::IllegalCharacter { row: 1, col: 2, ch: 'x' })
        ));
        for bad in ["2  3\n", "2\n", "0 3\n", "02 3\n", "+2 3\n", "a b\n", "2 3 4\n"] {
            assert!(
                matches!(BinaryCode::parse(bad), Err(Error::MalformedHeader(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn rejects_framing_errors() {
        assert!(matches!(BinaryCode::parse("1 2\n10"), Err(Error::MissingNewline)));
        assert!(matches!(BinaryCode::parse("1 2\n10\n\n"), Err(Error::TrailingData)));
        assert!(matches!(
            BinaryCode::parse("2 2\n10\n"),
            Err(Error::WrongRowCount { expected: 2, found: 1 })
        ));
        assert!(matches!(
            BinaryCode::parse("1 2\n10\n01\n"),
            Err(Error::WrongRowCount { expected: 1, found: 2 })
        ));
        assert!(BinaryCode::parse("1 2\r\n10\r\n").is_err());
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(BinaryCode::new(0, 2, vec![]), Err(Error::EmptyCode { .. })));
        assert!(matches!(BinaryCode::new(1, 2, vec![1]), Err(Error::BitCount { .. })));
        assert!(matches!(
            BinaryCode::new(1, 2, vec![1, 2]),
            Err(Error::NonBinary { row: 0, col: 1, value: 2 })
        ));
    }

    #[test]
    fn columns_and_rows_agree() {
        let by_cols = BinaryCode::from_columns(&[[1, 0, 1], [1, 1, 0]]).unwrap();
        let by_rows = BinaryCode::from_rows(&[[1, 1], [0, 1], [1, 0]]).unwrap();
        assert_eq!(by_cols, by_rows);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.code");
        let code = BinaryCode::from_rows(&[[1, 0, 0], [0, 1, 1]]).unwrap();
        code.save(&path).unwrap();
        assert_eq!(BinaryCode::load(&path).unwrap(), code);
        assert!(matches!(
            BinaryCode::load(dir.path().join("missing")),
            Err(Error::Io { .. })
        ));
    }
}
