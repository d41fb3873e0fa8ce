//! Plain-text matrix format: `n` lines of exactly `n` characters from
//! `{0,1}`, each newline-terminated, no separators.

use std::fmt;
use std::str::FromStr;

use super::{Gf2Error, Gf2Matrix};

impl FromStr for Gf2Matrix {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lines: Vec<&str> = s
            .lines()
            .map(|l| l.strip_suffix('\r').unwrap_or(l))
            .collect();
        let n = lines.len();
        if n == 0 || lines.iter().all(|l| l.is_empty()) {
            return Err(Gf2Error::EmptyMatrix);
        }
        let mut rows = Vec::with_capacity(n);
        for (i, line) in lines.iter().enumerate() {
            let lineno = i + 1;
            let row = line
                .chars()
                .enumerate()
                .map(|(j, c)| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(Gf2Error::Parse {
                        line: lineno,
                        reason: format!("column {}: unexpected character {other:?}", j + 1),
                    }),
                })
                .collect::<Result<Vec<bool>, _>>()?;
            if row.len() != n {
                return Err(Gf2Error::Parse {
                    line: lineno,
                    reason: format!("expected {n} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        Gf2Matrix::from_bit_rows(&rows)
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_row_strings() {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "011\n001\n000\n";
        let m: Gf2Matrix = text.parse().unwrap();
        assert!(m.get(0, 1) && m.get(0, 2) && m.get(1, 2));
        assert_eq!(m.to_string(), text);
    }

    #[test]
    fn rejects_ragged_lines() {
        let err = "01\n0\n".parse::<Gf2Matrix>().unwrap_err();
        assert!(matches!(err, Gf2Error::Parse { line: 2, .. }));
    }

    #[test]
    fn rejects_non_square() {
        assert!("011\n010\n".parse::<Gf2Matrix>().is_err());
    }

    #[test]
    fn rejects_bad_characters() {
        let err = "01\n02\n".parse::<Gf2Matrix>().unwrap_err();
        assert!(matches!(err, Gf2Error::Parse { line: 2, .. }));
        assert!("0 1\n1 0\n".parse::<Gf2Matrix>().is_err());
    }

    #[test]
    fn rejects_empty_input() {
        assert_eq!("".parse::<Gf2Matrix>().unwrap_err(), Gf2Error::EmptyMatrix);
        assert_eq!("\n".parse::<Gf2Matrix>().unwrap_err(), Gf2Error::EmptyMatrix);
    }

    #[test]
    fn accepts_crlf() {
        let m: Gf2Matrix = "10\r\n01\r\n".parse().unwrap();
        assert_eq!(m, Gf2Matrix::identity(2));
    }
}
