//! Reader for b-file style sequences: one `index value` pair per line,
//! indices contiguous and ascending, `#` starting a comment.

use std::io::BufRead;

use eulerlc_core::{BigInt, IntSequence};
use num_bigint::ParseBigIntError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: expected index {expected}, found {found}")]
    Gap {
        line: usize,
        expected: i64,
        found: i64,
    },
    #[error("no values in input")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_err(line: usize, what: &str, e: impl std::fmt::Display) -> InputError {
    InputError::Parse {
        line,
        msg: format!("bad {what}: {e}"),
    }
}

pub fn read_sequence<R: BufRead>(input: R) -> Result<IntSequence, InputError> {
    let mut start = None;
    let mut values: Vec<BigInt> = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut fields = body.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(InputError::Parse {
                line: line_no,
                msg: "expected `index value`".into(),
            });
        };
        let idx: i64 = idx.parse().map_err(|e| parse_err(line_no, "index", e))?;
        let val: BigInt = val
            .parse()
            .map_err(|e: ParseBigIntError| parse_err(line_no, "value", e))?;
        let first = *start.get_or_insert(idx);
        let expected = first + values.len() as i64;
        if idx != expected {
            return Err(InputError::Gap {
                line: line_no,
                expected,
                found: idx,
            });
        }
        values.push(val);
    }
    let start = start.ok_or(InputError::Empty)?;
    IntSequence::new(start, values).map_err(|_| InputError::Empty)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(s: &str) -> Result<IntSequence, InputError> {
        read_sequence(s.as_bytes())
    }

    #[test]
    fn d4_row() {
        let s = read("0 9\n1 11\n2 7\n3 3\n4 1").unwrap();
        assert_eq!(s.start(), 0);
        let v: Vec<String> = s.values().iter().map(|x| x.to_string()).collect();
        assert_eq!(v, ["9", "11", "7", "3", "1"]);
    }

    #[test]
    fn single_value() {
        let s = read("0 1").unwrap();
        assert_eq!((s.start(), s.len()), (0, 1));
    }

    #[test]
    fn gap_reports_line() {
        match read("0 1\n2 3") {
            Err(InputError::Gap {
                line,
                expected,
                found,
            }) => assert_eq!((line, expected, found), (2, 1, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_offsets() {
        let s = read("# A000166\n\n5 44   # D_5\n6 265\n7 1854\n").unwrap();
        assert_eq!((s.start(), s.end()), (5, 7));
        let big = read("0 123456789012345678901234567890").unwrap();
        assert_eq!(
            big.values()[0].to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn parse_errors_carry_line() {
        assert!(matches!(
            read("0 1\n1 x"),
            Err(InputError::Parse { line: 2, .. })
        ));
        assert!(matches!(read("0"), Err(InputError::Parse { line: 1, .. })));
        assert!(matches!(
            read("0 1 2"),
            Err(InputError::Parse { line: 1, .. })
        ));
        assert!(matches!(read("# nothing\n"), Err(InputError::Empty)));
    }
}
