//! The `f2mat v1` text format:
//!
//! ```text
//! f2mat <rows> <cols>
//! <row 0 as exactly cols characters of 0/1>
//! ...
//! ```
//!
//! Every line, including the last, ends in `\n`; no trailing whitespace.

use super::{BitMatrix, BitVector, Gf2Error};

pub fn write_f2mat(m: &BitMatrix) -> String {
    let mut s = String::with_capacity(16 + m.rows() * (m.cols() + 1));
    s.push_str(&format!("f2mat {} {}\n", m.rows(), m.cols()));
    s.push_str(&m.to_string01());
    s
}

pub fn parse_f2mat(text: &str) -> Result<BitMatrix, Gf2Error> {
    let err = |line: usize, message: &str| Gf2Error::Parse {
        line,
        message: message.to_string(),
    };
    if !text.ends_with('\n') {
        return Err(err(text.lines().count().max(1), "missing final newline"));
    }
    let mut lines = text[..text.len() - 1].split('\n');
    let header = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let mut fields = header.split(' ');
    if fields.next() != Some("f2mat") {
        return Err(err(1, "header must start with `f2mat`"));
    }
    let mut dim = || -> Result<usize, Gf2Error> {
        let f = fields.next().ok_or_else(|| err(1, "header needs <rows> <cols>"))?;
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(1, "dimensions must be decimal integers"));
        }
        f.parse().map_err(|_| err(1, "dimension out of range"))
    };
    let rows = dim()?;
    let cols = dim()?;
    if fields.next().is_some() {
        return Err(err(1, "unexpected fields after dimensions"));
    }
    let mut data = Vec::with_capacity(rows);
    for (k, line) in lines.enumerate() {
        let lineno = k + 2;
        if k >= rows {
            return Err(err(lineno, "more rows than declared"));
        }
        if line.len() != cols {
            return Err(err(lineno, &format!("expected {cols} characters, got {}", line.len())));
        }
        let mut v = BitVector::zeros(cols);
        for (j, b) in line.bytes().enumerate() {
            match b {
                b'0' => {}
                b'1' => v.set(j, true),
                _ => return Err(err(lineno, "rows may only contain 0 and 1")),
            }
        }
        data.push(v);
    }
    if data.len() != rows {
        return Err(err(data.len() + 2, "fewer rows than declared"));
    }
    BitMatrix::from_rows(cols, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn writes_expected_text() {
        let m = BitMatrix::from_str_rows(&["011", "100"]);
        assert_eq!(write_f2mat(&m), "f2mat 2 3\n011\n100\n");
    }

    #[test]
    fn empty_dimensions() {
        let m = BitMatrix::zeros(0, 0);
        assert_eq!(write_f2mat(&m), "f2mat 0 0\n");
        assert_eq!(parse_f2mat("f2mat 0 0\n").unwrap(), m);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "",
            "f2mat 1 2\n01",
            "f2mat 1 2\n012\n",
            "f2mat 1 2\n0a\n",
            "f2mat 2 2\n01\n",
            "f2mat 1 2\n01\n10\n",
            "f2mat 1 2 \n01\n",
            "f2mat 1 2\n01 \n",
            "f2max 1 2\n01\n",
            "f2mat -1 2\n",
        ] {
            assert!(parse_f2mat(bad).is_err(), "accepted {bad:?}");
        }
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(r in 0usize..12, c in 0usize..80, seed in any::<u64>()) {
            let m = BitMatrix::from_fn(r, c, |i, j| (seed.rotate_left((i * 31 + j) as u32 % 64) >> 3) & 1 == 1);
            let text = write_f2mat(&m);
            let back = parse_f2mat(&text).unwrap();
            prop_assert_eq!(write_f2mat(&back), text);
            prop_assert_eq!(back, m);
        }
    }
}
