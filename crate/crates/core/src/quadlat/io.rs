//! Line-oriented text for integer vectors: one vector per line, entries
//! separated by spaces.

use std::io::{self, BufRead, Write};

pub fn write_vector<W: Write>(w: &mut W, v: &[i64]) -> io::Result<()> {
    let mut first = true;
    for x in v {
        if !first {
            w.write_all(b" ")?;
        }
        first = false;
        write!(w, "{x}")?;
    }
    w.write_all(b"\n")
}

pub fn parse_vector(line: &str) -> Result<Vec<i64>, std::num::ParseIntError> {
    line.split_whitespace().map(str::parse).collect()
}

/// Reads all non-empty, non-comment lines as vectors.
pub fn read_vectors<R: BufRead>(r: R) -> io::Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(parse_vector(t).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let vs = vec![vec![1, -2, 3], vec![0, 0, 0]];
        let mut buf = Vec::new();
        for v in &vs {
            write_vector(&mut buf, v).unwrap();
        }
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "1 -2 3\n0 0 0\n");
        assert_eq!(read_vectors(&buf[..]).unwrap(), vs);
    }
}
