use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use clap::ValueEnum;
use f2rank::gf2::{parse_f2mat, write_f2mat};
use f2rank::graph::{decode_graph6, encode_graph6};
use f2rank::{BitMatrix, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    F2mat,
    Graph6,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::F2mat => "f2mat",
            Format::Graph6 => "graph6",
        })
    }
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, UsageError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn detect(text: &str) -> Format {
    if text.starts_with("f2mat ") {
        Format::F2mat
    } else {
        Format::Graph6
    }
}

/// Reads any matrix. graph6 input is returned as its adjacency matrix.
pub fn read_matrix(path: &Path) -> Result<(BitMatrix, Format), UsageError> {
    let text = read_text(path)?;
    match detect(&text) {
        Format::F2mat => Ok((parse_f2mat(&text)?, Format::F2mat)),
        Format::Graph6 => Ok((decode_graph6(&text)?.into_adjacency(), Format::Graph6)),
    }
}

pub fn read_graph(path: &Path) -> Result<(Graph, Format), UsageError> {
    let (m, format) = read_matrix(path)?;
    Ok((Graph::new(m)?, format))
}

pub fn render(g: &Graph, format: Format) -> String {
    match format {
        Format::F2mat => write_f2mat(g.adjacency()),
        Format::Graph6 => {
            let mut s = encode_graph6(g);
            s.push('\n');
            s
        }
    }
}

/// Writes to `path`, or to standard output when `path` is `None` or `-`.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), UsageError> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).map_err(|e| UsageError(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut out = io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}
