//! The line-oriented text format for graphs and chord diagrams.
//!
//! ```text
//! graphlink v1 labeled
//! # comment
//! v a 0 +
//! v b 1 -
//! e a b
//! ```
//!
//! Looped files use `v <id> <0|1>` for the loop flag; chord files carry one
//! `D: t1 t2 ...` line and a `c <token> <framing> <sign>` line per chord.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::chord::{ChordDiagram, ChordError};
use crate::error::Error;
use crate::graph::{Framing, Graph, Label, LabeledGraph, LoopedGraph, VertexId};
use crate::moves::{is_valid_id, parse_bit, parse_sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `graphlink v1 <kind>` header")]
    MissingHeader,
    #[error("unsupported header `{0}`")]
    BadHeader(String),
    #[error("unknown record `{0}`")]
    UnknownRecord(String),
    #[error("`{record}` record expects {expected} fields")]
    Arity { record: &'static str, expected: usize },
    #[error("invalid {what} `{token}`")]
    Token { what: &'static str, token: String },
    #[error(transparent)]
    Graph(#[from] Error),
    #[error(transparent)]
    Chord(#[from] ChordError),
    #[error("`D:` line given twice")]
    DuplicateWord,
    #[error("chord file has no `D:` line")]
    MissingWord,
    #[error("expected a {expected} file, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
}

/// A parse failure at a 1-based line number; line 0 means the input as a
/// whole.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn at(line: usize, kind: impl Into<ParseErrorKind>) -> ParseError {
    ParseError { line, kind: kind.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Labeled,
    Looped,
    Chords,
}

impl FileKind {
    pub fn name(self) -> &'static str {
        match self {
            FileKind::Labeled => "labeled",
            FileKind::Looped => "looped",
            FileKind::Chords => "chords",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFile {
    Labeled(LabeledGraph),
    Looped(LoopedGraph),
    Chords(ChordDiagram),
}

impl GraphFile {
    pub fn kind(&self) -> FileKind {
        match self {
            GraphFile::Labeled(_) => FileKind::Labeled,
            GraphFile::Looped(_) => FileKind::Looped,
            GraphFile::Chords(_) => FileKind::Chords,
        }
    }

    pub fn into_labeled(self) -> Result<LabeledGraph, ParseError> {
        match self {
            GraphFile::Labeled(g) => Ok(g),
            other => Err(at(
                0,
                ParseErrorKind::WrongKind {
                    expected: "labeled",
                    found: other.kind().name(),
                },
            )),
        }
    }
}

/// Lines with comments stripped, skipping blanks, numbered from 1.
fn content_lines(s: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    s.lines().enumerate().filter_map(|(k, line)| {
        let line = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        (!fields.is_empty()).then_some((k + 1, fields))
    })
}

fn id(line: usize, s: &str) -> Result<VertexId, ParseError> {
    if is_valid_id(s) {
        Ok(VertexId::new(s))
    } else {
        Err(at(
            line,
            ParseErrorKind::Token {
                what: "vertex id",
                token: s.to_string(),
            },
        ))
    }
}

fn label(line: usize, f: &str, s: &str) -> Result<Label, ParseError> {
    let framing = parse_bit(f).ok_or_else(|| {
        at(
            line,
            ParseErrorKind::Token {
                what: "framing",
                token: f.to_string(),
            },
        )
    })?;
    let sign = parse_sign(s).ok_or_else(|| {
        at(
            line,
            ParseErrorKind::Token {
                what: "sign",
                token: s.to_string(),
            },
        )
    })?;
    Ok(Label::new(Framing::from_bit(framing), sign))
}

fn arity(line: usize, record: &'static str, expected: usize, fields: &[&str]) -> Result<(), ParseError> {
    if fields.len() == expected + 1 {
        Ok(())
    } else {
        Err(at(line, ParseErrorKind::Arity { record, expected }))
    }
}

/// Parses the body of a labeled or looped graph file.
fn parse_graph_body<'a, L: Clone>(
    lines: impl Iterator<Item = (usize, Vec<&'a str>)>,
    vertex: impl Fn(usize, &[&str]) -> Result<(VertexId, L), ParseError>,
) -> Result<Graph<L>, ParseError> {
    let mut g = Graph::new();
    for (line, fields) in lines {
        match fields[0] {
            "v" => {
                let (v, l) = vertex(line, &fields)?;
                g.add_vertex(v, l).map_err(|e| at(line, e))?;
            }
            "e" => {
                arity(line, "e", 2, &fields)?;
                let (a, b) = (id(line, fields[1])?, id(line, fields[2])?);
                g.add_edge_by_id(&a, &b).map_err(|e| at(line, e))?;
            }
            other => return Err(at(line, ParseErrorKind::UnknownRecord(other.to_string()))),
        }
    }
    Ok(g)
}

fn labeled_vertex(line: usize, fields: &[&str]) -> Result<(VertexId, Label), ParseError> {
    arity(line, "v", 3, fields)?;
    Ok((id(line, fields[1])?, label(line, fields[2], fields[3])?))
}

fn looped_vertex(line: usize, fields: &[&str]) -> Result<(VertexId, bool), ParseError> {
    arity(line, "v", 2, fields)?;
    let looped = parse_bit(fields[2]).ok_or_else(|| {
        at(
            line,
            ParseErrorKind::Token {
                what: "loop flag",
                token: fields[2].to_string(),
            },
        )
    })?;
    Ok((id(line, fields[1])?, looped))
}

fn parse_chord_body<'a>(lines: impl Iterator<Item = (usize, Vec<&'a str>)>) -> Result<ChordDiagram, ParseError> {
    let mut word: Option<(usize, Vec<VertexId>)> = None;
    let mut chords = Vec::new();
    let mut last = 0;
    for (line, fields) in lines {
        last = line;
        match fields[0] {
            "D:" => {
                if word.is_some() {
                    return Err(at(line, ParseErrorKind::DuplicateWord));
                }
                let w = fields[1..].iter().map(|t| id(line, t)).collect::<Result<_, _>>()?;
                word = Some((line, w));
            }
            "c" => {
                arity(line, "c", 3, &fields)?;
                chords.push((id(line, fields[1])?, label(line, fields[2], fields[3])?));
            }
            other => return Err(at(line, ParseErrorKind::UnknownRecord(other.to_string()))),
        }
    }
    let Some((line, word)) = word else {
        return Err(at(last, ParseErrorKind::MissingWord));
    };
    ChordDiagram::new(word, chords).map_err(|e| at(line, e))
}

/// Parses a whole file, header included.
pub fn parse_graph_file(s: &str) -> Result<GraphFile, ParseError> {
    let mut lines = content_lines(s);
    let Some((line, header)) = lines.next() else {
        return Err(at(0, ParseErrorKind::MissingHeader));
    };
    let kind = match header.as_slice() {
        ["graphlink", "v1", "labeled"] => FileKind::Labeled,
        ["graphlink", "v1", "looped"] => FileKind::Looped,
        ["graphlink", "v1", "chords"] => FileKind::Chords,
        ["graphlink", ..] => return Err(at(line, ParseErrorKind::BadHeader(header.join(" ")))),
        _ => return Err(at(line, ParseErrorKind::MissingHeader)),
    };
    Ok(match kind {
        FileKind::Labeled => GraphFile::Labeled(parse_graph_body(lines, labeled_vertex)?),
        FileKind::Looped => GraphFile::Looped(parse_graph_body(lines, looped_vertex)?),
        FileKind::Chords => GraphFile::Chords(parse_chord_body(lines)?),
    })
}

/// Parses a chord-diagram file; the header may be omitted.
pub fn parse_chord_diagram(s: &str) -> Result<ChordDiagram, ParseError> {
    let mut lines = content_lines(s).peekable();
    match lines.peek() {
        Some((_, h)) if h.as_slice() == ["graphlink", "v1", "chords"] => {
            lines.next();
        }
        Some((line, h)) if h[0] == "graphlink" => {
            return Err(at(*line, ParseErrorKind::BadHeader(h.join(" "))));
        }
        _ => {}
    }
    parse_chord_body(lines)
}

/// Parses a single-line record such as `v a 0 +; v b 0 -; e a b`.
pub fn parse_graph_record(kind: FileKind, s: &str) -> Result<GraphFile, ParseError> {
    let body = s.split(';').map(str::trim).collect::<Vec<_>>().join("\n");
    parse_graph_file(&format!("graphlink v1 {}\n{body}", kind.name())).map_err(|mut e| {
        e.line = 0;
        e
    })
}

fn body_lines<L: Clone>(g: &Graph<L>, vertex: impl Fn(&L) -> String) -> Vec<String> {
    let mut out: Vec<String> = (0..g.len())
        .map(|i| format!("v {} {}", g.id(i), vertex(g.label(i))))
        .collect();
    out.extend(g.edges().map(|(i, j)| format!("e {} {}", g.id(i), g.id(j))));
    out
}

fn labeled_body(g: &LabeledGraph) -> Vec<String> {
    body_lines(g, |l| format!("{} {}", l.framing, l.sign))
}

fn looped_body(g: &LoopedGraph) -> Vec<String> {
    body_lines(g, |&l| if l { "1".into() } else { "0".into() })
}

fn chord_body(d: &ChordDiagram) -> Vec<String> {
    let mut word = String::from("D:");
    for t in d.word() {
        word.push(' ');
        word.push_str(t.as_str());
    }
    let mut out = vec![word];
    out.extend(d.chords().iter().map(|(t, l)| format!("c {t} {} {}", l.framing, l.sign)));
    out
}

impl GraphFile {
    fn body(&self) -> Vec<String> {
        match self {
            GraphFile::Labeled(g) => labeled_body(g),
            GraphFile::Looped(g) => looped_body(g),
            GraphFile::Chords(d) => chord_body(d),
        }
    }

    /// The `; `-joined body, the form used for one-line listings.
    pub fn to_record(&self) -> String {
        self.body().join("; ")
    }
}

impl fmt::Display for GraphFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graphlink v1 {}", self.kind().name())?;
        for line in self.body() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl FromStr for GraphFile {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_graph_file(s)
    }
}
