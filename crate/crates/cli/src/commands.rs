use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use graphlink::canon::canonical_graph;
use graphlink::chi::{chi as to_looped, chi_inverse};
use graphlink::chord::{intersection_graph, surgery_components, verify_soboleva};
use graphlink::format::parse_graph_file;
use graphlink::invariants::{
    atom_genus, component_count, is_alternating, is_nonsplit, kauffman_bracket, looped_minimality_certificate,
    minimality_certificate, parity_for, writhe,
};
use graphlink::moves::{
    detect_looped_moves, detect_moves, equivalence_search, free_equivalence_search, looped_equivalence_search,
    MoveParseError,
};
use graphlink::parity::parity_knot;
use graphlink::realize::{graphlink_realizability, looped_realizability, realize_looped, realize_with_limit};
use graphlink::smoothing::{bracket_knot, bracket_link2, reduce_sum};
use graphlink::{
    ChordDiagram, Error, GraphFile, LabeledGraph, LoopedGraph, MinimalityCertificate, MoveSpec, ParseError,
    Realizability, SearchBounds,
};
use thiserror::Error;

use crate::{BracketKind, Bounds, Direction};

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    MoveSpec(#[from] MoveParseError),
    #[error("{0}")]
    Kind(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Io { .. } => 1,
            Failure::Parse { .. } | Failure::MoveSpec(_) | Failure::Kind(_) => 3,
            Failure::Domain(e) if e.is_size_limit() => 4,
            Failure::Domain(_) => 2,
        }
    }
}

type Out = Result<String, Failure>;

fn read(path: &Path) -> Result<GraphFile, Failure> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|source| Failure::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_graph_file(&text).map_err(|source| Failure::Parse {
        path: path.to_owned(),
        source,
    })
}

fn wrong_kind(path: &Path, f: &GraphFile, wanted: &str) -> Failure {
    Failure::Kind(format!(
        "{}: expected a {wanted} file, found {}",
        path.display(),
        f.kind().name()
    ))
}

fn read_labeled(path: &Path) -> Result<LabeledGraph, Failure> {
    match read(path)? {
        GraphFile::Labeled(g) => Ok(g),
        other => Err(wrong_kind(path, &other, "labeled")),
    }
}

fn bounds(b: Bounds) -> SearchBounds {
    SearchBounds {
        max_vertices: b.max_vertices,
        max_steps: b.max_steps,
    }
}

fn certificate_lines(out: &mut String, c: &MinimalityCertificate) {
    let _ = writeln!(out, "minimal: {}", c.verdict.as_str());
}

fn labeled_invariants(g: &LabeledGraph) -> Out {
    let mut out = String::new();
    let _ = writeln!(out, "kind: labeled");
    let _ = writeln!(out, "vertices: {}", g.len());
    let _ = writeln!(out, "edges: {}", g.edge_count());
    let _ = writeln!(out, "components: {}", component_count(g));
    match writhe(g) {
        Ok(w) => {
            let _ = writeln!(out, "writhe: {}", w.total);
            let per: Vec<String> = (0..g.len()).map(|i| format!("{}={}", g.id(i), w.per_vertex[i])).collect();
            let _ = writeln!(out, "writhe-per-vertex: {}", per.join(" "));
        }
        Err(_) => {
            let _ = writeln!(out, "writhe: undefined");
        }
    }
    let bracket = kauffman_bracket(g)?;
    let _ = writeln!(out, "bracket: {bracket}");
    match bracket.span() {
        Ok(s) => {
            let _ = writeln!(out, "span: {s}");
        }
        Err(_) => {
            let _ = writeln!(out, "span: undefined");
        }
    }
    let _ = writeln!(out, "atom-genus: {}", atom_genus(g));
    let _ = writeln!(out, "alternating: {}", is_alternating(g));
    let _ = writeln!(out, "non-split: {}", is_nonsplit(g));
    match parity_for(g) {
        Some(p) => {
            let _ = writeln!(out, "parity: {p}");
        }
        None => {
            let _ = writeln!(out, "parity: undefined");
        }
    }
    certificate_lines(&mut out, &minimality_certificate(g));
    Ok(out)
}

fn looped_invariants(l: &LoopedGraph) -> Out {
    let mut out = String::new();
    let loops: Vec<String> = (0..l.len()).filter(|&i| l.is_looped(i)).map(|i| l.id(i).to_string()).collect();
    let _ = writeln!(out, "kind: looped");
    let _ = writeln!(out, "vertices: {}", l.len());
    let _ = writeln!(out, "edges: {}", l.edge_count());
    let _ = writeln!(out, "loops: {}", loops.join(" "));
    let _ = writeln!(out, "parity: {}", parity_knot(l));
    certificate_lines(&mut out, &looped_minimality_certificate(l));
    Ok(out)
}

pub fn invariants(path: &Path) -> Out {
    match read(path)? {
        GraphFile::Labeled(g) => labeled_invariants(&g),
        GraphFile::Looped(l) => looped_invariants(&l),
        other => Err(wrong_kind(path, &other, "labeled or looped")),
    }
}

pub fn moves(path: &Path) -> Out {
    let lines: Vec<String> = match read(path)? {
        GraphFile::Labeled(g) => detect_moves(&g).iter().map(ToString::to_string).collect(),
        GraphFile::Looped(l) => detect_looped_moves(&l).iter().map(ToString::to_string).collect(),
        other => return Err(wrong_kind(path, &other, "labeled or looped")),
    };
    Ok(lines.iter().map(|l| format!("{l}\n")).collect())
}

pub fn apply_move(path: &Path, spec: &str) -> Out {
    let spec: MoveSpec = spec.parse()?;
    let out = match (read(path)?, spec) {
        (GraphFile::Labeled(g), MoveSpec::Labeled(m)) => GraphFile::Labeled(m.apply(&g)?),
        (GraphFile::Looped(l), MoveSpec::Looped(m)) => GraphFile::Looped(m.apply(&l)?),
        (f, MoveSpec::Labeled(_)) => return Err(wrong_kind(path, &f, "labeled")),
        (f, MoveSpec::Looped(_)) => return Err(wrong_kind(path, &f, "looped")),
    };
    Ok(out.to_string())
}

fn verified(out: &mut String, d: &ChordDiagram, target: Option<&LabeledGraph>) {
    if let Some(g) = target {
        let ok = intersection_graph(d) == *g;
        let _ = writeln!(out, "round-trip: {}", if ok { "ok" } else { "MISMATCH" });
    }
    out.push_str(&GraphFile::Chords(d.clone()).to_string());
}

fn verdict_lines<M: std::fmt::Display>(out: &mut String, r: &Realizability<M>) {
    let _ = writeln!(out, "graph-link: {}", r.name());
    if let Realizability::RealizableWitness { diagram, path } = r {
        let moves: Vec<String> = path.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "path: {}", if moves.is_empty() { "-".into() } else { moves.join("; ") });
        verified(out, diagram, None);
    }
}

pub fn realize(path: &Path, max_chords: usize, representative_only: bool, b: Bounds) -> Out {
    let mut out = String::new();
    match read(path)? {
        GraphFile::Labeled(g) => match realize_with_limit(&g, max_chords)? {
            Some(d) => {
                let _ = writeln!(out, "representative: realizable");
                verified(&mut out, &d, Some(&g));
            }
            None => {
                let _ = writeln!(out, "representative: non-realizable");
                if !representative_only {
                    verdict_lines(&mut out, &graphlink_realizability(&g, max_chords, bounds(b))?);
                }
            }
        },
        GraphFile::Looped(l) => match realize_looped(&l, max_chords)? {
            Some(d) => {
                let _ = writeln!(out, "representative: realizable");
                verified(&mut out, &d, None);
            }
            None => {
                let _ = writeln!(out, "representative: non-realizable");
                if !representative_only {
                    verdict_lines(&mut out, &looped_realizability(&l, max_chords, bounds(b))?);
                }
            }
        },
        other => return Err(wrong_kind(path, &other, "labeled or looped")),
    }
    Ok(out)
}

fn trace<M: std::fmt::Display>(found: Option<Vec<M>>) -> String {
    match found {
        Some(moves) => {
            let mut out = format!("equivalent: {} move(s)\n", moves.len());
            for m in moves {
                let _ = writeln!(out, "{m}");
            }
            out
        }
        None => "not-found-within-bounds\n".into(),
    }
}

pub fn equiv(a: &Path, b: &Path, free: bool, bd: Bounds) -> Out {
    let sb = bounds(bd);
    Ok(match (read(a)?, read(b)?) {
        (GraphFile::Labeled(x), GraphFile::Labeled(y)) if free => trace(free_equivalence_search(&x, &y, sb)?),
        (GraphFile::Labeled(x), GraphFile::Labeled(y)) => trace(equivalence_search(&x, &y, sb)?),
        (GraphFile::Looped(x), GraphFile::Looped(y)) => trace(looped_equivalence_search(&x, &y, sb)?),
        (x, y) => {
            return Err(Failure::Kind(format!(
                "cannot compare a {} file with a {} file",
                x.kind().name(),
                y.kind().name()
            )))
        }
    })
}

pub fn chi(path: &Path, direction: Direction) -> Out {
    let f = read(path)?;
    let out = match (direction, f) {
        (Direction::ToLooped, GraphFile::Labeled(g)) => GraphFile::Looped(to_looped(&g)?),
        (Direction::ToLabeled, GraphFile::Looped(l)) => GraphFile::Labeled(chi_inverse(&l)),
        (Direction::ToLooped, f) => return Err(wrong_kind(path, &f, "labeled")),
        (Direction::ToLabeled, f) => return Err(wrong_kind(path, &f, "looped")),
    };
    Ok(out.to_string())
}

pub fn parity_bracket(path: &Path, kind: BracketKind) -> Out {
    let g = read_labeled(path)?;
    let sum = match kind {
        BracketKind::Knot => bracket_knot(&g)?,
        BracketKind::Link2 => bracket_link2(&g)?,
    };
    let reduced = reduce_sum(&sum)?;
    let mut out = format!("summands: {}\n", reduced.len());
    for h in reduced.graphs() {
        let c = canonical_graph(h, graphlink::canon::MAX_CANON_VERTICES)?;
        let _ = writeln!(out, "term: {}", GraphFile::Labeled(c).to_record());
    }
    Ok(out)
}

pub fn chords(path: &Path) -> Out {
    let d = match read(path)? {
        GraphFile::Chords(d) => d,
        other => return Err(wrong_kind(path, &other, "chords")),
    };
    let g = intersection_graph(&d);
    let mut out = String::new();
    let _ = writeln!(out, "chords: {}", d.len());
    let _ = writeln!(out, "surgery-components: {}", surgery_components(&d));
    let _ = writeln!(out, "corank-plus-one: {}", g.adjacency_matrix().corank() + 1);
    let _ = writeln!(out, "soboleva: {}", if verify_soboleva(&d) { "ok" } else { "MISMATCH" });
    out.push_str(&GraphFile::Labeled(g).to_string());
    Ok(out)
}
