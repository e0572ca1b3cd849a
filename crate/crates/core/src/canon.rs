//! Canonical forms for small vertex-labeled graphs.
//!
//! Individualization-refinement: equitable color refinement, branching on
//! the first non-singleton cell, with pruning by automorphisms discovered
//! from leaves that share a certificate.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexLabel};

/// Default vertex bound for canonicalization.
pub const DEFAULT_CANON_LIMIT: usize = 16;

/// Words are single `u64` rows, so no configured bound may exceed this.
pub const MAX_CANON_VERTICES: usize = 64;

/// Byte string equal for two graphs iff they are isomorphic respecting
/// vertex labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn canonical_form<L: VertexLabel>(g: &Graph<L>) -> Result<CanonicalForm> {
    canonical_form_with_limit(g, DEFAULT_CANON_LIMIT)
}

pub fn canonical_form_with_limit<L: VertexLabel>(g: &Graph<L>, limit: usize) -> Result<CanonicalForm> {
    canonize(g, limit).map(|(c, _)| c)
}

/// Canonical form together with the canonical vertex order: `order[p]` is
/// the position in `g` of the vertex placed at canonical position `p`.
pub fn canonize<L: VertexLabel>(g: &Graph<L>, limit: usize) -> Result<(CanonicalForm, Vec<usize>)> {
    let limit = limit.min(MAX_CANON_VERTICES);
    if g.len() > limit {
        return Err(Error::SizeLimit {
            what: "canonical form",
            limit,
            actual: g.len(),
        });
    }
    let colors: Vec<u8> = g.labels().iter().map(|l| l.color()).collect();
    let mut search = Search::new(g.adjacency_words(), colors, L::KIND);
    search.run();
    let (cert, perm) = search.best.expect("search visits at least one leaf");
    let mut order = vec![0; perm.len()];
    for (v, &p) in perm.iter().enumerate() {
        order[p] = v;
    }
    Ok((CanonicalForm(cert), order))
}

/// `g` with vertices reordered canonically. Isomorphic inputs give equal
/// outputs up to vertex names.
pub fn canonical_graph<L: VertexLabel>(g: &Graph<L>, limit: usize) -> Result<Graph<L>> {
    let (_, order) = canonize(g, limit)?;
    Ok(g.select(&order))
}

pub fn isomorphic<L: VertexLabel>(a: &Graph<L>, b: &Graph<L>) -> Result<bool> {
    if a.len() != b.len() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

struct Search {
    n: usize,
    adj: Vec<u64>,
    labels: Vec<u8>,
    kind: u8,
    first: Option<(Vec<u8>, Vec<usize>, Vec<usize>)>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    best_path: Vec<usize>,
    generators: Vec<Vec<usize>>,
}

impl Search {
    fn new(adj: Vec<u64>, labels: Vec<u8>, kind: u8) -> Self {
        Search {
            n: labels.len(),
            adj,
            labels,
            kind,
            first: None,
            best: None,
            best_path: Vec::new(),
            generators: Vec::new(),
        }
    }

    fn run(&mut self) {
        let mut distinct: Vec<u8> = self.labels.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let col: Vec<usize> = self
            .labels
            .iter()
            .map(|c| distinct.binary_search(c).unwrap())
            .collect();
        let col = self.refine(col);
        let mut path = Vec::new();
        self.dfs(col, &mut path);
    }

    /// Equitable refinement; colors are dense and canonically ordered.
    fn refine(&self, mut col: Vec<usize>) -> Vec<usize> {
        let n = self.n;
        let mut cells = count_cells(&col);
        loop {
            if cells == n {
                return col;
            }
            let mut sig: Vec<(Vec<usize>, usize)> = (0..n)
                .map(|v| {
                    let mut s = vec![0usize; cells + 1];
                    s[0] = col[v];
                    let mut row = self.adj[v];
                    while row != 0 {
                        let w = row.trailing_zeros() as usize;
                        row &= row - 1;
                        s[1 + col[w]] += 1;
                    }
                    (s, v)
                })
                .collect();
            sig.sort_unstable();
            let mut next = vec![0; n];
            let mut rank = 0;
            for k in 0..n {
                if k > 0 && sig[k].0 != sig[k - 1].0 {
                    rank += 1;
                }
                next[sig[k].1] = rank;
            }
            let new_cells = rank + 1;
            col = next;
            if new_cells == cells {
                return col;
            }
            cells = new_cells;
        }
    }

    fn certificate(&self, col: &[usize]) -> Vec<u8> {
        let n = self.n;
        let mut inv = vec![0; n];
        for (v, &p) in col.iter().enumerate() {
            inv[p] = v;
        }
        let mut out = Vec::with_capacity(2 + n + n * n / 16 + 1);
        out.push(self.kind);
        out.push(n as u8);
        out.extend(inv.iter().map(|&v| self.labels[v]));
        let (mut byte, mut bits) = (0u8, 0);
        for p in 0..n {
            for q in p + 1..n {
                byte = byte << 1 | (self.adj[inv[p]] >> inv[q] & 1) as u8;
                bits += 1;
                if bits == 8 {
                    out.push(byte);
                    byte = 0;
                    bits = 0;
                }
            }
        }
        if bits > 0 {
            out.push(byte << (8 - bits));
        }
        out
    }

    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn dfs(&mut self, col: Vec<usize>, path: &mut Vec<usize>) -> Option<usize> {
        let n = self.n;
        let Some(target) = first_nonsingleton(&col) else {
            return self.leaf(col, path);
        };
        let cell: Vec<usize> = (0..n).filter(|&v| col[v] == target).collect();
        let level = path.len();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if !tried.is_empty() && self.same_orbit(path, &tried, v) {
                continue;
            }
            tried.push(v);
            let child = individualize(&col, v, target);
            let child = self.refine(child);
            path.push(v);
            let jump = self.dfs(child, path);
            path.pop();
            if let Some(l) = jump {
                if l < level {
                    return Some(l);
                }
            }
        }
        None
    }

    fn leaf(&mut self, col: Vec<usize>, path: &[usize]) -> Option<usize> {
        let cert = self.certificate(&col);
        let Some((first_cert, first_perm, first_path)) = &self.first else {
            self.first = Some((cert.clone(), col.clone(), path.to_vec()));
            self.best = Some((cert, col));
            self.best_path = path.to_vec();
            return None;
        };
        if &cert == first_cert {
            let gamma = automorphism(first_perm, &col);
            let l = divergence(first_path, path);
            self.generators.push(gamma);
            return Some(l);
        }
        let (best_cert, best_perm) = self.best.as_ref().unwrap();
        match cert.cmp(best_cert) {
            std::cmp::Ordering::Equal => {
                let gamma = automorphism(best_perm, &col);
                let l = divergence(&self.best_path, path);
                self.generators.push(gamma);
                Some(l)
            }
            std::cmp::Ordering::Less => {
                self.best = Some((cert, col));
                self.best_path = path.to_vec();
                None
            }
            std::cmp::Ordering::Greater => None,
        }
    }

    /// Whether `v` lies in the orbit of an already tried vertex under the
    /// known automorphisms fixing `path` pointwise.
    fn same_orbit(&self, path: &[usize], tried: &[usize], v: usize) -> bool {
        let mut uf: Vec<usize> = (0..self.n).collect();
        let mut any = false;
        for g in &self.generators {
            if path.iter().all(|&p| g[p] == p) {
                any = true;
                for x in 0..self.n {
                    union(&mut uf, x, g[x]);
                }
            }
        }
        if !any {
            return false;
        }
        let r = find(&mut uf, v);
        tried.iter().any(|&t| find(&mut uf, t) == r)
    }
}

fn count_cells(col: &[usize]) -> usize {
    col.iter().copied().max().map_or(0, |m| m + 1)
}

fn first_nonsingleton(col: &[usize]) -> Option<usize> {
    let mut size = vec![0usize; col.len()];
    for &c in col {
        size[c] += 1;
    }
    size.iter().position(|&s| s > 1)
}

fn individualize(col: &[usize], v: usize, target: usize) -> Vec<usize> {
    col.iter()
        .enumerate()
        .map(|(w, &c)| {
            if c > target || (c == target && w != v) {
                c + 1
            } else {
                c
            }
        })
        .collect()
}

/// The vertex map sending `a`'s leaf onto `b`'s leaf: `g[x] = b⁻¹(a(x))`.
fn automorphism(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut binv = vec![0; b.len()];
    for (v, &p) in b.iter().enumerate() {
        binv[p] = v;
    }
    a.iter().map(|&p| binv[p]).collect()
}

fn divergence(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn find(uf: &mut [usize], mut x: usize) -> usize {
    while uf[x] != x {
        uf[x] = uf[uf[x]];
        x = uf[x];
    }
    x
}

fn union(uf: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(uf, a), find(uf, b));
    if ra != rb {
        uf[ra.max(rb)] = ra.min(rb);
    }
}
