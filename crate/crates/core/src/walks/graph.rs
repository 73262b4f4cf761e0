use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::ffpoly::PrimeField;
use crate::matgroup::{enumerate_group, FiniteGroupTable, FpMatrix, IntMatrix};

/// Undirected multigraph with a group element on every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedGraph {
    n: usize,
    /// Row-major symmetric adjacency counts; a loop at `v` adds to `A[v][v]`.
    adjacency: Vec<u32>,
    decorations: Vec<IntMatrix>,
}

impl DecoratedGraph {
    pub fn new(adjacency: Vec<Vec<u32>>, decorations: Vec<IntMatrix>) -> Result<Self> {
        let n = adjacency.len();
        if n == 0 {
            return Err(invalid("graph needs at least one vertex"));
        }
        if adjacency.iter().any(|r| r.len() != n) {
            return Err(invalid("adjacency matrix must be square"));
        }
        for i in 0..n {
            for j in 0..i {
                if adjacency[i][j] != adjacency[j][i] {
                    return Err(invalid(format!("adjacency not symmetric at ({i}, {j})")));
                }
            }
        }
        if decorations.len() != n {
            return Err(invalid(format!(
                "{} decorations for {n} vertices",
                decorations.len()
            )));
        }
        let dim = decorations[0].dim();
        if decorations.iter().any(|d| d.dim() != dim) {
            return Err(invalid("decorations must share a dimension"));
        }
        Ok(DecoratedGraph {
            n,
            adjacency: adjacency.into_iter().flatten().collect(),
            decorations,
        })
    }

    /// Every pair of vertices joined once, and one loop per vertex.
    pub fn complete_with_loops(decorations: Vec<IntMatrix>) -> Result<Self> {
        let n = decorations.len();
        Self::new(vec![vec![1; n]; n], decorations)
    }

    /// Vertex `i` is joined to `j` unless `t_i t_j = I`, so consecutive
    /// letters never cancel.
    pub fn no_backtracking(decorations: Vec<IntMatrix>) -> Result<Self> {
        let n = decorations.len();
        let adj = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| u32::from(!decorations[i].mul(&decorations[j]).is_identity()))
                    .collect()
            })
            .collect();
        Self::new(adj, decorations)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self, i: usize, j: usize) -> u32 {
        self.adjacency[i * self.n + j]
    }

    pub fn adjacency_rows(&self) -> Vec<Vec<u32>> {
        self.adjacency.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    pub fn degree(&self, v: usize) -> u64 {
        (0..self.n).map(|w| self.adjacency(v, w) as u64).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        (0..self.n)
            .map(move |w| (w, self.adjacency(v, w)))
            .filter(|&(_, m)| m > 0)
    }

    pub fn decorations(&self) -> &[IntMatrix] {
        &self.decorations
    }

    pub fn decoration(&self, v: usize) -> &IntMatrix {
        &self.decorations[v]
    }

    pub fn matrix_dim(&self) -> usize {
        self.decorations[0].dim()
    }

    pub fn adjacency_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| self.adjacency(i, j) as f64)
    }

    pub fn decorations_mod(&self, field: PrimeField) -> Vec<FpMatrix> {
        self.decorations.iter().map(|d| d.to_fp(field)).collect()
    }

    /// Enumerates the group generated by the decorations mod `p`.
    pub fn group_table(&self, p: u64, budget: usize) -> Result<FiniteGroupTable> {
        let field = PrimeField::new(p)?;
        enumerate_group(&self.decorations_mod(field), budget)
    }

    /// Parses the plain-text format: `vertices n`, then `edge i j [mult]`
    /// and `decorate i <row-major integers>` lines. Vertices are 0-based and
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut adj: Vec<Vec<u32>> = Vec::new();
        let mut decs: Vec<Option<IntMatrix>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse {
                line: lineno + 1,
                msg,
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |t: &str| -> Result<usize> {
                t.parse()
                    .map_err(|_| err(format!("expected a non-negative integer, got {t:?}")))
            };
            let vertex = |t: &str, n: usize| -> Result<usize> {
                let v = num(t)?;
                if v >= n {
                    return Err(err(format!("vertex {v} out of range (n = {n})")));
                }
                Ok(v)
            };
            match (toks[0], n) {
                ("vertices", None) => {
                    if toks.len() != 2 {
                        return Err(err("usage: vertices n".into()));
                    }
                    let k = num(toks[1])?;
                    if k == 0 {
                        return Err(err("graph needs at least one vertex".into()));
                    }
                    n = Some(k);
                    adj = vec![vec![0; k]; k];
                    decs = vec![None; k];
                }
                ("vertices", Some(_)) => return Err(err("duplicate vertices line".into())),
                (_, None) => return Err(err("first line must be `vertices n`".into())),
                ("edge", Some(k)) => {
                    if !(3..=4).contains(&toks.len()) {
                        return Err(err("usage: edge i j [multiplicity]".into()));
                    }
                    let (i, j) = (vertex(toks[1], k)?, vertex(toks[2], k)?);
                    let m = if toks.len() == 4 { num(toks[3])? as u32 } else { 1 };
                    adj[i][j] += m;
                    if i != j {
                        adj[j][i] += m;
                    }
                }
                ("decorate", Some(k)) => {
                    if toks.len() < 3 {
                        return Err(err("usage: decorate i <row-major integers>".into()));
                    }
                    let v = vertex(toks[1], k)?;
                    let m = IntMatrix::from_str(&toks[2..].join(" "))
                        .map_err(|e| err(e.to_string()))?;
                    decs[v] = Some(m);
                }
                (other, _) => return Err(err(format!("unknown directive {other:?}"))),
            }
        }
        if n.is_none() {
            return Err(invalid("empty graph description"));
        }
        let decorations = decs
            .into_iter()
            .enumerate()
            .map(|(v, d)| d.ok_or_else(|| invalid(format!("vertex {v} has no decoration"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(adj, decorations)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Inverse of [`DecoratedGraph::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.n);
        for i in 0..self.n {
            for j in i..self.n {
                let m = self.adjacency(i, j);
                if m > 0 {
                    let _ = writeln!(s, "edge {i} {j} {m}");
                }
            }
        }
        for (v, d) in self.decorations.iter().enumerate() {
            let entries: Vec<String> = d.entries().iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "decorate {v} {}", entries.join(" "));
        }
        s
    }
}
