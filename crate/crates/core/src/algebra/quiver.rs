use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use serde::Deserialize;

use super::path::{Path, MAX_PATH_LEN};
use crate::error::{Error, Result};
use crate::scalars::{FieldSpec, DEFAULT_PRIME};

const MAX_VERTICES: usize = 256;
const MAX_ARROWS: usize = 256;
const MAX_PATHS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// Validates labels and acyclicity.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooLarge(format!("{} vertices (max {MAX_VERTICES})", vertices.len())));
        }
        if arrows.len() > MAX_ARROWS {
            return Err(Error::TooLarge(format!("{} arrows (max {MAX_ARROWS})", arrows.len())));
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let lookup = |label: &str| {
            vertices.iter().position(|v| v == label).ok_or_else(|| Error::UnknownVertex(label.to_string()))
        };
        let mut names = HashSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, from, to) in arrows {
            if !names.insert(name.clone()) {
                return Err(Error::DuplicateLabel(name));
            }
            out.push(Arrow { name, src: lookup(&from)?, dst: lookup(&to)? });
        }
        let q = Quiver { vertices, arrows: out };
        q.check_acyclic()?;
        Ok(q)
    }

    fn check_acyclic(&self) -> Result<()> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.dst] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = vec![false; n];
        while let Some(v) = stack.pop() {
            removed[v] = true;
            for a in self.arrows.iter().filter(|a| a.src == v) {
                indeg[a.dst] -= 1;
                if indeg[a.dst] == 0 {
                    stack.push(a.dst);
                }
            }
        }
        match removed.iter().position(|r| !r) {
            Some(v) => Err(Error::CycleDetected(self.vertices[v].clone())),
            None => Ok(()),
        }
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == label).ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), src: a.dst, dst: a.src })
                .collect(),
        }
    }
}

/// Path algebra of a finite acyclic quiver.
///
/// Conventions, fixed here once for the whole crate:
///
/// * The projective `P_i` has `(P_i)_j` spanned by the paths `i -> j`; an
///   arrow `a: j -> l` acts by appending, `q |-> q.a`.
/// * `Hom(P_u, P_v)` is spanned by the paths `v -> u`: a path `p` sends `q` to
///   `p.q`. Composition `g o f` is the concatenation `g.f`, so products of
///   matrices of algebra elements compose maps in the usual order.
/// * The injective `I_i` has `(I_i)_j` dual to the paths `j -> i`.
#[derive(Debug)]
pub struct PathAlgebra {
    pub quiver: Quiver,
    pub field: FieldSpec,
    paths: Vec<Vec<Vec<Path>>>,
    index: HashMap<Path, usize>,
    opposite: OnceLock<Arc<PathAlgebra>>,
}

impl PathAlgebra {
    pub fn new(quiver: Quiver, field: FieldSpec) -> Result<Self> {
        let n = quiver.vertices.len();
        let mut paths = vec![vec![Vec::new(); n]; n];
        let mut total = 0usize;
        for s in 0..n {
            let mut frontier = vec![Path::trivial(s)];
            while let Some(p) = frontier.pop() {
                total += 1;
                if total > MAX_PATHS {
                    return Err(Error::TooLarge(format!("more than {MAX_PATHS} paths")));
                }
                paths[s][p.dst()].push(p);
                for (id, a) in quiver.arrows.iter().enumerate().filter(|(_, a)| a.src == p.dst()) {
                    if p.len() == MAX_PATH_LEN {
                        return Err(Error::TooLarge(format!("path longer than {MAX_PATH_LEN} arrows")));
                    }
                    frontier.push(p.then(&Path::arrow(id, a.src, a.dst)).expect("composable"));
                }
            }
        }
        let mut index = HashMap::with_capacity(total);
        for row in &mut paths {
            for list in row.iter_mut() {
                list.sort();
                for (k, p) in list.iter().enumerate() {
                    index.insert(*p, k);
                }
            }
        }
        Ok(PathAlgebra { quiver, field, paths, index, opposite: OnceLock::new() })
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.quiver.vertex(label)
    }

    /// All paths `src -> dst`, sorted.
    pub fn paths(&self, src: usize, dst: usize) -> &[Path] {
        &self.paths[src][dst]
    }

    /// Position of `p` within `paths(p.src(), p.dst())`.
    pub fn path_index(&self, p: &Path) -> usize {
        self.index[p]
    }

    pub fn dim(&self) -> usize {
        self.paths.iter().flatten().map(Vec::len).sum()
    }

    /// Basis of `Hom(P_i, P_j)`: the paths `j -> i`.
    pub fn hom_proj_basis(&self, i: usize, j: usize) -> &[Path] {
        &self.paths[j][i]
    }

    /// `C[i][j] = #paths i -> j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices();
        (0..n).map(|i| (0..n).map(|j| self.paths[i][j].len() as i64).collect()).collect()
    }

    /// Connected component id of every vertex (ids in order of first vertex).
    pub fn components(&self) -> Vec<usize> {
        let n = self.num_vertices();
        let mut comp: Vec<Option<usize>> = vec![None; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start].is_some() {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = Some(next);
            while let Some(v) = stack.pop() {
                for a in &self.quiver.arrows {
                    for (x, y) in [(a.src, a.dst), (a.dst, a.src)] {
                        if x == v && comp[y].is_none() {
                            comp[y] = Some(next);
                            stack.push(y);
                        }
                    }
                }
            }
            next += 1;
        }
        comp.into_iter().map(Option::unwrap).collect()
    }

    /// The opposite algebra; built once and cached.
    pub fn opposite(&self) -> Arc<PathAlgebra> {
        self.opposite
            .get_or_init(|| {
                Arc::new(PathAlgebra::new(self.quiver.opposite(), self.field).expect("opposite of a valid quiver"))
            })
            .clone()
    }
}

#[derive(Deserialize)]
struct QuiverFile {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowFile>,
    prime: Option<u64>,
    #[serde(default)]
    rational: bool,
}

#[derive(Deserialize)]
struct ArrowFile {
    name: String,
    from: String,
    to: String,
}

/// Parses the JSON quiver format.
///
/// ```text
/// {"vertices": ["1","2"], "arrows": [{"name":"a","from":"1","to":"2"}], "prime": 1000003}
/// ```
pub fn load_quiver(text: &str) -> Result<PathAlgebra> {
    let file: QuiverFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse { column: e.column(), message: format!("line {}: {e}", e.line()) })?;
    let field = if file.rational {
        FieldSpec::Rational
    } else {
        FieldSpec::prime(file.prime.unwrap_or(DEFAULT_PRIME))?
    };
    let quiver = Quiver::new(file.vertices, file.arrows.into_iter().map(|a| (a.name, a.from, a.to)).collect())?;
    PathAlgebra::new(quiver, field)
}

pub mod builtin {
    //! Quivers shipped with the crate.

    use super::*;

    pub const A2: &str = include_str!("../../quivers/a2.json");
    pub const A3: &str = include_str!("../../quivers/a3.json");
    pub const KRONECKER: &str = include_str!("../../quivers/kronecker.json");

    pub fn a2() -> PathAlgebra {
        load_quiver(A2).expect("shipped quiver")
    }

    pub fn a3() -> PathAlgebra {
        load_quiver(A3).expect("shipped quiver")
    }

    pub fn kronecker() -> PathAlgebra {
        load_quiver(KRONECKER).expect("shipped quiver")
    }

    /// Two vertices, no arrows.
    pub fn two_points() -> PathAlgebra {
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![]).expect("valid");
        PathAlgebra::new(q, FieldSpec::default()).expect("valid")
    }

    pub fn by_name(name: &str) -> Option<PathAlgebra> {
        match name {
            "a2" => Some(a2()),
            "a3" => Some(a3()),
            "kronecker" => Some(kronecker()),
            "two_points" => Some(two_points()),
            _ => None,
        }
    }
}
