use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::complex::{AlgMatrix, ChainMap, PerfComplex};
use super::elem::AlgElem;
use crate::algebra::{Path, PathAlgebra};
use crate::scalars::{Matrix, Scalar};

/// `k -> dim Hom^k(X, Y)`, nonzero entries only.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct HomProfile {
    pub dims: BTreeMap<i32, usize>,
}

impl HomProfile {
    pub fn get(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn shifted(&self, by: i32) -> HomProfile {
        HomProfile { dims: self.dims.iter().map(|(&k, &v)| (k + by, v)).collect() }
    }

    /// `Σ (-1)^k dim Hom^k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|(&k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) }).sum()
    }
}

/// Scalar basis of `Hom^n(X, Y) = ⊕_d Hom(X^d, Y^{d+n})`.
///
/// One block per summand pair `(c in X^d, r in Y^{d+n})`, spanned by the
/// paths from `Y^{d+n}[r]` to `X^d[c]`.
struct HomSpace<'a> {
    blocks: Vec<Block<'a>>,
    offsets: HashMap<(i32, usize, usize), usize>,
    dim: usize,
}

struct Block<'a> {
    degree: i32,
    row: usize,
    col: usize,
    paths: &'a [Path],
    offset: usize,
}

impl<'a> HomSpace<'a> {
    fn new<F: Scalar>(alg: &'a PathAlgebra, x: &PerfComplex<F>, y: &PerfComplex<F>, n: i32) -> Self {
        let mut blocks = Vec::new();
        let mut offsets = HashMap::new();
        let mut dim = 0;
        for d in x.degrees() {
            for (c, &u) in x.term(d).iter().enumerate() {
                for (r, &v) in y.term(d + n).iter().enumerate() {
                    let paths = alg.paths(v, u);
                    if paths.is_empty() {
                        continue;
                    }
                    offsets.insert((d, r, c), dim);
                    blocks.push(Block { degree: d, row: r, col: c, paths, offset: dim });
                    dim += paths.len();
                }
            }
        }
        HomSpace { blocks, offsets, dim }
    }

    fn coordinate(&self, alg: &PathAlgebra, d: i32, r: usize, c: usize, p: &Path) -> usize {
        self.offsets[&(d, r, c)] + alg.path_index(p)
    }
}

/// Matrix of `D(f) = d_Y f - (-1)^n f d_X` from `Hom^n` to `Hom^{n+1}`.
fn hom_differential<F: Scalar>(
    alg: &PathAlgebra,
    x: &PerfComplex<F>,
    y: &PerfComplex<F>,
    n: i32,
    src: &HomSpace<'_>,
    dst: &HomSpace<'_>,
) -> Matrix<F> {
    let mut m = Matrix::<F>::zeros(dst.dim, src.dim);
    let sign = if n % 2 == 0 { -F::one() } else { F::one() };
    for b in &src.blocks {
        let d = b.degree;
        let dy = y.diff_ref(d + n);
        let dx = x.diff_ref(d - 1);
        for (k, p) in b.paths.iter().enumerate() {
            let col = b.offset + k;
            if let Some(dy) = dy {
                for r2 in 0..dy.rows() {
                    for (q, coeff) in dy.get(r2, b.row).terms() {
                        let Some(qp) = q.then(p) else { continue };
                        let row = dst.coordinate(alg, d, r2, b.col, &qp);
                        let cur = m.get(row, col).clone();
                        m.set(row, col, cur + coeff.clone());
                    }
                }
            }
            if let Some(dx) = dx {
                for c2 in 0..dx.cols() {
                    for (q, coeff) in dx.get(b.col, c2).terms() {
                        let Some(pq) = p.then(q) else { continue };
                        let row = dst.coordinate(alg, d - 1, b.row, c2, &pq);
                        let cur = m.get(row, col).clone();
                        m.set(row, col, cur + sign.clone() * coeff.clone());
                    }
                }
            }
        }
    }
    m
}

fn hom_range<F: Scalar>(x: &PerfComplex<F>, y: &PerfComplex<F>) -> Option<(i32, i32)> {
    if x.is_zero() || y.is_zero() {
        return None;
    }
    Some((y.lo() - x.hi(), y.hi() - x.lo()))
}

/// `dim Hom^k(X, Y)` in the homotopy category, for all `k`.
pub fn hom_dims<F: Scalar>(alg: &PathAlgebra, x: &PerfComplex<F>, y: &PerfComplex<F>) -> HomProfile {
    let Some((lo, hi)) = hom_range(x, y) else {
        return HomProfile::default();
    };
    let spaces: Vec<HomSpace<'_>> = (lo..=hi + 1).map(|n| HomSpace::new(alg, x, y, n)).collect();
    // rank[n - lo] = rank of D^n.
    let ranks: Vec<usize> =
        (lo..=hi).map(|n| hom_differential(alg, x, y, n, &spaces[(n - lo) as usize], &spaces[(n - lo + 1) as usize]).rank()).collect();
    let mut dims = BTreeMap::new();
    for n in lo..=hi {
        let i = (n - lo) as usize;
        let below = if i > 0 { ranks[i - 1] } else { 0 };
        let h = spaces[i].dim - ranks[i] - below;
        if h > 0 {
            dims.insert(n, h);
        }
    }
    HomProfile { dims }
}

fn vector_to_map<F: Scalar>(
    x: &PerfComplex<F>,
    target: &PerfComplex<F>,
    n: i32,
    space: &HomSpace<'_>,
    v: &[F],
) -> ChainMap<F> {
    let mut comps: BTreeMap<i32, AlgMatrix<F>> = BTreeMap::new();
    for b in &space.blocks {
        let coeffs: Vec<(Path, F)> = b
            .paths
            .iter()
            .enumerate()
            .filter(|(k, _)| !v[b.offset + k].is_zero())
            .map(|(k, p)| (*p, v[b.offset + k].clone()))
            .collect();
        if coeffs.is_empty() {
            continue;
        }
        let m = comps
            .entry(b.degree)
            .or_insert_with(|| Matrix::zeros(target.term(b.degree).len(), x.term(b.degree).len()));
        m.set(b.row, b.col, AlgElem::from_terms(coeffs));
    }
    let _ = n;
    ChainMap::unchecked(x.clone(), target.clone(), comps)
}

/// Basis of the degree-`n` cocycles `Z^n Hom(X, Y)` as chain maps
/// `X -> Σ^n Y`.
pub fn cocycles<F: Scalar>(alg: &PathAlgebra, x: &PerfComplex<F>, y: &PerfComplex<F>, n: i32) -> Vec<ChainMap<F>> {
    if x.is_zero() || y.is_zero() {
        return Vec::new();
    }
    let here = HomSpace::new(alg, x, y, n);
    let next = HomSpace::new(alg, x, y, n + 1);
    let target = y.shift(n);
    hom_differential(alg, x, y, n, &here, &next)
        .kernel_basis()
        .iter()
        .map(|v| vector_to_map(x, &target, n, &here, v))
        .collect()
}

/// Hom profile together with cocycle representatives of a basis of each
/// `H^n Hom(X, Y)`, as chain maps `X -> Σ^n Y`.
///
/// Representatives are the kernel vectors picked by the row reduction of
/// `[coboundaries | cocycles]`, so the choice is deterministic.
pub fn hom_complex<F: Scalar>(
    alg: &PathAlgebra,
    x: &PerfComplex<F>,
    y: &PerfComplex<F>,
) -> (HomProfile, BTreeMap<i32, Vec<ChainMap<F>>>) {
    let Some((lo, hi)) = hom_range(x, y) else {
        return (HomProfile::default(), BTreeMap::new());
    };
    let spaces: Vec<HomSpace<'_>> = (lo - 1..=hi + 1).map(|n| HomSpace::new(alg, x, y, n)).collect();
    let space = |n: i32| &spaces[(n - lo + 1) as usize];
    let mut dims = BTreeMap::new();
    let mut reps = BTreeMap::new();
    for n in lo..=hi {
        let boundary = hom_differential(alg, x, y, n - 1, space(n - 1), space(n));
        let kernel = hom_differential(alg, x, y, n, space(n), space(n + 1)).kernel_basis();
        let image: Vec<Vec<F>> = (0..boundary.cols()).map(|c| boundary.column(c)).collect();
        let mut cols = image.clone();
        cols.extend(kernel.iter().cloned());
        let pivots = Matrix::from_columns(space(n).dim, &cols).rref().pivots;
        let target = y.shift(n);
        let chosen: Vec<ChainMap<F>> = pivots
            .into_iter()
            .filter(|&c| c >= image.len())
            .map(|c| vector_to_map(x, &target, n, space(n), &kernel[c - image.len()]))
            .collect();
        if !chosen.is_empty() {
            dims.insert(n, chosen.len());
            reps.insert(n, chosen);
        }
    }
    (HomProfile { dims }, reps)
}
