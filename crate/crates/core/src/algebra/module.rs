use super::path::Path;
use super::quiver::PathAlgebra;
use crate::scalars::{Matrix, Scalar};

/// A finite-dimensional representation of the quiver.
///
/// `arrow_maps[a]` has shape `dims[target(a)] x dims[source(a)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleRep<F> {
    pub dims: Vec<usize>,
    pub arrow_maps: Vec<Matrix<F>>,
}

impl<F: Scalar> ModuleRep<F> {
    pub fn zero(alg: &PathAlgebra) -> Self {
        let n = alg.num_vertices();
        ModuleRep {
            dims: vec![0; n],
            arrow_maps: alg.quiver.arrows.iter().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn simple(alg: &PathAlgebra, i: usize) -> Self {
        let dims: Vec<usize> = (0..alg.num_vertices()).map(|j| usize::from(i == j)).collect();
        let arrow_maps = alg.quiver.arrows.iter().map(|a| Matrix::zeros(dims[a.dst], dims[a.src])).collect();
        ModuleRep { dims, arrow_maps }
    }

    pub fn projective(alg: &PathAlgebra, i: usize) -> Self {
        let dims: Vec<usize> = (0..alg.num_vertices()).map(|j| alg.paths(i, j).len()).collect();
        let arrow_maps = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(id, a)| {
                let arrow = Path::arrow(id, a.src, a.dst);
                let mut m = Matrix::zeros(dims[a.dst], dims[a.src]);
                for (col, q) in alg.paths(i, a.src).iter().enumerate() {
                    let img = q.then(&arrow).expect("composable");
                    m.set(alg.path_index(&img), col, F::one());
                }
                m
            })
            .collect();
        ModuleRep { dims, arrow_maps }
    }

    pub fn injective(alg: &PathAlgebra, i: usize) -> Self {
        let dims: Vec<usize> = (0..alg.num_vertices()).map(|j| alg.paths(j, i).len()).collect();
        let arrow_maps = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(id, a)| {
                let arrow = Path::arrow(id, a.src, a.dst);
                let mut m = Matrix::zeros(dims[a.dst], dims[a.src]);
                for (row, s) in alg.paths(a.dst, i).iter().enumerate() {
                    let pre = arrow.then(s).expect("composable");
                    m.set(row, alg.path_index(&pre), F::one());
                }
                m
            })
            .collect();
        ModuleRep { dims, arrow_maps }
    }

    /// Composition length; every simple is one-dimensional.
    pub fn length(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.length() == 0
    }

    pub fn is_valid(&self, alg: &PathAlgebra) -> bool {
        self.dims.len() == alg.num_vertices()
            && self.arrow_maps.len() == alg.quiver.arrows.len()
            && alg
                .quiver
                .arrows
                .iter()
                .zip(&self.arrow_maps)
                .all(|(a, m)| m.rows() == self.dims[a.dst] && m.cols() == self.dims[a.src])
    }

    /// Linear map `M_src(p) -> M_dst(p)` of a path.
    pub fn path_action(&self, p: &Path) -> Matrix<F> {
        let mut m = Matrix::identity(self.dims[p.src()]);
        for &a in p.arrows() {
            m = self.arrow_maps[a as usize].mul(&m);
        }
        m
    }

    pub fn direct_sum(&self, other: &ModuleRep<F>) -> ModuleRep<F> {
        ModuleRep {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            arrow_maps: self
                .arrow_maps
                .iter()
                .zip(&other.arrow_maps)
                .map(|(a, b)| Matrix::block_diag(a, b))
                .collect(),
        }
    }

    /// Ranks of all arrow maps; a cheap isomorphism invariant.
    pub fn arrow_ranks(&self) -> Vec<usize> {
        self.arrow_maps.iter().map(Matrix::rank).collect()
    }
}

/// A bounded complex of representations with vertexwise differentials.
///
/// `diffs[i][v]` maps `terms[i]` to `terms[i + 1]` at vertex `v`.
#[derive(Debug, Clone)]
pub struct RepComplex<F> {
    pub lo: i32,
    pub terms: Vec<ModuleRep<F>>,
    pub diffs: Vec<Vec<Matrix<F>>>,
}

impl<F: Scalar> RepComplex<F> {
    fn index(&self, degree: i32) -> Option<usize> {
        let i = degree.checked_sub(self.lo)?;
        (0..self.terms.len() as i32).contains(&i).then_some(i as usize)
    }

    fn incoming(&self, alg: &PathAlgebra, i: usize, v: usize) -> Matrix<F> {
        let dim = self.terms[i].dims[v];
        if i == 0 {
            Matrix::zeros(dim, 0)
        } else {
            let _ = alg;
            self.diffs[i - 1][v].clone()
        }
    }

    fn outgoing(&self, i: usize, v: usize) -> Matrix<F> {
        let dim = self.terms[i].dims[v];
        if i + 1 == self.terms.len() {
            Matrix::zeros(0, dim)
        } else {
            self.diffs[i][v].clone()
        }
    }

    /// The cohomology representation in `degree`.
    pub fn cohomology(&self, alg: &PathAlgebra, degree: i32) -> ModuleRep<F> {
        let Some(i) = self.index(degree) else {
            return ModuleRep::zero(alg);
        };
        let n = alg.num_vertices();
        // Per vertex: image columns and complement representatives of ker/im.
        let mut images = Vec::with_capacity(n);
        let mut reps = Vec::with_capacity(n);
        for v in 0..n {
            let dim = self.terms[i].dims[v];
            let inc = self.incoming(alg, i, v);
            let image: Vec<Vec<F>> = (0..inc.cols()).map(|c| inc.column(c)).collect();
            let kernel = self.outgoing(i, v).kernel_basis();
            let mut cols = image.clone();
            cols.extend(kernel.iter().cloned());
            let pivots = Matrix::from_columns(dim, &cols).rref().pivots;
            let chosen: Vec<Vec<F>> =
                pivots.into_iter().filter(|&c| c >= image.len()).map(|c| kernel[c - image.len()].clone()).collect();
            images.push(image);
            reps.push(chosen);
        }
        let dims: Vec<usize> = reps.iter().map(Vec::len).collect();
        let arrow_maps = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(id, a)| {
                let (s, t) = (a.src, a.dst);
                if dims[s] == 0 || dims[t] == 0 {
                    return Matrix::zeros(dims[t], dims[s]);
                }
                let act = &self.terms[i].arrow_maps[id];
                let moved: Vec<Vec<F>> = reps[s].iter().map(|z| act.apply(z)).collect();
                let mut basis = images[t].clone();
                basis.extend(reps[t].iter().cloned());
                let dim_t = self.terms[i].dims[t];
                let sol = Matrix::from_columns(dim_t, &basis)
                    .solve(&Matrix::from_columns(dim_t, &moved))
                    .expect("cycles map to cycles");
                let skip = images[t].len();
                Matrix::from_fn(dims[t], dims[s], |r, c| sol.get(skip + r, c).clone())
            })
            .collect();
        ModuleRep { dims, arrow_maps }
    }

    /// Total cohomology dimension in each degree, skipping zeros.
    pub fn cohomology_dims(&self) -> Vec<(i32, Vec<usize>)> {
        let n = self.terms.first().map_or(0, |t| t.dims.len());
        let mut out = Vec::new();
        for i in 0..self.terms.len() {
            let dims: Vec<usize> = (0..n)
                .map(|v| {
                    let dim = self.terms[i].dims[v];
                    let out_rank = if i + 1 < self.terms.len() { self.diffs[i][v].rank() } else { 0 };
                    let in_rank = if i > 0 { self.diffs[i - 1][v].rank() } else { 0 };
                    dim - out_rank - in_rank
                })
                .collect();
            if dims.iter().any(|&d| d > 0) {
                out.push((self.lo + i as i32, dims));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::builtin;
    use crate::scalars::Zp;

    type F = Zp<1_000_003>;

    #[test]
    fn a2_modules() {
        let a = builtin::a2();
        let s = ModuleRep::<F>::simple(&a, 0);
        assert_eq!(s.dims, vec![1, 0]);
        assert!(s.arrow_maps[0].is_zero());
        assert_eq!(ModuleRep::<F>::projective(&a, 0).dims, vec![1, 1]);
        assert_eq!(ModuleRep::<F>::injective(&a, 0).dims, vec![1, 0]);
        assert_eq!(ModuleRep::<F>::injective(&a, 1).dims, vec![1, 1]);
        assert_eq!(ModuleRep::<F>::projective(&a, 0).arrow_ranks(), vec![1]);
        assert_eq!(ModuleRep::<F>::injective(&a, 1).arrow_ranks(), vec![1]);
    }

    #[test]
    fn projective_dimension_sum_is_dim_a() {
        for a in [builtin::a2(), builtin::a3(), builtin::kronecker()] {
            let total: usize = (0..a.num_vertices()).map(|i| ModuleRep::<F>::projective(&a, i).length()).sum();
            assert_eq!(total, a.dim());
            let total: usize = (0..a.num_vertices()).map(|i| ModuleRep::<F>::injective(&a, i).length()).sum();
            assert_eq!(total, a.dim());
            for i in 0..a.num_vertices() {
                assert!(ModuleRep::<F>::projective(&a, i).is_valid(&a));
                assert!(ModuleRep::<F>::injective(&a, i).is_valid(&a));
            }
        }
    }

    #[test]
    fn a3_path_action() {
        let a = builtin::a3();
        let p = ModuleRep::<F>::projective(&a, 0);
        let long = a.paths(0, 2)[0];
        assert_eq!(p.path_action(&long).rank(), 1);
        let i = ModuleRep::<F>::injective(&a, 2);
        assert_eq!(i.path_action(&long).rank(), 1);
    }
}
