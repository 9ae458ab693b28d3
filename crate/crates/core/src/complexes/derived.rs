//! Passage between complexes of projectives and representations:
//! cohomology, projective resolutions, the Nakayama functor and duality.


use super::complex::PerfComplex;
use super::elem::AlgElem;
use crate::algebra::{ModuleRep, Path, PathAlgebra, RepComplex};
use crate::scalars::{Matrix, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Expansion {
    /// `P_v` as a representation.
    Projective,
    /// Apply the Nakayama functor termwise: `P_v |-> I_v`.
    Injective,
}

fn to_rep_complex<F: Scalar>(alg: &PathAlgebra, x: &PerfComplex<F>, how: Expansion) -> RepComplex<F> {
    let n = alg.num_vertices();
    let base: Vec<ModuleRep<F>> = (0..n)
        .map(|v| match how {
            Expansion::Projective => ModuleRep::projective(alg, v),
            Expansion::Injective => ModuleRep::injective(alg, v),
        })
        .collect();
    // Basis of the summand at vertex v, evaluated at vertex j.
    let local = |v: usize, j: usize| -> &[Path] {
        match how {
            Expansion::Projective => alg.paths(v, j),
            Expansion::Injective => alg.paths(j, v),
        }
    };
    let offsets = |term: &[usize], j: usize| -> Vec<usize> {
        let mut acc = 0;
        term.iter()
            .map(|&v| {
                let o = acc;
                acc += local(v, j).len();
                o
            })
            .collect()
    };
    let terms: Vec<ModuleRep<F>> = x
        .degrees()
        .map(|d| x.term(d).iter().fold(ModuleRep::zero(alg), |acc, &v| acc.direct_sum(&base[v])))
        .collect();
    let mut diffs = Vec::new();
    for d in x.lo()..x.hi() {
        let (src, dst) = (x.term(d), x.term(d + 1));
        let m = x.diff_ref(d).expect("inside support");
        let per_vertex = (0..n)
            .map(|j| {
                let (so, to) = (offsets(src, j), offsets(dst, j));
                let rows = dst.iter().map(|&v| local(v, j).len()).sum();
                let cols = src.iter().map(|&v| local(v, j).len()).sum();
                let mut out = Matrix::<F>::zeros(rows, cols);
                for r in 0..dst.len() {
                    for c in 0..src.len() {
                        for (p, coeff) in m.get(r, c).terms() {
                            match how {
                                Expansion::Projective => {
                                    for (k, q) in alg.paths(src[c], j).iter().enumerate() {
                                        let img = p.then(q).expect("composable");
                                        let row = to[r] + alg.path_index(&img);
                                        let cur = out.get(row, so[c] + k).clone();
                                        out.set(row, so[c] + k, cur + coeff.clone());
                                    }
                                }
                                Expansion::Injective => {
                                    for (k, rr) in alg.paths(j, dst[r]).iter().enumerate() {
                                        let s = rr.then(p).expect("composable");
                                        let col = so[c] + alg.path_index(&s);
                                        let cur = out.get(to[r] + k, col).clone();
                                        out.set(to[r] + k, col, cur + coeff.clone());
                                    }
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        diffs.push(per_vertex);
    }
    RepComplex { lo: x.lo(), terms, diffs }
}

/// `H^k(X)` as a representation.
pub fn cohomology_module<F: Scalar>(alg: &PathAlgebra, x: &PerfComplex<F>, k: i32) -> ModuleRep<F> {
    if x.is_zero() {
        return ModuleRep::zero(alg);
    }
    to_rep_complex(alg, x, Expansion::Projective).cohomology(alg, k)
}

/// Dimension vectors of the nonzero cohomology, by degree.
pub fn cohomology_dims<F: Scalar>(alg: &PathAlgebra, x: &PerfComplex<F>) -> Vec<(i32, Vec<usize>)> {
    if x.is_zero() {
        return Vec::new();
    }
    to_rep_complex(alg, x, Expansion::Projective).cohomology_dims()
}

/// Minimal projective resolution, placed in degrees `-1, 0`.
///
/// Starts from the standard resolution
/// `0 -> ⊕_{a: i -> j} P_j ⊗ M_i -> ⊕_i P_i ⊗ M_i -> M -> 0` and cancels.
pub fn projective_resolution<F: Scalar>(alg: &PathAlgebra, m: &ModuleRep<F>) -> PerfComplex<F> {
    let n = alg.num_vertices();
    let mut top = Vec::new();
    let mut top_offset = vec![0; n];
    for i in 0..n {
        top_offset[i] = top.len();
        top.extend(std::iter::repeat_n(i, m.dims[i]));
    }
    let mut bottom = Vec::new();
    let mut cols = Vec::new();
    for (id, a) in alg.quiver.arrows.iter().enumerate() {
        for b in 0..m.dims[a.src] {
            bottom.push(a.dst);
            cols.push((id, b));
        }
    }
    let mut diff = Matrix::zeros(top.len(), bottom.len());
    for (col, &(id, b)) in cols.iter().enumerate() {
        let a = &alg.quiver.arrows[id];
        diff.set(top_offset[a.src] + b, col, AlgElem::path(Path::arrow(id, a.src, a.dst)));
        let ma = &m.arrow_maps[id];
        for b2 in 0..m.dims[a.dst] {
            let c = ma.get(b2, b);
            if !c.is_zero() {
                diff.set(top_offset[a.dst] + b2, col, AlgElem::scaled_path(Path::trivial(a.dst), -c.clone()));
            }
        }
    }
    PerfComplex::from_parts(-1, vec![bottom, top], vec![diff]).minimize()
}

/// Derived Nakayama functor.
///
/// The termwise image is a complex of injectives; over a hereditary algebra
/// it is quasi-isomorphic to the sum of its shifted cohomology, which is
/// resolved module by module.
pub fn serre<F: Scalar>(alg: &PathAlgebra, x: &PerfComplex<F>) -> PerfComplex<F> {
    if x.is_zero() {
        return PerfComplex::zero();
    }
    let reps = to_rep_complex(alg, x, Expansion::Injective);
    let mut out = PerfComplex::zero();
    for d in x.degrees() {
        let h = reps.cohomology(alg, d);
        if !h.is_zero() {
            out = out.direct_sum(&projective_resolution(alg, &h).shift(-d));
        }
    }
    out
}

/// Inverse Nakayama functor, `D ∘ ν_{A^op} ∘ D`.
pub fn serre_inv<F: Scalar>(alg: &PathAlgebra, x: &PerfComplex<F>) -> PerfComplex<F> {
    let op = alg.opposite();
    dualize(&serre(&op, &dualize(x)))
}

/// `Hom_A(-, A)`: a complex over `A` to one over `A^op`.
///
/// `(X^∨)^d = (X^{-d})^∨`, differentials transposed with paths reversed.
pub fn dualize<F: Scalar>(x: &PerfComplex<F>) -> PerfComplex<F> {
    if x.is_zero() {
        return PerfComplex::zero();
    }
    PerfComplex::assemble(
        -x.hi(),
        -x.lo(),
        |d| x.term(-d).to_vec(),
        |d| x.diff(-d - 1).transpose().map(AlgElem::reversed),
    )
}
