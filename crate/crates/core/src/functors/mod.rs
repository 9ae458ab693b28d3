//! Endofunctors of the perfect derived category acting on minimal complexes.

mod parse;

use rand::Rng;

pub use parse::FunctorExpr;

use crate::algebra::PathAlgebra;
use crate::complexes::{cocycles, dualize, hom_complex, serre, serre_inv, ChainMap, PerfComplex};
use crate::error::{Error, Result};
use crate::random;
use crate::scalars::{Matrix, Scalar};

/// A functor expression with its twist objects resolved to complexes over a
/// fixed algebra.
#[derive(Debug, Clone, PartialEq)]
pub enum Functor<F> {
    Id,
    Shift(i32),
    Serre,
    SerreInv,
    Twist(PerfComplex<F>),
    DualTwist(PerfComplex<F>),
    /// Shift amount per vertex, constant on connected components.
    VertexShift(Vec<i32>),
    Compose(Box<Functor<F>>, Box<Functor<F>>),
    Power(Box<Functor<F>>, u32),
}

impl FunctorExpr {
    pub fn resolve<F: Scalar>(&self, alg: &PathAlgebra) -> Result<Functor<F>> {
        Ok(match self {
            FunctorExpr::Id => Functor::Id,
            FunctorExpr::Shift(k) => Functor::Shift(*k),
            FunctorExpr::Serre => Functor::Serre,
            FunctorExpr::SerreInv => Functor::SerreInv,
            FunctorExpr::Twist(x) => Functor::Twist(x.resolve(alg)?),
            FunctorExpr::DualTwist(x) => Functor::DualTwist(x.resolve(alg)?),
            FunctorExpr::VertexShift(v) => Functor::vertex_shift(alg, v.clone())?,
            FunctorExpr::Compose(a, b) => Functor::Compose(Box::new(a.resolve(alg)?), Box::new(b.resolve(alg)?)),
            FunctorExpr::Power(a, k) => Functor::Power(Box::new(a.resolve(alg)?), *k),
        })
    }
}

impl<F: Scalar> Functor<F> {
    pub fn parse(text: &str, alg: &PathAlgebra) -> Result<Self> {
        FunctorExpr::parse(text)?.resolve(alg)
    }

    pub fn vertex_shift(alg: &PathAlgebra, shifts: Vec<i32>) -> Result<Self> {
        if shifts.len() != alg.num_vertices() {
            return Err(Error::UnknownVertex(format!("expected {} shifts", alg.num_vertices())));
        }
        let comp = alg.components();
        for a in &alg.quiver.arrows {
            if shifts[a.src] != shifts[a.dst] {
                return Err(Error::NonInvertibleFunctor(format!(
                    "shift differs inside component {}",
                    comp[a.src]
                )));
            }
        }
        Ok(Functor::VertexShift(shifts))
    }

    pub fn is_invertible(&self) -> bool {
        match self {
            Functor::Twist(_) | Functor::DualTwist(_) => false,
            Functor::Compose(a, b) => a.is_invertible() && b.is_invertible(),
            Functor::Power(a, k) => *k == 0 || a.is_invertible(),
            _ => true,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(match self {
            Functor::Id => Functor::Id,
            Functor::Shift(k) => Functor::Shift(-k),
            Functor::Serre => Functor::SerreInv,
            Functor::SerreInv => Functor::Serre,
            Functor::VertexShift(v) => Functor::VertexShift(v.iter().map(|k| -k).collect()),
            Functor::Compose(a, b) => Functor::Compose(Box::new(b.inverse()?), Box::new(a.inverse()?)),
            Functor::Power(_, 0) => Functor::Id,
            Functor::Power(a, k) => Functor::Power(Box::new(a.inverse()?), *k),
            Functor::Twist(_) => return Err(Error::NonInvertibleFunctor("twist".into())),
            Functor::DualTwist(_) => return Err(Error::NonInvertibleFunctor("dual twist".into())),
        })
    }

    /// The functor `Φ^op` on `per(A^op)` with `Φ^op ∘ D ≅ D ∘ Φ`, where `D`
    /// is [`dualize`].
    pub fn op_transport(&self) -> Self {
        match self {
            Functor::Id => Functor::Id,
            Functor::Shift(k) => Functor::Shift(-k),
            Functor::Serre => Functor::SerreInv,
            Functor::SerreInv => Functor::Serre,
            Functor::VertexShift(v) => Functor::VertexShift(v.iter().map(|k| -k).collect()),
            Functor::Twist(x) => Functor::DualTwist(dualize(x)),
            Functor::DualTwist(x) => Functor::Twist(dualize(x)),
            Functor::Compose(a, b) => Functor::Compose(Box::new(a.op_transport()), Box::new(b.op_transport())),
            Functor::Power(a, k) => Functor::Power(Box::new(a.op_transport()), *k),
        }
    }

    /// `Φ(X)` as a minimal complex.
    pub fn apply(&self, alg: &PathAlgebra, x: &PerfComplex<F>) -> Result<PerfComplex<F>> {
        if !x.is_minimal() {
            return self.apply(alg, &x.try_minimize()?);
        }
        Ok(match self {
            Functor::Id => x.clone(),
            Functor::Shift(k) => x.shift(*k),
            Functor::Serre => serre(alg, x),
            Functor::SerreInv => serre_inv(alg, x),
            Functor::Twist(f) => twist(alg, f, x)?,
            Functor::DualTwist(f) => dual_twist(alg, f, x)?,
            Functor::VertexShift(v) => vertex_shift(alg, v, x),
            Functor::Compose(a, b) => a.apply(alg, &b.apply(alg, x)?)?,
            Functor::Power(a, k) => {
                let mut y = x.clone();
                for _ in 0..*k {
                    y = a.apply(alg, &y)?;
                }
                y
            }
        })
    }
}

/// `cone(⊕_j Σ^{-k_j} F -> X)` over a basis `φ_j ∈ Hom^{k_j}(F, X)`.
fn twist<F: Scalar>(alg: &PathAlgebra, f: &PerfComplex<F>, x: &PerfComplex<F>) -> Result<PerfComplex<F>> {
    let (_, reps) = hom_complex(alg, f, x);
    let pieces: Vec<(i32, &ChainMap<F>)> = reps.iter().flat_map(|(&k, v)| v.iter().map(move |m| (k, m))).collect();
    if pieces.is_empty() {
        return Ok(x.clone());
    }
    let source = pieces.iter().fold(PerfComplex::zero(), |acc, (k, _)| acc.direct_sum(&f.shift(-k)));
    let components = source
        .degrees()
        .map(|d| {
            let blocks: Vec<_> = pieces.iter().map(|(k, m)| m.component(d - k)).collect();
            let refs: Vec<_> = blocks.iter().collect();
            (d, Matrix::hcat(x.term(d).len(), &refs))
        })
        .collect();
    Ok(ChainMap::new(source, x.clone(), components)?.cone())
}

/// `Σ^{-1} cone(X -> ⊕_j Σ^{k_j} F)` over a basis `ψ_j ∈ Hom^{k_j}(X, F)`.
fn dual_twist<F: Scalar>(alg: &PathAlgebra, f: &PerfComplex<F>, x: &PerfComplex<F>) -> Result<PerfComplex<F>> {
    let (_, reps) = hom_complex(alg, x, f);
    let pieces: Vec<(i32, &ChainMap<F>)> = reps.iter().flat_map(|(&k, v)| v.iter().map(move |m| (k, m))).collect();
    if pieces.is_empty() {
        return Ok(x.clone());
    }
    let target = pieces.iter().fold(PerfComplex::zero(), |acc, (k, _)| acc.direct_sum(&f.shift(*k)));
    let components = x
        .degrees()
        .map(|d| {
            let blocks: Vec<_> = pieces.iter().map(|(_, m)| m.component(d)).collect();
            let refs: Vec<_> = blocks.iter().collect();
            (d, Matrix::vcat(x.term(d).len(), &refs))
        })
        .collect();
    Ok(ChainMap::new(x.clone(), target, components)?.cone().shift(-1))
}

fn vertex_shift<F: Scalar>(alg: &PathAlgebra, shifts: &[i32], x: &PerfComplex<F>) -> PerfComplex<F> {
    let mut distinct: Vec<i32> = shifts.to_vec();
    distinct.sort();
    distinct.dedup();
    let _ = alg;
    distinct.iter().fold(PerfComplex::zero(), |acc, &k| {
        acc.direct_sum(&restrict(x, |v| shifts[v] == k).shift(k))
    })
}

/// The subcomplex on the summands whose vertex satisfies `keep`; a direct
/// summand when no differential crosses between kept and dropped vertices.
fn restrict<F: Scalar>(x: &PerfComplex<F>, keep: impl Fn(usize) -> bool) -> PerfComplex<F> {
    if x.is_zero() {
        return PerfComplex::zero();
    }
    let idx = |d: i32| -> Vec<usize> { (0..x.term(d).len()).filter(|&i| keep(x.term(d)[i])).collect() };
    PerfComplex::assemble(
        x.lo(),
        x.hi(),
        |d| idx(d).iter().map(|&i| x.term(d)[i]).collect(),
        |d| x.diff(d).select(&idx(d + 1), &idx(d)),
    )
}

const ISO_SEED: u64 = 0x05ee_d150;
const ISO_TRIALS: usize = 4;

/// Whether two minimal complexes are isomorphic.
///
/// Requires equal summand multisets in every degree, then looks for a
/// degree-0 cocycle `X -> Y` that is invertible modulo the radical, i.e.
/// whose scalar block between same-vertex summands is invertible in every
/// degree. Such a map is an isomorphism of complexes. Candidates are random
/// combinations of a cocycle basis; a miss when an isomorphism exists has
/// probability at most `(n/p)^4` for `n` summands over `F_p`.
pub fn iso_test<F: Scalar>(alg: &PathAlgebra, x: &PerfComplex<F>, y: &PerfComplex<F>) -> bool {
    if x.lo() != y.lo() || x.hi() != y.hi() {
        return x.is_zero() && y.is_zero();
    }
    for d in x.degrees() {
        let (mut a, mut b) = (x.term(d).to_vec(), y.term(d).to_vec());
        a.sort();
        b.sort();
        if a != b {
            return false;
        }
    }
    if x.is_zero() {
        return true;
    }
    let basis = cocycles(alg, x, y, 0);
    if basis.is_empty() {
        return false;
    }
    let mut rng = random::rng(ISO_SEED);
    (0..ISO_TRIALS).any(|_| {
        let f = basis.iter().fold(ChainMap::zero(x.clone(), y.clone()), |acc, g| {
            acc.add(&g.scale(&F::from_i64(rng.gen_range(1..=1_000_000_000))))
        });
        invertible_mod_radical(alg, &f)
    })
}

fn invertible_mod_radical<F: Scalar>(alg: &PathAlgebra, f: &ChainMap<F>) -> bool {
    f.source.degrees().all(|d| {
        let m = f.component(d);
        let (src, dst) = (f.source.term(d), f.target.term(d));
        (0..alg.num_vertices()).all(|v| {
            let cols: Vec<usize> = (0..src.len()).filter(|&i| src[i] == v).collect();
            let rows: Vec<usize> = (0..dst.len()).filter(|&i| dst[i] == v).collect();
            let block = Matrix::from_fn(rows.len(), cols.len(), |r, c| {
                m.get(rows[r], cols[c]).unit_coefficient().cloned().unwrap_or_else(F::zero)
            });
            block.rank() == rows.len()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::complexes::{hom_dims, ObjExpr};
    use crate::scalars::Zp;

    type F = Zp<1_000_003>;

    fn obj(alg: &PathAlgebra, s: &str) -> PerfComplex<F> {
        ObjExpr::parse(s).unwrap().resolve(alg).unwrap()
    }

    fn functor(alg: &PathAlgebra, s: &str) -> Functor<F> {
        Functor::parse(s, alg).unwrap()
    }

    #[test]
    fn identity_and_shift() {
        let alg = builtin::a3();
        let x = obj(&alg, "S2+P1[1]");
        assert_eq!(functor(&alg, "id").apply(&alg, &x).unwrap(), x);
        assert_eq!(functor(&alg, "Sigma^3").apply(&alg, &x).unwrap(), x.shift(3));
    }

    #[test]
    fn fractional_calabi_yau_a2() {
        let alg = builtin::a2();
        let nu3 = functor(&alg, "nu^3");
        for p in ["P1", "P2"] {
            let x = obj(&alg, p);
            assert!(iso_test(&alg, &nu3.apply(&alg, &x).unwrap(), &x.shift(1)));
        }
    }

    #[test]
    fn iso_test_examples() {
        let alg = builtin::kronecker();
        let x = obj(&alg, "S1+P2[1]");
        assert!(iso_test(&alg, &x, &x));
        assert!(!iso_test(&alg, &x, &x.shift(1)));
        let c = ChainMap::identity(&obj(&alg, "P1")).cone_unminimized();
        assert!(iso_test(&alg, &x.direct_sum(&c).minimize(), &x));
        // same terms, different differential: P2 -a-> P1 versus P2 -b-> P1
        let along = |id: usize| {
            let e = crate::complexes::AlgElem::path(crate::algebra::Path::arrow(id, 0, 1));
            PerfComplex::<F>::new(-1, vec![vec![1], vec![0]], vec![Matrix::from_rows(1, vec![vec![e]])]).unwrap()
        };
        assert!(!iso_test(&alg, &along(0), &along(1)));
        assert!(iso_test(&alg, &along(0), &along(0).map_coeffs(|c| *c + *c)));
    }

    #[test]
    fn twist_by_projective_kills_it() {
        // T_{P}(P) = cone(Hom(P,P) ⊗ P -> P) = 0 when End(P) = K.
        let alg = builtin::a2();
        let p = obj(&alg, "P2");
        assert!(functor(&alg, "T[P2]").apply(&alg, &p).unwrap().is_zero());
        assert!(functor(&alg, "Td[P2]").apply(&alg, &p).unwrap().is_zero());
        // Hom(P1, P2) = 0: unchanged
        assert_eq!(functor(&alg, "T[P1]").apply(&alg, &p).unwrap(), p);
        // Ext^1(S1, P2) = K: the cone is the extension P1
        assert_eq!(functor(&alg, "T[S1]").apply(&alg, &p).unwrap(), obj(&alg, "P1"));
    }

    #[test]
    fn serre_round_trip() {
        for alg in [builtin::a2(), builtin::a3(), builtin::kronecker()] {
            for v in 0..alg.num_vertices() {
                let x = PerfComplex::<F>::stalk(vec![v], 0);
                let y = functor(&alg, "nu * nu^-1").apply(&alg, &x).unwrap();
                assert!(iso_test(&alg, &x, &y));
                let y = functor(&alg, "nu^-1 * nu").apply(&alg, &x).unwrap();
                assert!(iso_test(&alg, &x, &y));
            }
        }
    }

    #[test]
    fn serre_duality_dimensions() {
        // Hom(X, Y) ≅ D Hom(Y, ν X)
        let alg = builtin::a3();
        let x = obj(&alg, "S2+P1");
        let y = obj(&alg, "S1[1]+P3");
        let nu_x = serre(&alg, &x);
        let lhs = hom_dims(&alg, &x, &y);
        let rhs = hom_dims(&alg, &y, &nu_x);
        for k in -4..=4 {
            assert_eq!(lhs.get(k), rhs.get(-k));
        }
    }

    #[test]
    fn vertex_shift_on_two_points() {
        let alg = builtin::two_points();
        let f: Functor<F> = Functor::vertex_shift(&alg, vec![1, 2]).unwrap();
        let x = obj(&alg, "P1+P2");
        assert_eq!(f.apply(&alg, &x).unwrap(), obj(&alg, "P1[1]+P2[2]"));
        assert!(Functor::<F>::vertex_shift(&builtin::a2(), vec![1, 2]).is_err());
    }

    #[test]
    fn op_transport_commutes_with_dualize() {
        let alg = builtin::a3();
        let op = alg.opposite();
        let x = obj(&alg, "S2+P1[1]");
        for text in ["nu", "nu^-1", "Sigma^2", "T[S1]", "Td[P2] * nu"] {
            let f = functor(&alg, text);
            let lhs = dualize(&f.apply(&alg, &x).unwrap());
            let rhs = f.op_transport().apply(&op, &dualize(&x)).unwrap();
            assert!(iso_test(&op, &lhs, &rhs), "{text}");
        }
    }
}
