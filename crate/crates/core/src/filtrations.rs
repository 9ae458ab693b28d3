//! t-filtrations, co-t-filtrations and the complexities built from them.
//!
//! Both profiles are maps `k -> weight` evaluated as `Σ weight · e^{kt}`:
//!
//! * t-kind: `k` runs over the degrees with `H^{-k}(X) != 0`, the weight is
//!   the length of `H^{-k}(X)`; entries are listed with `k` decreasing.
//! * cot-kind: for a minimal complex, `k = -d` for each nonzero term `X^d`,
//!   weighted by its number of indecomposable summands; `k` increasing.
//!
//! With these choices `δ̂_t(ΣX) = e^t δ̂_t(X)` and
//! `δ̂_t(X) = Σ_k dim Hom^{-k}(A, X) e^{kt}`. On the co-t side,
//! `δ̌_t(X) = Σ_k dim Hom^k(X, S) e^{kt}` with `S` the sum of the simples,
//! because a radical differential induces zero on `Hom(-, S)`.
//!
//! The cot value reported is that of the stupid filtration of the minimal
//! complex; it bounds the infimum over all co-t-filtrations from above.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::PathAlgebra;
use crate::complexes::{cohomology_dims, ChainMap, PerfComplex};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FiltrationKind {
    T,
    Cot,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FiltrationProfile {
    pub kind: FiltrationKind,
    /// `(k, weight)` in filtration order.
    pub entries: Vec<(i32, usize)>,
}

impl FiltrationProfile {
    fn from_map(kind: FiltrationKind, map: BTreeMap<i32, usize>) -> Self {
        let mut entries: Vec<(i32, usize)> = map.into_iter().filter(|&(_, w)| w > 0).collect();
        if kind == FiltrationKind::T {
            entries.reverse();
        }
        FiltrationProfile { kind, entries }
    }

    pub fn as_map(&self) -> BTreeMap<i32, usize> {
        self.entries.iter().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn value(&self, t: f64) -> f64 {
        evaluate(&self.as_map(), t)
    }

    /// Profile of `Σ^k X`: every degree raised by `k`.
    pub fn shifted(&self, k: i32) -> Self {
        FiltrationProfile { kind: self.kind, entries: self.entries.iter().map(|&(d, w)| (d + k, w)).collect() }
    }
}

/// `Σ w · e^{kt}` over a profile.
pub fn evaluate(profile: &BTreeMap<i32, usize>, t: f64) -> f64 {
    profile.iter().map(|(&k, &w)| w as f64 * (k as f64 * t).exp()).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityValue {
    pub t: f64,
    pub value: f64,
    pub profile: FiltrationProfile,
}

impl ComplexityValue {
    fn of(profile: FiltrationProfile, t: f64) -> Self {
        ComplexityValue { t, value: profile.value(t), profile }
    }
}

pub fn t_filtration<F: Scalar>(alg: &PathAlgebra, x: &PerfComplex<F>) -> FiltrationProfile {
    let map = cohomology_dims(alg, x).into_iter().map(|(d, dims)| (-d, dims.iter().sum())).collect();
    FiltrationProfile::from_map(FiltrationKind::T, map)
}

pub fn cot_filtration<F: Scalar>(x: &PerfComplex<F>) -> Result<FiltrationProfile> {
    if !x.is_minimal() {
        return Err(Error::NotMinimal);
    }
    let map = x.degrees().map(|d| (-d, x.term(d).len())).collect();
    Ok(FiltrationProfile::from_map(FiltrationKind::Cot, map))
}

pub fn delta_hat<F: Scalar>(alg: &PathAlgebra, x: &PerfComplex<F>, t: f64) -> ComplexityValue {
    ComplexityValue::of(t_filtration(alg, x), t)
}

pub fn delta_check<F: Scalar>(x: &PerfComplex<F>, t: f64) -> Result<ComplexityValue> {
    Ok(ComplexityValue::of(cot_filtration(x)?, t))
}

/// Complexity of a graded vector space with `dim H^d` given by degree `d`:
/// `Σ dim H^{-k} e^{kt}`.
pub fn delta_vect(dims: &BTreeMap<i32, usize>, t: f64) -> f64 {
    dims.iter().map(|(&d, &n)| n as f64 * (-(d as f64) * t).exp()).sum()
}

/// For `g: Σ^{-1}F -> D` and `E = cone(g)`, checks
/// `δ̂_t(E) <= δ̂_t(D) + δ̂_t(F)` and the same for `δ̌_t`.
pub fn triangle_subadditivity_check<F: Scalar>(
    alg: &PathAlgebra,
    d: &PerfComplex<F>,
    f: &PerfComplex<F>,
    g: &ChainMap<F>,
    t: f64,
) -> Result<bool> {
    if g.source != f.shift(-1) || g.target != *d {
        return Err(Error::InvalidChainMap("expected a map from Σ^-1 F to D".into()));
    }
    let e = g.cone();
    let (d, f) = (d.minimize(), f.minimize());
    let leq = |a: f64, b: f64| a <= b * (1.0 + 1e-12) + 1e-12;
    let hat = leq(delta_hat(alg, &e, t).value, delta_hat(alg, &d, t).value + delta_hat(alg, &f, t).value);
    let check = leq(delta_check(&e, t)?.value, delta_check(&d, t)?.value + delta_check(&f, t)?.value);
    Ok(hat && check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::complexes::ObjExpr;
    use crate::scalars::Zp;

    type F = Zp<1_000_003>;

    fn obj(alg: &PathAlgebra, s: &str) -> PerfComplex<F> {
        ObjExpr::parse(s).unwrap().resolve(alg).unwrap()
    }

    #[test]
    fn t_profiles() {
        let alg = builtin::a2();
        assert!(t_filtration(&alg, &PerfComplex::<F>::zero()).is_empty());
        let s = obj(&alg, "S1");
        let p = t_filtration(&alg, &s);
        assert_eq!(p.entries, vec![(0, 1)]);
        assert_eq!(t_filtration(&alg, &s.shift(2)), p.shifted(2));
        assert_eq!(t_filtration(&alg, &obj(&alg, "P1+P2")).entries, vec![(0, 3)]);
    }

    #[test]
    fn cot_profiles() {
        let alg = builtin::a2();
        assert_eq!(cot_filtration(&obj(&alg, "P1+P2")).unwrap().entries, vec![(0, 2)]);
        assert_eq!(cot_filtration(&obj(&alg, "S1")).unwrap().entries, vec![(0, 1), (1, 1)]);
        assert!(cot_filtration(&PerfComplex::<F>::zero()).unwrap().is_empty());
    }

    #[test]
    fn values() {
        let alg = builtin::a2();
        let a = obj(&alg, "P1+P2");
        assert_eq!(delta_hat(&alg, &a, 0.0).value, 3.0);
        for t in [-1.0, 0.0, 0.7] {
            assert_eq!(delta_check(&a, t).unwrap().value, 2.0);
            assert_eq!(delta_hat(&alg, &PerfComplex::<F>::zero(), t).value, 0.0);
        }
        let dims = BTreeMap::from([(0, 2), (-1, 1)]);
        assert!((delta_vect(&dims, 0.3) - (2.0 + 0.3f64.exp())).abs() < 1e-12);
        assert_eq!(delta_vect(&BTreeMap::new(), 1.0), 0.0);
        assert!((delta_vect(&BTreeMap::from([(-2, 1)]), 0.5) - 1.0f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn not_minimal_rejected() {
        let alg = builtin::a2();
        let x = obj(&alg, "P1");
        let c = ChainMap::identity(&x).cone_unminimized();
        assert_eq!(delta_check(&c, 0.0), Err(Error::NotMinimal));
    }

    #[test]
    fn split_and_identity_triangles() {
        let alg = builtin::a3();
        let d = obj(&alg, "S2");
        let f = obj(&alg, "P1+S3[1]");
        let zero = ChainMap::zero(f.shift(-1), d.clone());
        let e = zero.cone();
        for t in [-1.0, 0.0, 1.0] {
            assert!(triangle_subadditivity_check(&alg, &d, &f, &zero, t).unwrap());
            let sum = delta_hat(&alg, &d, t).value + delta_hat(&alg, &f, t).value;
            assert!((delta_hat(&alg, &e, t).value - sum).abs() < 1e-9);
        }
        let id = ChainMap::identity(&d);
        assert!(triangle_subadditivity_check(&alg, &d, &d.shift(1), &id, 0.0).unwrap());
    }
}
