use serde::Serialize;

use super::{channel_profile, Budget, Channel, GrowthRun, GrowthSeries, Probes, Profile};
use crate::algebra::{builtin, projective_resolution, ModuleRep, PathAlgebra};
use crate::complexes::{dualize, hom_dims, PerfComplex};
use crate::error::{Error, Result};
use crate::functors::{iso_test, Functor};
use crate::scalars::Scalar;

/// Largest slope gap between channels before a warning is raised.
pub const CHANNEL_TOLERANCE: f64 = 0.02;

pub type CurveRow = GrowthSeries;

#[derive(Debug, Clone, Serialize)]
pub struct CurveReport {
    pub rows: Vec<CurveRow>,
    /// `(t, largest pairwise gap of regression slopes)` over the channels.
    pub gaps: Vec<(f64, f64)>,
}

impl CurveReport {
    pub fn disagrees(&self) -> bool {
        self.gaps.iter().any(|&(_, g)| g > CHANNEL_TOLERANCE)
    }
}

/// Series for every `(t, channel)` in grid order; iterates are shared.
pub fn entropy_curve<F: Scalar>(
    run: &mut GrowthRun<'_, F>,
    t_grid: &[f64],
    nmax: usize,
    channels: &[Channel],
    budget: &Budget,
) -> Result<CurveReport> {
    let mut rows = Vec::new();
    let mut gaps = Vec::new();
    for &t in t_grid {
        let start = rows.len();
        for &c in channels {
            rows.push(run.series(c, t, nmax, budget)?);
        }
        let slopes = rows[start..].iter().map(|r| r.regression_slope);
        let (lo, hi) = slopes.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s), hi.max(s)));
        gaps.push((t, if hi >= lo { hi - lo } else { 0.0 }));
    }
    Ok(CurveReport { rows, gaps })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityRow {
    pub t: f64,
    /// `hom_A` slope of `Φ` at `t`.
    pub forward: f64,
    /// `hom_B` slope of `Φ^{-1}` at `-t`.
    pub inverse: f64,
    pub gap: f64,
    pub truncated: bool,
}

pub fn duality_check<F: Scalar>(
    alg: &PathAlgebra,
    f: &Functor<F>,
    g: &PerfComplex<F>,
    t_grid: &[f64],
    nmax: usize,
    budget: &Budget,
) -> Result<Vec<DualityRow>> {
    let inv = f.inverse()?;
    let mut fwd = GrowthRun::new(alg, f.clone(), g)?;
    let mut bwd = GrowthRun::new(alg, inv, g)?;
    t_grid
        .iter()
        .map(|&t| {
            let a = fwd.series(Channel::HomA, t, nmax, budget)?;
            let b = bwd.series(Channel::HomB, -t, nmax, budget)?;
            Ok(DualityRow {
                t,
                forward: a.regression_slope,
                inverse: b.regression_slope,
                gap: (a.regression_slope - b.regression_slope).abs(),
                truncated: a.truncated || b.truncated,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SodRow {
    pub t: f64,
    pub computed: f64,
    pub expected: f64,
    pub exact: bool,
}

/// Two isolated vertices, `Σ` on the first and `Σ²` on the second.
pub fn sod_max_check(t_grid: &[f64], nmax: usize) -> Result<Vec<SodRow>> {
    let alg = builtin::two_points();
    let f = Functor::<crate::DefaultField>::vertex_shift(&alg, vec![1, 2])?;
    let g = PerfComplex::stalk(vec![0, 1], 0);
    let mut run = GrowthRun::new(&alg, f, &g)?;
    t_grid
        .iter()
        .map(|&t| {
            let s = run.series(Channel::DeltaHat, t, nmax, &Budget::default())?;
            let expected = t.max(2.0 * t);
            Ok(SodRow { t, computed: s.profile_slope, expected, exact: s.profile_slope == expected })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomEntry {
    pub i: usize,
    pub j: usize,
    pub k: i32,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub clauses: Vec<String>,
    /// `dim Hom^k(P_i, S_j)` for `|k| <= 3`.
    pub hom_table: Vec<HomEntry>,
}

pub const AUDIT_RANGE: i32 = 3;

/// Checks that `([A], mod A, add A)` behaves as an ST-triple; the first
/// violated clause is returned as [`Error::AuditFailure`].
pub fn st_triple_audit<F: Scalar>(alg: &PathAlgebra) -> Result<AuditReport> {
    let n = alg.num_vertices();
    let fail = |c: &str| Err(Error::AuditFailure(c.to_string()));
    let mut clauses = Vec::new();
    let probes = Probes::<F>::new(alg);

    let self_ext = hom_dims(alg, &probes.a, &probes.a);
    if self_ext.dims.iter().any(|(&k, &d)| k > 0 && d > 0) {
        return fail("silting: Hom^k(A, A) != 0 for some k > 0");
    }
    clauses.push("silting".to_string());

    let proj: Vec<PerfComplex<F>> = (0..n).map(|i| PerfComplex::stalk(vec![i], 0)).collect();
    let simples: Vec<PerfComplex<F>> =
        (0..n).map(|j| projective_resolution(alg, &ModuleRep::simple(alg, j))).collect();
    let mut hom_table = Vec::new();
    for (i, p) in proj.iter().enumerate() {
        for (j, s) in simples.iter().enumerate() {
            let h = hom_dims(alg, p, s);
            for k in -AUDIT_RANGE..=AUDIT_RANGE {
                let dim = h.get(k);
                if dim != usize::from(i == j && k == 0) {
                    return fail(&format!("hom-table: dim Hom^{k}(P{}, S{}) = {dim}", alg.label(i), alg.label(j)));
                }
                hom_table.push(HomEntry { i, j, k, dim });
            }
        }
    }
    clauses.push("hom-table".to_string());

    for (j, s) in simples.iter().enumerate() {
        let h = hom_dims(alg, &probes.a, s);
        if h.total() != 1 || h.get(0) != 1 {
            return fail(&format!("gamma-A: RHom(A, S{}) is not K", alg.label(j)));
        }
    }
    clauses.push("gamma-A-simples".to_string());

    for (i, p) in proj.iter().enumerate() {
        let h = hom_dims(alg, p, &probes.s);
        if h.total() != 1 || h.get(0) != 1 {
            return fail(&format!("gamma-B: Hom(P{}, S) is not K", alg.label(i)));
        }
    }
    clauses.push("gamma-B-projectives".to_string());

    // Hom(P_j, S) = S e_j, and precomposing with p: P_i -> P_j acts as S(p).
    let s_mod = (0..n).fold(ModuleRep::<F>::zero(alg), |acc, v| acc.direct_sum(&ModuleRep::simple(alg, v)));
    for i in 0..n {
        for j in 0..n {
            for p in alg.hom_proj_basis(i, j) {
                let action = s_mod.path_action(p);
                let iso = action.rows() == action.cols() && action.rank() == action.rows();
                if p.is_trivial() && !iso {
                    return fail(&format!("gamma-B: identity of P{} not sent to an isomorphism", alg.label(i)));
                }
                if !p.is_trivial() && !action.is_zero() {
                    return fail(&format!("gamma-B: radical map P{} -> P{} survives", alg.label(i), alg.label(j)));
                }
            }
        }
    }
    clauses.push("gamma-B-radical".to_string());
    Ok(AuditReport { clauses, hom_table })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OppositeReport {
    pub compared: usize,
    /// Iteration stopped early at the summand cap.
    pub truncated: bool,
    pub mismatches: Vec<String>,
}

impl OppositeReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn mirrored(p: &Profile) -> Profile {
    p.iter().map(|(&k, &v)| (-k, v)).collect()
}

/// Compares `(Φ^op)^N(DG)` over `A^op` with `Φ^N G` for `N <= nmax`:
/// co-t profiles and `Hom(A, -)` profiles must be mirror images, and the
/// objects must be isomorphic after dualizing. Stops once an iterate has
/// more than `max_summands` summands.
pub fn opposite_series_check<F: Scalar>(
    alg: &PathAlgebra,
    f: &Functor<F>,
    g: &PerfComplex<F>,
    nmax: usize,
    max_summands: usize,
) -> Result<OppositeReport> {
    let op = alg.opposite();
    let f_op = f.op_transport();
    let a = PerfComplex::<F>::stalk((0..alg.num_vertices()).collect(), 0);
    let a_op = PerfComplex::<F>::stalk((0..op.num_vertices()).collect(), 0);
    let probes_op = Probes { a: a_op, s: PerfComplex::zero() };
    let (mut y, mut z) = (g.minimize(), dualize(&g.minimize()));
    let mut report = OppositeReport { compared: 0, truncated: false, mismatches: Vec::new() };
    for n in 0..=nmax {
        if n > 0 {
            y = f.apply(alg, &y)?;
            z = f_op.apply(&op, &z)?;
        }
        if y.total_summands() > max_summands {
            report.truncated = true;
            break;
        }
        let direct_cot = channel_profile(alg, Channel::DeltaCheck, &y, &probes_op)?;
        let op_cot = channel_profile(&op, Channel::DeltaCheck, &z, &probes_op)?;
        if op_cot != mirrored(&direct_cot) {
            report.mismatches.push(format!("N={n} delta_check: {op_cot:?} vs {direct_cot:?}"));
        }
        let direct_hom: Profile = hom_dims(alg, &y, &a).dims;
        let op_hom = channel_profile(&op, Channel::HomA, &z, &probes_op)?;
        if op_hom != mirrored(&direct_hom) {
            report.mismatches.push(format!("N={n} hom_A: {op_hom:?} vs {direct_hom:?}"));
        }
        if !iso_test(&op, &z, &dualize(&y)) {
            report.mismatches.push(format!("N={n}: transported iterate not isomorphic to the dual"));
        }
        report.compared += 1;
    }
    Ok(report)
}
