//! Growth of complexities under iteration, and the checks built on it.
//!
//! For a functor `Φ` and generator `G` the four channels record, for each
//! `N`, an integer profile `k -> w` whose value at `t` is `Σ w e^{kt}`:
//!
//! * `delta_hat`: t-filtration of `Φ^N G`;
//! * `delta_check`: co-t-filtration of the minimal `Φ^N G`;
//! * `hom_A`: `k -> dim Hom^{-k}(A, Φ^N G)`;
//! * `hom_B`: `k -> dim Hom^{k}(Φ^N G, S)`, `S` the sum of the simples.
//!
//! Profiles are computed once per `N`; every `t` reuses them.

mod checks;
mod coxeter;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

pub use checks::{
    duality_check, entropy_curve, opposite_series_check, sod_max_check, st_triple_audit, AuditReport,
    CurveReport, CurveRow, DualityRow, HomEntry, OppositeReport, SodRow, AUDIT_RANGE, CHANNEL_TOLERANCE,
};
pub use coxeter::{coxeter_matrix, log_spectral_radius};

use crate::algebra::{projective_resolution, ModuleRep, PathAlgebra};
use crate::complexes::{hom_dims, PerfComplex};
use crate::error::{Error, Result};
use crate::filtrations::{cot_filtration, evaluate, t_filtration};
use crate::functors::Functor;
use crate::scalars::Scalar;

pub const DEFAULT_NMAX: usize = 30;
pub const DEFAULT_MAX_SUMMANDS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Channel {
    #[serde(rename = "delta_hat")]
    DeltaHat,
    #[serde(rename = "delta_check")]
    DeltaCheck,
    #[serde(rename = "hom_A")]
    HomA,
    #[serde(rename = "hom_B")]
    HomB,
}

impl Channel {
    pub const ALL: [Channel; 4] = [Channel::DeltaHat, Channel::DeltaCheck, Channel::HomA, Channel::HomB];

    pub fn name(self) -> &'static str {
        match self {
            Channel::DeltaHat => "delta_hat",
            Channel::DeltaCheck => "delta_check",
            Channel::HomA => "hom_A",
            Channel::HomB => "hom_B",
        }
    }

    /// Hom channels against a fixed object are submultiplicative.
    pub fn has_fekete_bound(self) -> bool {
        matches!(self, Channel::HomA | Channel::HomB)
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Channel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Channel::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse { column: 1, message: format!("unknown channel '{s}'") })
    }
}

/// Caps on the iteration.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_summands: usize,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_summands: DEFAULT_MAX_SUMMANDS, deadline: None }
    }
}

impl Budget {
    fn exhausted(&self, last: &PerfComplex<impl Scalar>) -> bool {
        last.total_summands() > self.max_summands || self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

pub type Profile = BTreeMap<i32, usize>;

/// Iterates `Φ^N G` and their channel profiles, computed on demand.
pub struct GrowthRun<'a, F> {
    alg: &'a PathAlgebra,
    functor: Functor<F>,
    iterates: Vec<PerfComplex<F>>,
    profiles: BTreeMap<Channel, Vec<Profile>>,
    probes: Option<Probes<F>>,
    truncated: bool,
}

impl<'a, F: Scalar> GrowthRun<'a, F> {
    /// `generator` must touch every vertex once minimized.
    pub fn new(alg: &'a PathAlgebra, functor: Functor<F>, generator: &PerfComplex<F>) -> Result<Self> {
        let g = generator.try_minimize()?;
        let counts = g.vertex_counts(alg.num_vertices());
        if let Some(v) = counts.iter().position(|&c| c == 0) {
            return Err(Error::NotSplitGenerator(alg.label(v).to_string()));
        }
        Ok(Self::unchecked(alg, functor, g))
    }

    /// No split-generator check; used for mirrored series.
    pub fn unchecked(alg: &'a PathAlgebra, functor: Functor<F>, generator: PerfComplex<F>) -> Self {
        GrowthRun { alg, functor, iterates: vec![generator.minimize()], profiles: BTreeMap::new(), probes: None, truncated: false }
    }

    pub fn algebra(&self) -> &PathAlgebra {
        self.alg
    }

    /// `Φ^n G` for `n <= nmax`, as far as the budget allows.
    pub fn extend_to(&mut self, nmax: usize, budget: &Budget) -> Result<usize> {
        while self.iterates.len() <= nmax {
            let last = self.iterates.last().expect("generator present");
            if budget.exhausted(last) {
                self.truncated = true;
                break;
            }
            let next = self.functor.apply(self.alg, last)?;
            if next.is_zero() {
                return Err(Error::ZeroIterate(self.iterates.len()));
            }
            self.iterates.push(next);
        }
        Ok(self.available(nmax))
    }

    fn available(&self, nmax: usize) -> usize {
        (self.iterates.len() - 1).min(nmax)
    }

    pub fn iterate(&self, n: usize) -> Option<&PerfComplex<F>> {
        self.iterates.get(n)
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Channel profile of `Φ^n G`; `n` must already be computed.
    pub fn profile(&mut self, channel: Channel, n: usize) -> Result<Profile> {
        let alg = self.alg;
        let probes = self.probes.get_or_insert_with(|| Probes::new(alg));
        let cache = self.profiles.entry(channel).or_default();
        while cache.len() <= n {
            cache.push(channel_profile(alg, channel, &self.iterates[cache.len()], probes)?);
        }
        Ok(cache[n].clone())
    }

    /// Growth series of one channel at `t` over `N = 1..=nmax`.
    pub fn series(&mut self, channel: Channel, t: f64, nmax: usize, budget: &Budget) -> Result<GrowthSeries> {
        let m = self.extend_to(nmax, budget)?;
        if m < 2 {
            return Err(Error::Timeout);
        }
        let profiles: Vec<Profile> = (1..=m).map(|n| self.profile(channel, n)).collect::<Result<_>>()?;
        Ok(GrowthSeries::from_profiles(channel, t, nmax, profiles, m < nmax))
    }
}

/// The fixed objects the Hom channels are measured against: `A` and the
/// sum `S` of the simples' resolutions.
#[derive(Debug, Clone)]
pub struct Probes<F> {
    pub a: PerfComplex<F>,
    pub s: PerfComplex<F>,
}

impl<F: Scalar> Probes<F> {
    pub fn new(alg: &PathAlgebra) -> Self {
        let n = alg.num_vertices();
        let a = PerfComplex::stalk((0..n).collect(), 0);
        let s = (0..n).fold(PerfComplex::zero(), |acc, v| {
            acc.direct_sum(&projective_resolution(alg, &ModuleRep::simple(alg, v)))
        });
        Probes { a, s }
    }
}

/// Integer profile of one channel for a single object.
pub fn channel_profile<F: Scalar>(
    alg: &PathAlgebra,
    channel: Channel,
    x: &PerfComplex<F>,
    probes: &Probes<F>,
) -> Result<Profile> {
    Ok(match channel {
        Channel::DeltaHat => t_filtration(alg, x).as_map(),
        Channel::DeltaCheck if x.is_minimal() => cot_filtration(x)?.as_map(),
        Channel::DeltaCheck => cot_filtration(&x.minimize())?.as_map(),
        Channel::HomA => hom_dims(alg, &probes.a, x).dims.into_iter().map(|(k, v)| (-k, v)).collect(),
        Channel::HomB => hom_dims(alg, x, &probes.s).dims,
    })
}

/// `a_1..a_M` for one channel at one `t`, with limit estimates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthSeries {
    pub t: f64,
    pub channel: Channel,
    /// Requested `N_max`; `a` is shorter when truncated.
    pub n_max: usize,
    pub a: Vec<f64>,
    pub regression_slope: f64,
    pub last_ratio: f64,
    pub fekete_upper: Option<f64>,
    /// Growth of the dominant exponent over the second half, computed from
    /// the integer profiles.
    pub profile_slope: f64,
    pub truncated: bool,
    #[serde(skip)]
    pub profiles: Vec<Profile>,
}

impl GrowthSeries {
    pub fn from_profiles(channel: Channel, t: f64, n_max: usize, profiles: Vec<Profile>, truncated: bool) -> Self {
        let a: Vec<f64> = profiles.iter().map(|p| evaluate(p, t)).collect();
        let m = a.len();
        let logs: Vec<f64> = a.iter().map(|x| x.ln()).collect();
        // log a_N = K_N t + r_N, K_N the dominant exponent; the integer part
        // is regressed exactly so pure shifts give exact slopes.
        let dom: Vec<i64> = profiles.iter().map(|p| dominant_exponent(p, t)).collect();
        let rest: Vec<f64> = profiles
            .iter()
            .zip(&dom)
            .map(|(p, &k)| p.iter().map(|(&j, &w)| w as f64 * ((j as i64 - k) as f64 * t).exp()).sum::<f64>().ln())
            .collect();
        let half = m.div_ceil(2).max(1);
        let window = half..=m;
        let regression_slope = t * integer_regression(window.clone().map(|n| (n as i64, dom[n - 1])))
            + regression(&window.map(|n| (n as f64, rest[n - 1])).collect::<Vec<_>>());
        let last_ratio = (dom[m - 1] - dom[m - 2]) as f64 * t + (rest[m - 1] - rest[m - 2]);
        let fekete_upper = channel
            .has_fekete_bound()
            .then(|| (1..=m).map(|n| logs[n - 1] / n as f64).fold(f64::INFINITY, f64::min));
        let lo = if half == m { m - 1 } else { half };
        let (k_hi, k_lo) = (dominant_exponent(&profiles[m - 1], t), dominant_exponent(&profiles[lo - 1], t));
        let profile_slope = ((k_hi - k_lo) as f64 / (m - lo) as f64) * t;
        GrowthSeries { t, channel, n_max, a, regression_slope, last_ratio, fekete_upper, profile_slope, truncated, profiles }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

/// Exponent `k` maximizing `k t` over the support (0 when `t = 0`).
pub fn dominant_exponent(profile: &Profile, t: f64) -> i64 {
    let keys = profile.keys().map(|&k| k as i64);
    if t > 0.0 {
        keys.max().unwrap_or(0)
    } else if t < 0.0 {
        keys.min().unwrap_or(0)
    } else {
        0
    }
}

/// Least-squares slope through `(x, y)` points.
pub fn regression(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    // centring y on its first value keeps constant data exactly flat
    let y0 = points[0].1;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - y0)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Least-squares slope through integer points, rounded once.
pub fn integer_regression(points: impl Iterator<Item = (i64, i64)>) -> f64 {
    let (mut n, mut sx, mut sy, mut sxy, mut sxx) = (0i128, 0i128, 0i128, 0i128, 0i128);
    for (x, y) in points {
        let (x, y) = (x as i128, y as i128);
        n += 1;
        sx += x;
        sy += y;
        sxy += x * y;
        sxx += x * x;
    }
    let den = n * sxx - sx * sx;
    if den == 0 {
        return 0.0;
    }
    (n * sxy - sx * sy) as f64 / den as f64
}

/// One-shot series for `Φ`, `G`, channel and `t`.
pub fn growth_series<F: Scalar>(
    alg: &PathAlgebra,
    functor: &Functor<F>,
    generator: &PerfComplex<F>,
    t: f64,
    nmax: usize,
    channel: Channel,
) -> Result<GrowthSeries> {
    GrowthRun::new(alg, functor.clone(), generator)?.series(channel, t, nmax, &Budget::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::complexes::ObjExpr;
    use crate::scalars::Zp;

    type F = Zp<1_000_003>;

    fn setup(alg: &PathAlgebra, f: &str, g: &str) -> (Functor<F>, PerfComplex<F>) {
        (Functor::parse(f, alg).unwrap(), ObjExpr::parse(g).unwrap().resolve(alg).unwrap())
    }

    #[test]
    fn shift_and_identity() {
        let alg = builtin::a2();
        let (f, g) = setup(&alg, "Sigma", "P1+P2");
        for t in [-1.0, 0.0, 0.5] {
            let s = growth_series(&alg, &f, &g, t, 10, Channel::DeltaHat).unwrap();
            assert_eq!(s.profile_slope, t);
            assert_eq!(s.regression_slope, t);
        }
        let (f, g) = setup(&alg, "id", "P1+P2");
        let s = growth_series(&alg, &f, &g, 0.7, 10, Channel::HomB).unwrap();
        assert_eq!(s.regression_slope, 0.0);
        assert_eq!(s.profile_slope, 0.0);
    }

    #[test]
    fn nu_on_a2_grows_like_t_over_three() {
        let alg = builtin::a2();
        let (f, g) = setup(&alg, "nu", "P1+P2");
        let s = growth_series(&alg, &f, &g, 0.0, 24, Channel::HomA).unwrap();
        assert!(s.regression_slope.abs() < 0.02, "{}", s.regression_slope);
        let s = growth_series(&alg, &f, &g, 1.0, 24, Channel::HomA).unwrap();
        assert!((s.regression_slope - 1.0 / 3.0).abs() < 0.02, "{}", s.regression_slope);
    }

    #[test]
    fn errors() {
        let alg = builtin::a2();
        let (f, g) = setup(&alg, "nu", "P1");
        assert!(matches!(growth_series(&alg, &f, &g, 0.0, 5, Channel::HomA), Err(Error::NotSplitGenerator(_))));
        let point = crate::algebra::load_quiver(r#"{"vertices": ["1"]}"#).unwrap();
        let (f, g) = setup(&point, "T[P1]", "P1");
        assert_eq!(growth_series(&point, &f, &g, 0.0, 5, Channel::HomA), Err(Error::ZeroIterate(1)));
        let budget = Budget { max_summands: 0, deadline: None };
        let (f, g) = setup(&alg, "nu", "P1+P2");
        let mut run = GrowthRun::new(&alg, f, &g).unwrap();
        assert_eq!(run.series(Channel::HomA, 0.0, 5, &budget), Err(Error::Timeout));
    }

    #[test]
    fn channel_names_round_trip() {
        for c in Channel::ALL {
            assert_eq!(c.name().parse::<Channel>().unwrap(), c);
        }
        assert!("hom_C".parse::<Channel>().is_err());
    }
}
