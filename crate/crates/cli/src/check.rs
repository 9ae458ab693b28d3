use std::fmt;

use qent_core::algebra::PathAlgebra;
use qent_core::complexes::{hom_dims, serre, serre_inv, PerfComplex};
use qent_core::entropy::{channel_profile, opposite_series_check, st_triple_audit, Channel, Probes};
use qent_core::filtrations::triangle_subadditivity_check;
use qent_core::functors::{iso_test, Functor};
use qent_core::random::{random_chain_map, random_complex, rng};
use qent_core::scalars::Scalar;

pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    /// Seeds reproducing the failures.
    pub seeds: Vec<u64>,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.name)?;
        if !self.seeds.is_empty() {
            write!(f, " seeds={:?}", self.seeds)?;
        }
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

type Property<F> = (&'static str, fn(&PathAlgebra, &Probes<F>, u64) -> bool);

fn a_channel<F: Scalar>(alg: &PathAlgebra, probes: &Probes<F>, seed: u64) -> bool {
    let x: PerfComplex<F> = random_complex(alg, &mut rng(seed));
    channel_profile(alg, Channel::DeltaHat, &x, probes).ok() == channel_profile(alg, Channel::HomA, &x, probes).ok()
}

fn b_channel<F: Scalar>(alg: &PathAlgebra, probes: &Probes<F>, seed: u64) -> bool {
    let x: PerfComplex<F> = random_complex(alg, &mut rng(seed));
    channel_profile(alg, Channel::DeltaCheck, &x, probes).ok() == channel_profile(alg, Channel::HomB, &x, probes).ok()
}

fn minimize_keeps_homs<F: Scalar>(alg: &PathAlgebra, probes: &Probes<F>, seed: u64) -> bool {
    let x: PerfComplex<F> = random_complex(alg, &mut rng(seed));
    let m = x.minimize();
    m.is_minimal() && [&probes.a, &probes.s].iter().all(|y| hom_dims(alg, &x, y) == hom_dims(alg, &m, y))
}

fn subadditivity<F: Scalar>(alg: &PathAlgebra, _: &Probes<F>, seed: u64) -> bool {
    let mut r = rng(seed);
    let d: PerfComplex<F> = random_complex(alg, &mut r);
    let f: PerfComplex<F> = random_complex(alg, &mut r);
    let g = random_chain_map(alg, &f.shift(-1), &d, &mut r);
    [-1.0, 0.0, 1.0].iter().all(|&t| triangle_subadditivity_check(alg, &d, &f, &g, t).unwrap_or(false))
}

fn serre_round_trip<F: Scalar>(alg: &PathAlgebra, _: &Probes<F>, seed: u64) -> bool {
    let x: PerfComplex<F> = random_complex(alg, &mut rng(seed)).minimize();
    iso_test(alg, &serre(alg, &serre_inv(alg, &x)), &x)
}

fn op_duality<F: Scalar>(alg: &PathAlgebra, _: &Probes<F>, seed: u64) -> bool {
    let x: PerfComplex<F> = random_complex(alg, &mut rng(seed)).minimize();
    let Ok(nu) = Functor::<F>::parse("nu", alg) else { return false };
    opposite_series_check(alg, &nu, &x, 2, 60).is_ok_and(|r| r.passed())
}

pub fn run_suite<F: Scalar>(alg: &PathAlgebra, seed: u64, samples: usize) -> Vec<Outcome> {
    let mut out = vec![match st_triple_audit::<F>(alg) {
        Ok(r) => Outcome { name: "st-triple-audit", passed: true, seeds: vec![], detail: r.clauses.join(", ") },
        Err(e) => Outcome { name: "st-triple-audit", passed: false, seeds: vec![], detail: e.to_string() },
    }];
    let probes = Probes::<F>::new(alg);
    let props: [Property<F>; 6] = [
        ("a-channel-identity", a_channel),
        ("b-channel-identity", b_channel),
        ("minimize-preserves-hom", minimize_keeps_homs),
        ("subadditivity", subadditivity),
        ("serre-round-trip", serre_round_trip),
        ("opposite-duality", op_duality),
    ];
    for (name, prop) in props {
        let seeds: Vec<u64> = (0..samples as u64).map(|i| seed + i).filter(|&s| !prop(alg, &probes, s)).collect();
        out.push(Outcome { name, passed: seeds.is_empty(), detail: format!("{samples} samples"), seeds });
    }
    out
}
