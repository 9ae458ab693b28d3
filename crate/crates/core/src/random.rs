//! Seeded random complexes and chain maps for property tests.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Path, PathAlgebra};
use crate::complexes::{cocycles, AlgElem, AlgMatrix, ChainMap, PerfComplex};
use crate::scalars::{Matrix, Scalar};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

const MAX_DEGREES: usize = 4;
const MAX_SUMMANDS: usize = 4;
const RETRIES: usize = 20;

fn coefficient<F: Scalar>(rng: &mut Rng64) -> F {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-3..=3);
    }
    F::from_i64(c)
}

/// Random radical element of `Hom(P_col, P_row)`; roughly half the paths
/// get a nonzero coefficient.
fn radical_element<F: Scalar>(alg: &PathAlgebra, row: usize, col: usize, rng: &mut Rng64) -> AlgElem<F> {
    let mut terms = Vec::new();
    for p in alg.paths(row, col).iter().filter(|p| !p.is_trivial()) {
        if rng.gen_bool(0.5) {
            terms.push((*p, coefficient(rng)));
        }
    }
    AlgElem::from_terms(terms)
}

fn random_radical_matrix<F: Scalar>(
    alg: &PathAlgebra,
    rows: &[usize],
    cols: &[usize],
    rng: &mut Rng64,
) -> AlgMatrix<F> {
    Matrix::from_fn(rows.len(), cols.len(), |r, c| radical_element(alg, rows[r], cols[c], rng))
}

/// Random minimal complex: 1 to 4 degrees, at most 4 summands per degree,
/// radical differentials resampled until `d^2 = 0` (zero after 20 misses).
pub fn random_minimal_complex<F: Scalar>(alg: &PathAlgebra, rng: &mut Rng64) -> PerfComplex<F> {
    let n = alg.num_vertices();
    let len = rng.gen_range(1..=MAX_DEGREES);
    let lo = rng.gen_range(-2..=1);
    let terms: Vec<Vec<usize>> = (0..len)
        .map(|i| {
            let k = rng.gen_range(usize::from(i == 0)..=MAX_SUMMANDS);
            (0..k).map(|_| rng.gen_range(0..n)).collect()
        })
        .collect();
    let mut diffs: Vec<AlgMatrix<F>> = Vec::with_capacity(len.saturating_sub(1));
    for i in 0..len.saturating_sub(1) {
        let mut chosen = Matrix::zeros(terms[i + 1].len(), terms[i].len());
        for _ in 0..RETRIES {
            let m = random_radical_matrix(alg, &terms[i + 1], &terms[i], rng);
            if i == 0 || m.mul(&diffs[i - 1]).is_zero() {
                chosen = m;
                break;
            }
        }
        diffs.push(chosen);
    }
    PerfComplex::new(lo, terms, diffs).expect("d^2 = 0 by construction")
}

/// A random minimal complex with contractible pieces added and the result
/// scrambled by elementary base changes, so it is usually not minimal.
pub fn random_complex<F: Scalar>(alg: &PathAlgebra, rng: &mut Rng64) -> PerfComplex<F> {
    let mut x = random_minimal_complex(alg, rng);
    for _ in 0..rng.gen_range(0..=2) {
        let v = rng.gen_range(0..alg.num_vertices());
        let d = rng.gen_range(x.lo() - 1..=x.hi());
        let c = coefficient::<F>(rng);
        let piece = PerfComplex::new(
            d,
            vec![vec![v], vec![v]],
            vec![Matrix::from_rows(1, vec![vec![AlgElem::scaled_path(Path::trivial(v), c)]])],
        )
        .expect("contractible piece");
        x = x.direct_sum(&piece);
    }
    scramble(alg, &x, rng)
}

/// Applies random automorphisms `1 + λ p E_ij` of the terms.
pub fn scramble<F: Scalar>(alg: &PathAlgebra, x: &PerfComplex<F>, rng: &mut Rng64) -> PerfComplex<F> {
    if x.is_zero() {
        return x.clone();
    }
    let terms: Vec<Vec<usize>> = x.degrees().map(|d| x.term(d).to_vec()).collect();
    let mut diffs: Vec<AlgMatrix<F>> = (x.lo()..x.hi()).map(|d| x.diff(d)).collect();
    for _ in 0..6 {
        let i = rng.gen_range(0..terms.len());
        let t = &terms[i];
        if t.len() < 2 {
            continue;
        }
        let (a, b) = (rng.gen_range(0..t.len()), rng.gen_range(0..t.len()));
        if a == b {
            continue;
        }
        let Some(p) = alg.paths(t[a], t[b]).choose(rng) else { continue };
        let e = AlgElem::scaled_path(*p, coefficient(rng));
        let unit = |k: usize| AlgElem::path(Path::trivial(t[k]));
        let ident = |r: usize, c: usize| if r == c { unit(r) } else { AlgElem::zero() };
        let fwd = Matrix::from_fn(t.len(), t.len(), |r, c| if (r, c) == (a, b) { e.clone() } else { ident(r, c) });
        let inv = Matrix::from_fn(t.len(), t.len(), |r, c| if (r, c) == (a, b) { -e.clone() } else { ident(r, c) });
        if i < diffs.len() {
            diffs[i] = diffs[i].mul(&inv);
        }
        if i > 0 {
            diffs[i - 1] = fwd.mul(&diffs[i - 1]);
        }
    }
    PerfComplex::new(x.lo(), terms, diffs).expect("base change preserves d^2 = 0")
}

/// Random element of `Z^0 Hom(X, Y)`.
pub fn random_chain_map<F: Scalar>(
    alg: &PathAlgebra,
    x: &PerfComplex<F>,
    y: &PerfComplex<F>,
    rng: &mut Rng64,
) -> ChainMap<F> {
    cocycles(alg, x, y, 0)
        .iter()
        .fold(ChainMap::zero(x.clone(), y.clone()), |acc, f| {
            if rng.gen_bool(0.3) {
                acc
            } else {
                acc.add(&f.scale(&coefficient(rng)))
            }
        })
}
