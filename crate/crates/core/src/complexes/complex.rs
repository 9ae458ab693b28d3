use std::collections::BTreeMap;

use num_traits::Zero;

use super::elem::AlgElem;
use crate::error::{Error, Result};
use crate::scalars::{split_invertible_block, Matrix, Scalar};

pub type AlgMatrix<F> = Matrix<AlgElem<F>>;

/// A bounded complex of indecomposable projectives.
///
/// Cohomological grading: the differential raises degree. `terms[i]` lists
/// the vertices of the summands `P_v` in degree `lo + i`, and `diffs[i]` is
/// the `|terms[i + 1]| x |terms[i]|` matrix of the differential out of that
/// degree. Entry `(r, c)` is an element of `Hom(P_{terms[i][c]}, P_{terms[i+1][r]})`.
///
/// Values are kept trimmed: the first and last terms are nonempty, and the
/// zero complex has no terms.
#[derive(Debug, Clone, PartialEq)]
pub struct PerfComplex<F> {
    lo: i32,
    terms: Vec<Vec<usize>>,
    diffs: Vec<AlgMatrix<F>>,
}

impl<F: Scalar> Default for PerfComplex<F> {
    fn default() -> Self {
        PerfComplex::zero()
    }
}

impl<F: Scalar> PerfComplex<F> {
    pub fn zero() -> Self {
        PerfComplex { lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `⊕ P_v` concentrated in one degree.
    pub fn stalk(vertices: Vec<usize>, degree: i32) -> Self {
        PerfComplex::from_parts(degree, vec![vertices], Vec::new())
    }

    /// Checked constructor: shapes, path endpoints and `d^2 = 0`.
    pub fn new(lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<AlgMatrix<F>>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::NotAComplex(lo));
        }
        for (i, d) in diffs.iter().enumerate() {
            let deg = lo + i as i32;
            if d.rows() != terms[i + 1].len() || d.cols() != terms[i].len() {
                return Err(Error::NotAComplex(deg));
            }
            if !entries_fit(d, &terms[i + 1], &terms[i]) {
                return Err(Error::NotAComplex(deg));
            }
        }
        let x = PerfComplex { lo, terms, diffs };
        x.check_d2()?;
        Ok(x.normalized())
    }

    pub(crate) fn from_parts(lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<AlgMatrix<F>>) -> Self {
        debug_assert_eq!(diffs.len() + 1, terms.len().max(1));
        PerfComplex { lo, terms, diffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        let lead = self.terms.iter().take_while(|t| t.is_empty()).count();
        if lead == self.terms.len() {
            return PerfComplex::zero();
        }
        if lead > 0 {
            self.terms.drain(..lead);
            self.diffs.drain(..lead);
            self.lo += lead as i32;
        }
        self
    }

    /// Builds a complex over degrees `lo..=hi` from closures.
    pub(crate) fn assemble(
        lo: i32,
        hi: i32,
        mut term: impl FnMut(i32) -> Vec<usize>,
        mut diff: impl FnMut(i32) -> AlgMatrix<F>,
    ) -> Self {
        if hi < lo {
            return PerfComplex::zero();
        }
        let terms: Vec<Vec<usize>> = (lo..=hi).map(&mut term).collect();
        let diffs = (lo..hi).map(&mut diff).collect();
        PerfComplex::from_parts(lo, terms, diffs)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest nonzero degree (0 for the zero complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest nonzero degree (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo()..=self.hi()
    }

    /// Summand vertices in `degree` (empty outside the support).
    pub fn term(&self, degree: i32) -> &[usize] {
        match self.slot(degree) {
            Some(i) => &self.terms[i],
            None => &[],
        }
    }

    fn slot(&self, degree: i32) -> Option<usize> {
        let i = degree.checked_sub(self.lo)?;
        (i >= 0 && (i as usize) < self.terms.len()).then_some(i as usize)
    }

    /// Differential out of `degree`, zero-filled outside the support.
    pub fn diff(&self, degree: i32) -> AlgMatrix<F> {
        match self.slot(degree) {
            Some(i) if i < self.diffs.len() => self.diffs[i].clone(),
            _ => Matrix::zeros(self.term(degree + 1).len(), self.term(degree).len()),
        }
    }

    pub fn diff_ref(&self, degree: i32) -> Option<&AlgMatrix<F>> {
        self.slot(degree).and_then(|i| self.diffs.get(i))
    }

    pub fn total_summands(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// Number of summands at each vertex, over all degrees.
    pub fn vertex_counts(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for t in &self.terms {
            for &v in t {
                out[v] += 1;
            }
        }
        out
    }

    pub fn check_d2(&self) -> Result<()> {
        for (i, pair) in self.diffs.windows(2).enumerate() {
            if !pair[1].mul(&pair[0]).is_zero() {
                return Err(Error::NotAComplex(self.lo + i as i32));
            }
        }
        Ok(())
    }

    /// `(Σ^k X)^d = X^{d+k}` with the differential multiplied by `(-1)^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return PerfComplex::zero();
        }
        let diffs = if k % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(Matrix::neg).collect() };
        PerfComplex { lo: self.lo - k, terms: self.terms.clone(), diffs }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo().min(other.lo());
        let hi = self.hi().max(other.hi());
        PerfComplex::assemble(
            lo,
            hi,
            |d| [self.term(d), other.term(d)].concat(),
            |d| Matrix::block_diag(&self.diff(d), &other.diff(d)),
        )
    }

    pub fn sum_all<'a>(items: impl IntoIterator<Item = &'a Self>) -> Self {
        items.into_iter().fold(PerfComplex::zero(), |acc, x| acc.direct_sum(x))
    }

    /// No differential entry has a component on a trivial path.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| (0..d.rows()).all(|r| d.row(r).iter().all(|e| !e.has_unit_part())))
    }

    /// Cancels every invertible differential component.
    ///
    /// Degrees are swept once from the bottom: eliminating a pivot out of
    /// degree `d` only deletes rows and columns of the neighbouring
    /// differentials, so it never creates new pivots there.
    pub fn minimize(&self) -> Self {
        let mut terms = self.terms.clone();
        let mut diffs = self.diffs.clone();
        for i in 0..diffs.len() {
            loop {
                let (src, dst) = (&terms[i], &terms[i + 1]);
                let mask = Matrix::from_fn(dst.len(), src.len(), |r, c| dst[r] == src[c]);
                let (pivot, rest) = split_invertible_block(&diffs[i], &mask);
                let Some((r, c)) = pivot else { break };
                diffs[i] = rest;
                terms[i].remove(c);
                terms[i + 1].remove(r);
                if i > 0 {
                    diffs[i - 1] = diffs[i - 1].without_row(c);
                }
                if i + 1 < diffs.len() {
                    diffs[i + 1] = diffs[i + 1].without_col(r);
                }
            }
        }
        PerfComplex::from_parts(self.lo, terms, diffs)
    }

    /// Minimizes, failing with `NotAComplex` if `d^2 != 0`.
    pub fn try_minimize(&self) -> Result<Self> {
        self.check_d2()?;
        Ok(self.minimize())
    }

    pub fn map_coeffs(&self, f: impl Fn(&F) -> F + Copy) -> Self {
        PerfComplex {
            lo: self.lo,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.map(|e| e.map_coeffs(f))).collect(),
        }
    }
}

fn entries_fit<F: Scalar>(d: &AlgMatrix<F>, rows: &[usize], cols: &[usize]) -> bool {
    (0..d.rows()).all(|r| {
        (0..d.cols()).all(|c| d.get(r, c).terms().iter().all(|(p, _)| p.src() == rows[r] && p.dst() == cols[c]))
    })
}

/// A degree-0 chain map between complexes of projectives.
///
/// `components[d]` is the `|Y^d| x |X^d|` matrix in degree `d`; missing
/// degrees are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMap<F> {
    pub source: PerfComplex<F>,
    pub target: PerfComplex<F>,
    components: BTreeMap<i32, AlgMatrix<F>>,
}

impl<F: Scalar> ChainMap<F> {
    pub fn new(
        source: PerfComplex<F>,
        target: PerfComplex<F>,
        components: BTreeMap<i32, AlgMatrix<F>>,
    ) -> Result<Self> {
        for (&d, m) in &components {
            let (rows, cols) = (target.term(d), source.term(d));
            if m.rows() != rows.len() || m.cols() != cols.len() {
                return Err(Error::InvalidChainMap(format!("component {d} has the wrong shape")));
            }
            if !entries_fit(m, rows, cols) {
                return Err(Error::InvalidChainMap(format!("component {d} has entries between wrong vertices")));
            }
        }
        let f = ChainMap::unchecked(source, target, components);
        f.check_commutes()?;
        Ok(f)
    }

    pub(crate) fn unchecked(
        source: PerfComplex<F>,
        target: PerfComplex<F>,
        mut components: BTreeMap<i32, AlgMatrix<F>>,
    ) -> Self {
        components.retain(|_, m| !m.is_empty() && !m.is_zero());
        ChainMap { source, target, components }
    }

    pub fn zero(source: PerfComplex<F>, target: PerfComplex<F>) -> Self {
        ChainMap { source, target, components: BTreeMap::new() }
    }

    pub fn identity(x: &PerfComplex<F>) -> Self {
        let components = x
            .degrees()
            .map(|d| {
                let t = x.term(d);
                let m = Matrix::from_fn(t.len(), t.len(), |r, c| {
                    if r == c {
                        AlgElem::path(crate::algebra::Path::trivial(t[r]))
                    } else {
                        AlgElem::zero()
                    }
                });
                (d, m)
            })
            .collect();
        ChainMap::unchecked(x.clone(), x.clone(), components)
    }

    pub fn component(&self, d: i32) -> AlgMatrix<F> {
        self.components
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.term(d).len(), self.source.term(d).len()))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn check_commutes(&self) -> Result<()> {
        let lo = self.source.lo().min(self.target.lo()) - 1;
        let hi = self.source.hi().max(self.target.hi()) + 1;
        for d in lo..=hi {
            let left = self.target.diff(d).mul(&self.component(d));
            let right = self.component(d + 1).mul(&self.source.diff(d));
            if left != right {
                return Err(Error::InvalidChainMap(format!("does not commute with the differential at degree {d}")));
            }
        }
        Ok(())
    }

    /// Composite `other ∘ self`.
    pub fn then(&self, other: &ChainMap<F>) -> ChainMap<F> {
        let components = self
            .source
            .degrees()
            .map(|d| (d, other.component(d).mul(&self.component(d))))
            .collect();
        ChainMap::unchecked(self.source.clone(), other.target.clone(), components)
    }

    pub fn scale(&self, c: &F) -> ChainMap<F> {
        let components = self.components.iter().map(|(&d, m)| (d, m.map(|e| e.scale(c)))).collect();
        ChainMap::unchecked(self.source.clone(), self.target.clone(), components)
    }

    /// Sum of two maps with the same source and target.
    pub fn add(&self, other: &ChainMap<F>) -> ChainMap<F> {
        let degrees: std::collections::BTreeSet<i32> =
            self.components.keys().chain(other.components.keys()).copied().collect();
        let components = degrees
            .into_iter()
            .map(|d| {
                let (a, b) = (self.component(d), other.component(d));
                (d, Matrix::from_fn(a.rows(), a.cols(), |r, c| a.get(r, c).clone() + b.get(r, c).clone()))
            })
            .collect();
        ChainMap::unchecked(self.source.clone(), self.target.clone(), components)
    }

    /// Mapping cone: `Cone^d = X^{d+1} ⊕ Y^d` with differential
    /// `[[-d_X, 0], [f, d_Y]]`, returned minimized.
    pub fn cone(&self) -> PerfComplex<F> {
        self.cone_unminimized().minimize()
    }

    pub fn cone_unminimized(&self) -> PerfComplex<F> {
        let (x, y) = (&self.source, &self.target);
        if x.is_zero() {
            return y.clone();
        }
        if y.is_zero() {
            return x.shift(1);
        }
        let lo = (x.lo() - 1).min(y.lo());
        let hi = (x.hi() - 1).max(y.hi());
        PerfComplex::assemble(
            lo,
            hi,
            |d| [x.term(d + 1), y.term(d)].concat(),
            |d| {
                let top = Matrix::hcat(
                    x.term(d + 2).len(),
                    &[&x.diff(d + 1).neg(), &Matrix::zeros(x.term(d + 2).len(), y.term(d).len())],
                );
                let bottom = Matrix::hcat(y.term(d + 1).len(), &[&self.component(d + 1), &y.diff(d)]);
                Matrix::vcat(x.term(d + 1).len() + y.term(d).len(), &[&top, &bottom])
            },
        )
    }
}
