use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::algebra::Path;
use crate::scalars::{Ring, Scalar};

/// A linear combination of paths, sorted by path with no zero coefficients.
///
/// Multiplication is concatenation: `(p * q)` is `p` followed by `q`, and
/// vanishes when the endpoints do not meet.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgElem<F> {
    terms: Vec<(Path, F)>,
}

impl<F: Scalar> AlgElem<F> {
    pub fn path(p: Path) -> Self {
        AlgElem { terms: vec![(p, F::one())] }
    }

    pub fn scaled_path(p: Path, c: F) -> Self {
        if c.is_zero() {
            AlgElem::zero()
        } else {
            AlgElem { terms: vec![(p, c)] }
        }
    }

    pub fn from_terms(mut terms: Vec<(Path, F)>) -> Self {
        terms.sort_by_key(|a| a.0);
        let mut out: Vec<(Path, F)> = Vec::with_capacity(terms.len());
        for (p, c) in terms {
            match out.last_mut() {
                Some((q, d)) if *q == p => *d = d.clone() + c,
                _ => out.push((p, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        AlgElem { terms: out }
    }

    pub fn terms(&self) -> &[(Path, F)] {
        &self.terms
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return AlgElem::zero();
        }
        AlgElem { terms: self.terms.iter().map(|(p, x)| (*p, x.clone() * c.clone())).collect() }
    }

    /// Coefficient of the trivial path, if the element has one.
    pub fn unit_coefficient(&self) -> Option<&F> {
        self.terms.iter().find(|(p, _)| p.is_trivial()).map(|(_, c)| c)
    }

    pub fn has_unit_part(&self) -> bool {
        self.unit_coefficient().is_some()
    }

    /// Image in the opposite algebra.
    pub fn reversed(&self) -> Self {
        AlgElem::from_terms(self.terms.iter().map(|(p, c)| (p.reversed(), c.clone())).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        AlgElem::from_terms(self.terms.iter().map(|(p, c)| (*p, f(c))).collect())
    }
}

impl<F: fmt::Debug> fmt::Debug for AlgElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}*{p:?}")?;
        }
        Ok(())
    }
}

impl<F: Scalar> Add for AlgElem<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if rhs.terms.is_empty() {
            return self;
        }
        if self.terms.is_empty() {
            return rhs;
        }
        let mut all = self.terms;
        all.extend(rhs.terms);
        AlgElem::from_terms(all)
    }
}

impl<F: Scalar> Neg for AlgElem<F> {
    type Output = Self;
    fn neg(self) -> Self {
        AlgElem { terms: self.terms.into_iter().map(|(p, c)| (p, -c)).collect() }
    }
}

impl<F: Scalar> Sub for AlgElem<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Scalar> Mul for AlgElem<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                if let Some(pq) = p.then(q) {
                    out.push((pq, a.clone() * b.clone()));
                }
            }
        }
        AlgElem::from_terms(out)
    }
}

impl<F: Scalar> Zero for AlgElem<F> {
    fn zero() -> Self {
        AlgElem { terms: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Scalar> Ring for AlgElem<F> {
    /// Only nonzero multiples of a trivial path are treated as units; for an
    /// acyclic quiver these are exactly the invertible maps `P_v -> P_v`.
    fn unit_inverse(&self) -> Option<Self> {
        match self.terms.as_slice() {
            [(p, c)] if p.is_trivial() => Some(AlgElem { terms: vec![(*p, c.inverse()?)] }),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Zp;

    type F = Zp<1_000_003>;

    #[test]
    fn multiplication_is_concatenation() {
        let a = AlgElem::<F>::path(Path::arrow(0, 0, 1));
        let b = AlgElem::<F>::path(Path::arrow(1, 1, 2));
        assert_eq!((a.clone() * b.clone()).terms().len(), 1);
        assert!((b.clone() * a.clone()).is_zero());
        let e0 = AlgElem::<F>::path(Path::trivial(0));
        assert_eq!(e0.clone() * a.clone(), a);
        assert_eq!((a.clone() - a.clone()), AlgElem::zero());
        let u = AlgElem::scaled_path(Path::trivial(0), F::new(5));
        assert_eq!(u.unit_inverse().unwrap() * u, e0);
        assert!(a.unit_inverse().is_none());
    }
}
