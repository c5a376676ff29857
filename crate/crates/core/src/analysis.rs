//! The whole pipeline for one pair: decomposition, effectiveness, primality
//! and the symplectic verdict.

use crate::automorphism::{fitting_decomposition, CanonicalDecomposition, FiniteOrderAutomorphism};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::symplectic::{verdict_for, SymplecticVerdict};

#[derive(Clone, Debug)]
pub struct PairAnalysis<S> {
    /// Smallest field holding the structure constants and `ν`.
    pub field: Field,
    pub decomposition: CanonicalDecomposition<S>,
    pub effective: bool,
    pub prime: bool,
    pub verdict: SymplecticVerdict<S>,
}

impl<S: Scalar> PairAnalysis<S> {
    /// `(dim h, dim m)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.decomposition.h().dim(), self.decomposition.m().dim())
    }
}

pub fn analyze_pair<S: Scalar>(nu: &FiniteOrderAutomorphism<S>) -> Result<PairAnalysis<S>> {
    let alg = nu.algebra();
    if !alg.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    let field = nu
        .matrix()
        .to_rows()
        .iter()
        .flatten()
        .map(Scalar::field)
        .fold(alg.field(), Field::join);
    let decomposition = fitting_decomposition(nu)?;
    let effective = decomposition.is_effective()?;
    let prime = decomposition.is_prime()?;
    let verdict = verdict_for(&decomposition)?;
    Ok(PairAnalysis {
        field,
        decomposition,
        effective,
        prime,
        verdict,
    })
}
