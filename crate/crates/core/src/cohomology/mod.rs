//! Low-degree cohomology of module triples on both sides, extensions and
//! their Baer sums, and transport of classes through `Exp`/`Log`.
//!
//! Classes are computed by linear algebra on explicit cochain
//! parametrizations:
//!
//! * group `H^1`: crossed homomorphisms, determined by their values on a
//!   generating set;
//! * group `H^2`: normalized 2-cocycles `f`, determined by `f(x, s)` for
//!   `s` in a generating set (the rest follows along a spanning tree of the
//!   Cayley graph);
//! * Lie `H^1`: derivations on a basis;
//! * Lie `H^2`: extensions `0 -> M -> E -> L -> 0` with chosen lifts `b_i^`
//!   of the basis, recorded as the tails `t_i = p^{e_i} b_i^` and the
//!   `M`-parts `F_ij` of `[b_i^, b_j^]`.

mod group;
mod lie;
mod transport;

use serde::Serialize;
use thiserror::Error;

pub use group::*;
pub use lie::*;
pub use transport::*;

use crate::bchgroup::GroupError;
use crate::liering::LieError;
use crate::ring::{AbelianPGroup, InvariantFactors, RingError, Subgroup, Subquotient};
use crate::triples::{GroupTriple, LieTriple, TripleError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("object of size {size} exceeds the configured bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("boundary data mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Size limits for exhaustive constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest group or ring order accepted by the degree-2 computations.
    pub max_elements: usize,
}

impl Bounds {
    pub fn cube(p: u64) -> Self {
        Bounds { max_elements: (p * p * p) as usize }
    }

    pub fn check(&self, size: usize) -> Result<(), CohomologyError> {
        if size > self.max_elements {
            return Err(CohomologyError::TooLarge { size, bound: self.max_elements });
        }
        Ok(())
    }
}

/// `Z / B` for an explicit cochain parametrization.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub cochains: AbelianPGroup,
    sq: Subquotient,
}

impl CohomologyGroup {
    pub fn new(cochains: AbelianPGroup, cycles: &[Vec<u64>], boundaries: &[Vec<u64>]) -> Self {
        let sq = Subquotient::new(&cochains, cycles, boundaries);
        CohomologyGroup { cochains, sq }
    }

    pub fn invariants(&self) -> InvariantFactors {
        self.sq.invariants()
    }

    /// Coordinates of classes.
    pub fn classes(&self) -> &AbelianPGroup {
        &self.sq.quotient.quotient
    }

    pub fn is_cycle(&self, v: &[u64]) -> bool {
        self.sq.cycles.coordinates(v).is_some()
    }

    pub fn classify(&self, v: &[u64]) -> Option<Vec<u64>> {
        self.sq.classify(v)
    }

    pub fn representative(&self, class: &[u64]) -> Vec<u64> {
        self.sq.representative(class)
    }

    /// Representatives of the class generators.
    pub fn generators(&self) -> Vec<Vec<u64>> {
        (0..self.classes().rank()).map(|k| self.representative(&self.classes().unit(k))).collect()
    }

    pub fn zero_class(&self) -> Vec<u64> {
        self.classes().zero()
    }

    pub fn add_classes(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.classes().add(a, b)
    }

    /// Subgroup of classes spanned by `vs`.
    pub fn span(&self, classes: &[Vec<u64>]) -> Subgroup {
        Subgroup::new(self.classes(), classes)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Group,
    Lie,
}

/// `{m : phi(g) m = m for all g}`.
pub fn h0_group(t: &GroupTriple) -> Subgroup {
    let id = crate::ring::HomMatrix::identity(t.module.clone());
    let gens = t.group.generators();
    let diffs: Vec<_> = gens.iter().map(|&g| t.phi[g].sub(&id)).collect();
    common_kernel(&t.module, &diffs)
}

/// `{m : psi(a) m = 0 for all a}`.
pub fn h0_lie(t: &LieTriple) -> Subgroup {
    common_kernel(&t.module, &t.psi)
}

fn common_kernel(module: &AbelianPGroup, maps: &[crate::ring::HomMatrix]) -> Subgroup {
    if maps.is_empty() {
        return Subgroup::whole(module);
    }
    let mut target_exps = Vec::new();
    let mut rows = Vec::new();
    for a in maps {
        target_exps.extend_from_slice(&a.target.exps);
        rows.extend(a.entries.iter().cloned());
    }
    let target = AbelianPGroup::new(module.p, target_exps);
    let k = crate::ring::kernel_mixed(module, &target, &rows);
    Subgroup::new(module, &k)
}

/// Coinvariants `M / [M, G]`.
pub fn h0_co_group(t: &GroupTriple) -> Result<InvariantFactors, CohomologyError> {
    let chain = t.chain()?;
    Ok(coinvariants(&t.module, &chain))
}

/// Coinvariants `M / [M, L]`.
pub fn h0_co_lie(t: &LieTriple) -> Result<InvariantFactors, CohomologyError> {
    let chain = t.chain()?;
    Ok(coinvariants(&t.module, &chain))
}

fn coinvariants(module: &AbelianPGroup, chain: &[Subgroup]) -> InvariantFactors {
    let gens = chain.get(1).map(|s| s.generators()).unwrap_or_default();
    crate::ring::AbelianQuotient::new(module, &gens).invariants()
}

pub(crate) fn repeat_exps(module: &AbelianPGroup, times: usize) -> AbelianPGroup {
    let mut exps = Vec::with_capacity(module.rank() * times);
    for _ in 0..times {
        exps.extend_from_slice(&module.exps);
    }
    AbelianPGroup::new(module.p, exps)
}
