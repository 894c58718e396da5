//! Crossed modules `0 -> M -> H -> G1 -> G2 -> 1` of groups and of Lie
//! rings with a fixed boundary `(alpha: G1 -> G2, M)`, their axioms, Baer
//! sums, an equivalence test, and transport through `exp`/`log`.

mod group;
mod lie;
mod transport;
mod zoo;

use serde::Serialize;
use thiserror::Error;

pub use group::*;
pub use lie::*;
pub use transport::*;
pub use zoo::lie_zoo;

use crate::bchgroup::GroupError;
use crate::liering::LieError;
use crate::ring::RingError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossedError {
    #[error("crossed transport needs c + d < p (c = {c}, d = {d}, p = {p}); witness: {witness}")]
    Bound { c: usize, d: usize, p: u64, witness: String },
    #[error("crossed module axioms fail: {0}")]
    Axioms(String),
    #[error("boundary data differ: {0}")]
    BoundaryMismatch(String),
    #[error("action is not unipotent on the Lie coordinates")]
    NotUnipotent,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A failed axiom, with the offending arguments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub detail: String,
}

impl Violation {
    fn new(axiom: &str, detail: String) -> Self {
        Violation { axiom: axiom.into(), detail }
    }
}

fn summarize(v: &[Violation]) -> String {
    v.iter().map(|x| format!("{}: {}", x.axiom, x.detail)).collect::<Vec<_>>().join("; ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equivalence {
    Equivalent,
    NotEquivalent,
    /// The search space exceeds the configured bound.
    Undecided,
}

impl Equivalence {
    pub fn decided(self) -> Option<bool> {
        match self {
            Equivalence::Equivalent => Some(true),
            Equivalence::NotEquivalent => Some(false),
            Equivalence::Undecided => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liering::heisenberg;

    fn find(name: &str) -> LieCrossedModule {
        lie_zoo().into_iter().find(|(n, _)| n == name).unwrap().1
    }

    #[test]
    fn zoo_round_trips() {
        let zoo = lie_zoo();
        assert!(zoo.len() >= 10);
        for (name, y) in &zoo {
            assert!(y.check_axioms().is_empty(), "{name}: {:?}", y.check_axioms());
            let x = exp_crossed(y).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(x.check_axioms().is_empty(), "{name}");
            assert_eq!(&log_crossed(&x).unwrap(), y, "{name}");
            assert_eq!(exp_crossed(&log_crossed(&x).unwrap()).unwrap(), x, "{name}");
        }
    }

    #[test]
    fn conjugation_inside_heisenberg() {
        let g = FramedGroup::exp(&heisenberg(5, 1)).unwrap();
        let center: Vec<usize> = (0..5).map(|k| k).collect();
        let x = GroupCrossedModule::normal_inclusion(&g, &center).unwrap();
        assert!(x.check_axioms().is_empty());
        let y = log_crossed(&x).unwrap();
        assert_eq!(y.h.order(), 5);
        assert!(y.check_axioms().is_empty());
        let mut bad = x.clone();
        let whole = GroupCrossedModule::normal_inclusion(&g, &g.table.all()).unwrap();
        bad.eta = vec![(0..125).collect(); 125];
        bad.h = whole.h.clone();
        bad.mu = whole.mu.clone();
        bad.iota = whole.iota.clone();
        bad.g2 = whole.g2.clone();
        bad.alpha = whole.alpha.clone();
        assert!(bad.check_axioms().iter().any(|v| v.axiom == "(ii)"));
    }

    #[test]
    fn baer_sums_and_equivalence() {
        let y = find("heisenberg(5) onto (Z/5)^2");
        let s = y.split().unwrap();
        assert_eq!(y.baer_sum(&s).unwrap().equivalent(&y, 125), Equivalence::Equivalent);
        assert_eq!(s.equivalent(&y, 125), Equivalence::NotEquivalent);
        let x = exp_crossed(&y).unwrap();
        let xs = exp_crossed(&s).unwrap();
        let sum = x.baer_sum(&xs).unwrap();
        assert!(sum.check_axioms().is_empty());
        assert_eq!((&sum.g1, &sum.g2, &sum.alpha, &sum.module), (&x.g1, &x.g2, &x.alpha, &x.module));
        assert_eq!(sum.equivalent(&x, 125), Equivalence::Equivalent);
        assert_eq!(xs.equivalent(&x, 125), Equivalence::NotEquivalent);
        assert_eq!(x.equivalent(&x, 100), Equivalence::Undecided);
        // log of a sum against the sum of logs
        let xx = x.baer_sum(&x).unwrap();
        let yy = y.baer_sum(&y).unwrap();
        assert_eq!(log_crossed(&xx).unwrap().equivalent(&yy, 125), Equivalence::Equivalent);
        assert_eq!(xx.equivalent(&x, 125), Equivalence::NotEquivalent);
        assert_eq!(yy.equivalent(&y, 125), Equivalence::NotEquivalent);
    }

    #[test]
    fn inner_twist_is_equivalent() {
        let x = exp_crossed(&find("heisenberg(5) in itself")).unwrap();
        let h = &x.h.table;
        let conj = |g: usize| (0..h.order()).map(|y| h.conjugate(g, y)).collect::<Vec<usize>>();
        let h0 = (0..h.order()).find(|&g| conj(g).iter().enumerate().any(|(i, &y)| i != y)).unwrap();
        let theta = conj(h0);
        let inv: Vec<usize> = (0..h.order()).map(|y| h.conjugate(h.inv(h0), y)).collect();
        let mut t = x.clone();
        t.mu = (0..h.order()).map(|y| x.mu[inv[y]]).collect();
        t.eta = x.eta.iter().map(|a| (0..h.order()).map(|y| theta[a[inv[y]]]).collect()).collect();
        assert!(t.check_axioms().is_empty());
        assert_ne!((&t.mu, &t.eta), (&x.mu, &x.eta));
        assert_eq!(x.equivalent(&t, 125), Equivalence::Equivalent);
    }

    #[test]
    fn bound_refused_with_witness() {
        let y = LieCrossedModule::from_triple(&crate::triples::LieTriple::adjoint(heisenberg(3, 1)));
        match exp_crossed(&y) {
            Err(CrossedError::Bound { c: 2, d: 2, p: 3, witness }) => assert!(witness.contains("gamma_2")),
            other => panic!("{other:?}"),
        }
    }
}
