//! Module triples on both sides of the correspondence, their morphisms, and
//! the functors `Exp` and `Log` between them.

use std::borrow::Cow;

use serde::Serialize;
use thiserror::Error;

use crate::bchgroup::{log_cayley, recover_lie, CayleyGroup, GroupError, LazardGroup};
use crate::liering::{LieElement, LieError, LieHom, NilLieRing};
use crate::ring::{reduce_local, AbelianPGroup, HomMatrix, PLocalRat, RingError, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TripleError {
    #[error("outside Tpl^{{c,d}} with c,d < p: class {class}, action length {length}, p = {p}")]
    OutsideRange { class: usize, length: usize, p: u64 },
    #[error("action not unipotent")]
    NotUnipotent,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("morphism violation at group element {element}, module basis vector {module_index}")]
    Morphism { element: usize, module_index: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `(L, M, psi)`; `psi[i]` is the action of basis element `i` on `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieTriple {
    pub ring: NilLieRing,
    pub module: AbelianPGroup,
    pub psi: Vec<HomMatrix>,
}

impl LieTriple {
    pub fn new(ring: NilLieRing, module: AbelianPGroup, psi: Vec<HomMatrix>) -> Result<Self, TripleError> {
        let t = LieTriple { ring, module, psi };
        t.validate()?;
        Ok(t)
    }

    pub fn trivial(ring: NilLieRing, module: AbelianPGroup) -> Self {
        let psi = (0..ring.rank()).map(|_| HomMatrix::zero(module.clone(), module.clone())).collect();
        LieTriple { ring, module, psi }
    }

    /// `L` acting on itself by `ad`.
    pub fn adjoint(ring: NilLieRing) -> Self {
        let m = ring.module.clone();
        let psi = (0..ring.rank())
            .map(|i| {
                let cols: Vec<Vec<u64>> = (0..ring.rank()).map(|j| ring.bracket(&ring.basis(i), &ring.basis(j))).collect();
                let entries = (0..ring.rank()).map(|k| cols.iter().map(|c| c[k]).collect()).collect();
                HomMatrix { source: m.clone(), target: m.clone(), entries }
            })
            .collect();
        LieTriple { ring, module: m, psi }
    }

    pub fn validate(&self) -> Result<(), TripleError> {
        let r = self.ring.rank();
        self.ring.check()?;
        if self.psi.len() != r {
            return Err(TripleError::InvalidAction(format!("expected {r} matrices")));
        }
        for (i, a) in self.psi.iter().enumerate() {
            if a.source != self.module || a.target != self.module {
                return Err(TripleError::InvalidAction(format!("matrix {} has the wrong shape", self.ring.labels[i])));
            }
            if !a.scale(crate::ring::pow(self.ring.p, self.ring.exps()[i]) as i128).is_zero() {
                return Err(TripleError::InvalidAction(format!(
                    "order of {} does not kill its action",
                    self.ring.labels[i]
                )));
            }
        }
        for i in 0..r {
            for j in i + 1..r {
                let lhs = self.psi_of(&self.ring.bracket(&self.ring.basis(i), &self.ring.basis(j)));
                let rhs = self.psi[i].compose(&self.psi[j]).sub(&self.psi[j].compose(&self.psi[i]));
                if lhs != rhs {
                    return Err(TripleError::InvalidAction(format!(
                        "bracket compatibility fails on ({},{})",
                        self.ring.labels[i], self.ring.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn psi_of(&self, a: &[u64]) -> HomMatrix {
        let mut acc = HomMatrix::zero(self.module.clone(), self.module.clone());
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.psi[i].scale(c as i128));
            }
        }
        acc
    }

    /// `M = M_0 > [M, L] > [M, L, L] > ...`, ending with 0.
    pub fn chain(&self) -> Result<Vec<Subgroup>, TripleError> {
        let step = |s: &Subgroup| {
            let mut gens = Vec::new();
            for m in s.generators() {
                for a in &self.psi {
                    gens.push(a.apply(&m));
                }
            }
            Subgroup::new(&self.module, &gens)
        };
        module_chain(&self.module, step)
    }

    pub fn action_length(&self) -> Result<usize, TripleError> {
        Ok(self.chain()?.len() - 1)
    }

    pub fn class(&self) -> Result<usize, TripleError> {
        Ok(self.ring.nilpotency_class()?)
    }
}

fn module_chain(module: &AbelianPGroup, step: impl Fn(&Subgroup) -> Subgroup) -> Result<Vec<Subgroup>, TripleError> {
    let mut chain = vec![Subgroup::whole(module)];
    loop {
        let last = chain.last().unwrap();
        if last.is_zero() {
            return Ok(chain);
        }
        let next = step(last);
        if next == *last {
            return Err(TripleError::NotUnipotent);
        }
        chain.push(next);
    }
}

/// The group of a group triple: either `exp(L)` in its coordinate frame,
/// or an explicit table.
#[derive(Clone, Debug)]
pub enum TripleGroup {
    Lazard(LazardGroup),
    Cayley(CayleyGroup),
}

impl TripleGroup {
    pub fn p(&self) -> u64 {
        match self {
            TripleGroup::Lazard(g) => g.p(),
            TripleGroup::Cayley(g) => g.p,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            TripleGroup::Lazard(g) => g.order(),
            TripleGroup::Cayley(g) => g.order(),
        }
    }

    pub fn cayley(&self) -> Cow<'_, CayleyGroup> {
        match self {
            TripleGroup::Lazard(g) => Cow::Owned(g.to_cayley()),
            TripleGroup::Cayley(g) => Cow::Borrowed(g),
        }
    }

    /// Generators used for validation and chains.
    pub fn generators(&self) -> Vec<usize> {
        match self {
            TripleGroup::Lazard(g) => (0..g.ring.rank()).map(|i| g.index_of(&g.ring.basis(i))).collect(),
            TripleGroup::Cayley(g) => g.generating_set(),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            TripleGroup::Lazard(g) => g.index_of(&g.g_mul(&g.element(a), &g.element(b))),
            TripleGroup::Cayley(g) => g.mul(a, b),
        }
    }

    pub fn identity(&self) -> usize {
        match self {
            TripleGroup::Lazard(_) => 0,
            TripleGroup::Cayley(g) => g.identity(),
        }
    }

    pub fn class(&self) -> usize {
        match self {
            TripleGroup::Lazard(g) => g.class,
            TripleGroup::Cayley(g) => g.nilpotency_class(),
        }
    }
}

/// `(G, M, phi)` with `phi` materialized on every element.
#[derive(Clone, Debug)]
pub struct GroupTriple {
    pub group: TripleGroup,
    pub module: AbelianPGroup,
    pub phi: Vec<HomMatrix>,
}

impl PartialEq for GroupTriple {
    fn eq(&self, other: &Self) -> bool {
        let same_group = match (&self.group, &other.group) {
            (TripleGroup::Lazard(a), TripleGroup::Lazard(b)) => a.ring == b.ring,
            (TripleGroup::Cayley(a), TripleGroup::Cayley(b)) => a == b,
            _ => false,
        };
        same_group && self.module == other.module && self.phi == other.phi
    }
}

impl GroupTriple {
    pub fn new(group: TripleGroup, module: AbelianPGroup, phi: Vec<HomMatrix>) -> Result<Self, TripleError> {
        let t = GroupTriple { group, module, phi };
        t.validate()?;
        Ok(t)
    }

    pub fn trivial(group: TripleGroup, module: AbelianPGroup) -> Self {
        let phi = vec![HomMatrix::identity(module.clone()); group.order()];
        GroupTriple { group, module, phi }
    }

    /// Extend the action from generators (given as element indices) to the
    /// whole group; fails if the assignment is not a homomorphism.
    pub fn from_generators(
        group: TripleGroup,
        module: AbelianPGroup,
        gens: &[(usize, HomMatrix)],
    ) -> Result<Self, TripleError> {
        let n = group.order();
        let mut phi: Vec<Option<HomMatrix>> = vec![None; n];
        phi[group.identity()] = Some(HomMatrix::identity(module.clone()));
        let mut queue = std::collections::VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for (s, a) in gens {
                let y = group.mul(x, *s);
                let v = phi[x].as_ref().unwrap().compose(a);
                match &phi[y] {
                    None => {
                        phi[y] = Some(v);
                        queue.push_back(y);
                    }
                    Some(w) if *w != v => {
                        return Err(TripleError::InvalidAction("generator images are not a homomorphism".into()))
                    }
                    _ => {}
                }
            }
        }
        if phi.iter().any(|x| x.is_none()) {
            return Err(TripleError::InvalidAction("generators do not generate the group".into()));
        }
        GroupTriple::new(group, module, phi.into_iter().map(|x| x.unwrap()).collect())
    }

    pub fn validate(&self) -> Result<(), TripleError> {
        let n = self.group.order();
        if self.phi.len() != n {
            return Err(TripleError::InvalidAction(format!("expected {n} matrices")));
        }
        if self.phi[self.group.identity()] != HomMatrix::identity(self.module.clone()) {
            return Err(TripleError::InvalidAction("identity acts nontrivially".into()));
        }
        let gens = self.group.generators();
        for g in 0..n {
            for &s in &gens {
                if self.phi[self.group.mul(g, s)] != self.phi[g].compose(&self.phi[s]) {
                    return Err(TripleError::InvalidAction(format!("phi is not multiplicative at ({g},{s})")));
                }
            }
        }
        Ok(())
    }

    pub fn chain(&self) -> Result<Vec<Subgroup>, TripleError> {
        let id = HomMatrix::identity(self.module.clone());
        let diffs: Vec<HomMatrix> = self.phi.iter().map(|a| a.sub(&id)).filter(|a| !a.is_zero()).collect();
        let step = |s: &Subgroup| {
            let mut gens = Vec::new();
            for m in s.generators() {
                for a in &diffs {
                    gens.push(a.apply(&m));
                }
            }
            Subgroup::new(&self.module, &gens)
        };
        module_chain(&self.module, step)
    }

    pub fn action_length(&self) -> Result<usize, TripleError> {
        Ok(self.chain()?.len() - 1)
    }

    pub fn class(&self) -> usize {
        self.group.class()
    }
}

fn coefficient(q: PLocalRat, module: &AbelianPGroup) -> Result<i128, RingError> {
    let e = module.max_exp().max(1);
    Ok(reduce_local(&q, module.p, e)?.value() as i128)
}

/// `sum_{k < p} a^k / k!`.
pub fn matrix_exp(a: &HomMatrix, p: u64) -> Result<HomMatrix, RingError> {
    let module = &a.source;
    let mut acc = HomMatrix::identity(module.clone());
    let mut power = HomMatrix::identity(module.clone());
    let mut fact: i128 = 1;
    for k in 1..p as i128 {
        power = power.compose(a);
        if power.is_zero() {
            break;
        }
        fact *= k;
        acc = acc.add(&power.scale(coefficient(PLocalRat::new(1, fact), module)?));
    }
    Ok(acc)
}

/// `sum_{k < p} (-1)^{k+1} (g - 1)^k / k`.
pub fn matrix_log(g: &HomMatrix, p: u64) -> Result<HomMatrix, RingError> {
    let module = &g.source;
    let a = g.sub(&HomMatrix::identity(module.clone()));
    let mut acc = HomMatrix::zero(module.clone(), module.clone());
    let mut power = HomMatrix::identity(module.clone());
    for k in 1..p as i128 {
        power = power.compose(&a);
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&power.scale(coefficient(PLocalRat::new(sign, k), module)?));
    }
    Ok(acc)
}

fn check_range(class: usize, length: usize, p: u64) -> Result<(), TripleError> {
    if class >= p as usize || length >= p as usize {
        return Err(TripleError::OutsideRange { class, length, p });
    }
    Ok(())
}

pub fn exp_triple(t: &LieTriple) -> Result<GroupTriple, TripleError> {
    let class = t.class()?;
    let d = t.action_length()?;
    let p = t.ring.p;
    check_range(class, d, p)?;
    let g = LazardGroup::new(t.ring.clone())?;
    let phi = t
        .ring
        .elements()
        .map(|a| matrix_exp(&t.psi_of(&a), p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupTriple { group: TripleGroup::Lazard(g), module: t.module.clone(), phi })
}

pub fn log_triple(t: &GroupTriple) -> Result<LieTriple, TripleError> {
    let p = t.group.p();
    let class = t.class();
    let d = t.action_length()?;
    check_range(class, d, p)?;
    let (ring, basis_index) = match &t.group {
        TripleGroup::Lazard(g) => {
            let ring = recover_lie(g)?;
            let idx = (0..ring.rank()).map(|i| g.index_of(&ring.basis(i))).collect::<Vec<_>>();
            (ring, idx)
        }
        TripleGroup::Cayley(g) => {
            let (ring, coords) = log_cayley(g)?;
            let idx = (0..ring.rank())
                .map(|i| coords.iter().position(|c| *c == ring.basis(i)).unwrap())
                .collect::<Vec<_>>();
            (ring, idx)
        }
    };
    let psi = basis_index.iter().map(|&x| matrix_log(&t.phi[x], p)).collect::<Result<Vec<_>, _>>()?;
    Ok(LieTriple::new(ring, t.module.clone(), psi)?)
}

/// `(alpha, beta): T1 -> T2` with `alpha: L2 -> L1` and `beta: M1 -> M2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieMorphism {
    pub alpha: LieHom,
    pub beta: HomMatrix,
}

/// Group version; `alpha[g2]` is the image of element `g2` in `G1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMorphism {
    pub alpha: Vec<usize>,
    pub beta: HomMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismWitness {
    pub element: LieElement,
    pub module_index: usize,
}

impl LieMorphism {
    pub fn identity(t: &LieTriple) -> Self {
        LieMorphism { alpha: LieHom::identity(&t.ring), beta: HomMatrix::identity(t.module.clone()) }
    }

    /// `self: T1 -> T2`, `next: T2 -> T3`.
    pub fn then(&self, next: &LieMorphism) -> LieMorphism {
        LieMorphism { alpha: self.alpha.compose(&next.alpha), beta: next.beta.compose(&self.beta) }
    }
}

impl GroupMorphism {
    pub fn identity(t: &GroupTriple) -> Self {
        GroupMorphism { alpha: (0..t.group.order()).collect(), beta: HomMatrix::identity(t.module.clone()) }
    }

    pub fn then(&self, next: &GroupMorphism) -> GroupMorphism {
        GroupMorphism {
            alpha: next.alpha.iter().map(|&g| self.alpha[g]).collect(),
            beta: next.beta.compose(&self.beta),
        }
    }
}

/// `beta(psi1(alpha(a)) m) = psi2(a) beta(m)` on basis elements.
pub fn lie_morphism_check(m: &LieMorphism, t1: &LieTriple, t2: &LieTriple) -> Result<(), MorphismWitness> {
    for i in 0..t2.ring.rank() {
        let a = t2.ring.basis(i);
        let lhs = m.beta.compose(&t1.psi_of(&m.alpha.apply(&a)));
        let rhs = t2.psi[i].compose(&m.beta);
        if lhs != rhs {
            let k = (0..t1.module.rank()).find(|&k| lhs.column(k) != rhs.column(k)).unwrap_or(0);
            return Err(MorphismWitness { element: a, module_index: k });
        }
    }
    Ok(())
}

/// Exhaustive over `g2` in `G2` and a basis of `M1`.
pub fn group_morphism_check(m: &GroupMorphism, t1: &GroupTriple, t2: &GroupTriple) -> Result<(), TripleError> {
    let n2 = t2.group.order();
    if m.alpha.len() != n2 {
        return Err(TripleError::InvalidAction("alpha has the wrong length".into()));
    }
    for a in 0..n2 {
        for b in t2.group.generators() {
            if m.alpha[t2.group.mul(a, b)] != t1.group.mul(m.alpha[a], m.alpha[b]) {
                return Err(TripleError::InvalidAction("alpha is not a homomorphism".into()));
            }
        }
    }
    for g2 in 0..n2 {
        let lhs = m.beta.compose(&t1.phi[m.alpha[g2]]);
        let rhs = t2.phi[g2].compose(&m.beta);
        if lhs != rhs {
            let k = (0..t1.module.rank()).find(|&k| lhs.column(k) != rhs.column(k)).unwrap_or(0);
            return Err(TripleError::Morphism { element: g2, module_index: k });
        }
    }
    Ok(())
}

/// `Exp(alpha, beta) = (exp alpha, beta)`; `exp alpha` is `alpha` on the
/// common coordinate sets.
pub fn exp_morphism(m: &LieMorphism, t1: &LieTriple, t2: &LieTriple) -> GroupMorphism {
    let alpha = t2.ring.elements().map(|a| t1.ring.module.index_of(&m.alpha.apply(&a))).collect();
    GroupMorphism { alpha, beta: m.beta.clone() }
}

/// Inverse of [`exp_morphism`] for triples in Lazard coordinate frames.
pub fn log_morphism(m: &GroupMorphism, t1: &GroupTriple, t2: &GroupTriple) -> Result<LieMorphism, TripleError> {
    let (TripleGroup::Lazard(g1), TripleGroup::Lazard(g2)) = (&t1.group, &t2.group) else {
        return Err(TripleError::InvalidAction("log_morphism needs coordinate frames".into()));
    };
    let images: Vec<LieElement> =
        (0..g2.ring.rank()).map(|i| g1.element(m.alpha[g2.index_of(&g2.ring.basis(i))])).collect();
    let alpha = LieHom::new(&g2.ring, &g1.ring, &images)?;
    Ok(LieMorphism { alpha, beta: m.beta.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liering::{abelian, heisenberg};

    fn jordan(p: u64) -> LieTriple {
        let l = abelian(p, vec![1]);
        let m = AbelianPGroup::new(p, vec![1, 1]);
        let a = HomMatrix::new(m.clone(), m.clone(), vec![vec![0, 1], vec![0, 0]]).unwrap();
        LieTriple::new(l, m, vec![a]).unwrap()
    }

    #[test]
    fn lengths() {
        let t = jordan(5);
        assert_eq!(t.action_length().unwrap(), 2);
        let triv = LieTriple::trivial(heisenberg(5, 1), AbelianPGroup::new(5, vec![1]));
        assert_eq!(triv.action_length().unwrap(), 1);
        let zero = LieTriple::trivial(heisenberg(5, 1), AbelianPGroup::new(5, vec![]));
        assert_eq!(zero.action_length().unwrap(), 0);
    }

    #[test]
    fn exp_of_nilpotent_matrix() {
        let l = abelian(5, vec![2]);
        let m = AbelianPGroup::new(5, vec![2, 2]);
        let a = HomMatrix::new(m.clone(), m.clone(), vec![vec![0, 1], vec![0, 0]]).unwrap();
        let t = LieTriple::new(l, m.clone(), vec![a.clone()]).unwrap();
        let g = exp_triple(&t).unwrap();
        assert_eq!(g.phi[1], HomMatrix::identity(m).add(&a));
        assert_eq!(log_triple(&g).unwrap(), t);
    }

    #[test]
    fn adjoint_round_trip() {
        let t = LieTriple::adjoint(heisenberg(5, 1));
        t.validate().unwrap();
        let g = exp_triple(&t).unwrap();
        g.validate().unwrap();
        assert_eq!(log_triple(&g).unwrap(), t);
    }

    #[test]
    fn morphism_witness() {
        let t = jordan(5);
        let bad = LieMorphism {
            alpha: LieHom::identity(&t.ring),
            beta: HomMatrix::new(t.module.clone(), t.module.clone(), vec![vec![1, 0], vec![0, 0]]).unwrap(),
        };
        assert!(lie_morphism_check(&bad, &t, &t).is_err());
        assert!(lie_morphism_check(&LieMorphism::identity(&t), &t, &t).is_ok());
    }
}
