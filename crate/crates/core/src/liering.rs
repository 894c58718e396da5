//! Finite nilpotent Lie rings over the `Z/p^e` chain, given by a basis with
//! element orders and structure constants.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::freelie::{lyndon_basis, project_with_alphabet, FreeAssoc, LyndonWord};
use crate::ring::{is_prime, AbelianPGroup, AbelianQuotient, HomMatrix, PLocalRat, Subgroup, SubgroupBasis};

pub type LieElement = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotPrime { p: u64 },
    Shape { detail: String },
    Antisymmetry { i: String, j: String, k: String },
    Alternating { i: String, k: String },
    OrderCompatibility { i: String, j: String, k: String },
    Jacobi { i: String, j: String, k: String },
    NotNilpotent,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPrime { p } => write!(f, "{p} is not prime"),
            Violation::Shape { detail } => write!(f, "shape: {detail}"),
            Violation::Antisymmetry { i, j, k } => {
                write!(f, "antisymmetry fails at ({j},{i}) in coordinate {k}")
            }
            Violation::Alternating { i, k } => write!(f, "[{i},{i}] has nonzero {k} coordinate"),
            Violation::OrderCompatibility { i, j, k } => {
                write!(f, "order compatibility fails for [{i},{j}] in coordinate {k}")
            }
            Violation::Jacobi { i, j, k } => write!(f, "Jacobi identity fails on ({i},{j},{k})"),
            Violation::NotNilpotent => write!(f, "lower central series does not reach 0"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("invalid Lie ring: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("subset is not an ideal")]
    NotIdeal,
    #[error("not nilpotent")]
    NotNilpotent,
    #[error("map is not a Lie ring homomorphism: {0}")]
    NotHomomorphism(String),
}

/// A finite Lie ring on `Z/p^{e_1} b_1 + ... + Z/p^{e_r} b_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NilLieRing {
    pub p: u64,
    pub labels: Vec<String>,
    pub module: AbelianPGroup,
    /// `consts[i][j][k]` is the `b_k` coordinate of `[b_i, b_j]`.
    consts: Vec<Vec<Vec<u64>>>,
}

impl NilLieRing {
    /// Raw constructor: constants are taken as given and reduced mod the
    /// target orders. Use [`validate`](Self::validate) before relying on it.
    pub fn from_constants(
        p: u64,
        labels: Vec<String>,
        exps: Vec<u32>,
        consts: Vec<Vec<Vec<u64>>>,
    ) -> Self {
        let module = AbelianPGroup::new(p, exps);
        let mut consts = consts;
        for row in consts.iter_mut() {
            for v in row.iter_mut() {
                module.reduce(v);
            }
        }
        NilLieRing { p, labels, module, consts }
    }

    /// Build from the brackets `[b_i, b_j]` with `i < j` (or any order);
    /// the opposite order is filled in by antisymmetry.
    pub fn from_brackets(
        p: u64,
        labels: Vec<String>,
        exps: Vec<u32>,
        brackets: &[(usize, usize, Vec<i128>)],
    ) -> Result<Self, LieError> {
        let r = exps.len();
        let module = AbelianPGroup::new(p, exps.clone());
        let mut consts = vec![vec![vec![0u64; r]; r]; r];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= r || j >= r || v.len() != r {
                return Err(LieError::Invalid(vec![Violation::Shape {
                    detail: format!("bracket ({i},{j}) out of range"),
                }]));
            }
            let pos = module.reduce_signed(v);
            let neg = module.neg(&pos);
            consts[i][j] = pos;
            consts[j][i] = neg;
        }
        let l = NilLieRing { p, labels, module, consts };
        l.check()?;
        Ok(l)
    }

    pub fn check(&self) -> Result<(), LieError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(LieError::Invalid(v))
        }
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn exps(&self) -> &[u32] {
        &self.module.exps
    }

    pub fn order(&self) -> u64 {
        self.module.order()
    }

    pub fn constant(&self, i: usize, j: usize) -> &[u64] {
        &self.consts[i][j]
    }

    pub fn constants(&self) -> &Vec<Vec<Vec<u64>>> {
        &self.consts
    }

    pub fn zero(&self) -> LieElement {
        self.module.zero()
    }

    pub fn basis(&self, i: usize) -> LieElement {
        self.module.unit(i)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> LieElement {
        self.module.add(a, b)
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> LieElement {
        self.module.sub(a, b)
    }

    pub fn neg(&self, a: &[u64]) -> LieElement {
        self.module.neg(a)
    }

    pub fn scale(&self, a: &[u64], k: i128) -> LieElement {
        self.module.scale(a, k)
    }

    pub fn bracket(&self, u: &[u64], v: &[u64]) -> LieElement {
        let r = self.rank();
        let mut acc = vec![0u128; r];
        for i in 0..r {
            if u[i] == 0 {
                continue;
            }
            for j in 0..r {
                if v[j] == 0 {
                    continue;
                }
                let uv = u[i] as u128 * v[j] as u128;
                for (k, &c) in self.consts[i][j].iter().enumerate() {
                    if c != 0 {
                        let m = self.module.modulus(k) as u128;
                        acc[k] = (acc[k] + uv % m * c as u128) % m;
                    }
                }
            }
        }
        acc.into_iter().map(|x| x as u64).collect()
    }

    /// All invariants; empty when the ring is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !is_prime(self.p) {
            out.push(Violation::NotPrime { p: self.p });
            return out;
        }
        let r = self.rank();
        if self.labels.len() != r
            || self.consts.len() != r
            || self.consts.iter().any(|row| row.len() != r || row.iter().any(|v| v.len() != r))
        {
            out.push(Violation::Shape { detail: "labels/constants do not match the rank".into() });
            return out;
        }
        let lab = |i: usize| self.labels[i].clone();
        for i in 0..r {
            for k in 0..r {
                if self.consts[i][i][k] != 0 {
                    out.push(Violation::Alternating { i: lab(i), k: lab(k) });
                }
            }
            for j in 0..r {
                for k in 0..r {
                    let m = self.module.modulus(k);
                    if i < j && (self.consts[i][j][k] + self.consts[j][i][k]) % m != 0 {
                        out.push(Violation::Antisymmetry { i: lab(i), j: lab(j), k: lab(k) });
                    }
                    let e = self.module.exps[i].min(self.module.exps[j]);
                    let t = self.consts[i][j][k] as u128 * crate::ring::pow(self.p, e) as u128;
                    if t % m as u128 != 0 {
                        out.push(Violation::OrderCompatibility { i: lab(i), j: lab(j), k: lab(k) });
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let s = self.add(
                        &self.add(&self.bracket(&a, &self.bracket(&b, &c)), &self.bracket(&b, &self.bracket(&c, &a))),
                        &self.bracket(&c, &self.bracket(&a, &b)),
                    );
                    if !self.module.is_zero(&s) {
                        out.push(Violation::Jacobi { i: lab(i), j: lab(j), k: lab(k) });
                    }
                }
            }
        }
        if out.is_empty() && self.lower_central_series().is_err() {
            out.push(Violation::NotNilpotent);
        }
        out
    }

    pub fn span(&self, gens: &[LieElement]) -> Subgroup {
        Subgroup::new(&self.module, gens)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::whole(&self.module)
    }

    /// `[A, B]` for additive subgroups.
    pub fn commutator(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let ga = a.generators();
        let gb = b.generators();
        let mut gens = Vec::new();
        for x in &ga {
            for y in &gb {
                gens.push(self.bracket(x, y));
            }
        }
        self.span(&gens)
    }

    /// `gamma_1 = L`, `gamma_{i+1} = [gamma_i, L]`, ending with the zero
    /// subgroup.
    pub fn lower_central_series(&self) -> Result<Vec<Subgroup>, LieError> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        let bound: u32 = self.module.exps.iter().sum::<u32>() + 1;
        for _ in 0..=bound {
            let last = series.last().unwrap();
            if last.is_zero() {
                return Ok(series);
            }
            let next = self.commutator(last, &whole);
            if next == *last {
                return Err(LieError::NotNilpotent);
            }
            series.push(next);
        }
        Err(LieError::NotNilpotent)
    }

    pub fn nilpotency_class(&self) -> Result<usize, LieError> {
        Ok(self.lower_central_series()?.len() - 1)
    }

    pub fn ideal_closure(&self, gens: &[LieElement]) -> Subgroup {
        let mut cur = self.span(gens);
        loop {
            let mut g = cur.generators();
            let old = g.len();
            let basis: Vec<LieElement> = (0..self.rank()).map(|i| self.basis(i)).collect();
            for x in cur.generators() {
                for b in &basis {
                    g.push(self.bracket(x.as_slice(), b));
                }
            }
            let next = self.span(&g);
            if next == cur || g.len() == old {
                return next;
            }
            cur = next;
        }
    }

    pub fn subring_closure(&self, gens: &[LieElement]) -> Subgroup {
        let mut cur = self.span(gens);
        loop {
            let cg = cur.generators();
            let mut g = cg.clone();
            for x in &cg {
                for y in &cg {
                    g.push(self.bracket(x, y));
                }
            }
            let next = self.span(&g);
            if next == cur {
                return next;
            }
            cur = next;
        }
    }

    pub fn is_subring(&self, s: &Subgroup) -> bool {
        let g = s.generators();
        g.iter().all(|x| g.iter().all(|y| s.contains(&self.bracket(x, y))))
    }

    pub fn is_ideal(&self, s: &Subgroup) -> bool {
        let g = s.generators();
        g.iter().all(|x| (0..self.rank()).all(|j| s.contains(&self.bracket(x, &self.basis(j)))))
    }

    /// `L / I` with the projection.
    pub fn quotient_ring(&self, ideal: &Subgroup) -> Result<(NilLieRing, AbelianQuotient), LieError> {
        if !self.is_ideal(ideal) {
            return Err(LieError::NotIdeal);
        }
        let q = AbelianQuotient::new(&self.module, &ideal.generators());
        let n = q.quotient.rank();
        let lifts = q.lifts().to_vec();
        let consts: Vec<Vec<Vec<u64>>> = (0..n)
            .map(|i| (0..n).map(|j| q.project(&self.bracket(&lifts[i], &lifts[j]))).collect())
            .collect();
        let labels = (0..n).map(|i| format!("u{}", i + 1)).collect();
        let ring = NilLieRing::from_constants(self.p, labels, q.quotient.exps.clone(), consts);
        Ok((ring, q))
    }

    /// A subring as a Lie ring in its own right, with the basis used.
    pub fn subring_ring(&self, s: &Subgroup) -> Result<(NilLieRing, SubgroupBasis), LieError> {
        if !self.is_subring(s) {
            return Err(LieError::NotHomomorphism("not a subring".into()));
        }
        let b = SubgroupBasis::new(&self.module, &s.generators());
        let n = b.basis.len();
        let consts = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| b.coordinates(&self.bracket(&b.basis[i], &b.basis[j])).expect("closed"))
                    .collect()
            })
            .collect();
        let labels = (0..n).map(|i| format!("s{}", i + 1)).collect();
        Ok((NilLieRing::from_constants(self.p, labels, b.shape.exps.clone(), consts), b))
    }

    pub fn direct_sum(&self, other: &NilLieRing) -> NilLieRing {
        assert_eq!(self.p, other.p);
        let r1 = self.rank();
        let r = r1 + other.rank();
        let mut consts = vec![vec![vec![0u64; r]; r]; r];
        for i in 0..r1 {
            for j in 0..r1 {
                consts[i][j][..r1].copy_from_slice(&self.consts[i][j]);
            }
        }
        for i in 0..other.rank() {
            for j in 0..other.rank() {
                consts[r1 + i][r1 + j][r1..].copy_from_slice(&other.consts[i][j]);
            }
        }
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("{l}_1")).collect();
        labels.extend(other.labels.iter().map(|l| format!("{l}_2")));
        NilLieRing::from_constants(self.p, labels, self.module.direct_sum(&other.module).exps, consts)
    }

    pub fn elements(&self) -> impl Iterator<Item = LieElement> + '_ {
        self.module.elements()
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().all(|r| r.iter().all(|v| v.iter().all(|&x| x == 0)))
    }

    /// Same ring with different labels.
    pub fn relabel(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.rank());
        self.labels = labels;
        self
    }
}

/// A Lie ring homomorphism given on basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieHom {
    pub map: HomMatrix,
}

impl LieHom {
    pub fn new(source: &NilLieRing, target: &NilLieRing, images: &[LieElement]) -> Result<Self, LieError> {
        let cols: Vec<Vec<u64>> = images.to_vec();
        if cols.len() != source.rank() {
            return Err(LieError::NotHomomorphism("wrong number of images".into()));
        }
        let entries = (0..target.rank()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let map = HomMatrix::new(source.module.clone(), target.module.clone(), entries)
            .map_err(|e| LieError::NotHomomorphism(e.to_string()))?;
        let h = LieHom { map };
        for i in 0..source.rank() {
            for j in i + 1..source.rank() {
                let lhs = h.apply(&source.bracket(&source.basis(i), &source.basis(j)));
                let rhs = target.bracket(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(LieError::NotHomomorphism(format!(
                        "[{},{}] not preserved",
                        source.labels[i], source.labels[j]
                    )));
                }
            }
        }
        Ok(h)
    }

    pub fn identity(l: &NilLieRing) -> Self {
        LieHom { map: HomMatrix::identity(l.module.clone()) }
    }

    pub fn apply(&self, a: &[u64]) -> LieElement {
        self.map.apply(a)
    }

    pub fn compose(&self, inner: &LieHom) -> LieHom {
        LieHom { map: self.map.compose(&inner.map) }
    }
}

pub fn abelian(p: u64, exps: Vec<u32>) -> NilLieRing {
    let r = exps.len();
    let labels = default_labels(r);
    NilLieRing::from_constants(p, labels, exps, vec![vec![vec![0; r]; r]; r])
}

/// `x, y, z` with `[x, y] = z`, all of order `p^e`.
pub fn heisenberg(p: u64, e: u32) -> NilLieRing {
    NilLieRing::from_brackets(p, vec!["x".into(), "y".into(), "z".into()], vec![e; 3], &[(0, 1, vec![0, 0, 1])])
        .expect("heisenberg is valid")
}

pub fn default_labels(r: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if r <= NAMES.len() {
        NAMES[..r].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=r).map(|i| format!("b{i}")).collect()
    }
}

/// The free nilpotent Lie ring of class `c` on `n` generators, tensored
/// down to `Z/p^e`, on the Lyndon basis.
pub fn free_nilpotent(n: usize, c: usize, p: u64, e: u32) -> NilLieRing {
    let basis = lyndon_basis(n, c);
    let r = basis.len();
    let idx = |w: &LyndonWord| basis.iter().position(|b| b.word == w.word).unwrap();
    let expansions: Vec<FreeAssoc<PLocalRat>> = basis.iter().map(|b| b.bracketing.expand(c)).collect();
    let module = AbelianPGroup::new(p, vec![e; r]);
    let mut consts = vec![vec![vec![0u64; r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            if basis[i].weight() + basis[j].weight() > c {
                continue;
            }
            let b = expansions[i].bracket(&expansions[j]);
            let coords = project_with_alphabet(&b, n, c).expect("bracket of Lie elements");
            let mut v = vec![0i128; r];
            for (w, q) in coords {
                assert!(q.is_integer());
                v[idx(&w)] = q.to_integer();
            }
            consts[i][j] = module.reduce_signed(&v);
        }
    }
    let labels = basis
        .iter()
        .map(|b| if b.weight() == 1 { crate::freelie::letter_name(b.word[0], n) } else { b.bracketing.display(n) })
        .collect();
    NilLieRing::from_constants(p, labels, vec![e; r], consts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_basics() {
        let h = heisenberg(5, 1);
        assert!(h.validate().is_empty());
        assert_eq!(h.bracket(&[1, 0, 0], &[0, 1, 0]), vec![0, 0, 1]);
        assert_eq!(h.bracket(&[1, 1, 0], &[1, 0, 0]), vec![0, 0, 4]);
        assert_eq!(h.nilpotency_class().unwrap(), 2);
        let s = h.lower_central_series().unwrap();
        assert_eq!(s[1], h.span(&[vec![0, 0, 1]]));
    }

    #[test]
    fn antisymmetry_violation_named() {
        let mut c = vec![vec![vec![0u64; 3]; 3]; 3];
        c[0][1] = vec![0, 0, 1];
        c[1][0] = vec![0, 0, 1];
        let bad = NilLieRing::from_constants(5, default_labels(3), vec![1; 3], c);
        let v = bad.validate();
        assert!(matches!(&v[0], Violation::Antisymmetry { i, j, .. } if i == "x" && j == "y"));
    }

    #[test]
    fn closures_and_quotients() {
        let h = heisenberg(5, 1);
        assert_eq!(h.ideal_closure(&[vec![0, 0, 1]]), h.span(&[vec![0, 0, 1]]));
        assert_eq!(h.ideal_closure(&[vec![1, 0, 0]]), h.span(&[vec![1, 0, 0], vec![0, 0, 1]]));
        let (q, _) = h.quotient_ring(&h.span(&[vec![0, 0, 1]])).unwrap();
        assert!(q.is_abelian());
        assert_eq!(q.order(), 25);
        assert!(h.quotient_ring(&h.span(&[vec![1, 0, 0]])).is_err());
    }

    #[test]
    fn free_nilpotent_small() {
        let f = free_nilpotent(2, 2, 5, 1);
        assert_eq!(f.constants(), heisenberg(5, 1).constants());
        let f3 = free_nilpotent(2, 3, 5, 1);
        assert!(f3.validate().is_empty());
        assert_eq!(f3.nilpotency_class().unwrap(), 3);
        assert_eq!(f3.order(), 5u64.pow(5));
    }
}
