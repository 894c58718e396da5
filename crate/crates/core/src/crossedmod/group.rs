use std::collections::VecDeque;

use crate::bchgroup::{log_cayley, CayleyGroup, LazardGroup, Quotient};
use crate::liering::{LieElement, NilLieRing};
use crate::ring::AbelianPGroup;

use super::{summarize, CrossedError, Equivalence, Violation};

/// A group table, optionally together with a Lie ring whose coordinate
/// order indexes the elements (as for `exp(L)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedGroup {
    pub table: CayleyGroup,
    pub frame: Option<NilLieRing>,
}

impl FramedGroup {
    pub fn plain(table: CayleyGroup) -> Self {
        FramedGroup { table, frame: None }
    }

    /// `exp(L)` on the coordinate set of `L`.
    pub fn exp(l: &NilLieRing) -> Result<Self, CrossedError> {
        let table = LazardGroup::new(l.clone())?.to_cayley();
        Ok(FramedGroup { table, frame: Some(l.clone()) })
    }

    /// The Lie ring and the Lie coordinates of every element.
    pub fn log(&self) -> Result<(NilLieRing, Vec<LieElement>), CrossedError> {
        match &self.frame {
            Some(l) => Ok((l.clone(), l.elements().collect())),
            None => Ok(log_cayley(&self.table)?),
        }
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }
}

/// The additive group of `M` as a table on its coordinate order.
pub fn abelian_table(m: &AbelianPGroup) -> CayleyGroup {
    let elems: Vec<Vec<u64>> = m.elements().collect();
    let n = elems.len();
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = m.index_of(&m.add(&elems[i], &elems[j])) as u32;
        }
    }
    CayleyGroup::from_table_unchecked(m.p, n, table)
}

/// `0 -> M -> H -> G1 -> G2 -> 1` with `G1` acting on `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCrossedModule {
    pub h: FramedGroup,
    pub g1: FramedGroup,
    pub g2: FramedGroup,
    pub mu: Vec<usize>,
    pub alpha: Vec<usize>,
    /// `eta[g][x]`: the image of `x` in `H` under `g` in `G1`.
    pub eta: Vec<Vec<usize>>,
    pub module: AbelianPGroup,
    /// `M` element (coordinate order) to `H` element.
    pub iota: Vec<usize>,
}

impl GroupCrossedModule {
    pub fn check_axioms(&self) -> Vec<Violation> {
        let (h, g1, g2) = (&self.h.table, &self.g1.table, &self.g2.table);
        let mut out = Vec::new();
        if self.mu.len() != h.order() || !h.is_homomorphism_to(g1, &self.mu) {
            out.push(Violation::new("mu is a homomorphism", "table check fails".into()));
        }
        if self.alpha.len() != g1.order() || !g1.is_homomorphism_to(g2, &self.alpha) {
            out.push(Violation::new("alpha is a homomorphism", "table check fails".into()));
        }
        if !out.is_empty() || self.eta.len() != g1.order() {
            if self.eta.len() != g1.order() {
                out.push(Violation::new("action", "one automorphism per element of G1 expected".into()));
            }
            return out;
        }
        let n = h.order();
        let mut bad_action = None;
        for (g, a) in self.eta.iter().enumerate() {
            let mut seen = vec![false; n];
            for &y in a {
                seen[y] = true;
            }
            if a.len() != n || seen.iter().any(|s| !s) || !h.is_homomorphism_to(h, a) {
                bad_action = Some(format!("eta({g}) is not an automorphism"));
                break;
            }
        }
        if bad_action.is_none() && self.eta[g1.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            bad_action = Some("the identity acts nontrivially".into());
        }
        if bad_action.is_none() {
            'hom: for g in 0..g1.order() {
                for s in g1.generating_set() {
                    let gs = g1.mul(g, s);
                    if (0..n).any(|x| self.eta[gs][x] != self.eta[g][self.eta[s][x]]) {
                        bad_action = Some(format!("eta is not a homomorphism at ({g}, {s})"));
                        break 'hom;
                    }
                }
            }
        }
        if let Some(d) = bad_action {
            out.push(Violation::new("action", d));
            return out;
        }
        'one: for g in 0..g1.order() {
            for x in 0..n {
                if self.mu[self.eta[g][x]] != g1.conjugate(g, self.mu[x]) {
                    out.push(Violation::new("(i)", format!("mu(eta({g}) {x}) != {g} mu({x}) {g}^-1")));
                    break 'one;
                }
            }
        }
        'two: for x in 0..n {
            let a = &self.eta[self.mu[x]];
            for y in 0..n {
                if a[y] != h.conjugate(x, y) {
                    out.push(Violation::new("(ii)", format!("eta(mu({x})) {y} != {x} {y} {x}^-1")));
                    break 'two;
                }
            }
        }
        let m = abelian_table(&self.module);
        let mut in_m = vec![false; n];
        for &y in &self.iota {
            in_m[y] = true;
        }
        if self.iota.len() != m.order() || !m.is_homomorphism_to(h, &self.iota) {
            out.push(Violation::new("kernel", "M -> H is not a homomorphism".into()));
        } else if in_m.iter().filter(|&&b| b).count() != m.order() {
            out.push(Violation::new("kernel", "M -> H is not injective".into()));
        } else if (0..n).any(|x| (self.mu[x] == g1.identity()) != in_m[x]) {
            out.push(Violation::new("kernel", "ker mu differs from M".into()));
        }
        let mut in_image = vec![false; g1.order()];
        for &y in &self.mu {
            in_image[y] = true;
        }
        if (0..g1.order()).any(|g| (self.alpha[g] == g2.identity()) != in_image[g]) {
            out.push(Violation::new("cokernel", "im mu differs from ker alpha".into()));
        }
        let mut hit = vec![false; g2.order()];
        for &y in &self.alpha {
            hit[y] = true;
        }
        if hit.iter().any(|b| !b) {
            out.push(Violation::new("cokernel", "alpha is not surjective".into()));
        }
        out
    }

    pub(crate) fn require_axioms(&self) -> Result<(), CrossedError> {
        let v = self.check_axioms();
        if v.is_empty() {
            Ok(())
        } else {
            Err(CrossedError::Axioms(summarize(&v)))
        }
    }

    fn iota_inverse(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.h.order()];
        for (k, &x) in self.iota.iter().enumerate() {
            inv[x] = Some(k);
        }
        inv
    }

    /// `module_action()[g][m]`: the action of `g` in `G1` on `M`.
    pub fn module_action(&self) -> Vec<Vec<usize>> {
        let inv = self.iota_inverse();
        self.eta
            .iter()
            .map(|a| self.iota.iter().map(|&x| inv[a[x]].expect("M is stable")).collect())
            .collect()
    }

    /// Least `d` with `[M, _d G1] = 1`, commutators `x^-1 eta(g)(x)`.
    pub fn action_length(&self) -> usize {
        self.length_chain().len() - 1
    }

    /// `M, [M, G1], [M, G1, G1], ...` down to the trivial subgroup.
    pub(crate) fn length_chain(&self) -> Vec<Vec<usize>> {
        let h = &self.h.table;
        let gens = self.g1.table.generating_set();
        let mut chain = vec![h.subgroup_closure(&self.iota)];
        while chain.last().unwrap().len() > 1 && chain.len() <= h.log_order() as usize + 1 {
            let s = chain.last().unwrap();
            let next: Vec<usize> =
                s.iter().flat_map(|&x| gens.iter().map(move |&g| h.mul(h.inv(x), self.eta[g][x]))).collect();
            chain.push(h.subgroup_closure(&next));
        }
        chain
    }

    // -- constructors --

    /// `N -> G -> G/N` by conjugation, `M = 1`.
    pub fn normal_inclusion(g: &FramedGroup, normal: &[usize]) -> Result<Self, CrossedError> {
        let t = &g.table;
        let (nt, emb) = t.subgroup_group(normal);
        let q = t.quotient_group(normal)?;
        let mut back = vec![usize::MAX; t.order()];
        for (i, &x) in emb.iter().enumerate() {
            back[x] = i;
        }
        let eta = (0..t.order()).map(|s| emb.iter().map(|&x| back[t.conjugate(s, x)]).collect()).collect();
        Ok(GroupCrossedModule {
            iota: vec![nt.identity()],
            h: FramedGroup::plain(nt),
            g1: g.clone(),
            g2: FramedGroup::plain(q.group),
            mu: emb,
            alpha: q.projection,
            eta,
            module: AbelianPGroup::new(t.p, vec![]),
        })
    }

    /// The split crossed module `M x ker(alpha) -> G1`, elements indexed
    /// `m * |N| + n`.
    pub fn split(&self) -> Result<Self, CrossedError> {
        let g1 = &self.g1.table;
        let n: Vec<usize> = (0..g1.order()).filter(|&g| self.alpha[g] == self.g2.table.identity()).collect();
        let (nt, emb) = g1.subgroup_group(&n);
        let mut back = vec![usize::MAX; g1.order()];
        for (i, &x) in emb.iter().enumerate() {
            back[x] = i;
        }
        let mt = abelian_table(&self.module);
        let h = mt.direct_product(&nt);
        let nn = nt.order();
        let act = self.module_action();
        let mu = (0..h.order()).map(|x| emb[x % nn]).collect();
        let eta = (0..g1.order())
            .map(|g| (0..h.order()).map(|x| act[g][x / nn] * nn + back[g1.conjugate(g, emb[x % nn])]).collect())
            .collect();
        Ok(GroupCrossedModule {
            iota: (0..mt.order()).map(|m| m * nn + nt.identity()).collect(),
            h: FramedGroup::plain(h),
            g1: self.g1.clone(),
            g2: self.g2.clone(),
            mu,
            alpha: self.alpha.clone(),
            eta,
            module: self.module.clone(),
        })
    }

    pub fn same_boundary(&self, other: &Self) -> Result<(), CrossedError> {
        let mismatch = |what: &str| Err(CrossedError::BoundaryMismatch(what.into()));
        if self.g1.table != other.g1.table || self.g2.table != other.g2.table {
            return mismatch("acting groups differ");
        }
        if self.alpha != other.alpha {
            return mismatch("cokernel maps differ");
        }
        if self.module != other.module || self.module_action() != other.module_action() {
            return mismatch("kernel modules differ");
        }
        Ok(())
    }

    /// Pullback over `G1` modulo the antidiagonal copy of `M`.
    pub fn baer_sum(&self, other: &Self) -> Result<Self, CrossedError> {
        self.same_boundary(other)?;
        let (h1, h2) = (&self.h.table, &other.h.table);
        let n2 = h2.order();
        let pairs: Vec<(usize, usize)> = (0..h1.order())
            .flat_map(|a| (0..n2).filter(move |&b| self.mu[a] == other.mu[b]).map(move |b| (a, b)))
            .collect();
        let mut index = vec![usize::MAX; h1.order() * n2];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            index[a * n2 + b] = i;
        }
        // the antidiagonal lies in ker mu x ker mu', which is central, so its
        // cosets are labelled directly without a table for the pullback
        let mneg: Vec<usize> = (0..self.module.order() as usize)
            .map(|k| self.module.index_of(&self.module.neg(&self.module.element_at(k))))
            .collect();
        let anti: Vec<(usize, usize)> = (0..self.iota.len()).map(|k| (self.iota[k], other.iota[mneg[k]])).collect();
        let mut projection = vec![usize::MAX; pairs.len()];
        let mut representatives = Vec::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if projection[i] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            representatives.push(i);
            for &(x, y) in &anti {
                projection[index[h1.mul(a, x) * n2 + h2.mul(b, y)]] = id;
            }
        }
        let m = representatives.len();
        let mut table = vec![0u32; m * m];
        for i in 0..m {
            let (a, b) = pairs[representatives[i]];
            for j in 0..m {
                let (c, d) = pairs[representatives[j]];
                table[i * m + j] = projection[index[h1.mul(a, c) * n2 + h2.mul(b, d)]] as u32;
            }
        }
        let q = Quotient { group: CayleyGroup::from_table_unchecked(h1.p, m, table), projection, representatives };
        let rep = |c: usize| pairs[q.representatives[c]];
        let mu = (0..q.group.order()).map(|c| self.mu[rep(c).0]).collect();
        let eta = (0..self.g1.order())
            .map(|g| {
                (0..q.group.order())
                    .map(|c| {
                        let (a, b) = rep(c);
                        q.projection[index[self.eta[g][a] * n2 + other.eta[g][b]]]
                    })
                    .collect()
            })
            .collect();
        let iota = self.iota.iter().map(|&x| q.projection[index[x * n2 + h2.identity()]]).collect();
        Ok(GroupCrossedModule {
            h: FramedGroup::plain(q.group),
            g1: self.g1.clone(),
            g2: self.g2.clone(),
            mu,
            alpha: self.alpha.clone(),
            eta,
            module: self.module.clone(),
            iota,
        })
    }

    /// Search for an isomorphism `f: H -> H'` with `mu' f = mu`,
    /// `f iota = iota'` and `f eta(g) = eta'(g) f`, trying generator images
    /// in the fibres of `mu'`. Undecided when `|H|` exceeds `bound`.
    pub fn equivalent(&self, other: &Self, bound: usize) -> Equivalence {
        if self.same_boundary(other).is_err() || self.h.order() != other.h.order() {
            return Equivalence::NotEquivalent;
        }
        if self.h.order() > bound {
            return Equivalence::Undecided;
        }
        let h = &self.h.table;
        let gens = h.generating_set();
        let fibres: Vec<Vec<usize>> = gens
            .iter()
            .map(|&s| (0..other.h.order()).filter(|&y| other.mu[y] == self.mu[s]).collect())
            .collect();
        if fibres.iter().any(|f| f.is_empty()) {
            return Equivalence::NotEquivalent;
        }
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.iter().zip(&fibres).map(|(&c, f)| f[c]).collect();
            if let Some(f) = self.extend(other, &gens, &images) {
                if self.is_equivalence(other, &f) {
                    return Equivalence::Equivalent;
                }
            }
            let mut k = choice.len();
            loop {
                if k == 0 {
                    return Equivalence::NotEquivalent;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < fibres[k].len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    }

    /// The homomorphism with the given generator images, if consistent.
    fn extend(&self, other: &Self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let (h, h2) = (&self.h.table, &other.h.table);
        let mut f = vec![usize::MAX; h.order()];
        f[h.identity()] = h2.identity();
        let mut queue = VecDeque::from([h.identity()]);
        while let Some(x) = queue.pop_front() {
            for (&s, &t) in gens.iter().zip(images) {
                let y = h.mul(x, s);
                let fy = h2.mul(f[x], t);
                if f[y] == usize::MAX {
                    f[y] = fy;
                    queue.push_back(y);
                } else if f[y] != fy {
                    return None;
                }
            }
        }
        Some(f)
    }

    fn is_equivalence(&self, other: &Self, f: &[usize]) -> bool {
        let mut seen = vec![false; f.len()];
        for &y in f {
            seen[y] = true;
        }
        seen.iter().all(|&b| b)
            && self.iota.iter().zip(&other.iota).all(|(&a, &b)| f[a] == b)
            && self.g1.table.generating_set().iter().all(|&g| {
                (0..f.len()).all(|x| f[self.eta[g][x]] == other.eta[g][f[x]])
            })
    }
}
