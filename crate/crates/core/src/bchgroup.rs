//! The group `exp(L)` on the coordinate set of a Lie ring, explicit finite
//! groups by multiplication table, and recovery of the Lie ring from group
//! operations alone.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::freelie::{bch_table, inverse_bch, BchTable, Bracketing, GroupWord, InverseBch};
use crate::liering::{LieElement, LieError, NilLieRing};
use crate::ring::{pow, reduce_local, AbelianPGroup, AbelianQuotient, PLocalRat, RingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("Lazard bound violated: class {class} is not below p = {p} (need c < p)")]
    LazardBound { class: usize, p: u64 },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group of order {order} is not a {p}-group")]
    NotPGroup { order: usize, p: u64 },
    #[error("recovery failed: {0}")]
    Recovery(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Evaluate a group word on two elements of a black-box group.
pub fn eval_word<T: Clone>(
    word: &GroupWord,
    a: &T,
    b: &T,
    identity: &T,
    mul: &impl Fn(&T, &T) -> T,
    inv: &impl Fn(&T) -> T,
    exponent: (u64, u32),
) -> Result<T, RingError> {
    let m = |x: &T, y: &T| Ok::<T, RingError>(mul(x, y));
    let i = |x: &T| Ok::<T, RingError>(inv(x));
    let pw = |x: &T, q: &PLocalRat| -> Result<T, RingError> {
        let n = reduce_local(q, exponent.0, exponent.1)?.value();
        Ok(power(x, n, identity, mul))
    };
    word.evaluate(&[a.clone(), b.clone()], &m, &i, &pw, identity.clone())
}

pub fn power<T: Clone>(x: &T, mut n: u64, identity: &T, mul: &impl Fn(&T, &T) -> T) -> T {
    let mut acc = identity.clone();
    let mut base = x.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        n >>= 1;
    }
    acc
}

/// `exp(L)`: the coordinate set of `L` with the truncated BCH product.
#[derive(Clone, Debug)]
pub struct LazardGroup {
    pub ring: NilLieRing,
    pub class: usize,
    table: BchTable,
    coeffs: Vec<i128>,
}

impl LazardGroup {
    pub fn new(ring: NilLieRing) -> Result<Self, GroupError> {
        ring.check()?;
        let class = ring.nilpotency_class()?;
        if class >= ring.p as usize {
            return Err(GroupError::LazardBound { class, p: ring.p });
        }
        let table = bch_table(class.max(1));
        let e = ring.module.max_exp().max(1);
        let coeffs = table
            .terms
            .iter()
            .map(|(_, q)| {
                reduce_local(q, ring.p, e)
                    .map(|x| x.value() as i128)
                    .map_err(|_| GroupError::LazardBound { class, p: ring.p })
            })
            .collect::<Result<_, _>>()?;
        Ok(LazardGroup { ring, class, table, coeffs })
    }

    pub fn p(&self) -> u64 {
        self.ring.p
    }

    pub fn order(&self) -> usize {
        self.ring.order() as usize
    }

    pub fn identity(&self) -> LieElement {
        self.ring.zero()
    }

    pub fn bch(&self) -> &BchTable {
        &self.table
    }

    pub fn g_mul(&self, a: &[u64], b: &[u64]) -> LieElement {
        let gens = [a.to_vec(), b.to_vec()];
        let mut memo: BTreeMap<Bracketing, LieElement> = BTreeMap::new();
        let mut acc = self.ring.zero();
        for ((w, _), &c) in self.table.terms.iter().zip(&self.coeffs) {
            if c == 0 {
                continue;
            }
            let v = eval_bracketing(&self.ring, &w.bracketing, &gens, &mut memo);
            acc = self.ring.add(&acc, &self.ring.scale(&v, c));
        }
        acc
    }

    pub fn g_inv(&self, a: &[u64]) -> LieElement {
        self.ring.neg(a)
    }

    pub fn g_pow(&self, a: &[u64], n: i128) -> LieElement {
        self.ring.scale(a, n)
    }

    pub fn commutator(&self, a: &[u64], b: &[u64]) -> LieElement {
        let ab = self.g_mul(a, b);
        let ab_ai = self.g_mul(&ab, &self.g_inv(a));
        self.g_mul(&ab_ai, &self.g_inv(b))
    }

    pub fn index_of(&self, a: &[u64]) -> usize {
        self.ring.module.index_of(a)
    }

    pub fn element(&self, i: usize) -> LieElement {
        self.ring.module.element_at(i)
    }

    /// Multiplication table, elements indexed by mixed-radix coordinates.
    pub fn to_cayley(&self) -> CayleyGroup {
        let n = self.order();
        let elems: Vec<LieElement> = (0..n).map(|i| self.element(i)).collect();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.index_of(&self.g_mul(&elems[i], &elems[j])) as u32;
            }
        }
        CayleyGroup::from_table_unchecked(self.p(), n, table)
    }
}

fn eval_bracketing(
    ring: &NilLieRing,
    b: &Bracketing,
    gens: &[LieElement; 2],
    memo: &mut BTreeMap<Bracketing, LieElement>,
) -> LieElement {
    if let Some(v) = memo.get(b) {
        return v.clone();
    }
    let v = match b {
        Bracketing::Letter(l) => gens[*l as usize].clone(),
        Bracketing::Pair(u, w) => {
            let x = eval_bracketing(ring, u, gens, memo);
            if ring.module.is_zero(&x) {
                x
            } else {
                let y = eval_bracketing(ring, w, gens, memo);
                ring.bracket(&x, &y)
            }
        }
    };
    memo.insert(b.clone(), v.clone());
    v
}

/// A finite group given by its multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGroup {
    pub p: u64,
    n: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    identity: usize,
}

pub type ElementSet = Vec<usize>;

impl CayleyGroup {
    /// Build and fully validate (closure, identity, inverses, associativity).
    pub fn new(p: u64, n: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        if table.len() != n * n || table.iter().any(|&x| x as usize >= n) {
            return Err(GroupError::NotAGroup("table shape".into()));
        }
        let g = Self::from_table_unchecked(p, n, table);
        g.validate()?;
        Ok(g)
    }

    pub fn from_table_unchecked(p: u64, n: usize, table: Vec<u32>) -> Self {
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .unwrap_or(0);
        let inverses = (0..n)
            .map(|x| (0..n).find(|&y| table[x * n + y] as usize == identity).unwrap_or(0) as u32)
            .collect();
        CayleyGroup { p, n, table, inverses, identity }
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.n;
        let e = self.identity;
        if (0..n).any(|x| self.mul(e, x) != x || self.mul(x, e) != x) {
            return Err(GroupError::NotAGroup("no identity".into()));
        }
        for x in 0..n {
            if self.mul(x, self.inv(x)) != e || self.mul(self.inv(x), x) != e {
                return Err(GroupError::NotAGroup(format!("element {x} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut m = n;
        while m % self.p as usize == 0 {
            m /= self.p as usize;
        }
        if m != 1 {
            return Err(GroupError::NotPGroup { order: n, p: self.p });
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, n: u64) -> usize {
        power(&a, n, &self.identity, &|x: &usize, y: &usize| self.mul(*x, *y))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.mul(a, b), self.inv(a)), self.inv(b))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `log_p |G|`.
    pub fn log_order(&self) -> u32 {
        let mut k = 0;
        let mut m = self.n;
        while m > 1 {
            m /= self.p as usize;
            k += 1;
        }
        k
    }

    pub fn all(&self) -> ElementSet {
        (0..self.n).collect()
    }

    pub fn trivial_subgroup(&self) -> ElementSet {
        vec![self.identity]
    }

    pub fn subgroup_closure(&self, gens: &[usize]) -> ElementSet {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        seen[self.identity] = true;
        queue.push_back(self.identity);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&i| seen[i]).collect()
    }

    pub fn is_subgroup(&self, s: &[usize]) -> bool {
        let set: BTreeSet<usize> = s.iter().copied().collect();
        set.contains(&self.identity) && s.iter().all(|&a| s.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, s: &[usize]) -> bool {
        let set: BTreeSet<usize> = s.iter().copied().collect();
        self.is_subgroup(s) && self.generating_set().iter().all(|&g| s.iter().all(|&x| set.contains(&self.conjugate(g, x))))
    }

    pub fn normal_closure(&self, gens: &[usize]) -> ElementSet {
        let g = self.generating_set();
        let mut cur = self.subgroup_closure(gens);
        loop {
            let mut more: Vec<usize> = cur.clone();
            for &x in &cur {
                for &s in &g {
                    more.push(self.conjugate(s, x));
                }
            }
            let next = self.subgroup_closure(&more);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `[A, B]` for subgroups `A, B` normal in `G`.
    pub fn commutator_subgroup(&self, a: &[usize], b: &[usize]) -> ElementSet {
        let mut gens = Vec::new();
        for &x in a {
            for &y in b {
                gens.push(self.commutator(x, y));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.normal_closure(&gens)
    }

    pub fn gamma_series(&self) -> Vec<ElementSet> {
        let all = self.all();
        let g = self.generating_set();
        let mut series = vec![all];
        loop {
            let last = series.last().unwrap();
            if last.len() == 1 {
                return series;
            }
            let next = self.commutator_subgroup(last, &g);
            if next.len() == last.len() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn nilpotency_class(&self) -> usize {
        self.gamma_series().len() - 1
    }

    /// `<x^p : x in N>`.
    pub fn power_subgroup(&self, n: &[usize], p: u64) -> ElementSet {
        let gens: Vec<usize> = n.iter().map(|&x| self.pow(x, p)).collect();
        self.subgroup_closure(&gens)
    }

    /// `N^p [G, N]`.
    pub fn agemo_mixed(&self, n: &[usize]) -> ElementSet {
        let mut gens = self.power_subgroup(n, self.p);
        gens.extend(self.commutator_subgroup(&self.all(), n));
        self.normal_closure(&gens)
    }

    /// Deterministic small generating set: repeatedly add the smallest
    /// element of largest order outside the current subgroup.
    pub fn generating_set(&self) -> Vec<usize> {
        self.generating_set_of(&self.all())
    }

    pub fn generating_set_of(&self, s: &[usize]) -> Vec<usize> {
        let orders: Vec<usize> = s.iter().map(|&x| self.element_order(x)).collect();
        let mut gens = Vec::new();
        let mut span = self.subgroup_closure(&gens);
        while span.len() < s.len() {
            let inside: BTreeSet<usize> = span.iter().copied().collect();
            let pick = s
                .iter()
                .zip(&orders)
                .filter(|(x, _)| !inside.contains(x))
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
                .map(|(&x, _)| x)
                .unwrap();
            gens.push(pick);
            span = self.subgroup_closure(&gens);
        }
        gens
    }

    /// `G / N` with the projection and the chosen coset representatives.
    pub fn quotient_group(&self, normal: &[usize]) -> Result<Quotient, GroupError> {
        if !self.is_normal(normal) {
            return Err(GroupError::NotNormal);
        }
        let mut coset = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n {
            if coset[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &k in normal {
                coset[self.mul(x, k)] = id;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = coset[self.mul(reps[i], reps[j])] as u32;
            }
        }
        let group = CayleyGroup::from_table_unchecked(self.p, m, table);
        Ok(Quotient { group, projection: coset, representatives: reps })
    }

    pub fn is_homomorphism_to(&self, target: &CayleyGroup, map: &[usize]) -> bool {
        map.len() == self.n
            && (0..self.n).all(|a| (0..self.n).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }

    /// Direct product, element `(a, b)` at index `a * |H| + b`.
    pub fn direct_product(&self, other: &CayleyGroup) -> CayleyGroup {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            let (a1, a2) = (a / n2, a % n2);
            for b in 0..n {
                let (b1, b2) = (b / n2, b % n2);
                table[a * n + b] = (self.mul(a1, b1) * n2 + other.mul(a2, b2)) as u32;
            }
        }
        CayleyGroup::from_table_unchecked(self.p, n, table)
    }

    /// The subgroup on `elems` as a group in its own right, with the
    /// embedding (new index to old index).
    pub fn subgroup_group(&self, elems: &[usize]) -> (CayleyGroup, Vec<usize>) {
        let pos: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let m = elems.len();
        let mut table = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = pos[&self.mul(elems[i], elems[j])] as u32;
            }
        }
        (CayleyGroup::from_table_unchecked(self.p, m, table), elems.to_vec())
    }

    fn exponent_bound(&self) -> (u64, u32) {
        (self.p, self.log_order().max(1))
    }

    pub fn eval_word(&self, w: &GroupWord, a: usize, b: usize) -> Result<usize, RingError> {
        eval_word(
            w,
            &a,
            &b,
            &self.identity,
            &|x: &usize, y: &usize| self.mul(*x, *y),
            &|x: &usize| self.inv(*x),
            self.exponent_bound(),
        )
    }

    /// Rational power `x^q` for `q` with `p`-free denominator.
    pub fn rat_pow(&self, x: usize, q: &PLocalRat) -> Result<usize, RingError> {
        let (p, e) = self.exponent_bound();
        Ok(self.pow(x, reduce_local(q, p, e)?.value()))
    }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: CayleyGroup,
    pub projection: Vec<usize>,
    pub representatives: Vec<usize>,
}

/// Lie operations on a group of class `< p`, through the inverse BCH words.
#[derive(Clone, Debug)]
pub struct LieView<'a> {
    pub group: &'a CayleyGroup,
    pub words: InverseBch,
}

impl<'a> LieView<'a> {
    pub fn new(group: &'a CayleyGroup, class: usize) -> Result<Self, GroupError> {
        if class >= group.p as usize {
            return Err(GroupError::LazardBound { class, p: group.p });
        }
        Ok(LieView { group, words: inverse_bch(class.max(1)) })
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.group.eval_word(&self.words.h1, a, b).expect("p-free exponents below the Lazard bound")
    }

    pub fn bracket(&self, a: usize, b: usize) -> usize {
        self.group.eval_word(&self.words.h2, a, b).expect("p-free exponents below the Lazard bound")
    }

    pub fn neg(&self, a: usize) -> usize {
        self.group.inv(a)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, a: usize, n: i128) -> usize {
        let m = self.group.order() as i128;
        self.group.pow(a, n.rem_euclid(m) as u64)
    }
}

/// Read a Lie ring off `exp(L)` using only `g_mul` and `g_inv`. The
/// coordinate frame of the group's underlying set supplies the basis.
pub fn recover_lie(g: &LazardGroup) -> Result<NilLieRing, GroupError> {
    let ring = &g.ring;
    let words = inverse_bch(g.class.max(1));
    let id = g.identity();
    let mul = |a: &LieElement, b: &LieElement| g.g_mul(a, b);
    let inv = |a: &LieElement| g.g_inv(a);
    let bound = (g.p(), ring.module.exps.iter().sum::<u32>().max(1));
    let r = ring.rank();
    let basis: Vec<LieElement> = (0..r).map(|i| ring.basis(i)).collect();
    let mut exps = Vec::with_capacity(r);
    for b in &basis {
        let mut k = 0u32;
        let mut x = b.clone();
        while x != id {
            x = power(&x, g.p(), &id, &mul);
            k += 1;
        }
        exps.push(k);
    }
    let mut brackets = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let s = eval_word(&words.h1, &basis[i], &basis[j], &id, &mul, &inv, bound)?;
            if s != ring.add(&basis[i], &basis[j]) {
                return Err(GroupError::Recovery(format!(
                    "sum of {} and {} disagrees with the coordinate frame",
                    ring.labels[i], ring.labels[j]
                )));
            }
            if i < j {
                let c = eval_word(&words.h2, &basis[i], &basis[j], &id, &mul, &inv, bound)?;
                brackets.push((i, j, c.iter().map(|&x| x as i128).collect()));
            }
        }
    }
    Ok(NilLieRing::from_brackets(g.p(), ring.labels.clone(), exps, &brackets)?)
}

/// Lie ring of a group of class `c < p` given by its table, with the Lie
/// coordinates of every element.
pub fn log_cayley(group: &CayleyGroup) -> Result<(NilLieRing, Vec<LieElement>), GroupError> {
    let class = group.nilpotency_class();
    let view = LieView::new(group, class)?;
    let n = group.order();
    let zero = group.identity();
    // additive generators, largest order first
    let orders: Vec<usize> = (0..n).map(|x| group.element_order(x)).collect();
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![false; n];
    span[zero] = true;
    let mut span_elems = vec![zero];
    while span_elems.len() < n {
        let pick = (0..n).filter(|&x| !span[x]).max_by(|&a, &b| orders[a].cmp(&orders[b]).then(b.cmp(&a))).unwrap();
        gens.push(pick);
        let mut queue: VecDeque<usize> = span_elems.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = view.add(x, g);
                if !span[y] {
                    span[y] = true;
                    span_elems.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
    let p = group.p;
    let dexps: Vec<u32> = gens
        .iter()
        .map(|&g| {
            let mut k = 0;
            let mut m = orders[g];
            while m > 1 {
                m /= p as usize;
                k += 1;
            }
            k
        })
        .collect();
    let domain = AbelianPGroup::new(p, dexps);
    let multiples: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let mut v = vec![zero];
            for _ in 1..orders[g] {
                v.push(view.add(*v.last().unwrap(), g));
            }
            v
        })
        .collect();
    let mut first: Vec<Option<Vec<u64>>> = vec![None; n];
    let mut relations = Vec::new();
    for t in domain.elements() {
        let mut acc = zero;
        for (k, &c) in t.iter().enumerate() {
            acc = view.add(acc, multiples[k][c as usize]);
        }
        match &first[acc] {
            None => first[acc] = Some(t),
            Some(s) => relations.push(domain.sub(&t, s)),
        }
    }
    let q = AbelianQuotient::new(&domain, &relations);
    let coords: Vec<LieElement> = first.iter().map(|t| q.project(t.as_ref().unwrap())).collect();
    let index: BTreeMap<&LieElement, usize> = coords.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let r = q.quotient.rank();
    let basis_elem: Vec<usize> = (0..r).map(|k| index[&q.quotient.unit(k)]).collect();
    let mut brackets = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let c = view.bracket(basis_elem[i], basis_elem[j]);
            brackets.push((i, j, coords[c].iter().map(|&x| x as i128).collect()));
        }
    }
    let labels = crate::liering::default_labels(r);
    let ring = NilLieRing::from_brackets(p, labels, q.quotient.exps.clone(), &brackets)?;
    Ok((ring, coords))
}

/// `p^k` with `k` the sum of exponents, an upper bound for any element order.
pub fn order_bound(ring: &NilLieRing) -> u64 {
    pow(ring.p, ring.module.exps.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liering::{abelian, heisenberg};

    #[test]
    fn heisenberg_products() {
        let g = LazardGroup::new(heisenberg(5, 1)).unwrap();
        assert_eq!(g.g_mul(&[1, 0, 0], &[0, 1, 0]), vec![1, 1, 3]);
        assert_eq!(g.g_mul(&[0, 1, 0], &[1, 0, 0]), vec![1, 1, 2]);
        assert_eq!(g.g_mul(&[2, 3, 1], &[0, 0, 0]), vec![2, 3, 1]);
    }

    #[test]
    fn subobjects() {
        let g = LazardGroup::new(heisenberg(5, 1)).unwrap();
        let c = g.to_cayley();
        c.validate().unwrap();
        let z = g.index_of(&[0, 0, 1]);
        let x = g.index_of(&[1, 0, 0]);
        let series = c.gamma_series();
        assert_eq!(series.len(), 3);
        assert_eq!(series[1], c.subgroup_closure(&[z]));
        assert_eq!(c.power_subgroup(&c.all(), 5), c.trivial_subgroup());
        assert_eq!(c.normal_closure(&[x]), c.subgroup_closure(&[x, z]));
        let q = c.quotient_group(&c.subgroup_closure(&[z])).unwrap();
        assert_eq!(q.group.order(), 25);
        assert_eq!(q.group.nilpotency_class(), 1);
        assert_eq!(c.quotient_group(&c.all()).unwrap().group.order(), 1);
        assert!(c.quotient_group(&c.subgroup_closure(&[x])).is_err());
    }

    #[test]
    fn recovery_round_trip() {
        for l in [abelian(5, vec![1, 2]), heisenberg(5, 1), crate::liering::free_nilpotent(2, 3, 5, 1)] {
            let g = LazardGroup::new(l.clone()).unwrap();
            assert_eq!(recover_lie(&g).unwrap(), l);
        }
    }

    #[test]
    fn log_of_table() {
        let g = LazardGroup::new(heisenberg(5, 1)).unwrap();
        let (l, coords) = log_cayley(&g.to_cayley()).unwrap();
        assert!(l.validate().is_empty());
        assert_eq!(l.order(), 125);
        assert_eq!(l.nilpotency_class().unwrap(), 2);
        // additive structure is transported
        let a = g.index_of(&[1, 2, 0]);
        let b = g.index_of(&[3, 1, 4]);
        let s = g.index_of(&[4, 3, 4]);
        assert_eq!(l.add(&coords[a], &coords[b]), coords[s]);
    }

    #[test]
    fn bound_refused() {
        let f = crate::liering::free_nilpotent(2, 5, 5, 1);
        assert!(matches!(LazardGroup::new(f), Err(GroupError::LazardBound { class: 5, p: 5 })));
    }
}
