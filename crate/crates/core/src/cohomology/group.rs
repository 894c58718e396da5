use std::collections::VecDeque;

use super::{repeat_exps, Bounds, CohomologyError, CohomologyGroup};
use crate::bchgroup::CayleyGroup;
use crate::ring::{kernel_of_equations, AbelianPGroup, EquationAccumulator, HomMatrix, PrimePower};
use crate::triples::GroupTriple;

/// Full 2-cochain table, `table[x * n + y]` in `M`.
pub type CocycleTable = Vec<Vec<u64>>;

/// Cochain bookkeeping for a group triple: a generating set and a
/// breadth-first spanning tree of the right Cayley graph.
#[derive(Clone, Debug)]
pub struct GroupCochains {
    pub group: CayleyGroup,
    pub module: AbelianPGroup,
    pub phi: Vec<HomMatrix>,
    pub gens: Vec<usize>,
    /// `parent[y] = (x, j)` with `x * gens[j] = y`.
    parent: Vec<Option<(usize, usize)>>,
    bfs: Vec<usize>,
    /// Index of each gauge-free edge `(x, j)` in the `H^2` unknowns.
    edge_slot: Vec<Option<usize>>,
    edges: Vec<(usize, usize)>,
}

impl GroupCochains {
    pub fn new(t: &GroupTriple) -> Self {
        let group = t.group.cayley().into_owned();
        let gens = t.group.generators();
        Self::from_parts(group, t.module.clone(), t.phi.clone(), gens)
    }

    pub fn from_parts(group: CayleyGroup, module: AbelianPGroup, phi: Vec<HomMatrix>, gens: Vec<usize>) -> Self {
        let n = group.order();
        let id = group.identity();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[id] = true;
        let mut bfs = vec![id];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for (j, &s) in gens.iter().enumerate() {
                let y = group.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, j));
                    bfs.push(y);
                    queue.push_back(y);
                }
            }
        }
        assert_eq!(bfs.len(), n, "generating set does not generate the group");
        let k = gens.len();
        let mut edge_slot = vec![None; n * k];
        let mut edges = Vec::new();
        for x in 0..n {
            if x == id {
                continue;
            }
            for (j, &s) in gens.iter().enumerate() {
                let y = group.mul(x, s);
                if parent[y] != Some((x, j)) {
                    edge_slot[x * k + j] = Some(edges.len());
                    edges.push((x, j));
                }
            }
        }
        GroupCochains { group, module, phi, gens, parent, bfs, edge_slot, edges }
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    fn rank(&self) -> usize {
        self.module.rank()
    }

    fn ring(&self) -> PrimePower {
        PrimePower::new(self.module.p, self.module.max_exp().max(1))
    }

    // -- degree 1 --

    /// Crossed homomorphisms modulo principal ones, parametrized by the
    /// values on the generating set.
    pub fn h1(&self) -> CohomologyGroup {
        let r = self.rank();
        let k = self.gens.len();
        let domain = repeat_exps(&self.module, k);
        let nunk = k * r;
        let ring = self.ring();
        let scale: Vec<u64> = (0..r).map(|i| ring.ppow(ring.e - self.module.exps[i])).collect();
        let n = self.order();
        // forms[y][i] = coordinate i of f(y), embedded in Z/p^E
        let mut forms: Vec<Vec<Vec<u64>>> = vec![Vec::new(); n];
        forms[self.group.identity()] = vec![vec![0; nunk]; r];
        let term = |x: usize, j: usize| -> Vec<Vec<u64>> {
            let mut out = vec![vec![0; nunk]; r];
            for (i, row) in out.iter_mut().enumerate() {
                for kk in 0..r {
                    row[j * r + kk] = ring.mul(self.phi[x].entries[i][kk] % ring.modulus, scale[i]);
                }
            }
            out
        };
        for &y in &self.bfs[1..] {
            let (x, j) = self.parent[y].unwrap();
            forms[y] = add_forms(&ring, &forms[x], &term(x, j));
        }
        let mut acc = EquationAccumulator::new(ring.clone(), nunk);
        for x in 0..n {
            for (j, &s) in self.gens.iter().enumerate() {
                let y = self.group.mul(x, s);
                if self.parent[y] == Some((x, j)) {
                    continue;
                }
                let rhs = add_forms(&ring, &forms[x], &term(x, j));
                for i in 0..r {
                    let row: Vec<u64> = forms[y][i].iter().zip(&rhs[i]).map(|(&a, &b)| ring.sub(a, b)).collect();
                    if row.iter().any(|&v| v != 0) {
                        acc.push(row);
                    }
                }
            }
        }
        let cycles = kernel_of_equations(&ring, &domain, acc.into_rows());
        let boundaries: Vec<Vec<u64>> = (0..r)
            .map(|kk| {
                let m = self.module.unit(kk);
                let mut v = Vec::with_capacity(nunk);
                for &s in &self.gens {
                    v.extend(self.module.sub(&self.phi[s].apply(&m), &m));
                }
                v
            })
            .collect();
        CohomologyGroup::new(domain, &cycles, &boundaries)
    }

    /// Values of the crossed homomorphism with the given generator values.
    pub fn eval_crossed(&self, v: &[u64]) -> Vec<Vec<u64>> {
        let r = self.rank();
        let mut out = vec![Vec::new(); self.order()];
        out[self.group.identity()] = self.module.zero();
        for &y in &self.bfs[1..] {
            let (x, j) = self.parent[y].unwrap();
            let fs = &v[j * r..(j + 1) * r];
            out[y] = self.module.add(&out[x], &self.phi[x].apply(fs));
        }
        out
    }

    pub fn restrict_crossed(&self, f: &[Vec<u64>]) -> Vec<u64> {
        self.gens.iter().flat_map(|&s| f[s].iter().copied()).collect()
    }

    /// First pair `(x, y)` where `f(xy) != f(x) + phi(x) f(y)`.
    pub fn check_crossed(&self, f: &[Vec<u64>]) -> Result<(), (usize, usize)> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let lhs = &f[self.group.mul(x, y)];
                let rhs = self.module.add(&f[x], &self.phi[x].apply(&f[y]));
                if *lhs != rhs {
                    return Err((x, y));
                }
            }
        }
        Ok(())
    }

    // -- degree 2 --

    /// Normalized 2-cocycles modulo coboundaries. Unknowns are `f(x, s)` on
    /// the edges outside the spanning tree; on tree edges the cocycle is
    /// gauged to zero.
    pub fn h2(&self, bounds: &Bounds) -> Result<CohomologyGroup, CohomologyError> {
        bounds.check(self.order())?;
        let r = self.rank();
        let nunk = self.edges.len() * r;
        let domain = repeat_exps(&self.module, self.edges.len());
        if r == 0 {
            return Ok(CohomologyGroup::new(domain, &[], &[]));
        }
        let ring = self.ring();
        let n = self.order();
        let k = self.gens.len();
        let id = self.group.identity();
        // Equations are added one first argument x at a time, only for
        // those x where a candidate kernel vector fails.
        let mut acc = EquationAccumulator::new(ring.clone(), nunk);
        let mut done = vec![false; n];
        done[id] = true;
        let mut pending: Vec<usize> = self.gens.iter().copied().filter(|&g| g != id).collect();
        let cycles = loop {
            for &x in &pending {
                if !done[x] {
                    done[x] = true;
                    self.push_equations(x, &ring, nunk, &mut acc);
                }
            }
            let cand = kernel_of_equations(&ring, &domain, acc.rows().to_vec());
            let mut bad = Vec::new();
            for z in &cand {
                for x in self.violations(z) {
                    if !done[x] && !bad.contains(&x) {
                        bad.push(x);
                    }
                }
                if bad.len() >= 4 {
                    break;
                }
            }
            if bad.is_empty() {
                break cand;
            }
            pending = bad;
        };
        // residual gauge: h free on the generators, propagated along the tree
        let mut boundaries = Vec::new();
        for j in 0..k {
            for kk in 0..r {
                let mut hvals = vec![self.module.zero(); n];
                hvals[self.gens[j]] = self.module.unit(kk);
                let h = self.propagate_gauge(hvals, |_, _| self.module.zero());
                boundaries.push(self.restrict_table(&|x, jj| self.coboundary_at(&h, x, jj)));
            }
        }
        Ok(CohomologyGroup::new(domain, &cycles, &boundaries))
    }

    /// Equations `f(x, y s) = f(x, y) + f(x y, s) - phi(x) f(y, s)` for the
    /// edges `(y, s)` outside the tree, in the gauge-fixed unknowns.
    fn push_equations(&self, x: usize, ring: &PrimePower, nunk: usize, acc: &mut EquationAccumulator) {
        let r = self.rank();
        let n = self.order();
        let k = self.gens.len();
        let id = self.group.identity();
        let scale: Vec<u64> = (0..r).map(|i| ring.ppow(ring.e - self.module.exps[i])).collect();
        let step = |y: usize, j: usize| -> Vec<Vec<u64>> {
            let mut out = vec![vec![0; nunk]; r];
            if let Some(slot) = self.edge_slot[self.group.mul(x, y) * k + j] {
                for (i, row) in out.iter_mut().enumerate() {
                    row[slot * r + i] = scale[i];
                }
            }
            if let Some(slot) = self.edge_slot[y * k + j] {
                for (i, row) in out.iter_mut().enumerate() {
                    for kk in 0..r {
                        let c = ring.mul(self.phi[x].entries[i][kk] % ring.modulus, scale[i]);
                        row[slot * r + kk] = ring.sub(row[slot * r + kk], c);
                    }
                }
            }
            out
        };
        let mut forms: Vec<Vec<Vec<u64>>> = vec![Vec::new(); n];
        forms[id] = vec![vec![0; nunk]; r];
        for &y in &self.bfs[1..] {
            let (yp, j) = self.parent[y].unwrap();
            forms[y] = add_forms(ring, &forms[yp], &step(yp, j));
        }
        for y in 0..n {
            for j in 0..k {
                let z = self.group.mul(y, self.gens[j]);
                if self.parent[z] == Some((y, j)) {
                    continue;
                }
                let rhs = add_forms(ring, &forms[y], &step(y, j));
                for i in 0..r {
                    let row: Vec<u64> = forms[z][i].iter().zip(&rhs[i]).map(|(&a, &b)| ring.sub(a, b)).collect();
                    if row.iter().any(|&v| v != 0) {
                        acc.push(row);
                    }
                }
            }
        }
    }

    /// First arguments `x` at which the expanded cochain fails an equation.
    fn violations(&self, v: &[u64]) -> Vec<usize> {
        let n = self.order();
        let table = self.expand_cocycle(v);
        let mut out = Vec::new();
        for x in 0..n {
            'y: for y in 0..n {
                for &s in &self.gens {
                    let ys = self.group.mul(y, s);
                    let lhs = self.module.add(&table[x * n + y], &table[self.group.mul(x, y) * n + s]);
                    let rhs = self.module.add(&self.phi[x].apply(&table[y * n + s]), &table[x * n + ys]);
                    if lhs != rhs {
                        out.push(x);
                        break 'y;
                    }
                }
            }
        }
        out
    }

    /// Extend `h` from the generators along tree edges by
    /// `h(y) = phi(x) h(s) + h(x) + f(x, s)`.
    fn propagate_gauge(&self, mut h: Vec<Vec<u64>>, f: impl Fn(usize, usize) -> Vec<u64>) -> Vec<Vec<u64>> {
        let id = self.group.identity();
        h[id] = self.module.zero();
        for &y in &self.bfs[1..] {
            let (x, j) = self.parent[y].unwrap();
            if x == id {
                continue;
            }
            let s = self.gens[j];
            let v = self.module.add(&self.phi[x].apply(&h[s]), &h[x]);
            h[y] = self.module.add(&v, &f(x, j));
        }
        h
    }

    fn coboundary_at(&self, h: &[Vec<u64>], x: usize, j: usize) -> Vec<u64> {
        let s = self.gens[j];
        let v = self.module.sub(&self.phi[x].apply(&h[s]), &h[self.group.mul(x, s)]);
        self.module.add(&v, &h[x])
    }

    fn restrict_table(&self, f: &dyn Fn(usize, usize) -> Vec<u64>) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.edges.len() * self.rank());
        for &(x, j) in &self.edges {
            out.extend(f(x, j));
        }
        out
    }

    /// Gauge-fixed unknown vector of a cocycle given by its values
    /// `f(x, gens[j])`.
    pub fn restrict_cocycle(&self, f: impl Fn(usize, usize) -> Vec<u64>) -> Vec<u64> {
        let n = self.order();
        let mut h = vec![self.module.zero(); n];
        // generators keep h = 0; the rest follows the tree
        h = self.propagate_gauge(std::mem::take(&mut h), &f);
        self.restrict_table(&|x, j| self.module.add(&f(x, j), &self.coboundary_at(&h, x, j)))
    }

    pub fn restrict_table_full(&self, table: &CocycleTable) -> Vec<u64> {
        let n = self.order();
        self.restrict_cocycle(|x, j| table[x * n + self.gens[j]].clone())
    }

    /// Full table of the cocycle with the given unknowns.
    pub fn expand_cocycle(&self, v: &[u64]) -> CocycleTable {
        let n = self.order();
        let r = self.rank();
        let k = self.gens.len();
        let id = self.group.identity();
        let edge = |x: usize, j: usize| -> Vec<u64> {
            match self.edge_slot[x * k + j] {
                Some(slot) => v[slot * r..(slot + 1) * r].to_vec(),
                None => self.module.zero(),
            }
        };
        let mut table = vec![self.module.zero(); n * n];
        for x in 0..n {
            if x == id {
                continue;
            }
            for &y in &self.bfs[1..] {
                let (yp, j) = self.parent[y].unwrap();
                let a = self.module.add(&table[x * n + yp], &edge(self.group.mul(x, yp), j));
                table[x * n + y] = self.module.sub(&a, &self.phi[x].apply(&edge(yp, j)));
            }
        }
        table
    }

    /// First triple violating the cocycle identity, or a normalization
    /// failure reported as `(x, 1, 1)` / `(1, x, 1)`.
    pub fn check_cocycle(&self, table: &CocycleTable) -> Result<(), (usize, usize, usize)> {
        let n = self.order();
        let id = self.group.identity();
        for x in 0..n {
            if !self.module.is_zero(&table[x * n + id]) {
                return Err((x, id, id));
            }
            if !self.module.is_zero(&table[id * n + x]) {
                return Err((id, x, id));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.group.mul(x, y);
                for z in 0..n {
                    let yz = self.group.mul(y, z);
                    let lhs = self.module.add(&table[x * n + y], &table[xy * n + z]);
                    let rhs = self.module.add(&self.phi[x].apply(&table[y * n + z]), &table[x * n + yz]);
                    if lhs != rhs {
                        return Err((x, y, z));
                    }
                }
            }
        }
        Ok(())
    }
}

fn add_forms(ring: &PrimePower, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(&u, &v)| ring.add(u, v)).collect()).collect()
}

/// `1 -> M -> E -> G -> 1` with an explicit table for `E`. Elements of `E`
/// built from a cocycle are indexed `x * |M| + index(m)` for the pair
/// `(m, x)`.
#[derive(Clone, Debug)]
pub struct GroupExtension {
    pub group: CayleyGroup,
    /// `M` element index to `E` element.
    pub iota: Vec<usize>,
    /// `E` element to `G` element.
    pub proj: Vec<usize>,
    /// A normalized section `G -> E`.
    pub section: Vec<usize>,
}

impl GroupExtension {
    /// `(m, x)(n, y) = (m + phi(x) n + f(x, y), x y)`.
    pub fn from_cocycle(c: &GroupCochains, table: &CocycleTable) -> Self {
        let n = c.order();
        let mm = c.module.order() as usize;
        let elems: Vec<Vec<u64>> = c.module.elements().collect();
        let size = n * mm;
        let mut t = vec![0u32; size * size];
        for x in 0..n {
            for (a, m) in elems.iter().enumerate() {
                for y in 0..n {
                    let xy = c.group.mul(x, y);
                    let base = c.module.add(m, &table[x * n + y]);
                    for (b, v) in elems.iter().enumerate() {
                        let w = c.module.add(&base, &c.phi[x].apply(v));
                        t[(x * mm + a) * size + y * mm + b] = (xy * mm + c.module.index_of(&w)) as u32;
                    }
                }
            }
        }
        let group = CayleyGroup::from_table_unchecked(c.group.p, size, t);
        let id = c.group.identity();
        GroupExtension {
            group,
            iota: (0..mm).map(|a| id * mm + a).collect(),
            proj: (0..size).map(|e| e / mm).collect(),
            section: (0..n).map(|x| x * mm).collect(),
        }
    }

    /// `f(x, y) = iota^{-1}(s(x) s(y) s(xy)^{-1})` for the stored section.
    pub fn cocycle(&self, c: &GroupCochains) -> Result<CocycleTable, CohomologyError> {
        let n = c.order();
        let mut inv_iota = vec![None; self.group.order()];
        for (a, &e) in self.iota.iter().enumerate() {
            inv_iota[e] = Some(a);
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let s = &self.section;
                let u = self.group.mul(self.group.mul(s[x], s[y]), self.group.inv(s[c.group.mul(x, y)]));
                let a = inv_iota[u].ok_or_else(|| CohomologyError::Internal("section product leaves M".into()))?;
                table.push(c.module.element_at(a));
            }
        }
        Ok(table)
    }

    /// Baer sum: the pullback over `G` modulo the antidiagonal copy of `M`.
    pub fn baer_sum(&self, other: &GroupExtension, c: &GroupCochains) -> Result<GroupExtension, CohomologyError> {
        let n2 = other.group.order();
        let pairs: Vec<usize> = (0..self.group.order())
            .flat_map(|a| (0..n2).filter(move |&b| self.proj[a] == other.proj[b]).map(move |b| a * n2 + b))
            .collect();
        let mut index = vec![usize::MAX; self.group.order() * n2];
        for (i, &e) in pairs.iter().enumerate() {
            index[e] = i;
        }
        let m = pairs.len();
        let mut table = vec![0u32; m * m];
        for (i, &u) in pairs.iter().enumerate() {
            for (j, &v) in pairs.iter().enumerate() {
                let a = self.group.mul(u / n2, v / n2);
                let b = other.group.mul(u % n2, v % n2);
                table[i * m + j] = index[a * n2 + b] as u32;
            }
        }
        let pullback = CayleyGroup::from_table_unchecked(self.group.p, m, table);
        let embed = pairs;
        let mm = self.iota.len();
        let anti: Vec<usize> = (0..mm)
            .map(|a| {
                let neg = c.module.index_of(&c.module.neg(&c.module.element_at(a)));
                index[self.iota[a] * n2 + other.iota[neg]]
            })
            .collect();
        let q = pullback.quotient_group(&anti)?;
        let ident2 = other.group.identity();
        Ok(GroupExtension {
            iota: (0..mm).map(|a| q.projection[index[self.iota[a] * n2 + ident2]]).collect(),
            proj: q.representatives.iter().map(|&r| self.proj[embed[r] / n2]).collect(),
            section: (0..c.order())
                .map(|x| q.projection[index[self.section[x] * n2 + other.section[x]]])
                .collect(),
            group: q.group,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liering::{abelian, heisenberg};
    use crate::triples::{exp_triple, LieTriple};

    fn trivial(ring: crate::liering::NilLieRing, exps: Vec<u32>) -> GroupCochains {
        let p = ring.p;
        let t = LieTriple::trivial(ring, AbelianPGroup::new(p, exps));
        GroupCochains::new(&exp_triple(&t).unwrap())
    }

    #[test]
    fn cyclic_trivial_module() {
        let c = trivial(abelian(5, vec![1]), vec![1]);
        assert_eq!(c.h1().invariants().factors(), vec![5]);
        assert_eq!(c.h2(&Bounds::cube(5)).unwrap().invariants().factors(), vec![5]);
        let c = trivial(abelian(5, vec![2]), vec![1]);
        assert_eq!(c.h2(&Bounds::cube(5)).unwrap().invariants().factors(), vec![5]);
    }

    #[test]
    fn elementary_rank_two() {
        let c = trivial(abelian(5, vec![1, 1]), vec![1]);
        assert_eq!(c.h2(&Bounds::cube(5)).unwrap().invariants().order(), 125);
    }

    #[test]
    fn heisenberg_h1() {
        let c = trivial(heisenberg(5, 1), vec![1]);
        assert_eq!(c.h1().invariants().factors(), vec![5, 5]);
        let h2 = c.h2(&Bounds::cube(5)).unwrap();
        assert!(h2.invariants().order() > 1);
    }

    #[test]
    fn expand_and_extension_round_trip() {
        let c = trivial(abelian(5, vec![1]), vec![1]);
        let h2 = c.h2(&Bounds::cube(5)).unwrap();
        let g = &h2.generators()[0];
        let table = c.expand_cocycle(g);
        c.check_cocycle(&table).unwrap();
        assert_eq!(h2.classify(&c.restrict_table_full(&table)).unwrap(), h2.classes().unit(0));
        let ext = GroupExtension::from_cocycle(&c, &table);
        ext.group.validate().unwrap();
        let back = ext.cocycle(&c).unwrap();
        assert_eq!(h2.classify(&c.restrict_table_full(&back)), h2.classify(g));
        let sum = ext.baer_sum(&ext, &c).unwrap();
        let twice = c.restrict_table_full(&sum.cocycle(&c).unwrap());
        assert_eq!(h2.classify(&twice).unwrap(), h2.classes().scale(&h2.classes().unit(0), 2));
    }

    #[test]
    fn broken_cocycle_rejected() {
        let c = trivial(abelian(5, vec![1]), vec![1]);
        let mut table = vec![vec![0]; 25];
        table[1 * 5 + 2] = vec![1];
        assert!(c.check_cocycle(&table).is_err());
    }
}
