use super::{repeat_exps, CohomologyError, CohomologyGroup};
use crate::liering::{LieElement, NilLieRing};
use crate::ring::{
    kernel_of_equations, AbelianPGroup, AbelianQuotient, EquationAccumulator, HomMatrix, LinearSolver, PrimePower,
    Subgroup,
};
use crate::triples::LieTriple;

fn ring_of(module: &AbelianPGroup) -> PrimePower {
    PrimePower::new(module.p, module.max_exp().max(1))
}

fn push_rows(acc: &mut EquationAccumulator, module: &AbelianPGroup, rows: &[Vec<u64>], nunk: usize) {
    let ring = ring_of(module);
    for (k, row) in rows.iter().enumerate() {
        let s = ring.ppow(ring.e - module.exps[k]);
        let v: Vec<u64> = row[..nunk].iter().map(|&x| ring.mul(x % ring.modulus, s)).collect();
        if v.iter().any(|&x| x != 0) {
            acc.push(v);
        }
    }
}

// -- degree 1 --

/// Derivations modulo inner ones, parametrized by the values on the basis.
pub fn lie_h1(t: &LieTriple) -> CohomologyGroup {
    let l = &t.ring;
    let m = &t.module;
    let (r, rm) = (l.rank(), m.rank());
    let nunk = r * rm;
    let domain = repeat_exps(m, r);
    let mut acc = EquationAccumulator::new(ring_of(m), nunk);
    // p^{e_i} f(b_i) = 0
    for i in 0..r {
        let mut rows = vec![vec![0u64; nunk]; rm];
        for (k, row) in rows.iter_mut().enumerate() {
            row[i * rm + k] = l.module.modulus(i) % m.modulus(k);
        }
        push_rows(&mut acc, m, &rows, nunk);
    }
    // f([b_i, b_j]) = psi_i f(b_j) - psi_j f(b_i)
    for i in 0..r {
        for j in i + 1..r {
            let c = l.constant(i, j);
            let mut rows = vec![vec![0u64; nunk]; rm];
            for (k, row) in rows.iter_mut().enumerate() {
                let mk = m.modulus(k);
                for q in 0..r {
                    row[q * rm + k] = (row[q * rm + k] + c[q]) % mk;
                }
                for kk in 0..rm {
                    row[j * rm + kk] = (row[j * rm + kk] + mk - t.psi[i].entries[k][kk] % mk) % mk;
                    row[i * rm + kk] = (row[i * rm + kk] + t.psi[j].entries[k][kk]) % mk;
                }
            }
            push_rows(&mut acc, m, &rows, nunk);
        }
    }
    let cycles = kernel_of_equations(&ring_of(m), &domain, acc.into_rows());
    let boundaries: Vec<Vec<u64>> = (0..rm)
        .map(|k| (0..r).flat_map(|i| t.psi[i].column(k)).collect())
        .collect();
    CohomologyGroup::new(domain, &cycles, &boundaries)
}

/// Additive extension of basis values `f(b_i)`.
pub fn eval_derivation(t: &LieTriple, v: &[u64], a: &[u64]) -> Vec<u64> {
    let rm = t.module.rank();
    let mut acc = t.module.zero();
    for (i, &c) in a.iter().enumerate() {
        acc = t.module.add(&acc, &t.module.scale(&v[i * rm..(i + 1) * rm], c as i128));
    }
    acc
}

/// First basis pair violating the derivation rule, or the torsion check
/// reported as `(i, i)`.
pub fn check_derivation(t: &LieTriple, v: &[u64]) -> Result<(), (usize, usize)> {
    let l = &t.ring;
    let rm = t.module.rank();
    for i in 0..l.rank() {
        let fi = &v[i * rm..(i + 1) * rm];
        if !t.module.is_zero(&t.module.scale(fi, l.module.modulus(i) as i128)) {
            return Err((i, i));
        }
    }
    for i in 0..l.rank() {
        for j in 0..l.rank() {
            let lhs = eval_derivation(t, v, &l.bracket(&l.basis(i), &l.basis(j)));
            let rhs = t.module.sub(
                &t.psi[i].apply(&v[j * rm..(j + 1) * rm]),
                &t.psi[j].apply(&v[i * rm..(i + 1) * rm]),
            );
            if lhs != rhs {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

// -- degree 2: the tail model --

/// `M`-valued affine forms: one row per module coordinate.
type Aff = Vec<Vec<u64>>;

/// An element `m + sum a_i b_i^` of an extension, `a` reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct EElem {
    m: Aff,
    a: Vec<u64>,
}

/// The extension `E` spanned by `M` and lifts `b_i^`, given the tails and
/// the `M`-parts of the basis brackets (as numbers or as unknowns).
pub(crate) struct TailModel<'a> {
    t: &'a LieTriple,
    width: usize,
    tails: Vec<Aff>,
    brk: Vec<Vec<EElem>>,
}

pub(crate) fn pair_count(r: usize) -> usize {
    r * (r.saturating_sub(1)) / 2
}

pub(crate) fn pair_index(r: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    i * r - i * (i + 1) / 2 + (j - i - 1)
}

impl<'a> TailModel<'a> {
    fn build(t: &'a LieTriple, width: usize, tails: Vec<Aff>, fparts: Vec<Aff>) -> Self {
        let r = t.ring.rank();
        let zero_e = EElem { m: vec![vec![0; width]; t.module.rank()], a: t.ring.zero() };
        let mut model = TailModel { t, width, tails, brk: vec![vec![zero_e; r]; r] };
        for i in 0..r {
            for j in i + 1..r {
                let e = EElem { m: fparts[pair_index(r, i, j)].clone(), a: t.ring.constant(i, j).to_vec() };
                model.brk[j][i] = model.neg(&e);
                model.brk[i][j] = e;
            }
        }
        model
    }

    /// Unknowns: `t_i` then `F_ij` (`i < j`), each a vector in `M`.
    pub(crate) fn symbolic(t: &'a LieTriple) -> Self {
        let (r, rm) = (t.ring.rank(), t.module.rank());
        let nunk = (r + pair_count(r)) * rm;
        let width = nunk + 1;
        let block = |b: usize| -> Aff {
            (0..rm)
                .map(|k| {
                    let mut row = vec![0; width];
                    row[b * rm + k] = 1 % t.module.modulus(k);
                    row
                })
                .collect()
        };
        let tails = (0..r).map(block).collect();
        let fparts = (0..pair_count(r)).map(|q| block(r + q)).collect();
        Self::build(t, width, tails, fparts)
    }

    pub(crate) fn numeric(t: &'a LieTriple, v: &[u64]) -> Self {
        let (r, rm) = (t.ring.rank(), t.module.rank());
        let block = |b: usize| -> Aff { (0..rm).map(|k| vec![v[b * rm + k]]).collect() };
        let tails = (0..r).map(block).collect();
        let fparts = (0..pair_count(r)).map(|q| block(r + q)).collect();
        Self::build(t, 1, tails, fparts)
    }

    fn modulus(&self, k: usize) -> u64 {
        self.t.module.modulus(k)
    }

    fn aff_zero(&self) -> Aff {
        vec![vec![0; self.width]; self.t.module.rank()]
    }

    fn aff_const(&self, m: &[u64]) -> Aff {
        let mut out = self.aff_zero();
        for (k, row) in out.iter_mut().enumerate() {
            row[self.width - 1] = m[k];
        }
        out
    }

    fn aff_add_scaled(&self, acc: &mut Aff, x: &Aff, c: u64) {
        for (k, (row, xr)) in acc.iter_mut().zip(x).enumerate() {
            let mk = self.modulus(k) as u128;
            let c = c as u128 % mk;
            for (a, &b) in row.iter_mut().zip(xr) {
                *a = ((*a as u128 + c * b as u128) % mk) as u64;
            }
        }
    }

    fn aff_act(&self, h: &HomMatrix, x: &Aff) -> Aff {
        let mut out = self.aff_zero();
        for (k, row) in out.iter_mut().enumerate() {
            let mk = self.modulus(k) as u128;
            for (l, xr) in x.iter().enumerate() {
                let c = h.entries[k][l] as u128;
                if c == 0 {
                    continue;
                }
                for (a, &b) in row.iter_mut().zip(xr) {
                    *a = ((*a as u128 + c * b as u128) % mk) as u64;
                }
            }
        }
        out
    }

    fn aff_neg(&self, x: &Aff) -> Aff {
        x.iter()
            .enumerate()
            .map(|(k, r)| {
                let mk = self.modulus(k);
                r.iter().map(|&v| (mk - v % mk) % mk).collect()
            })
            .collect()
    }

    pub(crate) fn zero(&self) -> EElem {
        EElem { m: self.aff_zero(), a: self.t.ring.zero() }
    }

    pub(crate) fn lift(&self, a: &[u64]) -> EElem {
        EElem { m: self.aff_zero(), a: a.to_vec() }
    }

    pub(crate) fn from_m(&self, m: &[u64]) -> EElem {
        EElem { m: self.aff_const(m), a: self.t.ring.zero() }
    }

    pub(crate) fn add(&self, x: &EElem, y: &EElem) -> EElem {
        let l = &self.t.ring.module;
        let mut m = x.m.clone();
        self.aff_add_scaled(&mut m, &y.m, 1);
        let mut a = Vec::with_capacity(x.a.len());
        for i in 0..x.a.len() {
            let q = l.modulus(i);
            let s = x.a[i] + y.a[i];
            if s >= q {
                self.aff_add_scaled(&mut m, &self.tails[i], 1);
            }
            a.push(s % q);
        }
        EElem { m, a }
    }

    pub(crate) fn neg(&self, x: &EElem) -> EElem {
        let l = &self.t.ring.module;
        let mut m = self.aff_neg(&x.m);
        for i in 0..x.a.len() {
            if x.a[i] != 0 {
                let nt = self.aff_neg(&self.tails[i]);
                self.aff_add_scaled(&mut m, &nt, 1);
            }
        }
        EElem { m, a: l.neg(&x.a) }
    }

    pub(crate) fn scale(&self, x: &EElem, n: u64) -> EElem {
        let l = &self.t.ring.module;
        let mut m = self.aff_zero();
        self.aff_add_scaled(&mut m, &x.m, n);
        let mut a = Vec::with_capacity(x.a.len());
        for i in 0..x.a.len() {
            let q = l.modulus(i) as u128;
            let s = n as u128 * x.a[i] as u128;
            let carry = (s / q) as u64;
            if carry != 0 {
                self.aff_add_scaled(&mut m, &self.tails[i], carry);
            }
            a.push((s % q) as u64);
        }
        EElem { m, a }
    }

    pub(crate) fn bracket(&self, x: &EElem, y: &EElem) -> EElem {
        let r = x.a.len();
        let mut acc = self.zero();
        for i in 0..r {
            if x.a[i] == 0 {
                continue;
            }
            for j in 0..r {
                if y.a[j] == 0 || i == j {
                    continue;
                }
                let c = x.a[i] * y.a[j];
                acc = self.add(&acc, &self.scale(&self.brk[i][j], c));
            }
        }
        let mut m = self.aff_act(&self.t.psi_of(&x.a), &y.m);
        let neg = self.aff_neg(&self.aff_act(&self.t.psi_of(&y.a), &x.m));
        self.aff_add_scaled(&mut m, &neg, 1);
        self.aff_add_scaled(&mut acc.m, &m, 1);
        acc
    }

    /// All structural constraints on the tails, as elements that must vanish.
    fn constraints(&self) -> Vec<EElem> {
        let l = &self.t.ring;
        let r = l.rank();
        let mut out = Vec::new();
        for i in 0..r {
            let pe = l.module.modulus(i);
            for j in 0..r {
                // p^{e_i} [b_i^, b_j^] + psi_j t_i
                let mut c = self.scale(&self.brk[i][j], pe);
                let act = self.aff_act(&self.t.psi[j], &self.tails[i]);
                self.aff_add_scaled(&mut c.m, &act, 1);
                out.push(c);
            }
        }
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let (bi, bj, bk) = (self.lift(&l.basis(i)), self.lift(&l.basis(j)), self.lift(&l.basis(k)));
                    let x = self.bracket(&bi, &self.bracket(&bj, &bk));
                    let y = self.bracket(&bj, &self.bracket(&bk, &bi));
                    let z = self.bracket(&bk, &self.bracket(&bi, &bj));
                    out.push(self.add(&self.add(&x, &y), &z));
                }
            }
        }
        out
    }

    pub(crate) fn m_part(&self, x: &EElem) -> Vec<u64> {
        x.m.iter().map(|row| row[self.width - 1]).collect()
    }

    pub(crate) fn a_part<'b>(&self, x: &'b EElem) -> &'b [u64] {
        &x.a
    }
}

/// Lie `H^2` in the tail model: unknowns `t_i` then `F_ij` for `i < j`.
pub fn lie_h2(t: &LieTriple) -> CohomologyGroup {
    let l = &t.ring;
    let m = &t.module;
    let (r, rm) = (l.rank(), m.rank());
    let blocks = r + pair_count(r);
    let domain = repeat_exps(m, blocks);
    if rm == 0 {
        return CohomologyGroup::new(domain, &[], &[]);
    }
    let nunk = blocks * rm;
    let model = TailModel::symbolic(t);
    let mut acc = EquationAccumulator::new(ring_of(m), nunk);
    for c in model.constraints() {
        debug_assert!(l.module.is_zero(&c.a));
        push_rows(&mut acc, m, &c.m, nunk);
    }
    let cycles = kernel_of_equations(&ring_of(m), &domain, acc.into_rows());
    let mut boundaries = Vec::new();
    for lb in 0..r {
        for k in 0..rm {
            boundaries.push(tail_coboundary(t, lb, &m.unit(k)));
        }
    }
    CohomologyGroup::new(domain, &cycles, &boundaries)
}

/// Effect on `(t, F)` of moving the lift of `b_l` by `h`.
fn tail_coboundary(t: &LieTriple, lb: usize, h: &[u64]) -> Vec<u64> {
    let l = &t.ring;
    let m = &t.module;
    let r = l.rank();
    let mut v = Vec::new();
    for i in 0..r {
        if i == lb {
            v.extend(m.scale(h, l.module.modulus(i) as i128));
        } else {
            v.extend(m.zero());
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            let mut f = m.scale(h, -(l.constant(i, j)[lb] as i128));
            if j == lb {
                f = m.add(&f, &t.psi[i].apply(h));
            }
            if i == lb {
                f = m.sub(&f, &t.psi[j].apply(h));
            }
            v.extend(f);
        }
    }
    v
}

/// Checks a tail vector against every constraint; reports the first
/// failing one.
pub fn check_tails(t: &LieTriple, v: &[u64]) -> Result<(), String> {
    let model = TailModel::numeric(t, v);
    let r = t.ring.rank();
    for (n, c) in model.constraints().iter().enumerate() {
        if !t.module.is_zero(&model.m_part(c)) {
            return Err(if n < r * r {
                format!("p^e_{} [b{}, b{}] + psi(b{}) t{} != 0", n / r + 1, n / r + 1, n % r + 1, n % r + 1, n / r + 1)
            } else {
                "Jacobi identity fails on a basis triple".to_string()
            });
        }
    }
    Ok(())
}

/// The pair `(g, f)` describing an extension on the set `M x L`:
/// `(m, a) + (n, b) = (m + n + g(a, b), a + b)` and
/// `[(m, a), (n, b)] = (f(a, b) + psi(a) n - psi(b) m, [a, b])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieFactorSystem {
    /// `g[x * n + y]`, indices of `L` elements.
    pub g: Vec<Vec<u64>>,
    pub f: Vec<Vec<u64>>,
}

impl LieFactorSystem {
    pub fn from_tails(t: &LieTriple, v: &[u64]) -> Self {
        let model = TailModel::numeric(t, v);
        let elems: Vec<LieElement> = t.ring.elements().collect();
        let mut g = Vec::with_capacity(elems.len() * elems.len());
        let mut f = Vec::with_capacity(elems.len() * elems.len());
        for a in &elems {
            for b in &elems {
                g.push(model.m_part(&model.add(&model.lift(a), &model.lift(b))));
                f.push(model.m_part(&model.bracket(&model.lift(a), &model.lift(b))));
            }
        }
        LieFactorSystem { g, f }
    }

    fn at<'b>(&self, tab: &'b [Vec<u64>], l: &NilLieRing, a: &[u64], b: &[u64]) -> &'b [u64] {
        let n = l.order() as usize;
        &tab[l.module.index_of(a) * n + l.module.index_of(b)]
    }

    /// The four families of identities; the first failure is reported with
    /// its arguments.
    pub fn check(&self, t: &LieTriple) -> Result<(), String> {
        let l = &t.ring;
        let m = &t.module;
        let elems: Vec<LieElement> = l.elements().collect();
        let n = elems.len();
        let idx = |a: &[u64]| l.module.index_of(a);
        let sum: Vec<usize> = (0..n * n).map(|k| idx(&l.add(&elems[k / n], &elems[k % n]))).collect();
        let br: Vec<usize> = (0..n * n).map(|k| idx(&l.bracket(&elems[k / n], &elems[k % n]))).collect();
        let psi: Vec<HomMatrix> = elems.iter().map(|a| t.psi_of(a)).collect();
        let g = |a: usize, b: usize| &self.g[a * n + b];
        let f = |a: usize, b: usize| &self.f[a * n + b];
        let z = idx(&l.zero());
        let show = |a: usize| format!("{:?}", elems[a]);
        for a in 0..n {
            if !m.is_zero(g(a, z)) || !m.is_zero(g(z, a)) {
                return Err(format!("g not normalized at {}", show(a)));
            }
            if !m.is_zero(f(a, a)) {
                return Err(format!("f({0}, {0}) != 0", show(a)));
            }
            for b in 0..n {
                if g(a, b) != g(b, a) {
                    return Err(format!("g not symmetric at ({}, {})", show(a), show(b)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = sum[a * n + b];
                for c in 0..n {
                    let at = |msg: &str| format!("{msg} at ({}, {}, {})", show(a), show(b), show(c));
                    let lhs = m.add(g(a, b), g(ab, c));
                    let rhs = m.add(g(b, c), g(a, sum[b * n + c]));
                    if lhs != rhs {
                        return Err(at("g cocycle identity fails"));
                    }
                    let lhs = m.sub(f(ab, c), &psi[c].apply(g(a, b)));
                    let rhs = m.add(&m.add(f(a, c), f(b, c)), g(br[a * n + c], br[b * n + c]));
                    if lhs != rhs {
                        return Err(at("twisted biadditivity fails"));
                    }
                    let mut s = m.zero();
                    for (x, y, w) in [(a, b, c), (b, c, a), (c, a, b)] {
                        s = m.add(&s, &m.sub(f(br[x * n + y], w), &psi[w].apply(f(x, y))));
                    }
                    let u1 = br[br[a * n + b] * n + c];
                    let u2 = br[br[b * n + c] * n + a];
                    let u3 = br[br[c * n + a] * n + b];
                    s = m.add(&s, g(u1, u2));
                    s = m.add(&s, g(sum[u1 * n + u2], u3));
                    if !m.is_zero(&s) {
                        return Err(at("twisted Jacobi fails"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Tails and bracket parts relative to the lifts `(0, b_i)`.
    pub fn to_tails(&self, t: &LieTriple) -> Vec<u64> {
        let l = &t.ring;
        let m = &t.module;
        let add = |x: &(Vec<u64>, LieElement), y: &(Vec<u64>, LieElement)| {
            (m.add(&m.add(&x.0, &y.0), self.at(&self.g, l, &x.1, &y.1)), l.add(&x.1, &y.1))
        };
        let neg = |x: &(Vec<u64>, LieElement)| {
            let na = l.neg(&x.1);
            (m.neg(&m.add(&x.0, self.at(&self.g, l, &x.1, &na))), na)
        };
        let zero = (m.zero(), l.zero());
        let times = |x: &(Vec<u64>, LieElement), n: u64| crate::bchgroup::power(x, n, &zero, &add);
        let r = l.rank();
        let mut v = Vec::new();
        for i in 0..r {
            let x = times(&(m.zero(), l.basis(i)), l.module.modulus(i));
            v.extend(x.0);
        }
        for i in 0..r {
            for j in i + 1..r {
                let br = (self.at(&self.f, l, &l.basis(i), &l.basis(j)).to_vec(), l.bracket(&l.basis(i), &l.basis(j)));
                let mut s = zero.clone();
                for (k, &c) in l.constant(i, j).iter().enumerate() {
                    s = add(&s, &times(&(m.zero(), l.basis(k)), c));
                }
                let d = add(&br, &neg(&s));
                debug_assert!(l.module.is_zero(&d.1));
                v.extend(d.0);
            }
        }
        v
    }
}

/// `0 -> M -> E -> L -> 0` with `E` as a Lie ring.
#[derive(Clone, Debug)]
pub struct LieExtension {
    pub ring: NilLieRing,
    pub iota: HomMatrix,
    pub proj: HomMatrix,
    /// Chosen preimages of the basis of `L`.
    pub lifts: Vec<LieElement>,
}

impl LieExtension {
    /// `E = (M + Z^r) / (p^{e_i} b_i - t_i)` with the bracket of the tail
    /// model.
    pub fn from_tails(t: &LieTriple, v: &[u64]) -> Self {
        let l = &t.ring;
        let m = &t.module;
        let model = TailModel::numeric(t, v);
        let (r, rm) = (l.rank(), m.rank());
        let big = l.module.max_exp() + m.max_exp().max(1);
        let mut exps = m.exps.clone();
        exps.extend(std::iter::repeat(big).take(r));
        let ambient = AbelianPGroup::new(l.p, exps);
        let rels: Vec<Vec<u64>> = (0..r)
            .map(|i| {
                let mut x: Vec<i128> = m.neg(&v[i * rm..(i + 1) * rm]).iter().map(|&c| c as i128).collect();
                x.extend((0..r).map(|j| if j == i { l.module.modulus(i) as i128 } else { 0 }));
                ambient.reduce_signed(&x)
            })
            .collect();
        let q = AbelianQuotient::new(&ambient, &rels);
        let to_e = |x: &EElem| -> Vec<u64> {
            let mut w = model.m_part(x);
            w.extend_from_slice(model.a_part(x));
            q.project(&w)
        };
        let from_e = |y: &[u64]| -> EElem {
            let w = q.lift(y);
            let mut e = model.from_m(&w[..rm]);
            for i in 0..r {
                let mut bi = l.zero();
                bi[i] = 1;
                e = model.add(&e, &model.scale(&model.lift(&bi), w[rm + i]));
            }
            e
        };
        let n = q.quotient.rank();
        let basis: Vec<EElem> = (0..n).map(|k| from_e(&q.quotient.unit(k))).collect();
        let consts: Vec<Vec<Vec<u64>>> = (0..n)
            .map(|i| (0..n).map(|j| to_e(&model.bracket(&basis[i], &basis[j]))).collect())
            .collect();
        let labels = (0..n).map(|i| format!("e{}", i + 1)).collect();
        let ring = NilLieRing::from_constants(l.p, labels, q.quotient.exps.clone(), consts);
        let iota_cols: Vec<Vec<u64>> = (0..rm).map(|k| to_e(&model.from_m(&m.unit(k)))).collect();
        let iota = HomMatrix::new(m.clone(), ring.module.clone(), transpose(&iota_cols, n)).expect("iota");
        let proj_cols: Vec<Vec<u64>> = basis.iter().map(|e| model.a_part(e).to_vec()).collect();
        let proj = HomMatrix::new(ring.module.clone(), l.module.clone(), transpose(&proj_cols, r)).expect("proj");
        let lifts = (0..r).map(|i| to_e(&model.lift(&l.basis(i)))).collect();
        LieExtension { ring, iota, proj, lifts }
    }

    fn iota_inverse(&self, t: &LieTriple, y: &[u64]) -> Result<Vec<u64>, CohomologyError> {
        let solver = LinearSolver::new(&t.module, &self.ring.module, &self.iota.entries);
        solver.solve(y).ok_or_else(|| CohomologyError::Internal("element does not lie in M".into()))
    }

    /// Tails and bracket parts of the stored lifts.
    pub fn tails(&self, t: &LieTriple) -> Result<Vec<u64>, CohomologyError> {
        let l = &t.ring;
        let e = &self.ring;
        let r = l.rank();
        let mut v = Vec::new();
        for i in 0..r {
            v.extend(self.iota_inverse(t, &e.scale(&self.lifts[i], l.module.modulus(i) as i128))?);
        }
        for i in 0..r {
            for j in i + 1..r {
                let mut y = e.bracket(&self.lifts[i], &self.lifts[j]);
                for (k, &c) in l.constant(i, j).iter().enumerate() {
                    y = e.sub(&y, &e.scale(&self.lifts[k], c as i128));
                }
                v.extend(self.iota_inverse(t, &y)?);
            }
        }
        Ok(v)
    }

    /// Baer sum: pullback over `L` modulo the antidiagonal copy of `M`.
    pub fn baer_sum(&self, other: &LieExtension, t: &LieTriple) -> Result<LieExtension, CohomologyError> {
        let l = &t.ring;
        let m = &t.module;
        let sum = self.ring.direct_sum(&other.ring);
        let n1 = self.ring.rank();
        let split = |x: &[u64]| (x[..n1].to_vec(), x[n1..].to_vec());
        let join = |a: &[u64], b: &[u64]| [a, b].concat();
        // kernel of (x1, x2) -> proj1 x1 - proj2 x2
        let rows: Vec<Vec<u64>> = (0..l.rank())
            .map(|i| {
                let mi = l.module.modulus(i);
                let mut row = self.proj.entries[i].clone();
                row.extend(other.proj.entries[i].iter().map(|&c| (mi - c % mi) % mi));
                row
            })
            .collect();
        let pb = Subgroup::new(&sum.module, &crate::ring::kernel_mixed(&sum.module, &l.module, &rows));
        let (pring, pbasis) = sum.subring_ring(&pb)?;
        let coords = |x: &[u64]| pbasis.coordinates(x).expect("in the pullback");
        let anti: Vec<Vec<u64>> = (0..m.rank())
            .map(|k| {
                let u = m.unit(k);
                coords(&join(&self.iota.apply(&u), &other.iota.apply(&m.neg(&u))))
            })
            .collect();
        let ideal = pring.ideal_closure(&anti);
        let (ring, q) = pring.quotient_ring(&ideal)?;
        let n = ring.rank();
        let iota_cols: Vec<Vec<u64>> = (0..m.rank())
            .map(|k| q.project(&coords(&join(&self.iota.apply(&m.unit(k)), &other.ring.zero()))))
            .collect();
        let proj_cols: Vec<Vec<u64>> = (0..n)
            .map(|k| {
                let x = pbasis.combine(&q.lift(&ring.module.unit(k)));
                self.proj.apply(&split(&x).0)
            })
            .collect();
        let lifts =
            (0..l.rank()).map(|i| q.project(&coords(&join(&self.lifts[i], &other.lifts[i])))).collect();
        Ok(LieExtension {
            iota: HomMatrix::new(m.clone(), ring.module.clone(), transpose(&iota_cols, n))?,
            proj: HomMatrix::new(ring.module.clone(), l.module.clone(), transpose(&proj_cols, l.rank()))?,
            ring,
            lifts,
        })
    }
}

pub(crate) fn transpose(cols: &[Vec<u64>], rows: usize) -> Vec<Vec<u64>> {
    (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liering::{abelian, heisenberg};

    fn trivial(l: NilLieRing, exps: Vec<u32>) -> LieTriple {
        let p = l.p;
        LieTriple::trivial(l, AbelianPGroup::new(p, exps))
    }

    #[test]
    fn low_degree_examples() {
        let t = trivial(abelian(5, vec![1]), vec![1]);
        assert_eq!(lie_h1(&t).invariants().factors(), vec![5]);
        assert_eq!(lie_h2(&t).invariants().factors(), vec![5]);
        let t = trivial(abelian(5, vec![1, 1]), vec![1]);
        assert_eq!(lie_h2(&t).invariants().order(), 125);
        let t = trivial(heisenberg(5, 1), vec![1]);
        assert_eq!(lie_h1(&t).invariants().factors(), vec![5, 5]);
    }

    #[test]
    fn extension_round_trip() {
        let t = trivial(heisenberg(5, 1), vec![1]);
        let h2 = lie_h2(&t);
        for (n, g) in h2.generators().into_iter().enumerate() {
            check_tails(&t, &g).unwrap();
            let fs = LieFactorSystem::from_tails(&t, &g);
            if n == 0 {
                fs.check(&t).unwrap();
            }
            assert_eq!(h2.classify(&fs.to_tails(&t)), h2.classify(&g));
            let e = LieExtension::from_tails(&t, &g);
            assert!(e.ring.validate().is_empty());
            assert_eq!(e.ring.order(), 625);
            let back = e.tails(&t).unwrap();
            assert_eq!(h2.classify(&back), h2.classify(&g));
            let s = e.baer_sum(&e, &t).unwrap();
            let twice = h2.classify(&s.tails(&t).unwrap()).unwrap();
            assert_eq!(twice, h2.classes().scale(&h2.classify(&g).unwrap(), 2));
        }
    }

    #[test]
    fn bad_tails_rejected() {
        let t = trivial(abelian(5, vec![1, 1]), vec![1]);
        assert!(check_tails(&t, &[0, 0, 0]).is_ok());
        let adj = LieTriple::adjoint(heisenberg(5, 1));
        // t_z = x breaks p [b_z, b_y] + psi_y t_z = 0
        let mut v = vec![0u64; 6 * 3];
        v[2 * 3] = 1;
        assert!(check_tails(&adj, &v).is_err());
    }
}
