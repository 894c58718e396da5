//! Exact arithmetic over `Z/p^e` and p-local rationals, plus the linear
//! algebra the rest of the crate is built on.
//!
//! Finite abelian p-groups `Z/p^{e_1} + ... + Z/p^{e_r}` are handled by
//! embedding them into `(Z/p^E)^r` with `E = max e_i`: coordinate `i` is
//! scaled by `p^{E - e_i}`. Subgroups of the mixed module are then exactly
//! the subgroups of `(Z/p^E)^r` lying inside the image, and Howell form
//! over the single local ring `Z/p^E` does all the work.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

/// Rational number with an `i128` numerator and denominator. Used for
/// series coefficients that are later reduced modulo a prime power.
pub type PLocalRat = Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("p-adic pole: {p} divides the denominator of {value}")]
    PAdicPole { p: u64, value: String },
    #[error("mixed moduli: {0} and {1}")]
    MixedModuli(u64, u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("entry {value} out of range for order {order}")]
    OutOfRange { value: u64, order: u64 },
    #[error("map is not well defined on coordinate {0}")]
    IllDefined(usize),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn pow(p: u64, e: u32) -> u64 {
    p.checked_pow(e).expect("prime power overflows u64")
}

/// An element of `Z/p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PModInt {
    value: u64,
    modulus: u64,
}

impl PModInt {
    pub fn new(value: i128, modulus: u64) -> Self {
        assert!(modulus >= 2);
        let v = value.rem_euclid(modulus as i128) as u64;
        PModInt { value: v, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }
}

impl std::ops::Add for PModInt {
    type Output = PModInt;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        PModInt { value: (self.value + rhs.value) % self.modulus, modulus: self.modulus }
    }
}

impl std::ops::Sub for PModInt {
    type Output = PModInt;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        PModInt {
            value: (self.value + self.modulus - rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl std::ops::Mul for PModInt {
    type Output = PModInt;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let v = (self.value as u128 * rhs.value as u128 % self.modulus as u128) as u64;
        PModInt { value: v, modulus: self.modulus }
    }
}

impl std::ops::Neg for PModInt {
    type Output = PModInt;
    fn neg(self) -> Self {
        PModInt { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

impl fmt::Display for PModInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// `Z/p^e` as a context object. All hot-path arithmetic goes through raw
/// `u64` residues and one of these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub p: u64,
    pub e: u32,
    pub modulus: u64,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Self {
        debug_assert!(is_prime(p));
        let modulus = pow(p, e);
        assert!(modulus < (1 << 31), "modulus {modulus} too large");
        PrimePower { p, e, modulus }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.modulus
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub fn reduce(&self, a: i128) -> u64 {
        a.rem_euclid(self.modulus as i128) as u64
    }

    /// p-adic valuation, `e` for zero.
    pub fn val(&self, mut a: u64) -> u32 {
        a %= self.modulus;
        if a == 0 {
            return self.e;
        }
        let mut v = 0;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn inv_unit(&self, a: u64) -> u64 {
        let g = (a as i128).extended_gcd(&(self.modulus as i128));
        assert_eq!(g.gcd, 1, "{a} is not a unit mod {}", self.modulus);
        self.reduce(g.x)
    }

    /// `(unit, v)` with `a = unit * p^v`.
    pub fn split(&self, a: u64) -> (u64, u32) {
        let v = self.val(a);
        if v == self.e {
            return (0, v);
        }
        (a / pow(self.p, v), v)
    }

    pub fn ppow(&self, k: u32) -> u64 {
        if k >= self.e {
            0
        } else {
            pow(self.p, k)
        }
    }
}

/// Reduce a p-local rational modulo `p^e`.
pub fn reduce_local(q: &PLocalRat, p: u64, e: u32) -> Result<PModInt, RingError> {
    let ring = PrimePower::new(p, e);
    let den = *q.denom();
    if den.rem_euclid(p as i128) == 0 {
        return Err(RingError::PAdicPole { p, value: q.to_string() });
    }
    let num = ring.reduce(*q.numer());
    let den = ring.reduce(den);
    Ok(PModInt { value: ring.mul(num, ring.inv_unit(den)), modulus: ring.modulus })
}

/// Invariant factors of a finite abelian p-group, as exponents in
/// non-increasing order. An empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantFactors {
    pub p: u64,
    pub exponents: Vec<u32>,
}

impl InvariantFactors {
    pub fn new(p: u64, mut exponents: Vec<u32>) -> Self {
        exponents.retain(|&e| e > 0);
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        InvariantFactors { p, exponents }
    }

    pub fn trivial(p: u64) -> Self {
        InvariantFactors { p, exponents: vec![] }
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The factors as integers `p^{f_1} >= p^{f_2} >= ...`.
    pub fn factors(&self) -> Vec<u64> {
        self.exponents.iter().map(|&e| pow(self.p, e)).collect()
    }

    pub fn log_order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn order(&self) -> u128 {
        self.exponents.iter().map(|&e| pow(self.p, e) as u128).product()
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }
}

impl Serialize for InvariantFactors {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("InvariantFactors", 3)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("exponents", &self.exponents)?;
        st.serialize_field("factors", &self.factors())?;
        st.end()
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors().iter().map(|q| q.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Dense matrix over `Z/p^e`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PMatrix {
    pub ring: PrimePower,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl PMatrix {
    pub fn zeros(ring: PrimePower, rows: usize, cols: usize) -> Self {
        PMatrix { ring, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: PrimePower, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, 1 % ring.modulus);
        }
        m
    }

    pub fn from_rows(ring: PrimePower, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(ring, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % ring.modulus);
            }
        }
        m
    }

    /// Build from typed entries; every entry must share one prime-power modulus.
    pub fn from_entries(entries: &[Vec<PModInt>]) -> Result<Self, RingError> {
        let first = entries
            .iter()
            .flat_map(|r| r.iter())
            .next()
            .ok_or_else(|| RingError::Shape("empty matrix".into()))?;
        let modulus = first.modulus;
        let cols = entries[0].len();
        let (p, e) = prime_power_parts(modulus)?;
        let ring = PrimePower::new(p, e);
        let mut m = Self::zeros(ring, entries.len(), cols);
        for (i, r) in entries.iter().enumerate() {
            if r.len() != cols {
                return Err(RingError::Shape("ragged rows".into()));
            }
            for (j, x) in r.iter().enumerate() {
                if x.modulus != modulus {
                    return Err(RingError::MixedModuli(modulus, x.modulus));
                }
                m.set(i, j, x.value);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> PModInt {
        PModInt { value: self.get(i, j), modulus: self.ring.modulus }
    }

    pub fn mul(&self, other: &PMatrix) -> PMatrix {
        assert_eq!(self.cols, other.rows);
        let r = &self.ring;
        let mut out = PMatrix::zeros(*r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = r.add(out.get(i, j), r.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let r = &self.ring;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| r.add(acc, r.mul(a, b)))
            })
            .collect()
    }

    pub fn transpose(&self) -> PMatrix {
        let mut t = PMatrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
}

fn prime_power_parts(q: u64) -> Result<(u64, u32), RingError> {
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    if r != 1 {
        return Err(RingError::NotPrime(q));
    }
    Ok((p, e))
}

fn axpy(ring: &PrimePower, dst: &mut [u64], q: u64, src: &[u64]) {
    if q == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = ring.add(*d, ring.mul(q, s));
        }
    }
}

fn scale(ring: &PrimePower, v: &mut [u64], q: u64) {
    for x in v.iter_mut() {
        *x = ring.mul(*x, q);
    }
}

fn first_nonzero(v: &[u64]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

/// Howell form of a row list over `Z/p^e`. Rows of the result are sorted by
/// pivot column, pivots are powers of `p`, entries above a pivot `p^v` lie
/// in `[0, p^v)`, and the row span is closed in the Howell sense: the rows
/// with zeros in the first `k` columns span every element of the row span
/// with zeros in those columns.
///
/// Each returned row is paired with its transform (a combination of the
/// input rows) when `track` is set.
fn howell_rows(
    ring: &PrimePower,
    cols: usize,
    rows: Vec<Vec<u64>>,
    track: bool,
) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
    let n_in = rows.len();
    let mut work: Vec<(Vec<u64>, Vec<u64>)> = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let t = if track {
                let mut t = vec![0; n_in];
                t[i] = 1 % ring.modulus;
                t
            } else {
                Vec::new()
            };
            (r, t)
        })
        .filter(|(r, _)| r.iter().any(|&x| x != 0))
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r >= work.len() {
            break;
        }
        let mut best: Option<(usize, u32)> = None;
        for (k, (row, _)) in work.iter().enumerate().skip(r) {
            let x = row[c];
            if x != 0 {
                let v = ring.val(x);
                if best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((k, v));
                    if v == 0 {
                        break;
                    }
                }
            }
        }
        let Some((k, v)) = best else { continue };
        work.swap(r, k);
        let (unit, _) = ring.split(work[r].0[c]);
        let uinv = ring.inv_unit(unit);
        {
            let (row, t) = &mut work[r];
            scale(ring, row, uinv);
            scale(ring, t, uinv);
        }
        let pv = pow(ring.p, v);
        let (prow, ptr) = work[r].clone();
        let (head, tail) = work.split_at_mut(r + 1);
        for (row, t) in tail.iter_mut() {
            let x = row[c];
            if x != 0 {
                let q = ring.neg(x / pv);
                axpy(ring, row, q, &prow);
                axpy(ring, t, q, &ptr);
            }
        }
        for (row, t) in head[..r].iter_mut() {
            let x = row[c];
            if x >= pv {
                let q = ring.neg(x / pv);
                axpy(ring, row, q, &prow);
                axpy(ring, t, q, &ptr);
            }
        }
        if v > 0 {
            let ann = ring.ppow(ring.e - v);
            let mut row = prow.clone();
            let mut t = ptr.clone();
            scale(ring, &mut row, ann);
            scale(ring, &mut t, ann);
            if row.iter().any(|&x| x != 0) {
                work.push((row, t));
            }
        }
        work.retain(|(row, _)| row.iter().any(|&x| x != 0));
        r += 1;
    }
    work.truncate(r);
    work.into_iter().unzip()
}

/// Howell form `H` of `a` with a transform `U` such that `H = U a`.
///
/// `H` may have more rows than `a` (annihilator rows are made explicit) and
/// zero rows are dropped, so `U` is rectangular.
pub fn howell_form(a: &PMatrix) -> (PMatrix, PMatrix) {
    let (h, u) = howell_rows(&a.ring, a.cols, a.row_vecs(), true);
    let hm = PMatrix::from_rows(a.ring, a.cols, &h);
    let um = PMatrix::from_rows(a.ring, a.rows, &u);
    (hm, um)
}

/// A finite abelian p-group `Z/p^{e_1} + ... + Z/p^{e_r}`. Elements are
/// coordinate vectors with entry `i` in `[0, p^{e_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianPGroup {
    pub p: u64,
    pub exps: Vec<u32>,
}

impl AbelianPGroup {
    pub fn new(p: u64, exps: Vec<u32>) -> Self {
        AbelianPGroup { p, exps }
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn max_exp(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    pub fn order(&self) -> u64 {
        self.exps.iter().map(|&e| pow(self.p, e)).product()
    }

    pub fn modulus(&self, i: usize) -> u64 {
        pow(self.p, self.exps[i])
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn unit(&self, i: usize) -> Vec<u64> {
        let mut v = self.zero();
        v[i] = 1 % self.modulus(i);
        v
    }

    pub fn reduce(&self, v: &mut [u64]) {
        for (i, x) in v.iter_mut().enumerate() {
            *x %= self.modulus(i);
        }
    }

    pub fn reduce_signed(&self, v: &[i128]) -> Vec<u64> {
        v.iter()
            .enumerate()
            .map(|(i, &x)| x.rem_euclid(self.modulus(i) as i128) as u64)
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        (0..self.rank()).map(|i| (a[i] + b[i]) % self.modulus(i)).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        (0..self.rank())
            .map(|i| {
                let m = self.modulus(i);
                (a[i] + m - b[i] % m) % m
            })
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        (0..self.rank()).map(|i| (self.modulus(i) - a[i]) % self.modulus(i)).collect()
    }

    pub fn scale(&self, a: &[u64], k: i128) -> Vec<u64> {
        (0..self.rank())
            .map(|i| {
                let m = self.modulus(i) as i128;
                ((a[i] as i128 % m) * k.rem_euclid(m)).rem_euclid(m) as u64
            })
            .collect()
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.rank() && v.iter().enumerate().all(|(i, &x)| x < self.modulus(i))
    }

    /// Mixed-radix index, coordinate 0 most significant.
    pub fn index_of(&self, v: &[u64]) -> usize {
        let mut idx = 0usize;
        for (i, &x) in v.iter().enumerate() {
            idx = idx * self.modulus(i) as usize + x as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> Vec<u64> {
        let mut v = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let m = self.modulus(i) as usize;
            v[i] = (idx % m) as u64;
            idx /= m;
        }
        v
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    pub fn direct_sum(&self, other: &AbelianPGroup) -> AbelianPGroup {
        assert_eq!(self.p, other.p);
        let mut exps = self.exps.clone();
        exps.extend_from_slice(&other.exps);
        AbelianPGroup { p: self.p, exps }
    }

    /// The embedding ring `Z/p^E` for a family of groups.
    pub fn embedding_ring(p: u64, groups: &[&AbelianPGroup]) -> PrimePower {
        let e = groups.iter().map(|g| g.max_exp()).max().unwrap_or(1).max(1);
        PrimePower::new(p, e)
    }

    pub fn embed(&self, ring: &PrimePower, v: &[u64]) -> Vec<u64> {
        v.iter()
            .enumerate()
            .map(|(i, &x)| ring.mul(x % self.modulus(i), ring.ppow(ring.e - self.exps[i])))
            .collect()
    }

    /// Inverse of [`embed`](Self::embed); entries must be divisible.
    pub fn unembed(&self, ring: &PrimePower, v: &[u64]) -> Vec<u64> {
        v.iter()
            .enumerate()
            .map(|(i, &x)| {
                let s = pow(ring.p, ring.e - self.exps[i]);
                debug_assert_eq!(x % s, 0);
                (x / s) % self.modulus(i)
            })
            .collect()
    }
}

/// A homomorphism between finite abelian p-groups given by an integer
/// matrix acting on column vectors. Entry `(i, j)` is reduced mod the order
/// of target coordinate `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomMatrix {
    pub source: AbelianPGroup,
    pub target: AbelianPGroup,
    /// `target.rank()` rows of `source.rank()` entries.
    pub entries: Vec<Vec<u64>>,
}

impl HomMatrix {
    pub fn new(
        source: AbelianPGroup,
        target: AbelianPGroup,
        mut entries: Vec<Vec<u64>>,
    ) -> Result<Self, RingError> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(RingError::Shape(format!(
                "expected {}x{} matrix",
                target.rank(),
                source.rank()
            )));
        }
        for (i, row) in entries.iter_mut().enumerate() {
            let m = target.modulus(i);
            for (j, x) in row.iter_mut().enumerate() {
                *x %= m;
                // p^{e_j} * x must vanish mod p^{f_i}
                let k = (*x as u128) * (source.modulus(j) as u128);
                if k % m as u128 != 0 {
                    return Err(RingError::IllDefined(j));
                }
            }
        }
        Ok(HomMatrix { source, target, entries })
    }

    pub fn zero(source: AbelianPGroup, target: AbelianPGroup) -> Self {
        let entries = vec![vec![0; source.rank()]; target.rank()];
        HomMatrix { source, target, entries }
    }

    pub fn identity(g: AbelianPGroup) -> Self {
        let n = g.rank();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1 % g.modulus(i) } else { 0 }).collect())
            .collect();
        HomMatrix { source: g.clone(), target: g, entries }
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.target.rank())
            .map(|i| {
                let m = self.target.modulus(i) as u128;
                let s: u128 = self.entries[i]
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u128 * b as u128 % m)
                    .sum();
                (s % m) as u64
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HomMatrix) -> HomMatrix {
        assert_eq!(other.target, self.source);
        let cols: Vec<Vec<u64>> =
            (0..other.source.rank()).map(|j| self.apply(&other.column(j))).collect();
        let entries = (0..self.target.rank())
            .map(|i| cols.iter().map(|c| c[i]).collect())
            .collect();
        HomMatrix { source: other.source.clone(), target: self.target.clone(), entries }
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        self.entries.iter().map(|r| r[j]).collect()
    }

    pub fn add(&self, other: &HomMatrix) -> HomMatrix {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .enumerate()
            .map(|(i, (a, b))| {
                let m = self.target.modulus(i);
                a.iter().zip(b).map(|(x, y)| (x + y) % m).collect()
            })
            .collect();
        HomMatrix { source: self.source.clone(), target: self.target.clone(), entries }
    }

    pub fn scale(&self, k: i128) -> HomMatrix {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let m = self.target.modulus(i) as i128;
                r.iter().map(|&x| ((x as i128) * k.rem_euclid(m)).rem_euclid(m) as u64).collect()
            })
            .collect();
        HomMatrix { source: self.source.clone(), target: self.target.clone(), entries }
    }

    pub fn sub(&self, other: &HomMatrix) -> HomMatrix {
        self.add(&other.scale(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    /// Kernel generators of `self`.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        kernel_mixed(&self.source, &self.target, &self.entries)
    }

    /// Image generators.
    pub fn image(&self) -> Vec<Vec<u64>> {
        (0..self.source.rank()).map(|j| self.column(j)).filter(|c| c.iter().any(|&x| x != 0)).collect()
    }
}

/// Span-level view of a subgroup of an [`AbelianPGroup`], stored as a Howell
/// basis of its embedding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub ambient: AbelianPGroup,
    ring: PrimePower,
    howell: Vec<Vec<u64>>,
}

impl Subgroup {
    pub fn new(ambient: &AbelianPGroup, gens: &[Vec<u64>]) -> Self {
        let ring = AbelianPGroup::embedding_ring(ambient.p, &[ambient]);
        let rows: Vec<Vec<u64>> = gens.iter().map(|g| ambient.embed(&ring, g)).collect();
        let (howell, _) = howell_rows(&ring, ambient.rank(), rows, false);
        Subgroup { ambient: ambient.clone(), ring, howell }
    }

    pub fn zero(ambient: &AbelianPGroup) -> Self {
        Self::new(ambient, &[])
    }

    pub fn whole(ambient: &AbelianPGroup) -> Self {
        let gens: Vec<Vec<u64>> = (0..ambient.rank()).map(|i| ambient.unit(i)).collect();
        Self::new(ambient, &gens)
    }

    /// Generators in ambient coordinates.
    pub fn generators(&self) -> Vec<Vec<u64>> {
        self.howell.iter().map(|r| self.ambient.unembed(&self.ring, r)).collect()
    }

    pub fn log_order(&self) -> u32 {
        self.howell
            .iter()
            .map(|r| {
                let c = first_nonzero(r).unwrap();
                self.ring.e - self.ring.val(r[c])
            })
            .sum()
    }

    pub fn order(&self) -> u64 {
        pow(self.ambient.p, self.log_order())
    }

    pub fn is_zero(&self) -> bool {
        self.howell.is_empty()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = self.ambient.embed(&self.ring, v);
        reduce_against(&self.ring, &self.howell, &mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Subgroup::new(&self.ambient, &gens)
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        // enumerate combinations of Howell rows up to their additive orders
        let gens = self.generators();
        let mut out: std::collections::BTreeSet<Vec<u64>> = std::collections::BTreeSet::new();
        out.insert(self.ambient.zero());
        for g in &gens {
            let mut next = out.clone();
            for x in &out {
                let mut y = x.clone();
                loop {
                    y = self.ambient.add(&y, g);
                    if !next.insert(y.clone()) {
                        break;
                    }
                }
            }
            out = next;
        }
        out.into_iter().collect()
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.howell.cmp(&other.howell))
    }
}

fn reduce_against(ring: &PrimePower, howell: &[Vec<u64>], w: &mut [u64]) -> bool {
    for row in howell {
        let c = first_nonzero(row).unwrap();
        let x = w[c];
        if x == 0 {
            continue;
        }
        let pv = row[c];
        if x % pv != 0 {
            return false;
        }
        axpy(ring, w, ring.neg(x / pv), row);
    }
    true
}

/// Kernel of `x -> A x` from `source` to `target`; `a` has `target.rank()`
/// rows. Returns generators in `source` coordinates.
pub fn kernel_mixed(source: &AbelianPGroup, target: &AbelianPGroup, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let ring = AbelianPGroup::embedding_ring(source.p, &[source, target]);
    let m = target.rank();
    // equations, already scaled into Z/p^E
    let eq: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let s = ring.ppow(ring.e - target.exps[i]);
            a[i].iter().map(|&x| ring.mul(x % ring.modulus, s)).collect()
        })
        .collect();
    kernel_of_equations(&ring, source, eq)
}

/// Kernel of a system of equations `sum_j eq[j] x_j = 0 (mod p^E)` where
/// `x` ranges over `domain` (lifted to `Z/p^E` coordinates). The caller
/// guarantees each equation is well defined on `domain`.
pub fn kernel_of_equations(
    ring: &PrimePower,
    domain: &AbelianPGroup,
    equations: Vec<Vec<u64>>,
) -> Vec<Vec<u64>> {
    let n = domain.rank();
    let (h, _) = howell_rows(ring, n, equations, false);
    let k = h.len();
    // graph rows: (H x_j, e_j)
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            let mut r = vec![0; k + n];
            for (i, hr) in h.iter().enumerate() {
                r[i] = hr[j];
            }
            r[k + j] = 1 % ring.modulus;
            r
        })
        .collect();
    let (g, _) = howell_rows(ring, k + n, rows, false);
    let mut out = Vec::new();
    for r in g {
        let c = first_nonzero(&r).unwrap();
        if c >= k {
            let mut v: Vec<u64> = r[k..].to_vec();
            domain.reduce(&mut v);
            if v.iter().any(|&x| x != 0) {
                out.push(v);
            }
        }
    }
    // generators p^{e_j} e_j are zero in the domain; nothing else to add
    out
}

/// Incrementally assembled linear system over `Z/p^E`. Rows are added one
/// at a time and folded into a Howell basis in batches, so very tall
/// systems never materialize.
pub struct EquationAccumulator {
    ring: PrimePower,
    cols: usize,
    basis: Vec<Vec<u64>>,
    pending: Vec<Vec<u64>>,
}

impl EquationAccumulator {
    pub fn new(ring: PrimePower, cols: usize) -> Self {
        EquationAccumulator { ring, cols, basis: Vec::new(), pending: Vec::new() }
    }

    pub fn push(&mut self, mut row: Vec<u64>) {
        debug_assert_eq!(row.len(), self.cols);
        if !reduce_against(&self.ring, &self.basis, &mut row) {
            self.pending.push(row);
        } else if row.iter().any(|&x| x != 0) {
            self.pending.push(row);
        }
        if self.pending.len() >= 64.max(self.cols / 2) {
            self.flush();
        }
    }

    fn flush(&mut self) {
        if self.pending.is_empty() {
            return;
        }
        let mut rows = std::mem::take(&mut self.basis);
        rows.append(&mut self.pending);
        self.basis = howell_rows(&self.ring, self.cols, rows, false).0;
    }

    /// Current Howell basis of everything pushed so far.
    pub fn rows(&mut self) -> &[Vec<u64>] {
        self.flush();
        &self.basis
    }

    pub fn into_rows(mut self) -> Vec<Vec<u64>> {
        self.flush();
        self.basis
    }
}

/// Prepared solver for `A x = b` with `x` in `source` and `b` in `target`.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    ring: PrimePower,
    source: AbelianPGroup,
    target: AbelianPGroup,
    howell: Vec<Vec<u64>>,
    kernel: Vec<Vec<u64>>,
}

/// Solution set of a linear system: one particular solution plus kernel
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<u64>,
    pub kernel: Vec<Vec<u64>>,
}

impl LinearSolver {
    /// `a` has `target.rank()` rows and `source.rank()` columns.
    pub fn new(source: &AbelianPGroup, target: &AbelianPGroup, a: &[Vec<u64>]) -> Self {
        let ring = AbelianPGroup::embedding_ring(source.p, &[source, target]);
        let m = target.rank();
        let n = source.rank();
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|j| {
                let col: Vec<u64> = (0..m).map(|i| a[i][j] % target.modulus(i)).collect();
                let mut r = target.embed(&ring, &col);
                r.extend(source.embed(&ring, &source.unit(j)));
                r
            })
            .collect();
        let (howell, _) = howell_rows(&ring, m + n, rows, false);
        let kernel = howell
            .iter()
            .filter(|r| first_nonzero(r).unwrap() >= m)
            .map(|r| source.unembed(&ring, &r[m..]))
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        LinearSolver { ring, source: source.clone(), target: target.clone(), howell, kernel }
    }

    pub fn kernel(&self) -> &[Vec<u64>] {
        &self.kernel
    }

    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let m = self.target.rank();
        let mut w = self.target.embed(&self.ring, b);
        w.extend(std::iter::repeat(0).take(self.source.rank()));
        for row in &self.howell {
            let c = first_nonzero(row).unwrap();
            if c >= m {
                break;
            }
            let x = w[c];
            if x == 0 {
                continue;
            }
            if x % row[c] != 0 {
                return None;
            }
            axpy(&self.ring, &mut w, self.ring.neg(x / row[c]), row);
        }
        if w[..m].iter().any(|&x| x != 0) {
            return None;
        }
        // w = (0, -emb(x))
        let neg: Vec<u64> = w[m..].iter().map(|&x| self.ring.neg(x)).collect();
        Some(self.source.unembed(&self.ring, &neg))
    }
}

/// Solve `A x = b` over mixed modules. `None` when no solution exists.
pub fn solve_linear(
    source: &AbelianPGroup,
    target: &AbelianPGroup,
    a: &[Vec<u64>],
    b: &[u64],
) -> Option<Solution> {
    let s = LinearSolver::new(source, target, a);
    s.solve(b).map(|x| Solution { particular: x, kernel: s.kernel.clone() })
}

/// Smith normal form over `Z/p^E` of a relation matrix (rows are relations
/// among `cols` generators), tracking column operations `V` and `V^{-1}`.
/// Returns diagonal valuations (length `cols`, `E` where no pivot exists).
fn smith_columns(ring: &PrimePower, cols: usize, mut rel: Vec<Vec<u64>>) -> (Vec<u32>, Vec<Vec<u64>>, Vec<Vec<u64>>) {
    let n = cols;
    let mut v: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u64 % ring.modulus).collect()).collect();
    let mut vinv = v.clone();
    let mut diag = vec![ring.e; n];
    rel.retain(|r| r.iter().any(|&x| x != 0));
    let mut t = 0;
    while t < n {
        // min valuation entry in rel[t..][t..]
        let mut best: Option<(usize, usize, u32)> = None;
        'outer: for (i, r) in rel.iter().enumerate().skip(t) {
            for (j, &x) in r.iter().enumerate().skip(t) {
                if x != 0 {
                    let val = ring.val(x);
                    if best.map_or(true, |(_, _, b)| val < b) {
                        best = Some((i, j, val));
                        if val == 0 {
                            break 'outer;
                        }
                    }
                }
            }
        }
        let Some((bi, bj, val)) = best else { break };
        rel.swap(t, bi);
        if bj != t {
            for r in rel.iter_mut() {
                r.swap(t, bj);
            }
            for r in v.iter_mut() {
                r.swap(t, bj);
            }
            vinv.swap(t, bj);
        }
        let (unit, _) = ring.split(rel[t][t]);
        let uinv = ring.inv_unit(unit);
        scale(ring, &mut rel[t], uinv);
        let pv = pow(ring.p, val);
        let pivot_row = rel[t].clone();
        for r in rel.iter_mut().skip(t + 1) {
            let x = r[t];
            if x != 0 {
                axpy(ring, r, ring.neg(x / pv), &pivot_row);
            }
        }
        // column ops: col_j -= q col_t for j > t
        for j in t + 1..n {
            let x = rel[t][j];
            if x == 0 {
                continue;
            }
            let q = x / pv;
            let nq = ring.neg(q);
            for r in rel.iter_mut() {
                let a = r[t];
                if a != 0 {
                    r[j] = ring.add(r[j], ring.mul(nq, a));
                }
            }
            for r in v.iter_mut() {
                let a = r[t];
                r[j] = ring.add(r[j], ring.mul(nq, a));
            }
            // V^{-1}: row_t += q row_j
            let rowj = vinv[j].clone();
            axpy(ring, &mut vinv[t], q, &rowj);
        }
        diag[t] = val;
        t += 1;
    }
    (diag, v, vinv)
}

/// A quotient `A / S` of a finite abelian p-group with an explicit
/// isomorphism onto `Z/p^{d_1} + ... + Z/p^{d_k}`.
#[derive(Clone, Debug)]
pub struct AbelianQuotient {
    pub ambient: AbelianPGroup,
    pub quotient: AbelianPGroup,
    /// `quotient.rank()` rows: class coordinate k = sum_i proj[k][i] x_i.
    proj: Vec<Vec<u64>>,
    /// lifts of quotient generators, in ambient coordinates
    lifts: Vec<Vec<u64>>,
}

impl AbelianQuotient {
    pub fn new(ambient: &AbelianPGroup, relations: &[Vec<u64>]) -> Self {
        let p = ambient.p;
        let ring = AbelianPGroup::embedding_ring(p, &[ambient]);
        let n = ambient.rank();
        let mut rel: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = ring.ppow(ambient.exps[i]);
                r
            })
            .collect();
        rel.extend(relations.iter().map(|r| r.iter().map(|&x| x % ring.modulus).collect()));
        let (diag, v, vinv) = smith_columns(&ring, n, rel);
        let mut exps = Vec::new();
        let mut proj = Vec::new();
        let mut lifts = Vec::new();
        let mut order: Vec<usize> = (0..n).filter(|&k| diag[k] > 0).collect();
        order.sort_by(|&a, &b| diag[b].cmp(&diag[a]).then(a.cmp(&b)));
        for k in order {
            exps.push(diag[k]);
            let m = pow(p, diag[k]);
            proj.push((0..n).map(|i| v[i][k] % m).collect());
            let mut l = vinv[k].clone();
            ambient.reduce(&mut l);
            lifts.push(l);
        }
        AbelianQuotient { ambient: ambient.clone(), quotient: AbelianPGroup::new(p, exps), proj, lifts }
    }

    pub fn project(&self, x: &[u64]) -> Vec<u64> {
        self.proj
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let m = self.quotient.modulus(k) as u128;
                (row.iter().zip(x).map(|(&a, &b)| a as u128 * b as u128 % m).sum::<u128>() % m) as u64
            })
            .collect()
    }

    pub fn lift(&self, y: &[u64]) -> Vec<u64> {
        let mut out = self.ambient.zero();
        for (k, &c) in y.iter().enumerate() {
            out = self.ambient.add(&out, &self.ambient.scale(&self.lifts[k], c as i128));
        }
        out
    }

    pub fn lifts(&self) -> &[Vec<u64>] {
        &self.lifts
    }

    pub fn invariants(&self) -> InvariantFactors {
        InvariantFactors::new(self.ambient.p, self.quotient.exps.clone())
    }

    /// The projection as a homomorphism.
    pub fn projection(&self) -> HomMatrix {
        HomMatrix {
            source: self.ambient.clone(),
            target: self.quotient.clone(),
            entries: self.proj.clone(),
        }
    }
}

/// Invariant factors of `(+ Z/p^{e_i}) / span(generators)`.
pub fn quotient_invariants(
    generators: &[Vec<u64>],
    ambient: &AbelianPGroup,
) -> Result<InvariantFactors, RingError> {
    for g in generators {
        if !ambient.contains(g) {
            let (value, order) = g
                .iter()
                .enumerate()
                .find(|(i, &x)| i >= &ambient.rank() || x >= ambient.modulus(*i))
                .map(|(i, &x)| (x, if i < ambient.rank() { ambient.modulus(i) } else { 0 }))
                .unwrap_or((0, 0));
            return Err(RingError::OutOfRange { value, order });
        }
    }
    Ok(AbelianQuotient::new(ambient, generators).invariants())
}

/// An explicit basis of a subgroup: independent generators whose orders
/// multiply to the subgroup order.
#[derive(Clone, Debug)]
pub struct SubgroupBasis {
    pub ambient: AbelianPGroup,
    /// the subgroup as an abstract group
    pub shape: AbelianPGroup,
    pub basis: Vec<Vec<u64>>,
    solver: LinearSolver,
}

impl SubgroupBasis {
    pub fn new(ambient: &AbelianPGroup, gens: &[Vec<u64>]) -> Self {
        let p = ambient.p;
        let gens: Vec<Vec<u64>> = Subgroup::new(ambient, gens).generators();
        let e = ambient.max_exp().max(1);
        let free = AbelianPGroup::new(p, vec![e; gens.len()]);
        // A: free -> ambient, columns are the generators
        let a: Vec<Vec<u64>> =
            (0..ambient.rank()).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
        let rels = kernel_mixed(&free, ambient, &a);
        let q = AbelianQuotient::new(&free, &rels);
        let basis: Vec<Vec<u64>> = q
            .lifts()
            .iter()
            .map(|l| {
                let mut acc = ambient.zero();
                for (j, &c) in l.iter().enumerate() {
                    acc = ambient.add(&acc, &ambient.scale(&gens[j], c as i128));
                }
                acc
            })
            .collect();
        let shape = q.quotient.clone();
        let a2: Vec<Vec<u64>> =
            (0..ambient.rank()).map(|i| basis.iter().map(|b| b[i]).collect()).collect();
        let solver = LinearSolver::new(&shape, ambient, &a2);
        SubgroupBasis { ambient: ambient.clone(), shape, basis, solver }
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        self.solver.solve(v)
    }

    pub fn combine(&self, coords: &[u64]) -> Vec<u64> {
        let mut acc = self.ambient.zero();
        for (b, &c) in self.basis.iter().zip(coords) {
            acc = self.ambient.add(&acc, &self.ambient.scale(b, c as i128));
        }
        acc
    }
}

/// `Z / B` for subgroups `B <= Z` of a common ambient group, with class
/// coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub cycles: SubgroupBasis,
    pub quotient: AbelianQuotient,
}

impl Subquotient {
    pub fn new(ambient: &AbelianPGroup, cycles: &[Vec<u64>], boundaries: &[Vec<u64>]) -> Self {
        let z = SubgroupBasis::new(ambient, cycles);
        let rels: Vec<Vec<u64>> = boundaries
            .iter()
            .map(|b| z.coordinates(b).expect("boundary outside cycle space"))
            .collect();
        let quotient = AbelianQuotient::new(&z.shape, &rels);
        Subquotient { cycles: z, quotient }
    }

    pub fn invariants(&self) -> InvariantFactors {
        self.quotient.invariants()
    }

    /// Class coordinates of a cycle; `None` if `v` is not a cycle.
    pub fn classify(&self, v: &[u64]) -> Option<Vec<u64>> {
        self.cycles.coordinates(v).map(|c| self.quotient.project(&c))
    }

    /// A cycle representing the given class coordinates.
    pub fn representative(&self, class: &[u64]) -> Vec<u64> {
        self.cycles.combine(&self.quotient.lift(class))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn span_enum(ring: &PrimePower, cols: usize, rows: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
        let mut out = BTreeSet::new();
        out.insert(vec![0; cols]);
        for r in rows {
            let mut next = out.clone();
            for x in &out {
                let mut y = x.clone();
                for _ in 0..ring.modulus {
                    for (a, b) in y.iter_mut().zip(r) {
                        *a = ring.add(*a, *b);
                    }
                    next.insert(y.clone());
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn howell_examples() {
        let r4 = PrimePower::new(2, 2);
        let (h, _) = howell_form(&PMatrix::from_rows(r4, 1, &[vec![2]]));
        assert_eq!(h.row_vecs(), vec![vec![2]]);

        let r5 = PrimePower::new(5, 1);
        let (h, _) = howell_form(&PMatrix::from_rows(r5, 2, &[vec![1, 1], vec![0, 0]]));
        assert_eq!(h.row_vecs(), vec![vec![1, 1]]);

        let r25 = PrimePower::new(5, 2);
        let a = PMatrix::from_rows(r25, 2, &[vec![5, 0], vec![0, 1]]);
        let (h, u) = howell_form(&a);
        assert_eq!(span_enum(&r25, 2, &h.row_vecs()), span_enum(&r25, 2, &a.row_vecs()));
        assert_eq!(u.mul(&a), h);
        assert_eq!(h.row_vecs(), vec![vec![5, 0], vec![0, 1]]);
    }

    #[test]
    fn mixed_moduli_rejected() {
        let e = PMatrix::from_entries(&[vec![PModInt::new(1, 5), PModInt::new(1, 25)]]);
        assert!(matches!(e, Err(RingError::MixedModuli(5, 25))));
    }

    #[test]
    fn solve_examples() {
        let z4 = AbelianPGroup::new(2, vec![2]);
        assert!(solve_linear(&z4, &z4, &[vec![2]], &[1]).is_none());
        let z5 = AbelianPGroup::new(5, vec![1]);
        let s = solve_linear(&z5, &z5, &[vec![1]], &[3]).unwrap();
        assert_eq!(s.particular, vec![3]);
        assert!(s.kernel.is_empty());
        let s = solve_linear(&z4, &z4, &[vec![2]], &[2]).unwrap();
        assert_eq!(s.particular, vec![1]);
        assert_eq!(Subgroup::new(&z4, &s.kernel), Subgroup::new(&z4, &[vec![2]]));
    }

    #[test]
    fn quotient_examples() {
        let a = AbelianPGroup::new(5, vec![1, 1]);
        assert_eq!(quotient_invariants(&[], &a).unwrap().factors(), vec![5, 5]);
        let b = AbelianPGroup::new(5, vec![2, 1]);
        assert_eq!(quotient_invariants(&[vec![5, 0]], &b).unwrap().factors(), vec![5, 5]);
        assert!(quotient_invariants(&[vec![1, 0], vec![0, 1]], &a).unwrap().is_trivial());
        assert!(quotient_invariants(&[vec![7, 0]], &a).is_err());
    }

    #[test]
    fn reduce_local_examples() {
        assert_eq!(reduce_local(&PLocalRat::new(1, 2), 5, 1).unwrap().value(), 3);
        assert_eq!(reduce_local(&PLocalRat::new(1, 12), 5, 1).unwrap().value(), 3);
        assert!(matches!(
            reduce_local(&PLocalRat::new(1, 5), 5, 1),
            Err(RingError::PAdicPole { .. })
        ));
    }

    #[test]
    fn subquotient_basics() {
        // Z/25 + Z/5, cycles everything, boundaries <(5,0)>
        let a = AbelianPGroup::new(5, vec![2, 1]);
        let sq = Subquotient::new(&a, &[vec![1, 0], vec![0, 1]], &[vec![5, 0]]);
        assert_eq!(sq.invariants().factors(), vec![5, 5]);
        let c = sq.classify(&[6, 1]).unwrap();
        let rep = sq.representative(&c);
        assert_eq!(sq.classify(&rep).unwrap(), c);
    }

    #[test]
    fn subgroup_basis_orders() {
        let a = AbelianPGroup::new(5, vec![2, 1]);
        let b = SubgroupBasis::new(&a, &[vec![5, 1], vec![10, 2], vec![0, 1]]);
        let order: u64 = b.shape.order();
        assert_eq!(order, Subgroup::new(&a, &[vec![5, 1], vec![0, 1]]).order());
        for v in Subgroup::new(&a, &[vec![5, 1], vec![0, 1]]).elements() {
            let c = b.coordinates(&v).unwrap();
            assert_eq!(b.combine(&c), v);
        }
    }
}
