use crate::cohomology::LieExtension;
use crate::liering::{abelian, LieElement, NilLieRing};
use crate::ring::{AbelianPGroup, HomMatrix, LinearSolver, Subgroup};
use crate::triples::LieTriple;

use super::{summarize, CrossedError, Equivalence, Violation};

/// `0 -> M -> h -> g1 -> g2 -> 0` with `g1` acting on `h` by derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCrossedModule {
    pub h: NilLieRing,
    pub g1: NilLieRing,
    pub g2: NilLieRing,
    pub mu: HomMatrix,
    pub alpha: HomMatrix,
    /// `eta[j]` is the derivation of `h` by basis element `j` of `g1`.
    pub eta: Vec<HomMatrix>,
    pub module: AbelianPGroup,
    pub iota: HomMatrix,
}

fn columns(source: &AbelianPGroup, target: &AbelianPGroup, cols: &[Vec<u64>]) -> Result<HomMatrix, CrossedError> {
    let entries = (0..target.rank()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    Ok(HomMatrix::new(source.clone(), target.clone(), entries)?)
}

fn bracket_violation(name: &str, src: &NilLieRing, dst: &NilLieRing, f: &HomMatrix) -> Option<Violation> {
    for i in 0..src.rank() {
        for j in i + 1..src.rank() {
            let lhs = f.apply(&src.bracket(&src.basis(i), &src.basis(j)));
            let rhs = dst.bracket(&f.column(i), &f.column(j));
            if lhs != rhs {
                return Some(Violation::new(name, format!("bracket of basis {i}, {j} not preserved")));
            }
        }
    }
    None
}

/// `[A, B] = AB - BA`.
fn commutator(a: &HomMatrix, b: &HomMatrix) -> HomMatrix {
    a.compose(b).sub(&b.compose(a))
}

impl LieCrossedModule {
    /// `eta(a) = sum a_k eta[k]`.
    pub fn eta_of(&self, a: &[u64]) -> HomMatrix {
        let mut acc = HomMatrix::zero(self.h.module.clone(), self.h.module.clone());
        for (k, &c) in a.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.eta[k].scale(c as i128));
            }
        }
        acc
    }

    pub fn check_axioms(&self) -> Vec<Violation> {
        let (h, g1, g2) = (&self.h, &self.g1, &self.g2);
        let mut out = Vec::new();
        out.extend(bracket_violation("mu is a homomorphism", h, g1, &self.mu));
        out.extend(bracket_violation("alpha is a homomorphism", g1, g2, &self.alpha));
        if self.eta.len() != g1.rank() {
            out.push(Violation::new("action", "one derivation per basis element of g1 expected".into()));
            return out;
        }
        for (j, d) in self.eta.iter().enumerate() {
            if !d.scale(g1.module.modulus(j) as i128).is_zero() {
                out.push(Violation::new("action", format!("eta of basis {j} is not killed by its order")));
            }
            'der: for x in 0..h.rank() {
                for y in x + 1..h.rank() {
                    let (bx, by) = (h.basis(x), h.basis(y));
                    let lhs = d.apply(&h.bracket(&bx, &by));
                    let rhs = h.add(&h.bracket(&d.apply(&bx), &by), &h.bracket(&bx, &d.apply(&by)));
                    if lhs != rhs {
                        out.push(Violation::new("action", format!("eta of basis {j} is not a derivation at ({x}, {y})")));
                        break 'der;
                    }
                }
            }
        }
        for i in 0..g1.rank() {
            for j in i + 1..g1.rank() {
                let lhs = self.eta_of(&g1.bracket(&g1.basis(i), &g1.basis(j)));
                if lhs != commutator(&self.eta[i], &self.eta[j]) {
                    out.push(Violation::new("action", format!("eta is not a homomorphism at ({i}, {j})")));
                }
            }
        }
        'one: for j in 0..g1.rank() {
            for x in 0..h.rank() {
                let lhs = self.mu.apply(&self.eta[j].apply(&h.basis(x)));
                let rhs = g1.bracket(&g1.basis(j), &self.mu.column(x));
                if lhs != rhs {
                    out.push(Violation::new("(i)", format!("mu(eta(a{j}) h{x}) != [a{j}, mu(h{x})]")));
                    break 'one;
                }
            }
        }
        'two: for x in 0..h.rank() {
            let d = self.eta_of(&self.mu.column(x));
            for y in 0..h.rank() {
                if d.apply(&h.basis(y)) != h.bracket(&h.basis(x), &h.basis(y)) {
                    out.push(Violation::new("(ii)", format!("eta(mu(h{x})) h{y} != [h{x}, h{y}]")));
                    break 'two;
                }
            }
        }
        if !Subgroup::new(&self.module, &self.iota.kernel()).is_zero() {
            out.push(Violation::new("kernel", "M -> h is not injective".into()));
        }
        if Subgroup::new(&h.module, &self.mu.kernel()) != Subgroup::new(&h.module, &self.iota.image()) {
            out.push(Violation::new("kernel", "ker mu differs from M".into()));
        }
        if Subgroup::new(&g1.module, &self.mu.image()) != Subgroup::new(&g1.module, &self.alpha.kernel()) {
            out.push(Violation::new("cokernel", "im mu differs from ker alpha".into()));
        }
        if Subgroup::new(&g2.module, &self.alpha.image()) != Subgroup::whole(&g2.module) {
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

    /// Action of each basis element of `g1` on `M`.
    pub fn module_action(&self) -> Vec<HomMatrix> {
        let solver = LinearSolver::new(&self.module, &self.h.module, &self.iota.entries);
        self.eta
            .iter()
            .map(|d| {
                let cols: Vec<Vec<u64>> = (0..self.module.rank())
                    .map(|k| solver.solve(&d.apply(&self.iota.column(k))).expect("M is stable"))
                    .collect();
                columns(&self.module, &self.module, &cols).expect("action on M")
            })
            .collect()
    }

    /// Least `d` with `[M, _d g1] = 0`.
    pub fn action_length(&self) -> usize {
        let m = &self.h.module;
        let mut s = Subgroup::new(m, &self.iota.image());
        let mut d = 0;
        while !s.is_zero() && d <= m.exps.iter().sum::<u32>() as usize {
            let gens: Vec<Vec<u64>> =
                s.generators().iter().flat_map(|x| self.eta.iter().map(move |e| e.apply(x))).collect();
            s = Subgroup::new(m, &gens);
            d += 1;
        }
        d
    }

    /// A nonzero element of `[M, _{d-1} g1]`, if `d > 0`.
    pub(crate) fn length_witness(&self) -> Option<LieElement> {
        let m = &self.h.module;
        let mut s = Subgroup::new(m, &self.iota.image());
        let mut last = None;
        while !s.is_zero() {
            last = s.generators().into_iter().next();
            let gens: Vec<Vec<u64>> =
                s.generators().iter().flat_map(|x| self.eta.iter().map(move |e| e.apply(x))).collect();
            let next = Subgroup::new(m, &gens);
            if next == s {
                break;
            }
            s = next;
        }
        last
    }

    // -- constructors --

    /// `I -> L -> L/I` with the adjoint action and `M = 0`.
    pub fn ideal_inclusion(l: &NilLieRing, ideal: &Subgroup) -> Result<Self, CrossedError> {
        let (h, b) = l.subring_ring(ideal)?;
        let (g2, q) = l.quotient_ring(ideal)?;
        let mu = columns(&h.module, &l.module, &b.basis)?;
        let eta = (0..l.rank())
            .map(|j| {
                let cols: Vec<Vec<u64>> =
                    b.basis.iter().map(|u| b.coordinates(&l.bracket(&l.basis(j), u)).expect("ideal")).collect();
                columns(&h.module, &h.module, &cols)
            })
            .collect::<Result<_, _>>()?;
        let module = AbelianPGroup::new(l.p, vec![]);
        Ok(LieCrossedModule {
            iota: HomMatrix::zero(module.clone(), h.module.clone()),
            module,
            alpha: q.projection(),
            mu,
            eta,
            h,
            g1: l.clone(),
            g2,
        })
    }

    /// `M -0-> L -id-> L` with `L` acting on `M` through the triple.
    pub fn from_triple(t: &LieTriple) -> Self {
        let l = &t.ring;
        let m = &t.module;
        LieCrossedModule {
            h: abelian(l.p, m.exps.clone()),
            g1: l.clone(),
            g2: l.clone(),
            mu: HomMatrix::zero(m.clone(), l.module.clone()),
            alpha: HomMatrix::identity(l.module.clone()),
            eta: t.psi.clone(),
            module: m.clone(),
            iota: HomMatrix::identity(m.clone()),
        }
    }

    /// `E -> L -> 0` for a central extension `0 -> M -> E -> L -> 0`, with
    /// `L` acting on `E` by brackets with the chosen lifts.
    pub fn from_central_extension(ext: &LieExtension, t: &LieTriple) -> Result<Self, CrossedError> {
        if t.psi.iter().any(|a| !a.is_zero()) {
            return Err(CrossedError::Axioms("the extension must be central".into()));
        }
        let e = &ext.ring;
        let l = &t.ring;
        let eta = ext
            .lifts
            .iter()
            .map(|s| {
                let cols: Vec<Vec<u64>> = (0..e.rank()).map(|k| e.bracket(s, &e.basis(k))).collect();
                columns(&e.module, &e.module, &cols)
            })
            .collect::<Result<_, _>>()?;
        let g2 = abelian(l.p, vec![]);
        Ok(LieCrossedModule {
            h: e.clone(),
            g1: l.clone(),
            alpha: HomMatrix::zero(l.module.clone(), g2.module.clone()),
            g2,
            mu: ext.proj.clone(),
            eta,
            module: t.module.clone(),
            iota: ext.iota.clone(),
        })
    }

    /// The split crossed module `M + ker(alpha) -> g1` with the same
    /// boundary, the neutral element for the Baer sum.
    pub fn split(&self) -> Result<Self, CrossedError> {
        let g1 = &self.g1;
        let n = Subgroup::new(&g1.module, &self.alpha.kernel());
        let (rn, bn) = g1.subring_ring(&n)?;
        let m = &self.module;
        let h = abelian(g1.p, m.exps.clone()).direct_sum(&rn);
        let (rm, r) = (m.rank(), h.rank());
        let mut mu_cols = vec![g1.zero(); rm];
        mu_cols.extend(bn.basis.iter().cloned());
        let mu = columns(&h.module, &g1.module, &mu_cols)?;
        let psi = self.module_action();
        let eta = (0..g1.rank())
            .map(|j| {
                let cols: Vec<Vec<u64>> = (0..r)
                    .map(|k| {
                        if k < rm {
                            let mut v = psi[j].column(k);
                            v.extend(vec![0; r - rm]);
                            v
                        } else {
                            let y = g1.bracket(&g1.basis(j), &bn.basis[k - rm]);
                            let mut v = vec![0; rm];
                            v.extend(bn.coordinates(&y).expect("ideal"));
                            v
                        }
                    })
                    .collect();
                columns(&h.module, &h.module, &cols)
            })
            .collect::<Result<_, _>>()?;
        let iota_cols: Vec<Vec<u64>> = (0..rm).map(|k| {
            let mut v = m.unit(k);
            v.extend(vec![0; r - rm]);
            v
        }).collect();
        Ok(LieCrossedModule {
            iota: columns(m, &h.module, &iota_cols)?,
            h,
            g1: g1.clone(),
            g2: self.g2.clone(),
            mu,
            alpha: self.alpha.clone(),
            eta,
            module: m.clone(),
        })
    }

    pub fn same_boundary(&self, other: &Self) -> Result<(), CrossedError> {
        let mismatch = |what: &str| Err(CrossedError::BoundaryMismatch(what.into()));
        if self.g1 != other.g1 || self.g2 != other.g2 {
            return mismatch("acting rings differ");
        }
        if self.alpha != other.alpha {
            return mismatch("cokernel maps differ");
        }
        if self.module != other.module || self.module_action() != other.module_action() {
            return mismatch("kernel modules differ");
        }
        Ok(())
    }

    /// Pullback over `g1` modulo the antidiagonal copy of `M`.
    pub fn baer_sum(&self, other: &Self) -> Result<Self, CrossedError> {
        self.same_boundary(other)?;
        let s = self.h.direct_sum(&other.h);
        let n1 = self.h.rank();
        let g1 = &self.g1;
        let rows: Vec<Vec<u64>> = (0..g1.rank())
            .map(|i| {
                let mi = g1.module.modulus(i);
                let mut r = self.mu.entries[i].clone();
                r.extend(other.mu.entries[i].iter().map(|&x| (mi - x) % mi));
                r
            })
            .collect();
        let pullback = Subgroup::new(&s.module, &crate::ring::kernel_mixed(&s.module, &g1.module, &rows));
        let (rp, bp) = s.subring_ring(&pullback)?;
        let antidiag: Vec<Vec<u64>> = (0..self.module.rank())
            .map(|k| {
                let x = [self.iota.column(k), other.h.neg(&other.iota.column(k))].concat();
                bp.coordinates(&x).expect("antidiagonal lies in the pullback")
            })
            .collect();
        let (h, q) = rp.quotient_ring(&rp.span(&antidiag))?;
        let to_s = |y: &[u64]| bp.combine(&q.lift(y));
        let from_s = |x: &[u64]| q.project(&bp.coordinates(x).expect("stays in the pullback"));
        let mu_cols: Vec<Vec<u64>> = (0..h.rank()).map(|k| self.mu.apply(&to_s(&h.basis(k))[..n1])).collect();
        let eta = (0..g1.rank())
            .map(|j| {
                let cols: Vec<Vec<u64>> = (0..h.rank())
                    .map(|k| {
                        let x = to_s(&h.basis(k));
                        let y = [self.eta[j].apply(&x[..n1]), other.eta[j].apply(&x[n1..])].concat();
                        from_s(&y)
                    })
                    .collect();
                columns(&h.module, &h.module, &cols)
            })
            .collect::<Result<_, _>>()?;
        let iota_cols: Vec<Vec<u64>> = (0..self.module.rank())
            .map(|k| from_s(&[self.iota.column(k), other.h.zero()].concat()))
            .collect();
        Ok(LieCrossedModule {
            mu: columns(&h.module, &g1.module, &mu_cols)?,
            iota: columns(&self.module, &h.module, &iota_cols)?,
            eta,
            h,
            g1: g1.clone(),
            g2: self.g2.clone(),
            alpha: self.alpha.clone(),
            module: self.module.clone(),
        })
    }

    /// Search for `f: h -> h'` with `mu' f = mu`, `f iota = iota'` and
    /// `f eta(a) = eta'(a) f`, trying all basis images in the fibres of
    /// `mu'`. Undecided when `|h|` exceeds `bound`.
    pub fn equivalent(&self, other: &Self, bound: usize) -> Equivalence {
        if self.same_boundary(other).is_err() || self.h.order() != other.h.order() {
            return Equivalence::NotEquivalent;
        }
        if self.h.order() as usize > bound {
            return Equivalence::Undecided;
        }
        let h2 = &other.h;
        let fibres: Vec<Vec<LieElement>> = (0..self.h.rank())
            .map(|i| {
                let target = self.mu.column(i);
                h2.elements().filter(|y| other.mu.apply(y) == target).collect()
            })
            .collect();
        let mut choice = vec![0usize; fibres.len()];
        if fibres.iter().any(|f| f.is_empty()) {
            return Equivalence::NotEquivalent;
        }
        loop {
            let cols: Vec<Vec<u64>> = choice.iter().zip(&fibres).map(|(&c, f)| f[c].clone()).collect();
            if let Ok(f) = columns(&self.h.module, &h2.module, &cols) {
                if self.is_equivalence(other, &f) {
                    return Equivalence::Equivalent;
                }
            }
            // next choice in lexicographic order
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

    fn is_equivalence(&self, other: &Self, f: &HomMatrix) -> bool {
        bracket_violation("", &self.h, &other.h, f).is_none()
            && Subgroup::new(&self.h.module, &f.kernel()).is_zero()
            && f.compose(&self.iota) == other.iota
            && self.eta.iter().zip(&other.eta).all(|(a, b)| f.compose(a) == b.compose(f))
    }
}
