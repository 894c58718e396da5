use serde::Serialize;

use super::{
    h0_co_group, h0_co_lie, h0_group, h0_lie, lie_h1, lie_h2, Bounds, CohomologyError, CohomologyGroup,
    GroupCochains, GroupExtension, LieExtension, LieFactorSystem,
};
use super::lie::transpose;
use crate::bchgroup::{eval_word, power, CayleyGroup, LazardGroup};
use crate::freelie::inverse_bch;
use crate::liering::LieElement;
use crate::ring::{AbelianPGroup, AbelianQuotient, HomMatrix, InvariantFactors, LinearSolver, SubgroupBasis};
use crate::triples::{
    exp_triple, log_triple, GroupMorphism, GroupTriple, LieMorphism, LieTriple, TripleGroup,
};

/// A Lie triple together with `Exp` of it, in the same coordinate frame,
/// and the group-side cochain bookkeeping.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub lie: LieTriple,
    pub group: GroupTriple,
    pub cochains: GroupCochains,
    /// Nilpotency class of `L`.
    pub class: usize,
    /// Action length of `M`.
    pub length: usize,
}

impl Correspondence {
    pub fn new(lie: LieTriple) -> Result<Self, CohomologyError> {
        let class = lie.class()?;
        let length = lie.action_length()?;
        let group = exp_triple(&lie)?;
        let cochains = GroupCochains::new(&group);
        Ok(Correspondence { lie, group, cochains, class, length })
    }

    pub fn p(&self) -> u64 {
        self.lie.ring.p
    }

    fn lazard(&self) -> &LazardGroup {
        match &self.group.group {
            TripleGroup::Lazard(g) => g,
            TripleGroup::Cayley(_) => unreachable!("built by exp_triple"),
        }
    }

    fn require(&self, ok: bool, what: &str) -> Result<(), CohomologyError> {
        if ok {
            Ok(())
        } else {
            Err(CohomologyError::Hypothesis(format!(
                "{what} (c = {}, d = {}, p = {})",
                self.class,
                self.length,
                self.p()
            )))
        }
    }

    fn degree1_guard(&self) -> Result<(), CohomologyError> {
        self.require(self.length + 1 < self.p() as usize, "degree-1 transport needs d < p - 1")
    }

    fn degree2_guard(&self) -> Result<(), CohomologyError> {
        self.require(self.class + self.length < self.p() as usize, "degree-2 transport needs c + d < p")
    }

    /// `M + Z/p^N` with `z` acting as the given column.
    fn widened(&self) -> AbelianPGroup {
        let m = &self.lie.module;
        let mut exps = m.exps.clone();
        exps.push(m.max_exp().max(1));
        AbelianPGroup::new(m.p, exps)
    }

    fn widen(&self, a: &HomMatrix, col: &[u64], unipotent: bool) -> HomMatrix {
        let wide = self.widened();
        let rm = self.lie.module.rank();
        let mut rows: Vec<Vec<u64>> = a.entries.iter().zip(col).map(|(r, &c)| [r.as_slice(), &[c]].concat()).collect();
        let mut last = vec![0; rm + 1];
        last[rm] = u64::from(unipotent);
        rows.push(last);
        HomMatrix::new(wide.clone(), wide, rows).expect("widened action")
    }

    // -- degree 1 --

    /// Derivation (values on the basis) to crossed homomorphism (values on
    /// the group generators), through `Exp` of the widened triple.
    pub fn h1_to_group(&self, v: &[u64]) -> Result<Vec<u64>, CohomologyError> {
        self.degree1_guard()?;
        let rm = self.lie.module.rank();
        let psi = (0..self.lie.ring.rank())
            .map(|i| self.widen(&self.lie.psi[i], &v[i * rm..(i + 1) * rm], false))
            .collect();
        let wide = LieTriple::new(self.lie.ring.clone(), self.widened(), psi)?;
        let g = exp_triple(&wide)?;
        let f: Vec<Vec<u64>> = g.phi.iter().map(|a| a.column(rm)[..rm].to_vec()).collect();
        Ok(self.cochains.restrict_crossed(&f))
    }

    pub fn h1_to_lie(&self, v: &[u64]) -> Result<Vec<u64>, CohomologyError> {
        self.degree1_guard()?;
        let rm = self.lie.module.rank();
        let f = self.cochains.eval_crossed(v);
        let phi = self.group.phi.iter().zip(&f).map(|(a, c)| self.widen(a, c, true)).collect();
        let wide = GroupTriple::new(self.group.group.clone(), self.widened(), phi)?;
        let l = log_triple(&wide)?;
        Ok(l.psi.iter().flat_map(|a| a.column(rm)[..rm].to_vec()).collect())
    }

    // -- degree 2 --

    /// Tail vector to gauge-fixed group cocycle: build the Lie extension,
    /// exponentiate it and read `s(x) s(y) s(xy)^{-1}` for the additive
    /// section `s(a) = sum a_i b_i^`.
    pub fn h2_to_group(&self, v: &[u64]) -> Result<Vec<u64>, CohomologyError> {
        self.degree2_guard()?;
        let ext = LieExtension::from_tails(&self.lie, v);
        let e = &ext.ring;
        let ce = e.nilpotency_class()?;
        self.require(ce < self.p() as usize, "extension class must stay below p")?;
        let eg = LazardGroup::new(e.clone())?;
        let lg = self.lazard();
        let section = |a: &[u64]| -> LieElement {
            let mut s = e.zero();
            for (i, &c) in a.iter().enumerate() {
                s = e.add(&s, &e.scale(&ext.lifts[i], c as i128));
            }
            s
        };
        let solver = LinearSolver::new(&self.lie.module, &e.module, &ext.iota.entries);
        let n = self.cochains.order();
        let sections: Vec<LieElement> = (0..n).map(|x| section(&lg.element(x))).collect();
        let gens = self.cochains.gens.clone();
        let failure = std::cell::Cell::new(None);
        let out = self.cochains.restrict_cocycle(|x, j| {
            let y = gens[j];
            let xy = self.cochains.group.mul(x, y);
            let u = eg.g_mul(&eg.g_mul(&sections[x], &sections[y]), &eg.g_inv(&sections[xy]));
            solver.solve(&u).unwrap_or_else(|| {
                failure.set(Some((x, y)));
                self.lie.module.zero()
            })
        });
        if let Some((x, y)) = failure.get() {
            return Err(CohomologyError::Internal(format!("section defect at ({x}, {y}) is not in M")));
        }
        Ok(out)
    }

    /// Gauge-fixed group cocycle to tail vector, using the Lie operations
    /// of the extension group given by the inverse BCH words.
    pub fn h2_to_lie(&self, v: &[u64]) -> Result<Vec<u64>, CohomologyError> {
        self.degree2_guard()?;
        let table = self.cochains.expand_cocycle(v);
        let c = &self.cochains;
        let m = &self.lie.module;
        let l = &self.lie.ring;
        let n = c.order();
        type El = (Vec<u64>, usize);
        let id = c.group.identity();
        let mul = |a: &El, b: &El| -> El {
            let w = m.add(&m.add(&a.0, &c.phi[a.1].apply(&b.0)), &table[a.1 * n + b.1]);
            (w, c.group.mul(a.1, b.1))
        };
        let inv = |a: &El| -> El {
            let xi = c.group.inv(a.1);
            let w = m.neg(&c.phi[xi].apply(&m.add(&a.0, &table[a.1 * n + xi])));
            (w, xi)
        };
        let identity: El = (m.zero(), id);
        let log_order = m.exps.iter().sum::<u32>() + c.group.log_order();
        let words = inverse_bch((self.class + self.length).max(1));
        let exponent = (self.p(), log_order.max(1));
        let h1 = |a: &El, b: &El| eval_word(&words.h1, a, b, &identity, &mul, &inv, exponent);
        let h2 = |a: &El, b: &El| eval_word(&words.h2, a, b, &identity, &mul, &inv, exponent);
        let times = |a: &El, k: u64| power(a, k, &identity, &mul);
        let lg = self.lazard();
        let lift = |i: usize| -> El { (m.zero(), lg.index_of(&l.basis(i))) };
        let in_m = |a: El| -> Result<Vec<u64>, CohomologyError> {
            if a.1 != id {
                return Err(CohomologyError::Internal("tail is not in M".into()));
            }
            Ok(a.0)
        };
        let r = l.rank();
        let mut out = Vec::new();
        for i in 0..r {
            out.extend(in_m(times(&lift(i), l.module.modulus(i)))?);
        }
        for i in 0..r {
            for j in i + 1..r {
                let mut s = identity.clone();
                for (k, &ck) in l.constant(i, j).iter().enumerate() {
                    s = h1(&s, &times(&lift(k), ck))?;
                }
                let br = h2(&lift(i), &lift(j))?;
                out.extend(in_m(h1(&br, &inv(&s))?)?);
            }
        }
        Ok(out)
    }
}

// -- module extensions for degree 1 --

/// `0 -> M -> X -> Z/p^N -> 0` with an action on `X` for every acting
/// element (group elements, or Lie basis elements).
#[derive(Clone, Debug)]
pub struct ModuleExtension {
    pub module: AbelianPGroup,
    pub actions: Vec<HomMatrix>,
    pub iota: HomMatrix,
    pub pi: HomMatrix,
    /// Group actions are unipotent lifts (`x -> x` on the quotient); Lie
    /// actions are nilpotent (`x -> 0`).
    pub unipotent: bool,
}

impl ModuleExtension {
    fn split(corr: &Correspondence, actions: Vec<HomMatrix>, unipotent: bool) -> Self {
        let module = corr.widened();
        let m = &corr.lie.module;
        let rm = m.rank();
        let iota_rows = (0..=rm).map(|i| (0..rm).map(|k| u64::from(i == k)).collect()).collect();
        let pi_rows = vec![(0..=rm).map(|k| u64::from(k == rm)).collect()];
        let z = AbelianPGroup::new(m.p, vec![m.max_exp().max(1)]);
        ModuleExtension {
            iota: HomMatrix::new(m.clone(), module.clone(), iota_rows).expect("iota"),
            pi: HomMatrix::new(module.clone(), z, pi_rows).expect("pi"),
            module,
            actions,
            unipotent,
        }
    }

    pub fn from_crossed(corr: &Correspondence, v: &[u64]) -> Self {
        let f = corr.cochains.eval_crossed(v);
        let actions = corr.cochains.phi.iter().zip(&f).map(|(a, c)| corr.widen(a, c, true)).collect();
        Self::split(corr, actions, true)
    }

    pub fn from_derivation(corr: &Correspondence, v: &[u64]) -> Self {
        let rm = corr.lie.module.rank();
        let actions = (0..corr.lie.ring.rank())
            .map(|i| corr.widen(&corr.lie.psi[i], &v[i * rm..(i + 1) * rm], false))
            .collect();
        Self::split(corr, actions, false)
    }

    /// Values `a x - x` (group) or `a x` (Lie) for a preimage `x` of `1`,
    /// pulled back to `M`.
    pub fn cocycle_values(&self) -> Result<Vec<Vec<u64>>, CohomologyError> {
        let z = &self.pi.target;
        let x = LinearSolver::new(&self.module, z, &self.pi.entries)
            .solve(&z.unit(0))
            .ok_or_else(|| CohomologyError::Internal("quotient map is not onto".into()))?;
        let back = LinearSolver::new(&self.iota.source, &self.module, &self.iota.entries);
        self.actions
            .iter()
            .map(|a| {
                let mut y = a.apply(&x);
                if self.unipotent {
                    y = self.module.sub(&y, &x);
                }
                back.solve(&y).ok_or_else(|| CohomologyError::Internal("cocycle value is not in M".into()))
            })
            .collect()
    }

    /// Pullback over `Z/p^N` modulo the antidiagonal copy of `M`.
    pub fn baer_sum(&self, other: &ModuleExtension) -> ModuleExtension {
        let sum = self.module.direct_sum(&other.module);
        let n1 = self.module.rank();
        let z = &self.pi.target;
        let mz = z.modulus(0);
        let row: Vec<u64> = self.pi.entries[0]
            .iter()
            .copied()
            .chain(other.pi.entries[0].iter().map(|&c| (mz - c % mz) % mz))
            .collect();
        let pb = SubgroupBasis::new(&sum, &crate::ring::kernel_mixed(&sum, z, &[row]));
        let m = &self.iota.source;
        let anti: Vec<Vec<u64>> = (0..m.rank())
            .map(|k| {
                let u = m.unit(k);
                let x = [self.iota.apply(&u), other.iota.apply(&m.neg(&u))].concat();
                pb.coordinates(&x).expect("antidiagonal lies in the pullback")
            })
            .collect();
        let q = AbelianQuotient::new(&pb.shape, &anti);
        let nq = q.quotient.rank();
        let through = |f: &dyn Fn(&[u64]) -> Vec<u64>| -> Vec<Vec<u64>> {
            (0..nq).map(|k| f(&pb.combine(&q.lift(&q.quotient.unit(k))))).collect()
        };
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a1, a2)| {
                let cols = through(&|x: &[u64]| {
                    let y = [a1.apply(&x[..n1]), a2.apply(&x[n1..])].concat();
                    q.project(&pb.coordinates(&y).expect("action preserves the pullback"))
                });
                HomMatrix::new(q.quotient.clone(), q.quotient.clone(), transpose(&cols, nq)).expect("action")
            })
            .collect();
        let pi_cols = through(&|x: &[u64]| self.pi.apply(&x[..n1]));
        let iota_cols: Vec<Vec<u64>> = (0..m.rank())
            .map(|k| {
                let x = [self.iota.apply(&m.unit(k)), other.module.zero()].concat();
                q.project(&pb.coordinates(&x).unwrap())
            })
            .collect();
        ModuleExtension {
            iota: HomMatrix::new(m.clone(), q.quotient.clone(), transpose(&iota_cols, nq)).expect("iota"),
            pi: HomMatrix::new(q.quotient.clone(), z.clone(), transpose(&pi_cols, 1)).expect("pi"),
            module: q.quotient,
            actions,
            unipotent: self.unipotent,
        }
    }
}

// -- maps along morphisms --

/// `f -> beta . f . alpha` on derivations.
pub fn lie_h1_along(m: &LieMorphism, t1: &LieTriple, t2: &LieTriple, v: &[u64]) -> Vec<u64> {
    (0..t2.ring.rank())
        .flat_map(|i| m.beta.apply(&super::eval_derivation(t1, v, &m.alpha.apply(&t2.ring.basis(i)))))
        .collect()
}

/// Cochain-level map on tail vectors, through the factor systems.
pub fn lie_h2_along(m: &LieMorphism, t1: &LieTriple, t2: &LieTriple, v: &[u64]) -> Vec<u64> {
    let fs1 = LieFactorSystem::from_tails(t1, v);
    let n1 = t1.ring.order() as usize;
    let idx: Vec<usize> = t2.ring.elements().map(|a| t1.ring.module.index_of(&m.alpha.apply(&a))).collect();
    let mut g = Vec::with_capacity(idx.len() * idx.len());
    let mut f = Vec::with_capacity(idx.len() * idx.len());
    for &a in &idx {
        for &b in &idx {
            g.push(m.beta.apply(&fs1.g[a * n1 + b]));
            f.push(m.beta.apply(&fs1.f[a * n1 + b]));
        }
    }
    LieFactorSystem { g, f }.to_tails(t2)
}

pub fn group_h1_along(m: &GroupMorphism, c1: &GroupCochains, c2: &GroupCochains, v: &[u64]) -> Vec<u64> {
    let f1 = c1.eval_crossed(v);
    let f2: Vec<Vec<u64>> = m.alpha.iter().map(|&x| m.beta.apply(&f1[x])).collect();
    c2.restrict_crossed(&f2)
}

pub fn group_h2_along(m: &GroupMorphism, c1: &GroupCochains, c2: &GroupCochains, v: &[u64]) -> Vec<u64> {
    let t1 = c1.expand_cocycle(v);
    let n1 = c1.order();
    c2.restrict_cocycle(|x, j| m.beta.apply(&t1[m.alpha[x] * n1 + m.alpha[c2.gens[j]]]))
}

/// Extension-level map: pull back along `alpha`, push out along `beta`.
pub fn group_extension_along(
    m: &GroupMorphism,
    ext: &GroupExtension,
    c1: &GroupCochains,
    c2: &GroupCochains,
) -> Result<GroupExtension, CohomologyError> {
    let n2 = c2.order();
    let ne = ext.group.order();
    // pullback elements (e, g2) with pi(e) = alpha(g2)
    let pb: Vec<(usize, usize)> =
        (0..ne).flat_map(|e| (0..n2).filter(move |&g| ext.proj[e] == m.alpha[g]).map(move |g| (e, g))).collect();
    let mut pb_index = vec![usize::MAX; ne * n2];
    for (i, &(e, g)) in pb.iter().enumerate() {
        pb_index[e * n2 + g] = i;
    }
    let m2 = &c2.module;
    let mm2 = m2.order() as usize;
    let elems2: Vec<Vec<u64>> = m2.elements().collect();
    // semidirect product M2 x| P, element (a, u) at index u * |M2| + a
    let np = pb.len();
    let size = np * mm2;
    let mut table = vec![0u32; size * size];
    for (u, &(e, g)) in pb.iter().enumerate() {
        for (a, x) in elems2.iter().enumerate() {
            for (w, &(e2, g2)) in pb.iter().enumerate() {
                let uw = pb_index[ext.group.mul(e, e2) * n2 + c2.group.mul(g, g2)];
                for (b, y) in elems2.iter().enumerate() {
                    let s = m2.add(x, &c2.phi[g].apply(y));
                    table[(u * mm2 + a) * size + w * mm2 + b] = (uw * mm2 + m2.index_of(&s)) as u32;
                }
            }
        }
    }
    let semi = CayleyGroup::from_table_unchecked(c2.group.p, size, table);
    let id2 = c2.group.identity();
    let m1 = &c1.module;
    let normal: Vec<usize> = m1
        .elements()
        .map(|x| {
            let u = pb_index[ext.iota[m1.index_of(&m1.neg(&x))] * n2 + id2];
            u * mm2 + m2.index_of(&m.beta.apply(&x))
        })
        .collect();
    let q = semi.quotient_group(&normal)?;
    let e_id = ext.group.identity();
    Ok(GroupExtension {
        iota: (0..mm2).map(|a| q.projection[pb_index[e_id * n2 + id2] * mm2 + a]).collect(),
        proj: q.representatives.iter().map(|&r| pb[r / mm2].1).collect(),
        section: (0..n2).map(|g| q.projection[pb_index[ext.section[m.alpha[g]] * n2 + g] * mm2]).collect(),
        group: q.group,
    })
}

// -- comparison --

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub degree: usize,
    pub p: u64,
    pub class: usize,
    pub action_length: usize,
    pub in_scope: bool,
    pub hypothesis: String,
    pub lie: Option<InvariantFactors>,
    pub group: Option<InvariantFactors>,
    pub isomorphic: Option<bool>,
    /// Degree 0: the fixed points agree as subgroups of `M`. Degrees 1 and
    /// 2: transport of Lie generators spans the group side and the round
    /// trip is the identity.
    pub transport_bijective: Option<bool>,
    /// Transport commutes with addition of classes on all generator pairs.
    pub transport_additive: Option<bool>,
    pub notes: Vec<String>,
}

pub fn hypothesis_text(degree: usize) -> &'static str {
    match degree {
        0 => "c < p and d < p",
        1 => "c < p and d < p - 1",
        _ => "c + d < p",
    }
}

pub fn in_scope(degree: usize, p: u64, c: usize, d: usize) -> bool {
    let p = p as usize;
    match degree {
        0 => c < p && d < p,
        1 => c < p && d + 1 < p,
        _ => c + d < p,
    }
}

/// Compute `H^n` on both sides of a Lie triple and test the comparison.
/// Out-of-scope inputs are still computed where possible and flagged.
pub fn compare(lie: &LieTriple, degree: usize, bounds: &Bounds) -> Result<ComparisonReport, CohomologyError> {
    let p = lie.ring.p;
    let class = lie.class()?;
    let d = lie.action_length()?;
    let scope = in_scope(degree, p, class, d);
    let mut report = ComparisonReport {
        degree,
        p,
        class,
        action_length: d,
        in_scope: scope,
        hypothesis: hypothesis_text(degree).to_string(),
        lie: None,
        group: None,
        isomorphic: None,
        transport_bijective: None,
        transport_additive: None,
        notes: Vec::new(),
    };
    if degree > 2 {
        return Err(CohomologyError::Hypothesis("only degrees 0, 1 and 2 are implemented".into()));
    }
    bounds.check(lie.ring.order() as usize)?;
    let lie_h = match degree {
        1 => Some(lie_h1(lie)),
        2 => Some(lie_h2(lie)),
        _ => None,
    };
    report.lie = Some(match &lie_h {
        Some(h) => h.invariants(),
        None => crate::ring::quotient_invariants(&h0_lie(lie).generators(), &lie.module)?,
    });
    let corr = match Correspondence::new(lie.clone()) {
        Ok(c) => c,
        Err(e) => {
            report.notes.push(format!("group side unavailable: {e}"));
            return Ok(report);
        }
    };
    let group_h = match degree {
        1 => Some(corr.cochains.h1()),
        2 => Some(corr.cochains.h2(bounds)?),
        _ => None,
    };
    report.group = Some(match &group_h {
        Some(h) => h.invariants(),
        None => crate::ring::quotient_invariants(&h0_group(&corr.group).generators(), &lie.module)?,
    });
    report.isomorphic = Some(report.lie == report.group);
    if degree == 0 {
        let fixed = h0_lie(lie) == h0_group(&corr.group);
        let co = h0_co_lie(lie)? == h0_co_group(&corr.group)?;
        report.transport_bijective = Some(fixed && co);
        if !co {
            report.notes.push("coinvariants differ".into());
        }
        return Ok(report);
    }
    if !scope {
        report.notes.push("transport bound not met (degree 1 needs d < p - 1, degree 2 needs c + d < p): transport not attempted".into());
        return Ok(report);
    }
    let (lh, gh) = (lie_h.unwrap(), group_h.unwrap());
    let check = transport_checks(&corr, degree, &lh, &gh);
    match check {
        Ok((bij, add)) => {
            report.transport_bijective = Some(bij);
            report.transport_additive = Some(add);
        }
        Err(e) => report.notes.push(format!("transport failed: {e}")),
    }
    Ok(report)
}

fn transport_checks(
    corr: &Correspondence,
    degree: usize,
    lh: &CohomologyGroup,
    gh: &CohomologyGroup,
) -> Result<(bool, bool), CohomologyError> {
    let to_group = |v: &[u64]| if degree == 1 { corr.h1_to_group(v) } else { corr.h2_to_group(v) };
    let to_lie = |v: &[u64]| if degree == 1 { corr.h1_to_lie(v) } else { corr.h2_to_lie(v) };
    let classify_g = |v: &[u64]| gh.classify(v).ok_or_else(|| CohomologyError::InvalidCocycle("not a group cocycle".into()));
    let classify_l = |v: &[u64]| lh.classify(v).ok_or_else(|| CohomologyError::InvalidCocycle("not a Lie cocycle".into()));
    let gens = lh.generators();
    let mut images = Vec::new();
    let mut round_trip = true;
    for g in &gens {
        let x = to_group(g)?;
        images.push(classify_g(&x)?);
        round_trip &= classify_l(&to_lie(&x)?)? == classify_l(g)?;
    }
    let spans = gh.span(&images).order() as u128 == gh.invariants().order();
    let bij = spans && lh.invariants() == gh.invariants() && round_trip;
    let mut additive = true;
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let s = lh.cochains.add(&gens[i], &gens[j]);
            let lhs = classify_g(&to_group(&s)?)?;
            additive &= lhs == gh.add_classes(&images[i], &images[j]);
        }
    }
    Ok((bij, additive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liering::{abelian, heisenberg};

    fn trivial(l: crate::liering::NilLieRing, exps: Vec<u32>) -> LieTriple {
        let p = l.p;
        LieTriple::trivial(l, AbelianPGroup::new(p, exps))
    }

    fn assert_good(r: &ComparisonReport) {
        assert!(r.in_scope, "{r:?}");
        assert_eq!(r.isomorphic, Some(true), "{r:?}");
        assert_eq!(r.transport_bijective, Some(true), "{r:?}");
        if r.degree > 0 {
            assert_eq!(r.transport_additive, Some(true), "{r:?}");
        }
    }

    #[test]
    fn compare_small() {
        let b = Bounds::cube(5);
        for d in 0..=2 {
            assert_good(&compare(&trivial(abelian(5, vec![1]), vec![1]), d, &b).unwrap());
            assert_good(&compare(&trivial(heisenberg(5, 1), vec![1]), d, &b).unwrap());
        }
        let adj = LieTriple::adjoint(heisenberg(5, 1));
        for d in 0..=2 {
            assert_good(&compare(&adj, d, &b).unwrap());
        }
    }

    #[test]
    fn module_extension_baer_sum() {
        let corr = Correspondence::new(LieTriple::adjoint(heisenberg(5, 1))).unwrap();
        let h = corr.cochains.h1();
        let gens = h.generators();
        let e1 = ModuleExtension::from_crossed(&corr, &gens[0]);
        let e2 = ModuleExtension::from_crossed(&corr, &gens[gens.len() - 1]);
        let s = e1.baer_sum(&e2);
        let vals = s.cocycle_values().unwrap();
        let v = corr.cochains.restrict_crossed(&vals);
        let expect = h.add_classes(&h.classify(&gens[0]).unwrap(), &h.classify(&gens[gens.len() - 1]).unwrap());
        assert_eq!(h.classify(&v).unwrap(), expect);

        let lh = lie_h1(&corr.lie);
        let lg = lh.generators();
        let l1 = ModuleExtension::from_derivation(&corr, &lg[0]);
        let back: Vec<u64> = l1.baer_sum(&l1).cocycle_values().unwrap().concat();
        assert_eq!(lh.classify(&back).unwrap(), lh.classes().scale(&lh.classify(&lg[0]).unwrap(), 2));
    }

    #[test]
    fn identity_morphism_extension_level() {
        let corr = Correspondence::new(trivial(abelian(5, vec![1]), vec![1])).unwrap();
        let c = &corr.cochains;
        let h = c.h2(&Bounds::cube(5)).unwrap();
        let g = &h.generators()[0];
        let ext = GroupExtension::from_cocycle(c, &c.expand_cocycle(g));
        let m = GroupMorphism::identity(&corr.group);
        let moved = group_extension_along(&m, &ext, c, c).unwrap();
        let v = c.restrict_table_full(&moved.cocycle(c).unwrap());
        assert_eq!(h.classify(&v), h.classify(&group_h2_along(&m, c, c, g)));
        assert_eq!(h.classify(&v), h.classify(g));
    }

    #[test]
    fn out_of_scope_flagged() {
        // adjoint action of a class-2 ring with d = 2: c + d = 4 < 5 is fine,
        // but p = 3 puts it out of scope for degree 2
        let adj = LieTriple::adjoint(heisenberg(3, 1));
        let r = compare(&adj, 2, &Bounds::cube(3)).unwrap();
        assert!(!r.in_scope);
        let corr = Correspondence::new(adj).unwrap();
        assert!(matches!(corr.h2_to_group(&vec![0; 18]), Err(CohomologyError::Hypothesis(_))));
    }
}
