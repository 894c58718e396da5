//! Schur multipliers as the colimit of `H^2(-, Z/p^i)` with trivial action
//! along `Z/p^i -> Z/p^{i+1}`, `1 -> p`.

use serde::Serialize;

use crate::bchgroup::CayleyGroup;
use crate::cohomology::{lie_h2, Bounds, CohomologyError, CohomologyGroup, Correspondence, GroupCochains, Side};
use crate::liering::NilLieRing;
use crate::ring::{AbelianPGroup, HomMatrix, InvariantFactors, SubgroupBasis};
use crate::triples::LieTriple;

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub level: u32,
    pub h2: InvariantFactors,
    /// Image of the previous level under the coefficient inclusion.
    pub image: InvariantFactors,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplierReport {
    pub side: Side,
    pub p: u64,
    pub levels: Vec<LevelReport>,
    pub cap: u32,
    /// `None` when stability was not certified below the cap.
    pub stable: Option<InvariantFactors>,
    pub stabilized_at: Option<u32>,
    pub verdict: String,
}

/// One coefficient level with the data needed to push classes forward.
struct Level {
    h2: CohomologyGroup,
}

/// `v -> p v` on cochain coordinates, from level `i` to level `i + 1`.
fn push_up(v: &[u64], p: u64) -> Vec<u64> {
    v.iter().map(|&x| x * p).collect()
}

fn image_of(prev: &Level, next: &Level, classes: &[Vec<u64>], p: u64) -> Result<Vec<Vec<u64>>, CohomologyError> {
    classes
        .iter()
        .map(|c| {
            let v = push_up(&prev.h2.representative(c), p);
            next.h2
                .classify(&v)
                .ok_or_else(|| CohomologyError::Internal("pushed cocycle is not a cocycle".into()))
        })
        .collect()
}

fn whole(h: &CohomologyGroup) -> Vec<Vec<u64>> {
    (0..h.classes().rank()).map(|k| h.classes().unit(k)).collect()
}

fn invariants_of(h: &CohomologyGroup, gens: &[Vec<u64>]) -> InvariantFactors {
    let shape = SubgroupBasis::new(h.classes(), &h.span(gens).generators()).shape;
    InvariantFactors::new(shape.p, shape.exps.into_iter().filter(|&e| e > 0).collect())
}

fn drive(
    side: Side,
    p: u64,
    cap: u32,
    mut level: impl FnMut(u32) -> Result<CohomologyGroup, CohomologyError>,
) -> Result<MultiplierReport, CohomologyError> {
    let mut levels: Vec<Level> = vec![Level { h2: level(1)? }];
    let mut reports = vec![LevelReport {
        level: 1,
        h2: levels[0].h2.invariants(),
        image: InvariantFactors::trivial(p),
    }];
    // images[i] = image of level i in level i + 1 (0-based levels)
    let mut images: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut stable = None;
    let mut stabilized_at = None;
    for i in 2..=cap + 1 {
        let next = Level { h2: level(i)? };
        let prev = levels.last().unwrap();
        let img = image_of(prev, &next, &whole(&prev.h2), p)?;
        reports.push(LevelReport { level: i, h2: next.h2.invariants(), image: invariants_of(&next.h2, &img) });
        images.push(img);
        levels.push(next);
        // criterion at level i - 1: compare the image in level i - 1 with
        // the image in level i, and the map between them
        if images.len() >= 2 {
            let k = images.len();
            let (a, b) = (&images[k - 2], &images[k - 1]);
            let (la, lb) = (&levels[k - 1], &levels[k]);
            let ia = invariants_of(&la.h2, a);
            let ib = invariants_of(&lb.h2, b);
            let moved = image_of(la, lb, a, p)?;
            let im = lb.h2.span(&moved);
            if ia == ib && im.order() as u128 == ib.order() && im == lb.h2.span(b) {
                stable = Some(ib);
                stabilized_at = Some(i - 1);
                break;
            }
        }
    }
    let verdict = if stable.is_some() { "stable" } else { "inconclusive" }.to_string();
    Ok(MultiplierReport { side, p, levels: reports, cap, stable, stabilized_at, verdict })
}

fn cyclic(p: u64, i: u32) -> AbelianPGroup {
    AbelianPGroup::new(p, vec![i])
}

fn ceil_log(p: u64, n: u64) -> u32 {
    let mut k = 0;
    let mut x = 1u64;
    while x < n {
        x *= p;
        k += 1;
    }
    k
}

fn guard(class: usize, p: u64) -> Result<(), CohomologyError> {
    if class + 1 >= p as usize {
        return Err(CohomologyError::Hypothesis(format!(
            "Schur comparison needs c < p - 1 (c = {class}, p = {p})"
        )));
    }
    Ok(())
}

pub fn schur_lie(l: &NilLieRing, bounds: &Bounds) -> Result<MultiplierReport, CohomologyError> {
    guard(l.nilpotency_class()?, l.p)?;
    bounds.check(l.order() as usize)?;
    let cap = l.module.max_exp() + ceil_log(l.p, l.order());
    drive(Side::Lie, l.p, cap, |i| Ok(lie_h2(&LieTriple::trivial(l.clone(), cyclic(l.p, i)))))
}

pub fn schur_group(g: &CayleyGroup, bounds: &Bounds) -> Result<MultiplierReport, CohomologyError> {
    guard(g.nilpotency_class(), g.p)?;
    bounds.check(g.order())?;
    let exponent = (0..g.order()).map(|x| g.element_order(x)).max().unwrap_or(1) as u64;
    let cap = ceil_log(g.p, exponent) + ceil_log(g.p, g.order() as u64);
    let gens = g.generating_set();
    drive(Side::Group, g.p, cap, |i| {
        let m = cyclic(g.p, i);
        let phi = vec![HomMatrix::identity(m.clone()); g.order()];
        GroupCochains::from_parts(g.clone(), m, phi, gens.clone()).h2(bounds)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurComparison {
    pub lie: MultiplierReport,
    pub group: MultiplierReport,
    pub equal: bool,
    /// Transport commutes with the coefficient inclusions at every level
    /// up to stabilization (on class generators).
    pub squares_commute: bool,
    pub verdict: String,
}

pub fn compare_schur(l: &NilLieRing, bounds: &Bounds) -> Result<SchurComparison, CohomologyError> {
    guard(l.nilpotency_class()?, l.p)?;
    let lie = schur_lie(l, bounds)?;
    let group = crate::triples::exp_triple(&LieTriple::trivial(l.clone(), cyclic(l.p, 1)))?.group.cayley().into_owned();
    let group = schur_group(&group, bounds)?;
    let equal = lie.stable.is_some() && lie.stable == group.stable;
    let top = lie.stabilized_at.max(group.stabilized_at).unwrap_or(lie.cap) + 1;
    let mut squares_commute = true;
    let mut prev: Option<(Correspondence, CohomologyGroup)> = None;
    for i in 1..=top {
        let corr = Correspondence::new(LieTriple::trivial(l.clone(), cyclic(l.p, i)))?;
        let lh = lie_h2(&corr.lie);
        let gh = corr.cochains.h2(bounds)?;
        if let Some((pc, plh)) = &prev {
            for v in plh.generators() {
                let via_group = gh.classify(&push_up(&pc.h2_to_group(&v)?, l.p));
                let via_lie = gh.classify(&corr.h2_to_group(&push_up(&v, l.p))?);
                squares_commute &= via_group.is_some() && via_group == via_lie;
            }
        }
        prev = Some((corr, lh));
    }
    let verdict = match (lie.stable.is_some() && group.stable.is_some(), equal && squares_commute) {
        (false, _) => "inconclusive",
        (true, true) => "equal",
        (true, false) => "different",
    }
    .to_string();
    Ok(SchurComparison { lie, group, equal, squares_commute, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liering::{abelian, heisenberg};

    #[test]
    fn abelian_multipliers() {
        let b = Bounds::cube(5);
        let c = compare_schur(&abelian(5, vec![1]), &b).unwrap();
        assert_eq!(c.verdict, "equal");
        assert!(c.lie.stable.as_ref().unwrap().is_trivial());
        let c = compare_schur(&abelian(5, vec![1, 1]), &b).unwrap();
        assert_eq!(c.verdict, "equal");
        assert_eq!(c.lie.stable.as_ref().unwrap().factors(), vec![5]);
    }

    #[test]
    fn class_bound_refused() {
        let l = crate::liering::free_nilpotent(2, 2, 3, 1);
        assert!(matches!(schur_lie(&l, &Bounds::cube(3)), Err(CohomologyError::Hypothesis(_))));
    }

    #[test]
    fn heisenberg_multiplier_matches() {
        let c = compare_schur(&heisenberg(5, 1), &Bounds::cube(5)).unwrap();
        assert_eq!(c.verdict, "equal", "{c:?}");
        assert_eq!(c.lie.stable.as_ref().unwrap().factors(), vec![5, 5]);
    }
}
