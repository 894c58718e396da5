use crate::bchgroup::CayleyGroup;
use crate::liering::{LieElement, NilLieRing};
use crate::ring::HomMatrix;
use crate::triples::{matrix_exp, matrix_log};

use super::{CrossedError, FramedGroup, GroupCrossedModule, LieCrossedModule};

fn columns(l: &NilLieRing, cols: &[Vec<u64>], target: &NilLieRing) -> Result<HomMatrix, CrossedError> {
    let entries = (0..target.rank()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    Ok(HomMatrix::new(l.module.clone(), target.module.clone(), entries)?)
}

/// Largest nontrivial term of the lower central series, as an element.
fn gamma_witness(g: &CayleyGroup) -> Option<usize> {
    let series = g.gamma_series();
    series.iter().rev().find(|s| s.len() > 1).and_then(|s| s.iter().copied().find(|&x| x != g.identity()))
}

fn lie_gamma_witness(l: &NilLieRing) -> Option<LieElement> {
    let series = l.lower_central_series().ok()?;
    series.iter().rev().find(|s| !s.is_zero()).and_then(|s| s.generators().into_iter().next())
}

fn group_guard(x: &GroupCrossedModule) -> Result<(), CrossedError> {
    let p = x.h.table.p;
    let (c1, c2) = (x.g1.table.nilpotency_class(), x.g2.table.nilpotency_class());
    let c = c1.max(c2);
    let chain = x.length_chain();
    let d = chain.len() - 1;
    if c + d < p as usize {
        return Ok(());
    }
    let (name, g) = if c1 >= c2 { ("G1", &x.g1.table) } else { ("G2", &x.g2.table) };
    let mut witness = match gamma_witness(g) {
        Some(e) => format!("gamma_{c} of {name} contains element {e}"),
        None => format!("{name} is trivial"),
    };
    if d > 0 {
        let e = chain[d - 1].iter().copied().find(|&y| y != x.h.table.identity()).unwrap_or(0);
        witness.push_str(&format!("; [M, _{} G1] contains element {e}", d - 1));
    }
    Err(CrossedError::Bound { c, d, p, witness })
}

fn lie_guard(y: &LieCrossedModule) -> Result<(), CrossedError> {
    let p = y.h.p;
    let (c1, c2) = (y.g1.nilpotency_class()?, y.g2.nilpotency_class()?);
    let c = c1.max(c2);
    let d = y.action_length();
    if c + d < p as usize {
        return Ok(());
    }
    let (name, l) = if c1 >= c2 { ("g1", &y.g1) } else { ("g2", &y.g2) };
    let mut witness = match lie_gamma_witness(l) {
        Some(e) => format!("gamma_{c} of {name} contains {e:?}"),
        None => format!("{name} is zero"),
    };
    if let Some(e) = y.length_witness() {
        witness.push_str(&format!("; [M, _{} g1] contains {e:?}", d.saturating_sub(1)));
    }
    Err(CrossedError::Bound { c, d, p, witness })
}

/// Lie crossed module of `log H -> log G1 -> log G2`, with each
/// automorphism `eta(g)` replaced by its logarithm.
pub fn log_crossed(x: &GroupCrossedModule) -> Result<LieCrossedModule, CrossedError> {
    x.require_axioms()?;
    group_guard(x)?;
    let p = x.h.table.p;
    let (lh, ch) = x.h.log()?;
    let (l1, c1) = x.g1.log()?;
    let (l2, c2) = x.g2.log()?;
    let index = |l: &NilLieRing, coords: &[LieElement]| {
        let mut inv = vec![0; coords.len()];
        for (i, c) in coords.iter().enumerate() {
            inv[l.module.index_of(c)] = i;
        }
        inv
    };
    let (ih, i1) = (index(&lh, &ch), index(&l1, &c1));
    let at = |inv: &[usize], l: &NilLieRing, k: usize| inv[l.module.index_of(&l.basis(k))];
    let mu_cols: Vec<Vec<u64>> = (0..lh.rank()).map(|k| c1[x.mu[at(&ih, &lh, k)]].clone()).collect();
    let alpha_cols: Vec<Vec<u64>> = (0..l1.rank()).map(|k| c2[x.alpha[at(&i1, &l1, k)]].clone()).collect();
    let eta = (0..l1.rank())
        .map(|j| {
            let g = at(&i1, &l1, j);
            let cols: Vec<Vec<u64>> = (0..lh.rank()).map(|k| ch[x.eta[g][at(&ih, &lh, k)]].clone()).collect();
            let a = columns(&lh, &cols, &lh)?;
            let d = matrix_log(&a, p)?;
            if matrix_exp(&d, p)? != a {
                return Err(CrossedError::NotUnipotent);
            }
            Ok(d)
        })
        .collect::<Result<Vec<_>, CrossedError>>()?;
    let m = &x.module;
    let iota_cols: Vec<Vec<u64>> = (0..m.rank()).map(|k| ch[x.iota[m.index_of(&m.unit(k))]].clone()).collect();
    let iota_entries = (0..lh.rank()).map(|i| iota_cols.iter().map(|c| c[i]).collect()).collect();
    let out = LieCrossedModule {
        mu: columns(&lh, &mu_cols, &l1)?,
        alpha: columns(&l1, &alpha_cols, &l2)?,
        iota: HomMatrix::new(m.clone(), lh.module.clone(), iota_entries)?,
        eta,
        h: lh,
        g1: l1,
        g2: l2,
        module: m.clone(),
    };
    out.require_axioms()?;
    Ok(out)
}

/// Group crossed module of `exp h -> exp g1 -> exp g2` on the coordinate
/// sets, with `g` acting by `exp(eta(g))`.
pub fn exp_crossed(y: &LieCrossedModule) -> Result<GroupCrossedModule, CrossedError> {
    y.require_axioms()?;
    lie_guard(y)?;
    let p = y.h.p;
    let h = FramedGroup::exp(&y.h)?;
    let g1 = FramedGroup::exp(&y.g1)?;
    let g2 = FramedGroup::exp(&y.g2)?;
    let mu = y.h.elements().map(|a| y.g1.module.index_of(&y.mu.apply(&a))).collect();
    let alpha = y.g1.elements().map(|a| y.g2.module.index_of(&y.alpha.apply(&a))).collect();
    let hs: Vec<LieElement> = y.h.elements().collect();
    let eta = y
        .g1
        .elements()
        .map(|a| {
            let m = matrix_exp(&y.eta_of(&a), p)?;
            Ok(hs.iter().map(|x| y.h.module.index_of(&m.apply(x))).collect())
        })
        .collect::<Result<Vec<Vec<usize>>, CrossedError>>()?;
    let iota = y.module.elements().map(|m| y.h.module.index_of(&y.iota.apply(&m))).collect();
    let out = GroupCrossedModule { h, g1, g2, mu, alpha, eta, module: y.module.clone(), iota };
    out.require_axioms()?;
    Ok(out)
}
