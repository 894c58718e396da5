use crate::cohomology::LieExtension;
use crate::liering::{abelian, heisenberg};
use crate::ring::{AbelianPGroup, HomMatrix};
use crate::triples::LieTriple;

use super::LieCrossedModule;

fn central(t: &LieTriple, tails: &[u64]) -> LieCrossedModule {
    let ext = LieExtension::from_tails(t, tails);
    LieCrossedModule::from_central_extension(&ext, t).expect("central extension")
}

/// Named Lie crossed modules inside the transport range, at `p = 5`
/// and `p = 7`.
pub fn lie_zoo() -> Vec<(String, LieCrossedModule)> {
    let h5 = heisenberg(5, 1);
    let h7 = heisenberg(7, 1);
    let a2 = abelian(5, vec![1, 1]);
    let z5 = AbelianPGroup::new(5, vec![1]);
    let jordan = LieTriple::new(
        abelian(5, vec![1]),
        AbelianPGroup::new(5, vec![1, 1]),
        vec![HomMatrix::new(AbelianPGroup::new(5, vec![1, 1]), AbelianPGroup::new(5, vec![1, 1]), vec![vec![0, 1], vec![0, 0]])
            .expect("jordan block")],
    )
    .expect("jordan triple");
    let heis_ext = central(&LieTriple::trivial(a2.clone(), z5.clone()), &[0, 0, 1]);
    let cyclic_ext = central(&LieTriple::trivial(abelian(5, vec![1]), z5.clone()), &[1]);
    let mut zoo = vec![
        ("center in heisenberg(5)", LieCrossedModule::ideal_inclusion(&h5, &h5.span(&[vec![0, 0, 1]]))),
        ("heisenberg(5) in itself", LieCrossedModule::ideal_inclusion(&h5, &h5.whole())),
        ("factor in (Z/5)^2", LieCrossedModule::ideal_inclusion(&a2, &a2.span(&[vec![1, 0]]))),
        ("center in heisenberg(7)", LieCrossedModule::ideal_inclusion(&h7, &h7.span(&[vec![0, 0, 1]]))),
        ("trivial Z/5 over Z/5", Ok(LieCrossedModule::from_triple(&LieTriple::trivial(abelian(5, vec![1]), z5.clone())))),
        ("adjoint heisenberg(5)", Ok(LieCrossedModule::from_triple(&LieTriple::adjoint(h5.clone())))),
        ("adjoint heisenberg(7)", Ok(LieCrossedModule::from_triple(&LieTriple::adjoint(h7.clone())))),
        ("jordan (Z/5)^2 over Z/5", Ok(LieCrossedModule::from_triple(&jordan))),
        ("heisenberg(5) onto (Z/5)^2", Ok(heis_ext.clone())),
        ("Z/25 onto Z/5", Ok(cyclic_ext.clone())),
    ]
    .into_iter()
    .map(|(n, x)| (n.to_string(), x.expect("zoo member")))
    .collect::<Vec<_>>();
    zoo.push(("heisenberg(5) onto (Z/5)^2, doubled".into(), heis_ext.baer_sum(&heis_ext).expect("same boundary")));
    zoo.push(("split over (Z/5)^2".into(), heis_ext.split().expect("split")));
    zoo.push(("Z/25 onto Z/5, doubled".into(), cyclic_ext.baer_sum(&cyclic_ext).expect("same boundary")));
    zoo
}
