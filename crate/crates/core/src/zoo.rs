//! Named triples and triple morphisms used by the tests and the CLI
//! examples: abelian, Heisenberg and free class-3 rings with trivial,
//! Jordan and adjoint actions.

use crate::liering::{abelian, free_nilpotent, heisenberg, LieElement, LieHom, NilLieRing};
use crate::ring::{AbelianPGroup, HomMatrix};
use crate::triples::{LieMorphism, LieTriple};

/// The `n x n` nilpotent shift `e_{k+1} -> e_k` on `(Z/p)^n`, raised to `power`.
pub fn jordan_block(p: u64, n: usize, power: usize) -> HomMatrix {
    let m = AbelianPGroup::new(p, vec![1; n]);
    let rows = (0..n).map(|i| (0..n).map(|j| u64::from(j == i + power)).collect()).collect();
    HomMatrix::new(m.clone(), m, rows).expect("shift matrix")
}

/// `L` abelian of the given exponents acting on `(Z/p)^n` by powers of
/// one Jordan block, basis element `i` acting by `J^{powers[i]}` (0 = zero).
pub fn jordan_triple(p: u64, exps: Vec<u32>, n: usize, powers: &[usize]) -> LieTriple {
    let l = abelian(p, exps);
    let m = AbelianPGroup::new(p, vec![1; n]);
    let psi = powers
        .iter()
        .map(|&k| if k == 0 { HomMatrix::zero(m.clone(), m.clone()) } else { jordan_block(p, n, k) })
        .collect();
    LieTriple::new(l, m, psi).expect("commuting nilpotent action")
}

fn rings(p: u64) -> Vec<(String, NilLieRing)> {
    let mut out = vec![
        (format!("Z/{p}"), abelian(p, vec![1])),
        (format!("(Z/{p})^2"), abelian(p, vec![1, 1])),
        (format!("Z/{p}^2"), abelian(p, vec![2])),
        (format!("heisenberg({p})"), heisenberg(p, 1)),
    ];
    if p == 5 {
        out.push(("Z/25 + Z/5".into(), abelian(p, vec![2, 1])));
        out.push(("(Z/5)^3".into(), abelian(p, vec![1, 1, 1])));
        out.push(("free(2, 3, 5)".into(), free_nilpotent(2, 3, p, 1)));
    }
    out
}

/// At least fifty triples at `p = 5` and `p = 7`, all with `c, d < p`.
pub fn triple_zoo() -> Vec<(String, LieTriple)> {
    let mut out = Vec::new();
    for p in [5, 7] {
        for (name, l) in rings(p) {
            for exps in [vec![1], vec![1, 1], vec![2]] {
                let m = AbelianPGroup::new(p, exps.clone());
                out.push((format!("{name} on trivial {exps:?}"), LieTriple::trivial(l.clone(), m)));
            }
            out.push((format!("adjoint {name}"), LieTriple::adjoint(l)));
        }
        for n in 2..=p.min(5) as usize - 1 {
            out.push((format!("Z/{p} by J{n}"), jordan_triple(p, vec![1], n, &[1])));
        }
        out.push((format!("(Z/{p})^2 by (J2, 0)"), jordan_triple(p, vec![1, 1], 2, &[1, 0])));
        out.push((format!("(Z/{p})^2 by (J3, J3^2)"), jordan_triple(p, vec![1, 1], 3, &[1, 2])));
    }
    out.push(("Z/25 by J2".into(), jordan_triple(5, vec![2], 2, &[1])));
    out
}

/// A morphism `T1 -> T2`: `alpha: L2 -> L1`, `beta: M1 -> M2`.
#[derive(Clone, Debug)]
pub struct ZooMorphism {
    pub name: String,
    pub source: LieTriple,
    pub target: LieTriple,
    pub morphism: LieMorphism,
}

fn inverse(a: &HomMatrix) -> HomMatrix {
    let id = HomMatrix::identity(a.source.clone());
    let mut prev = id.clone();
    let mut cur = a.clone();
    while cur != id {
        prev = cur.clone();
        cur = cur.compose(a);
    }
    prev
}

fn hom(source: &NilLieRing, target: &NilLieRing, images: &[LieElement]) -> LieHom {
    LieHom::new(source, target, images).expect("zoo homomorphism")
}

fn scalar(m: &AbelianPGroup, k: u64) -> HomMatrix {
    HomMatrix::identity(m.clone()).scale(k as i128)
}

/// At least twenty morphisms, including composable automorphisms.
pub fn morphism_zoo() -> Vec<ZooMorphism> {
    let mut out = Vec::new();
    // adjoint automorphisms: (theta, theta^{-1}) on (L, L, ad)
    let heis_autos = |p: u64| -> Vec<(&'static str, Vec<LieElement>)> {
        vec![
            ("x -> 2x", vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]),
            ("y -> 3y", vec![vec![1, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]),
            ("shear", vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            ("swap", vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, p - 1]]),
            ("inner", vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]),
        ]
    };
    for p in [5, 7] {
        let l = heisenberg(p, 1);
        let t = LieTriple::adjoint(l.clone());
        let autos = heis_autos(p);
        let take = if p == 5 { autos.len() } else { 3 };
        for (name, images) in autos.into_iter().take(take) {
            let alpha = hom(&l, &l, &images);
            let beta = inverse(&alpha.map);
            out.push(ZooMorphism {
                name: format!("adjoint heisenberg({p}): {name}"),
                source: t.clone(),
                target: t.clone(),
                morphism: LieMorphism { alpha, beta },
            });
        }
    }
    let a2 = abelian(5, vec![1, 1]);
    let ta = LieTriple::adjoint(a2.clone());
    for (name, images) in [("(a, b) -> (b, a)", vec![vec![0, 1], vec![1, 0]]), ("a -> a + b", vec![vec![1, 1], vec![0, 1]])] {
        let alpha = hom(&a2, &a2, &images);
        let beta = HomMatrix::identity(a2.module.clone()).scale(2);
        out.push(ZooMorphism { name: format!("adjoint (Z/5)^2: {name}"), source: ta.clone(), target: ta.clone(), morphism: LieMorphism { alpha, beta } });
    }
    // Jordan scalings: alpha = c, beta = diag(1, c)
    for p in [5u64, 7] {
        let t = jordan_triple(p, vec![1], 2, &[1]);
        for c in 2..p {
            let alpha = hom(&t.ring, &t.ring, &[vec![c]]);
            let beta = HomMatrix::new(t.module.clone(), t.module.clone(), vec![vec![1, 0], vec![0, c]]).expect("diagonal");
            out.push(ZooMorphism { name: format!("Z/{p} by J2: scale {c}"), source: t.clone(), target: t.clone(), morphism: LieMorphism { alpha, beta } });
        }
    }
    // trivial coefficients: quotients, inclusions, reductions
    let z5 = AbelianPGroup::new(5, vec![1]);
    let z25 = AbelianPGroup::new(5, vec![2]);
    let h = heisenberg(5, 1);
    let a1 = abelian(5, vec![1]);
    let c1 = abelian(5, vec![2]);
    let triv = |l: &NilLieRing, m: &AbelianPGroup| LieTriple::trivial(l.clone(), m.clone());
    let red = HomMatrix::new(z25.clone(), z5.clone(), vec![vec![1]]).expect("reduction");
    let mul5 = HomMatrix::new(z5.clone(), z25.clone(), vec![vec![5]]).expect("times 5");
    let cases = vec![
        ("heisenberg onto (Z/5)^2", triv(&a2, &z5), triv(&h, &z5), hom(&h, &a2, &[vec![1, 0], vec![0, 1], vec![0, 0]]), scalar(&z5, 3)),
        ("center into heisenberg", triv(&h, &z5), triv(&a1, &z5), hom(&a1, &h, &[vec![0, 0, 1]]), scalar(&z5, 1)),
        ("Z/5 into Z/25", triv(&c1, &z5), triv(&a1, &z5), hom(&a1, &c1, &[vec![5]]), scalar(&z5, 2)),
        ("Z/25 onto Z/5", triv(&a1, &z5), triv(&c1, &z5), hom(&c1, &a1, &[vec![1]]), scalar(&z5, 1)),
        ("coefficients Z/25 -> Z/5", triv(&h, &z25), triv(&h, &z5), LieHom::identity(&h), red),
        ("coefficients Z/5 -> Z/25", triv(&h, &z5), triv(&h, &z25), LieHom::identity(&h), mul5),
    ];
    for (name, source, target, alpha, beta) in cases {
        out.push(ZooMorphism { name: name.into(), source, target, morphism: LieMorphism { alpha, beta } });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triples::lie_morphism_check;

    #[test]
    fn sizes_and_validity() {
        let z = triple_zoo();
        assert!(z.len() >= 50, "{}", z.len());
        for (name, t) in &z {
            t.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
            let (c, d) = (t.class().unwrap(), t.action_length().unwrap());
            assert!(c < t.ring.p as usize && d < t.ring.p as usize, "{name}");
        }
        let m = morphism_zoo();
        assert!(m.len() >= 20, "{}", m.len());
        for x in &m {
            lie_morphism_check(&x.morphism, &x.source, &x.target).unwrap_or_else(|w| panic!("{}: {w:?}", x.name));
        }
    }
}
