use serde::Serialize;
use serde_json::{json, Value};

use lazard::bchgroup::{log_cayley, recover_lie, GroupError, LazardGroup};
use lazard::cohomology::{
    compare, h0_group, h0_lie, lie_h1, lie_h2, Bounds, CohomologyError, CohomologyGroup, Correspondence,
    GroupCochains, GroupExtension, LieExtension, ModuleExtension,
};
use lazard::crossedmod::{exp_crossed, log_crossed, CrossedError, Equivalence, LieCrossedModule};
use lazard::fiveterm::five_term_verify;
use lazard::freelie::bch_table as bch;
use lazard::liering::NilLieRing;
use lazard::ring::{pow, Subgroup};
use lazard::schur::{compare_schur, schur_group, schur_lie};
use lazard::triples::{exp_triple, TripleError};

use crate::format::{self, CrossedSpec, Document};
use crate::{CrossedOp, Outcome, SideArg, Status};

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

fn group_status(e: &GroupError) -> Status {
    match e {
        GroupError::LazardBound { .. } => Status::Refused,
        _ => Status::Failed,
    }
}

fn triple_status(e: &TripleError) -> Status {
    match e {
        TripleError::OutsideRange { .. } => Status::Refused,
        TripleError::Group(g) => group_status(g),
        _ => Status::Failed,
    }
}

fn cohomology_status(e: &CohomologyError) -> Status {
    match e {
        CohomologyError::TooLarge { .. } => Status::Inconclusive,
        CohomologyError::Hypothesis(_) => Status::Refused,
        CohomologyError::Triple(t) => triple_status(t),
        CohomologyError::Group(g) => group_status(g),
        _ => Status::Failed,
    }
}

fn crossed_status(e: &CrossedError) -> Status {
    match e {
        CrossedError::Bound { .. } => Status::Refused,
        CrossedError::Group(g) => group_status(g),
        _ => Status::Failed,
    }
}

impl From<CohomologyError> for Outcome {
    fn from(e: CohomologyError) -> Self {
        Outcome::fail(cohomology_status(&e), e.to_string())
    }
}

impl From<GroupError> for Outcome {
    fn from(e: GroupError) -> Self {
        Outcome::fail(group_status(&e), e.to_string())
    }
}

impl From<TripleError> for Outcome {
    fn from(e: TripleError) -> Self {
        Outcome::fail(triple_status(&e), e.to_string())
    }
}

impl From<CrossedError> for Outcome {
    fn from(e: CrossedError) -> Self {
        Outcome::fail(crossed_status(&e), e.to_string())
    }
}

/// Runs a fallible job body and flattens the error into an outcome.
fn job(f: impl FnOnce() -> Result<Outcome, Outcome>) -> Outcome {
    f().unwrap_or_else(|o| o)
}

fn env_cap() -> Option<usize> {
    std::env::var("LAZARD_MAX_ELEMENTS").ok().and_then(|v| v.trim().parse().ok()).filter(|&n| n > 0)
}

/// Cohomology size bounds: `LAZARD_MAX_ELEMENTS`, default `p^3`.
fn bounds(p: u64) -> Bounds {
    env_cap().map_or_else(|| Bounds::cube(p), |max_elements| Bounds { max_elements })
}

/// Group enumeration cap: `LAZARD_MAX_ELEMENTS`, default `p^4`.
fn enumerable(l: &NilLieRing) -> Result<(), Outcome> {
    let cap = env_cap().unwrap_or(pow(l.p, 4) as usize);
    let n = l.order() as usize;
    if n > cap {
        return Err(Outcome::fail(Status::Inconclusive, format!("group of order {n} exceeds the element cap {cap}")));
    }
    Ok(())
}

fn class_of(l: &NilLieRing) -> Result<usize, Outcome> {
    l.nilpotency_class().map_err(|e| Outcome::fail(Status::Failed, e.to_string()))
}

pub fn validate(text: &str) -> Outcome {
    let doc = match format::parse(text) {
        Ok(d) => d,
        Err(e) => return Outcome::fail(Status::Failed, format!("malformed input: {e}")),
    };
    let canonical = format::write(&doc);
    let round_trip = format::parse(&canonical).ok().as_ref() == Some(&doc) && format::write(&doc) == canonical;
    let class = doc.ring.nilpotency_class().ok();
    let mut result = json!({
        "ok": true,
        "p": doc.ring.p,
        "rank": doc.ring.rank(),
        "order": doc.ring.order(),
        "class": class,
        "class_hint_matches": doc.class_hint.map(|c| Some(c) == class),
        "canonical": canonical == text,
        "round_trip": round_trip,
        "text": canonical,
    });
    if let Some(t) = doc.module.as_ref().map(|_| doc.triple()) {
        result["action_length"] = json!(t.action_length().ok());
    }
    let status = if round_trip && doc.class_hint.map_or(true, |c| Some(c) == class) { Status::Ok } else { Status::Failed };
    Outcome::with(status, result)
}

pub fn bch_table(class: usize) -> Outcome {
    if class == 0 || class > 8 {
        return Outcome::fail(Status::Failed, format!("class must be between 1 and 8, got {class}"));
    }
    let t = bch(class);
    Outcome::ok(json!({
        "class": class,
        "worst_denominator_prime": t.worst_denominator_prime(),
        "entries": to_json(&t.entries()),
    }))
}

pub fn exp(doc: &Document) -> Outcome {
    job(|| {
        let l = &doc.ring;
        let class = class_of(l)?;
        let g = LazardGroup::new(l.clone())?;
        enumerable(l)?;
        let cayley = g.to_cayley();
        let gamma: Vec<usize> = cayley.gamma_series().iter().map(|s| s.len()).collect();
        Ok(Outcome::ok(json!({
            "p": l.p,
            "order": cayley.order(),
            "lie_class": class,
            "class": cayley.nilpotency_class(),
            "gamma_sizes": gamma,
        })))
    })
}

pub fn log(doc: &Document) -> Outcome {
    job(|| {
        let l = &doc.ring;
        let g = LazardGroup::new(l.clone())?;
        enumerable(l)?;
        let recovered = recover_lie(&g)?.relabel(l.labels.clone());
        let (abstract_ring, _) = log_cayley(&g.to_cayley())?;
        let same = recovered == *l;
        let text = format::write(&Document { ring: recovered, class_hint: None, module: None, crossed: None });
        Ok(Outcome::with(
            if same { Status::Ok } else { Status::Failed },
            json!({
                "p": l.p,
                "order": g.order(),
                "round_trip": same,
                "cayley_log_order": abstract_ring.order(),
                "cayley_log_class": abstract_ring.nilpotency_class().ok(),
                "text": text,
            }),
        ))
    })
}

fn classes_json(h: &CohomologyGroup) -> Value {
    json!({
        "invariant_factors": to_json(&h.invariants()),
        "generators": h.generators(),
    })
}

fn subgroup_json(s: &Subgroup) -> Value {
    json!({ "order": s.order(), "generators": s.generators() })
}

pub fn cohomology(doc: &Document, degree: usize, side: SideArg) -> Outcome {
    if degree > 2 {
        return Outcome::fail(Status::Failed, format!("degree must be 0, 1 or 2, got {degree}"));
    }
    let t = doc.triple();
    let b = bounds(t.ring.p);
    job(|| {
        let single = |side: &str, data: Value, factors: Value| {
            Outcome::ok(json!({
                "degree": degree,
                "side": side,
                "invariant_factors": factors,
                "side_data": data,
                "verdict": "computed",
                "witnesses": [],
            }))
        };
        match side {
            SideArg::Lie => {
                let data = match degree {
                    0 => subgroup_json(&h0_lie(&t)),
                    1 => classes_json(&lie_h1(&t)),
                    _ => {
                        b.check(t.ring.order() as usize)?;
                        classes_json(&lie_h2(&t))
                    }
                };
                let factors = data.get("invariant_factors").cloned().unwrap_or(Value::Null);
                Ok(single("lie", data, factors))
            }
            SideArg::Group => {
                let g = exp_triple(&t)?;
                let data = match degree {
                    0 => subgroup_json(&h0_group(&g)),
                    1 => classes_json(&GroupCochains::new(&g).h1()),
                    _ => classes_json(&GroupCochains::new(&g).h2(&b)?),
                };
                let factors = data.get("invariant_factors").cloned().unwrap_or(Value::Null);
                Ok(single("group", data, factors))
            }
            SideArg::Compare => {
                let r = compare(&t, degree, &b)?;
                let (status, verdict) = match (r.in_scope, r.isomorphic) {
                    (false, _) => (Status::Refused, "refused"),
                    (true, Some(true)) => (Status::Ok, "equal"),
                    (true, _) => (Status::Failed, "different"),
                };
                let mut out = json!({
                    "degree": degree,
                    "side": "compare",
                    "invariant_factors": { "lie": to_json(&r.lie), "group": to_json(&r.group) },
                    "side_data": to_json(&r),
                    "verdict": verdict,
                    "witnesses": r.notes,
                });
                if !r.in_scope {
                    out["hypothesis"] = json!(format!("needs {}", r.hypothesis));
                }
                let error = (!r.in_scope).then(|| {
                    format!(
                        "hypothesis violated: degree-{degree} comparison needs {} (c = {}, d = {}, p = {})",
                        r.hypothesis, r.class, r.action_length, r.p
                    )
                });
                Ok(Outcome { status, result: out, error })
            }
        }
    })
}

pub fn compare_all(doc: &Document) -> Outcome {
    let t = doc.triple();
    let b = bounds(t.ring.p);
    job(|| {
        let mut reports = Vec::new();
        let mut status = Status::Ok;
        for d in 0..=2 {
            let r = compare(&t, d, &b)?;
            if !r.in_scope {
                status = Status::Refused;
            } else if r.isomorphic != Some(true) && status == Status::Ok {
                status = Status::Failed;
            }
            reports.push(to_json(&r));
        }
        Ok(Outcome::with(status, json!({ "degrees": reports })))
    })
}

fn parse_coords(s: &str) -> Result<Vec<u64>, Outcome> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Outcome::fail(Status::Failed, format!("bad class coordinates `{s}`: {e}")))
}

fn pairs(h: &CohomologyGroup, left: Option<&str>, right: Option<&str>) -> Result<Vec<(Vec<u64>, Vec<u64>)>, Outcome> {
    let n = h.classes().rank();
    if let (Some(a), Some(b)) = (left, right) {
        let (a, b) = (parse_coords(a)?, parse_coords(b)?);
        if a.len() != n || b.len() != n {
            return Err(Outcome::fail(Status::Failed, format!("classes need {n} coordinates")));
        }
        let c = h.classes();
        let (mut a, mut b) = (a, b);
        c.reduce(&mut a);
        c.reduce(&mut b);
        return Ok(vec![(a, b)]);
    }
    let units: Vec<Vec<u64>> = (0..n).map(|i| h.classes().unit(i)).collect();
    Ok((0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| (units[i].clone(), units[j].clone())).collect())
}

fn classify(h: &CohomologyGroup, v: &[u64]) -> Result<Vec<u64>, Outcome> {
    h.classify(v).ok_or_else(|| Outcome::fail(Status::Failed, "internal: result is not a cocycle"))
}

pub fn baer_sum(doc: &Document, degree: usize, left: Option<&str>, right: Option<&str>) -> Outcome {
    let t = doc.triple();
    let b = bounds(t.ring.p);
    job(|| {
        let corr = Correspondence::new(t.clone())?;
        let c = &corr.cochains;
        let mut rows = Vec::new();
        let mut all = true;
        match degree {
            1 => {
                let (lh, gh) = (lie_h1(&t), c.h1());
                for (a, bb) in pairs(&lh, left, right)? {
                    let (va, vb) = (lh.representative(&a), lh.representative(&bb));
                    let lsum = ModuleExtension::from_derivation(&corr, &va)
                        .baer_sum(&ModuleExtension::from_derivation(&corr, &vb))
                        .cocycle_values()?
                        .concat();
                    let lie_sum = classify(&lh, &lsum)?;
                    let (ga, gb) = (corr.h1_to_group(&va)?, corr.h1_to_group(&vb)?);
                    let gvals = ModuleExtension::from_crossed(&corr, &ga)
                        .baer_sum(&ModuleExtension::from_crossed(&corr, &gb))
                        .cocycle_values()?;
                    let group_sum = classify(&gh, &c.restrict_crossed(&gvals))?;
                    let transported = classify(&gh, &corr.h1_to_group(&lh.representative(&lie_sum))?)?;
                    let ok = lie_sum == lh.add_classes(&a, &bb) && group_sum == transported;
                    all &= ok;
                    rows.push(json!({
                        "left": a, "right": bb, "lie_sum": lie_sum,
                        "group_sum": group_sum, "transported_sum": transported, "additive": ok,
                    }));
                }
            }
            2 => {
                b.check(t.ring.order() as usize)?;
                let (lh, gh) = (lie_h2(&t), c.h2(&b)?);
                for (a, bb) in pairs(&lh, left, right)? {
                    let (va, vb) = (lh.representative(&a), lh.representative(&bb));
                    let lsum = LieExtension::from_tails(&t, &va).baer_sum(&LieExtension::from_tails(&t, &vb), &t)?;
                    let lie_sum = classify(&lh, &lsum.tails(&t)?)?;
                    let ext = |v: &[u64]| -> Result<GroupExtension, Outcome> {
                        Ok(GroupExtension::from_cocycle(c, &c.expand_cocycle(&corr.h2_to_group(v)?)))
                    };
                    let gsum = ext(&va)?.baer_sum(&ext(&vb)?, c)?;
                    let group_sum = classify(&gh, &c.restrict_table_full(&gsum.cocycle(c)?))?;
                    let transported = classify(&gh, &corr.h2_to_group(&lh.representative(&lie_sum))?)?;
                    let ok = lie_sum == lh.add_classes(&a, &bb) && group_sum == transported;
                    all &= ok;
                    rows.push(json!({
                        "left": a, "right": bb, "lie_sum": lie_sum,
                        "group_sum": group_sum, "transported_sum": transported, "additive": ok,
                    }));
                }
            }
            _ => return Err(Outcome::fail(Status::Failed, format!("baer-sum needs degree 1 or 2, got {degree}"))),
        }
        Ok(Outcome::with(
            if all { Status::Ok } else { Status::Failed },
            json!({ "degree": degree, "pairs": rows, "additive": all }),
        ))
    })
}

pub fn schur(doc: &Document, side: SideArg) -> Outcome {
    let l = &doc.ring;
    let b = bounds(l.p);
    let verdict_status = |v: &str| match v {
        "stable" | "equal" => Status::Ok,
        "inconclusive" => Status::Inconclusive,
        _ => Status::Failed,
    };
    job(|| {
        let (v, body) = match side {
            SideArg::Lie => {
                let r = schur_lie(l, &b)?;
                (r.verdict.clone(), to_json(&r))
            }
            SideArg::Group => {
                let g = LazardGroup::new(l.clone())?;
                enumerable(l)?;
                let r = schur_group(&g.to_cayley(), &b)?;
                (r.verdict.clone(), to_json(&r))
            }
            SideArg::Compare => {
                let r = compare_schur(l, &b)?;
                (r.verdict.clone(), to_json(&r))
            }
        };
        Ok(Outcome::with(verdict_status(&v), body))
    })
}

/// `x; y` or `0,0,1; 1,0,0`: labels or coordinate vectors.
fn parse_generators(l: &NilLieRing, spec: &str) -> Result<Vec<Vec<u64>>, Outcome> {
    spec.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            if let Some(i) = l.labels.iter().position(|b| b == item) {
                return Ok(l.basis(i));
            }
            let v: Vec<i128> = item
                .split(',')
                .map(|x| x.trim().parse::<i128>())
                .collect::<Result<_, _>>()
                .map_err(|_| Outcome::fail(Status::Failed, format!("`{item}` is neither a basis label nor a vector")))?;
            if v.len() != l.rank() {
                return Err(Outcome::fail(Status::Failed, format!("`{item}` needs {} coordinates", l.rank())));
            }
            Ok(l.module.reduce_signed(&v))
        })
        .collect()
}

pub fn five_term(doc: &Document, normal: &str) -> Outcome {
    let l = &doc.ring;
    job(|| {
        let gens = parse_generators(l, normal)?;
        let ideal = l.ideal_closure(&gens);
        let r = five_term_verify(l, &ideal, &bounds(l.p))?;
        let status = if r.exact && r.commutes && r.vertical_isomorphisms { Status::Ok } else { Status::Failed };
        let mut body = to_json(&r);
        body["normal"] = json!({ "order": ideal.order(), "generators": ideal.generators() });
        Ok(Outcome::with(status, body))
    })
}

fn build_crossed(doc: &Document) -> Result<LieCrossedModule, Outcome> {
    let Some(spec) = &doc.crossed else {
        return Err(Outcome::fail(Status::Failed, "malformed input: missing [crossed] section"));
    };
    let l = &doc.ring;
    let y = match &spec.spec {
        CrossedSpec::Ideal(g) => LieCrossedModule::ideal_inclusion(l, &l.ideal_closure(g))?,
        CrossedSpec::Action => LieCrossedModule::from_triple(&doc.triple()),
        CrossedSpec::Adjoint => LieCrossedModule::from_triple(&lazard::triples::LieTriple::adjoint(l.clone())),
        CrossedSpec::Extension(tails) => {
            let t = doc.triple();
            LieCrossedModule::from_central_extension(&LieExtension::from_tails(&t, tails), &t)?
        }
    };
    Ok(if spec.split { y.split()? } else { y })
}

fn sizes(y: &LieCrossedModule) -> Value {
    json!({
        "h": y.h.order(), "g1": y.g1.order(), "g2": y.g2.order(), "module": y.module.order(),
        "class_g1": y.g1.nilpotency_class().ok(), "class_g2": y.g2.nilpotency_class().ok(),
        "action_length": y.action_length(),
    })
}

fn equivalence_status(e: Equivalence) -> Status {
    match e {
        Equivalence::Undecided => Status::Inconclusive,
        _ => Status::Ok,
    }
}

pub fn crossed(doc: &Document, other: Option<&Document>, op: CrossedOp, bound: Option<usize>) -> Outcome {
    job(|| {
        let y = build_crossed(doc)?;
        let bound = bound.or_else(env_cap).unwrap_or(pow(y.h.p, 3) as usize);
        match op {
            CrossedOp::Check => {
                let v = y.check_axioms();
                let x = exp_crossed(&y);
                let body = json!({
                    "sizes": sizes(&y),
                    "axioms": v.is_empty(),
                    "violations": to_json(&v),
                    "transport": match &x { Ok(_) => json!("in range"), Err(e) => json!(e.to_string()) },
                    "group_axioms": x.as_ref().ok().map(|x| x.check_axioms().is_empty()),
                });
                Ok(Outcome::with(if v.is_empty() { Status::Ok } else { Status::Failed }, body))
            }
            CrossedOp::Exp => {
                let x = exp_crossed(&y)?;
                Ok(Outcome::ok(json!({
                    "sizes": sizes(&y),
                    "group": { "h": x.h.order(), "g1": x.g1.order(), "g2": x.g2.order() },
                    "group_axioms": x.check_axioms().is_empty(),
                    "group_action_length": x.action_length(),
                })))
            }
            CrossedOp::Log => {
                let x = exp_crossed(&y)?;
                let back = log_crossed(&x)?;
                let again = exp_crossed(&back)?;
                let ok = back == y && again == x;
                Ok(Outcome::with(
                    if ok { Status::Ok } else { Status::Failed },
                    json!({ "sizes": sizes(&y), "log_exp_identity": back == y, "exp_log_identity": again == x }),
                ))
            }
            CrossedOp::Sum => {
                let z = match other {
                    Some(d) => build_crossed(d)?,
                    None => y.clone(),
                };
                let lie_sum = y.baer_sum(&z)?;
                let (x, w) = (exp_crossed(&y)?, exp_crossed(&z)?);
                let group_sum = x.baer_sum(&w)?;
                let boundary = group_sum.g1 == x.g1
                    && group_sum.g2 == x.g2
                    && group_sum.alpha == x.alpha
                    && group_sum.module == x.module
                    && lie_sum.g1 == y.g1
                    && lie_sum.g2 == y.g2
                    && lie_sum.alpha == y.alpha
                    && lie_sum.module == y.module;
                let e = log_crossed(&group_sum)?.equivalent(&lie_sum, bound);
                let status = match (boundary, e) {
                    (false, _) | (_, Equivalence::NotEquivalent) => Status::Failed,
                    (true, e) => equivalence_status(e),
                };
                Ok(Outcome::with(
                    status,
                    json!({
                        "sizes": sizes(&lie_sum),
                        "boundary_preserved": boundary,
                        "log_of_sum_vs_sum_of_logs": to_json(&e),
                        "group_axioms": group_sum.check_axioms().is_empty(),
                    }),
                ))
            }
            CrossedOp::Equiv => {
                let z = match other {
                    Some(d) => build_crossed(d)?,
                    None => y.split()?,
                };
                let lie = y.equivalent(&z, bound);
                let group = exp_crossed(&y)?.equivalent(&exp_crossed(&z)?, bound);
                let status = match (lie.decided(), group.decided()) {
                    (Some(a), Some(b)) if a != b => Status::Failed,
                    (Some(_), Some(_)) => Status::Ok,
                    _ => Status::Inconclusive,
                };
                Ok(Outcome::with(
                    status,
                    json!({ "lie": to_json(&lie), "group": to_json(&group), "bound": bound, "agree": lie == group }),
                ))
            }
        }
    })
}
