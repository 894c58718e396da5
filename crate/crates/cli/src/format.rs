//! The object file format: a strict subset of TOML.
//!
//! ```toml
//! [ring]
//! p = 5
//! class_hint = 2
//! basis = ["x", "y", "z"]
//! orders = [5, 5, 5]
//!
//! [brackets]
//! "x,y" = { z = 1 }
//!
//! [module]
//! orders = [5]
//!
//! [action]
//! x = [[0]]
//!
//! [crossed]
//! kind = "ideal"
//! generators = [[0, 0, 1]]
//! ```
//!
//! Omitted brackets are zero and `[b_j, b_i]` is inferred by antisymmetry.
//! Omitted actions are zero. `orders` lists the orders `p^e`, not the
//! exponents.

use std::fmt::Write as _;

use lazard::liering::NilLieRing;
use lazard::ring::{is_prime, AbelianPGroup, HomMatrix};
use lazard::triples::LieTriple;
use thiserror::Error;
use toml::{Table, Value};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("toml: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{0}")]
    Invalid(String),
}

fn bad<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Invalid(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossedSpec {
    /// Inclusion of the ideal generated by the given coordinate vectors.
    Ideal(Vec<Vec<u64>>),
    /// `M -0-> L -id-> L` for the triple in `[module]`/`[action]`.
    Action,
    /// `M -0-> L -id-> L` for the adjoint triple.
    Adjoint,
    /// Central extension of `L` by the trivial module, given by tails.
    Extension(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossed {
    pub spec: CrossedSpec,
    /// Replace the module by its split representative.
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub ring: NilLieRing,
    pub class_hint: Option<usize>,
    /// Module exponents and the action matrices, one per basis element.
    pub module: Option<(AbelianPGroup, Vec<HomMatrix>)>,
    pub crossed: Option<Crossed>,
}

fn table<'a>(t: &'a Table, key: &str) -> Result<Option<&'a Table>, FormatError> {
    match t.get(key) {
        None => Ok(None),
        Some(Value::Table(x)) => Ok(Some(x)),
        Some(_) => bad(format!("[{key}] must be a table")),
    }
}

fn only(t: &Table, section: &str, allowed: &[&str]) -> Result<(), FormatError> {
    match t.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => bad(format!("unknown key `{k}` in {section}")),
        None => Ok(()),
    }
}

fn int(v: &Value, what: &str) -> Result<i64, FormatError> {
    v.as_integer().map_or_else(|| bad(format!("{what} must be an integer")), Ok)
}

fn ints(v: &Value, what: &str) -> Result<Vec<i64>, FormatError> {
    match v.as_array() {
        Some(a) => a.iter().map(|x| int(x, what)).collect(),
        None => bad(format!("{what} must be an array of integers")),
    }
}

fn vectors(v: &Value, what: &str) -> Result<Vec<Vec<i64>>, FormatError> {
    match v.as_array() {
        Some(a) => a.iter().map(|x| ints(x, what)).collect(),
        None => bad(format!("{what} must be an array of arrays")),
    }
}

/// Orders `p^e` to exponents `e >= 1`.
fn exponents(p: u64, orders: &[i64], what: &str) -> Result<Vec<u32>, FormatError> {
    orders
        .iter()
        .map(|&o| {
            let mut n = u64::try_from(o).unwrap_or(0);
            let mut e = 0;
            while n > 1 && n % p == 0 {
                n /= p;
                e += 1;
            }
            if n != 1 || e == 0 {
                return bad(format!("{what}: {o} is not a positive power of {p}"));
            }
            Ok(e)
        })
        .collect()
}

fn reduce(g: &AbelianPGroup, v: &[i64], what: &str) -> Result<Vec<u64>, FormatError> {
    if v.len() != g.rank() {
        return bad(format!("{what}: expected {} coordinates, found {}", g.rank(), v.len()));
    }
    Ok(g.reduce_signed(&v.iter().map(|&x| x as i128).collect::<Vec<_>>()))
}

pub fn parse(text: &str) -> Result<Document, FormatError> {
    let top: Table = toml::from_str(text)?;
    only(&top, "the file", &["ring", "brackets", "module", "action", "crossed"])?;
    let Some(ring) = table(&top, "ring")? else {
        return bad("missing [ring]");
    };
    only(ring, "[ring]", &["p", "class_hint", "basis", "orders"])?;
    let p = match ring.get("p") {
        Some(v) => int(v, "p")?,
        None => return bad("missing p"),
    };
    if p < 2 || !is_prime(p as u64) {
        return bad(format!("p = {p} is not a prime"));
    }
    let p = p as u64;
    let class_hint = match ring.get("class_hint") {
        Some(v) => Some(usize::try_from(int(v, "class_hint")?).or_else(|_| bad("class_hint must be non-negative"))?),
        None => None,
    };
    let basis: Vec<String> = match ring.get("basis").and_then(Value::as_array) {
        Some(a) => a
            .iter()
            .map(|x| x.as_str().map(str::to_string).map_or_else(|| bad("basis entries must be strings"), Ok))
            .collect::<Result<_, _>>()?,
        None => return bad("missing basis"),
    };
    for (i, b) in basis.iter().enumerate() {
        if b.is_empty() || b.contains(',') || basis[..i].contains(b) {
            return bad(format!("basis label `{b}` is empty, contains a comma or repeats"));
        }
    }
    let orders = match ring.get("orders") {
        Some(v) => ints(v, "orders")?,
        None => return bad("missing orders"),
    };
    if orders.len() != basis.len() {
        return bad("orders and basis differ in length");
    }
    let exps = exponents(p, &orders, "orders")?;
    let label = |s: &str| basis.iter().position(|b| b == s.trim());
    let r = basis.len();

    let mut brackets = Vec::new();
    if let Some(br) = table(&top, "brackets")? {
        let mut seen = std::collections::BTreeSet::new();
        for (key, val) in br {
            let pair: Vec<&str> = key.split(',').collect();
            let (Some(i), Some(j)) = (pair.first().and_then(|s| label(s)), pair.get(1).and_then(|s| label(s))) else {
                return bad(format!("bracket key `{key}` must name two basis elements"));
            };
            if pair.len() != 2 || i == j {
                return bad(format!("bracket key `{key}` must name two distinct basis elements"));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return bad(format!("bracket `{key}` given twice"));
            }
            let Some(terms) = val.as_table() else {
                return bad(format!("bracket `{key}` must be an inline table"));
            };
            let mut v = vec![0i128; r];
            for (k, c) in terms {
                let Some(k) = label(k) else {
                    return bad(format!("bracket `{key}`: unknown basis element `{k}`"));
                };
                v[k] += int(c, "bracket coefficient")? as i128;
            }
            brackets.push((i, j, v));
        }
    }
    let ring = NilLieRing::from_brackets(p, basis.clone(), exps, &brackets).or_else(|e| bad(e.to_string()))?;

    let module = match table(&top, "module")? {
        Some(m) => {
            only(m, "[module]", &["orders"])?;
            let orders = match m.get("orders") {
                Some(v) => ints(v, "module orders")?,
                None => return bad("[module] needs orders"),
            };
            let module = AbelianPGroup::new(p, exponents(p, &orders, "module orders")?);
            let mut psi = vec![HomMatrix::zero(module.clone(), module.clone()); r];
            if let Some(a) = table(&top, "action")? {
                for (k, rows) in a {
                    let Some(i) = label(k) else {
                        return bad(format!("[action]: unknown basis element `{k}`"));
                    };
                    let rows = vectors(rows, "action matrix")?;
                    if rows.len() != module.rank() {
                        return bad(format!("action of `{k}` needs {} rows", module.rank()));
                    }
                    let rows = rows.iter().map(|row| reduce(&module, row, "action row")).collect::<Result<_, _>>()?;
                    psi[i] = HomMatrix::new(module.clone(), module.clone(), rows).or_else(|e| bad(format!("action of `{k}`: {e}")))?;
                }
            }
            LieTriple::new(ring.clone(), module.clone(), psi.clone()).or_else(|e| bad(e.to_string()))?;
            Some((module, psi))
        }
        None => {
            if top.contains_key("action") {
                return bad("[action] without [module]");
            }
            None
        }
    };

    let crossed = match table(&top, "crossed")? {
        Some(c) => {
            only(c, "[crossed]", &["kind", "generators", "tails", "split"])?;
            let split = match c.get("split") {
                Some(v) => v.as_bool().map_or_else(|| bad("split must be a boolean"), Ok)?,
                None => false,
            };
            let need = |key: &str| c.get(key).map_or_else(|| bad(format!("[crossed] needs {key}")), Ok);
            let spec = match c.get("kind").and_then(Value::as_str) {
                Some("ideal") => CrossedSpec::Ideal(
                    vectors(need("generators")?, "generators")?
                        .iter()
                        .map(|v| reduce(&ring.module, v, "generator"))
                        .collect::<Result<_, _>>()?,
                ),
                Some("action") if module.is_some() => CrossedSpec::Action,
                Some("adjoint") => CrossedSpec::Adjoint,
                Some("extension") if module.is_some() => {
                    let m = &module.as_ref().expect("guarded").0;
                    let t = ints(need("tails")?, "tails")?;
                    if t.len() != m.rank() * (r + r * r.saturating_sub(1) / 2) {
                        return bad("tails need one module vector per basis element and per pair i < j");
                    }
                    CrossedSpec::Extension(t.chunks(m.rank().max(1)).flat_map(|c| m.reduce_signed(&c.iter().map(|&x| x as i128).collect::<Vec<_>>())).collect())
                }
                Some(k @ ("action" | "extension")) => return bad(format!("crossed kind `{k}` needs [module]")),
                _ => return bad("crossed kind must be one of ideal, action, adjoint, extension"),
            };
            Some(Crossed { spec, split })
        }
        None => None,
    };
    Ok(Document { ring, class_hint, module, crossed })
}

fn list<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    format!("[{}]", xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn orders(g: &AbelianPGroup) -> String {
    list((0..g.rank()).map(|i| g.modulus(i)))
}

/// Canonical text: fixed section and key order, reduced coefficients,
/// brackets only for `i < j`.
pub fn write(doc: &Document) -> String {
    let l = &doc.ring;
    let mut s = String::new();
    let quoted = |x: &String| format!("\"{x}\"");
    writeln!(s, "[ring]\np = {}", l.p).unwrap();
    if let Some(c) = doc.class_hint {
        writeln!(s, "class_hint = {c}").unwrap();
    }
    writeln!(s, "basis = {}\norders = {}", list(l.labels.iter().map(quoted)), orders(&l.module)).unwrap();
    let r = l.rank();
    let mut lines = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let v = l.constant(i, j);
            let terms: Vec<String> =
                v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, c)| format!("{} = {c}", l.labels[k])).collect();
            if !terms.is_empty() {
                lines.push(format!("\"{},{}\" = {{ {} }}", l.labels[i], l.labels[j], terms.join(", ")));
            }
        }
    }
    if !lines.is_empty() {
        writeln!(s, "\n[brackets]\n{}", lines.join("\n")).unwrap();
    }
    if let Some((m, psi)) = &doc.module {
        writeln!(s, "\n[module]\norders = {}", orders(m)).unwrap();
        let acts: Vec<String> = psi
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| format!("{} = {}", l.labels[i], list(a.entries.iter().map(|row| list(row)))))
            .collect();
        if !acts.is_empty() {
            writeln!(s, "\n[action]\n{}", acts.join("\n")).unwrap();
        }
    }
    if let Some(c) = &doc.crossed {
        s.push_str("\n[crossed]\n");
        match &c.spec {
            CrossedSpec::Ideal(g) => writeln!(s, "kind = \"ideal\"\ngenerators = {}", list(g.iter().map(|v| list(v)))),
            CrossedSpec::Action => writeln!(s, "kind = \"action\""),
            CrossedSpec::Adjoint => writeln!(s, "kind = \"adjoint\""),
            CrossedSpec::Extension(t) => writeln!(s, "kind = \"extension\"\ntails = {}", list(t)),
        }
        .unwrap();
        if c.split {
            s.push_str("split = true\n");
        }
    }
    s
}

impl Document {
    pub fn triple(&self) -> LieTriple {
        match &self.module {
            Some((m, psi)) => LieTriple::new(self.ring.clone(), m.clone(), psi.clone()).expect("checked on parse"),
            None => LieTriple::trivial(self.ring.clone(), AbelianPGroup::new(self.ring.p, vec![1])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEIS: &str = "[ring]\np = 5\nclass_hint = 2\nbasis = [\"x\", \"y\", \"z\"]\norders = [5, 5, 5]\n\n[brackets]\n\"x,y\" = { z = 1 }\n";

    #[test]
    fn canonical_text_is_a_fixed_point() {
        let d = parse(HEIS).unwrap();
        assert_eq!(write(&d), HEIS);
        assert_eq!(d.ring, lazard::liering::heisenberg(5, 1).relabel(vec!["x".into(), "y".into(), "z".into()]));
    }

    #[test]
    fn antisymmetry_and_reduction() {
        let d = parse("[ring]\np = 5\nbasis = [\"x\", \"y\", \"z\"]\norders = [5, 5, 5]\n[brackets]\n\"y,x\" = { z = 6 }\n").unwrap();
        assert_eq!(d.ring.constant(0, 1), &[0, 0, 4]);
        let again = parse(&write(&d)).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn rejects_malformed() {
        for text in [
            "[ring]\np = 6\nbasis = [\"x\"]\norders = [6]\n",
            "[ring]\np = 5\nbasis = [\"x\"]\norders = [10]\n",
            "[ring]\np = 5\nbasis = [\"x\", \"y\"]\norders = [5, 5]\n[brackets]\n\"x,w\" = { y = 1 }\n",
            "[ring]\np = 5\nbasis = [\"x\", \"y\"]\norders = [5, 5]\n[brackets]\n\"x,x\" = { y = 1 }\n",
            "[ring]\np = 5\nbasis = [\"x\"]\norders = [5]\nextra = 1\n",
            "[ring]\np = 5\nbasis = [\"x\"]\norders = [5]\n[action]\nx = [[1]]\n",
            "[ring]\np = 5\nbasis = [\"x\", \"y\"]\norders = [25, 5]\n[brackets]\n\"x,y\" = { x = 1 }\n",
        ] {
            assert!(parse(text).is_err(), "{text}");
        }
    }

    #[test]
    fn module_and_crossed_sections() {
        let text = "[ring]\np = 5\nbasis = [\"x\"]\norders = [5]\n\n[module]\norders = [5, 5]\n\n[action]\nx = [[0, 1], [0, 0]]\n\n[crossed]\nkind = \"action\"\nsplit = true\n";
        let d = parse(text).unwrap();
        assert_eq!(write(&d), text);
        assert_eq!(d.triple().action_length().unwrap(), 2);
    }
}
