//! JSON artifacts. Matrices are arrays of integer rows, keyed by degree.
//!
//! Parsing checks structure (shapes, primes, field agreement) and reports the
//! JSON path of the first problem. Mathematical validity (`d² = 0`, chain
//! map laws, algebra axioms) is left to the validators, so that a file with
//! `d² ≠ 0` still parses.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::arrow::{ArrowObject, ArrowSquare};
use crate::chain::{ChainComplex, ChainMap};
use crate::dgalg::{DGAlgebra, DGBimodule, MonoidHom, RightModule, SmithIdeal, SmithModule};
use crate::error::{Error, Result};
use crate::linalg::{reduce, FieldSpec, Matrix};

pub trait Artifact: Sized {
    fn to_value(&self) -> Value;
    fn from_value(v: &Value, at: &str) -> Result<Self>;
}

/// Pretty JSON with a trailing newline; keys come out sorted.
pub fn to_json<T: Artifact>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(&x.to_value()).expect("values serialize");
    s.push('\n');
    s
}

pub fn from_json<T: Artifact>(s: &str) -> Result<T> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    T::from_value(&v, "$")
}

fn perr(at: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{at}: {msg}"))
}

fn field<'a>(v: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    v.as_object()
        .ok_or_else(|| perr(at, "expected an object"))?
        .get(key)
        .ok_or_else(|| perr(at, format!("missing field \"{key}\"")))
}

fn int(v: &Value, at: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| perr(at, "expected an integer"))
}

fn degree_map<'a>(v: &'a Value, at: &str) -> Result<BTreeMap<i32, &'a Value>> {
    let obj = v
        .as_object()
        .ok_or_else(|| perr(at, "expected an object keyed by degree"))?;
    obj.iter()
        .map(|(k, x)| {
            let n: i32 = k.parse().map_err(|_| perr(at, format!("\"{k}\" is not a degree")))?;
            Ok((n, x))
        })
        .collect()
}

fn matrix_value(m: &Matrix) -> Value {
    Value::Array(m.to_rows().into_iter().map(|r| json!(r)).collect())
}

fn matrix(v: &Value, p: u64, rows: usize, cols: usize, at: &str) -> Result<Matrix> {
    let arr = v.as_array().ok_or_else(|| perr(at, "expected an array of rows"))?;
    if arr.len() != rows {
        return Err(perr(at, format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, r) in arr.iter().enumerate() {
        let here = format!("{at}[{i}]");
        let r = r.as_array().ok_or_else(|| perr(&here, "expected a row"))?;
        if r.len() != cols {
            return Err(perr(&here, format!("expected {cols} entries, found {}", r.len())));
        }
        let row = r
            .iter()
            .enumerate()
            .map(|(j, x)| int(x, &format!("{here}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        out.push(row);
    }
    Ok(Matrix::from_fn(p, rows, cols, |i, j| reduce(out[i][j], p)))
}

fn degree_key(n: i32) -> String {
    n.to_string()
}

impl Artifact for ChainComplex {
    fn to_value(&self) -> Value {
        let mut dims = Map::new();
        let mut diff = Map::new();
        for n in self.degrees() {
            dims.insert(degree_key(n), json!(self.dim(n)));
            if self.dim(n) * self.dim(n - 1) > 0 {
                diff.insert(degree_key(n), matrix_value(&self.diff(n)));
            }
        }
        json!({"p": self.p(), "lo": self.lo(), "hi": self.hi(), "dims": dims, "diff": diff})
    }

    fn from_value(v: &Value, at: &str) -> Result<Self> {
        let p = int(field(v, "p", at)?, &format!("{at}.p"))?;
        let p = u64::try_from(p).map_err(|_| perr(&format!("{at}.p"), "negative prime"))?;
        FieldSpec::new(p).map_err(|e| perr(&format!("{at}.p"), e))?;
        let lo = int(field(v, "lo", at)?, &format!("{at}.lo"))? as i32;
        let hi = int(field(v, "hi", at)?, &format!("{at}.hi"))? as i32;
        if hi < lo {
            return Err(perr(at, "empty window: hi < lo"));
        }
        let mut dims = vec![0usize; (hi - lo + 1) as usize];
        for (n, d) in degree_map(field(v, "dims", at)?, &format!("{at}.dims"))? {
            let here = format!("{at}.dims.{n}");
            if n < lo || n > hi {
                return Err(perr(&here, "degree outside [lo, hi]"));
            }
            dims[(n - lo) as usize] = usize::try_from(int(d, &here)?).map_err(|_| perr(&here, "negative dimension"))?;
        }
        let dim = |n: i32| if n < lo || n > hi { 0 } else { dims[(n - lo) as usize] };
        let mut diffs = BTreeMap::new();
        if let Some(dv) = v.get("diff") {
            for (n, m) in degree_map(dv, &format!("{at}.diff"))? {
                let here = format!("{at}.diff.{n}");
                if n < lo || n > hi {
                    return Err(perr(&here, "degree outside [lo, hi]"));
                }
                diffs.insert(n, matrix(m, p, dim(n - 1), dim(n), &here)?);
            }
        }
        ChainComplex::new(p, lo, dims, diffs).map_err(|e| perr(at, e))
    }
}

impl Artifact for ChainMap {
    fn to_value(&self) -> Value {
        let mut comps = Map::new();
        for n in self.degrees() {
            if self.src().dim(n) * self.dst().dim(n) > 0 {
                comps.insert(degree_key(n), matrix_value(&self.comp(n)));
            }
        }
        json!({"src": self.src().to_value(), "dst": self.dst().to_value(), "comps": comps})
    }

    fn from_value(v: &Value, at: &str) -> Result<Self> {
        let src = ChainComplex::from_value(field(v, "src", at)?, &format!("{at}.src"))?;
        let dst = ChainComplex::from_value(field(v, "dst", at)?, &format!("{at}.dst"))?;
        if src.p() != dst.p() {
            return Err(perr(
                at,
                Error::FieldMismatch {
                    left: src.p(),
                    right: dst.p(),
                },
            ));
        }
        let p = src.p();
        let mut comps = BTreeMap::new();
        for (n, m) in degree_map(field(v, "comps", at)?, &format!("{at}.comps"))? {
            let here = format!("{at}.comps.{n}");
            if src.dim(n) * dst.dim(n) == 0 {
                return Err(perr(&here, "component in a degree where source or target vanishes"));
            }
            comps.insert(n, matrix(m, p, dst.dim(n), src.dim(n), &here)?);
        }
        // commutation is checked by `validate`, not here
        Ok(ChainMap::from_fn(&src, &dst, |n| {
            comps
                .get(&n)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(p, dst.dim(n), src.dim(n)))
        }))
    }
}

impl Artifact for ArrowObject {
    fn to_value(&self) -> Value {
        json!({"f": self.map().to_value()})
    }

    fn from_value(v: &Value, at: &str) -> Result<Self> {
        Ok(ArrowObject::from_map(ChainMap::from_value(
            field(v, "f", at)?,
            &format!("{at}.f"),
        )?))
    }
}

impl Artifact for ArrowSquare {
    fn to_value(&self) -> Value {
        json!({
            "src": self.src.to_value(),
            "dst": self.dst.to_value(),
            "a0": self.a0.to_value(),
            "a1": self.a1.to_value(),
        })
    }

    fn from_value(v: &Value, at: &str) -> Result<Self> {
        let sub = |k: &str| format!("{at}.{k}");
        let src = ArrowObject::from_value(field(v, "src", at)?, &sub("src"))?;
        let dst = ArrowObject::from_value(field(v, "dst", at)?, &sub("dst"))?;
        let a0 = ChainMap::from_value(field(v, "a0", at)?, &sub("a0"))?;
        let a1 = ChainMap::from_value(field(v, "a1", at)?, &sub("a1"))?;
        if a0.src() != src.ev0() || a0.dst() != dst.ev0() || a1.src() != src.ev1() || a1.dst() != dst.ev1() {
            return Err(perr(at, "square components do not match the arrows"));
        }
        Ok(ArrowSquare { src, dst, a0, a1 })
    }
}

impl Artifact for DGAlgebra {
    fn to_value(&self) -> Value {
        json!({"carrier": self.carrier.to_value(), "mult": self.mult.to_value(), "unit": self.unit.to_value()})
    }

    fn from_value(v: &Value, at: &str) -> Result<Self> {
        let sub = |k: &str| format!("{at}.{k}");
        Ok(DGAlgebra {
            carrier: ChainComplex::from_value(field(v, "carrier", at)?, &sub("carrier"))?,
            mult: ChainMap::from_value(field(v, "mult", at)?, &sub("mult"))?,
            unit: ChainMap::from_value(field(v, "unit", at)?, &sub("unit"))?,
        })
    }
}

impl Artifact for RightModule {
    fn to_value(&self) -> Value {
        json!({"carrier": self.carrier.to_value(), "act": self.act.to_value()})
    }

    fn from_value(v: &Value, at: &str) -> Result<Self> {
        Ok(RightModule {
            carrier: ChainComplex::from_value(field(v, "carrier", at)?, &format!("{at}.carrier"))?,
            act: ChainMap::from_value(field(v, "act", at)?, &format!("{at}.act"))?,
        })
    }
}

impl Artifact for DGBimodule {
    fn to_value(&self) -> Value {
        json!({"carrier": self.carrier.to_value(), "left": self.left.to_value(), "right": self.right.to_value()})
    }

    fn from_value(v: &Value, at: &str) -> Result<Self> {
        let sub = |k: &str| format!("{at}.{k}");
        Ok(DGBimodule {
            carrier: ChainComplex::from_value(field(v, "carrier", at)?, &sub("carrier"))?,
            left: ChainMap::from_value(field(v, "left", at)?, &sub("left"))?,
            right: ChainMap::from_value(field(v, "right", at)?, &sub("right"))?,
        })
    }
}

impl Artifact for SmithIdeal {
    fn to_value(&self) -> Value {
        json!({"alg": self.alg.to_value(), "ideal": self.ideal.to_value(), "j": self.j.to_value()})
    }

    fn from_value(v: &Value, at: &str) -> Result<Self> {
        let sub = |k: &str| format!("{at}.{k}");
        Ok(SmithIdeal {
            alg: DGAlgebra::from_value(field(v, "alg", at)?, &sub("alg"))?,
            ideal: DGBimodule::from_value(field(v, "ideal", at)?, &sub("ideal"))?,
            j: ChainMap::from_value(field(v, "j", at)?, &sub("j"))?,
        })
    }
}

impl Artifact for SmithModule {
    fn to_value(&self) -> Value {
        json!({
            "over": self.over.to_value(),
            "m0": self.m0.to_value(),
            "m1": self.m1.to_value(),
            "f": self.f.to_value(),
            "phi": self.phi.to_value(),
        })
    }

    fn from_value(v: &Value, at: &str) -> Result<Self> {
        let sub = |k: &str| format!("{at}.{k}");
        Ok(SmithModule {
            over: SmithIdeal::from_value(field(v, "over", at)?, &sub("over"))?,
            m0: RightModule::from_value(field(v, "m0", at)?, &sub("m0"))?,
            m1: RightModule::from_value(field(v, "m1", at)?, &sub("m1"))?,
            f: ChainMap::from_value(field(v, "f", at)?, &sub("f"))?,
            phi: ChainMap::from_value(field(v, "phi", at)?, &sub("phi"))?,
        })
    }
}

impl Artifact for MonoidHom {
    fn to_value(&self) -> Value {
        json!({"src": self.src.to_value(), "dst": self.dst.to_value(), "map": self.map.to_value()})
    }

    fn from_value(v: &Value, at: &str) -> Result<Self> {
        let sub = |k: &str| format!("{at}.{k}");
        Ok(MonoidHom {
            src: DGAlgebra::from_value(field(v, "src", at)?, &sub("src"))?,
            dst: DGAlgebra::from_value(field(v, "dst", at)?, &sub("dst"))?,
            map: ChainMap::from_value(field(v, "map", at)?, &sub("map"))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgalg::ideal_of_power;

    #[test]
    fn sphere_file() {
        let s = to_json(&ChainComplex::sphere(3, 2));
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v, json!({"p": 3, "lo": 2, "hi": 2, "dims": {"2": 1}, "diff": {}}));
        assert_eq!(from_json::<ChainComplex>(&s).unwrap(), ChainComplex::sphere(3, 2));
    }

    #[test]
    fn d_squared_nonzero_still_parses() {
        let text = r#"{"p": 2, "lo": 0, "hi": 2, "dims": {"0": 1, "1": 1, "2": 1},
                       "diff": {"1": [[1]], "2": [[1]]}}"#;
        let c: ChainComplex = from_json(text).unwrap();
        assert!(matches!(
            c.validate(),
            Err(Error::InvalidComplex { degree: 2, .. }) | Err(Error::InvalidComplex { degree: 1, .. })
        ));
    }

    #[test]
    fn errors_carry_a_location() {
        let text = r#"{"p": 4, "lo": 0, "hi": 0, "dims": {"0": 1}}"#;
        let e = from_json::<ChainComplex>(text).unwrap_err().to_string();
        assert!(e.contains("$.p"), "{e}");
        let text = r#"{"p": 5, "lo": 0, "hi": 1, "dims": {"0": 1, "1": 2}, "diff": {"1": [[1]]}}"#;
        let e = from_json::<ChainComplex>(text).unwrap_err().to_string();
        assert!(e.contains("$.diff.1[0]"), "{e}");
        let e = from_json::<ChainComplex>("{ nope").unwrap_err().to_string();
        assert!(e.contains("line 1"), "{e}");
    }

    #[test]
    fn negative_entries_reduce() {
        let text = r#"{"p": 5, "lo": 0, "hi": 1, "dims": {"0": 1, "1": 1}, "diff": {"1": [[-1]]}}"#;
        let c: ChainComplex = from_json(text).unwrap();
        assert_eq!(c.diff(1).get(0, 0), 4);
    }

    #[test]
    fn smith_ideal_round_trip() {
        let s = ideal_of_power(5, 3, 0, 1).ideal;
        let text = to_json(&s);
        let back: SmithIdeal = from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(to_json(&back), text);
    }
}
