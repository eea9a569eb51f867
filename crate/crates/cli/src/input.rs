//! Typed views of the JSON input documents. Every parser reports problems
//! as JSON-pointer diagnostics instead of stopping at the first one.

use serde_json::Value;

use coulomb_core::abelian::{AbelianTheory, CoulombElement};
use coulomb_core::kac_moody::{named, CartanMatrix, Weight};
use coulomb_core::quiver::{DimVectors, Quiver};
use coulomb_core::{parse_poly, Character, Coweight, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub pointer: String,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pointer.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.pointer, self.message)
        }
    }
}

/// Collects diagnostics while walking a document.
#[derive(Default)]
pub struct Checker {
    pub diags: Vec<Diagnostic>,
}

fn child(ptr: &str, key: impl std::fmt::Display) -> String {
    let key = key.to_string().replace('~', "~0").replace('/', "~1");
    format!("{ptr}/{key}")
}

impl Checker {
    pub fn fail(&mut self, pointer: &str, message: impl Into<String>) {
        self.diags.push(Diagnostic {
            pointer: pointer.to_string(),
            message: message.into(),
        });
    }

    pub fn finish<T>(self, value: Option<T>) -> Result<T, Vec<Diagnostic>> {
        match value {
            Some(v) if self.diags.is_empty() => Ok(v),
            _ => Err(self.diags),
        }
    }

    pub fn object<'a>(&mut self, v: &'a Value, ptr: &str, allowed: &[&str]) -> Option<&'a serde_json::Map<String, Value>> {
        let Some(obj) = v.as_object() else {
            self.fail(ptr, "must be an object");
            return None;
        };
        for key in obj.keys() {
            if !allowed.contains(&key.as_str()) {
                self.fail(&child(ptr, key), "unknown field");
            }
        }
        Some(obj)
    }

    pub fn required<'a>(&mut self, obj: &'a serde_json::Map<String, Value>, ptr: &str, key: &str) -> Option<&'a Value> {
        let v = obj.get(key);
        if v.is_none() {
            self.fail(&child(ptr, key), "is required");
        }
        v
    }

    pub fn int(&mut self, v: &Value, ptr: &str) -> Option<i64> {
        let n = v.as_i64();
        if n.is_none() {
            self.fail(ptr, "must be an integer");
        }
        n
    }

    pub fn count(&mut self, v: &Value, ptr: &str) -> Option<u64> {
        let n = self.int(v, ptr)?;
        if n < 0 {
            self.fail(ptr, "must be ≥ 0");
            return None;
        }
        Some(n as u64)
    }

    pub fn int_array(&mut self, v: &Value, ptr: &str) -> Option<Vec<i64>> {
        let Some(items) = v.as_array() else {
            self.fail(ptr, "must be an array of integers");
            return None;
        };
        let out: Vec<Option<i64>> = items.iter().enumerate().map(|(i, x)| self.int(x, &child(ptr, i))).collect();
        out.into_iter().collect()
    }

    pub fn count_array(&mut self, v: &Value, ptr: &str) -> Option<Vec<u64>> {
        let Some(items) = v.as_array() else {
            self.fail(ptr, "must be an array of non-negative integers");
            return None;
        };
        let out: Vec<Option<u64>> = items.iter().enumerate().map(|(i, x)| self.count(x, &child(ptr, i))).collect();
        out.into_iter().collect()
    }

    /// A non-empty rectangular integer matrix given as rows.
    pub fn int_rows(&mut self, v: &Value, ptr: &str) -> Option<Vec<Vec<i64>>> {
        let Some(items) = v.as_array() else {
            self.fail(ptr, "must be an array of integer rows");
            return None;
        };
        let rows: Vec<Option<Vec<i64>>> = items.iter().enumerate().map(|(i, r)| self.int_array(r, &child(ptr, i))).collect();
        let rows: Vec<Vec<i64>> = rows.into_iter().collect::<Option<_>>()?;
        if rows.is_empty() {
            self.fail(ptr, "must have at least one row");
            return None;
        }
        let width = rows[0].len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != width {
                self.fail(&child(ptr, i), format!("row has length {}, expected {width}", r.len()));
                return None;
            }
        }
        Some(rows)
    }

    pub fn cartan(&mut self, v: &Value, ptr: &str) -> Option<CartanMatrix> {
        let result = match v {
            Value::String(name) => named(name),
            _ => {
                let rows = self.int_rows(v, ptr)?;
                CartanMatrix::from_rows(rows)
            }
        };
        match result {
            Ok(g) => Some(g),
            Err(e) => {
                self.fail(ptr, e.to_string());
                None
            }
        }
    }

    pub fn weight(&mut self, v: &Value, ptr: &str, rank: Option<usize>) -> Option<Weight> {
        let w = match v {
            Value::Array(_) => Weight::finite(self.int_array(v, ptr)?),
            _ => {
                let obj = self.object(v, ptr, &["fund", "delta"])?;
                let fund = self.required(obj, ptr, "fund").and_then(|f| self.int_array(f, &child(ptr, "fund")));
                let delta = match obj.get("delta") {
                    Some(d) => self.int(d, &child(ptr, "delta")),
                    None => Some(0),
                };
                Weight::new(fund?, delta?)
            }
        };
        if let Some(n) = rank {
            if w.rank() != n {
                self.fail(ptr, format!("has {} coordinates, expected {n}", w.rank()));
                return None;
            }
        }
        Some(w)
    }

    pub fn theory(&mut self, v: &Value, ptr: &str) -> Option<AbelianTheory> {
        let obj = self.object(v, ptr, &["cyclic", "rank", "characters", "inclusion"])?;
        let result = if let Some(c) = obj.get("cyclic") {
            let ell = self.count(c, &child(ptr, "cyclic"))?;
            Ok(AbelianTheory::cyclic(ell as usize))
        } else if let Some(a) = obj.get("inclusion") {
            let rows = self.int_rows(a, &child(ptr, "inclusion"))?;
            AbelianTheory::from_inclusion(&IntMatrix::from_rows(&rows).expect("rectangular"))
        } else {
            let rank = self.required(obj, ptr, "rank").and_then(|r| self.count(r, &child(ptr, "rank")));
            let chars_ptr = child(ptr, "characters");
            let chars = self.required(obj, ptr, "characters").and_then(|c| {
                let items = c.as_array().or_else(|| {
                    self.fail(&chars_ptr, "must be an array of integer vectors");
                    None
                })?;
                let out: Vec<Option<Vec<i64>>> =
                    items.iter().enumerate().map(|(i, x)| self.int_array(x, &child(&chars_ptr, i))).collect();
                out.into_iter().collect::<Option<Vec<_>>>()
            });
            let (rank, chars) = (rank?, chars?);
            AbelianTheory::new(rank as usize, chars.into_iter().map(Character).collect())
        };
        match result {
            Ok(th) => Some(th),
            Err(e) => {
                self.fail(ptr, e.to_string());
                None
            }
        }
    }

    /// A monopole `[λ]` or `{"terms": [{"lambda": [...], "coeff": "w^2 - 1"}]}`.
    pub fn element(&mut self, v: &Value, ptr: &str, th: &AbelianTheory) -> Option<CoulombElement> {
        let rank = th.rank();
        if v.is_array() {
            let lam = self.int_array(v, ptr)?;
            if lam.len() != rank {
                self.fail(ptr, format!("has {} coordinates, expected {rank}", lam.len()));
                return None;
            }
            return Some(CoulombElement::monopole(&Coweight(lam)));
        }
        let obj = self.object(v, ptr, &["terms"])?;
        let terms = self.required(obj, ptr, "terms")?;
        let terms_ptr = child(ptr, "terms");
        let Some(items) = terms.as_array() else {
            self.fail(&terms_ptr, "must be an array of terms");
            return None;
        };
        let names: Vec<&str> = th.variable_names().iter().map(String::as_str).collect();
        let mut out = Some(CoulombElement::zero(rank));
        for (i, item) in items.iter().enumerate() {
            let tp = child(&terms_ptr, i);
            let Some(obj) = self.object(item, &tp, &["lambda", "coeff"]) else {
                out = None;
                continue;
            };
            let lam = self.required(obj, &tp, "lambda").and_then(|l| self.int_array(l, &child(&tp, "lambda")));
            let coeff = match obj.get("coeff") {
                None => Some(coulomb_core::Poly::one(rank)),
                Some(Value::String(s)) => match parse_poly(s, &names) {
                    Ok(p) => Some(p),
                    Err(e) => {
                        self.fail(&child(&tp, "coeff"), e.to_string());
                        None
                    }
                },
                Some(Value::Number(n)) if n.is_i64() => Some(coulomb_core::Poly::constant(
                    rank,
                    coulomb_core::Rational::from_integer(n.as_i64().expect("checked").into()),
                )),
                Some(_) => {
                    self.fail(&child(&tp, "coeff"), "must be a polynomial string or an integer");
                    None
                }
            };
            match (lam, coeff, out.as_mut()) {
                (Some(lam), Some(coeff), Some(acc)) => {
                    if lam.len() != rank {
                        self.fail(&child(&tp, "lambda"), format!("has {} coordinates, expected {rank}", lam.len()));
                        out = None;
                    } else {
                        *acc = &*acc + &CoulombElement::term(Coweight(lam), coeff);
                    }
                }
                _ => out = None,
            }
        }
        out
    }

    pub fn coweight(&mut self, v: &Value, ptr: &str, rank: usize) -> Option<Coweight> {
        let lam = self.int_array(v, ptr)?;
        if lam.len() != rank {
            self.fail(ptr, format!("has {} coordinates, expected {rank}", lam.len()));
            return None;
        }
        Some(Coweight(lam))
    }

    /// `{"vertices": n, "edges": [[out, in], ...]}` or `{"quiver": "jordan" | "A3"}`,
    /// with `v` and `w` alongside.
    pub fn quiver_with_dims(&mut self, v: &Value) -> Option<(Quiver, DimVectors)> {
        let obj = self.object(v, "", &["vertices", "edges", "quiver", "v", "w"])?;
        let quiver = if let Some(name) = obj.get("quiver") {
            match name.as_str() {
                Some("jordan") => Some(Quiver::jordan()),
                Some(s) if s.starts_with('A') && s[1..].parse::<usize>().is_ok_and(|n| n >= 1) => {
                    Some(Quiver::linear(s[1..].parse().expect("checked")))
                }
                _ => {
                    self.fail("/quiver", "must be \"jordan\" or \"A<n>\"");
                    None
                }
            }
        } else {
            let n = self.required(obj, "", "vertices").and_then(|x| self.count(x, "/vertices"));
            let edges = match obj.get("edges") {
                None => Some(Vec::new()),
                Some(Value::Array(items)) => {
                    let mut edges = Some(Vec::new());
                    for (i, e) in items.iter().enumerate() {
                        let ep = child("/edges", i);
                        let pair = self.int_array(e, &ep);
                        match pair {
                            Some(p) if p.len() == 2 => {
                                for (k, &end) in p.iter().enumerate() {
                                    if end < 0 || n.is_some_and(|n| end as u64 >= n) {
                                        self.fail(&child(&ep, k), "out of range");
                                        edges = None;
                                    }
                                }
                                if let Some(list) = edges.as_mut() {
                                    list.push((p[0] as usize, p[1] as usize));
                                }
                            }
                            Some(_) => {
                                self.fail(&ep, "must be a pair [out, in]");
                                edges = None;
                            }
                            None => edges = None,
                        }
                    }
                    edges
                }
                Some(_) => {
                    self.fail("/edges", "must be an array of pairs");
                    None
                }
            };
            match (n, edges) {
                (Some(n), Some(edges)) => Quiver::new(n as usize, edges).ok(),
                _ => None,
            }
        };
        let dv = self.required(obj, "", "v").and_then(|x| self.count_array(x, "/v"));
        let dw = self.required(obj, "", "w").and_then(|x| self.count_array(x, "/w"));
        let (q, dv, dw) = (quiver?, dv?, dw?);
        for (key, d) in [("/v", &dv), ("/w", &dw)] {
            if d.len() != q.vertices() {
                self.fail(key, format!("has length {}, expected {}", d.len(), q.vertices()));
            }
        }
        if !self.diags.is_empty() {
            return None;
        }
        Some((q, DimVectors::new(dv, dw)))
    }
}
