//! Report documents: exact values next to their float rendering, and
//! pass/fail per check. Keys are emitted in sorted order, so output is
//! byte-identical across runs.

use heatsym_core::algebra::{ExtScalar, FormElement, GradedSum, Matrix};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Exact {
    /// Rationals on the basis 1, ζ, ζ², ζ³ of ℚ(ζ₈).
    pub mantissa: [String; 4],
    #[serde(rename = "piHalf")]
    pub pi_half: i32,
    /// (re, im).
    pub float: [f64; 2],
}

impl From<&ExtScalar> for Exact {
    fn from(s: &ExtScalar) -> Self {
        let (re, im) = s.to_complex_f64();
        // a zero carries no π-grade
        let pi_half = if s.is_zero() { 0 } else { s.pi_half };
        Exact { mantissa: s.mantissa.to_strings(), pi_half, float: [re, im] }
    }
}

pub fn exact(s: &ExtScalar) -> Value {
    serde_json::to_value(Exact::from(s)).expect("plain data")
}

pub fn graded(s: &GradedSum) -> Value {
    Value::Array(s.parts().map(|p| exact(&p)).collect())
}

fn matrix(m: &Matrix, pi_half: i32) -> Value {
    let rows = (0..m.size())
        .map(|i| Value::Array((0..m.size()).map(|j| exact(&ExtScalar::new(m.get(i, j).clone(), pi_half))).collect()))
        .collect();
    Value::Array(rows)
}

/// Blade-by-blade rendering; blades are listed by 1-based generator indices.
pub fn form(f: &FormElement) -> Value {
    let terms = f
        .terms()
        .map(|(mask, m)| {
            let blade: Vec<u32> = (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            json!({"blade": blade, "matrix": matrix(m, f.pi_half())})
        })
        .collect();
    Value::Array(terms)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub fields: serde_json::Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), fields: serde_json::Map::new(), checks: Vec::new() }
    }

    pub fn set(&mut self, key: &str, v: Value) -> &mut Self {
        self.fields.insert(key.into(), v);
        self
    }

    pub fn check(&mut self, c: Check) -> &mut Self {
        self.checks.push(c);
        self
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut doc = self.fields.clone();
        doc.insert("command".into(), Value::String(self.command.clone()));
        doc.insert("checks".into(), serde_json::to_value(&self.checks).expect("plain data"));
        doc.insert("pass".into(), Value::Bool(self.pass()));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("plain data");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use heatsym_core::algebra::{rat, Cyclo8};

    #[test]
    fn exact_rendering() {
        let v = exact(&ExtScalar::new(Cyclo8::from_rational(rat(1, 4)), -2));
        assert_eq!(v["mantissa"], json!(["1/4", "0", "0", "0"]));
        assert_eq!(v["piHalf"], json!(-2));
        let f = v["float"][0].as_f64().unwrap();
        assert!((f - 1.0 / (4.0 * std::f64::consts::PI)).abs() < 1e-15);
    }

    #[test]
    fn keys_sorted() {
        let mut r = Report::new("x");
        r.set("zeta", json!(1)).set("alpha", json!(2));
        let s = r.to_json();
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
        assert!(s.contains("\"pass\": true"));
    }
}
