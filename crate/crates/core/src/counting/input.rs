//! JSON variety files.
//!
//! ```json
//! {
//!   "label": "y^2 z = x^3 + x z^2 + z^3",
//!   "p": 5, "a": 1,
//!   "ambient": {"kind": "projective", "dim": 2},
//!   "equations": [
//!     [[[0, 2, 1], [1]], [[3, 0, 0], [4]], [[1, 0, 2], [4]], [[0, 0, 3], [4]]]
//!   ]
//! }
//! ```
//!
//! Each equation is a list of `[exponents, coeff]` terms; `coeff` is the
//! little-endian coefficient vector of an element of F_{p^a}, or a bare
//! integer (reduced mod p, negatives allowed) for an element of F_p. Optional keys: `modulus` (monic,
//! little-endian, degree `a`), `smooth` (author assertion), `dimension`.

use serde::{Deserialize, Serialize};

use crate::algebra::MultiPoly;
use crate::error::{Error, Result};
use crate::ffield::FieldCtx;

use super::{Ambient, VarietySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientKind {
    Affine,
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientSpec {
    pub kind: AmbientKind,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Scalar(i64),
    Vector(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term(pub Vec<u32>, pub Coeff);

/// On-disk form of a [`VarietySpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyFile {
    pub label: String,
    pub p: u64,
    #[serde(default = "one")]
    pub a: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    pub ambient: AmbientSpec,
    pub equations: Vec<Vec<Term>>,
    #[serde(default)]
    pub smooth: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
}

fn one() -> usize {
    1
}

impl VarietyFile {
    pub fn from_spec(v: &VarietySpec) -> Self {
        let base = v.base();
        let ambient = match v.ambient() {
            Ambient::Affine(n) => AmbientSpec {
                kind: AmbientKind::Affine,
                dim: n,
            },
            Ambient::Projective(n) => AmbientSpec {
                kind: AmbientKind::Projective,
                dim: n,
            },
        };
        let default_modulus = crate::ffield::find_irreducible(base.characteristic(), base.degree()).ok();
        Self {
            label: v.label().to_string(),
            p: base.characteristic(),
            a: base.degree(),
            modulus: (default_modulus.as_deref() != Some(base.modulus())).then(|| base.modulus().to_vec()),
            ambient,
            equations: v
                .equations()
                .iter()
                .map(|eq| {
                    eq.terms()
                        .map(|(e, c)| Term(e.to_vec(), Coeff::Vector(c.coeffs().to_vec())))
                        .collect()
                })
                .collect(),
            smooth: v.smooth_asserted(),
            dimension: Some(v.dimension()),
        }
    }

    pub fn to_spec(&self) -> Result<VarietySpec> {
        let base = match &self.modulus {
            Some(m) => {
                let ctx = FieldCtx::with_modulus(self.p, m.clone()).map_err(|e| at("modulus", e))?;
                if ctx.degree() != self.a {
                    return Err(Error::Invalid(format!(
                        "modulus: degree {} does not match a = {}",
                        ctx.degree(),
                        self.a
                    )));
                }
                ctx
            }
            None => FieldCtx::new(self.p, self.a).map_err(|e| at("p/a", e))?,
        };
        let ambient = match self.ambient.kind {
            AmbientKind::Affine => Ambient::Affine(self.ambient.dim),
            AmbientKind::Projective => Ambient::Projective(self.ambient.dim),
        };
        let nvars = ambient.nvars();
        let mut equations = Vec::with_capacity(self.equations.len());
        for (i, eq) in self.equations.iter().enumerate() {
            let mut terms = Vec::with_capacity(eq.len());
            for (j, Term(exps, coeff)) in eq.iter().enumerate() {
                let path = format!("equations[{i}][{j}]");
                if exps.len() != nvars {
                    return Err(Error::Invalid(format!(
                        "{path}: exponent vector has length {}, expected {nvars}",
                        exps.len()
                    )));
                }
                let c = match coeff {
                    Coeff::Scalar(c) => base.from_int(*c),
                    Coeff::Vector(v) => base.element(v).map_err(|e| at(&path, e))?,
                };
                terms.push((exps.clone(), c));
            }
            let poly = MultiPoly::from_terms(&base, nvars, terms).map_err(|e| at(&format!("equations[{i}]"), e))?;
            equations.push(poly);
        }
        let mut spec = VarietySpec::new(&self.label, &base, ambient, equations)?.with_smooth(self.smooth);
        if let Some(d) = self.dimension {
            spec = spec.with_dimension(d);
        }
        Ok(spec)
    }
}

fn at(path: &str, e: Error) -> Error {
    Error::Invalid(format!("{path}: {e}"))
}

/// Parses a variety file. Syntax errors carry line and column.
pub fn parse_variety(text: &str) -> Result<VarietySpec> {
    let file: VarietyFile = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let reason = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(r, _)| r);
        Error::Invalid(format!("line {} column {}: {reason}", e.line(), e.column()))
    })?;
    file.to_spec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{count_points, CountConfig};

    const CURVE: &str = r#"{
        "label": "y^2 z = x^3 + x z^2 + z^3",
        "p": 5,
        "ambient": {"kind": "projective", "dim": 2},
        "equations": [[[[0,2,1],[1]], [[3,0,0],[4]], [[1,0,2],[4]], [[0,0,3],4]]],
        "smooth": true
    }"#;

    #[test]
    fn parses_and_counts() {
        let v = parse_variety(CURVE).unwrap();
        assert_eq!(v.q(), 5);
        assert_eq!(v.dimension(), 1);
        assert!(v.smooth_asserted());
        // Brute-force oracle, counted directly here: affine solutions of
        // y^2 = x^3 + x + 1 plus the point at infinity.
        let affine = (0..5u64)
            .flat_map(|x| (0..5u64).map(move |y| (x, y)))
            .filter(|&(x, y)| (y * y + 5 * 25 - (x * x * x + x + 1)) % 5 == 0)
            .count() as u64;
        assert_eq!(count_points(&v, 1, &CountConfig::default()).unwrap(), affine + 1);
    }

    #[test]
    fn round_trips_through_file_form() {
        let v = parse_variety(CURVE).unwrap();
        let file = VarietyFile::from_spec(&v);
        let text = serde_json::to_string(&file).unwrap();
        let back = parse_variety(&text).unwrap();
        assert_eq!(back.equations(), v.equations());
        assert_eq!(back.ambient(), v.ambient());
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_variety("{\n  \"label\": 3\n}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn semantic_errors_have_paths() {
        let bad = CURVE.replace("[[3,0,0],[4]]", "[[3,0],[4]]");
        let msg = parse_variety(&bad).unwrap_err().to_string();
        assert!(msg.contains("equations[0][1]"), "{msg}");

        let bad = CURVE.replace("\"p\": 5", "\"p\": 6");
        assert!(parse_variety(&bad).unwrap_err().to_string().contains("not prime"));

        let bad = CURVE.replace("[[0,0,3],4]", "[[0,0,3],[4,1]]");
        let msg = parse_variety(&bad).unwrap_err().to_string();
        assert!(msg.contains("equations[0][3]"), "{msg}");

        let bad = CURVE.replace("[[1,0,2],[4]]", "[[1,0,1],[4]]");
        assert!(parse_variety(&bad).unwrap_err().to_string().contains("homogeneous"));
    }

    #[test]
    fn extension_base_with_explicit_modulus() {
        let text = r#"{"label": "P^1 over F_4", "p": 2, "a": 2, "modulus": [1,1,1],
                       "ambient": {"kind": "projective", "dim": 1}, "equations": []}"#;
        let v = parse_variety(text).unwrap();
        assert_eq!(v.q(), 4);
        assert_eq!(count_points(&v, 2, &CountConfig::default()).unwrap(), 17);
        let bad = text.replace("[1,1,1]", "[1,0,1]");
        assert!(parse_variety(&bad).is_err());
    }
}
