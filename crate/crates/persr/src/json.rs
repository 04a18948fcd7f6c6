//! JSON formats. Every emitter has a matching loader; `+∞` deaths are
//! written as `null`.

use std::path::Path;

use persr_core::algebra::{BettiTable, FVector, HVector, PersistentBettiTable};
use persr_core::classify::{EvalReport, Evaluation, Scores};
use persr_core::facet::{FacetBarcode, FacetDiagram, FacetInterval, DiagramPoint};
use persr_core::filtration::round_to;
use persr_core::homology::{Barcode, Interval};
use persr_core::{CriticalValues, Filtration, Simplex, SimplicialComplex};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rounds to `digits` decimals when set.
pub fn round(x: f64, digits: Option<u32>) -> f64 {
    digits.map_or(x, |d| round_to(x, d))
}

fn round_opt(x: Option<f64>, digits: Option<u32>) -> Option<f64> {
    x.map(|v| round(v, digits))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("formats serialise infallibly");
    s.push('\n');
    s
}

pub fn from_json<T: DeserializeOwned>(text: &str, origin: &Path) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(origin, Some(e.line()), e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_json(&text, path)
}

/// `{"vertices": n, "faces": [[v, ...], ...]}`: facets on `0..n`, closed
/// downward on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: u32,
    pub faces: Vec<Vec<u32>>,
}

impl ComplexFile {
    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        ComplexFile {
            vertices: complex.vertex_set().last().map_or(0, |v| v + 1),
            faces: complex.facets().iter().map(|s| s.vertices().to_vec()).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        Ok(SimplicialComplex::from_facets(self.vertices, self.faces.iter().cloned())?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValuedFace {
    pub face: Vec<u32>,
    pub value: f64,
}

/// `{"vertices": [v, ...], "simplices": [{"face": [...], "value": x}, ...]}`
/// listing every face with its value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiltrationFile {
    pub vertices: Vec<u32>,
    pub simplices: Vec<ValuedFace>,
}

impl FiltrationFile {
    pub fn from_filtration(f: &Filtration, digits: Option<u32>) -> Self {
        FiltrationFile {
            vertices: f.complex().vertex_set().to_vec(),
            simplices: f
                .ordered_faces()
                .into_iter()
                .map(|(s, v)| ValuedFace {
                    face: s.vertices().to_vec(),
                    value: round(v, digits),
                })
                .collect(),
        }
    }

    pub fn to_filtration(&self) -> Result<Filtration> {
        let values = self
            .simplices
            .iter()
            .map(|vf| Ok((Simplex::new(vf.face.iter().copied())?, vf.value)))
            .collect::<Result<_>>()?;
        Ok(Filtration::from_values(self.vertices.iter().copied(), values)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub dim: i32,
    pub birth: f64,
    pub death: Option<f64>,
}

/// `{"intervals": [{"dim": q, "birth": b, "death": d | null}, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarcodeFile {
    pub intervals: Vec<IntervalRecord>,
}

impl BarcodeFile {
    pub fn from_barcode(b: &Barcode, digits: Option<u32>) -> Self {
        BarcodeFile {
            intervals: b
                .intervals
                .iter()
                .map(|iv| IntervalRecord {
                    dim: iv.dim,
                    birth: round(iv.birth, digits),
                    death: round_opt(iv.death, digits),
                })
                .collect(),
        }
    }

    pub fn to_barcode(&self) -> Barcode {
        Barcode {
            intervals: self
                .intervals
                .iter()
                .map(|r| Interval {
                    dim: r.dim,
                    birth: r.birth,
                    death: r.death,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarRecord {
    pub face: Vec<u32>,
    pub dim: usize,
    pub birth: f64,
    pub death: Option<f64>,
}

/// `{"bars": [{"face": [...], "dim": k, "birth": b, "death": d | null}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacetBarcodeFile {
    pub bars: Vec<BarRecord>,
}

impl FacetBarcodeFile {
    pub fn from_barcode(b: &FacetBarcode, digits: Option<u32>) -> Self {
        FacetBarcodeFile {
            bars: b
                .bars
                .iter()
                .map(|bar| BarRecord {
                    face: bar.face.vertices().to_vec(),
                    dim: bar.dim(),
                    birth: round(bar.birth, digits),
                    death: round_opt(bar.death, digits),
                })
                .collect(),
        }
    }

    pub fn to_barcode(&self, origin: &Path) -> Result<FacetBarcode> {
        let bars = self
            .bars
            .iter()
            .map(|r| {
                let face = Simplex::new(r.face.iter().copied())?;
                if face.dim() != r.dim {
                    return Err(Error::parse(
                        origin,
                        None,
                        format!("bar on {face} declares dimension {}", r.dim),
                    ));
                }
                Ok(FacetInterval {
                    face,
                    birth: r.birth,
                    death: r.death,
                })
            })
            .collect::<Result<_>>()?;
        Ok(FacetBarcode { bars })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramRecord {
    pub birth: f64,
    pub death: Option<f64>,
    pub multiplicity: u64,
}

/// `{"points": [{"birth": b, "death": d | null, "multiplicity": m}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramFile {
    pub points: Vec<DiagramRecord>,
}

impl DiagramFile {
    pub fn from_diagram(d: &FacetDiagram, digits: Option<u32>) -> Self {
        DiagramFile {
            points: d
                .points
                .iter()
                .map(|p| DiagramRecord {
                    birth: round(p.birth, digits),
                    death: round_opt(p.death, digits),
                    multiplicity: p.multiplicity,
                })
                .collect(),
        }
    }

    pub fn to_diagram(&self) -> FacetDiagram {
        FacetDiagram {
            points: self
                .points
                .iter()
                .map(|r| DiagramPoint {
                    birth: r.birth,
                    death: r.death,
                    multiplicity: r.multiplicity,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: usize,
    pub beta: u64,
}

/// `{"n": n, "entries": [{"i": i, "j": j, "beta": b}, ...]}` listing the
/// non-zero entries. Persistent tables also carry `t`, `t_prime` and the
/// field modulus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BettiFile {
    pub n: usize,
    pub entries: Vec<BettiEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated_at: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_prime: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
}

impl BettiFile {
    pub fn from_table(table: &BettiTable) -> Self {
        BettiFile {
            n: table.n(),
            entries: table
                .nonzero()
                .into_iter()
                .map(|(i, j, beta)| BettiEntry { i, j, beta })
                .collect(),
            truncated_at: table.truncated_at(),
            t: None,
            t_prime: None,
            modulus: None,
        }
    }

    pub fn from_persistent(p: &PersistentBettiTable, digits: Option<u32>) -> Self {
        BettiFile {
            t: Some(round(p.t, digits)),
            t_prime: Some(round(p.t_prime, digits)),
            modulus: Some(p.modulus),
            ..Self::from_table(&p.table)
        }
    }

    pub fn to_table(&self) -> Result<BettiTable> {
        let mut table = BettiTable::from_entries(self.n, self.entries.iter().map(|e| (e.i, e.j, e.beta)))?;
        table.set_truncated_at(self.truncated_at);
        Ok(table)
    }

    /// The persistent table, if `t`, `t_prime` and `modulus` are all present.
    pub fn to_persistent(&self) -> Result<Option<PersistentBettiTable>> {
        let table = self.to_table()?;
        Ok(match (self.t, self.t_prime, self.modulus) {
            (Some(t), Some(t_prime), Some(modulus)) => Some(PersistentBettiTable {
                table,
                t,
                t_prime,
                modulus,
            }),
            _ => None,
        })
    }
}

/// `{"values": [...]}`, strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalValuesFile {
    pub values: Vec<f64>,
}

impl CriticalValuesFile {
    pub fn from_values(v: &CriticalValues, digits: Option<u32>) -> Self {
        CriticalValuesFile {
            values: v.as_slice().iter().map(|&x| round(x, digits)).collect(),
        }
    }

    pub fn to_values(&self) -> Result<CriticalValues> {
        Ok(CriticalValues::new(self.values.clone())?)
    }
}

/// h- and f-vectors with the Hilbert series numerator. `t` and `t_prime`
/// are set for persistent vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HfFile {
    pub h: Vec<i64>,
    pub f: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert_numerator: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_prime: Option<f64>,
}

impl HfFile {
    pub fn new(h: &HVector, f: &FVector) -> Self {
        HfFile {
            h: h.0.clone(),
            f: f.0.clone(),
            hilbert_numerator: None,
            t: None,
            t_prime: None,
        }
    }
}

/// Step data: one h/f pair per critical value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub points: Vec<HfFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoresRecord {
    pub accuracy: f64,
    pub balanced_accuracy: f64,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
    pub mcc: f64,
}

impl ScoresRecord {
    pub fn new(s: &Scores, digits: Option<u32>) -> Self {
        let a = s.as_array().map(|x| round(x, digits));
        ScoresRecord {
            accuracy: a[0],
            balanced_accuracy: a[1],
            macro_precision: a[2],
            macro_recall: a[3],
            macro_f1: a[4],
            mcc: a[5],
        }
    }

    pub fn to_scores(&self) -> Scores {
        Scores::from_array([
            self.accuracy,
            self.balanced_accuracy,
            self.macro_precision,
            self.macro_recall,
            self.macro_f1,
            self.mcc,
        ])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub repetition: usize,
    pub test_fraction: f64,
    pub scores: ScoresRecord,
    pub mcc_defined: bool,
    pub train: Vec<String>,
    pub test: Vec<String>,
    pub predictions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationRecord {
    pub k: usize,
    pub test_fraction: f64,
    pub seed: u64,
    pub reports: Vec<ReportRecord>,
    pub mean: ScoresRecord,
    pub std: ScoresRecord,
}

/// `{"evaluations": [...]}`, one entry per test fraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsFile {
    pub samples: Vec<String>,
    pub evaluations: Vec<EvaluationRecord>,
}

impl EvaluationRecord {
    /// Sample indices are replaced by their ids.
    pub fn new(e: &Evaluation, ids: &[String], k: usize, seed: u64, digits: Option<u32>) -> Self {
        let names = |idx: &[usize]| idx.iter().map(|&i| ids[i].clone()).collect();
        let report = |r: &EvalReport| ReportRecord {
            repetition: r.repetition,
            test_fraction: r.test_fraction,
            scores: ScoresRecord::new(&r.scores, digits),
            mcc_defined: r.mcc_defined,
            train: names(&r.train),
            test: names(&r.test),
            predictions: r.predictions.clone(),
        };
        EvaluationRecord {
            k,
            test_fraction: e.reports.first().map_or(0.0, |r| r.test_fraction),
            seed,
            reports: e.reports.iter().map(report).collect(),
            mean: ScoresRecord::new(&e.mean, digits),
            std: ScoresRecord::new(&e.std, digits),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn origin() -> &'static Path {
        Path::new("t.json")
    }

    #[test]
    fn infinite_death_is_null() {
        let b = Barcode {
            intervals: vec![Interval {
                dim: 0,
                birth: 0.0,
                death: None,
            }],
        };
        let s = to_json(&BarcodeFile::from_barcode(&b, None));
        assert!(s.contains("\"death\": null"), "{s}");
        let back: BarcodeFile = from_json(&s, origin()).unwrap();
        assert_eq!(back.to_barcode(), b);
    }

    #[test]
    fn parse_errors_carry_line() {
        let err = from_json::<ComplexFile>("{\n\"vertices\": 3,\n\"faces\": [[0, \"a\"]]\n}", origin())
            .unwrap_err()
            .to_string();
        assert!(err.starts_with("t.json:3"), "{err}");
    }

    #[test]
    fn mislabelled_bar_dimension() {
        let f = FacetBarcodeFile {
            bars: vec![BarRecord {
                face: vec![0, 1],
                dim: 0,
                birth: 0.0,
                death: None,
            }],
        };
        assert!(f.to_barcode(origin()).is_err());
    }

    #[test]
    fn precision_rounds_output() {
        let v = CriticalValues::new(vec![0.0, 1.23456789]).unwrap();
        assert_eq!(CriticalValuesFile::from_values(&v, Some(3)).values, vec![0.0, 1.235]);
    }
}
