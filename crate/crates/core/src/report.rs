//! Profile documents (TOML), curve export and key-score reports.
//!
//! Files carry scores in percent; everything is converted to fractions at
//! this boundary. Delimited output is UTF-8, comma separated, `\n` line
//! endings, plain fixed-point numbers.

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::curve::{agi_auc, Curve, PGrid};
use crate::error::{Error, Result};
use crate::mean::{agi_p, Exponent};
use crate::profile::{
    Domain, DomainProfile, EpsilonFloor, Score, SubdomainEntry, SubdomainTable,
};
use crate::reference::KEY_EXPONENTS;
use crate::rollup::DomainAggregates;

pub const SCHEMA_VERSION: &str = "1";

pub const CURVE_HEADER: [&str; 2] = ["p", "agi_p"];
pub const REPORT_HEADER: [&str; 7] = [
    "model",
    "agi_p1",
    "agi_p0.5",
    "agi_p0",
    "agi_p-0.5",
    "agi_p-1",
    "agi_auc",
];
pub const APPENDIX_HEADER: [&str; 5] = ["domain", "am", "wam", "gm", "wgm"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDocument {
    pub schema_version: String,
    pub model_name: String,
    pub domains: Vec<DomainEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subdomain_tables: Vec<TableEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainEntry {
    pub id: String,
    pub score_percent: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub domain_id: String,
    pub entries: Vec<SubdomainDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubdomainDoc {
    pub id: String,
    pub raw: f64,
    pub weight: f64,
}

/// A validated profile plus any subdomain tables that came with it.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedProfile {
    pub profile: DomainProfile,
    pub tables: Vec<SubdomainTable>,
}

impl ProfileDocument {
    pub fn from_profile(profile: &DomainProfile, tables: &[SubdomainTable]) -> Self {
        let domains = profile
            .domains
            .iter()
            .enumerate()
            .map(|(i, d)| DomainEntry {
                id: d.id.clone(),
                score_percent: d.score.percent(),
                weight: profile.weights.as_ref().map(|w| w[i]),
            })
            .collect();
        let subdomain_tables = tables
            .iter()
            .map(|t| TableEntry {
                domain_id: t.domain_id.clone(),
                entries: t
                    .entries
                    .iter()
                    .map(|e| SubdomainDoc {
                        id: e.id.clone(),
                        raw: e.raw,
                        weight: e.weight,
                    })
                    .collect(),
            })
            .collect();
        ProfileDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            model_name: profile.model_name.clone(),
            domains,
            subdomain_tables,
        }
    }

    pub fn into_loaded(self) -> Result<LoadedProfile> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaVersionUnsupported(self.schema_version));
        }
        let mut domains = Vec::with_capacity(self.domains.len());
        for (i, d) in self.domains.iter().enumerate() {
            let score = Score::from_percent(d.score_percent)
                .map_err(|e| e.in_context(format!("domains[{i}] ({}).score_percent", d.id)))?;
            domains.push(Domain::new(d.id.clone(), score));
        }
        let weighted = self.domains.iter().filter(|d| d.weight.is_some()).count();
        let weights = match weighted {
            0 => None,
            n if n == self.domains.len() => {
                Some(self.domains.iter().map(|d| d.weight.unwrap()).collect())
            }
            _ => {
                return Err(Error::BadWeights(
                    "either every domain or no domain may carry a weight".into(),
                )
                .in_context("domains"))
            }
        };
        let profile = DomainProfile::new(self.model_name, domains, weights)
            .map_err(|e| e.in_context("domains"))?;

        let mut tables = Vec::with_capacity(self.subdomain_tables.len());
        for (i, t) in self.subdomain_tables.into_iter().enumerate() {
            let context = format!("subdomain_tables[{i}] ({})", t.domain_id);
            let entries = t
                .entries
                .into_iter()
                .map(|e| SubdomainEntry::new(e.id, e.raw, e.weight))
                .collect();
            let table =
                SubdomainTable::new(t.domain_id, entries).map_err(|e| e.in_context(context))?;
            if tables
                .iter()
                .any(|x: &SubdomainTable| x.domain_id == table.domain_id)
            {
                return Err(Error::DuplicateDomain(table.domain_id).in_context("subdomain_tables"));
            }
            tables.push(table);
        }
        Ok(LoadedProfile { profile, tables })
    }
}

pub fn parse_profile(text: &str) -> Result<LoadedProfile> {
    let doc: ProfileDocument = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_loaded()
}

pub fn load_profile(mut source: impl Read) -> Result<LoadedProfile> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| Error::Parse(e.to_string()))?;
    parse_profile(&text)
}

pub fn save_profile(profile: &DomainProfile, tables: &[SubdomainTable]) -> String {
    toml::to_string(&ProfileDocument::from_profile(profile, tables))
        .expect("profile documents always serialize")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Delimited,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// Nearest integer percent.
    Integer,
    /// One decimal place.
    OneDecimal,
}

impl Rounding {
    pub fn decimals(self) -> u32 {
        match self {
            Rounding::Integer => 0,
            Rounding::OneDecimal => 1,
        }
    }

    pub fn apply(self, percent: f64) -> f64 {
        round_half_away(percent, self.decimals())
    }

    pub fn format(self, percent: f64) -> String {
        format!("{:.*}", self.decimals() as usize, self.apply(percent))
    }
}

/// Rounds half away from zero at `decimals` places.
pub fn round_half_away(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    let r = (x * scale).round() / scale;
    // -0.0 would print as "-0".
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Vec<u8> {
    w.into_inner().expect("in-memory writer does not fail")
}

#[derive(Serialize)]
struct CurveDocument<'a> {
    profile_name: &'a str,
    p_min: f64,
    p_max: f64,
    num_points: usize,
    samples: Vec<CurvePoint>,
}

#[derive(Serialize)]
struct CurvePoint {
    p: f64,
    agi_p: f64,
}

/// Curve samples as `p,agi_p` rows (fractions, full precision) or JSON.
pub fn emit_curve(curve: &Curve, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Delimited => {
            let mut w = csv_writer();
            w.write_record(CURVE_HEADER).unwrap();
            for s in &curve.samples {
                w.write_record([s.p.to_string(), s.value.to_string()]).unwrap();
            }
            finish(w)
        }
        OutputFormat::Structured => {
            let (p_min, p_max) = curve.p_range().unwrap_or((f64::NAN, f64::NAN));
            let doc = CurveDocument {
                profile_name: &curve.profile_name,
                p_min,
                p_max,
                num_points: curve.samples.len(),
                samples: curve
                    .samples
                    .iter()
                    .map(|s| CurvePoint {
                        p: s.p,
                        agi_p: s.value,
                    })
                    .collect(),
            };
            let mut out = serde_json::to_vec_pretty(&doc).unwrap();
            out.push(b'\n');
            out
        }
    }
}

/// Full-precision key scores for one profile, in percent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KeyScores {
    pub model: String,
    /// `AGI_p` at p = 1, 0.5, 0, -0.5, -1.
    pub agi_p: [f64; 5],
    pub agi_auc: f64,
}

impl KeyScores {
    pub fn compute(profile: &DomainProfile, grid: &PGrid, eps: EpsilonFloor) -> Result<Self> {
        let mut agi = [0.0; 5];
        for (slot, &p) in agi.iter_mut().zip(&KEY_EXPONENTS) {
            *slot = agi_p(profile, Exponent::new(p)?, eps)?.percent();
        }
        Ok(KeyScores {
            model: profile.model_name.clone(),
            agi_p: agi,
            agi_auc: agi_auc(profile, grid, eps)?.percent(),
        })
    }

    /// All six columns in report order.
    pub fn columns(&self) -> [f64; 6] {
        let a = self.agi_p;
        [a[0], a[1], a[2], a[3], a[4], self.agi_auc]
    }
}

/// One row per profile: `AGI_p` at the key exponents and `AGI_AUC`, in percent.
pub fn emit_report(
    profiles: &[DomainProfile],
    grid: &PGrid,
    eps: EpsilonFloor,
    rounding: Rounding,
    format: OutputFormat,
) -> Result<Vec<u8>> {
    if profiles.is_empty() {
        return Err(Error::EmptyInput);
    }
    let rows = profiles
        .iter()
        .map(|p| KeyScores::compute(p, grid, eps))
        .collect::<Result<Vec<_>>>()?;
    Ok(match format {
        OutputFormat::Delimited => {
            let mut w = csv_writer();
            w.write_record(REPORT_HEADER).unwrap();
            for r in &rows {
                let mut rec = vec![r.model.clone()];
                rec.extend(r.columns().iter().map(|&v| rounding.format(v)));
                w.write_record(&rec).unwrap();
            }
            finish(w)
        }
        OutputFormat::Structured => {
            let docs: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("model".into(), r.model.clone().into());
                    for (key, v) in REPORT_HEADER[1..].iter().zip(r.columns()) {
                        obj.insert((*key).into(), rounding.apply(v).into());
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            let mut out = serde_json::to_vec_pretty(&docs).unwrap();
            out.push(b'\n');
            out
        }
    })
}

/// Appendix-style table: `domain,am,wam,gm,wgm` per domain.
pub fn emit_appendix(
    aggregates: &[DomainAggregates],
    rounding: Rounding,
    format: OutputFormat,
) -> Vec<u8> {
    match format {
        OutputFormat::Delimited => {
            let mut w = csv_writer();
            w.write_record(APPENDIX_HEADER).unwrap();
            for a in aggregates {
                w.write_record([
                    a.domain_id.clone(),
                    rounding.format(a.am),
                    rounding.format(a.wam),
                    rounding.format(a.gm),
                    rounding.format(a.wgm),
                ])
                .unwrap();
            }
            finish(w)
        }
        OutputFormat::Structured => {
            let rounded: Vec<DomainAggregates> = aggregates
                .iter()
                .map(|a| DomainAggregates {
                    domain_id: a.domain_id.clone(),
                    am: rounding.apply(a.am),
                    wam: rounding.apply(a.wam),
                    gm: rounding.apply(a.gm),
                    wgm: rounding.apply(a.wgm),
                })
                .collect();
            let mut out = serde_json::to_vec_pretty(&rounded).unwrap();
            out.push(b'\n');
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{sample_curve, CurveSample};
    use crate::reference::{appendix_tables, Model, GPT5_DOCUMENT};
    use crate::rollup::rollup_domain;

    const EPS: EpsilonFloor = EpsilonFloor::DEFAULT;

    #[test]
    fn bundled_gpt5_matches_table_row() {
        let loaded = parse_profile(GPT5_DOCUMENT).unwrap();
        let pct: Vec<f64> = loaded.profile.domains.iter().map(|d| d.score.percent()).collect();
        assert_eq!(pct, Model::Gpt5.domain_percents());
        assert_eq!(loaded.tables.len(), 10);
    }

    #[test]
    fn out_of_range_percent_is_a_validation_error() {
        let doc = "schema_version = \"1\"\nmodel_name = \"x\"\n[[domains]]\nid = \"K\"\nscore_percent = 101\n";
        let err = parse_profile(doc).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }), "{err:?}");
        assert!(err.to_string().contains("score_percent"));
    }

    #[test]
    fn schema_and_syntax_errors() {
        let doc = "schema_version = \"2\"\nmodel_name = \"x\"\n[[domains]]\nid = \"K\"\nscore_percent = 1\n";
        assert_eq!(
            parse_profile(doc).unwrap_err(),
            Error::SchemaVersionUnsupported("2".into())
        );
        let err = parse_profile("schema_version = \"1\"\nmodel_name = \n").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let unknown = "schema_version = \"1\"\nmodel_name = \"x\"\nextra = 1\n[[domains]]\nid = \"K\"\nscore_percent = 1\n";
        assert!(matches!(parse_profile(unknown), Err(Error::Parse(_))));
    }

    #[test]
    fn partial_weights_rejected() {
        let doc = "schema_version = \"1\"\nmodel_name = \"x\"\n\
            [[domains]]\nid = \"K\"\nscore_percent = 10\nweight = 2\n\
            [[domains]]\nid = \"RW\"\nscore_percent = 10\n";
        assert!(matches!(parse_profile(doc), Err(Error::Validation { .. })));
    }

    #[test]
    fn weighted_document_roundtrip() {
        let doc = "schema_version = \"1\"\nmodel_name = \"w\"\n\
            [[domains]]\nid = \"K\"\nscore_percent = 12.5\nweight = 2\n\
            [[domains]]\nid = \"RW\"\nscore_percent = 40\nweight = 1\n";
        let loaded = parse_profile(doc).unwrap();
        assert_eq!(loaded.profile.weights, Some(vec![2.0, 1.0]));
        let again = parse_profile(&save_profile(&loaded.profile, &loaded.tables)).unwrap();
        assert_eq!(again, loaded);
    }

    #[test]
    fn bundled_documents_roundtrip() {
        for m in Model::ALL {
            let a = load_profile(m.document().as_bytes()).unwrap();
            let text = save_profile(&a.profile, &a.tables);
            let b = parse_profile(&text).unwrap();
            assert_eq!(a, b);
            assert_eq!(save_profile(&b.profile, &b.tables), text);
        }
    }

    #[test]
    fn two_sample_curve_has_three_lines() {
        let c = Curve::new(
            "x",
            vec![
                CurveSample { p: -1.0, value: 0.25 },
                CurveSample { p: 1.0, value: 0.5 },
            ],
        )
        .unwrap();
        let out = String::from_utf8(emit_curve(&c, OutputFormat::Delimited)).unwrap();
        assert_eq!(out, "p,agi_p\n-1,0.25\n1,0.5\n");
    }

    #[test]
    fn gpt5_curve_csv() {
        let c = sample_curve(&Model::Gpt5.profile(), &PGrid::default(), EPS).unwrap();
        let out = String::from_utf8(emit_curve(&c, OutputFormat::Delimited)).unwrap();
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines.len(), 202);
        assert_eq!(lines[0], "p,agi_p");
        let zero_row = lines.iter().find(|l| l.starts_with("0,")).unwrap();
        let v: f64 = zero_row[2..].parse().unwrap();
        assert!((v - 0.156_953_246_810_845_3).abs() < 1e-12);
        assert!(!out.contains('e') && !out.contains('E'));
    }

    #[test]
    fn ideal_curve_is_all_ones() {
        let c = sample_curve(&Model::Ideal.profile(), &PGrid::default(), EPS).unwrap();
        let out = String::from_utf8(emit_curve(&c, OutputFormat::Delimited)).unwrap();
        assert!(out.lines().skip(1).all(|l| l.ends_with(",1")));
        let json: serde_json::Value =
            serde_json::from_slice(&emit_curve(&c, OutputFormat::Structured)).unwrap();
        assert_eq!(json["num_points"], 201);
        assert_eq!(json["profile_name"], "AGI");
    }

    #[test]
    fn ideal_report_row_is_all_hundreds() {
        let out = emit_report(
            &[Model::Ideal.profile()],
            &PGrid::default(),
            EPS,
            Rounding::Integer,
            OutputFormat::Delimited,
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "model,agi_p1,agi_p0.5,agi_p0,agi_p-0.5,agi_p-1,agi_auc\nAGI,100,100,100,100,100,100\n"
        );
    }

    #[test]
    fn report_rows_for_published_models() {
        let profiles: Vec<_> = Model::ALL.iter().map(|m| m.profile()).collect();
        let out = emit_report(
            &profiles,
            &PGrid::default(),
            EPS,
            Rounding::Integer,
            OutputFormat::Delimited,
        )
        .unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<_> = text.lines().collect();
        // The stored GPT-4 scores give 15.47% at p = 0.5.
        assert_eq!(lines[1], "GPT-4 (2023),27,15,0,0,0,7");
        assert_eq!(lines[2], "GPT-5 (2025),58,50,16,0,0,24");
        assert_eq!(lines[3], "AGI,100,100,100,100,100,100");
        assert!(emit_report(&[], &PGrid::default(), EPS, Rounding::Integer, OutputFormat::Delimited).is_err());
    }

    #[test]
    fn appendix_rw_row() {
        let t = &appendix_tables(Model::Gpt4)[1];
        let agg = rollup_domain(t, EPS).unwrap();
        let out = String::from_utf8(emit_appendix(
            &[agg],
            Rounding::OneDecimal,
            OutputFormat::Delimited,
        ))
        .unwrap();
        assert_eq!(out, "domain,am,wam,gm,wgm\nRW,50.0,60.0,2.2,16.0\n");
    }

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(round_half_away(2.5, 0), 3.0);
        assert_eq!(round_half_away(-2.5, 0), -3.0);
        assert_eq!(round_half_away(0.25, 1), 0.3);
        assert_eq!(round_half_away(40.2, 1), 40.2);
        assert_eq!(round_half_away(-0.04, 1).to_bits(), 0.0f64.to_bits());
        assert_eq!(Rounding::OneDecimal.format(6.3096), "6.3");
        assert_eq!(Rounding::Integer.format(15.4675), "15");
        assert_eq!(Rounding::OneDecimal.format(1e-4), "0.0");
    }
}
