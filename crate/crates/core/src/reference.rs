//! Bundled reference data: published domain scores for GPT-4 (2023),
//! GPT-5 (2025) and the ideal reference model, their subdomain tables, and the
//! printed aggregates those inputs are expected to reproduce.
//!
//! Subdomain values are stored exactly as printed (percent, rounded); the
//! profile documents carry raws reconstructed as `percent * weight / 100`.

use crate::error::Result;
use crate::profile::{DomainProfile, SubdomainEntry, SubdomainTable};
use crate::report::{parse_profile, LoadedProfile};

/// Broad domain ids in canonical order.
pub const DOMAIN_IDS: [&str; 10] = ["K", "RW", "M", "R", "WM", "MS", "MR", "V", "A", "S"];

pub const GPT4_DOCUMENT: &str = include_str!("../data/gpt4.profile");
pub const GPT5_DOCUMENT: &str = include_str!("../data/gpt5.profile");
pub const AGI_DOCUMENT: &str = include_str!("../data/agi.profile");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Gpt4,
    Gpt5,
    Ideal,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Gpt4, Model::Gpt5, Model::Ideal];

    pub fn name(self) -> &'static str {
        match self {
            Model::Gpt4 => "GPT-4 (2023)",
            Model::Gpt5 => "GPT-5 (2025)",
            Model::Ideal => "AGI",
        }
    }

    /// Domain scores in percent, `DOMAIN_IDS` order.
    pub fn domain_percents(self) -> [f64; 10] {
        match self {
            Model::Gpt4 => [80., 60., 40., 0., 20., 0., 40., 0., 0., 30.],
            Model::Gpt5 => [90., 100., 100., 70., 50., 0., 40., 40., 60., 30.],
            Model::Ideal => [100.; 10],
        }
    }

    pub fn document(self) -> &'static str {
        match self {
            Model::Gpt4 => GPT4_DOCUMENT,
            Model::Gpt5 => GPT5_DOCUMENT,
            Model::Ideal => AGI_DOCUMENT,
        }
    }

    /// Printed key scores in percent: `AGI_p` at p = 1, 0.5, 0, -0.5, -1, then `AGI_AUC`.
    pub fn printed_key_scores(self) -> [u32; 6] {
        match self {
            Model::Gpt4 => [27, 16, 0, 0, 0, 7],
            Model::Gpt5 => [58, 50, 16, 0, 0, 24],
            Model::Ideal => [100; 6],
        }
    }

    pub fn profile(self) -> DomainProfile {
        DomainProfile::from_fractions(
            self.name(),
            DOMAIN_IDS
                .iter()
                .copied()
                .zip(self.domain_percents().iter().map(|p| p / 100.0)),
        )
        .expect("reference profile is valid")
    }

    pub fn load_document(self) -> Result<LoadedProfile> {
        parse_profile(self.document())
    }
}

/// Exponents of the key-score columns, matching [`Model::printed_key_scores`].
pub const KEY_EXPONENTS: [f64; 5] = [1.0, 0.5, 0.0, -0.5, -1.0];

/// One appendix table: subdomains, weights and both models' rows.
#[derive(Debug, Clone, Copy)]
pub struct AppendixTable {
    pub domain_id: &'static str,
    pub subdomains: &'static [&'static str],
    pub weights: &'static [f64],
    pub gpt4: AppendixRow,
    pub gpt5: AppendixRow,
}

#[derive(Debug, Clone, Copy)]
pub struct AppendixRow {
    /// Normalized subdomain scores as printed, percent.
    pub percents: &'static [f64],
    /// Printed AM, WAM, GM, WGM.
    pub printed: [f64; 4],
}

impl AppendixTable {
    pub fn row(&self, model: Model) -> Option<&AppendixRow> {
        match model {
            Model::Gpt4 => Some(&self.gpt4),
            Model::Gpt5 => Some(&self.gpt5),
            Model::Ideal => None,
        }
    }

    pub fn subdomain_table(&self, model: Model) -> Option<SubdomainTable> {
        let row = self.row(model)?;
        let entries = self
            .subdomains
            .iter()
            .zip(row.percents.iter().zip(self.weights))
            .map(|(id, (&pct, &w))| SubdomainEntry::from_percent(*id, pct, w))
            .collect();
        Some(SubdomainTable::new(self.domain_id, entries).expect("reference table is valid"))
    }
}

pub const APPENDIX: [AppendixTable; 10] = [
    AppendixTable {
        domain_id: "K",
        subdomains: &["Common", "Science", "SocialScience", "History", "Culture"],
        weights: &[20., 20., 20., 20., 20.],
        gpt4: AppendixRow {
            percents: &[100., 100., 100., 100., 0.],
            printed: [80.0, 80.0, 6.3, 6.3],
        },
        gpt5: AppendixRow {
            percents: &[100., 100., 100., 100., 50.],
            printed: [90.0, 90.0, 87.1, 87.1],
        },
    },
    AppendixTable {
        domain_id: "RW",
        subdomains: &["Letters", "Reading", "Writing", "Usage"],
        weights: &[10., 30., 30., 30.],
        gpt4: AppendixRow {
            percents: &[0., 67., 100., 33.],
            printed: [50.0, 60.0, 2.2, 16.0],
        },
        gpt5: AppendixRow {
            percents: &[100., 100., 100., 100.],
            printed: [100.0, 100.0, 100.0, 100.0],
        },
    },
    AppendixTable {
        domain_id: "M",
        subdomains: &["Arithmetic", "Algebra", "Geometry", "Probability", "Calculus"],
        weights: &[20., 20., 20., 20., 20.],
        gpt4: AppendixRow {
            percents: &[100., 50., 0., 50., 0.],
            printed: [40.0, 40.0, 0.3, 0.3],
        },
        gpt5: AppendixRow {
            percents: &[100., 100., 100., 100., 100.],
            printed: [100.0, 100.0, 100.0, 100.0],
        },
    },
    AppendixTable {
        domain_id: "R",
        subdomains: &["Deduction", "Induction", "TheoryOfMind", "Planning", "Adaptation"],
        weights: &[20., 40., 20., 10., 10.],
        gpt4: AppendixRow {
            percents: &[0., 0., 0., 0., 0.],
            printed: [0.0, 0.0, 0.0, 0.0],
        },
        gpt5: AppendixRow {
            percents: &[100., 50., 100., 100., 0.],
            printed: [70.0, 70.0, 5.5, 19.0],
        },
    },
    AppendixTable {
        domain_id: "WM",
        subdomains: &["Textual", "Auditory", "Visual", "CrossModal"],
        weights: &[20., 20., 40., 20.],
        gpt4: AppendixRow {
            percents: &[100., 0., 0., 0.],
            printed: [25.0, 20.0, 0.0, 0.0],
        },
        gpt5: AppendixRow {
            percents: &[100., 0., 25., 50.],
            printed: [43.8, 40.0, 1.9, 3.2],
        },
    },
    AppendixTable {
        domain_id: "MS",
        subdomains: &["Associative", "Meaningful", "Verbatim"],
        weights: &[40., 30., 30.],
        gpt4: AppendixRow {
            percents: &[0., 0., 0.],
            printed: [0.0, 0.0, 0.0, 0.0],
        },
        gpt5: AppendixRow {
            percents: &[0., 0., 0.],
            printed: [0.0, 0.0, 0.0, 0.0],
        },
    },
    AppendixTable {
        domain_id: "MR",
        subdomains: &["Fluency", "HallucinationAvoidance"],
        weights: &[60., 40.],
        gpt4: AppendixRow {
            percents: &[67., 0.],
            printed: [33.5, 40.2, 0.1, 0.3],
        },
        gpt5: AppendixRow {
            percents: &[67., 0.],
            printed: [33.5, 40.2, 0.1, 0.3],
        },
    },
    AppendixTable {
        domain_id: "V",
        subdomains: &["Perception", "Generation", "Reasoning", "Spatial"],
        weights: &[40., 30., 20., 10.],
        gpt4: AppendixRow {
            percents: &[0., 0., 0., 0.],
            printed: [0.0, 0.0, 0.0, 0.0],
        },
        gpt5: AppendixRow {
            percents: &[50., 67., 0., 0.],
            printed: [29.3, 40.1, 0.1, 1.1],
        },
    },
    AppendixTable {
        domain_id: "A",
        subdomains: &["Phonetic", "SpeechRecognition", "Voice", "Rhythmic", "Musical"],
        weights: &[10., 40., 30., 10., 10.],
        gpt4: AppendixRow {
            percents: &[0., 0., 0., 0., 0.],
            printed: [0.0, 0.0, 0.0, 0.0],
        },
        gpt5: AppendixRow {
            percents: &[0., 100., 67., 0., 0.],
            printed: [33.4, 60.1, 0.0, 1.4],
        },
    },
    AppendixTable {
        domain_id: "S",
        subdomains: &["PS-S", "PS-C", "Re", "Wr", "Num", "SRT", "CRT", "IT", "CS", "PF"],
        weights: &[10., 10., 10., 10., 10., 10., 10., 10., 10., 10.],
        gpt4: AppendixRow {
            percents: &[0., 0., 100., 100., 100., 0., 0., 0., 0., 0.],
            printed: [30.0, 30.0, 0.01, 0.01],
        },
        gpt5: AppendixRow {
            percents: &[0., 0., 100., 100., 100., 0., 0., 0., 0., 0.],
            printed: [30.0, 30.0, 0.01, 0.01],
        },
    },
];

/// All ten subdomain tables for a model, canonical domain order.
pub fn appendix_tables(model: Model) -> Vec<SubdomainTable> {
    APPENDIX
        .iter()
        .filter_map(|t| t.subdomain_table(model))
        .collect()
}

/// Published scores on external reasoning benchmarks, in percent. Kept for
/// documentation and side-by-side display only.
pub mod external {
    pub const ARC_AGI_2_GPT5_PRO: f64 = 18.0;
    pub const ARC_AGI_2_GPT5_HIGH: f64 = 10.0;
    pub const BIG_BENCH_EXTRA_HARD_GPT4: f64 = 6.0;
}
