//! Rendering of step reports and search hits as plain tables, CSV, and JSON.
//! All emitters are deterministic: identical inputs give byte-identical text.

use rug::Integer;
use serde::Serialize;

use crate::digits::{to_digits, SearchHit};
use crate::reduction::{ReductionSummary, StepReport};

/// Big integers serialize as decimal strings: they routinely exceed every
/// native JSON number width.
pub fn serialize_integer<S: serde::Serializer>(
    v: &Integer,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&v.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}; use table, csv, or json")),
        }
    }
}

pub const STEP_CSV_HEADER: &str = "step,rho,convergent_index,q,epsilon_lower,bound";

pub fn step_csv_row(r: &StepReport) -> String {
    format!(
        "{},{},{},{},{:.6e},{}",
        r.step, r.rho, r.convergent_index, r.q, r.epsilon_lower, r.bound
    )
}

pub fn step_table_row(r: &StepReport) -> String {
    format!(
        "step {}  rho {:>2}  q_idx {:>3}  q {}  eps >= {:.6e}  cases {}  bound {}",
        r.step, r.rho, r.convergent_index, r.q, r.epsilon_lower, r.cases_evaluated, r.bound
    )
}

pub fn render_steps(reports: &[StepReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&step_table_row(r));
                out.push('\n');
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from(STEP_CSV_HEADER);
            out.push('\n');
            for r in reports {
                out.push_str(&step_csv_row(r));
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => to_json_lines(reports),
    }
}

pub fn render_summary(summary: &ReductionSummary, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(summary).expect("serializable");
            s.push('\n');
            s
        }
        _ => {
            let mut out = render_steps(&summary.steps, format);
            out.push_str(&format!(
                "rho {}: ell <= {}, m <= {}, n <= {}\n",
                summary.rho, summary.ell_max, summary.m_max, summary.n_max
            ));
            out
        }
    }
}

pub const HIT_CSV_HEADER: &str = "n,value,base,digits,d1,d2,d3,ell,m,k";

pub fn render_hits(hits: &[SearchHit], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json_lines(hits),
        OutputFormat::Csv => {
            let mut out = String::from(HIT_CSV_HEADER);
            out.push('\n');
            for h in hits {
                for p in &h.patterns {
                    let ds = to_digits(&h.value, p.base).expect("base >= 2");
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{}\n",
                        h.n,
                        h.value,
                        p.base,
                        ds.to_string_plain(),
                        p.d1,
                        p.d2,
                        p.d3,
                        p.ell,
                        p.m,
                        p.k
                    ));
                }
            }
            out
        }
        OutputFormat::Table => {
            let mut out = String::new();
            for h in hits {
                let reps: Vec<String> = h
                    .patterns
                    .iter()
                    .map(|p| {
                        let ds = to_digits(&h.value, p.base).expect("base >= 2");
                        format!(
                            "{}_{} (ell={},m={},k={})",
                            ds.to_string_plain(),
                            p.base,
                            p.ell,
                            p.m,
                            p.k
                        )
                    })
                    .collect();
                out.push_str(&format!(
                    "N({}) = {} = {}\n",
                    h.n,
                    h.value,
                    reps.join(" = ")
                ));
            }
            out
        }
    }
}

/// One JSON object per line, snake_case keys (serde's derive default).
pub fn to_json_lines<T: Serialize>(rows: &[T]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&serde_json::to_string(row).expect("serializable"));
        out.push('\n');
    }
    out
}
