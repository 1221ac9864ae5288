use serde::Serialize;

use super::config::OutputFormat;
use super::pipeline::InvariantReport;
use super::{qlist, qser, VerifyError};

/// One row per (link, quasi-orientation). Every field is a string so that
/// the CSV and JSON forms carry identical data; missing values are empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub orientation: String,
    pub crossings: String,
    pub components: String,
    pub determinant: String,
    pub sigma: String,
    pub jones: String,
    pub log_derivative: String,
    pub lambda: String,
    pub tau: String,
    pub spin_d: String,
    pub sigma_certificate: String,
    pub d_certificate: String,
    pub certificate: String,
    pub failed_checks: String,
    pub resource_limited: String,
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

pub fn report_rows(reports: &[InvariantReport]) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for r in reports {
        let failed: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| c.verdict.is_fail())
            .map(|c| c.kind.name())
            .collect();
        for o in &r.orientations {
            rows.push(ReportRow {
                name: r.name.clone(),
                orientation: o.orientation.clone(),
                crossings: r.crossings.to_string(),
                components: r.components.to_string(),
                determinant: opt(&r.determinant),
                sigma: opt(&o.sigma),
                jones: o.jones.clone().unwrap_or_default(),
                log_derivative: o.log_derivative.as_ref().map(qser::q).unwrap_or_default(),
                lambda: r.lambda.as_ref().map(qser::q).unwrap_or_default(),
                tau: o.tau.as_ref().map(qser::q).unwrap_or_default(),
                spin_d: r
                    .lattice
                    .as_ref()
                    .map(|l| qlist(&l.spin))
                    .unwrap_or_default(),
                sigma_certificate: opt(&o.sigma_certificate),
                d_certificate: o.d_certificate.as_ref().map(qser::q).unwrap_or_default(),
                certificate: r.certificate.status.as_str().to_string(),
                failed_checks: failed.join(" "),
                resource_limited: r.resource_limited.to_string(),
            });
        }
    }
    rows
}

pub fn render_report(
    reports: &[InvariantReport],
    format: OutputFormat,
) -> Result<String, VerifyError> {
    let rows = report_rows(reports);
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rows)
                .map_err(|e| VerifyError::Output(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if rows.is_empty() {
                w.write_record(CSV_HEADER)
                    .map_err(|e| VerifyError::Output(e.to_string()))?;
            }
            for row in &rows {
                w.serialize(row)
                    .map_err(|e| VerifyError::Output(e.to_string()))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| VerifyError::Output(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| VerifyError::Output(e.to_string()))
        }
    }
}

const CSV_HEADER: [&str; 16] = [
    "name",
    "orientation",
    "crossings",
    "components",
    "determinant",
    "sigma",
    "jones",
    "log_derivative",
    "lambda",
    "tau",
    "spin_d",
    "sigma_certificate",
    "d_certificate",
    "certificate",
    "failed_checks",
    "resource_limited",
];
