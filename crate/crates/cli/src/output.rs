use qent_core::entropy::{CurveReport, DualityRow, GrowthSeries};
use serde::Serialize;

#[derive(Serialize)]
struct CurveRecord<'a> {
    t: f64,
    channel: &'a str,
    #[serde(rename = "N_max")]
    n_max: usize,
    regression_slope: f64,
    last_ratio: f64,
    fekete_upper: Option<f64>,
    truncated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<&'a [f64]>,
}

impl<'a> CurveRecord<'a> {
    fn new(s: &'a GrowthSeries, with_series: bool) -> Self {
        CurveRecord {
            t: s.t,
            channel: s.channel.name(),
            n_max: s.len(),
            regression_slope: s.regression_slope,
            last_ratio: s.last_ratio,
            fekete_upper: s.fekete_upper,
            truncated: s.truncated,
            a: with_series.then_some(&s.a[..]),
        }
    }
}

fn to_csv<T: Serialize>(records: impl IntoIterator<Item = T>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Header `t,channel,N_max,regression_slope,last_ratio,fekete_upper,truncated`.
pub fn curve_csv(rows: &[GrowthSeries]) -> anyhow::Result<String> {
    to_csv(rows.iter().map(|s| CurveRecord::new(s, false)))
}

pub fn curve_json(report: &CurveReport) -> anyhow::Result<String> {
    let rows: Vec<CurveRecord> = report.rows.iter().map(|s| CurveRecord::new(s, true)).collect();
    Ok(serde_json::to_string_pretty(&rows)? + "\n")
}

pub fn duality_csv(rows: &[DualityRow]) -> anyhow::Result<String> {
    to_csv(rows)
}
