//! Werner-family sweep.

use rayon::prelude::*;
use serde::Serialize;

use qcorr::entanglement::entanglement_report;
use qcorr::measures::{discord, mutual_information};
use qcorr::states::make_werner;
use qcorr::witness::witness_value;
use qcorr::WitnessMode;

use crate::output::{number, round12, SCHEMA_VERSION};

pub const CSV_HEADER: [&str; 6] = [
    "alpha",
    "W",
    "discord",
    "mutual_info",
    "negativity",
    "chsh_max",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaRange {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl AlphaRange {
    /// Parses `a:b:n`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(format!("expected a:b:n, got {text:?}"));
        };
        let start: f64 = a.trim().parse().map_err(|_| format!("bad start {a:?}"))?;
        let end: f64 = b.trim().parse().map_err(|_| format!("bad end {b:?}"))?;
        let count: usize = n.trim().parse().map_err(|_| format!("bad count {n:?}"))?;
        if !(0.0 <= start && start <= end && end <= 1.0) {
            return Err(format!("need 0 <= a <= b <= 1, got {start}:{end}"));
        }
        if count < 2 {
            return Err(format!("need at least 2 points, got {count}"));
        }
        Ok(Self { start, end, count })
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                let t = k as f64 / last;
                // exact endpoints
                if k + 1 == self.count {
                    self.end
                } else {
                    self.start + (self.end - self.start) * t
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    #[serde(rename = "W")]
    pub w: f64,
    pub discord: Option<f64>,
    pub mutual_info: f64,
    pub negativity: f64,
    pub chsh_max: f64,
    #[serde(skip)]
    pub chsh_violated: bool,
}

pub fn sweep(range: &AlphaRange, with_discord: bool) -> qcorr::Result<Vec<SweepRow>> {
    range
        .values()
        .into_par_iter()
        .map(|alpha| {
            let rho = make_werner(alpha)?;
            let w = witness_value(&rho, WitnessMode::Deterministic)?.value;
            let discord = if with_discord {
                Some(discord(&rho)?.discord)
            } else {
                None
            };
            let ent = entanglement_report(&rho);
            Ok(SweepRow {
                alpha,
                w,
                discord,
                mutual_info: mutual_information(&rho),
                negativity: ent.negativity,
                chsh_max: ent.chsh_max,
                chsh_violated: ent.chsh_violated,
            })
        })
        .collect()
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        let discord = r.discord.map(number).unwrap_or_default();
        w.write_record([
            number(r.alpha),
            number(r.w),
            discord,
            number(r.mutual_info),
            number(r.negativity),
            number(r.chsh_max),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("ascii output")
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    schema_version: &'static str,
    rows: &'a [SweepRow],
}

pub fn to_json(rows: &[SweepRow]) -> String {
    let rounded: Vec<SweepRow> = rows
        .iter()
        .map(|r| SweepRow {
            alpha: round12(r.alpha),
            w: round12(r.w),
            discord: r.discord.map(round12),
            mutual_info: round12(r.mutual_info),
            negativity: round12(r.negativity),
            chsh_max: round12(r.chsh_max),
            chsh_violated: r.chsh_violated,
        })
        .collect();
    let doc = SweepDocument {
        schema_version: SCHEMA_VERSION,
        rows: &rounded,
    };
    serde_json::to_string_pretty(&doc).expect("rows serialise") + "\n"
}

/// Describes where the CHSH violation starts within the swept rows.
pub fn chsh_note(rows: &[SweepRow]) -> Option<String> {
    let k = rows.iter().position(|r| r.chsh_violated)?;
    let after = rows[k].alpha;
    let before = if k > 0 {
        format!("{}", rows[k - 1].alpha)
    } else {
        "below the range".into()
    };
    Some(format!(
        "CHSH violation starts between alpha = {before} and {after}; the exact crossing is 1/sqrt(2) = {:.6}",
        std::f64::consts::FRAC_1_SQRT_2
    ))
}
