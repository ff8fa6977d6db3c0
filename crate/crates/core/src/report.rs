//! Report structures and deterministic CSV/JSON emission.
//!
//! Everything written here is byte-reproducible for fixed inputs: floats in
//! CSV carry 17 significant digits, JSON keys follow struct declaration
//! order, and line endings are LF. Wall-clock timings are deliberately kept
//! out of the serialized forms.

use crate::ball::CurveRow;
use crate::rod::BranchRow;

/// Outcome of one verification check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

/// One verification entry. `lemma` names the underlying statement being
/// checked; the manifest test pins the full set of valid names.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckEntry {
    pub check_id: String,
    pub lemma: String,
    pub status: CheckStatus,
    /// Decisive scalar of the check (margin, worst error, or spot value).
    pub value: f64,
    /// Threshold the value was held against; 0 for sign/exactness checks.
    pub tolerance: f64,
    pub detail: String,
    /// Runtime in milliseconds; reported on the console only, never
    /// serialized, so repeated runs stay byte-identical.
    #[serde(skip)]
    pub runtime_ms: u128,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct VerificationReport {
    pub overall_pass: bool,
    pub seed: u64,
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new(seed: u64, entries: Vec<CheckEntry>) -> Self {
        Self {
            overall_pass: entries.iter().all(|e| e.status != CheckStatus::Fail),
            seed,
            entries,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,lemma,status,value,tolerance,detail\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                e.check_id,
                e.lemma,
                match e.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Inconclusive => "inconclusive",
                },
                fmt_f64(e.value),
                fmt_f64(e.tolerance),
                e.detail.replace(',', ";"),
            ));
        }
        out
    }
}

/// Full-precision decimal rendering (17 significant digits).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV table for the ball tone curve: `tau,a,b,omega,gamma`.
pub fn curve_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from("tau,a,b,omega,gamma\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_f64(r.tau),
            fmt_f64(r.a),
            fmt_f64(r.b),
            fmt_f64(r.omega),
            fmt_f64(r.gamma)
        ));
    }
    out
}

/// CSV table for rod modes and branch sweeps:
/// `tau,omega,parity,regime,a,b,coeff_ratio,residual`.
pub fn branch_csv(rows: &[BranchRow]) -> String {
    let mut out = String::from("tau,omega,parity,regime,a,b,coeff_ratio,residual\n");
    for r in rows {
        let ratio = match r.coeff_ratio.value() {
            Some(v) => fmt_f64(v),
            None => "free".to_string(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt_f64(r.tau),
            fmt_f64(r.omega),
            r.parity,
            r.regime.tag(),
            fmt_f64(r.a),
            fmt_f64(r.b),
            ratio,
            fmt_f64(r.residual)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_tables_are_header_only() {
        assert_eq!(curve_csv(&[]), "tau,a,b,omega,gamma\n");
        assert_eq!(
            branch_csv(&[]),
            "tau,omega,parity,regime,a,b,coeff_ratio,residual\n"
        );
    }

    #[test]
    fn one_row_has_full_precision() {
        let rows = vec![CurveRow {
            tau: 1.0,
            a: std::f64::consts::PI,
            b: 2.0,
            omega: 3.0,
            gamma: 0.5,
        }];
        let csv = curve_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "tau,a,b,omega,gamma");
        let data = lines.next().unwrap();
        assert!(data.contains("3.1415926535897931e0"), "{data}");
        // Round trip is lossless at 17 significant digits.
        let a: f64 = data.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(a, std::f64::consts::PI);
    }

    #[test]
    fn report_pass_flag_follows_entries() {
        let mk = |status| CheckEntry {
            check_id: "x".into(),
            lemma: "fact1".into(),
            status,
            value: 0.0,
            tolerance: 0.0,
            detail: String::new(),
            runtime_ms: 0,
        };
        assert!(VerificationReport::new(0, vec![mk(CheckStatus::Pass)]).overall_pass);
        assert!(
            VerificationReport::new(0, vec![mk(CheckStatus::Pass), mk(CheckStatus::Inconclusive)])
                .overall_pass
        );
        assert!(!VerificationReport::new(0, vec![mk(CheckStatus::Fail)]).overall_pass);
    }

    #[test]
    fn json_is_stable_across_serializations() {
        let rep = VerificationReport::new(
            7,
            vec![CheckEntry {
                check_id: "demo".into(),
                lemma: "wbounds".into(),
                status: CheckStatus::Pass,
                value: 1.5,
                tolerance: 0.0,
                detail: "margin".into(),
                runtime_ms: 123,
            }],
        );
        let a = rep.to_json();
        let b = rep.to_json();
        assert_eq!(a, b);
        assert!(!a.contains("runtime"), "timings must not be serialized");
        let keys: Vec<usize> = ["overall_pass", "seed", "entries"]
            .iter()
            .map(|k| a.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "stable key order");
    }
}
