//! Computed spectra against the closed forms.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::closed_form::closed_form_spectrum;
use super::pipeline::SecularReport;
use super::SpectraError;
use crate::poly::{format_rational, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Match,
    Mismatch,
    NoClosedForm,
}

/// At q = 3: the middle-diagonal values found above one `t` root versus
/// the `N+3-4j` values paired with it by the index formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionCheck {
    pub root: i64,
    pub expected: Vec<i64>,
    pub found: Vec<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub q: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub variable: String,
    pub status: VerdictStatus,
    pub predicted: Vec<i64>,
    pub computed: Vec<String>,
    pub matches: Vec<String>,
    pub misses: Vec<String>,
    pub extras: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub companions: Vec<CompanionCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        self.status == VerdictStatus::Match
    }
}

fn certified_roots(report: &SecularReport) -> (Vec<Rational>, Vec<String>) {
    let rational = report.roots.rational_roots.iter().map(|(r, _)| r.clone()).collect();
    let mut irrational: Vec<String> = report
        .roots
        .quadratic_roots
        .iter()
        .map(|r| {
            let sign = if r.sign > 0 { '+' } else { '-' };
            format!("root({sign}) of {} ~ {:.6}", r.quadratic.poly(&report.secular_name), r.approx())
        })
        .collect();
    irrational.extend(
        report
            .roots
            .residual_intervals
            .iter()
            .map(|iv| format!("root in ({}, {}]", format_rational(&iv.lo), format_rational(&iv.hi))),
    );
    (rational, irrational)
}

pub fn verify_spectrum(q: usize, n: usize, report: &SecularReport) -> Verdict {
    let (rational, irrational) = certified_roots(report);
    let mut computed: Vec<String> = rational.iter().map(format_rational).collect();
    computed.extend(irrational.iter().cloned());
    let mut verdict = Verdict {
        q,
        n,
        variable: report.secular_name.clone(),
        status: VerdictStatus::NoClosedForm,
        predicted: Vec::new(),
        computed,
        matches: Vec::new(),
        misses: Vec::new(),
        extras: Vec::new(),
        companions: Vec::new(),
        notes: Vec::new(),
    };
    if report.q != q || report.n != n {
        verdict.status = VerdictStatus::Mismatch;
        verdict.notes.push(format!("report is for q={}, N={}", report.q, report.n));
        return verdict;
    }
    let table = match closed_form_spectrum(q, n) {
        Ok(t) => t,
        Err(SpectraError::NoClosedForm(_)) => {
            verdict.notes.push(format!("no closed form for q={q}; certified real roots: {}", verdict.computed.join(", ")));
            if q == 4 {
                verdict.notes.push(
                    "sign convention: in x = -s4 the surd roots are those of x^2 + x - 1; the quoted closed form (sqrt(5)-1)/2 is positive while \
                     its quoted approximation -0.618 is negative; the certified value is (1-sqrt(5))/2"
                        .into(),
                );
            }
            return verdict;
        }
        Err(e) => {
            verdict.notes.push(e.to_string());
            return verdict;
        }
    };
    let Some(predicted) = table.values_for(report.secular) else {
        verdict.notes.push(format!("the closed form says nothing about {}", report.secular_name));
        return verdict;
    };
    verdict.predicted = predicted.clone();
    let want: BTreeSet<Rational> = predicted.iter().map(|&v| Rational::from_integer(v.into())).collect();
    let got: BTreeSet<Rational> = rational.iter().cloned().collect();
    verdict.matches = want.intersection(&got).map(format_rational).collect();
    verdict.misses = want.difference(&got).map(format_rational).collect();
    verdict.extras = got.difference(&want).map(format_rational).collect();
    verdict.extras.extend(irrational);
    let mut ok = verdict.misses.is_empty() && verdict.extras.is_empty();
    if q == 3 && report.secular != 2 {
        for f in &report.fibers {
            let Ok(root) = parse_rational(&f.root) else { continue };
            if !root.is_integer() {
                continue;
            }
            let t = root.to_integer().try_into().unwrap_or(i64::MAX);
            let expected = table.companions_of(t);
            let found: BTreeSet<Rational> = f.points.iter().filter_map(|p| parse_rational(&p.s[1]).ok()).collect();
            let want: BTreeSet<Rational> = expected.iter().map(|&v| Rational::from_integer(v.into())).collect();
            let check = CompanionCheck {
                root: t,
                expected,
                found: found.iter().map(format_rational).collect(),
                ok: found == want && !f.unresolved,
            };
            ok &= check.ok;
            verdict.companions.push(check);
        }
    }
    for s in &report.symmetry {
        verdict.notes.push(format!(
            "{} = {} {} at all {} reconstructed points",
            s.pair[0],
            s.pair[1],
            if s.holds { "holds" } else { "FAILS" },
            s.points
        ));
    }
    verdict.status = if ok { VerdictStatus::Match } else { VerdictStatus::Mismatch };
    verdict
}
