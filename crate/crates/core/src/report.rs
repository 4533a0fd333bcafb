//! Report types shared by every check in the crate.
//!
//! A [`SuiteReport`] is the outcome of one battery of checks: one
//! [`ItemReport`] per identity or property, each carrying a verdict, the
//! number of tuples evaluated and up to [`MAX_WITNESSES`] failing tuples.
//! A [`Report`] is the flat `key = value` rendering used by the CLI.

use std::fmt;

/// Number of failing tuples retained per item.
pub const MAX_WITNESSES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The item's hypotheses did not hold, so its conclusion was not asserted.
    VacuousGate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::VacuousGate => "vacuous-gate",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sampled => "sampled",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ItemReport {
    pub name: String,
    pub status: Status,
    pub checked: u64,
    pub failures: u64,
    pub mode: Mode,
    /// Failing tuples, lowest tuple index first.
    pub witnesses: Vec<Vec<usize>>,
    pub note: Option<String>,
}

impl ItemReport {
    pub fn new(name: impl Into<String>, mode: Mode) -> Self {
        ItemReport {
            name: name.into(),
            status: Status::Pass,
            checked: 0,
            failures: 0,
            mode,
            witnesses: Vec::new(),
            note: None,
        }
    }

    /// Records one evaluation; failing tuples are kept up to the witness cap.
    pub fn record(&mut self, ok: bool, tuple: impl FnOnce() -> Vec<usize>) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            self.status = Status::Fail;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(tuple());
            }
        }
    }

    pub fn vacuous(name: impl Into<String>, note: impl Into<String>) -> Self {
        let mut item = ItemReport::new(name, Mode::Exhaustive);
        item.status = Status::VacuousGate;
        item.note = Some(note.into());
        item
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub items: Vec<ItemReport>,
    pub gate_trace: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            items: Vec::new(),
            gate_trace: Vec::new(),
        }
    }

    pub fn push(&mut self, item: ItemReport) {
        self.items.push(item);
    }

    pub fn gate(&mut self, line: impl Into<String>) {
        self.gate_trace.push(line.into());
    }

    /// True when no item failed. Vacuous items do not count as failures.
    pub fn passed(&self) -> bool {
        self.items.iter().all(ItemReport::passed)
    }

    pub fn item(&self, name: &str) -> Option<&ItemReport> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &ItemReport> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    pub fn total_checked(&self) -> u64 {
        self.items.iter().map(|i| i.checked).sum()
    }

    /// Appends this suite to a flat report under `prefix`.
    pub fn render_into(&self, prefix: &str, report: &mut Report) {
        report.push(
            format!("{prefix}.status"),
            if self.passed() { "pass" } else { "fail" },
        );
        for item in &self.items {
            let key = format!("{prefix}.{}", item.name);
            let mut value = format!(
                "{} checked={} mode={}",
                item.status, item.checked, item.mode
            );
            if item.failures > 0 {
                value.push_str(&format!(" failures={}", item.failures));
            }
            if let Some(w) = item.witnesses.first() {
                value.push_str(&format!(" witness={w:?}"));
            }
            if let Some(note) = &item.note {
                value.push_str(&format!(" note=\"{note}\""));
            }
            report.push(key, value);
        }
        for (i, line) in self.gate_trace.iter().enumerate() {
            report.push(format!("{prefix}.gate.{i}"), line.clone());
        }
    }
}

/// Ordered `key = value` records.
#[derive(Clone, Debug, Default)]
pub struct Report {
    records: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.records.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.records
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn records(&self) -> &[(String, String)] {
        &self.records
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.records {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    pub fn render_tsv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.records {
            out.push_str(k);
            out.push('\t');
            out.push_str(v);
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
