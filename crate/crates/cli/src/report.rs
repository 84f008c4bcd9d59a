use std::fmt::{self, Display};
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub dataset: String,
    pub k: usize,
    pub algorithm: String,
    /// Ordering behind the DAG; `None` for engines that do not orient.
    pub ordering: Option<String>,
    pub strategy: String,
    pub workers: usize,
    pub precore: bool,
    pub prelist: bool,
    pub count: u64,
    pub saturated: bool,
    pub timed_out: bool,
    pub timings_ms: Timings,
    pub peak_scratch: Scratch,
    pub stats: Stats,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub load: f64,
    pub preprocess: f64,
    pub order: f64,
    pub list: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Scratch {
    pub ids: usize,
    pub words: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Stats {
    pub n: usize,
    pub m: usize,
    pub beta: usize,
    pub gamma: usize,
    /// Max out-degree of the oriented reduced graph.
    pub delta: Option<usize>,
}

pub fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let on = |b: bool| if b { "on" } else { "off" };
        let rows: [(&str, String); 16] = [
            ("dataset", self.dataset.clone()),
            ("k", self.k.to_string()),
            ("algorithm", self.algorithm.clone()),
            (
                "ordering",
                self.ordering.clone().unwrap_or_else(|| "-".into()),
            ),
            ("strategy", format!("{} x{}", self.strategy, self.workers)),
            ("pre-core", on(self.precore).into()),
            ("pre-list", on(self.prelist).into()),
            (
                "count",
                format!(
                    "{}{}{}",
                    self.count,
                    if self.saturated { " (saturated)" } else { "" },
                    if self.timed_out { " (timed out)" } else { "" }
                ),
            ),
            ("load ms", format!("{:.3}", self.timings_ms.load)),
            (
                "preprocess ms",
                format!("{:.3}", self.timings_ms.preprocess),
            ),
            ("order ms", format!("{:.3}", self.timings_ms.order)),
            ("list ms", format!("{:.3}", self.timings_ms.list)),
            (
                "peak scratch",
                format!(
                    "{} ids, {} words",
                    self.peak_scratch.ids, self.peak_scratch.words
                ),
            ),
            ("n / m", format!("{} / {}", self.stats.n, self.stats.m)),
            (
                "beta / gamma",
                format!("{} / {}", self.stats.beta, self.stats.gamma),
            ),
            (
                "delta",
                self.stats
                    .delta
                    .map_or_else(|| "-".into(), |d| d.to_string()),
            ),
        ];
        for (key, value) in rows {
            writeln!(f, "{key:<14} {value}")?;
        }
        Ok(())
    }
}
