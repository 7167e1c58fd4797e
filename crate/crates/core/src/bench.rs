//! Manifest-driven benchmark harness.
//!
//! Each manifest line names an instance file, a comma-separated algorithm
//! list, and a per-run timeout in milliseconds. Solver runs are isolated
//! in child `bhc solve` processes so timeouts can kill them; rows come
//! back in manifest order regardless of completion order, and yes/no
//! answers for one instance are cross-checked across algorithms.

use crate::error::{ParseError, ParseErrorKind};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub path: PathBuf,
    /// Algorithm tokens; conciseness-bounded solvers carry their budget as
    /// `name:budget`.
    pub algos: Vec<String>,
    pub timeout_ms: u64,
}

/// `<instance-file> <algo,algo,...> <timeout_ms>` per line.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>, ParseError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(ParseError::new(
                lineno,
                ParseErrorKind::MalformedLine(
                    "expected `<file> <algo,algo,...> <timeout_ms>`".into(),
                ),
            ));
        }
        let algos: Vec<String> = tokens[1].split(',').map(str::to_owned).collect();
        if algos.iter().any(String::is_empty) {
            return Err(ParseError::new(
                lineno,
                ParseErrorKind::MalformedLine("empty algorithm name".into()),
            ));
        }
        let timeout_ms: u64 = tokens[2].parse().map_err(|_| {
            ParseError::new(lineno, ParseErrorKind::MalformedLine("bad timeout".into()))
        })?;
        entries.push(ManifestEntry { path: PathBuf::from(tokens[0]), algos, timeout_ms });
    }
    Ok(entries)
}

#[derive(Debug, Clone, Default)]
pub struct BenchRow {
    pub instance: String,
    pub dim: u32,
    pub num_reds: usize,
    pub num_blues: usize,
    pub icon: u32,
    pub algo: String,
    /// `yes`, `no`, `timeout`, `refused`, or `error`.
    pub status: String,
    pub conciseness: Option<u32>,
    pub radius: Option<u32>,
    pub time_ms: Option<u64>,
    pub td_width: Option<u32>,
    pub nodes_expanded: Option<u64>,
}

/// All definite answers (`yes`/`no`) for one instance must agree.
pub fn cross_check(rows: &[BenchRow]) -> Result<(), String> {
    use std::collections::HashMap;
    let mut by_instance: HashMap<&str, (&str, &str)> = HashMap::new();
    for row in rows {
        if row.status != "yes" && row.status != "no" {
            continue;
        }
        match by_instance.get(row.instance.as_str()) {
            None => {
                by_instance.insert(&row.instance, (&row.status, &row.algo));
            }
            Some(&(status, algo)) => {
                if status != row.status {
                    return Err(format!(
                        "answer mismatch on {}: {} says {}, {} says {}",
                        row.instance, algo, status, row.algo, row.status
                    ));
                }
            }
        }
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(
        "instance,d,nR,nB,icon,algo,status,conciseness,radius,time_ms,td_width,nodes_expanded\n",
    );
    let opt = |o: Option<u64>| o.map(|v| v.to_string()).unwrap_or_default();
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            csv_field(&r.instance),
            r.dim,
            r.num_reds,
            r.num_blues,
            r.icon,
            csv_field(&r.algo),
            r.status,
            opt(r.conciseness.map(u64::from)),
            opt(r.radius.map(u64::from)),
            opt(r.time_ms),
            opt(r.td_width.map(u64::from)),
            opt(r.nodes_expanded),
        );
    }
    out
}

/// Outcome of one isolated child run.
enum ChildOutcome {
    Finished { exit_code: i32, stdout: String },
    TimedOut,
}

fn run_child(bin: &Path, args: &[String], timeout: Duration) -> std::io::Result<ChildOutcome> {
    let mut child = Command::new(bin)
        .args(args)
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .stdin(Stdio::null())
        .spawn()?;
    let start = Instant::now();
    loop {
        if let Some(status) = child.try_wait()? {
            let mut stdout = String::new();
            if let Some(mut pipe) = child.stdout.take() {
                use std::io::Read;
                let _ = pipe.read_to_string(&mut stdout);
            }
            return Ok(ChildOutcome::Finished { exit_code: status.code().unwrap_or(-1), stdout });
        }
        if start.elapsed() >= timeout {
            let _ = child.kill();
            let _ = child.wait();
            return Ok(ChildOutcome::TimedOut);
        }
        std::thread::sleep(Duration::from_millis(2));
    }
}

fn row_from_json(row: &mut BenchRow, stdout: &str) {
    let Ok(value) = serde_json::from_str::<serde_json::Value>(stdout) else {
        row.status = "error".into();
        return;
    };
    row.status = value["status"].as_str().unwrap_or("error").to_owned();
    row.conciseness = value["conciseness"].as_u64().map(|v| v as u32);
    row.radius = value["radius"].as_u64().map(|v| v as u32);
    row.time_ms = value["time_ms"].as_u64();
    row.td_width = value["width"].as_u64().map(|v| v as u32);
    row.nodes_expanded = value["nodes_expanded"].as_u64();
}

/// Run the whole manifest against the `bhc` binary at `bin`, with
/// `jobs` instances in flight at once.
pub fn run_bench(bin: &Path, entries: &[ManifestEntry], jobs: usize) -> Result<Vec<BenchRow>, String> {
    // Slot layout fixed up front so output order equals manifest order.
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for (ei, e) in entries.iter().enumerate() {
        for ai in 0..e.algos.len() {
            slots.push((ei, ai));
        }
    }
    let results: Vec<std::sync::Mutex<Option<BenchRow>>> =
        slots.iter().map(|_| std::sync::Mutex::new(None)).collect();
    let next_entry = AtomicUsize::new(0);
    let jobs = jobs.max(1);

    std::thread::scope(|scope| {
        for _ in 0..jobs.min(entries.len().max(1)) {
            scope.spawn(|| loop {
                let ei = next_entry.fetch_add(1, Ordering::SeqCst);
                if ei >= entries.len() {
                    break;
                }
                let entry = &entries[ei];
                let meta = std::fs::read_to_string(&entry.path)
                    .ok()
                    .and_then(|text| crate::format::parse_instance(&text).ok());
                for (ai, algo) in entry.algos.iter().enumerate() {
                    let mut row = BenchRow {
                        instance: entry.path.display().to_string(),
                        algo: algo.clone(),
                        status: "error".into(),
                        ..BenchRow::default()
                    };
                    if let Some(parsed) = &meta {
                        row.dim = parsed.instance.dim();
                        row.num_reds = parsed.instance.reds().len();
                        row.num_blues = parsed.instance.blues().len();
                        row.icon = parsed.instance.data_conciseness();
                    }
                    let (name, budget) = match algo.split_once(':') {
                        Some((n, b)) => (n.to_owned(), Some(b.to_owned())),
                        None => (algo.clone(), None),
                    };
                    let mut args = vec![
                        "solve".to_owned(),
                        entry.path.display().to_string(),
                        "--algo".to_owned(),
                        name,
                    ];
                    if let Some(b) = budget {
                        args.push("--scp".to_owned());
                        args.push(b);
                    }
                    match run_child(bin, &args, Duration::from_millis(entry.timeout_ms)) {
                        Ok(ChildOutcome::TimedOut) => {
                            row.status = "timeout".into();
                            row.time_ms = Some(entry.timeout_ms);
                        }
                        Ok(ChildOutcome::Finished { exit_code: 0, stdout }) => {
                            row_from_json(&mut row, &stdout);
                        }
                        Ok(ChildOutcome::Finished { exit_code: 4, .. }) => {
                            row.status = "refused".into();
                        }
                        Ok(ChildOutcome::Finished { .. }) | Err(_) => {
                            row.status = "error".into();
                        }
                    }
                    let slot = slots.iter().position(|&s| s == (ei, ai)).expect("slot");
                    *results[slot].lock().expect("slot lock") = Some(row);
                }
            });
        }
    });

    let rows: Vec<BenchRow> = results
        .into_iter()
        .map(|m| m.into_inner().expect("lock").expect("row filled"))
        .collect();
    cross_check(&rows).map_err(|e| format!("cross-check failed: {e}"))?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parsing() {
        let text = "# corpus\ninst1.bhc brute,treewidth 5000\ninst2.bhc branch-scp:2 100\n";
        let entries = parse_manifest(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].algos, vec!["brute", "treewidth"]);
        assert_eq!(entries[1].algos, vec!["branch-scp:2"]);
        assert_eq!(entries[1].timeout_ms, 100);
        assert!(parse_manifest("only two fields").is_err());
    }

    #[test]
    fn cross_check_flags_mismatch() {
        let row = |instance: &str, algo: &str, status: &str| BenchRow {
            instance: instance.into(),
            algo: algo.into(),
            status: status.into(),
            ..BenchRow::default()
        };
        let ok = vec![
            row("a", "brute", "yes"),
            row("a", "ilp", "yes"),
            row("a", "slow", "timeout"),
            row("b", "brute", "no"),
        ];
        assert!(cross_check(&ok).is_ok());
        let bad = vec![row("a", "brute", "yes"), row("a", "ilp", "no")];
        assert!(cross_check(&bad).is_err());
    }

    #[test]
    fn csv_shape() {
        let rows: Vec<BenchRow> = (0..30)
            .map(|i| BenchRow {
                instance: format!("inst{}", i / 3),
                algo: format!("algo{}", i % 3),
                status: "yes".into(),
                ..BenchRow::default()
            })
            .collect();
        let csv = to_csv(&rows);
        assert_eq!(csv.lines().count(), 31);
        assert!(csv.starts_with("instance,d,nR,nB,icon,algo,status"));
    }

    #[test]
    fn csv_quotes_awkward_fields() {
        let rows = vec![BenchRow {
            instance: "a,b.bhc".into(),
            algo: "brute".into(),
            status: "no".into(),
            ..BenchRow::default()
        }];
        assert!(to_csv(&rows).contains("\"a,b.bhc\""));
    }
}
