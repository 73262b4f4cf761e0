use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::GlobalOpts;

/// Output directory plus the bookkeeping that ends up in `manifest.json`.
pub struct Run {
    dir: PathBuf,
    subcommand: &'static str,
    invocation: serde_json::Value,
    global: serde_json::Value,
    seed: Option<u64>,
    started: Instant,
    files: Vec<String>,
    checks: Vec<(String, bool)>,
    quiet: bool,
}

#[derive(Serialize)]
struct Manifest<'a> {
    subcommand: &'a str,
    invocation: &'a serde_json::Value,
    global: &'a serde_json::Value,
    seed: Option<u64>,
    versions: Versions,
    wall_time_secs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    outputs: &'a [String],
    checks: Vec<CheckLine<'a>>,
    passed: bool,
}

#[derive(Serialize)]
struct Versions {
    genericity: &'static str,
    genericity_cli: &'static str,
}

#[derive(Serialize)]
struct CheckLine<'a> {
    name: &'a str,
    passed: bool,
}

impl Run {
    pub fn start<T: Serialize>(global: &GlobalOpts, subcommand: &'static str, invocation: &T) -> Result<Self> {
        fs::create_dir_all(&global.out).with_context(|| format!("creating {}", global.out.display()))?;
        Ok(Run {
            dir: global.out.clone(),
            subcommand,
            invocation: serde_json::to_value(invocation)?,
            global: serde_json::to_value(global)?,
            seed: None,
            started: Instant::now(),
            files: Vec::new(),
            checks: Vec::new(),
            quiet: global.quiet,
        })
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    /// Replaces the recorded invocation with a fully resolved one.
    pub fn set_invocation<T: Serialize>(&mut self, v: &T) -> Result<()> {
        self.invocation = serde_json::to_value(v)?;
        Ok(())
    }

    pub fn write_text(&mut self, name: &str, text: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, v: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(v)?;
        text.push('\n');
        self.write_text(name, &text)
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        let name = name.into();
        if !self.quiet {
            println!("{} {name}", if passed { "PASS" } else { "FAIL" });
        }
        self.checks.push((name, passed));
    }

    pub fn info(&self, line: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", line.as_ref());
        }
    }

    /// Writes the manifest; `Ok(false)` if any check failed.
    pub fn finish(self) -> Result<bool> {
        self.write_manifest(None)
    }

    /// Writes the manifest for a run that stopped with an error.
    pub fn abort(self, error: &anyhow::Error) -> Result<()> {
        self.write_manifest(Some(format!("{error:#}"))).map(|_| ())
    }

    fn write_manifest(self, error: Option<String>) -> Result<bool> {
        let passed = error.is_none() && self.checks.iter().all(|c| c.1);
        let manifest = Manifest {
            subcommand: self.subcommand,
            invocation: &self.invocation,
            global: &self.global,
            seed: self.seed,
            versions: Versions {
                genericity: genericity::VERSION,
                genericity_cli: env!("CARGO_PKG_VERSION"),
            },
            wall_time_secs: self.started.elapsed().as_secs_f64(),
            error,
            outputs: &self.files,
            checks: self.checks.iter().map(|(n, p)| CheckLine { name: n, passed: *p }).collect(),
            passed,
        };
        let path = self.dir.join("manifest.json");
        fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        for (name, ok) in &self.checks {
            if !ok {
                eprintln!("check failed: {name}");
            }
        }
        Ok(passed)
    }
}
