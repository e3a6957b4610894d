//! Flat configuration: defaults, optional `key=value` file, command-line
//! flags, then the `SLELAB_SEED` environment override.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
    Construction(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
            CliError::Construction(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Runtime(m) => write!(f, "{m}"),
            CliError::Construction(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

pub fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// Every tunable of every command, with its default. The effective set is
/// echoed in each report header.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub kappa: f64,
    pub p: f64,
    pub q: f64,
    pub m: Option<i32>,
    pub gamma: Option<f64>,
    pub z_re: f64,
    pub z_im: f64,
    pub seed: u64,
    pub dt: f64,
    pub t_cap: f64,
    pub samples: usize,
    pub angles: usize,
    pub radii: Vec<f64>,
    pub grid: usize,
    pub r0: f64,
    pub eta: f64,
    pub delta: f64,
    pub window: Option<(f64, f64, f64, f64)>,
    pub resolution: usize,
    pub mode: String,
    pub curves: Vec<String>,
    pub supersolution: bool,
    pub allow_fail: usize,
    pub threads: Option<usize>,
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            kappa: 2.0,
            p: 1.0,
            q: 0.0,
            m: None,
            gamma: None,
            z_re: 0.5,
            z_im: 0.0,
            seed: 42,
            dt: 1e-3,
            t_cap: 30.0,
            samples: 2000,
            angles: 64,
            radii: (2..=7).map(|e| 1.0 - 0.5f64.powi(e)).collect(),
            grid: 512,
            r0: 0.9,
            eta: 1e-5,
            delta: 1.0,
            window: None,
            resolution: 200,
            mode: "phase".into(),
            curves: vec!["red".into(), "green".into(), "blue_quartic".into()],
            supersolution: false,
            allow_fail: 0,
            threads: None,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn from_args(args: &[String]) -> Result<Self, CliError> {
        let mut pairs: BTreeMap<String, String> = BTreeMap::new();
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            let Some(key) = arg.strip_prefix("--") else {
                return usage(format!("unexpected argument `{arg}`"));
            };
            if key == "super" {
                pairs.insert("super".into(), "1".into());
                i += 1;
                continue;
            }
            let Some(value) = args.get(i + 1) else {
                return usage(format!("flag --{key} needs a value"));
            };
            pairs.insert(key.to_string(), value.clone());
            i += 2;
        }
        // config file first so flags override it
        let mut merged: BTreeMap<String, String> = BTreeMap::new();
        if let Some(path) = pairs.get("config") {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            for line in text.lines() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let Some((k, v)) = line.split_once('=') else {
                    return usage(format!("config line `{line}` is not key=value"));
                };
                merged.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        merged.extend(pairs);
        if let Ok(seed) = std::env::var("SLELAB_SEED") {
            merged.insert("seed".into(), seed);
        }
        let mut cfg = RunConfig::default();
        for (key, value) in &merged {
            cfg.apply(key, value)?;
        }
        Ok(cfg)
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad = |what: &str| CliError::Usage(format!("invalid --{what} value"));
        match key {
            "kappa" => self.kappa = value.parse().map_err(|_| bad("kappa"))?,
            "p" => self.p = value.parse().map_err(|_| bad("p"))?,
            "q" => self.q = value.parse().map_err(|_| bad("q"))?,
            "m" => self.m = Some(value.parse().map_err(|_| bad("m"))?),
            "gamma" => self.gamma = Some(value.parse().map_err(|_| bad("gamma"))?),
            "z-re" | "z_re" => self.z_re = value.parse().map_err(|_| bad("z-re"))?,
            "z-im" | "z_im" => self.z_im = value.parse().map_err(|_| bad("z-im"))?,
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "dt" => self.dt = value.parse().map_err(|_| bad("dt"))?,
            "t-cap" | "t_cap" => self.t_cap = value.parse().map_err(|_| bad("t-cap"))?,
            "samples" => self.samples = value.parse().map_err(|_| bad("samples"))?,
            "angles" => self.angles = value.parse().map_err(|_| bad("angles"))?,
            "radii" => {
                let parsed: Result<Vec<f64>, _> =
                    value.split(',').map(|t| t.trim().parse()).collect();
                self.radii = parsed.map_err(|_| bad("radii"))?;
            }
            "grid" => self.grid = value.parse().map_err(|_| bad("grid"))?,
            "r0" => self.r0 = value.parse().map_err(|_| bad("r0"))?,
            "eta" => self.eta = value.parse().map_err(|_| bad("eta"))?,
            "delta" => self.delta = value.parse().map_err(|_| bad("delta"))?,
            "window" => {
                let parts: Result<Vec<f64>, _> =
                    value.split(',').map(|t| t.trim().parse()).collect();
                let parts = parts.map_err(|_| bad("window"))?;
                if parts.len() != 4 {
                    return usage("--window needs pmin,pmax,qmin,qmax");
                }
                self.window = Some((parts[0], parts[1], parts[2], parts[3]));
            }
            "resolution" => self.resolution = value.parse().map_err(|_| bad("resolution"))?,
            "mode" => self.mode = value.to_string(),
            "curves" => self.curves = value.split(',').map(|t| t.trim().to_string()).collect(),
            "super" => self.supersolution = true,
            "allow-fail" | "allow_fail" => {
                self.allow_fail = value.parse().map_err(|_| bad("allow-fail"))?
            }
            "threads" => self.threads = Some(value.parse().map_err(|_| bad("threads"))?),
            "out" => self.out = Some(value.to_string()),
            "config" => {}
            other => return usage(format!("unknown flag --{other}")),
        }
        Ok(())
    }

    /// The effective configuration as `key=value` lines for report
    /// headers.
    pub fn header_lines(&self) -> Vec<String> {
        use slelab_core::csvfmt::fmt_f64;
        let mut lines = vec![
            format!("kappa={}", fmt_f64(self.kappa)),
            format!("p={}", fmt_f64(self.p)),
            format!("q={}", fmt_f64(self.q)),
            format!("z_re={}", fmt_f64(self.z_re)),
            format!("z_im={}", fmt_f64(self.z_im)),
            format!("seed={}", self.seed),
            format!("dt={}", fmt_f64(self.dt)),
            format!("t_cap={}", fmt_f64(self.t_cap)),
            format!("samples={}", self.samples),
            format!("angles={}", self.angles),
            format!(
                "radii={}",
                self.radii
                    .iter()
                    .map(|r| fmt_f64(*r))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            format!("grid={}", self.grid),
            format!("r0={}", fmt_f64(self.r0)),
            format!("eta={}", fmt_f64(self.eta)),
            format!("delta={}", fmt_f64(self.delta)),
            format!("resolution={}", self.resolution),
            format!("mode={}", self.mode),
            format!("curves={}", self.curves.join(",")),
            format!("allow_fail={}", self.allow_fail),
        ];
        if let Some(m) = self.m {
            lines.push(format!("m={m}"));
        }
        if let Some(g) = self.gamma {
            lines.push(format!("gamma={}", fmt_f64(g)));
        }
        if let Some((a, b, c, d)) = self.window {
            lines.push(format!(
                "window={},{},{},{}",
                fmt_f64(a),
                fmt_f64(b),
                fmt_f64(c),
                fmt_f64(d)
            ));
        }
        lines
    }
}
