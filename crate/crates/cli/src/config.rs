//! Run configuration: command-line flags over an optional TOML file over
//! the `BSFORGE_SEED` environment default.

use std::path::Path;

use bsforge_core::descent::Solver;
use bsforge_core::models::ExponentMode;
use bsforge_core::numfield::Generator;
use bsforge_core::{Error, Result};
use serde::Deserialize;

/// Environment variable supplying the default seed.
pub const SEED_ENV: &str = "BSFORGE_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Keys accepted in a `--config` file; names match the long flags.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub n: Option<usize>,
    pub poly: Option<String>,
    pub alpha: Option<String>,
    pub solver: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub exponent_mode: Option<String>,
    pub format: Option<String>,
    pub prime_bound: Option<u64>,
    pub height_bound: Option<u64>,
    pub reduce: Option<bool>,
    pub generator: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Invalid(format!("config {}: {e}", path.display())))
    }
}

/// Flag values as parsed; `None` when the flag was not given.
#[derive(Clone, Debug, Default)]
pub struct FlagConfig {
    pub n: Option<usize>,
    pub poly: Option<String>,
    pub alpha: Option<String>,
    pub solver: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub exponent_mode: Option<String>,
    pub format: Option<String>,
    pub prime_bound: Option<u64>,
    pub height_bound: Option<u64>,
    pub reduce: bool,
    pub generator: Option<String>,
}

/// The fully resolved configuration of one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub field_poly: Option<String>,
    pub alpha: Option<String>,
    pub solver: Solver,
    pub seed: u64,
    pub sample_count: usize,
    pub exponent_mode: ExponentMode,
    pub format: Format,
    pub prime_bound: u64,
    pub height_bound: u64,
    pub reduce: bool,
    pub generator: Generator,
}

impl RunConfig {
    pub fn resolve(flags: FlagConfig, file: FileConfig, env_seed: Option<&str>) -> Result<Self> {
        let env_seed = match env_seed {
            Some(s) => Some(
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Invalid(format!("{SEED_ENV}={s:?} is not a nonnegative integer")))?,
            ),
            None => None,
        };
        let solver = match flags.solver.or(file.solver).as_deref() {
            None | Some("closed") => Solver::Closed,
            Some("average") => Solver::Average,
            Some(other) => return Err(Error::Invalid(format!("unknown solver {other:?}"))),
        };
        let format = match flags.format.or(file.format).as_deref() {
            None | Some("json") => Format::Json,
            Some("text") => Format::Text,
            Some(other) => return Err(Error::Invalid(format!("unknown format {other:?}"))),
        };
        let generator = match flags.generator.or(file.generator).as_deref() {
            None | Some("default") => Generator::Default,
            Some("other") => Generator::Other,
            Some(other) => return Err(Error::Invalid(format!("unknown generator {other:?}"))),
        };
        let exponent_mode = match flags.exponent_mode.or(file.exponent_mode) {
            None => ExponentMode::Reduced,
            Some(s) => s.parse()?,
        };
        let cfg = RunConfig {
            n: flags.n.or(file.n),
            field_poly: flags.poly.or(file.poly),
            alpha: flags.alpha.or(file.alpha),
            solver,
            seed: flags.seed.or(file.seed).or(env_seed).unwrap_or(0),
            sample_count: flags.samples.or(file.samples).unwrap_or(100),
            exponent_mode,
            format,
            prime_bound: flags.prime_bound.or(file.prime_bound).unwrap_or(1000),
            height_bound: flags.height_bound.or(file.height_bound).unwrap_or(20),
            reduce: flags.reduce || file.reduce.unwrap_or(false),
            generator,
        };
        for (name, v) in
            [("samples", cfg.sample_count as u64), ("prime-bound", cfg.prime_bound), ("height-bound", cfg.height_bound)]
        {
            if v == 0 {
                return Err(Error::Invalid(format!("--{name} must be at least 1")));
            }
        }
        if cfg.n == Some(0) {
            return Err(Error::Invalid("--n must be at least 1".into()));
        }
        Ok(cfg)
    }

    pub fn poly(&self) -> Result<&str> {
        self.field_poly.as_deref().ok_or_else(|| Error::Invalid("missing --poly".into()))
    }

    pub fn alpha_text(&self) -> Result<&str> {
        self.alpha.as_deref().ok_or_else(|| Error::Invalid("missing --alpha".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file_and_env() {
        let file: FileConfig = toml::from_str("seed = 5\nsamples = 7\nsolver = \"average\"").unwrap();
        let flags = FlagConfig { seed: Some(9), ..Default::default() };
        let cfg = RunConfig::resolve(flags, file.clone(), Some("3")).unwrap();
        assert_eq!((cfg.seed, cfg.sample_count, cfg.solver), (9, 7, Solver::Average));
        let cfg = RunConfig::resolve(FlagConfig::default(), file, Some("3")).unwrap();
        assert_eq!(cfg.seed, 5);
        let cfg = RunConfig::resolve(FlagConfig::default(), FileConfig::default(), Some("3")).unwrap();
        assert_eq!(cfg.seed, 3);
        let cfg = RunConfig::resolve(FlagConfig::default(), FileConfig::default(), None).unwrap();
        assert_eq!((cfg.seed, cfg.exponent_mode), (0, ExponentMode::Reduced));
    }

    #[test]
    fn rejects_bad_values() {
        let bad = |flags: FlagConfig| RunConfig::resolve(flags, FileConfig::default(), None).is_err();
        assert!(bad(FlagConfig { samples: Some(0), ..Default::default() }));
        assert!(bad(FlagConfig { solver: Some("magic".into()), ..Default::default() }));
        assert!(bad(FlagConfig { n: Some(0), ..Default::default() }));
        assert!(RunConfig::resolve(FlagConfig::default(), FileConfig::default(), Some("x")).is_err());
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
    }
}
