//! Run configuration: defaults, overridden by a key=value config file,
//! overridden by command-line flags.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;

use mobius_cs::geometry::{RadialProfile, StripConfig};
use mobius_cs::states::{ChiRule, ScsKind, StateKind};
use mobius_cs::uncertainty::Convention;

#[derive(Parser, Debug, Default)]
#[command(
    name = "mobius-cs",
    version,
    about = "Coherent states, cat states, and uncertainty sweeps on a Möbius strip"
)]
pub struct Cli {
    /// What to run: trajectory | sweep | periodicity | verify
    #[arg(long)]
    pub command: Option<String>,

    /// Axial offset of the strip trajectory
    #[arg(long, allow_negative_numbers = true)]
    pub l: Option<f64>,

    /// Radial profile: const:<v> | sin2 | cos2
    #[arg(long)]
    pub profile: Option<String>,

    /// Lower end of the φ range (radians)
    #[arg(long = "phi-min", allow_negative_numbers = true)]
    pub phi_min: Option<f64>,

    /// Upper end of the φ range (radians)
    #[arg(long = "phi-max", allow_negative_numbers = true)]
    pub phi_max: Option<f64>,

    /// Number of φ samples, endpoints included
    #[arg(long)]
    pub steps: Option<usize>,

    /// Fixed effective level, bypassing the geometry
    #[arg(long, allow_negative_numbers = true)]
    pub lp: Option<f64>,

    /// Closed-form reading: normalized | paper
    #[arg(long)]
    pub convention: Option<String>,

    /// State family: cs | scs-angle | scs-xi | scs-xi-minus
    #[arg(long)]
    pub state: Option<String>,

    /// Superposition phase in radians, or "phi" to tie it to the strip angle
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<String>,

    /// Comma-separated periods, e.g. "2pi,4pi"; plain radians also accepted
    #[arg(long)]
    pub period: Option<String>,

    /// Relative tolerance for verification checks
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,

    /// Output format: csv | json
    #[arg(long)]
    pub format: Option<String>,

    /// Output path; stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// key=value config file with the same keys as the flags; flags win
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Window half-width override for engine-built states
    #[arg(long)]
    pub padding: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Trajectory,
    Sweep,
    Periodicity,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Fully resolved run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub strip: StripConfig,
    pub phi_min: f64,
    pub phi_max: f64,
    pub steps: usize,
    pub lp_override: Option<f64>,
    pub convention: Convention,
    pub state: StateKind,
    pub chi: ChiRule,
    pub periods: Vec<f64>,
    pub tol: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub padding: Option<i64>,
}

impl RunConfig {
    pub fn resolve(mut cli: Cli) -> Result<RunConfig> {
        if let Some(path) = cli.config.take() {
            let file = fs::read_to_string(&path)
                .with_context(|| format!("cannot read config file {}", path.display()))?;
            let map = parse_key_values(&file)?;
            apply_file_values(&mut cli, &map)?;
        }

        let command = match cli.command.as_deref() {
            Some("trajectory") => Command::Trajectory,
            Some("sweep") => Command::Sweep,
            Some("periodicity") => Command::Periodicity,
            Some("verify") => Command::Verify,
            Some(other) => bail!("unknown command `{other}`"),
            None => bail!("no command given (use --command or a config file)"),
        };

        let profile = match cli.profile.as_deref() {
            Some(s) => parse_profile(s)?,
            None => RadialProfile::constant(0.5).expect("0.5 is a valid radius"),
        };
        let strip = StripConfig::new(cli.l.unwrap_or(0.0), profile)
            .map_err(|e| anyhow!("bad strip parameters: {e}"))?;

        let format = match cli.format.as_deref() {
            Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            Some(other) => bail!("unknown format `{other}` (expected csv or json)"),
            // The verification report is structured; everything else
            // defaults to flat CSV.
            None => match command {
                Command::Verify => Format::Json,
                _ => Format::Csv,
            },
        };
        if command == Command::Verify && format == Format::Csv {
            bail!("the verify report is JSON; drop --format or pass --format json");
        }

        let convention = match cli.convention.as_deref() {
            Some("normalized") | None => Convention::Normalized,
            Some("paper") => Convention::PaperLiteral,
            Some(other) => bail!("unknown convention `{other}` (expected normalized or paper)"),
        };

        let state = match cli.state.as_deref() {
            Some("cs") | None => StateKind::Cs,
            Some("scs-angle") => StateKind::Scs(ScsKind::OppositeAngle),
            Some("scs-xi") => StateKind::Scs(ScsKind::OppositeXi),
            Some("scs-xi-minus") => StateKind::Scs(ScsKind::OppositeXiMinus),
            Some(other) => bail!("unknown state kind `{other}`"),
        };

        let chi = match cli.chi.as_deref() {
            None => ChiRule::Fixed(0.0),
            Some("phi") => ChiRule::EqualsPhi,
            Some(s) => ChiRule::Fixed(
                s.parse::<f64>()
                    .with_context(|| format!("bad chi value `{s}`"))?,
            ),
        };

        let periods = match cli.period.as_deref() {
            None => vec![2.0 * PI, 4.0 * PI],
            Some(s) => s
                .split(',')
                .map(parse_angle)
                .collect::<Result<Vec<f64>>>()?,
        };
        if periods.is_empty() {
            bail!("empty period list");
        }

        let steps = cli.steps.unwrap_or(201);
        let tol = cli.tol.unwrap_or(1e-10);
        if tol.is_nan() || tol <= 0.0 {
            bail!("tolerance must be positive, got {tol}");
        }
        if let Some(p) = cli.padding {
            if p < 0 {
                bail!("padding must be non-negative, got {p}");
            }
        }

        Ok(RunConfig {
            command,
            strip,
            phi_min: cli.phi_min.unwrap_or(0.0),
            phi_max: cli.phi_max.unwrap_or(4.0 * PI),
            steps,
            lp_override: cli.lp,
            convention,
            state,
            chi,
            periods,
            tol,
            format,
            output: cli.output,
            padding: cli.padding,
        })
    }
}

/// Parse `key=value` lines; `#` starts a comment, blank lines are skipped.
fn parse_key_values(text: &str) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            anyhow!(
                "config line {}: expected key=value, got `{line}`",
                lineno + 1
            )
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Fill unset CLI fields from the config map. Keys mirror the flag names.
fn apply_file_values(cli: &mut Cli, map: &HashMap<String, String>) -> Result<()> {
    for (key, value) in map {
        match key.as_str() {
            "command" => fill_str(&mut cli.command, value),
            "l" => fill_parse(&mut cli.l, key, value)?,
            "profile" => fill_str(&mut cli.profile, value),
            "phi-min" => fill_parse(&mut cli.phi_min, key, value)?,
            "phi-max" => fill_parse(&mut cli.phi_max, key, value)?,
            "steps" => fill_parse(&mut cli.steps, key, value)?,
            "lp" => fill_parse(&mut cli.lp, key, value)?,
            "convention" => fill_str(&mut cli.convention, value),
            "state" => fill_str(&mut cli.state, value),
            "chi" => fill_str(&mut cli.chi, value),
            "period" => fill_str(&mut cli.period, value),
            "tol" => fill_parse(&mut cli.tol, key, value)?,
            "format" => fill_str(&mut cli.format, value),
            "output" => {
                if cli.output.is_none() {
                    cli.output = Some(PathBuf::from(value));
                }
            }
            "padding" => fill_parse(&mut cli.padding, key, value)?,
            other => bail!("unknown config key `{other}`"),
        }
    }
    Ok(())
}

fn fill_str(slot: &mut Option<String>, value: &str) {
    if slot.is_none() {
        *slot = Some(value.to_string());
    }
}

fn fill_parse<T: std::str::FromStr>(slot: &mut Option<T>, key: &str, value: &str) -> Result<()>
where
    T::Err: std::fmt::Display,
{
    if slot.is_none() {
        *slot = Some(
            value
                .parse()
                .map_err(|e| anyhow!("config key `{key}`: bad value `{value}`: {e}"))?,
        );
    }
    Ok(())
}

fn parse_profile(s: &str) -> Result<RadialProfile> {
    match s {
        "sin2" => Ok(RadialProfile::SinSquared),
        "cos2" => Ok(RadialProfile::CosSquared),
        _ => {
            let value = s
                .strip_prefix("const:")
                .ok_or_else(|| anyhow!("unknown profile `{s}` (expected const:<v>, sin2, cos2)"))?;
            let r0: f64 = value
                .parse()
                .with_context(|| format!("bad radius in profile `{s}`"))?;
            RadialProfile::constant(r0).map_err(|e| anyhow!("{e}"))
        }
    }
}

/// An angle token: `2pi`, `pi`, `0.5pi`, or plain radians.
fn parse_angle(token: &str) -> Result<f64> {
    let t = token.trim();
    if let Some(prefix) = t.strip_suffix("pi") {
        let factor: f64 = if prefix.is_empty() {
            1.0
        } else {
            prefix
                .parse()
                .with_context(|| format!("bad angle token `{t}`"))?
        };
        Ok(factor * PI)
    } else {
        t.parse::<f64>()
            .with_context(|| format!("bad angle token `{t}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(args: &[&str]) -> Result<RunConfig> {
        let mut argv = vec!["mobius-cs"];
        argv.extend_from_slice(args);
        RunConfig::resolve(Cli::try_parse_from(argv).unwrap())
    }

    #[test]
    fn angle_tokens() {
        assert_eq!(parse_angle("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_angle("4pi").unwrap(), 4.0 * PI);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("0.5pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_angle("1.25").unwrap(), 1.25);
        assert!(parse_angle("twopi").is_err());
    }

    #[test]
    fn defaults() {
        let cfg = resolve(&["--command", "sweep"]).unwrap();
        assert_eq!(cfg.command, Command::Sweep);
        assert_eq!(cfg.steps, 201);
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.convention, Convention::Normalized);
        assert_eq!(cfg.periods, vec![2.0 * PI, 4.0 * PI]);
    }

    #[test]
    fn verify_defaults_to_json() {
        let cfg = resolve(&["--command", "verify"]).unwrap();
        assert_eq!(cfg.format, Format::Json);
        assert!(resolve(&["--command", "verify", "--format", "csv"]).is_err());
    }

    #[test]
    fn rejects_unknown_values() {
        assert!(resolve(&["--command", "dance"]).is_err());
        assert!(resolve(&["--command", "sweep", "--profile", "tan2"]).is_err());
        assert!(resolve(&["--command", "sweep", "--convention", "folk"]).is_err());
        assert!(resolve(&["--command", "sweep", "--tol", "-1"]).is_err());
    }

    #[test]
    fn profile_parsing() {
        assert_eq!(parse_profile("sin2").unwrap(), RadialProfile::SinSquared);
        assert!(matches!(
            parse_profile("const:0.25").unwrap(),
            RadialProfile::Constant(r) if r == 0.25
        ));
        assert!(parse_profile("const:1.5").is_err());
    }

    #[test]
    fn config_file_merging() {
        let map = parse_key_values("# comment\ncommand=sweep\nsteps=11\nlp=-0.5\n").unwrap();
        let mut cli = Cli::try_parse_from(["mobius-cs", "--steps", "7"]).unwrap();
        apply_file_values(&mut cli, &map).unwrap();
        assert_eq!(cli.command.as_deref(), Some("sweep"));
        // The flag wins over the file.
        assert_eq!(cli.steps, Some(7));
        assert_eq!(cli.lp, Some(-0.5));
    }

    #[test]
    fn config_file_rejects_unknown_keys() {
        let map = parse_key_values("wat=1\n").unwrap();
        let mut cli = Cli::default();
        assert!(apply_file_values(&mut cli, &map).is_err());
        assert!(parse_key_values("just a line\n").is_err());
    }
}
