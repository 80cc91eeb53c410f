//! Command-line front end: configuration parsing, the strategy grammar,
//! execution, and CSV/JSON emission.
//!
//! A run is specified by defaults, overridden by an optional TOML config
//! file, overridden by flags (flags > file > defaults). All data outputs
//! are deterministic: identical specs produce byte-identical files, and a
//! timestamp enters the metadata only when `--timestamp` asks for it.
//!
//! Strategy grammar (for `--strategy-a` / `--strategy-b`):
//!
//! * `pavlov` or `pavlov:ν1,ν2,ν3` — quantum Pavlov with optional phases
//! * `random` — Hadamard on the player's own coin
//! * `tft` — tit-for-tat (no sequential embedding; simultaneous only)
//! * `interpolated:ξ` — the Pavlov↔Random family, ξ in `[0, π/4]`
//! * `probs:pR,pS,pT,pP` with optional `:phases:φR,φS,φT,φP,θR,θS,θT,θP`
//!
//! Angles accept plain floats or `pi`, `pi/4`, `-pi/20` forms.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{self, SweepGrid};
use crate::classical::{classical_expected_payoffs, JointCoinDistribution, MoveOrder};
use crate::error::{Error, Result};
use crate::qstate::{CoinBasis, CoinOperator, CoinState, PayoffTable, PRUNE_PROBABILITY};
use crate::strategies::{self, compatibility, ClassicalStrategy, Player, SequentialPhases};
use crate::walk::{run_game, run_measured, GameConfig, GameResult, Mode, RecordFlags};

/// Environment variable selecting the sweep worker-thread count.
/// Unset or invalid means all available parallelism.
pub const THREADS_ENV_VAR: &str = "QWALK_GAMES_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "qwalk-games",
    version,
    about = "Iterated bipartite quantum games on a two-walker quantum walk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a single game and emit the result as JSON.
    Run(RunArgs),
    /// Sweep the (ξ_A, ξ_B) strategy grid and emit a CSV surface.
    Sweep(SweepArgs),
    /// Check which schemes can confront two strategies.
    Validate(ValidateArgs),
    /// Record the entanglement-entropy series and its growth fits.
    Entropy(EntropyArgs),
    /// Expected payoffs of the corresponding classical iterated game.
    Classical(ClassicalArgs),
}

#[derive(Args, Debug, Default)]
struct SpecArgs {
    /// TOML configuration file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of rounds.
    #[arg(long)]
    steps: Option<u32>,
    /// Payoff table: `pd`, `hawk-dove`, `stag-hunt`, or `R,S,T,P` integers.
    #[arg(long)]
    payoffs: Option<String>,
    /// Alice's strategy (see the strategy grammar in `--help`).
    #[arg(long)]
    strategy_a: Option<String>,
    /// Bob's strategy.
    #[arg(long)]
    strategy_b: Option<String>,
    /// `sequential-ab` (Alice first), `sequential-ba`, or `simultaneous`.
    #[arg(long)]
    scheme: Option<String>,
    /// Initial coin: `cc`, `cd`, `dc`, `dd`, `bell-phi-plus`,
    /// `bell-psi-plus`, `unbiased-product`, or `amps:re,im,...` (4 pairs).
    #[arg(long)]
    initial_coin: Option<String>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// `unitary` or `measured`.
    #[arg(long)]
    mode: Option<String>,
    /// Comma-separated subset of `trajectory,entropy,distribution`.
    #[arg(long)]
    record: Option<String>,
    /// Include a wall-clock timestamp in the metadata.
    #[arg(long)]
    timestamp: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Points per axis, evenly spaced over [0, π/4].
    #[arg(long, default_value_t = 21)]
    grid_points: usize,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Alice's strategy.
    #[arg(long)]
    strategy_a: String,
    /// Bob's strategy.
    #[arg(long)]
    strategy_b: String,
}

#[derive(Args, Debug)]
struct EntropyArgs {
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Args, Debug)]
struct ClassicalArgs {
    /// Alice's strategy (classical probability content is used).
    #[arg(long)]
    strategy_a: String,
    /// Bob's strategy.
    #[arg(long)]
    strategy_b: String,
    /// `simultaneous`, `alice-first`, or `bob-first`.
    #[arg(long, default_value = "simultaneous")]
    order: String,
    /// Initial joint-coin distribution: `uniform`, `cc`, `cd`, `dc`, `dd`,
    /// `half-cc-dd`, or `probs:p0,p1,p2,p3`.
    #[arg(long, default_value = "uniform")]
    initial: String,
    #[arg(long, default_value_t = 50)]
    steps: u32,
    /// Payoff table: preset name or `R,S,T,P`.
    #[arg(long, default_value = "pd")]
    payoffs: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Entry point used by the binary: reads the thread-count environment
/// variable and dispatches, returning the process exit code.
pub fn main_entry() -> i32 {
    let threads = std::env::var(THREADS_ENV_VAR)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0);
    execute_with_threads(std::env::args(), threads)
}

/// Parse and run with an explicit worker-thread count (`None` = all
/// available parallelism). Exposed for tests that exercise determinism
/// across worker counts without touching process environment.
pub fn execute_with_threads<I, T>(args: I, threads: Option<usize>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build();
    let outcome = match pool {
        Ok(pool) => pool.install(|| dispatch(cli)),
        Err(_) => dispatch(cli),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NotUnitary { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Entropy(args) => cmd_entropy(args),
        Command::Classical(args) => cmd_classical(args),
    }
}

// ---------------------------------------------------------------------
// Specification resolution: defaults < config file < flags.
// ---------------------------------------------------------------------

/// How the two strategies combine into the per-round coin operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    SequentialAliceFirst,
    SequentialBobFirst,
    Simultaneous,
}

impl Scheme {
    fn parse(s: &str) -> Result<Scheme> {
        match normalize(s).as_str() {
            "sequential-ab" | "ab" | "alice-first" => Ok(Scheme::SequentialAliceFirst),
            "sequential-ba" | "ba" | "bob-first" => Ok(Scheme::SequentialBobFirst),
            "simultaneous" => Ok(Scheme::Simultaneous),
            other => Err(Error::InvalidConfig(format!("unknown scheme `{other}`"))),
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Scheme::SequentialAliceFirst => "sequential-ab",
            Scheme::SequentialBobFirst => "sequential-ba",
            Scheme::Simultaneous => "simultaneous",
        }
    }
}

fn normalize(s: &str) -> String {
    s.trim().to_ascii_lowercase().replace('_', "-")
}

/// A parsed strategy specification.
#[derive(Debug, Clone, PartialEq)]
pub enum StrategySpec {
    Pavlov {
        phases: [f64; 3],
    },
    Random,
    TitForTat,
    Interpolated {
        xi: f64,
    },
    Probs {
        probs: ClassicalStrategy,
        phases: Option<SequentialPhases>,
    },
}

impl StrategySpec {
    pub fn parse(input: &str) -> Result<StrategySpec> {
        let text = input.trim();
        let parts: Vec<&str> = text.split(':').collect();
        match (normalize(parts[0]).as_str(), parts.len()) {
            ("pavlov", 1) => Ok(StrategySpec::Pavlov { phases: [0.0; 3] }),
            ("pavlov", 2) => {
                let v = parse_angle_list(parts[1], 3, "pavlov phases")?;
                Ok(StrategySpec::Pavlov {
                    phases: [v[0], v[1], v[2]],
                })
            }
            ("random", 1) => Ok(StrategySpec::Random),
            ("tft" | "tit-for-tat", 1) => Ok(StrategySpec::TitForTat),
            ("interpolated", 2) => Ok(StrategySpec::Interpolated {
                xi: parse_angle(parts[1])?,
            }),
            ("probs", 2) => {
                let v = parse_float_list(parts[1], 4, "strategy probabilities")?;
                Ok(StrategySpec::Probs {
                    probs: ClassicalStrategy::new(v[0], v[1], v[2], v[3])?,
                    phases: None,
                })
            }
            ("probs", 4) if normalize(parts[2]) == "phases" => {
                let v = parse_float_list(parts[1], 4, "strategy probabilities")?;
                let ph = parse_angle_list(parts[3], 8, "strategy phases")?;
                Ok(StrategySpec::Probs {
                    probs: ClassicalStrategy::new(v[0], v[1], v[2], v[3])?,
                    phases: Some(SequentialPhases {
                        cooperate: [ph[0], ph[1], ph[2], ph[3]],
                        defect: [ph[4], ph[5], ph[6], ph[7]],
                    }),
                })
            }
            _ => Err(Error::InvalidConfig(format!(
                "unrecognized strategy spec `{text}`"
            ))),
        }
    }

    /// The classical probability content of the strategy.
    pub fn classical(&self) -> ClassicalStrategy {
        match self {
            StrategySpec::Pavlov { .. } => ClassicalStrategy::pavlov(),
            StrategySpec::Random => ClassicalStrategy::random(),
            StrategySpec::TitForTat => ClassicalStrategy::tit_for_tat(),
            StrategySpec::Interpolated { xi } => ClassicalStrategy::interpolated(*xi),
            StrategySpec::Probs { probs, .. } => *probs,
        }
    }

    /// The quantum operator for one player in a sequential game.
    pub fn sequential_operator(&self, player: Player) -> Result<CoinOperator> {
        match self {
            StrategySpec::Pavlov { phases } => {
                Ok(strategies::pavlov(player, phases[0], phases[1], phases[2]))
            }
            StrategySpec::Random => Ok(strategies::random_hadamard(player)),
            StrategySpec::TitForTat => strategies::sequential_from_classical(
                player,
                &ClassicalStrategy::tit_for_tat(),
                &SequentialPhases::canonical(),
            ),
            StrategySpec::Interpolated { xi } => {
                if !(0.0..=std::f64::consts::FRAC_PI_4 + 1e-12).contains(xi) {
                    eprintln!(
                        "warning: interpolated xi = {xi} lies outside [0, pi/4]; \
                         proceeding with the extended family"
                    );
                }
                Ok(strategies::interpolated(player, *xi))
            }
            StrategySpec::Probs { probs, phases } => strategies::sequential_from_classical(
                player,
                probs,
                &phases.unwrap_or_else(SequentialPhases::canonical),
            ),
        }
    }

    fn has_explicit_phases(&self) -> bool {
        matches!(
            self,
            StrategySpec::Pavlov { phases } if phases.iter().any(|p| *p != 0.0)
        ) || matches!(
            self,
            StrategySpec::Probs {
                phases: Some(_),
                ..
            }
        )
    }
}

/// Fully resolved run specification.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub payoffs: PayoffTable,
    pub strategy_a: StrategySpec,
    pub strategy_b: StrategySpec,
    pub strategy_a_label: String,
    pub strategy_b_label: String,
    pub scheme: Scheme,
    pub initial_coin: CoinState,
    pub initial_coin_label: String,
    pub steps: u32,
    pub mode: Mode,
    pub record: RecordFlags,
}

impl RunSpec {
    /// Compose the per-round joint coin operator for the chosen scheme.
    pub fn coin_operator(&self) -> Result<CoinOperator> {
        match self.scheme {
            Scheme::SequentialAliceFirst => {
                let a = self.strategy_a.sequential_operator(Player::A)?;
                let b = self.strategy_b.sequential_operator(Player::B)?;
                Ok(strategies::compose_sequential(&a, &b))
            }
            Scheme::SequentialBobFirst => {
                let a = self.strategy_a.sequential_operator(Player::A)?;
                let b = self.strategy_b.sequential_operator(Player::B)?;
                Ok(strategies::compose_sequential(&b, &a))
            }
            Scheme::Simultaneous => {
                if self.strategy_a.has_explicit_phases() || self.strategy_b.has_explicit_phases() {
                    return Err(Error::InvalidConfig(
                        "per-strategy phases apply to sequential schemes only; the \
                         simultaneous operator is chosen canonically from the classical \
                         probabilities"
                            .into(),
                    ));
                }
                strategies::simultaneous_auto(
                    &self.strategy_a.classical(),
                    &self.strategy_b.classical(),
                )
            }
        }
    }

    pub fn game_config(&self) -> Result<GameConfig> {
        Ok(GameConfig {
            payoffs: self.payoffs,
            coin_op: self.coin_operator()?,
            initial_coin: self.initial_coin.clone(),
            steps: self.steps,
            mode: self.mode,
            record: self.record,
        })
    }
}

/// Optional values loadable from a TOML config file. Every key can also be
/// given as a flag, which wins.
#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSpec {
    steps: Option<u32>,
    mode: Option<String>,
    scheme: Option<String>,
    initial_coin: Option<CoinSpecToml>,
    payoffs: Option<PayoffsToml>,
    players: Option<PlayersToml>,
    record: Option<RecordToml>,
}

#[derive(Debug, serde::Deserialize)]
#[serde(untagged)]
enum CoinSpecToml {
    Preset(String),
    /// Four amplitudes as (re, im) pairs.
    Amplitudes([[f64; 2]; 4]),
}

#[derive(Debug, serde::Deserialize)]
#[serde(untagged)]
enum PayoffsToml {
    Preset(String),
    Explicit {
        reward: i64,
        sucker: i64,
        temptation: i64,
        punishment: i64,
    },
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct PlayersToml {
    a: Option<String>,
    b: Option<String>,
}

#[derive(Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordToml {
    trajectory: Option<bool>,
    entropy: Option<bool>,
    distribution: Option<bool>,
}

fn load_file_spec(path: Option<&Path>) -> Result<FileSpec> {
    match path {
        None => Ok(FileSpec::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            toml::from_str(&text).map_err(|e| Error::InvalidConfig(format!("{}: {e}", p.display())))
        }
    }
}

fn resolve_spec(args: &SpecArgs, mode: Option<&str>, record: Option<&str>) -> Result<RunSpec> {
    let file = load_file_spec(args.config.as_deref())?;

    let steps = args.steps.or(file.steps).unwrap_or(50);

    let payoffs = match (&args.payoffs, &file.payoffs) {
        (Some(flag), _) => parse_payoffs(flag)?,
        (None, Some(PayoffsToml::Preset(name))) => parse_payoffs(name)?,
        (
            None,
            Some(PayoffsToml::Explicit {
                reward,
                sucker,
                temptation,
                punishment,
            }),
        ) => PayoffTable::new(*reward, *sucker, *temptation, *punishment),
        (None, None) => PayoffTable::pd_default(),
    };

    let file_players = file.players.unwrap_or(PlayersToml { a: None, b: None });
    let strategy_a_label = args
        .strategy_a
        .clone()
        .or(file_players.a)
        .unwrap_or_else(|| "pavlov".into());
    let strategy_b_label = args
        .strategy_b
        .clone()
        .or(file_players.b)
        .unwrap_or_else(|| "random".into());
    let strategy_a = StrategySpec::parse(&strategy_a_label)?;
    let strategy_b = StrategySpec::parse(&strategy_b_label)?;

    let scheme = match (&args.scheme, &file.scheme) {
        (Some(flag), _) => Scheme::parse(flag)?,
        (None, Some(name)) => Scheme::parse(name)?,
        (None, None) => Scheme::SequentialAliceFirst,
    };

    let (initial_coin, initial_coin_label) = match (&args.initial_coin, &file.initial_coin) {
        (Some(flag), _) => (parse_coin(flag)?, flag.clone()),
        (None, Some(CoinSpecToml::Preset(name))) => (parse_coin(name)?, name.clone()),
        (None, Some(CoinSpecToml::Amplitudes(pairs))) => {
            let amps = pairs.map(|[re, im]| num_complex::Complex64::new(re, im));
            (CoinState::new(amps)?, "explicit-amplitudes".into())
        }
        (None, None) => (CoinState::unbiased_product(), "unbiased-product".into()),
    };

    let mode = match (mode, &file.mode) {
        (Some(flag), _) => parse_mode(flag)?,
        (None, Some(name)) => parse_mode(name)?,
        (None, None) => Mode::Unitary,
    };

    let record = match record {
        Some(list) => parse_record(list)?,
        None => {
            let r = file.record.unwrap_or(RecordToml {
                trajectory: None,
                entropy: None,
                distribution: None,
            });
            RecordFlags {
                trajectory: r.trajectory.unwrap_or(false),
                entropy_series: r.entropy.unwrap_or(false),
                final_distribution: r.distribution.unwrap_or(false),
            }
        }
    };

    Ok(RunSpec {
        payoffs,
        strategy_a,
        strategy_b,
        strategy_a_label,
        strategy_b_label,
        scheme,
        initial_coin,
        initial_coin_label,
        steps,
        mode,
        record,
    })
}

// ---------------------------------------------------------------------
// Small parsers.
// ---------------------------------------------------------------------

/// Accepts `0.42`, `pi`, `pi/20`, `-pi/4`, `2pi` is not needed.
pub fn parse_angle(s: &str) -> Result<f64> {
    let text = s.trim();
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, text),
    };
    let value = if let Some(rest) = body.strip_prefix("pi") {
        let rest = rest.trim();
        if rest.is_empty() {
            std::f64::consts::PI
        } else if let Some(div) = rest.strip_prefix('/') {
            let d: f64 = div
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad angle `{s}`")))?;
            std::f64::consts::PI / d
        } else {
            return Err(Error::InvalidConfig(format!("bad angle `{s}`")));
        }
    } else {
        body.parse()
            .map_err(|_| Error::InvalidConfig(format!("bad angle `{s}`")))?
    };
    Ok(sign * value)
}

fn parse_angle_list(s: &str, expect: usize, what: &str) -> Result<Vec<f64>> {
    let items: Vec<&str> = s.split(',').collect();
    if items.len() != expect {
        return Err(Error::InvalidConfig(format!(
            "{what}: expected {expect} comma-separated values, got {}",
            items.len()
        )));
    }
    items.iter().map(|i| parse_angle(i)).collect()
}

fn parse_float_list(s: &str, expect: usize, what: &str) -> Result<Vec<f64>> {
    let items: Vec<&str> = s.split(',').collect();
    if items.len() != expect {
        return Err(Error::InvalidConfig(format!(
            "{what}: expected {expect} comma-separated values, got {}",
            items.len()
        )));
    }
    items
        .iter()
        .map(|i| {
            i.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("{what}: bad number `{i}`")))
        })
        .collect()
}

pub fn parse_payoffs(s: &str) -> Result<PayoffTable> {
    match normalize(s).as_str() {
        "pd" | "prisoners-dilemma" => Ok(PayoffTable::pd_default()),
        "hawk-dove" => Ok(PayoffTable::hawk_dove_default()),
        "stag-hunt" => Ok(PayoffTable::stag_hunt_default()),
        _ => {
            let items: Vec<&str> = s.split(',').collect();
            if items.len() != 4 {
                return Err(Error::InvalidConfig(format!(
                    "payoffs: expected a preset name or R,S,T,P integers, got `{s}`"
                )));
            }
            let mut v = [0i64; 4];
            for (slot, item) in v.iter_mut().zip(&items) {
                *slot = item
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidConfig(format!("payoffs: bad integer `{item}`")))?;
            }
            Ok(PayoffTable::new(v[0], v[1], v[2], v[3]))
        }
    }
}

pub fn parse_coin(s: &str) -> Result<CoinState> {
    match normalize(s).as_str() {
        "cc" => Ok(CoinState::basis(CoinBasis::CC)),
        "cd" => Ok(CoinState::basis(CoinBasis::CD)),
        "dc" => Ok(CoinState::basis(CoinBasis::DC)),
        "dd" => Ok(CoinState::basis(CoinBasis::DD)),
        "bell-phi-plus" => Ok(CoinState::bell_phi_plus()),
        "bell-psi-plus" => Ok(CoinState::bell_psi_plus()),
        "unbiased-product" => Ok(CoinState::unbiased_product()),
        other => {
            if let Some(list) = other.strip_prefix("amps:") {
                let v = parse_float_list(list, 8, "coin amplitudes")?;
                let amps = [
                    num_complex::Complex64::new(v[0], v[1]),
                    num_complex::Complex64::new(v[2], v[3]),
                    num_complex::Complex64::new(v[4], v[5]),
                    num_complex::Complex64::new(v[6], v[7]),
                ];
                CoinState::new(amps)
            } else {
                Err(Error::InvalidConfig(format!("unknown initial coin `{s}`")))
            }
        }
    }
}

fn parse_mode(s: &str) -> Result<Mode> {
    match normalize(s).as_str() {
        "unitary" => Ok(Mode::Unitary),
        "measured" => Ok(Mode::Measured),
        other => Err(Error::InvalidConfig(format!("unknown mode `{other}`"))),
    }
}

fn parse_record(s: &str) -> Result<RecordFlags> {
    let mut flags = RecordFlags::default();
    if normalize(s) == "none" {
        return Ok(flags);
    }
    for item in s.split(',') {
        match normalize(item).as_str() {
            "trajectory" => flags.trajectory = true,
            "entropy" => flags.entropy_series = true,
            "distribution" => flags.final_distribution = true,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown record flag `{other}`"
                )))
            }
        }
    }
    Ok(flags)
}

fn parse_order(s: &str) -> Result<MoveOrder> {
    match normalize(s).as_str() {
        "simultaneous" => Ok(MoveOrder::Simultaneous),
        "alice-first" | "ab" => Ok(MoveOrder::AliceFirst),
        "bob-first" | "ba" => Ok(MoveOrder::BobFirst),
        other => Err(Error::InvalidConfig(format!("unknown order `{other}`"))),
    }
}

fn parse_initial_distribution(s: &str) -> Result<JointCoinDistribution> {
    match normalize(s).as_str() {
        "uniform" => Ok(JointCoinDistribution::uniform()),
        "cc" => Ok(JointCoinDistribution::certain(CoinBasis::CC)),
        "cd" => Ok(JointCoinDistribution::certain(CoinBasis::CD)),
        "dc" => Ok(JointCoinDistribution::certain(CoinBasis::DC)),
        "dd" => Ok(JointCoinDistribution::certain(CoinBasis::DD)),
        "half-cc-dd" => Ok(JointCoinDistribution::half_cc_half_dd()),
        other => {
            if let Some(list) = other.strip_prefix("probs:") {
                let v = parse_float_list(list, 4, "initial distribution")?;
                JointCoinDistribution::new([v[0], v[1], v[2], v[3]])
            } else {
                Err(Error::InvalidConfig(format!(
                    "unknown initial distribution `{s}`"
                )))
            }
        }
    }
}

// ---------------------------------------------------------------------
// Output documents.
// ---------------------------------------------------------------------

/// Conventions that pin down reproduction of any emitted number.
#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct Conventions {
    pub entropy_log_base: u32,
    pub entanglement_cut: String,
    pub interpolated_family: String,
    pub prune_probability: f64,
}

impl Conventions {
    fn current() -> Conventions {
        Conventions {
            entropy_log_base: 2,
            entanglement_cut: "(x_A, coin_A) vs (x_B, coin_B)".into(),
            interpolated_family:
                "real rotation blocks, cos(xi) on cooperate amplitudes; equals the \
                 Hadamard Random strategy at xi = pi/4"
                    .into(),
            prune_probability: PRUNE_PROBABILITY,
        }
    }
}

#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct RunMetadata {
    pub version: String,
    pub scheme: String,
    pub strategy_a: String,
    pub strategy_b: String,
    pub payoffs: PayoffTable,
    pub initial_coin: String,
    pub conventions: Conventions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
}

/// The JSON document emitted by `run`.
#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct RunReport {
    pub metadata: RunMetadata,
    pub result: GameResult,
}

fn metadata_for(spec: &RunSpec, timestamp: bool) -> RunMetadata {
    RunMetadata {
        version: env!("CARGO_PKG_VERSION").into(),
        scheme: spec.scheme.label().into(),
        strategy_a: spec.strategy_a_label.clone(),
        strategy_b: spec.strategy_b_label.clone(),
        payoffs: spec.payoffs,
        initial_coin: spec.initial_coin_label.clone(),
        conventions: Conventions::current(),
        timestamp_unix: timestamp.then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        }),
    }
}

fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, content)?;
            Ok(())
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

/// 12 significant digits, locale-independent.
fn fmt_sig(v: f64) -> String {
    format!("{v:.11e}")
}

// ---------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------

fn cmd_run(args: RunArgs) -> Result<()> {
    let spec = resolve_spec(&args.spec, args.mode.as_deref(), args.record.as_deref())?;
    let config = spec.game_config()?;
    let result = match spec.mode {
        Mode::Unitary => run_game(&config)?,
        Mode::Measured => run_measured(&config)?,
    };
    let report = RunReport {
        metadata: metadata_for(&spec, args.timestamp),
        result,
    };
    let json = serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?;
    write_output(args.spec.output.as_deref(), &(json + "\n"))
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let spec = resolve_spec(&args.spec, None, None)?;
    let first_mover = match spec.scheme {
        Scheme::SequentialAliceFirst => Player::A,
        Scheme::SequentialBobFirst => Player::B,
        Scheme::Simultaneous => {
            return Err(Error::InvalidConfig(
                "sweep explores the sequential interpolation family; scheme must be \
                 sequential-ab or sequential-ba"
                    .into(),
            ))
        }
    };
    let grid = SweepGrid::uniform(
        args.grid_points,
        first_mover,
        spec.payoffs,
        spec.initial_coin.clone(),
        spec.steps,
    )?;
    let surface = analysis::sweep(&grid)?;

    let mut csv = String::from("xi_a,xi_b,payoff_a,payoff_b\n");
    for (ia, xi_a) in grid.xi_a().iter().enumerate() {
        for (ib, xi_b) in grid.xi_b().iter().enumerate() {
            let (pa, pb) = surface.at(ia, ib);
            csv.push_str(&format!(
                "{},{},{},{}\n",
                fmt_sig(*xi_a),
                fmt_sig(*xi_b),
                fmt_sig(pa),
                fmt_sig(pb)
            ));
        }
    }
    write_output(args.spec.output.as_deref(), &csv)
}

/// Machine-readable verdict of `validate`.
#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct ValidationReport {
    pub strategy_a: String,
    pub strategy_b: String,
    pub sequential_ok: bool,
    pub simultaneous_ok: bool,
    /// Strategy-table shorthand: "1, 2", "1", "2", or "not unitary".
    pub verdict: String,
    pub reason: String,
}

fn cmd_validate(args: ValidateArgs) -> Result<()> {
    let a = StrategySpec::parse(&args.strategy_a)?;
    let b = StrategySpec::parse(&args.strategy_b)?;
    let compat = compatibility(&a.classical(), &b.classical());
    let verdict = match (compat.sequential_ok, compat.simultaneous_ok) {
        (true, true) => "1, 2",
        (true, false) => "1",
        (false, true) => "2",
        (false, false) => "not unitary",
    };
    let report = ValidationReport {
        strategy_a: args.strategy_a.clone(),
        strategy_b: args.strategy_b.clone(),
        sequential_ok: compat.sequential_ok,
        simultaneous_ok: compat.simultaneous_ok,
        verdict: verdict.into(),
        reason: compat.reason.clone(),
    };
    let json = serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?;
    println!("{json}");
    eprintln!(
        "{} vs {}: {} ({})",
        args.strategy_a, args.strategy_b, verdict, compat.reason
    );
    Ok(())
}

/// The fit summary emitted alongside the entropy CSV.
#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct EntropyFitReport {
    pub steps: u32,
    pub log_fit: analysis::Fit,
    pub linear_fit: analysis::Fit,
}

fn cmd_entropy(args: EntropyArgs) -> Result<()> {
    let spec = resolve_spec(&args.spec, None, None)?;
    if spec.mode == Mode::Measured {
        return Err(Error::InvalidConfig(
            "entropy requires unitary mode (the measured walk carries no \
             coherent entanglement)"
                .into(),
        ));
    }
    let config = spec.game_config()?;
    let growth = analysis::entropy_growth(&config)?;

    let mut csv = String::from("n,entropy_bits\n");
    for (n, s) in &growth.series {
        csv.push_str(&format!("{n},{}\n", fmt_sig(*s)));
    }
    let fit = EntropyFitReport {
        steps: spec.steps,
        log_fit: growth.log_fit,
        linear_fit: growth.linear_fit,
    };
    let fit_json = serde_json::to_string(&fit).map_err(|e| Error::Io(e.to_string()))?;

    match args.spec.output.as_deref() {
        Some(path) => {
            std::fs::write(path, &csv)?;
            println!("{fit_json}");
        }
        None => {
            print!("{csv}");
            eprintln!("{fit_json}");
        }
    }
    Ok(())
}

/// JSON document emitted by `classical`.
#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct ClassicalReport {
    pub strategy_a: String,
    pub strategy_b: String,
    pub order: MoveOrder,
    pub steps: u32,
    pub payoffs: PayoffTable,
    pub initial: [f64; 4],
    pub payoff_a: f64,
    pub payoff_b: f64,
}

fn cmd_classical(args: ClassicalArgs) -> Result<()> {
    let a = StrategySpec::parse(&args.strategy_a)?;
    let b = StrategySpec::parse(&args.strategy_b)?;
    let order = parse_order(&args.order)?;
    let initial = parse_initial_distribution(&args.initial)?;
    let payoffs = parse_payoffs(&args.payoffs)?;
    let (payoff_a, payoff_b) = classical_expected_payoffs(
        &a.classical(),
        &b.classical(),
        &initial,
        args.steps,
        &payoffs,
        order,
    );
    let report = ClassicalReport {
        strategy_a: args.strategy_a.clone(),
        strategy_b: args.strategy_b.clone(),
        order,
        steps: args.steps,
        payoffs,
        initial: initial.probabilities(),
        payoff_a,
        payoff_b,
    };
    let json = serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?;
    write_output(args.output.as_deref(), &(json + "\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_grammar() {
        assert!((parse_angle("pi").unwrap() - std::f64::consts::PI).abs() < 1e-15);
        assert!((parse_angle("pi/4").unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!((parse_angle("-pi/20").unwrap() + std::f64::consts::PI / 20.0).abs() < 1e-15);
        assert!((parse_angle("0.75").unwrap() - 0.75).abs() < 1e-15);
        assert!(parse_angle("tau").is_err());
    }

    #[test]
    fn strategy_grammar() {
        assert_eq!(
            StrategySpec::parse("pavlov").unwrap(),
            StrategySpec::Pavlov { phases: [0.0; 3] }
        );
        assert!(matches!(
            StrategySpec::parse("pavlov:0,pi,0").unwrap(),
            StrategySpec::Pavlov { .. }
        ));
        assert_eq!(StrategySpec::parse("random").unwrap(), StrategySpec::Random);
        assert_eq!(StrategySpec::parse("tft").unwrap(), StrategySpec::TitForTat);
        assert!(matches!(
            StrategySpec::parse("interpolated:pi/20").unwrap(),
            StrategySpec::Interpolated { .. }
        ));
        let probs = StrategySpec::parse("probs:0.3,0.6,0.7,0.4").unwrap();
        assert!(matches!(probs, StrategySpec::Probs { phases: None, .. }));
        let with_phases =
            StrategySpec::parse("probs:0.5,0.5,0.5,0.5:phases:0,0,0,0,0,0,pi,pi").unwrap();
        assert!(matches!(
            with_phases,
            StrategySpec::Probs {
                phases: Some(_),
                ..
            }
        ));
        assert!(StrategySpec::parse("grim").is_err());
    }

    #[test]
    fn payoff_grammar() {
        assert_eq!(parse_payoffs("pd").unwrap(), PayoffTable::pd_default());
        assert_eq!(
            parse_payoffs("hawk-dove").unwrap(),
            PayoffTable::hawk_dove_default()
        );
        assert_eq!(
            parse_payoffs("stag_hunt").unwrap(),
            PayoffTable::stag_hunt_default()
        );
        assert_eq!(
            parse_payoffs("3,0,5,1").unwrap(),
            PayoffTable::new(3, 0, 5, 1)
        );
        assert!(parse_payoffs("1,2,3").is_err());
    }

    #[test]
    fn coin_grammar_rejects_unnormalized() {
        assert!(parse_coin("bell-phi-plus").is_ok());
        let ok = parse_coin("amps:0.5,0,0,0.5,0,0.5,0.5,0");
        assert!(ok.is_ok());
        let bad = parse_coin("amps:1,0,1,0,0,0,0,0");
        assert!(matches!(bad, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn spec_resolution_defaults() {
        let spec = resolve_spec(&SpecArgs::default(), None, None).unwrap();
        assert_eq!(spec.steps, 50);
        assert_eq!(spec.payoffs, PayoffTable::pd_default());
        assert_eq!(spec.scheme, Scheme::SequentialAliceFirst);
        assert_eq!(spec.mode, Mode::Unitary);
        assert_eq!(spec.strategy_a, StrategySpec::Pavlov { phases: [0.0; 3] });
        assert_eq!(spec.strategy_b, StrategySpec::Random);
        assert!(spec.coin_operator().is_ok());
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join("qwalk-games-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("spec.toml");
        std::fs::write(
            &path,
            r#"
steps = 10
scheme = "sequential-ba"
initial_coin = "cc"

[payoffs]
reward = 3
sucker = 0
temptation = 5
punishment = 1

[players]
a = "random"
b = "pavlov"

[record]
trajectory = true
"#,
        )
        .unwrap();
        let args = SpecArgs {
            config: Some(path),
            steps: Some(7),
            ..Default::default()
        };
        let spec = resolve_spec(&args, None, None).unwrap();
        assert_eq!(spec.steps, 7, "flag beats file");
        assert_eq!(spec.payoffs, PayoffTable::new(3, 0, 5, 1));
        assert_eq!(spec.scheme, Scheme::SequentialBobFirst);
        assert_eq!(spec.strategy_a, StrategySpec::Random);
        assert!(spec.record.trajectory);
    }

    #[test]
    fn simultaneous_rejects_per_strategy_phases() {
        let args = SpecArgs {
            strategy_a: Some("pavlov:0,pi,0".into()),
            strategy_b: Some("tft".into()),
            scheme: Some("simultaneous".into()),
            ..Default::default()
        };
        let spec = resolve_spec(&args, None, None).unwrap();
        assert!(matches!(spec.coin_operator(), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn tft_sequential_is_a_unitarity_failure() {
        let args = SpecArgs {
            strategy_a: Some("tft".into()),
            ..Default::default()
        };
        let spec = resolve_spec(&args, None, None).unwrap();
        assert!(matches!(
            spec.coin_operator(),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.5), "5.00000000000e-1");
        let v: f64 = fmt_sig(std::f64::consts::PI).parse().unwrap();
        assert!((v - std::f64::consts::PI).abs() < 1e-10);
    }
}
