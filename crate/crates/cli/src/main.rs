//! `contest` — batch analysis of ranked elections and constant-sum matrix
//! games over exact rationals.
//!
//! One command per invocation; the report goes to stdout (or `--output`),
//! diagnostics to stderr. Exit codes: 0 success, 1 input or validation
//! error, 2 a declared computation halt (a knockout tie under
//! `--tie-rule error`, or solver non-convergence).

mod render;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use contest_core::games::{
    self, GameError, Player, SolveConfig, SolveMode,
};
use contest_core::model::{MatrixGame, PairwiseMatrix, Validate, WeightedPreferenceProfile};
use contest_core::rational::Rational;
use contest_core::stable_sets::{self, StableSetError, DEFAULT_MAX_ALTERNATIVES};
use contest_core::voting::{self, Bracket, TieRule, VotingError};

use report::*;

#[derive(Parser)]
#[command(
    name = "contest",
    version,
    about = "Ranked-election procedures, stable sets, and matrix game solving with exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Omit the tool metadata block from the report
    #[arg(long, global = true)]
    no_meta: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Args)]
struct InputArg {
    /// Input file (JSON)
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the pairwise support matrix of a weighted preference profile
    DerivePairwise(InputArg),
    /// Voting and elimination procedures
    #[command(subcommand)]
    Vote(VoteCommand),
    /// Dominance relation and exhaustive stable-set enumeration
    StableSets {
        #[command(flatten)]
        input: InputArg,
        /// Strict dominance threshold in percent, within [0, 100)
        #[arg(long, default_value = "50")]
        threshold: String,
    },
    /// Constant-sum matrix game analysis
    #[command(subcommand)]
    Game(GameCommand),
}

#[derive(Subcommand)]
enum VoteCommand {
    /// Relative majority over first preferences (takes a profile file)
    Plurality(InputArg),
    /// Pairwise majority winner and cycle detection
    Condorcet(InputArg),
    /// Sequential knockout along an explicit agenda
    Agenda {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated alternative ids in playing order
        #[arg(long, value_delimiter = ',', required = true)]
        agenda: Vec<String>,
        #[arg(long, value_enum, default_value_t = TieRuleArg::Error)]
        tie_rule: TieRuleArg,
    },
    /// Olympic-system knockout over a pairing tree
    Bracket {
        #[command(flatten)]
        input: InputArg,
        /// Pairing tree, e.g. "((A1,A2),(M1,M2))"
        #[arg(long, required = true)]
        bracket: String,
        #[arg(long, value_enum, default_value_t = TieRuleArg::Error)]
        tie_rule: TieRuleArg,
    },
    /// League standings over a field of alternatives
    League {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated field; defaults to every alternative
        #[arg(long, value_delimiter = ',')]
        field: Option<Vec<String>>,
    },
    /// Iterated league play: drop the last-placed until two remain
    LeagueEliminate(InputArg),
}

#[derive(Subcommand)]
enum GameCommand {
    /// Solve a game (pure saddle, exact 2x2, or fictitious play)
    Solve {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Bound-gap tolerance for the iterative solver (rational)
        #[arg(long)]
        tolerance: Option<String>,
        /// Iteration budget for the iterative solver
        #[arg(long)]
        max_iter: Option<u64>,
    },
    /// Expand a game for a player who observes the opponent's move
    Expand {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum)]
        informed: SideArg,
        /// Also write the expanded game as a re-ingestible game file
        #[arg(long, value_name = "PATH")]
        game_out: Option<PathBuf>,
    },
    /// Sample a 2x2 best-reply payoff envelope
    Envelope {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum)]
        player: SideArg,
        /// Number of uniform grid subdivisions of [0, 1]
        #[arg(long, default_value_t = 20)]
        samples: u32,
        /// Write the envelope as CSV for external plotting
        #[arg(long, value_name = "PATH")]
        csv_out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TieRuleArg {
    Error,
    IncumbentStays,
    ChallengerAdvances,
}

impl From<TieRuleArg> for TieRule {
    fn from(arg: TieRuleArg) -> Self {
        match arg {
            TieRuleArg::Error => TieRule::Error,
            TieRuleArg::IncumbentStays => TieRule::IncumbentStays,
            TieRuleArg::ChallengerAdvances => TieRule::ChallengerAdvances,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Auto,
    Pure,
    Exact2x2,
    Iterative,
}

impl From<ModeArg> for SolveMode {
    fn from(arg: ModeArg) -> Self {
        match arg {
            ModeArg::Auto => SolveMode::Auto,
            ModeArg::Pure => SolveMode::Pure,
            ModeArg::Exact2x2 => SolveMode::Exact2x2,
            ModeArg::Iterative => SolveMode::Iterative,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Row,
    Column,
}

impl From<SideArg> for Player {
    fn from(arg: SideArg) -> Self {
        match arg {
            SideArg::Row => Player::Row,
            SideArg::Column => Player::Column,
        }
    }
}

/// Input problems exit with 1, declared computation halts with 2.
enum CliError {
    Input(String),
    Halt(String),
}

impl CliError {
    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Halt(m) => m,
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Halt(_) => 2,
        }
    }
}

impl From<VotingError> for CliError {
    fn from(err: VotingError) -> Self {
        match err {
            VotingError::TieHalted { .. } => CliError::Halt(err.to_string()),
            _ => CliError::Input(err.to_string()),
        }
    }
}

impl From<GameError> for CliError {
    fn from(err: GameError) -> Self {
        match err {
            GameError::NonConvergence { .. } => CliError::Halt(err.to_string()),
            _ => CliError::Input(err.to_string()),
        }
    }
}

impl From<StableSetError> for CliError {
    fn from(err: StableSetError) -> Self {
        CliError::Input(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn load<T: DeserializeOwned + Validate>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let value: T = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let violations = value.validate();
    if violations.is_empty() {
        return Ok(value);
    }
    let mut message = format!("{}: invalid {what}:", path.display());
    for violation in violations {
        message.push_str(&format!("\n  - {violation}"));
    }
    Err(CliError::Input(message))
}

fn parse_rational(flag: &str, text: &str) -> Result<Rational, CliError> {
    text.parse()
        .map_err(|e| CliError::Input(format!("--{flag} {text}: {e}")))
}

struct Emitter {
    format: Format,
    output: Option<PathBuf>,
    meta: bool,
}

impl Emitter {
    fn emit<I: Serialize, R: Serialize>(
        &self,
        command: &str,
        inputs: I,
        result: R,
        warnings: Vec<String>,
        markdown_body: String,
    ) -> Result<(), CliError> {
        let text = match self.format {
            Format::Json => {
                let report = RunReport {
                    command: command.to_string(),
                    meta: self.meta.then(Meta::current),
                    inputs,
                    result,
                    warnings,
                };
                let mut json = serde_json::to_string_pretty(&report)
                    .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
                json.push('\n');
                json
            }
            Format::Markdown => format!("{}\n{markdown_body}", render::header(command, &warnings)),
        };
        match &self.output {
            Some(path) => fs::write(path, text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let emitter = Emitter {
        format: cli.format,
        output: cli.output.clone(),
        meta: !cli.no_meta,
    };
    match cli.command {
        Command::DerivePairwise(input) => {
            let profile: WeightedPreferenceProfile = load(&input.input, "profile")?;
            let matrix = voting::derive_pairwise(&profile)?;
            let warnings = reconciliation_warnings(&matrix);
            let markdown = render::pairwise_markdown(&matrix);
            emitter.emit(
                "derive-pairwise",
                ProfileInputs { profile },
                DeriveResult { matrix },
                warnings,
                markdown,
            )
        }
        Command::Vote(vote) => run_vote(vote, &emitter),
        Command::StableSets { input, threshold } => {
            let matrix: PairwiseMatrix = load(&input.input, "pairwise matrix")?;
            let threshold = parse_rational("threshold", &threshold)?;
            let relation = stable_sets::dominance_from_pairwise(&matrix, &threshold)?;
            let result = stable_sets::enumerate_stable_sets(&relation, DEFAULT_MAX_ALTERNATIVES)?;
            let markdown = render::stable_sets_markdown(&result);
            emitter.emit(
                "stable-sets",
                StableSetInputs { matrix, threshold },
                result,
                Vec::new(),
                markdown,
            )
        }
        Command::Game(game) => run_game(game, &emitter),
    }
}

fn run_vote(vote: VoteCommand, emitter: &Emitter) -> Result<(), CliError> {
    match vote {
        VoteCommand::Plurality(input) => {
            let profile: WeightedPreferenceProfile = load(&input.input, "profile")?;
            let tally = voting::plurality(&profile)?;
            let markdown = render::tally_markdown(&tally);
            emitter.emit(
                "vote plurality",
                ProfileInputs { profile },
                tally,
                Vec::new(),
                markdown,
            )
        }
        VoteCommand::Condorcet(input) => {
            let matrix: PairwiseMatrix = load(&input.input, "pairwise matrix")?;
            let analysis = voting::condorcet_analysis(&matrix);
            let markdown = render::condorcet_markdown(&analysis);
            emitter.emit(
                "vote condorcet",
                MatrixInputs { matrix },
                analysis,
                Vec::new(),
                markdown,
            )
        }
        VoteCommand::Agenda {
            input,
            agenda,
            tie_rule,
        } => {
            let matrix: PairwiseMatrix = load(&input.input, "pairwise matrix")?;
            let tie_rule = TieRule::from(tie_rule);
            let report = voting::agenda_elimination(&matrix, &agenda, tie_rule)?;
            let markdown = render::elimination_markdown(&report);
            emitter.emit(
                "vote agenda",
                AgendaInputs {
                    matrix,
                    agenda,
                    tie_rule,
                },
                report,
                Vec::new(),
                markdown,
            )
        }
        VoteCommand::Bracket {
            input,
            bracket,
            tie_rule,
        } => {
            let matrix: PairwiseMatrix = load(&input.input, "pairwise matrix")?;
            let bracket: Bracket = bracket
                .parse()
                .map_err(|e| CliError::Input(format!("--bracket: {e}")))?;
            let tie_rule = TieRule::from(tie_rule);
            let report = voting::bracket_elimination(&matrix, &bracket, tie_rule)?;
            let markdown = render::elimination_markdown(&report);
            emitter.emit(
                "vote bracket",
                BracketInputs {
                    matrix,
                    bracket,
                    tie_rule,
                },
                report,
                Vec::new(),
                markdown,
            )
        }
        VoteCommand::League { input, field } => {
            let matrix: PairwiseMatrix = load(&input.input, "pairwise matrix")?;
            let field =
                field.unwrap_or_else(|| matrix.ids().map(str::to_string).collect());
            let tally = voting::league_scores(&matrix, &field)?;
            let markdown = render::tally_markdown(&tally);
            emitter.emit(
                "vote league",
                LeagueInputs { matrix, field },
                tally,
                Vec::new(),
                markdown,
            )
        }
        VoteCommand::LeagueEliminate(input) => {
            let matrix: PairwiseMatrix = load(&input.input, "pairwise matrix")?;
            let report = voting::iterated_league_elimination(&matrix)?;
            let markdown = render::elimination_markdown(&report);
            emitter.emit(
                "vote league-eliminate",
                MatrixInputs { matrix },
                report,
                Vec::new(),
                markdown,
            )
        }
    }
}

fn run_game(game: GameCommand, emitter: &Emitter) -> Result<(), CliError> {
    match game {
        GameCommand::Solve {
            input,
            mode,
            tolerance,
            max_iter,
        } => {
            let matrix: MatrixGame = load(&input.input, "game")?;
            let mode = SolveMode::from(mode);
            let defaults = SolveConfig::default();
            let config = SolveConfig {
                tolerance: match tolerance {
                    Some(text) => parse_rational("tolerance", &text)?,
                    None => defaults.tolerance,
                },
                max_iterations: max_iter.unwrap_or(defaults.max_iterations),
            };
            let solution = games::solve(&matrix, mode, &config)?;
            let column_payoff = matrix.column_payoff(&solution.value);
            let markdown = render::solution_markdown(&solution, column_payoff.as_ref());
            emitter.emit(
                "game solve",
                SolveInputs {
                    game: matrix,
                    mode,
                    tolerance: config.tolerance,
                    max_iterations: config.max_iterations,
                },
                SolveResult {
                    solution,
                    column_payoff,
                },
                Vec::new(),
                markdown,
            )
        }
        GameCommand::Expand {
            input,
            informed,
            game_out,
        } => {
            let matrix: MatrixGame = load(&input.input, "game")?;
            let informed = Player::from(informed);
            let expansion = games::expand_one_sided_information(&matrix, informed)?;
            if let Some(path) = &game_out {
                let mut json = serde_json::to_string_pretty(&expansion.expanded)
                    .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
                json.push('\n');
                fs::write(path, json)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            }
            let markdown = render::expansion_markdown(&expansion);
            emitter.emit(
                "game expand",
                ExpandInputs {
                    game: matrix,
                    informed,
                },
                expansion,
                Vec::new(),
                markdown,
            )
        }
        GameCommand::Envelope {
            input,
            player,
            samples,
            csv_out,
        } => {
            let matrix: MatrixGame = load(&input.input, "game")?;
            let player = Player::from(player);
            let points = games::payoff_envelope(&matrix, player, samples)?;
            let breakpoints: Vec<_> = match games::envelope_breakpoint(&matrix, player)? {
                Some(parameter) => points
                    .iter()
                    .filter(|p| p.parameter == parameter)
                    .cloned()
                    .collect(),
                None => Vec::new(),
            };
            if let Some(path) = &csv_out {
                fs::write(path, render::envelope_csv(&points))
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            }
            let markdown = render::envelope_markdown(player, &points);
            emitter.emit(
                "game envelope",
                EnvelopeInputs {
                    game: matrix,
                    player,
                    samples,
                },
                EnvelopeResult {
                    player,
                    points,
                    breakpoints,
                },
                Vec::new(),
                markdown,
            )
        }
    }
}
