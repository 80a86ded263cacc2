//! Human-readable rendering: markdown tables mirroring the shapes of the
//! bundled fixtures, and the envelope CSV for external plotting.

use std::fmt::Write;

use contest_core::games::{EnvelopePoint, InformationExpansion, Player};
use contest_core::model::{GameSolution, MatrixGame, PairwiseMatrix};
use contest_core::rational::Rational;
use contest_core::stable_sets::StableSetResult;
use contest_core::voting::{CondorcetAnalysis, EliminationReport, RoundDetail, TallyResult};

pub fn header(command: &str, warnings: &[String]) -> String {
    let mut out = format!("# {command}\n");
    if !warnings.is_empty() {
        out.push_str("\n## Warnings\n\n");
        for warning in warnings {
            let _ = writeln!(out, "- {warning}");
        }
    }
    out
}

pub fn pairwise_markdown(matrix: &PairwiseMatrix) -> String {
    let ids: Vec<&str> = matrix.ids().collect();
    let mut out = String::new();
    let _ = write!(out, "| |");
    for id in &ids {
        let _ = write!(out, " {id} |");
    }
    out.push('\n');
    let _ = write!(out, "|---|");
    for _ in &ids {
        let _ = write!(out, "---|");
    }
    out.push('\n');
    for x in &ids {
        let _ = write!(out, "| **{x}** |");
        for y in &ids {
            if x == y {
                let _ = write!(out, " |");
            } else {
                match matrix.support(x, y) {
                    Some(s) => {
                        let _ = write!(out, " {s}% |");
                    }
                    None => {
                        let _ = write!(out, " ? |");
                    }
                }
            }
        }
        out.push('\n');
    }
    out
}

pub fn tally_markdown(tally: &TallyResult) -> String {
    let mut rows: Vec<(&String, &Rational)> = tally.scores.iter().collect();
    rows.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
    let mut out = String::from("| place | alternative | score |\n|---|---|---|\n");
    for (place, (id, score)) in rows.iter().enumerate() {
        let _ = writeln!(out, "| {} | {id} | {score} |", place + 1);
    }
    let _ = writeln!(out, "\nwinners: {}", tally.winners.join(", "));
    out
}

pub fn elimination_markdown(report: &EliminationReport) -> String {
    let mut out = String::new();
    for (i, round) in report.rounds.iter().enumerate() {
        let _ = writeln!(out, "## Round {}\n", i + 1);
        let _ = writeln!(out, "field: {}\n", round.field.join(", "));
        match &round.detail {
            RoundDetail::Matches(matches) => {
                for m in matches {
                    let verdict = match m.winner() {
                        Some(w) => format!("{w} advances"),
                        None => "tie".to_string(),
                    };
                    let _ = writeln!(
                        out,
                        "- {} vs {}: {}:{} — {verdict}",
                        m.left, m.right, m.left_support, m.right_support
                    );
                }
            }
            RoundDetail::Scores(tally) => out.push_str(&tally_markdown(tally)),
        }
        if !round.eliminated.is_empty() {
            let _ = writeln!(out, "\neliminated: {}", round.eliminated.join(", "));
        }
        out.push('\n');
    }
    match &report.outcome {
        contest_core::voting::ContestOutcome::Winner(id) => {
            let _ = writeln!(out, "**winner: {id}**");
        }
        contest_core::voting::ContestOutcome::Tie(ids) => {
            let _ = writeln!(out, "**tie between {}**", ids.join(", "));
        }
    }
    out
}

pub fn condorcet_markdown(analysis: &CondorcetAnalysis) -> String {
    let mut out = String::new();
    match &analysis.winner {
        Some(id) => {
            let _ = writeln!(out, "winner: {id} (beats every rival outright)");
        }
        None => {
            let _ = writeln!(out, "no alternative beats every rival outright");
        }
    }
    match &analysis.cycle {
        Some(cycle) => {
            let _ = writeln!(
                out,
                "majority cycle: {} → {}",
                cycle.join(" → "),
                cycle[0]
            );
        }
        None => {
            let _ = writeln!(out, "no majority cycle");
        }
    }
    out
}

pub fn stable_sets_markdown(result: &StableSetResult) -> String {
    let mut out = String::from("## Dominance edges\n\n");
    if result.relation.edges.is_empty() {
        out.push_str("(none)\n");
    }
    for (x, y) in &result.relation.edges {
        let _ = writeln!(out, "- {x} → {y}");
    }
    out.push_str("\n## Stable sets\n\n");
    if result.stable_sets.is_empty() {
        out.push_str("(none)\n");
    }
    for (members, certificate) in result.stable_sets.iter().zip(&result.certificates) {
        let _ = writeln!(out, "- {{{}}}", members.join(", "));
        for (outside, inside) in certificate {
            let _ = writeln!(out, "  - {inside} covers {outside}");
        }
    }
    out
}

pub fn solution_markdown(solution: &GameSolution, column_payoff: Option<&Rational>) -> String {
    let mut out = String::new();
    let kind = match solution.kind {
        contest_core::model::SolutionKind::PureSaddle => "pure saddle point",
        contest_core::model::SolutionKind::MixedExact => "exact mixed equilibrium",
        contest_core::model::SolutionKind::MixedApproximate => "approximate mixed solution",
    };
    let _ = writeln!(out, "kind: {kind}");
    let _ = writeln!(out, "value: {} (epsilon {})", solution.value, solution.epsilon);
    if let Some(share) = column_payoff {
        let _ = writeln!(out, "column player's share: {share}");
    }
    let strategy_line = |s: &contest_core::model::MixedStrategy| {
        s.labels
            .iter()
            .zip(&s.probabilities)
            .map(|(l, p)| format!("{l}: {p}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let _ = writeln!(out, "row strategy: {}", strategy_line(&solution.row_strategy));
    let _ = writeln!(out, "column strategy: {}", strategy_line(&solution.col_strategy));
    out
}

pub fn game_markdown(game: &MatrixGame) -> String {
    let mut out = String::from("| |");
    for col in &game.col_labels {
        let _ = write!(out, " {col} |");
    }
    out.push_str("\n|---|");
    for _ in &game.col_labels {
        out.push_str("---|");
    }
    out.push('\n');
    for (i, row) in game.row_labels.iter().enumerate() {
        let _ = write!(out, "| **{row}** |");
        for j in 0..game.cols() {
            let _ = write!(out, " {} |", game.payoff(i, j));
        }
        out.push('\n');
    }
    if let Some(total) = &game.constant_sum {
        let _ = writeln!(out, "\nconstant sum: {total}");
    }
    out
}

pub fn expansion_markdown(expansion: &InformationExpansion) -> String {
    let side = match expansion.informed {
        Player::Row => "row",
        Player::Column => "column",
    };
    let mut out = format!("informed player: {side}\n\n## Expanded game\n\n");
    out.push_str(&game_markdown(&expansion.expanded));
    out
}

pub fn envelope_markdown(player: Player, points: &[EnvelopePoint]) -> String {
    let parameter = match player {
        Player::Row => "p",
        Player::Column => "q",
    };
    let mut out = format!("| {parameter} | value | active reply |\n|---|---|---|\n");
    for point in points {
        let _ = writeln!(
            out,
            "| {} | {} | {} |",
            point.parameter, point.value, point.active_response
        );
    }
    out
}

fn csv_field(value: &str) -> String {
    if value.contains(',') || value.contains('"') || value.contains('\n') {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

/// `parameter,value,active_response` rows with exact rationals.
pub fn envelope_csv(points: &[EnvelopePoint]) -> String {
    let mut out = String::from("parameter,value,active_response\n");
    for point in points {
        let _ = writeln!(
            out,
            "{},{},{}",
            point.parameter,
            point.value,
            csv_field(&point.active_response)
        );
    }
    out
}
