use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::af::{ArgSet, ArgumentId, ArgumentationFramework, Attack};
use crate::error::{Error, Result};
use crate::invariance::{self, AttackClassification, NamedWitness};
use crate::labelling::{self, Labelling};
use crate::oracle::{self, AuditOptions, AuditReport, ExtensionDiff};
use crate::par;
use crate::robustness::{self, RobustnessResult, SearchOptions, Strategy};
use crate::semantics::{self, ExtensionSet, SemanticsId};

use super::{apx, dot};

pub const SCHEMA: &str = "afrob/1";

#[derive(Debug, Parser)]
#[command(
    name = "afrob",
    version,
    about = "Argumentation semantics, invariant attacks and robustness"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for candidate classification and audits.
    #[arg(long, env = "AFROB_JOBS", global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Input {
    /// apx file, or `-` for standard input.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the extensions of a semantics.
    Extensions {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        semantics: SemanticsId,
    },
    /// List the labellings of a labelling-based semantics.
    Labellings {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        semantics: SemanticsId,
    },
    /// Classify a single candidate attack.
    CheckAttack {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        semantics: SemanticsId,
        /// Also recompute the extension sets and report the difference.
        #[arg(long)]
        oracle: bool,
        /// Scan only labellings of preferred extensions.
        #[arg(long)]
        preferred_only: bool,
    },
    /// List every new attack classified invariant.
    InvariantAttacks {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        semantics: SemanticsId,
        #[arg(long)]
        oracle: bool,
    },
    /// Local-expansion robustness degree.
    Robustness {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        semantics: SemanticsId,
        #[arg(long, default_value = "exhaustive")]
        strategy: Strategy,
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long)]
        paranoid: bool,
    },
    /// Compare the extensions of two frameworks over the same arguments.
    Equivalent {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        other: PathBuf,
        #[arg(long)]
        semantics: SemanticsId,
    },
    /// Cross-validate the predicates against the oracle on generated frameworks.
    Audit {
        #[arg(long = "args")]
        arguments: usize,
        #[arg(long)]
        semantics: SemanticsId,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        preferred_only: bool,
    },
    /// Render the framework as DOT, optionally coloured by the first labelling.
    Dot {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        semantics: Option<SemanticsId>,
    },
}

impl Command {
    fn reads_stdin(&self) -> bool {
        match self {
            Command::Equivalent { input, other, .. } => is_stdin(&input.input) || is_stdin(other),
            Command::Audit { .. } => false,
            Command::Extensions { input, .. }
            | Command::Labellings { input, .. }
            | Command::CheckAttack { input, .. }
            | Command::InvariantAttacks { input, .. }
            | Command::Robustness { input, .. }
            | Command::Dot { input, .. } => is_stdin(&input.input),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Extensions { .. } => "extensions",
            Command::Labellings { .. } => "labellings",
            Command::CheckAttack { .. } => "check-attack",
            Command::InvariantAttacks { .. } => "invariant-attacks",
            Command::Robustness { .. } => "robustness",
            Command::Equivalent { .. } => "equivalent",
            Command::Audit { .. } => "audit",
            Command::Dot { .. } => "dot",
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    command: &'a str,
    result: Value,
}

/// A command's output in both renderings.
struct Output {
    json: Value,
    text: String,
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Run the command line `argv` (including the program name). Returns the exit
/// status: 0 success, 1 usage, 2 parse error, 3 size limit, 4 internal error.
pub fn run_cli<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let command = cli.command.name();
    let mut stdin_text = None;
    if cli.command.reads_stdin() {
        let mut text = String::new();
        if let Err(e) = stdin.read_to_string(&mut text) {
            let _ = writeln!(stderr, "error: reading standard input: {e}");
            return 1;
        }
        stdin_text = Some(text);
    }
    let outcome = par::with_jobs(cli.jobs, || execute(&cli.command, stdin_text.as_deref()));
    match outcome {
        Ok(output) => {
            let written = match cli.format {
                Format::Json => {
                    let envelope = Envelope {
                        schema: SCHEMA,
                        command,
                        result: output.json,
                    };
                    serde_json::to_string_pretty(&envelope)
                        .map_err(std::io::Error::other)
                        .and_then(|s| writeln!(stdout, "{s}"))
                }
                Format::Text => stdout.write_all(output.text.as_bytes()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    1
                }
            }
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

fn is_stdin(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn read_framework(path: &Path, stdin: Option<&str>) -> Result<ArgumentationFramework, Failure> {
    let text = match stdin {
        Some(text) if is_stdin(path) => text.to_string(),
        _ => std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("reading {}: {e}", path.display())))?,
    };
    Ok(apx::parse_apx(&text)?)
}

fn braces(names: &[ArgumentId]) -> String {
    let parts: Vec<&str> = names.iter().map(ArgumentId::as_str).collect();
    format!("{{{}}}", parts.join(","))
}

fn set_text(af: &ArgumentationFramework, set: ArgSet) -> String {
    braces(&af.names_of(set))
}

fn extension_list_text(af: &ArgumentationFramework, sets: &ExtensionSet) -> String {
    let parts: Vec<String> = sets.iter().map(|s| set_text(af, s)).collect();
    format!("[{}]", parts.join(", "))
}

fn labelling_json(af: &ArgumentationFramework, l: &Labelling) -> Value {
    json!(l.to_named(af))
}

fn labelling_text(af: &ArgumentationFramework, l: &Labelling) -> String {
    format!(
        "in={} out={} undec={}",
        set_text(af, l.in_set()),
        set_text(af, l.out_set()),
        set_text(af, l.undec_set())
    )
}

fn diff_json(af: &ArgumentationFramework, diff: &ExtensionDiff) -> Value {
    json!({
        "lost": diff.lost.to_names(af),
        "gained": diff.gained.to_names(af),
    })
}

fn classification_json(af: &ArgumentationFramework, c: &AttackClassification) -> Value {
    let witnesses: Vec<NamedWitness> = c.witnesses.iter().map(|w| w.to_named(af)).collect();
    json!({
        "attack": c.attack,
        "semantics": c.semantics,
        "verdict": c.verdict,
        "witnesses": witnesses,
    })
}

fn classification_text(af: &ArgumentationFramework, c: &AttackClassification) -> String {
    let mut out = format!("attack {} [{}]: {}\n", c.attack, c.semantics, c.verdict);
    for w in &c.witnesses {
        out.push_str(&format!(
            "  {} on in(L)={}",
            w.bullet,
            set_text(af, w.in_set)
        ));
        if let Some(p) = w.pivot {
            out.push_str(&format!(" c={}", af.name(p)));
        }
        out.push('\n');
    }
    out
}

fn robustness_json(r: &RobustnessResult) -> Value {
    json!({
        "degree": r.degree,
        "witness": r.witness,
        "explored_states": r.explored_states,
        "strategy": r.strategy,
        "capped": r.capped,
    })
}

fn robustness_text(r: &RobustnessResult) -> String {
    let steps: Vec<String> = r.witness.iter().map(Attack::to_string).collect();
    format!(
        "degree: {}{}\nwitness: [{}]\nexplored_states: {}\nstrategy: {}\n",
        r.degree,
        if r.capped {
            " (lower bound, step cap reached)"
        } else {
            ""
        },
        steps.join(", "),
        r.explored_states,
        r.strategy
    )
}

fn audit_text(r: &AuditReport) -> String {
    let mut out = format!(
        "audit n={} semantics={} mode={}{}\nframeworks: {}\ncandidates: {}\ndisagreements: {} (false alarms {}, misses {})\n",
        r.arguments,
        r.semantics.map(|s| s.as_str()).unwrap_or("-"),
        if r.exhaustive { "exhaustive" } else { "sampled" },
        r.seed.map(|s| format!(" seed={s}")).unwrap_or_default(),
        r.frameworks,
        r.candidates,
        r.disagreements,
        r.false_alarms,
        r.misses,
    );
    for (bullet, count) in &r.by_bullet {
        out.push_str(&format!("  {bullet}: {count}\n"));
    }
    out
}

fn execute(command: &Command, stdin: Option<&str>) -> Result<Output, Failure> {
    Ok(match command {
        Command::Extensions { input, semantics } => {
            let af = read_framework(&input.input, stdin)?;
            let sets = semantics::extensions(&af, *semantics)?;
            let text: String = sets.iter().map(|s| set_text(&af, s) + "\n").collect();
            Output {
                json: json!({ "semantics": semantics, "extensions": sets.to_names(&af) }),
                text,
            }
        }
        Command::Labellings { input, semantics } => {
            let af = read_framework(&input.input, stdin)?;
            let labs = labelling::labellings_for(&af, *semantics)?;
            Output {
                json: json!({
                    "semantics": semantics,
                    "labellings": labs.iter().map(|l| labelling_json(&af, l)).collect::<Vec<_>>(),
                }),
                text: labs.iter().map(|l| labelling_text(&af, l) + "\n").collect(),
            }
        }
        Command::CheckAttack {
            input,
            from,
            to,
            semantics,
            oracle,
            preferred_only,
        } => {
            let af = read_framework(&input.input, stdin)?;
            let attack = Attack {
                source: ArgumentId::new(from.as_str())?,
                target: ArgumentId::new(to.as_str())?,
            };
            let c = invariance::classify_attack(&af, &attack, *semantics, *preferred_only)?;
            let mut json = classification_json(&af, &c);
            let mut text = classification_text(&af, &c);
            if *oracle {
                let diff = oracle::extension_diff(&af, &attack, *semantics)?;
                let invariant = diff.is_empty();
                let mut o = diff_json(&af, &diff);
                o["invariant"] = json!(invariant);
                o["agrees"] = json!(invariant == c.verdict.is_invariant());
                json["oracle"] = o;
                text.push_str(&format!(
                    "oracle: invariant={} lost={} gained={}\n",
                    invariant,
                    extension_list_text(&af, &diff.lost),
                    extension_list_text(&af, &diff.gained)
                ));
            }
            Output { json, text }
        }
        Command::InvariantAttacks {
            input,
            semantics,
            oracle,
        } => {
            let af = read_framework(&input.input, stdin)?;
            let attacks = invariance::enumerate_invariant_attacks(&af, *semantics)?;
            let mut json = json!({ "semantics": semantics, "attacks": attacks });
            let mut text: String = attacks.iter().map(|a| format!("{a}\n")).collect();
            if *oracle {
                let before = semantics::extensions(&af, *semantics)?;
                let mut confirmed = Vec::new();
                for (s, t) in af.candidate_pairs() {
                    let after = semantics::extensions(&af.with_attack_indices(s, t), *semantics)?;
                    if after == before {
                        confirmed.push(af.attack_at(s, t));
                    }
                }
                let agrees = confirmed == attacks;
                json["oracle"] = json!({ "attacks": confirmed, "agrees": agrees });
                let listed: Vec<String> = confirmed.iter().map(Attack::to_string).collect();
                text.push_str(&format!(
                    "oracle: [{}] agrees={}\n",
                    listed.join(", "),
                    agrees
                ));
            }
            Output { json, text }
        }
        Command::Robustness {
            input,
            semantics,
            strategy,
            max_steps,
            paranoid,
        } => {
            let af = read_framework(&input.input, stdin)?;
            let mut options = SearchOptions::new(*strategy);
            options.max_steps = *max_steps;
            options.paranoid = *paranoid;
            let r = robustness::robustness_with(&af, *semantics, &options)?;
            Output {
                json: robustness_json(&r),
                text: robustness_text(&r),
            }
        }
        Command::Equivalent {
            input,
            other,
            semantics,
        } => {
            let af = read_framework(&input.input, stdin)?;
            let af2 = read_framework(other, stdin)?;
            let diff = oracle::diff_between(&af, &af2, *semantics)?;
            let equivalent = diff.is_empty();
            let mut json = diff_json(&af, &diff);
            json["equivalent"] = json!(equivalent);
            json["semantics"] = json!(semantics);
            Output {
                json,
                text: format!(
                    "equivalent: {}\nlost: {}\ngained: {}\n",
                    equivalent,
                    extension_list_text(&af, &diff.lost),
                    extension_list_text(&af, &diff.gained)
                ),
            }
        }
        Command::Audit {
            arguments,
            semantics,
            seed,
            samples,
            preferred_only,
        } => {
            let options = AuditOptions {
                seed: *seed,
                samples: *samples,
                use_preferred_only: *preferred_only,
                ..Default::default()
            };
            let report = oracle::exhaustive_audit(*arguments, *semantics, &options)?;
            Output {
                json: report.to_json(),
                text: audit_text(&report),
            }
        }
        Command::Dot { input, semantics } => {
            let af = read_framework(&input.input, stdin)?;
            let labelling = match semantics {
                Some(s) => labelling::labellings_for(&af, *s)?.into_iter().next(),
                None => None,
            };
            let text = dot::emit_dot(&af, labelling.as_ref())?;
            Output {
                json: json!({ "dot": text }),
                text,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("afrob").chain(args.iter().copied());
        let code = run_cli(argv, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    const G3: &str = "arg(1).\narg(2).\narg(3).\narg(4).\natt(1,2).\natt(2,3).\n";

    #[test]
    fn extensions_text() {
        let (code, out, _) = run(&["extensions", "--semantics", "adm", "--input", "-"], G3);
        assert_eq!(code, 0);
        assert_eq!(out, "{}\n{1}\n{4}\n{1,3}\n{1,4}\n{1,3,4}\n");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(
            run(&["extensions", "--semantics", "ideal", "--input", "-"], G3).0,
            1
        );
        assert_eq!(run(&["frobnicate"], "").0, 1);
        assert_eq!(
            run(
                &[
                    "check-attack",
                    "--from",
                    "1",
                    "--to",
                    "9",
                    "--semantics",
                    "adm",
                    "--input",
                    "-"
                ],
                G3
            )
            .0,
            1
        );
        assert_eq!(
            run(&["labellings", "--semantics", "adm", "--input", "-"], G3).0,
            1
        );
        assert_eq!(
            run(
                &[
                    "extensions",
                    "--semantics",
                    "adm",
                    "--input",
                    "/no/such/file.apx"
                ],
                ""
            )
            .0,
            1
        );
    }

    #[test]
    fn parse_errors_exit_two() {
        let (code, _, err) = run(
            &["extensions", "--semantics", "cf", "--input", "-"],
            "arg(x).\natt(x,y).\n",
        );
        assert_eq!(code, 2);
        assert!(err.contains("line 2"));
        assert_eq!(
            run(
                &["extensions", "--semantics", "cf", "--input", "-"],
                "arg(x\n"
            )
            .0,
            2
        );
    }

    #[test]
    fn size_limit_exits_three() {
        let text: String = (0..25).map(|i| format!("arg(a{i}).\n")).collect();
        assert_eq!(
            run(&["extensions", "--semantics", "cf", "--input", "-"], &text).0,
            3
        );
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("check-attack"));
    }
}
