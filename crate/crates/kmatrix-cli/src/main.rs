mod commands;
mod config;
mod error;
mod instance;
mod suite;

use clap::{Args, Parser, Subcommand};
use error::CliError;
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "kmatrix",
    about = "Exact K0/K1 verdicts for matrix subrings of finite rings",
    version,
    disable_version_flag = false
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Pretty-print JSON output (compact is the default).
    #[arg(long, global = true)]
    pretty: bool,
    /// Config file with caps.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Largest ring order enumerated for units.
    #[arg(long, global = true)]
    unit_cap: Option<u128>,
    /// Largest element-pair sweep for K1 relation generation.
    #[arg(long, global = true)]
    pair_budget: Option<u128>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the declared shape's hypotheses on an instance file.
    Check(FileArg),
    /// Build the declared pattern and emit the constructed ring.
    Build(FileArg),
    /// Verify a decomposition rule on an instance.
    Verify(VerifyArgs),
    /// Construct the Milnor square of an instance and check exactness.
    Mv(FileArg),
    /// GV certificate for a named ideal of an instance.
    Gv(GvArgs),
    /// Symbolic K-expression rewriting and evaluation.
    Ksym(KsymArgs),
    /// Run a manifest of instances in parallel.
    Suite(SuiteArgs),
    /// Print version and configured defaults.
    Defaults,
}

#[derive(Args)]
struct FileArg {
    /// Instance file (JSON).
    #[arg(long)]
    instance: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Rule id (for example cor4.6t, thm1.1s, lem4.2, prop7.2).
    #[arg(long)]
    rule: String,
    #[arg(long)]
    instance: String,
    /// Comma-separated degrees, e.g. 0,1.
    #[arg(long, default_value = "0,1")]
    degrees: String,
    /// integral, Z[1/s], or mod-p.
    #[arg(long, default_value = "integral")]
    mode: String,
    /// Instance id used in reports.
    #[arg(long, default_value = "instance")]
    id: String,
}

#[derive(Args)]
struct GvArgs {
    #[arg(long)]
    instance: String,
    /// Name of the ideal declared in the instance file.
    #[arg(long)]
    ideal: String,
}

#[derive(Args)]
struct KsymArgs {
    /// Starting expression label.
    #[arg(long)]
    expr: Option<String>,
    /// Rule to apply; repeatable, pairs with --bind in order.
    #[arg(long = "apply")]
    apply: Vec<String>,
    /// Binding JSON for the matching --apply.
    #[arg(long = "bind")]
    bind: Vec<String>,
    /// Evaluate the final expression at this degree.
    #[arg(long)]
    eval: Option<u32>,
    /// integral, Z[1/s], or mod-p.
    #[arg(long, default_value = "integral")]
    mode: String,
    /// Fact table JSON (defaults to the shipped table).
    #[arg(long)]
    facts: Option<String>,
    /// Run the endomorphism-ring worked example for this prime.
    #[arg(long)]
    example: Option<u64>,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    manifest: String,
}

fn emit(value: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        serde_json::to_string(value).expect("serializable")
    };
    println!("{text}");
}

fn run(cli: &Cli) -> Result<(Value, bool), CliError> {
    let caps = config::resolve_caps(
        cli.config.as_deref(),
        cli.unit_cap,
        cli.pair_budget,
    )?;
    match &cli.command {
        Command::Check(a) => commands::cmd_check(&a.instance),
        Command::Build(a) => commands::cmd_build(&a.instance),
        Command::Verify(a) => {
            let degrees = commands::parse_degrees(&a.degrees)?;
            let mode = commands::parse_mode(&a.mode)?;
            commands::cmd_verify(&a.rule, &a.instance, &degrees, &mode, &a.id, &caps)
        }
        Command::Mv(a) => commands::cmd_mv(&a.instance, &caps),
        Command::Gv(a) => commands::cmd_gv(&a.instance, &a.ideal),
        Command::Ksym(a) => {
            if a.apply.len() != a.bind.len() {
                return Err(CliError::Input(
                    "each --apply needs a matching --bind".into(),
                ));
            }
            let mode = commands::parse_mode(&a.mode)?;
            let pairs: Vec<(String, String)> = a
                .apply
                .iter()
                .cloned()
                .zip(a.bind.iter().cloned())
                .collect();
            commands::cmd_ksym(
                a.expr.as_deref(),
                &pairs,
                a.eval,
                &mode,
                a.facts.as_deref(),
                a.example,
            )
        }
        Command::Suite(a) => {
            let (value, ok, _caps_hit) = suite::cmd_suite(&a.manifest, &caps)?;
            Ok((value, ok))
        }
        Command::Defaults => Ok((
            serde_json::json!({
                "version": env!("CARGO_PKG_VERSION"),
                "defaults": config::describe_defaults(),
            }),
            true,
        )),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, pass)) => {
            emit(&value, cli.pretty);
            std::process::exit(if pass { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}
