//! `locald` — the command-line front end of the laboratory.
//!
//! Subcommands: `decide`, `verify`, `gadget`, `fool`, `search`, `table`,
//! `enumerate`. Every run is deterministic given `--seed` (or the
//! `LOCALD_SEED` environment variable). Exit codes: 0 when the requested
//! check passes, 1 when a property fails, 2 on usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use locald::algo::{decider_for, default_soundness_space, verifier_for};
use locald::cert::{make_certificate, CertificateVector};
use locald::gadget::{
    partition_gadget, splice_cycle_from_path, splice_path_length, strawman_eqsize_certificates,
    strawman_eqsize_verifier, strawman_tree_certificates, strawman_tree_verifier,
    transplant_attack, tree_pair_gadget, PartitionGadget,
};
use locald::graph::io::{parse_configuration, write_configuration};
use locald::graph::{
    cycle, enumerate_instances, path, Configuration, IdAssignment, IdStrategy, InstanceKind,
};
use locald::lang::{language_instances, member, LanguageId};
use locald::report::measure_certificate_sizes;
use locald::runtime::{
    check_decides, check_verifies, run_verifier, LocalDecider, LocalVerifier, VerificationSetup,
};
use locald::search::{min_cert_size, soundness_search, CertSpace, LiftCodec, SearchOptions};

#[derive(Parser)]
#[command(
    name = "locald",
    version,
    about = "Desk-scale laboratory for local decision and certificate verification",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a decider against a language over all small instance classes
    Decide(DecideArgs),
    /// Check a verifier for completeness and soundness over small instances
    Verify(VerifyArgs),
    /// Build separating instances and write them as configuration files
    Gadget {
        #[command(subcommand)]
        which: GadgetCmd,
    },
    /// Run certificate-transplant attacks against under-resourced schemes
    Fool {
        #[command(subcommand)]
        which: FoolCmd,
    },
    /// Hunt for minimal certificates or soundness counterexamples
    Search {
        #[command(subcommand)]
        which: SearchCmd,
    },
    /// Measure certificate sizes across the catalog and render the table
    Table(TableArgs),
    /// Enumerate instance classes at a given size
    Enumerate(EnumerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum IdsArg {
    /// All permutations of {1..n} for n <= 5, twenty seeded samples beyond
    Auto,
    /// Every permutation of {1..n} (exhaustive; keep n small)
    All,
    /// Twenty seeded injective assignments into {1..n^2}
    Sampled,
}

impl IdsArg {
    fn strategy(self, n: usize, seed: u64) -> IdStrategy {
        match self {
            IdsArg::Auto => IdStrategy::auto(n, seed),
            IdsArg::All => IdStrategy::AllPermutations,
            IdsArg::Sampled => IdStrategy::Sampled { count: 20, seed },
        }
    }
}

#[derive(Args)]
struct DecideArgs {
    /// Algorithm id, e.g. `decider:tree_t:1`
    #[arg(long)]
    alg: String,
    /// Language name, e.g. `tree_t:1`
    #[arg(long)]
    lang: String,
    /// Sweep instance sizes 1..=max-n (class enumeration caps at 7)
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    #[arg(long, value_enum, default_value_t = IdsArg::Auto)]
    ids: IdsArg,
    #[arg(long, env = "LOCALD_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verifier id, e.g. `verifier:tree` or `verifier:eq-size-partition`
    #[arg(long)]
    ver: String,
    /// Language name, e.g. `tree`
    #[arg(long)]
    lang: String,
    /// Sweep instance sizes 1..=max-n (class enumeration caps at 7)
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    /// Certificate space for soundness: `auto`, `values:<max>`, `bits:<max>`,
    /// `lift-tree`, or `lift-quotient`
    #[arg(long, default_value = "auto")]
    space: String,
    /// Candidate budget per soundness search
    #[arg(long, default_value_t = 2_000_000)]
    max_candidates: usize,
    #[arg(long, value_enum, default_value_t = IdsArg::Auto)]
    ids: IdsArg,
    #[arg(long, env = "LOCALD_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// The (2t+1)-node path and (2t+2)-node cycle no radius-t rule separates
    Pathcycle {
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Two input-carrying path blobs joined by a corridor
    Partition {
        #[arg(long)]
        left_size: usize,
        #[arg(long)]
        right_size: usize,
        /// Input bit worn by every left-blob node
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        left_input: u8,
        /// Input bit worn by every right-blob node
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        right_input: u8,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Two equal-sized trees joined by an even corridor at chosen nodes
    Treepair {
        /// Configuration file holding the left tree
        #[arg(long)]
        left: PathBuf,
        /// Configuration file holding the right tree
        #[arg(long)]
        right: PathBuf,
        /// Attachment node in the left tree
        #[arg(long, default_value_t = 0)]
        v1: usize,
        /// Attachment node in the right tree
        #[arg(long, default_value_t = 0)]
        v2: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Splice a k-bit-certified path into a certified cycle and emit both
    Splice {
        /// Certificate width of the scheme under attack (0 or 1)
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        k: u8,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeScheme {
    /// k-bit position counters (too short to be sound)
    Strawman,
    /// the shipped distance labels
    Honest,
}

#[derive(Clone, Copy, ValueEnum)]
enum PartitionScheme {
    /// 19-bit blob summaries with 2-bit corridor counters (too short)
    Summary,
    /// the shipped quotient certificates
    Quotient,
}

#[derive(Subcommand)]
enum FoolCmd {
    /// Splice a certified path into a cycle the same rule accepts
    Tree {
        /// Certificate width of the scheme under attack (0 or 1)
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        k: u8,
        #[arg(long, value_enum, default_value_t = TreeScheme::Strawman)]
        scheme: TreeScheme,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transplant corridor certificates between two accepted gadgets
    Partition {
        /// Blob pool: one representative per connected class of this size
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(1..=6))]
        pool_n: u8,
        #[arg(long, value_enum, default_value_t = PartitionScheme::Summary)]
        scheme: PartitionScheme,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Smallest maximum certificate length that convinces every node
    MinCert {
        /// Configuration file (text or JSON form)
        #[arg(long)]
        config: PathBuf,
        /// Verifier id, e.g. `verifier:bipartite`
        #[arg(long)]
        ver: String,
        #[arg(long, default_value_t = 8)]
        max_bits: usize,
        #[arg(long, default_value_t = 2_000_000)]
        max_candidates: usize,
        #[arg(long, value_enum, default_value_t = IdsArg::Auto)]
        ids: IdsArg,
        #[arg(long, env = "LOCALD_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hunt a certificate space for a vector every node accepts
    Soundness {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        ver: String,
        /// `values:<max>`, `bits:<max>`, `lift-tree`, or `lift-quotient`
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 2_000_000)]
        max_candidates: usize,
        #[arg(long, value_enum, default_value_t = IdsArg::Auto)]
        ids: IdsArg,
        #[arg(long, env = "LOCALD_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, env = "LOCALD_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    format: TableFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    /// One representative per isomorphism class of connected graphs
    Connected,
    /// One representative per isomorphism class of trees
    Trees,
    /// Every labeled tree, one per sequence
    LabeledTrees,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    kind: EnumKind,
    #[arg(long)]
    n: usize,
    /// Print every instance as one JSON line instead of just the count
    #[arg(long)]
    list: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let outcome = match cli.command {
        Command::Decide(args) => cmd_decide(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Gadget { which } => cmd_gadget(which),
        Command::Fool { which } => cmd_fool(which),
        Command::Search { which } => cmd_search(which),
        Command::Table(args) => cmd_table(args),
        Command::Enumerate(args) => cmd_enumerate(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------------
// shared plumbing

fn parse_language(s: &str) -> Result<LanguageId, String> {
    LanguageId::parse_cli(s).ok_or_else(|| {
        format!(
            "unknown language `{s}` (expected tree, tree_t:<t>, fpf-sym-trees, \
             eq-size-partition, or bipartite)"
        )
    })
}

/// Resolves `verifier:<lang>` / `decider:<lang>` ids. The short aliases
/// `fpf` and `eqsize` are accepted alongside the full language names.
fn resolve_verifier(name: &str) -> Result<LocalVerifier, String> {
    let lang_part = name
        .strip_prefix("verifier:")
        .or_else(|| name.strip_prefix("decider:"))
        .unwrap_or(name);
    let lang = match lang_part {
        "fpf" => Some(LanguageId::FpfSymmetryOnTrees),
        "eqsize" => Some(LanguageId::EqSizePartition),
        other => LanguageId::parse_cli(other),
    }
    .ok_or_else(|| format!("unknown verifier `{name}`"))?;
    Ok(verifier_for(lang))
}

fn resolve_decider(name: &str) -> Result<LocalDecider, String> {
    let lang_part = name.strip_prefix("decider:").unwrap_or(name);
    let lang = parse_language(lang_part)
        .map_err(|_| format!("unknown decider `{name}` (expected decider:tree_t:<t>)"))?;
    decider_for(lang).ok_or_else(|| {
        format!("`{name}` has no decider; only the radius-bounded tree languages have one")
    })
}

fn parse_space(spec: &str, lang: Option<LanguageId>, n: usize) -> Result<CertSpace, String> {
    if spec == "auto" {
        return match lang {
            Some(lang) => Ok(default_soundness_space(lang, n)),
            None => Err("`auto` needs a language; name the space explicitly".to_string()),
        };
    }
    if spec == "lift-tree" {
        return Ok(CertSpace::StructuredLift {
            max_quotient_size: n,
            codec: LiftCodec::TreeCode,
        });
    }
    if spec == "lift-quotient" {
        return Ok(CertSpace::StructuredLift {
            max_quotient_size: n,
            codec: LiftCodec::QuotientCode,
        });
    }
    if let Some(v) = spec.strip_prefix("values:") {
        let max: u64 = v.parse().map_err(|_| format!("bad value bound `{v}`"))?;
        return Ok(CertSpace::DistanceLabels(max));
    }
    if let Some(v) = spec.strip_prefix("bits:") {
        let max: usize = v.parse().map_err(|_| format!("bad bit bound `{v}`"))?;
        return Ok(CertSpace::AllBitstringsUpTo(max));
    }
    Err(format!(
        "unknown space `{spec}` (expected auto, values:<max>, bits:<max>, lift-tree, or \
         lift-quotient)"
    ))
}

fn load_configuration(path: &Path) -> Result<Configuration, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_configuration(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn check_sweep_cap(max_n: usize) -> Result<(), String> {
    if max_n > 7 {
        return Err(
            "class sweeps cap at --max-n 7; size-8 connected-class enumeration is out of desk \
             scale"
                .to_string(),
        );
    }
    Ok(())
}

/// Writes to the file when `--out` was given, otherwise to stdout. A
/// downstream pipe closing early (`locald ... | head`) ends the run
/// quietly instead of failing it.
fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout().lock(), "{}", text.trim_end()) {
                Ok(()) => Ok(()),
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {
                    std::process::exit(0);
                }
                Err(e) => Err(format!("cannot write to stdout: {e}")),
            }
        }
    }
}

fn emit_json(out: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    emit(out, &text)
}

fn write_cfg(dir: &Path, name: &str, config: &Configuration) -> Result<String, String> {
    let file = dir.join(name);
    fs::write(&file, write_configuration(config))
        .map_err(|e| format!("cannot write {}: {e}", file.display()))?;
    Ok(file.display().to_string())
}

fn hex_certs(certs: &CertificateVector) -> Vec<String> {
    certs.iter().map(|c| c.to_hex()).collect()
}

// ---------------------------------------------------------------------------
// subcommands

fn cmd_decide(args: DecideArgs) -> Result<bool, String> {
    check_sweep_cap(args.max_n)?;
    let decider = resolve_decider(&args.alg)?;
    let lang = parse_language(&args.lang)?;
    let mut per_n = Vec::new();
    let mut passed = true;
    for n in 1..=args.max_n {
        let instances = language_instances(lang, n).map_err(|e| e.to_string())?;
        let report = check_decides(&decider, lang, &instances, &args.ids.strategy(n, args.seed));
        passed &= report.passed;
        per_n.push(serde_json::json!({
            "n": n,
            "report": serde_json::to_value(&report).expect("reports serialize"),
        }));
    }
    emit_json(
        &args.out,
        &serde_json::json!({
            "algorithm": decider.name,
            "language": lang.cli_name(),
            "maxN": args.max_n,
            "passed": passed,
            "perN": per_n,
        }),
    )?;
    Ok(passed)
}

fn cmd_verify(args: VerifyArgs) -> Result<bool, String> {
    check_sweep_cap(args.max_n)?;
    let verifier = resolve_verifier(&args.ver)?;
    let lang = parse_language(&args.lang)?;
    let prover = |c: &Configuration| make_certificate(lang, c);
    let options = SearchOptions {
        max_candidates: args.max_candidates,
        ..SearchOptions::default()
    };
    let mut per_n = Vec::new();
    let mut passed = true;
    for n in 1..=args.max_n {
        let instances = language_instances(lang, n).map_err(|e| e.to_string())?;
        let space = parse_space(&args.space, Some(lang), n)?;
        let setup = VerificationSetup {
            verifier: &verifier,
            language: lang,
            prover: &prover,
            soundness_space: &space,
            id_strategy: args.ids.strategy(n, args.seed),
            options: options.clone(),
        };
        let report = check_verifies(&setup, &instances).map_err(|e| {
            format!("{e}; raise --max-candidates or narrow --space (n={n})")
        })?;
        passed &= report.passed;
        per_n.push(serde_json::json!({
            "n": n,
            "report": serde_json::to_value(&report).expect("reports serialize"),
        }));
    }
    emit_json(
        &args.out,
        &serde_json::json!({
            "verifier": verifier.name,
            "language": lang.cli_name(),
            "maxN": args.max_n,
            "space": args.space,
            "passed": passed,
            "perN": per_n,
        }),
    )?;
    Ok(passed)
}

fn cmd_gadget(which: GadgetCmd) -> Result<bool, String> {
    match which {
        GadgetCmd::Pathcycle { t, out_dir } => {
            let tu = t as usize;
            let p = Configuration::with_empty_inputs(path(2 * tu + 1));
            let c = Configuration::with_empty_inputs(cycle(2 * tu + 2));
            let pf = write_cfg(&out_dir, &format!("path-{}.cfg", p.n()), &p)?;
            let cf = write_cfg(&out_dir, &format!("cycle-{}.cfg", c.n()), &c)?;
            emit_json(
                &None,
                &serde_json::json!({
                    "t": t,
                    "wrote": [pf, cf],
                    "pathNodes": p.n(),
                    "cycleNodes": c.n(),
                }),
            )?;
            Ok(true)
        }
        GadgetCmd::Partition {
            left_size,
            right_size,
            left_input,
            right_input,
            t,
            out_dir,
        } => {
            if left_size == 0 || right_size == 0 {
                return Err("blob sizes must be at least 1".to_string());
            }
            let gadget = partition_gadget(
                &path(left_size),
                0,
                left_input == 1,
                &path(right_size),
                0,
                right_input == 1,
                t,
            );
            let name = format!("partition-{left_size}-{right_size}.cfg");
            let file = write_cfg(&out_dir, &name, &gadget.config)?;
            emit_json(
                &None,
                &serde_json::json!({
                    "wrote": file,
                    "nodes": gadget.config.n(),
                    "leftSize": gadget.left_size,
                    "rightSize": gadget.right_size,
                    "member": member(LanguageId::EqSizePartition, &gadget.config),
                }),
            )?;
            Ok(true)
        }
        GadgetCmd::Treepair {
            left,
            right,
            v1,
            v2,
            out_dir,
        } => {
            let l = load_configuration(&left)?;
            let r = load_configuration(&right)?;
            if !l.topology().is_tree() || !r.topology().is_tree() {
                return Err("both halves must be trees".to_string());
            }
            if l.n() != r.n() {
                return Err(format!(
                    "the halves must be the same size (got {} and {})",
                    l.n(),
                    r.n()
                ));
            }
            if v1 >= l.n() || v2 >= r.n() {
                return Err("attachment nodes must exist in their trees".to_string());
            }
            let joined = tree_pair_gadget(l.topology(), v1, r.topology(), v2);
            let file = write_cfg(&out_dir, &format!("treepair-{}.cfg", joined.n()), &joined)?;
            emit_json(
                &None,
                &serde_json::json!({
                    "wrote": file,
                    "nodes": joined.n(),
                    "member": member(LanguageId::FpfSymmetryOnTrees, &joined),
                }),
            )?;
            Ok(true)
        }
        GadgetCmd::Splice { k, out_dir } => {
            let k = k as usize;
            let len = splice_path_length(k, 1);
            let certs = strawman_tree_certificates(k, len);
            let splice = splice_cycle_from_path(&certs, 1)
                .expect("the threshold length guarantees a repeated window");
            let file =
                write_cfg(&out_dir, &format!("splice-cycle-{}.cfg", splice.cycle.n()), &splice.cycle)?;
            let certs_file = out_dir.join("splice-certs.json");
            let payload = serde_json::to_string_pretty(&serde_json::json!({
                "cycle": file,
                "certificates": hex_certs(&splice.certs),
            }))
            .expect("reports serialize");
            fs::write(&certs_file, payload + "\n")
                .map_err(|e| format!("cannot write {}: {e}", certs_file.display()))?;
            emit_json(
                &None,
                &serde_json::json!({
                    "k": k,
                    "pathNodes": len,
                    "cycleNodes": splice.cycle.n(),
                    "windowCentres": [splice.window_centres.0, splice.window_centres.1],
                    "wrote": [file, certs_file.display().to_string()],
                }),
            )?;
            Ok(true)
        }
    }
}

fn cmd_fool(which: FoolCmd) -> Result<bool, String> {
    match which {
        FoolCmd::Tree { k, scheme, out } => {
            let k = k as usize;
            let len = splice_path_length(k, 1);
            let donor = Configuration::with_empty_inputs(path(len));
            let (scheme_name, certs, verifier) = match scheme {
                TreeScheme::Strawman => (
                    "strawman",
                    strawman_tree_certificates(k, len),
                    strawman_tree_verifier(k),
                ),
                TreeScheme::Honest => (
                    "honest",
                    make_certificate(LanguageId::Tree, &donor).expect("paths are trees"),
                    locald::algo::tree_verifier(),
                ),
            };
            let ids = IdAssignment::canonical(len);
            let donor_accepted = run_verifier(&verifier, &donor, &ids, &certs)
                .expect("one certificate per node")
                .global();
            let splice = splice_cycle_from_path(&certs, 1);
            let result = match &splice {
                Some(s) => {
                    let cid = IdAssignment::canonical(s.cycle.n());
                    let accepted = run_verifier(&verifier, &s.cycle, &cid, &s.certs)
                        .expect("one certificate per node")
                        .global();
                    serde_json::json!({
                        "spliced": true,
                        "cycleNodes": s.cycle.n(),
                        "windowCentres": [s.window_centres.0, s.window_centres.1],
                        "cycleAccepted": accepted,
                        "cycleIsTree": s.cycle.topology().is_tree(),
                    })
                }
                None => serde_json::json!({ "spliced": false }),
            };
            emit_json(
                &out,
                &serde_json::json!({
                    "attack": "splice",
                    "scheme": scheme_name,
                    "k": k,
                    "pathNodes": len,
                    "donorAccepted": donor_accepted,
                    "result": result,
                }),
            )?;
            Ok(true)
        }
        FoolCmd::Partition {
            pool_n,
            scheme,
            t,
            out,
        } => {
            let pool = enumerate_instances(InstanceKind::ConnectedGraphs, pool_n as usize, 8)
                .map_err(|e| e.to_string())?;
            let (scheme_name, found) = match scheme {
                PartitionScheme::Summary => {
                    let verifier = strawman_eqsize_verifier();
                    let gen = |g: &PartitionGadget| Some(strawman_eqsize_certificates(g));
                    ("summary", transplant_attack(&verifier, &gen, t, &pool))
                }
                PartitionScheme::Quotient => {
                    let verifier = verifier_for(LanguageId::EqSizePartition);
                    let gen =
                        |g: &PartitionGadget| make_certificate(LanguageId::EqSizePartition, &g.config);
                    ("quotient", transplant_attack(&verifier, &gen, t, &pool))
                }
            };
            let result = match &found {
                Some(tr) => serde_json::json!({
                    "fooled": true,
                    "stitchNodes": tr.stitched.config.n(),
                    "member": member(LanguageId::EqSizePartition, &tr.stitched.config),
                    "donors": [
                        [tr.donors.0.0, tr.donors.0.1],
                        [tr.donors.1.0, tr.donors.1.1],
                    ],
                }),
                None => serde_json::json!({ "fooled": false }),
            };
            emit_json(
                &out,
                &serde_json::json!({
                    "attack": "transplant",
                    "scheme": scheme_name,
                    "poolSize": pool.len(),
                    "t": t,
                    "result": result,
                }),
            )?;
            Ok(true)
        }
    }
}

fn cmd_search(which: SearchCmd) -> Result<bool, String> {
    match which {
        SearchCmd::MinCert {
            config,
            ver,
            max_bits,
            max_candidates,
            ids,
            seed,
            out,
        } => {
            let config = load_configuration(&config)?;
            let verifier = resolve_verifier(&ver)?;
            let opts = SearchOptions {
                max_candidates,
                max_label_bits: max_bits,
            };
            let strategy = ids.strategy(config.n(), seed);
            let found = min_cert_size(&verifier, &config, &strategy, &opts)
                .map_err(|e| format!("{e}; raise --max-candidates or lower --max-bits"))?;
            let result = match &found {
                Some((bits, certs)) => serde_json::json!({
                    "bits": bits,
                    "certificates": hex_certs(certs),
                }),
                None => serde_json::Value::Null,
            };
            emit_json(
                &out,
                &serde_json::json!({
                    "verifier": verifier.name,
                    "config": serde_json::to_value(&config).expect("configs serialize"),
                    "maxBits": max_bits,
                    "found": result,
                }),
            )?;
            Ok(true)
        }
        SearchCmd::Soundness {
            config,
            ver,
            space,
            max_candidates,
            ids,
            seed,
            out,
        } => {
            let config = load_configuration(&config)?;
            let verifier = resolve_verifier(&ver)?;
            let space_parsed = parse_space(&space, None, config.n())?;
            let opts = SearchOptions {
                max_candidates,
                ..SearchOptions::default()
            };
            let strategy = ids.strategy(config.n(), seed);
            let found = soundness_search(&verifier, &config, &space_parsed, &strategy, &opts)
                .map_err(|e| format!("{e}; raise --max-candidates or narrow --space"))?;
            let result = match &found {
                Some((certs, ids)) => serde_json::json!({
                    "certificates": hex_certs(certs),
                    "ids": ids.ids(),
                }),
                None => serde_json::Value::Null,
            };
            emit_json(
                &out,
                &serde_json::json!({
                    "verifier": verifier.name,
                    "config": serde_json::to_value(&config).expect("configs serialize"),
                    "space": space,
                    "accepted": result,
                }),
            )?;
            Ok(true)
        }
    }
}

fn cmd_table(args: TableArgs) -> Result<bool, String> {
    let report = measure_certificate_sizes(args.seed);
    let rendered = match args.format {
        TableFormat::Text => report.to_text(),
        TableFormat::Csv => report.to_csv(),
    };
    emit(&args.out, &rendered)?;
    Ok(report.all_within_bounds())
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<bool, String> {
    let (kind, kind_name) = match args.kind {
        EnumKind::Connected => (InstanceKind::ConnectedGraphs, "connected"),
        EnumKind::Trees => (InstanceKind::Trees, "trees"),
        EnumKind::LabeledTrees => (InstanceKind::LabeledTrees, "labeled-trees"),
    };
    if matches!(kind, InstanceKind::ConnectedGraphs) && args.n > 7 {
        return Err(
            "connected-class enumeration caps at --n 7; trees and labeled-trees go to 8"
                .to_string(),
        );
    }
    let instances = enumerate_instances(kind, args.n, 8).map_err(|e| e.to_string())?;
    if args.list {
        let mut lines = String::new();
        for g in &instances {
            let config = Configuration::with_empty_inputs(g.clone());
            lines.push_str(&serde_json::to_string(&config).expect("configs serialize"));
            lines.push('\n');
        }
        emit(&args.out, &lines)?;
    } else {
        emit_json(
            &args.out,
            &serde_json::json!({
                "kind": kind_name,
                "n": args.n,
                "instances": instances.len(),
            }),
        )?;
    }
    Ok(true)
}
