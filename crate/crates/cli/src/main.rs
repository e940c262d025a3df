use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::rngs::OsRng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use acrostego::steganalysis::{Adversary, DistinguisherConfig, SchemeKind};
use acrostego::stego::bits::{format_bits, parse_bit_string};
use acrostego::{
    bits_to_bytes, bytes_to_bits, capacity, char_distribution, chosen_message_attack, compare,
    deframe, distinguisher_experiment, frame, keygen, load_lexicon, run_case, shuffle_table,
    BitMessage, CaseId, CoverCorpus, Form, Lexicon, MessageLength, Scheme, StegoKey,
};

#[derive(Debug, Parser)]
#[command(
    name = "acrostego",
    version,
    about = "Word/acronym substitution text steganography"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a 256-bit stego key as 64 hex characters.
    Keygen {
        /// Derive the key from a seeded generator instead of system entropy.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hide a message in a cover text.
    Embed(EmbedArgs),
    /// Recover a message from a stego text.
    Extract(ExtractArgs),
    /// Count the bits a cover can hold.
    Capacity {
        #[command(flatten)]
        lexicon: LexiconArg,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Compare a cover with a stego object.
    Analyze {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        stego: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        /// Also write report.json and per-text distribution CSVs here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run the chosen-message attack or the distinguishing experiment.
    Attack(AttackArgs),
    /// Re-run one of the three chosen-cover test cases.
    Cases {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        case: u8,
        #[command(flatten)]
        lexicon: LexiconArg,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Validate a lexicon and list entries that cannot carry bits.
    LexiconCheck {
        #[command(flatten)]
        lexicon: LexiconArg,
    },
}

#[derive(Debug, Args)]
struct LexiconArg {
    /// Lexicon TSV; the bundled chat dictionary when omitted.
    #[arg(long)]
    lexicon: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Baseline,
    Enhanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Bits,
    Bytes,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AttackKind {
    ChosenMessage,
    Distinguisher,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AdversaryArg {
    Keyless,
    WrongKey,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("message").required(true).args(["message_bits", "message_file", "message_text"])))]
struct EmbedArgs {
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    #[command(flatten)]
    lexicon: LexiconArg,
    #[arg(long)]
    cover: PathBuf,
    /// Message as ASCII '0'/'1' characters.
    #[arg(long)]
    message_bits: Option<String>,
    /// Message as raw bytes, read MSB-first.
    #[arg(long)]
    message_file: Option<PathBuf>,
    /// Message as UTF-8 text.
    #[arg(long)]
    message_text: Option<String>,
    /// Key file (64 hex characters); required for the enhanced scheme.
    #[arg(long)]
    key: Option<PathBuf>,
    /// Prefix the message with a 32-bit length header.
    #[arg(long)]
    framed: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    #[command(flatten)]
    lexicon: LexiconArg,
    #[arg(long)]
    stego: PathBuf,
    #[arg(long)]
    key: Option<PathBuf>,
    #[arg(long, conflicts_with = "framed")]
    expected_bits: Option<usize>,
    /// Read the 32-bit length header and return only the payload.
    #[arg(long)]
    framed: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Bits)]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AttackArgs {
    #[arg(long, value_enum)]
    kind: AttackKind,
    #[arg(long, value_enum, default_value_t = SchemeArg::Enhanced)]
    scheme: SchemeArg,
    #[command(flatten)]
    lexicon: LexiconArg,
    /// Cover the attacker submits to the embedding oracle.
    #[arg(long, required_if_eq("kind", "chosen-message"))]
    probe_cover: Option<PathBuf>,
    /// Hidden key for the chosen-message oracle; drawn from --seed if absent.
    #[arg(long)]
    key: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = AdversaryArg::Keyless)]
    adversary: AdversaryArg,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 256)]
    bits: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cover corpus, one chat message per line; bundled corpus if absent.
    #[arg(long)]
    corpus: Option<PathBuf>,
}

enum CliError {
    /// Bad invocation or unreadable input: exit 2.
    Usage(String),
    /// Domain failure: exit 1.
    Domain(String),
}

impl CliError {
    fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", first.trim());
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {}", one_line(&msg));
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {}", one_line(&msg));
            ExitCode::from(1)
        }
    }
}

fn one_line(msg: &str) -> String {
    msg.lines().collect::<Vec<_>>().join(" ")
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, data: &[u8]) -> CliResult {
    match path {
        Some(p) => fs::write(p, data)
            .map_err(|e| CliError::Domain(format!("IoError: cannot write {}: {e}", p.display()))),
        None => io::stdout()
            .write_all(data)
            .map_err(|e| CliError::Domain(format!("IoError: {e}"))),
    }
}

fn write_file(dir: &Path, name: &str, data: &[u8]) -> CliResult {
    write_out(Some(&dir.join(name)), data)
}

fn ensure_dir(dir: &Path) -> CliResult {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Domain(format!("IoError: cannot create {}: {e}", dir.display())))
}

fn load_lex(arg: &LexiconArg) -> CliResult<Lexicon> {
    match &arg.lexicon {
        Some(path) => load_lexicon(&read_text(path)?).map_err(CliError::domain),
        None => Ok(Lexicon::bundled()),
    }
}

fn load_key(path: &Path) -> CliResult<StegoKey> {
    StegoKey::from_hex(&read_text(path)?).map_err(CliError::domain)
}

fn scheme_for(arg: SchemeArg, key: Option<&PathBuf>) -> CliResult<Scheme> {
    match (arg, key) {
        (SchemeArg::Baseline, _) => Ok(Scheme::Baseline),
        (SchemeArg::Enhanced, Some(path)) => Ok(Scheme::Enhanced(load_key(path)?)),
        (SchemeArg::Enhanced, None) => {
            Err(CliError::Usage("the enhanced scheme needs --key".into()))
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Domain(format!("SerializationError: {e}")))
}

fn distribution_csv(text: &str) -> CliResult<Vec<u8>> {
    let dist = char_distribution(text).map_err(CliError::domain)?;
    let mut buf = Vec::new();
    dist.write_csv(&mut buf)
        .map_err(|e| CliError::Domain(format!("IoError: {e}")))?;
    Ok(buf)
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Keygen { seed, out } => {
            let key = match seed {
                Some(s) => keygen(&mut ChaCha20Rng::seed_from_u64(s)),
                None => keygen(&mut OsRng),
            }
            .map_err(CliError::domain)?;
            write_out(out.as_deref(), format!("{}\n", key.to_hex()).as_bytes())
        }
        Command::Embed(args) => embed(args),
        Command::Extract(args) => extract(args),
        Command::Capacity { lexicon, cover } => {
            let lex = load_lex(&lexicon)?;
            let n = capacity(&read_text(&cover)?, &lex);
            write_out(None, format!("{n}\n").as_bytes())
        }
        Command::Analyze {
            cover,
            stego,
            format,
            out_dir,
        } => {
            let (cover, stego) = (read_text(&cover)?, read_text(&stego)?);
            let report = compare::<f64>(&cover, &stego).map_err(CliError::domain)?;
            let json = to_json(&report)?;
            if let Some(dir) = out_dir {
                ensure_dir(&dir)?;
                write_file(&dir, "report.json", json.as_bytes())?;
                write_file(&dir, "cover_distribution.csv", &distribution_csv(&cover)?)?;
                write_file(&dir, "stego_distribution.csv", &distribution_csv(&stego)?)?;
            }
            match format {
                ReportFormat::Json => write_out(None, json.as_bytes()),
                ReportFormat::Table => write_out(None, report.to_string().as_bytes()),
            }
        }
        Command::Attack(args) => attack(args),
        Command::Cases {
            case,
            lexicon,
            cover,
            out_dir,
        } => cases(case, &lexicon, &cover, out_dir.as_deref()),
        Command::LexiconCheck { lexicon } => {
            let lex = load_lex(&lexicon)?;
            let mut out = format!(
                "entries\t{}\nindex keys\t{}\nlongest form (tokens)\t{}\n",
                lex.len(),
                lex.index_len(),
                lex.max_tokens()
            );
            let inert: Vec<_> = lex.inert_entries().collect();
            out.push_str(&format!("inert entries\t{}\n", inert.len()));
            for e in inert {
                out.push_str(&format!("inert\t{}\t{}\n", e.acronym, e.word_phrase));
            }
            write_out(None, out.as_bytes())
        }
    }
}

fn embed(args: EmbedArgs) -> CliResult {
    let lex = load_lex(&args.lexicon)?;
    let cover = read_text(&args.cover)?;
    let scheme = scheme_for(args.scheme, args.key.as_ref())?;
    let bits = if let Some(s) = &args.message_bits {
        parse_bit_string(s).map_err(|e| CliError::Usage(e.to_string()))?
    } else if let Some(path) = &args.message_file {
        bytes_to_bits(&read_bytes(path)?)
    } else {
        bytes_to_bits(args.message_text.as_deref().unwrap_or_default().as_bytes())
    };
    let msg = if args.framed {
        frame(&bits).map_err(CliError::domain)?
    } else {
        BitMessage::raw(bits)
    };
    let stego = scheme.embed(&cover, &lex, &msg).map_err(CliError::domain)?;
    write_out(args.out.as_deref(), stego.as_bytes())
}

fn extract(args: ExtractArgs) -> CliResult {
    let lex = load_lex(&args.lexicon)?;
    let stego = read_text(&args.stego)?;
    let scheme = scheme_for(args.scheme, args.key.as_ref())?;
    let len = match (args.framed, args.expected_bits) {
        (true, _) => MessageLength::Framed,
        (false, Some(n)) => MessageLength::Exact(n),
        (false, None) => MessageLength::All,
    };
    let mut bits = scheme
        .extract(&stego, &lex, len)
        .map_err(CliError::domain)?;
    if args.framed {
        bits = deframe(&bits).map_err(CliError::domain)?;
    }
    let data = match args.format {
        OutputFormat::Bits => format!("{}\n", format_bits(&bits)).into_bytes(),
        OutputFormat::Bytes => bits_to_bytes(&bits).map_err(CliError::domain)?,
        OutputFormat::Text => {
            let bytes = bits_to_bytes(&bits).map_err(CliError::domain)?;
            String::from_utf8_lossy(&bytes).into_owned().into_bytes()
        }
    };
    write_out(args.out.as_deref(), &data)
}

fn attack(args: AttackArgs) -> CliResult {
    let lex = load_lex(&args.lexicon)?;
    match args.kind {
        AttackKind::ChosenMessage => {
            let probe_path = args
                .probe_cover
                .as_ref()
                .ok_or_else(|| CliError::Usage("--probe-cover is required".into()))?;
            let probe = read_text(probe_path)?;
            let scheme = match (args.scheme, &args.key) {
                (SchemeArg::Baseline, _) => Scheme::Baseline,
                (SchemeArg::Enhanced, Some(path)) => Scheme::Enhanced(load_key(path)?),
                (SchemeArg::Enhanced, None) => Scheme::Enhanced(
                    keygen(&mut ChaCha20Rng::seed_from_u64(args.seed)).map_err(CliError::domain)?,
                ),
            };
            let oracle = |cover: &str, bits: &[bool]| {
                scheme
                    .embed(cover, &lex, &BitMessage::raw(bits.to_vec()))
                    .ok()
            };
            let inferred = chosen_message_attack(oracle, &probe, &lex).map_err(CliError::domain)?;

            let table = match &scheme {
                Scheme::Baseline => acrostego::EffectiveTable::unshuffled(&lex),
                Scheme::Enhanced(key) => shuffle_table(&lex, key),
            };
            let truth = |j: usize| table.form_for_bit(j, false).unwrap_or(Form::WordPhrase);
            let exposed: Vec<usize> = inferred.labels.keys().copied().collect();
            let unexposed: Vec<usize> = (0..lex.len())
                .filter(|j| !inferred.is_exposed(*j))
                .collect();
            let score = |entries: &[usize]| -> Option<f64> {
                (!entries.is_empty()).then(|| {
                    let hits = entries
                        .iter()
                        .filter(|&&j| inferred.predict_zero_form(j) == truth(j))
                        .count();
                    hits as f64 / entries.len() as f64
                })
            };
            let labels: Vec<_> = inferred
                .labels
                .iter()
                .map(|(&j, &form)| {
                    let e = &lex.entries()[j];
                    serde_json::json!({
                        "entry_id": j,
                        "acronym": e.acronym,
                        "word_phrase": e.word_phrase,
                        "bit0_form": form,
                        "bit0_text": e.form_text(form),
                    })
                })
                .collect();
            let out = serde_json::json!({
                "attack": "chosen-message",
                "scheme": match args.scheme { SchemeArg::Baseline => "baseline", SchemeArg::Enhanced => "enhanced" },
                "message_bits": inferred.message_bits,
                "exposed_carriers": inferred.exposures.len(),
                "exposed_entries": exposed.len(),
                "inferred_labels": labels,
                "default_bit0_form": inferred.default_zero_form,
                "exposed_label_accuracy": score(&exposed),
                "unexposed_prediction_accuracy": score(&unexposed),
            });
            write_out(None, to_json(&out)?.as_bytes())
        }
        AttackKind::Distinguisher => {
            let corpus = match &args.corpus {
                Some(path) => CoverCorpus::from_text(&read_text(path)?),
                None => CoverCorpus::bundled(),
            };
            let config = DistinguisherConfig {
                scheme: match args.scheme {
                    SchemeArg::Baseline => SchemeKind::Baseline,
                    SchemeArg::Enhanced => SchemeKind::Enhanced,
                },
                adversary: match args.adversary {
                    AdversaryArg::Keyless => Adversary::Keyless,
                    AdversaryArg::WrongKey => Adversary::WrongKey,
                },
                trials: args.trials,
                bits_per_trial: args.bits,
                seed: args.seed,
            };
            let summary =
                distinguisher_experiment(&config, &lex, &corpus).map_err(CliError::domain)?;
            write_out(None, to_json(&summary)?.as_bytes())
        }
    }
}

fn cases(case: u8, lexicon: &LexiconArg, cover: &Path, out_dir: Option<&Path>) -> CliResult {
    let lex = load_lex(lexicon)?;
    let cover = read_text(cover)?;
    let id =
        CaseId::from_number(case).ok_or_else(|| CliError::Usage(format!("unknown case {case}")))?;
    let outcome = run_case(id, &lex, &cover).map_err(CliError::domain)?;

    if let Some(dir) = out_dir {
        ensure_dir(dir)?;
        let n = outcome.case;
        write_file(
            dir,
            &format!("case{n}_report.json"),
            to_json(&outcome)?.as_bytes(),
        )?;
        write_file(
            dir,
            &format!("case{n}_cover_distribution.csv"),
            &distribution_csv(&cover)?,
        )?;
        for run in [&outcome.zeros, &outcome.ones] {
            let tag = if run.message == "all-zeros" {
                "zeros"
            } else {
                "ones"
            };
            write_file(
                dir,
                &format!("case{n}_{tag}_stego.txt"),
                run.stego.as_bytes(),
            )?;
            write_file(
                dir,
                &format!("case{n}_{tag}_stego_distribution.csv"),
                &distribution_csv(&run.stego)?,
            )?;
        }
    }

    let mut text = format!(
        "Case {}: {} carriers ({} word-form, {} acronym-form)\n",
        outcome.case, outcome.capacity, outcome.cover_words, outcome.cover_acronyms
    );
    for run in [&outcome.zeros, &outcome.ones] {
        text.push_str(&format!(
            "\n== {} message ({} bits), {} acronym-form carriers in stego ==\n{}",
            run.message, run.bits, run.stego_acronyms, run.report
        ));
    }
    write_out(None, text.as_bytes())
}
