//! Library side of the command line: artifact loading, the compile
//! pipeline, runners, verification dispatch and emitters. The binary only
//! parses flags and forwards here, so everything is callable from tests.

use std::fs;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bordism::{
    build_graph, conjecture_csv, conjecture_report, thicken, NumeralCodec, ReachOutcome,
    ThickenOptions,
};
use crate::cantor::{blockmap_svg, gshift_to_blockmap, parse_blockmap, render_blockmap, BlockMap};
use crate::gshift::{parse_biword, parse_shift, render_biword, render_shift, Encoding, GeneralizedShift};
use crate::murec::{
    compile_to_flowchart, eval, flowchart_to_tm, parse_expr, render_expr, CompiledMachine,
    EvalOutcome, Flowchart, MuRecExpr,
};
use crate::tm::{
    machine_from_json, machine_to_json, parse_machine, render_machine, RunOutcome, TapeIoDoc,
    TuringMachine,
};
use crate::verify::{self, SuiteReport};

pub const DEFAULT_FUEL: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("io: {0}")]
    Io(String),
    #[error("verification failed")]
    Verification,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification => 1,
            _ => 2,
        }
    }
}

fn io_err(e: std::io::Error, path: &Path) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Session settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub fuel: u64,
    pub seed: u64,
    pub json: bool,
    pub out_dir: PathBuf,
}

impl Workspace {
    /// Defaults, with `DYNCOMP_FUEL` and `DYNCOMP_SEED` honored when the
    /// flags are absent.
    pub fn new(fuel: Option<u64>, seed: Option<u64>, json: bool, out: Option<PathBuf>) -> Self {
        let env_u64 = |name: &str| {
            std::env::var(name)
                .ok()
                .and_then(|v| v.parse::<u64>().ok())
        };
        Workspace {
            fuel: fuel.or_else(|| env_u64("DYNCOMP_FUEL")).unwrap_or(DEFAULT_FUEL),
            seed: seed.or_else(|| env_u64("DYNCOMP_SEED")).unwrap_or(DEFAULT_SEED),
            json,
            out_dir: out.unwrap_or_else(|| PathBuf::from(".")),
        }
    }

    fn out_path(&self, stem: &str, ext: &str) -> PathBuf {
        self.out_dir.join(format!("{stem}.{ext}"))
    }

    fn write(&self, path: &Path, bytes: &str) -> Result<(), CliError> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir).map_err(|e| io_err(e, dir))?;
            }
        }
        fs::write(path, bytes).map_err(|e| io_err(e, path))
    }
}

/// Artifact kinds along the compile pipeline, in pipeline order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Format {
    Murec,
    Flowchart,
    Tm,
    Gshift,
    Blockmap,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format, CliError> {
        match s {
            "murec" => Ok(Format::Murec),
            "flowchart" => Ok(Format::Flowchart),
            "tm" => Ok(Format::Tm),
            "gshift" => Ok(Format::Gshift),
            "blockmap" => Ok(Format::Blockmap),
            other => Err(CliError::Usage(format!(
                "unknown format `{other}` (expected murec|flowchart|tm|gshift|blockmap)"
            ))),
        }
    }

    fn ext(&self) -> &'static str {
        match self {
            Format::Murec => "mrec",
            Format::Flowchart => "fc",
            Format::Tm => "tm",
            Format::Gshift => "gs",
            Format::Blockmap => "bm",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Artifact {
    Murec(MuRecExpr),
    Flowchart(Flowchart),
    Tm(TuringMachine, Option<TapeIoDoc>),
    Gshift(GeneralizedShift),
    Blockmap(BlockMap),
}

#[derive(Serialize, Deserialize)]
struct MurecDoc {
    expr: String,
}

#[derive(Serialize, Deserialize)]
struct GshiftRuleDoc {
    window: String,
    rewrite: String,
    shift: i64,
}

#[derive(Serialize, Deserialize)]
struct GshiftDoc {
    window_start: i64,
    window_len: usize,
    rules: Vec<GshiftRuleDoc>,
}

#[derive(Serialize, Deserialize)]
struct BlockmapDoc {
    pieces: Vec<BlockmapPieceDoc>,
}

#[derive(Serialize, Deserialize)]
struct BlockmapPieceDoc {
    source_x: String,
    source_y: String,
    target_x: String,
    target_y: String,
    x_scale: String,
    y_scale: String,
}

fn bits_of(s: &str) -> Result<Vec<bool>, CliError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(CliError::Parse(format!("expected binary digits, got `{other}`"))),
        })
        .collect()
}

pub fn load_artifact(format: Format, path: &Path) -> Result<Artifact, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(e, path))?;
    let json = text.trim_start().starts_with('{');
    let parse_err = |e: String| CliError::Parse(format!("{}: {e}", path.display()));
    match format {
        Format::Murec => {
            let src = if json {
                serde_json::from_str::<MurecDoc>(&text)
                    .map_err(|e| parse_err(e.to_string()))?
                    .expr
            } else {
                text
            };
            Ok(Artifact::Murec(
                parse_expr(&src).map_err(|e| parse_err(e.to_string()))?,
            ))
        }
        Format::Flowchart => {
            let fc: Flowchart =
                serde_json::from_str(&text).map_err(|e| parse_err(e.to_string()))?;
            Ok(Artifact::Flowchart(fc))
        }
        Format::Tm => {
            let (m, io) = if json {
                machine_from_json(&text).map_err(|e| parse_err(e.to_string()))?
            } else {
                parse_machine(&text).map_err(|e| parse_err(e.to_string()))?
            };
            Ok(Artifact::Tm(m, io))
        }
        Format::Gshift => {
            if json {
                let doc: GshiftDoc =
                    serde_json::from_str(&text).map_err(|e| parse_err(e.to_string()))?;
                let mut table = vec![None; 1usize << doc.window_len];
                for rule in &doc.rules {
                    let w = bits_of(&rule.window)?;
                    let idx = w.iter().fold(0usize, |a, &b| (a << 1) | b as usize);
                    table[idx] = Some(crate::gshift::WindowRule {
                        rewrite: bits_of(&rule.rewrite)?,
                        shift: rule.shift,
                    });
                }
                let table: Option<Vec<_>> = table.into_iter().collect();
                let table = table.ok_or_else(|| parse_err("missing window rules".into()))?;
                Ok(Artifact::Gshift(
                    GeneralizedShift::from_table(doc.window_start, doc.window_len, table)
                        .map_err(|e| parse_err(e.to_string()))?,
                ))
            } else {
                Ok(Artifact::Gshift(
                    parse_shift(&text).map_err(|e| parse_err(e.to_string()))?,
                ))
            }
        }
        Format::Blockmap => Ok(Artifact::Blockmap(
            parse_blockmap(&text).map_err(|e| parse_err(e.to_string()))?,
        )),
    }
}

fn render_artifact(a: &Artifact, json: bool) -> String {
    match a {
        Artifact::Murec(e) => {
            if json {
                serde_json::to_string_pretty(&MurecDoc { expr: render_expr(e) })
                    .expect("doc serializes")
            } else {
                let mut s = render_expr(e);
                s.push('\n');
                s
            }
        }
        Artifact::Flowchart(fc) => {
            serde_json::to_string_pretty(fc).expect("flowchart serializes")
        }
        Artifact::Tm(m, io) => {
            if json {
                machine_to_json(m, *io)
            } else {
                render_machine(m, *io)
            }
        }
        Artifact::Gshift(s) => {
            if json {
                let doc = GshiftDoc {
                    window_start: s.window_start(),
                    window_len: s.window_len(),
                    rules: s
                        .rules()
                        .map(|(w, rule)| GshiftRuleDoc {
                            window: crate::gshift::bits_string(&w),
                            rewrite: crate::gshift::bits_string(&rule.rewrite),
                            shift: rule.shift,
                        })
                        .collect(),
                };
                serde_json::to_string_pretty(&doc).expect("doc serializes")
            } else {
                render_shift(s)
            }
        }
        Artifact::Blockmap(f) => {
            if json {
                let doc = BlockmapDoc {
                    pieces: f
                        .pieces()
                        .iter()
                        .map(|p| BlockmapPieceDoc {
                            source_x: crate::gshift::bits_string(p.source.x_word()),
                            source_y: crate::gshift::bits_string(p.source.y_word()),
                            target_x: crate::gshift::bits_string(p.target.x_word()),
                            target_y: crate::gshift::bits_string(p.target.y_word()),
                            x_scale: p.map.x_scale.to_string(),
                            y_scale: p.map.y_scale.to_string(),
                        })
                        .collect(),
                };
                serde_json::to_string_pretty(&doc).expect("doc serializes")
            } else {
                render_blockmap(f)
            }
        }
    }
}

fn summarize(a: &Artifact) -> String {
    match a {
        Artifact::Murec(e) => {
            let sig = e.signature().expect("loaded programs are checked");
            format!(
                "program: arity {}, {} loop nodes",
                sig.arity,
                e.loop_nodes()
            )
        }
        Artifact::Flowchart(fc) => format!(
            "flowchart: {} blocks, {} registers, loop count {}",
            fc.blocks.len(),
            fc.n_regs,
            fc.loop_count()
        ),
        Artifact::Tm(m, io) => {
            let io = io
                .map(|io| format!(", io fields {} (output {})", io.fields, io.output_field))
                .unwrap_or_default();
            format!(
                "machine: {} states, {} symbols, {} transitions{io}",
                m.state_count(),
                m.alphabet_len(),
                m.transitions().count()
            )
        }
        Artifact::Gshift(s) => format!(
            "shift: window [{}, {}), {} rules",
            s.window_start(),
            s.window_start() + s.window_len() as i64,
            1usize << s.window_len()
        ),
        Artifact::Blockmap(f) => format!("block map: {} pieces", f.pieces().len()),
    }
}

fn compile_step(a: Artifact, to: Format) -> Result<Artifact, CliError> {
    let refuse = |e: String| CliError::Parse(e);
    match (a, to) {
        (Artifact::Murec(e), Format::Flowchart) => Ok(Artifact::Flowchart(
            compile_to_flowchart(&e).map_err(|e| refuse(e.to_string()))?,
        )),
        (Artifact::Flowchart(fc), Format::Tm) => {
            let cm = flowchart_to_tm(&fc).map_err(|e| refuse(e.to_string()))?;
            Ok(Artifact::Tm(cm.machine, Some(cm.io)))
        }
        (Artifact::Tm(m, _), Format::Gshift) => {
            let enc = Encoding::canonical(&m);
            Ok(Artifact::Gshift(
                GeneralizedShift::compile_tm(&m, &enc).map_err(|e| refuse(e.to_string()))?,
            ))
        }
        (Artifact::Gshift(s), Format::Blockmap) => Ok(Artifact::Blockmap(
            gshift_to_blockmap(&s).map_err(|e| refuse(e.to_string()))?,
        )),
        _ => unreachable!("pipeline steps are consecutive"),
    }
}

/// Walk the pipeline from one format to a later one and write the target
/// artifact next to the out dir. Returns (path, summary).
pub fn cmd_compile(
    ws: &Workspace,
    from: Format,
    to: Format,
    input: &Path,
) -> Result<(PathBuf, String), CliError> {
    if to <= from {
        return Err(CliError::Usage(format!(
            "unsupported edge: {from:?} -> {to:?} is not forward along murec -> flowchart -> tm -> gshift -> blockmap"
        )));
    }
    let mut artifact = load_artifact(from, input)?;
    let chain = [
        Format::Murec,
        Format::Flowchart,
        Format::Tm,
        Format::Gshift,
        Format::Blockmap,
    ];
    for window in chain.windows(2) {
        if window[0] >= from && window[1] <= to {
            artifact = compile_step(artifact, window[1])?;
        }
    }
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "artifact".into());
    let ext = if ws.json || matches!(to, Format::Flowchart) {
        format!("{}.json", to.ext())
    } else {
        to.ext().to_string()
    };
    let path = ws.out_path(&stem, &ext);
    ws.write(&path, &render_artifact(&artifact, ws.json))?;
    let summary = summarize(&artifact);
    Ok((path, summary))
}

/// What to feed a run.
#[derive(Debug, Clone, Default)]
pub struct RunInput {
    pub natural: Option<u64>,
    pub args: Option<Vec<u64>>,
    pub word: Option<String>,
    pub codec: Option<String>,
    pub allow_irreversible: bool,
}

fn parse_codec(name: Option<&str>) -> Result<NumeralCodec, CliError> {
    match name.unwrap_or("unary") {
        "unary" => Ok(NumeralCodec::Unary),
        "pair" => Ok(NumeralCodec::UnaryPair),
        "binary" => Ok(NumeralCodec::Binary),
        other => Err(CliError::Usage(format!(
            "unknown codec `{other}` (expected unary|pair|binary)"
        ))),
    }
}

fn run_args(input: &RunInput) -> Result<Vec<u64>, CliError> {
    if let Some(args) = &input.args {
        Ok(args.clone())
    } else if let Some(n) = input.natural {
        Ok(vec![n])
    } else {
        Err(CliError::Usage("provide --input N or --args a,b".into()))
    }
}

/// Run one model on one input; returns the printed report and any files
/// written (bordism runs drop a trace log and CSV).
pub fn cmd_run(
    ws: &Workspace,
    model: &str,
    path: &Path,
    input: &RunInput,
) -> Result<(String, Vec<PathBuf>), CliError> {
    match model {
        "tm" => {
            let Artifact::Tm(m, io) = load_artifact(Format::Tm, path)? else {
                unreachable!()
            };
            if let Some(io) = io {
                let cm = CompiledMachine { machine: m, io };
                let args = run_args(input)?;
                let out = cm
                    .run_args(&args, ws.fuel)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                return Ok((format!("{out:?}\n"), Vec::new()));
            }
            let codec = parse_codec(input.codec.as_deref())?;
            let args = run_args(input)?;
            let tape = codec
                .encode_tape(&m, &args)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let outcome = m
                .run(m.start(tape), ws.fuel)
                .map_err(|e| CliError::Parse(e.to_string()))?;
            let text = match outcome {
                RunOutcome::Halted { config, steps } => {
                    let value = codec.decode_tape(&m, &config.tape);
                    format!(
                        "halted after {steps} steps; output {}; tape {}\n",
                        value.map(|v| v.to_string()).unwrap_or_else(|| "?".into()),
                        config.tape.render(&m)
                    )
                }
                RunOutcome::OutOfFuel { config } => {
                    format!("out of fuel ({}); tape {}\n", ws.fuel, config.tape.render(&m))
                }
            };
            Ok((text, Vec::new()))
        }
        "murec" => {
            let Artifact::Murec(e) = load_artifact(Format::Murec, path)? else {
                unreachable!()
            };
            let args = run_args(input)?;
            let big: Vec<num_bigint::BigUint> =
                args.iter().map(|&a| num_bigint::BigUint::from(a)).collect();
            let out = eval(&e, &big, ws.fuel).map_err(|e| CliError::Usage(e.to_string()))?;
            let text = match out {
                EvalOutcome::Value(vs) => {
                    let rendered: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                    format!("{}\n", rendered.join(", "))
                }
                EvalOutcome::Undefined => "undefined\n".to_string(),
                EvalOutcome::OutOfFuel => format!("out of fuel ({})\n", ws.fuel),
            };
            Ok((text, Vec::new()))
        }
        "gshift" => {
            let Artifact::Gshift(s) = load_artifact(Format::Gshift, path)? else {
                unreachable!()
            };
            let word = input
                .word
                .as_deref()
                .ok_or_else(|| CliError::Usage("provide --word '...0 | 01...'".into()))?;
            let start = parse_biword(word).map_err(|e| CliError::Parse(e.to_string()))?;
            let steps = input.natural.unwrap_or(10) as usize;
            let orbit = s.orbit(&start, steps);
            let mut text = String::new();
            for (k, w) in orbit.iter().enumerate() {
                text.push_str(&format!("{k}: {}\n", render_biword(w)));
            }
            Ok((text, Vec::new()))
        }
        "bordism" => {
            let Artifact::Tm(m, _) = load_artifact(Format::Tm, path)? else {
                unreachable!()
            };
            let codec = parse_codec(input.codec.as_deref())?;
            let opts = ThickenOptions {
                allow_irreversible: input.allow_irreversible,
                tube_length: BigRational::from_integer(1.into()),
                codec,
            };
            let sk = thicken(&m, opts).map_err(|e| CliError::Parse(e.to_string()))?;
            let args = run_args(input)?;
            let trace = sk
                .reach(&args, ws.fuel)
                .map_err(|e| CliError::Parse(e.to_string()))?;
            let mut text = match &trace.outcome {
                ReachOutcome::Reached(v) => format!(
                    "reached {v}; steps {}; length {}\n",
                    trace.steps, trace.length
                ),
                ReachOutcome::Diverged { fuel } => {
                    format!("diverged (fuel {fuel}); steps {}\n", trace.steps)
                }
            };
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "trace".into());
            let log_path = ws.out_path(&stem, "trace.txt");
            ws.write(&log_path, &sk.trace_log(&trace))?;
            let csv_path = ws.out_path(&stem, "trace.csv");
            let csv = format!("input,outcome,steps,length\n{}\n", sk.trace_csv_row(&trace));
            ws.write(&csv_path, &csv)?;
            text.push_str(&format!(
                "wrote {} and {}\n",
                log_path.display(),
                csv_path.display()
            ));
            Ok((text, vec![log_path, csv_path]))
        }
        other => Err(CliError::Usage(format!(
            "unknown model `{other}` (expected tm|murec|gshift|bordism)"
        ))),
    }
}

/// Run one verification suite; `file` feeds the volume suite an external
/// block map.
pub fn cmd_verify(
    ws: &Workspace,
    suite: &str,
    file: Option<&Path>,
) -> Result<SuiteReport, CliError> {
    let report = match suite {
        "conjugacy-tm-gshift" => verify::conjugacy_machine_shift(ws.seed, 20, 100, 50),
        "conjugacy-gshift-blockmap" => verify::conjugacy_shift_blockmap(ws.seed, 1000),
        "volume" => match file {
            Some(path) => {
                let Artifact::Blockmap(f) = load_artifact(Format::Blockmap, path)? else {
                    unreachable!()
                };
                verify::volume_of(&f, &path.display().to_string())
            }
            None => verify::volume(ws.seed),
        },
        "betti" => verify::betti(ws.seed),
        "oracle-murec" => verify::oracle_murec(ws.fuel),
        "lenc" => verify::lenc(ws.fuel),
        other => {
            return Err(CliError::Usage(format!(
                "unknown suite `{other}` (expected conjugacy-tm-gshift|conjugacy-gshift-blockmap|volume|betti|oracle-murec|lenc)"
            )))
        }
    };
    Ok(report)
}

/// Emit a derived artifact: DOT graph, SVG block picture, or CSV tables.
pub fn cmd_emit(
    ws: &Workspace,
    kind: &str,
    path: &Path,
    input: &RunInput,
    range_hi: Option<u64>,
) -> Result<(PathBuf, String), CliError> {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "artifact".into());
    match kind {
        "graph-dot" => {
            let Artifact::Tm(m, _) = load_artifact(Format::Tm, path)? else {
                unreachable!()
            };
            let g = build_graph(&m);
            let out = ws.out_path(&stem, "dot");
            ws.write(&out, &g.to_dot(&m))?;
            Ok((out, format!("graph: {} vertices, {} edges, b1 = {}", g.vertex_count(), g.edge_count(), g.betti1())))
        }
        "blocks-svg" => {
            let f = match path.extension().and_then(|e| e.to_str()) {
                Some("bm") => {
                    let Artifact::Blockmap(f) = load_artifact(Format::Blockmap, path)? else {
                        unreachable!()
                    };
                    f
                }
                _ => {
                    let Artifact::Gshift(s) = load_artifact(Format::Gshift, path)? else {
                        unreachable!()
                    };
                    gshift_to_blockmap(&s).map_err(|e| CliError::Parse(e.to_string()))?
                }
            };
            let out = ws.out_path(&stem, "svg");
            ws.write(&out, &blockmap_svg(&f))?;
            Ok((out, format!("{} pieces drawn", f.pieces().len())))
        }
        "trace-csv" => {
            let Artifact::Tm(m, _) = load_artifact(Format::Tm, path)? else {
                unreachable!()
            };
            let codec = parse_codec(input.codec.as_deref())?;
            let opts = ThickenOptions {
                allow_irreversible: input.allow_irreversible,
                tube_length: BigRational::from_integer(1.into()),
                codec,
            };
            let sk = thicken(&m, opts).map_err(|e| CliError::Parse(e.to_string()))?;
            let hi = range_hi.unwrap_or(10);
            let mut csv = String::from("input,outcome,steps,length\n");
            for n in 0..=hi {
                let args = match codec {
                    NumeralCodec::UnaryPair => vec![n, n],
                    _ => vec![n],
                };
                let trace = sk
                    .reach(&args, ws.fuel)
                    .map_err(|e| CliError::Parse(e.to_string()))?;
                csv.push_str(&sk.trace_csv_row(&trace));
                csv.push('\n');
            }
            let out = ws.out_path(&stem, "trace.csv");
            ws.write(&out, &csv)?;
            Ok((out, format!("{} rows", hi + 1)))
        }
        "conjecture-csv" => {
            let Artifact::Tm(m, _) = load_artifact(Format::Tm, path)? else {
                unreachable!()
            };
            let codec = parse_codec(input.codec.as_deref())?;
            let opts = ThickenOptions {
                allow_irreversible: input.allow_irreversible,
                tube_length: BigRational::from_integer(1.into()),
                codec,
            };
            let sk = thicken(&m, opts).map_err(|e| CliError::Parse(e.to_string()))?;
            let hi = range_hi.unwrap_or(20);
            let inputs: Vec<Vec<u64>> = (1..=hi)
                .map(|n| match codec {
                    NumeralCodec::UnaryPair => vec![n, n],
                    _ => vec![n],
                })
                .collect();
            let rows =
                conjecture_report(&sk, &inputs, ws.fuel).map_err(|e| CliError::Parse(e.to_string()))?;
            let out = ws.out_path(&stem, "conjecture.csv");
            ws.write(&out, &conjecture_csv(&rows))?;
            Ok((out, format!("{} rows", rows.len())))
        }
        other => Err(CliError::Usage(format!(
            "unknown emit kind `{other}` (expected graph-dot|blocks-svg|trace-csv|conjecture-csv)"
        ))),
    }
}

/// The cotangent-lift demo: drift report for a named or custom field.
pub fn cmd_hamdemo(
    ws: &Workspace,
    field_name: &str,
    q0: &[f64],
    horizon: f64,
    step: f64,
) -> Result<(String, PathBuf), CliError> {
    use crate::hamdemo::{rotation_order_ratio, verify_universality, PolyVectorField};
    let field = match field_name {
        "rotation" => PolyVectorField::rotation(),
        "cubic" => PolyVectorField::cubic_oscillator(),
        "zero" => PolyVectorField::zero_field(q0.len().max(1)),
        other => {
            return Err(CliError::Usage(format!(
                "unknown field `{other}` (expected rotation|cubic|zero)"
            )))
        }
    };
    let report = verify_universality(&field, q0, horizon, step)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    let ratio = rotation_order_ratio(0.05);
    let text = format!(
        "field {field_name}: {} steps at h = {step}\n\
         max |p| along the lifted run: {:e}\n\
         max |q - q_ref|: {:e}\n\
         integrator order probe (rotation, h 0.05 -> 0.025): error ratio {ratio:.2}\n",
        report.steps, report.max_p_norm, report.max_q_drift
    );
    let out = ws.out_path(&format!("hamdemo-{field_name}"), "csv");
    ws.write(&out, &report.csv())?;
    Ok((text, out))
}
