use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cubrig::builtin::Builtin;
use cubrig::cubeset::CubicalComplex;
use cubrig::necklace::{hom_nec, subneck_poset, Necklace};
use cubrig::pathcat::leadsto_closure;
use cubrig::posets::{bruhat, nerve, FinitePoset};
use cubrig::sset::TruncSSet;
use cubrig::verify::{partition_posets, run_suite, SUITES};
use cubrig::{Error, Result};

#[derive(Parser)]
#[command(name = "cubrig", version, about = "Cubical sets, necklaces and rigidification mapping spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build, validate and export finite cubical sets.
    #[command(subcommand)]
    Cubeset(CubesetCmd),
    /// Bruhat orders, ordered partitions and their nerves.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Necklace morphisms and SubNeck posets.
    #[command(subcommand)]
    Necklace(NecklaceCmd),
    /// Paths between two vertices and the ⤳ order on them.
    #[command(subcommand)]
    Paths(PathsCmd),
    /// Rigidification mapping spaces.
    #[command(subcommand)]
    Rigidify(RigidifyCmd),
    /// Homology of truncated simplicial sets.
    #[command(subcommand)]
    Sset(SsetCmd),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Source {
    /// Builtin constructor, e.g. cube:3, open-box:3:1:0, necklace:2,1, k, x.
    #[arg(long, short = 'c', conflicts_with = "input")]
    complex: Option<String>,
    /// JSON file written by `cubeset export`.
    #[arg(long, short = 'i')]
    input: Option<PathBuf>,
}

impl Source {
    fn builtin(&self) -> Result<Option<Builtin>> {
        self.complex.as_deref().map(str::parse).transpose()
    }

    fn load(&self) -> Result<CubicalComplex> {
        match (&self.complex, &self.input) {
            (Some(spec), _) => spec.parse::<Builtin>()?.complex(),
            (None, Some(path)) => CubicalComplex::from_json(&serde_json::from_str(&fs::read_to_string(path)?)?),
            (None, None) => Err(Error::Invalid("give --complex or --input".into())),
        }
    }

    /// Index of a vertex by name, accepting `alpha`/`omega` for builtins.
    fn vertex(&self, c: &CubicalComplex, name: &str) -> Result<usize> {
        let name = match self.builtin()? {
            Some(b) => b.vertex(name).map(|v| v.to_string()).unwrap_or_else(|_| name.to_string()),
            None => name.to_string(),
        };
        c.vertex_id(&name)
            .ok_or_else(|| Error::Invalid(format!("no vertex named {name:?}")))
    }
}

#[derive(Subcommand)]
enum CubesetCmd {
    /// Print cell counts and the validation result.
    Build {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the cubical identities; exits nonzero on violations.
    Validate {
        #[command(flatten)]
        src: Source,
    },
    /// Write the complex as JSON.
    Export {
        #[command(flatten)]
        src: Source,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PosetCmd {
    /// The weak Bruhat order on permutations of {1..n}.
    Bruhat {
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Ordered partitions of {1..n} under reverse refinement.
    Partitions {
        n: usize,
        #[arg(long, value_enum, default_value = "full")]
        variant: PartitionVariant,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Homology of the nerve of a named poset.
    Nerve {
        /// bruhat:n, partitions:n, boundary-partitions:n, open-partitions:n or chain:n
        poset: String,
        #[arg(long)]
        top: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Graphviz Hasse diagram of a named poset.
    ExportDot { poset: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PartitionVariant {
    /// P_{n-1}: all ordered partitions of {1..n}.
    Full,
    /// ∂P: everything but the one-block partition.
    Boundary,
    /// ⊓P: ∂P without ({1..n-1};{n}).
    Open,
}

#[derive(Subcommand)]
enum NecklaceCmd {
    /// All necklace maps T -> U.
    Hom {
        /// Source beads, e.g. 2,1,3
        source: String,
        /// Target beads
        target: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Necklaces embedded in a subcomplex of a cube between two vertices.
    Subneck {
        #[arg(long, short = 'c')]
        complex: String,
        #[arg(long, default_value = "alpha")]
        from: String,
        #[arg(long, default_value = "omega")]
        to: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Beads, joints and the cubical set of a necklace.
    Export { beads: String },
}

#[derive(Args)]
struct PathArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
}

#[derive(Subcommand)]
enum PathsCmd {
    /// List the paths as vertex sequences.
    List {
        #[command(flatten)]
        args: PathArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The ⤳ relation on paths, as covers.
    Order {
        #[command(flatten)]
        args: PathArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Graphviz Hasse diagram of the ⤳ order.
    Dot {
        #[command(flatten)]
        args: PathArgs,
    },
}

#[derive(Subcommand)]
enum RigidifyCmd {
    /// The mapping space between two vertices of a builtin.
    Hom {
        #[arg(long, short = 'c')]
        complex: String,
        #[arg(long, default_value = "alpha")]
        from: String,
        #[arg(long, default_value = "omega")]
        to: String,
        /// Truncation dimension; defaults to the longest chain plus one.
        #[arg(long)]
        top: Option<usize>,
        #[arg(long)]
        homology: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Args)]
struct SsetSource {
    /// JSON file with a truncated simplicial set.
    #[arg(long, short = 'i', conflicts_with = "builtin")]
    input: Option<PathBuf>,
    /// delta:n
    #[arg(long, short = 'b')]
    builtin: Option<String>,
}

impl SsetSource {
    fn load(&self) -> Result<TruncSSet> {
        match (&self.input, &self.builtin) {
            (Some(path), _) => TruncSSet::from_json(&serde_json::from_str(&fs::read_to_string(path)?)?),
            (None, Some(spec)) => spec.parse::<Builtin>()?.simplex(None),
            (None, None) => Err(Error::Invalid("give --input or --builtin".into())),
        }
    }
}

#[derive(Subcommand)]
enum SsetCmd {
    /// Integer homology up to the truncation degree.
    Homology {
        #[command(flatten)]
        src: SsetSource,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Euler characteristic of the nondegenerate simplices.
    Euler {
        #[command(flatten)]
        src: SsetSource,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// One of the suite names, or `all`.
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Include timings in JSON output.
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
    if !s.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn no_dot(f: Format) -> Result<()> {
    if f == Format::Dot {
        return Err(Error::Invalid("dot output is not available here".into()));
    }
    Ok(())
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Cubeset(c) => cubeset(c),
        Command::Poset(c) => poset(c),
        Command::Necklace(c) => necklace(c),
        Command::Paths(c) => paths(c),
        Command::Rigidify(c) => rigidify(c),
        Command::Sset(c) => sset(c),
        Command::Verify(v) => verify(v),
    }
}

fn cubeset(cmd: CubesetCmd) -> Result<bool> {
    match cmd {
        CubesetCmd::Build { src, format } => {
            no_dot(format)?;
            let c = src.load()?;
            let report = c.validate();
            if format == Format::Json {
                emit(&pretty(&json!({
                    "counts": c.counts(),
                    "vertices": c.vertex_names(),
                    "valid": report.is_ok(),
                })));
            } else {
                emit(&format!("cells by dimension: {:?}", c.counts()));
                emit(&format!("vertices: {}", c.vertex_names().join(" ")));
                emit(&format!("valid: {}", report.is_ok()));
            }
            Ok(report.is_ok())
        }
        CubesetCmd::Validate { src } => {
            let report = src.load()?.validate();
            emit(&report.to_string());
            Ok(report.is_ok())
        }
        CubesetCmd::Export { src, output } => {
            let s = pretty(&src.load()?.to_json());
            match output {
                Some(path) => fs::write(path, s + "\n")?,
                None => emit(&s),
            }
            Ok(true)
        }
    }
}

fn named_poset(spec: &str) -> Result<FinitePoset> {
    let (kind, n) = spec
        .split_once(':')
        .ok_or_else(|| Error::Invalid(format!("{spec:?}: expected kind:n")))?;
    let n: usize = n
        .parse()
        .map_err(|_| Error::Invalid(format!("{spec:?}: expected a number")))?;
    let partitions = |pick: usize| -> Result<FinitePoset> {
        if n == 0 {
            return Err(Error::Invalid("partition posets start at n = 1".into()));
        }
        let (p, b, o) = partition_posets(n - 1)?;
        Ok(vec![p, b, o].swap_remove(pick))
    };
    match kind {
        "bruhat" => Ok(bruhat(&(1..=n as u8).collect::<Vec<_>>())?.0),
        "partitions" => partitions(0),
        "boundary-partitions" => partitions(1),
        "open-partitions" => partitions(2),
        "chain" => Ok(FinitePoset::chain(n)),
        _ => Err(Error::Invalid(format!(
            "unknown poset {kind:?}; known: bruhat, partitions, boundary-partitions, open-partitions, chain"
        ))),
    }
}

fn show_poset(p: &FinitePoset, name: &str, format: Format) {
    match format {
        Format::Dot => emit(&p.to_dot(name)),
        Format::Json => emit(&pretty(&p.to_json())),
        Format::Text => {
            emit(&format!("{} elements, {} covers", p.len(), p.covers().len()));
            for &(x, y) in p.covers() {
                emit(&format!("{} < {}", p.label(x), p.label(y)));
            }
        }
    }
}

fn homology_text(h: &cubrig::sset::HomologyReport) -> String {
    let mut s = String::new();
    for d in &h.degrees {
        let torsion: Vec<String> = d.torsion.iter().map(|t| format!(" ⊕ Z/{t}")).collect();
        let mark = if d.exact { "" } else { " (cycles only, truncated)" };
        s += &format!("H{} = Z^{}{}{}\n", d.degree, d.betti, torsion.concat(), mark);
    }
    s += &format!("euler characteristic {}", h.euler_characteristic);
    s
}

fn poset(cmd: PosetCmd) -> Result<bool> {
    match cmd {
        PosetCmd::Bruhat { n, format } => {
            let (p, _) = bruhat(&(1..=n as u8).collect::<Vec<_>>())?;
            show_poset(&p, &format!("bruhat{n}"), format);
        }
        PosetCmd::Partitions { n, variant, format } => {
            let pick = match variant {
                PartitionVariant::Full => "partitions",
                PartitionVariant::Boundary => "boundary-partitions",
                PartitionVariant::Open => "open-partitions",
            };
            let name = format!("{pick}:{n}");
            show_poset(&named_poset(&name)?, &name, format);
        }
        PosetCmd::Nerve { poset, top, format } => {
            no_dot(format)?;
            let nv = nerve(&named_poset(&poset)?, top)?;
            let h = nv.sset.homology()?;
            match format {
                Format::Json => emit(&pretty(&json!({ "counts": nv.sset.counts(), "homology": h }))),
                _ => {
                    emit(&format!("nondegenerate simplices: {:?}", nv.sset.counts()));
                    emit(&homology_text(&h));
                }
            }
        }
        PosetCmd::ExportDot { poset } => emit(&named_poset(&poset)?.to_dot(&poset)),
    }
    Ok(true)
}

fn necklace(cmd: NecklaceCmd) -> Result<bool> {
    match cmd {
        NecklaceCmd::Hom { source, target, format } => {
            no_dot(format)?;
            let (t, u) = (Necklace::parse(&source)?, Necklace::parse(&target)?);
            let homs = hom_nec(&t, &u)?;
            match format {
                Format::Json => {
                    let maps: Vec<Value> = homs
                        .iter()
                        .map(|f| {
                            json!({
                                "components": f.components().iter().map(|(bead, m)| json!({
                                    "bead": bead,
                                    "map": m.normal_form().to_string(),
                                })).collect::<Vec<_>>(),
                                "vertices": f.vertex_map().iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
                                "mono": f.is_mono(),
                            })
                        })
                        .collect();
                    emit(&pretty(&json!({ "source": t.to_string(), "target": u.to_string(), "maps": maps })));
                }
                _ => {
                    emit(&format!("{} maps {t} -> {u}", homs.len()));
                    for f in &homs {
                        emit(&f.to_string());
                    }
                }
            }
        }
        NecklaceCmd::Subneck { complex, from, to, format } => {
            no_dot(format)?;
            let b: Builtin = complex.parse()?;
            let s = b
                .subcomplex()?
                .ok_or_else(|| Error::Invalid(format!("{b} is not a subcomplex of a cube")))?;
            let sn = subneck_poset(&s, b.vertex(&from)?, b.vertex(&to)?)?;
            match format {
                Format::Json => emit(&pretty(&json!({
                    "flags": sn.flags().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "covers": sn.poset.covers(),
                }))),
                _ => {
                    emit(&format!("{} flags", sn.len()));
                    for f in sn.flags() {
                        emit(&format!("{f}  {}", f.necklace()));
                    }
                }
            }
        }
        NecklaceCmd::Export { beads } => {
            let t = Necklace::parse(&beads)?;
            let (c, _) = t.to_complex();
            emit(&pretty(&json!({
                "beads": t.beads(),
                "joints": t.joints().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "complex": c.to_json(),
            })));
        }
    }
    Ok(true)
}

fn paths(cmd: PathsCmd) -> Result<bool> {
    match cmd {
        PathsCmd::List { args, format } => {
            no_dot(format)?;
            let (c, order) = path_order(&args)?;
            let names = c.vertex_names();
            let seqs: Vec<Vec<&str>> = (0..order.len())
                .map(|i| order.vertex_sequence(i).iter().map(|&v| names[v].as_str()).collect())
                .collect();
            if format == Format::Json {
                emit(&pretty(&json!({ "paths": seqs })));
            } else {
                emit(&format!("{} paths", seqs.len()));
                for s in seqs {
                    emit(&s.join(" -> "));
                }
            }
        }
        PathsCmd::Order { args, format } => {
            let (_, order) = path_order(&args)?;
            show_poset(&order.to_poset()?, "paths", format);
        }
        PathsCmd::Dot { args } => {
            let (_, order) = path_order(&args)?;
            emit(&order.to_poset()?.to_dot("paths"));
        }
    }
    Ok(true)
}

fn path_order(args: &PathArgs) -> Result<(CubicalComplex, cubrig::pathcat::PathPreorder)> {
    let c = args.src.load()?;
    let a = args.src.vertex(&c, &args.from)?;
    let b = args.src.vertex(&c, &args.to)?;
    let order = leadsto_closure(&c, a, b)?;
    Ok((c, order))
}

fn rigidify(cmd: RigidifyCmd) -> Result<bool> {
    let RigidifyCmd::Hom { complex, from, to, top, homology, format } = cmd;
    no_dot(format)?;
    let b: Builtin = complex.parse()?;
    let space = b.mapping_space(&from, &to, top)?;
    let h = if homology { Some(space.homology()?) } else { None };
    match format {
        Format::Json => {
            let mut v = space.to_json();
            if let Some(h) = &h {
                v["homology"] = serde_json::to_value(h)?;
            }
            emit(&pretty(&v));
        }
        _ => {
            emit(&format!("nondegenerate simplices: {:?}", space.sset.counts()));
            if let Some(h) = &h {
                emit(&homology_text(h));
            }
        }
    }
    Ok(true)
}

fn sset(cmd: SsetCmd) -> Result<bool> {
    match cmd {
        SsetCmd::Homology { src, format } => {
            no_dot(format)?;
            let h = src.load()?.homology()?;
            if format == Format::Json {
                emit(&pretty(&serde_json::to_value(&h)?));
            } else {
                emit(&homology_text(&h));
            }
        }
        SsetCmd::Euler { src } => emit(&src.load()?.euler_characteristic().to_string()),
    }
    Ok(true)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    no_dot(args.format)?;
    let reports = run_suite(&args.suite, args.seed)?;
    let passed = reports.iter().all(|r| r.passed());
    if args.format == Format::Json {
        let suites: Vec<Value> = reports
            .iter()
            .map(|r| {
                let claims: Vec<Value> = r
                    .claims
                    .iter()
                    .map(|c| {
                        let mut v = json!({ "claim": c.claim, "passed": c.passed, "detail": c.detail });
                        if args.timings {
                            v["millis"] = json!(c.millis);
                        }
                        v
                    })
                    .collect();
                json!({ "suite": r.suite, "passed": r.passed(), "claims": claims })
            })
            .collect();
        emit(&pretty(&json!({ "seed": args.seed, "passed": passed, "suites": suites })));
    } else {
        for r in &reports {
            for c in &r.claims {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                emit(&format!("{mark} [{}] {} ({} ms): {}", r.suite, c.claim, c.millis, c.detail));
            }
        }
        let total: usize = reports.iter().map(|r| r.claims.len()).sum();
        let failed: usize = reports.iter().map(|r| r.claims.iter().filter(|c| !c.passed).count()).sum();
        emit(&format!("{} of {total} claims passed (suites: {})", total - failed, if args.suite == "all" { SUITES.join(", ") } else { args.suite.clone() }));
    }
    Ok(passed)
}
