//! `arrangement`: run one pipeline stage on a model file and print JSON.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arrangement_core::complex::{barycentric_subdivision, chain_complex, homology, nerve, Poset};
use arrangement_core::mh::{check_lmh_mh, local_distances_agree};
use arrangement_core::models::{
    intersection_poset, whitney_oracle, BuildOptions, EnumerationOptions, FaceData, Model, PeriodicOptions,
};
use arrangement_core::pi1::{
    abelianization, build_cover, pi1_presentation, salvetti_two_complex, ArrangementGraph, PermutationCover,
};
use arrangement_core::salvetti::{
    bounded_chambers, dual_complex, salvetti_category, salvetti_cw, CellGraphComplex,
};
use arrangement_core::{Error, ErrorKind, Strategy, SCHEMA_VERSION};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "arrangement", version, about = "Combinatorial invariants of submanifold arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a DOT graph (Hasse diagram or arrangement graph).
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Periodic window as LOW:HIGH (default -1:2).
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    /// Bound on the hyperplane count for exhaustive enumeration.
    #[arg(long, global = true)]
    max_hyperplanes: Option<usize>,
    /// Run every data-parallel loop on the current thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Face category with samples and side data.
    Faces { model: PathBuf },
    /// Intersection poset.
    Lattice { model: PathBuf },
    /// Salvetti category, counts and homology.
    Salvetti { model: PathBuf },
    /// Betti numbers and torsion.
    Homology {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = HomologyStage::Salvetti)]
        stage: HomologyStage,
    },
    /// Metrical-hemisphere checks.
    MhCheck {
        model: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MhStage::Salvetti)]
        stage: MhStage,
        /// Check a cell complex JSON file instead of a model.
        #[arg(long, conflicts_with = "model")]
        complex: Option<PathBuf>,
    },
    /// Fundamental group presentation of the Salvetti complex.
    Pi1 { model: PathBuf },
    /// Finite cover from a permutation representation.
    Cover {
        model: PathBuf,
        #[arg(long)]
        perms: PathBuf,
    },
    /// Whitney and Zaslavsky numbers against enumeration (hyperplane models).
    Oracle { model: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum HomologyStage {
    /// Nerve of the face category (the ambient manifold).
    Faces,
    /// Nerve of the Salvetti category.
    Salvetti,
}

#[derive(Clone, Copy, ValueEnum)]
enum MhStage {
    Dual,
    Salvetti,
}

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(Value, Option<String>), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_window(s: &str) -> Result<PeriodicOptions, Failure> {
    let bad = || Failure::Usage(format!("window must be LOW:HIGH, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let window_low = lo.trim().parse().map_err(|_| bad())?;
    let window_high = hi.trim().parse().map_err(|_| bad())?;
    if window_low > 0 || window_high < 1 {
        return Err(Failure::Usage("window must contain [0, 1]".into()));
    }
    Ok(PeriodicOptions {
        window_low,
        window_high,
    })
}

struct Context {
    options: BuildOptions,
    strategy: Strategy,
}

impl Context {
    fn model(&self, path: &Path) -> Result<Model, Failure> {
        Ok(Model::from_json_str(&read(path)?)?)
    }

    fn faces(&self, path: &Path) -> Result<FaceData, Failure> {
        Ok(self.model(path)?.build(&self.options, self.strategy)?)
    }
}

fn homology_json(h: &arrangement_core::complex::HomologyResult) -> Value {
    serde_json::to_value(h).unwrap()
}

fn run(cli: &Cli) -> Outcome {
    let mut options = BuildOptions::default();
    if let Some(w) = &cli.window {
        options.window = parse_window(w)?;
    }
    if let Some(m) = cli.max_hyperplanes {
        options.enumeration = EnumerationOptions { max_hyperplanes: m };
    }
    let strategy = if cli.sequential {
        Strategy::Sequential
    } else {
        Strategy::default()
    };
    let cx = Context { options, strategy };
    match &cli.command {
        Command::Faces { model } => {
            let fd = cx.faces(model)?;
            let dot = Poset::from_relation(
                fd.faces.iter().map(|f| f.label.clone()).collect(),
                fd.faces.iter().map(|f| Some(f.dim)).collect(),
                (0..fd.num_faces()).flat_map(|a| {
                    let fd = &fd;
                    (0..fd.num_faces()).filter(move |&b| a != b && fd.leq(a, b)).map(move |b| (a, b))
                }),
            )?
            .to_dot("faces");
            Ok((fd.to_json(), Some(dot)))
        }
        Command::Lattice { model } => {
            let fd = cx.faces(model)?;
            let p = intersection_poset(&fd)?;
            Ok((
                json!({"schema_version": SCHEMA_VERSION, "poset": p}),
                Some(p.to_dot("intersection poset")),
            ))
        }
        Command::Salvetti { model } => {
            let fd = cx.faces(model)?;
            let sal = salvetti_category(&fd, strategy)?;
            let h = sal.homology(strategy)?;
            let mut v = sal.to_json(&fd);
            let obj = v.as_object_mut().unwrap();
            obj.insert("regular".into(), fd.regular.into());
            obj.insert("homology".into(), homology_json(&h));
            obj.insert("euler_characteristic".into(), h.euler_characteristic().into());
            if fd.regular {
                let cw = salvetti_cw(&fd, strategy)?;
                obj.insert("cell_counts".into(), json!(cw.counts()));
                if let Ok(b) = bounded_chambers(&fd, strategy) {
                    obj.insert("bounded_chambers".into(), json!(b.bounded));
                }
            }
            let graph = ArrangementGraph::of(&salvetti_two_complex(&fd, strategy)?);
            Ok((v, Some(graph.to_dot("arrangement graph"))))
        }
        Command::Homology { model, stage } => {
            let fd = cx.faces(model)?;
            let (name, cat) = match stage {
                HomologyStage::Faces => ("faces", fd.category.clone()),
                HomologyStage::Salvetti => ("salvetti", salvetti_category(&fd, strategy)?.category),
            };
            let t = nerve(&cat, strategy)?;
            let c = chain_complex(&t)?;
            let h = homology(&c, strategy);
            let counts = t.counts();
            let chi_counts = arrangement_core::complex::euler_characteristic(&t);
            let sd = barycentric_subdivision(&cat, strategy)?;
            Ok((
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "stage": name,
                    "objects": cat.num_objects(),
                    "simplex_counts": counts,
                    "subdivision_size": sd.len(),
                    "betti": h.betti,
                    "torsion": homology_json(&h)["torsion"],
                    "euler_characteristic": h.euler_characteristic(),
                    "euler_from_counts": chi_counts,
                    "euler_agrees": chi_counts == h.euler_characteristic(),
                }),
                None,
            ))
        }
        Command::MhCheck { model, stage, complex } => {
            let (q, name) = match (complex, model) {
                (Some(path), _) => (CellGraphComplex::from_json_str(&read(path)?)?, "complex"),
                (None, Some(model)) => {
                    let fd = cx.faces(model)?;
                    match stage {
                        MhStage::Dual => (dual_complex(&fd)?, "dual"),
                        MhStage::Salvetti => (salvetti_cw(&fd, strategy)?, "salvetti"),
                    }
                }
                (None, None) => return Err(Failure::Usage("mh-check needs a model or --complex".into())),
            };
            let report = check_lmh_mh(&q, strategy)?;
            let mut v = serde_json::to_value(&report).unwrap();
            let obj = v.as_object_mut().unwrap();
            obj.insert("schema_version".into(), SCHEMA_VERSION.into());
            obj.insert("stage".into(), name.into());
            obj.insert("cell_counts".into(), json!(q.counts()));
            if report.mh {
                obj.insert("local_distances_agree".into(), local_distances_agree(&q).into());
            }
            Ok((v, Some(q.to_dot(name))))
        }
        Command::Pi1 { model } => {
            let fd = cx.faces(model)?;
            let t = salvetti_two_complex(&fd, strategy)?;
            let p = pi1_presentation(&t)?;
            let mut v = p.to_json();
            v.as_object_mut().unwrap().insert("abelianization".into(), serde_json::to_value(abelianization(&p)).unwrap());
            v.as_object_mut().unwrap().insert("cell_counts".into(), json!(t.counts()));
            Ok((v, Some(ArrangementGraph::of(&t).to_dot("arrangement graph"))))
        }
        Command::Cover { model, perms } => {
            let fd = cx.faces(model)?;
            let t = salvetti_two_complex(&fd, strategy)?;
            let p = pi1_presentation(&t)?;
            let rho = PermutationCover::from_json_str(&read(perms)?)?;
            let cover = build_cover(&t, &p, &rho, strategy)?;
            let h = cover.complex.homology(strategy)?;
            Ok((
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "sheets": cover.sheets,
                    "cell_counts": cover.complex.counts(),
                    "components": cover.components,
                    "orbits": cover.orbits,
                    "euler_characteristic": cover.euler_characteristic,
                    "base_euler_characteristic": cover.base_euler_characteristic,
                    "betti": h.betti,
                    "verification": cover.verification,
                }),
                Some(ArrangementGraph::of(&cover.complex).to_dot("cover")),
            ))
        }
        Command::Oracle { model } => {
            let m = cx.model(model)?;
            let Model::Hyperplane(a) = &m else {
                return Err(Error::Restriction("the Whitney oracle applies to hyperplane models".into()).into());
            };
            let fd = m.build(&cx.options, strategy)?;
            let w = whitney_oracle(a);
            let sal = salvetti_category(&fd, strategy)?.homology(strategy)?;
            let bounded = bounded_chambers(&fd, strategy)?.bounded.len() as u64;
            let chambers = fd.chambers().len() as u64;
            let betti: Vec<u64> = sal.betti.iter().map(|&b| b as u64).collect();
            let mut oracle_betti = w.betti.clone();
            while oracle_betti.len() < betti.len() {
                oracle_betti.push(0);
            }
            Ok((
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "oracle": w,
                    "enumerated": {"chambers": chambers, "bounded": bounded, "salvetti_betti": betti},
                    "agree": {
                        "chambers": chambers == w.chambers,
                        "bounded": bounded == w.bounded,
                        "betti": betti == oracle_betti,
                    },
                }),
                None,
            ))
        }
    }
}

fn write(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(value, dot)| {
        let mut text = serde_json::to_string_pretty(&value).unwrap();
        text.push('\n');
        write(&cli.out, &text)?;
        if let (Some(path), Some(dot)) = (&cli.dot, dot) {
            fs::write(path, dot).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (kind, code, message) = match f {
                Failure::Usage(m) => ("input", 2, m),
                Failure::Lib(e) => {
                    let (k, c) = match e.kind() {
                        ErrorKind::Input => ("input", 2),
                        ErrorKind::Restriction => ("restriction", 3),
                        ErrorKind::Consistency => ("consistency", 4),
                    };
                    (k, c, e.to_string())
                }
            };
            eprintln!("{}", json!({"error": kind, "message": message}));
            ExitCode::from(code)
        }
    }
}
