//! The `zzstab` command line: argument parsing and verb dispatch.
//!
//! Every verb prints one JSON document (or an SVG for `chart` without
//! `--out`) on stdout. Exit status is 0 on success, 1 on domain errors and
//! 2 on usage errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::braid::{apply_word, BraidWord};
use crate::chamber::{chamber_identify, lift_path, locate, monodromy, ChargePath};
use crate::chart::{chart_rays, render_svg};
use crate::complex::{minimal_model, ComplexKG};
use crate::coxeter::{positive_roots, CoxeterGraph, RootVector, DEFAULT_ROOT_CAP};
use crate::error::{Error, Result};
use crate::gen::random_complex;
use crate::hom::{hom_dim_K, iso_minimal};
use crate::json::{complex_from_json, complex_to_json, round15};
use crate::k0::{class_of, induced_matrix, specialize, specialize_matrix};
use crate::stability::{
    deformation_ok, heart_indecomposables, hn_filtration, is_semistable, is_stability_function,
    phase, slicing_distance_lb, Catalogue, CentralCharge, HeartDescriptor, StabilityData,
};

#[derive(Parser, Debug)]
#[command(name = "zzstab", version, about = "Complexes over zigzag algebras, braid actions and stability conditions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Preset name (A2, D4, E6, ...) or path to a graph JSON file.
    #[arg(long)]
    pub graph: String,
    /// Seed for every randomised step.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct CatalogueOpts {
    /// Maximum braid word length used to enumerate heart objects.
    #[arg(long, default_value_t = 2)]
    pub word_len: usize,
    /// Extra linear shifts tried when searching for subobjects.
    #[arg(long, default_value_t = 2)]
    pub shift_window: i32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal model of a complex.
    Reduce {
        #[command(flatten)]
        common: Common,
        /// Complex JSON file, or `P<k>` for a generator.
        #[arg(long)]
        complex: String,
    },
    /// Apply a braid word such as "s1 s2'" to a complex.
    Act {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long)]
        complex: String,
    },
    /// Dimension of the homotopy-category hom space.
    Homdim {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Graded and specialised Grothendieck group class.
    K0 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        complex: String,
    },
    /// Laurent matrix of a braid word on the Grothendieck group.
    Burau {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Positive roots.
    Roots {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_ROOT_CAP)]
        cap: usize,
    },
    /// Check braid relations on generators and random complexes.
    CheckBraid {
        #[command(flatten)]
        common: Common,
        /// Number of random complexes tested besides the generators.
        #[arg(long, default_value_t = 5)]
        random: usize,
    },
    /// Whether a central charge is a stability function on a heart.
    StabCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        stability: PathBuf,
    },
    /// Phases of catalogue objects, or of one complex.
    Phases {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        cat: CatalogueOpts,
        #[arg(long)]
        stability: PathBuf,
        #[arg(long)]
        complex: Option<String>,
    },
    /// Harder-Narasimhan filtration of a complex.
    Hn {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        cat: CatalogueOpts,
        #[arg(long)]
        stability: PathBuf,
        #[arg(long)]
        complex: String,
    },
    /// Semistable catalogue objects, or semistability of one complex.
    Sstable {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        cat: CatalogueOpts,
        #[arg(long)]
        stability: PathBuf,
        #[arg(long)]
        complex: Option<String>,
    },
    /// Lower bound for the slicing distance over test objects.
    Distance {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        cat: CatalogueOpts,
        #[arg(long)]
        stability: PathBuf,
        #[arg(long)]
        other: PathBuf,
        /// Test objects; defaults to the generators.
        #[arg(long = "test")]
        tests: Vec<String>,
    },
    /// Whether a new charge is an admissible small deformation.
    DeformCheck {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        cat: CatalogueOpts,
        #[arg(long)]
        stability: PathBuf,
        /// JSON file `[[re, im], ...]` with the new charge.
        #[arg(long)]
        charge: PathBuf,
        #[arg(long)]
        eps: f64,
    },
    /// Region, walls and chamber of a central charge.
    Locate {
        #[command(flatten)]
        common: Common,
        /// JSON file `[[re, im], ...]`.
        #[arg(long)]
        charge: PathBuf,
    },
    /// Lift a charge path to a braid word.
    Lift {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        path: PathBuf,
        /// Braid word of the starting heart.
        #[arg(long, default_value = "")]
        start: String,
    },
    /// Braid monodromy of a loop.
    Monodromy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        path: PathBuf,
        /// Treat the path as a loop in the quotient by the Weyl group.
        #[arg(long)]
        quotient: bool,
    },
    /// SVG chart of semistable charges.
    Chart {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        cat: CatalogueOpts,
        #[arg(long)]
        stability: PathBuf,
        /// Output file; the SVG goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_graph(arg: &str) -> Result<CoxeterGraph> {
    let path = std::path::Path::new(arg);
    if path.exists() {
        CoxeterGraph::from_json(&read(path)?)
    } else {
        CoxeterGraph::preset(arg)
    }
}

/// A complex from a JSON file, or the generator `P<k>` (1-indexed).
pub fn load_complex(g: &CoxeterGraph, arg: &str) -> Result<ComplexKG> {
    if let Some(k) = arg.strip_prefix('P').and_then(|k| k.parse::<usize>().ok()) {
        if k == 0 {
            return Err(Error::Parse("generators are numbered from 1".into()));
        }
        g.check_vertex(k - 1)?;
        return Ok(ComplexKG::generator(k - 1, 0));
    }
    let v: Value = serde_json::from_str(&read(std::path::Path::new(arg))?)?;
    complex_from_json(g, &v)
}

fn load_stability(g: &CoxeterGraph, path: &std::path::Path) -> Result<StabilityData> {
    StabilityData::from_json(g, &read(path)?)
}

fn load_charge(g: &CoxeterGraph, path: &std::path::Path) -> Result<CentralCharge> {
    let v: Value = serde_json::from_str(&read(path)?)?;
    let z = CentralCharge::from_json(&v)?;
    z.check(g)?;
    Ok(z)
}

fn complex_json(v: Complex64) -> Value {
    json!([round15(v.re), round15(v.im)])
}

fn catalogue(g: &CoxeterGraph, sd: &StabilityData, o: &CatalogueOpts, seed: u64) -> Result<Catalogue> {
    heart_indecomposables(g, &sd.heart, o.word_len, o.shift_window, seed)
}

fn check_braid(g: &CoxeterGraph, random: usize, seed: u64) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut objects: Vec<ComplexKG> = (0..g.n()).map(|i| ComplexKG::generator(i, 0)).collect();
    for _ in 0..random {
        objects.push(minimal_model(g, &random_complex(g, &mut rng)?));
    }
    let iso = |w1: &BraidWord, w2: &BraidWord, x: &ComplexKG| -> Result<bool> {
        iso_minimal(g, &apply_word(g, w1, x)?, &apply_word(g, w2, x)?, seed)
    };
    let mut relations = Vec::new();
    let mut all = true;
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            let (lhs, rhs, kind) = if g.adjacent(a, b) {
                (
                    BraidWord::new(vec![(a, 1), (b, 1), (a, 1)]),
                    BraidWord::new(vec![(b, 1), (a, 1), (b, 1)]),
                    "braid",
                )
            } else {
                (
                    BraidWord::new(vec![(a, 1), (b, 1)]),
                    BraidWord::new(vec![(b, 1), (a, 1)]),
                    "commute",
                )
            };
            let mut holds = true;
            for x in &objects {
                holds &= iso(&lhs, &rhs, x)?;
            }
            all &= holds;
            relations.push(json!({"pair": [a + 1, b + 1], "kind": kind, "holds": holds}));
        }
    }
    let mut inverses = true;
    for s in 0..g.n() {
        let w = BraidWord::new(vec![(s, 1), (s, -1)]);
        for x in &objects {
            inverses &= iso(&w, &BraidWord::empty(), x)?;
        }
    }
    all &= inverses;
    Ok(json!({
        "objects": objects.len(),
        "relations": relations,
        "inverses": inverses,
        "all_hold": all,
    }))
}

/// Run a parsed command and return what it prints.
pub fn execute(cmd: &Command) -> Result<String> {
    let value = match cmd {
        Command::Reduce { common, complex } => {
            let g = load_graph(&common.graph)?;
            complex_to_json(&g, &minimal_model(&g, &load_complex(&g, complex)?))
        }
        Command::Act { common, word, complex } => {
            let g = load_graph(&common.graph)?;
            let w: BraidWord = word.parse()?;
            complex_to_json(&g, &apply_word(&g, &w, &load_complex(&g, complex)?)?)
        }
        Command::Homdim { common, source, target } => {
            let g = load_graph(&common.graph)?;
            let (x, y) = (load_complex(&g, source)?, load_complex(&g, target)?);
            json!({"dim": hom_dim_K(&g, &x, &y)})
        }
        Command::K0 { common, complex } => {
            let g = load_graph(&common.graph)?;
            let c = class_of(&g, &load_complex(&g, complex)?);
            json!({
                "class": c.components.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                "display": c.components.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>(),
                "specialized": specialize(&c).0,
            })
        }
        Command::Burau { common, word } => {
            let g = load_graph(&common.graph)?;
            let w: BraidWord = word.parse()?;
            w.check(&g)?;
            let m = induced_matrix(&g, &w)?;
            json!({
                "matrix": m.iter().map(|r| r.iter().map(|p| p.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "display": m.iter().map(|r| r.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "specialized": specialize_matrix(&m),
            })
        }
        Command::Roots { common, cap } => {
            let g = load_graph(&common.graph)?;
            let rs = positive_roots(&g, *cap)?;
            json!({"count": rs.len(), "roots": rs.iter().map(|r| r.0.clone()).collect::<Vec<_>>()})
        }
        Command::CheckBraid { common, random } => {
            let g = load_graph(&common.graph)?;
            check_braid(&g, *random, common.seed)?
        }
        Command::StabCheck { common, stability } => {
            let g = load_graph(&common.graph)?;
            let sd = load_stability(&g, stability)?;
            json!({
                "stability_function": is_stability_function(&sd)?,
                "simple_classes": sd.heart.simple_classes.iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
                "simple_charges": sd.heart.simple_classes.iter().map(|c| complex_json(sd.z.eval(c))).collect::<Vec<_>>(),
            })
        }
        Command::Phases { common, cat, stability, complex } => {
            let g = load_graph(&common.graph)?;
            let sd = load_stability(&g, stability)?;
            match complex {
                Some(c) => json!({"phase": round15(phase(&g, &sd, &load_complex(&g, c)?)?)}),
                None => {
                    let cat = catalogue(&g, &sd, cat, common.seed)?;
                    let mut objects = Vec::new();
                    for e in &cat.entries {
                        objects.push(json!({
                            "label": e.label,
                            "phase": round15(phase(&g, &sd, &e.object)?),
                            "charge": complex_json(sd.z.eval_complex(&g, &e.object)),
                        }));
                    }
                    json!({"objects": objects, "catalogue_complete": cat.complete})
                }
            }
        }
        Command::Hn { common, cat, stability, complex } => {
            let g = load_graph(&common.graph)?;
            let sd = load_stability(&g, stability)?;
            let cat = catalogue(&g, &sd, cat, common.seed)?;
            let x = load_complex(&g, complex)?;
            let hn = hn_filtration(&g, &sd, &x, &cat)?;
            let pieces: Vec<Value> = hn
                .pieces
                .iter()
                .map(|p| {
                    json!({
                        "phase": round15(p.phase),
                        "class": specialize(&class_of(&g, &p.object)).0,
                        "complex": complex_to_json(&g, &p.object),
                    })
                })
                .collect();
            json!({"pieces": pieces, "catalogue_complete": hn.catalogue_complete})
        }
        Command::Sstable { common, cat, stability, complex } => {
            let g = load_graph(&common.graph)?;
            let sd = load_stability(&g, stability)?;
            let cat = catalogue(&g, &sd, cat, common.seed)?;
            match complex {
                Some(c) => {
                    let s = is_semistable(&g, &sd, &load_complex(&g, c)?, &cat)?;
                    json!({"semistable": s.semistable, "catalogue_complete": s.catalogue_complete})
                }
                None => {
                    let mut labels = Vec::new();
                    for e in &cat.entries {
                        if is_semistable(&g, &sd, &e.object, &cat)?.semistable {
                            labels.push(e.label.clone());
                        }
                    }
                    json!({"semistable": labels, "catalogue_complete": cat.complete})
                }
            }
        }
        Command::Distance { common, cat: opts, stability, other, tests } => {
            let g = load_graph(&common.graph)?;
            let sd1 = load_stability(&g, stability)?;
            let sd2 = load_stability(&g, other)?;
            let cat1 = catalogue(&g, &sd1, opts, common.seed)?;
            let cat2 = catalogue(&g, &sd2, opts, common.seed)?;
            let objs: Vec<ComplexKG> = if tests.is_empty() {
                (0..g.n()).map(|i| ComplexKG::generator(i, 0)).collect()
            } else {
                tests.iter().map(|t| load_complex(&g, t)).collect::<Result<_>>()?
            };
            json!({"distance_lb": round15(slicing_distance_lb(&g, &sd1, &cat1, &sd2, &cat2, &objs)?)})
        }
        Command::DeformCheck { common, cat: opts, stability, charge, eps } => {
            let g = load_graph(&common.graph)?;
            let sd = load_stability(&g, stability)?;
            let w = load_charge(&g, charge)?;
            let cat = catalogue(&g, &sd, opts, common.seed)?;
            json!({"ok": deformation_ok(&g, &sd, &w, *eps, &cat)?})
        }
        Command::Locate { common, charge } => {
            let g = load_graph(&common.graph)?;
            let z = load_charge(&g, charge)?;
            let rs = positive_roots(&g, DEFAULT_ROOT_CAP)?;
            let r = locate(&g, &z, &rs)?;
            let chamber = match chamber_identify(&g, &z) {
                Ok(w) => json!(w.word().iter().map(|i| i + 1).collect::<Vec<_>>()),
                Err(Error::OnWall(_)) => Value::Null,
                Err(e) => return Err(e),
            };
            let roots = |v: &[RootVector]| v.iter().map(|r| r.0.clone()).collect::<Vec<_>>();
            json!({
                "region": r.region,
                "walls": roots(&r.walls),
                "hyperplanes": roots(&r.hyperplanes),
                "chamber": chamber,
            })
        }
        Command::Lift { common, path, start } => {
            let g = load_graph(&common.graph)?;
            let p = ChargePath::from_json(&g, &read(path)?)?;
            let heart = HeartDescriptor::new(&g, start.parse()?)?;
            let (word, end) = lift_path(&g, &p, &heart)?;
            json!({
                "word": word.to_string(),
                "heart": end.word.to_string(),
                "simple_classes": end.simple_classes.iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
            })
        }
        Command::Monodromy { common, path, quotient } => {
            let g = load_graph(&common.graph)?;
            let p = ChargePath::from_json(&g, &read(path)?)?;
            let m = monodromy(&g, &p, *quotient)?;
            json!({"word": m.word.to_string(), "weyl_image": m.weyl_image})
        }
        Command::Chart { common, cat: opts, stability, out } => {
            let g = load_graph(&common.graph)?;
            let sd = load_stability(&g, stability)?;
            let cat = catalogue(&g, &sd, opts, common.seed)?;
            let rays = chart_rays(&g, &sd, &cat)?;
            let svg = render_svg(&rays);
            match out {
                None => return Ok(svg),
                Some(path) => {
                    std::fs::write(path, &svg)
                        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    json!({
                        "out": path.display().to_string(),
                        "rays": rays.iter().map(|r| json!({"label": r.label, "charge": complex_json(r.charge)})).collect::<Vec<_>>(),
                    })
                }
            }
        }
    };
    let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialise");
    s.push('\n');
    Ok(s)
}

/// Exit status for an error: 2 for usage problems, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_usage() {
        2
    } else {
        1
    }
}
