//! The command-line surface. Exit codes: 0 success, 1 input error,
//! 2 verification mismatch.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};
use sublat_core::goursat::{goursat_subgroups, DirectProduct};
use sublat_core::latticeops::SubgroupLattice;
use sublat_core::oracle::{canonical_family, oracle_all_subgroups};
use sublat_core::solvable::subgroups_solvable;
use sublat_core::subgroups::{
    expand_classes, fuse_into_classes, lattice_cyclic_extension_with_seeds, LatticeFilter,
    SubgroupClass,
};
use sublat_core::PermGroup;

use crate::emit::{emit_dot, emit_json, DotOptions, EmitMeta};
use crate::parse::{parse_group_file, parse_seed_file, GroupFile};

#[derive(Parser)]
#[command(
    name = "sublat",
    version,
    about = "Subgroup lattices of finite permutation groups",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All subgroup classes and the lattice, by cyclic extension over zuppos
    Lattice {
        /// Group file (degree/gen lines)
        file: PathBuf,
        /// Only subgroups of order at most N
        #[arg(long, value_name = "N")]
        max_order: Option<u64>,
        /// Write the lattice in graphviz format
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Write the lattice as JSON
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Check the result against the brute-force oracle
        #[arg(long)]
        verify: bool,
        /// Extra perfect-subgroup seeds (seed:/gen: blocks)
        #[arg(long, value_name = "PATH")]
        perfect_seeds: Option<PathBuf>,
        /// Add same-rank layout hints by subgroup order to the DOT output
        #[arg(long)]
        rank_hints: bool,
    },
    /// Subgroup classes of a solvable group, by elementary-abelian lifting
    Solvable {
        file: PathBuf,
        #[arg(long, value_name = "N")]
        max_order: Option<u64>,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        rank_hints: bool,
    },
    /// Subgroups of the direct product of two groups, via Goursat's lemma
    Goursat {
        file_g: PathBuf,
        file_h: PathBuf,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        rank_hints: bool,
    },
    /// Subgroups strictly between a given subgroup and the whole group
    Intermediate {
        file: PathBuf,
        /// Group file for the lower subgroup
        #[arg(long, value_name = "PATH")]
        sub: PathBuf,
        #[arg(long)]
        verify: bool,
    },
    /// Classes at most k covering steps below the whole group
    Lowlayer {
        file: PathBuf,
        /// Covering distance bound (k = 1 gives the maximal classes)
        #[arg(long)]
        k: u32,
        /// Only classes of index at most N
        #[arg(long, value_name = "N")]
        max_index: Option<u64>,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    VerifyMismatch(String),
}

impl From<sublat_core::GroupError> for CliError {
    fn from(err: sublat_core::GroupError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<crate::parse::ParseError> for CliError {
    fn from(err: crate::parse::ParseError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Input(err.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return 0;
            }
            eprint!("{err}");
            return 1;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::VerifyMismatch(msg)) => {
            eprintln!("verification mismatch: {msg}");
            2
        }
    }
}

struct LoadedGroup {
    group: PermGroup,
    name: Option<String>,
    sha256: String,
}

fn load_group(path: &Path) -> CliResult<LoadedGroup> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))?;
    let GroupFile { group, name } = parse_group_file(&text)?;
    // force the chain now so order errors surface as input errors
    group.order()?;
    Ok(LoadedGroup {
        group,
        name,
        sha256: format!("{:x}", Sha256::digest(&bytes)),
    })
}

fn print_class_table(classes: &[SubgroupClass]) {
    println!("class  order  length  normal");
    for (i, class) in classes.iter().enumerate() {
        println!(
            "{:>5}  {:>5}  {:>6}  {}",
            i + 1,
            class.order(),
            class.len(),
            if class.is_normal() { "yes" } else { "no" }
        );
    }
    let total: usize = classes.iter().map(|c| c.len()).sum();
    println!("{} classes / {} subgroups", classes.len(), total);
}

fn write_outputs(
    lattice: &SubgroupLattice,
    meta: &EmitMeta,
    dot: Option<&Path>,
    json: Option<&Path>,
    rank_hints: bool,
) -> CliResult<()> {
    if let Some(path) = dot {
        let text = emit_dot(
            lattice,
            &DotOptions {
                rank_by_order: rank_hints,
            },
        );
        std::fs::write(path, text)?;
    }
    if let Some(path) = json {
        let text = emit_json(lattice, meta);
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn verify_against_oracle(
    group: &PermGroup,
    classes: &[SubgroupClass],
    max_order: Option<u64>,
) -> CliResult<()> {
    let oracle: Vec<PermGroup> = oracle_all_subgroups(group, None)?
        .into_iter()
        .filter(|s| {
            max_order.is_none_or(|m| s.order().map(|o| o <= m).unwrap_or(false))
        })
        .collect();
    let ours = canonical_family(&expand_classes(classes))?;
    let theirs = canonical_family(&oracle)?;
    if ours == theirs {
        println!("verified against oracle: {} subgroups match", oracle.len());
        Ok(())
    } else {
        Err(CliError::VerifyMismatch(format!(
            "engine found {} subgroups, oracle found {}",
            ours.len(),
            theirs.len()
        )))
    }
}

fn lattice_command(
    classes: Vec<SubgroupClass>,
    loaded: &LoadedGroup,
    max_order: Option<u64>,
    dot: Option<&Path>,
    json: Option<&Path>,
    verify: bool,
    rank_hints: bool,
) -> CliResult<()> {
    print_class_table(&classes);
    if verify {
        verify_against_oracle(&loaded.group, &classes, max_order)?;
    }
    if dot.is_some() || json.is_some() {
        let lattice = if max_order.is_some() {
            SubgroupLattice::build_partial(&loaded.group, classes)?
        } else {
            SubgroupLattice::build(&loaded.group, classes)?
        };
        let meta = EmitMeta {
            input_sha256: Some(loaded.sha256.clone()),
            group_name: loaded.name.clone(),
            max_order,
        };
        write_outputs(&lattice, &meta, dot, json, rank_hints)?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Lattice {
            file,
            max_order,
            dot,
            json,
            verify,
            perfect_seeds,
            rank_hints,
        } => {
            let loaded = load_group(&file)?;
            let filter = match max_order {
                Some(n) => LatticeFilter::max_order(n),
                None => LatticeFilter::none(),
            };
            let seeds = match perfect_seeds {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    parse_seed_file(&text, loaded.group.degree())?
                }
                None => Vec::new(),
            };
            let classes =
                lattice_cyclic_extension_with_seeds(&loaded.group, &filter, &seeds)?;
            lattice_command(
                classes,
                &loaded,
                max_order,
                dot.as_deref(),
                json.as_deref(),
                verify,
                rank_hints,
            )
        }
        Command::Solvable {
            file,
            max_order,
            dot,
            json,
            verify,
            rank_hints,
        } => {
            let loaded = load_group(&file)?;
            let filter = match max_order {
                Some(n) => LatticeFilter::max_order(n),
                None => LatticeFilter::none(),
            };
            let classes = subgroups_solvable(&loaded.group, &filter)?;
            lattice_command(
                classes,
                &loaded,
                max_order,
                dot.as_deref(),
                json.as_deref(),
                verify,
                rank_hints,
            )
        }
        Command::Goursat {
            file_g,
            file_h,
            dot,
            json,
            verify,
            rank_hints,
        } => {
            let left = load_group(&file_g)?;
            let right = load_group(&file_h)?;
            let subs_g = expand_classes(&lattice_cyclic_extension_with_seeds(
                &left.group,
                &LatticeFilter::none(),
                &[],
            )?);
            let subs_h = expand_classes(&lattice_cyclic_extension_with_seeds(
                &right.group,
                &LatticeFilter::none(),
                &[],
            )?);
            let subs = goursat_subgroups(&left.group, &right.group, &subs_g, &subs_h)?;
            let product = DirectProduct::new(&left.group, &right.group)?;
            let classes = fuse_into_classes(product.group(), &subs)?;
            print_class_table(&classes);
            if verify {
                let oracle = oracle_all_subgroups(product.group(), None)?;
                let ours = canonical_family(&subs)?;
                let theirs = canonical_family(&oracle)?;
                if ours == theirs {
                    println!(
                        "verified against oracle: {} subgroups match",
                        oracle.len()
                    );
                } else {
                    return Err(CliError::VerifyMismatch(format!(
                        "goursat found {} subgroups, oracle found {}",
                        ours.len(),
                        theirs.len()
                    )));
                }
            }
            if dot.is_some() || json.is_some() {
                let lattice = SubgroupLattice::build(product.group(), classes)?;
                let name = match (&left.name, &right.name) {
                    (Some(a), Some(b)) => Some(format!("{a} x {b}")),
                    _ => None,
                };
                let meta = EmitMeta {
                    input_sha256: None,
                    group_name: name,
                    max_order: None,
                };
                write_outputs(&lattice, &meta, dot.as_deref(), json.as_deref(), rank_hints)?;
            }
            Ok(())
        }
        Command::Intermediate { file, sub, verify } => {
            let loaded = load_group(&file)?;
            let sub_loaded = load_group(&sub)?;
            let classes = lattice_cyclic_extension_with_seeds(
                &loaded.group,
                &LatticeFilter::none(),
                &[],
            )?;
            let lattice = SubgroupLattice::build(&loaded.group, classes)?;
            let between = lattice.intermediate_subgroups(&sub_loaded.group)?;
            println!("{} intermediate subgroups", between.len());
            for v in &between {
                let gens: Vec<String> =
                    v.generators().iter().map(|g| g.to_string()).collect();
                println!("order {:>5}: {}", v.order()?, gens.join(", "));
            }
            if verify {
                let u = &sub_loaded.group;
                let u_order = u.order()?;
                let mut expected = Vec::new();
                for v in oracle_all_subgroups(&loaded.group, None)? {
                    let vo = v.order()?;
                    if vo > u_order && vo < loaded.group.order()? && v.has_subgroup(u)? {
                        expected.push(v);
                    }
                }
                let ours = canonical_family(&between)?;
                let theirs = canonical_family(&expected)?;
                if ours == theirs {
                    println!(
                        "verified against oracle: {} subgroups match",
                        expected.len()
                    );
                } else {
                    return Err(CliError::VerifyMismatch(format!(
                        "engine found {} intermediate subgroups, oracle found {}",
                        ours.len(),
                        theirs.len()
                    )));
                }
            }
            Ok(())
        }
        Command::Lowlayer { file, k, max_index } => {
            let loaded = load_group(&file)?;
            let classes = lattice_cyclic_extension_with_seeds(
                &loaded.group,
                &LatticeFilter::none(),
                &[],
            )?;
            let lattice = SubgroupLattice::build(&loaded.group, classes)?;
            let selected = lattice.low_layer(k, max_index);
            println!("class  order  length  normal");
            let mut total = 0usize;
            for &c in &selected {
                let class = &lattice.classes()[c];
                total += class.len();
                println!(
                    "{:>5}  {:>5}  {:>6}  {}",
                    c + 1,
                    class.order(),
                    class.len(),
                    if class.is_normal() { "yes" } else { "no" }
                );
            }
            println!("{} classes / {} subgroups", selected.len(), total);
            Ok(())
        }
    }
}
