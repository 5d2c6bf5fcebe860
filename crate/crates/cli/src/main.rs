//! `nexang`: batch checks and transports over workbench JSON files.
//!
//! Exit status: 0 all pass, 1 some check failed, 2 input error,
//! 3 inconclusive but nothing failed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nexang_core::angulated::{check_angulated_functor, check_angulation_axioms, Angulation};
use nexang_core::exangulated::{self as ex, BiadditiveE, ExactSide, Realization, SigmaSide};
use nexang_core::homalg::{check_n_abelian_axioms, check_n_exact_axioms, ExactStructure};
use nexang_core::schema::{self, CheckKind, JobDoc, Payload, WorkbenchFile};
use nexang_core::search::Ctx;
use nexang_core::skeleton::compute_skeleton;
use nexang_core::transport;
use nexang_core::{BaseCategory, Check, Config, EquivalenceWitness, Report, Status, Universe};

#[derive(Parser, Debug)]
#[command(name = "nexang", version, about = "Check and transport higher angulated, exact and exangulated structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Universe bound B: sums of at most B base objects. Overrides the file.
    #[arg(long, global = true)]
    universe_bound: Option<usize>,
    /// Depth of weak-isomorphism zigzags when deciding admissible sequences.
    #[arg(long, global = true)]
    zigzag_depth: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// Worker threads for the checkers (default: all cores).
    #[arg(long, global = true)]
    parallel: Option<usize>,
    /// Stop at the first failing stage of a job.
    #[arg(long, global = true)]
    fail_fast: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a structure file, or run a check job.
    Check { file: PathBuf },
    /// Run a transport job and write the transported structure.
    Transport { job: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

/// Input problems; they end the run with exit status 2.
#[derive(Debug)]
struct InputError(String);

impl From<nexang_core::Error> for InputError {
    fn from(e: nexang_core::Error) -> Self {
        InputError(e.to_string())
    }
}

type Res<T> = Result<T, InputError>;

fn read(path: &Path) -> Res<WorkbenchFile> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    WorkbenchFile::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn resolve(base: &Path, rel: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(rel)
}

struct Run {
    cli: Cli,
}

impl Run {
    fn config(&self, file: &WorkbenchFile) -> Config {
        let mut cfg = Config::new(self.cli.universe_bound.or(file.universe_bound).unwrap_or(2));
        if let Some(d) = self.cli.zigzag_depth {
            cfg.zigzag_depth = d;
        }
        cfg
    }

    /// Runs `stages` in order; with `--fail-fast` the first failing stage
    /// ends the job.
    fn staged(&self, subject: &str, stages: Vec<Box<dyn FnOnce() -> Report + '_>>) -> Report {
        let mut r = Report::new(subject);
        for s in stages {
            let rep = s();
            let failed = rep.status() == Status::Fail;
            r.child(rep);
            if failed && self.cli.fail_fast {
                break;
            }
        }
        r
    }
}

fn category_of(path: &Path, f: &WorkbenchFile) -> Res<Arc<BaseCategory>> {
    f.category().map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn angulation_of(path: &Path, f: &WorkbenchFile) -> Res<(Arc<BaseCategory>, Angulation)> {
    let Payload::Angulation { n, sigma, generators, .. } = &f.payload else {
        return Err(InputError(format!("{}: expected an angulation, found {}", path.display(), f.payload.kind())));
    };
    let cat = category_of(path, f)?;
    let t = schema::build_angulation(&cat, *n, sigma, generators).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok((cat, t))
}

fn exact_of(path: &Path, f: &WorkbenchFile) -> Res<(Arc<BaseCategory>, ExactStructure)> {
    let Payload::ExactStructure { n, generators, .. } = &f.payload else {
        return Err(InputError(format!("{}: expected an exact structure, found {}", path.display(), f.payload.kind())));
    };
    let cat = category_of(path, f)?;
    let xs = schema::build_exact(&cat, *n, generators).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok((cat, xs))
}

fn exangulation_of(path: &Path, f: &WorkbenchFile, cfg: &Config) -> Res<(Ctx, BiadditiveE, Realization)> {
    let Payload::Exangulation { n, e, realization, .. } = &f.payload else {
        return Err(InputError(format!("{}: expected an exangulation, found {}", path.display(), f.payload.kind())));
    };
    let ctx = Ctx::new(category_of(path, f)?, cfg.clone());
    let (e, r) =
        schema::build_exangulation(&ctx, *n, e, realization).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok((ctx, e, r))
}

fn equivalence_of(path: &Path, f: &WorkbenchFile) -> Res<EquivalenceWitness> {
    let Payload::Equivalence { source, target, witness } = &f.payload else {
        return Err(InputError(format!("{}: expected an equivalence, found {}", path.display(), f.payload.kind())));
    };
    let at = |e: nexang_core::Error| InputError(format!("{}: {e}", path.display()));
    let fld = f.field().map_err(at)?;
    let (c, d) = (source.build(fld).map_err(at)?, target.build(fld).map_err(at)?);
    witness.build(&c, &d).map_err(at)
}

fn need<'a>(what: &str, v: &'a Option<String>) -> Res<&'a str> {
    v.as_deref().ok_or_else(|| InputError(format!("the job needs `{what}`")))
}

fn same_category(what: &str, a: &BaseCategory, b: &BaseCategory) -> Res<()> {
    if a != b {
        return Err(InputError(format!("{what} lives on a different category")));
    }
    Ok(())
}

fn laws_report(cat: &BaseCategory) -> Report {
    let mut r = Report::new("base category");
    let mut c = Check::new("category laws");
    let v = cat.validate();
    if v.is_empty() {
        c.pass();
    }
    for l in v {
        c.fail(format!("{} at {}", l.law, l.location));
    }
    r.push(c);
    r
}

impl Run {
    /// A structure file checked as what it is.
    fn check_file(&self, path: &Path, f: &WorkbenchFile) -> Res<Report> {
        let cfg = self.config(f);
        Ok(match &f.payload {
            Payload::Category { .. } => laws_report(&*category_of(path, f)?),
            Payload::Equivalence { .. } => {
                let w = equivalence_of(path, f)?;
                w.validate(Some(&Universe::new(w.c(), cfg.universe_bound)))
            }
            Payload::Angulation { .. } => {
                let (cat, t) = angulation_of(path, f)?;
                check_angulation_axioms(&Ctx::new(cat, cfg), &t)
            }
            Payload::ExactStructure { .. } => {
                let (cat, xs) = exact_of(path, f)?;
                check_n_exact_axioms(&Ctx::new(cat, cfg), &xs)
            }
            Payload::Exangulation { .. } => {
                let (ctx, e, r) = exangulation_of(path, f, &cfg)?;
                self.staged(
                    &format!("{}-exangulated category", r.n),
                    vec![
                        Box::new(|| ex::check_realization(&ctx, &e, &r)),
                        Box::new(|| ex::check_exangulated_axioms(&ctx, &e, &r)),
                    ],
                )
            }
            Payload::Job { job: JobDoc::Check { check, source, target, witness, n } } => {
                self.check_job(path, f, *check, source, target, witness, *n)?
            }
            other => return Err(InputError(format!("{}: a {} file cannot be checked on its own", path.display(), other.kind()))),
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn check_job(
        &self,
        path: &Path,
        job: &WorkbenchFile,
        kind: CheckKind,
        source: &str,
        target: &Option<String>,
        witness: &Option<String>,
        n: Option<usize>,
    ) -> Res<Report> {
        let sp = resolve(path, source);
        let sf = read(&sp)?;
        let mut cfg = self.config(&sf);
        if self.cli.universe_bound.is_none() && job.universe_bound.is_some() {
            cfg = self.config(job);
        }
        let expect = |k: &str| -> Res<()> {
            if sf.payload.kind() != k {
                return Err(InputError(format!("{}: expected {k}, found {}", sp.display(), sf.payload.kind())));
            }
            Ok(())
        };
        Ok(match kind {
            CheckKind::BaseCategory => laws_report(&*category_of(&sp, &sf)?),
            CheckKind::Equivalence | CheckKind::Angulated | CheckKind::NExact | CheckKind::Exangulated => {
                expect(match kind {
                    CheckKind::Equivalence => "equivalence",
                    CheckKind::Angulated => "angulation",
                    CheckKind::NExact => "exact_structure",
                    _ => "exangulation",
                })?;
                let mut own = self.cli_clone();
                own.cli.universe_bound = Some(cfg.universe_bound);
                own.check_file(&sp, &sf)?
            }
            CheckKind::NAbelian => {
                let n = n.ok_or_else(|| InputError("an n-abelian job needs `n`".into()))?;
                check_n_abelian_axioms(&Ctx::new(category_of(&sp, &sf)?, cfg), n)
            }
            CheckKind::AngulatedFunctor | CheckKind::Crosscheck if sf.payload.kind() == "angulation" => {
                let tp = resolve(path, need("target", target)?);
                let (_, src) = angulation_of(&sp, &sf)?;
                let (dcat, dst) = angulation_of(&tp, &read(&tp)?)?;
                let wp = resolve(path, need("witness", witness)?);
                let wf = read(&wp)?;
                let Payload::AngulatedFunctor { functor, theta } = &wf.payload else {
                    return Err(InputError(format!("{}: expected an angulated_functor", wp.display())));
                };
                let w = schema::build_angulated_functor(functor, theta, &src, &dst)
                    .map_err(|e| InputError(format!("{}: {e}", wp.display())))?;
                let dctx = Ctx::new(dcat, cfg.clone());
                if kind == CheckKind::AngulatedFunctor {
                    check_angulated_functor(&dctx, &w, &src, &dst)
                } else {
                    let sctx = Ctx::new(src.sigma().src().clone(), cfg);
                    let (se, sr) = ex::induced_from_sigma(&sctx, &src);
                    let (de, dr) = ex::induced_from_sigma(&dctx, &dst);
                    ex::crosscheck_from_theta(
                        &dctx,
                        &w,
                        &SigmaSide { angulation: &src, e: &se, r: &sr },
                        &SigmaSide { angulation: &dst, e: &de, r: &dr },
                    )
                }
            }
            CheckKind::Crosscheck if sf.payload.kind() == "exact_structure" => {
                let tp = resolve(path, need("target", target)?);
                let (scat, src) = exact_of(&sp, &sf)?;
                let (dcat, dst) = exact_of(&tp, &read(&tp)?)?;
                let wp = resolve(path, need("witness", witness)?);
                let w = equivalence_of(&wp, &read(&wp)?)?;
                same_category("the equivalence source", w.c(), &scat)?;
                same_category("the equivalence target", w.d(), &dcat)?;
                let (sctx, dctx) = (Ctx::new(scat, cfg.clone()), Ctx::new(dcat, cfg));
                let (se, sr, _) = ex::induced_from_exact(&sctx, &src)?;
                let (de, dr, _) = ex::induced_from_exact(&dctx, &dst)?;
                ex::crosscheck_exact(
                    &dctx,
                    &w.f,
                    &ExactSide { xs: &src, e: &se, r: &sr },
                    &ExactSide { xs: &dst, e: &de, r: &dr },
                )
            }
            CheckKind::ExangulatedFunctor => {
                expect("exangulation")?;
                let tp = resolve(path, need("target", target)?);
                let (_, se, sr) = exangulation_of(&sp, &sf, &cfg)?;
                let (dctx, de, dr) = exangulation_of(&tp, &read(&tp)?, &cfg)?;
                let wp = resolve(path, need("witness", witness)?);
                let wf = read(&wp)?;
                let Payload::ExangulatedFunctor { functor, gamma } = &wf.payload else {
                    return Err(InputError(format!("{}: expected an exangulated_functor", wp.display())));
                };
                let w = schema::build_exangulated_functor(functor, gamma, &se, &de)
                    .map_err(|e| InputError(format!("{}: {e}", wp.display())))?;
                ex::check_exangulated_functor(&dctx, &w, (&se, &sr), (&de, &dr))
            }
            CheckKind::AngulatedFunctor | CheckKind::Crosscheck => {
                return Err(InputError(format!("{}: this check needs an angulation or exact structure", sp.display())))
            }
        })
    }

    fn cli_clone(&self) -> Run {
        Run {
            cli: Cli {
                command: Command::Check { file: PathBuf::new() },
                universe_bound: self.cli.universe_bound,
                zigzag_depth: self.cli.zigzag_depth,
                report: self.cli.report,
                parallel: self.cli.parallel,
                fail_fast: self.cli.fail_fast,
            },
        }
    }

    fn transport(&self, path: &Path) -> Res<Report> {
        let job = read(path)?;
        let Payload::Job { job: JobDoc::Transport { source, along, output, n } } = &job.payload else {
            return Err(InputError(format!("{}: expected a transport job", path.display())));
        };
        let sp = resolve(path, source);
        let sf = read(&sp)?;
        let cfg = self.config(if self.cli.universe_bound.is_none() && job.universe_bound.is_some() { &job } else { &sf });
        let cat = category_of(&sp, &sf)?;
        let skeleton = along == "skeleton";
        let w = if skeleton {
            compute_skeleton(&cat).1.reversed()
        } else {
            let wp = resolve(path, along);
            let w = equivalence_of(&wp, &read(&wp)?)?;
            same_category("the equivalence source", w.c(), &cat)?;
            w
        };
        // A well-formed witness that is not an equivalence is a failed
        // check, not an input error.
        let wrep = w.validate(Some(&Universe::new(w.c(), cfg.universe_bound)));
        if wrep.status() == Status::Fail {
            let mut rep = Report::new("transport");
            rep.child(wrep);
            return Ok(rep);
        }
        let out = resolve(path, output);
        let fld = sf.field()?;
        let mut rep = Report::new("transport");
        let (payload, witness) = match &sf.payload {
            Payload::Angulation { .. } => {
                let (_, t) = angulation_of(&sp, &sf)?;
                if skeleton {
                    let r = transport::transport_to_skeleton(&t, &cfg)?;
                    self.collect(&mut rep, r.witness_report, r.verification, r.functor_report);
                    (schema::angulation_payload(&r.target), Some(schema::angulated_functor_payload(&r.witness.functor)))
                } else {
                    let r = transport::transport_angulation(&t, &w, &cfg)?;
                    self.collect(&mut rep, r.witness_report, r.verification, r.functor_report);
                    (schema::angulation_payload(&r.target), Some(schema::angulated_functor_payload(&r.witness)))
                }
            }
            Payload::ExactStructure { .. } => {
                let (_, xs) = exact_of(&sp, &sf)?;
                let r = transport::transport_exact_structure(&xs, &w, &cfg)?;
                self.collect(&mut rep, r.witness_report, r.verification, r.functor_report);
                (schema::exact_payload(w.d(), &r.target), None)
            }
            Payload::Exangulation { .. } => {
                let (_, e, r0) = exangulation_of(&sp, &sf, &cfg)?;
                let r = transport::transport_exangulated_structure((&e, &r0), &w, &cfg)?;
                self.collect(&mut rep, r.witness_report, r.verification, r.functor_report);
                let (e2, r2) = &r.target;
                (schema::exangulation_payload(e2, r2), Some(schema::exangulated_functor_payload(&r.witness)))
            }
            Payload::Category { .. } => {
                let n = n.ok_or_else(|| InputError("an n-abelian transport needs `n`".into()))?;
                rep.child(transport::transport_abelian(n, &w, &cfg)?);
                (Payload::Category { category: schema::CategoryDoc::from_category(w.d()) }, None)
            }
            other => return Err(InputError(format!("{}: cannot transport a {} file", sp.display(), other.kind()))),
        };
        let write = |p: &Path, payload: Payload| -> Res<()> {
            if let Some(dir) = p.parent() {
                fs::create_dir_all(dir).map_err(|e| InputError(format!("{}: {e}", dir.display())))?;
            }
            let f = WorkbenchFile::new(fld, Some(cfg.universe_bound), payload);
            fs::write(p, f.to_json()).map_err(|e| InputError(format!("{}: {e}", p.display())))
        };
        write(&out, payload)?;
        if let Some(wp) = witness {
            write(&witness_path(&out), wp)?;
        }
        Ok(rep)
    }

    fn collect(&self, rep: &mut Report, witness: Report, verification: Report, functor: Report) {
        for r in [witness, verification, functor] {
            let failed = r.status() == Status::Fail;
            rep.child(r);
            if failed && self.cli.fail_fast {
                break;
            }
        }
    }
}

/// `out.json` -> `out.functor.json`, where the structure-functor data goes.
fn witness_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("output");
    out.with_file_name(format!("{stem}.functor.json"))
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: &'a str,
    verdict: Status,
    /// Seed of the sampling order inside searches. It is not configurable,
    /// so identical inputs give identical reports.
    seed: u64,
    universe_bound: Option<usize>,
    zigzag_depth: Option<usize>,
    report: &'a Report,
}

fn exit_code(s: Status) -> u8 {
    match s {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.parallel {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
    }
    let run = Run { cli };
    let t0 = Instant::now();
    let res = match &run.cli.command {
        Command::Check { file } => read(file).and_then(|f| run.check_file(file, &f)),
        Command::Transport { job } => run.transport(job),
    };
    let rep = match res {
        Ok(r) => r,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let verdict = rep.status();
    match run.cli.report {
        ReportFormat::Text => {
            print!("{}", rep.render_text());
            println!("verdict: {verdict}");
        }
        ReportFormat::Json => {
            let env = Envelope {
                schema_version: schema::SCHEMA_VERSION,
                verdict,
                seed: Config::new(0).seed,
                universe_bound: run.cli.universe_bound,
                zigzag_depth: run.cli.zigzag_depth,
                report: &rep,
            };
            println!("{}", serde_json::to_string_pretty(&env).expect("reports serialize"));
        }
    }
    eprintln!("elapsed: {:.2?}", t0.elapsed());
    ExitCode::from(exit_code(verdict))
}
