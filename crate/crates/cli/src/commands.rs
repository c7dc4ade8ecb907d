use std::fmt;
use std::fs;
use std::ops::Range;

use cayley_core::contour::{self, Contour};
use cayley_core::gibbs::{self, ConfigurationSpace, EnsembleSums, PeierlsSums};
use cayley_core::tree::{ball_size, build_volume_with, sphere_size};
use cayley_core::{verify, Budget, Configuration, Error as CoreError, TreeVolume, Vertex};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::{ConfigError, RunConfig};
use crate::report::{json_float, Cell, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    TreeInfo,
    Contours,
    Lemma3,
    Lemma4,
    Lemma5,
    Eq6,
    GroundStates,
    Periodic,
    HamiltonianEquiv,
    Partition,
    Marginal,
    Peierls,
    ChiCheck,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().unwrap().get_name().to_string()
    }
}

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Budget(String),
    /// A library error that is neither a config nor a budget problem.
    Internal(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "config error: {e}"),
            RunError::Budget(m) => f.write_str(m),
            RunError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

/// Execution context shared by all commands.
pub struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub workers: usize,
    pub tolerance: Option<f64>,
    pub budget: Budget,
}

impl Ctx<'_> {
    /// Maps a library error, anchoring domain errors at `key`.
    fn core(&self, key: &str) -> impl Fn(CoreError) -> RunError + '_ {
        let key = key.to_string();
        move |e| match e {
            CoreError::BudgetExceeded { .. } => RunError::Budget(e.to_string()),
            CoreError::Structural(_) => RunError::Internal(e.to_string()),
            other => RunError::Config(self.cfg.error_at(&key, other.to_string())),
        }
    }

    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    fn volume(&self) -> Result<TreeVolume, RunError> {
        let n = self.cfg.n()?;
        build_volume_with(self.cfg.spec.k(), n, &self.budget).map_err(self.core("n"))
    }

    /// Runs `f` on near-equal index ranges on `workers` threads and returns
    /// the results in range order.
    fn par_chunks<T, F>(&self, space: &ConfigurationSpace<'_>, f: F) -> Result<Vec<T>, RunError>
    where
        T: Send,
        F: Fn(Range<u64>) -> cayley_core::Result<T> + Sync,
    {
        let chunks = space.chunks(self.workers);
        let results: Vec<cayley_core::Result<T>> = if chunks.len() <= 1 {
            chunks.into_iter().map(&f).collect()
        } else {
            std::thread::scope(|s| {
                let handles: Vec<_> = chunks
                    .into_iter()
                    .map(|r| {
                        let f = &f;
                        s.spawn(move || f(r))
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("worker panicked"))
                    .collect()
            })
        };
        results
            .into_iter()
            .collect::<cayley_core::Result<Vec<T>>>()
            .map_err(self.core("params"))
    }
}

fn spin_label(s: u8) -> usize {
    s as usize + 1
}

fn vertex_list(vs: &[Vertex]) -> String {
    vs.iter()
        .map(|v| v.index().to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn edge_list(vol: &TreeVolume, es: &[cayley_core::EdgeId]) -> String {
    es.iter()
        .map(|&e| {
            let (u, v) = vol.endpoints(e);
            format!("{}-{}", u.index(), v.index())
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// `mark:v v v|mark:v v` for each subcontour, marks `1..=q`.
fn describe(c: &Contour) -> String {
    c.subcontours()
        .iter()
        .map(|s| format!("{}:{}", spin_label(s.mark()), vertex_list(s.interior())))
        .collect::<Vec<_>>()
        .join("|")
}

pub fn run(ctx: &Ctx<'_>, command: Command) -> Result<Report, RunError> {
    let mut r = Report::new(&command.name());
    let spec = &ctx.cfg.spec;
    r.set(
        "model",
        json!({
            "k": spec.k(),
            "q": spec.q(),
            "u_min": json_float(spec.u_min()),
            "ground_condition": spec.check_ground_condition().holds(),
        }),
    );
    match command {
        Command::TreeInfo => tree_info(ctx, &mut r)?,
        Command::Contours => contours(ctx, &mut r)?,
        Command::Lemma3 => boundary_sizes(ctx, &mut r)?,
        Command::Lemma4 => subgraph_counts(ctx, &mut r)?,
        Command::Lemma5 => contour_counts(ctx, &mut r)?,
        Command::Eq6 => spanning_identity(ctx, &mut r)?,
        Command::GroundStates => ground_states(ctx, &mut r)?,
        Command::Periodic => periodic(ctx, &mut r)?,
        Command::HamiltonianEquiv => hamiltonian_equiv(ctx, &mut r)?,
        Command::Partition => partition(ctx, &mut r)?,
        Command::Marginal => marginal(ctx, &mut r)?,
        Command::Peierls => peierls(ctx, &mut r)?,
        Command::ChiCheck => chi_check(ctx, &mut r)?,
    }
    Ok(r)
}

fn tree_info(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let vol = ctx.volume()?;
    let (k, n) = (vol.k(), vol.n());
    let spheres: Vec<usize> = (0..=n + 1).map(|m| vol.sphere(m).count()).collect();
    r.set("n", n);
    r.set("vertices", vol.num_vertices());
    r.set("edges", vol.num_edges());
    r.set("inner_vertices", vol.inner_len());
    r.set("sphere_sizes", spheres.clone());
    let closed = (0..=n + 1).all(|m| sphere_size(k, m) == Some(spheres[m] as u128))
        && ball_size(k, n + 1) == Some(vol.num_vertices() as u128);
    r.check(
        "sphere-and-ball-sizes",
        closed,
        "sphere sizes (k+1)k^(m-1) and ball size match the volume",
    );
    r.columns(&["u", "v", "label"]);
    let mut dump = String::new();
    for (u, v, label) in vol.edge_list() {
        r.row(vec![u.index().into(), v.index().into(), (label as usize).into()]);
        dump.push_str(&format!("{} {} {}\n", u.index(), v.index(), label));
    }
    if let Some(path) = &ctx.cfg.raw.params.edge_list {
        fs::write(path, dump).map_err(|e| {
            RunError::Config(ctx.cfg.error_at("edge_list", format!("cannot write {path}: {e}")))
        })?;
    }
    Ok(())
}

fn contours(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let vol = ctx.volume()?;
    let i = ctx.cfg.boundary();
    let spins = ctx
        .cfg
        .raw
        .params
        .spins
        .as_ref()
        .ok_or_else(|| ctx.cfg.error_at("params", "contours needs params.spins"))?;
    if spins.len() != vol.inner_len() {
        return Err(ctx
            .cfg
            .error_at(
                "spins",
                format!("spins has {} entries, V_{} has {} vertices", spins.len(), vol.n(), vol.inner_len()),
            )
            .into());
    }
    let sigma = Configuration::new(spins.iter().map(|&s| (s - 1) as u8).collect());
    let ext = contour::extend_configuration(&vol, &sigma, i).map_err(ctx.core("spins"))?;
    let gamma = contour::boundary(&vol, &ext).map_err(ctx.core("spins"))?;
    let found = contour::decompose(&vol, &ext).map_err(ctx.core("spins"))?;
    r.set("n", vol.n());
    r.set("boundary", spin_label(i));
    r.set("boundary_edges", gamma.len());
    r.set("contours", found.len());
    let classes: serde_json::Map<String, serde_json::Value> = gamma
        .class_sizes()
        .into_iter()
        .map(|(p, c)| (format!("{}-{}", spin_label(p.lo()), spin_label(p.hi())), c.into()))
        .collect();
    r.set("class_sizes", classes);
    r.columns(&["contour", "size", "mark", "interior", "support"]);
    let mut failures = 0;
    for (id, c) in found.iter().enumerate() {
        if contour::spanning_subgraph(&vol, c).is_err() {
            failures += 1;
        }
        for s in c.subcontours() {
            r.row(vec![
                id.into(),
                c.size().into(),
                spin_label(s.mark()).into(),
                vertex_list(s.interior()).into(),
                edge_list(&vol, s.support()).into(),
            ]);
        }
    }
    r.check(
        "spanning-subgraph-edge-count",
        failures == 0,
        format!("{failures} of {} contours violate (k-1)|E(K)| = k|contour| - (km+1)", found.len()),
    );
    Ok(())
}

fn boundary_sizes(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let k = ctx.cfg.spec.k();
    let max = ctx.cfg.raw.params.max_vertices.unwrap_or(8);
    let rep = verify::boundary_sizes(k, max, &ctx.budget).map_err(ctx.core("max_vertices"))?;
    r.set("max_vertices", max);
    r.set("subgraphs", rep.total());
    r.columns(&["vertices", "subgraphs", "boundary_size"]);
    for (s, &c) in rep.by_size.iter().enumerate() {
        r.row(vec![(s + 1).into(), c.into(), ((k - 1) * (s + 1) + 2).into()]);
    }
    r.check(
        "vertex-boundary-size",
        rep.failures == 0,
        if rep.failures == 0 {
            format!("all {} subgraphs satisfy |boundary| = (k-1)n+2", rep.total())
        } else {
            format!(
                "{} of {} subgraphs violate |boundary| = (k-1)n+2",
                rep.failures,
                rep.total()
            )
        },
    );
    r.check(
        "edge-boundary-agreement",
        rep.edge_mismatches == 0,
        format!("{} subgraphs with differing vertex and edge boundary sizes", rep.edge_mismatches),
    );
    Ok(())
}

fn subgraph_counts(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let max = ctx.cfg.raw.params.max_edges.unwrap_or(8);
    let rep = verify::subgraph_counts(ctx.cfg.spec.k(), max, &ctx.budget).map_err(ctx.core("max_edges"))?;
    r.columns(&["edges", "subgraphs", "bound"]);
    for &(s, c, b) in &rep.rows {
        r.row(vec![s.into(), c.into(), b.into()]);
    }
    r.check(
        "subgraph-count-bound",
        rep.holds(),
        format!("connected subgraph counts up to {max} edges are at most (ek)^size"),
    );
    Ok(())
}

fn contour_counts(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let max = ctx.cfg.raw.params.max_r.unwrap_or(6);
    let spec = &ctx.cfg.spec;
    let rep = verify::contour_counts(spec.k(), spec.q(), max, &ctx.budget).map_err(ctx.core("max_r"))?;
    r.set_float("alpha", rep.alpha);
    r.set_float("theta", rep.theta);
    r.columns(&["r", "contours", "bound"]);
    for &(s, c, b) in &rep.rows {
        r.row(vec![s.into(), c.into(), b.into()]);
    }
    r.check(
        "contour-count-bound",
        rep.holds(),
        format!("contours through the root of size up to {max} are at most theta*alpha^r"),
    );
    Ok(())
}

fn spanning_identity(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let vol = ctx.volume()?;
    let q = ctx.cfg.spec.q();
    let i = ctx.cfg.boundary();
    let samples = ctx.cfg.raw.params.samples.unwrap_or(0);
    let rep = if samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.raw.params.seed.unwrap_or(0));
        let configs = (0..samples).map(|_| {
            Configuration::new((0..vol.inner_len()).map(|_| rng.gen_range(0..q as u8)).collect())
        });
        verify::spanning_identity_on(&vol, i, configs).map_err(ctx.core("params"))?
    } else {
        let space = ConfigurationSpace::new(&vol, q, &ctx.budget).map_err(ctx.core("n"))?;
        let parts = ctx.par_chunks(&space, |range| verify::spanning_identity_range(&space, i, range))?;
        let mut total = verify::SpanningReport::default();
        for p in parts {
            total.merge(p);
        }
        total
    };
    r.set("n", vol.n());
    r.set("boundary", spin_label(i));
    r.set("mode", if samples > 0 { "sampled" } else { "exhaustive" });
    r.set("configurations", rep.configurations);
    r.set("contours", rep.contours);
    r.set("failures", rep.failures);
    r.check(
        "spanning-subgraph-edge-count",
        rep.holds(),
        format!(
            "(k-1)|E(K)| = k|contour| - (km+1) on {} contours, {} failures",
            rep.contours, rep.failures
        ),
    );
    Ok(())
}

fn ground_states(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let vol = ctx.volume()?;
    let spec = &ctx.cfg.spec;
    let max = ctx.cfg.raw.params.max_set_size.unwrap_or(3);
    let tol = ctx.tol(1e-9);
    let rep = verify::ground_states(spec, &vol, max, tol, &ctx.budget).map_err(ctx.core("max_set_size"))?;
    r.set("n", vol.n());
    r.set("max_set_size", max);
    r.set("sets", rep.sets);
    r.set("perturbations", rep.perturbations);
    r.columns(&["spin", "all_edges_minimal", "ground_state", "witness_set"]);
    for s in 0..spec.q() as u8 {
        let failure = rep.failures.iter().find(|f| f.0 == s);
        r.row(vec![
            spin_label(s).into(),
            (rep.all_edges_minimal[s as usize] as usize).into(),
            (failure.is_none() as usize).into(),
            failure.map_or(String::new(), |f| vertex_list(&f.1)).into(),
        ]);
    }
    let detail = format!(
        "{} perturbations on {} sets of size <= {max}; {} constant configurations fail",
        rep.perturbations,
        rep.sets,
        rep.failures.len()
    );
    if rep.ground_condition {
        r.check("constant-ground-states", rep.holds(), detail);
    } else {
        r.info("constant-ground-states", format!("{detail} (the diagonal energies are not a strict common minimum)"));
    }
    Ok(())
}

fn periodic(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let vol = ctx.volume()?;
    let quot = ctx.cfg.quotient()?;
    let q = ctx.cfg.spec.q();
    let rep = verify::periodic_count(&vol, &quot, q).map_err(ctx.core("quotient"))?;
    r.set("n", vol.n());
    r.set("index", rep.index);
    r.set("distinct_injective", rep.found);
    r.set("expected", rep.expected);
    r.check(
        "injective-periodic-count",
        rep.holds(),
        format!("{} distinct configurations, q!/(q-r)! = {}", rep.found, rep.expected),
    );
    r.columns(&["vertex", "depth", "coset", "spin"]);
    if let Some(a) = &ctx.cfg.raw.params.assignment {
        let assignment: Vec<u8> = a.iter().map(|&s| (s - 1) as u8).collect();
        let cfg = cayley_core::group::periodic_configuration(&vol, &quot, &assignment, q)
            .map_err(ctx.core("assignment"))?;
        let labels = cayley_core::group::coset_labels(&vol, &quot);
        for v in vol.vertices() {
            r.row(vec![
                v.index().into(),
                vol.depth(v).into(),
                labels[v.index()].into(),
                spin_label(cfg.spin(v)).into(),
            ]);
        }
        let minimal = cayley_core::model::all_edges_minimal(&ctx.cfg.spec, &vol, &cfg)
            .map_err(ctx.core("assignment"))?;
        r.set("all_edges_minimal", minimal);
        r.info(
            "all-edges-minimal",
            format!("every edge realizes U_min: {minimal}"),
        );
    }
    Ok(())
}

fn hamiltonian_equiv(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let vol = ctx.volume()?;
    let spec = &ctx.cfg.spec;
    let tol = ctx.tol(1e-9);
    let space = ConfigurationSpace::new(&vol, spec.q(), &ctx.budget).map_err(ctx.core("n"))?;
    let boundaries: Vec<u8> = match ctx.cfg.raw.params.boundary {
        Some(_) => vec![ctx.cfg.boundary()],
        None => (0..spec.q() as u8).collect(),
    };
    r.columns(&["boundary", "configurations", "max_abs_diff", "failures"]);
    let mut total = verify::HamiltonianReport::default();
    for &i in &boundaries {
        let parts = ctx.par_chunks(&space, |range| {
            verify::hamiltonian_equiv_range(spec, &space, i, tol, range)
        })?;
        let mut rep = verify::HamiltonianReport::default();
        for p in parts {
            rep.merge(p);
        }
        r.row(vec![
            spin_label(i).into(),
            rep.configurations.into(),
            rep.max_abs_diff.into(),
            rep.failures.into(),
        ]);
        total.merge(rep);
    }
    r.set("n", vol.n());
    r.set_float("max_abs_diff", total.max_abs_diff);
    let diag = spec.u(0, 0);
    let equal_diagonal = (0..spec.q()).all(|s| (spec.u(s, s) - diag).abs() <= 1e-12);
    let detail = format!(
        "contour form vs edge sum on {} configurations, max |diff| = {:e}, tolerance {tol:e}",
        total.configurations, total.max_abs_diff
    );
    if equal_diagonal {
        r.check("contour-hamiltonian", total.holds(), detail);
    } else {
        r.info(
            "contour-hamiltonian",
            format!("{detail} (diagonal energies differ, so the contour form is only a diagnostic)"),
        );
    }
    Ok(())
}

fn ensemble(
    ctx: &Ctx<'_>,
    space: &ConfigurationSpace<'_>,
    i: u8,
    betas: &[f64],
) -> Result<EnsembleSums, RunError> {
    let spec = &ctx.cfg.spec;
    let parts = ctx.par_chunks(space, |range| {
        gibbs::accumulate_ensemble(spec, space, i, betas, range)
    })?;
    let mut sums = EnsembleSums::new(betas, spec.q());
    for p in &parts {
        sums.merge(p);
    }
    Ok(sums)
}

fn partition(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let vol = ctx.volume()?;
    let spec = &ctx.cfg.spec;
    let i = ctx.cfg.boundary();
    let betas = ctx.cfg.betas()?;
    let tol = ctx.tol(1e-9);
    let space = ConfigurationSpace::new(&vol, spec.q(), &ctx.budget).map_err(ctx.core("n"))?;
    let sums = ensemble(ctx, &space, i, &betas)?;
    r.set("n", vol.n());
    r.set("boundary", spin_label(i));
    r.set("configurations", space.count());
    r.columns(&["beta", "log_z", "log_z_recursion", "abs_diff"]);
    let mut worst: f64 = 0.0;
    for (b, &beta) in betas.iter().enumerate() {
        let lz = sums.log_partition(b);
        let rec = gibbs::root_marginal_recursion(spec, vol.n(), i, beta, &ctx.budget)
            .map_err(ctx.core("beta"))?;
        let diff = (lz - rec.log_partition).abs();
        worst = worst.max(diff / lz.abs().max(1.0));
        r.row(vec![beta.into(), lz.into(), rec.log_partition.into(), diff.into()]);
    }
    r.check(
        "recursion-agreement",
        worst <= tol,
        format!("log Z by enumeration and by recursion agree to {worst:e} (relative), tolerance {tol:e}"),
    );
    Ok(())
}

fn marginal(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let spec = &ctx.cfg.spec;
    let n = ctx.cfg.n()?;
    let betas = ctx.cfg.betas()?;
    let tol = ctx.tol(1e-10);
    let boundaries: Vec<u8> = match ctx.cfg.raw.params.boundary {
        Some(_) => vec![ctx.cfg.boundary()],
        None => (0..spec.q() as u8).collect(),
    };
    let brute = ctx.cfg.raw.params.bruteforce.unwrap_or(false);
    let mut cols = vec!["boundary".to_string(), "beta".into(), "log_z".into()];
    cols.extend((1..=spec.q()).map(|s| format!("p{s}")));
    r.columns = cols;
    r.set("n", n);
    let mut sum_err: f64 = 0.0;
    let mut brute_err: f64 = 0.0;
    let vol = if brute { Some(ctx.volume()?) } else { None };
    for &i in &boundaries {
        let sums = match &vol {
            Some(v) => {
                let space = ConfigurationSpace::new(v, spec.q(), &ctx.budget).map_err(ctx.core("n"))?;
                Some(ensemble(ctx, &space, i, &betas)?)
            }
            None => None,
        };
        for (b, &beta) in betas.iter().enumerate() {
            let rep = gibbs::root_marginal_recursion(spec, n, i, beta, &ctx.budget)
                .map_err(ctx.core("n"))?;
            sum_err = sum_err.max((rep.root_marginal.iter().sum::<f64>() - 1.0).abs());
            if let Some(s) = &sums {
                let m = s.root_marginal(b);
                for (x, y) in m.iter().zip(&rep.root_marginal) {
                    brute_err = brute_err.max((x - y).abs());
                }
            }
            let mut row: Vec<Cell> = vec![spin_label(i).into(), beta.into(), rep.log_partition.into()];
            row.extend(rep.root_marginal.iter().map(|&p| Cell::from(p)));
            r.row(row);
        }
    }
    r.check(
        "marginal-normalized",
        sum_err <= 1e-12,
        format!("root marginals sum to 1 within {sum_err:e}"),
    );
    if brute {
        r.check(
            "recursion-agreement",
            brute_err <= tol,
            format!("recursion vs enumeration max |diff| = {brute_err:e}, tolerance {tol:e}"),
        );
    }
    Ok(())
}

fn peierls(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let vol = ctx.volume()?;
    let spec = &ctx.cfg.spec;
    let i = ctx.cfg.boundary();
    let betas = ctx.cfg.betas()?;
    let tol = ctx.tol(1e-10);
    let space = ConfigurationSpace::new(&vol, spec.q(), &ctx.budget).map_err(ctx.core("n"))?;
    let parts = ctx.par_chunks(&space, |range| {
        gibbs::accumulate_peierls(spec, &space, i, &betas, range)
    })?;
    let mut sums = PeierlsSums::new(&betas);
    for p in parts {
        sums.merge(p);
    }
    let sweep = gibbs::finish_peierls(spec, &vol, i, sums).map_err(ctx.core("lambda"))?;
    let max = sweep.max_ratio();
    r.set("n", vol.n());
    r.set("boundary", spin_label(i));
    r.set_float("lambda0", sweep.lambda0);
    r.set("contours", sweep.records.len());
    r.set("betas", betas.iter().map(|&b| json_float(b)).collect::<Vec<_>>());
    r.set("max_ratio", max.iter().map(|&m| json_float(m)).collect::<Vec<_>>());
    r.set(
        "log_z",
        sweep.log_partition.iter().map(|&m| json_float(m)).collect::<Vec<_>>(),
    );
    r.columns(&["contour", "size", "subcontours", "occurrences", "beta", "p", "ratio", "interiors"]);
    for (id, rec) in sweep.records.iter().enumerate() {
        let desc = describe(&rec.contour);
        for cp in &rec.probabilities {
            r.row(vec![
                id.into(),
                rec.contour.size().into(),
                rec.contour.num_subcontours().into(),
                rec.occurrences.into(),
                cp.beta.into(),
                cp.p.into(),
                cp.ratio.into(),
                desc.clone().into(),
            ]);
        }
    }
    let ok = max.iter().all(|&m| m <= 1.0 + tol);
    let detail = format!(
        "max p(gamma) exp(beta lambda0 |gamma|) over {} contours: {}",
        sweep.records.len(),
        max.iter().map(|m| format!("{m:.6}")).collect::<Vec<_>>().join(", ")
    );
    if sweep.ground_condition {
        r.check("peierls-ratio", ok, detail);
    } else {
        r.info("peierls-ratio", format!("{detail} (the diagonal energies are not a strict common minimum)"));
    }
    Ok(())
}

fn chi_check(ctx: &Ctx<'_>, r: &mut Report) -> Result<(), RunError> {
    let vol = ctx.volume()?;
    let i = ctx.cfg.boundary();
    let c = gibbs::chi_check(&vol, ctx.cfg.spec.q(), i, &ctx.budget).map_err(ctx.core("n"))?;
    r.set("n", vol.n());
    r.set("boundary", spin_label(i));
    r.set("pairs", c.pairs);
    r.set("contours", c.distinct_contours);
    r.check(
        "erasure-class-sizes",
        c.class_size_failures == 0,
        format!("{} of {} pairs break |G_e(s)| = |G_e(chi s)| + |g_e|", c.class_size_failures, c.pairs),
    );
    r.check(
        "erasure-removes-contour",
        c.residual_failures == 0,
        format!("{} pairs keep an edge of the erased contour", c.residual_failures),
    );
    r.check(
        "erasure-injective",
        c.injectivity_failures == 0,
        format!("{} contours with a non-injective erasure map", c.injectivity_failures),
    );
    Ok(())
}
