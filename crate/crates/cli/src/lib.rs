//! Experiment runner: builds a group, catalog and family from a JSON config,
//! runs one named experiment and writes its tables under the output
//! directory, prefixed by the experiment name.

pub mod config;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::ValueEnum;
use serde_json::{json, Value};

use semiweyl::io::{self, csv_writer, fmt_f64};
use semiweyl::iwasawa::AxisGrid;
use semiweyl::prime_parseval::default_membership_tol;
use semiweyl::{
    build_riemann_lebesgue_family, coefficients, isometry_defect, lift_family, make_group, membership,
    semicompleteness_defect, transform_h, Catalog, Family, Function, IwasawaModel, OmissionSpec, ProfileSpec, TestSet,
    TestSetSpec, Weights,
};

pub use config::ExperimentConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical check failed: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) => 2,
            Self::Numerical(_) => 3,
        }
    }
}

impl From<semiweyl::Error> for CliError {
    fn from(e: semiweyl::Error) -> Self {
        if e.is_numerical() {
            Self::Numerical(e.to_string())
        } else {
            Self::Config(e.to_string())
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Labels, degrees and magnitudes of the catalog.
    Catalog,
    /// Per-function Parseval defects against the configured family.
    Parseval,
    /// Semicompleteness report for the configured family and weights.
    Semicomplete,
    /// Isometry defects of the transform onto matrix sequences.
    Isometry,
    /// Lift of the family through the Iwasawa model.
    Lift,
}

/// Command-line overrides on top of the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

/// Runs one experiment and returns the files it wrote.
pub fn execute(command: Command, cfg: &ExperimentConfig, ov: &Overrides) -> Result<Vec<PathBuf>> {
    if let Some(t) = ov.tol {
        config::check_tol(t)?;
    }
    let run = Run {
        cfg,
        out: ov.out.clone().or_else(|| cfg.output_dir.as_ref().map(|d| cfg.base_dir.join(d))).unwrap_or_else(|| PathBuf::from("out")),
        seed: ov.seed.unwrap_or(cfg.seed),
        tol: ov.tol.or(cfg.tolerances.membership),
    };
    match command {
        Command::Catalog => run.catalog(),
        Command::Parseval => run.parseval(),
        Command::Semicomplete => run.semicomplete(),
        Command::Isometry => run.isometry(),
        Command::Lift => run.lift(),
    }
}

struct Run<'a> {
    cfg: &'a ExperimentConfig,
    out: PathBuf,
    seed: u64,
    tol: Option<f64>,
}

struct Setup {
    cat: Catalog,
    family: Family,
}

impl Run<'_> {
    fn path(&self, suffix: &str) -> PathBuf {
        self.out.join(format!("{}_{suffix}", self.cfg.name))
    }

    fn catalog_for(&self, group: &str) -> Result<Catalog> {
        let g = Arc::new(make_group::<f64>(group)?);
        Ok(Catalog::build(g, self.cfg.truncation.resolve()?)?)
    }

    fn setup_on(&self, group: &str) -> Result<Setup> {
        let cat = self.catalog_for(group)?;
        let labels: Vec<String> = self.cfg.omit.iter().map(|l| l.as_label()).collect();
        let omit = OmissionSpec::parse(&cat, &labels)?;
        let family = build_riemann_lebesgue_family(&cat, &omit)?;
        Ok(Setup { cat, family })
    }

    fn setup(&self) -> Result<Setup> {
        self.setup_on(&self.cfg.group)
    }

    fn testset(&self, cat: &Catalog) -> Result<TestSet<f64>> {
        let spec = TestSetSpec::parse(&self.cfg.testset)?;
        Ok(spec.realize(cat, self.seed, &self.cfg.base_dir, &self.cfg.testset)?)
    }

    fn weights(&self, n: usize) -> Result<Weights> {
        let spec = self.cfg.weights.trim();
        if spec == "unit" {
            return Ok(Weights::unit(n)?);
        }
        if let Some(rest) = spec.strip_prefix("diag-reciprocal") {
            let seed = match rest.strip_prefix(":seed=") {
                Some(s) => s.parse().map_err(|_| CliError::Config(format!("bad seed in `{spec}`")))?,
                None if rest.is_empty() => self.seed,
                None => return Err(CliError::Config(format!("unknown weights `{spec}`"))),
            };
            return Ok(Weights::reciprocal_seeded(n, seed)?);
        }
        if let Some(p) = spec.strip_prefix("table:") {
            let file = std::fs::File::open(self.cfg.resolve(p))
                .map_err(|e| CliError::Config(format!("cannot open weights `{p}`: {e}")))?;
            return Ok(io::read_weights_csv(file)?);
        }
        Err(CliError::Config(format!("unknown weights `{spec}`")))
    }

    fn write(&self, suffix: &str, bytes: Vec<u8>) -> Result<PathBuf> {
        let path = self.path(suffix);
        io::write_atomic(&path, &bytes).map_err(|e| CliError::Config(format!("writing `{}`: {e}", path.display())))?;
        Ok(path)
    }

    fn write_json(&self, suffix: &str, v: &Value) -> Result<PathBuf> {
        let mut text = serde_json::to_string_pretty(v).expect("json values serialize");
        text.push('\n');
        self.write(suffix, text.into_bytes())
    }

    fn catalog(&self) -> Result<Vec<PathBuf>> {
        let cat = self.catalog_for(&self.cfg.group)?;
        Ok(vec![self.write_json("catalog.json", &io::catalog_json(&cat))?])
    }

    fn parseval(&self) -> Result<Vec<PathBuf>> {
        let Setup { cat, family } = self.setup()?;
        let ts = self.testset(&cat)?;
        let bessel_tol = cat.group().gram_tol();
        let mut buf = Vec::new();
        {
            let mut w = csv_writer(&mut buf);
            w.write_record(["fn_id", "norm_sq", "coeff_sum_sq", "defect"]).map_err(csv_err)?;
            for (name, f) in ts.iter() {
                let norm_sq = f.norm_sqr();
                let sum: f64 = coefficients(f, &family)?.iter().map(|z| z.norm_sqr()).sum();
                let defect = norm_sq - sum;
                if defect < -bessel_tol * norm_sq.max(1.0) {
                    return Err(CliError::Numerical(format!("Bessel inequality fails for {name}: defect {defect:e}")));
                }
                w.write_record([name.to_string(), fmt_f64(norm_sq), fmt_f64(sum), fmt_f64(defect)]).map_err(csv_err)?;
            }
            w.flush().map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(vec![self.write("parseval.csv", buf)?])
    }

    fn semicomplete(&self) -> Result<Vec<PathBuf>> {
        let Setup { cat, family } = self.setup()?;
        let ts = self.testset(&cat)?;
        let weights = self.weights(family.max_block_size())?;
        let mut report = semicompleteness_defect(&family, &weights, &cat, &ts)?;
        report.epsilon = self.cfg.epsilon;
        let mut csv = Vec::new();
        io::write_report_csv(&report, &mut csv)?;
        Ok(vec![self.write_json("semicomplete.json", &io::report_json(&report))?, self.write("semicomplete.csv", csv)?])
    }

    fn isometry(&self) -> Result<Vec<PathBuf>> {
        let Setup { cat, family } = self.setup()?;
        let ts = self.testset(&cat)?;
        let tol = self.tol.unwrap_or_else(|| default_membership_tol(&family));
        let mut buf = Vec::new();
        {
            let mut w = csv_writer(&mut buf);
            w.write_record(["fn_id", "norm_sq", "image_norm_sq", "isometry_defect", "membership_defect", "verdict"])
                .map_err(csv_err)?;
            for (name, f) in ts.iter() {
                let image = transform_h(f, &family)?.norm_sqr();
                let defect = isometry_defect(f, &family)?;
                let m = membership(f, &family, tol)?;
                let verdict = if m.is_member() { "member" } else { "non-member" };
                w.write_record([
                    name.to_string(),
                    fmt_f64(f.norm_sqr()),
                    fmt_f64(image),
                    fmt_f64(defect),
                    fmt_f64(m.defect),
                    verdict.to_string(),
                ])
                .map_err(csv_err)?;
            }
            w.flush().map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(vec![self.write("isometry.csv", buf)?])
    }

    fn lift(&self) -> Result<Vec<PathBuf>> {
        let iw = self.cfg.iwasawa.as_ref().ok_or_else(|| CliError::Config("lift needs an `iwasawa` block".into()))?;
        let k = iw.k.clone().unwrap_or_else(|| self.cfg.group.clone());
        let Setup { cat, family } = self.setup_on(&k)?;
        let profile = self.profile(&iw.profile, &iw.a, &iw.n)?;
        let model = Arc::new(IwasawaModel::new(cat.group().clone(), &iw.a, &iw.n, profile)?);
        let lifted = lift_family(&model, &family)?;
        let ts = self.testset(&cat)?;
        let weights = self.weights(family.max_block_size())?;
        let k_report = semiweyl::check_k_semicomplete(&lifted, &cat, &weights, &ts)?;
        let g0 = Function::random_seeded(cat.group().clone(), self.seed);
        let cond_iii_id = model.condition_iii_residual(&g0, model.identity_index())?;
        let cond_iii_max = model.condition_iii_max_residual(&g0)?;
        let v = json!({
            "K": k,
            "profile": iw.profile,
            "normalization_scale": model.normalization_scale(),
            "members": lifted.len(),
            "an_nodes": model.an_len(),
            "restriction_residual": lifted.restriction_residual(),
            "gram_residual": lifted.gram_residual(),
            "norm_residual": lifted.norm_residual(),
            "condition_i_residual": model.condition_i_residual(),
            "condition_ii_residual": model.condition_ii_residual(),
            "condition_iii_residual_at_identity": cond_iii_id,
            "condition_iii_residual_max": cond_iii_max,
            "k_semicomplete": {
                "test_set": k_report.test_set,
                "max_defect": k_report.max_defect,
                "weights_hash": io::weights_hash(&weights),
            },
        });
        let mut written = vec![self.write_json("lift.json", &v)?];
        if iw.export_lifted {
            let mut csv = Vec::new();
            io::write_lifted_csv(&lifted, &mut csv)?;
            written.push(self.write("lift.csv", csv)?);
        }
        Ok(written)
    }

    fn profile(&self, spec: &str, a: &semiweyl::AxisSpec, n: &semiweyl::AxisSpec) -> Result<ProfileSpec> {
        if let Some(p) = spec.strip_prefix("table:") {
            let a_len = AxisGrid::<f64>::new(a, "A")?.len();
            let n_len = AxisGrid::<f64>::new(n, "N")?.len();
            let file = std::fs::File::open(self.cfg.resolve(p))
                .map_err(|e| CliError::Config(format!("cannot open profile `{p}`: {e}")))?;
            return Ok(ProfileSpec::Table(io::read_profile_csv(file, a_len, n_len)?));
        }
        spec.parse::<ProfileSpec>().map_err(CliError::from)
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Config(e.to_string())
}

/// Loads `path` and runs `command`.
pub fn run_config_file(command: Command, path: &Path, ov: &Overrides) -> Result<Vec<PathBuf>> {
    let cfg = ExperimentConfig::load(path)?;
    execute(command, &cfg, ov)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_kind() {
        let numerical = semiweyl::Error::NotOrthonormal { residual: 1e-3, tol: 1e-12 };
        assert_eq!(CliError::from(numerical).exit_code(), 3);
        assert_eq!(CliError::from(semiweyl::Error::InvalidEpsilon(0.0)).exit_code(), 2);
    }
}
