use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::fem::{MaterialParams, MU0};
use crate::stability::Scheme;
use crate::Error;

/// Experiments understood by the driver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Experiment {
    Analyze1d,
    Analyze2d,
    Solve1d,
    Solve2d,
    PeSweep,
    Converge,
    Avg3dCheck,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::Analyze1d,
        Experiment::Analyze2d,
        Experiment::Solve1d,
        Experiment::Solve2d,
        Experiment::PeSweep,
        Experiment::Converge,
        Experiment::Avg3dCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Analyze1d => "analyze1d",
            Experiment::Analyze2d => "analyze2d",
            Experiment::Solve1d => "solve1d",
            Experiment::Solve2d => "solve2d",
            Experiment::PeSweep => "pe-sweep",
            Experiment::Converge => "converge",
            Experiment::Avg3dCheck => "avg3d-check",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment '{s}'")))
    }
}

/// Boundary condition for `A_y` on the outflow end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutflowBc {
    Natural,
    Dirichlet,
}

impl OutflowBc {
    pub fn name(self) -> &'static str {
        match self {
            OutflowBc::Natural => "natural",
            OutflowBc::Dirichlet => "dirichlet",
        }
    }
}

/// Flat `key = value` configuration. `#` starts a comment.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawConfig {
    values: BTreeMap<String, String>,
}

const KNOWN_KEYS: &[&str] = &[
    "sigma", "u_z", "mu_r", "d", "b_ax", "pe", "dz", "scheme", "n_z", "n_y", "source_from",
    "source_to", "outflow_bc", "ref_pe", "ref_growth", "ref_base_factor", "ref_y_factor",
    "decay_tol", "min_third", "ladder", "pe_start", "b_uniform", "hex_size",
];

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut values = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if !KNOWN_KEYS.contains(&k) {
                return Err(Error::Config(format!("line {}: unknown key '{k}'", lineno + 1)));
            }
            if values.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key '{k}'", lineno + 1)));
            }
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, Error> {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|_| Error::Config(format!("{key}: cannot parse '{v}'"))))
            .transpose()
    }

    fn f64_or(&self, key: &str, default: f64) -> Result<f64, Error> {
        let v = self.parsed::<f64>(key)?.unwrap_or(default);
        if !v.is_finite() {
            return Err(Error::Config(format!("{key} must be finite")));
        }
        Ok(v)
    }

    fn list(&self, key: &str) -> Result<Option<Vec<f64>>, Error> {
        self.get(key)
            .map(|v| {
                v.split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .ok()
                            .filter(|x| x.is_finite())
                            .ok_or_else(|| Error::Config(format!("{key}: cannot parse '{s}'")))
                    })
                    .collect()
            })
            .transpose()
    }
}

/// Settings of the fine-mesh reference solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RefParams {
    /// Grid Peclet number at the source kinks.
    pub pe: f64,
    /// Element growth per unit distance from the kinks.
    pub growth: f64,
    /// Subdivisions of each base element away from the kinks.
    pub base_factor: usize,
    /// Refinement across the slab.
    pub y_factor: usize,
}

/// Fully resolved experiment parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub schemes: Vec<Scheme>,
    pub sigma: f64,
    pub mu_r: f64,
    pub u_z: f64,
    pub depth: f64,
    pub b_ax: f64,
    /// Grid Peclet numbers to run; for `converge`, the first rung's.
    pub pe: Vec<f64>,
    /// Element lengths matching `pe`.
    pub dz: Vec<f64>,
    pub n_z: Option<usize>,
    pub n_y: usize,
    pub source_from: f64,
    pub source_to: f64,
    pub outflow: OutflowBc,
    pub reference: RefParams,
    pub decay_tol: f64,
    pub min_third: usize,
    pub ladder: Vec<(usize, usize)>,
    pub b_uniform: [f64; 3],
    pub hex_size: [f64; 3],
}

fn parse_ladder(s: &str) -> Result<Vec<(usize, usize)>, Error> {
    s.split(',')
        .map(|r| {
            let (a, b) = r
                .trim()
                .split_once('x')
                .ok_or_else(|| Error::Config(format!("ladder: expected NZxNY, got '{r}'")))?;
            let p = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Config(format!("ladder: cannot parse '{r}'")))
            };
            Ok((p(a)?, p(b)?))
        })
        .collect()
}

fn vec3(v: Option<Vec<f64>>, key: &str, default: [f64; 3]) -> Result<[f64; 3], Error> {
    match v {
        None => Ok(default),
        Some(v) if v.len() == 3 => Ok([v[0], v[1], v[2]]),
        Some(_) => Err(Error::Config(format!("{key}: expected three values"))),
    }
}

impl ExperimentConfig {
    pub fn resolve(
        experiment: Experiment,
        raw: &RawConfig,
        scheme_override: Option<Scheme>,
    ) -> Result<Self, Error> {
        let schemes = match (scheme_override, raw.get("scheme")) {
            (Some(s), _) => vec![s],
            (None, None) | (None, Some("both")) => Scheme::ALL.to_vec(),
            (None, Some(s)) => vec![s.parse::<Scheme>()?],
        };
        let sigma = raw.f64_or("sigma", 7.2e6)?;
        let mu_r = raw.f64_or("mu_r", 1.0)?;
        let u_z = raw.f64_or("u_z", 50.0)?;
        let mat = MaterialParams::new(sigma, mu_r * MU0, u_z)?;
        if u_z <= 0.0 && !matches!(experiment, Experiment::Analyze1d | Experiment::Analyze2d | Experiment::Avg3dCheck) {
            return Err(Error::Config("u_z must be positive (flow along +z)".into()));
        }
        let depth = raw.f64_or("d", 0.5)?;
        let b_ax = raw.f64_or("b_ax", 1.0)?;
        if !(depth > 0.0) || b_ax == 0.0 {
            return Err(Error::Config("d must be positive and b_ax nonzero".into()));
        }
        let default_pe: Vec<f64> = match experiment {
            Experiment::Analyze1d => vec![3.0],
            Experiment::Solve1d => vec![10.0, 50.0, 100.0],
            Experiment::Solve2d => vec![200.0],
            Experiment::PeSweep => vec![5.0, 10.0, 25.0, 50.0, 100.0, 200.0],
            Experiment::Converge => vec![100.0],
            Experiment::Analyze2d | Experiment::Avg3dCheck => vec![],
        };
        let (pe, dz) = match (raw.list("pe")?, raw.list("dz")?) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("specify at most one of pe and dz".into()));
            }
            (Some(p), None) => {
                let dz = p.iter().map(|&p| mat.dz_for_peclet(p)).collect();
                (p, dz)
            }
            (None, Some(d)) => (d.iter().map(|&d| mat.peclet(d)).collect(), d),
            (None, None) => {
                let dz = default_pe.iter().map(|&p| mat.dz_for_peclet(p)).collect();
                (default_pe, dz)
            }
        };
        if pe.iter().chain(&dz).any(|v| !(*v > 0.0)) {
            return Err(Error::Config("pe and dz must be positive".into()));
        }
        let n_z = raw.parsed::<usize>("n_z")?;
        let n_y = raw.parsed::<usize>("n_y")?.unwrap_or(8);
        let source_from = raw.f64_or("source_from", 1.0 / 3.0)?;
        let source_to = raw.f64_or("source_to", 2.0 / 3.0)?;
        if !(0.0 < source_from && source_from < source_to && source_to < 1.0) {
            return Err(Error::Config("need 0 < source_from < source_to < 1".into()));
        }
        let outflow = match raw.get("outflow_bc").unwrap_or("natural") {
            "natural" => OutflowBc::Natural,
            "dirichlet" => OutflowBc::Dirichlet,
            other => return Err(Error::Config(format!("outflow_bc: unknown value '{other}'"))),
        };
        let default_y_factor = if experiment == Experiment::Converge { 1 } else { 2 };
        let reference = RefParams {
            pe: raw.f64_or("ref_pe", 0.5)?,
            growth: raw.f64_or("ref_growth", 0.2)?,
            base_factor: raw.parsed::<usize>("ref_base_factor")?.unwrap_or(2),
            y_factor: raw.parsed::<usize>("ref_y_factor")?.unwrap_or(default_y_factor),
        };
        if !(reference.pe > 0.0 && reference.growth > 0.0 && reference.base_factor >= 1 && reference.y_factor >= 1) {
            return Err(Error::Config("invalid reference parameters".into()));
        }
        let decay_tol = raw.f64_or("decay_tol", 1e-6)?;
        if !(decay_tol > 0.0 && decay_tol < 1.0) {
            return Err(Error::Config("decay_tol must lie in (0, 1)".into()));
        }
        let min_third = raw.parsed::<usize>("min_third")?.unwrap_or(40);
        let ladder = match raw.get("ladder") {
            Some(s) => parse_ladder(s)?,
            None => vec![(160, 4), (320, 8), (640, 16), (1280, 32)],
        };
        let (pe, dz) = match raw.parsed::<f64>("pe_start")? {
            Some(_) if raw.get("pe").is_some() || raw.get("dz").is_some() => {
                return Err(Error::Config("pe_start conflicts with pe and dz".into()));
            }
            Some(p0) if p0 > 0.0 => (vec![p0], vec![mat.dz_for_peclet(p0)]),
            Some(_) => return Err(Error::Config("pe_start must be positive".into())),
            None => (pe, dz),
        };
        if experiment == Experiment::Converge {
            if pe.len() != 1 {
                return Err(Error::Config("converge takes a single starting pe or dz".into()));
            }
            if ladder.len() < 2 || ladder.windows(2).any(|w| w[1].0 != 2 * w[0].0) {
                return Err(Error::Config("ladder must double n_z at every rung".into()));
            }
        }
        Ok(Self {
            experiment,
            schemes,
            sigma,
            mu_r,
            u_z,
            depth,
            b_ax,
            pe,
            dz,
            n_z,
            n_y,
            source_from,
            source_to,
            outflow,
            reference,
            decay_tol,
            min_third,
            ladder,
            b_uniform: vec3(raw.list("b_uniform")?, "b_uniform", [0.3, -1.2, 2.0])?,
            hex_size: vec3(raw.list("hex_size")?, "hex_size", [1.0, 2.0, 3.0])?,
        })
    }

    pub fn material(&self) -> MaterialParams {
        MaterialParams { sigma: self.sigma, mu: self.mu_r * MU0, u_z: self.u_z }
    }

    /// `key = value` lines of every resolved parameter.
    pub fn manifest(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|x| format!("{x:.12e}")).collect::<Vec<_>>().join(",");
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(&v);
            s.push('\n');
        };
        kv("experiment", self.experiment.name().into());
        kv("schemes", self.schemes.iter().map(|s| s.name()).collect::<Vec<_>>().join(","));
        kv("sigma", format!("{:.12e}", self.sigma));
        kv("mu_r", format!("{:.12e}", self.mu_r));
        kv("mu", format!("{:.12e}", self.mu_r * MU0));
        kv("u_z", format!("{:.12e}", self.u_z));
        kv("k", format!("{:.12e}", self.material().k()));
        kv("d", format!("{:.12e}", self.depth));
        kv("b_ax", format!("{:.12e}", self.b_ax));
        kv("pe", list(&self.pe));
        kv("dz", list(&self.dz));
        kv("n_z", self.n_z.map_or("auto".into(), |n| n.to_string()));
        kv("n_y", self.n_y.to_string());
        kv("source_from", format!("{:.12e}", self.source_from));
        kv("source_to", format!("{:.12e}", self.source_to));
        kv("outflow_bc", self.outflow.name().into());
        kv("ref_pe", format!("{:.12e}", self.reference.pe));
        kv("ref_growth", format!("{:.12e}", self.reference.growth));
        kv("ref_base_factor", self.reference.base_factor.to_string());
        kv("ref_y_factor", self.reference.y_factor.to_string());
        kv("decay_tol", format!("{:.12e}", self.decay_tol));
        kv("min_third", self.min_third.to_string());
        kv("ladder", self.ladder.iter().map(|(a, b)| format!("{a}x{b}")).collect::<Vec<_>>().join(","));
        kv("b_uniform", list(&self.b_uniform));
        kv("hex_size", list(&self.hex_size));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(e: Experiment, text: &str) -> Result<ExperimentConfig, Error> {
        ExperimentConfig::resolve(e, &RawConfig::parse(text)?, None)
    }

    #[test]
    fn defaults() {
        let c = resolve(Experiment::PeSweep, "").unwrap();
        assert_eq!(c.sigma, 7.2e6);
        assert_eq!(c.u_z, 50.0);
        assert_eq!(c.depth, 0.5);
        assert_eq!(c.pe, vec![5.0, 10.0, 25.0, 50.0, 100.0, 200.0]);
        assert_eq!(c.schemes, Scheme::ALL.to_vec());
        let k = c.material().k();
        assert!((k - 452.389).abs() < 1e-3);
        assert!((c.dz[5] - 400.0 / k).abs() < 1e-15);
    }

    #[test]
    fn pe_and_dz_are_exclusive() {
        assert!(resolve(Experiment::Solve1d, "pe = 10\ndz = 0.1").is_err());
        let c = resolve(Experiment::Solve1d, "dz = 0.1 # comment").unwrap();
        assert!((c.pe[0] - c.material().k() * 0.05).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RawConfig::parse("nonsense").is_err());
        assert!(RawConfig::parse("colour = red").is_err());
        assert!(RawConfig::parse("pe = 1\npe = 2").is_err());
        assert!(resolve(Experiment::Solve1d, "pe = abc").is_err());
        assert!(resolve(Experiment::Solve1d, "sigma = -1").is_err());
        assert!(resolve(Experiment::Solve1d, "scheme = upwind").is_err());
        assert!(resolve(Experiment::Converge, "ladder = 10x2,30x4").is_err());
        assert!("bogus".parse::<Experiment>().is_err());
    }

    #[test]
    fn scheme_override_wins() {
        let raw = RawConfig::parse("scheme = galerkin").unwrap();
        let c = ExperimentConfig::resolve(Experiment::Solve1d, &raw, Some(Scheme::SourceStabilized)).unwrap();
        assert_eq!(c.schemes, vec![Scheme::SourceStabilized]);
    }
}
