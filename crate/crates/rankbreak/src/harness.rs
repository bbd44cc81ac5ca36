//! Seeded Monte Carlo experiments and their reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rand_chacha::ChaCha20Rng;
use rand_core::SeedableRng;
use rankbreak_core::attacks::{
    assumption1_trial, assumption2_trial, attack_decrypt, gpt_attack, loidreau_attack, overbeck_attack, sa_attack,
    AttackOutcome,
};
use rankbreak_core::{
    encrypt, ggpt_keygen, gpt_keygen, sa_example_key, sample_rank_vector, Ciphertext, Fe, Field, GgptVariant, PublicKey,
};
use rayon::prelude::*;

/// Independent stream for trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub name: String,
    pub successes: u64,
    pub trials: u64,
}

impl Estimate {
    pub fn probability(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }

    pub fn wilson(&self) -> (f64, f64) {
        wilson_interval(self.successes, self.trials)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub experiment: String,
    pub seed: u64,
    pub trials: u64,
    pub params: Vec<(String, String)>,
    pub estimates: Vec<Estimate>,
    /// Deterministic extra metrics.
    pub metrics: Vec<(String, String)>,
    /// Wall-clock seconds per phase; excluded from reproducibility.
    pub timings: Vec<(String, f64)>,
}

impl ExperimentReport {
    pub fn estimate(&self, name: &str) -> Option<&Estimate> {
        self.estimates.iter().find(|e| e.name == name)
    }

    pub fn metric(&self, key: &str) -> Option<&str> {
        self.metrics.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "experiment: {}", self.experiment).unwrap();
        writeln!(out, "seed: {}", self.seed).unwrap();
        writeln!(out, "trials: {}", self.trials).unwrap();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "params: {}", params.join(" ")).unwrap();
        writeln!(out).unwrap();
        writeln!(out, "{:<24} {:>9} {:>9} {:>8}  wilson95", "estimate", "successes", "trials", "p").unwrap();
        for e in &self.estimates {
            let (lo, hi) = e.wilson();
            writeln!(
                out,
                "{:<24} {:>9} {:>9} {:>8.4}  [{lo:.4}, {hi:.4}]",
                e.name,
                e.successes,
                e.trials,
                e.probability()
            )
            .unwrap();
        }
        if !self.metrics.is_empty() {
            writeln!(out).unwrap();
            for (k, v) in &self.metrics {
                writeln!(out, "{k:<32} {v}").unwrap();
            }
        }
        if !self.timings.is_empty() {
            writeln!(out).unwrap();
            for (k, v) in &self.timings {
                writeln!(out, "time {k:<27} {v:.3}s").unwrap();
            }
        }
        out
    }

    /// One `key=value` per line; timing keys start with `time.`.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "experiment={}", self.experiment).unwrap();
        writeln!(out, "seed={}", self.seed).unwrap();
        writeln!(out, "trials={}", self.trials).unwrap();
        for (k, v) in &self.params {
            writeln!(out, "param.{k}={v}").unwrap();
        }
        for e in &self.estimates {
            let (lo, hi) = e.wilson();
            writeln!(out, "{}.successes={}", e.name, e.successes).unwrap();
            writeln!(out, "{}.trials={}", e.name, e.trials).unwrap();
            writeln!(out, "{}.p={:.6}", e.name, e.probability()).unwrap();
            writeln!(out, "{}.wilson_lo={lo:.6}", e.name).unwrap();
            writeln!(out, "{}.wilson_hi={hi:.6}", e.name).unwrap();
        }
        for (k, v) in &self.metrics {
            writeln!(out, "{k}={v}").unwrap();
        }
        for (k, v) in &self.timings {
            writeln!(out, "time.{k}={v:.6}").unwrap();
        }
        out
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.txt"), self.to_text())?;
        std::fs::write(dir.join("report.kv"), self.to_kv())
    }
}

/// Parameters of a Loidreau-style GGPT instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoidreauParams {
    pub q: u32,
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub a: usize,
    pub t_hat: usize,
}

impl LoidreauParams {
    pub const PRESET_A3: LoidreauParams = LoidreauParams { q: 2, m: 24, n: 24, k: 12, a: 3, t_hat: 40 };
    pub const PRESET_A4: LoidreauParams = LoidreauParams { q: 2, m: 24, n: 24, k: 12, a: 4, t_hat: 52 };

    fn echo(&self) -> Vec<(String, String)> {
        [
            ("q", self.q as usize),
            ("m", self.m as usize),
            ("n", self.n),
            ("k", self.k),
            ("a", self.a),
            ("t_hat", self.t_hat),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
    }
}

fn field_for(q: u32, m: u32) -> anyhow::Result<Field> {
    Ok(Field::new(q, m, None)?)
}

/// Frequencies of the subcode-expansion and no-rank-one events.
pub fn experiment_assumptions(params: LoidreauParams, trials: u64, seed: u64) -> anyhow::Result<ExperimentReport> {
    let LoidreauParams { q, m, n, k, a, t_hat } = params;
    anyhow::ensure!(a < k && k <= n, "need a < k <= n");
    let field = field_for(q, m)?;
    let start = Instant::now();
    let outcomes: Vec<(bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|i| -> anyhow::Result<(bool, bool)> {
            let mut rng = trial_rng(seed, i);
            let one = assumption1_trial(&mut rng, &field, n, k, a)?;
            let two = assumption2_trial(&mut rng, &field, n, k, a, t_hat)?;
            Ok((one, two))
        })
        .collect::<anyhow::Result<_>>()?;
    let elapsed = start.elapsed().as_secs_f64();
    let count = |f: fn(&(bool, bool)) -> bool| outcomes.iter().filter(|o| f(o)).count() as u64;
    let ell = n.div_ceil(k - a);
    Ok(ExperimentReport {
        experiment: "assumptions".into(),
        seed,
        trials,
        params: params.echo(),
        estimates: vec![
            Estimate { name: "assumption1".into(), successes: count(|o| o.0), trials },
            Estimate { name: "assumption2".into(), successes: count(|o| o.1), trials },
        ],
        metrics: vec![("ell".into(), ell.to_string())],
        timings: vec![("trials".into(), elapsed)],
    })
}

/// Instance family for `experiment_attack_success`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    Gpt {
        q: u32,
        m: u32,
        n: usize,
        k: usize,
        t: usize,
    },
    /// Generic GGPT broken by Overbeck's attack at depth `n − k − 1`.
    Overbeck {
        q: u32,
        m: u32,
        n: usize,
        k: usize,
        t_hat: usize,
    },
    SmartApproach {
        q: u32,
        m: u32,
        n: usize,
        k: usize,
        t_hat: usize,
        a: usize,
    },
    /// The worked `n = 8, k = 3, t̂ = 3, a = 1` layout with random `g` and `x`.
    SaExample,
    Loidreau(LoidreauParams),
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Gpt { .. } => "gpt",
            Scenario::Overbeck { .. } => "overbeck",
            Scenario::SmartApproach { .. } => "sa",
            Scenario::SaExample => "sa-example",
            Scenario::Loidreau(_) => "loidreau",
        }
    }

    fn echo(&self) -> Vec<(String, String)> {
        let pairs: Vec<(&str, usize)> = match *self {
            Scenario::Gpt { q, m, n, k, t } => vec![("q", q as usize), ("m", m as usize), ("n", n), ("k", k), ("t", t)],
            Scenario::Overbeck { q, m, n, k, t_hat } => {
                vec![("q", q as usize), ("m", m as usize), ("n", n), ("k", k), ("t_hat", t_hat)]
            }
            Scenario::SmartApproach { q, m, n, k, t_hat, a } => {
                vec![("q", q as usize), ("m", m as usize), ("n", n), ("k", k), ("t_hat", t_hat), ("a", a)]
            }
            Scenario::SaExample => vec![("q", 2), ("m", 8), ("n", 8), ("k", 3), ("t_hat", 3), ("a", 1)],
            Scenario::Loidreau(p) => {
                return [("scheme".to_string(), "loidreau".to_string())].into_iter().chain(p.echo()).collect()
            }
        };
        std::iter::once(("scheme".to_string(), self.name().to_string()))
            .chain(pairs.into_iter().map(|(k, v)| (k.to_string(), v.to_string())))
            .collect()
    }

    fn keygen(&self, rng: &mut ChaCha20Rng) -> anyhow::Result<PublicKey> {
        let public = match *self {
            Scenario::Gpt { q, m, n, k, t } => gpt_keygen(rng, &field_for(q, m)?, n, k, t)?.0,
            Scenario::Overbeck { q, m, n, k, t_hat } => {
                ggpt_keygen(rng, &field_for(q, m)?, n, k, t_hat, GgptVariant::Generic)?.0
            }
            Scenario::SmartApproach { q, m, n, k, t_hat, a } => {
                ggpt_keygen(rng, &field_for(q, m)?, n, k, t_hat, GgptVariant::SmartApproach { a })?.0
            }
            Scenario::SaExample => {
                let field = field_for(2, 8)?;
                let g = sample_rank_vector(rng, &field, 8, 8)?;
                let x = loop {
                    let x = field.random(rng);
                    if field.to_base(x).is_none() {
                        break x;
                    }
                };
                sa_example_key(&field, &g, x)?.0
            }
            Scenario::Loidreau(p) => {
                ggpt_keygen(rng, &field_for(p.q, p.m)?, p.n, p.k, p.t_hat, GgptVariant::Loidreau { a: p.a })?.0
            }
        };
        Ok(public)
    }

    fn attack(&self, public: &PublicKey, ct: &Ciphertext) -> (Option<Vec<Fe>>, AttackOutcome) {
        match *self {
            Scenario::Gpt { .. } => gpt_attack(public, ct),
            Scenario::Overbeck { n, k, .. } => {
                let outcome = overbeck_attack(public, n - k - 1);
                let msg = outcome.transcript().and_then(|t| attack_decrypt(t, ct).ok());
                (msg, outcome)
            }
            Scenario::SmartApproach { a, .. } => sa_attack(public, Some(a), ct),
            Scenario::SaExample => sa_attack(public, Some(1), ct),
            Scenario::Loidreau(p) => loidreau_attack(public, Some(p.a), ct),
        }
    }
}

struct AttackTrial {
    recovered: bool,
    failure: Option<&'static str>,
    attack_secs: f64,
    diagnostics: Vec<(String, usize)>,
}

/// Fresh key, one random message, encrypt, attack from the public key, compare.
pub fn experiment_attack_success(scenario: Scenario, trials: u64, seed: u64) -> anyhow::Result<ExperimentReport> {
    let start = Instant::now();
    let results: Vec<AttackTrial> = (0..trials)
        .into_par_iter()
        .map(|i| -> anyhow::Result<AttackTrial> {
            let mut rng = trial_rng(seed, i);
            let public = scenario.keygen(&mut rng)?;
            let field = public.field().clone();
            let msg: Vec<Fe> = (0..public.k).map(|_| field.random(&mut rng)).collect();
            let ct = encrypt(&mut rng, &public, &msg)?;
            let t0 = Instant::now();
            let (got, outcome) = scenario.attack(&public, &ct);
            let attack_secs = t0.elapsed().as_secs_f64();
            let recovered = got.as_deref() == Some(&msg[..]);
            let failure = match (&outcome, recovered) {
                (AttackOutcome::Failed(r), _) => Some(r.tag()),
                (AttackOutcome::Broken(_), false) => Some("WrongPlaintext"),
                _ => None,
            };
            let diagnostics = outcome.transcript().map(|t| t.diagnostics.clone()).unwrap_or_default();
            Ok(AttackTrial { recovered, failure, attack_secs, diagnostics })
        })
        .collect::<anyhow::Result<_>>()?;
    let elapsed = start.elapsed().as_secs_f64();

    let successes = results.iter().filter(|r| r.recovered).count() as u64;
    let mut failures: BTreeMap<&str, u64> = BTreeMap::new();
    for r in &results {
        if let Some(f) = r.failure {
            *failures.entry(f).or_default() += 1;
        }
    }
    let mut metrics: Vec<(String, String)> =
        failures.iter().map(|(k, v)| (format!("failures.{k}"), v.to_string())).collect();
    if let Scenario::Loidreau(p) = scenario {
        metrics.push(("v_system.variables_expected".into(), (p.t_hat * (p.n + p.t_hat)).to_string()));
        metrics.push(("v_system.equations_expected".into(), (p.k * p.m as usize * p.t_hat).to_string()));
        if let Some(r) = results.iter().find(|r| r.recovered) {
            for (key, name) in [
                ("v_system_variables", "v_system.variables"),
                ("v_system_equations", "v_system.equations"),
                ("v_system_membership_equations", "v_system.membership_equations"),
                ("v_solution_kernel_dim", "v_system.solution_kernel_dim"),
            ] {
                if let Some((_, v)) = r.diagnostics.iter().find(|(k, _)| k == key) {
                    metrics.push((name.into(), v.to_string()));
                }
            }
        }
    }
    let mean = if results.is_empty() {
        0.0
    } else {
        results.iter().map(|r| r.attack_secs).sum::<f64>() / results.len() as f64
    };
    let max = results.iter().map(|r| r.attack_secs).fold(0.0, f64::max);
    Ok(ExperimentReport {
        experiment: "attack-success".into(),
        seed,
        trials,
        params: scenario.echo(),
        estimates: vec![Estimate { name: "attack".into(), successes, trials }],
        metrics,
        timings: vec![("attack_mean".into(), mean), ("attack_max".into(), max), ("total".into(), elapsed)],
    })
}

/// Drops the `time.` lines, leaving the reproducible part of a `report.kv`.
pub fn strip_timings(kv: &str) -> String {
    kv.lines().filter(|l| !l.starts_with("time.")).map(|l| format!("{l}\n")).collect()
}
