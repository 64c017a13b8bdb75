//! Sweeps of every identity over its full index range, with reports.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::alpha_system::{AlphaSystem, SystemSpec};
use crate::enumeration::{count_f, count_g, count_g_andrews_k0, CountTable, LargestPart};
use crate::recurrence::{
    families, g_series, limit_u, run_recurrence, verify_chain, verify_eq_357, verify_key_lemma, verify_lemma1,
    verify_lemma1_refined, verify_lemma2, verify_overline_symmetry, GFamily, RecError,
};
use crate::series::{product_distinct, product_f, QLaurent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Lemma1,
    Lemma2,
    Eq357,
    Key,
    Rec,
    Tmj,
    Chain,
    Theorem,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Lemma1,
        Check::Lemma2,
        Check::Eq357,
        Check::Key,
        Check::Rec,
        Check::Tmj,
        Check::Chain,
        Check::Theorem,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Lemma1 => "lemma1",
            Check::Lemma2 => "lemma2",
            Check::Eq357 => "eq357",
            Check::Key => "key",
            Check::Rec => "rec",
            Check::Tmj => "tmj",
            Check::Chain => "chain",
            Check::Theorem => "theorem",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub trunc: i64,
    pub x_trunc: usize,
    pub ell_max: usize,
}

impl Params {
    /// `ell_max = ceil((trunc + a(1)) / N) + 1`, `x_trunc = 6`.
    pub fn defaults(sys: &AlphaSystem, trunc: i64) -> Self {
        let n = sys.modulus() as i64;
        let ell = (trunc + sys.a(1) as i64 + n - 1).div_euclid(n) + 1;
        Self {
            trunc,
            x_trunc: 6,
            ell_max: ell.max(1) as usize,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub cases: usize,
    pub check: String,
    pub detail: Option<String>,
    pub passed: bool,
}

impl CheckResult {
    fn new(check: Check) -> Self {
        Self {
            cases: 0,
            check: check.name().to_string(),
            detail: None,
            passed: true,
        }
    }

    fn fail(&mut self, detail: String) {
        if self.passed {
            self.passed = false;
            self.detail = Some(detail);
        }
    }

    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(detail());
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub system: SystemSpec,
    pub verdict: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn describe(res: &QLaurent) -> String {
    res.first_nonzero().map_or_else(|| "0".into(), |m| m.to_string())
}

/// Levels `j` whose subscripts all reach past `trunc`.
fn levels(sys: &AlphaSystem, trunc: i64) -> std::ops::RangeInclusive<i64> {
    1..=(trunc / sys.modulus() as i64 + 2)
}

fn skip_out_of_range<T>(r: Result<T, RecError>) -> Result<Option<T>, RecError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(RecError::ConventionOutOfRange { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn run_check(sys: &AlphaSystem, check: Check, p: Params) -> Result<CheckResult, RecError> {
    let mut out = CheckResult::new(check);
    let trunc = p.trunc;
    match check {
        Check::Lemma1 => {
            let mut fam = GFamily::new(sys, trunc)?;
            for j in levels(sys, trunc) {
                for m in 1..=sys.alpha_len() {
                    let Some(hit) = skip_out_of_range(verify_lemma1(&mut fam, j, m))? else {
                        continue;
                    };
                    out.case(hit.is_none(), || format!("j={j} m={m} first cell (n, k) = {hit:?}"));
                    let hit = verify_lemma1_refined(&mut fam, j, m)?;
                    out.case(hit.is_none(), || {
                        format!("refined j={j} m={m} first cell (overlined, n, k) = {hit:?}")
                    });
                }
            }
            for m in 1..=trunc {
                let hit = verify_overline_symmetry(&mut fam, m);
                out.case(hit.is_none(), || format!("overline symmetry m={m} n={hit:?}"));
            }
        }
        Check::Lemma2 => {
            let mut fam = GFamily::new(sys, trunc)?;
            for j in levels(sys, trunc) {
                for m in 1..=sys.alpha_len() {
                    if let Some(res) = skip_out_of_range(verify_lemma2(&mut fam, j, m))? {
                        out.case(res.is_zero(), || format!("j={j} m={m}: {}", describe(&res)));
                    }
                }
            }
        }
        Check::Eq357 => {
            let mut fam = GFamily::new(sys, trunc)?;
            for j in levels(sys, trunc) {
                for k in 1..=sys.r() + 1 {
                    if let Some(res) = skip_out_of_range(verify_eq_357(&mut fam, j, k))? {
                        out.case(res.summed.is_zero(), || {
                            format!("summed j={j} k={k}: {}", describe(&res.summed))
                        });
                        if let Some(t) = res.three_term {
                            out.case(t.is_zero(), || format!("three-term j={j} k={k}: {}", describe(&t)));
                        }
                    }
                }
            }
        }
        Check::Key => {
            let mut fam = GFamily::new(sys, trunc)?;
            for ell in levels(sys, trunc) {
                for k in 1..=sys.r() + 1 {
                    if let Some(res) = skip_out_of_range(verify_key_lemma(&mut fam, k, ell))? {
                        out.case(res.is_zero(), || format!("k={k} ell={ell}: {}", describe(&res)));
                    }
                }
            }
        }
        Check::Rec => {
            let n = sys.modulus() as i64;
            let a1 = sys.a(1) as i64;
            let mut top = p.ell_max;
            while (top as i64 + 1) * n - a1 <= trunc {
                top += 1;
            }
            let u = run_recurrence(sys, top, trunc)?;
            let mut fam = GFamily::new(sys, trunc)?;
            for (ell, u_ell) in u.iter().enumerate().skip(1) {
                let g = fam.g(ell as i64 * n - a1)?;
                out.case(u_ell == &g, || {
                    format!("u_{ell} differs from g_{}", ell as i64 * n - a1)
                });
            }
        }
        Check::Tmj => {
            let r = sys.r() as i64;
            for m in 1..=r {
                for j in 1..=r {
                    out.case(families::verify_tmj(sys, m, j), || {
                        format!("T_{{{m},{j}}} != T'_{{{m},{j}}}")
                    });
                }
            }
        }
        Check::Chain => {
            let report = verify_chain(sys, p.ell_max, p.x_trunc, trunc)?;
            for stage in &report.stages {
                out.case(stage.residual_zero, || {
                    format!(
                        "stage {} first nonzero {}",
                        stage.name,
                        serde_json::to_string(&stage.first_nonzero).expect("serialisable")
                    )
                });
            }
        }
        Check::Theorem => {
            theorem_cases(sys, trunc, &mut out)?;
        }
    }
    Ok(out)
}

/// The four count tables of the main identity through `n_max`.
pub struct TheoremTables {
    pub f: CountTable,
    pub g: CountTable,
    pub product: CountTable,
    pub limit: CountTable,
}

pub fn theorem_tables(sys: &AlphaSystem, n_max: usize) -> Result<TheoremTables, RecError> {
    let trunc = n_max as i64;
    let table = |s: &QLaurent| CountTable::from_series(s, n_max).expect("power series exact through n_max");
    Ok(TheoremTables {
        f: count_f(sys, n_max),
        g: count_g(sys, n_max, LargestPart::none()),
        product: table(&product_f(sys, trunc)?),
        limit: table(&limit_u(sys, trunc)?),
    })
}

fn theorem_cases(sys: &AlphaSystem, trunc: i64, out: &mut CheckResult) -> Result<(), RecError> {
    let n_max = trunc.max(0) as usize;
    let t = theorem_tables(sys, n_max)?;
    for (name, other) in [("G", &t.g), ("product", &t.product), ("limit", &t.limit)] {
        let hit = t.f.first_mismatch(other);
        out.case(hit.is_none(), || format!("F vs {name}: {hit:?}"));
    }
    let k0 = count_g_andrews_k0(sys, n_max);
    let hit = (0..=n_max).find(|&n| t.g.get(0, n) != k0[n]);
    out.case(hit.is_none(), || {
        format!("k=0 column vs ordinary partitions at n={hit:?}")
    });
    let lim0 = limit_u(sys, trunc)?.at_d_zero();
    let distinct = product_distinct(sys, trunc)?;
    out.case(lim0 == distinct, || "d=0 limit vs distinct-part product".into());
    let g_top = g_series(sys, trunc.max(1), trunc)?;
    out.case(CountTable::from_series(&g_top, n_max).is_ok_and(|s| s == t.g), || {
        "g_trunc vs unrestricted G".into()
    });
    Ok(())
}

pub fn verify_system(sys: &AlphaSystem, checks: &[Check], p: Params) -> Result<VerificationReport, RecError> {
    let results = checks
        .iter()
        .map(|&c| run_check(sys, c, p))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = results.iter().all(|c| c.passed);
    Ok(VerificationReport {
        checks: results,
        system: sys.spec(),
        verdict: if passed { "pass" } else { "fail" }.into(),
    })
}

/// The standard battery of systems.
pub fn battery() -> Vec<AlphaSystem> {
    [
        (3, vec![1, 2]),
        (7, vec![1, 2, 4]),
        (9, vec![1, 3, 5]),
        (15, vec![1, 2, 4, 8]),
    ]
    .into_iter()
    .map(|(n, a)| AlphaSystem::new(&a, n).expect("battery systems are admissible"))
    .collect()
}
