//! Prime-set claims: the union of `varpi(w_k)` over a parameter set `L`
//! must equal the prime set of the target group.
//!
//! A claim names the pair (or a derived context), optional auxiliary
//! definitions, the word family in `k`, optional restriction steps and the
//! target. Expected prime sets are recomputed from the group order.

use serde::{Deserialize, Serialize};

use crate::construct::{
    build, default_recipe, field_of_order, r_small, resolve_a, s_indices, GeneratorPair, Recipe,
};
use crate::grouporder::{lps_certificate, Certificate, PrimeSet, Target};
use crate::matrix::Mat;

use super::quadform::{quadratic_form_obstruction, FormResult, FormVerdict};
use super::word::{Scope, Word};
use super::{Checks, ClaimError};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    /// `x`, `y` of the pair.
    #[default]
    Pair,
    /// `y` on `S_6` with the four `r_i(1)` of an `n = 15` pair.
    Wsl6,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    id: String,
    label: String,
    n: OneOrMany,
    q: u64,
    a: String,
    #[serde(default)]
    recipe: Option<String>,
    #[serde(default)]
    context: Context,
    #[serde(default)]
    defs: Vec<String>,
    #[serde(default)]
    restrict: Vec<String>,
    word: String,
    #[serde(rename = "L")]
    l: Vec<u64>,
    target: String,
    #[serde(default)]
    quadform: bool,
}

#[derive(Clone, Debug)]
enum Step {
    /// Restrict to `S_l`, the last `l` positive basis vectors.
    S(usize),
    /// Pass to the quotient onto the last `l` coordinates.
    Q(usize),
}

#[derive(Clone, Debug)]
enum TargetSpec {
    Sp,
    Sl(u32),
}

#[derive(Clone, Debug)]
pub struct PrimeSetClaim {
    pub id: String,
    pub label: String,
    pub ns: Vec<usize>,
    pub q: u64,
    pub a: String,
    pub recipe: Option<Recipe>,
    pub context: Context,
    pub defs: Vec<(String, Word)>,
    steps: Vec<Step>,
    pub word: Word,
    pub l: Vec<u64>,
    target: TargetSpec,
    pub quadform: bool,
}

#[derive(Deserialize)]
struct File {
    claim: Vec<Raw>,
}

fn data(msg: String) -> ClaimError {
    ClaimError::Data(msg)
}

impl PrimeSetClaim {
    fn from_raw(r: Raw) -> Result<PrimeSetClaim, ClaimError> {
        let ns = match r.n {
            OneOrMany::One(n) => vec![n],
            OneOrMany::Many(v) => v,
        };
        let recipe = r.recipe.as_deref().map(Recipe::parse).transpose()?;
        let mut defs = Vec::new();
        for d in &r.defs {
            let (name, src) = d
                .split_once('=')
                .ok_or_else(|| data(format!("{}: definition {d:?} lacks '='", r.id)))?;
            defs.push((name.trim().to_string(), Word::parse(src.trim())?));
        }
        let mut steps = Vec::new();
        for s in &r.restrict {
            let (kind, num) = s.split_at(1);
            let l: usize = num
                .parse()
                .map_err(|_| data(format!("{}: bad step {s}", r.id)))?;
            steps.push(match kind {
                "S" => Step::S(l),
                "Q" => Step::Q(l),
                _ => return Err(data(format!("{}: bad step {s}", r.id))),
            });
        }
        let target = match r.target.as_str() {
            "sp" => TargetSpec::Sp,
            t => match t.strip_prefix("sl:").and_then(|d| d.parse().ok()) {
                Some(d) => TargetSpec::Sl(d),
                None => return Err(data(format!("{}: bad target {t}", r.id))),
            },
        };
        let word = Word::parse(&r.word)?;
        if !word.uses_k() {
            return Err(data(format!("{}: word does not depend on k", r.id)));
        }
        Ok(PrimeSetClaim {
            id: r.id,
            label: r.label,
            ns,
            q: r.q,
            a: r.a,
            recipe,
            context: r.context,
            defs,
            steps,
            word,
            l: r.l,
            target,
            quadform: r.quadform,
        })
    }

    fn target(&self, n: usize) -> Target {
        match self.target {
            TargetSpec::Sp => Target::sp(n as u32, self.q),
            TargetSpec::Sl(d) => Target::sl(d, self.q),
        }
    }

    fn apply_steps(&self, n: usize, mut m: Mat) -> Result<Mat, ClaimError> {
        for s in &self.steps {
            m = match *s {
                Step::S(l) => m.restrict(&s_indices(n, l))?,
                Step::Q(l) => {
                    let d = m.rows();
                    m.quotient_block(&(d - l..d).collect::<Vec<_>>())?
                }
            };
        }
        Ok(m)
    }

    /// The words `w_k`, `k` in `L`, after the restriction steps.
    pub fn pair(&self, n: usize) -> Result<GeneratorPair, ClaimError> {
        let k = field_of_order(self.q)?;
        let a = resolve_a(&k, &self.a)?;
        Ok(build(
            self.recipe.unwrap_or(default_recipe(n, self.q)),
            n,
            &k,
            a,
        )?)
    }

    /// Whether the words live on the whole space of the pair and the
    /// target is `Sp_2n(q)`, so the claim certifies the pair itself.
    pub fn certifies_pair(&self) -> bool {
        self.context == Context::Pair
            && self.steps.is_empty()
            && matches!(self.target, TargetSpec::Sp)
    }

    pub fn witnesses(&self, n: usize) -> Result<Vec<Mat>, ClaimError> {
        let pair = self.pair(n)?;
        let k = pair.field().clone();
        let a = pair.a;
        let mut scope = match self.context {
            Context::Pair => Scope::new()
                .with("x", pair.x.clone())
                .with("y", pair.y.clone()),
            Context::Wsl6 => {
                let one = k.one();
                let mut sc = Scope::new().with("y", pair.y.restrict(&s_indices(n, 6))?);
                for i in 1..=4 {
                    let r = r_small(i, &k, a, one)?;
                    let r = if r.rows() == 4 {
                        Mat::block_diag(&[&Mat::identity(&k, 2), &r])
                    } else {
                        r
                    };
                    sc.insert(&format!("r{i}"), r);
                }
                sc
            }
        };
        for (name, w) in &self.defs {
            let m = scope.eval(w)?;
            scope.insert(name, m);
        }
        let mut out = Vec::with_capacity(self.l.len());
        for &kk in &self.l {
            out.push(self.apply_steps(n, scope.eval_at(&self.word, kk)?)?);
        }
        Ok(out)
    }

    pub fn run(&self) -> Result<Checks, ClaimError> {
        let mut c = Checks::new();
        let multi = self.ns.len() > 1;
        for &n in &self.ns {
            let pre = if multi {
                format!("n={n}: ")
            } else {
                String::new()
            };
            let target = self.target(n);
            let Some(ws) = c.attempt(format!("{pre}words"), self.witnesses(n)) else {
                continue;
            };
            let obstructed = if self.quadform {
                let r = quadratic_form_obstruction(&self.pair(n)?)?;
                c.eq(
                    format!("{pre}quadratic form"),
                    "inconsistent",
                    verdict_name(&r),
                );
                Some(r == FormResult::Inconsistent)
            } else {
                None
            };
            let full = target.order()?.primes();
            let Some((cert, seen)) = c.attempt(
                format!("{pre}certificate"),
                lps_certificate(target, &ws, obstructed).map_err(ClaimError::from),
            ) else {
                continue;
            };
            c.eq(
                format!("{pre}varpi union vs {}", target.name()),
                full.clone(),
                seen,
            );
            c.eq(
                format!("{pre}certificate"),
                cert_name(&Certificate::Certified),
                cert_name(&cert),
            );
        }
        Ok(c)
    }
}

fn verdict_name(r: &FormResult) -> &'static str {
    match r {
        FormResult::Inconsistent => "inconsistent",
        FormResult::FormFound { .. } => "form_found",
    }
}

fn cert_name(c: &Certificate) -> String {
    match c {
        Certificate::Certified => "certified".into(),
        Certificate::ExceptionPossible => "exception_possible".into(),
        Certificate::Inconclusive { missing } => format!("inconclusive (missing {missing})"),
    }
}

pub fn load() -> Result<Vec<PrimeSetClaim>, ClaimError> {
    let f: File =
        toml::from_str(include_str!("../../data/claims.toml")).map_err(|e| data(e.to_string()))?;
    f.claim.into_iter().map(PrimeSetClaim::from_raw).collect()
}

/// The bundled claim whose words certify the `(n, q)` pair, if any.
pub fn default_words(n: usize, q: u64) -> Result<Option<PrimeSetClaim>, ClaimError> {
    Ok(load()?
        .into_iter()
        .find(|c| c.q == q && c.ns.contains(&n) && c.certifies_pair()))
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifyReport {
    pub pair: String,
    pub target: String,
    pub witnesses: usize,
    pub witnessed_primes: PrimeSet,
    pub target_primes: PrimeSet,
    /// Only computed when both `n` and `q` are even.
    pub quadratic_form: Option<FormVerdict>,
    pub certificate: Certificate,
}

/// Decide whether the witnesses, taken from the group generated by the
/// pair, certify that the pair generates `Sp_2n(q)`.
pub fn certify_pair(pair: &GeneratorPair, witnesses: &[Mat]) -> Result<CertifyReport, ClaimError> {
    let target = Target::sp(pair.n as u32, pair.q());
    let form = if target.needs_form_obstruction() {
        Some(quadratic_form_obstruction(pair)?.verdict())
    } else {
        None
    };
    let (certificate, seen) = lps_certificate(
        target,
        witnesses,
        form.as_ref().map(|f| *f == FormVerdict::Inconsistent),
    )?;
    Ok(CertifyReport {
        pair: pair.describe(),
        target: target.name(),
        witnesses: witnesses.len(),
        witnessed_primes: seen,
        target_primes: target.order()?.primes(),
        quadratic_form: form,
        certificate,
    })
}

/// Union of the prime sets of the given witnesses.
pub fn varpi_union(ws: &[Mat]) -> Result<PrimeSet, ClaimError> {
    let mut s = PrimeSet::default();
    for w in ws {
        s = s.union(&crate::grouporder::varpi(w)?);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_parses() {
        let v = load().unwrap();
        assert!(v.len() >= 30);
        assert!(v.iter().any(|c| c.id == "prop-q2-sl9" && c.ns.len() == 5));
    }

    #[test]
    fn words_keep_their_shape() {
        let v = load().unwrap();
        let c = v.iter().find(|c| c.id == "prop-q2-n7").unwrap();
        assert_eq!(c.word.to_string(), "([x,y] x y)^k x y");
    }
}
