//! The generator pairs `(x, y)` of `Sp_2n(q)`, the Gram matrix `J`, the
//! commutator power `tau`, the invariant block decomposition of `[x,y]`
//! and the auxiliary matrices used by the claims.
//!
//! Basis order is `e_1, ..., e_n, e_-1, ..., e_-n`; column `j` of a matrix
//! is the image of the `j`-th basis vector. Signed indices (`3`, `-3`)
//! name basis vectors throughout; [`pos`] converts them to positions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{Env, Expr, ExprError};
use crate::gf::{Field, FieldElem, FieldRef, GfError};
use crate::grouporder::prime_power_parts;
use crate::matrix::{paper_commutator, Mat, MatError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("tau is not defined for {0}")]
    NoTauDefined(String),
    #[error("outside the supported range: {0}")]
    OutOfRange(String),
    #[error("template {name}: {msg}")]
    Template { name: String, msg: String },
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Field(#[from] GfError),
}

fn bad(msg: impl Into<String>) -> ConstructError {
    ConstructError::BadParam(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Recipe {
    General,
    N5,
    N6Alt,
    N8Alt,
}

impl Recipe {
    pub fn name(self) -> &'static str {
        match self {
            Recipe::General => "general",
            Recipe::N5 => "n5",
            Recipe::N6Alt => "n6alt",
            Recipe::N8Alt => "n8alt",
        }
    }

    pub fn parse(s: &str) -> Result<Recipe, ConstructError> {
        match s {
            "general" => Ok(Recipe::General),
            "n5" => Ok(Recipe::N5),
            "n6alt" => Ok(Recipe::N6Alt),
            "n8alt" => Ok(Recipe::N8Alt),
            _ => Err(bad(format!("unknown recipe {s:?}"))),
        }
    }

    /// Half-dimension fixed by a bespoke recipe.
    pub fn fixed_n(self) -> Option<usize> {
        match self {
            Recipe::General => None,
            Recipe::N5 => Some(5),
            Recipe::N6Alt => Some(6),
            Recipe::N8Alt => Some(8),
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Position of `e_i` (`i > 0`) or `e_{-|i|}` (`i < 0`) in a space of
/// half-dimension `n`.
pub fn pos(n: usize, i: i32) -> usize {
    assert!(
        i != 0 && i.unsigned_abs() as usize <= n,
        "basis index {i} out of range"
    );
    if i > 0 {
        i as usize - 1
    } else {
        n + i.unsigned_abs() as usize - 1
    }
}

/// Positions of the basis vectors of `E_l = <e_1, ..., e_l>`.
pub fn e_indices(l: usize) -> Vec<usize> {
    (0..l).collect()
}

/// Positions of the basis vectors of `S_l = <e_{n-l+1}, ..., e_n>`.
pub fn s_indices(n: usize, l: usize) -> Vec<usize> {
    (n - l..n).collect()
}

/// The field with `q` elements and its default modulus.
pub fn field_of_order(q: u64) -> Result<FieldRef, ConstructError> {
    let (p, f) = prime_power_parts(q).map_err(|e| bad(e.to_string()))?;
    Ok(Field::new(p, f, None)?)
}

/// Resolve an `a`-spec against a field: an integer, or `minpoly:c0,c1,...`
/// (constant term first) selecting the first root in packed order.
pub fn resolve_a(field: &FieldRef, spec: &str) -> Result<FieldElem, ConstructError> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("minpoly:") {
        let cs: Vec<i64> = rest
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad(format!("bad minimal polynomial {rest:?}")))?;
        let f = crate::poly::Poly::from_ints(field, &cs);
        if f.degree().unwrap_or(0) == 0 {
            return Err(bad("minimal polynomial must have positive degree"));
        }
        return field
            .elements()
            .find(|&b| f.eval(b).is_zero())
            .ok_or_else(|| {
                bad(format!(
                    "{} has no root in GF({})",
                    f.pretty(),
                    field.order()
                ))
            });
    }
    field
        .parse_elem(spec)
        .map_err(|_| bad(format!("bad value of a: {spec:?}")))
}

/// `J = [[0, -I], [I, 0]]`.
pub fn gram(field: &FieldRef, n: usize) -> Mat {
    let one = field.one();
    let m1 = field.neg(one);
    Mat::from_fn(field, 2 * n, 2 * n, |i, j| {
        if j == i + n {
            m1
        } else if i == j + n {
            one
        } else {
            field.zero()
        }
    })
}

/// The ambient symplectic space of half-dimension `n`.
#[derive(Clone, Debug)]
pub struct SympSpace {
    pub n: usize,
    pub field: FieldRef,
    pub j: Mat,
}

impl SympSpace {
    pub fn new(field: &FieldRef, n: usize) -> SympSpace {
        SympSpace {
            n,
            field: field.clone(),
            j: gram(field, n),
        }
    }

    /// `g^T J g = J`.
    pub fn is_isometry(&self, g: &Mat) -> bool {
        g.rows() == 2 * self.n && &(&g.transpose() * &self.j) * g == self.j
    }
}

// ---------------------------------------------------------------------------
// templates

struct Template {
    rows: usize,
    cols: usize,
    identity: bool,
    entries: Vec<(usize, usize, Expr)>,
}

fn templates() -> &'static BTreeMap<String, Template> {
    static T: OnceLock<BTreeMap<String, Template>> = OnceLock::new();
    T.get_or_init(|| {
        parse_templates(include_str!("../data/matrices.toml")).expect("bundled matrix templates")
    })
}

fn parse_templates(src: &str) -> Result<BTreeMap<String, Template>, String> {
    let doc: toml::Table = src.parse().map_err(|e| format!("{e}"))?;
    let mut out = BTreeMap::new();
    for (name, v) in doc {
        let t = v.as_table().ok_or(format!("{name}: not a table"))?;
        let expr = |s: &toml::Value| -> Result<Expr, String> {
            let s = s
                .as_str()
                .ok_or(format!("{name}: entries must be strings"))?;
            Expr::parse(s).map_err(|e| format!("{name}: {e}"))
        };
        let tpl = if let Some(rows) = t.get("rows") {
            let rows = rows.as_array().ok_or(format!("{name}: rows"))?;
            let mut entries = Vec::new();
            let mut cols = None;
            for (i, r) in rows.iter().enumerate() {
                let r = r.as_array().ok_or(format!("{name}: row {i}"))?;
                if *cols.get_or_insert(r.len()) != r.len() {
                    return Err(format!("{name}: ragged rows"));
                }
                for (j, e) in r.iter().enumerate() {
                    entries.push((i, j, expr(e)?));
                }
            }
            Template {
                rows: rows.len(),
                cols: cols.unwrap_or(0),
                identity: false,
                entries,
            }
        } else {
            let size = t
                .get("size")
                .and_then(|s| s.as_integer())
                .ok_or(format!("{name}: size"))? as usize;
            let identity = t.get("base").and_then(|b| b.as_str()) == Some("identity");
            let mut entries = Vec::new();
            for e in t
                .get("entries")
                .and_then(|e| e.as_array())
                .ok_or(format!("{name}: entries"))?
            {
                let e = e.as_array().ok_or(format!("{name}: entry"))?;
                let idx = |k: usize| -> Result<usize, String> {
                    let v = e
                        .get(k)
                        .and_then(|v| v.as_integer())
                        .ok_or(format!("{name}: index"))?;
                    if v < 1 || v as usize > size {
                        return Err(format!("{name}: index {v} out of range"));
                    }
                    Ok(v as usize - 1)
                };
                entries.push((
                    idx(0)?,
                    idx(1)?,
                    expr(e.get(2).ok_or(format!("{name}: value"))?)?,
                ));
            }
            Template {
                rows: size,
                cols: size,
                identity,
                entries,
            }
        };
        out.insert(name, tpl);
    }
    Ok(out)
}

/// Names of the bundled matrix templates.
pub fn template_names() -> Vec<&'static str> {
    templates().keys().map(|k| k.as_str()).collect()
}

/// Instantiate a bundled template under the given bindings.
pub fn template(name: &str, env: &Env) -> Result<Mat, ConstructError> {
    let t = templates()
        .get(name)
        .ok_or_else(|| ConstructError::Template {
            name: name.into(),
            msg: "unknown template".into(),
        })?;
    let k = env.field();
    let mut m = if t.identity {
        Mat::identity(k, t.rows)
    } else {
        Mat::zeros(k, t.rows, t.cols)
    };
    for (i, j, e) in &t.entries {
        let v = env
            .eval_elem(e)
            .map_err(|e: ExprError| ConstructError::Template {
                name: name.into(),
                msg: e.to_string(),
            })?;
        m.set(*i, *j, k.add(m.get(*i, *j), v));
    }
    Ok(m)
}

/// Bindings `a` (and `eps = 1`) over the field of `a`.
pub fn env_for(field: &FieldRef, a: FieldElem) -> Env {
    Env::new(field).with("a", a).with("eps", field.one())
}

// ---------------------------------------------------------------------------
// assembling matrices column by column

/// Builds an `n x n` matrix on `V` where every column must be specified
/// exactly once.
struct VBuilder {
    m: Mat,
    set: Vec<bool>,
}

impl VBuilder {
    fn new(field: &FieldRef, n: usize) -> Self {
        VBuilder {
            m: Mat::zeros(field, n, n),
            set: vec![false; n],
        }
    }

    fn col(&mut self, j: usize, image: &[(usize, FieldElem)]) -> Result<(), ConstructError> {
        if self.set[j - 1] {
            return Err(ConstructError::Postcondition(format!(
                "column e{j} assigned twice"
            )));
        }
        self.set[j - 1] = true;
        for &(i, v) in image {
            self.m.set(i - 1, j - 1, v);
        }
        Ok(())
    }

    fn fix(&mut self, j: usize) -> Result<(), ConstructError> {
        let one = self.m.field().one();
        self.col(j, &[(j, one)])
    }

    fn swap(&mut self, i: usize, j: usize) -> Result<(), ConstructError> {
        let one = self.m.field().one();
        self.col(i, &[(j, one)])?;
        self.col(j, &[(i, one)])
    }

    /// `i -> j -> k -> i`.
    fn cycle(&mut self, i: usize, j: usize, k: usize) -> Result<(), ConstructError> {
        let one = self.m.field().one();
        self.col(i, &[(j, one)])?;
        self.col(j, &[(k, one)])?;
        self.col(k, &[(i, one)])
    }

    fn block(&mut self, idx: &[usize], b: &Mat) -> Result<(), ConstructError> {
        for (c, &j) in idx.iter().enumerate() {
            let image: Vec<(usize, FieldElem)> = idx
                .iter()
                .enumerate()
                .map(|(r, &i)| (i, b.get(r, c)))
                .collect();
            self.col(j, &image)?;
        }
        Ok(())
    }

    fn finish(self) -> Result<Mat, ConstructError> {
        if let Some(j) = self.set.iter().position(|s| !s) {
            return Err(ConstructError::Postcondition(format!(
                "column e{} unassigned",
                j + 1
            )));
        }
        Ok(self.m)
    }
}

/// `diag(A, A^-T)`.
pub fn hat(a: &Mat) -> Result<Mat, ConstructError> {
    let ait = a.inverse()?.transpose();
    Ok(Mat::block_diag(&[a, &ait]))
}

/// `diag(I_{n-l}, A, I_{n-l}, A^-T)` for an `l x l` block `A`.
pub fn hat_tail(n: usize, a: &Mat) -> Result<Mat, ConstructError> {
    let l = a.rows();
    if l > n {
        return Err(ConstructError::OutOfRange(format!(
            "block of size {l} in n = {n}"
        )));
    }
    let i = Mat::identity(a.field(), n - l);
    let ait = a.inverse()?.transpose();
    Ok(Mat::block_diag(&[&i, a, &i, &ait]))
}

/// A matrix on the full space, identity on every basis vector not mapped
/// explicitly. Images are given with integer coefficients.
fn full_map(field: &FieldRef, n: usize, maps: &[(i32, &[(i32, i64)])]) -> Mat {
    let mut m = Mat::identity(field, 2 * n);
    for &(from, to) in maps {
        let j = pos(n, from);
        for i in 0..2 * n {
            m.set(i, j, field.zero());
        }
        for &(i, c) in to {
            let r = pos(n, i);
            m.set(r, j, field.add(m.get(r, j), field.from_int(c)));
        }
    }
    m
}

/// `e_i -> e_-i`, `e_-i -> -(e_i + e_-i)` for each listed `i`.
fn y1_type(field: &FieldRef, n: usize, idx: &[i32]) -> Mat {
    let maps: Vec<(i32, Vec<(i32, i64)>)> = idx
        .iter()
        .flat_map(|&i| [(i, vec![(-i, 1)]), (-i, vec![(i, -1), (-i, -1)])])
        .collect();
    let refs: Vec<(i32, &[(i32, i64)])> = maps.iter().map(|(f, t)| (*f, t.as_slice())).collect();
    full_map(field, n, &refs)
}

// ---------------------------------------------------------------------------
// generator pairs

#[derive(Clone, Debug)]
pub struct Factors {
    pub x1: Mat,
    pub x2: Mat,
    pub y1: Mat,
    pub y2: Mat,
}

#[derive(Clone, Debug)]
pub struct GeneratorPair {
    pub x: Mat,
    pub y: Mat,
    pub n: usize,
    pub a: FieldElem,
    pub recipe: Recipe,
    /// `x = x1 x2`, `y = y1 y2` for the general recipe.
    pub factors: Option<Factors>,
    field: FieldRef,
}

impl GeneratorPair {
    pub fn field(&self) -> &FieldRef {
        &self.field
    }
    pub fn q(&self) -> u64 {
        self.field.order()
    }
    pub fn p(&self) -> u64 {
        self.field.p()
    }
    pub fn space(&self) -> SympSpace {
        SympSpace::new(&self.field, self.n)
    }
    /// `[x, y] = x y^-1 x y`.
    pub fn commutator(&self) -> Mat {
        paper_commutator(&self.x, &self.y).expect("generators are invertible")
    }
    pub fn describe(&self) -> String {
        format!(
            "{} n={} q={} a={}",
            self.recipe,
            self.n,
            self.q(),
            self.field.format(self.a)
        )
    }

    fn checked(self) -> Result<GeneratorPair, ConstructError> {
        let k = &self.field;
        let id = Mat::identity(k, 2 * self.n);
        let sp = self.space();
        if &self.x * &self.x != id {
            return Err(ConstructError::Postcondition("x^2 != I".into()));
        }
        if self.y.pow_u128(3) != id {
            return Err(ConstructError::Postcondition("y^3 != I".into()));
        }
        if !sp.is_isometry(&self.x) || !sp.is_isometry(&self.y) {
            return Err(ConstructError::Postcondition(
                "generator is not symplectic".into(),
            ));
        }
        Ok(self)
    }
}

fn check_a(field: &FieldRef, a: FieldElem) -> Result<(), ConstructError> {
    if !field.owns(a) {
        return Err(bad("a does not belong to the field"));
    }
    if a.is_zero() {
        return Err(bad("a must be nonzero"));
    }
    Ok(())
}

/// The pair for `n = 4` or `n >= 6`.
pub fn build_general(
    n: usize,
    field: &FieldRef,
    a: FieldElem,
) -> Result<GeneratorPair, ConstructError> {
    check_a(field, a)?;
    let (p, q) = (field.p(), field.order());
    if n < 4 || n == 5 {
        return Err(bad(format!(
            "the general recipe needs n = 4 or n >= 6, got {n}"
        )));
    }
    if n == 4 && q == 2 {
        return Err(bad("(n, q) = (4, 2) is excluded"));
    }
    let (r, m) = (n % 3, n / 3);
    let special = p == 2 && matches!(n, 7 | 9 | 11);
    let env = env_for(field, a);
    let one = field.one();

    let x1 = if r == 0 {
        if p > 2 {
            full_map(
                field,
                n,
                &[
                    (1, &[(-2, 1)]),
                    (-2, &[(1, 1)]),
                    (2, &[(-1, -1)]),
                    (-1, &[(2, -1)]),
                ],
            )
        } else {
            full_map(
                field,
                n,
                &[(1, &[(1, 1), (-1, 1)]), (2, &[(-2, 1)]), (-2, &[(2, 1)])],
            )
        }
    } else {
        Mat::identity(field, 2 * n)
    };

    let mut av = VBuilder::new(field, n);
    if m >= 4 {
        for j in 0..=m - 4 {
            av.fix(3 * j + 5 + r)?;
        }
    }
    match r {
        0 => {
            av.fix(1)?;
            av.fix(2)?;
        }
        1 => {
            av.swap(1, 2)?;
            if n >= 7 {
                av.fix(3)?;
            }
        }
        _ => {
            av.swap(1, 4)?;
            av.swap(2, 3)?;
        }
    }
    if n >= 9 && n != 11 {
        av.col(n - 4, &[(n - 4, field.neg(one))])?;
    } else if n == 11 {
        av.fix(n - 4)?;
    }
    if m >= 2 {
        for j in 0..=m - 2 {
            av.swap(3 * j + 3 + r, 3 * j + 4 + r)?;
        }
    }
    let gamma = template("gamma", &env)?;
    let g = if n == 4 || special {
        gamma.transpose()
    } else {
        gamma
    };
    av.block(&[n - 1, n], &g)?;
    let x2 = hat(&av.finish()?)?;

    let y1 = if r >= 1 {
        y1_type(field, n, &[1])
    } else {
        Mat::identity(field, 2 * n)
    };

    let mut bv = VBuilder::new(field, n);
    for j in 1..=r {
        bv.fix(j)?;
    }
    if m >= 2 {
        for j in 0..=m - 2 {
            bv.cycle(3 * j + 1 + r, 3 * j + 2 + r, 3 * j + 3 + r)?;
        }
    }
    let eta = if n == 4 || n == 8 {
        template("eta1", &env)?
    } else if special {
        template("eta2", &env)?.inverse()?.transpose()
    } else if p > 2 {
        template("eta1", &env)?
    } else if q > 2 {
        template("eta2", &env)?
    } else {
        template("eta3", &env)?
    };
    bv.block(&[n - 2, n - 1, n], &eta)?;
    let y2 = hat(&bv.finish()?)?;

    GeneratorPair {
        x: &x1 * &x2,
        y: &y1 * &y2,
        n,
        a,
        recipe: Recipe::General,
        factors: Some(Factors { x1, x2, y1, y2 }),
        field: field.clone(),
    }
    .checked()
}

fn need_q(field: &FieldRef, recipe: Recipe) -> Result<(), ConstructError> {
    let q = field.order();
    if q <= 2 {
        return Err(bad(format!("recipe {recipe} requires q > 2")));
    }
    if recipe == Recipe::N6Alt && q == 4 {
        return Err(bad("recipe n6alt requires q != 4"));
    }
    Ok(())
}

pub fn build_n5(field: &FieldRef, a: FieldElem) -> Result<GeneratorPair, ConstructError> {
    check_a(field, a)?;
    need_q(field, Recipe::N5)?;
    let n = 5;
    let env = env_for(field, a);
    let mut av = VBuilder::new(field, n);
    av.swap(1, 3)?;
    av.fix(2)?;
    av.block(&[4, 5], &template("gamma", &env)?.transpose())?;
    let x = hat(&av.finish()?)?;
    let mut bv = VBuilder::new(field, n);
    bv.cycle(2, 3, 4)?;
    bv.fix(1)?;
    bv.fix(5)?;
    let y = &y1_type(field, n, &[1, 5]) * &hat(&bv.finish()?)?;
    GeneratorPair {
        x,
        y,
        n,
        a,
        recipe: Recipe::N5,
        factors: None,
        field: field.clone(),
    }
    .checked()
}

pub fn build_n6_alt(field: &FieldRef, a: FieldElem) -> Result<GeneratorPair, ConstructError> {
    check_a(field, a)?;
    need_q(field, Recipe::N6Alt)?;
    let n = 6;
    let env = env_for(field, a);
    let mut av = VBuilder::new(field, n);
    av.swap(1, 2)?;
    av.swap(3, 4)?;
    av.block(&[5, 6], &template("gamma", &env)?)?;
    let x = hat(&av.finish()?)?;
    let part = full_map(
        field,
        n,
        &[
            (1, &[(3, 1)]),
            (3, &[(1, -1), (3, -1)]),
            (-1, &[(-1, -1), (-3, 1)]),
            (-3, &[(-1, -1)]),
        ],
    );
    let mut bv = VBuilder::new(field, n);
    for j in 1..=3 {
        bv.fix(j)?;
    }
    bv.cycle(4, 5, 6)?;
    let y = &(&part * &y1_type(field, n, &[2])) * &hat(&bv.finish()?)?;
    GeneratorPair {
        x,
        y,
        n,
        a,
        recipe: Recipe::N6Alt,
        factors: None,
        field: field.clone(),
    }
    .checked()
}

pub fn build_n8_alt(field: &FieldRef, a: FieldElem) -> Result<GeneratorPair, ConstructError> {
    check_a(field, a)?;
    need_q(field, Recipe::N8Alt)?;
    let n = 8;
    let env = env_for(field, a);
    let mut av = VBuilder::new(field, n);
    av.swap(1, 2)?;
    av.swap(4, 5)?;
    av.fix(3)?;
    av.block(&[6, 7, 8], &template("zeta", &env)?)?;
    let x = hat(&av.finish()?)?;
    let mut bv = VBuilder::new(field, n);
    bv.fix(1)?;
    bv.fix(8)?;
    bv.cycle(2, 3, 4)?;
    bv.cycle(5, 6, 7)?;
    let y = &y1_type(field, n, &[1, 8]) * &hat(&bv.finish()?)?;
    GeneratorPair {
        x,
        y,
        n,
        a,
        recipe: Recipe::N8Alt,
        factors: None,
        field: field.clone(),
    }
    .checked()
}

pub fn build(
    recipe: Recipe,
    n: usize,
    field: &FieldRef,
    a: FieldElem,
) -> Result<GeneratorPair, ConstructError> {
    if let Some(fixed) = recipe.fixed_n() {
        if fixed != n {
            return Err(bad(format!(
                "recipe {recipe} is defined only for n = {fixed}"
            )));
        }
    }
    match recipe {
        Recipe::General => build_general(n, field, a),
        Recipe::N5 => build_n5(field, a),
        Recipe::N6Alt => build_n6_alt(field, a),
        Recipe::N8Alt => build_n8_alt(field, a),
    }
}

/// The recipe the construction uses for a given `(n, q)`: the bespoke
/// ones for `n = 5`, for `n = 6` with `q > 2, q != 4`, and `n = 8, q > 2`.
pub fn default_recipe(n: usize, q: u64) -> Recipe {
    match n {
        5 => Recipe::N5,
        6 if q > 2 && q != 4 => Recipe::N6Alt,
        8 if q > 2 => Recipe::N8Alt,
        _ => Recipe::General,
    }
}

/// Exponent `e` with `tau = [x,y]^e`.
pub fn tau_exponent(pair: &GeneratorPair) -> Result<i64, ConstructError> {
    let p = pair.p() as i64;
    let none = || ConstructError::NoTauDefined(pair.describe());
    match pair.recipe {
        Recipe::N5 => Ok(6),
        Recipe::N6Alt => Err(none()),
        Recipe::N8Alt => Ok(if p == 2 { 4 } else { 8 }),
        Recipe::General => match pair.n {
            7 => Ok(8),
            9 => Ok(12),
            11 => Ok(if p == 2 { 8 } else { 16 }),
            14 if p > 2 => Ok(24 * (1 - p)),
            n if n == 10 || n >= 12 => Ok(24),
            _ => Err(none()),
        },
    }
}

pub fn tau_of(pair: &GeneratorPair) -> Result<Mat, ConstructError> {
    let e = tau_exponent(pair)?;
    Ok(pair.commutator().pow(e)?)
}

// ---------------------------------------------------------------------------
// block decomposition of [x,y]

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SummandKind {
    A,
    B,
    CPlus,
    CMinus,
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub kind: SummandKind,
    pub label: String,
    /// Spanning basis vectors, in the listed order.
    pub basis: Vec<i32>,
    /// The displayed matrix of `[x,y]` on this summand, if any.
    pub displayed: Option<Mat>,
}

impl Summand {
    pub fn positions(&self, n: usize) -> Vec<usize> {
        self.basis.iter().map(|&i| pos(n, i)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct BlockDecomp {
    pub n: usize,
    pub summands: Vec<Summand>,
    pub theta: Mat,
    pub eps: Option<i64>,
}

fn signed(v: &[i32], sign: i32) -> Vec<i32> {
    v.iter().map(|&i| sign * i).collect()
}

/// `theta_1` for `p > 2`, `theta_2` for `p = 2 < q`, `theta_3` for `q = 2`.
pub fn theta_for(field: &FieldRef, a: FieldElem) -> Result<Mat, ConstructError> {
    let name = if field.p() > 2 {
        "theta1"
    } else if field.order() > 2 {
        "theta2"
    } else {
        "theta3"
    };
    template(name, &env_for(field, a))
}

pub fn block_decomposition(pair: &GeneratorPair) -> Result<BlockDecomp, ConstructError> {
    let n = pair.n;
    if pair.recipe != Recipe::General || !(n == 10 || n >= 12) {
        return Err(ConstructError::OutOfRange(format!(
            "block decomposition needs the general recipe with n = 10 or n >= 12, got {}",
            pair.describe()
        )));
    }
    let k = pair.field();
    let p = pair.p();
    let (r, m) = (n % 3, n / 3);
    let mut summands = Vec::new();
    let mut env = env_for(k, pair.a);
    let mut add_a =
        |label: &str, basis: Vec<i32>, tpl: &str, env: &Env| -> Result<(), ConstructError> {
            summands.push(Summand {
                kind: SummandKind::A,
                label: label.to_string(),
                basis,
                displayed: Some(template(tpl, env)?),
            });
            Ok(())
        };
    let eps;
    match r {
        0 if p > 2 => {
            let e = if n == 12 { -1 } else { 1 };
            env.set("eps", k.from_int(e));
            eps = Some(e);
            add_a("A0.1", vec![2, 3, 4, 6, 7, -1], "a0_odd_1", &env)?;
            add_a("A0.2", vec![1, -2, -3, -4, -6, -7], "a0_odd_2", &env)?;
        }
        0 => {
            eps = None;
            add_a("A0.1", vec![1, -1], "a0_even_1", &env)?;
            add_a("A0.2", vec![3, 4, -3, -4], "a0_even_2", &env)?;
            add_a("A0.3", vec![2, 6, 7, -2, -6, -7], "a0_even_3", &env)?;
        }
        1 => {
            let e = if n == 10 && p > 2 { -1 } else { 1 };
            env.set("eps", k.from_int(e));
            eps = Some(e);
            add_a("A1", vec![1, 2, 4, 5, -1, -2, -4, -5], "a1", &env)?;
        }
        _ => {
            let e = if n == 14 && p > 2 { -1 } else { 1 };
            env.set("eps", k.from_int(e));
            eps = Some(e);
            let pos_part = [1, 2, 3, 4, 5, 6, 8, 9];
            let mut basis = pos_part.to_vec();
            basis.extend(signed(&pos_part, -1));
            add_a("A2", basis, "a2", &env)?;
        }
    }
    let (start, count) = match r {
        0 => (5, m as i64 - 4),
        1 => (3, m as i64 - 3),
        _ => (7, m as i64 - 4),
    };
    for j in 0..count.max(0) as i32 {
        let i = start + 3 * j;
        for sign in [1, -1] {
            summands.push(Summand {
                kind: SummandKind::B,
                label: format!("T({}{})", if sign > 0 { "" } else { "-" }, i),
                basis: signed(&[i, i + 4, i + 5], sign),
                displayed: None,
            });
        }
    }
    let n32 = n as i32;
    let c = [n32 - 7, n32 - 4, n32 - 3, n32 - 2, n32 - 1, n32];
    let theta = theta_for(k, pair.a)?;
    let theta_it = theta.inverse()?.transpose();
    summands.push(Summand {
        kind: SummandKind::CPlus,
        label: "C+".into(),
        basis: c.to_vec(),
        displayed: Some(theta.clone()),
    });
    summands.push(Summand {
        kind: SummandKind::CMinus,
        label: "C-".into(),
        basis: signed(&c, -1),
        displayed: Some(theta_it),
    });
    Ok(BlockDecomp {
        n,
        summands,
        theta,
        eps,
    })
}

impl BlockDecomp {
    /// Checks that the summands partition the basis.
    pub fn check_partition(&self) -> Result<(), ConstructError> {
        let mut seen = vec![false; 2 * self.n];
        for s in &self.summands {
            for i in s.positions(self.n) {
                if seen[i] {
                    return Err(ConstructError::Postcondition(format!(
                        "basis position {i} appears twice"
                    )));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(ConstructError::Postcondition("summands do not span".into()));
        }
        Ok(())
    }

    /// `c` restricted to a summand in its listed basis; fails unless the
    /// summand is `c`-invariant.
    pub fn restrict(&self, c: &Mat, s: &Summand) -> Result<Mat, ConstructError> {
        Ok(c.restrict(&s.positions(self.n))?)
    }

    pub fn summands_of(&self, kind: SummandKind) -> impl Iterator<Item = &Summand> {
        self.summands.iter().filter(move |s| s.kind == kind)
    }

    /// Positions of `C+` followed by `C-`.
    pub fn c_positions(&self) -> Vec<usize> {
        let mut v: Vec<usize> = Vec::new();
        for kind in [SummandKind::CPlus, SummandKind::CMinus] {
            for s in self.summands_of(kind) {
                v.extend(s.positions(self.n));
            }
        }
        v
    }
}

// ---------------------------------------------------------------------------
// auxiliary matrices

/// `P^ = diag(I_{n-12}, P, I_{n-12}, P^-T)` with `P = [[I_3, 0], [A, I_9]]`.
pub fn phat(n: usize, field: &FieldRef, a: FieldElem) -> Result<Mat, ConstructError> {
    if n < 12 {
        return Err(ConstructError::OutOfRange(format!(
            "P^ needs n >= 12, got {n}"
        )));
    }
    let at = template("phat_at", &env_for(field, a))?;
    let mut p = Mat::identity(field, 12);
    for i in 0..9 {
        for j in 0..3 {
            p.set(3 + i, j, at.get(j, i));
        }
    }
    hat_tail(n, &p)
}

/// `r_i(b)` for `i in 1..=4` (4x4 for `i <= 2`, 6x6 otherwise).
pub fn r_small(
    i: usize,
    field: &FieldRef,
    a: FieldElem,
    b: FieldElem,
) -> Result<Mat, ConstructError> {
    if !(1..=4).contains(&i) {
        return Err(bad(format!("r_{i} is not defined")));
    }
    template(&format!("r{i}"), &env_for(field, a).with("b", b))
}

/// `R_i(b) = diag(I_{n-4}, r_i(b), I_{n-4}, r_i(b)^-T)` for `i = 1, 2`.
pub fn r_hat(
    i: usize,
    n: usize,
    field: &FieldRef,
    a: FieldElem,
    b: FieldElem,
) -> Result<Mat, ConstructError> {
    if !(1..=2).contains(&i) {
        return Err(bad(format!(
            "R_{i} is defined through r_{i} only for i = 1, 2"
        )));
    }
    hat_tail(n, &r_small(i, field, a, b)?)
}

/// `diag(P, P^-T)` for the `n = 8`, `p = 2` conjugation.
pub fn n8_phat(field: &FieldRef, a: FieldElem) -> Result<Mat, ConstructError> {
    hat(&template("n8_p", &env_for(field, a))?)
}

/// Displayed generator triples acting on a 3-dimensional subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum G3Family {
    /// General case, `p > 2`.
    General,
    /// `n = 5`.
    N5,
    /// `n = 7`, `p > 2`.
    N7,
    /// `n = 9`, `p > 2`.
    N9,
    /// `n = 11`, `p > 2`.
    N11,
}

impl G3Family {
    fn prefix(self) -> &'static str {
        match self {
            G3Family::General => "g3",
            G3Family::N5 => "sl35",
            G3Family::N7 => "g39",
            G3Family::N9 => "eq39",
            G3Family::N11 => "g311",
        }
    }
}

pub fn g3_action(
    family: G3Family,
    field: &FieldRef,
    a: FieldElem,
) -> Result<[Mat; 3], ConstructError> {
    let env = env_for(field, a);
    let p = family.prefix();
    Ok([
        template(&format!("{p}_1"), &env)?,
        template(&format!("{p}_2"), &env)?,
        template(&format!("{p}_3"), &env)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FieldRef {
        field_of_order(q).unwrap()
    }

    #[test]
    fn all_templates_parse() {
        assert!(template_names().len() > 40);
        let k = f(7);
        let env = env_for(&k, k.from_int(2)).with("b", k.from_int(3));
        for name in template_names() {
            template(name, &env).unwrap();
        }
    }

    #[test]
    fn factors_commute_and_multiply() {
        for (n, q) in [
            (4, 3),
            (6, 2),
            (7, 2),
            (9, 4),
            (10, 5),
            (11, 8),
            (12, 3),
            (14, 7),
        ] {
            let k = f(q);
            let p = build_general(n, &k, k.one()).unwrap();
            let fs = p.factors.as_ref().unwrap();
            assert_eq!(&fs.x1 * &fs.x2, &fs.x2 * &fs.x1, "n={n} q={q}");
            assert_eq!(&fs.y1 * &fs.y2, &fs.y2 * &fs.y1, "n={n} q={q}");
        }
    }

    #[test]
    fn n4_matches_listed_action() {
        let k = f(5);
        let a = k.from_int(2);
        let pr = build_general(4, &k, a).unwrap();
        let x2 = &pr.factors.as_ref().unwrap().x2;
        let col = |m: &Mat, i: i32| m.col(pos(4, i));
        let mut want = vec![k.zero(); 8];
        want[pos(4, 3)] = k.from_int(2);
        want[pos(4, 4)] = k.one();
        assert_eq!(col(x2, 4), want);
        let mut want = vec![k.zero(); 8];
        want[pos(4, -3)] = k.from_int(-1);
        want[pos(4, -4)] = k.from_int(2);
        assert_eq!(col(x2, -3), want);
    }

    #[test]
    fn preconditions() {
        let k2 = f(2);
        assert!(build_general(4, &k2, k2.one()).is_err());
        assert!(build_general(5, &k2, k2.one()).is_err());
        assert!(build_n5(&k2, k2.one()).is_err());
        let k4 = f(4);
        assert!(build_n6_alt(&k4, k4.one()).is_err());
        let k3 = f(3);
        assert!(build_general(7, &k3, k3.zero()).is_err());
        assert!(build(Recipe::N8Alt, 7, &k3, k3.one()).is_err());
    }

    #[test]
    fn tau_exponents() {
        let k3 = f(3);
        let p13 = build_general(13, &k3, k3.one()).unwrap();
        assert_eq!(tau_exponent(&p13).unwrap(), 24);
        let p14 = build_general(14, &k3, k3.one()).unwrap();
        assert_eq!(tau_exponent(&p14).unwrap(), -48);
        let p6 = build_general(6, &k3, k3.one()).unwrap();
        assert!(matches!(
            tau_exponent(&p6),
            Err(ConstructError::NoTauDefined(_))
        ));
    }

    #[test]
    fn resolve_minpoly() {
        let k = f(9);
        let a = resolve_a(&k, "minpoly:-1,-1,1").unwrap();
        let m = crate::poly::Poly::from_ints(&k, &[-1, -1, 1]);
        assert!(m.eval(a).is_zero());
        assert_eq!(resolve_a(&k, "-1").unwrap(), k.from_int(-1));
        assert!(resolve_a(&f(7), "minpoly:1,0,1").is_err());
    }

    #[test]
    fn gram_properties() {
        let k = f(5);
        let j = gram(&k, 4);
        assert_eq!(&j * &j, Mat::identity(&k, 8).neg());
        assert_eq!(j.transpose(), j.neg());
    }
}
