//! The subcommands.  Each returns its stdout text and exit code.

use std::env;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use trireg_core::cycles::{
    difference_cycles, e_count, floating_punctures, same_sign_guarantee, twist,
};
use trireg_core::matching::{
    biadjacency, count_tilings, count_tilings_with, enumerate_tilings, first_branch, msgn,
};
use trireg_core::matrix::DEFAULT_PERMANENT_CAP;
use trireg_core::paths::{
    lattice_points, lpsgn, path_matrix, signed_family_count, tiling_to_paths,
};
use trireg_core::resolution::{resolve, resolve_random, Resolution, SplittingChains, Target};
use trireg_core::tileability::{heavy_subregion, is_tileable};
use trireg_core::{Monomial, Tiling, TriangularRegion};

use crate::error::CliError;
use crate::render;
use crate::spec::RegionSpec;

pub const SCHEMA_VERSION: u32 = 1;

/// Largest number of start points for the brute-force path check.
pub const LGV_MAX_STARTS: usize = 6;

/// Default bound on the number of tilings a verification enumerates.
pub const DEFAULT_MAX_TILINGS: u128 = 20_000;

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn json<T: Serialize>(value: &T, pass: bool) -> Output {
        let mut text = serde_json::to_string_pretty(value).expect("report serializes");
        text.push('\n');
        Output {
            text,
            code: if pass { 0 } else { 1 },
        }
    }
}

fn big(n: &BigInt) -> Value {
    n.to_i64()
        .map_or_else(|| Value::String(n.to_string()), Value::from)
}

fn count_value(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

/// Permanent size cap, overridable through `TRIREG_PERMANENT_CAP`.
pub fn permanent_cap() -> Result<usize, CliError> {
    match env::var("TRIREG_PERMANENT_CAP") {
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::Input(format!(
                "TRIREG_PERMANENT_CAP must be a non-negative integer, got {s:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_PERMANENT_CAP),
    }
}

fn require_balanced(region: &TriangularRegion) -> Result<(), CliError> {
    let (up, down) = region.balance();
    if up != down {
        return Err(trireg_core::Error::Unbalanced { up, down }.into());
    }
    Ok(())
}

/// Tiling count, split over the first branch of the search.
pub fn parallel_count(region: &TriangularRegion) -> u128 {
    let branch = first_branch(region);
    if branch.is_empty() {
        return count_tilings(region);
    }
    branch
        .par_iter()
        .map(|l| count_tilings_with(region, std::slice::from_ref(l)))
        .sum()
}

fn bounded_tilings(region: &TriangularRegion, max: u128) -> Result<Vec<Tiling>, CliError> {
    let n = parallel_count(region);
    if n > max {
        return Err(CliError::Cap(format!(
            "region has {n} tilings, above the enumeration bound {max}"
        )));
    }
    Ok(enumerate_tilings(region).collect())
}

fn nth_tiling(region: &TriangularRegion, index: usize) -> Result<Tiling, CliError> {
    enumerate_tilings(region).nth(index).ok_or_else(|| {
        let n = count_tilings(region);
        CliError::Input(format!(
            "tiling index {index} is out of range ({n} tilings)"
        ))
    })
}

fn tiling_json(tiling: &Tiling) -> Value {
    Value::Array(
        tiling
            .lozenges()
            .map(|l| json!({"down": l.down.to_string(), "up": l.up.to_string()}))
            .collect(),
    )
}

fn region_json(region: &TriangularRegion) -> Value {
    json!({"d": region.d(), "gens": RegionSpec::of_region(region).gens})
}

pub fn check(spec: &RegionSpec) -> Result<Output, CliError> {
    let region = spec.region()?;
    let (up, down) = region.balance();
    let (floating, _) = floating_punctures(&region);
    let punctures: Vec<Value> = region
        .punctures()
        .iter()
        .map(|p| json!({"gen": p.generator.to_string(), "side": p.side, "floating": floating.contains(p)}))
        .collect();
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "check",
        "region": region_json(&region),
        "balanced": up == down,
        "up": up,
        "down": down,
        "tileable": is_tileable(&region),
        "heavy_witness": heavy_subregion(&region).map(|m| m.to_string()),
        "punctures": punctures,
        "same_sign_guarantee": same_sign_guarantee(&region).as_str(),
    });
    Ok(Output::json(&report, true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CountMethod {
    Enum,
    Permanent,
    Both,
}

pub fn count(spec: &RegionSpec, method: CountMethod) -> Result<Output, CliError> {
    let region = spec.region()?;
    require_balanced(&region)?;
    let by_enum =
        matches!(method, CountMethod::Enum | CountMethod::Both).then(|| parallel_count(&region));
    let by_permanent = match method {
        CountMethod::Enum => None,
        _ => Some(biadjacency(&region).permanent_with_cap(permanent_cap()?)?),
    };
    let agree = match (&by_enum, &by_permanent) {
        (Some(e), Some(p)) => BigInt::from(*e) == *p,
        _ => true,
    };
    let count = by_enum
        .map(count_value)
        .or_else(|| by_permanent.as_ref().map(big));
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "count",
        "region": region_json(&region),
        "count": count,
        "enumeration": by_enum.map(count_value),
        "permanent": by_permanent.as_ref().map(big),
        "agree": agree,
    });
    Ok(Output::json(&report, agree))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Property {
    Detzn,
    SignedEnum,
    Persign,
    Rotation,
    Lgv,
    Twist,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Detzn,
        Property::SignedEnum,
        Property::Persign,
        Property::Rotation,
        Property::Lgv,
        Property::Twist,
    ];

    fn name(self) -> &'static str {
        match self {
            Property::Detzn => "detzn",
            Property::SignedEnum => "signed-enum",
            Property::Persign => "persign",
            Property::Rotation => "rotation",
            Property::Lgv => "lgv",
            Property::Twist => "twist",
        }
    }
}

struct Verifier<'a> {
    region: &'a TriangularRegion,
    max_tilings: u128,
    tilings: Option<Vec<Tiling>>,
}

impl Verifier<'_> {
    fn tilings(&mut self) -> Result<&[Tiling], CliError> {
        if self.tilings.is_none() {
            self.tilings = Some(bounded_tilings(self.region, self.max_tilings)?);
        }
        Ok(self.tilings.as_deref().expect("just filled"))
    }

    fn run(&mut self, p: Property) -> Result<(bool, Value), CliError> {
        let region = self.region;
        match p {
            Property::Detzn => {
                let z = biadjacency(region).determinant()?;
                let n = path_matrix(region).determinant()?;
                let mut products = Vec::new();
                for t in self.tilings()? {
                    products.push(msgn(region, t) * lpsgn(region, t)?);
                }
                products.sort();
                products.dedup();
                let pass = z.abs() == n.abs() && products.len() <= 1;
                Ok((
                    pass,
                    json!({
                        "abs_det_z": big(&z.abs()),
                        "abs_det_n": big(&n.abs()),
                        "msgn_times_lpsgn": products,
                    }),
                ))
            }
            Property::SignedEnum => {
                let z = biadjacency(region).determinant()?;
                let n = path_matrix(region).determinant()?;
                let (mut ms, mut ls) = (0i64, 0i64);
                for t in self.tilings()? {
                    ms += i64::from(msgn(region, t));
                    ls += i64::from(lpsgn(region, t)?);
                }
                let (ms, ls) = (BigInt::from(ms), BigInt::from(ls));
                let global = if ls == n {
                    1
                } else if ls == -n.clone() {
                    -1
                } else {
                    0
                };
                let pass = ms == z && global != 0;
                Ok((
                    pass,
                    json!({
                        "det_z": big(&z),
                        "det_n": big(&n),
                        "sum_msgn": big(&ms),
                        "sum_lpsgn": big(&ls),
                        "lpsgn_global_sign": global,
                    }),
                ))
            }
            Property::Persign => {
                let z = biadjacency(region);
                let per = z.permanent_with_cap(permanent_cap()?)?;
                let det = z.abs_determinant()?;
                Ok((
                    per == det,
                    json!({
                        "permanent": big(&per),
                        "abs_det_z": big(&det),
                        "same_sign_guarantee": same_sign_guarantee(region).as_str(),
                    }),
                ))
            }
            Property::Rotation => {
                let mut rows = Vec::new();
                for k in 0..3 {
                    let r = region.rotate(k);
                    rows.push((
                        parallel_count(&r),
                        biadjacency(&r).abs_determinant()?,
                        path_matrix(&r).abs_determinant()?,
                    ));
                }
                let pass = rows.windows(2).all(|w| w[0] == w[1]);
                let table: Vec<Value> = rows
                    .iter()
                    .enumerate()
                    .map(|(k, (c, z, n))| json!({"rotation": k, "count": count_value(*c), "abs_det_z": big(z), "abs_det_n": big(n)}))
                    .collect();
                Ok((pass, json!({"rotations": table})))
            }
            Property::Lgv => {
                let (starts, ends) = lattice_points(region);
                if starts.len() > LGV_MAX_STARTS {
                    return Err(CliError::Cap(format!(
                        "{} start points; brute-force path enumeration is limited to {LGV_MAX_STARTS}",
                        starts.len()
                    )));
                }
                let s: Vec<(i64, i64)> = starts.iter().map(|p| p.coords()).collect();
                let e: Vec<(i64, i64)> = ends.iter().map(|p| p.coords()).collect();
                let signed = signed_family_count(&s, &e, None);
                let n = path_matrix(region).determinant()?;
                Ok((
                    signed == n,
                    json!({"starts": s.len(), "signed_families": big(&signed), "det_n": big(&n)}),
                ))
            }
            Property::Twist => {
                let tilings = self.tilings()?.to_vec();
                let mut cycles = 0usize;
                let mut failures = Vec::new();
                for (i, a) in tilings.iter().enumerate() {
                    for b in &tilings[i + 1..] {
                        for c in difference_cycles(a, b) {
                            cycles += 1;
                            let n = c.len();
                            let e = e_count(region, &c);
                            let tw = twist(region, a, &c)?;
                            let ratio = msgn(region, &tw) * msgn(region, a);
                            let lp_same = lpsgn(region, &tw)? == lpsgn(region, a)?;
                            let want = if n % 2 == 1 { 1 } else { -1 };
                            if ratio != want
                                || e.is_multiple_of(2) != (n % 2 == 1)
                                || lp_same != e.is_multiple_of(2)
                            {
                                failures.push(json!({"n": n, "e_count": e, "msgn_ratio": ratio, "lpsgn_same": lp_same}));
                            }
                        }
                    }
                }
                Ok((
                    failures.is_empty(),
                    json!({"cycles": cycles, "failures": failures}),
                ))
            }
        }
    }
}

pub fn verify(
    spec: &RegionSpec,
    properties: &[Property],
    max_tilings: u128,
) -> Result<Output, CliError> {
    let region = spec.region()?;
    require_balanced(&region)?;
    let mut props = if properties.is_empty() {
        Property::ALL.to_vec()
    } else {
        properties.to_vec()
    };
    props.sort();
    props.dedup();
    let mut verifier = Verifier {
        region: &region,
        max_tilings,
        tilings: None,
    };
    let mut results = Vec::new();
    let mut all = true;
    for p in props {
        let (pass, details) = verifier.run(p)?;
        all &= pass;
        results.push(json!({"property": p.name(), "pass": pass, "details": details}));
    }
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "region": region_json(&region),
        "pass": all,
        "results": results,
    });
    Ok(Output::json(&report, all))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum What {
    Region,
    Tiling,
    Paths,
    Matching,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Svg,
    Ascii,
}

pub fn render(
    spec: &RegionSpec,
    what: What,
    format: Format,
    index: usize,
) -> Result<Output, CliError> {
    let region = spec.region()?;
    let tiling = match what {
        What::Region => None,
        _ => Some(nth_tiling(&region, index)?),
    };
    let text = match (format, what, &tiling) {
        (Format::Ascii, What::Region, _) => render::ascii(&region, None),
        (Format::Ascii, What::Paths, Some(t)) => {
            let family = tiling_to_paths(&region, t)?;
            let mut s = render::ascii(&region, Some(t));
            for (i, p) in family.paths.iter().enumerate() {
                let pts: Vec<String> = p.iter().map(|(u, v)| format!("({u},{v})")).collect();
                s.push_str(&format!(
                    "path {i} -> end {}: {}\n",
                    family.lambda[i],
                    pts.join(" ")
                ));
            }
            s
        }
        (Format::Ascii, _, t) => render::ascii(&region, t.as_ref()),
        (Format::Svg, What::Region, _) => render::svg_region(&region),
        (Format::Svg, What::Tiling, Some(t)) => render::svg_tiling(&region, t),
        (Format::Svg, What::Paths, Some(t)) => {
            render::svg_paths(&region, t, &tiling_to_paths(&region, t)?)
        }
        (Format::Svg, What::Matching, Some(t)) => render::svg_matching(&region, t),
        (Format::Svg, _, None) => unreachable!("tiling present for tiling renders"),
    };
    Ok(Output { text, code: 0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Z,
    N,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MatrixFormat {
    Text,
    Json,
}

pub fn matrix(spec: &RegionSpec, which: Which, format: MatrixFormat) -> Result<Output, CliError> {
    let region = spec.region()?;
    let m = match which {
        Which::Z => biadjacency(&region),
        Which::N => path_matrix(&region),
    };
    match format {
        MatrixFormat::Text => Ok(Output {
            text: m.to_string(),
            code: 0,
        }),
        MatrixFormat::Json => {
            let rows: Vec<Vec<Value>> = m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(big).collect())
                .collect();
            Ok(Output::json(&rows, true))
        }
    }
}

fn chains_json(c: &SplittingChains) -> Value {
    let names = |v: &[Monomial]| v.iter().map(|m| m.to_string()).collect::<Vec<_>>();
    json!({"lower_left": names(&c.lower_left), "lower_right": names(&c.lower_right), "top": names(&c.top)})
}

pub struct ResolveArgs<'a> {
    pub puncture: &'a str,
    pub covering: bool,
    pub index: usize,
    pub seed: Option<u64>,
    pub out_dir: Option<&'a Path>,
}

pub fn resolve_cmd(spec: &RegionSpec, args: ResolveArgs<'_>) -> Result<Output, CliError> {
    let region = spec.region()?;
    let g: Monomial = args
        .puncture
        .parse()
        .map_err(|e| CliError::Input(format!("--puncture {:?}: {e}", args.puncture)))?;
    let p = region
        .puncture(&g)
        .ok_or(trireg_core::Error::UnknownPuncture(g))?;
    let target = match (args.covering, region.overlapping_partner(&p)) {
        (false, _) => Target::Puncture(g),
        (true, Some(q)) => Target::Covering(g, q.generator),
        (true, None) => {
            return Err(CliError::Input(format!(
                "--covering given but {g} overlaps no puncture"
            )))
        }
    };
    let tiling = nth_tiling(&region, args.index)?;
    let r: Resolution = match args.seed {
        None => resolve(&region, &tiling, target)?,
        Some(s) => resolve_random(&region, &tiling, target, &mut ChaCha8Rng::seed_from_u64(s))?,
    };
    let resolved = RegionSpec::of_region(&r.region);
    if let Some(dir) = args.out_dir {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("before.svg"), render::svg_tiling(&region, &tiling))?;
        fs::write(
            dir.join("after.svg"),
            render::svg_tiling(&r.region, &r.tiling),
        )?;
        fs::write(dir.join("resolved.toml"), resolved.to_toml())?;
    }
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "resolve",
        "region": region_json(&region),
        "tiling_index": args.index,
        "resolved_puncture": {"gen": r.puncture.generator.to_string(), "side": r.puncture.side},
        "covering": args.covering,
        "chains": chains_json(&r.chains),
        "result": region_json(&r.region),
        "spec": resolved.to_toml(),
        "tiling": tiling_json(&r.tiling),
        "before": render::ascii(&region, Some(&tiling)),
        "after": render::ascii(&r.region, Some(&r.tiling)),
    });
    Ok(Output::json(&report, true))
}
