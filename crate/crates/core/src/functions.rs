//! Textual descriptions of test functions and test sets.
//!
//! Function specs: `random:seed=S`, `member:block=B,i=I,j=J`, `samples:PATH`,
//! `zero`, `one`. Test-set specs: `random:count=N,seed=S`, `members`,
//! `samples:PATH`, or a `;`-separated list of function specs.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::RepCatalog;
use crate::error::{Error, Result};
use crate::groups::GroupModel;
use crate::hilbert::L2Function;
use crate::io;
use crate::scalar::Real;

/// A named, ordered list of test functions.
#[derive(Clone, Debug)]
pub struct TestSet<T> {
    descriptor: String,
    functions: Vec<(String, L2Function<T>)>,
}

impl<T: Real> TestSet<T> {
    pub fn new(descriptor: impl Into<String>, functions: Vec<(String, L2Function<T>)>) -> Self {
        Self { descriptor: descriptor.into(), functions }
    }

    /// Names the functions `f0`, `f1`, ...
    pub fn from_functions(descriptor: impl Into<String>, functions: Vec<L2Function<T>>) -> Self {
        let functions = functions.into_iter().enumerate().map(|(k, f)| (format!("f{k}"), f)).collect();
        Self::new(descriptor, functions)
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &L2Function<T>)> {
        self.functions.iter().map(|(n, f)| (n.as_str(), f))
    }

    pub fn functions(&self) -> Vec<L2Function<T>> {
        self.functions.iter().map(|(_, f)| f.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    Random { seed: Option<u64> },
    Member { block: String, i: usize, j: usize },
    Samples(PathBuf),
    Zero,
    One,
}

fn key_values(s: &str) -> Result<Vec<(&str, &str)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{p}`")))
        })
        .collect()
}

fn parse_num<N: std::str::FromStr>(key: &str, v: &str) -> Result<N> {
    v.parse().map_err(|_| Error::Parse(format!("bad value `{v}` for `{key}`")))
}

impl FunctionSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        match head {
            "zero" => Ok(Self::Zero),
            "one" => Ok(Self::One),
            "samples" if !rest.is_empty() => Ok(Self::Samples(PathBuf::from(rest))),
            "random" => {
                let mut seed = None;
                for (k, v) in key_values(rest)? {
                    match k {
                        "seed" => seed = Some(parse_num(k, v)?),
                        _ => return Err(Error::Parse(format!("unknown key `{k}` in `{s}`"))),
                    }
                }
                Ok(Self::Random { seed })
            }
            "member" => {
                let (mut block, mut i, mut j) = (None, 0, 0);
                for (k, v) in key_values(rest)? {
                    match k {
                        "block" => block = Some(v.to_string()),
                        "i" => i = parse_num(k, v)?,
                        "j" => j = parse_num(k, v)?,
                        _ => return Err(Error::Parse(format!("unknown key `{k}` in `{s}`"))),
                    }
                }
                let block = block.ok_or_else(|| Error::Parse(format!("`{s}` needs block=")))?;
                Ok(Self::Member { block, i, j })
            }
            _ => Err(Error::Parse(format!("unknown function spec `{s}`"))),
        }
    }

    /// Materializes the function. `member` refers to the standard
    /// Peter-Weyl basis of `cat`; relative sample paths resolve against `base`.
    pub fn realize<T: Real>(&self, cat: &RepCatalog<T>, default_seed: u64, base: &Path) -> Result<L2Function<T>> {
        let g = cat.group().clone();
        match self {
            Self::Zero => Ok(L2Function::zero(g)),
            Self::One => Ok(L2Function::constant(g, Complex::new(T::one(), T::zero()))),
            Self::Random { seed } => Ok(L2Function::random_seeded(g, seed.unwrap_or(default_seed))),
            Self::Member { block, i, j } => cat.peter_weyl_basis()?.block_member(block, *i, *j),
            Self::Samples(p) => read_samples(g, &base.join(p)),
        }
    }
}

fn read_samples<T: Real>(group: Arc<GroupModel<T>>, path: &Path) -> Result<L2Function<T>> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::Parse(format!("cannot open samples `{}`: {e}", path.display())))?;
    io::read_l2_csv(group, file)
}

#[derive(Clone, Debug, PartialEq)]
pub enum TestSetSpec {
    Random { count: usize, seed: Option<u64> },
    Members,
    List(Vec<FunctionSpec>),
}

impl TestSetSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "members" {
            return Ok(Self::Members);
        }
        if let Some(rest) = s.strip_prefix("random:") {
            let kv = key_values(rest)?;
            if kv.iter().any(|(k, _)| *k == "count") {
                let (mut count, mut seed) = (0usize, None);
                for (k, v) in kv {
                    match k {
                        "count" => count = parse_num(k, v)?,
                        "seed" => seed = Some(parse_num(k, v)?),
                        _ => return Err(Error::Parse(format!("unknown key `{k}` in `{s}`"))),
                    }
                }
                return Ok(Self::Random { count, seed });
            }
        }
        if s.is_empty() {
            return Ok(Self::List(Vec::new()));
        }
        Ok(Self::List(s.split(';').map(FunctionSpec::parse).collect::<Result<_>>()?))
    }

    pub fn realize<T: Real>(&self, cat: &RepCatalog<T>, default_seed: u64, base: &Path, descriptor: &str) -> Result<TestSet<T>> {
        let g = cat.group().clone();
        let functions = match self {
            Self::Random { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(default_seed));
                (0..*count).map(|k| (format!("random#{k}"), L2Function::random(g.clone(), &mut rng))).collect()
            }
            Self::Members => {
                let pw = cat.peter_weyl_basis()?;
                let mut out = Vec::with_capacity(pw.len());
                for b in pw.blocks() {
                    for i in 0..b.size {
                        for j in 0..b.size {
                            out.push((format!("member:{}:{i}:{j}", b.label), pw.member(b.member(i, j))?));
                        }
                    }
                }
                out
            }
            Self::List(specs) => specs
                .iter()
                .enumerate()
                .map(|(k, s)| Ok((format!("fn#{k}"), s.realize(cat, default_seed, base)?)))
                .collect::<Result<_>>()?,
        };
        Ok(TestSet::new(descriptor, functions))
    }
}
