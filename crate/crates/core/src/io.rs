//! CSV and JSON import/export. CSV numbers use 17 significant digits,
//! `,` separators and `\n` line endings.

use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::catalog::{IrrepLabel, RepCatalog};
use crate::error::{Error, Result};
use crate::groups::GroupModel;
use crate::hilbert::{ExpansionWeights, L2Function};
use crate::iwasawa::LiftedFamily;
use crate::linalg::Mat;
use crate::peter_weyl::FourierCoefficients;
use crate::prime_parseval::MatrixSequence;
use crate::scalar::{C, Real};
use crate::semicomplete::SemicompletenessReport;

/// Full-precision decimal: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_real<T: Real>(x: T) -> String {
    fmt_f64(x.to_f64_lossy())
}

pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

/// Writes `bytes` to `path` through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp"));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// `node,re,im`.
pub fn write_l2_csv<T: Real, W: Write>(f: &L2Function<T>, w: W) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["node", "re", "im"])?;
    for (k, v) in f.values().iter().enumerate() {
        out.write_record([k.to_string(), fmt_real(v.re), fmt_real(v.im)])?;
    }
    out.flush()?;
    Ok(())
}

/// Reads `node,re,im` rows; every node must appear exactly once.
pub fn read_l2_csv<T: Real, R: Read>(group: Arc<GroupModel<T>>, r: R) -> Result<L2Function<T>> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let n = group.len();
    let mut values: Vec<Option<C<T>>> = vec![None; n];
    for rec in rd.records() {
        let rec = rec?;
        if rec.len() < 3 {
            return Err(Error::Parse(format!("expected node,re,im; got {} fields", rec.len())));
        }
        let k: usize = rec[0].parse().map_err(|_| Error::Parse(format!("bad node index `{}`", &rec[0])))?;
        let re: f64 = rec[1].parse().map_err(|_| Error::Parse(format!("bad real part `{}`", &rec[1])))?;
        let im: f64 = rec[2].parse().map_err(|_| Error::Parse(format!("bad imaginary part `{}`", &rec[2])))?;
        let slot = values.get_mut(k).ok_or_else(|| Error::IndexOutOfRange(format!("node {k} of {n}")))?;
        if slot.is_some() {
            return Err(Error::Parse(format!("node {k} listed twice")));
        }
        *slot = Some(Complex::new(T::of(re), T::of(im)));
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(k, v)| v.ok_or_else(|| Error::Parse(format!("node {k} missing"))))
        .collect::<Result<Vec<_>>>()?;
    L2Function::new(group, values)
}

/// `[{label, degree, magnitude}, ...]`.
pub fn catalog_json<T: Real>(cat: &RepCatalog<T>) -> Value {
    Value::Array(
        cat.labels()
            .iter()
            .map(|l| json!({"label": l.to_string(), "degree": l.degree, "magnitude": l.magnitude()}))
            .collect(),
    )
}

/// `node,i,j,re,im` for every entry of `u^label` on the grid.
pub fn write_coefficient_grid_csv<T: Real, W: Write>(cat: &RepCatalog<T>, label: &IrrepLabel, w: W) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["node", "i", "j", "re", "im"])?;
    for k in 0..cat.group().len() {
        for i in 0..label.degree {
            for j in 0..label.degree {
                let v = cat.coefficient_grid(label, i, j)?[k];
                out.write_record([k.to_string(), i.to_string(), j.to_string(), fmt_real(v.re), fmt_real(v.im)])?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn write_blocks_csv<T: Real, W: Write>(head: &str, blocks: impl Iterator<Item = (String, Mat<T>)>, w: W) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record([head, "i", "j", "re", "im"])?;
    for (label, m) in blocks {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m[(i, j)];
                out.write_record([label.clone(), i.to_string(), j.to_string(), fmt_real(v.re), fmt_real(v.im)])?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// `label,i,j,re,im`.
pub fn write_fourier_csv<T: Real, W: Write>(fhat: &FourierCoefficients<T>, w: W) -> Result<()> {
    write_blocks_csv("label", fhat.blocks.iter().map(|(l, m)| (l.to_string(), m.clone())), w)
}

pub fn fourier_summary_json<T: Real>(fhat: &FourierCoefficients<T>) -> Value {
    json!({
        "plancherel_sum": fhat.plancherel_sum().to_f64_lossy(),
        "blocks": fhat.hs_norms().iter().map(|(l, n)| json!({
            "label": l.to_string(),
            "degree": l.degree,
            "hs_norm": n.to_f64_lossy(),
        })).collect::<Vec<_>>(),
    })
}

/// `block,i,j,re,im`.
pub fn write_matrix_sequence_csv<T: Real, W: Write>(phi: &MatrixSequence<T>, w: W) -> Result<()> {
    write_blocks_csv("block", phi.blocks.iter().cloned(), w)
}

pub fn matrix_sequence_summary_json<T: Real>(phi: &MatrixSequence<T>) -> Value {
    json!({
        "norm_sq": phi.norm_sqr().to_f64_lossy(),
        "blocks": phi.blocks.iter().map(|(l, m)| json!({
            "block": l,
            "size": m.rows(),
            "hs_norm_sq": m.norm_sqr().to_f64_lossy(),
        })).collect::<Vec<_>>(),
    })
}

/// SHA-256 over `n`, then `gamma` and row-major `beta` as little-endian
/// `(re, im)` f64 pairs.
pub fn weights_hash<T: Real>(w: &ExpansionWeights<T>) -> String {
    let mut h = Sha256::new();
    h.update((w.n() as u64).to_le_bytes());
    let mut push = |z: &C<T>| {
        h.update(z.re.to_f64_lossy().to_le_bytes());
        h.update(z.im.to_f64_lossy().to_le_bytes());
    };
    w.gamma().iter().for_each(&mut push);
    w.beta().as_slice().iter().for_each(&mut push);
    hex::encode(h.finalize())
}

/// `kind,i,j,re,im` with kind `gamma` (j ignored) or `beta`.
pub fn read_weights_csv<T: Real, R: Read>(r: R) -> Result<ExpansionWeights<T>> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let mut gamma: Vec<(usize, C<T>)> = Vec::new();
    let mut beta: Vec<(usize, usize, C<T>)> = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        if rec.len() < 5 {
            return Err(Error::Parse("expected kind,i,j,re,im".into()));
        }
        let p = |k: usize| -> Result<f64> { rec[k].parse().map_err(|_| Error::Parse(format!("bad number `{}`", &rec[k]))) };
        let i: usize = rec[1].parse().map_err(|_| Error::Parse(format!("bad index `{}`", &rec[1])))?;
        let j: usize = if rec[2].is_empty() { 0 } else { rec[2].parse().map_err(|_| Error::Parse(format!("bad index `{}`", &rec[2])))? };
        let z = Complex::new(T::of(p(3)?), T::of(p(4)?));
        match &rec[0] {
            "gamma" => gamma.push((i, z)),
            "beta" => beta.push((i, j, z)),
            other => return Err(Error::Parse(format!("unknown weight kind `{other}`"))),
        }
    }
    let n = gamma.len();
    let zero = Complex::new(T::zero(), T::zero());
    let mut g = vec![zero; n];
    for (i, z) in gamma {
        *g.get_mut(i).ok_or_else(|| Error::IndexOutOfRange(format!("gamma[{i}] with n = {n}")))? = z;
    }
    let mut b = Mat::zeros(n, n);
    for (i, j, z) in beta {
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange(format!("beta[{i}][{j}] with n = {n}")));
        }
        b[(i, j)] = z;
    }
    ExpansionWeights::new(g, b)
}

pub fn report_json<T: Real>(report: &SemicompletenessReport<T>) -> Value {
    let d = &report.weight_diagnostic;
    json!({
        "epsilon": report.epsilon,
        "weights_hash": weights_hash(&report.weights),
        "test_set": report.test_set,
        "per_function": report.per_function.iter().map(|p| json!({
            "fn": p.name,
            "defect": p.defect.to_f64_lossy(),
        })).collect::<Vec<_>>(),
        "max_defect": report.max_defect.to_f64_lossy(),
        "within_epsilon": report.within_epsilon(),
        "weight_violations": {
            "diagonal": d.diagonal_violations.iter().map(|(i, r)| json!({"i": i, "residual": r})).collect::<Vec<_>>(),
            "zero_entries": d.zero_entries,
        },
    })
}

/// `fn,defect`.
pub fn write_report_csv<T: Real, W: Write>(report: &SemicompletenessReport<T>, w: W) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["fn", "defect"])?;
    for p in &report.per_function {
        out.write_record([p.name.clone(), fmt_real(p.defect)])?;
    }
    out.flush()?;
    Ok(())
}

/// `member,k,a_index,n_index,re,im` over the product grid.
pub fn write_lifted_csv<T: Real, W: Write>(lifted: &LiftedFamily<T>, w: W) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["member", "k", "a_index", "n_index", "re", "im"])?;
    let model = lifted.model();
    let nn = model.n_axis().len();
    let an = model.an_len();
    for m in 0..lifted.len() {
        for (idx, v) in lifted.member_values(m).iter().enumerate() {
            let (k, p) = (idx / an, idx % an);
            out.write_record([
                m.to_string(),
                k.to_string(),
                (p / nn).to_string(),
                (p % nn).to_string(),
                fmt_real(v.re),
                fmt_real(v.im),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// `a_index,n_index,re,im` rows for a profile table on an `a_len x n_len` grid.
pub fn read_profile_csv<R: Read>(r: R, a_len: usize, n_len: usize) -> Result<Vec<Complex<f64>>> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let mut values: Vec<Option<Complex<f64>>> = vec![None; a_len * n_len];
    for rec in rd.records() {
        let rec = rec?;
        if rec.len() < 4 {
            return Err(Error::Parse("expected a_index,n_index,re,im".into()));
        }
        let num = |k: usize| -> Result<f64> { rec[k].parse().map_err(|_| Error::Parse(format!("bad number `{}`", &rec[k]))) };
        let ia: usize = rec[0].parse().map_err(|_| Error::Parse(format!("bad index `{}`", &rec[0])))?;
        let inn: usize = rec[1].parse().map_err(|_| Error::Parse(format!("bad index `{}`", &rec[1])))?;
        if ia >= a_len || inn >= n_len {
            return Err(Error::IndexOutOfRange(format!("profile node ({ia}, {inn})")));
        }
        values[ia * n_len + inn] = Some(Complex::new(num(2)?, num(3)?));
    }
    values
        .into_iter()
        .enumerate()
        .map(|(k, v)| v.ok_or_else(|| Error::Parse(format!("profile node ({}, {}) missing", k / n_len, k % n_len))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_group;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        let x = std::f64::consts::PI;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn l2_csv_round_trip() {
        let g = Arc::new(make_group::<f64>("sym:3").unwrap());
        let f = L2Function::random_seeded(g.clone(), 4);
        let mut buf = Vec::new();
        write_l2_csv(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("node,re,im\n0,"));
        assert!(!text.contains('\r'));
        let back = read_l2_csv(g, buf.as_slice()).unwrap();
        assert_eq!(back.values(), f.values());
    }

    #[test]
    fn l2_csv_rejects_missing_and_duplicate_nodes() {
        let g = Arc::new(make_group::<f64>("zn:3").unwrap());
        assert!(read_l2_csv(g.clone(), "node,re,im\n0,1,0\n1,0,0\n".as_bytes()).is_err());
        assert!(read_l2_csv(g.clone(), "node,re,im\n0,1,0\n0,0,0\n2,0,0\n".as_bytes()).is_err());
        assert!(read_l2_csv(g, "node,re,im\n0,1,0\n1,0,0\n7,0,0\n".as_bytes()).is_err());
    }

    #[test]
    fn weights_csv_and_hash() {
        let text = "kind,i,j,re,im\ngamma,0,,2,0\ngamma,1,,1,0\nbeta,0,0,0.5,0\nbeta,0,1,1,0\nbeta,1,0,1,0\nbeta,1,1,1,0\n";
        let w = read_weights_csv::<f64, _>(text.as_bytes()).unwrap();
        assert_eq!(w.n(), 2);
        assert_eq!(w.beta()[(0, 0)], Complex::new(0.5, 0.0));
        let h1 = weights_hash(&w);
        assert_eq!(h1.len(), 64);
        assert_eq!(h1, weights_hash(&w.clone()));
        assert_ne!(h1, weights_hash(&ExpansionWeights::<f64>::unit(2).unwrap()));
    }
}
