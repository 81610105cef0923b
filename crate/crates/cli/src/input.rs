// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;

use permlab::harness::{corpus_entry, Params};
use permlab::matrices::MatrixJson;
use permlab::perms::SubgroupKind;
use permlab::{CMatrix, CharacterSpec, Complex64, Error, Partition, Permutation, PsdMatrix};
use serde_json::Value;

use crate::args::ParamArgs;
use crate::Failure;

const CORPUS_PREFIX: &str = "corpus:";

/// Corpus entry name when `source` is a `corpus:<name>` pseudo-path.
pub fn corpus_name(source: &str) -> Result<Option<&'static str>, Failure> {
    match source.strip_prefix(CORPUS_PREFIX) {
        None => Ok(None),
        Some(name) => corpus_entry(name)
            .map(|e| Some(e.name))
            .ok_or_else(|| Failure::Parse(format!("unknown corpus entry '{name}'"))),
    }
}

pub fn load_json(source: &str) -> Result<MatrixJson, Failure> {
    if let Some(name) = corpus_name(source)? {
        return Ok(corpus_entry(name).expect("checked").matrix_json());
    }
    let text = fs::read_to_string(source).map_err(|e| Failure::Parse(format!("{source}: {e}")))?;
    MatrixJson::parse(&text).map_err(|e| Failure::Parse(format!("{source}: {e}")))
}

pub fn load_matrix(source: &str) -> Result<CMatrix, Failure> {
    Ok(load_json(source)?.to_matrix()?)
}

pub fn load_psd(source: &str) -> Result<PsdMatrix, Failure> {
    Ok(load_json(source)?.to_psd()?)
}

pub fn parse_partition(text: &str) -> Result<Partition, Failure> {
    text.parse::<Partition>().map_err(|e| Failure::Parse(e.to_string()))
}

fn parse_sizes(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| Failure::Parse(format!("'{text}': {e}"))))
        .collect()
}

fn complex_of(v: &Value) -> Option<Complex64> {
    match v {
        Value::Number(x) => Some(Complex64::new(x.as_f64()?, 0.0)),
        Value::Array(p) if p.len() == 2 => Some(Complex64::new(p[0].as_f64()?, p[1].as_f64()?)),
        _ => None,
    }
}

/// `{"n": 4, "elements": [[0,1,2,3], ...], "values": [[1,0], ...]}` with
/// elements in 0-based one-line notation.
fn character_from_file(path: &str) -> Result<CharacterSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
    let bad = || Failure::Parse(format!("{path}: expected n, elements and values"));
    let n = v["n"].as_u64().ok_or_else(bad)? as usize;
    let elements = v["elements"]
        .as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|e| {
            let images: Vec<usize> = e
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?;
            Ok(Permutation::from_images(images)?)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let values = v["values"]
        .as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|x| complex_of(x).ok_or_else(bad))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CharacterSpec::new(n, elements, values)?)
}

/// Character named on the command line, for matrices of order `n`.
pub fn parse_character(text: &str, n: usize) -> Result<CharacterSpec, Failure> {
    let kind = match text.split_once(':') {
        Some(("irreducible" | "sn", p)) => SubgroupKind::FullSn(parse_partition(p)?),
        Some(("young", sizes)) => SubgroupKind::Young(parse_sizes(sizes)?),
        None if text == "trivial" => SubgroupKind::Trivial(n),
        None if text == "a4-james" => SubgroupKind::A4James,
        _ if Path::new(text).is_file() => return character_from_file(text),
        _ => return Err(Failure::Parse(format!("unknown character '{text}'"))),
    };
    let spec = CharacterSpec::from_kind(&kind)?;
    if spec.n() != n {
        return Err(Failure::Precondition(Error::SizeMismatch(format!(
            "character acts on {} points but the matrix has order {n}",
            spec.n()
        ))));
    }
    Ok(spec)
}

pub fn build_params(args: &ParamArgs, n: usize) -> Result<Params, Failure> {
    Ok(Params {
        b: args.with.as_deref().map(load_psd).transpose()?,
        block: args.block,
        k: args.k,
        character: args.character.as_deref().map(|c| parse_character(c, n)).transpose()?,
        partition: args.partition.as_deref().map(parse_partition).transpose()?,
        alpha: args.alpha,
        t: args.t,
        c_function: None,
    })
}
