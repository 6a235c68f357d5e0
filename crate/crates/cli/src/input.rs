use std::io::Read;

use anyhow::{Context, Result};
use betti_split::{corpus, format, Field, MonomialIdeal, SimplicialComplex};

use crate::FieldArgs;

fn read_text(input: &str) -> Result<String> {
    if input == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        return Ok(text);
    }
    std::fs::read_to_string(input).with_context(|| format!("reading {input}"))
}

/// Loads a complex from a file, stdin (`-`) or `corpus:<name>`.
pub fn load_complex(input: &str) -> Result<SimplicialComplex> {
    if let Some(name) = input.strip_prefix("corpus:") {
        return Ok(corpus::load(name)?.complex);
    }
    let text = read_text(input)?;
    format::parse_complex_auto(&text).with_context(|| format!("parsing {input}"))
}

pub fn load_ideal(input: &str) -> Result<MonomialIdeal> {
    let text = read_text(input)?;
    format::parse_ideal(&text).with_context(|| format!("parsing {input}"))
}

pub fn fields(args: &FieldArgs) -> Result<Vec<Field>> {
    let mut out: Vec<Field> = Vec::new();
    for raw in &args.fields {
        let field: Field = raw.parse()?;
        if !out.contains(&field) {
            out.push(field);
        }
    }
    Ok(out)
}
