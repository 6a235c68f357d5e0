use std::time::Instant;

use anyhow::{bail, Result};
use betti_split::enumerate::{self, Kind, SampleMode, ScanOptions};
use betti_split::hochster::{alexander_dual_ideal, complex_from_ideal, graded_betti};
use betti_split::homology::reduced_betti_all;
use betti_split::splitting::{self, essential_facets, orientability};
use betti_split::{corpus, format, Face, Mode, SimplicialComplex, StandardDecomposition};
use serde_json::{json, Value};

use crate::input::{fields, load_complex, load_ideal};
use crate::{CheckMode, FieldArgs, Format, Goal, ProbKind};

/// Version of the JSON report layout.
const SCHEMA: u32 = 1;

pub struct Output {
    format: Format,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output { format }
    }

    fn json(&self) -> bool {
        self.format == Format::Json
    }

    /// Prints one report: a JSON line or the given text.
    fn emit(&self, command: &str, mut value: Value, text: impl FnOnce() -> String) {
        if self.json() {
            if let Value::Object(map) = &mut value {
                map.insert("schema".into(), json!(SCHEMA));
                map.insert("command".into(), json!(command));
            }
            println!("{value}");
        } else {
            print!("{}", text());
        }
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn faces_text(faces: &[Face]) -> String {
    if faces.is_empty() {
        "(none)".into()
    } else {
        join(faces)
    }
}

fn decomposition_json(complex: &SimplicialComplex, d: &StandardDecomposition) -> Value {
    json!({
        "part1": d.part1_indices(),
        "part2": d.part2_indices(),
        "part1_facets": d.part1_facets(complex).unwrap_or_default(),
        "part2_facets": d.part2_facets(complex).unwrap_or_default(),
    })
}

fn decomposition_text(complex: &SimplicialComplex, d: &StandardDecomposition) -> String {
    format!(
        "{} | {}",
        faces_text(&d.part1_facets(complex).unwrap_or_default()),
        faces_text(&d.part2_facets(complex).unwrap_or_default())
    )
}

pub fn homology(out: &Output, input: &str, args: &FieldArgs) -> Result<bool> {
    let complex = load_complex(input)?;
    let f = complex.f_vector();
    for field in fields(args)? {
        let betti = reduced_betti_all(&complex, field);
        out.emit(
            "homology",
            json!({"field": field, "n": complex.n(), "dim": complex.dim(), "f_vector": f, "reduced_betti": betti}),
            || {
                format!(
                    "field {field}\nf-vector (from f_-1): {}\nreduced betti (from k = -1): {}\n",
                    join(&f),
                    join(betti.as_slice())
                )
            },
        );
    }
    Ok(true)
}

pub fn betti(out: &Output, input: &str, args: &FieldArgs, multigraded: bool) -> Result<bool> {
    let complex = load_complex(input)?;
    let ideal = alexander_dual_ideal(&complex)?;
    for field in fields(args)? {
        let table = graded_betti(&complex, field);
        let multi: Vec<Value> = table
            .multigraded_entries()
            .map(|(i, face, value)| json!({"i": i, "support": face.complement(complex.n()), "value": value}))
            .collect();
        let mut value = json!({
            "field": field,
            "n": complex.n(),
            "ideal": ideal.to_string(),
            "entries": table.entries(),
        });
        if multigraded {
            value["multigraded"] = json!(multi);
        }
        out.emit("betti", value, || {
            let mut text = format!("field {field}\nideal {ideal}\n{}", table.to_text());
            if multigraded {
                for (i, face, v) in table.multigraded_entries() {
                    text.push_str(&format!(
                        "  i={i} support {} : {v}\n",
                        face.complement(complex.n())
                    ));
                }
            }
            text
        });
    }
    Ok(true)
}

pub fn dualize(out: &Output, input: &str, from_ideal: bool) -> Result<bool> {
    if from_ideal {
        let ideal = load_ideal(input)?;
        let complex = complex_from_ideal(&ideal)?;
        out.emit(
            "dualize",
            json!({"complex": format::complex_to_json(&complex)}),
            || format::write_complex(&complex),
        );
    } else {
        let complex = load_complex(input)?;
        let ideal = alexander_dual_ideal(&complex)?;
        let gens: Vec<Vec<usize>> = ideal
            .generators()
            .iter()
            .map(|g| g.vertices().collect())
            .collect();
        out.emit(
            "dualize",
            json!({"ideal": {"n": ideal.n(), "generators": gens}}),
            || format::write_ideal(&ideal),
        );
    }
    Ok(true)
}

pub fn check(
    out: &Output,
    input: &str,
    split: &[usize],
    mode: CheckMode,
    args: &FieldArgs,
) -> Result<bool> {
    let complex = load_complex(input)?;
    let decomposition = StandardDecomposition::from_indices(&complex, split)?;
    let mode = match mode {
        CheckMode::Hom => Mode::Homology,
        CheckMode::Betti => Mode::BettiDirect,
        CheckMode::BettiRecursive => Mode::BettiRecursive,
        CheckMode::Mv => Mode::MayerVietoris,
    };
    let mut all = true;
    for field in fields(args)? {
        let report = splitting::check(&complex, &decomposition, field, mode)?;
        all &= report.verdict;
        out.emit(
            "check",
            json!({
                "field": field,
                "mode": report.mode,
                "decomposition": decomposition_json(&complex, &decomposition),
                "verdict": if report.verdict { "yes" } else { "no" },
                "trivial_intersection": report.trivial_intersection,
                "witness": report.witness,
            }),
            || {
                let mut text = format!(
                    "field {field} mode {mode}\ndecomposition {}\nverdict {}\n",
                    decomposition_text(&complex, &decomposition),
                    if report.verdict { "yes" } else { "no" }
                );
                if let Some(w) = &report.witness {
                    text.push_str(&format!("witness {w}\n"));
                }
                text
            },
        );
    }
    Ok(all)
}

pub fn essential(out: &Output, input: &str, args: &FieldArgs) -> Result<bool> {
    let complex = load_complex(input)?;
    let pure = complex.is_pure();
    for field in fields(args)? {
        let facets = essential_facets(&complex, field);
        out.emit(
            "essential",
            json!({"field": field, "dim": complex.dim(), "pure": pure, "count": facets.len(), "facets": facets}),
            || {
                let mut text = format!(
                    "field {field}\nessential facets of dimension {} ({} of {}): {}\n",
                    complex.dim(),
                    facets.len(),
                    complex.facet_count(),
                    faces_text(&facets)
                );
                if !pure {
                    text.push_str("note: complex is not pure; lower-dimensional facets are not listed\n");
                }
                text
            },
        );
    }
    Ok(true)
}

pub fn orient(out: &Output, input: &str) -> Result<bool> {
    let complex = load_complex(input)?;
    let verdict = orientability(&complex);
    let violation = complex.pseudomanifold_violation().map(|v| format!("{v:?}"));
    out.emit(
        "orient",
        json!({"orientability": verdict, "pseudomanifold_violation": violation}),
        || {
            let mut text = format!("{verdict}\n");
            if let Some(v) = &violation {
                text.push_str(&format!("not a closed pseudomanifold: {v}\n"));
            }
            text
        },
    );
    Ok(true)
}

pub fn enumerate(
    out: &Output,
    input: &str,
    goal: Goal,
    args: &FieldArgs,
    budget: usize,
    prune: bool,
) -> Result<bool> {
    let complex = load_complex(input)?;
    let total = enumerate::decompositions(&complex)?.count() as u64;
    let mut all = true;
    for field in fields(args)? {
        let start = Instant::now();
        let (witness, scanned, pruned) = match goal {
            Goal::Trivial => {
                let r = enumerate::is_trivially_decomposable(&complex, field)?;
                (r.witness, r.scanned, false)
            }
            Goal::Hom => {
                if complex.facet_count() > budget {
                    bail!(
                        "{} facets exceed the budget of {budget}",
                        complex.facet_count()
                    );
                }
                let found = enumerate::decompositions(&complex)?.position(|d| {
                    splitting::is_homology_splitting(&complex, &d, field)
                        .map(|r| r.verdict)
                        .unwrap_or(false)
                });
                let scanned = found.map_or(total, |k| k as u64 + 1);
                let witness = found.and_then(|k| enumerate::decompositions(&complex).ok()?.nth(k));
                (witness, scanned, false)
            }
            Goal::Betti => {
                let r = enumerate::admits_betti_splitting(
                    &complex,
                    field,
                    ScanOptions { budget, prune },
                )?;
                (r.witness, r.checked, r.pruned)
            }
        };
        let elapsed = start.elapsed().as_secs_f64();
        all &= witness.is_some();
        let goal_name = match goal {
            Goal::Trivial => "trivial",
            Goal::Hom => "hom",
            Goal::Betti => "betti",
        };
        out.emit(
            "enumerate",
            json!({
                "field": field,
                "goal": goal_name,
                "decompositions": total,
                "scanned": scanned,
                "pruned": pruned,
                "witness": witness.map(|d| decomposition_json(&complex, &d)),
                "seconds": elapsed,
            }),
            || match &witness {
                Some(d) => format!(
                    "field {field} goal {goal_name}\nwitness {}\nscanned {scanned} of {total} in {elapsed:.3}s\n",
                    decomposition_text(&complex, d)
                ),
                None => format!(
                    "field {field} goal {goal_name}\nnone\nscanned {scanned} of {total}{} in {elapsed:.3}s\n",
                    if pruned { " (settled by the trivially-decomposable scan)" } else { "" }
                ),
            },
        );
    }
    Ok(all)
}

pub fn prob(
    out: &Output,
    input: &str,
    kind: ProbKind,
    sample: Option<u64>,
    seed: u64,
    budget: usize,
    args: &FieldArgs,
) -> Result<bool> {
    let complex = load_complex(input)?;
    let kind = match kind {
        ProbKind::Betti => Kind::Betti,
        ProbKind::Hom => Kind::Homology,
        ProbKind::Facet => Kind::Facet,
    };
    let mode = match sample {
        Some(size) => SampleMode::Sampled { size, seed },
        None => SampleMode::Exact,
    };
    for field in fields(args)? {
        let start = Instant::now();
        let report = enumerate::splitting_probability(&complex, field, kind, mode, budget)?;
        let elapsed = start.elapsed().as_secs_f64();
        let mut value = serde_json::to_value(&report)?;
        value["value"] = json!(report.as_f64());
        value["seconds"] = json!(elapsed);
        out.emit("prob", value, || {
            format!(
                "field {field} kind {kind}\n{} / {} = {} ({:.6})\n",
                report.hits,
                report.total,
                report.ratio,
                report.as_f64()
            )
        });
    }
    Ok(true)
}

pub fn corpus_list(out: &Output) -> Result<bool> {
    for name in corpus::list() {
        let entry = corpus::load(name)?;
        let c = &entry.complex;
        out.emit(
            "corpus",
            json!({"name": name, "description": entry.description, "n": c.n(), "facets": c.facet_count(), "dim": c.dim()}),
            || format!("{name:<16} n={:<3} facets={:<3} {}\n", c.n(), c.facet_count(), entry.description),
        );
    }
    Ok(true)
}

pub fn corpus_show(out: &Output, name: &str) -> Result<bool> {
    let entry = corpus::load(name)?;
    let e = &entry.expected;
    out.emit(
        "corpus",
        json!({"name": entry.name, "description": entry.description, "expected": e}),
        || {
            let mut text = format!(
                "{} ({})\nvertices {} facets {}\nf-vector {}\n",
                entry.name,
                entry.description,
                e.vertices,
                e.facets,
                join(&e.f_vector)
            );
            for (field, betti) in &e.betti {
                text.push_str(&format!(
                    "reduced betti over {field}: {}\n",
                    join(betti.as_slice())
                ));
            }
            text.push_str(&format!(
                "closed pseudomanifold {}\norientability {}\n",
                e.closed_pseudomanifold, e.orientability
            ));
            text
        },
    );
    Ok(true)
}

pub fn corpus_dump(out: &Output, name: &str) -> Result<bool> {
    let entry = corpus::load(name)?;
    out.emit("corpus", format::complex_to_json(&entry.complex), || {
        format::write_complex(&entry.complex)
    });
    Ok(true)
}
