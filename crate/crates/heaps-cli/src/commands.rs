//! Subcommand implementations: load the graph, run the library, render the
//! report deterministically.

use std::fmt::Write as _;
use std::fs;

use num_bigint::BigInt;

use heaps::chromatic::{
    chromatic_coefficient, chromatic_via_racks, unique_source_count, unique_source_partition_count,
};
use heaps::graph::parse_edge_list;
use heaps::orient::{acyclic_orientations, enumerate_orientations};
use heaps::rack::{enumerate_racks, parse_layers, rack_counts, Rack};
use heaps::verify::{run_identities, VerifyOptions};
use heaps::{Graph, Heap, IntPolynomial, Limits};

use crate::report::*;
use crate::{Command, CommonArgs, Failure};

pub fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Chromatic { common } => chromatic(&common),
        Command::Orientations { common } => orientations(&common),
        Command::Racks { common, heap } => racks(&common, &heap),
        Command::Involute { common, heap, rack } => involute(&common, &heap, &rack),
        Command::Coeffs { common } => coeffs(&common),
        Command::Verify {
            common,
            lambda_max,
            expect,
        } => verify(&common, lambda_max, expect.as_deref()),
    }
}

fn load(common: &CommonArgs) -> Result<(Graph, Limits), Failure> {
    let text = fs::read_to_string(&common.input).map_err(|e| Failure::io(&common.input, e))?;
    let mut graph = parse_edge_list(&text)?;
    if let Some(order_text) = &common.order {
        let perm: Vec<usize> = order_text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Failure::argument(format!("bad vertex id {tok:?} in --order")))
            })
            .collect::<Result<_, _>>()?;
        graph = graph.with_order(&perm)?;
    }
    let mut limits = Limits::default();
    if let Some(max_n) = common.max_n {
        limits.max_n = max_n;
    }
    Ok((graph, limits))
}

fn summary(g: &Graph) -> GraphSummary {
    GraphSummary { n: g.n(), m: g.m() }
}

fn big_to_u64(value: &BigInt) -> u64 {
    u64::try_from(value).expect("guarded count fits in u64")
}

fn big_to_i128(value: &BigInt) -> i128 {
    i128::try_from(value).expect("desk-scale coefficient fits in i128")
}

fn chromatic(common: &CommonArgs) -> Result<String, Failure> {
    let (g, limits) = load(common)?;
    let chi = chromatic_via_racks(&g, &limits)?;
    if common.json {
        let mut line = chi.to_json();
        line.push('\n');
        return Ok(line);
    }
    let mut out = format!("graph: n={} m={}\n", g.n(), g.m());
    writeln!(out, "chromatic: {chi}").unwrap();
    writeln!(out, "coeffs: {}", chi.to_json()).unwrap();
    Ok(out)
}

fn orientations(common: &CommonArgs) -> Result<String, Failure> {
    let (g, limits) = load(common)?;
    let all = enumerate_orientations(&g, &limits)?;
    let acyclic = acyclic_orientations(&g, &limits)?;
    let unique_source_counts: Vec<u64> = (0..g.n())
        .map(|v| unique_source_count(&g, v, &limits).map(|c| big_to_u64(&c)))
        .collect::<Result<_, _>>()?;
    let report = OrientationsReport {
        graph: summary(&g),
        orientations: all.len() as u64,
        acyclic: acyclic.len() as u64,
        unique_source_counts,
    };
    if common.json {
        return Ok(to_json_line(&report));
    }
    let mut out = format!("graph: n={} m={}\n", g.n(), g.m());
    writeln!(out, "orientations: {}", report.orientations).unwrap();
    writeln!(out, "acyclic: {}", report.acyclic).unwrap();
    let per_vertex = report
        .unique_source_counts
        .iter()
        .enumerate()
        .map(|(v, c)| format!("v{v}={c}"))
        .collect::<Vec<_>>()
        .join(" ");
    writeln!(out, "unique-source counts: {per_vertex}").unwrap();
    Ok(out)
}

fn parse_heap_arg(g: &Graph, word_text: &str) -> Result<Heap, Failure> {
    let word = heaps::heap::parse_word(word_text)?;
    Ok(Heap::from_word(g, &word)?)
}

fn racks(common: &CommonArgs, heap_text: &str) -> Result<String, Failure> {
    let (g, limits) = load(common)?;
    let heap = parse_heap_arg(&g, heap_text)?;
    let all = enumerate_racks(&heap, &limits)?;
    let beta = rack_counts(&heap, &limits)?;
    let entries: Vec<RackEntry> = all
        .iter()
        .enumerate()
        .map(|(index, rack)| {
            let image_rack = rack.involute();
            let image = all
                .iter()
                .position(|r| r == &image_rack)
                .expect("involution image is a rack of the same heap");
            RackEntry {
                index,
                rack: rack.to_string(),
                image,
                fixed: image == index,
            }
        })
        .collect();
    let report = RacksReport {
        graph: summary(&g),
        heap: heap.to_string(),
        count: all.len() as u64,
        beta,
        racks: entries,
    };
    if common.json {
        return Ok(to_json_line(&report));
    }
    let mut out = format!("graph: n={} m={}\n", g.n(), g.m());
    writeln!(out, "heap: {}", report.heap).unwrap();
    writeln!(out, "racks: {}", report.count).unwrap();
    let histogram = report
        .beta
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, c)| format!("{k}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    writeln!(out, "racks by layer count: {histogram}").unwrap();
    writeln!(out, "involution pairing:").unwrap();
    for entry in &report.racks {
        if entry.fixed {
            writeln!(out, "  {}: {}  -> fixed point", entry.index, entry.rack).unwrap();
        } else {
            writeln!(out, "  {}: {}  -> {}", entry.index, entry.rack, entry.image).unwrap();
        }
    }
    Ok(out)
}

fn involute(common: &CommonArgs, heap_text: &str, rack_text: &str) -> Result<String, Failure> {
    let (g, _limits) = load(common)?;
    let heap = parse_heap_arg(&g, heap_text)?;
    let layers = parse_layers(rack_text)?;
    let rack = Rack::new(heap.clone(), layers)?;
    let transfer = rack.transfer_piece();
    let output = rack.involute();
    let report = InvoluteReport {
        graph: summary(&g),
        heap: heap.to_string(),
        input_rack: rack.to_string(),
        fixed_point: transfer.is_none(),
        transfer_piece: transfer.map(|tp| TransferReport {
            vertex: tp.vertex,
            occurrence: tp.occurrence,
            number: tp.number,
            lonely: tp.lonely,
            layer: tp.layer,
        }),
        output_rack: output.to_string(),
    };
    if common.json {
        return Ok(to_json_line(&report));
    }
    let mut out = format!("graph: n={} m={}\n", g.n(), g.m());
    writeln!(out, "heap: {}", report.heap).unwrap();
    writeln!(out, "input rack: {}", report.input_rack).unwrap();
    match &report.transfer_piece {
        None => writeln!(out, "fixed point (empty transfer set)").unwrap(),
        Some(tp) => writeln!(
            out,
            "transfer piece: vertex={} occurrence={} number={} lonely={} layer={}",
            tp.vertex, tp.occurrence, tp.number, tp.lonely, tp.layer
        )
        .unwrap(),
    }
    writeln!(out, "output rack: {}", report.output_rack).unwrap();
    Ok(out)
}

fn coeffs(common: &CommonArgs) -> Result<String, Failure> {
    let (g, limits) = load(common)?;
    let oracle = g.chromatic_oracle(&limits)?;
    let rows: Vec<CoeffRow> = (0..=g.n())
        .map(|r| -> Result<CoeffRow, Failure> {
            let a = chromatic_coefficient(&g, r, &limits)?;
            let partition_count = if r >= 1 {
                Some(big_to_i128(&unique_source_partition_count(&g, r, &limits)?))
            } else {
                None
            };
            Ok(CoeffRow {
                r,
                a: big_to_i128(&a),
                oracle: big_to_i128(&oracle.coeff(r)),
                partition_count,
            })
        })
        .collect::<Result<_, _>>()?;
    let report = CoeffsReport {
        graph: summary(&g),
        chromatic: oracle.to_string(),
        rows,
    };
    if common.json {
        return Ok(to_json_line(&report));
    }
    let mut out = format!("graph: n={} m={}\n", g.n(), g.m());
    writeln!(out, "chromatic: {}", report.chromatic).unwrap();
    writeln!(
        out,
        "{:>3} {:>12} {:>12} {:>12}",
        "r", "a_r", "oracle", "partitions"
    )
    .unwrap();
    for row in &report.rows {
        let partition_count = row
            .partition_count
            .map(|c| c.to_string())
            .unwrap_or_else(|| "-".to_string());
        writeln!(
            out,
            "{:>3} {:>12} {:>12} {:>12}",
            row.r, row.a, row.oracle, partition_count
        )
        .unwrap();
    }
    Ok(out)
}

fn verify(
    common: &CommonArgs,
    lambda_max: u64,
    expect: Option<&std::path::Path>,
) -> Result<String, Failure> {
    let (g, limits) = load(common)?;
    let expected_chromatic = match expect {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
            Some(IntPolynomial::from_json(&text)?)
        }
        None => None,
    };
    let opts = VerifyOptions {
        lambda_max,
        expected_chromatic,
    };
    let identities = run_identities(&g, &limits, &opts)?;
    let all_pass = identities.iter().all(|c| c.passed);
    let report = VerifyReport {
        graph: summary(&g),
        lambda_max,
        identities,
        all_pass,
    };
    let rendered = if common.json {
        to_json_line(&report)
    } else {
        render_verify_text(&report)
    };
    if all_pass {
        Ok(rendered)
    } else {
        Err(Failure::verification(rendered))
    }
}
