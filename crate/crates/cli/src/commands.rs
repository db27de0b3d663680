use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use charnet_core::analytics::{all_centralities, louvain, CentralityScores, Measure};
use charnet_core::extract::{extract_pipeline, AliasTable, WindowConfig};
use charnet_core::features::{feature_vector, laplacian_spectrum, spectral_histogram, FeatureMode, HISTOGRAM_NAMES};
use charnet_core::genmodels::{generate_batch, match_parameters};
use charnet_core::graph::{global_stats, load_edge_csv, load_edge_list, write_edge_csv, write_gexf, write_node_csv};
use charnet_core::learn::{select_model, ClassifierKind, SelectConfig};
use charnet_core::{Error, Graph, GraphStats, ModelKind, Seed};

use crate::error::CliError;

const TOP_ROWS: usize = 12;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CliError::Write {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn load_graph(edges: &Path, nodes: Option<&Path>) -> Result<Graph, CliError> {
    let edge_text = read(edges)?;
    let loaded = match nodes {
        Some(node_path) => load_edge_csv(&read(node_path)?, &edge_text),
        None => load_edge_list(&edge_text),
    };
    loaded.map_err(|source| CliError::Input {
        path: edges.to_path_buf(),
        source,
    })
}

fn stats_csv(s: &GraphStats) -> String {
    format!(
        "Nodes,Edges,AvgDegree,AvgWeightedDegree,Diameter,EdgeDensity,AvgDistance,ClusteringCoeff\n\
         {},{},{:.2},{:.2},{},{:.3},{:.2},{:.3}\n",
        s.node_count,
        s.edge_count,
        s.avg_degree,
        s.avg_weighted_degree,
        s.diameter,
        s.edge_density,
        s.avg_distance,
        s.clustering_coeff
    )
}

pub fn extract(
    text: &Path,
    aliases: &Path,
    distance: usize,
    out_nodes: &Path,
    out_edges: &Path,
    gexf: Option<&Path>,
) -> Result<(), CliError> {
    let table = AliasTable::from_csv(&read(aliases)?).map_err(|source| CliError::Input {
        path: aliases.to_path_buf(),
        source,
    })?;
    if table.is_empty() {
        return Err(CliError::Input {
            path: aliases.to_path_buf(),
            source: Error::InvalidData("alias table is empty".into()),
        });
    }
    let g = extract_pipeline(&read(text)?, &table, WindowConfig::new(distance)?);
    write(out_nodes, &write_node_csv(&g)?)?;
    write(out_edges, &write_edge_csv(&g)?)?;
    if let Some(path) = gexf {
        write(path, &write_gexf(&g))?;
    }
    print!("{}", stats_csv(&global_stats(&g)));
    Ok(())
}

pub fn stats(edges: &Path, nodes: Option<&Path>, json: bool) -> Result<(), CliError> {
    let s = global_stats(&load_graph(edges, nodes)?);
    if json {
        println!("{}", serde_json::to_string_pretty(&s).map_err(Error::from)?);
    } else {
        print!("{}", stats_csv(&s));
    }
    Ok(())
}

fn scores_csv(g: &Graph, scores: &CentralityScores) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["Id", "Label", "Score"]).map_err(Error::from)?;
    for v in scores.ranking() {
        w.write_record([v.to_string(), g.label(v).to_string(), scores.values[v].to_string()])
            .map_err(Error::from)?;
    }
    csv_string(w)
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).map_err(|e| Error::InvalidData(e.to_string()))?)
}

pub fn analyze(edges: &Path, nodes: Option<&Path>, measure: &str, out_dir: &Path, seed: Seed) -> Result<(), CliError> {
    let wanted: Vec<Measure> = if measure == "all" {
        Measure::ALL.to_vec()
    } else {
        vec![measure.parse()?]
    };
    let g = load_graph(edges, nodes)?;
    let all = all_centralities(&g)?;
    for scores in all.iter().filter(|s| wanted.contains(&s.measure)) {
        write(
            &out_dir.join(format!("{}.csv", scores.measure)),
            &scores_csv(&g, scores)?,
        )?;
    }

    let partition = louvain(&g, seed);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["Id", "Label", "Community"]).map_err(Error::from)?;
    for (v, c) in partition.assignment.iter().enumerate() {
        w.write_record([v.to_string(), g.label(v).to_string(), c.to_string()])
            .map_err(Error::from)?;
    }
    write(&out_dir.join("communities.csv"), &csv_string(w)?)?;

    let by = |m: Measure| all.iter().find(|s| s.measure == m).expect("every measure computed");
    let pagerank = by(Measure::PageRank);
    let mut table = String::new();
    let _ = writeln!(
        table,
        "{:>4}  {:<24} {:>10} {:>10} {:>10} {:>12} {:>10}",
        "Rank", "Label", "PageRank", "WDegree", "Closeness", "Betweenness", "Eigen"
    );
    for (rank, v) in pagerank.ranking().into_iter().take(TOP_ROWS).enumerate() {
        let _ = writeln!(
            table,
            "{:>4}  {:<24} {:>10.4} {:>10.1} {:>10.3} {:>12.2} {:>10.3}",
            rank + 1,
            g.label(v),
            pagerank.values[v],
            by(Measure::WeightedDegree).values[v],
            by(Measure::Closeness).values[v],
            by(Measure::Betweenness).values[v],
            by(Measure::Eigencentrality).values[v],
        );
    }
    print!("{table}");
    println!("closeness is mean hop distance: lower is more central");
    println!(
        "communities: {} (modularity {:.4})",
        partition.community_count(),
        partition.q
    );
    Ok(())
}

pub fn generate(
    model: ModelKind,
    target: &Path,
    nodes: Option<&Path>,
    count: usize,
    out_dir: &Path,
    seed: Seed,
) -> Result<(), CliError> {
    let g = load_graph(target, nodes)?;
    let params = match_parameters(&g, model)?;
    let width = count.saturating_sub(1).to_string().len().max(3);
    for (i, sample) in generate_batch(&params, seed, count)?.iter().enumerate() {
        let name = format!("{}_{:0width$}.csv", model.name().to_ascii_lowercase(), i);
        write(&out_dir.join(name), &write_edge_csv(sample)?)?;
    }
    println!("{}", serde_json::to_string(&params).map_err(Error::from)?);
    Ok(())
}

pub fn profile(edges: &Path, nodes: Option<&Path>, mode: FeatureMode) -> Result<(), CliError> {
    let fv = feature_vector(&load_graph(edges, nodes)?, mode)?;
    println!("{}", mode.names().join(","));
    let values: Vec<String> = fv.values().iter().map(|v| v.to_string()).collect();
    println!("{}", values.join(","));
    Ok(())
}

/// Uses the unweighted topology, as the feature vector does.
pub fn spectrum(edges: &Path, nodes: Option<&Path>, histogram: bool) -> Result<(), CliError> {
    let g = load_graph(edges, nodes)?.unweighted();
    let values = laplacian_spectrum(&g)?;
    if histogram {
        let bins = spectral_histogram(&values)?;
        println!("{}", HISTOGRAM_NAMES.join(","));
        let row: Vec<String> = bins.bins().iter().map(|b| b.to_string()).collect();
        println!("{}", row.join(","));
    } else {
        println!("Index,Eigenvalue");
        for (i, lambda) in values.iter().enumerate() {
            println!("{i},{lambda}");
        }
    }
    Ok(())
}

pub fn select(
    edges: &Path,
    nodes: Option<&Path>,
    config: &SelectConfig,
    out: Option<&Path>,
    csv_out: Option<&Path>,
) -> Result<(), CliError> {
    let g = load_graph(edges, nodes)?;
    let report = select_model(&g, config)?;
    let json = report.to_json()?;
    let matrix = report.to_csv()?;
    match out {
        Some(path) => {
            write(path, &format!("{json}\n"))?;
            print!("{matrix}");
        }
        None => println!("{json}"),
    }
    if let Some(path) = csv_out {
        write(path, &matrix)?;
    }
    Ok(())
}

/// Counts, per classifier, how many networks in `dir` select each model.
pub fn select_batch(dir: &Path, config: &SelectConfig, out: Option<&Path>) -> Result<(), CliError> {
    let entries = fs::read_dir(dir).map_err(|source| CliError::Read {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x.eq_ignore_ascii_case("csv")))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Usage(format!("no .csv files in {}", dir.display())));
    }

    let selections: Vec<Vec<ModelKind>> = files
        .par_iter()
        .map(|path| {
            let g = load_graph(path, None)?;
            let report = select_model(&g, config).map_err(|source| CliError::Input {
                path: path.clone(),
                source,
            })?;
            Ok(report.classifiers.iter().map(|r| r.selected).collect())
        })
        .collect::<Result<_, CliError>>()?;

    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["Classifier"];
    header.extend(ModelKind::ALL.iter().map(|k| k.name()));
    w.write_record(&header).map_err(Error::from)?;
    for (ci, kind) in ClassifierKind::ALL.iter().enumerate() {
        let mut counts = [0usize; 4];
        for picks in &selections {
            counts[picks[ci].index()] += 1;
        }
        let mut row = vec![kind.name().to_string()];
        row.extend(counts.iter().map(|c| c.to_string()));
        w.write_record(&row).map_err(Error::from)?;
    }
    let aggregate = csv_string(w)?;
    match out {
        Some(path) => write(path, &aggregate)?,
        None => print!("{aggregate}"),
    }
    Ok(())
}
