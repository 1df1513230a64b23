use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{GraphError, NetworkBuilder, RoadNetwork};

/// On-disk road network formats.
///
/// * `edgelist`: `u v [w]` per line, `%`/`#` comments, missing `w` is 1.0.
/// * `oldenburg`: `edge_id u v w` per line, 0-indexed labels.
/// * `mtx`: MatrixMarket coordinate file, 1-indexed, pattern entries get 1.0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    #[value(name = "edgelist", alias = "edge-list")]
    #[serde(alias = "edge-list")]
    EdgeList,
    Oldenburg,
    #[value(name = "mtx", alias = "matrix-market")]
    #[serde(alias = "matrix-market")]
    Mtx,
}

impl GraphFormat {
    pub fn name(self) -> &'static str {
        match self {
            GraphFormat::EdgeList => "edgelist",
            GraphFormat::Oldenburg => "oldenburg",
            GraphFormat::Mtx => "mtx",
        }
    }
}

impl FromStr for GraphFormat {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" | "edge-list" => Ok(GraphFormat::EdgeList),
            "oldenburg" => Ok(GraphFormat::Oldenburg),
            "mtx" | "matrix-market" => Ok(GraphFormat::Mtx),
            other => Err(GraphError::UnknownFormat(other.to_string())),
        }
    }
}

impl std::fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

pub fn load_graph(path: impl AsRef<Path>, format: GraphFormat) -> Result<RoadNetwork, GraphError> {
    let path = path.as_ref();
    let io_err = |source| GraphError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::open(path).map_err(io_err)?;
    let net = parse_graph(BufReader::new(file), format)?;
    let report = net.load_report();
    if report.self_loops_dropped > 0 {
        log::warn!(
            "{}: dropped {} self-loop(s)",
            path.display(),
            report.self_loops_dropped
        );
    }
    if report.duplicates_collapsed > 0 {
        log::info!(
            "{}: collapsed {} duplicate edge(s) to their minimum weight",
            path.display(),
            report.duplicates_collapsed
        );
    }
    Ok(net)
}

pub fn parse_graph<R: BufRead>(reader: R, format: GraphFormat) -> Result<RoadNetwork, GraphError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(reader),
        GraphFormat::Oldenburg => parse_oldenburg(reader),
        GraphFormat::Mtx => parse_mtx(reader),
    }
}

fn read_err(line: usize, e: std::io::Error) -> GraphError {
    GraphError::Malformed {
        line,
        message: e.to_string(),
    }
}

fn malformed(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Malformed {
        line,
        message: message.into(),
    }
}

fn parse_label(line: usize, tok: &str) -> Result<u64, GraphError> {
    tok.parse().map_err(|_| {
        malformed(
            line,
            format!("'{tok}' is not a non-negative integer node label"),
        )
    })
}

fn parse_weight(line: usize, tok: &str) -> Result<f64, GraphError> {
    tok.parse()
        .map_err(|_| malformed(line, format!("'{tok}' is not a number")))
}

fn parse_edge_list<R: BufRead>(reader: R) -> Result<RoadNetwork, GraphError> {
    let mut b = NetworkBuilder::default();
    for (i, line) in reader.lines().enumerate() {
        let n = i + 1;
        let line = line.map_err(|e| read_err(n, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') || line.starts_with('#') {
            continue;
        }
        // some repositories ship comma-separated edge lists
        let toks: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let (u, v, w) = match toks.as_slice() {
            [u, v] => (*u, *v, None),
            [u, v, w] => (*u, *v, Some(*w)),
            _ => return Err(malformed(n, "expected 'u v [w]'")),
        };
        let w = w.map(|w| parse_weight(n, w)).transpose()?.unwrap_or(1.0);
        b.add_edge(n, parse_label(n, u)?, parse_label(n, v)?, w)?;
    }
    b.finish()
}

fn parse_oldenburg<R: BufRead>(reader: R) -> Result<RoadNetwork, GraphError> {
    let mut b = NetworkBuilder::default();
    for (i, line) in reader.lines().enumerate() {
        let n = i + 1;
        let line = line.map_err(|e| read_err(n, e))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [id, u, v, w] = toks.as_slice() else {
            return Err(malformed(n, "expected 'edge_id u v w'"));
        };
        parse_label(n, id)?;
        b.add_edge(
            n,
            parse_label(n, u)?,
            parse_label(n, v)?,
            parse_weight(n, w)?,
        )?;
    }
    b.finish()
}

fn parse_mtx<R: BufRead>(reader: R) -> Result<RoadNetwork, GraphError> {
    let lines = reader.lines().enumerate();
    let mut pattern = false;
    let mut saw_header = false;
    let mut dims: Option<(u64, usize)> = None;
    let mut entries = 0usize;
    let mut b = NetworkBuilder::default();

    for (i, line) in lines {
        let n = i + 1;
        let line = line.map_err(|e| read_err(n, e))?;
        let line = line.trim();
        if !saw_header {
            if line.is_empty() {
                continue;
            }
            if !line.starts_with("%%MatrixMarket") {
                return Err(malformed(n, "missing %%MatrixMarket header"));
            }
            let toks: Vec<String> = line.split_whitespace().map(str::to_lowercase).collect();
            if toks.get(1).map(String::as_str) != Some("matrix")
                || toks.get(2).map(String::as_str) != Some("coordinate")
            {
                return Err(malformed(
                    n,
                    "only 'matrix coordinate' MatrixMarket files are supported",
                ));
            }
            match toks.get(3).map(String::as_str) {
                Some("pattern") => pattern = true,
                Some("real" | "integer" | "double") => {}
                other => {
                    return Err(malformed(
                        n,
                        format!("unsupported MatrixMarket field '{}'", other.unwrap_or("")),
                    ))
                }
            }
            saw_header = true;
            continue;
        }
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match dims {
            None => {
                let [r, c, m] = toks.as_slice() else {
                    return Err(malformed(n, "expected dimension line 'n n m'"));
                };
                let r = parse_label(n, r)?;
                let c = parse_label(n, c)?;
                if r != c {
                    return Err(malformed(
                        n,
                        format!("adjacency matrix must be square, got {r}x{c}"),
                    ));
                }
                let m: usize = m
                    .parse()
                    .map_err(|_| malformed(n, format!("'{m}' is not an entry count")))?;
                for label in 1..=r {
                    b.add_node(label);
                }
                dims = Some((r, m));
            }
            Some((size, _)) => {
                let (u, v, w) = match toks.as_slice() {
                    [u, v] => (*u, *v, None),
                    [u, v, w, ..] if !pattern => (*u, *v, Some(*w)),
                    [u, v, ..] if pattern => (*u, *v, None),
                    _ => return Err(malformed(n, "expected 'u v [w]'")),
                };
                let u = parse_label(n, u)?;
                let v = parse_label(n, v)?;
                for x in [u, v] {
                    if x == 0 || x > size {
                        return Err(malformed(n, format!("index {x} outside 1..={size}")));
                    }
                }
                let w = w.map(|w| parse_weight(n, w)).transpose()?.unwrap_or(1.0);
                b.add_edge(n, u, v, w)?;
                entries += 1;
            }
        }
    }
    if !saw_header {
        return Err(malformed(1, "missing %%MatrixMarket header"));
    }
    match dims {
        None => Err(GraphError::Empty),
        Some((_, m)) if m != entries => Err(malformed(
            0,
            format!("dimension line declares {m} entries but {entries} were read"),
        )),
        Some(_) => b.finish(),
    }
}

/// Serialise a network using its original labels.
pub fn write_graph<W: Write>(
    net: &RoadNetwork,
    format: GraphFormat,
    mut out: W,
) -> std::io::Result<()> {
    match format {
        GraphFormat::EdgeList => {
            for e in net.edges() {
                writeln!(out, "{} {} {}", net.label(e.u), net.label(e.v), e.weight)?;
            }
        }
        GraphFormat::Oldenburg => {
            for (i, e) in net.edges().iter().enumerate() {
                writeln!(
                    out,
                    "{} {} {} {}",
                    i,
                    net.label(e.u),
                    net.label(e.v),
                    e.weight
                )?;
            }
        }
        GraphFormat::Mtx => {
            // mtx indices are positional, so labels are renumbered 1..=n
            writeln!(out, "%%MatrixMarket matrix coordinate real symmetric")?;
            writeln!(
                out,
                "{} {} {}",
                net.poi_count(),
                net.poi_count(),
                net.edge_count()
            )?;
            for e in net.edges() {
                writeln!(out, "{} {} {}", e.v.index() + 1, e.u.index() + 1, e.weight)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, format: GraphFormat) -> Result<RoadNetwork, GraphError> {
        parse_graph(text.as_bytes(), format)
    }

    #[test]
    fn oldenburg_lines() {
        let net = parse("0 0 1 36.6\n1 1 2 10.0\n", GraphFormat::Oldenburg).unwrap();
        assert_eq!(net.poi_count(), 3);
        assert_eq!(net.edge_count(), 2);
        assert_eq!(net.label(net.edges()[0].u), 0);
    }

    #[test]
    fn edge_list_keeps_min_duplicate() {
        let net = parse("# roads\n1 2 5.0\n2 1 4.0\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(net.edge_count(), 1);
        assert_eq!(net.edges()[0].weight, 4.0);
    }

    #[test]
    fn edge_list_default_weight_and_comments() {
        let net = parse("% header\n1 2\n\n2 3 2.5\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(net.edges()[0].weight, 1.0);
        assert_eq!(net.edges()[1].weight, 2.5);
    }

    #[test]
    fn edge_list_accepts_commas() {
        let net = parse("1,2\n2, 3,0.5\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(net.edge_count(), 2);
        assert_eq!(net.edges()[1].weight, 0.5);
    }

    #[test]
    fn malformed_line_reports_number() {
        let err = parse("1 2 1.0\n1 x 2.0\n", GraphFormat::EdgeList).unwrap_err();
        assert!(
            matches!(err, GraphError::Malformed { line: 2, .. }),
            "{err}"
        );
        let err = parse("0 0 1\n", GraphFormat::Oldenburg).unwrap_err();
        assert!(
            matches!(err, GraphError::Malformed { line: 1, .. }),
            "{err}"
        );
        let err = parse("1 2 1 7 9\n", GraphFormat::EdgeList).unwrap_err();
        assert!(
            matches!(err, GraphError::Malformed { line: 1, .. }),
            "{err}"
        );
    }

    #[test]
    fn non_positive_weight_rejected() {
        let err = parse("0 0 1 1.0\n1 1 2 0\n", GraphFormat::Oldenburg).unwrap_err();
        assert!(
            matches!(err, GraphError::NonPositiveWeight { line: 2, .. }),
            "{err}"
        );
    }

    #[test]
    fn empty_inputs_rejected() {
        assert!(matches!(
            parse("", GraphFormat::EdgeList),
            Err(GraphError::Empty)
        ));
        assert!(matches!(
            parse("# only\n", GraphFormat::EdgeList),
            Err(GraphError::Empty)
        ));
        assert!(matches!(
            parse(
                "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 0\n",
                GraphFormat::Mtx
            ),
            Err(GraphError::Empty)
        ));
    }

    #[test]
    fn mtx_pattern_and_isolated_nodes() {
        let text = "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n4 4 2\n2 1\n3 2\n";
        let net = parse(text, GraphFormat::Mtx).unwrap();
        assert_eq!(net.poi_count(), 4);
        assert_eq!(net.edge_count(), 2);
        assert!(net.edges().iter().all(|e| e.weight == 1.0));
        assert_eq!(net.component_count(), 2);
    }

    #[test]
    fn mtx_errors() {
        assert!(parse("3 3 1\n1 2\n", GraphFormat::Mtx).is_err());
        let bad_index = "%%MatrixMarket matrix coordinate real general\n3 3 1\n1 4 1.0\n";
        assert!(matches!(
            parse(bad_index, GraphFormat::Mtx),
            Err(GraphError::Malformed { line: 3, .. })
        ));
        let bad_count = "%%MatrixMarket matrix coordinate real general\n3 3 2\n1 2 1.0\n";
        assert!(parse(bad_count, GraphFormat::Mtx).is_err());
        let rect = "%%MatrixMarket matrix coordinate real general\n3 4 1\n1 2 1.0\n";
        assert!(parse(rect, GraphFormat::Mtx).is_err());
    }

    #[test]
    fn written_graphs_parse_back() {
        let net = parse(
            "10 20 1.5\n20 30 2.25\n30 10 0.125\n",
            GraphFormat::EdgeList,
        )
        .unwrap();
        for format in [GraphFormat::EdgeList, GraphFormat::Oldenburg] {
            let mut buf = Vec::new();
            write_graph(&net, format, &mut buf).unwrap();
            assert_eq!(parse_graph(buf.as_slice(), format).unwrap(), net);
        }
        let mut buf = Vec::new();
        write_graph(&net, GraphFormat::Mtx, &mut buf).unwrap();
        let back = parse_graph(buf.as_slice(), GraphFormat::Mtx).unwrap();
        assert_eq!(back.edge_count(), 3);
        let mut w: Vec<f64> = back.edges().iter().map(|e| e.weight).collect();
        w.sort_by(f64::total_cmp);
        assert_eq!(w, vec![0.125, 1.5, 2.25]);
    }

    #[test]
    fn format_names() {
        assert_eq!("mtx".parse::<GraphFormat>().unwrap(), GraphFormat::Mtx);
        assert_eq!(
            "edge-list".parse::<GraphFormat>().unwrap(),
            GraphFormat::EdgeList
        );
        assert!("csv".parse::<GraphFormat>().is_err());
    }
}
