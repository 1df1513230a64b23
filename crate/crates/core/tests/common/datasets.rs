//! Road networks for the acceptance suite.
//!
//! Real files are looked up in `$JOBROUTE_DATA_DIR` (default: `data/` at
//! the workspace root). Without them, synthetic graphs of the same size
//! stand in and are labelled as such.

use std::path::PathBuf;
use std::sync::Arc;

use jobroute::graph::synthetic::{road_like, RoadLikeParams};
use jobroute::{load_graph, GraphFormat, RoadNetwork};

pub struct Dataset {
    pub name: &'static str,
    /// `Some` when loaded from a real file.
    pub path: Option<PathBuf>,
    pub format: GraphFormat,
    pub net: Arc<RoadNetwork>,
}

impl Dataset {
    pub fn is_real(&self) -> bool {
        self.path.is_some()
    }

    pub fn describe(&self) -> String {
        match &self.path {
            Some(p) => format!(
                "{} from {} ({} POIs, {} edges)",
                self.name,
                p.display(),
                self.net.poi_count(),
                self.net.edge_count()
            ),
            None => format!(
                "{} SURROGATE: synthetic road-like graph ({} POIs, {} edges), real file not found in {}",
                self.name,
                self.net.poi_count(),
                self.net.edge_count(),
                data_dir().display()
            ),
        }
    }
}

pub fn data_dir() -> PathBuf {
    std::env::var_os("JOBROUTE_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

fn find(candidates: &[(&str, GraphFormat)]) -> Option<(PathBuf, GraphFormat)> {
    let dir = data_dir();
    candidates
        .iter()
        .map(|&(name, f)| (dir.join(name), f))
        .find(|(p, _)| p.is_file())
}

fn load(
    name: &'static str,
    candidates: &[(&str, GraphFormat)],
    surrogate: RoadLikeParams,
) -> Dataset {
    match find(candidates) {
        Some((path, format)) => {
            let net =
                load_graph(&path, format).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            Dataset {
                name,
                path: Some(path),
                format,
                net: Arc::new(net),
            }
        }
        None => Dataset {
            name,
            path: None,
            format: GraphFormat::EdgeList,
            net: Arc::new(road_like(surrogate).unwrap()),
        },
    }
}

/// Europe road network, 1174 POIs and 1417 unit-weight edges.
pub fn erd() -> Dataset {
    load(
        "ERD",
        &[
            ("road-euroroad.mtx", GraphFormat::Mtx),
            ("road-euroroad.edges", GraphFormat::EdgeList),
            ("euroroad.txt", GraphFormat::EdgeList),
        ],
        RoadLikeParams::europe_sized(2024),
    )
}

const OLDENBURG_FILES: [(&str, GraphFormat); 2] = [
    ("OL.cedge", GraphFormat::Oldenburg),
    ("oldenburg.txt", GraphFormat::Oldenburg),
];

/// City of Oldenburg, 6105 POIs and 7035 edges, when the file is installed.
pub fn oldenburg() -> Option<Dataset> {
    find(&OLDENBURG_FILES)?;
    Some(oldenburg_or_surrogate())
}

pub fn oldenburg_or_surrogate() -> Dataset {
    load(
        "OBR",
        &OLDENBURG_FILES,
        RoadLikeParams::oldenburg_sized(2024),
    )
}
