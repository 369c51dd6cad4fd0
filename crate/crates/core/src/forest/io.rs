use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::geometry::{Coord, Point};

use super::{ForestError, GeometricGraph};

const VERSION: u32 = 1;

/// Integer field of the interchange format: a JSON number when it fits in
/// `i64`, a decimal string otherwise.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
enum Int {
    Small(i64),
    Big(String),
}

impl Int {
    fn from_big(b: BigInt) -> Int {
        i64::try_from(&b).map(Int::Small).unwrap_or_else(|_| Int::Big(b.to_string()))
    }

    fn to_big(&self) -> Result<BigInt, ForestError> {
        match self {
            Int::Small(v) => Ok(BigInt::from(*v)),
            Int::Big(s) => s.parse().map_err(|_| ForestError::Format(format!("bad integer {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    version: u32,
    oriented: bool,
    vertices: Vec<[Int; 4]>,
    edges: Vec<[usize; 2]>,
}

fn coord_parts(c: &Coord) -> [Int; 2] {
    [Int::from_big(c.numer()), Int::from_big(c.denom())]
}

/// Serialises a graph as a single line of JSON followed by a newline.
pub fn write_graph(g: &GeometricGraph) -> String {
    let file = GraphFile {
        version: VERSION,
        oriented: g.oriented(),
        vertices: g
            .vertices()
            .iter()
            .map(|p| {
                let [xn, xd] = coord_parts(&p.x);
                let [yn, yd] = coord_parts(&p.y);
                [xn, xd, yn, yd]
            })
            .collect(),
        edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
    };
    let mut s = serde_json::to_string(&file).expect("plain data serialises");
    s.push('\n');
    s
}

pub fn read_graph(text: &str) -> Result<GeometricGraph, ForestError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| ForestError::Format(e.to_string()))?;
    if file.version != VERSION {
        return Err(ForestError::Format(format!("unsupported version {}", file.version)));
    }
    let coord = |n: &Int, d: &Int| -> Result<Coord, ForestError> {
        Coord::from_big(n.to_big()?, d.to_big()?).ok_or_else(|| ForestError::Format("zero denominator".into()))
    };
    let vertices = file
        .vertices
        .iter()
        .map(|[xn, xd, yn, yd]| Ok(Point { x: coord(xn, xd)?, y: coord(yn, yd)? }))
        .collect::<Result<Vec<_>, ForestError>>()?;
    let edges = file.edges.iter().map(|&[a, b]| (a, b)).collect();
    GeometricGraph::new(vertices, edges, file.oriented)
}
