//! Interchange formats: a JSON edge-list schema and graph6.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// JSON schema: `{"n": int, "edges": [[u, v], ...], "labels": optional}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Option<String>>>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            n: g.vertex_count(),
            edges: g.edges(),
            labels: g.labels().map(|l| l.to_vec()),
        }
    }

    pub fn into_graph(self) -> Result<Graph> {
        let g = Graph::from_edges(self.n, &self.edges)
            .map_err(|e| Error::JsonGraph(e.to_string()))?;
        match self.labels {
            Some(labels) => g
                .with_labels(labels)
                .map_err(|e| Error::JsonGraph(e.to_string())),
            None => Ok(g),
        }
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from_graph(g)).expect("graph serializes")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let parsed: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::JsonGraph(e.to_string()))?;
    parsed.into_graph()
}

/// Writes the canonical graph6 line (no trailing newline). Supports the
/// one-byte and four-byte order encodings, so n up to 258047.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    } else {
        return Err(Error::Graph6(format!("{n} vertices exceed graph6 support")));
    }
    let mut bits: u8 = 0;
    let mut filled = 0;
    for col in 1..n as u32 {
        for row in 0..col {
            bits = (bits << 1) | u8::from(g.has_edge(row, col));
            filled += 1;
            if filled == 6 {
                out.push(63 + bits);
                bits = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bits <<= 6 - filled;
        out.push(63 + bits);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ascii"))
}

pub fn from_graph6(line: &str) -> Result<Graph> {
    let bytes = line.trim().as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".to_string()));
    }
    let (n, body) = if bytes[0] == 126 {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Error::Graph6("unsupported or truncated order prefix".to_string()));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(Error::Graph6(format!("invalid order byte {b}")));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        (n, &bytes[4..])
    } else {
        if !(63..=125).contains(&bytes[0]) {
            return Err(Error::Graph6(format!("invalid order byte {}", bytes[0])));
        }
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    let bit_count = n * (n - 1) / 2;
    let needed = bit_count.div_ceil(6);
    if body.len() != needed {
        return Err(Error::Graph6(format!(
            "expected {needed} body bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut idx = 0usize;
    'outer: for col in 1..n as u32 {
        for row in 0..col {
            if idx >= bit_count {
                break 'outer;
            }
            let byte = body[idx / 6];
            if !(63..=126).contains(&byte) {
                return Err(Error::Graph6(format!("invalid body byte {byte}")));
            }
            let bit = (byte - 63) >> (5 - (idx % 6)) & 1;
            if bit == 1 {
                edges.push((row, col));
            }
            idx += 1;
        }
    }
    // Padding bits must be zero in canonical graph6.
    for pad in bit_count..needed * 6 {
        let byte = body[pad / 6];
        if (byte - 63) >> (5 - (pad % 6)) & 1 == 1 {
            return Err(Error::Graph6("nonzero padding bits".to_string()));
        }
    }
    Graph::from_edges(n, &edges).map_err(|e| Error::Graph6(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::erdos_renyi;

    #[test]
    fn json_roundtrip_keeps_structure_and_labels() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)])
            .unwrap()
            .with_labels(vec![Some("a".into()), None, Some("c".into())])
            .unwrap();
        let text = to_json(&g);
        let back = from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.label(0), Some("a"));
        assert_eq!(back.label(1), None);
    }

    #[test]
    fn json_rejects_loops_and_duplicates() {
        assert!(from_json(r#"{"n":3,"edges":[[0,0]]}"#).is_err());
        assert!(from_json(r#"{"n":3,"edges":[[0,1],[1,0]]}"#).is_err());
        assert!(from_json(r#"{"n":2,"edges":[[0,5]]}"#).is_err());
    }

    #[test]
    fn graph6_known_encodings() {
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(to_graph6(&k3).unwrap(), "Bw");
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(to_graph6(&k4).unwrap(), "C~");
        assert_eq!(from_graph6("Bw").unwrap(), k3);
        assert_eq!(from_graph6("C~").unwrap(), k4);
    }

    #[test]
    fn graph6_roundtrip_random() {
        for seed in 0..20 {
            let g = erdos_renyi(1 + (seed as usize * 7) % 70, 0.3, seed);
            let line = to_graph6(&g).unwrap();
            assert_eq!(from_graph6(&line).unwrap(), g, "seed {seed}");
        }
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("B\x7f").is_err());
    }
}
