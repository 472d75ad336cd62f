//! Graph exchange formats: JSON for inspection and the `GDX1` bitset format
//! for large graphs.
//!
//! `GDX1` layout, all integers little-endian `u32`: the magic bytes `GDX1`,
//! the metadata as a length-prefixed JSON string, `n`, then each label as a
//! length-prefixed list, then the strict upper triangle of the adjacency
//! matrix packed row by row into bits, least significant bit first.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphMeta, Label};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"GDX1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    Json,
    Gdx1,
}

#[derive(Serialize, Deserialize)]
struct Exchange {
    meta: GraphMeta,
    n: usize,
    labels: Vec<Label>,
    adjacency: Vec<Vec<u32>>,
}

pub fn to_json(g: &Graph) -> String {
    let ex =
        Exchange { meta: g.meta().clone(), n: g.n(), labels: g.labels().to_vec(), adjacency: g.adjacency().to_vec() };
    serde_json::to_string(&ex).expect("graph serialises")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let ex: Exchange = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    if ex.labels.len() != ex.n || ex.adjacency.len() != ex.n {
        return Err(Error::Malformed(format!(
            "n = {} but {} labels and {} adjacency rows",
            ex.n,
            ex.labels.len(),
            ex.adjacency.len()
        )));
    }
    Graph::new(ex.labels, ex.adjacency, ex.meta)
}

fn put(out: &mut Vec<u8>, x: usize) -> Result<()> {
    let x = u32::try_from(x).map_err(|_| Error::TooLarge(format!("{x} does not fit the GDX1 format")))?;
    out.extend_from_slice(&x.to_le_bytes());
    Ok(())
}

/// Index of the pair `u < v` in the packed upper triangle.
fn pair_index(n: usize, u: usize, v: usize) -> usize {
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

pub fn to_gdx1(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    let mut out = MAGIC.to_vec();
    let meta = serde_json::to_vec(g.meta()).expect("metadata serialises");
    put(&mut out, meta.len())?;
    out.extend_from_slice(&meta);
    put(&mut out, n)?;
    for label in g.labels() {
        put(&mut out, label.len())?;
        for &x in label {
            out.extend_from_slice(&x.to_le_bytes());
        }
    }
    let mut bits = vec![0u8; (n * n.saturating_sub(1) / 2).div_ceil(8)];
    for u in 0..n {
        for &v in g.neighbours(u as u32) {
            let v = v as usize;
            if v > u {
                let i = pair_index(n, u, v);
                bits[i / 8] |= 1 << (i % 8);
            }
        }
    }
    out.extend_from_slice(&bits);
    Ok(out)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn take(&mut self, len: usize) -> Result<&[u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Malformed("truncated GDX1 data".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("four bytes")))
    }
}

pub fn from_gdx1(bytes: &[u8]) -> Result<Graph> {
    if !bytes.starts_with(MAGIC) {
        return Err(Error::Malformed("missing GDX1 header".into()));
    }
    let mut c = Cursor { bytes, pos: MAGIC.len() };
    let meta_len = c.u32()? as usize;
    let meta: GraphMeta = serde_json::from_slice(c.take(meta_len)?).map_err(|e| Error::Malformed(e.to_string()))?;
    let n = c.u32()? as usize;
    // every label costs at least four bytes, which bounds n before allocating
    if n > bytes.len() / 4 {
        return Err(Error::Malformed(format!("vertex count {n} exceeds the data")));
    }
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let len = c.u32()? as usize;
        let raw = c.take(len.checked_mul(4).ok_or_else(|| Error::Malformed("label too long".into()))?)?;
        labels.push(raw.chunks_exact(4).map(|b| u32::from_le_bytes(b.try_into().expect("four bytes"))).collect());
    }
    let bits = c.take((n * n.saturating_sub(1) / 2).div_ceil(8))?.to_vec();
    if c.pos != bytes.len() {
        return Err(Error::Malformed("trailing bytes after GDX1 data".into()));
    }
    let mut adj = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            let i = pair_index(n, u, v);
            if bits[i / 8] >> (i % 8) & 1 == 1 {
                adj[u].push(v as u32);
                adj[v].push(u as u32);
            }
        }
    }
    Graph::new(labels, adj, meta)
}

pub fn save(g: &Graph, path: &Path, format: GraphFormat) -> Result<()> {
    let bytes = match format {
        GraphFormat::Json => to_json(g).into_bytes(),
        GraphFormat::Gdx1 => to_gdx1(g)?,
    };
    fs::File::create(path)?.write_all(&bytes)?;
    Ok(())
}

/// Reads either format, telling them apart by the magic bytes.
pub fn load(path: &Path) -> Result<Graph> {
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    if bytes.starts_with(MAGIC) {
        from_gdx1(&bytes)
    } else {
        let text = String::from_utf8(bytes).map_err(|_| Error::Malformed("neither GDX1 nor UTF-8 JSON".into()))?;
        from_json(&text)
    }
}
