//! Binary and ASCII STL.
//!
//! Binary layout: 80-byte header, little-endian `u32` triangle count, then
//! 50 bytes per triangle (normal and three vertices as `f32`, `u16` attribute).

use std::collections::HashMap;
use std::io::{self, Write};

use thiserror::Error;

use crate::geom::Vec3;
use crate::mesh::TriangleMesh;

pub const HEADER_TAG: &[u8] = b"identispace-forge";
pub const HEADER_LEN: usize = 80;
pub const RECORD_LEN: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StlMode {
    Binary,
    Ascii,
}

#[derive(Debug, Error)]
pub enum StlError {
    #[error("vertex {0} is not finite")]
    NonFinite(usize),
    #[error("{0} triangles do not fit a binary STL count field")]
    TooManyTriangles(usize),
    #[error("truncated STL: {len} bytes, expected {expected}")]
    Truncated { len: usize, expected: usize },
    #[error("STL length {len} does not match the {count} triangles declared (expected {expected} bytes)")]
    LengthMismatch {
        len: usize,
        count: u32,
        expected: usize,
    },
    #[error("ASCII STL parse error on line {line}: {message}")]
    Ascii { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Exact binary size for `n` triangles.
pub fn binary_len(n: usize) -> usize {
    HEADER_LEN + 4 + RECORD_LEN * n
}

fn to_f32(v: &Vec3) -> [f32; 3] {
    // +0.0 collapses -0.0 so equal positions have equal bits
    [v.x as f32 + 0.0, v.y as f32 + 0.0, v.z as f32 + 0.0]
}

fn facet_normal(a: &Vec3, b: &Vec3, c: &Vec3) -> [f32; 3] {
    let n = (b - a).cross(&(c - a));
    let len = n.norm();
    if len > 0.0 && len.is_finite() {
        to_f32(&(n / len))
    } else {
        [0.0; 3]
    }
}

pub fn write_stl<W: Write>(mesh: &TriangleMesh, mode: StlMode, out: &mut W) -> Result<(), StlError> {
    if let Some(bad) = mesh.vertices.iter().position(|v| !v.iter().all(|c| c.is_finite())) {
        return Err(StlError::NonFinite(bad));
    }
    let n = mesh.triangles.len();
    match mode {
        StlMode::Binary => {
            let count = u32::try_from(n).map_err(|_| StlError::TooManyTriangles(n))?;
            let mut header = [0u8; HEADER_LEN];
            header[..HEADER_TAG.len()].copy_from_slice(HEADER_TAG);
            out.write_all(&header)?;
            out.write_all(&count.to_le_bytes())?;
            let mut record = [0u8; RECORD_LEN];
            for t in 0..n {
                let [a, b, c] = mesh.corners(t);
                let floats = [facet_normal(&a, &b, &c), to_f32(&a), to_f32(&b), to_f32(&c)];
                for (k, f) in floats.iter().flatten().enumerate() {
                    record[4 * k..4 * k + 4].copy_from_slice(&f.to_le_bytes());
                }
                out.write_all(&record)?;
            }
        }
        StlMode::Ascii => {
            writeln!(out, "solid identispace-forge")?;
            for t in 0..n {
                let [a, b, c] = mesh.corners(t);
                let nrm = facet_normal(&a, &b, &c);
                writeln!(out, "  facet normal {:.8e} {:.8e} {:.8e}", nrm[0], nrm[1], nrm[2])?;
                writeln!(out, "    outer loop")?;
                for v in [a, b, c] {
                    let p = to_f32(&v);
                    writeln!(out, "      vertex {:.8e} {:.8e} {:.8e}", p[0], p[1], p[2])?;
                }
                writeln!(out, "    endloop")?;
                writeln!(out, "  endfacet")?;
            }
            writeln!(out, "endsolid identispace-forge")?;
        }
    }
    Ok(())
}

pub fn to_stl_bytes(mesh: &TriangleMesh, mode: StlMode) -> Result<Vec<u8>, StlError> {
    let mut buf = Vec::new();
    write_stl(mesh, mode, &mut buf)?;
    Ok(buf)
}

/// Welds corners with bit-identical coordinates into shared vertices.
#[derive(Default)]
struct Welder {
    index: HashMap<[u32; 3], u32>,
    mesh: TriangleMesh,
}

impl Welder {
    fn vertex(&mut self, p: [f32; 3]) -> u32 {
        let key = p.map(f32::to_bits);
        let vertices = &mut self.mesh.vertices;
        *self.index.entry(key).or_insert_with(|| {
            vertices.push(Vec3::new(p[0] as f64, p[1] as f64, p[2] as f64));
            (vertices.len() - 1) as u32
        })
    }

    fn triangle(&mut self, corners: [[f32; 3]; 3]) {
        let tri = corners.map(|p| self.vertex(p));
        self.mesh.triangles.push(tri);
    }

    fn finish(mut self) -> TriangleMesh {
        let (_, labels) = self.mesh.connected_components();
        self.mesh.component_ids = labels;
        self.mesh
    }
}

/// Parses binary or ASCII STL. ASCII is tried first when the data starts
/// with `solid`, falling back to binary if that parse fails.
///
/// Triangles keep file order; component ids are recomputed from
/// connectivity. Degenerate triangles are kept so validation can report them.
pub fn read_stl(bytes: &[u8]) -> Result<TriangleMesh, StlError> {
    if bytes.starts_with(b"solid") {
        match parse_ascii(bytes) {
            Ok(mesh) => return Ok(mesh),
            Err(ascii_err) => {
                if bytes.len() < HEADER_LEN + 4 {
                    return Err(ascii_err);
                }
                return parse_binary(bytes).map_err(|_| ascii_err);
            }
        }
    }
    parse_binary(bytes)
}

fn parse_binary(bytes: &[u8]) -> Result<TriangleMesh, StlError> {
    if bytes.len() < HEADER_LEN + 4 {
        return Err(StlError::Truncated {
            len: bytes.len(),
            expected: HEADER_LEN + 4,
        });
    }
    let count = u32::from_le_bytes(bytes[HEADER_LEN..HEADER_LEN + 4].try_into().unwrap());
    let expected = binary_len(count as usize);
    if bytes.len() < expected {
        return Err(StlError::Truncated {
            len: bytes.len(),
            expected,
        });
    }
    if bytes.len() != expected {
        return Err(StlError::LengthMismatch {
            len: bytes.len(),
            count,
            expected,
        });
    }
    let mut welder = Welder::default();
    welder.mesh.triangles.reserve(count as usize);
    for record in bytes[HEADER_LEN + 4..].chunks_exact(RECORD_LEN) {
        let f = |k: usize| f32::from_le_bytes(record[4 * k..4 * k + 4].try_into().unwrap());
        // skip the stored normal (floats 0..3)
        welder.triangle([
            [f(3), f(4), f(5)],
            [f(6), f(7), f(8)],
            [f(9), f(10), f(11)],
        ]);
    }
    Ok(welder.finish())
}

fn parse_ascii(bytes: &[u8]) -> Result<TriangleMesh, StlError> {
    let text = std::str::from_utf8(bytes).map_err(|e| StlError::Ascii {
        line: 0,
        message: e.to_string(),
    })?;
    let mut welder = Welder::default();
    let mut corners: Vec<[f32; 3]> = Vec::with_capacity(3);
    let mut in_facet = false;
    let mut ended = false;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |message: &str| StlError::Ascii {
            line,
            message: message.to_string(),
        };
        let mut words = raw.split_whitespace();
        let Some(keyword) = words.next() else { continue };
        match keyword {
            "solid" if n == 0 => {}
            "facet" => {
                if in_facet {
                    return Err(err("nested facet"));
                }
                in_facet = true;
                corners.clear();
            }
            "outer" | "endloop" => {}
            "vertex" => {
                if !in_facet {
                    return Err(err("vertex outside facet"));
                }
                let mut p = [0f32; 3];
                for c in p.iter_mut() {
                    *c = words
                        .next()
                        .ok_or_else(|| err("vertex needs three coordinates"))?
                        .parse()
                        .map_err(|_| err("bad coordinate"))?;
                }
                corners.push(p);
            }
            "endfacet" => {
                if !in_facet || corners.len() != 3 {
                    return Err(err("facet must have exactly three vertices"));
                }
                welder.triangle([corners[0], corners[1], corners[2]]);
                in_facet = false;
            }
            "endsolid" => {
                ended = true;
                break;
            }
            other => return Err(err(&format!("unexpected keyword '{other}'"))),
        }
    }
    if in_facet || !ended {
        return Err(StlError::Ascii {
            line: text.lines().count(),
            message: "unexpected end of file".into(),
        });
    }
    Ok(welder.finish())
}
