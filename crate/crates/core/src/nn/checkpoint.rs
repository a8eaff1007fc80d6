//! Parameter checkpoints.
//!
//! A checkpoint is a UTF-8 header followed by the raw parameters:
//!
//! ```text
//! HYPERQ-PARAMS 1
//! meta <key> <value>
//! net <name> <offset> sizes=<w0,w1,..> acts=<a1,a2,..>
//! slice <name> <offset> <len>
//! data <count>
//! <count little-endian f64 values>
//! ```
//!
//! Names and meta keys contain no whitespace; meta values run to end of line.

use std::io::{BufRead, Write};

use super::{Activation, DenseSpec, ParamSlice, ParamStore};
use crate::error::{Error, Result};

const MAGIC: &str = "HYPERQ-PARAMS 1";

#[derive(Clone, Debug, PartialEq)]
pub struct NetEntry {
    pub name: String,
    pub offset: usize,
    pub spec: DenseSpec,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Checkpoint {
    pub meta: Vec<(String, String)>,
    pub nets: Vec<NetEntry>,
    pub params: ParamStore,
}

impl Checkpoint {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn write<W: Write>(mut w: W, ckpt: &Checkpoint) -> std::io::Result<()> {
    writeln!(w, "{MAGIC}")?;
    for (k, v) in &ckpt.meta {
        writeln!(w, "meta {k} {v}")?;
    }
    for n in &ckpt.nets {
        writeln!(
            w,
            "net {} {} sizes={} acts={}",
            n.name,
            n.offset,
            join(n.spec.layer_sizes()),
            join(n.spec.activations())
        )?;
    }
    for s in ckpt.params.slices() {
        writeln!(w, "slice {} {} {}", s.name, s.offset, s.len)?;
    }
    writeln!(w, "data {}", ckpt.params.len())?;
    for v in ckpt.params.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Checkpoint(msg.into())
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| bad(format!("bad {what} `{s}`")))
}

fn parse_net(rest: &str) -> Result<NetEntry> {
    let parts: Vec<&str> = rest.split_whitespace().collect();
    let [name, offset, sizes, acts] = parts[..] else {
        return Err(bad(format!("bad net line `{rest}`")));
    };
    let sizes = sizes
        .strip_prefix("sizes=")
        .ok_or_else(|| bad("net sizes"))?;
    let acts = acts.strip_prefix("acts=").ok_or_else(|| bad("net acts"))?;
    let sizes = sizes
        .split(',')
        .map(|s| parse_usize(s, "layer size"))
        .collect::<Result<Vec<_>>>()?;
    let acts = acts
        .split(',')
        .map(|s| s.parse::<Activation>())
        .collect::<Result<Vec<_>>>()?;
    Ok(NetEntry {
        name: name.to_string(),
        offset: parse_usize(offset, "net offset")?,
        spec: DenseSpec::new(sizes, acts)?,
    })
}

pub fn read<R: BufRead>(mut r: R) -> Result<Checkpoint> {
    let io = |e| Error::io("<checkpoint>", e);
    let mut line = String::new();
    r.read_line(&mut line).map_err(io)?;
    if line.trim_end() != MAGIC {
        return Err(bad("missing header"));
    }
    let mut meta = Vec::new();
    let mut nets = Vec::new();
    let mut slices = Vec::new();
    let count = loop {
        line.clear();
        if r.read_line(&mut line).map_err(io)? == 0 {
            return Err(bad("unexpected end of header"));
        }
        let l = line.trim_end_matches(['\n', '\r']);
        let (tag, rest) = l
            .split_once(' ')
            .ok_or_else(|| bad(format!("bad line `{l}`")))?;
        match tag {
            "meta" => {
                let (k, v) = rest.split_once(' ').unwrap_or((rest, ""));
                meta.push((k.to_string(), v.to_string()));
            }
            "net" => nets.push(parse_net(rest)?),
            "slice" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [name, offset, len] = parts[..] else {
                    return Err(bad(format!("bad slice line `{l}`")));
                };
                slices.push(ParamSlice {
                    name: name.to_string(),
                    offset: parse_usize(offset, "slice offset")?,
                    len: parse_usize(len, "slice length")?,
                });
            }
            "data" => break parse_usize(rest, "data count")?,
            other => return Err(bad(format!("unknown header tag `{other}`"))),
        }
    };
    let mut bytes = vec![0u8; count * 8];
    r.read_exact(&mut bytes).map_err(io)?;
    let values: Vec<f64> = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let params =
        ParamStore::from_parts(values, slices).ok_or_else(|| bad("slices do not tile the data"))?;
    for n in &nets {
        if n.offset + n.spec.param_count() > params.len() {
            return Err(bad(format!("net {} exceeds data", n.name)));
        }
    }
    Ok(Checkpoint { meta, nets, params })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let mut params = ParamStore::new();
        params.push("table", vec![1.0, -0.0, f64::MIN_POSITIVE, 1.0 / 3.0]);
        let spec = DenseSpec::mlp(vec![2, 3, 1], Activation::Tanh).unwrap();
        let off = params.len();
        params.push(
            "mixer",
            (0..spec.param_count()).map(|i| i as f64 * 0.1).collect(),
        );
        let ckpt = Checkpoint {
            meta: vec![
                ("space".into(), "3 3 2".into()),
                ("note".into(), String::new()),
            ],
            nets: vec![NetEntry {
                name: "mixer".into(),
                offset: off,
                spec,
            }],
            params,
        };
        let mut buf = Vec::new();
        write(&mut buf, &ckpt).unwrap();
        let back = read(&buf[..]).unwrap();
        assert_eq!(back, ckpt);
        assert_eq!(back.meta("space"), Some("3 3 2"));
        let bits: Vec<u64> = back.params.values().iter().map(|v| v.to_bits()).collect();
        let orig: Vec<u64> = ckpt.params.values().iter().map(|v| v.to_bits()).collect();
        assert_eq!(bits, orig);
    }

    #[test]
    fn rejects_garbage() {
        assert!(read(&b"nope\n"[..]).is_err());
        assert!(read(&b"HYPERQ-PARAMS 1\ndata 2\n\0\0"[..]).is_err());
        assert!(read(&b"HYPERQ-PARAMS 1\nslice a 0 2\ndata 1\n\0\0\0\0\0\0\0\0"[..]).is_err());
    }
}
