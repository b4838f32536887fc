//! Named parameter tensors with gradient and momentum buffers, plus the
//! binary checkpoint format.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use ndarray::{ArrayD, IxDyn};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamId(pub usize);

#[derive(Debug, Clone)]
pub struct Tensor {
    pub name: String,
    pub value: ArrayD<f64>,
    pub grad: ArrayD<f64>,
    pub velocity: ArrayD<f64>,
    /// Updated by the optimizer (false for BN running statistics).
    pub trainable: bool,
    /// Weight decay applies (false for biases and BN parameters).
    pub decay: bool,
}

#[derive(Debug, Clone, Default)]
pub struct ParamStore {
    pub tensors: Vec<Tensor>,
}

impl ParamStore {
    pub fn add(
        &mut self,
        name: impl Into<String>,
        value: ArrayD<f64>,
        trainable: bool,
        decay: bool,
    ) -> ParamId {
        let shape = value.raw_dim();
        self.tensors.push(Tensor {
            name: name.into(),
            value,
            grad: ArrayD::zeros(shape.clone()),
            velocity: ArrayD::zeros(shape),
            trainable,
            decay,
        });
        ParamId(self.tensors.len() - 1)
    }

    pub fn value(&self, id: ParamId) -> &ArrayD<f64> {
        &self.tensors[id.0].value
    }

    pub fn value_mut(&mut self, id: ParamId) -> &mut ArrayD<f64> {
        &mut self.tensors[id.0].value
    }

    pub fn grad_mut(&mut self, id: ParamId) -> &mut ArrayD<f64> {
        &mut self.tensors[id.0].grad
    }

    pub fn zero_grads(&mut self) {
        for t in &mut self.tensors {
            t.grad.fill(0.0);
        }
    }

    pub fn assert_values_finite(&self) -> Result<()> {
        for t in &self.tensors {
            if !t.value.iter().all(|v| v.is_finite()) {
                return Err(Error::Numerical(format!(
                    "parameter {} became non-finite",
                    t.name
                )));
            }
        }
        Ok(())
    }
}

/// Fan-in scaled uniform init: U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
pub fn uniform_init(rng: &mut ChaCha8Rng, shape: &[usize], fan_in: usize) -> ArrayD<f64> {
    let bound = 1.0 / (fan_in as f64).sqrt();
    let mut arr = ArrayD::zeros(IxDyn(shape));
    for v in arr.iter_mut() {
        *v = rng.gen_range(-bound..bound);
    }
    arr
}

// ---------------------------------------------------------------------------
// Checkpoint file

const MAGIC: &[u8; 8] = b"MSEGCKPT";
const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckpointMeta {
    pub spec_json: String,
    pub spec_hash: [u8; 32],
    pub epoch: u64,
    pub seed: u64,
}

pub fn spec_hash(spec_json: &str) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(spec_json.as_bytes());
    h.finalize().into()
}

/// Versioned header (spec hash, epoch, seed) followed by raw tensors.
pub fn save_checkpoint(
    path: impl AsRef<Path>,
    store: &ParamStore,
    spec_json: &str,
    epoch: u64,
    seed: u64,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    let spec_bytes = spec_json.as_bytes();
    w.write_all(&(spec_bytes.len() as u32).to_le_bytes())?;
    w.write_all(spec_bytes)?;
    w.write_all(&spec_hash(spec_json))?;
    w.write_all(&epoch.to_le_bytes())?;
    w.write_all(&seed.to_le_bytes())?;
    w.write_all(&(store.tensors.len() as u32).to_le_bytes())?;
    for t in &store.tensors {
        let name = t.name.as_bytes();
        w.write_all(&(name.len() as u32).to_le_bytes())?;
        w.write_all(name)?;
        w.write_all(&(t.value.ndim() as u32).to_le_bytes())?;
        for &d in t.value.shape() {
            w.write_all(&(d as u64).to_le_bytes())?;
        }
        for v in t.value.iter() {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    Ok(())
}

/// Read a checkpoint into (meta, named tensors).
pub fn load_checkpoint(
    path: impl AsRef<Path>,
) -> Result<(CheckpointMeta, Vec<(String, ArrayD<f64>)>)> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Checkpoint("bad magic".into()));
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(Error::Checkpoint(format!("unsupported version {version}")));
    }
    let spec_len = read_u32(&mut r)? as usize;
    let mut spec_bytes = vec![0u8; spec_len];
    r.read_exact(&mut spec_bytes)?;
    let spec_json = String::from_utf8(spec_bytes)
        .map_err(|_| Error::Checkpoint("spec header is not utf-8".into()))?;
    let mut stored_hash = [0u8; 32];
    r.read_exact(&mut stored_hash)?;
    if stored_hash != spec_hash(&spec_json) {
        return Err(Error::Checkpoint("spec hash mismatch".into()));
    }
    let epoch = read_u64(&mut r)?;
    let seed = read_u64(&mut r)?;
    let count = read_u32(&mut r)? as usize;
    let mut tensors = Vec::with_capacity(count);
    for _ in 0..count {
        let name_len = read_u32(&mut r)? as usize;
        let mut name = vec![0u8; name_len];
        r.read_exact(&mut name)?;
        let name =
            String::from_utf8(name).map_err(|_| Error::Checkpoint("bad tensor name".into()))?;
        let ndim = read_u32(&mut r)? as usize;
        let mut shape = Vec::with_capacity(ndim);
        for _ in 0..ndim {
            shape.push(read_u64(&mut r)? as usize);
        }
        let len: usize = shape.iter().product();
        let mut data = Vec::with_capacity(len);
        let mut buf = [0u8; 8];
        for _ in 0..len {
            r.read_exact(&mut buf)?;
            data.push(f64::from_le_bytes(buf));
        }
        let arr = ArrayD::from_shape_vec(IxDyn(&shape), data)
            .map_err(|e| Error::Checkpoint(format!("tensor {name}: {e}")))?;
        tensors.push((name, arr));
    }
    Ok((
        CheckpointMeta {
            spec_json,
            spec_hash: stored_hash,
            epoch,
            seed,
        },
        tensors,
    ))
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}
