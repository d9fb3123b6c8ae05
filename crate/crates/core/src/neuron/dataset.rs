use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::conformal::{
    embed_point, extract_point, normalize_object, sphere_ipns, EuclideanVector,
};
use crate::error::{Error, Result};
use crate::mvcore::{Multivector, Signature};
use crate::versor::{Mode, Versor};

/// An input object and the desired output.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub x: Multivector,
    pub t: Multivector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub count: usize,
    pub seed: u64,
    /// Standard deviation of Gaussian noise added to every target
    /// coefficient.
    pub noise: f64,
    /// Mix dual spheres into the inputs.
    pub spheres: bool,
    /// Mix direct lines into the inputs.
    pub lines: bool,
    /// Inputs whose target has a larger coefficient norm are redrawn, so
    /// inversions do not produce points near infinity.
    pub max_target_norm: f64,
}

impl DatasetSpec {
    pub fn points(count: usize, seed: u64) -> Self {
        DatasetSpec {
            count,
            seed,
            noise: 0.0,
            spheres: false,
            lines: false,
            max_target_norm: 64.0,
        }
    }
}

const BOX: f64 = 2.0;

fn random_point(rng: &mut ChaCha8Rng) -> EuclideanVector {
    EuclideanVector::new(
        rng.random_range(-BOX..=BOX),
        rng.random_range(-BOX..=BOX),
        rng.random_range(-BOX..=BOX),
    )
}

/// `count` random points in `[-2, 2]^3` and their images under `v`.
pub fn generate_dataset(
    v: &Versor,
    mode: Mode,
    count: usize,
    seed: u64,
    noise: f64,
) -> Result<Vec<Sample>> {
    let spec = DatasetSpec {
        noise,
        ..DatasetSpec::points(count, seed)
    };
    generate_dataset_with(v, mode, &spec)
}

/// Point targets are rescaled to unit `e0` weight; other targets are kept
/// as produced by the sandwich.
pub fn generate_dataset_with(v: &Versor, mode: Mode, spec: &DatasetSpec) -> Result<Vec<Sample>> {
    if spec.count == 0 {
        return Err(Error::Domain("dataset needs at least one sample".into()));
    }
    if !(spec.noise.is_finite() && spec.noise >= 0.0) {
        return Err(Error::Domain(format!(
            "noise must be >= 0, got {}",
            spec.noise
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let mut kinds = vec![0u8];
    if spec.spheres {
        kinds.push(1);
    }
    if spec.lines {
        kinds.push(2);
    }
    let mut out = Vec::with_capacity(spec.count);
    let mut attempts = 0usize;
    while out.len() < spec.count {
        attempts += 1;
        if attempts > 1000 * spec.count {
            return Err(Error::Domain(
                "could not draw inputs with bounded targets".into(),
            ));
        }
        let x = match kinds[out.len() % kinds.len()] {
            0 => embed_point(random_point(&mut rng)),
            1 => {
                let r = rng.random_range(0.2..1.5);
                sphere_ipns(random_point(&mut rng), r)?
            }
            _ => {
                let (p, q) = (random_point(&mut rng), random_point(&mut rng));
                if (p - q).norm() < 0.1 {
                    continue;
                }
                embed_point(p) ^ embed_point(q) ^ crate::conformal::einf()
            }
        };
        let image = v.apply(&x, mode)?;
        let mut t = if extract_point(&image).is_ok() {
            normalize_object(&image)
        } else {
            image
        };
        let norm = t.coeff_norm();
        if !norm.is_finite() || norm > spec.max_target_norm {
            continue;
        }
        if spec.noise > 0.0 {
            for c in t.coeffs_mut() {
                *c += spec.noise * normal.sample(&mut rng);
            }
        }
        out.push(Sample { x, t });
    }
    Ok(out)
}

/// One sample per line: `x -> t` in the multivector text form.
pub fn write_dataset<W: Write>(mut w: W, samples: &[Sample]) -> std::io::Result<()> {
    for s in samples {
        writeln!(w, "{} -> {}", s.x, s.t)?;
    }
    Ok(())
}

/// Reads the format of [`write_dataset`]; blank lines and lines starting
/// with `#` are skipped.
pub fn read_dataset<R: BufRead>(r: R) -> Result<Vec<Sample>> {
    let mut out = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Domain(format!("read failed: {e}")))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (x, t) = line
            .split_once("->")
            .ok_or_else(|| Error::Literal(format!("line {}: expected 'x -> t'", lineno + 1)))?;
        let parse = |s: &str| {
            Multivector::parse_literal(s.trim(), Signature::CGA)
                .map_err(|e| Error::Literal(format!("line {}: {e}", lineno + 1)))
        };
        out.push(Sample {
            x: parse(x)?,
            t: parse(t)?,
        });
    }
    Ok(out)
}
