//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn num(rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..4) {
        0 => rng.random_range(0..10).to_string(),
        1 => format!("{}", (rng.random_range(-40.0..40.0f64) * 8.0).round() / 8.0),
        2 => format!("{}", rng.random_range(-3.0..3.0f64)),
        _ => format!("{:e}", rng.random_range(1e-6..1e6f64)),
    }
}

fn coord(rng: &mut ChaCha8Rng) -> String {
    format!("{:.3}", rng.random_range(-3.0..3.0f64))
}

fn triple(rng: &mut ChaCha8Rng) -> String {
    format!("{}, {}, {}", coord(rng), coord(rng), coord(rng))
}

fn blade(rng: &mut ChaCha8Rng) -> String {
    let bits: u32 = rng.random_range(1..32);
    let digits: String = (0..5)
        .filter(|i| bits & (1 << i) != 0)
        .map(|i| char::from(b'1' + i as u8))
        .collect();
    format!("e{digits}")
}

fn euclid_bivector(rng: &mut ChaCha8Rng) -> &'static str {
    ["e12", "e13", "e23", "-e12", "(0.6 * e12 + 0.8 * e23)"][rng.random_range(0..5)]
}

/// A constructor or versor call that always evaluates.
fn call(rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..9) {
        0 => format!("point({})", triple(rng)),
        1 => format!(
            "sphere({}; {:.3})",
            triple(rng),
            rng.random_range(0.1..2.0f64)
        ),
        2 => format!("plane(0, 0, 1; {})", coord(rng)),
        3 => format!("translator({})", triple(rng)),
        4 => format!("rotor({}; {})", euclid_bivector(rng), coord(rng)),
        5 => format!("motor({}; e12; {})", triple(rng), coord(rng)),
        6 => format!(
            "scalor({}; {:.3})",
            triple(rng),
            rng.random_range(0.2..4.0f64)
        ),
        7 => format!("mirror_plane(1, 0, 0; {})", coord(rng)),
        _ => format!("mirror_sphere({}; 1.5)", triple(rng)),
    }
}

fn leaf(rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..6) {
        0 => num(rng),
        1 | 2 => blade(rng),
        3 => ["e0", "einf", "E", "I", "pi"][rng.random_range(0..5)].to_string(),
        _ => call(rng),
    }
}

/// Random well-formed expression over numbers, blades, constants,
/// constructors and the algebraic operators. Evaluation always succeeds.
pub fn expression(rng: &mut ChaCha8Rng, depth: u32) -> String {
    if depth == 0 || rng.random_bool(0.25) {
        return leaf(rng);
    }
    match rng.random_range(0..10) {
        0 => format!("-{}", expression(rng, depth - 1)),
        1 => format!("~({})", expression(rng, depth - 1)),
        2 => format!("!{}", expression(rng, depth - 1)),
        3 => format!("dual({})", expression(rng, depth - 1)),
        4 => format!(
            "grade({}, {})",
            expression(rng, depth - 1),
            rng.random_range(0..6)
        ),
        _ => {
            let op = ["+", "-", "*", "^", "|"][rng.random_range(0..5)];
            let a = expression(rng, depth - 1);
            let b = expression(rng, depth - 1);
            if rng.random_bool(0.5) {
                format!("({a}) {op} ({b})")
            } else {
                format!("{a} {op} {b}")
            }
        }
    }
}

fn object(rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..8) {
        0 => format!("\"point({})\"", triple(rng)),
        1 => {
            let (x, y, z): (f64, f64, f64) = (
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            );
            format!(
                "{{\"e1\": {x}, \"e2\": {y}, \"e3\": {z}, \"e0\": 1, \"einf\": {}}}",
                0.5 * (x * x + y * y + z * z)
            )
        }
        2 => format!(
            "\"sphere({}; {:.3})\"",
            triple(rng),
            rng.random_range(0.2..2.0f64)
        ),
        3 => format!("\"plane({}; {})\"", triple(rng), coord(rng)),
        4 => format!("\"line(point({}), point({}))\"", triple(rng), triple(rng)),
        5 => format!(
            "\"circle(point(1, 0, 0), point(0, 1, 0), point({}, {}, 1))\"",
            coord(rng),
            coord(rng)
        ),
        6 => format!("\"pair(point({}), point({}))\"", triple(rng), triple(rng)),
        _ => format!("\"flat(point({}))\"", triple(rng)),
    }
}

/// A scene file with a handful of objects and two named versors.
pub fn scene(rng: &mut ChaCha8Rng) -> String {
    let n = rng.random_range(3..9);
    let objects: Vec<String> = (0..n)
        .map(|i| format!("    \"obj{i}\": {}", object(rng)))
        .collect();
    let tolerance = if rng.random_bool(0.5) {
        ",\n  \"tolerance\": {\"abs\": 1e-12, \"rel\": 1e-9}"
    } else {
        ""
    };
    format!(
        "{{\n  \"objects\": {{\n{}\n  }},\n  \"versors\": {{\n    \"move\": \"motor({}; e12; {})\",\n    \"flip\": \"mirror_plane(0, 1, 0; {})\"\n  }}{tolerance}\n}}\n",
        objects.join(",\n"),
        triple(rng),
        coord(rng),
        coord(rng)
    )
}

/// Versor specs applied to generated scenes.
pub const SCENE_VERSORS: [&str; 5] = [
    "move",
    "flip",
    "mirror_sphere(0.1, 0.2, 0.3; 1.3)",
    "scalor(1, 0, 0; 1.5)",
    "rotor(e23; 0.7)",
];
