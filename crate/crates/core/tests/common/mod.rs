#![allow(dead_code)]

use neil_core::hardy_alpha::Alpha;
use neil_core::{Complex64, TrigPoly, Weight};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rand_c<R: Rng>(rng: &mut R, r: f64) -> Complex64 {
    c(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

pub fn rand_alpha<R: Rng>(rng: &mut R) -> Alpha {
    Alpha::new(rand_c(rng, 1.0), rand_c(rng, 1.0)).unwrap()
}

pub fn rand_poly<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> TrigPoly {
    TrigPoly::new(lo, (lo..=hi).map(|_| rand_c(rng, 1.0)).collect())
}

/// Random point with `|w| <= r`.
pub fn rand_disc<R: Rng>(rng: &mut R, r: f64) -> Complex64 {
    Complex64::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Random polynomial in `H^2_alpha` of degree at most `deg`.
pub fn rand_member<R: Rng>(rng: &mut R, alpha: &Alpha, deg: i64) -> TrigPoly {
    let lead = alpha.lead_vector().scale(rand_c(rng, 1.0));
    let tail = TrigPoly::from_terms(&(2..=deg.max(2)).map(|j| (j, rand_c(rng, 1.0))).collect::<Vec<_>>());
    &lead + &tail
}

/// Random polynomial in the Neil algebra of degree at most `deg`.
pub fn rand_neil<R: Rng>(rng: &mut R, deg: i64) -> TrigPoly {
    let mut terms = vec![(0, rand_c(rng, 1.0))];
    terms.extend((2..=deg.max(2)).map(|j| (j, rand_c(rng, 1.0))));
    TrigPoly::from_terms(&terms)
}

/// Built-in weight densities, used to build rotated copies.
pub fn weight_density(name: &str) -> fn(f64) -> f64 {
    match name {
        "one" => |_| 1.0,
        "abs1pz2" => |t| 1.25 + t.cos(),
        "abs1pz2sq" => |t| (1.25 + t.cos()).powi(2),
        "exp2cos" => |t| (2.0 * t.cos()).exp(),
        _ => panic!("unknown weight {name}"),
    }
}

pub fn rotated_weight(name: &str, s: f64, m: usize) -> Weight {
    let f = weight_density(name);
    Weight::from_fn(format!("{name}@{s}"), m, move |t| f(t - s)).unwrap()
}
