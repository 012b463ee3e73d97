use std::collections::BTreeMap;

use schouten_core::constraints::{system_vars, RHO1};
use schouten_core::poly::MultiPoly;
use schouten_core::scalar::FieldScalar;

/// Parameter points with rho1 != rho2, beta != 0 and no accidental
/// coincidences between rho1, rho2 and alpha.
pub fn points() -> Vec<BTreeMap<usize, FieldScalar>> {
    [["3", "-5", "7/2", "2"], ["-1/3", "4", "11", "-3/7"], ["2", "9", "-6", "5"]]
        .iter()
        .map(|p| (0..4).map(|k| (RHO1 + k, p[k].parse().unwrap())).collect())
        .collect()
}

/// Parses displayed equations written with `e1..e4` for the signs.
pub fn displayed(lines: &[&str], signs: [i8; 4]) -> Vec<MultiPoly> {
    let mut vs = system_vars();
    let eps: BTreeMap<usize, FieldScalar> =
        (0..4).map(|i| (vs.push(&format!("e{}", i + 1)), FieldScalar::from_int(signs[i] as i64))).collect();
    lines.iter().map(|l| vs.parse(l).unwrap().substitute_values(&eps)).collect()
}

pub const SPLIT_PAIR: [&str; 20] = [
    "(C_1_2^3*e3 - C_1_3^2*e2 - C_2_3^1*e1)*(rho1 - rho2)",
    "(C_1_2^3*e3 + C_1_3^2*e2 + C_2_3^1*e1)*(rho1 - rho2)",
    "(C_1_2^4*e4 - C_1_4^2*e2 - C_2_4^1*e1)*(rho1 - rho2)",
    "(C_1_2^4*e4 + C_1_4^2*e2 + C_2_4^1*e1)*(rho1 - rho2)",
    "(C_1_3^4*e4 + C_1_4^3*e3 - C_3_4^1*e1)*(rho1 - rho2)",
    "(C_1_3^4*e4 + C_1_4^3*e3 + C_3_4^1*e1)*(rho1 - rho2)",
    "(C_2_3^4*e4 + C_2_4^3*e3 - C_3_4^2*e2)*(rho1 - rho2)",
    "(C_2_3^4*e4 + C_2_4^3*e3 + C_3_4^2*e2)*(rho1 - rho2)",
    "C_2_4^2*e2*(rho1 - rho2)",
    "C_3_4^1*e1*(rho1 - rho2)",
    "C_1_2^3*e3*(rho1 - rho2)",
    "C_1_2^4*e4*(rho1 - rho2)",
    "C_1_3^1*e1*(rho1 - rho2)",
    "C_1_3^3*e3*(rho1 - rho2)",
    "C_1_4^1*e1*(rho1 - rho2)",
    "C_1_4^4*e4*(rho1 - rho2)",
    "C_2_3^2*e2*(rho1 - rho2)",
    "C_2_3^3*e3*(rho1 - rho2)",
    "C_2_4^4*e4*(rho1 - rho2)",
    "C_3_4^2*e2*(rho1 - rho2)",
];

pub const COMPLEX_PAIR: [&str; 24] = [
    "(rho1 - alpha)*C_1_4^1 - beta*C_1_3^1",
    "(rho1 - alpha)*C_1_3^1 + beta*C_1_4^1",
    "(rho2 - alpha)*C_2_4^2 - beta*C_2_3^2",
    "(rho2 - alpha)*C_2_3^2 + beta*C_2_4^2",
    "(rho1 - rho2)*C_1_2^1",
    "(rho1 - rho2)*C_1_2^2",
    "beta*C_3_4^3",
    "beta*C_3_4^4",
    "(beta*(C_1_3^4 + 3*C_1_4^3) + 2*(rho1 - alpha)*C_1_4^4)*e3 + beta*C_3_4^1*e1",
    "(beta*(3*C_1_3^4 + C_1_4^3) - 2*(rho1 - alpha)*C_1_3^3)*e3 + beta*C_3_4^1*e1",
    "(beta*(C_2_3^4 + 3*C_2_4^3) + 2*(rho2 - alpha)*C_2_4^4)*e3 + beta*C_3_4^2*e2",
    "(beta*(3*C_2_3^4 + C_2_4^3) - 2*(rho2 - alpha)*C_2_3^3)*e3 + beta*C_3_4^2*e2",
    "((rho1 + rho2 - 2*alpha)*C_1_2^3 - 2*beta*C_1_2^4)*e3 + (rho1 - rho2)*(C_1_3^2*e2 + C_2_3^1*e1)",
    "((rho1 + rho2 - 2*alpha)*C_1_2^4 + 2*beta*C_1_2^3)*e3 - (rho1 - rho2)*(C_1_4^2*e2 + C_2_4^1*e1)",
    "((alpha - rho1)*(C_1_3^4 - C_1_4^3) - 2*beta*C_1_3^3)*e3 - (alpha - rho1)*C_3_4^1*e1",
    "((alpha - rho1)*(C_1_3^4 - C_1_4^3) - 2*beta*C_1_4^4)*e3 + (alpha - rho1)*C_3_4^1*e1",
    "((alpha - rho2)*(C_2_4^3 - C_2_3^4) + 2*beta*C_2_3^3)*e3 + (alpha - rho2)*C_3_4^2*e2",
    "((alpha - rho2)*(C_2_4^3 - C_2_3^4) + 2*beta*C_2_4^4)*e3 - (alpha - rho2)*C_3_4^2*e2",
    "(rho1 - alpha)*C_3_4^1*e1 - beta*(C_1_3^3 - C_1_4^4)*e3",
    "(rho2 - alpha)*C_3_4^2*e2 - beta*(C_2_3^3 - C_2_4^4)*e3",
    "((rho2 - 2*rho1 + alpha)*C_2_3^1 - beta*C_2_4^1)*e1 + (alpha*C_1_3^2 - rho2*C_1_3^2 - beta*C_1_4^2)*e2 \
     + (alpha*C_1_2^3 - rho2*C_1_2^3 + beta*C_1_2^4)*e3",
    "((rho2 - 2*rho1 + alpha)*C_2_4^1 + beta*C_2_3^1)*e1 + (alpha*C_1_4^2 - rho2*C_1_4^2 + beta*C_1_3^2)*e2 \
     - (alpha*C_1_2^4 - rho2*C_1_2^4 - beta*C_1_2^3)*e3",
    "((rho1 - 2*rho2 + alpha)*C_1_3^2 - beta*C_1_4^2)*e2 + (alpha*C_2_3^1 - rho1*C_2_3^1 - beta*C_2_4^1)*e1 \
     - (alpha*C_1_2^3 - rho1*C_1_2^3 + beta*C_1_2^4)*e3",
    "((rho1 - 2*rho2 + alpha)*C_1_4^2 + beta*C_1_3^2)*e2 + (alpha*C_2_4^1 - rho1*C_2_4^1 + beta*C_2_3^1)*e1 \
     + (alpha*C_1_2^4 - rho1*C_1_2^4 - beta*C_1_2^3)*e3",
];
