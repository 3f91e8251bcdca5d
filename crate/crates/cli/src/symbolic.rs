//! Integer and quadratic-surd labels for eigenvalue groups.

use eccentra::ExactPoly;
use num_bigint::BigInt;
use num_traits::Zero;

const MATCH_TOLERANCE: f64 = 1e-6;

fn int_poly(c: &[i64]) -> ExactPoly {
    ExactPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
}

fn divides(p: &ExactPoly, d: &ExactPoly) -> bool {
    let (_, r) = p.div_rem(d);
    r.is_zero()
}

/// Splits `d` into `k^2 m` with `m` squarefree.
fn split_square(d: i64) -> (i64, i64) {
    let (mut k, mut m) = (1, d);
    let mut f = 2;
    while f * f <= m {
        while m % (f * f) == 0 {
            m /= f * f;
            k *= f;
        }
        f += 1;
    }
    (k, m)
}

fn surd(k: i64, m: i64) -> String {
    match k {
        1 => format!("sqrt({m})"),
        _ => format!("{k}sqrt({m})"),
    }
}

/// Root of `x^2 + b x + c` on the side given by `plus`.
pub fn format_quadratic_root(b: i64, c: i64, plus: bool) -> String {
    let (k, m) = split_square(b * b - 4 * c);
    let sign = if plus { '+' } else { '-' };
    if b % 2 == 0 && k % 2 == 0 {
        let (a, k) = (-b / 2, k / 2);
        match (a, plus) {
            (0, true) => surd(k, m),
            (0, false) => format!("-{}", surd(k, m)),
            _ => format!("{a}{sign}{}", surd(k, m)),
        }
    } else if b == 0 {
        format!("{}{}/2", if plus { "" } else { "-" }, surd(k, m))
    } else {
        format!("({}{sign}{})/2", -b, surd(k, m))
    }
}

fn integer_label(p: &ExactPoly, v: f64) -> Option<String> {
    let r = v.round();
    if (v - r).abs() > MATCH_TOLERANCE {
        return None;
    }
    let r = r as i64;
    p.eval(&BigInt::from(r)).is_zero().then(|| r.to_string())
}

fn quadratic_label(p: &ExactPoly, v: f64, others: &[f64]) -> Option<String> {
    for &w in others {
        let (bf, cf) = (-(v + w), v * w);
        let (b, c) = (bf.round(), cf.round());
        if (bf - b).abs() > MATCH_TOLERANCE || (cf - c).abs() > MATCH_TOLERANCE {
            continue;
        }
        let (b, c) = (b as i64, c as i64);
        let disc = b * b - 4 * c;
        if disc <= 0 || split_square(disc).1 == 1 {
            continue;
        }
        if divides(p, &int_poly(&[c, b, 1])) {
            return Some(format_quadratic_root(b, c, v > w));
        }
    }
    None
}

/// Labels each group value that is an integer root or a root of an
/// irreducible monic quadratic factor of `p` whose conjugate is also a group.
pub fn label_groups(p: &ExactPoly, groups: &[(f64, usize)]) -> Vec<Option<String>> {
    let values: Vec<f64> = groups.iter().map(|g| g.0).collect();
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            integer_label(p, v).or_else(|| {
                let others: Vec<f64> = values.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &w)| w).collect();
                quadratic_label(p, v, &others)
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_formats() {
        assert_eq!(format_quadratic_root(-8, 1, false), "4-sqrt(15)");
        assert_eq!(format_quadratic_root(-9, 2, false), "(9-sqrt(73))/2");
        assert_eq!(format_quadratic_root(-10, 1, false), "5-2sqrt(6)");
        assert_eq!(format_quadratic_root(-2, -2, true), "1+sqrt(3)");
        assert_eq!(format_quadratic_root(0, -2, false), "-sqrt(2)");
        assert_eq!(format_quadratic_root(0, -5, true), "sqrt(5)");
    }

    #[test]
    fn labels_integer_and_surd_groups() {
        // (x - 2)(x^2 - 2x - 2)
        let p = int_poly(&[4, 2, -4, 1]);
        let s3 = 3f64.sqrt();
        let groups = [(1.0 + s3, 1), (2.0, 1), (1.0 - s3, 1)];
        let labels = label_groups(&p, &groups);
        assert_eq!(labels, vec![Some("1+sqrt(3)".into()), Some("2".into()), Some("1-sqrt(3)".into())]);
    }
}
