use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::generators::BlowupSpec;
use crate::graph::{Graph, Triangle};
use crate::rational::{int, rat, Rational};

/// Edge weights `y` certifying that no fractional decomposition exists:
/// every triangle has `Σ_{e∈X} y_e ≥ 0` while `Σ_e y_e < 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    #[serde(with = "rational_vec")]
    pub y: Vec<Rational>,
}

mod rational_vec {
    use super::Rational;
    use crate::rational::{fmt_rational, parse_rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FarkasCheck {
    pub valid: bool,
    #[serde(with = "crate::rational::serde_rational")]
    pub total: Rational,
    /// Smallest triangle sum and where it occurs (none for triangle-free graphs).
    pub min_triangle: Option<(Triangle, String)>,
}

pub fn verify_farkas(g: &Graph, cert: &FarkasCertificate) -> FarkasCheck {
    if cert.y.len() != g.m() {
        return FarkasCheck { valid: false, total: Rational::zero(), min_triangle: None };
    }
    let total = cert.y.iter().fold(Rational::zero(), |acc, y| acc + y);
    let mut min: Option<(Triangle, Rational)> = None;
    for t in g.triangles() {
        let sum = t.edges().iter().fold(Rational::zero(), |acc, &(u, v)| {
            acc + &cert.y[g.edge_id(u, v).expect("triangle edge")]
        });
        if min.as_ref().is_none_or(|(_, m)| sum < *m) {
            min = Some((t, sum));
        }
    }
    let triangles_ok = min.as_ref().is_none_or(|(_, m)| !m.is_negative());
    FarkasCheck {
        valid: triangles_ok && total.is_negative(),
        total,
        min_triangle: min.map(|(t, s)| (t, crate::rational::fmt_rational(&s))),
    }
}

/// `+1` on edges inside a part, `−1/2` on edges between parts.
pub fn c4_blowup_certificate(spec: &BlowupSpec, g: &Graph) -> FarkasCertificate {
    let y = g
        .edges()
        .map(|(u, v)| if spec.part_of(u) == spec.part_of(v) { int(1) } else { rat(-1, 2) })
        .collect();
    FarkasCertificate { y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete_graph;

    #[test]
    fn blowup_certificates_verify() {
        for h in [3usize, 9] {
            let spec = BlowupSpec::new(h).unwrap();
            let g = spec.build();
            let check = verify_farkas(&g, &c4_blowup_certificate(&spec, &g));
            assert!(check.valid, "h={h}");
            assert_eq!(check.total, int(-2 * h as i64));
            assert_eq!(check.min_triangle.unwrap().1, "0/1");
        }
    }

    #[test]
    fn all_negative_on_complete_graph_fails() {
        let g = complete_graph(7);
        let cert = FarkasCertificate { y: vec![int(-1); g.m()] };
        let check = verify_farkas(&g, &cert);
        assert!(!check.valid);
        assert_eq!(check.min_triangle.unwrap().1, "-3/1");
    }

    #[test]
    fn wrong_length_is_invalid() {
        let g = complete_graph(4);
        assert!(!verify_farkas(&g, &FarkasCertificate { y: vec![int(-1)] }).valid);
    }
}
