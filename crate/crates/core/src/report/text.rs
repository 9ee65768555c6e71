use super::{Outcome, Report};
use std::fmt::Write;

fn join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Human-readable rendering of a report.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let c = &report.configuration;
    let inv = &report.invariants;
    let fam = &report.d_family;
    let w = &mut out;
    writeln!(w, "configuration: m = {}, s = {}", c.m, c.s).unwrap();
    writeln!(w, "g = {}", inv.g).unwrap();
    writeln!(w, "maximal contact values: ({})", join(&inv.beta_bar)).unwrap();
    let puiseux: Vec<String> = inv.puiseux.iter().map(|p| p.0.to_string()).collect();
    writeln!(w, "puiseux exponents: ({})", puiseux.join(", ")).unwrap();
    writeln!(w, "e: ({})", join(&inv.e)).unwrap();
    writeln!(w, "N: ({})", join(&inv.n)).unwrap();
    writeln!(w, "multiplicities: ({})", join(&inv.multiplicities)).unwrap();
    writeln!(w, "d: ({})", join(&fam.d)).unwrap();
    writeln!(w, "D_i^2 (i = 1..m): ({})", join(&fam.self_intersections)).unwrap();
    writeln!(w, "D_i.K (i = 0..m): ({})", join(&fam.canonical_pairings)).unwrap();
    if let Some(v) = &report.verdicts {
        let rows: [(&str, Outcome); 5] = [
            ("nonpositive", v.nonpositive),
            ("negative", v.negative),
            ("characteristic cone closed", v.characteristic_cone_closed),
            ("cox finitely generated", v.cox_finitely_generated),
            ("anticanonical -inf", v.anticanonical_minus_infinity),
        ];
        for (name, outcome) in rows {
            writeln!(w, "{name}: {outcome}").unwrap();
        }
    }
    if let Some(cert) = &report.certificates {
        let n = &cert.nonpositive;
        writeln!(w, "d_m^2 = {}, terminal value = {}, D_m^2 = {}", n.d_m_squared, n.terminal, n.self_intersection)
            .unwrap();
        if let Some(k) = &cert.negative.kappa {
            writeln!(w, "kappa(D_m) = {} ({})", k.kappa, k.basis).unwrap();
        }
        if let Some(a) = &cert.anticanonical {
            if let Some(i) = a.first_positive {
                writeln!(w, "first positive D_i.K at i = {i}").unwrap();
            }
        }
        if let Some(d) = &cert.delta {
            writeln!(w, "delta: ({}), semigroup condition holds: {}", join(&d.delta), d.realizable).unwrap();
        }
    }
    out
}
