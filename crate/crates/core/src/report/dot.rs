use crate::valuation::Configuration;
use std::fmt::Write;

/// Dual graph of the configuration with the strict transform of the line at
/// infinity, as a DOT `graph`.
///
/// Vertices `L` and `E1..Em` are labelled with their self-intersections.
/// `E_i` and `E_j` (`i < j`) meet iff `p_j -> p_i` and no later point is
/// proximate to both; `L` meets only `E_s`.
pub fn export_dot(config: &Configuration) -> String {
    let m = config.m();
    let mut out = String::from("graph dual {\n");
    let s = config.s() as i64;
    writeln!(out, "  L [label=\"L ({})\"];", 1 - s).expect("string write");
    for i in 1..=m {
        let sq = -1 - config.proximate_points(i).len() as i64;
        writeln!(out, "  E{i} [label=\"E{i} ({sq})\"];").expect("string write");
    }
    writeln!(out, "  L -- E{};", config.s()).expect("string write");
    for i in 1..=m {
        for j in i + 1..=m {
            let meets = config.is_proximate(j, i)
                && !(j + 1..=m).any(|k| config.is_proximate(k, i) && config.is_proximate(k, j));
            if meets {
                writeln!(out, "  E{i} -- E{j};").expect("string write");
            }
        }
    }
    out.push_str("}\n");
    out
}
