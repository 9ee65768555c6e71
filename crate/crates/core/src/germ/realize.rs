use super::field::Field;
use super::poly::Poly2;
use crate::error::{Error, Result};
use crate::valuation::{contact_invariants, Configuration, Point};
use crate::{Int, Rat};
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// Generic parameters are drawn from `1..=GENERIC_RANGE` over the rationals.
pub const GENERIC_RANGE: u64 = 1000;

/// How the chart at `p_k` sits over the chart at `p_{k-1}`.
///
/// In local coordinates `(a, b)` at `p_{k-1}`, where `a = 0` is the latest
/// exceptional divisor:
/// * `Affine(c)`: `a = a'`, `b = a' (b' + c)`; the point is the direction
///   `b = c a`.
/// * `Swap`: `a = a' b'`, `b = a'`; the point is where the strict transform
///   of `a = 0` meets the new divisor.
///
/// Either way `a' = 0` is the new exceptional divisor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Step {
    Affine(Rat),
    Swap,
}

/// A user-facing choice for a free point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Direction {
    Finite(Rat),
    Infinite,
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Direction> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Direction::Infinite);
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let value = match body.split_once('/') {
            Some((n, d)) => {
                let n: Int = n.parse().map_err(|_| Error::Parse(format!("bad direction '{s}'")))?;
                let d: Int = d.parse().map_err(|_| Error::Parse(format!("bad direction '{s}'")))?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("bad direction '{s}'")));
                }
                Rat::new(n, d)
            }
            None => Rat::from_integer(body.parse().map_err(|_| Error::Parse(format!("bad direction '{s}'")))?),
        };
        Ok(Direction::Finite(if neg { -value } else { value }))
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Finite(c) => write!(f, "{c}"),
            Direction::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Exceptional(usize),
    Line,
    Other,
}

/// Labels of the curves `a = 0` and `b = 0` at each point, starting from
/// `(u, v)` at `p_1` with `v = 0` the line at infinity.
fn track(steps: &[Step]) -> Vec<(Label, Label)> {
    let mut labels = vec![(Label::Other, Label::Line)];
    for (idx, step) in steps.iter().enumerate() {
        let k = idx + 2;
        let (la, lb) = labels[idx];
        let nb = match step {
            Step::Affine(c) if c.is_zero() => lb,
            Step::Affine(_) => Label::Other,
            Step::Swap => la,
        };
        labels.push((Label::Exceptional(k - 1), nb));
    }
    labels
}

fn configuration_of(steps: &[Step]) -> Result<Configuration> {
    let labels = track(steps);
    let mut points = vec![Point::Origin];
    let mut s = 1;
    for (idx, &(_, lb)) in labels.iter().enumerate().skip(1) {
        points.push(match lb {
            Label::Exceptional(j) => Point::Satellite(j),
            _ => Point::Free,
        });
        if lb == Label::Line && s == idx {
            s += 1;
        }
    }
    Configuration::new(points, s)
}

/// A configuration realized with explicit charts over an exact field.
#[derive(Debug, Clone)]
pub struct RealizedConfiguration {
    config: Configuration,
    field: Field,
    seed: Option<u64>,
    steps: Vec<Step>,
    mult: Vec<Int>,
}

impl PartialEq for RealizedConfiguration {
    fn eq(&self, other: &Self) -> bool {
        self.config == other.config && self.field == other.field && self.steps == other.steps
    }
}

/// Realizes `config` with generic free directions drawn from `seed`.
///
/// Points on the line at infinity use the direction `v = 0`; every other
/// free point gets a distinct non-zero parameter, one non-zero element being
/// held back for curvettes.
pub fn realize(config: &Configuration, field: Field, seed: u64) -> Result<RealizedConfiguration> {
    let generic: Vec<usize> = (2..=config.m()).filter(|&k| config.point(k) == Point::Free && k > config.s()).collect();
    let supply = field.nonzero_supply(GENERIC_RANGE);
    if (generic.len() as u64) + 1 > supply {
        return Err(Error::FieldTooSmall(format!(
            "{} generic directions requested, field {field} offers {supply} non-zero values",
            generic.len() + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = sample(&mut rng, supply as usize, generic.len());
    let mut params = draws.into_iter().map(|x| Rat::from_integer(Int::from(x + 1)));
    let mut steps = Vec::with_capacity(config.m().saturating_sub(1));
    for k in 2..=config.m() {
        steps.push(match config.point(k) {
            Point::Free if k <= config.s() => Step::Affine(Rat::zero()),
            Point::Free => Step::Affine(params.next().expect("one draw per generic point")),
            Point::Satellite(j) if j + 2 == k => Step::Swap,
            Point::Satellite(_) => Step::Affine(Rat::zero()),
            Point::Origin => unreachable!("validated configuration"),
        });
    }
    build(config, field, Some(seed), steps)
}

/// Realizes `config` with the given directions for its free points `p_k`,
/// `k >= 2`, in order. Satellite points are determined by the configuration.
pub fn realize_with(config: &Configuration, field: Field, directions: &[Direction]) -> Result<RealizedConfiguration> {
    let free: Vec<usize> = (2..=config.m()).filter(|&k| config.point(k) == Point::Free).collect();
    if free.len() != directions.len() {
        return Err(Error::InvalidDirection {
            position: 0,
            reason: format!("{} directions given for {} free points", directions.len(), free.len()),
        });
    }
    let mut given = free.iter().zip(directions);
    let mut steps = Vec::new();
    for k in 2..=config.m() {
        steps.push(match config.point(k) {
            Point::Free => {
                let (_, dir) = given.next().expect("counted");
                match dir {
                    Direction::Finite(c) => {
                        if !field.admits(c) {
                            return Err(Error::InvalidDirection {
                                position: k,
                                reason: format!("{c} is not an element of {field}"),
                            });
                        }
                        Step::Affine(field.reduce(c))
                    }
                    Direction::Infinite => Step::Swap,
                }
            }
            Point::Satellite(j) if j + 2 == k => Step::Swap,
            Point::Satellite(_) => Step::Affine(Rat::zero()),
            Point::Origin => unreachable!("validated configuration"),
        });
    }
    let recomputed = configuration_of(&steps);
    if let Ok(found) = &recomputed {
        if found != config {
            let k = (1..=config.m())
                .find(|&k| found.point(k) != config.point(k) || (k <= config.s()) != (k <= found.s()))
                .unwrap_or(config.m());
            return Err(Error::InvalidDirection {
                position: k,
                reason: "direction changes the proximity or line contact of the configuration".into(),
            });
        }
    }
    build(config, field, None, steps)
}

fn build(config: &Configuration, field: Field, seed: Option<u64>, steps: Vec<Step>) -> Result<RealizedConfiguration> {
    let recomputed = configuration_of(&steps)?;
    if &recomputed != config {
        return Err(Error::InvalidDirection {
            position: 0,
            reason: "realization does not reproduce the configuration".into(),
        });
    }
    let mult = contact_invariants(config).mult;
    Ok(RealizedConfiguration { config: config.clone(), field, seed, steps, mult })
}

impl RealizedConfiguration {
    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// `steps()[k - 2]` leads from `p_{k-1}` to `p_k`.
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Directions of the free points `p_k`, `k >= 2`, in order.
    pub fn directions(&self) -> Vec<Direction> {
        (2..=self.config.m())
            .filter(|&k| self.config.point(k) == Point::Free)
            .map(|k| match &self.steps[k - 2] {
                Step::Affine(c) => Direction::Finite(c.clone()),
                Step::Swap => Direction::Infinite,
            })
            .collect()
    }

    /// Configuration read back from the charts.
    pub fn recomputed_configuration(&self) -> Configuration {
        configuration_of(&self.steps).expect("built from a valid configuration")
    }

    /// Strict transform of `h` at `p_{k}` given its equation at `p_{k-1}`.
    fn strict_step(&self, h: &Poly2, step: &Step) -> Poly2 {
        let mu = h.ord().unwrap_or(0);
        let out = match step {
            Step::Affine(c) => {
                let a = Poly2::var0();
                let b = a.mul(&Poly2::var1().add(&Poly2::constant(c.clone())));
                h.compose(&a, &b, None).div_var0(mu)
            }
            Step::Swap => h.map_exponents(|i, j| (i + j - mu, i)),
        };
        out.reduce(&self.field)
    }

    /// Multiplicities of the strict transforms of `h` at `p_1, ..., p_m`.
    pub fn germ_multiplicities(&self, h: &Poly2) -> Result<Vec<u32>> {
        let h = h.reduce(&self.field);
        if h.is_zero() {
            return Err(Error::ZeroGerm);
        }
        let mut out = Vec::with_capacity(self.config.m());
        let mut cur = h;
        for k in 1..=self.config.m() {
            let ord = cur.ord().expect("non-zero");
            out.push(ord);
            if ord == 0 {
                out.resize(self.config.m(), 0);
                break;
            }
            if k < self.config.m() {
                cur = self.strict_step(&cur, &self.steps[k - 1]);
            }
        }
        Ok(out)
    }

    /// `ν(h) = Σ_j m_j mult_{p_j}(h~)` for a germ `h(u, v)` at `p_1`.
    pub fn germ_valuation(&self, h: &Poly2) -> Result<Int> {
        let mults = self.germ_multiplicities(h)?;
        Ok(mults.iter().zip(&self.mult).map(|(o, m)| m * Int::from(*o)).sum())
    }

    /// `(u, v)` written in the chart `(a', b')` of the last blow-up, where
    /// `a' = 0` is `E_m`, modulo `a'^bound`.
    pub fn pullback(&self, bound: Option<u32>) -> (Poly2, Poly2) {
        let a = Poly2::var0();
        let mut pair = (a.truncate(bound), a.mul_trunc(&Poly2::var1(), bound));
        for step in self.steps.iter().rev() {
            pair = match step {
                Step::Affine(c) => {
                    let b = pair.0.mul_trunc(&pair.1.add(&Poly2::constant(c.clone())), bound);
                    (pair.0, b)
                }
                Step::Swap => (pair.0.mul_trunc(&pair.1, bound), pair.0),
            };
            pair = (pair.0.reduce(&self.field), pair.1.reduce(&self.field));
        }
        pair
    }

    /// `h(U, V)` modulo `a'^bound`.
    pub fn pulled_back(&self, h: &Poly2, bound: Option<u32>) -> Poly2 {
        let (u, v) = self.pullback(bound);
        h.reduce(&self.field).compose(&u, &v, bound).reduce(&self.field)
    }

    /// `ν(h)` as the order of `h(U, V)` along `E_m`, if below `bound`.
    pub fn pullback_valuation(&self, h: &Poly2, bound: Option<u32>) -> Result<Option<u32>> {
        if h.reduce(&self.field).is_zero() {
            return Err(Error::ZeroGerm);
        }
        Ok(self.pulled_back(h, bound).ord0())
    }

    /// Equation at `p_1` of a curvette of `E_i`: a smooth germ transversal to
    /// `E_i` at a general point, pushed down through the charts.
    pub fn curvette_equation(&self, i: usize) -> Result<Poly2> {
        let m = self.config.m();
        if i == 0 || i > m {
            return Err(Error::IndexOutOfRange { index: i, m });
        }
        let forbidden = match self.steps.get(i - 1) {
            Some(Step::Affine(c)) => Some(c.clone()),
            _ => None,
        };
        let mut gamma = Rat::one();
        while forbidden.as_ref() == Some(&self.field.reduce(&gamma)) || self.field.reduce(&gamma).is_zero() {
            gamma += Rat::one();
        }
        let gamma = self.field.reduce(&gamma);
        // b' = 0 in the chart Affine(γ) over p_i
        let mut q = push_down(&Poly2::var1(), &Step::Affine(gamma));
        for step in self.steps[..i - 1].iter().rev() {
            q = push_down(&q, step).reduce(&self.field);
        }
        Ok(q)
    }
}

/// Image of a curve equation under one chart map, with exceptional factors
/// removed.
fn push_down(q: &Poly2, step: &Step) -> Poly2 {
    match step {
        Step::Affine(c) => {
            // b' = b / a - c
            let shift = Poly2::var1().sub(&Poly2::var0().scale(c));
            let n = q.terms().map(|(&(i, j), _)| j.saturating_sub(i)).max().unwrap_or(0);
            let max_j = q.terms().map(|(&(_, j), _)| j).max().unwrap_or(0);
            let mut powers = vec![Poly2::one()];
            for k in 0..max_j as usize {
                powers.push(powers[k].mul(&shift));
            }
            let mut out = Poly2::zero();
            for (&(i, j), coef) in q.terms() {
                for (&(pi, pj), pc) in powers[j as usize].terms() {
                    out.add_term((pi + i + n - j, pj), pc * coef);
                }
            }
            let strip = out.ord0().unwrap_or(0);
            out.div_var0(strip)
        }
        Step::Swap => {
            // a' = b, b' = a / b
            let n = q.terms().map(|(&(i, j), _)| j.saturating_sub(i)).max().unwrap_or(0);
            let out = q.map_exponents(|i, j| (j, i + n - j));
            let strip = out.ord1().unwrap_or(0);
            out.map_exponents(|i, j| (i, j - strip))
        }
    }
}
