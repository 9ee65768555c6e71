use crate::error::{Error, Result};
use crate::Int;
use num_traits::{One, Zero};

/// One infinitely near point of the blow-up sequence.
///
/// Proximity to the immediate predecessor is implicit for every point after
/// the first, so a satellite only records its second proximity target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point {
    Origin,
    Free,
    /// Satellite point; the payload is the 1-based index of the earlier
    /// exceptional divisor it also lies on.
    Satellite(usize),
}

/// The blow-up data of a plane divisorial valuation plus the line contact `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    points: Vec<Point>,
    s: usize,
}

impl Configuration {
    /// Builds and validates a configuration.
    pub fn new(points: Vec<Point>, s: usize) -> Result<Self> {
        let config = Configuration { points, s };
        config.check()?;
        Ok(config)
    }

    /// Free chain of length `m` with line contact `s`.
    pub fn free_chain(m: usize, s: usize) -> Result<Self> {
        let mut points = vec![Point::Free; m];
        if let Some(first) = points.first_mut() {
            *first = Point::Origin;
        }
        Configuration::new(points, s)
    }

    fn check(&self) -> Result<()> {
        let m = self.points.len();
        if m == 0 {
            return Err(Error::BadLength("m must be at least 1".into()));
        }
        if self.s == 0 || self.s > m {
            return Err(Error::BadLength(format!("s = {} must lie in 1..={m}", self.s)));
        }
        if self.points[0] != Point::Origin {
            return Err(Error::MisplacedPoint { position: 1, expected: "the origin" });
        }
        for (idx, point) in self.points.iter().enumerate().skip(1) {
            let i = idx + 1;
            match *point {
                Point::Origin => return Err(Error::MisplacedPoint { position: i, expected: "free or satellite" }),
                Point::Free => {}
                Point::Satellite(j) => {
                    let legal = (i >= 3 && j == i - 2) || (i >= 3 && self.points[idx - 1] == Point::Satellite(j));
                    if !legal || j == 0 {
                        return Err(Error::IllegalSatelliteTarget { position: i, target: j });
                    }
                    if i <= self.s {
                        return Err(Error::LineThroughSatellite { position: i });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.points.len()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Point `p_i`, 1-based.
    pub fn point(&self, i: usize) -> Point {
        self.points[i - 1]
    }

    pub fn is_satellite(&self, i: usize) -> bool {
        matches!(self.point(i), Point::Satellite(_))
    }

    /// Indices `j` with `p_i -> p_j`, in decreasing order.
    pub fn proximity_targets(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(2);
        if i >= 2 {
            out.push(i - 1);
        }
        if let Point::Satellite(j) = self.point(i) {
            out.push(j);
        }
        out
    }

    /// Indices `i` with `p_i -> p_j`, increasing.
    pub fn proximate_points(&self, j: usize) -> Vec<usize> {
        (j + 1..=self.m()).filter(|&i| self.proximity_targets(i).contains(&j)).collect()
    }

    pub fn is_proximate(&self, i: usize, j: usize) -> bool {
        i <= self.m() && self.proximity_targets(i).contains(&j)
    }

    /// Number of leading points before the first satellite one.
    pub fn initial_free_chain(&self) -> usize {
        self.points.iter().position(|p| matches!(p, Point::Satellite(_))).unwrap_or(self.m())
    }

    /// Unit lower-triangular matrix with `-1` at `(i, j)` when `p_i -> p_j`.
    pub fn proximity_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.m();
        let mut p = vec![vec![0i64; m]; m];
        for i in 1..=m {
            p[i - 1][i - 1] = 1;
            for j in self.proximity_targets(i) {
                p[i - 1][j - 1] = -1;
            }
        }
        p
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.m() {
            return Err(Error::IndexOutOfRange { index: i, m: self.m() });
        }
        Ok(())
    }

    /// Multiplicities at `p_1, ..., p_i` of a curvette through `p_i`.
    pub fn multiplicity_vector(&self, i: usize) -> Result<Vec<Int>> {
        self.check_index(i)?;
        let mut mults = vec![Int::zero(); i];
        mults[i - 1] = Int::one();
        for k in (2..=i).rev() {
            let mk = mults[k - 1].clone();
            for j in self.proximity_targets(k) {
                mults[j - 1] += &mk;
            }
        }
        Ok(mults)
    }

    /// The valuation of `E_i`: first `i` points, line contact `min(s, i)`.
    pub fn truncate(&self, i: usize) -> Result<Configuration> {
        self.check_index(i)?;
        Ok(Configuration { points: self.points[..i].to_vec(), s: self.s.min(i) })
    }

    /// Same points with a different line contact.
    pub fn with_line_contact(&self, s: usize) -> Result<Configuration> {
        Configuration::new(self.points.clone(), s)
    }
}
