//! Explicit realizations of configurations and evaluation of the valuation.
//!
//! At `p` the local coordinates are `u = Y/X`, `v = Z/X`; the line at
//! infinity is `v = 0` and affine polynomials pass to germs through
//! `f(x, y) = f(1/v, u/v) = h_f(u, v) / v^deg(f)`.

mod field;
mod linalg;
mod poly;
mod realize;
mod witness;

pub use field::Field;
pub use linalg::{kernel, rank_mod_p};
pub use poly::{Poly2, MAX_PARSED_EXPONENT};
pub use realize::{realize, realize_with, Direction, RealizedConfiguration, Step, GENERIC_RANGE};
pub use witness::{witness_search, WitnessMode, WitnessOutcome};

use crate::error::{Error, Result};
use crate::picard::d_family;
use crate::Int;

/// `h_f` and `deg f` for an affine polynomial `f(x, y)`.
pub fn to_local(f: &Poly2) -> Result<(Poly2, u32)> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    Ok((f.map_exponents(|i, j| (j, deg - i - j)), deg))
}

/// Inverse of [`to_local`]: `f = x^deg h(y/x, 1/x)`.
pub fn from_local(h: &Poly2, deg: u32) -> Poly2 {
    h.map_exponents(|a, b| (deg - a - b, a))
}

/// `ν(f) = ν(h_f) - deg(f) ν(v)`.
pub fn poly_valuation(real: &RealizedConfiguration, f: &Poly2) -> Result<Int> {
    let f = f.reduce(&real.field());
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (h, deg) = to_local(&f)?;
    let v = real.germ_valuation(&Poly2::var1())?;
    Ok(real.germ_valuation(&h)? - v * Int::from(deg))
}

/// Compares `-ν(f)`, evaluated along `E_m` through the chart pullback, with
/// the intersection number of `D_m` and the strict transform of the closure
/// of `f = 0`: `deg(f) d_m - Σ_j mult_{p_j}(φ_m) mult_{p_j}(h_f)`.
pub fn phi_pairing_check(real: &RealizedConfiguration, f: &Poly2) -> Result<bool> {
    let f = f.reduce(&real.field());
    if f.is_zero() || f.is_constant() {
        return Err(Error::NotInGamma("constant polynomial".into()));
    }
    if f.ord0().is_some_and(|i| i >= 1) {
        return Err(Error::NotInGamma("x divides the polynomial".into()));
    }
    let (h, deg) = to_local(&f)?;
    let family = d_family(real.config());
    let mult = crate::valuation::contact_invariants(real.config()).mult;
    let local = real.germ_multiplicities(&h)?;
    let noether: Int = mult.iter().zip(&local).map(|(m, o)| m * Int::from(*o)).sum();
    let pairing = Int::from(deg) * family.d_m() - &noether;
    // pullback route, bounded a little above the expected orders
    let bound = |x: &Int| u32::try_from(x + Int::from(2)).ok();
    let nu_h = real.pullback_valuation(&h, bound(&noether))?;
    let nu_v = real.pullback_valuation(&Poly2::var1(), bound(family.d_m()))?;
    let (Some(nu_h), Some(nu_v)) = (nu_h, nu_v) else { return Ok(false) };
    let value = Int::from(nu_h) - Int::from(deg) * Int::from(nu_v);
    Ok(-value == pairing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::{Configuration, Point::*};
    use crate::Rat;
    use num_traits::Zero;

    fn xy(s: &str) -> Poly2 {
        Poly2::parse(s, ('x', 'y')).unwrap()
    }

    fn cusp(s: usize) -> Configuration {
        Configuration::new(vec![Origin, Free, Satellite(1)], s).unwrap()
    }

    fn parabola() -> RealizedConfiguration {
        let c = Configuration::free_chain(4, 2).unwrap();
        let dirs: Vec<Direction> = ["0", "1", "0"].iter().map(|d| d.parse().unwrap()).collect();
        realize_with(&c, Field::Rationals, &dirs).unwrap()
    }

    #[test]
    fn local_roundtrip() {
        let f = xy("x - y^2 + 3x*y + 5");
        let (h, d) = to_local(&f).unwrap();
        assert_eq!(d, 2);
        assert_eq!(from_local(&h, d), f);
        let (h, _) = to_local(&xy("x - y^2")).unwrap();
        assert_eq!(h, Poly2::parse("v - u^2", ('u', 'v')).unwrap());
    }

    #[test]
    fn cusp_coordinates() {
        let r = realize(&cusp(2), Field::Rationals, 7).unwrap();
        assert_eq!(poly_valuation(&r, &xy("x")).unwrap(), Int::from(-3));
        assert_eq!(poly_valuation(&r, &xy("y")).unwrap(), Int::from(-1));
        assert_eq!(poly_valuation(&r, &xy("17")).unwrap(), Int::from(0));
        assert_eq!(poly_valuation(&r, &Poly2::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn pairing_on_cusp_through_u_axis() {
        let c = cusp(1);
        let r = realize_with(&c, Field::Rationals, &[Direction::Infinite]).unwrap();
        assert_eq!(poly_valuation(&r, &xy("y")).unwrap(), Int::from(1));
        assert!(phi_pairing_check(&r, &xy("y")).unwrap());
        assert!(phi_pairing_check(&r, &xy("y^2 - 3y + x")).unwrap());
        assert!(matches!(phi_pairing_check(&r, &xy("x*y")), Err(Error::NotInGamma(_))));
        assert!(matches!(phi_pairing_check(&r, &xy("4")), Err(Error::NotInGamma(_))));
    }

    #[test]
    fn pairing_on_parabola() {
        let r = parabola();
        assert_eq!(poly_valuation(&r, &xy("x - y^2")).unwrap(), Int::zero());
        assert!(phi_pairing_check(&r, &xy("x - y^2")).unwrap());
    }

    #[test]
    fn pairing_for_generic_line() {
        // p_2 in the direction u = c v, i.e. v = u / c
        let c = Rat::from_integer(5.into());
        let r = realize_with(&cusp(1), Field::Rationals, &[Direction::Finite(c.recip())]).unwrap();
        let f = xy("y - 5");
        assert!(poly_valuation(&r, &f).unwrap() > Int::zero());
        assert!(phi_pairing_check(&r, &f).unwrap());
    }
}
