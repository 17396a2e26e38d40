use crate::{Error, Result};

/// Largest `n` accepted by [`irwin_hall_tail`].
pub const IRWIN_HALL_CAP: usize = 15;

/// `P(U_1 + … + U_n ≥ m)` for i.i.d. uniforms on `[0, 1]` and integer `m`,
/// from `F(m) = (1/n!) Σ_{k ≤ m} (-1)^k C(n,k) (m-k)^n`.
///
/// The alternating sum is accumulated in `i128`, so the only rounding is
/// the final division.
pub fn irwin_hall_tail(n: usize, m: i64) -> Result<f64> {
    if n > IRWIN_HALL_CAP {
        return Err(Error::Size {
            what: "Irwin-Hall tail",
            n,
            cap: IRWIN_HALL_CAP,
        });
    }
    if n == 0 {
        return Err(Error::InvalidArgument(
            "Irwin-Hall tail needs n >= 1".into(),
        ));
    }
    if m <= 0 {
        return Ok(1.0);
    }
    if m >= n as i64 {
        return Ok(0.0);
    }
    let mut binom: i128 = 1;
    let mut sum: i128 = 0;
    for k in 0..=m {
        let term = binom * (m - k) as i128;
        let term = term * ((m - k) as i128).pow(n as u32 - 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        binom = binom * (n as i128 - k as i128) / (k as i128 + 1);
    }
    let fact: i128 = (1..=n as i128).product();
    Ok((fact - sum) as f64 / fact as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::eulerian;

    #[test]
    fn examples() {
        assert_eq!(irwin_hall_tail(2, 1).unwrap(), 0.5);
        assert_eq!(irwin_hall_tail(7, 0).unwrap(), 1.0);
        assert_eq!(irwin_hall_tail(7, 7).unwrap(), 0.0);
        let e = eulerian(5).unwrap().tail_at(3).unwrap().probability();
        assert!((irwin_hall_tail(5, 3).unwrap() - e).abs() < 1e-9);
        assert!(matches!(irwin_hall_tail(16, 3), Err(Error::Size { .. })));
    }

    #[test]
    fn matches_eulerian_at_the_cap() {
        let d = eulerian(15).unwrap();
        for m in 0..15 {
            let e = d.tail_at(m).unwrap().probability();
            assert!((irwin_hall_tail(15, m).unwrap() - e).abs() < 1e-13);
        }
    }
}
