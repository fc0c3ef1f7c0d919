//! Scalar token parsing: decimal literals, rational `p/q` forms, and the
//! `inf` keyword used by analytic set descriptors and custom-table rows.

/// Parses one scalar token.
///
/// Accepted forms:
/// * decimal literals (`2`, `-0.5`, `1e-9`),
/// * rationals `p/q` with integer numerator and nonzero integer
///   denominator (`3/2`, `-1/4`) — evaluated as an exact f64 quotient,
/// * `inf` / `+inf` / `-inf`.
///
/// `nan` and malformed tokens are rejected with a human-readable message.
pub fn parse_scalar(token: &str) -> Result<f64, String> {
    match token {
        "inf" | "+inf" => return Ok(f64::INFINITY),
        "-inf" => return Ok(f64::NEG_INFINITY),
        _ => {}
    }
    if let Some((num, den)) = token.split_once('/') {
        let p: i64 = num
            .parse()
            .map_err(|_| format!("bad rational numerator `{num}`"))?;
        let q: i64 = den
            .parse()
            .map_err(|_| format!("bad rational denominator `{den}`"))?;
        if q == 0 {
            return Err("rational denominator must be nonzero".to_string());
        }
        return Ok(p as f64 / q as f64);
    }
    let value: f64 = token
        .parse()
        .map_err(|_| format!("expected a number, got `{token}`"))?;
    if value.is_nan() {
        return Err("nan is not a valid scalar".to_string());
    }
    Ok(value)
}

/// Parses a scalar that must be finite.
pub fn parse_finite(token: &str) -> Result<f64, String> {
    let v = parse_scalar(token)?;
    if !v.is_finite() {
        return Err(format!("expected a finite number, got `{token}`"));
    }
    Ok(v)
}

/// Parses a non-negative integer token.
pub fn parse_usize(token: &str) -> Result<usize, String> {
    token
        .parse()
        .map_err(|_| format!("expected a non-negative integer, got `{token}`"))
}

/// Parses an unsigned 64-bit seed token.
pub fn parse_u64(token: &str) -> Result<u64, String> {
    token
        .parse()
        .map_err(|_| format!("expected an unsigned integer, got `{token}`"))
}

/// Parses a (possibly negative) 32-bit exponent token.
pub fn parse_i32(token: &str) -> Result<i32, String> {
    token
        .parse()
        .map_err(|_| format!("expected an integer, got `{token}`"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_and_rationals_parse() {
        assert_eq!(parse_scalar("2"), Ok(2.0));
        assert_eq!(parse_scalar("-0.5"), Ok(-0.5));
        assert_eq!(parse_scalar("1e-9"), Ok(1e-9));
        assert_eq!(parse_scalar("3/2"), Ok(1.5));
        assert_eq!(parse_scalar("-1/4"), Ok(-0.25));
        assert_eq!(parse_scalar("10/5"), Ok(2.0));
        assert_eq!(parse_scalar("inf"), Ok(f64::INFINITY));
        assert_eq!(parse_scalar("-inf"), Ok(f64::NEG_INFINITY));
    }

    #[test]
    fn bad_tokens_are_rejected() {
        assert!(parse_scalar("abc").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("1/x").is_err());
        assert!(parse_scalar("x/2").is_err());
        assert!(parse_scalar("nan").is_err());
        assert!(parse_scalar("NaN").is_err());
        assert!(parse_scalar("").is_err());
        assert!(parse_finite("inf").is_err());
        assert_eq!(parse_finite("7/8"), Ok(0.875));
    }

    #[test]
    fn rational_halves_are_exact() {
        // Rational entry exists so dyadic values stay exact.
        assert_eq!(parse_scalar("1/1048576"), Ok(2f64.powi(-20)));
        assert_eq!(parse_scalar("9/8"), Ok(1.125));
    }

    #[test]
    fn integer_helpers() {
        assert_eq!(parse_usize("42"), Ok(42));
        assert!(parse_usize("-1").is_err());
        assert_eq!(parse_u64("7"), Ok(7));
        assert_eq!(parse_i32("-10"), Ok(-10));
        assert!(parse_i32("ten").is_err());
    }
}
