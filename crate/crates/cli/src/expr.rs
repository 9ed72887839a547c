//! Integer combinations of orbits such as `2*x10 - x01`.

use floerq_core::floer::FloerData;

use crate::CliError;

/// Parses `c1*name1 + c2*name2 ...`; `0` is the empty combination. A string equal to an
/// orbit name is always read as that orbit.
pub fn parse_combination(s: &str, data: &FloerData) -> Result<Vec<(String, i64)>, CliError> {
    let s = s.trim();
    if data.position(s).is_some() {
        return Ok(vec![(s.to_string(), 1)]);
    }
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut out: Vec<(String, i64)> = Vec::new();
    let mut rest = s;
    let mut first = true;
    while !rest.is_empty() {
        let (sign, body) = match rest.chars().next() {
            Some('+') => (1, &rest[1..]),
            Some('-') => (-1, &rest[1..]),
            _ if first => (1, rest),
            _ => return Err(CliError::parse(format!("expected + or - before {rest:?}"))),
        };
        first = false;
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = body[..end].trim();
        rest = body[end..].trim_start();
        let (coeff, name) = match term.split_once('*') {
            Some((c, n)) => (
                c.trim().parse::<i64>().map_err(|_| CliError::parse(format!("bad coefficient in {term:?}")))?,
                n.trim(),
            ),
            None => (1, term),
        };
        if data.position(name).is_none() {
            return Err(CliError::validation(format!("unknown orbit {name:?}")));
        }
        match out.iter_mut().find(|(n, _)| n == name) {
            Some(e) => e.1 += sign * coeff,
            None => out.push((name.to_string(), sign * coeff)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use floerq_core::floer::Orbit;

    fn data() -> FloerData {
        FloerData::new(1, 0, 0, vec![Orbit::new("a", 0), Orbit::new("b", 1), Orbit::new("c-1", 1)], vec![])
    }

    #[test]
    fn combinations() {
        let d = data();
        assert_eq!(parse_combination("a", &d).unwrap(), vec![("a".into(), 1)]);
        assert_eq!(parse_combination("c-1", &d).unwrap(), vec![("c-1".into(), 1)]);
        assert_eq!(parse_combination(" 2*a - b + 3 * b", &d).unwrap(), vec![("a".into(), 2), ("b".into(), 2)]);
        assert_eq!(parse_combination("-b", &d).unwrap(), vec![("b".into(), -1)]);
        assert!(parse_combination("0", &d).unwrap().is_empty());
        assert!(parse_combination("a - a", &d).unwrap().is_empty());
        assert_eq!(parse_combination("z", &d).unwrap_err().code, crate::EXIT_VALIDATION);
        assert_eq!(parse_combination("x*a", &d).unwrap_err().code, crate::EXIT_PARSE);
    }
}
