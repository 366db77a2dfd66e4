//! Parsing of `a:b:s`, `a:b` and comma-separated lists.

use std::str::FromStr;

/// Integer list: `10:30:5` (inclusive), `4:40` (step 1), or `10,14,18`.
/// Pieces may be mixed, e.g. `4:8,12`.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for piece in s.split(',').map(str::trim) {
        if piece.is_empty() {
            return Err(format!("empty entry in `{s}`"));
        }
        let parts: Vec<&str> = piece.split(':').collect();
        match parts.as_slice() {
            [one] => out.push(num::<usize>(one)?),
            [a, b] | [a, b, _] => {
                let (a, b) = (num::<usize>(a)?, num::<usize>(b)?);
                let step = if parts.len() == 3 { num::<usize>(parts[2])? } else { 1 };
                if step == 0 {
                    return Err(format!("zero step in `{piece}`"));
                }
                if a > b {
                    return Err(format!("empty range `{piece}`"));
                }
                out.extend((a..=b).step_by(step));
            }
            _ => return Err(format!("bad range `{piece}`; use a, a:b or a:b:s")),
        }
    }
    Ok(out)
}

/// Real list: `0.0625,0.25,2` or an inclusive range `0.5:2:0.5`.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for piece in s.split(',').map(str::trim) {
        if piece.is_empty() {
            return Err(format!("empty entry in `{s}`"));
        }
        let parts: Vec<&str> = piece.split(':').collect();
        match parts.as_slice() {
            [one] => out.push(num::<f64>(one)?),
            [a, b, step] => {
                let (a, b, step) = (num::<f64>(a)?, num::<f64>(b)?, num::<f64>(step)?);
                if !(step > 0.0) || a > b {
                    return Err(format!("bad range `{piece}`"));
                }
                let count = ((b - a) / step + 1e-9).floor() as usize;
                out.extend((0..=count).map(|i| a + i as f64 * step));
            }
            _ => return Err(format!("bad real list entry `{piece}`; use a or a:b:s")),
        }
    }
    Ok(out)
}

fn num<T: FromStr>(s: &str) -> Result<T, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not a valid number"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_ranges() {
        assert_eq!(parse_usize_list("10:30:5").unwrap(), vec![10, 15, 20, 25, 30]);
        assert_eq!(parse_usize_list("4:7").unwrap(), vec![4, 5, 6, 7]);
        assert_eq!(parse_usize_list("10,14, 18").unwrap(), vec![10, 14, 18]);
        assert_eq!(parse_usize_list("4:6,10").unwrap(), vec![4, 5, 6, 10]);
        assert_eq!(parse_usize_list("10:12:5").unwrap(), vec![10]);
        for bad in ["", "a", "5:4", "1:2:0", "1:2:3:4", "1,,2", "-3"] {
            assert!(parse_usize_list(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn real_lists() {
        assert_eq!(parse_f64_list("2").unwrap(), vec![2.0]);
        assert_eq!(parse_f64_list("0.0625,2").unwrap(), vec![0.0625, 2.0]);
        assert_eq!(parse_f64_list("0.5:2:0.5").unwrap(), vec![0.5, 1.0, 1.5, 2.0]);
        assert_eq!(parse_f64_list("1e4").unwrap(), vec![1e4]);
        for bad in ["", "x", "1:2", "2:1:0.5", "0:1:0"] {
            assert!(parse_f64_list(bad).is_err(), "{bad}");
        }
    }
}
