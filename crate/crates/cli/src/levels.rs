use anyhow::Result;
use etaforge::Error;

/// Parse `"2..10,12,15..16"` into a sorted, deduplicated list of levels.
pub fn parse(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Error::Parse(format!("bad level range `{part}`"));
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            if a == 0 || a > b {
                return Err(bad().into());
            }
            out.extend(a..=b);
        } else {
            let n: u64 = part.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad().into());
            }
            out.push(n);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty level list".into()).into());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse("2..4, 9,3").unwrap(), vec![2, 3, 4, 9]);
        assert!(parse("0..3").is_err());
        assert!(parse("5..2").is_err());
        assert!(parse("x").is_err());
        assert!(parse("").is_err());
    }
}
