//! Text forms of classes and parameter ranges. Error messages name the
//! offending field.

use crate::exactq::{parse_rat, Rat, TInterval};
use crate::ku::KuClass;
use crate::mukai::{MukaiProfile, ReferenceClass};

fn fields<'a>(s: &'a str, names: &[&str]) -> Result<Vec<&'a str>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() < names.len() {
        return Err(format!("missing field `{}` (expected {})", names[parts.len()], names.join(",")));
    }
    if parts.len() > names.len() {
        return Err(format!(
            "unexpected field after `{}` (expected {})",
            names[names.len() - 1],
            names.join(",")
        ));
    }
    Ok(parts)
}

fn int_field(v: &str, name: &str) -> Result<i64, String> {
    v.parse().map_err(|_| format!("field `{name}`: `{v}` is not an integer"))
}

/// `r,c,s` with rational `c`.
pub fn reference_class(s: &str) -> Result<ReferenceClass, String> {
    let f = fields(s, &["r", "c", "s"])?;
    let r = int_field(f[0], "r")?;
    let c = parse_rat(f[1]).ok_or_else(|| format!("field `c`: `{}` is not a rational", f[1]))?;
    let sv = int_field(f[2], "s")?;
    Ok(ReferenceClass::new(r, c, sv))
}

/// `r,d,q,s`.
pub fn mukai_profile(s: &str) -> Result<MukaiProfile, String> {
    let f = fields(s, &["r", "d", "q", "s"])?;
    Ok(MukaiProfile::new(
        int_field(f[0], "r")?,
        int_field(f[1], "d")?,
        int_field(f[2], "q")?,
        int_field(f[3], "s")?,
    ))
}

/// `a,b`.
pub fn ku_class(s: &str) -> Result<KuClass, String> {
    let f = fields(s, &["a", "b"])?;
    Ok(KuClass::new(int_field(f[0], "a")?, int_field(f[1], "b")?))
}

pub fn rational(s: &str) -> Result<Rat, String> {
    parse_rat(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degrees(pub Vec<i64>);

/// `1,2,3` or the empty string.
pub fn degree_list(s: &str) -> Result<Degrees, String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| format!("`{x}` is not an integer degree")))
        .collect::<Result<_, _>>()
        .map(Degrees)
}

fn endpoint(s: &str, which: &str) -> Result<Option<Rat>, String> {
    let s = s.trim();
    if s.is_empty() || s == "inf" || s == "+inf" {
        return Ok(None);
    }
    parse_rat(s).map(Some).ok_or_else(|| format!("{which} endpoint `{s}` is not a rational or `inf`"))
}

/// `a:b` is the half-open range `(a, b]`; `a:` and `a:inf` are `(a, inf)`.
/// Bracket notation such as `[1,inf)` or `(1,40]` is taken literally.
pub fn t_range(s: &str) -> Result<TInterval, String> {
    let s = s.trim();
    let (lo, lc, hi, hc) = if let Some((a, b)) = s.split_once(':') {
        let hi = endpoint(b, "upper")?;
        let closed = hi.is_some();
        (endpoint(a, "lower")?, false, hi, closed)
    } else {
        let lc = match s.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(format!("t-range `{s}`: use `a:b` or interval notation like `[1,inf)`")),
        };
        let hc = match s.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(format!("t-range `{s}` is missing a closing bracket")),
        };
        let inner = &s[1..s.len() - 1];
        let (a, b) = inner.split_once(',').ok_or_else(|| format!("t-range `{s}` needs two endpoints"))?;
        (endpoint(a, "lower")?, lc, endpoint(b, "upper")?, hc)
    };
    match &lo {
        Some(a) if *a > Rat::from_integer(0.into()) => {}
        _ => return Err(format!("t-range `{s}`: lower endpoint must be a positive rational")),
    }
    TInterval::new(lo, lc, hi, hc).map_err(|e| format!("t-range `{s}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::int;

    #[test]
    fn vectors() {
        assert_eq!(reference_class("1,0,-1").unwrap(), ReferenceClass::v1());
        assert!(reference_class("1,0").unwrap_err().contains("`s`"));
        assert!(reference_class("1,x,-1").unwrap_err().contains("`c`"));
        assert_eq!(reference_class("2,1/2,3").unwrap().c, Rat::new(1.into(), 2.into()));
        assert_eq!(mukai_profile("1, 0, 0, -1").unwrap(), MukaiProfile::new(1, 0, 0, -1));
        assert!(mukai_profile("1,0,0").is_err());
        assert_eq!(ku_class("-1,0").unwrap(), KuClass::new(-1, 0));
    }

    #[test]
    fn ranges() {
        let iv = t_range("1:40").unwrap();
        assert!(!iv.contains(&int(1)) && iv.contains(&int(40)));
        assert_eq!(t_range("1:").unwrap(), TInterval::greater_than(int(1)));
        assert_eq!(t_range("1:inf").unwrap(), TInterval::greater_than(int(1)));
        assert_eq!(t_range("[1,inf)").unwrap(), TInterval::at_least(int(1)));
        assert_eq!(t_range("[1, 40]").unwrap(), TInterval::closed(int(1), int(40)).unwrap());
        assert!(t_range("0:3").is_err());
        assert!(t_range("5:3").is_err());
        assert!(t_range("1-3").is_err());
    }

    #[test]
    fn degrees() {
        assert_eq!(degree_list("").unwrap(), Degrees(vec![]));
        assert_eq!(degree_list("1,2, 4").unwrap(), Degrees(vec![1, 2, 4]));
        assert!(degree_list("1,a").is_err());
    }
}
