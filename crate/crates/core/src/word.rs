//! Resolving user-supplied element specifications.

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::perm::Perm;

impl Group {
    /// Accepts an index (`"5"` or `"#5"`), cycle notation for permutation
    /// groups (`"(1 2)(3 4)"`), or a word in the generators such as
    /// `"g1 g2^-1 g1^3"` (1-based, letters separated by spaces or `*`).
    pub fn resolve_element(&self, spec: &str) -> Result<usize> {
        let s = spec.trim();
        let unknown = || GroupError::UnknownElement(spec.to_string());
        if let Ok(i) = s.trim_start_matches('#').parse::<usize>() {
            self.check_element(i)?;
            return Ok(i);
        }
        if s.starts_with('(') {
            let degree = self.degree().ok_or_else(unknown)?;
            let p = Perm::parse_cycles(s, degree)?;
            return self.find_permutation(&p).ok_or_else(unknown);
        }
        let mut acc = 0;
        let mut any = false;
        for letter in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            let body = letter.strip_prefix('g').ok_or_else(unknown)?;
            let (num, exp) = match body.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| unknown())?),
                None => (body, 1),
            };
            let k: usize = num.parse().map_err(|_| unknown())?;
            let gen = *k.checked_sub(1).and_then(|i| self.generators().get(i)).ok_or_else(unknown)?;
            let base = if exp < 0 { self.inv(gen) } else { gen };
            acc = self.mul(acc, self.pow(base, exp.unsigned_abs() as usize));
            any = true;
        }
        if any {
            Ok(acc)
        } else {
            Err(unknown())
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::description::{BuildOptions, GroupDescription};
    use crate::group::Group;

    #[test]
    fn resolves_all_forms() {
        let g = Group::build(&GroupDescription::permutation(4, ["(1 2 3 4)", "(1 2)"]), &BuildOptions::default())
            .unwrap();
        assert_eq!(g.resolve_element("0").unwrap(), 0);
        assert_eq!(g.resolve_element("#3").unwrap(), 3);
        let t = g.resolve_element("(1 2)").unwrap();
        assert_eq!(g.resolve_element("g2").unwrap(), t);
        let c = g.resolve_element("g1").unwrap();
        assert_eq!(g.resolve_element("g1^-1 * g1").unwrap(), 0);
        assert_eq!(g.resolve_element("g1^4").unwrap(), 0);
        assert_eq!(g.resolve_element("g1 g2").unwrap(), g.mul(c, t));
        assert!(g.resolve_element("99").is_err());
        assert!(g.resolve_element("g3").is_err());
        assert!(g.resolve_element("(1 2 3 5)").is_err());
        assert!(g.resolve_element("").is_err());
    }
}
