use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// One polygon edge: either left free with a label, or one side of a glued
/// pair.
///
/// The derived order puts every glued slot before every free slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Glued(u16),
    Free(u16),
}

/// A semi-Gaussian word on the edges `e_0..e_{N-1}` of a polygon, edge `e_i`
/// running from vertex `v_i` to `v_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GluingWord {
    slots: Vec<Slot>,
    partner: Vec<Option<usize>>,
}

impl GluingWord {
    /// Validates the slots: each pair id exactly twice, free labels
    /// distinct.
    pub fn new(slots: Vec<Slot>) -> Result<Self> {
        let mut partner = vec![None; slots.len()];
        let mut first_seen: Vec<Option<usize>> = Vec::new();
        let mut labels: Vec<u16> = Vec::new();
        for (i, slot) in slots.iter().enumerate() {
            match *slot {
                Slot::Glued(id) => {
                    let id = id as usize;
                    if first_seen.len() <= id {
                        first_seen.resize(id + 1, None);
                    }
                    match first_seen[id] {
                        None => first_seen[id] = Some(i),
                        Some(j) if partner[j].is_none() => {
                            partner[i] = Some(j);
                            partner[j] = Some(i);
                        }
                        Some(_) => {
                            return Err(Error::InvalidWord(format!(
                                "pair {id} occurs more than twice"
                            )))
                        }
                    }
                }
                Slot::Free(label) => {
                    if labels.contains(&label) {
                        return Err(Error::InvalidWord(format!("free label {label} repeated")));
                    }
                    labels.push(label);
                }
            }
        }
        for (id, seen) in first_seen.iter().enumerate() {
            if let Some(i) = seen {
                if partner[*i].is_none() {
                    return Err(Error::InvalidWord(format!("pair {id} occurs once")));
                }
            }
        }
        Ok(GluingWord { slots, partner })
    }

    /// Builds a word from free placements and a pairing whose pairs are
    /// listed in order of their lower slot. Pair ids follow that order.
    pub(crate) fn from_parts(size: usize, free: &[(usize, u16)], pairs: &[(usize, usize)]) -> Self {
        let mut slots = vec![Slot::Glued(0); size];
        let mut partner = vec![None; size];
        for &(pos, label) in free {
            slots[pos] = Slot::Free(label);
        }
        for (id, &(a, b)) in pairs.iter().enumerate() {
            slots[a] = Slot::Glued(id as u16);
            slots[b] = Slot::Glued(id as u16);
            partner[a] = Some(b);
            partner[b] = Some(a);
        }
        GluingWord { slots, partner }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// The gluing involution `μ`; `None` on free slots.
    pub fn partner(&self, slot: usize) -> Option<usize> {
        self.partner[slot]
    }

    pub fn pair_count(&self) -> usize {
        self.partner.iter().flatten().count() / 2
    }

    pub fn free_slots(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.slots.iter().enumerate().filter_map(|(i, s)| match s {
            Slot::Free(l) => Some((i, *l)),
            Slot::Glued(_) => None,
        })
    }

    /// The word read starting at slot `shift`, pair ids renamed by first
    /// occurrence.
    pub fn rotated(&self, shift: usize) -> GluingWord {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let slots = renamed(
            (0..n).map(|k| self.slots[(k + shift) % n]),
            self.pair_count(),
        );
        let partner = (0..n)
            .map(|k| self.partner[(k + shift) % n].map(|p| (p + n - shift % n) % n))
            .collect();
        GluingWord { slots, partner }
    }
}

fn renamed(slots: impl Iterator<Item = Slot>, pairs: usize) -> Vec<Slot> {
    let mut names: Vec<Option<u16>> = vec![None; pairs.max(1)];
    let mut next = 0u16;
    slots
        .map(|s| match s {
            Slot::Glued(id) => {
                let id = id as usize;
                if id >= names.len() {
                    names.resize(id + 1, None);
                }
                let name = *names[id].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                });
                Slot::Glued(name)
            }
            free => free,
        })
        .collect()
}

/// Representative of a word's class under rotation and renaming of pairs:
/// the lexicographically least renamed rotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CanonicalWord(Vec<Slot>);

impl CanonicalWord {
    pub fn slots(&self) -> &[Slot] {
        &self.0
    }

    /// Byte encoding with the same order as the slots: one byte per slot,
    /// pair ids below `0x80`, free labels offset by `0x80`.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0
            .iter()
            .map(|s| match *s {
                Slot::Glued(id) => id as u8,
                Slot::Free(l) => 0x80 | l as u8,
            })
            .collect()
    }
}

pub fn canonicalize(word: &GluingWord) -> CanonicalWord {
    let n = word.len();
    let pairs = word.pair_count();
    (0..n.max(1))
        .map(|r| renamed((0..n).map(|k| word.slots[(k + r) % n]), pairs))
        .min()
        .map(CanonicalWord)
        .unwrap_or_default()
}

/// Whether a word whose pair ids are already in first-occurrence order is
/// its own canonical form. Exits at the first differing slot of each
/// rotation.
pub fn is_canonical(word: &GluingWord) -> bool {
    let n = word.len();
    let slots = &word.slots;
    let mut names: Vec<u16> = vec![u16::MAX; word.pair_count()];
    for r in 1..n {
        names.iter_mut().for_each(|x| *x = u16::MAX);
        let mut next = 0u16;
        for k in 0..n {
            let s = match slots[(k + r) % n] {
                Slot::Glued(id) => {
                    let name = &mut names[id as usize];
                    if *name == u16::MAX {
                        *name = next;
                        next += 1;
                    }
                    Slot::Glued(*name)
                }
                free => free,
            };
            match s.cmp(&slots[k]) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    true
}

/// Bijective base-26 letter name of a pair id: `a..z, aa, ab, ...`.
fn pair_name(mut id: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (id % 26) as u8);
        if id < 26 {
            break;
        }
        id = id / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

fn write_slots(f: &mut fmt::Formatter<'_>, slots: &[Slot]) -> fmt::Result {
    for (i, s) in slots.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        match *s {
            Slot::Glued(id) => f.write_str(&pair_name(id as usize))?,
            Slot::Free(l) => write!(f, "{l}")?,
        }
    }
    Ok(())
}

/// Comma-separated slots: letters for glued pairs, integers for free labels,
/// e.g. `a,1,a,2`.
impl fmt::Display for GluingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_slots(f, &self.slots)
    }
}

impl fmt::Display for CanonicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_slots(f, &self.0)
    }
}

/// Parses the [`Display`](fmt::Display) format; pair letters may be any
/// alphabetic names and are renumbered by first occurrence.
impl FromStr for GluingWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut names: Vec<&str> = Vec::new();
        let mut slots = Vec::new();
        for token in s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            if let Ok(label) = token.parse::<u16>() {
                slots.push(Slot::Free(label));
            } else if token.chars().all(|c| c.is_ascii_alphabetic()) {
                let id = match names.iter().position(|n| *n == token) {
                    Some(id) => id,
                    None => {
                        names.push(token);
                        names.len() - 1
                    }
                };
                slots.push(Slot::Glued(id as u16));
            } else {
                return Err(Error::InvalidWord(format!("bad token {token:?}")));
            }
        }
        GluingWord::new(slots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GluingWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let word = w("x,1,x,2");
        assert_eq!(word.to_string(), "a,1,a,2");
        assert_eq!(word.partner(0), Some(2));
        assert_eq!(word.partner(1), None);
        assert!("a,1,a,a".parse::<GluingWord>().is_err());
        assert!("a,1,1,a".parse::<GluingWord>().is_err());
        assert!("a,1,b".parse::<GluingWord>().is_err());
        assert_eq!(pair_name(0), "a");
        assert_eq!(pair_name(25), "z");
        assert_eq!(pair_name(26), "aa");
    }

    #[test]
    fn rotations_share_canonical_form() {
        assert_eq!(canonicalize(&w("1,a,2,a")), canonicalize(&w("a,2,a,1")));
        assert_eq!(canonicalize(&w("a,1,a,2")), canonicalize(&w("a,2,a,1")));
        assert_ne!(canonicalize(&w("a,1,a,2")), canonicalize(&w("a,a,1,2")));
        assert_eq!(canonicalize(&w("1,a,2,a")).to_string(), "a,1,a,2");
    }

    #[test]
    fn self_symmetric_word() {
        let abab = w("a,b,a,b");
        let raw: std::collections::HashSet<_> =
            (0..4).map(|r| abab.rotated(r).slots().to_vec()).collect();
        assert_eq!(raw.len(), 1);
        let baab = w("a,b,b,a");
        let raw: std::collections::HashSet<_> =
            (0..4).map(|r| baab.rotated(r).slots().to_vec()).collect();
        assert_eq!(raw.len(), 2);
        let forms: std::collections::HashSet<_> =
            (0..4).map(|r| canonicalize(&baab.rotated(r))).collect();
        assert_eq!(forms.len(), 1);
    }

    #[test]
    fn glued_sorts_before_free() {
        assert!(Slot::Glued(7) < Slot::Free(0));
        let c = canonicalize(&w("1,a,a"));
        assert_eq!(c.slots()[0], Slot::Glued(0));
        assert_eq!(c.to_bytes(), vec![0, 0, 0x81]);
    }

    #[test]
    fn fast_check_matches_canonicalize() {
        for s in [
            "a,1,a,2",
            "1,a,2,a",
            "a,b,a,b",
            "a,a,b,b",
            "a,b,b,a",
            "a,1,b,a,b,2",
            "a,b,1,a,b",
        ] {
            let word = w(s);
            assert_eq!(
                is_canonical(&word),
                canonicalize(&word).slots() == word.slots(),
                "{s}"
            );
        }
    }

    #[test]
    fn rotation_keeps_partner_consistent() {
        let word = w("a,1,b,a,c,b,2,c");
        for r in 0..word.len() {
            let rot = word.rotated(r);
            let check = GluingWord::new(rot.slots().to_vec()).unwrap();
            assert_eq!(rot, check, "shift {r}");
        }
    }
}
