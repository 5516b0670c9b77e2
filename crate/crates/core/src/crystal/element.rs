use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Element of B_l for A_n^(1), stored as the occupancy vector (x_1..x_{n+1}).
///
/// `floor = a` restricts to B^{>=a+1}_l: letters 1..=a never occur and the
/// element lives in the A_{n-a}^(1) crystal on letters a+1..=n+1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrystalElement {
    n: usize,
    floor: usize,
    x: Vec<u32>,
}

impl CrystalElement {
    pub fn from_occupancy(n: usize, x: Vec<u32>, floor: usize) -> Result<Self> {
        check_rank(n, floor)?;
        if x.len() != n + 1 {
            return Err(Error::OccupancyLength { got: x.len(), expected: n + 1 });
        }
        if x[..floor].iter().any(|&v| v != 0) {
            return Err(Error::FloorViolation(floor));
        }
        Ok(Self { n, floor, x })
    }

    /// Signed variant used when an arithmetic step may have produced a negative entry.
    pub fn from_signed(n: usize, x: &[i64], floor: usize) -> Result<Self> {
        if x.iter().any(|&v| v < 0) {
            return Err(Error::NegativeEntry("occupancy vector"));
        }
        Self::from_occupancy(n, x.iter().map(|&v| v as u32).collect(), floor)
    }

    /// Build from a list of letters (1-based), which must be weakly increasing.
    pub fn from_letters(n: usize, letters: &[u32], floor: usize) -> Result<Self> {
        check_rank(n, floor)?;
        let lo = floor as u32 + 1;
        let hi = n as u32 + 1;
        let mut x = vec![0u32; n + 1];
        let mut prev = 0;
        for &c in letters {
            if c < lo || c > hi {
                return Err(Error::LetterOutOfRange { letter: c, lo, hi });
            }
            if c < prev {
                let w: String = letters.iter().map(|c| letter_char(*c)).collect();
                return Err(Error::DecreasingWord(w));
            }
            prev = c;
            x[c as usize - 1] += 1;
        }
        Ok(Self { n, floor, x })
    }

    /// Parse a tableau word such as "1224".
    pub fn parse_word(n: usize, word: &str, floor: usize) -> Result<Self> {
        let letters = word
            .chars()
            .map(|ch| {
                ch.to_digit(10).filter(|&d| d > 0).ok_or_else(|| Error::Parse(format!("bad letter {ch:?} in {word:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Self::from_letters(n, &letters, floor)
    }

    /// The highest element u_l: all letters equal to floor+1.
    pub fn highest(n: usize, l: u32, floor: usize) -> Result<Self> {
        check_rank(n, floor)?;
        let mut x = vec![0; n + 1];
        x[floor] = l;
        Ok(Self { n, floor, x })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn floor(&self) -> usize {
        self.floor
    }

    pub fn occupancy(&self) -> &[u32] {
        &self.x
    }

    /// Occupancy of the letters floor+1..=n+1 (the local A_{n-floor} picture).
    pub fn local(&self) -> &[u32] {
        &self.x[self.floor..]
    }

    /// Occupancy of letter `i` (1-based).
    pub fn count(&self, letter: usize) -> u32 {
        self.x[letter - 1]
    }

    pub fn capacity(&self) -> u32 {
        self.x.iter().sum()
    }

    /// Number of letters other than floor+1.
    pub fn balls(&self) -> u32 {
        self.local()[1..].iter().sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.balls() == 0
    }

    pub fn letters(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.capacity() as usize);
        for (i, &c) in self.x.iter().enumerate() {
            out.extend(std::iter::repeat_n(i as u32 + 1, c as usize));
        }
        out
    }

    pub fn word(&self) -> String {
        self.letters().into_iter().map(letter_char).collect()
    }

    /// Same occupancy viewed with a different floor.
    pub fn with_floor(&self, floor: usize) -> Result<Self> {
        Self::from_occupancy(self.n, self.x.clone(), floor)
    }

    /// Drop the first `floor` letters, giving an element of rank n-floor at floor 0.
    pub fn lowered(&self) -> Self {
        Self { n: self.n - self.floor, floor: 0, x: self.local().to_vec() }
    }

    /// Inverse of `lowered`: shift letters up by `by` into rank n+by.
    pub fn raised(&self, by: usize) -> Self {
        let mut x = vec![0; by];
        x.extend_from_slice(&self.x);
        Self { n: self.n + by, floor: self.floor + by, x }
    }

    /// Number of local letters N = n + 1 - floor.
    pub fn width(&self) -> usize {
        self.n + 1 - self.floor
    }

    /// Kashiwara e_i with global index i in floor..=n; i = floor is the affine node
    /// of the nested algebra. Returns None when the result is 0.
    ///
    /// # Panics
    /// If i is outside floor..=n.
    pub fn e(&self, i: usize) -> Option<Self> {
        let (to, from) = self.move_slots(i, true);
        self.shift(to, from)
    }

    pub fn f(&self, i: usize) -> Option<Self> {
        let (to, from) = self.move_slots(i, false);
        self.shift(to, from)
    }

    pub fn epsilon(&self, i: usize) -> u32 {
        let (_, from) = self.move_slots(i, true);
        self.x[from]
    }

    pub fn phi(&self, i: usize) -> u32 {
        let (_, from) = self.move_slots(i, false);
        self.x[from]
    }

    // e_i moves a letter i+1 to i (cyclically inside the local alphabet); f_i the reverse.
    fn move_slots(&self, i: usize, raise: bool) -> (usize, usize) {
        assert!(i >= self.floor && i <= self.n, "node {i} outside {}..={}", self.floor, self.n);
        let lo = self.floor; // 0-based slot of letter floor+1
        let small = if i == self.floor { self.n } else { i - 1 };
        let big = if i == self.floor { lo } else { i };
        if raise {
            (small, big)
        } else {
            (big, small)
        }
    }

    fn shift(&self, to: usize, from: usize) -> Option<Self> {
        if self.width() == 1 || self.x[from] == 0 {
            return None;
        }
        let mut x = self.x.clone();
        x[from] -= 1;
        x[to] += 1;
        Some(Self { n: self.n, floor: self.floor, x })
    }

    /// Dynkin automorphism (x_1..x_{n+1}) -> (x_2..x_{n+1}, x_1).
    pub fn sigma(&self) -> Result<Self> {
        if self.floor != 0 {
            return Err(Error::InvalidFloor { n: self.n, floor: self.floor });
        }
        let mut x = self.x.clone();
        x.rotate_left(1);
        Ok(Self { n: self.n, floor: 0, x })
    }
}

impl fmt::Debug for CrystalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())?;
        if self.capacity() == 0 {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Display for CrystalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

pub(crate) fn check_rank(n: usize, floor: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidRank(n));
    }
    if floor > n {
        return Err(Error::InvalidFloor { n, floor });
    }
    Ok(())
}

pub(crate) fn letter_char(c: u32) -> char {
    char::from_digit(c, 36).unwrap_or('?')
}

/// Affinization b[d].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffineElement {
    pub elem: CrystalElement,
    pub mode: i64,
}

impl AffineElement {
    pub fn new(elem: CrystalElement, mode: i64) -> Self {
        Self { elem, mode }
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.elem, self.mode)
    }
}

/// JSON form of an affine element: {"x": [...], "d": int}.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct AffineJson {
    pub x: Vec<u32>,
    pub d: i64,
}
