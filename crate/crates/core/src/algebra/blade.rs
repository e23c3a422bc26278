use std::fmt;

/// Diagonal Minkowski metric `diag(1, -1, -1, -1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metric {
    pub eta: [i8; 4],
}

pub const METRIC: Metric = Metric { eta: [1, -1, -1, -1] };

impl Metric {
    /// `η^{ab}` (equal to `η_{ab}` for this diagonal metric).
    pub const fn component(&self, a: usize, b: usize) -> i8 {
        if a == b {
            self.eta[a]
        } else {
            0
        }
    }

    pub fn diag(&self, a: usize) -> f64 {
        self.eta[a] as f64
    }
}

/// Ordered blade `e^{a1…ak}` (`a1 < … < ak`) encoded as a bit mask over the
/// generators; bit `a` set means `e^a` is a factor. Mask 0 is the unit `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BladeIndex(u8);

const fn popcount(x: u8) -> u32 {
    x.count_ones()
}

/// Sign of `e_A e_B = sign · e_{A xor B}` from transpositions and η-contraction.
const fn product_sign(a: u8, b: u8) -> i8 {
    let mut swaps = 0;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += popcount(shifted & b);
        shifted >>= 1;
    }
    // repeated spatial generators square to -e
    swaps += popcount(a & b & 0b1110);
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

const fn sign_table() -> [[i8; 16]; 16] {
    let mut t = [[0i8; 16]; 16];
    let mut a = 0;
    while a < 16 {
        let mut b = 0;
        while b < 16 {
            t[a][b] = product_sign(a as u8, b as u8);
            b += 1;
        }
        a += 1;
    }
    t
}

static SIGNS: [[i8; 16]; 16] = sign_table();

impl BladeIndex {
    pub const COUNT: usize = 16;
    pub const UNIT: BladeIndex = BladeIndex(0);
    pub const PSEUDOSCALAR: BladeIndex = BladeIndex(0b1111);

    pub fn new(mask: u8) -> Option<Self> {
        (mask < 16).then_some(BladeIndex(mask))
    }

    /// Blade from a strictly increasing list of generator indices.
    pub fn from_indices(indices: &[usize]) -> Option<Self> {
        let mut mask = 0u8;
        let mut last: Option<usize> = None;
        for &a in indices {
            if a > 3 || last.is_some_and(|l| l >= a) {
                return None;
            }
            mask |= 1 << a;
            last = Some(a);
        }
        Some(BladeIndex(mask))
    }

    pub const fn generator(a: usize) -> Self {
        assert!(a < 4);
        BladeIndex(1 << a)
    }

    pub const fn mask(self) -> u8 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..4).filter(move |a| self.0 & (1 << a) != 0)
    }

    pub fn all() -> impl Iterator<Item = BladeIndex> {
        (0..16u8).map(BladeIndex)
    }

    /// Blades ordered by grade, then lexicographically: `e, e0, e1, e2, e3, e01, …`.
    pub fn canonical_order() -> [BladeIndex; 16] {
        let mut v: Vec<BladeIndex> = Self::all().collect();
        v.sort_by_key(|b| (b.grade(), b.indices().collect::<Vec<_>>()));
        v.try_into().expect("16 blades")
    }

    /// `e^{…a} · e^{…b} = scalar · e^{c}` with `scalar ∈ {+1, -1}`.
    pub fn mul(self, other: BladeIndex) -> (i8, BladeIndex) {
        (SIGNS[self.index()][other.index()], BladeIndex(self.0 ^ other.0))
    }

    /// Sign picked up by reversion on this grade: `(-1)^{k(k-1)/2}`.
    pub const fn reversion_sign(self) -> i8 {
        match self.grade() {
            2 | 3 => -1,
            _ => 1,
        }
    }

    pub fn label(self) -> String {
        let mut s = String::from("e");
        for a in self.indices() {
            s.push(char::from(b'0' + a as u8));
        }
        s
    }

    pub fn from_label(label: &str) -> Option<Self> {
        let digits = label.strip_prefix('e')?;
        let idx: Option<Vec<usize>> = digits.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect();
        Self::from_indices(&idx?)
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}
