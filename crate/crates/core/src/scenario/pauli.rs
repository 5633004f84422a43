use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    /// Whether the letter flips the computational basis bit.
    pub fn flips(self) -> bool {
        matches!(self, PauliLetter::X | PauliLetter::Y)
    }

    /// Whether the letter carries a `(-1)^bit` sign.
    pub fn signs(self) -> bool {
        matches!(self, PauliLetter::Z | PauliLetter::Y)
    }
}

/// A tensor product of single-qubit Pauli letters, one per qubit.
///
/// Position `i` (0-based in `letters`) acts on qubit `i + 1`. Qubit 1 is the
/// most significant bit of a computational basis index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    letters: Vec<PauliLetter>,
}

impl PauliString {
    /// Parses a word such as `"XZZI"` and checks it has `n_qubits` letters.
    pub fn parse(word: &str, n_qubits: usize) -> Result<Self> {
        let p = Self::parse_any(word)?;
        if p.len() != n_qubits {
            return Err(Error::PauliLength {
                expected: n_qubits,
                found: p.len(),
            });
        }
        Ok(p)
    }

    /// Parses a word of any length.
    pub fn parse_any(word: &str) -> Result<Self> {
        let letters = word
            .chars()
            .enumerate()
            .map(|(position, letter)| {
                PauliLetter::from_char(letter)
                    .ok_or(Error::InvalidPauliLetter { letter, position })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString { letters })
    }

    pub fn from_letters(letters: Vec<PauliLetter>) -> Self {
        PauliString { letters }
    }

    pub fn identity(n_qubits: usize) -> Self {
        PauliString {
            letters: vec![PauliLetter::I; n_qubits],
        }
    }

    /// `X` on every qubit, the `S1` stabilizer.
    pub fn all_x(n_qubits: usize) -> Self {
        PauliString {
            letters: vec![PauliLetter::X; n_qubits],
        }
    }

    /// `letter` on each 1-based index of `sites`, identity elsewhere.
    pub fn on_sites(n_qubits: usize, sites: &[usize], letter: PauliLetter) -> Self {
        let mut p = Self::identity(n_qubits);
        for &s in sites {
            p.letters[s - 1] = letter;
        }
        p
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    /// Letter acting on 1-based qubit `q`.
    pub fn letter(&self, q: usize) -> PauliLetter {
        self.letters[q - 1]
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&l| l != PauliLetter::I).count()
    }

    /// 1-based indices of the non-identity letters.
    pub fn support(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &l)| l != PauliLetter::I)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Basis-index mask of the qubits whose bit the string flips.
    pub fn flip_mask(&self) -> usize {
        self.mask_where(PauliLetter::flips)
    }

    /// Basis-index mask of the qubits contributing a `(-1)^bit` sign.
    pub fn sign_mask(&self) -> usize {
        self.mask_where(PauliLetter::signs)
    }

    pub fn y_count(&self) -> usize {
        self.letters.iter().filter(|&&l| l == PauliLetter::Y).count()
    }

    fn mask_where(&self, pred: impl Fn(PauliLetter) -> bool) -> usize {
        let n = self.letters.len();
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &l)| pred(l))
            .fold(0, |m, (i, _)| m | (1 << (n - 1 - i)))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}
