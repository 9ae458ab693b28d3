use std::fmt;

/// Longest path a [`Path`] can hold.
pub const MAX_PATH_LEN: usize = 29;

/// A directed path in a quiver, stored inline.
///
/// Arrows are listed in traversal order: `arrows[0]` leaves `src`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    src: u8,
    dst: u8,
    len: u8,
    arrows: [u8; MAX_PATH_LEN],
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { src: v as u8, dst: v as u8, len: 0, arrows: [0; MAX_PATH_LEN] }
    }

    pub fn arrow(id: usize, src: usize, dst: usize) -> Self {
        let mut arrows = [0; MAX_PATH_LEN];
        arrows[0] = id as u8;
        Path { src: src as u8, dst: dst as u8, len: 1, arrows }
    }

    pub fn src(&self) -> usize {
        self.src as usize
    }

    pub fn dst(&self) -> usize {
        self.dst as usize
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.len == 0
    }

    pub fn arrows(&self) -> &[u8] {
        &self.arrows[..self.len as usize]
    }

    /// `self` followed by `next`; `None` if the endpoints do not meet.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.dst != next.src {
            return None;
        }
        let total = self.len as usize + next.len as usize;
        assert!(total <= MAX_PATH_LEN, "path length overflow");
        let mut arrows = self.arrows;
        arrows[self.len as usize..total].copy_from_slice(next.arrows());
        Some(Path { src: self.src, dst: next.dst, len: total as u8, arrows })
    }

    /// The same path read in the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = [0; MAX_PATH_LEN];
        for (i, a) in self.arrows().iter().rev().enumerate() {
            arrows[i] = *a;
        }
        Path { src: self.dst, dst: self.src, len: self.len, arrows }
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            write!(f, "e{}", self.src)
        } else {
            write!(f, "{}->{}:{:?}", self.src, self.dst, self.arrows())
        }
    }
}
