//! Exact 2×2 integer matrices: the SL₂(Z) machinery behind cat maps.

/// 2×2 integer matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntMat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMat2 {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a, self.c, self.b, self.d)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = *self;
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn reduce_mod(&self, n: i64) -> Self {
        Self::new(
            self.a.rem_euclid(n),
            self.b.rem_euclid(n),
            self.c.rem_euclid(n),
            self.d.rem_euclid(n),
        )
    }

    /// Power with entries reduced mod n at every step; safe for exponents
    /// where raw entries would overflow.
    pub fn pow_mod(&self, mut e: u32, n: i64) -> Self {
        let mut base = self.reduce_mod(n);
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).reduce_mod(n);
            }
            base = base.mul(&base).reduce_mod(n);
            e >>= 1;
        }
        acc
    }

    /// Inverse, valid for det = ±1 matrices.
    pub fn inverse_unimodular(&self) -> Self {
        let det = self.det();
        assert!(det == 1 || det == -1, "inverse requires det = ±1");
        Self::new(self.d / det, -self.b / det, -self.c / det, self.a / det)
    }

    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    pub fn apply_mod(&self, v: [i64; 2], n: i64) -> [i64; 2] {
        let w = self.apply(v);
        [w[0].rem_euclid(n), w[1].rem_euclid(n)]
    }

    pub fn apply_f64(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.a as f64 * v[0] + self.b as f64 * v[1],
            self.c as f64 * v[0] + self.d as f64 * v[1],
        ]
    }
}
