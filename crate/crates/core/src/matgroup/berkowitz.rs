//! Division-free characteristic polynomial over an arbitrary commutative ring.

/// Ring operations needed by [`char_poly_coeffs`].
pub(crate) trait RingOps<T> {
    fn zero(&self) -> T;
    fn one(&self) -> T;
    fn add(&self, a: &T, b: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
    fn neg(&self, a: &T) -> T;
}

/// Coefficients of `det(xI - M)`, low to high, for the `n x n` matrix whose
/// entries are given row-major in `m`.
pub(crate) fn char_poly_coeffs<T: Clone, R: RingOps<T>>(ring: &R, n: usize, m: &[T]) -> Vec<T> {
    let at = |i: usize, j: usize| &m[i * n + j];
    if n == 0 {
        return vec![ring.one()];
    }
    // high-to-low coefficients of the char poly of the leading r x r block
    let mut vect = vec![ring.one(), ring.neg(at(0, 0))];
    for r in 1..n {
        // Toeplitz column: 1, -a, -R C, -R A C, ..., -R A^{r-1} C
        let mut t = Vec::with_capacity(r + 2);
        t.push(ring.one());
        t.push(ring.neg(at(r, r)));
        let mut col: Vec<T> = (0..r).map(|i| at(i, r).clone()).collect();
        for k in 0..r {
            let rc = (0..r).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(at(r, j), &col[j])));
            t.push(ring.neg(&rc));
            if k + 1 < r {
                col = (0..r)
                    .map(|i| (0..r).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(at(i, j), &col[j]))))
                    .collect();
            }
        }
        let mut next = vec![ring.zero(); r + 2];
        for (j, v) in vect.iter().enumerate() {
            for i in j..r + 2 {
                next[i] = ring.add(&next[i], &ring.mul(&t[i - j], v));
            }
        }
        vect = next;
    }
    vect.reverse();
    vect
}
