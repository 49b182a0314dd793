/// Iterates over all index vectors `v` with `v[i] < radices[i]`, in
/// lexicographic order (last position fastest). Yields nothing when some
/// radix is zero, and one empty vector when `radices` is empty.
#[derive(Debug, Clone)]
pub struct Odometer {
    radices: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Odometer {
    pub fn new(radices: Vec<usize>) -> Self {
        let next = if radices.contains(&0) { None } else { Some(vec![0; radices.len()]) };
        Odometer { radices, next }
    }

    /// Number of vectors the odometer yields, saturating.
    pub fn count_all(radices: &[usize]) -> usize {
        radices.iter().fold(1usize, |acc, &r| acc.saturating_mul(r))
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        while k > 0 {
            k -= 1;
            succ[k] += 1;
            if succ[k] < self.radices[k] {
                self.next = Some(succ);
                return Some(current);
            }
            succ[k] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::Odometer;

    #[test]
    fn odometer_orders_lexicographically() {
        let all: Vec<_> = Odometer::new(vec![2, 3]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[5], vec![1, 2]);
        assert_eq!(Odometer::new(vec![]).count(), 1);
        assert_eq!(Odometer::new(vec![2, 0]).count(), 0);
    }
}
