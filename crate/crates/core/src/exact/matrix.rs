use super::Rational;

/// Rank of a rational matrix by Gauss-Jordan elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for c in col..ncols {
            let v = &rows[rank][c] * &inv;
            rows[rank][c] = v;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let sub = &factor * &rows[rank][c];
                    rows[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(m(&[&[0, 1], &[1, 0]])), 2);
        assert_eq!(rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    }
}
