//! Partition counts p(n) and p₀(n) (parts all odd), with p(0) = p₀(0) = 1.

/// p(n) by Euler's pentagonal-number recurrence.
pub fn partition_count(n: usize) -> u128 {
    partition_table(n)[n]
}

pub fn partition_table(n: usize) -> Vec<u128> {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        for k in 1i64.. {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1] as i128;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                acc += sign * p[m - g2] as i128;
            }
        }
        p[m] = acc as u128;
    }
    p
}

/// p₀(n): partitions of n into odd parts, by the coin-change recurrence over odd part sizes.
pub fn odd_partition_count(n: usize) -> u128 {
    odd_partition_table(n)[n]
}

pub fn odd_partition_table(n: usize) -> Vec<u128> {
    let mut t = vec![0u128; n + 1];
    t[0] = 1;
    for part in (1..=n).step_by(2) {
        for m in part..=n {
            t[m] += t[m - part];
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    // Direct enumeration of non-increasing part sequences.
    fn enumerate(n: usize, max_part: usize, odd_only: bool) -> u128 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n))
            .filter(|k| !odd_only || k % 2 == 1)
            .map(|k| enumerate(n - k, k, odd_only))
            .sum()
    }

    #[test]
    fn small_values() {
        assert_eq!(partition_count(0), 1);
        assert_eq!(odd_partition_count(0), 1);
        assert_eq!(partition_count(5), 7);
        assert_eq!(odd_partition_count(5), 3);
        assert_eq!(odd_partition_count(8), 6);
        assert_eq!(partition_count(100), 190_569_292);
        assert_eq!(partition_count(200), 3_972_999_029_388);
    }

    #[test]
    fn recurrence_matches_enumeration() {
        let p = partition_table(30);
        let p0 = odd_partition_table(30);
        for n in 0..=30 {
            assert_eq!(p[n], enumerate(n, n, false), "p({n})");
            assert_eq!(p0[n], enumerate(n, n, true), "p0({n})");
        }
    }
}
