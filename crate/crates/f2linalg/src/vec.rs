//! Sparse GF(2) vectors as sorted, duplicate-free index lists.

/// Symmetric difference of two sorted lists.
pub fn xor(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Replaces `a` by `a + b`.
pub fn xor_into(a: &mut Vec<u32>, b: &[u32]) {
    if b.is_empty() {
        return;
    }
    *a = xor(a, b);
}

/// Turns an arbitrary list into a GF(2) vector: sorts it and drops every
/// index that occurs an even number of times.
pub fn normalize(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    let mut out: Vec<u32> = Vec::with_capacity(v.len());
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_cancels_common_entries() {
        assert_eq!(xor(&[1, 3, 5], &[3, 4]), vec![1, 4, 5]);
        assert_eq!(xor(&[2], &[2]), Vec::<u32>::new());
    }

    #[test]
    fn normalize_counts_parity() {
        assert_eq!(normalize(vec![5, 1, 5, 5, 2, 1]), vec![2, 5]);
    }
}
