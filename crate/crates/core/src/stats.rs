/// Lower (floor-index) percentile: the element at `floor(p/100 * (n-1))` of
/// the sorted values. `None` for an empty slice. Reorders `values`.
pub(crate) fn lower_percentile(values: &mut [f64], percentile: f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let k = ((percentile / 100.0) * (values.len() - 1) as f64).floor() as usize;
    let k = k.min(values.len() - 1);
    let (_, v, _) = values.select_nth_unstable_by(k, f64::total_cmp);
    Some(*v)
}
