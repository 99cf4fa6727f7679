//! Small numerical helpers.

/// Neumaier-compensated sum. Sequential and deterministic; error stays at
/// rounding level independent of the term count, which the discrete-norm and
/// inner-product contracts (1e-12) rely on.
pub(crate) fn compensated_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for t in terms {
        let new_sum = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - new_sum) + t;
        } else {
            comp += (t - new_sum) + sum;
        }
        sum = new_sum;
    }
    sum + comp
}

/// Componentwise Neumaier sum of complex terms.
pub(crate) fn compensated_complex_sum(
    terms: impl Iterator<Item = num_complex::Complex64>,
) -> num_complex::Complex64 {
    let mut re_sum = 0.0_f64;
    let mut re_comp = 0.0_f64;
    let mut im_sum = 0.0_f64;
    let mut im_comp = 0.0_f64;
    for t in terms {
        let new_re = re_sum + t.re;
        if re_sum.abs() >= t.re.abs() {
            re_comp += (re_sum - new_re) + t.re;
        } else {
            re_comp += (t.re - new_re) + re_sum;
        }
        re_sum = new_re;
        let new_im = im_sum + t.im;
        if im_sum.abs() >= t.im.abs() {
            im_comp += (im_sum - new_im) + t.im;
        } else {
            im_comp += (t.im - new_im) + im_sum;
        }
        im_sum = new_im;
    }
    num_complex::Complex64::new(re_sum + re_comp, im_sum + im_comp)
}
