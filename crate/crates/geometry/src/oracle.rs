//! LP formulations over convex-combination weights. They never build a
//! half-space description, so they serve as independent checks of the hull
//! and closure code.

use num_traits::{One, Zero};

use crate::lp::{solve_standard, LpResult, StandardLp};
use crate::rational::Rational;

/// Whether `y` is a convex combination of `points`.
pub fn in_convex_hull(points: &[Vec<Rational>], y: &[Rational]) -> bool {
    orthant_system(points, y, None)
}

/// Whether some `x` in `conv(points)` has `x_j = y_j` and `x_i >= y_i` for
/// all other `i`, i.e. the orthant at `y` meets the hull on its face `j`.
pub fn face_supported(points: &[Vec<Rational>], y: &[Rational], j: usize) -> bool {
    orthant_system(points, y, Some(j))
}

/// `y` lies in the minimum closure of `conv(points)` iff the orthant at `y`
/// is supported on every face.
pub fn orthant_supported(points: &[Vec<Rational>], y: &[Rational]) -> bool {
    (0..y.len()).all(|j| face_supported(points, y, j))
}

fn orthant_system(points: &[Vec<Rational>], y: &[Rational], face: Option<usize>) -> bool {
    let m = points.len();
    let d = y.len();
    // variables: lambda (m), then one surplus per inequality coordinate
    let surplus: Vec<usize> = match face {
        None => Vec::new(),
        Some(j) => (0..d).filter(|&i| i != j).collect(),
    };
    let n = m + surplus.len();
    let mut a = Vec::with_capacity(d + 1);
    let mut b = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut row = vec![Rational::zero(); n];
        for (k, p) in points.iter().enumerate() {
            row[k] = p[i].clone();
        }
        if let Some(s) = surplus.iter().position(|&c| c == i) {
            row[m + s] = -Rational::one();
        }
        a.push(row);
        b.push(y[i].clone());
    }
    let mut row = vec![Rational::zero(); n];
    row[..m].iter_mut().for_each(|x| *x = Rational::one());
    a.push(row);
    b.push(Rational::one());
    let lp = StandardLp { a, b, c: vec![Rational::zero(); n] };
    !matches!(solve_standard(&lp), LpResult::Infeasible)
}
