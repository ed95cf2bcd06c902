#pragma once

namespace magnon {

// Bessel function of the first kind J_n(x) for integer order n.
//
// Evaluation strategy: alternating power series in extended precision for
// small |x|, Miller downward recurrence normalized by J_0 + 2*sum J_{2k} = 1
// for larger |x|, and the Hankel large-argument expansion for very large |x|.
// Relative accuracy is ~1e-13 or better over the supported range.
//
// Throws std::domain_error if x is NaN or infinite, and std::invalid_argument
// if |n| > 1e6 or if |x| is too large for the requested order to be evaluated
// accurately (|x| > 1e7 with |n| outside the asymptotic regime).
double bessel_j(int order, double argument);

}  // namespace magnon
