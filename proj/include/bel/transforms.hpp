#pragma once

#include <functional>
#include <span>

#include "bel/grid.hpp"

namespace bel {

class Weight;  // weights.hpp

// Two-point singular kernel K(x, y) on the plane (n = 2), with the size
// constant C0 of the bound |K(x,y)| <= C0 / |x-y|^2. When the kernel is a
// convolution, `profile` holds K(x, y) = profile(x - y) and quadrature
// operators may use the FFT fast path; the direct sum and the fast path
// agree to rounding because both pair points through the minimum-image
// difference on the torus.
struct Kernel {
    std::function<Complex(Complex, Complex)> evaluate;
    double size_constant = 0.0;
    std::function<Complex(Complex)> profile;

    bool translation_invariant() const { return static_cast<bool>(profile); }
};

// Closed-form kernel of the N-th iterate: b_N(z) = ((-1)^N N / pi)
// * conj(z)^(N-1) / z^(N+1). N = 0 is rejected (the identity has no kernel).
Complex kernel_bN(Complex z, int N);

Kernel beurling_kernel();               // b_1(z) = -1 / (pi z^2)
Kernel iterated_beurling_kernel(int N); // profile b_N

// Fourier multiplier conj(xi)/xi; the zero mode is mapped to 0, which makes
// the operator an exact isometry on mean-zero fields.
Field beurling(const Field& f);

// Multiplier xi/conj(xi); inverse and C-linear adjoint of beurling on
// mean-zero fields.
Field beurling_adjoint(const Field& f);

// conj(beurling(f)); R-linear but not C-linear.
Field beurling_conjugate(const Field& f);

// Inverse of d/dzbar: spectrum divided by (i/2) xi, zero mode to 0. The mean
// of f is removed first (on the torus the constant mode has no preimage), so
// dzbar(cauchy(f)) == f - mean(f) exactly.
Field cauchy(const Field& f);

// N applications of the beurling multiplier, evaluated as one pass with
// (conj(xi)/xi)^N.
Field beurling_iterate(const Field& f, int N);

// T_eps f(x) = sum over grid points y with |x-y| >= eps of K(x,y) f(y) h^2,
// distances taken minimum-image on the torus. Rejects eps < 2*spacing.
Field truncated_singular(const Field& f, const Kernel& K, double eps);

// Pointwise max of |T_eps f| over the listed radii.
Field maximal_singular(const Field& f, const Kernel& K,
                       std::span<const double> eps_list);

// Discrete Hardy-Littlewood maximal function: max over dyadic radii
// r = 2^j * spacing (r <= half side) of the average of |f| over the lattice
// ball {|d| < r}. The smallest ball is the cell itself, so Mf >= |f|.
Field hl_maximal(const Field& f);

// Empirical operator norm on L^p(w): max of ||apply(f)||_{L^p(w)} over
// `trials` seeded random unit-norm compactly supported fields.
double operator_norm_estimate(const std::function<Field(const Field&)>& apply,
                              double p, const Weight& w, int trials,
                              std::uint64_t seed);

}  // namespace bel
