#include "bel/transforms.hpp"

#include <cmath>

#include "bel/random_fields.hpp"
#include "bel/weights.hpp"

namespace bel {

Complex kernel_bN(Complex z, int N) {
    if (N < 1) throw std::invalid_argument("kernel_bN: N must be >= 1");
    const double sign = (N % 2 == 0) ? 1.0 : -1.0;
    const Complex zb = std::conj(z);
    return (sign * N / kPi) * std::pow(zb, N - 1) / std::pow(z, N + 1);
}

Kernel beurling_kernel() {
    Kernel k;
    k.size_constant = 1.0 / kPi;
    k.profile = [](Complex d) { return kernel_bN(d, 1); };
    k.evaluate = [](Complex x, Complex y) { return kernel_bN(x - y, 1); };
    return k;
}

Kernel iterated_beurling_kernel(int N) {
    if (N < 1) throw std::invalid_argument("iterated_beurling_kernel: N >= 1");
    Kernel k;
    k.size_constant = N / kPi;
    k.profile = [N](Complex d) { return kernel_bN(d, N); };
    k.evaluate = [N](Complex x, Complex y) { return kernel_bN(x - y, N); };
    return k;
}

Field beurling(const Field& f) {
    return apply_multiplier(f, [](Complex xi) {
        return xi == Complex{0.0, 0.0} ? Complex{0.0, 0.0} : std::conj(xi) / xi;
    });
}

Field beurling_adjoint(const Field& f) {
    return apply_multiplier(f, [](Complex xi) {
        return xi == Complex{0.0, 0.0} ? Complex{0.0, 0.0} : xi / std::conj(xi);
    });
}

Field beurling_conjugate(const Field& f) { return conj(beurling(f)); }

Field cauchy(const Field& f) {
    return apply_multiplier(f, [](Complex xi) {
        if (xi == Complex{0.0, 0.0}) return Complex{0.0, 0.0};
        return 1.0 / (Complex{0.0, 0.5} * xi);
    });
}

Field beurling_iterate(const Field& f, int N) {
    if (N < 1) throw std::invalid_argument("beurling_iterate: N must be >= 1");
    return apply_multiplier(f, [N](Complex xi) {
        if (xi == Complex{0.0, 0.0}) return Complex{0.0, 0.0};
        return std::pow(std::conj(xi) / xi, N);
    });
}

namespace {

// Cyclic convolution out(x) = sum_y k(x - y) f(y) h^2 with the kernel
// sampled on the minimum-image difference lattice.
Field convolve_profile(const Field& f, const std::function<Complex(int, int)>& k) {
    const Grid& g = f.grid();
    const int n = g.n();
    std::vector<Complex> kv(g.size());
    for (int my = 0; my < n; ++my)
        for (int mx = 0; mx < n; ++mx)
            kv[static_cast<std::size_t>(my) * n + mx] = k(mx, my);
    Field kf(g, std::move(kv));
    Field spec_k = forward_fft(kf);
    Field spec_f = forward_fft(f);
    const double h2 = g.spacing() * g.spacing();
    std::vector<Complex> prod(g.size());
    auto a = spec_k.values();
    auto b = spec_f.values();
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a[i] * b[i] * h2;
    return inverse_fft(Field(g, std::move(prod)));
}

}  // namespace

Field truncated_singular(const Field& f, const Kernel& K, double eps) {
    const Grid& g = f.grid();
    if (eps < 2.0 * g.spacing())
        throw std::invalid_argument("truncated_singular: eps < 2*spacing");
    if (K.translation_invariant()) {
        return convolve_profile(f, [&](int mx, int my) {
            const Complex d = g.min_image(mx, my);
            const double r = std::abs(d);
            return r >= eps ? K.profile(d) : Complex{0.0, 0.0};
        });
    }
    // Direct sum, O(n^4); fine at the small sizes it is used for.
    const int n = g.n();
    Field out(g, f.tag().empty() ? "" : f.tag() + ":trunc");
    auto src = f.values();
    auto dst = out.mutable_values();
    const double h2 = g.spacing() * g.spacing();
    parallel_for(0, static_cast<std::int64_t>(g.size()), [&](std::int64_t idx) {
        const int ix = static_cast<int>(idx) % n;
        const int iy = static_cast<int>(idx) / n;
        const Complex x = g.point(ix, iy);
        Complex acc{0.0, 0.0};
        for (int jy = 0; jy < n; ++jy)
            for (int jx = 0; jx < n; ++jx) {
                const Complex d = g.min_image((ix - jx + n) % n, (iy - jy + n) % n);
                if (std::abs(d) < eps) continue;
                acc += K.evaluate(x, x - d) * src[static_cast<std::size_t>(jy) * n + jx];
            }
        dst[idx] = acc * h2;
    });
    return out;
}

Field maximal_singular(const Field& f, const Kernel& K,
                       std::span<const double> eps_list) {
    if (eps_list.empty())
        throw std::invalid_argument("maximal_singular: empty eps list");
    Field out(f.grid(), "maximal");
    auto dst = out.mutable_values();
    for (double eps : eps_list) {
        Field t = truncated_singular(f, K, eps);
        auto tv = t.values();
        for (std::size_t i = 0; i < dst.size(); ++i)
            dst[i] = std::max(dst[i].real(), std::abs(tv[i]));
    }
    return out;
}

Field hl_maximal(const Field& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    Field absf = abs(f);
    Field out(g, "hl_maximal");
    auto dst = out.mutable_values();
    for (double r = g.spacing(); r <= g.half_side() * (1.0 + 1e-12); r *= 2.0) {
        std::size_t count = 0;
        std::vector<Complex> ball(g.size());
        for (int my = 0; my < n; ++my)
            for (int mx = 0; mx < n; ++mx)
                if (std::abs(g.min_image(mx, my)) < r) {
                    ball[static_cast<std::size_t>(my) * n + mx] = 1.0;
                    ++count;
                }
        Field avg = inverse_fft(Field(
            g, [&] {
                Field spec_b = forward_fft(Field(g, std::move(ball)));
                Field spec_f = forward_fft(absf);
                std::vector<Complex> prod(g.size());
                auto a = spec_b.values();
                auto b = spec_f.values();
                for (std::size_t i = 0; i < prod.size(); ++i)
                    prod[i] = a[i] * b[i] / static_cast<double>(count);
                return prod;
            }()));
        auto av = avg.values();
        for (std::size_t i = 0; i < dst.size(); ++i)
            dst[i] = std::max(dst[i].real(), std::max(0.0, av[i].real()));
    }
    return out;
}

double operator_norm_estimate(const std::function<Field(const Field&)>& apply,
                              double p, const Weight& w, int trials,
                              std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("operator_norm_estimate: trials >= 1");
    const Grid& g = w.grid();
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        Field f = random_unit_field(g, seed + static_cast<std::uint64_t>(t));
        const double denom = weighted_lp_norm(f, p, w.samples());
        if (denom == 0.0) continue;
        const double num = weighted_lp_norm(apply(f), p, w.samples());
        best = std::max(best, num / denom);
    }
    return best;
}

}  // namespace bel
