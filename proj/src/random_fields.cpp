#include "bel/random_fields.hpp"

#include <cmath>

namespace bel {

Complex BumpSum::eval(Complex z) const {
    Complex s{0.0, 0.0};
    for (const Term& t : terms) {
        const double d2 = std::norm(z - t.center);
        s += t.amplitude * std::exp(-d2 / (2.0 * t.sigma * t.sigma));
    }
    return s;
}

Field BumpSum::sample(const Grid& g, std::string tag) const {
    std::vector<Complex> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = eval(g.point(i));
    return Field(g, std::move(v), std::move(tag));
}

BumpSum random_bump_dipoles(const Grid& g, std::mt19937_64& rng, int pairs) {
    // Centers on the sample lattice inside |Re|,|Im| <= 0.35 L, widths well
    // above the spacing so the bumps are resolved. Lattice-aligned centers
    // make the two bumps of a dipole cancel exactly in the periodic sum.
    const double L = g.half_side();
    const double h = g.spacing();
    const int span = static_cast<int>(0.35 * L / h);
    std::uniform_int_distribution<int> cell(-span, span);
    std::uniform_real_distribution<double> width(std::max(4.0 * h, 0.04 * L), 0.12 * L);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    std::normal_distribution<double> amp(0.0, 1.0);
    BumpSum sum;
    for (int p = 0; p < pairs; ++p) {
        const Complex c1{cell(rng) * h, cell(rng) * h};
        const Complex c2{cell(rng) * h, cell(rng) * h};
        const double sigma = width(rng);
        const double a = amp(rng);
        const double th = phase(rng);
        const Complex amplitude = a * Complex{std::cos(th), std::sin(th)};
        sum.terms.push_back({c1, sigma, amplitude});
        sum.terms.push_back({c2, sigma, -amplitude});
    }
    return sum;
}

Field random_unit_field(const Grid& g, std::uint64_t seed, int pairs) {
    std::mt19937_64 rng(seed);
    Field f = random_bump_dipoles(g, rng, pairs).sample(g, "random");
    const double nrm = l2_norm(f);
    if (nrm == 0.0) return random_unit_field(g, seed + 0x9e3779b97f4a7c15ull, pairs);
    return (1.0 / nrm) * f;
}

Field noise_in_disk(const Grid& g, std::mt19937_64& rng, Complex center,
                    double radius) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        // Draw unconditionally to keep the stream independent of the mask.
        const double re = gauss(rng);
        const double im = gauss(rng);
        if (std::abs(g.point(i) - center) < radius) v[i] = Complex{re, im};
    }
    return Field(g, std::move(v), "noise");
}

Field bump_field(const Grid& g, Complex center, double sigma) {
    std::vector<Complex> v(g.size());
    const double cutoff = 4.0 * sigma;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = std::abs(g.point(i) - center);
        if (d >= cutoff) continue;
        const double ramp = smoothstep((cutoff - d) / sigma);
        v[i] = std::exp(-d * d / (2.0 * sigma * sigma)) * ramp;
    }
    return Field(g, std::move(v), "bump");
}

}  // namespace bel
