#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bel/grid.hpp"

namespace bel {

// A superposition of Gaussian bumps with a closed form, evaluable anywhere.
// Pairs of bumps share amplitude with opposite sign and lattice-aligned
// centers, so the periodic grid sum of the samples is exactly zero.
struct BumpSum {
    struct Term {
        Complex center;
        double sigma;
        Complex amplitude;
    };
    std::vector<Term> terms;

    Complex eval(Complex z) const;
    Field sample(const Grid& g, std::string tag = {}) const;
};

// Random mean-zero dipole superposition supported in the central quarter of
// the box. `pairs` dipoles, widths and centers drawn from `rng`.
BumpSum random_bump_dipoles(const Grid& g, std::mt19937_64& rng, int pairs = 4);

// Same, but as a sampled Field normalized to unit L^2 norm.
Field random_unit_field(const Grid& g, std::uint64_t seed, int pairs = 4);

// iid complex Gaussian samples on cells with |z - center| < radius, zero
// elsewhere. Rough by construction; used by the compactness diagnostics.
Field noise_in_disk(const Grid& g, std::mt19937_64& rng, Complex center,
                    double radius);

// One smooth positive bump of width sigma at `center`, exactly zero outside
// radius 4*sigma (smooth ramp cutoff).
Field bump_field(const Grid& g, Complex center, double sigma);

}  // namespace bel
