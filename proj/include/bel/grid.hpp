#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bel/common.hpp"

namespace bel {

// Periodic n x n discretization of the plane on the square [-L, L)^2.
//
// Sample points are x_j = -L + j * spacing with spacing = 2L/n, identified
// with complex numbers x + iy. The dual frequency lattice is
// (pi/L) * {-n/2, ..., n/2 - 1}^2, a frequency likewise identified with the
// complex number xi = xi1 + i*xi2. All multiplier operators are defined
// relative to the convention in which the Wirtinger derivatives act as
//
//     d/dz    <->  (i/2) * conj(xi)
//     d/dzbar <->  (i/2) * xi
//
// on the plane wave exp(i<x, xi>). Forward transforms are unnormalized sums,
// inverse transforms carry the 1/n^2 factor, so inverse(forward(f)) == f.
class Grid {
  public:
    Grid() = default;
    Grid(int n, double half_side);

    int n() const { return n_; }
    double half_side() const { return half_side_; }
    double spacing() const { return spacing_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

    double coord(int i) const { return -half_side_ + spacing_ * i; }
    Complex point(int ix, int iy) const { return {coord(ix), coord(iy)}; }
    Complex point(std::size_t idx) const {
        return point(static_cast<int>(idx) % n_, static_cast<int>(idx) / n_);
    }

    // Lattice frequency for transform index (kx, ky), wrapped to the
    // symmetric range {-n/2, ..., n/2 - 1}.
    Complex freq(int kx, int ky) const {
        const double s = kPi / half_side_;
        const int kx2 = kx < n_ / 2 ? kx : kx - n_;
        const int ky2 = ky < n_ / 2 ? ky : ky - n_;
        return {s * kx2, s * ky2};
    }

    // Minimum-image physical difference vector for a cyclic index offset.
    Complex min_image(int mx, int my) const {
        const int mx2 = mx < n_ / 2 ? mx : mx - n_;
        const int my2 = my < n_ / 2 ? my : my - n_;
        return {spacing_ * mx2, spacing_ * my2};
    }

    bool operator==(const Grid& o) const {
        return n_ == o.n_ && half_side_ == o.half_side_;
    }

  private:
    int n_ = 0;
    double half_side_ = 0.0;
    double spacing_ = 0.0;
};

Grid make_grid(int n, double half_side);

// Complex-valued samples on a Grid. Immutable by convention once built:
// operations return new Fields. Values are stored row-major, index
// iy * n + ix.
class Field {
  public:
    Field() = default;
    explicit Field(const Grid& g, std::string tag = {});
    Field(const Grid& g, std::vector<Complex> values, std::string tag = {});

    const Grid& grid() const { return grid_; }
    std::span<const Complex> values() const { return values_; }
    std::span<Complex> mutable_values() { return values_; }
    const std::string& tag() const { return tag_; }
    void set_tag(std::string t) { tag_ = std::move(t); }

    Complex at(int ix, int iy) const {
        return values_[static_cast<std::size_t>(iy) * grid_.n() + ix];
    }
    Complex& at(int ix, int iy) {
        return values_[static_cast<std::size_t>(iy) * grid_.n() + ix];
    }

    std::size_t size() const { return values_.size(); }

    // Throws if any sample is NaN or infinite.
    void check_finite() const;

  private:
    Grid grid_;
    std::vector<Complex> values_;
    std::string tag_;
};

void require_same_grid(const Field& a, const Field& b);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);  // pointwise
Field operator*(Complex c, const Field& a);
Field operator*(double c, const Field& a);
Field conj(const Field& a);
Field abs(const Field& a);  // |f| as a real-valued Field

Complex mean(const Field& a);
double l2_norm(const Field& a);   // sqrt(sum |f|^2 spacing^2)
double sup_norm(const Field& a);

// Unnormalized forward DFT / normalized inverse DFT; they compose to the
// identity to machine precision.
Field forward_fft(const Field& f);
Field inverse_fft(const Field& f);

// Pointwise multiplication of the spectrum by m(xi).
Field apply_multiplier(const Field& f, const std::function<Complex(Complex)>& m);

enum class Wirtinger { Dz, Dzbar };

// Spectral Wirtinger derivative. The caller is responsible for f being
// smooth relative to the grid; rough data will ring.
Field wirtinger_derivative(const Field& f, Wirtinger which);

// (sum |f|^p w spacing^2)^(1/p). Rejects p <= 1. An empty weight span means
// the unit weight. Weighted overloads taking a Weight live in weights.hpp.
double weighted_lp_norm(const Field& f, double p, std::span<const double> w = {});

// Binary field files: 32-byte header (magic, n, dtype, L) followed by raw
// little-endian interleaved complex samples, row-major.
enum class FieldDtype : std::uint32_t { Complex64 = 0, Complex128 = 1 };

void write_field(const std::filesystem::path& path, const Field& f,
                 FieldDtype dtype = FieldDtype::Complex128);
Field read_field(const std::filesystem::path& path);

// CSV rows "x,y,re,im", one sample per line, for plotting.
void write_field_csv(const std::filesystem::path& path, const Field& f);

}  // namespace bel
