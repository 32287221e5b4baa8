#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bel/grid.hpp"

namespace bel {

// Positive real samples on a Grid, with a shared cache of estimated A_p
// characteristics. Copies share the cache; updates are atomic per exponent.
class Weight {
  public:
    static Weight unit(const Grid& g);
    Weight(const Grid& g, std::vector<double> samples, std::string tag = {});

    const Grid& grid() const { return grid_; }
    std::span<const double> samples() const { return samples_; }
    const std::string& tag() const { return tag_; }
    double at(int ix, int iy) const {
        return samples_[static_cast<std::size_t>(iy) * grid_.n() + ix];
    }

    std::optional<double> cached_ap(double p) const;
    void store_ap(double p, double value) const;

  private:
    struct Cache;
    Grid grid_;
    std::vector<double> samples_;
    std::string tag_;
    std::shared_ptr<Cache> cache_;
};

// |z|^alpha sampled on the grid; the origin cell is floored at
// (spacing/2)^alpha so the sample stays finite for negative alpha.
Weight power_weight(double alpha, const Grid& g);

// Axis-parallel square, lower-left corner (x0, y0), half-open side `side`:
// a sample lies in the cube iff x0 <= x < x0+side and likewise in y.
struct Cube {
    double x0;
    double y0;
    double side;
};

class CubeFamily {
  public:
    // All dyadic cubes at sides 2L/2^l covering [4*spacing, L], plus
    // `translates` lattice-shifted copies of each level's partition cubes,
    // drawn from `seed`.
    static CubeFamily dyadic(const Grid& g, int translates = 8,
                             std::uint64_t seed = 0);
    // The rho-cell tiling of the centered square Q(0, R) (side R). Throws if
    // rho does not tile R or the cells do not align with the grid.
    static CubeFamily cells(const Grid& g, double R, double rho);
    static CubeFamily from_cubes(const Grid& g, std::vector<Cube> cubes);

    const Grid& grid() const { return grid_; }
    std::span<const Cube> cubes() const { return cubes_; }
    bool empty() const { return cubes_.empty(); }

  private:
    Grid grid_;
    std::vector<Cube> cubes_;
};

// Discrete Muckenhoupt characteristic: max over the family of
// (avg_Q w) * (avg_Q w^{-p'/p})^{p/p'}, averages by grid quadrature.
// Cubes containing an excluded cell are skipped; if more than 0.1% of cells
// are excluded the scan aborts. Monotone under family inclusion and >= 1.
double ap_constant(const Weight& w, double p, const CubeFamily& cubes,
                   const std::vector<std::uint8_t>* excluded_cells = nullptr);

// Per-cube-side A_p estimates (key: side length), same quadrature.
std::map<double, double> ap_constant_per_level(
    const Weight& w, double p, const CubeFamily& cubes,
    const std::vector<std::uint8_t>* excluded_cells = nullptr);

// max over cubes of avg_Q |b - avg_Q b|.
double bmo_norm(const Field& b, const CubeFamily& cubes);

// Same oscillation per cube side; VMO would mean decay as the side shrinks.
// Reported as a trend, never decided.
std::map<double, double> vmo_modulus(const Field& b, const CubeFamily& cubes);

struct TailDecayReport {
    std::vector<double> radii;
    std::vector<double> tails;        // sum over |x| > R of w(x)/|x|^(2p) h^2
    double fitted_exponent = 0.0;     // tail ~ C / R^fitted
    double predicted_exponent = 0.0;  // 2 (p - q)
    bool insufficient_range = false;
};

// Discrete version of the weighted tail integral; fits the decay exponent
// against the prediction 2(p - q) valid for w in A_q.
TailDecayReport tail_decay_check(const Weight& w, double p, double q,
                                 std::span<const double> R_list);

// L^p(w) norm with a Weight (grid checked).
double weighted_lp_norm(const Field& f, double p, const Weight& w);

}  // namespace bel
