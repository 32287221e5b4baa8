#include "bel/weights.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

namespace bel {

struct Weight::Cache {
    std::mutex mu;
    std::map<double, double> ap;
};

Weight Weight::unit(const Grid& g) {
    return Weight(g, std::vector<double>(g.size(), 1.0), "unit");
}

Weight::Weight(const Grid& g, std::vector<double> samples, std::string tag)
    : grid_(g),
      samples_(std::move(samples)),
      tag_(std::move(tag)),
      cache_(std::make_shared<Cache>()) {
    if (samples_.size() != grid_.size())
        throw std::invalid_argument("Weight: sample count does not match grid");
    for (double v : samples_)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("Weight: samples must be positive and finite");
}

std::optional<double> Weight::cached_ap(double p) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->ap.find(p);
    if (it == cache_->ap.end()) return std::nullopt;
    return it->second;
}

void Weight::store_ap(double p, double value) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->ap[p] = value;
}

Weight power_weight(double alpha, const Grid& g) {
    std::vector<double> v(g.size());
    const double floor_radius = g.spacing() / 2.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = std::abs(g.point(i));
        v[i] = std::pow(std::max(r, floor_radius), alpha);
    }
    return Weight(g, std::move(v), "power");
}

CubeFamily CubeFamily::dyadic(const Grid& g, int translates, std::uint64_t seed) {
    const double L = g.half_side();
    const double h = g.spacing();
    std::vector<Cube> cubes;
    std::mt19937_64 rng(seed);
    for (int level = 1;; ++level) {
        const double side = 2.0 * L / (1 << level);
        if (side < 4.0 * h - 1e-12) break;
        const int per_axis = 1 << level;
        for (int iy = 0; iy < per_axis; ++iy)
            for (int ix = 0; ix < per_axis; ++ix)
                cubes.push_back({-L + ix * side, -L + iy * side, side});
        // Lattice-aligned random shifts of the whole level, wrapped cubes
        // dropped at the box edge.
        const int steps = static_cast<int>(std::lround(side / h));
        std::uniform_int_distribution<int> shift(1, steps - 1);
        for (int t = 0; t < translates; ++t) {
            const double dx = shift(rng) * h;
            const double dy = shift(rng) * h;
            for (int iy = 0; iy + 1 < per_axis; ++iy)
                for (int ix = 0; ix + 1 < per_axis; ++ix)
                    cubes.push_back({-L + ix * side + dx, -L + iy * side + dy, side});
        }
        if (side <= 4.0 * h + 1e-12) break;
    }
    return from_cubes(g, std::move(cubes));
}

CubeFamily CubeFamily::cells(const Grid& g, double R, double rho) {
    const double h = g.spacing();
    const double cells_per_side = R / rho;
    const double rho_steps = rho / h;
    const double origin_steps = (R / 2.0) / h;
    if (std::abs(cells_per_side - std::lround(cells_per_side)) > 1e-9 ||
        std::abs(rho_steps - std::lround(rho_steps)) > 1e-9 ||
        std::abs(origin_steps - std::lround(origin_steps)) > 1e-9)
        throw std::invalid_argument("CubeFamily::cells: (R, rho) does not tile the grid");
    if (R / 2.0 > g.half_side() + 1e-12)
        throw std::invalid_argument("CubeFamily::cells: Q(0,R) exceeds the box");
    const int m = static_cast<int>(std::lround(cells_per_side));
    std::vector<Cube> cubes;
    cubes.reserve(static_cast<std::size_t>(m) * m);
    for (int iy = 0; iy < m; ++iy)
        for (int ix = 0; ix < m; ++ix)
            cubes.push_back({-R / 2.0 + ix * rho, -R / 2.0 + iy * rho, rho});
    return from_cubes(g, std::move(cubes));
}

CubeFamily CubeFamily::from_cubes(const Grid& g, std::vector<Cube> cubes) {
    const double L = g.half_side();
    for (const Cube& c : cubes) {
        if (c.side < 2.0 * g.spacing() - 1e-12)
            throw std::invalid_argument("CubeFamily: cube side < 2*spacing");
        if (c.x0 < -L - 1e-12 || c.y0 < -L - 1e-12 || c.x0 + c.side > L + 1e-12 ||
            c.y0 + c.side > L + 1e-12)
            throw std::invalid_argument("CubeFamily: cube outside the grid box");
    }
    CubeFamily f;
    f.grid_ = g;
    f.cubes_ = std::move(cubes);
    return f;
}

namespace {

// Inclusive-exclusive index range of samples with coord in [a, a + side).
struct IndexRange {
    int lo;
    int hi;
};

IndexRange range_for(const Grid& g, double a, double side) {
    const double h = g.spacing();
    const double L = g.half_side();
    int lo = static_cast<int>(std::ceil((a + L) / h - 1e-9));
    int hi = static_cast<int>(std::ceil((a + side + L) / h - 1e-9));
    lo = std::max(lo, 0);
    hi = std::min(hi, g.n());
    return {lo, hi};
}

// Prefix table: sums(i, j) accumulates rows < j, cols < i.
class PrefixTable {
  public:
    template <typename Fn>
    PrefixTable(const Grid& g, Fn value) : n_(g.n()), sums_((n_ + 1) * (n_ + 1), 0.0L) {
        for (int iy = 0; iy < n_; ++iy) {
            long double row = 0.0L;
            for (int ix = 0; ix < n_; ++ix) {
                row += value(ix, iy);
                at(ix + 1, iy + 1) = at(ix + 1, iy) + row;
            }
        }
    }

    long double box_sum(IndexRange xr, IndexRange yr) const {
        if (xr.lo >= xr.hi || yr.lo >= yr.hi) return 0.0L;
        return at(xr.hi, yr.hi) - at(xr.lo, yr.hi) - at(xr.hi, yr.lo) +
               at(xr.lo, yr.lo);
    }

  private:
    long double& at(int ix, int iy) {
        return sums_[static_cast<std::size_t>(iy) * (n_ + 1) + ix];
    }
    const long double& at(int ix, int iy) const {
        return sums_[static_cast<std::size_t>(iy) * (n_ + 1) + ix];
    }
    int n_;
    std::vector<long double> sums_;
};

double checked_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("A_p: p must lie in (1, inf)");
    return p;
}

}  // namespace

static double ap_product_over(const Weight& w, double p, const CubeFamily& cubes,
                              const std::vector<std::uint8_t>* excluded,
                              std::map<double, double>* per_level) {
    checked_p(p);
    if (cubes.empty()) throw std::invalid_argument("ap_constant: empty cube family");
    if (!(w.grid() == cubes.grid()))
        throw std::invalid_argument("ap_constant: weight and cubes on different grids");
    const Grid& g = w.grid();
    if (excluded) {
        if (excluded->size() != g.size())
            throw std::invalid_argument("ap_constant: exclusion mask size mismatch");
        std::size_t bad = 0;
        for (auto f : *excluded) bad += f ? 1 : 0;
        if (bad * 1000 > g.size())
            throw std::runtime_error("ap_constant: more than 0.1% of cells excluded");
    }
    const double dual_exp = -1.0 / (p - 1.0);  // -p'/p
    auto wv = w.samples();
    PrefixTable wsum(g, [&](int ix, int iy) {
        return wv[static_cast<std::size_t>(iy) * g.n() + ix];
    });
    PrefixTable ssum(g, [&](int ix, int iy) {
        return std::pow(wv[static_cast<std::size_t>(iy) * g.n() + ix], dual_exp);
    });
    std::unique_ptr<PrefixTable> fsum;
    if (excluded)
        fsum = std::make_unique<PrefixTable>(g, [&](int ix, int iy) {
            return (*excluded)[static_cast<std::size_t>(iy) * g.n() + ix] ? 1.0 : 0.0;
        });

    double best = 0.0;
    for (const Cube& c : cubes.cubes()) {
        const IndexRange xr = range_for(g, c.x0, c.side);
        const IndexRange yr = range_for(g, c.y0, c.side);
        const long double count =
            static_cast<long double>(xr.hi - xr.lo) * (yr.hi - yr.lo);
        if (count <= 0) continue;
        if (fsum && fsum->box_sum(xr, yr) > 0) continue;
        const double avg_w = static_cast<double>(wsum.box_sum(xr, yr) / count);
        const double avg_s = static_cast<double>(ssum.box_sum(xr, yr) / count);
        const double prod = avg_w * std::pow(avg_s, p - 1.0);  // p/p' = p-1
        best = std::max(best, prod);
        if (per_level) {
            auto [it, inserted] = per_level->try_emplace(c.side, prod);
            if (!inserted) it->second = std::max(it->second, prod);
        }
    }
    return best;
}

double ap_constant(const Weight& w, double p, const CubeFamily& cubes,
                   const std::vector<std::uint8_t>* excluded_cells) {
    const double est = ap_product_over(w, p, cubes, excluded_cells, nullptr);
    w.store_ap(p, est);
    return est;
}

std::map<double, double> ap_constant_per_level(
    const Weight& w, double p, const CubeFamily& cubes,
    const std::vector<std::uint8_t>* excluded_cells) {
    std::map<double, double> levels;
    const double est = ap_product_over(w, p, cubes, excluded_cells, &levels);
    w.store_ap(p, est);
    return levels;
}

double bmo_norm(const Field& b, const CubeFamily& cubes) {
    if (cubes.empty()) throw std::invalid_argument("bmo_norm: empty cube family");
    if (!(b.grid() == cubes.grid()))
        throw std::invalid_argument("bmo_norm: field and cubes on different grids");
    const Grid& g = b.grid();
    double best = 0.0;
    for (const Cube& c : cubes.cubes()) {
        const IndexRange xr = range_for(g, c.x0, c.side);
        const IndexRange yr = range_for(g, c.y0, c.side);
        const long long count =
            static_cast<long long>(xr.hi - xr.lo) * (yr.hi - yr.lo);
        if (count <= 0) continue;
        Complex avg{0.0, 0.0};
        for (int iy = yr.lo; iy < yr.hi; ++iy)
            for (int ix = xr.lo; ix < xr.hi; ++ix) avg += b.at(ix, iy);
        avg /= static_cast<double>(count);
        double osc = 0.0;
        for (int iy = yr.lo; iy < yr.hi; ++iy)
            for (int ix = xr.lo; ix < xr.hi; ++ix) osc += std::abs(b.at(ix, iy) - avg);
        best = std::max(best, osc / static_cast<double>(count));
    }
    return best;
}

std::map<double, double> vmo_modulus(const Field& b, const CubeFamily& cubes) {
    std::map<double, double> per_side;
    for (const Cube& c : cubes.cubes()) {
        CubeFamily single = CubeFamily::from_cubes(cubes.grid(), {c});
        const double osc = bmo_norm(b, single);
        auto [it, inserted] = per_side.try_emplace(c.side, osc);
        if (!inserted) it->second = std::max(it->second, osc);
    }
    return per_side;
}

TailDecayReport tail_decay_check(const Weight& w, double p, double q,
                                 std::span<const double> R_list) {
    checked_p(p);
    if (!(q > 1.0) || !(q < p))
        throw std::invalid_argument("tail_decay_check: need 1 < q < p");
    if (R_list.size() < 2)
        throw std::invalid_argument("tail_decay_check: need at least two radii");
    const Grid& g = w.grid();
    TailDecayReport rep;
    rep.predicted_exponent = 2.0 * (p - q);
    const double h2 = g.spacing() * g.spacing();
    auto wv = w.samples();
    for (double R : R_list) {
        double tail = 0.0;
        for (std::size_t i = 0; i < wv.size(); ++i) {
            const double r = std::abs(g.point(i));
            if (r > R) tail += wv[i] / std::pow(r, 2.0 * p);
        }
        rep.radii.push_back(R);
        rep.tails.push_back(tail * h2);
    }
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < rep.tails.size(); ++i) {
        if (rep.tails[i] > 0.0) {
            lx.push_back(std::log(rep.radii[i]));
            ly.push_back(std::log(rep.tails[i]));
        }
    }
    if (lx.size() < 2) {
        rep.insufficient_range = true;
        return rep;
    }
    rep.fitted_exponent = -fit_slope(lx, ly);
    return rep;
}

double weighted_lp_norm(const Field& f, double p, const Weight& w) {
    if (!(f.grid() == w.grid()))
        throw std::invalid_argument("weighted_lp_norm: field and weight grids differ");
    return weighted_lp_norm(f, p, w.samples());
}

}  // namespace bel
