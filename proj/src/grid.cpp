#include "bel/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>

namespace bel {

Grid::Grid(int n, double half_side) : n_(n), half_side_(half_side) {
    if (!is_power_of_two(n) || n < 8)
        throw std::invalid_argument("Grid: n must be a power of two >= 8");
    if (!(half_side > 0.0))
        throw std::invalid_argument("Grid: half side length must be positive");
    spacing_ = 2.0 * half_side / n;
}

Grid make_grid(int n, double half_side) { return Grid(n, half_side); }

Field::Field(const Grid& g, std::string tag)
    : grid_(g), values_(g.size(), Complex{0.0, 0.0}), tag_(std::move(tag)) {}

Field::Field(const Grid& g, std::vector<Complex> values, std::string tag)
    : grid_(g), values_(std::move(values)), tag_(std::move(tag)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("Field: value count does not match grid");
    check_finite();
}

void Field::check_finite() const {
    for (const Complex& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("Field: non-finite sample");
}

void require_same_grid(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("Fields live on different grids");
}

namespace {

template <typename Op>
Field zip(const Field& a, const Field& b, Op op) {
    require_same_grid(a, b);
    std::vector<Complex> out(a.size());
    auto va = a.values();
    auto vb = b.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(va[i], vb[i]);
    return Field(a.grid(), std::move(out));
}

}  // namespace

Field operator+(const Field& a, const Field& b) {
    return zip(a, b, [](Complex x, Complex y) { return x + y; });
}
Field operator-(const Field& a, const Field& b) {
    return zip(a, b, [](Complex x, Complex y) { return x - y; });
}
Field operator*(const Field& a, const Field& b) {
    return zip(a, b, [](Complex x, Complex y) { return x * y; });
}
Field operator*(Complex c, const Field& a) {
    std::vector<Complex> out(a.values().begin(), a.values().end());
    for (auto& v : out) v *= c;
    return Field(a.grid(), std::move(out));
}
Field operator*(double c, const Field& a) { return Complex{c, 0.0} * a; }

Field conj(const Field& a) {
    std::vector<Complex> out(a.size());
    auto va = a.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::conj(va[i]);
    return Field(a.grid(), std::move(out));
}

Field abs(const Field& a) {
    std::vector<Complex> out(a.size());
    auto va = a.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(va[i]);
    return Field(a.grid(), std::move(out));
}

Complex mean(const Field& a) {
    Complex s{0.0, 0.0};
    for (const Complex& v : a.values()) s += v;
    return s / static_cast<double>(a.size());
}

double l2_norm(const Field& a) {
    double s = 0.0;
    for (const Complex& v : a.values()) s += std::norm(v);
    return std::sqrt(s) * a.grid().spacing();
}

double sup_norm(const Field& a) {
    double m = 0.0;
    for (const Complex& v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

namespace {

// One pair of in-place plans per grid size, created once under a lock and
// executed through fftw_execute_dft, which is thread safe.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
    static std::mutex mu;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<Complex> buf(static_cast<std::size_t>(n) * n);
        auto* p = reinterpret_cast<fftw_complex*>(buf.data());
        PlanPair pp;
        pp.fwd = fftw_plan_dft_2d(n, n, p, p, FFTW_FORWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
        pp.bwd = fftw_plan_dft_2d(n, n, p, p, FFTW_BACKWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
        it = cache.emplace(n, pp).first;
    }
    return it->second;
}

Field run_fft(const Field& f, bool forward) {
    const int n = f.grid().n();
    PlanPair& pp = plans_for(n);
    std::vector<Complex> out(f.values().begin(), f.values().end());
    auto* p = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(forward ? pp.fwd : pp.bwd, p, p);
    if (!forward) {
        const double scale = 1.0 / static_cast<double>(f.size());
        for (auto& v : out) v *= scale;
    }
    return Field(f.grid(), std::move(out));
}

}  // namespace

Field forward_fft(const Field& f) { return run_fft(f, true); }
Field inverse_fft(const Field& f) { return run_fft(f, false); }

Field apply_multiplier(const Field& f, const std::function<Complex(Complex)>& m) {
    const Grid& g = f.grid();
    const int n = g.n();
    Field spec = forward_fft(f);
    auto v = spec.mutable_values();
    for (int ky = 0; ky < n; ++ky)
        for (int kx = 0; kx < n; ++kx)
            v[static_cast<std::size_t>(ky) * n + kx] *= m(g.freq(kx, ky));
    return inverse_fft(spec);
}

Field wirtinger_derivative(const Field& f, Wirtinger which) {
    Field out = apply_multiplier(f, [which](Complex xi) {
        const Complex half_i{0.0, 0.5};
        return which == Wirtinger::Dz ? half_i * std::conj(xi) : half_i * xi;
    });
    out.set_tag(which == Wirtinger::Dz ? "dz" : "dzbar");
    return out;
}

double weighted_lp_norm(const Field& f, double p, std::span<const double> w) {
    if (!(p > 1.0))
        throw std::invalid_argument("weighted_lp_norm: p must be > 1");
    if (!w.empty() && w.size() != f.size())
        throw std::invalid_argument("weighted_lp_norm: weight size mismatch");
    double s = 0.0;
    auto v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        const double wi = w.empty() ? 1.0 : w[i];
        s += std::pow(a, p) * wi;
    }
    const double h = f.grid().spacing();
    return std::pow(s * h * h, 1.0 / p);
}

namespace {

struct FieldHeader {
    char magic[8];
    std::uint32_t n;
    std::uint32_t dtype;
    double half_side;
    std::uint64_t reserved;
};
static_assert(sizeof(FieldHeader) == 32);

constexpr char kMagic[8] = {'B', 'E', 'L', 'F', 'I', 'E', 'L', 'D'};

}  // namespace

void write_field(const std::filesystem::path& path, const Field& f, FieldDtype dtype) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_field: cannot open " + path.string());
    FieldHeader h{};
    std::memcpy(h.magic, kMagic, 8);
    h.n = static_cast<std::uint32_t>(f.grid().n());
    h.dtype = static_cast<std::uint32_t>(dtype);
    h.half_side = f.grid().half_side();
    h.reserved = 0;
    os.write(reinterpret_cast<const char*>(&h), sizeof(h));
    if (dtype == FieldDtype::Complex128) {
        os.write(reinterpret_cast<const char*>(f.values().data()),
                 static_cast<std::streamsize>(f.size() * sizeof(Complex)));
    } else {
        std::vector<float> buf(2 * f.size());
        auto v = f.values();
        for (std::size_t i = 0; i < v.size(); ++i) {
            buf[2 * i] = static_cast<float>(v[i].real());
            buf[2 * i + 1] = static_cast<float>(v[i].imag());
        }
        os.write(reinterpret_cast<const char*>(buf.data()),
                 static_cast<std::streamsize>(buf.size() * sizeof(float)));
    }
    if (!os) throw std::runtime_error("write_field: short write to " + path.string());
}

Field read_field(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field: cannot open " + path.string());
    FieldHeader h{};
    is.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!is || std::memcmp(h.magic, kMagic, 8) != 0)
        throw std::runtime_error("read_field: bad header in " + path.string());
    Grid g(static_cast<int>(h.n), h.half_side);
    std::vector<Complex> values(g.size());
    if (static_cast<FieldDtype>(h.dtype) == FieldDtype::Complex128) {
        is.read(reinterpret_cast<char*>(values.data()),
                static_cast<std::streamsize>(values.size() * sizeof(Complex)));
    } else {
        std::vector<float> buf(2 * values.size());
        is.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(buf.size() * sizeof(float)));
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] = Complex(buf[2 * i], buf[2 * i + 1]);
    }
    if (!is) throw std::runtime_error("read_field: truncated file " + path.string());
    return Field(g, std::move(values));
}

void write_field_csv(const std::filesystem::path& path, const Field& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_field_csv: cannot open " + path.string());
    os << "x,y,re,im\n";
    const Grid& g = f.grid();
    os.precision(17);
    for (int iy = 0; iy < g.n(); ++iy)
        for (int ix = 0; ix < g.n(); ++ix) {
            const Complex z = g.point(ix, iy);
            const Complex v = f.at(ix, iy);
            os << z.real() << ',' << z.imag() << ',' << v.real() << ',' << v.imag()
               << '\n';
        }
}

}  // namespace bel
