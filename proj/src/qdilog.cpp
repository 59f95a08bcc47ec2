#include "teich/qdilog.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace teich::qdilog {

namespace {

constexpr double kPi = std::numbers::pi;

double strip_margin(Complex z, const Params& p, double t_max) {
    return 2 * p.effective_delta() * std::max(1.0, std::abs(z.real())) / t_max;
}

}  // namespace

void Params::validate() const {
    if (!(hbar > 0) || !std::isfinite(hbar)) throw std::invalid_argument("hbar must be positive");
    const double d = effective_delta();
    if (!(d > 0) || !(d < std::min(1.0, kPi / hbar))) throw std::invalid_argument("delta must lie in (0, min(1, pi/hbar))");
    if (!(tol >= 1e-12) || !(tol < 1)) throw std::invalid_argument("tol must lie in [1e-12, 1)");
    if (t_max < 0 || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be non-negative");
    if (!(cutoff_scale >= 1)) throw std::invalid_argument("cutoff scale must be at least 1");
    if (!(panel > 0)) throw std::invalid_argument("panel width must be positive");
}

double Params::effective_delta() const { return delta > 0 ? delta : 0.5 * std::min(1.0, kPi / hbar); }

double tail_cutoff(Complex z, const Params& p) {
    const double decay = kPi + p.hbar - std::abs(z.imag());
    if (!(decay > 0)) throw std::invalid_argument("z outside the convergence strip");
    const double d = p.effective_delta();
    const double target = p.tol * 1e-2;
    // |integrand| <= 4 e^{delta Re z - decay t} / (t (1 - e^{-2 pi t})(1 - e^{-2 hbar t})) for t > 0;
    // integrating the exponential gives the tail bound below.
    // Also wide enough that the strip margin uses at most half the room left.
    double t = std::max(1.0, 4 * d * std::max(1.0, std::abs(z.real())) / decay);
    while (true) {
        const double denom = t * (1 - std::exp(-2 * kPi * t)) * (1 - std::exp(-2 * p.hbar * t)) * decay;
        const double tail = 4 * std::exp(d * z.real() - decay * t) / denom;
        if (tail < target) return t;
        t += 0.5;
    }
}

Complex log_psi(Complex z, const Params& p) {
    p.validate();
    const double t_max = p.t_max > 0 ? p.t_max : p.cutoff_scale * tail_cutoff(z, p);
    if (!(std::abs(z.imag()) < kPi + p.hbar - strip_margin(z, p, t_max)))
        throw std::invalid_argument("z outside the convergence strip");
    const double d = p.effective_delta();
    const double hbar = p.hbar;
    const auto f = [&](double t) -> Complex {
        const Complex x(t, d);
        return std::exp(Complex(0, -1) * x * z) / (std::sinh(kPi * x) * std::sinh(hbar * x) * x);
    };
    using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    const int panels = std::max(2, static_cast<int>(std::ceil(2 * t_max / p.panel)));
    const double width = 2 * t_max / panels;
    Complex total = 0;
    double error_total = 0;
    double l1_total = 0;
    for (int k = 0; k < panels; ++k) {
        const double a = -t_max + k * width;
        double error = 0;
        double l1 = 0;
        total += Quad::integrate(f, a, a + width, p.max_depth, p.tol * 1e-2, &error, &l1);
        error_total += error;
        l1_total += l1;
    }
    // The error in log psi is the relative error in psi.
    if (error_total / 4 > p.tol) {
        std::ostringstream msg;
        msg << "quadrature error " << error_total / 4 << " exceeds tolerance " << p.tol << " (L1 " << l1_total << ")";
        throw QDilogError(msg.str());
    }
    return total / 4.0;
}

Complex psi(Complex z, const Params& params) { return std::exp(log_psi(z, params)); }

double functional_residual(double x, const Params& p, bool with_factor) {
    const Complex below = psi(Complex(x, -p.hbar), p);
    const Complex above = psi(Complex(x, p.hbar), p);
    const Complex rhs = with_factor ? above * (1 + std::exp(x)) : above;
    return std::abs(below - rhs) / std::abs(below);
}

Params refined(const Params& params) {
    Params out = params;
    out.panel = params.panel / 2;
    if (params.t_max > 0)
        out.t_max = 2 * params.t_max;
    else
        out.cutoff_scale = 2 * params.cutoff_scale;
    return out;
}

std::vector<double> Grid::points() const {
    if (!(step > 0) || !(hi >= lo)) throw std::invalid_argument("grid needs lo <= hi and step > 0");
    std::vector<double> out;
    const long n = std::lround(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

Grid parse_grid(const std::string& text) {
    Grid g;
    double* fields[] = {&g.lo, &g.hi, &g.step};
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t end = i < 2 ? text.find(':', start) : text.size();
        if (end == std::string::npos) throw std::invalid_argument("grid must be lo:hi:step");
        const char* first = text.data() + start;
        const char* last = text.data() + end;
        const auto [ptr, ec] = std::from_chars(first, last, *fields[i]);
        if (ec != std::errc() || ptr != last) throw std::invalid_argument("bad number in grid: " + text);
        start = end + 1;
    }
    g.points();
    return g;
}

std::vector<Row> tabulate(const Grid& grid, const Params& params) {
    std::vector<Row> rows;
    for (double x : grid.points()) {
        Row r;
        r.x = x;
        r.value = psi(Complex(x, 0), params);
        r.modulus = std::abs(r.value);
        r.residual = functional_residual(x, params);
        rows.push_back(r);
    }
    return rows;
}

std::string to_csv(const std::vector<Row>& rows) {
    std::string out = "x,re_psi,im_psi,abs_psi,functional_residual\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.6e\n", r.x, r.value.real(), r.value.imag(), r.modulus,
                      r.residual);
        out += buf;
    }
    return out;
}

}  // namespace teich::qdilog
