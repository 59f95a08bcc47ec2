#pragma once

// Non-compact quantum dilogarithm psi(z) from its contour integral:
//   psi(z) = exp( 1/4 * int e^{-ixz} / (sinh(pi x) sinh(hbar x)) dx / x )
// along the horizontal line Im x = delta.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace teich::qdilog {

using Complex = std::complex<double>;

class QDilogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Params {
    double hbar = 1.0;
    double delta = 0;    // 0 selects 0.5 * min(1, pi / hbar)
    double t_max = 0;    // 0 selects the tail bound
    double cutoff_scale = 1.0;  // multiplies the automatic t_max
    double tol = 1e-12;  // relative tolerance on psi
    double panel = 1.0;  // width of the quadrature panels
    unsigned max_depth = 15;

    // Throws std::invalid_argument.
    void validate() const;
    double effective_delta() const;
};

// Throws std::invalid_argument for z outside the strip and QDilogError when
// the quadrature misses the tolerance.
Complex psi(Complex z, const Params& params);
// 1/4 of the contour integral, i.e. log psi.
Complex log_psi(Complex z, const Params& params);

// Half-width at which the integrand tail drops below tol / 100.
double tail_cutoff(Complex z, const Params& params);

// |psi(x - i hbar) - psi(x + i hbar)(1 + e^x)| / |psi(x - i hbar)|.
// `with_factor = false` drops the (1 + e^x) factor for negative controls.
double functional_residual(double x, const Params& params, bool with_factor = true);

// Same quantities with half-width panels and doubled cutoff.
Params refined(const Params& params);

struct Row {
    double x = 0;
    Complex value;
    double modulus = 0;
    double residual = 0;
};

struct Grid {
    double lo = -5;
    double hi = 5;
    double step = 0.25;
    std::vector<double> points() const;
};
// Parses "lo:hi:step".
Grid parse_grid(const std::string& text);

std::vector<Row> tabulate(const Grid& grid, const Params& params);
std::string to_csv(const std::vector<Row>& rows);

}  // namespace teich::qdilog
