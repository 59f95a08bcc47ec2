#pragma once

// Root-of-unity representation: clock and shift matrices per triangle,
// generator images under corner changes and flips, the cyclic quantum
// dilogarithm and the flip intertwiner.

#include "teich/classical.hpp"
#include "teich/triangulation.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

namespace teich::compact {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Tensor product of one N-dimensional factor per listed triangle; the first
// factor is the most significant index.
class CyclicRepContext {
public:
    CyclicRepContext(int N, std::vector<TriangleId> factors);

    int N() const { return N_; }
    std::size_t dimension() const { return dim_; }
    // exp(2 pi i / N) and its square root exp(i pi (N+1) / N).
    Complex omega() const { return omega_; }
    Complex omega_half() const { return omega_half_; }

    const std::vector<TriangleId>& factors() const { return factors_; }
    bool contains(TriangleId t) const { return factor_of(t) >= 0; }
    int factor_of(TriangleId t) const;  // -1 if absent

    // i = 1 (clock) or 2 (shift).
    const Matrix& generator(TriangleId t, int i) const;
    Matrix identity() const { return Matrix::Identity(dim_, dim_); }
    Matrix embed(const Matrix& local, int factor) const;

    const Matrix& clock() const { return clock_; }
    const Matrix& shift() const { return shift_; }

private:
    int N_;
    std::vector<TriangleId> factors_;
    std::size_t dim_;
    Complex omega_;
    Complex omega_half_;
    Matrix clock_;
    Matrix shift_;
    std::vector<std::array<Matrix, 2>> generators_;
};

// Every triangle of dit in id order.
CyclicRepContext build_context(const DecoratedTriangulation& dit, int N);

// Images of the generators of each factor, in factor order.
struct GeneratorImages {
    std::vector<std::array<Matrix, 2>> images;
};

GeneratorImages identity_images(const CyclicRepContext& ctx);

// Largest violation of t1 t2 = w t2 t1, t^N = 1 and commutation between
// factors, each relative to the size of the terms.
double relation_residual(const CyclicRepContext& ctx, const GeneratorImages& images);
double distance(const GeneratorImages& a, const GeneratorImages& b);
double unitarity_residual(const CyclicRepContext& ctx);

// Positive N-th roots of the classical coordinates per triangle.
std::vector<std::array<double, 2>> c_scalars(const KashaevPoint& k, int N);

// h_{x,y} = (x1 y2 / x2)^(1/N) at the classical point.
double flip_parameter(const DecoratedTriangulation& dit, const KashaevPoint& h, EdgeId e, int N);

// One step of forward evaluation: given the images of the generators before
// the move, returns the images of the generators after it.
GeneratorImages morphism_corner_change(const CyclicRepContext& ctx, const GeneratorImages& current, TriangleId t);
GeneratorImages morphism_flip(const CyclicRepContext& ctx, const DecoratedTriangulation& dit,
                              const GeneratorImages& current, EdgeId e, const KashaevPoint& h);
GeneratorImages morphism_relabel(const CyclicRepContext& ctx, const GeneratorImages& current,
                                 const Isomorphism& iso);

struct WordEvaluation {
    GeneratorImages images;
    KashaevPoint h_end;  // classical point carried along the word
    DecoratedTriangulation end;
};
// Composite morphism of a word; h is advanced by the classical flow after
// every step. Moves on triangles outside the context must be rotations.
WordEvaluation compose_word(const CyclicRepContext& ctx, const DecoratedTriangulation& dit, const MoveWord& word,
                            const KashaevPoint& h);

struct LoopReport {
    double identity_residual = 0;  // composite images against the generators
    double relation_residual = 0;  // worst over all intermediate steps
};
// The word must return to dit exactly.
LoopReport compose_loop(const CyclicRepContext& ctx, const DecoratedTriangulation& dit, const MoveWord& word,
                        const KashaevPoint& h);

// Extends generator images to an algebra map on arbitrary matrices through
// the clock-shift monomial basis.
Matrix apply_homomorphism(const CyclicRepContext& ctx, const GeneratorImages& phi, const Matrix& x);

// Cyclic quantum dilogarithm on the points w_k = exp(i pi (2k+1)/N).
struct CyclicPsi {
    int N = 0;
    double lambda = 0;
    double lambda_prime = 0;  // (1 + lambda^N)^(1/N)
    int base_index = 0;       // Psi(w_base) = 1
    std::vector<Complex> points;
    std::vector<Complex> values;

    // Max over k of |Psi(w w)(1 - w lambda)/lambda' - Psi(w)|.
    double recursion_residual() const;
};
CyclicPsi cyclic_psi(int N, double lambda, int base_index = 0);
// |prod_k (1 - w^k w0 lambda) - lambda'^N|.
double closure_residual(int N, double lambda);

// Interpolating polynomial of the table applied to M (M^N = -1).
Matrix psi_of(const CyclicPsi& psi, const Matrix& m);

struct FlipOperator {
    Matrix T;
    Matrix M;                 // -x2^{-1} x1 y2
    double power_residual;    // |M^N + 1|
    double lambda;            // h_{x,y}
};
FlipOperator build_T(const CyclicRepContext& ctx, const DecoratedTriangulation& dit, const KashaevPoint& h, EdgeId e);

struct TConjugationReport {
    double dot_residual = 0;   // T (x.y)_k - x_k T
    double star_residual = 0;  // T (x*y)_k - y_k T
    double power_residual = 0;
    double condition = 0;
};
TConjugationReport t_conjugation_check(const CyclicRepContext& ctx, const DecoratedTriangulation& dit,
                                       const KashaevPoint& h, EdgeId e);

// Flips d, f, d against f, d at a rotation-free pentagon site.
struct PentagonReport {
    Complex scalar;                   // T-product of the first path over the second
    double modulus_deviation = 0;     // | |scalar| - 1 |
    double proportionality_residual = 0;
    double morphism_residual = 0;     // composite images of the two paths
    double loop_residual = 0;         // five-flip loop against the identity
    double relation_residual = 0;
};
PentagonReport pentagon_check(const DecoratedTriangulation& dit, int N, const KashaevPoint& h);

// Dressed generators t_i^(1/N) * generator after a move against the
// noncommutative formulas evaluated on the dressed generators before it.
double dressing_residual(const CyclicRepContext& ctx, const DecoratedTriangulation& dit, const Move& move,
                         const KashaevPoint& h);

}  // namespace teich::compact
