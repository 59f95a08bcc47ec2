#pragma once

// Exact coordinates on the decorated Teichmuller side: Penner edge values,
// Kashaev triangle pairs, the two log-canonical forms and the moves acting
// on them.

#include "teich/exact_matrix.hpp"
#include "teich/rational.hpp"
#include "teich/triangulation.hpp"

#include <array>
#include <string>
#include <vector>

namespace teich {

struct PennerPoint {
    std::vector<Rational> values;  // by edge id
    friend bool operator==(const PennerPoint&, const PennerPoint&) = default;
};

struct KashaevPoint {
    std::vector<std::array<Rational, 2>> values;  // by triangle id: (t1, t2)

    std::vector<Rational> flat() const;
    static KashaevPoint from_flat(const std::vector<Rational>& flat);
    friend bool operator==(const KashaevPoint&, const KashaevPoint&) = default;
};

// Positive weight per puncture id.
using PunctureWeights = std::vector<Rational>;

// Antisymmetric matrix on d ln of the labelled coordinates.
struct LogBilinearForm {
    std::vector<std::string> labels;
    RationalMatrix matrix;

    bool is_antisymmetric() const { return matrix.transpose() == -matrix; }
};

PennerPoint random_penner(const DecoratedTriangulation& dit, RationalSampler& rng);
KashaevPoint random_kashaev(const DecoratedTriangulation& dit, RationalSampler& rng);
PunctureWeights random_weights(const DecoratedTriangulation& dit, RationalSampler& rng);

// Throws std::invalid_argument on size mismatch or non-positive entries.
void check_point(const DecoratedTriangulation& dit, const PennerPoint& p);
void check_point(const DecoratedTriangulation& dit, const KashaevPoint& k);

PennerPoint penner_flip(const DecoratedTriangulation& dit, const PennerPoint& p, EdgeId e);
PennerPoint decoration_action_R(const DecoratedTriangulation& dit, const PennerPoint& p, const PunctureWeights& f);
KashaevPoint kashaev_from_penner(const DecoratedTriangulation& dit, const PennerPoint& p);
KashaevPoint corner_change(const KashaevPoint& k, TriangleId t);
KashaevPoint decorated_flip(const DecoratedTriangulation& dit, const KashaevPoint& k, EdgeId e);
KashaevPoint action_S(const DecoratedTriangulation& dit, const KashaevPoint& k, const PunctureWeights& f);

PennerPoint transport(const DecoratedTriangulation& dit, const PennerPoint& p, const MoveWord& word);
KashaevPoint transport(const DecoratedTriangulation& dit, const KashaevPoint& k, const MoveWord& word);

// Sum over triangles of dln a ^ dln b + dln b ^ dln c + dln c ^ dln a with
// (a, b, c) the edges at slots 0, 1, 2.
LogBilinearForm alpha_form(const DecoratedTriangulation& dit);
// dln t1 ^ dln t2 per triangle.
LogBilinearForm beta_form(const DecoratedTriangulation& dit);

// Jacobians in log coordinates, J(i, j) = (x_j / y_i) dy_i/dx_j, exact.
RationalMatrix penner_log_jacobian(const DecoratedTriangulation& dit, const PennerPoint& p, const MoveWord& word);
RationalMatrix kashaev_log_jacobian(const DecoratedTriangulation& dit, const KashaevPoint& k, const MoveWord& word);
RationalMatrix action_S_log_jacobian(const DecoratedTriangulation& dit, const KashaevPoint& k,
                                     const PunctureWeights& f);
RationalMatrix kashaev_from_penner_log_jacobian(const DecoratedTriangulation& dit, const PennerPoint& p);

// J^T * dst * J == src.
bool pullback_check(const RationalMatrix& jacobian, const LogBilinearForm& src, const LogBilinearForm& dst);

}  // namespace teich
