#pragma once

// Closed curves carried by the dual graph of a triangulation, their
// holonomy covectors, Poisson brackets and the momentum map.

#include "teich/classical.hpp"
#include "teich/exact_matrix.hpp"
#include "teich/triangulation.hpp"

#include <string>
#include <vector>

namespace teich {

// A curve piece inside one triangle, entering and leaving through slots.
struct Segment {
    TriangleId tri = 0;
    Slot entry = 0;
    Slot exit = 0;
    friend bool operator==(const Segment&, const Segment&) = default;
};

// Cyclic: the exit of each segment is glued to the entry of the next one.
struct HomologyCycle {
    std::vector<Segment> segments;
    friend bool operator==(const HomologyCycle&, const HomologyCycle&) = default;
};

// Integer covector on the Kashaev log basis (t1, t2 per triangle).
struct LogCovector {
    std::vector<std::string> labels;
    std::vector<long> values;
    friend bool operator==(const LogCovector&, const LogCovector&) = default;
};

// Global sign relating brackets of holonomies to intersection numbers:
// {hol a, hol b} = kPoissonSign * intersection_index(a, b).
inline constexpr int kPoissonSign = 1;

// Throws std::invalid_argument if the segments do not close up or a segment
// turns back through the slot it entered.
void validate_cycle(const DecoratedTriangulation& dit, const HomologyCycle& cycle);

// The crossing sequence as exit incidences; segment i leaves through exits()[i].
std::vector<Incidence> exits(const HomologyCycle& cycle);
// Builds a cycle from exit incidences, cancelling immediate backtracks.
HomologyCycle cycle_from_exits(const DecoratedTriangulation& dit, std::vector<Incidence> exits);

HomologyCycle reversed(const HomologyCycle& cycle);
// Joins two cycles at a crossing both traverse in the same direction.
HomologyCycle concatenate(const DecoratedTriangulation& dit, const HomologyCycle& a, const HomologyCycle& b);

// Small loop around puncture v, counterclockwise on the surface.
HomologyCycle puncture_loop(const DecoratedTriangulation& dit, PunctureId v);

// Fundamental cycles of a breadth-first spanning tree of the dual graph
// rooted at triangle 0; non-tree edges in id order. Size 2g + s - 1.
std::vector<HomologyCycle> homology_basis(const DecoratedTriangulation& dit);

LogCovector holonomy_covector(const DecoratedTriangulation& dit, const HomologyCycle& cycle);

// u . Pi . v with Pi the inverse of the form.
Rational poisson_bracket(const LogCovector& u, const LogCovector& v, const LogBilinearForm& form);

// Signed count of transverse crossings with respect to the surface orientation.
int intersection_index(const DecoratedTriangulation& dit, const HomologyCycle& a, const HomologyCycle& b);

// Rows are holonomy covectors of the given cycles.
RationalMatrix momentum_matrix(const DecoratedTriangulation& dit, const std::vector<HomologyCycle>& basis);

// The formal sum of ln f(v) times the loop around v.
struct WeightedLoops {
    PunctureWeights weights;
    std::vector<HomologyCycle> loops;
};
WeightedLoops xi_f_cycle(const DecoratedTriangulation& dit, const PunctureWeights& f);

// Time-one Hamiltonian flow of the weighted puncture loops against the
// structure group action, both as exact multiplicative factors per
// coordinate. `pi_sign` flips the Poisson tensor for negative controls.
struct FlowCheck {
    std::vector<Rational> flow_factors;
    std::vector<Rational> action_factors;
    bool equal = false;
};
FlowCheck flow_equals_action_check(const DecoratedTriangulation& dit, const PunctureWeights& f, int pi_sign = 1);

// Log-linearized exact sequence of the reduction.
struct ExactnessReport {
    int genus = 0;
    int punctures = 0;
    std::size_t dim_S = 0;         // 2F
    std::size_t dim_ker_L = 0;     // Penner-to-Kashaev map, expected 1
    std::size_t rank_L = 0;
    std::size_t rank_M = 0;        // expected 2g + s - 1
    std::size_t rank_A = 0;        // structure group action, expected s - 1
    bool ML_zero = false;
    bool MA_zero = false;
    bool image_equals_kernel = false;
    std::size_t reduced_dimension = 0;  // dim ker M - rank A
    std::size_t expected_reduced_dimension = 0;  // 6g - 6 + 2s
    bool passed() const;
};
ExactnessReport exactness_report(const DecoratedTriangulation& dit);

// Integer matrices behind the report.
RationalMatrix penner_to_kashaev_linearization(const DecoratedTriangulation& dit);
RationalMatrix action_linearization(const DecoratedTriangulation& dit);

}  // namespace teich
