#pragma once

// Decorated ideal triangulations of a punctured surface.
//
// Conventions used throughout the library:
//  - corner k of a triangle sits at puncture `corners[k]`; corner 0 is the
//    distinguished corner.
//  - slot k carries the edge opposite corner k, so the distinguished corner
//    lies between slots 1 and 2.
//  - corners 0, 1, 2 run clockwise with respect to the surface orientation.
//    Traversing the triangle boundary in the opposite (combinatorial) sense,
//    slot k runs from corner k+1 to corner k+2.
//  - gluings reverse that boundary direction, so every slot pairing describes
//    an oriented surface.
//
// All values are immutable once built; every move returns a new object.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace teich {

using TriangleId = int;
using EdgeId = int;
using PunctureId = int;
using Slot = int;

inline constexpr int mod3(int k) { return ((k % 3) + 3) % 3; }

struct Incidence {
    TriangleId tri = 0;
    Slot slot = 0;
    friend auto operator<=>(const Incidence&, const Incidence&) = default;
};

struct Triangle {
    std::array<EdgeId, 3> edges{};
    std::array<PunctureId, 3> corners{};
    friend bool operator==(const Triangle&, const Triangle&) = default;
};

// Rejected (g, s) or malformed gluing data.
class ConstraintViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MoveError : public std::runtime_error {
public:
    enum class Kind { UnknownTriangle, UnknownEdge, SelfFolded, NotNormal, BadRelabel };
    MoveError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

class DecoratedTriangulation {
public:
    // Edges are numbered by the order of `gluing`; `gluing[e].first` becomes
    // side 0 of edge e. Punctures are labelled in order of first appearance
    // when corners are scanned as (triangle, corner) lexicographically.
    static DecoratedTriangulation from_gluing(int triangle_count,
                                              std::span<const std::pair<Incidence, Incidence>> gluing);

    // Full constructor used by moves and deserialization; validates.
    DecoratedTriangulation(std::vector<Triangle> triangles,
                           std::vector<std::array<Incidence, 2>> edge_sides,
                           std::vector<bool> reembedded = {});

    int genus() const { return genus_; }
    int puncture_count() const { return punctures_; }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }
    int edge_count() const { return static_cast<int>(sides_.size()); }

    const Triangle& triangle(TriangleId t) const;
    std::span<const Triangle> triangles() const { return triangles_; }
    const std::array<Incidence, 2>& sides(EdgeId e) const;
    std::span<const std::array<Incidence, 2>> all_sides() const { return sides_; }
    bool reembedded(EdgeId e) const;
    const std::vector<bool>& reembedded_flags() const { return reembedded_; }

    EdgeId edge_at(Incidence at) const { return triangle(at.tri).edges[mod3(at.slot)]; }
    Incidence partner(Incidence at) const;
    bool is_self_folded(EdgeId e) const;
    // Punctures joined by edge e (side 0 orientation: corner slot+1 then slot+2).
    std::array<PunctureId, 2> endpoints(EdgeId e) const;

    bool has_triangle(TriangleId t) const { return t >= 0 && t < triangle_count(); }
    bool has_edge(EdgeId e) const { return e >= 0 && e < edge_count(); }

    // Throws ConstraintViolation describing the first broken invariant.
    void validate() const;

    // Same triangles, same corner labels and the same slot pairing.
    friend bool operator==(const DecoratedTriangulation& a, const DecoratedTriangulation& b);

private:
    std::vector<Triangle> triangles_;
    std::vector<std::array<Incidence, 2>> sides_;
    std::vector<bool> reembedded_;
    int genus_ = 0;
    int punctures_ = 0;
};

// One decorated triangulation per (g, s): a fan-triangulated 4g-gon with the
// commutator side pairing (or the doubled triangle when g = 0), followed by
// 1-3 splits of triangle 0 until all s punctures exist.
DecoratedTriangulation new_surface(int genus, int punctures);

// Moves the distinguished corner of t from corner 0 to corner 1.
DecoratedTriangulation rotate_corner(const DecoratedTriangulation& dit, TriangleId t);

// Roles in a flip that is in normal position: e is slot 1 of x and slot 2 of y.
struct FlipRoles {
    TriangleId x = 0;
    TriangleId y = 0;
};
// Throws MoveError (SelfFolded / NotNormal / UnknownEdge).
FlipRoles flip_roles(const DecoratedTriangulation& dit, EdgeId e);

// Decorated elementary move. Triangle ids x, y are kept for x', y' and the
// edge id e is kept for e' (flagged as re-embedded).
DecoratedTriangulation flip(const DecoratedTriangulation& dit, EdgeId e);

// A triangulation isomorphism d1 -> d2. Slot k of t maps to slot
// k + rotation[t] of triangles[t]; decoration-preserving iff all rotations
// are zero.
struct Isomorphism {
    std::vector<TriangleId> triangles;
    std::vector<int> rotation;
    std::vector<EdgeId> edges;
    std::vector<PunctureId> punctures;

    bool preserves_decoration() const;
    bool is_identity() const;
    Isomorphism inverse() const;
    friend bool operator==(const Isomorphism&, const Isomorphism&) = default;
};

struct IsomorphismOptions {
    bool decorated = true;
    // Forces anchor.first (in d1) onto anchor.second (in d2).
    std::optional<std::pair<Incidence, Incidence>> anchor;
};

// Deterministic search: triangle 0 / slot 0 of d1 (or the anchor) is tried
// against every target in lexicographic order; the first consistent
// propagation wins.
std::optional<Isomorphism> is_isomorphic(const DecoratedTriangulation& d1, const DecoratedTriangulation& d2,
                                         const IsomorphismOptions& options = {});

// Renames ids along a decoration-preserving isomorphism.
DecoratedTriangulation relabel(const DecoratedTriangulation& dit, const Isomorphism& iso);

struct FlipMove {
    EdgeId edge = 0;
    friend bool operator==(const FlipMove&, const FlipMove&) = default;
};
struct RotateMove {
    TriangleId tri = 0;
    friend bool operator==(const RotateMove&, const RotateMove&) = default;
};
struct RelabelMove {
    Isomorphism map;
    friend bool operator==(const RelabelMove&, const RelabelMove&) = default;
};
using Move = std::variant<FlipMove, RotateMove, RelabelMove>;
using MoveWord = std::vector<Move>;

class WordError : public std::runtime_error {
public:
    WordError(std::size_t index, const std::string& what)
        : std::runtime_error("move " + std::to_string(index) + ": " + what), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

DecoratedTriangulation apply_move(const DecoratedTriangulation& dit, const Move& move);
// Throws WordError carrying the index of the first inapplicable move.
DecoratedTriangulation apply_word(const DecoratedTriangulation& dit, const MoveWord& word);

// Shortest RotateCorner word (length <= 3) after which flip(., e) applies.
MoveWord normalize_for_flip(const DecoratedTriangulation& dit, EdgeId e);

// normalize_for_flip(dit, e) followed by the flip itself.
MoveWord normalized_flip(const DecoratedTriangulation& dit, EdgeId e);

// Rotations followed by a relabel taking `current` back onto `target`
// exactly, if the two are isomorphic as undecorated triangulations.
std::optional<MoveWord> close_loop(const DecoratedTriangulation& current, const DecoratedTriangulation& target,
                                   const IsomorphismOptions& options = {.decorated = false, .anchor = {}});

// Anchor pinning side 0 of edge e in both triangulations. Edge sides are
// tracked through moves, so this selects the identity on untouched arcs.
std::pair<Incidence, Incidence> edge_anchor(const DecoratedTriangulation& current,
                                            const DecoratedTriangulation& target, EdgeId e);

// Translates the ids used by a word along a relabeling: a word valid on
// dit becomes valid on relabel(dit, iso).
MoveWord conjugate_word(const MoveWord& word, const Isomorphism& iso);

Isomorphism compose(const Isomorphism& first, const Isomorphism& second);  // second after first

// Two loops based at the same triangulation, each ending in a relabel. The
// result runs w1 up to its relabel, then w2 translated into that frame, then
// the relabel of w1; it reaches the same end as w1 followed by w2.
MoveWord splice_loops(const MoveWord& w1, const MoveWord& w2);

// Three distinct triangles a, b, c with edge d = a.slot1 = b.slot2 and
// f = b.slot1 = c.slot2 after the returned rotations. In that position the
// flips d, f, d and f, d end at the same decorated triangulation.
struct PentagonSite {
    MoveWord preparation;
    TriangleId a = 0, b = 0, c = 0;
    EdgeId d = 0, f = 0;
};
std::optional<PentagonSite> find_pentagon(const DecoratedTriangulation& dit);

// The closed pentagon loop: flips d, f, d, f, d (each normalized) followed by
// close_loop anchored on an edge outside {d, f}.
MoveWord pentagon_loop(const DecoratedTriangulation& dit, EdgeId d, EdgeId f);

}  // namespace teich
