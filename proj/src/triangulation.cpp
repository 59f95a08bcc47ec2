#include "teich/triangulation.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace teich {

namespace {

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> parent;
};

std::size_t corner_index(TriangleId t, int k) { return static_cast<std::size_t>(3 * t + mod3(k)); }

// Corner identifications induced by one glued edge.
template <class Fn>
void for_each_corner_pair(Incidence a, Incidence b, Fn&& fn) {
    fn(corner_index(a.tri, a.slot + 1), corner_index(b.tri, b.slot + 2));
    fn(corner_index(a.tri, a.slot + 2), corner_index(b.tri, b.slot + 1));
}

MoveError unknown_edge(EdgeId e) {
    return MoveError(MoveError::Kind::UnknownEdge, "unknown edge id " + std::to_string(e));
}

MoveError unknown_triangle(TriangleId t) {
    return MoveError(MoveError::Kind::UnknownTriangle, "unknown triangle id " + std::to_string(t));
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction and validation

DecoratedTriangulation::DecoratedTriangulation(std::vector<Triangle> triangles,
                                               std::vector<std::array<Incidence, 2>> edge_sides,
                                               std::vector<bool> reembedded)
    : triangles_(std::move(triangles)), sides_(std::move(edge_sides)), reembedded_(std::move(reembedded)) {
    if (reembedded_.empty()) reembedded_.assign(sides_.size(), false);
    std::vector<bool> seen;
    for (const auto& t : triangles_)
        for (auto p : t.corners) {
            if (p < 0) throw ConstraintViolation("negative puncture label");
            if (static_cast<std::size_t>(p) >= seen.size()) seen.resize(p + 1, false);
            seen[p] = true;
        }
    punctures_ = static_cast<int>(std::count(seen.begin(), seen.end(), true));
    const int chi = punctures_ - edge_count() + triangle_count();
    if ((2 - chi) % 2 != 0) throw ConstraintViolation("odd Euler characteristic");
    genus_ = (2 - chi) / 2;
    validate();
}

DecoratedTriangulation DecoratedTriangulation::from_gluing(
    int triangle_count, std::span<const std::pair<Incidence, Incidence>> gluing) {
    if (triangle_count <= 0) throw ConstraintViolation("a triangulation needs at least one triangle");
    const auto F = static_cast<std::size_t>(triangle_count);
    if (2 * gluing.size() != 3 * F) throw ConstraintViolation("gluing must pair every slot exactly once");

    std::vector<Triangle> triangles(F);
    std::vector<int> hits(3 * F, 0);
    std::vector<std::array<Incidence, 2>> sides;
    sides.reserve(gluing.size());
    for (std::size_t e = 0; e < gluing.size(); ++e) {
        for (Incidence at : {gluing[e].first, gluing[e].second}) {
            if (at.tri < 0 || at.tri >= triangle_count || at.slot < 0 || at.slot > 2)
                throw ConstraintViolation("gluing references a slot outside the triangle set");
            if (++hits[corner_index(at.tri, at.slot)] > 1)
                throw ConstraintViolation("slot glued twice: (" + std::to_string(at.tri) + "," +
                                          std::to_string(at.slot) + ")");
            triangles[at.tri].edges[at.slot] = static_cast<EdgeId>(e);
        }
        sides.push_back({gluing[e].first, gluing[e].second});
    }

    UnionFind orbits(3 * F);
    for (const auto& s : sides) for_each_corner_pair(s[0], s[1], [&](auto a, auto b) { orbits.unite(a, b); });
    std::vector<int> label(3 * F, -1);
    int next = 0;
    for (std::size_t c = 0; c < 3 * F; ++c) {
        const auto root = orbits.find(c);
        if (label[root] < 0) label[root] = next++;
        triangles[c / 3].corners[c % 3] = label[root];
    }
    return DecoratedTriangulation(std::move(triangles), std::move(sides));
}

void DecoratedTriangulation::validate() const {
    const int F = triangle_count();
    const int E = edge_count();
    if (F == 0) throw ConstraintViolation("empty triangulation");
    if (3 * F != 2 * E) throw ConstraintViolation("3F != 2E");
    if (static_cast<int>(reembedded_.size()) != E) throw ConstraintViolation("re-embedding flags size mismatch");

    std::vector<int> hits(3 * F, 0);
    for (EdgeId e = 0; e < E; ++e) {
        const auto& s = sides_[e];
        for (Incidence at : s) {
            if (!has_triangle(at.tri) || at.slot < 0 || at.slot > 2)
                throw ConstraintViolation("edge " + std::to_string(e) + " has an invalid side");
            if (triangles_[at.tri].edges[at.slot] != e)
                throw ConstraintViolation("edge table disagrees with triangle slots at edge " + std::to_string(e));
            ++hits[corner_index(at.tri, at.slot)];
        }
        if (s[0] == s[1]) throw ConstraintViolation("edge glued to itself");
    }
    if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; }))
        throw ConstraintViolation("gluing is not a fixed-point-free involution on slots");

    // Corner labels must be exactly the corner orbits.
    UnionFind orbits(3 * F);
    for (const auto& s : sides_) {
        for_each_corner_pair(s[0], s[1], [&](auto a, auto b) {
            if (triangles_[a / 3].corners[a % 3] != triangles_[b / 3].corners[b % 3])
                throw ConstraintViolation("corner labels disagree across edge gluing");
            orbits.unite(a, b);
        });
    }
    std::vector<long> root_of_label(punctures_, -1);
    for (std::size_t c = 0; c < 3 * static_cast<std::size_t>(F); ++c) {
        const int p = triangles_[c / 3].corners[c % 3];
        if (p >= punctures_) throw ConstraintViolation("puncture labels are not contiguous");
        const auto root = static_cast<long>(orbits.find(c));
        if (root_of_label[p] < 0) root_of_label[p] = root;
        if (root_of_label[p] != root) throw ConstraintViolation("one puncture label covers two corner orbits");
    }
    std::vector<long> roots(root_of_label);
    std::sort(roots.begin(), roots.end());
    if (std::adjacent_find(roots.begin(), roots.end()) != roots.end())
        throw ConstraintViolation("two puncture labels share a corner orbit");

    // Connectivity through the gluing.
    std::vector<bool> reached(F, false);
    std::queue<TriangleId> pending;
    pending.push(0);
    reached[0] = true;
    int count = 1;
    while (!pending.empty()) {
        const TriangleId t = pending.front();
        pending.pop();
        for (int k = 0; k < 3; ++k) {
            const auto next = partner({t, k}).tri;
            if (!reached[next]) {
                reached[next] = true;
                ++count;
                pending.push(next);
            }
        }
    }
    if (count != F) throw ConstraintViolation("surface is not connected");

    if (genus_ < 0) throw ConstraintViolation("negative genus");
    if (2 * genus_ - 2 + punctures_ <= 0) throw ConstraintViolation("2g - 2 + s must be positive");
    if (F != 2 * (2 * genus_ - 2 + punctures_)) throw ConstraintViolation("F != 2(2g - 2 + s)");
}

const Triangle& DecoratedTriangulation::triangle(TriangleId t) const {
    if (!has_triangle(t)) throw unknown_triangle(t);
    return triangles_[t];
}

const std::array<Incidence, 2>& DecoratedTriangulation::sides(EdgeId e) const {
    if (!has_edge(e)) throw unknown_edge(e);
    return sides_[e];
}

bool DecoratedTriangulation::reembedded(EdgeId e) const {
    if (!has_edge(e)) throw unknown_edge(e);
    return reembedded_[e];
}

Incidence DecoratedTriangulation::partner(Incidence at) const {
    const auto& s = sides(edge_at(at));
    const Incidence here{at.tri, mod3(at.slot)};
    return s[0] == here ? s[1] : s[0];
}

bool DecoratedTriangulation::is_self_folded(EdgeId e) const {
    const auto& s = sides(e);
    return s[0].tri == s[1].tri;
}

std::array<PunctureId, 2> DecoratedTriangulation::endpoints(EdgeId e) const {
    const Incidence at = sides(e)[0];
    const auto& t = triangles_[at.tri];
    return {t.corners[mod3(at.slot + 1)], t.corners[mod3(at.slot + 2)]};
}

bool operator==(const DecoratedTriangulation& a, const DecoratedTriangulation& b) {
    if (a.triangles_ != b.triangles_ || a.sides_.size() != b.sides_.size()) return false;
    for (std::size_t e = 0; e < a.sides_.size(); ++e) {
        auto x = a.sides_[e];
        auto y = b.sides_[e];
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        if (x != y) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Canonical surfaces

namespace {

using PartnerTable = std::vector<std::array<Incidence, 3>>;

void glue(PartnerTable& table, Incidence a, Incidence b) {
    table[a.tri][a.slot] = b;
    table[b.tri][b.slot] = a;
}

// Replaces triangle t by three triangles around a new puncture; the outer
// side k of t becomes slot 0 of the k-th piece.
void split_triangle(PartnerTable& table, TriangleId t) {
    const auto F = static_cast<TriangleId>(table.size());
    const std::array<TriangleId, 3> piece{t, F, F + 1};
    const auto old = table[t];
    table.resize(table.size() + 2);
    auto remap = [&](Incidence at) { return at.tri == t ? Incidence{piece[at.slot], 0} : at; };
    for (int k = 0; k < 3; ++k) glue(table, {piece[k], 0}, remap(old[k]));
    for (int k = 0; k < 3; ++k) glue(table, {piece[k], 1}, {piece[(k + 1) % 3], 2});
}

}  // namespace

DecoratedTriangulation new_surface(int genus, int punctures) {
    if (genus < 0 || punctures < 1 || 2 * genus - 2 + punctures <= 0) {
        throw ConstraintViolation("no ideal triangulation for g=" + std::to_string(genus) +
                                  ", s=" + std::to_string(punctures) + " (need g>=0, s>=1, 2g-2+s>0)");
    }
    PartnerTable table;
    int splits = 0;
    if (genus == 0) {
        // Two triangles glued along their boundary: the thrice-punctured sphere.
        table.resize(2);
        glue(table, {0, 0}, {1, 0});
        glue(table, {0, 1}, {1, 2});
        glue(table, {0, 2}, {1, 1});
        splits = punctures - 3;
    } else {
        // Fan from polygon vertex 0; triangle i-1 has corners (0, i, i+1).
        const int n = 4 * genus;
        table.resize(n - 2);
        auto polygon_side = [n](int side) -> Incidence {
            if (side == 0) return {0, 2};
            if (side == n - 1) return {n - 3, 1};
            return {side - 1, 0};
        };
        for (int m = 2; m <= n - 2; ++m) glue(table, {m - 2, 1}, {m - 1, 2});
        for (int h = 0; h < genus; ++h) {
            glue(table, polygon_side(4 * h), polygon_side(4 * h + 2));
            glue(table, polygon_side(4 * h + 1), polygon_side(4 * h + 3));
        }
        splits = punctures - 1;
    }
    for (int i = 0; i < splits; ++i) split_triangle(table, 0);

    std::vector<std::pair<Incidence, Incidence>> gluing;
    for (TriangleId t = 0; t < static_cast<TriangleId>(table.size()); ++t)
        for (int k = 0; k < 3; ++k) {
            const Incidence here{t, k};
            if (here < table[t][k]) gluing.emplace_back(here, table[t][k]);
        }
    return DecoratedTriangulation::from_gluing(static_cast<int>(table.size()), gluing);
}

// ---------------------------------------------------------------------------
// Moves

DecoratedTriangulation rotate_corner(const DecoratedTriangulation& dit, TriangleId t) {
    if (!dit.has_triangle(t)) throw unknown_triangle(t);
    std::vector<Triangle> triangles(dit.triangles().begin(), dit.triangles().end());
    const Triangle old = triangles[t];
    for (int k = 0; k < 3; ++k) {
        triangles[t].edges[k] = old.edges[mod3(k + 1)];
        triangles[t].corners[k] = old.corners[mod3(k + 1)];
    }
    std::vector<std::array<Incidence, 2>> sides(dit.all_sides().begin(), dit.all_sides().end());
    for (auto& s : sides)
        for (auto& at : s)
            if (at.tri == t) at.slot = mod3(at.slot - 1);
    return DecoratedTriangulation(std::move(triangles), std::move(sides), dit.reembedded_flags());
}

FlipRoles flip_roles(const DecoratedTriangulation& dit, EdgeId e) {
    if (!dit.has_edge(e)) throw unknown_edge(e);
    if (dit.is_self_folded(e))
        throw MoveError(MoveError::Kind::SelfFolded, "edge " + std::to_string(e) + " is self-folded");
    const auto& s = dit.sides(e);
    if (s[0].slot == 1 && s[1].slot == 2) return {s[0].tri, s[1].tri};
    if (s[0].slot == 2 && s[1].slot == 1) return {s[1].tri, s[0].tri};
    throw MoveError(MoveError::Kind::NotNormal,
                    "edge " + std::to_string(e) + " is not in flip position (use normalize_for_flip)");
}

DecoratedTriangulation flip(const DecoratedTriangulation& dit, EdgeId e) {
    const auto [x, y] = flip_roles(dit, e);
    std::vector<Triangle> triangles(dit.triangles().begin(), dit.triangles().end());
    const Triangle X = triangles[x];
    const Triangle Y = triangles[y];
    // x' = (top, x.corner1, y.corner2); y' = (x.corner1, bottom, y.corner2).
    triangles[x] = Triangle{{e, Y.edges[1], X.edges[2]}, {X.corners[0], X.corners[1], Y.corners[2]}};
    triangles[y] = Triangle{{Y.edges[0], e, X.edges[0]}, {X.corners[1], X.corners[2], Y.corners[2]}};

    auto remap = [&](Incidence at) -> Incidence {
        if (at.tri == x && at.slot == 0) return {y, 2};
        if (at.tri == y && at.slot == 1) return {x, 1};
        return at;  // (x,2) and (y,0) keep their positions
    };
    std::vector<std::array<Incidence, 2>> sides(dit.all_sides().begin(), dit.all_sides().end());
    for (EdgeId other = 0; other < dit.edge_count(); ++other) {
        if (other == e) continue;
        for (auto& at : sides[other]) at = remap(at);
    }
    sides[e] = {Incidence{x, 0}, Incidence{y, 1}};
    auto flags = dit.reembedded_flags();
    flags[e] = true;
    return DecoratedTriangulation(std::move(triangles), std::move(sides), std::move(flags));
}

MoveWord normalize_for_flip(const DecoratedTriangulation& dit, EdgeId e) {
    if (!dit.has_edge(e)) throw unknown_edge(e);
    if (dit.is_self_folded(e))
        throw MoveError(MoveError::Kind::SelfFolded, "edge " + std::to_string(e) + " is self-folded");
    auto s = dit.sides(e);
    if (s[1] < s[0]) std::swap(s[0], s[1]);
    // After r rotations an edge at slot j sits at slot j - r.
    const int first_as_x = mod3(s[0].slot - 1) + mod3(s[1].slot - 2);
    const int first_as_y = mod3(s[0].slot - 2) + mod3(s[1].slot - 1);
    const bool x_first = first_as_x <= first_as_y;
    const int rot_first = x_first ? mod3(s[0].slot - 1) : mod3(s[0].slot - 2);
    const int rot_second = x_first ? mod3(s[1].slot - 2) : mod3(s[1].slot - 1);
    MoveWord word;
    const Incidence x_side = x_first ? s[0] : s[1];
    const Incidence y_side = x_first ? s[1] : s[0];
    const int rot_x = x_first ? rot_first : rot_second;
    const int rot_y = x_first ? rot_second : rot_first;
    for (int i = 0; i < rot_x; ++i) word.push_back(RotateMove{x_side.tri});
    for (int i = 0; i < rot_y; ++i) word.push_back(RotateMove{y_side.tri});
    return word;
}

MoveWord normalized_flip(const DecoratedTriangulation& dit, EdgeId e) {
    MoveWord word = normalize_for_flip(dit, e);
    word.push_back(FlipMove{e});
    return word;
}

// ---------------------------------------------------------------------------
// Isomorphisms

bool Isomorphism::preserves_decoration() const {
    return std::all_of(rotation.begin(), rotation.end(), [](int r) { return mod3(r) == 0; });
}

bool Isomorphism::is_identity() const {
    for (std::size_t i = 0; i < triangles.size(); ++i)
        if (triangles[i] != static_cast<TriangleId>(i)) return false;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i] != static_cast<EdgeId>(i)) return false;
    for (std::size_t i = 0; i < punctures.size(); ++i)
        if (punctures[i] != static_cast<PunctureId>(i)) return false;
    return preserves_decoration();
}

Isomorphism Isomorphism::inverse() const {
    Isomorphism inv;
    inv.triangles.resize(triangles.size());
    inv.rotation.resize(rotation.size());
    inv.edges.resize(edges.size());
    inv.punctures.resize(punctures.size());
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        inv.triangles[triangles[t]] = static_cast<TriangleId>(t);
        inv.rotation[triangles[t]] = mod3(-rotation[t]);
    }
    for (std::size_t e = 0; e < edges.size(); ++e) inv.edges[edges[e]] = static_cast<EdgeId>(e);
    for (std::size_t p = 0; p < punctures.size(); ++p) inv.punctures[punctures[p]] = static_cast<PunctureId>(p);
    return inv;
}

Isomorphism compose(const Isomorphism& first, const Isomorphism& second) {
    Isomorphism out;
    out.triangles.resize(first.triangles.size());
    out.rotation.resize(first.rotation.size());
    out.edges.resize(first.edges.size());
    out.punctures.resize(first.punctures.size());
    for (std::size_t t = 0; t < first.triangles.size(); ++t) {
        out.triangles[t] = second.triangles.at(first.triangles[t]);
        out.rotation[t] = mod3(first.rotation[t] + second.rotation.at(first.triangles[t]));
    }
    for (std::size_t e = 0; e < first.edges.size(); ++e) out.edges[e] = second.edges.at(first.edges[e]);
    for (std::size_t p = 0; p < first.punctures.size(); ++p)
        out.punctures[p] = second.punctures.at(first.punctures[p]);
    return out;
}

namespace {

std::optional<Isomorphism> propagate(const DecoratedTriangulation& d1, const DecoratedTriangulation& d2,
                                     Incidence from, Incidence to, bool decorated) {
    const int F = d1.triangle_count();
    const int r0 = mod3(to.slot - from.slot);
    if (decorated && r0 != 0) return std::nullopt;

    Isomorphism iso;
    iso.triangles.assign(F, -1);
    iso.rotation.assign(F, 0);
    std::vector<bool> used(F, false);
    iso.triangles[from.tri] = to.tri;
    iso.rotation[from.tri] = r0;
    used[to.tri] = true;
    std::queue<TriangleId> pending;
    pending.push(from.tri);
    while (!pending.empty()) {
        const TriangleId t = pending.front();
        pending.pop();
        for (int k = 0; k < 3; ++k) {
            const Incidence there = d1.partner({t, k});
            const Incidence image = d2.partner({iso.triangles[t], mod3(k + iso.rotation[t])});
            const int r = mod3(image.slot - there.slot);
            if (iso.triangles[there.tri] < 0) {
                if (used[image.tri] || (decorated && r != 0)) return std::nullopt;
                iso.triangles[there.tri] = image.tri;
                iso.rotation[there.tri] = r;
                used[image.tri] = true;
                pending.push(there.tri);
            } else if (iso.triangles[there.tri] != image.tri || iso.rotation[there.tri] != r) {
                return std::nullopt;
            }
        }
    }
    if (std::find(iso.triangles.begin(), iso.triangles.end(), -1) != iso.triangles.end()) return std::nullopt;

    iso.edges.assign(d1.edge_count(), -1);
    iso.punctures.assign(d1.puncture_count(), -1);
    std::vector<bool> edge_used(d2.edge_count(), false);
    std::vector<bool> puncture_used(d2.puncture_count(), false);
    for (TriangleId t = 0; t < F; ++t) {
        const auto& src = d1.triangle(t);
        const auto& dst = d2.triangle(iso.triangles[t]);
        for (int k = 0; k < 3; ++k) {
            const int k2 = mod3(k + iso.rotation[t]);
            auto& em = iso.edges[src.edges[k]];
            if (em < 0) {
                if (edge_used[dst.edges[k2]]) return std::nullopt;
                em = dst.edges[k2];
                edge_used[em] = true;
            } else if (em != dst.edges[k2]) {
                return std::nullopt;
            }
            auto& pm = iso.punctures[src.corners[k]];
            if (pm < 0) {
                if (puncture_used[dst.corners[k2]]) return std::nullopt;
                pm = dst.corners[k2];
                puncture_used[pm] = true;
            } else if (pm != dst.corners[k2]) {
                return std::nullopt;
            }
        }
    }
    return iso;
}

}  // namespace

std::optional<Isomorphism> is_isomorphic(const DecoratedTriangulation& d1, const DecoratedTriangulation& d2,
                                         const IsomorphismOptions& options) {
    if (d1.triangle_count() != d2.triangle_count() || d1.edge_count() != d2.edge_count() ||
        d1.puncture_count() != d2.puncture_count() || d1.genus() != d2.genus()) {
        return std::nullopt;
    }
    if (options.anchor) {
        const auto [from, to] = *options.anchor;
        if (!d1.has_triangle(from.tri) || !d2.has_triangle(to.tri)) return std::nullopt;
        return propagate(d1, d2, {from.tri, mod3(from.slot)}, {to.tri, mod3(to.slot)}, options.decorated);
    }
    for (TriangleId t = 0; t < d2.triangle_count(); ++t) {
        for (int r = 0; r < (options.decorated ? 1 : 3); ++r) {
            if (auto iso = propagate(d1, d2, {0, 0}, {t, r}, options.decorated)) return iso;
        }
    }
    return std::nullopt;
}

DecoratedTriangulation relabel(const DecoratedTriangulation& dit, const Isomorphism& iso) {
    const auto F = static_cast<std::size_t>(dit.triangle_count());
    const auto E = static_cast<std::size_t>(dit.edge_count());
    const auto V = static_cast<std::size_t>(dit.puncture_count());
    if (iso.triangles.size() != F || iso.rotation.size() != F || iso.edges.size() != E || iso.punctures.size() != V)
        throw MoveError(MoveError::Kind::BadRelabel, "relabel map does not match the triangulation size");
    if (!iso.preserves_decoration())
        throw MoveError(MoveError::Kind::BadRelabel, "relabel map must preserve decorations");
    auto is_perm = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != static_cast<int>(i)) return false;
        return true;
    };
    if (!is_perm(iso.triangles) || !is_perm(iso.edges) || !is_perm(iso.punctures))
        throw MoveError(MoveError::Kind::BadRelabel, "relabel map is not a bijection");

    std::vector<Triangle> triangles(F);
    for (std::size_t t = 0; t < F; ++t) {
        const auto& src = dit.triangle(static_cast<TriangleId>(t));
        auto& dst = triangles[iso.triangles[t]];
        for (int k = 0; k < 3; ++k) {
            dst.edges[k] = iso.edges[src.edges[k]];
            dst.corners[k] = iso.punctures[src.corners[k]];
        }
    }
    std::vector<std::array<Incidence, 2>> sides(E);
    std::vector<bool> flags(E);
    for (std::size_t e = 0; e < E; ++e) {
        const auto& s = dit.sides(static_cast<EdgeId>(e));
        sides[iso.edges[e]] = {Incidence{iso.triangles[s[0].tri], s[0].slot},
                               Incidence{iso.triangles[s[1].tri], s[1].slot}};
        flags[iso.edges[e]] = dit.reembedded(static_cast<EdgeId>(e));
    }
    return DecoratedTriangulation(std::move(triangles), std::move(sides), std::move(flags));
}

// ---------------------------------------------------------------------------
// Words

DecoratedTriangulation apply_move(const DecoratedTriangulation& dit, const Move& move) {
    return std::visit(
        [&](const auto& m) -> DecoratedTriangulation {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, FlipMove>) {
                return flip(dit, m.edge);
            } else if constexpr (std::is_same_v<T, RotateMove>) {
                return rotate_corner(dit, m.tri);
            } else {
                return relabel(dit, m.map);
            }
        },
        move);
}

DecoratedTriangulation apply_word(const DecoratedTriangulation& dit, const MoveWord& word) {
    DecoratedTriangulation current = dit;
    for (std::size_t i = 0; i < word.size(); ++i) {
        try {
            current = apply_move(current, word[i]);
        } catch (const MoveError& err) {
            throw WordError(i, err.what());
        }
    }
    return current;
}

std::optional<MoveWord> close_loop(const DecoratedTriangulation& current, const DecoratedTriangulation& target,
                                   const IsomorphismOptions& options) {
    auto iso = is_isomorphic(current, target, options);
    if (!iso) return std::nullopt;
    MoveWord word;
    for (TriangleId t = 0; t < current.triangle_count(); ++t) {
        // Each rotation of t raises its rotation offset by one.
        for (int q = 0; q < mod3(-iso->rotation[t]); ++q) word.push_back(RotateMove{t});
        iso->rotation[t] = 0;
    }
    word.push_back(RelabelMove{*iso});
    return word;
}

std::pair<Incidence, Incidence> edge_anchor(const DecoratedTriangulation& current,
                                            const DecoratedTriangulation& target, EdgeId e) {
    return {current.sides(e)[0], target.sides(e)[0]};
}

MoveWord conjugate_word(const MoveWord& word, const Isomorphism& iso) {
    if (!iso.preserves_decoration())
        throw MoveError(MoveError::Kind::BadRelabel, "conjugating map must preserve decorations");
    const Isomorphism inv = iso.inverse();
    MoveWord out;
    out.reserve(word.size());
    for (const auto& move : word) {
        if (const auto* f = std::get_if<FlipMove>(&move)) {
            out.push_back(FlipMove{iso.edges.at(f->edge)});
        } else if (const auto* r = std::get_if<RotateMove>(&move)) {
            out.push_back(RotateMove{iso.triangles.at(r->tri)});
        } else {
            const auto& sigma = std::get<RelabelMove>(move).map;
            out.push_back(RelabelMove{compose(compose(inv, sigma), iso)});
        }
    }
    return out;
}

MoveWord splice_loops(const MoveWord& w1, const MoveWord& w2) {
    if (w1.empty() || !std::holds_alternative<RelabelMove>(w1.back()))
        throw std::invalid_argument("splice_loops: first word must end with a relabel");
    const Isomorphism& sigma = std::get<RelabelMove>(w1.back()).map;
    MoveWord out(w1.begin(), w1.end() - 1);
    const MoveWord inner = conjugate_word(w2, sigma.inverse());
    out.insert(out.end(), inner.begin(), inner.end());
    out.push_back(w1.back());
    return out;
}

std::optional<PentagonSite> find_pentagon(const DecoratedTriangulation& dit) {
    for (TriangleId b = 0; b < dit.triangle_count(); ++b) {
        for (int i = 0; i < 3; ++i) {
            const int j = mod3(i - 1);
            const Incidence over_d = dit.partner({b, i});
            const Incidence over_f = dit.partner({b, j});
            const TriangleId a = over_d.tri;
            const TriangleId c = over_f.tri;
            if (a == b || c == b || a == c) continue;
            PentagonSite site;
            site.a = a;
            site.b = b;
            site.c = c;
            site.d = dit.edge_at({b, i});
            site.f = dit.edge_at({b, j});
            for (int q = 0; q < mod3(i - 2); ++q) site.preparation.push_back(RotateMove{b});
            for (int q = 0; q < mod3(over_d.slot - 1); ++q) site.preparation.push_back(RotateMove{a});
            for (int q = 0; q < mod3(over_f.slot - 2); ++q) site.preparation.push_back(RotateMove{c});
            return site;
        }
    }
    return std::nullopt;
}

MoveWord pentagon_loop(const DecoratedTriangulation& dit, EdgeId d, EdgeId f) {
    MoveWord word;
    DecoratedTriangulation current = dit;
    for (EdgeId e : {d, f, d, f, d}) {
        const MoveWord step = normalized_flip(current, e);
        current = apply_word(current, step);
        word.insert(word.end(), step.begin(), step.end());
    }
    EdgeId anchor = 0;
    while (anchor == d || anchor == f) ++anchor;
    auto closing = close_loop(current, dit, {.decorated = false, .anchor = edge_anchor(current, dit, anchor)});
    if (!closing) throw std::logic_error("pentagon word did not return to the starting triangulation");
    word.insert(word.end(), closing->begin(), closing->end());
    return word;
}

}  // namespace teich
