#pragma once

// Coordinate maps of the elementary moves, generic in the scalar type so the
// same code runs on exact rationals and on Jets.
//
// Penner values are indexed by edge id. Kashaev values are flat: entry 2t is
// t_1 of triangle t, entry 2t+1 is t_2.

#include "teich/rational.hpp"
#include "teich/triangulation.hpp"

#include <stdexcept>
#include <vector>

namespace teich::flows {

template <class T>
T slot_value(const DecoratedTriangulation& dit, const std::vector<T>& edge_values, TriangleId t, int k) {
    return edge_values[dit.triangle(t).edges[mod3(k)]];
}

// e' = (ac + bd)/e over the quadrilateral around e; decorations are ignored.
template <class T>
std::vector<T> penner_flip(const DecoratedTriangulation& dit, std::vector<T> v, EdgeId e) {
    if (!dit.has_edge(e)) throw MoveError(MoveError::Kind::UnknownEdge, "unknown edge id " + std::to_string(e));
    if (dit.is_self_folded(e))
        throw MoveError(MoveError::Kind::SelfFolded, "edge " + std::to_string(e) + " is self-folded");
    const auto [p, q] = dit.sides(e);
    const T ac = slot_value(dit, v, p.tri, p.slot + 1) * slot_value(dit, v, q.tri, q.slot + 1);
    const T bd = slot_value(dit, v, p.tri, p.slot + 2) * slot_value(dit, v, q.tri, q.slot + 2);
    v[e] = (ac + bd) / v[e];
    return v;
}

template <class T>
std::vector<T> corner_change(std::vector<T> k, TriangleId t) {
    const T t1 = k[2 * t];
    const T t2 = k[2 * t + 1];
    k[2 * t] = t2 / t1;
    k[2 * t + 1] = Rational(1) / t1;
    return k;
}

// x' = x.y, y' = x*y for a flip in normal position.
template <class T>
std::vector<T> decorated_flip(const DecoratedTriangulation& dit, std::vector<T> k, EdgeId e) {
    const auto [x, y] = flip_roles(dit, e);
    const T x1 = k[2 * x], x2 = k[2 * x + 1], y1 = k[2 * y], y2 = k[2 * y + 1];
    const T s = x1 * y2 + x2;
    k[2 * x] = x1 * y1;
    k[2 * x + 1] = s;
    k[2 * y] = y1 * x2 / s;
    k[2 * y + 1] = y2 / s;
    return k;
}

template <class T>
std::vector<T> kashaev_from_penner(const DecoratedTriangulation& dit, const std::vector<T>& p) {
    std::vector<T> k(2 * static_cast<std::size_t>(dit.triangle_count()));
    for (TriangleId t = 0; t < dit.triangle_count(); ++t) {
        const T one = slot_value(dit, p, t, 1);
        k[2 * t] = slot_value(dit, p, t, 2) / one;
        k[2 * t + 1] = slot_value(dit, p, t, 0) / one;
    }
    return k;
}

// t -> (t1 f(1_t)/f(2_t), t2 f(1_t)/f(0_t)).
template <class T>
std::vector<T> action_S(const DecoratedTriangulation& dit, std::vector<T> k, const std::vector<Rational>& f) {
    for (TriangleId t = 0; t < dit.triangle_count(); ++t) {
        const auto& c = dit.triangle(t).corners;
        k[2 * t] = k[2 * t] * Rational(f[c[1]] / f[c[2]]);
        k[2 * t + 1] = k[2 * t + 1] * Rational(f[c[1]] / f[c[0]]);
    }
    return k;
}

template <class T>
std::vector<T> relabel_edges(const std::vector<T>& v, const Isomorphism& iso) {
    std::vector<T> out(v.size());
    for (std::size_t e = 0; e < v.size(); ++e) out[iso.edges[e]] = v[e];
    return out;
}

template <class T>
std::vector<T> relabel_triangles(const std::vector<T>& k, const Isomorphism& iso) {
    std::vector<T> out(k.size());
    for (std::size_t t = 0; t < iso.triangles.size(); ++t) {
        out[2 * iso.triangles[t]] = k[2 * t];
        out[2 * iso.triangles[t] + 1] = k[2 * t + 1];
    }
    return out;
}

// Carries edge values along a word; rotations leave them unchanged.
template <class T>
std::vector<T> transport_penner(const DecoratedTriangulation& start, std::vector<T> v, const MoveWord& word) {
    DecoratedTriangulation dit = start;
    for (std::size_t i = 0; i < word.size(); ++i) {
        try {
            if (const auto* f = std::get_if<FlipMove>(&word[i])) {
                v = penner_flip(dit, std::move(v), f->edge);
            } else if (const auto* r = std::get_if<RelabelMove>(&word[i])) {
                v = relabel_edges(v, r->map);
            }
            dit = apply_move(dit, word[i]);
        } catch (const MoveError& err) {
            throw WordError(i, err.what());
        }
    }
    return v;
}

template <class T>
std::vector<T> transport_kashaev(const DecoratedTriangulation& start, std::vector<T> k, const MoveWord& word) {
    DecoratedTriangulation dit = start;
    for (std::size_t i = 0; i < word.size(); ++i) {
        try {
            if (const auto* f = std::get_if<FlipMove>(&word[i])) {
                k = decorated_flip(dit, std::move(k), f->edge);
            } else if (const auto* r = std::get_if<RotateMove>(&word[i])) {
                if (!dit.has_triangle(r->tri))
                    throw MoveError(MoveError::Kind::UnknownTriangle, "unknown triangle id " + std::to_string(r->tri));
                k = corner_change(std::move(k), r->tri);
            } else {
                const auto& map = std::get<RelabelMove>(word[i]).map;
                dit = apply_move(dit, word[i]);
                k = relabel_triangles(k, map);
                continue;
            }
            dit = apply_move(dit, word[i]);
        } catch (const MoveError& err) {
            throw WordError(i, err.what());
        }
    }
    return k;
}

}  // namespace teich::flows
