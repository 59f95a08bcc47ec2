#include "doctest.h"

#include "teich/classical.hpp"

#include <set>

using namespace teich;

namespace {

Rational q(long p, long d = 1) {
    Rational r(p, d);
    r.canonicalize();
    return r;
}

// Opposite sides of the quadrilateral around e, found from puncture labels
// alone: opposite sides share no endpoint when all four corners differ.
std::optional<Rational> ptolemy_oracle(const DecoratedTriangulation& d, const PennerPoint& p, EdgeId e) {
    const auto [s0, s1] = d.sides(e);
    std::vector<EdgeId> quad;
    for (Incidence at : {s0, s1})
        for (int k = 1; k <= 2; ++k) quad.push_back(d.edge_at({at.tri, at.slot + k}));
    std::set<PunctureId> corners;
    for (EdgeId x : quad)
        for (auto v : d.endpoints(x)) corners.insert(v);
    if (corners.size() != 4) return std::nullopt;
    auto disjoint = [&](EdgeId a, EdgeId b) {
        const auto ea = d.endpoints(a);
        const auto eb = d.endpoints(b);
        return ea[0] != eb[0] && ea[0] != eb[1] && ea[1] != eb[0] && ea[1] != eb[1];
    };
    Rational sum = 0;
    int pairs = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (disjoint(quad[i], quad[j])) {
                sum += p.values[quad[i]] * p.values[quad[j]];
                ++pairs;
            }
    REQUIRE(pairs == 2);
    return Rational(sum / p.values[e]);
}

PennerPoint ones(const DecoratedTriangulation& d) { return {std::vector<Rational>(d.edge_count(), Rational(1))}; }

const std::vector<std::pair<int, int>> kSurfaces{{1, 1}, {0, 4}, {1, 2}, {0, 5}, {2, 1}};

}  // namespace

TEST_CASE("Ptolemy flip values") {
    const auto d = new_surface(0, 4);
    int checked = 0;
    for (EdgeId e = 0; e < d.edge_count(); ++e) {
        CHECK(penner_flip(d, ones(d), e).values[e] == 2);
        RationalSampler rng(100 + e);
        for (int i = 0; i < 50; ++i) {
            const auto p = random_penner(d, rng);
            if (const auto oracle = ptolemy_oracle(d, p, e)) {
                CHECK(penner_flip(d, p, e).values[e] == *oracle);
                ++checked;
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("Ptolemy flip with sides 1, 2, 3, 4 around e = 5") {
    const auto d = new_surface(0, 4);
    for (EdgeId e = 0; e < d.edge_count(); ++e) {
        const auto [s0, s1] = d.sides(e);
        // Going around the quadrilateral: x.slot+1, x.slot+2, y.slot+1, y.slot+2 alternate with
        // the apexes, so the first and third are opposite.
        const std::array<EdgeId, 4> around{d.edge_at({s0.tri, s0.slot + 1}), d.edge_at({s0.tri, s0.slot + 2}),
                                           d.edge_at({s1.tri, s1.slot + 1}), d.edge_at({s1.tri, s1.slot + 2})};
        if (std::set<EdgeId>(around.begin(), around.end()).size() != 4) continue;
        PennerPoint p = ones(d);
        p.values[e] = 5;
        for (int i = 0; i < 4; ++i) p.values[around[i]] = i + 1;
        const auto flipped = penner_flip(d, p, e);
        CHECK(flipped.values[e] == q(11, 5));
        if (auto oracle = ptolemy_oracle(d, p, e)) CHECK(*oracle == q(11, 5));
    }
}

TEST_CASE("Ptolemy flip is an exact involution") {
    for (auto [g, s] : kSurfaces) {
        const auto d = new_surface(g, s);
        RationalSampler rng(7);
        for (int i = 0; i < 100; ++i) {
            const auto p = random_penner(d, rng);
            const EdgeId e = static_cast<EdgeId>(rng.integer(0, d.edge_count() - 1));
            if (d.is_self_folded(e)) continue;
            const auto word = normalized_flip(d, e);
            const auto flipped = apply_word(d, word);
            CHECK(penner_flip(flipped, penner_flip(d, p, e), e) == p);
        }
    }
}

TEST_CASE("Penner decoration action") {
    const auto d = new_surface(0, 4);
    RationalSampler rng(9);
    const auto p = random_penner(d, rng);
    CHECK(decoration_action_R(d, p, PunctureWeights(4, Rational(1))) == p);

    for (EdgeId e = 0; e < d.edge_count(); ++e) {
        const auto [a, b] = d.endpoints(e);
        if (a == b) continue;
        PunctureWeights f(4, Rational(1));
        f[a] = 2;
        f[b] = 3;
        CHECK(decoration_action_R(d, ones(d), f).values[e] == 6);
    }

    const auto f = random_weights(d, rng);
    const auto g = random_weights(d, rng);
    PunctureWeights fg(4);
    for (int v = 0; v < 4; ++v) fg[v] = f[v] * g[v];
    CHECK(decoration_action_R(d, decoration_action_R(d, p, f), g) == decoration_action_R(d, p, fg));
    CHECK_THROWS_AS(decoration_action_R(d, p, PunctureWeights(3, Rational(1))), std::invalid_argument);
}

TEST_CASE("alpha form accumulates per-triangle cyclic terms") {
    for (auto [g, s] : kSurfaces) {
        const auto d = new_surface(g, s);
        const auto alpha = alpha_form(d);
        CHECK(alpha.is_antisymmetric());
        // Direct accumulation, one wedge at a time.
        RationalMatrix expect(d.edge_count(), d.edge_count());
        for (const auto& t : d.triangles()) {
            const std::array<std::pair<int, int>, 3> wedges{
                {{t.edges[0], t.edges[1]}, {t.edges[1], t.edges[2]}, {t.edges[2], t.edges[0]}}};
            for (auto [x, y] : wedges) {
                expect(x, y) += 1;
                expect(y, x) -= 1;
            }
        }
        CHECK(alpha.matrix == expect);
    }
    const auto torus = alpha_form(new_surface(1, 1));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const auto& x = torus.matrix(i, j);
            CHECK((x == 0 || x == 2 || x == -2));
        }
    CHECK(torus.matrix.rank() == 2);
}

TEST_CASE("beta form is a symplectic normal form") {
    for (auto [g, s] : kSurfaces) {
        const auto d = new_surface(g, s);
        const auto beta = beta_form(d);
        CHECK(beta.matrix.determinant() == 1);
        CHECK(beta.matrix.inverse() == -beta.matrix);
        CHECK(beta.is_antisymmetric());
    }
    const auto torus = beta_form(new_surface(1, 1));
    CHECK(torus.matrix.rows() == 4);
    CHECK(torus.matrix(0, 1) == 1);
    CHECK(torus.matrix(2, 3) == 1);
    CHECK(torus.matrix(0, 2) == 0);
}

TEST_CASE("Kashaev coordinates from edge values") {
    const auto d = new_surface(0, 4);
    for (const auto& [t1, t2] : kashaev_from_penner(d, ones(d)).values) {
        CHECK(t1 == 1);
        CHECK(t2 == 1);
    }
    // A triangle whose slot edges carry 2, 4, 6.
    const auto t = d.triangle(0);
    PennerPoint p = ones(d);
    p.values[t.edges[0]] = 2;
    p.values[t.edges[1]] = 4;
    p.values[t.edges[2]] = 6;
    const auto k = kashaev_from_penner(d, p);
    CHECK(k.values[0][0] == q(3, 2));
    CHECK(k.values[0][1] == q(1, 2));
}

TEST_CASE("Kashaev projection intertwines the two decoration actions") {
    const auto d = new_surface(0, 4);
    RationalSampler rng(21);
    for (int i = 0; i < 50; ++i) {
        const auto p = random_penner(d, rng);
        const auto f = random_weights(d, rng);
        CHECK(kashaev_from_penner(d, decoration_action_R(d, p, f)) == action_S(d, kashaev_from_penner(d, p), f));
    }
}

TEST_CASE("corner change") {
    KashaevPoint k{{{q(1), q(1)}, {q(2), q(3)}}};
    CHECK(corner_change(k, 0).values[0] == std::array<Rational, 2>{q(1), q(1)});
    CHECK(corner_change(k, 1).values[1] == std::array<Rational, 2>{q(3, 2), q(1, 2)});
    CHECK(corner_change(k, 1).values[0] == k.values[0]);
    RationalSampler rng(4);
    const auto d = new_surface(1, 2);
    for (int i = 0; i < 50; ++i) {
        const auto r = random_kashaev(d, rng);
        const TriangleId t = static_cast<TriangleId>(rng.integer(0, d.triangle_count() - 1));
        CHECK(corner_change(corner_change(corner_change(r, t), t), t) == r);
    }
    CHECK_THROWS_AS(corner_change(k, 2), MoveError);
}

TEST_CASE("decorated flip substitution") {
    const auto d = new_surface(1, 1);
    const EdgeId e = 0;
    const auto prepared = apply_word(d, normalize_for_flip(d, e));
    const auto [x, y] = flip_roles(prepared, e);
    KashaevPoint k{std::vector<std::array<Rational, 2>>(2)};
    k.values[x] = {q(1), q(1)};
    k.values[y] = {q(1), q(1)};
    auto out = decorated_flip(prepared, k, e);
    CHECK(out.values[x] == std::array<Rational, 2>{q(1), q(2)});
    CHECK(out.values[y] == std::array<Rational, 2>{q(1, 2), q(1, 2)});
    k.values[x] = {q(2), q(3)};
    k.values[y] = {q(5), q(7)};
    out = decorated_flip(prepared, k, e);
    CHECK(out.values[x] == std::array<Rational, 2>{q(10), q(17)});
    CHECK(out.values[y] == std::array<Rational, 2>{q(15, 17), q(7, 17)});
}

TEST_CASE("Kashaev projection intertwines Ptolemy flips and decorated flips") {
    for (auto [g, s] : kSurfaces) {
        const auto d = new_surface(g, s);
        RationalSampler rng(31);
        for (EdgeId e = 0; e < d.edge_count(); ++e) {
            if (d.is_self_folded(e)) continue;
            const auto word = normalized_flip(d, e);
            const auto after = apply_word(d, word);
            for (int i = 0; i < 10; ++i) {
                const auto p = random_penner(d, rng);
                CHECK(kashaev_from_penner(after, transport(d, p, word)) ==
                      transport(d, kashaev_from_penner(d, p), word));
            }
        }
    }
}

TEST_CASE("structure group action") {
    const auto d = new_surface(0, 4);
    RationalSampler rng(41);
    const auto k = random_kashaev(d, rng);
    CHECK(action_S(d, k, PunctureWeights(4, q(5))) == k);

    const PunctureWeights f{q(1), q(2), q(1), q(1)};
    const auto moved = action_S(d, k, f);
    for (TriangleId t = 0; t < d.triangle_count(); ++t) {
        // Each triangle picks up 2^(n1 - n2) and 2^(n1 - n0), n_i counting corner i at puncture 1.
        const auto& c = d.triangle(t).corners;
        auto n = [&](int i) { return c[i] == 1 ? 1 : 0; };
        CHECK(moved.values[t][0] == k.values[t][0] * pow(q(2), n(1) - n(2)));
        CHECK(moved.values[t][1] == k.values[t][1] * pow(q(2), n(1) - n(0)));
    }
    PunctureWeights f7 = f;
    for (auto& w : f7) w *= 7;
    CHECK(action_S(d, k, f7) == moved);

    const auto a = random_weights(d, rng);
    const auto b = random_weights(d, rng);
    PunctureWeights ab(4);
    for (int v = 0; v < 4; ++v) ab[v] = a[v] * b[v];
    CHECK(action_S(d, action_S(d, k, a), b) == action_S(d, k, ab));
}

TEST_CASE("forms are preserved by every move") {
    for (auto [g, s] : kSurfaces) {
        const auto d = new_surface(g, s);
        RationalSampler rng(51);
        for (int i = 0; i < 10; ++i) {
            const EdgeId e = static_cast<EdgeId>(rng.integer(0, d.edge_count() - 1));
            if (d.is_self_folded(e)) continue;
            const auto word = normalized_flip(d, e);
            const auto after = apply_word(d, word);
            const auto p = random_penner(d, rng);
            CHECK(pullback_check(penner_log_jacobian(d, p, word), alpha_form(d), alpha_form(after)));
            const auto k = random_kashaev(d, rng);
            CHECK(pullback_check(kashaev_log_jacobian(d, k, word), beta_form(d), beta_form(after)));
            const MoveWord rot{RotateMove{static_cast<TriangleId>(e % d.triangle_count())}};
            CHECK(pullback_check(kashaev_log_jacobian(d, k, rot), beta_form(d), beta_form(apply_word(d, rot))));
            CHECK(pullback_check(action_S_log_jacobian(d, k, random_weights(d, rng)), beta_form(d), beta_form(d)));
            // beta pulls back to alpha under the projection.
            CHECK(pullback_check(kashaev_from_penner_log_jacobian(d, p), alpha_form(d), beta_form(d)));
        }
    }
}

TEST_CASE("pullback check detects a broken map") {
    const auto d = new_surface(1, 2);
    RationalSampler rng(3);
    const auto k = random_kashaev(d, rng);
    auto J = kashaev_log_jacobian(d, k, normalized_flip(d, 1));
    J(0, 0) += 1;
    const auto after = apply_word(d, normalized_flip(d, 1));
    CHECK_FALSE(pullback_check(J, beta_form(d), beta_form(after)));
}

TEST_CASE("closed words act trivially on both coordinate systems") {
    for (auto [g, s] : kSurfaces) {
        const auto d = new_surface(g, s);
        RationalSampler rng(61);
        std::vector<MoveWord> loops;
        if (const auto site = find_pentagon(d)) {
            const auto start = apply_word(d, site->preparation);
            MoveWord w = site->preparation;
            const auto pent = pentagon_loop(start, site->d, site->f);
            w.insert(w.end(), pent.begin(), pent.end());
            // Undo the preparation: two more turns for each rotation.
            for (const auto& m : site->preparation) {
                w.push_back(m);
                w.push_back(m);
            }
            loops.push_back(w);
        }
        for (EdgeId e = 0; e < d.edge_count(); ++e) {
            if (d.is_self_folded(e)) continue;
            MoveWord w = normalized_flip(d, e);
            const auto mid = apply_word(d, w);
            const auto again = normalized_flip(mid, e);
            w.insert(w.end(), again.begin(), again.end());
            EdgeId anchor = e == 0 ? 1 : 0;
            const auto end = apply_word(d, w);
            const auto back = close_loop(end, d, {.decorated = false, .anchor = edge_anchor(end, d, anchor)});
            REQUIRE(back.has_value());
            w.insert(w.end(), back->begin(), back->end());
            loops.push_back(w);
        }
        loops.push_back({RotateMove{0}, RotateMove{0}, RotateMove{0}});
        for (const auto& w : loops) {
            REQUIRE(apply_word(d, w) == d);
            for (int i = 0; i < 5; ++i) {
                const auto p = random_penner(d, rng);
                CHECK(transport(d, p, w) == p);
                const auto k = random_kashaev(d, rng);
                CHECK(transport(d, k, w) == k);
            }
        }
    }
}

TEST_CASE("mapping classes act by a homomorphism on the once-punctured torus") {
    const auto d = new_surface(1, 1);
    auto mapping_class = [&](EdgeId e) {
        MoveWord w = normalized_flip(d, e);
        const auto back = close_loop(apply_word(d, w), d);
        w.insert(w.end(), back->begin(), back->end());
        return w;
    };
    const auto m1 = mapping_class(0);
    const auto m2 = mapping_class(2);
    const auto both = splice_loops(m1, m2);
    REQUIRE(apply_word(d, both) == d);
    RationalSampler rng(71);
    for (int i = 0; i < 20; ++i) {
        const auto k = random_kashaev(d, rng);
        CHECK(transport(d, k, both) == transport(d, transport(d, k, m1), m2));
        const auto p = random_penner(d, rng);
        CHECK(transport(d, p, both) == transport(d, transport(d, p, m1), m2));
    }
    // Not a trivial pair: the two mapping classes do not commute.
    const auto other = splice_loops(m2, m1);
    const auto k = random_kashaev(d, rng);
    CHECK_FALSE(transport(d, k, both) == transport(d, k, other));
}

TEST_CASE("points are validated") {
    const auto d = new_surface(1, 1);
    CHECK_THROWS_AS(penner_flip(d, PennerPoint{{q(1), q(1)}}, 0), std::invalid_argument);
    CHECK_THROWS_AS(penner_flip(d, PennerPoint{{q(1), q(-1), q(1)}}, 0), std::invalid_argument);
    CHECK_THROWS_AS(decorated_flip(d, KashaevPoint{{{q(1), q(0)}, {q(1), q(1)}}}, 0), std::invalid_argument);
}
