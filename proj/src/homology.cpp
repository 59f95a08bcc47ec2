#include "teich/homology.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <stdexcept>

namespace teich {

namespace {

// Log of the per-segment weight, as coefficients on (t1, t2).
std::array<int, 2> segment_weight(Slot entry, Slot exit) {
    const int a = mod3(entry);
    const int b = mod3(exit);
    if (a == 1 && b == 2) return {-1, 0};
    if (a == 2 && b == 1) return {1, 0};
    if (a == 0 && b == 1) return {0, 1};
    if (a == 1 && b == 0) return {0, -1};
    if (a == 0 && b == 2) return {-1, 1};
    if (a == 2 && b == 0) return {1, -1};
    throw std::invalid_argument("segment enters and leaves through the same slot");
}

std::vector<std::string> kashaev_labels(const DecoratedTriangulation& dit) {
    std::vector<std::string> labels;
    for (TriangleId t = 0; t < dit.triangle_count(); ++t) {
        labels.push_back("t" + std::to_string(t) + ".1");
        labels.push_back("t" + std::to_string(t) + ".2");
    }
    return labels;
}

}  // namespace

void validate_cycle(const DecoratedTriangulation& dit, const HomologyCycle& cycle) {
    const auto& seg = cycle.segments;
    if (seg.empty()) throw std::invalid_argument("empty cycle");
    for (std::size_t i = 0; i < seg.size(); ++i) {
        if (!dit.has_triangle(seg[i].tri)) throw std::invalid_argument("cycle visits an unknown triangle");
        if (mod3(seg[i].entry) == mod3(seg[i].exit))
            throw std::invalid_argument("segment " + std::to_string(i) + " enters and leaves through the same slot");
        const auto& next = seg[(i + 1) % seg.size()];
        const Incidence arrive = dit.partner({seg[i].tri, seg[i].exit});
        if (arrive.tri != next.tri || arrive.slot != mod3(next.entry))
            throw std::invalid_argument("segment " + std::to_string(i) + " does not connect to its successor");
    }
}

std::vector<Incidence> exits(const HomologyCycle& cycle) {
    std::vector<Incidence> out;
    for (const auto& s : cycle.segments) out.push_back({s.tri, mod3(s.exit)});
    return out;
}

HomologyCycle cycle_from_exits(const DecoratedTriangulation& dit, std::vector<Incidence> xs) {
    // Cancel crossings immediately undone, including around the wrap.
    std::vector<Incidence> stack;
    for (const auto& x : xs) {
        if (!stack.empty() && dit.partner(stack.back()) == x) {
            stack.pop_back();
        } else {
            stack.push_back(x);
        }
    }
    std::size_t lo = 0;
    std::size_t hi = stack.size();
    while (hi - lo >= 2 && dit.partner(stack[hi - 1]) == stack[lo]) {
        ++lo;
        --hi;
    }
    if (hi <= lo) throw std::invalid_argument("cycle reduces to a point");
    HomologyCycle cycle;
    const std::size_t n = hi - lo;
    for (std::size_t i = 0; i < n; ++i) {
        const Incidence x = stack[lo + i];
        const Incidence prev = stack[lo + (i + n - 1) % n];
        const Incidence entry = dit.partner(prev);
        if (entry.tri != x.tri) throw std::invalid_argument("crossings do not form a closed path");
        cycle.segments.push_back({x.tri, entry.slot, x.slot});
    }
    validate_cycle(dit, cycle);
    return cycle;
}

HomologyCycle reversed(const HomologyCycle& cycle) {
    HomologyCycle out;
    for (auto it = cycle.segments.rbegin(); it != cycle.segments.rend(); ++it)
        out.segments.push_back({it->tri, it->exit, it->entry});
    return out;
}

HomologyCycle concatenate(const DecoratedTriangulation& dit, const HomologyCycle& a, const HomologyCycle& b) {
    validate_cycle(dit, a);
    validate_cycle(dit, b);
    const auto xa = exits(a);
    const auto xb = exits(b);
    for (std::size_t i = 0; i < xa.size(); ++i) {
        for (std::size_t j = 0; j < xb.size(); ++j) {
            if (xa[i] != xb[j]) continue;
            std::vector<Incidence> joined;
            for (std::size_t k = 1; k <= xa.size(); ++k) joined.push_back(xa[(i + k) % xa.size()]);
            for (std::size_t k = 1; k <= xb.size(); ++k) joined.push_back(xb[(j + k) % xb.size()]);
            return cycle_from_exits(dit, std::move(joined));
        }
    }
    throw std::invalid_argument("cycles share no crossing in the same direction");
}

HomologyCycle puncture_loop(const DecoratedTriangulation& dit, PunctureId v) {
    if (v < 0 || v >= dit.puncture_count()) throw std::invalid_argument("unknown puncture id " + std::to_string(v));
    Incidence start{-1, 0};
    for (TriangleId t = 0; t < dit.triangle_count() && start.tri < 0; ++t)
        for (int k = 0; k < 3; ++k)
            if (dit.triangle(t).corners[k] == v) {
                start = {t, k};
                break;
            }
    // At corner k the loop enters through slot k+1 and leaves through k+2.
    HomologyCycle cycle;
    Incidence corner = start;
    do {
        cycle.segments.push_back({corner.tri, mod3(corner.slot + 1), mod3(corner.slot + 2)});
        const Incidence next = dit.partner({corner.tri, corner.slot + 2});
        corner = {next.tri, mod3(next.slot + 2)};
    } while (corner != start);
    return cycle;
}

std::vector<HomologyCycle> homology_basis(const DecoratedTriangulation& dit) {
    const int F = dit.triangle_count();
    std::vector<Incidence> parent_exit(F, Incidence{-1, 0});  // incidence in the parent leading here
    std::vector<bool> tree_edge(dit.edge_count(), false);
    std::vector<bool> seen(F, false);
    std::queue<TriangleId> pending;
    pending.push(0);
    seen[0] = true;
    while (!pending.empty()) {
        const TriangleId t = pending.front();
        pending.pop();
        for (int k = 0; k < 3; ++k) {
            const Incidence there = dit.partner({t, k});
            if (seen[there.tri]) continue;
            seen[there.tri] = true;
            parent_exit[there.tri] = {t, k};
            tree_edge[dit.edge_at({t, k})] = true;
            pending.push(there.tri);
        }
    }
    auto down_path = [&](TriangleId t) {
        std::vector<Incidence> path;
        for (TriangleId u = t; u != 0; u = parent_exit[u].tri) path.push_back(parent_exit[u]);
        std::reverse(path.begin(), path.end());
        return path;
    };
    auto up_path = [&](TriangleId t) {
        std::vector<Incidence> path;
        for (TriangleId u = t; u != 0; u = parent_exit[u].tri) path.push_back(dit.partner(parent_exit[u]));
        return path;
    };

    std::vector<HomologyCycle> basis;
    for (EdgeId e = 0; e < dit.edge_count(); ++e) {
        if (tree_edge[e]) continue;
        const auto [p, q] = dit.sides(e);
        auto xs = down_path(p.tri);
        xs.push_back(p);
        const auto up = up_path(q.tri);
        xs.insert(xs.end(), up.begin(), up.end());
        basis.push_back(cycle_from_exits(dit, std::move(xs)));
    }
    return basis;
}

LogCovector holonomy_covector(const DecoratedTriangulation& dit, const HomologyCycle& cycle) {
    validate_cycle(dit, cycle);
    LogCovector u{kashaev_labels(dit), std::vector<long>(2 * static_cast<std::size_t>(dit.triangle_count()), 0)};
    for (const auto& s : cycle.segments) {
        const auto w = segment_weight(s.entry, s.exit);
        u.values[2 * s.tri] += w[0];
        u.values[2 * s.tri + 1] += w[1];
    }
    return u;
}

Rational poisson_bracket(const LogCovector& u, const LogCovector& v, const LogBilinearForm& form) {
    if (u.values.size() != form.matrix.rows() || v.values.size() != form.matrix.rows())
        throw std::invalid_argument("covector and form sizes differ");
    if (u.labels != form.labels || v.labels != form.labels)
        throw std::invalid_argument("covector and form bases differ");
    const RationalMatrix pi = form.matrix.inverse();
    Rational total = 0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        if (u.values[i] == 0) continue;
        for (std::size_t j = 0; j < v.values.size(); ++j)
            if (v.values[j] != 0) total += Rational(u.values[i]) * pi(i, j) * Rational(v.values[j]);
    }
    return total;
}

int intersection_index(const DecoratedTriangulation& dit, const HomologyCycle& a, const HomologyCycle& b) {
    validate_cycle(dit, a);
    validate_cycle(dit, b);
    // Place every crossing at its own point of the edge, measured along side 0.
    struct Crossing {
        Incidence exit;
        double position;  // along side 0 of the edge
    };
    std::vector<std::vector<Crossing>> per_curve(2);
    std::vector<int> count(dit.edge_count(), 0);
    std::vector<int> used(dit.edge_count(), 0);
    const std::array<const HomologyCycle*, 2> curves{&a, &b};
    for (const auto* c : curves)
        for (const auto& s : c->segments) ++count[dit.edge_at({s.tri, s.exit})];
    for (int i = 0; i < 2; ++i)
        for (const auto& s : curves[i]->segments) {
            const EdgeId e = dit.edge_at({s.tri, s.exit});
            const double p = static_cast<double>(++used[e]) / (count[e] + 1);
            per_curve[i].push_back({{s.tri, mod3(s.exit)}, p});
        }

    auto local = [&](Incidence at, double side0_position) {
        const auto& sides = dit.sides(dit.edge_at(at));
        const double p = sides[0] == at ? side0_position : 1.0 - side0_position;
        // Boundary order of the triangle: slot 2, slot 0, slot 1.
        static constexpr std::array<double, 3> offset{1.0, 2.0, 0.0};
        return offset[mod3(at.slot)] + p;
    };
    struct Chord {
        TriangleId tri;
        double from;
        double to;
    };
    auto chords = [&](int i) {
        std::vector<Chord> out;
        const auto& xs = per_curve[i];
        const std::size_t n = xs.size();
        for (std::size_t k = 0; k < n; ++k) {
            const auto& prev = xs[(k + n - 1) % n];
            const Incidence entry = dit.partner(prev.exit);
            out.push_back({xs[k].exit.tri, local(entry, prev.position), local(xs[k].exit, xs[k].position)});
        }
        return out;
    };
    const auto ca = chords(0);
    const auto cb = chords(1);
    auto inside = [](double from, double to, double x) {
        // Strictly inside the arc running forward from `from` to `to`.
        return from < to ? (x > from && x < to) : (x > from || x < to);
    };
    int total = 0;
    for (const auto& p : ca)
        for (const auto& q : cb) {
            if (p.tri != q.tri) continue;
            const bool start_in = inside(p.from, p.to, q.from);
            const bool end_in = inside(p.from, p.to, q.to);
            if (start_in == end_in) continue;
            // The triangle boundary order runs against the surface orientation.
            total += start_in ? -1 : 1;
        }
    return total;
}

RationalMatrix momentum_matrix(const DecoratedTriangulation& dit, const std::vector<HomologyCycle>& basis) {
    RationalMatrix m(basis.size(), 2 * static_cast<std::size_t>(dit.triangle_count()));
    for (std::size_t r = 0; r < basis.size(); ++r) {
        const auto u = holonomy_covector(dit, basis[r]);
        for (std::size_t c = 0; c < u.values.size(); ++c) m(r, c) = u.values[c];
    }
    return m;
}

WeightedLoops xi_f_cycle(const DecoratedTriangulation& dit, const PunctureWeights& f) {
    if (static_cast<int>(f.size()) != dit.puncture_count())
        throw std::invalid_argument("puncture weights do not match the puncture count");
    WeightedLoops out{f, {}};
    for (PunctureId v = 0; v < dit.puncture_count(); ++v) out.loops.push_back(puncture_loop(dit, v));
    return out;
}

FlowCheck flow_equals_action_check(const DecoratedTriangulation& dit, const PunctureWeights& f, int pi_sign) {
    const auto xi = xi_f_cycle(dit, f);
    const auto pi = beta_form(dit).matrix.inverse();
    const std::size_t n = 2 * static_cast<std::size_t>(dit.triangle_count());
    FlowCheck check;
    check.flow_factors.assign(n, Rational(1));
    // The flow adds Pi . d(sum ln f(v) hol_v) to the log coordinates.
    for (PunctureId v = 0; v < dit.puncture_count(); ++v) {
        const auto hol = holonomy_covector(dit, xi.loops[v]);
        for (std::size_t i = 0; i < n; ++i) {
            Rational exponent = 0;
            for (std::size_t j = 0; j < n; ++j) exponent += pi(i, j) * hol.values[j];
            exponent *= pi_sign;
            if (exponent.get_den() != 1) throw std::logic_error("non-integral flow exponent");
            check.flow_factors[i] *= pow(xi.weights[v], exponent.get_num().get_si());
        }
    }
    KashaevPoint ones{std::vector<std::array<Rational, 2>>(dit.triangle_count(), {Rational(1), Rational(1)})};
    check.action_factors = action_S(dit, ones, f).flat();
    check.equal = check.flow_factors == check.action_factors;
    return check;
}

RationalMatrix penner_to_kashaev_linearization(const DecoratedTriangulation& dit) {
    RationalMatrix L(2 * static_cast<std::size_t>(dit.triangle_count()), dit.edge_count());
    for (TriangleId t = 0; t < dit.triangle_count(); ++t) {
        const auto& ed = dit.triangle(t).edges;
        L(2 * t, ed[2]) += 1;
        L(2 * t, ed[1]) -= 1;
        L(2 * t + 1, ed[0]) += 1;
        L(2 * t + 1, ed[1]) -= 1;
    }
    return L;
}

RationalMatrix action_linearization(const DecoratedTriangulation& dit) {
    RationalMatrix A(2 * static_cast<std::size_t>(dit.triangle_count()), dit.puncture_count());
    for (TriangleId t = 0; t < dit.triangle_count(); ++t) {
        const auto& c = dit.triangle(t).corners;
        A(2 * t, c[1]) += 1;
        A(2 * t, c[2]) -= 1;
        A(2 * t + 1, c[1]) += 1;
        A(2 * t + 1, c[0]) -= 1;
    }
    return A;
}

bool ExactnessReport::passed() const {
    return dim_ker_L == 1 && ML_zero && MA_zero && image_equals_kernel &&
           rank_M == static_cast<std::size_t>(2 * genus + punctures - 1) &&
           rank_A == static_cast<std::size_t>(punctures - 1) && reduced_dimension == expected_reduced_dimension;
}

ExactnessReport exactness_report(const DecoratedTriangulation& dit) {
    ExactnessReport r;
    r.genus = dit.genus();
    r.punctures = dit.puncture_count();
    const auto L = penner_to_kashaev_linearization(dit);
    const auto M = momentum_matrix(dit, homology_basis(dit));
    const auto A = action_linearization(dit);
    r.dim_S = L.rows();
    r.rank_L = L.rank();
    r.dim_ker_L = L.cols() - r.rank_L;
    r.rank_M = M.rank();
    r.rank_A = A.rank();
    r.ML_zero = (M * L).is_zero();
    r.MA_zero = (M * A).is_zero();
    // im L sits inside ker M; equal dimensions make them equal.
    r.image_equals_kernel = r.ML_zero && r.rank_L == r.dim_S - r.rank_M;
    r.reduced_dimension = (r.dim_S - r.rank_M) - r.rank_A;
    r.expected_reduced_dimension = static_cast<std::size_t>(6 * r.genus - 6 + 2 * r.punctures);
    return r;
}

}  // namespace teich
