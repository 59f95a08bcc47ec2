#include "teich/classical.hpp"

#include "teich/flows.hpp"
#include "teich/jet.hpp"

#include <stdexcept>

namespace teich {

namespace {

template <class Fn>
RationalMatrix log_jacobian(const std::vector<Rational>& x, Fn&& map) {
    const std::size_t n = x.size();
    std::vector<Jet> jets;
    jets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) jets.push_back(Jet::variable(x[i], n, i));
    const std::vector<Jet> y = map(std::move(jets));
    RationalMatrix J(y.size(), n);
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) J(i, j) = x[j] / y[i].value * y[i].grad[j];
    return J;
}

void check_weights(const DecoratedTriangulation& dit, const PunctureWeights& f) {
    if (static_cast<int>(f.size()) != dit.puncture_count())
        throw std::invalid_argument("puncture weights: expected " + std::to_string(dit.puncture_count()) +
                                    " values, got " + std::to_string(f.size()));
    for (const auto& w : f)
        if (!is_positive(w)) throw std::invalid_argument("puncture weights must be positive");
}

}  // namespace

std::vector<Rational> KashaevPoint::flat() const {
    std::vector<Rational> out;
    out.reserve(2 * values.size());
    for (const auto& [t1, t2] : values) {
        out.push_back(t1);
        out.push_back(t2);
    }
    return out;
}

KashaevPoint KashaevPoint::from_flat(const std::vector<Rational>& flat) {
    if (flat.size() % 2 != 0) throw std::invalid_argument("odd number of Kashaev coordinates");
    KashaevPoint k;
    for (std::size_t i = 0; i < flat.size(); i += 2) k.values.push_back({flat[i], flat[i + 1]});
    return k;
}

PennerPoint random_penner(const DecoratedTriangulation& dit, RationalSampler& rng) {
    PennerPoint p;
    for (EdgeId e = 0; e < dit.edge_count(); ++e) p.values.push_back(rng.positive());
    return p;
}

KashaevPoint random_kashaev(const DecoratedTriangulation& dit, RationalSampler& rng) {
    KashaevPoint k;
    for (TriangleId t = 0; t < dit.triangle_count(); ++t) {
        Rational t1 = rng.positive();
        k.values.push_back({t1, rng.positive()});
    }
    return k;
}

PunctureWeights random_weights(const DecoratedTriangulation& dit, RationalSampler& rng) {
    PunctureWeights f;
    for (PunctureId v = 0; v < dit.puncture_count(); ++v) f.push_back(rng.positive());
    return f;
}

void check_point(const DecoratedTriangulation& dit, const PennerPoint& p) {
    if (static_cast<int>(p.values.size()) != dit.edge_count())
        throw std::invalid_argument("Penner point: expected " + std::to_string(dit.edge_count()) + " edge values");
    for (const auto& v : p.values)
        if (!is_positive(v)) throw std::invalid_argument("Penner point: values must be positive");
}

void check_point(const DecoratedTriangulation& dit, const KashaevPoint& k) {
    if (static_cast<int>(k.values.size()) != dit.triangle_count())
        throw std::invalid_argument("Kashaev point: expected " + std::to_string(dit.triangle_count()) +
                                    " triangle pairs");
    for (const auto& [t1, t2] : k.values)
        if (!is_positive(t1) || !is_positive(t2)) throw std::invalid_argument("Kashaev point: values must be positive");
}

PennerPoint penner_flip(const DecoratedTriangulation& dit, const PennerPoint& p, EdgeId e) {
    check_point(dit, p);
    return {flows::penner_flip(dit, p.values, e)};
}

PennerPoint decoration_action_R(const DecoratedTriangulation& dit, const PennerPoint& p, const PunctureWeights& f) {
    check_point(dit, p);
    check_weights(dit, f);
    PennerPoint out = p;
    for (EdgeId e = 0; e < dit.edge_count(); ++e) {
        const auto [a, b] = dit.endpoints(e);
        out.values[e] *= f[a] * f[b];
    }
    return out;
}

KashaevPoint kashaev_from_penner(const DecoratedTriangulation& dit, const PennerPoint& p) {
    check_point(dit, p);
    return KashaevPoint::from_flat(flows::kashaev_from_penner(dit, p.values));
}

KashaevPoint corner_change(const KashaevPoint& k, TriangleId t) {
    if (t < 0 || t >= static_cast<TriangleId>(k.values.size()))
        throw MoveError(MoveError::Kind::UnknownTriangle, "unknown triangle id " + std::to_string(t));
    return KashaevPoint::from_flat(flows::corner_change(k.flat(), t));
}

KashaevPoint decorated_flip(const DecoratedTriangulation& dit, const KashaevPoint& k, EdgeId e) {
    check_point(dit, k);
    return KashaevPoint::from_flat(flows::decorated_flip(dit, k.flat(), e));
}

KashaevPoint action_S(const DecoratedTriangulation& dit, const KashaevPoint& k, const PunctureWeights& f) {
    check_point(dit, k);
    check_weights(dit, f);
    return KashaevPoint::from_flat(flows::action_S(dit, k.flat(), f));
}

PennerPoint transport(const DecoratedTriangulation& dit, const PennerPoint& p, const MoveWord& word) {
    check_point(dit, p);
    return {flows::transport_penner(dit, p.values, word)};
}

KashaevPoint transport(const DecoratedTriangulation& dit, const KashaevPoint& k, const MoveWord& word) {
    check_point(dit, k);
    return KashaevPoint::from_flat(flows::transport_kashaev(dit, k.flat(), word));
}

LogBilinearForm alpha_form(const DecoratedTriangulation& dit) {
    LogBilinearForm form;
    const auto E = static_cast<std::size_t>(dit.edge_count());
    for (std::size_t e = 0; e < E; ++e) form.labels.push_back("e" + std::to_string(e));
    form.matrix = RationalMatrix(E, E);
    for (const auto& t : dit.triangles()) {
        for (int k = 0; k < 3; ++k) {
            const auto a = static_cast<std::size_t>(t.edges[k]);
            const auto b = static_cast<std::size_t>(t.edges[mod3(k + 1)]);
            form.matrix(a, b) += 1;
            form.matrix(b, a) -= 1;
        }
    }
    return form;
}

LogBilinearForm beta_form(const DecoratedTriangulation& dit) {
    LogBilinearForm form;
    const auto F = static_cast<std::size_t>(dit.triangle_count());
    for (std::size_t t = 0; t < F; ++t) {
        form.labels.push_back("t" + std::to_string(t) + ".1");
        form.labels.push_back("t" + std::to_string(t) + ".2");
    }
    form.matrix = RationalMatrix(2 * F, 2 * F);
    for (std::size_t t = 0; t < F; ++t) {
        form.matrix(2 * t, 2 * t + 1) = 1;
        form.matrix(2 * t + 1, 2 * t) = -1;
    }
    return form;
}

RationalMatrix penner_log_jacobian(const DecoratedTriangulation& dit, const PennerPoint& p, const MoveWord& word) {
    check_point(dit, p);
    return log_jacobian(p.values, [&](std::vector<Jet> x) { return flows::transport_penner(dit, std::move(x), word); });
}

RationalMatrix kashaev_log_jacobian(const DecoratedTriangulation& dit, const KashaevPoint& k, const MoveWord& word) {
    check_point(dit, k);
    return log_jacobian(k.flat(), [&](std::vector<Jet> x) { return flows::transport_kashaev(dit, std::move(x), word); });
}

RationalMatrix action_S_log_jacobian(const DecoratedTriangulation& dit, const KashaevPoint& k,
                                     const PunctureWeights& f) {
    check_point(dit, k);
    check_weights(dit, f);
    return log_jacobian(k.flat(), [&](std::vector<Jet> x) { return flows::action_S(dit, std::move(x), f); });
}

RationalMatrix kashaev_from_penner_log_jacobian(const DecoratedTriangulation& dit, const PennerPoint& p) {
    check_point(dit, p);
    return log_jacobian(p.values, [&](std::vector<Jet> x) { return flows::kashaev_from_penner(dit, x); });
}

bool pullback_check(const RationalMatrix& jacobian, const LogBilinearForm& src, const LogBilinearForm& dst) {
    if (jacobian.rows() != dst.matrix.rows() || jacobian.cols() != src.matrix.rows()) return false;
    return jacobian.transpose() * dst.matrix * jacobian == src.matrix;
}

}  // namespace teich
