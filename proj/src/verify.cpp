#include "teich/verify.hpp"

#include "teich/compact.hpp"
#include "teich/homology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace teich::verify {

namespace {

constexpr double kPi = std::numbers::pi;

// Tolerances of the compact representation and of psi.
constexpr double kRelations = 1e-12;
constexpr double kConjugation = 1e-10;
constexpr double kLoop = 1e-11;
constexpr double kModulus = 1e-9;
constexpr double kPsiTable = 1e-12;
constexpr double kFunctional = 1e-8;
// Contour and refinement changes must stay within the quadrature tolerance.
const double kIndependence = qdilog::Params{}.tol;

// Quantum points use small numerators and denominators to keep T well conditioned.
constexpr long kQuantumTerms = 9;

Property exact(std::string name, bool ok, Json details = Json::object()) {
    return {std::move(name), true, ok, 0, 0, std::move(details)};
}

Property numeric(std::string name, double residual, double tolerance, Json details = Json::object()) {
    return {std::move(name), false, residual <= tolerance, residual, tolerance, std::move(details)};
}

std::vector<EdgeId> flippable(const DecoratedTriangulation& d) {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < d.edge_count(); ++e)
        if (!d.is_self_folded(e)) out.push_back(e);
    return out;
}

Json surface_json(int g, int s) { return {{"genus", g}, {"punctures", s}}; }

// ---------------------------------------------------------------------------
// Classical checks shared by suites and criteria.

Property census(const std::vector<std::pair<int, int>>& surfaces) {
    bool ok = true;
    Json rows = Json::array();
    for (auto [g, s] : surfaces) {
        const int chi = 2 * g - 2 + s;
        bool row_ok = false;
        Json row = surface_json(g, s);
        try {
            const auto d = new_surface(g, s);
            d.validate();
            row_ok = d.triangle_count() == 2 * chi && d.edge_count() == 3 * chi && d.puncture_count() == s &&
                     d.genus() == g;
            row["F"] = d.triangle_count();
            row["E"] = d.edge_count();
            row["s"] = d.puncture_count();
        } catch (const std::exception& e) {
            row["error"] = e.what();
        }
        row["passed"] = row_ok;
        ok = ok && row_ok;
        rows.push_back(row);
    }
    return exact("census", ok, {{"surfaces", rows}});
}

Property ptolemy_involution(const DecoratedTriangulation& d, RationalSampler& rng, int samples) {
    std::vector<std::pair<EdgeId, DecoratedTriangulation>> flips;
    for (EdgeId e : flippable(d)) flips.emplace_back(e, apply_word(d, normalized_flip(d, e)));
    long checked = 0;
    bool ok = true;
    for (int i = 0; i < samples; ++i) {
        const auto p = random_penner(d, rng);
        for (const auto& [e, after] : flips) {
            ok = ok && penner_flip(after, penner_flip(d, p, e), e) == p;
            ++checked;
        }
    }
    return exact("ptolemy_involution", ok, {{"points", samples}, {"flips_checked", checked}});
}

Property path_independence(const DecoratedTriangulation& d, RationalSampler& rng, int samples,
                           const std::string& name = "path_independence", bool pentagon_only = false) {
    bool ok = true;
    Json words = Json::array();
    for (const auto& w : closed_words(d)) {
        if (pentagon_only && w.name != "pentagon") continue;
        bool word_ok = apply_word(d, w.word) == d;
        for (int i = 0; i < samples && word_ok; ++i) {
            const auto p = random_penner(d, rng);
            const auto k = random_kashaev(d, rng);
            word_ok = transport(d, p, w.word) == p && transport(d, k, w.word) == k;
        }
        words.push_back({{"word", w.name}, {"length", w.word.size()}, {"passed", word_ok}});
        ok = ok && word_ok;
    }
    if (words.empty()) ok = false;
    return exact(name, ok, {{"points", samples}, {"words", words}});
}

std::vector<Property> form_preservation(const DecoratedTriangulation& d, RationalSampler& rng, int samples) {
    const auto edges = flippable(d);
    bool alpha = true, beta_flip = true, beta_rot = true, beta_action = true;
    for (int i = 0; i < samples; ++i) {
        const EdgeId e = edges[rng.integer(0, static_cast<long>(edges.size()) - 1)];
        const auto word = normalized_flip(d, e);
        const auto after = apply_word(d, word);
        const auto p = random_penner(d, rng);
        const auto k = random_kashaev(d, rng);
        alpha = alpha && pullback_check(penner_log_jacobian(d, p, word), alpha_form(d), alpha_form(after));
        beta_flip = beta_flip && pullback_check(kashaev_log_jacobian(d, k, word), beta_form(d), beta_form(after));
        const MoveWord rot{RotateMove{static_cast<TriangleId>(rng.integer(0, d.triangle_count() - 1))}};
        beta_rot = beta_rot && pullback_check(kashaev_log_jacobian(d, k, rot), beta_form(d), beta_form(apply_word(d, rot)));
        beta_action = beta_action &&
                      pullback_check(action_S_log_jacobian(d, k, random_weights(d, rng)), beta_form(d), beta_form(d));
    }
    const Json det{{"points", samples}};
    return {exact("alpha_preserved_by_flips", alpha, det), exact("beta_preserved_by_flips", beta_flip, det),
            exact("beta_preserved_by_rotations", beta_rot, det), exact("beta_preserved_by_action", beta_action, det)};
}

Property intertwining(const DecoratedTriangulation& d, RationalSampler& rng, int samples) {
    bool ok = true;
    const auto edges = flippable(d);
    for (int i = 0; i < samples; ++i) {
        const EdgeId e = edges[rng.integer(0, static_cast<long>(edges.size()) - 1)];
        const auto word = normalized_flip(d, e);
        const auto after = apply_word(d, word);
        const auto p = random_penner(d, rng);
        ok = ok && kashaev_from_penner(after, transport(d, p, word)) == transport(d, kashaev_from_penner(d, p), word);
    }
    return exact("penner_to_kashaev_intertwines_flips", ok, {{"points", samples}});
}

Property projection_equivariance(const DecoratedTriangulation& d, RationalSampler& rng, int samples) {
    bool ok = true;
    for (int i = 0; i < samples; ++i) {
        const auto p = random_penner(d, rng);
        const auto f = random_weights(d, rng);
        ok = ok && kashaev_from_penner(d, decoration_action_R(d, p, f)) == action_S(d, kashaev_from_penner(d, p), f);
    }
    return exact("penner_to_kashaev_equivariance", ok, {{"points", samples}});
}

Property exactness(const std::vector<std::pair<int, int>>& surfaces) {
    bool ok = true;
    Json rows = Json::array();
    for (auto [g, s] : surfaces) {
        const auto r = exactness_report(new_surface(g, s));
        const bool row_ok = r.passed() && r.rank_M == static_cast<std::size_t>(2 * g + s - 1) &&
                            r.reduced_dimension == static_cast<std::size_t>(6 * g - 6 + 2 * s);
        ok = ok && row_ok;
        rows.push_back(json_io::to_json(r));
    }
    return exact("exactness", ok, {{"reports", rows}});
}

Property poisson_intersection(const std::vector<std::pair<int, int>>& surfaces) {
    bool ok = true;
    Json rows = Json::array();
    for (auto [g, s] : surfaces) {
        const auto d = new_surface(g, s);
        const auto beta = beta_form(d);
        const auto basis = homology_basis(d);
        Json pairs = Json::array();
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const Rational bracket =
                    poisson_bracket(holonomy_covector(d, basis[i]), holonomy_covector(d, basis[j]), beta);
                const int iota = intersection_index(d, basis[i], basis[j]);
                const bool match = bracket == kPoissonSign * iota;
                ok = ok && match;
                if (i < j) pairs.push_back({{"i", i}, {"j", j}, {"bracket", to_string(bracket)}, {"intersection", iota}, {"equal", match}});
            }
        rows.push_back({{"genus", g}, {"punctures", s}, {"sign", kPoissonSign}, {"pairs", pairs}});
    }
    return exact("poisson_equals_intersection", ok, {{"surfaces", rows}});
}

Property flow_action(const DecoratedTriangulation& d, RationalSampler& rng, int samples) {
    bool ok = true;
    bool control = true;
    for (int i = 0; i < samples; ++i) {
        const auto f = random_weights(d, rng);
        ok = ok && flow_equals_action_check(d, f).equal;
        if (d.puncture_count() > 1) control = control && !flow_equals_action_check(d, f, -1).equal;
    }
    return exact("flow_equals_action", ok && control,
                 {{"weights", samples}, {"sign_flipped_control_detected", control}});
}

Property homomorphism(const DecoratedTriangulation& d, RationalSampler& rng, int samples) {
    const auto m1 = flip_mapping_class(d, 0);
    const auto m2 = flip_mapping_class(d, 2);
    if (!m1 || !m2) return exact("mapping_class_homomorphism", false, {{"error", "flips do not return to the surface"}});
    const auto both = splice_loops(*m1, *m2);
    bool ok = apply_word(d, both) == d;
    for (int i = 0; i < samples && ok; ++i) {
        const auto k = random_kashaev(d, rng);
        const auto p = random_penner(d, rng);
        ok = transport(d, k, both) == transport(d, transport(d, k, *m1), *m2) &&
             transport(d, p, both) == transport(d, transport(d, p, *m1), *m2);
    }
    const auto k = random_kashaev(d, rng);
    const bool noncommuting = !(transport(d, k, both) == transport(d, k, splice_loops(*m2, *m1)));
    return exact("mapping_class_homomorphism", ok && noncommuting,
                 {{"points", samples}, {"m1", json_io::to_json(*m1)}, {"m2", json_io::to_json(*m2)},
                  {"noncommuting", noncommuting}});
}

// ---------------------------------------------------------------------------
// Compact representation checks.

struct CompactResiduals {
    double generators = 0;
    double morphisms = 0;
    double power = 0;
    double conjugation = 0;
    double triple = 0;
    double loops = 0;
    double dressing = 0;
    double condition = 0;
};

CompactResiduals compact_residuals(const DecoratedTriangulation& d, int N, RationalSampler& rng) {
    using namespace compact;
    CompactResiduals r;
    for (EdgeId e : flippable(d)) {
        const auto prep = normalize_for_flip(d, e);
        const auto prepared = apply_word(d, prep);
        const auto [x, y] = flip_roles(prepared, e);
        const CyclicRepContext ctx(N, {x, y});
        r.generators = std::max(r.generators, relation_residual(ctx, identity_images(ctx)));
        const auto h = random_kashaev(d, rng);
        const auto word = normalized_flip(d, e);
        r.morphisms = std::max(r.morphisms, relation_residual(ctx, compose_word(ctx, d, word, h).images));
        const auto hp = transport(d, h, prep);
        const auto t = t_conjugation_check(ctx, prepared, hp, e);
        r.power = std::max(r.power, t.power_residual);
        r.conjugation = std::max({r.conjugation, t.dot_residual, t.star_residual});
        r.condition = std::max(r.condition, t.condition);
        const CyclicRepContext single(N, {x});
        const auto three = compose_word(single, d, {RotateMove{x}, RotateMove{x}, RotateMove{x}}, h);
        r.triple = std::max(r.triple, distance(three.images, identity_images(single)));
        // Double flip back to d.
        MoveWord loop = word;
        const auto again = normalized_flip(apply_word(d, word), e);
        loop.insert(loop.end(), again.begin(), again.end());
        const auto end = apply_word(d, loop);
        const EdgeId anchor = e == 0 ? 1 : 0;
        if (const auto back = close_loop(end, d, {.decorated = false, .anchor = edge_anchor(end, d, anchor)})) {
            loop.insert(loop.end(), back->begin(), back->end());
            const auto lr = compose_loop(ctx, d, loop, h);
            r.loops = std::max({r.loops, lr.identity_residual});
            r.morphisms = std::max(r.morphisms, lr.relation_residual);
        } else {
            r.loops = std::max(r.loops, 1.0);
        }
        auto cur = d;
        auto point = h;
        for (const auto& m : word) {
            r.dressing = std::max(r.dressing, dressing_residual(ctx, cur, m, point));
            point = transport(cur, point, MoveWord{m});
            cur = apply_move(cur, m);
        }
    }
    return r;
}

std::vector<Property> compact_properties(const DecoratedTriangulation& d, const std::vector<int>& Ns,
                                         RationalSampler& rng) {
    CompactResiduals worst;
    Json per_n = Json::array();
    for (int N : Ns) {
        const auto r = compact_residuals(d, N, rng);
        per_n.push_back({{"N", N},
                         {"generators", r.generators},
                         {"morphisms", r.morphisms},
                         {"M_power", r.power},
                         {"T_conjugation", r.conjugation},
                         {"T_condition", r.condition},
                         {"triple_corner_change", r.triple},
                         {"loop_identity", r.loops},
                         {"dressing", r.dressing}});
        worst.generators = std::max(worst.generators, r.generators);
        worst.morphisms = std::max(worst.morphisms, r.morphisms);
        worst.power = std::max(worst.power, r.power);
        worst.conjugation = std::max(worst.conjugation, r.conjugation);
        worst.triple = std::max(worst.triple, r.triple);
        worst.loops = std::max(worst.loops, r.loops);
        worst.dressing = std::max(worst.dressing, r.dressing);
    }
    // omega^{1/2} squares to omega and its N-th power is (-1)^(N-1).
    double root = 0;
    for (int N : Ns) {
        const compact::CyclicRepContext ctx(N, {0});
        root = std::max(root, std::abs(ctx.omega_half() * ctx.omega_half() - ctx.omega()));
        root = std::max(root, std::abs(std::pow(ctx.omega_half(), N) - (N % 2 == 1 ? 1.0 : -1.0)));
        root = std::max(root, compact::unitarity_residual(ctx));
    }
    return {numeric("generator_relations", std::max(worst.generators, root), kRelations, {{"per_N", per_n}}),
            numeric("morphism_image_relations", worst.morphisms, kRelations),
            numeric("M_power_is_minus_one", worst.power, kRelations),
            numeric("T_conjugation", worst.conjugation, kConjugation),
            numeric("triple_corner_change", worst.triple, kRelations),
            numeric("loop_word_identity", worst.loops, kLoop),
            numeric("dressed_generators", worst.dressing, kRelations)};
}

std::vector<Property> pentagon_properties(const DecoratedTriangulation& d, const std::vector<int>& Ns,
                                          RationalSampler& rng) {
    double modulus = 0, proportional = 0, morphism = 0, loop = 0, relations = 0;
    Json phases = Json::array();
    for (int N : Ns) {
        const auto r = compact::pentagon_check(d, N, random_kashaev(d, rng));
        modulus = std::max(modulus, r.modulus_deviation);
        proportional = std::max(proportional, r.proportionality_residual);
        morphism = std::max(morphism, r.morphism_residual);
        loop = std::max(loop, r.loop_residual);
        relations = std::max(relations, r.relation_residual);
        phases.push_back({{"N", N}, {"scalar_re", r.scalar.real()}, {"scalar_im", r.scalar.imag()},
                          {"phase", std::arg(r.scalar)}});
    }
    return {numeric("pentagon_T_scalar_modulus", modulus, kModulus, {{"scalars", phases}}),
            numeric("pentagon_T_proportional", proportional, kConjugation),
            numeric("pentagon_paths_agree", morphism, kLoop),
            numeric("pentagon_loop_identity", std::max(loop, 0.0), kLoop),
            numeric("pentagon_relations", relations, kRelations)};
}

std::vector<Property> cyclic_psi_properties() {
    double closure = 0, base = 0, recursion = 0;
    for (int N : {2, 3, 5})
        for (double lambda : {0.5, 1.0, 3.0}) {
            // Absolute: |prod (1 - w^k w0 lambda) - lambda'^N|.
            closure = std::max(closure, compact::closure_residual(N, lambda));
            const auto psi = compact::cyclic_psi(N, lambda);
            recursion = std::max(recursion, psi.recursion_residual());
            for (int b = 1; b < N; ++b) {
                const auto other = compact::cyclic_psi(N, lambda, b);
                const auto ratio = other.values[0] / psi.values[0];
                for (int k = 0; k < N; ++k) base = std::max(base, std::abs(other.values[k] - ratio * psi.values[k]));
            }
        }
    const auto two = compact::cyclic_psi(2, 1.0);
    const auto quotient = two.values[1] / two.values[0];  // Psi(-i) / Psi(i)
    const double value = std::abs(quotient - std::polar(1.0, kPi / 4));
    return {numeric("cyclic_psi_closure", closure, kPsiTable),
            numeric("cyclic_psi_recursion", recursion, kPsiTable),
            numeric("cyclic_psi_base_point", base, kPsiTable),
            numeric("cyclic_psi_N2_value", value, kPsiTable,
                    {{"re", quotient.real()}, {"im", quotient.imag()}})};
}

Property compact_homomorphism(const DecoratedTriangulation& d, const std::vector<int>& Ns, RationalSampler& rng) {
    using namespace compact;
    const auto m1 = flip_mapping_class(d, 0);
    const auto m2 = flip_mapping_class(d, 2);
    if (!m1 || !m2) return numeric("compact_mapping_class_homomorphism", 1, kLoop);
    const auto both = splice_loops(*m1, *m2);
    double worst = 0;
    for (int N : Ns) {
        if (N > 3) continue;  // N^(2F) basis terms
        const auto ctx = build_context(d, N);
        const auto h = random_kashaev(d, rng);
        const auto first = compose_word(ctx, d, *m1, h);
        const auto second = compose_word(ctx, d, *m2, first.h_end);
        GeneratorImages expected;
        for (const auto& pair : second.images.images)
            expected.images.push_back(
                {apply_homomorphism(ctx, first.images, pair[0]), apply_homomorphism(ctx, first.images, pair[1])});
        worst = std::max(worst, distance(compose_word(ctx, d, both, h).images, expected));
    }
    return numeric("compact_mapping_class_homomorphism", worst, kLoop);
}

// ---------------------------------------------------------------------------
// psi checks.

std::vector<Property> qdilog_properties(const std::vector<double>& hbars, const qdilog::Grid& grid, bool with_table) {
    double functional = 0, unitarity = 0, contour = 0, refinement = 0, left = 0;
    bool control = true;
    Json tables = Json::array();
    for (double hbar : hbars) {
        qdilog::Params p;
        p.hbar = hbar;
        qdilog::Params half = p;
        half.delta = p.effective_delta() / 2;
        const auto fine = qdilog::refined(p);
        Json rows = Json::array();
        for (double x : grid.points()) {
            const double res = qdilog::functional_residual(x, p);
            const auto v = qdilog::psi(x, p);
            functional = std::max(functional, res);
            unitarity = std::max(unitarity, std::abs(std::abs(v) - 1));
            for (const qdilog::Complex z : {qdilog::Complex(x, 0), qdilog::Complex(x, hbar), qdilog::Complex(x, -hbar)}) {
                const auto base = z.imag() == 0 ? v : qdilog::psi(z, p);
                contour = std::max(contour, std::abs(qdilog::psi(z, half) - base) / std::abs(base));
                refinement = std::max(refinement, std::abs(qdilog::psi(z, fine) - base) / std::abs(base));
            }
            if (x >= 0) control = control && qdilog::functional_residual(x, p, false) >= 0.1;
            if (with_table) rows.push_back({{"x", x}, {"re", v.real()}, {"im", v.imag()}, {"residual", res}});
        }
        const auto far = qdilog::psi(-30.0, p);
        left = std::max({left, std::abs(std::abs(far) - 1), std::abs(std::arg(far))});
        if (with_table) tables.push_back({{"hbar", hbar}, {"rows", rows}});
    }
    Json details{{"hbar", hbars}, {"grid", {grid.lo, grid.hi, grid.step}}};
    if (with_table) details["tables"] = tables;
    return {numeric("functional_equation", functional, kFunctional, details),
            numeric("unitarity_on_reals", unitarity, kFunctional),
            numeric("contour_independence", contour, kIndependence),
            numeric("refinement_independence", refinement, kIndependence),
            numeric("limit_at_minus_infinity", left, 1e-6),
            exact("dropped_factor_detected", control)};
}

}  // namespace

// ---------------------------------------------------------------------------

bool VerificationReport::passed() const {
    return !properties.empty() && std::all_of(properties.begin(), properties.end(), [](const Property& p) { return p.passed; });
}

Json VerificationReport::to_json() const {
    Json props = Json::array();
    for (const auto& p : properties) {
        Json j{{"name", p.name}, {"kind", p.exact ? "exact" : "numeric"}};
        if (p.exact) {
            j["verdict"] = p.passed ? "exact-pass" : "exact-fail";
        } else {
            j["verdict"] = p.passed ? "pass" : "fail";
            j["residual"] = p.residual;
            j["tolerance"] = p.tolerance;
        }
        if (!p.details.empty()) j["details"] = p.details;
        props.push_back(j);
    }
    Json out{{"suite", suite}, {"seed", seed}, {"parameters", parameters}, {"properties", props}, {"passed", passed()}};
    if (runtime_seconds) out["runtime_seconds"] = *runtime_seconds;
    return out;
}

void VerificationReport::append(const VerificationReport& other, const std::string& prefix) {
    for (auto p : other.properties) {
        p.name = prefix + "." + p.name;
        properties.push_back(std::move(p));
    }
    parameters[prefix] = other.parameters;
}

std::vector<NamedWord> closed_words(const DecoratedTriangulation& d) {
    std::vector<NamedWord> out;
    if (const auto site = find_pentagon(d)) {
        const auto start = apply_word(d, site->preparation);
        MoveWord w = site->preparation;
        const auto pent = pentagon_loop(start, site->d, site->f);
        w.insert(w.end(), pent.begin(), pent.end());
        for (const auto& m : site->preparation) {
            w.push_back(m);
            w.push_back(m);
        }
        out.push_back({"pentagon", w});
    }
    for (EdgeId e : flippable(d)) {
        MoveWord w = normalized_flip(d, e);
        const auto again = normalized_flip(apply_word(d, w), e);
        w.insert(w.end(), again.begin(), again.end());
        const auto end = apply_word(d, w);
        const EdgeId anchor = e == 0 ? 1 : 0;
        const auto back = close_loop(end, d, {.decorated = false, .anchor = edge_anchor(end, d, anchor)});
        if (!back) continue;
        w.insert(w.end(), back->begin(), back->end());
        out.push_back({"double_flip_" + std::to_string(e), w});
    }
    out.push_back({"rotation_cubed", {RotateMove{0}, RotateMove{0}, RotateMove{0}}});
    return out;
}

std::optional<MoveWord> flip_mapping_class(const DecoratedTriangulation& d, EdgeId e) {
    if (!d.has_edge(e) || d.is_self_folded(e)) return std::nullopt;
    MoveWord w = normalized_flip(d, e);
    const auto back = close_loop(apply_word(d, w), d);
    if (!back) return std::nullopt;
    w.insert(w.end(), back->begin(), back->end());
    return w;
}

VerificationReport classical_suite(const SuiteOptions& o) {
    VerificationReport r;
    r.suite = "classical";
    r.seed = o.seed;
    r.parameters = {{"genus", o.genus}, {"punctures", o.punctures}, {"samples", o.samples}};
    const auto d = new_surface(o.genus, o.punctures);
    RationalSampler rng(o.seed);
    r.properties.push_back(census({{o.genus, o.punctures}}));
    r.properties.push_back(ptolemy_involution(d, rng, o.samples));
    r.properties.push_back(path_independence(d, rng, o.samples));
    for (auto& p : form_preservation(d, rng, o.samples)) r.properties.push_back(std::move(p));
    r.properties.push_back(intertwining(d, rng, o.samples));
    r.properties.push_back(projection_equivariance(d, rng, o.samples));
    r.properties.push_back(exactness({{o.genus, o.punctures}}));
    r.properties.push_back(poisson_intersection({{o.genus, o.punctures}}));
    r.properties.push_back(flow_action(d, rng, std::min(o.samples, 20)));
    if (o.genus == 1 && o.punctures == 1) r.properties.push_back(homomorphism(d, rng, o.samples));
    return r;
}

VerificationReport quantum_compact_suite(const SuiteOptions& o) {
    VerificationReport r;
    r.suite = "quantum-compact";
    r.seed = o.seed;
    r.parameters = {{"genus", o.genus}, {"punctures", o.punctures}, {"N", o.N}};
    const auto d = new_surface(o.genus, o.punctures);
    RationalSampler rng(o.seed, kQuantumTerms);
    for (auto& p : compact_properties(d, o.N, rng)) r.properties.push_back(std::move(p));
    if (find_pentagon(d))
        for (auto& p : pentagon_properties(d, o.N, rng)) r.properties.push_back(std::move(p));
    for (auto& p : cyclic_psi_properties()) r.properties.push_back(std::move(p));
    if (o.genus == 1 && o.punctures == 1) r.properties.push_back(compact_homomorphism(d, o.N, rng));
    return r;
}

VerificationReport qdilog_suite(const SuiteOptions& o) {
    VerificationReport r;
    r.suite = "qdilog";
    r.seed = o.seed;
    r.parameters = {{"hbar", o.hbar}, {"grid", {o.grid.lo, o.grid.hi, o.grid.step}}};
    r.properties = qdilog_properties(o.hbar, o.grid, true);
    return r;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"classical", "quantum-compact", "qdilog", "all"};
    return names;
}

VerificationReport run_suite(const std::string& name, const SuiteOptions& o) {
    if (name == "classical") return classical_suite(o);
    if (name == "quantum-compact") return quantum_compact_suite(o);
    if (name == "qdilog") return qdilog_suite(o);
    if (name == "all") {
        VerificationReport r;
        r.suite = "all";
        r.seed = o.seed;
        r.append(classical_suite(o), "classical");
        r.append(quantum_compact_suite(o), "quantum-compact");
        r.append(qdilog_suite(o), "qdilog");
        return r;
    }
    throw UnknownSuite("unknown suite '" + name + "'");
}

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> list{
        {1, "triangulation census", 1},
        {2, "Ptolemy involution", 5},
        {3, "pentagon and path independence", 10},
        {4, "form preservation", 30},
        {5, "intertwining and exactness", 5},
        {6, "Poisson bracket equals intersection index", 5},
        {7, "Hamiltonian flow equals group action", 5},
        {8, "compact representation", 120},
        {9, "cyclic dilogarithm", 5},
        {10, "non-compact dilogarithm", 60},
        {11, "mapping class homomorphism", 60},
    };
    return list;
}

VerificationReport run_criterion(int id, std::uint64_t seed) {
    if (id < 1 || id > static_cast<int>(acceptance_criteria().size()))
        throw std::out_of_range("acceptance criteria are numbered 1.." + std::to_string(acceptance_criteria().size()));
    VerificationReport r;
    r.suite = "acceptance." + std::to_string(id);
    r.seed = seed;
    RationalSampler rng(seed);
    RationalSampler qrng(seed, kQuantumTerms);
    const std::vector<std::pair<int, int>> four{{1, 1}, {0, 4}, {1, 2}, {2, 1}};
    auto add = [&](Property p) { r.properties.push_back(std::move(p)); };
    switch (id) {
    case 1:
        add(census(four));
        break;
    case 2:
        for (auto [g, s] : std::vector<std::pair<int, int>>{{1, 1}, {0, 4}}) {
            auto p = ptolemy_involution(new_surface(g, s), rng, 1000);
            p.name += "_" + std::to_string(g) + "_" + std::to_string(s);
            add(std::move(p));
        }
        break;
    case 3:
        for (auto [g, s] : std::vector<std::pair<int, int>>{{0, 4}, {1, 2}})
            add(path_independence(new_surface(g, s), rng, 100,
                                  "pentagon_word_" + std::to_string(g) + "_" + std::to_string(s), true));
        break;
    case 4:
        for (auto [g, s] : std::vector<std::pair<int, int>>{{1, 1}, {0, 4}}) {
            for (auto p : form_preservation(new_surface(g, s), rng, 100)) {
                p.name += "_" + std::to_string(g) + "_" + std::to_string(s);
                add(std::move(p));
            }
        }
        break;
    case 5:
        for (auto [g, s] : four) {
            auto p = intertwining(new_surface(g, s), rng, 20);
            p.name += "_" + std::to_string(g) + "_" + std::to_string(s);
            add(std::move(p));
        }
        add(exactness(four));
        break;
    case 6:
        add(poisson_intersection({{1, 1}, {0, 4}}));
        break;
    case 7:
        add(flow_action(new_surface(0, 4), rng, 20));
        break;
    case 8: {
        const std::vector<int> Ns{2, 3, 5};
        for (auto p : compact_properties(new_surface(1, 1), Ns, qrng)) {
            p.name += "_1_1";
            add(std::move(p));
        }
        for (auto p : pentagon_properties(new_surface(0, 4), Ns, qrng)) add(std::move(p));
        break;
    }
    case 9:
        for (auto& p : cyclic_psi_properties()) add(std::move(p));
        break;
    case 10:
        for (auto& p : qdilog_properties({0.3, 1.0, kPi / 2}, qdilog::Grid{}, false)) add(std::move(p));
        break;
    case 11: {
        const auto d = new_surface(1, 1);
        add(homomorphism(d, rng, 100));
        add(compact_homomorphism(d, {2, 3}, qrng));
        break;
    }
    }
    return r;
}

}  // namespace teich::verify
