#include "teich/compact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace teich::compact {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix power(const Matrix& m, int k) {
    Matrix out = Matrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

// |a - b| relative to the larger of the two.
double rel(const Matrix& a, const Matrix& b) {
    const double scale = std::max({a.norm(), b.norm(), 1e-300});
    return (a - b).norm() / scale;
}

double to_double(const Rational& r) { return r.get_d(); }

int checked_factor(const CyclicRepContext& ctx, TriangleId t) {
    const int p = ctx.factor_of(t);
    if (p < 0) throw std::invalid_argument("triangle " + std::to_string(t) + " is not a factor of the representation");
    return p;
}

}  // namespace

CyclicRepContext::CyclicRepContext(int N, std::vector<TriangleId> factors)
    : N_(N), factors_(std::move(factors)), dim_(1) {
    if (N < 2) throw std::invalid_argument("N must be at least 2");
    if (factors_.empty()) throw std::invalid_argument("no tensor factors");
    auto sorted = factors_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("repeated tensor factor");
    for (std::size_t i = 0; i < factors_.size(); ++i) dim_ *= static_cast<std::size_t>(N);
    omega_ = std::polar(1.0, 2 * kPi / N);
    omega_half_ = std::polar(1.0, kPi * (N + 1) / N);
    clock_ = Matrix::Zero(N, N);
    shift_ = Matrix::Zero(N, N);
    for (int k = 0; k < N; ++k) {
        clock_(k, k) = std::polar(1.0, 2 * kPi * k / N);
        shift_((k + 1) % N, k) = 1.0;
    }
    for (std::size_t p = 0; p < factors_.size(); ++p)
        generators_.push_back({embed(clock_, static_cast<int>(p)), embed(shift_, static_cast<int>(p))});
}

int CyclicRepContext::factor_of(TriangleId t) const {
    const auto it = std::find(factors_.begin(), factors_.end(), t);
    return it == factors_.end() ? -1 : static_cast<int>(it - factors_.begin());
}

const Matrix& CyclicRepContext::generator(TriangleId t, int i) const {
    if (i != 1 && i != 2) throw std::invalid_argument("generator index must be 1 or 2");
    return generators_[checked_factor(*this, t)][i - 1];
}

Matrix CyclicRepContext::embed(const Matrix& local, int factor) const {
    Matrix out = Matrix::Identity(1, 1);
    for (int p = 0; p < static_cast<int>(factors_.size()); ++p)
        out = kron(out, p == factor ? local : Matrix::Identity(N_, N_));
    return out;
}

CyclicRepContext build_context(const DecoratedTriangulation& dit, int N) {
    std::vector<TriangleId> all(dit.triangle_count());
    for (TriangleId t = 0; t < dit.triangle_count(); ++t) all[t] = t;
    return CyclicRepContext(N, std::move(all));
}

GeneratorImages identity_images(const CyclicRepContext& ctx) {
    GeneratorImages out;
    for (TriangleId t : ctx.factors()) out.images.push_back({ctx.generator(t, 1), ctx.generator(t, 2)});
    return out;
}

double relation_residual(const CyclicRepContext& ctx, const GeneratorImages& g) {
    const Matrix id = ctx.identity();
    double worst = 0;
    for (std::size_t p = 0; p < g.images.size(); ++p) {
        const auto& [a, b] = g.images[p];
        worst = std::max(worst, rel(a * b, ctx.omega() * (b * a)));
        worst = std::max(worst, rel(power(a, ctx.N()), id));
        worst = std::max(worst, rel(power(b, ctx.N()), id));
        for (std::size_t q = p + 1; q < g.images.size(); ++q)
            for (const auto& u : g.images[p])
                for (const auto& v : g.images[q]) worst = std::max(worst, rel(u * v, v * u));
    }
    return worst;
}

double distance(const GeneratorImages& a, const GeneratorImages& b) {
    if (a.images.size() != b.images.size()) throw std::invalid_argument("image sets differ in size");
    double worst = 0;
    for (std::size_t p = 0; p < a.images.size(); ++p)
        for (int i = 0; i < 2; ++i) worst = std::max(worst, rel(a.images[p][i], b.images[p][i]));
    return worst;
}

double unitarity_residual(const CyclicRepContext& ctx) {
    const Matrix id = Matrix::Identity(ctx.N(), ctx.N());
    return std::max(rel(ctx.clock() * ctx.clock().adjoint(), id), rel(ctx.shift() * ctx.shift().adjoint(), id));
}

std::vector<std::array<double, 2>> c_scalars(const KashaevPoint& k, int N) {
    std::vector<std::array<double, 2>> out;
    for (const auto& [t1, t2] : k.values)
        out.push_back({std::pow(to_double(t1), 1.0 / N), std::pow(to_double(t2), 1.0 / N)});
    return out;
}

double flip_parameter(const DecoratedTriangulation& dit, const KashaevPoint& h, EdgeId e, int N) {
    const auto [x, y] = flip_roles(dit, e);
    const Rational ratio = h.values[x][0] * h.values[y][1] / h.values[x][1];
    return std::pow(to_double(ratio), 1.0 / N);
}

GeneratorImages morphism_corner_change(const CyclicRepContext& ctx, const GeneratorImages& current, TriangleId t) {
    const int p = ctx.factor_of(t);
    if (p < 0) return current;  // no generators to move
    GeneratorImages out = current;
    const auto& [a, b] = current.images[p];
    const Matrix a_inv = a.inverse();
    out.images[p] = {ctx.omega_half() * (a_inv * b), a_inv};
    return out;
}

GeneratorImages morphism_flip(const CyclicRepContext& ctx, const DecoratedTriangulation& dit,
                              const GeneratorImages& current, EdgeId e, const KashaevPoint& h) {
    const auto [x, y] = flip_roles(dit, e);
    const int px = checked_factor(ctx, x);
    const int py = checked_factor(ctx, y);
    const double lambda = flip_parameter(dit, h, e, ctx.N());
    const double norm = std::pow(1 + std::pow(lambda, ctx.N()), 1.0 / ctx.N());
    const auto& [x1, x2] = current.images[px];
    const auto& [y1, y2] = current.images[py];
    const Matrix s = (x2 + lambda * (x1 * y2)) / norm;
    const Matrix s_inv = s.inverse();
    GeneratorImages out = current;
    out.images[px] = {x1 * y1, s};
    out.images[py] = {y1 * x2 * s_inv, y2 * s_inv};
    return out;
}

GeneratorImages morphism_relabel(const CyclicRepContext& ctx, const GeneratorImages& current,
                                 const Isomorphism& iso) {
    if (!iso.preserves_decoration()) throw MoveError(MoveError::Kind::BadRelabel, "relabel must preserve decoration");
    GeneratorImages out = current;
    for (std::size_t p = 0; p < ctx.factors().size(); ++p) {
        const TriangleId t = ctx.factors()[p];
        if (t < 0 || t >= static_cast<int>(iso.triangles.size()))
            throw std::invalid_argument("relabel does not cover triangle " + std::to_string(t));
        out.images[checked_factor(ctx, iso.triangles[t])] = current.images[p];
    }
    return out;
}

namespace {

void advance(const CyclicRepContext& ctx, WordEvaluation& ev, const Move& m) {
    if (const auto* f = std::get_if<FlipMove>(&m))
        ev.images = morphism_flip(ctx, ev.end, ev.images, f->edge, ev.h_end);
    else if (const auto* r = std::get_if<RotateMove>(&m))
        ev.images = morphism_corner_change(ctx, ev.images, r->tri);
    else
        ev.images = morphism_relabel(ctx, ev.images, std::get<RelabelMove>(m).map);
    ev.h_end = transport(ev.end, ev.h_end, MoveWord{m});
    ev.end = apply_move(ev.end, m);
}

}  // namespace

WordEvaluation compose_word(const CyclicRepContext& ctx, const DecoratedTriangulation& dit, const MoveWord& word,
                            const KashaevPoint& h) {
    check_point(dit, h);
    WordEvaluation ev{identity_images(ctx), h, dit};
    for (std::size_t i = 0; i < word.size(); ++i) {
        try {
            advance(ctx, ev, word[i]);
        } catch (const std::exception& err) {
            throw WordError(i, err.what());
        }
    }
    return ev;
}

LoopReport compose_loop(const CyclicRepContext& ctx, const DecoratedTriangulation& dit, const MoveWord& word,
                        const KashaevPoint& h) {
    check_point(dit, h);
    LoopReport report;
    WordEvaluation ev{identity_images(ctx), h, dit};
    for (std::size_t i = 0; i < word.size(); ++i) {
        try {
            advance(ctx, ev, word[i]);
        } catch (const std::exception& err) {
            throw WordError(i, err.what());
        }
        report.relation_residual = std::max(report.relation_residual, relation_residual(ctx, ev.images));
    }
    if (!(ev.end == dit)) throw std::invalid_argument("word does not close up");
    report.identity_residual = distance(ev.images, identity_images(ctx));
    return report;
}

Matrix apply_homomorphism(const CyclicRepContext& ctx, const GeneratorImages& phi, const Matrix& x) {
    const int N = ctx.N();
    const std::size_t F = ctx.factors().size();
    const double dim = static_cast<double>(ctx.dimension());
    // Powers of the local and image generators.
    std::vector<std::array<std::vector<Matrix>, 2>> local(F), image(F);
    for (std::size_t p = 0; p < F; ++p)
        for (int i = 0; i < 2; ++i) {
            local[p][i].push_back(Matrix::Identity(N, N));
            image[p][i].push_back(ctx.identity());
            const Matrix& base = i == 0 ? ctx.clock() : ctx.shift();
            for (int k = 1; k < N; ++k) {
                local[p][i].push_back(local[p][i].back() * base);
                image[p][i].push_back(image[p][i].back() * phi.images[p][i]);
            }
        }
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    std::vector<int> exps(2 * F, 0);
    while (true) {
        Matrix w = Matrix::Identity(1, 1);
        Matrix img = ctx.identity();
        for (std::size_t p = 0; p < F; ++p) {
            w = kron(w, local[p][0][exps[2 * p]] * local[p][1][exps[2 * p + 1]]);
            img = img * image[p][0][exps[2 * p]] * image[p][1][exps[2 * p + 1]];
        }
        const Complex c = (w.adjoint() * x).trace() / dim;
        if (std::abs(c) > 0) out += c * img;
        std::size_t k = 0;
        while (k < exps.size() && ++exps[k] == N) exps[k++] = 0;
        if (k == exps.size()) break;
    }
    return out;
}

double CyclicPsi::recursion_residual() const {
    double worst = 0;
    for (int k = 0; k < N; ++k) {
        const Complex lhs = values[(k + 1) % N] * (1.0 - points[k] * lambda) / lambda_prime;
        worst = std::max(worst, std::abs(lhs - values[k]) / std::max(1.0, std::abs(values[k])));
    }
    return worst;
}

CyclicPsi cyclic_psi(int N, double lambda, int base_index) {
    if (N < 2) throw std::invalid_argument("N must be at least 2");
    if (!(lambda > 0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
    CyclicPsi psi;
    psi.N = N;
    psi.lambda = lambda;
    psi.lambda_prime = std::pow(1 + std::pow(lambda, N), 1.0 / N);
    psi.base_index = ((base_index % N) + N) % N;
    for (int k = 0; k < N; ++k) psi.points.push_back(std::polar(1.0, kPi * (2 * k + 1) / N));
    psi.values.assign(N, Complex(0));
    int k = psi.base_index;
    psi.values[k] = 1.0;
    for (int step = 1; step < N; ++step) {
        const int next = (k + 1) % N;
        psi.values[next] = psi.values[k] * psi.lambda_prime / (1.0 - psi.points[k] * lambda);
        k = next;
    }
    return psi;
}

double closure_residual(int N, double lambda) {
    const Complex w0 = std::polar(1.0, kPi / N);
    Complex prod = 1.0;
    for (int k = 0; k < N; ++k) prod *= 1.0 - std::polar(1.0, 2 * kPi * k / N) * w0 * lambda;
    return std::abs(prod - (1 + std::pow(lambda, N)));
}

Matrix psi_of(const CyclicPsi& psi, const Matrix& m) {
    const int N = psi.N;
    Matrix v(N, N);
    Eigen::VectorXcd rhs(N);
    for (int k = 0; k < N; ++k) {
        Complex p = 1.0;
        for (int j = 0; j < N; ++j) {
            v(k, j) = p;
            p *= psi.points[k];
        }
        rhs(k) = psi.values[k];
    }
    const Eigen::VectorXcd coeff = v.partialPivLu().solve(rhs);
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    for (int j = N - 1; j >= 0; --j) out = out * m + coeff(j) * Matrix::Identity(m.rows(), m.cols());
    return out;
}

FlipOperator build_T(const CyclicRepContext& ctx, const DecoratedTriangulation& dit, const KashaevPoint& h, EdgeId e) {
    const auto [x, y] = flip_roles(dit, e);
    const int N = ctx.N();
    const Matrix& x1 = ctx.generator(x, 1);
    const Matrix& x2 = ctx.generator(x, 2);
    const Matrix& y1 = ctx.generator(y, 1);
    const Matrix& y2 = ctx.generator(y, 2);
    FlipOperator op;
    op.lambda = flip_parameter(dit, h, e, N);
    op.M = -(x2.adjoint() * x1 * y2);
    op.power_residual = rel(power(op.M, N), -ctx.identity());
    Matrix sum = Matrix::Zero(ctx.dimension(), ctx.dimension());
    Matrix yi = ctx.identity();
    for (int i = 0; i < N; ++i) {
        Matrix xj = ctx.identity();
        for (int j = 0; j < N; ++j) {
            sum += std::polar(1.0, -2 * kPi * i * j / N) * (yi * xj);
            xj = xj * x2;
        }
        yi = yi * y1;
    }
    op.T = sum * psi_of(cyclic_psi(N, op.lambda), op.M);
    return op;
}

TConjugationReport t_conjugation_check(const CyclicRepContext& ctx, const DecoratedTriangulation& dit,
                                       const KashaevPoint& h, EdgeId e) {
    const auto [x, y] = flip_roles(dit, e);
    const auto op = build_T(ctx, dit, h, e);
    const auto images = morphism_flip(ctx, dit, identity_images(ctx), e, h);
    TConjugationReport r;
    for (int k = 0; k < 2; ++k) {
        r.dot_residual = std::max(
            r.dot_residual, rel(op.T * images.images[ctx.factor_of(x)][k], ctx.generator(x, k + 1) * op.T));
        r.star_residual = std::max(
            r.star_residual, rel(op.T * images.images[ctx.factor_of(y)][k], ctx.generator(y, k + 1) * op.T));
    }
    r.power_residual = op.power_residual;
    const Eigen::JacobiSVD<Matrix> svd(op.T);
    const auto& sv = svd.singularValues();
    r.condition = sv(0) / sv(sv.size() - 1);
    return r;
}

PentagonReport pentagon_check(const DecoratedTriangulation& dit, int N, const KashaevPoint& h) {
    const auto site = find_pentagon(dit);
    if (!site) throw std::invalid_argument("no pentagon site");
    const auto start = apply_word(dit, site->preparation);
    const auto h0 = transport(dit, h, site->preparation);
    const CyclicRepContext ctx(N, {site->a, site->b, site->c});

    // T-product of a flip sequence, later flips on the left.
    // The Fourier prefactor of T is N times a unitary; divide it out.
    const auto t_product = [&](const std::vector<EdgeId>& edges) {
        Matrix prod = ctx.identity();
        auto cur = start;
        auto point = h0;
        for (EdgeId e : edges) {
            prod = build_T(ctx, cur, point, e).T / static_cast<double>(N) * prod;
            point = decorated_flip(cur, point, e);
            cur = flip(cur, e);
        }
        return prod;
    };
    const Matrix p1 = t_product({site->d, site->f, site->d});
    const Matrix p2 = t_product({site->f, site->d});
    PentagonReport r;
    r.scalar = (p2.inverse() * p1).trace() / static_cast<double>(ctx.dimension());
    r.modulus_deviation = std::abs(std::abs(r.scalar) - 1);
    r.proportionality_residual = rel(p1, r.scalar * p2);

    const MoveWord w1{FlipMove{site->d}, FlipMove{site->f}, FlipMove{site->d}};
    const MoveWord w2{FlipMove{site->f}, FlipMove{site->d}};
    const auto e1 = compose_word(ctx, start, w1, h0);
    const auto e2 = compose_word(ctx, start, w2, h0);
    r.morphism_residual = distance(e1.images, e2.images);

    const auto loop = compose_loop(ctx, start, pentagon_loop(start, site->d, site->f), h0);
    r.loop_residual = loop.identity_residual;
    r.relation_residual = std::max({loop.relation_residual, relation_residual(ctx, e1.images),
                                    relation_residual(ctx, e2.images)});
    return r;
}

double dressing_residual(const CyclicRepContext& ctx, const DecoratedTriangulation& dit, const Move& move,
                         const KashaevPoint& h) {
    const auto before = c_scalars(h, ctx.N());
    const auto ev = compose_word(ctx, dit, MoveWord{move}, h);
    const auto after = c_scalars(ev.h_end, ctx.N());

    // Dressed generators before the move, by factor.
    GeneratorImages dressed;
    for (TriangleId t : ctx.factors())
        dressed.images.push_back({before[t][0] * ctx.generator(t, 1), before[t][1] * ctx.generator(t, 2)});
    GeneratorImages expected = dressed;
    if (const auto* f = std::get_if<FlipMove>(&move)) {
        const auto [x, y] = flip_roles(dit, f->edge);
        const auto& [x1, x2] = dressed.images[checked_factor(ctx, x)];
        const auto& [y1, y2] = dressed.images[checked_factor(ctx, y)];
        const Matrix s = x1 * y2 + x2;
        const Matrix s_inv = s.inverse();
        expected.images[ctx.factor_of(x)] = {x1 * y1, s};
        expected.images[ctx.factor_of(y)] = {y1 * x2 * s_inv, y2 * s_inv};
    } else if (const auto* r = std::get_if<RotateMove>(&move)) {
        const int p = ctx.factor_of(r->tri);
        if (p >= 0) {
            const Matrix a_inv = dressed.images[p][0].inverse();
            expected.images[p] = {ctx.omega_half() * (a_inv * dressed.images[p][1]), a_inv};
        }
    } else {
        expected = morphism_relabel(ctx, dressed, std::get<RelabelMove>(move).map);
    }

    GeneratorImages actual = ev.images;
    for (std::size_t p = 0; p < ctx.factors().size(); ++p) {
        const TriangleId t = ctx.factors()[p];
        for (int i = 0; i < 2; ++i) actual.images[p][i] *= after[t][i];
    }
    return distance(actual, expected);
}

}  // namespace teich::compact
