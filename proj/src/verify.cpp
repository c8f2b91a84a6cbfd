#include "sobolev/verify.hpp"

#include "sobolev/benchlab.hpp"
#include "sobolev/detail/tensor.hpp"
#include "sobolev/expansion.hpp"
#include "sobolev/norms.hpp"
#include "sobolev/projection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

namespace sobolev {
namespace {

constexpr double kExactTol = 1e-10;
constexpr double kOptimalitySlack = 1e-12;

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t tag) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32)};
    return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

HyperRect random_domain(std::mt19937_64& rng, std::size_t dims) {
    std::vector<double> lo(dims), hi(dims);
    for (std::size_t i = 0; i < dims; ++i) {
        lo[i] = uniform(rng, -2.0, 1.0);
        hi[i] = lo[i] + uniform(rng, 0.5, 2.0);
    }
    return HyperRect(lo, hi);
}

MultiIndex random_delta(std::mt19937_64& rng, std::size_t dims, int max_entry) {
    std::vector<int> d(dims);
    for (auto& x : d) x = uniform_int(rng, 0, max_entry);
    return MultiIndex(d);
}

/// Two interior points per axis at jittered thirds; faces draw their breaks from this pool.
std::vector<std::vector<double>> break_pool(std::mt19937_64& rng, const HyperRect& dom) {
    std::vector<std::vector<double>> pool(dom.dims());
    for (std::size_t i = 0; i < dom.dims(); ++i) {
        const double w = dom.width(i);
        pool[i] = {dom.lo(i) + w * uniform(rng, 0.2, 0.45), dom.lo(i) + w * uniform(rng, 0.55, 0.8)};
    }
    return pool;
}

PiecewisePoly random_pw(std::mt19937_64& rng, const HyperRect& dom, std::vector<std::vector<double>> breaks,
                        const MultiIndex& cap) {
    PiecewisePoly shape(dom, breaks, cap);
    std::vector<double> c(shape.raw().size());
    for (double& x : c) x = uniform(rng, -1.0, 1.0);
    return PiecewisePoly(dom, std::move(breaks), cap, std::move(c));
}

/// Random face function: breaks from the pool and degree <= 2 on active axes, constant elsewhere.
PiecewisePoly random_face(std::mt19937_64& rng, const HyperRect& dom, const SubdomainSpec& spec,
                          const std::vector<std::vector<double>>& pool) {
    std::vector<std::vector<double>> breaks(dom.dims());
    std::vector<int> cap(dom.dims(), 0);
    for (std::size_t i = 0; i < dom.dims(); ++i) {
        if (!spec.is_active(i)) continue;
        cap[i] = uniform_int(rng, 0, 2);
        for (double b : pool[i])
            if (uniform_int(rng, 0, 1) == 1) breaks[i].push_back(b);
    }
    return random_pw(rng, dom, std::move(breaks), MultiIndex(cap));
}

BasicTraceBundle<PiecewisePoly> random_bundle(std::mt19937_64& rng, const HyperRect& dom, const MultiIndex& delta) {
    const auto pool = break_pool(rng, dom);
    BasicTraceBundle<PiecewisePoly> b(delta);
    for (const auto& alpha : multiindex_range(delta)) b[alpha] = random_face(rng, dom, face_spec(alpha, delta), pool);
    return b;
}

double relative_difference(const PiecewisePoly& a, const PiecewisePoly& b) {
    const double scale = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
    return max_coeff_difference(a, b) / scale;
}

double bundle_difference(const BasicTraceBundle<PiecewisePoly>& a, const BasicTraceBundle<PiecewisePoly>& b) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        worst = std::max(worst, relative_difference(a.entries()[j], b.entries()[j]));
    return worst;
}

std::string fmt(const char* format, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

/// Runs `trial` (returning the defect) and records it against `tol`; exceptions count as failures.
template <class Trial>
void run_trials(PropertyResult& r, int trials, Trial&& trial) {
    for (int t = 0; t < trials; ++t) {
        ++r.trials;
        try {
            const double defect = trial(t);
            r.worst = std::max(r.worst, defect);
            if (!(defect <= r.tolerance)) {
                ++r.failures;
                if (r.detail.empty()) r.detail = "first failure at trial " + std::to_string(t);
            }
        } catch (const std::exception& e) {
            ++r.failures;
            if (r.detail.empty()) r.detail = "trial " + std::to_string(t) + ": " + e.what();
        }
    }
}

PropertyResult make_result(std::string suite, std::string name, double tol) {
    PropertyResult r;
    r.suite = std::move(suite);
    r.name = std::move(name);
    r.tolerance = tol;
    return r;
}

/// FNV-1a, so seeds do not depend on the standard library's string hash.
std::uint64_t tag_of(const std::string& name) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : name) h = (h ^ c) * 1099511628211ull;
    return h;
}

// roundtrips

PropertyResult forward_single_cell(const VerifyOptions& opts, std::size_t dims) {
    const std::string name = "forward N=" + std::to_string(dims);
    auto r = make_result("roundtrip", name, kExactTol);
    auto rng = make_rng(opts.seed, tag_of(name));
    run_trials(r, opts.trials, [&](int) {
        const HyperRect dom = random_domain(rng, dims);
        const MultiIndex delta = random_delta(rng, dims, 3);
        const PiecewisePoly u = random_pw(rng, dom, std::vector<std::vector<double>>(dims),
                                          delta + MultiIndex::filled(dims, 2));
        return relative_difference(reconstruct(extract_traces_poly(u, delta)), u);
    });
    return r;
}

PropertyResult forward_piecewise(const VerifyOptions& opts, std::size_t dims) {
    const std::string name = "forward-piecewise N=" + std::to_string(dims);
    auto r = make_result("roundtrip", name, kExactTol);
    auto rng = make_rng(opts.seed, tag_of(name));
    run_trials(r, opts.trials, [&](int) {
        const HyperRect dom = random_domain(rng, dims);
        const MultiIndex delta = random_delta(rng, dims, 3);
        const PiecewisePoly u = reconstruct(random_bundle(rng, dom, delta));
        return relative_difference(reconstruct(extract_traces_poly(u, delta)), u);
    });
    return r;
}

PropertyResult inverse_roundtrip(const VerifyOptions& opts, std::size_t dims) {
    const std::string name = "inverse N=" + std::to_string(dims);
    auto r = make_result("roundtrip", name, kExactTol);
    auto rng = make_rng(opts.seed, tag_of(name));
    run_trials(r, opts.trials, [&](int) {
        const HyperRect dom = random_domain(rng, dims);
        const MultiIndex delta = random_delta(rng, dims, 3);
        const auto b = random_bundle(rng, dom, delta);
        return bundle_difference(extract_traces_poly(reconstruct(b), delta), b);
    });
    return r;
}

// identities

PropertyResult fund_int_identity(const VerifyOptions& opts) {
    auto r = make_result("identities", "fund_int", kExactTol);
    auto rng = make_rng(opts.seed, tag_of(r.name));
    const int per_case = std::max(1, opts.trials / 10);
    for (int delta1 = 0; delta1 <= 4; ++delta1) {
        for (int k = 0; k <= delta1; ++k) {
            run_trials(r, per_case, [&](int) {
                const HyperRect dom = random_domain(rng, 2);
                const auto pool = break_pool(rng, dom);
                // multiplier faces are constant along the axis being integrated
                std::vector<std::vector<double>> breaks{k < delta1 ? std::vector<double>{} : pool[0], pool[1]};
                const MultiIndex cap{k < delta1 ? 0 : uniform_int(rng, 0, 3), uniform_int(rng, 0, 3)};
                const auto [lhs, rhs] = fund_int_check(delta1, k, random_pw(rng, dom, breaks, cap));
                return relative_difference(lhs, rhs);
            });
        }
    }
    r.detail = r.detail.empty() ? "0 <= k <= delta1 <= 4" : r.detail;
    return r;
}

PropertyResult ftc_roundtrip(const VerifyOptions& opts) {
    auto r = make_result("identities", "ftc", kExactTol);
    auto rng = make_rng(opts.seed, tag_of(r.name));
    run_trials(r, opts.trials, [&](int) {
        const std::size_t dims = static_cast<std::size_t>(uniform_int(rng, 1, 3));
        const std::size_t k = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(dims) - 1));
        const HyperRect dom = random_domain(rng, dims);
        const auto pool = break_pool(rng, dom);
        std::vector<int> cap(dims), cap_g(dims);
        std::vector<std::vector<double>> breaks_g(dims);
        for (std::size_t i = 0; i < dims; ++i) {
            cap[i] = uniform_int(rng, 0, 3);
            cap_g[i] = i == k ? 0 : uniform_int(rng, 0, 3);
            if (i != k) breaks_g[i] = pool[i];
        }
        const PiecewisePoly f = random_pw(rng, dom, pool, MultiIndex(cap)).antiderivative(k);
        const PiecewisePoly g = random_pw(rng, dom, breaks_g, MultiIndex(cap_g));
        const PiecewisePoly u = f + g;
        const MultiIndex delta = MultiIndex::unit(dims, k);
        BasicTraceBundle<PiecewisePoly> b(delta);
        b[MultiIndex::zeros(dims)] = u.pin_lower(k);
        b[delta] = u.derivative(k);
        return relative_difference(reconstruct(b), u);
    });
    return r;
}

BasicTraceBundle<PiecewisePoly> combine(const BasicTraceBundle<PiecewisePoly>& a,
                                        const BasicTraceBundle<PiecewisePoly>& b, double lambda) {
    BasicTraceBundle<PiecewisePoly> out(a.delta());
    for (std::size_t j = 0; j < a.size(); ++j) out.entries()[j] = a.entries()[j] + b.entries()[j] * lambda;
    return out;
}

PropertyResult linearity(const VerifyOptions& opts) {
    auto r = make_result("identities", "linearity", kExactTol);
    auto rng = make_rng(opts.seed, tag_of(r.name));
    run_trials(r, opts.trials, [&](int) {
        const std::size_t dims = static_cast<std::size_t>(uniform_int(rng, 1, 3));
        const HyperRect dom = random_domain(rng, dims);
        const MultiIndex delta = random_delta(rng, dims, 3);
        const auto b1 = random_bundle(rng, dom, delta);
        const auto b2 = random_bundle(rng, dom, delta);
        const double lambda = uniform(rng, -2.0, 2.0);
        return relative_difference(reconstruct(combine(b1, b2, lambda)), reconstruct(b1) + reconstruct(b2) * lambda);
    });
    return r;
}

/// Per-axis operator norm bounds of D^{gamma_i} g^{delta_i}_{alpha_i} in L2 on an interval of length L.
double axis_factor(int gamma_i, int alpha_i, int delta_i, double L) {
    if (alpha_i == delta_i) {
        const int m = alpha_i - gamma_i;
        if (m == 0) return 1.0;
        return std::pow(L, m) / (factorial(m - 1) * std::sqrt((2.0 * m - 1.0) * 2.0 * m));
    }
    if (gamma_i > alpha_i) return 0.0;
    const int m = alpha_i - gamma_i;
    return std::pow(L, m + 0.5) / (factorial(m) * std::sqrt(2.0 * m + 1.0));
}

/// sqrt(sum_gamma (sum_alpha c_{gamma,alpha} |v^alpha|)^2), a computable bound on |reconstruct(b)|_S.
double reconstruction_majorant(const BasicTraceBundle<PiecewisePoly>& b) {
    const MultiIndex& delta = b.delta();
    const HyperRect& dom = b.entries().front().domain();
    const auto alphas = multiindex_range(delta);
    std::vector<double> face(alphas.size());
    for (std::size_t j = 0; j < alphas.size(); ++j)
        face[j] = std::sqrt(face_norm_squared(b.entries()[j], face_spec(alphas[j], delta)));
    double total = 0.0;
    for (const auto& gamma : alphas) {
        double acc = 0.0;
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            double c = 1.0;
            for (std::size_t i = 0; i < delta.size() && c != 0.0; ++i)
                c *= axis_factor(gamma[i], alphas[j][i], delta[i], dom.width(i));
            acc += c * face[j];
        }
        total += acc * acc;
    }
    return std::sqrt(total);
}

PropertyResult boundedness(const VerifyOptions& opts) {
    auto r = make_result("identities", "boundedness", 0.0);
    auto rng = make_rng(opts.seed, tag_of(r.name));
    double max_ratio = 0.0;
    for (std::size_t dims = 1; dims <= 3; ++dims) {
        run_trials(r, opts.trials, [&](int) {
            const HyperRect dom = random_domain(rng, dims);
            const MultiIndex delta = random_delta(rng, dims, 3);
            const auto b = random_bundle(rng, dom, delta);
            const double s = sobolev_norm(reconstruct(b), delta);
            const double bn = bundle_norm(b);
            const double bound = reconstruction_majorant(b);
            max_ratio = std::max(max_ratio, s / bn);
            // defect > 0 only if the norm exceeds its majorant beyond rounding
            return s - bound * (1.0 + 1e-10);
        });
    }
    r.worst = std::max(r.worst, 0.0);
    if (r.detail.empty()) r.detail = "max |G b|_S / |b| = " + fmt("%.6g", max_ratio);
    return r;
}

PropertyResult dc_roundtrip(const VerifyOptions& opts) {
    auto r = make_result("identities", "dc-norm", kExactTol);
    auto rng = make_rng(opts.seed, tag_of(r.name));
    run_trials(r, opts.trials, [&](int) {
        const std::size_t dims = static_cast<std::size_t>(uniform_int(rng, 1, 3));
        const HyperRect dom = random_domain(rng, dims);
        const MultiIndex delta = random_delta(rng, dims, 3);
        const auto b = random_bundle(rng, dom, delta);
        const double expect = bundle_norm(b);
        return std::abs(dc_norm(reconstruct(b), delta) - expect) / std::max(1.0, expect);
    });
    return r;
}

// optimality

/// Squared residuals in a weighted discrete norm; the perturbed error is recomputed from these.
struct Residual {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> values;
};

double residual_norm(const Residual& base, const std::vector<std::vector<double>>& dir, double eps) {
    double acc = 0.0;
    for (std::size_t f = 0; f < base.values.size(); ++f) {
        std::vector<double> sq(base.values[f].size());
        for (std::size_t j = 0; j < sq.size(); ++j) {
            const double e = base.values[f][j] - eps * dir[f][j];
            sq[j] = e * e;
        }
        acc += weighted_sum(base.weights[f], sq);
    }
    return std::sqrt(acc);
}

/// Grids for every trace of order gamma on the same nodes project_legendre uses for degree d.
struct TraceGrids {
    std::vector<MultiIndex> alphas;
    std::vector<SubdomainSpec> faces;
    std::vector<std::vector<std::vector<double>>> nodes;
    std::vector<std::vector<double>> weights;
};

TraceGrids trace_grids(const AnalyticFunction& u, const MultiIndex& gamma, const std::vector<int>& min_nodes,
                       const QuadratureRule& rule, const std::vector<std::vector<double>>& edges = {}) {
    const HyperRect& dom = u.domain();
    TraceGrids g;
    g.alphas = multiindex_range(gamma);
    for (const auto& alpha : g.alphas) {
        const SubdomainSpec spec = face_spec(alpha, gamma);
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < dom.dims(); ++i)
            if (spec.is_active(i)) active.push_back(i);
        std::vector<std::vector<double>> full(dom.dims());
        std::vector<double> w{1.0};
        if (!active.empty()) {
            const auto grid = tensor_grid(dom, active, rule, edges, min_nodes);
            w = grid.weights();
            for (std::size_t j = 0; j < active.size(); ++j) full[active[j]] = grid.grids[j].nodes;
        }
        for (std::size_t i = 0; i < dom.dims(); ++i)
            if (!spec.is_active(i)) full[i] = {dom.lo(i)};
        g.faces.push_back(spec);
        g.nodes.push_back(std::move(full));
        g.weights.push_back(std::move(w));
    }
    return g;
}

template <class Approx>
std::vector<std::vector<double>> approx_traces(const Approx& a, const TraceGrids& g) {
    std::vector<std::vector<double>> out;
    for (std::size_t f = 0; f < g.alphas.size(); ++f) out.push_back(a.derivative(g.alphas[f]).eval_on_grid(g.nodes[f]));
    return out;
}

std::vector<std::vector<double>> target_traces(const AnalyticFunction& u, const TraceGrids& g) {
    std::vector<std::vector<double>> out;
    std::vector<double> point(u.dims());
    for (std::size_t f = 0; f < g.alphas.size(); ++f) {
        const auto& ev = u.derivative(g.alphas[f]);
        const auto& nodes = g.nodes[f];
        std::vector<std::size_t> ext;
        for (const auto& n : nodes) ext.push_back(n.size());
        std::vector<double> vals;
        for (detail::Odometer it(ext); !it.done(); it.next()) {
            for (std::size_t i = 0; i < ext.size(); ++i) point[i] = nodes[i][it.index()[i]];
            vals.push_back(ev(point));
        }
        out.push_back(std::move(vals));
    }
    return out;
}

template <class Approx, class MakePerturbation>
PropertyResult perturbation_check(const std::string& name, const VerifyOptions& opts, const AnalyticFunction& u,
                                  const Approx& best, const TraceGrids& grids, MakePerturbation&& make) {
    auto r = make_result("optimality", name, kOptimalitySlack);
    auto rng = make_rng(opts.seed, tag_of(name));
    Residual base{grids.weights, target_traces(u, grids)};
    const auto fit = approx_traces(best, grids);
    for (std::size_t f = 0; f < fit.size(); ++f)
        for (std::size_t j = 0; j < fit[f].size(); ++j) base.values[f][j] -= fit[f][j];
    const double e0 = residual_norm(base, base.values, 0.0);
    double margin = std::numeric_limits<double>::infinity();
    run_trials(r, opts.perturbations, [&](int) {
        const auto dir = approx_traces(make(rng), grids);
        double worst = -std::numeric_limits<double>::infinity();
        for (double eps : {1e-3, -1e-3, 1e-1, -1e-1}) {
            const double e = residual_norm(base, dir, eps);
            worst = std::max(worst, e0 - e);
            margin = std::min(margin, e - e0);
        }
        return worst;
    });
    r.trials *= 4;
    r.worst = std::max(r.worst, 0.0);
    if (r.detail.empty()) r.detail = "error " + fmt("%.6e", e0) + ", smallest increase " + fmt("%.3e", margin);
    return r;
}

LegendreSeries random_legendre(std::mt19937_64& rng, const HyperRect& dom, const MultiIndex& degree) {
    std::vector<double> c(lattice_size(degree));
    double norm = 0.0;
    for (double& x : c) {
        x = uniform(rng, -1.0, 1.0);
        norm += x * x;
    }
    for (double& x : c) x /= std::sqrt(norm);
    return LegendreSeries::from_orthonormal(dom, degree, c);
}

PropertyResult legendre_optimality(const std::string& name, const VerifyOptions& opts, const AnalyticFunction& u,
                                   const MultiIndex& gamma, const MultiIndex& d) {
    const QuadratureRule rule = rule_for(u);
    const LegendreSeries best = sobolev_project_legendre(u, gamma, d, rule);
    std::vector<int> min_nodes(u.dims());
    for (std::size_t i = 0; i < u.dims(); ++i) min_nodes[i] = d[i] + 8;
    const auto grids = trace_grids(u, gamma, min_nodes, rule);
    const MultiIndex degree = d + gamma;
    return perturbation_check(name, opts, u, best, grids,
                              [&](std::mt19937_64& rng) { return random_legendre(rng, u.domain(), degree); });
}

PropertyResult step_optimality(const std::string& name, const VerifyOptions& opts, const AnalyticFunction& u,
                               const MultiIndex& K) {
    const QuadratureRule rule = rule_for(u);
    const MultiIndex zero = MultiIndex::zeros(u.dims());
    const PiecewisePoly best = sobolev_project_step(u, zero, K, rule);
    std::vector<std::vector<double>> edges(u.dims());
    for (std::size_t i = 0; i < u.dims(); ++i) edges[i] = uniform_breaks(u.domain().lo(i), u.domain().hi(i), K[i]);
    const auto grids = trace_grids(u, zero, {}, rule, edges);
    return perturbation_check(name, opts, u, best, grids, [&](std::mt19937_64& rng) {
        PiecewisePoly shape(u.domain(), edges, zero);
        std::vector<double> c(shape.raw().size());
        double norm = 0.0;
        for (double& x : c) {
            x = uniform(rng, -1.0, 1.0);
            norm += x * x;
        }
        for (double& x : c) x /= std::sqrt(norm);
        return PiecewisePoly(u.domain(), edges, zero, c);
    });
}

} // namespace

std::vector<PropertyResult> verify_roundtrip(const VerifyOptions& opts) {
    std::vector<PropertyResult> out;
    for (std::size_t dims = 1; dims <= 3; ++dims) {
        out.push_back(forward_single_cell(opts, dims));
        out.push_back(forward_piecewise(opts, dims));
        out.push_back(inverse_roundtrip(opts, dims));
    }
    return out;
}

std::vector<PropertyResult> verify_identities(const VerifyOptions& opts) {
    return {fund_int_identity(opts), ftc_roundtrip(opts), linearity(opts), boundedness(opts), dc_roundtrip(opts)};
}

std::vector<PropertyResult> verify_optimality(const VerifyOptions& opts) {
    const AnalyticFunction u1 = example1();
    const AnalyticFunction w = example2();
    return {
        legendre_optimality("L2 P_d example1 d=8", opts, u1, MultiIndex{0}, MultiIndex{8}),
        legendre_optimality("L2 P_d example2 d=(4,4)", opts, w, MultiIndex{0, 0}, MultiIndex{4, 4}),
        legendre_optimality("dc P_d^gamma example1 gamma=2 d=6", opts, u1, MultiIndex{2}, MultiIndex{6}),
        legendre_optimality("dc P_d^gamma example2 gamma=(1,1) d=(3,3)", opts, w, MultiIndex{1, 1}, MultiIndex{3, 3}),
        step_optimality("L2 Q_K example1 K=16", opts, u1, MultiIndex{16}),
        step_optimality("L2 Q_K example2 K=(6,6)", opts, w, MultiIndex{6, 6}),
    };
}

std::vector<PropertyResult> run_verify(const std::string& suite, const VerifyOptions& opts) {
    if (suite == "roundtrip") return verify_roundtrip(opts);
    if (suite == "identities") return verify_identities(opts);
    if (suite == "optimality") return verify_optimality(opts);
    if (suite == "all") {
        auto out = verify_roundtrip(opts);
        for (auto&& r : verify_identities(opts)) out.push_back(std::move(r));
        for (auto&& r : verify_optimality(opts)) out.push_back(std::move(r));
        return out;
    }
    throw std::invalid_argument("unknown verify suite '" + suite + "' (roundtrip|identities|optimality|all)");
}

std::string format_result(const PropertyResult& r) {
    std::string s = r.passed() ? "PASS " : "FAIL ";
    s += r.suite + " " + r.name + " trials=" + std::to_string(r.trials) + " failures=" + std::to_string(r.failures);
    s += " worst=" + fmt("%.3e", r.worst) + " tol=" + fmt("%.0e", r.tolerance);
    if (!r.detail.empty()) s += " (" + r.detail + ")";
    return s;
}

} // namespace sobolev
