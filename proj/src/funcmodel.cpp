#include "sobolev/funcmodel.hpp"

#include <algorithm>

namespace sobolev {

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

AnalyticFunction::AnalyticFunction(HyperRect domain, MultiIndex delta, std::vector<PointEvaluator> derivatives,
                                   std::vector<std::vector<double>> breakpoints,
                                   std::vector<std::vector<double>> singular_points, std::string name)
    : domain_(std::move(domain)),
      delta_(std::move(delta)),
      derivs_(std::move(derivatives)),
      breakpoints_(std::move(breakpoints)),
      singular_(std::move(singular_points)),
      name_(std::move(name)) {
    if (delta_.size() != domain_.dims()) throw std::invalid_argument("AnalyticFunction: delta/domain dimension mismatch");
    if (derivs_.size() != lattice_size(delta_)) {
        throw std::invalid_argument("AnalyticFunction: need exactly one evaluator per alpha <= delta (" +
                                    std::to_string(lattice_size(delta_)) + "), got " + std::to_string(derivs_.size()));
    }
    for (const auto& d : derivs_) {
        if (!d) throw std::invalid_argument("AnalyticFunction: empty derivative evaluator");
    }
    breakpoints_.resize(domain_.dims());
    singular_.resize(domain_.dims());
    for (std::size_t i = 0; i < domain_.dims(); ++i) {
        auto& b = breakpoints_[i];
        std::sort(b.begin(), b.end());
        for (double x : b) {
            if (!(x > domain_.lo(i) && x < domain_.hi(i))) {
                throw std::invalid_argument("AnalyticFunction: breakpoint outside the open axis interval");
            }
        }
        for (double x : singular_[i]) {
            if (!(x >= domain_.lo(i) && x <= domain_.hi(i))) {
                throw std::invalid_argument("AnalyticFunction: singular point outside the axis interval");
            }
        }
    }
}

const PointEvaluator& AnalyticFunction::derivative(const MultiIndex& alpha) const {
    if (alpha.size() != delta_.size() || !leq(alpha, delta_)) {
        throw std::invalid_argument("AnalyticFunction: derivative " + alpha.to_string() + " not available (delta " +
                                    delta_.to_string() + ")");
    }
    return derivs_[lattice_position(alpha, delta_)];
}

double AnalyticFunction::eval_derivative(const MultiIndex& alpha, std::span<const double> s) const {
    const auto& d = derivative(alpha);
    if (!domain_.contains(s)) throw std::domain_error("AnalyticFunction: evaluation point outside the domain");
    return d(s);
}

double AnalyticFunction::operator()(std::span<const double> s) const {
    return eval_derivative(MultiIndex::zeros(dims()), s);
}

TraceFunction::TraceFunction(HyperRect domain, SubdomainSpec spec, PointEvaluator on_active)
    : domain_(std::move(domain)), spec_(std::move(spec)), active_(spec_.active_axes()), eval_(std::move(on_active)) {
    if (spec_.size() != domain_.dims()) throw std::invalid_argument("TraceFunction: spec/domain dimension mismatch");
    if (!eval_) throw std::invalid_argument("TraceFunction: empty evaluator");
}

double TraceFunction::eval_full(std::span<const double> s) const {
    if (s.size() != domain_.dims()) throw std::invalid_argument("TraceFunction: point dimension mismatch");
    std::vector<double> a(active_.size());
    for (std::size_t j = 0; j < active_.size(); ++j) a[j] = s[active_[j]];
    return eval_(a);
}

double TraceFunction::scalar_value() const {
    if (!is_scalar()) throw std::logic_error("TraceFunction: trace on " + spec_.to_string() + " is not a scalar");
    return eval_(std::span<const double>());
}

TraceBundle extract_traces(const AnalyticFunction& u, const MultiIndex& gamma) {
    if (!leq(gamma, u.delta())) {
        throw std::invalid_argument("extract_traces: gamma " + gamma.to_string() + " exceeds delta " +
                                    u.delta().to_string());
    }
    TraceBundle bundle(gamma);
    for (const auto& alpha : multiindex_range(gamma)) {
        auto spec = face_spec(alpha, gamma);
        auto active = spec.active_axes();
        const PointEvaluator& d = u.derivative(alpha);
        std::vector<double> base = u.domain().lo();
        bundle[alpha] = TraceFunction(u.domain(), spec, [d, active, base](std::span<const double> a) {
            std::vector<double> s = base;
            for (std::size_t j = 0; j < active.size(); ++j) s[active[j]] = a[j];
            return d(s);
        });
    }
    return bundle;
}

TraceBundle extract_traces(const AnalyticFunction& u) { return extract_traces(u, u.delta()); }

} // namespace sobolev
