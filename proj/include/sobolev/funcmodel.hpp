#pragma once

// Target functions with exact derivative evaluators, and their lower-face traces.

#include "sobolev/core.hpp"

#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sobolev {

using PointEvaluator = std::function<double(std::span<const double>)>;

/// u together with D^alpha u for every alpha <= delta.
class AnalyticFunction {
public:
    AnalyticFunction() = default;
    /// `derivatives[j]` evaluates D^alpha u for alpha = multiindex_range(delta)[j].
    /// `singular_points` is a subset of the breakpoints where some derivative blows up;
    /// quadrature grades panels toward them.
    AnalyticFunction(HyperRect domain, MultiIndex delta, std::vector<PointEvaluator> derivatives,
                     std::vector<std::vector<double>> breakpoints = {},
                     std::vector<std::vector<double>> singular_points = {}, std::string name = {});

    const HyperRect& domain() const { return domain_; }
    const MultiIndex& delta() const { return delta_; }
    std::size_t dims() const { return domain_.dims(); }
    const std::string& name() const { return name_; }
    const std::vector<std::vector<double>>& breakpoints() const { return breakpoints_; }
    const std::vector<std::vector<double>>& singular_points() const { return singular_; }

    /// Evaluator for D^alpha u without the domain check (for quadrature loops).
    const PointEvaluator& derivative(const MultiIndex& alpha) const;

    double eval_derivative(const MultiIndex& alpha, std::span<const double> s) const;
    double operator()(std::span<const double> s) const;
    double operator()(std::initializer_list<double> s) const {
        return (*this)(std::span<const double>(s.begin(), s.size()));
    }

private:
    HyperRect domain_;
    MultiIndex delta_;
    std::vector<PointEvaluator> derivs_;
    std::vector<std::vector<double>> breakpoints_;
    std::vector<std::vector<double>> singular_;
    std::string name_;
};

/// A function on the face Omega^beta, evaluated from its active coordinates only.
class TraceFunction {
public:
    TraceFunction() = default;
    TraceFunction(HyperRect domain, SubdomainSpec spec, PointEvaluator on_active);

    const HyperRect& domain() const { return domain_; }
    const SubdomainSpec& spec() const { return spec_; }
    const std::vector<std::size_t>& active_axes() const { return active_; }
    bool is_scalar() const { return active_.empty(); }

    /// `active` holds one coordinate per active axis, in increasing axis order.
    double eval_active(std::span<const double> active) const { return eval_(active); }
    /// Evaluates at a full-dimensional point, ignoring the inactive coordinates.
    double eval_full(std::span<const double> s) const;
    double scalar_value() const;
    const PointEvaluator& evaluator() const { return eval_; }

private:
    HyperRect domain_;
    SubdomainSpec spec_;
    std::vector<std::size_t> active_;
    PointEvaluator eval_;
};

/// alpha -> v^alpha for every alpha <= delta; the face of v^alpha is face_spec(alpha, delta).
template <class Face>
class BasicTraceBundle {
public:
    BasicTraceBundle() = default;
    explicit BasicTraceBundle(MultiIndex delta) : delta_(std::move(delta)), entries_(lattice_size(delta_)) {}
    BasicTraceBundle(MultiIndex delta, std::vector<Face> entries) : delta_(std::move(delta)), entries_(std::move(entries)) {
        if (entries_.size() != lattice_size(delta_)) {
            throw std::invalid_argument("TraceBundle: expected " + std::to_string(lattice_size(delta_)) +
                                        " entries, got " + std::to_string(entries_.size()));
        }
    }

    const MultiIndex& delta() const { return delta_; }
    std::size_t size() const { return entries_.size(); }
    SubdomainSpec spec(const MultiIndex& alpha) const { return face_spec(alpha, delta_); }

    const Face& operator[](const MultiIndex& alpha) const { return entries_[lattice_position(alpha, delta_)]; }
    Face& operator[](const MultiIndex& alpha) { return entries_[lattice_position(alpha, delta_)]; }
    /// Entries in multiindex_range(delta) order.
    const std::vector<Face>& entries() const { return entries_; }
    std::vector<Face>& entries() { return entries_; }

private:
    MultiIndex delta_;
    std::vector<Face> entries_;
};

using TraceBundle = BasicTraceBundle<TraceFunction>;

/// Traces B^{alpha-gamma} D^alpha u for alpha <= gamma, inactive coordinates pinned at the lower edge.
TraceBundle extract_traces(const AnalyticFunction& u, const MultiIndex& gamma);
TraceBundle extract_traces(const AnalyticFunction& u);

double sign0(double x);

} // namespace sobolev
