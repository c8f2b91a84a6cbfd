#pragma once

// Composite tensor Gauss-Legendre quadrature with mandatory splits and geometric grading.

#include "sobolev/core.hpp"
#include "sobolev/funcmodel.hpp"

#include <optional>
#include <span>
#include <vector>

namespace sobolev {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; cached, safe to call concurrently.
const GaussRule& gauss_legendre(int n);

struct QuadratureRule {
    int panels_per_axis = 32;
    int nodes_per_panel = 16;
    /// Per-axis points that must be panel edges (missing axes: none).
    std::vector<std::vector<double>> mandatory_splits;
    /// Per-axis points toward which panels are graded geometrically; also treated as splits.
    std::vector<std::vector<double>> singular_points;
    std::optional<double> grading = 0.25;
    int graded_panels = 40;

    void validate() const;
};

/// The default rule with u's breakpoints as splits and its singular points as grading targets.
QuadratureRule rule_for(const AnalyticFunction& u, QuadratureRule base = {});

struct AxisGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Composite rule on [lo, hi] for `axis`: uniform panels plus the rule's splits plus `extra_edges`,
/// at least `min_nodes` nodes per panel.
AxisGrid axis_grid(double lo, double hi, const QuadratureRule& rule, std::size_t axis,
                   std::span<const double> extra_edges = {}, int min_nodes = 0);

/// Tensor grid over the listed axes of `box`. `extra_edges` and `min_nodes` are indexed by full axis
/// and may be empty.
struct TensorGrid {
    std::vector<std::size_t> axes;
    std::vector<AxisGrid> grids;

    std::size_t size() const;
    std::vector<std::vector<double>> node_lists() const;
    /// Tensor weights, first listed axis fastest.
    std::vector<double> weights() const;
};

TensorGrid tensor_grid(const HyperRect& box, std::vector<std::size_t> axes, const QuadratureRule& rule,
                       const std::vector<std::vector<double>>& extra_edges = {}, const std::vector<int>& min_nodes = {});
TensorGrid tensor_grid(const HyperRect& box, const QuadratureRule& rule,
                       const std::vector<std::vector<double>>& extra_edges = {}, const std::vector<int>& min_nodes = {});

/// f at every grid node (first listed axis fastest); f receives the listed coordinates only.
/// Throws std::domain_error naming the node when a value is not finite.
std::vector<double> sample(const PointEvaluator& f, const TensorGrid& grid);

double pairwise_sum(std::span<const double> values);
/// sum_j w_j v_j with pairwise summation.
double weighted_sum(std::span<const double> weights, std::span<const double> values);

double integrate(const PointEvaluator& f, const HyperRect& domain, const QuadratureRule& rule);
double l2_norm(const PointEvaluator& f, const HyperRect& domain, const QuadratureRule& rule);
double l2_error(const PointEvaluator& f, const PointEvaluator& g, const HyperRect& domain, const QuadratureRule& rule);

} // namespace sobolev
