#pragma once

// Multi-index lattices and hyperrectangle geometry shared by every module.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace sobolev {

using Point = std::vector<double>;

/// Element of N_0^N: derivative orders, polynomial degrees, cell counts.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    MultiIndex(std::initializer_list<int> entries);

    static MultiIndex zeros(std::size_t dims);
    static MultiIndex filled(std::size_t dims, int value);
    static MultiIndex unit(std::size_t dims, std::size_t axis, int value = 1);

    std::size_t size() const { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<int>& entries() const { return entries_; }

    int l1() const;
    int max_entry() const;
    bool is_zero() const;

    MultiIndex with(std::size_t axis, int value) const;
    MultiIndex operator+(const MultiIndex& other) const;
    /// Componentwise difference; throws if any entry would go negative.
    MultiIndex operator-(const MultiIndex& other) const;

    bool operator==(const MultiIndex& other) const = default;

    /// "(2,1)" style rendering.
    std::string to_string() const;
    static MultiIndex parse(const std::string& text);

private:
    std::vector<int> entries_;
};

/// Partial order a <= b iff a_i <= b_i for every i.
bool leq(const MultiIndex& a, const MultiIndex& b);
/// Componentwise minimum.
MultiIndex meet(const MultiIndex& a, const MultiIndex& b);

/// rho = prod(delta_i + 1), the number of lattice points below delta.
std::size_t lattice_size(const MultiIndex& delta);

/// All alpha with 0 <= alpha <= delta, first axis varying fastest.
std::vector<MultiIndex> multiindex_range(const MultiIndex& delta);

/// Position of alpha inside multiindex_range(delta).
std::size_t lattice_position(const MultiIndex& alpha, const MultiIndex& delta);

class HyperRect {
public:
    HyperRect() = default;
    HyperRect(std::vector<double> lo, std::vector<double> hi);

    static HyperRect cube(std::size_t dims, double lo = -1.0, double hi = 1.0);

    std::size_t dims() const { return lo_.size(); }
    double lo(std::size_t i) const { return lo_[i]; }
    double hi(std::size_t i) const { return hi_[i]; }
    double width(std::size_t i) const { return hi_[i] - lo_[i]; }
    const std::vector<double>& lo() const { return lo_; }
    const std::vector<double>& hi() const { return hi_; }
    double volume() const;

    bool contains(std::span<const double> point) const;

    bool operator==(const HyperRect& other) const = default;

private:
    std::vector<double> lo_;
    std::vector<double> hi_;
};

/// beta in {-1, 0, +1}^N selecting Omega^beta. Axis i is active iff beta_i == 0.
/// Only lower faces (-1) are produced in this library.
class SubdomainSpec {
public:
    SubdomainSpec() = default;
    explicit SubdomainSpec(std::vector<int> beta);

    std::size_t size() const { return beta_.size(); }
    int operator[](std::size_t i) const { return beta_[i]; }
    const std::vector<int>& beta() const { return beta_; }

    bool is_active(std::size_t axis) const { return beta_[axis] == 0; }
    std::vector<std::size_t> active_axes() const;
    std::size_t num_active() const;
    bool is_interior() const;

    bool operator==(const SubdomainSpec& other) const = default;
    std::string to_string() const;

private:
    std::vector<int> beta_;
};

/// beta = alpha - delta clipped to {-1, 0}.
SubdomainSpec face_spec(const MultiIndex& alpha, const MultiIndex& delta);

} // namespace sobolev
