#include "sobolev/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sobolev {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw std::invalid_argument("MultiIndex: needs at least one entry");
    }
    for (int e : entries_) {
        if (e < 0) {
            throw std::invalid_argument("MultiIndex: entries must be non-negative");
        }
    }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::zeros(std::size_t dims) { return filled(dims, 0); }

MultiIndex MultiIndex::filled(std::size_t dims, int value) {
    return MultiIndex(std::vector<int>(dims, value));
}

MultiIndex MultiIndex::unit(std::size_t dims, std::size_t axis, int value) {
    std::vector<int> e(dims, 0);
    e.at(axis) = value;
    return MultiIndex(std::move(e));
}

int MultiIndex::l1() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

int MultiIndex::max_entry() const {
    return *std::max_element(entries_.begin(), entries_.end());
}

bool MultiIndex::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0; });
}

MultiIndex MultiIndex::with(std::size_t axis, int value) const {
    auto e = entries_;
    e.at(axis) = value;
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
    if (other.size() != size()) throw std::invalid_argument("MultiIndex: dimension mismatch");
    auto e = entries_;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += other[i];
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
    if (other.size() != size()) throw std::invalid_argument("MultiIndex: dimension mismatch");
    auto e = entries_;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= other[i];
    return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ',';
        os << entries_[i];
    }
    os << ')';
    return os.str();
}

MultiIndex MultiIndex::parse(const std::string& text) {
    std::string cleaned;
    for (char c : text) {
        if (c != '(' && c != ')' && c != ' ') cleaned.push_back(c);
    }
    std::vector<int> e;
    std::stringstream ss(cleaned);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("MultiIndex::parse: empty entry in '" + text + "'");
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("MultiIndex::parse: bad entry '" + tok + "'");
        e.push_back(v);
    }
    return MultiIndex(std::move(e));
}

bool leq(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw std::invalid_argument("leq: dimension mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

MultiIndex meet(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw std::invalid_argument("meet: dimension mismatch");
    std::vector<int> e(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) e[i] = std::min(a[i], b[i]);
    return MultiIndex(std::move(e));
}

std::size_t lattice_size(const MultiIndex& delta) {
    std::size_t n = 1;
    for (int d : delta.entries()) n *= static_cast<std::size_t>(d + 1);
    return n;
}

std::vector<MultiIndex> multiindex_range(const MultiIndex& delta) {
    std::vector<MultiIndex> out;
    out.reserve(lattice_size(delta));
    std::vector<int> cur(delta.size(), 0);
    while (true) {
        out.emplace_back(cur);
        std::size_t i = 0;
        for (; i < cur.size(); ++i) {
            if (cur[i] < delta[i]) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
        }
        if (i == cur.size()) break;
    }
    return out;
}

std::size_t lattice_position(const MultiIndex& alpha, const MultiIndex& delta) {
    if (!leq(alpha, delta)) {
        throw std::invalid_argument("lattice_position: " + alpha.to_string() + " not <= " +
                                    delta.to_string());
    }
    std::size_t pos = 0, stride = 1;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        pos += static_cast<std::size_t>(alpha[i]) * stride;
        stride *= static_cast<std::size_t>(delta[i] + 1);
    }
    return pos;
}

HyperRect::HyperRect(std::vector<double> lo, std::vector<double> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.empty() || lo_.size() != hi_.size()) {
        throw std::invalid_argument("HyperRect: lo/hi must be non-empty and of equal length");
    }
    for (std::size_t i = 0; i < lo_.size(); ++i) {
        if (!(lo_[i] < hi_[i])) {
            throw std::invalid_argument("HyperRect: requires lo < hi on every axis");
        }
    }
}

HyperRect HyperRect::cube(std::size_t dims, double lo, double hi) {
    return HyperRect(std::vector<double>(dims, lo), std::vector<double>(dims, hi));
}

double HyperRect::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < dims(); ++i) v *= width(i);
    return v;
}

bool HyperRect::contains(std::span<const double> point) const {
    if (point.size() != dims()) return false;
    for (std::size_t i = 0; i < dims(); ++i) {
        if (!(point[i] >= lo_[i] && point[i] <= hi_[i])) return false;
    }
    return true;
}

SubdomainSpec::SubdomainSpec(std::vector<int> beta) : beta_(std::move(beta)) {
    for (int b : beta_) {
        if (b < -1 || b > 1) throw std::invalid_argument("SubdomainSpec: entries must be in {-1,0,1}");
    }
}

std::vector<std::size_t> SubdomainSpec::active_axes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < beta_.size(); ++i) {
        if (beta_[i] == 0) out.push_back(i);
    }
    return out;
}

std::size_t SubdomainSpec::num_active() const {
    return static_cast<std::size_t>(std::count(beta_.begin(), beta_.end(), 0));
}

bool SubdomainSpec::is_interior() const { return num_active() == beta_.size(); }

std::string SubdomainSpec::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < beta_.size(); ++i) {
        if (i) os << ',';
        os << beta_[i];
    }
    os << ')';
    return os.str();
}

SubdomainSpec face_spec(const MultiIndex& alpha, const MultiIndex& delta) {
    if (!leq(alpha, delta)) {
        throw std::invalid_argument("face_spec: alpha " + alpha.to_string() + " not <= delta " +
                                    delta.to_string());
    }
    std::vector<int> beta(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) beta[i] = alpha[i] == delta[i] ? 0 : -1;
    return SubdomainSpec(std::move(beta));
}

} // namespace sobolev
