#pragma once

// Dirichlet eigenpairs of the Laplacian on the unit disk and unit square.
//
// Disk modes:   phi = c * J_n(j_{n,m} r) * {cos, sin}(n theta),  lambda = j_{n,m}^2
// Square modes: phi = 2 * sin(n pi x1) * sin(m pi x2),           lambda = pi^2 (n^2 + m^2)
//
// All modes are L2-normalised so that the mass matrix of a constant
// coefficient is a multiple of the identity.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "plate/geometry.hpp"
#include "plate/specfun.hpp"

namespace plate {

enum class Parity { cosine, sine };
enum class ParityFilter { cosine_only, both };

/// How the modes of a basis are ordered (and therefore which ones a
/// truncation to N keeps).
enum class Ordering {
    ascending_lambda,  // non-decreasing lambda, ties by (n, m, parity)
    lex_block,         // rectangular index block in (n, m, parity) order
};

inline std::string_view to_string(Ordering o) {
    return o == Ordering::ascending_lambda ? "ascending" : "block";
}

class ModeDescriptor {
public:
    static ModeDescriptor disk(int n, int m, Parity parity) {
        if (n < 0 || m < 1) {
            throw std::domain_error("disk mode needs n>=0, m>=1; got (" + std::to_string(n) +
                                    ", " + std::to_string(m) + ")");
        }
        if (parity == Parity::sine && n == 0) {
            throw std::domain_error("disk mode (n=0, sine) is identically zero");
        }
        return ModeDescriptor(Domain::disk, n, m, parity);
    }

    static ModeDescriptor square(int n, int m) {
        if (n < 1 || m < 1) {
            throw std::domain_error("square mode needs n,m>=1; got (" + std::to_string(n) + ", " +
                                    std::to_string(m) + ")");
        }
        return ModeDescriptor(Domain::square, n, m, Parity::cosine);
    }

    Domain domain() const { return domain_; }
    int n() const { return n_; }
    int m() const { return m_; }
    Parity parity() const { return parity_; }

    auto key() const { return std::tuple(static_cast<int>(domain_), n_, m_, static_cast<int>(parity_)); }
    friend bool operator==(const ModeDescriptor& a, const ModeDescriptor& b) { return a.key() == b.key(); }
    friend bool operator<(const ModeDescriptor& a, const ModeDescriptor& b) { return a.key() < b.key(); }

private:
    ModeDescriptor(Domain d, int n, int m, Parity p) : domain_(d), n_(n), m_(m), parity_(p) {}

    Domain domain_;
    int n_;
    int m_;
    Parity parity_;
};

struct DirichletEigenpair {
    ModeDescriptor mode;
    double lambda;
    double norm_const;
    double wavenumber;  // sqrt(lambda): j_{n,m} on the disk
};

struct BasisSet {
    Domain domain = Domain::square;
    Ordering policy = Ordering::ascending_lambda;
    std::vector<DirichletEigenpair> pairs;

    std::size_t size() const { return pairs.size(); }
    const DirichletEigenpair& operator[](std::size_t i) const { return pairs[i]; }
    auto begin() const { return pairs.begin(); }
    auto end() const { return pairs.end(); }

    int max_angular_order() const {
        int k = 0;
        for (const auto& p : pairs) k = std::max({k, p.mode.n(), domain == Domain::square ? p.mode.m() : 0});
        return k;
    }

    double max_wavenumber() const {
        double k = 0.0;
        for (const auto& p : pairs) k = std::max(k, p.wavenumber);
        return k;
    }
};

/// First `count` modes under ascending_lambda.
struct FirstN {
    std::size_t count = 0;
};

/// Rectangular index block, optionally truncated to its first `truncate`
/// members in lexicographic order. Disk: 0<=n<=n_max, 1<=m<=m_max.
/// Square: 1<=n<=n_max, 1<=m<=m_max.
struct Block {
    int n_max = 0;
    int m_max = 0;
    std::optional<std::size_t> truncate;
};

using EnumerationRequest = std::variant<FirstN, Block>;

namespace detail {

inline DirichletEigenpair make_disk_pair(int n, int m, Parity parity, double root) {
    const double pi_n = n == 0 ? 2.0 * std::numbers::pi : std::numbers::pi;
    const double c = std::sqrt(2.0 / pi_n) / std::abs(bessel_j(n + 1, root));
    return {ModeDescriptor::disk(n, m, parity), root * root, c, root};
}

inline DirichletEigenpair make_square_pair(int n, int m) {
    const double k2 = static_cast<double>(n * n + m * m);
    return {ModeDescriptor::square(n, m), std::numbers::pi * std::numbers::pi * k2, 2.0,
            std::numbers::pi * std::sqrt(k2)};
}

inline void sort_ascending(std::vector<DirichletEigenpair>& pairs) {
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        return a.mode < b.mode;
    });
}

inline bool request_empty(const EnumerationRequest& req) {
    if (const auto* f = std::get_if<FirstN>(&req)) return f->count == 0;
    const auto& b = std::get<Block>(req);
    return b.m_max < 1 || (b.truncate && *b.truncate == 0);
}

// Every disk mode with j_{n,m} < limit. Completeness follows from j_{n,1} > n.
inline std::vector<DirichletEigenpair> disk_modes_below(double limit, ParityFilter parity) {
    std::vector<DirichletEigenpair> out;
    for (int n = 0; n < limit && n <= kMaxBesselOrder; ++n) {
        const auto table = bessel_roots_below(n, limit);
        for (std::size_t k = 0; k < table.roots.size(); ++k) {
            const int m = static_cast<int>(k) + 1;
            out.push_back(make_disk_pair(n, m, Parity::cosine, table.roots[k]));
            if (parity == ParityFilter::both && n > 0) {
                out.push_back(make_disk_pair(n, m, Parity::sine, table.roots[k]));
            }
        }
    }
    return out;
}

}  // namespace detail

inline BasisSet enumerate_disk(const EnumerationRequest& request, ParityFilter parity) {
    if (detail::request_empty(request)) throw std::domain_error("enumerate_disk: empty request");
    BasisSet set;
    set.domain = Domain::disk;

    if (const auto* first = std::get_if<FirstN>(&request)) {
        set.policy = Ordering::ascending_lambda;
        // Weyl: lambda_j ~ 4j on the unit disk.
        double limit = 2.0 * std::sqrt(static_cast<double>(first->count)) + 5.0;
        for (;;) {
            auto modes = detail::disk_modes_below(limit, parity);
            if (modes.size() >= first->count) {
                detail::sort_ascending(modes);
                modes.erase(modes.begin() + static_cast<std::ptrdiff_t>(first->count), modes.end());
                set.pairs = std::move(modes);
                return set;
            }
            if (limit >= kMaxBesselArg) throw std::domain_error("enumerate_disk: request too large");
            limit = std::min(1.5 * limit, kMaxBesselArg);
        }
    }

    const auto& block = std::get<Block>(request);
    if (block.n_max < 0 || block.n_max > kMaxBesselOrder || block.m_max > 100) {
        throw std::domain_error("enumerate_disk: block bounds outside 0<=n<=50, 1<=m<=100");
    }
    set.policy = Ordering::lex_block;
    for (int n = 0; n <= block.n_max; ++n) {
        const auto table = bessel_roots(n, block.m_max);
        for (int m = 1; m <= block.m_max; ++m) {
            const double root = table.roots[m - 1];
            set.pairs.push_back(detail::make_disk_pair(n, m, Parity::cosine, root));
            if (parity == ParityFilter::both && n > 0) {
                set.pairs.push_back(detail::make_disk_pair(n, m, Parity::sine, root));
            }
        }
    }
    if (block.truncate) {
        if (*block.truncate > set.pairs.size()) {
            throw std::domain_error("enumerate_disk: truncation exceeds block size");
        }
        set.pairs.erase(set.pairs.begin() + static_cast<std::ptrdiff_t>(*block.truncate), set.pairs.end());
    }
    return set;
}

inline BasisSet enumerate_square(const EnumerationRequest& request) {
    if (detail::request_empty(request)) throw std::domain_error("enumerate_square: empty request");
    BasisSet set;
    set.domain = Domain::square;

    if (const auto* first = std::get_if<FirstN>(&request)) {
        set.policy = Ordering::ascending_lambda;
        int bound = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(first->count)))) + 1;
        for (;;) {
            std::vector<std::tuple<int, int, int>> keys;
            for (int n = 1; n <= bound; ++n)
                for (int m = 1; m <= bound; ++m) keys.emplace_back(n * n + m * m, n, m);
            std::sort(keys.begin(), keys.end());
            // Any mode outside the bound has n^2 + m^2 >= (bound+1)^2 + 1.
            const int excluded = (bound + 1) * (bound + 1) + 1;
            if (keys.size() >= first->count && std::get<0>(keys[first->count - 1]) < excluded) {
                for (std::size_t i = 0; i < first->count; ++i) {
                    set.pairs.push_back(detail::make_square_pair(std::get<1>(keys[i]), std::get<2>(keys[i])));
                }
                return set;
            }
            bound *= 2;
        }
    }

    const auto& block = std::get<Block>(request);
    if (block.n_max < 1) throw std::domain_error("enumerate_square: empty request");
    set.policy = Ordering::lex_block;
    for (int n = 1; n <= block.n_max; ++n)
        for (int m = 1; m <= block.m_max; ++m) set.pairs.push_back(detail::make_square_pair(n, m));
    if (block.truncate) {
        if (*block.truncate > set.pairs.size()) {
            throw std::domain_error("enumerate_square: truncation exceeds block size");
        }
        set.pairs.erase(set.pairs.begin() + static_cast<std::ptrdiff_t>(*block.truncate), set.pairs.end());
    }
    return set;
}

/// Builds a basis from an explicit list of modes, kept in the given order.
inline BasisSet basis_from_modes(Domain domain, std::span<const ModeDescriptor> modes) {
    if (modes.empty()) throw std::domain_error("basis_from_modes: empty mode list");
    BasisSet set;
    set.domain = domain;
    set.policy = Ordering::lex_block;
    std::map<int, BesselRootTable> roots;
    for (const auto& mode : modes) {
        if (mode.domain() != domain) throw std::domain_error("basis_from_modes: mode from another domain");
        for (const auto& p : set.pairs) {
            if (p.mode == mode) throw std::domain_error("basis_from_modes: duplicate mode");
        }
        if (domain == Domain::square) {
            set.pairs.push_back(detail::make_square_pair(mode.n(), mode.m()));
            continue;
        }
        auto& table = roots[mode.n()];
        if (static_cast<int>(table.roots.size()) < mode.m()) table = bessel_roots(mode.n(), mode.m());
        set.pairs.push_back(detail::make_disk_pair(mode.n(), mode.m(), mode.parity(), table.roots[mode.m() - 1]));
    }
    return set;
}

namespace detail {

inline double phi_unchecked(const DirichletEigenpair& pair, const Point& p) {
    const auto& mode = pair.mode;
    if (mode.domain() == Domain::square) {
        return pair.norm_const * std::sin(mode.n() * std::numbers::pi * p.x1) *
               std::sin(mode.m() * std::numbers::pi * p.x2);
    }
    const double arg = std::min(pair.wavenumber * p.r, pair.wavenumber);
    const double radial = bessel_j(mode.n(), arg);
    const double angular = mode.parity() == Parity::cosine ? std::cos(mode.n() * p.theta)
                                                           : std::sin(mode.n() * p.theta);
    return pair.norm_const * radial * angular;
}

}  // namespace detail

inline double eval_phi(const DirichletEigenpair& pair, const Point& p) {
    require_inside(pair.mode.domain(), p);
    return detail::phi_unchecked(pair, p);
}

/// -Laplacian(phi) via the eigenvalue identity; no differentiation.
inline double eval_neg_laplacian_phi(const DirichletEigenpair& pair, const Point& p) {
    return pair.lambda * eval_phi(pair, p);
}

}  // namespace plate
