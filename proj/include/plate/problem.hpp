#pragma once

// End-to-end pipeline: basis + coefficients + quadrature -> eigenvalues.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "plate/assembly.hpp"
#include "plate/basis.hpp"
#include "plate/coeff.hpp"
#include "plate/gevp.hpp"
#include "plate/quadrature.hpp"

namespace plate {

struct BasisSpec {
    Ordering ordering = Ordering::ascending_lambda;
    ParityFilter parity = ParityFilter::both;  // disk only
    std::size_t count = 0;                     // N for ascending; optional truncation for blocks
    int n_max = 0;                             // block bounds
    int m_max = 0;
};

/// Quadrature settings; a zero panel count means "choose from the basis".
struct QuadSpec {
    int order = 12;
    int panels = 0;          // square: panels per axis
    int radial_panels = 0;   // disk
    int angular_panels = 0;  // disk
    std::vector<double> split_radii;
};

struct Problem {
    Domain domain = Domain::square;
    CoefficientField alpha = constant_field(1.0);
    CoefficientField beta = constant_field(1.0);
    BasisSpec basis;
    QuadSpec quad;
};

/// Basis of size `n` under the spec's ordering (n = 0 uses spec.count, and
/// for blocks means the whole block).
inline BasisSet build_basis(Domain domain, const BasisSpec& spec, std::size_t n = 0) {
    if (n == 0) n = spec.count;
    EnumerationRequest req;
    if (spec.ordering == Ordering::ascending_lambda) {
        req = FirstN{n};
    } else {
        Block b{spec.n_max, spec.m_max, std::nullopt};
        if (n > 0) b.truncate = n;
        req = b;
    }
    return domain == Domain::disk ? enumerate_disk(req, spec.parity) : enumerate_square(req);
}

/// Default panel counts keep at least ~4 Gauss points per wavelength of the
/// most oscillatory product phi_i * phi_j at order 12.
inline QuadRule build_rule(const BasisSet& basis, const QuadSpec& spec, const CoefficientField& alpha,
                           const CoefficientField& beta) {
    if (basis.domain == Domain::square) {
        const int panels = spec.panels > 0 ? spec.panels : std::max(4, (basis.max_angular_order() + 2) / 3);
        return square_rule(spec.order, std::min(panels, 32));
    }
    std::set<double> splits(spec.split_radii.begin(), spec.split_radii.end());
    for (double r : alpha.jump_radii()) splits.insert(r);
    for (double r : beta.jump_radii()) splits.insert(r);
    const int angular =
        spec.angular_panels > 0 ? spec.angular_panels : std::max(4, (2 * basis.max_angular_order() + 2) / 3);
    const int radial = spec.radial_panels > 0
                           ? spec.radial_panels
                           : std::max(4, static_cast<int>(std::ceil(basis.max_wavenumber() / 5.0)));
    return disk_rule(spec.order, spec.order, std::vector<double>(splits.begin(), splits.end()),
                     std::min(angular, 64), std::min(radial, 32));
}

struct SolveOutcome {
    BasisSet basis;
    QuadRule rule;
    GalerkinSystem system;
    PlateEigenResult result;
};

inline SolveOutcome solve_problem(const Problem& problem, std::size_t n = 0) {
    SolveOutcome out;
    out.basis = build_basis(problem.domain, problem.basis, n);
    out.rule = build_rule(out.basis, problem.quad, problem.alpha, problem.beta);
    out.system = assemble(out.basis, problem.alpha, problem.beta, out.rule);
    out.result = solve(out.system);
    return out;
}

}  // namespace plate
