#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "abelicomp/closed_forms.hpp"
#include "abelicomp/restriction.hpp"

namespace abelicomp {

/// Perron root and eigenvectors of the 0-1 matrix T(1) of D_R.
struct PerronData {
    double rho = 0.0;
    std::vector<double> g;  ///< right eigenvector, max-normalised
    std::vector<double> h;  ///< left eigenvector, scaled so h·g = 1
    std::size_t iterations = 0;
    double residual = 0.0;  ///< max of ‖T g − ρ g‖_∞ and ‖hT − ρ h‖_∞ (h max-normalised)
};

/// Power iteration from the all-ones vector. Stops once the Collatz–Wielandt
/// bounds min_u (Tx)_u/x_u ≤ ρ ≤ max_u (Tx)_u/x_u agree to `tol` (relative).
/// D_R should be strongly connected with cycle gcd 1; otherwise the iteration
/// may not converge and NoConvergence is raised.
PerronData perron(const RestrictionDigraph& digraph, double tol = 1e-12, std::size_t max_iter = 1'000'000);

/// A = (α(1)·g)(h·β_b(1)) ρ^{-1-b/σ} / |G|, B = ρ^{1/σ}.
AsymptoticEstimate asymptotic_constants(const RestrictionDigraph& digraph, int b, const PerronData& perron);

/// Degree data of a digraph in which every recurrent vertex has outdegree K and
/// J terminal arcs of length b; H counts the start arcs.
struct DegreeProfile {
    BigInt H;
    BigInt J;
    BigInt K;
};

/// nullopt unless the outdegrees and terminal degrees are uniform.
std::optional<DegreeProfile> degree_profile(const RestrictionDigraph& digraph, int b);

}  // namespace abelicomp
