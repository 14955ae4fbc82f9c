#include "abelicomp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abelicomp/error.hpp"

namespace abelicomp {

namespace {

struct Eigen {
    double value = 0.0;
    std::vector<double> vector;
    std::size_t iterations = 0;
    double residual = 0.0;
};

// y = T x (right) or y = x T (left, via predecessors)
template <typename Neighbours>
std::vector<double> apply(std::size_t n, const std::vector<double>& x, Neighbours&& neighbours) {
    std::vector<double> y(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        double acc = 0.0;
        for (std::size_t v : neighbours(u)) acc += x[v];
        y[u] = acc;
    }
    return y;
}

template <typename Neighbours>
Eigen power_iterate(std::size_t n, Neighbours&& neighbours, double tol, std::size_t max_iter) {
    std::vector<double> x(n, 1.0);
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t it = 1; it <= max_iter; ++it) {
        auto y = apply(n, x, neighbours);
        lower = std::numeric_limits<double>::infinity();
        upper = 0.0;
        bool positive = true;
        for (std::size_t u = 0; u < n; ++u) {
            if (x[u] <= 0.0) {
                positive = false;
                break;
            }
            const double ratio = y[u] / x[u];
            lower = std::min(lower, ratio);
            upper = std::max(upper, ratio);
        }
        const double scale = *std::max_element(y.begin(), y.end());
        if (scale <= 0.0) throw Error(ErrorCode::NoConvergence, "T(1) annihilates the iterate (nilpotent D_R)");
        for (auto& value : y) value /= scale;
        if (positive && upper - lower <= tol * upper) {
            Eigen out;
            out.value = 0.5 * (upper + lower);
            out.vector = std::move(y);
            out.iterations = it;
            const auto check = apply(n, out.vector, neighbours);
            for (std::size_t u = 0; u < n; ++u) {
                out.residual = std::max(out.residual, std::abs(check[u] - out.value * out.vector[u]));
            }
            if (*std::min_element(out.vector.begin(), out.vector.end()) <= 0.0) {
                throw Error(ErrorCode::NoConvergence, "Perron vector is not strictly positive");
            }
            return out;
        }
        x = std::move(y);
    }
    throw Error(ErrorCode::NoConvergence, "power iteration did not converge in " + std::to_string(max_iter) +
                                              " steps; last bound gap " + std::to_string(upper - lower));
}

}  // namespace

PerronData perron(const RestrictionDigraph& digraph, double tol, std::size_t max_iter) {
    const std::size_t n = digraph.size();
    const auto right = power_iterate(
        n, [&](std::size_t u) -> const std::vector<std::size_t>& { return digraph.successors(u); }, tol, max_iter);
    const auto left = power_iterate(
        n, [&](std::size_t v) -> const std::vector<std::size_t>& { return digraph.predecessors(v); }, tol, max_iter);

    PerronData out;
    out.rho = right.value;
    out.g = right.vector;
    out.h = left.vector;
    out.iterations = std::max(right.iterations, left.iterations);
    out.residual = std::max(right.residual, left.residual);
    double dot = 0.0;
    for (std::size_t u = 0; u < n; ++u) dot += out.h[u] * out.g[u];
    for (auto& value : out.h) value /= dot;
    return out;
}

AsymptoticEstimate asymptotic_constants(const RestrictionDigraph& digraph, int b, const PerronData& perron) {
    const int sigma = digraph.span();
    const auto& arcs = digraph.terminal(b);
    if (arcs.empty()) throw Error(ErrorCode::NoTerminal, "no terminal arcs of length " + std::to_string(b));
    double alpha_g = 0.0;
    for (std::size_t v : digraph.start()) alpha_g += perron.g[v];
    double h_beta = 0.0;
    for (const auto& arc : arcs) h_beta += perron.h[arc.from];

    AsymptoticEstimate est;
    est.source = EstimateSource::Spectral;
    est.b = b;
    est.B = std::pow(perron.rho, 1.0 / sigma);
    est.A = alpha_g * h_beta * std::pow(perron.rho, -1.0 - static_cast<double>(b) / sigma) /
            static_cast<double>(digraph.group().order());
    return est;
}

std::optional<DegreeProfile> degree_profile(const RestrictionDigraph& digraph, int b) {
    if (b < 0 || b >= digraph.span()) throw Error(ErrorCode::InvalidArgument, "b out of range");
    std::vector<std::size_t> terminal(digraph.size(), 0);
    for (const auto& arc : digraph.terminal(b)) ++terminal[arc.from];
    const std::size_t K = digraph.successors(0).size();
    const std::size_t J = terminal[0];
    for (std::size_t u = 0; u < digraph.size(); ++u) {
        if (digraph.successors(u).size() != K || terminal[u] != J) return std::nullopt;
    }
    DegreeProfile out;
    out.H = static_cast<unsigned long>(digraph.start().size());
    out.J = static_cast<unsigned long>(J);
    out.K = static_cast<unsigned long>(K);
    return out;
}

}  // namespace abelicomp
