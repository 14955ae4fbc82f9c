#include "abelicomp/transfer.hpp"

#include <cmath>

#include "abelicomp/error.hpp"

namespace abelicomp {

namespace {

void require_m_supported(const TransferSystem& system, unsigned m) {
    if (m > 0 && m < static_cast<unsigned>(system.span()) && !system.digraph().predicate()) {
        throw Error(ErrorCode::Unsupported, "m = " + std::to_string(m) + " < span " +
                                                std::to_string(system.span()) +
                                                " and the digraph carries no window predicate");
    }
}

GroupVector empty_composition(const Group& group) {
    GroupVector v(group);
    v[0] = 1;
    return v;
}

}  // namespace

TransferSystem::TransferSystem(RestrictionDigraph digraph)
    : digraph_(std::make_shared<const RestrictionDigraph>(std::move(digraph))) {
    const auto& d = *digraph_;
    const Group& g = d.group();
    alpha_.assign(d.size(), GroupVector(g));
    for (std::size_t v : d.start()) alpha_[v][d.weight(v)] = 1;

    const auto sigma = static_cast<std::size_t>(d.span());
    beta_.assign(sigma, std::vector<GroupVector>(d.size(), GroupVector(g)));
    has_beta_.assign(sigma, 0);
    for (std::size_t b = 0; b < sigma; ++b) {
        for (const auto& arc : d.terminal(static_cast<int>(b))) {
            std::size_t w = 0;
            for (Part p : arc.tail) w = g.add_index(w, p);
            beta_[b][arc.from][w] += 1;
            has_beta_[b] = 1;
        }
    }
}

TransferSystem build_transfer(const RestrictionDigraph& digraph) { return TransferSystem(digraph); }

GroupVector TransferSystem::entry(std::size_t u, std::size_t v) const {
    GroupVector out(group());
    if (digraph_->has_arc(u, v)) out[digraph_->weight(v)] = 1;
    return out;
}

bool TransferSystem::has_beta(int b) const {
    return b >= 0 && b < span() && has_beta_[static_cast<std::size_t>(b)] != 0;
}

const std::vector<GroupVector>& TransferSystem::beta(int b) const {
    if (!has_beta(b)) throw Error(ErrorCode::NoTerminal, "no terminal arcs of length " + std::to_string(b));
    return beta_[static_cast<std::size_t>(b)];
}

std::vector<GroupVector> TransferSystem::step(const std::vector<GroupVector>& x) const {
    const auto& d = *digraph_;
    std::vector<GroupVector> y(d.size(), GroupVector(group()));
    GroupVector incoming(group());
    for (std::size_t v = 0; v < d.size(); ++v) {
        for (auto& c : incoming.coeffs()) c = 0;
        bool any = false;
        for (std::size_t u : d.predecessors(v)) {
            if (x[u].is_zero()) continue;
            incoming += x[u];
            any = true;
        }
        if (any) y[v].add_shifted(incoming, d.weight(v));
    }
    return y;
}

GroupVector TransferSystem::finish(const std::vector<GroupVector>& x, int b) const {
    const auto& d = *digraph_;
    if (!has_beta(b)) throw Error(ErrorCode::NoTerminal, "no terminal arcs of length " + std::to_string(b));
    GroupVector out(group());
    const Group& g = group();
    for (const auto& arc : d.terminal(b)) {
        std::size_t w = 0;
        for (Part p : arc.tail) w = g.add_index(w, p);
        out.add_shifted(x[arc.from], w);
    }
    return out;
}

std::vector<std::vector<int>> TransferSystem::at_trivial_character() const {
    const auto& d = *digraph_;
    std::vector<std::vector<int>> matrix(d.size(), std::vector<int>(d.size(), 0));
    for (std::size_t u = 0; u < d.size(); ++u) {
        for (std::size_t v : d.successors(u)) matrix[u][v] = 1;
    }
    return matrix;
}

std::vector<std::optional<GroupVector>> count_sweep(const TransferSystem& system, unsigned max_m) {
    const auto& d = system.digraph();
    const Group& g = system.group();
    const auto sigma = static_cast<unsigned>(system.span());
    std::vector<std::optional<GroupVector>> out(max_m + 1);
    out[0] = empty_composition(g);
    for (unsigned m = 1; m <= max_m && m < sigma; ++m) {
        if (d.predicate()) out[m] = enumerate_class_counts(g, *d.predicate(), m);
    }
    std::vector<GroupVector> x = system.alpha();
    for (unsigned a = 1; a * sigma <= max_m; ++a) {
        if (a > 1) x = system.step(x);
        for (unsigned b = 0; b < sigma && a * sigma + b <= max_m; ++b) {
            if (system.has_beta(static_cast<int>(b))) out[a * sigma + b] = system.finish(x, static_cast<int>(b));
        }
    }
    return out;
}

GroupVector count_all(const TransferSystem& system, unsigned m) {
    require_m_supported(system, m);
    const auto sigma = static_cast<unsigned>(system.span());
    if (m == 0) return empty_composition(system.group());
    if (m < sigma) return enumerate_class_counts(system.group(), *system.digraph().predicate(), m);
    const unsigned a = m / sigma;
    const int b = static_cast<int>(m % sigma);
    if (!system.has_beta(b)) {
        throw Error(ErrorCode::NoTerminal, "no terminal arcs of length " + std::to_string(b) +
                                               " (m = " + std::to_string(m) + ")");
    }
    std::vector<GroupVector> x = system.alpha();
    for (unsigned i = 1; i < a; ++i) x = system.step(x);
    return system.finish(x, b);
}

GroupVector count_all(const RestrictionDigraph& digraph, unsigned m) { return count_all(TransferSystem(digraph), m); }

BigInt count(const RestrictionDigraph& digraph, unsigned m, const GroupElement& s) {
    const std::size_t index = digraph.group().index_of(s);
    return count_all(digraph, m)[index];
}

std::vector<std::complex<double>> evaluate_at_characters(const TransferSystem& system, unsigned m) {
    require_m_supported(system, m);
    const auto& d = system.digraph();
    const Group& g = system.group();
    const std::size_t order = g.order();
    const auto sigma = static_cast<unsigned>(system.span());
    std::vector<std::complex<double>> values(order);

    if (m == 0 || m < sigma) {
        const GroupVector counts = m == 0 ? empty_composition(g) : enumerate_class_counts(g, *d.predicate(), m);
        for (std::size_t j = 0; j < order; ++j) {
            std::complex<double> acc = 0.0;
            for (std::size_t s = 0; s < order; ++s) {
                if (counts[s] != 0) acc += counts[s].get_d() * g.character_index(j, s);
            }
            values[j] = acc;
        }
        return values;
    }

    const unsigned a = m / sigma;
    const int b = static_cast<int>(m % sigma);
    if (!system.has_beta(b)) throw Error(ErrorCode::NoTerminal, "no terminal arcs of length " + std::to_string(b));

    std::vector<std::size_t> tail_weight;
    for (const auto& arc : d.terminal(b)) {
        std::size_t w = 0;
        for (Part p : arc.tail) w = g.add_index(w, p);
        tail_weight.push_back(w);
    }

    for (std::size_t j = 0; j < order; ++j) {
        std::vector<std::complex<double>> chi(order);
        for (std::size_t s = 0; s < order; ++s) chi[s] = g.character_index(j, s);
        std::vector<std::complex<double>> x(d.size(), 0.0);
        for (std::size_t v : d.start()) x[v] = chi[d.weight(v)];
        for (unsigned i = 1; i < a; ++i) {
            std::vector<std::complex<double>> y(d.size(), 0.0);
            for (std::size_t v = 0; v < d.size(); ++v) {
                std::complex<double> acc = 0.0;
                for (std::size_t u : d.predecessors(v)) acc += x[u];
                y[v] = acc * chi[d.weight(v)];
            }
            x = std::move(y);
        }
        std::complex<double> total = 0.0;
        const auto& arcs = d.terminal(b);
        for (std::size_t k = 0; k < arcs.size(); ++k) total += x[arcs[k].from] * chi[tail_weight[k]];
        values[j] = total;
    }
    return values;
}

std::vector<MultisectionResult> multisection_crosscheck_all(const TransferSystem& system, unsigned m) {
    const Group& g = system.group();
    const std::size_t order = g.order();
    const GroupVector exact = count_all(system, m);
    const BigInt limit = BigInt(1) << 50;
    for (const auto& c : exact.coeffs()) {
        if (c >= limit) {
            throw Error(ErrorCode::PrecisionRefused,
                        "exact count " + c.get_str() + " is not below 2^50 (m = " + std::to_string(m) + ")");
        }
    }
    const auto values = evaluate_at_characters(system, m);
    std::vector<MultisectionResult> out(order);
    for (std::size_t s = 0; s < order; ++s) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < order; ++j) acc += std::conj(g.character_index(j, s)) * values[j];
        const double estimate = acc.real() / static_cast<double>(order);
        const double exact_d = exact[s].get_d();
        out[s].estimate = estimate;
        out[s].exact = exact[s];
        out[s].agree = std::llround(estimate) == static_cast<long long>(exact_d) && std::abs(estimate - exact_d) < 0.5;
    }
    return out;
}

MultisectionResult multisection_crosscheck(const RestrictionDigraph& digraph, unsigned m, const GroupElement& s) {
    const std::size_t index = digraph.group().index_of(s);
    return multisection_crosscheck_all(TransferSystem(digraph), m)[index];
}

}  // namespace abelicomp
