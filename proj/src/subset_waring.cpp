#include "abelicomp/subset_waring.hpp"

#include <algorithm>
#include <numeric>

#include "abelicomp/error.hpp"

namespace abelicomp {

GroupVector count_subset_restricted_all(const Group& group, const std::vector<Subset>& subsets) {
    GroupVector acc = ga_delta(group, group.zero());
    for (const auto& subset : subsets) {
        if (subset.empty()) throw Error(ErrorCode::EmptySubset, "every S_j must be nonempty");
        const std::vector<GroupElement> elements(subset.begin(), subset.end());
        acc = ga_mul(acc, ga_indicator(group, elements));
    }
    return acc;
}

BigInt count_subset_restricted(const Group& group, const std::vector<Subset>& subsets, const GroupElement& s) {
    group.check(s);
    return count_subset_restricted_all(group, subsets)[group.index_of(s)];
}

const char* to_string(Tristate value) {
    switch (value) {
    case Tristate::False: return "false";
    case Tristate::True: return "true";
    case Tristate::Unknown: return "unknown";
    }
    return "unknown";
}

std::vector<std::vector<Tristate>> check_theorem1_hypothesis(const Group& group,
                                                              const std::vector<Subset>& subsets) {
    const std::size_t rank = group.rank();
    std::vector<std::vector<Tristate>> out;
    for (const auto& subset : subsets) {
        if (subset.empty()) throw Error(ErrorCode::EmptySubset, "every S_j must be nonempty");
        std::vector<std::set<int>> projections(rank);
        for (const auto& e : subset) {
            group.check(e);
            for (std::size_t t = 0; t < rank; ++t) projections[t].insert(e.coords[t]);
        }
        std::size_t product = 1;
        for (const auto& p : projections) product *= p.size();
        if (product != subset.size()) {
            out.emplace_back(rank, Tristate::Unknown);
            continue;
        }
        std::vector<Tristate> row;
        for (std::size_t t = 0; t < rank; ++t) {
            const int base = *projections[t].begin();
            int g = group.moduli()[t];
            for (int x : projections[t]) g = std::gcd(g, x - base);
            row.push_back(g == 1 ? Tristate::True : Tristate::False);
        }
        out.push_back(std::move(row));
    }
    return out;
}

BigInt diagonal_count(const FieldSpec& field, const std::vector<GroupElement>& coeffs,
                      const std::vector<unsigned long long>& exponents, const GroupElement& a) {
    if (coeffs.size() != exponents.size()) throw Error(ErrorCode::ShapeError, "coefficients and exponents differ in length");
    const Group& group = field.additive_group();
    group.check(a);
    std::vector<Subset> subsets;
    BigInt fibers = 1;
    const unsigned long long units = field.q() - 1;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        group.check(coeffs[j]);
        if (group.is_zero(coeffs[j])) throw Error(ErrorCode::InvalidArgument, "coefficients must be nonzero");
        if (exponents[j] == 0) throw Error(ErrorCode::InvalidArgument, "exponents must be positive");
        subsets.push_back(power_set(field, exponents[j], coeffs[j], false));
        fibers *= static_cast<unsigned long>(std::gcd(exponents[j], units));
    }
    if (subsets.empty()) return group.is_zero(a) ? BigInt(1) : BigInt(0);
    return count_subset_restricted(group, subsets, a) * fibers;
}

std::optional<int> waring_number_of_set(const Group& group, const Subset& s, int max_m) {
    if (max_m < 1) throw Error(ErrorCode::InvalidArgument, "max_m must be >= 1");
    if (s.empty()) throw Error(ErrorCode::EmptySubset, "power set is empty");
    std::vector<bool> reach(group.order(), false);
    std::vector<std::size_t> base;
    for (const auto& e : s) {
        base.push_back(group.index_of(e));
        reach[base.back()] = true;
    }
    for (int m = 1; m <= max_m; ++m) {
        if (std::all_of(reach.begin(), reach.end(), [](bool r) { return r; })) return m;
        std::vector<bool> next(group.order(), false);
        for (std::size_t x = 0; x < reach.size(); ++x) {
            if (!reach[x]) continue;
            for (std::size_t y : base) next[group.add_index(x, y)] = true;
        }
        reach = std::move(next);
    }
    return std::nullopt;
}

std::optional<int> waring_number(const FieldSpec& field, unsigned long long k, int max_m) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
    return waring_number_of_set(field.additive_group(), power_set(field, k, field.one(), true), max_m);
}

}  // namespace abelicomp
