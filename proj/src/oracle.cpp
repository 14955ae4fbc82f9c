#include "abelicomp/oracle.hpp"

#include <cmath>

#include "abelicomp/error.hpp"

namespace abelicomp {

namespace {

void check_budget(long double states, std::uint64_t budget) {
    if (states > static_cast<long double>(budget)) {
        throw Error(ErrorCode::BudgetExceeded, "enumeration of " + std::to_string(static_cast<double>(states)) +
                                                   " states exceeds budget " + std::to_string(budget));
    }
}

// The class definition, evaluated literally on complete windows.
class Definition {
public:
    Definition(const Group& group, const ClassSpec& spec) : group_(group), spec_(spec) {
        validate_class(group, spec);
        for (const auto& rule : spec.rules) {
            if (rule.kind == RuleKind::ProductNeOne) {
                field_ = &*spec.field;
                break;
            }
        }
    }

    // Every condition whose last position is `pos`.
    bool holds_at(const std::vector<GroupElement>& seq, std::size_t pos) const {
        const GroupElement& part = seq[pos];
        const bool nonzero = !group_.is_zero(part);
        if (spec_.parts == PartsMode::Nonzero && !nonzero) return false;
        if (pos < static_cast<std::size_t>(spec_.first_nonzero) && !nonzero) return false;
        for (const auto& rule : spec_.rules) {
            const auto w = static_cast<std::size_t>(rule.length);
            if (rule.kind == RuleKind::AllDistinct) {
                for (std::size_t back = 1; back < w && back <= pos; ++back) {
                    if (seq[pos - back] == part) return false;
                }
                continue;
            }
            if (pos + 1 < w) continue;
            if (rule.kind == RuleKind::SumNonzero) {
                GroupElement sum = group_.zero();
                for (std::size_t i = pos + 1 - w; i <= pos; ++i) sum = group_.add(sum, seq[i]);
                if (group_.is_zero(sum)) return false;
            } else {
                GroupElement prod = field_->one();
                for (std::size_t i = pos + 1 - w; i <= pos; ++i) prod = field_->mul(prod, seq[i]);
                if (prod == field_->one()) return false;
            }
        }
        return true;
    }

private:
    const Group& group_;
    const ClassSpec& spec_;
    const FieldSpec* field_ = nullptr;
};

template <typename Visit>
void enumerate(const Group& group, const ClassSpec& spec, unsigned m, OracleOptions options, Visit&& visit) {
    check_budget(std::pow(static_cast<long double>(group.order()), m), options.budget);
    const Definition definition(group, spec);
    std::vector<GroupElement> elements;
    for (std::size_t i = 0; i < group.order(); ++i) elements.push_back(group.element_of(i));

    std::vector<GroupElement> seq;
    IndexSeq indices;
    auto recurse = [&](auto&& self) -> void {
        if (seq.size() == m) {
            if (!options.prune) {
                for (std::size_t pos = 0; pos < m; ++pos) {
                    if (!definition.holds_at(seq, pos)) return;
                }
            }
            visit(indices);
            return;
        }
        for (std::size_t i = 0; i < elements.size(); ++i) {
            seq.push_back(elements[i]);
            indices.push_back(static_cast<Part>(i));
            if (!options.prune || definition.holds_at(seq, seq.size() - 1)) self(self);
            seq.pop_back();
            indices.pop_back();
        }
    };
    recurse(recurse);
}

}  // namespace

GroupVector brute_count_all(const Group& group, const ClassSpec& spec, unsigned m, OracleOptions options) {
    std::vector<std::uint64_t> tally(group.order(), 0);
    enumerate(group, spec, m, options, [&](const IndexSeq& x) {
        GroupElement sum = group.zero();
        for (Part p : x) sum = group.add(sum, group.element_of(p));
        ++tally[group.index_of(sum)];
    });
    GroupVector out(group);
    for (std::size_t i = 0; i < tally.size(); ++i) out[i] = static_cast<unsigned long>(tally[i]);
    return out;
}

BigInt brute_count(const Group& group, const ClassSpec& spec, unsigned m, const GroupElement& s,
                   OracleOptions options) {
    return brute_count_all(group, spec, m, options)[group.index_of(s)];
}

BigInt brute_total(const Group& group, const ClassSpec& spec, unsigned m, OracleOptions options) {
    std::uint64_t total = 0;
    enumerate(group, spec, m, options, [&](const IndexSeq&) { ++total; });
    return BigInt(static_cast<unsigned long>(total));
}

std::vector<IndexSeq> brute_enumerate(const Group& group, const ClassSpec& spec, unsigned m, OracleOptions options) {
    std::vector<IndexSeq> out;
    enumerate(group, spec, m, options, [&](const IndexSeq& x) { out.push_back(x); });
    return out;
}

BigInt brute_subset_count(const Group& group, const std::vector<std::set<GroupElement>>& subsets,
                          const GroupElement& s, std::uint64_t budget) {
    long double states = 1;
    for (const auto& subset : subsets) states *= static_cast<long double>(subset.size());
    check_budget(states, budget);
    group.check(s);
    std::vector<std::vector<GroupElement>> lists;
    for (const auto& subset : subsets) lists.emplace_back(subset.begin(), subset.end());
    std::uint64_t hits = 0;
    auto recurse = [&](auto&& self, std::size_t j, const GroupElement& partial) -> void {
        if (j == lists.size()) {
            if (partial == s) ++hits;
            return;
        }
        for (const auto& x : lists[j]) self(self, j + 1, group.add(partial, x));
    };
    recurse(recurse, 0, group.zero());
    return BigInt(static_cast<unsigned long>(hits));
}

BigInt brute_diagonal_count(const FieldSpec& field, const std::vector<GroupElement>& coeffs,
                            const std::vector<unsigned long long>& exponents, const GroupElement& a,
                            std::uint64_t budget) {
    if (coeffs.size() != exponents.size()) throw Error(ErrorCode::ShapeError, "coefficients and exponents differ in length");
    const Group& group = field.additive_group();
    check_budget(std::pow(static_cast<long double>(field.q() - 1), coeffs.size()), budget);
    std::uint64_t hits = 0;
    auto recurse = [&](auto&& self, std::size_t j, const GroupElement& partial) -> void {
        if (j == coeffs.size()) {
            if (partial == a) ++hits;
            return;
        }
        for (std::size_t i = 1; i < field.q(); ++i) {
            const GroupElement term = field.mul(coeffs[j], field.pow(group.element_of(i), exponents[j]));
            self(self, j + 1, group.add(partial, term));
        }
    };
    recurse(recurse, 0, group.zero());
    return BigInt(static_cast<unsigned long>(hits));
}

}  // namespace abelicomp
