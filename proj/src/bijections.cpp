#include "abelicomp/bijections.hpp"

#include <algorithm>
#include <set>

#include "abelicomp/error.hpp"
#include "abelicomp/transfer.hpp"

namespace abelicomp {

PartSeq phi(const Group& group, const PartSeq& u) {
    PartSeq v;
    v.reserve(u.size());
    GroupElement acc = group.zero();
    for (const auto& x : u) {
        acc = group.add(acc, x);
        v.push_back(acc);
    }
    return v;
}

PartSeq phi_inv(const Group& group, const PartSeq& v) {
    PartSeq u;
    u.reserve(v.size());
    GroupElement prev = group.zero();
    for (const auto& x : v) {
        u.push_back(group.sub(x, prev));
        prev = x;
    }
    return u;
}

PartSeq mullen_transport(const Group& group, const PartSeq& u, const GroupElement& s) {
    if (group.is_zero(s)) throw Error(ErrorCode::InvalidArgument, "transport needs s != 0");
    const GroupElement one = group.one();
    PartSeq v = phi(group, u);
    for (auto& x : v) {
        if (x == s) {
            x = one;
        } else if (x == one) {
            x = s;
        }
    }
    return phi_inv(group, v);
}

bool is_mullen_class(const ClassSpec& spec) {
    if (spec.parts != PartsMode::Nonzero || spec.first_nonzero != 0 || spec.rules.empty()) return false;
    std::set<int> lengths;
    for (const auto& rule : spec.rules) {
        if (rule.kind != RuleKind::SumNonzero) return false;
        lengths.insert(rule.length);
    }
    const int d = *lengths.rbegin();
    return static_cast<int>(lengths.size()) == d && *lengths.begin() == 1;
}

bool is_multiplication_closed(const ClassSpec& spec) {
    return std::none_of(spec.rules.begin(), spec.rules.end(),
                        [](const WindowRule& r) { return r.kind == RuleKind::ProductNeOne; });
}

BijectionReport check_bijection_prop5(const Group& group, int d, unsigned m, std::uint64_t budget) {
    BijectionReport report;
    report.d = d;
    report.m = m;
    report.group = group.describe();
    OracleOptions options;
    options.budget = budget;
    const ClassSpec source = mullen_class(d);
    const ClassSpec target = carlitz_class(d, true, true);
    const WindowChecker target_check(group, target);

    const auto sources = brute_enumerate(group, source, m, options);
    const auto targets = brute_enumerate(group, target, m, options);
    report.source_size = sources.size();
    report.target_size = targets.size();

    std::set<IndexSeq> images;
    for (const auto& x : sources) {
        PartSeq u;
        for (Part p : x) u.push_back(group.element_of(p));
        const PartSeq v = phi(group, u);
        IndexSeq image;
        for (const auto& e : v) image.push_back(static_cast<Part>(group.index_of(e)));
        if (!target_check.accepts(image)) report.maps_into = false;
        if (!images.insert(image).second) report.injective = false;
        if (phi_inv(group, v) != u) report.round_trip = false;
    }
    return report;
}

std::string to_string(IndependenceBasis basis) {
    switch (basis) {
    case IndependenceBasis::Mullen: return "mullen";
    case IndependenceBasis::Multiplication: return "multiplication";
    case IndependenceBasis::None: return "none";
    }
    return "none";
}

IndependenceReport check_s_independence(const Group& group, const ClassSpec& spec, unsigned m,
                                        const FieldSpec* field) {
    if (field != nullptr && !(field->additive_group() == group)) {
        throw Error(ErrorCode::ShapeError, "field does not present the group");
    }
    IndependenceReport report;
    report.m = m;
    report.counts = count_all(build_class(group, spec), m).coeffs();
    if (is_mullen_class(spec)) {
        report.basis = IndependenceBasis::Mullen;
    } else if (is_multiplication_closed(spec)) {
        report.basis = IndependenceBasis::Multiplication;
    }
    const BigInt& at_one = report.counts[group.index_of(group.one())];
    report.all_nonzero_equal = true;
    for (std::size_t i = 1; i < group.order(); ++i) {
        const GroupElement s = group.element_of(i);
        if (report.counts[i] != at_one) report.all_nonzero_equal = false;
        bool claimed = false;
        switch (report.basis) {
        case IndependenceBasis::Mullen: claimed = true; break;
        case IndependenceBasis::Multiplication: claimed = field != nullptr || group.is_ring_unit(s); break;
        case IndependenceBasis::None: break;
        }
        if (!claimed) continue;
        report.asserted.push_back(s);
        if (report.counts[i] != at_one) report.failures.push_back(s);
    }
    return report;
}

}  // namespace abelicomp
