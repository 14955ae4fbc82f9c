#include "abelicomp/restriction.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

#include "abelicomp/error.hpp"

namespace abelicomp {

namespace {

constexpr std::size_t kMaxRecurrent = 2'000'000;
constexpr std::size_t kMaxArcs = 50'000'000;

std::string rule_name(RuleKind kind) {
    switch (kind) {
    case RuleKind::SumNonzero: return "sum_nonzero";
    case RuleKind::AllDistinct: return "all_distinct";
    case RuleKind::ProductNeOne: return "product_ne_one";
    }
    return "?";
}

// Depth-first extension of `seq` up to `target` parts; `visit` is called on
// every accepted full-length sequence.
void extend(const WindowChecker& checker, std::size_t order, IndexSeq& seq, std::size_t target,
            const std::function<void(const IndexSeq&)>& visit) {
    if (seq.size() == target) {
        visit(seq);
        return;
    }
    for (std::size_t p = 0; p < order; ++p) {
        seq.push_back(static_cast<Part>(p));
        if (checker.ok_at(seq, seq.size() - 1)) extend(checker, order, seq, target, visit);
        seq.pop_back();
    }
}

std::uint64_t encode(const IndexSeq& seq, std::size_t begin, std::size_t count, std::uint64_t order) {
    std::uint64_t code = 0;
    for (std::size_t i = count; i-- > 0;) code = code * order + seq[begin + i];
    return code;
}

}  // namespace

int ClassSpec::max_window() const {
    int w = 0;
    for (const auto& rule : rules) w = std::max(w, rule.length);
    return w;
}

int ClassSpec::natural_span() const { return std::max({1, max_window() - 1, first_nonzero}); }

void validate_class(const Group& group, const ClassSpec& spec) {
    if (spec.first_nonzero < 0) throw Error(ErrorCode::InvalidArgument, "first_nonzero must be >= 0");
    for (const auto& rule : spec.rules) {
        if (rule.length < 1) {
            throw Error(ErrorCode::InvalidArgument, rule_name(rule.kind) + " window length must be >= 1");
        }
        if (rule.kind == RuleKind::ProductNeOne) {
            if (!spec.field) throw Error(ErrorCode::InvalidArgument, "product_ne_one needs a field");
            if (!(spec.field->additive_group() == group)) {
                throw Error(ErrorCode::ShapeError, "field additive group " + spec.field->additive_group().describe() +
                                                       " differs from " + group.describe());
            }
        }
    }
}

ClassSpec mullen_class(int d) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
    ClassSpec spec;
    spec.parts = PartsMode::Nonzero;
    for (int w = 1; w <= d; ++w) spec.rules.push_back({w, RuleKind::SumNonzero});
    spec.label = "mullen d=" + std::to_string(d);
    return spec;
}

ClassSpec carlitz_class(int d, bool weak, bool first_d_nonzero) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
    ClassSpec spec;
    spec.parts = weak ? PartsMode::Weak : PartsMode::Nonzero;
    spec.rules.push_back({d + 1, RuleKind::AllDistinct});
    spec.first_nonzero = first_d_nonzero ? d : 0;
    spec.label = std::string(weak ? "carlitz-weak" : "carlitz") + " d=" + std::to_string(d) +
                 (first_d_nonzero ? " first-d-nonzero" : "");
    return spec;
}

ClassSpec window_sum_class(int d, bool weak) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
    ClassSpec spec;
    spec.parts = weak ? PartsMode::Weak : PartsMode::Nonzero;
    spec.rules.push_back({d, RuleKind::SumNonzero});
    spec.label = std::string(weak ? "window-sum-weak" : "window-sum") + " d=" + std::to_string(d);
    return spec;
}

ClassSpec product_ne_one_class(const FieldSpec& field, int d) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
    ClassSpec spec;
    spec.parts = PartsMode::Nonzero;
    spec.rules.push_back({d, RuleKind::ProductNeOne});
    spec.field = field;
    spec.label = "product-ne-one d=" + std::to_string(d);
    return spec;
}

WindowChecker::WindowChecker(const Group& group, const ClassSpec& spec) : group_(group), spec_(spec) {
    validate_class(group_, spec_);
    const bool needs_field = std::any_of(spec_.rules.begin(), spec_.rules.end(),
                                         [](const WindowRule& r) { return r.kind == RuleKind::ProductNeOne; });
    if (needs_field) {
        field_mul_ = spec_.field->mul_table();
        field_one_ = group_.index_of(spec_.field->one());
    }
}

bool WindowChecker::part_allowed(Part part) const { return spec_.parts == PartsMode::Weak || part != 0; }

bool WindowChecker::ok_at(const IndexSeq& seq, std::size_t pos) const {
    if (!part_allowed(seq[pos])) return false;
    const std::size_t order = group_.order();
    for (const auto& rule : spec_.rules) {
        const auto w = static_cast<std::size_t>(rule.length);
        switch (rule.kind) {
        case RuleKind::SumNonzero: {
            if (pos + 1 < w) break;
            std::size_t sum = 0;
            for (std::size_t i = pos + 1 - w; i <= pos; ++i) sum = group_.add_index(sum, seq[i]);
            if (sum == 0) return false;
            break;
        }
        case RuleKind::AllDistinct: {
            const std::size_t first = pos + 1 >= w ? pos + 1 - w : 0;
            for (std::size_t i = first; i < pos; ++i) {
                if (seq[i] == seq[pos]) return false;
            }
            break;
        }
        case RuleKind::ProductNeOne: {
            if (pos + 1 < w) break;
            std::size_t prod = field_one_;
            for (std::size_t i = pos + 1 - w; i <= pos; ++i) prod = field_mul_[prod * order + seq[i]];
            if (prod == field_one_) return false;
            break;
        }
        }
    }
    return true;
}

bool WindowChecker::first_block_ok(const IndexSeq& seq) const {
    const std::size_t n = std::min(seq.size(), static_cast<std::size_t>(spec_.first_nonzero));
    for (std::size_t i = 0; i < n; ++i) {
        if (seq[i] == 0) return false;
    }
    return true;
}

bool WindowChecker::accepts(const IndexSeq& seq) const {
    for (std::size_t pos = 0; pos < seq.size(); ++pos) {
        if (!ok_at(seq, pos)) return false;
    }
    return first_block_ok(seq);
}

RestrictionDigraph::RestrictionDigraph(Group group, int span, std::vector<IndexSeq> recurrent,
                                       std::vector<std::size_t> start,
                                       std::vector<std::pair<std::size_t, std::size_t>> arcs,
                                       std::vector<std::vector<TerminalArc>> terminal,
                                       std::optional<ClassSpec> predicate)
    : group_(std::move(group)),
      span_(span),
      recurrent_(std::move(recurrent)),
      start_(std::move(start)),
      terminal_(std::move(terminal)),
      predicate_(std::move(predicate)) {
    if (span_ < 1) throw Error(ErrorCode::InvalidDigraph, "span must be >= 1");
    if (recurrent_.empty()) throw Error(ErrorCode::DegenerateClass, "no recurrent vertices");
    const std::size_t n = recurrent_.size();
    const std::size_t order = group_.order();
    weight_.resize(n);
    std::map<IndexSeq, std::size_t> seen;
    for (std::size_t u = 0; u < n; ++u) {
        const auto& vertex = recurrent_[u];
        if (vertex.size() != static_cast<std::size_t>(span_)) {
            throw Error(ErrorCode::InvalidDigraph, "recurrent vertex " + std::to_string(u) + " is not a " +
                                                       std::to_string(span_) + "-tuple");
        }
        std::size_t w = 0;
        for (Part p : vertex) {
            if (p >= order) throw Error(ErrorCode::InvalidDigraph, "part outside the group");
            w = group_.add_index(w, p);
        }
        weight_[u] = w;
        if (!seen.emplace(vertex, u).second) {
            throw Error(ErrorCode::InvalidDigraph, "duplicate recurrent vertex " + std::to_string(u));
        }
    }
    if (start_.empty()) throw Error(ErrorCode::InvalidDigraph, "no arc from the source to R");
    std::sort(start_.begin(), start_.end());
    if (std::adjacent_find(start_.begin(), start_.end()) != start_.end()) {
        throw Error(ErrorCode::InvalidDigraph, "duplicate start arc");
    }
    if (start_.back() >= n) throw Error(ErrorCode::InvalidDigraph, "start arc to a missing vertex");

    succ_.assign(n, {});
    pred_.assign(n, {});
    for (const auto& [u, v] : arcs) {
        if (u >= n || v >= n) throw Error(ErrorCode::InvalidDigraph, "arc endpoint outside R");
        succ_[u].push_back(v);
    }
    for (std::size_t u = 0; u < n; ++u) {
        auto& out = succ_[u];
        std::sort(out.begin(), out.end());
        if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
            throw Error(ErrorCode::InvalidDigraph, "duplicate arc from vertex " + std::to_string(u));
        }
        for (std::size_t v : out) pred_[v].push_back(u);
        arc_count_ += out.size();
    }

    if (terminal_.size() != static_cast<std::size_t>(span_)) {
        terminal_.resize(static_cast<std::size_t>(span_));
    }
    bool any_terminal = false;
    for (std::size_t b = 0; b < terminal_.size(); ++b) {
        for (const auto& arc : terminal_[b]) {
            if (arc.from >= n) throw Error(ErrorCode::InvalidDigraph, "terminal arc from a missing vertex");
            if (arc.tail.size() != b) throw Error(ErrorCode::InvalidDigraph, "terminal tail length mismatch");
            for (Part p : arc.tail) {
                if (p >= order) throw Error(ErrorCode::InvalidDigraph, "terminal part outside the group");
            }
            any_terminal = true;
        }
    }
    if (!any_terminal) throw Error(ErrorCode::InvalidDigraph, "no arc from R to T");
}

const std::vector<TerminalArc>& RestrictionDigraph::terminal(int b) const {
    if (b < 0 || b >= span_) throw Error(ErrorCode::RangeError, "terminal length outside [0, span)");
    return terminal_[static_cast<std::size_t>(b)];
}

bool RestrictionDigraph::has_arc(std::size_t u, std::size_t v) const {
    if (u >= size() || v >= size()) return false;
    return std::binary_search(succ_[u].begin(), succ_[u].end(), v);
}

PartSeq RestrictionDigraph::parts(std::size_t u) const {
    PartSeq out;
    for (Part p : recurrent_.at(u)) out.push_back(group_.element_of(p));
    return out;
}

std::optional<std::size_t> RestrictionDigraph::find(const IndexSeq& vertex) const {
    for (std::size_t u = 0; u < recurrent_.size(); ++u) {
        if (recurrent_[u] == vertex) return u;
    }
    return std::nullopt;
}

RestrictionDigraph build_class_with_span(const Group& group, const ClassSpec& spec, int span) {
    validate_class(group, spec);
    if (span < spec.natural_span()) {
        throw Error(ErrorCode::InvalidArgument, "span " + std::to_string(span) + " below the class span " +
                                                    std::to_string(spec.natural_span()));
    }
    for (const auto& rule : spec.rules) {
        if (rule.kind == RuleKind::AllDistinct && static_cast<std::size_t>(rule.length) > group.order()) {
            throw Error(ErrorCode::DegenerateClass, "all_distinct window " + std::to_string(rule.length) +
                                                        " exceeds |G| = " + std::to_string(group.order()));
        }
    }
    const WindowChecker checker(group, spec);
    const std::size_t order = group.order();
    const auto sigma = static_cast<std::size_t>(span);
    {
        long double states = 1;
        for (std::size_t i = 0; i < sigma; ++i) states *= static_cast<long double>(order);
        if (states > 1.8e19L) throw Error(ErrorCode::Unsupported, "span too large to index recurrent vertices");
    }

    std::vector<IndexSeq> recurrent;
    IndexSeq seq;
    extend(checker, order, seq, sigma, [&](const IndexSeq& v) {
        if (recurrent.size() >= kMaxRecurrent) throw Error(ErrorCode::Unsupported, "too many recurrent vertices");
        recurrent.push_back(v);
    });
    if (recurrent.empty()) throw Error(ErrorCode::DegenerateClass, "no admissible " + std::to_string(span) + "-tuples");

    std::unordered_map<std::uint64_t, std::size_t> index;
    index.reserve(recurrent.size() * 2);
    for (std::size_t u = 0; u < recurrent.size(); ++u) index.emplace(encode(recurrent[u], 0, sigma, order), u);

    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    std::vector<std::vector<TerminalArc>> terminal(sigma);
    for (std::size_t u = 0; u < recurrent.size(); ++u) {
        seq = recurrent[u];
        extend(checker, order, seq, 2 * sigma, [&](const IndexSeq& uv) {
            if (arcs.size() >= kMaxArcs) throw Error(ErrorCode::Unsupported, "too many arcs");
            arcs.emplace_back(u, index.at(encode(uv, sigma, sigma, order)));
        });
        for (std::size_t b = 0; b < sigma; ++b) {
            seq = recurrent[u];
            extend(checker, order, seq, sigma + b, [&](const IndexSeq& ut) {
                terminal[b].push_back(TerminalArc{u, IndexSeq(ut.begin() + static_cast<std::ptrdiff_t>(sigma), ut.end())});
            });
        }
    }

    std::vector<std::size_t> start;
    for (std::size_t v = 0; v < recurrent.size(); ++v) {
        if (checker.first_block_ok(recurrent[v])) start.push_back(v);
    }
    if (start.empty()) throw Error(ErrorCode::DegenerateClass, "no recurrent vertex satisfies the first-block rule");

    return RestrictionDigraph(group, span, std::move(recurrent), std::move(start), std::move(arcs),
                              std::move(terminal), spec);
}

RestrictionDigraph build_class(const Group& group, const ClassSpec& spec) {
    return build_class_with_span(group, spec, spec.natural_span());
}

RestrictionDigraph build_mullen(const Group& group, int d) { return build_class(group, mullen_class(d)); }

RestrictionDigraph build_carlitz(const Group& group, int d, bool weak, bool first_d_nonzero) {
    return build_class(group, carlitz_class(d, weak, first_d_nonzero));
}

RestrictionDigraph build_window_sum(const Group& group, int d, bool weak) {
    return build_class(group, window_sum_class(d, weak));
}

RestrictionDigraph build_window_product_ne_one(const FieldSpec& field, int d) {
    return build_class(field.additive_group(), product_ne_one_class(field, d));
}

GroupVector enumerate_class_counts(const Group& group, const ClassSpec& spec, unsigned m) {
    const WindowChecker checker(group, spec);
    GroupVector counts(group);
    IndexSeq seq;
    extend(checker, group.order(), seq, m, [&](const IndexSeq& x) {
        if (!checker.first_block_ok(x)) return;
        std::size_t sum = 0;
        for (Part p : x) sum = group.add_index(sum, p);
        counts[sum] += 1;
    });
    return counts;
}

namespace {

// Kosaraju; returns the component id of every recurrent vertex.
std::vector<std::size_t> strong_components(const RestrictionDigraph& d, std::size_t& count) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order;
    order.reserve(n);
    std::vector<char> visited(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (visited[root]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        visited[root] = 1;
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            const auto& out = d.successors(u);
            if (next < out.size()) {
                const std::size_t v = out[next++];
                if (!visited[v]) {
                    visited[v] = 1;
                    stack.emplace_back(v, 0);
                }
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(n, kNone);
    count = 0;
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t root = order[i];
        if (comp[root] != kNone) continue;
        std::vector<std::size_t> stack{root};
        comp[root] = count;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t u : d.predecessors(v)) {
                if (comp[u] == kNone) {
                    comp[u] = count;
                    stack.push_back(u);
                }
            }
        }
        ++count;
    }
    return comp;
}

long long gcd_of_differences(const std::vector<long long>& values) {
    long long g = 0;
    for (long long x : values) g = std::gcd(g, x - values.front());
    return g;
}

}  // namespace

bool is_strongly_connected(const RestrictionDigraph& d) {
    std::size_t count = 0;
    strong_components(d, count);
    return count == 1;
}

bool satisfies_condition3(const RestrictionDigraph& d) { return d.size() >= 2 && is_strongly_connected(d); }

long long cycle_gcd(const RestrictionDigraph& d) {
    std::size_t count = 0;
    const auto comp = strong_components(d, count);
    constexpr long long kUnset = -1;
    std::vector<long long> level(d.size(), kUnset);
    long long g = 0;
    for (std::size_t root = 0; root < d.size(); ++root) {
        if (level[root] != kUnset) continue;
        level[root] = 0;
        std::deque<std::size_t> queue{root};
        std::vector<std::size_t> members;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            members.push_back(u);
            for (std::size_t v : d.successors(u)) {
                if (comp[v] == comp[u] && level[v] == kUnset) {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (std::size_t u : members) {
            for (std::size_t v : d.successors(u)) {
                if (comp[v] == comp[u]) g = std::gcd(g, level[u] + 1 - level[v]);
            }
        }
    }
    return g;
}

Condition2Result check_condition2(const RestrictionDigraph& d, std::size_t l_max, std::size_t walk_budget) {
    Condition2Result result;
    const Group& group = d.group();
    const std::size_t rank = group.rank();
    const std::size_t n = d.size();

    // Integer (unreduced) size of every recurrent vertex, per coordinate.
    std::vector<std::vector<long long>> size(n, std::vector<long long>(rank, 0));
    for (std::size_t u = 0; u < n; ++u) {
        for (Part p : d.recurrent()[u]) {
            const auto e = group.element_of(p);
            for (std::size_t t = 0; t < rank; ++t) size[u][t] += e.coords[t];
        }
    }

    std::vector<std::optional<CoordinateWitness>> found(rank);
    std::size_t pending = rank;
    for (std::size_t len = 2; len <= l_max && pending > 0; ++len) {
        for (std::size_t u = 0; u < n && pending > 0; ++u) {
            // (coordinate, end vertex, other-coordinate signature) -> n -> representative walk
            std::map<std::tuple<std::size_t, std::size_t, std::vector<long long>>,
                     std::map<long long, std::vector<std::size_t>>>
                groups;
            std::vector<std::size_t> walk;
            bool exhausted = false;
            std::function<void(std::size_t)> dfs = [&](std::size_t from) {
                if (exhausted) return;
                if (walk.size() == len - 1) {
                    for (std::size_t v : d.successors(from)) {
                        if (++result.walks_examined > walk_budget) {
                            exhausted = true;
                            return;
                        }
                        for (std::size_t t = 0; t < rank; ++t) {
                            if (found[t]) continue;
                            std::vector<long long> signature;
                            long long total = 0;
                            for (std::size_t w : walk) {
                                for (std::size_t i = 0; i < rank; ++i) {
                                    if (i != t) signature.push_back(size[w][i]);
                                }
                                total += size[w][t];
                            }
                            groups[{t, v, std::move(signature)}].try_emplace(total, walk);
                        }
                    }
                    return;
                }
                for (std::size_t next : d.successors(from)) {
                    walk.push_back(next);
                    dfs(next);
                    walk.pop_back();
                    if (exhausted) return;
                }
            };
            dfs(u);
            for (const auto& [key, sums] : groups) {
                const std::size_t t = std::get<0>(key);
                if (found[t] || sums.size() < 2) continue;
                std::vector<long long> values;
                for (const auto& entry : sums) values.push_back(entry.first);
                if (gcd_of_differences(values) != 1) continue;
                CoordinateWitness witness;
                witness.coordinate = t;
                witness.length = len;
                witness.u = u;
                witness.v = std::get<1>(key);
                for (const auto& entry : sums) witness.walks.push_back(entry.second);
                found[t] = std::move(witness);
                --pending;
            }
            if (exhausted) return result;
        }
    }
    if (pending > 0) return result;
    result.found = true;
    for (auto& w : found) result.witnesses.push_back(std::move(*w));
    return result;
}

bool verify_condition2_witness(const RestrictionDigraph& d, const CoordinateWitness& witness) {
    const Group& group = d.group();
    if (witness.walks.empty() || witness.length < 1 || witness.coordinate >= group.rank()) return false;
    if (witness.u >= d.size() || witness.v >= d.size()) return false;
    auto integer_size = [&](std::size_t u) {
        std::vector<long long> s(group.rank(), 0);
        for (const auto& e : d.parts(u)) {
            for (std::size_t t = 0; t < group.rank(); ++t) s[t] += e.coords[t];
        }
        return s;
    };
    std::vector<long long> sums;
    std::vector<std::vector<long long>> reference;
    for (const auto& walk : witness.walks) {
        if (walk.size() != witness.length - 1) return false;
        std::size_t prev = witness.u;
        for (std::size_t w : walk) {
            if (!d.has_arc(prev, w)) return false;
            prev = w;
        }
        if (!d.has_arc(prev, witness.v)) return false;
        long long total = 0;
        std::vector<long long> others;
        for (std::size_t w : walk) {
            const auto s = integer_size(w);
            total += s[witness.coordinate];
            for (std::size_t i = 0; i < group.rank(); ++i) {
                if (i != witness.coordinate) others.push_back(s[i]);
            }
        }
        if (reference.empty()) {
            reference.push_back(others);
        } else if (reference.front() != others) {
            return false;
        }
        sums.push_back(total);
    }
    return gcd_of_differences(sums) == 1;
}

}  // namespace abelicomp
