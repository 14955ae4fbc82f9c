#include <doctest.h>

#include <numeric>

#include "abelicomp/error.hpp"
#include "abelicomp/oracle.hpp"
#include "abelicomp/restriction.hpp"
#include "abelicomp/spectral.hpp"
#include "abelicomp/transfer.hpp"
#include "support.hpp"

using namespace abelicomp;
using abelicomp::testing::all_small_classes;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidArgument;
}

IndexSeq idx(std::initializer_list<Part> parts) { return IndexSeq(parts); }

// All sequences of `m` parts reachable as ε_s → R → ... → R → T walks.
std::set<IndexSeq> walk_language(const RestrictionDigraph& d, unsigned m) {
    const unsigned sigma = static_cast<unsigned>(d.span());
    const unsigned a = m / sigma;
    const int b = static_cast<int>(m % sigma);
    std::set<IndexSeq> out;
    if (a == 0) return out;
    std::vector<std::vector<std::size_t>> walks;
    for (std::size_t s : d.start()) walks.push_back({s});
    for (unsigned step = 1; step < a; ++step) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& w : walks) {
            for (std::size_t v : d.successors(w.back())) {
                next.push_back(w);
                next.back().push_back(v);
            }
        }
        walks = std::move(next);
    }
    for (const auto& w : walks) {
        for (const auto& arc : d.terminal(b)) {
            if (arc.from != w.back()) continue;
            IndexSeq seq;
            for (std::size_t v : w) seq.insert(seq.end(), d.recurrent()[v].begin(), d.recurrent()[v].end());
            seq.insert(seq.end(), arc.tail.begin(), arc.tail.end());
            out.insert(seq);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("class specs") {
    const auto m = mullen_class(2);
    CHECK(m.parts == PartsMode::Nonzero);
    CHECK(m.rules.size() == 2);
    CHECK(m.natural_span() == 1);
    CHECK(carlitz_class(2, true).natural_span() == 2);
    CHECK(carlitz_class(2, true, true).natural_span() == 2);
    CHECK(carlitz_class(1, true, false).natural_span() == 1);
    CHECK(window_sum_class(3, false).natural_span() == 2);
    CHECK(code_of([] { mullen_class(0); }) == ErrorCode::InvalidArgument);
    ClassSpec product = product_ne_one_class(make_field(5, 1), 2);
    CHECK_THROWS_AS(validate_class(Group({7}), product), Error);
}

TEST_CASE("built digraph shapes") {
    const auto mullen = build_mullen(Group({5}), 2);
    CHECK(mullen.span() == 1);
    CHECK(mullen.size() == 4);
    for (std::size_t u = 0; u < mullen.size(); ++u) CHECK(mullen.successors(u).size() == 3);
    // arc u -> v iff u + v != 0
    const auto one = *mullen.find(idx({1}));
    const auto four = *mullen.find(idx({4}));
    CHECK_FALSE(mullen.has_arc(one, four));
    CHECK(mullen.has_arc(one, one));

    const auto carlitz = build_carlitz(Group({6}), 2, true);
    CHECK(carlitz.span() == 2);
    CHECK(carlitz.size() == 30);

    const auto ws = build_window_sum(Group({4}), 3, false);
    CHECK(ws.span() == 2);
    CHECK(ws.size() == 9);
    std::vector<IndexSeq> expected;
    for (Part a = 1; a < 4; ++a) {
        for (Part b = 1; b < 4; ++b) expected.push_back({a, b});
    }
    std::vector<IndexSeq> got = ws.recurrent();
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
}

TEST_CASE("builder counts against the reference tables") {
    CHECK(count(build_mullen(Group({5}), 2), 2, {{1}}) == 3);
    CHECK(count(build_carlitz(Group({6}), 2, true), 2, {{0}}) == 4);
    CHECK(count(build_window_sum(Group({4}), 3, false), 2, {{0}}) == 3);
}

TEST_CASE("degenerate classes") {
    CHECK(code_of([] { build_carlitz(Group({2}), 2, true); }) == ErrorCode::DegenerateClass);
    CHECK(code_of([] { build_carlitz(Group({3}), 3, true); }) == ErrorCode::DegenerateClass);
    // Z_2 with nonzero parts and any window sum of length 2: 1+1 = 0 kills every arc but not R.
    const auto d = build_window_sum(Group({2}), 2, false);
    CHECK(d.size() == 1);
    CHECK(d.arc_count() == 0);
    CHECK(cycle_gcd(d) == 0);
}

TEST_CASE("structure checks") {
    const auto mullen = build_mullen(Group({5}), 2);
    CHECK(is_strongly_connected(mullen));
    CHECK(satisfies_condition3(mullen));
    CHECK(cycle_gcd(mullen) == 1);
    const auto ws = build_window_sum(Group({4}), 3, false);
    CHECK(is_strongly_connected(ws));
    CHECK(cycle_gcd(ws) == 1);

    // A bipartite two-cycle.
    const Group z3({3});
    const RestrictionDigraph two(z3, 1, {idx({1}), idx({2})}, {0, 1}, {{0, 1}, {1, 0}},
                                 {{TerminalArc{0, {}}, TerminalArc{1, {}}}});
    CHECK(is_strongly_connected(two));
    CHECK(cycle_gcd(two) == 2);

    // Not strongly connected: 0 -> 1 only, loop at 1.
    const RestrictionDigraph chain(z3, 1, {idx({1}), idx({2})}, {0}, {{0, 1}, {1, 1}}, {{TerminalArc{1, {}}}});
    CHECK_FALSE(is_strongly_connected(chain));
    CHECK(cycle_gcd(chain) == 1);

    const RestrictionDigraph single(z3, 1, {idx({1})}, {0}, {{0, 0}}, {{TerminalArc{0, {}}}});
    CHECK(is_strongly_connected(single));
    CHECK_FALSE(satisfies_condition3(single));
}

TEST_CASE("cycle gcd divides sampled cycles") {
    // Cycles of length 3 and 6 on six vertices: gcd 3.
    const Group z7({7});
    std::vector<IndexSeq> r;
    for (Part p = 1; p <= 6; ++p) r.push_back({p});
    const RestrictionDigraph d(z7, 1, r, {0}, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 0}},
                               {{TerminalArc{0, {}}}});
    CHECK(cycle_gcd(d) == 3);
    for (const auto& c : abelicomp::testing::all_small_classes(2)) {
        std::optional<RestrictionDigraph> built;
        try {
            built.emplace(build_class(c.group, c.spec));
        } catch (const Error&) {
            continue;
        }
        const long long g = cycle_gcd(*built);
        for (std::size_t u = 0; u < built->size(); ++u) {
            if (built->has_arc(u, u)) CHECK(g == 1);
            for (std::size_t v : built->successors(u)) {
                if (v != u && built->has_arc(v, u) && g != 0) CHECK(2 % g == 0);
            }
        }
    }
}

TEST_CASE("invalid digraphs") {
    const Group z3({3});
    CHECK(code_of([&] { RestrictionDigraph(z3, 1, {idx({1})}, {0}, {{0, 0}}, {{}}); }) == ErrorCode::InvalidDigraph);
    CHECK(code_of([&] { RestrictionDigraph(z3, 1, {idx({1})}, {}, {{0, 0}}, {{TerminalArc{0, {}}}}); }) ==
          ErrorCode::InvalidDigraph);
    CHECK(code_of([&] { RestrictionDigraph(z3, 1, {idx({1}), idx({1})}, {0}, {}, {{TerminalArc{0, {}}}}); }) ==
          ErrorCode::InvalidDigraph);
    CHECK(code_of([&] { RestrictionDigraph(z3, 1, {idx({1})}, {0}, {{0, 3}}, {{TerminalArc{0, {}}}}); }) ==
          ErrorCode::InvalidDigraph);
    CHECK(code_of([&] { RestrictionDigraph(z3, 2, {idx({1})}, {0}, {}, {{TerminalArc{0, {}}}, {}}); }) ==
          ErrorCode::InvalidDigraph);
    CHECK(code_of([&] { RestrictionDigraph(z3, 1, {idx({1})}, {0}, {}, {{TerminalArc{0, idx({1})}}}); }) ==
          ErrorCode::InvalidDigraph);
    CHECK(code_of([&] { RestrictionDigraph(z3, 1, {}, {}, {}, {{}}); }) == ErrorCode::DegenerateClass);
}

TEST_CASE("walk language equals the window predicate") {
    for (const auto& c : all_small_classes(3)) {
        std::optional<RestrictionDigraph> built;
        try {
            built.emplace(build_class(c.group, c.spec));
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::DegenerateClass);
            continue;
        }
        const WindowChecker checker(c.group, c.spec);
        const unsigned sigma = static_cast<unsigned>(built->span());
        for (unsigned m = sigma; m <= std::min(2 * sigma + 2, 6u); ++m) {
            const auto brute = brute_enumerate(c.group, c.spec, m);
            const std::set<IndexSeq> expected(brute.begin(), brute.end());
            INFO(c.name << " m=" << m);
            REQUIRE(walk_language(*built, m) == expected);
            for (const auto& x : brute) REQUIRE(checker.accepts(x));
        }
    }
}

TEST_CASE("wider spans describe the same class") {
    const Group z5({5});
    const auto narrow = build_mullen(z5, 2);
    const auto wide = build_class_with_span(z5, mullen_class(2), 2);
    CHECK(wide.span() == 2);
    for (unsigned m = 0; m <= 8; ++m) CHECK(count_all(narrow, m) == count_all(wide, m));
    CHECK_THROWS_AS(build_class_with_span(z5, window_sum_class(3, false), 1), Error);
}

TEST_CASE("degree constants on a span d+1 digraph") {
    const auto d = build_class_with_span(Group({6}), carlitz_class(2, true), 3);
    const auto profile = degree_profile(d, 0);
    REQUIRE(profile);
    CHECK(profile->K == 64);
    CHECK(profile->H == 120);
    CHECK(profile->J == 1);
}

TEST_CASE("condition 2 search") {
    const auto mullen = build_mullen(Group({5}), 2);
    const auto found = check_condition2(mullen, 2);
    REQUIRE(found.found);
    REQUIRE(found.witnesses.size() == 1);
    CHECK(found.witnesses[0].length <= 2);
    CHECK(verify_condition2_witness(mullen, found.witnesses[0]));
    CHECK_FALSE(check_condition2(mullen, 1).found);

    for (int k : {4, 5, 6}) {
        const auto ws = build_window_sum(Group({k}), 3, false);
        const auto r = check_condition2(ws, 4);
        INFO("k=" << k);
        REQUIRE(r.found);
        for (const auto& w : r.witnesses) CHECK(verify_condition2_witness(ws, w));
    }

    const auto product = build_mullen(Group({2, 3}), 1);
    const auto r = check_condition2(product, 3);
    REQUIRE(r.found);
    CHECK(r.witnesses.size() == 2);
    for (const auto& w : r.witnesses) CHECK(verify_condition2_witness(product, w));

    // A tampered witness is rejected.
    CoordinateWitness bad = found.witnesses[0];
    bad.walks.resize(1);
    CHECK_FALSE(verify_condition2_witness(mullen, bad));
}

TEST_CASE("the two listed window-sum walks witness aperiodicity") {
    for (int k : {4, 5, 7}) {
        const Part t = static_cast<Part>(k - 1);
        const auto ws = build_window_sum(Group({k}), 3, false);
        const auto v = [&](Part a, Part b) { return *ws.find(idx({a, b})); };
        CoordinateWitness w;
        w.coordinate = 0;
        w.length = 4;
        w.u = v(1, 1);
        w.v = v(t, t);
        w.walks = {{v(1, t), v(2, 1), v(t, 1)}, {v(1, t), v(2, 2), v(t, 1)}};
        INFO("k=" << k);
        CHECK(verify_condition2_witness(ws, w));
    }
}

TEST_CASE("enumerate_class_counts matches the oracle") {
    const Group z6({6});
    for (unsigned m = 0; m <= 4; ++m) {
        CHECK(enumerate_class_counts(z6, carlitz_class(2, false), m) == brute_count_all(z6, carlitz_class(2, false), m));
    }
}
