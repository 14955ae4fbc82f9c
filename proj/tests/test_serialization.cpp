#include <doctest.h>

#include "abelicomp/error.hpp"
#include "abelicomp/serialization.hpp"

using namespace abelicomp;

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

}  // namespace

TEST_CASE("value schemas") {
    const Group g({2, 3});
    CHECK(to_json(g).dump() == R"({"moduli":[2,3]})");
    CHECK(to_json(GroupElement{{1, 2}}).dump() == "[1,2]");
    GroupVector v(Group({3}), {BigInt("123456789012345678901234567890"), 0, 7});
    CHECK(to_json(v).dump() == R"({"moduli":[3],"coeffs":["123456789012345678901234567890","0","7"]})");
    CHECK(group_vector_from_json(to_json(v)) == v);
    CHECK(group_from_json(to_json(g)) == g);
    CHECK(element_from_json(Json::parse("[1,2]")) == GroupElement{{1, 2}});
    const FieldSpec f = make_field(2, 2);
    CHECK(to_json(f).dump() == R"({"p":2,"n":2,"irreducible":[1,1,1]})");
    CHECK(field_from_json(to_json(f)) == f);
}

TEST_CASE("estimates") {
    const auto est = corollary2_constants(2, 6, 2);
    const Json j = to_json(est);
    CHECK(j["A"] == "10/27");
    CHECK(j["B"] == "3");
    CHECK(j["source"] == "corollary2");
    CHECK(j["item"] == 2);
    CHECK(rational_string(Rational(4)) == "4");
    CHECK(float_string(0.375) == "0.375");
}

TEST_CASE("malformed values") {
    CHECK(code_of([] { group_from_json(Json::parse(R"({"moduli":[2],"x":1})")); }) == ErrorCode::ParseError);
    CHECK(code_of([] { group_from_json(Json::parse(R"({"moduli":"2"})")); }) == ErrorCode::ParseError);
    CHECK(code_of([] { group_from_json(Json::parse(R"([2])")); }) == ErrorCode::ParseError);
    CHECK(code_of([] { group_vector_from_json(Json::parse(R"({"moduli":[2],"coeffs":[1,2]})")); }) ==
          ErrorCode::ParseError);
    CHECK(code_of([] { group_vector_from_json(Json::parse(R"({"moduli":[2],"coeffs":["1","x"]})")); }) ==
          ErrorCode::ParseError);
    CHECK(code_of([] { field_from_json(Json::parse(R"({"p":4,"n":1,"irreducible":[0,1]})")); }) ==
          ErrorCode::NotPrime);
}

TEST_CASE("digraph round trip") {
    const auto d = build_mullen(Group({5}), 2);
    const Json saved = save_digraph(d);
    const auto loaded = load_digraph(saved);
    CHECK(save_digraph(loaded) == saved);
    CHECK(loaded.size() == d.size());
    CHECK(loaded.arc_count() == d.arc_count());
    CHECK(saved["recurrent"][0] == Json::parse("[[1]]"));

    const auto ws = build_window_sum(Group({4}), 3, false);
    CHECK(save_digraph(load_digraph(save_digraph(ws))) == save_digraph(ws));
    const auto wide = build_class_with_span(Group({2, 3}), carlitz_class(1, true), 2);
    CHECK(save_digraph(load_digraph(save_digraph(wide))) == save_digraph(wide));
}

TEST_CASE("digraph validation") {
    Json base = save_digraph(build_mullen(Group({3}), 2));

    Json no_terminal = base;
    no_terminal["terminal"] = Json::object();
    CHECK(code_of([&] { load_digraph(no_terminal); }) == ErrorCode::InvalidDigraph);

    Json arc_in_t = base;
    arc_in_t["terminal_arcs"] = Json::array({Json::array({0, 1})});
    CHECK(code_of([&] { load_digraph(arc_in_t); }) == ErrorCode::ParseError);

    Json missing = base;
    missing.erase("start");
    CHECK(code_of([&] { load_digraph(missing); }) == ErrorCode::ParseError);

    Json bad_key = base;
    bad_key["terminal"]["5"] = Json::array();
    CHECK(code_of([&] { load_digraph(bad_key); }) == ErrorCode::ParseError);

    Json bad_part = base;
    bad_part["recurrent"][0] = Json::parse("[[7]]");
    CHECK(code_of([&] { load_digraph(bad_part); }) == ErrorCode::ParseError);

    Json bad_arc = base;
    bad_arc["arcs"].push_back(Json::array({0, 9}));
    CHECK(code_of([&] { load_digraph(bad_arc); }) == ErrorCode::InvalidDigraph);

    Json bad_shape = base;
    bad_shape["arcs"].push_back(Json::array({0}));
    CHECK(code_of([&] { load_digraph(bad_shape); }) == ErrorCode::ParseError);

    Json bad_moduli = base;
    bad_moduli["moduli"] = Json::array({1});
    CHECK(code_of([&] { load_digraph(bad_moduli); }) == ErrorCode::ParseError);

    CHECK(code_of([] { load_digraph_file("/nonexistent/digraph.json"); }) == ErrorCode::ParseError);
}

TEST_CASE("checked-in example digraphs") {
    const auto two = load_digraph_file(DATA_DIR "/two_cycle.json");
    CHECK(two.size() == 2);
    const auto mullen = load_digraph_file(DATA_DIR "/mullen_z5_span2.json");
    CHECK(mullen.span() == 2);
}
