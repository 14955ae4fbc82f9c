#include "abelicomp/serialization.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "abelicomp/error.hpp"

namespace abelicomp {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

void only_keys(const Json& j, std::initializer_list<const char*> keys, const char* what) {
    if (!j.is_object()) parse_error(std::string(what) + " must be an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) parse_error(std::string("unknown key '") + item.key() + "' in " + what);
    }
    for (const char* key : keys) {
        if (!j.contains(key)) parse_error(std::string("missing key '") + key + "' in " + what);
    }
}

long long as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) parse_error(std::string(what) + " must be an integer");
    return j.get<long long>();
}

std::vector<int> int_list(const Json& j, const char* what) {
    if (!j.is_array()) parse_error(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& x : j) out.push_back(static_cast<int>(as_int(x, what)));
    return out;
}

std::size_t as_index(const Json& j, const char* what) {
    const long long v = as_int(j, what);
    if (v < 0) parse_error(std::string(what) + " must be nonnegative");
    return static_cast<std::size_t>(v);
}

// A block of parts given as GroupElement arrays, converted to element indices.
IndexSeq parts_from_json(const Group& group, const Json& j) {
    if (!j.is_array()) parse_error("a vertex must be an array of parts");
    IndexSeq out;
    for (const auto& part : j) {
        const GroupElement e = element_from_json(part);
        try {
            group.check(e);
        } catch (const Error& err) {
            parse_error(std::string("bad part: ") + err.what());
        }
        out.push_back(static_cast<Part>(group.index_of(e)));
    }
    return out;
}

Json parts_to_json(const Group& group, const IndexSeq& seq) {
    Json out = Json::array();
    for (Part p : seq) out.push_back(to_json(group.element_of(p)));
    return out;
}

}  // namespace

std::string rational_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_str();
}

std::string float_string(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

Json to_json(const Group& group) { return Json{{"moduli", group.moduli()}}; }

Json to_json(const GroupElement& e) { return Json(e.coords); }

Json to_json(const GroupVector& v) {
    Json coeffs = Json::array();
    for (const auto& c : v.coeffs()) coeffs.push_back(c.get_str());
    return Json{{"moduli", v.group().moduli()}, {"coeffs", coeffs}};
}

Json to_json(const FieldSpec& field) {
    return Json{{"p", field.p()}, {"n", field.n()}, {"irreducible", field.irreducible()}};
}

Json to_json(const AsymptoticEstimate& estimate) {
    Json out;
    out["A"] = estimate.A_exact ? rational_string(*estimate.A_exact) : float_string(estimate.A);
    out["B"] = estimate.B_exact ? estimate.B_exact->get_str() : float_string(estimate.B);
    out["source"] = to_string(estimate.source);
    if (estimate.source == EstimateSource::Corollary2) out["item"] = estimate.item;
    out["b"] = estimate.b;
    out["A_float"] = estimate.A;
    out["B_float"] = estimate.B;
    return out;
}

Json to_json(const PerronData& perron) {
    return Json{{"rho", perron.rho},
                {"g", perron.g},
                {"h", perron.h},
                {"iterations", perron.iterations},
                {"residual", perron.residual}};
}

Json to_json(const BijectionReport& report) {
    return Json{{"group", report.group},
                {"d", report.d},
                {"m", report.m},
                {"source_size", report.source_size},
                {"target_size", report.target_size},
                {"maps_into", report.maps_into},
                {"injective", report.injective},
                {"round_trip", report.round_trip},
                {"ok", report.ok()}};
}

Json to_json(const Group& group, const IndependenceReport& report) {
    Json counts = Json::object();
    for (std::size_t i = 0; i < report.counts.size(); ++i) {
        counts[to_string(group.element_of(i))] = report.counts[i].get_str();
    }
    Json asserted = Json::array();
    for (const auto& s : report.asserted) asserted.push_back(to_json(s));
    Json failures = Json::array();
    for (const auto& s : report.failures) failures.push_back(to_json(s));
    return Json{{"basis", to_string(report.basis)},
                {"m", report.m},
                {"counts", counts},
                {"asserted", asserted},
                {"failures", failures},
                {"all_nonzero_equal", report.all_nonzero_equal},
                {"ok", report.ok()}};
}

Json to_json(const CoordinateWitness& witness) {
    return Json{{"coordinate", witness.coordinate},
                {"length", witness.length},
                {"u", witness.u},
                {"v", witness.v},
                {"walks", witness.walks}};
}

Group group_from_json(const Json& j) {
    only_keys(j, {"moduli"}, "group");
    return Group(int_list(j["moduli"], "moduli"));
}

GroupElement element_from_json(const Json& j) { return GroupElement{int_list(j, "group element")}; }

GroupVector group_vector_from_json(const Json& j) {
    only_keys(j, {"moduli", "coeffs"}, "group vector");
    Group group(int_list(j["moduli"], "moduli"));
    if (!j["coeffs"].is_array()) parse_error("coeffs must be an array");
    std::vector<BigInt> coeffs;
    for (const auto& c : j["coeffs"]) {
        if (!c.is_string()) parse_error("coefficients must be decimal strings");
        BigInt value;
        if (value.set_str(c.get<std::string>(), 10) != 0) parse_error("bad decimal coefficient");
        coeffs.push_back(value);
    }
    return GroupVector(group, std::move(coeffs));
}

FieldSpec field_from_json(const Json& j) {
    only_keys(j, {"p", "n", "irreducible"}, "field");
    return FieldSpec(static_cast<int>(as_int(j["p"], "p")), static_cast<int>(as_int(j["n"], "n")),
                     int_list(j["irreducible"], "irreducible"));
}

Json save_digraph(const RestrictionDigraph& d) {
    const Group& g = d.group();
    Json recurrent = Json::array();
    for (const auto& u : d.recurrent()) recurrent.push_back(parts_to_json(g, u));
    Json arcs = Json::array();
    for (std::size_t u = 0; u < d.size(); ++u) {
        for (std::size_t v : d.successors(u)) arcs.push_back(Json::array({u, v}));
    }
    Json terminal = Json::object();
    for (int b = 0; b < d.span(); ++b) {
        Json list = Json::array();
        for (const auto& arc : d.terminal(b)) list.push_back(Json::array({arc.from, parts_to_json(g, arc.tail)}));
        if (!list.empty()) terminal[std::to_string(b)] = list;
    }
    return Json{{"moduli", g.moduli()}, {"span", d.span()}, {"recurrent", recurrent},
                {"start", d.start()},   {"arcs", arcs},       {"terminal", terminal}};
}

RestrictionDigraph load_digraph(const Json& j) {
    only_keys(j, {"moduli", "span", "recurrent", "start", "arcs", "terminal"}, "digraph");
    Group group = [&] {
        try {
            return Group(int_list(j["moduli"], "moduli"));
        } catch (const Error& err) {
            if (err.code() == ErrorCode::ParseError) throw;
            parse_error(std::string("bad moduli: ") + err.what());
        }
    }();
    const long long span = as_int(j["span"], "span");
    if (span < 1) parse_error("span must be >= 1");

    if (!j["recurrent"].is_array()) parse_error("recurrent must be an array");
    std::vector<IndexSeq> recurrent;
    for (const auto& v : j["recurrent"]) recurrent.push_back(parts_from_json(group, v));

    if (!j["start"].is_array()) parse_error("start must be an array");
    std::vector<std::size_t> start;
    for (const auto& s : j["start"]) start.push_back(as_index(s, "start index"));

    if (!j["arcs"].is_array()) parse_error("arcs must be an array");
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (const auto& a : j["arcs"]) {
        if (!a.is_array() || a.size() != 2) parse_error("an arc must be a pair [u, v]");
        arcs.emplace_back(as_index(a[0], "arc endpoint"), as_index(a[1], "arc endpoint"));
    }

    const Json& term = j["terminal"];
    if (!term.is_object()) parse_error("terminal must be an object keyed by tail length");
    std::vector<std::vector<TerminalArc>> terminal(static_cast<std::size_t>(span));
    for (const auto& item : term.items()) {
        int b = -1;
        const std::string& key = item.key();
        auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), b);
        if (ec != std::errc() || ptr != key.data() + key.size() || b < 0 || b >= span) {
            parse_error("terminal key '" + key + "' is not a tail length in [0, span)");
        }
        if (!item.value().is_array()) parse_error("terminal entries must be arrays");
        for (const auto& arc : item.value()) {
            if (!arc.is_array() || arc.size() != 2) parse_error("a terminal arc must be [u, [parts]]");
            terminal[static_cast<std::size_t>(b)].push_back({as_index(arc[0], "terminal source"),
                                                             parts_from_json(group, arc[1])});
        }
    }
    return RestrictionDigraph(std::move(group), static_cast<int>(span), std::move(recurrent), std::move(start),
                              std::move(arcs), std::move(terminal));
}

RestrictionDigraph load_digraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) parse_error("cannot open " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        parse_error(std::string("invalid JSON in ") + path + ": " + err.what());
    }
    return load_digraph(j);
}

}  // namespace abelicomp
