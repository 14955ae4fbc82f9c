#include "abelicomp/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "abelicomp/bijections.hpp"
#include "abelicomp/closed_forms.hpp"
#include "abelicomp/error.hpp"
#include "abelicomp/oracle.hpp"
#include "abelicomp/serialization.hpp"
#include "abelicomp/spectral.hpp"
#include "abelicomp/subset_waring.hpp"
#include "abelicomp/transfer.hpp"

namespace abelicomp::cli {

namespace {

struct ClassOptions {
    std::string cls;
    bool weak = false;
    bool first_d_nonzero = false;
    int d = 1;
    int span = 0;
    std::vector<int> moduli;
    std::vector<int> field;
    std::string digraph;
};

void add_class_options(CLI::App* app, ClassOptions& o, bool require_class = true) {
    auto* opt = app->add_option("--class", o.cls, "class of compositions")
                    ->check(CLI::IsMember({"mullen", "carlitz", "carlitz-weak", "window-sum", "product-ne-one",
                                           "custom"}));
    if (require_class) opt->required();
    app->add_flag("--weak", o.weak, "allow zero parts (carlitz, window-sum)");
    app->add_flag("--first-d-nonzero", o.first_d_nonzero, "carlitz: the first d parts are nonzero");
    app->add_option("--d", o.d, "window parameter")->check(CLI::PositiveNumber);
    app->add_option("--span", o.span, "build the digraph with this span instead of the natural one");
    app->add_option("--moduli", o.moduli, "group Z_k1+Z_k2+...")->delimiter(',');
    app->add_option("--field", o.field, "field GF(p^n) given as p,n")->delimiter(',')->expected(2);
    app->add_option("--digraph", o.digraph, "custom digraph JSON file");
}

struct Resolved {
    Group group;
    std::optional<FieldSpec> field;
    std::optional<ClassSpec> spec;
    std::optional<RestrictionDigraph> digraph;
    std::string cls;
};

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

std::optional<FieldSpec> field_from_options(const std::vector<int>& field) {
    if (field.empty()) return std::nullopt;
    if (field.size() != 2) usage("--field takes p,n");
    return make_field(field[0], field[1]);
}

Group group_from_options(const std::vector<int>& moduli, const std::optional<FieldSpec>& field) {
    if (field) {
        if (!moduli.empty() && moduli != field->additive_group().moduli()) {
            usage("--moduli is inconsistent with --field");
        }
        return field->additive_group();
    }
    if (moduli.empty()) usage("one of --moduli or --field is required");
    return Group(moduli);
}

Resolved resolve(const ClassOptions& o) {
    std::optional<FieldSpec> field = field_from_options(o.field);
    if (o.cls == "custom") {
        if (o.digraph.empty()) usage("--class custom needs --digraph");
        RestrictionDigraph d = load_digraph_file(o.digraph);
        if (field && !(field->additive_group() == d.group())) usage("--field is inconsistent with the digraph");
        if (!o.moduli.empty() && o.moduli != d.group().moduli()) usage("--moduli is inconsistent with the digraph");
        Group g = d.group();
        return Resolved{std::move(g), field, std::nullopt, std::move(d), o.cls};
    }
    if (!o.digraph.empty()) usage("--digraph is only valid with --class custom");

    if (o.cls == "product-ne-one" && !field) {
        // Z_p^n given as moduli is read as GF(p^n) with the default polynomial.
        if (o.moduli.empty() || !std::all_of(o.moduli.begin(), o.moduli.end(),
                                             [&](int k) { return k == o.moduli.front(); })) {
            usage("product-ne-one needs --field p,n");
        }
        field = make_field(o.moduli.front(), static_cast<int>(o.moduli.size()));
    }
    Group group = group_from_options(o.moduli, field);

    ClassSpec spec;
    if (o.cls == "mullen") {
        spec = mullen_class(o.d);
    } else if (o.cls == "carlitz" || o.cls == "carlitz-weak") {
        spec = carlitz_class(o.d, o.weak || o.cls == "carlitz-weak", o.first_d_nonzero);
    } else if (o.cls == "window-sum") {
        spec = window_sum_class(o.d, o.weak);
    } else {
        spec = product_ne_one_class(*field, o.d);
    }
    if (o.first_d_nonzero && o.cls != "carlitz" && o.cls != "carlitz-weak") usage("--first-d-nonzero applies to carlitz only");
    if (o.weak && (o.cls == "mullen" || o.cls == "product-ne-one")) usage("--weak does not apply to " + o.cls);
    RestrictionDigraph d = o.span > 0 ? build_class_with_span(group, spec, o.span) : build_class(group, spec);
    return Resolved{std::move(group), field, spec, std::move(d), o.cls};
}

GroupElement element_from_list(const Group& group, const std::vector<int>& coords) {
    GroupElement e;
    if (coords.size() == 1 && group.rank() > 1) {
        // A single integer addresses the element by its mixed-radix index.
        if (coords[0] < 0 || static_cast<std::size_t>(coords[0]) >= group.order()) {
            throw Error(ErrorCode::RangeError, "element index out of range");
        }
        return group.element_of(static_cast<std::size_t>(coords[0]));
    }
    e.coords = coords;
    group.check(e);
    return e;
}

std::uint64_t default_budget() {
    if (const char* env = std::getenv("ABELICOMP_BUDGET")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        usage("ABELICOMP_BUDGET must be a nonnegative integer");
    }
    return kDefaultBudget;
}

// Runs task(i) for i in [0, n) on up to `jobs` threads; the first exception is rethrown.
template <typename Task>
void parallel_for(std::size_t n, int jobs, Task&& task) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex lock;
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> guard(lock);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

struct Preset {
    std::string name;
    Group group;
    ClassSpec spec;
    unsigned m_lo;
    unsigned m_hi;
    std::vector<std::size_t> rows;
};

Preset preset(const std::string& name) {
    auto range = [](std::size_t n) {
        std::vector<std::size_t> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = i;
        return out;
    };
    if (name == "table1") return {name, Group({4}), window_sum_class(3, false), 2, 21, {0, 1}};
    if (name == "table2") return {name, Group({5}), mullen_class(2), 1, 10, {0, 1}};
    if (name == "table3") return {name, Group({6}), carlitz_class(2, true), 2, 10, range(6)};
    if (name == "table4") return {name, Group({6}), carlitz_class(2, false), 2, 10, range(6)};
    usage("unknown preset '" + name + "'");
}

std::vector<GroupVector> preset_columns(const Preset& p) {
    const TransferSystem system(build_class(p.group, p.spec));
    auto sweep = count_sweep(system, p.m_hi);
    std::vector<GroupVector> columns;
    for (unsigned m = p.m_lo; m <= p.m_hi; ++m) columns.push_back(std::move(*sweep[m]));
    return columns;
}

Json estimate_json(const AsymptoticEstimate& est) { return to_json(est); }

int cmd_count(const ClassOptions& o, unsigned m, const std::vector<int>& s, bool all_s, const std::string& method,
              std::uint64_t budget, std::ostream& out) {
    Resolved r = resolve(o);
    GroupVector counts(r.group);
    if (method == "oracle") {
        if (!r.spec) throw Error(ErrorCode::Unsupported, "the oracle needs a built-in class");
        OracleOptions options;
        options.budget = budget;
        counts = brute_count_all(r.group, *r.spec, m, options);
    } else {
        counts = count_all(*r.digraph, m);
    }
    if (all_s) {
        out << to_json(counts).dump() << '\n';
        return 0;
    }
    if (s.empty()) usage("count needs --s or --all-s");
    out << counts[r.group.index_of(element_from_list(r.group, s))].get_str() << '\n';
    return 0;
}

std::optional<AsymptoticEstimate> closed_estimate(const Resolved& r, const ClassOptions& o, int b) {
    const std::size_t n = r.group.order();
    if (!r.spec) return std::nullopt;
    if (o.cls == "mullen") {
        AsymptoticEstimate est = theorem3_constants(n, o.d);
        est.b = b;
        return est;
    }
    const bool weak = r.spec->parts == PartsMode::Weak;
    if (o.cls == "carlitz" || o.cls == "carlitz-weak") {
        if (o.first_d_nonzero) return weak ? std::optional(corollary2_constants(3, n, o.d, b)) : std::nullopt;
        return corollary2_constants(weak ? 1 : 2, n, o.d, b);
    }
    if (o.cls == "window-sum") return weak ? std::optional(corollary2_constants(4, n, o.d, b)) : std::nullopt;
    if (o.cls == "product-ne-one") return corollary2_constants(5, n, o.d, b);
    return std::nullopt;
}

void require_aperiodic(const RestrictionDigraph& d) {
    if (!is_strongly_connected(d)) throw Error(ErrorCode::HypothesisViolated, "D_R is not strongly connected");
    const long long g = cycle_gcd(d);
    if (g != 1) throw Error(ErrorCode::HypothesisViolated, "cycle gcd of D_R is " + std::to_string(g) + ", not 1");
}

int cmd_asymptotic(const ClassOptions& o, int b, const std::string& source, std::ostream& out, std::ostream& err) {
    Resolved r = resolve(o);
    const RestrictionDigraph& d = *r.digraph;
    if (b < 0) usage("--b must be >= 0");
    if (source == "closed") {
        auto est = closed_estimate(r, o, b);
        if (!est) throw Error(ErrorCode::Unsupported, "no closed form is known for this class");
        out << estimate_json(*est).dump() << '\n';
        return 0;
    }
    if (b >= d.span()) usage("--b must be below the span " + std::to_string(d.span()));
    require_aperiodic(d);
    const PerronData p = perron(d);
    const AsymptoticEstimate est = asymptotic_constants(d, b, p);
    for (int other = 0; other < d.span(); ++other) {
        if (other == b || d.terminal(other).empty()) continue;
        const double a = asymptotic_constants(d, other, p).A;
        if (std::abs(a - est.A) > 1e-6 * std::abs(est.A)) {
            err << "warning: A depends on m mod " << d.span() << " (b=" << other << " gives "
                << float_string(a) << ")\n";
            break;
        }
    }
    Json j = estimate_json(est);
    j["span"] = d.span();
    j["perron"] = Json{{"rho", p.rho}, {"iterations", p.iterations}, {"residual", p.residual}};
    out << j.dump() << '\n';
    return 0;
}

int cmd_verify(const ClassOptions& o, unsigned max_m, std::uint64_t budget, int jobs, std::ostream& out) {
    Resolved r = resolve(o);
    if (!r.spec) throw Error(ErrorCode::Unsupported, "verify needs a built-in class (the oracle evaluates its definition)");
    const TransferSystem system(*r.digraph);
    OracleOptions options;
    options.budget = budget;
    std::vector<Json> entries(max_m + 1);
    std::vector<int> status(max_m + 1, 0);  // 0 match, 1 mismatch, 2 skipped
    parallel_for(max_m + 1, jobs, [&](std::size_t m) {
        const GroupVector fast = count_all(system, static_cast<unsigned>(m));
        Json e{{"m", m}};
        try {
            const GroupVector slow = brute_count_all(r.group, *r.spec, static_cast<unsigned>(m), options);
            if (fast == slow) {
                e["status"] = "match";
            } else {
                status[m] = 1;
                e["status"] = "mismatch";
                e["transfer"] = to_json(fast)["coeffs"];
                e["oracle"] = to_json(slow)["coeffs"];
            }
        } catch (const Error& ex) {
            if (ex.code() != ErrorCode::BudgetExceeded) throw;
            status[m] = 2;
            e["status"] = "skipped";
            e["reason"] = ex.detail();
        }
        entries[m] = std::move(e);
    });
    const bool mismatch = std::count(status.begin(), status.end(), 1) > 0;
    Json report{{"group", to_json(r.group)},
                {"class", r.spec->label},
                {"checked", std::count(status.begin(), status.end(), 0)},
                {"skipped", std::count(status.begin(), status.end(), 2)},
                {"mismatches", std::count(status.begin(), status.end(), 1)},
                {"results", entries}};
    out << report.dump() << '\n';
    return mismatch ? 1 : 0;
}

int cmd_bijection(int d, const std::vector<int>& moduli, const std::vector<int>& field_opt, unsigned m,
                  std::uint64_t budget, std::ostream& out) {
    const auto field = field_from_options(field_opt);
    const Group group = group_from_options(moduli, field);
    const BijectionReport report = check_bijection_prop5(group, d, m, budget);
    const IndependenceReport indep = check_s_independence(group, mullen_class(d), m);
    out << Json{{"phi_bijection", to_json(report)}, {"s_independence", to_json(group, indep)}}.dump() << '\n';
    return report.ok() && indep.ok() ? 0 : 1;
}

int cmd_waring(int p, int n, unsigned long long k, int max_m, std::ostream& out) {
    const FieldSpec field = make_field(p, n);
    const auto powers = power_set(field, k, field.one(), true);
    Json set = Json::array();
    for (const auto& e : powers) set.push_back(to_json(e));
    const auto g = waring_number(field, k, max_m);
    Json j{{"field", to_json(field)}, {"k", k}, {"power_set", set}, {"max_m", max_m}};
    j["waring_number"] = g ? Json(*g) : Json(nullptr);
    out << j.dump() << '\n';
    return 0;
}

int cmd_diagonal(int p, int n, const std::vector<long long>& coeffs, const std::vector<unsigned long long>& exps,
                 long long a, bool check, std::uint64_t budget, std::ostream& out) {
    const FieldSpec field = make_field(p, n);
    const Group& g = field.additive_group();
    auto element = [&](long long code) {
        if (code < 0 || static_cast<std::size_t>(code) >= field.q()) throw Error(ErrorCode::RangeError, "field element out of range");
        return g.element_of(static_cast<std::size_t>(code));
    };
    std::vector<GroupElement> cs;
    for (long long c : coeffs) cs.push_back(element(c));
    const GroupElement target = element(a);
    Json j{{"field", to_json(field)}, {"count", diagonal_count(field, cs, exps, target).get_str()}};
    int code = 0;
    if (check) {
        const BigInt direct = brute_diagonal_count(field, cs, exps, target, budget);
        j["direct"] = direct.get_str();
        j["agree"] = j["count"] == j["direct"];
        code = j["agree"].get<bool>() ? 0 : 1;
    }
    out << j.dump() << '\n';
    return code;
}

int cmd_check_digraph(const std::string& path, std::size_t l_max, std::ostream& out) {
    const RestrictionDigraph d = load_digraph_file(path);
    Json j{{"valid", true},
           {"group", to_json(d.group())},
           {"span", d.span()},
           {"vertices", d.size()},
           {"arcs", d.arc_count()},
           {"strongly_connected", is_strongly_connected(d)},
           {"condition3", satisfies_condition3(d)},
           {"cycle_gcd", cycle_gcd(d)}};
    const Condition2Result c2 = check_condition2(d, l_max);
    Json witnesses = Json::array();
    for (const auto& w : c2.witnesses) witnesses.push_back(to_json(w));
    j["condition2"] = Json{{"status", c2.found ? "witness" : "unknown"},
                           {"l_max", l_max},
                           {"walks_examined", c2.walks_examined},
                           {"witnesses", witnesses}};
    out << j.dump() << '\n';
    return 0;
}

void emit_error(std::ostream& err, std::string_view code, const std::string& message) {
    err << Json{{"error", {{"code", code}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

std::vector<std::string> preset_names() { return {"table1", "table2", "table3", "table4"}; }

std::string table_csv(const std::string& name) {
    const Preset p = preset(name);
    const auto columns = preset_columns(p);
    std::ostringstream os;
    os << "s";
    for (unsigned m = p.m_lo; m <= p.m_hi; ++m) os << ',' << m;
    os << '\n';
    for (std::size_t s : p.rows) {
        if (p.group.rank() == 1) {
            os << s;
        } else {
            os << '"' << to_string(p.group.element_of(s)) << '"';
        }
        for (const auto& col : columns) os << ',' << col[s].get_str();
        os << '\n';
    }
    return os.str();
}

std::string table_json(const std::string& name) {
    const Preset p = preset(name);
    const auto columns = preset_columns(p);
    Json ms = Json::array();
    for (unsigned m = p.m_lo; m <= p.m_hi; ++m) ms.push_back(m);
    Json rows = Json::array();
    for (std::size_t s : p.rows) {
        Json counts = Json::array();
        for (const auto& col : columns) counts.push_back(col[s].get_str());
        rows.push_back(Json{{"s", to_json(p.group.element_of(s))}, {"counts", counts}});
    }
    Json j{{"preset", p.name}, {"group", to_json(p.group)}, {"class", p.spec.label}, {"m", ms}, {"rows", rows}};
    return j.dump(2) + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Counting restricted compositions over finite abelian groups", "abelicomp"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    ClassOptions count_opts;
    unsigned count_m = 0;
    std::vector<int> count_s;
    bool count_all_s = false;
    std::string count_method = "transfer";
    std::optional<std::uint64_t> count_budget;
    auto* count = app.add_subcommand("count", "count m-compositions of s");
    add_class_options(count, count_opts);
    count->add_option("--m", count_m, "number of parts")->required();
    count->add_option("--s", count_s, "target sum")->delimiter(',');
    count->add_flag("--all-s", count_all_s, "print the count for every s as a group vector");
    count->add_option("--method", count_method, "transfer or oracle")->check(CLI::IsMember({"transfer", "oracle"}));
    count->add_option("--budget", count_budget, "oracle state budget");

    std::string table_preset;
    std::string table_format = "csv";
    auto* table = app.add_subcommand("table", "reproduce a reference table");
    table->add_option("--preset", table_preset)->required()->check(CLI::IsMember(preset_names()));
    table->add_option("--format", table_format)->check(CLI::IsMember({"csv", "json"}));

    ClassOptions asym_opts;
    int asym_b = 0;
    std::string asym_source = "spectral";
    auto* asym = app.add_subcommand("asymptotic", "constants A, B with c_m ~ A B^m");
    add_class_options(asym, asym_opts);
    asym->add_option("--b", asym_b, "residue of m modulo the span");
    asym->add_option("--source", asym_source)->check(CLI::IsMember({"closed", "spectral"}));

    ClassOptions verify_opts;
    unsigned verify_max_m = 6;
    std::optional<std::uint64_t> verify_budget;
    auto* verify = app.add_subcommand("verify", "compare transfer counts with brute force");
    add_class_options(verify, verify_opts);
    verify->add_option("--max-m", verify_max_m)->required();
    verify->add_option("--budget", verify_budget, "oracle state budget");

    int bij_d = 1;
    unsigned bij_m = 0;
    std::vector<int> bij_moduli;
    std::vector<int> bij_field;
    std::optional<std::uint64_t> bij_budget;
    auto* bij = app.add_subcommand("bijection", "prefix-sum bijection and s-independence checks");
    bij->add_option("--d", bij_d)->required()->check(CLI::PositiveNumber);
    bij->add_option("--moduli", bij_moduli)->delimiter(',');
    bij->add_option("--field", bij_field)->delimiter(',')->expected(2);
    bij->add_option("--m", bij_m)->required();
    bij->add_option("--budget", bij_budget, "oracle state budget");

    int war_p = 0;
    int war_n = 1;
    unsigned long long war_k = 1;
    int war_max_m = 64;
    auto* war = app.add_subcommand("waring", "Waring number over GF(p^n)");
    war->add_option("--p", war_p)->required();
    war->add_option("--n", war_n);
    war->add_option("--k", war_k)->required()->check(CLI::PositiveNumber);
    war->add_option("--max-m", war_max_m)->check(CLI::PositiveNumber);

    int diag_p = 0;
    int diag_n = 1;
    std::vector<long long> diag_coeffs;
    std::vector<unsigned long long> diag_exps;
    long long diag_a = 0;
    bool diag_check = false;
    std::optional<std::uint64_t> diag_budget;
    auto* diag = app.add_subcommand("diagonal", "solutions of a_1 x_1^d_1 + ... + a_m x_m^d_m = a over F^*");
    diag->add_option("--p", diag_p)->required();
    diag->add_option("--n", diag_n);
    diag->add_option("--coeffs", diag_coeffs)->required()->delimiter(',');
    diag->add_option("--exps", diag_exps)->required()->delimiter(',');
    diag->add_option("--a", diag_a)->required();
    diag->add_flag("--check", diag_check, "also enumerate x directly");
    diag->add_option("--budget", diag_budget, "direct enumeration budget");

    std::string dg_path;
    std::size_t dg_l_max = 6;
    auto* dg = app.add_subcommand("check-digraph", "validate a digraph JSON file and report its structure");
    dg->add_option("file", dg_path)->required();
    dg->add_option("--l-max", dg_l_max, "longest walk for the aperiodicity witness search");

    std::vector<std::string> argv_store{"abelicomp"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_error(err, to_string(ErrorCode::InvalidArgument), e.what());
        return 2;
    }

    try {
        auto budget_or_default = [](const std::optional<std::uint64_t>& b) { return b ? *b : default_budget(); };
        if (*count) {
            return cmd_count(count_opts, count_m, count_s, count_all_s, count_method, budget_or_default(count_budget),
                             out);
        }
        if (*table) {
            out << (table_format == "csv" ? table_csv(table_preset) : table_json(table_preset));
            return 0;
        }
        if (*asym) return cmd_asymptotic(asym_opts, asym_b, asym_source, out, err);
        if (*verify) return cmd_verify(verify_opts, verify_max_m, budget_or_default(verify_budget), jobs, out);
        if (*bij) return cmd_bijection(bij_d, bij_moduli, bij_field, bij_m, budget_or_default(bij_budget), out);
        if (*war) return cmd_waring(war_p, war_n, war_k, war_max_m, out);
        if (*diag) {
            return cmd_diagonal(diag_p, diag_n, diag_coeffs, diag_exps, diag_a, diag_check,
                                budget_or_default(diag_budget), out);
        }
        if (*dg) return cmd_check_digraph(dg_path, dg_l_max, out);
    } catch (const Error& e) {
        emit_error(err, to_string(e.code()), e.detail());
        return 2;
    } catch (const std::exception& e) {
        emit_error(err, "Internal", e.what());
        return 2;
    }
    return 2;
}

}  // namespace abelicomp::cli
