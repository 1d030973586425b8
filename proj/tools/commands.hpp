#pragma once

#include "iterforge/iterforge.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace iterforge::cli {

inline constexpr std::size_t order_cap = 9;

enum class Format { text, json, csv };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Format parse_format(const std::string& s) {
    if (s == "text") return Format::text;
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    throw UsageError("format must be text, json or csv, got '" + s + "'");
}

struct RunConfig {
    std::size_t max_order = 7;
    std::optional<TableauMode> mode;
    bool unicity = false;
    Format format = Format::text;
    std::optional<std::filesystem::path> out;
    bool use_cache = true;
};

inline void check_order(std::size_t n) {
    if (n > order_cap) throw UsageError("order " + std::to_string(n) + " exceeds the cap " + std::to_string(order_cap));
}

inline TableauSet tableaux_for(std::size_t n, const RunConfig& cfg) {
    check_order(n);
    return load_tableaux(n, cfg.use_cache ? default_cache_dir() : std::nullopt);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Subcommand bodies; each maps module results to the requested format.

inline std::string cmd_enumerate(const TableauSet& set, std::size_t n, Format f) {
    const Catalog& c = set.catalog(n);
    switch (f) {
    case Format::json: return dump(catalog_json(c));
    case Format::csv: return catalog_csv(c);
    case Format::text: break;
    }
    return catalog_text(c);
}

inline std::string cmd_tableau(const TableauSet& set, std::size_t n, TableauMode mode, Format f) {
    if (n < 1) throw OrderZero("tableaux start at order 1");
    const Grid g = tableau_grid(set, n, mode);
    switch (f) {
    case Format::json: return dump(grid_json(n, to_string(mode), g));
    case Format::csv: return grid_csv(g);
    case Format::text: break;
    }
    return grid_text(g);
}

inline std::string cmd_incidence(const TableauSet& set, std::size_t n, TableauMode mode, Format f) {
    const IncidenceMatrix m = incidence_matrix(set, n, mode);
    switch (f) {
    case Format::json: return dump(incidence_json(m));
    case Format::csv: return incidence_csv(m);
    case Format::text: break;
    }
    return incidence_text(m);
}

inline std::string cmd_closure(const TableauSet& set, const IdentitySpec& spec, const ClosureConfig& cfg, Format f) {
    const ClosureState st = close(set, spec, cfg);
    switch (f) {
    case Format::json: return dump(closure_json(st));
    case Format::csv: return closure_csv(st);
    case Format::text: break;
    }
    return closure_text(st);
}

inline std::string cmd_classify(const TableauSet& set, std::size_t n, Label i, Label j, std::size_t max_order, Format f) {
    const Classification c = classify_identity(set, n, {i, j}, max_order);
    switch (f) {
    case Format::json: return dump(classification_json(n, {i, j}, c));
    case Format::csv: return "order,i,j,verdict\n" + std::to_string(n) + ',' + std::to_string(i) + ',' + std::to_string(j) +
                             ',' + c.to_string() + '\n';
    case Format::text: break;
    }
    return classification_text(c);
}

inline std::string cmd_skein_word(const std::string& word, Format f) {
    const Term t = parse_word(word);
    const BiPoly p = skein(t);
    const BiPoly q = skein_q(t);
    switch (f) {
    case Format::json: return dump({{"word", word}, {"P", p.to_string()}, {"Q", q.to_string()}});
    case Format::csv: return "word,P,Q\n" + word + ",\"" + p.to_string() + "\",\"" + q.to_string() + "\"\n";
    case Format::text: break;
    }
    return p.to_string() + "\n";
}

inline std::string cmd_skein_order(const TableauSet& set, std::size_t n, Format f) {
    const auto groups = collision_groups(set.catalog(n));
    auto labels_text = [](const std::vector<Label>& ls, const char* sep) {
        std::string s;
        for (std::size_t i = 0; i < ls.size(); ++i) s += (i ? sep : "") + std::to_string(ls[i]);
        return s;
    };
    std::ostringstream out;
    switch (f) {
    case Format::json: {
        Json arr = Json::array();
        for (const auto& g : groups) arr.push_back({{"P", g.poly.to_string()}, {"labels", g.labels}, {"N", g.multiplicity()}});
        return dump({{"order", n}, {"groups", arr}});
    }
    case Format::csv:
        out << "P,N,labels\n";
        for (const auto& g : groups) out << '"' << g.poly.to_string() << "\"," << g.multiplicity() << ",\"" << labels_text(g.labels, " ") << "\"\n";
        return out.str();
    case Format::text: break;
    }
    for (const auto& g : groups) out << g.poly.to_string() << "  N=" << g.multiplicity() << "  {" << labels_text(g.labels, ",") << "}\n";
    return out.str();
}

inline std::string sequence_output(const std::string& name, const std::vector<std::string>& values, Format f) {
    std::ostringstream out;
    switch (f) {
    case Format::json: return dump({{"sequence", name}, {"values", values}});
    case Format::csv:
        out << "n,value\n";
        for (std::size_t n = 0; n < values.size(); ++n) out << n << ',' << values[n] << '\n';
        return out.str();
    case Format::text: break;
    }
    for (std::size_t n = 0; n < values.size(); ++n) out << n << ' ' << values[n] << '\n';
    return out.str();
}

inline std::vector<std::string> big_strings(const std::vector<BigInt>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline std::string cmd_catalan_ballot(std::size_t rows, Format f) {
    const auto tri = ballot_triangle(rows);
    std::ostringstream out;
    switch (f) {
    case Format::json: {
        Json arr = Json::array();
        for (const auto& r : tri) arr.push_back(big_strings(r));
        return dump({{"rows", arr}});
    }
    case Format::csv:
        for (const auto& r : tri) {
            for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << r[j];
            out << '\n';
        }
        return out.str();
    case Format::text: break;
    }
    for (const auto& r : tri) {
        for (std::size_t j = 0; j < r.size(); ++j) out << (j ? " " : "") << r[j];
        out << '\n';
    }
    return out.str();
}

inline std::string cmd_catalan_general(std::size_t arity, std::size_t degree, Format f) {
    std::vector<BigInt> v;
    for (std::size_t n = 0; n <= degree; ++n) v.push_back(catalan_general(arity, n));
    return sequence_output("general", big_strings(v), f);
}

inline std::string cmd_catalan_mixed(const std::vector<std::size_t>& arities, std::size_t degree, Format f) {
    return sequence_output("mixed", big_strings(series_mixed(arities, degree).coefficients()), f);
}

inline std::string cmd_catalan_relative(const std::string& poly, const std::map<std::size_t, BigInt>& base,
                                        std::size_t degree, Format f) {
    return sequence_output("relative", big_strings(catalan_relative(BiPoly::parse(poly, 's', 't'), base, degree)), f);
}

inline std::string cmd_catalan_weighted(std::size_t k, std::size_t l, const std::vector<BigInt>& initial, std::size_t degree,
                                        bool strict, Format f) {
    if (strict) return sequence_output("weighted", big_strings(weighted_recurrence_strict(k, l, initial, degree)), f);
    const auto r = weighted_recurrence(k, l, initial, degree);
    std::vector<std::string> vals;
    for (const auto& v : r.values) vals.push_back(to_string(v));
    if (f == Format::json) return dump({{"sequence", "weighted"}, {"values", vals}, {"non_integral", r.non_integral}});
    std::string out = sequence_output("weighted", vals, f);
    if (f == Format::text && !r.non_integral.empty()) {
        out += "non-integral at";
        for (auto n : r.non_integral) out += " " + std::to_string(n);
        out += "\n";
    }
    return out;
}

inline std::string cmd_catalan_convolution(std::size_t lambda, std::size_t n, Format f) {
    const auto r = convolution_relation_check(lambda, n);
    std::vector<std::string> fit;
    for (const auto& x : r.fitted) fit.push_back(to_string(x));
    const Json j = {{"lambda", lambda},
                    {"n", n},
                    {"value", to_string(r.value)},
                    {"fitted", fit},
                    {"fit_confirmed_to", r.fit_confirmed ? Json(r.confirmed_to) : Json(nullptr)},
                    {"fit_matches_general_term", r.fit_matches_general_term},
                    {"fit_matches_alternate_second", r.fit_matches_alternate_second},
                    {"pascal_sum", to_string(r.pascal_sum)},
                    {"pascal_holds", r.pascal_holds},
                    {"ratio", r.ratio},
                    {"ratio_limit", r.ratio_limit}};
    if (f == Format::json) return dump(j);
    std::ostringstream out;
    if (f == Format::csv) {
        out << "key,value\n";
        for (auto it = j.begin(); it != j.end(); ++it) {
            out << it.key() << ",\"" << (it->is_string() ? it->get<std::string>() : it->dump()) << "\"\n";
        }
        return out.str();
    }
    out << "C(" << lambda << "," << n << ") = " << r.value << '\n';
    out << "fit:";
    for (const auto& s : fit) out << ' ' << s;
    out << (r.fit_confirmed ? " (confirmed to n=" + std::to_string(r.confirmed_to) + ")" : " (not confirmed)") << '\n';
    out << "general term " << (r.fit_matches_general_term ? "matches" : "differs") << ", alternate second coefficient "
        << (r.fit_matches_alternate_second ? "matches" : "differs") << '\n';
    out << "ballot sum " << r.pascal_sum << (r.pascal_holds ? " = S_n" : " != S_n") << '\n';
    out << "ratio " << r.ratio << " against " << r.ratio_limit << '\n';
    return out.str();
}

inline std::string cmd_verify(const TableauSet& set, std::size_t n, Format f, bool& ok) {
    const VerifyReport r = run_verify(set, n);
    ok = r.ok();
    switch (f) {
    case Format::json: return dump(r.to_json());
    case Format::csv: return r.to_csv();
    case Format::text: break;
    }
    return r.to_text();
}

// ---------------------------------------------------------------------------
// Argument handling

inline std::vector<std::size_t> parse_size_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t pos = 0;
            const unsigned long v = std::stoul(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("expected a comma-separated list of integers, got '" + s + "'");
        }
    }
    return out;
}

inline std::vector<BigInt> parse_big_list(const std::string& s) {
    std::vector<BigInt> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.emplace_back(item);
        } catch (const std::exception&) {
            throw UsageError("bad integer '" + item + "'");
        }
    }
    return out;
}

/// "0:1,2:3" as order -> value.
inline std::map<std::size_t, BigInt> parse_base(const std::string& s) {
    std::map<std::size_t, BigInt> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("base entries look like order:value, got '" + item + "'");
        const auto key = parse_size_list(item.substr(0, colon));
        const auto val = parse_big_list(item.substr(colon + 1));
        if (key.size() != 1 || val.size() != 1) throw UsageError("bad base entry '" + item + "'");
        out[key[0]] = val[0];
    }
    return out;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw UsageError("cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/**
 * Parses argv, runs one subcommand and writes its output. Returns the exit
 * code: 0 success, 1 verification failure, 2 usage error, 3 domain error.
 */
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Iterates of a binary operation: tableaux, incidence, closures and verification", "iterforge"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    RunConfig cfg;
    std::string format = "text";
    std::string mode_text;
    std::string out_path;
    bool no_cache = false;
    app.add_option("--order", cfg.max_order, "maximum order N (default 7, cap 9)");
    app.add_option("--mode", mode_text, "tableau mode A, B or AB");
    app.add_flag("--unicity", cfg.unicity, "apply the cancellation rules in closures");
    app.add_option("--format", format, "text, json or csv");
    app.add_option("--out", out_path, "write output to PATH instead of stdout");
    app.add_flag("--no-cache", no_cache, "build tableaux in memory without the disk cache");

    auto sub = [&](const char* name, const char* desc) {
        auto* s = app.add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    std::optional<std::size_t> enum_n;
    auto* enumerate = sub("enumerate", "list the iterates of order n with their labels");
    enumerate->add_option("n", enum_n, "order (defaults to --order)");

    std::size_t tab_n = 0;
    auto* tableau = sub("tableau", "print A_n, B_n or both");
    tableau->add_option("n", tab_n, "order")->required();

    std::size_t inc_n = 0;
    auto* incidence = sub("incidence", "print the formal-reducibility incidence matrix");
    incidence->add_option("n", inc_n, "order")->required();

    std::string spec_file;
    auto* closure = sub("closure", "close a spec file of identities");
    closure->add_option("spec", spec_file, "spec file: 'order n' then one 'i j' pair per line")->required();

    std::size_t cls_n = 0;
    Label cls_i = 0, cls_j = 0;
    auto* classify = sub("classify", "classify the identity i = j at order n");
    classify->add_option("n", cls_n, "order")->required();
    classify->add_option("i", cls_i, "left label")->required();
    classify->add_option("j", cls_j, "right label")->required();

    std::string skein_word;
    auto* skein_cmd = sub("skein", "skein polynomial of a word, or collision groups at --order");
    skein_cmd->add_option("word", skein_word, "prefix word in V and x");

    auto* catalan_cmd = sub("catalan", "Catalan-type sequences");
    catalan_cmd->require_subcommand(1);
    std::size_t degree = 12, arity = 2, k = 1, l = 1, lambda = 2, conv_n = 30, rows = 10;
    std::string arities = "2,3", poly = "s+t+1", base = "0:1", initial = "1";
    bool strict = false;
    auto csub = [&](const char* name, const char* desc) {
        auto* s = catalan_cmd->add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };
    auto* c_ballot = csub("ballot", "ballot triangle c_nj");
    c_ballot->add_option("--rows", rows, "number of rows");
    auto* c_general = csub("general", "a-ary tree counts");
    c_general->add_option("--arity", arity, "arity a >= 2");
    c_general->add_option("--degree", degree, "last index");
    auto* c_mixed = csub("mixed", "trees with mixed node arities");
    c_mixed->add_option("--arities", arities, "comma-separated arities");
    c_mixed->add_option("--degree", degree, "last index");
    auto* c_relative = csub("relative", "recursion over lattice points of a polynomial P(s,t)");
    c_relative->add_option("--poly", poly, "polynomial in s and t");
    c_relative->add_option("--base", base, "base values order:value,...");
    c_relative->add_option("--degree", degree, "last index");
    auto* c_weighted = csub("weighted", "(n+l) S_n = sum of S_s S_t over s+t = n-k");
    c_weighted->add_option("--k", k, "shift k >= 1");
    c_weighted->add_option("--l", l, "weight l >= 1");
    c_weighted->add_option("--initial", initial, "first k values, comma-separated");
    c_weighted->add_option("--degree", degree, "last index");
    c_weighted->add_flag("--strict", strict, "fail at the first non-integral term");
    auto* c_conv = csub("convolution", "convolution powers of the Catalan sequence");
    c_conv->add_option("--lambda", lambda, "power minus one");
    c_conv->add_option("--n", conv_n, "index");

    auto* verify = sub("verify", "run the acceptance checks up to --order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        cfg.format = parse_format(format);
        if (!mode_text.empty()) {
            try {
                cfg.mode = parse_mode(mode_text);
            } catch (const InvalidSpec&) {
                throw UsageError("mode must be A, B or AB, got '" + mode_text + "'");
            }
        }
        if (!out_path.empty()) cfg.out = out_path;
        cfg.use_cache = !no_cache;
        check_order(cfg.max_order);
        const Format f = cfg.format;
        bool ok = true;
        std::string text;

        if (*enumerate) {
            const std::size_t n = enum_n.value_or(cfg.max_order);
            text = cmd_enumerate(tableaux_for(n, cfg), n, f);
        } else if (*tableau) {
            text = cmd_tableau(tableaux_for(tab_n, cfg), tab_n, cfg.mode.value_or(TableauMode::a), f);
        } else if (*incidence) {
            text = cmd_incidence(tableaux_for(inc_n, cfg), inc_n, cfg.mode.value_or(TableauMode::a), f);
        } else if (*closure) {
            const IdentitySpec spec = IdentitySpec::parse(read_file(spec_file));
            const ClosureConfig cc{cfg.max_order, cfg.mode.value_or(TableauMode::ab), cfg.unicity, false};
            text = cmd_closure(tableaux_for(cfg.max_order, cfg), spec, cc, f);
        } else if (*classify) {
            text = cmd_classify(tableaux_for(cfg.max_order, cfg), cls_n, cls_i, cls_j, cfg.max_order, f);
        } else if (*skein_cmd) {
            text = !skein_word.empty() ? cmd_skein_word(skein_word, f)
                                       : cmd_skein_order(tableaux_for(cfg.max_order, cfg), cfg.max_order, f);
        } else if (*catalan_cmd) {
            if (*c_ballot) text = cmd_catalan_ballot(rows, f);
            else if (*c_general) text = cmd_catalan_general(arity, degree, f);
            else if (*c_mixed) text = cmd_catalan_mixed(parse_size_list(arities), degree, f);
            else if (*c_relative) text = cmd_catalan_relative(poly, parse_base(base), degree, f);
            else if (*c_weighted) text = cmd_catalan_weighted(k, l, parse_big_list(initial), degree, strict, f);
            else if (*c_conv) text = cmd_catalan_convolution(lambda, conv_n, f);
        } else if (*verify) {
            text = cmd_verify(tableaux_for(cfg.max_order, cfg), cfg.max_order, f, ok);
        }

        if (cfg.out) {
            std::ofstream file(*cfg.out);
            if (!file) throw UsageError("cannot write " + cfg.out->string());
            file << text;
        } else {
            out << text;
        }
        return ok ? 0 : 1;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace iterforge::cli
