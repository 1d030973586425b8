#pragma once

#include "iterforge/incidence.hpp"
#include "iterforge/semantics.hpp"
#include "iterforge/tableaux.hpp"
#include "iterforge/term.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace iterforge {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Terms

/// "x" for the variable, ["V", left, right] otherwise.
inline Json term_to_json(const Term& t) {
    if (t.is_leaf()) return "x";
    return Json::array({"V", term_to_json(t.left()), term_to_json(t.right())});
}

inline Term term_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "x") throw MalformedWord("leaf must be \"x\"");
        return Term::leaf();
    }
    if (!j.is_array() || j.size() != 3 || j[0] != "V") throw MalformedWord("node must be [\"V\", left, right]");
    return Term::node(term_from_json(j[1]), term_from_json(j[2]));
}

// ---------------------------------------------------------------------------
// Catalogs and grids

inline std::string catalog_text(const Catalog& c) {
    std::ostringstream out;
    for (Label l = 1; l <= c.size(); ++l) out << l << ' ' << c.word(l) << '\n';
    return out.str();
}

inline std::string catalog_csv(const Catalog& c) {
    std::ostringstream out;
    out << "label,word\n";
    for (Label l = 1; l <= c.size(); ++l) out << l << ',' << c.word(l) << '\n';
    return out.str();
}

inline Json catalog_json(const Catalog& c) {
    Json rows = Json::array();
    for (Label l = 1; l <= c.size(); ++l) {
        rows.push_back({{"label", l}, {"word", c.word(l)}, {"term", term_to_json(c.term(l))}});
    }
    return {{"order", c.order()}, {"iterates", rows}};
}

using Grid = std::vector<std::vector<Label>>;

inline std::string grid_text(const Grid& rows) {
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
        out << '\n';
    }
    return out.str();
}

inline std::string grid_csv(const Grid& rows) {
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
    return out.str();
}

inline Json grid_json(std::size_t order, const std::string& which, const Grid& rows) {
    return {{"order", order}, {"tableau", which}, {"rows", rows}};
}

inline Grid grid_from_json(const Json& j) { return j.at("rows").get<Grid>(); }

inline Grid grid_from_text(const std::string& text) {
    Grid rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::vector<Label> row;
        Label l = 0;
        while (fields >> l) row.push_back(l);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

/// A_n rows, B_n rows, or A_n followed by B_n.
inline Grid tableau_grid(const TableauSet& set, std::size_t n, TableauMode mode) { return tableau_lines(set, n, mode); }

// ---------------------------------------------------------------------------
// Incidence matrices

inline std::vector<std::vector<int>> matrix_rows(const IncidenceMatrix& m) {
    std::vector<std::vector<int>> rows(m.size(), std::vector<int>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) rows[i][j] = m.bits.get(i, j) ? 1 : 0;
    }
    return rows;
}

inline Json incidence_json(const IncidenceMatrix& m) {
    std::vector<std::size_t> sums;
    for (Label i = 1; i <= m.size(); ++i) sums.push_back(m.row_sum(i));
    return {{"order", m.order},
            {"mode", to_string(m.mode)},
            {"rows", matrix_rows(m)},
            {"row_sums", sums},
            {"I_n", to_string(count_reducible(m))},
            {"unordered_reducible", to_string(count_reducible_unordered(m))}};
}

inline IncidenceMatrix incidence_from_json(const Json& j) {
    const auto rows = j.at("rows").get<std::vector<std::vector<int>>>();
    IncidenceMatrix m{j.at("order").get<std::size_t>(), parse_mode(j.at("mode").get<std::string>()), BitMatrix(rows.size())};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw InvalidSpec("incidence rows must be square");
        for (std::size_t k = 0; k < rows[i].size(); ++k) {
            if (rows[i][k]) m.bits.set(i, k);
        }
    }
    return m;
}

inline std::string incidence_text(const IncidenceMatrix& m) {
    std::ostringstream out;
    for (Label i = 1; i <= m.size(); ++i) {
        for (Label j = 1; j <= m.size(); ++j) out << (j > 1 ? " " : "") << m.delta(i, j);
        out << "  | " << m.row_sum(i) << '\n';
    }
    out << "I_" << m.order << " = " << count_reducible(m) << '\n';
    return out.str();
}

/// Matrix rows followed by the footer "I_n,value".
inline std::string incidence_csv(const IncidenceMatrix& m) {
    std::ostringstream out;
    for (Label i = 1; i <= m.size(); ++i) {
        for (Label j = 1; j <= m.size(); ++j) out << (j > 1 ? "," : "") << m.delta(i, j);
        out << '\n';
    }
    out << "I_" << m.order << ',' << count_reducible(m) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Closures

inline Json derivation_json(const Derivation& d) {
    Json source = {{"order", d.source_order}, {"pair", {d.source_a, d.source_b}}};
    if (d.rule == Rule::a_line || d.rule == Rule::b_row) source["line"] = d.line;
    return {{"order", d.order}, {"merged", {d.a, d.b}}, {"rule", to_string(d.rule)}, {"source", source}};
}

inline Json chain_json(const std::vector<ChainStep>& chain) {
    Json out = Json::array();
    for (const auto& s : chain) out.push_back({{"order", s.order}, {"pair", {s.a, s.b}}});
    return out;
}

inline Json reduction_json(const Reduction& r) {
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses) witnesses.push_back(chain_json(w.chain));
    return {{"merge", derivation_json(r.merge)}, {"witnesses", witnesses}};
}

inline Json spec_json(const IdentitySpec& spec) {
    Json pairs = Json::array();
    for (auto [i, j] : spec.pairs) pairs.push_back({i, j});
    return {{"order", spec.order}, {"pairs", pairs}};
}

inline Json closure_json(const ClosureState& st) {
    Json per_order = Json::object();
    for (std::size_t m = 1; m <= st.max_order(); ++m) {
        per_order[std::to_string(m)] = {
            {"h", st.classnumber(m)}, {"classes", st.classes(m)}, {"singletons", st.singletons(m)}};
    }
    Json log = Json::array();
    for (const auto& d : st.log()) log.push_back(derivation_json(d));
    Json out = {{"spec", spec_json(st.spec())},
                {"config",
                 {{"max_order", st.max_order()},
                  {"mode", to_string(st.config().mode)},
                  {"unicity", st.config().unicity}}},
                {"per_order", per_order},
                {"derivations", log}};
    if (st.reduction()) out["reduction"] = reduction_json(*st.reduction());
    return out;
}

inline std::string classes_text(const std::vector<std::vector<Label>>& classes) {
    std::ostringstream out;
    bool first = true;
    for (const auto& c : classes) {
        out << (first ? "" : " ") << '{';
        for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
        out << '}';
        first = false;
    }
    return out.str();
}

inline std::string closure_text(const ClosureState& st) {
    std::ostringstream out;
    out << "identities at order " << st.spec().order << ':';
    for (auto [i, j] : st.spec().pairs) out << ' ' << i << '=' << j;
    out << "\nmode " << to_string(st.config().mode) << ", unicity " << (st.config().unicity ? "on" : "off")
        << ", max order " << st.max_order() << '\n';
    const std::size_t from = st.config().unicity ? 1 : st.spec().order;
    for (std::size_t m = from; m <= st.max_order(); ++m) {
        out << "order " << m << ": h=" << st.classnumber(m) << " singletons=" << st.singletons(m) << '\n';
        out << "  " << classes_text(st.classes(m)) << '\n';
    }
    out << "derivations: " << st.log().size() << '\n';
    if (st.reduction()) {
        const auto& d = st.reduction()->merge;
        out << "first merge below order " << st.spec().order << ": " << d.a << '~' << d.b << " at order " << d.order
            << " (" << to_string(d.rule) << ")\n";
    }
    return out.str();
}

inline std::string closure_csv(const ClosureState& st) {
    std::ostringstream out;
    out << "order,h,singletons\n";
    for (std::size_t m = 1; m <= st.max_order(); ++m) out << m << ',' << st.classnumber(m) << ',' << st.singletons(m) << '\n';
    return out.str();
}

inline std::string chain_text(const std::vector<ChainStep>& chain) {
    std::ostringstream out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        out << (i ? " -> " : "") << chain[i].a << '~' << chain[i].b << " (order " << chain[i].order << ')';
    }
    return out.str();
}

inline Json classification_json(std::size_t n, std::pair<Label, Label> pair, const Classification& c) {
    Json out = {{"order", n}, {"pair", {pair.first, pair.second}}, {"verdict", c.to_string()}, {"max_order", c.max_order}};
    if (c.reduction) out["reduction"] = reduction_json(*c.reduction);
    return out;
}

inline std::string classification_text(const Classification& c) {
    std::ostringstream out;
    out << c.to_string() << '\n';
    if (c.reduction) {
        const auto& d = c.reduction->merge;
        out << "first lower merge: " << d.a << '~' << d.b << " at order " << d.order << " (" << to_string(d.rule)
            << ")\n";
        for (const auto& w : c.reduction->witnesses) out << "witness: " << chain_text(w.chain) << '\n';
    }
    return out.str();
}

} // namespace iterforge
