#pragma once

#include "iterforge/catalan.hpp"
#include "iterforge/tableaux.hpp"
#include "iterforge/term.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

namespace iterforge {

inline constexpr int tableau_cache_version = 1;

/// $ITERFORGE_CACHE, else $XDG_CACHE_HOME/iterforge, else ~/.cache/iterforge.
inline std::optional<std::filesystem::path> default_cache_dir() {
    if (const char* dir = std::getenv("ITERFORGE_CACHE"); dir && *dir) return std::filesystem::path(dir);
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "iterforge";
    if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "iterforge";
    return std::nullopt;
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, std::size_t order) {
    return dir / ("tableaux-v" + std::to_string(tableau_cache_version) + "-order-" + std::to_string(order) + ".json");
}

namespace detail {

struct CachedLevel {
    Catalog catalog;
    TableauA a;
    TableauB b;
};

inline nlohmann::json level_to_json(const Catalog& c, const TableauA& a, const TableauB& b) {
    return {{"version", tableau_cache_version},
            {"order", c.order()},
            {"words", c.words()},
            {"a_rows", a.rows},
            {"b_rows", {b.rows[0], b.rows[1]}}};
}

/// Reads one level and checks its shape against the previous catalog; any
/// mismatch makes the file count as absent.
inline std::optional<CachedLevel> read_level(const std::filesystem::path& file, const Catalog& previous) {
    std::ifstream in(file);
    if (!in) return std::nullopt;
    try {
        const auto j = nlohmann::json::parse(in);
        const std::size_t n = previous.order() + 1;
        if (j.at("version").get<int>() != tableau_cache_version || j.at("order").get<std::size_t>() != n) {
            return std::nullopt;
        }
        const auto words = j.at("words").get<std::vector<std::string>>();
        if (words.size() != catalan(n)) return std::nullopt;
        CachedLevel level{Catalog(n), {n, {}}, {}};
        for (const auto& w : words) {
            const Term t = parse_word(w);
            if (t.order() != n || level.catalog.intern(t) != level.catalog.size()) return std::nullopt;
        }
        level.a.rows = j.at("a_rows").get<std::vector<std::vector<Label>>>();
        const auto b_rows = j.at("b_rows").get<std::vector<std::vector<Label>>>();
        if (level.a.rows.size() != n || b_rows.size() != 2) return std::nullopt;
        level.b.order = n;
        level.b.rows = {b_rows[0], b_rows[1]};
        auto shape_ok = [&](const std::vector<Label>& row) {
            if (row.size() != previous.size()) return false;
            for (Label l : row) {
                if (l < 1 || l > words.size()) return false;
            }
            return true;
        };
        for (const auto& row : level.a.rows) {
            if (!shape_ok(row)) return std::nullopt;
        }
        if (!shape_ok(level.b.rows[0]) || !shape_ok(level.b.rows[1])) return std::nullopt;
        Label highest = 0;
        for (const auto& row : level.a.rows) {
            for (Label l : row) {
                if (l > highest + 1) return std::nullopt;
                if (l == highest + 1) ++highest;
            }
        }
        if (highest != words.size()) return std::nullopt;
        return level;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline void write_level(const std::filesystem::path& file, const nlohmann::json& j) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    if (ec) return;
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << j.dump();
        if (!out) return;
    }
    std::filesystem::rename(tmp, file, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

} // namespace detail

/**
 * Builds the tableau set up to max_order, reading levels from the cache
 * directory where present and valid and writing the ones it had to compute.
 * Without a directory this is plain construction.
 */
inline TableauSet load_tableaux(std::size_t max_order, const std::optional<std::filesystem::path>& dir) {
    if (!dir) return TableauSet(max_order);
    std::vector<Catalog> catalogs;
    std::vector<TableauA> as;
    std::vector<TableauB> bs;
    Catalog zero(0);
    zero.intern(Term::leaf());
    catalogs.push_back(std::move(zero));
    as.emplace_back();
    bs.emplace_back();
    for (std::size_t n = 1; n <= max_order; ++n) {
        const Catalog& prev = catalogs.back();
        const auto file = cache_file(*dir, n);
        if (auto level = detail::read_level(file, prev)) {
            catalogs.push_back(std::move(level->catalog));
            as.push_back(std::move(level->a));
            bs.push_back(std::move(level->b));
            continue;
        }
        auto [catalog, a] = build_level(prev);
        TableauB b = build_b(prev, catalog);
        detail::write_level(file, detail::level_to_json(catalog, a, b));
        catalogs.push_back(std::move(catalog));
        as.push_back(std::move(a));
        bs.push_back(std::move(b));
    }
    return TableauSet::from_levels(std::move(catalogs), std::move(as), std::move(bs));
}

} // namespace iterforge
