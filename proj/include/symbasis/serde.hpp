#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <symbasis/exact_matrix.hpp>
#include <symbasis/labels.hpp>
#include <symbasis/polynomial.hpp>

namespace symbasis {

using json = nlohmann::json;

// ---- polynomials -----------------------------------------------------------
//
// A polynomial is a list of terms, each {"exps": {"1": 2, "3": 1}, "coef":
// "n" or "n/d"} with exact decimal integer strings. Term order follows the
// canonical monomial order, so serialization is deterministic.

inline json poly_to_json(const GradedPoly& f) {
    json terms = json::array();
    for (const auto& [m, c] : f.terms()) {
        json exps = json::object();
        for (const auto& [idx, e] : m.exponents()) exps[std::to_string(idx)] = e;
        terms.push_back({{"exps", std::move(exps)}, {"coef", rat_to_string(c)}});
    }
    return terms;
}

inline GradedPoly poly_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("polynomial JSON must be an array of terms");
    GradedPoly f;
    for (const auto& term : j) {
        std::map<int, int> exps;
        for (const auto& [key, value] : term.at("exps").items()) {
            int idx = 0;
            try {
                idx = std::stoi(key);
            } catch (const std::exception&) {
                throw parse_error("bad variable index '" + key + "'");
            }
            exps[idx] = value.get<int>();
        }
        f.add_term(Monomial::from_exponents(std::move(exps)),
                   rat_from_string(term.at("coef").get<std::string>()));
    }
    return f;
}

// ---- matrices ---------------------------------------------------------------

inline json matrix_to_json(const ExactMatrix& m) {
    json rows = json::array(), cols = json::array();
    for (const auto& l : m.row_labels()) rows.push_back(l.to_string());
    for (const auto& l : m.col_labels()) cols.push_back(l.to_string());
    json entries = json::array();
    for (int i = 0; i < m.row_count(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.col_count(); ++j) row.push_back(rat_to_string(m.at(i, j)));
        entries.push_back(std::move(row));
    }
    return {{"rows", std::move(rows)}, {"cols", std::move(cols)}, {"entries", std::move(entries)}};
}

inline ExactMatrix matrix_from_json(const json& j) {
    std::vector<BasisLabel> rows, cols;
    for (const auto& s : j.at("rows")) rows.push_back(BasisLabel::parse(s.get<std::string>()));
    for (const auto& s : j.at("cols")) cols.push_back(BasisLabel::parse(s.get<std::string>()));
    const auto& entries = j.at("entries");
    if (entries.size() != rows.size()) throw parse_error("matrix JSON: row count mismatch");
    ExactMatrix m(rows, cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (entries[i].size() != cols.size()) throw parse_error("matrix JSON: column count mismatch");
        for (size_t k = 0; k < cols.size(); ++k)
            m.at(static_cast<int>(i), static_cast<int>(k)) =
                rat_from_string(entries[i][k].get<std::string>());
    }
    return m;
}

// ---- files ------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

inline ExactMatrix load_matrix_file(const std::string& path) {
    return matrix_from_json(load_json_file(path));
}

// ---- flat renderings ----------------------------------------------------------

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

inline std::string matrix_to_csv(const ExactMatrix& m) {
    std::ostringstream out;
    const bool labeled = !m.row_labels().empty();
    if (labeled) {
        out << "";
        for (const auto& l : m.col_labels()) out << "," << csv_quote(l.to_string());
        out << "\n";
    }
    for (int i = 0; i < m.row_count(); ++i) {
        if (labeled) out << csv_quote(m.row_labels()[i].to_string()) << ",";
        for (int j = 0; j < m.col_count(); ++j) {
            if (j) out << ",";
            out << rat_to_string(m.at(i, j));
        }
        out << "\n";
    }
    return out.str();
}

/// Bordered markdown table with exponent-form labels, laid out like the
/// printed tables so the two can be diffed by eye.
inline std::string matrix_to_md(const ExactMatrix& m) {
    std::ostringstream out;
    out << "|  |";
    for (int j = 0; j < m.col_count(); ++j)
        out << " " << (m.col_labels().empty() ? std::to_string(j) : m.col_labels()[j].to_compact())
            << " |";
    out << "\n|---|";
    for (int j = 0; j < m.col_count(); ++j) out << "---|";
    out << "\n";
    for (int i = 0; i < m.row_count(); ++i) {
        out << "| "
            << (m.row_labels().empty() ? std::to_string(i) : m.row_labels()[i].to_compact()) << " |";
        for (int j = 0; j < m.col_count(); ++j) out << " " << rat_to_string(m.at(i, j)) << " |";
        out << "\n";
    }
    return out.str();
}

inline std::string poly_to_csv(const GradedPoly& f) {
    std::ostringstream out;
    out << "monomial,coefficient\n";
    for (const auto& [m, c] : f.terms())
        out << csv_quote(m.to_string()) << "," << rat_to_string(c) << "\n";
    return out.str();
}

} // namespace symbasis
