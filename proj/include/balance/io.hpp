#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "balance/balancing.hpp"
#include "balance/divisor.hpp"
#include "balance/search.hpp"

namespace balance {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// .cplx: one simplex per line as whitespace-separated labels; '#' starts a
// comment; blank lines ignored; every line must have the same cardinality.

inline Complex parse_cplx(std::istream& in, const std::string& name) {
  std::vector<Multiset> simplices;
  std::string line;
  int lineno = 0, cardinality = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::vector<int> labels;
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
        labels.push_back(v);
      } catch (const std::exception&) {
        throw parse_error(name, lineno,
                          "expected a positive vertex label, got '" + tok + "'");
      }
    }
    if (labels.empty()) continue;
    if (cardinality == -1)
      cardinality = static_cast<int>(labels.size());
    else if (static_cast<int>(labels.size()) != cardinality)
      throw parse_error(name, lineno,
                        "simplex cardinality " + std::to_string(labels.size()) +
                            " differs from " + std::to_string(cardinality));
    simplices.push_back(Multiset(std::move(labels)));
  }
  if (cardinality == -1)
    throw parse_error(name, lineno, "no simplices in file");
  return Complex(cardinality - 1, std::move(simplices));
}

inline Complex parse_cplx_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path, 0, "cannot open file");
  return parse_cplx(in, path);
}

inline std::string to_cplx(const Complex& c) {
  std::string out;
  for (const auto& s : c.simplices()) {
    bool first = true;
    for (int v : s.expanded()) {
      if (!first) out += ' ';
      out += std::to_string(v);
      first = false;
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weighting text format: each line "<simplex labels> : <p>/<q>" (or integer).

inline Weighting parse_weights(std::istream& in, const std::string& name) {
  std::map<Multiset, Rat> weights;
  std::string line;
  int lineno = 0, cardinality = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw parse_error(name, lineno, "expected '<labels> : <weight>'");
    std::istringstream fields(line.substr(0, colon));
    std::vector<int> labels;
    int v = 0;
    while (fields >> v) {
      if (v < 1) throw parse_error(name, lineno, "labels must be positive");
      labels.push_back(v);
    }
    if (!fields.eof())
      throw parse_error(name, lineno, "malformed simplex labels");
    if (labels.empty()) throw parse_error(name, lineno, "empty simplex");
    if (cardinality == -1)
      cardinality = static_cast<int>(labels.size());
    else if (static_cast<int>(labels.size()) != cardinality)
      throw parse_error(name, lineno, "simplex cardinality mismatch");
    std::string text = line.substr(colon + 1);
    std::erase_if(text, [](unsigned char ch) { return std::isspace(ch); });
    Rat w;
    try {
      w = parse_rat(text);
    } catch (const domain_error& e) {
      throw parse_error(name, lineno, e.what());
    }
    if (!weights.emplace(Multiset(std::move(labels)), w).second)
      throw parse_error(name, lineno, "duplicate simplex");
  }
  if (cardinality == -1) throw parse_error(name, lineno, "no weights in file");
  std::vector<Multiset> simplices;
  for (const auto& [s, w] : weights) simplices.push_back(s);
  return weighting_from_map(Complex(cardinality - 1, std::move(simplices)),
                            weights);
}

inline Weighting parse_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path, 0, "cannot open file");
  return parse_weights(in, path);
}

inline std::string to_weights(const Weighting& w) {
  std::string out;
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    bool first = true;
    for (int v : w.complex.simplex(i).expanded()) {
      if (!first) out += ' ';
      out += std::to_string(v);
      first = false;
    }
    out += " : " + rat_string(w.weights[i]) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON forms. Rationals are always "p/q" strings, never floats.

inline json simplex_to_json(const Multiset& s) { return json(s.expanded()); }

inline json complex_to_json(const Complex& c) {
  json arr = json::array();
  for (const auto& s : c.simplices()) arr.push_back(simplex_to_json(s));
  return arr;
}

inline json space_to_json(const BalancingSpace& space) {
  json out;
  out["complex"] = complex_to_json(space.complex);
  out["dimension"] = space.dimension;
  json basis = json::array();
  for (Eigen::Index k = 0; k < space.basis.cols(); ++k) {
    json vec = json::array();
    for (Eigen::Index i = 0; i < space.basis.rows(); ++i)
      vec.push_back(rat_string(space.basis(i, k)));
    basis.push_back(std::move(vec));
  }
  out["basis"] = std::move(basis);
  return out;
}

inline std::string subset_key(const DivisorClass::Index& I) {
  std::string key;
  for (std::size_t i = 0; i < I.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(I[i]);
  }
  return key;
}

inline json divisor_to_json(const DivisorClass& d) {
  json out;
  out["n"] = d.n();
  out["H"] = d.h();
  json e = json::object();
  // (size, lex) key order for stable output
  for (const auto& I : divisor_index_sets(d.n()))
    if (long long v = d.coefficient(I); v != 0) e[subset_key(I)] = v;
  out["E"] = std::move(e);
  return out;
}

inline DivisorClass divisor_from_json(const json& j) {
  DivisorClass d(j.at("n").get<int>(), j.at("H").get<long long>());
  if (j.contains("E")) {
    for (const auto& [key, value] : j.at("E").items()) {
      DivisorClass::Index I;
      std::istringstream fields(key);
      std::string part;
      while (std::getline(fields, part, ',')) {
        std::size_t used = 0;
        int label = 0;
        try {
          label = std::stoi(part, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != part.size() || part.empty())
          throw domain_error("malformed E index key '" + key + "'");
        I.push_back(label);
      }
      d.set_coefficient(std::move(I), value.get<long long>());
    }
  }
  return d;
}

/// Human-readable class in the H/E_I basis, e.g. "3H - E1 - 2E46 - E146".
inline std::string divisor_to_text(const DivisorClass& d) {
  std::string out = std::to_string(d.h()) + "H";
  const bool compact = d.n() - 1 <= 9;
  for (const auto& I : divisor_index_sets(d.n())) {
    long long v = d.coefficient(I);
    if (v == 0) continue;
    out += v < 0 ? " - " : " + ";
    long long mag = std::llabs(v);
    if (mag != 1) out += std::to_string(mag);
    out += 'E';
    for (std::size_t i = 0; i < I.size(); ++i) {
      if (i && !compact) out += ',';
      out += std::to_string(I[i]);
    }
  }
  return out;
}

inline json weighting_to_json(const Weighting& w) {
  json out;
  out["complex"] = complex_to_json(w.complex);
  json weights = json::array();
  for (const Rat& x : w.weights) weights.push_back(rat_string(x));
  out["weights"] = std::move(weights);
  return out;
}

inline json class_report_json(const ClassificationEntry& entry) {
  json out;
  out["representative"] = complex_to_json(entry.cls.representative);
  out["support"] = support(entry.cls.representative).size();
  out["simplices"] = entry.cls.representative.size();
  out["labeled_count"] = entry.cls.labeled_count;
  out["dimension"] = entry.cls.dimension_check;
  json bal = json::array();
  for (const Rat& x : entry.cls.sample_balancing.weights)
    bal.push_back(rat_string(x));
  out["balancing"] = std::move(bal);
  out["nonsingular"] = entry.nonsingular_flag;
  out["minimal"] = entry.minimal_flag;
  if (entry.product_flag.has_value())
    out["product"] = *entry.product_flag;
  else
    out["product"] = nullptr;
  out["degree_ok"] = entry.degree_ok;
  out["certified_irreducible"] = entry.certified;
  out["divisor"] = divisor_to_json(entry.divisor);
  out["distinct_divisors"] = entry.distinct_divisors;
  return out;
}

inline json search_report_json(int n, int d, bool nonsingular, int n_points,
                               const std::vector<ClassificationEntry>& entries) {
  json out;
  out["ambient"] = {{"n", n}, {"d", d}, {"nonsingular", nonsingular}};
  out["n_points"] = n_points;
  json classes = json::array();
  long long total = 0;
  for (const auto& e : entries) {
    classes.push_back(class_report_json(e));
    total += e.cls.labeled_count;
  }
  out["classes"] = std::move(classes);
  out["total_labeled"] = total;
  return out;
}

}  // namespace balance
