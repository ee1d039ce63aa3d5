#pragma once

// Single-entry corruptions of a certificate's witness data. Each mutant
// changes exactly one leaf: integers move by one, rationals by one, and a
// polynomial gains another copy of its leading term.

#include "amc/serialize.hpp"

#include <set>
#include <string>
#include <vector>

namespace amc::testing {

struct Mutant {
  std::string path;
  Json cert;
};

inline std::vector<Mutant> witness_mutants(const Json& cert) {
  const Ring R = ring_from_json(cert.at("ring"));
  const Ring A = cert.contains("coefficient_ring") ? ring_from_json(cert.at("coefficient_ring")) : R;
  static const std::set<std::string> poly_keys{"i2_basis", "poly", "parts", "form", "det"};
  static const std::set<std::string> coeff_ring_keys{"form", "det"};
  static const std::set<std::string> rat_keys{"minpoly", "basis_matrix", "scalar"};
  static const std::set<std::string> int_keys{"rank", "rows", "cols", "exponent", "known_before", "gb_pairs"};
  static const std::set<std::string> witness_roots{"i2_basis", "quadrics", "algebraic", "basis_matrix", "witnesses"};

  std::vector<Mutant> out;
  auto bump_poly = [](const std::string& text, const Ring& ring) {
    Poly p = parse_poly(text, ring);
    if (p.is_zero()) return Poly::variable(ring, 0).to_string();
    return (p + Poly::monomial(ring, p.lead().mono, p.lead().coeff)).to_string();
  };
  auto walk = [&](auto&& self, const Json& node, Json::json_pointer ptr, const std::string& key) -> void {
    if (node.is_object()) {
      for (const auto& [k, v] : node.items()) self(self, v, ptr / k, k);
      return;
    }
    if (node.is_array()) {
      for (std::size_t i = 0; i < node.size(); ++i) self(self, node[i], ptr / i, key);
      return;
    }
    Json replacement;
    if (poly_keys.count(key) && node.is_string())
      replacement = bump_poly(node.get<std::string>(), coeff_ring_keys.count(key) ? A : R);
    else if (rat_keys.count(key) && node.is_string())
      replacement = to_string(parse_rat(node.get<std::string>()) + Rat(1));
    else if (int_keys.count(key) && node.is_number_integer())
      replacement = node.get<long>() + 1;
    else
      return;
    Mutant m{ptr.to_string(), cert};
    m.cert[ptr] = replacement;
    out.push_back(std::move(m));
  };
  for (const auto& root : witness_roots)
    if (cert.contains(root)) walk(walk, cert.at(root), Json::json_pointer("/" + root), root);
  return out;
}

}  // namespace amc::testing
