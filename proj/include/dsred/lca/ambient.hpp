#pragma once

// An ambient algebra: a finite set of generators with parity and conformal weight and a
// lambda-bracket table that is linear in the generators (a Lie conformal superalgebra).
// Module markers are even, weightless symbols that only ever occur as the rightmost
// letter of a word; each one carries a rule for its derivative.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dsred/error.hpp"
#include "dsred/lca/field.hpp"

namespace dsred {

struct GeneratorSymbol {
  std::string name;
  bool odd = false;
  Rational weight;
  bool marker = false;
  int charge = 0;
};

template <class C>
class Ambient {
 public:
  int add_generator(GeneratorSymbol g) {
    if (index_.count(g.name)) throw Error(ErrorCode::ConsistencyError, "duplicate generator " + g.name);
    index_[g.name] = int(gens_.size());
    gens_.push_back(std::move(g));
    for (auto& row : table_) row.resize(gens_.size());
    table_.emplace_back(gens_.size());
    marker_d_.resize(gens_.size());
    return int(gens_.size()) - 1;
  }

  int size() const { return int(gens_.size()); }
  const GeneratorSymbol& gen(int i) const { return gens_.at(i); }
  int find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
  }
  int index(const std::string& name) const {
    int i = find(name);
    if (i < 0) throw Error(ErrorCode::ConsistencyError, "unknown generator " + name);
    return i;
  }

  // Entries must be linear: single letters or the vacuum.
  void set_bracket(int a, int b, const LambdaPoly<C>& p) {
    for (auto& e : p.coeffs())
      for (auto& [w, c] : e.terms())
        if (w.size() > 1) throw Error(ErrorCode::Unsupported, "bracket table entries must be linear");
    table_.at(a).at(b) = p;
  }
  const LambdaPoly<C>& bracket(int a, int b) const {
    static const LambdaPoly<C> zero;
    auto& e = table_.at(a).at(b);
    return e ? *e : zero;
  }
  bool has_bracket(int a, int b) const { return table_.at(a).at(b).has_value(); }

  void set_marker_derivative(int g, const FieldExpr<C>& d) {
    if (!gens_.at(g).marker) throw Error(ErrorCode::ConsistencyError, gens_[g].name + " is not a marker");
    marker_d_[g] = d;
  }
  const FieldExpr<C>& marker_derivative(int g) const {
    if (!marker_d_.at(g)) throw Error(ErrorCode::ConsistencyError, "no derivative rule for " + gens_[g].name);
    return *marker_d_[g];
  }

 private:
  std::vector<GeneratorSymbol> gens_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<std::optional<LambdaPoly<C>>>> table_;
  std::vector<std::optional<FieldExpr<C>>> marker_d_;
};

}  // namespace dsred
