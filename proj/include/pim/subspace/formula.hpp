// Copyright 2026 The pimkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pim/error.hpp"
#include "pim/options.hpp"

namespace pim {

// Immutable propositional formula over option literals, kept in negation
// normal form. Nodes are shared, so copies are cheap.
class Formula {
 public:
  enum class Kind : std::uint8_t { kTrue, kFalse, kLiteral, kAnd, kOr };

  Formula() : Formula(top()) {}

  static Formula top() {
    static const Formula f(make_leaf(Kind::kTrue, 0, true));
    return f;
  }
  static Formula bottom() {
    static const Formula f(make_leaf(Kind::kFalse, 0, true));
    return f;
  }
  static Formula literal(std::size_t var, bool positive) {
    return Formula(make_leaf(Kind::kLiteral, var, positive));
  }

  // Conjunction of one literal per option in `vars`, positive where the
  // option is in `values`.
  static Formula cube(OptionSet vars, OptionSet values) {
    std::vector<Formula> lits;
    for (auto i : vars.indices()) lits.push_back(literal(i, values.contains(i)));
    return conjunction(std::move(lits));
  }

  static Formula conjunction(std::vector<Formula> parts) {
    return combine(Kind::kAnd, std::move(parts));
  }
  static Formula disjunction(std::vector<Formula> parts) {
    return combine(Kind::kOr, std::move(parts));
  }

  friend Formula operator&(const Formula& a, const Formula& b) {
    return conjunction({a, b});
  }
  friend Formula operator|(const Formula& a, const Formula& b) {
    return disjunction({a, b});
  }
  // Negation, pushed down to the literals.
  friend Formula operator!(const Formula& f) { return f.negated(); }

  Kind kind() const { return node_->kind; }
  std::size_t var() const { return node_->var; }
  bool positive() const { return node_->positive; }
  const std::vector<Formula>& children() const { return node_->children; }
  bool is_true() const { return kind() == Kind::kTrue; }
  bool is_false() const { return kind() == Kind::kFalse; }

  // Options mentioned anywhere in the formula.
  OptionSet support() const { return node_->support; }

  // Structural identity key; equal keys imply equal formulas.
  const std::string& key() const { return node_->key; }

  bool eval(OptionSet assignment) const { return eval_node(*node_, assignment); }

  // Complete satisfiability check by backtracking over the support.
  bool satisfiable() const { return find_model(OptionSet{}).has_value(); }

  // A satisfying assignment. Options outside the support stay deselected;
  // `preferred` gives the value tried first for each support option, and
  // the value of support options the formula does not care about.
  std::optional<OptionSet> find_model(OptionSet preferred) const {
    if (is_false()) return std::nullopt;
    const auto vars = support().indices();
    OptionSet assigned;
    OptionSet values;
    if (!search(vars, 0, preferred, assigned, values)) return std::nullopt;
    return values;
  }

  // Seeded choice among models.
  std::optional<OptionSet> find_model_seeded(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    const auto mask = static_cast<std::uint32_t>(rng());
    return find_model(OptionSet(mask) & support());
  }

  // Equivalent formula in canonical minimal sum-of-products form over the
  // options the formula actually depends on. Formulas depending on more than
  // kMaxSimplifyVars options are returned unchanged.
  Formula simplified() const;

  std::string to_string(const Universe& universe) const {
    std::string out;
    print(*node_, universe, Kind::kTrue, out);
    return out;
  }

  // Parses the textual form produced by to_string: `!`, `&`, `|`,
  // parentheses, `true`, `false` and option names.
  static Formula parse(std::string_view text, const Universe& universe);

  static constexpr std::size_t kMaxSimplifyVars = 12;

 private:
  struct Node {
    Kind kind = Kind::kTrue;
    std::size_t var = 0;
    bool positive = true;
    std::vector<Formula> children;
    OptionSet support;
    std::string key;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<const Node> make_leaf(Kind kind, std::size_t var,
                                               bool positive) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->var = var;
    n->positive = positive;
    switch (kind) {
      case Kind::kTrue:
        n->key = "T";
        break;
      case Kind::kFalse:
        n->key = "F";
        break;
      default:
        n->support = OptionSet::single(var);
        n->key = (positive ? "+" : "-") + std::to_string(var);
        break;
    }
    return n;
  }

  static Formula combine(Kind kind, std::vector<Formula> parts) {
    const Kind absorbing = kind == Kind::kAnd ? Kind::kFalse : Kind::kTrue;
    const Kind neutral = kind == Kind::kAnd ? Kind::kTrue : Kind::kFalse;
    std::vector<Formula> flat;
    for (auto& p : parts) {
      if (p.kind() == absorbing) return p;
      if (p.kind() == neutral) continue;
      if (p.kind() == kind) {
        for (const auto& c : p.children()) flat.push_back(c);
      } else {
        flat.push_back(std::move(p));
      }
    }
    std::sort(flat.begin(), flat.end(),
              [](const Formula& a, const Formula& b) { return a.key() < b.key(); });
    flat.erase(std::unique(flat.begin(), flat.end(),
                           [](const Formula& a, const Formula& b) {
                             return a.key() == b.key();
                           }),
               flat.end());
    // x and !x side by side.
    OptionSet pos;
    OptionSet neg;
    for (const auto& f : flat) {
      if (f.kind() != Kind::kLiteral) continue;
      if (f.positive()) {
        pos = pos.with(f.var());
      } else {
        neg = neg.with(f.var());
      }
    }
    if (!(pos & neg).empty()) return kind == Kind::kAnd ? bottom() : top();
    if (flat.empty()) return kind == Kind::kAnd ? top() : bottom();
    if (flat.size() == 1) return flat.front();

    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->key = kind == Kind::kAnd ? "&(" : "|(";
    for (std::size_t i = 0; i < flat.size(); ++i) {
      n->support |= flat[i].support();
      if (i) n->key += ',';
      n->key += flat[i].key();
    }
    n->key += ')';
    n->children = std::move(flat);
    return Formula(std::move(n));
  }

  Formula negated() const {
    switch (kind()) {
      case Kind::kTrue:
        return bottom();
      case Kind::kFalse:
        return top();
      case Kind::kLiteral:
        return literal(var(), !positive());
      case Kind::kAnd:
      case Kind::kOr: {
        std::vector<Formula> parts;
        parts.reserve(children().size());
        for (const auto& c : children()) parts.push_back(c.negated());
        return combine(kind() == Kind::kAnd ? Kind::kOr : Kind::kAnd,
                       std::move(parts));
      }
    }
    return top();
  }

  static bool eval_node(const Node& n, OptionSet a) {
    switch (n.kind) {
      case Kind::kTrue:
        return true;
      case Kind::kFalse:
        return false;
      case Kind::kLiteral:
        return a.contains(n.var) == n.positive;
      case Kind::kAnd:
        for (const auto& c : n.children) {
          if (!eval_node(*c.node_, a)) return false;
        }
        return true;
      case Kind::kOr:
        for (const auto& c : n.children) {
          if (eval_node(*c.node_, a)) return true;
        }
        return false;
    }
    return false;
  }

  enum class Tri : std::uint8_t { kFalse, kTrue, kUnknown };

  static Tri eval_partial(const Node& n, OptionSet assigned, OptionSet values) {
    switch (n.kind) {
      case Kind::kTrue:
        return Tri::kTrue;
      case Kind::kFalse:
        return Tri::kFalse;
      case Kind::kLiteral:
        if (!assigned.contains(n.var)) return Tri::kUnknown;
        return values.contains(n.var) == n.positive ? Tri::kTrue : Tri::kFalse;
      case Kind::kAnd: {
        Tri r = Tri::kTrue;
        for (const auto& c : n.children) {
          const Tri t = eval_partial(*c.node_, assigned, values);
          if (t == Tri::kFalse) return Tri::kFalse;
          if (t == Tri::kUnknown) r = Tri::kUnknown;
        }
        return r;
      }
      case Kind::kOr: {
        Tri r = Tri::kFalse;
        for (const auto& c : n.children) {
          const Tri t = eval_partial(*c.node_, assigned, values);
          if (t == Tri::kTrue) return Tri::kTrue;
          if (t == Tri::kUnknown) r = Tri::kUnknown;
        }
        return r;
      }
    }
    return Tri::kUnknown;
  }

  bool search(const std::vector<std::size_t>& vars, std::size_t depth,
              OptionSet preferred, OptionSet& assigned,
              OptionSet& values) const {
    const Tri t = eval_partial(*node_, assigned, values);
    if (t == Tri::kFalse) return false;
    if (t == Tri::kTrue) {
      for (std::size_t i = depth; i < vars.size(); ++i) {
        if (preferred.contains(vars[i])) values = values.with(vars[i]);
      }
      return true;
    }
    const std::size_t v = vars[depth];
    const bool first = preferred.contains(v);
    for (bool value : {first, !first}) {
      assigned = assigned.with(v);
      values = value ? values.with(v) : values.without(v);
      if (search(vars, depth + 1, preferred, assigned, values)) return true;
    }
    assigned = assigned.without(v);
    values = values.without(v);
    return false;
  }

  static void print(const Node& n, const Universe& u, Kind parent,
                    std::string& out) {
    switch (n.kind) {
      case Kind::kTrue:
        out += "true";
        return;
      case Kind::kFalse:
        out += "false";
        return;
      case Kind::kLiteral:
        if (!n.positive) out += '!';
        out += n.var < u.size() ? u.name(n.var) : "x" + std::to_string(n.var);
        return;
      case Kind::kAnd:
      case Kind::kOr: {
        const bool parens = parent == Kind::kAnd || parent == Kind::kOr;
        if (parens) out += '(';
        const char* sep = n.kind == Kind::kAnd ? " & " : " | ";
        // Literals first, in option order, then compound parts.
        std::vector<const Node*> order;
        for (const auto& c : n.children) order.push_back(c.node_.get());
        std::stable_sort(order.begin(), order.end(),
                         [](const Node* a, const Node* b) {
                           const bool la = a->kind == Kind::kLiteral;
                           const bool lb = b->kind == Kind::kLiteral;
                           if (la != lb) return la;
                           if (la) return a->var < b->var;
                           return false;
                         });
        for (std::size_t i = 0; i < order.size(); ++i) {
          if (i) out += sep;
          print(*order[i], u, n.kind, out);
        }
        if (parens) out += ')';
        return;
      }
    }
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

// Prime implicant over local variable indices: bits in `dont_care` are free.
struct Implicant {
  std::uint32_t value = 0;
  std::uint32_t dont_care = 0;
  bool covers(std::uint32_t minterm) const {
    return (minterm & ~dont_care) == value;
  }
  auto operator<=>(const Implicant&) const = default;
};

inline std::vector<Implicant> prime_implicants(
    const std::vector<std::uint32_t>& minterms) {
  std::set<Implicant> current;
  for (auto m : minterms) current.insert({m, 0});
  std::vector<Implicant> primes;
  while (!current.empty()) {
    std::set<Implicant> next;
    std::set<Implicant> used;
    const std::vector<Implicant> items(current.begin(), current.end());
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        if (items[i].dont_care != items[j].dont_care) continue;
        const std::uint32_t diff = items[i].value ^ items[j].value;
        if (std::popcount(diff) != 1) continue;
        next.insert({items[i].value & ~diff, items[i].dont_care | diff});
        used.insert(items[i]);
        used.insert(items[j]);
      }
    }
    for (const auto& it : items) {
      if (!used.count(it)) primes.push_back(it);
    }
    current = std::move(next);
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

// Deterministic cover: essential primes, then greedy by coverage.
inline std::vector<Implicant> select_cover(
    const std::vector<Implicant>& primes,
    const std::vector<std::uint32_t>& minterms) {
  std::vector<Implicant> chosen;
  std::set<std::uint32_t> uncovered(minterms.begin(), minterms.end());
  auto take = [&](const Implicant& p) {
    chosen.push_back(p);
    for (auto it = uncovered.begin(); it != uncovered.end();) {
      it = p.covers(*it) ? uncovered.erase(it) : std::next(it);
    }
  };
  for (auto m : minterms) {
    if (!uncovered.count(m)) continue;
    const Implicant* only = nullptr;
    int count = 0;
    for (const auto& p : primes) {
      if (p.covers(m)) {
        ++count;
        only = &p;
      }
    }
    if (count == 1) take(*only);
  }
  while (!uncovered.empty()) {
    const Implicant* best = nullptr;
    std::size_t best_count = 0;
    for (const auto& p : primes) {
      std::size_t c = 0;
      for (auto m : uncovered) c += p.covers(m) ? 1 : 0;
      if (c > best_count ||
          (c == best_count && c > 0 && best &&
           std::popcount(p.dont_care) > std::popcount(best->dont_care))) {
        best = &p;
        best_count = c;
      }
    }
    take(*best);
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const Implicant& a, const Implicant& b) {
              const int la = -std::popcount(a.dont_care);
              const int lb = -std::popcount(b.dont_care);
              if (la != lb) return la < lb;
              return a < b;
            });
  return chosen;
}

}  // namespace detail

inline Formula Formula::simplified() const {
  if (kind() != Kind::kAnd && kind() != Kind::kOr) return *this;
  const auto vars = support().indices();
  if (vars.size() > kMaxSimplifyVars) return *this;

  const std::size_t k = vars.size();
  auto scatter = [&](std::uint32_t local) {
    OptionSet a;
    for (std::size_t i = 0; i < k; ++i) {
      if ((local >> i) & 1U) a = a.with(vars[i]);
    }
    return a;
  };
  std::vector<bool> table(std::size_t{1} << k);
  for (std::uint32_t m = 0; m < table.size(); ++m) table[m] = eval(scatter(m));

  // Keep only the variables the function depends on.
  std::vector<std::size_t> essential;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::uint32_t m = 0; m < table.size(); ++m) {
      if (table[m] != table[m ^ (1U << i)]) {
        essential.push_back(i);
        break;
      }
    }
  }
  std::vector<std::uint32_t> minterms;
  const std::size_t e = essential.size();
  for (std::uint32_t m = 0; m < (1U << e); ++m) {
    std::uint32_t full = 0;
    for (std::size_t i = 0; i < e; ++i) {
      if ((m >> i) & 1U) full |= 1U << essential[i];
    }
    if (table[full]) minterms.push_back(m);
  }
  if (minterms.empty()) return bottom();
  if (minterms.size() == (std::size_t{1} << e)) return top();

  std::vector<Formula> terms;
  for (const auto& imp : detail::select_cover(detail::prime_implicants(minterms),
                                              minterms)) {
    std::vector<Formula> lits;
    for (std::size_t i = 0; i < e; ++i) {
      if ((imp.dont_care >> i) & 1U) continue;
      lits.push_back(literal(vars[essential[i]], (imp.value >> i) & 1U));
    }
    terms.push_back(conjunction(std::move(lits)));
  }
  return disjunction(std::move(terms));
}

namespace detail {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const Universe& u) : text_(text), u_(u) {}

  Formula parse() {
    Formula f = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (accept('|')) parts.push_back(parse_and());
    return Formula::disjunction(std::move(parts));
  }
  Formula parse_and() {
    std::vector<Formula> parts{parse_unary()};
    while (accept('&')) parts.push_back(parse_unary());
    return Formula::conjunction(std::move(parts));
  }
  Formula parse_unary() {
    if (accept('!')) return !parse_unary();
    if (accept('(')) {
      Formula f = parse_or();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected option name");
    const auto word = text_.substr(start, pos_ - start);
    if (word == "true") return Formula::top();
    if (word == "false") return Formula::bottom();
    const auto idx = u_.find(word);
    if (!idx) fail("unknown option '" + std::string(word) + "'");
    return Formula::literal(*idx, true);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("formula '" + std::string(text_) + "' at offset " +
                std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  const Universe& u_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula Formula::parse(std::string_view text, const Universe& universe) {
  return detail::FormulaParser(text, universe).parse();
}

}  // namespace pim
