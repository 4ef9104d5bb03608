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
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pim/error.hpp"

namespace pim {

// Largest option universe the configuration-space algebra supports.
inline constexpr std::size_t kMaxOptions = 24;

// A set of options, one bit per option index of a Universe. Used both for
// configurations (the selected options) and for taint sets.
class OptionSet {
 public:
  constexpr OptionSet() = default;
  constexpr explicit OptionSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr OptionSet single(std::size_t index) {
    return OptionSet(std::uint32_t{1} << index);
  }
  static constexpr OptionSet all(std::size_t count) {
    return OptionSet(count >= 32 ? ~std::uint32_t{0}
                                 : (std::uint32_t{1} << count) - 1);
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t index) const {
    return (bits_ >> index) & 1U;
  }
  constexpr bool includes(OptionSet other) const {
    return (bits_ & other.bits_) == other.bits_;
  }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(bits_));
  }

  constexpr OptionSet with(std::size_t index) const {
    return OptionSet(bits_ | (std::uint32_t{1} << index));
  }
  constexpr OptionSet without(std::size_t index) const {
    return OptionSet(bits_ & ~(std::uint32_t{1} << index));
  }

  constexpr OptionSet operator|(OptionSet o) const {
    return OptionSet(bits_ | o.bits_);
  }
  constexpr OptionSet operator&(OptionSet o) const {
    return OptionSet(bits_ & o.bits_);
  }
  constexpr OptionSet operator-(OptionSet o) const {
    return OptionSet(bits_ & ~o.bits_);
  }
  constexpr OptionSet& operator|=(OptionSet o) {
    bits_ |= o.bits_;
    return *this;
  }

  // Member indices in increasing order.
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

  constexpr auto operator<=>(const OptionSet&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

using Config = OptionSet;

// Calls fn(subset) for every subset of mask, in increasing numeric order.
template <class Fn>
void for_each_subset(OptionSet mask, Fn&& fn) {
  const std::uint32_t m = mask.bits();
  std::uint32_t sub = 0;
  while (true) {
    fn(OptionSet(sub));
    if (sub == m) break;
    sub = (sub - m) & m;
  }
}

// Ordering used for model terms: smaller sets first, then lexicographic by
// option index.
struct TermOrder {
  bool operator()(OptionSet a, OptionSet b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    const auto ia = a.indices();
    const auto ib = b.indices();
    return ia < ib;
  }
};

// The ordered (lexicographic) set of option names of a program.
class Universe {
 public:
  Universe() = default;
  explicit Universe(std::vector<std::string> names) : names_(std::move(names)) {
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
    if (names_.size() > kMaxOptions) {
      throw UniverseTooLarge("option universe has " +
                             std::to_string(names_.size()) +
                             " options; at most " +
                             std::to_string(kMaxOptions) + " are supported");
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t index) const { return names_.at(index); }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error("unknown option '" + std::string(name) + "'");
  }

  OptionSet everything() const { return OptionSet::all(size()); }
  std::uint64_t config_count() const { return std::uint64_t{1} << size(); }

  // "A,C" style, options in universe order. Empty set renders as "".
  std::string join(OptionSet set, std::string_view sep = ",") const {
    std::string out;
    for (auto i : set.indices()) {
      if (!out.empty()) out += sep;
      out += names_.at(i);
    }
    return out;
  }

  // Braced form used in reports, e.g. "{A,C}".
  std::string braced(OptionSet set) const { return "{" + join(set) + "}"; }

  // Parses a comma-separated option list. Whitespace around names is ignored.
  OptionSet parse_list(std::string_view text) const {
    OptionSet out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      auto item = text.substr(pos, comma - pos);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      if (!item.empty()) out = out.with(index(item));
      pos = comma + 1;
    }
    return out;
  }

  // One character per option in universe order: '1' selected, '0' not.
  std::string bitstring(OptionSet set) const {
    std::string out(size(), '0');
    for (std::size_t i = 0; i < size(); ++i) {
      if (set.contains(i)) out[i] = '1';
    }
    return out;
  }

  OptionSet parse_bitstring(std::string_view text) const {
    if (text.size() != size()) {
      throw Error("config bitstring '" + std::string(text) + "' has length " +
                  std::to_string(text.size()) + ", expected " +
                  std::to_string(size()));
    }
    OptionSet out;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') {
        out = out.with(i);
      } else if (text[i] != '0') {
        throw Error("bad character in config bitstring '" + std::string(text) +
                    "'");
      }
    }
    return out;
  }

  bool operator==(const Universe&) const = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace pim

template <>
struct std::hash<pim::OptionSet> {
  std::size_t operator()(pim::OptionSet s) const noexcept {
    return std::hash<std::uint32_t>{}(s.bits());
  }
};
