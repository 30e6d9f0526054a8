// Copyright 2026 The IIM Hardening Authors.
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

// The `.idr` text format.
//
//   # comment
//   entities a:4 b:3          (optional; must precede every IDR line)
//   a1 <- b1 b2
//   b1 <- a1 a3 + a2
//
// Without the header the universe is a1..a<max a index>, b1..b<max b index>
// over all tokens in the file. LF and CRLF line endings are accepted.

#ifndef IIM_IDR_FORMAT_HPP
#define IIM_IDR_FORMAT_HPP

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "iim/entity.hpp"
#include "iim/error.hpp"
#include "iim/network.hpp"

namespace iim {
namespace detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\f\v";
  auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline EntityId parse_entity_token(std::string_view tok, std::size_t line) {
  auto id = EntityId::parse(tok);
  if (!id) throw ParseError(line, "malformed entity token '" + std::string(tok) + "'");
  return *id;
}

inline std::uint32_t parse_count(std::string_view tok, char layer, std::size_t line) {
  std::string prefix = std::string(1, layer) + ":";
  if (tok.substr(0, 2) != prefix) {
    throw ParseError(line, "expected '" + prefix + "<count>' in entities header");
  }
  std::uint32_t v = 0;
  auto digits = tok.substr(2);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError(line, "bad count in entities header");
  }
  return v;
}

}  // namespace detail

/// Parses `.idr` text into a validated network. Errors are ParseError with
/// the offending line number.
inline InterdependentNetwork parse_network(std::string_view text) {
  struct PendingIdr {
    Idr idr;
    std::size_t line;
  };
  std::optional<std::pair<std::uint32_t, std::uint32_t>> header;
  std::vector<PendingIdr> pending;
  std::uint32_t max_a = 0, max_b = 0;
  auto note = [&](EntityId e) {
    std::uint32_t& m = e.layer == Layer::A ? max_a : max_b;
    m = std::max(m, e.index);
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = detail::trim(raw);
    if (line.empty()) continue;

    auto arrow = line.find("<-");
    if (arrow == std::string_view::npos) {
      auto toks = detail::split_ws(line);
      if (toks.empty() || toks[0] != "entities") {
        throw ParseError(line_no, "expected '<entity> <- <minterms>' or an entities header");
      }
      if (header) throw ParseError(line_no, "duplicate entities header");
      if (!pending.empty()) throw ParseError(line_no, "entities header must precede IDR lines");
      if (toks.size() != 3) throw ParseError(line_no, "entities header takes 'a:<n> b:<m>'");
      header.emplace(detail::parse_count(toks[1], 'a', line_no),
                     detail::parse_count(toks[2], 'b', line_no));
      continue;
    }
    if (line.find("<-", arrow + 2) != std::string_view::npos) {
      throw ParseError(line_no, "more than one '<-'");
    }

    auto lhs = detail::split_ws(line.substr(0, arrow));
    if (lhs.size() != 1) throw ParseError(line_no, "expected exactly one target entity");
    Idr idr{detail::parse_entity_token(lhs[0], line_no), {}};
    note(idr.target);

    std::string_view rhs = line.substr(arrow + 2);
    std::size_t start = 0;
    while (true) {
      std::size_t plus = rhs.find('+', start);
      std::string_view part = rhs.substr(start, plus == std::string_view::npos ? rhs.npos : plus - start);
      std::vector<EntityId> members;
      for (std::string_view tok : detail::split_ws(part)) {
        members.push_back(detail::parse_entity_token(tok, line_no));
        note(members.back());
      }
      if (members.empty()) throw ParseError(line_no, "empty minterm");
      idr.minterms.emplace_back(std::move(members));
      if (plus == std::string_view::npos) break;
      start = plus + 1;
    }
    for (const PendingIdr& p : pending) {
      if (p.idr.target == idr.target) {
        throw ParseError(line_no, "duplicate IDR for " + idr.target.str() +
                                      " (first on line " + std::to_string(p.line) + ")");
      }
    }
    pending.push_back({std::move(idr), line_no});
  }

  std::uint32_t num_a = header ? header->first : max_a;
  std::uint32_t num_b = header ? header->second : max_b;
  std::vector<Idr> idrs;
  idrs.reserve(pending.size());
  for (PendingIdr& p : pending) {
    if (auto problem = idr_problem(p.idr, num_a, num_b)) throw ParseError(p.line, *problem);
    idrs.push_back(std::move(p.idr));
  }
  return InterdependentNetwork(num_a, num_b, std::move(idrs));
}

inline std::string format_idr(const Idr& idr) {
  std::string out = idr.target.str() + " <-";
  for (std::size_t i = 0; i < idr.minterms.size(); ++i) {
    if (i > 0) out += " +";
    for (const EntityId& e : idr.minterms[i]) {
      out += ' ';
      out += e.str();
    }
  }
  return out;
}

/// Header line followed by one line per IDR, in network order.
inline std::string serialize_network(const InterdependentNetwork& net) {
  std::string out = "entities a:" + std::to_string(net.num_a()) +
                    " b:" + std::to_string(net.num_b()) + "\n";
  for (const Idr& idr : net.idrs()) {
    out += format_idr(idr);
    out += '\n';
  }
  return out;
}

inline InterdependentNetwork load_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

}  // namespace iim

#endif  // IIM_IDR_FORMAT_HPP
