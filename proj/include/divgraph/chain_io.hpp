#pragma once

// Chain files: plain text with one decimal integer per line, or a JSON record
// {"x": ..., "y": ..., "entries": [...]}. x and y are written as JSON numbers
// when integral and as "p/q" strings otherwise; null means no context.

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "divgraph/chain.hpp"

namespace divgraph {

enum class ChainFormat { Text, Json };

inline void write_chain_text(std::ostream& os, const Chain& c) {
  for (u64 n : c) os << n << '\n';
}

inline Chain read_chain_text(std::istream& is) {
  std::vector<u64> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    u64 v = 0;
    auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || end != line.data() + line.size()) {
      throw std::runtime_error("chain text: line " + std::to_string(lineno) + " is not a positive integer: '" + line +
                               "'");
    }
    entries.push_back(v);
  }
  return Chain(std::move(entries));
}

namespace detail {

inline nlohmann::json rational_to_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return r.str();
}

inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<Rational::int_type>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number()) return Rational::parse(j.dump());
  throw std::runtime_error("chain json: x and y must be numbers or strings");
}

}  // namespace detail

inline nlohmann::json chain_to_json(const Chain& c) {
  nlohmann::json j;
  if (c.context()) {
    j["x"] = detail::rational_to_json(c.context()->x);
    j["y"] = detail::rational_to_json(c.context()->y);
  } else {
    j["x"] = nullptr;
    j["y"] = nullptr;
  }
  j["entries"] = c.entries();
  return j;
}

inline Chain chain_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries")) throw std::runtime_error("chain json: missing 'entries'");
  auto entries = j.at("entries").get<std::vector<u64>>();
  std::optional<ChainContext> ctx;
  bool has_x = j.contains("x") && !j.at("x").is_null();
  bool has_y = j.contains("y") && !j.at("y").is_null();
  if (has_x != has_y) throw std::runtime_error("chain json: x and y must be given together");
  if (has_x) ctx = ChainContext{detail::rational_from_json(j.at("x")), detail::rational_from_json(j.at("y"))};
  return Chain(std::move(entries), ctx);
}

inline void write_chain(std::ostream& os, const Chain& c, ChainFormat f) {
  if (f == ChainFormat::Text) {
    write_chain_text(os, c);
  } else {
    os << chain_to_json(c).dump() << '\n';
  }
}

/// Reads either format; a leading '{' selects JSON.
inline Chain read_chain(std::istream& is) {
  std::stringstream buf;
  buf << is.rdbuf();
  std::string s = buf.str();
  auto first = s.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && s[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(std::string("chain json: ") + e.what());
    }
    return chain_from_json(j);
  }
  std::istringstream in(s);
  return read_chain_text(in);
}

inline Chain read_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_chain(in);
}

inline void write_chain_file(const std::string& path, const Chain& c, ChainFormat f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_chain(out, c, f);
}

}  // namespace divgraph
