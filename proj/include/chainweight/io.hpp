#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chainweight/complex.hpp"

namespace chainweight {

// A JSON value whose integers keep full precision. Parsed with nlohmann's SAX
// interface; written by hand, since its DOM stores at most 64-bit integers.
class JsonValue {
 public:
  enum class Kind { Null, Bool, Integer, String, Array, Object };

  JsonValue() = default;
  JsonValue(bool b) : kind_(Kind::Bool), bool_(b) {}
  JsonValue(int v) : kind_(Kind::Integer), int_(v) {}
  JsonValue(long v) : kind_(Kind::Integer), int_(v) {}
  JsonValue(unsigned long v) : kind_(Kind::Integer), int_(v) {}
  JsonValue(mpz_class v) : kind_(Kind::Integer), int_(std::move(v)) {}
  JsonValue(std::string s) : kind_(Kind::String), str_(std::move(s)) {}
  JsonValue(const char* s) : kind_(Kind::String), str_(s) {}

  static JsonValue array() { return JsonValue(Kind::Array); }
  static JsonValue object() { return JsonValue(Kind::Object); }

  Kind kind() const { return kind_; }
  bool is(Kind k) const { return kind_ == k; }
  bool as_bool() const { return bool_; }
  const mpz_class& as_integer() const { return int_; }
  const std::string& as_string() const { return str_; }
  const std::vector<JsonValue>& items() const { return items_; }
  const std::vector<std::pair<std::string, JsonValue>>& members() const { return members_; }

  /// Member lookup; nullptr when absent.
  const JsonValue* find(std::string_view key) const;
  JsonValue& push(JsonValue v);
  /// Appends a member (keys keep insertion order).
  JsonValue& set(std::string key, JsonValue v);

  /// Compact single-line form with ", " and ": " separators.
  std::string dump() const;

 private:
  explicit JsonValue(Kind k) : kind_(k) {}
  void write(std::string& out) const;

  Kind kind_ = Kind::Null;
  bool bool_ = false;
  mpz_class int_;
  std::string str_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> members_;
};

/// ParseError on malformed JSON, duplicate keys or non-integral numbers.
JsonValue parse_json(std::string_view text);

// Complex document:
//   {"ring": "Z" | "Fp", "p": <prime, Fp only>, "min_degree": n,
//    "ranks": [r_n, r_{n+1}, …], "differentials": [d_{n+1}, d_{n+2}, …]}
// with each d as a list of rows. Unknown keys, shape mismatches and d² != 0
// are ParseErrors naming the offending matrix.
JsonValue complex_to_json(const ChainComplex& x);
ChainComplex complex_from_json(const JsonValue& v);
ChainComplex parse_complex(std::string_view text);
std::string serialize_complex(const ChainComplex& x);

// Map document, companion to two complex documents:
//   {"components": [{"source_degree": i, "target_degree": i, "matrix": …}, …]}
// Missing degrees are zero. Components must be shape-consistent and the map
// must commute with the differentials.
JsonValue map_to_json(const ChainMap& f);
ChainMap map_from_json(const JsonValue& v, const ChainComplex& source, const ChainComplex& target);
ChainMap parse_map(std::string_view text, const ChainComplex& source, const ChainComplex& target);
std::string serialize_map(const ChainMap& f);

JsonValue matrix_to_json(const Matrix& m);

}  // namespace chainweight
