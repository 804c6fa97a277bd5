#include "chainweight/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "chainweight/errors.hpp"

namespace chainweight {

const JsonValue* JsonValue::find(std::string_view key) const {
  for (const auto& [k, v] : members_)
    if (k == key) return &v;
  return nullptr;
}

JsonValue& JsonValue::push(JsonValue v) {
  items_.push_back(std::move(v));
  return items_.back();
}

JsonValue& JsonValue::set(std::string key, JsonValue v) {
  members_.emplace_back(std::move(key), std::move(v));
  return members_.back().second;
}

std::string JsonValue::dump() const {
  std::string out;
  write(out);
  return out;
}

namespace {

void write_string(std::string& out, const std::string& s) {
  // nlohmann handles the escaping rules
  out += nlohmann::json(s).dump();
}

}  // namespace

void JsonValue::write(std::string& out) const {
  switch (kind_) {
    case Kind::Null:
      out += "null";
      break;
    case Kind::Bool:
      out += bool_ ? "true" : "false";
      break;
    case Kind::Integer:
      out += int_.get_str();
      break;
    case Kind::String:
      write_string(out, str_);
      break;
    case Kind::Array:
      out += '[';
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ", ";
        items_[i].write(out);
      }
      out += ']';
      break;
    case Kind::Object:
      out += '{';
      for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) out += ", ";
        write_string(out, members_[i].first);
        out += ": ";
        members_[i].second.write(out);
      }
      out += '}';
      break;
  }
}

namespace {

// Builds a JsonValue tree; integers too large for 64 bits arrive through
// number_float together with their literal text.
class Builder : public nlohmann::json_sax<nlohmann::json> {
 public:
  JsonValue root;
  std::string error;

  bool null() override { return add(JsonValue()); }
  bool boolean(bool b) override { return add(JsonValue(b)); }
  bool number_integer(number_integer_t v) override { return add(JsonValue(static_cast<long>(v))); }
  bool number_unsigned(number_unsigned_t v) override { return add(JsonValue(static_cast<unsigned long>(v))); }
  bool number_float(number_float_t, const string_t& s) override {
    std::string_view digits = s;
    if (!digits.empty() && digits[0] == '-') digits.remove_prefix(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      error = "non-integer number " + s;
      return false;
    }
    return add(JsonValue(mpz_class(s)));
  }
  bool string(string_t& s) override { return add(JsonValue(s)); }
  bool binary(binary_t&) override {
    error = "binary values are not supported";
    return false;
  }
  bool start_object(std::size_t) override { return open(JsonValue::object()); }
  bool key(string_t& k) override {
    JsonValue& obj = *stack_.back();
    if (obj.find(k)) {
      error = "duplicate key \"" + k + "\"";
      return false;
    }
    key_ = k;
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(JsonValue::array()); }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) override {
    error = ex.what();
    return false;
  }

 private:
  JsonValue* place(JsonValue v) {
    if (stack_.empty()) {
      root = std::move(v);
      return &root;
    }
    JsonValue& top = *stack_.back();
    if (top.is(JsonValue::Kind::Array)) return &top.push(std::move(v));
    return &top.set(key_, std::move(v));
  }
  bool add(JsonValue v) {
    place(std::move(v));
    return true;
  }
  bool open(JsonValue v) {
    stack_.push_back(place(std::move(v)));
    return true;
  }
  bool close() {
    stack_.pop_back();
    return true;
  }

  std::vector<JsonValue*> stack_;
  std::string key_;
};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where.empty() ? what : where + ": " + what);
}

const JsonValue& member(const JsonValue& obj, const std::string& key, const std::string& where) {
  const JsonValue* v = obj.find(key);
  if (!v) fail(where, "missing key \"" + key + "\"");
  return *v;
}

void only_keys(const JsonValue& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : obj.members())
    if (!allowed.count(k)) fail(where, "unknown key \"" + k + "\"");
}

long small_integer(const JsonValue& v, const std::string& where, long lo, long hi) {
  if (!v.is(JsonValue::Kind::Integer)) fail(where, "expected an integer");
  const mpz_class& z = v.as_integer();
  if (z < lo || z > hi) fail(where, "integer out of range");
  return z.get_si();
}

Matrix matrix_from_json(const JsonValue& v, RingSpec ring, std::size_t rows, std::size_t cols,
                        const std::string& where) {
  if (!v.is(JsonValue::Kind::Array)) fail(where, "expected a list of rows");
  if (v.items().size() != rows)
    fail(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(v.items().size()));
  std::vector<mpz_class> entries;
  for (std::size_t r = 0; r < rows; ++r) {
    const JsonValue& row = v.items()[r];
    std::string rw = where + " row " + std::to_string(r);
    if (!row.is(JsonValue::Kind::Array)) fail(rw, "expected a list of entries");
    if (row.items().size() != cols)
      fail(rw, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.items().size()));
    for (const auto& e : row.items()) {
      if (!e.is(JsonValue::Kind::Integer)) fail(rw, "entries must be integers");
      entries.push_back(e.as_integer());
    }
  }
  return Matrix(ring, rows, cols, std::move(entries));
}

constexpr long kMaxRank = 1L << 16;
constexpr long kMaxDegree = 1L << 20;

}  // namespace

JsonValue parse_json(std::string_view text) {
  Builder b;
  bool ok = nlohmann::json::sax_parse(text.begin(), text.end(), &b);
  if (!ok) throw ParseError("invalid JSON: " + (b.error.empty() ? std::string("parse failure") : b.error));
  return std::move(b.root);
}

JsonValue matrix_to_json(const Matrix& m) {
  JsonValue rows = JsonValue::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    JsonValue& row = rows.push(JsonValue::array());
    for (std::size_t c = 0; c < m.cols(); ++c) row.push(m(r, c));
  }
  return rows;
}

JsonValue complex_to_json(const ChainComplex& x) {
  JsonValue v = JsonValue::object();
  if (x.ring().is_field()) {
    v.set("ring", "Fp");
    v.set("p", x.ring().modulus());
  } else {
    v.set("ring", "Z");
  }
  v.set("min_degree", x.min_degree());
  JsonValue& ranks = v.set("ranks", JsonValue::array());
  for (std::size_t r : x.ranks()) ranks.push(static_cast<unsigned long>(r));
  JsonValue& diffs = v.set("differentials", JsonValue::array());
  for (int i = x.min_degree() + 1; i <= x.max_degree(); ++i) diffs.push(matrix_to_json(x.d(i)));
  return v;
}

ChainComplex complex_from_json(const JsonValue& v) {
  if (!v.is(JsonValue::Kind::Object)) fail("", "a complex document must be an object");
  const JsonValue& ring_name = member(v, "ring", "");
  if (!ring_name.is(JsonValue::Kind::String)) fail("ring", "expected \"Z\" or \"Fp\"");
  RingSpec ring;
  if (ring_name.as_string() == "Z") {
    only_keys(v, {"ring", "min_degree", "ranks", "differentials"}, "");
  } else if (ring_name.as_string() == "Fp") {
    only_keys(v, {"ring", "p", "min_degree", "ranks", "differentials"}, "");
    long p = small_integer(member(v, "p", ""), "p", 2, 1L << 31);
    try {
      ring = RingSpec::prime_field(static_cast<unsigned long>(p));
    } catch (const UsageError&) {
      fail("p", std::to_string(p) + " is not prime");
    }
  } else {
    fail("ring", "expected \"Z\" or \"Fp\", got \"" + ring_name.as_string() + "\"");
  }
  int lo = static_cast<int>(small_integer(member(v, "min_degree", ""), "min_degree", -kMaxDegree, kMaxDegree));
  const JsonValue& ranks_v = member(v, "ranks", "");
  if (!ranks_v.is(JsonValue::Kind::Array)) fail("ranks", "expected a list");
  std::vector<std::size_t> ranks;
  for (std::size_t j = 0; j < ranks_v.items().size(); ++j)
    ranks.push_back(static_cast<std::size_t>(
        small_integer(ranks_v.items()[j], "ranks[" + std::to_string(j) + "]", 0, kMaxRank)));
  const JsonValue& diffs_v = member(v, "differentials", "");
  if (!diffs_v.is(JsonValue::Kind::Array)) fail("differentials", "expected a list");
  std::size_t want = ranks.empty() ? 0 : ranks.size() - 1;
  if (diffs_v.items().size() != want)
    fail("differentials", "expected " + std::to_string(want) + " matrices, got " +
                              std::to_string(diffs_v.items().size()));
  std::vector<Matrix> diffs;
  for (std::size_t j = 0; j < want; ++j)
    diffs.push_back(matrix_from_json(diffs_v.items()[j], ring, ranks[j], ranks[j + 1],
                                     "differentials[" + std::to_string(j) + "] (d_" +
                                         std::to_string(lo + static_cast<int>(j) + 1) + ")"));
  ChainComplex x = ranks.empty() ? ChainComplex(ring, lo) : ChainComplex(ring, lo, std::move(ranks), std::move(diffs));
  if (auto d = validate(x); !d) fail("differentials", d.message);
  return x;
}

ChainComplex parse_complex(std::string_view text) { return complex_from_json(parse_json(text)); }

std::string serialize_complex(const ChainComplex& x) { return complex_to_json(x).dump(); }

JsonValue map_to_json(const ChainMap& f) {
  JsonValue v = JsonValue::object();
  JsonValue& comps = v.set("components", JsonValue::array());
  for (int i = f.lo(); i <= f.hi(); ++i) {
    if (f.source().rank(i) == 0 && f.target().rank(i) == 0) continue;
    JsonValue& c = comps.push(JsonValue::object());
    c.set("source_degree", i);
    c.set("target_degree", i);
    c.set("matrix", matrix_to_json(f.at(i)));
  }
  return v;
}

ChainMap map_from_json(const JsonValue& v, const ChainComplex& source, const ChainComplex& target) {
  if (!v.is(JsonValue::Kind::Object)) fail("", "a map document must be an object");
  if (!(source.ring() == target.ring())) fail("", "source and target complexes have different rings");
  only_keys(v, {"components"}, "");
  const JsonValue& comps = member(v, "components", "");
  if (!comps.is(JsonValue::Kind::Array)) fail("components", "expected a list");
  std::map<int, Matrix> parts;
  for (std::size_t j = 0; j < comps.items().size(); ++j) {
    std::string where = "components[" + std::to_string(j) + "]";
    const JsonValue& c = comps.items()[j];
    if (!c.is(JsonValue::Kind::Object)) fail(where, "expected an object");
    only_keys(c, {"source_degree", "target_degree", "matrix"}, where);
    int s = static_cast<int>(small_integer(member(c, "source_degree", where), where, -kMaxDegree, kMaxDegree));
    int t = static_cast<int>(small_integer(member(c, "target_degree", where), where, -kMaxDegree, kMaxDegree));
    if (s != t) fail(where, "chain maps have degree 0 (source_degree " + std::to_string(s) + ", target_degree " +
                                std::to_string(t) + ")");
    if (parts.count(s)) fail(where, "degree " + std::to_string(s) + " given twice");
    parts.emplace(s, matrix_from_json(member(c, "matrix", where), source.ring(), target.rank(s), source.rank(s),
                                      where + ".matrix"));
  }
  ChainMap f(source, target, [&](int i) {
    auto it = parts.find(i);
    return it != parts.end() ? it->second : Matrix(source.ring(), target.rank(i), source.rank(i));
  });
  if (auto d = check_chain_map(f); !d) fail("components", d.message);
  return f;
}

ChainMap parse_map(std::string_view text, const ChainComplex& source, const ChainComplex& target) {
  return map_from_json(parse_json(text), source, target);
}

std::string serialize_map(const ChainMap& f) { return map_to_json(f).dump(); }

}  // namespace chainweight
